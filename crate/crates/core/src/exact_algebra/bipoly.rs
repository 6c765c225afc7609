//! Bivariate polynomials in `(x, y)`, stored as polynomials in `y` over `k[x]`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::Poly;
use super::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    /// `c[j]` is the coefficient of `y^j`.
    c: Vec<Poly>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        BiPoly::constant(Scalar::one())
    }

    pub fn x() -> Self {
        BiPoly::from_x_poly(Poly::x())
    }

    pub fn y() -> Self {
        BiPoly::from_y_coeffs(vec![Poly::zero(), Poly::one()])
    }

    pub fn constant(s: Scalar) -> Self {
        BiPoly::from_x_poly(Poly::constant(s))
    }

    pub fn from_x_poly(p: Poly) -> Self {
        BiPoly::from_y_coeffs(vec![p])
    }

    pub fn from_y_poly(p: &Poly) -> Self {
        BiPoly::from_y_coeffs(p.coeffs().iter().map(|s| Poly::constant(s.clone())).collect())
    }

    pub fn from_y_coeffs(mut c: Vec<Poly>) -> Self {
        while c.last().map_or(false, |p| p.is_zero()) {
            c.pop();
        }
        BiPoly { c }
    }

    pub fn monomial(s: Scalar, i: usize, j: usize) -> Self {
        let mut c = vec![Poly::zero(); j + 1];
        c[j] = Poly::monomial(s, i);
        BiPoly::from_y_coeffs(c)
    }

    /// Builds from `(coefficient, x-exponent, y-exponent)` triples.
    pub fn from_terms(terms: &[(Scalar, usize, usize)]) -> Self {
        let mut acc = BiPoly::zero();
        for (s, i, j) in terms {
            acc = &acc + &BiPoly::monomial(s.clone(), *i, *j);
        }
        acc
    }

    pub fn from_int_terms(terms: &[(i64, usize, usize)]) -> Self {
        let t: Vec<_> = terms.iter().map(|&(s, i, j)| (Scalar::from_i64(s), i, j)).collect();
        BiPoly::from_terms(&t)
    }

    pub fn y_coeffs(&self) -> &[Poly] {
        &self.c
    }

    pub fn y_coeff(&self, j: usize) -> Poly {
        self.c.get(j).cloned().unwrap_or_default()
    }

    pub fn coeff(&self, i: usize, j: usize) -> Scalar {
        self.c.get(j).map(|p| p.coeff(i)).unwrap_or_default()
    }

    /// Nonzero terms as `(x-exponent, y-exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.c.iter().enumerate().flat_map(|(j, p)| {
            p.coeffs().iter().enumerate().filter(|(_, s)| !s.is_zero()).map(move |(i, s)| (i, j, s))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1 && self.c.first().map_or(true, |p| p.is_constant())
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        if self.is_constant() {
            Some(self.coeff(0, 0))
        } else {
            None
        }
    }

    /// The polynomial in `x` when `self` does not involve `y`.
    pub fn as_x_poly(&self) -> Option<Poly> {
        match self.c.len() {
            0 => Some(Poly::zero()),
            1 => Some(self.c[0].clone()),
            _ => None,
        }
    }

    pub fn deg_y(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn deg_x(&self) -> usize {
        self.c.iter().map(|p| p.deg()).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> usize {
        self.terms().map(|(i, j, _)| i + j).max().unwrap_or(0)
    }

    /// Exponents of the only term, if there is exactly one.
    fn single_term(&self) -> Option<(usize, usize)> {
        let mut t = self.terms();
        match (t.next(), t.next()) {
            (Some((i, j, _)), None) => Some((i, j)),
            _ => None,
        }
    }

    /// Least `x`- and `y`-exponents over the nonzero terms.
    fn low_orders(&self) -> (usize, usize) {
        let j = self.c.iter().position(|p| !p.is_zero()).unwrap_or(0);
        let i = self.c.iter().filter(|p| !p.is_zero()).map(|p| p.x_valuation()).min().unwrap_or(0);
        (i, j)
    }

    pub fn lead_y(&self) -> Poly {
        self.c.last().cloned().unwrap_or_default()
    }

    /// Leading term in graded lexicographic order with `y > x`.
    pub fn leading_grlex(&self) -> Option<(usize, usize, Scalar)> {
        let mut best: Option<(usize, usize, Scalar)> = None;
        for (i, j, s) in self.terms() {
            let better = match &best {
                None => true,
                Some((bi, bj, _)) => (i + j, j) > (bi + bj, *bj),
            };
            if better {
                best = Some((i, j, s.clone()));
            }
        }
        best
    }

    pub fn scale(&self, s: &Scalar) -> BiPoly {
        if s.is_zero() {
            return BiPoly::zero();
        }
        BiPoly { c: self.c.iter().map(|p| p.scale(s)).collect() }
    }

    pub fn mul_x_poly(&self, p: &Poly) -> BiPoly {
        if p.is_one() {
            return self.clone();
        }
        BiPoly::from_y_coeffs(self.c.iter().map(|q| q * p).collect())
    }

    /// Multiplies by `y^k`.
    pub fn shift_y(&self, k: usize) -> BiPoly {
        if self.is_zero() {
            return BiPoly::zero();
        }
        let mut c = vec![Poly::zero(); k];
        c.extend(self.c.iter().cloned());
        BiPoly { c }
    }

    pub fn dx(&self) -> BiPoly {
        BiPoly::from_y_coeffs(self.c.iter().map(|p| p.derivative()).collect())
    }

    pub fn dy(&self) -> BiPoly {
        BiPoly::from_y_coeffs(
            self.c.iter().enumerate().skip(1).map(|(j, p)| p.scale(&Scalar::from_i64(j as i64))).collect(),
        )
    }

    /// `self(x, s)`.
    pub fn eval_y(&self, s: &Scalar) -> Poly {
        let mut acc = Poly::zero();
        for p in self.c.iter().rev() {
            acc = &acc.scale(s) + p;
        }
        acc
    }

    pub fn eval(&self, x: &Scalar, y: &Scalar) -> Scalar {
        self.eval_y(y).eval(x)
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn transpose(&self) -> BiPoly {
        let dx = self.deg_x();
        let mut c = vec![vec![Scalar::zero(); self.c.len()]; dx + 1];
        for (i, j, s) in self.terms() {
            c[i][j] = s.clone();
        }
        BiPoly::from_y_coeffs(c.into_iter().map(Poly::from_coeffs).collect())
    }

    /// `self(x, y + s)`.
    pub fn shift_arg_y(&self, s: &Scalar) -> BiPoly {
        let lin = BiPoly::from_y_coeffs(vec![Poly::constant(s.clone()), Poly::one()]);
        let mut acc = BiPoly::zero();
        for p in self.c.iter().rev() {
            acc = &(&acc * &lin) + &BiPoly::from_x_poly(p.clone());
        }
        acc
    }

    pub fn pow(&self, e: u32) -> BiPoly {
        let mut acc = BiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Monic gcd of the `y`-coefficients.
    pub fn content_y(&self) -> Poly {
        let mut g = Poly::zero();
        for p in &self.c {
            g = g.gcd(p);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the `x`-content and makes the leading scalar 1.
    pub fn primitive_part(&self) -> BiPoly {
        if self.is_zero() {
            return BiPoly::zero();
        }
        let g = self.content_y();
        let p = if g.is_one() {
            self.clone()
        } else {
            BiPoly::from_y_coeffs(self.c.iter().map(|q| q.div_exact(&g).expect("content divides")).collect())
        };
        let lc = p.lead_y().leading();
        if lc.is_one() {
            p
        } else {
            p.scale(&lc.inv())
        }
    }

    /// Exact quotient in `k[x, y]`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &BiPoly) -> Option<BiPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if d.is_one() {
            return Some(self.clone());
        }
        if let Some((a, b)) = d.single_term() {
            let (i, j) = self.low_orders();
            if self.is_zero() {
                return Some(BiPoly::zero());
            }
            if i < a || j < b {
                return None;
            }
            let inv = d.coeff(a, b).inv();
            let c = self.c[b..].iter().map(|p| Poly::from_coeffs(p.coeffs().get(a..).unwrap_or_default().to_vec()).scale(&inv));
            return Some(BiPoly::from_y_coeffs(c.collect()));
        }
        if let Some(p) = d.as_x_poly() {
            let mut c = Vec::with_capacity(self.c.len());
            for q in &self.c {
                c.push(q.div_exact(&p)?);
            }
            return Some(BiPoly::from_y_coeffs(c));
        }
        let db = d.deg_y();
        let lb = d.lead_y();
        let mut r = self.clone();
        if r.is_zero() {
            return Some(BiPoly::zero());
        }
        if r.deg_y() < db {
            return None;
        }
        let mut q = vec![Poly::zero(); r.deg_y() - db + 1];
        while !r.is_zero() {
            if r.deg_y() < db {
                return None;
            }
            let k = r.deg_y() - db;
            let qc = r.lead_y().div_exact(&lb)?;
            r = &r - &d.mul_x_poly(&qc).shift_y(k);
            q[k] = qc;
        }
        Some(BiPoly::from_y_coeffs(q))
    }

    fn pseudo_rem(&self, b: &BiPoly) -> BiPoly {
        let db = b.deg_y();
        let lb = b.lead_y();
        let mut r = self.clone();
        while !r.is_zero() && r.deg_y() >= db {
            let lr = r.lead_y();
            let g = lb.gcd(&lr);
            let (fb, fr) = if g.is_one() {
                (lb.clone(), lr)
            } else {
                (lb.div_exact(&g).unwrap(), lr.div_exact(&g).unwrap())
            };
            let k = r.deg_y() - db;
            r = &r.mul_x_poly(&fb) - &b.mul_x_poly(&fr).shift_y(k);
        }
        r
    }

    /// Greatest common divisor, normalized to leading scalar 1.
    pub fn gcd(&self, o: &BiPoly) -> BiPoly {
        if self.is_zero() {
            return o.normalized();
        }
        if o.is_zero() {
            return self.normalized();
        }
        if self.is_constant() || o.is_constant() {
            return BiPoly::one();
        }
        // a monomial shares only a monomial factor
        let mono = self.single_term().map(|m| (m, o)).or_else(|| o.single_term().map(|m| (m, self)));
        if let Some(((a, b), other)) = mono {
            let (i, j) = other.low_orders();
            return BiPoly::monomial(Scalar::one(), a.min(i), b.min(j));
        }
        let cs = self.content_y();
        let co = o.content_y();
        let c = cs.gcd(&co);
        if self.deg_y() == 0 || o.deg_y() == 0 {
            return BiPoly::from_x_poly(c);
        }
        let (mut a, mut b) = if self.deg_y() >= o.deg_y() {
            (self.primitive_part(), o.primitive_part())
        } else {
            (o.primitive_part(), self.primitive_part())
        };
        loop {
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                break;
            }
            if r.deg_y() == 0 {
                b = BiPoly::one();
                break;
            }
            a = b;
            b = r.primitive_part();
        }
        b.mul_x_poly(&c).normalized()
    }

    /// Scales so the graded-lex leading coefficient is 1.
    pub fn normalized(&self) -> BiPoly {
        match self.leading_grlex() {
            None => BiPoly::zero(),
            Some((_, _, s)) if s.is_one() => self.clone(),
            Some((_, _, s)) => self.scale(&s.inv()),
        }
    }

    /// Square-free decomposition: pairs `(q, m)` with `q` square-free, pairwise coprime,
    /// and `self = const * prod q^m`.
    pub fn squarefree(&self) -> Vec<(BiPoly, usize)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let content = self.content_y();
        for (p, m) in poly_squarefree(&content) {
            out.push((BiPoly::from_x_poly(p), m));
        }
        let prim = self.primitive_part();
        if prim.deg_y() == 0 {
            return out;
        }
        // Yun's algorithm with respect to y
        let fp = prim.dy();
        let a0 = prim.gcd(&fp);
        let mut b = prim.div_exact(&a0).expect("gcd divides");
        let mut c = fp.div_exact(&a0).expect("gcd divides");
        let mut d = &c - &b.dy();
        let mut m = 1;
        while !b.is_constant() {
            let a = b.gcd(&d);
            if !a.is_constant() {
                out.push((a.normalized(), m));
            }
            b = b.div_exact(&a).expect("gcd divides");
            c = d.div_exact(&a).expect("gcd divides");
            d = &c - &b.dy();
            m += 1;
        }
        out
    }
}

fn poly_squarefree(p: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    if p.is_constant() {
        return out;
    }
    let fp = p.derivative();
    let a0 = p.gcd(&fp);
    let mut b = p.div_exact(&a0).unwrap();
    let c = fp.div_exact(&a0).unwrap();
    let mut d = &c - &b.derivative();
    let mut m = 1;
    while !b.is_constant() {
        let a = b.gcd(&d);
        if !a.is_constant() {
            out.push((a.monic(), m));
        }
        b = b.div_exact(&a).unwrap();
        let c = d.div_exact(&a).unwrap();
        d = &c - &b.derivative();
        m += 1;
    }
    out
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, o: &BiPoly) -> BiPoly {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for k in 0..n {
            c.push(match (self.c.get(k), o.c.get(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        BiPoly::from_y_coeffs(c)
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, o: &BiPoly) -> BiPoly {
        self + &(-o)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly { c: self.c.iter().map(|p| -p).collect() }
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        if self.is_zero() || o.is_zero() {
            return BiPoly::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        let mut c = vec![Poly::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] = &c[i + j] + &(a * b);
                }
            }
        }
        BiPoly::from_y_coeffs(c)
    }
}

macro_rules! bipoly_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for BiPoly {
            type Output = BiPoly;
            fn $m(self, o: BiPoly) -> BiPoly {
                (&self).$m(&o)
            }
        }
    };
}
bipoly_owned!(Add, add);
bipoly_owned!(Sub, sub);
bipoly_owned!(Mul, mul);

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut t: Vec<(usize, usize, Scalar)> = self.terms().map(|(i, j, s)| (i, j, s.clone())).collect();
        t.sort_by(|a, b| (b.0 + b.1, b.1).cmp(&(a.0 + a.1, a.1)));
        let terms: Vec<(Scalar, Vec<(char, usize)>)> =
            t.into_iter().map(|(i, j, s)| (s, vec![('x', i), ('y', j)])).collect();
        f.write_str(&super::format_terms(&terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(t: &[(i64, usize, usize)]) -> BiPoly {
        BiPoly::from_int_terms(t)
    }

    #[test]
    fn gcd_of_difference_of_squares() {
        let a = bp(&[(1, 0, 2), (-1, 2, 0)]); // y^2 - x^2
        let b = bp(&[(1, 0, 1), (-1, 1, 0)]); // y - x
        assert_eq!(a.gcd(&b), b);
        let q = a.div_exact(&b).unwrap();
        assert_eq!(q, bp(&[(1, 0, 1), (1, 1, 0)]));
    }

    #[test]
    fn monomial_gcd_and_division() {
        let p = bp(&[(3, 2, 3), (1, 4, 2)]); // 3x^2y^3 + x^4y^2
        assert_eq!(p.gcd(&bp(&[(5, 3, 1)])), bp(&[(1, 2, 1)]));
        assert_eq!(bp(&[(2, 0, 4)]).gcd(&p), bp(&[(1, 0, 2)]));
        assert_eq!(p.div_exact(&bp(&[(2, 2, 2)])), Some(bp(&[(3, 0, 1), (1, 2, 0)]).scale(&Scalar::from_ratio(1, 2))));
        assert_eq!(p.div_exact(&bp(&[(1, 3, 0)])), None);
    }

    #[test]
    fn gcd_with_content() {
        let a = bp(&[(2, 1, 1)]); // 2xy
        let b = bp(&[(2, 0, 1)]); // 2y
        assert_eq!(a.gcd(&b), bp(&[(1, 0, 1)]));
        let c = bp(&[(1, 2, 0), (-1, 0, 0)]); // x^2 - 1
        let d = &bp(&[(1, 1, 0), (1, 0, 0)]) * &bp(&[(1, 0, 1)]); // (x+1) y
        assert_eq!(c.gcd(&d), bp(&[(1, 1, 0), (1, 0, 0)]));
    }

    #[test]
    fn squarefree_splits_multiplicities() {
        let y = bp(&[(1, 0, 1)]);
        let xy1 = bp(&[(1, 1, 0), (1, 0, 1), (1, 0, 0)]);
        let x = bp(&[(1, 1, 0)]);
        let f = &(&y.pow(2) * &xy1) * &x.pow(3);
        let mut sf = f.squarefree();
        sf.sort_by_key(|(_, m)| *m);
        assert_eq!(sf.len(), 3);
        assert_eq!(sf[0], (xy1, 1));
        assert_eq!(sf[1], (y, 2));
        assert_eq!(sf[2], (x, 3));
    }

    #[test]
    fn transpose_and_shift() {
        let f = bp(&[(1, 2, 1), (3, 0, 0)]);
        assert_eq!(f.transpose(), bp(&[(1, 1, 2), (3, 0, 0)]));
        let g = bp(&[(1, 0, 2)]).shift_arg_y(&Scalar::one());
        assert_eq!(g, bp(&[(1, 0, 2), (2, 0, 1), (1, 0, 0)]));
        assert_eq!(f.to_string(), "x^2*y + 3");
    }
}

impl std::fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self)
    }
}
