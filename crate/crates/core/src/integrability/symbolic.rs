//! Polynomials and fractions in the flow symbol ring `k[x, y, t, s, E_t(j), E_s(j)]`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::exact_algebra::{format_terms, BiPoly, BiRat, Poly, Scalar};

/// A variable of the symbol ring. `Et(j)` is the exponential symbol `j` at time `t`,
/// `Es(j)` the same symbol at time `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sym {
    X,
    Y,
    T,
    S,
    Et(usize),
    Es(usize),
}

impl Sym {
    fn index(self) -> usize {
        match self {
            Sym::X => 0,
            Sym::Y => 1,
            Sym::T => 2,
            Sym::S => 3,
            Sym::Et(j) => 4 + 2 * j,
            Sym::Es(j) => 5 + 2 * j,
        }
    }

    fn from_index(i: usize) -> Sym {
        match i {
            0 => Sym::X,
            1 => Sym::Y,
            2 => Sym::T,
            3 => Sym::S,
            _ if i % 2 == 0 => Sym::Et((i - 4) / 2),
            _ => Sym::Es((i - 5) / 2),
        }
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sym::X => write!(f, "x"),
            Sym::Y => write!(f, "y"),
            Sym::T => write!(f, "t"),
            Sym::S => write!(f, "s"),
            Sym::Et(0) => write!(f, "E"),
            Sym::Et(j) => write!(f, "E{}", j + 1),
            Sym::Es(0) => write!(f, "Es"),
            Sym::Es(j) => write!(f, "E{}s", j + 1),
        }
    }
}

type Mono = Vec<u16>;

fn trim(mut m: Mono) -> Mono {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

fn exp_of(m: &Mono, v: Sym) -> u16 {
    m.get(v.index()).copied().unwrap_or(0)
}

fn with_exp(m: &Mono, v: Sym, e: u16) -> Mono {
    let mut m = m.clone();
    let i = v.index();
    if m.len() <= i {
        m.resize(i + 1, 0);
    }
    m[i] = e;
    trim(m)
}

fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    let mut m = vec![0; a.len().max(b.len())];
    for (i, e) in a.iter().enumerate() {
        m[i] += e;
    }
    for (i, e) in b.iter().enumerate() {
        m[i] += e;
    }
    m
}

/// Sparse polynomial in the symbol ring.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SymPoly {
    terms: BTreeMap<Mono, Scalar>,
}

impl SymPoly {
    pub fn zero() -> Self {
        SymPoly::default()
    }

    pub fn one() -> Self {
        SymPoly::constant(Scalar::one())
    }

    pub fn constant(s: Scalar) -> Self {
        let mut p = SymPoly::zero();
        p.add_term(Vec::new(), s);
        p
    }

    pub fn var(v: Sym) -> Self {
        let mut p = SymPoly::zero();
        p.add_term(with_exp(&Vec::new(), v, 1), Scalar::one());
        p
    }

    pub fn from_bipoly(b: &BiPoly) -> Self {
        let mut p = SymPoly::zero();
        for (i, j, s) in b.terms() {
            p.add_term(trim(vec![i as u16, j as u16]), s.clone());
        }
        p
    }

    pub fn from_x_poly(q: &Poly) -> Self {
        SymPoly::from_bipoly(&BiPoly::from_x_poly(q.clone()))
    }

    fn add_term(&mut self, m: Mono, s: Scalar) {
        if s.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(c) => {
                let v = &*c + &s;
                if v.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *c = v;
                }
            }
            None => {
                self.terms.insert(m, s);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, s: &Scalar) -> SymPoly {
        if s.is_zero() {
            return SymPoly::zero();
        }
        SymPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    pub fn pow(&self, e: u32) -> SymPoly {
        let mut acc = SymPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn degree_in(&self, v: Sym) -> u16 {
        self.terms.keys().map(|m| exp_of(m, v)).max().unwrap_or(0)
    }

    pub fn partial(&self, v: Sym) -> SymPoly {
        let mut p = SymPoly::zero();
        for (m, c) in &self.terms {
            let e = exp_of(m, v);
            if e > 0 {
                p.add_term(with_exp(m, v, e - 1), c * &Scalar::from_i64(e as i64));
            }
        }
        p
    }

    /// Substitutes polynomials for variables simultaneously.
    pub fn substitute(&self, subs: &[(Sym, &SymPoly)]) -> SymPoly {
        let mut powers: Vec<Vec<SymPoly>> = subs.iter().map(|_| vec![SymPoly::one()]).collect();
        let mut acc = SymPoly::zero();
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let mut term = SymPoly::one();
            for (k, (v, by)) in subs.iter().enumerate() {
                let e = exp_of(&rest, *v) as usize;
                rest = with_exp(&rest, *v, 0);
                while powers[k].len() <= e {
                    let next = &powers[k][powers[k].len() - 1] * *by;
                    powers[k].push(next);
                }
                term = &term * &powers[k][e];
            }
            let mut mono = SymPoly::zero();
            mono.add_term(rest, c.clone());
            acc = &acc + &(&term * &mono);
        }
        acc
    }

    /// Substitutes scalar values for variables.
    pub fn eval(&self, subs: &[(Sym, Scalar)]) -> SymPoly {
        let polys: Vec<(Sym, SymPoly)> = subs.iter().map(|(v, s)| (*v, SymPoly::constant(s.clone()))).collect();
        let refs: Vec<(Sym, &SymPoly)> = polys.iter().map(|(v, p)| (*v, p)).collect();
        self.substitute(&refs)
    }

    /// The bivariate polynomial in `(x, y)` when no other symbol occurs.
    pub fn as_bipoly(&self) -> Option<BiPoly> {
        let mut t = Vec::new();
        for (m, c) in &self.terms {
            if m.len() > 2 {
                return None;
            }
            t.push((c.clone(), exp_of(m, Sym::X) as usize, exp_of(m, Sym::Y) as usize));
        }
        Some(BiPoly::from_terms(&t))
    }
}

impl Add for &SymPoly {
    type Output = SymPoly;
    fn add(self, o: &SymPoly) -> SymPoly {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

impl Sub for &SymPoly {
    type Output = SymPoly;
    fn sub(self, o: &SymPoly) -> SymPoly {
        self + &(-o)
    }
}

impl Neg for &SymPoly {
    type Output = SymPoly;
    fn neg(self) -> SymPoly {
        SymPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for &SymPoly {
    type Output = SymPoly;
    fn mul(self, o: &SymPoly) -> SymPoly {
        let mut p = SymPoly::zero();
        for (a, c) in &self.terms {
            for (b, d) in &o.terms {
                p.add_term(mono_mul(a, b), c * d);
            }
        }
        p
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // highest total degree first
        let mut terms: Vec<(&Mono, &Scalar)> = self.terms.iter().collect();
        terms.sort_by_key(|(m, _)| std::cmp::Reverse(m.iter().map(|&e| e as u32).sum::<u32>()));
        let terms: Vec<(Scalar, Vec<(Sym, usize)>)> = terms
            .into_iter()
            .map(|(m, c)| {
                let vars = m.iter().enumerate().map(|(i, &e)| (Sym::from_index(i), e as usize)).collect();
                (c.clone(), vars)
            })
            .collect();
        f.write_str(&format_terms(&terms))
    }
}

impl fmt::Debug for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// An unreduced fraction of symbol polynomials; equality is by cross-multiplication.
#[derive(Clone)]
pub struct SymFrac {
    pub num: SymPoly,
    pub den: SymPoly,
}

impl SymFrac {
    pub fn new(num: SymPoly, den: SymPoly) -> Self {
        assert!(!den.is_zero(), "symbolic fraction with zero denominator");
        SymFrac { num, den }
    }

    pub fn from_poly(p: SymPoly) -> Self {
        SymFrac { num: p, den: SymPoly::one() }
    }

    pub fn var(v: Sym) -> Self {
        SymFrac::from_poly(SymPoly::var(v))
    }

    pub fn from_birat(r: &BiRat) -> Self {
        SymFrac::new(SymPoly::from_bipoly(r.num()), SymPoly::from_bipoly(r.den()))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn inv(&self) -> SymFrac {
        SymFrac::new(self.den.clone(), self.num.clone())
    }

    pub fn partial(&self, v: Sym) -> SymFrac {
        let n = &(&self.num.partial(v) * &self.den) - &(&self.num * &self.den.partial(v));
        SymFrac::new(n, &self.den * &self.den)
    }

    /// Simultaneous substitution of fractions for variables.
    pub fn substitute(&self, subs: &[(Sym, &SymFrac)]) -> SymFrac {
        // homogenize each substituted variable to a common degree so the
        // denominator powers cancel between numerator and denominator
        let degs: Vec<u16> = subs.iter().map(|(v, _)| self.num.degree_in(*v).max(self.den.degree_in(*v))).collect();
        let side = |p: &SymPoly| {
            let mut acc = SymPoly::zero();
            for (m, c) in &p.terms {
                let mut rest = m.clone();
                let mut term = SymPoly::constant(c.clone());
                for (k, (v, by)) in subs.iter().enumerate() {
                    let e = exp_of(&rest, *v);
                    rest = with_exp(&rest, *v, 0);
                    term = &(&term * &by.num.pow(e as u32)) * &by.den.pow((degs[k] - e) as u32);
                }
                let mut mono = SymPoly::zero();
                mono.add_term(rest, Scalar::one());
                acc = &acc + &(&term * &mono);
            }
            acc
        };
        SymFrac::new(side(&self.num), side(&self.den))
    }

    pub fn eval(&self, subs: &[(Sym, Scalar)]) -> SymFrac {
        SymFrac::new(self.num.eval(subs), self.den.eval(subs))
    }

    /// The rational function in `(x, y)` when no other symbol occurs.
    pub fn as_birat(&self) -> Option<BiRat> {
        BiRat::normalize(self.num.as_bipoly()?, self.den.as_bipoly()?).ok()
    }
}

impl PartialEq for SymFrac {
    fn eq(&self, o: &SymFrac) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

impl Eq for SymFrac {}

impl Add for &SymFrac {
    type Output = SymFrac;
    fn add(self, o: &SymFrac) -> SymFrac {
        if self.den == o.den {
            return SymFrac::new(&self.num + &o.num, self.den.clone());
        }
        SymFrac::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl Sub for &SymFrac {
    type Output = SymFrac;
    fn sub(self, o: &SymFrac) -> SymFrac {
        self + &(-o)
    }
}

impl Neg for &SymFrac {
    type Output = SymFrac;
    fn neg(self) -> SymFrac {
        SymFrac::new(-&self.num, self.den.clone())
    }
}

impl Mul for &SymFrac {
    type Output = SymFrac;
    fn mul(self, o: &SymFrac) -> SymFrac {
        SymFrac::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl fmt::Display for SymFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == SymPoly::one() {
            return write!(f, "{}", self.num);
        }
        let paren = crate::exact_algebra::paren;
        write!(f, "{}/{}", paren(&self.num.to_string()), paren(&self.den.to_string()))
    }
}

impl fmt::Debug for SymFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitution_and_equality() {
        // y/(1 - t y) with y -> y/(1 - s y) gives y/(1 - (t + s) y)
        let y = SymPoly::var(Sym::Y);
        let t = SymPoly::var(Sym::T);
        let s = SymPoly::var(Sym::S);
        let f = SymFrac::new(y.clone(), &SymPoly::one() - &(&t * &y));
        let g = SymFrac::new(y.clone(), &SymPoly::one() - &(&s * &y));
        let h = f.substitute(&[(Sym::Y, &g)]);
        let ts = &t + &s;
        assert_eq!(h, SymFrac::new(y.clone(), &SymPoly::one() - &(&ts * &y)));
        assert_eq!(f.partial(Sym::T).eval(&[(Sym::T, Scalar::zero())]), SymFrac::from_poly(&y * &y));
    }

    #[test]
    fn display_uses_symbol_names() {
        let p = &SymPoly::var(Sym::Et(0)) * &SymPoly::var(Sym::Y);
        assert_eq!(p.to_string(), "y*E");
    }
}
