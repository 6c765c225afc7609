//! Reduced bivariate rational functions.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::bipoly::BiPoly;
use super::poly::Poly;
use super::scalar::Scalar;
use super::unirat::UniRat;
use crate::error::{Error, Result};

/// `num/den` in lowest terms; the graded-lex (`y > x`) leading coefficient of `den` is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiRat {
    num: BiPoly,
    den: BiPoly,
}

impl Default for BiRat {
    fn default() -> Self {
        BiRat::zero()
    }
}

/// The two coordinate variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

impl BiRat {
    /// Reduces `num/den` to canonical form.
    pub fn normalize(num: BiPoly, den: BiPoly) -> Result<BiRat> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(BiRat::zero());
        }
        let (n, d) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
            }
        };
        Ok(BiRat::with_monic_den(n, d))
    }

    pub fn new(num: BiPoly, den: BiPoly) -> BiRat {
        BiRat::normalize(num, den).expect("nonzero denominator")
    }

    fn with_monic_den(n: BiPoly, d: BiPoly) -> BiRat {
        let (_, _, lc) = d.leading_grlex().expect("nonzero denominator");
        if lc.is_one() {
            BiRat { num: n, den: d }
        } else {
            let inv = lc.inv();
            BiRat { num: n.scale(&inv), den: d.scale(&inv) }
        }
    }

    pub fn zero() -> Self {
        BiRat { num: BiPoly::zero(), den: BiPoly::one() }
    }

    pub fn one() -> Self {
        BiRat::from_poly(BiPoly::one())
    }

    pub fn x() -> Self {
        BiRat::from_poly(BiPoly::x())
    }

    pub fn y() -> Self {
        BiRat::from_poly(BiPoly::y())
    }

    pub fn var(v: Var) -> Self {
        match v {
            Var::X => BiRat::x(),
            Var::Y => BiRat::y(),
        }
    }

    pub fn constant(s: Scalar) -> Self {
        BiRat::from_poly(BiPoly::constant(s))
    }

    pub fn from_i64(n: i64) -> Self {
        BiRat::constant(Scalar::from_i64(n))
    }

    pub fn from_poly(p: BiPoly) -> Self {
        BiRat { num: p, den: BiPoly::one() }
    }

    /// A rational function of `x` alone.
    pub fn from_unirat(r: &UniRat) -> Self {
        BiRat::with_monic_den(BiPoly::from_x_poly(r.num().clone()), BiPoly::from_x_poly(r.den().clone()))
    }

    /// A rational function of `y` alone.
    pub fn from_unirat_y(r: &UniRat) -> Self {
        BiRat::with_monic_den(BiPoly::from_y_poly(r.num()), BiPoly::from_y_poly(r.den()))
    }

    pub fn num(&self) -> &BiPoly {
        &self.num
    }

    pub fn den(&self) -> &BiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        if self.is_constant() {
            Some(self.num.coeff(0, 0))
        } else {
            None
        }
    }

    pub fn depends_on(&self, v: Var) -> bool {
        match v {
            Var::Y => self.num.deg_y() > 0 || self.den.deg_y() > 0,
            Var::X => self.num.deg_x() > 0 || self.den.deg_x() > 0,
        }
    }

    /// The rational function of `x` when `y` does not occur.
    pub fn as_unirat_x(&self) -> Option<UniRat> {
        Some(UniRat::new(self.num.as_x_poly()?, self.den.as_x_poly()?))
    }

    /// Coefficients in `k(x)` of `self` as a polynomial in `y`.
    pub fn as_y_poly(&self) -> Option<Vec<UniRat>> {
        let d = self.den.as_x_poly()?;
        Some(self.num.y_coeffs().iter().map(|p| UniRat::new(p.clone(), d.clone())).collect())
    }

    /// Builds `sum c_j y^j` with coefficients in `k(x)`.
    pub fn from_y_poly(coeffs: &[UniRat]) -> BiRat {
        let mut acc = BiRat::zero();
        for (j, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &(&BiRat::from_unirat(c) * &BiRat::y().pow(j as i64));
            }
        }
        acc
    }

    pub fn inv(&self) -> Result<BiRat> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(BiRat::with_monic_den(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, s: &Scalar) -> BiRat {
        if s.is_zero() {
            return BiRat::zero();
        }
        BiRat { num: self.num.scale(s), den: self.den.clone() }
    }

    pub fn pow(&self, e: i64) -> BiRat {
        if e >= 0 {
            BiRat { num: self.num.pow(e as u32), den: self.den.pow(e as u32) }
        } else {
            self.inv().expect("nonzero base for negative power").pow(-e)
        }
    }

    pub fn dx(&self) -> BiRat {
        if self.den.is_constant() {
            return BiRat { num: self.num.dx(), den: self.den.clone() };
        }
        let n = &(&self.num.dx() * &self.den) - &(&self.num * &self.den.dx());
        BiRat::new(n, &self.den * &self.den)
    }

    pub fn dy(&self) -> BiRat {
        if self.den.is_constant() {
            return BiRat { num: self.num.dy(), den: self.den.clone() };
        }
        let n = &(&self.num.dy() * &self.den) - &(&self.num * &self.den.dy());
        BiRat::new(n, &self.den * &self.den)
    }

    pub fn partial(&self, v: Var) -> BiRat {
        match v {
            Var::X => self.dx(),
            Var::Y => self.dy(),
        }
    }

    pub fn transpose(&self) -> BiRat {
        BiRat::with_monic_den(self.num.transpose(), self.den.transpose())
    }

    /// `self(x, y + s)`.
    pub fn shift_y(&self, s: &Scalar) -> BiRat {
        BiRat::with_monic_den(self.num.shift_arg_y(s), self.den.shift_arg_y(s))
    }

    /// `self(g1, g2)`; fails when the substituted denominator vanishes identically.
    pub fn compose(&self, g1: &BiRat, g2: &BiRat) -> Result<BiRat> {
        let dx = self.num.deg_x().max(self.den.deg_x());
        let dy = self.num.deg_y().max(self.den.deg_y());
        let pw = Powers::new(g1, g2, dx, dy);
        let n = pw.substitute(&self.num);
        let d = pw.substitute(&self.den);
        BiRat::normalize(n, d)
    }

    pub fn eval(&self, x: &Scalar, y: &Scalar) -> Option<Scalar> {
        let d = self.den.eval(x, y);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x, y) / d)
        }
    }

    /// For `self = (a w + b)/(c w + d)` in the variable `w` over the field of the other
    /// variable, returns `(a, b, c, d)` when `ad - bc != 0`.
    pub fn mobius_in(&self, w: Var) -> Option<[BiPoly; 4]> {
        let (n, d) = match w {
            Var::Y => (self.num.clone(), self.den.clone()),
            Var::X => (self.num.transpose(), self.den.transpose()),
        };
        if n.deg_y() > 1 || d.deg_y() > 1 {
            return None;
        }
        let q = [n.y_coeff(1), n.y_coeff(0), d.y_coeff(1), d.y_coeff(0)];
        let det = &(&q[0] * &q[3]) - &(&q[1] * &q[2]);
        if det.is_zero() {
            return None;
        }
        let back = |p: &Poly| match w {
            Var::Y => BiPoly::from_x_poly(p.clone()),
            Var::X => BiPoly::from_y_poly(p),
        };
        Some([back(&q[0]), back(&q[1]), back(&q[2]), back(&q[3])])
    }
}

/// Cached powers used by homogenized substitution.
struct Powers {
    p1: Vec<BiPoly>,
    q1: Vec<BiPoly>,
    p2: Vec<BiPoly>,
    q2: Vec<BiPoly>,
    dx: usize,
    dy: usize,
}

impl Powers {
    fn new(g1: &BiRat, g2: &BiRat, dx: usize, dy: usize) -> Powers {
        let pows = |b: &BiPoly, n: usize| {
            let mut v = vec![BiPoly::one()];
            for k in 1..=n {
                let next = &v[k - 1] * b;
                v.push(next);
            }
            v
        };
        Powers {
            p1: pows(&g1.num, dx),
            q1: pows(&g1.den, dx),
            p2: pows(&g2.num, dy),
            q2: pows(&g2.den, dy),
            dx,
            dy,
        }
    }

    fn substitute(&self, f: &BiPoly) -> BiPoly {
        let mut acc = BiPoly::zero();
        for (j, cj) in f.y_coeffs().iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            let mut inner = BiPoly::zero();
            for (i, s) in cj.coeffs().iter().enumerate() {
                if s.is_zero() {
                    continue;
                }
                inner = &inner + &(&self.p1[i] * &self.q1[self.dx - i]).scale(s);
            }
            acc = &acc + &(&inner * &(&self.p2[j] * &self.q2[self.dy - j]));
        }
        acc
    }
}

impl Add for &BiRat {
    type Output = BiRat;
    fn add(self, o: &BiRat) -> BiRat {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            return BiRat::from_poly(&self.num + &o.num);
        }
        if self.den == o.den {
            return BiRat::new(&self.num + &o.num, self.den.clone());
        }
        if o.den.is_one() {
            return BiRat::with_monic_den(&self.num + &(&o.num * &self.den), self.den.clone());
        }
        if self.den.is_one() {
            return BiRat::with_monic_den(&(&self.num * &o.den) + &o.num, o.den.clone());
        }
        let g = self.den.gcd(&o.den);
        let a = o.den.div_exact(&g).expect("gcd divides");
        let b = self.den.div_exact(&g).expect("gcd divides");
        let n = &(&self.num * &a) + &(&o.num * &b);
        if g.is_one() {
            return BiRat::with_monic_den(n, &self.den * &o.den);
        }
        if n.is_zero() {
            return BiRat::zero();
        }
        // for reduced summands any common factor of n and the denominator divides g
        let h = n.gcd(&g);
        let n = n.div_exact(&h).expect("gcd divides");
        let gh = g.div_exact(&h).expect("gcd divides");
        BiRat::with_monic_den(n, &(&gh * &a) * &b)
    }
}

impl Sub for &BiRat {
    type Output = BiRat;
    fn sub(self, o: &BiRat) -> BiRat {
        self + &(-o)
    }
}

impl Neg for &BiRat {
    type Output = BiRat;
    fn neg(self) -> BiRat {
        BiRat { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &BiRat {
    type Output = BiRat;
    fn mul(self, o: &BiRat) -> BiRat {
        if self.is_zero() || o.is_zero() {
            return BiRat::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return BiRat::from_poly(&self.num * &o.num);
        }
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let n = &self.num.div_exact(&g1).unwrap() * &o.num.div_exact(&g2).unwrap();
        let d = &self.den.div_exact(&g2).unwrap() * &o.den.div_exact(&g1).unwrap();
        BiRat::with_monic_den(n, d)
    }
}

impl Div for &BiRat {
    type Output = BiRat;
    fn div(self, o: &BiRat) -> BiRat {
        self * &o.inv().expect("division by zero")
    }
}

macro_rules! birat_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for BiRat {
            type Output = BiRat;
            fn $m(self, o: BiRat) -> BiRat {
                (&self).$m(&o)
            }
        }
    };
}
birat_owned!(Add, add);
birat_owned!(Sub, sub);
birat_owned!(Mul, mul);
birat_owned!(Div, div);

impl Neg for BiRat {
    type Output = BiRat;
    fn neg(self) -> BiRat {
        -&self
    }
}

impl From<BiPoly> for BiRat {
    fn from(p: BiPoly) -> Self {
        BiRat::from_poly(p)
    }
}

impl fmt::Display for BiRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", super::paren(&self.num.to_string()), super::paren(&self.den.to_string()))
        }
    }
}


impl std::fmt::Debug for BiRat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self)
    }
}
