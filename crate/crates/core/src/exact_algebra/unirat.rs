//! Reduced rational functions in `x`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::poly::Poly;
use super::scalar::Scalar;

/// `num/den` with `gcd(num, den) = 1` and `den` monic; zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniRat {
    num: Poly,
    den: Poly,
}

impl Default for UniRat {
    fn default() -> Self {
        UniRat::zero()
    }
}

impl UniRat {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return UniRat::zero();
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let lc = d.leading();
        if !lc.is_one() {
            let inv = lc.inv();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        UniRat { num: n, den: d }
    }

    pub fn zero() -> Self {
        UniRat { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        UniRat::from_poly(Poly::one())
    }

    pub fn x() -> Self {
        UniRat::from_poly(Poly::x())
    }

    pub fn from_poly(p: Poly) -> Self {
        UniRat { num: p, den: Poly::one() }
    }

    pub fn constant(s: Scalar) -> Self {
        UniRat::from_poly(Poly::constant(s))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// The value when constant.
    pub fn as_constant(&self) -> Option<Scalar> {
        if self.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn inv(&self) -> UniRat {
        UniRat::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, s: &Scalar) -> UniRat {
        if s.is_zero() {
            return UniRat::zero();
        }
        UniRat { num: self.num.scale(s), den: self.den.clone() }
    }

    pub fn derivative(&self) -> UniRat {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        UniRat::new(n, &self.den * &self.den)
    }

    pub fn eval(&self, s: &Scalar) -> Option<Scalar> {
        let d = self.den.eval(s);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(s) / d)
        }
    }

    pub fn pow(&self, e: i64) -> UniRat {
        if e >= 0 {
            UniRat { num: self.num.pow(e as u32), den: self.den.pow(e as u32) }
        } else {
            self.inv().pow(-e)
        }
    }

    /// Degree of the pole divisor on the projective line.
    pub fn pole_degree(&self) -> usize {
        self.num.deg().max(self.den.deg())
    }
}

impl Add for &UniRat {
    type Output = UniRat;
    fn add(self, o: &UniRat) -> UniRat {
        if self.den == o.den {
            return UniRat::new(&self.num + &o.num, self.den.clone());
        }
        UniRat::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl Sub for &UniRat {
    type Output = UniRat;
    fn sub(self, o: &UniRat) -> UniRat {
        self + &(-o)
    }
}

impl Neg for &UniRat {
    type Output = UniRat;
    fn neg(self) -> UniRat {
        UniRat { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &UniRat {
    type Output = UniRat;
    fn mul(self, o: &UniRat) -> UniRat {
        if self.den.is_one() && o.den.is_one() {
            return UniRat::from_poly(&self.num * &o.num);
        }
        UniRat::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Div for &UniRat {
    type Output = UniRat;
    fn div(self, o: &UniRat) -> UniRat {
        assert!(!o.is_zero(), "division by zero");
        UniRat::new(&self.num * &o.den, &self.den * &o.num)
    }
}

macro_rules! unirat_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UniRat {
            type Output = UniRat;
            fn $m(self, o: UniRat) -> UniRat {
                (&self).$m(&o)
            }
        }
    };
}
unirat_owned!(Add, add);
unirat_owned!(Sub, sub);
unirat_owned!(Mul, mul);
unirat_owned!(Div, div);

impl fmt::Display for UniRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", super::paren(&self.num.to_string()), super::paren(&self.den.to_string()))
        }
    }
}


impl std::fmt::Debug for UniRat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self)
    }
}
