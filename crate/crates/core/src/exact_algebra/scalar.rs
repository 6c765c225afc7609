//! Exact scalars: Gaussian rationals, optionally adjoined with one square root.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::Error;

/// An element `re + im*i` of the Gaussian rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Gaussian {
    pub re: BigRational,
    pub im: BigRational,
}

impl Gaussian {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Gaussian { re, im }
    }

    pub fn zero() -> Self {
        Gaussian { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        Gaussian::from_rational(BigRational::one())
    }

    pub fn i() -> Self {
        Gaussian { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn from_rational(re: BigRational) -> Self {
        Gaussian { re, im: BigRational::zero() }
    }

    pub fn from_i64(n: i64) -> Self {
        Gaussian::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Gaussian {
        Gaussian { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `re^2 + im^2`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn add(&self, o: &Gaussian) -> Gaussian {
        Gaussian { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub(&self, o: &Gaussian) -> Gaussian {
        Gaussian { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn neg(&self) -> Gaussian {
        Gaussian { re: -self.re.clone(), im: -self.im.clone() }
    }

    pub fn mul(&self, o: &Gaussian) -> Gaussian {
        if self.im.is_zero() && o.im.is_zero() {
            return Gaussian::from_rational(&self.re * &o.re);
        }
        Gaussian {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn inv(&self) -> Gaussian {
        assert!(!self.is_zero(), "division by zero");
        if self.im.is_zero() {
            return Gaussian::from_rational(self.re.recip());
        }
        let n = self.norm();
        Gaussian { re: &self.re / &n, im: -(&self.im / &n) }
    }

    pub fn div(&self, o: &Gaussian) -> Gaussian {
        self.mul(&o.inv())
    }

    /// Square root inside the Gaussian rationals, if one exists.
    /// The returned root has its first nonzero part positive.
    pub fn sqrt(&self) -> Option<Gaussian> {
        if self.is_zero() {
            return Some(Gaussian::zero());
        }
        if self.im.is_zero() {
            if self.re.is_positive() {
                return rational_sqrt(&self.re).map(Gaussian::from_rational);
            }
            return rational_sqrt(&-self.re.clone())
                .map(|r| Gaussian { re: BigRational::zero(), im: r });
        }
        // (p + q i)^2 = re + im i with p^2 = (re + |z|) / 2
        let modulus = rational_sqrt(&self.norm())?;
        let two = BigRational::from_integer(BigInt::from(2));
        let p = rational_sqrt(&((&self.re + &modulus) / &two))?;
        if p.is_zero() {
            return None;
        }
        let q = &self.im / (&two * &p);
        Some(Gaussian { re: p, im: q })
    }

    fn key(&self) -> (&BigRational, &BigRational) {
        (&self.re, &self.im)
    }
}

impl Ord for Gaussian {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Gaussian {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Square root of a nonnegative rational, if it is a rational square.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = integer_sqrt(q.numer())?;
    let d = integer_sqrt(q.denom())?;
    Some(BigRational::new(n, d))
}

fn integer_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rational(&self.re));
        }
        let im = if self.im.is_one() {
            "i".to_string()
        } else if (-self.im.clone()).is_one() {
            "-i".to_string()
        } else {
            format!("{}*i", fmt_rational(&self.im))
        };
        if self.re.is_zero() {
            write!(f, "{}", im)
        } else if self.im.is_negative() {
            write!(f, "{}{}", fmt_rational(&self.re), im)
        } else {
            write!(f, "{}+{}", fmt_rational(&self.re), im)
        }
    }
}

/// `a + b*sqrt(d)` with `a, b` Gaussian rationals. `d` is absent whenever `b = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    a: Gaussian,
    b: Gaussian,
    d: Option<Arc<Gaussian>>,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { a: Gaussian::zero(), b: Gaussian::zero(), d: None }
    }

    pub fn one() -> Self {
        Scalar::from_gaussian(Gaussian::one())
    }

    pub fn i() -> Self {
        Scalar::from_gaussian(Gaussian::i())
    }

    pub fn from_i64(n: i64) -> Self {
        Scalar::from_gaussian(Gaussian::from_i64(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Scalar::from_gaussian(Gaussian::from_rational(q))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar::from_rational(BigRational::from_integer(n))
    }

    pub fn from_gaussian(g: Gaussian) -> Self {
        Scalar { a: g, b: Gaussian::zero(), d: None }
    }

    pub fn complex(re: BigRational, im: BigRational) -> Self {
        Scalar::from_gaussian(Gaussian::new(re, im))
    }

    /// `a + b*sqrt(d)`; `d` must not be a square in the Gaussian rationals.
    pub fn with_root(a: Gaussian, b: Gaussian, d: Arc<Gaussian>) -> Self {
        if b.is_zero() {
            Scalar::from_gaussian(a)
        } else {
            Scalar { a, b, d: Some(d) }
        }
    }

    pub fn rational_part(&self) -> &Gaussian {
        &self.a
    }

    pub fn root_part(&self) -> &Gaussian {
        &self.b
    }

    pub fn radicand(&self) -> Option<&Arc<Gaussian>> {
        self.d.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_gaussian(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_gaussian(&self) -> Option<&Gaussian> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.b.is_zero() && self.a.im.is_zero() {
            Some(&self.a.re)
        } else {
            None
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|q| q.is_integer()).map(|q| q.numer().clone())
    }

    pub fn as_i64(&self) -> Option<i64> {
        use num::ToPrimitive;
        self.as_integer().and_then(|n| n.to_i64())
    }

    fn join(&self, o: &Scalar) -> Option<Arc<Gaussian>> {
        match (&self.d, &o.d) {
            (None, None) => None,
            (Some(d), None) | (None, Some(d)) => Some(d.clone()),
            (Some(d1), Some(d2)) => {
                assert!(d1 == d2, "scalars from different quadratic extensions");
                Some(d1.clone())
            }
        }
    }

    /// True when both scalars live in a common field.
    pub fn compatible(&self, o: &Scalar) -> bool {
        match (&self.d, &o.d) {
            (Some(d1), Some(d2)) => d1 == d2,
            _ => true,
        }
    }

    fn build(a: Gaussian, b: Gaussian, d: Option<Arc<Gaussian>>) -> Scalar {
        match d {
            Some(d) => Scalar::with_root(a, b, d),
            None => Scalar::from_gaussian(a),
        }
    }

    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "division by zero");
        match &self.d {
            None => Scalar::from_gaussian(self.a.inv()),
            Some(d) => {
                let n = self.a.mul(&self.a).sub(&self.b.mul(&self.b).mul(d));
                let ni = n.inv();
                Scalar::with_root(self.a.mul(&ni), self.b.neg().mul(&ni), d.clone())
            }
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn powi(&self, e: i64) -> Scalar {
        if e >= 0 {
            self.pow(e as u32)
        } else {
            self.inv().pow((-e) as u32)
        }
    }

    /// Square root inside the field generated by `self` and the active extension of `ctx`.
    pub fn sqrt_in(&self, ctx: &FieldContext) -> Option<Scalar> {
        let d = ctx.radicand().cloned().or_else(|| self.d.clone());
        if self.b.is_zero() {
            if let Some(r) = self.a.sqrt() {
                return Some(Scalar::from_gaussian(r));
            }
            let d = d?;
            // a = t^2 d  =>  sqrt(a) = t sqrt(d)
            let t = self.a.div(&d).sqrt()?;
            return Some(Scalar::with_root(Gaussian::zero(), t, d).canonical_sign());
        }
        let d = self.d.clone()?;
        // (p + q s)^2 = a + b s  =>  p^2 = (a +- sqrt(a^2 - b^2 d)) / 2
        let disc = self.a.mul(&self.a).sub(&self.b.mul(&self.b).mul(&d));
        let r = disc.sqrt()?;
        let half = Gaussian::from_rational(BigRational::new(BigInt::one(), BigInt::from(2)));
        for cand in [self.a.add(&r).mul(&half), self.a.sub(&r).mul(&half)] {
            if let Some(p) = cand.sqrt() {
                if p.is_zero() {
                    continue;
                }
                let q = self.b.mul(&half).div(&p);
                let s = Scalar::with_root(p, q, d.clone());
                if &(&s * &s) == self {
                    return Some(s.canonical_sign());
                }
            }
        }
        None
    }

    /// Returns `self` or `-self`, whichever has its first nonzero component positive.
    pub fn canonical_sign(self) -> Scalar {
        if self.is_positive_first() {
            self
        } else {
            -self
        }
    }

    fn is_positive_first(&self) -> bool {
        for q in [&self.a.re, &self.a.im, &self.b.re, &self.b.im] {
            if !q.is_zero() {
                return q.is_positive();
            }
        }
        true
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, o: &'a Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Scalar = $body;
                f(self, o)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &'a Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$m(&o)
            }
        }
    };
}

scalar_binop!(Add, add, |x, y| {
    let d = x.join(y);
    Scalar::build(x.a.add(&y.a), x.b.add(&y.b), d)
});
scalar_binop!(Sub, sub, |x, y| {
    let d = x.join(y);
    Scalar::build(x.a.sub(&y.a), x.b.sub(&y.b), d)
});
scalar_binop!(Mul, mul, |x, y| {
    let d = x.join(y);
    match &d {
        None => Scalar::from_gaussian(x.a.mul(&y.a)),
        Some(dd) => {
            let a = x.a.mul(&y.a).add(&x.b.mul(&y.b).mul(dd));
            let b = x.a.mul(&y.b).add(&x.b.mul(&y.a));
            Scalar::build(a, b, d)
        }
    }
});
scalar_binop!(Div, div, |x, y| x * &y.inv());

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: self.a.neg(), b: self.b.neg(), d: self.d }
    }
}

impl<'a> Neg for &'a Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.a
            .cmp(&other.a)
            .then_with(|| self.b.cmp(&other.b))
            .then_with(|| self.d.as_deref().cmp(&other.d.as_deref()))
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_i64(n)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.d {
            None => write!(f, "{}", self.a),
            Some(d) => {
                let root = format!("sqrt({})", d);
                let bpart = if self.b.is_one() {
                    root
                } else if self.b.neg().is_one() {
                    format!("-{}", root)
                } else if self.b.im.is_zero() {
                    format!("{}*{}", self.b, root)
                } else {
                    format!("({})*{}", self.b, root)
                };
                if self.a.is_zero() {
                    write!(f, "{}", bpart)
                } else if bpart.starts_with('-') {
                    write!(f, "{}{}", self.a, bpart)
                } else {
                    write!(f, "{}+{}", self.a, bpart)
                }
            }
        }
    }
}

/// The ambient coefficient field: the Gaussian rationals, possibly with one adjoined root.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FieldContext {
    radicand: Option<Arc<Gaussian>>,
}

/// Outcome of adjoining a square root to a context.
#[derive(Clone, Debug)]
pub struct Extension {
    pub context: FieldContext,
    pub root: Scalar,
    /// Set when the radicand was already a square and the context is unchanged.
    pub already_square: bool,
}

impl FieldContext {
    pub fn gaussian() -> Self {
        FieldContext { radicand: None }
    }

    pub fn radicand(&self) -> Option<&Arc<Gaussian>> {
        self.radicand.as_ref()
    }

    /// Adjoins `sqrt(d)`. At most one non-trivial root may be active.
    pub fn extend_by_sqrt(&self, d: &Scalar) -> Result<Extension, Error> {
        if let Some(r) = d.sqrt_in(self) {
            return Ok(Extension { context: self.clone(), root: r, already_square: true });
        }
        let g = match d.as_gaussian() {
            Some(g) => g.clone(),
            None => return Err(Error::ExtensionAlreadyActive),
        };
        if self.radicand.is_some() {
            return Err(Error::ExtensionAlreadyActive);
        }
        let arc = Arc::new(g);
        let root = Scalar::with_root(Gaussian::zero(), Gaussian::one(), arc.clone());
        Ok(Extension { context: FieldContext { radicand: Some(arc) }, root, already_square: false })
    }

    /// Square root of `s` in this context, extending it when necessary.
    pub fn sqrt(&self, s: &Scalar) -> Result<(Scalar, FieldContext), Error> {
        let ext = self.extend_by_sqrt(s)?;
        Ok((ext.root, ext.context))
    }
}

impl fmt::Display for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.radicand {
            None => write!(f, "Q(i)"),
            Some(d) => write!(f, "Q(i)(sqrt({}))", d),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d)
    }

    #[test]
    fn minus_one_is_already_square() {
        let ctx = FieldContext::gaussian();
        let ext = ctx.extend_by_sqrt(&Scalar::from_i64(-1)).unwrap();
        assert!(ext.already_square);
        assert_eq!(ext.context, ctx);
        assert_eq!(ext.root, Scalar::i());
    }

    #[test]
    fn root_two_squares_to_two() {
        let ext = FieldContext::gaussian().extend_by_sqrt(&Scalar::from_i64(2)).unwrap();
        assert!(!ext.already_square);
        assert_eq!(&ext.root * &ext.root, Scalar::from_i64(2));
    }

    #[test]
    fn second_extension_is_rejected() {
        let ext = FieldContext::gaussian().extend_by_sqrt(&Scalar::from_i64(5)).unwrap();
        let err = ext.context.extend_by_sqrt(&Scalar::from_i64(3)).unwrap_err();
        assert!(matches!(err, Error::ExtensionAlreadyActive));
        // 20 = 4 * 5 stays inside the same field
        let again = ext.context.extend_by_sqrt(&Scalar::from_i64(20)).unwrap();
        assert_eq!(&again.root * &again.root, Scalar::from_i64(20));
    }

    #[test]
    fn gaussian_square_roots() {
        // (2 + i)^2 = 3 + 4i
        let z = Scalar::complex(BigRational::from_integer(3.into()), BigRational::from_integer(4.into()));
        let r = z.sqrt_in(&FieldContext::gaussian()).unwrap();
        assert_eq!(&r * &r, z);
        assert!(Scalar::from_i64(2).sqrt_in(&FieldContext::gaussian()).is_none());
        assert_eq!(q(9, 4).sqrt_in(&FieldContext::gaussian()), Some(q(3, 2)));
    }

    #[test]
    fn arithmetic_in_extension() {
        let ext = FieldContext::gaussian().extend_by_sqrt(&Scalar::from_i64(2)).unwrap();
        let s = ext.root.clone();
        let u = &Scalar::one() + &s;
        let v = u.inv();
        assert_eq!(&u * &v, Scalar::one());
        // (3 + 2 sqrt 2) = (1 + sqrt 2)^2
        let w = &u * &u;
        let r = w.sqrt_in(&ext.context).unwrap();
        assert_eq!(&r * &r, w);
    }

    #[test]
    fn display_forms() {
        assert_eq!(q(-1, 2).to_string(), "-1/2");
        let z = Scalar::complex(BigRational::new(1.into(), 2.into()), BigRational::new((-3).into(), 4.into()));
        assert_eq!(z.to_string(), "1/2-3/4*i");
        assert_eq!(Scalar::i().to_string(), "i");
    }
}

impl std::fmt::Debug for Scalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self)
    }
}
