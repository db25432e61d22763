//! Coefficient rings: double-precision complex numbers and exact elements of `Q(√−d)`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Arithmetic needed by the lift and pullback code, shared by exact and floating types.
pub trait Coefficient:
    Clone
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_bigint(n: &BigInt) -> Self;
    fn conj(&self) -> Self;
    fn to_complex(&self) -> Complex64;
    fn is_zero(&self) -> bool;
}

impl Coefficient for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn from_bigint(n: &BigInt) -> Self {
        Complex64::new(n.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
}

/// `u + v√−d` with rational `u, v`, embedded in `C` by `√−d ↦ i√d`.
///
/// `d = 0` marks a rational number that can be combined with any field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    pub d: u64,
    pub u: BigRational,
    pub v: BigRational,
}

impl QuadraticNumber {
    pub fn new(d: u64, u: BigRational, v: BigRational) -> Self {
        if v.is_zero() {
            Self::rational(u)
        } else {
            assert!(d > 0, "irrational part needs a field");
            Self { d, u, v }
        }
    }

    pub fn rational(u: BigRational) -> Self {
        Self {
            d: 0,
            u,
            v: BigRational::zero(),
        }
    }

    fn field(a: u64, b: u64) -> u64 {
        match (a, b) {
            (0, x) | (x, 0) => x,
            (x, y) => {
                assert_eq!(x, y, "mixing Q(√−{x}) and Q(√−{y})");
                x
            }
        }
    }

    pub fn norm(&self) -> BigRational {
        &self.u * &self.u + &self.v * &self.v * BigRational::from_integer(BigInt::from(self.d))
    }
}

impl fmt::Debug for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_zero() {
            write!(f, "{}", self.u)
        } else {
            write!(f, "{} + ({})√−{}", self.u, self.v, self.d)
        }
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.u.is_zero(), self.v.is_zero()) {
            (_, true) => write!(f, "{}", self.u),
            (true, false) => write!(f, "{}√−{}", self.v, self.d),
            (false, false) => write!(f, "{} + {}√−{}", self.u, self.v, self.d),
        }
    }
}

impl Add for QuadraticNumber {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let d = Self::field(self.d, o.d);
        Self::new(d, self.u + o.u, self.v + o.v)
    }
}

impl Sub for QuadraticNumber {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let d = Self::field(self.d, o.d);
        Self::new(d, self.u - o.u, self.v - o.v)
    }
}

impl Mul for QuadraticNumber {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let d = Self::field(self.d, o.d);
        let dd = BigRational::from_integer(BigInt::from(d));
        let u = &self.u * &o.u - &self.v * &o.v * dd;
        let v = &self.u * &o.v + &self.v * &o.u;
        Self::new(d, u, v)
    }
}

impl Neg for QuadraticNumber {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            d: self.d,
            u: -self.u,
            v: -self.v,
        }
    }
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl Coefficient for QuadraticNumber {
    fn zero() -> Self {
        Self::rational(BigRational::zero())
    }
    fn one() -> Self {
        Self::rational(BigRational::one())
    }
    fn from_i64(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }
    fn from_bigint(n: &BigInt) -> Self {
        Self::rational(BigRational::from_integer(n.clone()))
    }
    fn conj(&self) -> Self {
        Self {
            d: self.d,
            u: self.u.clone(),
            v: -self.v.clone(),
        }
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(
            ratio_to_f64(&self.u),
            ratio_to_f64(&self.v) * (self.d as f64).sqrt(),
        )
    }
    fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }
}
