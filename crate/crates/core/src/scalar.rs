//! Scalar abstraction: the chain and intersection layers are generic over an
//! exact rational scalar (axiom tests) and `f64` (simulation). Every product
//! weight in the algebra is dyadic, so `from_ratio` is exact in both modes.

use num::{BigInt, BigRational, Signed, Zero};

/// Exact rational scalar used by the axiom-level tests.
pub type Rational = BigRational;

pub trait Scalar: Clone + PartialEq + std::fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn add_assign(&mut self, o: &Self);
    fn sub_assign(&mut self, o: &Self);

    fn from_int(v: i64) -> Self {
        Self::from_ratio(v, 1)
    }
    /// (1/2)^k — the ubiquitous intersection weight.
    fn half_pow(k: u32) -> Self {
        Self::from_ratio(1, 1i64 << k)
    }
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        self.add_assign(&a.mul(b));
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn add_assign(&mut self, o: &Self) {
        *self += o;
    }
    fn sub_assign(&mut self, o: &Self) {
        *self -= o;
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        num::One::one()
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn add_assign(&mut self, o: &Self) {
        *self += o;
    }
    fn sub_assign(&mut self, o: &Self) {
        *self -= o;
    }
}

/// Absolute value as f64, for tolerance checks that also run on rationals.
pub fn abs_f64<S: Scalar + ScalarToF64>(s: &S) -> f64 {
    s.to_f64().abs()
}

pub trait ScalarToF64 {
    fn to_f64(&self) -> f64;
}

impl ScalarToF64 for f64 {
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl ScalarToF64 for BigRational {
    fn to_f64(&self) -> f64 {
        let n = self.numer();
        let d = self.denom();
        // good enough for diagnostics; exact tests compare rationals directly
        let nf: f64 = n.to_string().parse().unwrap_or(if n.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        });
        let df: f64 = d.to_string().parse().unwrap_or(f64::INFINITY);
        nf / df
    }
}
