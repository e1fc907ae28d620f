//! Coefficient rings for chains and homology: Z, Q, and Z/2.
//!
//! All arithmetic is exact: arbitrary-precision integers and rationals, or
//! single bits. `RingSpec` is the runtime tag used by the CLI and report
//! types; the algorithms are generic over [`Coeff`].

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::Scalar;

/// Which coefficient ring a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    /// The integers.
    IntegersZ,
    /// The rationals.
    RationalsQ,
    /// The field with two elements.
    ModTwoZ2,
}

impl RingSpec {
    pub fn all() -> [RingSpec; 3] {
        [RingSpec::IntegersZ, RingSpec::RationalsQ, RingSpec::ModTwoZ2]
    }

    pub fn is_field(self) -> bool {
        !matches!(self, RingSpec::IntegersZ)
    }

    pub fn flag(self) -> &'static str {
        match self {
            RingSpec::IntegersZ => "z",
            RingSpec::RationalsQ => "q",
            RingSpec::ModTwoZ2 => "z2",
        }
    }
}

impl FromStr for RingSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "z" => Ok(RingSpec::IntegersZ),
            "q" => Ok(RingSpec::RationalsQ),
            "z2" => Ok(RingSpec::ModTwoZ2),
            other => Err(format!("unknown ring {other:?}, expected z, q, or z2")),
        }
    }
}

impl Display for RingSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.flag())
    }
}

/// Exact ring element used as a chain coefficient.
pub trait Coeff: Clone + PartialEq + Eq + Debug + Display + Send + Sync + 'static {
    const RING: RingSpec;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;

    /// True when the element has a multiplicative inverse.
    fn is_unit(&self) -> bool;

    /// `|r|` as used in chain volumes: absolute value over Z and Q,
    /// 0-or-1 over Z/2.
    fn abs_weight(&self) -> Scalar;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

/// An element of the field with two elements.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Z2(pub bool);

impl Display for Z2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", u8::from(self.0))
    }
}

impl Coeff for Z2 {
    const RING: RingSpec = RingSpec::ModTwoZ2;

    fn zero() -> Self {
        Z2(false)
    }

    fn one() -> Self {
        Z2(true)
    }

    fn from_i64(n: i64) -> Self {
        Z2(n.rem_euclid(2) == 1)
    }

    fn add(&self, other: &Self) -> Self {
        Z2(self.0 ^ other.0)
    }

    fn neg(&self) -> Self {
        *self
    }

    fn mul(&self, other: &Self) -> Self {
        Z2(self.0 & other.0)
    }

    fn is_zero(&self) -> bool {
        !self.0
    }

    fn is_unit(&self) -> bool {
        self.0
    }

    fn abs_weight(&self) -> Scalar {
        if self.0 {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    }
}

impl Coeff for BigInt {
    const RING: RingSpec = RingSpec::IntegersZ;

    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn neg(&self) -> Self {
        -self
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }

    fn abs_weight(&self) -> Scalar {
        Scalar::Exact(BigRational::from_integer(self.abs()))
    }
}

impl Coeff for BigRational {
    const RING: RingSpec = RingSpec::RationalsQ;

    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn neg(&self) -> Self {
        -self
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_unit(&self) -> bool {
        !Zero::is_zero(self)
    }

    fn abs_weight(&self) -> Scalar {
        Scalar::Exact(self.abs())
    }
}

/// A field element; enables Gaussian elimination.
pub trait FieldCoeff: Coeff {
    fn inv(&self) -> Self;

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }
}

impl FieldCoeff for Z2 {
    fn inv(&self) -> Self {
        assert!(self.0, "inverting zero");
        *self
    }
}

impl FieldCoeff for BigRational {
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverting zero");
        self.recip()
    }
}
