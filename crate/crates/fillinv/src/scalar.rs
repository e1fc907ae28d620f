//! Exact-or-approximate scalar values.
//!
//! Lengths, distances, and volumes are exact rationals whenever the inputs
//! are rational (decimal strings, fixture parameters) and IEEE doubles
//! otherwise. Mixing the two promotes to doubles, so a computation stays
//! exact until an irrational quantity (a square root, a great-circle
//! length) enters it.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A nonnegative-or-signed scalar, exact when possible.
#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(BigRational),
    Approx(f64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Exact(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Exact(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::Exact(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_f64(x: f64) -> Self {
        Scalar::Approx(x)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Approx(x) => *x == 0.0,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_positive(),
            Scalar::Approx(x) => *x > 0.0,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_negative(),
            Scalar::Approx(x) => *x < 0.0,
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Approx(_) => None,
        }
    }

    /// Conversion to `f64`, correct to within one ulp even for ratios of
    /// huge integers (`Ratio::to_f64` divides two lossy conversions).
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Approx(x) => *x,
            Scalar::Exact(r) => rational_to_f64(r),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a + b),
            _ => Scalar::Approx(self.to_f64() + other.to_f64()),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a - b),
            _ => Scalar::Approx(self.to_f64() - other.to_f64()),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a * b),
            _ => Scalar::Approx(self.to_f64() * other.to_f64()),
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => {
                assert!(!b.is_zero(), "division by zero");
                Scalar::Exact(a / b)
            }
            _ => Scalar::Approx(self.to_f64() / other.to_f64()),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r),
            Scalar::Approx(x) => Scalar::Approx(-x),
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.abs()),
            Scalar::Approx(x) => Scalar::Approx(x.abs()),
        }
    }

    pub fn half(&self) -> Scalar {
        self.div(&Scalar::from_int(2))
    }

    pub fn double(&self) -> Scalar {
        self.mul(&Scalar::from_int(2))
    }

    /// Square root; stays exact when the rational is a perfect square.
    pub fn sqrt(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => {
                if r.is_negative() {
                    return Scalar::Approx(f64::NAN);
                }
                let ns = r.numer().sqrt();
                let ds = r.denom().sqrt();
                if &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom() {
                    Scalar::Exact(BigRational::new(ns, ds))
                } else {
                    Scalar::Approx(rational_to_f64(r).sqrt())
                }
            }
            Scalar::Approx(x) => Scalar::Approx(x.sqrt()),
        }
    }

    pub fn square(&self) -> Scalar {
        self.mul(self)
    }

    /// Relative closeness with absolute fallback around zero.
    pub fn close_to(&self, other: &Scalar, rel_tol: f64) -> bool {
        if let (Scalar::Exact(a), Scalar::Exact(b)) = (self, other) {
            if a == b {
                return true;
            }
        }
        let a = self.to_f64();
        let b = other.to_f64();
        let scale = a.abs().max(b.abs()).max(1.0);
        (a - b).abs() <= rel_tol * scale
    }

    /// Parses a decimal string ("2", "-0.75", "6.283185307") or a fraction
    /// ("22/7") into an exact rational.
    pub fn parse(text: &str) -> Result<Scalar> {
        let t = text.trim();
        if t.is_empty() {
            return Err(Error::BadScalar(text.to_string()));
        }
        if let Some((num, den)) = t.split_once('/') {
            let n = BigInt::from_str(num.trim()).map_err(|_| Error::BadScalar(text.to_string()))?;
            let d = BigInt::from_str(den.trim()).map_err(|_| Error::BadScalar(text.to_string()))?;
            if d.is_zero() {
                return Err(Error::BadScalar(text.to_string()));
            }
            return Ok(Scalar::Exact(BigRational::new(n, d)));
        }
        let (sign, body) = match t.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, t.strip_prefix('+').unwrap_or(t)),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(Error::BadScalar(text.to_string()));
        }
        if !int_part.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
        {
            return Err(Error::BadScalar(text.to_string()));
        }
        let digits = format!("{}{}", int_part, frac_part);
        let numer = if digits.is_empty() {
            BigInt::zero()
        } else {
            BigInt::from_str(&digits).map_err(|_| Error::BadScalar(text.to_string()))?
        };
        let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
        Ok(Scalar::Exact(BigRational::new(BigInt::from(sign) * numer, denom)))
    }
}

/// f64 of a big rational via a 64-bit-scaled integer quotient.
fn rational_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let num_bits = r.numer().bits() as i64;
    let den_bits = r.denom().bits() as i64;
    // Shift so the integer quotient keeps ~64 significant bits.
    let shift = (64 - (num_bits - den_bits)).max(0) as u64;
    let scaled = (r.numer() << shift) / r.denom();
    let q = scaled.to_f64().unwrap_or(f64::NAN);
    q * 2f64.powi(-(shift as i32))
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            _ => self.to_f64() == other.to_f64(),
        }
    }
}

impl Eq for Scalar {}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a.cmp(b),
            // No NaNs arise from metric data; promote and compare.
            _ => self
                .to_f64()
                .partial_cmp(&other.to_f64())
                .expect("NaN in scalar comparison"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Approx(x) => write!(f, "{}", x),
        }
    }
}
