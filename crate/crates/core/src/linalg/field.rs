//! Exact coefficient fields: the rationals and prime fields `GF(p)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

/// Characteristic used when nothing else is requested.
pub const DEFAULT_CHARACTERISTIC: u64 = 32003;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("malformed scalar {0:?}")]
    Malformed(String),
    #[error("scalar {0:?} has a denominator divisible by the characteristic")]
    NotInField(String),
    #[error("invalid field {0:?}")]
    InvalidField(String),
}

/// Which field the coefficients live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField { characteristic: u64 },
}

impl FieldSpec {
    pub fn prime(characteristic: u64) -> Result<Self, ScalarError> {
        if is_prime(characteristic) && characteristic < (1 << 32) {
            Ok(FieldSpec::PrimeField { characteristic })
        } else {
            Err(ScalarError::InvalidField(characteristic.to_string()))
        }
    }

    pub fn characteristic(&self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::PrimeField { characteristic } => Some(*characteristic),
        }
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::PrimeField {
            characteristic: DEFAULT_CHARACTERISTIC,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField { characteristic } => write!(f, "GF({characteristic})"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = ScalarError;

    /// Accepts `Q`, `rationals`, `GF(p)`, `F_p`, `Fp` or a bare prime.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("rationals") {
            return Ok(FieldSpec::Rationals);
        }
        let digits = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix("F_"))
            .or_else(|| t.strip_prefix('F'))
            .unwrap_or(t);
        let p: u64 = digits
            .parse()
            .map_err(|_| ScalarError::InvalidField(s.to_string()))?;
        FieldSpec::prime(p).map_err(|_| ScalarError::InvalidField(s.to_string()))
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Parses `"3"`, `"-1"` or `"2/7"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, ScalarError> {
    let t = s.trim();
    let bad = || ScalarError::Malformed(s.to_string());
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    if num.is_empty() || den.is_empty() || den.starts_with(['-', '+']) {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// Arithmetic in an exact field. Elements are plain values; the field value
/// carries whatever context (the modulus) the operations need.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Canonical decimal form: reduced fraction, or the residue in `0..p`.
    fn format(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `a -= c * b`
    fn sub_mul_assign(&self, a: &mut Self::Elem, c: &Self::Elem, b: &Self::Elem) {
        *a = self.sub(a, &self.mul(c, b));
    }

    fn parse(&self, s: &str) -> Result<Self::Elem, ScalarError> {
        let q = parse_rational(s)?;
        self.from_rational(&q)
            .ok_or_else(|| ScalarError::NotInField(s.to_string()))
    }
}

/// The field of rational numbers with arbitrary precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }
    fn from_rational(&self, q: &BigRational) -> Option<BigRational> {
        Some(q.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn sub_mul_assign(&self, a: &mut BigRational, c: &BigRational, b: &BigRational) {
        if !c.is_zero() && !b.is_zero() {
            *a -= c * b;
        }
    }
}

/// The prime field `GF(p)` for a prime `p < 2^32`, elements stored as residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, ScalarError> {
        FieldSpec::prime(p)?;
        Ok(PrimeField { p })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }

    fn reduce_big(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        n.mod_floor(&p).to_u64().expect("residue fits in u64")
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField {
            p: DEFAULT_CHARACTERISTIC,
        }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::PrimeField {
            characteristic: self.p,
        }
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn from_rational(&self, q: &BigRational) -> Option<u64> {
        let den = self.reduce_big(q.denom());
        let den_inv = self.inv(&den)?;
        let num = self.reduce_big(q.numer());
        Some(num * den_inv % self.p)
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (!(*a).is_multiple_of(self.p)).then(|| self.pow(*a, self.p - 2))
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    #[inline]
    fn sub_mul_assign(&self, a: &mut u64, c: &u64, b: &u64) {
        let prod = c * b % self.p;
        *a = if *a >= prod {
            *a - prod
        } else {
            *a + self.p - prod
        };
    }
}

/// Renders a rational the way scalars are written in files.
pub fn format_rational(q: &BigRational) -> String {
    Rationals.format(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_spec_parsing() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!(
            "GF(5)".parse::<FieldSpec>().unwrap(),
            FieldSpec::PrimeField { characteristic: 5 }
        );
        assert_eq!(
            "F_32003".parse::<FieldSpec>().unwrap(),
            FieldSpec::default()
        );
        assert!("GF(4)".parse::<FieldSpec>().is_err());
        assert!("GF(1)".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::default().to_string(), "GF(32003)");
    }

    #[test]
    fn scalar_strings() {
        let q = Rationals;
        assert_eq!(q.format(&q.parse("2/7").unwrap()), "2/7");
        assert_eq!(q.format(&q.parse("-4/2").unwrap()), "-2");
        assert!(q.parse("1/0").is_err());
        assert!(q.parse("x").is_err());
        assert!(q.parse("1/-2").is_err());

        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.parse("-1").unwrap(), 4);
        // 2/3 = 2 * 2 = 4 mod 5
        assert_eq!(f5.parse("2/3").unwrap(), 4);
        assert!(matches!(f5.parse("1/5"), Err(ScalarError::NotInField(_))));
    }

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::default();
        for a in [1u64, 2, 3, 17, 32002] {
            let inv = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &inv), 1);
        }
        assert_eq!(f.inv(&0), None);
    }
}
