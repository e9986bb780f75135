//! Exact scalar arithmetic over the rationals and prime fields GF(p),
//! with root-of-unity search and characteristic predicates.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;

/// Errors raised by field arithmetic and root searches.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("division by zero")]
    DivisionByZero,
    #[error("no element of order {0} in this field")]
    NoSuchRoot(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot parse scalar {0:?}")]
    BadScalar(String),
}

/// The ambient field: the rationals, or GF(p) for a desk-scale prime p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    /// GF(p); the modulus is checked for primality by trial division.
    pub fn gfp(p: u64) -> Result<Self, FieldError> {
        if is_prime(p) {
            Ok(FieldSpec::PrimeField(p))
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    pub fn rationals() -> Self {
        FieldSpec::Rationals
    }

    /// Characteristic: 0 for the rationals, p for GF(p).
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::from_integer(0, *self)
    }

    pub fn one(&self) -> Scalar {
        Scalar::from_integer(1, *self)
    }

    pub fn scalar(&self, n: i64) -> Scalar {
        Scalar::from_integer(n, *self)
    }

    /// Truth of a characteristic predicate.
    pub fn characteristic_ok(&self, constraint: CharConstraint) -> bool {
        let c = self.characteristic();
        match constraint {
            CharConstraint::Equals(p) => c == p,
            CharConstraint::ZeroOrGreaterThan(n) => c == 0 || c > n,
            CharConstraint::NotEqual(p) => c != p,
        }
    }

    /// Smallest element of multiplicative order exactly `n`, searched
    /// deterministically so results are reproducible.
    ///
    /// Over the rationals only n = 1, 2 are realizable (1 and -1). Over
    /// GF(p) the witnesses 2, 3, ..., p-1 are tried in order.
    pub fn find_root_of_unity(&self, n: u64) -> Result<Scalar, FieldError> {
        assert!(n >= 1, "order must be positive");
        match self {
            FieldSpec::Rationals => match n {
                1 => Ok(self.one()),
                2 => Ok(self.scalar(-1)),
                _ => Err(FieldError::NoSuchRoot(n)),
            },
            FieldSpec::PrimeField(p) => {
                if n == 1 {
                    return Ok(self.one());
                }
                if (p - 1) % n != 0 {
                    return Err(FieldError::NoSuchRoot(n));
                }
                let divisors = prime_divisors(n);
                for w in 2..*p {
                    if pow_mod(w, n, *p) != 1 {
                        continue;
                    }
                    if divisors.iter().all(|q| pow_mod(w, n / q, *p) != 1) {
                        return Ok(Scalar {
                            value: Value::Mod(w),
                            field: *self,
                        });
                    }
                }
                Err(FieldError::NoSuchRoot(n))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::PrimeField(p) => write!(f, "gfp:{p}"),
        }
    }
}

/// Characteristic predicates used by family side conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharConstraint {
    Equals(u64),
    ZeroOrGreaterThan(u64),
    NotEqual(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Value {
    Rat(BigRational),
    Mod(u64),
}

/// An exact field element: an arbitrary-precision rational in lowest terms,
/// or a residue in [0, p).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    value: Value,
    field: FieldSpec,
}

impl Scalar {
    pub fn from_integer(n: i64, field: FieldSpec) -> Self {
        match field {
            FieldSpec::Rationals => Scalar {
                value: Value::Rat(BigRational::from_integer(BigInt::from(n))),
                field,
            },
            FieldSpec::PrimeField(p) => {
                let r = n.rem_euclid(p as i64) as u64;
                Scalar {
                    value: Value::Mod(r % p),
                    field,
                }
            }
        }
    }

    /// n/d in the ambient field; in GF(p) this is the residue quotient.
    pub fn from_fraction(n: i64, d: i64, field: FieldSpec) -> Self {
        let num = Scalar::from_integer(n, field);
        let den = Scalar::from_integer(d, field);
        num.checked_div(&den).expect("nonzero denominator")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Rat(r) => r.is_zero(),
            Value::Mod(r) => *r == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.value {
            Value::Rat(r) => r.is_one(),
            Value::Mod(r) => *r == 1,
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::MixedFields)
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        let value = match (&self.value, &other.value) {
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a + b),
            (Value::Mod(a), Value::Mod(b)) => {
                let p = self.modulus();
                Value::Mod(add_mod(*a, *b, p))
            }
            _ => unreachable!("field tags agree"),
        };
        Ok(Scalar {
            value,
            field: self.field,
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.checked_add(&other.checked_neg())
    }

    pub fn checked_neg(&self) -> Scalar {
        let value = match &self.value {
            Value::Rat(a) => Value::Rat(-a),
            Value::Mod(a) => {
                let p = self.modulus();
                Value::Mod(if *a == 0 { 0 } else { p - a })
            }
        };
        Scalar {
            value,
            field: self.field,
        }
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        let value = match (&self.value, &other.value) {
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a * b),
            (Value::Mod(a), Value::Mod(b)) => Value::Mod(mul_mod(*a, *b, self.modulus())),
            _ => unreachable!("field tags agree"),
        };
        Ok(Scalar {
            value,
            field: self.field,
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        self.checked_mul(&other.inverse()?)
    }

    pub fn inverse(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let value = match &self.value {
            Value::Rat(a) => Value::Rat(a.recip()),
            Value::Mod(a) => Value::Mod(inv_mod(*a, self.modulus())),
        };
        Ok(Scalar {
            value,
            field: self.field,
        })
    }

    /// Exact integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Scalar {
        if e < 0 {
            return self
                .inverse()
                .expect("negative power of zero")
                .pow(-e);
        }
        let mut acc = self.field.one();
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base).unwrap();
            }
            base = base.checked_mul(&base).unwrap();
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order, if finite. Unbounded search is avoided:
    /// over GF(p) the order divides p-1; over the rationals only
    /// 1 and -1 have finite order.
    pub fn multiplicative_order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        match self.field {
            FieldSpec::Rationals => {
                if self.is_one() {
                    Some(1)
                } else if self.checked_neg().is_one() {
                    Some(2)
                } else {
                    None
                }
            }
            FieldSpec::PrimeField(p) => {
                let a = match &self.value {
                    Value::Mod(a) => *a,
                    _ => unreachable!(),
                };
                let mut order = p - 1;
                for q in prime_divisors(p - 1) {
                    while order % q == 0 && pow_mod(a, order / q, p) == 1 {
                        order /= q;
                    }
                }
                Some(order)
            }
        }
    }

    /// All square roots in the ambient field (0, 1, or 2 of them).
    pub fn sqrt_candidates(&self) -> Vec<Scalar> {
        let mut out = Vec::new();
        match (&self.value, self.field) {
            (Value::Rat(r), FieldSpec::Rationals) => {
                if r.is_zero() {
                    return vec![self.field.zero()];
                }
                if r.is_negative() {
                    return out;
                }
                let (n, d) = (r.numer().clone(), r.denom().clone());
                let (sn, sd) = (n.sqrt(), d.sqrt());
                if &sn * &sn == n && &sd * &sd == d {
                    let s = BigRational::new(sn, sd);
                    out.push(Scalar {
                        value: Value::Rat(s.clone()),
                        field: self.field,
                    });
                    out.push(Scalar {
                        value: Value::Rat(-s),
                        field: self.field,
                    });
                }
                out
            }
            (Value::Mod(a), FieldSpec::PrimeField(p)) => {
                // exhaustive; moduli are desk-scale
                for s in 0..p {
                    if mul_mod(s, s, p) == *a {
                        out.push(Scalar {
                            value: Value::Mod(s),
                            field: self.field,
                        });
                    }
                }
                out
            }
            _ => unreachable!(),
        }
    }

    fn modulus(&self) -> u64 {
        match self.field {
            FieldSpec::PrimeField(p) => p,
            FieldSpec::Rationals => unreachable!("rationals have no modulus"),
        }
    }

    /// Canonical string form: lowest-terms "num/den" (or "n" for integers)
    /// over the rationals, the residue digits over GF(p).
    pub fn to_canonical_string(&self) -> String {
        match &self.value {
            Value::Rat(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Value::Mod(a) => a.to_string(),
        }
    }

    /// Parse the canonical string form against an ambient field.
    pub fn parse(s: &str, field: FieldSpec) -> Result<Scalar, FieldError> {
        let s = s.trim();
        let bad = || FieldError::BadScalar(s.to_string());
        match field {
            FieldSpec::Rationals => {
                let (n, d) = match s.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (s, "1"),
                };
                let n: BigInt = n.parse().map_err(|_| bad())?;
                let d: BigInt = d.parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(FieldError::DivisionByZero);
                }
                Ok(Scalar {
                    value: Value::Rat(BigRational::new(n, d)),
                    field,
                })
            }
            FieldSpec::PrimeField(p) => {
                if let Some((n, d)) = s.split_once('/') {
                    let n: i64 = n.parse().map_err(|_| bad())?;
                    let d: i64 = d.parse().map_err(|_| bad())?;
                    return Scalar::from_integer(n, field)
                        .checked_div(&Scalar::from_integer(d, field));
                }
                let n: i64 = s.parse().map_err(|_| bad())?;
                let r = n.rem_euclid(p as i64) as u64;
                Ok(Scalar {
                    value: Value::Mod(r % p),
                    field,
                })
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_canonical_string())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_canonical_string())
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar arithmetic")
            }
        }
        impl std::ops::$trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$checked(&rhs).expect("scalar arithmetic")
            }
        }
    };
}

impl_binop!(Add, add, checked_add);
impl_binop!(Sub, sub, checked_sub);
impl_binop!(Mul, mul, checked_mul);
impl_binop!(Div, div, checked_div);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.checked_neg()
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.checked_neg()
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = 2u64;
    while k * k <= n {
        if n % k == 0 {
            out.push(k);
            while n % k == 0 {
                n /= k;
            }
        }
        k += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    let mut base = a % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p
    pow_mod(a, p - 2, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn rational_add() {
        let a = Scalar::from_fraction(1, 2, q());
        let b = Scalar::from_fraction(1, 3, q());
        assert_eq!(&a + &b, Scalar::from_fraction(5, 6, q()));
    }

    #[test]
    fn gfp_mul() {
        let f = FieldSpec::gfp(13).unwrap();
        let a = f.scalar(5);
        let b = f.scalar(8);
        assert_eq!(&a * &b, f.one());
    }

    #[test]
    fn division_by_zero_rejected() {
        let a = q().scalar(3);
        assert_eq!(
            a.checked_div(&q().zero()),
            Err(FieldError::DivisionByZero)
        );
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = q().one();
        let b = FieldSpec::gfp(7).unwrap().one();
        assert_eq!(a.checked_add(&b), Err(FieldError::MixedFields));
    }

    #[test]
    fn root_of_unity_gf13_order4() {
        let f = FieldSpec::gfp(13).unwrap();
        let w = f.find_root_of_unity(4).unwrap();
        assert_eq!(w, f.scalar(5));
        assert_eq!(w.multiplicative_order(), Some(4));
    }

    #[test]
    fn root_of_unity_gf7_order6() {
        let f = FieldSpec::gfp(7).unwrap();
        let w = f.find_root_of_unity(6).unwrap();
        assert_eq!(w, f.scalar(3));
    }

    #[test]
    fn no_cube_root_of_unity_in_rationals() {
        assert_eq!(q().find_root_of_unity(3), Err(FieldError::NoSuchRoot(3)));
    }

    #[test]
    fn root_order_divides_check() {
        let f = FieldSpec::gfp(13).unwrap();
        assert_eq!(f.find_root_of_unity(5), Err(FieldError::NoSuchRoot(5)));
    }

    #[test]
    fn characteristic_predicates() {
        assert!(q().characteristic_ok(CharConstraint::ZeroOrGreaterThan(6)));
        let f3 = FieldSpec::gfp(3).unwrap();
        assert!(!f3.characteristic_ok(CharConstraint::ZeroOrGreaterThan(4)));
        let f2 = FieldSpec::gfp(2).unwrap();
        assert!(!f2.characteristic_ok(CharConstraint::NotEqual(2)));
        assert!(f3.characteristic_ok(CharConstraint::Equals(3)));
    }

    #[test]
    fn primality_enforced() {
        assert!(FieldSpec::gfp(12).is_err());
        assert!(FieldSpec::gfp(2).is_ok());
        assert!(FieldSpec::gfp(104729).is_ok());
    }

    #[test]
    fn canonical_strings() {
        assert_eq!(Scalar::from_fraction(-3, 2, q()).to_canonical_string(), "-3/2");
        assert_eq!(q().scalar(3).to_canonical_string(), "3");
        let f = FieldSpec::gfp(13).unwrap();
        assert_eq!(f.scalar(-1).to_canonical_string(), "12");
    }

    #[test]
    fn sqrt_candidates_gfp() {
        let f = FieldSpec::gfp(7).unwrap();
        let roots = f.scalar(4).sqrt_candidates();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert_eq!(&(r * r), &f.scalar(4));
        }
        assert!(f.scalar(3).sqrt_candidates().is_empty());
    }

    #[test]
    fn sqrt_candidates_rational() {
        let s = Scalar::from_fraction(9, 4, q());
        let roots = s.sqrt_candidates();
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&Scalar::from_fraction(3, 2, q())));
        assert!(Scalar::from_fraction(1, 2, q()).sqrt_candidates().is_empty());
    }

    proptest! {
        #[test]
        fn rational_inverse_roundtrip(n in -50i64..50, d in 1i64..50) {
            prop_assume!(n != 0);
            let a = Scalar::from_fraction(n, d, q());
            prop_assert!((a.inverse().unwrap() * a).is_one());
        }

        #[test]
        fn gfp_inverse_roundtrip(a in 1u64..13) {
            let f = FieldSpec::gfp(13).unwrap();
            let a = f.scalar(a as i64);
            prop_assert!((a.inverse().unwrap() * a).is_one());
        }

        #[test]
        fn parse_roundtrip(n in -99i64..99, d in 1i64..99) {
            let a = Scalar::from_fraction(n, d, q());
            let s = a.to_canonical_string();
            prop_assert_eq!(Scalar::parse(&s, q()).unwrap(), a);
        }

        #[test]
        fn roots_of_unity_have_exact_order(p_idx in 0usize..4, n_idx in 0usize..6) {
            let p = [13u64, 17, 29, 31][p_idx];
            let f = FieldSpec::gfp(p).unwrap();
            let divisors: Vec<u64> = (1..=p - 1).filter(|n| (p - 1) % n == 0).collect();
            let n = divisors[n_idx % divisors.len()];
            let w = f.find_root_of_unity(n).unwrap();
            prop_assert_eq!(w.multiplicative_order(), Some(n));
            prop_assert!(w.pow(n as i64).is_one());
        }
    }
}
