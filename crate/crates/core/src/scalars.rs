//! Exact coefficients: the rationals and quadratic fields `Q(sqrt d)`.
//!
//! A [`Scalar`] is stored as `rational + radical * sqrt(d)` with both parts
//! reduced fractions. Values from different fields never mix; the checked
//! operations report a [`Error::FieldMismatch`], the operator impls panic.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Field {
    Rational,
    /// `Q(sqrt d)` for a square-free `d` other than 0 and 1.
    QuadraticSqrt(i64),
}

impl Field {
    pub fn quadratic(d: i64) -> Result<Field> {
        if is_square_free(d) && d != 1 {
            Ok(Field::QuadraticSqrt(d))
        } else {
            Err(Error::InvalidField(d))
        }
    }

    /// The radicand, if any.
    pub fn radicand(self) -> Option<i64> {
        match self {
            Field::Rational => None,
            Field::QuadraticSqrt(d) => Some(d),
        }
    }

    /// The field automorphisms: only the identity over Q, identity and
    /// conjugation over a quadratic field.
    pub fn automorphisms(self) -> &'static [FieldAutomorphism] {
        match self {
            Field::Rational => &[FieldAutomorphism::Identity],
            Field::QuadraticSqrt(_) => &[FieldAutomorphism::Identity, FieldAutomorphism::Conjugation],
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => f.write_str("q"),
            Field::QuadraticSqrt(d) => write!(f, "qsqrt:{d}"),
        }
    }
}

fn is_square_free(d: i64) -> bool {
    if d == 0 {
        return false;
    }
    let mut m = d.unsigned_abs();
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// An element `rational + radical * sqrt(d)` of a [`Field`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar {
    field: Field,
    rational: BigRational,
    radical: BigRational,
}

impl Scalar {
    pub fn new(field: Field, rational: BigRational, radical: BigRational) -> Result<Scalar> {
        if field == Field::Rational && !radical.is_zero() {
            return Err(Error::RadicalOverRationals);
        }
        Ok(Scalar { field, rational, radical })
    }

    pub fn zero(field: Field) -> Scalar {
        Scalar::from_rational(field, BigRational::zero())
    }

    pub fn one(field: Field) -> Scalar {
        Scalar::from_rational(field, BigRational::one())
    }

    pub fn from_rational(field: Field, rational: BigRational) -> Scalar {
        Scalar { field, rational, radical: BigRational::zero() }
    }

    pub fn from_integer(field: Field, n: i64) -> Scalar {
        Scalar::from_rational(field, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_fraction(field: Field, numer: i64, denom: i64) -> Result<Scalar> {
        if denom == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::from_rational(field, BigRational::new(numer.into(), denom.into())))
    }

    /// `sqrt(d)` itself; fails over Q.
    pub fn sqrt_radicand(field: Field) -> Result<Scalar> {
        match field {
            Field::Rational => Err(Error::RadicalOverRationals),
            Field::QuadraticSqrt(_) => Ok(Scalar { field, rational: BigRational::zero(), radical: BigRational::one() }),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rational(&self) -> &BigRational {
        &self.rational
    }

    pub fn radical(&self) -> &BigRational {
        &self.radical
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.radical.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rational.is_one() && self.radical.is_zero()
    }

    /// True when the value lies in the prime field Q.
    pub fn is_rational(&self) -> bool {
        self.radical.is_zero()
    }

    fn check(&self, other: &Scalar) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch { left: self.field, right: other.field })
        }
    }

    fn radicand(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.field.radicand().unwrap_or(0)))
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(Scalar {
            field: self.field,
            rational: &self.rational + &other.rational,
            radical: &self.radical + &other.radical,
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(Scalar {
            field: self.field,
            rational: &self.rational - &other.rational,
            radical: &self.radical - &other.radical,
        })
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        if self.radical.is_zero() && other.radical.is_zero() {
            return Ok(Scalar::from_rational(self.field, &self.rational * &other.rational));
        }
        let d = self.radicand();
        Ok(Scalar {
            field: self.field,
            rational: &self.rational * &other.rational + &self.radical * &other.radical * d,
            radical: &self.rational * &other.radical + &self.radical * &other.rational,
        })
    }

    /// The field norm `rational^2 - d * radical^2`.
    pub fn norm(&self) -> BigRational {
        &self.rational * &self.rational - &self.radical * &self.radical * self.radicand()
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // d is not a rational square, so the norm of a nonzero element is nonzero
        let norm = self.norm();
        Ok(Scalar { field: self.field, rational: &self.rational / &norm, radical: -&self.radical / norm })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        self.checked_mul(&other.inv()?)
    }

    /// Replaces the radical part by its negative.
    pub fn conjugate(&self) -> Scalar {
        Scalar { field: self.field, rational: self.rational.clone(), radical: -&self.radical }
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        let mut acc = Scalar::one(self.field);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.checked_add(rhs).expect("scalar fields must agree")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.checked_sub(rhs).expect("scalar fields must agree")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.checked_mul(rhs).expect("scalar fields must agree")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { field: self.field, rational: -&self.rational, radical: -&self.radical }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &BigRational) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

/// `|q|*s`, with a unit factor left implicit.
fn write_radical_magnitude(f: &mut fmt::Formatter<'_>, q: &BigRational) -> fmt::Result {
    let q = q.abs();
    if q.is_one() {
        f.write_str("s")
    } else {
        write_rational(f, &q)?;
        f.write_str("*s")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rational.is_zero(), self.radical.is_zero()) {
            (_, true) => write_rational(f, &self.rational),
            (true, false) => {
                if self.radical.is_negative() {
                    f.write_str("-")?;
                }
                write_radical_magnitude(f, &self.radical)
            }
            (false, false) => {
                write_rational(f, &self.rational)?;
                f.write_str(if self.radical.is_negative() { "-" } else { "+" })?;
                write_radical_magnitude(f, &self.radical)
            }
        }
    }
}

/// An automorphism of the coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum FieldAutomorphism {
    #[default]
    Identity,
    /// `sqrt d -> -sqrt d`.
    Conjugation,
}

impl FieldAutomorphism {
    pub fn is_valid_for(self, field: Field) -> bool {
        match self {
            FieldAutomorphism::Identity => true,
            FieldAutomorphism::Conjugation => field != Field::Rational,
        }
    }

    pub fn apply(self, a: &Scalar) -> Result<Scalar> {
        match self {
            FieldAutomorphism::Identity => Ok(a.clone()),
            FieldAutomorphism::Conjugation => match a.field() {
                Field::Rational => Err(Error::ConjugationOverRationals(Field::Rational)),
                Field::QuadraticSqrt(_) => Ok(a.conjugate()),
            },
        }
    }

    /// `self ∘ other`.
    pub fn compose(self, other: FieldAutomorphism) -> FieldAutomorphism {
        if self == other {
            FieldAutomorphism::Identity
        } else {
            FieldAutomorphism::Conjugation
        }
    }

    pub fn inverse(self) -> FieldAutomorphism {
        self
    }
}

impl fmt::Display for FieldAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldAutomorphism::Identity => "id",
            FieldAutomorphism::Conjugation => "conj",
        })
    }
}

/// Whether a nonnegative rational is the square of a rational.
pub(crate) fn is_rational_square(q: &BigRational) -> bool {
    if q.is_negative() {
        return false;
    }
    let is_square = |n: &BigInt| {
        let r = n.sqrt();
        &r * &r == *n
    };
    is_square(q.numer()) && is_square(q.denom())
}
