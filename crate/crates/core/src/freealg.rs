//! Sparse elements of the free commutative algebra `P[x1..xn]` and the free
//! associative algebra `P<x1..xn>`.
//!
//! Both kinds share one monomial representation: a word of generator
//! indices. In the commutative kind the word is kept sorted, so it is the
//! exponent vector written out letter by letter. Multiplication concatenates
//! words (and re-sorts in the commutative kind).
//!
//! Every product is checked against the context's degree cap. The free
//! algebras are domains, so `deg(fg) = deg f + deg g` and the check happens
//! before any work is done.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalars::{Field, FieldAutomorphism, Scalar};

pub const DEFAULT_MAX_DEGREE: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AlgebraKind {
    Commutative,
    Associative,
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgebraKind::Commutative => "comm",
            AlgebraKind::Associative => "assoc",
        })
    }
}

/// The ambient algebra: kind, number of generators, coefficient field and
/// the degree cap for products.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Context {
    pub kind: AlgebraKind,
    pub vars: usize,
    pub field: Field,
    pub max_degree: usize,
}

impl Context {
    pub fn new(kind: AlgebraKind, vars: usize, field: Field) -> Context {
        Context { kind, vars, field, max_degree: DEFAULT_MAX_DEGREE }
    }

    pub fn with_max_degree(self, max_degree: usize) -> Context {
        Context { max_degree, ..self }
    }

    pub fn is_associative(&self) -> bool {
        self.kind == AlgebraKind::Associative
    }

    pub(crate) fn check(&self, other: &Context) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub(crate) fn check_var(&self, index: usize) -> Result<()> {
        if index < self.vars {
            Ok(())
        } else {
            Err(Error::VariableOutOfRange { index, vars: self.vars })
        }
    }

    pub(crate) fn check_scalar(&self, a: &Scalar) -> Result<()> {
        if a.field() == self.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch { left: self.field, right: a.field() })
        }
    }

    fn check_degree(&self, degree: usize) -> Result<()> {
        if degree > self.max_degree {
            Err(Error::DegreeCapExceeded { degree, cap: self.max_degree })
        } else {
            Ok(())
        }
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement::zero(*self)
    }

    pub fn one(&self) -> AlgebraElement {
        AlgebraElement::one(*self)
    }

    /// The generator `x_{index+1}`; panics on an out-of-range index.
    pub fn var(&self, index: usize) -> AlgebraElement {
        AlgebraElement::var(*self, index).expect("generator index in range")
    }

    pub fn vars(&self) -> Vec<AlgebraElement> {
        (0..self.vars).map(|i| self.var(i)).collect()
    }

    pub fn scalar(&self, a: Scalar) -> AlgebraElement {
        AlgebraElement::constant(*self, a).expect("scalar in the context's field")
    }

    pub fn integer(&self, n: i64) -> AlgebraElement {
        self.scalar(Scalar::from_integer(self.field, n))
    }
}

/// A word in the generators, letter `i` standing for `x_{i+1}`.
///
/// Ordered for printing: higher degree first, words of equal degree
/// lexicographically. The empty word (the unit) comes last.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn unit() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn letter(index: usize) -> Monomial {
        Monomial(vec![index as u16])
    }

    /// A monomial from its letters; sorted when `kind` is commutative.
    pub fn from_letters(kind: AlgebraKind, letters: impl IntoIterator<Item = usize>) -> Monomial {
        let mut word: Vec<u16> = letters.into_iter().map(|i| i as u16).collect();
        if kind == AlgebraKind::Commutative {
            word.sort_unstable();
        }
        Monomial(word)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> impl DoubleEndedIterator<Item = usize> + ExactSizeIterator + '_ {
        self.0.iter().map(|&l| l as usize)
    }

    pub fn contains(&self, index: usize) -> bool {
        self.0.iter().any(|&l| l as usize == index)
    }

    /// Exponent vector of length `vars`.
    pub fn exponents(&self, vars: usize) -> Vec<u32> {
        let mut e = vec![0; vars];
        for l in &self.0 {
            e[*l as usize] += 1;
        }
        e
    }

    fn mul(&self, other: &Monomial, kind: AlgebraKind) -> Monomial {
        match kind {
            AlgebraKind::Associative => {
                let mut w = Vec::with_capacity(self.0.len() + other.0.len());
                w.extend_from_slice(&self.0);
                w.extend_from_slice(&other.0);
                Monomial(w)
            }
            AlgebraKind::Commutative => {
                let mut w = Vec::with_capacity(self.0.len() + other.0.len());
                let (mut i, mut j) = (0, 0);
                while i < self.0.len() && j < other.0.len() {
                    if self.0[i] <= other.0[j] {
                        w.push(self.0[i]);
                        i += 1;
                    } else {
                        w.push(other.0[j]);
                        j += 1;
                    }
                }
                w.extend_from_slice(&self.0[i..]);
                w.extend_from_slice(&other.0[j..]);
                Monomial(w)
            }
        }
    }

    fn reversed(&self) -> Monomial {
        Monomial(self.0.iter().rev().copied().collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.len().cmp(&self.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    /// Runs of a repeated letter print as powers: `x1^2*x2*x1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let letter = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == letter {
                run += 1;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", letter as usize + 1)?;
            if run > 1 {
                write!(f, "^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

/// A finite sum of monomials with nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AlgebraElement {
    ctx: Context,
    terms: BTreeMap<Monomial, Scalar>,
}

impl AlgebraElement {
    pub fn zero(ctx: Context) -> AlgebraElement {
        AlgebraElement { ctx, terms: BTreeMap::new() }
    }

    pub fn one(ctx: Context) -> AlgebraElement {
        AlgebraElement::constant(ctx, Scalar::one(ctx.field)).expect("unit lies in the field")
    }

    pub fn constant(ctx: Context, a: Scalar) -> Result<AlgebraElement> {
        ctx.check_scalar(&a)?;
        let mut terms = BTreeMap::new();
        if !a.is_zero() {
            terms.insert(Monomial::unit(), a);
        }
        Ok(AlgebraElement { ctx, terms })
    }

    pub fn var(ctx: Context, index: usize) -> Result<AlgebraElement> {
        ctx.check_var(index)?;
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::letter(index), Scalar::one(ctx.field));
        Ok(AlgebraElement { ctx, terms })
    }

    /// `coeff * monomial`; the monomial is re-sorted in the commutative kind.
    pub fn term(ctx: Context, coeff: Scalar, monomial: Monomial) -> Result<AlgebraElement> {
        ctx.check_scalar(&coeff)?;
        for l in monomial.letters() {
            ctx.check_var(l)?;
        }
        ctx.check_degree(monomial.degree())?;
        let monomial = Monomial::from_letters(ctx.kind, monomial.letters());
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(monomial, coeff);
        }
        Ok(AlgebraElement { ctx, terms })
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` stands for the degree of zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next().map(Monomial::degree)
    }

    /// True for zero and for nonzero constants.
    pub fn is_scalar(&self) -> bool {
        self.degree().is_none_or(|d| d == 0)
    }

    /// The value of a scalar element.
    pub fn as_scalar(&self) -> Option<Scalar> {
        if self.is_scalar() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Monomial::unit())
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| Scalar::zero(self.ctx.field))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Whether any term mentions `x_{index+1}`.
    pub fn involves(&self, index: usize) -> bool {
        self.terms.keys().any(|m| m.contains(index))
    }

    fn from_map(ctx: Context, mut terms: BTreeMap<Monomial, Scalar>) -> AlgebraElement {
        terms.retain(|_, c| !c.is_zero());
        AlgebraElement { ctx, terms }
    }

    pub fn checked_add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.ctx.check(&other.ctx)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), c);
        }
        Ok(AlgebraElement::from_map(self.ctx, terms))
    }

    pub fn checked_sub(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> AlgebraElement {
        AlgebraElement { ctx: self.ctx, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scalar_mul(&self, a: &Scalar) -> Result<AlgebraElement> {
        self.ctx.check_scalar(a)?;
        if a.is_zero() {
            return Ok(AlgebraElement::zero(self.ctx));
        }
        Ok(AlgebraElement { ctx: self.ctx, terms: self.terms.iter().map(|(m, c)| (m.clone(), c * a)).collect() })
    }

    pub fn checked_mul(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.ctx.check(&other.ctx)?;
        let (Some(d1), Some(d2)) = (self.degree(), other.degree()) else {
            return Ok(AlgebraElement::zero(self.ctx));
        };
        self.ctx.check_degree(d1 + d2)?;
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                accumulate(&mut terms, m1.mul(m2, self.ctx.kind), &(c1 * c2));
            }
        }
        Ok(AlgebraElement::from_map(self.ctx, terms))
    }

    pub fn pow(&self, exp: u32) -> Result<AlgebraElement> {
        let mut acc = AlgebraElement::one(self.ctx);
        for _ in 0..exp {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// The mirror antiautomorphism: every word reversed, coefficients kept.
    pub fn mirror(&self) -> Result<AlgebraElement> {
        if !self.ctx.is_associative() {
            return Err(Error::NotAssociative);
        }
        Ok(AlgebraElement { ctx: self.ctx, terms: self.terms.iter().map(|(m, c)| (m.reversed(), c.clone())).collect() })
    }

    /// Applies a field automorphism to every coefficient.
    pub fn map_coefficients(&self, alpha: FieldAutomorphism) -> Result<AlgebraElement> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(m.clone(), alpha.apply(c)?);
        }
        Ok(AlgebraElement { ctx: self.ctx, terms })
    }

    /// Replaces every `x_i` by `images[i]`.
    pub fn substitute(&self, images: &[AlgebraElement]) -> Result<AlgebraElement> {
        if images.len() != self.ctx.vars {
            return Err(Error::ArityMismatch { expected: self.ctx.vars, found: images.len() });
        }
        for img in images {
            self.ctx.check(&img.ctx)?;
        }
        // exact, since free algebras have no zero divisors
        for m in self.terms.keys() {
            let degrees: Option<usize> = m.letters().map(|l| images[l].degree()).sum();
            if let Some(d) = degrees {
                self.ctx.check_degree(d)?;
            }
        }
        // products of shared prefixes are reused
        let mut prefix: BTreeMap<Vec<u16>, AlgebraElement> = BTreeMap::new();
        let mut result: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in &self.terms {
            let product = prefix_product(&mut prefix, &m.0, images, self.ctx)?;
            for (pm, pc) in &product.terms {
                accumulate(&mut result, pm.clone(), &(pc * c));
            }
        }
        Ok(AlgebraElement::from_map(self.ctx, result))
    }

    /// Value at a point of `P^n`.
    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.ctx.vars {
            return Err(Error::ArityMismatch { expected: self.ctx.vars, found: point.len() });
        }
        for a in point {
            self.ctx.check_scalar(a)?;
        }
        let mut total = Scalar::zero(self.ctx.field);
        for (m, c) in &self.terms {
            let mut value = c.clone();
            for l in m.letters() {
                value = &value * &point[l];
            }
            total = &total + &value;
        }
        Ok(total)
    }
}

fn accumulate(terms: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: &Scalar) {
    match terms.get_mut(&m) {
        Some(existing) => *existing = &*existing + c,
        None => {
            terms.insert(m, c.clone());
        }
    }
}

fn prefix_product(
    cache: &mut BTreeMap<Vec<u16>, AlgebraElement>,
    word: &[u16],
    images: &[AlgebraElement],
    ctx: Context,
) -> Result<AlgebraElement> {
    if word.is_empty() {
        return Ok(AlgebraElement::one(ctx));
    }
    if let Some(hit) = cache.get(word) {
        return Ok(hit.clone());
    }
    let (last, head) = word.split_last().expect("nonempty word");
    let value = prefix_product(cache, head, images, ctx)?.checked_mul(&images[*last as usize])?;
    cache.insert(word.to_vec(), value.clone());
    Ok(value)
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            // mixed coefficients print parenthesized with a leading plus
            let mixed = !c.is_rational() && !c.rational().is_zero();
            let negative =
                !mixed && if c.is_rational() { c.rational().is_negative() } else { c.radical().is_negative() };
            let magnitude = if negative { -c } else { c.clone() };
            match (i == 0, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            let unit = m.degree() == 0;
            if magnitude.is_one() {
                if unit {
                    f.write_str("1")?;
                } else {
                    write!(f, "{m}")?;
                }
            } else if mixed {
                write!(f, "({magnitude})")?;
                if !unit {
                    write!(f, "*{m}")?;
                }
            } else {
                write!(f, "{magnitude}")?;
                if !unit {
                    write!(f, "*{m}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn comm(n: usize) -> Context {
        Context::new(AlgebraKind::Commutative, n, Field::Rational)
    }

    fn assoc(n: usize) -> Context {
        Context::new(AlgebraKind::Associative, n, Field::Rational)
    }

    fn add(a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        a.checked_add(b).unwrap()
    }

    fn mul(a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        a.checked_mul(b).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let c = comm(2);
        let (x1, x2) = (c.var(0), c.var(1));
        let p = mul(&add(&x1, &x2), &x1.checked_sub(&x2).unwrap());
        assert_eq!(p.to_string(), "x1^2 - x2^2");

        let a = assoc(2);
        let (x1, x2) = (a.var(0), a.var(1));
        let p = mul(&add(&x1, &x2), &x1.checked_sub(&x2).unwrap());
        assert_eq!(p.to_string(), "x1^2 - x1*x2 + x2*x1 - x2^2");
    }

    #[test]
    fn noncommuting_witness() {
        let a = assoc(2);
        assert_ne!(mul(&a.var(0), &a.var(1)), mul(&a.var(1), &a.var(0)));
        let c = comm(2);
        assert_eq!(mul(&c.var(0), &c.var(1)), mul(&c.var(1), &c.var(0)));
    }

    #[test]
    fn substitution_examples() {
        let c = comm(2);
        let f = add(&mul(&c.var(0), &c.var(1)), &c.integer(3));
        assert_eq!(f.substitute(&[c.var(1), c.var(0)]).unwrap(), f);

        let a = assoc(2);
        let f = mul(&a.var(0), &a.var(1));
        assert_eq!(f.substitute(&[a.var(1), a.var(0)]).unwrap(), mul(&a.var(1), &a.var(0)));
        assert_eq!(f.substitute(&[a.var(0)]), Err(Error::ArityMismatch { expected: 2, found: 1 }));
    }

    #[test]
    fn mirror_examples() {
        let a = assoc(3);
        let x1x2 = mul(&a.var(0), &a.var(1));
        assert_eq!(x1x2.mirror().unwrap(), mul(&a.var(1), &a.var(0)));
        let w = mul(&mul(&a.var(0), &a.var(1)), &a.var(2)).scalar_mul(&Scalar::from_integer(a.field, 2)).unwrap();
        let f = add(&a.integer(3), &w);
        let expected = add(
            &a.integer(3),
            &mul(&mul(&a.var(2), &a.var(1)), &a.var(0)).scalar_mul(&Scalar::from_integer(a.field, 2)).unwrap(),
        );
        assert_eq!(f.mirror().unwrap(), expected);
        assert_eq!(comm(2).var(0).mirror(), Err(Error::NotAssociative));
    }

    #[test]
    fn evaluation() {
        let c = comm(2);
        let f = add(&c.var(0).pow(2).unwrap(), &c.var(1));
        let point = [Scalar::from_integer(c.field, 2), Scalar::from_integer(c.field, 3)];
        assert_eq!(f.evaluate(&point).unwrap(), Scalar::from_integer(c.field, 7));
        assert!(f.evaluate(&point[..1]).is_err());
    }

    #[test]
    fn degree_cap_is_a_hard_error() {
        let c = comm(1).with_max_degree(4);
        let x = c.var(0);
        assert!(x.pow(4).is_ok());
        assert_eq!(x.pow(5), Err(Error::DegreeCapExceeded { degree: 5, cap: 4 }));
        let x3 = x.pow(3).unwrap();
        assert_eq!(x3.substitute(core::slice::from_ref(&x3)), Err(Error::DegreeCapExceeded { degree: 9, cap: 4 }));
    }

    #[test]
    fn mismatched_contexts() {
        assert_eq!(comm(2).var(0).checked_add(&comm(3).var(0)), Err(Error::ContextMismatch));
        assert_eq!(comm(2).var(0).checked_mul(&assoc(2).var(0)), Err(Error::ContextMismatch));
        let q2 = Context::new(AlgebraKind::Commutative, 2, Field::QuadraticSqrt(2));
        assert!(q2.var(0).checked_add(&comm(2).var(0)).is_err());
        assert!(AlgebraElement::var(comm(2), 2).is_err());
    }

    #[test]
    fn zero_and_degree() {
        let c = comm(2);
        assert_eq!(c.zero().degree(), None);
        assert_eq!(c.zero().to_string(), "0");
        assert_eq!(c.integer(5).degree(), Some(0));
        let f = add(&mul(&c.var(0), &c.var(1)), &c.var(0));
        assert_eq!(f.degree(), Some(2));
        assert!(add(&f, &f.neg()).is_zero());
    }

    #[test]
    fn printing_coefficients() {
        let field = Field::QuadraticSqrt(2);
        let c = Context::new(AlgebraKind::Commutative, 2, field);
        let root = Scalar::sqrt_radicand(field).unwrap();
        let one_plus_root = &Scalar::one(field) + &root;
        let f = add(&c.var(0).scalar_mul(&one_plus_root).unwrap(), &c.var(1).scalar_mul(&-&root).unwrap());
        let f = add(&f, &c.scalar(Scalar::from_fraction(field, -1, 2).unwrap()));
        assert_eq!(f.to_string(), "(1+s)*x1 - s*x2 - 1/2");
        let g = c.var(0).scalar_mul(&(&Scalar::from_integer(field, -1) + &root)).unwrap();
        assert_eq!(g.to_string(), "(-1+s)*x1");
        let h = mul(&c.var(1), &c.var(0).pow(2).unwrap());
        assert_eq!(h.to_string(), "x1^2*x2");
        let a = Context::new(AlgebraKind::Associative, 2, Field::Rational);
        let w = mul(&mul(&a.var(0), &a.var(0)), &mul(&a.var(1), &a.var(0)));
        assert_eq!(w.to_string(), "x1^2*x2*x1");
    }

    fn element(ctx: Context, max_deg: usize) -> impl Strategy<Value = AlgebraElement> {
        let term = (-5i64..6, 1i64..4, proptest::collection::vec(0..ctx.vars, 0..=max_deg));
        proptest::collection::vec(term, 0..4).prop_map(move |terms| {
            let mut f = AlgebraElement::zero(ctx);
            for (n, d, letters) in terms {
                let t = AlgebraElement::term(
                    ctx,
                    Scalar::from_fraction(ctx.field, n, d).unwrap(),
                    Monomial::from_letters(ctx.kind, letters),
                )
                .unwrap();
                f = f.checked_add(&t).unwrap();
            }
            f
        })
    }

    fn any_ctx() -> impl Strategy<Value = Context> {
        (prop_oneof![Just(AlgebraKind::Commutative), Just(AlgebraKind::Associative)], 1usize..4)
            .prop_map(|(k, n)| Context::new(k, n, Field::Rational))
    }

    proptest! {
        #[test]
        fn ring_axioms((f, g, h) in any_ctx().prop_flat_map(|c| (element(c, 4), element(c, 4), element(c, 4)))) {
            prop_assert_eq!(mul(&f, &add(&g, &h)), add(&mul(&f, &g), &mul(&f, &h)));
            prop_assert_eq!(mul(&add(&g, &h), &f), add(&mul(&g, &f), &mul(&h, &f)));
            prop_assert_eq!(mul(&mul(&f, &g), &h), mul(&f, &mul(&g, &h)));
            prop_assert_eq!(add(&f, &g), add(&g, &f));
            prop_assert_eq!(mul(&f, &f.context().one()), f.clone());
            if f.context().kind == AlgebraKind::Commutative {
                prop_assert_eq!(mul(&f, &g), mul(&g, &f));
            }
            // no stored zero coefficients
            prop_assert!(mul(&f, &g).terms().all(|(_, c)| !c.is_zero()));
        }

        #[test]
        fn substitution_is_a_homomorphism(
            (f, g, imgs) in any_ctx().prop_flat_map(|c| (
                element(c, 3),
                element(c, 3),
                proptest::collection::vec(element(c, 2), c.vars),
            ))
        ) {
            let lhs = mul(&f, &g).substitute(&imgs).unwrap();
            let rhs = mul(&f.substitute(&imgs).unwrap(), &g.substitute(&imgs).unwrap());
            prop_assert_eq!(lhs, rhs);
            let ctx = *f.context();
            prop_assert_eq!(f.substitute(&ctx.vars()).unwrap(), f.clone());
            // scalars are fixed
            let seven = ctx.integer(7);
            prop_assert_eq!(seven.substitute(&imgs).unwrap(), seven);
        }

        #[test]
        fn mirror_reverses_products(
            (f, g) in (1usize..4).prop_flat_map(|n| (element(assoc(n), 4), element(assoc(n), 4)))
        ) {
            // oracle: expand term by term, reversing each concatenated word
            let mut expected = f.context().zero();
            for (m1, c1) in f.terms() {
                for (m2, c2) in g.terms() {
                    let letters: Vec<usize> = m1.letters().chain(m2.letters()).rev().collect();
                    let t = AlgebraElement::term(*f.context(), c1 * c2, Monomial::from_letters(AlgebraKind::Associative, letters)).unwrap();
                    expected = add(&expected, &t);
                }
            }
            let lhs = mul(&f, &g).mirror().unwrap();
            prop_assert_eq!(&lhs, &expected);
            prop_assert_eq!(lhs, mul(&g.mirror().unwrap(), &f.mirror().unwrap()));
            prop_assert_eq!(f.mirror().unwrap().mirror().unwrap(), f);
        }

        #[test]
        fn evaluation_matches_constant_substitution(
            (f, point) in any_ctx().prop_flat_map(|c| (
                element(c, 4),
                proptest::collection::vec((-4i64..5).prop_map(move |v| Scalar::from_integer(c.field, v)), c.vars),
            ))
        ) {
            let ctx = *f.context();
            let images: Vec<AlgebraElement> = point.iter().map(|a| ctx.scalar(a.clone())).collect();
            let substituted = f.substitute(&images).unwrap();
            prop_assert_eq!(substituted.as_scalar().unwrap(), f.evaluate(&point).unwrap());
            let origin = vec![Scalar::zero(ctx.field); ctx.vars];
            prop_assert_eq!(f.evaluate(&origin).unwrap(), f.constant_term());
        }
    }
}
