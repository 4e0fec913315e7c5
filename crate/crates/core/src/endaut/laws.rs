//! Finite checks of the structural laws a bijection inducing an automorphism
//! of the endomorphism semigroup must satisfy, once normalized by
//! `μ(0) = 0, μ(1) = 1`.

use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::One;

use super::decompose::OracleTable;
use super::LinearBijection;
use crate::error::Result;
use crate::freealg::AlgebraElement;
use crate::scalars::{is_rational_square, Field, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Law {
    /// `μ(u + v) = μ(u) + μ(v)`
    Additivity,
    /// `μ(a u) = μ(a) μ(u)` for a scalar `a`
    Scalar,
    /// `μ(u v) = μ(u) μ(v)`
    Multiplicativity,
    /// `μ(a x_i)` is a scalar multiple of `μ(x_i)`
    Proportionality,
}

impl Law {
    pub const ALL: [Law; 4] = [Law::Additivity, Law::Scalar, Law::Multiplicativity, Law::Proportionality];
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Law::Additivity => "additivity",
            Law::Scalar => "scalar",
            Law::Multiplicativity => "multiplicativity",
            Law::Proportionality => "proportionality",
        })
    }
}

/// A table entry violating a law. `inputs` are the keys the law combines,
/// `expected` is what the law predicts from the other entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawWitness {
    pub inputs: Vec<AlgebraElement>,
    pub expected: AlgebraElement,
    pub found: AlgebraElement,
    /// Set on multiplicativity failures where `μ(uv) = μ(v) μ(u)`.
    pub anti_multiplicative: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LawStatus {
    Pass { checked: usize },
    Fail { witnesses: Vec<LawWitness> },
    NotCheckable,
}

impl LawStatus {
    pub fn passed(&self) -> bool {
        matches!(self, LawStatus::Pass { .. })
    }

    pub fn failed(&self) -> bool {
        matches!(self, LawStatus::Fail { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawOutcome {
    pub law: Law,
    pub status: LawStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub outcomes: Vec<LawOutcome>,
}

impl LawReport {
    pub fn status(&self, law: Law) -> &LawStatus {
        &self.outcomes.iter().find(|o| o.law == law).expect("every law is reported").status
    }

    pub fn all_pass(&self) -> bool {
        self.outcomes.iter().all(|o| o.status.passed())
    }

    /// The first multiplicativity witness flagged anti-multiplicative.
    pub fn anti_multiplicative_witness(&self) -> Option<&LawWitness> {
        match self.status(Law::Multiplicativity) {
            LawStatus::Fail { witnesses } => witnesses.iter().find(|w| w.anti_multiplicative),
            _ => None,
        }
    }
}

struct Tally {
    checked: usize,
    witnesses: Vec<LawWitness>,
}

impl Tally {
    fn new() -> Tally {
        Tally { checked: 0, witnesses: Vec::new() }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> LawWitness) {
        self.checked += 1;
        if !ok {
            self.witnesses.push(witness());
        }
    }

    fn finish(self) -> LawStatus {
        if !self.witnesses.is_empty() {
            LawStatus::Fail { witnesses: self.witnesses }
        } else if self.checked == 0 {
            LawStatus::NotCheckable
        } else {
            LawStatus::Pass { checked: self.checked }
        }
    }
}

/// Nontrivial scalar: neither 0 nor 1.
fn proper_scalar(k: &AlgebraElement) -> Option<Scalar> {
    k.as_scalar().filter(|a| !a.is_zero() && !a.is_one())
}

/// `a` and `i` when `k = a x_i` with `a != 0, 1`.
fn scaled_generator(k: &AlgebraElement) -> Option<(Scalar, usize)> {
    if k.num_terms() != 1 {
        return None;
    }
    let (m, a) = k.terms().next()?;
    if m.degree() != 1 || a.is_one() {
        return None;
    }
    Some((a.clone(), m.letters().next()?))
}

/// Checks additivity, the scalar law, multiplicativity and proportionality
/// on every combination of keys present in the table.
///
/// Values are first normalized through the `0` and `1` entries; without
/// them, or when they coincide, every law is not checkable. A law with no
/// applicable key combination is not checkable.
pub fn law_checks(table: &OracleTable) -> Result<LawReport> {
    let ctx = *table.context();
    let not_checkable = || LawReport {
        outcomes: Law::ALL.iter().map(|&law| LawOutcome { law, status: LawStatus::NotCheckable }).collect(),
    };
    let (Some(a), Some(b)) = (
        table.get(&ctx.zero()).and_then(AlgebraElement::as_scalar),
        table.get(&ctx.one()).and_then(AlgebraElement::as_scalar),
    ) else {
        return Ok(not_checkable());
    };
    if a == b {
        return Ok(not_checkable());
    }
    let normalizer = LinearBijection::new(&b - &a, a)?.inverse();
    let entries: Vec<(AlgebraElement, AlgebraElement)> =
        table.entries().iter().map(|(k, v)| Ok((k.clone(), normalizer.apply(v)?))).collect::<Result<_>>()?;
    let lookup = |key: &AlgebraElement| entries.iter().find(|(k, _)| k == key).map(|(_, v)| v);

    let mut additivity = Tally::new();
    let mut scalar = Tally::new();
    let mut multiplicativity = Tally::new();
    let mut proportionality = Tally::new();

    for (i, (u, nu)) in entries.iter().enumerate() {
        for (v, nv) in &entries[i..] {
            if u.is_zero() || v.is_zero() {
                continue;
            }
            let sum = u.checked_add(v)?;
            if let Some(found) = lookup(&sum) {
                let expected = nu.checked_add(nv)?;
                additivity.record(expected == *found, || LawWitness {
                    inputs: alloc::vec![u.clone(), v.clone()],
                    expected,
                    found: found.clone(),
                    anti_multiplicative: false,
                });
            }
        }
    }

    for (k, nk) in &entries {
        let Some(s) = proper_scalar(k) else { continue };
        for (u, nu) in &entries {
            if u.is_zero() || u.is_scalar() && k == u {
                continue;
            }
            let product = u.scalar_mul(&s)?;
            if let Some(found) = lookup(&product) {
                let expected = nk.checked_mul(nu)?;
                scalar.record(expected == *found, || LawWitness {
                    inputs: alloc::vec![k.clone(), u.clone()],
                    expected,
                    found: found.clone(),
                    anti_multiplicative: false,
                });
            }
        }
    }

    for (u, nu) in &entries {
        if u.is_scalar() {
            continue;
        }
        for (v, nv) in &entries {
            if v.is_scalar() {
                continue;
            }
            let product = match u.checked_mul(v) {
                Ok(p) => p,
                Err(crate::Error::DegreeCapExceeded { .. }) => continue,
                Err(e) => return Err(e),
            };
            if let Some(found) = lookup(&product) {
                let expected = nu.checked_mul(nv)?;
                let ok = expected == *found;
                let anti = !ok && nv.checked_mul(nu)? == *found;
                multiplicativity.record(ok, || LawWitness {
                    inputs: alloc::vec![u.clone(), v.clone()],
                    expected,
                    found: found.clone(),
                    anti_multiplicative: anti,
                });
            }
        }
    }

    for (k, nk) in &entries {
        let Some((_, index)) = scaled_generator(k) else { continue };
        let Some(base) = lookup(&ctx.var(index)) else { continue };
        let ok = scalar_multiple(nk, base)?.is_some();
        proportionality.record(ok, || LawWitness {
            inputs: alloc::vec![k.clone(), ctx.var(index)],
            expected: base.clone(),
            found: nk.clone(),
            anti_multiplicative: false,
        });
    }

    Ok(LawReport {
        outcomes: alloc::vec![
            LawOutcome { law: Law::Additivity, status: additivity.finish() },
            LawOutcome { law: Law::Scalar, status: scalar.finish() },
            LawOutcome { law: Law::Multiplicativity, status: multiplicativity.finish() },
            LawOutcome { law: Law::Proportionality, status: proportionality.finish() },
        ],
    })
}

/// `c` with `f = c g`, if any.
fn scalar_multiple(f: &AlgebraElement, g: &AlgebraElement) -> Result<Option<Scalar>> {
    let Some((m, lead)) = g.terms().next() else {
        return Ok(f.is_zero().then(|| Scalar::zero(g.context().field)));
    };
    let c = f.coefficient(m).checked_div(lead)?;
    Ok((g.scalar_mul(&c)? == *f).then_some(c))
}

fn idempotents(field: Field) -> Result<Vec<Scalar>> {
    // a = p + q sqrt(d): p^2 + d q^2 = p and 2pq = q.
    // q = 0 gives p in {0, 1}; q != 0 forces p = 1/2 and q^2 = 1/(4d).
    let mut out = alloc::vec![Scalar::one(field), Scalar::zero(field)];
    if let Some(d) = field.radicand() {
        let q2 = BigRational::one() / BigRational::from_integer((4 * d).into());
        if is_rational_square(&q2) {
            let q = sqrt_rational(&q2);
            let half = BigRational::new(1.into(), 2.into());
            out.push(Scalar::new(field, half.clone(), q.clone())?);
            out.push(Scalar::new(field, half, -q)?);
        }
    }
    Ok(out)
}

fn sqrt_rational(q: &BigRational) -> BigRational {
    BigRational::new(q.numer().sqrt(), q.denom().sqrt())
}

/// All `(a, b)` in the field with `a = a^2, b = b^2, ab = 0, a + b = 1`.
pub fn solve_product_coefficients(field: Field) -> Result<Vec<(Scalar, Scalar)>> {
    let mut out = Vec::new();
    for a in idempotents(field)? {
        let b = Scalar::one(field).checked_sub(&a)?;
        if b.checked_mul(&b)? == b && a.checked_mul(&b)?.is_zero() {
            out.push((a, b));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autos::{ElementaryGenerator, TameAutomorphism};
    use crate::endaut::{standard_probe_keys, CanonicalQuasiInner};
    use crate::freealg::{AlgebraKind, Context};
    use crate::scalars::FieldAutomorphism;
    use alloc::vec;

    fn table_of(ctx: Context, f: impl Fn(&AlgebraElement) -> Result<AlgebraElement>) -> OracleTable {
        OracleTable::from_fn(ctx, standard_probe_keys(&ctx), f).unwrap()
    }

    #[test]
    fn canonical_forms_pass() {
        let ctx = Context::new(AlgebraKind::Associative, 2, Field::QuadraticSqrt(2));
        let phi = TameAutomorphism::from_generator(
            ctx,
            ElementaryGenerator::elementary(&ctx, 1, ctx.var(0).pow(2).unwrap()).unwrap(),
        )
        .unwrap();
        let l = LinearBijection::new(Scalar::from_integer(ctx.field, -3), Scalar::from_integer(ctx.field, 7)).unwrap();
        let mu = CanonicalQuasiInner::new(l, FieldAutomorphism::Conjugation, phi, false).unwrap();
        let report = law_checks(&table_of(ctx, |k| mu.apply(k))).unwrap();
        assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn mirror_is_anti_multiplicative() {
        let ctx = Context::new(AlgebraKind::Associative, 2, Field::QuadraticSqrt(2));
        let report = law_checks(&table_of(ctx, |k| k.mirror())).unwrap();
        assert!(report.status(Law::Additivity).passed());
        assert!(report.status(Law::Scalar).passed());
        assert!(report.status(Law::Proportionality).passed());
        let w = report.anti_multiplicative_witness().unwrap();
        assert_eq!(w.inputs, vec![ctx.var(0), ctx.var(1)]);
    }

    #[test]
    fn planted_additivity_defect() {
        let ctx = Context::new(AlgebraKind::Commutative, 2, Field::Rational);
        let mut table = table_of(ctx, |k| Ok(k.clone()));
        let sum = ctx.var(0).checked_add(&ctx.var(1)).unwrap();
        table.set(&sum, sum.checked_add(&ctx.one()).unwrap()).unwrap();
        let report = law_checks(&table).unwrap();
        let LawStatus::Fail { witnesses } = report.status(Law::Additivity) else { panic!("{report:?}") };
        assert_eq!(witnesses[0].inputs, vec![ctx.var(0), ctx.var(1)]);
        assert_eq!(witnesses[0].expected, sum);
        assert!(report.status(Law::Multiplicativity).passed());
    }

    #[test]
    fn missing_probes_are_not_checkable() {
        let ctx = Context::new(AlgebraKind::Commutative, 2, Field::Rational);
        let table = OracleTable::from_fn(ctx, [ctx.var(0), ctx.var(1)], |k| Ok(k.clone())).unwrap();
        let report = law_checks(&table).unwrap();
        assert!(report.outcomes.iter().all(|o| o.status == LawStatus::NotCheckable));

        let table = OracleTable::from_fn(ctx, [ctx.zero(), ctx.one(), ctx.var(0)], |k| Ok(k.clone())).unwrap();
        let report = law_checks(&table).unwrap();
        assert_eq!(report.status(Law::Multiplicativity), &LawStatus::NotCheckable);
    }

    #[test]
    fn product_coefficients() {
        for field in [Field::Rational, Field::QuadraticSqrt(2), Field::QuadraticSqrt(-1), Field::QuadraticSqrt(5)] {
            let sols = solve_product_coefficients(field).unwrap();
            let expected = vec![(Scalar::one(field), Scalar::zero(field)), (Scalar::zero(field), Scalar::one(field))];
            assert_eq!(sols, expected);
            for (a, b) in &sols {
                assert_eq!(&a.checked_mul(a).unwrap(), a);
                assert_eq!(&b.checked_mul(b).unwrap(), b);
                assert!(a.checked_mul(b).unwrap().is_zero());
                assert!(a.checked_add(b).unwrap().is_one());
            }
        }
    }

    #[test]
    fn idempotent_brute_force() {
        // every a = p + q sqrt 2 with small p, q in steps of 1/4
        let field = Field::QuadraticSqrt(2);
        let mut found = Vec::new();
        for p in -8..=8 {
            for q in -8..=8 {
                let a = Scalar::new(field, BigRational::new(p.into(), 4.into()), BigRational::new(q.into(), 4.into()))
                    .unwrap();
                if a.checked_mul(&a).unwrap() == a {
                    found.push(a);
                }
            }
        }
        let mut expected = idempotents(field).unwrap();
        expected.reverse();
        assert_eq!(found, expected);
    }
}
