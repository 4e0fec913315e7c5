//! Recovering the canonical form of a bijection from a table of its values.
//!
//! The pipeline mirrors the structure argument for automorphisms of the
//! endomorphism semigroup: normalize `μ(0) = 0, μ(1) = 1` with a linear map,
//! read the automorphism off the generator images, read the field
//! automorphism off the scalar probes, and decide between multiplicative and
//! anti-multiplicative behaviour from a product probe.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;

use super::{CanonicalQuasiInner, LinearBijection};
use crate::autos::{ElementaryGenerator, TameAutomorphism};
use crate::error::{DecomposeError, Error, Result};
use crate::freealg::{AlgebraElement, Context, Monomial};
use crate::scalars::{FieldAutomorphism, Scalar};

/// Values of a bijection on finitely many probe inputs, in insertion order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleTable {
    ctx: Context,
    entries: Vec<(AlgebraElement, AlgebraElement)>,
    index: BTreeMap<AlgebraElement, usize>,
}

impl OracleTable {
    pub fn new(ctx: Context) -> OracleTable {
        OracleTable { ctx, entries: Vec::new(), index: BTreeMap::new() }
    }

    /// Tabulates `f` on `keys`.
    pub fn from_fn(
        ctx: Context,
        keys: impl IntoIterator<Item = AlgebraElement>,
        mut f: impl FnMut(&AlgebraElement) -> Result<AlgebraElement>,
    ) -> Result<OracleTable> {
        let mut table = OracleTable::new(ctx);
        for k in keys {
            let v = f(&k)?;
            table.insert(k, v)?;
        }
        Ok(table)
    }

    pub fn insert(&mut self, key: AlgebraElement, value: AlgebraElement) -> Result<()> {
        self.ctx.check(key.context())?;
        self.ctx.check(value.context())?;
        if self.index.contains_key(&key) {
            return Err(Error::DuplicateKey(key.to_string()));
        }
        self.index.insert(key.clone(), self.entries.len());
        self.entries.push((key, value));
        Ok(())
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn get(&self, key: &AlgebraElement) -> Option<&AlgebraElement> {
        self.index.get(key).map(|&i| &self.entries[i].1)
    }

    pub fn entries(&self) -> &[(AlgebraElement, AlgebraElement)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Replaces the value of an existing key.
    pub fn set(&mut self, key: &AlgebraElement, value: AlgebraElement) -> Result<()> {
        self.ctx.check(value.context())?;
        let i = *self.index.get(key).ok_or_else(|| DecomposeError::MissingProbe(key.to_string()))?;
        self.entries[i].1 = value;
        Ok(())
    }

    fn require(&self, key: &AlgebraElement) -> Result<&AlgebraElement> {
        self.get(key).ok_or_else(|| DecomposeError::MissingProbe(key.to_string()).into())
    }
}

/// The default probe inputs: `0, 1, sqrt d, 2, x_i, x_i x_j (i != j),
/// x_1 + x_2, 2 x_i, sqrt(d) x_i`.
pub fn standard_probe_keys(ctx: &Context) -> Vec<AlgebraElement> {
    let mut keys = alloc::vec![ctx.zero(), ctx.one()];
    let root = Scalar::sqrt_radicand(ctx.field).ok();
    if let Some(r) = &root {
        keys.push(ctx.scalar(r.clone()));
    }
    keys.push(ctx.integer(2));
    keys.extend(ctx.vars());
    for i in 0..ctx.vars {
        for j in 0..ctx.vars {
            if i != j && (ctx.is_associative() || i < j) {
                keys.push(ctx.var(i).checked_mul(&ctx.var(j)).expect("degree 2"));
            }
        }
    }
    if ctx.vars >= 2 {
        keys.push(ctx.var(0).checked_add(&ctx.var(1)).expect("same context"));
    }
    for i in 0..ctx.vars {
        keys.push(ctx.var(i).scalar_mul(&Scalar::from_integer(ctx.field, 2)).expect("same field"));
        if let Some(r) = &root {
            keys.push(ctx.var(i).scalar_mul(r).expect("same field"));
        }
    }
    keys
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableViolation {
    pub key: AlgebraElement,
    pub expected: AlgebraElement,
    pub found: AlgebraElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    /// `u -> (u - μ(0)) / (μ(1) - μ(0))`, the map normalizing `μ(0) = 0`
    /// and `μ(1) = 1`.
    pub normalizer: LinearBijection,
    /// Index of the supplied witness that matched, `None` when the
    /// automorphism was recognized directly (identity or affine images).
    pub witness: Option<usize>,
    /// The product probe `(i, j)` that decided the mirror flag.
    pub order_probe: Option<(usize, usize)>,
    /// Table entries that disagree with the recovered canonical form.
    pub violations: Vec<TableViolation>,
}

fn affine_from_images(ctx: &Context, images: &[AlgebraElement]) -> Option<TameAutomorphism> {
    if images.iter().any(|img| img.degree().is_some_and(|d| d > 1)) {
        return None;
    }
    let matrix =
        images.iter().map(|img| (0..ctx.vars).map(|j| img.coefficient(&Monomial::letter(j))).collect()).collect();
    let shift = images.iter().map(AlgebraElement::constant_term).collect();
    let g = ElementaryGenerator::affine(ctx, matrix, shift).ok()?;
    TameAutomorphism::from_generator(*ctx, g).ok()
}

/// Recovers `l ∘ ᾱ ∘ φ ∘ β^e` from a table.
///
/// `witnesses` are candidate automorphisms for `φ`; the normalized
/// generator images must equal those of `φ^α` for one of them, unless they
/// are the generators themselves or affine. The report lists every table
/// entry that the recovered form fails to reproduce; such entries are
/// surfaced, not repaired.
pub fn decompose_blackbox(
    table: &OracleTable,
    witnesses: &[TameAutomorphism],
) -> Result<(CanonicalQuasiInner, DecompositionReport)> {
    let ctx = *table.context();
    let field = ctx.field;

    // linear normalization
    let scalar_of = |key: &AlgebraElement| -> Result<Scalar> {
        table.require(key)?.as_scalar().ok_or_else(|| DecomposeError::InconsistentScalar(key.to_string()).into())
    };
    let a = scalar_of(&ctx.zero())?;
    let b = scalar_of(&ctx.one())?;
    if a == b {
        return Err(DecomposeError::ZeroEqualsOne.into());
    }
    let linear = LinearBijection::new(&b - &a, a)?;
    let normalizer = linear.inverse();
    let normalized = |key: &AlgebraElement| -> Result<AlgebraElement> { normalizer.apply(table.require(key)?) };

    // field automorphism from scalar probes
    let mut candidates: Vec<FieldAutomorphism> = field.automorphisms().to_vec();
    let mut saw_irrational = false;
    for (key, _) in table.entries() {
        let Some(k) = key.as_scalar() else { continue };
        saw_irrational |= !k.is_rational();
        let image = normalized(key)?.as_scalar().ok_or_else(|| DecomposeError::InconsistentScalar(key.to_string()))?;
        candidates.retain(|alpha| alpha.apply(&k).is_ok_and(|v| v == image));
        if candidates.is_empty() {
            return Err(DecomposeError::InconsistentScalar(key.to_string()).into());
        }
    }
    if field.radicand().is_some() && !saw_irrational {
        let root = Scalar::sqrt_radicand(field)?;
        return Err(DecomposeError::MissingProbe(root.to_string()).into());
    }
    let alpha = candidates[0];

    // the automorphism η = ᾱ φ ᾱ⁻¹ read off the generators
    let eta: Vec<AlgebraElement> = (0..ctx.vars).map(|i| normalized(&ctx.var(i))).collect::<Result<_>>()?;
    let mut witness = None;
    let automorphism = if eta == ctx.vars() {
        TameAutomorphism::identity(ctx)
    } else if let Some(k) = witnesses.iter().position(|w| {
        w.twist_by_field_automorphism(alpha).and_then(|t| t.as_endomorphism()).is_ok_and(|e| e.images() == &eta[..])
    }) {
        witness = Some(k);
        witnesses[k].clone()
    } else if let Some(affine) = affine_from_images(&ctx, &eta) {
        affine.twist_by_field_automorphism(alpha.inverse())?
    } else {
        return Err(DecomposeError::NoMatchingWitness.into());
    };

    // multiplicative or anti-multiplicative
    let mut mirror = false;
    let mut order_probe = None;
    if ctx.is_associative() && ctx.vars >= 2 {
        let mut decided: Option<bool> = None;
        let mut saw_product = false;
        for i in 0..ctx.vars {
            for j in 0..ctx.vars {
                if i == j {
                    continue;
                }
                let key = ctx.var(i).checked_mul(&ctx.var(j))?;
                if table.get(&key).is_none() {
                    continue;
                }
                saw_product = true;
                let value = normalized(&key)?;
                let direct = eta[i].checked_mul(&eta[j])?;
                let reversed = eta[j].checked_mul(&eta[i])?;
                let vote = match (value == direct, value == reversed) {
                    (true, true) => continue,
                    (true, false) => false,
                    (false, true) => true,
                    (false, false) => return Err(DecomposeError::ProductMismatch(key.to_string()).into()),
                };
                match decided {
                    None => {
                        decided = Some(vote);
                        order_probe = Some((i, j));
                    }
                    Some(previous) if previous != vote => {
                        return Err(DecomposeError::ProductMismatch(key.to_string()).into());
                    }
                    Some(_) => {}
                }
            }
        }
        if !saw_product {
            let probe = ctx.var(0).checked_mul(&ctx.var(1))?;
            return Err(DecomposeError::MissingProbe(probe.to_string()).into());
        }
        mirror = decided.ok_or(DecomposeError::AmbiguousOrder)?;
    }

    let canonical = CanonicalQuasiInner::new(linear, alpha, automorphism, mirror)?;
    let mut violations = Vec::new();
    for (key, found) in table.entries() {
        let expected = canonical.apply(key)?;
        if expected != *found {
            violations.push(TableViolation { key: key.clone(), expected, found: found.clone() });
        }
    }
    Ok((canonical, DecompositionReport { normalizer, witness, order_probe, violations }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::AlgebraKind;
    use crate::scalars::Field;
    use alloc::vec;

    fn table_of(mu: &CanonicalQuasiInner) -> OracleTable {
        let ctx = *mu.context();
        OracleTable::from_fn(ctx, standard_probe_keys(&ctx), |k| mu.apply(k)).unwrap()
    }

    #[test]
    fn recovers_linear_conjugation_and_elementary() {
        let ctx = Context::new(AlgebraKind::Commutative, 2, Field::QuadraticSqrt(2));
        let phi = TameAutomorphism::from_generator(
            ctx,
            ElementaryGenerator::elementary(&ctx, 0, ctx.var(1).pow(2).unwrap()).unwrap(),
        )
        .unwrap();
        let l = LinearBijection::new(Scalar::from_integer(ctx.field, 2), Scalar::from_integer(ctx.field, 1)).unwrap();
        let mu = CanonicalQuasiInner::new(l.clone(), FieldAutomorphism::Conjugation, phi.clone(), false).unwrap();
        let keys = vec![
            ctx.zero(),
            ctx.one(),
            ctx.var(0),
            ctx.var(1),
            ctx.scalar(Scalar::sqrt_radicand(ctx.field).unwrap()),
            ctx.var(0).checked_mul(&ctx.var(1)).unwrap(),
        ];
        let table = OracleTable::from_fn(ctx, keys, |k| mu.apply(k)).unwrap();
        let (canon, report) = decompose_blackbox(&table, core::slice::from_ref(&phi)).unwrap();
        assert_eq!(canon, mu);
        assert_eq!(report.witness, Some(0));
        assert!(report.violations.is_empty());
        // normalizer sends μ(0) = 1 to 0 and μ(1) = 3 to 1
        assert_eq!(report.normalizer, l.inverse());
        assert_eq!(report.normalizer.scale(), &Scalar::from_fraction(ctx.field, 1, 2).unwrap());
    }

    #[test]
    fn identity_table() {
        let ctx = Context::new(AlgebraKind::Associative, 2, Field::Rational);
        let id = CanonicalQuasiInner::identity(ctx);
        let (canon, report) = decompose_blackbox(&table_of(&id), &[]).unwrap();
        assert_eq!(canon, id);
        assert!(report.violations.is_empty());
    }

    #[test]
    fn mirror_table() {
        let ctx = Context::new(AlgebraKind::Associative, 2, Field::Rational);
        let mut table = OracleTable::new(ctx);
        for k in [ctx.zero(), ctx.one(), ctx.var(0), ctx.var(1)] {
            table.insert(k.clone(), k).unwrap();
        }
        table
            .insert(ctx.var(0).checked_mul(&ctx.var(1)).unwrap(), ctx.var(1).checked_mul(&ctx.var(0)).unwrap())
            .unwrap();
        let (canon, report) = decompose_blackbox(&table, &[]).unwrap();
        assert!(canon.mirror());
        assert_eq!(canon.alpha(), FieldAutomorphism::Identity);
        assert!(canon.automorphism().is_empty());
        assert!(canon.linear().is_identity());
        assert_eq!(report.order_probe, Some((0, 1)));
    }

    #[test]
    fn affine_images_are_recognized() {
        let ctx = Context::new(AlgebraKind::Commutative, 2, Field::QuadraticSqrt(3));
        let root = Scalar::sqrt_radicand(ctx.field).unwrap();
        let g = ElementaryGenerator::affine(
            &ctx,
            vec![vec![Scalar::zero(ctx.field), root.clone()], vec![Scalar::one(ctx.field), Scalar::one(ctx.field)]],
            vec![Scalar::one(ctx.field), Scalar::zero(ctx.field)],
        )
        .unwrap();
        let phi = TameAutomorphism::from_generator(ctx, g).unwrap();
        let mu = CanonicalQuasiInner::new(
            LinearBijection::identity(&ctx),
            FieldAutomorphism::Conjugation,
            phi.clone(),
            false,
        )
        .unwrap();
        let (canon, report) = decompose_blackbox(&table_of(&mu), &[]).unwrap();
        assert_eq!(report.witness, None);
        assert_eq!(canon, mu);
    }

    #[test]
    fn rejections() {
        let ctx = Context::new(AlgebraKind::Associative, 2, Field::QuadraticSqrt(2));
        let id = CanonicalQuasiInner::identity(ctx);
        let base = table_of(&id);

        let mut t = base.clone();
        t.set(&ctx.one(), ctx.zero()).unwrap();
        assert_eq!(decompose_blackbox(&t, &[]), Err(DecomposeError::ZeroEqualsOne.into()));

        let mut t = base.clone();
        let root = ctx.scalar(Scalar::sqrt_radicand(ctx.field).unwrap());
        t.set(&root, ctx.integer(5)).unwrap();
        assert!(matches!(
            decompose_blackbox(&t, &[]),
            Err(Error::Decomposition(DecomposeError::InconsistentScalar(_)))
        ));

        let mut t = base.clone();
        t.set(&ctx.var(0), ctx.var(0).checked_add(&ctx.var(1).pow(3).unwrap()).unwrap()).unwrap();
        assert_eq!(decompose_blackbox(&t, &[]), Err(DecomposeError::NoMatchingWitness.into()));

        let mut t = base.clone();
        let x1x2 = ctx.var(0).checked_mul(&ctx.var(1)).unwrap();
        t.set(&x1x2, ctx.var(0)).unwrap();
        assert!(matches!(decompose_blackbox(&t, &[]), Err(Error::Decomposition(DecomposeError::ProductMismatch(_)))));

        let mut t = OracleTable::new(ctx);
        for k in [ctx.zero(), ctx.one(), ctx.var(0), ctx.var(1), x1x2.clone()] {
            t.insert(k.clone(), k).unwrap();
        }
        assert_eq!(decompose_blackbox(&t, &[]), Err(DecomposeError::MissingProbe("s".into()).into()));

        assert!(matches!(base.clone().insert(ctx.zero(), ctx.zero()), Err(Error::DuplicateKey(_))));
    }

    #[test]
    fn violations_are_listed() {
        let ctx = Context::new(AlgebraKind::Commutative, 2, Field::Rational);
        let mut t = table_of(&CanonicalQuasiInner::identity(ctx));
        let sum = ctx.var(0).checked_add(&ctx.var(1)).unwrap();
        let bumped = sum.checked_add(&ctx.one()).unwrap();
        t.set(&sum, bumped.clone()).unwrap();
        let (_, report) = decompose_blackbox(&t, &[]).unwrap();
        assert_eq!(report.violations, vec![TableViolation { key: sum.clone(), expected: sum, found: bumped }]);
    }
}
