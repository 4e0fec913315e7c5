//! Automorphisms of the endomorphism semigroup, written as conjugation
//! `s -> μ s μ⁻¹` by a bijection `μ` of the algebra.
//!
//! Bijections are finite words in four kinds of primitives (linear maps
//! `u -> cu + d`, coefficient maps `ᾱ`, tame algebra automorphisms and the
//! mirror `β`). [`normalize`] rewrites any word into the canonical shape
//! `l ∘ ᾱ ∘ φ ∘ β^e`, and [`decompose_blackbox`] recovers that shape from a
//! table of values.

mod centrality;
mod decompose;
mod laws;
mod normalize;

use alloc::vec::Vec;
use core::fmt;

use crate::autos::{ElementaryGenerator, TameAutomorphism};
use crate::endo::Endomorphism;
use crate::error::{Error, Result};
use crate::freealg::{AlgebraElement, Context};
use crate::scalars::{FieldAutomorphism, Scalar};

pub use centrality::{centrality_probe, CentralityCandidate, CentralityVerdict, CommutationWitness};
pub use decompose::{decompose_blackbox, standard_probe_keys, DecompositionReport, OracleTable, TableViolation};
pub use laws::{law_checks, solve_product_coefficients, Law, LawOutcome, LawReport, LawStatus, LawWitness};
pub use normalize::normalize;

/// `u -> scale * u + offset` with `scale != 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearBijection {
    scale: Scalar,
    offset: Scalar,
}

impl LinearBijection {
    pub fn new(scale: Scalar, offset: Scalar) -> Result<LinearBijection> {
        if scale.is_zero() {
            return Err(Error::DegenerateLinear);
        }
        if scale.field() != offset.field() {
            return Err(Error::FieldMismatch { left: scale.field(), right: offset.field() });
        }
        Ok(LinearBijection { scale, offset })
    }

    pub fn identity(ctx: &Context) -> LinearBijection {
        LinearBijection { scale: Scalar::one(ctx.field), offset: Scalar::zero(ctx.field) }
    }

    pub fn scale(&self) -> &Scalar {
        &self.scale
    }

    pub fn offset(&self) -> &Scalar {
        &self.offset
    }

    pub fn is_identity(&self) -> bool {
        self.scale.is_one() && self.offset.is_zero()
    }

    pub fn apply(&self, f: &AlgebraElement) -> Result<AlgebraElement> {
        let ctx = f.context();
        f.scalar_mul(&self.scale)?.checked_add(&AlgebraElement::constant(*ctx, self.offset.clone())?)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearBijection) -> LinearBijection {
        LinearBijection { scale: &self.scale * &other.scale, offset: &(&self.scale * &other.offset) + &self.offset }
    }

    pub fn inverse(&self) -> LinearBijection {
        let inv = self.scale.inv().expect("scale is nonzero");
        LinearBijection { offset: -(&inv * &self.offset), scale: inv }
    }

    /// `α ∘ l ∘ α⁻¹`, i.e. `u -> α(c) u + α(d)`.
    pub fn twist(&self, alpha: FieldAutomorphism) -> Result<LinearBijection> {
        Ok(LinearBijection { scale: alpha.apply(&self.scale)?, offset: alpha.apply(&self.offset)? })
    }
}

impl fmt::Display for LinearBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "linear({},{})", self.scale, self.offset)
    }
}

#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimitiveBijection {
    Linear(LinearBijection),
    /// `Σ a_k u_k -> Σ α(a_k) u_k`.
    FieldSemilinear(FieldAutomorphism),
    AlgebraAuto(TameAutomorphism),
    /// Word reversal; associative kind only.
    Mirror,
}

impl PrimitiveBijection {
    fn check(&self, ctx: &Context) -> Result<()> {
        match self {
            PrimitiveBijection::Linear(l) => ctx.check_scalar(&l.scale),
            PrimitiveBijection::FieldSemilinear(alpha) => {
                if alpha.is_valid_for(ctx.field) {
                    Ok(())
                } else {
                    Err(Error::ConjugationOverRationals(ctx.field))
                }
            }
            PrimitiveBijection::AlgebraAuto(phi) => ctx.check(phi.context()),
            PrimitiveBijection::Mirror => {
                if ctx.is_associative() {
                    Ok(())
                } else {
                    Err(Error::MirrorInCommutative)
                }
            }
        }
    }

    pub fn apply(&self, f: &AlgebraElement) -> Result<AlgebraElement> {
        match self {
            PrimitiveBijection::Linear(l) => l.apply(f),
            PrimitiveBijection::FieldSemilinear(alpha) => f.map_coefficients(*alpha),
            PrimitiveBijection::AlgebraAuto(phi) => phi.apply(f),
            PrimitiveBijection::Mirror => f.mirror().map_err(|_| Error::MirrorInCommutative),
        }
    }

    pub fn inverse(&self) -> PrimitiveBijection {
        match self {
            PrimitiveBijection::Linear(l) => PrimitiveBijection::Linear(l.inverse()),
            PrimitiveBijection::FieldSemilinear(alpha) => PrimitiveBijection::FieldSemilinear(alpha.inverse()),
            PrimitiveBijection::AlgebraAuto(phi) => PrimitiveBijection::AlgebraAuto(phi.invert()),
            PrimitiveBijection::Mirror => PrimitiveBijection::Mirror,
        }
    }
}

impl fmt::Display for PrimitiveBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimitiveBijection::Linear(l) => write!(f, "{l}"),
            PrimitiveBijection::FieldSemilinear(alpha) => write!(f, "alpha({alpha})"),
            PrimitiveBijection::AlgebraAuto(phi) => write!(f, "auto[{phi}]"),
            PrimitiveBijection::Mirror => f.write_str("mirror"),
        }
    }
}

/// `p1 ∘ p2 ∘ ... ∘ pk`; the rightmost primitive acts first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BijectionWord {
    ctx: Context,
    primitives: Vec<PrimitiveBijection>,
}

impl BijectionWord {
    pub fn new(ctx: Context, primitives: Vec<PrimitiveBijection>) -> Result<BijectionWord> {
        for p in &primitives {
            p.check(&ctx)?;
        }
        Ok(BijectionWord { ctx, primitives })
    }

    pub fn identity(ctx: Context) -> BijectionWord {
        BijectionWord { ctx, primitives: Vec::new() }
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn primitives(&self) -> &[PrimitiveBijection] {
        &self.primitives
    }

    pub fn inverse(&self) -> BijectionWord {
        BijectionWord {
            ctx: self.ctx,
            primitives: self.primitives.iter().rev().map(PrimitiveBijection::inverse).collect(),
        }
    }
}

impl fmt::Display for BijectionWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.primitives.is_empty() {
            return f.write_str("id");
        }
        for (i, p) in self.primitives.iter().enumerate() {
            if i > 0 {
                f.write_str(" . ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

pub fn apply_bijection(word: &BijectionWord, f: &AlgebraElement) -> Result<AlgebraElement> {
    word.ctx.check(f.context())?;
    let mut value = f.clone();
    for p in word.primitives.iter().rev() {
        value = p.apply(&value)?;
    }
    Ok(value)
}

/// The canonical bijection `l ∘ ᾱ ∘ φ ∘ β^mirror`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalQuasiInner {
    ctx: Context,
    linear: LinearBijection,
    alpha: FieldAutomorphism,
    automorphism: TameAutomorphism,
    mirror: bool,
}

impl CanonicalQuasiInner {
    pub fn new(
        linear: LinearBijection,
        alpha: FieldAutomorphism,
        automorphism: TameAutomorphism,
        mirror: bool,
    ) -> Result<CanonicalQuasiInner> {
        let ctx = *automorphism.context();
        PrimitiveBijection::Linear(linear.clone()).check(&ctx)?;
        PrimitiveBijection::FieldSemilinear(alpha).check(&ctx)?;
        if mirror {
            PrimitiveBijection::Mirror.check(&ctx)?;
        }
        Ok(CanonicalQuasiInner { ctx, linear, alpha, automorphism, mirror })
    }

    pub fn identity(ctx: Context) -> CanonicalQuasiInner {
        CanonicalQuasiInner {
            ctx,
            linear: LinearBijection::identity(&ctx),
            alpha: FieldAutomorphism::Identity,
            automorphism: TameAutomorphism::identity(ctx),
            mirror: false,
        }
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn linear(&self) -> &LinearBijection {
        &self.linear
    }

    pub fn alpha(&self) -> FieldAutomorphism {
        self.alpha
    }

    pub fn automorphism(&self) -> &TameAutomorphism {
        &self.automorphism
    }

    pub fn mirror(&self) -> bool {
        self.mirror
    }

    /// The same bijection with the linear part replaced.
    pub fn with_linear(&self, linear: LinearBijection) -> Result<CanonicalQuasiInner> {
        CanonicalQuasiInner::new(linear, self.alpha, self.automorphism.clone(), self.mirror)
    }

    pub fn to_word(&self) -> BijectionWord {
        let mut primitives = alloc::vec![
            PrimitiveBijection::Linear(self.linear.clone()),
            PrimitiveBijection::FieldSemilinear(self.alpha),
            PrimitiveBijection::AlgebraAuto(self.automorphism.clone()),
        ];
        if self.mirror {
            primitives.push(PrimitiveBijection::Mirror);
        }
        BijectionWord { ctx: self.ctx, primitives }
    }

    pub fn apply(&self, f: &AlgebraElement) -> Result<AlgebraElement> {
        self.ctx.check(f.context())?;
        let f = if self.mirror { f.mirror()? } else { f.clone() };
        let f = self.automorphism.apply(&f)?;
        let f = f.map_coefficients(self.alpha)?;
        self.linear.apply(&f)
    }

    /// The canonical form of `μ⁻¹`.
    pub fn inverse(&self) -> CanonicalQuasiInner {
        normalize(&self.to_word().inverse())
    }
}

impl fmt::Display for CanonicalQuasiInner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} . alpha({}) . auto[{}] . mirror^{}",
            self.linear,
            self.alpha,
            self.automorphism,
            u8::from(self.mirror)
        )
    }
}

/// `s^τ = μ s μ⁻¹`.
///
/// The linear part of `μ` commutes with every endomorphism and drops out;
/// the remaining factors are peeled off from the inside:
/// `β s β` has images `β(s(x_i))`, `φ s φ⁻¹` is a composite of
/// endomorphisms and `ᾱ s ᾱ⁻¹` has images `ᾱ(s(x_i))`.
pub fn conjugate(mu: &CanonicalQuasiInner, s: &Endomorphism) -> Result<Endomorphism> {
    mu.ctx.check(s.context())?;
    let mut t = s.clone();
    if mu.mirror {
        t = t.map_images(AlgebraElement::mirror)?;
    }
    if !mu.automorphism.is_empty() {
        let phi = mu.automorphism.as_endomorphism()?;
        let phi_inv = mu.automorphism.invert().as_endomorphism()?;
        t = phi.compose(&t.compose(&phi_inv)?)?;
    }
    if mu.alpha != FieldAutomorphism::Identity {
        t = t.map_images(|g| g.map_coefficients(mu.alpha))?;
    }
    Ok(t)
}

/// Outcome of [`base_image_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseImageCertificate {
    pub holds: bool,
    /// An automorphism whose generator images are `μ(ψ(x_i))`.
    pub witness: TameAutomorphism,
}

/// Checks that `μ` maps the base `ψ(x_1), ..., ψ(x_n)` to a base by
/// exhibiting the composite automorphism `(φ ∘ ψ^β)^α ∘ (x -> c x + d)` and
/// verifying it against direct evaluation and its own inverse.
pub fn base_image_check(mu: &CanonicalQuasiInner, base: &TameAutomorphism) -> Result<BaseImageCertificate> {
    mu.ctx.check(base.context())?;
    let ctx = mu.ctx;
    let inner = if mu.mirror { base.mirror_twist()? } else { base.clone() };
    let witness = mu.automorphism.then(&inner)?.twist_by_field_automorphism(mu.alpha)?.then(
        &TameAutomorphism::from_generator(
            ctx,
            ElementaryGenerator::homothety(&ctx, mu.linear.scale(), mu.linear.offset())?,
        )?,
    )?;
    let images = witness.as_endomorphism()?;
    let base_images = base.as_endomorphism()?;
    let mut holds = true;
    for (i, b) in base_images.images().iter().enumerate() {
        if mu.apply(b)? != *images.image(i) {
            holds = false;
        }
    }
    holds &= images.compose(&witness.invert().as_endomorphism()?)?.is_identity();
    Ok(BaseImageCertificate { holds, witness })
}
