//! The correspondence between ideals and sets of endomorphisms, restricted
//! to what can be decided exactly: `T' = {η : T ⊂ Ker η}` membership,
//! kernels of finite samples, and membership in principal ideals generated
//! by a basic element.
//!
//! In the associative kind ideals are two-sided.

use alloc::vec::Vec;

use crate::autos::{basic_element, BasicElementWitness};
use crate::endo::Endomorphism;
use crate::error::Result;
use crate::freealg::{AlgebraElement, Context};

/// The ideal `<u>` generated by a basic element `u = φ(x_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrincipalBasicIdeal {
    witness: BasicElementWitness,
    generator: AlgebraElement,
}

impl PrincipalBasicIdeal {
    pub fn new(witness: BasicElementWitness) -> Result<PrincipalBasicIdeal> {
        let generator = basic_element(&witness)?;
        Ok(PrincipalBasicIdeal { witness, generator })
    }

    pub fn witness(&self) -> &BasicElementWitness {
        &self.witness
    }

    pub fn generator(&self) -> &AlgebraElement {
        &self.generator
    }

    pub fn context(&self) -> &Context {
        self.generator.context()
    }

    /// `φ⁻¹(f)` with `x_i` set to zero; `f` is in the ideal iff this is zero.
    pub fn residue(&self, f: &AlgebraElement) -> Result<AlgebraElement> {
        self.context().check(f.context())?;
        let pulled = self.witness.automorphism().invert().apply(f)?;
        let ctx = *self.context();
        let mut images = ctx.vars();
        images[self.witness.index()] = ctx.zero();
        pulled.substitute(&images)
    }

    /// `ρ ∘ (x_i -> 0) ∘ φ⁻¹`, an endomorphism killing `u`. Every member of
    /// `<u>'` has this form.
    pub fn annihilator_member(&self, rho: &Endomorphism) -> Result<Endomorphism> {
        let ctx = *self.context();
        ctx.check(rho.context())?;
        let mut images = ctx.vars();
        images[self.witness.index()] = ctx.zero();
        let kill = Endomorphism::new(ctx, images)?;
        let pull = self.witness.automorphism().invert().as_endomorphism()?;
        rho.compose(&kill.compose(&pull)?)
    }
}

/// A finite sample of an algebraic set of endomorphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndoSample {
    ctx: Context,
    members: Vec<Endomorphism>,
}

impl EndoSample {
    pub fn new(ctx: Context, members: Vec<Endomorphism>) -> Result<EndoSample> {
        for m in &members {
            ctx.check(m.context())?;
        }
        Ok(EndoSample { ctx, members })
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn members(&self) -> &[Endomorphism] {
        &self.members
    }
}

/// Whether `η` kills every element of `generators`, i.e. `η ∈ T'` for the
/// ideal `T` they generate.
pub fn in_prime_set(generators: &[AlgebraElement], eta: &Endomorphism) -> Result<bool> {
    for g in generators {
        if !eta.apply(g)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Membership of `f` in `<u>`, which equals `<u>''`.
pub fn in_double_prime(f: &AlgebraElement, ideal: &PrincipalBasicIdeal) -> Result<bool> {
    Ok(ideal.residue(f)?.is_zero())
}

/// Whether every member of the sample kills `f`.
pub fn sample_ideal(sample: &EndoSample, f: &AlgebraElement) -> Result<bool> {
    sample.ctx.check(f.context())?;
    for eta in &sample.members {
        if !eta.apply(f)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The members of the sample that lie in `T'`.
pub fn prime_subsample(generators: &[AlgebraElement], sample: &EndoSample) -> Result<Vec<Endomorphism>> {
    let mut out = Vec::new();
    for eta in &sample.members {
        if in_prime_set(generators, eta)? {
            out.push(eta.clone());
        }
    }
    Ok(out)
}

impl From<Vec<Endomorphism>> for EndoSample {
    /// Panics on an empty vector or mixed contexts.
    fn from(members: Vec<Endomorphism>) -> EndoSample {
        let ctx = *members.first().expect("nonempty sample").context();
        EndoSample::new(ctx, members).expect("shared context")
    }
}
