//! Substitution endomorphisms of a free algebra.
//!
//! Composition convention: `compose(s, t)` applies `t` first, so
//! `compose(s, t)(f) = s(t(f))` and the images of the composite are
//! `s(t(x_i))`.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::freealg::{AlgebraElement, Context};
use crate::scalars::Scalar;

/// An endomorphism given by the images of the generators. It fixes every
/// scalar by construction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Endomorphism {
    ctx: Context,
    images: Vec<AlgebraElement>,
}

impl Endomorphism {
    pub fn new(ctx: Context, images: Vec<AlgebraElement>) -> Result<Endomorphism> {
        if images.len() != ctx.vars {
            return Err(Error::ArityMismatch { expected: ctx.vars, found: images.len() });
        }
        for img in &images {
            ctx.check(img.context())?;
        }
        Ok(Endomorphism { ctx, images })
    }

    pub fn identity(ctx: Context) -> Endomorphism {
        Endomorphism { ctx, images: ctx.vars() }
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn images(&self) -> &[AlgebraElement] {
        &self.images
    }

    pub fn image(&self, index: usize) -> &AlgebraElement {
        &self.images[index]
    }

    pub fn into_images(self) -> Vec<AlgebraElement> {
        self.images
    }

    pub fn apply(&self, f: &AlgebraElement) -> Result<AlgebraElement> {
        self.ctx.check(f.context())?;
        f.substitute(&self.images)
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Endomorphism) -> Result<Endomorphism> {
        self.ctx.check(&other.ctx)?;
        let images = other.images.iter().map(|g| g.substitute(&self.images)).collect::<Result<_>>()?;
        Ok(Endomorphism { ctx: self.ctx, images })
    }

    /// Whether the image lies in the scalars.
    pub fn is_constant(&self) -> bool {
        self.images.iter().all(AlgebraElement::is_scalar)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, img)| *img == self.ctx.var(i))
    }

    /// Applies `f` to every image.
    pub fn map_images(&self, mut f: impl FnMut(&AlgebraElement) -> Result<AlgebraElement>) -> Result<Endomorphism> {
        let images = self.images.iter().map(&mut f).collect::<Result<Vec<_>>>()?;
        Endomorphism::new(self.ctx, images)
    }
}

impl fmt::Display for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, img) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "x{} -> {img}", i + 1)?;
        }
        Ok(())
    }
}

/// A constant endomorphism, i.e. a point of `P^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstEndo {
    point: Vec<Scalar>,
}

impl ConstEndo {
    pub fn new(ctx: &Context, point: Vec<Scalar>) -> Result<ConstEndo> {
        if point.len() != ctx.vars {
            return Err(Error::ArityMismatch { expected: ctx.vars, found: point.len() });
        }
        for a in &point {
            ctx.check_scalar(a)?;
        }
        Ok(ConstEndo { point })
    }

    pub fn point(&self) -> &[Scalar] {
        &self.point
    }

    pub fn to_endomorphism(&self, ctx: Context) -> Endomorphism {
        Endomorphism { ctx, images: self.point.iter().map(|a| ctx.scalar(a.clone())).collect() }
    }

    pub fn eval(&self, f: &AlgebraElement) -> Result<Scalar> {
        f.evaluate(&self.point)
    }
}

/// Searches the grid `{0..=per_axis-1}^n` of constant endomorphisms for one
/// that does not kill `f`.
///
/// In the commutative kind a nonzero `f` with all partial degrees below
/// `per_axis` always has such a point, which certifies that the kernels of
/// the constant endomorphisms intersect in zero. In the associative kind
/// commutators vanish at every point.
pub fn grid_nonvanishing_point(f: &AlgebraElement, per_axis: usize) -> Result<Option<ConstEndo>> {
    let ctx = *f.context();
    let mut digits = alloc::vec![0usize; ctx.vars];
    loop {
        let point: Vec<Scalar> = digits.iter().map(|&d| Scalar::from_integer(ctx.field, d as i64)).collect();
        if !f.evaluate(&point)?.is_zero() {
            return Ok(Some(ConstEndo { point }));
        }
        let mut k = 0;
        loop {
            if k == digits.len() {
                return Ok(None);
            }
            digits[k] += 1;
            if digits[k] < per_axis {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

/// The probe endomorphisms used to show that central bijections are
/// polynomials in one variable.
#[derive(Debug, Clone)]
pub struct ProbeSet {
    ctx: Context,
    collapse: Vec<Endomorphism>,
}

/// The collapse probes `x_j -> x_j`, `x_i -> 0` for `i != j`, one per
/// generator.
pub fn theorem2_probe_set(ctx: Context) -> ProbeSet {
    let collapse = (0..ctx.vars).map(|j| collapse_probe(ctx, j)).collect();
    ProbeSet { ctx, collapse }
}

pub fn collapse_probe(ctx: Context, j: usize) -> Endomorphism {
    let images = (0..ctx.vars).map(|i| if i == j { ctx.var(i) } else { ctx.zero() }).collect();
    Endomorphism { ctx, images }
}

impl ProbeSet {
    pub fn collapse(&self) -> &[Endomorphism] {
        &self.collapse
    }

    /// The one-slot probe `x_j -> u`, other generators fixed.
    pub fn one_slot(&self, j: usize, u: &AlgebraElement) -> Result<Endomorphism> {
        self.ctx.check_var(j)?;
        let mut images = self.ctx.vars();
        images[j] = u.clone();
        Endomorphism::new(self.ctx, images)
    }
}
