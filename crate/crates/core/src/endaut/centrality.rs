//! Probing bijections that commute with every endomorphism.
//!
//! A central map is a unary polynomial `u -> r(u)`. Linear `r` is bijective;
//! for `deg r >= 2` the generator `x_1` has no preimage and, in degree 2,
//! there is an explicit collision.

use alloc::string::ToString;
use alloc::vec::Vec;

use super::decompose::OracleTable;
use crate::endo::{collapse_probe, Endomorphism};
use crate::error::{DecomposeError, Error, Result};
use crate::freealg::{AlgebraElement, Context, Monomial};
use crate::scalars::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CentralityCandidate {
    /// `u -> r_0 + r_1 u + r_2 u^2 + ...`, coefficients in ascending order.
    Unary(Vec<Scalar>),
    Table(OracleTable),
}

/// `μ(s(key)) != s(μ(key))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutationWitness {
    pub probe: Endomorphism,
    pub key: AlgebraElement,
    pub lhs: AlgebraElement,
    pub rhs: AlgebraElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CentralityVerdict {
    /// `u -> scale * u + offset`.
    CentralLinear {
        scale: Scalar,
        offset: Scalar,
    },
    /// Central but not a bijection. `collision` is a pair of distinct
    /// elements with equal images; `missing_preimage` is not in the image.
    CentralNonbijective {
        degree: usize,
        collision: Option<(AlgebraElement, AlgebraElement)>,
        missing_preimage: AlgebraElement,
    },
    NotCentral(CommutationWitness),
}

fn eval_unary(coeffs: &[Scalar], u: &AlgebraElement) -> Result<AlgebraElement> {
    let ctx = *u.context();
    let mut acc = ctx.zero();
    for c in coeffs.iter().rev() {
        acc = acc.checked_mul(u)?.checked_add(&ctx.scalar(c.clone()))?;
    }
    Ok(acc)
}

fn unary_verdict(ctx: &Context, coeffs: &[Scalar]) -> Result<CentralityVerdict> {
    if coeffs.is_empty() {
        return Err(Error::EmptyCandidate);
    }
    for c in coeffs {
        ctx.check_scalar(c)?;
    }
    let degree = coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
    let coeffs = &coeffs[..=degree];
    let x1 = ctx.var(0);
    match degree {
        1 => Ok(CentralityVerdict::CentralLinear { scale: coeffs[1].clone(), offset: coeffs[0].clone() }),
        0 => Ok(CentralityVerdict::CentralNonbijective {
            degree,
            collision: Some((ctx.zero(), ctx.one())),
            missing_preimage: x1,
        }),
        _ => {
            let collision = if degree == 2 {
                // r(u) = r(-u - b/a)
                let shift = coeffs[1].checked_div(&coeffs[2])?;
                let other = x1.neg().checked_sub(&ctx.scalar(shift))?;
                let same = eval_unary(coeffs, &x1)? == eval_unary(coeffs, &other)?;
                same.then_some((x1.clone(), other))
            } else {
                None
            };
            Ok(CentralityVerdict::CentralNonbijective { degree, collision, missing_preimage: x1 })
        }
    }
}

/// Coefficients of `f` as a polynomial in `x_1`, if it involves no other
/// generator.
fn as_unary(f: &AlgebraElement) -> Option<Vec<Scalar>> {
    let ctx = f.context();
    if (1..ctx.vars).any(|i| f.involves(i)) {
        return None;
    }
    let degree = f.degree().unwrap_or(0);
    Some((0..=degree).map(|k| f.coefficient(&Monomial::from_letters(ctx.kind, core::iter::repeat_n(0, k)))).collect())
}

/// Classifies a candidate central bijection.
///
/// A unary candidate commutes with every substitution and is classified by
/// degree. A table is tested for `μ(s(k)) = s(μ(k))` on every key `k` with
/// `s(k)` also a key, for `s` among the collapse probes, the one-slot
/// probes `x_1 -> k` and `extra_probes`; the first violation is returned.
/// A table passing every test is classified through `μ(x_1)`.
pub fn centrality_probe(
    candidate: &CentralityCandidate,
    ctx: &Context,
    extra_probes: &[Endomorphism],
) -> Result<CentralityVerdict> {
    let table = match candidate {
        CentralityCandidate::Unary(coeffs) => return unary_verdict(ctx, coeffs),
        CentralityCandidate::Table(t) => t,
    };
    if table.is_empty() {
        return Err(Error::EmptyCandidate);
    }
    ctx.check(table.context())?;
    let mut probes: Vec<Endomorphism> = (0..ctx.vars).map(|j| collapse_probe(*ctx, j)).collect();
    for (k, _) in table.entries() {
        let mut images = ctx.vars();
        images[0] = k.clone();
        probes.push(Endomorphism::new(*ctx, images)?);
    }
    probes.extend(extra_probes.iter().cloned());

    for s in &probes {
        ctx.check(s.context())?;
        for (k, value) in table.entries() {
            let Ok(moved) = s.apply(k) else { continue };
            let Some(lhs) = table.get(&moved) else { continue };
            let rhs = match s.apply(value) {
                Ok(r) => r,
                Err(Error::DegreeCapExceeded { .. }) => continue,
                Err(e) => return Err(e),
            };
            if *lhs != rhs {
                return Ok(CentralityVerdict::NotCentral(CommutationWitness {
                    probe: s.clone(),
                    key: k.clone(),
                    lhs: lhs.clone(),
                    rhs,
                }));
            }
        }
    }

    let x1 = ctx.var(0);
    let r = table.get(&x1).ok_or_else(|| DecomposeError::MissingProbe(x1.to_string()))?;
    match as_unary(r) {
        Some(coeffs) => unary_verdict(ctx, &coeffs),
        // a collapse probe catches this whenever x_1 is a key
        None => unreachable!("μ(x1) involving other generators fails the collapse probe"),
    }
}
