use alloc::vec::Vec;

use super::{BijectionWord, CanonicalQuasiInner, LinearBijection, PrimitiveBijection};
use crate::autos::TameAutomorphism;
use crate::scalars::FieldAutomorphism;

fn rank(p: &PrimitiveBijection) -> u8 {
    match p {
        PrimitiveBijection::Linear(_) => 0,
        PrimitiveBijection::FieldSemilinear(_) => 1,
        PrimitiveBijection::AlgebraAuto(_) => 2,
        PrimitiveBijection::Mirror => 3,
    }
}

/// Moves `right` in front of `left` for an out-of-order pair `left ∘ right`,
/// returning the rewritten pair.
fn commute(left: PrimitiveBijection, right: PrimitiveBijection) -> (PrimitiveBijection, PrimitiveBijection) {
    use PrimitiveBijection::*;
    match (left, right) {
        // ᾱ ∘ l = l^α ∘ ᾱ
        (FieldSemilinear(alpha), Linear(l)) => {
            (Linear(l.twist(alpha).expect("validated automorphism")), FieldSemilinear(alpha))
        }
        // linear maps commute with algebra automorphisms and with β
        (left @ (AlgebraAuto(_) | Mirror), Linear(l)) => (Linear(l), left),
        // φ ∘ ᾱ = ᾱ ∘ φ^(α⁻¹)
        (AlgebraAuto(phi), FieldSemilinear(alpha)) => (
            FieldSemilinear(alpha),
            AlgebraAuto(phi.twist_by_field_automorphism(alpha.inverse()).expect("validated automorphism")),
        ),
        // β ∘ ᾱ = ᾱ ∘ β
        (Mirror, FieldSemilinear(alpha)) => (FieldSemilinear(alpha), Mirror),
        // β ∘ φ = φ^β ∘ β
        (Mirror, AlgebraAuto(phi)) => (AlgebraAuto(phi.mirror_twist().expect("mirror implies associative")), Mirror),
        (left, right) => unreachable!("pair {left} . {right} is already ordered"),
    }
}

/// Fuses two adjacent primitives of the same type. `None` means they
/// cancel.
fn fuse(left: PrimitiveBijection, right: PrimitiveBijection) -> Option<PrimitiveBijection> {
    use PrimitiveBijection::*;
    match (left, right) {
        (Linear(a), Linear(b)) => Some(Linear(a.compose(&b))),
        (FieldSemilinear(a), FieldSemilinear(b)) => Some(FieldSemilinear(a.compose(b))),
        (AlgebraAuto(a), AlgebraAuto(b)) => Some(AlgebraAuto(a.then(&b).expect("shared context"))),
        (Mirror, Mirror) => None,
        (left, right) => unreachable!("cannot fuse {left} with {right}"),
    }
}

/// Rewrites a word into `l ∘ ᾱ ∘ φ ∘ β^e`.
///
/// Each swap removes one inversion of the type order
/// linear < field < automorphism < mirror, and each fusion shortens the
/// word, so the loop terminates.
pub fn normalize(word: &BijectionWord) -> CanonicalQuasiInner {
    let ctx = word.ctx;
    let mut prims: Vec<PrimitiveBijection> = word.primitives.clone();
    let mut changed = true;
    while changed {
        changed = false;
        let mut i = 0;
        while i + 1 < prims.len() {
            let (r1, r2) = (rank(&prims[i]), rank(&prims[i + 1]));
            if r1 > r2 {
                let right = prims.remove(i + 1);
                let left = prims.remove(i);
                let (a, b) = commute(left, right);
                prims.insert(i, b);
                prims.insert(i, a);
                changed = true;
            } else if r1 == r2 {
                let right = prims.remove(i + 1);
                let left = prims.remove(i);
                if let Some(p) = fuse(left, right) {
                    prims.insert(i, p);
                }
                changed = true;
                continue;
            }
            i += 1;
        }
    }
    let mut linear = LinearBijection::identity(&ctx);
    let mut alpha = FieldAutomorphism::Identity;
    let mut automorphism = TameAutomorphism::identity(ctx);
    let mut mirror = false;
    for p in prims {
        match p {
            PrimitiveBijection::Linear(l) => linear = l,
            PrimitiveBijection::FieldSemilinear(a) => alpha = a,
            PrimitiveBijection::AlgebraAuto(phi) => automorphism = phi,
            PrimitiveBijection::Mirror => mirror = true,
        }
    }
    CanonicalQuasiInner { ctx, linear, alpha, automorphism, mirror }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autos::ElementaryGenerator;
    use crate::endaut::apply_bijection;
    use crate::freealg::{AlgebraKind, Context};
    use crate::scalars::{Field, Scalar};
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn double_mirror_cancels() {
        let c = Context::new(AlgebraKind::Associative, 2, Field::Rational);
        let w = BijectionWord::new(c, vec![PrimitiveBijection::Mirror, PrimitiveBijection::Mirror]).unwrap();
        assert_eq!(normalize(&w), CanonicalQuasiInner::identity(c));
    }

    #[test]
    fn conjugation_moves_through_automorphism() {
        let c = Context::new(AlgebraKind::Commutative, 2, Field::QuadraticSqrt(2));
        let root = Scalar::sqrt_radicand(c.field).unwrap();
        let phi = TameAutomorphism::from_generator(
            c,
            ElementaryGenerator::elementary(&c, 0, c.var(1).scalar_mul(&root).unwrap()).unwrap(),
        )
        .unwrap();
        let w = BijectionWord::new(
            c,
            vec![
                PrimitiveBijection::FieldSemilinear(FieldAutomorphism::Conjugation),
                PrimitiveBijection::AlgebraAuto(phi.clone()),
            ],
        )
        .unwrap();
        let canon = normalize(&w);
        assert_eq!(canon.alpha(), FieldAutomorphism::Conjugation);
        // already in canonical order, so φ is untouched
        assert_eq!(canon.automorphism(), &phi);
        let probes = [c.var(0), c.var(1), c.var(1).pow(2).unwrap().scalar_mul(&root).unwrap()];
        for p in &probes {
            assert_eq!(canon.apply(p).unwrap(), apply_bijection(&w, p).unwrap());
        }

        // the reversed order must twist φ
        let w = BijectionWord::new(
            c,
            vec![
                PrimitiveBijection::AlgebraAuto(phi.clone()),
                PrimitiveBijection::FieldSemilinear(FieldAutomorphism::Conjugation),
            ],
        )
        .unwrap();
        let canon = normalize(&w);
        assert_eq!(canon.automorphism().to_string(), "elem 1 -s*x2");
        for p in &probes {
            assert_eq!(canon.apply(p).unwrap(), apply_bijection(&w, p).unwrap());
        }
    }
}
