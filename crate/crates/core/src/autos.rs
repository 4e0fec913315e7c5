//! Tame automorphisms, kept as words in affine and elementary generators so
//! that inverses are exact.

use alloc::vec::Vec;
use core::fmt;

use crate::endo::Endomorphism;
use crate::error::{Error, Result};
use crate::freealg::{AlgebraElement, Context};
use crate::scalars::{FieldAutomorphism, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementaryGenerator {
    /// `x_i -> sum_j matrix[i][j] x_j + shift[i]` with an invertible matrix.
    Affine { matrix: Vec<Vec<Scalar>>, shift: Vec<Scalar> },
    /// `x_index -> x_index + addend`, where `addend` does not involve
    /// `x_index`; the other generators are fixed.
    Elementary { index: usize, addend: AlgebraElement },
}

impl ElementaryGenerator {
    pub fn affine(ctx: &Context, matrix: Vec<Vec<Scalar>>, shift: Vec<Scalar>) -> Result<ElementaryGenerator> {
        let n = ctx.vars;
        if matrix.len() != n || shift.len() != n || matrix.iter().any(|row| row.len() != n) {
            return Err(Error::AffineShape { vars: n });
        }
        for a in matrix.iter().flatten().chain(&shift) {
            ctx.check_scalar(a)?;
        }
        if determinant(&matrix, ctx).is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(ElementaryGenerator::Affine { matrix, shift })
    }

    /// The affine map `x_i -> scale * x_i + offset` on every generator.
    pub fn homothety(ctx: &Context, scale: &Scalar, offset: &Scalar) -> Result<ElementaryGenerator> {
        let n = ctx.vars;
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { scale.clone() } else { Scalar::zero(ctx.field) }).collect())
            .collect();
        ElementaryGenerator::affine(ctx, matrix, alloc::vec![offset.clone(); n])
    }

    pub fn elementary(ctx: &Context, index: usize, addend: AlgebraElement) -> Result<ElementaryGenerator> {
        ctx.check_var(index)?;
        ctx.check(addend.context())?;
        if addend.involves(index) {
            return Err(Error::ElementaryDependsOnOwnVariable(index + 1));
        }
        Ok(ElementaryGenerator::Elementary { index, addend })
    }

    pub fn as_endomorphism(&self, ctx: &Context) -> Result<Endomorphism> {
        let images = match self {
            ElementaryGenerator::Affine { matrix, shift } => matrix
                .iter()
                .zip(shift)
                .map(|(row, b)| {
                    let mut img = ctx.scalar(b.clone());
                    for (j, a) in row.iter().enumerate() {
                        img = img.checked_add(&ctx.var(j).scalar_mul(a)?)?;
                    }
                    Ok(img)
                })
                .collect::<Result<Vec<_>>>()?,
            ElementaryGenerator::Elementary { index, addend } => {
                let mut images = ctx.vars();
                images[*index] = images[*index].checked_add(addend)?;
                images
            }
        };
        Endomorphism::new(*ctx, images)
    }

    pub fn inverse(&self, ctx: &Context) -> ElementaryGenerator {
        match self {
            ElementaryGenerator::Affine { matrix, shift } => {
                let inv = invert_matrix(matrix, ctx).expect("affine generators are invertible");
                let shift = inv
                    .iter()
                    .map(|row| {
                        let mut acc = Scalar::zero(ctx.field);
                        for (a, b) in row.iter().zip(shift) {
                            acc = &acc - &(a * b);
                        }
                        acc
                    })
                    .collect();
                ElementaryGenerator::Affine { matrix: inv, shift }
            }
            ElementaryGenerator::Elementary { index, addend } => {
                ElementaryGenerator::Elementary { index: *index, addend: addend.neg() }
            }
        }
    }

    fn map_coefficients(&self, alpha: FieldAutomorphism) -> Result<ElementaryGenerator> {
        Ok(match self {
            ElementaryGenerator::Affine { matrix, shift } => ElementaryGenerator::Affine {
                matrix: matrix.iter().map(|row| row.iter().map(|a| alpha.apply(a)).collect()).collect::<Result<_>>()?,
                shift: shift.iter().map(|a| alpha.apply(a)).collect::<Result<_>>()?,
            },
            ElementaryGenerator::Elementary { index, addend } => {
                ElementaryGenerator::Elementary { index: *index, addend: addend.map_coefficients(alpha)? }
            }
        })
    }

    fn mirrored(&self) -> Result<ElementaryGenerator> {
        Ok(match self {
            ElementaryGenerator::Affine { .. } => self.clone(),
            ElementaryGenerator::Elementary { index, addend } => {
                ElementaryGenerator::Elementary { index: *index, addend: addend.mirror()? }
            }
        })
    }

    fn apply(&self, ctx: &Context, f: &AlgebraElement) -> Result<AlgebraElement> {
        f.substitute(self.as_endomorphism(ctx)?.images())
    }
}

impl fmt::Display for ElementaryGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementaryGenerator::Affine { matrix, shift } => {
                f.write_str("affine [")?;
                for (i, row) in matrix.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write_row(f, row)?;
                }
                f.write_str("] + ")?;
                write_row(f, shift)
            }
            ElementaryGenerator::Elementary { index, addend } => write!(f, "elem {} {addend}", index + 1),
        }
    }
}

fn write_row(f: &mut fmt::Formatter<'_>, row: &[Scalar]) -> fmt::Result {
    f.write_str("[")?;
    for (j, a) in row.iter().enumerate() {
        if j > 0 {
            f.write_str(",")?;
        }
        write!(f, "{a}")?;
    }
    f.write_str("]")
}

#[allow(clippy::needless_range_loop)] // rows r and col are read together
fn determinant(matrix: &[Vec<Scalar>], ctx: &Context) -> Scalar {
    let mut m: Vec<Vec<Scalar>> = matrix.to_vec();
    let n = m.len();
    let mut det = Scalar::one(ctx.field);
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Scalar::zero(ctx.field);
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det = &det * &m[col][col];
        let inv = m[col][col].inv().expect("nonzero pivot");
        for r in col + 1..n {
            let factor = &m[r][col] * &inv;
            if factor.is_zero() {
                continue;
            }
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] = &m[r][c] - &delta;
            }
        }
    }
    det
}

/// Gauss-Jordan inversion; `None` for a singular matrix.
fn invert_matrix(matrix: &[Vec<Scalar>], ctx: &Context) -> Option<Vec<Vec<Scalar>>> {
    let n = matrix.len();
    let mut m: Vec<Vec<Scalar>> = matrix.to_vec();
    let mut inv: Vec<Vec<Scalar>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Scalar::one(ctx.field) } else { Scalar::zero(ctx.field) }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(pivot, col);
        inv.swap(pivot, col);
        let p = m[col][col].inv().ok()?;
        for c in 0..n {
            m[col][c] = &m[col][c] * &p;
            inv[col][c] = &inv[col][c] * &p;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in 0..n {
                let a = &factor * &m[col][c];
                m[r][c] = &m[r][c] - &a;
                let b = &factor * &inv[col][c];
                inv[r][c] = &inv[r][c] - &b;
            }
        }
    }
    Some(inv)
}

/// A word `g1 g2 ... gk` of generators denoting `g1 ∘ g2 ∘ ... ∘ gk`, so the
/// rightmost generator acts first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TameAutomorphism {
    ctx: Context,
    word: Vec<ElementaryGenerator>,
}

impl TameAutomorphism {
    pub fn identity(ctx: Context) -> TameAutomorphism {
        TameAutomorphism { ctx, word: Vec::new() }
    }

    /// Checks every generator against the context.
    pub fn new(ctx: Context, word: Vec<ElementaryGenerator>) -> Result<TameAutomorphism> {
        for g in &word {
            match g {
                ElementaryGenerator::Affine { matrix, shift } => {
                    ElementaryGenerator::affine(&ctx, matrix.clone(), shift.clone())?;
                }
                ElementaryGenerator::Elementary { index, addend } => {
                    ElementaryGenerator::elementary(&ctx, *index, addend.clone())?;
                }
            }
        }
        Ok(TameAutomorphism { ctx, word })
    }

    pub fn from_generator(ctx: Context, g: ElementaryGenerator) -> Result<TameAutomorphism> {
        TameAutomorphism::new(ctx, alloc::vec![g])
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn word(&self) -> &[ElementaryGenerator] {
        &self.word
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// `self ∘ other`.
    pub fn then(&self, other: &TameAutomorphism) -> Result<TameAutomorphism> {
        self.ctx.check(&other.ctx)?;
        let mut word = self.word.clone();
        word.extend(other.word.iter().cloned());
        Ok(TameAutomorphism { ctx: self.ctx, word })
    }

    pub fn as_endomorphism(&self) -> Result<Endomorphism> {
        let mut acc = Endomorphism::identity(self.ctx);
        for g in &self.word {
            acc = acc.compose(&g.as_endomorphism(&self.ctx)?)?;
        }
        Ok(acc)
    }

    /// `φ(f)`, applying the generators right to left.
    pub fn apply(&self, f: &AlgebraElement) -> Result<AlgebraElement> {
        self.ctx.check(f.context())?;
        let mut value = f.clone();
        for g in self.word.iter().rev() {
            value = g.apply(&self.ctx, &value)?;
        }
        Ok(value)
    }

    /// The reversed word of inverse generators.
    pub fn invert(&self) -> TameAutomorphism {
        TameAutomorphism { ctx: self.ctx, word: self.word.iter().rev().map(|g| g.inverse(&self.ctx)).collect() }
    }

    /// `φ^α = ᾱ ∘ φ ∘ ᾱ⁻¹`: every coefficient of every generator mapped
    /// through `α`.
    pub fn twist_by_field_automorphism(&self, alpha: FieldAutomorphism) -> Result<TameAutomorphism> {
        if !alpha.is_valid_for(self.ctx.field) {
            return Err(Error::ConjugationOverRationals(self.ctx.field));
        }
        let word = self.word.iter().map(|g| g.map_coefficients(alpha)).collect::<Result<_>>()?;
        Ok(TameAutomorphism { ctx: self.ctx, word })
    }

    /// `φ^β = β ∘ φ ∘ β`: every generator image mirrored.
    pub fn mirror_twist(&self) -> Result<TameAutomorphism> {
        if !self.ctx.is_associative() {
            return Err(Error::NotAssociative);
        }
        let word = self.word.iter().map(ElementaryGenerator::mirrored).collect::<Result<_>>()?;
        Ok(TameAutomorphism { ctx: self.ctx, word })
    }
}

impl fmt::Display for TameAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.word.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// A basic element `u = φ(x_index)` together with the automorphism whose
/// generator images form a base containing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicElementWitness {
    automorphism: TameAutomorphism,
    index: usize,
}

impl BasicElementWitness {
    pub fn new(automorphism: TameAutomorphism, index: usize) -> Result<BasicElementWitness> {
        automorphism.context().check_var(index)?;
        Ok(BasicElementWitness { automorphism, index })
    }

    pub fn automorphism(&self) -> &TameAutomorphism {
        &self.automorphism
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// The base `φ(x_1), ..., φ(x_n)`.
    pub fn base(&self) -> Result<Vec<AlgebraElement>> {
        Ok(self.automorphism.as_endomorphism()?.into_images())
    }
}

pub fn basic_element(witness: &BasicElementWitness) -> Result<AlgebraElement> {
    let ctx = witness.automorphism.context();
    witness.automorphism.apply(&ctx.var(witness.index))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::AlgebraKind;
    use crate::scalars::Field;
    use alloc::string::ToString;
    use alloc::vec;

    fn int(ctx: &Context, n: i64) -> Scalar {
        Scalar::from_integer(ctx.field, n)
    }

    fn comm(n: usize) -> Context {
        Context::new(AlgebraKind::Commutative, n, Field::Rational)
    }

    fn swap(ctx: &Context) -> ElementaryGenerator {
        ElementaryGenerator::affine(
            ctx,
            vec![vec![int(ctx, 0), int(ctx, 1)], vec![int(ctx, 1), int(ctx, 0)]],
            vec![int(ctx, 0), int(ctx, 0)],
        )
        .unwrap()
    }

    #[test]
    fn empty_word_is_identity() {
        let c = comm(2);
        assert!(TameAutomorphism::identity(c).as_endomorphism().unwrap().is_identity());
    }

    #[test]
    fn single_elementary() {
        let c = comm(2);
        let e = ElementaryGenerator::elementary(&c, 0, c.var(1).pow(2).unwrap()).unwrap();
        let phi = TameAutomorphism::from_generator(c, e).unwrap();
        let s = phi.as_endomorphism().unwrap();
        assert_eq!(s.to_string(), "x1 -> x2^2 + x1; x2 -> x2");
        assert_eq!(phi.to_string(), "elem 1 x2^2");
    }

    #[test]
    fn word_composes_right_to_left() {
        let c = comm(2);
        let e = ElementaryGenerator::elementary(&c, 0, c.var(1).pow(2).unwrap()).unwrap();
        let phi = TameAutomorphism::new(c, vec![swap(&c), e.clone()]).unwrap();
        // oracle: swap ∘ e by direct substitution
        let expected = swap(&c).as_endomorphism(&c).unwrap().compose(&e.as_endomorphism(&c).unwrap()).unwrap();
        assert_eq!(phi.as_endomorphism().unwrap(), expected);
        assert_eq!(expected.to_string(), "x1 -> x1^2 + x2; x2 -> x1");
        let f = c.var(0).checked_mul(&c.var(1)).unwrap();
        assert_eq!(phi.apply(&f).unwrap(), expected.apply(&f).unwrap());
    }

    #[test]
    fn affine_inverse() {
        let c = comm(1);
        let g = ElementaryGenerator::affine(&c, vec![vec![int(&c, 2)]], vec![int(&c, 1)]).unwrap();
        let inv = g.inverse(&c);
        let half = Scalar::from_fraction(c.field, 1, 2).unwrap();
        assert_eq!(inv, ElementaryGenerator::Affine { matrix: vec![vec![half.clone()]], shift: vec![-half] });
        let phi = TameAutomorphism::from_generator(c, g).unwrap();
        let round = phi.as_endomorphism().unwrap().compose(&phi.invert().as_endomorphism().unwrap()).unwrap();
        assert!(round.is_identity());
    }

    #[test]
    fn elementary_inverse() {
        let c = comm(2);
        let g = ElementaryGenerator::elementary(&c, 0, c.var(1).pow(2).unwrap()).unwrap();
        assert_eq!(g.inverse(&c), ElementaryGenerator::Elementary { index: 0, addend: c.var(1).pow(2).unwrap().neg() });
    }

    #[test]
    fn generator_validation() {
        let c = comm(2);
        assert_eq!(ElementaryGenerator::elementary(&c, 0, c.var(0)), Err(Error::ElementaryDependsOnOwnVariable(1)));
        assert_eq!(
            ElementaryGenerator::affine(
                &c,
                vec![vec![int(&c, 1), int(&c, 2)], vec![int(&c, 2), int(&c, 4)]],
                vec![int(&c, 0); 2]
            ),
            Err(Error::SingularMatrix)
        );
        assert_eq!(
            ElementaryGenerator::affine(&c, vec![vec![int(&c, 1)]], vec![int(&c, 0)]),
            Err(Error::AffineShape { vars: 2 })
        );
    }

    #[test]
    fn identity_affine_acts_trivially() {
        let c = comm(3);
        let g = ElementaryGenerator::homothety(&c, &int(&c, 1), &int(&c, 0)).unwrap();
        assert!(g.as_endomorphism(&c).unwrap().is_identity());
    }

    #[test]
    fn field_twist() {
        let field = Field::QuadraticSqrt(2);
        let c = Context::new(AlgebraKind::Commutative, 2, field);
        let root = Scalar::sqrt_radicand(field).unwrap();
        let g = ElementaryGenerator::elementary(&c, 0, c.var(1).scalar_mul(&root).unwrap()).unwrap();
        let phi = TameAutomorphism::from_generator(c, g).unwrap();
        let twisted = phi.twist_by_field_automorphism(FieldAutomorphism::Conjugation).unwrap();
        assert_eq!(twisted.to_string(), "elem 1 -s*x2");
        assert_eq!(phi.twist_by_field_automorphism(FieldAutomorphism::Identity).unwrap(), phi);
        let back = twisted.twist_by_field_automorphism(FieldAutomorphism::Conjugation).unwrap();
        assert_eq!(back, phi);
        assert!(TameAutomorphism::identity(comm(2))
            .twist_by_field_automorphism(FieldAutomorphism::Conjugation)
            .is_err());
    }

    #[test]
    fn mirror_twist_reverses_addends() {
        let c = Context::new(AlgebraKind::Associative, 3, Field::Rational);
        let g = ElementaryGenerator::elementary(&c, 0, c.var(1).checked_mul(&c.var(2)).unwrap()).unwrap();
        let phi = TameAutomorphism::from_generator(c, g).unwrap();
        assert_eq!(phi.mirror_twist().unwrap().to_string(), "elem 1 x3*x2");
        let sym = ElementaryGenerator::elementary(&c, 0, c.var(1).pow(2).unwrap()).unwrap();
        let phi =
            TameAutomorphism::new(c, vec![sym, ElementaryGenerator::homothety(&c, &int(&c, 2), &int(&c, 1)).unwrap()])
                .unwrap();
        assert_eq!(phi.mirror_twist().unwrap(), phi);
        assert_eq!(TameAutomorphism::identity(comm(2)).mirror_twist(), Err(Error::NotAssociative));
    }

    #[test]
    fn basic_elements() {
        let c = comm(2);
        let id = BasicElementWitness::new(TameAutomorphism::identity(c), 0).unwrap();
        assert_eq!(basic_element(&id).unwrap(), c.var(0));
        let g = ElementaryGenerator::elementary(&c, 0, c.var(1).pow(2).unwrap()).unwrap();
        let w = BasicElementWitness::new(TameAutomorphism::from_generator(c, g).unwrap(), 0).unwrap();
        assert_eq!(basic_element(&w).unwrap().to_string(), "x2^2 + x1");
        let base = w.base().unwrap();
        let inv = w.automorphism().invert().as_endomorphism().unwrap();
        // the inverse recovers the generators from the base
        let back: Vec<_> = base.iter().map(|b| inv.apply(b).unwrap()).collect();
        assert_eq!(back, c.vars());
        assert!(BasicElementWitness::new(TameAutomorphism::identity(c), 5).is_err());
    }
}
