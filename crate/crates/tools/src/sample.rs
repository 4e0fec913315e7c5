//! Seeded random instances. Every suite draws from its own ChaCha stream, so
//! a fixed seed reproduces the same instances regardless of which suites
//! run.

use endw::endaut::BijectionWord;
use endw::{
    AlgebraElement, CanonicalQuasiInner, Context, ElementaryGenerator, Endomorphism, Field, FieldAutomorphism,
    LinearBijection, Monomial, PrimitiveBijection, Scalar, TameAutomorphism,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64, stream: u64) -> Sampler {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Sampler { rng }
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.random_range(lo..=hi)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.random_bool(p)
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.below(items.len())]
    }

    fn small_rational(&mut self) -> (i64, i64) {
        (self.range(-3, 3), self.range(1, 2))
    }

    /// `a/b + c/e * s` with small numerators; the radical part is present
    /// half the time over a quadratic field.
    pub fn scalar(&mut self, field: Field) -> Scalar {
        let (p, q) = self.small_rational();
        let rational = Scalar::from_fraction(field, p, q).expect("nonzero denominator");
        if field.radicand().is_none() || self.chance(0.5) {
            return rational;
        }
        let (r, t) = self.small_rational();
        let radical = Scalar::from_fraction(field, r, t).expect("nonzero denominator");
        let root = Scalar::sqrt_radicand(field).expect("quadratic field");
        &rational + &(&radical * &root)
    }

    pub fn nonzero_scalar(&mut self, field: Field) -> Scalar {
        loop {
            let a = self.scalar(field);
            if !a.is_zero() {
                return a;
            }
        }
    }

    pub fn monomial(&mut self, ctx: &Context, degree: usize, letters: &[usize]) -> Monomial {
        let word: Vec<usize> = (0..degree).map(|_| *self.pick(letters)).collect();
        Monomial::from_letters(ctx.kind, word)
    }

    /// Up to `max_terms` terms of degree at most `max_degree`.
    pub fn element(&mut self, ctx: &Context, max_degree: usize, max_terms: usize) -> AlgebraElement {
        let all: Vec<usize> = (0..ctx.vars).collect();
        let mut f = ctx.zero();
        for _ in 0..1 + self.below(max_terms) {
            let degree = self.below(max_degree + 1);
            let m = self.monomial(ctx, degree, &all);
            let term = AlgebraElement::term(*ctx, self.nonzero_scalar(ctx.field), m).expect("valid monomial");
            f = f.checked_add(&term).expect("same context");
        }
        f
    }

    pub fn endomorphism(&mut self, ctx: &Context, max_degree: usize, max_terms: usize) -> Endomorphism {
        let images = (0..ctx.vars).map(|_| self.element(ctx, max_degree, max_terms)).collect();
        Endomorphism::new(*ctx, images).expect("sampled in context")
    }

    pub fn constant_endomorphism(&mut self, ctx: &Context) -> Endomorphism {
        let images = (0..ctx.vars).map(|_| ctx.scalar(self.scalar(ctx.field))).collect();
        Endomorphism::new(*ctx, images).expect("sampled in context")
    }

    /// A transposition, a diagonal scaling or a translation.
    pub fn affine_generator(&mut self, ctx: &Context) -> ElementaryGenerator {
        let n = ctx.vars;
        let zero = Scalar::zero(ctx.field);
        let one = Scalar::one(ctx.field);
        let mut matrix: Vec<Vec<Scalar>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { one.clone() } else { zero.clone() }).collect()).collect();
        let mut shift = vec![zero.clone(); n];
        match self.below(3) {
            0 if n >= 2 => {
                let i = self.below(n);
                let j = (i + 1 + self.below(n - 1)) % n;
                matrix.swap(i, j);
            }
            1 => {
                for (i, row) in matrix.iter_mut().enumerate() {
                    row[i] = self.nonzero_scalar(ctx.field);
                }
            }
            _ => {
                let i = self.below(n);
                shift[i] = self.nonzero_scalar(ctx.field);
            }
        }
        ElementaryGenerator::affine(ctx, matrix, shift).expect("invertible by construction")
    }

    /// `x_i -> x_i + f` with `f` free of `x_i`: a single degree-2 monomial
    /// when `nonlinear`, otherwise `c x_j + d`.
    pub fn elementary_generator(&mut self, ctx: &Context, nonlinear: bool) -> ElementaryGenerator {
        let i = self.below(ctx.vars);
        let others: Vec<usize> = (0..ctx.vars).filter(|&j| j != i).collect();
        let addend = if others.is_empty() {
            ctx.scalar(self.nonzero_scalar(ctx.field))
        } else if nonlinear {
            let m = self.monomial(ctx, 2, &others);
            AlgebraElement::term(*ctx, self.nonzero_scalar(ctx.field), m).expect("valid monomial")
        } else {
            let j = *self.pick(&others);
            let c = self.nonzero_scalar(ctx.field);
            let d = self.scalar(ctx.field);
            ctx.var(j).scalar_mul(&c).and_then(|v| v.checked_add(&ctx.scalar(d))).expect("same context")
        };
        ElementaryGenerator::elementary(ctx, i, addend).expect("addend avoids its own variable")
    }

    /// Up to `max_len` generators, at most `max_nonlinear` of them nonlinear.
    pub fn tame(&mut self, ctx: &Context, max_len: usize, max_nonlinear: usize) -> TameAutomorphism {
        let mut budget = max_nonlinear;
        let len = self.below(max_len + 1);
        let word = (0..len)
            .map(|_| {
                if self.chance(0.5) {
                    self.affine_generator(ctx)
                } else {
                    let nonlinear = budget > 0 && self.chance(0.5);
                    budget -= usize::from(nonlinear);
                    self.elementary_generator(ctx, nonlinear)
                }
            })
            .collect();
        TameAutomorphism::new(*ctx, word).expect("sampled in context")
    }

    pub fn linear(&mut self, ctx: &Context) -> LinearBijection {
        LinearBijection::new(self.nonzero_scalar(ctx.field), self.scalar(ctx.field)).expect("nonzero scale")
    }

    pub fn field_automorphism(&mut self, field: Field) -> FieldAutomorphism {
        *self.pick(field.automorphisms())
    }

    /// A canonical form with a mirror factor half the time in the
    /// associative kind.
    pub fn canonical(&mut self, ctx: &Context, max_len: usize, max_nonlinear: usize) -> CanonicalQuasiInner {
        let mirror = ctx.is_associative() && self.chance(0.5);
        self.canonical_with_mirror(ctx, max_len, max_nonlinear, mirror)
    }

    pub fn canonical_with_mirror(
        &mut self,
        ctx: &Context,
        max_len: usize,
        max_nonlinear: usize,
        mirror: bool,
    ) -> CanonicalQuasiInner {
        let linear = self.linear(ctx);
        let alpha = self.field_automorphism(ctx.field);
        let phi = self.tame(ctx, max_len, max_nonlinear);
        CanonicalQuasiInner::new(linear, alpha, phi, mirror).expect("sampled in context")
    }

    pub fn primitive(&mut self, ctx: &Context) -> PrimitiveBijection {
        loop {
            match self.below(4) {
                0 => return PrimitiveBijection::Linear(self.linear(ctx)),
                1 => return PrimitiveBijection::FieldSemilinear(self.field_automorphism(ctx.field)),
                2 => return PrimitiveBijection::AlgebraAuto(self.tame(ctx, 2, 1)),
                _ if ctx.is_associative() => return PrimitiveBijection::Mirror,
                _ => {}
            }
        }
    }

    pub fn bijection_word(&mut self, ctx: &Context, max_len: usize) -> BijectionWord {
        let len = self.below(max_len + 1);
        let primitives = (0..len).map(|_| self.primitive(ctx)).collect();
        BijectionWord::new(*ctx, primitives).expect("sampled in context")
    }
}
