//! Seeded verification suites. Each suite checks one family of statements
//! on sampled instances and reports one line per case:
//! `PASS|FAIL <suite> <case-id> [detail]`.

use std::fmt;

use endw::endaut::apply_bijection;
use endw::endaut::{
    base_image_check, centrality_probe, conjugate, decompose_blackbox, law_checks, normalize,
    solve_product_coefficients, CentralityCandidate, CentralityVerdict, Law, LawStatus, OracleTable,
};
use endw::galois::{in_double_prime, sample_ideal, EndoSample, PrincipalBasicIdeal};
use endw::{
    AlgebraElement, AlgebraKind, BasicElementWitness, CanonicalQuasiInner, Context, Endomorphism, Field, Monomial,
    Scalar, TameAutomorphism,
};

use crate::sample::Sampler;
use crate::table::table_of;

/// Degree cap used by the suites unless one is given explicitly.
pub const SUITE_MAX_DEGREE: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Semigroup,
    Mirror,
    Lemma31,
    Lemma32_33,
    Lemma34,
    Lemma41,
    Lemma42,
    Thm1,
    Thm2,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Semigroup,
        Suite::Mirror,
        Suite::Lemma31,
        Suite::Lemma32_33,
        Suite::Lemma34,
        Suite::Lemma41,
        Suite::Lemma42,
        Suite::Thm1,
        Suite::Thm2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Semigroup => "semigroup",
            Suite::Mirror => "mirror",
            Suite::Lemma31 => "lemma31",
            Suite::Lemma32_33 => "lemma32-33",
            Suite::Lemma34 => "lemma34",
            Suite::Lemma41 => "lemma41",
            Suite::Lemma42 => "lemma42",
            Suite::Thm1 => "thm1",
            Suite::Thm2 => "thm2",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }

    fn stream(self) -> u64 {
        self as u64
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Session flags that suites honour. Unset fields fall back to each
/// suite's own sampling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub field: Option<Field>,
    pub kind: Option<AlgebraKind>,
    pub vars: Option<usize>,
    pub max_degree: Option<usize>,
}

impl SuiteConfig {
    pub fn new(seed: u64) -> SuiteConfig {
        SuiteConfig { seed, field: None, kind: None, vars: None, max_degree: None }
    }

    fn field(&self) -> Field {
        self.field.unwrap_or(Field::QuadraticSqrt(2))
    }

    fn cap(&self) -> usize {
        self.max_degree.unwrap_or(SUITE_MAX_DEGREE)
    }

    /// A context with the configured kind and size, or a sampled one.
    fn context(&self, rng: &mut Sampler, vars: &[usize]) -> Context {
        let kind = self.kind.unwrap_or_else(|| *rng.pick(&[AlgebraKind::Commutative, AlgebraKind::Associative]));
        let n = self.vars.unwrap_or_else(|| *rng.pick(vars));
        Context::new(kind, n, self.field()).with_max_degree(self.cap())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseResult {
    pub suite: Suite,
    pub case: String,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for CaseResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", if self.pass { "PASS" } else { "FAIL" }, self.suite, self.case)?;
        if !self.detail.is_empty() {
            write!(f, " {}", self.detail)?;
        }
        Ok(())
    }
}

/// `Ok(detail)` passes, `Err(witness)` fails.
type Verdict = Result<String, String>;

struct Report {
    suite: Suite,
    lines: Vec<CaseResult>,
}

impl Report {
    fn new(suite: Suite) -> Report {
        Report { suite, lines: Vec::new() }
    }

    fn case(&mut self, case: impl Into<String>, check: impl FnOnce() -> endw::Result<Verdict>) {
        let (pass, detail) = match check() {
            Ok(Ok(d)) => (true, d),
            Ok(Err(w)) => (false, w),
            Err(e) => (false, format!("error: {e}")),
        };
        self.lines.push(CaseResult { suite: self.suite, case: case.into(), pass, detail });
    }
}

fn expect(ok: bool, pass: impl FnOnce() -> String, fail: impl FnOnce() -> String) -> Verdict {
    if ok {
        Ok(pass())
    } else {
        Err(fail())
    }
}

fn describe(ctx: &Context) -> String {
    format!("{} n={}", ctx.kind, ctx.vars)
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Vec<CaseResult> {
    let mut rng = Sampler::new(cfg.seed, suite.stream());
    let mut report = Report::new(suite);
    match suite {
        Suite::Semigroup => semigroup(cfg, &mut rng, &mut report),
        Suite::Mirror => mirror(cfg, &mut rng, &mut report),
        Suite::Lemma31 => lemma31(cfg, &mut rng, &mut report),
        Suite::Lemma32_33 => lemma32_33(cfg, &mut rng, &mut report),
        Suite::Lemma34 => lemma34(cfg, &mut rng, &mut report),
        Suite::Lemma41 => lemma41(cfg, &mut rng, &mut report),
        Suite::Lemma42 => lemma42(cfg, &mut report),
        Suite::Thm1 => thm1(cfg, &mut rng, &mut report),
        Suite::Thm2 => thm2(cfg, &mut rng, &mut report),
    }
    report.lines
}

/// A random endomorphism with images of degree at most `degree`, constant
/// about one time in six.
fn sample_endo(rng: &mut Sampler, ctx: &Context, degree: usize) -> Endomorphism {
    if rng.chance(1.0 / 6.0) {
        rng.constant_endomorphism(ctx)
    } else {
        rng.endomorphism(ctx, degree, 2)
    }
}

/// Conjugation is a semigroup automorphism that fixes the identity, maps
/// constants to constants and is undone by the inverse bijection.
fn semigroup(cfg: &SuiteConfig, rng: &mut Sampler, report: &mut Report) {
    for i in 0..100 {
        let ctx = cfg.context(rng, &[2, 3]);
        // Conjugating by a nonlinear automorphism multiplies degrees by up
        // to 4, and composing two conjugates multiplies them again before
        // everything cancels. Such automorphisms are drawn only in the
        // commutative kind and only meet endomorphisms of degree 1.
        let nonlinear = !ctx.is_associative() && rng.chance(0.5);
        let mu = rng.canonical(&ctx, 3, usize::from(nonlinear));
        // In the associative kind one factor has degree at most 1, since
        // dense words of degree 9 in three letters are out of reach.
        let (ds, dt) = match (nonlinear, ctx.is_associative()) {
            (true, _) => (1, 1),
            (false, false) => (3, 3),
            (false, true) if rng.chance(0.5) => (3, 1),
            (false, true) => (1, 3),
        };
        let s = sample_endo(rng, &ctx, ds);
        let t = sample_endo(rng, &ctx, dt);
        let tag = format!("{} mu=[{mu}]", describe(&ctx));
        report.case(format!("hom-{i:03}"), || {
            let lhs = conjugate(&mu, &s.compose(&t)?)?;
            let rhs = conjugate(&mu, &s)?.compose(&conjugate(&mu, &t)?)?;
            Ok(expect(lhs == rhs, || describe(&ctx), || format!("{tag} s=[{s}] t=[{t}] lhs=[{lhs}] rhs=[{rhs}]")))
        });
        report.case(format!("id-{i:03}"), || {
            let image = conjugate(&mu, &Endomorphism::identity(ctx))?;
            Ok(expect(image.is_identity(), String::new, || format!("{tag} image=[{image}]")))
        });
        report.case(format!("const-{i:03}"), || {
            let mut constants = 0;
            for x in [&s, &t] {
                let y = conjugate(&mu, x)?;
                if x.is_constant() != y.is_constant() {
                    return Ok(Err(format!("{tag} s=[{x}] image=[{y}]")));
                }
                constants += usize::from(x.is_constant());
            }
            Ok(Ok(format!("constants={constants}")))
        });
        report.case(format!("inv-{i:03}"), || {
            let back = conjugate(&mu.inverse(), &conjugate(&mu, &s)?)?;
            Ok(expect(back == s, String::new, || format!("{tag} s=[{s}] back=[{back}]")))
        });
    }
}

/// Conjugation by the mirror differs from conjugation by every sampled
/// mirror-free canonical form, and the mirror table is anti-multiplicative.
fn mirror(cfg: &SuiteConfig, rng: &mut Sampler, report: &mut Report) {
    let n = cfg.vars.filter(|&n| n >= 2).unwrap_or(2);
    let ctx = Context::new(AlgebraKind::Associative, n, cfg.field()).with_max_degree(cfg.cap());
    let beta = CanonicalQuasiInner::new(
        endw::LinearBijection::identity(&ctx),
        endw::FieldAutomorphism::Identity,
        TameAutomorphism::identity(ctx),
        true,
    )
    .expect("associative context");
    let mut images = ctx.vars();
    images[0] = ctx.var(0).checked_mul(&ctx.var(1)).expect("degree 2");
    let s = Endomorphism::new(ctx, images).expect("context");

    report.case("anti", || {
        let laws = law_checks(&table_of(&beta)?)?;
        Ok(match laws.anti_multiplicative_witness() {
            Some(w) if laws.status(Law::Additivity).passed() && laws.status(Law::Scalar).passed() => {
                Ok(format!("witness=({}, {}) found=[{}]", w.inputs[0], w.inputs[1], w.found))
            }
            _ => Err(format!("laws={laws:?}")),
        })
    });
    let Ok(mirrored) = conjugate(&beta, &s) else {
        report.case("setup", || Ok(Err("conjugation by the mirror failed".into())));
        return;
    };
    for i in 0..50 {
        let nu = rng.canonical_with_mirror(&ctx, 3, 1, false);
        report.case(format!("separate-{i:03}"), || {
            let other = conjugate(&nu, &s)?;
            let laws = law_checks(&table_of(&nu)?)?;
            let multiplicative = laws.status(Law::Multiplicativity).passed();
            let differ = (0..n).find(|&k| other.image(k) != mirrored.image(k));
            Ok(match (differ, multiplicative) {
                (Some(k), true) => Ok(format!("x{} -> {} vs {}", k + 1, other.image(k), mirrored.image(k))),
                _ => Err(format!("nu=[{nu}] conj=[{other}] multiplicative={multiplicative}")),
            })
        });
    }
}

/// An element of `ctx` built from the generators in `letters` only.
fn element_in(rng: &mut Sampler, ctx: &Context, letters: &[usize], max_degree: usize) -> AlgebraElement {
    let mut f = ctx.scalar(rng.scalar(ctx.field));
    for _ in 0..rng.below(3) {
        let m = if letters.is_empty() {
            Monomial::unit()
        } else {
            let degree = 1 + rng.below(max_degree);
            rng.monomial(ctx, degree, letters)
        };
        let term = AlgebraElement::term(*ctx, rng.nonzero_scalar(ctx.field), m).expect("valid monomial");
        f = f.checked_add(&term).expect("same context");
    }
    f
}

/// Membership in the principal ideal of a basic element agrees with the
/// substitution criterion, on constructed members and non-members.
fn lemma31(cfg: &SuiteConfig, rng: &mut Sampler, report: &mut Report) {
    let mut member = 0;
    let mut nonmember = 0;
    for _ in 0..25 {
        let ctx = cfg.context(rng, &[2, 3]);
        let phi = rng.tame(&ctx, 2, 1);
        let index = rng.below(ctx.vars);
        let ideal = PrincipalBasicIdeal::new(BasicElementWitness::new(phi, index).expect("index in range"))
            .expect("degree within cap");
        let u = ideal.generator().clone();
        let mut annihilators = vec![ideal.annihilator_member(&Endomorphism::identity(ctx)).expect("context")];
        for _ in 0..19 {
            let rho = rng.endomorphism(&ctx, 2, 2);
            annihilators.push(ideal.annihilator_member(&rho).expect("degree within cap"));
        }
        let sample = EndoSample::new(ctx, annihilators).expect("shared context");
        let tag = format!("{} u=[{u}]", describe(&ctx));
        let others: Vec<usize> = (0..ctx.vars).filter(|&j| j != index).collect();
        for _ in 0..4 {
            let g = rng.element(&ctx, 2, 2);
            let f = if ctx.is_associative() {
                let h = rng.element(&ctx, 2, 2);
                g.checked_mul(&u).and_then(|a| a.checked_add(&u.checked_mul(&h)?))
            } else {
                g.checked_mul(&u)
            };
            report.case(format!("member-{member:03}"), || {
                let f = f?;
                let inside = in_double_prime(&f, &ideal)?;
                let killed = sample_ideal(&sample, &f)?;
                Ok(expect(inside && killed, String::new, || format!("{tag} f=[{f}] in={inside} killed={killed}")))
            });
            member += 1;

            let mut r = element_in(rng, &ctx, &others, 2);
            while r.is_zero() {
                r = element_in(rng, &ctx, &others, 2);
            }
            let g = rng.element(&ctx, 2, 2);
            report.case(format!("nonmember-{nonmember:03}"), || {
                let f = g.checked_mul(&u)?.checked_add(&ideal.witness().automorphism().apply(&r)?)?;
                let inside = in_double_prime(&f, &ideal)?;
                let killed = sample_ideal(&sample, &f)?;
                Ok(expect(!inside && !killed, String::new, || format!("{tag} f=[{f}] in={inside} killed={killed}")))
            });
            nonmember += 1;
        }
    }
}

/// Probe keys `0, 1, x_i, sqrt d, x_i x_j`.
fn decomposition_keys(ctx: &Context) -> Vec<AlgebraElement> {
    let mut keys = vec![ctx.zero(), ctx.one()];
    keys.extend(ctx.vars());
    if let Ok(root) = Scalar::sqrt_radicand(ctx.field) {
        keys.push(ctx.scalar(root));
    }
    for i in 0..ctx.vars {
        for j in 0..ctx.vars {
            if i != j && (ctx.is_associative() || i < j) {
                keys.push(ctx.var(i).checked_mul(&ctx.var(j)).expect("degree 2"));
            }
        }
    }
    keys
}

/// Every monomial of degree at most `degree`.
fn monomials(ctx: &Context, degree: usize) -> Vec<AlgebraElement> {
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    let mut frontier = words.clone();
    for _ in 0..degree {
        let mut next = Vec::new();
        for w in &frontier {
            for l in 0..ctx.vars {
                if !ctx.is_associative() && w.last().is_some_and(|&last| last > l) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    words
        .into_iter()
        .map(|w| {
            AlgebraElement::term(*ctx, Scalar::one(ctx.field), Monomial::from_letters(ctx.kind, w)).expect("valid")
        })
        .collect()
}

/// With `μ(0) = 0, μ(1) = 1` normalized away, canonical tables satisfy the
/// scalar law and proportionality, and the normalization pipeline recovers
/// every component of a canonical form from its table.
fn lemma32_33(cfg: &SuiteConfig, rng: &mut Sampler, report: &mut Report) {
    for i in 0..30 {
        let ctx = cfg.context(rng, &[2, 3]);
        let mu = rng.canonical(&ctx, 3, 1);
        report.case(format!("scalar-{i:03}"), || {
            let laws = law_checks(&table_of(&mu)?)?;
            let ok = [Law::Scalar, Law::Proportionality].iter().all(|&l| laws.status(l).passed());
            Ok(expect(ok, || describe(&ctx), || format!("mu=[{mu}] laws={laws:?}")))
        });
    }
    for i in 0..50 {
        let ctx = cfg.context(rng, &[2, 3]);
        let mu = rng.canonical(&ctx, 3, 1);
        report.case(format!("dec-{i:03}"), || {
            let table = OracleTable::from_fn(ctx, decomposition_keys(&ctx), |k| mu.apply(k))?;
            let (canon, rep) = match decompose_blackbox(&table, std::slice::from_ref(mu.automorphism())) {
                Ok(r) => r,
                Err(e) => return Ok(Err(format!("mu=[{mu}] error: {e}"))),
            };
            let same_phi = canon.automorphism().as_endomorphism()? == mu.automorphism().as_endomorphism()?;
            let parts = canon.linear() == mu.linear()
                && canon.alpha() == mu.alpha()
                && canon.mirror() == mu.mirror()
                && same_phi
                && rep.violations.is_empty();
            if !parts {
                return Ok(Err(format!("mu=[{mu}] recovered=[{canon}] violations={}", rep.violations.len())));
            }
            for m in monomials(&ctx, 4) {
                let (a, b) = (canon.apply(&m)?, mu.apply(&m)?);
                if a != b {
                    return Ok(Err(format!("mu=[{mu}] at {m}: {a} vs {b}")));
                }
            }
            Ok(Ok(describe(&ctx)))
        });
    }
}

/// Canonical tables are additive after normalization; a planted defect in
/// `μ(x1 + x2)` is reported with the pair `(x1, x2)`.
fn lemma34(cfg: &SuiteConfig, rng: &mut Sampler, report: &mut Report) {
    for i in 0..30 {
        let ctx = cfg.context(rng, &[2, 3]);
        let mu = rng.canonical(&ctx, 3, 1);
        report.case(format!("add-{i:03}"), || {
            let laws = law_checks(&table_of(&mu)?)?;
            let status = laws.status(Law::Additivity);
            Ok(expect(status.passed(), || describe(&ctx), || format!("mu=[{mu}] additivity={status:?}")))
        });
    }
    for i in 0..10 {
        let mut ctx = cfg.context(rng, &[2, 3]);
        if ctx.vars < 2 {
            ctx = Context::new(ctx.kind, 2, ctx.field).with_max_degree(ctx.max_degree);
        }
        let mu = rng.canonical(&ctx, 3, 1);
        let bump = rng.element(&ctx, 1, 2);
        report.case(format!("planted-{i:03}"), || {
            let mut table = table_of(&mu)?;
            let sum = ctx.var(0).checked_add(&ctx.var(1))?;
            let value = table.get(&sum).expect("standard key").checked_add(&bump)?;
            table.set(&sum, value)?;
            let laws = law_checks(&table)?;
            Ok(match laws.status(Law::Additivity) {
                LawStatus::Fail { witnesses } if witnesses.iter().any(|w| w.inputs == [ctx.var(0), ctx.var(1)]) => {
                    Ok(format!("witness=(x1, x2) bump=[{bump}]"))
                }
                other => Err(format!("mu=[{mu}] bump=[{bump}] additivity={other:?}")),
            })
        });
    }
}

/// Mirror-free canonical tables are multiplicative, and every bijection
/// word agrees with its canonical form.
fn lemma41(cfg: &SuiteConfig, rng: &mut Sampler, report: &mut Report) {
    for i in 0..30 {
        let ctx = cfg.context(rng, &[2, 3]);
        let mu = rng.canonical_with_mirror(&ctx, 3, 1, false);
        report.case(format!("mult-{i:03}"), || {
            let laws = law_checks(&table_of(&mu)?)?;
            let status = laws.status(Law::Multiplicativity);
            Ok(expect(status.passed(), || describe(&ctx), || format!("mu=[{mu}] multiplicativity={status:?}")))
        });
    }
    for i in 0..100 {
        let ctx = cfg.context(rng, &[2, 3]);
        let word = rng.bijection_word(&ctx, 5);
        let elements: Vec<AlgebraElement> = (0..50).map(|_| rng.element(&ctx, 4, 3)).collect();
        report.case(format!("norm-{i:03}"), || {
            let canon = normalize(&word);
            for f in &elements {
                let (a, b) = (apply_bijection(&word, f)?, canon.apply(f)?);
                if a != b {
                    return Ok(Err(format!("word=[{word}] canon=[{canon}] f=[{f}]")));
                }
            }
            Ok(Ok(describe(&ctx)))
        });
    }
}

/// The coefficient system of the product law has exactly the solutions
/// `(1, 0)` and `(0, 1)`.
fn lemma42(cfg: &SuiteConfig, report: &mut Report) {
    let mut fields = vec![Field::Rational, Field::QuadraticSqrt(2)];
    if let Some(f) = cfg.field.filter(|f| !fields.contains(f)) {
        fields.push(f);
    }
    for field in fields {
        report.case(format!("solve-{field}"), || {
            let sols = solve_product_coefficients(field)?;
            let shown: Vec<String> = sols.iter().map(|(a, b)| format!("({a},{b})")).collect();
            let shown = format!("{{{}}}", shown.join(","));
            let expected = vec![(Scalar::one(field), Scalar::zero(field)), (Scalar::zero(field), Scalar::one(field))];
            let satisfied = sols.iter().all(|(a, b)| {
                a.checked_mul(a).is_ok_and(|x| x == *a)
                    && b.checked_mul(b).is_ok_and(|x| x == *b)
                    && a.checked_mul(b).is_ok_and(|x| x.is_zero())
                    && a.checked_add(b).is_ok_and(|x| x.is_one())
            });
            Ok(expect(sols == expected && satisfied, || shown.clone(), || shown.clone()))
        });
    }
}

/// Canonical bijections map bases to bases.
fn thm1(cfg: &SuiteConfig, rng: &mut Sampler, report: &mut Report) {
    for i in 0..50 {
        let ctx = cfg.context(rng, &[2, 3]);
        let mu = rng.canonical(&ctx, 2, 1);
        let base = rng.tame(&ctx, 2, 1);
        report.case(format!("base-{i:03}"), || {
            let cert = base_image_check(&mu, &base)?;
            Ok(expect(cert.holds, || describe(&ctx), || format!("mu=[{mu}] base=[{base}] witness=[{}]", cert.witness)))
        });
    }
}

/// Central bijections are linear: linear candidates are central
/// bijections, `u^2` is central but not injective, planted tables fail the
/// commutation probes, and canonical forms differing only in their linear
/// part induce the same conjugation.
fn thm2(cfg: &SuiteConfig, rng: &mut Sampler, report: &mut Report) {
    let kind = cfg.kind.unwrap_or(AlgebraKind::Commutative);
    let ctx = Context::new(kind, cfg.vars.unwrap_or(2), cfg.field()).with_max_degree(cfg.cap());
    for i in 0..20 {
        let c = rng.nonzero_scalar(ctx.field);
        let d = rng.scalar(ctx.field);
        report.case(format!("linear-{i:03}"), || {
            let v = centrality_probe(&CentralityCandidate::Unary(vec![d.clone(), c.clone()]), &ctx, &[])?;
            Ok(match v {
                CentralityVerdict::CentralLinear { scale, offset } if scale == c && offset == d => {
                    Ok(format!("r(u) = {}", unary_text(&ctx, &[d.clone(), c.clone()])))
                }
                other => Err(format!("c={c} d={d} verdict={other:?}")),
            })
        });
    }
    report.case("square", || {
        let r = vec![Scalar::zero(ctx.field), Scalar::zero(ctx.field), Scalar::one(ctx.field)];
        Ok(match centrality_probe(&CentralityCandidate::Unary(r), &ctx, &[])? {
            CentralityVerdict::CentralNonbijective { collision: Some((u, v)), missing_preimage, .. }
                if u.pow(2)? == v.pow(2)? && u != v =>
            {
                Ok(format!("central-nonbijective collision=({u}, {v}) missing={missing_preimage}"))
            }
            other => Err(format!("verdict={other:?}")),
        })
    });
    for i in 0..10 {
        let others: Vec<usize> = (1..ctx.vars).collect();
        let mut extra = element_in(rng, &ctx, &others, 2);
        while extra.is_zero() {
            extra = element_in(rng, &ctx, &others, 2);
        }
        report.case(format!("planted-{i:03}"), || {
            let keys = endw::endaut::standard_probe_keys(&ctx);
            let mut table = OracleTable::from_fn(ctx, keys, |k| Ok(k.clone()))?;
            table.set(&ctx.var(0), ctx.var(0).checked_add(&extra)?)?;
            Ok(match centrality_probe(&CentralityCandidate::Table(table), &ctx, &[])? {
                CentralityVerdict::NotCentral(w) => {
                    Ok(format!("probe=[{}] key={} lhs={} rhs={}", w.probe, w.key, w.lhs, w.rhs))
                }
                other => Err(format!("planted x1 -> x1 + {extra}: verdict={other:?}")),
            })
        });
    }
    let mu = rng.canonical(&ctx, 3, 1);
    let other = mu.with_linear(rng.linear(&ctx)).expect("same context");
    for i in 0..20 {
        let s = sample_endo(rng, &ctx, 3);
        report.case(format!("invariance-{i:03}"), || {
            let (a, b) = (conjugate(&mu, &s)?, conjugate(&other, &s)?);
            Ok(expect(a == b, String::new, || format!("mu=[{mu}] other=[{other}] s=[{s}]")))
        });
    }
}

fn unary_text(ctx: &Context, coeffs: &[Scalar]) -> String {
    let u = ctx.var(0);
    let mut acc = ctx.zero();
    for c in coeffs.iter().rev() {
        acc = acc.checked_mul(&u).and_then(|a| a.checked_add(&ctx.scalar(c.clone()))).expect("degree 1");
    }
    acc.to_string().replace("x1", "u")
}

/// Runs the suites in order and returns the report lines.
pub fn run_suites(suites: &[Suite], cfg: &SuiteConfig) -> Vec<CaseResult> {
    suites.iter().flat_map(|&s| run_suite(s, cfg)).collect()
}
