//! The end-to-end acceptance checks, one function per criterion, shared by
//! the `acceptance` test binary and the `repro` subcommand.

use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{factorial, int, pow, to_f64, Graded, Rational, Word};
use crate::characters::{q_series, InverseFactorial};
use crate::forest::{
    enumerate_forests, enumerate_nonplanar, enumerate_words, forget_planarity, monte_carlo_volume,
    nonplanar_factorial, order_relations, planar_factorial, planar_representatives, symmetry_factor, Letter,
    PlanarForest, Relation,
};
use crate::hopf::{check_hopf_axioms, convolution, iterated_gl_word, AxiomReport, Bck, HopfAlgebra, Mkw, QuasiShuffle, Shuffle};
use crate::morphisms::{
    arborify_planar, arborify_planar_contracting, check_diagram, default_sym, omega, verify_morphism,
    ContractingPlanarArborification, PlanarArborification, Symmetrization,
};
use crate::rde::{compare_expansions, intro_expansion_check, intro_model, order_study, reference_solve, six_term_display, ChartModel};
use crate::roughpath::{
    check_character, check_chen, extend, DyadicGrid, Lift, PiecewisePolyPath, PullbackLift,
    SignatureLift, TruncatedLift,
};
use crate::{hopf::FreeCommutative, Result};

/// One named sub-check of a criterion.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// Documented as unattainable: the check must fail, and passing is an error.
    pub expected_failure: bool,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
            expected_failure: false,
        }
    }

    fn expect_failure(mut self) -> Self {
        self.expected_failure = true;
        self
    }

    /// Whether the outcome matches what is documented.
    pub fn as_documented(&self) -> bool {
        self.passed != self.expected_failure
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: usize,
    pub title: String,
    pub checks: Vec<Check>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// No check deviates from its documented outcome.
    pub fn as_documented(&self) -> bool {
        self.checks.iter().all(Check::as_documented)
    }

    /// One line: `criterion N (title): PASS|FAIL [notes]`.
    pub fn summary_line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut line = format!("criterion {} ({}): {status}", self.id, self.title);
        let failing: Vec<String> = self
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| {
                let tag = if c.expected_failure { "documented failure" } else { "failed" };
                format!("{tag}: {} ({})", c.name, c.detail)
            })
            .collect();
        if !failing.is_empty() {
            line.push_str(" [");
            line.push_str(&failing.join("; "));
            line.push(']');
        }
        for c in self.checks.iter().filter(|c| c.passed && c.expected_failure) {
            line.push_str(&format!(" [unexpected pass: {}]", c.name));
        }
        line
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.summary_line())?;
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            writeln!(f, "  {mark} {}: {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

pub const CRITERIA: [(usize, &str); 9] = [
    (1, "Hopf axioms"),
    (2, "factorial identities"),
    (3, "character identities"),
    (4, "morphisms"),
    (5, "signatures and lifts"),
    (6, "extension"),
    (7, "GL expansion"),
    (8, "RDE order study"),
    (9, "intro expansion"),
];

fn axioms(r: AxiomReport) -> Check {
    let total: usize = r.checked.iter().map(|(_, n)| n).sum();
    let detail = match &r.violation {
        None => format!("{total} instances to degree {}", r.max_degree),
        Some(v) => format!("{}: {}", v.axiom, v.witness),
    };
    Check::new(r.algebra.clone(), r.passed(), detail)
}

fn named(mut c: Check, name: &str) -> Check {
    c.name = name.into();
    c
}

pub fn hopf_axioms() -> Vec<Check> {
    vec![
        axioms(check_hopf_axioms(&Shuffle::new(2), 5)),
        named(axioms(check_hopf_axioms(&QuasiShuffle::new(2), 5)), "quasi-shuffle, 2 generators"),
        named(axioms(check_hopf_axioms(&QuasiShuffle::new(3), 5)), "quasi-shuffle, 3 generators"),
        axioms(check_hopf_axioms(&Bck::new(2), 5)),
        axioms(check_hopf_axioms(&Mkw::new(2), 5)),
    ]
}

fn inv(n: num_bigint::BigUint) -> Rational {
    Rational::one() / Rational::from_integer(n.into())
}

/// First failing item of an exhaustive loop, with the number checked.
fn exhaustive<T: fmt::Display>(items: impl IntoIterator<Item = T>, ok: impl Fn(&T) -> bool) -> (usize, Option<String>) {
    let mut n = 0;
    for x in items {
        n += 1;
        if !ok(&x) {
            return (n, Some(x.to_string()));
        }
    }
    (n, None)
}

fn exhaustive_check<T: fmt::Display>(name: &str, items: impl IntoIterator<Item = T>, ok: impl Fn(&T) -> bool) -> Check {
    match exhaustive(items, ok) {
        (n, None) => Check::new(name, true, format!("{n} instances")),
        (_, Some(w)) => Check::new(name, false, format!("witness {w}")),
    }
}

fn forests_to(max: usize, d: usize) -> Vec<PlanarForest> {
    (1..=max).flat_map(|n| enumerate_forests(n, d).expect("within caps")).collect()
}

pub fn factorial_identities() -> Vec<Check> {
    let shapes = forests_to(6, 1);
    let planar = exhaustive_check("planar factorial times ≪-extensions is n!", shapes.iter(), |f| {
        planar_factorial(f) * order_relations(f).linear_extension_count(Relation::Planar) == factorial(f.degree())
    });
    let hook = exhaustive_check("hook product times <-extensions is n!", shapes.iter(), |f| {
        nonplanar_factorial(&forget_planarity(f)) * order_relations(f).linear_extension_count(Relation::Ancestor)
            == factorial(f.degree())
    });
    let nonplanar: Vec<_> = (1..=6).flat_map(|n| enumerate_nonplanar(n, 2).expect("within caps")).collect();
    let volumes = exhaustive_check("Σ Sym(σ)/σ! over planar representatives is 1/f!", nonplanar.iter(), |g| {
        let sum: Rational = planar_representatives(g)
            .iter()
            .map(|s| Rational::from_integer(symmetry_factor(s).into()) * inv(planar_factorial(s)))
            .sum();
        sum == inv(nonplanar_factorial(g))
    });
    let suite = ["a[b[c],d]", "a b[c]", "c a[b]", "a[b,c,d]", "a[b[c[d]]] e"];
    let cases: Vec<(usize, &str, Relation)> = suite
        .iter()
        .enumerate()
        .flat_map(|(i, s)| [(i, *s, Relation::Planar), (i, *s, Relation::Ancestor)])
        .collect();
    let worst = cases
        .par_iter()
        .map(|&(i, s, rel)| {
            let f = PlanarForest::parse(s, 26).expect("valid forest");
            let exact = match rel {
                Relation::Ancestor => to_f64(&inv(nonplanar_factorial(&forget_planarity(&f)))),
                _ => to_f64(&inv(planar_factorial(&f))),
            };
            let e = monte_carlo_volume(&f, rel, 1_000_000, 100 + i as u64);
            if e.stderr == 0.0 {
                if e.estimate == exact { 0.0 } else { f64::INFINITY }
            } else {
                (e.estimate - exact).abs() / e.stderr
            }
        })
        .reduce(|| 0.0, f64::max);
    vec![
        planar,
        hook,
        volumes,
        Check::new(
            "Monte-Carlo volumes within 4σ",
            worst <= 4.0,
            format!("{} estimates of 10^6 samples, worst deviation {worst:.2}σ", cases.len()),
        ),
    ]
}

pub fn character_identities() -> Vec<Check> {
    let mkw = Arc::new(Mkw::new(2));
    let q = Arc::new(InverseFactorial::new(mkw.clone()));
    let qf = q.functional(6);
    let sq = convolution(mkw.clone(), &qf, &qf);
    let all = forests_to(6, 2);
    let square = exhaustive_check("q∗q = 2^|x| q on MKW", all.iter(), |f| {
        sq.eval(f).expect("within cap") == Rational::from_integer((1i64 << f.degree()).into()) * q.value(f)
    });
    let binomial = exhaustive_check("Hopf binomial residual for (1,1) and (2,3)", all.iter(), |f| {
        [(int(1), int(1)), (int(2), int(3))]
            .iter()
            .all(|(a, b)| q.binomial_residual(f, a, b).is_zero())
    });
    let q_sh = InverseFactorial::new(Arc::new(Shuffle::new(2)));
    let through_words = exhaustive_check("q_MKW = q_shuffle ∘ 𝔞_≪", all.iter(), |f| {
        q_series(&q_sh, &arborify_planar(f)) == q.value(f)
    });
    let q_bck = InverseFactorial::new(Arc::new(Bck::new(2)));
    let nonplanar: Vec<_> = (1..=6).flat_map(|n| enumerate_nonplanar(n, 2).expect("within caps")).collect();
    let through_omega = exhaustive_check("q_BCK = q_MKW ∘ Ω", nonplanar.iter(), |g| {
        q_series(&q, &omega(g)) == q_bck.value(g)
    });
    vec![square, binomial, through_words, through_omega]
}

fn morphism(r: AxiomReport) -> Check {
    axioms(r)
}

pub fn morphism_suite() -> Vec<Check> {
    let contracting = morphism(verify_morphism(&ContractingPlanarArborification::new(2), 5)).expect_failure();
    let diagram = check_diagram(5, 2, default_sym());
    let s = FreeCommutative::new(3);
    let pf = |t: &str| PlanarForest::parse(t, 26).expect("valid forest");
    let examples = [
        ("𝔞_≪(a[b] c)", arborify_planar(&pf("a[b] c")).compact(), "bac"),
        ("𝔞_≪(c a[b])", arborify_planar(&pf("c a[b]")).compact(), "bca+cba"),
        (
            "𝔞^c_≪(c a[b])",
            arborify_planar_contracting(&pf("c a[b]"), &s).map(|x| x.compact()).unwrap_or_default(),
            "bca+cba+[b+c]a",
        ),
    ];
    let mut checks = vec![
        morphism(verify_morphism(&PlanarArborification::new(2), 5)),
        contracting,
        morphism(verify_morphism(&Symmetrization::new(2), 5)),
        Check::new(
            "𝔞_≪ ∘ Ω = 𝔞",
            diagram.simple.is_none(),
            match &diagram.simple {
                None => format!("{} forests", diagram.checked),
                Some(v) => v.witness.clone(),
            },
        ),
    ];
    for (name, got, want) in examples {
        checks.push(Check::new(name, got == want, format!("got \"{got}\", expected \"{want}\"")));
    }
    checks
}

fn residual(name: &str, r: Result<crate::roughpath::ResidualReport>) -> Check {
    match r {
        Ok(r) => Check::new(name, r.passed(), r.to_string()),
        Err(e) => Check::new(name, false, e.to_string()),
    }
}

pub fn signature_suite() -> Vec<Check> {
    let cubic = Arc::new(PiecewisePolyPath::moment_curve(3, int(0), int(1)));
    let sig = SignatureLift::new(cubic, 5);
    let (s, u, t) = (Rational::new(1.into(), 5.into()), Rational::new(1.into(), 2.into()), Rational::new(9.into(), 10.into()));
    let shuffle = residual("shuffle identity to degree 5", check_character(&Shuffle::new(3), &sig, &s, &t, 5, 0.0));
    let chen = residual("Chen identity to degree 5", check_chen(&Shuffle::new(3), &sig, (&s, &u, &t), 5, 0.0));
    let diagonal = Arc::new(PiecewisePolyPath::diagonal(2, int(0), int(1)));
    let planar = PullbackLift::planar(diagonal.clone(), 6);
    let (a, b) = (Rational::new(1.into(), 7.into()), Rational::new(5.into(), 6.into()));
    let all = forests_to(6, 2);
    let volume = exhaustive_check("planar volume law to degree 6", all.iter(), |f| {
        planar.eval(&a, &b, f).ok() == Some(pow(&(&b - &a), f.degree()) * inv(planar_factorial(f)))
    });
    let branched = PullbackLift::branched(diagonal, 6);
    let nonplanar: Vec<_> = (1..=6).flat_map(|n| enumerate_nonplanar(n, 2).expect("within caps")).collect();
    let branched_volume = exhaustive_check("branched volume law to degree 6", nonplanar.iter(), |g| {
        branched.eval(&a, &b, g).ok() == Some(pow(&(&b - &a), g.degree()) * inv(nonplanar_factorial(g)))
    });
    vec![shuffle, chen, volume, branched_volume]
}

pub fn extension_theorem() -> Vec<Check> {
    let path = Arc::new(PiecewisePolyPath::moment_curve(2, int(0), int(1)));
    let exact = SignatureLift::new(path.clone(), 2);
    let base = TruncatedLift::new(SignatureLift::new(path, 1), 1);
    let h = Shuffle::new(2);
    let grid = DyadicGrid::new(int(0), int(1), 12).expect("valid grid");
    let ext = match extend(&h, base, grid, 1.0, int(0)) {
        Ok(e) => e,
        Err(e) => return vec![Check::new("extension", false, e.to_string())],
    };
    let eps = ext.epsilon();
    let coarse = ext.grid().coarsen(5).points();
    let mut worst = 0.0f64;
    for x in h.basis(2) {
        for s in &coarse {
            for t in &coarse {
                let got = ext.eval(s, t, &x).unwrap_or(f64::INFINITY);
                let want = to_f64(&exact.eval(s, t, &x).expect("exact signature"));
                worst = worst.max((got - want).abs());
            }
        }
    }
    let mut slopes = Vec::new();
    let mut slope_ok = true;
    for (x, r) in ext.reports() {
        match r.slope {
            Some(sl) => {
                slope_ok &= (sl + eps).abs() <= 0.1 * eps;
                slopes.push(format!("{x}: {sl:.3}"));
            }
            None => {
                slope_ok = false;
                slopes.push(format!("{x}: none"));
            }
        }
    }
    let last = ext.grid().len() - 1;
    let triples = [(0, last / 4, last), (17, 3 * last / 4, 99), (last, 0, last / 2), (5, 2000, 3001)];
    let chen = residual("Chen residual identity", ext.chen_residual(&triples, 1e-3));
    vec![
        Check::new(
            "degree-2 values within 1e-3",
            worst <= 1e-3,
            format!("max error {worst:.3e} on the 33-point sub-grid, ε = {eps}"),
        ),
        Check::new("dyadic slope −ε ± 10% on n = 4..12", slope_ok, slopes.join(", ")),
        chen,
    ]
}

pub fn gl_expansion() -> Vec<Check> {
    let d = 3;
    let letters: Vec<Letter> = (0..d).map(Letter::new).collect();
    let mut mismatch = None;
    let mut n = 0;
    for i in &letters {
        for j in &letters {
            for k in &letters {
                n += 1;
                let w = Word::new(vec![i.clone(), j.clone(), k.clone()]);
                if iterated_gl_word(&w) != six_term_display(k, j, i) && mismatch.is_none() {
                    mismatch = Some(format!("•{k} ∗ •{j} ∗ •{i}"));
                }
            }
        }
    }
    let six = Check::new(
        "•_k ∗ •_j ∗ •_i six-term display",
        mismatch.is_none(),
        mismatch.unwrap_or_else(|| format!("{n} letter triples over 3 letters")),
    );
    let words: Vec<Word> = (1..=6).flat_map(|n| enumerate_words(n, 2)).collect();
    let mass = exhaustive_check("iterated GL word mass is n!", words.iter(), |w| {
        let s = iterated_gl_word(w);
        s.mass() == Rational::from_integer(factorial(w.len()).into()) && s.has_positive_integer_coefficients()
    });
    let path = Arc::new(PiecewisePolyPath::moment_curve(2, int(0), int(1)));
    let y = [Rational::new(1.into(), 2.into()), Rational::new((-1).into(), 3.into())];
    let (s, t) = (Rational::new(1.into(), 4.into()), Rational::new(5.into(), 6.into()));
    let two_sided = match compare_expansions(Arc::new(intro_model()), &path, (&s, &t), &y, 4) {
        Ok(c) => Check::new(
            "word and forest expansions agree to degree 4",
            c.series_agree() && c.values_agree(),
            c.witness()
                .unwrap_or_else(|| format!("{} forests, {} evaluations", c.forest_side.len(), c.word_values.len())),
        ),
        Err(e) => Check::new("word and forest expansions agree to degree 4", false, e.to_string()),
    };
    vec![six, mass, two_sided]
}

fn line() -> Arc<PiecewisePolyPath> {
    Arc::new(PiecewisePolyPath::diagonal(1, int(0), int(1)))
}

fn slopes_check(name: &str, study: &crate::rde::OrderStudy, degrees: &[usize]) -> Check {
    let ok = degrees
        .iter()
        .all(|n| study.slopes.iter().any(|(m, s)| m == n && (s - *n as f64).abs() <= 0.2));
    let detail: Vec<String> = study.slopes.iter().map(|(n, s)| format!("N={n}: {s:.3}")).collect();
    Check::new(name, ok, detail.join(", "))
}

fn rotate_z(y: &[f64]) -> Vec<f64> {
    let (s, c) = 1f64.sin_cos();
    vec![c * y[0] - s * y[1], s * y[0] + c * y[1], y[2]]
}

pub fn rde_order_study() -> Vec<Check> {
    let degrees = [1, 2, 3];
    let steps: Vec<usize> = (4..=9).map(|e| 1usize << e).collect();
    let y0 = [0.6, 0.0, 0.8];
    let run = |model: ChartModel, path: Arc<PiecewisePolyPath>, y0: &[f64]| {
        order_study(Arc::new(model), path, y0, &degrees, &steps, 64)
    };
    let bent = Arc::new(
        PiecewisePolyPath::polynomial(
            vec![
                crate::roughpath::UniPoly::monomial(Rational::one(), 1),
                crate::roughpath::UniPoly::monomial(Rational::new(1.into(), 2.into()), 2),
            ],
            int(0),
            int(1),
        )
        .expect("valid path"),
    );
    let mut checks = Vec::new();
    match run(ChartModel::exponential(), line(), &[1.0]) {
        Ok(st) => checks.push(slopes_check("exponential slopes N ± 0.2", &st, &degrees)),
        Err(e) => checks.push(Check::new("exponential slopes N ± 0.2", false, e.to_string())),
    }
    match run(ChartModel::sphere_constant(&[2, 0]).expect("valid model"), bent, &y0) {
        Ok(st) => {
            checks.push(slopes_check("S² non-commuting slopes N ± 0.2", &st, &degrees));
            let worst = st
                .rows
                .iter()
                .map(|r| r.drift_rate.unwrap_or(f64::INFINITY) / (10.0 * r.h.powi(r.degree as i32)))
                .fold(0.0f64, f64::max);
            checks.push(Check::new(
                "S² drift ≤ 10 h^N per unit time",
                worst <= 1.0,
                format!("worst drift / (10 h^N) = {worst:.3}"),
            ));
        }
        Err(e) => checks.push(Check::new("S² non-commuting slopes N ± 0.2", false, e.to_string())),
    }
    let rotation = ChartModel::sphere_constant(&[2]).expect("valid model");
    let exact = rotate_z(&y0);
    let reference = reference_solve(&rotation, &line(), 64, &y0).map(|tr| tr.endpoint().to_vec());
    match (run(rotation, line(), &y0), reference) {
        (Ok(st), Ok(reference)) => {
            let ref_err = reference.iter().zip(&exact).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
            let rows: Vec<_> = st.rows.iter().filter(|r| r.degree == 3).collect();
            let c3 = rows.iter().map(|r| r.error / r.h.powi(3)).fold(0.0f64, f64::max);
            let finest = rows.iter().min_by(|a, b| a.h.total_cmp(&b.h)).expect("rows");
            let tr = crate::rde::solve(
                Arc::new(ChartModel::sphere_constant(&[2]).expect("valid model")),
                line(),
                &crate::rde::uniform_grid(&int(0), &int(1), finest.steps),
                3,
                &y0,
            );
            let (ok, detail) = match tr {
                Ok(tr) => {
                    let err = tr.endpoint().iter().zip(&exact).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
                    let bound = c3 * finest.h.powi(3);
                    (
                        err <= bound * (1.0 + 1e-6) + 1e-12 && ref_err <= 1e-12,
                        format!("|Y − R_z(1)y₀| = {err:.3e} ≤ {bound:.3e} (C₃ = {c3:.4}); reference error {ref_err:.1e}"),
                    )
                }
                Err(e) => (false, e.to_string()),
            };
            checks.push(Check::new("R_z(1)y₀ within the measured N=3 bound", ok, detail));
        }
        (Err(e), _) | (_, Err(e)) => checks.push(Check::new("R_z(1)y₀ within the measured N=3 bound", false, e.to_string())),
    }
    checks
}

pub fn intro_expansion() -> Vec<Check> {
    match intro_expansion_check(Arc::new(intro_model())) {
        Ok(r) => {
            let detail = match r.first_mismatch() {
                None => format!("{} words of degree ≤ 3 on the translation model with n = d = 2", r.rows.len()),
                Some(row) => format!("mismatch at word {}", row.word),
            };
            vec![Check::new("degree ≤ 3 coefficients match the five-forest display", r.passed(), detail)]
        }
        Err(e) => vec![Check::new("intro expansion", false, e.to_string())],
    }
}

/// Runs criterion `id` (1 to 9).
pub fn run_criterion(id: usize) -> Option<CriterionReport> {
    let (_, title) = CRITERIA.iter().find(|(i, _)| *i == id)?;
    let start = Instant::now();
    let checks = match id {
        1 => hopf_axioms(),
        2 => factorial_identities(),
        3 => character_identities(),
        4 => morphism_suite(),
        5 => signature_suite(),
        6 => extension_theorem(),
        7 => gl_expansion(),
        8 => rde_order_study(),
        _ => intro_expansion(),
    };
    Some(CriterionReport {
        id,
        title: (*title).into(),
        checks,
        elapsed: start.elapsed(),
    })
}

/// Runs every criterion, in order.
pub fn run_all() -> Vec<CriterionReport> {
    CRITERIA.iter().filter_map(|(id, _)| run_criterion(*id)).collect()
}
