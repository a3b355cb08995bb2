use std::collections::BTreeSet;
use std::sync::Arc;

use planar_rough::algebra::{factorial, to_f64, Graded, Rational, Series, Word};
use planar_rough::characters::{InverseFactorial, QGamma};
use planar_rough::forest::{
    count_forests, enumerate_forests_capped, enumerate_nonplanar, forget_planarity, monte_carlo_volume,
    nonplanar_factorial, order_relations, planar_factorial, NonplanarForest, PlanarForest, Relation,
    MAX_ALPHABET, MAX_VERTICES,
};
use planar_rough::hopf::{
    antipode, fmt_tensor, gl_product, gl_product_dual, iterated_gl_word, iterated_gl_word_by_extensions,
    product_series, Bck, FreeCommutative, HopfAlgebra, Mkw, QuasiShuffle, Shuffle,
};
use planar_rough::io::{holder_table_csv, lift_table_csv, order_study_csv, series_json, tensor_json, trajectory_csv};
use planar_rough::morphisms::{
    arborify_nonplanar, arborify_nonplanar_contracting, arborify_planar, arborify_planar_by_extensions,
    arborify_planar_contracting, arborify_planar_contracting_by_surjections, omega,
};
use planar_rough::rde::{order_study, solve, uniform_grid};
use planar_rough::repro::{run_all, run_criterion, CriterionReport, CRITERIA};
use planar_rough::roughpath::{
    check_chen, extend, holder_table, signature, BasisKind, DyadicGrid, Lift, PiecewisePolyPath, PullbackLift, Scalar,
    SignatureLift, TabulatedLift, TruncatedLift,
};
use serde_json::{json, Value};

use crate::config::Config;
use crate::inputs;
use crate::report::{CheckLine, Failure, Inputs, Outcome};
use crate::{Algebra, Basis, Command, PathArgs};

type Out = Result<Outcome, Failure>;

pub fn dispatch(cmd: &Command, cfg: &Config, io: &mut Inputs) -> Out {
    match cmd {
        Command::Forests {
            n,
            d,
            count,
            nonplanar,
        } => forests(*n, *d, *count, *nonplanar, cfg),
        Command::Factorial {
            forest,
            nonplanar,
            samples,
        } => factorial_cmd(forest, *nonplanar, *samples, cfg),
        Command::Coproduct {
            element,
            algebra,
            antipode,
        } => coproduct(element, *algebra, *antipode, cfg),
        Command::Gl { u, v, word } => gl(u.as_deref(), v.as_deref(), word.as_deref(), cfg),
        Command::Arborify {
            forest,
            nonplanar,
            contracting,
        } => arborify(forest, *nonplanar, *contracting, cfg),
        Command::Omega { forest } => omega_cmd(forest, cfg),
        Command::Axioms { algebra, degree } => axioms(*algebra, *degree, cfg),
        Command::Signature { path, word, s, t } => signature_cmd(path, word, s, t, cfg, io),
        Command::Lift {
            path,
            basis,
            degree,
            times,
        } => lift(path, *basis, *degree, times, cfg, io),
        Command::ChenCheck {
            path,
            basis,
            degree,
            s,
            u,
            t,
        } => chen(path, *basis, *degree, (s, u, t), cfg, io),
        Command::Holder { path, basis, degree } => holder(path, *basis, *degree, cfg, io),
        Command::Extend {
            path,
            basis,
            degree,
            origin,
        } => extend_cmd(path, *basis, *degree, origin, cfg, io),
        Command::Solve {
            model,
            path,
            degree,
            steps,
            y0,
        } => solve_cmd(model, path, *degree, *steps, y0, cfg, io),
        Command::OrderStudy {
            model,
            path,
            degrees,
            steps,
            ratio,
            y0,
            slope_tolerance,
        } => order_cmd(model, path, degrees, steps, *ratio, y0, *slope_tolerance, cfg, io),
        Command::Repro { criterion } => repro(*criterion),
    }
}

fn planar(text: &str, cfg: &Config) -> Result<PlanarForest, Failure> {
    let f = PlanarForest::parse(text, cfg.parse_alphabet())?;
    cfg.admit("forest", f.degree())?;
    Ok(f)
}

fn nonplanar(text: &str, cfg: &Config) -> Result<NonplanarForest, Failure> {
    let f = NonplanarForest::parse(text, cfg.parse_alphabet())?;
    cfg.admit("forest", f.degree())?;
    Ok(f)
}

fn word(text: &str, cfg: &Config) -> Result<Word, Failure> {
    let w = Word::parse(text, cfg.parse_alphabet())?;
    cfg.admit("word", w.len())?;
    Ok(w)
}

fn equality<T: PartialEq + std::fmt::Display>(name: &str, got: &T, oracle: &T) -> CheckLine {
    if got == oracle {
        CheckLine::new(name, true, format!("both routes give {got}"))
    } else {
        CheckLine::new(name, false, format!("{got} ≠ {oracle}"))
    }
}

/// A table goes to `--output` when given, to stdout otherwise.
fn table(csv: String, cfg: &Config) -> Result<(String, Value), Failure> {
    match &cfg.output {
        Some(p) => {
            std::fs::write(p, &csv).map_err(|e| Failure::Runtime(format!("{}: {e}", p.display())))?;
            Ok((format!("wrote {}", p.display()), json!({ "output": p })))
        }
        None => Ok((csv.clone(), json!({ "csv": csv }))),
    }
}

fn forests(n: usize, d: usize, count: bool, nonplanar: bool, cfg: &Config) -> Out {
    if d == 0 || d > MAX_ALPHABET {
        return Err(Failure::Usage(format!("alphabet size {d} is outside 1..={MAX_ALPHABET}")));
    }
    if nonplanar {
        cfg.admit("enumeration", n)?;
        let list = enumerate_nonplanar(n, d)?;
        let classes: BTreeSet<NonplanarForest> = enumerate_forests_capped(n, d, cfg.max_degree)?
            .iter()
            .map(forget_planarity)
            .collect();
        let check = CheckLine::new(
            "planar forests up to planarity",
            classes.len() == list.len(),
            format!("{} classes, {} enumerated", classes.len(), list.len()),
        );
        let names: Vec<String> = list.iter().map(ToString::to_string).collect();
        let text = if count { list.len().to_string() } else { names.join("\n") };
        return Ok(Outcome::new(text, json!({ "count": list.len(), "forests": names })).check(check));
    }
    let formula = count_forests(n, d);
    if count && n > cfg.max_degree {
        return Ok(Outcome::new(formula.to_string(), json!({ "count": formula.to_string() })));
    }
    cfg.admit("enumeration", n)?;
    let list = enumerate_forests_capped(n, d, cfg.max_degree)?;
    let check = CheckLine::new(
        "count formula C_n d^n",
        formula == list.len().into(),
        format!("formula {formula}, enumerated {}", list.len()),
    );
    let names: Vec<String> = list.iter().map(ToString::to_string).collect();
    let text = if count { formula.to_string() } else { names.join("\n") };
    Ok(Outcome::new(text, json!({ "count": formula.to_string(), "forests": if count { vec![] } else { names } })).check(check))
}

fn factorial_cmd(text: &str, np: bool, samples: Option<u64>, cfg: &Config) -> Out {
    let (f, value, rel) = if np {
        let g = nonplanar(text, cfg)?;
        (g.to_planar(), nonplanar_factorial(&g), Relation::Ancestor)
    } else {
        let f = planar(text, cfg)?;
        let v = planar_factorial(&f);
        (f, v, Relation::Planar)
    };
    let n = f.degree();
    if n > MAX_VERTICES {
        return Err(Failure::Cap(format!("{n} vertices, at most {MAX_VERTICES} supported")));
    }
    let ext = order_relations(&f).linear_extension_count(rel);
    let order = if np { "<" } else { "≪" };
    let mut out = Outcome::new(
        value.to_string(),
        json!({ "forest": text, "factorial": value.to_string(), "linear_extensions": ext.to_string() }),
    )
    .check(CheckLine::new(
        "linear-extension oracle",
        &value * &ext == factorial(n),
        format!("{n}!/#ext({order}) = {}/{ext}", factorial(n)),
    ));
    if let Some(m) = samples {
        let exact = 1.0 / to_f64(&Rational::from_integer(value.clone().into()));
        let e = monte_carlo_volume(&f, rel, m, cfg.seed);
        let dev = if e.stderr == 0.0 {
            if e.estimate == exact { 0.0 } else { f64::INFINITY }
        } else {
            (e.estimate - exact).abs() / e.stderr
        };
        out.result["monte_carlo"] = json!({ "estimate": e.estimate, "stderr": e.stderr, "samples": e.samples, "seed": cfg.seed });
        out = out.check(CheckLine::new(
            "Monte-Carlo volume within 4σ",
            dev <= 4.0,
            format!("estimate {:.6} vs 1/{value}, {dev:.2}σ", e.estimate),
        ));
    }
    Ok(out)
}

fn coproduct_of<H: HopfAlgebra>(h: &H, x: &H::Basis, kind: BasisKind, with_antipode: bool) -> Outcome {
    let delta = h.coproduct(x);
    let one = h.one();
    let mut left = Series::zero();
    let mut right = Series::zero();
    for ((l, r), c) in delta.iter() {
        if *l == one {
            left.add_term(r.clone(), c.clone());
        }
        if *r == one {
            right.add_term(l.clone(), c.clone());
        }
    }
    let x1 = Series::single(x.clone());
    let mut out = Outcome::new(fmt_tensor(&delta), json!({ "coproduct": tensor_json(kind, &delta) })).check(
        CheckLine::new(
            "counit",
            left == x1 && right == x1,
            format!("(ε⊗id)Δ = {left}, (id⊗ε)Δ = {right}"),
        ),
    );
    if with_antipode {
        let s = antipode(h, x);
        let mut m = Series::zero();
        for ((l, r), c) in delta.iter() {
            m.add_scaled(&product_series(h, &antipode(h, l), &Series::single(r.clone())), c);
        }
        let unit = if *x == one { Series::single(one) } else { Series::zero() };
        out.text = format!("{}\nS = {s}", out.text);
        out.result["antipode"] = serde_json::to_value(series_json(kind, &s)).expect("serializable");
        out = out.check(CheckLine::new("m(S⊗id)Δ = ηε", m == unit, format!("m(S⊗id)Δ = {m}")));
    }
    out
}

fn coproduct(text: &str, algebra: Algebra, with_antipode: bool, cfg: &Config) -> Out {
    let d = cfg.enumeration_alphabet();
    Ok(match algebra {
        Algebra::Shuffle => coproduct_of(&Shuffle::new(d), &word(text, cfg)?, BasisKind::Word, with_antipode),
        Algebra::Quasi => coproduct_of(&QuasiShuffle::new(d), &word(text, cfg)?, BasisKind::Word, with_antipode),
        Algebra::Mkw => coproduct_of(&Mkw::new(d), &planar(text, cfg)?, BasisKind::Planar, with_antipode),
        Algebra::Bck => coproduct_of(&Bck::new(d), &nonplanar(text, cfg)?, BasisKind::Nonplanar, with_antipode),
    })
}

fn gl(u: Option<&str>, v: Option<&str>, w: Option<&str>, cfg: &Config) -> Out {
    let (got, oracle, name) = match (u, v, w) {
        (None, None, Some(w)) => {
            let w = word(w, cfg)?;
            (iterated_gl_word(&w), iterated_gl_word_by_extensions(&w), "linear-extension expansion")
        }
        (Some(u), Some(v), None) => {
            let (u, v) = (planar(u, cfg)?, planar(v, cfg)?);
            cfg.admit("product", u.degree() + v.degree())?;
            let p = gl_product(&Series::single(u.clone()), &Series::single(v.clone()));
            (p, gl_product_dual(&u, &v), "dual of the MKW coproduct")
        }
        _ => return Err(Failure::Usage("gl needs either two forests or --word".into())),
    };
    let check = equality(name, &got, &oracle);
    Ok(Outcome::new(got.to_string(), serde_json::to_value(series_json(BasisKind::Planar, &got)).expect("serializable")).check(check))
}

fn arborify(text: &str, np: bool, contracting: bool, cfg: &Config) -> Out {
    let semigroup = FreeCommutative::new(cfg.parse_alphabet());
    let (got, check) = match (np, contracting) {
        (false, false) => {
            let f = planar(text, cfg)?;
            let a = arborify_planar(&f);
            let check = equality("≪-linear extensions", &a, &arborify_planar_by_extensions(&f));
            (a, check)
        }
        (false, true) => {
            let f = planar(text, cfg)?;
            let a = arborify_planar_contracting(&f, &semigroup)?;
            let check = equality("increasing ≪-surjections", &a, &arborify_planar_contracting_by_surjections(&f, &semigroup)?);
            (a, check)
        }
        (true, false) => {
            let f = nonplanar(text, cfg)?;
            let a = arborify_nonplanar(&f);
            let check = equality("planar arborification of Ω", &omega(&f).map_linear(arborify_planar), &a);
            (a, check)
        }
        (true, true) => {
            let f = nonplanar(text, cfg)?;
            let a = arborify_nonplanar_contracting(&f, &semigroup)?;
            let via = omega(&f)
                .iter()
                .map(|(t, c)| Ok(arborify_planar_contracting(t, &semigroup)?.scale(c)))
                .collect::<Result<Vec<_>, Failure>>()?
                .iter()
                .fold(Series::zero(), |acc, s| &acc + s);
            (a.clone(), equality("contracting planar arborification of Ω", &via, &a))
        }
    };
    Ok(Outcome::new(got.to_string(), serde_json::to_value(series_json(BasisKind::Word, &got)).expect("serializable")).check(check))
}

fn omega_cmd(text: &str, cfg: &Config) -> Out {
    let f = nonplanar(text, cfg)?;
    let om = omega(&f);
    let check = equality("𝔞_≪∘Ω = 𝔞", &om.map_linear(arborify_planar), &arborify_nonplanar(&f));
    Ok(Outcome::new(om.to_string(), serde_json::to_value(series_json(BasisKind::Planar, &om)).expect("serializable")).check(check))
}

fn axioms(algebra: Algebra, degree: usize, cfg: &Config) -> Out {
    cfg.admit("axiom check", degree)?;
    let d = cfg.enumeration_alphabet();
    let r = match algebra {
        Algebra::Shuffle => planar_rough::hopf::check_hopf_axioms(&Shuffle::new(d), degree),
        Algebra::Quasi => planar_rough::hopf::check_hopf_axioms(&QuasiShuffle::new(d), degree),
        Algebra::Mkw => planar_rough::hopf::check_hopf_axioms(&Mkw::new(d), degree),
        Algebra::Bck => planar_rough::hopf::check_hopf_axioms(&Bck::new(d), degree),
    };
    let checks: Vec<CheckLine> = r
        .checked
        .iter()
        .map(|(name, n)| {
            let bad = r.violation.as_ref().filter(|v| v.axiom == *name);
            match bad {
                Some(v) => CheckLine::new(name, false, v.witness.clone()),
                None => CheckLine::new(name, true, format!("{n} instances")),
            }
        })
        .chain(
            r.violation
                .as_ref()
                .filter(|v| !r.checked.iter().any(|(n, _)| *n == v.axiom))
                .map(|v| CheckLine::new(&v.axiom, false, v.witness.clone())),
        )
        .collect();
    let result = json!({
        "algebra": r.algebra,
        "max_degree": r.max_degree,
        "checked": r.checked.iter().map(|(n, k)| json!({ "axiom": n, "instances": k })).collect::<Vec<_>>(),
    });
    let mut out = Outcome::new(r.to_string(), result);
    out.checks = checks;
    Ok(out)
}

fn load_path(p: &PathArgs, io: &mut Inputs) -> Result<Arc<PiecewisePolyPath>, Failure> {
    let (s, e) = (inputs::rational(&p.start)?, inputs::rational(&p.end)?);
    Ok(Arc::new(inputs::path(&p.path, &s, &e, io)?))
}

fn signature_cmd(p: &PathArgs, w: &str, s: &str, t: &str, cfg: &Config, io: &mut Inputs) -> Out {
    let path = load_path(p, io)?;
    let w = Word::parse(w, path.dim())?;
    cfg.admit("word", w.len())?;
    let (s, t) = (inputs::rational(s)?, inputs::rational(t)?);
    let value = signature(&path, &s, &t, &w)?;
    let u = (&s + &t) / Rational::from_integer(2.into());
    let mut chen = Rational::from_integer(0.into());
    for k in 0..=w.len() {
        let (a, b) = w.split_at(k);
        chen += signature(&path, &s, &u, &a)? * signature(&path, &u, &t, &b)?;
    }
    let check = equality("Chen split at the midpoint", &value, &chen);
    Ok(Outcome::new(
        value.to_string(),
        json!({ "word": w.to_string(), "s": s.to_string(), "t": t.to_string(), "value": value.to_string() }),
    )
    .check(check))
}

fn elements<H: HopfAlgebra>(h: &H, degree: usize) -> Vec<H::Basis> {
    (1..=degree).flat_map(|n| h.basis(n)).collect()
}

fn tabulate<H, L>(h: &H, lift: &L, degree: usize, times: &[Rational], cfg: &Config) -> Out
where
    H: HopfAlgebra,
    L: Lift<H::Basis>,
{
    let els = elements(h, degree);
    let tab = TabulatedLift::tabulate(lift, times, &els)?;
    let (text, result) = table(lift_table_csv(&tab)?, cfg)?;
    let mut out = Outcome::new(text, result);
    out.result["entries"] = json!(tab.len());
    Ok(out)
}

fn lift(p: &PathArgs, basis: Basis, degree: usize, times: &str, cfg: &Config, io: &mut Inputs) -> Out {
    cfg.admit("lift", degree)?;
    let path = load_path(p, io)?;
    let times = inputs::rationals(times)?;
    let d = path.dim();
    match basis {
        Basis::Word => tabulate(&Shuffle::new(d), &SignatureLift::new(path, degree), degree, &times, cfg),
        Basis::Planar => tabulate(&Mkw::new(d), &PullbackLift::planar(path, degree), degree, &times, cfg),
        Basis::Nonplanar => tabulate(&Bck::new(d), &PullbackLift::branched(path, degree), degree, &times, cfg),
    }
}

fn chen_of<H, L>(h: &H, lift: &L, times: (&Rational, &Rational, &Rational), degree: usize) -> Out
where
    H: HopfAlgebra,
    L: Lift<H::Basis>,
{
    let r = check_chen(h, lift, times, degree, 0.0)?;
    let result = json!({ "checked": r.checked, "max_residual": r.max_residual });
    Ok(Outcome::new(r.to_string(), result).check(CheckLine::new(
        "Chen identity, exact",
        r.passed(),
        r.witness.clone().unwrap_or_else(|| format!("{} elements", r.checked)),
    )))
}

fn chen(p: &PathArgs, basis: Basis, degree: usize, (s, u, t): (&str, &str, &str), cfg: &Config, io: &mut Inputs) -> Out {
    cfg.admit("Chen check", degree)?;
    let path = load_path(p, io)?;
    let (s, u, t) = (inputs::rational(s)?, inputs::rational(u)?, inputs::rational(t)?);
    let times = (&s, &u, &t);
    let d = path.dim();
    match basis {
        Basis::Word => chen_of(&Shuffle::new(d), &SignatureLift::new(path, degree), times, degree),
        Basis::Planar => chen_of(&Mkw::new(d), &PullbackLift::planar(path, degree), times, degree),
        Basis::Nonplanar => chen_of(&Bck::new(d), &PullbackLift::branched(path, degree), times, degree),
    }
}

fn holder_of<H, L>(h: H, lift: &L, degree: usize, pairs: &[(Rational, Rational)], cfg: &Config) -> Out
where
    H: HopfAlgebra + 'static,
    L: Lift<H::Basis>,
{
    let els = elements(&h, degree);
    let q = Arc::new(InverseFactorial::new(Arc::new(h)));
    let qg = QGamma::new(q, cfg.gamma()?, cfg.precision_bits)?;
    let gamma = to_f64(qg.gamma());
    let t = holder_table(lift, gamma, pairs, &els, |x| qg.value(x).to_f64())?;
    let (text, result) = table(holder_table_csv(&t)?, cfg)?;
    let mut out = Outcome::new(text, result);
    out.result["fitted_c"] = json!(t.fitted_c);
    out.result["pairs"] = json!(t.pairs);
    Ok(out)
}

fn holder(p: &PathArgs, basis: Basis, degree: usize, cfg: &Config, io: &mut Inputs) -> Out {
    cfg.admit("Hölder table", degree)?;
    let path = load_path(p, io)?;
    let grid = DyadicGrid::new(path.start().clone(), path.end().clone(), cfg.depth.min(5))?;
    let points = grid.points();
    let pairs: Vec<(Rational, Rational)> = points
        .iter()
        .enumerate()
        .flat_map(|(i, s)| points[i + 1..].iter().map(move |t| (s.clone(), t.clone())))
        .collect();
    let d = path.dim();
    match basis {
        Basis::Word => holder_of(Shuffle::new(d), &SignatureLift::new(path, degree), degree, &pairs, cfg),
        Basis::Planar => holder_of(Mkw::new(d), &PullbackLift::planar(path, degree), degree, &pairs, cfg),
        Basis::Nonplanar => holder_of(Bck::new(d), &PullbackLift::branched(path, degree), degree, &pairs, cfg),
    }
}

fn extend_of<H, L, E>(h: &H, base: L, exact: E, grid: DyadicGrid, origin: Rational, cfg: &Config) -> Out
where
    H: HopfAlgebra,
    L: Lift<H::Basis>,
    E: Lift<H::Basis>,
{
    let gamma = to_f64(&cfg.gamma()?);
    let (s, t) = (grid.start().clone(), grid.end().clone());
    let ext = extend(h, base, grid, gamma, origin)?;
    let eps = ext.epsilon();
    let mut lines = vec!["element,value,exact,error,max_defect,slope,within_budget".to_string()];
    let mut rows = Vec::new();
    let mut slope_ok = true;
    let mut budget_ok = true;
    for (x, r) in ext.reports() {
        let value = ext.eval(&s, &t, x)?.to_f64();
        let want = exact.eval(&s, &t, x)?.to_f64();
        let slope = r.slope.map_or_else(|| "".to_string(), |v| format!("{v:e}"));
        if eps > 0.0 {
            slope_ok &= r.slope.is_some_and(|v| (v + eps).abs() <= 0.1 * eps);
        }
        budget_ok &= r.within_budget();
        lines.push(format!(
            "{x},{value:e},{want:e},{:e},{:e},{slope},{}",
            (value - want).abs(),
            r.max_defect,
            r.within_budget()
        ));
        rows.push(json!({
            "element": x.to_string(), "value": value, "exact": want, "max_defect": r.max_defect,
            "slope": r.slope, "within_budget": r.within_budget(),
        }));
    }
    let mut out = Outcome::new(lines.join("\n") + "\n", json!({ "epsilon": eps, "rows": rows }))
        .check(CheckLine::new("sewing defects within budget", budget_ok, format!("{} elements", rows.len())));
    if eps > 0.0 {
        out = out.check(CheckLine::new("dyadic slope −ε ± 10%", slope_ok, format!("ε = {eps}")));
    }
    Ok(out)
}

fn extend_cmd(p: &PathArgs, basis: Basis, degree: usize, origin: &str, cfg: &Config, io: &mut Inputs) -> Out {
    cfg.admit("extension", degree + 1)?;
    let path = load_path(p, io)?;
    let grid = DyadicGrid::new(path.start().clone(), path.end().clone(), cfg.depth)?;
    let origin = inputs::rational(origin)?;
    let d = path.dim();
    let n = degree;
    match basis {
        Basis::Word => extend_of(
            &Shuffle::new(d),
            TruncatedLift::new(SignatureLift::new(path.clone(), n), n),
            SignatureLift::new(path, n + 1),
            grid,
            origin,
            cfg,
        ),
        Basis::Planar => extend_of(
            &Mkw::new(d),
            TruncatedLift::new(PullbackLift::planar(path.clone(), n), n),
            PullbackLift::planar(path, n + 1),
            grid,
            origin,
            cfg,
        ),
        Basis::Nonplanar => extend_of(
            &Bck::new(d),
            TruncatedLift::new(PullbackLift::branched(path.clone(), n), n),
            PullbackLift::branched(path, n + 1),
            grid,
            origin,
            cfg,
        ),
    }
}

#[allow(clippy::too_many_arguments)]
fn solve_cmd(model: &str, p: &PathArgs, degree: usize, steps: usize, y0: &str, cfg: &Config, io: &mut Inputs) -> Out {
    cfg.admit("Lie–Butcher step", degree)?;
    if steps == 0 {
        return Err(Failure::Usage("steps must be positive".into()));
    }
    let model = Arc::new(inputs::model(model, io)?);
    let path = load_path(p, io)?;
    let grid = uniform_grid(path.start(), path.end(), steps);
    let tr = solve(model, path, &grid, degree, &inputs::floats(y0)?)?;
    let (text, mut result) = table(trajectory_csv(&tr)?, cfg)?;
    result["endpoint"] = json!(tr.endpoint());
    result["max_drift"] = json!(tr.max_drift());
    Ok(Outcome::new(text, result))
}

#[allow(clippy::too_many_arguments)]
fn order_cmd(
    model: &str,
    p: &PathArgs,
    degrees: &str,
    steps: &str,
    ratio: usize,
    y0: &str,
    tolerance: Option<f64>,
    cfg: &Config,
    io: &mut Inputs,
) -> Out {
    let degrees = inputs::integers(degrees)?;
    for &n in &degrees {
        cfg.admit("Lie–Butcher step", n)?;
    }
    let steps = inputs::integers(steps)?;
    if steps.contains(&0) || ratio == 0 {
        return Err(Failure::Usage("step counts and ratio must be positive".into()));
    }
    let model = Arc::new(inputs::model(model, io)?);
    let path = load_path(p, io)?;
    let study = order_study(model, path, &inputs::floats(y0)?, &degrees, &steps, ratio)?;
    let (text, mut result) = table(order_study_csv(&study)?, cfg)?;
    result["slopes"] = json!(study.slopes.iter().map(|(n, s)| json!({ "degree": n, "slope": s })).collect::<Vec<_>>());
    result["reference_steps"] = json!(study.reference_steps);
    let mut out = Outcome::new(text, result);
    if let Some(tol) = tolerance {
        for (n, s) in &study.slopes {
            out = out.check(CheckLine::new(
                format!("slope for N = {n}"),
                (s - *n as f64).abs() <= tol,
                format!("{s:.3} vs {n} ± {tol}"),
            ));
        }
    }
    Ok(out)
}

fn repro(criterion: Option<usize>) -> Out {
    let reports: Vec<CriterionReport> = match criterion {
        Some(k) => vec![run_criterion(k).ok_or_else(|| {
            Failure::Usage(format!("criterion {k} is outside 1..={}", CRITERIA.len()))
        })?],
        None => run_all(),
    };
    let text: Vec<String> = reports.iter().map(|r| r.to_string()).collect();
    let checks = reports
        .iter()
        .map(|r| CheckLine::new(format!("criterion {}: {}", r.id, r.title), r.passed(), r.summary_line()))
        .collect();
    let result = serde_json::to_value(&reports).expect("serializable");
    let mut out = Outcome::new(text.join("\n"), json!({ "criteria": result }));
    out.checks = checks;
    Ok(out)
}
