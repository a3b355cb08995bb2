mod common;

use std::sync::Arc;

use num_traits::{One, Zero};
use planar_rough::algebra::{int, rat, Rational};
use planar_rough::forest::Letter;
use planar_rough::rde::*;
use planar_rough::roughpath::{PiecewisePolyPath, PullbackLift, TruncatedLift, UniPoly};
use planar_rough::Error;

use common::pf;

fn q(n: i64, d: i64) -> Rational {
    rat(n, d)
}

fn line() -> Arc<PiecewisePolyPath> {
    Arc::new(PiecewisePolyPath::diagonal(1, int(0), int(1)))
}

/// `(t, t²/2)` on `[0, 1]`.
fn bent() -> Arc<PiecewisePolyPath> {
    let comps = vec![
        UniPoly::monomial(Rational::one(), 1),
        UniPoly::monomial(q(1, 2), 2),
    ];
    Arc::new(PiecewisePolyPath::polynomial(comps, int(0), int(1)).unwrap())
}

fn rotate_z(angle: f64, y: &[f64]) -> Vec<f64> {
    let (s, c) = angle.sin_cos();
    vec![c * y[0] - s * y[1], s * y[0] + c * y[1], y[2]]
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
}

#[test]
fn single_vertex_gives_the_coefficient_map() {
    let model = intro_model();
    for a in 0..2 {
        let op = elementary_differential(&model, &pf(if a == 0 { "a" } else { "b" })).unwrap();
        let terms: Vec<_> = op.terms().collect();
        assert_eq!(terms.len(), 2);
        for (b, (w, c)) in terms.into_iter().enumerate() {
            assert_eq!(w, &vec![b]);
            assert_eq!(c, &model.coefficients()[a][b]);
        }
    }
}

#[test]
fn ladder_and_bush_on_the_exponential_model() {
    let model = ChartModel::exponential();
    let y = Poly::var(1, 0);
    let ladder = elementary_differential(&model, &pf("a[a]")).unwrap();
    assert_eq!(ladder.to_string(), "(y1) E1");
    assert_eq!(ladder.apply(&model, &y), y);
    let pair = elementary_differential(&model, &pf("a a")).unwrap();
    assert_eq!(pair.to_string(), "(y1^2) E1 E1");
    assert!(pair.apply(&model, &y).is_zero());
    assert_eq!(pair.apply(&model, &y.mul(&y)), Poly::monomial(vec![2], int(2)));
}

#[test]
fn sphere_generator_is_a_cross_product() {
    let model = ChartModel::sphere_constant(&[2]).unwrap();
    let y1 = Poly::var(3, 0);
    let op = elementary_differential(&model, &pf("a")).unwrap();
    assert_eq!(op.apply(&model, &y1), Poly::var(3, 1).scale(&-Rational::one()));
    assert_eq!(op.apply_at(&model, &y1, &[int(1), int(0), int(0)]), Rational::zero());
    assert_eq!(model.apply_generator(2, &y1).to_string(), "-y2");
}

#[test]
fn identity_operator_evaluates_the_function() {
    let model = intro_model();
    let psi = Poly::var(2, 0).mul(&Poly::var(2, 1)).add(&Poly::constant(2, q(3, 4)));
    let y = [q(1, 2), int(5)];
    assert_eq!(apply_operator(&model, &OperatorSeries::identity(2), &psi, &y), q(13, 4));
    let single = elementary_differential(&model, &pf("b")).unwrap();
    let e0 = OperatorSeries::identity(2).concat(&single);
    assert_eq!(e0, single);
}

#[test]
fn letters_outside_the_model_are_rejected() {
    let model = ChartModel::exponential();
    assert!(matches!(
        elementary_differential(&model, &pf("a[b]")),
        Err(Error::UnknownLetter { .. })
    ));
}

#[test]
fn poly_display_and_arithmetic() {
    let p = Poly::from_terms(3, [(vec![2, 1, 0], int(1)), (vec![0, 0, 1], q(-3, 2))]).unwrap();
    assert_eq!(p.to_string(), "y1^2 y2 - 3/2 y3");
    assert_eq!(p.derivative(0).to_string(), "2 y1 y2");
    assert_eq!(p.sub(&p), Poly::zero(3));
    assert_eq!(p.degree(), Some(3));
    assert!(Poly::from_terms(2, [(vec![1], int(1))]).is_err());
    let y = [int(2), int(3), int(4)];
    assert_eq!(p.eval(&y), int(6));
    assert_eq!(p.eval_f64(&[2.0, 3.0, 4.0]), 6.0);
}

#[test]
fn degree_zero_step_is_the_identity() {
    let diffs = ElementaryDifferentials::new(Arc::new(ChartModel::exponential()));
    let lift = PullbackLift::planar(line(), 0);
    let y = [q(7, 3)];
    assert_eq!(lb_step(&diffs, &lift, (&int(0), &q(1, 2)), &y, 0).unwrap(), y.to_vec());
}

#[test]
fn exponential_step_is_the_exponential_taylor_polynomial() {
    let diffs = ElementaryDifferentials::new(Arc::new(ChartModel::exponential()));
    let lift = PullbackLift::planar(line(), 6);
    let (s, t) = (q(1, 5), q(1, 2));
    let h = &t - &s;
    let y = q(-2, 3);
    for n in 0..=6 {
        let mut taylor = Rational::zero();
        let mut term = Rational::one();
        for k in 0..=n {
            if k > 0 {
                term = term * &h / int(k as i64);
            }
            taylor += &term;
        }
        let got = lb_step(&diffs, &lift, (&s, &t), std::slice::from_ref(&y), n).unwrap();
        assert_eq!(got, vec![&y * taylor], "N = {n}");
    }
}

/// `Σ_{k≤N} h^k/k! A^k y` with `A y = e_3 × y`.
fn rotation_taylor(h: &Rational, y: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = y.to_vec();
    let mut term = y.to_vec();
    for k in 1..=n {
        term = vec![-term[1].clone(), term[0].clone(), Rational::zero()];
        let c = h.pow(k as i32) / (1..=k as i64).map(int).product::<Rational>();
        for (o, v) in out.iter_mut().zip(&term) {
            *o += &c * v;
        }
    }
    out
}

#[test]
fn sphere_step_is_the_rotation_taylor_polynomial() {
    let diffs = ElementaryDifferentials::new(Arc::new(ChartModel::sphere_constant(&[2]).unwrap()));
    let lift = PullbackLift::planar(line(), 5);
    let y = [q(3, 5), int(0), q(4, 5)];
    let (s, t) = (q(1, 8), q(3, 4));
    for n in 0..=5 {
        let got = lb_step(&diffs, &lift, (&s, &t), &y, n).unwrap();
        assert_eq!(got, rotation_taylor(&(&t - &s), &y, n), "N = {n}");
    }
}

#[test]
fn constant_translation_fields_are_exact_at_every_degree() {
    let model = ChartModel::translation(vec![vec![Poly::constant(2, q(2, 3)), Poly::constant(2, int(-1))]]).unwrap();
    let diffs = ElementaryDifferentials::new(Arc::new(model));
    let path = Arc::new(PiecewisePolyPath::polynomial(vec![UniPoly::monomial(int(1), 3)], int(0), int(1)).unwrap());
    let lift = PullbackLift::planar(path, 4);
    let y = [int(1), int(1)];
    let (s, t) = (q(1, 3), int(1));
    let dx = int(1) - q(1, 27);
    for n in 1..=4 {
        let got = lb_step(&diffs, &lift, (&s, &t), &y, n).unwrap();
        assert_eq!(got, vec![int(1) + q(2, 3) * &dx, int(1) - &dx]);
    }
}

#[test]
fn step_needs_enough_lift_degrees() {
    let model = Arc::new(ChartModel::exponential());
    let stepper = LbStepper::new(model.clone(), 3).unwrap();
    let lift = TruncatedLift::new(PullbackLift::planar(line(), 3), 2);
    assert!(matches!(
        stepper.step(&lift, &int(0), &q(1, 2), &[1.0]),
        Err(Error::DegreeCap { degree: 3, cap: 2 })
    ));
    let diffs = ElementaryDifferentials::new(model);
    assert!(lb_step(&diffs, &PullbackLift::planar(line(), 1), (&int(0), &int(1)), &[int(1)], 2).is_err());
}

#[test]
fn zero_driving_path_gives_a_constant_trajectory() {
    let path = Arc::new(PiecewisePolyPath::polynomial(vec![UniPoly::zero(), UniPoly::zero()], int(0), int(1)).unwrap());
    let model = Arc::new(ChartModel::sphere_constant(&[2, 0]).unwrap());
    let y0 = [0.6, 0.0, 0.8];
    let tr = solve(model.clone(), path.clone(), &uniform_grid(&int(0), &int(1), 8), 3, &y0).unwrap();
    assert!(tr.points.iter().all(|p| p == &y0));
    let reference = reference_solve(&model, &path, 4, &y0).unwrap();
    assert_eq!(reference.endpoint(), &y0);
}

#[test]
fn solve_validates_its_inputs() {
    let model = Arc::new(ChartModel::exponential());
    assert!(solve(model.clone(), line(), &[int(0)], 2, &[1.0]).is_err());
    assert!(solve(model.clone(), line(), &[int(0), q(1, 2), q(1, 2)], 2, &[1.0]).is_err());
    assert!(matches!(
        solve(model.clone(), line(), &[int(0), int(2)], 2, &[1.0]),
        Err(Error::OutOfDomain(_))
    ));
    assert!(solve(model.clone(), bent(), &[int(0), int(1)], 2, &[1.0]).is_err());
    assert!(solve(model, line(), &[int(0), int(1)], 2, &[1.0, 2.0]).is_err());
}

#[test]
fn exponential_trajectory_has_third_order_error() {
    let model = Arc::new(ChartModel::exponential());
    let h = 2f64.powi(-6);
    let tr = solve(model, line(), &uniform_grid(&int(0), &int(1), 64), 3, &[1.5]).unwrap();
    let err = (tr.endpoint()[0] - 1.5 * std::f64::consts::E).abs();
    assert!(err > 0.0 && err < h.powi(3), "error {err}");
    assert_eq!(tr.times.len(), 65);
    assert_eq!(tr.degree, Some(3));
    assert!(tr.max_drift().is_none());
}

#[test]
fn reference_integrator_matches_closed_forms() {
    let exp = ChartModel::exponential();
    let tr = reference_solve(&exp, &line(), 64, &[1.5]).unwrap();
    assert!((tr.endpoint()[0] - 1.5 * std::f64::consts::E).abs() < 1e-12);
    let sphere = ChartModel::sphere_constant(&[2]).unwrap();
    let y0 = [0.6, 0.0, 0.8];
    let tr = reference_solve(&sphere, &line(), 64, &y0).unwrap();
    assert!(max_diff(tr.endpoint(), &rotate_z(1.0, &y0)) < 1e-12);
    assert!(tr.max_drift().unwrap() < 1e-13);
}

#[test]
fn reference_integrator_follows_kinked_paths() {
    let p = |c: &[i64]| UniPoly::new(c.iter().map(|&x| int(x)).collect());
    let path = PiecewisePolyPath::new(vec![int(0), int(1), int(3)], vec![vec![p(&[0, 2])], vec![p(&[3, -1])]]).unwrap();
    let tr = reference_solve(&ChartModel::exponential(), &path, 32, &[1.0]).unwrap();
    assert!((tr.endpoint()[0] - 1.0).abs() < 1e-12);
    assert!((tr.points[32][0] - 2f64.exp()).abs() < 1e-11);
}

#[test]
fn sphere_rotation_endpoint_and_drift() {
    let model = Arc::new(ChartModel::sphere_constant(&[2]).unwrap());
    let y0 = [0.6, 0.0, 0.8];
    let exact = rotate_z(1.0, &y0);
    for n in 1..=3 {
        let h = 2f64.powi(-6);
        let tr = solve(model.clone(), line(), &uniform_grid(&int(0), &int(1), 64), n, &y0).unwrap();
        let err = max_diff(tr.endpoint(), &exact);
        assert!(err < h.powi(n as i32), "N = {n}: error {err}");
        assert!(tr.max_drift().unwrap() <= 10.0 * h.powi(n as i32), "N = {n}");
    }
}

#[test]
fn order_study_on_non_commuting_sphere_fields() {
    let model = Arc::new(ChartModel::sphere_constant(&[2, 0]).unwrap());
    let y0 = [0.6, 0.0, 0.8];
    let steps: Vec<usize> = (4..=9).map(|e| 1usize << e).collect();
    let study = order_study(model, bent(), &y0, &[1, 2, 3], &steps, 64).unwrap();
    assert_eq!(study.reference_steps, 512 * 64);
    for (n, slope) in &study.slopes {
        assert!((slope - *n as f64).abs() <= 0.2, "N = {n}: slope {slope}");
    }
    for r in &study.rows {
        assert!(r.drift_rate.unwrap() <= 10.0 * r.h.powi(r.degree as i32), "{r:?}");
    }
}

#[test]
fn order_study_on_the_exponential() {
    let steps: Vec<usize> = (4..=9).map(|e| 1usize << e).collect();
    let study = order_study(Arc::new(ChartModel::exponential()), line(), &[1.0], &[1, 2, 3], &steps, 64).unwrap();
    for (n, slope) in &study.slopes {
        assert!((slope - *n as f64).abs() <= 0.2, "N = {n}: slope {slope}");
    }
    assert!((study.reference_endpoint[0] - std::f64::consts::E).abs() < 1e-10);
}

#[test]
fn composed_steps_agree_to_truncation_order() {
    let model = Arc::new(ChartModel::sphere_constant(&[2, 0]).unwrap());
    for n in 1..=3 {
        let study = composition_study(model.clone(), bent(), &[0.6, 0.0, 0.8], n, &[3, 4, 5, 6, 7]).unwrap();
        let slope = study.slope.unwrap();
        assert!((slope - (n + 1) as f64).abs() < 0.3, "N = {n}: slope {slope}");
        assert!(study.constant.is_finite() && study.constant > 0.0);
    }
}

#[test]
fn word_and_forest_expansions_agree_to_degree_four() {
    let model = Arc::new(intro_model());
    let path = Arc::new(PiecewisePolyPath::moment_curve(2, int(0), int(1)));
    let y = [q(1, 2), q(-1, 3)];
    for n in 1..=4 {
        let cmp = compare_expansions(model.clone(), &path, (&q(1, 4), &q(5, 6)), &y, n).unwrap();
        assert!(cmp.series_agree(), "degree {n}: {:?}", cmp.witness());
        assert!(cmp.values_agree(), "degree {n}");
    }
}

#[test]
fn forest_expansion_through_the_model_matches_a_step() {
    let model = Arc::new(intro_model());
    let path = Arc::new(PiecewisePolyPath::moment_curve(2, int(0), int(1)));
    let diffs = ElementaryDifferentials::new(model);
    let y = [q(1, 2), q(-1, 3)];
    let (s, t) = (q(1, 4), q(5, 6));
    let series = forest_expansion(&path, &s, &t, 3).unwrap();
    let lift = PullbackLift::planar(path, 3);
    assert_eq!(evaluate_expansion(&diffs, &series, &y).unwrap(), lb_step(&diffs, &lift, (&s, &t), &y, 3).unwrap());
}

#[test]
fn intro_display_matches_the_lie_butcher_coefficients() {
    let report = intro_expansion_check(Arc::new(intro_model())).unwrap();
    assert_eq!(report.rows.len(), 2 + 4 + 8);
    assert!(report.passed(), "{:?}", report.first_mismatch());
}

#[test]
fn five_forest_form_regroups_the_six_terms() {
    let (a, b) = (Letter::new(0), Letter::new(1));
    for (w, s) in five_forest_display(2) {
        let l = w.letters();
        let six = six_term_display(&l[0], &l[1], &l[2]);
        assert_eq!(s, six, "{w}");
    }
    let six = six_term_display(&a, &b, &a);
    assert_eq!(six.mass(), int(6));
    assert_eq!(lb_coefficient(&w3("bab"), 2).unwrap().len(), 6);
}

fn w3(s: &str) -> planar_rough::Word {
    planar_rough::Word::parse(s, 2).unwrap()
}

#[test]
fn intro_check_detects_a_wrong_display() {
    let model = Arc::new(intro_model());
    let diffs = ElementaryDifferentials::new(model);
    let (a, b) = (Letter::new(0), Letter::new(1));
    let right = six_term_display(&a, &b, &b);
    let mut wrong = right.clone();
    wrong.add_term(pf("a b[b]"), -Rational::one());
    wrong.add_term(pf("b[a] b"), Rational::one());
    let psi = Poly::var(2, 0).mul(&Poly::var(2, 1));
    let act = |s| expansion_action(&diffs, s, &psi).unwrap();
    assert_ne!(act(&right), act(&wrong));
    // On coordinates the two multi-tree forests both vanish.
    let y = [q(2, 3), q(1, 5)];
    assert_eq!(evaluate_expansion(&diffs, &right, &y).unwrap(), evaluate_expansion(&diffs, &wrong, &y).unwrap());
    assert_eq!(monomials_up_to(2, 3).len(), 9);
    assert_eq!(monomials_up_to(2, 2)[0].to_string(), "y1");
}
