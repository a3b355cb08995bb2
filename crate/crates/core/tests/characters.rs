mod common;

use std::sync::Arc;

use common::pf;
use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};
use planar_rough::algebra::{int, rat, LinearFunctional, Real};
use planar_rough::characters::*;
use planar_rough::forest::{forget_planarity, nonplanar_factorial, planar_factorial, NonplanarForest, PlanarForest};
use planar_rough::hopf::{convolution, Bck, HopfAlgebra, Mkw, Shuffle};
use planar_rough::morphisms::arborify_planar;
use planar_rough::{Error, Rational, Word};

fn inv(n: BigUint) -> Rational {
    Rational::one() / Rational::from_integer(n.into())
}

fn mkw_q(d: usize) -> Arc<InverseFactorial<Mkw>> {
    Arc::new(InverseFactorial::new(Arc::new(Mkw::new(d))))
}

#[test]
fn q_examples() {
    let sh = InverseFactorial::new(Arc::new(Shuffle::new(3)));
    assert_eq!(sh.value(&Word::parse("abc", 3).unwrap()), rat(1, 6));
    assert_eq!(sh.value(&Word::parse("aa", 3).unwrap()), rat(1, 2));
    assert_eq!(mkw_q(3).value(&pf("a[b,c]")), rat(1, 6));
    let bck = InverseFactorial::new(Arc::new(Bck::new(3)));
    assert_eq!(bck.value(&NonplanarForest::parse("a[b,c]", 3).unwrap()), rat(1, 3));
    assert_eq!(bck.value(&NonplanarForest::unit()), int(1));
}

#[test]
fn q_matches_factorial_oracles() {
    let q = mkw_q(2);
    let bck = InverseFactorial::new(Arc::new(Bck::new(2)));
    let sh = InverseFactorial::new(Arc::new(Shuffle::new(2)));
    for n in 0..=5 {
        for f in Mkw::new(2).basis(n) {
            assert_eq!(q.value(&f), inv(planar_factorial(&f)), "{f}");
            let g = forget_planarity(&f);
            assert_eq!(bck.value(&g), inv(nonplanar_factorial(&g)), "{g}");
        }
        for w in Shuffle::new(2).basis(n) {
            assert_eq!(sh.value(&w), inv(planar_rough::algebra::factorial(n)));
        }
    }
    let q1 = mkw_q(1);
    for f in Mkw::new(1).basis(6) {
        assert_eq!(q1.value(&f), inv(planar_factorial(&f)));
        assert!(!q1.value(&f).is_zero());
    }
}

#[test]
fn q_is_multiplicative_to_degree_six() {
    fn check<H: HopfAlgebra + 'static>(h: H, max: usize) {
        let h = Arc::new(h);
        let q = InverseFactorial::new(h.clone());
        for i in 1..max {
            for j in 1..=max - i {
                for x in h.basis(i) {
                    for y in h.basis(j) {
                        let lhs = q_series(&q, &h.product(&x, &y));
                        let rhs = q.value(&x) * q.value(&y);
                        assert_eq!(lhs, rhs, "{x} {y}");
                    }
                }
            }
        }
    }
    check(Shuffle::new(2), 6);
    check(Bck::new(2), 6);
    check(Mkw::new(1), 6);
    check(Mkw::new(2), 5);
}

#[test]
fn q_convolution_square() {
    let q = mkw_q(2);
    let mkw = Arc::new(Mkw::new(2));
    let qf = q.functional(6);
    let sq = convolution(mkw.clone(), &qf, &qf);
    for n in 0..=6 {
        for f in mkw.basis(n) {
            assert_eq!(sq.eval(&f).unwrap(), Rational::from_integer((1i64 << n).into()) * q.value(&f), "{f}");
        }
    }
}

#[test]
fn q_power_examples_and_group_law() {
    let q = mkw_q(3);
    let cherry = pf("a[b,c]");
    assert_eq!(q.power(&cherry, &int(2)).unwrap(), rat(8, 6));
    assert_eq!(q.power(&cherry, &int(0)).unwrap(), int(0));
    assert_eq!(q.power(&PlanarForest::unit(), &int(0)).unwrap(), int(1));
    assert_eq!(q.power(&cherry, &rat(1, 2)).unwrap(), rat(1, 48));
    assert_eq!(q.power_by_convolution(&cherry, &rat(1, 2)), rat(1, 48));

    let mkw = Arc::new(Mkw::new(2));
    let q = mkw_q(2);
    let ts = [int(-1), rat(1, 2), int(2)];
    for s in &ts {
        for t in &ts {
            let qs = {
                let q = q.clone();
                let s = s.clone();
                LinearFunctional::new(5, move |x: &PlanarForest| q.power(x, &s).unwrap())
            };
            let qt = {
                let q = q.clone();
                let t = t.clone();
                LinearFunctional::new(5, move |x: &PlanarForest| q.power(x, &t).unwrap())
            };
            let prod = convolution(mkw.clone(), &qs, &qt);
            let st = s + t;
            for n in 0..=4 {
                for f in mkw.basis(n) {
                    assert_eq!(prod.eval(&f).unwrap(), q.power(&f, &st).unwrap(), "{s} {t} {f}");
                }
            }
            for f in Mkw::new(1).basis(5) {
                assert_eq!(prod.eval(&f).unwrap(), q.power(&f, &st).unwrap());
            }
        }
    }
}

#[test]
fn binomial_residuals_vanish() {
    let q = mkw_q(2);
    for (a, b) in [(int(1), int(1)), (int(2), int(3))] {
        for n in 0..=6 {
            for f in Mkw::new(2).basis(n) {
                assert!(q.binomial_residual(&f, &a, &b).is_zero(), "{f}");
            }
        }
    }
    let sh = InverseFactorial::new(Arc::new(Shuffle::new(2)));
    for w in Shuffle::new(2).basis(5) {
        assert!(sh.binomial_residual(&w, &rat(1, 3), &int(-2)).is_zero());
    }
}

#[test]
fn q_gamma_values() {
    let q = mkw_q(2);
    assert!(matches!(QGamma::new(q.clone(), int(0), 128), Err(Error::Gamma(_))));
    assert!(matches!(QGamma::new(q.clone(), rat(3, 2), 128), Err(Error::Gamma(_))));
    let g1 = QGamma::new(q.clone(), int(1), 128).unwrap();
    assert_eq!(g1.truncation(), 1);
    for f in Mkw::new(2).basis(4) {
        let v = g1.value(&f);
        assert!(v.contains(&q.value(&f)), "{f}");
        assert_eq!(g1.value_exact(&f), Some(q.value(&f)));
    }
    let g = QGamma::new(q.clone(), rat(1, 2), 128).unwrap();
    assert_eq!(g.truncation(), 2);
    for n in 0..=2 {
        for f in Mkw::new(2).basis(n) {
            assert_eq!(g.value_exact(&f), Some(q.value(&f)));
        }
    }

    // (√2+1)/2 from an integer square root.
    let scale = num_bigint::BigUint::from(10u32).pow(40);
    let root = (num_bigint::BigUint::from(2u32) * &scale * &scale).sqrt();
    let sqrt2 = Rational::new(root.into(), scale.into());
    let expected = (sqrt2 + Rational::one()) / int(2);
    let sh = Arc::new(InverseFactorial::new(Arc::new(Shuffle::new(2))));
    let gs = QGamma::new(sh, rat(1, 2), 128).unwrap();
    let v = gs.value(&Word::parse("aba", 2).unwrap());
    let err = (v.midpoint() - expected).abs();
    assert!(err < rat(1, 1_000_000_000_000_000) * rat(1, 1_000_000_000_000_000), "{v}");
}

#[test]
fn q_gamma_is_functorial() {
    let q = mkw_q(2);
    let sh = Arc::new(InverseFactorial::new(Arc::new(Shuffle::new(2))));
    for gamma in [rat(1, 2), rat(2, 3), rat(1, 3)] {
        let gm = QGamma::new(q.clone(), gamma.clone(), 128).unwrap();
        let gs = QGamma::new(sh.clone(), gamma.clone(), 128).unwrap();
        for n in 0..=5 {
            for f in Mkw::new(2).basis(n) {
                let mut acc = Real::zero(128);
                for (w, c) in arborify_planar(&f).iter() {
                    acc = acc.add(&gs.value(w).scale(c));
                }
                let diff = (acc.midpoint() - gm.value(&f).midpoint()).abs();
                assert!(diff < rat(1, 10i64.pow(18)) * rat(1, 10i64.pow(7)), "{gamma} {f}");
            }
        }
    }
}

#[test]
fn decay_tables() {
    let sh = Arc::new(InverseFactorial::new(Arc::new(Shuffle::new(2))));
    let t1 = gamma_decay_table(&QGamma::new(sh.clone(), int(1), 128).unwrap(), 6);
    assert!(t1.rows.iter().all(|r| (r.ratio - 1.0).abs() < 1e-12));
    assert!((t1.fitted_c - 1.0).abs() < 1e-12);
    let th = gamma_decay_table(&QGamma::new(sh, rat(1, 2), 128).unwrap(), 6);
    assert!(th.fitted_c.is_finite() && th.fitted_c > 0.0);
    assert_eq!(th.per_degree.len(), 5);
    let tm = gamma_decay_table(&QGamma::new(mkw_q(1), rat(1, 2), 128).unwrap(), 6);
    assert!(tm.fitted_c.is_finite() && tm.fitted_c > 0.0);
    assert!(tm.rows.iter().all(|r| r.ratio > 0.0));
    assert_eq!(tm.rows.iter().filter(|r| r.degree == 6).count(), 132);
}
