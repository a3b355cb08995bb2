mod common;

use std::sync::Arc;

use common::pf;
use num_bigint::BigUint;
use planar_rough::algebra::{LinearFunctional, Series};
use planar_rough::characters::InverseFactorial;
use planar_rough::forest::{enumerate_words, forget_planarity, Letter, NonplanarForest, PlanarForest, PlanarTree};
use planar_rough::hopf::{FreeCommutative, HopfAlgebra, Mkw, Shuffle};
use planar_rough::morphisms::*;
use planar_rough::{Rational, Word};

fn np(s: &str) -> NonplanarForest {
    NonplanarForest::parse(s, 26).unwrap()
}

#[test]
fn worked_examples_byte_exact() {
    let s = FreeCommutative::new(3);
    assert_eq!(arborify_planar(&pf("a[b] c")).compact(), "bac");
    assert_eq!(arborify_planar(&pf("c a[b]")).compact(), "bca+cba");
    assert_eq!(arborify_planar_contracting(&pf("a[b] c"), &s).unwrap().compact(), "bac");
    assert_eq!(arborify_planar_contracting(&pf("c a[b]"), &s).unwrap().compact(), "bca+cba+[b+c]a");
    assert_eq!(arborify_planar(&pf("a")).compact(), "a");
    assert_eq!(arborify_planar_contracting(&pf("a"), &s).unwrap().compact(), "a");
    assert_eq!(arborify_planar(&pf("1")).compact(), "1");
}

#[test]
fn recursion_matches_extension_sum() {
    for (max, d) in [(6, 1), (5, 2), (4, 3)] {
        for n in 0..=max {
            for f in Mkw::new(d).basis(n) {
                assert_eq!(arborify_planar(&f), arborify_planar_by_extensions(&f), "{f}");
            }
        }
    }
}

#[test]
fn contracting_recursion_matches_surjections() {
    let s = FreeCommutative::new(3);
    for (max, d) in [(5, 2), (4, 3)] {
        for n in 0..=max {
            for f in Mkw::new(d).basis(n) {
                let rec = arborify_planar_contracting(&f, &s).unwrap();
                assert_eq!(rec, arborify_planar_contracting_by_surjections(&f, &s).unwrap(), "{f}");
                let plain: Series<Word> = rec
                    .iter()
                    .filter(|(w, _)| w.letters().iter().all(Letter::is_plain))
                    .map(|(w, c)| (w.clone(), c.clone()))
                    .collect();
                assert_eq!(plain, arborify_planar(&f));
            }
        }
    }
}

#[test]
fn nonplanar_examples() {
    let cherry = np("a[b,c]");
    assert_eq!(arborify_nonplanar(&cherry).compact(), "bca+cba");
    assert_eq!(arborify_nonplanar(&cherry), omega(&cherry).map_linear(arborify_planar));
    assert_eq!(arborify_nonplanar(&np("a[b[c]]")).compact(), "cba");
    assert_eq!(arborify_nonplanar(&np("a b")).compact(), "ab+ba");
    let s = FreeCommutative::new(3);
    assert_eq!(arborify_nonplanar_contracting(&np("a b"), &s).unwrap().compact(), "ab+ba+[a+b]");
}

#[test]
fn omega_examples() {
    let o = omega(&np("a[b,b]"));
    assert_eq!(o.to_string(), "2 a[b,b]");
    assert_eq!(omega(&np("a[b,c]")).compact(), "a[b,c]+a[c,b]");
    assert_eq!(omega(&np("a")).compact(), "a");
}

#[test]
fn simple_morphisms_pass() {
    for report in [
        verify_morphism(&PlanarArborification::new(2), 5),
        verify_morphism(&Arborification::new(2), 5),
        verify_morphism(&Symmetrization::new(2), 5),
        verify_morphism(&ContractingArborification::new(2), 5),
    ] {
        assert!(report.passed(), "{report}");
        assert_eq!(report.checked.len(), 3);
    }
}

/// Planar roots are `≪`-comparable, so they are never contracted, while
/// the quasi-shuffle of their images contracts them.
#[test]
fn contracting_planar_arborification_is_not_multiplicative() {
    let report = verify_morphism(&ContractingPlanarArborification::new(2), 5);
    let v = report.violation.expect("product compatibility fails");
    assert_eq!(v.axiom, "product");
    assert!(v.witness.starts_with("x = a, y = a"), "{}", v.witness);
    assert!(v.witness.ends_with("= -[a+a]"), "{}", v.witness);

    // The coproduct fails too: `[b+c] ⊗ a` has no counterpart on the forest side.
    let m = ContractingPlanarArborification::new(3);
    let f = pf("c a[b]");
    let lhs = m.apply(&f).map_linear(|w| m.quasi.coproduct(w));
    let rhs = m.mkw.coproduct(&f).map_linear(|(l, r)| {
        m.apply(l).bilinear(&m.apply(r), |a, b| Series::single((a.clone(), b.clone())))
    });
    let diff = &lhs - &rhs;
    assert_eq!(diff.len(), 1);
    assert_eq!(diff.coeff(&(Word::parse("[b+c]", 3).unwrap(), Word::parse("a", 3).unwrap())), Rational::from_integer(1.into()));
}

#[test]
fn diagram_commutes_for_simple_arborification() {
    let r = check_diagram(5, 2, default_sym());
    assert!(r.simple.is_none(), "{:?}", r.simple);
    let c = r.contracting.expect("contracting triangle fails");
    assert!(c.witness.starts_with("f = a a"), "{}", c.witness);

    let broken: SymRule = Arc::new(|_: &PlanarForest| BigUint::from(1u32));
    let r = check_diagram(4, 2, broken);
    let v = r.simple.expect("corrupted symmetry factor is caught");
    assert!(v.witness.starts_with("f = a a"), "{}", v.witness);
}

#[test]
fn every_word_is_reached_by_a_ladder() {
    for n in 1..=5 {
        for w in enumerate_words(n, 3) {
            let mut ladder: Option<PlanarTree> = None;
            for l in w.letters() {
                ladder = Some(PlanarTree::new(l.clone(), ladder.into_iter().collect()));
            }
            let f = ladder.unwrap().into_forest();
            assert_eq!(arborify_planar(&f), Series::single(w.clone()), "{f}");
        }
    }
}

#[test]
fn pullbacks_compose() {
    let arbo = Arc::new(PlanarArborification::new(2));
    let simple = Arc::new(Arborification::new(2));
    let sym = Arc::new(Symmetrization::new(2));
    let q_sh = Arc::new(InverseFactorial::new(Arc::new(Shuffle::new(2))));
    let q_mkw = Arc::new(InverseFactorial::new(Arc::new(Mkw::new(2))));
    let q_bck = Arc::new(InverseFactorial::new(Arc::new(planar_rough::hopf::Bck::new(2))));
    let counit = LinearFunctional::<Word>::counit(6);
    let weird = LinearFunctional::new(6, |w: &Word| Rational::from_integer((w.len() as i64 * 3 - 1).into()));
    for phi in [counit, q_sh.functional(6), weird] {
        let two_step = pullback(&pullback(&phi, arbo.clone()), sym.clone());
        let direct = pullback(&phi, simple.clone());
        for n in 0..=5 {
            for f in simple.bck.basis(n) {
                assert_eq!(two_step.eval(&f).unwrap(), direct.eval(&f).unwrap(), "{f}");
            }
        }
    }
    let q_from_sh = pullback(&q_sh.functional(6), arbo.clone());
    let q_from_mkw = pullback(&q_mkw.functional(6), sym.clone());
    for n in 0..=6 {
        for f in Mkw::new(2).basis(n) {
            assert_eq!(q_from_sh.eval(&f).unwrap(), q_mkw.value(&f), "{f}");
            let g = forget_planarity(&f);
            assert_eq!(q_from_mkw.eval(&g).unwrap(), q_bck.value(&g), "{g}");
        }
    }
    let eps = pullback(&LinearFunctional::<Word>::counit(4), arbo);
    assert_eq!(eps.eval(&pf("1")).unwrap(), Rational::from_integer(1.into()));
    assert_eq!(eps.eval(&pf("a[b]")).unwrap(), Rational::from_integer(0.into()));
}
