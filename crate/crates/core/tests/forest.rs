mod common;

use common::{all_orderings, arb_forest, permutations, pf};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use planar_rough::algebra::{factorial, Graded};
use planar_rough::forest::*;
use planar_rough::{Error, Rational};
use proptest::prelude::*;

/// Independent ⋘ numbering: (parent, siblings-including-self) per vertex.
struct Flat {
    parent: Vec<Option<usize>>,
    siblings: Vec<Vec<usize>>,
    letters: Vec<Letter>,
}

fn flatten(f: &PlanarForest) -> Flat {
    let mut flat = Flat {
        parent: Vec::new(),
        siblings: Vec::new(),
        letters: Vec::new(),
    };
    fn go(t: &PlanarTree, parent: Option<usize>, flat: &mut Flat) -> usize {
        let v = flat.parent.len();
        flat.parent.push(parent);
        flat.siblings.push(Vec::new());
        flat.letters.push(t.root().clone());
        let mut ids: Vec<usize> = t.children().iter().rev().map(|c| go(c, Some(v), flat)).collect();
        ids.reverse();
        for &c in &ids {
            flat.siblings[c] = ids.clone();
        }
        v
    }
    let mut roots: Vec<usize> = f.trees().iter().rev().map(|t| go(t, None, &mut flat)).collect();
    roots.reverse();
    for &r in &roots {
        flat.siblings[r] = roots.clone();
    }
    flat
}

/// Transitive closure of R: parent before child, right sibling before left
/// sibling, right root before left root.
fn closure_of_r(f: &PlanarForest) -> Vec<Vec<bool>> {
    let flat = flatten(f);
    let n = flat.parent.len();
    let mut m = vec![vec![false; n]; n];
    for w in 0..n {
        if let Some(p) = flat.parent[w] {
            m[p][w] = true;
        }
        let sib = &flat.siblings[w];
        let pos = sib.iter().position(|&x| x == w).unwrap();
        for &v in &sib[pos + 1..] {
            m[v][w] = true;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if m[i][k] && m[k][j] {
                    m[i][j] = true;
                }
            }
        }
    }
    m
}

fn ancestors_oracle(f: &PlanarForest) -> Vec<Vec<bool>> {
    let flat = flatten(f);
    let n = flat.parent.len();
    let mut m = vec![vec![false; n]; n];
    for w in 0..n {
        let mut p = flat.parent[w];
        while let Some(q) = p {
            m[q][w] = true;
            p = flat.parent[q];
        }
    }
    m
}

fn brute_extensions(view: &PosetView, rel: Relation) -> usize {
    permutations(view.len())
        .into_iter()
        .filter(|p| {
            let mut pos = vec![0; p.len()];
            for (i, &v) in p.iter().enumerate() {
                pos[v] = i;
            }
            view.pairs(rel).iter().all(|&(v, w)| pos[v] < pos[w])
        })
        .count()
}

fn brute_symmetry(f: &PlanarForest) -> usize {
    all_orderings(f.trees())
        .into_iter()
        .filter(|t| t.as_slice() == f.trees())
        .count()
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

#[test]
fn parse_examples() {
    assert_eq!(pf("a").to_string(), "a");
    let t = pf("i[j]");
    assert_eq!(t.num_trees(), 1);
    assert_eq!(t.trees()[0].root().index(), Some(8));
    assert_eq!(t.trees()[0].children()[0].root().index(), Some(9));
    let f = pf("c a[b]");
    assert_eq!(f.num_trees(), 2);
    assert_eq!(f.trees()[0].to_string(), "c");
    assert_eq!(f.trees()[1].to_string(), "a[b]");
    assert_eq!(pf("1"), PlanarForest::unit());
    assert_eq!(pf(""), PlanarForest::unit());
    assert_eq!(pf("  a[ b , c ]   d ").to_string(), "a[b,c] d");
}

#[test]
fn parse_errors() {
    assert!(matches!(PlanarForest::parse("a[b", 3), Err(Error::Syntax { .. })));
    assert!(matches!(PlanarForest::parse("a[]", 3), Err(Error::Syntax { .. })));
    assert!(matches!(PlanarForest::parse("a[b]c", 3), Err(Error::Syntax { .. })));
    assert!(matches!(PlanarForest::parse("A", 3), Err(Error::Syntax { .. })));
    assert!(matches!(PlanarForest::parse("1 a", 3), Err(Error::Syntax { .. })));
    assert!(matches!(PlanarForest::parse("d", 3), Err(Error::UnknownLetter { .. })));
    match PlanarForest::parse("a[b,", 3) {
        Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 4),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn grammar_round_trip_to_degree_six() {
    for n in 0..=6 {
        for f in enumerate_forests(n, 1).unwrap() {
            let s = f.to_string();
            assert_eq!(pf(&s), f);
            assert_eq!(pf(&s).to_string(), s);
        }
    }
    for n in 0..=4 {
        for f in enumerate_forests(n, 3).unwrap() {
            assert_eq!(PlanarForest::parse(&f.to_string(), 3).unwrap(), f);
        }
    }
}

#[test]
fn b_plus_and_decompose() {
    let a = Letter::new(0);
    assert_eq!(b_plus(a.clone(), PlanarForest::unit()).to_string(), "a");
    assert_eq!(b_plus(a.clone(), pf("b c")).to_string(), "a[b,c]");
    let f = pf("b[c] d");
    let (l, r, br) = decompose(&b_plus(a.clone(), f.clone()).into_forest()).unwrap();
    assert_eq!((l, r, br), (PlanarForest::unit(), a.clone(), f));

    let (l, r, br) = decompose(&pf("c a[b]")).unwrap();
    assert_eq!((l.to_string(), r.to_string(), br.to_string()), ("c".into(), "a".into(), "b".into()));
    let (l, r, br) = decompose(&pf("a")).unwrap();
    assert_eq!((l.to_string(), r.to_string(), br.to_string()), ("1".into(), "a".into(), "1".into()));
    let (l, r, br) = decompose(&pf("i[j] k")).unwrap();
    assert_eq!((l.to_string(), r.to_string(), br.to_string()), ("i[j]".into(), "k".into(), "1".into()));
    assert!(matches!(decompose(&PlanarForest::unit()), Err(Error::EmptyForest)));
}

#[test]
fn catalan_shape_counts() {
    let expected = [1u64, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796];
    for (n, &c) in expected.iter().enumerate() {
        assert_eq!(enumerate_forests(n, 1).unwrap().len() as u64, c, "n = {n}");
        assert_eq!(catalan(n), big(c));
    }
    assert_eq!(enumerate_forests(2, 2).unwrap().len(), 8);
    assert_eq!(count_forests(2, 2), big(8));
    for n in 0..=4 {
        assert_eq!(big(enumerate_forests(n, 3).unwrap().len() as u64), count_forests(n, 3));
    }
}

#[test]
fn enumeration_is_sorted_distinct_and_capped() {
    let list = enumerate_forests(5, 2).unwrap();
    let strings: Vec<String> = list.iter().map(ToString::to_string).collect();
    let mut sorted = strings.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(strings, sorted);
    assert!(list.iter().all(|f| f.degree() == 5));
    assert!(matches!(enumerate_forests(11, 1), Err(Error::DegreeCap { degree: 11, cap: 10 })));
    assert_eq!(enumerate_forests_capped(2, 1, 1).unwrap_err().to_string(), Error::DegreeCap { degree: 2, cap: 1 }.to_string());
}

#[test]
fn shards_partition_the_enumeration() {
    let full = enumerate_forests(5, 2).unwrap();
    let mut joined = Vec::new();
    for first in 1..=5 {
        joined.extend(enumerate_forests_shard(5, 2, first).unwrap());
    }
    joined.sort_by_key(ToString::to_string);
    assert_eq!(joined, full);
}

#[test]
fn nonplanar_enumeration_matches_forgetting() {
    // Non-planar rooted forests with one letter: 1, 1, 2, 4, 9, 20, 48.
    let expected = [1usize, 1, 2, 4, 9, 20, 48];
    for (n, &c) in expected.iter().enumerate() {
        assert_eq!(enumerate_nonplanar(n, 1).unwrap().len(), c);
    }
}

#[test]
fn enumerate_words_counts() {
    let w = enumerate_words(3, 2);
    assert_eq!(w.len(), 8);
    assert_eq!(w[0].to_string(), "aaa");
    assert_eq!(w[7].to_string(), "bbb");
}

#[test]
fn order_examples() {
    let v = order_relations(&pf("a[b,c]"));
    // ⋘ ranks: a=0, c=1, b=2.
    assert_eq!(v.letters().iter().map(ToString::to_string).collect::<Vec<_>>(), ["a", "c", "b"]);
    assert!(v.less(Relation::Planar, 0, 1));
    assert!(v.less(Relation::Planar, 1, 2));
    assert!(v.less(Relation::Planar, 0, 2));
    assert_eq!(v.linear_extension_count(Relation::Planar), big(1));
    assert_eq!(v.linear_extension_count(Relation::Ancestor), big(2));

    let v = order_relations(&pf("j i"));
    assert_eq!(v.letter(0).to_string(), "i");
    assert!(v.less(Relation::Planar, 0, 1));

    let v = order_relations(&pf("c a[b]"));
    // a=0, b=1, c=2.
    assert_eq!(v.letters().iter().map(ToString::to_string).collect::<Vec<_>>(), ["a", "b", "c"]);
    assert!(v.less(Relation::Planar, 0, 1));
    assert!(v.less(Relation::Planar, 0, 2));
    assert!(!v.less(Relation::Planar, 1, 2) && !v.less(Relation::Planar, 2, 1));
    assert_eq!(v.linear_extension_count(Relation::Planar), big(2));

    assert_eq!(order_relations(&PlanarForest::unit()).linear_extension_count(Relation::Planar), big(1));
    assert_eq!(order_relations(&PlanarForest::unit()).linear_extensions(Relation::Ancestor), vec![Vec::<usize>::new()]);
}

#[test]
fn planar_order_equals_closure_of_generating_relation() {
    for n in 1..=6 {
        for f in enumerate_forests(n, 1).unwrap() {
            let v = order_relations(&f);
            let m = closure_of_r(&f);
            let a = ancestors_oracle(&f);
            for x in 0..n {
                for y in 0..n {
                    assert_eq!(v.less(Relation::Planar, x, y), m[x][y], "{f} ≪ {x} {y}");
                    assert_eq!(v.less(Relation::Ancestor, x, y), a[x][y], "{f} < {x} {y}");
                }
            }
        }
    }
}

#[test]
fn extension_counts_match_brute_force() {
    for n in 0..=6 {
        for f in enumerate_forests(n, 1).unwrap() {
            let v = order_relations(&f);
            for rel in [Relation::Ancestor, Relation::Planar, Relation::Total] {
                let brute = brute_extensions(&v, rel);
                assert_eq!(v.linear_extension_count(rel), big(brute as u64), "{f}");
                let list = v.linear_extensions(rel);
                assert_eq!(list.len(), brute);
            }
        }
    }
}

#[test]
fn factorial_examples() {
    assert_eq!(planar_factorial(&pf("a")), big(1));
    assert_eq!(planar_factorial(&pf("a[b,c]")), big(6));
    assert_eq!(planar_factorial(&pf("a b")), big(2));
    assert_eq!(nonplanar_factorial(&NonplanarForest::parse("a[b,c]", 3).unwrap()), big(3));
    assert_eq!(nonplanar_factorial(&NonplanarForest::parse("a[a[a[a]]]", 3).unwrap()), big(24));
    assert_eq!(nonplanar_factorial(&NonplanarForest::parse("a b", 3).unwrap()), big(1));
}

#[test]
fn factorials_match_extension_counts_to_degree_seven() {
    for n in 0..=7 {
        let nf = factorial(n);
        for f in enumerate_forests(n, 1).unwrap() {
            let v = order_relations(&f);
            assert_eq!(planar_factorial(&f) * v.linear_extension_count(Relation::Planar), nf, "{f}");
            let np = forget_planarity(&f);
            assert_eq!(nonplanar_factorial(&np) * v.linear_extension_count(Relation::Ancestor), nf, "{f}");
        }
    }
}

#[test]
fn factorial_recursion_through_decomposition() {
    for n in 1..=7 {
        for f in enumerate_forests(n, 1).unwrap() {
            let (left, _, branches) = decompose(&f).unwrap();
            assert_eq!(
                planar_factorial(&f),
                big(n as u64) * planar_factorial(&left) * planar_factorial(&branches)
            );
        }
    }
}

#[test]
fn symmetry_examples() {
    assert_eq!(symmetry_factor(&pf("a[b,b]")), big(2));
    assert_eq!(symmetry_factor(&pf("a[b,c]")), big(1));
    assert_eq!(symmetry_factor(&pf("a a")), big(2));
    // Children that differ only by planar embedding still count as equal.
    assert_eq!(symmetry_factor(&pf("a[b[c,d],b[d,c]]")), big(2));
    let cherry = NonplanarForest::parse("a[b,b]", 3).unwrap();
    let total: Rational = planar_representatives(&cherry)
        .iter()
        .map(|s| Rational::from_integer(symmetry_factor(s).into()) / Rational::from_integer(planar_factorial(s).into()))
        .sum();
    assert_eq!(total, Rational::new(1.into(), 3.into()));
}

#[test]
fn symmetry_matches_brute_force() {
    for n in 1..=6 {
        for f in enumerate_forests(n, 2).unwrap() {
            assert_eq!(symmetry_factor(&f), big(brute_symmetry(&f) as u64), "{f}");
        }
    }
    let f = pf("a[b[c,d],b[d,c]]");
    assert_eq!(symmetry_factor(&f), big(brute_symmetry(&f) as u64));
}

#[test]
fn planar_representative_identity() {
    for (max_n, d) in [(6, 1), (5, 2)] {
        for n in 1..=max_n {
            for f in enumerate_nonplanar(n, d).unwrap() {
                let reps = planar_representatives(&f);
                let mut distinct: Vec<PlanarForest> = all_orderings(f.to_planar().trees())
                    .into_iter()
                    .map(PlanarForest::new)
                    .collect();
                distinct.sort();
                distinct.dedup();
                let mut sorted = reps.clone();
                sorted.sort();
                assert_eq!(sorted, distinct, "{f}");
                let sum: Rational = reps
                    .iter()
                    .map(|s| Rational::from_integer(symmetry_factor(s).into()) / Rational::from_integer(planar_factorial(s).into()))
                    .sum();
                let expected = Rational::one() / Rational::from_integer(nonplanar_factorial(&f).into());
                assert_eq!(sum, expected, "{f}");
            }
        }
    }
}

#[test]
fn forgetting_planarity() {
    assert_eq!(forget_planarity(&pf("a[b,c]")), forget_planarity(&pf("a[c,b]")));
    assert_eq!(forget_planarity(&pf("a b")), forget_planarity(&pf("b a")));
    assert_eq!(forget_planarity(&pf("i[j[k]]")).to_string(), "i[j[k]]");
    assert_ne!(forget_planarity(&pf("a[b]")), forget_planarity(&pf("b[a]")));
}

#[test]
fn monte_carlo_examples() {
    let e = monte_carlo_volume(&pf("a[b,c]"), Relation::Planar, 1_000_000, 7);
    assert!((e.estimate - 1.0 / 6.0).abs() <= 3.0 * e.stderr, "{e:?}");
    let e = monte_carlo_volume(&pf("a"), Relation::Planar, 1000, 1);
    assert_eq!((e.estimate, e.stderr), (1.0, 0.0));
    let e = monte_carlo_volume(&pf("a[b,c]"), Relation::Ancestor, 200_000, 3);
    assert!((e.estimate - 1.0 / 3.0).abs() <= 3.0 * e.stderr, "{e:?}");
}

#[test]
fn monte_carlo_seed_suite() {
    for (i, s) in ["a[b[c],d]", "a b[c]", "c a[b]", "a[b,c,d]"].iter().enumerate() {
        let f = pf(s);
        for rel in [Relation::Ancestor, Relation::Planar] {
            let e = monte_carlo_volume(&f, rel, 100_000, 100 + i as u64);
            let v = order_relations(&f);
            let exact = v.linear_extension_count(rel).to_f64().unwrap() / factorial(v.len()).to_f64().unwrap();
            assert!((e.estimate - exact).abs() <= 4.0 * e.stderr, "{s} {rel:?} {e:?} {exact}");
        }
    }
    let a = monte_carlo_volume(&pf("a[b,c]"), Relation::Planar, 5000, 9);
    let b = monte_carlo_volume(&pf("a[b,c]"), Relation::Planar, 5000, 9);
    assert_eq!(a, b);
}

proptest! {
    #[test]
    fn orders_are_nested_strict_partial_orders(f in arb_forest(9, 3)) {
        let v = order_relations(&f);
        let n = v.len();
        for x in 0..n {
            for rel in [Relation::Ancestor, Relation::Planar, Relation::Total] {
                prop_assert!(!v.less(rel, x, x));
            }
            for y in 0..n {
                if v.less(Relation::Ancestor, x, y) {
                    prop_assert!(v.less(Relation::Planar, x, y));
                }
                if v.less(Relation::Planar, x, y) {
                    prop_assert!(v.less(Relation::Total, x, y));
                }
                if x != y {
                    prop_assert!(v.less(Relation::Total, x, y) ^ v.less(Relation::Total, y, x));
                }
                for z in 0..n {
                    for rel in [Relation::Ancestor, Relation::Planar] {
                        if v.less(rel, x, y) && v.less(rel, y, z) {
                            prop_assert!(v.less(rel, x, z));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn round_trip_random(f in arb_forest(12, 4)) {
        prop_assert_eq!(PlanarForest::parse(&f.to_string(), 4).unwrap(), f);
    }

    #[test]
    fn induced_forest_of_everything_is_identity(f in arb_forest(10, 3)) {
        let v = order_relations(&f);
        prop_assert_eq!(v.induced_forest(v.full_mask()), f);
    }

    #[test]
    fn down_sets_are_closed(f in arb_forest(8, 2)) {
        let v = order_relations(&f);
        for rel in [Relation::Ancestor, Relation::Planar] {
            let ds = v.down_sets(rel);
            let mut uniq = ds.clone();
            uniq.sort();
            uniq.dedup();
            prop_assert_eq!(uniq.len(), ds.len());
            for m in &ds {
                for w in bits(*m) {
                    prop_assert_eq!(v.predecessors(rel, w) & !m, 0);
                }
            }
            // Brute force count.
            let brute = (0..(1u64 << v.len()))
                .filter(|m| bits(*m).all(|w| v.predecessors(rel, w) & !m == 0))
                .count();
            prop_assert_eq!(brute, ds.len());
        }
    }
}
