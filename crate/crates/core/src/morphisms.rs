//! Planar and non-planar arborification (simple and contracting), the
//! symmetrization map `Ω`, pullbacks, and morphism checks.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;

use crate::algebra::{Graded, LinearFunctional, Rational, Series, Word};
use crate::forest::{
    decompose, order_relations, planar_representatives, symmetry_factor, bits, Letter,
    NonplanarForest, PlanarForest, PosetView, Relation,
};
use crate::hopf::{
    fmt_tensor, quasi_shuffle, shuffle, AxiomReport, Bck, FreeCommutative, HopfAlgebra, Mkw,
    QuasiShuffle, Semigroup, Shuffle, Tensor, Violation,
};
use crate::Result;

/// Planar arborification by the recursion
/// `𝔞_≪(τ'×_a τ'') = [𝔞_≪(τ') ⧢ 𝔞_≪(τ'')] a`.
pub fn arborify_planar(f: &PlanarForest) -> Series<Word> {
    if f.is_unit() {
        return Series::single(Word::empty());
    }
    let (left, a, branches) = decompose(f).expect("non-unit");
    arborify_planar(&left)
        .bilinear(&arborify_planar(&branches), shuffle)
        .into_terms()
        .map(|(mut w, c)| {
            w.push(a.clone());
            (w, c)
        })
        .collect()
}

/// Sums over increasing surjections of `rel` onto `{1,…,k}`: blocks are
/// non-empty antichains whose predecessors are all in earlier blocks.
/// Each block is merged into one letter with `merge`, and the word lists
/// blocks from the last to the first, so the least vertices come last.
/// With `contract = false` only singleton blocks are used.
fn block_words(
    view: &PosetView,
    rel: Relation,
    contract: bool,
    merge: &dyn Fn(&[Letter]) -> Result<Letter>,
) -> Result<Series<Word>> {
    fn go(
        view: &PosetView,
        rel: Relation,
        contract: bool,
        merge: &dyn Fn(&[Letter]) -> Result<Letter>,
        placed: u64,
        blocks: &mut Vec<Letter>,
        out: &mut Series<Word>,
    ) -> Result<()> {
        if placed == view.full_mask() {
            out.add_term(Word::new(blocks.iter().rev().cloned().collect()), Rational::one());
            return Ok(());
        }
        let available: u64 = (0..view.len())
            .filter(|&v| placed & (1 << v) == 0 && view.predecessors(rel, v) & !placed == 0)
            .fold(0, |m, v| m | (1 << v));
        // Available vertices are pairwise incomparable, so any subset is a block.
        let mut sub = available;
        while sub != 0 {
            if contract || sub.count_ones() == 1 {
                let letters: Vec<Letter> = bits(sub).map(|v| view.letter(v).clone()).collect();
                blocks.push(merge(&letters)?);
                go(view, rel, contract, merge, placed | sub, blocks, out)?;
                blocks.pop();
            }
            sub = (sub - 1) & available;
        }
        Ok(())
    }
    let mut out = Series::zero();
    go(view, rel, contract, merge, 0, &mut Vec::new(), &mut out)?;
    Ok(out)
}

fn single(letters: &[Letter]) -> Result<Letter> {
    Ok(letters[0].clone())
}

fn semigroup_merge(s: &dyn Semigroup) -> impl Fn(&[Letter]) -> Result<Letter> + '_ {
    move |letters: &[Letter]| {
        let mut acc = letters[0].clone();
        for l in &letters[1..] {
            acc = s.sum(&acc, l)?;
        }
        Ok(acc)
    }
}

/// Planar arborification as the sum over `≪`-linear extensions, the
/// `≪`-least vertex read last.
pub fn arborify_planar_by_extensions(f: &PlanarForest) -> Series<Word> {
    block_words(&order_relations(f), Relation::Planar, false, &single).expect("no sums needed")
}

/// Contracting planar arborification by the recursion
/// `𝔞^c_≪(τ'×_a τ'') = [𝔞^c_≪(τ') ⧢̄ 𝔞^c_≪(τ'')] a`.
pub fn arborify_planar_contracting(f: &PlanarForest, s: &dyn Semigroup) -> Result<Series<Word>> {
    if f.is_unit() {
        return Ok(Series::single(Word::empty()));
    }
    let (left, a, branches) = decompose(f).expect("non-unit");
    let l = arborify_planar_contracting(&left, s)?;
    let r = arborify_planar_contracting(&branches, s)?;
    let mut out = Series::zero();
    for (x, c) in l.iter() {
        for (y, e) in r.iter() {
            for (mut w, k) in quasi_shuffle(x, y, s)?.into_terms() {
                w.push(a.clone());
                out.add_term(w, k * c * e);
            }
        }
    }
    Ok(out)
}

/// Contracting planar arborification as the sum over increasing
/// surjections of `≪`.
pub fn arborify_planar_contracting_by_surjections(
    f: &PlanarForest,
    s: &dyn Semigroup,
) -> Result<Series<Word>> {
    block_words(&order_relations(f), Relation::Planar, true, &semigroup_merge(s))
}

/// Simple arborification: the sum over `<`-linear extensions, with the
/// same reading as the planar map.
pub fn arborify_nonplanar(f: &NonplanarForest) -> Series<Word> {
    block_words(&order_relations(&f.to_planar()), Relation::Ancestor, false, &single)
        .expect("no sums needed")
}

/// Contracting arborification: the sum over increasing surjections of `<`.
pub fn arborify_nonplanar_contracting(f: &NonplanarForest, s: &dyn Semigroup) -> Result<Series<Word>> {
    block_words(&order_relations(&f.to_planar()), Relation::Ancestor, true, &semigroup_merge(s))
}

/// Symmetry factor rule used by [`Symmetrization`].
pub type SymRule = Arc<dyn Fn(&PlanarForest) -> BigUint + Send + Sync>;

/// `Ω(f) = Σ_{τ ↠ f} Sym(τ) τ`.
pub fn omega(f: &NonplanarForest) -> Series<PlanarForest> {
    omega_with(f, &symmetry_factor)
}

/// [`omega`] with a caller-supplied symmetry factor.
pub fn omega_with(f: &NonplanarForest, sym: &dyn Fn(&PlanarForest) -> BigUint) -> Series<PlanarForest> {
    planar_representatives(f)
        .into_iter()
        .map(|t| {
            let c = Rational::from_integer(sym(&t).into());
            (t, c)
        })
        .collect()
}

/// A linear map between Hopf algebras given on basis elements.
pub trait HopfMorphism: Send + Sync {
    type Source: HopfAlgebra;
    type Target: HopfAlgebra;

    fn name(&self) -> String;
    fn source(&self) -> &Self::Source;
    fn target(&self) -> &Self::Target;
    fn apply(
        &self,
        x: &<Self::Source as HopfAlgebra>::Basis,
    ) -> Series<<Self::Target as HopfAlgebra>::Basis>;

    fn apply_series(
        &self,
        s: &Series<<Self::Source as HopfAlgebra>::Basis>,
    ) -> Series<<Self::Target as HopfAlgebra>::Basis> {
        s.map_linear(|x| self.apply(x))
    }
}

/// `𝔞_≪ : MKW → shuffle`.
#[derive(Clone, Debug)]
pub struct PlanarArborification {
    pub mkw: Mkw,
    pub shuffle: Shuffle,
}

impl PlanarArborification {
    pub fn new(alphabet: usize) -> Self {
        Self {
            mkw: Mkw::new(alphabet),
            shuffle: Shuffle::new(alphabet),
        }
    }
}

impl HopfMorphism for PlanarArborification {
    type Source = Mkw;
    type Target = Shuffle;

    fn name(&self) -> String {
        "planar arborification".into()
    }
    fn source(&self) -> &Mkw {
        &self.mkw
    }
    fn target(&self) -> &Shuffle {
        &self.shuffle
    }
    fn apply(&self, x: &PlanarForest) -> Series<Word> {
        arborify_planar(x)
    }
}

/// `𝔞^c_≪ : MKW → quasi-shuffle` over the free commutative semigroup.
#[derive(Clone, Debug)]
pub struct ContractingPlanarArborification {
    pub mkw: Mkw,
    pub quasi: QuasiShuffle,
}

impl ContractingPlanarArborification {
    pub fn new(alphabet: usize) -> Self {
        Self {
            mkw: Mkw::new(alphabet),
            quasi: QuasiShuffle::new(alphabet),
        }
    }
}

impl HopfMorphism for ContractingPlanarArborification {
    type Source = Mkw;
    type Target = QuasiShuffle;

    fn name(&self) -> String {
        "contracting planar arborification".into()
    }
    fn source(&self) -> &Mkw {
        &self.mkw
    }
    fn target(&self) -> &QuasiShuffle {
        &self.quasi
    }
    fn apply(&self, x: &PlanarForest) -> Series<Word> {
        arborify_planar_contracting(x, &self.quasi.semigroup).expect("free semigroup sums are total")
    }
}

/// `𝔞 : BCK → shuffle`.
#[derive(Clone, Copy, Debug)]
pub struct Arborification {
    pub bck: Bck,
    pub shuffle: Shuffle,
}

impl Arborification {
    pub fn new(alphabet: usize) -> Self {
        Self {
            bck: Bck::new(alphabet),
            shuffle: Shuffle::new(alphabet),
        }
    }
}

impl HopfMorphism for Arborification {
    type Source = Bck;
    type Target = Shuffle;

    fn name(&self) -> String {
        "arborification".into()
    }
    fn source(&self) -> &Bck {
        &self.bck
    }
    fn target(&self) -> &Shuffle {
        &self.shuffle
    }
    fn apply(&self, x: &NonplanarForest) -> Series<Word> {
        arborify_nonplanar(x)
    }
}

/// `𝔞^c : BCK → quasi-shuffle`.
#[derive(Clone, Copy, Debug)]
pub struct ContractingArborification {
    pub bck: Bck,
    pub quasi: QuasiShuffle,
}

impl ContractingArborification {
    pub fn new(alphabet: usize) -> Self {
        Self {
            bck: Bck::new(alphabet),
            quasi: QuasiShuffle::new(alphabet),
        }
    }
}

impl HopfMorphism for ContractingArborification {
    type Source = Bck;
    type Target = QuasiShuffle;

    fn name(&self) -> String {
        "contracting arborification".into()
    }
    fn source(&self) -> &Bck {
        &self.bck
    }
    fn target(&self) -> &QuasiShuffle {
        &self.quasi
    }
    fn apply(&self, x: &NonplanarForest) -> Series<Word> {
        arborify_nonplanar_contracting(x, &self.quasi.semigroup).expect("free semigroup sums are total")
    }
}

/// `Ω : BCK → MKW` with a pluggable symmetry factor.
#[derive(Clone)]
pub struct Symmetrization {
    pub bck: Bck,
    pub mkw: Mkw,
    sym: SymRule,
}

impl Symmetrization {
    pub fn new(alphabet: usize) -> Self {
        Self::with_sym(alphabet, Arc::new(symmetry_factor))
    }

    pub fn with_sym(alphabet: usize, sym: SymRule) -> Self {
        Self {
            bck: Bck::new(alphabet),
            mkw: Mkw::new(alphabet),
            sym,
        }
    }
}

impl HopfMorphism for Symmetrization {
    type Source = Bck;
    type Target = Mkw;

    fn name(&self) -> String {
        "symmetrization".into()
    }
    fn source(&self) -> &Bck {
        &self.bck
    }
    fn target(&self) -> &Mkw {
        &self.mkw
    }
    fn apply(&self, x: &NonplanarForest) -> Series<PlanarForest> {
        omega_with(x, &*self.sym)
    }
}

/// `φ ∘ m`.
pub fn pullback<M: HopfMorphism + 'static>(
    phi: &LinearFunctional<<M::Target as HopfAlgebra>::Basis>,
    m: Arc<M>,
) -> LinearFunctional<<M::Source as HopfAlgebra>::Basis> {
    let phi = phi.clone();
    let cap = phi.cap();
    LinearFunctional::new(cap, move |x| m.apply(x).pair_with(|y| phi.eval(y).expect("degree preserved")))
}

type Outcome = std::result::Result<(), Violation>;

fn violation(axiom: &str, witness: String) -> Outcome {
    Err(Violation {
        axiom: axiom.into(),
        witness,
    })
}

fn tensor_map<M: HopfMorphism>(
    m: &M,
    t: &Tensor<<M::Source as HopfAlgebra>::Basis>,
) -> Tensor<<M::Target as HopfAlgebra>::Basis> {
    t.map_linear(|(l, r)| {
        m.apply(l)
            .bilinear(&m.apply(r), |a, b| Series::single((a.clone(), b.clone())))
    })
}

/// Checks that `m` preserves degree, has non-negative integer
/// coefficients, sends `1` to `1`, and respects products and coproducts,
/// exhaustively up to `max_degree`.
pub fn verify_morphism<M: HopfMorphism>(m: &M, max_degree: usize) -> AxiomReport {
    let src = m.source();
    let tgt = m.target();
    let basis: Vec<Vec<_>> = (0..=max_degree).map(|n| src.basis(n)).collect();
    let mut checked = Vec::new();
    let mut run = || -> Outcome {
        let mut n = 0;
        for (deg, xs) in basis.iter().enumerate() {
            for x in xs {
                n += 1;
                let y = m.apply(x);
                if y.keys().any(|k| k.degree() != deg) {
                    return violation("grading", format!("{x} ↦ {y}"));
                }
                if !y.has_positive_integer_coefficients() {
                    return violation("integrality", format!("{x} ↦ {y}"));
                }
            }
        }
        if m.apply(&src.one()) != Series::single(tgt.one()) {
            return violation("unit", format!("{} ↦ {}", src.one(), m.apply(&src.one())));
        }
        checked.push(("grading, integrality and unit".to_string(), n));

        let mut n = 0;
        for i in 1..=max_degree {
            for j in 1..=max_degree - i {
                for x in &basis[i] {
                    for y in &basis[j] {
                        n += 1;
                        let lhs = m.apply_series(&src.product(x, y));
                        let rhs = m.apply(x).bilinear(&m.apply(y), |a, b| tgt.product(a, b));
                        if lhs != rhs {
                            return violation(
                                "product",
                                format!("x = {x}, y = {y}: m(xy) − m(x)m(y) = {}", &lhs - &rhs),
                            );
                        }
                    }
                }
            }
        }
        checked.push(("product".to_string(), n));

        let mut n = 0;
        for xs in &basis {
            for x in xs {
                n += 1;
                let lhs = m.apply(x).map_linear(|w| tgt.coproduct(w));
                let rhs = tensor_map(m, &src.coproduct(x));
                if lhs != rhs {
                    return violation(
                        "coproduct",
                        format!("x = {x}: Δm(x) − (m⊗m)Δx = {}", fmt_tensor(&(&lhs - &rhs))),
                    );
                }
            }
        }
        checked.push(("coproduct".to_string(), n));
        Ok(())
    };
    let violation = run().err();
    AxiomReport {
        algebra: m.name(),
        max_degree,
        checked,
        violation,
    }
}

/// Outcome of [`check_diagram`]: the simple and the contracting triangle.
#[derive(Clone, Debug)]
pub struct DiagramReport {
    pub simple: Option<Violation>,
    pub contracting: Option<Violation>,
    pub checked: usize,
}

impl DiagramReport {
    pub fn passed(&self) -> bool {
        self.simple.is_none() && self.contracting.is_none()
    }
}

/// Checks `𝔞_≪∘Ω = 𝔞` and `𝔞^c_≪∘Ω = 𝔞^c` on every non-planar forest up
/// to `max_degree`, with `Ω` built from `sym`.
pub fn check_diagram(max_degree: usize, alphabet: usize, sym: SymRule) -> DiagramReport {
    let omega = Symmetrization::with_sym(alphabet, sym);
    let semigroup = FreeCommutative::new(alphabet);
    let mut report = DiagramReport {
        simple: None,
        contracting: None,
        checked: 0,
    };
    for n in 0..=max_degree {
        for f in omega.bck.basis(n) {
            report.checked += 1;
            let om = omega.apply(&f);
            if report.simple.is_none() {
                let lhs = om.map_linear(arborify_planar);
                let rhs = arborify_nonplanar(&f);
                if lhs != rhs {
                    report.simple = Some(Violation {
                        axiom: "𝔞_≪∘Ω = 𝔞".into(),
                        witness: format!("f = {f}: {lhs} ≠ {rhs}"),
                    });
                }
            }
            if report.contracting.is_none() {
                let lhs = om.map_linear(|t| {
                    arborify_planar_contracting(t, &semigroup).expect("total semigroup")
                });
                let rhs = arborify_nonplanar_contracting(&f, &semigroup).expect("total semigroup");
                if lhs != rhs {
                    report.contracting = Some(Violation {
                        axiom: "𝔞^c_≪∘Ω = 𝔞^c".into(),
                        witness: format!("f = {f}: {lhs} ≠ {rhs}"),
                    });
                }
            }
        }
    }
    report
}

/// The default symmetry rule as a [`SymRule`].
pub fn default_sym() -> SymRule {
    Arc::new(symmetry_factor)
}
