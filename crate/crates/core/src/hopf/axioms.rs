use std::collections::HashMap;
use std::fmt;

use super::{antipode_memo, fmt_tensor, product_series, tensor_product, HopfAlgebra, Tensor};
use crate::algebra::{Graded, Series};

/// The first failed instance of an axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: String,
    pub witness: String,
}

/// Outcome of [`check_hopf_axioms`]: instances checked per axiom, in
/// order, and the first violation if any.
#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub algebra: String,
    pub max_degree: usize,
    pub checked: Vec<(String, usize)>,
    pub violation: Option<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} to degree {}", self.algebra, self.max_degree)?;
        for (name, n) in &self.checked {
            writeln!(f, "  {name}: {n} instances")?;
        }
        match &self.violation {
            None => write!(f, "  pass"),
            Some(v) => write!(f, "  FAIL {}: {}", v.axiom, v.witness),
        }
    }
}

struct Run<'h, H: HopfAlgebra> {
    h: &'h H,
    basis: Vec<Vec<H::Basis>>,
    checked: Vec<(String, usize)>,
}

type Outcome = std::result::Result<(), Violation>;

fn fail(axiom: &str, witness: String) -> Outcome {
    Err(Violation {
        axiom: axiom.into(),
        witness,
    })
}

fn nonneg_integer<K: Ord + Clone>(s: &Series<K>) -> bool {
    s.has_positive_integer_coefficients()
}

impl<H: HopfAlgebra> Run<'_, H> {
    fn all(&self) -> impl Iterator<Item = &H::Basis> {
        self.basis.iter().flatten()
    }

    fn pairs(&self) -> Vec<(&H::Basis, &H::Basis)> {
        let max = self.basis.len() - 1;
        let mut out = Vec::new();
        for i in 1..=max {
            for j in 1..=max - i {
                for x in &self.basis[i] {
                    for y in &self.basis[j] {
                        out.push((x, y));
                    }
                }
            }
        }
        out
    }

    fn record(&mut self, name: &str, n: usize) {
        self.checked.push((name.into(), n));
    }

    fn grading_and_integrality(&mut self) -> Outcome {
        let mut n = 0;
        for (deg, xs) in self.basis.iter().enumerate() {
            for x in xs {
                n += 1;
                if x.degree() != deg {
                    return fail("grading", format!("{x} listed in degree {deg}"));
                }
                let d = self.h.coproduct(x);
                if let Some(((l, r), _)) = d.iter().find(|((l, r), _)| l.degree() + r.degree() != deg) {
                    return fail("grading", format!("Δ({x}) contains {l} ⊗ {r}"));
                }
                if !nonneg_integer(&d) {
                    return fail("integrality", format!("Δ({x}) = {}", fmt_tensor(&d)));
                }
            }
        }
        for (x, y) in self.pairs() {
            n += 1;
            let p = self.h.product(x, y);
            if let Some((z, _)) = p.iter().find(|(z, _)| z.degree() != x.degree() + y.degree()) {
                return fail("grading", format!("{x} · {y} contains {z}"));
            }
            if !nonneg_integer(&p) {
                return fail("integrality", format!("{x} · {y} = {p}"));
            }
        }
        self.record("grading and integrality", n);
        Ok(())
    }

    fn counit(&mut self) -> Outcome {
        let one = self.h.one();
        let mut n = 0;
        for x in self.all() {
            n += 1;
            let d = self.h.coproduct(x);
            let left: Series<H::Basis> = d
                .iter()
                .filter(|((l, _), _)| *l == one)
                .map(|((_, r), c)| (r.clone(), c.clone()))
                .collect();
            let right: Series<H::Basis> = d
                .iter()
                .filter(|((_, r), _)| *r == one)
                .map(|((l, _), c)| (l.clone(), c.clone()))
                .collect();
            let target = Series::single(x.clone());
            if left != target || right != target {
                return fail("counit", format!("Δ({x}) = {}", fmt_tensor(&d)));
            }
        }
        self.record("counit", n);
        Ok(())
    }

    fn coassociativity(&mut self) -> Outcome {
        let mut n = 0;
        for x in self.all() {
            n += 1;
            let d = self.h.coproduct(x);
            let mut lhs: Series<(H::Basis, H::Basis, H::Basis)> = Series::zero();
            let mut rhs = Series::zero();
            for ((l, r), c) in d.iter() {
                for ((a, b), e) in self.h.coproduct(l).iter() {
                    lhs.add_term((a.clone(), b.clone(), r.clone()), c * e);
                }
                for ((a, b), e) in self.h.coproduct(r).iter() {
                    rhs.add_term((l.clone(), a.clone(), b.clone()), c * e);
                }
            }
            if lhs != rhs {
                let diff = &lhs - &rhs;
                return fail(
                    "coassociativity",
                    format!(
                        "x = {x}: (Δ⊗id)Δx − (id⊗Δ)Δx = {}",
                        diff.render_with(|(a, b, c)| format!("{a} ⊗ {b} ⊗ {c}"), true)
                    ),
                );
            }
        }
        self.record("coassociativity", n);
        Ok(())
    }

    fn unit(&mut self) -> Outcome {
        let one = self.h.one();
        let mut n = 0;
        for x in self.all() {
            n += 1;
            let target = Series::single(x.clone());
            if self.h.product(&one, x) != target || self.h.product(x, &one) != target {
                return fail("unit", format!("x = {x}"));
            }
        }
        self.record("unit", n);
        Ok(())
    }

    fn associativity(&mut self) -> Outcome {
        let max = self.basis.len() - 1;
        let mut n = 0;
        for i in 1..=max {
            for j in 1..=max - i {
                for k in 1..=max - i - j {
                    for x in &self.basis[i] {
                        for y in &self.basis[j] {
                            let xy = self.h.product(x, y);
                            for z in &self.basis[k] {
                                n += 1;
                                let zs = Series::single(z.clone());
                                let lhs = product_series(self.h, &xy, &zs);
                                let rhs = product_series(
                                    self.h,
                                    &Series::single(x.clone()),
                                    &self.h.product(y, z),
                                );
                                if lhs != rhs {
                                    return fail("associativity", format!("({x} · {y}) · {z} = {lhs}, {x} · ({y} · {z}) = {rhs}"));
                                }
                            }
                        }
                    }
                }
            }
        }
        self.record("associativity", n);
        Ok(())
    }

    fn commutativity(&mut self) -> Outcome {
        let mut n = 0;
        for (x, y) in self.pairs() {
            n += 1;
            if self.h.product(x, y) != self.h.product(y, x) {
                return fail("commutativity", format!("{x} · {y}"));
            }
        }
        self.record("commutativity", n);
        Ok(())
    }

    fn compatibility(&mut self) -> Outcome {
        let mut n = 0;
        for (x, y) in self.pairs() {
            n += 1;
            let lhs: Tensor<H::Basis> = self.h.product(x, y).map_linear(|z| self.h.coproduct(z));
            let rhs = tensor_product(self.h, &self.h.coproduct(x), &self.h.coproduct(y));
            if lhs != rhs {
                return fail(
                    "compatibility",
                    format!("Δ({x} · {y}) − Δ({x})Δ({y}) = {}", fmt_tensor(&(&lhs - &rhs))),
                );
            }
        }
        self.record("compatibility", n);
        Ok(())
    }

    fn antipode(&mut self) -> Outcome {
        let one = self.h.one();
        let mut memo = HashMap::new();
        let mut n = 0;
        for x in self.all() {
            n += 1;
            let target = if *x == one {
                Series::single(one.clone())
            } else {
                Series::zero()
            };
            let d = self.h.coproduct(x);
            let mut left = Series::zero();
            let mut right = Series::zero();
            for ((l, r), c) in d.iter() {
                let sl = antipode_memo(self.h, l, &mut memo);
                let sr = antipode_memo(self.h, r, &mut memo);
                left.add_scaled(&product_series(self.h, &sl, &Series::single(r.clone())), c);
                right.add_scaled(&product_series(self.h, &Series::single(l.clone()), &sr), c);
            }
            if left != target || right != target {
                return fail("antipode", format!("x = {x}: m(S⊗id)Δx = {left}, m(id⊗S)Δx = {right}"));
            }
        }
        self.record("antipode", n);
        Ok(())
    }

    fn run_all(&mut self) -> Outcome {
        self.grading_and_integrality()?;
        self.counit()?;
        self.coassociativity()?;
        self.unit()?;
        self.associativity()?;
        if self.h.is_commutative() {
            self.commutativity()?;
        }
        self.compatibility()?;
        self.antipode()
    }
}

/// Exhaustively checks the bialgebra axioms, grading, non-negative integer
/// structure constants and the antipode on every basis element (and every
/// pair and triple) of total degree at most `max_degree`.
pub fn check_hopf_axioms<H: HopfAlgebra>(h: &H, max_degree: usize) -> AxiomReport {
    let mut run = Run {
        h,
        basis: (0..=max_degree).map(|n| h.basis(n)).collect(),
        checked: Vec::new(),
    };
    let violation = run.run_all().err();
    AxiomReport {
        algebra: h.name(),
        max_degree,
        checked: run.checked,
        violation,
    }
}

/// Negative control: drops every coproduct term whose left factor has
/// degree one when the argument has degree at least three.
#[derive(Clone, Debug)]
pub struct Corrupted<H>(pub H);

impl<H: HopfAlgebra> HopfAlgebra for Corrupted<H> {
    type Basis = H::Basis;

    fn name(&self) -> String {
        format!("corrupted {}", self.0.name())
    }

    fn one(&self) -> H::Basis {
        self.0.one()
    }

    fn product(&self, x: &H::Basis, y: &H::Basis) -> Series<H::Basis> {
        self.0.product(x, y)
    }

    fn coproduct(&self, x: &H::Basis) -> Tensor<H::Basis> {
        let d = self.0.coproduct(x);
        if x.degree() < 3 {
            return d;
        }
        d.into_terms().filter(|((l, _), _)| l.degree() != 1).collect()
    }

    fn basis(&self, n: usize) -> Vec<H::Basis> {
        self.0.basis(n)
    }

    fn is_commutative(&self) -> bool {
        self.0.is_commutative()
    }
}
