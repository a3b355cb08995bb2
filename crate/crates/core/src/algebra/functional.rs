use std::sync::Arc;

use num_traits::{One, Zero};

use super::{Graded, Rational, Series};
use crate::{Error, Result};

type Rule<B> = Arc<dyn Fn(&B) -> Rational + Send + Sync>;

/// Linear form on a graded basis, defined up to an explicit degree cap.
#[derive(Clone)]
pub struct LinearFunctional<B> {
    rule: Rule<B>,
    cap: usize,
}

impl<B: Graded + Ord + Clone> LinearFunctional<B> {
    pub fn new(cap: usize, rule: impl Fn(&B) -> Rational + Send + Sync + 'static) -> Self {
        Self {
            rule: Arc::new(rule),
            cap,
        }
    }

    /// The counit: 1 on the unit, 0 elsewhere.
    pub fn counit(cap: usize) -> Self {
        Self::new(cap, |x: &B| {
            if x.degree() == 0 {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn eval(&self, x: &B) -> Result<Rational> {
        let degree = x.degree();
        if degree > self.cap {
            return Err(Error::DegreeCap {
                degree,
                cap: self.cap,
            });
        }
        Ok((self.rule)(x))
    }

    /// The pairing `⟨φ, s⟩`.
    pub fn pair(&self, s: &Series<B>) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (k, v) in s.iter() {
            acc += v * self.eval(k)?;
        }
        Ok(acc)
    }

    /// Evaluates without the cap check; used when composing functionals.
    pub(crate) fn raw(&self, x: &B) -> Rational {
        (self.rule)(x)
    }
}
