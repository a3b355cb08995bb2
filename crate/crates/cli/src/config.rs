use std::path::PathBuf;

use planar_rough::algebra::parse_rational;
use planar_rough::forest::MAX_ALPHABET;
use planar_rough::Rational;
use serde::{Deserialize, Serialize};

use crate::report::Failure;

/// Environment variable holding the hard ceiling on every degree cap.
pub const CAP_VAR: &str = "PRP_MAX_DEGREE";
pub const DEFAULT_CEILING: usize = 8;

/// Run configuration. Loaded from `--config`, then overridden by flags.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Alphabet size for parsing and enumeration. Parsing falls back to
    /// the full alphabet and enumeration to two letters when unset.
    pub alphabet: Option<usize>,
    pub max_degree: usize,
    /// Hölder exponent as an exact rational, e.g. `"1/2"`.
    pub gamma: String,
    pub depth: u32,
    pub precision_bits: u32,
    pub seed: u64,
    pub output: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            alphabet: None,
            max_degree: ceiling().unwrap_or(DEFAULT_CEILING),
            gamma: "1".into(),
            depth: 10,
            precision_bits: 128,
            seed: 1,
            output: None,
        }
    }
}

/// The resource ceiling from the environment.
pub fn ceiling() -> Result<usize, Failure> {
    match std::env::var(CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{CAP_VAR}={v:?} is not a non-negative integer"))),
        Err(_) => Ok(DEFAULT_CEILING),
    }
}

impl Config {
    pub fn validate(&self) -> Result<(), Failure> {
        let ceiling = ceiling()?;
        if self.max_degree > ceiling {
            return Err(Failure::Cap(format!(
                "max_degree {} exceeds the resource ceiling {ceiling} ({CAP_VAR})",
                self.max_degree
            )));
        }
        if let Some(d) = self.alphabet {
            if d == 0 || d > MAX_ALPHABET {
                return Err(Failure::Usage(format!("alphabet size {d} is outside 1..={MAX_ALPHABET}")));
            }
        }
        let g = self.gamma()?;
        if g <= Rational::from_integer(0.into()) || g > Rational::from_integer(1.into()) {
            return Err(Failure::Usage(format!("gamma {} is outside (0, 1]", self.gamma)));
        }
        Ok(())
    }

    pub fn gamma(&self) -> Result<Rational, Failure> {
        parse_rational(&self.gamma).map_err(|e| Failure::Usage(format!("gamma: {e}")))
    }

    pub fn parse_alphabet(&self) -> usize {
        self.alphabet.unwrap_or(MAX_ALPHABET)
    }

    pub fn enumeration_alphabet(&self) -> usize {
        self.alphabet.unwrap_or(2)
    }

    /// Refuses degrees above the configured cap.
    pub fn admit(&self, what: &str, degree: usize) -> Result<(), Failure> {
        if degree > self.max_degree {
            return Err(Failure::Cap(format!(
                "{what} has degree {degree}, above the cap {}",
                self.max_degree
            )));
        }
        Ok(())
    }
}
