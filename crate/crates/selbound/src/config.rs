//! TOML experiment manifests: field data for `K/F`, default scalars, and lattices.
//!
//! ```toml
//! p = 2
//! cutoff = 1000000
//! degree_kf = 6
//!
//! [base]
//! kind = "rational"
//!
//! [top]
//! kind = "monogenic"
//! minpoly = [1, -3, 6, -11, 12, 3, 1]   # leading coefficient first
//! ramified = [2, 3]
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use selbound_core::arith::Integer;
use selbound_core::lattice::{
    augmentation_lattice, permutation_lattice, IntMatrix, LatticeDesc, Permutation,
    DEFAULT_ORDER_BOUND,
};
use selbound_core::localdata::GenusMode;
use selbound_core::numfield::{ExtensionDesc, FieldDesc, LocalPrime, MonogenicSpec};
use serde::Deserialize;

use crate::CliError;

/// An integer written either as a TOML integer or, when it does not fit in 64
/// bits, as a decimal string.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum BigValue {
    Small(i64),
    Text(String),
}

impl BigValue {
    fn to_integer(&self) -> Result<Integer, CliError> {
        match self {
            BigValue::Small(n) => Ok(Integer::from(*n)),
            BigValue::Text(s) => s
                .trim()
                .parse()
                .map_err(|_| CliError::Config(format!("not an integer: {s:?}"))),
        }
    }
}

fn integers(values: &[BigValue]) -> Result<Vec<Integer>, CliError> {
    values.iter().map(BigValue::to_integer).collect()
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplittingEntry {
    pub prime: u64,
    /// `(e, f)` for each prime above `prime`.
    pub places: Vec<(u32, u32)>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldConfig {
    Rational,
    Quadratic {
        d: BigValue,
    },
    Multiquadratic {
        generators: Vec<BigValue>,
    },
    Monogenic {
        /// Leading coefficient first.
        minpoly: Vec<BigValue>,
        discriminant: Option<BigValue>,
        ramified: Option<BTreeSet<u64>>,
        #[serde(default)]
        index_coprime: bool,
        #[serde(default)]
        splitting: Vec<SplittingEntry>,
        #[serde(default)]
        trust_irreducible: bool,
    },
}

impl FieldConfig {
    pub fn build(&self) -> Result<FieldDesc, CliError> {
        let field = match self {
            FieldConfig::Rational => FieldDesc::Rational,
            FieldConfig::Quadratic { d } => FieldDesc::quadratic(d.to_integer()?)?,
            FieldConfig::Multiquadratic { generators } => {
                FieldDesc::multiquadratic(integers(generators)?)?
            }
            FieldConfig::Monogenic {
                minpoly,
                discriminant,
                ramified,
                index_coprime,
                splitting,
                trust_irreducible,
            } => {
                let mut coeffs = integers(minpoly)?;
                coeffs.reverse();
                let mut table = BTreeMap::new();
                for entry in splitting {
                    let places = entry
                        .places
                        .iter()
                        .map(|&(e, f)| LocalPrime { e, f })
                        .collect();
                    if table.insert(entry.prime, places).is_some() {
                        return Err(CliError::Config(format!(
                            "splitting data for {} given twice",
                            entry.prime
                        )));
                    }
                }
                FieldDesc::monogenic(MonogenicSpec {
                    minpoly: coeffs,
                    discriminant: discriminant
                        .as_ref()
                        .map(BigValue::to_integer)
                        .transpose()?,
                    ramified: ramified.clone(),
                    index_coprime: *index_coprime,
                    splitting: table,
                    trust_irreducible: *trust_irreducible,
                })?
            }
        };
        Ok(field)
    }
}

/// Contents of a `--config` file. Scalars are defaults that command-line flags
/// override.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub p: Option<u64>,
    #[serde(rename = "X")]
    pub x: Option<u64>,
    pub cutoff: Option<u64>,
    pub mode: Option<ModeName>,
    pub conjectural: Option<bool>,
    /// `F`; the rationals when absent.
    pub base: Option<FieldConfig>,
    /// `K`; equal to `F` when absent.
    pub top: Option<FieldConfig>,
    /// `[K:F]`; `[K:Q]/[F:Q]` when absent.
    pub degree_kf: Option<u32>,
    /// Primes dividing `Δ_K`; derived from `top` when absent.
    pub ramified: Option<BTreeSet<u64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ModeName {
    Paper,
    Refined,
}

impl From<ModeName> for GenusMode {
    fn from(m: ModeName) -> Self {
        match m {
            ModeName::Paper => GenusMode::Paper,
            ModeName::Refined => GenusMode::Refined,
        }
    }
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// The extension `K/F` described by the file.
    pub fn extension(&self) -> Result<ExtensionDesc, CliError> {
        let base = match &self.base {
            Some(b) => b.build()?,
            None => FieldDesc::Rational,
        };
        let top = match &self.top {
            Some(t) => t.build()?,
            None => base.clone(),
        };
        let degree_kf = match self.degree_kf {
            Some(d) => d,
            None if top.degree() % base.degree() == 0 => top.degree() / base.degree(),
            None => {
                return Err(CliError::Config(format!(
                    "[F:Q] = {} does not divide [K:Q] = {}",
                    base.degree(),
                    top.degree()
                )))
            }
        };
        Ok(ExtensionDesc::new(
            base,
            top,
            degree_kf,
            self.ramified.clone(),
            true,
        )?)
    }
}

/// Contents of a `--lattice` file.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum LatticeConfig {
    /// Explicit row-major generator matrices.
    Matrices {
        rank: usize,
        generators: Vec<Vec<Vec<i64>>>,
        order_bound: Option<usize>,
    },
    /// Permutation matrices of the given permutations, each a list of cycles.
    Permutation {
        points: usize,
        generators: Vec<Vec<Vec<usize>>>,
    },
    /// Augmentation sublattice of the permutation lattice.
    Augmentation {
        points: usize,
        generators: Vec<Vec<Vec<usize>>>,
    },
}

impl LatticeConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn build(&self) -> Result<LatticeDesc, CliError> {
        let lattice = match self {
            LatticeConfig::Matrices {
                rank,
                generators,
                order_bound,
            } => {
                let matrices = generators
                    .iter()
                    .map(|rows| IntMatrix::from_rows(rows.clone()))
                    .collect::<Result<Vec<_>, _>>()?;
                LatticeDesc::with_order_bound(
                    *rank,
                    matrices,
                    order_bound.unwrap_or(DEFAULT_ORDER_BOUND),
                )?
            }
            LatticeConfig::Permutation { points, generators } => {
                permutation_lattice(&permutations(*points, generators)?)?
            }
            LatticeConfig::Augmentation { points, generators } => {
                augmentation_lattice(&permutations(*points, generators)?)?
            }
        };
        Ok(lattice)
    }
}

fn permutations(
    points: usize,
    generators: &[Vec<Vec<usize>>],
) -> Result<Vec<Permutation>, CliError> {
    generators
        .iter()
        .map(|cycles| {
            let cycles: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
            Ok(Permutation::from_cycles(points, &cycles)?)
        })
        .collect()
}
