//! Run configuration: parsing and field-level validation.

use std::fmt;
use std::path::Path;

use building_zeta::cayley::DEFAULT_VERTEX_CAP;
use building_zeta::quotient::{AffineSubgroup, TranslationSubgroup};
use building_zeta::selberg::DEFAULT_BOX_CAP;
use building_zeta::zeta::DEFAULT_TOLERANCE;
use building_zeta::{LengthScale, Permutation};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Default cap on the number of paths explored by the backtrackless-cycle oracle.
pub const DEFAULT_CYCLE_PATH_CAP: u64 = 200_000_000;

/// The checks a run can request, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Comparison,
    GeodesicOracle,
    Ihara,
    Invariants,
    Lfunction,
    PositiveZeta,
    SelbergRational,
    SelbergSeries,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::Comparison,
        Check::GeodesicOracle,
        Check::Ihara,
        Check::Invariants,
        Check::Lfunction,
        Check::PositiveZeta,
        Check::SelbergRational,
        Check::SelbergSeries,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Comparison => "comparison",
            Check::GeodesicOracle => "geodesic_oracle",
            Check::Ihara => "ihara",
            Check::Invariants => "invariants",
            Check::Lfunction => "lfunction",
            Check::PositiveZeta => "positive_zeta",
            Check::SelbergRational => "selberg_rational",
            Check::SelbergSeries => "selberg_series",
        }
    }

    /// Whether the check applies to affine groups `M ⋊ P` with nontrivial `P`.
    pub fn supports_affine(self) -> bool {
        matches!(self, Check::SelbergSeries | Check::Invariants)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The subgroup `Γ`.  Matrices are row-major and their columns are the
/// generators in `Λ`-coordinates `(x₁ − xₙ, …, x_{n−1} − xₙ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GammaConfig {
    Translation {
        basis: Vec<Vec<i64>>,
        /// Skip the type-zero requirement (graph-only checks such as the Bass formula).
        #[serde(default, rename = "allowNonTypeZero", skip_serializing_if = "is_false")]
        allow_non_type_zero: bool,
    },
    Affine {
        lattice: Vec<Vec<i64>>,
        /// Generators of `P`, each as the 1-based images `[p(1), …, p(n)]`.
        perms: Vec<Vec<usize>>,
    },
}

fn is_false(b: &bool) -> bool {
    !*b
}

/// Resource caps; raising any above its default requires `acknowledge`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Caps {
    #[serde(default = "default_vertex_cap")]
    pub max_vertices: usize,
    #[serde(default = "default_box_cap")]
    pub max_box_points: u64,
    #[serde(default = "default_cycle_cap")]
    pub max_cycle_paths: u64,
    #[serde(default)]
    pub acknowledge: bool,
}

fn default_vertex_cap() -> usize {
    DEFAULT_VERTEX_CAP
}
fn default_box_cap() -> u64 {
    DEFAULT_BOX_CAP
}
fn default_cycle_cap() -> u64 {
    DEFAULT_CYCLE_PATH_CAP
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            max_vertices: DEFAULT_VERTEX_CAP,
            max_box_points: DEFAULT_BOX_CAP,
            max_cycle_paths: DEFAULT_CYCLE_PATH_CAP,
            acknowledge: false,
        }
    }
}

fn default_scale() -> LengthScale {
    LengthScale::Geodesic
}
fn default_tolerance() -> f64 {
    DEFAULT_TOLERANCE
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct RunConfig {
    pub n: usize,
    pub gamma: GammaConfig,
    pub max_degree: u64,
    #[serde(default = "default_scale")]
    pub scale: LengthScale,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    /// Omitted means every check that applies to the group kind.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<Check>>,
    #[serde(default)]
    pub caps: Caps,
}

/// The validated subgroup.
#[derive(Debug, Clone)]
pub enum Gamma {
    Translation(TranslationSubgroup),
    Affine(AffineSubgroup),
}

impl Gamma {
    /// The translation subgroup, when `P` is trivial.
    pub fn translation(&self) -> Option<&TranslationSubgroup> {
        match self {
            Gamma::Translation(t) => Some(t),
            Gamma::Affine(a) if a.perms().len() == 1 => Some(a.lattice()),
            Gamma::Affine(_) => None,
        }
    }
}

fn invalid(field: &str, msg: impl fmt::Display) -> CliError {
    CliError::Config(format!("{field}: {msg}"))
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// The requested checks, sorted and deduplicated.
    pub fn checks(&self) -> Vec<Check> {
        let mut checks = match &self.checks {
            Some(c) => c.clone(),
            None => match self.gamma {
                GammaConfig::Translation {
                    allow_non_type_zero: true,
                    ..
                } => vec![Check::Ihara],
                GammaConfig::Translation { .. } => Check::ALL.to_vec(),
                GammaConfig::Affine { .. } => Check::ALL.iter().copied().filter(|c| c.supports_affine()).collect(),
            },
        };
        checks.sort();
        checks.dedup();
        checks
    }

    /// Checks the field invariants and builds the subgroup.
    pub fn validate(&self) -> Result<Gamma, CliError> {
        if self.n < 2 {
            return Err(invalid("n", format!("must be at least 2, got {}", self.n)));
        }
        if !(self.tolerance > 0.0 && self.tolerance < 0.5) {
            return Err(invalid("tolerance", "must lie strictly between 0 and 0.5"));
        }
        let defaults = Caps::default();
        let raised = self.caps.max_vertices > defaults.max_vertices
            || self.caps.max_box_points > defaults.max_box_points
            || self.caps.max_cycle_paths > defaults.max_cycle_paths;
        if raised && !self.caps.acknowledge {
            return Err(invalid("caps", "raising a cap above its default requires \"acknowledge\": true"));
        }
        let gamma = match &self.gamma {
            GammaConfig::Translation {
                basis,
                allow_non_type_zero,
            } => {
                let built = if *allow_non_type_zero {
                    TranslationSubgroup::lattice(self.n, basis.clone())
                } else {
                    TranslationSubgroup::new(self.n, basis.clone())
                };
                Gamma::Translation(built.map_err(|e| invalid("gamma.basis", e))?)
            }
            GammaConfig::Affine { lattice, perms } => {
                let m = TranslationSubgroup::lattice(self.n, lattice.clone())
                    .map_err(|e| invalid("gamma.lattice", e))?;
                let gens = perms
                    .iter()
                    .enumerate()
                    .map(|(i, p)| {
                        if p.len() != self.n {
                            return Err(invalid(&format!("gamma.perms[{i}]"), format!("expected {} images", self.n)));
                        }
                        Permutation::from_one_based(p).map_err(|e| invalid(&format!("gamma.perms[{i}]"), e))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Gamma::Affine(AffineSubgroup::new(m, gens).map_err(|e| invalid("gamma", e))?)
            }
        };
        if let GammaConfig::Translation {
            allow_non_type_zero: true,
            ..
        } = self.gamma
        {
            // without type zero the group does not act type-preservingly, so only
            // the statement about the bare graph is meaningful
            if let Some(c) = self.checks().into_iter().find(|c| *c != Check::Ihara) {
                return Err(invalid("gamma.allowNonTypeZero", format!("only the ihara check is available, got {c}")));
            }
        }
        if gamma.translation().is_none() {
            if let Some(c) = self.checks().into_iter().find(|c| !c.supports_affine()) {
                return Err(invalid("checks", format!("{c} requires a translation group")));
            }
        }
        Ok(gamma)
    }
}
