//! The built-in panel of subgroups exercised by `bzeta demo`.

use serde::{Deserialize, Serialize};

use crate::config::{Caps, Check, GammaConfig, RunConfig};
use crate::report::Report;
use crate::{run, CliError, Perturbation, RunOptions};
use building_zeta::LengthScale;

/// A named translation group: `(name, n, basis)` with generators as columns.
pub type PanelGroup = (&'static str, usize, Vec<Vec<i64>>);

/// Translation groups spanning `n = 2, 3, 4` with `N ≤ 40`.
pub fn translation_panel() -> Vec<PanelGroup> {
    vec![
        ("n2-N2", 2, vec![vec![2]]),
        ("n2-N4", 2, vec![vec![4]]),
        ("n2-N6", 2, vec![vec![6]]),
        ("n2-N10", 2, vec![vec![10]]),
        ("n2-N16", 2, vec![vec![16]]),
        ("n2-N40", 2, vec![vec![40]]),
        ("n3-N3", 3, vec![vec![1, 0], vec![-1, 3]]),
        ("n3-N9", 3, vec![vec![3, 0], vec![0, 3]]),
        ("n3-N18", 3, vec![vec![3, 0], vec![0, 6]]),
        ("n3-N27", 3, vec![vec![3, 0], vec![0, 9]]),
        ("n3-N36", 3, vec![vec![6, 0], vec![0, 6]]),
        ("n4-N4", 4, vec![vec![1, 0, 0], vec![-1, 1, 0], vec![0, -1, 4]]),
        ("n4-N8", 4, vec![vec![1, 0, 0], vec![-1, 1, 0], vec![0, -1, 8]]),
        ("n4-N16", 4, vec![vec![2, 0, 0], vec![2, 2, 0], vec![0, 2, 4]]),
        ("n4-N32", 4, vec![vec![2, 0, 0], vec![2, 2, 0], vec![0, 2, 8]]),
    ]
}

/// Groups for the rational-function check, including one that is not
/// stable under coordinate permutations.
pub fn selberg_panel() -> Vec<PanelGroup> {
    vec![
        ("n2-N2", 2, vec![vec![2]]),
        ("n2-N6", 2, vec![vec![6]]),
        ("n3-N3", 3, vec![vec![1, 0], vec![-1, 3]]),
        ("n3-N9", 3, vec![vec![3, 0], vec![0, 3]]),
        ("n3-N6-unstable", 3, vec![vec![3, 1], vec![0, 2]]),
        ("n4-N4", 4, vec![vec![1, 0, 0], vec![-1, 1, 0], vec![0, -1, 4]]),
        ("n4-N8", 4, vec![vec![1, 0, 0], vec![-1, 1, 0], vec![0, -1, 8]]),
        ("n4-N16", 4, vec![vec![2, 0, 0], vec![2, 2, 0], vec![0, 2, 4]]),
    ]
}

fn translation(n: usize, basis: Vec<Vec<i64>>, max_degree: u64, checks: Vec<Check>) -> RunConfig {
    RunConfig {
        n,
        gamma: GammaConfig::Translation {
            basis,
            allow_non_type_zero: false,
        },
        max_degree,
        scale: LengthScale::Geodesic,
        tolerance: 1e-9,
        checks: Some(checks),
        caps: Caps::default(),
    }
}

/// Configurations of the zeta-function panel (determinant, orders, L-function, Euler product).
pub fn zeta_configs() -> Vec<(String, RunConfig)> {
    translation_panel()
        .into_iter()
        .map(|(name, n, basis)| {
            let checks = vec![Check::PositiveZeta, Check::Lfunction, Check::GeodesicOracle, Check::Invariants];
            (format!("zeta/{name}"), translation(n, basis, 12, checks))
        })
        .collect()
}

/// The full panel in report order.
pub fn panel() -> Vec<(String, RunConfig)> {
    let mut out = zeta_configs();
    for (name, n, basis) in translation_panel() {
        out.push((format!("comparison/{name}"), translation(n, basis, 24, vec![Check::Comparison])));
    }
    for (name, n, basis) in selberg_panel() {
        let checks = vec![Check::SelbergSeries, Check::SelbergRational];
        out.push((format!("selberg/{name}"), translation(n, basis, 20, checks)));
    }
    // the Bass formula is a statement about the graph alone, so odd cycles and
    // diag(5,5) are admitted without the type-zero condition
    let ihara = |n: usize, basis: Vec<Vec<i64>>| {
        let mut c = translation(n, basis.clone(), 8, vec![Check::Ihara]);
        c.gamma = GammaConfig::Translation {
            basis,
            allow_non_type_zero: true,
        };
        c
    };
    for nv in 4..=10 {
        out.push((format!("ihara/cycle-{nv}"), ihara(2, vec![vec![nv]])));
    }
    out.push(("ihara/n3-diag5".to_string(), ihara(3, vec![vec![5, 0], vec![0, 5]])));
    let affine = [
        ("affine/n2-swap", 2, vec![vec![2]], vec![vec![2, 1]], LengthScale::Geodesic),
        ("affine/n3-cyclic", 3, vec![vec![3, 0], vec![0, 3]], vec![vec![2, 3, 1]], LengthScale::Factorial),
        ("affine/n3-full", 3, vec![vec![3, 0], vec![0, 3]], vec![vec![2, 3, 1], vec![2, 1, 3]], LengthScale::Factorial),
        ("affine/n4-full", 4, vec![vec![4, 0, 0], vec![0, 4, 0], vec![0, 0, 4]], vec![vec![2, 3, 4, 1], vec![2, 1, 3, 4]], LengthScale::Factorial),
    ];
    for (name, n, lattice, perms, scale) in affine {
        out.push((
            name.to_string(),
            RunConfig {
                n,
                gamma: GammaConfig::Affine { lattice, perms },
                max_degree: 12,
                scale,
                tolerance: 1e-9,
                checks: Some(vec![Check::Invariants, Check::SelbergSeries]),
                caps: Caps::default(),
            },
        ));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DemoEntry {
    pub name: String,
    pub report: Report,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DemoReport {
    pub entries: Vec<DemoEntry>,
    pub passed: bool,
}

/// Runs the panel. A perturbation, if given, is applied to every entry of the
/// zeta-function panel (test mode for the negative control).
pub fn demo_suite(perturbation: Option<Perturbation>) -> Result<DemoReport, CliError> {
    let mut entries = Vec::new();
    for (name, config) in panel() {
        let options = RunOptions {
            perturbation: perturbation.filter(|_| name.starts_with("zeta/")),
        };
        let report = run(&config, &options)?;
        entries.push(DemoEntry { name, report });
    }
    let passed = entries.iter().all(|e| e.report.passed);
    Ok(DemoReport { entries, passed })
}

impl DemoReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for e in &self.entries {
            let failed: Vec<&str> = e.report.verdicts.iter().filter(|(_, v)| !**v).map(|(k, _)| k.as_str()).collect();
            if failed.is_empty() {
                s.push_str(&format!("PASS {}\n", e.name));
            } else {
                s.push_str(&format!("FAIL {} ({})\n", e.name, failed.join(", ")));
            }
        }
        s.push_str(&format!("overall: {}\n", if self.passed { "PASS" } else { "FAIL" }));
        s
    }
}
