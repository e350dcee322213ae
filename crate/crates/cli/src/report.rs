//! Report documents: JSON (round-trippable) and a human-readable summary.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use building_zeta::multi::PoleReport;
use building_zeta::selberg::ComparisonReport;
use building_zeta::zeta::IharaReport;
use building_zeta::{IntPolynomial, LengthScale, MultiRational, MultiSeries};
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: RunConfig,
    pub checks: ChecksReport,
    /// `check.property → holds`, sorted by name.
    pub verdicts: BTreeMap<String, bool>,
    pub passed: bool,
    /// Defaulted checks that could not run, with the reason.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub skipped: BTreeMap<String, String>,
    pub timings_ms: BTreeMap<String, f64>,
}

/// One optional section per check, in check-name order.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChecksReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comparison: Option<ComparisonReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geodesic_oracle: Option<GeodesicOracleReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ihara: Option<IharaReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariants: Option<InvariantsReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lfunction: Option<LfunctionReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub positive_zeta: Option<PositiveZetaReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub selberg_rational: Option<SelbergRationalReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub selberg_series: Option<SelbergSeriesReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositiveZetaReport {
    pub index: i64,
    pub elementary_divisors: Vec<i64>,
    pub generator_orders: Vec<i64>,
    pub determinant: IntPolynomial,
    pub orders_product: IntPolynomial,
    pub determinant_shape: bool,
    pub determinant_equals_orders: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LfunctionReport {
    pub polynomial: Option<IntPolynomial>,
    /// Largest distance of a coefficient from its rounding.
    pub max_deviation: Option<f64>,
    pub precision_bits: u32,
    pub equals_determinant: bool,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeodesicOracleReport {
    pub max_degree: usize,
    pub euler_product: IntPolynomial,
    pub determinant_truncation: IntPolynomial,
    /// Primitive positive closed geodesic classes per direction `e₁ … eₙ`.
    pub class_counts: Vec<i64>,
    /// `N / mᵢ`.
    pub expected_class_counts: Vec<i64>,
    pub euler_matches_determinant: bool,
    pub class_counts_match: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsReport {
    pub properties: BTreeMap<String, bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelbergSeriesReport {
    pub scale: LengthScale,
    pub max_degree: u64,
    pub series: MultiSeries,
    /// Number of conjugacy classes found (affine groups only).
    pub class_count: Option<usize>,
    /// Weight of the identity class.
    pub identity_weight: i64,
    /// `[G : Γ]`.
    pub expected_identity_weight: i64,
    pub identity_weight_matches: bool,
    /// Enlarging the enumeration box leaves the truncation unchanged.
    pub box_stable: bool,
}

impl SelbergSeriesReport {
    pub fn new(
        config: &RunConfig,
        series: MultiSeries,
        class_count: Option<usize>,
        identity_weight: i64,
        expected: i64,
        box_stable: bool,
    ) -> Self {
        Self {
            scale: config.scale,
            max_degree: config.max_degree,
            class_count,
            identity_weight,
            expected_identity_weight: expected,
            identity_weight_matches: identity_weight == expected,
            box_stable,
            series,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelbergRationalReport {
    pub rational: MultiRational,
    pub display: String,
    pub expansion_degree: u64,
    pub expansion_matches_series: bool,
    pub poles: PoleReport,
    pub poles_on_unit_circle: bool,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Human-readable summary.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let c = &self.config;
        let _ = writeln!(s, "n = {}, maxDegree = {}, scale = {:?}", c.n, c.max_degree, c.scale);
        let ch = &self.checks;
        if let Some(r) = &ch.positive_zeta {
            let _ = writeln!(s, "positive_zeta: N = {}, divisors {:?}, orders {:?}", r.index, r.elementary_divisors, r.generator_orders);
            let _ = writeln!(s, "  determinant    = {}", r.determinant);
            let _ = writeln!(s, "  orders product = {}", r.orders_product);
        }
        if let Some(r) = &ch.lfunction {
            match (&r.polynomial, &r.error) {
                (Some(p), _) => {
                    let _ = writeln!(s, "lfunction: {p} (max deviation {:e}, {} bits)", r.max_deviation.unwrap_or(0.0), r.precision_bits);
                }
                (None, Some(e)) => {
                    let _ = writeln!(s, "lfunction: {e}");
                }
                _ => {}
            }
        }
        if let Some(r) = &ch.geodesic_oracle {
            let _ = writeln!(s, "geodesic_oracle (degree {}): Euler product {}", r.max_degree, r.euler_product);
            let _ = writeln!(s, "  classes per direction {:?}, expected {:?}", r.class_counts, r.expected_class_counts);
        }
        if let Some(r) = &ch.ihara {
            let _ = writeln!(s, "ihara: chi = {}, {} cycle classes to degree {}", r.bass.euler_characteristic, r.cycle_count, r.max_degree);
            let _ = writeln!(s, "  cycle product      = {}", r.cycle_product);
            let _ = writeln!(s, "  det / (1-u^2)^chi  = {}", r.bass_series);
        }
        if let Some(r) = &ch.invariants {
            for (k, v) in &r.properties {
                let _ = writeln!(s, "invariants: {k} = {v}");
            }
        }
        if let Some(r) = &ch.selberg_series {
            let _ = writeln!(s, "selberg_series: identity weight {} (expected {}), {} terms", r.identity_weight, r.expected_identity_weight, r.series.len());
            let _ = writeln!(s, "  {}", r.series);
        }
        if let Some(r) = &ch.selberg_rational {
            let _ = writeln!(s, "selberg_rational: {}", r.display);
        }
        if let Some(r) = &ch.comparison {
            let _ = writeln!(s, "comparison (degree {}):", r.max_degree);
            let _ = writeln!(s, "  S(x,0..0) - id        = {}", r.lhs);
            let _ = writeln!(s, "  -(n-1)! x Z'/Z        = {} [{}]", r.rhs_corrected, if r.corrected_holds { "equal" } else { "differs" });
            let _ = writeln!(s, "  (n-1)! Z'/Z (literal) = {} [{}]", r.rhs_literal, if r.literal_holds { "equal" } else { "differs" });
        }
        for (k, reason) in &self.skipped {
            let _ = writeln!(s, "[SKIP] {k}: {reason}");
        }
        for (k, v) in &self.verdicts {
            let _ = writeln!(s, "[{}] {k}", if *v { "PASS" } else { "FAIL" });
        }
        let _ = writeln!(s, "overall: {}", if self.passed { "PASS" } else { "FAIL" });
        s
    }

    /// The report with all timings zeroed, for determinism comparisons.
    pub fn without_timings(&self) -> Self {
        let mut r = self.clone();
        for v in r.timings_ms.values_mut() {
            *v = 0.0;
        }
        r
    }
}
