//! Batch front end: runs the checks requested by a [`RunConfig`] and
//! assembles a deterministic report.

pub mod config;
pub mod demo;
pub mod report;

use std::collections::BTreeMap;
use std::time::Instant;

use building_zeta::cayley::{build_graph_with_cap, QuotientGraph};
use building_zeta::quotient::{quotient_group, AffineSubgroup, TranslationSubgroup};
use building_zeta::selberg::{
    affine_classes_with_box, comparison_check_with_cap, ConjClass, selberg_rational_translation,
    selberg_series_translation_with_cap, series_from_classes,
};
use building_zeta::zeta::{
    enumerate_positive_geodesics, euler_product_truncation, generator_orders, lfunction, verify_ihara,
    zeta_positive_det, zeta_positive_orders,
};
use building_zeta::{AffineElement, Error, IntPolynomial, MultiSeries};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error as ThisError;

pub use config::{Caps, Check, Gamma, GammaConfig, RunConfig};
use report::{
    ChecksReport, GeodesicOracleReport, InvariantsReport, LfunctionReport, PositiveZetaReport, Report,
    SelbergRationalReport, SelbergSeriesReport,
};

/// Failures that stop a run before a report is produced.
#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("resource cap exceeded: {0}")]
    Resource(String),
    #[error("computation failed: {0}")]
    Compute(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Resource(_) => 3,
            CliError::Compute(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::SizeCap { .. } | Error::BoxExhaustion(_) => CliError::Resource(e.to_string()),
            Error::Multigraph(_) => CliError::Config(format!("checks.ihara: {e}")),
            Error::FractionalLength(_) => {
                CliError::Config(format!("scale: {e}; use \"factorial\" for groups with permutation parts"))
            }
            Error::Tolerance { .. } | Error::NonIntegral => CliError::Compute(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

/// A unit (or other) change of one typed adjacency entry, applied before the
/// checks run. Used only as a negative control.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Perturbation {
    /// Type `i` of the operator `A_i`, 1-based.
    pub ty: usize,
    pub row: usize,
    pub col: usize,
    pub delta: i64,
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub perturbation: Option<Perturbation>,
}

/// Exit code for a finished report: 0 iff every verdict holds.
pub fn report_exit_code(report: &Report) -> i32 {
    if report.passed {
        0
    } else {
        1
    }
}

fn elapsed_ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Lazily computed values shared between checks.
struct Context<'a> {
    config: &'a RunConfig,
    translation: Option<&'a TranslationSubgroup>,
    options: &'a RunOptions,
    graph: Option<QuotientGraph>,
    determinant: Option<IntPolynomial>,
    series: Option<MultiSeries>,
}

impl<'a> Context<'a> {
    fn gamma_t(&self) -> &'a TranslationSubgroup {
        self.translation.expect("validated: translation-only check")
    }

    fn graph(&mut self) -> Result<&QuotientGraph, CliError> {
        if self.graph.is_none() {
            let mut g = build_graph_with_cap(self.gamma_t(), self.config.caps.max_vertices)?;
            if let Some(p) = self.options.perturbation {
                g.perturb(p.ty, p.row, p.col, p.delta)
                    .map_err(|e| CliError::Config(format!("perturbation: {e}")))?;
            }
            self.graph = Some(g);
        }
        Ok(self.graph.as_ref().expect("just built"))
    }

    fn determinant(&mut self) -> Result<IntPolynomial, CliError> {
        if self.determinant.is_none() {
            let d = zeta_positive_det(self.graph()?)?;
            self.determinant = Some(d);
        }
        Ok(self.determinant.clone().expect("just computed"))
    }
}

/// Runs every requested check. Errors abort the run; failed verdicts do not.
pub fn run(config: &RunConfig, options: &RunOptions) -> Result<Report, CliError> {
    let gamma = config.validate()?;
    let checks = config.checks();
    let mut ctx = Context {
        config,
        translation: gamma.translation(),
        options,
        graph: None,
        determinant: None,
        series: None,
    };
    let mut out = ChecksReport::default();
    let mut verdicts = BTreeMap::new();
    let mut timings_ms = BTreeMap::new();
    let mut skipped = BTreeMap::new();
    let max_deg = config.max_degree;
    let n = config.n;

    // the series is shared by selberg_series and selberg_rational, so compute it first
    let mut order: Vec<Check> = checks.clone();
    order.sort_by_key(|c| (*c != Check::SelbergSeries, *c));
    for check in order {
        let t = Instant::now();
        match check {
            Check::PositiveZeta => {
                let gamma_t = ctx.gamma_t();
                let determinant = ctx.determinant()?;
                let orders_product = zeta_positive_orders(gamma_t);
                let total = n * gamma_t.index() as usize;
                let leading = if total.is_multiple_of(2) { BigInt::from(1) } else { BigInt::from(-1) };
                let r = PositiveZetaReport {
                    index: gamma_t.index(),
                    elementary_divisors: quotient_group(gamma_t).divisors().to_vec(),
                    generator_orders: generator_orders(gamma_t),
                    determinant_shape: determinant.degree() == Some(total)
                        && determinant.coeff(0) == BigInt::from(1)
                        && determinant.coeff(total) == leading,
                    determinant_equals_orders: determinant == orders_product,
                    determinant,
                    orders_product,
                };
                verdicts.insert("positive_zeta.determinant_shape".into(), r.determinant_shape);
                verdicts.insert("positive_zeta.determinant_equals_orders".into(), r.determinant_equals_orders);
                out.positive_zeta = Some(r);
            }
            Check::Lfunction => {
                let gamma_t = ctx.gamma_t();
                let determinant = ctx.determinant()?;
                let r = match lfunction(gamma_t, config.tolerance) {
                    Ok(lf) => LfunctionReport {
                        equals_determinant: lf.polynomial == determinant,
                        polynomial: Some(lf.polynomial),
                        max_deviation: Some(lf.max_deviation),
                        precision_bits: lf.precision_bits,
                        error: None,
                    },
                    Err(e @ Error::Tolerance { .. }) => LfunctionReport {
                        polynomial: None,
                        max_deviation: None,
                        precision_bits: 0,
                        equals_determinant: false,
                        error: Some(e.to_string()),
                    },
                    Err(e) => return Err(e.into()),
                };
                verdicts.insert("lfunction.equals_determinant".into(), r.equals_determinant);
                out.lfunction = Some(r);
            }
            Check::GeodesicOracle => {
                let gamma_t = ctx.gamma_t();
                let determinant = ctx.determinant()?;
                let d = max_deg as usize;
                let g = ctx.graph()?;
                let classes = enumerate_positive_geodesics(g, d);
                let euler_product = euler_product_truncation(classes.iter().map(|c| c.length), d);
                let mut class_counts = vec![0i64; n];
                for c in enumerate_positive_geodesics(g, usize::MAX) {
                    class_counts[c.direction - 1] += 1;
                }
                let expected_class_counts: Vec<i64> =
                    generator_orders(gamma_t).iter().map(|m| gamma_t.index() / m).collect();
                let determinant_truncation = determinant.truncate(d);
                let r = GeodesicOracleReport {
                    max_degree: d,
                    euler_matches_determinant: euler_product == determinant_truncation,
                    class_counts_match: class_counts == expected_class_counts,
                    euler_product,
                    determinant_truncation,
                    class_counts,
                    expected_class_counts,
                };
                verdicts.insert("geodesic_oracle.euler_matches_determinant".into(), r.euler_matches_determinant);
                verdicts.insert("geodesic_oracle.class_counts_match".into(), r.class_counts_match);
                out.geodesic_oracle = Some(r);
            }
            Check::Ihara => {
                let d = max_deg as usize;
                let cap = config.caps.max_cycle_paths;
                let g = ctx.graph()?;
                let degree = (1u64 << n) - 2;
                let estimate = (g.num_vertices() as u64)
                    .saturating_mul(degree)
                    .saturating_mul((degree - 1).saturating_pow(d.saturating_sub(1) as u32));
                let (multiplicity, loops) = g.max_multiplicity();
                // a defaulted check that cannot run is skipped and recorded; an
                // explicitly requested one is an error
                let obstacle = if multiplicity > 1 || loops {
                    Some(("the quotient graph has multiple edges or loops".to_string(), false))
                } else if estimate > cap {
                    Some((format!("backtrackless path count estimate {estimate} exceeds the cap {cap}"), true))
                } else {
                    None
                };
                if let Some((reason, resource)) = obstacle {
                    if config.checks.is_none() {
                        skipped.insert(check.name().to_string(), reason);
                        continue;
                    }
                    if resource {
                        return Err(CliError::Resource(reason));
                    }
                }
                let r = verify_ihara(g, d)?;
                verdicts.insert("ihara.bass_formula".into(), r.matches);
                out.ihara = Some(r);
            }
            Check::Invariants => {
                let r = match (&gamma, ctx.translation) {
                    (_, Some(_)) => translation_invariants(ctx.graph()?),
                    (Gamma::Affine(a), None) => {
                        let classes = affine_classes_with_box(a, max_deg, config.scale, 0, config.caps.max_box_points)?;
                        affine_invariants(a, &classes)
                    }
                    (Gamma::Translation(_), None) => unreachable!("translation groups have a lattice"),
                };
                for (k, v) in &r.properties {
                    verdicts.insert(format!("invariants.{k}"), *v);
                }
                out.invariants = Some(r);
            }
            Check::SelbergSeries => {
                let cap = config.caps.max_box_points;
                let r = match (&gamma, ctx.translation) {
                    (_, Some(gt)) => {
                        let series = selberg_series_translation_with_cap(gt, max_deg, config.scale, cap)?;
                        let wider = selberg_series_translation_with_cap(gt, 2 * max_deg, config.scale, cap)?;
                        // only the identity has all lengths zero among translations
                        let identity = series.coeff(&vec![0; n - 1]).to_i64().unwrap_or(-1);
                        let expected = gt.index() * factorial(n);
                        let stable = wider.truncate(max_deg) == series;
                        let r = SelbergSeriesReport::new(config, series.clone(), None, identity, expected, stable);
                        ctx.series = Some(series);
                        r
                    }
                    (Gamma::Affine(a), None) => {
                        let classes = affine_classes_with_box(a, max_deg, config.scale, 0, cap)?;
                        let wide = affine_classes_with_box(a, max_deg, config.scale, max_deg as i64 + 1, cap)?;
                        let series = series_from_classes(n, &classes, max_deg);
                        let stable = series_from_classes(n, &wide, max_deg) == series;
                        let id = AffineElement::identity(n);
                        let identity = classes.iter().find(|c| c.representative == id).map_or(0, |c| c.weight);
                        SelbergSeriesReport::new(config, series, Some(classes.len()), identity, a.index(), stable)
                    }
                    (Gamma::Translation(_), None) => unreachable!("translation groups have a lattice"),
                };
                verdicts.insert("selberg_series.identity_weight".into(), r.identity_weight_matches);
                verdicts.insert("selberg_series.box_stable".into(), r.box_stable);
                out.selberg_series = Some(r);
            }
            Check::SelbergRational => {
                let gt = ctx.gamma_t();
                let rational = selberg_rational_translation(gt, config.scale)?;
                let series = match ctx.series.take() {
                    Some(s) => s,
                    None => selberg_series_translation_with_cap(gt, max_deg, config.scale, config.caps.max_box_points)?,
                };
                let poles = rational.pole_report();
                let r = SelbergRationalReport {
                    display: rational.to_string(),
                    expansion_degree: max_deg,
                    expansion_matches_series: rational.expand(max_deg) == series,
                    poles_on_unit_circle: poles.on_unit_circle(config.tolerance),
                    poles,
                    rational,
                };
                verdicts.insert("selberg_rational.expansion_matches_series".into(), r.expansion_matches_series);
                verdicts.insert("selberg_rational.poles_on_unit_circle".into(), r.poles_on_unit_circle);
                out.selberg_rational = Some(r);
            }
            Check::Comparison => {
                let r = comparison_check_with_cap(ctx.gamma_t(), max_deg as usize, config.caps.max_box_points)?;
                verdicts.insert("comparison.corrected_identity".into(), r.corrected_holds);
                out.comparison = Some(r);
            }
        }
        timings_ms.insert(check.name().to_string(), elapsed_ms(t));
    }
    let passed = verdicts.values().all(|&v| v);
    Ok(Report {
        config: config.clone(),
        checks: out,
        verdicts,
        passed,
        skipped,
        timings_ms,
    })
}

fn factorial(k: usize) -> i64 {
    (1..=k as i64).product()
}

/// Sanity properties of the enumerated conjugacy classes of `M ⋊ P`.
fn affine_invariants(a: &AffineSubgroup, classes: &[ConjClass]) -> InvariantsReport {
    let n = a.rank();
    let identity = AffineElement::identity(n);
    let id_weight = classes.iter().find(|c| c.representative == identity).map(|c| c.weight);
    let mut properties = BTreeMap::new();
    properties.insert("identity_weight_is_index".to_string(), id_weight == Some(a.index()));
    properties.insert("weights_positive".to_string(), classes.iter().all(|c| c.weight >= 1));
    properties.insert(
        "representatives_in_group".to_string(),
        classes
            .iter()
            .all(|c| a.contains_perm(&c.representative.p) && a.lattice().contains(&c.representative.v)),
    );
    InvariantsReport { properties }
}

/// Structural properties of the typed operators of a Cayley quotient.
fn translation_invariants(g: &QuotientGraph) -> InvariantsReport {
    let n = g.rank();
    let nv = g.num_vertices();
    let ops = g.typed_all();
    let mul = building_zeta::linalg::mat_mul::<i64>;
    let transpose = building_zeta::linalg::transpose::<i64>;
    let commute = (0..ops.len()).all(|i| (0..i).all(|j| mul(&ops[i], &ops[j]) == mul(&ops[j], &ops[i])));
    let adjoint = (0..ops.len()).all(|i| transpose(&ops[i]) == ops[n - 2 - i]);
    let sums = ops.iter().enumerate().all(|(i, a)| {
        let want = binomial(n, i + 1);
        (0..nv).all(|r| a[r].iter().sum::<i64>() == want && a.iter().map(|row| row[r]).sum::<i64>() == want)
    });
    // translation by every vertex is an automorphism of every A_i
    let group = g.group();
    let verts = g.vertices();
    let transitive = verts.iter().all(|h| {
        let shift: Vec<usize> = verts.iter().map(|v| group.index_of(&group.add(v, h))).collect();
        ops.iter().all(|a| (0..nv).all(|w| (0..nv).all(|v| a[shift[w]][shift[v]] == a[w][v])))
    });
    let mut properties = BTreeMap::new();
    properties.insert("operators_commute".to_string(), commute);
    properties.insert("transpose_is_complementary_type".to_string(), adjoint);
    properties.insert("row_and_column_sums_binomial".to_string(), sums);
    properties.insert("translation_invariant".to_string(), transitive);
    InvariantsReport { properties }
}
