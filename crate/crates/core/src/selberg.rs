//! The several-variable Selberg-type zeta `S_Γ(u) = Σ_{[γ]} #(Γ_γ\G_γ) u^{l(γ)}`:
//! truncated series by conjugacy-class enumeration, the exact rational
//! function for translation groups via cone decompositions, and the
//! comparison with the positive-geodesic zeta.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cone::{cone_decompose, rational_cone_sum, FaceDescriptor};
use crate::error::{Error, Result};
use crate::lambda::{
    cycle_average, length_vector, translation_lengths, AffineElement, LambdaElement, LengthScale,
    LengthVector, Permutation,
};
use crate::linalg::{abs_det, hermite_rows, integer_kernel, mat_mul, mat_vec, smith, Matrix};
use crate::multi::{Exponent, MultiRational, MultiSeries};
use crate::quotient::{quotient_group, AffineSubgroup, TranslationSubgroup};
use crate::zeta::zeta_positive_orders;
use crate::{IntPolynomial, Rational};

/// Default cap on the number of lattice points scanned by one enumeration.
pub const DEFAULT_BOX_CAP: u64 = 20_000_000;

fn factorial(k: usize) -> i64 {
    (1..=k as i64).product()
}

/// `#K_x = ∏ mᵢ!` over the multiplicities of the coordinate values of `x`.
pub fn stabilizer_order(x: &LambdaElement) -> i64 {
    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    for &c in x.coords() {
        *counts.entry(c).or_default() += 1;
    }
    counts.values().map(|&m| factorial(m)).product()
}

/// Calls `f` on every canonical vector with entries in `[0, bound]`.
fn for_each_canonical(n: usize, bound: i64, cap: u64, mut f: impl FnMut(&LambdaElement)) -> Result<()> {
    let points = (bound as u64 + 1).checked_pow(n as u32).unwrap_or(u64::MAX);
    if points > cap {
        return Err(Error::SizeCap {
            what: "enumeration box points",
            value: usize::try_from(points).unwrap_or(usize::MAX),
            cap: cap as usize,
        });
    }
    let mut x = vec![0i64; n];
    loop {
        if x.contains(&0) {
            f(&LambdaElement::from_raw(&x));
        }
        let mut k = 0;
        loop {
            if k == n {
                return Ok(());
            }
            x[k] += 1;
            if x[k] <= bound {
                break;
            }
            x[k] = 0;
            k += 1;
        }
    }
}

fn exponents_of(lengths: &[i64]) -> Exponent {
    lengths.iter().map(|&l| l as u32).collect()
}

/// `Σ_{γ∈Γ, |l(γ)| ≤ D} N·#K_γ·u^{l(γ)}`.
pub fn selberg_series_translation(gamma: &TranslationSubgroup, max_deg: u64, scale: LengthScale) -> Result<MultiSeries> {
    selberg_series_translation_with_cap(gamma, max_deg, scale, DEFAULT_BOX_CAP)
}

pub fn selberg_series_translation_with_cap(
    gamma: &TranslationSubgroup,
    max_deg: u64,
    scale: LengthScale,
    cap: u64,
) -> Result<MultiSeries> {
    let n = gamma.rank();
    let nn = BigInt::from(gamma.index());
    // total length is scale · (max − min)
    let bound = max_deg as i64 / scale.factor(n);
    let mut series = MultiSeries::new(n - 1, max_deg);
    for_each_canonical(n, bound, cap, |x| {
        if gamma.contains(x) {
            let l = translation_lengths(x, scale);
            series.add_term(exponents_of(&l), &nn * BigInt::from(stabilizer_order(x)));
        }
    })?;
    Ok(series)
}

/// Basis (in face coordinates) of `{t : embed(t) ∈ σΓ}`.
fn face_lattice(face: &FaceDescriptor, sigma_inv: &Permutation, q_u: &Matrix<i64>, divisors: &[i64]) -> Vec<Vec<i64>> {
    let n = face.rank();
    let dim = face.dim();
    // columns: Λ-coordinates of σ⁻¹·embed(unit_j), then projected by U
    let mut phi: Matrix<i64> = vec![vec![0; dim + (n - 1)]; n - 1];
    for j in 0..dim {
        let t: Vec<i64> = (0..dim).map(|i| i64::from(i == j)).collect();
        let x = sigma_inv.act_lambda(&face.embed(&t));
        let col = mat_vec(q_u, &x.lattice_coords());
        for (i, v) in col.into_iter().enumerate() {
            phi[i][j] = v;
        }
    }
    for (i, &d) in divisors.iter().enumerate() {
        phi[i][dim + i] = d;
    }
    let kernel = integer_kernel(&phi);
    let projected: Vec<Vec<i64>> = kernel.iter().map(|k| k[..dim].to_vec()).collect();
    hermite_rows(&projected)
}

/// Exact `S_Γ` for a translation group:
/// `N · Σ_{σ∈Per(n)} Σ_S Σ_{x ∈ Λ⁺_S ∩ σΓ} u^{l(x)}`, each inner sum a cone sum.
pub fn selberg_rational_translation(gamma: &TranslationSubgroup, scale: LengthScale) -> Result<MultiRational> {
    let n = gamma.rank();
    let q = quotient_group(gamma);
    let mut multiplicity: BTreeMap<Vec<Vec<Vec<i64>>>, (Permutation, i64)> = BTreeMap::new();
    let faces = FaceDescriptor::all(n);
    // σ with equal σΓ contribute equally; group them by the face lattices
    for sigma in Permutation::all(n) {
        let inv = sigma.inverse();
        let key: Vec<Vec<Vec<i64>>> = faces
            .iter()
            .map(|f| face_lattice(f, &inv, q.transform(), q.divisors()))
            .collect();
        multiplicity.entry(key).or_insert((sigma, 0)).1 += 1;
    }
    let mut total = MultiRational::zero(n - 1);
    for (lattices, (_, count)) in multiplicity {
        for (face, basis) in faces.iter().zip(lattices) {
            let gens: Vec<LambdaElement> = basis.iter().map(|t| face.embed(t)).collect();
            let dec = cone_decompose(face, &gens)?;
            let sum = rational_cone_sum(&dec, |x| translation_lengths(x, scale))?;
            total = total.add(&sum.scale(&BigInt::from(count)));
        }
    }
    Ok(total.scale(&BigInt::from(gamma.index())))
}

/// A `Γ`-conjugacy class with its weight `#(Γ_γ\G_γ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjClass {
    pub representative: AffineElement,
    pub weight: i64,
    pub lengths: LengthVector,
}

/// Matrix of the permutation action on `M` in the coordinates of its basis.
fn action_on_basis(p: &Permutation, basis: &Matrix<i64>, basis_inv_adj: &Matrix<i64>, det: i64) -> Matrix<i64> {
    // R = B⁻¹ P B, computed as adj(B)·P·B / det(B)
    let pb = mat_mul(&p.lattice_matrix(), basis);
    let prod = mat_mul(basis_inv_adj, &pb);
    prod.into_iter()
        .map(|r| r.into_iter().map(|x| x / det).collect())
        .collect()
}

/// Adjugate and determinant via Smith transforms: `B⁻¹ = V·D⁻¹·U`.
fn adjugate(b: &Matrix<i64>) -> (Matrix<i64>, i64) {
    let s = smith(b);
    let det_abs = s.diag.iter().product::<i64>();
    let k = b.len();
    // V·(det/D)·U is det·B⁻¹ up to the sign of det(U)det(V); use |det| consistently
    let mut scaled = vec![vec![0i64; k]; k];
    for i in 0..k {
        for j in 0..k {
            scaled[i][j] = if i == j { det_abs / s.diag[i] } else { 0 };
        }
    }
    (mat_mul(&mat_mul(&s.v, &scaled), &s.u), det_abs)
}

/// Data for the classes with a fixed permutation part `p`.
struct PermData {
    p: Permutation,
    /// Smith data of `I − R_p` on `M`.
    u: Matrix<i64>,
    diag: Vec<i64>,
    rank: usize,
    centralizer: Vec<Permutation>,
    /// `R_q` for `q ∈ C_P(p)`.
    centralizer_mats: Vec<Matrix<i64>>,
}

impl PermData {
    /// Coordinates of `c ∈ M` in `M/(1−p)M ≅ ⊕Z/δᵢ ⊕ Z^f`.
    fn key(&self, c: &[i64]) -> Vec<i64> {
        mat_vec(&self.u, c)
            .into_iter()
            .enumerate()
            .map(|(i, x)| if i < self.rank { x.mod_floor(&self.diag[i]) } else { x })
            .collect()
    }

    fn in_image(&self, c: &[i64]) -> bool {
        self.key(c).iter().all(Zero::is_zero)
    }

    fn torsion_size(&self) -> i64 {
        self.diag[..self.rank].iter().product()
    }
}

fn to_m_coords(x: &LambdaElement, adj: &Matrix<i64>, det: i64) -> Vec<i64> {
    mat_vec(adj, &x.lattice_coords()).into_iter().map(|v| v / det).collect()
}

/// Whether `y ∈ (1 − p)Λ`: cycle sums `s_C` must all equal `k·|C|` for one integer `k`.
pub fn in_image_of_one_minus(p: &Permutation, y: &[i64]) -> bool {
    let mut common: Option<i64> = None;
    for cyc in p.cycles() {
        let s: i64 = cyc.iter().map(|&i| y[i]).sum();
        let len = cyc.len() as i64;
        if s % len != 0 {
            return false;
        }
        match common {
            None => common = Some(s / len),
            Some(k) if k != s / len => return false,
            _ => {}
        }
    }
    true
}

/// `[Λ^p : M^p]`: the size of the image of the `p`-fixed lattice in `Λ/M`.
fn fixed_index(p: &Permutation, m: &TranslationSubgroup) -> i64 {
    let n = p.len();
    let q = quotient_group(m);
    let mut gens: Matrix<i64> = p
        .cycles()
        .iter()
        .map(|cyc| {
            let mut raw = vec![0i64; n];
            for &i in cyc {
                raw[i] = 1;
            }
            q.project(&LambdaElement::from_raw(&raw))
        })
        .collect();
    for (i, &d) in q.divisors().iter().enumerate() {
        gens.push((0..n - 1).map(|j| if i == j { d } else { 0 }).collect());
    }
    let h = hermite_rows(&gens);
    q.order() / abs_det(&h)
}

/// `#(Γ_γ\G_γ) = [Λ^p : M^p] · |Q_G| / |Q_Γ|`, where `Q_G ≤ C_K(p)` and
/// `Q_Γ ≤ C_P(p)` are the permutation parts of the centralizers.
fn class_weight(v: &LambdaElement, data: &PermData, c: &[i64], m: &TranslationSubgroup) -> i64 {
    let p = &data.p;
    let n = p.len();
    let q_g = Permutation::all(n)
        .into_iter()
        .filter(|q| q.compose(p) == p.compose(q))
        .filter(|q| {
            let qv = q.act(v.coords());
            let y: Vec<i64> = qv.iter().zip(v.coords()).map(|(a, b)| b - a).collect();
            in_image_of_one_minus(p, &y)
        })
        .count() as i64;
    let q_gamma = data
        .centralizer_mats
        .iter()
        .filter(|r| {
            let rc = mat_vec(r, c);
            let y: Vec<i64> = c.iter().zip(&rc).map(|(a, b)| a - b).collect();
            data.in_image(&y)
        })
        .count() as i64;
    fixed_index(p, m) * q_g / q_gamma
}

/// Representatives of the conjugacy classes of `P`.
fn perm_class_reps(perms: &[Permutation]) -> Vec<Permutation> {
    let mut seen = BTreeSet::new();
    let mut reps = Vec::new();
    for p in perms {
        if seen.contains(p) {
            continue;
        }
        for q in perms {
            seen.insert(q.compose(p).compose(&q.inverse()));
        }
        reps.push(p.clone());
    }
    reps
}

/// Largest coordinate of a fundamental parallelepiped of `(1 − p)M̃` in `Zⁿ`.
fn reduction_width(p: &Permutation, m: &TranslationSubgroup) -> i64 {
    let n = p.len();
    let rows: Matrix<i64> = m
        .generators()
        .iter()
        .map(|g| {
            let pg = p.act(g.coords());
            g.coords().iter().zip(&pg).map(|(a, b)| a - b).collect()
        })
        .collect();
    let h = hermite_rows(&rows);
    (0..n)
        .map(|j| h.iter().map(|r| r[j].abs()).sum::<i64>())
        .max()
        .unwrap_or(0)
}

/// All `Γ`-conjugacy classes with total length at most `max_deg`.
pub fn affine_classes(gamma: &AffineSubgroup, max_deg: u64, scale: LengthScale) -> Result<Vec<ConjClass>> {
    affine_classes_with_box(gamma, max_deg, scale, 0, DEFAULT_BOX_CAP)
}

/// As [`affine_classes`], with `extra` added to the box bound (used to check
/// that enlarging the box changes nothing).
pub fn affine_classes_with_box(
    gamma: &AffineSubgroup,
    max_deg: u64,
    scale: LengthScale,
    extra: i64,
    cap: u64,
) -> Result<Vec<ConjClass>> {
    let m = gamma.lattice();
    let n = gamma.rank();
    let (adj, det) = adjugate(m.basis());
    let mut out = Vec::new();
    for p in perm_class_reps(gamma.perms()) {
        let r_p = action_on_basis(&p, m.basis(), &adj, det);
        let one_minus: Matrix<i64> = (0..n - 1)
            .map(|i| (0..n - 1).map(|j| i64::from(i == j) - r_p[i][j]).collect())
            .collect();
        let s = smith(&one_minus);
        let centralizer: Vec<Permutation> = gamma
            .perms()
            .iter()
            .filter(|q| q.compose(&p) == p.compose(q))
            .cloned()
            .collect();
        let centralizer_mats = centralizer
            .iter()
            .map(|q| action_on_basis(q, m.basis(), &adj, det))
            .collect();
        let data = PermData {
            p: p.clone(),
            u: s.u,
            diag: s.diag,
            rank: s.rank,
            centralizer,
            centralizer_mats,
        };

        let bound = max_deg as i64 / scale.factor(n) + 2 * reduction_width(&p, m) + extra;
        // key → (representative, M-coordinates, lengths)
        let mut found: BTreeMap<Vec<i64>, (LambdaElement, Vec<i64>, LengthVector)> = BTreeMap::new();
        let mut failure = None;
        for_each_canonical(n, bound, cap, |x| {
            if failure.is_some() || !m.contains(x) {
                return;
            }
            let g = AffineElement {
                v: x.clone(),
                p: p.clone(),
            };
            let l = length_vector(&g, scale);
            let total = l.total();
            if total > Rational::from_integer(max_deg as i64) {
                return;
            }
            if !l.is_integral() {
                failure = Some(Error::FractionalLength(format!("{g} has lengths {l}")));
                return;
            }
            let c = to_m_coords(x, &adj, det);
            let key = data.key(&c);
            let better = found.get(&key).is_none_or(|(rep, _, _)| {
                (rep.spread(), rep.coords()) > (x.spread(), x.coords())
            });
            if better {
                found.insert(key, (x.clone(), c, l));
            }
        })?;
        if let Some(e) = failure {
            return Err(e);
        }

        // every free part must come with all torsion classes
        let torsion = data.torsion_size();
        let mut fibers: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        for key in found.keys() {
            *fibers.entry(key[data.rank..].to_vec()).or_default() += 1;
        }
        if let Some((free, count)) = fibers.iter().find(|(_, &c)| c != torsion) {
            return Err(Error::BoxExhaustion(format!(
                "permutation {p}: free part {free:?} has {count} of {torsion} torsion classes"
            )));
        }

        // merge keys along the C_P(p)-action
        let mut done: BTreeSet<Vec<i64>> = BTreeSet::new();
        for (key, (rep, c, l)) in &found {
            if done.contains(key) {
                continue;
            }
            for r in &data.centralizer_mats {
                done.insert(data.key(&mat_vec(r, c)));
            }
            let weight = class_weight(rep, &data, c, m);
            out.push(ConjClass {
                representative: AffineElement {
                    v: rep.clone(),
                    p: p.clone(),
                },
                weight,
                lengths: l.clone(),
            });
        }
        debug_assert!(data.centralizer.contains(&p));
    }
    Ok(out)
}

/// `Σ_{[γ]} #(Γ_γ\G_γ) u^{l(γ)}` through total degree `max_deg` for `Γ = M ⋊ P`.
pub fn selberg_series_affine(gamma: &AffineSubgroup, max_deg: u64, scale: LengthScale) -> Result<MultiSeries> {
    let classes = affine_classes(gamma, max_deg, scale)?;
    Ok(series_from_classes(gamma.rank(), &classes, max_deg))
}

pub fn series_from_classes(n: usize, classes: &[ConjClass], max_deg: u64) -> MultiSeries {
    let mut series = MultiSeries::new(n - 1, max_deg);
    for c in classes {
        let e = c.lengths.exponents().expect("class lengths are integral");
        series.add_term(e, BigInt::from(c.weight));
    }
    series
}

/// Both sides of the comparison between `S_Γ(x, 0, …, 0)` and `Z₊`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub max_degree: usize,
    /// Non-identity part of `S_Γ(x, 0, …, 0)`.
    pub lhs: IntPolynomial,
    /// `−(n−1)!·x·Z₊′/Z₊`.
    pub rhs_corrected: IntPolynomial,
    /// `(n−1)!·Z₊′/Z₊` as literally stated.
    pub rhs_literal: IntPolynomial,
    pub corrected_holds: bool,
    pub literal_holds: bool,
}

pub fn comparison_check(gamma: &TranslationSubgroup, max_deg: usize) -> Result<ComparisonReport> {
    comparison_check_with_cap(gamma, max_deg, DEFAULT_BOX_CAP)
}

pub fn comparison_check_with_cap(gamma: &TranslationSubgroup, max_deg: usize, cap: u64) -> Result<ComparisonReport> {
    let n = gamma.rank();
    let series = selberg_series_translation_with_cap(gamma, max_deg as u64, LengthScale::Geodesic, cap)?;
    let mut line = series.first_variable_line();
    line[0] = BigInt::zero();
    let lhs = IntPolynomial::new(line);

    let z = zeta_positive_orders(gamma);
    let inv = z.series_inverse(max_deg).expect("Z₊ has constant term 1");
    let log_deriv = z.derivative().mul_truncated(&inv, max_deg);
    let nf = BigInt::from(factorial(n - 1));
    let rhs_literal = log_deriv.scale(&nf);
    let rhs_corrected = log_deriv.shift(1).truncate(max_deg).scale(&-nf);
    Ok(ComparisonReport {
        max_degree: max_deg,
        corrected_holds: lhs == rhs_corrected,
        literal_holds: lhs == rhs_literal,
        lhs,
        rhs_corrected,
        rhs_literal,
    })
}

/// The unique `j` (1-based) with `l_j(g) ≠ 0`, if exactly one length is nonzero.
pub fn rational_geodesic_pattern(g: &AffineElement) -> Option<usize> {
    let l = length_vector(g, LengthScale::Factorial);
    let nonzero: Vec<usize> = (0..l.values.len()).filter(|&j| !l.values[j].is_zero()).collect();
    match nonzero.as_slice() {
        [j] => Some(j + 1),
        _ => None,
    }
}

/// The `G_R`-conjugacy invariant of `g`: the sorted fixed-space projection and
/// the least permutation part compatible with that sorting.
pub fn real_canonical_form(g: &AffineElement) -> (Vec<Rational>, Permutation) {
    let x = cycle_average(g.v.coords(), &g.p);
    let n = x.len();
    let min = x.iter().min().copied().unwrap_or_else(Rational::zero);
    let shifted: Vec<Rational> = x.iter().map(|v| v - min).collect();
    let mut sorted = shifted.clone();
    sorted.sort_by(|a, b| b.cmp(a));
    let best = Permutation::all(n)
        .into_iter()
        .filter(|q| q.act(&shifted) == sorted)
        .map(|q| q.compose(&g.p).compose(&q.inverse()))
        .min()
        .expect("some permutation sorts the vector");
    (sorted, best)
}

/// An explicit `h ∈ G` with `h x h⁻¹ = y`, if one exists.
pub fn find_conjugator(x: &AffineElement, y: &AffineElement) -> Option<AffineElement> {
    let n = x.rank();
    for q in Permutation::all(n) {
        if q.compose(&x.p).compose(&q.inverse()) != y.p {
            continue;
        }
        // need (1 − p_y) w = v_y − q v_x in Λ
        let qv = q.act(x.v.coords());
        let mut target: Vec<i64> = y.v.coords().iter().zip(&qv).map(|(a, b)| a - b).collect();
        if !in_image_of_one_minus(&y.p, &target) {
            continue;
        }
        let cycles = y.p.cycles();
        let k = {
            let c = &cycles[0];
            c.iter().map(|&i| target[i]).sum::<i64>() / c.len() as i64
        };
        for t in target.iter_mut() {
            *t -= k;
        }
        let mut w = vec![0i64; n];
        for cyc in &cycles {
            // ((1 − p)w)_{p(i)} = w_{p(i)} − w_i along the cycle
            let mut i = cyc[0];
            for _ in 1..cyc.len() {
                let next = y.p.apply(i);
                w[next] = w[i] + target[next];
                i = next;
            }
        }
        let h = AffineElement {
            v: LambdaElement::from_raw(&w),
            p: q,
        };
        if &x.conjugate_by(&h) == y {
            return Some(h);
        }
    }
    None
}
