//! Sparse multivariate polynomials, truncated series and rational functions
//! with denominators of the form `∏ (1 − monomial)`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Exponent = Vec<u32>;

fn total(e: &[u32]) -> u64 {
    e.iter().map(|&x| u64::from(x)).sum()
}

fn add_exp(a: &[u32], b: &[u32]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Sparse polynomial with big-integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, BigInt>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], BigInt::one())
    }

    pub fn monomial(exp: Exponent, coeff: BigInt) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, coeff);
        p
    }

    /// `1 − u^e`
    pub fn one_minus(exp: &[u32]) -> Self {
        let mut p = Self::one(exp.len());
        p.add_term(exp.to_vec(), -BigInt::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[u32]) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exp: Exponent, coeff: BigInt) {
        debug_assert_eq!(exp.len(), self.nvars);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        let mut out = Self::zero(self.nvars);
        if s.is_zero() {
            return out;
        }
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut acc: BTreeMap<Exponent, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                *acc.entry(add_exp(ea, eb)).or_default() += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Self {
            nvars: self.nvars,
            terms: acc,
        }
    }

    /// Product keeping only terms of total degree `<= cutoff`.
    pub fn mul_truncated(&self, other: &Self, cutoff: u64) -> Self {
        let mut acc: BTreeMap<Exponent, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            let ta = total(ea);
            if ta > cutoff {
                continue;
            }
            for (eb, cb) in &other.terms {
                if ta + total(eb) <= cutoff {
                    *acc.entry(add_exp(ea, eb)).or_default() += ca * cb;
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Self {
            nvars: self.nvars,
            terms: acc,
        }
    }

    fn to_pairs(&self) -> Vec<(Exponent, String)> {
        self.terms
            .iter()
            .map(|(e, c)| (e.clone(), c.to_string()))
            .collect()
    }

    fn from_pairs(nvars: usize, pairs: Vec<(Exponent, String)>) -> std::result::Result<Self, String> {
        let mut p = Self::zero(nvars);
        for (e, c) in pairs {
            if e.len() != nvars {
                return Err(format!("exponent {e:?} has wrong length"));
            }
            let c: BigInt = c.parse().map_err(|_| format!("bad coefficient {c:?}"))?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

/// A power series in `n − 1` variables truncated at total degree `cutoff`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiSeries {
    cutoff: u64,
    poly: MultiPoly,
}

impl MultiSeries {
    pub fn new(nvars: usize, cutoff: u64) -> Self {
        Self {
            cutoff,
            poly: MultiPoly::zero(nvars),
        }
    }

    pub fn from_poly(poly: &MultiPoly, cutoff: u64) -> Self {
        let mut s = Self::new(poly.nvars(), cutoff);
        for (e, c) in poly.terms() {
            s.add_term(e.clone(), c.clone());
        }
        s
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn cutoff(&self) -> u64 {
        self.cutoff
    }

    /// Adds a term; terms beyond the cutoff are dropped.
    pub fn add_term(&mut self, exp: Exponent, coeff: BigInt) {
        if total(&exp) <= self.cutoff {
            self.poly.add_term(exp, coeff);
        }
    }

    pub fn coeff(&self, exp: &[u32]) -> BigInt {
        self.poly.coeff(exp)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.poly.terms()
    }

    pub fn len(&self) -> usize {
        self.poly.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poly.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let cutoff = self.cutoff.min(other.cutoff);
        let mut out = Self::new(self.nvars(), cutoff);
        for (e, c) in self.terms().chain(other.terms()) {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn truncate(&self, cutoff: u64) -> Self {
        let mut out = Self::new(self.nvars(), cutoff.min(self.cutoff));
        for (e, c) in self.terms() {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    /// Coefficients of `u₁^k` (all other exponents zero) for `k = 0..=cutoff`:
    /// the specialization `u = (x, 0, …, 0)`.
    pub fn first_variable_line(&self) -> Vec<BigInt> {
        (0..=self.cutoff)
            .map(|k| {
                let mut e = vec![0u32; self.nvars()];
                if let Some(first) = e.first_mut() {
                    *first = k as u32;
                }
                self.coeff(&e)
            })
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    variables: usize,
    cutoff: u64,
    terms: Vec<(Exponent, String)>,
}

/// Serialized as `{variables, cutoff, terms: [[exponents], "coefficient"]…}`.
impl Serialize for MultiSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesRepr {
            variables: self.nvars(),
            cutoff: self.cutoff,
            terms: self.poly.to_pairs(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = SeriesRepr::deserialize(d)?;
        let poly = MultiPoly::from_pairs(r.variables, r.terms).map_err(D::Error::custom)?;
        Ok(MultiSeries::from_poly(&poly, r.cutoff))
    }
}

/// `numerator / ∏ (1 − u^{e_k})`.
///
/// Denominators stay factored; sums are brought to a common denominator by
/// grouping factors along the same primitive exponent direction and raising
/// them to the lcm exponent, without polynomial gcds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiRational {
    numerator: MultiPoly,
    denominator: Vec<Exponent>,
}

fn primitive_direction(e: &[u32]) -> (Exponent, u32) {
    let g = e.iter().fold(0u32, |acc, &x| acc.gcd(&x));
    (e.iter().map(|x| x / g).collect(), g)
}

/// `1 + u^{e} + u^{2e} + … + u^{(m−1)e}` where the target exponent is `m·e`.
fn geometric_block(e: &[u32], m: u32) -> MultiPoly {
    let mut p = MultiPoly::zero(e.len());
    for k in 0..m {
        p.add_term(e.iter().map(|x| x * k).collect(), BigInt::one());
    }
    p
}

impl MultiRational {
    pub fn new(numerator: MultiPoly, denominator: Vec<Exponent>) -> Result<Self> {
        for e in &denominator {
            if e.len() != numerator.nvars() {
                return Err(Error::Shape(format!("denominator factor {e:?}")));
            }
            if e.iter().all(|&x| x == 0) {
                return Err(Error::Divergent(format!("{e:?}")));
            }
        }
        let mut denominator = denominator;
        denominator.sort();
        Ok(Self {
            numerator,
            denominator,
        })
    }

    pub fn one(nvars: usize) -> Self {
        Self {
            numerator: MultiPoly::one(nvars),
            denominator: Vec::new(),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        Self {
            numerator: MultiPoly::zero(nvars),
            denominator: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.numerator.nvars()
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.numerator
    }

    pub fn denominator_factors(&self) -> &[Exponent] {
        &self.denominator
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        Self {
            numerator: self.numerator.scale(s),
            denominator: self.denominator.clone(),
        }
    }

    fn grouped(&self) -> BTreeMap<Exponent, Vec<u32>> {
        let mut g: BTreeMap<Exponent, Vec<u32>> = BTreeMap::new();
        for e in &self.denominator {
            let (dir, m) = primitive_direction(e);
            g.entry(dir).or_default().push(m);
        }
        g
    }

    /// Numerator of `self` rewritten over the common denominator described by
    /// `target` (direction → (lcm multiple, multiplicity)).
    fn lift_numerator(&self, target: &BTreeMap<Exponent, (u32, usize)>) -> MultiPoly {
        let mine = self.grouped();
        let mut num = self.numerator.clone();
        for (dir, &(lcm, mult)) in target {
            let have = mine.get(dir).cloned().unwrap_or_default();
            for m in &have {
                let step: Exponent = dir.iter().map(|x| x * m).collect();
                num = num.mul(&geometric_block(&step, lcm / m));
            }
            let full: Exponent = dir.iter().map(|x| x * lcm).collect();
            for _ in have.len()..mult {
                num = num.mul(&MultiPoly::one_minus(&full));
            }
        }
        num
    }

    pub fn add(&self, other: &Self) -> Self {
        if other.numerator.is_empty() {
            return self.clone();
        }
        if self.numerator.is_empty() {
            return other.clone();
        }
        if self.denominator == other.denominator {
            return Self {
                numerator: self.numerator.add(&other.numerator),
                denominator: self.denominator.clone(),
            };
        }
        let (ga, gb) = (self.grouped(), other.grouped());
        let mut target: BTreeMap<Exponent, (u32, usize)> = BTreeMap::new();
        for (dir, ms) in ga.iter().chain(gb.iter()) {
            let slot = target.entry(dir.clone()).or_insert((1, 0));
            slot.0 = ms.iter().fold(slot.0, |acc, m| acc.lcm(m));
            slot.1 = slot.1.max(ms.len());
        }
        let numerator = self.lift_numerator(&target).add(&other.lift_numerator(&target));
        let mut denominator = Vec::new();
        for (dir, (lcm, mult)) in &target {
            for _ in 0..*mult {
                denominator.push(dir.iter().map(|x| x * lcm).collect());
            }
        }
        denominator.sort();
        Self {
            numerator,
            denominator,
        }
    }

    /// Power-series expansion through total degree `cutoff`.
    pub fn expand(&self, cutoff: u64) -> MultiSeries {
        let mut acc = MultiPoly::zero(self.nvars());
        for (e, c) in self.numerator.terms() {
            if total(e) <= cutoff {
                acc.add_term(e.clone(), c.clone());
            }
        }
        for f in &self.denominator {
            let step = total(f);
            let mut geo = MultiPoly::zero(self.nvars());
            let mut k = 0u32;
            while u64::from(k) * step <= cutoff {
                geo.add_term(f.iter().map(|x| x * k).collect(), BigInt::one());
                k += 1;
            }
            acc = acc.mul_truncated(&geo, cutoff);
        }
        MultiSeries::from_poly(&acc, cutoff)
    }

    /// Poles of each denominator factor. A factor `1 − u_j^m` vanishes exactly
    /// when `u_j` is an `m`-th root of unity; factors mixing several variables
    /// have no isolated pole coordinates and are reported separately.
    pub fn pole_report(&self) -> PoleReport {
        let mut max_modulus_deviation = 0.0f64;
        let mut max_residual = 0.0f64;
        let mut mixed_factors = 0;
        let mut poles = 0;
        for f in &self.denominator {
            let nonzero: Vec<(usize, u32)> = f
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| (i, x))
                .collect();
            if nonzero.len() != 1 {
                mixed_factors += 1;
                continue;
            }
            let m = nonzero[0].1;
            for k in 0..m {
                let theta = std::f64::consts::TAU * f64::from(k) / f64::from(m);
                let (re, im) = (theta.cos(), theta.sin());
                let modulus = re.hypot(im);
                // z^m via repeated angle
                let (zr, zi) = ((theta * f64::from(m)).cos(), (theta * f64::from(m)).sin());
                let residual = (1.0 - zr).hypot(zi);
                max_modulus_deviation = max_modulus_deviation.max((modulus - 1.0).abs());
                max_residual = max_residual.max(residual);
                poles += 1;
            }
        }
        PoleReport {
            poles,
            mixed_factors,
            max_modulus_deviation,
            max_residual,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoleReport {
    pub poles: usize,
    pub mixed_factors: usize,
    pub max_modulus_deviation: f64,
    pub max_residual: f64,
}

impl PoleReport {
    pub fn on_unit_circle(&self, tol: f64) -> bool {
        self.mixed_factors == 0 && self.max_modulus_deviation <= tol && self.max_residual <= tol
    }
}

#[derive(Serialize, Deserialize)]
struct RationalRepr {
    variables: usize,
    numerator: Vec<(Exponent, String)>,
    denominator_factors: Vec<Exponent>,
}

/// Serialized as `{variables, numerator: [[exponents], "coefficient"]…,
/// denominator_factors: [exponents…]}`, each factor meaning `1 − u^e`.
impl Serialize for MultiRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RationalRepr {
            variables: self.nvars(),
            numerator: self.numerator.to_pairs(),
            denominator_factors: self.denominator.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = RationalRepr::deserialize(d)?;
        let num = MultiPoly::from_pairs(r.variables, r.numerator).map_err(D::Error::custom)?;
        MultiRational::new(num, r.denominator_factors).map_err(D::Error::custom)
    }
}

fn fmt_monomial(f: &mut fmt::Formatter<'_>, e: &[u32]) -> fmt::Result {
    let mut wrote = false;
    for (i, &x) in e.iter().enumerate() {
        if x == 0 {
            continue;
        }
        if wrote {
            write!(f, "*")?;
        }
        wrote = true;
        if x == 1 {
            write!(f, "u{}", i + 1)?;
        } else {
            write!(f, "u{}^{}", i + 1, x)?;
        }
    }
    if !wrote {
        write!(f, "1")?;
    }
    Ok(())
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let constant = e.iter().all(|&x| x == 0);
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if constant {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                fmt_monomial(f, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for MultiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.numerator)?;
        if !self.denominator.is_empty() {
            write!(f, " / ")?;
            for e in &self.denominator {
                write!(f, "(1 - ")?;
                fmt_monomial(f, e)?;
                write!(f, ")")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for MultiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(deg {})", self.poly, self.cutoff + 1)
    }
}
