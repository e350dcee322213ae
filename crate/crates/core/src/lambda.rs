//! The translation lattice `Λ = Zⁿ/Δ`, the permutation group and the affine
//! group `G = Λ ⋊ Per(n)`, together with the conjugation-invariant length
//! functions and the face predicate of the building.

use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::Rational;

/// An element of `Λ`, stored by its canonical representative (`min = 0`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LambdaElement {
    coords: Vec<i64>,
}

/// Picks the representative of `raw` modulo the diagonal with minimum zero.
pub fn canonicalize(raw: &[i64], n: usize) -> Result<LambdaElement> {
    if raw.len() != n {
        return Err(Error::WrongLength {
            expected: n,
            got: raw.len(),
        });
    }
    if n < 2 {
        return Err(Error::RankTooSmall(n));
    }
    Ok(LambdaElement::from_raw(raw))
}

/// Sum of coordinates modulo `n`.
pub fn type_of(a: &LambdaElement) -> usize {
    a.type_of()
}

impl LambdaElement {
    /// Canonicalizes `raw`; panics on an empty slice.
    pub fn from_raw(raw: &[i64]) -> Self {
        let min = *raw.iter().min().expect("nonempty coordinates");
        Self {
            coords: raw.iter().map(|x| x - min).collect(),
        }
    }

    pub fn zero(n: usize) -> Self {
        Self { coords: vec![0; n] }
    }

    /// The image of the `i`-th standard basis vector (0-based).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut c = vec![0; n];
        c[i] = 1;
        Self::from_raw(&c)
    }

    /// From coordinates in the basis `e₁…e_{n−1}` of `Λ ≅ Z^{n−1}`, where
    /// `e_n = −(e₁+…+e_{n−1})`.
    pub fn from_lattice_coords(c: &[i64]) -> Self {
        let mut raw = c.to_vec();
        raw.push(0);
        Self::from_raw(&raw)
    }

    /// Coordinates in the basis `e₁…e_{n−1}`: `c_i = x_i − x_n`.
    pub fn lattice_coords(&self) -> Vec<i64> {
        let last = *self.coords.last().expect("rank >= 1");
        self.coords[..self.coords.len() - 1]
            .iter()
            .map(|x| x - last)
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn type_of(&self) -> usize {
        let n = self.coords.len() as i64;
        self.coords.iter().sum::<i64>().rem_euclid(n) as usize
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let raw: Vec<i64> = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Self::from_raw(&raw)
    }

    pub fn neg(&self) -> Self {
        let raw: Vec<i64> = self.coords.iter().map(|a| -a).collect();
        Self::from_raw(&raw)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> Self {
        let raw: Vec<i64> = self.coords.iter().map(|a| a * k).collect();
        Self::from_raw(&raw)
    }

    /// `max − min` of the coordinates: the total geodesic length of a translation.
    pub fn spread(&self) -> i64 {
        *self.coords.iter().max().expect("nonempty")
    }
}

impl fmt::Display for LambdaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A permutation of `{0, …, n−1}`; `images[i]` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    /// From 1-based images, the notation used in configuration files.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation(format!("{images:?}")));
        }
        Self::new(images.iter().map(|i| i - 1).collect())
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.images.iter().map(|i| i + 1).collect()
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// The transposition of `i` and `j` (0-based).
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i, j);
        Self { images }
    }

    /// `i ↦ i + 1 mod n`.
    pub fn cycle(n: usize) -> Self {
        Self {
            images: (0..n).map(|i| (i + 1) % n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Self { images }
    }

    /// Action on coordinate vectors: `e_i ↦ e_{p(i)}`, i.e. `(p·x)_{p(i)} = x_i`.
    pub fn act<T: Clone>(&self, x: &[T]) -> Vec<T> {
        let mut out = x.to_vec();
        for (i, &j) in self.images.iter().enumerate() {
            out[j] = x[i].clone();
        }
        out
    }

    pub fn act_lambda(&self, v: &LambdaElement) -> LambdaElement {
        LambdaElement::from_raw(&self.act(v.coords()))
    }

    /// Disjoint cycles, each starting at its smallest element, including fixed points.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut j = self.images[start];
            while j != start {
                seen[j] = true;
                cyc.push(j);
                j = self.images[j];
            }
            out.push(cyc);
        }
        out
    }

    /// Sorted cycle lengths.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable();
        t
    }

    pub fn order(&self) -> usize {
        self.cycles()
            .iter()
            .map(Vec::len)
            .fold(1, num_integer::lcm)
    }

    /// All `n!` permutations in lexicographic order of their images.
    pub fn all(n: usize) -> Vec<Permutation> {
        fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            let n = used.len();
            if prefix.len() == n {
                out.push(Permutation {
                    images: prefix.clone(),
                });
                return;
            }
            for i in 0..n {
                if !used[i] {
                    used[i] = true;
                    prefix.push(i);
                    rec(prefix, used, out);
                    prefix.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
        out
    }

    /// The matrix of the action on `Λ ≅ Z^{n−1}` (columns are images of `e_j`).
    pub fn lattice_matrix(&self) -> Matrix<i64> {
        let n = self.images.len();
        let mut m = vec![vec![0i64; n - 1]; n - 1];
        for j in 0..n - 1 {
            let img = LambdaElement::unit(n, self.images[j]).lattice_coords();
            for (i, x) in img.into_iter().enumerate() {
                m[i][j] = x;
            }
        }
        m
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", x + 1)?;
        }
        write!(f, "]")
    }
}

/// An element `(v, p)` of `G = Λ ⋊ Per(n)` with law `(v,p)(w,q) = (v + p(w), pq)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineElement {
    pub v: LambdaElement,
    pub p: Permutation,
}

impl AffineElement {
    pub fn new(v: LambdaElement, p: Permutation) -> Result<Self> {
        if v.rank() != p.len() {
            return Err(Error::WrongLength {
                expected: v.rank(),
                got: p.len(),
            });
        }
        Ok(Self { v, p })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            v: LambdaElement::zero(n),
            p: Permutation::identity(n),
        }
    }

    pub fn translation(v: LambdaElement) -> Self {
        let n = v.rank();
        Self {
            v,
            p: Permutation::identity(n),
        }
    }

    pub fn rank(&self) -> usize {
        self.v.rank()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            v: self.v.add(&self.p.act_lambda(&other.v)),
            p: self.p.compose(&other.p),
        }
    }

    pub fn inverse(&self) -> Self {
        let pinv = self.p.inverse();
        Self {
            v: pinv.act_lambda(&self.v).neg(),
            p: pinv,
        }
    }

    /// `h · self · h⁻¹`.
    pub fn conjugate_by(&self, h: &Self) -> Self {
        h.mul(self).mul(&h.inverse())
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::identity(self.rank()), |acc, _| acc.mul(self))
    }

    /// Projection of the translation part onto the fixed space of `p`:
    /// each coordinate replaced by the average over its cycle.
    pub fn fixed_projection(&self) -> Vec<Rational> {
        cycle_average(self.v.coords(), &self.p)
    }
}

impl fmt::Display for AffineElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.v, self.p)
    }
}

pub(crate) fn cycle_average(raw: &[i64], p: &Permutation) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); raw.len()];
    for cyc in p.cycles() {
        let sum: i64 = cyc.iter().map(|&i| raw[i]).sum();
        let avg = Ratio::new(sum, cyc.len() as i64);
        for &i in &cyc {
            out[i] = avg;
        }
    }
    out
}

/// Normalization of the length functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum LengthScale {
    /// Plain coordinate gaps; integral on translations.
    #[default]
    Geodesic,
    /// Gaps multiplied by `n!`; integral on all of `G`.
    Factorial,
}

impl LengthScale {
    pub fn factor(self, n: usize) -> i64 {
        match self {
            LengthScale::Geodesic => 1,
            LengthScale::Factorial => (1..=n as i64).product(),
        }
    }
}

/// The values `l₁ … l_{n−1}` of the length functions on one element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LengthVector {
    pub values: Vec<Rational>,
    pub scale: LengthScale,
}

impl LengthVector {
    pub fn is_integral(&self) -> bool {
        self.values.iter().all(Ratio::is_integer)
    }

    /// Integer exponents, if every entry is integral.
    pub fn exponents(&self) -> Option<Vec<u32>> {
        self.values
            .iter()
            .map(|v| v.is_integer().then(|| v.to_integer() as u32))
            .collect()
    }

    pub fn total(&self) -> Rational {
        self.values.iter().fold(Rational::zero(), |a, b| a + b)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for LengthVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Stable descending sort of a rational vector.
pub(crate) fn sort_descending(x: &mut [Rational]) {
    x.sort_by(|a, b| b.cmp(a));
}

pub(crate) fn gaps(sorted: &[Rational], factor: i64) -> Vec<Rational> {
    sorted
        .windows(2)
        .map(|w| (w[0] - w[1]) * Rational::from_integer(factor))
        .collect()
}

/// Conjugation-invariant lengths: average the translation part over the
/// cycles of the permutation part, sort descending, take consecutive gaps.
pub fn length_vector(g: &AffineElement, scale: LengthScale) -> LengthVector {
    let mut x = g.fixed_projection();
    sort_descending(&mut x);
    LengthVector {
        values: gaps(&x, scale.factor(g.rank())),
        scale,
    }
}

/// Lengths of a translation, integral at either scale.
pub fn translation_lengths(v: &LambdaElement, scale: LengthScale) -> Vec<i64> {
    let mut c = v.coords().to_vec();
    c.sort_unstable_by(|a, b| b.cmp(a));
    let f = scale.factor(v.rank());
    c.windows(2).map(|w| (w[0] - w[1]) * f).collect()
}

/// Whether distinct vertex classes span a face of the building: after some
/// ordering they admit representatives `x⁰ ≤ x¹ ≤ … ≤ xᵏ ≤ x⁰ + 1`.
///
/// The chain condition is cyclic, so the first vertex may serve as `x⁰`;
/// every other vertex must then differ from it by a 0/1 vector modulo the
/// diagonal, and those supports must be totally ordered by inclusion.
pub fn is_face(vertices: &[LambdaElement]) -> Result<bool> {
    let Some(first) = vertices.first() else {
        return Err(Error::Invalid("a face needs at least one vertex".into()));
    };
    let n = first.rank();
    for (i, v) in vertices.iter().enumerate() {
        if v.rank() != n {
            return Err(Error::WrongLength {
                expected: n,
                got: v.rank(),
            });
        }
        if vertices[..i].contains(v) {
            return Err(Error::DuplicateVertex(v.to_string()));
        }
    }
    if vertices.len() > n {
        return Ok(false);
    }
    let mut supports: Vec<Vec<bool>> = Vec::with_capacity(vertices.len() - 1);
    for v in &vertices[1..] {
        let diff = v.sub(first);
        // canonical form has min 0, so a 0/1 difference means spread 1
        if diff.spread() != 1 {
            return Ok(false);
        }
        supports.push(diff.coords().iter().map(|&x| x == 1).collect());
    }
    supports.sort_by_key(|s| s.iter().filter(|&&b| b).count());
    let nested = supports.windows(2).all(|w| {
        let smaller = w[0].iter().filter(|&&b| b).count();
        let larger = w[1].iter().filter(|&&b| b).count();
        smaller < larger && w[0].iter().zip(&w[1]).all(|(&a, &b)| !a || b)
    });
    Ok(nested)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(x: &[i64]) -> LambdaElement {
        LambdaElement::from_raw(x)
    }

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(canonicalize(&[0, 0, 0], 3).unwrap().coords(), &[0, 0, 0]);
        assert_eq!(canonicalize(&[1, 1, 1], 3).unwrap().coords(), &[0, 0, 0]);
        assert_eq!(canonicalize(&[5, 2, 2], 3).unwrap().coords(), &[3, 0, 0]);
        assert!(matches!(
            canonicalize(&[1, 2], 3),
            Err(Error::WrongLength { expected: 3, got: 2 })
        ));
        assert!(matches!(canonicalize(&[1], 1), Err(Error::RankTooSmall(1))));
    }

    #[test]
    fn types() {
        assert_eq!(type_of(&lam(&[0, 0, 0])), 0);
        assert_eq!(type_of(&lam(&[1, 0, 0])), 1);
        assert_eq!(type_of(&lam(&[3, 0, 0])), 0);
        // representative independence
        assert_eq!(type_of(&lam(&[4, 1, 1])), type_of(&lam(&[3, 0, 0])));
    }

    #[test]
    fn lattice_coordinates_round_trip() {
        let e3 = LambdaElement::unit(3, 2);
        assert_eq!(e3.lattice_coords(), vec![-1, -1]);
        let x = lam(&[4, 1, 7]);
        assert_eq!(LambdaElement::from_lattice_coords(&x.lattice_coords()), x);
    }

    #[test]
    fn permutation_basics() {
        let p = Permutation::from_one_based(&[2, 3, 1]).unwrap();
        assert_eq!(p.act(&[10, 20, 30]), vec![30, 10, 20]);
        assert_eq!(p.order(), 3);
        assert!(p.compose(&p.inverse()).is_identity());
        assert_eq!(Permutation::all(4).len(), 24);
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert_eq!(p.cycle_type(), vec![3]);
    }

    #[test]
    fn lattice_matrix_matches_action() {
        let p = Permutation::from_one_based(&[3, 1, 2]).unwrap();
        let m = p.lattice_matrix();
        let x = lam(&[5, -1, 2]);
        let via_matrix = crate::linalg::mat_vec(&m, &x.lattice_coords());
        assert_eq!(LambdaElement::from_lattice_coords(&via_matrix), p.act_lambda(&x));
    }

    #[test]
    fn group_law() {
        let g = AffineElement::new(lam(&[1, 0, 2]), Permutation::transposition(3, 0, 1)).unwrap();
        let h = AffineElement::new(lam(&[0, 3, 1]), Permutation::cycle(3)).unwrap();
        let id = AffineElement::identity(3);
        assert_eq!(g.mul(&g.inverse()), id);
        assert_eq!(g.inverse().mul(&g), id);
        assert_eq!(g.mul(&h).mul(&g), g.mul(&h.mul(&g)));
    }

    #[test]
    fn length_examples() {
        let id = AffineElement::identity(3);
        assert_eq!(length_vector(&id, LengthScale::Geodesic).values, vec![r(0), r(0)]);
        let t = AffineElement::translation(lam(&[5, 2, 2]));
        assert_eq!(length_vector(&t, LengthScale::Geodesic).values, vec![r(3), r(0)]);
        let g = AffineElement::new(lam(&[1, 0, 0]), Permutation::transposition(3, 0, 1)).unwrap();
        let l = length_vector(&g, LengthScale::Factorial);
        assert_eq!(l.values, vec![r(0), r(3)]);
        assert!(l.is_integral());
        let half = length_vector(&g, LengthScale::Geodesic);
        assert_eq!(half.values, vec![r(0), Ratio::new(1, 2)]);
        assert!(!half.is_integral());
    }

    #[test]
    fn faces() {
        // chamber of the standard lattice chain and the listed variant
        let chamber = [lam(&[0, 0, 0]), lam(&[0, 0, 1]), lam(&[0, 1, 1])];
        assert!(is_face(&chamber).unwrap());
        let listed = [lam(&[0, 0, 0]), lam(&[1, 1, 0]), lam(&[1, 0, 0])];
        assert!(is_face(&listed).unwrap());
        assert!(is_face(&[lam(&[4, 0, 2])]).unwrap());
        assert!(!is_face(&[lam(&[0, 0, 0]), lam(&[2, 0, 0])]).unwrap());
        // supports {1} and {2} are not nested
        assert!(!is_face(&[lam(&[0, 0, 0]), lam(&[1, 0, 0]), lam(&[0, 1, 0])]).unwrap());
        assert!(matches!(
            is_face(&[lam(&[1, 0, 0]), lam(&[2, 1, 1])]),
            Err(Error::DuplicateVertex(_))
        ));
    }
}
