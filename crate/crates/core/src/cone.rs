//! Faces of the dominant cone and the decomposition of an open simplicial
//! cone's lattice points into shifted free monoids, with the resulting
//! geometric-series evaluation.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::lambda::LambdaElement;
use crate::linalg::{hermite_contains, hermite_rows, Matrix};
use crate::multi::{MultiPoly, MultiRational};

/// A face `Λ⁺_S` of the dominant cone: the points with `x_j = x_{j+1}`
/// exactly for `j ∈ S` and `x_j > x_{j+1}` otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceDescriptor {
    n: usize,
    /// 1-based indices in `1..n`.
    s: BTreeSet<usize>,
    blocks: Vec<usize>,
}

impl FaceDescriptor {
    pub fn new(n: usize, s: impl IntoIterator<Item = usize>) -> Result<Self> {
        if n < 2 {
            return Err(Error::RankTooSmall(n));
        }
        let s: BTreeSet<usize> = s.into_iter().collect();
        if let Some(&bad) = s.iter().find(|&&j| j == 0 || j >= n) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                max: n - 1,
            });
        }
        let mut blocks = Vec::new();
        let mut len = 1;
        for j in 1..n {
            if s.contains(&j) {
                len += 1;
            } else {
                blocks.push(len);
                len = 1;
            }
        }
        blocks.push(len);
        Ok(Self { n, s, blocks })
    }

    /// All `2^{n−1}` faces, ordered by the bitmask of `S`.
    pub fn all(n: usize) -> Vec<Self> {
        (0..1usize << (n - 1))
            .map(|mask| {
                Self::new(n, (1..n).filter(|j| mask >> (j - 1) & 1 == 1)).expect("valid face")
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> &BTreeSet<usize> {
        &self.s
    }

    /// The composition `n = n₁ + … + n_r`.
    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    /// Dimension of the face, `r − 1`.
    pub fn dim(&self) -> usize {
        self.blocks.len() - 1
    }

    /// 1-based positions `j ∉ S`, i.e. the variables the face's edges move.
    pub fn boundaries(&self) -> Vec<usize> {
        (1..self.n).filter(|j| !self.s.contains(j)).collect()
    }

    /// `∏ nᵢ!`, the size of the pointwise stabilizer of the face.
    pub fn stabilizer_order(&self) -> i64 {
        self.blocks
            .iter()
            .map(|&b| (1..=b as i64).product::<i64>())
            .product()
    }

    /// The block-constant vector with block values `t₁, …, t_{r−1}, 0`.
    pub fn embed(&self, t: &[i64]) -> LambdaElement {
        debug_assert_eq!(t.len(), self.dim());
        let mut raw = Vec::with_capacity(self.n);
        for (i, &b) in self.blocks.iter().enumerate() {
            let val = t.get(i).copied().unwrap_or(0);
            raw.extend(std::iter::repeat_n(val, b));
        }
        LambdaElement::from_raw(&raw)
    }

    /// Inverse of [`embed`](Self::embed) on the span of the face.
    pub fn face_coords(&self, x: &LambdaElement) -> Option<Vec<i64>> {
        let c = x.coords();
        let mut start = 0;
        let mut vals = Vec::with_capacity(self.blocks.len());
        for &b in &self.blocks {
            let v = c[start];
            if c[start..start + b].iter().any(|&y| y != v) {
                return None;
            }
            vals.push(v);
            start += b;
        }
        let last = *vals.last().expect("at least one block");
        Some(vals[..vals.len() - 1].iter().map(|v| v - last).collect())
    }

    /// Whether the face-coordinate vector lies in the open face: `t₁ > … > t_{r−1} > 0`.
    pub fn contains_coords(&self, t: &[i64]) -> bool {
        let mut prev: Option<i64> = None;
        for &x in t.iter().chain(std::iter::once(&0)) {
            if let Some(p) = prev {
                if p <= x {
                    return false;
                }
            }
            prev = Some(x);
        }
        true
    }
}

impl fmt::Display for FaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S={:?} blocks={:?}", self.s, self.blocks)
    }
}

/// `(cone ∩ lattice) = ⊔_{v₀} (v₀ + ℕ₀a₁ + … + ℕ₀a_r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeDecomposition {
    pub face: FaceDescriptor,
    pub base_points: Vec<LambdaElement>,
    pub generators: Vec<LambdaElement>,
}

impl ConeDecomposition {
    /// `v₀ + Σ k_j a_j`.
    pub fn element(&self, base: usize, ks: &[i64]) -> LambdaElement {
        let face = &self.face;
        let mut t = face
            .face_coords(&self.base_points[base])
            .expect("base points lie in the face span");
        for (k, a) in ks.iter().zip(&self.generators) {
            let ta = face.face_coords(a).expect("generators lie in the face span");
            for (x, y) in t.iter_mut().zip(ta) {
                *x += k * y;
            }
        }
        face.embed(&t)
    }
}

/// Decomposes the open face `Λ⁺_S` intersected with the lattice spanned by
/// `lattice` (vectors in the face's span, of full rank there).
///
/// The edge generator `a_j` is the shortest lattice vector on the `j`-th edge
/// ray; base points are the lattice points whose edge coordinates lie in
/// `(0, α_j(a_j)]`.
pub fn cone_decompose(face: &FaceDescriptor, lattice: &[LambdaElement]) -> Result<ConeDecomposition> {
    let dim = face.dim();
    if dim == 0 {
        return Ok(ConeDecomposition {
            face: face.clone(),
            base_points: vec![LambdaElement::zero(face.rank())],
            generators: Vec::new(),
        });
    }
    let mut rows: Matrix<i64> = Vec::with_capacity(lattice.len());
    for v in lattice {
        if v.rank() != face.rank() {
            return Err(Error::WrongLength {
                expected: face.rank(),
                got: v.rank(),
            });
        }
        let t = face.face_coords(v).ok_or_else(|| {
            Error::DegenerateLattice(format!("{v} is not in the span of face {face}"))
        })?;
        rows.push(t);
    }
    let h = hermite_rows(&rows);
    if h.len() != dim {
        return Err(Error::DegenerateLattice(format!(
            "rank {} lattice for a {dim}-dimensional face",
            h.len()
        )));
    }
    let index: i64 = (0..dim).map(|i| h[i][i]).product();

    // edge ray j (1-based) has face coordinates (1,…,1,0,…,0) with j ones
    let mut multiples = Vec::with_capacity(dim);
    let mut generators = Vec::with_capacity(dim);
    for j in 1..=dim {
        let c = (1..=index)
            .find(|&c| {
                let t: Vec<i64> = (0..dim).map(|i| if i < j { c } else { 0 }).collect();
                hermite_contains(&h, &t)
            })
            .expect("index times any vector lies in the lattice");
        multiples.push(c);
        let t: Vec<i64> = (0..dim).map(|i| if i < j { c } else { 0 }).collect();
        generators.push(face.embed(&t));
    }

    // edge coordinates y_j = t_j − t_{j+1} are unimodular in t
    let mut base_points = Vec::new();
    let mut y = vec![1i64; dim];
    loop {
        let t: Vec<i64> = (0..dim).map(|i| y[i..].iter().sum()).collect();
        if hermite_contains(&h, &t) {
            base_points.push(face.embed(&t));
        }
        let mut k = 0;
        loop {
            if k == dim {
                return Ok(ConeDecomposition {
                    face: face.clone(),
                    base_points,
                    generators,
                });
            }
            y[k] += 1;
            if y[k] <= multiples[k] {
                break;
            }
            y[k] = 1;
            k += 1;
        }
    }
}

/// `Σ_{x ∈ cone ∩ lattice} u^{w(x)}` as an exact rational function, where
/// `weight` must be additive with nonnegative integer values.
pub fn rational_cone_sum<W>(dec: &ConeDecomposition, weight: W) -> Result<MultiRational>
where
    W: Fn(&LambdaElement) -> Vec<i64>,
{
    let exps = |x: &LambdaElement| -> Result<Vec<u32>> {
        weight(x)
            .into_iter()
            .map(|e| u32::try_from(e).map_err(|_| Error::NegativeExponent(e)))
            .collect()
    };
    let nvars = weight(&LambdaElement::zero(dec.face.rank())).len();
    let mut num = MultiPoly::zero(nvars);
    for v in &dec.base_points {
        num.add_term(exps(v)?, BigInt::one());
    }
    let mut den = Vec::with_capacity(dec.generators.len());
    for a in &dec.generators {
        let e = exps(a)?;
        if e.iter().all(|&x| x == 0) {
            return Err(Error::Divergent(a.to_string()));
        }
        den.push(e);
    }
    MultiRational::new(num, den)
}
