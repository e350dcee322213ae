//! Finite-index subgroups of `Λ` and of `G`, the finite abelian quotient
//! `Λ/Γ` via Smith normal form, and its characters with Satake parameters.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lambda::{LambdaElement, Permutation};
use crate::linalg::{abs_det, hermite_contains, hermite_rows, mat_vec, smith, transpose, Matrix};

/// A finite-index subgroup of `Λ ≅ Z^{n−1}`; the columns of `basis` are its
/// generators in the coordinates `e₁, …, e_{n−1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationSubgroup {
    n: usize,
    basis: Matrix<i64>,
    hermite: Matrix<i64>,
    index: i64,
}

impl TranslationSubgroup {
    /// A subgroup satisfying the graph-side hypothesis that every element has
    /// type zero.
    pub fn new(n: usize, basis: Matrix<i64>) -> Result<Self> {
        let g = Self::lattice(n, basis)?;
        for (index, v) in g.generators().iter().enumerate() {
            let ty = v.type_of();
            if ty != 0 {
                return Err(Error::TypeViolation {
                    index: index + 1,
                    generator: v.to_string(),
                    ty,
                });
            }
        }
        Ok(g)
    }

    /// Any full-rank sublattice, without the type-zero requirement.
    pub fn lattice(n: usize, basis: Matrix<i64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::RankTooSmall(n));
        }
        if basis.len() != n - 1 || basis.iter().any(|r| r.len() != n - 1) {
            return Err(Error::Shape(format!(
                "basis must be {0}x{0} for n = {n}",
                n - 1
            )));
        }
        let index = abs_det(&basis);
        if index == 0 {
            return Err(Error::Singular);
        }
        let hermite = hermite_rows(&transpose(&basis));
        Ok(Self {
            n,
            basis,
            hermite,
            index,
        })
    }

    /// The lattice spanned by `dᵢ·eᵢ`, with the type-zero check.
    pub fn diagonal(n: usize, diag: &[i64]) -> Result<Self> {
        let basis = (0..diag.len())
            .map(|i| (0..diag.len()).map(|j| if i == j { diag[i] } else { 0 }).collect())
            .collect();
        Self::new(n, basis)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &Matrix<i64> {
        &self.basis
    }

    /// Hermite basis (rows) in `Λ`-coordinates.
    pub fn hermite(&self) -> &Matrix<i64> {
        &self.hermite
    }

    /// `N = [Λ : Γ]`.
    pub fn index(&self) -> i64 {
        self.index
    }

    pub fn generators(&self) -> Vec<LambdaElement> {
        transpose(&self.basis)
            .iter()
            .map(|c| LambdaElement::from_lattice_coords(c))
            .collect()
    }

    pub fn contains(&self, v: &LambdaElement) -> bool {
        hermite_contains(&self.hermite, &v.lattice_coords())
    }

    pub fn contains_coords(&self, c: &[i64]) -> bool {
        hermite_contains(&self.hermite, c)
    }
}

/// A split subgroup `Γ = M ⋊ P` of `G` with `P·M = M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSubgroup {
    lattice: TranslationSubgroup,
    generators: Vec<Permutation>,
    perms: Vec<Permutation>,
}

impl AffineSubgroup {
    pub fn new(lattice: TranslationSubgroup, generators: Vec<Permutation>) -> Result<Self> {
        let n = lattice.rank();
        for p in &generators {
            if p.len() != n {
                return Err(Error::WrongLength {
                    expected: n,
                    got: p.len(),
                });
            }
            let m = p.lattice_matrix();
            for col in transpose(lattice.basis()) {
                if !lattice.contains_coords(&mat_vec(&m, &col)) {
                    return Err(Error::UnstableLattice {
                        perm: p.to_string(),
                    });
                }
            }
        }
        let perms = closure(n, &generators);
        Ok(Self {
            lattice,
            generators,
            perms,
        })
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn lattice(&self) -> &TranslationSubgroup {
        &self.lattice
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// All elements of `P`, sorted.
    pub fn perms(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn contains_perm(&self, p: &Permutation) -> bool {
        self.perms.binary_search(p).is_ok()
    }

    /// `[G : Γ] = n!·[Λ : M] / |P|`.
    pub fn index(&self) -> i64 {
        let nf: i64 = (1..=self.rank() as i64).product();
        nf * self.lattice.index() / self.perms.len() as i64
    }
}

/// The subgroup of `Per(n)` generated by `gens`, sorted.
pub fn closure(n: usize, gens: &[Permutation]) -> Vec<Permutation> {
    let mut seen = BTreeSet::new();
    let id = Permutation::identity(n);
    seen.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(p) = frontier.pop() {
        for g in gens {
            let q = g.compose(&p);
            if seen.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    seen.into_iter().collect()
}

/// `Λ/Γ ≅ ⊕ Z/dᵢ`, with the projection `x ↦ (U x) mod d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    n: usize,
    divisors: Vec<i64>,
    u: Matrix<i64>,
}

impl FiniteAbelianGroup {
    pub fn rank(&self) -> usize {
        self.n
    }

    /// All `n−1` elementary divisors, including trivial ones.
    pub fn divisors(&self) -> &[i64] {
        &self.divisors
    }

    pub fn order(&self) -> i64 {
        self.divisors.iter().product()
    }

    /// The left transform `U` of the Smith form.
    pub fn transform(&self) -> &Matrix<i64> {
        &self.u
    }

    /// Class of `Λ`-coordinates `c`, reduced into `[0, dᵢ)`.
    pub fn project_coords(&self, c: &[i64]) -> Vec<i64> {
        mat_vec(&self.u, c)
            .into_iter()
            .zip(&self.divisors)
            .map(|(x, d)| x.mod_floor(d))
            .collect()
    }

    pub fn project(&self, a: &LambdaElement) -> Vec<i64> {
        self.project_coords(&a.lattice_coords())
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        a.iter()
            .zip(b)
            .zip(&self.divisors)
            .map(|((x, y), d)| (x + y).mod_floor(d))
            .collect()
    }

    pub fn is_zero(&self, a: &[i64]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    /// Position of a reduced class in lexicographic (mixed-radix) order.
    pub fn index_of(&self, a: &[i64]) -> usize {
        a.iter()
            .zip(&self.divisors)
            .fold(0usize, |acc, (&x, &d)| acc * d as usize + x as usize)
    }

    /// The class at position `k` in lexicographic order.
    pub fn element(&self, mut k: usize) -> Vec<i64> {
        let mut out = vec![0; self.divisors.len()];
        for (slot, &d) in out.iter_mut().zip(&self.divisors).rev() {
            *slot = (k % d as usize) as i64;
            k /= d as usize;
        }
        out
    }

    /// All classes in lexicographic order.
    pub fn elements(&self) -> Vec<Vec<i64>> {
        (0..self.order() as usize).map(|k| self.element(k)).collect()
    }
}

/// `(U, D, V)` with `D = U·M·V` diagonal, `d₁ | d₂ | …`, for square nonsingular `M`.
pub fn smith_normal_form(m: &[Vec<i64>]) -> Result<(Matrix<i64>, Matrix<i64>, Matrix<i64>)> {
    let k = m.len();
    if m.iter().any(|r| r.len() != k) {
        return Err(Error::Shape("smith_normal_form needs a square matrix".into()));
    }
    let s = smith(m);
    if s.rank < k {
        return Err(Error::Singular);
    }
    let d = (0..k)
        .map(|i| (0..k).map(|j| if i == j { s.diag[i] } else { 0 }).collect())
        .collect();
    Ok((s.u, d, s.v))
}

pub fn quotient_group(gamma: &TranslationSubgroup) -> FiniteAbelianGroup {
    let s = smith(gamma.basis());
    FiniteAbelianGroup {
        n: gamma.rank(),
        divisors: s.diag,
        u: s.u,
    }
}

/// Smallest `m ≥ 1` with `m·a ∈ Γ`.
pub fn order_of(a: &LambdaElement, q: &FiniteAbelianGroup) -> i64 {
    q.project(a)
        .iter()
        .zip(q.divisors())
        .map(|(&x, &d)| d / x.gcd(&d))
        .fold(1, |acc, m| acc.lcm(&m))
}

/// A root of unity `exp(2πi·t)` stored as the exact fraction `t ∈ [0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Turn {
    num: i64,
    den: i64,
}

impl Turn {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den > 0, "turn denominator must be positive");
        let num = num.mod_floor(&den);
        let g = num.gcd(&den);
        Self {
            num: num / g,
            den: den / g,
        }
    }

    pub fn zero() -> Self {
        Self { num: 0, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Product of the roots of unity.
    pub fn add(&self, other: &Self) -> Self {
        let l = self.den.lcm(&other.den);
        Self::new(self.num * (l / self.den) + other.num * (l / other.den), l)
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.num, self.den)
    }
}

impl fmt::Display for Turn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// `ρ_k(x) = exp(2πi Σ kᵢ xᵢ / dᵢ)` on `⊕ Z/dᵢ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    exponents: Vec<i64>,
    divisors: Vec<i64>,
}

impl Character {
    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&k| k == 0)
    }

    /// Value on a class of `⊕ Z/dᵢ`.
    pub fn eval_class(&self, x: &[i64]) -> Turn {
        let l = self.divisors.iter().fold(1i64, |a, d| a.lcm(d));
        let num = self
            .exponents
            .iter()
            .zip(x)
            .zip(&self.divisors)
            .map(|((&k, &xi), &d)| i128::from(k) * i128::from(xi) * i128::from(l / d))
            .sum::<i128>()
            .rem_euclid(i128::from(l));
        Turn::new(num as i64, l)
    }

    pub fn eval(&self, a: &LambdaElement, q: &FiniteAbelianGroup) -> Turn {
        self.eval_class(&q.project(a))
    }

    /// Satake parameters `ρ_j = ρ(e_j)` for `j = 1..n`.
    pub fn satake(&self, q: &FiniteAbelianGroup) -> Vec<Turn> {
        (0..q.rank())
            .map(|j| self.eval(&LambdaElement::unit(q.rank(), j), q))
            .collect()
    }
}

/// All `N` characters, in lexicographic order of their exponent tuples.
pub fn characters(q: &FiniteAbelianGroup) -> Vec<Character> {
    q.elements()
        .into_iter()
        .map(|exponents| Character {
            exponents,
            divisors: q.divisors().to_vec(),
        })
        .collect()
}
