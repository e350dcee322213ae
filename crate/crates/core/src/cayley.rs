//! The generator set `S` of the 1-skeleton, the quotient Cayley graph
//! `X_Γ = (Λ/Γ, S)` and its typed adjacency operators `A_i`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::lambda::LambdaElement;
use crate::linalg::Matrix;
use crate::quotient::{quotient_group, FiniteAbelianGroup, TranslationSubgroup};

/// Default cap on the number of vertices for dense matrices.
pub const DEFAULT_VERTEX_CAP: usize = 4096;

/// The `2ⁿ − 2` elements `Σ_{i∈I} eᵢ` over proper nonempty `I ⊂ {1..n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    n: usize,
    elements: Vec<LambdaElement>,
    types: Vec<usize>,
}

impl GeneratorSet {
    pub fn rank(&self) -> usize {
        self.n
    }

    /// Ordered by the subset bitmask (bit `i` selects `e_{i+1}`).
    pub fn elements(&self) -> &[LambdaElement] {
        &self.elements
    }

    pub fn types(&self) -> &[usize] {
        &self.types
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Number of elements of each type `1..n−1`.
    pub fn type_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n - 1];
        for &t in &self.types {
            counts[t - 1] += 1;
        }
        counts
    }

    /// Position of the type-one generator `e_{i+1}` (0-based `i`).
    pub fn unit_position(&self, i: usize) -> usize {
        (1usize << i) - 1
    }
}

pub fn generator_set(n: usize) -> Result<GeneratorSet> {
    if n < 2 {
        return Err(Error::RankTooSmall(n));
    }
    let mut elements = Vec::with_capacity((1 << n) - 2);
    let mut types = Vec::with_capacity((1 << n) - 2);
    for mask in 1..(1usize << n) - 1 {
        let raw: Vec<i64> = (0..n).map(|i| (mask >> i & 1) as i64).collect();
        let s = LambdaElement::from_raw(&raw);
        types.push(s.type_of());
        elements.push(s);
    }
    Ok(GeneratorSet { n, elements, types })
}

/// The quotient Cayley graph with multiplicities kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientGraph {
    n: usize,
    group: FiniteAbelianGroup,
    generators: GeneratorSet,
    vertices: Vec<Vec<i64>>,
    /// `steps[g][v]`: vertex reached from `v` along generator `g`.
    steps: Vec<Vec<usize>>,
    /// `typed[i − 1] = A_i`.
    typed: Vec<Matrix<i64>>,
}

pub fn build_graph(gamma: &TranslationSubgroup) -> Result<QuotientGraph> {
    build_graph_with_cap(gamma, DEFAULT_VERTEX_CAP)
}

pub fn build_graph_with_cap(gamma: &TranslationSubgroup, cap: usize) -> Result<QuotientGraph> {
    let n = gamma.rank();
    let nv = gamma.index() as usize;
    if nv > cap {
        return Err(Error::SizeCap {
            what: "number of vertices",
            value: nv,
            cap,
        });
    }
    let group = quotient_group(gamma);
    let generators = generator_set(n)?;
    let vertices = group.elements();
    let mut steps = Vec::with_capacity(generators.len());
    let mut typed = vec![vec![vec![0i64; nv]; nv]; n - 1];
    for (s, &ty) in generators.elements().iter().zip(generators.types()) {
        let cls = group.project(s);
        let row: Vec<usize> = vertices
            .iter()
            .map(|v| group.index_of(&group.add(v, &cls)))
            .collect();
        for (v, &w) in row.iter().enumerate() {
            typed[ty - 1][w][v] += 1;
        }
        steps.push(row);
    }
    Ok(QuotientGraph {
        n,
        group,
        generators,
        vertices,
        steps,
        typed,
    })
}

impl QuotientGraph {
    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.generators
    }

    /// Vertices as reduced tuples, in lexicographic order.
    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    /// Vertex reached from `v` along the generator at position `g`.
    pub fn step(&self, g: usize, v: usize) -> usize {
        self.steps[g][v]
    }

    /// `A_i` for `1 ≤ i ≤ n−1`: entry `[w][v]` counts type-`i` generators
    /// with `v + s ≡ w`.
    pub fn typed_adjacency(&self, i: usize) -> Result<&Matrix<i64>> {
        if i == 0 || i >= self.n {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: self.n - 1,
            });
        }
        Ok(&self.typed[i - 1])
    }

    pub fn typed_all(&self) -> &[Matrix<i64>] {
        &self.typed
    }

    /// `A = A₁ + … + A_{n−1}`.
    pub fn adjacency(&self) -> Matrix<i64> {
        let nv = self.num_vertices();
        let mut a = vec![vec![0i64; nv]; nv];
        for t in &self.typed {
            for (row, trow) in a.iter_mut().zip(t) {
                for (x, y) in row.iter_mut().zip(trow) {
                    *x += y;
                }
            }
        }
        a
    }

    /// Largest entry of `A` and whether `A` has nonzero diagonal.
    pub fn max_multiplicity(&self) -> (i64, bool) {
        let a = self.adjacency();
        let max = a.iter().flatten().copied().max().unwrap_or(0);
        let loops = (0..a.len()).any(|i| a[i][i] != 0);
        (max, loops)
    }

    pub fn is_simple(&self) -> bool {
        let (max, loops) = self.max_multiplicity();
        max <= 1 && !loops
    }

    /// Adds `delta` to `A_i[row][col]`. Used to build negative controls: the
    /// graph no longer comes from a subgroup afterwards.
    pub fn perturb(&mut self, i: usize, row: usize, col: usize, delta: i64) -> Result<()> {
        self.typed_adjacency(i)?;
        let nv = self.num_vertices();
        for idx in [row, col] {
            if idx >= nv {
                return Err(Error::IndexOutOfRange {
                    index: idx,
                    max: nv - 1,
                });
            }
        }
        self.typed[i - 1][row][col] += delta;
        Ok(())
    }

    pub fn vertex_label(&self, v: usize) -> String {
        let parts: Vec<String> = self.vertices[v].iter().map(i64::to_string).collect();
        format!("({})", parts.join(","))
    }

    /// One line `v w type multiplicity` per nonzero entry `A_type[w][v]`.
    pub fn edge_list(&self) -> String {
        let mut out = String::new();
        let nv = self.num_vertices();
        for v in 0..nv {
            for (ti, t) in self.typed.iter().enumerate() {
                for w in 0..nv {
                    let m = t[w][v];
                    if m != 0 {
                        writeln!(
                            out,
                            "{} {} {} {}",
                            self.vertex_label(v),
                            self.vertex_label(w),
                            ti + 1,
                            m
                        )
                        .expect("writing to a String cannot fail");
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(nv: i64) -> QuotientGraph {
        build_graph(&TranslationSubgroup::new(2, vec![vec![nv]]).unwrap()).unwrap()
    }

    #[test]
    fn generator_sets() {
        let s2 = generator_set(2).unwrap();
        assert_eq!(s2.len(), 2);
        assert_eq!(s2.type_counts(), vec![2]);
        let s3 = generator_set(3).unwrap();
        assert_eq!(s3.type_counts(), vec![3, 3]);
        assert_eq!(generator_set(4).unwrap().type_counts(), vec![4, 6, 4]);
        for s in s3.elements() {
            assert!(s3.elements().contains(&s.neg()));
        }
        assert!(generator_set(1).is_err());
        assert_eq!(s3.elements()[s3.unit_position(2)], LambdaElement::unit(3, 2));
    }

    #[test]
    fn four_cycle() {
        let g = cycle(4);
        let a = g.typed_adjacency(1).unwrap();
        let expected = vec![
            vec![0, 1, 0, 1],
            vec![1, 0, 1, 0],
            vec![0, 1, 0, 1],
            vec![1, 0, 1, 0],
        ];
        assert_eq!(a, &expected);
        assert!(g.is_simple());
        assert!(g.typed_adjacency(2).is_err());
        assert!(g.typed_adjacency(0).is_err());
    }

    #[test]
    fn index_three_multigraph() {
        let gamma = TranslationSubgroup::new(3, vec![vec![1, 0], vec![-1, 3]]).unwrap();
        let g = build_graph(&gamma).unwrap();
        assert_eq!(g.num_vertices(), 3);
        let a1 = g.typed_adjacency(1).unwrap();
        let a2 = g.typed_adjacency(2).unwrap();
        for v in 0..3 {
            let w1 = (0..3).find(|&w| a1[w][v] != 0).unwrap();
            assert_eq!(a1[w1][v], 3);
            let w2 = (0..3).find(|&w| a2[w][v] != 0).unwrap();
            assert_eq!(a2[w2][v], 3);
            assert_ne!(w1, v);
            assert_ne!(w2, v);
            assert_ne!(w1, w2);
        }
        assert!(g.adjacency().iter().all(|r| r.iter().sum::<i64>() == 6));
        assert!(!g.is_simple());
    }

    #[test]
    fn size_cap_and_perturbation() {
        let gamma = TranslationSubgroup::new(2, vec![vec![10]]).unwrap();
        assert!(matches!(
            build_graph_with_cap(&gamma, 8),
            Err(Error::SizeCap { value: 10, cap: 8, .. })
        ));
        let mut g = cycle(4);
        g.perturb(1, 0, 0, 1).unwrap();
        assert_eq!(g.typed_adjacency(1).unwrap()[0][0], 1);
        assert!(g.perturb(1, 4, 0, 1).is_err());
    }

    #[test]
    fn edge_list_format() {
        let g = cycle(2);
        let text = g.edge_list();
        assert_eq!(text, "(0) (1) 1 2\n(1) (0) 1 2\n");
    }
}
