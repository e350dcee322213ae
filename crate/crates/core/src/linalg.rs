//! Exact integer linear algebra: Smith and Hermite normal forms, integer
//! kernels and fraction-free determinants.
//!
//! Everything here is generic over the integer scalar, so the same code runs
//! on `i64`/`i128` for small lattices and on `BigInt` where values grow.

use std::fmt::Debug;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};

/// Integer scalar usable by the exact algorithms in this module.
pub trait IntScalar: Integer + Signed + Clone + Debug + FromPrimitive + ToPrimitive {}

impl<T> IntScalar for T where T: Integer + Signed + Clone + Debug + FromPrimitive + ToPrimitive {}

/// Row-major dense matrix.
pub type Matrix<T> = Vec<Vec<T>>;

pub fn identity<T: IntScalar>(n: usize) -> Matrix<T> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect()
}

pub fn transpose<T: Clone>(a: &[Vec<T>]) -> Matrix<T> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_mul<T: IntScalar>(a: &[Vec<T>], b: &[Vec<T>]) -> Matrix<T> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(T::zero(), |acc, k| acc + row[k].clone() * b[k][j].clone())
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec<T: IntScalar>(a: &[Vec<T>], x: &[T]) -> Vec<T> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .fold(T::zero(), |acc, (r, v)| acc + r.clone() * v.clone())
        })
        .collect()
}

/// Result of a Smith decomposition `diag = u * a * v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smith<T> {
    pub u: Matrix<T>,
    /// Diagonal of length `min(rows, cols)`; nonzero entries come first and
    /// are positive with `d[i] | d[i + 1]`.
    pub diag: Vec<T>,
    pub v: Matrix<T>,
    pub rank: usize,
}

fn swap_rows<T>(d: &mut [Vec<T>], u: &mut [Vec<T>], i: usize, j: usize) {
    if i != j {
        d.swap(i, j);
        u.swap(i, j);
    }
}

fn swap_cols<T>(d: &mut [Vec<T>], v: &mut [Vec<T>], i: usize, j: usize) {
    if i != j {
        for row in d.iter_mut() {
            row.swap(i, j);
        }
        for row in v.iter_mut() {
            row.swap(i, j);
        }
    }
}

/// row[dst] += q * row[src]
fn add_row<T: IntScalar>(m: &mut [Vec<T>], dst: usize, src: usize, q: &T) {
    let src_row = m[src].clone();
    for (x, s) in m[dst].iter_mut().zip(src_row) {
        *x = x.clone() + q.clone() * s;
    }
}

/// col[dst] += q * col[src]
fn add_col<T: IntScalar>(m: &mut [Vec<T>], dst: usize, src: usize, q: &T) {
    for row in m.iter_mut() {
        let s = row[src].clone();
        row[dst] = row[dst].clone() + q.clone() * s;
    }
}

fn min_abs_entry<T: IntScalar>(d: &[Vec<T>], from: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, T)> = None;
    for (i, row) in d.iter().enumerate().skip(from) {
        for (j, x) in row.iter().enumerate().skip(from) {
            if x.is_zero() {
                continue;
            }
            let a = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                best = Some((i, j, a));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Smith normal form of an arbitrary (possibly singular, rectangular) matrix.
///
/// Pivots are chosen as the smallest nonzero absolute value, scanning
/// row-major, so the transforms are reproducible.
pub fn smith<T: IntScalar>(a: &[Vec<T>]) -> Smith<T> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut d: Matrix<T> = a.to_vec();
    let mut u = identity::<T>(rows);
    let mut v = identity::<T>(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&d, t) else {
            break;
        };
        swap_rows(&mut d, &mut u, t, pi);
        swap_cols(&mut d, &mut v, t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if !d[i][t].is_zero() {
                    let q = -d[i][t].div_floor(&d[t][t]);
                    add_row(&mut d, i, t, &q);
                    add_row(&mut u, i, t, &q);
                    dirty |= !d[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !d[t][j].is_zero() {
                    let q = -d[t][j].div_floor(&d[t][t]);
                    add_col(&mut d, j, t, &q);
                    add_col(&mut v, j, t, &q);
                    dirty |= !d[t][j].is_zero();
                }
            }
            if dirty {
                let mut best = (t, t, d[t][t].abs());
                for i in t + 1..rows {
                    if !d[i][t].is_zero() && d[i][t].abs() < best.2 {
                        best = (i, t, d[i][t].abs());
                    }
                }
                for j in t + 1..cols {
                    if !d[t][j].is_zero() && d[t][j].abs() < best.2 {
                        best = (t, j, d[t][j].abs());
                    }
                }
                swap_rows(&mut d, &mut u, t, best.0);
                swap_cols(&mut d, &mut v, t, best.1);
                continue;
            }
            let pivot = d[t][t].clone();
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !d[i][j].mod_floor(&pivot).is_zero())
            });
            match offender {
                Some(i) => {
                    add_row(&mut d, t, i, &T::one());
                    add_row(&mut u, t, i, &T::one());
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
        t += 1;
    }
    let diag = (0..rows.min(cols)).map(|i| d[i][i].clone()).collect();
    Smith { u, diag, v, rank: t }
}

/// Row-style Hermite normal form of the lattice spanned by `gens`.
///
/// Returns only the nonzero rows: pivots strictly move right, are positive,
/// and entries above each pivot lie in `[0, pivot)`. Two generating sets of
/// the same lattice give identical output.
pub fn hermite_rows<T: IntScalar>(gens: &[Vec<T>]) -> Matrix<T> {
    let cols = gens.first().map_or(0, Vec::len);
    let mut rows: Matrix<T> = gens
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows.len() {
            break;
        }
        loop {
            let pick = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&i, &j| rows[i][c].abs().cmp(&rows[j][c].abs()));
            let Some(p) = pick else { break };
            rows.swap(r, p);
            let mut clean = true;
            for i in r + 1..rows.len() {
                if !rows[i][c].is_zero() {
                    let q = -rows[i][c].div_floor(&rows[r][c]);
                    add_row(&mut rows, i, r, &q);
                    clean &= rows[i][c].is_zero();
                }
            }
            if clean {
                break;
            }
        }
        if rows[r][c].is_zero() {
            continue;
        }
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let q = -rows[i][c].div_floor(&rows[r][c]);
            if !q.is_zero() {
                add_row(&mut rows, i, r, &q);
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

fn pivot_col<T: IntScalar>(row: &[T]) -> usize {
    row.iter().position(|x| !x.is_zero()).expect("hermite rows are nonzero")
}

/// Canonical representative of `x` modulo the lattice with Hermite basis `h`.
pub fn reduce_mod_hermite<T: IntScalar>(x: &[T], h: &[Vec<T>]) -> Vec<T> {
    let mut out = x.to_vec();
    for row in h {
        let c = pivot_col(row);
        let q = out[c].div_floor(&row[c]);
        if !q.is_zero() {
            for (o, r) in out.iter_mut().zip(row) {
                *o = o.clone() - q.clone() * r.clone();
            }
        }
    }
    out
}

pub fn hermite_contains<T: IntScalar>(h: &[Vec<T>], x: &[T]) -> bool {
    reduce_mod_hermite(x, h).iter().all(Zero::is_zero)
}

/// Basis (in Hermite form) of the integer kernel `{x : a x = 0}`.
pub fn integer_kernel<T: IntScalar>(a: &[Vec<T>]) -> Matrix<T> {
    let m = a.len();
    let k = a.first().map_or(0, Vec::len);
    let aug: Matrix<T> = (0..k)
        .map(|j| {
            let mut row: Vec<T> = (0..m).map(|i| a[i][j].clone()).collect();
            row.extend((0..k).map(|l| if l == j { T::one() } else { T::zero() }));
            row
        })
        .collect();
    hermite_rows(&aug)
        .into_iter()
        .filter(|row| row[..m].iter().all(Zero::is_zero))
        .map(|row| row[m..].to_vec())
        .collect()
}

/// Fraction-free Gaussian elimination (Bareiss). Every intermediate value is a
/// minor of the input, so no rational arithmetic is needed.
pub fn det_bareiss<T: IntScalar>(mut a: Matrix<T>) -> T {
    let n = a.len();
    if n == 0 {
        return T::one();
    }
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return T::zero(),
            }
        }
        let pivot = a[k][k].clone();
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot_row = &head[k];
        for row in tail.iter_mut() {
            let lead = row[k].clone();
            for j in k + 1..n {
                let val = row[j].clone() * pivot.clone() - lead.clone() * pivot_row[j].clone();
                row[j] = val / prev.clone();
            }
            row[k] = T::zero();
        }
        prev = pivot;
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Upper bound on `log2 |det a|` from the row-wise Hadamard inequality.
pub fn hadamard_log2(a: &[Vec<i128>]) -> f64 {
    a.iter()
        .map(|row| {
            let s: f64 = row.iter().map(|x| (*x as f64).abs()).sum();
            if s == 0.0 {
                0.0
            } else {
                s.log2()
            }
        })
        .sum()
}

/// `|det|` of a square matrix computed through its Smith form.
pub fn abs_det<T: IntScalar>(a: &[Vec<T>]) -> T {
    let s = smith(a);
    if s.rank < a.len() {
        return T::zero();
    }
    s.diag.into_iter().fold(T::one(), |acc, d| acc * d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn m(rows: &[&[i64]]) -> Matrix<i64> {
        rows.iter().map(|r| r.to_vec()).collect()
    }

    fn check_smith(a: &Matrix<i64>) -> Smith<i64> {
        let s = smith(a);
        let prod = mat_mul(&mat_mul(&s.u, a), &s.v);
        for (i, row) in prod.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i == j {
                    assert_eq!(*x, s.diag[i]);
                } else {
                    assert_eq!(*x, 0, "off-diagonal entry at ({i},{j})");
                }
            }
        }
        assert_eq!(abs_det(&s.u), 1);
        assert_eq!(abs_det(&s.v), 1);
        for w in s.diag[..s.rank].windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
        s
    }

    #[test]
    fn smith_small_cases() {
        assert_eq!(check_smith(&m(&[&[1, 0], &[0, 1]])).diag, vec![1, 1]);
        assert_eq!(check_smith(&m(&[&[2, 0], &[0, 2]])).diag, vec![2, 2]);
        assert_eq!(check_smith(&m(&[&[3, 1], &[0, 3]])).diag, vec![1, 9]);
        assert_eq!(check_smith(&m(&[&[2, 0], &[0, 3]])).diag, vec![1, 6]);
        let s = check_smith(&m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(s.diag, vec![2, 6, 12]);
    }

    #[test]
    fn smith_singular_and_rectangular() {
        let s = check_smith(&m(&[&[1, 1], &[1, 1]]));
        assert_eq!(s.rank, 1);
        assert_eq!(s.diag, vec![1, 0]);
        let s = check_smith(&m(&[&[0, 2, 4]]));
        assert_eq!(s.rank, 1);
        assert_eq!(s.diag, vec![2]);
        let s = check_smith(&m(&[&[0, 0], &[0, 0]]));
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn hermite_is_canonical() {
        let a = hermite_rows(&m(&[&[2, 0], &[0, 3]]));
        let b = hermite_rows(&m(&[&[2, 3], &[4, 3], &[0, 6]]));
        assert_eq!(a, b);
        assert!(hermite_contains(&a, &[4, -3]));
        assert!(!hermite_contains(&a, &[1, 0]));
        assert_eq!(reduce_mod_hermite(&[5, 7], &a), vec![1, 1]);
    }

    #[test]
    fn kernel_of_rank_one_map() {
        let k = integer_kernel(&m(&[&[1, 2, 3]]));
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(v[0] + 2 * v[1] + 3 * v[2], 0);
        }
        // the kernel is saturated: (1,1,-1) must be in it
        assert!(hermite_contains(&k, &[1, 1, -1]));
        assert!(hermite_contains(&k, &[-2, 1, 0]));
    }

    #[test]
    fn bareiss_matches_known_determinants() {
        assert_eq!(det_bareiss(m(&[&[0, 2], &[2, 0]])), -4);
        assert_eq!(det_bareiss(m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]])), 6);
        assert_eq!(det_bareiss(m(&[&[1, 2], &[2, 4]])), 0);
        let big: Matrix<BigInt> = vec![
            vec![BigInt::from(0), BigInt::from(1), BigInt::from(2)],
            vec![BigInt::from(3), BigInt::from(0), BigInt::from(5)],
            vec![BigInt::from(6), BigInt::from(7), BigInt::from(0)],
        ];
        assert_eq!(det_bareiss(big), BigInt::from(72));
    }
}
