//! Integer Smith normal form and abelianization of presentations.
//!
//! Entries are arbitrary-precision integers: even small relation matrices can
//! blow up intermediate values under row and column reduction.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::presentation::GroupPresentation;

/// A dense integer matrix in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: alloc::vec![BigInt::zero(); rows * cols],
        }
    }

    /// Builds a matrix from rows of machine integers; rows must have equal
    /// length.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(
            rows.iter().all(|r| r.len() == ncols),
            "ragged rows in matrix literal"
        );
        IntMatrix {
            rows: rows.len(),
            cols: ncols,
            entries: rows
                .iter()
                .flat_map(|r| r.iter().map(|&v| BigInt::from(v)))
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: BigInt) {
        self.entries[row * self.cols + col] = value;
    }

    pub fn transposed(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] -= q * row[source]
    fn row_sub(&mut self, target: usize, source: usize, q: &BigInt) {
        for j in 0..self.cols {
            let delta = q * self.get(source, j);
            let v = self.get(target, j) - delta;
            self.set(target, j, v);
        }
    }

    fn col_sub(&mut self, target: usize, source: usize, q: &BigInt) {
        for i in 0..self.rows {
            let delta = q * self.get(i, source);
            let v = self.get(i, target) - delta;
            self.set(i, target, v);
        }
    }

    fn row_add(&mut self, target: usize, source: usize) {
        for j in 0..self.cols {
            let v = self.get(target, j) + self.get(source, j);
            self.set(target, j, v);
        }
    }

    fn negate_row(&mut self, row: usize) {
        for j in 0..self.cols {
            let v = -self.get(row, j);
            self.set(row, j, v);
        }
    }
}

/// Result of Smith normal form reduction: the nonzero diagonal invariant
/// factors `d_1 | d_2 | ... | d_k` (unit factors retained) and the free rank
/// of the cokernel, i.e. of the column space modulo the row lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithNormalForm {
    pub factors: Vec<BigInt>,
    pub free_rank: usize,
}

/// Diagonalizes the matrix by elementary row and column operations.
///
/// The pivot is always a nonzero entry of smallest absolute value in the
/// remaining submatrix, ties broken by row-major position; this keeps entry
/// growth down and makes the reduction path deterministic.
pub fn smith_normal_form(a: &IntMatrix) -> SmithNormalForm {
    let mut m = a.clone();
    let (rows, cols) = (m.rows(), m.cols());
    let steps = rows.min(cols);
    let mut factors = Vec::new();

    for k in 0..steps {
        let Some((pi, pj)) = find_pivot(&m, k) else {
            break;
        };
        m.swap_rows(k, pi);
        m.swap_cols(k, pj);

        loop {
            // Clear column k below the pivot, Euclid-style. A nonzero
            // remainder is strictly smaller than the pivot, so re-pivoting
            // terminates.
            let mut dirty = false;
            for i in k + 1..rows {
                if !m.get(i, k).is_zero() {
                    let q = m.get(i, k) / m.get(k, k);
                    m.row_sub(i, k, &q);
                    if !m.get(i, k).is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in k + 1..cols {
                if !m.get(k, j).is_zero() {
                    let q = m.get(k, j) / m.get(k, k);
                    m.col_sub(j, k, &q);
                    if !m.get(k, j).is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                let (pi, pj) = find_pivot(&m, k).expect("pivot cannot vanish here");
                m.swap_rows(k, pi);
                m.swap_cols(k, pj);
                continue;
            }
            // Divisibility pass: the pivot must divide every remaining entry.
            match find_nondivisible(&m, k) {
                Some(bad_row) => {
                    m.row_add(k, bad_row);
                    continue;
                }
                None => break,
            }
        }

        if m.get(k, k).is_negative() {
            m.negate_row(k);
        }
        factors.push(m.get(k, k).clone());
    }

    debug_assert!(divisibility_chain_holds(&factors));
    SmithNormalForm {
        free_rank: cols - factors.len(),
        factors,
    }
}

fn find_pivot(m: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in k..m.rows() {
        for j in k..m.cols() {
            let v = m.get(i, j);
            if v.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if m.get(bi, bj).abs() <= v.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

fn find_nondivisible(m: &IntMatrix, k: usize) -> Option<usize> {
    let pivot = m.get(k, k);
    for i in k + 1..m.rows() {
        for j in k + 1..m.cols() {
            if !m.get(i, j).mod_floor(pivot).is_zero() {
                return Some(i);
            }
        }
    }
    None
}

fn divisibility_chain_holds(factors: &[BigInt]) -> bool {
    factors
        .windows(2)
        .all(|w| !w[0].is_zero() && w[1].mod_floor(&w[0]).is_zero())
}

/// Invariants of a finitely generated abelian group: free rank plus the
/// torsion chain `d_1 | d_2 | ...` with every `d_i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AbelianInvariants {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    /// Strips unit factors from a Smith normal form.
    pub fn from_smith(snf: &SmithNormalForm) -> Self {
        AbelianInvariants {
            free_rank: snf.free_rank,
            torsion: snf
                .factors
                .iter()
                .filter(|d| !d.is_one())
                .cloned()
                .collect(),
        }
    }

    pub fn new(free_rank: usize, torsion: Vec<u64>) -> Self {
        let torsion: Vec<BigInt> = torsion.into_iter().map(BigInt::from).collect();
        assert!(
            torsion.iter().all(|d| *d >= BigInt::from(2)),
            "torsion factors must be at least 2"
        );
        assert!(divisibility_chain_holds(&torsion), "broken divisor chain");
        AbelianInvariants { free_rank, torsion }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the group when finite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().product())
    }
}

impl fmt::Display for AbelianInvariants {
    /// `Z^2`, `Z x Z4`, `Z6`, or `1` for the trivial group.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(alloc::format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(alloc::format!("Z{d}"));
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" x "))
        }
    }
}

/// The relation matrix of exponent sums: one row per relator, one column per
/// generator.
pub fn exponent_matrix(pres: &GroupPresentation) -> IntMatrix {
    let mut m = IntMatrix::zeros(pres.relators().len(), pres.num_generators());
    for (i, relator) in pres.relators().iter().enumerate() {
        for s in relator.syllables() {
            let v = m.get(i, s.gen) + BigInt::from(s.exp);
            m.set(i, s.gen, v);
        }
    }
    m
}

/// Abelianization of a presented group, read off the Smith normal form of its
/// exponent-sum matrix.
pub fn abelianize(pres: &GroupPresentation) -> AbelianInvariants {
    AbelianInvariants::from_smith(&smith_normal_form(&exponent_matrix(pres)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::BsParams;
    use alloc::string::ToString;
    use alloc::vec;

    fn snf(rows: &[Vec<i64>]) -> (Vec<i64>, usize) {
        let out = smith_normal_form(&IntMatrix::from_rows(rows));
        let factors = out
            .factors
            .iter()
            .map(|d| i64::try_from(d).expect("small factor"))
            .collect();
        (factors, out.free_rank)
    }

    #[test]
    fn diagonal_two_three() {
        // Frozen via the gcd-of-minors identity: d1 = gcd(2,3) = 1,
        // d1*d2 = det = 6.
        assert_eq!(snf(&[vec![2, 0], vec![0, 3]]), (vec![1, 6], 0));
    }

    #[test]
    fn zero_matrix_is_all_free() {
        assert_eq!(snf(&[vec![0, 0]]), (vec![], 2));
    }

    #[test]
    fn bs_two_minus_two_relation_row() {
        // exponent row of BS(2,-2): [m - n, 0] = [4, 0]
        assert_eq!(snf(&[vec![4, 0]]), (vec![4], 1));
    }

    #[test]
    fn unit_factors_stripped_at_invariants() {
        let out = smith_normal_form(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(out.factors, vec![BigInt::from(1), BigInt::from(6)]);
        let inv = AbelianInvariants::from_smith(&out);
        assert_eq!(inv.torsion(), &[BigInt::from(6)]);
        assert_eq!(inv.free_rank(), 0);
    }

    #[test]
    fn abelianize_bs_examples() {
        let bs = |m, n| {
            abelianize(&GroupPresentation::baumslag_solitar(
                BsParams::new(m, n).unwrap(),
            ))
        };
        assert_eq!(bs(2, 2), AbelianInvariants::new(2, vec![]));
        assert_eq!(bs(3, -3), AbelianInvariants::new(1, vec![6]));
        assert_eq!(bs(1, 2), AbelianInvariants::new(1, vec![]));
    }

    #[test]
    fn display_forms() {
        assert_eq!(AbelianInvariants::new(2, vec![]).to_string(), "Z^2");
        assert_eq!(AbelianInvariants::new(1, vec![4]).to_string(), "Z x Z4");
        assert_eq!(AbelianInvariants::new(0, vec![6]).to_string(), "Z6");
        assert_eq!(AbelianInvariants::new(0, vec![]).to_string(), "1");
    }

    #[test]
    fn snf_handles_negative_pivots() {
        assert_eq!(snf(&[vec![-4]]), (vec![4], 0));
        assert_eq!(snf(&[vec![-2, 4], vec![4, -2]]), (vec![2, 6], 0));
    }

    #[test]
    fn wide_and_tall_shapes() {
        assert_eq!(snf(&[vec![6, 10, 15]]), (vec![1], 2));
        assert_eq!(snf(&[vec![6], vec![10], vec![15]]), (vec![1], 0));
    }
}
