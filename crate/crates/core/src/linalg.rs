//! Dense exact Gaussian elimination. Matrices here are small (a few dozen
//! rows per degree block), so a plain row-echelon routine is enough.

use crate::field::{Field, Scalar};

/// Row-major matrix over a fixed field.
#[derive(Clone, Debug)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![vec![field.zero(); cols]; rows],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r][c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Scalar) {
        self.data[r][c] += v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r]
    }

    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols));
        Self {
            field,
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.data[i][c].is_zero()) else {
                continue;
            };
            self.data.swap(r, p);
            let inv = self.data[r][c].inverse().expect("pivot is nonzero");
            for x in self.data[r].iter_mut() {
                *x = &*x * &inv;
            }
            let pivot_row = self.data[r].clone();
            for i in 0..self.rows {
                if i == r || self.data[i][c].is_zero() {
                    continue;
                }
                let factor = self.data[i][c].clone();
                for (x, p) in self.data[i].iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x = &*x - &(p * &factor);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of { v : M v = 0 } as column vectors.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&m.data[row][f];
                }
                v
            })
            .collect()
    }

    /// Column space basis (as vectors of length `rows`).
    pub fn column_space(&self) -> Vec<Vec<Scalar>> {
        let pivots = self.clone().rref();
        pivots
            .iter()
            .map(|&c| (0..self.rows).map(|r| self.data[r][c].clone()).collect())
            .collect()
    }
}

/// Rank of a list of vectors of equal length `len`.
pub fn rank_of(field: Field, len: usize, vectors: &[Vec<Scalar>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(field, len, vectors.to_vec()).rank()
}

/// Extends the span of `base` by vectors from `candidates`, returning those
/// candidates that are independent of everything chosen so far.
pub fn extend_basis(
    field: Field,
    len: usize,
    base: &[Vec<Scalar>],
    candidates: &[Vec<Scalar>],
) -> Vec<Vec<Scalar>> {
    let mut current: Vec<Vec<Scalar>> = base.to_vec();
    let mut rank = rank_of(field, len, &current);
    let mut chosen = Vec::new();
    for v in candidates {
        current.push(v.clone());
        let r = rank_of(field, len, &current);
        if r > rank {
            rank = r;
            chosen.push(v.clone());
        } else {
            current.pop();
        }
    }
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(field: Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            field,
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_depends_on_characteristic() {
        let rows: &[&[i64]] = &[&[1, 1], &[1, -1]];
        assert_eq!(m(Field::Rational, rows).rank(), 2);
        assert_eq!(m(Field::prime(2).unwrap(), rows).rank(), 1);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let f = Field::Rational;
        let a = m(f, &[&[1, 2, 3], &[2, 4, 6]]);
        let ker = a.kernel();
        assert_eq!(ker.len(), 2);
        for v in ker {
            for r in 0..a.rows() {
                let mut s = f.zero();
                for c in 0..a.cols() {
                    s += &(a.get(r, c) * &v[c]);
                }
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn extend_basis_skips_dependent_vectors() {
        let f = Field::Rational;
        let base = vec![vec![f.one(), f.zero()]];
        let cands = vec![vec![f.from_i64(2), f.zero()], vec![f.one(), f.one()]];
        assert_eq!(extend_basis(f, 2, &base, &cands).len(), 1);
    }
}
