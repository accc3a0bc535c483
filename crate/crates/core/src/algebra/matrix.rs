use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{AlgebraError, ExactInt};

/// Row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    n_rows: usize,
    n_cols: usize,
    entries: Vec<ExactInt>,
}

impl IntMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self { n_rows, n_cols, entries: vec![BigInt::zero(); n_rows * n_cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_fn(n_rows: usize, n_cols: usize, mut f: impl FnMut(usize, usize) -> ExactInt) -> Self {
        let mut entries = Vec::with_capacity(n_rows * n_cols);
        for i in 0..n_rows {
            for j in 0..n_cols {
                entries.push(f(i, j));
            }
        }
        Self { n_rows, n_cols, entries }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == n_cols), "ragged rows");
        Self::from_fn(n_rows, n_cols, |i, j| BigInt::from(rows[i][j]))
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn get(&self, i: usize, j: usize) -> &ExactInt {
        &self.entries[i * self.n_cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ExactInt) {
        self.entries[i * self.n_cols + j] = v;
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    ///
    /// Pivoting takes the first nonzero entry in the current column and
    /// tracks the sign of each row swap. Every division in the recurrence
    /// is checked to be exact.
    pub fn bareiss_det(&self) -> Result<ExactInt, AlgebraError> {
        if self.n_rows != self.n_cols {
            return Err(AlgebraError::NotSquare { rows: self.n_rows, cols: self.n_cols });
        }
        let n = self.n_rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a: Vec<Vec<BigInt>> = self.entries.chunks(n).map(<[BigInt]>::to_vec).collect();
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        negate = !negate;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            let (top, rest) = a.split_at_mut(k + 1);
            let pivot_row = &top[k];
            let pivot = &pivot_row[k];
            for row in rest.iter_mut() {
                let lead = std::mem::take(&mut row[k]);
                for j in k + 1..n {
                    let num = pivot * &row[j] - &lead * &pivot_row[j];
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss division must be exact");
                    if !r.is_zero() {
                        return Err(AlgebraError::InexactDivision);
                    }
                    row[j] = q;
                }
            }
            prev = pivot.clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if negate { -det } else { det })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        assert_eq!(IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]).bareiss_det().unwrap(), BigInt::from(-2));
        assert_eq!(IntMatrix::identity(5).bareiss_det().unwrap(), BigInt::one());
        assert_eq!(IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]).bareiss_det().unwrap(), BigInt::zero());
    }

    #[test]
    fn needs_row_swap() {
        let m = IntMatrix::from_rows(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 3]]);
        assert_eq!(m.bareiss_det().unwrap(), BigInt::from(-3));
        let m = IntMatrix::from_rows(&[vec![0, 0, 2], vec![0, 5, 1], vec![7, 1, 1]]);
        assert_eq!(m.bareiss_det().unwrap(), BigInt::from(-70));
    }

    #[test]
    fn not_square() {
        let m = IntMatrix::zeros(2, 3);
        assert!(matches!(m.bareiss_det(), Err(AlgebraError::NotSquare { rows: 2, cols: 3 })));
    }

    #[test]
    fn empty_matrix_has_unit_determinant() {
        assert_eq!(IntMatrix::zeros(0, 0).bareiss_det().unwrap(), BigInt::one());
    }
}
