//! Exact rational Gaussian elimination.
//!
//! Used for the dimension oracle over the raw `n^4` component space and for
//! building the Ricci-flat sector basis. Entries stay small (constraint rows
//! have coefficients in {-1, 0, 1}) so `Rational64` never overflows here.

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

/// Dense row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational64>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational64::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged row {r}");
            for (c, &v) in row.iter().enumerate() {
                m[(r, c)] = Rational64::from_integer(v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn push_row(&mut self, row: &[Rational64]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    /// Reduced row echelon form in place. Returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self[(row, col)].recip();
            for c in col..self.cols {
                let v = self[(row, c)] * inv;
                self[(row, c)] = v;
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let f = self[(r, col)];
                if f.is_zero() {
                    continue;
                }
                for c in col..self.cols {
                    let v = self[(r, c)] - f * self[(row, c)];
                    self[(r, c)] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right nullspace, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational64>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational64::zero(); self.cols];
                v[f] = Rational64::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m[(r, f)];
                }
                v
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn max_abs(&self) -> Rational64 {
        self.data.iter().map(Signed::abs).max().unwrap_or_else(Rational64::zero)
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = Rational64;
    fn index(&self, (r, c): (usize, usize)) -> &Rational64 {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational64 {
        &mut self.data[r * self.cols + c]
    }
}
