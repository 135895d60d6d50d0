use crate::error::{Error, Result};
use crate::field::Field;

use super::Subspace;

/// Dense row-major matrix over an exact field.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, Debug, PartialEq)]
pub struct Rref<F: Field> {
    pub matrix: Matrix<F>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            data: vec![field.zero(); rows * cols],
            field: field.clone(),
            rows,
            cols,
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must share the length `cols`.
    pub fn from_rows(field: &F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::AmbientMismatch(row.len(), cols));
            }
            data.extend(row);
        }
        Ok(Matrix {
            field: field.clone(),
            rows: n,
            cols,
            data,
        })
    }

    pub fn from_fn(
        field: &F,
        rows: usize,
        cols: usize,
        f: impl Fn(usize, usize) -> F::Elem,
    ) -> Self {
        let data = (0..rows * cols).map(|i| f(i / cols, i % cols)).collect();
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }
    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }
    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }
    pub fn to_rows(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |r, c| {
            self.get(c, r).clone()
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::AmbientMismatch(self.cols, other.rows));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(Error::AmbientMismatch(v.len(), self.cols));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::AmbientMismatch(
                self.rows * self.cols,
                other.rows * other.cols,
            ));
        }
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f.sub(a, b))
            .collect();
        Ok(Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn trace(&self) -> F::Elem {
        let f = &self.field;
        (0..self.rows.min(self.cols)).fold(f.zero(), |acc, i| f.add(&acc, self.get(i, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    /// Reduced row-echelon form by Gauss-Jordan elimination.
    pub fn rref(&self) -> Rref<F> {
        let f = &self.field;
        let mut rows = self.to_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
                continue;
            };
            rows.swap(r, p);
            let inv = f.inv(&rows[r][c]).expect("pivot is nonzero");
            for x in rows[r].iter_mut() {
                *x = f.mul(x, &inv);
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r || f.is_zero(&row[c]) {
                    continue;
                }
                let factor = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                    *x = f.mul_sub(x, &factor, y);
                }
            }
            pivots.push(c);
            r += 1;
        }
        let rank = pivots.len();
        let data = rows.into_iter().flatten().collect();
        Rref {
            matrix: Matrix {
                field: f.clone(),
                rows: self.rows,
                cols: self.cols,
                data,
            },
            rank,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// The null space `{ v : M v = 0 }` as a subspace of `F^cols`.
    pub fn kernel(&self) -> Subspace<F> {
        let f = &self.field;
        let Rref { matrix, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let vectors = (0..self.cols).filter(|&c| !is_pivot[c]).map(|free| {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(matrix.get(i, free));
            }
            v
        });
        Subspace::span(f, self.cols, vectors)
    }

    /// One solution of `M x = b`, with every free variable set to zero.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let f = &self.field;
        let aug = Self::from_fn(f, self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                b[r].clone()
            }
        });
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = matrix.get(i, self.cols).clone();
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn q_matrix(rows: &[&[i64]]) -> Matrix<Rationals> {
        let q = Rationals;
        let cols = rows[0].len();
        Matrix::from_rows(
            &q,
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| q.from_i64(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rref_identity_and_zero() {
        let q = Rationals;
        let id = Matrix::identity(&q, 2);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!((r.rank, r.pivots), (2, vec![0, 1]));

        let z = Matrix::zeros(&q, 3, 3);
        let r = z.rref();
        assert_eq!(r.matrix, z);
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn rref_rank_one_over_q() {
        let r = q_matrix(&[&[2, 4], &[1, 2]]).rref();
        assert_eq!(r.matrix, q_matrix(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn kernel_examples() {
        let q = Rationals;
        assert_eq!(Matrix::identity(&q, 4).kernel().dim(), 0);
        let z = Matrix::zeros(&q, 1, 3);
        assert_eq!(z.kernel(), Subspace::full(&q, 3));

        let f2 = PrimeField::new(2).unwrap();
        let k = Matrix::from_rows(&f2, 2, vec![vec![1, 1]])
            .unwrap()
            .kernel();
        // enumerate all four vectors of F_2^2
        let members: Vec<(u64, u64)> = (0..2)
            .flat_map(|a| (0..2).map(move |b| (a, b)))
            .filter(|&(a, b)| (a + b) % 2 == 0)
            .collect();
        assert_eq!(members, vec![(0, 0), (1, 1)]);
        assert_eq!(k, Subspace::span(&f2, 2, [vec![1, 1]]));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = q_matrix(&[&[1, 1], &[1, -1]]);
        let q = Rationals;
        let x = m.solve(&[q.from_i64(3), q.from_i64(1)]).unwrap();
        assert_eq!(x, vec![q.from_i64(2), q.from_i64(1)]);
        let sing = q_matrix(&[&[1, 1], &[2, 2]]);
        assert!(sing.solve(&[q.from_i64(1), q.from_i64(3)]).is_none());
    }
}
