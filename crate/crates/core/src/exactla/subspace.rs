use crate::error::{Error, Result};
use crate::field::Field;

use super::Matrix;

/// A subspace of `F^ambient`, held as the nonzero rows of its reduced row-echelon basis.
#[derive(Clone, Debug)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> PartialEq for Subspace<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.rows == other.rows
    }
}

impl<F: Field> Eq for Subspace<F> {}

impl<F: Field> Subspace<F> {
    pub fn zero(field: &F, ambient: usize) -> Self {
        Subspace {
            field: field.clone(),
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                let mut v = vec![field.zero(); ambient];
                v[i] = field.one();
                v
            })
            .collect();
        Subspace {
            field: field.clone(),
            ambient,
            rows,
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the given vectors; each must have length `ambient`.
    pub fn span(
        field: &F,
        ambient: usize,
        vectors: impl IntoIterator<Item = Vec<F::Elem>>,
    ) -> Self {
        let mut b = SpanBuilder::new(field, ambient);
        for v in vectors {
            b.insert(v);
        }
        b.finish()
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
    pub fn codim(&self) -> usize {
        self.ambient - self.rows.len()
    }
    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }
    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    /// Canonical basis rows in RREF order.
    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates not used as pivots; the unit vectors there span a complement.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&i| !is_pivot[i]).collect()
    }

    pub fn basis_matrix(&self) -> Matrix<F> {
        Matrix::from_rows(&self.field, self.ambient, self.rows.clone())
            .expect("rows have ambient length")
    }

    /// `v` minus its projection along the pivot coordinates; zero exactly on members.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&out[p]) {
                continue;
            }
            let c = out[p].clone();
            for (x, y) in out.iter_mut().zip(row).skip(p) {
                *x = f.mul_sub(x, &c, y);
            }
        }
        out
    }

    pub fn contains(&self, v: &[F::Elem]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::AmbientMismatch(v.len(), self.ambient));
        }
        Ok(self.reduce(v).iter().all(|x| self.field.is_zero(x)))
    }

    /// Coefficients of `v` in the stored basis, if `v` is a member.
    pub fn coords(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if v.len() != self.ambient || !self.reduce(v).iter().all(|x| self.field.is_zero(x)) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// The member with the given basis coefficients.
    pub fn combine(&self, coeffs: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.ambient];
        for (row, c) in self.rows.iter().zip(coeffs) {
            if f.is_zero(c) {
                continue;
            }
            for (x, y) in out.iter_mut().zip(row) {
                *x = f.add(x, &f.mul(c, y));
            }
        }
        out
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut b = SpanBuilder::from_subspace(self.clone());
        for v in &other.rows {
            b.insert(v.clone());
        }
        Ok(b.finish())
    }

    /// Intersection via the kernel of the stacked coefficient system `U^T a = V^T b`.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let f = &self.field;
        let (r, s) = (self.dim(), other.dim());
        if r == 0 || s == 0 {
            return Ok(Self::zero(f, self.ambient));
        }
        let system = Matrix::from_fn(f, self.ambient, r + s, |i, j| {
            if j < r {
                self.rows[j][i].clone()
            } else {
                f.neg(&other.rows[j - r][i])
            }
        });
        let kernel = system.kernel();
        let vectors = kernel
            .basis()
            .iter()
            .map(|k| self.combine(&k[..r]))
            .collect::<Vec<_>>();
        Ok(Self::span(f, self.ambient, vectors))
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool> {
        self.check_ambient(other)?;
        for v in &self.rows {
            if !other.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Incremental span computation that keeps its rows fully reduced.
#[derive(Clone, Debug)]
pub struct SpanBuilder<F: Field> {
    inner: Subspace<F>,
}

impl<F: Field> SpanBuilder<F> {
    pub fn new(field: &F, ambient: usize) -> Self {
        SpanBuilder {
            inner: Subspace::zero(field, ambient),
        }
    }

    pub fn from_subspace(s: Subspace<F>) -> Self {
        SpanBuilder { inner: s }
    }

    pub fn dim(&self) -> usize {
        self.inner.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.inner.is_full()
    }

    /// Adds a vector; returns whether the span grew.
    pub fn insert(&mut self, v: Vec<F::Elem>) -> bool {
        assert_eq!(
            v.len(),
            self.inner.ambient,
            "vector length must match ambient dimension"
        );
        if self.inner.is_full() {
            return false;
        }
        let f = self.inner.field.clone();
        let mut v = self.inner.reduce(&v);
        let Some(c) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[c]).expect("nonzero");
        for x in v.iter_mut().skip(c) {
            *x = f.mul(x, &inv);
        }
        for row in self.inner.rows.iter_mut() {
            if f.is_zero(&row[c]) {
                continue;
            }
            let k = row[c].clone();
            for (x, y) in row.iter_mut().zip(&v).skip(c) {
                *x = f.mul_sub(x, &k, y);
            }
        }
        let at = self.inner.pivots.partition_point(|&p| p < c);
        self.inner.pivots.insert(at, c);
        self.inner.rows.insert(at, v);
        true
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.inner
            .reduce(v)
            .iter()
            .all(|x| self.inner.field.is_zero(x))
    }

    pub fn finish(self) -> Subspace<F> {
        self.inner
    }

    pub fn as_subspace(&self) -> &Subspace<F> {
        &self.inner
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn unit(field: &PrimeField, d: usize, i: usize) -> Vec<u64> {
        let mut v = vec![0; d];
        v[i] = field.one();
        v
    }

    #[test]
    fn sum_of_axes_is_plane() {
        let f = PrimeField::new(3).unwrap();
        let a = Subspace::span(&f, 2, [unit(&f, 2, 0)]);
        let b = Subspace::span(&f, 2, [unit(&f, 2, 1)]);
        let s = a.sum(&b).unwrap();
        assert!(s.is_full());
        assert_eq!(s.codim(), 0);
    }

    #[test]
    fn intersect_diagonal_with_axis() {
        let q = Rationals;
        let diag = Subspace::span(&q, 2, [vec![q.one(), q.one()]]);
        let axis = Subspace::span(&q, 2, [vec![q.one(), q.zero()]]);
        assert!(diag.intersect(&axis).unwrap().is_zero());
    }

    #[test]
    fn zero_subspace_codim() {
        let q = Rationals;
        assert_eq!(Subspace::zero(&q, 4).codim(), 4);
    }

    #[test]
    fn ambient_mismatch_reported() {
        let q = Rationals;
        let a = Subspace::zero(&q, 2);
        let b = Subspace::zero(&q, 3);
        assert_eq!(a.sum(&b), Err(Error::AmbientMismatch(2, 3)));
        assert!(a.contains(&[q.one()]).is_err());
    }

    fn vectors(p: u64, d: usize, n: usize) -> impl Strategy<Value = Vec<Vec<u64>>> {
        proptest::collection::vec(proptest::collection::vec(0..p, d), 0..=n)
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(rows in vectors(5, 5, 6)) {
            let f = PrimeField::new(5).unwrap();
            let m = Matrix::from_rows(&f, 5, rows).unwrap();
            let once = m.rref().matrix;
            prop_assert_eq!(once.rref().matrix, once);
        }

        #[test]
        fn rank_plus_codim(rows in vectors(5, 6, 8)) {
            let f = PrimeField::new(5).unwrap();
            let u = Subspace::span(&f, 6, rows.clone());
            prop_assert_eq!(u.dim() + u.codim(), 6);
            let m = Matrix::from_rows(&f, 6, rows).unwrap();
            prop_assert_eq!(m.rank(), u.dim());
        }

        #[test]
        fn grassmann_formula(a in vectors(5, 6, 4), b in vectors(5, 6, 4)) {
            let f = PrimeField::new(5).unwrap();
            let u = Subspace::span(&f, 6, a);
            let v = Subspace::span(&f, 6, b);
            let s = u.sum(&v).unwrap();
            let i = u.intersect(&v).unwrap();
            prop_assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
            prop_assert!(i.is_subspace_of(&u).unwrap() && i.is_subspace_of(&v).unwrap());
        }

        // 3^6 = 729 vectors, well under the exhaustive bound.
        #[test]
        fn membership_matches_enumeration(gens in vectors(3, 6, 3), probe in proptest::collection::vec(0u64..3, 6)) {
            let f = PrimeField::new(3).unwrap();
            let u = Subspace::span(&f, 6, gens.clone());
            let mut found = false;
            let total = 3u64.pow(gens.len() as u32);
            for idx in 0..total {
                let mut acc = vec![0u64; 6];
                let mut rest = idx;
                for g in &gens {
                    let c = rest % 3;
                    rest /= 3;
                    for (x, y) in acc.iter_mut().zip(g) {
                        *x = (*x + c * y) % 3;
                    }
                }
                if acc == probe {
                    found = true;
                    break;
                }
            }
            prop_assert_eq!(u.contains(&probe).unwrap(), found);
        }
    }
}
