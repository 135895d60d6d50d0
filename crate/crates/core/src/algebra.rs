//! Finite-dimensional unital associative algebras given by structure constants.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactla::{Matrix, SpanBuilder, Subspace};
use crate::field::Field;

/// Largest dimension validated exhaustively; larger algebras are checked on samples.
pub const FULL_VALIDATION_MAX_DIM: usize = 64;
const SAMPLED_TRIPLES: usize = 20_000;

/// Where an algebra came from, when that carries structure worth keeping.
#[derive(Clone, Debug, PartialEq)]
pub enum Provenance<F: Field> {
    Generic,
    /// Path algebra of a bound quiver: vertex idempotents and the ideal spanned by
    /// residues of positive-length paths.
    Quiver {
        vertex_idempotents: Vec<Vec<F::Elem>>,
        arrow_ideal: Subspace<F>,
    },
    /// Group algebra: basis element `i` is group element `i`.
    Group {
        order: usize,
        classes: Vec<Vec<usize>>,
    },
}

/// An algebra with basis `b_0..b_{d-1}` and products `b_i b_j = sum_k c[i][j][k] b_k`.
#[derive(Clone, Debug)]
pub struct Algebra<F: Field> {
    field: F,
    dim: usize,
    /// Sparse products: entry `i * dim + j` lists the nonzero `(k, c[i][j][k])`.
    table: Vec<Vec<(usize, F::Elem)>>,
    unit: Vec<F::Elem>,
    provenance: Provenance<F>,
}

impl<F: Field> PartialEq for Algebra<F> {
    /// Structural equality of the multiplication tensor and unit; provenance is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.dim == other.dim
            && self.table == other.table
            && self.unit == other.unit
    }
}

impl<F: Field> Algebra<F> {
    /// Builds an algebra from the nonzero structure constants `(i, j, k, c)`.
    pub fn from_entries(
        field: &F,
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, F::Elem)>,
        unit: Vec<F::Elem>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidAlgebra("dimension must be positive".into()));
        }
        if unit.len() != dim {
            return Err(Error::AmbientMismatch(unit.len(), dim));
        }
        let mut table: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); dim * dim];
        for (i, j, k, c) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::InvalidAlgebra(format!(
                    "index ({i}, {j}, {k}) out of range for dimension {dim}"
                )));
            }
            let slot = &mut table[i * dim + j];
            if slot.iter().any(|(kk, _)| *kk == k) {
                return Err(Error::InvalidAlgebra(format!(
                    "duplicate constant ({i}, {j}, {k})"
                )));
            }
            if !field.is_zero(&c) {
                slot.push((k, c));
            }
        }
        for slot in table.iter_mut() {
            slot.sort_by_key(|(k, _)| *k);
        }
        Ok(Algebra {
            field: field.clone(),
            dim,
            table,
            unit,
            provenance: Provenance::Generic,
        })
    }

    /// Builds an algebra from a function giving the coordinates of `b_i b_j`.
    pub fn from_products(
        field: &F,
        dim: usize,
        product: impl Fn(usize, usize) -> Vec<F::Elem>,
        unit: Vec<F::Elem>,
    ) -> Result<Self> {
        let mut entries = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                let v = product(i, j);
                if v.len() != dim {
                    return Err(Error::AmbientMismatch(v.len(), dim));
                }
                for (k, c) in v.into_iter().enumerate() {
                    if !field.is_zero(&c) {
                        entries.push((i, j, k, c));
                    }
                }
            }
        }
        Self::from_entries(field, dim, entries, unit)
    }

    pub fn with_provenance(mut self, provenance: Provenance<F>) -> Self {
        self.provenance = provenance;
        self
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn unit(&self) -> &[F::Elem] {
        &self.unit
    }
    pub fn provenance(&self) -> &Provenance<F> {
        &self.provenance
    }

    /// Nonzero `(k, c)` with `b_i b_j = sum c b_k`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, F::Elem)] {
        &self.table[i * self.dim + j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> F::Elem {
        self.basis_product(i, j)
            .iter()
            .find(|(kk, _)| *kk == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field.zero())
    }

    /// All nonzero structure constants in `(i, j, k)` order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &F::Elem)> + '_ {
        (0..self.dim * self.dim).flat_map(move |ij| {
            self.table[ij]
                .iter()
                .map(move |(k, c)| (ij / self.dim, ij % self.dim, *k, c))
        })
    }

    pub fn zero_vec(&self) -> Vec<F::Elem> {
        vec![self.field.zero(); self.dim]
    }

    pub fn basis_vec(&self, i: usize) -> Vec<F::Elem> {
        let mut v = self.zero_vec();
        v[i] = self.field.one();
        v
    }

    /// Product of coordinate vectors.
    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = self.zero_vec();
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                let xy = f.mul(xi, yj);
                for (k, c) in &self.table[i * self.dim + j] {
                    out[*k] = f.add(&out[*k], &f.mul(&xy, c));
                }
            }
        }
        out
    }

    pub fn mul3(&self, x: &[F::Elem], y: &[F::Elem], z: &[F::Elem]) -> Vec<F::Elem> {
        self.mul(&self.mul(x, y), z)
    }

    pub fn commutator(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        vsub(&self.field, &self.mul(x, y), &self.mul(y, x))
    }

    pub fn pow(&self, x: &[F::Elem], mut e: u64) -> Vec<F::Elem> {
        let mut acc = self.unit.clone();
        let mut base = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn is_idempotent(&self, e: &[F::Elem]) -> bool {
        self.mul(e, e) == e
    }

    /// Matrix of `y -> x y`; column `j` holds the coordinates of `x b_j`.
    pub fn left_regular_matrix(&self, x: &[F::Elem]) -> Matrix<F> {
        let cols: Vec<Vec<F::Elem>> = (0..self.dim)
            .map(|j| self.mul(x, &self.basis_vec(j)))
            .collect();
        Matrix::from_fn(&self.field, self.dim, self.dim, |r, c| cols[c][r].clone())
    }

    /// Matrix of `y -> y x`; column `j` holds the coordinates of `b_j x`.
    pub fn right_regular_matrix(&self, x: &[F::Elem]) -> Matrix<F> {
        let cols: Vec<Vec<F::Elem>> = (0..self.dim)
            .map(|j| self.mul(&self.basis_vec(j), x))
            .collect();
        Matrix::from_fn(&self.field, self.dim, self.dim, |r, c| cols[c][r].clone())
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| {
            (i + 1..self.dim).all(|j| self.basis_product(i, j) == self.basis_product(j, i))
        })
    }

    /// Span of `{ l * s * r : s in S }`.
    pub fn sandwich(&self, left: &[F::Elem], s: &Subspace<F>, right: &[F::Elem]) -> Subspace<F> {
        let mut b = SpanBuilder::new(&self.field, self.dim);
        for v in s.basis() {
            b.insert(self.mul3(left, v, right));
        }
        b.finish()
    }

    /// Span of all products `x y` with `x` in `U` and `y` in `V`.
    pub fn product_space(&self, u: &Subspace<F>, v: &Subspace<F>) -> Subspace<F> {
        let mut b = SpanBuilder::new(&self.field, self.dim);
        'outer: for x in u.basis() {
            for y in v.basis() {
                b.insert(self.mul(x, y));
                if b.is_full() {
                    break 'outer;
                }
            }
        }
        b.finish()
    }

    pub fn full_space(&self) -> Subspace<F> {
        Subspace::full(&self.field, self.dim)
    }
}

pub(crate) fn vadd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
}

pub(crate) fn vsub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().zip(b).map(|(x, y)| f.sub(x, y)).collect()
}

pub(crate) fn vscale<F: Field>(f: &F, c: &F::Elem, a: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().map(|x| f.mul(c, x)).collect()
}

pub(crate) fn vis_zero<F: Field>(f: &F, a: &[F::Elem]) -> bool {
    a.iter().all(|x| f.is_zero(x))
}

/// An element tied to its parent algebra; arithmetic across different parents is refused.
#[derive(Clone, Debug)]
pub struct Element<'a, F: Field> {
    parent: &'a Algebra<F>,
    coords: Vec<F::Elem>,
}

impl<F: Field> PartialEq for Element<'_, F> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.parent, other.parent) && self.coords == other.coords
    }
}

impl<'a, F: Field> Element<'a, F> {
    pub fn new(parent: &'a Algebra<F>, coords: Vec<F::Elem>) -> Result<Self> {
        if coords.len() != parent.dim() {
            return Err(Error::AmbientMismatch(coords.len(), parent.dim()));
        }
        Ok(Element { parent, coords })
    }

    pub fn one(parent: &'a Algebra<F>) -> Self {
        Element {
            parent,
            coords: parent.unit().to_vec(),
        }
    }

    pub fn basis(parent: &'a Algebra<F>, i: usize) -> Self {
        Element {
            parent,
            coords: parent.basis_vec(i),
        }
    }

    pub fn parent(&self) -> &'a Algebra<F> {
        self.parent
    }

    pub fn coords(&self) -> &[F::Elem] {
        &self.coords
    }

    fn belongs_to(&self, a: &Algebra<F>) -> Result<()> {
        if std::ptr::eq(self.parent, a) {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }
}

pub fn multiply<'a, F: Field>(
    a: &'a Algebra<F>,
    x: &Element<'a, F>,
    y: &Element<'a, F>,
) -> Result<Element<'a, F>> {
    x.belongs_to(a)?;
    y.belongs_to(a)?;
    Ok(Element {
        parent: a,
        coords: a.mul(&x.coords, &y.coords),
    })
}

pub fn left_regular<F: Field>(a: &Algebra<F>, x: &Element<'_, F>) -> Result<Matrix<F>> {
    x.belongs_to(a)?;
    Ok(a.left_regular_matrix(&x.coords))
}

pub fn right_regular<F: Field>(a: &Algebra<F>, x: &Element<'_, F>) -> Result<Matrix<F>> {
    x.belongs_to(a)?;
    Ok(a.right_regular_matrix(&x.coords))
}

/// Outcome of checking associativity and the unit law.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub associativity_failures: Vec<(usize, usize, usize)>,
    pub unit_failures: Vec<usize>,
    /// False when only a sample of triples was checked.
    pub exhaustive: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.associativity_failures.is_empty() && self.unit_failures.is_empty()
    }
}

pub fn validate<F: Field>(a: &Algebra<F>) -> ValidationReport {
    let d = a.dim();
    let unit_failures = (0..d)
        .filter(|&i| {
            let b = a.basis_vec(i);
            a.mul(a.unit(), &b) != b || a.mul(&b, a.unit()) != b
        })
        .collect();
    let check = |i: usize, j: usize, k: usize, prods: &dyn Fn(usize, usize) -> Vec<F::Elem>| {
        let left = a.mul(&prods(i, j), &a.basis_vec(k));
        let right = a.mul(&a.basis_vec(i), &prods(j, k));
        left != right
    };
    let mut associativity_failures = Vec::new();
    let exhaustive = d <= FULL_VALIDATION_MAX_DIM;
    if exhaustive {
        let products: Vec<Vec<F::Elem>> = (0..d * d)
            .map(|ij| a.mul(&a.basis_vec(ij / d), &a.basis_vec(ij % d)))
            .collect();
        let prods = |i: usize, j: usize| products[i * d + j].clone();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    if check(i, j, k, &prods) {
                        associativity_failures.push((i, j, k));
                    }
                }
            }
        }
    } else {
        let prods = |i: usize, j: usize| a.mul(&a.basis_vec(i), &a.basis_vec(j));
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..SAMPLED_TRIPLES {
            let (i, j, k) = (
                rng.gen_range(0..d),
                rng.gen_range(0..d),
                rng.gen_range(0..d),
            );
            if check(i, j, k, &prods) {
                associativity_failures.push((i, j, k));
            }
        }
        associativity_failures.sort_unstable();
        associativity_failures.dedup();
    }
    ValidationReport {
        associativity_failures,
        unit_failures,
        exhaustive,
    }
}

/// The center `Z(A)`: common kernel of `L_{b_i} - R_{b_i}`.
///
/// The kernel is cut down one basis element at a time, so each step solves a
/// `d x dim Z` system instead of one `d^2 x d` system.
pub fn center<F: Field>(a: &Algebra<F>) -> Subspace<F> {
    let d = a.dim();
    let f = a.field();
    let mut z = a.full_space();
    for i in 0..d {
        if z.is_zero() {
            break;
        }
        let b = a.basis_vec(i);
        let cols: Vec<Vec<F::Elem>> = z.basis().iter().map(|v| a.commutator(&b, v)).collect();
        let system = Matrix::from_fn(f, d, cols.len(), |r, c| cols[c][r].clone());
        let kernel = system.kernel();
        if kernel.is_full() {
            continue;
        }
        let vectors: Vec<_> = kernel.basis().iter().map(|k| z.combine(k)).collect();
        z = Subspace::span(f, d, vectors);
    }
    z
}

/// `dim Z(A)`.
pub fn k_star<F: Field>(a: &Algebra<F>) -> usize {
    center(a).dim()
}

/// Group algebra from a Cayley table with element 0 the identity.
pub fn group_algebra_from_cayley<F: Field>(field: &F, table: &[Vec<usize>]) -> Result<Algebra<F>> {
    let n = table.len();
    if n == 0 {
        return Err(Error::NotAGroup("empty table".into()));
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotAGroup(format!(
                "row {i} has length {}",
                row.len()
            )));
        }
        if let Some(&bad) = row.iter().find(|&&x| x >= n) {
            return Err(Error::NotAGroup(format!("entry {bad} out of range")));
        }
    }
    for i in 0..n {
        if table[0][i] != i || table[i][0] != i {
            return Err(Error::NotAGroup("element 0 is not the identity".into()));
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if table[table[i][j]][k] != table[i][table[j][k]] {
                    return Err(Error::NotAGroup(format!(
                        "associativity fails at ({i}, {j}, {k})"
                    )));
                }
            }
        }
    }
    let mut inverse = vec![0; n];
    for (i, inv) in inverse.iter_mut().enumerate() {
        *inv = (0..n)
            .find(|&j| table[i][j] == 0 && table[j][i] == 0)
            .ok_or_else(|| Error::NotAGroup(format!("element {i} has no inverse")))?;
    }
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for g in 0..n {
        if class_of[g] != usize::MAX {
            continue;
        }
        let mut class: Vec<usize> = (0..n).map(|h| table[table[h][g]][inverse[h]]).collect();
        class.sort_unstable();
        class.dedup();
        for &c in &class {
            class_of[c] = classes.len();
        }
        classes.push(class);
    }
    let entries = (0..n).flat_map(|i| (0..n).map(move |j| (i, j, table[i][j], field.one())));
    let unit = {
        let mut u = vec![field.zero(); n];
        u[0] = field.one();
        u
    };
    Ok(Algebra::from_entries(field, n, entries, unit)?
        .with_provenance(Provenance::Group { order: n, classes }))
}

/// The full matrix algebra `M_n(F)` with basis `e_{ij}` at index `i * n + j`.
pub fn matrix_algebra<F: Field>(field: &F, n: usize) -> Algebra<F> {
    let d = n * n;
    let entries = (0..n).flat_map(|i| {
        (0..n)
            .flat_map(move |j| (0..n).map(move |l| (i * n + j, j * n + l, i * n + l, field.one())))
    });
    let mut unit = vec![field.zero(); d];
    for i in 0..n {
        unit[i * n + i] = field.one();
    }
    Algebra::from_entries(field, d, entries, unit).expect("matrix units are well formed")
}

/// Lower triangular `n x n` matrices; the basis lists `e_{ij}` with `i >= j` row by row.
pub fn lower_triangular<F: Field>(field: &F, n: usize) -> Algebra<F> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..=i).map(move |j| (i, j))).collect();
    let index = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).unwrap();
    let mut entries = Vec::new();
    for (a, &(i, j)) in pairs.iter().enumerate() {
        for (b, &(k, l)) in pairs.iter().enumerate() {
            if j == k {
                entries.push((a, b, index(i, l), field.one()));
            }
        }
    }
    let mut unit = vec![field.zero(); pairs.len()];
    for i in 0..n {
        unit[index(i, i)] = field.one();
    }
    Algebra::from_entries(field, pairs.len(), entries, unit).expect("matrix units are well formed")
}

pub fn direct_sum<F: Field>(a: &Algebra<F>, b: &Algebra<F>) -> Result<Algebra<F>> {
    if a.field() != b.field() {
        return Err(Error::InvalidField(
            "direct sum of algebras over different fields".into(),
        ));
    }
    let da = a.dim();
    let entries = a
        .entries()
        .map(|(i, j, k, c)| (i, j, k, c.clone()))
        .chain(
            b.entries()
                .map(|(i, j, k, c)| (i + da, j + da, k + da, c.clone())),
        )
        .collect::<Vec<_>>();
    let unit = a.unit().iter().chain(b.unit()).cloned().collect();
    Algebra::from_entries(a.field(), da + b.dim(), entries, unit)
}

/// The corner algebra `eAe` together with its embedding in `A`.
#[derive(Clone, Debug)]
pub struct Corner<F: Field> {
    pub algebra: Algebra<F>,
    /// `eAe` as a subspace of `A`; basis element `i` of the corner is row `i`.
    pub embedding: Subspace<F>,
}

impl<F: Field> Corner<F> {
    pub fn to_parent(&self, coords: &[F::Elem]) -> Vec<F::Elem> {
        self.embedding.combine(coords)
    }

    pub fn from_parent(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        self.embedding.coords(v)
    }
}

pub fn corner_with_embedding<F: Field>(a: &Algebra<F>, e: &[F::Elem]) -> Result<Corner<F>> {
    if e.len() != a.dim() {
        return Err(Error::AmbientMismatch(e.len(), a.dim()));
    }
    if !a.is_idempotent(e) {
        return Err(Error::NotIdempotent);
    }
    let embedding = a.sandwich(e, &a.full_space(), e);
    let basis = embedding.basis();
    let m = basis.len();
    let algebra = Algebra::from_products(
        a.field(),
        m,
        |i, j| {
            embedding
                .coords(&a.mul(&basis[i], &basis[j]))
                .expect("eAe is closed under multiplication")
        },
        embedding.coords(e).expect("e lies in eAe"),
    )?;
    Ok(Corner { algebra, embedding })
}

pub fn corner<F: Field>(a: &Algebra<F>, e: &[F::Elem]) -> Result<Algebra<F>> {
    corner_with_embedding(a, e).map(|c| c.algebra)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn truncated<F: Field>(field: &F, n: usize) -> Algebra<F> {
        let entries = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|(i, j)| i + j < n)
            .map(|(i, j)| (i, j, i + j, field.one()));
        let mut unit = vec![field.zero(); n];
        unit[0] = field.one();
        Algebra::from_entries(field, n, entries, unit).unwrap()
    }

    #[test]
    fn one_dimensional_is_valid() {
        let q = Rationals;
        let a = Algebra::from_entries(&q, 1, [(0, 0, 0, q.one())], vec![q.one()]).unwrap();
        assert!(validate(&a).is_valid());
    }

    #[test]
    fn perturbed_dual_numbers_fail_associativity() {
        let q = Rationals;
        // F[X]/(X^2) with b0 * b1 = b0 + b1 instead of b1.
        let a = Algebra::from_entries(
            &q,
            2,
            [
                (0, 0, 0, q.one()),
                (0, 1, 1, q.one()),
                (0, 1, 0, q.one()),
                (1, 0, 1, q.one()),
            ],
            vec![q.one(), q.zero()],
        )
        .unwrap();
        let report = validate(&a);
        assert!(!report.is_valid());
        assert!(!report.associativity_failures.is_empty() || !report.unit_failures.is_empty());
    }

    #[test]
    fn cayley_group_algebras_are_valid() {
        let f3 = PrimeField::new(3).unwrap();
        let z4: Vec<Vec<usize>> = (0..4)
            .map(|i| (0..4).map(|j| (i + j) % 4).collect())
            .collect();
        let a = group_algebra_from_cayley(&f3, &z4).unwrap();
        assert!(validate(&a).is_valid());
        let trivial = group_algebra_from_cayley(&f3, &[vec![0]]).unwrap();
        assert_eq!(trivial.dim(), 1);
        assert!(validate(&trivial).is_valid());
    }

    #[test]
    fn cayley_rejects_non_groups() {
        let q = Rationals;
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(
            group_algebra_from_cayley(&q, &bad),
            Err(Error::NotAGroup(_))
        ));
        let no_identity = vec![vec![1, 0], vec![0, 1]];
        assert!(matches!(
            group_algebra_from_cayley(&q, &no_identity),
            Err(Error::NotAGroup(_))
        ));
    }

    #[test]
    fn z2_over_f2_is_dual_numbers() {
        let f2 = PrimeField::new(2).unwrap();
        let z2 = vec![vec![0, 1], vec![1, 0]];
        let a = group_algebra_from_cayley(&f2, &z2).unwrap();
        // X = g - 1 = g + 1 squares to zero and {1, X} is a basis.
        let x = vec![1, 1];
        assert!(vis_zero(&f2, &a.mul(&x, &x)));
    }

    #[test]
    fn multiplication_examples() {
        let q = Rationals;
        let t = truncated(&q, 3);
        let one = Element::one(&t);
        let x = Element::basis(&t, 1);
        let x2 = Element::basis(&t, 2);
        assert_eq!(multiply(&t, &one, &x).unwrap(), x);
        assert!(vis_zero(&q, multiply(&t, &x, &x2).unwrap().coords()));

        let m2 = matrix_algebra(&q, 2);
        let e12 = Element::basis(&m2, 1);
        let e21 = Element::basis(&m2, 2);
        assert_eq!(multiply(&m2, &e12, &e21).unwrap(), Element::basis(&m2, 0));

        assert_eq!(multiply(&m2, &e12, &x), Err(Error::ParentMismatch));
        assert!(left_regular(&m2, &x).is_err());
    }

    #[test]
    fn regular_representations() {
        let q = Rationals;
        let m2 = matrix_algebra(&q, 2);
        let x = m2.basis_vec(1);
        let y = m2.basis_vec(2);
        let lx = m2.left_regular_matrix(&x);
        let ly = m2.left_regular_matrix(&y);
        assert_eq!(
            lx.mul(&ly).unwrap(),
            m2.left_regular_matrix(&m2.mul(&x, &y))
        );
        let rx = m2.right_regular_matrix(&x);
        let ry = m2.right_regular_matrix(&y);
        assert_eq!(
            ry.mul(&rx).unwrap(),
            m2.right_regular_matrix(&m2.mul(&x, &y))
        );
        assert_eq!(lx.mul_vec(&y).unwrap(), m2.mul(&x, &y));
    }

    #[test]
    fn center_examples() {
        let q = Rationals;
        assert_eq!(k_star(&truncated(&q, 4)), 4);
        assert_eq!(k_star(&matrix_algebra(&q, 2)), 1);
        for n in 2..=5 {
            assert_eq!(k_star(&lower_triangular(&q, n)), 1);
        }
    }

    #[test]
    fn corners() {
        let q = Rationals;
        let m2 = matrix_algebra(&q, 2);
        let whole = corner(&m2, m2.unit()).unwrap();
        assert_eq!(whole.dim(), 4);
        let e11 = m2.basis_vec(0);
        let c = corner(&m2, &e11).unwrap();
        assert_eq!(c.dim(), 1);
        assert!(validate(&c).is_valid());
        assert_eq!(
            corner(&m2, &m2.basis_vec(1)).unwrap_err(),
            Error::NotIdempotent
        );
    }

    #[test]
    fn direct_sum_dimension() {
        let q = Rationals;
        let one = Algebra::from_entries(&q, 1, [(0, 0, 0, q.one())], vec![q.one()]).unwrap();
        let s = direct_sum(&one, &matrix_algebra(&q, 2)).unwrap();
        assert_eq!(s.dim(), 5);
        assert!(validate(&s).is_valid());
    }
}
