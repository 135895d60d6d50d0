//! Commutator subspaces and the invariants built from them.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactla::{Matrix, SpanBuilder, Subspace};
use crate::field::Field;
use crate::structure::{IdempotentSet, Structure};

/// Default number of candidate functionals an exhaustive symmetry search may visit.
pub const SYMMETRIC_BUDGET: u64 = 1 << 16;
const SYMMETRIC_RANDOM_TRIALS: usize = 64;

/// `K(A)`, spanned by the commutators of basis pairs.
pub fn commutator_subspace<F: Field>(a: &Algebra<F>) -> Subspace<F> {
    let mut span = SpanBuilder::new(a.field(), a.dim());
    for i in 0..a.dim() {
        for j in i + 1..a.dim() {
            if a.basis_product(i, j) != a.basis_product(j, i) {
                span.insert(a.commutator(&a.basis_vec(i), &a.basis_vec(j)));
            }
        }
    }
    span.finish()
}

/// `k(A) = codim K(A)`.
pub fn k_of<F: Field>(a: &Algebra<F>) -> usize {
    commutator_subspace(a).codim()
}

/// `K_n(A) = K(A) + J^n`.
pub fn k_n<F: Field>(k: &Subspace<F>, s: &Structure<F>, n: usize) -> Subspace<F> {
    k.sum(s.radical_power(n)).expect("same ambient space")
}

/// `codim K_n(A)` for `n = 1..=LL`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct CodimSeries {
    pub values: Vec<usize>,
    pub k: usize,
    pub ell_if_split: Option<usize>,
}

pub fn codim_series<F: Field>(k: &Subspace<F>, s: &Structure<F>) -> CodimSeries {
    let values = (1..=s.loewy_length())
        .map(|n| k_n(k, s, n).codim())
        .collect();
    CodimSeries {
        values,
        k: k.codim(),
        ell_if_split: s.ell().ok(),
    }
}

/// `T(A)`: preimage of the generalized kernel of `a + K -> a^p + K` on `A/K`.
pub fn t_space<F: Field>(a: &Algebra<F>, k: &Subspace<F>) -> Result<Subspace<F>> {
    let f = a.field();
    let p = f.characteristic();
    if p == 0 {
        return Err(Error::CharZero);
    }
    let free = k.non_pivots();
    let m = free.len();
    let project = |v: &[F::Elem]| -> Vec<F::Elem> {
        let r = k.reduce(v);
        free.iter().map(|&c| r[c].clone()).collect()
    };
    // column c: class of b_{free[c]}^p; linear because the ground field is F_p
    let cols: Vec<Vec<F::Elem>> = free
        .iter()
        .map(|&c| project(&a.pow(&a.basis_vec(c), p)))
        .collect();
    let phi = Matrix::from_fn(f, m, m, |r, c| cols[c][r].clone());
    let mut power = phi.clone();
    let mut kernel = power.kernel();
    for _ in 0..m {
        let next_power = power.mul(&phi).expect("square");
        let next = next_power.kernel();
        if next.dim() == kernel.dim() {
            break;
        }
        power = next_power;
        kernel = next;
    }
    let mut span = SpanBuilder::from_subspace(k.clone());
    for v in kernel.basis() {
        let mut lifted = a.zero_vec();
        for (x, &c) in v.iter().zip(&free) {
            lifted[c] = x.clone();
        }
        span.insert(lifted);
    }
    Ok(span.finish())
}

/// `aCyc(A) + Cyc_{>=n}(A)` for a basic set of primitive idempotents.
pub fn acyc_cyc<F: Field>(
    a: &Algebra<F>,
    idems: &IdempotentSet<F>,
    s: &Structure<F>,
    n: usize,
) -> Result<Subspace<F>> {
    if !idems.is_basic() {
        return Err(Error::NotBasic);
    }
    let full = a.full_space();
    let jn = s.radical_power(n);
    let mut span = SpanBuilder::new(a.field(), a.dim());
    for (i, ei) in idems.idempotents.iter().enumerate() {
        for (j, ej) in idems.idempotents.iter().enumerate() {
            let piece = if i == j {
                a.sandwich(ei, jn, ej)
            } else {
                a.sandwich(ei, &full, ej)
            };
            for v in piece.basis() {
                span.insert(v.clone());
            }
        }
    }
    Ok(span.finish())
}

/// `sum_i dim e_i A e_i / e_i J^n e_i` over basic representatives.
pub fn peirce_codim_bound<F: Field>(a: &Algebra<F>, s: &Structure<F>, n: usize) -> Result<usize> {
    s.peirce_diagonal_codim(a, n)
}

pub fn rad_in_k<F: Field>(k: &Subspace<F>, s: &Structure<F>) -> bool {
    s.radical.is_subspace_of(k).expect("same ambient space")
}

/// Outcome of the symmetrizing-form search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Symmetric<E> {
    /// A functional vanishing on `K(A)` with nondegenerate form `(x, y) -> λ(xy)`.
    Yes(Vec<E>),
    No,
    Unknown,
}

impl<E> Symmetric<E> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Symmetric::Yes(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Symmetric::Yes(_) => "yes",
            Symmetric::No => "no",
            Symmetric::Unknown => "unknown",
        }
    }
}

/// Searches functionals on `A/K(A)` for a symmetrizing form.
///
/// Over `F_p` with `p^k <= budget` every functional is tried, so failure is a proof of
/// non-symmetry; otherwise a fixed number of seeded random functionals are tried.
pub fn is_symmetric_search<F: Field>(
    a: &Algebra<F>,
    k: &Subspace<F>,
    seed: u64,
    budget: u64,
) -> Symmetric<F::Elem> {
    let f = a.field();
    let d = a.dim();
    // functionals vanishing on K: kernel of the matrix whose rows span K
    let annihilator = if k.is_zero() {
        Subspace::full(f, d)
    } else {
        k.basis_matrix().kernel()
    };
    let gens = annihilator.basis();
    let dim = gens.len();
    let is_symmetrizing = |coeffs: &[F::Elem]| -> Option<Vec<F::Elem>> {
        let lambda = annihilator.combine(coeffs);
        let gram = Matrix::from_fn(f, d, d, |i, j| {
            a.basis_product(i, j).iter().fold(f.zero(), |acc, (kk, c)| {
                f.add(&acc, &f.mul(c, &lambda[*kk]))
            })
        });
        (gram.rank() == d).then_some(lambda)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SYMMETRIC_RANDOM_TRIALS {
        let coeffs: Vec<F::Elem> = (0..dim).map(|_| f.random(&mut rng)).collect();
        if let Some(l) = is_symmetrizing(&coeffs) {
            return Symmetric::Yes(l);
        }
    }
    let Some(p) = f.order() else {
        return Symmetric::Unknown;
    };
    let total = (0..dim).try_fold(1u64, |acc, _| acc.checked_mul(p).filter(|t| *t <= budget));
    let Some(total) = total else {
        return Symmetric::Unknown;
    };
    for idx in 1..total {
        let mut rest = idx;
        let coeffs: Vec<F::Elem> = (0..dim)
            .map(|_| {
                let c = rest % p;
                rest /= p;
                f.nth(c)
            })
            .collect();
        if let Some(l) = is_symmetrizing(&coeffs) {
            return Symmetric::Yes(l);
        }
    }
    Symmetric::No
}
