//! Radical, semisimple quotient, primitive idempotents and Cartan data.

mod radical;
mod wedderburn;

pub use radical::{compute_radical, loewy_length, radical, radical_power, radical_powers};
pub use wedderburn::{
    central_idempotents, eval_in, minimal_polynomial, primitive_decomposition, Quotient, Splitting,
};

use crate::algebra::{vis_zero, vsub, Algebra};
use crate::error::Result;
use crate::exactla::Subspace;
use crate::field::Field;

/// Complete set of primitive orthogonal idempotents grouped into isomorphism classes.
#[derive(Clone, Debug, PartialEq)]
pub struct IdempotentSet<F: Field> {
    pub idempotents: Vec<Vec<F::Elem>>,
    /// Class of each idempotent; classes are numbered `0..ell`.
    pub classes: Vec<usize>,
    /// First idempotent of each class.
    pub representatives: Vec<usize>,
}

impl<F: Field> IdempotentSet<F> {
    pub fn ell(&self) -> usize {
        self.representatives.len()
    }

    /// Number of idempotents in each class (the matrix size of each simple component).
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.ell()];
        for &c in &self.classes {
            m[c] += 1;
        }
        m
    }

    pub fn is_basic(&self) -> bool {
        self.idempotents.len() == self.ell()
    }

    pub fn basic_representatives(&self) -> Vec<&[F::Elem]> {
        self.representatives
            .iter()
            .map(|&i| self.idempotents[i].as_slice())
            .collect()
    }

    /// Sum of one idempotent per class.
    pub fn basic_idempotent(&self, a: &Algebra<F>) -> Vec<F::Elem> {
        let f = a.field();
        self.basic_representatives()
            .into_iter()
            .fold(a.zero_vec(), |acc, e| crate::algebra::vadd(f, &acc, e))
    }
}

/// Everything derived from the radical and the semisimple quotient.
#[derive(Clone, Debug)]
pub struct Structure<F: Field> {
    pub radical: Subspace<F>,
    /// `powers[n] = J^n` for `n = 0..=LL`.
    pub powers: Vec<Subspace<F>>,
    /// Central primitive idempotents of `A/J`, lifted to `A` only through `idempotents`.
    pub central: Vec<Vec<F::Elem>>,
    pub split: Splitting,
    pub idempotents: Option<IdempotentSet<F>>,
    pub quotient_dim: usize,
    pub quotient_commutative: bool,
}

impl<F: Field> Structure<F> {
    pub fn loewy_length(&self) -> usize {
        self.powers.len() - 1
    }

    pub fn radical_power(&self, n: usize) -> &Subspace<F> {
        &self.powers[n.min(self.powers.len() - 1)]
    }

    /// Whether `A/J` is a division algebra; `None` when that cannot be decided.
    pub fn is_local(&self, field: &F) -> Option<bool> {
        if self.central.len() > 1 {
            return Some(false);
        }
        match self.split {
            Splitting::Split => Some(self.quotient_dim == 1),
            // finite division rings are fields
            Splitting::NotSplit(_) if field.order().is_some() => Some(self.quotient_commutative),
            _ => None,
        }
    }

    pub fn require_split(&self) -> Result<&IdempotentSet<F>> {
        self.split.require()?;
        Ok(self
            .idempotents
            .as_ref()
            .expect("split algebras carry idempotents"))
    }

    pub fn ell(&self) -> Result<usize> {
        Ok(self.require_split()?.ell())
    }

    /// `C[i][j] = dim e_i A e_j` over basic representatives.
    pub fn cartan(&self, a: &Algebra<F>) -> Result<Vec<Vec<usize>>> {
        let reps = self.require_split()?.basic_representatives();
        let full = a.full_space();
        Ok(reps
            .iter()
            .map(|ei| {
                reps.iter()
                    .map(|ej| a.sandwich(ei, &full, ej).dim())
                    .collect()
            })
            .collect())
    }

    /// `dim e_i J e_i - dim e_i J^2 e_i` over basic representatives.
    pub fn ext1_diag(&self, a: &Algebra<F>) -> Result<Vec<usize>> {
        let reps = self.require_split()?.basic_representatives();
        let j1 = self.radical_power(1);
        let j2 = self.radical_power(2);
        Ok(reps
            .iter()
            .map(|e| a.sandwich(e, j1, e).dim() - a.sandwich(e, j2, e).dim())
            .collect())
    }

    /// `dim e_i A e_i - dim e_i J^n e_i` summed over basic representatives.
    pub fn peirce_diagonal_codim(&self, a: &Algebra<F>, n: usize) -> Result<usize> {
        let reps = self.require_split()?.basic_representatives();
        let full = a.full_space();
        let jn = self.radical_power(n);
        Ok(reps
            .iter()
            .map(|e| a.sandwich(e, &full, e).dim() - a.sandwich(e, jn, e).dim())
            .sum())
    }

    pub fn report(&self, a: &Algebra<F>) -> StructureReport<F> {
        StructureReport {
            radical: self.radical.clone(),
            loewy_length: self.loewy_length(),
            ell: self.ell().ok(),
            cartan: self.cartan(a).ok(),
            ext1_diag: self.ext1_diag(a).ok(),
            split: self.split.is_split(),
        }
    }
}

/// Summary of the structure computation; split-dependent fields are `None` otherwise.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureReport<F: Field> {
    pub radical: Subspace<F>,
    pub loewy_length: usize,
    pub ell: Option<usize>,
    pub cartan: Option<Vec<Vec<usize>>>,
    pub ext1_diag: Option<Vec<usize>>,
    pub split: bool,
}

/// Computes radical data, the Wedderburn splitting and, when split, lifted idempotents.
///
/// `seed` drives the random part of the idempotent search; results depend only on
/// the algebra and the seed.
pub fn analyze<F: Field>(a: &Algebra<F>, seed: u64) -> Result<Structure<F>> {
    let j = radical(a);
    analyze_with_radical(a, j, seed)
}

pub fn analyze_with_radical<F: Field>(
    a: &Algebra<F>,
    j: Subspace<F>,
    seed: u64,
) -> Result<Structure<F>> {
    let powers = radical_powers(a, &j);
    let q = Quotient::new(a, &j)?;
    let s = &q.algebra;
    let (central, mut split) = central_idempotents(s);
    let mut idempotents = None;
    if split.is_split() {
        let mut bar = Vec::new();
        let mut classes = Vec::new();
        for (c, eps) in central.iter().enumerate() {
            match primitive_decomposition(s, eps, seed) {
                Some(prims) => {
                    let n = prims.len();
                    debug_assert_eq!(s.sandwich(eps, &s.full_space(), eps).dim(), n * n);
                    classes.extend(std::iter::repeat(c).take(n));
                    bar.extend(prims);
                }
                None => {
                    split = Splitting::Undecided(format!(
                        "no zero divisor found in a simple component of dimension {}",
                        s.sandwich(eps, &s.full_space(), eps).dim()
                    ));
                    break;
                }
            }
        }
        if split.is_split() {
            let lifted = lift_idempotents(a, &q, &bar);
            let representatives = (0..central.len())
                .map(|c| {
                    classes
                        .iter()
                        .position(|&x| x == c)
                        .expect("every class nonempty")
                })
                .collect();
            idempotents = Some(IdempotentSet {
                idempotents: lifted,
                classes,
                representatives,
            });
        }
    }
    Ok(Structure {
        radical: j,
        powers,
        central,
        split,
        idempotents,
        quotient_dim: s.dim(),
        quotient_commutative: s.is_commutative(),
    })
}

/// Lifts orthogonal idempotents of `A/J` summing to one into `A`, one corner at a time.
fn lift_idempotents<F: Field>(
    a: &Algebra<F>,
    q: &Quotient<F>,
    bar: &[Vec<F::Elem>],
) -> Vec<Vec<F::Elem>> {
    let f = a.field();
    let three = f.from_i64(3);
    let two = f.from_i64(2);
    let mut rest = a.unit().to_vec();
    let mut out = Vec::with_capacity(bar.len());
    for (i, e) in bar.iter().enumerate() {
        if i + 1 == bar.len() {
            out.push(rest.clone());
            break;
        }
        let mut x = a.mul3(&rest, &q.lift(e), &rest);
        loop {
            let x2 = a.mul(&x, &x);
            if x2 == x {
                break;
            }
            let x3 = a.mul(&x2, &x);
            x = x2
                .iter()
                .zip(&x3)
                .map(|(u, v)| f.sub(&f.mul(&three, u), &f.mul(&two, v)))
                .collect();
        }
        rest = vsub(f, &rest, &x);
        out.push(x);
    }
    debug_assert!(out.iter().all(|e| !vis_zero(f, e)));
    out
}

/// Central primitive idempotents of `A/J` (in quotient coordinates) and the split flag.
pub fn wedderburn_split<F: Field>(a: &Algebra<F>, seed: u64) -> Result<(Vec<Vec<F::Elem>>, bool)> {
    let s = analyze(a, seed)?;
    match &s.split {
        Splitting::Undecided(m) => Err(crate::Error::SplitUndecided(m.clone())),
        other => Ok((s.central.clone(), other.is_split())),
    }
}

pub fn primitive_idempotents<F: Field>(a: &Algebra<F>, seed: u64) -> Result<IdempotentSet<F>> {
    analyze(a, seed)?.require_split().cloned()
}

pub fn cartan_matrix<F: Field>(a: &Algebra<F>) -> Result<Vec<Vec<usize>>> {
    analyze(a, 0)?.cartan(a)
}

pub fn ell<F: Field>(a: &Algebra<F>) -> Result<usize> {
    analyze(a, 0)?.ell()
}

pub fn ext1_diag<F: Field>(a: &Algebra<F>) -> Result<Vec<usize>> {
    analyze(a, 0)?.ext1_diag(a)
}
