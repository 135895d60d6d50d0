//! The semisimple quotient `A/J`, its simple components and primitive idempotents.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{center, vadd, vis_zero, vscale, vsub, Algebra};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, SpanBuilder, Subspace};
use crate::field::Field;
use crate::poly;

const PAIR_CANDIDATES: usize = 12;
const RANDOM_CANDIDATES: usize = 256;

/// Whether `A/J` is a product of full matrix algebras over the ground field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Splitting {
    Split,
    NotSplit(String),
    Undecided(String),
}

impl Splitting {
    pub fn is_split(&self) -> bool {
        matches!(self, Splitting::Split)
    }

    /// `Ok` when split, otherwise the matching error.
    pub fn require(&self) -> Result<()> {
        match self {
            Splitting::Split => Ok(()),
            Splitting::NotSplit(m) => Err(Error::NotSplit(m.clone())),
            Splitting::Undecided(m) => Err(Error::SplitUndecided(m.clone())),
        }
    }
}

/// `A/J` realised on the non-pivot coordinates of `J`.
#[derive(Clone, Debug)]
pub struct Quotient<F: Field> {
    pub algebra: Algebra<F>,
    free: Vec<usize>,
    ideal: Subspace<F>,
}

impl<F: Field> Quotient<F> {
    pub fn new(a: &Algebra<F>, j: &Subspace<F>) -> Result<Self> {
        let free = j.non_pivots();
        if free.is_empty() {
            return Err(Error::InvalidAlgebra("ideal contains the unit".into()));
        }
        let f = a.field();
        let lift_basis = |i: usize| a.basis_vec(free[i]);
        let project = |v: &[F::Elem]| -> Vec<F::Elem> {
            let r = j.reduce(v);
            free.iter().map(|&c| r[c].clone()).collect()
        };
        let algebra = Algebra::from_products(
            f,
            free.len(),
            |x, y| project(&a.mul(&lift_basis(x), &lift_basis(y))),
            project(a.unit()),
        )?;
        Ok(Quotient {
            algebra,
            free,
            ideal: j.clone(),
        })
    }

    pub fn project(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let r = self.ideal.reduce(v);
        self.free.iter().map(|&c| r[c].clone()).collect()
    }

    /// A preimage supported on the free coordinates.
    pub fn lift(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.algebra.field();
        let mut out = vec![f.zero(); self.ideal.ambient()];
        for (x, &c) in v.iter().zip(&self.free) {
            out[c] = x.clone();
        }
        out
    }
}

/// `p(y)` in `a`, with `unit` standing for the constant term.
pub fn eval_in<F: Field>(
    a: &Algebra<F>,
    p: &[F::Elem],
    y: &[F::Elem],
    unit: &[F::Elem],
) -> Vec<F::Elem> {
    let f = a.field();
    p.iter().rev().fold(a.zero_vec(), |acc, c| {
        vadd(f, &a.mul(&acc, y), &vscale(f, c, unit))
    })
}

/// Monic minimal polynomial of `y` inside the unital subalgebra with identity `unit`.
pub fn minimal_polynomial<F: Field>(
    a: &Algebra<F>,
    y: &[F::Elem],
    unit: &[F::Elem],
) -> Vec<F::Elem> {
    let f = a.field();
    let mut powers = vec![unit.to_vec()];
    let mut span = SpanBuilder::new(f, a.dim());
    span.insert(unit.to_vec());
    loop {
        let next = a.mul(powers.last().expect("nonempty"), y);
        if span.contains(&next) {
            let m = powers.len();
            let system = Matrix::from_fn(f, a.dim(), m, |r, c| powers[c][r].clone());
            let coeffs = system
                .solve(&next)
                .expect("dependent power lies in the span");
            let mut out: Vec<F::Elem> = coeffs.iter().map(|c| f.neg(c)).collect();
            out.push(f.one());
            return out;
        }
        span.insert(next.clone());
        powers.push(next);
    }
}

/// Central primitive idempotents of a semisimple algebra, and whether its center is `F^r`.
///
/// Each center basis element is diagonalised by its spectral idempotents; a minimal
/// polynomial with fewer roots than its degree means the center is not split.
pub fn central_idempotents<F: Field>(s: &Algebra<F>) -> (Vec<Vec<F::Elem>>, Splitting) {
    let f = s.field();
    let unit = s.unit().to_vec();
    let z = center(s);
    let mut idems = vec![unit.clone()];
    let mut status = Splitting::Split;
    // Over F_p the fixed points of z -> z^p form a split subalgebra with one basis
    // vector per component, so its elements always diagonalise completely.
    let generators = match f.order() {
        Some(p) => {
            let fixed = frobenius_fixed(s, &z, p);
            if fixed.dim() < z.dim() {
                status = Splitting::NotSplit(format!(
                    "the center of A/J has dimension {} but only {} simple components over {}",
                    z.dim(),
                    fixed.dim(),
                    f.spec()
                ));
            }
            fixed
        }
        None => z,
    };
    for zb in generators.basis() {
        let mp = minimal_polynomial(s, zb, &unit);
        let deg = mp.len() - 1;
        if deg == 1 {
            continue;
        }
        let roots = match f.roots(&mp) {
            Ok(r) => r,
            Err(e) => {
                status = Splitting::Undecided(e.to_string());
                continue;
            }
        };
        if roots.len() < deg {
            status = Splitting::NotSplit(format!(
                "a central element has minimal polynomial of degree {deg} with {} roots in {}",
                roots.len(),
                f.spec()
            ));
        }
        if roots.is_empty() {
            continue;
        }
        // e_lambda = h(z) / h(lambda) with h = mp / (X - lambda); the remainder covers
        // the factors without roots
        let mut spectral: Vec<Vec<F::Elem>> = roots
            .iter()
            .map(|lambda| {
                let (h, _) = poly::divrem(f, &mp, &[f.neg(lambda), f.one()]);
                let scale = f
                    .inv(&poly::eval(f, &h, lambda))
                    .expect("squarefree minimal polynomial");
                let h: Vec<F::Elem> = h.iter().map(|c| f.mul(c, &scale)).collect();
                eval_in(s, &h, zb, &unit)
            })
            .collect();
        let rest = spectral
            .iter()
            .fold(unit.clone(), |acc, e| vsub(f, &acc, e));
        if !vis_zero(f, &rest) {
            spectral.push(rest);
        }
        idems = idems
            .iter()
            .flat_map(|e| spectral.iter().map(move |pr| s.mul(e, pr)))
            .filter(|v| !vis_zero(f, v))
            .collect();
    }
    idems.sort_by_key(|v| v.iter().position(|x| !f.is_zero(x)));
    (idems, status)
}

/// `{ z in Z : z^p = z }` for a commutative subalgebra `Z` of an algebra over `F_p`.
fn frobenius_fixed<F: Field>(s: &Algebra<F>, z: &Subspace<F>, p: u64) -> Subspace<F> {
    let f = s.field();
    let cols: Vec<Vec<F::Elem>> = z.basis().iter().map(|w| vsub(f, &s.pow(w, p), w)).collect();
    let system = Matrix::from_fn(f, s.dim(), cols.len(), |r, c| cols[c][r].clone());
    let kernel = system.kernel();
    Subspace::span(f, s.dim(), kernel.basis().iter().map(|c| z.combine(c)))
}

/// Splits `e` into primitive orthogonal idempotents of the semisimple algebra `s`.
///
/// Returns `None` when no zero divisor of the corner `e s e` could be found.
pub fn primitive_decomposition<F: Field>(
    s: &Algebra<F>,
    e: &[F::Elem],
    seed: u64,
) -> Option<Vec<Vec<F::Elem>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut stack = vec![e.to_vec()];
    while let Some(top) = stack.pop() {
        let corner = s.sandwich(&top, &s.full_space(), &top);
        if corner.dim() == 1 {
            out.push(top);
            continue;
        }
        let x = find_zero_divisor(s, &top, &corner, &mut rng)?;
        let e1 = right_ideal_identity(s, &x, &corner);
        let e2 = vsub(s.field(), &top, &e1);
        stack.push(e2);
        stack.push(e1);
    }
    Some(out)
}

fn find_zero_divisor<F: Field>(
    s: &Algebra<F>,
    e: &[F::Elem],
    corner: &Subspace<F>,
    rng: &mut ChaCha8Rng,
) -> Option<Vec<F::Elem>> {
    let f = s.field();
    let basis = corner.basis();
    let try_candidate = |y: &[F::Elem]| -> Option<Vec<F::Elem>> {
        let mp = minimal_polynomial(s, y, e);
        if mp.len() <= 2 {
            return None;
        }
        let lambda = f.roots(&mp).ok()?.into_iter().next()?;
        Some(vsub(f, y, &vscale(f, &lambda, e)))
    };
    for b in basis {
        if let Some(x) = try_candidate(b) {
            return Some(x);
        }
    }
    let k = basis.len().min(PAIR_CANDIDATES);
    for i in 0..k {
        for j in i + 1..k {
            if let Some(x) = try_candidate(&vadd(f, &basis[i], &basis[j])) {
                return Some(x);
            }
        }
    }
    for _ in 0..RANDOM_CANDIDATES {
        let coeffs: Vec<F::Elem> = (0..basis.len()).map(|_| f.random(rng)).collect();
        if let Some(x) = try_candidate(&corner.combine(&coeffs)) {
            return Some(x);
        }
    }
    None
}

/// The idempotent `e'` with `x C = e' C`, for a zero divisor `x` of the corner `C`.
fn right_ideal_identity<F: Field>(
    s: &Algebra<F>,
    x: &[F::Elem],
    corner: &Subspace<F>,
) -> Vec<F::Elem> {
    let f = s.field();
    let rho: Vec<Vec<F::Elem>> = corner.basis().iter().map(|c| s.mul(x, c)).collect();
    let ideal = Subspace::span(f, s.dim(), rho.iter().cloned());
    let d = s.dim();
    let m = rho.len();
    let targets = ideal.basis();
    // sum_k beta_k (rho_k r_t) = r_t for every basis vector r_t of the ideal
    let products: Vec<Vec<Vec<F::Elem>>> = targets
        .iter()
        .map(|r| rho.iter().map(|rk| s.mul(rk, r)).collect())
        .collect();
    let system = Matrix::from_fn(f, targets.len() * d, m, |row, k| {
        products[row / d][k][row % d].clone()
    });
    let rhs: Vec<F::Elem> = targets.iter().flat_map(|r| r.iter().cloned()).collect();
    let beta = system
        .solve(&rhs)
        .expect("a right ideal of a semisimple algebra has a left identity");
    rho.iter()
        .zip(&beta)
        .fold(s.zero_vec(), |acc, (r, b)| vadd(f, &acc, &vscale(f, b, r)))
}
