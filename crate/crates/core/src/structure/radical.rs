//! Jacobson radical and its powers.
//!
//! In characteristic zero, or when `p > dim A`, the radical is the kernel of the trace
//! form `(x, y) -> tr(L_{xy})`. Otherwise the chain `A = I_{-1} ⊇ I_0 ⊇ ... ⊇ I_l`,
//! `l = floor(log_p dim A)`, is cut out by the functionals
//! `g_i(a) = (Tr(ã^{p^i}) mod p^{i+1}) / p^i`, where `ã` is the integer lift of `L_a`;
//! `I_i = { a in I_{i-1} : g_i(ab) = 0 for all b }` and `I_l` is the radical.
//! Each `g_i` is linear on `I_{i-1}`, so it is evaluated once per basis vector.

use crate::algebra::{Algebra, Provenance};
use crate::exactla::{Matrix, Subspace};
use crate::field::Field;

/// The radical, taken from the arrow ideal when the algebra came from a bound quiver.
pub fn radical<F: Field>(a: &Algebra<F>) -> Subspace<F> {
    if let Provenance::Quiver { arrow_ideal, .. } = a.provenance() {
        return arrow_ideal.clone();
    }
    compute_radical(a)
}

/// The radical computed from the structure constants alone, ignoring provenance.
pub fn compute_radical<F: Field>(a: &Algebra<F>) -> Subspace<F> {
    let f = a.field();
    let d = a.dim();
    let traces: Vec<F::Elem> = (0..d)
        .map(|k| {
            (0..d).fold(f.zero(), |acc, m| {
                f.add(&acc, &a.structure_constant(k, m, m))
            })
        })
        .collect();
    // Gram matrix of the trace form: G[j][i] = tr(L_{b_i b_j})
    let gram = Matrix::from_fn(f, d, d, |j, i| {
        a.basis_product(i, j)
            .iter()
            .fold(f.zero(), |acc, (k, c)| f.add(&acc, &f.mul(c, &traces[*k])))
    });
    let mut ideal = gram.kernel();
    let p = f.characteristic();
    if p == 0 {
        return ideal;
    }
    let mut pi = p;
    let mut i = 1u32;
    while pi <= d as u64 {
        if ideal.is_zero() {
            break;
        }
        ideal = refine(a, &ideal, p, pi, i);
        pi = pi.saturating_mul(p);
        i += 1;
    }
    ideal
}

/// `I_i` from `I_{i-1}` using `g_i`, with `pi = p^i`.
fn refine<F: Field>(a: &Algebra<F>, prev: &Subspace<F>, p: u64, pi: u64, i: u32) -> Subspace<F> {
    let f = a.field();
    let d = a.dim();
    let modulus = pi * p;
    let basis = prev.basis();
    let gamma: Vec<F::Elem> = basis
        .iter()
        .map(|w| {
            let lift = integer_lift(a, w);
            let t = trace_of_power(&lift, d, pi, modulus);
            debug_assert_eq!(t % pi, 0, "trace of p^{i}-th power is divisible by p^{i}");
            f.nth((t / pi) % p)
        })
        .collect();
    // M[j][s] = g_i(w_s b_j)
    let system = Matrix::from_fn(f, d, basis.len(), |j, s| {
        let prod = a.mul(&basis[s], &a.basis_vec(j));
        prev.pivots()
            .iter()
            .zip(&gamma)
            .fold(f.zero(), |acc, (&col, g)| {
                f.add(&acc, &f.mul(&prod[col], g))
            })
    });
    let kernel = system.kernel();
    Subspace::span(f, d, kernel.basis().iter().map(|c| prev.combine(c)))
}

fn integer_lift<F: Field>(a: &Algebra<F>, x: &[F::Elem]) -> Vec<u64> {
    let m = a.left_regular_matrix(x);
    let d = a.dim();
    (0..d * d)
        .map(|idx| {
            a.field()
                .residue(m.get(idx / d, idx % d))
                .expect("prime field residue")
        })
        .collect()
}

fn mat_mul_mod(x: &[u64], y: &[u64], d: usize, m: u64) -> Vec<u64> {
    let mut out = vec![0u64; d * d];
    for r in 0..d {
        for k in 0..d {
            let a = x[r * d + k];
            if a == 0 {
                continue;
            }
            let row = &y[k * d..(k + 1) * d];
            let dst = &mut out[r * d..(r + 1) * d];
            for (o, b) in dst.iter_mut().zip(row) {
                *o = ((*o as u128 + a as u128 * *b as u128) % m as u128) as u64;
            }
        }
    }
    out
}

fn trace_of_power(x: &[u64], d: usize, mut e: u64, m: u64) -> u64 {
    let mut acc: Option<Vec<u64>> = None;
    let mut base: Vec<u64> = x.iter().map(|v| v % m).collect();
    while e > 0 {
        if e & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(acc) => mat_mul_mod(&acc, &base, d, m),
            });
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul_mod(&base, &base, d, m);
        }
    }
    let acc = acc.expect("positive exponent");
    (0..d).fold(0u64, |t, i| (t + acc[i * d + i]) % m)
}

/// `[A, J, J^2, ..., J^LL]` with `J^LL = 0`.
pub fn radical_powers<F: Field>(a: &Algebra<F>, j: &Subspace<F>) -> Vec<Subspace<F>> {
    let mut powers = vec![a.full_space(), j.clone()];
    while !powers.last().expect("nonempty").is_zero() {
        let next = a.product_space(j, powers.last().expect("nonempty"));
        assert!(
            next.dim() < powers.last().expect("nonempty").dim(),
            "radical powers must strictly decrease"
        );
        powers.push(next);
    }
    powers
}

/// `J^n` for the radical `J` of `a`.
pub fn radical_power<F: Field>(a: &Algebra<F>, n: usize) -> Subspace<F> {
    let powers = radical_powers(a, &radical(a));
    powers
        .get(n)
        .cloned()
        .unwrap_or_else(|| Subspace::zero(a.field(), a.dim()))
}

/// Least `n` with `J^n = 0`.
pub fn loewy_length<F: Field>(a: &Algebra<F>) -> usize {
    radical_powers(a, &radical(a)).len() - 1
}
