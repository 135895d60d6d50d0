//! Brute-force oracles for certifying the main computations on tiny algebras.
//!
//! Nothing here uses the `exactla` elimination code.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactla::Subspace;
use crate::field::{Field, PrimeField};

/// Largest `p^dim` the radical oracle will enumerate.
pub const RADICAL_ORACLE_LIMIT: u64 = 1 << 15;

/// Rank by plain row reduction on a copy.
fn rank<F: Field>(f: &F, mut rows: Vec<Vec<F::Elem>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(&rows[r][c]).expect("nonzero pivot");
        for i in (r + 1)..rows.len() {
            if f.is_zero(&rows[i][c]) {
                continue;
            }
            let factor = f.mul(&rows[i][c], &inv);
            for j in c..cols {
                let t = f.mul(&factor, &rows[r][j]);
                rows[i][j] = f.sub(&rows[i][j], &t);
            }
        }
        r += 1;
    }
    r
}

fn product<F: Field>(a: &Algebra<F>, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
    let f = a.field();
    let d = a.dim();
    let mut out = vec![f.zero(); d];
    for i in 0..d {
        if f.is_zero(&x[i]) {
            continue;
        }
        for j in 0..d {
            if f.is_zero(&y[j]) {
                continue;
            }
            let xy = f.mul(&x[i], &y[j]);
            for (k, c) in a.basis_product(i, j) {
                out[*k] = f.add(&out[*k], &f.mul(&xy, c));
            }
        }
    }
    out
}

/// `k(A)` from the rank of all `d^2` basis commutators.
pub fn k_oracle<F: Field>(a: &Algebra<F>) -> usize {
    let f = a.field();
    let d = a.dim();
    let basis: Vec<Vec<F::Elem>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| if i == j { f.one() } else { f.zero() })
                .collect()
        })
        .collect();
    let mut rows = Vec::with_capacity(d * d);
    for x in &basis {
        for y in &basis {
            let xy = product(a, x, y);
            let yx = product(a, y, x);
            rows.push(xy.iter().zip(&yx).map(|(u, v)| f.sub(u, v)).collect());
        }
    }
    d - rank(f, rows)
}

fn decode(p: u64, d: usize, mut index: u64) -> Vec<u64> {
    let mut v = vec![0; d];
    for c in v.iter_mut() {
        *c = index % p;
        index /= p;
    }
    v
}

fn encode(p: u64, v: &[u64]) -> u64 {
    v.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// `Rad(A)` as the set of `x` with `1 - a x` invertible for every `a`.
///
/// Every element is enumerated; the elements already known to lie in the span of
/// radical elements found so far are skipped.
pub fn radical_oracle(a: &Algebra<PrimeField>) -> Result<Subspace<PrimeField>> {
    let f = a.field();
    let p = f.modulus();
    let d = a.dim();
    let total = (p as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if total > RADICAL_ORACLE_LIMIT as u128 {
        return Err(Error::TooLarge(format!(
            "{p}^{d} elements exceed the oracle limit"
        )));
    }
    let total = total as u64;
    let invertible: Vec<bool> = (0..total)
        .map(|i| {
            let u = decode(p, d, i);
            let rows = (0..d)
                .map(|j| {
                    let mut b = vec![0; d];
                    b[j] = 1;
                    product(a, &u, &b)
                })
                .collect();
            rank(f, rows) == d
        })
        .collect();
    let one = a.unit().to_vec();
    let mut in_rad = vec![false; total as usize];
    in_rad[0] = true;
    let mut generators = Vec::new();
    for xi in 1..total {
        if in_rad[xi as usize] {
            continue;
        }
        let x = decode(p, d, xi);
        let quasi_regular = (0..total).all(|ai| {
            let ax = product(a, &decode(p, d, ai), &x);
            let w: Vec<u64> = one.iter().zip(&ax).map(|(u, v)| f.sub(u, v)).collect();
            invertible[encode(p, &w) as usize]
        });
        if quasi_regular {
            let members: Vec<u64> = (0..total).filter(|&y| in_rad[y as usize]).collect();
            for y in members {
                let yv = decode(p, d, y);
                for c in 1..p {
                    let z: Vec<u64> = yv
                        .iter()
                        .zip(&x)
                        .map(|(u, v)| f.add(u, &f.mul(&c, v)))
                        .collect();
                    in_rad[encode(p, &z) as usize] = true;
                }
            }
            generators.push(x);
        }
    }
    Ok(Subspace::span(f, d, generators))
}
