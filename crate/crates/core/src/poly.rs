//! Dense univariate polynomials over an exact field, lowest degree first.
//!
//! Only what the structure computations need: minimal polynomials of algebra
//! elements and their roots in the ground field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{abs_u64, Field, PrimeField};

/// Residues below this bound are searched exhaustively for roots.
const ENUMERATE_BELOW: u64 = 512;

/// Largest constant or leading coefficient whose divisors are enumerated over Q.
const RATIONAL_DIVISOR_LIMIT: u64 = 1_000_000_000_000;

pub fn trim<F: Field>(field: &F, f: &mut Vec<F::Elem>) {
    while f.last().is_some_and(|c| field.is_zero(c)) {
        f.pop();
    }
}

pub fn degree<F: Field>(field: &F, f: &[F::Elem]) -> Option<usize> {
    f.iter().rposition(|c| !field.is_zero(c))
}

pub fn eval<F: Field>(field: &F, f: &[F::Elem], x: &F::Elem) -> F::Elem {
    f.iter()
        .rev()
        .fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
}

pub fn mul<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if field.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = field.add(&out[i + j], &field.mul(x, y));
        }
    }
    trim(field, &mut out);
    out
}

pub fn sub<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let z = field.zero();
    let mut out: Vec<F::Elem> = (0..n)
        .map(|i| field.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(field, &mut out);
    out
}

/// Quotient and remainder; panics on a zero divisor.
pub fn divrem<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let db = degree(field, b).expect("division by zero polynomial");
    let lead_inv = field.inv(&b[db]).expect("nonzero leading coefficient");
    let mut r: Vec<F::Elem> = a.to_vec();
    trim(field, &mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![field.zero(); r.len() - db];
    while let Some(dr) = degree(field, &r) {
        if dr < db {
            break;
        }
        let c = field.mul(&r[dr], &lead_inv);
        let shift = dr - db;
        for (i, bc) in b[..=db].iter().enumerate() {
            r[shift + i] = field.mul_sub(&r[shift + i], &c, bc);
        }
        q[shift] = c;
        trim(field, &mut r);
    }
    trim(field, &mut q);
    (q, r)
}

pub fn monic<F: Field>(field: &F, f: &[F::Elem]) -> Vec<F::Elem> {
    match degree(field, f) {
        None => Vec::new(),
        Some(d) => {
            let inv = field.inv(&f[d]).expect("nonzero");
            f[..=d].iter().map(|c| field.mul(c, &inv)).collect()
        }
    }
}

pub fn gcd<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(field, &mut a);
    trim(field, &mut b);
    while !b.is_empty() {
        let (_, r) = divrem(field, &a, &b);
        a = b;
        b = r;
    }
    monic(field, &a)
}

/// `base^e mod m`.
pub fn powmod<F: Field>(field: &F, base: &[F::Elem], mut e: u64, m: &[F::Elem]) -> Vec<F::Elem> {
    let mut acc = divrem(field, &[field.one()], m).1;
    let mut b = divrem(field, base, m).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = divrem(field, &mul(field, &acc, &b), m).1;
        }
        b = divrem(field, &mul(field, &b, &b), m).1;
        e >>= 1;
    }
    acc
}

/// Distinct roots in `F_p`, ascending.
///
/// Small moduli are searched directly; otherwise the split part `gcd(f, X^p - X)` is
/// separated by equal-degree splitting with the deterministic shifts `X + 0, X + 1, ...`.
pub fn prime_field_roots(field: &PrimeField, f: &[u64]) -> Vec<u64> {
    let p = field.modulus();
    let mut f = f.to_vec();
    trim(field, &mut f);
    if degree(field, &f).unwrap_or(0) == 0 {
        return Vec::new();
    }
    if p < ENUMERATE_BELOW {
        return (0..p).filter(|x| eval(field, &f, x) == 0).collect();
    }
    let x = vec![0, 1];
    let xp = powmod(field, &x, p, &f);
    let g = gcd(field, &f, &sub(field, &xp, &x));
    let mut roots = Vec::new();
    split_linear(field, g, &mut roots);
    roots.sort_unstable();
    roots.dedup();
    roots
}

fn split_linear(field: &PrimeField, g: Vec<u64>, out: &mut Vec<u64>) {
    match degree(field, &g) {
        None | Some(0) => {}
        Some(1) => out.push(field.neg(&field.div(&g[0], &g[1]).unwrap())),
        Some(d) => {
            let half = (field.modulus() - 1) / 2;
            for shift in 0..field.modulus() {
                let h = powmod(field, &[shift, 1], half, &g);
                let h = gcd(field, &g, &sub(field, &h, &[1]));
                let dh = degree(field, &h).unwrap_or(0);
                if dh > 0 && dh < d {
                    let (rest, _) = divrem(field, &g, &h);
                    split_linear(field, h, out);
                    split_linear(field, rest, out);
                    return;
                }
            }
            unreachable!("a squarefree product of linear factors always splits");
        }
    }
}

/// Distinct rational roots by the rational root test on the cleared integer polynomial.
pub fn rational_roots(f: &[BigRational]) -> Result<Vec<BigRational>> {
    let mut f = f.to_vec();
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
    if f.len() <= 1 {
        return Ok(Vec::new());
    }
    let mut roots = Vec::new();
    let lead_zeros = f.iter().take_while(|c| c.is_zero()).count();
    if lead_zeros > 0 {
        roots.push(BigRational::zero());
        f.drain(..lead_zeros);
    }
    if f.len() <= 1 {
        return Ok(roots);
    }
    let lcm = f.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f.iter().map(|c| (c * &lcm).to_integer()).collect();
    let a0 = abs_u64(&ints[0]).filter(|v| *v <= RATIONAL_DIVISOR_LIMIT);
    let an = abs_u64(ints.last().unwrap()).filter(|v| *v <= RATIONAL_DIVISOR_LIMIT);
    let (Some(a0), Some(an)) = (a0, an) else {
        return Err(Error::SplitUndecided(
            "minimal polynomial coefficients too large for the rational root search".into(),
        ));
    };
    let eval_int = |num: &BigInt, den: &BigInt| -> bool {
        // sum c_i num^i den^(n-i) == 0
        let n = ints.len() - 1;
        let mut acc = BigInt::zero();
        let mut num_pow = BigInt::one();
        let mut den_pows = vec![BigInt::one(); n + 1];
        for i in 1..=n {
            den_pows[i] = &den_pows[i - 1] * den;
        }
        for (i, c) in ints.iter().enumerate() {
            acc += c * &num_pow * &den_pows[n - i];
            num_pow *= num;
        }
        acc.is_zero()
    };
    for q in divisors(an) {
        for p in divisors(a0) {
            if p.gcd(&q) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let num = BigInt::from(p) * sign;
                let den = BigInt::from(q);
                if eval_int(&num, &den) {
                    roots.push(BigRational::new(num, den));
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
