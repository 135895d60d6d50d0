//! Deterministic generators for named algebra families and seeded random algebras.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{group_algebra_from_cayley, lower_triangular, matrix_algebra, Algebra};
use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::field::{Field, FieldSpec};
use crate::quiver::{build_path_algebra, Arrow, Path, QuiverPresentation};

pub const MAX_N: usize = 16;
pub const MAX_RANDOM_DIM: usize = 24;
pub const MAX_ATTEMPTS: usize = 100;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomQuiverParams {
    pub seed: u64,
    pub max_vertices: usize,
    pub max_arrows: usize,
    /// All paths of some length `N <= max_len` are relations.
    pub max_len: usize,
    pub rad_square_zero: bool,
}

impl RandomQuiverParams {
    pub fn new(seed: u64) -> Self {
        RandomQuiverParams {
            seed,
            max_vertices: 3,
            max_arrows: 4,
            max_len: 5,
            rad_square_zero: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomLocalParams {
    pub seed: u64,
    pub generators: usize,
    /// Products of some `N <= trunc` generators vanish.
    pub trunc: usize,
    pub max_dim: usize,
}

impl RandomLocalParams {
    pub fn new(seed: u64) -> Self {
        RandomLocalParams {
            seed,
            generators: 2,
            trunc: 3,
            max_dim: 12,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// `F[X]/(X^n)`.
    Truncated {
        n: usize,
    },
    /// Lower triangular `n x n` matrices.
    Triangular {
        n: usize,
    },
    /// Two vertices joined by `n` parallel arrows.
    Kronecker {
        n: usize,
    },
    /// `F<X, Y>/(X^2, Y^2, XY - qYX)`; `q` is a scalar in the field's notation.
    AQ {
        q: String,
    },
    CyclicGroup {
        n: usize,
    },
    S3,
    Matrix {
        n: usize,
    },
    RandomQuiver(RandomQuiverParams),
    RandomLocal(RandomLocalParams),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Truncated { n } => write!(f, "truncated({n})"),
            Family::Triangular { n } => write!(f, "triangular({n})"),
            Family::Kronecker { n } => write!(f, "kronecker({n})"),
            Family::AQ { q } => write!(f, "a_q(q={q})"),
            Family::CyclicGroup { n } => write!(f, "cyclic_group({n})"),
            Family::S3 => write!(f, "s3"),
            Family::Matrix { n } => write!(f, "matrix({n})"),
            Family::RandomQuiver(p) => write!(
                f,
                "random_quiver(seed={}, vertices<={}, arrows<={}, len<={}{})",
                p.seed,
                p.max_vertices,
                p.max_arrows,
                p.max_len,
                if p.rad_square_zero {
                    ", rad_square_zero"
                } else {
                    ""
                }
            ),
            Family::RandomLocal(p) => write!(
                f,
                "random_local(seed={}, generators={}, trunc={}, dim<={})",
                p.seed, p.generators, p.trunc, p.max_dim
            ),
        }
    }
}

pub const FAMILY_NAMES: [&str; 9] = [
    "truncated",
    "triangular",
    "kronecker",
    "a_q",
    "cyclic_group",
    "s3",
    "matrix",
    "random_quiver",
    "random_local",
];

impl Family {
    /// Parses a family name with an optional positional argument (`n`, or `q` for `a_q`)
    /// and `key=value` parameters.
    pub fn parse(
        name: &str,
        positional: Option<&str>,
        params: &BTreeMap<String, String>,
        seed: u64,
    ) -> Result<Family> {
        let get = |key: &str| params.get(key).map(String::as_str).or(positional);
        let usize_param = |key: &str, default: Option<usize>| -> Result<usize> {
            match params
                .get(key)
                .map(String::as_str)
                .or(if key == "n" { positional } else { None })
            {
                Some(s) => s.trim().parse().map_err(|_| {
                    Error::BadParameter(format!("{key} must be a non-negative integer, got {s:?}"))
                }),
                None => default
                    .ok_or_else(|| Error::BadParameter(format!("{name} needs parameter {key}"))),
            }
        };
        let flag = |key: &str| params.get(key).is_some_and(|v| v == "true" || v == "1");
        let seed = match params.get("seed") {
            Some(s) => s
                .parse()
                .map_err(|_| Error::BadParameter(format!("seed must be an integer, got {s:?}")))?,
            None => seed,
        };
        let family = match name {
            "truncated" => Family::Truncated {
                n: usize_param("n", None)?,
            },
            "triangular" => Family::Triangular {
                n: usize_param("n", None)?,
            },
            "kronecker" => Family::Kronecker {
                n: usize_param("n", None)?,
            },
            "a_q" => Family::AQ {
                q: get("q")
                    .ok_or_else(|| Error::BadParameter("a_q needs parameter q".into()))?
                    .to_string(),
            },
            "cyclic_group" => Family::CyclicGroup {
                n: usize_param("n", None)?,
            },
            "s3" => Family::S3,
            "matrix" => Family::Matrix {
                n: usize_param("n", None)?,
            },
            "random_quiver" => {
                let d = RandomQuiverParams::new(seed);
                Family::RandomQuiver(RandomQuiverParams {
                    seed,
                    max_vertices: usize_param("vertices", Some(d.max_vertices))?,
                    max_arrows: usize_param("arrows", Some(d.max_arrows))?,
                    max_len: usize_param("len", Some(d.max_len))?,
                    rad_square_zero: flag("rad_square_zero"),
                })
            }
            "random_local" => {
                let d = RandomLocalParams::new(seed);
                Family::RandomLocal(RandomLocalParams {
                    seed,
                    generators: usize_param("generators", Some(d.generators))?,
                    trunc: usize_param("trunc", Some(d.trunc))?,
                    max_dim: usize_param("dim", Some(d.max_dim))?,
                })
            }
            other => {
                return Err(Error::Unknown {
                    kind: "family",
                    name: other.to_string(),
                })
            }
        };
        Ok(family)
    }
}

/// A family together with its ground field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub family: Family,
    pub field: FieldSpec,
}

fn check_n(n: usize, min: usize) -> Result<()> {
    if n < min || n > MAX_N {
        return Err(Error::BadParameter(format!(
            "n must lie in {min}..={MAX_N}, got {n}"
        )));
    }
    Ok(())
}

fn one_vertex<F: Field>(field: &F, loops: &[&str]) -> QuiverPresentation<F> {
    let arrows = loops
        .iter()
        .map(|name| Arrow {
            name: name.to_string(),
            source: 0,
            target: 0,
        })
        .collect();
    QuiverPresentation::new(field, vec!["v".into()], arrows)
}

fn arrow_path(q: &QuiverPresentation<impl Field>, a: usize) -> Path {
    Path {
        source: q.arrows[a].source,
        target: q.arrows[a].target,
        arrows: vec![a],
    }
}

fn word<F: Field>(q: &QuiverPresentation<F>, arrows: &[usize]) -> Path {
    arrows
        .iter()
        .skip(1)
        .fold(arrow_path(q, arrows[0]), |p, &a| {
            p.then(&arrow_path(q, a)).expect("composable")
        })
}

/// All paths of length `len` (at least 1).
fn paths_of_length<F: Field>(q: &QuiverPresentation<F>, len: usize) -> Vec<Path> {
    let mut paths: Vec<Path> = (0..q.arrows.len()).map(|a| arrow_path(q, a)).collect();
    for _ in 1..len {
        paths = paths
            .iter()
            .flat_map(|p| (0..q.arrows.len()).filter_map(move |a| p.then(&arrow_path(q, a))))
            .collect();
    }
    paths
}

fn truncated<F: Field>(field: &F, n: usize) -> Result<Algebra<F>> {
    check_n(n, 1)?;
    if n == 1 {
        return Ok(matrix_algebra(field, 1));
    }
    let mut q = one_vertex(field, &["x"]);
    q.add_relation(vec![(field.one(), word(&q, &vec![0; n]))])?;
    Ok(build_path_algebra(&q)?.algebra)
}

fn kronecker<F: Field>(field: &F, n: usize) -> Result<Algebra<F>> {
    check_n(n, 1)?;
    let arrows = (0..n)
        .map(|i| Arrow {
            name: format!("a{i}"),
            source: 0,
            target: 1,
        })
        .collect();
    let q = QuiverPresentation::new(field, vec!["u".into(), "v".into()], arrows);
    Ok(build_path_algebra(&q)?.algebra)
}

fn a_q<F: Field>(field: &F, q_text: &str) -> Result<Algebra<F>> {
    let q = field.parse_scalar(q_text)?;
    if field.is_zero(&q) || q == field.one() {
        return Err(Error::BadParameter(format!(
            "q must avoid 0 and 1, got {q_text}"
        )));
    }
    let mut p = one_vertex(field, &["x", "y"]);
    p.add_relation(vec![(field.one(), word(&p, &[0, 0]))])?;
    p.add_relation(vec![(field.one(), word(&p, &[1, 1]))])?;
    p.add_relation(vec![
        (field.one(), word(&p, &[0, 1])),
        (field.neg(&q), word(&p, &[1, 0])),
    ])?;
    Ok(build_path_algebra(&p)?.algebra)
}

fn cyclic_group<F: Field>(field: &F, n: usize) -> Result<Algebra<F>> {
    check_n(n, 1)?;
    let table: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).map(|j| (i + j) % n).collect())
        .collect();
    group_algebra_from_cayley(field, &table)
}

/// Cayley table of `S_3` on the permutations of `{0, 1, 2}`; element 0 is the identity.
pub fn s3_cayley_table() -> Vec<Vec<usize>> {
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [1, 0, 2],
        [2, 1, 0],
        [0, 2, 1],
        [1, 2, 0],
        [2, 0, 1],
    ];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("permutation");
    (0..6)
        .map(|i| {
            (0..6)
                .map(|j| {
                    let (a, b) = (perms[i], perms[j]);
                    index([b[a[0]], b[a[1]], b[a[2]]])
                })
                .collect()
        })
        .collect()
}

fn random_nonzero<F: Field>(field: &F, rng: &mut ChaCha8Rng) -> F::Elem {
    loop {
        let c = field.random(rng);
        if !field.is_zero(&c) {
            return c;
        }
    }
}

/// Adds up to `max` random homogeneous relations with lengths in `2..top`.
fn random_relations<F: Field>(
    q: &mut QuiverPresentation<F>,
    rng: &mut ChaCha8Rng,
    top: usize,
    max: usize,
) -> Result<()> {
    if top <= 2 || q.arrows.is_empty() {
        return Ok(());
    }
    let f = q.field.clone();
    for _ in 0..rng.gen_range(0..=max) {
        let len = rng.gen_range(2..top);
        let paths = paths_of_length(q, len);
        if paths.is_empty() {
            continue;
        }
        let first = paths[rng.gen_range(0..paths.len())].clone();
        let parallel: Vec<&Path> = paths
            .iter()
            .filter(|p| p.source == first.source && p.target == first.target && **p != first)
            .collect();
        let mut terms = vec![(f.one(), first)];
        for _ in 0..rng.gen_range(0..=parallel.len().min(2)) {
            let p = parallel[rng.gen_range(0..parallel.len())].clone();
            if terms.iter().all(|(_, t)| *t != p) {
                terms.push((random_nonzero(&f, rng), p));
            }
        }
        q.add_relation(terms)?;
    }
    Ok(())
}

fn random_quiver<F: Field>(field: &F, p: &RandomQuiverParams) -> Result<Algebra<F>> {
    if !(1..=3).contains(&p.max_vertices)
        || !(1..=4).contains(&p.max_arrows)
        || !(2..=5).contains(&p.max_len)
    {
        return Err(Error::BadParameter(
            "random_quiver needs vertices in 1..=3, arrows in 1..=4, len in 2..=5".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    for _ in 0..MAX_ATTEMPTS {
        let nv = rng.gen_range(1..=p.max_vertices);
        let na = rng.gen_range(1..=p.max_arrows);
        // sources never exceed targets, so the only oriented cycles are loops
        let arrows = (0..na)
            .map(|i| {
                let s = rng.gen_range(0..nv);
                let t = rng.gen_range(s..nv);
                Arrow {
                    name: format!("a{i}"),
                    source: s,
                    target: t,
                }
            })
            .collect();
        let vertices = (0..nv).map(|i| format!("v{i}")).collect();
        let mut q = QuiverPresentation::new(field, vertices, arrows);
        let top = if p.rad_square_zero {
            2
        } else {
            rng.gen_range(2..=p.max_len)
        };
        random_relations(&mut q, &mut rng, top, 3)?;
        let long = paths_of_length(&q, top);
        if long.len() > 4 * MAX_RANDOM_DIM {
            continue;
        }
        for path in long {
            q.add_relation(vec![(field.one(), path)])?;
        }
        match build_path_algebra(&q) {
            Ok(pa) if pa.algebra.dim() <= MAX_RANDOM_DIM => return Ok(pa.algebra),
            Ok(_) | Err(Error::TooLarge(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::GeneratorFailed(format!("{} attempts", MAX_ATTEMPTS)))
}

/// A local algebra: truncated free algebra on a few generators modulo random
/// homogeneous relations, rewritten in a random basis so no structure is visible.
fn random_local<F: Field>(field: &F, p: &RandomLocalParams) -> Result<Algebra<F>> {
    if !(1..=3).contains(&p.generators)
        || !(2..=4).contains(&p.trunc)
        || !(1..=MAX_RANDOM_DIM).contains(&p.max_dim)
    {
        return Err(Error::BadParameter(format!(
            "random_local needs generators in 1..=3, trunc in 2..=4, dim in 1..={MAX_RANDOM_DIM}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let names: Vec<String> = (0..p.generators).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    for _ in 0..MAX_ATTEMPTS {
        let mut q = one_vertex(field, &refs);
        let top = rng.gen_range(2..=p.trunc);
        random_relations(&mut q, &mut rng, top, 2 * p.generators * p.generators)?;
        for path in paths_of_length(&q, top) {
            q.add_relation(vec![(field.one(), path)])?;
        }
        let a = build_path_algebra(&q)?.algebra;
        if a.dim() > p.max_dim {
            continue;
        }
        return Ok(change_basis(&a, &mut rng));
    }
    Err(Error::GeneratorFailed(format!("{} attempts", MAX_ATTEMPTS)))
}

/// Rewrites `a` in a random basis; the result has generic provenance.
pub fn change_basis<F: Field, R: Rng>(a: &Algebra<F>, rng: &mut R) -> Algebra<F> {
    let f = a.field();
    let d = a.dim();
    let p = loop {
        let rows = (0..d)
            .map(|_| (0..d).map(|_| f.random(rng)).collect())
            .collect();
        let m = Matrix::from_rows(f, d, rows).expect("square");
        if m.rank() == d {
            break m;
        }
    };
    let inv_cols: Vec<Vec<F::Elem>> = (0..d)
        .map(|k| {
            let mut e = vec![f.zero(); d];
            e[k] = f.one();
            p.solve(&e).expect("invertible")
        })
        .collect();
    let inv = Matrix::from_fn(f, d, d, |r, c| inv_cols[c][r].clone());
    let cols: Vec<Vec<F::Elem>> = (0..d).map(|i| p.column(i)).collect();
    let unit = inv.mul_vec(a.unit()).expect("square");
    Algebra::from_products(
        f,
        d,
        |i, j| inv.mul_vec(&a.mul(&cols[i], &cols[j])).expect("square"),
        unit,
    )
    .expect("well formed")
}

/// Builds the named algebra; deterministic in the family (including its seed).
pub fn generate<F: Field>(field: &F, family: &Family) -> Result<Algebra<F>> {
    match family {
        Family::Truncated { n } => truncated(field, *n),
        Family::Triangular { n } => {
            check_n(*n, 1)?;
            Ok(lower_triangular(field, *n))
        }
        Family::Kronecker { n } => kronecker(field, *n),
        Family::AQ { q } => a_q(field, q),
        Family::CyclicGroup { n } => cyclic_group(field, *n),
        Family::S3 => group_algebra_from_cayley(field, &s3_cayley_table()),
        Family::Matrix { n } => {
            check_n(*n, 1)?;
            Ok(matrix_algebra(field, *n))
        }
        Family::RandomQuiver(p) => random_quiver(field, p),
        Family::RandomLocal(p) => random_local(field, p),
    }
}

/// Named families used in tests and the acceptance run: small parameters of every
/// deterministic family.
pub fn named_corpus(field: &FieldSpec) -> Vec<Family> {
    let mut out = Vec::new();
    for n in 1..=6 {
        out.push(Family::Truncated { n });
    }
    for n in 1..=4 {
        out.push(Family::Triangular { n });
    }
    for n in 1..=5 {
        out.push(Family::Kronecker { n });
    }
    let qs: &[&str] = match field {
        FieldSpec::Rationals => &["2", "-1", "1/2"],
        FieldSpec::Prime(2) => &[],
        FieldSpec::Prime(3) => &["2"],
        FieldSpec::Prime(_) => &["2", "3"],
    };
    for q in qs {
        out.push(Family::AQ { q: q.to_string() });
    }
    for n in 1..=6 {
        out.push(Family::CyclicGroup { n });
    }
    out.push(Family::S3);
    for n in 1..=3 {
        out.push(Family::Matrix { n });
    }
    out
}
