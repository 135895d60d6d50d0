//! The test corpus: every named family over several fields plus seeded random draws.

#![allow(dead_code)]

use kinv::corpus::{named_corpus, Family, GeneratorSpec, RandomLocalParams, RandomQuiverParams};
use kinv::io::{generate_any, AnyAlgebra};
use kinv::FieldSpec;

pub const FIELDS: [FieldSpec; 4] = [
    FieldSpec::Prime(2),
    FieldSpec::Prime(3),
    FieldSpec::Prime(5),
    FieldSpec::Rationals,
];
pub const SMALL_PRIMES: [u64; 3] = [2, 3, 5];

pub struct Member {
    pub name: String,
    pub algebra: AnyAlgebra,
}

fn member(spec: GeneratorSpec) -> Member {
    let algebra =
        generate_any(&spec).unwrap_or_else(|e| panic!("{} over {}: {e}", spec.family, spec.field));
    Member {
        name: format!("{} over {}", spec.family, spec.field),
        algebra,
    }
}

pub fn named() -> Vec<Member> {
    FIELDS
        .iter()
        .flat_map(|field| {
            named_corpus(field)
                .into_iter()
                .map(move |family| GeneratorSpec {
                    family,
                    field: *field,
                })
        })
        .map(member)
        .collect()
}

pub fn random_quivers(count: u64, rad_square_zero: bool) -> Vec<Member> {
    (0..count)
        .map(|seed| {
            let mut p = RandomQuiverParams::new(seed);
            p.rad_square_zero = rad_square_zero;
            member(GeneratorSpec {
                family: Family::RandomQuiver(p),
                field: FieldSpec::Prime(SMALL_PRIMES[(seed % 3) as usize]),
            })
        })
        .collect()
}

/// Local algebras over `F_2` and `F_3` with 1 to 3 generators and truncation 2 to 4.
pub fn random_locals(count: u64, first_seed: u64) -> Vec<Member> {
    (first_seed..first_seed + count)
        .map(|seed| {
            let params = RandomLocalParams {
                seed,
                generators: 1 + (seed % 3) as usize,
                trunc: 2 + ((seed / 3) % 3) as usize,
                max_dim: 12,
            };
            member(GeneratorSpec {
                family: Family::RandomLocal(params),
                field: FieldSpec::Prime(SMALL_PRIMES[(seed % 2) as usize]),
            })
        })
        .collect()
}

/// Named families, 200 random quiver algebras and 100 random local algebras.
pub fn full() -> Vec<Member> {
    let mut all = named();
    all.extend(random_quivers(200, false));
    all.extend(random_locals(100, 0));
    all
}
