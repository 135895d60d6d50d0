//! Basic algebras, fullness witnesses, the coset maps between `A/K(A)` and `B/K(B)`
//! for `B = eAe`, and progenerator inflation.

use crate::algebra::{corner_with_embedding, vadd, vis_zero, vscale, Algebra, Corner};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, SpanBuilder, Subspace};
use crate::field::Field;
use crate::invariants::commutator_subspace;
use crate::structure::{analyze, compute_radical, Structure};

/// `1 = sum_k u_k e v_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct FullnessWitness<F: Field> {
    pub e: Vec<F::Elem>,
    pub pairs: Vec<(Vec<F::Elem>, Vec<F::Elem>)>,
}

impl<F: Field> FullnessWitness<F> {
    pub fn holds(&self, a: &Algebra<F>) -> bool {
        let f = a.field();
        let total = self.pairs.iter().fold(a.zero_vec(), |acc, (u, v)| {
            vadd(f, &acc, &a.mul3(u, &self.e, v))
        });
        total == a.unit()
    }
}

/// Sum of one primitive idempotent per isomorphism class.
pub fn basic_idempotent<F: Field>(a: &Algebra<F>, s: &Structure<F>) -> Result<Vec<F::Elem>> {
    Ok(s.require_split()?.basic_idempotent(a))
}

pub fn basic_algebra<F: Field>(a: &Algebra<F>, s: &Structure<F>) -> Result<Corner<F>> {
    corner_with_embedding(a, &basic_idempotent(a, s)?)
}

/// Expresses `1` in the span of `b_i e b_j`; the coefficients are folded into `u`.
pub fn fullness_witness<F: Field>(a: &Algebra<F>, e: &[F::Elem]) -> Result<FullnessWitness<F>> {
    if !a.is_idempotent(e) {
        return Err(Error::NotIdempotent);
    }
    let f = a.field();
    let d = a.dim();
    let left: Vec<Vec<F::Elem>> = (0..d).map(|i| a.mul(&a.basis_vec(i), e)).collect();
    let mut columns = Vec::new();
    let mut labels = Vec::new();
    for (i, be) in left.iter().enumerate() {
        if vis_zero(f, be) {
            continue;
        }
        for j in 0..d {
            let v = a.mul(be, &a.basis_vec(j));
            if !vis_zero(f, &v) {
                columns.push(v);
                labels.push((i, j));
            }
        }
    }
    let system = Matrix::from_fn(f, d, columns.len(), |r, c| columns[c][r].clone());
    let coeffs = system.solve(a.unit()).ok_or(Error::NotFull)?;
    let pairs = coeffs
        .iter()
        .zip(&labels)
        .filter(|(c, _)| !f.is_zero(c))
        .map(|(c, &(i, j))| (vscale(f, c, &a.basis_vec(i)), a.basis_vec(j)))
        .collect();
    Ok(FullnessWitness {
        e: e.to_vec(),
        pairs,
    })
}

/// The map `a + K(A) -> sum_k e v_k a u_k e + K(B)` on chosen coset representatives.
#[derive(Clone, Debug, PartialEq)]
pub struct TauMap<F: Field> {
    /// `codim K(B) x codim K(A)` matrix in the representative bases.
    pub matrix: Matrix<F>,
    /// Basis indices of `A` whose classes form the domain basis.
    pub domain_reps: Vec<usize>,
    /// Basis indices of `B` whose classes form the codomain basis.
    pub codomain_reps: Vec<usize>,
}

/// `τ(a)` in the coordinates of the corner.
pub fn tau_apply<F: Field>(
    a: &Algebra<F>,
    b: &Corner<F>,
    w: &FullnessWitness<F>,
    x: &[F::Elem],
) -> Vec<F::Elem> {
    let f = a.field();
    let total = w.pairs.iter().fold(a.zero_vec(), |acc, (u, v)| {
        let ev = a.mul(&w.e, v);
        let ue = a.mul(u, &w.e);
        vadd(f, &acc, &a.mul3(&ev, x, &ue))
    });
    b.from_parent(&total).expect("e v a u e lies in eAe")
}

fn project<F: Field>(k: &Subspace<F>, v: &[F::Elem]) -> Vec<F::Elem> {
    let r = k.reduce(v);
    k.non_pivots().iter().map(|&c| r[c].clone()).collect()
}

pub fn tau_map<F: Field>(
    a: &Algebra<F>,
    b: &Corner<F>,
    w: &FullnessWitness<F>,
    ka: &Subspace<F>,
    kb: &Subspace<F>,
) -> TauMap<F> {
    let f = a.field();
    let domain_reps = ka.non_pivots();
    let codomain_reps = kb.non_pivots();
    let cols: Vec<Vec<F::Elem>> = domain_reps
        .iter()
        .map(|&i| project(kb, &tau_apply(a, b, w, &a.basis_vec(i))))
        .collect();
    let matrix = Matrix::from_fn(f, codomain_reps.len(), domain_reps.len(), |r, c| {
        cols[c][r].clone()
    });
    TauMap {
        matrix,
        domain_reps,
        codomain_reps,
    }
}

/// Per-level comparison of `A/K_n(A)` and `B/K_n(B)`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct MoritaLevel {
    pub n: usize,
    pub codim_a: usize,
    pub codim_b: usize,
    /// `τ(K_n(A)) + K(B) = K_n(B)`.
    pub image_matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct MoritaReport {
    pub dim_a: usize,
    pub dim_b: usize,
    pub well_defined: bool,
    pub bijective: bool,
    pub tau_sigma_identity: bool,
    pub sigma_tau_identity: bool,
    /// The radical of `B` computed from scratch equals `eJe`.
    pub radical_agrees: bool,
    pub levels: Vec<MoritaLevel>,
}

impl MoritaReport {
    pub fn passed(&self) -> bool {
        self.well_defined
            && self.bijective
            && self.tau_sigma_identity
            && self.sigma_tau_identity
            && self.radical_agrees
            && self
                .levels
                .iter()
                .all(|l| l.image_matches && l.codim_a == l.codim_b)
    }
}

/// The basic algebra with everything needed to check the invariance of `codim K_n`.
#[derive(Clone, Debug)]
pub struct MoritaCertificate<F: Field> {
    pub basic: Corner<F>,
    pub witness: FullnessWitness<F>,
    pub tau: TauMap<F>,
    pub report: MoritaReport,
}

pub fn verify_morita_invariance<F: Field>(
    a: &Algebra<F>,
    s: &Structure<F>,
) -> Result<MoritaCertificate<F>> {
    let f = a.field();
    let e = basic_idempotent(a, s)?;
    let basic = corner_with_embedding(a, &e)?;
    let witness = fullness_witness(a, &e)?;
    let bal = &basic.algebra;
    let ka = commutator_subspace(a);
    let kb = commutator_subspace(bal);
    let tau = tau_map(a, &basic, &witness, &ka, &kb);

    let well_defined = ka.basis().iter().all(|v| {
        kb.contains(&tau_apply(a, &basic, &witness, v))
            .expect("corner coordinates")
    });
    let bijective =
        tau.matrix.rows() == tau.matrix.cols() && tau.matrix.rank() == tau.matrix.rows();

    // σ(b + K(B)) = b + K(A)
    let sigma_cols: Vec<Vec<F::Elem>> = tau
        .codomain_reps
        .iter()
        .map(|&i| project(&ka, &basic.to_parent(&bal.basis_vec(i))))
        .collect();
    let sigma = Matrix::from_fn(f, tau.domain_reps.len(), tau.codomain_reps.len(), |r, c| {
        sigma_cols[c][r].clone()
    });
    let identity = |m: Option<Matrix<F>>| {
        m.is_some_and(|m| m.rows() == m.cols() && m == Matrix::identity(f, m.rows()))
    };
    let tau_sigma_identity = identity(tau.matrix.mul(&sigma).ok());
    let sigma_tau_identity = identity(sigma.mul(&tau.matrix).ok());

    let jb = compute_radical(bal);
    let eje = a.sandwich(&e, &s.radical, &e);
    let radical_agrees =
        Subspace::span(f, a.dim(), jb.basis().iter().map(|v| basic.to_parent(v))) == eje;
    let sb = crate::structure::analyze_with_radical(bal, jb, 0)?;

    let levels = (1..=s.loewy_length().max(sb.loewy_length()))
        .map(|n| {
            let kna = ka.sum(s.radical_power(n)).expect("ambient");
            let knb = kb.sum(sb.radical_power(n)).expect("ambient");
            let mut image = SpanBuilder::from_subspace(kb.clone());
            for v in kna.basis() {
                image.insert(tau_apply(a, &basic, &witness, v));
            }
            MoritaLevel {
                n,
                codim_a: kna.codim(),
                codim_b: knb.codim(),
                image_matches: image.finish() == knb,
            }
        })
        .collect();
    let report = MoritaReport {
        dim_a: a.dim(),
        dim_b: bal.dim(),
        well_defined,
        bijective,
        tau_sigma_identity,
        sigma_tau_identity,
        radical_agrees,
        levels,
    };
    Ok(MoritaCertificate {
        basic,
        witness,
        tau,
        report,
    })
}

/// `End(⊕_i (e_i A)^{m_i})` over the basic representatives `e_i`, as block matrices with
/// entries in the Peirce components `e_i A e_j`.
pub fn inflate<F: Field>(
    a: &Algebra<F>,
    s: &Structure<F>,
    multiplicities: &[usize],
) -> Result<Algebra<F>> {
    let reps = s.require_split()?.basic_representatives();
    if multiplicities.len() != reps.len() {
        return Err(Error::BadParameter(format!(
            "expected {} multiplicities, got {}",
            reps.len(),
            multiplicities.len()
        )));
    }
    if multiplicities.contains(&0) {
        return Err(Error::BadParameter(
            "multiplicities must be positive".into(),
        ));
    }
    let f = a.field();
    let full = a.full_space();
    let peirce: Vec<Vec<Subspace<F>>> = reps
        .iter()
        .map(|ei| reps.iter().map(|ej| a.sandwich(ei, &full, ej)).collect())
        .collect();
    // block slots (class, copy)
    let slots: Vec<usize> = multiplicities
        .iter()
        .enumerate()
        .flat_map(|(i, &m)| std::iter::repeat(i).take(m))
        .collect();
    let ns = slots.len();
    let mut offset = vec![vec![0usize; ns]; ns];
    let mut dim = 0;
    for r in 0..ns {
        for c in 0..ns {
            offset[r][c] = dim;
            dim += peirce[slots[r]][slots[c]].dim();
        }
    }
    // basis element index -> (row slot, col slot, index in block)
    let mut label = Vec::with_capacity(dim);
    for r in 0..ns {
        for c in 0..ns {
            for t in 0..peirce[slots[r]][slots[c]].dim() {
                label.push((r, c, t));
            }
        }
    }
    let mut entries = Vec::new();
    for (x, &(r1, c1, t1)) in label.iter().enumerate() {
        for (y, &(r2, c2, t2)) in label.iter().enumerate() {
            if c1 != r2 {
                continue;
            }
            let prod = a.mul(
                &peirce[slots[r1]][slots[c1]].basis()[t1],
                &peirce[slots[r2]][slots[c2]].basis()[t2],
            );
            let target = &peirce[slots[r1]][slots[c2]];
            let coords = target
                .coords(&prod)
                .expect("e_i A e_j e_j A e_k lies in e_i A e_k");
            for (t, c) in coords.into_iter().enumerate() {
                if !f.is_zero(&c) {
                    entries.push((x, y, offset[r1][c2] + t, c));
                }
            }
        }
    }
    let mut unit = vec![f.zero(); dim];
    for (r, &i) in slots.iter().enumerate() {
        let coords = peirce[i][i].coords(reps[i]).expect("e_i lies in e_i A e_i");
        for (t, c) in coords.into_iter().enumerate() {
            unit[offset[r][r] + t] = c;
        }
    }
    Algebra::from_entries(f, dim, entries, unit)
}

/// Convenience wrapper computing the structure first.
pub fn inflate_algebra<F: Field>(
    a: &Algebra<F>,
    multiplicities: &[usize],
    seed: u64,
) -> Result<Algebra<F>> {
    inflate(a, &analyze(a, seed)?, multiplicities)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{direct_sum, matrix_algebra, validate};
    use crate::field::{PrimeField, Rationals};
    use crate::invariants::{codim_series, k_of};
    use crate::quiver::{build_path_algebra, parse_quiver};
    use std::collections::BTreeMap;

    fn quiver<F: Field>(field: &F, text: &str, params: &BTreeMap<String, F::Elem>) -> Algebra<F> {
        build_path_algebra(&parse_quiver(field, text, params).unwrap())
            .unwrap()
            .algebra
    }

    fn truncated<F: Field>(field: &F, n: usize) -> Algebra<F> {
        quiver(
            field,
            &format!("vertices: v\narrows: x: v->v\nrelations: x^{n}"),
            &BTreeMap::new(),
        )
    }

    #[test]
    fn unit_is_full_with_single_pair() {
        let q = Rationals;
        let a = truncated(&q, 3);
        let w = fullness_witness(&a, a.unit()).unwrap();
        assert!(w.holds(&a));
        assert_eq!(w.pairs, vec![(a.unit().to_vec(), a.unit().to_vec())]);
    }

    #[test]
    fn matrix_unit_witness() {
        let q = Rationals;
        let m = matrix_algebra(&q, 2);
        let e11 = m.basis_vec(0);
        let w = fullness_witness(&m, &e11).unwrap();
        assert!(w.holds(&m));
        let expected = vec![
            (m.basis_vec(0), m.basis_vec(0)),
            (m.basis_vec(2), m.basis_vec(1)),
        ];
        assert_eq!(w.pairs, expected);
    }

    #[test]
    fn non_full_idempotent_rejected() {
        let q = Rationals;
        let one = Algebra::from_entries(&q, 1, [(0, 0, 0, q.one())], vec![q.one()]).unwrap();
        let ff = direct_sum(&one, &one).unwrap();
        assert_eq!(fullness_witness(&ff, &ff.basis_vec(0)), Err(Error::NotFull));
    }

    #[test]
    fn matrix_algebra_tau_is_trace() {
        let f5 = PrimeField::new(5).unwrap();
        let m = matrix_algebra(&f5, 2);
        let s = analyze(&m, 0).unwrap();
        let cert = verify_morita_invariance(&m, &s).unwrap();
        assert_eq!(cert.basic.algebra.dim(), 1);
        assert!(cert.report.passed());
        // every basis element maps to its trace times the unit of B
        for i in 0..4 {
            let t = tau_apply(&m, &cert.basic, &cert.witness, &m.basis_vec(i));
            let trace = if i == 0 || i == 3 { 1 } else { 0 };
            assert_eq!(t, vec![trace]);
        }
    }

    #[test]
    fn basic_algebra_identity_on_basic_input() {
        let q = Rationals;
        let a = truncated(&q, 3);
        let s = analyze(&a, 0).unwrap();
        let cert = verify_morita_invariance(&a, &s).unwrap();
        assert_eq!(cert.basic.algebra.dim(), 3);
        assert_eq!(cert.tau.matrix, Matrix::identity(&q, 3));
        assert!(cert.report.passed());
    }

    #[test]
    fn inflate_examples() {
        let q = Rationals;
        let one = Algebra::from_entries(&q, 1, [(0, 0, 0, q.one())], vec![q.one()]).unwrap();
        let m2 = inflate_algebra(&one, &[2], 0).unwrap();
        assert_eq!(m2.dim(), 4);
        assert_eq!(k_of(&m2), 1);

        let t3 = truncated(&q, 3);
        let big = inflate_algebra(&t3, &[2], 0).unwrap();
        assert!(validate(&big).is_valid());
        assert_eq!(big.dim(), 12);
        assert_eq!(k_of(&big), 3);
        assert_eq!(crate::oracle::k_oracle(&big), 3);
        let s = analyze(&big, 0).unwrap();
        let cert = verify_morita_invariance(&big, &s).unwrap();
        assert!(cert.report.passed());
        assert_eq!(cert.basic.algebra.dim(), 3);

        let kron = quiver(&q, "vertices: u v\narrows: a: u->v", &BTreeMap::new());
        let inf = inflate_algebra(&kron, &[1, 2], 0).unwrap();
        assert_eq!(inf.dim(), 7);
        let s = analyze(&inf, 0).unwrap();
        assert_eq!(
            codim_series(&commutator_subspace(&inf), &s).values,
            vec![2, 2]
        );
    }

    #[test]
    fn inflated_a_q_preserves_series() {
        let f5 = PrimeField::new(5).unwrap();
        let mut params = BTreeMap::new();
        params.insert("q".to_string(), 2u64);
        let aq = quiver(
            &f5,
            "vertices: v\narrows: x: v->v, y: v->v\nrelations: x^2, y^2, x*y - q y*x",
            &params,
        );
        let inf = inflate_algebra(&aq, &[3], 0).unwrap();
        assert_eq!(inf.dim(), 36);
        let s = analyze(&inf, 0).unwrap();
        let cert = verify_morita_invariance(&inf, &s).unwrap();
        assert!(cert.report.passed());
        let codims: Vec<usize> = cert.report.levels.iter().map(|l| l.codim_a).collect();
        assert_eq!(codims, vec![1, 3, 3]);
    }
}
