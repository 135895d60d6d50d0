//! Small-algebra classifiers and the theorem-check suite.

use serde::{Deserialize, Serialize};

use crate::algebra::{validate, Algebra};
use crate::error::{Error, Result};
use crate::exactla::{SpanBuilder, Subspace};
use crate::field::Field;
use crate::invariants::{
    acyc_cyc, codim_series, is_symmetric_search, peirce_codim_bound, rad_in_k, t_space,
    CodimSeries, Symmetric, SYMMETRIC_BUDGET,
};
use crate::morita::{basic_algebra, verify_morita_invariance};
use crate::structure::{analyze_with_radical, compute_radical, Structure};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value")]
pub enum VerdictKind {
    /// Morita equivalent to the ground field.
    MoritaF,
    /// Morita equivalent to `F[X]/(X^2)`.
    MoritaDual,
    /// Morita equivalent to `F[X]/(X^n)`, `n >= 3`.
    TruncatedPoly(usize),
    Other,
    Unavailable(String),
}

/// `{1, x, ..., x^{n-1}}` is a basis of the basic algebra and `x^n = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedWitness {
    pub n: usize,
    /// `x` in the coordinates of the basic algebra, as formatted scalars.
    pub x: Vec<String>,
    pub independent: bool,
    pub nilpotent: bool,
}

impl TruncatedWitness {
    pub fn valid(&self) -> bool {
        self.independent && self.nilpotent
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub k: usize,
    pub codim_k2: usize,
    pub ell: Option<usize>,
    pub witness: Option<TruncatedWitness>,
}

/// The verdict the numeric criteria alone dictate.
pub fn kind_from_numbers(k: usize, codim_k2: usize, ell: usize) -> VerdictKind {
    if k == 1 {
        VerdictKind::MoritaF
    } else if k == 2 && ell == 1 {
        VerdictKind::MoritaDual
    } else if ell == 1 && codim_k2 <= 2 {
        VerdictKind::TruncatedPoly(k)
    } else {
        VerdictKind::Other
    }
}

/// Classifies from `(k, codim K_2, ell)` and re-certifies positive verdicts structurally.
pub fn classify<F: Field>(a: &Algebra<F>, s: &Structure<F>, k_space: &Subspace<F>) -> Verdict {
    let k = k_space.codim();
    let codim_k2 = k_space.sum(s.radical_power(2)).expect("ambient").codim();
    let ell = match s.ell() {
        Ok(l) => l,
        Err(e) => {
            return Verdict {
                kind: VerdictKind::Unavailable(e.to_string()),
                k,
                codim_k2,
                ell: None,
                witness: None,
            }
        }
    };
    let kind = kind_from_numbers(k, codim_k2, ell);
    let witness = match kind {
        VerdictKind::Other | VerdictKind::Unavailable(_) => None,
        _ => Some(truncated_witness(a, s)),
    };
    Verdict {
        kind,
        k,
        codim_k2,
        ell: Some(ell),
        witness,
    }
}

/// Decides Morita equivalence with `F[X]/(X^n)`; same as [`classify`].
pub fn classify_truncated<F: Field>(
    a: &Algebra<F>,
    s: &Structure<F>,
    k_space: &Subspace<F>,
) -> Verdict {
    classify(a, s, k_space)
}

/// Decides Morita equivalence with `F` (`k = 1`) or the dual numbers (`k = 2`, `ell = 1`); same as [`classify`].
pub fn classify_small<F: Field>(
    a: &Algebra<F>,
    s: &Structure<F>,
    k_space: &Subspace<F>,
) -> Verdict {
    classify(a, s, k_space)
}

/// Builds the basic algebra, picks `x` in `J \ J^2` and checks that its powers give a
/// basis with `x^n = 0`.
fn truncated_witness<F: Field>(a: &Algebra<F>, s: &Structure<F>) -> TruncatedWitness {
    let failed = |n| TruncatedWitness {
        n,
        x: Vec::new(),
        independent: false,
        nilpotent: false,
    };
    let Ok(corner) = basic_algebra(a, s) else {
        return failed(0);
    };
    let b = &corner.algebra;
    let f = b.field();
    let n = b.dim();
    let jb = compute_radical(b);
    let Ok(sb) = analyze_with_radical(b, jb, 0) else {
        return failed(n);
    };
    if sb.ell().ok() != Some(1) || sb.quotient_dim != 1 {
        return failed(n);
    }
    let j2 = sb.radical_power(2);
    let x = match sb
        .radical
        .basis()
        .iter()
        .find(|v| !j2.contains(v).expect("ambient"))
    {
        Some(x) => x.clone(),
        None if n == 1 => b.zero_vec(),
        None => return failed(n),
    };
    let mut span = SpanBuilder::new(f, n);
    let mut power = b.unit().to_vec();
    let mut independent = true;
    for _ in 0..n {
        independent &= span.insert(power.clone());
        power = b.mul(&power, &x);
    }
    let nilpotent = power.iter().all(|c| f.is_zero(c));
    TruncatedWitness {
        n,
        x: x.iter().map(|c| f.format(c)).collect(),
        independent,
        nilpotent,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalDimensionCheck {
    pub consistent: bool,
    pub k: usize,
    pub dim: usize,
    pub dim_j_mod_j2: usize,
    /// The bounds are stated over algebraically closed fields; runs over `F_p` or `Q` are surrogates.
    pub surrogate: bool,
    /// `k <= 3` and `dim = 4`.
    pub tight: bool,
}

/// Dimension bounds for local algebras with small `k`.
pub fn local_dimension_check<F: Field>(
    a: &Algebra<F>,
    s: &Structure<F>,
    k: usize,
) -> Result<LocalDimensionCheck> {
    if s.is_local(a.field()) != Some(true) {
        return Err(Error::NotLocal);
    }
    let dim = a.dim();
    let dim_j_mod_j2 = s.radical_power(1).dim() - s.radical_power(2).dim();
    let consistent =
        !((k <= 3 && dim > 4) || (k == 4 && dim > 10) || (k == 5 && dim_j_mod_j2 <= 2 && dim > 12));
    Ok(LocalDimensionCheck {
        consistent,
        k,
        dim,
        dim_j_mod_j2,
        surrogate: true,
        tight: k <= 3 && dim == 4,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
}

/// One theorem check with both sides of the comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub name: String,
    pub status: CheckStatus,
    pub lhs: String,
    pub rhs: String,
    pub detail: String,
}

impl CheckLine {
    fn new(name: &str, ok: bool, lhs: impl ToString, rhs: impl ToString) -> Self {
        CheckLine {
            name: name.into(),
            status: if ok {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            detail: String::new(),
        }
    }

    fn skip(name: &str, reason: impl ToString) -> Self {
        CheckLine {
            name: name.into(),
            status: CheckStatus::Skip,
            lhs: String::new(),
            rhs: String::new(),
            detail: reason.to_string(),
        }
    }

    fn with_detail(mut self, detail: impl ToString) -> Self {
        self.detail = detail.to_string();
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub lines: Vec<CheckLine>,
}

impl TheoremReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckLine> {
        self.lines.iter().filter(|l| l.status == CheckStatus::Fail)
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn line(&self, name: &str) -> Option<&CheckLine> {
        self.lines.iter().find(|l| l.name == name)
    }
}

fn fmt_list(v: &[usize]) -> String {
    format!("{v:?}")
}

/// Runs every applicable check; split-dependent checks are skipped when unavailable.
pub fn verify_theorem_suite<F: Field>(
    a: &Algebra<F>,
    s: &Structure<F>,
    k_space: &Subspace<F>,
    seed: u64,
) -> TheoremReport {
    let f = a.field();
    let mut lines = Vec::new();
    let validation = validate(a);
    lines.push(CheckLine::new(
        "valid_algebra",
        validation.is_valid(),
        validation.associativity_failures.len() + validation.unit_failures.len(),
        0,
    ));
    let series: CodimSeries = codim_series(k_space, s);
    let k = series.k;
    let ll = s.loewy_length();
    let monotone =
        series.values.windows(2).all(|w| w[0] <= w[1]) && series.values.last() == Some(&k);
    lines.push(CheckLine::new(
        "codim_series_monotone_to_k",
        monotone,
        fmt_list(&series.values),
        k,
    ));
    let nilpotent = s.radical_power(ll).is_zero() && ll <= a.dim();
    lines.push(CheckLine::new("radical_nilpotent", nilpotent, ll, a.dim()));
    if ll >= 2 {
        let is_ideal = s.radical.basis().iter().all(|v| {
            (0..a.dim()).all(|i| {
                let b = a.basis_vec(i);
                s.radical.contains(&a.mul(&b, v)).unwrap_or(false)
                    && s.radical.contains(&a.mul(v, &b)).unwrap_or(false)
            })
        });
        lines.push(CheckLine::new(
            "radical_two_sided_ideal",
            is_ideal,
            is_ideal,
            true,
        ));
    }

    let split = s.require_split();
    let skip_reason = split
        .as_ref()
        .err()
        .map(|e| e.to_string())
        .unwrap_or_default();
    let codim = |n: usize| series.values.get(n - 1).copied().unwrap_or(k);
    if let (Ok(idems), Ok(cartan), Ok(ext1)) = (split, s.cartan(a), s.ext1_diag(a)) {
        let ell = idems.ell();
        let ext_sum: usize = ext1.iter().sum();
        let trace: usize = (0..ell).map(|i| cartan[i][i]).sum();
        lines.push(CheckLine::new(
            "codim_k1_equals_ell",
            codim(1) == ell,
            codim(1),
            ell,
        ));
        lines.push(CheckLine::new(
            "codim_k2_equals_ell_plus_ext1",
            codim(2) == ell + ext_sum,
            codim(2),
            ell + ext_sum,
        ));
        lines.push(CheckLine::new(
            "k_at_least_ell_plus_ext1",
            ell + ext_sum <= k,
            ell + ext_sum,
            k,
        ));
        lines.push(CheckLine::new(
            "k_at_most_trace_cartan",
            k <= trace,
            k,
            trace,
        ));

        let bounds: Vec<usize> = (1..=ll)
            .map(|n| peirce_codim_bound(a, s, n).expect("split"))
            .collect();
        let within = (1..=ll).all(|n| codim(n) <= bounds[n - 1]);
        lines.push(CheckLine::new(
            "codim_kn_at_most_peirce_bound",
            within,
            fmt_list(&series.values),
            fmt_list(&bounds),
        ));
        let equal: Vec<bool> = (1..=ll).map(|n| codim(n) == bounds[n - 1]).collect();
        let closed = equal.windows(2).all(|w| w[0] || !w[1]);
        lines.push(CheckLine::new(
            "peirce_bound_equality_downward_closed",
            closed,
            format!("{equal:?}"),
            "prefix",
        ));

        if idems.is_basic() {
            let mut lemma = true;
            let mut prop = true;
            let mut acyc_codims = Vec::new();
            for n in 1..=ll {
                let ac = acyc_cyc(a, idems, s, n).expect("basic");
                acyc_codims.push(ac.codim());
                lemma &= ac.codim() == bounds[n - 1];
                let contained = k_space.is_subspace_of(&ac).expect("ambient");
                prop &= contained == equal[n - 1];
            }
            lines.push(CheckLine::new(
                "peirce_bound_equals_codim_acyc_cyc",
                lemma,
                fmt_list(&bounds),
                fmt_list(&acyc_codims),
            ));
            lines.push(CheckLine::new(
                "bound_equality_iff_k_in_acyc_cyc",
                prop,
                prop,
                true,
            ));
        } else {
            lines.push(CheckLine::skip(
                "peirce_bound_equals_codim_acyc_cyc",
                "algebra is not basic",
            ));
            lines.push(CheckLine::skip(
                "bound_equality_iff_k_in_acyc_cyc",
                "algebra is not basic",
            ));
        }

        if s.radical_power(2).is_zero() {
            lines.push(CheckLine::new(
                "radical_square_zero_k_equals_trace_cartan",
                k == trace,
                k,
                trace,
            ));
        }

        if f.characteristic() > 0 {
            let t = t_space(a, k_space).expect("positive characteristic");
            let k1 = k_space.sum(s.radical_power(1)).expect("ambient");
            lines.push(CheckLine::new(
                "t_space_equals_k1",
                t == k1,
                t.codim(),
                k1.codim(),
            ));
        } else {
            lines.push(CheckLine::skip("t_space_equals_k1", "characteristic zero"));
        }

        let rad_in = rad_in_k(k_space, s);
        lines.push(CheckLine::new(
            "k_equals_ell_iff_radical_in_k",
            (k == ell) == rad_in,
            k == ell,
            rad_in,
        ));

        let symmetric = is_symmetric_search(a, k_space, seed, SYMMETRIC_BUDGET);
        let local = s.is_local(f) == Some(true);
        let commutative = a.is_commutative();
        if symmetric.is_yes() || commutative || local {
            let ok = k != ell || s.radical.is_zero();
            lines.push(
                CheckLine::new(
                    "k_equals_ell_forces_semisimple",
                    ok,
                    k == ell,
                    s.radical.is_zero(),
                )
                .with_detail(format!(
                    "symmetric={} commutative={commutative} local={local}",
                    symmetric.label()
                )),
            );
        } else {
            lines.push(CheckLine::skip(
                "k_equals_ell_forces_semisimple",
                format!(
                    "symmetric={} and neither commutative nor local",
                    symmetric.label()
                ),
            ));
        }
        if let Symmetric::Yes(l) = &symmetric {
            let vanishes = k_space.basis().iter().all(|v| {
                v.iter()
                    .zip(l)
                    .fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y)))
                    == f.zero()
            });
            lines.push(CheckLine::new(
                "symmetrizing_form_vanishes_on_k",
                vanishes,
                vanishes,
                true,
            ));
        }

        match verify_morita_invariance(a, s) {
            Ok(cert) => {
                let r = &cert.report;
                let lhs: Vec<usize> = r.levels.iter().map(|l| l.codim_a).collect();
                let rhs: Vec<usize> = r.levels.iter().map(|l| l.codim_b).collect();
                lines.push(
                    CheckLine::new(
                        "morita_invariance_codim_kn",
                        r.passed(),
                        fmt_list(&lhs),
                        fmt_list(&rhs),
                    )
                    .with_detail(format!(
                        "basic dim {}, well-defined {}, bijective {}, inverse maps {}",
                        r.dim_b,
                        r.well_defined,
                        r.bijective,
                        r.tau_sigma_identity && r.sigma_tau_identity
                    )),
                );
            }
            Err(e) => lines.push(CheckLine::new(
                "morita_invariance_codim_kn",
                false,
                e,
                "certificate",
            )),
        }

        let verdict = classify(a, s, k_space);
        let expected = kind_from_numbers(k, codim(2), ell);
        let witness_ok = verdict
            .witness
            .as_ref()
            .is_none_or(|w| w.valid() && w.n == k);
        lines.push(
            CheckLine::new(
                "classifier_witness",
                verdict.kind == expected && witness_ok,
                format!("{:?}", verdict.kind),
                witness_ok,
            )
            .with_detail(format!("(k, codim K_2, ell) = ({k}, {}, {ell})", codim(2))),
        );
    } else {
        for name in [
            "codim_k1_equals_ell",
            "codim_k2_equals_ell_plus_ext1",
            "k_at_least_ell_plus_ext1",
            "k_at_most_trace_cartan",
            "codim_kn_at_most_peirce_bound",
            "peirce_bound_equality_downward_closed",
            "t_space_equals_k1",
            "k_equals_ell_iff_radical_in_k",
            "morita_invariance_codim_kn",
            "classifier_witness",
        ] {
            lines.push(CheckLine::skip(name, &skip_reason));
        }
    }

    match local_dimension_check(a, s, k) {
        Ok(c) => lines.push(
            CheckLine::new(
                "local_dimension_bounds",
                c.consistent,
                format!("k={}, dim={}", c.k, c.dim),
                "within bounds",
            )
            .with_detail("surrogate field: the bounds assume an algebraically closed field"),
        ),
        Err(e) => lines.push(CheckLine::skip("local_dimension_bounds", e)),
    }
    TheoremReport { lines }
}
