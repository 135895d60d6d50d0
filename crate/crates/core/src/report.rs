//! The full analysis report, in JSON and text form.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::algebra::{k_star, Algebra};
use crate::classify::{classify, verify_theorem_suite, CheckLine, CheckStatus, Verdict};
use crate::error::Result;
use crate::field::Field;
use crate::invariants::{
    codim_series, commutator_subspace, is_symmetric_search, peirce_codim_bound, rad_in_k,
    SYMMETRIC_BUDGET,
};
use crate::io::{write_algebra, InputFormat};
use crate::structure::analyze;

/// Identifies the analysed algebra by format and a hash of its structure constants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDescriptor {
    pub format: InputFormat,
    /// FNV-1a hash of the algebra in structure-constant format.
    pub fingerprint: String,
}

impl InputDescriptor {
    pub fn new<F: Field>(format: InputFormat, a: &Algebra<F>) -> Self {
        let hash = write_algebra(a)
            .bytes()
            .fold(0xcbf29ce484222325u64, |h, b| {
                (h ^ b as u64).wrapping_mul(0x100000001b3)
            });
        InputDescriptor {
            format,
            fingerprint: format!("{hash:016x}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub input: InputDescriptor,
    pub field: String,
    pub dim: usize,
    pub split: bool,
    /// Why the algebra is not known to be split, if it is not.
    pub split_detail: Option<String>,
    pub radical_dim: usize,
    pub loewy_length: usize,
    pub k: usize,
    pub k_star: usize,
    pub ell: Option<usize>,
    /// `codim K_n` for `n = 1..=LL`.
    pub codim_series: Vec<usize>,
    pub cartan: Option<Vec<Vec<usize>>>,
    pub ext1_diag: Option<Vec<usize>>,
    pub peirce_bounds: Option<Vec<usize>>,
    pub rad_in_k: bool,
    pub symmetric: String,
    pub verdict: Verdict,
    pub checks: Vec<CheckLine>,
    pub seed: u64,
}

impl Report {
    pub fn failed_checks(&self) -> impl Iterator<Item = &CheckLine> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    pub fn to_text(&self) -> String {
        let opt = |v: &Option<usize>| v.map_or("unavailable".to_string(), |x| x.to_string());
        let mut s = String::new();
        let _ = writeln!(
            s,
            "input        {:?} {}",
            self.input.format, self.input.fingerprint
        );
        let _ = writeln!(s, "field        {}", self.field);
        let _ = writeln!(s, "dim          {}", self.dim);
        let _ = writeln!(
            s,
            "split        {}{}",
            self.split,
            self.split_detail
                .as_ref()
                .map(|d| format!(" ({d})"))
                .unwrap_or_default()
        );
        let _ = writeln!(
            s,
            "radical      dim {}, Loewy length {}",
            self.radical_dim, self.loewy_length
        );
        let _ = writeln!(s, "k            {}", self.k);
        let _ = writeln!(s, "k*           {}", self.k_star);
        let _ = writeln!(s, "ell          {}", opt(&self.ell));
        let _ = writeln!(s, "codim K_n    {:?}", self.codim_series);
        if let Some(c) = &self.cartan {
            let _ = writeln!(s, "cartan       {c:?}");
        }
        if let Some(e) = &self.ext1_diag {
            let _ = writeln!(s, "ext1 diag    {e:?}");
        }
        if let Some(b) = &self.peirce_bounds {
            let _ = writeln!(s, "peirce bound {b:?}");
        }
        let _ = writeln!(s, "rad in K     {}", self.rad_in_k);
        let _ = writeln!(s, "symmetric    {}", self.symmetric);
        let _ = writeln!(s, "verdict      {}", verdict_text(&self.verdict));
        for c in &self.checks {
            let _ = writeln!(s, "{}", check_text(c));
        }
        let _ = writeln!(s, "seed         {}", self.seed);
        s
    }
}

pub fn verdict_text(v: &Verdict) -> String {
    use crate::classify::VerdictKind::*;
    let kind = match &v.kind {
        MoritaF => "Morita equivalent to F".to_string(),
        MoritaDual => "Morita equivalent to F[X]/(X^2)".to_string(),
        TruncatedPoly(n) => format!("Morita equivalent to F[X]/(X^{n})"),
        Other => "other".to_string(),
        Unavailable(r) => format!("unavailable: {r}"),
    };
    let ell = v.ell.map_or("-".to_string(), |l| l.to_string());
    format!(
        "{kind}  (k, codim K_2, ell) = ({}, {}, {ell})",
        v.k, v.codim_k2
    )
}

pub fn check_text(c: &CheckLine) -> String {
    let status = match c.status {
        CheckStatus::Pass => "PASS",
        CheckStatus::Fail => "FAIL",
        CheckStatus::Skip => "SKIP",
    };
    let mut s = format!("{status} {}", c.name);
    if c.status != CheckStatus::Skip {
        let _ = write!(s, ": {} vs {}", c.lhs, c.rhs);
    }
    if !c.detail.is_empty() {
        let _ = write!(s, " [{}]", c.detail);
    }
    s
}

pub fn build_report<F: Field>(a: &Algebra<F>, format: InputFormat, seed: u64) -> Result<Report> {
    let s = analyze(a, seed)?;
    let k_space = commutator_subspace(a);
    let series = codim_series(&k_space, &s);
    let split_detail = match &s.split {
        crate::structure::Splitting::Split => None,
        crate::structure::Splitting::NotSplit(m) | crate::structure::Splitting::Undecided(m) => {
            Some(m.clone())
        }
    };
    let peirce_bounds = s
        .require_split()
        .ok()
        .map(|_| {
            (1..=s.loewy_length())
                .map(|n| peirce_codim_bound(a, &s, n))
                .collect::<Result<Vec<_>>>()
        })
        .transpose()?;
    Ok(Report {
        input: InputDescriptor::new(format, a),
        field: a.field().spec().to_string(),
        dim: a.dim(),
        split: s.split.is_split(),
        split_detail,
        radical_dim: s.radical.dim(),
        loewy_length: s.loewy_length(),
        k: series.k,
        k_star: k_star(a),
        ell: s.ell().ok(),
        codim_series: series.values,
        cartan: s.cartan(a).ok(),
        ext1_diag: s.ext1_diag(a).ok(),
        peirce_bounds,
        rad_in_k: rad_in_k(&k_space, &s),
        symmetric: is_symmetric_search(a, &k_space, seed, SYMMETRIC_BUDGET)
            .label()
            .to_string(),
        verdict: classify(a, &s, &k_space),
        checks: verify_theorem_suite(a, &s, &k_space, seed).lines,
        seed,
    })
}
