//! Release gate: one test and one printed PASS/FAIL line per acceptance criterion.

mod common;

use std::io::Write;
use std::time::Instant;

use kinv::algebra::{k_star, Algebra};
use kinv::classify::{classify, local_dimension_check, VerdictKind};
use kinv::corpus::{generate, Family};
use kinv::invariants::{
    codim_series, commutator_subspace, is_symmetric_search, k_of, peirce_codim_bound, rad_in_k,
    t_space,
};
use kinv::io::AnyAlgebra;
use kinv::morita::{inflate, verify_morita_invariance};
use kinv::oracle::{k_oracle, radical_oracle, RADICAL_ORACLE_LIMIT};
use kinv::structure::{analyze, Structure};
use kinv::{with_algebra, Field, PrimeField, Rationals};

use common::Member;

const INFLATED_DIM_CAP: usize = 60;
const SYMMETRIC_BUDGET: u64 = 1 << 12;

fn report(n: usize, title: &str, checked: usize, failures: &[String], start: Instant) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    // written to the raw handle so the line shows without --nocapture
    let mut err = std::io::stderr().lock();
    let _ = writeln!(
        err,
        "criterion {n:2} {status}: {title} ({checked} instances, {:.1}s)",
        start.elapsed().as_secs_f64()
    );
    for f in failures.iter().take(20) {
        let _ = writeln!(err, "    {f}");
    }
    drop(err);
    assert!(
        failures.is_empty(),
        "criterion {n}: {} failure(s)",
        failures.len()
    );
}

fn f(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn a_q<F: Field>(field: &F, q: &str) -> Algebra<F> {
    generate(field, &Family::AQ { q: q.into() }).unwrap()
}

fn analyzed<F: Field>(a: &Algebra<F>) -> Structure<F> {
    analyze(a, 0).unwrap()
}

#[test]
fn criterion_01_reference_values() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut check =
        |name: String, got: (usize, Option<usize>, usize), want: (usize, Option<usize>, usize)| {
            checked += 1;
            if got != want {
                failures.push(format!(
                    "{name}: (k, ell, dim) = {got:?}, expected {want:?}"
                ));
            }
        };
    for p in [5, 7] {
        for q in ["2", "3"] {
            let a = a_q(&f(p), q);
            let s = analyzed(&a);
            check(
                format!("A_{q} over F_{p}"),
                (k_of(&a), s.ell().ok(), a.dim()),
                (3, Some(1), 4),
            );
        }
    }
    let a = a_q(&Rationals, "2");
    let s = analyzed(&a);
    check(
        "A_2 over Q".into(),
        (k_of(&a), s.ell().ok(), a.dim()),
        (3, Some(1), 4),
    );
    for n in 1..=5 {
        let a = generate(&Rationals, &Family::Kronecker { n }).unwrap();
        let s = analyzed(&a);
        check(
            format!("FQ_{n}"),
            (k_of(&a), s.ell().ok(), a.dim()),
            (2, Some(2), n + 2),
        );
    }
    for n in 2..=5 {
        let q = generate(&Rationals, &Family::Triangular { n }).unwrap();
        let t = generate(&f(2), &Family::Triangular { n }).unwrap();
        check(
            format!("k*(T_{n}) over Q"),
            (k_star(&q), None, 0),
            (1, None, 0),
        );
        check(
            format!("k*(T_{n}) over F_2"),
            (k_star(&t), None, 0),
            (1, None, 0),
        );
    }
    report(
        1,
        "reference values for A_q, FQ_n and k*(T_n)",
        checked,
        &failures,
        start,
    );
}

/// `codim K_1 = ell`, `codim K_2 = ell + sum ext1`, `ell + sum ext1 <= k <= tr C`.
fn identities<F: Field>(a: &Algebra<F>) -> Option<Result<(), String>> {
    let s = analyzed(a);
    let idems = s.require_split().ok()?;
    let ell = idems.ell();
    let k_space = commutator_subspace(a);
    let series = codim_series(&k_space, &s);
    let codim = |n: usize| series.values.get(n - 1).copied().unwrap_or(series.k);
    let ext: usize = s.ext1_diag(a).unwrap().iter().sum();
    let cartan = s.cartan(a).unwrap();
    let trace: usize = (0..ell).map(|i| cartan[i][i]).sum();
    let k = series.k;
    let ok = codim(1) == ell && codim(2) == ell + ext && ell + ext <= k && k <= trace;
    Some(if ok {
        Ok(())
    } else {
        Err(format!(
            "codim K_1 = {}, codim K_2 = {}, ell = {ell}, sum ext1 = {ext}, k = {k}, tr C = {trace}",
            codim(1),
            codim(2)
        ))
    })
}

fn over_corpus(
    corpus: &[Member],
    mut f: impl FnMut(&AnyAlgebra) -> Option<Result<(), String>>,
) -> (usize, Vec<String>) {
    let mut checked = 0;
    let mut failures = Vec::new();
    for m in corpus {
        match f(&m.algebra) {
            Some(Ok(())) => checked += 1,
            Some(Err(e)) => {
                checked += 1;
                failures.push(format!("{}: {e}", m.name));
            }
            None => {}
        }
    }
    (checked, failures)
}

#[test]
fn criterion_02_codim_identities() {
    let start = Instant::now();
    let (checked, failures) =
        over_corpus(&common::full(), |a| with_algebra!(a, x => identities(x)));
    report(
        2,
        "codim K_1 = ell, codim K_2 = ell + sum ext1, ell + sum ext1 <= k <= tr C",
        checked,
        &failures,
        start,
    );
}

/// `codim K_n <= bound(n)` for `n <= LL`, with the equality set an initial segment.
fn peirce_bound<F: Field>(a: &Algebra<F>) -> Option<Result<Vec<bool>, String>> {
    let s = analyzed(a);
    s.require_split().ok()?;
    let series = codim_series(&commutator_subspace(a), &s);
    let mut equal = Vec::new();
    for n in 1..=s.loewy_length() {
        let bound = peirce_codim_bound(a, &s, n).unwrap();
        let c = series.values[n - 1];
        if c > bound {
            return Some(Err(format!("codim K_{n} = {c} exceeds {bound}")));
        }
        equal.push(c == bound);
    }
    if equal.windows(2).any(|w| !w[0] && w[1]) {
        return Some(Err(format!(
            "equality set {equal:?} is not downward closed"
        )));
    }
    Some(Ok(equal))
}

#[test]
fn criterion_03_peirce_bound() {
    let start = Instant::now();
    let (mut checked, mut failures) = over_corpus(
        &common::full(),
        |a| with_algebra!(a, x => peirce_bound(x).map(|r| r.map(|_| ()))),
    );
    for p in [5, 7] {
        checked += 1;
        let eq = peirce_bound(&a_q(&f(p), "2")).unwrap();
        if eq != Ok(vec![true, true, false]) {
            failures.push(format!(
                "A_2 over F_{p}: equality pattern {eq:?}, expected [true, true, false]"
            ));
        }
    }
    report(
        3,
        "codim K_n <= Peirce bound, equality downward closed, A_q pattern",
        checked,
        &failures,
        start,
    );
}

/// All multiplicity vectors in `{1,2,3}^ell`.
fn multiplicity_vectors(ell: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..ell {
        out = out
            .into_iter()
            .flat_map(|v| (1..=3).map(move |m| [v.clone(), vec![m]].concat()))
            .collect();
    }
    out
}

fn morita<F: Field>(a: &Algebra<F>) -> Option<Result<(), String>> {
    let s = analyzed(a);
    s.require_split().ok()?;
    let series = codim_series(&commutator_subspace(a), &s);
    let check = |x: &Algebra<F>, sx: &Structure<F>, label: &str| -> Result<(), String> {
        let cert = verify_morita_invariance(x, sx).map_err(|e| format!("{label}: {e}"))?;
        if !cert.report.passed() {
            return Err(format!("{label}: {:?}", cert.report));
        }
        let b = &cert.basic.algebra;
        let sb = analyzed(b);
        let ours = codim_series(&commutator_subspace(x), sx);
        let theirs = codim_series(&commutator_subspace(b), &sb);
        let depth = ours
            .values
            .len()
            .max(theirs.values.len())
            .max(series.values.len());
        let at =
            |c: &kinv::invariants::CodimSeries, n: usize| c.values.get(n).copied().unwrap_or(c.k);
        for n in 0..depth {
            if at(&ours, n) != at(&theirs, n) || at(&ours, n) != at(&series, n) {
                return Err(format!(
                    "{label}: codim K_{} differs: {} vs basic {} vs original {}",
                    n + 1,
                    at(&ours, n),
                    at(&theirs, n),
                    at(&series, n)
                ));
            }
        }
        Ok(())
    };
    if let Err(e) = check(a, &s, "A") {
        return Some(Err(e));
    }
    let cartan = s.cartan(a).unwrap();
    let ell = cartan.len();
    for m in multiplicity_vectors(ell) {
        let dim: usize = (0..ell)
            .flat_map(|i| (0..ell).map(move |j| (i, j)))
            .map(|(i, j)| m[i] * m[j] * cartan[i][j])
            .sum();
        if dim > INFLATED_DIM_CAP {
            continue;
        }
        let inflated = match inflate(a, &s, &m) {
            Ok(x) => x,
            Err(e) => return Some(Err(format!("inflate {m:?}: {e}"))),
        };
        if inflated.dim() != dim {
            return Some(Err(format!(
                "inflate {m:?} has dim {}, expected {dim}",
                inflated.dim()
            )));
        }
        let si = analyzed(&inflated);
        if let Err(e) = check(&inflated, &si, &format!("inflate {m:?}")) {
            return Some(Err(e));
        }
    }
    Some(Ok(()))
}

#[test]
fn criterion_04_morita_invariance() {
    let start = Instant::now();
    let (checked, failures) = over_corpus(&common::full(), |a| with_algebra!(a, x => morita(x)));
    report(
        4,
        "codim K_n(A) = codim K_n(basic), also after inflation; tau bijective",
        checked,
        &failures,
        start,
    );
}

fn verdict<F: Field>(a: &Algebra<F>) -> (VerdictKind, bool) {
    let s = analyzed(a);
    let v = classify(a, &s, &commutator_subspace(a));
    let witness_ok = v.witness.as_ref().is_none_or(|w| w.valid());
    (v.kind, witness_ok)
}

fn truncated_kind(n: usize) -> VerdictKind {
    match n {
        1 => VerdictKind::MoritaF,
        2 => VerdictKind::MoritaDual,
        n => VerdictKind::TruncatedPoly(n),
    }
}

#[test]
fn criterion_05_classifiers() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut expect = |name: String, got: (VerdictKind, bool), want: VerdictKind| {
        checked += 1;
        if got != (want.clone(), true) {
            failures.push(format!(
                "{name}: got {got:?}, expected {want:?} with a valid witness"
            ));
        }
    };
    for n in 1..=4 {
        expect(
            format!("M_{n}(Q)"),
            verdict(&generate(&Rationals, &Family::Matrix { n }).unwrap()),
            VerdictKind::MoritaF,
        );
        expect(
            format!("M_{n}(F_3)"),
            verdict(&generate(&f(3), &Family::Matrix { n }).unwrap()),
            VerdictKind::MoritaF,
        );
    }
    let z2 = generate(&f(2), &Family::CyclicGroup { n: 2 }).unwrap();
    expect("F_2[Z/2]".into(), verdict(&z2), VerdictKind::MoritaDual);
    for n in 1..=8 {
        for m in 1..=3 {
            let base_q = generate(&Rationals, &Family::Truncated { n }).unwrap();
            let base_p = generate(&f(5), &Family::Truncated { n }).unwrap();
            let iq = inflate(&base_q, &analyzed(&base_q), &[m]).unwrap();
            let ip = inflate(&base_p, &analyzed(&base_p), &[m]).unwrap();
            expect(
                format!("inflate(Q[X]/(X^{n}), [{m}])"),
                verdict(&iq),
                truncated_kind(n),
            );
            expect(
                format!("inflate(F_5[X]/(X^{n}), [{m}])"),
                verdict(&ip),
                truncated_kind(n),
            );
        }
    }
    expect(
        "A_2 over F_5".into(),
        verdict(&a_q(&f(5), "2")),
        VerdictKind::Other,
    );
    expect(
        "A_3 over F_7".into(),
        verdict(&a_q(&f(7), "3")),
        VerdictKind::Other,
    );
    expect(
        "A_2 over Q".into(),
        verdict(&a_q(&Rationals, "2")),
        VerdictKind::Other,
    );
    for n in 1..=5 {
        expect(
            format!("FQ_{n}"),
            verdict(&generate(&Rationals, &Family::Kronecker { n }).unwrap()),
            VerdictKind::Other,
        );
    }
    report(
        5,
        "classifier verdicts with structural witnesses",
        checked,
        &failures,
        start,
    );
}

fn t_equals_k1(a: &Algebra<PrimeField>) -> Option<Result<(), String>> {
    if !matches!(a.field().modulus(), 2 | 3 | 5) {
        return None;
    }
    let s = analyzed(a);
    s.require_split().ok()?;
    let k = commutator_subspace(a);
    let t = t_space(a, &k).unwrap();
    let k1 = k.sum(&s.radical).unwrap();
    Some(if t == k1 {
        Ok(())
    } else {
        Err(format!("dim T = {}, dim K_1 = {}", t.dim(), k1.dim()))
    })
}

#[test]
fn criterion_06_t_space() {
    let start = Instant::now();
    let (checked, failures) = over_corpus(&common::full(), |a| match a {
        AnyAlgebra::Prime(x) => t_equals_k1(x),
        AnyAlgebra::Rational(_) => None,
    });
    report(
        6,
        "T(A) = K_1(A) over F_2, F_3, F_5",
        checked,
        &failures,
        start,
    );
}

fn k_equals_trace<F: Field>(a: &Algebra<F>) -> Option<Result<(), String>> {
    let s = analyzed(a);
    if !s.radical_power(2).is_zero() {
        return Some(Err("radical square is not zero".into()));
    }
    let cartan = s.cartan(a).ok()?;
    let trace: usize = (0..cartan.len()).map(|i| cartan[i][i]).sum();
    let k = k_of(a);
    Some(if k == trace {
        Ok(())
    } else {
        Err(format!("k = {k}, tr C = {trace}"))
    })
}

#[test]
fn criterion_07_radical_square_zero() {
    let start = Instant::now();
    let corpus = common::random_quivers(100, true);
    let (checked, mut failures) =
        over_corpus(&corpus, |a| with_algebra!(a, x => k_equals_trace(x)));
    if checked != 100 {
        failures.push(format!("only {checked} of 100 draws were split"));
    }
    report(
        7,
        "k = tr C on radical-square-zero quiver algebras",
        checked,
        &failures,
        start,
    );
}

fn rad_in_k_equivalence<F: Field>(a: &Algebra<F>) -> Option<Result<(), String>> {
    let s = analyzed(a);
    let ell = s.ell().ok()?;
    let k_space = commutator_subspace(a);
    let k = k_space.codim();
    let inside = rad_in_k(&k_space, &s);
    if (k == ell) != inside {
        return Some(Err(format!("k = {k}, ell = {ell}, Rad in K = {inside}")));
    }
    let symmetric = is_symmetric_search(a, &k_space, 0, SYMMETRIC_BUDGET).is_yes();
    let special = symmetric || a.is_commutative() || s.is_local(a.field()) == Some(true);
    if special && k == ell && !s.radical.is_zero() {
        return Some(Err(format!(
            "k = ell = {k} with nonzero radical (symmetric {symmetric}, commutative {})",
            a.is_commutative()
        )));
    }
    Some(Ok(()))
}

#[test]
fn criterion_08_radical_in_commutators() {
    let start = Instant::now();
    let (checked, failures) = over_corpus(
        &common::full(),
        |a| with_algebra!(a, x => rad_in_k_equivalence(x)),
    );
    report(
        8,
        "k = ell iff Rad in K; symmetric, commutative or local with k = ell are semisimple",
        checked,
        &failures,
        start,
    );
}

fn oracles<F: Field>(
    a: &Algebra<F>,
    mut radical: impl FnMut(&Algebra<F>) -> Option<bool>,
) -> Option<Result<(), String>> {
    let mut msgs = Vec::new();
    let mut ran = false;
    if a.dim() <= 24 {
        ran = true;
        let (ours, theirs) = (k_of(a), k_oracle(a));
        if ours != theirs {
            msgs.push(format!("k = {ours}, oracle {theirs}"));
        }
    }
    if let Some(agrees) = radical(a) {
        ran = true;
        if !agrees {
            msgs.push("radical differs from the quasi-regularity oracle".into());
        }
    }
    ran.then(|| {
        if msgs.is_empty() {
            Ok(())
        } else {
            Err(msgs.join("; "))
        }
    })
}

#[test]
fn criterion_09_oracles() {
    let start = Instant::now();
    let mut radical_checked = 0;
    let (checked, mut failures) = over_corpus(&common::full(), |a| match a {
        AnyAlgebra::Prime(x) => oracles(x, |x| {
            let p = x.field().modulus() as u128;
            (p.pow(x.dim() as u32) <= RADICAL_ORACLE_LIMIT as u128).then(|| {
                radical_checked += 1;
                radical_oracle(x).unwrap() == analyzed(x).radical
            })
        }),
        AnyAlgebra::Rational(x) => oracles(x, |_| None),
    });
    if radical_checked < 100 {
        failures.push(format!("only {radical_checked} radical oracle runs"));
    }
    report(
        9,
        &format!("oracle agreement (radical on {radical_checked} members)"),
        checked,
        &failures,
        start,
    );
}

fn local_bounds(a: &Algebra<PrimeField>) -> Result<(bool, usize, usize), String> {
    let s = analyzed(a);
    let c = local_dimension_check(a, &s, k_of(a)).map_err(|e| e.to_string())?;
    if !c.consistent {
        return Err(format!(
            "k = {}, dim = {}, dim J/J^2 = {}",
            c.k, c.dim, c.dim_j_mod_j2
        ));
    }
    Ok((c.tight, c.k, c.dim))
}

#[test]
fn criterion_10_local_dimension_bounds() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let corpus = common::random_locals(500, 1000);
    for m in &corpus {
        let AnyAlgebra::Prime(a) = &m.algebra else {
            unreachable!()
        };
        if a.dim() > 12 {
            failures.push(format!("{}: dim {} exceeds 12", m.name, a.dim()));
        }
        if let Err(e) = local_bounds(a) {
            failures.push(format!("{}: {e}", m.name));
        }
    }
    match local_bounds(&a_q(&f(5), "2")) {
        Ok((true, 3, 4)) => {}
        other => failures.push(format!(
            "A_2 over F_5 should be the tight case k = 3, dim = 4: {other:?}"
        )),
    }
    report(
        10,
        "local dimension bounds on 500 random local algebras; A_q tight",
        corpus.len() + 1,
        &failures,
        start,
    );
}
