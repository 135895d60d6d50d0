//! Text formats: structure constants, Cayley tables and quiver presentations.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::algebra::{group_algebra_from_cayley, Algebra};
use crate::corpus::{generate, GeneratorSpec};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::quiver::{build_path_algebra, parse_quiver, split_header};

/// An algebra over either supported field.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyAlgebra {
    Prime(Algebra<PrimeField>),
    Rational(Algebra<Rationals>),
}

/// Runs `$body` with `$a` bound to the concrete algebra.
#[macro_export]
macro_rules! with_algebra {
    ($any:expr, $a:ident => $body:expr) => {
        match $any {
            $crate::io::AnyAlgebra::Prime($a) => $body,
            $crate::io::AnyAlgebra::Rational($a) => $body,
        }
    };
}

impl AnyAlgebra {
    pub fn field_spec(&self) -> FieldSpec {
        with_algebra!(self, a => a.field().spec())
    }

    pub fn dim(&self) -> usize {
        with_algebra!(self, a => a.dim())
    }

    pub fn to_text(&self) -> String {
        with_algebra!(self, a => write_algebra(a))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputFormat {
    Algebra,
    Cayley,
    Quiver,
}

fn syntax<T>(line: usize, col: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Syntax {
        line,
        col,
        msg: msg.into(),
    })
}

/// Significant lines as `(line number, text without comment)`.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
        .filter(|(_, l)| !l.trim().is_empty())
}

/// Words of a line with their 1-based columns.
fn words(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

pub fn detect_format(text: &str) -> Result<InputFormat> {
    let Some((line, first)) = lines(text).next() else {
        return syntax(1, 1, "empty input");
    };
    let (col, word) = words(first)[0];
    match word {
        "algebra" => Ok(InputFormat::Algebra),
        "quiver" => Ok(InputFormat::Quiver),
        w if w.parse::<usize>().is_ok() => Ok(InputFormat::Cayley),
        w => syntax(
            line,
            col,
            format!("unrecognized header `{w}`; expected `algebra`, `quiver` or an integer"),
        ),
    }
}

/// Reads the `algebra dim=<d> field=<F>` header.
pub fn parse_algebra_header(text: &str) -> Result<(usize, FieldSpec)> {
    let Some((line, header)) = lines(text).next() else {
        return syntax(1, 1, "empty input");
    };
    let ws = words(header);
    if ws[0].1 != "algebra" {
        return syntax(line, ws[0].0, "expected `algebra` header");
    }
    let mut dim = None;
    let mut field = None;
    for &(col, w) in &ws[1..] {
        if let Some(v) = w.strip_prefix("dim=") {
            dim = Some(
                v.parse::<usize>()
                    .or_else(|_| syntax(line, col + 4, "dimension must be an integer"))?,
            );
        } else if let Some(v) = w.strip_prefix("field=") {
            field = Some(
                v.parse::<FieldSpec>()
                    .or_else(|e| syntax(line, col + 6, e.to_string()))?,
            );
        } else {
            return syntax(line, col, format!("unexpected `{w}` in header"));
        }
    }
    match (dim, field) {
        (Some(d), Some(f)) => Ok((d, f)),
        (None, _) => syntax(line, 1, "header needs dim=<d>"),
        (_, None) => syntax(line, 1, "header needs field=<Fp:p|Q>"),
    }
}

/// Parses the structure-constant format over `field`, which must match the header.
pub fn parse_algebra<F: Field>(field: &F, text: &str) -> Result<Algebra<F>> {
    let (dim, spec) = parse_algebra_header(text)?;
    if spec != field.spec() {
        return Err(Error::InvalidField(format!(
            "header says {spec}, expected {}",
            field.spec()
        )));
    }
    let scalar = |line: usize, col: usize, w: &str| -> Result<F::Elem> {
        field
            .parse_scalar(w)
            .or_else(|e| syntax(line, col, e.to_string()))
    };
    let index = |line: usize, col: usize, w: &str| -> Result<usize> {
        match w.parse::<usize>() {
            Ok(i) if i < dim => Ok(i),
            _ => syntax(
                line,
                col,
                format!("expected an index below {dim}, got `{w}`"),
            ),
        }
    };
    let mut unit = None;
    let mut entries = Vec::new();
    let mut seen = BTreeMap::new();
    for (line, text) in lines(text).skip(1) {
        let ws = words(text);
        let (col, head) = ws[0];
        if let Some(rest) = head.strip_prefix("unit:") {
            if unit.is_some() {
                return syntax(line, col, "duplicate `unit:` line");
            }
            let mut items: Vec<(usize, &str)> = Vec::new();
            if !rest.is_empty() {
                items.push((col + 5, rest));
            }
            items.extend_from_slice(&ws[1..]);
            if items.len() != dim {
                return syntax(
                    line,
                    col,
                    format!("unit needs {dim} scalars, got {}", items.len()),
                );
            }
            unit = Some(
                items
                    .iter()
                    .map(|&(c, w)| scalar(line, c, w))
                    .collect::<Result<Vec<_>>>()?,
            );
        } else if head == "mul" {
            if ws.len() != 5 {
                return syntax(line, col, "expected `mul i j k <scalar>`");
            }
            let i = index(line, ws[1].0, ws[1].1)?;
            let j = index(line, ws[2].0, ws[2].1)?;
            let k = index(line, ws[3].0, ws[3].1)?;
            if let Some(prev) = seen.insert((i, j, k), line) {
                return syntax(
                    line,
                    col,
                    format!("constant ({i}, {j}, {k}) already given on line {prev}"),
                );
            }
            entries.push((i, j, k, scalar(line, ws[4].0, ws[4].1)?));
        } else {
            return syntax(
                line,
                col,
                format!("unexpected `{head}`; expected `unit:` or `mul`"),
            );
        }
    }
    let unit = match unit {
        Some(u) => u,
        None => return syntax(lines(text).count() + 1, 1, "missing `unit:` line"),
    };
    Algebra::from_entries(field, dim, entries, unit)
}

/// Serializes in the structure-constant format; constants appear in `(i, j, k)` order.
pub fn write_algebra<F: Field>(a: &Algebra<F>) -> String {
    let f = a.field();
    let mut out = format!("algebra dim={} field={}\nunit:", a.dim(), f.spec());
    for c in a.unit() {
        let _ = write!(out, " {}", f.format(c));
    }
    out.push('\n');
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            for (k, c) in a.basis_product(i, j) {
                let _ = writeln!(out, "mul {i} {j} {k} {}", f.format(c));
            }
        }
    }
    out
}

pub fn parse_cayley(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut it = lines(text);
    let Some((line, first)) = it.next() else {
        return syntax(1, 1, "empty input");
    };
    let ws = words(first);
    let n: usize = ws[0]
        .1
        .parse()
        .or_else(|_| syntax(line, ws[0].0, "expected the group order"))?;
    if ws.len() > 1 {
        return syntax(line, ws[1].0, "the first line holds only the group order");
    }
    let mut rows = Vec::with_capacity(n);
    for (line, text) in it {
        let mut row = Vec::with_capacity(n);
        for (col, w) in words(text) {
            match w.parse::<usize>() {
                Ok(x) if x < n => row.push(x),
                _ => {
                    return syntax(
                        line,
                        col,
                        format!("expected an element index below {n}, got `{w}`"),
                    )
                }
            }
        }
        if row.len() != n {
            return syntax(
                line,
                1,
                format!("row has {} entries, expected {n}", row.len()),
            );
        }
        rows.push(row);
    }
    if rows.len() != n {
        return syntax(
            lines(text).count() + 1,
            1,
            format!("expected {n} rows, got {}", rows.len()),
        );
    }
    Ok(rows)
}

/// Picks the field: the file's own field, else `fallback`, else `Q`. A file field that
/// disagrees with an explicit fallback is an error.
fn choose_field(own: Option<FieldSpec>, fallback: Option<FieldSpec>) -> Result<FieldSpec> {
    match (own, fallback) {
        (Some(a), Some(b)) if a != b => Err(Error::InvalidField(format!(
            "input is over {a}, but {b} was requested"
        ))),
        (Some(a), _) => Ok(a),
        (None, Some(b)) => Ok(b),
        (None, None) => Ok(FieldSpec::Rationals),
    }
}

fn from_quiver<F: Field>(
    field: &F,
    text: &str,
    params: &BTreeMap<String, String>,
) -> Result<Algebra<F>> {
    let params = params
        .iter()
        .map(|(k, v)| Ok((k.clone(), field.parse_scalar(v)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(build_path_algebra(&parse_quiver(field, text, &params)?)?.algebra)
}

fn build<F: Field>(
    field: &F,
    format: InputFormat,
    text: &str,
    params: &BTreeMap<String, String>,
) -> Result<Algebra<F>> {
    match format {
        InputFormat::Algebra => parse_algebra(field, text),
        InputFormat::Cayley => group_algebra_from_cayley(field, &parse_cayley(text)?),
        InputFormat::Quiver => from_quiver(field, text, params),
    }
}

/// Parses any supported format. Cayley tables and quivers without a `field=` take
/// `field` (default `Q`); `params` binds quiver parameters.
pub fn parse_input(
    text: &str,
    field: Option<FieldSpec>,
    params: &BTreeMap<String, String>,
) -> Result<(AnyAlgebra, InputFormat)> {
    let format = detect_format(text)?;
    let own = match format {
        InputFormat::Algebra => Some(parse_algebra_header(text)?.1),
        InputFormat::Cayley => None,
        InputFormat::Quiver => split_header(text).0.map(|s| s.parse()).transpose()?,
    };
    let spec = choose_field(own, field)?;
    let algebra = match spec {
        FieldSpec::Prime(p) => {
            AnyAlgebra::Prime(build(&PrimeField::new(p)?, format, text, params)?)
        }
        FieldSpec::Rationals => AnyAlgebra::Rational(build(&Rationals, format, text, params)?),
    };
    Ok((algebra, format))
}

pub fn generate_any(spec: &GeneratorSpec) -> Result<AnyAlgebra> {
    Ok(match spec.field {
        FieldSpec::Prime(p) => AnyAlgebra::Prime(generate(&PrimeField::new(p)?, &spec.family)?),
        FieldSpec::Rationals => AnyAlgebra::Rational(generate(&Rationals, &spec.family)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Family;

    #[test]
    fn structure_constants_round_trip() {
        for field in [FieldSpec::Prime(5), FieldSpec::Rationals] {
            let spec = GeneratorSpec {
                family: Family::AQ { q: "2".into() },
                field,
            };
            let a = generate_any(&spec).unwrap();
            let text = a.to_text();
            let (b, format) = parse_input(&text, None, &BTreeMap::new()).unwrap();
            assert_eq!(format, InputFormat::Algebra);
            assert_eq!(a, b);
            assert_eq!(b.to_text(), text);
        }
    }

    #[test]
    fn rational_scalars() {
        let text = "# dual numbers\nalgebra dim=2 field=Q\nunit: 1 0\nmul 0 0 0 1\nmul 0 1 1 1\nmul 1 0 1 1\n";
        let a = parse_algebra(&Rationals, text).unwrap();
        assert_eq!(a.dim(), 2);
        let half = "algebra dim=1 field=Q\nunit: 2\nmul 0 0 0 1/2\n";
        assert!(parse_algebra(&Rationals, half).is_ok());
    }

    #[test]
    fn syntax_errors_have_positions() {
        let text = "algebra dim=2 field=Fp:3\nunit: 1 0\nmul 0 0 7 1\n";
        assert_eq!(
            parse_input(text, None, &BTreeMap::new()).unwrap_err(),
            Error::Syntax {
                line: 3,
                col: 9,
                msg: "expected an index below 2, got `7`".into()
            }
        );
        let missing = "algebra dim=1 field=Q\nmul 0 0 0 1\n";
        assert!(matches!(
            parse_input(missing, None, &BTreeMap::new()),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            detect_format("hello\n"),
            Err(Error::Syntax {
                line: 1,
                col: 1,
                ..
            })
        ));
    }

    #[test]
    fn cayley_and_quiver_detection() {
        let (a, fmt) =
            parse_input("2\n0 1\n1 0\n", Some(FieldSpec::Prime(2)), &BTreeMap::new()).unwrap();
        assert_eq!(
            (fmt, a.dim(), a.field_spec()),
            (InputFormat::Cayley, 2, FieldSpec::Prime(2))
        );
        let mut params = BTreeMap::new();
        params.insert("q".to_string(), "3".to_string());
        let quiver = "quiver field=Fp:7\nvertices: v\narrows: x: v->v, y: v->v\nrelations: x^2, y^2, x*y - q y*x\n";
        let (b, fmt) = parse_input(quiver, None, &params).unwrap();
        assert_eq!((fmt, b.dim()), (InputFormat::Quiver, 4));
        assert!(matches!(
            parse_input(quiver, Some(FieldSpec::Prime(5)), &params),
            Err(Error::InvalidField(_))
        ));
    }

    #[test]
    fn bad_cayley_table() {
        assert!(matches!(
            parse_input("2\n0 1\n1 1\n", None, &BTreeMap::new()),
            Err(Error::NotAGroup(_))
        ));
        assert!(matches!(
            parse_input("2\n0 1\n", None, &BTreeMap::new()),
            Err(Error::Syntax { .. })
        ));
    }
}
