//! Quivers with relations and their path algebras.
//!
//! Text grammar (whitespace and `#` comments are free):
//!
//! ```text
//! quiver field=Fp:5            # optional header line
//! vertices: v
//! arrows: x: v -> v, y: v -> v
//! relations: x^2, y^2, x*y - q y*x
//! ```
//!
//! `a*b` is the path "a then b", so it needs `target(a) = source(b)`. A coefficient
//! is an integer, a fraction `a/b`, or a parameter name bound by the caller; several
//! factors multiply. Relations must be homogeneous with every path of length at least 2.
//!
//! The quotient is computed stratum by stratum: the ideal is graded, so its length-`L`
//! part is spanned by the relations of length `L` together with arrows times the
//! length-`L - 1` part on either side.

use std::collections::BTreeMap;

use crate::algebra::{Algebra, Provenance};
use crate::error::{Error, Result};
use crate::exactla::{SpanBuilder, Subspace};
use crate::field::Field;

/// Default ceiling for the nilpotency bound search.
pub const DEFAULT_BOUND_CAP: usize = 32;
const MAX_PATHS_PER_LENGTH: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A path: its endpoints and arrow sequence (empty for a vertex).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn vertex(v: usize) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` then `other`, if composable.
    pub fn then(&self, other: &Path) -> Option<Path> {
        (self.target == other.source).then(|| Path {
            source: self.source,
            target: other.target,
            arrows: self.arrows.iter().chain(&other.arrows).copied().collect(),
        })
    }
}

/// A linear combination of parallel paths.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation<F: Field> {
    pub terms: Vec<(F::Elem, Path)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuiverPresentation<F: Field> {
    pub field: F,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation<F>>,
}

impl<F: Field> QuiverPresentation<F> {
    pub fn new(field: &F, vertices: Vec<String>, arrows: Vec<Arrow>) -> Self {
        QuiverPresentation {
            field: field.clone(),
            vertices,
            arrows,
            relations: Vec::new(),
        }
    }

    /// Adds a relation after checking it is nonzero-free, parallel and homogeneous of length >= 2.
    pub fn add_relation(&mut self, terms: Vec<(F::Elem, Path)>) -> Result<()> {
        let rel = normalize_relation(&self.field, terms, &self.describe_terms_fn())?;
        if let Some(rel) = rel {
            self.relations.push(rel);
        }
        Ok(())
    }

    fn describe_terms_fn(&self) -> impl Fn(&[(F::Elem, Path)]) -> String + '_ {
        move |terms| {
            terms
                .iter()
                .map(|(c, p)| format!("{} {}", self.field.format(c), self.path_name(p)))
                .collect::<Vec<_>>()
                .join(" + ")
        }
    }

    pub fn path_name(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            return self.vertices[p.source].clone();
        }
        p.arrows
            .iter()
            .map(|&a| self.arrows[a].name.as_str())
            .collect::<Vec<_>>()
            .join("*")
    }

    fn arrow_path(&self, a: usize) -> Path {
        Path {
            source: self.arrows[a].source,
            target: self.arrows[a].target,
            arrows: vec![a],
        }
    }

    /// All paths of the given length in ascending order.
    fn paths_of_length(&self, len: usize) -> Result<Vec<Path>> {
        let mut layer: Vec<Path> = (0..self.vertices.len()).map(Path::vertex).collect();
        for _ in 0..len {
            let mut next = Vec::new();
            for p in &layer {
                for a in 0..self.arrows.len() {
                    if let Some(q) = p.then(&self.arrow_path(a)) {
                        next.push(q);
                    }
                }
            }
            if next.len() > MAX_PATHS_PER_LENGTH {
                return Err(Error::TooLarge(format!(
                    "more than {MAX_PATHS_PER_LENGTH} paths of length {len}"
                )));
            }
            layer = next;
        }
        layer.sort_by(|a, b| a.arrows.cmp(&b.arrows).then(a.source.cmp(&b.source)));
        Ok(layer)
    }
}

fn normalize_relation<F: Field>(
    field: &F,
    terms: Vec<(F::Elem, Path)>,
    describe: &dyn Fn(&[(F::Elem, Path)]) -> String,
) -> Result<Option<Relation<F>>> {
    let mut merged: BTreeMap<Path, F::Elem> = BTreeMap::new();
    for (c, p) in &terms {
        let slot = merged.entry(p.clone()).or_insert_with(|| field.zero());
        *slot = field.add(slot, c);
    }
    let merged: Vec<(F::Elem, Path)> = merged
        .into_iter()
        .filter(|(_, c)| !field.is_zero(c))
        .map(|(p, c)| (c, p))
        .collect();
    let Some((_, first)) = merged.first() else {
        return Ok(None);
    };
    let text = describe(&terms);
    if merged
        .iter()
        .any(|(_, p)| p.source != first.source || p.target != first.target)
    {
        return Err(Error::NonParallel(text));
    }
    if merged.iter().any(|(_, p)| p.len() < 2) {
        return Err(Error::NotAdmissible(format!(
            "relation {text} has a term of length < 2"
        )));
    }
    if merged.iter().any(|(_, p)| p.len() != first.len()) {
        return Err(Error::NotAdmissible(format!(
            "relation {text} is not homogeneous; only homogeneous relations are supported"
        )));
    }
    Ok(Some(Relation { terms: merged }))
}

/// Graded data of `FQ / I` below the nilpotency bound.
#[derive(Clone, Debug)]
struct Strata<F: Field> {
    /// Paths of each length `< bound`, ascending.
    paths: Vec<Vec<Path>>,
    /// Ideal part of each length, in reversed column order (largest path first).
    ideal: Vec<Subspace<F>>,
    bound: usize,
}

fn graded_ideal<F: Field>(q: &QuiverPresentation<F>, cap: usize) -> Result<Strata<F>> {
    let f = &q.field;
    let mut paths = Vec::new();
    let mut ideal: Vec<Subspace<F>> = Vec::new();
    for len in 0..=cap {
        let layer = q.paths_of_length(len)?;
        let n = layer.len();
        // column of a path: reversed ascending order
        let column = |p: &Path| {
            n - 1
                - layer
                    .binary_search_by(|x| x.arrows.cmp(&p.arrows).then(x.source.cmp(&p.source)))
                    .expect("path listed")
        };
        let mut span = SpanBuilder::new(f, n);
        for rel in &q.relations {
            if rel.terms[0].1.len() == len {
                let mut v = vec![f.zero(); n];
                for (c, p) in &rel.terms {
                    v[column(p)] = c.clone();
                }
                span.insert(v);
            }
        }
        if len > 0 {
            let prev_paths: &Vec<Path> = &paths[len - 1];
            let prev: &Subspace<F> = &ideal[len - 1];
            let prev_n = prev_paths.len();
            for row in prev.basis() {
                for a in 0..q.arrows.len() {
                    let arrow = q.arrow_path(a);
                    for side in [true, false] {
                        let mut v = vec![f.zero(); n];
                        let mut any = false;
                        for (col, c) in row.iter().enumerate() {
                            if f.is_zero(c) {
                                continue;
                            }
                            let p = &prev_paths[prev_n - 1 - col];
                            let prod = if side { arrow.then(p) } else { p.then(&arrow) };
                            if let Some(pp) = prod {
                                v[column(&pp)] = c.clone();
                                any = true;
                            }
                        }
                        if any {
                            span.insert(v);
                        }
                    }
                }
            }
        }
        let sub = span.finish();
        let complete = sub.is_full();
        paths.push(layer);
        ideal.push(sub);
        if complete {
            paths.pop();
            ideal.pop();
            return Ok(Strata {
                paths,
                ideal,
                bound: len,
            });
        }
    }
    Err(Error::NotAdmissible(format!(
        "paths of length {cap} are not all in the ideal"
    )))
}

/// Smallest `N <= cap` such that every path of length `N` lies in the ideal.
pub fn admissibility_bound<F: Field>(q: &QuiverPresentation<F>, cap: usize) -> Result<usize> {
    graded_ideal(q, cap).map(|s| s.bound)
}

/// The compiled path algebra.
#[derive(Clone, Debug)]
pub struct PathAlgebra<F: Field> {
    pub algebra: Algebra<F>,
    /// Basis element `i` is the residue of `basis_paths[i]`.
    pub basis_paths: Vec<Path>,
    /// Basis indices of the vertex idempotents, in vertex order.
    pub vertex_idempotents: Vec<usize>,
    pub arrow_ideal: Subspace<F>,
    pub bound: usize,
}

pub fn build_path_algebra<F: Field>(q: &QuiverPresentation<F>) -> Result<PathAlgebra<F>> {
    build_path_algebra_with_cap(q, DEFAULT_BOUND_CAP)
}

pub fn build_path_algebra_with_cap<F: Field>(
    q: &QuiverPresentation<F>,
    cap: usize,
) -> Result<PathAlgebra<F>> {
    if q.vertices.is_empty() {
        return Err(Error::InvalidAlgebra("quiver has no vertices".into()));
    }
    let f = &q.field;
    let strata = graded_ideal(q, cap)?;
    // basis paths are the non-pivot columns of each stratum
    let mut basis_paths = Vec::new();
    let mut index_of: BTreeMap<Path, usize> = BTreeMap::new();
    for (layer, ideal) in strata.paths.iter().zip(&strata.ideal) {
        let n = layer.len();
        let mut survivors: Vec<usize> = ideal
            .non_pivots()
            .into_iter()
            .map(|col| n - 1 - col)
            .collect();
        survivors.sort_unstable();
        for i in survivors {
            index_of.insert(layer[i].clone(), basis_paths.len());
            basis_paths.push(layer[i].clone());
        }
    }
    let dim = basis_paths.len();
    let normal_form = |p: &Path| -> Vec<F::Elem> {
        let mut out = vec![f.zero(); dim];
        if p.len() >= strata.bound {
            return out;
        }
        if let Some(&i) = index_of.get(p) {
            out[i] = f.one();
            return out;
        }
        let layer = &strata.paths[p.len()];
        let n = layer.len();
        let col = n
            - 1
            - layer
                .binary_search_by(|x| x.arrows.cmp(&p.arrows).then(x.source.cmp(&p.source)))
                .expect("path listed");
        let ideal = &strata.ideal[p.len()];
        let r = ideal
            .pivots()
            .iter()
            .position(|&c| c == col)
            .expect("non-basis path is a pivot");
        for (c, x) in ideal.basis()[r].iter().enumerate() {
            if c != col && !f.is_zero(x) {
                out[index_of[&layer[n - 1 - c]]] = f.neg(x);
            }
        }
        out
    };
    let algebra = Algebra::from_products(
        f,
        dim,
        |i, j| match basis_paths[i].then(&basis_paths[j]) {
            Some(p) => normal_form(&p),
            None => vec![f.zero(); dim],
        },
        {
            let mut u = vec![f.zero(); dim];
            for v in 0..q.vertices.len() {
                u[index_of[&Path::vertex(v)]] = f.one();
            }
            u
        },
    )?;
    let vertex_idempotents: Vec<usize> = (0..q.vertices.len())
        .map(|v| index_of[&Path::vertex(v)])
        .collect();
    let arrow_ideal = Subspace::span(
        f,
        dim,
        (0..dim)
            .filter(|&i| !basis_paths[i].is_empty())
            .map(|i| algebra.basis_vec(i)),
    );
    let algebra = algebra.with_provenance(Provenance::Quiver {
        vertex_idempotents: vertex_idempotents
            .iter()
            .map(|&i| {
                let mut v = vec![f.zero(); dim];
                v[i] = f.one();
                v
            })
            .collect(),
        arrow_ideal: arrow_ideal.clone(),
    });
    Ok(PathAlgebra {
        algebra,
        basis_paths,
        vertex_idempotents,
        arrow_ideal,
        bound: strata.bound,
    })
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Number(String),
    Slash,
    Colon,
    To,
    Comma,
    Semi,
    Star,
    Caret,
    Plus,
    Minus,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str, line_offset: usize) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1 + line_offset;
        let body = raw.split('#').next().unwrap_or("");
        let chars: Vec<char> = body.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            let single = match c {
                '/' => Some(Tok::Slash),
                ':' => Some(Tok::Colon),
                ',' => Some(Tok::Comma),
                ';' => Some(Tok::Semi),
                '*' => Some(Tok::Star),
                '^' => Some(Tok::Caret),
                '+' => Some(Tok::Plus),
                _ => None,
            };
            if let Some(tok) = single {
                out.push(Token { tok, line, col });
                i += 1;
            } else if c == '-' {
                if chars.get(i + 1) == Some(&'>') {
                    out.push(Token {
                        tok: Tok::To,
                        line,
                        col,
                    });
                    i += 2;
                } else {
                    out.push(Token {
                        tok: Tok::Minus,
                        line,
                        col,
                    });
                    i += 1;
                }
            } else if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Number(chars[start..i].iter().collect()),
                    line,
                    col,
                });
            } else if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
                {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(chars[start..i].iter().collect()),
                    line,
                    col,
                });
            } else {
                return Err(Error::Syntax {
                    line,
                    col,
                    msg: format!("unexpected character `{c}`"),
                });
            }
        }
    }
    Ok(out)
}

/// Splits an optional `quiver [field=...]` header off the text.
///
/// Returns the field text if present, the body, and the number of lines consumed.
pub fn split_header(text: &str) -> (Option<String>, &str, usize) {
    let mut consumed = 0;
    let mut rest = text;
    loop {
        let (line, tail) = match rest.split_once('\n') {
            Some((l, t)) => (l, t),
            None => (rest, ""),
        };
        let trimmed = line.split('#').next().unwrap_or("").trim();
        if trimmed.is_empty() && !tail.is_empty() {
            consumed += 1;
            rest = tail;
            continue;
        }
        let mut words = trimmed.split_whitespace();
        if words.next() == Some("quiver") {
            let field = words.find_map(|w| w.strip_prefix("field=").map(str::to_string));
            return (field, tail, consumed + 1);
        }
        return (None, text, 0);
    }
}

struct Parser<'a, F: Field> {
    toks: Vec<Token>,
    pos: usize,
    field: &'a F,
    params: &'a BTreeMap<String, F::Elem>,
    end: (usize, usize),
}

const SECTIONS: [&str; 3] = ["vertices", "arrows", "relations"];

impl<'a, F: Field> Parser<'a, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|t| (t.line, t.col))
            .unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (line, col) = self.here();
        Err(Error::Syntax {
            line,
            col,
            msg: msg.into(),
        })
    }

    fn at_section(&self) -> bool {
        matches!(
            (self.toks.get(self.pos).map(|t| &t.tok), self.toks.get(self.pos + 1).map(|t| &t.tok)),
            (Some(Tok::Ident(s)), Some(Tok::Colon)) if SECTIONS.contains(&s.as_str())
        )
    }

    fn at_end_of_section(&self) -> bool {
        self.peek().is_none() || self.at_section()
    }

    fn skip_separators(&mut self) {
        while matches!(self.peek(), Some(Tok::Comma | Tok::Semi)) {
            self.pos += 1;
        }
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.err(format!("expected {what}")),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn number(&mut self) -> Result<u64> {
        match self.peek() {
            Some(Tok::Number(s)) => {
                let s = s.clone();
                self.pos += 1;
                s.parse().or_else(|_| self.err("number too large"))
            }
            _ => self.err("expected a number"),
        }
    }
}

type RawRelation = (usize, usize);

/// Parses the quiver grammar; parameter names in coefficients are looked up in `params`.
pub fn parse_quiver<F: Field>(
    field: &F,
    text: &str,
    params: &BTreeMap<String, F::Elem>,
) -> Result<QuiverPresentation<F>> {
    let (_, body, offset) = split_header(text);
    let toks = lex(body, offset)?;
    let end = toks
        .last()
        .map(|t| (t.line, t.col + 1))
        .unwrap_or((offset + 1, 1));
    let mut p = Parser {
        toks,
        pos: 0,
        field,
        params,
        end,
    };
    let mut vertices: Vec<String> = Vec::new();
    let mut arrow_specs: Vec<(String, String, String, (usize, usize))> = Vec::new();
    let mut relation_ranges: Vec<RawRelation> = Vec::new();
    let mut seen = [false; 3];
    while p.peek().is_some() {
        if !p.at_section() {
            return p.err("expected `vertices:`, `arrows:` or `relations:`");
        }
        let name = p.ident("section")?;
        p.pos += 1;
        let idx = SECTIONS.iter().position(|s| *s == name).unwrap();
        if seen[idx] {
            return p.err(format!("duplicate `{name}:` section"));
        }
        seen[idx] = true;
        match idx {
            0 => loop {
                p.skip_separators();
                if p.at_end_of_section() {
                    break;
                }
                let v = p.ident("vertex name")?;
                if vertices.contains(&v) {
                    return p.err(format!("duplicate vertex `{v}`"));
                }
                vertices.push(v);
            },
            1 => loop {
                p.skip_separators();
                if p.at_end_of_section() {
                    break;
                }
                let at = p.here();
                let name = p.ident("arrow name")?;
                p.expect(Tok::Colon, "`:` after arrow name")?;
                let s = p.ident("source vertex")?;
                p.expect(Tok::To, "`->`")?;
                let t = p.ident("target vertex")?;
                arrow_specs.push((name, s, t, at));
            },
            _ => loop {
                p.skip_separators();
                if p.at_end_of_section() {
                    break;
                }
                let start = p.pos;
                while !(p.at_end_of_section() || matches!(p.peek(), Some(Tok::Comma | Tok::Semi))) {
                    p.pos += 1;
                }
                relation_ranges.push((start, p.pos));
            },
        }
    }
    if vertices.is_empty() {
        return Err(Error::Syntax {
            line: end.0,
            col: end.1,
            msg: "no vertices declared".into(),
        });
    }
    let mut arrows: Vec<Arrow> = Vec::new();
    for (name, s, t, (line, col)) in arrow_specs {
        if arrows.iter().any(|a| a.name == name) || vertices.contains(&name) {
            return Err(Error::Syntax {
                line,
                col,
                msg: format!("duplicate name `{name}`"),
            });
        }
        let find = |v: &str| {
            vertices
                .iter()
                .position(|x| x == v)
                .ok_or_else(|| Error::Unknown {
                    kind: "vertex",
                    name: v.to_string(),
                })
        };
        arrows.push(Arrow {
            source: find(&s)?,
            target: find(&t)?,
            name,
        });
    }
    let mut q = QuiverPresentation::new(field, vertices, arrows);
    for (start, stop) in relation_ranges {
        p.pos = start;
        let terms = parse_relation(&mut p, &q, stop)?;
        q.add_relation(terms)?;
    }
    Ok(q)
}

fn parse_relation<F: Field>(
    p: &mut Parser<'_, F>,
    q: &QuiverPresentation<F>,
    stop: usize,
) -> Result<Vec<(F::Elem, Path)>> {
    let f = p.field;
    let mut terms = Vec::new();
    let mut first = true;
    while p.pos < stop {
        let mut coeff = f.one();
        match p.peek() {
            Some(Tok::Plus) => p.pos += 1,
            Some(Tok::Minus) => {
                coeff = f.neg(&coeff);
                p.pos += 1;
            }
            _ if !first => return p.err("expected `+` or `-` between terms"),
            _ => {}
        }
        first = false;
        // coefficient factors
        loop {
            match p.peek() {
                Some(Tok::Number(_)) if p.pos < stop => {
                    let num = p.number()?;
                    let mut value = f.nth(num);
                    if p.peek() == Some(&Tok::Slash) {
                        p.pos += 1;
                        let den = p.number()?;
                        let d = f.nth(den);
                        value = match f.div(&value, &d) {
                            Some(v) => v,
                            None => return p.err("division by zero in coefficient"),
                        };
                    }
                    coeff = f.mul(&coeff, &value);
                }
                Some(Tok::Ident(name)) if p.pos < stop && !is_path_atom(q, name) => {
                    let Some(v) = p.params.get(name) else {
                        return Err(Error::Unknown {
                            kind: "arrow or parameter",
                            name: name.clone(),
                        });
                    };
                    coeff = f.mul(&coeff, v);
                    p.pos += 1;
                }
                _ => break,
            }
            if p.peek() == Some(&Tok::Star) && p.pos < stop {
                p.pos += 1;
            }
        }
        let path = parse_path(p, q, stop)?;
        terms.push((coeff, path));
    }
    if terms.is_empty() {
        return p.err("empty relation");
    }
    Ok(terms)
}

fn is_path_atom<F: Field>(q: &QuiverPresentation<F>, name: &str) -> bool {
    q.arrows.iter().any(|a| a.name == name) || q.vertices.iter().any(|v| v == name)
}

fn parse_path<F: Field>(
    p: &mut Parser<'_, F>,
    q: &QuiverPresentation<F>,
    stop: usize,
) -> Result<Path> {
    let mut path: Option<Path> = None;
    loop {
        if p.pos >= stop {
            return p.err("expected a path");
        }
        let (line, col) = p.here();
        let name = p.ident("arrow")?;
        let atom = if let Some(a) = q.arrows.iter().position(|x| x.name == name) {
            q.arrow_path(a)
        } else if let Some(v) = q.vertices.iter().position(|x| *x == name) {
            Path::vertex(v)
        } else {
            return Err(Error::Unknown {
                kind: "arrow",
                name,
            });
        };
        let mut reps = 1;
        if p.pos < stop && p.peek() == Some(&Tok::Caret) {
            p.pos += 1;
            reps = p.number()? as usize;
            if reps == 0 {
                return Err(Error::Syntax {
                    line,
                    col,
                    msg: "exponent must be positive".into(),
                });
            }
        }
        for _ in 0..reps {
            path = Some(match path {
                None => atom.clone(),
                Some(prev) => prev.then(&atom).ok_or_else(|| Error::Syntax {
                    line,
                    col,
                    msg: format!("`{name}` does not compose with the preceding path"),
                })?,
            });
        }
        if p.pos < stop && p.peek() == Some(&Tok::Star) {
            p.pos += 1;
        } else {
            break;
        }
    }
    Ok(path.expect("at least one atom"))
}
