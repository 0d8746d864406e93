//! The quiver file format.
//!
//! ```text
//! field Q                      # or: field F 101
//! vertex 1
//! vertex 2
//! arrow a: 1 -> 2
//! relation b*a - 2*c*a         # products are written right to left
//! ```

use std::fmt;

use qtilt::algebra::{BasicAlgebra, Relation};
use qtilt::quiver::{Path, Quiver};
use qtilt::scalars::{ExactField, Scalar};

use crate::error::{CliError, CliResult};

/// One term `c * a_r * ... * a_1` of a relation; `arrows` is stored as written, left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coefficient: i64,
    pub arrows: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverFile {
    pub field: ExactField,
    pub vertices: Vec<String>,
    /// `(name, source, target)`.
    pub arrows: Vec<(String, String, String)>,
    pub relations: Vec<Vec<Term>>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn is_vertex_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Int(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
}

fn tokenize(s: &str) -> Result<Vec<Token>, String> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Token::Int(text.parse().map_err(|_| format!("integer `{text}` is too large"))?));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(format!("unexpected character `{other}`")),
        }
    }
    Ok(out)
}

/// Parses `[-] term {(+|-) term}` with `term := [int *] ident {* ident}`.
pub fn parse_combination(s: &str) -> Result<Vec<Term>, String> {
    let tokens = tokenize(s)?;
    let mut terms = Vec::new();
    let mut pos = 0;
    let mut sign = 1;
    if tokens.first() == Some(&Token::Minus) {
        sign = -1;
        pos = 1;
    }
    loop {
        let mut coefficient = sign;
        if let Some(Token::Int(n)) = tokens.get(pos) {
            if tokens.get(pos + 1) != Some(&Token::Star) {
                return Err("a coefficient must be followed by `*`".into());
            }
            coefficient *= n;
            pos += 2;
        }
        let mut arrows = Vec::new();
        loop {
            match tokens.get(pos) {
                Some(Token::Ident(name)) => arrows.push(name.clone()),
                _ => return Err("expected an arrow name".into()),
            }
            pos += 1;
            if tokens.get(pos) == Some(&Token::Star) {
                pos += 1;
            } else {
                break;
            }
        }
        terms.push(Term { coefficient, arrows });
        match tokens.get(pos) {
            None => return Ok(terms),
            Some(Token::Plus) => sign = 1,
            Some(Token::Minus) => sign = -1,
            Some(_) => return Err("expected `+` or `-` between terms".into()),
        }
        pos += 1;
    }
}

pub fn format_combination(terms: &[Term]) -> String {
    let mut out = String::new();
    for (k, t) in terms.iter().enumerate() {
        let neg = t.coefficient < 0;
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let c = t.coefficient.unsigned_abs();
        if c != 1 {
            out.push_str(&format!("{c}*"));
        }
        out.push_str(&t.arrows.join("*"));
    }
    out
}

impl QuiverFile {
    pub fn parse(text: &str) -> CliResult<QuiverFile> {
        let mut field = None;
        let mut vertices = Vec::new();
        let mut arrows = Vec::new();
        let mut relations = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let err = |message: String| CliError::Parse { line, message };
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
            let rest = rest.trim();
            match keyword {
                "field" => {
                    if field.is_some() {
                        return Err(err("duplicate `field` line".into()));
                    }
                    let compact: String = rest.split_whitespace().collect();
                    field = Some(compact.parse::<ExactField>().map_err(|_| err(format!("unknown field `{rest}`")))?);
                }
                "vertex" => {
                    if !is_vertex_name(rest) {
                        return Err(err(format!("invalid vertex name `{rest}`")));
                    }
                    vertices.push(rest.to_string());
                }
                "arrow" => {
                    let (name, ends) =
                        rest.split_once(':').ok_or_else(|| err("expected `arrow <name>: <src> -> <tgt>`".into()))?;
                    let (src, tgt) =
                        ends.split_once("->").ok_or_else(|| err("expected `arrow <name>: <src> -> <tgt>`".into()))?;
                    let (name, src, tgt) = (name.trim(), src.trim(), tgt.trim());
                    if !is_identifier(name) {
                        return Err(err(format!("invalid arrow name `{name}`")));
                    }
                    if !is_vertex_name(src) || !is_vertex_name(tgt) {
                        return Err(err("invalid vertex name in arrow".into()));
                    }
                    arrows.push((name.to_string(), src.to_string(), tgt.to_string()));
                }
                "relation" => relations.push(parse_combination(rest).map_err(err)?),
                other => return Err(err(format!("unknown keyword `{other}`"))),
            }
        }
        let field = field.ok_or(CliError::Parse { line: 0, message: "missing `field` line".into() })?;
        if vertices.is_empty() {
            return Err(CliError::Parse { line: 0, message: "no vertices".into() });
        }
        Ok(QuiverFile { field, vertices, arrows, relations })
    }

    pub fn quiver(&self) -> CliResult<Quiver> {
        Ok(Quiver::new(&self.vertices, &self.arrows)?)
    }

    /// Builds the algebra, optionally over another field.
    pub fn algebra(&self, field: Option<ExactField>) -> CliResult<BasicAlgebra> {
        let field = field.unwrap_or(self.field);
        let q = self.quiver()?;
        let relations = self
            .relations
            .iter()
            .map(|terms| {
                let terms = terms
                    .iter()
                    .map(|t| Ok((field.from_i64(t.coefficient), term_path(&q, &t.arrows)?)))
                    .collect::<CliResult<Vec<(Scalar, Path)>>>()?;
                Ok(Relation { terms })
            })
            .collect::<CliResult<Vec<_>>>()?;
        Ok(BasicAlgebra::with_relations(q, field, relations)?)
    }

    /// The file describing an algebra whose relations have integer coefficients.
    pub fn from_algebra(a: &BasicAlgebra) -> CliResult<QuiverFile> {
        let q = a.quiver();
        let relations = a
            .relations()
            .iter()
            .map(|r| {
                r.terms
                    .iter()
                    .map(|(c, p)| {
                        let coefficient = integer_of(a.field(), c).ok_or_else(|| {
                            CliError::Usage(format!("coefficient {c} cannot be written as an integer"))
                        })?;
                        let arrows = p.arrows.iter().rev().map(|&k| q.arrow(k).name.clone()).collect();
                        Ok(Term { coefficient, arrows })
                    })
                    .collect::<CliResult<Vec<_>>>()
            })
            .collect::<CliResult<Vec<_>>>()?;
        Ok(QuiverFile {
            field: a.field(),
            vertices: q.vertices().to_vec(),
            arrows: q
                .arrows()
                .iter()
                .map(|x| (x.name.clone(), q.vertex_name(x.source).to_string(), q.vertex_name(x.target).to_string()))
                .collect(),
            relations,
        })
    }
}

/// Path for a product written right to left.
pub fn term_path(q: &Quiver, written: &[String]) -> CliResult<Path> {
    let traversal: Vec<&str> = written.iter().rev().map(String::as_str).collect();
    Ok(q.path(&traversal)?)
}

fn integer_of(field: ExactField, c: &Scalar) -> Option<i64> {
    let s = c.to_string();
    let n: i64 = s.parse().ok()?;
    match field {
        ExactField::Prime(p) if n as u64 > p / 2 => Some(n - p as i64),
        _ => Some(n),
    }
}

impl fmt::Display for QuiverFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.field {
            ExactField::Rationals => writeln!(f, "field Q")?,
            ExactField::Prime(p) => writeln!(f, "field F {p}")?,
        }
        for v in &self.vertices {
            writeln!(f, "vertex {v}")?;
        }
        for (name, s, t) in &self.arrows {
            writeln!(f, "arrow {name}: {s} -> {t}")?;
        }
        for r in &self.relations {
            writeln!(f, "relation {}", format_combination(r))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use qtilt::builtin;

    #[test]
    fn builtin_files_round_trip() {
        for f in [ExactField::Rationals, ExactField::Prime(101)] {
            for a in [builtin::algebra_r(f), builtin::algebra_s(f)] {
                let file = QuiverFile::from_algebra(&a).unwrap();
                let again = QuiverFile::parse(&file.to_string()).unwrap();
                assert_eq!(again, file);
                assert_eq!(again.algebra(None).unwrap(), a);
            }
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = QuiverFile::parse("field Q\nvertex 1\narrow a 1 -> 2\n").unwrap_err();
        assert!(matches!(e, CliError::Parse { line: 3, .. }));
        assert!(matches!(QuiverFile::parse(""), Err(CliError::Parse { line: 0, .. })));
        assert!(matches!(QuiverFile::parse("field F 6\nvertex 1"), Err(CliError::Parse { line: 1, .. })));
        assert!(matches!(QuiverFile::parse("field Q\nvertex 1\nrelation 2 a"), Err(CliError::Parse { line: 3, .. })));
    }

    #[test]
    fn relations_read_right_to_left() {
        let text = "field Q\nvertex 1\nvertex 2\nvertex 3\narrow a: 1 -> 2\narrow b: 2 -> 3\nrelation b*a\n";
        let a = QuiverFile::parse(text).unwrap().algebra(None).unwrap();
        assert_eq!(a.dim(), 5);
        let bad = "field Q\nvertex 1\nvertex 2\nvertex 3\narrow a: 1 -> 2\narrow b: 2 -> 3\nrelation a*b\n";
        assert!(QuiverFile::parse(bad).unwrap().algebra(None).is_err());
    }

    #[test]
    fn combinations() {
        let t = parse_combination("-2*b*a + c*a - d").unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[0], Term { coefficient: -2, arrows: vec!["b".into(), "a".into()] });
        assert_eq!(format_combination(&t), "-2*b*a + c*a - d");
        assert!(parse_combination("a +").is_err());
        assert!(parse_combination("a b").is_err());
    }

    fn arb_file() -> impl Strategy<Value = QuiverFile> {
        (1usize..6, prop::collection::vec((0usize..6, 0usize..6), 1..8), any::<bool>()).prop_flat_map(
            |(n, edges, rational)| {
                let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
                let arrows: Vec<(String, String, String)> = edges
                    .iter()
                    .enumerate()
                    .map(|(k, (s, t))| (format!("x{k}"), vertices[s % n].clone(), vertices[t % n].clone()))
                    .collect();
                let names: Vec<String> = arrows.iter().map(|a| a.0.clone()).collect();
                let term = (-5i64..=5, prop::collection::vec(prop::sample::select(names.clone()), 1..4))
                    .prop_filter("nonzero", |(c, _)| *c != 0)
                    .prop_map(|(coefficient, arrows)| Term { coefficient, arrows });
                let relations = prop::collection::vec(prop::collection::vec(term, 1..4), 0..3);
                let field = if rational { ExactField::Rationals } else { ExactField::Prime(101) };
                relations.prop_map(move |relations| QuiverFile {
                    field,
                    vertices: vertices.clone(),
                    arrows: arrows.clone(),
                    relations,
                })
            },
        )
    }

    proptest! {
        #[test]
        fn parse_serialize_round_trip(file in arb_file()) {
            let text = file.to_string();
            prop_assert_eq!(QuiverFile::parse(&text).unwrap(), file);
        }
    }
}
