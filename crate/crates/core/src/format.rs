//! TOML files for algebras and modules.
//!
//! Algebra file:
//!
//! ```toml
//! field = "GF(32003)"        # optional; "Q" for the rationals
//! max_path_length = 12
//! vertices = ["1", "2"]
//!
//! [[arrows]]
//! name = "a"
//! from = "1"
//! to = "2"
//!
//! [[relations]]
//! terms = [{ coeff = "1", path = ["a", "b"] }]
//! ```
//!
//! Module file:
//!
//! ```toml
//! algebra = "a2.alg"         # optional, relative to the module file
//!
//! [dims]
//! "1" = 1
//! "2" = 1
//!
//! [arrows]
//! a = [["1"]]                # dims[from] rows of dims[to] entries
//! ```
//!
//! Scalars are strings: integers or `p/q`. Missing vertices have dimension
//! zero and missing arrows act by zero.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::Range;

use serde::Deserialize;
use thiserror::Error;
use toml::Spanned;

use crate::algebra::{AlgebraError, BoundQuiverAlgebra, Relation};
use crate::linalg::{Field, FieldSpec, Matrix};
use crate::quiver::Quiver;
use crate::rep::{Alg, Representation, Violation};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}, {field}: {message}")]
    Field {
        line: usize,
        field: String,
        message: String,
    },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("relation {index} ({relation}) does not hold: it evaluates to a non-zero matrix")]
    Relation { index: usize, relation: String },
}

struct Lines(Vec<usize>);

impl Lines {
    fn new(text: &str) -> Self {
        let mut starts = vec![0];
        starts.extend(text.match_indices('\n').map(|(i, _)| i + 1));
        Lines(starts)
    }

    /// One-based line and column of a byte offset.
    fn locate(&self, offset: usize) -> (usize, usize) {
        let line = self.0.partition_point(|&s| s <= offset);
        (line, offset - self.0[line - 1] + 1)
    }

    fn err(
        &self,
        span: Range<usize>,
        field: impl Into<String>,
        message: impl ToString,
    ) -> FormatError {
        FormatError::Field {
            line: self.locate(span.start).0,
            field: field.into(),
            message: message.to_string(),
        }
    }
}

fn syntax(text: &str, e: toml::de::Error) -> FormatError {
    let (line, column) = match e.span() {
        Some(span) => Lines::new(text).locate(span.start),
        None => (1, 1),
    };
    FormatError::Syntax {
        line,
        column,
        message: e.message().trim().to_string(),
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrowEntry {
    name: Spanned<String>,
    from: Spanned<String>,
    to: Spanned<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermEntry {
    coeff: Spanned<String>,
    path: Spanned<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RelationEntry {
    terms: Spanned<Vec<TermEntry>>,
}

/// A parsed but not yet validated algebra file.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    field: Option<Spanned<String>>,
    max_path_length: Spanned<usize>,
    vertices: Vec<Spanned<String>>,
    #[serde(default)]
    arrows: Vec<ArrowEntry>,
    #[serde(default)]
    relations: Vec<RelationEntry>,
    #[serde(skip)]
    lines: Vec<usize>,
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let mut file: AlgebraFile = toml::from_str(text).map_err(|e| syntax(text, e))?;
        file.lines = Lines::new(text).0;
        Ok(file)
    }

    fn lines(&self) -> Lines {
        if self.lines.is_empty() {
            Lines(vec![0])
        } else {
            Lines(self.lines.clone())
        }
    }

    /// The field named in the file, if any.
    pub fn field_spec(&self) -> Result<Option<FieldSpec>, FormatError> {
        match &self.field {
            None => Ok(None),
            Some(s) => s
                .get_ref()
                .parse::<FieldSpec>()
                .map(Some)
                .map_err(|e| self.lines().err(s.span(), "field", e)),
        }
    }

    pub fn build<F: Field>(&self, field: F) -> Result<BoundQuiverAlgebra<F>, FormatError> {
        let lines = self.lines();
        let mut q = Quiver::default();
        for (k, v) in self.vertices.iter().enumerate() {
            q.add_vertex(v.get_ref())
                .map_err(|e| lines.err(v.span(), format!("vertices[{k}]"), e))?;
        }
        for (k, a) in self.arrows.iter().enumerate() {
            for (end, label) in [("from", &a.from), ("to", &a.to)] {
                if q.vertex(label.get_ref()).is_err() {
                    return Err(lines.err(
                        label.span(),
                        format!("arrows[{k}].{end}"),
                        format!("unknown vertex {:?}", label.get_ref()),
                    ));
                }
            }
            q.add_arrow(a.name.get_ref(), a.from.get_ref(), a.to.get_ref())
                .map_err(|e| lines.err(a.name.span(), format!("arrows[{k}].name"), e))?;
        }
        let mut relations = Vec::with_capacity(self.relations.len());
        for (k, r) in self.relations.iter().enumerate() {
            if r.terms.get_ref().is_empty() {
                return Err(lines.err(
                    r.terms.span(),
                    format!("relations[{k}]"),
                    "relation has no terms",
                ));
            }
            let mut terms = Vec::new();
            for (t, term) in r.terms.get_ref().iter().enumerate() {
                let at = |what: &str| format!("relations[{k}].terms[{t}].{what}");
                let c = field
                    .parse(term.coeff.get_ref())
                    .map_err(|e| lines.err(term.coeff.span(), at("coeff"), e))?;
                let names = term.path.get_ref();
                if names.len() < 2 {
                    return Err(lines.err(
                        term.path.span(),
                        at("path"),
                        "relation paths must have length at least 2",
                    ));
                }
                let p = q
                    .path_from_names(names)
                    .map_err(|e| lines.err(term.path.span(), at("path"), e))?;
                terms.push((c, p));
            }
            relations.push(Relation::new(terms));
        }
        Ok(BoundQuiverAlgebra::new(
            field,
            q,
            relations,
            *self.max_path_length.get_ref(),
        )?)
    }
}

/// Parses and builds an algebra over `field`, ignoring the file's own field.
pub fn parse_algebra<F: Field>(text: &str, field: F) -> Result<BoundQuiverAlgebra<F>, FormatError> {
    AlgebraFile::parse(text)?.build(field)
}

fn quote(s: &str) -> String {
    toml::Value::String(s.to_string()).to_string()
}

fn quote_list<'a>(items: impl IntoIterator<Item = &'a str>) -> String {
    let parts: Vec<String> = items.into_iter().map(quote).collect();
    format!("[{}]", parts.join(", "))
}

pub fn serialize_algebra<F: Field>(alg: &BoundQuiverAlgebra<F>) -> String {
    let f = alg.field();
    let q = alg.quiver();
    let mut out = String::new();
    writeln!(out, "field = {}", quote(&f.spec().to_string())).unwrap();
    writeln!(out, "max_path_length = {}", alg.max_path_length()).unwrap();
    writeln!(
        out,
        "vertices = {}",
        quote_list(q.vertices().iter().map(String::as_str))
    )
    .unwrap();
    for a in q.arrows() {
        writeln!(out, "\n[[arrows]]").unwrap();
        writeln!(out, "name = {}", quote(&a.name)).unwrap();
        writeln!(out, "from = {}", quote(q.vertex_label(a.source))).unwrap();
        writeln!(out, "to = {}", quote(q.vertex_label(a.target))).unwrap();
    }
    for r in alg.relations() {
        writeln!(out, "\n[[relations]]").unwrap();
        let terms: Vec<String> = r
            .terms
            .iter()
            .map(|(c, p)| {
                let names = p.arrows.iter().map(|&a| q.arrow(a).name.as_str());
                format!(
                    "{{ coeff = {}, path = {} }}",
                    quote(&f.format(c)),
                    quote_list(names)
                )
            })
            .collect();
        writeln!(out, "terms = [{}]", terms.join(", ")).unwrap();
    }
    out
}

/// A parsed but not yet validated module file.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    /// Path of the algebra file, relative to the module file.
    pub algebra: Option<String>,
    #[serde(default)]
    dims: BTreeMap<String, Spanned<usize>>,
    #[serde(default)]
    arrows: BTreeMap<String, Spanned<Vec<Vec<String>>>>,
    #[serde(skip)]
    lines: Vec<usize>,
}

impl ModuleFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let mut file: ModuleFile = toml::from_str(text).map_err(|e| syntax(text, e))?;
        file.lines = Lines::new(text).0;
        Ok(file)
    }

    fn lines(&self) -> Lines {
        if self.lines.is_empty() {
            Lines(vec![0])
        } else {
            Lines(self.lines.clone())
        }
    }

    pub fn build<F: Field>(&self, alg: &Alg<F>) -> Result<Representation<F>, FormatError> {
        let lines = self.lines();
        let f = alg.field();
        let q = alg.quiver();
        let mut dims = vec![0; q.num_vertices()];
        for (label, d) in &self.dims {
            let v = q
                .vertex(label)
                .map_err(|e| lines.err(d.span(), format!("dims.{label}"), e))?;
            dims[v] = *d.get_ref();
        }
        let mut maps: Vec<Matrix<F>> = q
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(f, dims[a.source], dims[a.target]))
            .collect();
        for (name, rows) in &self.arrows {
            let at = format!("arrows.{name}");
            let a = q
                .arrow_by_name(name)
                .map_err(|e| lines.err(rows.span(), at.clone(), e))?;
            let arrow = q.arrow(a);
            let (r, c) = (dims[arrow.source], dims[arrow.target]);
            let data = rows.get_ref();
            if data.len() != r || data.iter().any(|row| row.len() != c) {
                return Err(lines.err(
                    rows.span(),
                    at,
                    format!(
                        "expected a {r}x{c} matrix (dimensions at {} and {})",
                        q.vertex_label(arrow.source),
                        q.vertex_label(arrow.target)
                    ),
                ));
            }
            let mut entries = Vec::with_capacity(r * c);
            for s in data.iter().flatten() {
                entries.push(
                    f.parse(s)
                        .map_err(|e| lines.err(rows.span(), at.clone(), e))?,
                );
            }
            maps[a] = Matrix::from_vec(f, r, c, entries);
        }
        let m = Representation::from_parts(alg.clone(), dims, maps);
        match m.validate() {
            Ok(()) => Ok(m),
            Err(Violation::Relation { index, .. }) => Err(FormatError::Relation {
                index,
                relation: relation_text(alg, index),
            }),
            Err(other) => Err(FormatError::Field {
                line: 1,
                field: "arrows".into(),
                message: other.to_string(),
            }),
        }
    }
}

pub fn parse_module<F: Field>(text: &str, alg: &Alg<F>) -> Result<Representation<F>, FormatError> {
    ModuleFile::parse(text)?.build(alg)
}

/// A relation written as `c*path + c*path`.
pub fn relation_text<F: Field>(alg: &BoundQuiverAlgebra<F>, index: usize) -> String {
    let f = alg.field();
    let q = alg.quiver();
    let terms: Vec<String> = alg.relations()[index]
        .terms
        .iter()
        .map(|(c, p)| {
            let path = q.path_to_string(p);
            if f.is_one(c) {
                path
            } else {
                format!("{}*{path}", f.format(c))
            }
        })
        .collect();
    terms.join(" + ")
}

pub fn serialize_module<F: Field>(m: &Representation<F>, algebra: Option<&str>) -> String {
    let alg = m.algebra();
    let f = m.field();
    let q = alg.quiver();
    let mut out = String::new();
    if let Some(path) = algebra {
        writeln!(out, "algebra = {}\n", quote(path)).unwrap();
    }
    writeln!(out, "[dims]").unwrap();
    for (v, label) in q.vertices().iter().enumerate() {
        writeln!(out, "{} = {}", quote(label), m.dim_at(v)).unwrap();
    }
    writeln!(out, "\n[arrows]").unwrap();
    for (a, arrow) in q.arrows().iter().enumerate() {
        let map = m.arrow_map(a);
        if map.is_zero() {
            continue;
        }
        let rows: Vec<String> = (0..map.rows())
            .map(|r| {
                quote_list(
                    map.row(r)
                        .iter()
                        .map(|x| f.format(x))
                        .collect::<Vec<_>>()
                        .iter()
                        .map(String::as_str),
                )
            })
            .collect();
        writeln!(out, "{} = [{}]", quote(&arrow.name), rows.join(", ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::tests::{a2, example_algebra};
    use crate::linalg::{PrimeField, Rationals};

    const A2: &str = r#"
max_path_length = 4
vertices = ["1", "2"]

[[arrows]]
name = "a"
from = "1"
to = "2"
"#;

    #[test]
    fn round_trip_example() {
        for alg in [example_algebra(PrimeField::default())] {
            let text = serialize_algebra(&alg);
            let back = parse_algebra(&text, PrimeField::default()).unwrap();
            assert_eq!(back, alg);
            assert_eq!(back.basis(), alg.basis());
            for i in 0..alg.dim() {
                for j in 0..alg.dim() {
                    assert_eq!(back.product(i, j), alg.product(i, j));
                }
            }
            assert_eq!(serialize_algebra(&back), text);
        }
        let q = example_algebra(Rationals);
        let text = serialize_algebra(&q);
        assert!(text.starts_with("field = \"Q\""));
        assert!(text.contains("coeff = \"-1\""));
        let file = AlgebraFile::parse(&text).unwrap();
        assert_eq!(file.field_spec().unwrap(), Some(FieldSpec::Rationals));
        assert_eq!(file.build(Rationals).unwrap().dim(), 13);
    }

    #[test]
    fn located_errors() {
        let f = Rationals;
        let dangling = A2.replace("to = \"2\"", "to = \"4\"");
        match parse_algebra(&dangling, f) {
            Err(FormatError::Field { line, field, .. }) => {
                assert_eq!((line, field.as_str()), (8, "arrows[0].to"));
            }
            other => panic!("{other:?}"),
        }
        let short = format!("{A2}\n[[relations]]\nterms = [{{ coeff = \"1\", path = [\"a\"] }}]\n");
        match parse_algebra(&short, f) {
            Err(FormatError::Field {
                line,
                field,
                message,
            }) => {
                assert_eq!(line, 11);
                assert_eq!(field, "relations[0].terms[0].path");
                assert!(message.contains("length at least 2"));
            }
            other => panic!("{other:?}"),
        }
        let bad_scalar =
            format!("{A2}\n[[relations]]\nterms = [{{ coeff = \"x\", path = [\"a\", \"a\"] }}]\n");
        assert!(matches!(
            parse_algebra(&bad_scalar, f),
            Err(FormatError::Field { .. })
        ));
        let dup = A2.replace("[\"1\", \"2\"]", "[\"1\", \"1\"]");
        assert!(matches!(
            parse_algebra(&dup, f),
            Err(FormatError::Field { line: 3, .. })
        ));
        match parse_algebra("vertices = [\"1\"\nmax_path_length = 2", f) {
            Err(FormatError::Syntax { line, .. }) => assert!(line >= 1),
            other => panic!("{other:?}"),
        }
        let tight = A2.replace("max_path_length = 4", "max_path_length = 1");
        assert!(matches!(
            parse_algebra(&tight, f),
            Err(FormatError::Algebra(AlgebraError::BoundTooSmall { .. }))
        ));
        assert!(matches!(
            AlgebraFile::parse(&A2.replace(
                "max_path_length = 4",
                "max_path_length = 4\nfield = \"GF(4)\""
            ))
            .unwrap()
            .field_spec(),
            Err(FormatError::Field { .. })
        ));
    }

    #[test]
    fn modules() {
        let alg = Arc::new(parse_algebra(A2, Rationals).unwrap());
        assert_eq!(alg.basis(), a2(Rationals).basis());
        let p1 = "[dims]\n\"1\" = 1\n\"2\" = 1\n[arrows]\na = [[\"2/3\"]]\n";
        let m = parse_module(p1, &alg).unwrap();
        assert_eq!(m.dims(), &[1, 1]);
        let text = serialize_module(&m, Some("a2.alg"));
        let file = ModuleFile::parse(&text).unwrap();
        assert_eq!(file.algebra.as_deref(), Some("a2.alg"));
        assert_eq!(file.build(&alg).unwrap(), m);

        let s1 = parse_module("[dims]\n\"1\" = 1\n", &alg).unwrap();
        assert_eq!(s1, Representation::simple(&alg, 0).unwrap());

        match parse_module(
            "[dims]\n\"1\" = 1\n\"2\" = 1\n[arrows]\na = [[\"1\", \"0\"]]\n",
            &alg,
        ) {
            Err(FormatError::Field { line, field, .. }) => {
                assert_eq!((line, field.as_str()), (5, "arrows.a"))
            }
            other => panic!("{other:?}"),
        }
        assert!(parse_module("[dims]\n\"3\" = 1\n", &alg).is_err());

        let d = Arc::new(crate::algebra::tests::dual_numbers(Rationals));
        let x = d.quiver().arrow(0).name.clone();
        match parse_module(
            &format!("[dims]\n\"1\" = 1\n[arrows]\n{x} = [[\"1\"]]\n"),
            &d,
        ) {
            Err(FormatError::Relation { index, relation }) => {
                assert_eq!(index, 0);
                assert_eq!(relation, format!("{x}*{x}"));
            }
            other => panic!("{other:?}"),
        }
    }
}
