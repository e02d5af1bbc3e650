//! JSON file formats.
//!
//! Every scalar is a string in the syntax of [`Scalar::parse`]. Tensors are
//! nested `dim × dim × dim` arrays with `c[i][j][k]` the coefficient of `e_k`
//! in `e_i · e_j` (zero-based). Matrices are lists of rows in the
//! column-as-image convention: entry `[i][j]` is the `e_i` coefficient of the
//! image of `e_j`. Violations in reports use one-based indices.
//!
//! [`to_canonical_string`] is the only writer, so files it produces parse and
//! re-serialize byte-identically.

use std::fs;
use std::path::Path;

use serde_json::{Map, Value};

use crate::algebra::{Algebra, BilinearOp, TwoOpAlgebra};
use crate::cocycle::{BilinearForm, DoubleConstructionWitness};
use crate::error::{Error, Result};
use crate::identities::IdentityReport;
use crate::matrix::Matrix;
use crate::representations::Bimodule;
use crate::scalar::{Field, Scalar};
use crate::subspace::Subspace;

pub const COLUMN_CONVENTION: &str = "column-as-image";

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Document {
    Algebra(Algebra),
    Rhizaform(TwoOpAlgebra),
    Matrix(Matrix),
    Bimodule(Bimodule),
    Form(BilinearForm),
    Subspace(Subspace),
    Double(DoubleConstructionWitness),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Algebra(_) => "algebra",
            Document::Rhizaform(_) => "rhizaform",
            Document::Matrix(_) => "matrix",
            Document::Bimodule(_) => "bimodule",
            Document::Form(_) => "form",
            Document::Subspace(_) => "subspace",
            Document::Double(_) => "double-construction",
        }
    }
}

/// A parsed document with its declared field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Loaded {
    pub doc: Document,
    pub field: Field,
}

struct Reader<'a> {
    obj: &'a Map<String, Value>,
    field: Field,
}

fn path_index(path: &str, i: usize) -> String {
    format!("{path}[{i}]")
}

fn as_array<'v>(v: &'v Value, path: &str) -> Result<&'v Vec<Value>> {
    v.as_array().ok_or_else(|| Error::parse(path, "expected an array"))
}

impl<'a> Reader<'a> {
    fn get(&self, key: &str) -> Result<&'a Value> {
        self.obj.get(key).ok_or_else(|| Error::parse(key, "missing field"))
    }

    fn count(&self, key: &str) -> Result<usize> {
        let v = self.get(key)?;
        v.as_u64()
            .map(|n| n as usize)
            .ok_or_else(|| Error::parse(key, "expected a non-negative integer"))
    }

    fn string(&self, key: &str) -> Result<&'a str> {
        self.get(key)?.as_str().ok_or_else(|| Error::parse(key, "expected a string"))
    }

    fn scalar(&self, v: &Value, path: &str) -> Result<Scalar> {
        let s = v.as_str().ok_or_else(|| Error::parse(path, "expected a scalar string"))?;
        Scalar::parse(s, self.field).map_err(|m| Error::parse(path, m))
    }

    fn vector(&self, v: &Value, path: &str, len: usize) -> Result<Vec<Scalar>> {
        let arr = as_array(v, path)?;
        if arr.len() != len {
            return Err(Error::Shape(format!("{path} has length {}, expected {len}", arr.len())));
        }
        arr.iter().enumerate().map(|(i, x)| self.scalar(x, &path_index(path, i))).collect()
    }

    fn rows(&self, v: &Value, path: &str, rows: Option<usize>, cols: usize) -> Result<Vec<Vec<Scalar>>> {
        let arr = as_array(v, path)?;
        if let Some(r) = rows {
            if arr.len() != r {
                return Err(Error::Shape(format!("{path} has {} rows, expected {r}", arr.len())));
            }
        }
        arr.iter().enumerate().map(|(i, x)| self.vector(x, &path_index(path, i), cols)).collect()
    }

    fn matrix(&self, v: &Value, path: &str, rows: usize, cols: usize) -> Result<Matrix> {
        Matrix::from_rows(self.rows(v, path, Some(rows), cols)?, cols)
    }

    fn tensor(&self, key: &str, dim: usize) -> Result<BilinearOp> {
        let v = self.get(key)?;
        let arr = as_array(v, key)?;
        if arr.len() != dim {
            return Err(Error::Shape(format!("{key} has length {}, expected {dim}", arr.len())));
        }
        let nested = arr
            .iter()
            .enumerate()
            .map(|(i, x)| self.rows(x, &path_index(key, i), Some(dim), dim))
            .collect::<Result<Vec<_>>>()?;
        BilinearOp::from_nested(dim, nested)
    }

    fn matrices(&self, key: &str, count: usize, m: usize) -> Result<Vec<Matrix>> {
        let arr = as_array(self.get(key)?, key)?;
        if arr.len() != count {
            return Err(Error::Shape(format!("{key} has {} matrices, expected {count}", arr.len())));
        }
        arr.iter().enumerate().map(|(i, x)| self.matrix(x, &path_index(key, i), m, m)).collect()
    }

    fn subspace(&self, key: &str, ambient: usize) -> Result<Subspace> {
        Subspace::span(ambient, &self.rows(self.get(key)?, key, None, ambient)?)
    }

    fn only_keys(&self, allowed: &[&str]) -> Result<()> {
        for k in self.obj.keys() {
            if !allowed.contains(&k.as_str()) {
                return Err(Error::parse(k.as_str(), "unknown field"));
            }
        }
        Ok(())
    }
}

/// Parses any document kind.
pub fn parse_document(text: &str) -> Result<Loaded> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| {
            let msg = e.to_string();
            let msg = msg.rsplit_once(" at line ").map_or(msg.as_str(), |(m, _)| m).to_string();
            Error::parse(format!("line {} column {}", e.line(), e.column()), msg)
        })?;
    let obj = value.as_object().ok_or_else(|| Error::parse("$", "expected an object"))?;
    let field_str = obj
        .get("field")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::parse("field", "missing or not a string"))?;
    let field: Field = field_str.parse()?;
    let r = Reader { obj, field };
    let kind = r.string("kind")?;
    let doc = match kind {
        "algebra" => {
            r.only_keys(&["kind", "field", "dim", "mul"])?;
            let dim = r.count("dim")?;
            Document::Algebra(Algebra::new(r.tensor("mul", dim)?))
        }
        "rhizaform" => {
            r.only_keys(&["kind", "field", "dim", "succ", "prec"])?;
            let dim = r.count("dim")?;
            Document::Rhizaform(TwoOpAlgebra::new(r.tensor("succ", dim)?, r.tensor("prec", dim)?)?)
        }
        "matrix" => {
            r.only_keys(&["kind", "field", "convention", "rows", "cols", "entries"])?;
            let conv = r.string("convention")?;
            if conv != COLUMN_CONVENTION {
                return Err(Error::parse("convention", format!("expected `{COLUMN_CONVENTION}`")));
            }
            let (rows, cols) = (r.count("rows")?, r.count("cols")?);
            Document::Matrix(r.matrix(r.get("entries")?, "entries", rows, cols)?)
        }
        "bimodule" => {
            r.only_keys(&["kind", "field", "dim", "module_dim", "mul", "l", "r"])?;
            let dim = r.count("dim")?;
            let m = r.count("module_dim")?;
            let base = Algebra::new(r.tensor("mul", dim)?);
            Document::Bimodule(Bimodule::new(base, m, r.matrices("l", dim, m)?, r.matrices("r", dim, m)?)?)
        }
        "form" => {
            r.only_keys(&["kind", "field", "dim", "gram"])?;
            let dim = r.count("dim")?;
            Document::Form(BilinearForm::new(r.matrix(r.get("gram")?, "gram", dim, dim)?)?)
        }
        "subspace" => {
            r.only_keys(&["kind", "field", "ambient", "basis"])?;
            let ambient = r.count("ambient")?;
            Document::Subspace(r.subspace("basis", ambient)?)
        }
        "double-construction" => {
            r.only_keys(&["kind", "field", "dim", "mul", "part_a", "part_dual", "gram", "candidate"])?;
            let dim = r.count("dim")?;
            let ambient = Algebra::new(r.tensor("mul", dim)?);
            let form = BilinearForm::new(r.matrix(r.get("gram")?, "gram", dim, dim)?)?;
            let mut w =
                DoubleConstructionWitness::new(ambient, r.subspace("part_a", dim)?, r.subspace("part_dual", dim)?, form)?;
            w.candidate = r.string("candidate")?.to_string();
            Document::Double(w)
        }
        other => return Err(Error::parse("kind", format!("unknown kind `{other}`"))),
    };
    Ok(Loaded { doc, field })
}

pub fn read_document(path: &Path) -> Result<Loaded> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })?;
    parse_document(&text)
}

pub fn write_document(path: &Path, doc: &Document, field: Field) -> Result<()> {
    fs::write(path, to_canonical_string(&document_value(doc, field)))
        .map_err(|source| Error::Io { path: path.display().to_string(), source })
}

/// `Qi` if anything in `scalars` is non-real, otherwise `field`.
pub fn effective_field<'a>(field: Field, scalars: impl IntoIterator<Item = &'a Scalar>) -> Field {
    if field == Field::Qi || scalars.into_iter().all(Scalar::is_real) {
        field
    } else {
        Field::Qi
    }
}

pub fn scalar_value(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

pub fn vector_value(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_value).collect())
}

pub fn matrix_value(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector_value(m.row(i))).collect())
}

pub fn tensor_value(op: &BilinearOp) -> Value {
    let n = op.dim();
    Value::Array(
        (0..n)
            .map(|i| Value::Array((0..n).map(|j| vector_value(op.product(i, j))).collect()))
            .collect(),
    )
}

fn header(kind: &str, field: Field) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("kind".into(), Value::from(kind));
    m.insert("field".into(), Value::from(field.as_str()));
    m
}

fn doc_scalars(doc: &Document) -> Vec<&Scalar> {
    match doc {
        Document::Algebra(a) => a.mul.entries().iter().collect(),
        Document::Rhizaform(t) => t.succ.entries().iter().chain(t.prec.entries()).collect(),
        Document::Matrix(m) => m.entries().iter().collect(),
        Document::Bimodule(b) => b
            .base
            .mul
            .entries()
            .iter()
            .chain(b.l.iter().chain(&b.r).flat_map(|m| m.entries()))
            .collect(),
        Document::Form(f) => f.gram().entries().iter().collect(),
        Document::Subspace(s) => s.basis_matrix().entries().iter().collect(),
        Document::Double(w) => w
            .ambient
            .mul
            .entries()
            .iter()
            .chain(w.form.gram().entries())
            .chain(w.part_a.basis_matrix().entries())
            .chain(w.part_dual.basis_matrix().entries())
            .collect(),
    }
}

/// JSON value of a document; the field is widened to `Qi` when needed.
pub fn document_value(doc: &Document, field: Field) -> Value {
    let field = effective_field(field, doc_scalars(doc));
    let mut m = header(doc.kind(), field);
    match doc {
        Document::Algebra(a) => {
            m.insert("dim".into(), Value::from(a.dim()));
            m.insert("mul".into(), tensor_value(&a.mul));
        }
        Document::Rhizaform(t) => {
            m.insert("dim".into(), Value::from(t.dim()));
            m.insert("succ".into(), tensor_value(&t.succ));
            m.insert("prec".into(), tensor_value(&t.prec));
        }
        Document::Matrix(x) => {
            m.insert("convention".into(), Value::from(COLUMN_CONVENTION));
            m.insert("rows".into(), Value::from(x.rows()));
            m.insert("cols".into(), Value::from(x.cols()));
            m.insert("entries".into(), matrix_value(x));
        }
        Document::Bimodule(b) => {
            m.insert("dim".into(), Value::from(b.base_dim()));
            m.insert("module_dim".into(), Value::from(b.module_dim));
            m.insert("mul".into(), tensor_value(&b.base.mul));
            m.insert("l".into(), Value::Array(b.l.iter().map(matrix_value).collect()));
            m.insert("r".into(), Value::Array(b.r.iter().map(matrix_value).collect()));
        }
        Document::Form(f) => {
            m.insert("dim".into(), Value::from(f.dim()));
            m.insert("gram".into(), matrix_value(f.gram()));
        }
        Document::Subspace(s) => {
            m.insert("ambient".into(), Value::from(s.ambient()));
            m.insert("basis".into(), matrix_value(s.basis_matrix()));
        }
        Document::Double(w) => {
            m.insert("dim".into(), Value::from(w.ambient.dim()));
            m.insert("mul".into(), tensor_value(&w.ambient.mul));
            m.insert("part_a".into(), matrix_value(w.part_a.basis_matrix()));
            m.insert("part_dual".into(), matrix_value(w.part_dual.basis_matrix()));
            m.insert("gram".into(), matrix_value(w.form.gram()));
            m.insert("candidate".into(), Value::from(w.candidate.as_str()));
        }
    }
    Value::Object(m)
}

/// Violations with one-based indices.
pub fn report_value(report: &IdentityReport) -> Value {
    let mut m = Map::new();
    m.insert("axiom".into(), Value::from(report.axiom.as_str()));
    m.insert("pass".into(), Value::from(report.pass()));
    let vs = report
        .violations
        .iter()
        .map(|v| {
            let mut o = Map::new();
            o.insert("axiom".into(), Value::from(v.axiom.as_str()));
            o.insert("indices".into(), Value::Array(v.indices.iter().map(|i| Value::from(i + 1)).collect()));
            o.insert("residual".into(), vector_value(&v.residual));
            Value::Object(o)
        })
        .collect();
    m.insert("violations".into(), Value::Array(vs));
    Value::Object(m)
}

fn depth(v: &Value) -> usize {
    match v {
        Value::Array(a) => 1 + a.iter().map(depth).max().unwrap_or(0),
        Value::Object(_) => usize::MAX / 2,
        _ => 0,
    }
}

fn write_value(v: &Value, indent: usize, in_array: bool, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(a) if a.is_empty() => out.push_str("[]"),
        Value::Array(a) => {
            let d = depth(v);
            if d <= 1 || (d == 2 && in_array) {
                out.push('[');
                for (i, x) in a.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write_value(x, indent, true, out);
                }
                out.push(']');
            } else {
                out.push_str("[\n");
                for (i, x) in a.iter().enumerate() {
                    out.push_str(&pad(indent + 1));
                    write_value(x, indent + 1, true, out);
                    if i + 1 < a.len() {
                        out.push(',');
                    }
                    out.push('\n');
                }
                out.push_str(&pad(indent));
                out.push(']');
            }
        }
        Value::Object(o) if o.is_empty() => out.push_str("{}"),
        Value::Object(o) => {
            out.push_str("{\n");
            for (i, (k, x)) in o.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(x, indent + 1, false, out);
                if i + 1 < o.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        other => out.push_str(&other.to_string()),
    }
}

/// Deterministic pretty printer: objects one key per line, vectors inline,
/// matrices one row per line, tensor slices inline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut out = String::new();
    write_value(v, 0, false, &mut out);
    out.push('\n');
    out
}
