use std::path::Path;

use rhiza::algebra::{circ_operation, jj_bracket, sum_operation};
use rhiza::classify::{canon2, classify2, iso2, representative, succ_variable_names, Iso2, ABELIAN, NONABELIAN};
use rhiza::cocycle::{build_double, check_connes_cocycle, check_double, cocycle_induce, BilinearForm};
use rhiza::identities::{
    check_anti_assoc_admissible, check_anti_associative, check_jacobi_jordan, check_pre_jacobi_jordan,
    check_rhizaform,
};
use rhiza::io::{document_value, matrix_value, read_document, report_value, to_canonical_string, write_document, Document};
use rhiza::operators::{check_o_operator, check_rota_baxter, induce_on_module, rb_induce, rb_search, OOperator};
use rhiza::poly::Poly;
use rhiza::representations::{check_bimodule, hat_double, semidirect_product, Bimodule};
use rhiza::structure::{center, center_algebra, is_ideal, is_ideal_algebra, quotient_by_center, series, SeriesKind, SERIES_CAP};
use rhiza::{Algebra, BilinearOp, Convention, Error, Field, IdentityReport, Matrix, Result, Subspace, TwoOpAlgebra};
use serde_json::{Map, Value};

use crate::{
    Axiom, BimoduleCommand, Cli, CocycleCommand, Command, ConventionArg, DerivedOp, InduceCommand, OopCommand, Output,
    RbCommand, SeriesArg,
};

type Report = Map<String, Value>;

/// Runs a parsed command, returning the canonical report text and exit code.
pub fn run(cli: &Cli, argv: &[String]) -> (String, u8) {
    let mut report = Report::new();
    report.insert("command".into(), Value::from(command_name(&cli.command)));
    report.insert("argv".into(), Value::Array(argv.iter().map(|a| Value::from(a.as_str())).collect()));
    let code = match execute(cli, &mut report) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("rhiza: {e}");
            let mut err = Report::new();
            err.insert("kind".into(), Value::from(error_kind(&e)));
            err.insert("message".into(), Value::from(e.to_string()));
            report.insert("error".into(), Value::Object(err));
            2
        }
    };
    (to_canonical_string(&Value::Object(report)), code)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Derive { .. } => "derive",
        Command::Bimodule(BimoduleCommand::Check { .. }) => "bimodule check",
        Command::Semidirect { .. } => "semidirect",
        Command::Double { .. } => "double",
        Command::Oop(OopCommand::Verify { .. }) => "oop verify",
        Command::Rb(RbCommand::Verify { .. }) => "rb verify",
        Command::Rb(RbCommand::Search { .. }) => "rb search",
        Command::Induce(InduceCommand::Rb { .. }) => "induce rb",
        Command::Induce(InduceCommand::Oop { .. }) => "induce oop",
        Command::Induce(InduceCommand::Cocycle { .. }) => "induce cocycle",
        Command::Cocycle(CocycleCommand::Check { .. }) => "cocycle check",
        Command::DoubleConstruct { .. } => "double-construct",
        Command::Series { .. } => "series",
        Command::Center { .. } => "center",
        Command::Ideal { .. } => "ideal",
        Command::QuotientCenter { .. } => "quotient-center",
        Command::Classify2 => "classify2",
        Command::Canon2 { .. } => "canon2",
        Command::Iso2 { .. } => "iso2",
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::DivisionByZero => "division-by-zero",
        Error::DimensionMismatch(_) => "dimension-mismatch",
        Error::SingularMatrix => "singular-matrix",
        Error::SingularForm => "singular-form",
        Error::Precondition(_) => "precondition",
        Error::IllDefined(_) => "ill-defined",
        Error::PostconditionFailed(_) => "postcondition",
        Error::NoCandidate => "no-candidate",
        Error::CenterMismatch { .. } => "center-mismatch",
        Error::Parse { .. } => "parse",
        Error::Shape(_) => "shape",
        Error::Io { .. } => "io",
    }
}

fn wrong_kind(path: &Path, expected: &str, doc: &Document) -> Error {
    Error::parse(path.display().to_string(), format!("expected kind `{expected}`, found `{}`", doc.kind()))
}

fn load_algebra(path: &Path) -> Result<(Algebra, Field)> {
    let l = read_document(path)?;
    match l.doc {
        Document::Algebra(a) => Ok((a, l.field)),
        d => Err(wrong_kind(path, "algebra", &d)),
    }
}

fn load_rhizaform(path: &Path) -> Result<(TwoOpAlgebra, Field)> {
    let l = read_document(path)?;
    match l.doc {
        Document::Rhizaform(t) => Ok((t, l.field)),
        d => Err(wrong_kind(path, "rhizaform", &d)),
    }
}

fn load_matrix(path: &Path) -> Result<(Matrix, Field)> {
    let l = read_document(path)?;
    match l.doc {
        Document::Matrix(m) => Ok((m, l.field)),
        d => Err(wrong_kind(path, "matrix", &d)),
    }
}

fn load_bimodule(path: &Path) -> Result<(Bimodule, Field)> {
    let l = read_document(path)?;
    match l.doc {
        Document::Bimodule(b) => Ok((b, l.field)),
        d => Err(wrong_kind(path, "bimodule", &d)),
    }
}

fn load_form(path: &Path) -> Result<(BilinearForm, Field)> {
    let l = read_document(path)?;
    match l.doc {
        Document::Form(f) => Ok((f, l.field)),
        d => Err(wrong_kind(path, "form", &d)),
    }
}

fn load_subspace(path: &Path) -> Result<(Subspace, Field)> {
    let l = read_document(path)?;
    match l.doc {
        Document::Subspace(s) => Ok((s, l.field)),
        d => Err(wrong_kind(path, "subspace", &d)),
    }
}

fn widest(a: Field, b: Field) -> Field {
    if a == Field::Qi || b == Field::Qi {
        Field::Qi
    } else {
        Field::Q
    }
}

/// Inlines the axiom, pass flag and violations; returns the exit code.
fn merge_report(report: &mut Report, rep: &IdentityReport) -> u8 {
    if let Value::Object(m) = report_value(rep) {
        report.extend(m);
    }
    u8::from(!rep.pass())
}

fn emit(report: &mut Report, doc: Document, field: Field, out: &Output) -> Result<()> {
    if let Some(path) = &out.output {
        write_document(path, &doc, field)?;
        report.insert("output".into(), Value::from(path.display().to_string()));
    }
    report.insert("result".into(), document_value(&doc, field));
    Ok(())
}

fn pass_flag(report: &mut Report, pass: bool) -> u8 {
    report.insert("pass".into(), Value::from(pass));
    u8::from(!pass)
}

fn execute(cli: &Cli, report: &mut Report) -> Result<u8> {
    match &cli.command {
        Command::Check { file, axiom } => {
            let rep = match axiom {
                Axiom::AntiAssoc => check_anti_associative(&load_algebra(file)?.0),
                Axiom::JacobiJordan => check_jacobi_jordan(&load_algebra(file)?.0),
                Axiom::PreJj => check_pre_jacobi_jordan(&load_algebra(file)?.0),
                Axiom::Rhizaform => check_rhizaform(&load_rhizaform(file)?.0),
                Axiom::Admissible => check_anti_assoc_admissible(&load_rhizaform(file)?.0),
            };
            Ok(merge_report(report, &rep))
        }
        Command::Derive { file, op, convention, out } => {
            let l = read_document(file)?;
            let result = match (op, l.doc) {
                (DerivedOp::Sum, Document::Rhizaform(t)) => sum_operation(&t),
                (DerivedOp::Circ, Document::Rhizaform(t)) => {
                    let c = match convention {
                        ConventionArg::Plus => Convention::Plus,
                        ConventionArg::Minus => Convention::Minus,
                    };
                    circ_operation(&t, c)
                }
                (DerivedOp::Bracket, Document::Rhizaform(t)) => jj_bracket(&sum_operation(&t)),
                (DerivedOp::Bracket, Document::Algebra(a)) => jj_bracket(&a),
                (_, d) => return Err(wrong_kind(file, "rhizaform", &d)),
            };
            emit(report, Document::Algebra(result), l.field, out)?;
            Ok(0)
        }
        Command::Bimodule(BimoduleCommand::Check { file }) => {
            let (b, _) = load_bimodule(file)?;
            Ok(merge_report(report, &check_bimodule(&b)?))
        }
        Command::Semidirect { file, out } => {
            let (b, field) = load_bimodule(file)?;
            emit(report, Document::Algebra(semidirect_product(&b)), field, out)?;
            Ok(0)
        }
        Command::Double { file, out } => {
            let (t, field) = load_rhizaform(file)?;
            emit(report, Document::Algebra(hat_double(&t)), field, out)?;
            Ok(0)
        }
        Command::Oop(OopCommand::Verify { bimodule, t }) => {
            let (b, _) = load_bimodule(bimodule)?;
            let (t, _) = load_matrix(t)?;
            Ok(merge_report(report, &check_o_operator(&OOperator::new(b, t)?)?))
        }
        Command::Rb(RbCommand::Verify { algebra, r }) => {
            let (a, _) = load_algebra(algebra)?;
            let (r, _) = load_matrix(r)?;
            Ok(merge_report(report, &check_rota_baxter(&a, &r)?))
        }
        Command::Rb(RbCommand::Search { algebra, height }) => {
            let (a, _) = load_algebra(algebra)?;
            let found = rb_search(&a, *height)?;
            report.insert("height".into(), Value::from(*height));
            report.insert("count".into(), Value::from(found.len()));
            report.insert("operators".into(), Value::Array(found.iter().map(matrix_value).collect()));
            Ok(0)
        }
        Command::Induce(InduceCommand::Rb { algebra, r, out }) => {
            let (a, fa) = load_algebra(algebra)?;
            let (r, fr) = load_matrix(r)?;
            emit(report, Document::Rhizaform(rb_induce(&a, &r)?), widest(fa, fr), out)?;
            Ok(0)
        }
        Command::Induce(InduceCommand::Oop { bimodule, t, out }) => {
            let (b, fb) = load_bimodule(bimodule)?;
            let (t, ft) = load_matrix(t)?;
            let induced = induce_on_module(&OOperator::new(b, t)?)?;
            emit(report, Document::Rhizaform(induced), widest(fb, ft), out)?;
            Ok(0)
        }
        Command::Induce(InduceCommand::Cocycle { algebra, form, out }) => {
            let (a, fa) = load_algebra(algebra)?;
            let (b, fb) = load_form(form)?;
            emit(report, Document::Rhizaform(cocycle_induce(&a, &b)?), widest(fa, fb), out)?;
            Ok(0)
        }
        Command::Cocycle(CocycleCommand::Check { algebra, form }) => {
            let (a, _) = load_algebra(algebra)?;
            let (b, _) = load_form(form)?;
            Ok(merge_report(report, &check_connes_cocycle(&a, &b)?))
        }
        Command::DoubleConstruct { file, out } => {
            let (t, field) = load_rhizaform(file)?;
            let w = build_double(&t)?;
            let code = merge_report(report, &check_double(&w));
            emit(report, Document::Double(w), field, out)?;
            Ok(code)
        }
        Command::Series { file, kind, max } => {
            let (t, _) = load_rhizaform(file)?;
            let kind = match kind {
                SeriesArg::Left => SeriesKind::Left,
                SeriesArg::Right => SeriesKind::Right,
                SeriesArg::Full => SeriesKind::Full,
            };
            let s = series(&t, kind, max.unwrap_or(SERIES_CAP));
            report.insert("kind".into(), Value::from(kind.as_str()));
            let terms = s
                .terms
                .iter()
                .enumerate()
                .map(|(k, sub)| {
                    let mut m = Report::new();
                    m.insert("degree".into(), Value::from(k + 1));
                    m.insert("dim".into(), Value::from(sub.dim()));
                    m.insert("basis".into(), matrix_value(sub.basis_matrix()));
                    Value::Object(m)
                })
                .collect();
            report.insert("terms".into(), Value::Array(terms));
            report.insert("nilindex".into(), s.nilindex.map_or(Value::Null, Value::from));
            Ok(0)
        }
        Command::Center { file } => {
            let l = read_document(file)?;
            let z = match l.doc {
                Document::Algebra(a) => center_algebra(&a),
                Document::Rhizaform(t) => center(&t),
                d => return Err(wrong_kind(file, "rhizaform", &d)),
            };
            report.insert("dim".into(), Value::from(z.dim()));
            report.insert("result".into(), document_value(&Document::Subspace(z), l.field));
            Ok(0)
        }
        Command::Ideal { file, subspace } => {
            let l = read_document(file)?;
            let (s, _) = load_subspace(subspace)?;
            let pass = match l.doc {
                Document::Algebra(a) => is_ideal_algebra(&a, &s)?,
                Document::Rhizaform(t) => is_ideal(&t, &s)?,
                d => return Err(wrong_kind(file, "rhizaform", &d)),
            };
            Ok(pass_flag(report, pass))
        }
        Command::QuotientCenter { file, out } => {
            let (t, field) = load_rhizaform(file)?;
            let q = quotient_by_center(&t)?;
            report.insert("center".into(), document_value(&Document::Subspace(center(&t)), field));
            emit(report, Document::Rhizaform(q), field, out)?;
            Ok(0)
        }
        Command::Classify2 => {
            classify_report(report, cli.field);
            Ok(0)
        }
        Command::Canon2 { file } => {
            let (t, field) = load_rhizaform(file)?;
            let c = canon2(&t)?;
            report.insert("class".into(), Value::from(c.tag.to_string()));
            report.insert("witness".into(), matrix_value(&c.witness));
            report.insert("representative".into(), document_value(&Document::Rhizaform(representative(&c.tag)), field));
            Ok(0)
        }
        Command::Iso2 { a, b } => {
            let (t1, _) = load_rhizaform(a)?;
            let (t2, _) = load_rhizaform(b)?;
            match iso2(&t1, &t2)? {
                Iso2::Isomorphic(phi) => {
                    report.insert("witness".into(), matrix_value(&phi));
                    Ok(pass_flag(report, true))
                }
                Iso2::Distinct { invariant, left, right } => {
                    let code = pass_flag(report, false);
                    report.insert("invariant".into(), Value::from(invariant));
                    report.insert("left".into(), Value::from(left.to_string()));
                    report.insert("right".into(), Value::from(right.to_string()));
                    Ok(code)
                }
            }
        }
    }
}

fn symbolic(op: &BilinearOp<Poly>, names: &[String]) -> Value {
    let n = op.dim();
    Value::Array(
        (0..n)
            .map(|i| {
                Value::Array(
                    (0..n)
                        .map(|j| {
                            Value::Array(
                                (0..n).map(|k| Value::from(op.get(i, j, k).display_with(names).to_string())).collect(),
                            )
                        })
                        .collect(),
                )
            })
            .collect(),
    )
}

fn classify_report(report: &mut Report, field: Field) {
    let names = succ_variable_names();
    let c = classify2();
    report.insert("field".into(), Value::from(field.as_str()));
    report.insert("variables".into(), Value::Array(names.iter().map(|s| Value::from(s.as_str())).collect()));
    let strings = |ps: &[Poly]| Value::Array(ps.iter().map(|p| Value::from(p.display_with(&names).to_string())).collect());
    let families = c
        .families
        .iter()
        .map(|f| {
            let mut m = Report::new();
            m.insert("base".into(), Value::from(f.base));
            m.insert("free".into(), Value::Array(f.free_vars().iter().map(|&v| Value::from(names[v].as_str())).collect()));
            m.insert("succ".into(), symbolic(&f.succ, &names));
            m.insert("prec".into(), symbolic(&f.prec, &names));
            m.insert("nonzero".into(), strings(&f.branch.nonzero));
            m.insert("residual".into(), strings(&f.branch.residual));
            let mut examples: Vec<Value> = Vec::new();
            let mut seen = Vec::new();
            for (t, cc) in &f.samples {
                if seen.contains(&cc.tag) {
                    continue;
                }
                seen.push(cc.tag.clone());
                let mut e = Report::new();
                e.insert("class".into(), Value::from(cc.tag.to_string()));
                e.insert("structure".into(), document_value(&Document::Rhizaform(t.clone()), field));
                examples.push(Value::Object(e));
            }
            m.insert("examples".into(), Value::Array(examples));
            Value::Object(m)
        })
        .collect();
    report.insert("families".into(), Value::Array(families));
    let mut classes = Report::new();
    for base in [NONABELIAN, ABELIAN] {
        let tags = c.classes(base).iter().map(|t| Value::from(t.to_string())).collect();
        classes.insert(base.into(), Value::Array(tags));
    }
    report.insert("classes".into(), Value::Object(classes));
}
