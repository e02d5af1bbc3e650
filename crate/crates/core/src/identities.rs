//! Polynomial identities checked on basis tuples.
//!
//! Every identity here is multilinear, so vanishing on basis tuples is
//! equivalent to vanishing everywhere. The `*_residuals` functions are generic
//! over [`Coeff`] so the same expansions feed both the numeric checkers and
//! the symbolic solver.

use std::fmt;

use crate::algebra::{sum_operation, Algebra, BilinearOp, TwoOpAlgebra};
use crate::scalar::{Coeff, Scalar};

pub const ANTI_ASSOCIATIVE: &str = "anti-associative";
pub const COMMUTATIVE: &str = "commutative";
pub const JACOBI: &str = "jacobi";
pub const PRE_JACOBI_JORDAN: &str = "pre-jacobi-jordan";
pub const RHIZAFORM_SUM_SUCC: &str = "rhizaform-sum-succ";
pub const RHIZAFORM_PREC_SUM: &str = "rhizaform-prec-sum";
pub const RHIZAFORM_MIXED: &str = "rhizaform-mixed";
pub const ADMISSIBLE: &str = "anti-associative-admissible";

/// One instance of an identity with its (possibly zero) value.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual<C> {
    pub axiom: &'static str,
    pub indices: Vec<usize>,
    pub value: Vec<C>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: String,
    /// Zero-based basis indices.
    pub indices: Vec<usize>,
    pub residual: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub axiom: String,
    pub violations: Vec<Violation>,
}

impl IdentityReport {
    pub fn new(axiom: impl Into<String>) -> Self {
        IdentityReport { axiom: axiom.into(), violations: Vec::new() }
    }

    pub fn from_residuals(axiom: impl Into<String>, residuals: Vec<Residual<Scalar>>) -> Self {
        let violations = residuals
            .into_iter()
            .filter(|r| r.value.iter().any(|x| !x.is_zero()))
            .map(|r| Violation { axiom: r.axiom.to_string(), indices: r.indices, residual: r.value })
            .collect();
        IdentityReport { axiom: axiom.into(), violations }
    }

    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, axiom: impl Into<String>, indices: Vec<usize>, residual: Vec<Scalar>) {
        self.violations.push(Violation { axiom: axiom.into(), indices, residual });
    }

    /// Merges another report's violations into this one.
    pub fn absorb(&mut self, other: IdentityReport) {
        self.violations.extend(other.violations);
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pass() {
            return write!(f, "{}: pass", self.axiom);
        }
        writeln!(f, "{}: {} violation(s)", self.axiom, self.violations.len())?;
        for v in &self.violations {
            let idx: Vec<String> = v.indices.iter().map(|i| (i + 1).to_string()).collect();
            let res: Vec<String> = v.residual.iter().map(ToString::to_string).collect();
            writeln!(f, "  {} at ({}): [{}]", v.axiom, idx.join(","), res.join(", "))?;
        }
        Ok(())
    }
}

fn add<C: Coeff>(a: &[C], b: &[C]) -> Vec<C> {
    a.iter().zip(b).map(|(x, y)| x.add_ref(y)).collect()
}

fn sub<C: Coeff>(a: &[C], b: &[C]) -> Vec<C> {
    a.iter().zip(b).map(|(x, y)| x.sub_ref(y)).collect()
}

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
}

/// `x(yz) + (xy)z`.
pub fn anti_associative_residuals<C: Coeff>(m: &BilinearOp<C>) -> Vec<Residual<C>> {
    triples(m.dim())
        .map(|(i, j, k)| {
            let left = m.basis_vec(i, m.product(j, k));
            let right = m.vec_basis(m.product(i, j), k);
            Residual { axiom: ANTI_ASSOCIATIVE, indices: vec![i, j, k], value: add(&left, &right) }
        })
        .collect()
}

/// `xy − yx`.
pub fn commutativity_residuals<C: Coeff>(m: &BilinearOp<C>) -> Vec<Residual<C>> {
    let n = m.dim();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| Residual { axiom: COMMUTATIVE, indices: vec![i, j], value: sub(m.product(i, j), m.product(j, i)) })
        .collect()
}

/// `x(yz) + y(zx) + z(xy)`.
pub fn jacobi_residuals<C: Coeff>(m: &BilinearOp<C>) -> Vec<Residual<C>> {
    triples(m.dim())
        .map(|(i, j, k)| {
            let a = m.basis_vec(i, m.product(j, k));
            let b = m.basis_vec(j, m.product(k, i));
            let c = m.basis_vec(k, m.product(i, j));
            Residual { axiom: JACOBI, indices: vec![i, j, k], value: add(&add(&a, &b), &c) }
        })
        .collect()
}

/// `(xy)z + x(yz) + (yx)z + y(xz)`.
pub fn pre_jacobi_jordan_residuals<C: Coeff>(m: &BilinearOp<C>) -> Vec<Residual<C>> {
    triples(m.dim())
        .map(|(i, j, k)| {
            let a = m.vec_basis(m.product(i, j), k);
            let b = m.basis_vec(i, m.product(j, k));
            let c = m.vec_basis(m.product(j, i), k);
            let d = m.basis_vec(j, m.product(i, k));
            Residual { axiom: PRE_JACOBI_JORDAN, indices: vec![i, j, k], value: add(&add(&a, &b), &add(&c, &d)) }
        })
        .collect()
}

/// The three rhizaform axioms, with `∗ = ≻ + ≺`:
/// `(x∗y)≻z + x≻(y≻z)`, `x≺(y∗z) + (x≺y)≺z`, `x≻(y≺z) + (x≻y)≺z`.
pub fn rhizaform_residuals<C: Coeff>(succ: &BilinearOp<C>, prec: &BilinearOp<C>) -> Vec<Residual<C>> {
    let star = succ.add(prec).expect("operations share a dimension");
    let mut out = Vec::new();
    for (i, j, k) in triples(succ.dim()) {
        let idx = vec![i, j, k];
        let a = succ.vec_basis(star.product(i, j), k);
        let b = succ.basis_vec(i, succ.product(j, k));
        out.push(Residual { axiom: RHIZAFORM_SUM_SUCC, indices: idx.clone(), value: add(&a, &b) });
        let a = prec.basis_vec(i, star.product(j, k));
        let b = prec.vec_basis(prec.product(i, j), k);
        out.push(Residual { axiom: RHIZAFORM_PREC_SUM, indices: idx.clone(), value: add(&a, &b) });
        let a = succ.basis_vec(i, prec.product(j, k));
        let b = prec.vec_basis(succ.product(i, j), k);
        out.push(Residual { axiom: RHIZAFORM_MIXED, indices: idx, value: add(&a, &b) });
    }
    out
}

pub fn check_anti_associative(a: &Algebra) -> IdentityReport {
    IdentityReport::from_residuals(ANTI_ASSOCIATIVE, anti_associative_residuals(&a.mul))
}

pub fn check_jacobi_jordan(a: &Algebra) -> IdentityReport {
    let mut r = commutativity_residuals(&a.mul);
    r.extend(jacobi_residuals(&a.mul));
    IdentityReport::from_residuals("jacobi-jordan", r)
}

pub fn check_pre_jacobi_jordan(a: &Algebra) -> IdentityReport {
    IdentityReport::from_residuals(PRE_JACOBI_JORDAN, pre_jacobi_jordan_residuals(&a.mul))
}

pub fn check_rhizaform(t: &TwoOpAlgebra) -> IdentityReport {
    IdentityReport::from_residuals("rhizaform", rhizaform_residuals(&t.succ, &t.prec))
}

pub fn check_anti_assoc_admissible(t: &TwoOpAlgebra) -> IdentityReport {
    let mut r = anti_associative_residuals(&sum_operation(t).mul);
    for x in &mut r {
        x.axiom = ADMISSIBLE;
    }
    IdentityReport::from_residuals(ADMISSIBLE, r)
}
