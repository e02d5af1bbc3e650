//! Bimodules over anti-associative algebras and the algebras built from them.

use crate::algebra::{sum_operation, Algebra, BilinearOp, TwoOpAlgebra};
use crate::error::{Error, Result};
use crate::identities::{check_anti_associative, IdentityReport};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Left and right actions `l(e_i)`, `r(e_i)` of the base basis on a module.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Bimodule {
    pub base: Algebra,
    pub module_dim: usize,
    pub l: Vec<Matrix>,
    pub r: Vec<Matrix>,
}

/// `Σ_i x_i · mats[i]`.
pub fn combine(mats: &[Matrix], x: &[Scalar], m: usize) -> Matrix {
    let mut out = Matrix::zero(m, m);
    for (mat, xi) in mats.iter().zip(x) {
        if !xi.is_zero() {
            out = out.add(&mat.scale(xi)).expect("action matrices are m x m");
        }
    }
    out
}

impl Bimodule {
    pub fn new(base: Algebra, module_dim: usize, l: Vec<Matrix>, r: Vec<Matrix>) -> Result<Self> {
        let n = base.dim();
        if l.len() != n || r.len() != n {
            return Err(Error::Shape(format!(
                "expected {n} action matrices on each side, got {} and {}",
                l.len(),
                r.len()
            )));
        }
        for m in l.iter().chain(&r) {
            if m.rows() != module_dim || m.cols() != module_dim {
                return Err(Error::Shape(format!(
                    "action matrix is {}x{}, expected {module_dim}x{module_dim}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Bimodule { base, module_dim, l, r })
    }

    pub fn zero(base: Algebra, module_dim: usize) -> Self {
        let n = base.dim();
        let z = Matrix::zero(module_dim, module_dim);
        Bimodule { base, module_dim, l: vec![z.clone(); n], r: vec![z; n] }
    }

    pub fn base_dim(&self) -> usize {
        self.base.dim()
    }

    /// `l(x)` for an arbitrary base vector.
    pub fn l_of(&self, x: &[Scalar]) -> Matrix {
        combine(&self.l, x, self.module_dim)
    }

    pub fn r_of(&self, x: &[Scalar]) -> Matrix {
        combine(&self.r, x, self.module_dim)
    }
}

fn push_matrix_residual(report: &mut IdentityReport, axiom: &str, i: usize, j: usize, m: &Matrix) {
    for v in 0..m.cols() {
        let col = m.column(v);
        if col.iter().any(|x| !x.is_zero()) {
            report.push(axiom, vec![i, j, v], col);
        }
    }
}

/// The three bimodule conditions on basis pairs, without checking the base.
pub fn bimodule_report(b: &Bimodule) -> IdentityReport {
    let n = b.base_dim();
    let mut report = IdentityReport::new("bimodule");
    for i in 0..n {
        for j in 0..n {
            let prod = b.base.mul.product(i, j);
            let ll = b.l_of(prod).add(&b.l[i].mul(&b.l[j]).expect("square")).expect("square");
            push_matrix_residual(&mut report, "left-action", i, j, &ll);
            let rr = b.r_of(prod).add(&b.r[j].mul(&b.r[i]).expect("square")).expect("square");
            push_matrix_residual(&mut report, "right-action", i, j, &rr);
            let lr = b.l[i]
                .mul(&b.r[j])
                .expect("square")
                .add(&b.r[j].mul(&b.l[i]).expect("square"))
                .expect("square");
            push_matrix_residual(&mut report, "left-right", i, j, &lr);
        }
    }
    report
}

pub fn check_bimodule(b: &Bimodule) -> Result<IdentityReport> {
    if !check_anti_associative(&b.base).pass() {
        return Err(Error::precondition("base algebra is not anti-associative"));
    }
    Ok(bimodule_report(b))
}

/// `(A, L∗, R∗)`.
pub fn regular_bimodule(a: &Algebra) -> Result<Bimodule> {
    if !check_anti_associative(a).pass() {
        return Err(Error::precondition("algebra is not anti-associative"));
    }
    let n = a.dim();
    let l = (0..n).map(|i| a.mul.left_matrix(i)).collect();
    let r = (0..n).map(|i| a.mul.right_matrix(i)).collect();
    Ok(Bimodule { base: a.clone(), module_dim: n, l, r })
}

/// `(A, L≻, R≺)` over the sum algebra.
pub fn rhizaform_bimodule(t: &TwoOpAlgebra) -> Bimodule {
    let n = t.dim();
    let l = (0..n).map(|i| t.succ.left_matrix(i)).collect();
    let r = (0..n).map(|i| t.prec.right_matrix(i)).collect();
    Bimodule { base: sum_operation(t), module_dim: n, l, r }
}

/// `(V*, r*, l*)`, with the dual identified to the module by transposition.
pub fn dual_bimodule(b: &Bimodule) -> Result<Bimodule> {
    if !check_bimodule(b)?.pass() {
        return Err(Error::precondition("input is not a bimodule"));
    }
    Ok(dual_unchecked(b))
}

pub(crate) fn dual_unchecked(b: &Bimodule) -> Bimodule {
    Bimodule {
        base: b.base.clone(),
        module_dim: b.module_dim,
        l: b.r.iter().map(Matrix::transpose).collect(),
        r: b.l.iter().map(Matrix::transpose).collect(),
    }
}

/// `(x,u)∗(y,v) = (x∗y, l(x)v + r(y)u)` on `A ⊕ V`.
pub fn semidirect_product(b: &Bimodule) -> Algebra {
    let n = b.base_dim();
    let m = b.module_dim;
    let mut c = BilinearOp::zero(n + m);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                c.set(i, j, k, b.base.mul.get(i, j, k).clone());
            }
        }
        for v in 0..m {
            for w in 0..m {
                c.set(i, n + v, n + w, b.l[i].get(w, v).clone());
                c.set(n + v, i, n + w, b.r[i].get(w, v).clone());
            }
        }
    }
    Algebra::new(c)
}

/// `(x,a)∗(y,b) = (x≻y + x≺y, x≻b + a≺y)`.
pub fn hat_double(t: &TwoOpAlgebra) -> Algebra {
    semidirect_product(&rhizaform_bimodule(t))
}
