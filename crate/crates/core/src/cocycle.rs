//! Connes cocycles and double constructions.

use crate::algebra::{sum_operation, Algebra, BilinearOp, TwoOpAlgebra};
use crate::error::{Error, Result};
use crate::identities::{check_anti_associative, check_rhizaform, IdentityReport};
use crate::matrix::Matrix;
use crate::representations::{bimodule_report, rhizaform_bimodule, semidirect_product, Bimodule};
use crate::scalar::Scalar;
use crate::subspace::Subspace;

/// `B(e_i, e_j) = gram[i][j]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BilinearForm {
    gram: Matrix,
    nondegenerate: bool,
}

impl BilinearForm {
    pub fn new(gram: Matrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::Shape(format!("Gram matrix is {}x{}", gram.rows(), gram.cols())));
        }
        let nondegenerate = gram.is_invertible();
        Ok(BilinearForm { gram, nondegenerate })
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.nondegenerate
    }

    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Result<Scalar> {
        let gy = self.gram.apply(y)?;
        if x.len() != gy.len() {
            return Err(Error::dims("vector length differs from form dimension"));
        }
        Ok(x.iter().zip(&gy).fold(Scalar::ZERO, |acc, (a, b)| &acc + &(a * b)))
    }

    pub fn is_symmetric(&self) -> bool {
        self.gram == self.gram.transpose()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.gram == self.gram.scale(&Scalar::int(-1)).transpose()
    }

    /// The form `(x, y) ↦ B(φx, φy)`.
    pub fn pull_back(&self, phi: &Matrix) -> Result<BilinearForm> {
        BilinearForm::new(phi.transpose().mul(&self.gram)?.mul(phi)?)
    }
}

fn check_dims(a: &Algebra, b: &BilinearForm) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::dims(format!("algebra of dimension {} with a form of dimension {}", a.dim(), b.dim())));
    }
    Ok(())
}

/// `B(a∗b, c) + B(b∗c, a) + B(c∗a, b)` on basis triples.
pub fn connes_report(a: &Algebra, b: &BilinearForm) -> IdentityReport {
    let n = a.dim();
    let g = b.gram();
    let pair = |v: &[Scalar], k: usize| v.iter().enumerate().fold(Scalar::ZERO, |acc, (s, x)| &acc + &(x * g.get(s, k)));
    let mut report = IdentityReport::new("connes-cocycle");
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = &(&pair(a.mul.product(i, j), k) + &pair(a.mul.product(j, k), i)) + &pair(a.mul.product(k, i), j);
                if !v.is_zero() {
                    report.push("connes-cocycle", vec![i, j, k], vec![v]);
                }
            }
        }
    }
    report
}

pub fn check_connes_cocycle(a: &Algebra, b: &BilinearForm) -> Result<IdentityReport> {
    check_dims(a, b)?;
    if !check_anti_associative(a).pass() {
        return Err(Error::precondition("algebra is not anti-associative"));
    }
    Ok(connes_report(a, b))
}

/// Solves `B(x≻y, z) = B(y, z∗x)` and `B(x≺y, z) = B(x, y∗z)` for the two
/// operations without verifying anything about the result.
pub fn cocycle_solve(a: &Algebra, b: &BilinearForm) -> Result<TwoOpAlgebra> {
    check_dims(a, b)?;
    if !b.is_nondegenerate() {
        return Err(Error::SingularForm);
    }
    let n = a.dim();
    // B(v, e_k) = (Gᵀ v)_k, so v = (Gᵀ)⁻¹ w.
    let solver = b.gram().transpose().invert()?;
    let mut succ = BilinearOp::zero(n);
    let mut prec = BilinearOp::zero(n);
    let e = |i: usize| {
        let mut v = vec![Scalar::ZERO; n];
        v[i] = Scalar::ONE;
        v
    };
    for i in 0..n {
        for j in 0..n {
            let ws: Vec<Scalar> = (0..n)
                .map(|k| b.eval(&e(j), a.mul.product(k, i)))
                .collect::<Result<_>>()?;
            let wp: Vec<Scalar> = (0..n)
                .map(|k| b.eval(&e(i), a.mul.product(j, k)))
                .collect::<Result<_>>()?;
            for (k, x) in solver.apply(&ws)?.into_iter().enumerate() {
                succ.set(i, j, k, x);
            }
            for (k, x) in solver.apply(&wp)?.into_iter().enumerate() {
                prec.set(i, j, k, x);
            }
        }
    }
    Ok(TwoOpAlgebra { succ, prec })
}

/// The compatible rhizaform structure determined by a nondegenerate Connes
/// cocycle. Fails with `PostconditionFailed` if the solved operations are not
/// rhizaform or do not sum to the multiplication.
pub fn cocycle_induce(a: &Algebra, b: &BilinearForm) -> Result<TwoOpAlgebra> {
    check_dims(a, b)?;
    if !check_anti_associative(a).pass() {
        return Err(Error::precondition("algebra is not anti-associative"));
    }
    if !b.is_nondegenerate() {
        return Err(Error::SingularForm);
    }
    if !connes_report(a, b).pass() {
        return Err(Error::precondition("form is not a Connes cocycle"));
    }
    let t = cocycle_solve(a, b)?;
    let rh = check_rhizaform(&t);
    if !rh.pass() {
        return Err(Error::PostconditionFailed(format!("solved structure is not rhizaform: {rh}")));
    }
    if sum_operation(&t) != *a {
        return Err(Error::PostconditionFailed("solved operations do not sum to the multiplication".into()));
    }
    Ok(t)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DoubleConstructionWitness {
    pub ambient: Algebra,
    pub part_a: Subspace,
    pub part_dual: Subspace,
    pub form: BilinearForm,
    /// Name of the verified candidate, empty when assembled by hand.
    pub candidate: String,
}

impl DoubleConstructionWitness {
    pub fn new(ambient: Algebra, part_a: Subspace, part_dual: Subspace, form: BilinearForm) -> Result<Self> {
        let n = ambient.dim();
        if part_a.ambient() != n || part_dual.ambient() != n || form.dim() != n {
            return Err(Error::Shape("witness parts do not match the ambient dimension".into()));
        }
        if part_a.dim() + part_dual.dim() != n || !part_a.intersect(&part_dual)?.is_zero() {
            return Err(Error::Shape("parts are not complementary".into()));
        }
        Ok(DoubleConstructionWitness { ambient, part_a, part_dual, form, candidate: String::new() })
    }
}

/// Candidate bimodules on `A*`, tried in this order.
pub const BIMODULE_CANDIDATES: [&str; 3] = ["dual", "swapped", "negated-dual"];
/// Candidate pairings, tried in this order for each bimodule.
pub const PAIRING_CANDIDATES: [&str; 2] = ["antisymmetric", "symmetric"];

fn candidate_bimodule(t: &TwoOpAlgebra, which: &str) -> Bimodule {
    let rb = rhizaform_bimodule(t);
    let lt: Vec<Matrix> = rb.l.iter().map(Matrix::transpose).collect();
    let rt: Vec<Matrix> = rb.r.iter().map(Matrix::transpose).collect();
    let neg = |v: &[Matrix]| v.iter().map(|m| m.scale(&Scalar::int(-1))).collect::<Vec<_>>();
    let (l, r) = match which {
        "dual" => (rt, lt),
        "swapped" => (lt, rt),
        _ => (neg(&rt), neg(&lt)),
    };
    Bimodule { base: rb.base, module_dim: t.dim(), l, r }
}

fn pairing(n: usize, which: &str) -> BilinearForm {
    let sign = if which == "symmetric" { Scalar::ONE } else { Scalar::int(-1) };
    let gram = Matrix::block(
        &Matrix::zero(n, n),
        &Matrix::identity(n),
        &Matrix::identity(n).scale(&sign),
        &Matrix::zero(n, n),
    )
    .expect("square blocks");
    BilinearForm::new(gram).expect("square")
}

/// Assembles `A ⋉ A*` from the first candidate bimodule and pairing for which
/// the bimodule and Connes cocycle conditions both hold.
pub fn build_double(t: &TwoOpAlgebra) -> Result<DoubleConstructionWitness> {
    if !check_rhizaform(t).pass() {
        return Err(Error::precondition("input is not rhizaform"));
    }
    let n = t.dim();
    for which in BIMODULE_CANDIDATES {
        let b = candidate_bimodule(t, which);
        if !bimodule_report(&b).pass() {
            continue;
        }
        let ambient = semidirect_product(&b);
        for p in PAIRING_CANDIDATES {
            let form = pairing(n, p);
            if connes_report(&ambient, &form).pass() {
                let mut w = DoubleConstructionWitness::new(
                    ambient.clone(),
                    Subspace::coordinate(2 * n, 0..n),
                    Subspace::coordinate(2 * n, n..2 * n),
                    form,
                )?;
                w.candidate = format!("{which}/{p}");
                return Ok(w);
            }
        }
    }
    Err(Error::NoCandidate)
}

fn closure(report: &mut IdentityReport, axiom: &str, op: &BilinearOp, part: &Subspace) {
    let basis = part.basis();
    for (a, x) in basis.iter().enumerate() {
        for (b, y) in basis.iter().enumerate() {
            let rem = part.reduce(&op.eval(x, y).expect("ambient dimension"));
            if rem.iter().any(|v| !v.is_zero()) {
                report.push(axiom, vec![a, b], rem);
            }
        }
    }
}

/// Checks every condition of a double construction and that the induced
/// structure restricts to both parts.
pub fn check_double(w: &DoubleConstructionWitness) -> IdentityReport {
    let mut report = IdentityReport::new("double-construction");
    report.absorb(check_anti_associative(&w.ambient));
    if !w.form.is_nondegenerate() {
        report.push("nondegenerate", vec![], vec![]);
    }
    report.absorb(connes_report(&w.ambient, &w.form));
    let parts = [("a", &w.part_a), ("dual", &w.part_dual)];
    for (name, part) in parts {
        closure(&mut report, &format!("subalgebra-{name}"), &w.ambient.mul, part);
        let basis = part.basis();
        for (a, x) in basis.iter().enumerate() {
            for (b, y) in basis.iter().enumerate() {
                let v = w.form.eval(x, y).expect("ambient dimension");
                if !v.is_zero() {
                    report.push(format!("isotropic-{name}"), vec![a, b], vec![v]);
                }
            }
        }
    }
    if !report.pass() {
        return report;
    }
    match cocycle_induce(&w.ambient, &w.form) {
        Ok(t) => {
            for (name, part) in parts {
                closure(&mut report, &format!("succ-closed-{name}"), &t.succ, part);
                closure(&mut report, &format!("prec-closed-{name}"), &t.prec, part);
            }
        }
        Err(_) => report.push("induced-structure", vec![], vec![]),
    }
    report
}

fn iso_shapes(w1: &DoubleConstructionWitness, w2: &DoubleConstructionWitness, phi: &Matrix) -> Result<()> {
    let n = w1.ambient.dim();
    if w2.ambient.dim() != n || phi.rows() != n || phi.cols() != n {
        return Err(Error::dims("witnesses and map have different dimensions"));
    }
    Ok(())
}

/// Whether `phi` is an isomorphism of double constructions: an invertible
/// homomorphism carrying parts to parts and pulling `B₂` back to `B₁`.
pub fn check_double_iso(w1: &DoubleConstructionWitness, w2: &DoubleConstructionWitness, phi: &Matrix) -> Result<bool> {
    iso_shapes(w1, w2, phi)?;
    Ok(phi.is_invertible()
        && w1.ambient.mul.is_homomorphism(&w2.ambient.mul, phi)?
        && w1.part_a.image_under(phi)? == w2.part_a
        && w1.part_dual.image_under(phi)? == w2.part_dual
        && w2.form.pull_back(phi)? == w1.form)
}

/// Whether `phi` is an isomorphism of the induced rhizaform structures that
/// also respects the parts.
pub fn check_double_iso_rhizaform(
    w1: &DoubleConstructionWitness,
    w2: &DoubleConstructionWitness,
    phi: &Matrix,
) -> Result<bool> {
    iso_shapes(w1, w2, phi)?;
    if !phi.is_invertible() {
        return Ok(false);
    }
    let t1 = cocycle_induce(&w1.ambient, &w1.form)?;
    let t2 = cocycle_induce(&w2.ambient, &w2.form)?;
    Ok(t1.is_homomorphism(&t2, phi)?
        && w1.part_a.image_under(phi)? == w2.part_a
        && w1.part_dual.image_under(phi)? == w2.part_dual)
}
