//! O-operators, Rota–Baxter operators and the rhizaform structures they induce.

use rayon::prelude::*;

use crate::algebra::{sum_operation, Algebra, BilinearOp, TwoOpAlgebra};
use crate::error::{Error, Result};
use crate::identities::{check_anti_associative, check_rhizaform, IdentityReport};
use crate::matrix::Matrix;
use crate::representations::{check_bimodule, hat_double, semidirect_product, Bimodule};
use crate::scalar::{rationals_of_height, Scalar};
use crate::subspace::Subspace;

/// Largest search space `rb_search` will enumerate.
pub const RB_SEARCH_LIMIT: u64 = 50_000_000;

/// A linear map `T: V → A` (column `j` is `T(v_j)`) against a bimodule.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OOperator {
    pub bimodule: Bimodule,
    pub t: Matrix,
}

impl OOperator {
    pub fn new(bimodule: Bimodule, t: Matrix) -> Result<Self> {
        if t.rows() != bimodule.base_dim() || t.cols() != bimodule.module_dim {
            return Err(Error::Shape(format!(
                "T is {}x{}, expected {}x{}",
                t.rows(),
                t.cols(),
                bimodule.base_dim(),
                bimodule.module_dim
            )));
        }
        Ok(OOperator { bimodule, t })
    }
}

fn basis(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::ZERO; n];
    v[i] = Scalar::ONE;
    v
}

fn vsub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn vadd(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `T(l(T(u))v + r(T(v))u) − T(u)∗T(v)` on module basis pairs.
pub fn o_operator_report(o: &OOperator) -> IdentityReport {
    let b = &o.bimodule;
    let m = b.module_dim;
    let images: Vec<Vec<Scalar>> = (0..m).map(|u| o.t.column(u)).collect();
    let lt: Vec<Matrix> = images.iter().map(|x| b.l_of(x)).collect();
    let rt: Vec<Matrix> = images.iter().map(|x| b.r_of(x)).collect();
    let mut report = IdentityReport::new("o-operator");
    for u in 0..m {
        for v in 0..m {
            let lhs = b.base.mul.eval(&images[u], &images[v]).expect("base dimension");
            let inner = vadd(&lt[u].column(v), &rt[v].column(u));
            let rhs = o.t.apply(&inner).expect("module dimension");
            let res = vsub(&rhs, &lhs);
            if res.iter().any(|x| !x.is_zero()) {
                report.push("o-operator", vec![u, v], res);
            }
        }
    }
    report
}

pub fn check_o_operator(o: &OOperator) -> Result<IdentityReport> {
    if !check_bimodule(&o.bimodule)?.pass() {
        return Err(Error::precondition("bimodule conditions fail"));
    }
    Ok(o_operator_report(o))
}

/// `R(R(x)∗y + x∗R(y)) − R(x)∗R(y)` on basis pairs, without preconditions.
pub fn rota_baxter_report(a: &Algebra, r: &Matrix) -> IdentityReport {
    let n = a.dim();
    let images: Vec<Vec<Scalar>> = (0..n).map(|i| r.column(i)).collect();
    let mut report = IdentityReport::new("rota-baxter");
    for i in 0..n {
        for j in 0..n {
            let lhs = a.mul.eval(&images[i], &images[j]).expect("dimension");
            let inner = vadd(&a.mul.vec_basis(&images[i], j), &a.mul.basis_vec(i, &images[j]));
            let res = vsub(&r.apply(&inner).expect("dimension"), &lhs);
            if res.iter().any(|x| !x.is_zero()) {
                report.push("rota-baxter", vec![i, j], res);
            }
        }
    }
    report
}

fn is_rota_baxter(a: &Algebra, r: &Matrix) -> bool {
    let n = a.dim();
    let images: Vec<Vec<Scalar>> = (0..n).map(|i| r.column(i)).collect();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let lhs = a.mul.eval(&images[i], &images[j]).expect("dimension");
            let inner = vadd(&a.mul.vec_basis(&images[i], j), &a.mul.basis_vec(i, &images[j]));
            lhs == r.apply(&inner).expect("dimension")
        })
    })
}

fn check_square(a: &Algebra, r: &Matrix) -> Result<()> {
    if r.rows() != a.dim() || r.cols() != a.dim() {
        return Err(Error::dims(format!("{}x{} operator on dimension {}", r.rows(), r.cols(), a.dim())));
    }
    Ok(())
}

pub fn check_rota_baxter(a: &Algebra, r: &Matrix) -> Result<IdentityReport> {
    check_square(a, r)?;
    if !check_anti_associative(a).pass() {
        return Err(Error::precondition("algebra is not anti-associative"));
    }
    Ok(rota_baxter_report(a, r))
}

/// Every Rota–Baxter operator whose entries are rationals of height at most
/// `height`, in lexicographic order of entries (row-major, values ascending).
pub fn rb_search(a: &Algebra, height: u32) -> Result<Vec<Matrix>> {
    if !check_anti_associative(a).pass() {
        return Err(Error::precondition("algebra is not anti-associative"));
    }
    let n = a.dim();
    let values = rationals_of_height(height);
    let cells = (n * n) as u32;
    let total = (values.len() as u64)
        .checked_pow(cells)
        .filter(|&t| t <= RB_SEARCH_LIMIT)
        .ok_or_else(|| Error::precondition(format!("search space exceeds {RB_SEARCH_LIMIT} matrices")))?;
    let base = values.len() as u64;
    let found = (0..total)
        .into_par_iter()
        .filter_map(|mut code| {
            let mut digits = vec![0usize; n * n];
            for d in digits.iter_mut().rev() {
                *d = (code % base) as usize;
                code /= base;
            }
            let m = Matrix::from_fn(n, n, |i, j| values[digits[i * n + j]].clone());
            is_rota_baxter(a, &m).then_some(m)
        })
        .collect();
    Ok(found)
}

/// `u≻v = l(T(u))v`, `u≺v = r(T(v))u` on the module.
pub fn induce_on_module(o: &OOperator) -> Result<TwoOpAlgebra> {
    if !check_o_operator(o)?.pass() {
        return Err(Error::precondition("not an O-operator"));
    }
    let out = induce_unchecked(o);
    if !check_rhizaform(&out).pass() {
        return Err(Error::PostconditionFailed("induced structure is not rhizaform".into()));
    }
    Ok(out)
}

fn induce_unchecked(o: &OOperator) -> TwoOpAlgebra {
    let b = &o.bimodule;
    let m = b.module_dim;
    let lt: Vec<Matrix> = (0..m).map(|u| b.l_of(&o.t.column(u))).collect();
    let rt: Vec<Matrix> = (0..m).map(|v| b.r_of(&o.t.column(v))).collect();
    let succ = BilinearOp::from_fn(m, |u, v, w| lt[u].get(w, v).clone());
    let prec = BilinearOp::from_fn(m, |u, v, w| rt[v].get(w, u).clone());
    TwoOpAlgebra { succ, prec }
}

/// The structure `T(u)≻T(v) = T(u≻v)` on the image of `T`, in the canonical
/// basis of the image subspace.
pub fn induce_on_image(o: &OOperator) -> Result<(Subspace, TwoOpAlgebra)> {
    let module = induce_on_module(o)?;
    let kernel = o.t.kernel();
    let m = o.bimodule.module_dim;
    for k in kernel.basis() {
        for v in 0..m {
            let e = basis(m, v);
            let checks = [
                ("succ", module.succ.eval(&k, &e)?),
                ("succ", module.succ.eval(&e, &k)?),
                ("prec", module.prec.eval(&k, &e)?),
                ("prec", module.prec.eval(&e, &k)?),
            ];
            for (name, w) in checks {
                if o.t.apply(&w)?.iter().any(|x| !x.is_zero()) {
                    return Err(Error::IllDefined(format!("{name} product with a kernel vector leaves the kernel")));
                }
            }
        }
    }
    let image = o.t.image();
    let pre: Vec<Vec<Scalar>> = image
        .basis()
        .iter()
        .map(|b| o.t.solve(b).map(|x| x.expect("image vector has a preimage")))
        .collect::<Result<_>>()?;
    let d = image.dim();
    let mut succ = BilinearOp::zero(d);
    let mut prec = BilinearOp::zero(d);
    for a in 0..d {
        for b in 0..d {
            for (op, out) in [(&module.succ, &mut succ), (&module.prec, &mut prec)] {
                let w = o.t.apply(&op.eval(&pre[a], &pre[b])?)?;
                let coords = image.coordinates(&w).expect("product lies in the image");
                for (k, x) in coords.into_iter().enumerate() {
                    out.set(a, b, k, x);
                }
            }
        }
    }
    Ok((image, TwoOpAlgebra { succ, prec }))
}

/// `x≻y = R(x)∗y`, `x≺y = x∗R(y)`.
pub fn rb_induce(a: &Algebra, r: &Matrix) -> Result<TwoOpAlgebra> {
    if !check_rota_baxter(a, r)?.pass() {
        return Err(Error::precondition("not a Rota-Baxter operator"));
    }
    let n = a.dim();
    let images: Vec<Vec<Scalar>> = (0..n).map(|i| r.column(i)).collect();
    let succ = BilinearOp::from_fn(n, |i, j, k| a.mul.vec_basis(&images[i], j)[k].clone());
    let prec = BilinearOp::from_fn(n, |i, j, k| a.mul.basis_vec(i, &images[j])[k].clone());
    let out = TwoOpAlgebra { succ, prec };
    if !check_rhizaform(&out).pass() {
        return Err(Error::PostconditionFailed("induced structure is not rhizaform".into()));
    }
    Ok(out)
}

/// The compatible structure `x≻y = T(T⁻¹x ≻ T⁻¹y)` on the base.
pub fn compatible_from_invertible_o(o: &OOperator) -> Result<TwoOpAlgebra> {
    if !o.t.is_square() || !o.t.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    let module = induce_on_module(o)?;
    let out = module.transport(&o.t)?;
    if sum_operation(&out) != o.bimodule.base {
        return Err(Error::PostconditionFailed("structure does not sum to the base multiplication".into()));
    }
    Ok(out)
}

/// The semidirect product with `T̂(x,u) = (T(u), 0)`.
pub fn embed_t_hat(o: &OOperator) -> Result<(Algebra, Matrix)> {
    if !check_bimodule(&o.bimodule)?.pass() {
        return Err(Error::precondition("bimodule conditions fail"));
    }
    let n = o.bimodule.base_dim();
    let m = o.bimodule.module_dim;
    let t_hat = Matrix::block(&Matrix::zero(n, n), &o.t, &Matrix::zero(m, n), &Matrix::zero(m, m))?;
    Ok((semidirect_product(&o.bimodule), t_hat))
}

/// The hat-double with `Îd(x, y) = (y, 0)`.
pub fn hat_identity_rb(t: &TwoOpAlgebra) -> Result<(Algebra, Matrix)> {
    if !check_rhizaform(t).pass() {
        return Err(Error::precondition("input is not rhizaform"));
    }
    let n = t.dim();
    let id_hat = Matrix::block(&Matrix::zero(n, n), &Matrix::identity(n), &Matrix::zero(n, n), &Matrix::zero(n, n))?;
    Ok((hat_double(t), id_hat))
}
