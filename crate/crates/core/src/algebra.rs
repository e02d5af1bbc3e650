//! Structure-constant algebras with one or two bilinear operations.
//!
//! `c[i][j][k]` is the coefficient of `e_k` in `e_i · e_j`. Linear maps are
//! matrices whose column `j` is the image of basis vector `j`.

use crate::error::{Error, Result};
use crate::identities::{check_anti_associative, check_jacobi_jordan, check_rhizaform};
use crate::matrix::Matrix;
use crate::scalar::{Coeff, Scalar};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BilinearOp<C = Scalar> {
    dim: usize,
    c: Vec<C>,
}

impl<C: Coeff> BilinearOp<C> {
    pub fn zero(dim: usize) -> Self {
        BilinearOp { dim, c: vec![C::zero(); dim * dim * dim] }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize) -> C) -> Self {
        let mut c = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    c.push(f(i, j, k));
                }
            }
        }
        BilinearOp { dim, c }
    }

    pub fn from_nested(dim: usize, t: Vec<Vec<Vec<C>>>) -> Result<Self> {
        if t.len() != dim || t.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim)) {
            return Err(Error::Shape(format!("tensor is not {dim}x{dim}x{dim}")));
        }
        Ok(BilinearOp { dim, c: t.into_iter().flatten().flatten().collect() })
    }

    pub fn to_nested(&self) -> Vec<Vec<Vec<C>>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.product(i, j).to_vec()).collect())
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &C {
        &self.c[self.idx(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: C) {
        let at = self.idx(i, j, k);
        self.c[at] = v;
    }

    /// Coordinates of `e_i · e_j`.
    pub fn product(&self, i: usize, j: usize) -> &[C] {
        let start = self.idx(i, j, 0);
        &self.c[start..start + self.dim]
    }

    pub fn entries(&self) -> &[C] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(C::is_zero)
    }

    /// `v · e_k`.
    pub fn vec_basis(&self, v: &[C], k: usize) -> Vec<C> {
        let mut out = vec![C::zero(); self.dim];
        for (a, va) in v.iter().enumerate() {
            if va.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(self.product(a, k)) {
                if !x.is_zero() {
                    *o = o.add_ref(&va.mul_ref(x));
                }
            }
        }
        out
    }

    /// `e_i · v`.
    pub fn basis_vec(&self, i: usize, v: &[C]) -> Vec<C> {
        let mut out = vec![C::zero(); self.dim];
        for (a, va) in v.iter().enumerate() {
            if va.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(self.product(i, a)) {
                if !x.is_zero() {
                    *o = o.add_ref(&va.mul_ref(x));
                }
            }
        }
        out
    }

    /// Bilinear extension to arbitrary vectors.
    pub fn eval(&self, x: &[C], y: &[C]) -> Result<Vec<C>> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(Error::dims(format!(
                "vectors of length {} and {} for an operation of dimension {}",
                x.len(),
                y.len(),
                self.dim
            )));
        }
        let mut out = vec![C::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let part = self.basis_vec(i, y);
            for (o, p) in out.iter_mut().zip(part) {
                *o = o.add_ref(&xi.mul_ref(&p));
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&C, &C) -> C) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::dims(format!("operations of dimension {} and {}", self.dim, other.dim)));
        }
        Ok(BilinearOp { dim: self.dim, c: self.c.iter().zip(&other.c).map(|(a, b)| f(a, b)).collect() })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.add_ref(b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.sub_ref(b))
    }

    pub fn neg(&self) -> Self {
        BilinearOp { dim: self.dim, c: self.c.iter().map(C::neg_ref).collect() }
    }

    pub fn scale(&self, s: &C) -> Self {
        BilinearOp { dim: self.dim, c: self.c.iter().map(|x| x.mul_ref(s)).collect() }
    }

    /// The opposite operation `x ·op y = y · x`.
    pub fn opposite(&self) -> Self {
        BilinearOp::from_fn(self.dim, |i, j, k| self.get(j, i, k).clone())
    }
}

impl BilinearOp<Scalar> {
    pub fn from_ints(dim: usize, entries: &[((usize, usize, usize), i64)]) -> Self {
        let mut op = BilinearOp::zero(dim);
        for &((i, j, k), v) in entries {
            op.set(i, j, k, Scalar::int(v));
        }
        op
    }

    /// Matrix of `y ↦ e_i · y`.
    pub fn left_matrix(&self, i: usize) -> Matrix {
        Matrix::from_fn(self.dim, self.dim, |k, j| self.get(i, j, k).clone())
    }

    /// Matrix of `x ↦ x · e_j`.
    pub fn right_matrix(&self, j: usize) -> Matrix {
        Matrix::from_fn(self.dim, self.dim, |k, i| self.get(i, j, k).clone())
    }

    /// The operation carried along an invertible `phi`, so that `phi` becomes
    /// an isomorphism from `self` onto the result.
    pub fn transport(&self, phi: &Matrix) -> Result<Self> {
        if phi.rows() != self.dim || phi.cols() != self.dim {
            return Err(Error::dims(format!("{}x{} map on dimension {}", phi.rows(), phi.cols(), self.dim)));
        }
        let psi = phi.invert()?;
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|a| psi.column(a)).collect();
        let mut out = BilinearOp::zero(self.dim);
        for a in 0..self.dim {
            for b in 0..self.dim {
                let v = phi.apply(&self.eval(&cols[a], &cols[b])?)?;
                for (k, x) in v.into_iter().enumerate() {
                    out.set(a, b, k, x);
                }
            }
        }
        Ok(out)
    }

    /// Whether `phi(x · y) = phi(x) ·other phi(y)` on all basis pairs.
    pub fn is_homomorphism(&self, other: &Self, phi: &Matrix) -> Result<bool> {
        if phi.cols() != self.dim || phi.rows() != other.dim {
            return Err(Error::dims(format!(
                "{}x{} map from dimension {} to {}",
                phi.rows(),
                phi.cols(),
                self.dim,
                other.dim
            )));
        }
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|a| phi.column(a)).collect();
        for i in 0..self.dim {
            for j in 0..self.dim {
                if phi.apply(self.product(i, j))? != other.eval(&cols[i], &cols[j])? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Block-diagonal operation on the direct sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.dim;
        let mut out = BilinearOp::zero(n + other.dim);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    out.set(i, j, k, self.get(i, j, k).clone());
                }
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                for k in 0..other.dim {
                    out.set(n + i, n + j, n + k, other.get(i, j, k).clone());
                }
            }
        }
        out
    }

    /// Whether every structure constant is real.
    pub fn is_real(&self) -> bool {
        self.c.iter().all(Scalar::is_real)
    }
}

/// A vector space with one bilinear multiplication.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Algebra {
    pub mul: BilinearOp,
}

impl Algebra {
    pub fn new(mul: BilinearOp) -> Self {
        Algebra { mul }
    }

    pub fn zero(dim: usize) -> Self {
        Algebra { mul: BilinearOp::zero(dim) }
    }

    pub fn dim(&self) -> usize {
        self.mul.dim()
    }

    pub fn transport(&self, phi: &Matrix) -> Result<Self> {
        Ok(Algebra { mul: self.mul.transport(phi)? })
    }

    pub fn direct_sum(&self, other: &Algebra) -> Algebra {
        Algebra { mul: self.mul.direct_sum(&other.mul) }
    }

    pub fn is_commutative(&self) -> bool {
        self.mul == self.mul.opposite()
    }
}

/// A vector space with two operations `≻` (succ) and `≺` (prec).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TwoOpAlgebra {
    pub succ: BilinearOp,
    pub prec: BilinearOp,
}

impl TwoOpAlgebra {
    pub fn new(succ: BilinearOp, prec: BilinearOp) -> Result<Self> {
        if succ.dim() != prec.dim() {
            return Err(Error::dims(format!("succ of dimension {} and prec of dimension {}", succ.dim(), prec.dim())));
        }
        Ok(TwoOpAlgebra { succ, prec })
    }

    pub fn zero(dim: usize) -> Self {
        TwoOpAlgebra { succ: BilinearOp::zero(dim), prec: BilinearOp::zero(dim) }
    }

    pub fn dim(&self) -> usize {
        self.succ.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.succ.is_zero() && self.prec.is_zero()
    }

    pub fn transport(&self, phi: &Matrix) -> Result<Self> {
        Ok(TwoOpAlgebra { succ: self.succ.transport(phi)?, prec: self.prec.transport(phi)? })
    }

    /// Whether `phi` intertwines both operations with those of `other`.
    pub fn is_homomorphism(&self, other: &TwoOpAlgebra, phi: &Matrix) -> Result<bool> {
        Ok(self.succ.is_homomorphism(&other.succ, phi)? && self.prec.is_homomorphism(&other.prec, phi)?)
    }

    pub fn direct_sum(&self, other: &TwoOpAlgebra) -> TwoOpAlgebra {
        TwoOpAlgebra { succ: self.succ.direct_sum(&other.succ), prec: self.prec.direct_sum(&other.prec) }
    }
}

/// `x ∗ y = x ≻ y + x ≺ y`.
pub fn sum_operation(t: &TwoOpAlgebra) -> Algebra {
    Algebra { mul: t.succ.add(&t.prec).expect("operations share a dimension") }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Convention {
    /// `x ∘ y = x ≻ y + y ≺ x`
    #[default]
    Plus,
    /// `x ∘ y = x ≻ y − y ≺ x`
    Minus,
}

pub fn circ_operation(t: &TwoOpAlgebra, convention: Convention) -> Algebra {
    let flipped = t.prec.opposite();
    let mul = match convention {
        Convention::Plus => t.succ.add(&flipped),
        Convention::Minus => t.succ.sub(&flipped),
    };
    Algebra { mul: mul.expect("operations share a dimension") }
}

/// `[x, y] = x·y + y·x`.
pub fn jj_bracket(a: &Algebra) -> Algebra {
    Algebra { mul: a.mul.add(&a.mul.opposite()).expect("same dimension") }
}

/// Both routes from a rhizaform algebra to its Jacobi–Jordan algebra agree,
/// and the common bracket is Jacobi–Jordan.
pub fn check_diagram_commutes(t: &TwoOpAlgebra) -> Result<bool> {
    if !check_rhizaform(t).pass() {
        return Err(Error::precondition("input is not rhizaform"));
    }
    let via_sum = jj_bracket(&sum_operation(t));
    let via_circ = jj_bracket(&circ_operation(t, Convention::Plus));
    Ok(via_sum == via_circ && check_jacobi_jordan(&via_sum).pass())
}

/// With one operation identically zero, the other must be anti-associative.
pub fn check_single_op_degeneration(t: &TwoOpAlgebra) -> Result<bool> {
    let remaining = if t.succ.is_zero() {
        &t.prec
    } else if t.prec.is_zero() {
        &t.succ
    } else {
        return Err(Error::precondition("neither operation vanishes"));
    };
    Ok(check_anti_associative(&Algebra::new(remaining.clone())).pass())
}
