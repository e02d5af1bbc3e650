//! Subspace products, nilpotency series, centers, ideals and quotients.

use crate::algebra::{sum_operation, Algebra, BilinearOp, TwoOpAlgebra};
use crate::error::{Error, Result};
use crate::identities::check_rhizaform;
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::subspace::Subspace;

/// Hard cap on the length of a computed series.
pub const SERIES_CAP: usize = 4096;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Which {
    Succ,
    Prec,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SeriesKind {
    Right,
    Left,
    Full,
}

impl SeriesKind {
    pub const ALL: [SeriesKind; 3] = [SeriesKind::Right, SeriesKind::Left, SeriesKind::Full];

    pub fn as_str(self) -> &'static str {
        match self {
            SeriesKind::Right => "right",
            SeriesKind::Left => "left",
            SeriesKind::Full => "full",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeriesResult {
    pub kind: SeriesKind,
    /// `terms[k]` is the degree `k + 1` subspace.
    pub terms: Vec<Subspace>,
    pub nilindex: Option<usize>,
}

fn op_product(op: &BilinearOp, m: &Subspace, n: &Subspace, out: &mut Vec<Vec<Scalar>>) {
    let mb = m.basis();
    let nb = n.basis();
    for x in &mb {
        for y in &nb {
            out.push(op.eval(x, y).expect("ambient dimension"));
        }
    }
}

/// Span of all products `m ≻ n`, `m ≺ n`, or both.
pub fn subspace_product(t: &TwoOpAlgebra, m: &Subspace, n: &Subspace, which: Which) -> Result<Subspace> {
    let d = t.dim();
    if m.ambient() != d || n.ambient() != d {
        return Err(Error::dims(format!(
            "subspaces of ambient {} and {} in dimension {d}",
            m.ambient(),
            n.ambient()
        )));
    }
    let mut vecs = Vec::new();
    if which != Which::Prec {
        op_product(&t.succ, m, n, &mut vecs);
    }
    if which != Which::Succ {
        op_product(&t.prec, m, n, &mut vecs);
    }
    Subspace::span(d, &vecs)
}

fn diamond(t: &TwoOpAlgebra, m: &Subspace, n: &Subspace) -> Subspace {
    subspace_product(t, m, n, Which::Both).expect("same ambient")
}

/// Computes the series until it reaches zero, provably stabilizes, or has
/// `max_k` terms.
///
/// Right and left series stop at the first repeated term. A repeat does not
/// settle the full series, which is only declared stable once it is constant
/// on a window `[k, 2k]`.
pub fn series(t: &TwoOpAlgebra, kind: SeriesKind, max_k: usize) -> SeriesResult {
    let full = Subspace::full(t.dim());
    let mut terms = vec![full.clone()];
    let mut nilindex = None;
    if t.dim() == 0 {
        return SeriesResult { kind, terms, nilindex: Some(1) };
    }
    while terms.len() < max_k {
        let k = terms.len();
        let next = match kind {
            SeriesKind::Right => diamond(t, &terms[k - 1], &full),
            SeriesKind::Left => diamond(t, &full, &terms[k - 1]),
            SeriesKind::Full => {
                let mut acc = Subspace::zero(t.dim());
                for i in 0..k {
                    acc = acc.sum(&diamond(t, &terms[i], &terms[k - 1 - i])).expect("same ambient");
                }
                acc
            }
        };
        let zero = next.is_zero();
        terms.push(next);
        if zero {
            nilindex = Some(terms.len());
            break;
        }
        if stabilized(kind, &terms) {
            break;
        }
    }
    SeriesResult { kind, terms, nilindex }
}

fn stabilized(kind: SeriesKind, terms: &[Subspace]) -> bool {
    let n = terms.len();
    match kind {
        SeriesKind::Right | SeriesKind::Left => n >= 2 && terms[n - 1] == terms[n - 2],
        SeriesKind::Full => {
            // terms[j - 1] holds degree j; look for k with degrees k..=n all equal and n >= 2k.
            let last = &terms[n - 1];
            let mut first_equal = n;
            while first_equal > 1 && terms[first_equal - 2] == *last {
                first_equal -= 1;
            }
            n >= 2 * first_equal && first_equal < n
        }
    }
}

/// Nilindex of the given series, or `None` if it stabilizes at a nonzero
/// subspace.
pub fn is_nilpotent(t: &TwoOpAlgebra, kind: SeriesKind) -> Option<usize> {
    let s = series(t, kind, SERIES_CAP);
    s.nilindex
}

/// All sixteen products `(x ∗₁ y) ∗₂ z` and `x ∗₃ (y ∗₄ z)` with `∗ᵢ ∈ {≻, ≺}`
/// vanish.
pub fn is_2_nilpotent(t: &TwoOpAlgebra) -> bool {
    let ops = [&t.succ, &t.prec];
    let n = t.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for a in ops {
                    for b in ops {
                        if b.vec_basis(a.product(i, j), k).iter().any(|x| !x.is_zero())
                            || b.basis_vec(i, a.product(j, k)).iter().any(|x| !x.is_zero())
                        {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

fn annihilator(ops: &[&BilinearOp], dim: usize) -> Subspace {
    let mut rows = Vec::new();
    for op in ops {
        for j in 0..dim {
            rows.extend(op.right_matrix(j).row_vecs());
            rows.extend(op.left_matrix(j).row_vecs());
        }
    }
    if rows.is_empty() {
        return Subspace::full(dim);
    }
    Matrix::from_rows(rows, dim).expect("rows of length dim").kernel()
}

/// `{x : x∗y = y∗x = 0 for all y}`.
pub fn center_algebra(a: &Algebra) -> Subspace {
    annihilator(&[&a.mul], a.dim())
}

/// `{x : x≻y = y≻x = x≺y = y≺x = 0 for all y}`.
pub fn center(t: &TwoOpAlgebra) -> Subspace {
    annihilator(&[&t.succ, &t.prec], t.dim())
}

fn closed_under(ops: &[&BilinearOp], s: &Subspace) -> bool {
    let d = s.ambient();
    let basis = s.basis();
    ops.iter().all(|op| {
        basis.iter().all(|x| {
            (0..d).all(|j| s.contains(&op.vec_basis(x, j)) && s.contains(&op.basis_vec(j, x)))
        })
    })
}

pub fn is_ideal(t: &TwoOpAlgebra, s: &Subspace) -> Result<bool> {
    if s.ambient() != t.dim() {
        return Err(Error::dims(format!("subspace of ambient {} in dimension {}", s.ambient(), t.dim())));
    }
    Ok(closed_under(&[&t.succ, &t.prec], s))
}

pub fn is_ideal_algebra(a: &Algebra, s: &Subspace) -> Result<bool> {
    if s.ambient() != a.dim() {
        return Err(Error::dims(format!("subspace of ambient {} in dimension {}", s.ambient(), a.dim())));
    }
    Ok(closed_under(&[&a.mul], s))
}

/// Structure constants of `op` on `V/s` in the basis of the standard vectors
/// complementary to the pivots of `s`.
pub fn quotient_op(op: &BilinearOp, s: &Subspace) -> BilinearOp {
    let comp = s.complement_indices();
    let q = comp.len();
    let mut out = BilinearOp::zero(q);
    for (a, &i) in comp.iter().enumerate() {
        for (b, &j) in comp.iter().enumerate() {
            let rem = s.reduce(op.product(i, j));
            for (c, &k) in comp.iter().enumerate() {
                out.set(a, b, c, rem[k].clone());
            }
        }
    }
    out
}

pub fn quotient_by_ideal(t: &TwoOpAlgebra, s: &Subspace) -> Result<TwoOpAlgebra> {
    if !is_ideal(t, s)? {
        return Err(Error::precondition("subspace is not an ideal"));
    }
    Ok(TwoOpAlgebra { succ: quotient_op(&t.succ, s), prec: quotient_op(&t.prec, s) })
}

/// `A / Z(A)`, defined when the centers of `(A, ∗)` and `(A, ≻, ≺)` agree.
pub fn quotient_by_center(t: &TwoOpAlgebra) -> Result<TwoOpAlgebra> {
    if !check_rhizaform(t).pass() {
        return Err(Error::precondition("input is not rhizaform"));
    }
    let z_sum = center_algebra(&sum_operation(t));
    let z = center(t);
    if z_sum != z {
        return Err(Error::CenterMismatch { sum_dim: z_sum.dim(), two_op_dim: z.dim() });
    }
    let q = quotient_by_ideal(t, &z)?;
    if !check_rhizaform(&q).pass() {
        return Err(Error::PostconditionFailed("quotient is not rhizaform".into()));
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rh1() -> TwoOpAlgebra {
        TwoOpAlgebra::new(BilinearOp::zero(2), BilinearOp::from_ints(2, &[((0, 0, 1), 1)])).unwrap()
    }

    fn rh2(l: i64) -> TwoOpAlgebra {
        TwoOpAlgebra::new(BilinearOp::from_ints(2, &[((0, 0, 1), 1)]), BilinearOp::from_ints(2, &[((0, 0, 1), l)]))
            .unwrap()
    }

    #[test]
    fn products() {
        let full = Subspace::full(2);
        assert_eq!(subspace_product(&rh1(), &full, &full, Which::Both).unwrap(), Subspace::coordinate(2, [1]));
        assert!(subspace_product(&rh1(), &full, &Subspace::zero(2), Which::Both).unwrap().is_zero());
        assert!(subspace_product(&rh1(), &full, &full, Which::Succ).unwrap().is_zero());
        assert!(subspace_product(&TwoOpAlgebra::zero(2), &full, &full, Which::Both).unwrap().is_zero());
    }

    #[test]
    fn series_examples() {
        for kind in SeriesKind::ALL {
            let s = series(&rh1(), kind, 10);
            assert_eq!(s.terms, vec![Subspace::full(2), Subspace::coordinate(2, [1]), Subspace::zero(2)]);
            assert_eq!(s.nilindex, Some(3));
            assert_eq!(series(&rh2(1), kind, 10).nilindex, Some(3));
            assert_eq!(is_nilpotent(&TwoOpAlgebra::zero(2), kind), Some(2));
        }
    }

    #[test]
    fn full_series_repeat_is_not_final() {
        // x·x = y, y·y = z, z·z = w: degrees 3 and 4 agree but degree 5 is smaller.
        let op = BilinearOp::from_ints(4, &[((0, 0, 1), 1), ((1, 1, 2), 1), ((2, 2, 3), 1)]);
        let t = TwoOpAlgebra::new(op, BilinearOp::zero(4)).unwrap();
        let s = series(&t, SeriesKind::Full, SERIES_CAP);
        assert_eq!(s.terms[2], s.terms[3]);
        assert_eq!(s.terms[4], Subspace::coordinate(4, [3]));
        assert_eq!(s.nilindex, Some(9));
    }

    #[test]
    fn idempotent_is_not_nilpotent() {
        let op = BilinearOp::from_ints(3, &[((0, 0, 0), 1)]);
        let t = TwoOpAlgebra::new(op, BilinearOp::zero(3)).unwrap();
        for kind in SeriesKind::ALL {
            assert_eq!(is_nilpotent(&t, kind), None);
        }
    }

    #[test]
    fn two_nilpotency() {
        assert!(is_2_nilpotent(&rh2(-1)));
        assert!(is_2_nilpotent(&rh1()));
        let op = BilinearOp::from_ints(3, &[((0, 0, 1), 1), ((1, 0, 2), 1)]);
        assert!(!is_2_nilpotent(&TwoOpAlgebra::new(op, BilinearOp::zero(3)).unwrap()));
    }

    #[test]
    fn centers_and_ideals() {
        let a = sum_operation(&rh1());
        assert_eq!(center_algebra(&a), Subspace::coordinate(2, [1]));
        assert_eq!(center(&TwoOpAlgebra::zero(2)), Subspace::full(2));
        assert_eq!(center(&rh2(5)), Subspace::coordinate(2, [1]));
        assert!(is_ideal(&rh1(), &center(&rh1())).unwrap());
        assert!(is_ideal(&rh1(), &Subspace::full(2)).unwrap());
        assert!(!is_ideal(&rh1(), &Subspace::coordinate(2, [0])).unwrap());
    }

    #[test]
    fn quotients() {
        let q = quotient_by_center(&rh1()).unwrap();
        assert_eq!(q.dim(), 1);
        assert!(q.is_zero());
        let z = quotient_by_center(&TwoOpAlgebra::zero(2)).unwrap();
        assert_eq!(z.dim(), 0);
    }
}
