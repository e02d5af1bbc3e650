//! Canonical forms, isomorphism and the parametric classification of
//! rhizaform algebras in dimensions one and two.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{BilinearOp, TwoOpAlgebra};
use crate::error::{Error, Result};
use crate::identities::{check_rhizaform, rhizaform_residuals};
use crate::matrix::Matrix;
use crate::poly::{solve, Branch, Poly};
use crate::scalar::{Coeff, Scalar};
use crate::subspace::Subspace;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum ClassTag {
    /// `e1≺e1 = e2`
    Rh1,
    /// `e1≻e1 = e2`, `e1≺e1 = λe2`
    Rh2(Scalar),
    /// zero products
    Rh3,
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassTag::Rh1 => write!(f, "Rh1"),
            ClassTag::Rh2(l) => write!(f, "Rh2[{l}]"),
            ClassTag::Rh3 => write!(f, "Rh3"),
        }
    }
}

impl ClassTag {
    /// The class of `e1≻e1 = γe2`, `e1≺e1 = (1−γ)e2`.
    pub fn of_gamma(gamma: &Scalar) -> ClassTag {
        if gamma.is_zero() {
            ClassTag::Rh1
        } else {
            ClassTag::Rh2((&Scalar::ONE - gamma).checked_div(gamma).expect("nonzero"))
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CanonicalClass2 {
    pub tag: ClassTag,
    /// Maps the input isomorphically onto the representative.
    pub witness: Matrix,
}

pub fn representative(tag: &ClassTag) -> TwoOpAlgebra {
    let mut t = TwoOpAlgebra::zero(2);
    match tag {
        ClassTag::Rh1 => t.prec.set(0, 0, 1, Scalar::ONE),
        ClassTag::Rh2(l) => {
            t.succ.set(0, 0, 1, Scalar::ONE);
            t.prec.set(0, 0, 1, l.clone());
        }
        ClassTag::Rh3 => {}
    }
    t
}

/// `e1≻e1 = γe2`, `e1≺e1 = (1−γ)e2`.
pub fn gamma_family(gamma: &Scalar) -> TwoOpAlgebra {
    let mut t = TwoOpAlgebra::zero(2);
    t.succ.set(0, 0, 1, gamma.clone());
    t.prec.set(0, 0, 1, &Scalar::ONE - gamma);
    t
}

fn check_dim2(t: &TwoOpAlgebra) -> Result<()> {
    if t.dim() != 2 {
        return Err(Error::precondition(format!("dimension {} is not 2", t.dim())));
    }
    if !check_rhizaform(t).pass() {
        return Err(Error::precondition("input is not rhizaform"));
    }
    Ok(())
}

pub fn canon2(t: &TwoOpAlgebra) -> Result<CanonicalClass2> {
    check_dim2(t)?;
    let mut products = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            products.push(t.succ.product(i, j).to_vec());
            products.push(t.prec.product(i, j).to_vec());
        }
    }
    let image = Subspace::span(2, &products)?;
    if image.is_zero() {
        return Ok(CanonicalClass2 { tag: ClassTag::Rh3, witness: Matrix::identity(2) });
    }
    if image.dim() > 1 {
        return Err(Error::PostconditionFailed("products span the whole space".into()));
    }
    let mut e1 = vec![Scalar::ZERO; 2];
    e1[image.complement_indices()[0]] = Scalar::ONE;
    let s = t.succ.eval(&e1, &e1)?;
    let p = t.prec.eval(&e1, &e1)?;
    let (tag, e2) = if let Some(idx) = s.iter().position(|x| !x.is_zero()) {
        let lambda = p[idx].checked_div(&s[idx])?;
        (ClassTag::Rh2(lambda), s)
    } else if p.iter().any(|x| !x.is_zero()) {
        (ClassTag::Rh1, p)
    } else {
        return Err(Error::PostconditionFailed("square of the complement vector vanishes".into()));
    };
    let witness = Matrix::from_columns(&[e1, e2], 2)?.invert()?;
    if t.transport(&witness)? != representative(&tag) {
        return Err(Error::PostconditionFailed(format!("witness does not map onto {tag}")));
    }
    Ok(CanonicalClass2 { tag, witness })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Iso2 {
    Isomorphic(Matrix),
    /// Distinguished by the named invariant.
    Distinct { invariant: &'static str, left: ClassTag, right: ClassTag },
}

pub fn iso2(t1: &TwoOpAlgebra, t2: &TwoOpAlgebra) -> Result<Iso2> {
    let c1 = canon2(t1)?;
    let c2 = canon2(t2)?;
    if c1.tag == c2.tag {
        let phi = c2.witness.invert()?.mul(&c1.witness)?;
        return Ok(Iso2::Isomorphic(phi));
    }
    let invariant = match (&c1.tag, &c2.tag) {
        (ClassTag::Rh2(_), ClassTag::Rh2(_)) => "lambda",
        _ => "class",
    };
    Ok(Iso2::Distinct { invariant, left: c1.tag, right: c2.tag })
}

/// Names of the eight unknown `≻` constants `s{i}{j}{k}` (one-based).
pub fn succ_variable_names() -> Vec<String> {
    let mut out = Vec::new();
    for i in 1..=2 {
        for j in 1..=2 {
            for k in 1..=2 {
                out.push(format!("s{i}{j}{k}"));
            }
        }
    }
    out
}

fn residual_equations(succ: &BilinearOp<Poly>, prec: &BilinearOp<Poly>) -> Vec<Poly> {
    rhizaform_residuals(succ, prec).into_iter().flat_map(|r| r.value).filter(|p| !p.is_zero()).collect()
}

/// The rhizaform system in dimension one, unknowns `α = e≻e`, `β = e≺e`.
pub fn solve_dim1() -> Vec<Branch> {
    let succ = BilinearOp::from_fn(1, |_, _, _| Poly::var(0));
    let prec = BilinearOp::from_fn(1, |_, _, _| Poly::var(1));
    solve(&residual_equations(&succ, &prec))
}

/// One solution family of compatible structures on a 2-dimensional base.
#[derive(Clone, Debug)]
pub struct Family {
    pub base: &'static str,
    pub succ: BilinearOp<Poly>,
    pub prec: BilinearOp<Poly>,
    pub branch: Branch,
    /// Sampled members with their canonical classes.
    pub samples: Vec<(TwoOpAlgebra, CanonicalClass2)>,
}

impl Family {
    pub fn free_vars(&self) -> Vec<usize> {
        self.branch.free_vars(8)
    }

    /// The member obtained by assigning values to the free variables.
    pub fn instantiate(&self, values: &BTreeMap<usize, Scalar>) -> Option<TwoOpAlgebra> {
        if !self.branch.admits(values) {
            return None;
        }
        let ev = |op: &BilinearOp<Poly>| -> Option<BilinearOp> {
            let nested = op
                .to_nested()
                .into_iter()
                .map(|r| r.into_iter().map(|v| v.into_iter().map(|p| p.eval(values)).collect()).collect())
                .collect::<Option<Vec<Vec<Vec<Scalar>>>>>()?;
            BilinearOp::from_nested(2, nested).ok()
        };
        TwoOpAlgebra::new(ev(&self.succ)?, ev(&self.prec)?).ok()
    }
}

#[derive(Clone, Debug)]
pub struct Classification2 {
    pub families: Vec<Family>,
}

impl Classification2 {
    pub fn classes(&self, base: &str) -> Vec<ClassTag> {
        let mut tags: Vec<ClassTag> = self
            .families
            .iter()
            .filter(|f| f.base == base)
            .flat_map(|f| f.samples.iter().map(|(_, c)| c.tag.clone()))
            .collect();
        tags.sort();
        tags.dedup();
        tags
    }
}

const SAMPLE_VALUES: [i64; 5] = [1, -1, 2, 0, -3];
const SAMPLES_PER_FAMILY: usize = 64;

fn sample_family(f: &mut Family) {
    let free = f.free_vars();
    let mut counters = vec![0usize; free.len()];
    let total = SAMPLE_VALUES.len().checked_pow(free.len() as u32).unwrap_or(usize::MAX);
    for _ in 0..total.min(4096) {
        let values: BTreeMap<usize, Scalar> =
            free.iter().zip(&counters).map(|(&v, &c)| (v, Scalar::int(SAMPLE_VALUES[c]))).collect();
        if let Some(t) = f.instantiate(&values) {
            let c = canon2(&t).expect("solutions of the system are rhizaform");
            f.samples.push((t, c));
            if f.samples.len() >= SAMPLES_PER_FAMILY {
                return;
            }
        }
        for c in counters.iter_mut() {
            *c += 1;
            if *c < SAMPLE_VALUES.len() {
                break;
            }
            *c = 0;
        }
    }
}

/// Solves the rhizaform axioms for all structures `≻, ≺` whose sum is the
/// given 2-dimensional multiplication, by case splitting over the eight `≻`
/// constants with `≺ = ∗ − ≻`.
pub fn compatible_structures(base: &'static str, mul: &BilinearOp) -> Vec<Family> {
    let succ = BilinearOp::from_fn(2, |i, j, k| Poly::var((i * 2 + j) * 2 + k));
    let mul_p = BilinearOp::from_fn(2, |i, j, k| Poly::constant(mul.get(i, j, k).clone()));
    let prec = mul_p.sub(&succ).expect("dimension 2");
    solve(&residual_equations(&succ, &prec))
        .into_iter()
        .map(|branch| {
            let sub = |op: &BilinearOp<Poly>| BilinearOp::from_fn(2, |i, j, k| {
                let mut p = op.get(i, j, k).clone();
                for (v, val) in &branch.assignment {
                    p = p.substitute(*v, val);
                }
                p
            });
            let mut f = Family { base, succ: sub(&succ), prec: sub(&prec), branch: branch.clone(), samples: Vec::new() };
            sample_family(&mut f);
            f
        })
        .collect()
}

pub const NONABELIAN: &str = "nonabelian";
pub const ABELIAN: &str = "abelian";

/// Compatible structures on both 2-dimensional anti-associative algebras.
pub fn classify2() -> Classification2 {
    let nonabelian = BilinearOp::from_ints(2, &[((0, 0, 1), 1)]);
    let mut families = compatible_structures(NONABELIAN, &nonabelian);
    families.extend(compatible_structures(ABELIAN, &BilinearOp::zero(2)));
    Classification2 { families }
}

/// Variables of the isomorphism system between `Rh2[λ]` and `Rh2[μ]`.
pub const ISO_VARS: [&str; 7] = ["lambda", "mu", "a", "b", "c", "d", "delta"];

/// Solves for all invertible `φ = [[a, b], [c, d]]` with `φ: Rh2[λ] → Rh2[μ]`,
/// with invertibility imposed as `δ·det φ = 1`.
pub fn lambda_invariance_branches() -> Vec<Branch> {
    let v = |i: usize| Poly::var(i);
    let (lambda, mu, a, b, c, d, delta) = (v(0), v(1), v(2), v(3), v(4), v(5), v(6));
    let rep = |l: Poly| {
        let mut s = BilinearOp::<Poly>::zero(2);
        let mut p = BilinearOp::<Poly>::zero(2);
        s.set(0, 0, 1, Poly::one());
        p.set(0, 0, 1, l);
        (s, p)
    };
    let (s1, p1) = rep(lambda);
    let (s2, p2) = rep(mu);
    let cols = [vec![a.clone(), c.clone()], vec![b.clone(), d.clone()]];
    let apply = |x: &[Poly]| -> Vec<Poly> {
        (0..2).map(|r| cols[0][r].mul_ref(&x[0]).add_ref(&cols[1][r].mul_ref(&x[1]))).collect()
    };
    let mut eqs = Vec::new();
    for (o1, o2) in [(&s1, &s2), (&p1, &p2)] {
        for i in 0..2 {
            for j in 0..2 {
                let lhs = apply(o1.product(i, j));
                let rhs = o2.eval(&cols[i], &cols[j]).expect("dimension 2");
                eqs.extend(lhs.iter().zip(&rhs).map(|(x, y)| x.sub_ref(y)));
            }
        }
    }
    let det = a.mul_ref(&d).sub_ref(&b.mul_ref(&c));
    eqs.push(delta.mul_ref(&det).sub_ref(&Poly::one()));
    solve(&eqs)
}
