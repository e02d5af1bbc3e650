//! Sparse multivariate polynomials with exact coefficients, and a small
//! case-splitting solver for the quadratic systems that arise when structure
//! constants are left symbolic.
//!
//! The solver eliminates variables that occur linearly with a constant
//! coefficient and otherwise splits on `v = 0` versus `v != 0`. Every branch
//! it returns is a parametric family: the assigned variables are polynomials
//! in the free ones, subject to inequations and any residual equations the
//! rules could not resolve. The union of the branches is exactly the solution
//! set.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::scalar::{Coeff, Scalar};

/// Sorted `(variable, exponent)` pairs with positive exponents.
pub type Monomial = Vec<(usize, u32)>;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Scalar>,
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl Poly {
    pub fn constant(c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Poly { terms }
    }

    pub fn var(v: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![(v, 1)], Scalar::ONE);
        Poly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::ZERO),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn vars(&self) -> BTreeSet<usize> {
        self.terms.keys().flat_map(|m| m.iter().map(|&(v, _)| v)).collect()
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms
            .keys()
            .filter_map(|m| m.iter().find(|&&(w, _)| w == v).map(|&(_, e)| e))
            .max()
            .unwrap_or(0)
    }

    /// Splits `self = coeff·v + rest` when `v` has degree one.
    pub fn linear_split(&self, v: usize) -> Option<(Poly, Poly)> {
        if self.degree_in(v) != 1 {
            return None;
        }
        let mut coeff = Poly::default();
        let mut rest = Poly::default();
        for (m, c) in &self.terms {
            if m.iter().any(|&(w, _)| w == v) {
                let reduced: Monomial = m.iter().copied().filter(|&(w, _)| w != v).collect();
                coeff.add_term(reduced, c.clone());
            } else {
                rest.add_term(m.clone(), c.clone());
            }
        }
        Some((coeff, rest))
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        let mut out = Poly::default();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * s);
        }
        out
    }

    fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::constant(Scalar::ONE);
        for _ in 0..e {
            out = out.mul_ref(self);
        }
        out
    }

    /// Replaces variable `v` by `value`.
    pub fn substitute(&self, v: usize, value: &Poly) -> Poly {
        if !self.vars().contains(&v) {
            return self.clone();
        }
        let mut out = Poly::default();
        for (m, c) in &self.terms {
            let mut rest: Monomial = Vec::new();
            let mut e = 0;
            for &(w, k) in m {
                if w == v {
                    e = k;
                } else {
                    rest.push((w, k));
                }
            }
            let mut t = Poly::default();
            t.add_term(rest, c.clone());
            out = out.add_ref(&t.mul_ref(&value.pow(e)));
        }
        out
    }

    pub fn eval(&self, values: &BTreeMap<usize, Scalar>) -> Option<Scalar> {
        let mut acc = Scalar::ZERO;
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m {
                let x = values.get(&v)?;
                for _ in 0..e {
                    t = &t * x;
                }
            }
            acc = &acc + &t;
        }
        Some(acc)
    }

    /// Divides out every power of a variable in `vars` that divides all terms.
    fn strip_factors(&self, vars: &BTreeSet<usize>) -> Poly {
        let mut common: BTreeMap<usize, u32> = BTreeMap::new();
        let mut first = true;
        for m in self.terms.keys() {
            let here: BTreeMap<usize, u32> =
                m.iter().filter(|(v, _)| vars.contains(v)).copied().collect();
            if first {
                common = here;
                first = false;
            } else {
                common = common
                    .into_iter()
                    .filter_map(|(v, e)| here.get(&v).map(|&f| (v, e.min(f))))
                    .collect();
            }
        }
        if common.is_empty() {
            return self.clone();
        }
        let mut out = Poly::default();
        for (m, c) in &self.terms {
            let reduced: Monomial = m
                .iter()
                .filter_map(|&(v, e)| {
                    let k = e - common.get(&v).copied().unwrap_or(0);
                    (k > 0).then_some((v, k))
                })
                .collect();
            out.add_term(reduced, c.clone());
        }
        out
    }

    /// Variables dividing every term.
    fn common_vars(&self) -> BTreeSet<usize> {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return BTreeSet::new() };
        let mut common: BTreeSet<usize> = first.iter().map(|&(v, _)| v).collect();
        for m in it {
            let here: BTreeSet<usize> = m.iter().map(|&(v, _)| v).collect();
            common = common.intersection(&here).copied().collect();
        }
        common
    }

    fn monic(&self) -> Poly {
        match self.terms.values().next_back() {
            Some(lead) if !lead.is_one() => self.scale(&lead.inverse().expect("nonzero coefficient")),
            _ => self.clone(),
        }
    }

    /// Renders with the given variable names.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, names }
    }
}

struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let negative = c.is_real() && c.re().is_negative();
            let c = if negative { -c } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = m
                .iter()
                .map(|&(v, e)| {
                    let n = self.names.get(v).cloned().unwrap_or_else(|| format!("x{v}"));
                    if e == 1 {
                        n
                    } else {
                        format!("{n}^{e}")
                    }
                })
                .collect();
            let coeff = if c.is_real() { c.to_string() } else { format!("({c})") };
            if vars.is_empty() {
                write!(f, "{coeff}")?;
            } else if c.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{coeff}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

impl Coeff for Poly {
    fn zero() -> Self {
        Poly::default()
    }
    fn one() -> Self {
        Poly::constant(Scalar::ONE)
    }
    fn from_int(v: i64) -> Self {
        Poly::constant(Scalar::int(v))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }
    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Poly::default();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(mono_mul(m1, m2), c1 * c2);
            }
        }
        out
    }
    fn neg_ref(&self) -> Self {
        self.scale(&Scalar::int(-1))
    }
}

/// One parametric family of solutions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    /// Eliminated variables, each a polynomial in the free variables.
    pub assignment: BTreeMap<usize, Poly>,
    /// Polynomials (in free variables) required to be nonzero.
    pub nonzero: Vec<Poly>,
    /// Equations among free variables left unresolved.
    pub residual: Vec<Poly>,
}

impl Branch {
    /// Value of variable `v` as a polynomial in the free variables.
    pub fn value_of(&self, v: usize) -> Poly {
        self.assignment.get(&v).cloned().unwrap_or_else(|| Poly::var(v))
    }

    /// Variables among `0..nvars` left free.
    pub fn free_vars(&self, nvars: usize) -> Vec<usize> {
        (0..nvars).filter(|v| !self.assignment.contains_key(v)).collect()
    }

    /// Whether an assignment of the free variables satisfies the side
    /// conditions of this branch.
    pub fn admits(&self, values: &BTreeMap<usize, Scalar>) -> bool {
        self.nonzero.iter().all(|p| p.eval(values).is_some_and(|x| !x.is_zero()))
            && self.residual.iter().all(|p| p.eval(values).is_some_and(|x| x.is_zero()))
    }
}

#[derive(Clone)]
struct State {
    eqs: Vec<Poly>,
    assignment: BTreeMap<usize, Poly>,
    nonzero_vars: BTreeSet<usize>,
    nonzero_polys: Vec<Poly>,
    parked: Vec<Poly>,
}

enum Step {
    Continue,
    Dead,
    Done,
    Split(usize),
}

impl State {
    fn assign(&mut self, v: usize, value: Poly) -> bool {
        for p in self.assignment.values_mut() {
            *p = p.substitute(v, &value);
        }
        self.assignment.insert(v, value.clone());
        let parked = std::mem::take(&mut self.parked);
        self.eqs.extend(parked);
        for e in &mut self.eqs {
            *e = e.substitute(v, &value);
        }
        let mut polys: Vec<Poly> = self.nonzero_polys.iter().map(|p| p.substitute(v, &value)).collect();
        if self.nonzero_vars.remove(&v) {
            polys.push(value);
        }
        self.nonzero_polys.clear();
        for p in polys {
            if !self.add_nonzero(p) {
                return false;
            }
        }
        true
    }

    /// Records `p != 0`; false if `p` is identically zero.
    fn add_nonzero(&mut self, p: Poly) -> bool {
        if let Some(c) = p.as_constant() {
            return !c.is_zero();
        }
        if p.num_terms() == 1 {
            let (m, _) = p.terms().next().expect("one term");
            for &(v, _) in m {
                self.nonzero_vars.insert(v);
            }
            return true;
        }
        if !self.nonzero_polys.contains(&p) {
            self.nonzero_polys.push(p);
        }
        true
    }

    fn normalize(&mut self) -> bool {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for e in std::mem::take(&mut self.eqs) {
            let e = e.strip_factors(&self.nonzero_vars);
            if e.is_zero() {
                continue;
            }
            if e.as_constant().is_some() {
                return false;
            }
            let e = e.monic();
            let key = format!("{e:?}");
            if seen.insert(key) {
                out.push(e);
            }
        }
        out.sort_by_key(|e| (e.num_terms(), e.vars().len()));
        self.eqs = out;
        true
    }

    fn step(&mut self) -> Step {
        if !self.normalize() {
            return Step::Dead;
        }
        if self.eqs.is_empty() {
            return Step::Done;
        }
        // A lone monomial forces one of its variables to vanish.
        if let Some(e) = self.eqs.iter().find(|e| e.num_terms() == 1) {
            let vars: Vec<usize> = e.vars().into_iter().collect();
            if vars.len() == 1 {
                return if self.assign(vars[0], Poly::default()) { Step::Continue } else { Step::Dead };
            }
            return Step::Split(vars[0]);
        }
        // Linear elimination with a constant coefficient, preferring variables
        // not constrained to be nonzero.
        let mut best: Option<(usize, usize, bool)> = None;
        for (idx, e) in self.eqs.iter().enumerate() {
            for v in e.vars() {
                if let Some((coeff, _)) = e.linear_split(v) {
                    if coeff.as_constant().is_some() {
                        let constrained = self.nonzero_vars.contains(&v);
                        if best.is_none_or(|(_, _, c)| c && !constrained) {
                            best = Some((idx, v, constrained));
                        }
                    }
                }
            }
            if matches!(best, Some((_, _, false))) {
                break;
            }
        }
        if let Some((idx, v, _)) = best {
            let e = self.eqs.remove(idx);
            let (coeff, rest) = e.linear_split(v).expect("linear");
            let c = coeff.as_constant().expect("constant coefficient");
            let value = rest.scale(&(-c.inverse().expect("nonzero")));
            return if self.assign(v, value) { Step::Continue } else { Step::Dead };
        }
        // Factor out a common variable.
        for e in &self.eqs {
            if let Some(&u) = e.common_vars().iter().find(|u| !self.nonzero_vars.contains(u)) {
                return Step::Split(u);
            }
        }
        // Split on the most frequent unconstrained variable of the first
        // equation that has one; park equations with none.
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for e in &self.eqs {
            for v in e.vars() {
                *counts.entry(v).or_default() += 1;
            }
        }
        for idx in 0..self.eqs.len() {
            let candidates: Vec<usize> = self.eqs[idx]
                .vars()
                .into_iter()
                .filter(|v| !self.nonzero_vars.contains(v))
                .collect();
            if let Some(&u) = candidates.iter().max_by_key(|v| (counts[v], std::cmp::Reverse(**v))) {
                return Step::Split(u);
            }
        }
        self.parked.append(&mut self.eqs);
        Step::Done
    }
}

/// Solves `eqs = 0` over the ground field by case splitting.
pub fn solve(eqs: &[Poly]) -> Vec<Branch> {
    let start = State {
        eqs: eqs.to_vec(),
        assignment: BTreeMap::new(),
        nonzero_vars: BTreeSet::new(),
        nonzero_polys: Vec::new(),
        parked: Vec::new(),
    };
    let mut stack = vec![start];
    let mut out = Vec::new();
    while let Some(mut st) = stack.pop() {
        loop {
            match st.step() {
                Step::Continue => continue,
                Step::Dead => break,
                Step::Done => {
                    let mut nonzero: Vec<Poly> = st.nonzero_vars.iter().map(|&v| Poly::var(v)).collect();
                    nonzero.extend(st.nonzero_polys.iter().cloned());
                    out.push(Branch { assignment: st.assignment, nonzero, residual: st.parked });
                    break;
                }
                Step::Split(u) => {
                    let mut nz = st.clone();
                    nz.nonzero_vars.insert(u);
                    let mut z = st;
                    if z.assign(u, Poly::default()) {
                        stack.push(z);
                    }
                    // Explore the nonzero side after the zero side.
                    stack.insert(stack.len().saturating_sub(1), nz);
                    break;
                }
            }
        }
    }
    out
}
