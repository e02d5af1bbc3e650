//! Deterministic instance families used by the property suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{sum_operation, Algebra, BilinearOp, TwoOpAlgebra};
use crate::classify::{gamma_family, representative, ClassTag};
use crate::cocycle::{build_double, cocycle_induce};
use crate::identities::check_rhizaform;
use crate::matrix::Matrix;
use crate::operators::{embed_t_hat, hat_identity_rb, rb_induce, rb_search, OOperator};
use crate::representations::{dual_bimodule, regular_bimodule, rhizaform_bimodule, Bimodule};
use crate::scalar::{rationals_of_height, Scalar};

#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub t: TwoOpAlgebra,
}

fn inst(name: impl Into<String>, t: TwoOpAlgebra) -> Instance {
    Instance { name: name.into(), t }
}

/// `e1∗e1 = e2`.
pub fn nonabelian2() -> Algebra {
    Algebra::new(BilinearOp::from_ints(2, &[((0, 0, 1), 1)]))
}

/// `e1e1 = e2`, `e1e2 = e3`, `e2e1 = −e3`.
pub fn n3() -> Algebra {
    Algebra::new(BilinearOp::from_ints(3, &[((0, 0, 1), 1), ((0, 1, 2), 1), ((1, 0, 2), -1)]))
}

pub fn sample_lambdas() -> Vec<Scalar> {
    vec![
        Scalar::ZERO,
        Scalar::ONE,
        Scalar::int(-1),
        Scalar::int(2),
        Scalar::frac(1, 2),
        Scalar::frac(-1, 2),
        Scalar::int(3),
        Scalar::frac(-4, 3),
        Scalar::i(),
    ]
}

/// Rh1, Rh2[λ] for the sampled λ, Rh3, and a few γ-family members.
pub fn representatives() -> Vec<Instance> {
    let mut out = vec![inst("Rh1", representative(&ClassTag::Rh1))];
    for l in sample_lambdas() {
        let tag = ClassTag::Rh2(l);
        out.push(inst(tag.to_string(), representative(&tag)));
    }
    out.push(inst("Rh3", representative(&ClassTag::Rh3)));
    for g in [Scalar::frac(1, 3), Scalar::int(2), Scalar::int(-3)] {
        out.push(inst(format!("gamma[{g}]"), gamma_family(&g)));
    }
    out
}

fn distinct_push(out: &mut Vec<Instance>, seen: &mut Vec<TwoOpAlgebra>, name: String, t: TwoOpAlgebra) {
    if !seen.contains(&t) {
        seen.push(t.clone());
        out.push(inst(name, t));
    }
}

/// Structures induced by Rota–Baxter operators found by bounded search.
pub fn rota_baxter_induced() -> Vec<Instance> {
    let mut out = Vec::new();
    let mut seen = Vec::new();
    for (name, a, h, limit) in [("A2", nonabelian2(), 2, 8), ("N3", n3(), 1, 8)] {
        let hits = rb_search(&a, h).expect("anti-associative");
        let before = out.len();
        for (idx, r) in hits.iter().enumerate() {
            let t = rb_induce(&a, r).expect("search returns operators");
            if t.is_zero() {
                continue;
            }
            distinct_push(&mut out, &mut seen, format!("rb[{name}#{idx}]"), t);
            if out.len() - before >= limit {
                break;
            }
        }
    }
    out
}

/// 2-nilpotent structures with `≺ = −≻`, where `≻` maps `V × V` into `W`.
pub fn zero_sum(seed: u64, count: usize) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|c| {
            let v = rng.gen_range(1..=2);
            let w = rng.gen_range(1..=2);
            let succ = BilinearOp::from_fn(v + w, |i, j, k| {
                if i < v && j < v && k >= v {
                    Scalar::int(rng.gen_range(-3..=3))
                } else {
                    Scalar::ZERO
                }
            });
            inst(format!("zero-sum#{c}"), TwoOpAlgebra::new(succ.clone(), succ.neg()).expect("same dim"))
        })
        .collect()
}

/// A random invertible integer matrix.
pub fn random_invertible(rng: &mut impl Rng, n: usize) -> Matrix {
    loop {
        let m = Matrix::from_fn(n, n, |_, _| Scalar::int(rng.gen_range(-2..=2)));
        if m.is_invertible() {
            return m;
        }
    }
}

/// The full rhizaform corpus, all of dimension at most 6.
pub fn rhizaform_corpus() -> Vec<Instance> {
    let reps = representatives();
    let mut out = reps.clone();
    let n3s = TwoOpAlgebra::new(n3().mul, BilinearOp::zero(3)).expect("dim 3");
    let n3p = TwoOpAlgebra::new(BilinearOp::zero(3), n3().mul).expect("dim 3");
    out.push(inst("N3-succ", n3s.clone()));
    out.push(inst("N3-prec", n3p.clone()));

    let by = |name: &str| reps.iter().find(|i| i.name == name).expect("representative").t.clone();
    out.push(inst("Rh1+Rh2[2]", by("Rh1").direct_sum(&by("Rh2[2]"))));
    out.push(inst("N3-succ+Rh1", n3s.direct_sum(&by("Rh1"))));
    out.push(inst("Rh2[-1]+Rh3+Rh1", by("Rh2[-1]").direct_sum(&by("Rh3")).direct_sum(&by("Rh1"))));
    out.push(inst("N3-prec+Rh2[1/2]", n3p.direct_sum(&by("Rh2[1/2]"))));

    out.extend(rota_baxter_induced());

    for r in reps.iter().take(8) {
        let (h, id_hat) = hat_identity_rb(&r.t).expect("rhizaform");
        out.push(inst(format!("hat-rb[{}]", r.name), rb_induce(&h, &id_hat).expect("Rota-Baxter")));
    }
    for (name, t) in [("N3-succ", &n3s), ("N3-prec", &n3p)] {
        let o = OOperator::new(rhizaform_bimodule(t), Matrix::identity(3)).expect("shape");
        let (s, t_hat) = embed_t_hat(&o).expect("bimodule");
        out.push(inst(format!("semidirect-rb[{name}]"), rb_induce(&s, &t_hat).expect("Rota-Baxter")));
    }
    let reg = regular_bimodule(&n3()).expect("anti-associative");
    let dual = dual_bimodule(&reg).expect("bimodule");
    for (name, b) in [("regular", reg), ("dual", dual)] {
        let t = Matrix::from_fn(3, 3, |i, j| if i == 2 && j == 0 { Scalar::ONE } else { Scalar::ZERO });
        let o = OOperator::new(b, t).expect("shape");
        if let Ok((s, t_hat)) = embed_t_hat(&o) {
            if let Ok(x) = rb_induce(&s, &t_hat) {
                out.push(inst(format!("semidirect-rb[N3-{name}]"), x));
            }
        }
    }

    let mut doubles: Vec<(String, TwoOpAlgebra)> =
        reps.iter().take(8).map(|r| (r.name.clone(), r.t.clone())).collect();
    doubles.push(("N3-succ".into(), n3s));
    doubles.push(("N3-prec".into(), n3p));
    for (name, t) in doubles {
        let w = build_double(&t).expect("rhizaform");
        if let Ok(x) = cocycle_induce(&w.ambient, &w.form) {
            out.push(inst(format!("cocycle[{name}]"), x));
        }
    }

    out.extend(zero_sum(0x5eed, 6));

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut picks: Vec<Instance> = out.iter().filter(|i| i.t.dim() <= 4).cloned().collect();
    picks.shuffle(&mut rng);
    for p in picks.into_iter().take(10) {
        let phi = random_invertible(&mut rng, p.t.dim());
        out.push(inst(format!("moved[{}]", p.name), p.t.transport(&phi).expect("invertible")));
    }
    debug_assert!(out.iter().all(|i| check_rhizaform(&i.t).pass()));
    out
}

/// Instances obtained by perturbing one structure constant of corpus
/// members until the rhizaform axioms fail.
pub fn perturbed(seed: u64, base: &[Instance], count: usize) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values: Vec<Scalar> = rationals_of_height(3).into_iter().filter(|s| !s.is_zero()).collect();
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < count * 50 {
        attempts += 1;
        let src = &base[rng.gen_range(0..base.len())];
        let n = src.t.dim();
        if n == 0 {
            continue;
        }
        let mut t = src.t.clone();
        let (i, j, k) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
        let delta = values.choose(&mut rng).expect("nonempty").clone();
        let op = if rng.gen_bool(0.5) { &mut t.succ } else { &mut t.prec };
        let v = op.get(i, j, k) + &delta;
        op.set(i, j, k, v);
        if !check_rhizaform(&t).pass() {
            out.push(inst(format!("perturbed[{}]", src.name), t));
        }
    }
    out
}

/// Bimodules passing the bimodule conditions, for O-operator experiments.
pub fn bimodule_pool() -> Vec<(String, Bimodule)> {
    let mut out = Vec::new();
    for (name, a) in [("A2", nonabelian2()), ("N3", n3()), ("zero2", Algebra::zero(2))] {
        let reg = regular_bimodule(&a).expect("anti-associative");
        out.push((format!("regular[{name}]"), reg.clone()));
        out.push((format!("dual[{name}]"), dual_bimodule(&reg).expect("bimodule")));
    }
    for r in representatives().into_iter().take(5) {
        let b = rhizaform_bimodule(&r.t);
        out.push((format!("rhizaform[{}]", r.name), b));
    }
    out.push(("zero-module[A2->1]".into(), Bimodule::zero(nonabelian2(), 1)));
    out
}

/// Random maps `T: V → A` with entries of height at most 3 on bimodules with
/// `n, m ≤ 3`. Every fourth map is rescaled from a known O-operator so both
/// outcomes occur.
pub fn random_o_operators(seed: u64, count: usize) -> Vec<(String, OOperator)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = bimodule_pool();
    let values = rationals_of_height(3);
    let a2_hits = rb_search(&nonabelian2(), 1).expect("anti-associative");
    (0..count)
        .map(|c| {
            let (name, b) = &pool[rng.gen_range(0..pool.len())];
            let (n, m) = (b.base_dim(), b.module_dim);
            let t = match c % 4 {
                0 if name == "regular[A2]" => a2_hits.choose(&mut rng).expect("nonempty").clone(),
                0 if name.starts_with("rhizaform") => Matrix::identity(n).scale(values.choose(&mut rng).expect("nonempty")),
                1 => {
                    // Sparse maps: a single nonzero entry.
                    let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..m));
                    let v = values.choose(&mut rng).expect("nonempty").clone();
                    Matrix::from_fn(n, m, |r, s| if (r, s) == (i, j) { v.clone() } else { Scalar::ZERO })
                }
                _ => Matrix::from_fn(n, m, |_, _| values.choose(&mut rng).expect("nonempty").clone()),
            };
            (format!("{name}#{c}"), OOperator::new(b.clone(), t).expect("shape"))
        })
        .collect()
}

/// Anti-associative algebras from the corpus: sum algebras and hat-doubles.
pub fn anti_associative_corpus() -> Vec<(String, Algebra)> {
    let mut out = vec![("A2".to_string(), nonabelian2()), ("N3".to_string(), n3())];
    for i in representatives() {
        out.push((format!("hat[{}]", i.name), crate::representations::hat_double(&i.t)));
        out.push((format!("sum[{}]", i.name), sum_operation(&i.t)));
    }
    out
}
