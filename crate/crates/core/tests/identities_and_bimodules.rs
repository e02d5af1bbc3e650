use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rhiza::algebra::{check_diagram_commutes, circ_operation, sum_operation};
use rhiza::classify::solve_dim1;
use rhiza::corpus::{bimodule_pool, perturbed, rhizaform_corpus};
use rhiza::identities::{
    check_anti_assoc_admissible, check_anti_associative, check_pre_jacobi_jordan, check_rhizaform,
};
use rhiza::representations::{
    check_bimodule, dual_bimodule, hat_double, rhizaform_bimodule, semidirect_product, Bimodule,
};
use rhiza::{Algebra, BilinearOp, Convention, Matrix, Scalar, TwoOpAlgebra};

fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<Scalar> {
    (0..n).map(|_| Scalar::frac(rng.gen_range(-5..=5), rng.gen_range(1..=4))).collect()
}

fn vadd(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn star(t: &TwoOpAlgebra, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    vadd(&t.succ.eval(x, y).unwrap(), &t.prec.eval(x, y).unwrap())
}

#[test]
fn consequences_hold_on_the_corpus() {
    let corpus = rhizaform_corpus();
    assert!(corpus.len() >= 50);
    for inst in &corpus {
        let t = &inst.t;
        assert!(check_rhizaform(t).pass(), "{}", inst.name);
        assert!(check_anti_assoc_admissible(t).pass(), "{}", inst.name);
        assert!(check_pre_jacobi_jordan(&circ_operation(t, Convention::Plus)).pass(), "{}", inst.name);
        assert!(check_diagram_commutes(t).unwrap(), "{}", inst.name);
    }
}

#[test]
fn minus_convention_fails_somewhere() {
    let failing = rhizaform_corpus()
        .iter()
        .filter(|i| !check_pre_jacobi_jordan(&circ_operation(&i.t, Convention::Minus)).pass())
        .count();
    assert!(failing > 0);
}

#[test]
fn identities_hold_on_random_vectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for inst in rhizaform_corpus() {
        let t = &inst.t;
        let n = t.dim();
        for _ in 0..3 {
            let (x, y, z) = (random_vec(&mut rng, n), random_vec(&mut rng, n), random_vec(&mut rng, n));
            let s = |a: &[Scalar], b: &[Scalar]| t.succ.eval(a, b).unwrap();
            let p = |a: &[Scalar], b: &[Scalar]| t.prec.eval(a, b).unwrap();
            let sum_succ = vadd(&s(&star(t, &x, &y), &z), &s(&x, &s(&y, &z)));
            let prec_sum = vadd(&p(&x, &star(t, &y, &z)), &p(&p(&x, &y), &z));
            let mixed = vadd(&s(&x, &p(&y, &z)), &p(&s(&x, &y), &z));
            for v in [sum_succ, prec_sum, mixed] {
                assert!(v.iter().all(Scalar::is_zero), "{}", inst.name);
            }
            let sum = star(t, &star(t, &x, &y), &z);
            let assoc = vadd(&sum, &star(t, &x, &star(t, &y, &z)));
            assert!(assoc.iter().all(Scalar::is_zero), "{}", inst.name);
        }
    }
}

#[test]
fn dimension_one_is_trivial() {
    let branches = solve_dim1();
    assert_eq!(branches.len(), 1);
    let b = &branches[0];
    assert!(b.free_vars(2).is_empty());
    assert!(b.assignment.values().all(|p| p.as_constant() == Some(Scalar::ZERO)));
    for a in -4..=4 {
        for c in -4..=4 {
            let t = TwoOpAlgebra::new(
                BilinearOp::from_ints(1, &[((0, 0, 0), a)]),
                BilinearOp::from_ints(1, &[((0, 0, 0), c)]),
            )
            .unwrap();
            assert_eq!(check_rhizaform(&t).pass(), a == 0 && c == 0);
        }
    }
}

fn violating_bimodules() -> Vec<Bimodule> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut out = Vec::new();
    for (_, b) in bimodule_pool() {
        if b.module_dim == 0 || b.base_dim() == 0 {
            continue;
        }
        for _ in 0..4 {
            let mut c = b.clone();
            let x = rng.gen_range(0..c.base_dim());
            let (i, j) = (rng.gen_range(0..c.module_dim), rng.gen_range(0..c.module_dim));
            let fam = if rng.gen_bool(0.5) { &mut c.l } else { &mut c.r };
            let v = fam[x].get(i, j) + &Scalar::ONE;
            fam[x].set(i, j, v);
            out.push(c);
        }
    }
    out
}

#[test]
fn semidirect_product_detects_bimodules() {
    let mut seen = [0usize; 2];
    let pool = bimodule_pool().into_iter().map(|(_, b)| b).chain(violating_bimodules());
    for b in pool {
        let pass = check_bimodule(&b).unwrap().pass();
        seen[usize::from(pass)] += 1;
        assert_eq!(check_anti_associative(&semidirect_product(&b)).pass(), pass);
    }
    assert!(seen[0] > 10 && seen[1] > 5, "{seen:?}");
}

#[test]
fn dual_bimodule_passes_and_is_an_involution() {
    for (name, b) in bimodule_pool() {
        let d = dual_bimodule(&b).unwrap();
        assert!(check_bimodule(&d).unwrap().pass(), "{name}");
        assert_eq!(dual_bimodule(&d).unwrap(), b, "{name}");
    }
}

#[test]
fn rhizaform_iff_sum_and_bimodule_and_hat_double() {
    let good = rhizaform_corpus();
    let bad = perturbed(3, &good, 60);
    assert!(bad.len() >= 50);
    for inst in good.iter().chain(&bad) {
        let t = &inst.t;
        let expected = check_rhizaform(t).pass();
        let sum = sum_operation(t);
        let via_bimodule = check_anti_associative(&sum).pass()
            && check_bimodule(&Bimodule { base: sum.clone(), ..rhizaform_bimodule(t) })
                .map(|r| r.pass())
                .unwrap_or(false);
        assert_eq!(via_bimodule, expected, "{}", inst.name);
        assert_eq!(check_anti_associative(&hat_double(t)).pass(), expected, "{}", inst.name);
    }
}

#[test]
fn check_bimodule_requires_anti_associative_base() {
    let mut idem = BilinearOp::zero(1);
    idem.set(0, 0, 0, Scalar::ONE);
    let b = Bimodule::zero(Algebra::new(idem), 1);
    assert!(check_bimodule(&b).is_err());
    let ok = Bimodule::new(Algebra::zero(1), 2, vec![Matrix::zero(2, 2)], vec![Matrix::zero(2, 2)]).unwrap();
    assert!(check_bimodule(&ok).unwrap().pass());
}
