/// (golden name, arguments, extra environment, expected exit code)
pub type Case = (&'static str, &'static [&'static str], &'static [(&'static str, &'static str)], i32);

pub const CASES: &[Case] = &[
    ("check_rh1_rhizaform", &["check", "rh1.json", "--axiom=rhizaform"], &[], 0),
    ("check_not_rhizaform", &["check", "not_rhizaform.json", "--axiom=rhizaform"], &[], 1),
    ("check_missing", &["check", "missing.json", "--axiom=rhizaform"], &[], 2),
    ("check_bad_scalar", &["check", "bad_scalar.json", "--axiom=rhizaform"], &[], 2),
    ("check_bad_shape", &["check", "bad_shape.json", "--axiom=rhizaform"], &[], 2),
    ("check_bad_json", &["check", "bad_json.json", "--axiom=anti-assoc"], &[], 2),
    ("check_wrong_kind", &["check", "alg2.json", "--axiom=rhizaform"], &[], 2),
    ("check_alg2_anti_assoc", &["check", "alg2.json", "--axiom=anti-assoc"], &[], 0),
    ("check_idempotent_anti_assoc", &["check", "alg_idempotent.json", "--axiom=anti-assoc"], &[], 1),
    ("check_alg2_jacobi_jordan", &["check", "alg2.json", "--axiom=jacobi-jordan"], &[], 0),
    ("check_idempotent_jacobi_jordan", &["check", "alg_idempotent.json", "--axiom=jacobi-jordan"], &[], 1),
    ("check_alg2_pre_jj", &["check", "alg2.json", "--axiom=pre-jj"], &[], 0),
    ("check_idempotent_pre_jj", &["check", "alg_idempotent.json", "--axiom=pre-jj"], &[], 1),
    ("check_rh2_half_admissible", &["check", "rh2_half.json", "--axiom=admissible"], &[], 0),
    ("check_not_rhizaform_admissible", &["check", "not_rhizaform.json", "--axiom=admissible"], &[], 1),
    ("derive_sum", &["derive", "rh2_half.json", "--op=sum", "-o", "out/sum.json"], &[], 0),
    ("derive_circ_plus", &["derive", "rh2_half.json", "--op=circ", "-o", "out/circ.json"], &[], 0),
    ("derive_circ_minus", &["derive", "rh2_half.json", "--op=circ", "--convention=minus"], &[], 0),
    ("derive_bracket", &["derive", "rh2_i.json", "--op=bracket"], &[], 0),
    ("derive_bracket_algebra", &["derive", "alg2.json", "--op=bracket"], &[], 0),
    ("derive_sum_wrong_kind", &["derive", "alg2.json", "--op=sum"], &[], 2),
    ("bimodule_check_regular", &["bimodule", "check", "bimodule_regular.json"], &[], 0),
    ("bimodule_check_bad", &["bimodule", "check", "bimodule_bad.json"], &[], 1),
    ("semidirect_regular", &["semidirect", "bimodule_regular.json", "-o", "out/semidirect.json"], &[], 0),
    ("double_rh1", &["double", "rh1.json", "-o", "out/double.json"], &[], 0),
    ("oop_verify_pass", &["oop", "verify", "bimodule_regular.json", "rb_inv.json"], &[], 0),
    ("oop_verify_fail", &["oop", "verify", "bimodule_regular.json", "id2.json"], &[], 1),
    ("oop_verify_bad_bimodule", &["oop", "verify", "bimodule_bad.json", "id2.json"], &[], 2),
    ("oop_verify_shape", &["oop", "verify", "bimodule_regular.json", "rect.json"], &[], 2),
    ("rb_verify_identity", &["rb", "verify", "alg2.json", "id2.json"], &[], 1),
    ("rb_verify_invertible", &["rb", "verify", "alg2.json", "rb_inv.json"], &[], 0),
    ("rb_verify_zero", &["rb", "verify", "alg2.json", "zero2.json"], &[], 0),
    ("rb_verify_not_anti_assoc", &["rb", "verify", "alg_idempotent.json", "id2.json"], &[], 2),
    ("rb_verify_dims", &["rb", "verify", "alg2.json", "rect.json"], &[], 2),
    ("rb_search_height1", &["rb", "search", "alg2.json", "--height=1"], &[], 0),
    ("induce_rb", &["induce", "rb", "alg2.json", "rb_inv.json", "-o", "out/induced_rb.json"], &[], 0),
    ("induce_rb_not_rb", &["induce", "rb", "alg2.json", "id2.json", "-o", "out/nothing.json"], &[], 2),
    ("induce_oop", &["induce", "oop", "bimodule_regular.json", "rb_inv.json", "-o", "out/induced_oop.json"], &[], 0),
    (
        "induce_cocycle",
        &["induce", "cocycle", "rh1_double_algebra.json", "rh1_double_form.json", "-o", "out/induced_cocycle.json"],
        &[],
        0,
    ),
    ("induce_cocycle_not_connes", &["induce", "cocycle", "alg2.json", "form_antisym2.json"], &[], 2),
    ("cocycle_check_pass", &["cocycle", "check", "rh1_double_algebra.json", "rh1_double_form.json"], &[], 0),
    ("cocycle_check_fail", &["cocycle", "check", "alg2.json", "form_antisym2.json"], &[], 1),
    ("double_construct_rh1", &["double-construct", "rh1.json", "-o", "out/rh1_double.json"], &[], 0),
    ("double_construct_not_rhizaform", &["double-construct", "not_rhizaform.json"], &[], 2),
    ("series_full", &["series", "rh1.json", "--kind=full"], &[], 0),
    ("series_left", &["series", "rh1.json", "--kind=left"], &[], 0),
    ("series_right_max", &["series", "rh2_half.json", "--kind=right", "--max=2"], &[], 0),
    ("series_not_nilpotent", &["series", "not_rhizaform.json", "--kind=full"], &[], 0),
    ("center_rh1", &["center", "rh1.json"], &[], 0),
    ("center_algebra", &["center", "n3.json"], &[], 0),
    ("ideal_pass", &["ideal", "rh1.json", "sub_e2.json"], &[], 0),
    ("ideal_fail", &["ideal", "rh1.json", "sub_e1.json"], &[], 1),
    ("ideal_dims", &["ideal", "rh1_hat.json", "sub_e1.json"], &[], 2),
    ("quotient_center_rh1", &["quotient-center", "rh1.json", "-o", "out/quotient.json"], &[], 0),
    ("quotient_center_mismatch", &["quotient-center", "rh2_neg1.json"], &[], 2),
    ("classify2", &["classify2"], &[], 0),
    ("classify2_qi", &["classify2"], &[("RHIZA_FIELD", "Qi")], 0),
    ("classify2_bad_field", &["classify2"], &[("RHIZA_FIELD", "R")], 2),
    ("canon2_rh2_half", &["canon2", "rh2_half.json"], &[], 0),
    ("canon2_rh2_i", &["canon2", "rh2_i.json"], &[], 0),
    ("canon2_not_rhizaform", &["canon2", "not_rhizaform.json"], &[], 2),
    ("iso2_same", &["iso2", "rh2_half.json", "rh2_half.json"], &[], 0),
    ("iso2_lambda", &["iso2", "rh2_half.json", "rh2_neg1.json"], &[], 1),
    ("iso2_class", &["iso2", "rh1.json", "rh3.json"], &[], 1),
    ("usage_no_command", &[], &[], 2),
    ("usage_unknown_axiom", &["check", "rh1.json", "--axiom=associative"], &[], 2),
];
