//! The acceptance gate: ten checks, each printing one `criterion N: PASS` or
//! `criterion N: FAIL` line (visible under `--nocapture`). Every comparison
//! is exact; the only tolerances anywhere are the wall-clock limits.

use std::time::Instant;

use rootfunc::functional::eval_functional;
use rootfunc::ideal::root_functional_basis;
use rootfunc::bezout::product_functional;
use rootfunc::ring::{field::rat, system_parse};
use rootfunc::suites::{
    run_lemma1, run_lemma2, run_thm1, run_thm1_uniqueness, run_thm2, run_thm2_membership,
    run_thm3, run_thm4, RunReport, SuiteOptions,
};

fn criterion(n: u32, ok: bool, detail: String) {
    println!("criterion {n}: {}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {n}: {detail}");
}

fn suite_criterion(
    n: u32,
    limit_ms: u64,
    opts: &SuiteOptions,
    runner: fn(&SuiteOptions) -> RunReport,
) {
    let report = runner(opts);
    let ok = report.ok() && report.duration_ms < limit_ms;
    criterion(n, ok, report.to_json_string(true));
}

#[test]
fn criterion_1_telescoping_identity() {
    let opts = SuiteOptions {
        seed: 1,
        cases: 200,
        nmax: 3,
        degmax: 5,
        corrupt_derivatives: false,
    };
    suite_criterion(1, 5_000, &opts, run_lemma1);
}

#[test]
fn criterion_2_discrepancy_decomposition() {
    let opts = SuiteOptions {
        seed: 2,
        cases: 100,
        ..SuiteOptions::default()
    };
    suite_criterion(2, 10_000, &opts, run_lemma2);
}

#[test]
fn criterion_3_determinant_forms_agree() {
    let opts = SuiteOptions {
        seed: 3,
        cases: 100,
        ..SuiteOptions::default()
    };
    suite_criterion(3, 60_000, &opts, run_thm1);
}

#[test]
fn criterion_4_derivative_choice_witnesses() {
    let opts = SuiteOptions {
        seed: 4,
        cases: 50,
        ..SuiteOptions::default()
    };
    suite_criterion(4, 120_000, &opts, run_thm1_uniqueness);
}

#[test]
fn criterion_5_extension_degree_cap() {
    let opts = SuiteOptions {
        seed: 5,
        cases: 100,
        ..SuiteOptions::default()
    };
    suite_criterion(5, 60_000, &opts, run_thm2);
}

#[test]
fn criterion_6_extension_membership() {
    let opts = SuiteOptions {
        seed: 6,
        cases: 50,
        ..SuiteOptions::default()
    };
    suite_criterion(6, 60_000, &opts, run_thm2_membership);
}

#[test]
fn criterion_7_product_annihilation() {
    let opts = SuiteOptions {
        seed: 7,
        cases: 50,
        ..SuiteOptions::default()
    };
    suite_criterion(7, 120_000, &opts, run_thm3);
}

#[test]
fn criterion_8_product_commutativity() {
    let opts = SuiteOptions {
        seed: 7,
        cases: 50,
        ..SuiteOptions::default()
    };
    suite_criterion(8, 120_000, &opts, run_thm4);
}

#[test]
fn criterion_9_closed_form_products() {
    let start = Instant::now();
    let f = system_parse("x1^2 - 1").unwrap();
    let at1 = eval_functional(&[rat(1, 1)], 1);
    let at_neg1 = eval_functional(&[rat(-1, 1)], 1);

    let doubled = product_functional(&at1, 0, &at1, 0, &f).unwrap();
    let expected = eval_functional(&[rat(1, 1)], 2).scale(&rat(2, 1));
    let first = doubled == expected;

    let crossed = product_functional(&at1, 0, &at_neg1, 0, &f).unwrap();
    let second = crossed.is_zero();

    let ok = first && second && start.elapsed().as_millis() < 1_000;
    criterion(
        9,
        ok,
        format!("doubled == 2*eval(1): {first}; crossed == 0: {second}"),
    );
}

#[test]
fn criterion_10_basis_dimensions() {
    let start = Instant::now();
    let squares = system_parse("x1^2\nx2^2").unwrap();
    let dim4 = root_functional_basis(&squares, 2).unwrap().dimension() == 4;

    let circle = system_parse("x1^2 - 1").unwrap();
    let basis = root_functional_basis(&circle, 2).unwrap();
    let dim2 = basis.dimension() == 2;
    let contains_roots = basis.spans(&eval_functional(&[rat(1, 1)], 2))
        && basis.spans(&eval_functional(&[rat(-1, 1)], 2));

    let ok = dim4 && dim2 && contains_roots && start.elapsed().as_millis() < 1_000;
    criterion(
        10,
        ok,
        format!("dim4: {dim4}; dim2: {dim2}; contains evaluations: {contains_roots}"),
    );
}
