//! Acceptance suite: one test per criterion, each printing its pass/fail
//! line (visible with `--nocapture`) and enforcing both the criterion and
//! its runtime budget.

use illposed::repro;

fn check(id: usize) {
    let report = repro::run(id).expect("criterion id");
    println!("{}", report.summary_line());
    assert!(report.passed, "{}", report.summary_line());
    assert!(
        report.elapsed <= report.budget,
        "criterion {id} exceeded its runtime budget: {:.2}s > {:.0}s",
        report.elapsed.as_secs_f64(),
        report.budget.as_secs_f64()
    );
}

#[test]
fn criterion_1_differentiation_bound() {
    check(1);
}

#[test]
fn criterion_2_sharpness() {
    check(2);
}

#[test]
fn criterion_3_rate_check() {
    check(3);
}

#[test]
fn criterion_4_delta_type_property() {
    check(4);
}

#[test]
fn criterion_5_extrapolation_rate() {
    check(5);
}

#[test]
fn criterion_6_projection_slice() {
    check(6);
}

#[test]
fn criterion_7_limited_angle_reconstruction() {
    check(7);
}

#[test]
fn criterion_8_density_of_products() {
    check(8);
}

#[test]
fn criterion_9_coefficient_blowup() {
    check(9);
}
