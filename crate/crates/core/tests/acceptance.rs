//! Acceptance suite: one test per criterion, each printing a single
//! `criterion N PASS/FAIL` line (run with `--nocapture` to see them live).
//! All arithmetic is exact; every comparison is an equality, not a tolerance.

use std::time::{Duration, Instant};

use stablemod::repmod::GMap;
use stablemod::scenario::{self, SweepConfig};
use stablemod::{arlab, dvr, groups, linalg, repmod, stable};

fn report_line(n: u32, label: &str, ok: bool, elapsed: Duration) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    println!("criterion {n} {verdict}: {label} ({elapsed:.2?})");
    assert!(ok, "criterion {n} failed: {label}");
}

/// Worked cokernel example over C2, (p=2, e=1, m=6), exact values.
#[test]
fn criterion_1_worked_example_exact() {
    let t0 = Instant::now();
    let ring = dvr::RingSpec::new(2, 1, 6).unwrap();
    let g = std::sync::Arc::new(groups::group_cyclic(2).unwrap());
    let reg = repmod::module_regular(ring, g.clone(), ring.n());
    let alpha = GMap {
        src: reg.clone(),
        dst: reg.clone(),
        f: linalg::Mat::from_int_rows(ring, &[vec![1, 3], vec![3, 1]]),
    };

    // smith([[1,3],[3,1]]) = diag(1, 8): pi-exponents 0 and 3
    let d = linalg::smith(&alpha.f).d;
    let smith_ok = d == vec![0, 3];

    // cokernel is O/8O
    let factors =
        linalg::invariant_factors(&linalg::Mat::identity(ring, 2), &alpha.f.transpose()).unwrap();
    let coker_ok = factors == vec![3];

    // generator acts as multiplication by 5 mod 8 on the rank-1 cokernel
    let coker = repmod::cokernel_module(&alpha).unwrap();
    let act = ring.to_vec(coker.rho[0].get(0, 0))[0] % 8;
    let action_ok = coker.rank == 1 && act == 5;

    let in_kernel = arlab::in_kernel_of_r(&coker, 7).unwrap();
    let weakly_inj = stable::is_weakly_injective(&coker).unwrap();

    let builtin = scenario::run_builtin("example-gtytg", 7, 0).unwrap();

    let ok = smith_ok && coker_ok && action_ok && in_kernel && !weakly_inj
        && builtin.all_confirmed();
    let elapsed = t0.elapsed();
    report_line(1, "worked cokernel example over C2 with exact values", ok, elapsed);
    assert!(elapsed < Duration::from_secs(1), "criterion 1 exceeded 1 s: {elapsed:?}");
}

/// Heller lattice of k over C3 (e=1, m=8): two Knorr summands of exponent
/// pi with simple stable endomorphism rings, and stable End(Rk) of dim 2.
#[test]
fn criterion_2_heller_reiner_c3() {
    let t0 = Instant::now();
    let rr = scenario::run_builtin("heller-reiner-c3", 7, 0).unwrap();
    let elapsed = t0.elapsed();
    report_line(2, "Heller lattice splitting over unramified C3", rr.all_confirmed(), elapsed);
    assert!(elapsed < Duration::from_secs(10), "criterion 2 exceeded 10 s: {elapsed:?}");
}

/// Ramified C3 suite (p=3, e=2, m=4): indecomposable Heller lattices,
/// RM mod pi splitting with witnesses, trivial-extension stable
/// endomorphisms, and the reduced almost split sequence.
#[test]
fn criterion_3_ramified_c3_suite() {
    let t0 = Instant::now();
    let rr = scenario::run_builtin("ramified-c3-e2", 7, 0).unwrap();
    let elapsed = t0.elapsed();
    report_line(3, "ramified C3 suite for both non-projective modules", rr.all_confirmed(), elapsed);
    assert!(elapsed < Duration::from_secs(60), "criterion 3 exceeded 60 s: {elapsed:?}");
}

/// Unramified C5 contrast: the mod-pi splitting fails and RM is the trivial
/// lattice plus the augmentation ideal.
#[test]
fn criterion_4_unramified_c5_contrast() {
    let t0 = Instant::now();
    let rr = scenario::run_c5_contrast(7, 0).unwrap();
    let elapsed = t0.elapsed();
    report_line(4, "unramified C5 contrast", rr.all_confirmed(), elapsed);
    assert!(elapsed < Duration::from_secs(60), "criterion 4 exceeded 60 s: {elapsed:?}");
}

/// Middle terms of almost split sequences for trivial lattices with
/// exponent 2 over C2xC2, C4, and ramified C3, plus the exponent-1
/// projective-middle path over unramified C3.
#[test]
fn criterion_5_middle_term_suite() {
    let t0 = Instant::now();
    let rr = scenario::run_mdterm_suite(7, 0).unwrap();
    let elapsed = t0.elapsed();
    report_line(5, "almost split middle-term suite", rr.all_confirmed(), elapsed);
    assert!(elapsed < Duration::from_secs(120), "criterion 5 exceeded 120 s: {elapsed:?}");
}

/// Adjunction on >= 20 (lattice, torsion module) pairs: matching invariant
/// factors and counit factorization of every stable generator.
#[test]
fn criterion_6_adjunction_pairs() {
    let t0 = Instant::now();
    let (pairs, rr) = scenario::run_adjunction_suite(7, 0).unwrap();
    let ok = pairs >= 20 && rr.all_confirmed();
    let elapsed = t0.elapsed();
    report_line(6, &format!("adjunction factorization on {pairs} pairs"), ok, elapsed);
}

/// Structural sweep over p in {2,3}, e in {1,2}, groups of order <= 9:
/// zero refuted verdicts, under 15 minutes.
#[test]
fn criterion_7_structural_sweep() {
    let t0 = Instant::now();
    let rr = scenario::run_sweep(&SweepConfig::default());
    let (confirmed, refuted, indeterminate) = rr.counts();
    let ok = refuted == 0 && indeterminate == 0 && confirmed > 0;
    let elapsed = t0.elapsed();
    report_line(
        7,
        &format!("structural sweep ({confirmed} confirmed, {refuted} refuted, {indeterminate} indeterminate)"),
        ok,
        elapsed,
    );
    assert!(elapsed < Duration::from_secs(900), "criterion 7 exceeded 15 min: {elapsed:?}");
}
