//! Cross-checks between the numeric paths and the closed-form families on
//! problems with non-unit `a`, plus the pole-residue limit behavior.

use riccati::expr::parse;
use riccati::families::{self, fit_constants};
use riccati::integrate::{solve_linearized, solve_linearized_raw, SolveConfig};
use riccati::transform::{reconstruct_z, RiccatiProblem};
use riccati::verify::{cross_method_report, lemma_system_check, VerifyTolerances};

fn prob(a: &str, f: &str) -> RiccatiProblem {
    RiccatiProblem::new(parse(a).unwrap(), parse(f).unwrap())
}

#[test]
fn corollary3_tan_agrees_with_linearized_solver() {
    // z' - z² = 1 from z(0.1) = tan(0.1): a = -1 exercises negative a
    let form = fit_constants(
        &families::corollary3(-1.0, 0.0, 1.0, 1.0).unwrap(),
        0.1,
        0.1_f64.tan(),
    )
    .unwrap();
    let p = prob("-1", "1");
    let traj = solve_linearized(&p, 0.1, 0.1_f64.tan(), 1.4, &SolveConfig::default()).unwrap();
    let mut worst = 0.0_f64;
    for s in &traj.samples {
        let z = s.z.expect("tan is pole-free below π/2");
        let closed = form.eval(s.x).unwrap();
        worst = worst.max((z - closed).abs());
    }
    assert!(worst <= 1e-6, "gap {worst:.2e}");
}

#[test]
fn corollary4_member_with_pole_agrees_and_leaves_residue() {
    // c = 2, (K1, K2) = (1, 4): denominator -2x³ + 16 vanishes at x = 2
    let form = families::corollary4(2.0, 1.0, 4.0).unwrap();
    let z0 = form.eval(1.0).unwrap();
    let p = prob("2", "x^(-2)");
    let cfg = SolveConfig::default();
    let traj = solve_linearized(&p, 1.0, z0, 3.0, &cfg).unwrap();
    assert_eq!(traj.poles.len(), 1, "poles: {:?}", traj.poles);
    let x_star = traj.poles[0];
    assert!((x_star - 2.0).abs() <= 1e-7, "pole at {x_star}");

    // agreement away from the pole, on both sides
    for s in &traj.samples {
        if (s.x - x_star).abs() < 0.05 {
            continue;
        }
        let z = s.z.unwrap();
        let closed = form.eval(s.x).unwrap();
        assert!(
            (z - closed).abs() <= 1e-6 * (1.0 + closed.abs()),
            "at x = {}: {z} vs {closed}",
            s.x
        );
    }

    // residue: (x - x*) z(x) → 1/a(x*) = 1/2, Richardson-extrapolated in δ
    let raw = solve_linearized_raw(&p, 1.0, z0, 3.0, &cfg).unwrap();
    let z_at = |x: f64| {
        let st = raw.state_at(x).unwrap();
        reconstruct_z(&p, &st).unwrap()
    };
    let residue = |delta: f64| {
        let right = delta * z_at(x_star + delta);
        let left = -delta * z_at(x_star - delta);
        0.5 * (right + left)
    };
    let (r1, r2) = (residue(1e-3), residue(1e-4));
    let extrapolated = (r2 * 1e-3 - r1 * 1e-4) / (1e-3 - 1e-4);
    assert!(
        (extrapolated - 0.5).abs() <= 1e-4,
        "residue {extrapolated} vs 1/a(2) = 0.5"
    );
}

#[test]
fn pole_residue_for_unit_a() {
    // the tanh-family pole at arctanh(1/2): residue 1/a = 1
    let p = prob("1", "1");
    let cfg = SolveConfig::default();
    let raw = solve_linearized_raw(&p, 0.0, -2.0, 2.0, &cfg).unwrap();
    let x_star = raw.q_zeros[0];
    let z_at = |x: f64| {
        let st = raw.state_at(x).unwrap();
        reconstruct_z(&p, &st).unwrap()
    };
    let residue = |delta: f64| 0.5 * (delta * z_at(x_star + delta) - delta * z_at(x_star - delta));
    let (r1, r2) = (residue(1e-3), residue(1e-4));
    let extrapolated = (r2 * 1e-3 - r1 * 1e-4) / (1e-3 - 1e-4);
    assert!((extrapolated - 1.0).abs() <= 1e-4, "residue {extrapolated}");
}

#[test]
fn nonconstant_a_cross_method() {
    // a = x² on [0.5, 2]: the full Theorem machinery against direct RK
    let p = prob("x^2", "1");
    let rep = cross_method_report(
        &p,
        0.5,
        0.3,
        2.0,
        &SolveConfig::default(),
        &VerifyTolerances::default(),
    )
    .unwrap();
    assert!(rep.pass, "{rep:?}");
}

#[test]
fn lemma_checks_on_integrated_trajectory() {
    // f = eˣ integrated on [0, 1]; states come from the dense output. The
    // check grid stays coarse relative to the integration steps so the
    // second-difference stencil does not amplify interpolation wiggles.
    let p = prob("1", "exp(x)");
    let cfg = SolveConfig {
        h_max: 0.002,
        ..SolveConfig::default()
    };
    let raw = solve_linearized_raw(&p, 0.0, 1.0, 1.0, &cfg).unwrap();
    let states = |x: f64| raw.state_at(x).map(|s| (s.q, s.p));
    let defects =
        lemma_system_check(&p, &states, 0.0, 1.0, 129, &VerifyTolerances::default()).unwrap();
    assert!(defects.pass, "{defects:?}");
    assert!(defects.max_q_prime_minus_p <= 1e-6);
    assert!(defects.max_p_prime_minus_fq <= 1e-6);
    assert!(defects.max_p_equation_residual <= 1e-6);
    assert!(defects.excluded.is_empty(), "f = eˣ never dips below guard");
}

#[test]
fn example1_closed_form_general_branch_residual() {
    // generic (K1, K2): both Bessel kinds in play
    let form = families::example1(0.7, 1.3);
    let r = riccati::verify::closed_form_residual(&form, 0.0, 2.0, 150).unwrap();
    assert!(r <= 1e-6, "residual {r:.2e}");
}

#[test]
fn corollary3_generic_member_residual() {
    // (c, n) = (-2, 1), (K1, K2) = (1, 0.3) on [0.5, 2]
    let form = families::corollary3(-2.0, 1.0, 1.0, 0.3).unwrap();
    let r = riccati::verify::closed_form_residual(&form, 0.5, 2.0, 200).unwrap();
    assert!(r <= 1e-6, "residual {r:.2e}");
}

#[test]
fn corollary4_generic_member_residual() {
    let form = families::corollary4(1.0, 1.0, 1.0).unwrap();
    let r = riccati::verify::closed_form_residual(&form, 0.5, 3.0, 200).unwrap();
    assert!(r <= 1e-8, "residual {r:.2e}");
}

#[test]
fn corollary1_tan_by_direct_integration() {
    // c = -1, f ≡ 1: z' - z² = 1 from z(0) = 0 is tan
    use riccati::integrate::integrate_direct;
    let p = riccati::families::corollary1_problem(-1.0, parse("1").unwrap()).unwrap();
    let traj = integrate_direct(&p, 0.0, 0.0, 1.4, &SolveConfig::default()).unwrap();
    for s in &traj.samples {
        let z = s.z.unwrap();
        assert!(
            (z - s.x.tan()).abs() <= 1e-7 * (1.0 + s.x.tan().abs()),
            "at x = {}",
            s.x
        );
    }
}

#[test]
fn corollary3_constants_are_projective() {
    let a = families::corollary3(-2.0, 1.0, 1.0, 0.3).unwrap();
    let b = families::corollary3(-2.0, 1.0, -4.0, -1.2).unwrap();
    for &x in &[0.5, 1.0, 1.7, 2.0] {
        let (za, zb) = (a.eval(x).unwrap(), b.eval(x).unwrap());
        assert!((za - zb).abs() <= 1e-12 * (1.0 + za.abs()), "x = {x}");
    }
}

#[test]
fn numeric_lift_from_direct_integration() {
    // y' + y² = eˣ from y(0) = 1 integrated directly, then lifted on
    // [0.25, 1]: q' ≈ p must hold to 1e-6
    use riccati::integrate::integrate_direct_raw;
    let p = prob("1", "exp(x)");
    let raw = integrate_direct_raw(&p, 0.0, 1.0, 1.2, &SolveConfig::default()).unwrap();
    let y = |x: f64| raw.z_at(x).expect("inside integrated span");
    let lift = riccati::verify::lift_solution(&p, &y, 0.25, 1.0, 129, &VerifyTolerances::default())
        .unwrap();
    assert!(lift.pass, "defects {:?} {:?}", lift.max_q_prime_defect, lift.max_q_second_defect);
    assert!(lift.max_q_prime_defect <= 1e-6);
}
