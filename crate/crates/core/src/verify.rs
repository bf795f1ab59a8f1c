//! Independent verification: finite-difference residuals against the
//! defining equation, the unit-`a` linear-system defect checks, the
//! converse construction lifting a solution `y` back to `(p, q)`, and
//! linearized-vs-direct cross-method comparison.
//!
//! Everything here deliberately avoids the algebra used to *produce*
//! solutions: residuals come from finite differences on sampled values, and
//! the cross-method report compares two independent integration routes.

use crate::families::ClosedForm;
use crate::integrate::{
    integrate_direct, solve_linearized, Event, IntegrateError, SolveConfig, Trajectory,
};
use crate::transform::{p_equation_coefficients, RiccatiProblem};
use std::fmt;

/// Pass thresholds for the report operations.
#[derive(Debug, Clone)]
pub struct VerifyTolerances {
    /// Max |z' + a z² - f| accepted on a trajectory grid.
    pub residual: f64,
    /// Max |z_linearized - z_direct| accepted on the common grid.
    pub comparison: f64,
    /// Max |x_pole - x_blowup| accepted when pairing events.
    pub pole_gap: f64,
    /// Max defect accepted by the lemma/lift checks.
    pub lemma: f64,
}

impl Default for VerifyTolerances {
    fn default() -> Self {
        VerifyTolerances {
            residual: 1e-6,
            comparison: 1e-6,
            pole_gap: 1e-3,
            lemma: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum VerifyError {
    /// No pole-free segment of the trajectory has enough samples for the
    /// five-point stencil.
    SegmentTooShort,
    /// The samples are not uniformly spaced (finite differences need a
    /// constant step).
    NonUniformGrid,
    /// The requested subinterval contains a zero of `y` or `f`.
    SubintervalContainsZero { what: &'static str, x: f64 },
    /// The check is only defined for `a ≡ 1`.
    RequiresUnitA,
    Integrate(IntegrateError),
}

impl fmt::Display for VerifyError {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::SegmentTooShort => {
                write!(out, "no pole-free segment has the 9 samples the stencil needs")
            }
            VerifyError::NonUniformGrid => write!(out, "samples are not uniformly spaced"),
            VerifyError::SubintervalContainsZero { what, x } => {
                write!(out, "{what} vanishes near x = {x} inside the subinterval")
            }
            VerifyError::RequiresUnitA => write!(out, "this check requires a ≡ 1"),
            VerifyError::Integrate(e) => write!(out, "{e}"),
        }
    }
}

impl std::error::Error for VerifyError {}

impl From<IntegrateError> for VerifyError {
    fn from(e: IntegrateError) -> Self {
        VerifyError::Integrate(e)
    }
}

/// Pairing of a linearized pole with a direct blow-up location.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleAgreement {
    pub pole_linearized: f64,
    pub blowup_direct: f64,
    pub gap: f64,
}

/// Defect record of the unit-`a` linear-system checks.
#[derive(Debug, Clone, Default)]
pub struct LemmaDefects {
    /// max |q' - p| by finite differences on q.
    pub max_q_prime_minus_p: f64,
    /// max |p' - f q| by finite differences on p.
    pub max_p_prime_minus_fq: f64,
    /// max |p'' + c1 p' + c0 p| where the coefficients are regular.
    pub max_p_equation_residual: f64,
    /// Points excluded because |f| fell below the guard.
    pub excluded: Vec<f64>,
    pub pass: bool,
}

/// Everything the report operations can produce; fields are None when the
/// corresponding check was not run.
#[derive(Debug, Clone, Default)]
pub struct VerificationReport {
    pub max_residual: Option<f64>,
    /// `(x, |z' + a z² - f|)` per usable grid point.
    pub residual_grid: Vec<(f64, f64)>,
    pub skipped_segments: usize,
    pub comparison_max_gap: Option<f64>,
    pub compared_points: usize,
    pub pole_agreement: Vec<PoleAgreement>,
    pub lemma_checks: Option<LemmaDefects>,
    pub pass: bool,
}

/// `(-v[i+2] + 8 v[i+1] - 8 v[i-1] + v[i-2]) / (12h)` — 4th-order first
/// derivative.
pub fn fd1(values: &[f64], i: usize, h: f64) -> f64 {
    (-values[i + 2] + 8.0 * values[i + 1] - 8.0 * values[i - 1] + values[i - 2]) / (12.0 * h)
}

/// 4th-order second derivative on the same stencil.
pub fn fd2(values: &[f64], i: usize, h: f64) -> f64 {
    (-values[i + 2] + 16.0 * values[i + 1] - 30.0 * values[i] + 16.0 * values[i - 1]
        - values[i - 2])
        / (12.0 * h * h)
}

/// Finite-difference residual `z' + a z² - f` of a sampled trajectory.
///
/// The samples are split into maximal pole-free uniform segments; segments
/// shorter than 9 samples are skipped (and counted). `h` must match the
/// actual sample spacing.
pub fn residual_report(
    prob: &RiccatiProblem,
    traj: &Trajectory,
    h: f64,
    tol: &VerifyTolerances,
) -> Result<VerificationReport, VerifyError> {
    let mut segments: Vec<Vec<(f64, f64)>> = Vec::new();
    let mut current: Vec<(f64, f64)> = Vec::new();
    for s in &traj.samples {
        match s.z {
            Some(z) => {
                if let Some(&(px, _)) = current.last() {
                    if ((s.x - px) - h).abs() > 1e-6 * h {
                        segments.push(std::mem::take(&mut current));
                    }
                }
                current.push((s.x, z));
            }
            None => {
                if !current.is_empty() {
                    segments.push(std::mem::take(&mut current));
                }
            }
        }
    }
    if !current.is_empty() {
        segments.push(current);
    }

    let mut report = VerificationReport::default();
    let mut max_residual: f64 = 0.0;
    let mut usable = false;
    for seg in &segments {
        if seg.len() < 9 {
            report.skipped_segments += 1;
            continue;
        }
        usable = true;
        let zs: Vec<f64> = seg.iter().map(|&(_, z)| z).collect();
        for i in 2..seg.len() - 2 {
            let (x, z) = seg[i];
            let dz = fd1(&zs, i, h);
            let a = prob.a_at(x).map_err(|e| VerifyError::Integrate(e.into()))?;
            let f = prob.f_at(x).map_err(|e| VerifyError::Integrate(e.into()))?;
            let r = (dz + a * z * z - f).abs();
            max_residual = max_residual.max(r);
            report.residual_grid.push((x, r));
        }
    }
    if !usable {
        return Err(VerifyError::SegmentTooShort);
    }
    report.max_residual = Some(max_residual);
    report.pass = max_residual <= tol.residual;
    Ok(report)
}

/// Finite-difference residual of a closed form on `n` grid points of
/// `[lo, hi]`, scaled by `1 + |f| + z²`. Stencil points that fall on a pole
/// or outside the domain are skipped.
pub fn closed_form_residual(form: &ClosedForm, lo: f64, hi: f64, n: usize) -> Option<f64> {
    let prob = form.problem();
    let h = 1e-4;
    let mut max_scaled: Option<f64> = None;
    for i in 0..n {
        let x = lo + (hi - lo) * (i as f64) / ((n - 1) as f64);
        let stencil: Option<Vec<f64>> = [-2.0, -1.0, 0.0, 1.0, 2.0]
            .iter()
            .map(|&k| form.eval(x + k * h).ok())
            .collect();
        let Some(v) = stencil else { continue };
        // near a pole the h^4 z''''' truncation term outgrows the z² scale;
        // |z| > 100 marks the skirt where finite differences stop meaning
        // anything
        if v.iter().any(|z| z.abs() > 1e2) {
            continue;
        }
        let dz = fd1(&v, 2, h);
        let z = v[2];
        let (Ok(a), Ok(f)) = (prob.a_at(x), prob.f_at(x)) else {
            continue;
        };
        let scale = 1.0 + f.abs() + z * z;
        let r = (dz + a * z * z - f).abs() / scale;
        max_scaled = Some(max_scaled.map_or(r, |m: f64| m.max(r)));
    }
    max_scaled
}

/// Unit-`a` linear-system checks on a state provider `(q, p)(x)`:
/// `q' = p`, `p' = f q`, and the p-equation residual where its coefficients
/// are regular (|f| above the guard; excluded points are listed).
pub fn lemma_system_check(
    prob: &RiccatiProblem,
    states: &dyn Fn(f64) -> Option<(f64, f64)>,
    lo: f64,
    hi: f64,
    n: usize,
    tol: &VerifyTolerances,
) -> Result<LemmaDefects, VerifyError> {
    let one = crate::expr::Expr::Constant(1.0);
    if prob.a() != &one {
        return Err(VerifyError::RequiresUnitA);
    }
    let h = (hi - lo) / (n as f64 - 1.0);
    let mut qs = Vec::with_capacity(n);
    let mut ps = Vec::with_capacity(n);
    let mut xs = Vec::with_capacity(n);
    for i in 0..n {
        let x = lo + h * i as f64;
        let (q, p) = states(x).ok_or(VerifyError::SegmentTooShort)?;
        xs.push(x);
        qs.push(q);
        ps.push(p);
    }
    const F_GUARD: f64 = 1e-6;
    let mut defects = LemmaDefects::default();
    for i in 2..n - 2 {
        let x = xs[i];
        let f = prob.f_at(x).map_err(|e| VerifyError::Integrate(e.into()))?;
        let dq = fd1(&qs, i, h);
        let dp = fd1(&ps, i, h);
        defects.max_q_prime_minus_p = defects.max_q_prime_minus_p.max((dq - ps[i]).abs());
        defects.max_p_prime_minus_fq = defects.max_p_prime_minus_fq.max((dp - f * qs[i]).abs());
        if f.abs() > F_GUARD {
            let (c1, c0) = p_equation_coefficients(prob, x)
                .map_err(|e| VerifyError::Integrate(e.into()))?;
            let d2p = fd2(&ps, i, h);
            let r = (d2p + c1 * dp + c0 * ps[i]).abs();
            defects.max_p_equation_residual = defects.max_p_equation_residual.max(r);
        } else {
            defects.excluded.push(x);
        }
    }
    defects.pass = defects.max_q_prime_minus_p <= tol.lemma
        && defects.max_p_prime_minus_fq <= tol.lemma
        && defects.max_p_equation_residual <= tol.lemma;
    Ok(defects)
}

/// Result of lifting a solution `y` of `y' + y² = f` back to `(p, q)` via
/// `τ' = f/y`, `p = exp(τ)`, `q = p/y`.
#[derive(Debug, Clone)]
pub struct LiftResult {
    pub xs: Vec<f64>,
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    /// max |q' - p| by finite differences.
    pub max_q_prime_defect: f64,
    /// max |q'' - f q| by finite differences.
    pub max_q_second_defect: f64,
    pub pass: bool,
}

/// Adaptive composite Simpson with Richardson refinement: halves the panel
/// width until the Richardson-extrapolated correction is below `tol`.
fn simpson_adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let mut n = 8usize;
    let mut prev = simpson_fixed(f, a, b, n);
    for _ in 0..24 {
        n *= 2;
        let cur = simpson_fixed(f, a, b, n);
        let correction = (cur - prev) / 15.0;
        if correction.abs() < tol {
            return cur + correction;
        }
        prev = cur;
    }
    prev
}

fn simpson_fixed(f: &dyn Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + h * i as f64);
    }
    acc * h / 3.0
}

/// Lifts `y` (a solution of the unit-`a` equation on `[lo, hi]`, bounded
/// away from zero, with `f` bounded away from zero) to `(p, q)` and checks
/// `q' ≈ p`, `q'' ≈ f q` by finite differences on `n` uniform samples.
///
/// The additive constant of τ is fixed by `τ(lo) = 0`; `z = p/q` is
/// invariant under that gauge.
pub fn lift_solution(
    prob: &RiccatiProblem,
    y: &dyn Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    n: usize,
    tol: &VerifyTolerances,
) -> Result<LiftResult, VerifyError> {
    let one = crate::expr::Expr::Constant(1.0);
    if prob.a() != &one {
        return Err(VerifyError::RequiresUnitA);
    }
    let h = (hi - lo) / (n as f64 - 1.0);
    const GUARD: f64 = 1e-6;
    // preconditions: y and f bounded away from zero on the subinterval
    for i in 0..n {
        let x = lo + h * i as f64;
        if y(x).abs() < GUARD {
            return Err(VerifyError::SubintervalContainsZero { what: "y", x });
        }
        let f = prob.f_at(x).map_err(|e| VerifyError::Integrate(e.into()))?;
        if f.abs() < GUARD {
            return Err(VerifyError::SubintervalContainsZero { what: "f", x });
        }
    }
    let integrand = |x: f64| {
        let f = prob.f_at(x).unwrap_or(f64::NAN);
        f / y(x)
    };
    let mut xs = Vec::with_capacity(n);
    let mut ps = Vec::with_capacity(n);
    let mut qs = Vec::with_capacity(n);
    let mut tau = 0.0;
    let mut x_prev = lo;
    // per-panel budget so the accumulated τ error stays at 1e-10
    let panel_tol = 1e-10 / n as f64;
    for i in 0..n {
        let x = lo + h * i as f64;
        if i > 0 {
            tau += simpson_adaptive(&integrand, x_prev, x, panel_tol);
        }
        let p = tau.exp();
        xs.push(x);
        ps.push(p);
        qs.push(p / y(x));
        x_prev = x;
    }
    let mut max_q_prime = 0.0_f64;
    let mut max_q_second = 0.0_f64;
    for i in 2..n - 2 {
        let dq = fd1(&qs, i, h);
        let d2q = fd2(&qs, i, h);
        let f = prob
            .f_at(xs[i])
            .map_err(|e| VerifyError::Integrate(e.into()))?;
        max_q_prime = max_q_prime.max((dq - ps[i]).abs());
        max_q_second = max_q_second.max((d2q - f * qs[i]).abs());
    }
    Ok(LiftResult {
        xs,
        p: ps,
        q: qs,
        max_q_prime_defect: max_q_prime,
        max_q_second_defect: max_q_second,
        pass: max_q_prime <= tol.lemma && max_q_second <= tol.lemma,
    })
}

/// Runs both methods and compares them: max gap on the common pole-free
/// grid, pairing of direct blow-ups with linearized poles, and the
/// finite-difference residual of each trajectory.
pub fn cross_method_report(
    prob: &RiccatiProblem,
    x0: f64,
    z0: f64,
    x_end: f64,
    cfg: &SolveConfig,
    tol: &VerifyTolerances,
) -> Result<VerificationReport, VerifyError> {
    let lin = solve_linearized(prob, x0, z0, x_end, cfg)?;
    let dir = integrate_direct(prob, x0, z0, x_end, cfg)?;
    let mut report = compare_trajectories(&lin, &dir, tol);

    // residuals of both sampled trajectories against the defining equation
    let lin_res = residual_report(prob, &lin, cfg.output_step, tol)?;
    let dir_res = residual_report(prob, &dir, cfg.output_step, tol)?;
    let max_res = lin_res
        .max_residual
        .unwrap_or(0.0)
        .max(dir_res.max_residual.unwrap_or(0.0));
    report.max_residual = Some(max_res);
    report.residual_grid = lin_res.residual_grid;
    report.skipped_segments = lin_res.skipped_segments + dir_res.skipped_segments;
    report.pass = report.pass && max_res <= tol.residual && lin_res.pass && dir_res.pass;
    Ok(report)
}

/// Maximum relative drift of the Wronskian `q₁p₂ − q₂p₁` of two linear
/// trajectories of the same problem started from `(1, 0)` and `(0, 1)`,
/// sampled on `n` uniform points. Runnable against any problem; the
/// Wronskian is constant because the q-equation has no first-derivative
/// term.
pub fn wronskian_drift(
    prob: &RiccatiProblem,
    lo: f64,
    hi: f64,
    n: usize,
    cfg: &SolveConfig,
) -> Result<f64, VerifyError> {
    use crate::integrate::integrate_linear;
    use crate::transform::{canonical_potential, LinearState};
    let cp = canonical_potential(prob);
    let s1 = LinearState { x: lo, q: 1.0, p: 0.0 };
    let s2 = LinearState { x: lo, q: 0.0, p: 1.0 };
    let t1 = integrate_linear(|x| cp.potential_at(x), &s1, hi, cfg)?;
    let t2 = integrate_linear(|x| cp.potential_at(x), &s2, hi, cfg)?;
    let mut drift = 0.0_f64;
    for i in 0..n {
        let x = lo + (hi - lo) * i as f64 / (n as f64 - 1.0);
        let (a, b) = match (t1.state_at(x), t2.state_at(x)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(VerifyError::SegmentTooShort),
        };
        let w = a.q * b.p - b.q * a.p;
        drift = drift.max((w - 1.0).abs());
    }
    Ok(drift)
}

/// Maximum relative drift of the cross-ratio
/// `((z₁−z₃)(z₂−z₄)) / ((z₁−z₄)(z₂−z₃))` of four solutions from distinct
/// initial values, evaluated on the common pole-free grid. Constant in x
/// because every solution is a Möbius image of the same linear solution
/// line.
pub fn cross_ratio_drift(
    prob: &RiccatiProblem,
    x0: f64,
    z0s: [f64; 4],
    x_end: f64,
    cfg: &SolveConfig,
) -> Result<f64, VerifyError> {
    let trajs: Result<Vec<Trajectory>, IntegrateError> = z0s
        .iter()
        .map(|&z0| solve_linearized(prob, x0, z0, x_end, cfg))
        .collect();
    let trajs = trajs?;
    let n = trajs[0].samples.len();
    let mut reference: Option<f64> = None;
    let mut drift = 0.0_f64;
    let mut used = 0usize;
    for i in 0..n {
        let zs: Option<Vec<f64>> = trajs.iter().map(|t| t.samples[i].z).collect();
        let Some(z) = zs else { continue };
        let num = (z[0] - z[2]) * (z[1] - z[3]);
        let den = (z[0] - z[3]) * (z[1] - z[2]);
        if den == 0.0 {
            continue;
        }
        let lambda = num / den;
        match reference {
            None => reference = Some(lambda),
            Some(l0) => drift = drift.max(((lambda - l0) / l0).abs()),
        }
        used += 1;
    }
    if used < 2 {
        return Err(VerifyError::SegmentTooShort);
    }
    Ok(drift)
}

/// The comparison half of [`cross_method_report`], usable on trajectories
/// that were produced elsewhere (negative controls perturb one of them).
pub fn compare_trajectories(
    lin: &Trajectory,
    dir: &Trajectory,
    tol: &VerifyTolerances,
) -> VerificationReport {
    let mut gap: f64 = 0.0;
    let mut compared = 0usize;
    for (a, b) in lin.samples.iter().zip(dir.samples.iter()) {
        if let (Some(za), Some(zb)) = (a.z, b.z) {
            gap = gap.max((za - zb).abs());
            compared += 1;
        }
    }
    let mut pole_agreement = Vec::new();
    let mut poles_ok = true;
    for event in &dir.events {
        if let Event::Blowup { x, .. } = event {
            let nearest = lin
                .poles
                .iter()
                .copied()
                .min_by(|p1, p2| (p1 - x).abs().total_cmp(&(p2 - x).abs()));
            if let Some(p) = nearest {
                let g = (p - x).abs();
                poles_ok &= g <= tol.pole_gap;
                pole_agreement.push(PoleAgreement {
                    pole_linearized: p,
                    blowup_direct: *x,
                    gap: g,
                });
            } else {
                poles_ok = false;
            }
        }
    }
    VerificationReport {
        comparison_max_gap: Some(gap),
        compared_points: compared,
        pole_agreement,
        pass: gap <= tol.comparison && poles_ok && compared > 0,
        ..Default::default()
    }
}
