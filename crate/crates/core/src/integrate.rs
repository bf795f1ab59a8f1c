//! Adaptive Dormand–Prince RK45 integration for the linear system
//! `(q, p)' = (p, F(x) q)` and the direct equation `z' = f - a z²`, with
//! cubic-Hermite dense output, detection and bisection refinement of the
//! zeros of `q` (the poles of `z`), and blow-up termination for the direct
//! path.

use crate::transform::{
    canonical_potential, initial_linear_state, reconstruct_z, LinearState, RiccatiProblem,
    TransformError,
};
use std::fmt;

/// Tolerances, step bounds and output control for one solve.
#[derive(Debug, Clone)]
pub struct SolveConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub h_init: f64,
    pub h_min: f64,
    pub h_max: f64,
    /// Direct integration stops once |z| exceeds this.
    pub blowup_threshold: f64,
    /// Width (in x) to which a detected zero of q is refined.
    pub pole_refine_tol: f64,
    /// Spacing of the dense output grid.
    pub output_step: f64,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            rel_tol: 1e-9,
            abs_tol: 1e-11,
            h_init: 1e-3,
            h_min: 1e-12,
            // the dense output is cubic Hermite, so its interpolation error
            // h^4 q''''/384 is what this cap really controls; finite
            // differences over the sample grid amplify those wiggles by
            // another 1/output_step
            h_max: 0.005,
            blowup_threshold: 1e8,
            pole_refine_tol: 1e-10,
            output_step: 0.01,
        }
    }
}

impl SolveConfig {
    pub fn validate(&self) -> Result<(), IntegrateError> {
        let ok = self.h_min > 0.0
            && self.h_min <= self.h_init
            && self.h_init <= self.h_max
            && self.rel_tol > 0.0
            && self.abs_tol > 0.0
            && self.blowup_threshold > 0.0
            && self.pole_refine_tol > 0.0
            && self.output_step > 0.0;
        if ok {
            Ok(())
        } else {
            Err(IntegrateError::BadConfig)
        }
    }

    /// Half-width of the band around each pole inside which z is not
    /// reported.
    pub fn pole_guard(&self) -> f64 {
        (10.0 * self.pole_refine_tol).max(1e-6)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum IntegrateError {
    /// Configuration violates `0 < h_min <= h_init <= h_max` or has a
    /// non-positive tolerance.
    BadConfig,
    /// `x_end == x0`.
    EmptyInterval,
    /// `a` is identically zero on the interval (sampled).
    AIdenticallyZero,
    /// `f` is identically zero on the interval (sampled); the linearization
    /// path refuses and the caller should use the f = 0 closed form.
    FIdenticallyZero,
    /// A zero of `a` was bracketed inside the solve interval.
    AZeroInside { bracket: (f64, f64) },
    /// The right-hand side could not be evaluated at the initial point.
    Setup(TransformError),
}

impl fmt::Display for IntegrateError {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntegrateError::BadConfig => {
                write!(out, "invalid solver configuration (need 0 < h_min <= h_init <= h_max and positive tolerances)")
            }
            IntegrateError::EmptyInterval => write!(out, "x_end must differ from x0"),
            IntegrateError::AIdenticallyZero => {
                write!(out, "a(x) is identically zero on the interval (sampled)")
            }
            IntegrateError::FIdenticallyZero => write!(
                out,
                "f(x) is identically zero on the interval (sampled); use the f = 0 closed form"
            ),
            IntegrateError::AZeroInside { bracket } => write!(
                out,
                "a(x) has a zero inside the solve interval, bracketed by [{}, {}]",
                bracket.0, bracket.1
            ),
            IntegrateError::Setup(e) => write!(out, "setup failed: {e}"),
        }
    }
}

impl std::error::Error for IntegrateError {}

impl From<TransformError> for IntegrateError {
    fn from(e: TransformError) -> Self {
        IntegrateError::Setup(e)
    }
}

/// Terminal or notable conditions recorded on a trajectory.
#[derive(Debug, Clone, PartialEq)]
pub enum Event {
    /// Direct integration stopped because |z| exceeded the threshold.
    Blowup { x: f64, z: f64 },
    /// The step size underflowed h_min (or the right-hand side kept
    /// failing); integration stopped at `x`.
    StepFailure { x: f64, reason: String },
    /// |q| dipped below the dip threshold inside a step without a sign
    /// change — a possible double zero that bisection cannot bracket.
    QDipWithoutCrossing { x: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleFlag {
    Ok,
    PoleGuard,
    Blowup,
    NotComputed,
}

impl SampleFlag {
    pub fn as_str(self) -> &'static str {
        match self {
            SampleFlag::Ok => "ok",
            SampleFlag::PoleGuard => "pole_guard",
            SampleFlag::Blowup => "blowup",
            SampleFlag::NotComputed => "not_computed",
        }
    }
}

/// One dense-output row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub x: f64,
    pub z: Option<f64>,
    pub q: Option<f64>,
    pub p: Option<f64>,
    pub flag: SampleFlag,
}

/// Dense samples plus detected poles and diagnostics. Samples are in
/// strictly increasing x regardless of integration direction.
#[derive(Debug, Clone, Default)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub poles: Vec<f64>,
    pub events: Vec<Event>,
}

impl Trajectory {
    /// z at the sample nearest to `x` (must be within half a grid step).
    pub fn z_near(&self, x: f64) -> Option<f64> {
        let mut best: Option<(f64, &Sample)> = None;
        for s in &self.samples {
            let d = (s.x - x).abs();
            if best.map_or(true, |(bd, _)| d < bd) {
                best = Some((d, s));
            }
        }
        best.and_then(|(_, s)| s.z)
    }
}

// Dormand–Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 6] = [
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

const SAFETY: f64 = 0.9;
const FACTOR_MIN: f64 = 0.2;
const FACTOR_MAX: f64 = 5.0;
// PI controller exponents for an order-5 error estimate.
const PI_ALPHA: f64 = 0.7 / 5.0;
const PI_BETA: f64 = 0.4 / 5.0;
const MAX_STEPS: usize = 2_000_000;

/// One accepted step with endpoint states and derivatives — everything a
/// cubic Hermite interpolant needs.
#[derive(Debug, Clone, Copy)]
pub struct StepRec<const N: usize> {
    pub x0: f64,
    pub x1: f64,
    pub y0: [f64; N],
    pub y1: [f64; N],
    pub f0: [f64; N],
    pub f1: [f64; N],
}

impl<const N: usize> StepRec<N> {
    /// Cubic Hermite value at `x` within the step.
    pub fn eval(&self, x: f64) -> [f64; N] {
        let h = self.x1 - self.x0;
        let s = (x - self.x0) / h;
        let s2 = s * s;
        let s3 = s2 * s;
        let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        let h10 = s3 - 2.0 * s2 + s;
        let h01 = -2.0 * s3 + 3.0 * s2;
        let h11 = s3 - s2;
        let mut out = [0.0; N];
        for i in 0..N {
            out[i] =
                h00 * self.y0[i] + h10 * h * self.f0[i] + h01 * self.y1[i] + h11 * h * self.f1[i];
        }
        out
    }
}

/// Piecewise-Hermite dense output over the accepted steps.
#[derive(Debug, Clone, Default)]
pub struct DenseOutput<const N: usize> {
    pub steps: Vec<StepRec<N>>,
}

impl<const N: usize> DenseOutput<N> {
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn x_start(&self) -> Option<f64> {
        self.steps.first().map(|s| s.x0)
    }

    pub fn x_last(&self) -> Option<f64> {
        self.steps.last().map(|s| s.x1)
    }

    fn contains(&self, x: f64) -> Option<usize> {
        if self.steps.is_empty() {
            return None;
        }
        let dir = (self.steps[0].x1 - self.steps[0].x0).signum();
        let key = dir * x;
        let lo = dir * self.steps[0].x0;
        let hi = dir * self.steps.last().unwrap().x1;
        let slack = 1e-12 * (hi - lo).abs().max(1.0);
        if key < lo - slack || key > hi + slack {
            return None;
        }
        // binary search over step start positions
        let mut a = 0usize;
        let mut b = self.steps.len() - 1;
        while a < b {
            let mid = (a + b + 1) / 2;
            if dir * self.steps[mid].x0 <= key {
                a = mid;
            } else {
                b = mid - 1;
            }
        }
        Some(a)
    }

    /// Hermite-interpolated state at `x`, or None outside the covered span.
    pub fn eval(&self, x: f64) -> Option<[f64; N]> {
        self.contains(x).map(|i| self.steps[i].eval(x))
    }
}

struct RawRun<const N: usize> {
    dense: DenseOutput<N>,
    events: Vec<Event>,
    stopped_early: bool,
}

/// Adaptive RK45 core. `stop` is checked after each accepted step; returning
/// true ends the run (used for blow-up).
fn run_rk45<const N: usize>(
    rhs: &dyn Fn(f64, &[f64; N]) -> Result<[f64; N], TransformError>,
    x0: f64,
    y0: [f64; N],
    x_end: f64,
    cfg: &SolveConfig,
    stop: &dyn Fn(f64, &[f64; N]) -> bool,
) -> Result<RawRun<N>, IntegrateError> {
    let dir = (x_end - x0).signum();
    let span = (x_end - x0).abs();
    let mut steps: Vec<StepRec<N>> = Vec::new();
    let mut events = Vec::new();

    let mut x = x0;
    let mut y = y0;
    let mut f_cur = rhs(x, &y)?;
    let mut h = cfg.h_init.min(span).max(cfg.h_min);
    let mut err_prev: f64 = 1.0;
    let mut stopped_early = false;

    'outer: for _ in 0..MAX_STEPS {
        let remaining = (x_end - x).abs();
        if remaining <= 1e-14 * span.max(1.0) {
            break;
        }
        h = h.min(remaining).min(cfg.h_max);

        // attempt steps, shrinking h on rejection
        let mut rejected_h_floor = false;
        loop {
            let hs = dir * h;
            let mut k = [[0.0_f64; N]; 7];
            k[0] = f_cur;
            let mut stage_ok = true;
            for stage in 1..7 {
                let mut ys = y;
                for i in 0..N {
                    let mut acc = 0.0;
                    for (j, kj) in k.iter().enumerate().take(stage) {
                        acc += A[stage - 1][j] * kj[i];
                    }
                    ys[i] += hs * acc;
                }
                match rhs(x + C[stage] * hs, &ys) {
                    Ok(fs) => k[stage] = fs,
                    Err(_) => {
                        stage_ok = false;
                        break;
                    }
                }
            }
            if stage_ok {
                let mut y5 = y;
                let mut y4 = y;
                for i in 0..N {
                    let mut acc5 = 0.0;
                    let mut acc4 = 0.0;
                    for j in 0..7 {
                        acc5 += B5[j] * k[j][i];
                        acc4 += B4[j] * k[j][i];
                    }
                    y5[i] += hs * acc5;
                    y4[i] += hs * acc4;
                }
                let mut err_sq = 0.0;
                let mut finite = true;
                for i in 0..N {
                    if !y5[i].is_finite() {
                        finite = false;
                        break;
                    }
                    let sc = cfg.abs_tol + cfg.rel_tol * y[i].abs().max(y5[i].abs());
                    let e = (y5[i] - y4[i]) / sc;
                    err_sq += e * e;
                }
                let err = (err_sq / N as f64).sqrt();
                if finite && err <= 1.0 {
                    // accept; k[6] = f(x1, y5) is the next step's k1 (FSAL)
                    let x1 = x + hs;
                    let rec = StepRec {
                        x0: x,
                        x1,
                        y0: y,
                        y1: y5,
                        f0: k[0],
                        f1: k[6],
                    };
                    steps.push(rec);
                    x = x1;
                    y = y5;
                    f_cur = k[6];
                    let err_clamped = err.max(1e-10);
                    let factor = (SAFETY
                        * err_clamped.powf(-PI_ALPHA)
                        * err_prev.powf(PI_BETA))
                    .clamp(FACTOR_MIN, FACTOR_MAX);
                    err_prev = err_clamped;
                    h = (h * factor).max(cfg.h_min);
                    if stop(x, &y) {
                        stopped_early = true;
                        break 'outer;
                    }
                    break;
                }
                // rejected on error estimate
                if finite {
                    let factor =
                        (SAFETY * err.max(1e-10).powf(-PI_ALPHA)).clamp(FACTOR_MIN, 1.0);
                    h *= factor;
                } else {
                    h *= 0.25;
                }
            } else {
                // right-hand side failed inside the step
                h *= 0.25;
            }
            if h < cfg.h_min {
                rejected_h_floor = true;
                break;
            }
        }
        if rejected_h_floor {
            events.push(Event::StepFailure {
                x,
                reason: format!("step size underflowed h_min = {}", cfg.h_min),
            });
            stopped_early = true;
            break;
        }
    }

    Ok(RawRun {
        dense: DenseOutput { steps },
        events,
        stopped_early,
    })
}

/// Raw linear trajectory: dense `(q, p)` plus the refined zeros of q.
#[derive(Debug, Clone)]
pub struct LinearTrajectory {
    pub dense: DenseOutput<2>,
    /// Zeros of q in integration order, each refined to `pole_refine_tol`.
    pub q_zeros: Vec<f64>,
    pub events: Vec<Event>,
}

impl LinearTrajectory {
    pub fn state_at(&self, x: f64) -> Option<LinearState> {
        self.dense.eval(x).map(|qp| LinearState {
            x,
            q: qp[0],
            p: qp[1],
        })
    }
}

/// Integrates `q' = p`, `p' = F(x) q` from `state0` to `x_end`, recording
/// every sign change of q and refining each zero by bisection on the
/// Hermite interpolant.
pub fn integrate_linear<F>(
    potential: F,
    state0: &LinearState,
    x_end: f64,
    cfg: &SolveConfig,
) -> Result<LinearTrajectory, IntegrateError>
where
    F: Fn(f64) -> Result<f64, TransformError>,
{
    cfg.validate()?;
    if x_end == state0.x {
        return Err(IntegrateError::EmptyInterval);
    }
    let rhs = move |x: f64, y: &[f64; 2]| -> Result<[f64; 2], TransformError> {
        Ok([y[1], potential(x)? * y[0]])
    };
    let run = run_rk45(&rhs, state0.x, [state0.q, state0.p], x_end, cfg, &|_, _| {
        false
    })?;
    let mut events = run.events;
    let mut q_zeros = Vec::new();
    for rec in &run.dense.steps {
        scan_step_for_q_zero(rec, cfg, &mut q_zeros, &mut events);
    }
    Ok(LinearTrajectory {
        dense: run.dense,
        q_zeros,
        events,
    })
}

fn scan_step_for_q_zero(
    rec: &StepRec<2>,
    cfg: &SolveConfig,
    zeros: &mut Vec<f64>,
    events: &mut Vec<Event>,
) {
    let (q0, q1) = (rec.y0[0], rec.y1[0]);
    if q0 == 0.0 {
        push_zero(zeros, rec.x0, cfg);
        return;
    }
    if q1 == 0.0 {
        // endpoint zero is picked up here; the next step sees q0 == 0 too
        push_zero(zeros, rec.x1, cfg);
        return;
    }
    if q0.signum() != q1.signum() {
        let x = bisect_q(rec, cfg);
        push_zero(zeros, x, cfg);
        return;
    }
    // dip check: a near-double zero never changes sign
    let scale = q0.abs().max(q1.abs());
    for i in 1..8 {
        let x = rec.x0 + (rec.x1 - rec.x0) * (i as f64) / 8.0;
        let q = rec.eval(x)[0];
        if q == 0.0 || (q.abs() < 1e-9 * scale && q.signum() == q0.signum()) {
            events.push(Event::QDipWithoutCrossing { x });
            return;
        }
        if q.signum() != q0.signum() {
            // interior double crossing within one step
            let half = StepRec { x1: x, ..*rec };
            let x_zero = bisect_q(&half, cfg);
            push_zero(zeros, x_zero, cfg);
            return;
        }
    }
}

fn push_zero(zeros: &mut Vec<f64>, x: f64, cfg: &SolveConfig) {
    if zeros
        .last()
        .map_or(true, |&last| (x - last).abs() > cfg.pole_refine_tol.max(1e-14))
    {
        zeros.push(x);
    }
}

fn bisect_q(rec: &StepRec<2>, cfg: &SolveConfig) -> f64 {
    let mut lo = rec.x0;
    let mut hi = rec.x1;
    let q_lo = rec.y0[0];
    for _ in 0..200 {
        if (hi - lo).abs() <= cfg.pole_refine_tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let q_mid = rec.eval(mid)[0];
        if q_mid == 0.0 {
            return mid;
        }
        if q_mid.signum() == q_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Raw direct trajectory: dense z plus the blow-up point, if any.
#[derive(Debug, Clone)]
pub struct DirectTrajectory {
    pub dense: DenseOutput<1>,
    /// `(x, z)` at the last accepted step once |z| exceeded the threshold.
    pub blowup: Option<(f64, f64)>,
    pub events: Vec<Event>,
}

impl DirectTrajectory {
    pub fn z_at(&self, x: f64) -> Option<f64> {
        self.dense.eval(x).map(|v| v[0])
    }
}

/// Integrates `z' = f(x) - a(x) z²` directly, stopping at blow-up.
pub fn integrate_direct_raw(
    prob: &RiccatiProblem,
    x0: f64,
    z0: f64,
    x_end: f64,
    cfg: &SolveConfig,
) -> Result<DirectTrajectory, IntegrateError> {
    cfg.validate()?;
    if x_end == x0 {
        return Err(IntegrateError::EmptyInterval);
    }
    let rhs = |x: f64, y: &[f64; 1]| -> Result<[f64; 1], TransformError> {
        Ok([prob.direct_rhs(x, y[0])?])
    };
    let threshold = cfg.blowup_threshold;
    let run = run_rk45(&rhs, x0, [z0], x_end, cfg, &|_, y: &[f64; 1]| {
        y[0].abs() > threshold
    })?;
    let mut events = run.events;
    let mut blowup = None;
    if run.stopped_early {
        if let Some(last) = run.dense.steps.last() {
            if last.y1[0].abs() > threshold {
                blowup = Some((last.x1, last.y1[0]));
                events.push(Event::Blowup {
                    x: last.x1,
                    z: last.y1[0],
                });
            }
        }
    }
    Ok(DirectTrajectory {
        dense: run.dense,
        blowup,
        events,
    })
}

/// Output grid from `x0` to `x_end` (inclusive) with spacing
/// `cfg.output_step`.
fn output_grid(x0: f64, x_end: f64, cfg: &SolveConfig) -> Vec<f64> {
    let dir = (x_end - x0).signum();
    let span = (x_end - x0).abs();
    let mut xs = Vec::new();
    let n = (span / cfg.output_step).floor() as usize;
    for i in 0..=n {
        xs.push(x0 + dir * cfg.output_step * i as f64);
    }
    let last = *xs.last().unwrap();
    if (last - x_end).abs() > 1e-9 * span.max(1.0) {
        xs.push(x_end);
    } else {
        *xs.last_mut().unwrap() = x_end;
    }
    xs
}

/// Full linearized solve: initial-state mapping, linear integration, pole
/// refinement, and reconstruction of z on the output grid with guard bands
/// around each pole.
pub fn solve_linearized(
    prob: &RiccatiProblem,
    x0: f64,
    z0: f64,
    x_end: f64,
    cfg: &SolveConfig,
) -> Result<Trajectory, IntegrateError> {
    let linear = solve_linearized_raw(prob, x0, z0, x_end, cfg)?;
    let guard = cfg.pole_guard();
    let mut poles = linear.q_zeros.clone();
    poles.sort_by(f64::total_cmp);

    let mut samples = Vec::new();
    for x in output_grid(x0, x_end, cfg) {
        match linear.state_at(x) {
            Some(state) => {
                let near_pole = poles.iter().any(|&p| (x - p).abs() < guard);
                if near_pole {
                    samples.push(Sample {
                        x,
                        z: None,
                        q: Some(state.q),
                        p: Some(state.p),
                        flag: SampleFlag::PoleGuard,
                    });
                } else {
                    match reconstruct_z(prob, &state) {
                        Ok(z) if z.is_finite() => samples.push(Sample {
                            x,
                            z: Some(z),
                            q: Some(state.q),
                            p: Some(state.p),
                            flag: SampleFlag::Ok,
                        }),
                        _ => samples.push(Sample {
                            x,
                            z: None,
                            q: Some(state.q),
                            p: Some(state.p),
                            flag: SampleFlag::NotComputed,
                        }),
                    }
                }
            }
            None => samples.push(Sample {
                x,
                z: None,
                q: None,
                p: None,
                flag: SampleFlag::NotComputed,
            }),
        }
    }
    if x_end < x0 {
        samples.reverse();
    }
    Ok(Trajectory {
        samples,
        poles,
        events: linear.events.clone(),
    })
}

/// The linear half of [`solve_linearized`], exposing dense `(q, p)` and the
/// refined q-zeros.
pub fn solve_linearized_raw(
    prob: &RiccatiProblem,
    x0: f64,
    z0: f64,
    x_end: f64,
    cfg: &SolveConfig,
) -> Result<LinearTrajectory, IntegrateError> {
    cfg.validate()?;
    if x_end == x0 {
        return Err(IntegrateError::EmptyInterval);
    }
    if prob.a_identically_zero_on(x0, x_end) {
        return Err(IntegrateError::AIdenticallyZero);
    }
    if prob.f_identically_zero_on(x0, x_end) {
        return Err(IntegrateError::FIdenticallyZero);
    }
    if let Some(bracket) = prob.a_zero_bracket(x0, x_end) {
        return Err(IntegrateError::AZeroInside { bracket });
    }
    let state0 = initial_linear_state(prob, x0, z0)?;
    let cp = canonical_potential(prob);
    integrate_linear(move |x| cp.potential_at(x), &state0, x_end, cfg)
}

/// Direct solve packaged on the output grid. Samples past a blow-up carry
/// the `Blowup` flag and no value.
pub fn integrate_direct(
    prob: &RiccatiProblem,
    x0: f64,
    z0: f64,
    x_end: f64,
    cfg: &SolveConfig,
) -> Result<Trajectory, IntegrateError> {
    let raw = integrate_direct_raw(prob, x0, z0, x_end, cfg)?;
    let mut samples = Vec::new();
    for x in output_grid(x0, x_end, cfg) {
        match raw.z_at(x) {
            Some(z) if z.abs() <= cfg.blowup_threshold => samples.push(Sample {
                x,
                z: Some(z),
                q: None,
                p: None,
                flag: SampleFlag::Ok,
            }),
            _ => {
                let flag = if raw.blowup.is_some() {
                    SampleFlag::Blowup
                } else {
                    SampleFlag::NotComputed
                };
                samples.push(Sample {
                    x,
                    z: None,
                    q: None,
                    p: None,
                    flag,
                });
            }
        }
    }
    if x_end < x0 {
        samples.reverse();
    }
    Ok(Trajectory {
        samples,
        poles: Vec::new(),
        events: raw.events,
    })
}
