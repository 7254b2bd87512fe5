//! Timing harness: random curves, prepare once, evaluate a fixed grid.

use std::hint::black_box;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::{eval_many, CurvePreparer, GlCurve};
use crate::error::{check_param, GlError, Result};
use crate::oracle::{EvalMethod, IntegralBasis};
use crate::ortho::legendre_roots;

/// Parameters `t_j = start + j * step` for `j = 1..=count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub step: f64,
    pub count: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            start: -1.0,
            step: 1.0 / 2500.0,
            count: 4999,
        }
    }
}

impl GridSpec {
    pub fn points(&self) -> Result<Vec<f64>> {
        if !(self.step > 0.0) || self.count == 0 {
            return Err(GlError::Domain(
                "grid needs a positive step and at least one point".into(),
            ));
        }
        let ts: Vec<f64> = (1..=self.count)
            .map(|j| self.start + j as f64 * self.step)
            .collect();
        if ts.iter().any(|t| !(-1.0..=1.0).contains(t)) {
            return Err(GlError::Domain("grid leaves [-1, 1]".into()));
        }
        Ok(ts)
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub degrees: Vec<usize>,
    pub curves_per_degree: usize,
    pub grid: GridSpec,
    pub methods: Vec<EvalMethod>,
    pub seed: u64,
    pub dimension: usize,
    /// Per-row limit for the integral method; once a degree exceeds it the
    /// higher degrees are not attempted.
    pub budget: Option<Duration>,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            degrees: (1..=15).collect(),
            curves_per_degree: 100,
            grid: GridSpec::default(),
            methods: EvalMethod::ALL.to_vec(),
            seed: 0,
            dimension: 2,
            budget: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BenchOutcome {
    Seconds(f64),
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub method: EvalMethod,
    pub outcome: BenchOutcome,
}

impl BenchRow {
    pub fn seconds(&self) -> Option<f64> {
        match self.outcome {
            BenchOutcome::Seconds(s) => Some(s),
            BenchOutcome::BudgetExceeded => None,
        }
    }
}

/// `count` curves of degree `n` with control points uniform in `[-1, 1]^d`.
///
/// Each degree draws from its own stream, so a degree's curves do not depend
/// on which other degrees are requested.
pub fn random_curves(n: usize, d: usize, count: usize, seed: u64) -> Result<Vec<GlCurve>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(n as u64);
    (0..count)
        .map(|_| {
            let pts = (0..(n + 1) * d)
                .map(|_| rng.random_range(-1.0..=1.0))
                .collect();
            GlCurve::new(n, d, pts)
        })
        .collect()
}

/// Evaluates the curve at every parameter through the quadrature definition.
pub fn eval_integral(curve: &GlCurve, ts: &[f64]) -> Result<Vec<f64>> {
    eval_integral_with(
        &IntegralBasis::new(&legendre_roots(curve.degree())?),
        curve,
        ts,
    )
}

/// [`eval_integral`] with the quadrature tables supplied.
pub fn eval_integral_with(basis: &IntegralBasis, curve: &GlCurve, ts: &[f64]) -> Result<Vec<f64>> {
    if basis.degree() != curve.degree() {
        return Err(GlError::InvalidCurve(format!(
            "curve of degree {} given to tables of degree {}",
            curve.degree(),
            basis.degree()
        )));
    }
    let d = curve.dimension();
    let mut out = vec![0.0; ts.len() * d];
    for (&t, row) in ts.iter().zip(out.chunks_exact_mut(d)) {
        check_param(t)?;
        for (f, w) in basis.f_all(t).into_iter().zip(curve.control_points()) {
            for (o, &c) in row.iter_mut().zip(w) {
                *o += f * c;
            }
        }
    }
    Ok(out)
}

/// Total time for one `(degree, method)` row, or `None` past the deadline.
/// Basis tables are built once per row, inside the timed region.
fn time_row(
    n: usize,
    curves: &[GlCurve],
    method: EvalMethod,
    ts: &[f64],
    budget: Option<Duration>,
) -> Result<Option<Duration>> {
    let start = Instant::now();
    let over = || budget.is_some_and(|b| start.elapsed() > b);
    match method {
        EvalMethod::Basis(kind) => {
            let preparer = CurvePreparer::new(n, kind)?;
            for curve in curves {
                black_box(eval_many(&preparer.prepare(curve)?, ts)?);
            }
        }
        EvalMethod::Integral => {
            let basis = IntegralBasis::new(&legendre_roots(n)?);
            for curve in curves {
                black_box(eval_integral_with(&basis, curve, ts)?);
                if over() {
                    return Ok(None);
                }
            }
        }
    }
    if over() {
        return Ok(None);
    }
    Ok(Some(start.elapsed()))
}

/// Runs every `(degree, method)` pair in configuration order.
pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRow>> {
    if config.degrees.contains(&0) {
        return Err(GlError::Domain("degrees must be at least 1".into()));
    }
    if config.dimension == 0 {
        return Err(GlError::Domain("dimension must be at least 1".into()));
    }
    let ts = config.grid.points()?;
    let mut rows = Vec::new();
    let mut integral_exhausted = false;
    for &n in &config.degrees {
        let curves = random_curves(n, config.dimension, config.curves_per_degree, config.seed)?;
        for &method in &config.methods {
            let budget = (method == EvalMethod::Integral)
                .then_some(config.budget)
                .flatten();
            let outcome = if method == EvalMethod::Integral && integral_exhausted {
                BenchOutcome::BudgetExceeded
            } else {
                match time_row(n, &curves, method, &ts, budget)? {
                    Some(elapsed) => BenchOutcome::Seconds(elapsed.as_secs_f64()),
                    None => {
                        integral_exhausted = true;
                        BenchOutcome::BudgetExceeded
                    }
                }
            };
            rows.push(BenchRow { n, method, outcome });
        }
    }
    Ok(rows)
}
