//! Symmetric Jacobi (Gegenbauer-normalised) polynomials `P^(α)_k = P^(α,α)_k`.
//!
//! Normalisation is the classical one, `P^(α)_k(1) = binom(k + α, k)`, so that
//! `α = 0` gives the Legendre polynomials. Everything here is generic over
//! [`Real`] so the same code runs in `f64` and in double-double arithmetic.

use crate::error::{GlError, Result};
use crate::scalar::{DoubleDouble, Real};

/// The parameter `α` of a symmetric Jacobi family, `α > -1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct JacobiParam(f64);

impl JacobiParam {
    pub const LEGENDRE: JacobiParam = JacobiParam(0.0);

    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > -1.0 && alpha.is_finite() {
            Ok(JacobiParam(alpha))
        } else {
            Err(GlError::Domain(format!("alpha = {alpha} must exceed -1")))
        }
    }

    /// Integer parameters, which appear as derivative orders of Legendre series.
    pub fn order(m: usize) -> Self {
        JacobiParam(m as f64)
    }

    pub fn alpha(self) -> f64 {
        self.0
    }

    fn shifted(self, by: usize) -> Self {
        JacobiParam(self.0 + by as f64)
    }
}

/// `ξ1(k)` and `ξ2(k)` of `P_k = x ξ1(k) P_{k-1} - ξ2(k) P_{k-2}` in the scalar `T`.
/// `ξ2(1)` is returned as zero.
#[inline]
fn xi<T: Real>(alpha: JacobiParam, k: usize) -> (T, T) {
    let a = alpha.0;
    let kf = k as f64;
    if k == 1 {
        return (T::from_f64(a + 1.0), T::zero());
    }
    let den = T::from_f64(kf) * T::from_f64(kf + 2.0 * a);
    let xi1 = T::from_f64(kf + a) * T::from_f64(2.0 * kf + 2.0 * a - 1.0) / den;
    let xi2 = T::from_f64(kf + a - 1.0) * T::from_f64(kf + a) / den;
    (xi1, xi2)
}

/// Three-term recurrence coefficients `(ξ1(k), ξ2(k))`.
pub fn recurrence_coeffs(alpha: JacobiParam, k: usize) -> Result<(f64, f64)> {
    if k < 1 {
        return Err(GlError::Domain(
            "recurrence coefficients are defined for k >= 1".into(),
        ));
    }
    Ok(xi(alpha, k))
}

/// `P^(α)_k(x)` by the forward recurrence.
pub fn jacobi_eval<T: Real>(alpha: JacobiParam, k: usize, x: T) -> T {
    let mut prev = T::one();
    if k == 0 {
        return prev;
    }
    let mut cur = T::from_f64(alpha.0 + 1.0) * x;
    for j in 2..=k {
        let (xi1, xi2) = xi::<T>(alpha, j);
        let next = x * xi1 * cur - xi2 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Legendre polynomial `P_k(x)`.
#[inline]
pub fn legendre<T: Real>(k: usize, x: T) -> T {
    jacobi_eval(JacobiParam::LEGENDRE, k, x)
}

/// All of `P^(α)_0(x), ..., P^(α)_k(x)`.
pub fn jacobi_all<T: Real>(alpha: JacobiParam, k: usize, x: T) -> Vec<T> {
    let mut out = Vec::with_capacity(k + 1);
    out.push(T::one());
    if k == 0 {
        return out;
    }
    out.push(T::from_f64(alpha.0 + 1.0) * x);
    for j in 2..=k {
        let (xi1, xi2) = xi::<T>(alpha, j);
        let next = x * xi1 * out[j - 1] - xi2 * out[j - 2];
        out.push(next);
    }
    out
}

/// A finite series `Σ v_k P^(α)_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiSeries<T = f64> {
    alpha: JacobiParam,
    coeffs: Vec<T>,
}

impl<T: Real> JacobiSeries<T> {
    pub fn new(alpha: JacobiParam, coeffs: Vec<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(GlError::Domain(
                "a Jacobi series needs at least one coefficient".into(),
            ));
        }
        Ok(JacobiSeries { alpha, coeffs })
    }

    pub fn alpha(&self) -> JacobiParam {
        self.alpha
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// Clenshaw summation of `Σ v_k P^(α)_k(x)`.
pub fn clenshaw_eval<T: Real>(series: &JacobiSeries<T>, x: T) -> T {
    clenshaw(series.alpha, &series.coeffs, x)
}

/// Clenshaw summation over a raw coefficient slice; the empty sum is zero.
pub fn clenshaw<T: Real>(alpha: JacobiParam, coeffs: &[T], x: T) -> T {
    let mut b1 = T::zero(); // B_{k+1}
    let mut b2 = T::zero(); // B_{k+2}
    for k in (0..coeffs.len()).rev() {
        let (xi1, _) = xi::<T>(alpha, k + 1);
        let (_, xi2) = xi::<T>(alpha, k + 2);
        let b = coeffs[k] + x * xi1 * b1 - xi2 * b2;
        b2 = b1;
        b1 = b;
    }
    b1
}

/// Pretabulated recurrence coefficients for repeated Clenshaw sums of a fixed
/// length, as used by the multipoint evaluators.
#[derive(Debug, Clone)]
pub struct ClenshawTable {
    alpha: JacobiParam,
    // xi1[k] = ξ1(k + 1), xi2[k] = ξ2(k + 2)
    xi1: Vec<f64>,
    xi2: Vec<f64>,
}

impl ClenshawTable {
    pub fn new(alpha: JacobiParam, len: usize) -> Self {
        let xi1 = (0..len).map(|k| xi::<f64>(alpha, k + 1).0).collect();
        let xi2 = (0..len).map(|k| xi::<f64>(alpha, k + 2).1).collect();
        ClenshawTable { alpha, xi1, xi2 }
    }

    pub fn alpha(&self) -> JacobiParam {
        self.alpha
    }

    pub fn len(&self) -> usize {
        self.xi1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xi1.is_empty()
    }

    /// Sums `coeffs`, whose length must not exceed the table length.
    #[inline]
    pub fn eval(&self, coeffs: &[f64], x: f64) -> f64 {
        debug_assert!(coeffs.len() <= self.xi1.len());
        let Some(&top) = coeffs.last() else {
            return 0.0;
        };
        let mut b1 = top;
        let mut b2 = 0.0;
        for k in (0..coeffs.len() - 1).rev() {
            let b = coeffs[k] + x * self.xi1[k] * b1 - self.xi2[k] * b2;
            b2 = b1;
            b1 = b;
        }
        b1
    }

    /// [`eval`](Self::eval) at `L` arguments in lockstep; each lane performs
    /// the same operations as the scalar sum.
    #[inline]
    pub fn eval_lanes<const L: usize>(&self, coeffs: &[f64], x: &[f64; L]) -> [f64; L] {
        debug_assert!(coeffs.len() <= self.xi1.len());
        let Some(&top) = coeffs.last() else {
            return [0.0; L];
        };
        let mut b1 = [top; L];
        let mut b2 = [0.0; L];
        for k in (0..coeffs.len() - 1).rev() {
            let (c, p, q) = (coeffs[k], self.xi1[k], self.xi2[k]);
            for l in 0..L {
                let b = c + x[l] * p * b1[l] - q * b2[l];
                b2[l] = b1[l];
                b1[l] = b;
            }
        }
        b1
    }
}

/// Rising factorial `(a)_i = a (a+1) ... (a+i-1)`.
pub fn pochhammer(a: f64, i: usize) -> f64 {
    (0..i).fold(1.0, |acc, j| acc * (a + j as f64))
}

/// `d^i/dx^i P^(α)_k(x) = ((k + 2α + 1)_i / 2^i) P^(α+i)_{k-i}(x)`, zero when `i > k`.
pub fn jacobi_derivative_eval<T: Real>(alpha: JacobiParam, k: usize, i: usize, x: T) -> T {
    if i > k {
        return T::zero();
    }
    let scale = pochhammer(k as f64 + 2.0 * alpha.0 + 1.0, i) / (2.0f64).powi(i as i32);
    T::from_f64(scale) * jacobi_eval(alpha.shifted(i), k - i, x)
}

/// Zeros `τ_1 < ... < τ_n` of the Legendre polynomial `P_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct LegendreRootTable {
    tau: Vec<f64>,
}

impl LegendreRootTable {
    pub fn degree(&self) -> usize {
        self.tau.len()
    }

    /// `τ_i` with the 1-based index used throughout the basis formulas.
    #[inline]
    pub fn tau(&self, i: usize) -> f64 {
        self.tau[i - 1]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.tau
    }
}

const MAX_NEWTON_STEPS: usize = 100;

/// Newton iteration on `P_n` from the guesses `cos(π(4i-1)/(4n+2))`.
///
/// Only the positive half is iterated; the negative half is its mirror image
/// and the middle root of an odd degree is exactly zero.
pub fn legendre_roots(n: usize) -> Result<LegendreRootTable> {
    if n == 0 {
        return Err(GlError::Domain("P_0 has no zeros".into()));
    }
    let mut tau = vec![0.0; n];
    let nf = n as f64;
    for i in 1..=n / 2 {
        let mut x = (std::f64::consts::PI * (4.0 * i as f64 - 1.0) / (4.0 * nf + 2.0)).cos();
        let mut converged = false;
        for _ in 0..MAX_NEWTON_STEPS {
            let p = legendre(n, x);
            let dp = jacobi_derivative_eval(JacobiParam::LEGENDRE, n, 1, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() <= 4.0 * f64::EPSILON * x.abs() {
                // one polishing step past the stopping point
                x -= legendre(n, x) / jacobi_derivative_eval(JacobiParam::LEGENDRE, n, 1, x);
                converged = true;
                break;
            }
        }
        if !converged || !x.is_finite() {
            return Err(GlError::NoConvergence { degree: n });
        }
        let x = nearest_root_double(n, x);
        tau[n - i] = x;
        tau[i - 1] = -x;
    }
    Ok(LegendreRootTable { tau })
}

/// `P_n(x)` in double-double at a double argument, using only products and
/// quotients by small integers.
pub(crate) fn legendre_dd(n: usize, x: f64) -> DoubleDouble {
    let mut prev = DoubleDouble::one();
    if n == 0 {
        return prev;
    }
    let mut cur = DoubleDouble::from_f64(x);
    for k in 1..n {
        // (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}
        let next = (cur.mul_f64(x).mul_f64((2 * k + 1) as f64) - prev.mul_f64(k as f64))
            .div_f64((k + 1) as f64);
        prev = cur;
        cur = next;
    }
    cur
}

/// The double nearest to the zero of `P_n` close to `x`: one Newton
/// correction with `P_n(x)` carried in double-double.
fn nearest_root_double(n: usize, x: f64) -> f64 {
    let dp = jacobi_derivative_eval(JacobiParam::LEGENDRE, n, 1, x);
    (DoubleDouble::from_f64(x) - DoubleDouble::from_f64(legendre_dd(n, x).to_f64() / dp)).to_f64()
}

/// `|Σ_{i≤k} (2i+1) P_i(x) P_i(y) - (k+1)(P_k(y) P_{k+1}(x) - P_k(x) P_{k+1}(y)) / (x - y)|`.
pub fn christoffel_darboux_residual(k: usize, x: f64, y: f64) -> Result<f64> {
    if x == y {
        return Err(GlError::Domain("Christoffel-Darboux needs x != y".into()));
    }
    let px = jacobi_all(JacobiParam::LEGENDRE, k + 1, x);
    let py = jacobi_all(JacobiParam::LEGENDRE, k + 1, y);
    let lhs: f64 = (0..=k).map(|i| (2 * i + 1) as f64 * px[i] * py[i]).sum();
    let rhs = (k + 1) as f64 * (py[k] * px[k + 1] - px[k] * py[k + 1]) / (x - y);
    Ok((lhs - rhs).abs())
}
