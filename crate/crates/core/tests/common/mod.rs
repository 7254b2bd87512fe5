//! Independent recomputations used by the integration tests.

#![allow(dead_code)]

use glcurve_core::scalar::{DoubleDouble, Real};

/// `b^(i)_0..b^(i)_{n-1}` from the homogeneous second-order recurrence
/// `(n-k)(n+k+1) b_{k-1} + (2(k+1)² - (τ+1)(n-k)(n+k+1)) b_k - 2(τ+1)(k+1)² b_{k+1} = 0`,
/// started from `b_{n-1} = a_n`, `b_n = 0`, in double-double.
pub fn b_second_order(n: usize, tau: f64, a_n: f64) -> Vec<f64> {
    let dd = DoubleDouble::from_f64;
    let mut b = vec![DoubleDouble::zero(); n + 1];
    b[n - 1] = dd(a_n);
    let s = DoubleDouble::from_sum(tau, 1.0);
    for k in (1..n).rev() {
        let kk = dd(((k + 1) * (k + 1)) as f64);
        let m = dd(((n - k) * (n + k + 1)) as f64);
        b[k - 1] = (-(dd(2.0) * kk - s * m) * b[k] + dd(2.0) * s * kk * b[k + 1]) / m;
    }
    b.truncate(n);
    b.into_iter().map(|v| v.to_f64()).collect()
}

/// `b^(i)_k = a_{k+1} ₃F₂(k-n+1, n+k+2, 1; k+2, k+2; (τ+1)/2)`; the series
/// terminates after `n - k` terms and is summed in double-double.
pub fn b_hypergeometric(n: usize, tau: f64, a: &[f64]) -> Vec<f64> {
    let z = DoubleDouble::from_sum(tau, 1.0) * DoubleDouble::from_f64(0.5);
    (0..n)
        .map(|k| {
            let upper1 = k as f64 - n as f64 + 1.0;
            let upper2 = (n + k + 2) as f64;
            let lower = (k + 2) as f64;
            let mut term = DoubleDouble::one();
            let mut sum = DoubleDouble::one();
            for j in 0..(n - k - 1) {
                let j = j as f64;
                // (1)_j / j! = 1
                term = term * DoubleDouble::from_f64((upper1 + j) * (upper2 + j)) * z
                    / DoubleDouble::from_f64((lower + j) * (lower + j));
                sum = sum + term;
            }
            (DoubleDouble::from_f64(a[k + 1]) * sum).to_f64()
        })
        .collect()
}

/// Uniform grid of `count` points on `[-1, 1]`.
pub fn grid(count: usize) -> Vec<f64> {
    (0..count)
        .map(|j| -1.0 + 2.0 * j as f64 / (count - 1) as f64)
        .collect()
}

/// Least-squares slope of `log y` against `log x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let m = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / m;
    let my = ly.iter().sum::<f64>() / m;
    let num: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    num / den
}
