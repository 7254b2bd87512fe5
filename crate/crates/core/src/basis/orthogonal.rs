//! Legendre and bracketed symmetric-Jacobi representations.
//!
//! With `R_k = P_{k+1} - P_{k-1}` (and `P_{-1} = 0`):
//!
//! ```text
//! G^n_j(t) = -1/2 Σ_{k<n} R_k(τ_j) P_k(t) + 1/2 P_{n-1}(τ_j) P_n(t)
//!          = t/2 + (t² - 1)/2 Σ_{k=1}^{n-1} (2k+1)/(2k) P_k(τ_j) P^(1)_{k-1}(t)
//! ```
//!
//! Rows of `F^n_i` are differences of consecutive `G` rows. Row 0 carries the
//! extra boundary term `1/2` (Legendre) or `(1 - t)/2` (Jacobi), row `n` the
//! term `1/2` or `(1 + t)/2`.

use super::{legendre_at_roots, BasisKind, GlBasis, Span};
use crate::ortho::{clenshaw, pochhammer, ClenshawTable, JacobiParam, LegendreRootTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrthoKind {
    /// `F^n_i = boundary_i + Σ_{k=0}^{n} coeff_k P_k(t)`.
    Legendre,
    /// `F^n_i = boundary_i(t) + (t² - 1)/2 Σ_{k=0}^{n-2} g_k P^(1)_k(t)`.
    Jacobi1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Boundary {
    None,
    Left,
    Right,
}

#[derive(Debug, Clone)]
pub struct OrthoBasisRep {
    n: usize,
    kind: OrthoKind,
    coeff: Vec<Vec<f64>>,
    boundary: Vec<Boundary>,
    table: ClenshawTable,
}

impl OrthoBasisRep {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn ortho_kind(&self) -> OrthoKind {
        self.kind
    }

    /// Series coefficients of stored row `i` (Legendre: `k = 0..=n`; Jacobi: `g_0..g_{n-2}`).
    pub fn coeffs(&self, i: usize) -> &[f64] {
        &self.coeff[i]
    }

    /// Constant offset of row `i` in the Legendre form (`1/2` for the end rows).
    pub fn legendre_offset(&self, i: usize) -> f64 {
        match self.boundary[i] {
            Boundary::None => 0.0,
            _ => 0.5,
        }
    }

    #[inline]
    fn boundary_value(&self, i: usize, t: f64) -> f64 {
        match (self.kind, self.boundary[i]) {
            (_, Boundary::None) => 0.0,
            (OrthoKind::Legendre, _) => 0.5,
            (OrthoKind::Jacobi1, Boundary::Left) => 0.5 * (1.0 - t),
            (OrthoKind::Jacobi1, Boundary::Right) => 0.5 * (1.0 + t),
        }
    }
}

pub fn build_ortho_rep(roots: &LegendreRootTable, kind: OrthoKind) -> OrthoBasisRep {
    build(roots, kind, Span::Full)
}

/// Rows `0..=⌊n/2⌋` only.
pub fn build_ortho_rep_half(roots: &LegendreRootTable, kind: OrthoKind) -> OrthoBasisRep {
    build(roots, kind, Span::Half)
}

/// Coefficients of `G^n_j` for root `j` (1-based) from its Legendre values.
fn g_row(kind: OrthoKind, n: usize, values: &[f64]) -> Vec<f64> {
    match kind {
        OrthoKind::Legendre => {
            let mut g = vec![0.0; n + 1];
            for k in 0..n {
                let below = if k == 0 { 0.0 } else { values[k - 1] };
                g[k] = -0.5 * (values[k + 1] - below);
            }
            g[n] = 0.5 * values[n - 1];
            g
        }
        OrthoKind::Jacobi1 => (1..n)
            .map(|k| (2 * k + 1) as f64 / (2 * k) as f64 * values[k])
            .collect(),
    }
}

fn build(roots: &LegendreRootTable, kind: OrthoKind, span: Span) -> OrthoBasisRep {
    let n = roots.degree();
    let rows = span.rows(n);
    let values = legendre_at_roots(roots.as_slice());
    let len = match kind {
        OrthoKind::Legendre => n + 1,
        OrthoKind::Jacobi1 => n - 1,
    };
    let g = |j: usize| -> Vec<f64> {
        if (1..=n).contains(&j) {
            g_row(kind, n, &values[j - 1])
        } else {
            vec![0.0; len]
        }
    };

    let mut coeff = Vec::with_capacity(rows);
    let mut boundary = Vec::with_capacity(rows);
    let mut upper = g(0);
    for i in 0..rows {
        let lower = g(i + 1);
        coeff.push(upper.iter().zip(&lower).map(|(u, l)| u - l).collect());
        boundary.push(if i == 0 {
            Boundary::Left
        } else if i == n {
            Boundary::Right
        } else {
            Boundary::None
        });
        upper = lower;
    }
    let alpha = match kind {
        OrthoKind::Legendre => JacobiParam::LEGENDRE,
        OrthoKind::Jacobi1 => JacobiParam::order(1),
    };
    OrthoBasisRep {
        n,
        kind,
        coeff,
        boundary,
        table: ClenshawTable::new(alpha, len),
    }
}

/// `d^j/dt^j Σ_k c_k P^(α)_k(t) = Σ_{k>=j} c_k ((k+2α+1)_j / 2^j) P^(α+j)_{k-j}(t)`.
pub(crate) fn series_derivative(alpha: usize, coeffs: &[f64], j: usize, t: f64) -> f64 {
    if j == 0 {
        return clenshaw(JacobiParam::order(alpha), coeffs, t);
    }
    if coeffs.len() <= j {
        return 0.0;
    }
    let scale = 0.5f64.powi(j as i32);
    let shifted: Vec<f64> = (j..coeffs.len())
        .map(|k| coeffs[k] * pochhammer((k + 2 * alpha + 1) as f64, j) * scale)
        .collect();
    clenshaw(JacobiParam::order(alpha + j), &shifted, t)
}

impl GlBasis for OrthoBasisRep {
    fn degree(&self) -> usize {
        self.n
    }

    fn kind(&self) -> BasisKind {
        match self.kind {
            OrthoKind::Legendre => BasisKind::Legendre,
            OrthoKind::Jacobi1 => BasisKind::Jacobi1,
        }
    }

    fn stored_rows(&self) -> usize {
        self.coeff.len()
    }

    fn eval_stored(&self, i: usize, t: f64) -> f64 {
        let series = self.table.eval(&self.coeff[i], t);
        match self.kind {
            OrthoKind::Legendre => self.boundary_value(i, t) + series,
            OrthoKind::Jacobi1 => self.boundary_value(i, t) + 0.5 * (t * t - 1.0) * series,
        }
    }

    fn derivative_stored(&self, i: usize, m: usize, t: f64) -> f64 {
        if m == 0 {
            return self.eval_stored(i, t);
        }
        let c = &self.coeff[i];
        match self.kind {
            OrthoKind::Legendre => series_derivative(0, c, m, t),
            OrthoKind::Jacobi1 => {
                // Leibniz rule on h(t) S(t) with h = (t² - 1)/2, h' = t, h'' = 1
                let mf = m as f64;
                let mut v = 0.5 * (t * t - 1.0) * series_derivative(1, c, m, t)
                    + mf * t * series_derivative(1, c, m - 1, t);
                if m >= 2 {
                    v += 0.5 * mf * (mf - 1.0) * series_derivative(1, c, m - 2, t);
                }
                if m == 1 {
                    v += match self.boundary[i] {
                        Boundary::None => 0.0,
                        Boundary::Left => -0.5,
                        Boundary::Right => 0.5,
                    };
                }
                v
            }
        }
    }
}
