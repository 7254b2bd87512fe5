//! The Gauss-Legendre basis `F^n_0, ..., F^n_n` of degree-`n` polynomials.
//!
//! `F^n_i = G^n_i - G^n_{i+1}` where, for the zeros `τ_i` of `P_n`,
//!
//! ```text
//! G^n_i(t) = (n P_{n-1}(τ_i) / 2) ∫_{-1}^{t} P_n(x) / (x - τ_i) dx - 1/2,   1 <= i <= n,
//! ```
//!
//! and `G^n_0 = 1/2`, `G^n_{n+1} = -1/2`. Three closed representations are
//! provided: shifted power (Horner in `t + 1`), Legendre (Clenshaw, `α = 0`)
//! and the bracketed symmetric-Jacobi form `(t² - 1)/2 · Σ g_k P^(1)_k(t)`
//! (Clenshaw, `α = 1`).
//!
//! Every representation may be stored in full or only for the rows
//! `i <= ⌊n/2⌋`; the remaining rows follow from `F^n_i(-t) = F^n_{n-i}(t)`.

mod orthogonal;
pub(crate) mod power;

pub use orthogonal::{build_ortho_rep, build_ortho_rep_half, OrthoBasisRep, OrthoKind};
pub use power::{
    build_power_rep, build_power_rep_half, power_coeffs_a, power_coeffs_b, AuxPowerTables,
    PowerBasisRep,
};

use crate::error::{GlError, Result};
use crate::ortho::{jacobi_eval, LegendreRootTable};
use crate::scalar::Real;

/// Above this degree the shifted power representation loses accuracy.
pub const POWER_STABLE_DEGREE: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisKind {
    Power,
    Legendre,
    Jacobi1,
}

impl BasisKind {
    pub const ALL: [BasisKind; 3] = [BasisKind::Power, BasisKind::Legendre, BasisKind::Jacobi1];

    pub fn name(self) -> &'static str {
        match self {
            BasisKind::Power => "power",
            BasisKind::Legendre => "legendre",
            BasisKind::Jacobi1 => "jacobi1",
        }
    }
}

impl std::str::FromStr for BasisKind {
    type Err = GlError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "power" => Ok(BasisKind::Power),
            "legendre" => Ok(BasisKind::Legendre),
            "jacobi1" => Ok(BasisKind::Jacobi1),
            other => Err(GlError::Domain(format!("unknown basis kind '{other}'"))),
        }
    }
}

impl std::fmt::Display for BasisKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Numerical health of a constructed representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conditioning {
    Good,
    /// Shifted power form above [`POWER_STABLE_DEGREE`].
    IllConditioned,
    /// Some coefficient overflowed.
    Overflow,
}

/// Which rows a representation stores.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Span {
    Full,
    /// Rows `0..=⌊n/2⌋` only.
    Half,
}

impl Span {
    pub(crate) fn rows(self, n: usize) -> usize {
        match self {
            Span::Full => n + 1,
            Span::Half => n / 2 + 1,
        }
    }
}

/// Common interface of the three representations.
pub trait GlBasis {
    fn degree(&self) -> usize;

    fn kind(&self) -> BasisKind;

    /// Number of rows stored directly; others are obtained by reflection.
    fn stored_rows(&self) -> usize;

    /// `F^n_i(t)` for a stored row `i < stored_rows()`.
    fn eval_stored(&self, i: usize, t: f64) -> f64;

    /// `d^m/dt^m F^n_i(t)` for a stored row.
    fn derivative_stored(&self, i: usize, m: usize, t: f64) -> f64;

    fn conditioning(&self) -> Conditioning {
        Conditioning::Good
    }
}

fn check_index(n: usize, i: usize) -> Result<()> {
    if i > n {
        Err(GlError::Index { index: i, max: n })
    } else {
        Ok(())
    }
}

/// `F^n_i(t)`.
pub fn eval_basis<B: GlBasis + ?Sized>(rep: &B, i: usize, t: f64) -> Result<f64> {
    let n = rep.degree();
    check_index(n, i)?;
    if i < rep.stored_rows() {
        Ok(rep.eval_stored(i, t))
    } else {
        Ok(rep.eval_stored(n - i, -t))
    }
}

/// `d^m/dt^m F^n_i(t)`.
pub fn eval_basis_derivative<B: GlBasis + ?Sized>(
    rep: &B,
    i: usize,
    m: usize,
    t: f64,
) -> Result<f64> {
    let n = rep.degree();
    check_index(n, i)?;
    if i < rep.stored_rows() {
        Ok(rep.derivative_stored(i, m, t))
    } else {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        Ok(sign * rep.derivative_stored(n - i, m, -t))
    }
}

/// All of `F^n_0(t), ..., F^n_n(t)`.
pub fn eval_basis_all<B: GlBasis + ?Sized>(rep: &B, t: f64) -> Vec<f64> {
    let n = rep.degree();
    (0..=n)
        .map(|i| eval_basis(rep, i, t).expect("index in range"))
        .collect()
}

/// A representation of either family, chosen at run time.
#[derive(Debug, Clone)]
pub enum BasisRep {
    Power(PowerBasisRep),
    Ortho(OrthoBasisRep),
}

impl BasisRep {
    pub fn build(kind: BasisKind, roots: &LegendreRootTable, span: Span) -> BasisRep {
        match (kind, span) {
            (BasisKind::Power, Span::Full) => BasisRep::Power(build_power_rep(roots)),
            (BasisKind::Power, Span::Half) => BasisRep::Power(build_power_rep_half(roots)),
            (BasisKind::Legendre, Span::Full) => {
                BasisRep::Ortho(build_ortho_rep(roots, OrthoKind::Legendre))
            }
            (BasisKind::Legendre, Span::Half) => {
                BasisRep::Ortho(build_ortho_rep_half(roots, OrthoKind::Legendre))
            }
            (BasisKind::Jacobi1, Span::Full) => {
                BasisRep::Ortho(build_ortho_rep(roots, OrthoKind::Jacobi1))
            }
            (BasisKind::Jacobi1, Span::Half) => {
                BasisRep::Ortho(build_ortho_rep_half(roots, OrthoKind::Jacobi1))
            }
        }
    }

    fn inner(&self) -> &dyn GlBasis {
        match self {
            BasisRep::Power(p) => p,
            BasisRep::Ortho(o) => o,
        }
    }
}

impl GlBasis for BasisRep {
    fn degree(&self) -> usize {
        self.inner().degree()
    }

    fn kind(&self) -> BasisKind {
        self.inner().kind()
    }

    fn stored_rows(&self) -> usize {
        self.inner().stored_rows()
    }

    fn eval_stored(&self, i: usize, t: f64) -> f64 {
        self.inner().eval_stored(i, t)
    }

    fn derivative_stored(&self, i: usize, m: usize, t: f64) -> f64 {
        self.inner().derivative_stored(i, m, t)
    }

    fn conditioning(&self) -> Conditioning {
        self.inner().conditioning()
    }
}

/// `P_k(0)`: zero for odd `k`, `(-1)^{k/2} binom(k, k/2) / 2^k` for even `k`.
pub(crate) fn legendre_at_zero<T: Real>(k: usize) -> T {
    if k % 2 == 1 {
        return T::zero();
    }
    // binom(2j, j)/4^j = Π_{l=1}^{j} (2l - 1)/(2l), with alternating sign
    let mut v = T::one();
    for l in 1..=k / 2 {
        v = -(v * T::from_f64((2 * l - 1) as f64)) / T::from_f64((2 * l) as f64);
    }
    v
}

/// `P_k(τ_j)` for `k = 0..=n` and every root `j = 1..=n`, stored as
/// `table[j - 1][k]`.
///
/// Rows for `j <= ⌈n/2⌉` come from the recurrence; the rest are mirrored with
/// `P_k(-x) = (-1)^k P_k(x)`. `P_n(τ_j)` is stored as exactly zero and the
/// middle root of an odd degree uses the closed form at zero.
pub(crate) fn legendre_at_roots<T: Real>(roots: &[T]) -> Vec<Vec<T>> {
    let n = roots.len();
    let half = n.div_ceil(2);
    let mut table: Vec<Vec<T>> = Vec::with_capacity(n);
    for (j, &tau) in roots.iter().enumerate().take(half) {
        let mut row = if n % 2 == 1 && j == n / 2 {
            (0..=n).map(legendre_at_zero::<T>).collect::<Vec<_>>()
        } else {
            crate::ortho::jacobi_all(crate::ortho::JacobiParam::LEGENDRE, n, tau)
        };
        row[n] = T::zero();
        table.push(row);
    }
    for j in half..n {
        let src = &table[n - 1 - j];
        let row = src
            .iter()
            .enumerate()
            .map(|(k, &v)| if k % 2 == 0 { v } else { -v })
            .collect();
        table.push(row);
    }
    table
}

/// `P_{n-1}(τ_j)` for the given 1-based root index, via the closed form when
/// the root is the exact middle zero of an odd degree.
pub(crate) fn legendre_prev_at_root(roots: &LegendreRootTable, j: usize) -> f64 {
    let n = roots.degree();
    if n % 2 == 1 && j == n / 2 + 1 {
        legendre_at_zero(n - 1)
    } else {
        jacobi_eval(crate::ortho::JacobiParam::LEGENDRE, n - 1, roots.tau(j))
    }
}
