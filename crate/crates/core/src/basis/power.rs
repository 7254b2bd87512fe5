//! Shifted power representation `F^n_i(t) = const_i + Σ_{k=1}^{n} c^(i)_k (t+1)^k`.

use super::{legendre_at_zero, BasisKind, Conditioning, GlBasis, Span, POWER_STABLE_DEGREE};
use crate::ortho::{legendre_dd, pochhammer, LegendreRootTable};
use crate::scalar::{DoubleDouble as Dd, Real};

/// `a_0..a_n` with `P_n(x) = Σ a_k (x+1)^k`, in any precision.
fn coeffs_a<T: Real>(n: usize) -> Vec<T> {
    let mut a = vec![T::zero(); n + 1];
    // binom(2n, n) / 2^n = Π_{j=1}^{n} (n + j) / (2j)
    a[n] = (1..=n).fold(T::one(), |acc, j| {
        acc.mul_f64((n + j) as f64).div_f64((2 * j) as f64)
    });
    for k in (0..n).rev() {
        let kp = (k + 1) as f64;
        a[k] = -a[k + 1]
            .mul_f64(2.0 * kp * kp)
            .div_f64(((n - k) * (n + k + 1)) as f64);
    }
    a
}

/// Backward sweep `b_{k-1} = a_k + shift * b_k`, `b_n = 0`.
fn coeffs_b<T: Real>(shift: T, a: &[T]) -> Vec<T> {
    let n = a.len() - 1;
    let mut b = vec![T::zero(); n];
    let mut next = T::zero();
    for k in (1..=n).rev() {
        next = a[k] + shift * next;
        b[k - 1] = next;
    }
    b
}

fn round_all(v: &[Dd]) -> Vec<f64> {
    v.iter().map(|x| x.to_f64()).collect()
}

/// Coefficients `a_0..a_n` of `P_n(x) = Σ a_k (x+1)^k`.
///
/// Seeded with `a_n = binom(2n, n) / 2^n` and swept down with
/// `a_k = -2(k+1)² a_{k+1} / ((n-k)(n+k+1))`, carried in double-double and
/// rounded once. Values grow like `4^n` and overflow for very large `n`.
pub fn power_coeffs_a(n: usize) -> Vec<f64> {
    round_all(&coeffs_a::<Dd>(n))
}

/// Coefficients `b^(i)_0..b^(i)_{n-1}` of `P_n(x)/(x - τ_i) = Σ b^(i)_k (x+1)^k`,
/// from the backward sweep `b_{k-1} = a_k + (τ_i + 1) b_k`, `b_n = 0`.
///
/// The sweep cancels heavily for roots near `1`, so it runs in double-double
/// on the exact `a_k`; `a` only fixes the degree and must hold `n + 1` values.
pub fn power_coeffs_b(roots: &LegendreRootTable, a: &[f64], i: usize) -> Vec<f64> {
    let n = roots.degree();
    assert_eq!(a.len(), n + 1, "a must hold a_0..a_n");
    assert!((1..=n).contains(&i), "root index {i} out of 1..={n}");
    round_all(&coeffs_b(
        Dd::from_sum(roots.tau(i), 1.0),
        &coeffs_a::<Dd>(n),
    ))
}

/// Intermediate tables of the power construction, rounded to `f64`.
#[derive(Debug, Clone)]
pub struct AuxPowerTables {
    pub n: usize,
    pub a: Vec<f64>,
    /// `b[i - 1]` holds `b^(i)` for the roots `i = 1..=b.len()`.
    pub b: Vec<Vec<f64>>,
    /// `pleg[i - 1] = P_{n-1}(τ_i)` for every root.
    pub pleg: Vec<f64>,
}

impl AuxPowerTables {
    /// Tables for all roots.
    pub fn new(roots: &LegendreRootTable) -> Self {
        Self::for_roots(roots, roots.degree())
    }

    /// `b^(i)` only for `i <= max_root`.
    pub fn for_roots(roots: &LegendreRootTable, max_root: usize) -> Self {
        let t = ExactTables::new(roots, max_root);
        AuxPowerTables {
            n: t.n,
            a: round_all(&t.a),
            b: t.b.iter().map(|row| round_all(row)).collect(),
            pleg: round_all(&t.pleg),
        }
    }
}

/// The same tables kept in double-double for the coefficient build.
struct ExactTables {
    n: usize,
    a: Vec<Dd>,
    b: Vec<Vec<Dd>>,
    pleg: Vec<Dd>,
}

impl ExactTables {
    fn new(roots: &LegendreRootTable, max_root: usize) -> Self {
        let n = roots.degree();
        let a = coeffs_a::<Dd>(n);
        let b = (1..=max_root)
            .map(|i| coeffs_b(Dd::from_sum(roots.tau(i), 1.0), &a))
            .collect();
        let half = n.div_ceil(2);
        let mut pleg = vec![Dd::zero(); n];
        for j in 1..=half {
            pleg[j - 1] = if n % 2 == 1 && j == half {
                legendre_at_zero(n - 1)
            } else {
                legendre_dd(n - 1, roots.tau(j))
            };
        }
        // P_{n-1}(τ_{n+1-j}) = (-1)^{n-1} P_{n-1}(τ_j)
        for j in half + 1..=n {
            pleg[j - 1] = if n % 2 == 1 {
                pleg[n - j]
            } else {
                -pleg[n - j]
            };
        }
        ExactTables { n, a, b, pleg }
    }
}

#[derive(Debug, Clone)]
pub struct PowerBasisRep {
    n: usize,
    /// `coeffs[i][0]` is the constant term of `F^n_i`, `coeffs[i][k]` is `c^(i)_k`.
    coeffs: Vec<Vec<f64>>,
    conditioning: Conditioning,
}

impl PowerBasisRep {
    pub fn degree(&self) -> usize {
        self.n
    }

    /// Standalone constant of `F^n_i`: one for `i = 0`, zero otherwise.
    pub fn const_term(&self, i: usize) -> f64 {
        self.coeffs[i][0]
    }

    /// `c^(i)_k` for `1 <= k <= n`.
    pub fn c(&self, i: usize, k: usize) -> f64 {
        assert!(k >= 1 && k <= self.n);
        self.coeffs[i][k]
    }

    /// Stored row `i` including the constant term at index zero.
    pub fn row(&self, i: usize) -> &[f64] {
        &self.coeffs[i]
    }
}

/// Full shifted power representation of the basis.
pub fn build_power_rep(roots: &LegendreRootTable) -> PowerBasisRep {
    build(roots, Span::Full)
}

/// Rows `0..=⌊n/2⌋` of the shifted power representation.
pub fn build_power_rep_half(roots: &LegendreRootTable) -> PowerBasisRep {
    build(roots, Span::Half)
}

fn build(roots: &LegendreRootTable, span: Span) -> PowerBasisRep {
    let n = roots.degree();
    let rows = span.rows(n);
    let last_root = rows.min(n);
    let aux = ExactTables::new(roots, last_root);

    // G^n_j = -1/2 + Σ_k (n P_{n-1}(τ_j) / 2k) b^(j)_{k-1} (t+1)^k for j = 1..=n
    let g_row = |j: usize| -> Vec<Dd> {
        let mut g = vec![Dd::zero(); n + 1];
        if (1..=n).contains(&j) {
            let scale = aux.pleg[j - 1].mul_f64(0.5 * n as f64);
            for k in 1..=n {
                g[k] = (scale * aux.b[j - 1][k - 1]).div_f64(k as f64);
            }
        }
        g
    };

    let mut coeffs = Vec::with_capacity(rows);
    let mut upper = g_row(0);
    for i in 0..rows {
        let lower = g_row(i + 1);
        let mut row: Vec<f64> = upper
            .iter()
            .zip(&lower)
            .map(|(&u, &l)| (u - l).to_f64())
            .collect();
        row[0] = if i == 0 { 1.0 } else { 0.0 };
        coeffs.push(row);
        upper = lower;
    }

    let conditioning = if coeffs.iter().flatten().any(|v| !v.is_finite()) {
        Conditioning::Overflow
    } else if n > POWER_STABLE_DEGREE {
        Conditioning::IllConditioned
    } else {
        Conditioning::Good
    };
    PowerBasisRep {
        n,
        coeffs,
        conditioning,
    }
}

/// Horner evaluation of `Σ_k coeffs[k] s^k`.
#[inline]
pub(crate) fn horner(coeffs: &[f64], s: f64) -> f64 {
    match coeffs.split_last() {
        Some((&top, rest)) => rest.iter().rev().fold(top, |acc, &c| acc * s + c),
        None => 0.0,
    }
}

/// [`horner`] at `L` arguments in lockstep.
#[inline]
pub(crate) fn horner_lanes<const L: usize>(coeffs: &[f64], s: &[f64; L]) -> [f64; L] {
    let Some((&top, rest)) = coeffs.split_last() else {
        return [0.0; L];
    };
    let mut acc = [top; L];
    for &c in rest.iter().rev() {
        for l in 0..L {
            acc[l] = acc[l] * s[l] + c;
        }
    }
    acc
}

impl GlBasis for PowerBasisRep {
    fn degree(&self) -> usize {
        self.n
    }

    fn kind(&self) -> BasisKind {
        BasisKind::Power
    }

    fn stored_rows(&self) -> usize {
        self.coeffs.len()
    }

    fn eval_stored(&self, i: usize, t: f64) -> f64 {
        horner(&self.coeffs[i], t + 1.0)
    }

    fn derivative_stored(&self, i: usize, m: usize, t: f64) -> f64 {
        let row = &self.coeffs[i];
        if m > self.n {
            return 0.0;
        }
        // Σ_{k=m}^{n} (k-m+1)_m c_k (t+1)^{k-m}
        let s = t + 1.0;
        (m..=self.n).rev().fold(0.0, |acc, k| {
            acc * s + pochhammer((k - m + 1) as f64, m) * row[k]
        })
    }

    fn conditioning(&self) -> Conditioning {
        self.conditioning
    }
}
