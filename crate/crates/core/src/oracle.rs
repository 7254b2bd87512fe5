//! Reference values for the basis functions.
//!
//! Two independent routes:
//!
//! * the integral definition of `G^n_i`, integrated with the `n`-point Gauss
//!   rule (exact for the degree `n - 1` integrand);
//! * the bracketed symmetric-Jacobi form evaluated in double-double
//!   arithmetic with roots refined to double-double accuracy.

use crate::basis::{
    eval_basis, legendre_at_roots, legendre_prev_at_root, BasisKind, BasisRep, Span,
};
use crate::error::{check_param, GlError, Result};
use crate::ortho::{
    clenshaw, jacobi_all, jacobi_derivative_eval, jacobi_eval, legendre, legendre_roots,
    JacobiParam, LegendreRootTable,
};
use crate::scalar::{DoubleDouble, Real};

/// Gauss-Legendre quadrature on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    /// `m`-point rule with weights `2 / ((1 - τ²) P'_m(τ)²)`.
    pub fn gauss_legendre(m: usize) -> Result<Self> {
        Ok(Self::from_roots(&legendre_roots(m)?))
    }

    pub fn from_roots(roots: &LegendreRootTable) -> Self {
        let m = roots.degree();
        let nodes = roots.as_slice().to_vec();
        let weights = nodes
            .iter()
            .map(|&x| {
                let dp = jacobi_derivative_eval(JacobiParam::LEGENDRE, m, 1, x);
                2.0 / ((1.0 - x * x) * dp * dp)
            })
            .collect();
        QuadratureRule { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `∫_a^b f` with the rule mapped affinely onto `[a, b]`.
    pub fn integrate(&self, a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        half * self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(half * x + mid))
            .sum::<f64>()
    }
}

/// Below this distance from `τ_i` the quotient `P_n(x)/(x - τ_i)` is taken from
/// its Taylor expansion instead of the direct ratio.
pub const SINGULARITY_WINDOW: f64 = 1e-3;

/// `P_n(x)/(x - τ)` for a zero `τ` of `P_n`.
///
/// Near `τ` this uses the finite expansion
/// `Σ_{j=1}^{n} (-1)^{j+1} P_n^{(j)}(x) (x - τ)^{j-1} / j!`, which follows from
/// `P_n(τ) = 0` and is exact for polynomials.
pub fn deflated_legendre(n: usize, x: f64, tau: f64, pn_at_x: f64) -> f64 {
    let delta = x - tau;
    if delta.abs() >= SINGULARITY_WINDOW {
        return pn_at_x / delta;
    }
    let mut sum = 0.0;
    let mut scale = 1.0; // δ^{j-1}/j! with sign
    for j in 1..=n {
        scale /= j as f64;
        sum += scale * jacobi_derivative_eval(JacobiParam::LEGENDRE, n, j, x);
        scale *= -delta;
    }
    sum
}

/// Evaluates every `G^n_j` (and from them `F^n_i`) by quadrature.
#[derive(Debug, Clone)]
pub struct IntegralBasis {
    roots: LegendreRootTable,
    rule: QuadratureRule,
    /// `n P_{n-1}(τ_j) / 2`
    scale: Vec<f64>,
}

impl IntegralBasis {
    pub fn new(roots: &LegendreRootTable) -> Self {
        let n = roots.degree();
        let scale = (1..=n)
            .map(|j| 0.5 * n as f64 * legendre_prev_at_root(roots, j))
            .collect();
        IntegralBasis {
            roots: roots.clone(),
            rule: QuadratureRule::from_roots(roots),
            scale,
        }
    }

    pub fn degree(&self) -> usize {
        self.roots.degree()
    }

    /// `G^n_0(t), ..., G^n_{n+1}(t)`.
    pub fn g_all(&self, t: f64) -> Vec<f64> {
        let n = self.degree();
        let half = 0.5 * (t + 1.0);
        let mid = 0.5 * (t - 1.0);
        let xs: Vec<f64> = self.rule.nodes.iter().map(|&u| half * u + mid).collect();
        let pn: Vec<f64> = xs.iter().map(|&x| legendre(n, x)).collect();
        let mut g = Vec::with_capacity(n + 2);
        g.push(0.5);
        for j in 1..=n {
            let tau = self.roots.tau(j);
            let integral: f64 = xs
                .iter()
                .zip(&pn)
                .zip(&self.rule.weights)
                .map(|((&x, &p), &w)| w * deflated_legendre(n, x, tau, p))
                .sum();
            g.push(self.scale[j - 1] * half * integral - 0.5);
        }
        g.push(-0.5);
        g
    }

    /// `F^n_0(t), ..., F^n_n(t)`.
    pub fn f_all(&self, t: f64) -> Vec<f64> {
        self.g_all(t).windows(2).map(|w| w[0] - w[1]).collect()
    }

    /// Single `G^n_i(t)`, `0 <= i <= n + 1`.
    pub fn g(&self, i: usize, t: f64) -> f64 {
        let n = self.degree();
        match i {
            0 => 0.5,
            i if i == n + 1 => -0.5,
            _ => {
                let half = 0.5 * (t + 1.0);
                let mid = 0.5 * (t - 1.0);
                let tau = self.roots.tau(i);
                let integral = self.rule.integrate(-1.0, 1.0, |u| {
                    let x = half * u + mid;
                    deflated_legendre(n, x, tau, legendre(n, x))
                });
                // integrate() already supplies the unit half-width of [-1, 1]
                self.scale[i - 1] * half * integral - 0.5
            }
        }
    }
}

fn check_roots(n: usize, roots: &LegendreRootTable) -> Result<()> {
    if roots.degree() != n {
        return Err(GlError::Domain(format!(
            "root table of degree {} used for degree {n}",
            roots.degree()
        )));
    }
    Ok(())
}

/// `G^n_i(t)` from its integral definition.
pub fn g_integral(n: usize, i: usize, t: f64, roots: &LegendreRootTable) -> Result<f64> {
    check_param(t)?;
    check_roots(n, roots)?;
    if i > n + 1 {
        return Err(GlError::Index {
            index: i,
            max: n + 1,
        });
    }
    Ok(IntegralBasis::new(roots).g(i, t))
}

/// `F^n_i(t) = G^n_i(t) - G^n_{i+1}(t)` from the integral definition.
pub fn f_integral(n: usize, i: usize, t: f64, roots: &LegendreRootTable) -> Result<f64> {
    check_param(t)?;
    check_roots(n, roots)?;
    if i > n {
        return Err(GlError::Index { index: i, max: n });
    }
    let basis = IntegralBasis::new(roots);
    Ok(basis.g(i, t) - basis.g(i + 1, t))
}

type Dd = DoubleDouble;

/// Zeros of `P_n` polished to double-double accuracy.
pub fn legendre_roots_dd(n: usize) -> Result<Vec<Dd>> {
    let base = legendre_roots(n)?;
    let half = n.div_ceil(2);
    let mut out = vec![Dd::zero(); n];
    for j in (n / 2 + 1)..=n {
        if n % 2 == 1 && j == half {
            continue; // exact zero
        }
        let mut x = Dd::from_f64(base.tau(j));
        for _ in 0..3 {
            let p: Dd = legendre(n, x);
            let dp: Dd = jacobi_derivative_eval(JacobiParam::LEGENDRE, n, 1, x);
            x = x - p / dp;
        }
        out[j - 1] = x;
        out[n - j] = -x;
    }
    Ok(out)
}

/// Bracketed symmetric-Jacobi form of every `F^n_i` held in double-double.
#[derive(Debug, Clone)]
pub struct ExtendedReference {
    n: usize,
    /// Row `i`: `g^(i)_0..g^(i)_{n-2}`.
    rows: Vec<Vec<Dd>>,
}

impl ExtendedReference {
    pub fn new(n: usize) -> Result<Self> {
        let roots = legendre_roots_dd(n)?;
        let values = legendre_at_roots(&roots);
        let g_row = |j: usize| -> Vec<Dd> {
            if (1..=n).contains(&j) {
                (1..n)
                    .map(|k| {
                        Dd::from_f64((2 * k + 1) as f64) / Dd::from_f64((2 * k) as f64)
                            * values[j - 1][k]
                    })
                    .collect()
            } else {
                vec![Dd::zero(); n.saturating_sub(1)]
            }
        };
        let rows = (0..=n)
            .map(|i| {
                g_row(i)
                    .iter()
                    .zip(g_row(i + 1))
                    .map(|(&u, l)| u - l)
                    .collect()
            })
            .collect();
        Ok(ExtendedReference { n, rows })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// `F^n_i(t)` in double-double.
    pub fn eval_dd(&self, i: usize, t: f64) -> Dd {
        let td = Dd::from_f64(t);
        let one = Dd::one();
        let half = Dd::from_f64(0.5);
        let boundary = if i == 0 {
            half * (one - td)
        } else if i == self.n {
            half * (one + td)
        } else {
            Dd::zero()
        };
        let bracket = half * (td * td - one);
        boundary + bracket * clenshaw(JacobiParam::order(1), &self.rows[i], td)
    }

    pub fn eval(&self, i: usize, t: f64) -> f64 {
        self.eval_dd(i, t).to_f64()
    }
}

/// `F^n_i(t)` evaluated with at least twice the working precision.
pub fn extended_reference(n: usize, i: usize, t: f64) -> Result<f64> {
    check_param(t)?;
    if i > n {
        return Err(GlError::Index { index: i, max: n });
    }
    Ok(ExtendedReference::new(n)?.eval(i, t))
}

/// How a set of basis values is produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EvalMethod {
    Basis(BasisKind),
    /// Quadrature of the integral definition.
    Integral,
}

impl EvalMethod {
    pub const ALL: [EvalMethod; 4] = [
        EvalMethod::Basis(BasisKind::Power),
        EvalMethod::Basis(BasisKind::Legendre),
        EvalMethod::Basis(BasisKind::Jacobi1),
        EvalMethod::Integral,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EvalMethod::Basis(k) => k.name(),
            EvalMethod::Integral => "integral",
        }
    }
}

impl std::str::FromStr for EvalMethod {
    type Err = GlError;

    fn from_str(s: &str) -> Result<Self> {
        if s == "integral" {
            Ok(EvalMethod::Integral)
        } else {
            s.parse().map(EvalMethod::Basis)
        }
    }
}

impl std::fmt::Display for EvalMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl From<BasisKind> for EvalMethod {
    fn from(k: BasisKind) -> Self {
        EvalMethod::Basis(k)
    }
}

/// Deviation of a working-precision method from [`ExtendedReference`].
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub n: usize,
    pub method: EvalMethod,
    pub max_abs_error: f64,
    pub mean_abs_error: f64,
    /// Number of `(i, t)` pairs compared.
    pub sample_count: usize,
    /// Uniform grid of this many points over `[-1, 1]`.
    pub grid_size: usize,
}

/// Compares every `F^n_i` on a uniform grid against the extended reference.
pub fn error_report(n: usize, method: EvalMethod, grid_size: usize) -> Result<ErrorReport> {
    if grid_size < 2 {
        return Err(GlError::Domain(
            "an error report needs at least two grid points".into(),
        ));
    }
    let roots = legendre_roots(n)?;
    let reference = ExtendedReference::new(n)?;
    let working: Box<dyn Fn(f64) -> Vec<f64>> = match method {
        EvalMethod::Basis(kind) => {
            let rep = BasisRep::build(kind, &roots, Span::Full);
            Box::new(move |t| (0..=n).map(|i| eval_basis(&rep, i, t).unwrap()).collect())
        }
        EvalMethod::Integral => {
            let ib = IntegralBasis::new(&roots);
            Box::new(move |t| ib.f_all(t))
        }
    };
    let mut max = 0.0f64;
    let mut total = 0.0;
    let mut count = 0;
    for j in 0..grid_size {
        let t = -1.0 + 2.0 * j as f64 / (grid_size - 1) as f64;
        for (i, v) in working(t).into_iter().enumerate() {
            let err = (v - reference.eval(i, t)).abs();
            max = if err.is_nan() { f64::NAN } else { max.max(err) };
            total += err;
            count += 1;
        }
    }
    Ok(ErrorReport {
        n,
        method,
        max_abs_error: max,
        mean_abs_error: total / count as f64,
        sample_count: count,
        grid_size,
    })
}

/// `∫_{-1}^{t} P_n(x)/(x - τ) dx` from the Christoffel-Darboux expansion and
/// `∫ P_k = (P_{k+1} - P_{k-1}) / (2k + 1)`; an independent check on the quadrature.
pub fn deflated_integral_closed_form(n: usize, tau: f64, t: f64) -> f64 {
    let pt = jacobi_all(JacobiParam::LEGENDRE, n + 1, t);
    let ptau = jacobi_all(JacobiParam::LEGENDRE, n, tau);
    let mut sum = (t + 1.0) * ptau[0];
    for k in 1..=n {
        // P_{k+1}(-1) - P_{k-1}(-1) = 0
        sum += ptau[k] * (pt[k + 1] - pt[k - 1]);
    }
    sum / (n as f64 * jacobi_eval(JacobiParam::LEGENDRE, n - 1, tau))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadrature_weights_and_exactness() {
        for m in 1..=30 {
            let rule = QuadratureRule::gauss_legendre(m).unwrap();
            let total: f64 = rule.weights.iter().sum();
            assert!((total - 2.0).abs() < 1e-13, "m={m}");
            assert!(rule.weights.iter().all(|&w| w > 0.0));
            for j in 0..2 * m {
                let got = rule.integrate(-1.0, 1.0, |x| x.powi(j as i32));
                let exact = if j % 2 == 1 {
                    0.0
                } else {
                    2.0 / (j + 1) as f64
                };
                assert!((got - exact).abs() < 1e-12, "m={m} j={j}");
            }
        }
    }

    #[test]
    fn g_examples() {
        let r1 = legendre_roots(1).unwrap();
        for &t in &[-0.8, 0.0, 0.35, 1.0] {
            assert!((g_integral(1, 1, t, &r1).unwrap() - t / 2.0).abs() < 1e-15);
        }
        for n in 1..=10 {
            let r = legendre_roots(n).unwrap();
            for i in 1..=n {
                assert_eq!(g_integral(n, i, -1.0, &r).unwrap(), -0.5);
            }
            assert_eq!(g_integral(n, 0, 0.2, &r).unwrap(), 0.5);
            assert_eq!(g_integral(n, n + 1, 0.2, &r).unwrap(), -0.5);
        }
        let r2 = legendre_roots(2).unwrap();
        assert!((g_integral(2, 1, 0.0, &r2).unwrap() - 3f64.sqrt() / 4.0).abs() < 1e-15);
    }

    #[test]
    fn f_examples() {
        let r1 = legendre_roots(1).unwrap();
        assert!((f_integral(1, 0, 0.4, &r1).unwrap() - 0.3).abs() < 1e-15);
        let r2 = legendre_roots(2).unwrap();
        assert!((f_integral(2, 1, 0.0, &r2).unwrap() - 3f64.sqrt() / 2.0).abs() < 1e-15);
        for n in 1..=15 {
            let r = legendre_roots(n).unwrap();
            for i in 0..=n {
                let v = f_integral(n, i, 1.0, &r).unwrap();
                let expect = if i == n { 1.0 } else { 0.0 };
                assert!((v - expect).abs() < 1e-12, "n={n} i={i} v={v}");
            }
        }
    }

    #[test]
    fn argument_errors() {
        let r = legendre_roots(3).unwrap();
        assert!(g_integral(3, 5, 0.0, &r).is_err());
        assert!(f_integral(3, 4, 0.0, &r).is_err());
        assert!(f_integral(3, 1, 1.2, &r).is_err());
        assert!(f_integral(4, 1, 0.0, &r).is_err());
        assert!(extended_reference(3, 1, -1.5).is_err());
        assert!(error_report(3, EvalMethod::Integral, 1).is_err());
    }

    #[test]
    fn quadrature_matches_closed_form_antiderivative() {
        for n in 1..=20 {
            let r = legendre_roots(n).unwrap();
            let ib = IntegralBasis::new(&r);
            for i in 1..=n {
                for j in 0..=20 {
                    let t = -1.0 + j as f64 / 10.0;
                    let tau = r.tau(i);
                    let closed = deflated_integral_closed_form(n, tau, t);
                    let quad = (ib.g(i, t) + 0.5) / ib.scale[i - 1];
                    assert!(
                        (closed - quad).abs() <= 1e-12 * closed.abs().max(1.0),
                        "n={n} i={i} t={t} {closed} {quad}"
                    );
                }
            }
        }
    }

    #[test]
    fn deflation_near_the_root() {
        let n = 9;
        let r = legendre_roots(n).unwrap();
        let tau = r.tau(7);
        for delta in [1e-12, -3e-9, 2e-6, 5e-4] {
            let x = tau + delta;
            let near = deflated_legendre(n, x, tau, legendre(n, x));
            // divided difference in double-double; the stored root is not an exact zero
            let xd = Dd::from_f64(x);
            let td = Dd::from_f64(tau);
            let pd: Dd = legendre(n, xd);
            let pt: Dd = legendre(n, td);
            let exact = ((pd - pt) / (xd - td)).to_f64();
            assert!((near - exact).abs() <= 1e-12 * exact.abs(), "delta={delta}");
        }
    }

    #[test]
    fn extended_endpoints_exact() {
        for n in 1..=40 {
            let er = ExtendedReference::new(n).unwrap();
            for i in 0..=n {
                assert_eq!(er.eval(i, -1.0), if i == 0 { 1.0 } else { 0.0 });
                assert_eq!(er.eval(i, 1.0), if i == n { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn extended_partition_of_unity() {
        for n in [1, 7, 30, 64, 100] {
            let er = ExtendedReference::new(n).unwrap();
            for j in 0..=20 {
                let t = -1.0 + j as f64 / 10.0;
                let sum = (0..=n).fold(Dd::zero(), |acc, i| acc + er.eval_dd(i, t));
                assert!((sum - Dd::one()).to_f64().abs() < 1e-26, "n={n} t={t}");
            }
        }
    }

    #[test]
    fn roots_in_double_double_are_mirrored() {
        let r = legendre_roots_dd(7).unwrap();
        assert_eq!(r[3], Dd::zero());
        for j in 0..7 {
            assert_eq!(r[j], -r[6 - j]);
            let p: Dd = legendre(7, r[j]);
            assert!(p.to_f64().abs() < 1e-28);
        }
    }

    #[test]
    fn small_degree_reports() {
        let rep = error_report(5, EvalMethod::Basis(BasisKind::Power), 101).unwrap();
        assert!(rep.max_abs_error <= 1e-12, "{rep:?}");
        assert!(rep.max_abs_error >= rep.mean_abs_error && rep.mean_abs_error >= 0.0);
        assert_eq!(rep.sample_count, 6 * 101);
    }

    #[test]
    fn method_names_round_trip() {
        for m in EvalMethod::ALL {
            assert_eq!(m.name().parse::<EvalMethod>().unwrap(), m);
        }
    }
}
