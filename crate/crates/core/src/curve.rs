//! Gauss-Legendre curves and their evaluation.
//!
//! Single points are computed from the half basis tables at `±t`
//! (`O(n² + dn)`). For many points, [`prepare`] collapses the basis
//! coefficients against the control points once (`O(dn²)`), after which each
//! point costs one Horner or Clenshaw sweep per coordinate (`O(dn)`).

use rayon::prelude::*;

use crate::basis::power::{horner, horner_lanes};
use crate::basis::{BasisKind, BasisRep, Conditioning, GlBasis, Span};
use crate::error::{check_param, GlError, Result};
use crate::ortho::{legendre_roots, ClenshawTable, JacobiParam};
use crate::scalar::{DoubleDouble as Dd, Real};

/// Control points `W_0..W_n` in `E^d`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct GlCurve {
    n: usize,
    d: usize,
    points: Vec<f64>,
}

impl GlCurve {
    /// `points` holds `(n + 1) * d` coordinates, one control point after another.
    pub fn new(n: usize, d: usize, points: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(GlError::InvalidCurve("degree must be at least 1".into()));
        }
        if d == 0 {
            return Err(GlError::InvalidCurve("dimension must be at least 1".into()));
        }
        if points.len() != (n + 1) * d {
            return Err(GlError::InvalidCurve(format!(
                "expected {} coordinates for degree {n} in dimension {d}, got {}",
                (n + 1) * d,
                points.len()
            )));
        }
        if points.iter().any(|v| !v.is_finite()) {
            return Err(GlError::InvalidCurve(
                "control points must be finite".into(),
            ));
        }
        Ok(GlCurve { n, d, points })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        if rows.len() < 2 {
            return Err(GlError::InvalidCurve(
                "need at least two control points".into(),
            ));
        }
        let d = rows[0].len();
        if rows.iter().any(|r| r.len() != d) {
            return Err(GlError::InvalidCurve(
                "control points differ in dimension".into(),
            ));
        }
        GlCurve::new(rows.len() - 1, d, rows.concat())
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn control_point(&self, i: usize) -> &[f64] {
        &self.points[i * self.d..(i + 1) * self.d]
    }

    pub fn control_points(&self) -> impl Iterator<Item = &[f64]> {
        self.points.chunks_exact(self.d)
    }

    fn weight(&self, i: usize, dim: usize) -> f64 {
        self.points[i * self.d + dim]
    }
}

/// `M` points in `E^d`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    d: usize,
    data: Vec<f64>,
}

impl PointSet {
    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.d
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn point(&self, j: usize) -> &[f64] {
        &self.data[j * self.d..(j + 1) * self.d]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.d)
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.data
    }
}

#[derive(Debug, Clone)]
enum Collapsed {
    /// `p(t) = Σ q_k (1+t)^k`.
    Power { q: Vec<Vec<f64>> },
    /// `p(t) = Σ s_k P_k(t)`, end-row constants folded into `s_0`.
    Legendre {
        s: Vec<Vec<f64>>,
        table: ClenshawTable,
    },
    /// `p(t) = (1-t)/2 w_0 + (1+t)/2 w_n + (t²-1)/2 Σ s_k P^(1)_k(t)`.
    Jacobi1 {
        s: Vec<Vec<f64>>,
        w0: Vec<f64>,
        wn: Vec<f64>,
        table: ClenshawTable,
    },
}

/// Curve with its basis collapsed into `t`-independent coefficient vectors.
#[derive(Debug, Clone)]
pub struct PreparedCurve {
    n: usize,
    d: usize,
    kind: BasisKind,
    first: Vec<f64>,
    last: Vec<f64>,
    collapsed: Collapsed,
    conditioning: Conditioning,
}

impl PreparedCurve {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn conditioning(&self) -> Conditioning {
        self.conditioning
    }

    /// The collapsed vector of one coordinate: `q` for the power form, `s`
    /// otherwise.
    pub fn coefficient_vector(&self, dim: usize) -> &[f64] {
        match &self.collapsed {
            Collapsed::Power { q } => &q[dim],
            Collapsed::Legendre { s, .. } | Collapsed::Jacobi1 { s, .. } => &s[dim],
        }
    }

    /// `(w_0, w_n)` multiplying `(1-t)/2` and `(1+t)/2` in the Jacobi form.
    pub fn boundary_weights(&self, dim: usize) -> Option<(f64, f64)> {
        match &self.collapsed {
            Collapsed::Jacobi1 { w0, wn, .. } => Some((w0[dim], wn[dim])),
            _ => None,
        }
    }

    /// Writes `P(t)` into `out` (length `d`); `t` must already be validated.
    #[inline]
    pub fn eval_into(&self, t: f64, out: &mut [f64]) {
        if t == -1.0 {
            out.copy_from_slice(&self.first);
            return;
        }
        if t == 1.0 {
            out.copy_from_slice(&self.last);
            return;
        }
        match &self.collapsed {
            Collapsed::Power { q } => {
                for (o, q) in out.iter_mut().zip(q) {
                    *o = horner(q, 1.0 + t);
                }
            }
            Collapsed::Legendre { s, table } => {
                for (dim, o) in out.iter_mut().enumerate() {
                    *o = table.eval(&s[dim], t);
                }
            }
            Collapsed::Jacobi1 { s, w0, wn, table } => {
                let left = 0.5 * (1.0 - t);
                let right = 0.5 * (1.0 + t);
                let bracket = 0.5 * (t * t - 1.0);
                for (dim, o) in out.iter_mut().enumerate() {
                    *o = left * w0[dim] + right * wn[dim] + bracket * table.eval(&s[dim], t);
                }
            }
        }
    }
}

/// Points evaluated together by [`eval_many`].
const LANES: usize = 4;

impl PreparedCurve {
    /// `P(t)` at `LANES` parameters, written point after point into `out`.
    /// Bitwise equal to calling [`eval_into`](Self::eval_into) on each.
    fn eval_block(&self, ts: &[f64; LANES], out: &mut [f64]) {
        let d = self.d;
        match &self.collapsed {
            Collapsed::Power { q } => {
                let s = ts.map(|t| 1.0 + t);
                for dim in 0..d {
                    let v = horner_lanes(&q[dim], &s);
                    for l in 0..LANES {
                        out[l * d + dim] = v[l];
                    }
                }
            }
            Collapsed::Legendre { s, table } => {
                for dim in 0..d {
                    let v = table.eval_lanes(&s[dim], ts);
                    for l in 0..LANES {
                        out[l * d + dim] = v[l];
                    }
                }
            }
            Collapsed::Jacobi1 { s, w0, wn, table } => {
                for dim in 0..d {
                    let v = table.eval_lanes(&s[dim], ts);
                    for (l, &t) in ts.iter().enumerate() {
                        let left = 0.5 * (1.0 - t);
                        let right = 0.5 * (1.0 + t);
                        let bracket = 0.5 * (t * t - 1.0);
                        out[l * d + dim] = left * w0[dim] + right * wn[dim] + bracket * v[l];
                    }
                }
            }
        }
        for (l, &t) in ts.iter().enumerate() {
            if t == -1.0 {
                out[l * d..(l + 1) * d].copy_from_slice(&self.first);
            } else if t == 1.0 {
                out[l * d..(l + 1) * d].copy_from_slice(&self.last);
            }
        }
    }

    /// Evaluates consecutive blocks of `LANES` parameters, the remainder one by one.
    fn eval_chunk(&self, ts: &[f64], out: &mut [f64]) {
        let d = self.d;
        let mut blocks = ts.chunks_exact(LANES);
        let mut outs = out.chunks_exact_mut(LANES * d);
        for (block, o) in (&mut blocks).zip(&mut outs) {
            self.eval_block(block.try_into().expect("block of LANES"), o);
        }
        for (&t, o) in blocks
            .remainder()
            .iter()
            .zip(outs.into_remainder().chunks_exact_mut(d))
        {
            self.eval_into(t, o);
        }
    }
}

/// Basis tables of one degree and kind, reusable across curves.
#[derive(Debug, Clone)]
pub struct CurvePreparer {
    n: usize,
    kind: BasisKind,
    span: Span,
    rep: BasisRep,
}

impl CurvePreparer {
    /// Half tables; the rows `i > ⌊n/2⌋` are folded in through
    /// `F^n_i(t) = F^n_{n-i}(-t)`.
    pub fn new(n: usize, kind: BasisKind) -> Result<Self> {
        Self::with_span(n, kind, Span::Half)
    }

    /// Full tables without the reflection symmetry.
    pub fn unfolded(n: usize, kind: BasisKind) -> Result<Self> {
        Self::with_span(n, kind, Span::Full)
    }

    fn with_span(n: usize, kind: BasisKind, span: Span) -> Result<Self> {
        let roots = legendre_roots(n)?;
        Ok(CurvePreparer {
            n,
            kind,
            span,
            rep: BasisRep::build(kind, &roots, span),
        })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn prepare(&self, curve: &GlCurve) -> Result<PreparedCurve> {
        if curve.n != self.n {
            return Err(GlError::InvalidCurve(format!(
                "curve of degree {} given to tables of degree {}",
                curve.n, self.n
            )));
        }
        Ok(collapse(curve, self.kind, self.span, &self.rep))
    }
}

/// Collapses the curve against the half basis table, folding the rows
/// `i > ⌊n/2⌋` in through `F^n_i(t) = F^n_{n-i}(-t)`.
pub fn prepare(curve: &GlCurve, kind: BasisKind) -> Result<PreparedCurve> {
    CurvePreparer::new(curve.n, kind)?.prepare(curve)
}

/// Collapses against the full basis table without using the reflection symmetry.
/// Slower to build; kept for differential testing.
pub fn prepare_unfolded(curve: &GlCurve, kind: BasisKind) -> Result<PreparedCurve> {
    CurvePreparer::unfolded(curve.n, kind)?.prepare(curve)
}

/// Turns the coefficients of `m(1 - t)` in powers of `1 - t` into those of
/// the same polynomial in powers of `1 + t`: a Taylor shift by 2, then a sign
/// flip of the odd terms.
fn reflect_about_minus_one(m: &mut [Dd]) {
    let len = m.len();
    for i in 0..len.saturating_sub(1) {
        for j in (i..len - 1).rev() {
            m[j] = m[j] + m[j + 1].mul_f64(2.0);
        }
    }
    for v in m.iter_mut().skip(1).step_by(2) {
        *v = -*v;
    }
}

fn collapse(curve: &GlCurve, kind: BasisKind, span: Span, rep: &BasisRep) -> PreparedCurve {
    let n = curve.n;
    let d = curve.d;
    let stored = rep.stored_rows();

    // (stored row, mirrored?) for each control point index
    let source = |i: usize| -> (usize, bool) {
        if i < stored {
            (i, false)
        } else {
            (n - i, true)
        }
    };
    let alternate = |k: usize, mirrored: bool| -> f64 {
        if mirrored && k % 2 == 1 {
            -1.0
        } else {
            1.0
        }
    };

    let collapsed = match rep {
        BasisRep::Power(p) => {
            // Reflected rows are polynomials in 1 - t = 2 - (1 + t). They are
            // summed on their own, re-expanded about t = -1 and added, all in
            // double-double so that only the final q is rounded.
            let mut plus = vec![vec![Dd::zero(); n + 1]; d];
            let mut minus = vec![vec![Dd::zero(); n + 1]; d];
            for i in 0..=n {
                let (row, mirrored) = source(i);
                let target = if mirrored { &mut minus } else { &mut plus };
                for (dim, acc) in target.iter_mut().enumerate() {
                    let w = curve.weight(i, dim);
                    for (a, &c) in acc.iter_mut().zip(p.row(row)) {
                        *a = *a + Dd::from_f64(c).mul_f64(w);
                    }
                }
            }
            let q = plus
                .into_iter()
                .zip(minus)
                .map(|(mut plus, mut minus)| {
                    if span == Span::Half {
                        reflect_about_minus_one(&mut minus);
                        for (a, b) in plus.iter_mut().zip(&minus) {
                            *a = *a + *b;
                        }
                    }
                    plus.iter().map(|v| v.to_f64()).collect()
                })
                .collect();
            Collapsed::Power { q }
        }
        BasisRep::Ortho(o) => {
            let len = o.coeffs(0).len();
            let mut s = vec![vec![0.0; len]; d];
            let mut w0 = vec![0.0; d];
            let mut wn = vec![0.0; d];
            for i in 0..=n {
                let (row, mirrored) = source(i);
                let c = o.coeffs(row);
                for dim in 0..d {
                    let w = curve.weight(i, dim);
                    for (k, (a, ck)) in s[dim].iter_mut().zip(c).enumerate() {
                        *a += w * alternate(k, mirrored) * ck;
                    }
                    // stored row 0 carries the left boundary term, row n the right one;
                    // reflecting swaps them
                    let left = (row == 0) != mirrored;
                    if row == 0 || row == n {
                        if left {
                            w0[dim] += w;
                        } else {
                            wn[dim] += w;
                        }
                    }
                }
            }
            match kind {
                BasisKind::Legendre => {
                    for dim in 0..d {
                        s[dim][0] += 0.5 * (w0[dim] + wn[dim]);
                    }
                    Collapsed::Legendre {
                        s,
                        table: ClenshawTable::new(JacobiParam::LEGENDRE, len),
                    }
                }
                _ => Collapsed::Jacobi1 {
                    s,
                    w0,
                    wn,
                    table: ClenshawTable::new(JacobiParam::order(1), len),
                },
            }
        }
    };

    PreparedCurve {
        n,
        d,
        kind,
        first: curve.control_point(0).to_vec(),
        last: curve.control_point(n).to_vec(),
        collapsed,
        conditioning: rep.conditioning(),
    }
}

/// `P(t)` from the half basis tables evaluated at `±t`.
pub fn eval_point(curve: &GlCurve, t: f64, kind: BasisKind) -> Result<Vec<f64>> {
    check_param(t)?;
    let n = curve.n;
    if t == -1.0 {
        return Ok(curve.control_point(0).to_vec());
    }
    if t == 1.0 {
        return Ok(curve.control_point(n).to_vec());
    }
    let roots = legendre_roots(n)?;
    let rep = BasisRep::build(kind, &roots, Span::Half);
    let h = n / 2;
    let mut out = vec![0.0; curve.d];
    for i in 0..=n {
        let f = if i <= h {
            rep.eval_stored(i, t)
        } else {
            rep.eval_stored(n - i, -t)
        };
        for (dim, o) in out.iter_mut().enumerate() {
            *o += curve.weight(i, dim) * f;
        }
    }
    Ok(out)
}

fn check_all(ts: &[f64]) -> Result<()> {
    ts.iter().try_for_each(|&t| check_param(t))
}

/// Evaluates the prepared curve at every parameter, in input order.
pub fn eval_many(prep: &PreparedCurve, ts: &[f64]) -> Result<PointSet> {
    check_all(ts)?;
    let d = prep.d;
    let mut data = vec![0.0; ts.len() * d];
    prep.eval_chunk(ts, &mut data);
    Ok(PointSet { d, data })
}

/// Parameters per parallel work item; a multiple of `LANES`.
const PARALLEL_CHUNK: usize = 256;

/// [`eval_many`] split across `threads` workers; the result is bitwise
/// identical to the sequential one.
pub fn eval_many_parallel(prep: &PreparedCurve, ts: &[f64], threads: usize) -> Result<PointSet> {
    if threads <= 1 {
        return eval_many(prep, ts);
    }
    check_all(ts)?;
    let d = prep.d;
    let mut data = vec![0.0; ts.len() * d];
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| GlError::Domain(format!("cannot start worker pool: {e}")))?;
    pool.install(|| {
        data.par_chunks_mut(PARALLEL_CHUNK * d)
            .zip(ts.par_chunks(PARALLEL_CHUNK))
            .for_each(|(out, chunk)| prep.eval_chunk(chunk, out));
    });
    Ok(PointSet { d, data })
}
