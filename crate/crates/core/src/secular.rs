//! The secular function F(s) = sum_j w_j / (s - i lambda_j) of the rank-one
//! perturbed model, its zeros on the imaginary axis, and the full spectrum of
//! 2D + I by root-finding.
//!
//! With W = 2D - (J - I) and M = iW, the eigenvalues of 2D + I = W + J are
//! exactly the solutions of F(s) = 1, where lambda_j are the eigenvalues of M
//! and w_j = |<1, v_j>|^2 the overlaps of the all-ones direction with the
//! eigenvectors. Zero overlaps make the unperturbed eigenvalue i lambda_j an
//! exact eigenvalue of 2D + I; those are persisted rather than solved for.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::SecularError;
use crate::linalg::{refine_eigenpair, SkewSpectrum};
use crate::matrix::{CMatrix, SkewMatrix};

/// Pole locations (ascending, the spectrum of M) and overlap weights.
#[derive(Debug, Clone)]
pub struct SecularFunction {
    poles: Vec<f64>,
    weights: Vec<f64>,
}

impl SecularFunction {
    pub fn from_parts(poles: Vec<f64>, weights: Vec<f64>) -> Self {
        assert_eq!(poles.len(), weights.len());
        assert!(!poles.is_empty());
        debug_assert!(poles.windows(2).all(|w| w[0] <= w[1]));
        Self { poles, weights }
    }

    pub fn n(&self) -> usize {
        self.poles.len()
    }

    pub fn poles(&self) -> &[f64] {
        &self.poles
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Weights at or below this are treated as exact degeneracies.
    pub fn weight_tolerance(&self) -> f64 {
        1e-12 * self.n() as f64
    }

    fn max_pole(&self) -> f64 {
        self.poles.iter().fold(0.0f64, |m, p| m.max(p.abs()))
    }
}

/// Weights w_j = |<1, v_j>|^2 from a spectrum. The conjugation pairing of the
/// eigenvectors makes w_{-j} = w_j hold bit for bit.
pub fn build_secular(spec: &SkewSpectrum) -> SecularFunction {
    let n = spec.dim();
    let mut weights = Vec::with_capacity(n);
    for k in 0..n {
        let v = spec.vector_flat(k);
        let s: Complex64 = v.iter().sum();
        weights.push(s.norm_sqr());
    }
    SecularFunction::from_parts(spec.eigenvalues().to_vec(), weights)
}

fn check_pole_distance(f: &SecularFunction, s: Complex64) -> Result<(), SecularError> {
    let guard = 1e-14 * f.max_pole();
    let mut nearest = usize::MAX;
    let mut best = f64::INFINITY;
    for (j, &p) in f.poles.iter().enumerate() {
        let d = (s - Complex64::new(0.0, p)).norm();
        if d < best {
            best = d;
            nearest = j;
        }
    }
    if best <= guard {
        return Err(SecularError::PoleProximity {
            pole_index: nearest,
            distance: best,
        });
    }
    Ok(())
}

fn eval_direct(poles: &[f64], weights: &[f64], s: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (&p, &w) in poles.iter().zip(weights.iter()) {
        if w != 0.0 {
            acc += w / (s - Complex64::new(0.0, p));
        }
    }
    acc
}

fn eval_direct_derivative(poles: &[f64], weights: &[f64], s: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (&p, &w) in poles.iter().zip(weights.iter()) {
        if w != 0.0 {
            let d = s - Complex64::new(0.0, p);
            acc -= w / (d * d);
        }
    }
    acc
}

/// Paired form: F(s) = w_0/s + 2s sum_{j>0} w_j/(s^2 + lambda_j^2), combining
/// the +/- pole pairs; algebraically identical to the direct sum but exactly
/// odd on the real axis.
pub fn eval_f_paired(f: &SecularFunction, s: Complex64) -> Complex64 {
    let n = f.n();
    let s2 = s * s;
    let mut acc = Complex64::new(0.0, 0.0);
    if n % 2 == 1 {
        acc += f.weights[(n - 1) / 2] / s;
    }
    for t in (n - n / 2)..n {
        let lam = f.poles[t];
        let w = 0.5 * (f.weights[t] + f.weights[n - 1 - t]);
        acc += 2.0 * w * s / (s2 + lam * lam);
    }
    acc
}

fn eval_fprime_paired(f: &SecularFunction, s: Complex64) -> Complex64 {
    let n = f.n();
    let s2 = s * s;
    let mut acc = Complex64::new(0.0, 0.0);
    if n % 2 == 1 {
        acc -= f.weights[(n - 1) / 2] / s2;
    }
    for t in (n - n / 2)..n {
        let lam = f.poles[t];
        let w = 0.5 * (f.weights[t] + f.weights[n - 1 - t]);
        let denom = s2 + lam * lam;
        acc += 2.0 * w * (Complex64::new(lam * lam, 0.0) - s2) / (denom * denom);
    }
    acc
}

/// Evaluate F(s). Real arguments route through the paired form so that F is
/// exactly odd on the real axis; near-pole arguments are rejected.
pub fn eval_f(f: &SecularFunction, s: Complex64) -> Result<Complex64, SecularError> {
    check_pole_distance(f, s)?;
    if s.im == 0.0 {
        Ok(eval_f_paired(f, s))
    } else {
        Ok(eval_direct(&f.poles, &f.weights, s))
    }
}

/// F'(s) = -sum_j w_j / (s - i lambda_j)^2.
pub fn eval_f_derivative(f: &SecularFunction, s: Complex64) -> Result<Complex64, SecularError> {
    check_pole_distance(f, s)?;
    if s.im == 0.0 {
        Ok(eval_fprime_paired(f, s))
    } else {
        Ok(eval_direct_derivative(&f.poles, &f.weights, s))
    }
}

/// Outcome of the zero search on one pole interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum MuOutcome {
    /// Zero of Im F(it) strictly inside the interval.
    Zero(f64),
    /// Interval endpoint carries a degenerate weight; no secular zero is
    /// attached to it.
    Skipped,
}

/// g(t) = -Im F(it) = sum_j w_j / (t - lambda_j): strictly decreasing from
/// +inf to -inf between consecutive active poles.
fn g_on_axis(poles: &[f64], weights: &[f64], t: f64) -> f64 {
    let mut acc = 0.0;
    for (&p, &w) in poles.iter().zip(weights.iter()) {
        if w != 0.0 {
            acc += w / (t - p);
        }
    }
    acc
}

pub(crate) fn bisect_zero(
    poles: &[f64],
    weights: &[f64],
    lo_pole: f64,
    hi_pole: f64,
    n: usize,
    interval_label: isize,
) -> Result<f64, SecularError> {
    let span = hi_pole - lo_pole;
    let eps = 1e-13 * span;
    let mut a = lo_pole + eps;
    let mut b = hi_pole - eps;
    let tol_g = 1e-12 * n as f64 / span;
    let mut ga = g_on_axis(poles, weights, a);
    let gb = g_on_axis(poles, weights, b);
    if !(ga > 0.0 && gb < 0.0) {
        return Err(SecularError::NoBracket {
            interval: interval_label,
        });
    }
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        let gm = g_on_axis(poles, weights, mid);
        if gm.abs() <= tol_g {
            return Ok(mid);
        }
        if gm.signum() == ga.signum() {
            a = mid;
            ga = gm;
        } else {
            b = mid;
        }
        if (b - a) <= 4.0 * f64::EPSILON * b.abs().max(a.abs()).max(1.0) {
            break;
        }
    }
    Ok(0.5 * (a + b))
}

/// Locate the zero mu in the interval (poles[k], poles[k+1]), flat indexing.
/// Intervals with a degenerate endpoint weight are skipped: the zero search
/// there belongs to the merged interval between active poles.
pub fn find_mu(f: &SecularFunction, k: usize) -> Result<MuOutcome, SecularError> {
    assert!(k + 1 < f.n(), "interval index out of range");
    let tol_w = f.weight_tolerance();
    if f.weights[k] <= tol_w || f.weights[k + 1] <= tol_w {
        return Ok(MuOutcome::Skipped);
    }
    if f.poles[k + 1] <= f.poles[k] {
        return Ok(MuOutcome::Skipped);
    }
    let weights: Vec<f64> = f
        .weights
        .iter()
        .map(|&w| if w <= tol_w { 0.0 } else { w })
        .collect();
    let mu = bisect_zero(
        &f.poles,
        &weights,
        f.poles[k],
        f.poles[k + 1],
        f.n(),
        k as isize,
    )?;
    Ok(MuOutcome::Zero(mu))
}

/// Provenance of one root of F(s) = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootTag {
    RealRoot,
    SecularNewton,
    Persisted,
}

#[derive(Debug, Clone, Serialize)]
pub struct PerturbedRoot {
    pub re: f64,
    pub im: f64,
    pub tag: RootTag,
    /// ||A v - s v||_2 from the inverse-iteration polish.
    pub residual: f64,
    /// Flat index of the active-pole interval the root came from, if any.
    pub interval_index: Option<usize>,
    pub converged: bool,
}

impl PerturbedRoot {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// The n eigenvalues of 2D + I with provenance and polish residuals.
#[derive(Debug, Clone, Serialize)]
pub struct PerturbedSpectrum {
    pub n: usize,
    pub roots: Vec<PerturbedRoot>,
    pub failures: usize,
}

impl PerturbedSpectrum {
    pub fn values(&self) -> Vec<Complex64> {
        self.roots.iter().map(|r| r.value()).collect()
    }

    /// The unique real root (largest real part); present for odd n.
    pub fn real_root(&self) -> Option<&PerturbedRoot> {
        self.roots.iter().find(|r| r.tag == RootTag::RealRoot)
    }

    pub fn trace(&self) -> Complex64 {
        self.roots.iter().map(|r| r.value()).sum()
    }

    /// Max over roots of the distance to the conjugate multiset.
    pub fn conjugation_defect(&self) -> f64 {
        let vals = self.values();
        let mut worst = 0.0f64;
        for v in &vals {
            let target = v.conj();
            let best = vals
                .iter()
                .map(|u| (u - target).norm())
                .fold(f64::INFINITY, f64::min);
            worst = worst.max(best);
        }
        worst
    }
}

/// Dense A = 2D + I = W + J.
pub fn two_d_plus_i(w: &SkewMatrix) -> CMatrix {
    let n = w.dim();
    let mut a = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = Complex64::new(w.get(i, j) + 1.0, 0.0);
        }
    }
    a
}

pub(crate) const NEWTON_TOL: f64 = 1e-10;
const NEWTON_MAX_ITER: usize = 60;

/// Rational-function evaluation over arbitrary complex pole points.
pub(crate) fn eval_rational(pole_points: &[Complex64], weights: &[f64], s: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (&p, &w) in pole_points.iter().zip(weights.iter()) {
        if w != 0.0 {
            acc += w / (s - p);
        }
    }
    acc
}

pub(crate) fn eval_rational_derivative(
    pole_points: &[Complex64],
    weights: &[f64],
    s: Complex64,
) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (&p, &w) in pole_points.iter().zip(weights.iter()) {
        if w != 0.0 {
            let d = s - p;
            acc -= w / (d * d);
        }
    }
    acc
}

/// Complex Newton on sum_j w_j/(s - p_j) = target, with the step clipped to
/// half the distance to the nearest pole and modulus backtracking along the
/// Newton direction.
pub(crate) fn newton_rational(
    pole_points: &[Complex64],
    weights: &[f64],
    target: Complex64,
    start: Complex64,
) -> (Complex64, bool) {
    let mut s = start;
    let mut h = eval_rational(pole_points, weights, s) - target;
    for _ in 0..NEWTON_MAX_ITER {
        if h.norm() <= NEWTON_TOL {
            return (s, true);
        }
        let d = eval_rational_derivative(pole_points, weights, s);
        if d.norm() == 0.0 {
            return (s, false);
        }
        let mut step = -h / d;
        let dmin = pole_points
            .iter()
            .zip(weights.iter())
            .filter(|(_, &w)| w != 0.0)
            .map(|(&p, _)| (s - p).norm())
            .fold(f64::INFINITY, f64::min);
        if step.norm() > 0.5 * dmin {
            step *= 0.5 * dmin / step.norm();
        }
        let mut accepted = false;
        for _ in 0..25 {
            let cand = s + step;
            let hc = eval_rational(pole_points, weights, cand) - target;
            if hc.norm() < h.norm() {
                s = cand;
                h = hc;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            return (s, h.norm() <= NEWTON_TOL);
        }
    }
    (s, h.norm() <= NEWTON_TOL)
}

fn newton_complex(
    poles: &[f64],
    weights: &[f64],
    _active_poles: &[f64],
    start: Complex64,
) -> (Complex64, bool) {
    let points: Vec<Complex64> = poles.iter().map(|&p| Complex64::new(0.0, p)).collect();
    newton_rational(&points, weights, Complex64::new(1.0, 0.0), start)
}

/// Safeguarded Newton for the large real root, started at s = n.
fn solve_real_root(f: &SecularFunction, n: usize) -> (f64, bool) {
    let fr = |s: f64| eval_f_paired(f, Complex64::new(s, 0.0)).re - 1.0;
    let dfr = |s: f64| eval_fprime_paired(f, Complex64::new(s, 0.0)).re;

    // Bracket [lo, hi] with fr(lo) > 0 > fr(hi).
    let mut hi = n as f64;
    let mut grow = 0;
    while fr(hi) >= 0.0 && grow < 64 {
        hi *= 2.0;
        grow += 1;
    }
    let mut lo = n as f64;
    let floor = f.max_pole() * 1e-6 + f64::MIN_POSITIVE;
    let mut shrink = 0;
    while fr(lo) <= 0.0 && shrink < 128 && lo > floor {
        lo *= 0.5;
        shrink += 1;
    }
    if fr(lo) <= 0.0 {
        // No strict bracket (possible only for even n at a tangency); fall
        // back to damped Newton from s = n.
        let mut s = n as f64;
        for _ in 0..NEWTON_MAX_ITER {
            let h = fr(s);
            if h.abs() <= NEWTON_TOL {
                return (s, true);
            }
            let d = dfr(s);
            if d == 0.0 {
                break;
            }
            let mut step = -h / d;
            if !(s + step).is_finite() || s + step <= 0.0 {
                step = -0.5 * s;
            }
            s += step;
        }
        return (s, fr(s).abs() <= NEWTON_TOL);
    }

    // Newton with bisection safeguard on the bracket.
    let mut s = n as f64;
    if s <= lo || s >= hi {
        s = 0.5 * (lo + hi);
    }
    for _ in 0..200 {
        let h = fr(s);
        if h.abs() <= NEWTON_TOL {
            return (s, true);
        }
        if h > 0.0 {
            lo = s;
        } else {
            hi = s;
        }
        let d = dfr(s);
        let mut next = if d != 0.0 { s - h / d } else { 0.5 * (lo + hi) };
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (hi - lo) <= 4.0 * f64::EPSILON * hi.abs().max(1.0) {
            return (0.5 * (lo + hi), true);
        }
        s = next;
    }
    (s, fr(s).abs() <= NEWTON_TOL)
}

/// Full spectrum of 2D + I: the real root by safeguarded Newton from s = n,
/// one complex root per interval between consecutive active poles (Newton
/// from the first-order step off the secular zero), persisted roots for the
/// degenerate overlap directions, and an inverse-iteration polish of every
/// root against the dense matrix.
pub fn solve_perturbed(
    f: &SecularFunction,
    spec: &SkewSpectrum,
    a: &CMatrix,
) -> Result<PerturbedSpectrum, SecularError> {
    let n = f.n();
    debug_assert_eq!(spec.dim(), n);
    debug_assert_eq!(a.nrows(), n);
    let tol_w = f.weight_tolerance();

    let zeroed: Vec<f64> = f
        .weights
        .iter()
        .map(|&w| if w <= tol_w { 0.0 } else { w })
        .collect();
    let active: Vec<usize> = (0..n).filter(|&j| zeroed[j] != 0.0).collect();
    let active_poles: Vec<f64> = active.iter().map(|&j| f.poles[j]).collect();
    let m = active.len();

    let mut roots: Vec<PerturbedRoot> = Vec::with_capacity(n);

    // (c) persisted eigenvalues for zero-weight directions
    for j in 0..n {
        if zeroed[j] == 0.0 {
            roots.push(PerturbedRoot {
                re: 0.0,
                im: f.poles[j],
                tag: RootTag::Persisted,
                residual: f64::NAN,
                interval_index: None,
                converged: true,
            });
        }
    }

    // (a) the large real root
    let (real_root, real_ok) = solve_real_root(f, n);
    roots.push(PerturbedRoot {
        re: real_root,
        im: 0.0,
        tag: RootTag::RealRoot,
        residual: f64::NAN,
        interval_index: None,
        converged: real_ok,
    });

    // (b) one root per active gap. The upper-half gaps are solved by Newton
    // from the first-order step off the secular zero; the lower half comes
    // from conjugation. A small-but-active weight puts one root within
    // O(w_j) of the pole i lambda_j, where the linear start can fall into a
    // neighboring basin; duplicates are therefore detected and repaired from
    // pole-local starts s = i lambda_j + w_j / (1 - F_others(i lambda_j)).
    let gaps = m.saturating_sub(1);
    let upper: Vec<usize> = (0..gaps).filter(|&t| t >= gaps.saturating_sub(1) - t).collect();
    let mut slot: Vec<Option<(Complex64, bool)>> = vec![None; gaps];
    let mut fallback: Vec<Option<Complex64>> = vec![None; gaps];
    let mut found: Vec<Complex64> = vec![Complex64::new(real_root, 0.0)];
    let dup_of = |found: &[Complex64], s: Complex64| {
        let tol = 1e-7 * (1.0 + s.norm());
        found
            .iter()
            .any(|u| (u - s).norm() <= tol || (u.conj() - s).norm() <= tol)
    };

    for &t in &upper {
        let lo = active_poles[t];
        let hi = active_poles[t + 1];
        let mu = bisect_zero(&f.poles, &zeroed, lo, hi, n, active[t] as isize)?;
        let fp = eval_direct_derivative(&f.poles, &zeroed, Complex64::new(0.0, mu));
        let start = if fp.norm() > 0.0 {
            Complex64::new(0.0, mu) + 1.0 / fp
        } else {
            Complex64::new(0.0, mu)
        };
        let (s, ok) = newton_complex(&f.poles, &zeroed, &active_poles, start);
        if ok && !dup_of(&found, s) {
            found.push(s);
            slot[t] = Some((s, true));
        } else {
            fallback[t] = Some(s);
        }
    }
    if slot.iter().take(gaps).any(|s| s.is_none()) {
        // Pole-local repair starts, strongest for small weights.
        for (idx, &j) in active.iter().enumerate() {
            if upper.iter().all(|&t| slot[t].is_some()) {
                break;
            }
            let pole = Complex64::new(0.0, f.poles[j]);
            let mut others = zeroed.clone();
            others[j] = 0.0;
            let f_others = eval_direct(&f.poles, &others, pole);
            let denom = Complex64::new(1.0, 0.0) - f_others;
            if denom.norm() == 0.0 {
                continue;
            }
            let start = pole + zeroed[j] / denom;
            let (s, ok) = newton_complex(&f.poles, &zeroed, &active_poles, start);
            let _ = idx;
            if ok && !dup_of(&found, s) {
                if let Some(open) = upper.iter().find(|&&t| slot[t].is_none()) {
                    found.push(s);
                    slot[*open] = Some((s, true));
                }
            }
        }
        // Anything still open keeps its duplicate estimate, flagged.
        for &t in &upper {
            if slot[t].is_none() {
                let s = fallback[t].unwrap_or(Complex64::new(0.0, active_poles[t]));
                slot[t] = Some((s, false));
            }
        }
    }
    for &t in &upper {
        let (s, ok) = slot[t].expect("upper slots filled");
        roots.push(PerturbedRoot {
            re: s.re,
            im: s.im,
            tag: RootTag::SecularNewton,
            residual: f64::NAN,
            interval_index: Some(active[t]),
            converged: ok,
        });
        let partner = gaps - 1 - t;
        if partner != t {
            let sc = s.conj();
            let h = eval_direct(&f.poles, &zeroed, sc) - 1.0;
            roots.push(PerturbedRoot {
                re: sc.re,
                im: sc.im,
                tag: RootTag::SecularNewton,
                residual: f64::NAN,
                interval_index: Some(active[partner]),
                converged: ok && h.norm() <= 10.0 * NEWTON_TOL,
            });
        }
    }

    if roots.len() != n {
        return Err(SecularError::RootCount {
            expected: n,
            actual: roots.len(),
        });
    }

    // (d) polish every root against the dense matrix
    let mut failures = 0usize;
    for r in roots.iter_mut() {
        match refine_eigenpair(a, r.value()) {
            Ok(refined) => {
                r.re = refined.value.re;
                r.im = refined.value.im;
                r.residual = refined.residual;
            }
            Err(crate::error::LinalgError::NoConvergence { residual }) => {
                r.residual = residual;
                r.converged = false;
                failures += 1;
            }
            Err(e) => return Err(SecularError::Linalg(e)),
        }
        if !r.converged {
            failures = failures.max(1);
        }
    }

    roots.sort_by(|x, y| {
        (x.im, x.re)
            .partial_cmp(&(y.im, y.re))
            .expect("roots are finite")
    });
    failures = roots.iter().filter(|r| !r.converged).count();
    Ok(PerturbedSpectrum { n, roots, failures })
}

/// Convenience pipeline: eigendecompose W, build the secular function, solve.
pub fn perturbed_spectrum_of(w: &SkewMatrix) -> Result<(SkewSpectrum, SecularFunction, PerturbedSpectrum), SecularError> {
    let spec = crate::linalg::eigen_skew(w)?;
    let f = build_secular(&spec);
    let a = two_d_plus_i(w);
    let roots = solve_perturbed(&f, &spec, &a)?;
    Ok((spec, f, roots))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles;
    use crate::linalg::eigen_skew;
    use crate::rng::Seed;

    fn cyclic3() -> SkewMatrix {
        let mut w = SkewMatrix::zeros(3).unwrap();
        w.set_lower(1, 0, -1.0);
        w.set_lower(2, 0, 1.0);
        w.set_lower(2, 1, -1.0);
        w
    }

    #[test]
    fn cyclic_weights_concentrate_on_kernel() {
        let spec = eigen_skew(&cyclic3()).unwrap();
        let f = build_secular(&spec);
        assert!((f.weights()[1] - 3.0).abs() < 1e-10);
        assert!(f.weights()[0].abs() < 1e-12);
        assert!(f.weights()[2].abs() < 1e-12);
    }

    #[test]
    fn single_site_problem() {
        let w = SkewMatrix::zeros(1).unwrap();
        let spec = eigen_skew(&w).unwrap();
        let f = build_secular(&spec);
        assert_eq!(f.poles(), &[0.0]);
        assert!((f.weights()[0] - 1.0).abs() < 1e-14);
        let a = two_d_plus_i(&w);
        let sol = solve_perturbed(&f, &spec, &a).unwrap();
        assert_eq!(sol.roots.len(), 1);
        assert!((sol.roots[0].value() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn parseval_weight_sum() {
        let w = ensembles::sample_skew_pm1(11, Seed::new(13, 2)).unwrap();
        let spec = eigen_skew(&w).unwrap();
        let f = build_secular(&spec);
        let total: f64 = f.weights().iter().sum();
        assert!((total - 11.0).abs() < 1e-8, "sum {total}");
    }

    #[test]
    fn f_of_cyclic_at_three_is_one() {
        let spec = eigen_skew(&cyclic3()).unwrap();
        let f = build_secular(&spec);
        let v = eval_f(&f, Complex64::new(3.0, 0.0)).unwrap();
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn f_is_odd_on_real_axis() {
        let w = ensembles::sample_skew_pm1(9, Seed::new(4, 4)).unwrap();
        let spec = eigen_skew(&w).unwrap();
        let f = build_secular(&spec);
        for s in [0.37, 1.9, 5.5, 11.0] {
            let a = eval_f(&f, Complex64::new(s, 0.0)).unwrap();
            let b = eval_f(&f, Complex64::new(-s, 0.0)).unwrap();
            assert!((a + b).norm() < 1e-12, "F({s}) + F(-{s}) = {}", a + b);
        }
    }

    #[test]
    fn paired_and_direct_forms_agree() {
        let w = ensembles::sample_skew_pm1(11, Seed::new(6, 1)).unwrap();
        let spec = eigen_skew(&w).unwrap();
        let f = build_secular(&spec);
        let s = Complex64::new(0.7, 0.3);
        let direct = eval_f(&f, s).unwrap();
        let paired = eval_f_paired(&f, s);
        assert!(
            (direct - paired).norm() <= 1e-11 * direct.norm(),
            "{direct} vs {paired}"
        );
    }

    #[test]
    fn pole_proximity_is_an_error() {
        let spec = eigen_skew(&cyclic3()).unwrap();
        let f = build_secular(&spec);
        let s = Complex64::new(0.0, 3f64.sqrt());
        match eval_f(&f, s) {
            Err(SecularError::PoleProximity { pole_index, .. }) => assert_eq!(pole_index, 2),
            other => panic!("expected pole proximity, got {other:?}"),
        }
    }

    #[test]
    fn mu_for_three_equal_weights() {
        let f = SecularFunction::from_parts(vec![-1.0, 0.0, 1.0], vec![1.0, 1.0, 1.0]);
        match find_mu(&f, 1).unwrap() {
            MuOutcome::Zero(mu) => {
                assert!((mu - 1.0 / 3f64.sqrt()).abs() < 1e-10, "mu = {mu}");
            }
            other => panic!("expected zero, got {other:?}"),
        }
    }

    #[test]
    fn mu_symmetric_pair_is_midpoint() {
        let f = SecularFunction::from_parts(vec![-1.0, 1.0], vec![1.0, 1.0]);
        match find_mu(&f, 0).unwrap() {
            MuOutcome::Zero(mu) => assert!(mu.abs() < 1e-12, "mu = {mu}"),
            other => panic!("expected zero, got {other:?}"),
        }
    }

    #[test]
    fn degenerate_interval_is_skipped() {
        let spec = eigen_skew(&cyclic3()).unwrap();
        let f = build_secular(&spec);
        // interval (0, sqrt 3): right endpoint has zero weight
        assert_eq!(find_mu(&f, 1).unwrap(), MuOutcome::Skipped);
    }

    #[test]
    fn derivative_of_cyclic_at_three() {
        let spec = eigen_skew(&cyclic3()).unwrap();
        let f = build_secular(&spec);
        let d = eval_f_derivative(&f, Complex64::new(3.0, 0.0)).unwrap();
        assert!((d - Complex64::new(-1.0 / 3.0, 0.0)).norm() < 1e-12, "{d}");
    }

    #[test]
    fn derivative_matches_central_difference() {
        let w = ensembles::sample_skew_pm1(9, Seed::new(17, 0)).unwrap();
        let spec = eigen_skew(&w).unwrap();
        let f = build_secular(&spec);
        let s = Complex64::new(0.42, 0.91);
        let h = 1e-6;
        let num = (eval_f(&f, s + Complex64::new(h, 0.0)).unwrap()
            - eval_f(&f, s - Complex64::new(h, 0.0)).unwrap())
            / (2.0 * h);
        let exact = eval_f_derivative(&f, s).unwrap();
        assert!(
            (num - exact).norm() <= 1e-5 * exact.norm(),
            "{num} vs {exact}"
        );
    }

    #[test]
    fn derivative_on_axis_matches_direct_summation() {
        let f = SecularFunction::from_parts(vec![-1.0, 0.0, 1.0], vec![1.0, 1.0, 1.0]);
        let mu = 1.0 / 3f64.sqrt();
        let d = eval_f_derivative(&f, Complex64::new(0.0, mu)).unwrap();
        let direct: f64 = f
            .poles()
            .iter()
            .zip(f.weights())
            .map(|(&p, &w)| w / ((mu - p) * (mu - p)))
            .sum();
        assert!((d - Complex64::new(direct, 0.0)).norm() < 1e-12, "{d} vs {direct}");
    }

    #[test]
    fn cyclic_spectrum_of_two_d_plus_i() {
        let w = cyclic3();
        let (_, _, sol) = perturbed_spectrum_of(&w).unwrap();
        let r3 = 3f64.sqrt();
        let mut tags: Vec<RootTag> = sol.roots.iter().map(|r| r.tag).collect();
        tags.sort_by_key(|t| format!("{t:?}"));
        assert_eq!(
            sol.roots.iter().filter(|r| r.tag == RootTag::Persisted).count(),
            2
        );
        assert_eq!(
            sol.roots.iter().filter(|r| r.tag == RootTag::RealRoot).count(),
            1
        );
        let mut vals = sol.values();
        vals.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        assert!((vals[0] - Complex64::new(0.0, -r3)).norm() < 1e-9);
        assert!((vals[1] - Complex64::new(3.0, 0.0)).norm() < 1e-9);
        assert!((vals[2] - Complex64::new(0.0, r3)).norm() < 1e-9);
    }

    #[test]
    fn seeded_solve_residuals_and_invariants() {
        let w = ensembles::sample_skew_pm1(31, Seed::new(99, 0)).unwrap();
        let (_, _, sol) = perturbed_spectrum_of(&w).unwrap();
        let a = two_d_plus_i(&w);
        let norm_a = a.frobenius_norm();
        assert_eq!(sol.roots.len(), 31);
        assert_eq!(sol.failures, 0);
        for r in &sol.roots {
            assert!(r.residual <= 1e-9 * norm_a, "residual {}", r.residual);
        }
        let tr = sol.trace();
        assert!((tr - Complex64::new(31.0, 0.0)).norm() < 1e-8 * 31.0, "trace {tr}");
        assert!(sol.conjugation_defect() < 1e-9);
    }

    #[test]
    fn even_dimension_solve() {
        let w = ensembles::sample_skew_pm1(10, Seed::new(23, 5)).unwrap();
        let (_, _, sol) = perturbed_spectrum_of(&w).unwrap();
        assert_eq!(sol.roots.len(), 10);
        assert_eq!(sol.failures, 0);
        let tr = sol.trace();
        assert!((tr - Complex64::new(10.0, 0.0)).norm() < 1e-8 * 10.0);
        assert!(sol.conjugation_defect() < 1e-9);
    }
}
