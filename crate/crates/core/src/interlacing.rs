//! Monte Carlo verification of probabilistic interlacing: the imaginary
//! parts of the eigenvalues of D land one per gap of the unperturbed
//! spectrum, the real parts concentrate at -1/2, the single real eigenvalue
//! sits near (n-1)/2, and the analogous statement for rank-one-perturbed GUE
//! matrices.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::ensembles;
use crate::error::AnalysisError;
use crate::linalg::{eigen_hermitian, eigen_skew, refine_eigenpair};
use crate::matrix::{HermitianMatrix, TournamentMatrix};
use crate::rng::Seed;
use crate::secular::{
    bisect_zero, build_secular, eval_rational, eval_rational_derivative, newton_rational,
    solve_perturbed, two_d_plus_i, PerturbedRoot, RootTag,
};
use crate::stats::{summarize, wilson_interval, Summary, WilsonInterval};

const BOUNDARY_GUARD: f64 = 1e-12;

/// Outcome of the gap test in one trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrialOutcome {
    /// Every window gap contains exactly one root, strictly.
    Interlaced,
    /// Some gap decided only by an exact-boundary hit (within 1e-12); the
    /// generic-case theorem does not cover these, so they are reported
    /// separately rather than counted as failures.
    BoundaryDegenerate,
    /// A gap with no root, or with two or more roots.
    Violated,
    /// The root solver reported failures; excluded from rates.
    SolverFailure,
}

#[derive(Debug, Clone, Serialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub window_start: usize,
    pub n_gaps: usize,
    pub outcome: TrialOutcome,
    /// Gaps holding two or more roots strictly (labeling ambiguity).
    pub ambiguous_gaps: usize,
    /// max over matched window roots of |Re lambda(D) + 1/2| = |Re s| / 2.
    pub max_re_deviation: f64,
    /// |(2 lambda_0(D) + 1)/n - 1| (odd n only).
    pub real_root_rel: Option<f64>,
    /// |2 lambda_0(D) + 1 - n| / sqrt(n) (odd n only).
    pub real_root_sqrt_dev: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InterlaceReport {
    pub version: u32,
    pub ensemble: String,
    pub n: usize,
    pub trials: u64,
    pub alpha: f64,
    pub n_gaps: usize,
    pub seed: Seed,
    pub fixed_index: Option<usize>,
    /// Strict interlacing rate over eligible trials (solver failures and
    /// boundary-degenerate trials excluded from the denominator).
    pub interlace: WilsonInterval,
    /// Rate of max_re_deviation <= re_threshold over the same denominator.
    pub re_part: WilsonInterval,
    pub re_threshold: f64,
    pub boundary_degenerate: usize,
    pub solver_failures: usize,
    pub real_root_sqrt_dev: Option<Summary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub records: Option<Vec<TrialRecord>>,
}

fn classify_gaps(
    gap_bounds: &[(f64, f64)],
    roots: &[PerturbedRoot],
    coord_of: impl Fn(&PerturbedRoot) -> f64,
    re_dev_of: impl Fn(&PerturbedRoot) -> f64,
) -> (TrialOutcome, usize, f64) {
    let mut ambiguous = 0usize;
    let mut boundary = false;
    let mut violated = false;
    let mut max_re: f64 = 0.0;
    for &(lo, hi) in gap_bounds {
        let mut strict = 0usize;
        let mut on_boundary = false;
        for r in roots {
            let y = coord_of(r);
            if (y - lo).abs() <= BOUNDARY_GUARD || (y - hi).abs() <= BOUNDARY_GUARD {
                on_boundary = true;
            } else if y > lo && y < hi {
                strict += 1;
                max_re = max_re.max(re_dev_of(r));
            }
        }
        match strict {
            1 => {}
            0 if on_boundary => boundary = true,
            0 => violated = true,
            _ => {
                ambiguous += 1;
                violated = true;
            }
        }
    }
    let outcome = if violated {
        TrialOutcome::Violated
    } else if boundary {
        TrialOutcome::BoundaryDegenerate
    } else {
        TrialOutcome::Interlaced
    };
    (outcome, ambiguous, max_re)
}

/// Run the interlacing test for one tournament over the positive-index gap
/// window k = i, ..., i + n_gaps - 1: does exactly one eigenvalue of D have
/// its imaginary part strictly inside (lambda_k(M)/2, lambda_{k+1}(M)/2)?
pub fn check_interlacing_once(
    d: &TournamentMatrix,
    i: usize,
    n_gaps: usize,
) -> Result<TrialRecord, AnalysisError> {
    let n = d.dim();
    let pos = n / 2;
    if n_gaps == 0 || n < 3 {
        return Ok(TrialRecord {
            trial: 0,
            window_start: i,
            n_gaps: 0,
            outcome: TrialOutcome::Interlaced,
            ambiguous_gaps: 0,
            max_re_deviation: 0.0,
            real_root_rel: None,
            real_root_sqrt_dev: None,
        });
    }
    // Gap k spans (lambda_k, lambda_{k+1}); k = 0 exists only for odd n,
    // where lambda_0 = 0 anchors the lowest positive gap.
    let min_i = if n % 2 == 1 { 0 } else { 1 };
    if i < min_i || i + n_gaps > pos {
        return Err(AnalysisError::InvalidParameter(format!(
            "window [{i}, {}] outside positive index range [{min_i}, {}]",
            i + n_gaps - 1,
            pos.saturating_sub(1)
        )));
    }
    let w = d.to_skew();
    let spec = eigen_skew(&w)?;
    let f = build_secular(&spec);
    let a = two_d_plus_i(&w);
    let sol = solve_perturbed(&f, &spec, &a)?;

    let (real_root_rel, real_root_sqrt_dev) = if n % 2 == 1 {
        let s = sol.real_root().map(|r| r.re).unwrap_or(f64::NAN);
        (
            Some((s / n as f64 - 1.0).abs()),
            Some((s - n as f64).abs() / (n as f64).sqrt()),
        )
    } else {
        (None, None)
    };

    if sol.failures > 0 {
        return Ok(TrialRecord {
            trial: 0,
            window_start: i,
            n_gaps,
            outcome: TrialOutcome::SolverFailure,
            ambiguous_gaps: 0,
            max_re_deviation: f64::NAN,
            real_root_rel,
            real_root_sqrt_dev,
        });
    }

    // Gap membership on the s-scale: Im lambda(D) = Im s / 2 lies in
    // (lambda_k/2, lambda_{k+1}/2) iff Im s lies in (lambda_k, lambda_{k+1}).
    let bounds: Vec<(f64, f64)> = (i..i + n_gaps)
        .map(|k| (spec.eigenvalue(k as isize), spec.eigenvalue(k as isize + 1)))
        .collect();
    let non_real: Vec<PerturbedRoot> = sol
        .roots
        .iter()
        .filter(|r| r.tag != RootTag::RealRoot)
        .cloned()
        .collect();
    let (outcome, ambiguous, max_re) = classify_gaps(
        &bounds,
        &non_real,
        |r| r.im,
        |r| r.re.abs() / 2.0, // |Re lambda(D) + 1/2| = |Re s| / 2
    );
    Ok(TrialRecord {
        trial: 0,
        window_start: i,
        n_gaps,
        outcome,
        ambiguous_gaps: ambiguous,
        max_re_deviation: max_re,
        real_root_rel,
        real_root_sqrt_dev,
    })
}

/// Real-root deviation |2 lambda_0(D) + 1 - n| / sqrt(n) for odd n.
pub fn check_real_root(d: &TournamentMatrix) -> Result<f64, AnalysisError> {
    let n = d.dim();
    if n % 2 == 0 {
        return Err(AnalysisError::InvalidParameter(
            "real-root check requires odd dimension".into(),
        ));
    }
    if n == 1 {
        return Ok(0.0);
    }
    let w = d.to_skew();
    let spec = eigen_skew(&w)?;
    let f = build_secular(&spec);
    let a = two_d_plus_i(&w);
    let sol = solve_perturbed(&f, &spec, &a)?;
    let s = sol.real_root().map(|r| r.re).unwrap_or(f64::NAN);
    Ok((s - n as f64).abs() / (n as f64).sqrt())
}

pub struct InterlaceParams {
    pub n: usize,
    pub trials: u64,
    pub alpha: f64,
    pub n_gaps: usize,
    pub seed: Seed,
    /// Fix the window start instead of drawing it per trial.
    pub fixed_index: Option<usize>,
    pub keep_records: bool,
}

fn aggregate(
    ensemble: &str,
    params: &InterlaceParams,
    re_threshold: f64,
    records: Vec<TrialRecord>,
) -> InterlaceReport {
    let failures = records
        .iter()
        .filter(|r| r.outcome == TrialOutcome::SolverFailure)
        .count();
    let boundary = records
        .iter()
        .filter(|r| r.outcome == TrialOutcome::BoundaryDegenerate)
        .count();
    let eligible: Vec<&TrialRecord> = records
        .iter()
        .filter(|r| matches!(r.outcome, TrialOutcome::Interlaced | TrialOutcome::Violated))
        .collect();
    let strict = eligible
        .iter()
        .filter(|r| r.outcome == TrialOutcome::Interlaced)
        .count();
    let re_ok = eligible
        .iter()
        .filter(|r| r.outcome == TrialOutcome::Interlaced && r.max_re_deviation <= re_threshold)
        .count();
    let devs: Vec<f64> = records.iter().filter_map(|r| r.real_root_sqrt_dev).collect();
    InterlaceReport {
        version: crate::REPORT_VERSION,
        ensemble: ensemble.to_string(),
        n: params.n,
        trials: params.trials,
        alpha: params.alpha,
        n_gaps: params.n_gaps,
        seed: params.seed,
        fixed_index: params.fixed_index,
        interlace: wilson_interval(strict, eligible.len()),
        re_part: wilson_interval(re_ok, eligible.len()),
        re_threshold,
        boundary_degenerate: boundary,
        solver_failures: failures,
        real_root_sqrt_dev: if devs.is_empty() {
            None
        } else {
            Some(summarize(&devs))
        },
        records: if params.keep_records {
            Some(records)
        } else {
            None
        },
    }
}

/// Tournament-ensemble interlacing experiment: per trial, a fresh uniform
/// tournament and a bulk window start drawn uniformly from
/// [alpha (n-1)/2, (1-alpha) (n-1)/2].
pub fn run_interlace_experiment(params: &InterlaceParams) -> Result<InterlaceReport, AnalysisError> {
    if !(params.alpha > 0.0 && params.alpha < 0.5) {
        return Err(AnalysisError::InvalidParameter(
            "alpha must be in (0, 1/2)".into(),
        ));
    }
    let n = params.n;
    let pos = n / 2;
    let re_threshold = (n as f64).powf(-0.8);
    let lo = ((params.alpha * pos as f64).ceil() as usize).max(1);
    let hi = (((1.0 - params.alpha) * pos as f64).floor() as usize)
        .min(pos.saturating_sub(params.n_gaps));
    if params.trials > 0 && lo > hi {
        return Err(AnalysisError::InvalidParameter(format!(
            "no admissible window start for n = {n}, alpha = {}, gaps = {}",
            params.alpha, params.n_gaps
        )));
    }
    let records: Result<Vec<TrialRecord>, AnalysisError> = (0..params.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = params.seed.rng_for_trial(t);
            let i = params
                .fixed_index
                .unwrap_or_else(|| lo + rng.next_below((hi - lo + 1) as u64) as usize);
            let matrix_seed = Seed::new(rng.next_u64(), rng.next_u64());
            let d = ensembles::sample_tournament(n, matrix_seed)
                .map_err(|e| AnalysisError::Linalg(e.into()))?;
            let mut rec = check_interlacing_once(&d, i, params.n_gaps)?;
            rec.trial = t;
            Ok(rec)
        })
        .collect();
    Ok(aggregate("tournament", params, re_threshold, records?))
}

/// Roots of the rank-one perturbed GUE problem W = G + i * strength * b b^T:
/// solutions of sum_j strength |<b, u_j>|^2 / (s - lambda_j) = -i, plus
/// persisted eigenvalues where the overlap vanishes.
pub struct GuePerturbed {
    pub poles: Vec<f64>,
    pub weights: Vec<f64>,
    pub roots: Vec<PerturbedRoot>,
    pub failures: usize,
}

pub fn gue_perturbed(
    g: &HermitianMatrix,
    b: &[f64],
    strength: f64,
) -> Result<GuePerturbed, AnalysisError> {
    let n = g.dim();
    let norm_b: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if (norm_b - 1.0).abs() > 1e-12 {
        return Err(AnalysisError::NotUnit { norm: norm_b });
    }
    let (lam, u) = eigen_hermitian(g)?;
    let mut weights = Vec::with_capacity(n);
    for j in 0..n {
        let mut ip = Complex64::new(0.0, 0.0);
        for a in 0..n {
            ip += Complex64::new(b[a], 0.0) * u[(a, j)];
        }
        weights.push(strength * ip.norm_sqr());
    }
    let tol_w = 1e-12 * strength;
    let zeroed: Vec<f64> = weights
        .iter()
        .map(|&w| if w <= tol_w { 0.0 } else { w })
        .collect();
    let active: Vec<usize> = (0..n).filter(|&j| zeroed[j] != 0.0).collect();
    let pole_points: Vec<Complex64> = lam.iter().map(|&p| Complex64::new(p, 0.0)).collect();
    let target = Complex64::new(0.0, -1.0);

    let mut roots: Vec<PerturbedRoot> = Vec::with_capacity(n);
    for j in 0..n {
        if zeroed[j] == 0.0 {
            roots.push(PerturbedRoot {
                re: lam[j],
                im: 0.0,
                tag: RootTag::Persisted,
                residual: f64::NAN,
                interval_index: None,
                converged: true,
            });
        }
    }

    // Top root near i * strength (it carries the trace shift i * strength).
    let (top, top_ok) = newton_rational(
        &pole_points,
        &zeroed,
        target,
        Complex64::new(0.0, strength.max(1.0)),
    );
    roots.push(PerturbedRoot {
        re: top.re,
        im: top.im,
        tag: RootTag::RealRoot,
        residual: f64::NAN,
        interval_index: None,
        converged: top_ok,
    });

    let mut found: Vec<Complex64> = vec![top];
    let dup_of = |found: &[Complex64], s: Complex64| {
        let tol = 1e-7 * (1.0 + s.norm());
        found.iter().any(|u| (u - s).norm() <= tol)
    };
    let gaps = active.len().saturating_sub(1);
    let mut slot: Vec<Option<(Complex64, bool)>> = vec![None; gaps];
    let mut fallback: Vec<Option<Complex64>> = vec![None; gaps];
    for t in 0..gaps {
        let lo = lam[active[t]];
        let hi = lam[active[t + 1]];
        if hi - lo <= 1e-12 * (1.0 + hi.abs()) {
            // coincident poles: no interior zero to anchor on
            fallback[t] = Some(Complex64::new(0.5 * (lo + hi), 0.0));
            continue;
        }
        let mu = bisect_zero(&lam, &zeroed, lo, hi, n, active[t] as isize)
            .map_err(AnalysisError::Secular)?;
        let fp = eval_rational_derivative(&pole_points, &zeroed, Complex64::new(mu, 0.0));
        let start = if fp.norm() > 0.0 {
            Complex64::new(mu, 0.0) + target / fp
        } else {
            Complex64::new(mu, 0.0)
        };
        let (s, ok) = newton_rational(&pole_points, &zeroed, target, start);
        if ok && !dup_of(&found, s) {
            found.push(s);
            slot[t] = Some((s, true));
        } else {
            fallback[t] = Some(s);
        }
    }
    if slot.iter().any(|s| s.is_none()) {
        // Pole-local repair starts, strongest for small weights.
        for &j in &active {
            if slot.iter().all(|s| s.is_some()) {
                break;
            }
            let pole = pole_points[j];
            let mut others = zeroed.clone();
            others[j] = 0.0;
            let denom = target - eval_rational(&pole_points, &others, pole);
            if denom.norm() == 0.0 {
                continue;
            }
            let start = pole + zeroed[j] / denom;
            let (s, ok) = newton_rational(&pole_points, &zeroed, target, start);
            if ok && !dup_of(&found, s) {
                if let Some(open) = (0..gaps).find(|&t| slot[t].is_none()) {
                    found.push(s);
                    slot[open] = Some((s, true));
                }
            }
        }
        for t in 0..gaps {
            if slot[t].is_none() {
                slot[t] = Some((
                    fallback[t].unwrap_or(Complex64::new(lam[active[t]], 0.0)),
                    false,
                ));
            }
        }
    }
    for t in 0..gaps {
        let (s, ok) = slot[t].expect("slots filled");
        roots.push(PerturbedRoot {
            re: s.re,
            im: s.im,
            tag: RootTag::SecularNewton,
            residual: f64::NAN,
            interval_index: Some(active[t]),
            converged: ok,
        });
    }
    if roots.len() != n {
        return Err(AnalysisError::Secular(
            crate::error::SecularError::RootCount {
                expected: n,
                actual: roots.len(),
            },
        ));
    }

    // Polish against the dense matrix.
    let mut a = g.to_dense();
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] += Complex64::new(0.0, strength) * b[i] * b[j];
        }
    }
    for r in roots.iter_mut() {
        match refine_eigenpair(&a, r.value()) {
            Ok(refined) => {
                r.re = refined.value.re;
                r.im = refined.value.im;
                r.residual = refined.residual;
            }
            Err(crate::error::LinalgError::NoConvergence { residual }) => {
                r.residual = residual;
                r.converged = false;
            }
            Err(e) => return Err(AnalysisError::Linalg(e)),
        }
    }
    let failures = roots.iter().filter(|r| !r.converged).count();
    roots.sort_by(|x, y| {
        (x.re, x.im)
            .partial_cmp(&(y.re, y.im))
            .expect("roots are finite")
    });
    Ok(GuePerturbed {
        poles: lam,
        weights,
        roots,
        failures,
    })
}

/// One GUE-variant trial: real parts of the perturbed eigenvalues against
/// consecutive eigenvalues of G over the window of flat gaps starting at i.
pub fn check_gue_interlacing_once(
    g: &HermitianMatrix,
    b: &[f64],
    strength: f64,
    i: usize,
    n_gaps: usize,
) -> Result<TrialRecord, AnalysisError> {
    let n = g.dim();
    if i + n_gaps >= n {
        return Err(AnalysisError::InvalidParameter(format!(
            "gap window [{i}, {}] outside 0..{}",
            i + n_gaps,
            n - 1
        )));
    }
    let sol = gue_perturbed(g, b, strength)?;
    if sol.failures > 0 {
        return Ok(TrialRecord {
            trial: 0,
            window_start: i,
            n_gaps,
            outcome: TrialOutcome::SolverFailure,
            ambiguous_gaps: 0,
            max_re_deviation: f64::NAN,
            real_root_rel: None,
            real_root_sqrt_dev: None,
        });
    }
    let bounds: Vec<(f64, f64)> = (i..i + n_gaps)
        .map(|k| (sol.poles[k], sol.poles[k + 1]))
        .collect();
    let non_top: Vec<PerturbedRoot> = sol
        .roots
        .iter()
        .filter(|r| r.tag != RootTag::RealRoot)
        .cloned()
        .collect();
    let (outcome, ambiguous, _) = classify_gaps(&bounds, &non_top, |r| r.re, |_| 0.0);
    Ok(TrialRecord {
        trial: 0,
        window_start: i,
        n_gaps,
        outcome,
        ambiguous_gaps: ambiguous,
        max_re_deviation: f64::NAN,
        real_root_rel: None,
        real_root_sqrt_dev: None,
    })
}

/// GUE-variant experiment: G from the GUE, b uniform on the real unit
/// sphere, strength n, single-gap bulk window drawn per trial.
pub fn run_gue_variant(n: usize, trials: u64, seed: Seed) -> Result<InterlaceReport, AnalysisError> {
    if n < 4 {
        return Err(AnalysisError::InvalidParameter(
            "GUE variant requires n >= 4".into(),
        ));
    }
    let alpha = 0.25;
    let n_gaps = 1usize;
    let lo = (alpha * n as f64).ceil() as usize;
    let hi = (((1.0 - alpha) * n as f64).floor() as usize).min(n - 1 - n_gaps);
    let params = InterlaceParams {
        n,
        trials,
        alpha,
        n_gaps,
        seed,
        fixed_index: None,
        keep_records: false,
    };
    let records: Result<Vec<TrialRecord>, AnalysisError> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = seed.rng_for_trial(t);
            let i = lo + rng.next_below((hi - lo + 1) as u64) as usize;
            let matrix_seed = Seed::new(rng.next_u64(), rng.next_u64());
            let g = ensembles::sample_gue(n, matrix_seed)
                .map_err(|e| AnalysisError::Linalg(e.into()))?;
            let mut brng = Seed::new(rng.next_u64(), rng.next_u64()).rng();
            let b = ensembles::sample_unit_vector(n, &mut brng);
            let mut rec = check_gue_interlacing_once(&g, &b, n as f64, i, n_gaps)?;
            rec.trial = t;
            Ok(rec)
        })
        .collect();
    Ok(aggregate("gue", &params, f64::NAN, records?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic3() -> TournamentMatrix {
        // 1 beats 2, 2 beats 3, 3 beats 1: upper bits (D_12, D_13, D_23) = (1, 0, 1)
        TournamentMatrix::from_upper_bits(3, vec![1, 0, 1]).unwrap()
    }

    #[test]
    fn cyclic_window_is_boundary_degenerate() {
        let rec = check_interlacing_once(&cyclic3(), 0, 1).unwrap();
        assert_eq!(rec.outcome, TrialOutcome::BoundaryDegenerate);
    }

    #[test]
    fn cyclic_real_root_deviation_zero() {
        let dev = check_real_root(&cyclic3()).unwrap();
        assert!(dev < 1e-9, "dev {dev}");
    }

    #[test]
    fn dimension_one_empty_record() {
        let d = TournamentMatrix::from_upper_bits(1, vec![]).unwrap();
        let rec = check_interlacing_once(&d, 0, 0).unwrap();
        assert_eq!(rec.n_gaps, 0);
        assert_eq!(rec.outcome, TrialOutcome::Interlaced);
        assert_eq!(check_real_root(&d).unwrap(), 0.0);
    }

    #[test]
    fn even_dimension_has_no_real_root_check() {
        let d = TournamentMatrix::from_upper_bits(4, vec![1, 0, 1, 0, 1, 0]).unwrap();
        assert!(check_real_root(&d).is_err());
    }

    #[test]
    fn typical_draw_interlaces() {
        let d = ensembles::sample_tournament(201, Seed::new(2024, 0)).unwrap();
        let rec = check_interlacing_once(&d, 50, 5).unwrap();
        assert_eq!(rec.outcome, TrialOutcome::Interlaced);
        assert!(rec.max_re_deviation < 0.05, "{}", rec.max_re_deviation);
    }

    #[test]
    fn zero_trials_report_is_flagged() {
        let params = InterlaceParams {
            n: 21,
            trials: 0,
            alpha: 0.25,
            n_gaps: 2,
            seed: Seed::new(1, 1),
            fixed_index: None,
            keep_records: true,
        };
        let rep = run_interlace_experiment(&params).unwrap();
        assert!(rep.interlace.rate.is_nan());
        assert_eq!(rep.records.as_ref().unwrap().len(), 0);
    }

    #[test]
    fn small_experiment_runs_and_is_deterministic() {
        let params = InterlaceParams {
            n: 31,
            trials: 8,
            alpha: 0.25,
            n_gaps: 2,
            seed: Seed::new(5, 5),
            fixed_index: None,
            keep_records: true,
        };
        let a = run_interlace_experiment(&params).unwrap();
        let b = run_interlace_experiment(&params).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        assert!(a.interlace.rate > 0.0);
    }

    #[test]
    fn fixed_index_mode() {
        let params = InterlaceParams {
            n: 31,
            trials: 4,
            alpha: 0.25,
            n_gaps: 2,
            seed: Seed::new(7, 0),
            fixed_index: Some(6),
            keep_records: true,
        };
        let rep = run_interlace_experiment(&params).unwrap();
        for r in rep.records.as_ref().unwrap() {
            assert_eq!(r.window_start, 6);
        }
    }

    #[test]
    fn gue_diagonal_oracle() {
        // G = diag(1,2,3), b = (1,1,1)/sqrt(3), strength 3: weights all 1,
        // gap-root real parts interlace the diagonal, trace = 6 + 3i.
        let mut g = HermitianMatrix::zeros(3).unwrap();
        for (i, v) in [1.0, 2.0, 3.0].iter().enumerate() {
            g.set_upper(i, i, Complex64::new(*v, 0.0)).unwrap();
        }
        let b = vec![1.0 / 3f64.sqrt(); 3];
        let sol = gue_perturbed(&g, &b, 3.0).unwrap();
        assert_eq!(sol.failures, 0);
        for w in &sol.weights {
            assert!((w - 1.0).abs() < 1e-10);
        }
        let gap_roots: Vec<&PerturbedRoot> = sol
            .roots
            .iter()
            .filter(|r| r.tag == RootTag::SecularNewton)
            .collect();
        assert_eq!(gap_roots.len(), 2);
        let mut res: Vec<f64> = gap_roots.iter().map(|r| r.re).collect();
        res.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!(res[0] > 1.0 && res[0] < 2.0, "{}", res[0]);
        assert!(res[1] > 2.0 && res[1] < 3.0, "{}", res[1]);
        let tr: Complex64 = sol.roots.iter().map(|r| r.value()).sum();
        assert!((tr - Complex64::new(6.0, 3.0)).norm() < 1e-8, "trace {tr}");
        for r in &sol.roots {
            assert!(r.residual < 1e-8, "residual {}", r.residual);
        }
    }

    #[test]
    fn gue_degenerate_direction_is_flagged() {
        // b = e1, G = 0: overlap with the e2 eigenvector is exactly zero and
        // the coincident eigenvalues leave no gap; spectrum of diag(2i, 0).
        let g = HermitianMatrix::zeros(2).unwrap();
        let b = vec![1.0, 0.0];
        let sol = gue_perturbed(&g, &b, 2.0).unwrap();
        let persisted = sol
            .roots
            .iter()
            .filter(|r| r.tag == RootTag::Persisted)
            .count();
        assert_eq!(persisted, 1);
        let mut vals = sol.roots.iter().map(|r| r.value()).collect::<Vec<_>>();
        vals.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        assert!((vals[0] - Complex64::new(0.0, 0.0)).norm() < 1e-10);
        assert!((vals[1] - Complex64::new(0.0, 2.0)).norm() < 1e-10);
    }
}
