//! Small statistical toolbox: KS statistics, Wilson intervals, running
//! summaries, and Gauss-Legendre panel quadrature.

/// Mean and standard error of a sample.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Summary {
    pub n: usize,
    pub mean: f64,
    pub std_dev: f64,
    pub std_err: f64,
}

pub fn summarize(values: &[f64]) -> Summary {
    let n = values.len();
    if n == 0 {
        return Summary {
            n: 0,
            mean: f64::NAN,
            std_dev: f64::NAN,
            std_err: f64::NAN,
        };
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let var = if n > 1 {
        values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n as f64 - 1.0)
    } else {
        0.0
    };
    Summary {
        n,
        mean,
        std_dev: var.sqrt(),
        std_err: (var / n as f64).sqrt(),
    }
}

pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    if sorted.is_empty() {
        return f64::NAN;
    }
    let pos = q.clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    if lo == hi {
        sorted[lo]
    } else {
        let w = pos - lo as f64;
        sorted[lo] * (1.0 - w) + sorted[hi] * w
    }
}

/// Wilson 95% score interval for a binomial proportion.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct WilsonInterval {
    pub rate: f64,
    pub low: f64,
    pub high: f64,
}

pub fn wilson_interval(successes: usize, trials: usize) -> WilsonInterval {
    if trials == 0 {
        return WilsonInterval {
            rate: f64::NAN,
            low: f64::NAN,
            high: f64::NAN,
        };
    }
    let z = 1.959963984540054_f64;
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    WilsonInterval {
        rate: p,
        low: (center - half).max(0.0),
        high: (center + half).min(1.0),
    }
}

/// One-sample KS statistic against a CDF.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &mut [f64], cdf: F) -> f64 {
    samples.sort_by(|a, b| a.partial_cmp(b).expect("NaN in KS input"));
    let n = samples.len() as f64;
    let mut sup = 0.0f64;
    for (i, &x) in samples.iter().enumerate() {
        let f = cdf(x);
        sup = sup.max((i as f64 + 1.0) / n - f).max(f - i as f64 / n);
    }
    sup
}

/// Two-sample KS statistic.
pub fn ks_two_sample(a: &mut [f64], b: &mut [f64]) -> f64 {
    a.sort_by(|x, y| x.partial_cmp(y).expect("NaN in KS input"));
    b.sort_by(|x, y| x.partial_cmp(y).expect("NaN in KS input"));
    let (na, nb) = (a.len(), b.len());
    let (mut i, mut j) = (0usize, 0usize);
    let mut sup = 0.0f64;
    while i < na && j < nb {
        let xa = a[i];
        let xb = b[j];
        if xa <= xb {
            i += 1;
        }
        if xb <= xa {
            j += 1;
        }
        sup = sup.max((i as f64 / na as f64 - j as f64 / nb as f64).abs());
    }
    sup
}

/// Asymptotic Kolmogorov distribution tail Q(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2);
/// p-value for a two-sample statistic d with sizes (na, nb).
pub fn ks_two_sample_pvalue(d: f64, na: usize, nb: usize) -> f64 {
    let ne = (na as f64 * nb as f64) / (na as f64 + nb as f64);
    let lambda = (ne.sqrt() + 0.12 + 0.11 / ne.sqrt()) * d;
    kolmogorov_tail(lambda)
}

pub fn kolmogorov_tail(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for k in 1..=100 {
        let term = (-2.0 * (k as f64) * (k as f64) * lambda * lambda).exp();
        sum += sign * term;
        sign = -sign;
        if term < 1e-16 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// CDF of the semicircle law on [-2, 2].
pub fn semicircle_cdf(x: f64) -> f64 {
    if x <= -2.0 {
        0.0
    } else if x >= 2.0 {
        1.0
    } else {
        0.5 + (x * (4.0 - x * x).sqrt() + 4.0 * (x / 2.0).asin()) / (4.0 * std::f64::consts::PI)
    }
}

/// CDF of the quarter-circle law (positive half of the rescaled spectrum).
pub fn quarter_circle_cdf(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x >= 2.0 {
        1.0
    } else {
        (x * (4.0 - x * x).sqrt() + 4.0 * (x / 2.0).asin()) / (2.0 * std::f64::consts::PI)
    }
}

/// Rayleigh CDF 1 - exp(-x^2/2).
pub fn rayleigh_cdf(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        1.0 - (-0.5 * x * x).exp()
    }
}

/// Semicircle density on [-2, 2].
pub fn rho_sc(x: f64) -> f64 {
    let t = 4.0 - x * x;
    if t <= 0.0 {
        0.0
    } else {
        t.sqrt() / (2.0 * std::f64::consts::PI)
    }
}

// 20-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; mirror for the rest).
const GL20_X: [f64; 10] = [
    0.0765265211334973,
    0.2277858511416451,
    0.3737060887154195,
    0.5108670019508271,
    0.6360536807265150,
    0.7463319064601508,
    0.8391169718222188,
    0.9122344282513259,
    0.9639719272779138,
    0.9931285991850949,
];
const GL20_W: [f64; 10] = [
    0.1527533871307258,
    0.1491729864726037,
    0.1420961093183820,
    0.1316886384491766,
    0.1181945319615184,
    0.1019301198172404,
    0.0832767415767048,
    0.0626720483341091,
    0.0406014298003869,
    0.0176140071391521,
];

/// Panel Gauss-Legendre quadrature: 20 nodes per panel.
pub fn integrate_panels<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        let half = 0.5 * h;
        for k in 0..10 {
            total += GL20_W[k] * (f(mid + half * GL20_X[k]) + f(mid - half * GL20_X[k]));
        }
    }
    total * (b - a) / (2.0 * panels as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_interval_brackets_rate() {
        let w = wilson_interval(190, 200);
        assert!(w.low < 0.95 && 0.95 < w.high);
        assert!((w.rate - 0.95).abs() < 1e-12);
    }

    #[test]
    fn ks_uniform_on_uniform_grid_is_small() {
        let mut xs: Vec<f64> = (0..1000).map(|i| (i as f64 + 0.5) / 1000.0).collect();
        let d = ks_statistic(&mut xs, |x| x.clamp(0.0, 1.0));
        assert!(d <= 0.0006, "d = {d}");
    }

    #[test]
    fn semicircle_cdf_endpoints_and_symmetry() {
        assert_eq!(semicircle_cdf(-2.0), 0.0);
        assert_eq!(semicircle_cdf(2.0), 1.0);
        assert!((semicircle_cdf(0.0) - 0.5).abs() < 1e-15);
        assert!((semicircle_cdf(0.7) + semicircle_cdf(-0.7) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn quarter_circle_is_doubled_positive_mass() {
        for x in [0.3, 0.9, 1.5] {
            let q = quarter_circle_cdf(x);
            let s = 2.0 * (semicircle_cdf(x) - 0.5);
            assert!((q - s).abs() < 1e-14);
        }
    }

    #[test]
    fn rayleigh_median() {
        let med = (2.0 * std::f64::consts::LN_2).sqrt();
        assert!((rayleigh_cdf(med) - 0.5).abs() < 1e-14);
        assert!((med - 1.1774100225154747).abs() < 1e-12);
    }

    #[test]
    fn quadrature_integrates_gaussian() {
        let v = integrate_panels(|x| (-x * x / 2.0).exp(), -10.0, 10.0, 20);
        let expect = (2.0 * std::f64::consts::PI).sqrt();
        assert!((v - expect).abs() < 1e-12);
    }

    #[test]
    fn two_sample_ks_identical_is_zero() {
        let mut a: Vec<f64> = (0..100).map(|i| i as f64).collect();
        let mut b = a.clone();
        assert_eq!(ks_two_sample(&mut a, &mut b), 0.0);
    }
}
