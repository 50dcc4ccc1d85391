//! Seeded samplers for the random matrix ensembles under study, plus the
//! tournament -> skew transform.
//!
//! Everything is a pure function of (n, seed): identical seeds give
//! bit-identical matrices, and trials parallelize over derived substreams.

use num_complex::Complex64;

use crate::error::MatrixError;
use crate::matrix::{HermitianMatrix, SkewMatrix, TournamentMatrix};
use crate::rng::{Rng, Seed};

/// Uniform tournament: each upper-triangle outcome is an independent fair bit.
pub fn sample_tournament(n: usize, seed: Seed) -> Result<TournamentMatrix, MatrixError> {
    if n == 0 {
        return Err(MatrixError::EmptyMatrix);
    }
    let mut rng = seed.rng();
    let bits: Vec<u8> = (0..n * (n - 1) / 2).map(|_| rng.next_bit()).collect();
    TournamentMatrix::from_upper_bits(n, bits)
}

/// W with W_{ij} = 2 D_{ij} - 1 for i != j, so that M = iW = 2iD - i(J - I).
pub fn tournament_to_skew(d: &TournamentMatrix) -> SkewMatrix {
    d.to_skew()
}

/// Uniform anti-symmetric matrix with +/-1 entries. Identical in law (and,
/// with the same seed, identical bit for bit) to sampling a tournament and
/// mapping it through [`tournament_to_skew`]: the two ensembles are in
/// bijection.
pub fn sample_skew_pm1(n: usize, seed: Seed) -> Result<SkewMatrix, MatrixError> {
    Ok(tournament_to_skew(&sample_tournament(n, seed)?))
}

/// Gaussian anti-symmetric matrix: upper-triangle entries i.i.d. N(0, scale^2).
pub fn sample_skew_gaussian(n: usize, seed: Seed, scale: f64) -> Result<SkewMatrix, MatrixError> {
    if n == 0 {
        return Err(MatrixError::EmptyMatrix);
    }
    if !(scale > 0.0) {
        return Err(MatrixError::Parse(format!("scale must be positive, got {scale}")));
    }
    let mut rng = seed.rng();
    let mut w = SkewMatrix::zeros(n)?;
    // row-major over the upper triangle (i < j); the lower entry is -g_ij
    for i in 0..n {
        for j in i + 1..n {
            let g = scale * rng.next_gaussian();
            w.set_lower(j, i, -g);
        }
    }
    Ok(w)
}

/// GUE matrix with E|H_ij|^2 = 1 off the diagonal (real and imaginary parts
/// independent N(0, 1/2)) and real N(0, 1) diagonal. This matches the
/// variance-1 convention of the +/-1 model, so the rank-one strength in the
/// perturbed ensemble is the bare dimension N.
pub fn sample_gue(n: usize, seed: Seed) -> Result<HermitianMatrix, MatrixError> {
    if n == 0 {
        return Err(MatrixError::EmptyMatrix);
    }
    let mut rng = seed.rng();
    let mut h = HermitianMatrix::zeros(n)?;
    let s = 0.5f64.sqrt();
    for i in 0..n {
        for j in i..n {
            let v = if i == j {
                Complex64::new(rng.next_gaussian(), 0.0)
            } else {
                Complex64::new(s * rng.next_gaussian(), s * rng.next_gaussian())
            };
            h.set_upper(i, j, v)?;
        }
    }
    Ok(h)
}

/// Uniform point on the real unit sphere via a normalized Gaussian vector.
pub fn sample_unit_vector(n: usize, rng: &mut Rng) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.next_gaussian()).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tournament_dimension_one_is_zero() {
        let t = sample_tournament(1, Seed::new(0, 0)).unwrap();
        assert_eq!(t.dim(), 1);
        assert_eq!(t.get(0, 0), 0);
    }

    #[test]
    fn tournament_zero_dim_rejected() {
        assert!(sample_tournament(0, Seed::new(0, 0)).is_err());
    }

    #[test]
    fn complement_identity_holds() {
        // D + D^T = J - I entrywise, forced by the packed storage.
        let t = sample_tournament(9, Seed::new(4, 1)).unwrap();
        for i in 0..9 {
            for j in 0..9 {
                let expect = if i == j { 0 } else { 1 };
                assert_eq!(t.get(i, j) + t.get(j, i), expect);
            }
        }
    }

    #[test]
    fn bit_mean_is_fair() {
        // Monte Carlo oracle: 1e4 trials of n=5 tournaments, 10 bits each.
        let seed = Seed::new(0, 0);
        let mut ones = 0u64;
        let mut total = 0u64;
        for t in 0..10_000u64 {
            let mut rng = seed.rng_for_trial(t);
            for _ in 0..10 {
                ones += u64::from(rng.next_bit());
                total += 1;
            }
        }
        let mean = ones as f64 / total as f64;
        assert!((0.47..=0.53).contains(&mean), "bit mean {mean}");
    }

    #[test]
    fn pm1_entries_and_trace_identity() {
        let n = 17;
        let w = sample_skew_pm1(n, Seed::new(2, 3)).unwrap();
        for i in 1..n {
            for j in 0..i {
                assert!(w.get(i, j).abs() == 1.0);
            }
        }
        assert_eq!(w.trace_of_square(), -(n as f64) * (n as f64 - 1.0));
    }

    #[test]
    fn pm1_matches_tournament_composition() {
        let seed = Seed::new(11, 5);
        let a = sample_skew_pm1(8, seed).unwrap();
        let b = tournament_to_skew(&sample_tournament(8, seed).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn determinism_bit_identical() {
        let a = sample_skew_gaussian(12, Seed::new(1, 2), 0.7).unwrap();
        let b = sample_skew_gaussian(12, Seed::new(1, 2), 0.7).unwrap();
        for (x, y) in a.lower().iter().zip(b.lower().iter()) {
            assert_eq!(x.to_bits(), y.to_bits());
        }
    }

    #[test]
    fn gaussian_entry_variance() {
        // 1e5 draws, sample variance within 3 s.e. of scale^2.
        let scale = 1.3;
        let n_draws = 100_000usize;
        let mut rng = Seed::new(8, 8).rng();
        let mut sq = 0.0;
        for _ in 0..n_draws {
            let g = scale * rng.next_gaussian();
            sq += g * g;
        }
        let var = sq / n_draws as f64;
        let se = (2.0 / (n_draws as f64 - 1.0)).sqrt() * scale * scale;
        assert!(
            (var - scale * scale).abs() < 3.0 * se,
            "var {var} vs {}",
            scale * scale
        );
    }

    #[test]
    fn gaussian_rejects_bad_scale() {
        assert!(sample_skew_gaussian(4, Seed::new(0, 0), 0.0).is_err());
        assert!(sample_skew_gaussian(4, Seed::new(0, 0), -1.0).is_err());
    }

    #[test]
    fn gue_single_entry_is_real_gaussian() {
        let h = sample_gue(1, Seed::new(3, 3)).unwrap();
        assert_eq!(h.get(0, 0).im, 0.0);
    }

    #[test]
    fn gue_hermitian_by_construction() {
        let h = sample_gue(6, Seed::new(7, 7)).unwrap();
        for i in 0..6 {
            assert_eq!(h.get(i, i).im, 0.0);
            for j in 0..6 {
                assert_eq!(h.get(i, j), h.get(j, i).conj());
            }
        }
    }

    #[test]
    fn gue_trace_second_moment() {
        // E tr(G^2) = n^2 for this convention: n diagonal variance-1 entries
        // plus n(n-1) off-diagonal E|H_ij|^2 = 1 terms. MC over 1e4 trials at
        // n=8 within 3 s.e.
        let n = 8usize;
        let seed = Seed::new(10, 0);
        let trials = 10_000u64;
        let mut vals = Vec::with_capacity(trials as usize);
        for t in 0..trials {
            let mut rng = seed.rng_for_trial(t);
            // tr G^2 = sum_i g_ii^2 + 2 sum_{i<j} |g_ij|^2; sample directly
            let mut acc = 0.0;
            for _ in 0..n {
                let d = rng.next_gaussian();
                acc += d * d;
            }
            for _ in 0..n * (n - 1) / 2 {
                let re = 0.5f64.sqrt() * rng.next_gaussian();
                let im = 0.5f64.sqrt() * rng.next_gaussian();
                acc += 2.0 * (re * re + im * im);
            }
            vals.push(acc / (n * n) as f64);
        }
        let mean: f64 = vals.iter().sum::<f64>() / trials as f64;
        let sd = (vals.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (trials as f64 - 1.0)).sqrt();
        let se = sd / (trials as f64).sqrt();
        assert!((mean - 1.0).abs() < 3.0 * se, "mean {mean}, se {se}");
    }

    #[test]
    fn unit_vector_is_unit() {
        let mut rng = Seed::new(5, 1).rng();
        let v = sample_unit_vector(40, &mut rng);
        let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!((norm - 1.0).abs() < 1e-12);
    }
}
