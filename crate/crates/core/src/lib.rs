//! Numerics laboratory for random tournament matrices and the anti-symmetric
//! Hermitian ensemble: spectral kernels, seeded samplers, the secular
//! equation of the rank-one perturbed model, interlacing experiments,
//! Gaussian-model correlation kernels, anti-symmetric Dyson Brownian motion,
//! the eigenvector moment flow, and spectral statistics.

pub mod analysis;
pub mod dbm;
pub mod ensembles;
pub mod error;
pub mod gaussian_model;
pub mod interlacing;
pub mod linalg;
pub mod matrix;
pub mod moment_flow;
pub mod rng;
pub mod secular;
pub mod stats;

pub use error::{AnalysisError, FlowError, LinalgError, MatrixError, SdeError, SecularError};
pub use matrix::{CMatrix, HermitianMatrix, RMatrix, SkewMatrix, TournamentMatrix};
pub use rng::{Rng, Seed};

/// Schema version embedded in every machine-readable report.
pub const REPORT_VERSION: u32 = 1;
