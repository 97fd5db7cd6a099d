//! Certified arithmetic for the pinching constants of self-shrinkers and
//! λ-hypersurfaces: exact and interval numerics, the coefficient chain,
//! randomized identity suites, model-surface checks and a reporting CLI.

pub mod certify_optimize;
pub mod cli;
pub mod exact_arith;
pub mod exec;
pub mod model_geometry;
pub mod pinch_coefficients;
pub mod report;
pub mod spectral_identities;
