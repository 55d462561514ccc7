//! Motivic and topological zeta functions from resolution data.

pub mod motivic;
pub mod resolution;
pub mod topological;

pub use motivic::{
    motivic_series, motivic_zeta, reconstruct_motivic, top_from_motivic, BivariateRational, MotivicTerm,
    MotivicZetaExpr, PrimeFit, Reconstruction, TopValue,
};
pub use resolution::{numerical_data, BlowupStep, BlowupTower, Divisor, ResolutionData, Stratum, ValidationReport};
pub use topological::{pole_bound, pole_bound_check, poles, topological_zeta, CheckStatus, PoleBoundMode, PoleBoundReport};
