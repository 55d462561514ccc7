pub mod matrix;
pub mod oracle;
pub mod smith;
pub mod solve;
pub mod triangular;

pub use matrix::{rank_mod_p, SeriesMatrix};
pub use smith::{cokernel_exponents, smith, SmithDecomposition};
pub use solve::{solve_affine, AffineSolutionSet, Infeasibility, SolveOutcome};
pub use triangular::{triangularize, TriangularForm};
