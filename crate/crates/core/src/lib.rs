//! Singularity-free bidiagonal decompositions of Vandermonde-type matrices.

pub mod bd;
pub mod error;
pub mod experiment;
pub mod families;
pub mod io;
pub mod matrix;
pub mod oracle;
pub mod scalar;

pub use bd::{
    bd_expand, fix_bottom_right, node_difference_c, reconstruct, sbd_expand, split_bd, v_matrix,
    BidiagonalFactor, FactorSequence, OrdinaryBD, Orientation, SingularityFreeBD,
};
pub use error::{Result, SbdError};
pub use families::{
    basis_eval, basis_row, dense_matrix, q_binomial, q_integer, sbd, sbd_rbv_scaled, split_params, weight_sum, Domain,
    Family, NodeConfig, SplitParams,
};
pub use matrix::Matrix;
pub use oracle::{
    compare_sbd, determinant, exact_rank, minor, neville_bd, neville_elimination, tn_sample_check, NegativeMinor,
    NevilleElimination, Part, TnReport, VerificationReport, WorstEntry,
};
pub use scalar::{BigFloat, Counted, Rational, RelativeError, Scalar, ScalarKind};

pub type SbdExact = SingularityFreeBD<Rational>;
pub type SbdF64 = SingularityFreeBD<f64>;
pub type SbdF32 = SingularityFreeBD<f32>;
pub type ConfigExact = NodeConfig<Rational>;
pub type ConfigF64 = NodeConfig<f64>;
pub type MatrixExact = Matrix<Rational>;
pub type MatrixF64 = Matrix<f64>;
