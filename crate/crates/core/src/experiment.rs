//! The 24×24 q-Bernstein-Vandermonde example with repeated nodes: its
//! decomposition, its exact rank and a high-precision copy of the matrix.

use crate::bd::{reconstruct, sbd_expand, SingularityFreeBD};
use crate::error::Result;
use crate::families::{dense_matrix, sbd, Family, NodeConfig};
use crate::matrix::Matrix;
use crate::oracle::exact_rank;
use crate::scalar::{parse_rational, BigFloat, Rational, Scalar};

pub const FIG1_Q: &str = "1/10";

pub const FIG1_NODES: [&str; 24] = [
    "0.1", "0.2", "0.2", "0.2", "0.3", "0.31", "0.32", "0.33", "0.34", "0.35", "0.36", "0.37", "0.38",
    "0.39", "0.5", "0.6", "0.7", "0.7", "0.7", "0.7", "0.7", "0.7", "0.8", "0.9",
];

pub fn fig1_config() -> NodeConfig<Rational> {
    let q = parse_rational(FIG1_Q).expect("literal");
    let nodes = FIG1_NODES.iter().map(|s| parse_rational(s).expect("literal")).collect();
    NodeConfig::new(Family::QBernstein { q }, nodes, true).expect("sorted nodes in [0,1)")
}

pub struct Fig1 {
    pub config: NodeConfig<Rational>,
    pub sbd: SingularityFreeBD<Rational>,
    pub rank: usize,
    /// The matrix rebuilt from the decomposition in 212-bit arithmetic.
    pub matrix: Matrix<BigFloat>,
}

pub fn run_fig1() -> Result<Fig1> {
    let config = fig1_config();
    let sbd = sbd(&config)?;
    let rank = exact_rank(&dense_matrix(&config)?);
    let matrix = reconstruct(&sbd_expand(&sbd.convert::<BigFloat>()?));
    Ok(Fig1 {
        config,
        sbd,
        rank,
        matrix,
    })
}

/// Row-major CSV, one matrix row per line.
pub fn matrix_csv<T: Scalar>(m: &Matrix<T>) -> String {
    let mut out = String::new();
    for row in m.to_canonical_rows() {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
