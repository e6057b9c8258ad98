//! Vandermonde-type matrix families: dense entries and direct
//! singularity-free decompositions.
//!
//! Each family supplies the entries `s_ij` (`i ≥ j`) of the lower factors
//! and diagonal, and the entries `m_ij` (`i < j`) of the upper factors. The
//! decomposition is then assembled as `B = [s | m]` and
//! `c_ij = x_{i−1} − x_{i−j}`. Only differences of input data (`x_i − x_j`,
//! `1 − x_i`) are ever subtracted.

mod cauchy;
mod h_bernstein;
mod lupas;
mod q_bernstein;
pub mod qcalc;
mod rational_bernstein;
mod vandermonde;

use std::fmt;

use crate::bd::{node_difference_c, sbd_expand, FactorSequence, SingularityFreeBD};
use crate::error::{Result, SbdError};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

pub use qcalc::{q_binomial, q_integer};
pub use rational_bernstein::weight_sum;

#[derive(Debug, Clone, PartialEq)]
pub enum Family<T> {
    Vandermonde,
    QBernstein { q: T },
    HBernstein { h: T },
    Lupas { q: T },
    RationalBernstein { weights: Vec<T> },
    /// One pole at `−d` of multiplicity `multiplicity`.
    CauchyVandermonde { d: T, multiplicity: usize },
}

impl<T> Family<T> {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Vandermonde => "vandermonde",
            Family::QBernstein { .. } => "q_bernstein_vandermonde",
            Family::HBernstein { .. } => "h_bernstein_vandermonde",
            Family::Lupas { .. } => "lupas",
            Family::RationalBernstein { .. } => "rational_bernstein_vandermonde",
            Family::CauchyVandermonde { .. } => "cauchy_vandermonde_1pole",
        }
    }

    /// Interval on which sorted nodes give a totally nonnegative matrix.
    pub fn domain(&self) -> Domain {
        match self {
            Family::Vandermonde => Domain::All,
            Family::QBernstein { .. } | Family::HBernstein { .. } | Family::Lupas { .. } => {
                Domain::UnitHalfOpen
            }
            Family::RationalBernstein { .. } => Domain::UnitOpen,
            Family::CauchyVandermonde { .. } => Domain::NonNegative,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    All,
    /// `[0, 1)`
    UnitHalfOpen,
    /// `(0, 1)`
    UnitOpen,
    /// `[0, ∞)`
    NonNegative,
}

impl Domain {
    fn contains<T: Scalar>(self, x: &T) -> bool {
        let zero = T::zero();
        let one = T::one();
        match self {
            Domain::All => true,
            Domain::UnitHalfOpen => *x >= zero && *x < one,
            Domain::UnitOpen => *x > zero && *x < one,
            Domain::NonNegative => *x >= zero,
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Domain::All => "(-inf, inf)",
            Domain::UnitHalfOpen => "[0,1)",
            Domain::UnitOpen => "(0,1)",
            Domain::NonNegative => "[0,inf)",
        })
    }
}

/// A family, its nodes `x₁…xₙ` and whether total-nonnegativity domain rules
/// are enforced.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeConfig<T> {
    pub family: Family<T>,
    pub nodes: Vec<T>,
    pub strict: bool,
}

impl<T: Scalar> NodeConfig<T> {
    /// Builds and validates a configuration.
    pub fn new(family: Family<T>, nodes: Vec<T>, strict: bool) -> Result<Self> {
        let config = NodeConfig {
            family,
            nodes,
            strict,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn n(&self) -> usize {
        self.nodes.len()
    }

    /// Structural checks always; domain checks in strict mode.
    ///
    /// Strict mode requires nondecreasing nodes (ties allowed) inside the
    /// family's domain, `q ∈ (0,1]`, `h ≥ 0`, positive weights and `d > 0`.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        if n == 0 {
            return Err(SbdError::DimensionMismatch("at least one node is required".into()));
        }
        match &self.family {
            Family::RationalBernstein { weights } if weights.len() != n => {
                return Err(invalid("weights", format!("{} values", weights.len()), format!("expected {n}")));
            }
            Family::CauchyVandermonde { multiplicity, .. } if *multiplicity == 0 || *multiplicity > n => {
                return Err(invalid("s", multiplicity.to_string(), format!("must lie in 1..={n}")));
            }
            _ => {}
        }
        if !self.strict {
            return Ok(());
        }
        let zero = T::zero();
        match &self.family {
            Family::QBernstein { q } | Family::Lupas { q } if !(*q > zero && *q <= T::one()) => {
                return Err(invalid("q", q.to_canonical_string(), "must lie in (0,1]".into()));
            }
            Family::HBernstein { h } if *h < zero => {
                return Err(invalid("h", h.to_canonical_string(), "must be >= 0".into()));
            }
            Family::RationalBernstein { weights } => {
                if let Some(w) = weights.iter().find(|w| **w <= zero) {
                    return Err(invalid("weights", w.to_canonical_string(), "must be positive".into()));
                }
            }
            Family::CauchyVandermonde { d, .. } if *d <= zero => {
                return Err(invalid("d", d.to_canonical_string(), "must be positive".into()));
            }
            _ => {}
        }
        let domain = self.family.domain();
        for (idx, x) in self.nodes.iter().enumerate() {
            if !domain.contains(x) {
                return Err(SbdError::NodeOutsideDomain {
                    index: idx + 1,
                    value: x.to_canonical_string(),
                    domain: domain.to_string(),
                });
            }
            if idx > 0 && *x < self.nodes[idx - 1] {
                return Err(SbdError::UnsortedNodes { index: idx + 1 });
            }
        }
        Ok(())
    }

    /// Re-expresses the configuration in another scalar kind (exactly for
    /// exact targets, rounded to nearest for float targets).
    pub fn convert<U: Scalar>(&self) -> Result<NodeConfig<U>> {
        let conv = |v: &T| -> Result<U> {
            v.to_rational()
                .map(|r| U::from_rational(&r))
                .ok_or_else(|| SbdError::Document(format!("non-finite value {v:?}")))
        };
        let family = match &self.family {
            Family::Vandermonde => Family::Vandermonde,
            Family::QBernstein { q } => Family::QBernstein { q: conv(q)? },
            Family::HBernstein { h } => Family::HBernstein { h: conv(h)? },
            Family::Lupas { q } => Family::Lupas { q: conv(q)? },
            Family::RationalBernstein { weights } => Family::RationalBernstein {
                weights: weights.iter().map(conv).collect::<Result<_>>()?,
            },
            Family::CauchyVandermonde { d, multiplicity } => Family::CauchyVandermonde {
                d: conv(d)?,
                multiplicity: *multiplicity,
            },
        };
        Ok(NodeConfig {
            family,
            nodes: self.nodes.iter().map(conv).collect::<Result<_>>()?,
            strict: self.strict,
        })
    }
}

fn invalid(name: &str, value: String, reason: String) -> SbdError {
    SbdError::InvalidParameter {
        name: name.to_string(),
        value,
        reason,
    }
}

/// `num / den`, failing with a named singularity when `den` is zero.
pub(crate) fn checked_div<T: Scalar>(num: T, den: T, what: impl FnOnce() -> String) -> Result<T> {
    num.try_div(den).ok_or_else(|| SbdError::singular(what()))
}

/// Parameters of a Vandermonde-type decomposition with the `v_ij` factors
/// removed: `s_ij` on and below the diagonal, `m_ij` above it.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitParams<T> {
    /// `s_ij` for `i ≥ j`; zero above the diagonal.
    pub s_lower: Matrix<T>,
    /// `m_ij` for `i < j`; zero on and below the diagonal.
    pub m_upper: Matrix<T>,
}

impl<T: Scalar> SplitParams<T> {
    pub(crate) fn zeros(n: usize) -> Self {
        SplitParams {
            s_lower: Matrix::zeros(n, n),
            m_upper: Matrix::zeros(n, n),
        }
    }

    /// Sets `s_ij` (1-based, `i ≥ j`).
    pub(crate) fn set_s(&mut self, i: usize, j: usize, v: T) {
        debug_assert!(i >= j);
        self.s_lower[(i - 1, j - 1)] = v;
    }

    /// Sets `m_ij` (1-based, `i < j`).
    pub(crate) fn set_m(&mut self, i: usize, j: usize, v: T) {
        debug_assert!(i < j);
        self.m_upper[(i - 1, j - 1)] = v;
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        let n = self.s_lower.rows();
        (0..n).flat_map(move |i| {
            (0..n).map(move |j| {
                if i >= j {
                    &self.s_lower[(i, j)]
                } else {
                    &self.m_upper[(i, j)]
                }
            })
        })
    }
}

/// Column generator `f_j(x)` of the family's dense matrix, `1 ≤ j ≤ n`.
pub fn basis_eval<T: Scalar>(config: &NodeConfig<T>, j: usize, x: &T) -> Result<T> {
    let n = config.n();
    if j == 0 || j > n {
        return Err(SbdError::DimensionMismatch(format!("column {j} of an order-{n} matrix")));
    }
    match &config.family {
        Family::Vandermonde => Ok(vandermonde::basis(j, x)),
        Family::QBernstein { q } => q_bernstein::basis(n, q, j, x),
        Family::HBernstein { h } => h_bernstein::basis(n, h, j, x),
        Family::Lupas { q } => lupas::basis(n, q, j, x),
        Family::RationalBernstein { weights } => rational_bernstein::basis(weights, j, x),
        Family::CauchyVandermonde { d, multiplicity } => cauchy::basis(*multiplicity, d, j, x),
    }
}

/// `f_1(x), …, f_n(x)`.
pub fn basis_row<T: Scalar>(config: &NodeConfig<T>, x: &T) -> Result<Vec<T>> {
    let n = config.n();
    match &config.family {
        Family::QBernstein { q } => q_bernstein::basis_row(n, q, x),
        Family::HBernstein { h } => h_bernstein::basis_row(n, h, x),
        Family::Lupas { q } => lupas::basis_row(n, q, x),
        Family::RationalBernstein { weights } => rational_bernstein::basis_row(weights, x),
        Family::Vandermonde | Family::CauchyVandermonde { .. } => {
            (1..=n).map(|j| basis_eval(config, j, x)).collect()
        }
    }
}

/// Dense matrix `a_ij = f_j(x_i)`.
pub fn dense_matrix<T: Scalar>(config: &NodeConfig<T>) -> Result<Matrix<T>> {
    let n = config.n();
    if n == 0 {
        return Err(SbdError::DimensionMismatch("at least one node is required".into()));
    }
    let rows = config.nodes.iter().map(|x| basis_row(config, x)).collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}

/// The family's closed-form `s_ij` and upper `m_ij`, in `O(n²)` operations.
pub fn split_params<T: Scalar>(config: &NodeConfig<T>) -> Result<SplitParams<T>> {
    config.validate()?;
    let x = &config.nodes;
    match &config.family {
        Family::Vandermonde => Ok(vandermonde::split(x)),
        Family::QBernstein { q } => q_bernstein::split(x, q),
        Family::HBernstein { h } => h_bernstein::split(x, h),
        Family::Lupas { q } => lupas::split(x, q),
        Family::RationalBernstein { weights } => rational_bernstein::split(x, weights),
        Family::CauchyVandermonde { d, multiplicity } => cauchy::split(x, d, *multiplicity),
    }
}

/// Singularity-free bidiagonal decomposition assembled from
/// [`split_params`].
pub fn sbd<T: Scalar>(config: &NodeConfig<T>) -> Result<SingularityFreeBD<T>> {
    let params = split_params(config)?;
    let n = config.n();
    let mut b = params.s_lower;
    for i in 0..n {
        for j in i + 1..n {
            b[(i, j)] = params.m_upper[(i, j)].clone();
        }
    }
    SingularityFreeBD::new(b, node_difference_c(&config.nodes))
}

/// Alternative decomposition of a rational Bernstein-Vandermonde matrix
/// `R = W₁⁻¹ A W₂`, where `A` is the Bernstein-Vandermonde matrix (`q = 1`),
/// `W₁ = diag(W(x_i))` and `W₂ = diag(w_i)`: the first lower factor absorbs
/// `W₁⁻¹` and the first upper factor absorbs `W₂`.
///
/// The result has non-unit diagonal entries above the band of `L₁`, so it
/// is only available as explicit factors.
pub fn sbd_rbv_scaled<T: Scalar>(config: &NodeConfig<T>) -> Result<FactorSequence<T>> {
    let Family::RationalBernstein { weights } = &config.family else {
        return Err(SbdError::InvalidParameter {
            name: "family".into(),
            value: config.family.name().into(),
            reason: "the scaled variant exists only for rational_bernstein_vandermonde".into(),
        });
    };
    config.validate()?;
    let base = NodeConfig {
        family: Family::QBernstein { q: T::one() },
        nodes: config.nodes.clone(),
        strict: config.strict,
    };
    let fs = sbd_expand(&sbd(&base)?);
    let inv_w = config
        .nodes
        .iter()
        .enumerate()
        .map(|(i, x)| checked_div(T::one(), weight_sum(weights, x), || format!("W(x_{})", i + 1)))
        .collect::<Result<Vec<T>>>()?;
    let n = config.n();
    if n == 1 {
        let d = fs.diagonal()[0].clone() * inv_w[0].clone() * weights[0].clone();
        return FactorSequence::new(Vec::new(), vec![d], Vec::new());
    }
    let mut lower: Vec<_> = (1..n).map(|k| fs.lower(k).clone()).collect();
    let mut upper: Vec<_> = (1..n).map(|k| fs.upper(k).clone()).collect();
    let l1 = &mut lower[0];
    for r in 0..n {
        l1.diag[r] = l1.diag[r].clone() * inv_w[r].clone();
        if r > 0 {
            l1.offdiag[r - 1] = l1.offdiag[r - 1].clone() * inv_w[r].clone();
        }
    }
    let u1 = &mut upper[0];
    for c in 0..n {
        u1.diag[c] = u1.diag[c].clone() * weights[c].clone();
        if c > 0 {
            u1.offdiag[c - 1] = u1.offdiag[c - 1].clone() * weights[c].clone();
        }
    }
    FactorSequence::new(lower, fs.diagonal().to_vec(), upper)
}

#[cfg(test)]
mod tests;
