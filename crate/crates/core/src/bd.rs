//! Storage schemes for bidiagonal decompositions and the conversions
//! between storage, explicit factors and dense matrices.
//!
//! Two storage schemes are supported:
//!
//! * [`OrdinaryBD`]: the classical decomposition
//!   `A = L⁽¹⁾⋯L⁽ⁿ⁻¹⁾ D U⁽ⁿ⁻¹⁾⋯U⁽¹⁾` with unit-diagonal bidiagonal
//!   factors, packed into one `n×n` matrix `M`.
//! * [`SingularityFreeBD`]: `A = L₁⋯Lₙ₋₁ D Uₙ₋₁⋯U₁` where the bidiagonal
//!   factors may carry arbitrary diagonals. Offdiagonals and `D` live in an
//!   `n×n` matrix `B` (same layout as `M`), factor diagonals in an
//!   `(n+1)×(n+1)` matrix `C`.
//!
//! All accessors named after matrix entries (`m`, `b`, `c`) are 1-based.

use crate::error::{Result, SbdError};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Lower,
    Upper,
    Diagonal,
}

/// A lower or upper bidiagonal (or diagonal) `n×n` matrix.
///
/// For a lower factor `offdiag[t]` is entry `(t+1, t)` (0-based); for an
/// upper factor it is entry `(t, t+1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BidiagonalFactor<T> {
    pub orientation: Orientation,
    pub diag: Vec<T>,
    pub offdiag: Vec<T>,
    /// Band index `k` of `L_k`/`U_k`, when the factor belongs to a
    /// decomposition.
    pub band: Option<usize>,
}

impl<T: Scalar> BidiagonalFactor<T> {
    pub fn identity(n: usize, orientation: Orientation, band: Option<usize>) -> Self {
        let off = if orientation == Orientation::Diagonal {
            Vec::new()
        } else {
            vec![T::zero(); n.saturating_sub(1)]
        };
        BidiagonalFactor {
            orientation,
            diag: vec![T::one(); n],
            offdiag: off,
            band,
        }
    }

    pub fn diagonal(diag: Vec<T>) -> Self {
        BidiagonalFactor {
            orientation: Orientation::Diagonal,
            diag,
            offdiag: Vec::new(),
            band: None,
        }
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    /// Checks the shape and, for banded factors, that offdiagonal entries
    /// outside the trailing band are zero.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        let expected_off = match self.orientation {
            Orientation::Diagonal => 0,
            _ => n.saturating_sub(1),
        };
        if self.offdiag.len() != expected_off {
            return Err(SbdError::DimensionMismatch(format!(
                "{:?} factor of order {n} has {} offdiagonal entries",
                self.orientation,
                self.offdiag.len()
            )));
        }
        if let Some(k) = self.band {
            if k == 0 || k >= n {
                return Err(SbdError::DimensionMismatch(format!(
                    "band index {k} out of range for order {n}"
                )));
            }
            // 1-based rule: entry i (i < n-k) must vanish.
            if let Some(t) = (0..n - k - 1).find(|&t| !self.offdiag[t].is_zero()) {
                return Err(SbdError::NotRepresentable(format!(
                    "band {k} factor has a nonzero offdiagonal at position {}",
                    t + 1
                )));
            }
        }
        Ok(())
    }

    pub fn to_dense(&self) -> Matrix<T> {
        let n = self.n();
        let mut out = Matrix::zeros(n, n);
        for (r, d) in self.diag.iter().enumerate() {
            out[(r, r)] = d.clone();
        }
        for (t, v) in self.offdiag.iter().enumerate() {
            match self.orientation {
                Orientation::Lower => out[(t + 1, t)] = v.clone(),
                Orientation::Upper => out[(t, t + 1)] = v.clone(),
                Orientation::Diagonal => {}
            }
        }
        out
    }

    /// `acc · self`, touching each entry of `acc` at most twice.
    fn right_multiply(&self, acc: &Matrix<T>) -> Matrix<T> {
        let n = self.n();
        Matrix::from_fn(acc.rows(), n, |r, c| {
            let main = acc[(r, c)].clone() * self.diag[c].clone();
            match self.orientation {
                Orientation::Lower if c + 1 < n => {
                    main + acc[(r, c + 1)].clone() * self.offdiag[c].clone()
                }
                Orientation::Upper if c > 0 => {
                    main + acc[(r, c - 1)].clone() * self.offdiag[c - 1].clone()
                }
                _ => main,
            }
        })
    }
}

/// Explicit factors in product order `L₁, …, Lₙ₋₁, D, Uₙ₋₁, …, U₁`.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorSequence<T> {
    n: usize,
    factors: Vec<BidiagonalFactor<T>>,
}

impl<T: Scalar> FactorSequence<T> {
    /// Assembles a sequence from `lower[k-1] = L_k`, the diagonal of `D`
    /// and `upper[k-1] = U_k`.
    pub fn new(
        lower: Vec<BidiagonalFactor<T>>,
        d: Vec<T>,
        upper: Vec<BidiagonalFactor<T>>,
    ) -> Result<Self> {
        let n = d.len();
        if n == 0 {
            return Err(SbdError::DimensionMismatch("empty decomposition".into()));
        }
        if lower.len() != n - 1 || upper.len() != n - 1 {
            return Err(SbdError::DimensionMismatch(format!(
                "order {n} needs {} lower and upper factors, got {} and {}",
                n - 1,
                lower.len(),
                upper.len()
            )));
        }
        let mut factors = lower;
        factors.push(BidiagonalFactor::diagonal(d));
        factors.extend(upper.into_iter().rev());
        Self::from_product_order(factors)
    }

    /// Accepts factors already in product order, validating the layout.
    pub fn from_product_order(factors: Vec<BidiagonalFactor<T>>) -> Result<Self> {
        let n = factors.len().div_ceil(2);
        if n == 0 || factors.len() != 2 * n - 1 {
            return Err(SbdError::DimensionMismatch(format!(
                "{} factors do not form L..L D U..U",
                factors.len()
            )));
        }
        for (idx, f) in factors.iter().enumerate() {
            let expected = match idx.cmp(&(n - 1)) {
                std::cmp::Ordering::Less => Orientation::Lower,
                std::cmp::Ordering::Equal => Orientation::Diagonal,
                std::cmp::Ordering::Greater => Orientation::Upper,
            };
            if f.orientation != expected || f.n() != n {
                return Err(SbdError::DimensionMismatch(format!(
                    "factor {} should be {expected:?} of order {n}",
                    idx + 1
                )));
            }
            f.validate()?;
        }
        Ok(FactorSequence { n, factors })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn factors(&self) -> &[BidiagonalFactor<T>] {
        &self.factors
    }

    /// `L_k`, `1 ≤ k < n`.
    pub fn lower(&self, k: usize) -> &BidiagonalFactor<T> {
        &self.factors[k - 1]
    }

    /// `U_k`, `1 ≤ k < n`.
    pub fn upper(&self, k: usize) -> &BidiagonalFactor<T> {
        &self.factors[2 * self.n - 1 - k]
    }

    pub fn diagonal(&self) -> &[T] {
        &self.factors[self.n - 1].diag
    }

    fn lower_mut(&mut self, k: usize) -> &mut BidiagonalFactor<T> {
        &mut self.factors[k - 1]
    }

    fn upper_mut(&mut self, k: usize) -> &mut BidiagonalFactor<T> {
        let n = self.n;
        &mut self.factors[2 * n - 1 - k]
    }

    pub fn map<U: Scalar>(&self, mut f: impl FnMut(&T) -> U) -> FactorSequence<U> {
        FactorSequence {
            n: self.n,
            factors: self
                .factors
                .iter()
                .map(|fac| BidiagonalFactor {
                    orientation: fac.orientation,
                    diag: fac.diag.iter().map(&mut f).collect(),
                    offdiag: fac.offdiag.iter().map(&mut f).collect(),
                    band: fac.band,
                })
                .collect(),
        }
    }
}

/// Multiplies the factors left to right into a dense matrix.
pub fn reconstruct<T: Scalar>(fs: &FactorSequence<T>) -> Matrix<T> {
    let mut iter = fs.factors.iter();
    let first = iter.next().expect("factor sequences are nonempty");
    iter.fold(first.to_dense(), |acc, f| f.right_multiply(&acc))
}

/// Ordinary (unit-diagonal) bidiagonal decomposition stored as `M`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrdinaryBD<T> {
    m: Matrix<T>,
}

impl<T: Scalar> OrdinaryBD<T> {
    pub fn new(m: Matrix<T>) -> Result<Self> {
        if !m.is_square() || m.rows() == 0 {
            return Err(SbdError::DimensionMismatch(format!(
                "BD storage must be square and nonempty, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(OrdinaryBD { m })
    }

    pub fn n(&self) -> usize {
        self.m.rows()
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.m
    }

    /// `m_ij`, 1-based.
    pub fn m(&self, i: usize, j: usize) -> &T {
        &self.m[(i - 1, j - 1)]
    }
}

/// Expands `M` into unit-diagonal factors `L⁽ᵏ⁾`, `D`, `U⁽ᵏ⁾`.
///
/// Row `r` of `L⁽ᵏ⁾` carries `m_{r, r-n+k}` below the diagonal for
/// `r = n-k+1, …, n`; `U⁽ᵏ⁾` is the mirror image.
pub fn bd_expand<T: Scalar>(bd: &OrdinaryBD<T>) -> FactorSequence<T> {
    let n = bd.n();
    let lower = (1..n)
        .map(|k| {
            let mut f = BidiagonalFactor::identity(n, Orientation::Lower, Some(k));
            for r in n - k + 1..=n {
                f.offdiag[r - 2] = bd.m(r, r + k - n).clone();
            }
            f
        })
        .collect();
    let upper = (1..n)
        .map(|k| {
            let mut f = BidiagonalFactor::identity(n, Orientation::Upper, Some(k));
            for r in n - k..n {
                f.offdiag[r - 1] = bd.m(r + k + 1 - n, r + 1).clone();
            }
            f
        })
        .collect();
    let d = (1..=n).map(|i| bd.m(i, i).clone()).collect();
    FactorSequence::new(lower, d, upper).expect("layout is consistent by construction")
}

/// Singularity-free bidiagonal decomposition in `(B, C)` storage.
///
/// Unused entries of `C` (its diagonal, `c_{1,n+1}` and `c_{n+1,1}`) are
/// kept equal to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularityFreeBD<T> {
    b: Matrix<T>,
    c: Matrix<T>,
}

impl<T: Scalar> SingularityFreeBD<T> {
    pub fn new(b: Matrix<T>, c: Matrix<T>) -> Result<Self> {
        let n = b.rows();
        if n == 0 || !b.is_square() || c.rows() != n + 1 || c.cols() != n + 1 {
            return Err(SbdError::DimensionMismatch(format!(
                "B must be n×n and C (n+1)×(n+1); got {}x{} and {}x{}",
                b.rows(),
                b.cols(),
                c.rows(),
                c.cols()
            )));
        }
        Ok(SingularityFreeBD { b, c })
    }

    pub fn n(&self) -> usize {
        self.b.rows()
    }

    pub fn b_matrix(&self) -> &Matrix<T> {
        &self.b
    }

    pub fn c_matrix(&self) -> &Matrix<T> {
        &self.c
    }

    /// `b_ij`, 1-based.
    pub fn b(&self, i: usize, j: usize) -> &T {
        &self.b[(i - 1, j - 1)]
    }

    /// `c_ij`, 1-based, `1 ≤ i, j ≤ n+1`.
    pub fn c(&self, i: usize, j: usize) -> &T {
        &self.c[(i - 1, j - 1)]
    }

    pub fn map<U: Scalar>(&self, mut f: impl FnMut(&T) -> U) -> SingularityFreeBD<U> {
        SingularityFreeBD {
            b: self.b.map(&mut f),
            c: self.c.map(&mut f),
        }
    }

    pub fn convert<U: Scalar>(&self) -> Result<SingularityFreeBD<U>> {
        Ok(SingularityFreeBD {
            b: self.b.convert()?,
            c: self.c.convert()?,
        })
    }

    /// Reads `B` and `C` back from explicit factors; the inverse of
    /// [`sbd_expand`]. Fails if a factor has a non-unit diagonal entry above
    /// its band, which `C` has no slot for.
    pub fn from_factors(fs: &FactorSequence<T>) -> Result<Self> {
        let n = fs.n();
        let mut b = Matrix::zeros(n, n);
        let mut c = Matrix::filled(n + 1, n + 1, T::one());
        for (i, d) in fs.diagonal().iter().enumerate() {
            b[(i, i)] = d.clone();
        }
        for k in 1..n {
            let (lo, up) = (fs.lower(k), fs.upper(k));
            for (side, f) in [("L", lo), ("U", up)] {
                if let Some(r) = (1..n - k).find(|&r| !f.diag[r - 1].is_one()) {
                    return Err(SbdError::NotRepresentable(format!(
                        "{side}_{k} has diagonal entry {:?} at row {r}, above its band",
                        f.diag[r - 1]
                    )));
                }
            }
            for m in n - k..=n {
                c[(m, m + k - n)] = lo.diag[m - 1].clone();
                c[(m + k - n, m)] = up.diag[m - 1].clone();
            }
            for r in n - k + 1..=n {
                b[(r - 1, r + k - n - 1)] = lo.offdiag[r - 2].clone();
            }
            for r in n - k..n {
                b[(r + k - n, r)] = up.offdiag[r - 1].clone();
            }
        }
        SingularityFreeBD::new(b, c)
    }
}

/// Expands `(B, C)` into explicit factors.
///
/// The diagonal of `L_k` at row `m` (`n-k ≤ m ≤ n`) is `c_{m+1, m-n+k+1}`;
/// rows above the band carry 1. Upper factors mirror this through `C`'s
/// upper triangle.
pub fn sbd_expand<T: Scalar>(sbd: &SingularityFreeBD<T>) -> FactorSequence<T> {
    let n = sbd.n();
    let lower = (1..n)
        .map(|k| {
            let mut f = BidiagonalFactor::identity(n, Orientation::Lower, Some(k));
            for m in n - k..=n {
                f.diag[m - 1] = sbd.c(m + 1, m + k + 1 - n).clone();
            }
            for r in n - k + 1..=n {
                f.offdiag[r - 2] = sbd.b(r, r + k - n).clone();
            }
            f
        })
        .collect();
    let upper = (1..n)
        .map(|k| {
            let mut f = BidiagonalFactor::identity(n, Orientation::Upper, Some(k));
            for m in n - k..=n {
                f.diag[m - 1] = sbd.c(m + k + 1 - n, m + 1).clone();
            }
            for r in n - k..n {
                f.offdiag[r - 1] = sbd.b(r + k + 1 - n, r + 1).clone();
            }
            f
        })
        .collect();
    let d = (1..=n).map(|i| sbd.b(i, i).clone()).collect();
    FactorSequence::new(lower, d, upper).expect("layout is consistent by construction")
}

/// Entries `v_ij` of the ordinary bidiagonal decomposition of the
/// Vandermonde matrix with the given nodes.
///
/// * `v_ii = ∏_{k<i} (x_i − x_k)`
/// * `v_ij = ∏_{k=i-j}^{i-2} (x_i − x_{k+1}) / (x_{i-1} − x_k)` for `i > j`
/// * `v_ij = x_i` for `i < j`
pub fn v_matrix<T: Scalar>(nodes: &[T]) -> Result<Matrix<T>> {
    let n = nodes.len();
    let x = |i: usize| nodes[i - 1].clone();
    let mut v = Matrix::zeros(n, n);
    for i in 1..=n {
        v[(i - 1, i - 1)] = (1..i).fold(T::one(), |acc, k| acc * (x(i) - x(k)));
        for j in 1..i {
            let mut acc = T::one();
            for k in i - j..=i - 2 {
                acc = (acc * (x(i) - x(k + 1)))
                    .try_div(x(i - 1) - x(k))
                    .ok_or_else(|| SbdError::singular(format!("x_{} - x_{k} in v_{i}{j}", i - 1)))?;
            }
            v[(i - 1, j - 1)] = acc;
        }
        for j in i + 1..=n {
            v[(i - 1, j - 1)] = x(i);
        }
    }
    Ok(v)
}

/// The `C` storage shared by every Vandermonde-type family:
/// `c_ij = x_{i-1} − x_{i-j}` for `2 ≤ j < i ≤ n+1`, and 1 elsewhere.
pub fn node_difference_c<T: Scalar>(nodes: &[T]) -> Matrix<T> {
    let n = nodes.len();
    let mut c = Matrix::filled(n + 1, n + 1, T::one());
    for i in 3..=n + 1 {
        for j in 2..i {
            c[(i - 1, j - 1)] = nodes[i - 2].clone() - nodes[i - j - 1].clone();
        }
    }
    c
}

/// Converts an ordinary decomposition of a Vandermonde-type matrix with
/// distinct nodes into its singularity-free form by dividing out `v_ij`
/// below and on the diagonal.
pub fn split_bd<T: Scalar>(bd: &OrdinaryBD<T>, nodes: &[T]) -> Result<SingularityFreeBD<T>> {
    let n = bd.n();
    if nodes.len() != n {
        return Err(SbdError::DimensionMismatch(format!(
            "{} nodes for a decomposition of order {n}",
            nodes.len()
        )));
    }
    for i in 1..n {
        if let Some(j) = (i + 1..=n).find(|&j| nodes[i - 1] == nodes[j - 1]) {
            return Err(SbdError::DistinctNodesRequired { i, j });
        }
    }
    let v = v_matrix(nodes)?;
    let mut b = bd.matrix().clone();
    for i in 0..n {
        for j in 0..=i {
            b[(i, j)] = b[(i, j)]
                .clone()
                .try_div(v[(i, j)].clone())
                .ok_or_else(|| SbdError::singular(format!("v_{}{}", i + 1, j + 1)))?;
        }
    }
    SingularityFreeBD::new(b, node_difference_c(nodes))
}

/// Moves the `(n,n)` entry of every bidiagonal factor into `D` so that all
/// of them become 1, leaving the product unchanged:
///
/// * `(L̄_i)_{n,n−1} = (L_i)_{n,n−1} ∏_{k<i} (L_k)_{n,n}`, likewise for `U`
/// * `D̄_{nn} = D_{nn} ∏_k (L_k)_{n,n} ∏_k (U_k)_{n,n}`
pub fn fix_bottom_right<T: Scalar>(fs: &FactorSequence<T>) -> FactorSequence<T> {
    let n = fs.n();
    let mut out = fs.clone();
    if n == 1 {
        return out;
    }
    let mut lower_scale = T::one();
    let mut upper_scale = T::one();
    for k in 1..n {
        let l = out.lower_mut(k);
        l.offdiag[n - 2] = l.offdiag[n - 2].clone() * lower_scale.clone();
        lower_scale = lower_scale * std::mem::replace(&mut l.diag[n - 1], T::one());

        let u = out.upper_mut(k);
        u.offdiag[n - 2] = u.offdiag[n - 2].clone() * upper_scale.clone();
        upper_scale = upper_scale * std::mem::replace(&mut u.diag[n - 1], T::one());
    }
    let d = &mut out.factors[n - 1].diag[n - 1];
    *d = d.clone() * lower_scale * upper_scale;
    out
}
