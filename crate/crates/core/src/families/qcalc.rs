use dashu_int::UBig;

use crate::error::{Result, SbdError};
use crate::scalar::{Rational, Scalar};

/// q-integer `[r] = (1 − qʳ)/(1 − q)` (`= r` at `q = 1`).
///
/// Evaluated as `1 + q + ⋯ + q^{r-1}`, which is the same rational function
/// and involves no subtraction.
pub fn q_integer<T: Scalar>(r: u32, q: &T) -> T {
    (0..r).fold(T::zero(), |acc, _| T::one() + q.clone() * acc)
}

/// `[0], [1], …, [n]`.
pub(crate) fn q_integers<T: Scalar>(n: usize, q: &T) -> Vec<T> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(T::zero());
    for r in 1..=n {
        let prev = out[r - 1].clone();
        out.push(T::one() + q.clone() * prev);
    }
    out
}

/// q-binomial coefficient `[n][n−1]⋯[n−r+1] / [r]!` for `n ≥ r ≥ 0`, and 0
/// otherwise.
pub fn q_binomial<T: Scalar>(n: i64, r: i64, q: &T) -> Result<T> {
    if r < 0 || n < r {
        return Ok(T::zero());
    }
    let mut value = T::one();
    for k in 0..r {
        value = (value * q_integer((n - k) as u32, q))
            .try_div(q_integer((k + 1) as u32, q))
            .ok_or_else(|| SbdError::singular(format!("q-integer [{}]", k + 1)))?;
    }
    Ok(value)
}

/// Row `[N choose 0]_q, …, [N choose N]_q` by the multiplicative recurrence.
pub(crate) fn q_binomial_row<T: Scalar>(big_n: usize, qints: &[T]) -> Result<Vec<T>> {
    let mut row = Vec::with_capacity(big_n + 1);
    row.push(T::one());
    for i in 0..big_n {
        let next = (row[i].clone() * qints[big_n - i].clone())
            .try_div(qints[i + 1].clone())
            .ok_or_else(|| SbdError::singular(format!("q-integer [{}]", i + 1)))?;
        row.push(next);
    }
    Ok(row)
}

/// Ordinary binomial coefficients `C(N, 0), …, C(N, N)` as exact scalars.
pub(crate) fn binomial_row<T: Scalar>(big_n: usize) -> Vec<T> {
    let mut c = UBig::ONE;
    let mut out = Vec::with_capacity(big_n + 1);
    for i in 0..=big_n {
        out.push(T::from_rational(&Rational::from(c.clone())));
        c = c * UBig::from(big_n - i) / UBig::from(i + 1);
    }
    out
}

/// `q^0, q^1, …, q^len`.
pub(crate) fn powers<T: Scalar>(q: &T, len: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(len + 1);
    out.push(T::one());
    for s in 1..=len {
        let prev = out[s - 1].clone();
        out.push(prev * q.clone());
    }
    out
}
