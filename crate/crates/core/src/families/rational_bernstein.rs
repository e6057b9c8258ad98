use super::qcalc::binomial_row;
use super::{checked_div, SplitParams};
use crate::error::Result;
use crate::scalar::Scalar;

/// Bernstein polynomials `b^{n-1}_k(x)`, `k = 0..n-1`.
fn bernstein_row<T: Scalar>(binom: &[T], x: &T) -> Vec<T> {
    let n = binom.len();
    let one_minus = T::one() - x.clone();
    let mut xp = vec![T::one()];
    let mut yp = vec![T::one()];
    for k in 1..n {
        xp.push(xp[k - 1].clone() * x.clone());
        yp.push(yp[k - 1].clone() * one_minus.clone());
    }
    (0..n)
        .map(|k| binom[k].clone() * xp[k].clone() * yp[n - 1 - k].clone())
        .collect()
}

/// `W(x) = Σ_j w_j b^{n-1}_{j-1}(x)`.
pub fn weight_sum<T: Scalar>(weights: &[T], x: &T) -> T {
    let binom = binomial_row::<T>(weights.len().saturating_sub(1));
    bernstein_row(&binom, x)
        .into_iter()
        .zip(weights)
        .fold(T::zero(), |acc, (b, w)| acc + w.clone() * b)
}

/// `w_j b^{n-1}_{j-1}(x) / W(x)`.
pub(super) fn basis<T: Scalar>(weights: &[T], j: usize, x: &T) -> Result<T> {
    let binom = binomial_row::<T>(weights.len() - 1);
    let row = bernstein_row(&binom, x);
    let num = weights[j - 1].clone() * row[j - 1].clone();
    checked_div(num, weight_sum(weights, x), || "W(x)".to_string())
}

/// All `n` basis functions at `x`.
pub(super) fn basis_row<T: Scalar>(weights: &[T], x: &T) -> Result<Vec<T>> {
    let binom = binomial_row::<T>(weights.len() - 1);
    let terms: Vec<T> = bernstein_row(&binom, x)
        .into_iter()
        .zip(weights)
        .map(|(b, w)| w.clone() * b)
        .collect();
    let total = terms.iter().fold(T::zero(), |acc, t| acc + t.clone());
    terms
        .into_iter()
        .map(|t| checked_div(t, total.clone(), || "W(x)".to_string()))
        .collect()
}

pub(super) fn split<T: Scalar>(x: &[T], weights: &[T]) -> Result<SplitParams<T>> {
    let n = x.len();
    let binom = binomial_row::<T>(n - 1);
    let w: Vec<T> = x.iter().map(|xi| weight_sum(weights, xi)).collect();
    let one_minus: Vec<T> = x.iter().map(|xi| T::one() - xi.clone()).collect();
    let mut out = SplitParams::zeros(n);
    for i in 1..=n {
        let mut den = w[i - 1].clone();
        for k in 1..i {
            den = den * one_minus[k - 1].clone();
        }
        let num = binom[i - 1].clone() * weights[i - 1].clone() * one_minus[i - 1].powi((n - i) as u32);
        out.set_s(i, i, checked_div(num, den, || format!("s_{i}{i}"))?);
        if i >= 2 {
            let ratio = checked_div(one_minus[i - 1].clone(), one_minus[i - 2].clone(), || {
                format!("s_{i}*")
            })?;
            let base = checked_div(w[i - 2].clone(), one_minus[i - 2].clone() * w[i - 1].clone(), || {
                format!("s_{i}*")
            })?;
            let mut pow = ratio.powi((n - i + 1) as u32);
            for j in (1..i).rev() {
                out.set_s(i, j, pow.clone() * one_minus[i - j - 1].clone() * base.clone());
                pow = pow * ratio.clone();
            }
            let coef = checked_div(
                weights[i - 1].clone() * T::from_integer((n - i + 1) as i64),
                weights[i - 2].clone() * T::from_integer((i - 1) as i64),
                || format!("w_{}", i - 1),
            )?;
            for j in 1..i {
                let m = checked_div(coef.clone() * x[j - 1].clone(), one_minus[j - 1].clone(), || {
                    format!("m_{j}{i}")
                })?;
                out.set_m(j, i, m);
            }
        }
    }
    Ok(out)
}
