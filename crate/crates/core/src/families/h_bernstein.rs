use super::qcalc::binomial_row;
use super::{checked_div, SplitParams};
use crate::error::Result;
use crate::scalar::Scalar;

/// `C(n-1, j-1) ∏_{k<j-1}(x + kh) ∏_{k<n-j}(1 − x + kh) / ∏_{k<n-1}(1 + kh)`.
pub(super) fn basis<T: Scalar>(n: usize, h: &T, j: usize, x: &T) -> Result<T> {
    let big_n = n - 1;
    let i = j - 1;
    let kh = |k: usize| T::from_integer(k as i64) * h.clone();
    let mut num = binomial_row::<T>(big_n)[i].clone();
    for k in 0..i {
        num = num * (x.clone() + kh(k));
    }
    for k in 0..big_n - i {
        num = num * (T::one() - x.clone() + kh(k));
    }
    let mut den = T::one();
    for k in 0..big_n {
        den = den * (T::one() + kh(k));
    }
    checked_div(num, den, || format!("h-Bernstein normaliser at column {j}"))
}

/// All `n` basis functions at `x`.
pub(super) fn basis_row<T: Scalar>(n: usize, h: &T, x: &T) -> Result<Vec<T>> {
    let kh: Vec<T> = (0..n).map(|k| T::from_integer(k as i64) * h.clone()).collect();
    let one_minus = T::one() - x.clone();
    let mut up = vec![T::one()];
    let mut down = vec![T::one()];
    let mut norm = T::one();
    for k in 0..n - 1 {
        up.push(up[k].clone() * (x.clone() + kh[k].clone()));
        down.push(down[k].clone() * (one_minus.clone() + kh[k].clone()));
        norm = norm * (T::one() + kh[k].clone());
    }
    let binom = binomial_row::<T>(n - 1);
    (0..n)
        .map(|i| {
            checked_div(binom[i].clone() * up[i].clone() * down[n - 1 - i].clone(), norm.clone(), || {
                "h-Bernstein normaliser".to_string()
            })
        })
        .collect()
}

pub(super) fn split<T: Scalar>(x: &[T], h: &T) -> Result<SplitParams<T>> {
    let n = x.len();
    let kh: Vec<T> = (0..n).map(|k| T::from_integer(k as i64) * h.clone()).collect();
    let one_minus: Vec<T> = x.iter().map(|xk| T::one() - xk.clone()).collect();
    // u[k][i] = 1 − x_i + kh
    let u: Vec<Vec<T>> = (0..n)
        .map(|k| one_minus.iter().map(|v| v.clone() + kh[k].clone()).collect())
        .collect();
    // p[i][r] = ∏_{k<r} u[k][i]
    let p: Vec<Vec<T>> = (0..n)
        .map(|i| {
            let mut row = vec![T::one()];
            for k in 1..n {
                row.push(row[k - 1].clone() * u[k - 1][i].clone());
            }
            row
        })
        .collect();
    // norm[r] = ∏_{k=1}^{r-1} (1 + kh)
    let mut norm = vec![T::one(), T::one()];
    for k in 1..n {
        norm.push(norm[k].clone() * (T::one() + kh[k].clone()));
    }
    let binom = binomial_row::<T>(n - 1);
    let mut out = SplitParams::zeros(n);
    for i in 1..=n {
        let mut den = norm[n - i].clone();
        for k in 1..i {
            den = den * u[n - i][k - 1].clone();
        }
        let v = checked_div(binom[i - 1].clone() * p[i - 1][n - i].clone(), den, || {
            format!("s_{i}{i}")
        })?;
        out.set_s(i, i, v);
        for j in 1..i {
            let num = u[n - j][i - j - 1].clone() * p[i - 1][n - j].clone();
            let den = u[n - j][i - 2].clone() * p[i - 2][n - j].clone();
            out.set_s(i, j, checked_div(num, den, || format!("s_{i}{j}"))?);
        }
        if i >= 2 {
            let coef = T::from_ratio((n - i + 1) as i64, (i - 1) as i64);
            // run = coef ∏_{k<j} u[n−i+1][k] / ∏_{k<j} u[n−i][k]
            let mut run = coef;
            for j in 1..i {
                let lin = x[j - 1].clone() + kh[i - j - 1].clone();
                let m = checked_div(run.clone() * lin, u[n - i][j - 1].clone(), || format!("m_{j}{i}"))?;
                out.set_m(j, i, m);
                run = checked_div(run * u[n - i + 1][j - 1].clone(), u[n - i][j - 1].clone(), || {
                    format!("m_{}{i}", j + 1)
                })?;
            }
        }
    }
    Ok(out)
}
