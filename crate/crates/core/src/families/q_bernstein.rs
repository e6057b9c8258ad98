use super::qcalc::{powers, q_binomial, q_binomial_row, q_integers};
use super::{checked_div, SplitParams};
use crate::error::Result;
use crate::scalar::Scalar;

/// `b^{n-1}_{j-1,q}(x) = [n-1 choose j-1] x^{j-1} ∏_{s=0}^{n-1-j} (1 − qˢx)`.
pub(super) fn basis<T: Scalar>(n: usize, q: &T, j: usize, x: &T) -> Result<T> {
    let big_n = (n - 1) as i64;
    let i = (j - 1) as i64;
    let mut v = q_binomial(big_n, i, q)? * x.powi(i as u32);
    for s in 0..(big_n - i) as u32 {
        v = v * (T::one() - q.powi(s) * x.clone());
    }
    Ok(v)
}

/// All `n` basis functions at `x`.
pub(super) fn basis_row<T: Scalar>(n: usize, q: &T, x: &T) -> Result<Vec<T>> {
    let qp = powers(q, n);
    let qbin = q_binomial_row(n - 1, &q_integers(n, q))?;
    // p[r] = ∏_{s<r} (1 − qˢx)
    let mut p = vec![T::one()];
    for s in 0..n - 1 {
        p.push(p[s].clone() * (T::one() - qp[s].clone() * x.clone()));
    }
    let mut xp = T::one();
    let mut row = Vec::with_capacity(n);
    for j in 1..=n {
        row.push(qbin[j - 1].clone() * xp.clone() * p[n - j].clone());
        xp = xp * x.clone();
    }
    Ok(row)
}

/// Tables `t[s][k] = 1 − qˢx_k` and prefix products
/// `p[k][r] = ∏_{s<r} t[s][k]` for `s, r < n`.
///
/// `t` is evaluated as `(1 − q)[s] + qˢ(1 − x_k)`, a sum of nonnegative
/// terms on the totally nonnegative domain.
struct Tables<T> {
    t: Vec<Vec<T>>,
    p: Vec<Vec<T>>,
}

fn tables<T: Scalar>(x: &[T], q: &T, qints: &[T]) -> Tables<T> {
    let n = x.len();
    let qp = powers(q, n);
    let one_minus_q = T::one() - q.clone();
    let one_minus_x: Vec<T> = x.iter().map(|xk| T::one() - xk.clone()).collect();
    let t: Vec<Vec<T>> = (0..n)
        .map(|s| {
            let lead = one_minus_q.clone() * qints[s].clone();
            one_minus_x
                .iter()
                .map(|v| if s == 0 { v.clone() } else { lead.clone() + qp[s].clone() * v.clone() })
                .collect()
        })
        .collect();
    let p = (0..n)
        .map(|k| {
            let mut row = Vec::with_capacity(n);
            row.push(T::one());
            for s in 1..n {
                row.push(row[s - 1].clone() * t[s - 1][k].clone());
            }
            row
        })
        .collect();
    Tables { t, p }
}

pub(super) fn split<T: Scalar>(x: &[T], q: &T) -> Result<SplitParams<T>> {
    let n = x.len();
    let qints = q_integers(n, q);
    let Tables { t, p } = tables(x, q, &qints);
    let qbin = q_binomial_row(n - 1, &qints)?;
    let mut out = SplitParams::zeros(n);
    for i in 1..=n {
        // Diagonal.
        let mut den = T::one();
        for k in 1..i {
            den = den * t[n - i][k - 1].clone();
        }
        let v = checked_div(qbin[i - 1].clone() * p[i - 1][n - i].clone(), den, || {
            format!("s_{i}{i}")
        })?;
        out.set_s(i, i, v);
        // Below the diagonal.
        for j in 1..i {
            let num = t[n - j][i - j - 1].clone() * p[i - 1][n - j].clone();
            let den = t[n - j][i - 2].clone() * p[i - 2][n - j].clone();
            out.set_s(i, j, checked_div(num, den, || format!("s_{i}{j}"))?);
        }
        // Column i above the diagonal.
        if i >= 2 {
            let coef = checked_div(qints[n - i + 1].clone(), qints[i - 1].clone(), || {
                format!("[{}]", i - 1)
            })?;
            let mut run = coef;
            for j in 1..i {
                let m = checked_div(run.clone() * x[j - 1].clone(), t[n - i][j - 1].clone(), || {
                    format!("m_{j}{i}")
                })?;
                out.set_m(j, i, m);
                run = checked_div(run * t[n - i + 1][j - 1].clone(), t[n - i][j - 1].clone(), || {
                    format!("m_{}{i}", j + 1)
                })?;
            }
        }
    }
    Ok(out)
}
