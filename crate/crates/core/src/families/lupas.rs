use super::qcalc::{powers, q_binomial, q_binomial_row, q_integers};
use super::{checked_div, SplitParams};
use crate::error::Result;
use crate::scalar::Scalar;

/// `w(x) = ∏_{k=1}^{n-2} (1 − x + qᵏx)`.
fn weight<T: Scalar>(qp: &[T], n: usize, x: &T) -> T {
    let one_minus = T::one() - x.clone();
    (1..n.saturating_sub(1)).fold(T::one(), |acc, k| acc * (one_minus.clone() + qp[k].clone() * x.clone()))
}

/// `[n-1 choose j-1] q^{(j-1)(j-2)/2} x^{j-1} (1 − x)^{n-j} / w(x)`.
pub(super) fn basis<T: Scalar>(n: usize, q: &T, j: usize, x: &T) -> Result<T> {
    let i = (j - 1) as u32;
    let qp = powers(q, n);
    let num = q_binomial((n - 1) as i64, i as i64, q)?
        * q.powi(i * i.saturating_sub(1) / 2)
        * x.powi(i)
        * (T::one() - x.clone()).powi((n - j) as u32);
    checked_div(num, weight(&qp, n, x), || "Lupas weight".to_string())
}

/// All `n` basis functions at `x`.
pub(super) fn basis_row<T: Scalar>(n: usize, q: &T, x: &T) -> Result<Vec<T>> {
    let qp = powers(q, n);
    let qbin = q_binomial_row(n - 1, &q_integers(n, q))?;
    let w = weight(&qp, n, x);
    let one_minus = T::one() - x.clone();
    let mut down = vec![T::one()];
    for k in 0..n - 1 {
        down.push(down[k].clone() * one_minus.clone());
    }
    let mut xp = T::one();
    let mut tri = T::one();
    let mut row = Vec::with_capacity(n);
    for i in 0..n {
        if i >= 2 {
            tri = tri * qp[i - 1].clone();
        }
        let num = qbin[i].clone() * tri.clone() * xp.clone() * down[n - 1 - i].clone();
        row.push(checked_div(num, w.clone(), || "Lupas weight".to_string())?);
        xp = xp * x.clone();
    }
    Ok(row)
}

pub(super) fn split<T: Scalar>(x: &[T], q: &T) -> Result<SplitParams<T>> {
    let n = x.len();
    let qp = powers(q, n);
    let qints = q_integers(n, q);
    let qbin = q_binomial_row(n - 1, &qints)?;
    let w: Vec<T> = x.iter().map(|xi| weight(&qp, n, xi)).collect();
    let one_minus: Vec<T> = x.iter().map(|xi| T::one() - xi.clone()).collect();
    let mut out = SplitParams::zeros(n);
    let mut tri = T::one(); // q^{(i-1)(i-2)/2}
    for i in 1..=n {
        if i >= 3 {
            tri = tri * qp[i - 2].clone();
        }
        let mut den = w[i - 1].clone();
        for k in 1..i {
            den = den * one_minus[k - 1].clone();
        }
        let num = qbin[i - 1].clone() * tri.clone() * one_minus[i - 1].powi((n - i) as u32);
        out.set_s(i, i, checked_div(num, den, || format!("s_{i}{i}"))?);
        if i >= 2 {
            // s_ij = r^{n-j} (1 − x_{i-j}) / (1 − x_{i-1}) · w(x_{i-1}) / w(x_i)
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
            let coef = checked_div(qints[n - i + 1].clone() * qp[i - 2].clone(), qints[i - 1].clone(), || {
                format!("[{}]", i - 1)
            })?;
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
