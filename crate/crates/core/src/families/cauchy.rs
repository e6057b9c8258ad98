use super::{checked_div, SplitParams};
use crate::error::Result;
use crate::scalar::Scalar;

/// `1/(x+d)^{s-j+1}` for `j ≤ s`, then `x^{j-s-1}`.
pub(super) fn basis<T: Scalar>(s: usize, d: &T, j: usize, x: &T) -> Result<T> {
    if j <= s {
        let den = (x.clone() + d.clone()).powi((s - j + 1) as u32);
        checked_div(T::one(), den, || "x + d".to_string())
    } else {
        Ok(x.powi((j - s - 1) as u32))
    }
}

pub(super) fn split<T: Scalar>(x: &[T], d: &T, s: usize) -> Result<SplitParams<T>> {
    let n = x.len();
    let shifted: Vec<T> = x.iter().map(|xi| xi.clone() + d.clone()).collect();
    let mut out = SplitParams::zeros(n);
    for i in 1..=n {
        let inv = checked_div(T::one(), shifted[i - 1].clone(), || format!("x_{i} + d"))?;
        out.set_s(i, i, inv.powi(s as u32));
        if i >= 2 {
            let r = (shifted[i - 2].clone() * inv).powi(s as u32);
            for j in 1..i {
                out.set_s(i, j, r.clone());
                let m = if i - j <= s { shifted[j - 1].clone() } else { x[j - 1].clone() };
                out.set_m(j, i, m);
            }
        }
    }
    Ok(out)
}
