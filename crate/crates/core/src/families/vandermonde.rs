use super::SplitParams;
use crate::scalar::Scalar;

/// `x^{j-1}`.
pub(super) fn basis<T: Scalar>(j: usize, x: &T) -> T {
    x.powi((j - 1) as u32)
}

/// `s_ij = 1`, `m_ji = x_j`.
pub(super) fn split<T: Scalar>(x: &[T]) -> SplitParams<T> {
    let n = x.len();
    let mut p = SplitParams::zeros(n);
    for i in 1..=n {
        for j in 1..=i {
            p.set_s(i, j, T::one());
        }
        for j in 1..i {
            p.set_m(j, i, x[j - 1].clone());
        }
    }
    p
}
