//! Exact-arithmetic ground truth: Neville elimination, rank, minors,
//! total-nonnegativity sampling and float-versus-exact comparison.

use std::fmt;

use dashu_int::ops::Gcd;
use dashu_int::{IBig, UBig};
use num_traits::{One, Signed, Zero};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bd::{OrdinaryBD, SingularityFreeBD};
use crate::error::{Result, SbdError};
use crate::matrix::Matrix;
use crate::scalar::{relative_error, Rational, RelativeError, Scalar};

/// Complete Neville elimination with adjacent rows, then adjacent columns.
///
/// Columns are processed left to right and, within a column, rows bottom-up
/// against the row directly above. The column pass runs the same elimination
/// on the transpose of the remaining upper triangular matrix.
///
/// A zero pivot is accepted when the entry to annihilate is zero as well
/// (multiplier 0).
pub fn neville_bd(a: &Matrix<Rational>) -> Result<OrdinaryBD<Rational>> {
    neville_elimination(a).map(|e| e.bd)
}

/// Result of [`neville_elimination`].
#[derive(Debug, Clone, PartialEq)]
pub struct NevilleElimination {
    pub bd: OrdinaryBD<Rational>,
    /// Steps where both the pivot and the entry below it were zero. When
    /// this is positive the multipliers are one choice among several.
    pub zero_pivots: usize,
}

/// [`neville_bd`] that also reports how many zero pivots were passed over.
pub fn neville_elimination(a: &Matrix<Rational>) -> Result<NevilleElimination> {
    if !a.is_square() {
        return Err(SbdError::DimensionMismatch(format!("{}x{} is not square", a.rows(), a.cols())));
    }
    let n = a.rows();
    let mut m = Matrix::zeros(n, n);
    let mut work = a.clone();
    let mut zero_pivots = eliminate_lower(&mut work, |i, j, v| m[(i, j)] = v)?;
    let mut upper = work.transpose();
    zero_pivots += eliminate_lower(&mut upper, |i, j, v| m[(j, i)] = v).map_err(|e| match e {
        SbdError::SingularPivot { i, j } => SbdError::SingularPivot { i: j, j: i },
        other => other,
    })?;
    for k in 0..n {
        m[(k, k)] = upper[(k, k)].clone();
    }
    Ok(NevilleElimination {
        bd: OrdinaryBD::new(m)?,
        zero_pivots,
    })
}

/// Annihilates the strict lower triangle by adjacent-row operations,
/// reporting each multiplier through `record(i, j, m)` (0-based). Returns
/// the number of zero pivots met.
fn eliminate_lower(
    a: &mut Matrix<Rational>,
    mut record: impl FnMut(usize, usize, Rational),
) -> Result<usize> {
    let n = a.rows();
    let mut zero_pivots = 0;
    for j in 0..n.saturating_sub(1) {
        for i in (j + 1..n).rev() {
            let entry = a[(i, j)].clone();
            let pivot = a[(i - 1, j)].clone();
            let mult = if entry.is_zero() {
                if pivot.is_zero() {
                    zero_pivots += 1;
                }
                Rational::zero()
            } else if pivot.is_zero() {
                return Err(SbdError::SingularPivot { i: i + 1, j: j + 1 });
            } else {
                entry / pivot
            };
            if !mult.is_zero() {
                for c in j..n {
                    let v = a[(i, c)].clone() - mult.clone() * a[(i - 1, c)].clone();
                    a[(i, c)] = v;
                }
            }
            record(i, j, mult);
        }
    }
    Ok(zero_pivots)
}

/// Scales every row to integers by the lcm of its denominators. Returns the
/// integer matrix and the product of the scale factors.
fn clear_denominators(a: &Matrix<Rational>) -> (Matrix<IBig>, UBig) {
    let mut total = UBig::ONE;
    let mut rows = Vec::with_capacity(a.rows());
    for r in 0..a.rows() {
        let lcm = a.row(r).iter().fold(UBig::ONE, |l, v| {
            let g: UBig = (&l).gcd(v.denominator());
            l / g * v.denominator()
        });
        rows.push(
            a.row(r)
                .iter()
                .map(|v| v.numerator() * IBig::from(&lcm / v.denominator()))
                .collect::<Vec<_>>(),
        );
        total *= lcm;
    }
    let m = if rows.is_empty() {
        Matrix::filled(0, a.cols(), IBig::ZERO)
    } else {
        Matrix::from_rows(rows).expect("rows share a length")
    };
    (m, total)
}

/// Fraction-free row echelon reduction in place. Returns the pivot count and
/// whether an odd number of row swaps occurred.
fn bareiss(a: &mut Matrix<IBig>) -> (usize, bool) {
    let (rows, cols) = (a.rows(), a.cols());
    let mut rank = 0;
    let mut odd = false;
    let mut prev = IBig::ONE;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[(r, c)].is_zero()) else {
            continue;
        };
        if p != rank {
            a.swap_rows(p, rank);
            odd = !odd;
        }
        let pivot = a[(rank, c)].clone();
        for i in rank + 1..rows {
            let lead = a[(i, c)].clone();
            for j in c + 1..cols {
                let v = (&pivot * &a[(i, j)] - &lead * &a[(rank, j)]) / &prev;
                a[(i, j)] = v;
            }
            a[(i, c)] = IBig::ZERO;
        }
        prev = pivot;
        rank += 1;
    }
    (rank, odd)
}

/// Rank over the rationals.
pub fn exact_rank(a: &Matrix<Rational>) -> usize {
    let (mut ints, _) = clear_denominators(a);
    bareiss(&mut ints).0
}

/// Exact determinant of a square matrix.
pub fn determinant(a: &Matrix<Rational>) -> Result<Rational> {
    if !a.is_square() {
        return Err(SbdError::DimensionMismatch(format!("{}x{} is not square", a.rows(), a.cols())));
    }
    let n = a.rows();
    if n == 0 {
        return Ok(Rational::one());
    }
    let (mut ints, scale) = clear_denominators(a);
    let (rank, odd) = bareiss(&mut ints);
    if rank < n {
        return Ok(Rational::zero());
    }
    let det = Rational::from_parts(ints[(n - 1, n - 1)].clone(), scale);
    Ok(if odd { -det } else { det })
}

/// Determinant of the submatrix on `rows × cols` (0-based indices).
pub fn minor(a: &Matrix<Rational>, rows: &[usize], cols: &[usize]) -> Result<Rational> {
    if rows.len() != cols.len() {
        return Err(SbdError::DimensionMismatch(format!(
            "{} rows and {} columns",
            rows.len(),
            cols.len()
        )));
    }
    if rows.iter().any(|&r| r >= a.rows()) || cols.iter().any(|&c| c >= a.cols()) {
        return Err(SbdError::DimensionMismatch("minor index out of range".into()));
    }
    let sub = Matrix::from_fn(rows.len(), cols.len(), |r, c| a[(rows[r], cols[c])].clone());
    determinant(&sub)
}

/// A minor found to be negative.
#[derive(Debug, Clone, PartialEq)]
pub struct NegativeMinor {
    /// 1-based row indices.
    pub rows: Vec<usize>,
    /// 1-based column indices.
    pub cols: Vec<usize>,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TnReport {
    pub trials: usize,
    pub seed: u64,
    pub negative: Vec<NegativeMinor>,
}

impl TnReport {
    pub fn passed(&self) -> bool {
        self.negative.is_empty()
    }
}

/// Evaluates `trials` random square minors exactly. The index sets are
/// drawn up front from a ChaCha8 stream seeded with `seed`: the order
/// uniformly in `1..=min(rows, cols)`, then sorted row and column subsets.
pub fn tn_sample_check(a: &Matrix<Rational>, trials: usize, seed: u64) -> TnReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_order = a.rows().min(a.cols());
    let mut plan = Vec::with_capacity(trials);
    if max_order > 0 {
        for _ in 0..trials {
            let k = rng.random_range(1..=max_order);
            let mut rows = sample(&mut rng, a.rows(), k).into_vec();
            let mut cols = sample(&mut rng, a.cols(), k).into_vec();
            rows.sort_unstable();
            cols.sort_unstable();
            plan.push((rows, cols));
        }
    }
    let negative = plan
        .into_iter()
        .filter_map(|(rows, cols)| {
            let value = minor(a, &rows, &cols).expect("valid index sets");
            value.is_negative().then(|| NegativeMinor {
                rows: rows.iter().map(|r| r + 1).collect(),
                cols: cols.iter().map(|c| c + 1).collect(),
                value,
            })
        })
        .collect();
    TnReport { trials, seed, negative }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    B,
    C,
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Part::B => "B",
            Part::C => "C",
        })
    }
}

/// Location of the largest relative error (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WorstEntry {
    pub i: usize,
    pub j: usize,
    pub part: Part,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub max_rel_error_b: RelativeError,
    pub max_rel_error_c: RelativeError,
    pub worst: WorstEntry,
    pub n: usize,
    pub seed: Option<u64>,
}

impl VerificationReport {
    pub fn max_rel_error(&self) -> &RelativeError {
        (&self.max_rel_error_b).max(&self.max_rel_error_c)
    }

    pub fn within(&self, bound: f64) -> bool {
        self.max_rel_error().within(bound)
    }
}

/// Componentwise relative errors of every `B` and `C` entry of `computed`
/// against `exact`. A nonzero computed value where the exact one is zero
/// counts as an infinite error.
pub fn compare_sbd<S: Scalar>(
    computed: &SingularityFreeBD<S>,
    exact: &SingularityFreeBD<Rational>,
) -> Result<VerificationReport> {
    let n = exact.n();
    if computed.n() != n {
        return Err(SbdError::DimensionMismatch(format!(
            "orders {} and {n}",
            computed.n()
        )));
    }
    let mut worst = WorstEntry { i: 1, j: 1, part: Part::B };
    let mut worst_err = RelativeError::zero();
    let mut scan = |got: &Matrix<S>, want: &Matrix<Rational>, part: Part| {
        let mut max = RelativeError::zero();
        for r in 0..want.rows() {
            for c in 0..want.cols() {
                let e = relative_error(&got[(r, c)], &want[(r, c)]);
                if e > worst_err {
                    worst_err = e.clone();
                    worst = WorstEntry { i: r + 1, j: c + 1, part };
                }
                if e > max {
                    max = e;
                }
            }
        }
        max
    };
    let max_b = scan(computed.b_matrix(), exact.b_matrix(), Part::B);
    let max_c = scan(computed.c_matrix(), exact.c_matrix(), Part::C);
    Ok(VerificationReport {
        max_rel_error_b: max_b,
        max_rel_error_c: max_c,
        worst,
        n,
        seed: None,
    })
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::bd::{bd_expand, reconstruct};

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn mat(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect()).unwrap()
    }

    /// Laplace expansion along the first row.
    fn cofactor_det(a: &Matrix<Rational>) -> Rational {
        let n = a.rows();
        if n == 0 {
            return Rational::one();
        }
        let mut total = Rational::zero();
        for c in 0..n {
            let sub = Matrix::from_fn(n - 1, n - 1, |r, k| a[(r + 1, if k < c { k } else { k + 1 })].clone());
            let term = a[(0, c)].clone() * cofactor_det(&sub);
            total = if c % 2 == 0 { total + term } else { total - term };
        }
        total
    }

    #[test]
    fn neville_examples() {
        assert_eq!(*neville_bd(&Matrix::identity(4)).unwrap().matrix(), Matrix::identity(4));
        let v = mat(&[&[1, 1, 1], &[1, 2, 4], &[1, 4, 16]]);
        assert_eq!(*neville_bd(&v).unwrap().matrix(), mat(&[&[1, 1, 1], &[1, 1, 2], &[1, 2, 6]]));
        assert_eq!(
            neville_bd(&mat(&[&[0, 0], &[1, 0]])).unwrap_err(),
            SbdError::SingularPivot { i: 2, j: 1 }
        );
        assert_eq!(
            neville_bd(&mat(&[&[0, 1], &[0, 0]])).unwrap_err(),
            SbdError::SingularPivot { i: 1, j: 2 }
        );
    }

    #[test]
    fn neville_accepts_zero_over_zero() {
        let a = mat(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 2]]);
        let bd = neville_bd(&a).unwrap();
        assert_eq!(reconstruct(&bd_expand(&bd)), a);
        assert_eq!(neville_elimination(&Matrix::identity(4)).unwrap().zero_pivots, 6);
        assert_eq!(neville_elimination(&mat(&[&[1, 1, 1], &[1, 2, 4], &[1, 4, 16]])).unwrap().zero_pivots, 0);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(exact_rank(&Matrix::<Rational>::identity(5)), 5);
        assert_eq!(exact_rank(&mat(&[&[1, 1, 1], &[1, 1, 1], &[1, 3, 9]])), 2);
        assert_eq!(exact_rank(&mat(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(exact_rank(&mat(&[&[0, 1, 2], &[0, 2, 4], &[0, 0, 1]])), 2);
        let half = Rational::from_parts_signed(1.into(), 2.into());
        let a = Matrix::from_rows(vec![vec![half.clone(), q(1)], vec![q(1), q(2)]]).unwrap();
        assert_eq!(exact_rank(&a), 1);
    }

    #[test]
    fn minor_examples() {
        let a = mat(&[&[1, 1], &[1, 2]]);
        assert_eq!(minor(&a, &[0, 1], &[0, 1]).unwrap(), q(1));
        assert_eq!(minor(&a, &[1], &[0]).unwrap(), q(1));
        assert!(minor(&a, &[0, 1], &[0]).is_err());
        assert!(minor(&a, &[2], &[0]).is_err());
        assert_eq!(determinant(&mat(&[&[0, 1], &[1, 0]])).unwrap(), q(-1));
    }

    #[test]
    fn tn_examples() {
        let report = tn_sample_check(&Matrix::identity(5), 200, 4);
        assert!(report.passed());
        let bad = mat(&[&[1, 1, 1], &[1, -1, 1], &[1, 2, 4]]);
        let report = tn_sample_check(&bad, 500, 1);
        assert!(!report.passed());
        let neg = &report.negative[0];
        let rows: Vec<usize> = neg.rows.iter().map(|r| r - 1).collect();
        let cols: Vec<usize> = neg.cols.iter().map(|c| c - 1).collect();
        assert_eq!(minor(&bad, &rows, &cols).unwrap(), neg.value);
        assert_eq!(tn_sample_check(&bad, 50, 9), tn_sample_check(&bad, 50, 9));
    }

    #[test]
    fn compare_examples() {
        let exact = crate::families::sbd(&crate::families::NodeConfig {
            family: crate::families::Family::Vandermonde,
            nodes: vec![q(1), q(2), q(4)],
            strict: true,
        })
        .unwrap();
        let float: SingularityFreeBD<f64> = exact.convert().unwrap();
        let report = compare_sbd(&float, &exact).unwrap();
        assert!(report.max_rel_error_b.is_zero() && report.max_rel_error_c.is_zero());

        let mut b = float.b_matrix().clone();
        b[(1, 2)] *= 1.0 + 2f64.powi(-20);
        let perturbed = SingularityFreeBD::new(b, float.c_matrix().clone()).unwrap();
        let report = compare_sbd(&perturbed, &exact).unwrap();
        assert_eq!(report.worst, WorstEntry { i: 2, j: 3, part: Part::B });
        assert!(report.max_rel_error_c.is_zero());

        let mut c = float.c_matrix().clone();
        c[(0, 0)] = 0.0;
        let zeroed = SingularityFreeBD::new(float.b_matrix().clone(), c).unwrap();
        let report = compare_sbd(&zeroed, &exact).unwrap();
        assert_eq!(report.worst.part, Part::C);
        assert!(report.within(1.0) && !report.within(0.5));
    }

    fn small_matrix(n: usize) -> impl Strategy<Value = Matrix<Rational>> {
        prop::collection::vec((-9i64..10, 1i64..5), n * n).prop_map(move |v| {
            Matrix::from_fn(n, n, |r, c| {
                let (a, b) = v[r * n + c];
                Rational::from_parts_signed(a.into(), b.into())
            })
        })
    }

    proptest! {
        #[test]
        fn determinant_matches_cofactor_expansion(a in (1usize..=4).prop_flat_map(small_matrix)) {
            prop_assert_eq!(determinant(&a).unwrap(), cofactor_det(&a));
        }

        #[test]
        fn rank_bounds_and_full_rank(a in (1usize..=4).prop_flat_map(small_matrix)) {
            let rank = exact_rank(&a);
            prop_assert!(rank <= a.rows());
            prop_assert_eq!(rank == a.rows(), !cofactor_det(&a).is_zero());
        }

        #[test]
        fn neville_inverts_reconstruction(
            m in (1usize..=6).prop_flat_map(|n| prop::collection::vec((1i64..9, 1i64..5), n * n)
                .prop_map(move |v| Matrix::from_fn(n, n, |r, c| Rational::from_parts_signed(v[r * n + c].0.into(), v[r * n + c].1.into()))))
        ) {
            let bd = OrdinaryBD::new(m.clone()).unwrap();
            let a = reconstruct(&bd_expand(&bd));
            let back = neville_bd(&a).unwrap();
            prop_assert_eq!(back.matrix(), &m);
        }
    }
}
