use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::bd::reconstruct;
use crate::scalar::{Counted, Rational};

fn r(n: i64, d: i64) -> Rational {
    Rational::from_parts_signed(n.into(), d.into())
}

fn rows(m: &Matrix<Rational>) -> Vec<Vec<Rational>> {
    m.to_rows()
}

fn cfg(family: Family<Rational>, nodes: Vec<Rational>) -> NodeConfig<Rational> {
    NodeConfig { family, nodes, strict: false }
}

fn all_families(n: usize, rng: &mut ChaCha8Rng) -> Vec<Family<Rational>> {
    let weights = (0..n).map(|_| r(rng.random_range(1..=9), rng.random_range(1..=4))).collect();
    let mut out = vec![
        Family::Vandermonde,
        Family::QBernstein { q: r(1, 2) },
        Family::QBernstein { q: r(1, 1) },
        Family::HBernstein { h: r(1, 3) },
        Family::Lupas { q: r(2, 3) },
        Family::RationalBernstein { weights },
    ];
    for s in 1..=n {
        out.push(Family::CauchyVandermonde { d: r(1, 2), multiplicity: s });
    }
    out
}

fn reconstructs(config: &NodeConfig<Rational>) -> bool {
    let fs = sbd_expand(&sbd(config).unwrap());
    reconstruct(&fs) == dense_matrix(config).unwrap()
}

#[test]
fn dense_examples() {
    let v = cfg(Family::Vandermonde, vec![r(1, 1), r(2, 1), r(4, 1)]);
    assert_eq!(
        rows(&dense_matrix(&v).unwrap()),
        vec![
            vec![r(1, 1), r(1, 1), r(1, 1)],
            vec![r(1, 1), r(2, 1), r(4, 1)],
            vec![r(1, 1), r(4, 1), r(16, 1)]
        ]
    );
    let (x1, x2) = (r(1, 5), r(3, 7));
    let qbv = cfg(Family::QBernstein { q: r(1, 3) }, vec![x1.clone(), x2.clone()]);
    assert_eq!(
        rows(&dense_matrix(&qbv).unwrap()),
        vec![vec![r(1, 1) - x1.clone(), x1], vec![r(1, 1) - x2.clone(), x2]]
    );
    let d = r(3, 2);
    let cv = cfg(Family::CauchyVandermonde { d: d.clone(), multiplicity: 1 }, vec![r(1, 4), r(1, 2)]);
    let x = r(1, 4);
    assert_eq!(basis_eval(&cv, 1, &x).unwrap(), r(1, 1) / (x.clone() + d));
    assert_eq!(basis_eval(&cv, 2, &x).unwrap(), r(1, 1));
    assert!(basis_eval(&cv, 3, &x).is_err());
}

#[test]
fn repeated_nodes_give_repeated_rows() {
    let c = cfg(Family::HBernstein { h: r(1, 4) }, vec![r(1, 3), r(1, 3), r(2, 3)]);
    let a = dense_matrix(&c).unwrap();
    assert_eq!(a.row(0), a.row(1));
}

#[test]
fn split_examples() {
    let x: Vec<Rational> = vec![r(1, 3), r(1, 2), r(5, 1)];
    let p = split_params(&cfg(Family::Vandermonde, x.clone())).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            if i >= j {
                assert_eq!(p.s_lower[(i, j)], r(1, 1));
            } else {
                assert_eq!(p.m_upper[(i, j)], x[i]);
            }
        }
    }

    let (x1, x2) = (r(1, 5), r(3, 7));
    let one = r(1, 1);
    let p = split_params(&cfg(Family::QBernstein { q: r(1, 3) }, vec![x1.clone(), x2.clone()])).unwrap();
    assert_eq!(p.s_lower[(0, 0)], one.clone() - x1.clone());
    assert_eq!(p.s_lower[(1, 0)], (one.clone() - x2.clone()) / (one.clone() - x1.clone()));
    assert_eq!(p.s_lower[(1, 1)], one.clone() / (one.clone() - x1.clone()));
    assert_eq!(p.m_upper[(0, 1)], x1.clone() / (one.clone() - x1.clone()));

    let d = r(2, 1);
    let p = split_params(&cfg(
        Family::CauchyVandermonde { d: d.clone(), multiplicity: 1 },
        vec![x1.clone(), x2.clone()],
    ))
    .unwrap();
    assert_eq!(p.s_lower[(0, 0)], one.clone() / (x1.clone() + d.clone()));
    assert_eq!(p.s_lower[(1, 0)], (x1.clone() + d.clone()) / (x2.clone() + d.clone()));
    assert_eq!(p.s_lower[(1, 1)], one.clone() / (x2 + d.clone()));
    assert_eq!(p.m_upper[(0, 1)], x1 + d);
}

#[test]
fn sbd_vandermonde_worked_example() {
    let s = sbd(&cfg(Family::Vandermonde, vec![r(1, 1), r(2, 1), r(4, 1)])).unwrap();
    let i = |v: i64| r(v, 1);
    assert_eq!(
        rows(s.b_matrix()),
        vec![vec![i(1), i(1), i(1)], vec![i(1), i(1), i(2)], vec![i(1), i(1), i(1)]]
    );
    assert_eq!(
        rows(s.c_matrix()),
        vec![
            vec![i(1), i(1), i(1), i(1)],
            vec![i(1), i(1), i(1), i(1)],
            vec![i(1), i(1), i(1), i(1)],
            vec![i(1), i(2), i(3), i(1)]
        ]
    );
}

#[test]
fn rank_one_from_repeated_nodes() {
    let c = cfg(Family::QBernstein { q: r(1, 2) }, vec![r(1, 2), r(1, 2)]);
    let a = reconstruct(&sbd_expand(&sbd(&c).unwrap()));
    assert_eq!(rows(&a), vec![vec![r(1, 2), r(1, 2)], vec![r(1, 2), r(1, 2)]]);
}

#[test]
fn order_one() {
    let c = cfg(Family::Lupas { q: r(1, 2) }, vec![r(1, 3)]);
    let s = sbd(&c).unwrap();
    assert_eq!(*s.b(1, 1), basis_eval(&c, 1, &r(1, 3)).unwrap());
    assert!(s.c_matrix().iter().all(|v| *v == r(1, 1)));
}

#[test]
fn lupas_smallest_case() {
    // Row 2 of the lower factor must use 1 − x_{i−j}.
    let c = cfg(Family::Lupas { q: r(1, 2) }, vec![r(1, 4), r(1, 2)]);
    assert_eq!(split_params(&c).unwrap().s_lower[(1, 0)], r(2, 3));
    assert!(reconstructs(&c));
}

#[test]
fn reconstruction_for_arbitrary_nodes() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 1..=6 {
        for _ in 0..4 {
            let mut nodes: Vec<Rational> = (0..n).map(|_| r(rng.random_range(-40..60), 64)).collect();
            if n > 1 {
                let k = rng.random_range(1..n);
                nodes[k] = nodes[k - 1].clone();
            }
            for family in all_families(n, &mut rng) {
                let c = cfg(family, nodes.clone());
                match sbd(&c) {
                    Ok(_) => assert!(reconstructs(&c), "{} {:?}", c.family.name(), c.nodes),
                    Err(SbdError::SingularFormula { .. }) => {}
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }
}

#[test]
fn strict_validation() {
    let ok = NodeConfig::new(Family::QBernstein { q: r(1, 2) }, vec![r(0, 1), r(1, 2), r(1, 2)], true);
    assert!(ok.is_ok());
    let err = NodeConfig::new(Family::QBernstein { q: r(1, 2) }, vec![r(0, 1), r(1, 1)], true).unwrap_err();
    assert!(matches!(err, SbdError::NodeOutsideDomain { index: 2, .. }));
    let err = NodeConfig::new(Family::RationalBernstein { weights: vec![r(1, 1); 2] }, vec![r(0, 1), r(1, 2)], true)
        .unwrap_err();
    assert!(matches!(err, SbdError::NodeOutsideDomain { index: 1, .. }));
    let err = NodeConfig::new(Family::Vandermonde, vec![r(3, 1), r(1, 1)], true).unwrap_err();
    assert_eq!(err, SbdError::UnsortedNodes { index: 2 });
    assert!(NodeConfig::new(Family::Vandermonde, vec![r(3, 1), r(1, 1)], false).is_ok());
    let err = NodeConfig::new(Family::Lupas { q: r(3, 2) }, vec![r(1, 2)], true).unwrap_err();
    assert!(matches!(err, SbdError::InvalidParameter { .. }));
    let err = NodeConfig::new(Family::HBernstein { h: r(-1, 2) }, vec![r(1, 2)], true).unwrap_err();
    assert!(matches!(err, SbdError::InvalidParameter { .. }));
    let err = NodeConfig::new(Family::CauchyVandermonde { d: r(1, 1), multiplicity: 3 }, vec![r(1, 2)], false)
        .unwrap_err();
    assert!(matches!(err, SbdError::InvalidParameter { .. }));
    let err = NodeConfig::new(Family::RationalBernstein { weights: vec![r(1, 1)] }, vec![r(1, 2); 2], false)
        .unwrap_err();
    assert!(matches!(err, SbdError::InvalidParameter { .. }));
}

#[test]
fn permissive_singularity_is_reported() {
    let c = cfg(Family::QBernstein { q: r(1, 1) }, vec![r(1, 1), r(1, 2)]);
    assert!(matches!(split_params(&c), Err(SbdError::SingularFormula { .. })));
}

#[test]
fn weight_sum_examples() {
    for x in [r(0, 1), r(1, 3), r(7, 8)] {
        assert_eq!(weight_sum(&vec![r(1, 1); 4], &x), r(1, 1));
        assert_eq!(weight_sum(&[r(2, 1), r(5, 1)], &x), r(2, 1) * (r(1, 1) - x.clone()) + r(5, 1) * x);
    }
    assert_eq!(weight_sum(&[r(3, 1), r(5, 1), r(9, 1)], &r(0, 1)), r(3, 1));
}

#[test]
fn row_sums_are_one() {
    let x = vec![r(1, 9), r(1, 3), r(1, 2), r(4, 5), r(9, 10)];
    let families = [
        Family::QBernstein { q: r(2, 3) },
        Family::HBernstein { h: r(1, 7) },
        Family::Lupas { q: r(1, 2) },
        Family::RationalBernstein { weights: vec![r(1, 1), r(3, 1), r(1, 2), r(2, 1), r(5, 1)] },
    ];
    for family in families {
        let a = dense_matrix(&cfg(family, x.clone())).unwrap();
        for i in 0..5 {
            assert_eq!(a.row(i).iter().cloned().fold(r(0, 1), |s, v| s + v), r(1, 1));
        }
    }
}

#[test]
fn scaled_rational_bernstein() {
    let c = cfg(Family::RationalBernstein { weights: vec![r(1, 1), r(2, 1)] }, vec![r(1, 4), r(1, 2)]);
    let fs = sbd_rbv_scaled(&c).unwrap();
    assert_eq!(reconstruct(&fs), dense_matrix(&c).unwrap());

    let x = vec![r(1, 5), r(1, 3), r(1, 3), r(3, 4)];
    let unit = cfg(Family::RationalBernstein { weights: vec![r(1, 1); 4] }, x.clone());
    let base = sbd_expand(&sbd(&cfg(Family::QBernstein { q: r(1, 1) }, x.clone())).unwrap());
    assert_eq!(sbd_rbv_scaled(&unit).unwrap(), base);

    let weights = vec![r(1, 1), r(3, 1), r(1, 2), r(2, 1)];
    let c = cfg(Family::RationalBernstein { weights: weights.clone() }, x.clone());
    let fs = sbd_rbv_scaled(&c).unwrap();
    assert_eq!(reconstruct(&fs), dense_matrix(&c).unwrap());
    let l1 = fs.lower(1);
    for (row, xi) in x.iter().enumerate() {
        let base_diag = base.lower(1).diag[row].clone();
        assert_eq!(l1.diag[row], base_diag / weight_sum(&weights, xi));
    }

    let one = cfg(Family::RationalBernstein { weights: vec![r(3, 1)] }, vec![r(1, 2)]);
    assert_eq!(reconstruct(&sbd_rbv_scaled(&one).unwrap()), dense_matrix(&one).unwrap());
    assert!(sbd_rbv_scaled(&cfg(Family::Vandermonde, x)).is_err());
}

#[test]
fn operation_counts_are_quadratic() {
    let n = 24;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut nodes: Vec<f64> = (0..n).map(|_| rng.random_range(0..64) as f64 / 64.0).collect();
    nodes.sort_by(f64::total_cmp);
    let nodes: Vec<Counted<f64>> = nodes.into_iter().map(Counted).collect();
    let families = vec![
        Family::Vandermonde,
        Family::QBernstein { q: Counted(0.5) },
        Family::HBernstein { h: Counted(0.25) },
        Family::Lupas { q: Counted(0.5) },
        Family::RationalBernstein { weights: vec![Counted(2.0); n] },
        Family::CauchyVandermonde { d: Counted(1.0), multiplicity: 3 },
    ];
    for family in families {
        let c = NodeConfig { family, nodes: nodes.clone(), strict: true };
        crate::scalar::reset_operation_count();
        sbd(&c).unwrap();
        let ops = crate::scalar::operation_count();
        assert!(ops <= (20 * n * n) as u64, "{}: {ops}", c.family.name());
    }
}

#[test]
fn strict_entries_are_nonnegative() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=7 {
        let mut nodes: Vec<Rational> = (0..n).map(|_| r(rng.random_range(1..64), 64)).collect();
        nodes.sort();
        for family in all_families(n, &mut rng) {
            let c = NodeConfig::new(family, nodes.clone(), true).unwrap();
            let s = sbd(&c).unwrap();
            assert!(s.b_matrix().iter().chain(s.c_matrix().iter()).all(|v| *v >= r(0, 1)));
        }
    }
}

#[test]
fn rows_match_pointwise_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 1..=6 {
        let nodes: Vec<Rational> = (0..n).map(|_| r(rng.random_range(-20..60), 64)).collect();
        for family in all_families(n, &mut rng) {
            let c = cfg(family, nodes.clone());
            for x in &nodes {
                let pointwise: Vec<Rational> = (1..=n).map(|j| basis_eval(&c, j, x).unwrap()).collect();
                assert_eq!(basis_row(&c, x).unwrap(), pointwise, "{}", c.family.name());
            }
        }
    }
}

#[test]
fn h_bernstein_zero_node_has_another_decomposition() {
    // Row 1 is e_1 when x_1 = 0, so elimination passes zero pivots and picks
    // different upper multipliers than the closed forms.
    let c = cfg(Family::HBernstein { h: r(1, 3) }, vec![r(0, 1), r(17, 38), r(7, 12)]);
    let direct = sbd(&c).unwrap();
    let dense = dense_matrix(&c).unwrap();
    let elim = crate::oracle::neville_elimination(&dense).unwrap();
    assert!(elim.zero_pivots > 0);
    let via_neville = crate::bd::split_bd(&elim.bd, &c.nodes).unwrap();
    assert_ne!(via_neville, direct);
    assert_eq!(reconstruct(&sbd_expand(&direct)), dense);
    assert_eq!(reconstruct(&sbd_expand(&via_neville)), dense);
}
