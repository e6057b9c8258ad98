#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use vtsbd::{Family, NodeConfig, Rational};

pub const FAMILY_COUNT: usize = 6;

pub fn r(n: i64, d: i64) -> Rational {
    Rational::from_parts_signed(n.into(), d.into())
}

/// Random rational in `[lo, hi)` (or `(lo, hi)` when `open`) with a
/// denominator of at most `max_den`.
pub fn rational_in(rng: &mut impl Rng, lo: i64, hi: i64, open: bool, max_den: i64) -> Rational {
    let den = rng.random_range(1 + i64::from(open)..=max_den);
    let start = lo * den + i64::from(open);
    r(rng.random_range(start..hi * den), den)
}

pub fn family_name(kind: usize) -> &'static str {
    [
        "vandermonde",
        "q_bernstein_vandermonde",
        "h_bernstein_vandermonde",
        "lupas",
        "rational_bernstein_vandermonde",
        "cauchy_vandermonde_1pole",
    ][kind]
}

/// Parameters inside the totally nonnegative ranges.
pub fn strict_family(rng: &mut impl Rng, kind: usize, n: usize) -> Family<Rational> {
    let unit_q = |rng: &mut dyn rand::RngCore| {
        let den: i64 = rng.random_range(1..=20);
        r(rng.random_range(1..=den), den)
    };
    match kind {
        0 => Family::Vandermonde,
        1 => Family::QBernstein { q: unit_q(rng) },
        2 => Family::HBernstein { h: rational_in(rng, 0, 2, false, 12) },
        3 => Family::Lupas { q: unit_q(rng) },
        4 => Family::RationalBernstein {
            weights: (0..n).map(|_| rational_in(rng, 0, 5, true, 8)).collect(),
        },
        _ => Family::CauchyVandermonde {
            d: rational_in(rng, 0, 3, true, 8),
            multiplicity: rng.random_range(1..=n),
        },
    }
}

/// Parameters with no sign or range restriction beyond nonvanishing.
pub fn loose_family(rng: &mut impl Rng, kind: usize, n: usize) -> Family<Rational> {
    match kind {
        1 => Family::QBernstein { q: rational_in(rng, 0, 2, true, 12) },
        2 => Family::HBernstein { h: rational_in(rng, -1, 2, false, 12) },
        3 => Family::Lupas { q: rational_in(rng, 0, 2, true, 12) },
        4 => Family::RationalBernstein {
            weights: (0..n)
                .map(|_| {
                    let w = rational_in(rng, -3, 5, false, 8);
                    if w == r(0, 1) { r(1, 1) } else { w }
                })
                .collect(),
        },
        5 => Family::CauchyVandermonde {
            d: rational_in(rng, -2, 3, false, 8),
            multiplicity: rng.random_range(1..=n),
        },
        _ => strict_family(rng, kind, n),
    }
}

/// A node inside the family's domain.
pub fn domain_node(rng: &mut impl Rng, kind: usize, max_den: i64) -> Rational {
    match kind {
        0 => rational_in(rng, -2, 3, false, max_den),
        1..=3 => rational_in(rng, 0, 1, false, max_den),
        4 => rational_in(rng, 0, 1, true, max_den),
        _ => rational_in(rng, 0, 4, false, max_den),
    }
}

/// Sorted, pairwise distinct in-domain nodes.
pub fn distinct_sorted_nodes(rng: &mut impl Rng, kind: usize, n: usize) -> Vec<Rational> {
    let mut nodes: Vec<Rational> = Vec::with_capacity(n);
    while nodes.len() < n {
        let x = domain_node(rng, kind, 40);
        if !nodes.contains(&x) {
            nodes.push(x);
        }
    }
    nodes.sort();
    nodes
}

/// Sorted in-domain nodes where ties occur about half of the time.
pub fn sorted_nodes_with_ties(rng: &mut impl Rng, kind: usize, n: usize, max_den: i64) -> Vec<Rational> {
    let mut nodes: Vec<Rational> = (0..n).map(|_| domain_node(rng, kind, max_den)).collect();
    if n > 1 && rng.random_bool(0.5) {
        let k = rng.random_range(1..n);
        nodes[k] = nodes[k - 1].clone();
    }
    if kind != 4 && kind != 0 && rng.random_bool(0.25) {
        nodes[0] = r(0, 1);
    }
    nodes.sort();
    nodes
}

/// Arbitrary nodes in `[-1, 2)` with at least one forced repeat, shuffled.
pub fn repeated_shuffled_nodes(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    let mut nodes: Vec<Rational> = (0..n).map(|_| rational_in(rng, -1, 2, false, 16)).collect();
    let src = rng.random_range(0..n);
    let dst = (src + rng.random_range(1..n)) % n;
    nodes[dst] = nodes[src].clone();
    nodes.shuffle(rng);
    nodes
}

pub fn strict_config(rng: &mut impl Rng, kind: usize, nodes: Vec<Rational>) -> NodeConfig<Rational> {
    let family = strict_family(rng, kind, nodes.len());
    NodeConfig::new(family, nodes, true).expect("generated configuration is valid")
}
