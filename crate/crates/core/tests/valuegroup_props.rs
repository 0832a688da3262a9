mod common;

use std::cmp::Ordering;
use std::sync::Arc;

use num_rational::BigRational;
use proptest::prelude::*;
use rand::Rng;

use uniformizer_core::valuegroup::{
    convex_decompose, perron_positive_basis, GroupElement, GroupOrder, PerronBasis, SurdScalar,
};

fn element(order: &Arc<GroupOrder>, coords: &[i64]) -> GroupElement {
    GroupElement::from_integers(order.clone(), coords).unwrap()
}

/// Exact sign of `sum c_i w_i` in a single block, via the surd code path only.
fn block_sign(weights: &[SurdScalar], coords: &[i64]) -> Ordering {
    let cs: Vec<BigRational> = coords
        .iter()
        .map(|&c| BigRational::from_integer(c.into()))
        .collect();
    SurdScalar::linear_combination(&cs, weights).signum()
}

/// Sign in a lexicographic product, block by block.
fn lex_sign(order: &GroupOrder, coords: &[i64]) -> Ordering {
    let mut start = 0;
    for block in order.blocks() {
        let s = block_sign(block, &coords[start..start + block.len()]);
        if s != Ordering::Equal {
            return s;
        }
        start += block.len();
    }
    Ordering::Equal
}

fn det2(m: &[[i64; 2]; 2]) -> i64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// Independent validity check for an output on integer alphas.
fn valid(order: &GroupOrder, alphas: &[Vec<i64>], out: &PerronBasis) -> bool {
    let n = order.rank();
    let change = &out.change;
    if change.len() != n || change.iter().any(|r| r.len() != n) {
        return false;
    }
    let det = uniformizer_core::polyfield::integer_determinant(change);
    if det.magnitude() != &1u32.into() {
        return false;
    }
    if change
        .iter()
        .any(|g| lex_sign(order, g) != Ordering::Greater)
    {
        return false;
    }
    alphas.iter().zip(&out.coeffs).all(|(a, c)| {
        c.iter().all(|&x| x >= 0)
            && (0..n).all(|k| (0..n).map(|j| c[j] * change[j][k]).sum::<i64>() == a[k])
    })
}

/// Some unimodular 2x2 basis with entries in `[-bound, bound]`, positive rows
/// and non-negative integer coordinates for every alpha.
fn brute_force(order: &GroupOrder, alphas: &[Vec<i64>], bound: i64) -> Option<[[i64; 2]; 2]> {
    let positive: Vec<[i64; 2]> = (-bound..=bound)
        .flat_map(|a| (-bound..=bound).map(move |b| [a, b]))
        .filter(|v| lex_sign(order, v) == Ordering::Greater)
        .collect();
    for g1 in &positive {
        for g2 in &positive {
            let m = [*g1, *g2];
            let d = det2(&m);
            if d.abs() != 1 {
                continue;
            }
            // alpha = c1 g1 + c2 g2 by Cramer's rule.
            let ok = alphas.iter().all(|a| {
                let c1 = (a[0] * g2[1] - a[1] * g2[0]) * d;
                let c2 = (g1[0] * a[1] - g1[1] * a[0]) * d;
                c1 >= 0 && c2 >= 0
            });
            if ok {
                return Some(m);
            }
        }
    }
    None
}

fn random_alphas(
    rng: &mut rand_chacha::ChaCha8Rng,
    order: &Arc<GroupOrder>,
    count: usize,
) -> Vec<Vec<i64>> {
    let n = order.rank();
    let mut out = Vec::new();
    while out.len() < count {
        let a: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
        if lex_sign(order, &a) != Ordering::Less {
            out.push(a);
        }
    }
    out
}

#[test]
fn documented_rank_two_instance() {
    let one = common::rat(1, 1);
    let order = GroupOrder::archimedean(vec![
        SurdScalar::surd(one.clone(), 1).unwrap(),
        SurdScalar::surd(one, 2).unwrap(),
    ])
    .unwrap();
    let alphas = vec![vec![2, -1]];
    let out = perron_positive_basis(&order, &[element(&order, &alphas[0])]).unwrap();
    assert!(valid(&order, &alphas, &out));
    assert!(brute_force(&order, &alphas, 3).is_some());
}

#[test]
fn perron_outputs_are_valid() {
    let mut rng = common::rng(11);
    for k in 0..120 {
        let rank = 2 + k % 2;
        let order = if k % 3 == 0 {
            common::random_order(&mut rng, rank)
        } else {
            common::archimedean(&mut rng, rank)
        };
        let count = rng.gen_range(1..=5);
        let alphas = random_alphas(&mut rng, &order, count);
        let elems: Vec<GroupElement> = alphas.iter().map(|a| element(&order, a)).collect();
        let out = perron_positive_basis(&order, &elems).unwrap();
        assert!(valid(&order, &alphas, &out), "instance {k}: {alphas:?}");
    }
}

#[test]
fn oracle_equivalence_rank_two() {
    let mut rng = common::rng(12);
    for k in 0..30 {
        let order = common::archimedean(&mut rng, 2);
        let count = rng.gen_range(1..=4);
        let alphas = random_alphas(&mut rng, &order, count);
        let elems: Vec<GroupElement> = alphas.iter().map(|a| element(&order, a)).collect();
        let out = perron_positive_basis(&order, &elems).unwrap();
        let ours_small =
            valid(&order, &alphas, &out) && out.change.iter().flatten().all(|x| x.abs() <= 10);
        let oracle = brute_force(&order, &alphas, 10);
        // A valid small output is a witness the oracle must also find.
        if ours_small {
            assert!(oracle.is_some(), "instance {k}");
        }
        assert!(valid(&order, &alphas, &out), "instance {k}");
    }
}

proptest! {
    #[test]
    fn totality_and_compatibility(
        seed in any::<u64>(),
        a in prop::collection::vec(-6i64..=6, 3),
        b in prop::collection::vec(-6i64..=6, 3),
        c in prop::collection::vec(-6i64..=6, 3),
    ) {
        let mut rng = common::rng(seed);
        let order = common::random_order(&mut rng, 3);
        let (ea, eb, ec) = (element(&order, &a), element(&order, &b), element(&order, &c));
        let ord = ea.compare(&eb).unwrap();
        prop_assert_eq!(ord, eb.compare(&ea).unwrap().reverse());
        prop_assert_eq!(ord == Ordering::Equal, a == b);
        let shifted = ea.checked_add(&ec).unwrap().compare(&eb.checked_add(&ec).unwrap()).unwrap();
        prop_assert_eq!(ord, shifted);
        let diff: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
        prop_assert_eq!(ord, lex_sign(&order, &diff));
    }

    #[test]
    fn convex_round_trip(seed in any::<u64>(), coords in prop::collection::vec(-6i64..=6, 3)) {
        let mut rng = common::rng(seed);
        let blocks = vec![common::surd_weights(&mut rng, 1), common::surd_weights(&mut rng, 2)];
        let order = GroupOrder::new(blocks).unwrap();
        let split = convex_decompose(&order, 1).unwrap();
        let e = element(&order, &coords);
        let q = split.project_quotient(&e).signum();
        let s = split.project_subgroup(&e).signum();
        let nonneg = e.signum() != Ordering::Less;
        let expected = q == Ordering::Greater || (q == Ordering::Equal && s != Ordering::Less);
        prop_assert_eq!(nonneg, expected);
    }
}
