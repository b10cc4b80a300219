use std::collections::{BTreeSet, HashSet};

use marginal_independence::cdf::{cdf_to_prob, prob_to_cdf, Rational, RationalTensor, StateShape};
use marginal_independence::closure::{
    closure, closure_bruteforce, fixpoint_split, member, split_by,
};
use marginal_independence::partition::enumerate;
use marginal_independence::toric::LatticePolytope;
use marginal_independence::{GroundSet, PartialSetPartition, Permutation, StatementSet};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::sample::subsequence;

fn universe4() -> Vec<PartialSetPartition> {
    enumerate(4, 2)
}

fn statements(n: usize, items: Vec<PartialSetPartition>) -> StatementSet {
    StatementSet::new(n, items).unwrap()
}

fn arb_statements() -> impl Strategy<Value = StatementSet> {
    subsequence(universe4(), 0..6).prop_map(|v| statements(4, v))
}

fn arb_permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::new(images).unwrap())
}

#[test]
fn order_axioms_on_all_partial_partitions_of_four() {
    let all = enumerate(4, 0);
    for a in &all {
        assert!(a.leq(a));
        for b in &all {
            if a.leq(b) && b.leq(a) {
                assert_eq!(a, b);
            }
            if a.leq(b) {
                for c in &all {
                    if b.leq(c) {
                        assert!(a.leq(c), "{a} <= {b} <= {c}");
                    }
                }
            }
        }
    }
}

#[test]
fn order_is_generated_by_covers_and_graded() {
    let all = enumerate(4, 0);
    let k = all.len();
    let mut reach = vec![vec![false; k]; k];
    for i in 0..k {
        reach[i][i] = true;
        for j in 0..k {
            if all[j].covers(&all[i]) {
                reach[i][j] = true;
                assert_eq!(
                    all[j].rank(),
                    all[i].rank() + 1,
                    "{} covers {}",
                    all[j],
                    all[i]
                );
            }
        }
    }
    for m in 0..k {
        for i in 0..k {
            if reach[i][m] {
                for j in 0..k {
                    if reach[m][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    for i in 0..k {
        for j in 0..k {
            assert_eq!(reach[i][j], all[i].leq(&all[j]), "{} vs {}", all[i], all[j]);
        }
    }
}

#[test]
fn not_a_lattice() {
    let all = enumerate(4, 0);
    let a = PartialSetPartition::parse("1|2", 4).unwrap();
    let b = PartialSetPartition::parse("3|4", 4).unwrap();
    let upper: Vec<&PartialSetPartition> = all.iter().filter(|x| a.leq(x) && b.leq(x)).collect();
    let minimal: BTreeSet<String> = upper
        .iter()
        .filter(|x| !upper.iter().any(|y| y != *x && y.leq(x)))
        .map(|x| x.to_text())
        .collect();
    assert_eq!(
        minimal,
        BTreeSet::from(["13|24".to_string(), "14|23".to_string()])
    );
}

#[test]
fn meets_stay_in_the_ideal() {
    let u = universe4();
    for gens in [
        vec!["12|34", "13|24"],
        vec!["1|234", "12|3"],
        vec!["1|2|34"],
    ] {
        let c = statements(
            4,
            gens.iter()
                .map(|g| PartialSetPartition::parse(g, 4).unwrap())
                .collect(),
        );
        let ideal = closure(&c);
        for p in ideal.iter() {
            for q in ideal.iter().filter(|q| q.ground_set() == p.ground_set()) {
                let m = p.meet_same_support(q).unwrap();
                assert!(ideal.contains(&m), "{p} ^ {q} = {m}");
            }
        }
        assert!(u.iter().filter(|x| ideal.contains(x)).count() == ideal.len());
    }
}

#[test]
fn mixing_derivability() {
    let blocks = GroundSet::full(4);
    for r in blocks.subsets().filter(|s| !s.is_empty()) {
        for s in blocks.difference(r).subsets().filter(|s| !s.is_empty()) {
            for t in blocks
                .difference(r.union(s))
                .subsets()
                .filter(|s| !s.is_empty())
            {
                let rs = PartialSetPartition::new(4, vec![r, s]).unwrap();
                let rst = PartialSetPartition::new(4, vec![r.union(s), t]).unwrap();
                let c = statements(4, vec![rs, rst]);
                assert!(member(
                    &PartialSetPartition::new(4, vec![r, s, t]).unwrap(),
                    &c
                ));
                assert!(member(
                    &PartialSetPartition::new(4, vec![r, s.union(t)]).unwrap(),
                    &c
                ));
            }
        }
    }
}

fn rational_tensor(shape: &StateShape, nums: &[i64]) -> RationalTensor {
    let entries = (0..shape.volume())
        .map(|k| {
            Rational::new(
                BigInt::from(nums[k % nums.len()] - 50),
                BigInt::from(1 + (nums[(k + 1) % nums.len()] % 7)),
            )
        })
        .collect();
    RationalTensor::from_entries(shape.clone(), entries).unwrap()
}

/// Normalized volume via the Ehrhart polynomial: the `d`-th finite
/// difference of `t -> #(tP ∩ Z^d)` at zero equals `d!` times the volume.
fn ehrhart_normalized_volume(points: &[Vec<i64>]) -> i64 {
    let d = points[0].len();
    let facets = facet_inequalities(points);
    let counts: Vec<i64> = (0..=d as i64)
        .map(|t| {
            let hi: Vec<i64> = (0..d)
                .map(|c| t * points.iter().map(|p| p[c]).max().unwrap())
                .collect();
            let mut count = 0;
            let mut x = vec![0i64; d];
            loop {
                if facets
                    .iter()
                    .all(|(a, b)| a.iter().zip(&x).map(|(p, q)| p * q).sum::<i64>() <= t * b)
                {
                    count += 1;
                }
                let mut k = 0;
                while k < d {
                    x[k] += 1;
                    if x[k] <= hi[k] {
                        break;
                    }
                    x[k] = 0;
                    k += 1;
                }
                if k == d {
                    break;
                }
            }
            count
        })
        .collect();
    let mut diffs = counts;
    for _ in 0..d {
        diffs = diffs.windows(2).map(|w| w[1] - w[0]).collect();
    }
    diffs[0]
}

/// Supporting hyperplanes `a.x <= b` through `d` affinely independent points.
fn facet_inequalities(points: &[Vec<i64>]) -> Vec<(Vec<i64>, i64)> {
    let d = points[0].len();
    let mut out = Vec::new();
    let idx: Vec<usize> = (0..points.len()).collect();
    for combo in combinations(&idx, d) {
        let base = &points[combo[0]];
        let diffs: Vec<Vec<i64>> = combo[1..]
            .iter()
            .map(|&k| points[k].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let normal: Vec<i64> = match d {
            1 => vec![1],
            2 => vec![-diffs[0][1], diffs[0][0]],
            3 => {
                let (u, v) = (&diffs[0], &diffs[1]);
                vec![
                    u[1] * v[2] - u[2] * v[1],
                    u[2] * v[0] - u[0] * v[2],
                    u[0] * v[1] - u[1] * v[0],
                ]
            }
            _ => unreachable!(),
        };
        if normal.iter().all(|&x| x == 0) {
            continue;
        }
        let b: i64 = normal.iter().zip(base).map(|(a, x)| a * x).sum();
        let sides: Vec<i64> = points
            .iter()
            .map(|p| normal.iter().zip(p).map(|(a, x)| a * x).sum::<i64>() - b)
            .collect();
        if sides.iter().all(|&s| s <= 0) {
            out.push((normal, b));
        } else if sides.iter().all(|&s| s >= 0) {
            out.push((normal.iter().map(|x| -x).collect(), -b));
        }
    }
    out
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

fn arb_point_set() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=3).prop_flat_map(|d| {
        prop::collection::vec(prop::collection::vec(0i64..=3, d), 0..5).prop_map(move |extra| {
            let mut pts = vec![vec![0; d]];
            for k in 0..d {
                let mut e = vec![0; d];
                e[k] = 1;
                pts.push(e);
            }
            pts.extend(extra);
            pts
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn closure_matches_saturation(c in arb_statements()) {
        prop_assert_eq!(closure(&c), closure_bruteforce(&c));
    }

    #[test]
    fn closure_is_a_closure_operator(c in arb_statements(), d in arb_statements()) {
        let cc = closure(&c);
        for s in c.iter() {
            prop_assert!(cc.contains(s));
        }
        let again = statements(4, cc.iter().cloned().collect());
        prop_assert_eq!(&closure(&again), &cc);
        let union = statements(4, c.iter().chain(d.iter()).cloned().collect());
        prop_assert!(cc.is_subset(&closure(&union)));
        prop_assert!(cc.is_split_closed());
    }

    #[test]
    fn order_and_closure_respect_relabeling(
        c in arb_statements(),
        sigma in arb_permutation(4),
        a in prop::sample::select(universe4()),
        b in prop::sample::select(universe4()),
    ) {
        prop_assert_eq!(a.leq(&b), a.relabel(&sigma).leq(&b.relabel(&sigma)));
        let moved = statements(4, c.iter().map(|p| p.relabel(&sigma)).collect());
        prop_assert_eq!(closure(&moved), closure(&c).relabel(&sigma));
    }

    #[test]
    fn splitting_fixpoint_ignores_statement_order(
        c in subsequence(universe4(), 1..6).prop_shuffle(),
        seed in prop::sample::select(enumerate(4, 1)),
    ) {
        let mut current = seed.clone();
        loop {
            let next = c.iter().fold(current.clone(), |acc, g| split_by(&acc, g));
            if next == current {
                break;
            }
            current = next;
        }
        prop_assert_eq!(current, fixpoint_split(&seed, &statements(4, c.clone())));
    }

    #[test]
    fn mobius_round_trip(nums in prop::collection::vec(0i64..100, 1..20), which in 0usize..4) {
        let shape = StateShape::parse(["2,2", "3,3", "2,3,3", "2,2,2,2"][which]).unwrap();
        let p = rational_tensor(&shape, &nums);
        prop_assert_eq!(cdf_to_prob(&prob_to_cdf(&p)), p.clone());
        prop_assert_eq!(prob_to_cdf(&cdf_to_prob(&p)), p);
    }

    #[test]
    fn triangulation_volume_matches_ehrhart(points in arb_point_set()) {
        let dedup: Vec<Vec<i64>> = {
            let mut seen = HashSet::new();
            points.into_iter().filter(|p| seen.insert(p.clone())).collect()
        };
        let poly = LatticePolytope::new(dedup.iter().map(|p| p.iter().map(|&x| i128::from(x)).collect()).collect());
        prop_assert_eq!(poly.normalized_volume() as i64, ehrhart_normalized_volume(&dedup));
        let reversed: Vec<usize> = (0..dedup.len()).rev().collect();
        prop_assert_eq!(poly.normalized_volume_in_order(&reversed), poly.normalized_volume());
    }
}
