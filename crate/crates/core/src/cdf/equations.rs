//! Defining equations of a model: the factorization binomials in cdf
//! coordinates and the 2x2 flattening minors in both coordinate systems.

use std::collections::HashSet;

use num_traits::{One, Zero};
use serde::Serialize;

use super::connectivity::Connectivity;
use super::tensor::{IndexVector, Rational, RationalTensor, StateShape};
use crate::closure::SplitClosedIdeal;
use crate::partition::{GroundSet, PartialSetPartition};

/// `q_lead - prod q_factor`: the factorization of a cdf coordinate with
/// disconnected support over the maximal connected pieces of that support.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FactorEquation {
    pub lead: IndexVector,
    pub factors: Vec<IndexVector>,
}

impl FactorEquation {
    pub fn evaluate(&self, q: &RationalTensor) -> Rational {
        let product = self
            .factors
            .iter()
            .fold(Rational::one(), |acc, j| acc * q.get(j));
        q.get(&self.lead) - product
    }

    /// `q_123 - q_12*q_3`.
    pub fn render(&self, shape: &StateShape) -> String {
        let factors: Vec<String> = self.factors.iter().map(|j| shape.label(j)).collect();
        format!("{} - {}", shape.label(&self.lead), factors.join("*"))
    }

    pub fn to_json(&self) -> FactorEquationJson {
        FactorEquationJson {
            lead: self.lead.values().to_vec(),
            factors: self.factors.iter().map(|j| j.values().to_vec()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorEquationJson {
    pub lead: Vec<usize>,
    pub factors: Vec<Vec<usize>>,
}

/// One equation `f_i` per index vector whose support is disconnected, in
/// row-major order of the lead index. Together they generate the
/// inhomogeneous model ideal in cdf coordinates.
pub fn maximal_equations(ideal: &SplitClosedIdeal, shape: &StateShape) -> Vec<FactorEquation> {
    assert_eq!(ideal.n(), shape.n(), "ideal and shape disagree on n");
    let conn = Connectivity::new(ideal);
    shape
        .indices()
        .filter_map(|i| {
            let support = shape.support(&i);
            if !conn.is_disconnected(support) {
                return None;
            }
            let pieces = conn.decompose(support);
            let factors = pieces
                .blocks()
                .iter()
                .map(|b| shape.restrict(&i, *b))
                .collect();
            Some(FactorEquation { lead: i, factors })
        })
        .collect()
}

/// A quadratic binomial `x_a x_b - x_c x_d` over the entries of a tensor.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Minor<K> {
    pub plus: (K, K),
    pub minus: (K, K),
}

/// A probability coordinate with marginalized positions (`None` = `+`).
pub type MarginalIndex = Vec<Option<usize>>;

pub type CdfMinor = Minor<IndexVector>;
pub type ProbMinor = Minor<MarginalIndex>;

impl CdfMinor {
    pub fn evaluate(&self, q: &RationalTensor) -> Rational {
        q.get(&self.plus.0) * q.get(&self.plus.1) - q.get(&self.minus.0) * q.get(&self.minus.1)
    }

    pub fn render(&self, shape: &StateShape) -> String {
        format!(
            "{}*{} - {}*{}",
            shape.label(&self.plus.0),
            shape.label(&self.plus.1),
            shape.label(&self.minus.0),
            shape.label(&self.minus.1)
        )
    }
}

impl ProbMinor {
    pub fn evaluate(&self, p: &RationalTensor) -> Rational {
        let m = |k: &MarginalIndex| marginal_value(p, k);
        m(&self.plus.0) * m(&self.plus.1) - m(&self.minus.0) * m(&self.minus.1)
    }

    pub fn render(&self) -> String {
        let label = |k: &MarginalIndex| {
            let body: String = k
                .iter()
                .map(|x| match x {
                    Some(v) => v.to_string(),
                    None => "+".into(),
                })
                .collect();
            format!("p_{{{body}}}")
        };
        format!(
            "{}*{} - {}*{}",
            label(&self.plus.0),
            label(&self.plus.1),
            label(&self.minus.0),
            label(&self.minus.1)
        )
    }
}

/// Sum of `p` over all completions of the `+` positions of `k`.
pub fn marginal_value(p: &RationalTensor, k: &MarginalIndex) -> Rational {
    p.shape()
        .indices()
        .filter(|i| {
            k.iter()
                .zip(i.values())
                .all(|(want, &got)| want.is_none_or(|w| w == got))
        })
        .fold(Rational::zero(), |acc, i| acc + p.get(&i))
}

/// Joint states of the variables in `set` (ascending variables, row-major).
fn joint_states(shape: &StateShape, set: GroundSet) -> Vec<Vec<(usize, usize)>> {
    let mut out: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    for v in set.iter() {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (1..=shape.states(v)).map(move |s| {
                    let mut next = prefix.clone();
                    next.push((v, s));
                    next
                })
            })
            .collect();
    }
    out
}

/// The flattenings of the `k`-way tensor indexed by `pi`: one per block
/// (that block's joint states against the joint states of the rest), or
/// just the first block when `k = 2`. Entries are assignments of states to
/// the variables of `|pi|`.
fn flattenings(pi: &PartialSetPartition, shape: &StateShape) -> Vec<Vec<Vec<Vec<(usize, usize)>>>> {
    let ground = pi.ground_set();
    let row_blocks = if pi.num_blocks() == 2 {
        1
    } else {
        pi.num_blocks()
    };
    pi.blocks()[..row_blocks]
        .iter()
        .map(|&b| {
            let rows = joint_states(shape, b);
            let cols = joint_states(shape, ground.difference(b));
            rows.iter()
                .map(|r| {
                    cols.iter()
                        .map(|c| {
                            let mut cell: Vec<(usize, usize)> =
                                r.iter().chain(c).copied().collect();
                            cell.sort_unstable();
                            cell
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

fn minors_of<K, F>(pi: &PartialSetPartition, shape: &StateShape, key: F) -> Vec<Minor<K>>
where
    K: Clone + Eq + Ord + std::hash::Hash,
    F: Fn(&[(usize, usize)]) -> K,
{
    assert!(
        pi.num_blocks() >= 2,
        "minors need a statement with at least two blocks"
    );
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for matrix in flattenings(pi, shape) {
        let m: Vec<Vec<K>> = matrix
            .iter()
            .map(|row| row.iter().map(|cell| key(cell)).collect())
            .collect();
        let cols = m.first().map_or(0, Vec::len);
        for r1 in 0..m.len() {
            for r2 in r1 + 1..m.len() {
                for c1 in 0..cols {
                    for c2 in c1 + 1..cols {
                        let plus = (m[r1][c1].clone(), m[r2][c2].clone());
                        let minus = (m[r1][c2].clone(), m[r2][c1].clone());
                        let norm = |(a, b): &(K, K)| {
                            if a <= b {
                                (a.clone(), b.clone())
                            } else {
                                (b.clone(), a.clone())
                            }
                        };
                        let (x, y) = (norm(&plus), norm(&minus));
                        let fingerprint = if x <= y { (x, y) } else { (y, x) };
                        if seen.insert(fingerprint) {
                            out.push(Minor { plus, minus });
                        }
                    }
                }
            }
        }
    }
    out
}

/// 2x2 minors of the flattenings of `Q_pi`: the cdf tensor with every
/// variable outside `|pi|` pinned to its maximal state.
pub fn minor_equations(pi: &PartialSetPartition, shape: &StateShape) -> Vec<CdfMinor> {
    minors_of(pi, shape, |cell| {
        let mut values = shape.sizes().to_vec();
        for &(v, s) in cell {
            values[v - 1] = s;
        }
        IndexVector(values)
    })
}

/// 2x2 minors of the flattenings of `P_pi`: the probability tensor with
/// every variable outside `|pi|` summed out.
pub fn minor_equations_prob(pi: &PartialSetPartition, shape: &StateShape) -> Vec<ProbMinor> {
    minors_of(pi, shape, |cell| {
        let mut values: MarginalIndex = vec![None; shape.n()];
        for &(v, s) in cell {
            values[v - 1] = Some(s);
        }
        values
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::{closure, StatementSet};

    fn ideal(text: &str, n: usize) -> SplitClosedIdeal {
        closure(&StatementSet::parse(text, n).unwrap())
    }

    fn rendered(eqs: &[FactorEquation], shape: &StateShape) -> Vec<String> {
        eqs.iter().map(|e| e.render(shape)).collect()
    }

    #[test]
    fn one_statement_on_three_binary() {
        let shape = StateShape::binary(3);
        let mut got = rendered(&maximal_equations(&ideal("12|3", 3), &shape), &shape);
        got.sort();
        assert_eq!(
            got,
            ["q_123 - q_12*q_3", "q_13 - q_1*q_3", "q_23 - q_2*q_3"]
        );
    }

    #[test]
    fn two_statement_example_equations() {
        let shape = StateShape::binary(4);
        let got = rendered(&maximal_equations(&ideal("1|2|34", 4), &shape), &shape);
        // ten disconnected supports; q_134 - q_1*q_34 completes the nine
        // listed alongside the parametrization matrix
        assert_eq!(got.len(), 10);
        assert!(got.iter().any(|g| g == "q_134 - q_1*q_34"));
        for want in [
            "q_12 - q_1*q_2",
            "q_13 - q_1*q_3",
            "q_14 - q_1*q_4",
            "q_23 - q_2*q_3",
            "q_24 - q_2*q_4",
            "q_234 - q_2*q_34",
            "q_123 - q_1*q_2*q_3",
            "q_124 - q_1*q_2*q_4",
            "q_1234 - q_1*q_2*q_34",
        ] {
            assert!(got.iter().any(|g| g == want), "missing {want}: {got:?}");
        }
        assert!(maximal_equations(&SplitClosedIdeal::empty(4), &shape).is_empty());
    }

    #[test]
    fn ternary_equations_count() {
        let shape = StateShape::parse("2,3,3").unwrap();
        let eqs = maximal_equations(&ideal("2|3", 3), &shape);
        assert_eq!(eqs.len(), 4);
        for e in &eqs {
            let v = e.lead.values();
            assert_eq!(v[0], 2);
            assert_eq!(
                e.factors,
                vec![IndexVector(vec![2, v[1], 3]), IndexVector(vec![2, 3, v[2]])]
            );
        }
    }

    #[test]
    fn minor_counts() {
        let shape = StateShape::binary(4);
        let pi = PartialSetPartition::parse("12|3", 4).unwrap();
        let minors = minor_equations(&pi, &shape);
        assert_eq!(minors.len(), 6);
        // the printed 4x2 matrix in support labels
        let first = minors[0].render(&shape);
        assert_eq!(first, "q_123*q_1 - q_12*q_13");
        let ternary = StateShape::parse("2,3,3").unwrap();
        let pi = PartialSetPartition::parse("2|3", 3).unwrap();
        assert_eq!(minor_equations(&pi, &ternary).len(), 9);
        let prob = minor_equations_prob(&pi, &ternary);
        assert_eq!(prob.len(), 9);
        assert_eq!(prob[0].render(), "p_{+11}*p_{+22} - p_{+12}*p_{+21}");
        let prob4 = minor_equations_prob(&PartialSetPartition::parse("12|3", 4).unwrap(), &shape);
        assert_eq!(prob4.len(), 6);
        assert_eq!(prob4[0].render(), "p_{111+}*p_{122+} - p_{112+}*p_{121+}");
    }

    #[test]
    fn three_block_minors_cover_every_mode() {
        let shape = StateShape::binary(3);
        let pi = PartialSetPartition::parse("1|2|3", 3).unwrap();
        // each mode flattening is 2x4 with C(4,2) = 6 minors, some shared
        let minors = minor_equations(&pi, &shape);
        assert!(minors.len() > 6 && minors.len() <= 18);
    }
}
