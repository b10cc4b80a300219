//! Connected and disconnected ground sets relative to a split-closed ideal.

use std::collections::BTreeSet;

use crate::closure::{max_element_for, SplitClosedIdeal, StatementSet};
use crate::partition::{GroundSet, PartialSetPartition};

/// `{ |pi| : pi ∈ ideal }`.
pub fn disconnected_sets(ideal: &SplitClosedIdeal) -> BTreeSet<GroundSet> {
    ideal.iter().map(|pi| pi.ground_set()).collect()
}

/// The unique maximal element of `ideal ∪ {d}` with ground set `d`; its
/// blocks are the maximal connected subsets of `d`.
pub fn max_connected_decomposition(d: GroundSet, ideal: &SplitClosedIdeal) -> PartialSetPartition {
    max_element_for(d, &ideal.maximal_generators())
}

/// Cached connectivity data for one ideal.
#[derive(Clone, Debug)]
pub struct Connectivity {
    n: usize,
    generators: StatementSet,
    disconnected: BTreeSet<GroundSet>,
}

impl Connectivity {
    pub fn new(ideal: &SplitClosedIdeal) -> Self {
        Connectivity {
            n: ideal.n(),
            generators: ideal.maximal_generators(),
            disconnected: disconnected_sets(ideal),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_disconnected(&self, d: GroundSet) -> bool {
        self.disconnected.contains(&d)
    }

    pub fn disconnected(&self) -> &BTreeSet<GroundSet> {
        &self.disconnected
    }

    /// Nonempty connected sets, ordered by size and then lexicographically.
    pub fn connected_sets(&self) -> Vec<GroundSet> {
        let mut sets: Vec<GroundSet> = GroundSet::full(self.n)
            .subsets()
            .filter(|s| !s.is_empty() && !self.is_disconnected(*s))
            .collect();
        sets.sort_by(|a, b| a.len().cmp(&b.len()).then(a.lex_cmp(*b)));
        sets
    }

    /// Decomposition of `d` into maximal connected sets.
    pub fn decompose(&self, d: GroundSet) -> PartialSetPartition {
        if d.is_empty() {
            return PartialSetPartition::empty(self.n);
        }
        if !self.is_disconnected(d) {
            return PartialSetPartition::one_block(self.n, d);
        }
        max_element_for(d, &self.generators)
    }
}
