//! Splitting, split closure and the membership test for split closures.
//!
//! A statement set `C` generates the smallest order ideal of the statements
//! (partial set partitions with at least two blocks) that is also closed under
//! splitting. [`member`] decides `sigma ∈ closure(C)` without materializing
//! the closure: for a ground set `D` covered by some statement, the splitting
//! fixpoint `D^C` is the unique maximal element of the closure with ground set
//! `D`, and `sigma` is a member iff `sigma <= |sigma|^C`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{enumerate, GroundSet, PartialSetPartition, Permutation};

/// A finite list of independence statements over `[n]`. Duplicates collapse;
/// every statement has at least two blocks.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct StatementSet {
    n: usize,
    statements: BTreeSet<PartialSetPartition>,
}

impl StatementSet {
    pub fn new<I>(n: usize, statements: I) -> Result<Self>
    where
        I: IntoIterator<Item = PartialSetPartition>,
    {
        let mut set = BTreeSet::new();
        for s in statements {
            if s.n() != n {
                return Err(Error::SizeMismatch {
                    left: n,
                    right: s.n(),
                });
            }
            if s.num_blocks() < 2 {
                return Err(Error::TrivialStatement(s.to_text()));
            }
            set.insert(s);
        }
        Ok(StatementSet { n, statements: set })
    }

    pub fn empty(n: usize) -> Self {
        StatementSet {
            n,
            statements: BTreeSet::new(),
        }
    }

    /// Comma-separated partitions, e.g. `"1|23,2|3"`. Blank input is the
    /// empty set.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let parts = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| PartialSetPartition::parse(s, n));
        let parsed: Vec<_> = parts.collect::<Result<_>>()?;
        Self::new(n, parsed)
    }

    /// Inverse of [`parse`](Self::parse).
    pub fn to_text(&self) -> String {
        self.statements
            .iter()
            .map(|s| s.to_text())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.statements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.statements.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &PartialSetPartition> {
        self.statements.iter()
    }

    pub fn contains(&self, pi: &PartialSetPartition) -> bool {
        self.statements.contains(pi)
    }

    pub fn to_json(&self) -> StatementSetJson {
        StatementSetJson {
            schema: 1,
            n: self.n,
            statements: self.statements.iter().map(|s| s.block_lists()).collect(),
        }
    }

    pub fn from_json(json: &StatementSetJson) -> Result<Self> {
        let statements = json
            .statements
            .iter()
            .map(|blocks| {
                let blocks = blocks
                    .iter()
                    .map(|b| {
                        if let Some(&bad) = b.iter().find(|&&v| v == 0 || v > json.n) {
                            return Err(Error::Parse {
                                input: format!("{b:?}"),
                                reason: format!("element {bad} outside 1..{}", json.n),
                            });
                        }
                        Ok(GroundSet::from_elements(b.iter().copied()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                PartialSetPartition::new(json.n, blocks)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(json.n, statements)
    }
}

/// JSON wire form of a statement set: `{"schema":1,"n":3,"statements":[[[1],[2,3]]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatementSetJson {
    #[serde(default = "schema_one")]
    pub schema: u32,
    pub n: usize,
    pub statements: Vec<Vec<Vec<usize>>>,
}

fn schema_one() -> u32 {
    1
}

/// A split-closed order ideal of the statements over `[n]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SplitClosedIdeal {
    n: usize,
    elements: BTreeSet<PartialSetPartition>,
}

impl SplitClosedIdeal {
    pub fn empty(n: usize) -> Self {
        SplitClosedIdeal {
            n,
            elements: BTreeSet::new(),
        }
    }

    /// Wraps a set that is already known to be split closed; rejects it
    /// otherwise.
    pub fn from_elements(n: usize, elements: BTreeSet<PartialSetPartition>) -> Result<Self> {
        let candidate = SplitClosedIdeal { n, elements };
        if candidate
            .elements
            .iter()
            .any(|e| e.n() != n || e.num_blocks() < 2)
        {
            return Err(Error::Input(
                "ideal elements must be statements over [n]".into(),
            ));
        }
        if !candidate.is_split_closed() {
            return Err(Error::Input(
                "element set is not a split-closed order ideal".into(),
            ));
        }
        Ok(candidate)
    }

    /// Image under a relabeling of the variables.
    pub fn relabel(&self, sigma: &Permutation) -> Self {
        let elements = self.elements.iter().map(|e| e.relabel(sigma)).collect();
        SplitClosedIdeal {
            n: self.n,
            elements,
        }
    }

    pub(crate) fn from_elements_unchecked(
        n: usize,
        elements: BTreeSet<PartialSetPartition>,
    ) -> Self {
        SplitClosedIdeal { n, elements }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, pi: &PartialSetPartition) -> bool {
        self.elements.contains(pi)
    }

    pub fn elements(&self) -> &BTreeSet<PartialSetPartition> {
        &self.elements
    }

    pub fn iter(&self) -> impl Iterator<Item = &PartialSetPartition> {
        self.elements.iter()
    }

    pub fn is_subset(&self, other: &SplitClosedIdeal) -> bool {
        self.elements.is_subset(&other.elements)
    }

    /// Checks downward closure within the statements and closure under
    /// splitting.
    pub fn is_split_closed(&self) -> bool {
        let universe = enumerate(self.n, 2);
        let downward = self.elements.iter().all(|e| {
            universe
                .iter()
                .filter(|x| x.leq(e))
                .all(|x| self.elements.contains(x))
        });
        downward
            && self.elements.iter().all(|pi| {
                self.elements
                    .iter()
                    .filter(|t| t.num_blocks() == 2)
                    .all(|tau| match splits(tau, pi).expect("two blocks") {
                        Some(_) => self.elements.contains(&split_by(pi, tau)),
                        None => true,
                    })
            })
    }

    /// The maximal elements (an antichain generating the ideal).
    pub fn maximal_generators(&self) -> StatementSet {
        maximal_generators(self)
    }
}

/// Position of the block of `pi` equal to `tau_1 ∪ tau_2`, if any.
pub fn splits(tau: &PartialSetPartition, pi: &PartialSetPartition) -> Result<Option<usize>> {
    if tau.num_blocks() != 2 {
        return Err(Error::NotTwoBlock(tau.to_text()));
    }
    let ground = tau.ground_set();
    Ok(pi.blocks().iter().position(|b| *b == ground))
}

/// `pi^gamma`: every block of `pi` fully covered by `|gamma|` is replaced by
/// the blocks of `gamma ∩ block`; other blocks are kept.
pub fn split_by(pi: &PartialSetPartition, gamma: &PartialSetPartition) -> PartialSetPartition {
    let gamma_ground = gamma.ground_set();
    let mut blocks = Vec::with_capacity(pi.num_blocks() + gamma.num_blocks());
    for &b in pi.blocks() {
        if b.is_subset(gamma_ground) {
            blocks.extend(gamma.blocks().iter().map(|g| g.intersection(b)));
        } else {
            blocks.push(b);
        }
    }
    PartialSetPartition::from_blocks_unchecked(pi.n(), blocks)
}

/// Iterates the splitting map (all statements of `c`, in canonical order)
/// from `seed` until it stabilizes.
pub fn fixpoint_split(seed: &PartialSetPartition, c: &StatementSet) -> PartialSetPartition {
    let mut current = seed.clone();
    loop {
        let next = c.iter().fold(current.clone(), |acc, s| split_by(&acc, s));
        if next == current {
            return current;
        }
        current = next;
    }
}

/// `D^C`: the unique maximal element of the closure with ground set `d`, or
/// the one-block partition `d` when `d` is connected.
pub fn max_element_for(d: GroundSet, c: &StatementSet) -> PartialSetPartition {
    fixpoint_split(&PartialSetPartition::one_block(c.n(), d), c)
}

/// Whether `sigma` lies in the split closure of `c`.
pub fn member(sigma: &PartialSetPartition, c: &StatementSet) -> bool {
    if sigma.num_blocks() < 2 {
        return false;
    }
    let ground = sigma.ground_set();
    if !c.iter().any(|pi| ground.is_subset(pi.ground_set())) {
        return false;
    }
    sigma.leq(&max_element_for(ground, c))
}

/// Materializes the split closure by testing every statement over `[n]`.
pub fn closure(c: &StatementSet) -> SplitClosedIdeal {
    if c.is_empty() {
        return SplitClosedIdeal::empty(c.n());
    }
    let elements = enumerate(c.n(), 2)
        .into_iter()
        .filter(|sigma| member(sigma, c))
        .collect();
    SplitClosedIdeal::from_elements_unchecked(c.n(), elements)
}

/// Saturation oracle: alternately add everything below the current set and
/// every splitting `pi^tau`, until nothing changes.
pub fn closure_bruteforce(c: &StatementSet) -> SplitClosedIdeal {
    let universe = enumerate(c.n(), 2);
    let mut current: BTreeSet<PartialSetPartition> = c.iter().cloned().collect();
    loop {
        let mut next = current.clone();
        for x in &universe {
            if current.iter().any(|e| x.leq(e)) {
                next.insert(x.clone());
            }
        }
        let two_block: Vec<_> = next
            .iter()
            .filter(|t| t.num_blocks() == 2)
            .cloned()
            .collect();
        let snapshot: Vec<_> = next.iter().cloned().collect();
        for pi in &snapshot {
            for tau in &two_block {
                if let Some(i) = splits(tau, pi).expect("two blocks") {
                    let mut blocks = pi.blocks().to_vec();
                    blocks.remove(i);
                    blocks.extend_from_slice(tau.blocks());
                    next.insert(PartialSetPartition::from_blocks_unchecked(pi.n(), blocks));
                }
            }
        }
        if next == current {
            return SplitClosedIdeal::from_elements_unchecked(c.n(), current);
        }
        current = next;
    }
}

/// The antichain of maximal elements of `ideal`.
pub fn maximal_generators(ideal: &SplitClosedIdeal) -> StatementSet {
    let maxima = ideal
        .iter()
        .filter(|x| !ideal.iter().any(|y| y != *x && x.leq(y)))
        .cloned();
    StatementSet::new(ideal.n(), maxima).expect("ideal elements are statements")
}
