//! Partial set partitions of `[n]` and the poset they form.
//!
//! A partial set partition is a family of pairwise disjoint nonempty blocks
//! whose union (the ground set) need not be all of `[n]`. Variables are
//! 1-based everywhere in the public API; internally a block is a bitmask with
//! bit `v - 1` standing for variable `v`, so `n` is capped at 64.
//!
//! Order convention: `tau <= pi` when `pi` is obtained from `tau` by adding
//! elements and splitting blocks. The bottom is the empty partition and the
//! top of the statements with at least two blocks is `1|2|...|n`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported universe.
pub const MAX_N: usize = 64;

/// A subset of `[n]` stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct GroundSet(u64);

impl GroundSet {
    pub const EMPTY: GroundSet = GroundSet(0);

    pub fn from_bits(bits: u64) -> Self {
        GroundSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_N, "universe size {n} exceeds {MAX_N}");
        if n == MAX_N {
            GroundSet(u64::MAX)
        } else {
            GroundSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        assert!((1..=MAX_N).contains(&v), "variable {v} out of range");
        GroundSet(1u64 << (v - 1))
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        elements.into_iter().fold(GroundSet::EMPTY, |acc, v| {
            acc.union(GroundSet::singleton(v))
        })
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=MAX_N).contains(&v) && self.0 & (1u64 << (v - 1)) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: GroundSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: GroundSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: GroundSet) -> Self {
        GroundSet(self.0 | other.0)
    }

    pub fn intersection(self, other: GroundSet) -> Self {
        GroundSet(self.0 & other.0)
    }

    pub fn difference(self, other: GroundSet) -> Self {
        GroundSet(self.0 & !other.0)
    }

    /// Smallest element, if any.
    pub fn min_element(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    /// Largest element, if any.
    pub fn max_element(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    /// Elements in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(v + 1)
        })
    }

    /// All subsets of `self` (including the empty set), in increasing bitmask
    /// order.
    pub fn subsets(self) -> impl Iterator<Item = GroundSet> {
        let mask = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask {
                None
            } else {
                Some(cur.wrapping_sub(mask) & mask)
            };
            Some(GroundSet(cur))
        })
    }

    /// Lexicographic comparison of the ascending element lists.
    pub fn lex_cmp(self, other: GroundSet) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let p = diff.trailing_zeros();
        if self.0 & (1u64 << p) != 0 {
            // `self` has the element; `other` either stops here (prefix) or
            // continues with a larger element.
            if other.0 >> p == 0 {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        } else if self.0 >> p == 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    /// Text form: digits for sets inside `[9]`, braces otherwise.
    pub fn to_text(self, compact: bool) -> String {
        if compact {
            self.iter().map(|v| char::from(b'0' + v as u8)).collect()
        } else {
            let inner: Vec<String> = self.iter().map(|v| v.to_string()).collect();
            format!("{{{}}}", inner.join(","))
        }
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("{}");
        }
        let compact = self.max_element().is_some_and(|m| m <= 9);
        f.write_str(&self.to_text(compact))
    }
}

impl Ord for GroundSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lex_cmp(*other)
    }
}

impl PartialOrd for GroundSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An unordered family of disjoint nonempty blocks of `[n]`, stored in
/// canonical form (blocks sorted by their minimum element).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialSetPartition {
    n: usize,
    blocks: Vec<GroundSet>,
}

impl PartialSetPartition {
    /// Validating constructor.
    pub fn new(n: usize, blocks: Vec<GroundSet>) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::SizeOutOfRange {
                n,
                range: format!("0..={MAX_N}"),
            });
        }
        let universe = GroundSet::full(n);
        let mut seen = GroundSet::EMPTY;
        for b in &blocks {
            let text = b.to_text(n <= 9);
            if b.is_empty() {
                return Err(Error::Parse {
                    input: format!("{blocks:?}"),
                    reason: "empty block".into(),
                });
            }
            if !b.is_subset(universe) {
                return Err(Error::Parse {
                    input: text,
                    reason: format!("block has an element outside 1..{n}"),
                });
            }
            if !b.is_disjoint(seen) {
                return Err(Error::Parse {
                    input: text,
                    reason: "block overlaps an earlier block".into(),
                });
            }
            seen = seen.union(*b);
        }
        Ok(Self::from_blocks_unchecked(n, blocks))
    }

    /// Canonicalizes without validation. Empty blocks are dropped.
    pub(crate) fn from_blocks_unchecked(n: usize, mut blocks: Vec<GroundSet>) -> Self {
        blocks.retain(|b| !b.is_empty());
        blocks.sort_unstable_by_key(|b| b.bits().trailing_zeros());
        PartialSetPartition { n, blocks }
    }

    /// The empty partial set partition, bottom of the poset.
    pub fn empty(n: usize) -> Self {
        PartialSetPartition {
            n,
            blocks: Vec::new(),
        }
    }

    /// The partition with the single block `set` (empty if `set` is empty).
    pub fn one_block(n: usize, set: GroundSet) -> Self {
        Self::from_blocks_unchecked(n, vec![set])
    }

    /// `1|2|...` over the elements of `set`.
    pub fn singletons(n: usize, set: GroundSet) -> Self {
        Self::from_blocks_unchecked(n, set.iter().map(GroundSet::singleton).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[GroundSet] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Union of the blocks.
    pub fn ground_set(&self) -> GroundSet {
        self.blocks
            .iter()
            .fold(GroundSet::EMPTY, |acc, b| acc.union(*b))
    }

    /// `pi ∩ S` with empty intersections dropped.
    pub fn restrict(&self, set: GroundSet) -> Self {
        Self::from_blocks_unchecked(
            self.n,
            self.blocks.iter().map(|b| b.intersection(set)).collect(),
        )
    }

    /// Position of the block containing `v`.
    pub fn block_of(&self, v: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(v))
    }

    /// Parses `"1|23"` (compact, `n <= 9`) or `"{1}|{2,3}"` (bracketed). The
    /// empty string and `"∅"` denote the empty partition.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed == "∅" {
            return Ok(Self::empty(n));
        }
        let bracketed = trimmed.contains('{');
        let err = |input: &str, reason: &str| Error::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let mut blocks = Vec::new();
        for part in trimmed.split('|') {
            let part = part.trim();
            let elements: Vec<usize> = if bracketed {
                let inner = part
                    .strip_prefix('{')
                    .and_then(|p| p.strip_suffix('}'))
                    .ok_or_else(|| err(part, "expected a `{...}` block"))?;
                if inner.trim().is_empty() {
                    return Err(err(part, "empty block"));
                }
                inner
                    .split(',')
                    .map(|tok| {
                        tok.trim()
                            .parse::<usize>()
                            .map_err(|_| err(part, "block contains a non-integer"))
                    })
                    .collect::<Result<_>>()?
            } else {
                if part.is_empty() {
                    return Err(err(part, "empty block"));
                }
                part.chars()
                    .filter(|c| !c.is_whitespace())
                    .map(|c| {
                        c.to_digit(10)
                            .map(|d| d as usize)
                            .ok_or_else(|| err(part, "compact blocks use single digits 1-9"))
                    })
                    .collect::<Result<_>>()?
            };
            let mut block = GroundSet::EMPTY;
            for v in elements {
                if v == 0 || v > n {
                    return Err(err(part, &format!("element {v} outside 1..{n}")));
                }
                let s = GroundSet::singleton(v);
                if !block.is_disjoint(s) {
                    return Err(err(part, &format!("element {v} repeated in block")));
                }
                block = block.union(s);
            }
            if !block.is_disjoint(blocks.iter().fold(GroundSet::EMPTY, |a, b| a.union(*b))) {
                return Err(err(part, "overlapping blocks"));
            }
            blocks.push(block);
        }
        Ok(Self::from_blocks_unchecked(n, blocks))
    }

    /// Inverse of [`parse`](Self::parse): compact form when `n <= 9`.
    pub fn to_text(&self) -> String {
        if self.blocks.is_empty() {
            return "∅".into();
        }
        let compact = self.n <= 9;
        self.blocks
            .iter()
            .map(|b| b.to_text(compact))
            .collect::<Vec<_>>()
            .join("|")
    }

    /// Ascending element lists of the blocks.
    pub fn block_lists(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|b| b.iter().collect()).collect()
    }

    /// Rank in the graded poset: `0` for the empty partition, otherwise
    /// `#ground + #blocks - 1`.
    pub fn rank(&self) -> usize {
        if self.blocks.is_empty() {
            0
        } else {
            self.ground_set().len() + self.blocks.len() - 1
        }
    }

    /// `self <= pi`: ground sets nest and every block of `pi ∩ |self|` lies in
    /// a block of `self`.
    pub fn leq(&self, pi: &PartialSetPartition) -> bool {
        let ground = self.ground_set();
        if !ground.is_subset(pi.ground_set()) {
            return false;
        }
        pi.blocks.iter().all(|b| {
            let part = b.intersection(ground);
            part.is_empty() || self.blocks.iter().any(|t| part.is_subset(*t))
        })
    }

    /// Whether `self` covers `tau`: `self` arises from `tau` by adding one new
    /// element to an existing block, or by splitting one block in two.
    pub fn covers(&self, tau: &PartialSetPartition) -> bool {
        let ground = self.ground_set();
        let tau_ground = tau.ground_set();
        if !tau_ground.is_subset(ground) {
            return false;
        }
        let added = ground.difference(tau_ground);
        if tau.is_empty() {
            return self.blocks.len() == 1 && added.len() == 1;
        }
        match added.len() {
            0 => {
                self.blocks.len() == tau.blocks.len() + 1
                    && self
                        .blocks
                        .iter()
                        .all(|b| tau.blocks.iter().any(|t| b.is_subset(*t)))
            }
            1 => {
                let x = added.min_element().expect("one element");
                let host = self.blocks[self.block_of(x).expect("x in ground")];
                host.len() >= 2 && self.restrict(tau_ground) == *tau
            }
            _ => false,
        }
    }

    /// Common refinement of two partitions with the same ground set.
    pub fn meet_same_support(&self, mu: &PartialSetPartition) -> Result<Self> {
        let (a, b) = (self.ground_set(), mu.ground_set());
        if a != b {
            return Err(Error::SupportMismatch {
                left: a.to_string(),
                right: b.to_string(),
            });
        }
        let blocks = self
            .blocks
            .iter()
            .flat_map(|x| mu.blocks.iter().map(move |y| x.intersection(*y)))
            .collect();
        Ok(Self::from_blocks_unchecked(self.n, blocks))
    }

    /// Applies a relabeling of the variables.
    pub fn relabel(&self, sigma: &Permutation) -> Self {
        assert_eq!(sigma.len(), self.n, "permutation size differs from n");
        Self::from_blocks_unchecked(
            self.n,
            self.blocks.iter().map(|b| sigma.apply(*b)).collect(),
        )
    }
}

impl Ord for PartialSetPartition {
    /// Rank first, then lexicographic on the canonical block lists.
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank()
            .cmp(&other.rank())
            .then_with(|| self.blocks.cmp(&other.blocks))
            .then_with(|| self.n.cmp(&other.n))
    }
}

impl PartialOrd for PartialSetPartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PartialSetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for PartialSetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// All partial set partitions of `[n]` with at least `min_blocks` blocks, in
/// (rank, lexicographic) order. `min_blocks = 2` gives the statements.
pub fn enumerate(n: usize, min_blocks: usize) -> Vec<PartialSetPartition> {
    let mut out = Vec::new();
    if min_blocks == 0 {
        out.push(PartialSetPartition::empty(n));
    }
    for support in GroundSet::full(n).subsets().skip(1) {
        let elements: Vec<usize> = support.iter().collect();
        let mut blocks: Vec<GroundSet> = Vec::new();
        set_partitions_of(&elements, &mut blocks, &mut |bs| {
            if bs.len() >= min_blocks {
                out.push(PartialSetPartition::from_blocks_unchecked(n, bs.to_vec()));
            }
        });
    }
    out.sort();
    out
}

fn set_partitions_of(
    rest: &[usize],
    blocks: &mut Vec<GroundSet>,
    emit: &mut dyn FnMut(&[GroundSet]),
) {
    let Some((&v, tail)) = rest.split_first() else {
        emit(blocks);
        return;
    };
    let s = GroundSet::singleton(v);
    for i in 0..blocks.len() {
        blocks[i] = blocks[i].union(s);
        set_partitions_of(tail, blocks, emit);
        blocks[i] = blocks[i].difference(s);
    }
    blocks.push(s);
    set_partitions_of(tail, blocks, emit);
    blocks.pop();
}

/// A permutation of `[n]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    // images[v - 1] = sigma(v), 1-based values
    images: Vec<usize>,
}

impl Permutation {
    /// Builds `sigma` from its 1-based images `sigma(1), ..., sigma(n)`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || std::mem::replace(&mut seen[v - 1], true) {
                return Err(Error::Input(format!(
                    "{images:?} is not a permutation of 1..{n}"
                )));
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// Transposition of `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(a - 1, b - 1);
        p
    }

    /// Every permutation of `[n]`, lexicographic in the image list.
    pub fn all(n: usize) -> Vec<Permutation> {
        fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if prefix.len() == used.len() {
                out.push(Permutation {
                    images: prefix.clone(),
                });
                return;
            }
            for v in 0..used.len() {
                if !used[v] {
                    used[v] = true;
                    prefix.push(v + 1);
                    go(prefix, used, out);
                    prefix.pop();
                    used[v] = false;
                }
            }
        }
        let mut out = Vec::new();
        go(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
        out
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, v: usize) -> usize {
        self.images[v - 1]
    }

    pub fn apply(&self, set: GroundSet) -> GroundSet {
        GroundSet::from_elements(set.iter().map(|v| self.image(v)))
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&v| other.image(v)).collect(),
        }
    }
}
