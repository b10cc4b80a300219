//! Exhaustive enumeration of models on few variables: every split-closed
//! ideal, the graphical and simplicial ones, counts up to relabeling and
//! the geometry of each model up to symmetry.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use crate::cdf::{param_matrix, StateShape};
use crate::closure::{closure, split_by, splits, SplitClosedIdeal, StatementSet};
use crate::error::{Error, Result};
use crate::markov::{graph_ideal, simplicial_ideal, BidirectedGraph, SimplicialComplex};
use crate::partition::{enumerate, GroundSet, PartialSetPartition, Permutation};
use crate::toric::{projective_dimension, toric_degree};

/// Largest universe the census runs on without an explicit opt-in.
pub const MAX_CENSUS_N: usize = 4;

fn check_size(n: usize, allow_five: bool) -> Result<()> {
    let limit = if allow_five { 5 } else { MAX_CENSUS_N };
    if n > limit {
        return Err(Error::SizeOutOfRange {
            n,
            range: format!("0..={limit}"),
        });
    }
    Ok(())
}

/// Closure operator on subsets of the statements over `[n]`, indexed in
/// enumeration order.
struct IndexedClosure {
    n: usize,
    universe: Vec<PartialSetPartition>,
    index: HashMap<PartialSetPartition, usize>,
}

impl IndexedClosure {
    fn new(n: usize) -> Self {
        let universe = enumerate(n, 2);
        let index = universe
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, p)| (p, k))
            .collect();
        IndexedClosure { n, universe, index }
    }

    fn close(&self, set: &FixedBitSet) -> FixedBitSet {
        let gens = StatementSet::new(self.n, set.ones().map(|k| self.universe[k].clone()))
            .expect("statements from the universe");
        let mut out = FixedBitSet::with_capacity(self.universe.len());
        for e in closure(&gens).iter() {
            out.insert(self.index[e]);
        }
        out
    }

    fn ideal(&self, set: &FixedBitSet) -> SplitClosedIdeal {
        let elements = set.ones().map(|k| self.universe[k].clone()).collect();
        SplitClosedIdeal::from_elements(self.n, elements).expect("closed by construction")
    }
}

/// Every split-closed order ideal of the statements over `[n]`, sorted.
///
/// Uses next-closure enumeration in the lectic order of the statement
/// universe. `n <= 4` unless `allow_five` is set.
pub fn enumerate_closed_ideals(n: usize, allow_five: bool) -> Result<Vec<SplitClosedIdeal>> {
    check_size(n, allow_five)?;
    let ops = IndexedClosure::new(n);
    let m = ops.universe.len();
    let mut current = ops.close(&FixedBitSet::with_capacity(m));
    let mut out = vec![ops.ideal(&current)];
    'outer: loop {
        for i in (0..m).rev() {
            if current.contains(i) {
                continue;
            }
            let mut seed = FixedBitSet::with_capacity(m);
            seed.extend(current.ones().filter(|&k| k < i));
            seed.insert(i);
            let next = ops.close(&seed);
            if next
                .ones()
                .take_while(|&k| k < i)
                .eq(current.ones().take_while(|&k| k < i))
            {
                current = next;
                out.push(ops.ideal(&current));
                continue 'outer;
            }
        }
        break;
    }
    out.sort();
    Ok(out)
}

/// Closes every subset of the statement universe; exponential, `n <= 3`.
pub fn enumerate_closed_ideals_bruteforce(n: usize) -> Result<Vec<SplitClosedIdeal>> {
    if n > 3 {
        return Err(Error::SizeOutOfRange {
            n,
            range: "0..=3".into(),
        });
    }
    let universe = enumerate(n, 2);
    let found: BTreeSet<SplitClosedIdeal> = (0u64..1 << universe.len())
        .map(|mask| {
            let gens = universe
                .iter()
                .enumerate()
                .filter(|&(k, _)| mask >> k & 1 == 1)
                .map(|(_, p)| p.clone());
            closure(&StatementSet::new(n, gens).expect("statements"))
        })
        .collect();
    Ok(found.into_iter().collect())
}

/// Every order ideal of the statements over `[n]`, as sets of statements.
pub fn enumerate_order_ideals(n: usize) -> Result<Vec<BTreeSet<PartialSetPartition>>> {
    check_size(n, false)?;
    let universe = enumerate(n, 2);
    let below: Vec<Vec<usize>> = universe
        .iter()
        .enumerate()
        .map(|(k, x)| (0..k).filter(|&j| universe[j].leq(x)).collect())
        .collect();
    let mut out = Vec::new();
    let mut chosen = vec![false; universe.len()];
    fn walk(
        k: usize,
        below: &[Vec<usize>],
        chosen: &mut Vec<bool>,
        universe: &[PartialSetPartition],
        out: &mut Vec<BTreeSet<PartialSetPartition>>,
    ) {
        if k == universe.len() {
            out.push(
                universe
                    .iter()
                    .zip(chosen.iter())
                    .filter(|(_, &c)| c)
                    .map(|(x, _)| x.clone())
                    .collect(),
            );
            return;
        }
        walk(k + 1, below, chosen, universe, out);
        if below[k].iter().all(|&j| chosen[j]) {
            chosen[k] = true;
            walk(k + 1, below, chosen, universe, out);
            chosen[k] = false;
        }
    }
    walk(0, &below, &mut chosen, &universe, &mut out);
    out.sort();
    Ok(out)
}

/// Whether every splitting of a maximal element of `set` by an element of
/// `set` stays in `set`. This is weaker than split closure, which also
/// demands it of the elements below the maxima.
pub fn is_split_at_maxima(set: &BTreeSet<PartialSetPartition>) -> bool {
    let two_block: Vec<&PartialSetPartition> = set.iter().filter(|t| t.num_blocks() == 2).collect();
    set.iter()
        .filter(|x| !set.iter().any(|y| y != *x && x.leq(y)))
        .all(|pi| {
            two_block
                .iter()
                .all(|tau| match splits(tau, pi).expect("two blocks") {
                    Some(_) => set.contains(&split_by(pi, tau)),
                    None => true,
                })
        })
}

/// Least element of the relabeling orbit of `ideal`.
pub fn canonical_form(ideal: &SplitClosedIdeal) -> SplitClosedIdeal {
    Permutation::all(ideal.n())
        .iter()
        .map(|s| ideal.relabel(s))
        .min()
        .expect("at least the identity")
}

/// Orbits of `ideals` under relabeling, keyed by canonical form, with the
/// number of members of `ideals` in each orbit.
pub fn orbits(ideals: &[SplitClosedIdeal]) -> BTreeMap<SplitClosedIdeal, usize> {
    let reps: Vec<SplitClosedIdeal> = ideals.par_iter().map(canonical_form).collect();
    let mut out = BTreeMap::new();
    for r in reps {
        *out.entry(r).or_insert(0) += 1;
    }
    out
}

pub fn orbit_count(ideals: &[SplitClosedIdeal]) -> usize {
    orbits(ideals).len()
}

/// Orbit count by Burnside's lemma; `ideals` must be closed under
/// relabeling.
pub fn orbit_count_burnside(ideals: &[SplitClosedIdeal]) -> usize {
    let Some(n) = ideals.first().map(SplitClosedIdeal::n) else {
        return 0;
    };
    let perms = Permutation::all(n);
    let fixed: usize = perms
        .par_iter()
        .map(|s| ideals.iter().filter(|i| i.relabel(s) == **i).count())
        .sum();
    fixed / perms.len()
}

/// Distinct graphical models over all labeled graphs on `[n]`, sorted.
pub fn graphical_ideals(n: usize) -> Vec<SplitClosedIdeal> {
    let pairs = n * n.saturating_sub(1) / 2;
    let found: BTreeSet<SplitClosedIdeal> = (0u64..1 << pairs)
        .into_par_iter()
        .map(|mask| graph_ideal(&BidirectedGraph::from_edge_mask(n, mask)))
        .collect();
    found.into_iter().collect()
}

/// Families of subsets of size at least two that are downward closed
/// within that range, as complexes.
pub fn simplicial_complexes(n: usize) -> Vec<SimplicialComplex> {
    let candidates: Vec<GroundSet> = GroundSet::full(n)
        .subsets()
        .filter(|s| s.len() >= 2)
        .collect();
    (0u64..1 << candidates.len())
        .into_par_iter()
        .filter_map(|mask| {
            let chosen: BTreeSet<GroundSet> = candidates
                .iter()
                .enumerate()
                .filter(|&(k, _)| mask >> k & 1 == 1)
                .map(|(_, f)| *f)
                .collect();
            let closed = chosen.iter().all(|f| {
                f.subsets()
                    .filter(|s| s.len() >= 2)
                    .all(|s| chosen.contains(&s))
            });
            closed.then(|| SimplicialComplex::from_faces(n, chosen).expect("faces inside [n]"))
        })
        .collect()
}

/// Distinct simplicial models on `[n]`, sorted.
pub fn simplicial_ideals(n: usize) -> Vec<SplitClosedIdeal> {
    let found: BTreeSet<SplitClosedIdeal> = simplicial_complexes(n)
        .par_iter()
        .map(simplicial_ideal)
        .collect();
    found.into_iter().collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelClass {
    General,
    Graphical,
    Simplicial,
    Both,
}

impl ModelClass {
    pub const ALL: [ModelClass; 4] = [
        ModelClass::General,
        ModelClass::Graphical,
        ModelClass::Simplicial,
        ModelClass::Both,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelClass::General => "general",
            ModelClass::Graphical => "graphical",
            ModelClass::Simplicial => "simplicial",
            ModelClass::Both => "both",
        }
    }
}

impl fmt::Display for ModelClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ModelClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown model class `{s}`")))
    }
}

/// The models of one class on `[n]`, sorted.
pub fn class_ideals(
    n: usize,
    class: ModelClass,
    allow_five: bool,
) -> Result<Vec<SplitClosedIdeal>> {
    check_size(n, allow_five)?;
    Ok(match class {
        ModelClass::General => enumerate_closed_ideals(n, allow_five)?,
        ModelClass::Graphical => graphical_ideals(n),
        ModelClass::Simplicial => simplicial_ideals(n),
        ModelClass::Both => {
            let g: BTreeSet<SplitClosedIdeal> = graphical_ideals(n).into_iter().collect();
            simplicial_ideals(n)
                .into_iter()
                .filter(|i| g.contains(i))
                .collect()
        }
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct ClassCount {
    pub total: usize,
    pub orbits: usize,
}

/// Number of models of `class` on `[n]` and number up to relabeling.
pub fn class_census(n: usize, class: ModelClass) -> Result<ClassCount> {
    let ideals = class_ideals(n, class, false)?;
    Ok(ClassCount {
        total: ideals.len(),
        orbits: orbit_count(&ideals),
    })
}

/// One model up to symmetry, with the geometry of its binary toric variety.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRow {
    /// Canonical representative of the orbit.
    pub ideal: SplitClosedIdeal,
    pub generators: StatementSet,
    pub degree: u128,
    pub dimension: usize,
    pub graphical: bool,
    pub simplicial: bool,
    pub orbit_size: usize,
}

impl CensusRow {
    pub fn generators_text(&self) -> String {
        generators_text(&self.generators)
    }
}

/// `"1|2, 1|3"`; the empty set prints as `"∅"`.
pub fn generators_text(gens: &StatementSet) -> String {
    if gens.is_empty() {
        return "∅".into();
    }
    let mut items: Vec<String> = gens.iter().map(PartialSetPartition::to_text).collect();
    items.sort();
    items.join(", ")
}

/// Geometry of every model on `[n]` up to relabeling, ordered by
/// decreasing dimension, then degree, then generators.
pub fn table2(n: usize) -> Result<Vec<CensusRow>> {
    check_size(n, false)?;
    let general = enumerate_closed_ideals(n, false)?;
    let graphical: BTreeSet<SplitClosedIdeal> = graphical_ideals(n).into_iter().collect();
    let simplicial: BTreeSet<SplitClosedIdeal> = simplicial_ideals(n).into_iter().collect();
    let shape = StateShape::binary(n);
    let orbit_map: Vec<(SplitClosedIdeal, usize)> = orbits(&general).into_iter().collect();
    let mut rows: Vec<CensusRow> = orbit_map
        .into_par_iter()
        .map(|(ideal, orbit_size)| {
            let a = param_matrix(&ideal, &shape);
            CensusRow {
                generators: ideal.maximal_generators(),
                degree: toric_degree(&a),
                dimension: projective_dimension(&a),
                graphical: graphical.contains(&ideal),
                simplicial: simplicial.contains(&ideal),
                orbit_size,
                ideal,
            }
        })
        .collect();
    rows.sort_by(|a, b| {
        b.dimension
            .cmp(&a.dimension)
            .then(a.degree.cmp(&b.degree))
            .then(a.generators_text().cmp(&b.generators_text()))
    });
    Ok(rows)
}

/// Finds the row whose orbit contains the closure of `generators`.
pub fn find_row<'a>(rows: &'a [CensusRow], generators: &StatementSet) -> Option<&'a CensusRow> {
    let key = canonical_form(&closure(generators));
    rows.iter().find(|r| r.ideal == key)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_universes() {
        assert_eq!(enumerate_closed_ideals(0, false).unwrap().len(), 1);
        assert_eq!(enumerate_closed_ideals(2, false).unwrap().len(), 2);
        assert!(matches!(
            enumerate_closed_ideals(5, false),
            Err(Error::SizeOutOfRange { .. })
        ));
        assert!(matches!(table2(6), Err(Error::SizeOutOfRange { .. })));
    }

    #[test]
    fn next_closure_matches_bruteforce_on_three() {
        let fast = enumerate_closed_ideals(3, false).unwrap();
        assert_eq!(fast.len(), 12);
        assert_eq!(fast, enumerate_closed_ideals_bruteforce(3).unwrap());
    }

    #[test]
    fn three_variable_census() {
        let counts: Vec<(usize, usize)> = ModelClass::ALL
            .iter()
            .map(|&c| {
                let k = class_census(3, c).unwrap();
                (k.total, k.orbits)
            })
            .collect();
        assert_eq!(counts, [(12, 6), (8, 4), (9, 5), (5, 3)]);
    }

    #[test]
    fn burnside_agrees_on_three() {
        let ideals = enumerate_closed_ideals(3, false).unwrap();
        assert_eq!(orbit_count_burnside(&ideals), orbit_count(&ideals));
    }

    #[test]
    fn canonical_form_is_orbit_invariant() {
        let i = closure(&StatementSet::parse("1|23", 3).unwrap());
        let j = closure(&StatementSet::parse("3|12", 3).unwrap());
        assert_ne!(i, j);
        assert_eq!(canonical_form(&i), canonical_form(&j));
    }

    #[test]
    fn weaker_rule_admits_more_sets() {
        let downs = enumerate_order_ideals(3).unwrap();
        assert_eq!(downs.len(), 19);
        assert_eq!(downs.iter().filter(|d| is_split_at_maxima(d)).count(), 12);
        // 12|4 lies below 123|4 and is split by 1|2, but no maximal element is
        let set = closure(&StatementSet::parse("1|2", 4).unwrap())
            .iter()
            .chain(closure(&StatementSet::parse("123|4", 4).unwrap()).iter())
            .cloned()
            .collect::<BTreeSet<_>>();
        assert!(is_split_at_maxima(&set));
        assert!(SplitClosedIdeal::from_elements(4, set).is_err());
    }

    #[test]
    fn class_names_round_trip() {
        for c in ModelClass::ALL {
            assert_eq!(c.name().parse::<ModelClass>().unwrap(), c);
        }
        assert!("other".parse::<ModelClass>().is_err());
    }
}
