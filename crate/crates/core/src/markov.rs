//! Bidirected graphs and simplicial complexes as model front ends.
//!
//! A bidirected graph imposes `X_C ⊥ X_(V \ Sp(C))` for every connected
//! vertex set `C`. A simplicial complex makes the variables of each face
//! completely independent.

use std::collections::BTreeSet;
use std::fmt;

use crate::closure::{closure, SplitClosedIdeal, StatementSet};
use crate::error::{Error, Result};
use crate::partition::{GroundSet, PartialSetPartition};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BidirectedGraph {
    n: usize,
    /// `adjacency[v - 1]` is the neighborhood of `v`.
    adjacency: Vec<GroundSet>,
}

impl BidirectedGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adjacency = vec![GroundSet::EMPTY; n];
        for &(u, v) in edges {
            if u == v {
                return Err(Error::Input(format!("self-loop at vertex {u}")));
            }
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::Input(format!("edge {u}-{v} outside 1..{n}")));
            }
            adjacency[u - 1] = adjacency[u - 1].union(GroundSet::singleton(v));
            adjacency[v - 1] = adjacency[v - 1].union(GroundSet::singleton(u));
        }
        Ok(BidirectedGraph { n, adjacency })
    }

    pub fn edgeless(n: usize) -> Self {
        BidirectedGraph {
            n,
            adjacency: vec![GroundSet::EMPTY; n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let full = GroundSet::full(n);
        let adjacency = (1..=n)
            .map(|v| full.difference(GroundSet::singleton(v)))
            .collect();
        BidirectedGraph { n, adjacency }
    }

    /// Parses `"1-2,2-3"`; the empty string is the edgeless graph.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let bad = || Error::Input(format!("cannot parse edge `{part}`"));
            let (a, b) = part.split_once('-').ok_or_else(bad)?;
            let u = a.trim().parse().map_err(|_| bad())?;
            let v = b.trim().parse().map_err(|_| bad())?;
            edges.push((u, v));
        }
        Self::new(n, &edges)
    }

    /// The graph whose edges are the bits of `mask` over the pairs `(u, v)`,
    /// `u < v`, in lex order.
    pub fn from_edge_mask(n: usize, mask: u64) -> Self {
        let edges: Vec<(usize, usize)> = all_pairs(n)
            .into_iter()
            .enumerate()
            .filter(|&(k, _)| mask >> k & 1 == 1)
            .map(|(_, e)| e)
            .collect();
        Self::new(n, &edges).expect("pairs are valid edges")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        all_pairs(self.n)
            .into_iter()
            .filter(|&(u, v)| self.has_edge(u, v))
            .collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u - 1].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> GroundSet {
        self.adjacency[v - 1]
    }

    /// `Sp(A)`: `A` together with every neighbor of a vertex of `A`.
    pub fn spouse(&self, a: GroundSet) -> GroundSet {
        a.iter().fold(a, |acc, v| acc.union(self.adjacency[v - 1]))
    }

    /// Whether the induced subgraph on nonempty `set` is connected.
    pub fn is_connected_set(&self, set: GroundSet) -> bool {
        let Some(start) = set.min_element() else {
            return false;
        };
        let mut reached = GroundSet::singleton(start);
        loop {
            let next = reached.iter().fold(reached, |acc, v| {
                acc.union(self.adjacency[v - 1].intersection(set))
            });
            if next == reached {
                return reached == set;
            }
            reached = next;
        }
    }

    /// Nonempty vertex sets inducing a connected subgraph, ordered by size
    /// then lex.
    pub fn connected_sets(&self) -> Vec<GroundSet> {
        let mut sets: Vec<GroundSet> = GroundSet::full(self.n)
            .subsets()
            .filter(|s| !s.is_empty() && self.is_connected_set(*s))
            .collect();
        sets.sort_by(|a, b| a.len().cmp(&b.len()).then(a.lex_cmp(*b)));
        sets
    }

    /// The complement graph.
    pub fn complement(&self) -> Self {
        let full = GroundSet::full(self.n);
        let adjacency = (1..=self.n)
            .map(|v| {
                full.difference(self.adjacency[v - 1])
                    .difference(GroundSet::singleton(v))
            })
            .collect();
        BidirectedGraph {
            n: self.n,
            adjacency,
        }
    }

    /// `"1-2,2-3"`.
    pub fn to_text(&self) -> String {
        let edges: Vec<String> = self
            .edges()
            .iter()
            .map(|(u, v)| format!("{u}-{v}"))
            .collect();
        edges.join(",")
    }
}

impl fmt::Display for BidirectedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .collect()
}

/// The connected set Markov statements `C | (V \ Sp(C))`, skipping every
/// connected `C` whose spouse set is everything.
pub fn graph_statements(g: &BidirectedGraph) -> StatementSet {
    let full = GroundSet::full(g.n);
    let statements = g.connected_sets().into_iter().filter_map(|c| {
        let rest = full.difference(g.spouse(c));
        (!rest.is_empty())
            .then(|| PartialSetPartition::new(g.n, vec![c, rest]).expect("disjoint blocks"))
    });
    StatementSet::new(g.n, statements).expect("two-block statements")
}

pub fn graph_ideal(g: &BidirectedGraph) -> SplitClosedIdeal {
    closure(&graph_statements(g))
}

/// A downward-closed family of nonempty vertex sets.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SimplicialComplex {
    n: usize,
    faces: BTreeSet<GroundSet>,
}

impl SimplicialComplex {
    /// Downward closure of `generators` (empty sets are ignored).
    pub fn from_faces<I: IntoIterator<Item = GroundSet>>(n: usize, generators: I) -> Result<Self> {
        let full = GroundSet::full(n);
        let mut faces = BTreeSet::new();
        for f in generators {
            if !f.is_subset(full) {
                return Err(Error::Input(format!("face {f} outside 1..{n}")));
            }
            faces.extend(f.subsets().filter(|s| !s.is_empty()));
        }
        Ok(SimplicialComplex { n, faces })
    }

    /// Parses maximal faces `"12,13,23"` (or `"{1,2},{3}"` style blocks).
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut generators = Vec::new();
        let trimmed = text.trim();
        let parts: Vec<String> = if trimmed.contains('{') {
            trimmed
                .split('}')
                .map(|p| p.trim().trim_start_matches(',').trim())
                .filter(|p| !p.is_empty())
                .map(|p| format!("{p}}}"))
                .collect()
        } else {
            trimmed
                .split(',')
                .map(|p| p.trim().to_string())
                .filter(|p| !p.is_empty())
                .collect()
        };
        for part in parts {
            let pi = PartialSetPartition::parse(&part, n)?;
            if pi.num_blocks() != 1 {
                return Err(Error::Input(format!(
                    "face `{part}` must be a single vertex set"
                )));
            }
            generators.push(pi.blocks()[0]);
        }
        Self::from_faces(n, generators)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn faces(&self) -> &BTreeSet<GroundSet> {
        &self.faces
    }

    pub fn contains(&self, face: GroundSet) -> bool {
        self.faces.contains(&face)
    }

    /// Inclusion-maximal faces.
    pub fn facets(&self) -> Vec<GroundSet> {
        let mut out: Vec<GroundSet> = self
            .faces
            .iter()
            .filter(|f| !self.faces.iter().any(|g| g != *f && f.is_subset(*g)))
            .copied()
            .collect();
        out.sort_by(|a, b| a.lex_cmp(*b));
        out
    }

    /// Faces with at least two vertices; these alone determine the model.
    pub fn nontrivial_faces(&self) -> Vec<GroundSet> {
        self.faces
            .iter()
            .filter(|f| f.len() >= 2)
            .copied()
            .collect()
    }

    pub fn to_text(&self) -> String {
        let compact = self.n <= 9;
        let facets: Vec<String> = self.facets().iter().map(|f| f.to_text(compact)).collect();
        facets.join(",")
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// One all-singleton statement per face of size at least two.
pub fn simplicial_statements(s: &SimplicialComplex) -> StatementSet {
    let statements = s
        .nontrivial_faces()
        .into_iter()
        .map(|f| PartialSetPartition::singletons(s.n, f));
    StatementSet::new(s.n, statements).expect("faces of size two or more")
}

pub fn simplicial_ideal(s: &SimplicialComplex) -> SplitClosedIdeal {
    closure(&simplicial_statements(s))
}

/// `Σ(G)`: the independent sets of `G`.
pub fn sigma_of_graph(g: &BidirectedGraph) -> SimplicialComplex {
    let faces = GroundSet::full(g.n)
        .subsets()
        .filter(|f| !f.is_empty() && f.iter().all(|v| g.adjacency[v - 1].is_disjoint(*f)))
        .collect();
    SimplicialComplex { n: g.n, faces }
}

/// Whether the graphical model of `g` equals the simplicial model of `Σ(g)`.
pub fn models_coincide(g: &BidirectedGraph) -> bool {
    graph_ideal(g) == simplicial_ideal(&sigma_of_graph(g))
}

/// Whether `g` is complete multipartite: its complement is a disjoint union
/// of cliques (non-adjacency is transitive).
pub fn is_complete_multipartite(g: &BidirectedGraph) -> bool {
    let h = g.complement();
    (1..=g.n).all(|u| {
        let closed = h.adjacency[u - 1].union(GroundSet::singleton(u));
        h.adjacency[u - 1]
            .iter()
            .all(|v| h.adjacency[v - 1].union(GroundSet::singleton(v)) == closed)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdf::disconnected_sets;

    fn graph(text: &str, n: usize) -> BidirectedGraph {
        BidirectedGraph::parse(text, n).unwrap()
    }

    fn ideal_of(text: &str, n: usize) -> SplitClosedIdeal {
        closure(&StatementSet::parse(text, n).unwrap())
    }

    fn set(digits: &str) -> GroundSet {
        GroundSet::from_elements(digits.chars().map(|c| c.to_digit(10).unwrap() as usize))
    }

    #[test]
    fn spouse_sets() {
        let chain = graph("1-2,2-3,3-4", 4);
        assert_eq!(chain.spouse(set("1")), set("12"));
        assert_eq!(chain.spouse(GroundSet::EMPTY), GroundSet::EMPTY);
        assert_eq!(
            BidirectedGraph::complete(4).spouse(set("3")),
            GroundSet::full(4)
        );
    }

    #[test]
    fn chain_statements() {
        let st = graph_statements(&graph("1-2,2-3,3-4", 4));
        assert!(st.contains(&PartialSetPartition::parse("1|34", 4).unwrap()));
        assert!(st.contains(&PartialSetPartition::parse("12|4", 4).unwrap()));
        assert!(st.contains(&PartialSetPartition::parse("2|4", 4).unwrap()));
        assert!(st.contains(&PartialSetPartition::parse("1|3", 4).unwrap()));
        assert!(graph_statements(&BidirectedGraph::complete(4)).is_empty());
    }

    #[test]
    fn edgeless_triangle_reaches_the_top() {
        let g = BidirectedGraph::edgeless(3);
        let st = graph_statements(&g);
        for s in ["1|23", "2|13", "12|3"] {
            assert!(
                st.contains(&PartialSetPartition::parse(s, 3).unwrap()),
                "{s}"
            );
        }
        assert_eq!(graph_ideal(&g).len(), 7);
        assert!(graph_ideal(&g).contains(&PartialSetPartition::parse("1|2|3", 3).unwrap()));
    }

    #[test]
    fn graphical_ideals() {
        let cycle = graph("1-2,2-3,3-4,1-4", 4);
        assert_eq!(graph_ideal(&cycle), ideal_of("1|3,2|4", 4));
        assert_eq!(graph_ideal(&graph("1-2", 3)), ideal_of("12|3", 3));
        assert!(graph_ideal(&BidirectedGraph::complete(4)).is_empty());
    }

    #[test]
    fn simplicial_models() {
        let boundary = SimplicialComplex::parse("12,13,23", 3).unwrap();
        assert_eq!(
            simplicial_statements(&boundary).to_text(),
            StatementSet::parse("1|2,1|3,2|3", 3).unwrap().to_text()
        );
        let full = SimplicialComplex::parse("123", 3).unwrap();
        assert!(
            simplicial_statements(&full).contains(&PartialSetPartition::parse("1|2|3", 3).unwrap())
        );
        assert!(simplicial_statements(&SimplicialComplex::parse("1,2,3", 3).unwrap()).is_empty());
        let chain = SimplicialComplex::parse("13,14,24", 4).unwrap();
        assert_eq!(simplicial_ideal(&chain), ideal_of("1|3,1|4,2|4", 4));
        assert!(simplicial_ideal(&SimplicialComplex::parse("", 4).unwrap()).is_empty());
        assert_eq!(
            SimplicialComplex::parse("{1,2},{3}", 3).unwrap(),
            SimplicialComplex::parse("12,3", 3).unwrap()
        );
    }

    #[test]
    fn sigma_examples() {
        let cycle = graph("1-2,2-3,3-4,1-4", 4);
        assert_eq!(sigma_of_graph(&cycle).facets(), vec![set("13"), set("24")]);
        let chain = graph("1-2,2-3,3-4", 4);
        assert_eq!(
            sigma_of_graph(&chain).facets(),
            vec![set("13"), set("14"), set("24")]
        );
        assert!(sigma_of_graph(&BidirectedGraph::complete(4))
            .nontrivial_faces()
            .is_empty());
    }

    #[test]
    fn coincidence() {
        assert!(models_coincide(&graph("1-2,2-3,3-4,1-4", 4)));
        assert!(!models_coincide(&graph("1-2,2-3,3-4", 4)));
        assert!(models_coincide(&BidirectedGraph::edgeless(4)));
        assert!(is_complete_multipartite(&graph("1-2,2-3,3-4,1-4", 4)));
        assert!(!is_complete_multipartite(&graph("1-2,2-3,3-4", 4)));
    }

    #[test]
    fn exhaustive_graph_properties_on_four() {
        for mask in 0..64 {
            let g = BidirectedGraph::from_edge_mask(4, mask);
            let ideal = graph_ideal(&g);
            let disconnected = disconnected_sets(&ideal);
            for d in GroundSet::full(4).subsets().filter(|s| s.len() >= 2) {
                assert_eq!(
                    disconnected.contains(&d),
                    !g.is_connected_set(d),
                    "graph {g}, set {d}"
                );
            }
            let sigma = sigma_of_graph(&g);
            assert!(simplicial_ideal(&sigma).is_subset(&ideal));
            if is_complete_multipartite(&g) {
                assert!(models_coincide(&g), "graph {g}");
            }
        }
    }

    #[test]
    fn parse_errors() {
        assert!(BidirectedGraph::parse("1-1", 3).is_err());
        assert!(BidirectedGraph::parse("1-4", 3).is_err());
        assert!(BidirectedGraph::parse("12", 3).is_err());
        assert!(SimplicialComplex::parse("1|2", 3).is_err());
    }
}
