//! Semi-double cover of a digraph and its reverse.
//!
//! Vertex `v` of a digraph on `n` vertices has a tail copy `v₁ = 2v` and a
//! head copy `v₂ = 2v + 1` in the cover, and arc `(u, v, w)` becomes the
//! undirected edge `{u₁, v₂}` of weight `w`. Cover degrees are therefore
//! `d(v₁) = deg_out(v)` and `d(v₂) = deg_in(v)`, and for any pair `(A, B)` the
//! flow ratio of the digraph equals the conductance of `A₁ ∪ B₂` in the cover.
//!
//! A set of cover vertices is *simple* when it holds at most one copy of each
//! original vertex; simple sets correspond one-to-one to cluster pairs.

use alloc::vec;
use alloc::vec::Vec;

use crate::enumerate::{best_family, mask_members, Scored};
use crate::error::{Error, Result};
use crate::graph::{WeightedDigraph, WeightedGraph};
use crate::measures::ClusterPair;

/// Cover id of the tail copy of `v`.
#[inline]
pub const fn tail(v: usize) -> usize {
    2 * v
}

/// Cover id of the head copy of `v`.
#[inline]
pub const fn head(v: usize) -> usize {
    2 * v + 1
}

/// Original vertex of cover id `x`.
#[inline]
pub const fn origin(x: usize) -> usize {
    x / 2
}

#[inline]
pub const fn is_tail(x: usize) -> bool {
    x.is_multiple_of(2)
}

/// An undirected graph on `2n` vertices known to follow the cover id
/// convention: every edge joins a tail copy to a head copy.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverGraph {
    graph: WeightedGraph,
}

impl CoverGraph {
    /// Checks the id convention and wraps `graph`.
    pub fn from_graph(graph: WeightedGraph) -> Result<Self> {
        if !graph.n().is_multiple_of(2) {
            return Err(crate::error::invalid("n", "a cover has an even number of vertices"));
        }
        for e in graph.edges() {
            if is_tail(e.u) == is_tail(e.v) {
                return Err(Error::MalformedCover(e.u, e.v));
            }
        }
        Ok(CoverGraph { graph })
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn into_graph(self) -> WeightedGraph {
        self.graph
    }

    /// Number of vertices of the underlying digraph.
    pub fn original_n(&self) -> usize {
        self.graph.n() / 2
    }
}

/// Builds the semi-double cover. Cover vertices of zero degree are kept, so
/// the cover always has `2n` vertices.
pub fn semi_double_cover(g: &WeightedDigraph) -> CoverGraph {
    let edges = g.arcs().iter().map(|a| (tail(a.u), head(a.v), a.w));
    let graph = WeightedGraph::from_edges(2 * g.n(), edges).expect("cover of a valid digraph is valid");
    CoverGraph { graph }
}

/// Maps each cover edge `{u₁, v₂}` back to the arc `(u, v)`.
pub fn reverse_semi_double_cover(h: &CoverGraph) -> Result<WeightedDigraph> {
    reverse_graph(&h.graph)
}

/// As [`reverse_semi_double_cover`], validating the id convention on a plain graph.
pub fn reverse_graph(h: &WeightedGraph) -> Result<WeightedDigraph> {
    if !h.n().is_multiple_of(2) {
        return Err(crate::error::invalid("n", "a cover has an even number of vertices"));
    }
    let mut arcs = Vec::with_capacity(h.num_edges());
    for e in h.edges() {
        let (t, hd) = match (is_tail(e.u), is_tail(e.v)) {
            (true, false) => (e.u, e.v),
            (false, true) => (e.v, e.u),
            _ => return Err(Error::MalformedCover(e.u, e.v)),
        };
        arcs.push((origin(t), origin(hd), e.w));
    }
    WeightedDigraph::from_arcs(h.n() / 2, arcs)
}

/// `A₁ ∪ B₂` in cover ids, sorted.
pub fn pair_to_set(pair: &ClusterPair) -> Vec<usize> {
    let mut s: Vec<usize> = pair.a().iter().map(|&v| tail(v)).chain(pair.b().iter().map(|&v| head(v))).collect();
    s.sort_unstable();
    s
}

pub fn is_simple(set: &[usize]) -> bool {
    let mut s: Vec<usize> = set.iter().map(|&x| origin(x)).collect();
    let before = {
        let mut t = set.to_vec();
        t.sort_unstable();
        t.dedup();
        t.len()
    };
    s.sort_unstable();
    s.dedup();
    s.len() == before
}

/// Decides which copy survives when a set holds both copies of a vertex.
pub trait SimplificationPolicy {
    /// `true` keeps the tail copy `v₁`, `false` keeps the head copy `v₂`.
    fn keep_tail(&self, cover: &CoverGraph, v: usize) -> bool;
}

/// Drops the copy with the smaller cover degree; ties keep the tail copy.
#[derive(Debug, Clone, Copy, Default)]
pub struct DropLighterDegree;

impl SimplificationPolicy for DropLighterDegree {
    fn keep_tail(&self, cover: &CoverGraph, v: usize) -> bool {
        cover.graph.degree(tail(v)) >= cover.graph.degree(head(v))
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct KeepTail;

impl SimplificationPolicy for KeepTail {
    fn keep_tail(&self, _: &CoverGraph, _: usize) -> bool {
        true
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct KeepHead;

impl SimplificationPolicy for KeepHead {
    fn keep_tail(&self, _: &CoverGraph, _: usize) -> bool {
        false
    }
}

/// Resolves a cover vertex set into `A = {u : u₁ ∈ S}`, `B = {u : u₂ ∈ S}`,
/// first dropping one copy of every vertex whose copies are both in `S`.
pub fn set_to_pair(cover: &CoverGraph, set: &[usize], policy: &impl SimplificationPolicy) -> Result<ClusterPair> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = cover.original_n();
    let mut has = vec![(false, false); n];
    for &x in set {
        if x >= 2 * n {
            return Err(Error::InvalidVertex { vertex: x, n: 2 * n });
        }
        let slot = &mut has[origin(x)];
        if is_tail(x) {
            slot.0 = true;
        } else {
            slot.1 = true;
        }
    }
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for (v, &(t, h)) in has.iter().enumerate() {
        match (t, h) {
            (true, true) => {
                if policy.keep_tail(cover, v) {
                    a.push(v)
                } else {
                    b.push(v)
                }
            }
            (true, false) => a.push(v),
            (false, true) => b.push(v),
            _ => {}
        }
    }
    ClusterPair::new(a, b)
}

/// Largest digraph accepted by [`simple_family_min_max_conductance`].
pub const MAX_SIMPLE_BRUTEFORCE: usize = 10;

/// Minimum over families of `k` disjoint non-empty cover sets `C_i` whose
/// union is simple of `max_i φ_H(C_i)`, by exhaustive search. Conductances are
/// computed on the cover itself. Returns the value and an optimal family in
/// cover ids.
///
/// Requiring the union (not just each member) to be simple is what makes the
/// families correspond exactly to the directed pair families, where
/// `A_i ∩ B_j = ∅` is also demanded for `i ≠ j`.
pub fn simple_family_min_max_conductance(cover: &CoverGraph, k: usize) -> Result<(f64, Vec<Vec<usize>>)> {
    if k == 0 {
        return Err(crate::error::invalid("k", "must be at least 1"));
    }
    let n = cover.original_n();
    if n > MAX_SIMPLE_BRUTEFORCE {
        return Err(Error::TooLarge { n, max: MAX_SIMPLE_BRUTEFORCE });
    }
    let h = &cover.graph;
    // support U over original vertices, payload = which of them contribute the tail copy
    let scores: Vec<Option<Scored>> = (0..1u32 << n)
        .map(|u| {
            if u == 0 {
                return None;
            }
            let mut best: Option<Scored> = None;
            let mut a = u;
            loop {
                let mut inside = vec![false; 2 * n];
                for v in mask_members(u) {
                    inside[if a >> v & 1 == 1 { tail(v) } else { head(v) }] = true;
                }
                let vol: f64 = (0..2 * n).filter(|&x| inside[x]).map(|x| h.degree(x)).sum();
                if vol > 0.0 {
                    let cut: f64 = h.edges().iter().filter(|e| inside[e.u] != inside[e.v]).map(|e| e.w).sum();
                    let phi = cut / vol;
                    if best.is_none_or(|s| -phi > s.value) {
                        best = Some(Scored { value: -phi, payload: a });
                    }
                }
                if a == 0 {
                    break;
                }
                a = (a - 1) & u;
            }
            best
        })
        .collect();
    let (value, fam) = best_family(n, k, &scores).ok_or(Error::Infeasible)?;
    let sets = fam
        .into_iter()
        .map(|(u, a)| {
            let mut s: Vec<usize> = mask_members(u).map(|v| if a >> v & 1 == 1 { tail(v) } else { head(v) }).collect();
            s.sort_unstable();
            s
        })
        .collect();
    Ok((-value, sets))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;
    use alloc::vec;

    // a=0, b=1, c=2, d=3
    fn figure_digraph() -> WeightedDigraph {
        WeightedDigraph::from_arcs(4, [(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0), (2, 3, 1.0), (1, 2, 1.0)]).unwrap()
    }

    #[test]
    fn figure_cover_edges() {
        let h = semi_double_cover(&figure_digraph());
        let mut got: Vec<(usize, usize)> = h.graph().edges().iter().map(|e| (e.u, e.v)).collect();
        got.sort_unstable();
        // {a1,b2} {a1,c2} {a1,d2} {c1,d2} {b1,c2}
        let mut want =
            vec![(tail(0), head(1)), (tail(0), head(2)), (tail(0), head(3)), (tail(2), head(3)), (tail(1), head(2))];
        want.sort_unstable();
        assert_eq!(got, want);
        assert_eq!(h.graph().n(), 8);
        assert_eq!(reverse_semi_double_cover(&h).unwrap(), figure_digraph());
    }

    #[test]
    fn empty_cover() {
        let h = semi_double_cover(&WeightedDigraph::empty(3));
        assert_eq!(h.graph().n(), 6);
        assert_eq!(h.graph().num_edges(), 0);
        assert_eq!(reverse_semi_double_cover(&h).unwrap(), WeightedDigraph::empty(3));
    }

    #[test]
    fn malformed_cover_rejected() {
        let g = WeightedGraph::from_edges(4, [(0, 2, 1.0)]).unwrap();
        assert_eq!(CoverGraph::from_graph(g.clone()), Err(Error::MalformedCover(0, 2)));
        assert_eq!(reverse_graph(&g), Err(Error::MalformedCover(0, 2)));
        let g = WeightedGraph::from_edges(4, [Edge::new(1, 3, 1.0)]).unwrap();
        assert!(reverse_graph(&g).is_err());
        // {u1, u2} reverses to a self-loop
        let g = WeightedGraph::from_edges(4, [(0, 1, 1.0)]).unwrap();
        assert_eq!(reverse_graph(&g), Err(Error::SelfLoop(0)));
    }

    #[test]
    fn pair_set_mapping() {
        let p = ClusterPair::new([0], [1]).unwrap();
        assert_eq!(pair_to_set(&p), vec![tail(0), head(1)]);
        let p = ClusterPair::new([], [1]).unwrap();
        assert_eq!(pair_to_set(&p), vec![head(1)]);
        let h = semi_double_cover(&figure_digraph());
        let back = set_to_pair(&h, &[tail(0), head(1)], &DropLighterDegree).unwrap();
        assert_eq!(back, ClusterPair::new([0], [1]).unwrap());
        assert!(set_to_pair(&h, &[], &DropLighterDegree).is_err());
    }

    #[test]
    fn drop_lighter_degree_policy() {
        let g = figure_digraph();
        let h = semi_double_cover(&g);
        // a: out 3, in 0 → keep tail
        let p = set_to_pair(&h, &[tail(0), head(0)], &DropLighterDegree).unwrap();
        assert_eq!(p, ClusterPair::new([0], []).unwrap());
        // d: out 0, in 2 → keep head
        let p = set_to_pair(&h, &[tail(3), head(3)], &DropLighterDegree).unwrap();
        assert_eq!(p, ClusterPair::new([], [3]).unwrap());
        // c: out 1, in 2 → keep head; b: out 1, in 1 → tie keeps tail
        let p = set_to_pair(&h, &[tail(2), head(2), tail(1), head(1)], &DropLighterDegree).unwrap();
        assert_eq!(p, ClusterPair::new([1], [2]).unwrap());
        let p = set_to_pair(&h, &[tail(2), head(2)], &KeepTail).unwrap();
        assert_eq!(p, ClusterPair::new([2], []).unwrap());
        let p = set_to_pair(&h, &[tail(2), head(2)], &KeepHead).unwrap();
        assert_eq!(p, ClusterPair::new([], [2]).unwrap());
    }

    #[test]
    fn simplicity() {
        assert!(is_simple(&[tail(0), head(1)]));
        assert!(!is_simple(&[tail(0), head(0)]));
        assert!(is_simple(&[tail(0), tail(0)]));
    }

    #[test]
    fn two_cycle_needs_union_simplicity() {
        // a ⇄ b: the two perfect cover sets {a1, b2} and {b1, a2} are each
        // simple and disjoint, but they would need A_1 ∩ B_2 = {a}.
        let g = WeightedDigraph::from_arcs(2, [(0, 1, 1.0), (1, 0, 1.0)]).unwrap();
        let h = semi_double_cover(&g);
        let (v, fam) = simple_family_min_max_conductance(&h, 2).unwrap();
        assert_eq!(v, 1.0);
        let all: Vec<usize> = fam.concat();
        assert!(is_simple(&all));
        let (v1, _) = simple_family_min_max_conductance(&h, 1).unwrap();
        assert_eq!(v1, 0.0);
    }
}
