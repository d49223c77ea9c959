//! Cut, volume and ratio quantities over vertex sets and cluster pairs.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{WeightedDigraph, WeightedGraph};

/// A disjoint pair `(A, B)` of vertex sets with non-empty union.
///
/// Both sides are stored sorted and deduplicated. Either side may be empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "RawPair"))]
pub struct ClusterPair {
    #[cfg_attr(feature = "serde", serde(rename = "A"))]
    a: Vec<usize>,
    #[cfg_attr(feature = "serde", serde(rename = "B"))]
    b: Vec<usize>,
}

#[cfg(feature = "serde")]
#[derive(serde::Deserialize)]
struct RawPair {
    #[serde(rename = "A")]
    a: Vec<usize>,
    #[serde(rename = "B")]
    b: Vec<usize>,
}

#[cfg(feature = "serde")]
impl TryFrom<RawPair> for ClusterPair {
    type Error = Error;
    fn try_from(raw: RawPair) -> Result<Self> {
        ClusterPair::new(raw.a, raw.b)
    }
}

impl ClusterPair {
    pub fn new(a: impl IntoIterator<Item = usize>, b: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut a: Vec<usize> = a.into_iter().collect();
        let mut b: Vec<usize> = b.into_iter().collect();
        a.sort_unstable();
        a.dedup();
        b.sort_unstable();
        b.dedup();
        if a.is_empty() && b.is_empty() {
            return Err(Error::EmptyPair);
        }
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                core::cmp::Ordering::Less => i += 1,
                core::cmp::Ordering::Greater => j += 1,
                core::cmp::Ordering::Equal => return Err(Error::Overlap(a[i])),
            }
        }
        Ok(ClusterPair { a, b })
    }

    pub fn a(&self) -> &[usize] {
        &self.a
    }

    pub fn b(&self) -> &[usize] {
        &self.b
    }

    /// `A ∪ B`, sorted.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.a.iter().chain(&self.b).copied().collect();
        s.sort_unstable();
        s
    }

    pub fn max_vertex(&self) -> Option<usize> {
        self.a.last().copied().max(self.b.last().copied())
    }
}

const OUT: u8 = 0;
const IN_A: u8 = 1;
const IN_B: u8 = 2;

/// Labels every vertex as outside, in `A` or in `B`.
fn label(n: usize, a: &[usize], b: &[usize]) -> Result<Vec<u8>> {
    let mut lab = vec![OUT; n];
    for &x in a {
        if x >= n {
            return Err(Error::InvalidVertex { vertex: x, n });
        }
        lab[x] = IN_A;
    }
    for &x in b {
        if x >= n {
            return Err(Error::InvalidVertex { vertex: x, n });
        }
        if lab[x] == IN_A {
            return Err(Error::Overlap(x));
        }
        lab[x] = IN_B;
    }
    Ok(lab)
}

fn membership(n: usize, s: &[usize]) -> Result<Vec<bool>> {
    let mut m = vec![false; n];
    for &x in s {
        if x >= n {
            return Err(Error::InvalidVertex { vertex: x, n });
        }
        m[x] = true;
    }
    Ok(m)
}

/// `w(A, B)`: total weight of edges with one endpoint in `A` and the other in `B`.
pub fn cut_weight(g: &WeightedGraph, a: &[usize], b: &[usize]) -> Result<f64> {
    let lab = label(g.n(), a, b)?;
    Ok(g.edges()
        .iter()
        .filter(|e| (lab[e.u], lab[e.v]) == (IN_A, IN_B) || (lab[e.u], lab[e.v]) == (IN_B, IN_A))
        .map(|e| e.w)
        .sum())
}

/// `vol(S) = Σ_{u ∈ S} d(u)`. Repeated ids count once.
pub fn volume(g: &WeightedGraph, s: &[usize]) -> Result<f64> {
    let m = membership(g.n(), s)?;
    Ok(m.iter().zip(g.degrees()).filter(|(&x, _)| x).map(|(_, &d)| d).sum())
}

/// `φ(S) = w(S, V∖S) / vol(S)`.
pub fn conductance(g: &WeightedGraph, s: &[usize]) -> Result<f64> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let m = membership(g.n(), s)?;
    let vol: f64 = m.iter().zip(g.degrees()).filter(|(&x, _)| x).map(|(_, &d)| d).sum();
    if vol <= 0.0 {
        return Err(Error::UndefinedRatio("conductance"));
    }
    let boundary: f64 = g.edges().iter().filter(|e| m[e.u] != m[e.v]).map(|e| e.w).sum();
    Ok(boundary / vol)
}

/// `φ̄(A, B) = 2 w(A, B) / vol(A ∪ B)`.
pub fn bipartiteness(g: &WeightedGraph, pair: &ClusterPair) -> Result<f64> {
    let lab = label(g.n(), pair.a(), pair.b())?;
    let mut cross = 0.0;
    for e in g.edges() {
        if lab[e.u] != OUT && lab[e.v] != OUT && lab[e.u] != lab[e.v] {
            cross += e.w;
        }
    }
    let vol: f64 = pair.a().iter().chain(pair.b()).map(|&x| g.degree(x)).sum();
    if vol <= 0.0 {
        return Err(Error::UndefinedRatio("bipartiteness"));
    }
    Ok(2.0 * cross / vol)
}

/// Bipartiteness ratio `β(A, B) = 1 − φ̄(A, B)`; near zero means nearly bipartite.
pub fn bipartiteness_ratio(g: &WeightedGraph, pair: &ClusterPair) -> Result<f64> {
    Ok(1.0 - bipartiteness(g, pair)?)
}

/// Total weight of arcs from `A` to `B`.
pub fn directed_cut_weight(g: &WeightedDigraph, a: &[usize], b: &[usize]) -> Result<f64> {
    let lab = label(g.n(), a, b)?;
    Ok(g.arcs().iter().filter(|e| lab[e.u] == IN_A && lab[e.v] == IN_B).map(|e| e.w).sum())
}

/// Directed `φ̄(A, B) = 2 w(A → B) / (vol_out(A) + vol_in(B))`.
pub fn directed_bipartiteness(g: &WeightedDigraph, pair: &ClusterPair) -> Result<f64> {
    let cross = directed_cut_weight(g, pair.a(), pair.b())?;
    let denom: f64 =
        pair.a().iter().map(|&x| g.deg_out(x)).sum::<f64>() + pair.b().iter().map(|&x| g.deg_in(x)).sum::<f64>();
    if denom <= 0.0 {
        return Err(Error::UndefinedRatio("directed bipartiteness"));
    }
    Ok(2.0 * cross / denom)
}

/// Flow ratio `f(A, B) = 1 − φ̄(A, B)` of a digraph.
pub fn flow_ratio(g: &WeightedDigraph, pair: &ClusterPair) -> Result<f64> {
    Ok(1.0 - directed_bipartiteness(g, pair)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k22() -> WeightedGraph {
        WeightedGraph::from_edges(4, [(0, 2, 1.0), (0, 3, 1.0), (1, 2, 1.0), (1, 3, 1.0)]).unwrap()
    }

    fn triangle() -> WeightedGraph {
        WeightedGraph::from_edges(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap()
    }

    fn pair(a: &[usize], b: &[usize]) -> ClusterPair {
        ClusterPair::new(a.iter().copied(), b.iter().copied()).unwrap()
    }

    #[test]
    fn cut_weight_examples() {
        assert_eq!(cut_weight(&k22(), &[0, 1], &[2, 3]).unwrap(), 4.0);
        let path = WeightedGraph::from_edges(3, [(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        assert_eq!(cut_weight(&path, &[0], &[2]).unwrap(), 0.0);
        assert_eq!(cut_weight(&path, &[0, 1], &[1]), Err(Error::Overlap(1)));
    }

    #[test]
    fn volume_examples() {
        assert_eq!(volume(&triangle(), &[1]).unwrap(), 2.0);
        assert_eq!(volume(&triangle(), &[0, 1, 2]).unwrap(), 6.0);
        assert_eq!(volume(&triangle(), &[3]), Err(Error::InvalidVertex { vertex: 3, n: 3 }));
    }

    #[test]
    fn conductance_examples() {
        let edge = WeightedGraph::from_edges(2, [(0, 1, 3.0)]).unwrap();
        assert_eq!(conductance(&edge, &[0]).unwrap(), 1.0);
        assert_eq!(conductance(&triangle(), &[0, 1]).unwrap(), 0.5);
        assert_eq!(conductance(&triangle(), &[0, 1, 2]).unwrap(), 0.0);
        assert_eq!(conductance(&triangle(), &[]), Err(Error::EmptySet));
        let iso = WeightedGraph::from_edges(3, [(0, 1, 1.0)]).unwrap();
        assert_eq!(conductance(&iso, &[2]), Err(Error::UndefinedRatio("conductance")));
    }

    #[test]
    fn bipartiteness_examples() {
        let p = pair(&[0, 1], &[2, 3]);
        assert_eq!(bipartiteness(&k22(), &p).unwrap(), 1.0);
        assert_eq!(bipartiteness_ratio(&k22(), &p).unwrap(), 0.0);
        assert_eq!(bipartiteness(&triangle(), &pair(&[0], &[1])).unwrap(), 0.5);
        let iso = WeightedGraph::from_edges(3, [(0, 1, 1.0)]).unwrap();
        assert!(bipartiteness(&iso, &pair(&[2], &[])).is_err());
    }

    #[test]
    fn directed_examples() {
        let g = WeightedDigraph::from_arcs(2, [(0, 1, 1.0)]).unwrap();
        let p = pair(&[0], &[1]);
        assert_eq!(directed_bipartiteness(&g, &p).unwrap(), 1.0);
        assert_eq!(flow_ratio(&g, &p).unwrap(), 0.0);

        let g = WeightedDigraph::from_arcs(3, [(0, 1, 1.0), (1, 0, 1.0)]).unwrap();
        assert_eq!(directed_bipartiteness(&g, &p).unwrap(), 1.0);
        let g = WeightedDigraph::from_arcs(3, [(0, 1, 1.0), (1, 0, 1.0), (0, 2, 1.0)]).unwrap();
        assert!((directed_bipartiteness(&g, &p).unwrap() - 2.0 / 3.0).abs() < 1e-15);

        // arcs only from B to A
        let g = WeightedDigraph::from_arcs(2, [(1, 0, 1.0), (0, 1, 0.0001)]).unwrap();
        let g2 = WeightedDigraph::from_arcs(3, [(1, 0, 1.0), (0, 2, 1.0), (2, 1, 1.0)]).unwrap();
        assert_eq!(flow_ratio(&g2, &p).unwrap(), 1.0);
        assert!(flow_ratio(&g, &p).unwrap() < 1.0);
        let lonely = WeightedDigraph::from_arcs(3, [(0, 1, 1.0)]).unwrap();
        assert!(flow_ratio(&lonely, &pair(&[1], &[0])).is_err());
    }

    #[test]
    fn pair_validation() {
        assert_eq!(ClusterPair::new([], []), Err(Error::EmptyPair));
        assert_eq!(ClusterPair::new([1, 2], [3, 2]), Err(Error::Overlap(2)));
        let p = ClusterPair::new([3, 1, 3], []).unwrap();
        assert_eq!(p.a(), &[1, 3]);
        assert_eq!(p.support(), alloc::vec![1, 3]);
    }
}
