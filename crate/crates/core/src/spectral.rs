//! Normalized Laplacian `𝓛 = I − D^{-1/2} A D^{-1/2}`, its signless
//! counterpart `𝓙 = I + D^{-1/2} A D^{-1/2} = 2I − 𝓛`, dense eigenvalues,
//! and exhaustive dual Cheeger constants for small graphs.

use alloc::vec::Vec;

use nalgebra::DMatrix;

use crate::enumerate::{best_family, mask_members, row_weight_table, Scored};
use crate::error::{Error, Result};
use crate::graph::{WeightedDigraph, WeightedGraph};
use crate::measures::ClusterPair;

/// Largest dimension handed to the dense eigensolver.
pub const MAX_DENSE: usize = 2000;
/// Largest graph accepted by [`dual_cheeger_bruteforce`].
pub const MAX_BRUTEFORCE: usize = 12;
/// Largest digraph accepted by [`directed_dual_cheeger_bruteforce`].
pub const MAX_DIRECTED_BRUTEFORCE: usize = 10;

const SYMMETRY_TOL: f64 = 1e-10;

fn normalized_adjacency(g: &WeightedGraph) -> Result<DMatrix<f64>> {
    let n = g.n();
    let mut inv_sqrt = Vec::with_capacity(n);
    for u in 0..n {
        let d = g.degree(u);
        if d <= 0.0 {
            return Err(Error::DegenerateDegree(u));
        }
        inv_sqrt.push(1.0 / libm::sqrt(d));
    }
    let mut m = DMatrix::zeros(n, n);
    for e in g.edges() {
        let x = e.w * inv_sqrt[e.u] * inv_sqrt[e.v];
        m[(e.u, e.v)] = x;
        m[(e.v, e.u)] = x;
    }
    Ok(m)
}

/// Dense `𝓛_G`. Fails on isolated vertices.
pub fn normalized_laplacian(g: &WeightedGraph) -> Result<DMatrix<f64>> {
    let a = normalized_adjacency(g)?;
    Ok(DMatrix::identity(g.n(), g.n()) - a)
}

/// Dense `𝓙_G`. Fails on isolated vertices.
pub fn signless_j(g: &WeightedGraph) -> Result<DMatrix<f64>> {
    let a = normalized_adjacency(g)?;
    Ok(DMatrix::identity(g.n(), g.n()) + a)
}

/// Full spectrum of a symmetric matrix, ascending.
pub fn eigenvalues(m: &DMatrix<f64>) -> Result<Vec<f64>> {
    let (rows, cols) = m.shape();
    if rows != cols {
        return Err(Error::NotSquare { rows, cols });
    }
    if rows > MAX_DENSE {
        return Err(Error::TooLarge { n: rows, max: MAX_DENSE });
    }
    for i in 0..rows {
        for j in 0..i {
            let (x, y) = (m[(i, j)], m[(j, i)]);
            if !((x - y).abs() <= SYMMETRY_TOL * x.abs().max(y.abs()).max(1.0)) {
                return Err(Error::Asymmetric { i, j });
            }
        }
    }
    if rows == 0 {
        return Ok(Vec::new());
    }
    let eig = nalgebra::SymmetricEigen::new(m.clone());
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_unstable_by(f64::total_cmp);
    Ok(vals)
}

/// Ascending spectra of `𝓛` and `𝓙`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SpectralSummary {
    pub n: usize,
    pub laplacian: Vec<f64>,
    pub signless: Vec<f64>,
}

impl SpectralSummary {
    pub fn of(g: &WeightedGraph) -> Result<Self> {
        if g.n() > MAX_DENSE {
            return Err(Error::TooLarge { n: g.n(), max: MAX_DENSE });
        }
        Ok(SpectralSummary {
            n: g.n(),
            laplacian: eigenvalues(&normalized_laplacian(g)?)?,
            signless: eigenvalues(&signless_j(g)?)?,
        })
    }

    /// `λ_i(𝓛)` with 1-based `i`, matching the usual `λ_1 ≤ … ≤ λ_n` indexing.
    pub fn lambda(&self, i: usize) -> f64 {
        self.laplacian[i - 1]
    }
}

/// Subgraph induced by the non-isolated vertices, relabelled densely.
pub fn active_subgraph(g: &WeightedGraph) -> WeightedGraph {
    let mut index = alloc::vec![usize::MAX; g.n()];
    let mut next = 0;
    for u in 0..g.n() {
        if !g.is_isolated(u) {
            index[u] = next;
            next += 1;
        }
    }
    WeightedGraph::from_edges(next, g.edges().iter().map(|e| (index[e.u], index[e.v], e.w)))
        .expect("relabelled subgraph is valid")
}

/// Value of a k-way dual Cheeger constant with one optimal family.
#[derive(Debug, Clone, PartialEq)]
pub struct DualCheeger {
    pub value: f64,
    pub witnesses: Vec<ClusterPair>,
}

fn pair_from_masks(a: u32, b: u32) -> ClusterPair {
    ClusterPair::new(mask_members(a), mask_members(b)).expect("enumerated pair is valid")
}

/// Scores every support by its best split into a pair, using `ratio(a, b)`.
fn score_splits(n: usize, ratio: impl Fn(u32, u32) -> Option<f64>) -> Vec<Option<Scored>> {
    let size = 1usize << n;
    let mut scores = alloc::vec![None; size];
    for (u, slot) in scores.iter_mut().enumerate().skip(1) {
        let u = u as u32;
        let mut best: Option<Scored> = None;
        // every A ⊆ U, B = U ∖ A, including the one-sided splits
        let mut a = u;
        loop {
            if let Some(v) = ratio(a, u & !a) {
                if best.is_none_or(|s| v > s.value) {
                    best = Some(Scored { value: v, payload: a });
                }
            }
            if a == 0 {
                break;
            }
            a = (a - 1) & u;
        }
        *slot = best;
    }
    scores
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(crate::error::invalid("k", "must be at least 1"));
    }
    Ok(())
}

/// `ρ̄_G(k)`: the maximum over families of `k` pairs `(A_i, B_i)` with
/// pairwise disjoint supports of `min_i φ̄(A_i, B_i)`, by exhaustive search.
/// Pairs whose support has zero volume are undefined and skipped.
pub fn dual_cheeger_bruteforce(g: &WeightedGraph, k: usize) -> Result<DualCheeger> {
    check_k(k)?;
    let n = g.n();
    if n > MAX_BRUTEFORCE {
        return Err(Error::TooLarge { n, max: MAX_BRUTEFORCE });
    }
    let table = row_weight_table(n, |a, b| g.weight(a, b).unwrap_or(0.0));
    let deg = g.degrees();
    let scores = score_splits(n, |a, b| {
        let vol: f64 = mask_members(a | b).map(|x| deg[x]).sum();
        if vol <= 0.0 {
            return None;
        }
        let cross: f64 = mask_members(a).map(|x| table[x][b as usize]).sum();
        Some(2.0 * cross / vol)
    });
    let (value, fam) = best_family(n, k, &scores).ok_or(Error::Infeasible)?;
    Ok(DualCheeger { value, witnesses: fam.into_iter().map(|(u, a)| pair_from_masks(a, u & !a)).collect() })
}

/// `ρ̄_Ḡ(k)` for digraphs: pairs `(A_i, B_i)` with `A_i ∩ B_i = ∅` and
/// `A_i ∩ A_j = B_i ∩ B_j = A_i ∩ B_j = ∅` for `i ≠ j`, scored by the directed
/// `φ̄`. Pairs with zero denominator are skipped.
pub fn directed_dual_cheeger_bruteforce(g: &WeightedDigraph, k: usize) -> Result<DualCheeger> {
    check_k(k)?;
    let n = g.n();
    if n > MAX_DIRECTED_BRUTEFORCE {
        return Err(Error::TooLarge { n, max: MAX_DIRECTED_BRUTEFORCE });
    }
    let table = row_weight_table(n, |a, b| g.weight(a, b).unwrap_or(0.0));
    let scores = score_splits(n, |a, b| {
        let denom: f64 =
            mask_members(a).map(|x| g.deg_out(x)).sum::<f64>() + mask_members(b).map(|x| g.deg_in(x)).sum::<f64>();
        if denom <= 0.0 {
            return None;
        }
        let cross: f64 = mask_members(a).map(|x| table[x][b as usize]).sum();
        Some(2.0 * cross / denom)
    });
    let (value, fam) = best_family(n, k, &scores).ok_or(Error::Infeasible)?;
    Ok(DualCheeger { value, witnesses: fam.into_iter().map(|(u, a)| pair_from_masks(a, u & !a)).collect() })
}

/// Minimum over families of `k` pairwise disjoint non-empty sets of
/// `max_i φ(S_i)`, with the optimal family. Sets of zero volume are skipped.
pub fn min_max_conductance_bruteforce(g: &WeightedGraph, k: usize) -> Result<(f64, Vec<Vec<usize>>)> {
    check_k(k)?;
    let n = g.n();
    if n > MAX_BRUTEFORCE {
        return Err(Error::TooLarge { n, max: MAX_BRUTEFORCE });
    }
    let table = row_weight_table(n, |a, b| g.weight(a, b).unwrap_or(0.0));
    let deg = g.degrees();
    let scores: Vec<Option<Scored>> = (0..1u32 << n)
        .map(|s| {
            if s == 0 {
                return None;
            }
            let vol: f64 = mask_members(s).map(|x| deg[x]).sum();
            if vol <= 0.0 {
                return None;
            }
            let boundary: f64 = mask_members(s).map(|x| deg[x] - table[x][s as usize]).sum();
            Some(Scored { value: -(boundary / vol), payload: s })
        })
        .collect();
    let (value, fam) = best_family(n, k, &scores).ok_or(Error::Infeasible)?;
    Ok((-value, fam.into_iter().map(|(s, _)| mask_members(s).collect()).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    fn triangle() -> WeightedGraph {
        WeightedGraph::from_edges(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap()
    }

    fn cycle(n: usize) -> WeightedGraph {
        WeightedGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n, 1.0))).unwrap()
    }

    #[test]
    fn single_edge_matrices() {
        let g = WeightedGraph::from_edges(2, [(0, 1, 2.5)]).unwrap();
        let l = normalized_laplacian(&g).unwrap();
        let j = signless_j(&g).unwrap();
        assert!(close(l.as_slice(), &[1.0, -1.0, -1.0, 1.0], 1e-15));
        assert!(close(j.as_slice(), &[1.0, 1.0, 1.0, 1.0], 1e-15));
    }

    #[test]
    fn known_spectra() {
        let k22 = WeightedGraph::from_edges(4, [(0, 2, 1.0), (0, 3, 1.0), (1, 2, 1.0), (1, 3, 1.0)]).unwrap();
        let s = SpectralSummary::of(&k22).unwrap();
        assert!(close(&s.laplacian, &[0.0, 1.0, 1.0, 2.0], 1e-10));
        let s = SpectralSummary::of(&triangle()).unwrap();
        assert!(close(&s.laplacian, &[0.0, 1.5, 1.5], 1e-10));
        assert!(close(&s.signless, &[0.5, 0.5, 2.0], 1e-10));
        // C_4: 1 - cos(2πj/4)
        let s = SpectralSummary::of(&cycle(4)).unwrap();
        assert!(close(&s.laplacian, &[0.0, 1.0, 1.0, 2.0], 1e-10));
    }

    #[test]
    fn eigenvalues_plumbing() {
        assert!(close(&eigenvalues(&DMatrix::identity(3, 3)).unwrap(), &[1.0, 1.0, 1.0], 1e-14));
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![2.0, 0.0]));
        assert!(close(&eigenvalues(&d).unwrap(), &[0.0, 2.0], 1e-14));
        let asym = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        assert_eq!(eigenvalues(&asym), Err(Error::Asymmetric { i: 1, j: 0 }));
        let rect = DMatrix::<f64>::zeros(2, 3);
        assert!(matches!(eigenvalues(&rect), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn isolated_vertex_is_degenerate() {
        let g = WeightedGraph::from_edges(3, [(0, 1, 1.0)]).unwrap();
        assert_eq!(normalized_laplacian(&g), Err(Error::DegenerateDegree(2)));
        assert_eq!(active_subgraph(&g).n(), 2);
    }

    #[test]
    fn dual_cheeger_examples() {
        let c4 = dual_cheeger_bruteforce(&cycle(4), 1).unwrap();
        assert_eq!(c4.value, 1.0);
        let w = &c4.witnesses[0];
        assert_eq!(w.a().len() + w.b().len(), 4);

        let t = dual_cheeger_bruteforce(&triangle(), 1).unwrap();
        assert!((t.value - 2.0 / 3.0).abs() < 1e-15);
        let w = &t.witnesses[0];
        assert_eq!(w.a().len().min(w.b().len()), 1);
        assert_eq!(w.a().len().max(w.b().len()), 2);

        assert!(matches!(dual_cheeger_bruteforce(&cycle(13), 1), Err(Error::TooLarge { .. })));
        assert!(dual_cheeger_bruteforce(&triangle(), 0).is_err());
        assert_eq!(dual_cheeger_bruteforce(&WeightedGraph::empty(3), 1), Err(Error::Infeasible));
        // two disjoint edges give two perfect pairs
        let two = WeightedGraph::from_edges(4, [(0, 1, 1.0), (2, 3, 1.0)]).unwrap();
        let r = dual_cheeger_bruteforce(&two, 2).unwrap();
        assert_eq!(r.value, 1.0);
        assert_eq!(r.witnesses.len(), 2);
    }

    #[test]
    fn directed_examples() {
        let arc = WeightedDigraph::from_arcs(2, [(0, 1, 1.0)]).unwrap();
        assert_eq!(directed_dual_cheeger_bruteforce(&arc, 1).unwrap().value, 1.0);
        // directed triangle: best pair is a single arc, 2·1/(1+1) = 1
        let tri = WeightedDigraph::from_arcs(3, [(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)]).unwrap();
        assert_eq!(directed_dual_cheeger_bruteforce(&tri, 1).unwrap().value, 1.0);
    }

    #[test]
    fn min_max_conductance_examples() {
        let (v, fam) = min_max_conductance_bruteforce(&triangle(), 1).unwrap();
        assert_eq!(v, 0.0);
        assert_eq!(fam[0].len(), 3);
        let (v, _) = min_max_conductance_bruteforce(&triangle(), 3).unwrap();
        assert_eq!(v, 1.0);
    }
}
