//! Exhaustive max-min search over families of vertex-disjoint supports.
//!
//! A support is a bitmask over at most 31 vertices. Callers score each
//! support (keeping the best split of it into a pair, or rejecting it as
//! undefined), and [`best_family`] finds `k` pairwise disjoint supports
//! maximizing the minimum score. Each level of the recursion visits every
//! (set, subset) combination once, i.e. `3^n` work per level.

use alloc::vec;
use alloc::vec::Vec;

/// Score of one support together with the payload (usually the `A` mask)
/// that achieved it.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Scored {
    pub value: f64,
    pub payload: u32,
}

/// Returns the optimal min-score and the chosen `(support, payload)` list, or
/// `None` when no family of `k` scorable disjoint supports exists.
pub(crate) fn best_family(n: usize, k: usize, scores: &[Option<Scored>]) -> Option<(f64, Vec<(u32, u32)>)> {
    assert!(n < 32 && scores.len() == 1 << n && k >= 1);
    let full = (1u32 << n) - 1;
    let size = 1usize << n;
    // level[j][W]: best min-score using j+1 supports inside W
    let mut values: Vec<Vec<f64>> = Vec::with_capacity(k);
    let mut choice: Vec<Vec<u32>> = Vec::with_capacity(k);
    for j in 0..k {
        let mut val = vec![f64::NEG_INFINITY; size];
        let mut ch = vec![0u32; size];
        for w in 1..=full {
            let mut u = w;
            let mut best = f64::NEG_INFINITY;
            let mut arg = 0u32;
            while u != 0 {
                if let Some(s) = scores[u as usize] {
                    let rest = if j == 0 { f64::INFINITY } else { values[j - 1][(w & !u) as usize] };
                    let cand = if s.value < rest { s.value } else { rest };
                    if cand > best {
                        best = cand;
                        arg = u;
                    }
                }
                u = (u - 1) & w;
            }
            val[w as usize] = best;
            ch[w as usize] = arg;
        }
        values.push(val);
        choice.push(ch);
    }
    let value = values[k - 1][full as usize];
    if value == f64::NEG_INFINITY {
        return None;
    }
    let mut picked = Vec::with_capacity(k);
    let mut w = full;
    for j in (0..k).rev() {
        let u = choice[j][w as usize];
        picked.push((u, scores[u as usize].expect("chosen support is scored").payload));
        w &= !u;
    }
    Some((value, picked))
}

pub(crate) fn mask_members(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask >> i & 1 == 1)
}

/// `table[a][mask] = Σ_{b ∈ mask} weight(a, b)`.
pub(crate) fn row_weight_table(n: usize, weight: impl Fn(usize, usize) -> f64) -> Vec<Vec<f64>> {
    let size = 1usize << n;
    (0..n)
        .map(|a| {
            let mut row = vec![0.0; size];
            for mask in 1..size {
                let low = mask.trailing_zeros() as usize;
                row[mask] = row[mask & (mask - 1)] + weight(a, low);
            }
            row
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn picks_disjoint_supports() {
        // score = popcount for supports of size <= 2, so with k = 2 on 4
        // vertices the best family is two disjoint pairs.
        let n = 4;
        let scores: Vec<Option<Scored>> = (0..16u32)
            .map(|m| {
                if m != 0 && m.count_ones() <= 2 {
                    Some(Scored { value: m.count_ones() as f64, payload: m })
                } else {
                    None
                }
            })
            .collect();
        let (v, fam) = best_family(n, 2, &scores).unwrap();
        assert_eq!(v, 2.0);
        assert_eq!(fam.len(), 2);
        assert_eq!(fam[0].0 & fam[1].0, 0);
        assert!(best_family(n, 5, &scores).is_none());
    }
}
