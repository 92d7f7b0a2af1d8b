//! Structural predicates on standard permutations: small elements, valleys,
//! valley-blocks, the valley-boundary, and the half-decreasing test.
//!
//! Definitions, for a standard permutation of length `n`:
//!
//! * an element is **small** when its value is at most `⌊(n-1)/2⌋`;
//! * position `i` is a **valley** when `π_i` is a left-to-right minimum,
//!   `π_{i+1}` (if it exists) is not, and `π_{i+2}` (if it exists) is again a
//!   left-to-right minimum — out-of-range clauses hold vacuously;
//! * a window `π_[i..=q]` is a **valley-block** when `q` is a valley and,
//!   within the reduction of the prefix ending at `q`, the window reads as the
//!   consecutive descending run `q-i+1, ..., 2, 1`;
//! * the **valley-boundary** `B(π)` is the smallest index from which the
//!   suffix tiles as `block, element, block, element, ...`, each separator a
//!   single element, ending either with a separator element at position `n` or
//!   with a block whose valley is position `n` itself; `B(π) = n` when no
//!   index works;
//! * the suffix `π_[B(π)..=n]` is the **valley-region**;
//! * `π` is **half-decreasing** when `π_{n-1} = 1`, `π_{n-3} = 2`, ...,
//!   `π_{n-2k+1} = k` for `k = ⌊(n-1)/2⌋` (vacuous for `n ≤ 2`). These are
//!   exactly the periodic points of the `{123,132}`-avoiding pass.

use std::fmt;

use crate::perm::Permutation;

/// Largest value that counts as small in `S_n`: `⌊(n-1)/2⌋`.
pub fn small_threshold(n: usize) -> u32 {
    (n.saturating_sub(1) / 2) as u32
}

/// True when the element at 1-based position `i` has a small value.
pub fn is_small(pi: &Permutation, i: usize) -> bool {
    pi.at(i) <= small_threshold(pi.len())
}

/// The three-clause valley test at 1-based position `i`.
pub fn is_valley(pi: &Permutation, i: usize) -> bool {
    let n = pi.len();
    if !pi.is_ltr_min(i) {
        return false;
    }
    if i < n && pi.is_ltr_min(i + 1) {
        return false;
    }
    if i + 2 <= n && !pi.is_ltr_min(i + 2) {
        return false;
    }
    true
}

/// True when the alternating subsequence `π_{n-1}, π_{n-3}, ...` spells out
/// `1, 2, ..., ⌊(n-1)/2⌋`.
pub fn is_half_decreasing(pi: &Permutation) -> bool {
    let n = pi.len();
    let k = n.saturating_sub(1) / 2;
    (1..=k).all(|j| pi.at(n - 2 * j + 1) == j as u32)
}

/// Valleys, maximal valley-blocks, and the valley-boundary of one permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValleyDecomposition {
    perm: Permutation,
    /// 1-based valley positions, left to right.
    pub valleys: Vec<usize>,
    /// Maximal valley-blocks as 1-based inclusive position intervals,
    /// pairwise disjoint, left to right.
    pub blocks: Vec<(usize, usize)>,
    /// The valley-boundary, in `1..=n`.
    pub boundary: usize,
    /// True when the suffix at `boundary` genuinely tiles as block, element,
    /// block, element, ...; false when `boundary` is the fallback value `n`.
    pub tiled: bool,
}

impl ValleyDecomposition {
    /// The 1-based positions of the valley-region `[boundary, n]`.
    pub fn region(&self) -> std::ops::RangeInclusive<usize> {
        self.boundary.max(1)..=self.perm.len()
    }

    /// Values sitting inside the valley-region.
    pub fn region_values(&self) -> &[u32] {
        if self.perm.is_empty() {
            return &[];
        }
        &self.perm.elements()[self.boundary - 1..]
    }
}

impl fmt::Display for ValleyDecomposition {
    /// Annotated one-liner: blocks bracketed, boundary marked, for example
    /// `11 12 | [7 5] 8 [4 3] 6 [2] 9 [1] 10`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut tokens: Vec<String> = Vec::new();
        let mut block_iter = self.blocks.iter().peekable();
        let mut pos = 1;
        while pos <= self.perm.len() {
            if pos == self.boundary {
                tokens.push("|".to_string());
            }
            if let Some(&&(lo, hi)) = block_iter.peek() {
                if lo == pos {
                    let inner: Vec<String> =
                        (lo..=hi).map(|p| self.perm.at(p).to_string()).collect();
                    tokens.push(format!("[{}]", inner.join(" ")));
                    block_iter.next();
                    pos = hi + 1;
                    continue;
                }
            }
            tokens.push(self.perm.at(pos).to_string());
            pos += 1;
        }
        write!(f, "{}", tokens.join(" "))
    }
}

/// Computes valleys, maximal valley-blocks, and the boundary.
pub fn decompose(pi: &Permutation) -> ValleyDecomposition {
    let n = pi.len();
    if n == 0 {
        return ValleyDecomposition {
            perm: pi.clone(),
            valleys: Vec::new(),
            blocks: Vec::new(),
            boundary: 0,
            tiled: false,
        };
    }

    let valleys: Vec<usize> = (1..=n).filter(|&i| is_valley(pi, i)).collect();

    // Maximal block ending at valley q: extend left while the rank of each
    // element within the prefix ending at q keeps climbing by exactly one.
    let vals = pi.elements();
    let mut block_start: Vec<usize> = Vec::with_capacity(valleys.len());
    for &q in &valleys {
        let mut start = q;
        while start > 1 {
            let cand = vals[start - 2];
            let rank = vals[..q].iter().filter(|&&x| x < cand).count() + 1;
            if rank == q - (start - 1) + 1 {
                start -= 1;
            } else {
                break;
            }
        }
        block_start.push(start);
    }
    let blocks: Vec<(usize, usize)> = valleys
        .iter()
        .zip(block_start.iter())
        .map(|(&q, &s)| (s, q))
        .collect();

    // Right-to-left tiling check: from position p the suffix must read as a
    // block, then a single separator element, then tile again two past the
    // block, ending with a separator at n or with a block closing at n itself.
    let mut ok = vec![false; n + 1]; // 1-based
    for p in (1..=n).rev() {
        for (&q, &s) in valleys.iter().zip(block_start.iter()) {
            if q < p || s > p {
                continue;
            }
            if q == n || q + 1 == n || (q + 2 <= n && ok[q + 2]) {
                ok[p] = true;
                break;
            }
        }
    }
    let found = (1..=n).find(|&p| ok[p]);

    ValleyDecomposition {
        perm: pi.clone(),
        valleys,
        blocks,
        boundary: found.unwrap_or(n),
        tiled: found.is_some(),
    }
}

/// The valley-boundary alone.
pub fn valley_boundary(pi: &Permutation) -> usize {
    decompose(pi).boundary
}
