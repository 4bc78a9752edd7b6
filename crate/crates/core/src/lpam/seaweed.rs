//! Event-driven combing of the seaweeds of a diagonal band.
//!
//! Rows are letters of `U`, columns letters of `V`. The band holds the
//! `3k+1` seaweeds entering the top of diagonals `ℓ..ℓ+3k` (position `c` is
//! the seaweed currently on diagonal `ℓ + c`). A mismatch cell on diagonal
//! `ℓ + c`, `c ∈ [1..3k]`, exchanges positions `c − 1` and `c` unless the two
//! seaweeds have crossed before. Each adjacent pair that has not crossed yet
//! waits for the next mismatch on its diagonal, found with one LCP query.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::pillar::{Fragment, TextStore};

/// Band of diagonals `(ℓ..r)` with `ℓ = p − k − 1` and `r = p + 2k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BandSpec {
    pub p: usize,
    pub k: usize,
}

impl BandSpec {
    pub fn ell(&self) -> i64 {
        self.p as i64 - self.k as i64 - 1
    }

    pub fn seaweeds(&self) -> usize {
        3 * self.k + 1
    }

    /// Side of the distance matrices `D_t`.
    pub fn dim(&self) -> usize {
        3 * self.k + 2
    }
}

/// Exchange of the seaweeds at positions `col` and `col + 1` while crossing
/// row `row`. Before the exchange they came from sources `lo − 1` and `hi`,
/// so `D` gains 2 on column `col + 1`, rows `[lo..hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Transposition {
    pub row: usize,
    pub col: usize,
    pub lo: usize,
    pub hi: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranspositionStream {
    pub band: BandSpec,
    pub rows: usize,
    pub events: Vec<Transposition>,
}

impl TranspositionStream {
    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// `src[pos]` after the first `t` rows, for `t ∈ [0..rows]`.
    pub fn permutations(&self) -> Vec<Vec<usize>> {
        let mut src: Vec<usize> = (0..self.band.seaweeds()).collect();
        let mut out = Vec::with_capacity(self.rows + 1);
        let mut e = 0;
        for t in 0..=self.rows {
            while e < self.events.len() && self.events[e].row < t {
                src.swap(self.events[e].col, self.events[e].col + 1);
                e += 1;
            }
            out.push(src.clone());
        }
        out
    }
}

/// `2·P^Σ[i][j] + i − j` for the permutation `src[pos]` (source → position).
pub fn distances_from_permutation(src: &[usize]) -> Vec<Vec<i64>> {
    let s = src.len() + 1;
    let mut pos_of = vec![0; src.len()];
    for (pos, &from) in src.iter().enumerate() {
        pos_of[from] = pos;
    }
    let mut out = vec![vec![0i64; s]; s];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let sigma = (i..src.len()).filter(|&x| pos_of[x] < j).count() as i64;
            *cell = 2 * sigma + i as i64 - j as i64;
        }
    }
    out
}

pub(crate) struct Sweep<'a> {
    pub store: &'a TextStore,
    pub u: Fragment,
    pub v: Fragment,
}

impl Sweep<'_> {
    /// First mismatch row `a ≥ from` on diagonal `b − a = delta`.
    fn next_mismatch(&self, delta: i64, from: usize) -> Option<usize> {
        let a = (from as i64).max(-delta);
        let (nu, nv) = (self.u.len() as i64, self.v.len() as i64);
        if a >= nu || a + delta >= nv {
            return None;
        }
        let l = self.store.lcp(self.u.suffix(a as usize), self.v.suffix((a + delta) as usize)) as i64;
        (a + l < nu && a + l + delta < nv).then_some((a + l) as usize)
    }

    pub fn stream(&self, band: BandSpec) -> TranspositionStream {
        let w = band.seaweeds();
        let ell = band.ell();
        let mut src: Vec<usize> = (0..w).collect();
        let mut event: Vec<Option<usize>> = vec![None; w];
        let mut heap = BinaryHeap::new();
        let schedule = |c: usize, from: usize, src: &[usize], event: &mut [Option<usize>], heap: &mut BinaryHeap<Reverse<(usize, usize)>>| {
            event[c] = if src[c - 1] < src[c] { self.next_mismatch(ell + c as i64, from) } else { None };
            if let Some(a) = event[c] {
                heap.push(Reverse((a, c)));
            }
        };
        for c in 1..w {
            schedule(c, 0, &src, &mut event, &mut heap);
        }
        let mut events = Vec::new();
        while let Some(Reverse((a, c))) = heap.pop() {
            if event[c] != Some(a) {
                continue;
            }
            events.push(Transposition { row: a, col: c - 1, lo: src[c - 1] + 1, hi: src[c] });
            src.swap(c - 1, c);
            event[c] = None;
            if c >= 2 {
                schedule(c - 1, a + 1, &src, &mut event, &mut heap);
            }
            if c + 1 < w {
                schedule(c + 1, a, &src, &mut event, &mut heap);
            }
        }
        TranspositionStream { band, rows: self.u.len(), events }
    }
}
