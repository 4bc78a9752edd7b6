//! Longest pattern prefixes matching at every text position, for every edit
//! budget `0..=k`.
//!
//! The fast engine works on `$`-interleaved strings, where edit distance
//! doubles into deletion distance. For each block of `k` positions it combs
//! the seaweeds of one band of `6k+1` diagonals, turning every crossing into a
//! sub-column increment of a persistent Monge matrix, and answers each
//! position and budget with a binary search over the matrix versions.

mod seaweed;

use std::sync::Arc;

use rayon::prelude::*;

pub use seaweed::{distances_from_permutation, BandSpec, Transposition, TranspositionStream};

use crate::edit::EditIndex;
use crate::error::{Error, Result};
use crate::monge::{MongeStore, MongeVersion};
use crate::pillar::{StrId, TextStore};
use seaweed::Sweep;

/// `LPref_{k'}[j]` and `LSuf_{k'}[j]` for `k' ∈ [0..k]`, `j ∈ [0..n]`.
/// `LSuf_{k'}[j]` is the longest pattern suffix within `k'` edits of a
/// suffix of `T[0..j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LprefTable {
    pref: Vec<Vec<usize>>,
    suf: Vec<Vec<usize>>,
}

impl LprefTable {
    fn from_directions(pref: Vec<Vec<usize>>, rev: Vec<Vec<usize>>) -> LprefTable {
        let suf = rev.into_iter().map(|row| row.into_iter().rev().collect()).collect();
        LprefTable { pref, suf }
    }

    pub fn k(&self) -> usize {
        self.pref.len() - 1
    }

    pub fn text_len(&self) -> usize {
        self.pref[0].len() - 1
    }

    pub fn lpref(&self, kp: usize, j: usize) -> usize {
        self.pref[kp][j]
    }

    pub fn lsuf(&self, kp: usize, j: usize) -> usize {
        self.suf[kp][j]
    }

    /// Rows indexed by budget.
    pub fn prefix_rows(&self) -> &[Vec<usize>] {
        &self.pref
    }

    pub fn suffix_rows(&self) -> &[Vec<usize>] {
        &self.suf
    }
}

/// A byte occurring in none of `strings`, preferring high values.
pub fn free_byte(strings: &[&[u8]]) -> Result<u8> {
    let mut seen = [false; 256];
    for s in strings {
        for &c in s.iter() {
            seen[c as usize] = true;
        }
    }
    (0..=255u8).rev().find(|&c| !seen[c as usize]).ok_or(Error::NoSentinel)
}

/// `S[0] $ S[1] $ … S[|S|−1] $`.
pub fn dollar_transform(s: &[u8], dollar: u8) -> Vec<u8> {
    s.iter().flat_map(|&c| [c, dollar]).collect()
}

/// Seaweed crossings of the band `(p − k − 1 .. p + 2k)` for rows `u` and
/// columns `v`.
pub fn seaweed_stream(u: &[u8], v: &[u8], p: usize, k: usize) -> Result<TranspositionStream> {
    let band = BandSpec { p, k };
    if u.is_empty() {
        return Ok(TranspositionStream { band, rows: 0, events: Vec::new() });
    }
    let store = TextStore::build(vec![u.to_vec(), v.to_vec()])?;
    let sweep = Sweep { store: &store, u: store.whole(StrId(0)), v: store.whole(StrId(1)) };
    Ok(sweep.stream(band))
}

/// Replays `stream` two ways and compares both with `oracle[t][i][j]`: the
/// permutation identity `D_t = 2·P_t^Σ + i − j`, and the matrix obtained from
/// `|i − j|` by the recorded sub-column increments.
pub fn replay_check(stream: &TranspositionStream, oracle: &[Vec<Vec<usize>>]) -> bool {
    let s = stream.band.dim();
    if oracle.len() != stream.rows + 1 {
        return false;
    }
    let mut incremented: Vec<Vec<i64>> = (0..s).map(|i| (0..s).map(|j| i.abs_diff(j) as i64).collect()).collect();
    let mut e = 0;
    for (t, src) in stream.permutations().iter().enumerate() {
        while e < stream.events.len() && stream.events[e].row < t {
            let tr = stream.events[e];
            for row in incremented.iter_mut().take(tr.hi + 1).skip(tr.lo) {
                row[tr.col + 1] += 2;
            }
            e += 1;
        }
        let from_perm = distances_from_permutation(src);
        for i in 0..s {
            for j in 0..s {
                let want = oracle[t][i][j] as i64;
                if from_perm[i][j] != want || incremented[i][j] != want {
                    return false;
                }
            }
        }
    }
    true
}

/// Reference engine: one pair of wavefronts per text position.
pub fn all_lpam_baseline(p: &[u8], t: &[u8], k: usize) -> Result<LprefTable> {
    let one_way = |p: &[u8], t: &[u8]| -> Result<Vec<Vec<usize>>> {
        let index = EditIndex::new(p, t)?;
        let cols: Vec<Vec<usize>> = (0..=t.len()).into_par_iter().map(|j| index.lpref_at(k, j)).collect();
        Ok((0..=k).map(|kp| cols.iter().map(|c| c[kp]).collect()).collect())
    };
    let (rp, rt) = reversed(p, t);
    Ok(LprefTable::from_directions(one_way(p, t)?, one_way(&rp, &rt)?))
}

fn reversed(p: &[u8], t: &[u8]) -> (Vec<u8>, Vec<u8>) {
    (p.iter().rev().copied().collect(), t.iter().rev().copied().collect())
}

/// Fast engine.
pub fn all_lpam(p: &[u8], t: &[u8], k: usize) -> Result<LprefTable> {
    if k == 0 || p.is_empty() {
        return all_lpam_baseline(p, t, k);
    }
    let dollar = free_byte(&[p, t])?;
    let (rp, rt) = reversed(p, t);
    let pref = FastEngine::new(p, t, k, dollar)?.table();
    let rev = FastEngine::new(&rp, &rt, k, dollar)?.table();
    Ok(LprefTable::from_directions(pref, rev))
}

/// Fast engine state shared by all blocks: the `$`-interleaved pattern (rows)
/// and text (columns) with a doubled budget `kk = 2k`.
pub(crate) struct FastEngine {
    store: TextStore,
    n: usize,
    m: usize,
    k: usize,
}

/// Matrix versions of one band, keyed by the number of rows consumed.
pub(crate) struct Block {
    band: BandSpec,
    monge: MongeStore,
    versions: Vec<(usize, MongeVersion)>,
}

impl FastEngine {
    pub fn new(p: &[u8], t: &[u8], k: usize, dollar: u8) -> Result<FastEngine> {
        let store = TextStore::build(vec![dollar_transform(p, dollar), dollar_transform(t, dollar)])?;
        Ok(FastEngine { store, n: t.len(), m: p.len(), k })
    }

    fn kk(&self) -> usize {
        2 * self.k
    }

    pub fn block(&self, b: usize) -> Block {
        let kk = self.kk();
        let band = BandSpec { p: b * kk, k: kk };
        let sweep = Sweep { store: &self.store, u: self.store.whole(StrId(0)), v: self.store.whole(StrId(1)) };
        let stream = sweep.stream(band);
        let mut monge = MongeStore::init(Arc::new(|i: usize, j: usize| i.abs_diff(j) as i64), band.dim());
        let mut versions = vec![(0, monge.latest())];
        for tr in &stream.events {
            let v = monge
                .subcol_increment(monge.latest(), tr.col + 1, tr.lo, tr.hi, 2)
                .expect("crossing keeps the matrix in range");
            let stamp = tr.row + 1;
            match versions.last_mut() {
                Some(last) if last.0 == stamp => last.1 = v,
                _ => versions.push((stamp, v)),
            }
        }
        Block { band, monge, versions }
    }

    /// Whether some text end lets `P_$[0..t)` match from `T_$[x..)` within
    /// deletion budget `budget`; `x` must lie in the block's range.
    pub fn reaches(&self, block: &Block, x: usize, t: usize, budget: usize) -> bool {
        let kk = self.kk() as i64;
        let (x, ti, total) = (x as i64, t as i64, 2 * self.n as i64);
        let lo = (x - kk).max(x - ti);
        let hi = (x + kk).min(total - ti);
        if lo > hi {
            return false;
        }
        let ell = block.band.ell();
        let at = block.versions.partition_point(|&(stamp, _)| stamp <= t) - 1;
        let (value, _) = block
            .monge
            .subrow_min(block.versions[at].1, (x - ell) as usize, (lo - ell) as usize, (hi - ell) as usize)
            .expect("query inside the band");
        value <= budget as i64
    }

    /// Largest `t ∈ [floor..2m]` with `reaches(t)`, given `reaches(floor)`.
    fn longest(&self, block: &Block, x: usize, budget: usize, floor: usize) -> usize {
        let (mut lo, mut hi) = (floor, 2 * self.m);
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            if self.reaches(block, x, mid, budget) {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        lo
    }

    /// `LPref_{k'}[i]` for the `k` positions of block `b`.
    fn block_values(&self, b: usize) -> Vec<(usize, Vec<usize>)> {
        let block = self.block(b);
        let start = b * self.k;
        (start..(start + self.k).min(self.n + 1))
            .map(|i| {
                let mut t = 0;
                let row = (0..=self.k)
                    .map(|kp| {
                        t = self.longest(&block, 2 * i, 2 * kp, t);
                        t / 2
                    })
                    .collect();
                (i, row)
            })
            .collect()
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        let blocks = self.n / self.k + 1;
        let parts: Vec<Vec<(usize, Vec<usize>)>> = (0..blocks).into_par_iter().map(|b| self.block_values(b)).collect();
        let mut out = vec![vec![0; self.n + 1]; self.k + 1];
        for (i, row) in parts.into_iter().flatten() {
            for (kp, v) in row.into_iter().enumerate() {
                out[kp][i] = v;
            }
        }
        out
    }
}
