//! Circular pattern matching under Hamming distance.
//!
//! Every rotation of `P = P₁P₂` contains `P₁ = P[0..⌊m/2⌋)` or the first half
//! of `P₂P₁`, so each pass takes one of these as a sample, covers the text
//! with windows of length `⌊3m/4⌋` every `⌊m/4⌋` positions, and reports the
//! occurrences anchored at `k`-mismatch occurrences of the sample. Windows
//! with few anchors are verified anchor by anchor; windows with many anchors
//! are approximately periodic and go through a periodic substring instance.
//!
//! Anchors are found by verifying every window position with kangaroo jumps,
//! so a pass costs `O(nk)` LCP queries before the per-window work.

mod pair;
mod periodic;
mod psm;

use rayon::prelude::*;

pub use pair::{occ_k, AnchorSet};
pub use periodic::{find_period, misperiods, repetitive_region, Direction, PsmInstance};
pub use psm::{build_weighted_grid, periodic_periodic_match, periodic_substring_match};

use crate::error::{Error, Result};
use crate::exact::exact_cpm;
use crate::geometry::{positions, union_positions, Interval, IntervalChain};
use crate::oracles::{brute_cyc_occ, Metric};
use crate::pillar::{Fragment, StrId, TextStore};

use periodic::Reduction;

/// A window with more than this many anchors per unit of `k` is periodic.
pub const MANY_ANCHORS: usize = 864;

/// Smallest pattern length routed through the windowed algorithm.
pub const MIN_WINDOWED_LEN: usize = 16;

/// One sample pass: the text and the (rotated) pattern written twice.
pub(crate) struct Pass<'a> {
    pub store: &'a TextStore,
    pub t: Fragment,
    pub pp: Fragment,
    pub m: usize,
    pub k: usize,
}

impl Pass<'_> {
    pub fn h(&self) -> usize {
        self.m / 2
    }

    pub fn p1(&self) -> Fragment {
        self.pp.prefix(self.h())
    }

    /// `P₂P₁P₂`.
    pub fn s(&self) -> Fragment {
        self.pp.suffix(self.h())
    }

    pub fn pair_match(&self, i: usize, j: usize, k: usize) -> Vec<Interval> {
        pair::pair_match_circular(self.store, self.t, self.pp, i, j, k)
    }

    fn few_case(&self, a: usize, anchors: &AnchorSet) -> Vec<Interval> {
        anchors.iter().flat_map(|o| self.pair_match(a + o, 0, self.k)).collect()
    }

    fn windows(&self) -> Vec<(usize, usize)> {
        let (n, h) = (self.t.len(), self.h());
        let (len, step) = (3 * self.m / 4, self.m / 4);
        (0..).map(|c| c * step).take_while(|&a| a + h <= n).map(|a| (a, len.min(n - a))).collect()
    }

    fn window_report(&self, a: usize, len: usize) -> WindowOutput {
        let mut out = WindowOutput::default();
        out.stats.windows = 1;
        let anchors = occ_k(self.store, self.p1(), self.t.slice(a, a + len), self.k);
        if anchors.len() <= MANY_ANCHORS * self.k {
            out.stats.few = 1;
            out.intervals = self.few_case(a, &anchors);
            return out;
        }
        out.stats.periodic = 1;
        let reduction = match find_period(self.store, self.p1(), &anchors, self.m, self.k) {
            Some(q) => periodic::reduce_to_psm(self, a, len, &anchors, q),
            None => Reduction::Fallback,
        };
        match reduction {
            Reduction::Fallback => {
                log::debug!("window at {a}: periodic bounds failed, checking {} anchors", anchors.len());
                out.stats.fallback = 1;
                out.intervals = self.few_case(a, &anchors);
            }
            Reduction::Reduced { intervals, instance, region_hits } => {
                out.stats.region_hits = region_hits;
                out.intervals = intervals;
                match instance {
                    Some(inst) => {
                        out.stats.psm_instances = 1;
                        let (more, chains) = periodic_substring_match(self.store, &inst);
                        out.intervals.extend(more);
                        out.chains = chains;
                    }
                    None => out.stats.dropped = 1,
                }
            }
        }
        out
    }

    fn window_decide(&self, a: usize, len: usize) -> Option<usize> {
        let anchors = occ_k(self.store, self.p1(), self.t.slice(a, a + len), self.k);
        let smallest = |it: &[Interval]| it.iter().map(|x| x.lo).min();
        if anchors.len() <= MANY_ANCHORS * self.k {
            return smallest(&self.few_case(a, &anchors));
        }
        let reduction = match find_period(self.store, self.p1(), &anchors, self.m, self.k) {
            Some(q) => periodic::reduce_to_psm(self, a, len, &anchors, q),
            None => Reduction::Fallback,
        };
        match reduction {
            Reduction::Fallback => smallest(&self.few_case(a, &anchors)),
            Reduction::Reduced { intervals, instance, .. } => {
                let periodic = instance.and_then(|inst| psm::psm_decide(self.store, &inst));
                smallest(&intervals).into_iter().chain(periodic).min()
            }
        }
    }
}

/// Counters of the branches taken while reporting.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub windows: usize,
    /// Windows with at most `864k` anchors.
    pub few: usize,
    /// Windows with more anchors.
    pub periodic: usize,
    /// Periodic windows handled anchor by anchor after a failed bound.
    pub fallback: usize,
    pub psm_instances: usize,
    /// Periodic windows whose instance was too short to build.
    pub dropped: usize,
    /// Occurrences of repetitive regions followed by a pair match.
    pub region_hits: usize,
}

impl Stats {
    fn merge(self, o: Stats) -> Stats {
        Stats {
            windows: self.windows + o.windows,
            few: self.few + o.few,
            periodic: self.periodic + o.periodic,
            fallback: self.fallback + o.fallback,
            psm_instances: self.psm_instances + o.psm_instances,
            dropped: self.dropped + o.dropped,
            region_hits: self.region_hits + o.region_hits,
        }
    }
}

#[derive(Default)]
struct WindowOutput {
    intervals: Vec<Interval>,
    chains: Vec<IntervalChain>,
    stats: Stats,
}

/// LCE index over the text and both sample rotations of the pattern.
pub struct MismatchIndex {
    store: TextStore,
    n: usize,
    m: usize,
}

impl MismatchIndex {
    pub fn new(p: &[u8], t: &[u8]) -> Result<MismatchIndex> {
        if p.is_empty() {
            return Err(Error::EmptyInstance);
        }
        let h = p.len() / 2;
        let twice = |s: &[u8]| -> Vec<u8> { s.iter().chain(s).copied().collect() };
        let rotated: Vec<u8> = p[h..].iter().chain(&p[..h]).copied().collect();
        let store = TextStore::build(vec![t.to_vec(), twice(p), twice(&rotated)])?;
        Ok(MismatchIndex { store, n: t.len(), m: p.len() })
    }

    pub fn store(&self) -> &TextStore {
        &self.store
    }

    fn pass(&self, sample: usize, k: usize) -> Pass<'_> {
        Pass { store: &self.store, t: self.store.whole(StrId(0)), pp: self.store.whole(StrId(1 + sample)), m: self.m, k }
    }

    /// Circular occurrences aligning `T[i]` with `P[j]`, as at most `2k + 3`
    /// intervals.
    pub fn pair_match(&self, i: usize, j: usize, k: usize) -> Vec<Interval> {
        self.pass(0, k).pair_match(i, j, k)
    }

    /// Pair matches for the anchors `a + o`, `o ∈ anchors`, each aligned with
    /// the start of the pattern.
    pub fn few_case(&self, a: usize, anchors: &AnchorSet, k: usize) -> Vec<Interval> {
        self.pass(0, k).few_case(a, anchors)
    }

    fn windowed_report(&self, k: usize) -> (Vec<usize>, Stats) {
        let passes = [self.pass(0, k), self.pass(1, k)];
        let jobs: Vec<(usize, usize, usize)> = passes.iter().enumerate().flat_map(|(s, pass)| pass.windows().into_iter().map(move |(a, l)| (s, a, l))).collect();
        let outputs: Vec<WindowOutput> = jobs.into_par_iter().map(|(s, a, l)| passes[s].window_report(a, l)).collect();
        let mut intervals = Vec::new();
        let mut chains = Vec::new();
        let mut stats = Stats::default();
        for o in outputs {
            intervals.extend(o.intervals);
            chains.extend(o.chains);
            stats = stats.merge(o.stats);
        }
        (union_positions(intervals, &chains), stats)
    }

    fn nk_report(&self, k: usize) -> Vec<usize> {
        let pass = self.pass(0, k);
        let pieces: Vec<Interval> = (0..self.n).into_par_iter().flat_map_iter(|i| pass.pair_match(i, 0, k)).collect();
        union_positions(pieces, &[])
    }

    fn windowed_decide(&self, k: usize) -> Option<usize> {
        let passes = [self.pass(0, k), self.pass(1, k)];
        let (w0, w1) = (passes[0].windows(), passes[1].windows());
        for c in 0..w0.len().max(w1.len()) {
            let hits = [w0.get(c).and_then(|&(a, l)| passes[0].window_decide(a, l)), w1.get(c).and_then(|&(a, l)| passes[1].window_decide(a, l))];
            if let Some(p) = hits.into_iter().flatten().min() {
                return Some(p);
            }
        }
        None
    }
}

enum Route {
    Empty,
    All,
    Exact,
    Nk,
    Windowed,
}

fn route(m: usize, n: usize, k: usize) -> Result<Route> {
    Ok(match () {
        _ if m == 0 => return Err(Error::EmptyInstance),
        _ if m > n => Route::Empty,
        _ if k >= m => Route::All,
        _ if k == 0 => Route::Exact,
        _ if m < MIN_WINDOWED_LEN || k >= m / 4 => Route::Nk,
        _ => Route::Windowed,
    })
}

/// Starting positions of circular `k`-mismatch occurrences, with branch
/// counters (all zero unless the windowed algorithm ran).
pub fn report_with_stats(p: &[u8], t: &[u8], k: usize) -> Result<(Vec<usize>, Stats)> {
    let (m, n) = (p.len(), t.len());
    Ok(match route(m, n, k)? {
        Route::Empty => (Vec::new(), Stats::default()),
        Route::All => ((0..=n - m).collect(), Stats::default()),
        Route::Exact => (positions(&exact_cpm(p, t)), Stats::default()),
        Route::Nk => (MismatchIndex::new(p, t)?.nk_report(k), Stats::default()),
        Route::Windowed => MismatchIndex::new(p, t)?.windowed_report(k),
    })
}

pub fn report(p: &[u8], t: &[u8], k: usize) -> Result<Vec<usize>> {
    Ok(report_with_stats(p, t, k)?.0)
}

/// One pair match per text position, anchored at the pattern start.
pub fn report_nk(p: &[u8], t: &[u8], k: usize) -> Result<Vec<usize>> {
    let (m, n) = (p.len(), t.len());
    if m == 0 {
        return Err(Error::EmptyInstance);
    }
    if m > n {
        return Ok(Vec::new());
    }
    Ok(MismatchIndex::new(p, t)?.nk_report(k))
}

/// Some circular `k`-mismatch occurrence: the smallest one found in the first
/// window that has any.
pub fn decide(p: &[u8], t: &[u8], k: usize) -> Result<Option<usize>> {
    let (m, n) = (p.len(), t.len());
    Ok(match route(m, n, k)? {
        Route::Empty => None,
        Route::All => Some(0),
        Route::Exact => positions(&exact_cpm(p, t)).first().copied(),
        Route::Nk => MismatchIndex::new(p, t)?.nk_report(k).first().copied(),
        Route::Windowed => MismatchIndex::new(p, t)?.windowed_decide(k),
    })
}

pub fn pair_match(t: &[u8], p: &[u8], i: usize, j: usize, k: usize) -> Result<Vec<Interval>> {
    if i >= t.len() || j >= p.len() {
        return Err(Error::IndexOutOfRange { index: i.max(j), len: if i >= t.len() { t.len() } else { p.len() } });
    }
    Ok(MismatchIndex::new(p, t)?.pair_match(i, j, k))
}

/// Reporting algorithm for [`search`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Algo {
    #[default]
    Anchored,
    Nk,
    Brute,
}

pub fn search(p: &[u8], t: &[u8], k: usize, algo: Algo) -> Result<Vec<usize>> {
    match algo {
        Algo::Anchored => report(p, t, k),
        Algo::Nk => report_nk(p, t, k),
        Algo::Brute if p.is_empty() => Err(Error::EmptyInstance),
        Algo::Brute => Ok(brute_cyc_occ(Metric::Hamming, p, t, k)),
    }
}
