//! Circular pattern matching under edit distance.
//!
//! A position `i` is reported when some rotation `P₂P₁` of the pattern
//! aligns with a text fragment `T[i..r)` within `k` edits. Every such
//! alignment passes through an anchor `j` where `P₂` ends and `P₁` starts, so
//! the search runs one backward wavefront (for `P₂` against text ending at
//! `j`) and one forward wavefront (for `P₁` starting at `j`) per anchor.

mod lv;

use rayon::prelude::*;

pub use lv::LvRun;

use crate::error::Result;
use crate::geometry::{merge_intervals, positions, Interval};
use crate::lpam::{all_lpam, all_lpam_baseline};
use crate::pillar::{Fragment, StrId, TextStore};

/// LCE index over one text and one pattern.
pub struct EditIndex {
    store: Option<(TextStore, Fragment, Fragment)>,
    n: usize,
    m: usize,
}

impl EditIndex {
    pub fn new(p: &[u8], t: &[u8]) -> Result<EditIndex> {
        let store = if p.is_empty() && t.is_empty() {
            None
        } else {
            let store = TextStore::build(vec![t.to_vec(), p.to_vec()])?;
            let (tf, pf) = (store.whole(StrId(0)), store.whole(StrId(1)));
            Some((store, tf, pf))
        };
        Ok(EditIndex { store, n: t.len(), m: p.len() })
    }

    pub fn text_len(&self) -> usize {
        self.n
    }

    pub fn pattern_len(&self) -> usize {
        self.m
    }

    /// Common prefix of `T[ts..)` and `P[ps..)`.
    fn lcp(&self, ts: usize, ps: usize) -> usize {
        self.store.as_ref().map_or(0, |(s, t, p)| s.lcp(t.suffix(ts), p.suffix(ps)))
    }

    /// Common suffix of `T[..te)` and `P[..pe)`.
    fn lcs(&self, te: usize, pe: usize) -> usize {
        self.store.as_ref().map_or(0, |(s, t, p)| s.lcp_r(t.prefix(te), p.prefix(pe)))
    }

    /// Wavefront runs of `T[j..n)` against `P`.
    pub fn forward_runs(&self, k: usize, j: usize) -> Vec<LvRun> {
        lv::wavefront(self.n - j, self.m, k, |a, b| self.lcp(j + a, b))
    }

    /// Wavefront runs of reversed `T[0..j)` against reversed `P`.
    pub fn backward_runs(&self, k: usize, j: usize) -> Vec<LvRun> {
        lv::wavefront(j, self.m, k, |a, b| self.lcs(j - a, self.m - b))
    }

    /// `LPref_{k'}[j]` for every `k' ∈ [0..k]`.
    pub fn lpref_at(&self, k: usize, j: usize) -> Vec<usize> {
        let reach = lv::furthest_prefix(&self.forward_runs(k, j), k);
        let mut out = Vec::with_capacity(k + 1);
        let mut best = 0;
        for b in reach {
            best = best.max(b.unwrap_or(0));
            out.push(best);
        }
        out
    }

    /// Positions `i ≤ j` from which some rotation split at `j` matches within
    /// `k` edits, as possibly overlapping intervals.
    pub fn report_anchored(&self, k: usize, j: usize) -> Vec<Interval> {
        let alpha = self.lpref_at(k, j);
        let mut out = Vec::new();
        for run in self.backward_runs(k, j) {
            let need = self.m.saturating_sub(alpha[k - run.d] + run.b);
            if need < run.len {
                let top = j - run.a - need;
                out.push(Interval::new(j - run.a - (run.len - 1), top));
            }
        }
        out
    }
}

pub fn lv_runs(t: &[u8], p: &[u8], k: usize) -> Result<Vec<LvRun>> {
    Ok(EditIndex::new(p, t)?.forward_runs(k, 0))
}

pub fn lpref_at(t: &[u8], p: &[u8], k: usize, j: usize) -> Result<Vec<usize>> {
    Ok(EditIndex::new(p, t)?.lpref_at(k, j))
}

pub fn report_anchored(t: &[u8], p: &[u8], k: usize, j: usize) -> Result<Vec<Interval>> {
    Ok(EditIndex::new(p, t)?.report_anchored(k, j))
}

/// Starting positions `i ∈ [0..n]` of circular `k`-edit occurrences.
pub fn report(p: &[u8], t: &[u8], k: usize) -> Result<Vec<usize>> {
    let (m, n) = (p.len(), t.len());
    if k >= m {
        return Ok((0..=n).collect());
    }
    let index = EditIndex::new(p, t)?;
    let pieces: Vec<Interval> = (0..=n).into_par_iter().flat_map_iter(|j| index.report_anchored(k, j)).collect();
    Ok(positions(&merge_intervals(pieces)))
}

/// Where the prefix/suffix tables for [`decide`] come from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LpamSource {
    #[default]
    Fast,
    Baseline,
}

/// Some circular `k`-edit occurrence, or `None`.
pub fn decide(p: &[u8], t: &[u8], k: usize, source: LpamSource) -> Result<Option<usize>> {
    let m = p.len();
    if k >= m {
        return Ok(Some(0));
    }
    let table = match source {
        LpamSource::Fast => all_lpam(p, t, k)?,
        LpamSource::Baseline => all_lpam_baseline(p, t, k)?,
    };
    let index = EditIndex::new(p, t)?;
    for j in 0..=t.len() {
        if (0..=k).any(|kp| table.lpref(kp, j) + table.lsuf(k - kp, j) >= m) {
            let found = index.report_anchored(k, j).iter().map(|it| it.lo).min();
            debug_assert!(found.is_some(), "witness anchor without occurrence");
            if found.is_some() {
                return Ok(found);
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
#[allow(clippy::needless_range_loop)]
mod tests {
    use super::*;
    use crate::oracles::{brute_cyc_occ, brute_lpref, circular_edit_profile, edit_dp, Metric};
    use proptest::prelude::*;

    const SAMPLE_P: &[u8] = b"abcbbbb";
    const SAMPLE_T: &[u8] = b"aacbbcbacbcb";

    #[test]
    fn lpref_edges() {
        let idx = EditIndex::new(b"abcab", b"abcxab").unwrap();
        assert_eq!(idx.lpref_at(3, 6), vec![0, 1, 2, 3]);
        assert_eq!(idx.lpref_at(0, 0), vec![3]);
        assert_eq!(idx.lpref_at(2, 0), vec![3, 5, 5]);
    }

    #[test]
    fn anchored_at_zero() {
        let idx = EditIndex::new(b"abc", b"abcz").unwrap();
        assert_eq!(positions(&merge_intervals(idx.report_anchored(1, 0))), vec![0]);
        let idx = EditIndex::new(b"abc", b"zzzz").unwrap();
        assert!(idx.report_anchored(1, 0).is_empty());
    }

    #[test]
    fn edit_occurrence_at_three() {
        let idx = EditIndex::new(SAMPLE_P, SAMPLE_T).unwrap();
        assert!((0..=SAMPLE_T.len()).any(|j| idx.report_anchored(2, j).iter().any(|it| it.contains(3))));
        let got = report(SAMPLE_P, SAMPLE_T, 2).unwrap();
        assert!(got.contains(&3));
        assert_eq!(got, brute_cyc_occ(Metric::Edit, SAMPLE_P, SAMPLE_T, 2));
        for source in [LpamSource::Fast, LpamSource::Baseline] {
            let i = decide(SAMPLE_P, SAMPLE_T, 2, source).unwrap().unwrap();
            assert!(circular_edit_profile(SAMPLE_P, SAMPLE_T)[i] <= 2);
        }
    }

    #[test]
    fn self_match_and_absence() {
        assert!(report(b"abcd", b"abcd", 1).unwrap().contains(&0));
        assert_eq!(decide(b"abcd", b"abcd", 1, LpamSource::Fast).unwrap(), Some(0));
        assert_eq!(report(b"aaaa", b"bbbbbbbb", 2).unwrap(), Vec::<usize>::new());
        assert_eq!(decide(b"aaaa", b"bbbbbbbb", 2, LpamSource::Fast).unwrap(), None);
        assert_eq!(report(b"ab", b"xyz", 2).unwrap(), vec![0, 1, 2, 3]);
    }

    fn brute_anchored(t: &[u8], p: &[u8], k: usize, j: usize) -> Vec<usize> {
        let m = p.len();
        (0..=j)
            .filter(|&i| {
                (0..=m).any(|s| {
                    let left = edit_dp(&t[i..j], &p[s..]);
                    left <= k && (j..=t.len()).any(|r| left + edit_dp(&t[j..r], &p[..s]) <= k)
                })
            })
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn lpref_matches_dp(
            t in prop::collection::vec(b'a'..b'c', 0..40),
            p in prop::collection::vec(b'a'..b'c', 1..20),
            k in 0usize..5,
        ) {
            let idx = EditIndex::new(&p, &t).unwrap();
            let table: Vec<Vec<usize>> = (0..=k).map(|kp| brute_lpref(&p, &t, kp)).collect();
            for j in 0..=t.len() {
                let got = idx.lpref_at(k, j);
                for kp in 0..=k {
                    prop_assert_eq!(got[kp], table[kp][j]);
                }
            }
        }

        #[test]
        fn anchored_matches_double_loop(
            t in prop::collection::vec(b'a'..b'c', 0..16),
            p in prop::collection::vec(b'a'..b'c', 1..7),
            k in 0usize..3,
        ) {
            let idx = EditIndex::new(&p, &t).unwrap();
            for j in 0..=t.len() {
                let got = positions(&merge_intervals(idx.report_anchored(k, j)));
                prop_assert_eq!(got, brute_anchored(&t, &p, k, j));
            }
        }

        #[test]
        fn report_matches_rotation_dp(
            t in prop::collection::vec(b'a'..b'e', 0..120),
            p in prop::collection::vec(b'a'..b'e', 1..30),
            k in 1usize..5,
            binary in any::<bool>(),
        ) {
            let squash = |s: &[u8]| -> Vec<u8> { s.iter().map(|&c| if binary { b'a' + (c - b'a') % 2 } else { c }).collect() };
            let (p, t) = (squash(&p), squash(&t));
            let got = report(&p, &t, k).unwrap();
            prop_assert_eq!(&got, &brute_cyc_occ(Metric::Edit, &p, &t, k));
            let wider = report(&p, &t, k + 1).unwrap();
            prop_assert!(got.iter().all(|i| wider.binary_search(i).is_ok()));
            let fast = decide(&p, &t, k, LpamSource::Fast).unwrap();
            let base = decide(&p, &t, k, LpamSource::Baseline).unwrap();
            prop_assert_eq!(fast, base);
            prop_assert_eq!(fast.is_some(), !got.is_empty());
            if let Some(i) = fast {
                prop_assert!(got.contains(&i));
            }
        }
    }
}
