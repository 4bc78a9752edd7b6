//! Mismatch scans by kangaroo jumps and the windows they induce around an
//! anchor.

use crate::geometry::{merge_intervals, Interval};
use crate::pillar::{Fragment, TextStore};

/// Offsets of the first `limit` mismatches between `a` and `b`, scanning
/// forward over their common length.
pub(crate) fn forward_mismatches(store: &TextStore, a: Fragment, b: Fragment, limit: usize) -> Vec<usize> {
    let len = a.len().min(b.len());
    let mut out = Vec::new();
    let mut pos = 0;
    while out.len() < limit && pos < len {
        pos += store.lcp(a.suffix(pos), b.suffix(pos));
        if pos >= len {
            break;
        }
        out.push(pos);
        pos += 1;
    }
    out
}

/// Offsets, counted from the right end (0 is the last letter), of the first
/// `limit` mismatches between the right-aligned `a` and `b`.
pub(crate) fn backward_mismatches(store: &TextStore, a: Fragment, b: Fragment, limit: usize) -> Vec<usize> {
    let len = a.len().min(b.len());
    let mut out = Vec::new();
    let mut pos = 0;
    while out.len() < limit && pos < len {
        pos += store.lcp_r(a.prefix(a.len() - pos), b.prefix(b.len() - pos));
        if pos >= len {
            break;
        }
        out.push(pos);
        pos += 1;
    }
    out
}

/// Sorted starting positions (relative to `window`) of the `k`-mismatch
/// occurrences of `sample`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AnchorSet(pub Vec<usize>);

impl AnchorSet {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }
}

/// `Occ_k(sample, window)`, each candidate verified with at most `k + 1` LCP
/// queries.
pub fn occ_k(store: &TextStore, sample: Fragment, window: Fragment, k: usize) -> AnchorSet {
    let s = sample.len();
    if s > window.len() {
        return AnchorSet::default();
    }
    AnchorSet((0..=window.len() - s).filter(|&o| forward_mismatches(store, sample, window.slice(o, o + s), k + 1).len() <= k).collect())
}

/// Starts `p ∈ [lo..hi]` of length-`m` windows around anchor `i` holding at
/// most `k` mismatches. Mismatches sit at `i + d` for `d ∈ right` and at
/// `i − 1 − d` for `d ∈ left`; each list is exact up to its first `k + 1`
/// entries.
pub(crate) fn sweep_windows(i: usize, m: usize, k: usize, lo: usize, hi: usize, right: &[usize], left: &[usize]) -> Vec<Interval> {
    if lo > hi {
        return Vec::new();
    }
    let (i, m, lo, hi) = (i as i64, m as i64, lo as i64, hi as i64);
    let mut count = 0usize;
    let mut events: Vec<(i64, i64)> = Vec::with_capacity(right.len() + left.len());
    for &d in left {
        let y = i - 1 - d as i64;
        if y >= lo {
            count += 1;
            // leaves once p > y
            if y < hi {
                events.push((y + 1, -1));
            }
        }
    }
    for &d in right {
        let enters = i + d as i64 - m + 1;
        if enters <= lo {
            count += 1;
        } else if enters <= hi {
            events.push((enters, 1));
        }
    }
    events.sort_unstable();
    let mut out = Vec::new();
    let mut count = count as i64;
    let mut start = lo;
    let mut e = 0;
    while start <= hi {
        let mut next = hi + 1;
        if e < events.len() {
            next = events[e].0;
        }
        if count <= k as i64 && start < next {
            out.push(Interval::new(start as usize, (next - 1) as usize));
        }
        while e < events.len() && events[e].0 == next {
            count += events[e].1;
            e += 1;
        }
        start = next;
    }
    merge_intervals(out)
}

/// Circular occurrences `p` of the pattern in `t` that align `t[i]` with
/// pattern letter `j`; `pp` spells the pattern twice.
pub(crate) fn pair_match_circular(store: &TextStore, t: Fragment, pp: Fragment, i: usize, j: usize, k: usize) -> Vec<Interval> {
    let m = pp.len() / 2;
    let n = t.len();
    if m == 0 || m > n || i >= n {
        return Vec::new();
    }
    let lo = (i + 1).saturating_sub(m);
    let hi = i.min(n - m);
    let right = forward_mismatches(store, t.suffix(i), pp.slice(j, j + m), k + 1);
    let left = backward_mismatches(store, t.prefix(i), pp.prefix(j + m), k + 1);
    sweep_windows(i, m, k, lo, hi, &right, &left)
}

/// Positions `p` of `u` with `u[p..p+m)` within `k` mismatches of
/// `v[x..x+m)`, where the alignment maps `u[i]` onto `v[j]`.
pub(crate) fn pair_match_linear(store: &TextStore, u: Fragment, v: Fragment, m: usize, i: usize, j: usize, k: usize) -> Vec<Interval> {
    if u.len() < m || v.len() < m || i >= u.len() || j >= v.len() {
        return Vec::new();
    }
    // x = p − i + j must lie in [0..|v| − m]
    let Some(x_cap) = (v.len() - m + i).checked_sub(j) else {
        return Vec::new();
    };
    let lo = (i + 1).saturating_sub(m).max(i.saturating_sub(j));
    let hi = i.min(u.len() - m).min(x_cap);
    let right = forward_mismatches(store, u.suffix(i), v.suffix(j), k + 1);
    let left = backward_mismatches(store, u.prefix(i), v.prefix(j), k + 1);
    sweep_windows(i, m, k, lo, hi, &right, &left)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::positions;
    use crate::oracles::{brute_occ_k, hamming, rotate};
    use crate::pillar::StrId;
    use proptest::prelude::*;

    fn store_of(strings: &[&[u8]]) -> TextStore {
        TextStore::build(strings.iter().map(|s| s.to_vec()).collect()).unwrap()
    }

    fn brute_pair(t: &[u8], p: &[u8], i: usize, j: usize, k: usize) -> Vec<usize> {
        let (m, n) = (p.len(), t.len());
        if m > n {
            return Vec::new();
        }
        ((i + 1).saturating_sub(m)..=i.min(n - m))
            .filter(|&q| {
                let x = (j + m - (i - q) % m) % m;
                hamming(&t[q..q + m], &rotate(p, x)).unwrap() <= k
            })
            .collect()
    }

    fn circular(t: &[u8], p: &[u8], i: usize, j: usize, k: usize) -> Vec<Interval> {
        let pp: Vec<u8> = p.iter().chain(p).copied().collect();
        let store = store_of(&[t, &pp]);
        pair_match_circular(&store, store.whole(StrId(0)), store.whole(StrId(1)), i, j, k)
    }

    #[test]
    fn occ_examples() {
        let store = store_of(&[b"aaa", b"aabaa"]);
        let (s, w) = (store.whole(StrId(0)), store.whole(StrId(1)));
        assert_eq!(occ_k(&store, s, w, 1).0, vec![0, 1, 2]);
        assert_eq!(occ_k(&store, s, w, 0).0, Vec::<usize>::new());
        assert!(occ_k(&store, w, s, 3).is_empty());
    }

    #[test]
    fn anchored_pair_contains_four() {
        let got = positions(&circular(b"aaccbcbbabbb", b"abcbbbb", 8, 0, 2));
        assert!(got.contains(&4));
        assert_eq!(got, brute_pair(b"aaccbcbbabbb", b"abcbbbb", 8, 0, 2));
    }

    #[test]
    fn large_budget_takes_everything() {
        let t = b"abcdefghij";
        assert_eq!(positions(&circular(t, b"xyz", 5, 1, 3)), vec![3, 4, 5]);
        assert_eq!(positions(&circular(t, b"xyz", 0, 0, 3)), vec![0]);
        assert_eq!(positions(&circular(t, b"xyz", 9, 2, 3)), vec![7]);
    }

    proptest! {
        #[test]
        fn circular_matches_brute(
            t in prop::collection::vec(b'a'..b'd', 1..60),
            p in prop::collection::vec(b'a'..b'd', 1..15),
            i in 0usize..60, j in 0usize..15, k in 0usize..5,
        ) {
            let (i, j) = (i % t.len(), j % p.len());
            let got = circular(&t, &p, i, j, k);
            prop_assert!(got.len() <= 2 * k + 3);
            prop_assert_eq!(positions(&got), brute_pair(&t, &p, i, j, k));
        }

        #[test]
        fn linear_matches_brute(
            u in prop::collection::vec(b'a'..b'c', 1..40),
            v in prop::collection::vec(b'a'..b'c', 1..40),
            m in 1usize..12, i in 0usize..40, j in 0usize..40, k in 0usize..4,
        ) {
            let (i, j) = (i % u.len(), j % v.len());
            let store = store_of(&[&u, &v]);
            let got = positions(&pair_match_linear(&store, store.whole(StrId(0)), store.whole(StrId(1)), m, i, j, k));
            let want: Vec<usize> = if u.len() < m || v.len() < m { Vec::new() } else {
                (0..=u.len() - m).filter(|&p| {
                    p <= i && i < p + m && p + j >= i && p + j - i + m <= v.len()
                        && hamming(&u[p..p + m], &v[p + j - i..p + j - i + m]).unwrap() <= k
                }).collect()
            };
            prop_assert_eq!(got, want);
        }

        #[test]
        fn occ_matches_brute(
            s in prop::collection::vec(b'a'..b'c', 1..10),
            w in prop::collection::vec(b'a'..b'c', 0..40),
            k in 0usize..4,
        ) {
            let store = store_of(&[&s, &w]);
            prop_assert_eq!(occ_k(&store, store.whole(StrId(0)), store.whole(StrId(1)), k).0, brute_occ_k(&s, &w, k));
        }
    }
}
