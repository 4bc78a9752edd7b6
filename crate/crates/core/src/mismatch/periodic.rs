//! Approximate periods: misperiods, period discovery, repetitive regions and
//! the reduction of a window with many anchors to a periodic substring
//! instance.

use crate::geometry::Interval;
use crate::pillar::{ipm_bytes, Fragment, TextStore};

use super::pair::{occ_k, AnchorSet};
use super::Pass;

fn phase_at(base: usize, shift: i64, q: usize) -> usize {
    (base as i64 + shift).rem_euclid(q as i64) as usize
}

/// Positions `a` with `s[a] ≠ Q^∞[phase + a]`.
pub fn misperiods(store: &TextStore, s: Fragment, q: Fragment, phase: usize) -> Vec<usize> {
    misperiods_capped(store, s, q, phase, usize::MAX)
}

/// The first `limit` misperiods of `s`.
pub(crate) fn misperiods_capped(store: &TextStore, s: Fragment, q: Fragment, phase: usize, limit: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut pos = 0;
    while out.len() < limit && pos < s.len() {
        pos += store.lcp_periodic(s.suffix(pos), q, (phase + pos) % q.len());
        if pos >= s.len() {
            break;
        }
        out.push(pos);
        pos += 1;
    }
    out
}

/// Misperiods of `s` scanning leftwards, as offsets from the right end
/// (0 is the last letter). `end_phase` is the phase of the position just
/// past `s`.
pub(crate) fn misperiods_leftward(store: &TextStore, s: Fragment, q: Fragment, end_phase: usize, limit: usize) -> Vec<usize> {
    let len = s.len();
    let mut out = Vec::new();
    let mut used = 0;
    while out.len() < limit && used < len {
        let phase = phase_at(end_phase, -(used as i64), q.len());
        used += store.lcs_periodic(s.prefix(len - used), q, phase);
        if used >= len {
            break;
        }
        out.push(used);
        used += 1;
    }
    out
}

/// Shortest `R` with `block = R^e`.
fn primitive_root(store: &TextStore, block: Fragment) -> Fragment {
    let q = block.len();
    (1..=q)
        .filter(|d| q.is_multiple_of(*d))
        .find(|&d| d == q || store.lcp(block.suffix(d), block) == q - d)
        .map(|d| block.prefix(d))
        .expect("the block is its own root")
}

fn is_primitive(store: &TextStore, q: Fragment) -> bool {
    let bytes = store.extract(q);
    if bytes.len() <= 1 {
        return true;
    }
    let doubled: Vec<u8> = bytes.iter().chain(bytes).copied().collect();
    ipm_bytes(bytes, &doubled[1..2 * bytes.len() - 1]).is_ok_and(|hits| hits.is_empty())
}

/// Primitive `Q` with `|Q| ≤ m/(128k)` and fewer than `2k` misperiods in
/// `p1`, guessed from the smallest gap between anchors.
///
/// The gap is a multiple of the period, so each block `p1[c·g..(c+1)·g)` is a
/// power of a rotation-free copy of `Q` unless it holds a misperiod; the
/// first `2k + 1` blocks are tried and each is reduced to its primitive root.
pub fn find_period(store: &TextStore, p1: Fragment, anchors: &AnchorSet, m: usize, k: usize) -> Option<Fragment> {
    let gap = anchors.0.windows(2).map(|w| w[1] - w[0]).min()?;
    for c in 0..=2 * k {
        if (c + 1) * gap > p1.len() {
            break;
        }
        let root = primitive_root(store, p1.slice(c * gap, (c + 1) * gap));
        if 128 * k * root.len() > m || !is_primitive(store, root) {
            continue;
        }
        if misperiods_capped(store, p1, root, 0, 2 * k).len() < 2 * k {
            return Some(root);
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Left,
    Right,
}

/// Extends from `start` in direction `dir` over `s` against `Q^∞`, whose
/// phase at `start` is `phase` (for `Left`, `start` is the exclusive end and
/// `phase` belongs to the letter at `start`). Returns the shortest region of
/// length at least `⌈3m/8⌉` holding at least `⌈8k|R|/m⌉` mismatches.
#[allow(clippy::too_many_arguments)]
pub fn repetitive_region(store: &TextStore, s: Fragment, dir: Direction, q: Fragment, start: usize, phase: usize, m: usize, k: usize) -> Option<Fragment> {
    let room = match dir {
        Direction::Right => s.len() - start,
        Direction::Left => start,
    };
    let threshold = |len: usize| (8 * k * len).div_ceil(m);
    let limit = threshold(room) + 1;
    let offsets = match dir {
        Direction::Right => misperiods_capped(store, s.suffix(start), q, phase, limit),
        Direction::Left => misperiods_leftward(store, s.prefix(start), q, phase, limit),
    };
    let min_len = (3 * m).div_ceil(8);
    // the count only jumps right after a mismatch, so only these lengths can be first
    let candidates = std::iter::once(min_len).chain(offsets.iter().map(|&d| d + 1).filter(|&l| l > min_len));
    let len = candidates.take_while(|&l| l <= room).find(|&l| offsets.partition_point(|&d| d < l) >= threshold(l))?;
    Some(match dir {
        Direction::Right => s.slice(start, start + len),
        Direction::Left => s.slice(start - len, start),
    })
}

/// `U` from the text and `V` from the doubled pattern, both close to powers
/// of `Q`. `U` is aligned with `Q^∞[rt..)`, `V` with `Q^∞[rp..)`; candidate
/// pairs `(p, x)` satisfy `p − x ≡ r (mod |Q|)` with `r = rp − rt`.
#[derive(Clone, Debug)]
pub struct PsmInstance {
    pub u: Fragment,
    pub v: Fragment,
    pub q: Fragment,
    pub rt: usize,
    pub rp: usize,
    pub r: usize,
    /// Misperiods of `U` against `Q^∞[rt..)`.
    pub i: Vec<usize>,
    /// Misperiods of `V` against `Q^∞[rp..)`.
    pub j: Vec<usize>,
    pub m: usize,
    pub k: usize,
}

impl PsmInstance {
    /// Instance with misperiods computed from scratch.
    #[allow(clippy::too_many_arguments)]
    pub fn new(store: &TextStore, u: Fragment, v: Fragment, q: Fragment, rt: usize, rp: usize, m: usize, k: usize) -> PsmInstance {
        let qn = q.len();
        let (rt, rp) = (rt % qn, rp % qn);
        PsmInstance {
            i: misperiods(store, u, q, rt),
            j: misperiods(store, v, q, rp),
            r: phase_at(rp, -(rt as i64), qn),
            u,
            v,
            q,
            rt,
            rp,
            m,
            k,
        }
    }

    pub fn period(&self) -> usize {
        self.q.len()
    }

    /// Text position of `U`'s first letter.
    pub fn text_offset(&self) -> usize {
        self.u.start()
    }
}

#[derive(Debug)]
pub(crate) enum Reduction {
    /// A bound the analysis relies on failed; the caller handles the anchors
    /// one by one.
    Fallback,
    Reduced { intervals: Vec<Interval>, instance: Option<PsmInstance>, region_hits: usize },
}

/// Anchored occurrences of one window with many anchors, split into pair
/// matches at occurrences of the repetitive regions and one periodic
/// substring instance.
pub(crate) fn reduce_to_psm(pass: &Pass, a: usize, window_len: usize, anchors: &AnchorSet, q: Fragment) -> Reduction {
    let (store, m, k, h) = (pass.store, pass.m, pass.k, pass.h());
    let n = pass.t.len();
    let qn = q.len();
    let s = pass.s();
    let p1_at = m - h;
    let r_right = repetitive_region(store, s, Direction::Right, q, p1_at, 0, m, k);
    let r_left = repetitive_region(store, s, Direction::Left, q, m, h % qn, m, k);

    let mut intervals = Vec::new();
    let mut region_hits = 0;
    let last_start = a + window_len - h;
    if let Some(rr) = r_right {
        let len = rr.len();
        let range = pass.t.slice(a, (last_start + len).min(n));
        for o in occ_k(store, rr, range, k).iter() {
            region_hits += 1;
            intervals.extend(pass.pair_match(a + o, 0, k));
        }
    }
    if let Some(rl) = r_left {
        let len = rl.len();
        let lo = (a + h).saturating_sub(len);
        let range = pass.t.slice(lo, a + window_len);
        let j = (m - len + h) % m;
        for o in occ_k(store, rl, range, k).iter() {
            region_hits += 1;
            intervals.extend(pass.pair_match(lo + o, j, k));
        }
    }

    let v_lo = r_left.map_or(0, |f| f.start() - s.start()).min(p1_at);
    let v_hi = r_right.map_or(s.len(), |f| f.end() - s.start()).max(m);
    let v = s.slice(v_lo, v_hi);
    let rp = phase_at(v_lo, -(p1_at as i64), qn);

    let first = a + anchors.0[0];
    let end = a + anchors.0[anchors.len() - 1] + h;
    let reach = m.div_ceil(2);
    let right = misperiods_capped(store, pass.t.suffix(end), q, (end - first) % qn, 18 * k);
    let grow_right = if right.len() == 18 * k { right[18 * k - 1] + 1 } else { usize::MAX }.min(reach).min(n - end);
    let left = misperiods_leftward(store, pass.t.prefix(first), q, 0, 18 * k);
    let grow_left = if left.len() == 18 * k { left[18 * k - 1] + 1 } else { usize::MAX }.min(reach).min(first);
    let u = pass.t.slice(first - grow_left, end + grow_right);
    let rt = phase_at(0, -(grow_left as i64), qn);

    if u.len() < m || v.len() < m {
        return Reduction::Reduced { intervals, instance: None, region_hits };
    }
    let i = misperiods_capped(store, u, q, rt, 42 * k + 1);
    let j = misperiods_capped(store, v, q, rp, 16 * k + 1);
    if i.len() > 42 * k || j.len() > 16 * k {
        return Reduction::Fallback;
    }
    let r = phase_at(rp, -(rt as i64), qn);
    Reduction::Reduced { intervals, instance: Some(PsmInstance { u, v, q, rt, rp, r, i, j, m, k }), region_hits }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pillar::StrId;
    use proptest::prelude::*;

    fn store_of(strings: &[&[u8]]) -> TextStore {
        TextStore::build(strings.iter().map(|s| s.to_vec()).collect()).unwrap()
    }

    fn naive_misperiods(s: &[u8], q: &[u8], phase: usize) -> Vec<usize> {
        (0..s.len()).filter(|&a| s[a] != q[(phase + a) % q.len()]).collect()
    }

    #[test]
    fn misperiod_examples() {
        let st = store_of(&[b"ababab", b"abaXab", b"babab", b"ab"]);
        let q = st.whole(StrId(3));
        assert!(misperiods(&st, st.whole(StrId(0)), q, 0).is_empty());
        assert_eq!(misperiods(&st, st.whole(StrId(1)), q, 0), vec![3]);
        assert!(misperiods(&st, st.whole(StrId(2)), q, 1).is_empty());
        assert_eq!(misperiods(&st, st.whole(StrId(2)), q, 0).len(), 5);
    }

    fn anchors_every(step: usize, count: usize) -> AnchorSet {
        AnchorSet((0..count).map(|c| c * step).collect())
    }

    #[test]
    fn unary_period() {
        let p1 = vec![b'a'; 64];
        let st = store_of(&[&p1]);
        let q = find_period(&st, st.whole(StrId(0)), &anchors_every(1, 40), 128 * 4, 1).unwrap();
        assert_eq!(st.extract(q), b"a");
    }

    #[test]
    fn two_letter_period_with_planted_mismatch() {
        let mut p1: Vec<u8> = b"ab".repeat(50);
        p1[0] = b'b';
        let st = store_of(&[&p1]);
        let q = find_period(&st, st.whole(StrId(0)), &anchors_every(2, 30), 256 * 2, 2).unwrap();
        assert_eq!(st.extract(q), b"ab");
        assert_eq!(misperiods(&st, st.whole(StrId(0)), q, 0), vec![0]);
    }

    #[test]
    fn aperiodic_sample_fails() {
        let p1 = b"abcdefghijklmnopqrstuvwxyz".to_vec();
        let st = store_of(&[&p1]);
        assert!(find_period(&st, st.whole(StrId(0)), &anchors_every(3, 10), 10_000, 1).is_none());
        assert!(find_period(&st, st.whole(StrId(0)), &anchors_every(3, 1), 10_000, 1).is_none());
    }

    #[test]
    fn period_too_long_fails() {
        let p1: Vec<u8> = b"abc".repeat(20);
        let st = store_of(&[&p1]);
        // 128 · k · 3 > m
        assert!(find_period(&st, st.whole(StrId(0)), &anchors_every(3, 10), 383, 1).is_none());
        assert!(find_period(&st, st.whole(StrId(0)), &anchors_every(3, 10), 384, 1).is_some());
    }

    #[test]
    fn periodic_string_has_no_region() {
        let s = b"ab".repeat(40);
        let st = store_of(&[&s, b"ab"]);
        let q = st.whole(StrId(1));
        assert!(repetitive_region(&st, st.whole(StrId(0)), Direction::Right, q, 0, 0, 64, 2).is_none());
        assert!(repetitive_region(&st, st.whole(StrId(0)), Direction::Left, q, 80, 0, 64, 2).is_none());
    }

    #[test]
    fn dense_mismatches_stop_at_minimum_length() {
        let s = b"b".repeat(64);
        let st = store_of(&[&s, b"a"]);
        let r = repetitive_region(&st, st.whole(StrId(0)), Direction::Right, st.whole(StrId(1)), 0, 0, 64, 1).unwrap();
        assert_eq!(r.len(), 24);
        let r = repetitive_region(&st, st.whole(StrId(0)), Direction::Left, st.whole(StrId(1)), 64, 0, 64, 1).unwrap();
        assert_eq!((r.start(), r.len()), (40, 24));
    }

    #[test]
    fn budget_reached_at_end() {
        // m = 64, k = 1: |R| ∈ (24, 32] needs 4 mismatches; the 4th is the last letter
        let mut s = vec![b'a'; 28];
        for x in [5, 25, 26, 27] {
            s[x] = b'b';
        }
        let st = store_of(&[&s, b"a"]);
        let q = st.whole(StrId(1));
        let whole = st.whole(StrId(0));
        assert_eq!(repetitive_region(&st, whole, Direction::Right, q, 0, 0, 64, 1).unwrap().len(), 28);
        assert!(repetitive_region(&st, whole.prefix(27), Direction::Right, q, 0, 0, 64, 1).is_none());
        // too short to reach ⌈3m/8⌉ = 24
        assert!(repetitive_region(&st, whole.prefix(23), Direction::Right, q, 0, 0, 64, 8).is_none());
    }

    /// Shortest region by direct counting.
    fn naive_region(s: &[u8], q: &[u8], m: usize, k: usize) -> Option<usize> {
        ((3 * m).div_ceil(8)..=s.len()).find(|&l| naive_misperiods(&s[..l], q, 0).len() >= (8 * k * l).div_ceil(m))
    }

    proptest! {
        #[test]
        fn misperiods_match_scan(
            s in prop::collection::vec(b'a'..b'c', 0..60),
            q in prop::collection::vec(b'a'..b'c', 1..5),
            phase in 0usize..5,
        ) {
            prop_assume!(!s.is_empty());
            let st = store_of(&[&s, &q]);
            let (sf, qf) = (st.whole(StrId(0)), st.whole(StrId(1)));
            prop_assert_eq!(misperiods(&st, sf, qf, phase % q.len()), naive_misperiods(&s, &q, phase % q.len()));
            let end = (phase + s.len()) % q.len();
            let mut want: Vec<usize> = naive_misperiods(&s, &q, phase % q.len()).into_iter().map(|a| s.len() - 1 - a).collect();
            want.reverse();
            prop_assert_eq!(misperiods_leftward(&st, sf, qf, end, usize::MAX), want);
        }

        #[test]
        fn region_matches_counting(
            s in prop::collection::vec(prop_oneof![9 => Just(b'a'), 1 => Just(b'b')], 1..80),
            m in 16usize..100, k in 1usize..4,
        ) {
            let st = store_of(&[&s, b"a"]);
            let got = repetitive_region(&st, st.whole(StrId(0)), Direction::Right, st.whole(StrId(1)), 0, 0, m, k).map(|f| f.len());
            prop_assert_eq!(got, naive_region(&s, b"a", m, k));
        }
    }
}
