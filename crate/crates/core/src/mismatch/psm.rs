//! Periodic substring instances: window pairs `(p, x)` of `U` and `V` with
//! `p − x ≡ r (mod |Q|)` and at most `k` mismatches.
//!
//! With synchronized periods a mismatch can only sit on a misperiod, so
//! `δ_H = Mispers − Surplus`: `Mispers` counts misperiods in both windows and
//! `Surplus` corrects the aligned misperiod pairs, which count twice but
//! differ in at most one letter.

use std::collections::BTreeMap;

use crate::geometry::{diagonal_segments_min, DiagonalSegment, WeightedGrid};
use crate::geometry::{Interval, IntervalChain};
use crate::pillar::TextStore;

use super::pair::pair_match_linear;
use super::periodic::PsmInstance;

/// Runs `(lo, hi, count)` of window starts `[lo..hi)` in `[0..span)` whose
/// length-`m` window holds `count` of the sorted positions `misp`.
fn axis_cells(misp: &[usize], span: usize, m: usize) -> Vec<(usize, usize, usize)> {
    let mut cuts = vec![0, span];
    for &i in misp {
        cuts.push((i + 1).saturating_sub(m).min(span));
        cuts.push((i + 1).min(span));
    }
    cuts.sort_unstable();
    cuts.dedup();
    cuts.windows(2)
        .map(|w| {
            let count = misp.partition_point(|&i| i < w[0] + m) - misp.partition_point(|&i| i < w[0]);
            (w[0], w[1], count)
        })
        .collect()
}

fn spans(inst: &PsmInstance) -> (usize, usize) {
    (inst.u.len() + 1 - inst.m, inst.v.len() + 1 - inst.m)
}

/// `{p ∈ [s1..s2] : p ≡ x + r (mod q) for some x ∈ [x1..x2]}` as chains.
fn lattice_chains(s: (usize, usize), x: (usize, usize), r: usize, q: usize, out: &mut Vec<IntervalChain>) {
    let ((s1, s2), (x1, x2)) = (s, x);
    if x2 - x1 + 1 >= q {
        out.push(IntervalChain::single(Interval::new(s1, s2), q));
        return;
    }
    let (s1, s2, qi) = (s1 as i64, s2 as i64, q as i64);
    let width = (x2 - x1) as i64;
    let b = (x1 + r) as i64;
    // blocks [b + cq, b + cq + width]
    let c_lo = (s1 - b - width + qi - 1).div_euclid(qi);
    let c_hi = (s2 - b).div_euclid(qi);
    if c_lo > c_hi {
        return;
    }
    let block = |c: i64| (b + c * qi, b + c * qi + width);
    let clipped = |c: i64| {
        let (lo, hi) = block(c);
        Interval::new(lo.max(s1) as usize, hi.min(s2) as usize)
    };
    out.push(IntervalChain::single(clipped(c_lo), q));
    if c_hi > c_lo {
        out.push(IntervalChain::single(clipped(c_hi), q));
    }
    if c_hi > c_lo + 1 {
        let (lo, hi) = block(c_lo + 1);
        out.push(IntervalChain::new(Interval::new(lo as usize, hi as usize), q, (c_hi - c_lo - 2) as usize));
    }
}

fn ppm_local(inst: &PsmInstance) -> Vec<IntervalChain> {
    let (w, h) = spans(inst);
    let xs = axis_cells(&inst.i, w, inst.m);
    let ys = axis_cells(&inst.j, h, inst.m);
    let mut out = Vec::new();
    for &(pl, ph, ci) in &xs {
        for &(xl, xh, cj) in &ys {
            if ci + cj <= inst.k {
                lattice_chains((pl, ph - 1), (xl, xh - 1), inst.r, inst.period(), &mut out);
            }
        }
    }
    out
}

fn shift(c: IntervalChain, by: usize) -> IntervalChain {
    IntervalChain { base: Interval::new(c.base.lo + by, c.base.hi + by), ..c }
}

/// Text positions `p` with some `x`, `p − x ≡ r`, whose windows hold at most
/// `k` misperiods in total.
pub fn periodic_periodic_match(inst: &PsmInstance) -> Vec<IntervalChain> {
    let off = inst.text_offset();
    ppm_local(inst).into_iter().map(|c| shift(c, off)).collect()
}

/// Aligned misperiod pairs `(i, j)` with `i − j ≡ r`.
fn essential_pairs(inst: &PsmInstance) -> impl Iterator<Item = (usize, usize)> + '_ {
    let q = inst.period() as i64;
    inst.i.iter().flat_map(move |&i| {
        inst.j
            .iter()
            .filter(move |&&j| (i as i64 - j as i64 - inst.r as i64).rem_euclid(q) == 0)
            .map(move |&j| (i, j))
    })
}

/// Every text position of the instance: the periodic part plus one pair
/// match per essential pair.
pub fn periodic_substring_match(store: &TextStore, inst: &PsmInstance) -> (Vec<Interval>, Vec<IntervalChain>) {
    let off = inst.text_offset();
    let intervals = essential_pairs(inst)
        .flat_map(|(i, j)| pair_match_linear(store, inst.u, inst.v, inst.m, i, j, inst.k))
        .map(|it| Interval::new(it.lo + off, it.hi + off))
        .collect();
    (intervals, periodic_periodic_match(inst))
}

/// Grid over `(p, x)` with cell weight `Mispers` and diagonal segments of
/// weight `−Surplus` wherever the surplus is positive.
pub fn build_weighted_grid(store: &TextStore, inst: &PsmInstance) -> WeightedGrid {
    let (w, h) = spans(inst);
    let xs = axis_cells(&inst.i, w, inst.m);
    let ys = axis_cells(&inst.j, h, inst.m);
    let weights = xs.iter().map(|&(_, _, ci)| ys.iter().map(|&(_, _, cj)| (ci + cj) as i64).collect()).collect();

    let mut diagonals: BTreeMap<i64, Vec<(i64, i64)>> = BTreeMap::new();
    for (i, j) in essential_pairs(inst) {
        let nabla = if store.at(inst.u, i) == store.at(inst.v, j) { 2 } else { 1 };
        let events = diagonals.entry(i as i64 - j as i64).or_default();
        events.push((i as i64 + 1 - inst.m as i64, nabla));
        events.push((i as i64 + 1, -nabla));
    }
    let mut segments = Vec::new();
    for (delta, mut events) in diagonals {
        let lo = delta.max(0);
        let hi = (w as i64).min(h as i64 + delta);
        if lo >= hi {
            continue;
        }
        events.sort_unstable();
        let mut surplus = 0;
        let mut e = 0;
        while e < events.len() && events[e].0 <= lo {
            surplus += events[e].1;
            e += 1;
        }
        let mut start = lo;
        while start < hi {
            let next = events.get(e).map_or(hi, |ev| ev.0.min(hi));
            if surplus > 0 && next > start {
                segments.push(DiagonalSegment {
                    x: start as usize,
                    y: (start - delta) as usize,
                    len: (next - start) as usize,
                    weight: -surplus,
                });
            }
            while e < events.len() && events[e].0 == next {
                surplus += events[e].1;
                e += 1;
            }
            start = next;
        }
    }
    WeightedGrid {
        width: w,
        height: h,
        xcuts: xs.iter().map(|c| c.0).collect(),
        ycuts: ys.iter().map(|c| c.0).collect(),
        weights,
        segments,
    }
}

/// Smallest text position found by the two decision routes, if any.
pub(crate) fn psm_decide(store: &TextStore, inst: &PsmInstance) -> Option<usize> {
    let grid = build_weighted_grid(store, inst);
    let on_diagonal = diagonal_segments_min(&grid).ok().filter(|pt| pt.value <= inst.k as i64).map(|pt| pt.x);
    let off_diagonal = ppm_local(inst).iter().map(|c| c.base.lo).min();
    on_diagonal.into_iter().chain(off_diagonal).min().map(|p| p + inst.text_offset())
}

#[cfg(test)]
#[allow(clippy::needless_range_loop)]
mod tests {
    use super::*;
    use crate::geometry::union_positions;
    use crate::oracles::hamming;
    use crate::pillar::StrId;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    struct Case {
        store: TextStore,
        inst: PsmInstance,
        u: Vec<u8>,
        v: Vec<u8>,
    }

    fn case(u: &[u8], v: &[u8], q: &[u8], rt: usize, rp: usize, m: usize, k: usize) -> Case {
        let store = TextStore::build(vec![u.to_vec(), v.to_vec(), q.to_vec()]).unwrap();
        let inst = PsmInstance::new(&store, store.whole(StrId(0)), store.whole(StrId(1)), store.whole(StrId(2)), rt, rp, m, k);
        Case { store, inst, u: u.to_vec(), v: v.to_vec() }
    }

    fn congruent(p: usize, x: usize, r: usize, q: usize) -> bool {
        (p as i64 - x as i64 - r as i64).rem_euclid(q as i64) == 0
    }

    fn mispers(inst: &PsmInstance, p: usize, x: usize) -> usize {
        let m = inst.m;
        inst.i.iter().filter(|&&i| p <= i && i < p + m).count() + inst.j.iter().filter(|&&j| x <= j && j < x + m).count()
    }

    fn surplus(c: &Case, p: usize, x: usize) -> usize {
        let m = c.inst.m;
        (0..m)
            .filter(|&t| c.inst.i.contains(&(p + t)) && c.inst.j.contains(&(x + t)))
            .map(|t| if c.u[p + t] == c.v[x + t] { 2 } else { 1 })
            .sum()
    }

    fn brute_psm(c: &Case) -> Vec<usize> {
        let (inst, m) = (&c.inst, c.inst.m);
        (0..=c.u.len() - m)
            .filter(|&p| {
                (0..=c.v.len() - m).any(|x| congruent(p, x, inst.r, inst.period()) && hamming(&c.u[p..p + m], &c.v[x..x + m]).unwrap() <= inst.k)
            })
            .collect()
    }

    fn brute_ppm(c: &Case) -> Vec<usize> {
        let (inst, m) = (&c.inst, c.inst.m);
        (0..=c.u.len() - m)
            .filter(|&p| (0..=c.v.len() - m).any(|x| congruent(p, x, inst.r, inst.period()) && mispers(inst, p, x) <= inst.k))
            .collect()
    }

    fn periodic_word(rng: &mut StdRng, q: &[u8], phase: usize, len: usize, noise: usize) -> Vec<u8> {
        let mut w: Vec<u8> = (0..len).map(|t| q[(phase + t) % q.len()]).collect();
        for _ in 0..noise {
            let at = rng.gen_range(0..len);
            w[at] = b'a' + rng.gen_range(0..3);
        }
        w
    }

    fn random_case(rng: &mut StdRng) -> Case {
        let q: &[u8] = [&b"a"[..], b"ab", b"abb", b"aab"][rng.gen_range(0..4)];
        let m = rng.gen_range(6..16);
        let k = rng.gen_range(1..4);
        let (rt, rp) = (rng.gen_range(0..q.len()), rng.gen_range(0..q.len()));
        let (ul, un) = (rng.gen_range(m..=2 * m), rng.gen_range(0..5));
        let (vl, vn) = (rng.gen_range(m..=2 * m), rng.gen_range(0..4));
        let u = periodic_word(rng, q, rt, ul, un);
        let v = periodic_word(rng, q, rp, vl, vn);
        case(&u, &v, q, rt, rp, m, k)
    }

    #[test]
    fn clean_instance_is_one_chain() {
        let c = case(b"abababababab", b"babababa", b"ab", 0, 1, 6, 1);
        assert!(c.inst.i.is_empty() && c.inst.j.is_empty());
        let chains = periodic_periodic_match(&c.inst);
        assert_eq!(chains.len(), 1);
        assert_eq!(union_positions(Vec::new(), &chains), brute_psm(&c));
        let grid = build_weighted_grid(&c.store, &c.inst);
        assert_eq!(grid.weights, vec![vec![0]]);
        assert!(grid.segments.is_empty());
    }

    #[test]
    fn packed_misperiods_exceed_budget() {
        // every window of U holds both misperiods
        let c = case(b"aaabbaaa", b"aaaaaaa", b"a", 0, 0, 7, 1);
        assert_eq!(c.inst.i, vec![3, 4]);
        assert!(periodic_periodic_match(&c.inst).is_empty());
    }

    #[test]
    fn lone_equal_pair_gives_one_segment() {
        let c = case(b"aaabaaa", b"aaabaaa", b"a", 0, 0, 5, 1);
        let grid = build_weighted_grid(&c.store, &c.inst);
        assert_eq!(grid.segments, vec![DiagonalSegment { x: 0, y: 0, len: 3, weight: -2 }]);
        assert_eq!(psm_decide(&c.store, &c.inst), Some(0));
    }

    #[test]
    fn random_instances_match_definitions() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..300 {
            let c = random_case(&mut rng);
            let (inst, m) = (&c.inst, c.inst.m);
            assert_eq!(union_positions(Vec::new(), &periodic_periodic_match(inst)), brute_ppm(&c));
            let (iv, ch) = periodic_substring_match(&c.store, inst);
            let want = brute_psm(&c);
            assert_eq!(union_positions(iv, &ch), want);
            let grid = build_weighted_grid(&c.store, inst);
            let mut on_segment = vec![vec![0i64; c.v.len() + 1 - m]; c.u.len() + 1 - m];
            for s in &grid.segments {
                for t in 0..s.len {
                    assert_eq!(on_segment[s.x + t][s.y + t], 0, "overlapping segments");
                    on_segment[s.x + t][s.y + t] = -s.weight;
                }
            }
            for p in 0..=c.u.len() - m {
                for x in 0..=c.v.len() - m {
                    assert_eq!(grid.cell_weight(p, x), mispers(inst, p, x) as i64);
                    let sp = if congruent(p, x, inst.r, inst.period()) { surplus(&c, p, x) } else { 0 };
                    assert_eq!(on_segment[p][x], sp as i64, "p={p} x={x}");
                }
            }
            match psm_decide(&c.store, inst) {
                Some(p) => assert!(want.contains(&p)),
                None => assert!(want.is_empty()),
            }
        }
    }
}
