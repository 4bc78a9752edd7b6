//! Occurrence-set representations and the plane sweeps that report or
//! minimise over them.

mod diagonal;

pub use diagonal::{diagonal_segments_min, DiagonalSegment, GridPoint, WeightedGrid};

use crate::error::{Error, Result};

/// Closed integer interval `[lo..hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

impl Interval {
    pub fn new(lo: usize, hi: usize) -> Interval {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    // closed intervals are never empty
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn contains(&self, x: usize) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// Sorts and fuses overlapping or adjacent intervals.
pub fn merge_intervals(mut items: Vec<Interval>) -> Vec<Interval> {
    items.sort_unstable();
    let mut out: Vec<Interval> = Vec::with_capacity(items.len());
    for it in items {
        match out.last_mut() {
            Some(last) if it.lo <= last.hi + 1 => last.hi = last.hi.max(it.hi),
            _ => out.push(it),
        }
    }
    out
}

pub fn positions(items: &[Interval]) -> Vec<usize> {
    items.iter().flat_map(|it| it.lo..=it.hi).collect()
}

/// `base ∪ (base ⊕ q) ∪ … ∪ (base ⊕ a·q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntervalChain {
    pub base: Interval,
    pub q: usize,
    pub a: usize,
}

impl IntervalChain {
    pub fn new(base: Interval, q: usize, a: usize) -> IntervalChain {
        assert!(q >= 1, "chain difference must be positive");
        IntervalChain { base, q, a }
    }

    pub fn single(base: Interval, q: usize) -> IntervalChain {
        IntervalChain::new(base, q, 0)
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        (0..=self.a).flat_map(move |t| (self.base.lo + t * self.q)..=(self.base.hi + t * self.q))
    }
}

/// Grid rectangle, inclusive on both axes. Point `(col, row)` stands for
/// position `col·q + row` on a grid of height `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rectangle {
    pub col_lo: usize,
    pub col_hi: usize,
    pub row_lo: usize,
    pub row_hi: usize,
}

pub fn chains_to_rectangles(chains: &[IntervalChain], q: usize) -> Result<Vec<Rectangle>> {
    let mut out = Vec::with_capacity(3 * chains.len());
    for ch in chains {
        if ch.q != q {
            return Err(Error::MismatchedDifference { expected: q, found: ch.q });
        }
        let (c1, r1) = (ch.base.lo / q, ch.base.lo % q);
        let (c2, r2) = (ch.base.hi / q, ch.base.hi % q);
        if c1 == c2 {
            out.push(Rectangle { col_lo: c1, col_hi: c1 + ch.a, row_lo: r1, row_hi: r2 });
            continue;
        }
        out.push(Rectangle { col_lo: c1, col_hi: c1 + ch.a, row_lo: r1, row_hi: q - 1 });
        if c2 >= c1 + 2 {
            out.push(Rectangle { col_lo: c1 + 1, col_hi: c2 - 1 + ch.a, row_lo: 0, row_hi: q - 1 });
        }
        out.push(Rectangle { col_lo: c2, col_hi: c2 + ch.a, row_lo: 0, row_hi: r2 });
    }
    Ok(out)
}

/// Cover counts over elementary row segments.
struct CoverTree {
    count: Vec<u32>,
    any: Vec<bool>,
    size: usize,
}

impl CoverTree {
    fn new(size: usize) -> CoverTree {
        CoverTree { count: vec![0; 4 * size.max(1)], any: vec![false; 4 * size.max(1)], size }
    }

    fn add(&mut self, lo: usize, hi: usize, delta: i32) {
        self.add_at(1, 0, self.size, lo, hi, delta);
    }

    fn add_at(&mut self, node: usize, l: usize, r: usize, lo: usize, hi: usize, delta: i32) {
        if hi <= l || r <= lo {
            return;
        }
        if lo <= l && r <= hi {
            self.count[node] = (self.count[node] as i32 + delta) as u32;
        } else {
            let mid = (l + r) / 2;
            self.add_at(2 * node, l, mid, lo, hi, delta);
            self.add_at(2 * node + 1, mid, r, lo, hi, delta);
        }
        let below = r - l > 1 && (self.any[2 * node] || self.any[2 * node + 1]);
        self.any[node] = self.count[node] > 0 || below;
    }

    fn covered(&self, out: &mut Vec<(usize, usize)>) {
        self.collect(1, 0, self.size, out);
    }

    fn collect(&self, node: usize, l: usize, r: usize, out: &mut Vec<(usize, usize)>) {
        if !self.any[node] {
            return;
        }
        if self.count[node] > 0 {
            match out.last_mut() {
                Some(last) if last.1 == l => last.1 = r,
                _ => out.push((l, r)),
            }
            return;
        }
        let mid = (l + r) / 2;
        self.collect(2 * node, l, mid, out);
        self.collect(2 * node + 1, mid, r, out);
    }
}

/// Every grid point of the union, reported once, column by column and
/// bottom-up within a column (hence sorted as positions `col·q + row`).
pub fn report_rectangle_union(rects: &[Rectangle], q: usize) -> Vec<usize> {
    if rects.is_empty() {
        return Vec::new();
    }
    let mut ys: Vec<usize> = rects.iter().flat_map(|r| [r.row_lo, r.row_hi + 1]).collect();
    ys.sort_unstable();
    ys.dedup();
    let slot = |y: usize| ys.partition_point(|&v| v < y);
    let mut events: Vec<(usize, i32, usize, usize)> = Vec::with_capacity(2 * rects.len());
    for r in rects {
        let (a, b) = (slot(r.row_lo), slot(r.row_hi + 1));
        events.push((r.col_lo, 1, a, b));
        events.push((r.col_hi + 1, -1, a, b));
    }
    events.sort_unstable();
    let mut tree = CoverTree::new(ys.len() - 1);
    let mut out = Vec::new();
    let mut ranges = Vec::new();
    let mut e = 0;
    while e < events.len() {
        let col = events[e].0;
        while e < events.len() && events[e].0 == col {
            let (_, delta, a, b) = events[e];
            tree.add(a, b, delta);
            e += 1;
        }
        let Some(&(next, ..)) = events.get(e) else { break };
        ranges.clear();
        tree.covered(&mut ranges);
        for c in col..next {
            for &(a, b) in &ranges {
                out.extend((ys[a]..ys[b]).map(|row| c * q + row));
            }
        }
    }
    out
}

/// Sorted union of explicit intervals and chains sharing nothing but the
/// target universe. Chains are grouped by difference and reported through the
/// rectangle sweep.
pub fn union_positions(intervals: Vec<Interval>, chains: &[IntervalChain]) -> Vec<usize> {
    let mut out = positions(&merge_intervals(intervals));
    let mut diffs: Vec<usize> = chains.iter().map(|c| c.q).collect();
    diffs.sort_unstable();
    diffs.dedup();
    for q in diffs {
        let group: Vec<IntervalChain> = chains.iter().copied().filter(|c| c.q == q).collect();
        let rects = chains_to_rectangles(&group, q).expect("grouped by difference");
        out.extend(report_rectangle_union(&rects, q));
    }
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn expand(chains: &[IntervalChain]) -> Vec<usize> {
        let set: BTreeSet<usize> = chains.iter().flat_map(|c| c.elements().collect::<Vec<_>>()).collect();
        set.into_iter().collect()
    }

    #[test]
    fn single_column_chain() {
        let ch = [IntervalChain::single(Interval::new(0, 2), 5)];
        let rects = chains_to_rectangles(&ch, 5).unwrap();
        assert_eq!(rects, vec![Rectangle { col_lo: 0, col_hi: 0, row_lo: 0, row_hi: 2 }]);
    }

    #[test]
    fn chain_example() {
        let ch = [IntervalChain::new(Interval::new(3, 6), 5, 2)];
        let want = vec![3, 4, 5, 6, 8, 9, 10, 11, 13, 14, 15, 16];
        assert_eq!(expand(&ch), want);
        let rects = chains_to_rectangles(&ch, 5).unwrap();
        assert!(rects.len() <= 3);
        assert_eq!(report_rectangle_union(&rects, 5), want);
        assert!(chains_to_rectangles(&[], 5).unwrap().is_empty());
        assert!(chains_to_rectangles(&ch, 4).is_err());
    }

    #[test]
    fn overlapping_and_disjoint_squares() {
        let a = Rectangle { col_lo: 0, col_hi: 1, row_lo: 0, row_hi: 1 };
        let b = Rectangle { col_lo: 1, col_hi: 2, row_lo: 1, row_hi: 2 };
        assert_eq!(report_rectangle_union(&[a, b], 4), vec![0, 1, 4, 5, 6, 9, 10]);
        let c = Rectangle { col_lo: 3, col_hi: 3, row_lo: 0, row_hi: 0 };
        let d = Rectangle { col_lo: 0, col_hi: 0, row_lo: 3, row_hi: 3 };
        assert_eq!(report_rectangle_union(&[c, d], 4), vec![3, 12]);
    }

    #[test]
    fn merging() {
        let got = merge_intervals(vec![Interval::new(5, 6), Interval::new(0, 2), Interval::new(3, 3), Interval::new(8, 9)]);
        assert_eq!(got, vec![Interval::new(0, 3), Interval::new(5, 6), Interval::new(8, 9)]);
    }

    fn chain_strategy() -> impl Strategy<Value = (usize, Vec<IntervalChain>)> {
        (1usize..50).prop_flat_map(|q| {
            let one = (0usize..200, 0usize..120, 0usize..6)
                .prop_map(move |(lo, len, a)| IntervalChain::new(Interval::new(lo, lo + len), q, a));
            (Just(q), prop::collection::vec(one, 0..8))
        })
    }

    proptest! {
        #[test]
        fn union_reproduces_chain_elements((q, chains) in chain_strategy()) {
            let rects = chains_to_rectangles(&chains, q).unwrap();
            prop_assert!(rects.len() <= 3 * chains.len());
            prop_assert_eq!(report_rectangle_union(&rects, q), expand(&chains));
        }
    }
}
