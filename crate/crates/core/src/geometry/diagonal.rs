//! Minimum of cell weight plus segment weight over points of diagonal segments.

use crate::error::{Error, Result};

/// Segment `{(x+t, y+t) : t ∈ [0..len)}` carrying a constant weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiagonalSegment {
    pub x: usize,
    pub y: usize,
    pub len: usize,
    pub weight: i64,
}

/// A grid cut into cells by vertical lines at `xcuts` and horizontal lines at
/// `ycuts` (both sorted, both starting at 0). Cell `(cx, cy)` spans
/// `[xcuts[cx]..xcuts[cx+1])` × `[ycuts[cy]..ycuts[cy+1])`.
#[derive(Clone, Debug, Default)]
pub struct WeightedGrid {
    pub width: usize,
    pub height: usize,
    pub xcuts: Vec<usize>,
    pub ycuts: Vec<usize>,
    pub weights: Vec<Vec<i64>>,
    pub segments: Vec<DiagonalSegment>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridPoint {
    pub x: usize,
    pub y: usize,
    pub value: i64,
}

impl GridPoint {
    fn key(&self) -> (i64, usize, usize) {
        (self.value, self.x, self.y)
    }
}

impl WeightedGrid {
    pub fn cell_of(&self, x: usize, y: usize) -> (usize, usize) {
        (
            self.xcuts.partition_point(|&c| c <= x) - 1,
            self.ycuts.partition_point(|&c| c <= y) - 1,
        )
    }

    pub fn cell_weight(&self, x: usize, y: usize) -> i64 {
        let (cx, cy) = self.cell_of(x, y);
        self.weights[cx][cy]
    }

    fn transposed(&self) -> WeightedGrid {
        let cols = self.ycuts.len();
        let weights = (0..cols).map(|cy| self.weights.iter().map(|col| col[cy]).collect()).collect();
        WeightedGrid {
            width: self.height,
            height: self.width,
            xcuts: self.ycuts.clone(),
            ycuts: self.xcuts.clone(),
            weights,
            segments: self.segments.iter().map(|s| DiagonalSegment { x: s.y, y: s.x, ..*s }).collect(),
        }
    }
}

/// Range minimum over horizontal cut slots, each holding at most one active
/// weight at a time.
struct SlotMin {
    tree: Vec<Option<(i64, usize)>>,
    size: usize,
}

impl SlotMin {
    fn new(size: usize) -> SlotMin {
        SlotMin { tree: vec![None; 2 * size.max(1)], size: size.max(1) }
    }

    fn set(&mut self, slot: usize, value: Option<i64>) {
        let mut i = slot + self.size;
        self.tree[i] = value.map(|v| (v, slot));
        while i > 1 {
            i /= 2;
            self.tree[i] = min_opt(self.tree[2 * i], self.tree[2 * i + 1]);
        }
    }

    /// Minimum over slots `[lo..hi)`, smallest slot on ties.
    fn query(&self, lo: usize, hi: usize) -> Option<(i64, usize)> {
        let (mut l, mut r) = (lo + self.size, hi + self.size);
        let mut best = None;
        while l < r {
            if l & 1 == 1 {
                best = min_opt(best, self.tree[l]);
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                best = min_opt(best, self.tree[r]);
            }
            l /= 2;
            r /= 2;
        }
        best
    }
}

fn min_opt(a: Option<(i64, usize)>, b: Option<(i64, usize)>) -> Option<(i64, usize)> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// For each segment, its best point on a horizontal cut, found by shearing
/// `(x, y) ↦ (y − x, y)` so that segments become vertical and sweeping over
/// the sheared horizontal cell edges.
fn horizontal_crossings(grid: &WeightedGrid) -> Vec<GridPoint> {
    #[derive(PartialEq, Eq, PartialOrd, Ord)]
    enum Kind {
        Remove,
        Insert,
        Query,
    }
    let mut events: Vec<(i64, Kind, usize, usize)> = Vec::new();
    let cols = grid.xcuts.len();
    for (slot, &c) in grid.ycuts.iter().enumerate() {
        for cx in 0..cols {
            let xa = grid.xcuts[cx];
            let xb = grid.xcuts.get(cx + 1).copied().unwrap_or(grid.width);
            if xa >= xb {
                continue;
            }
            let (lo, hi) = (c as i64 - (xb as i64 - 1), c as i64 - xa as i64);
            events.push((lo, Kind::Insert, slot, cx));
            events.push((hi + 1, Kind::Remove, slot, cx));
        }
    }
    for (idx, s) in grid.segments.iter().enumerate() {
        events.push((s.y as i64 - s.x as i64, Kind::Query, idx, 0));
    }
    events.sort_unstable();
    let mut live = SlotMin::new(grid.ycuts.len());
    let mut found = Vec::new();
    for (u, kind, a, b) in events {
        match kind {
            Kind::Remove => live.set(a, None),
            Kind::Insert => live.set(a, Some(grid.weights[b][a])),
            Kind::Query => {
                let s = grid.segments[a];
                let lo = grid.ycuts.partition_point(|&c| c < s.y);
                let hi = grid.ycuts.partition_point(|&c| c < s.y + s.len);
                if let Some((w, slot)) = live.query(lo, hi) {
                    let y = grid.ycuts[slot];
                    let x = (y as i64 - u) as usize;
                    found.push(GridPoint { x, y, value: w + s.weight });
                }
            }
        }
    }
    found
}

/// Point on some segment minimising `cell weight + segment weight`; ties go to
/// the lexicographically smallest `(x, y)`.
pub fn diagonal_segments_min(grid: &WeightedGrid) -> Result<GridPoint> {
    if grid.segments.iter().all(|s| s.len == 0) {
        return Err(Error::EmptyInstance);
    }
    let mut best: Option<GridPoint> = None;
    let mut offer = |cand: GridPoint| {
        if best.is_none_or(|b| cand.key() < b.key()) {
            best = Some(cand);
        }
    };
    for s in grid.segments.iter().filter(|s| s.len > 0) {
        offer(GridPoint { x: s.x, y: s.y, value: grid.cell_weight(s.x, s.y) + s.weight });
    }
    for p in horizontal_crossings(grid) {
        offer(p);
    }
    for p in horizontal_crossings(&grid.transposed()) {
        offer(GridPoint { x: p.y, y: p.x, value: p.value });
    }
    Ok(best.expect("at least one segment"))
}
