//! Furthest-reaching wavefronts over the central diagonals of the edit
//! distance table.

/// Cells `(a + Δ, b + Δ)` for `Δ ∈ [0..len)` of the prefix distance table,
/// all at distance exactly `d`. `a` counts text letters, `b` pattern letters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LvRun {
    pub a: usize,
    pub b: usize,
    pub d: usize,
    pub len: usize,
}

impl LvRun {
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.len).map(move |x| (self.a + x, self.b + x, self.d))
    }
}

const NONE: i64 = i64::MIN;

/// Runs covering every cell `(a, b)` with `a ≤ n`, `b ≤ m` and distance at
/// most `k`. `ext(a, b)` is the number of equal letters following the cell.
pub fn wavefront(n: usize, m: usize, k: usize, ext: impl Fn(usize, usize) -> usize) -> Vec<LvRun> {
    let (n, m, ki) = (n as i64, m as i64, k as i64);
    // slot δ + k + 1; one padding slot on each side
    let mut prev = vec![NONE; 2 * k + 3];
    let mut runs = Vec::new();
    for d in 0..=ki {
        let mut cur = vec![NONE; 2 * k + 3];
        for delta in -d..=d {
            let slot = (delta + ki + 1) as usize;
            let first = (-delta).max(0);
            let mut best = if d == 0 { 0 } else { NONE };
            if prev[slot] != NONE {
                best = best.max(prev[slot] + 1);
            }
            if prev[slot - 1] != NONE {
                best = best.max(prev[slot - 1]);
            }
            if prev[slot + 1] != NONE {
                best = best.max(prev[slot + 1] + 1);
            }
            if best == NONE {
                continue;
            }
            best = best.min(n).min(m - delta);
            if best < first {
                continue;
            }
            best += ext(best as usize, (best + delta) as usize) as i64;
            cur[slot] = best;
            let start = if prev[slot] == NONE { first } else { prev[slot] + 1 };
            if start <= best {
                runs.push(LvRun {
                    a: start as usize,
                    b: (start + delta) as usize,
                    d: d as usize,
                    len: (best - start + 1) as usize,
                });
            }
        }
        prev = cur;
    }
    runs
}

/// Largest pattern prefix reached with exactly `d` edits, for each `d`.
pub fn furthest_prefix(runs: &[LvRun], k: usize) -> Vec<Option<usize>> {
    let mut out = vec![None; k + 1];
    for r in runs {
        let b = r.b + r.len - 1;
        out[r.d] = Some(out[r.d].map_or(b, |x: usize| x.max(b)));
    }
    out
}
