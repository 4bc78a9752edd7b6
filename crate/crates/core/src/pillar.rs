//! String collection with constant-time longest-common-extension queries.
//!
//! Every algorithm in the crate addresses text through [`Fragment`]s of a
//! [`TextStore`]. The store indexes the concatenation of all strings and all
//! reversed strings with a suffix array, its LCP array and a sparse table, so
//! `lcp` and `lcp_r` cost one range-minimum query.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::exact::prefix_array;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrId(pub usize);

/// Half-open view `[start..end)` into one stored string.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fragment {
    source: StrId,
    start: usize,
    end: usize,
}

impl Fragment {
    pub fn source(&self) -> StrId {
        self.source
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.end
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    /// Sub-fragment `[from..to)` in coordinates relative to this fragment.
    pub fn slice(&self, from: usize, to: usize) -> Fragment {
        assert!(from <= to && to <= self.len(), "slice [{from}..{to}) of fragment of length {}", self.len());
        Fragment {
            source: self.source,
            start: self.start + from,
            end: self.start + to,
        }
    }

    pub fn suffix(&self, from: usize) -> Fragment {
        self.slice(from, self.len())
    }

    pub fn prefix(&self, to: usize) -> Fragment {
        self.slice(0, to)
    }
}

/// Occurrences `first, first + step, ...` (`count` terms).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Progression {
    pub first: usize,
    pub step: usize,
    pub count: usize,
}

impl Progression {
    pub const EMPTY: Progression = Progression { first: 0, step: 0, count: 0 };

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.count).map(move |t| self.first + t * self.step)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn from_sorted(positions: &[usize]) -> Progression {
        match positions {
            [] => Progression::EMPTY,
            [x] => Progression { first: *x, step: 0, count: 1 },
            [x, y, ..] => {
                let step = y - x;
                debug_assert!(positions.windows(2).all(|w| w[1] - w[0] == step));
                Progression { first: *x, step, count: positions.len() }
            }
        }
    }
}

/// Exact occurrences of `needle` in `haystack`, which must be at most twice
/// as long; the result is a single arithmetic progression.
pub fn ipm_bytes(needle: &[u8], haystack: &[u8]) -> Result<Progression> {
    if haystack.len() > 2 * needle.len() {
        return Err(Error::IpmTooLong { needle: needle.len(), haystack: haystack.len() });
    }
    if needle.len() > haystack.len() {
        return Ok(Progression::EMPTY);
    }
    let mut joint = Vec::with_capacity(needle.len() + haystack.len());
    joint.extend_from_slice(needle);
    joint.extend_from_slice(haystack);
    let z = prefix_array(&joint);
    let m = needle.len();
    let hits: Vec<usize> = (0..=haystack.len() - m).filter(|&p| z[m + p] >= m).collect();
    Ok(Progression::from_sorted(&hits))
}

struct Lce {
    rank: Vec<u32>,
    len: usize,
    table: Vec<Vec<u32>>,
}

impl Lce {
    fn new(text: &[u8]) -> Lce {
        let sa = suffix_array(text);
        let n = text.len();
        let mut rank = vec![0u32; n];
        for (r, &p) in sa.iter().enumerate() {
            rank[p] = r as u32;
        }
        // Kasai: lcp[r] = lcp of suffixes sa[r-1] and sa[r].
        let mut lcp = vec![0u32; n];
        let mut h = 0usize;
        for i in 0..n {
            let r = rank[i] as usize;
            if r > 0 {
                let j = sa[r - 1];
                while i + h < n && j + h < n && text[i + h] == text[j + h] {
                    h += 1;
                }
                lcp[r] = h as u32;
                h = h.saturating_sub(1);
            } else {
                h = 0;
            }
        }
        let mut table = vec![lcp];
        let mut width = 1;
        while 2 * width <= n {
            let prev = table.last().unwrap();
            let next: Vec<u32> = (0..=n - 2 * width).map(|i| prev[i].min(prev[i + width])).collect();
            table.push(next);
            width *= 2;
        }
        Lce { rank, len: n, table }
    }

    fn query(&self, i: usize, j: usize) -> usize {
        if i == j {
            return self.len - i;
        }
        let (a, b) = {
            let (ri, rj) = (self.rank[i] as usize, self.rank[j] as usize);
            if ri < rj { (ri + 1, rj) } else { (rj + 1, ri) }
        };
        let level = (b - a + 1).ilog2() as usize;
        let row = &self.table[level];
        row[a].min(row[b + 1 - (1 << level)]) as usize
    }
}

/// Prefix doubling with comparison sorts, O(n log^2 n).
fn suffix_array(text: &[u8]) -> Vec<usize> {
    let n = text.len();
    let mut sa: Vec<usize> = (0..n).collect();
    let mut rank: Vec<usize> = text.iter().map(|&c| c as usize).collect();
    let mut next = vec![0usize; n];
    let mut width = 1;
    loop {
        let key = |i: usize| (rank[i], if i + width < n { rank[i + width] + 1 } else { 0 });
        sa.sort_unstable_by_key(|&i| key(i));
        next[sa[0]] = 0;
        for w in 1..n {
            next[sa[w]] = next[sa[w - 1]] + usize::from(key(sa[w - 1]) != key(sa[w]));
        }
        std::mem::swap(&mut rank, &mut next);
        if rank[sa[n - 1]] == n - 1 || width >= n {
            break;
        }
        width *= 2;
    }
    sa
}

/// Immutable collection of byte strings answering PILLAR queries.
pub struct TextStore {
    strings: Vec<Vec<u8>>,
    forward_at: Vec<usize>,
    reverse_at: Vec<usize>,
    sentinels: [u8; 2],
    lce: Lce,
    ipm_memo: Mutex<HashMap<(Fragment, Fragment), Progression>>,
}

impl TextStore {
    pub fn build(strings: Vec<Vec<u8>>) -> Result<TextStore> {
        if strings.iter().all(|s| s.is_empty()) {
            return Err(Error::EmptyStore);
        }
        let mut seen = [false; 256];
        for s in &strings {
            for &c in s {
                seen[c as usize] = true;
            }
        }
        let mut free = (0..=255u8).rev().filter(|&c| !seen[c as usize]);
        let (Some(a), Some(b)) = (free.next(), free.next()) else {
            return Err(Error::NoSentinel);
        };
        let total: usize = strings.iter().map(|s| 2 * (s.len() + 1)).sum();
        let mut joint = Vec::with_capacity(total);
        let mut forward_at = Vec::with_capacity(strings.len());
        let mut reverse_at = Vec::with_capacity(strings.len());
        for s in &strings {
            forward_at.push(joint.len());
            joint.extend_from_slice(s);
            joint.push(a);
        }
        for s in &strings {
            reverse_at.push(joint.len());
            joint.extend(s.iter().rev());
            joint.push(a);
        }
        Ok(TextStore {
            lce: Lce::new(&joint),
            strings,
            forward_at,
            reverse_at,
            sentinels: [a, b],
            ipm_memo: Mutex::new(HashMap::new()),
        })
    }

    /// Two byte values absent from every stored string.
    pub fn sentinels(&self) -> [u8; 2] {
        self.sentinels
    }

    pub fn count(&self) -> usize {
        self.strings.len()
    }

    pub fn whole(&self, id: StrId) -> Fragment {
        Fragment { source: id, start: 0, end: self.strings[id.0].len() }
    }

    pub fn fragment(&self, id: StrId, start: usize, end: usize) -> Result<Fragment> {
        let s = self.strings.get(id.0).ok_or(Error::UnknownString(id.0))?;
        if start > end || end > s.len() {
            return Err(Error::FragmentOutOfRange { start, end, len: s.len() });
        }
        Ok(Fragment { source: id, start, end })
    }

    pub fn length(&self, f: Fragment) -> usize {
        f.len()
    }

    pub fn access(&self, f: Fragment, i: usize) -> Result<u8> {
        if i >= f.len() {
            return Err(Error::IndexOutOfRange { index: i, len: f.len() });
        }
        Ok(self.strings[f.source.0][f.start + i])
    }

    pub fn extract(&self, f: Fragment) -> &[u8] {
        &self.strings[f.source.0][f.start..f.end]
    }

    /// Byte at relative position `i`; callers guarantee the bound.
    #[inline]
    pub fn at(&self, f: Fragment, i: usize) -> u8 {
        debug_assert!(i < f.len());
        self.strings[f.source.0][f.start + i]
    }

    pub fn lcp(&self, a: Fragment, b: Fragment) -> usize {
        let cap = a.len().min(b.len());
        if cap == 0 {
            return 0;
        }
        let i = self.forward_at[a.source.0] + a.start;
        let j = self.forward_at[b.source.0] + b.start;
        self.lce.query(i, j).min(cap)
    }

    /// Longest common suffix.
    pub fn lcp_r(&self, a: Fragment, b: Fragment) -> usize {
        let cap = a.len().min(b.len());
        if cap == 0 {
            return 0;
        }
        let i = self.reverse_at[a.source.0] + self.strings[a.source.0].len() - a.end;
        let j = self.reverse_at[b.source.0] + self.strings[b.source.0].len() - b.end;
        self.lce.query(i, j).min(cap)
    }

    /// Longest common prefix of `a` and `Q^∞[phase..)` where `q` spells `Q`.
    pub fn lcp_periodic(&self, a: Fragment, q: Fragment, phase: usize) -> usize {
        let period = q.len();
        assert!(period > 0, "empty period");
        let phase = phase % period;
        let mut done = 0;
        let mut rest = a;
        if phase > 0 {
            let head = period - phase;
            let l = self.lcp(rest, q.suffix(phase));
            if l < head.min(rest.len()) || rest.len() <= head {
                return l;
            }
            done = head;
            rest = rest.suffix(head);
        }
        let l = self.lcp(rest, q);
        if l < period.min(rest.len()) || rest.len() <= period {
            return done + l;
        }
        // rest starts with Q, so it follows Q^∞ exactly as far as it repeats itself.
        done + period + self.lcp(rest.suffix(period), rest)
    }

    /// Longest common suffix of `a` and the left-infinite power of `Q` whose
    /// character just after `a`'s end would have phase `end_phase`.
    pub fn lcs_periodic(&self, a: Fragment, q: Fragment, end_phase: usize) -> usize {
        let period = q.len();
        assert!(period > 0, "empty period");
        let tail = end_phase % period;
        let mut done = 0;
        let mut rest = a;
        if tail > 0 {
            let l = self.lcp_r(rest, q.prefix(tail));
            if l < tail.min(rest.len()) || rest.len() <= tail {
                return l;
            }
            done = tail;
            rest = rest.prefix(rest.len() - tail);
        }
        let l = self.lcp_r(rest, q);
        if l < period.min(rest.len()) || rest.len() <= period {
            return done + l;
        }
        done + period + self.lcp_r(rest.prefix(rest.len() - period), rest)
    }

    /// Exact occurrences of `needle` in `haystack` (`|haystack| ≤ 2|needle|`).
    pub fn ipm(&self, needle: Fragment, haystack: Fragment) -> Result<Progression> {
        let key = (needle, haystack);
        if let Some(hit) = self.ipm_memo.lock().expect("ipm memo poisoned").get(&key) {
            return Ok(*hit);
        }
        let found = ipm_bytes(self.extract(needle), self.extract(haystack))?;
        self.ipm_memo.lock().expect("ipm memo poisoned").insert(key, found);
        Ok(found)
    }
}

impl std::fmt::Debug for TextStore {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TextStore")
            .field("strings", &self.strings.len())
            .field("sentinels", &self.sentinels)
            .finish()
    }
}
