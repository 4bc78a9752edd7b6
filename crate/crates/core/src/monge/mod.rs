//! Partially persistent Monge matrix supporting sub-column increments and
//! sub-row minimum queries.
//!
//! Internally the matrix is negated, which turns it into an inverse-Monge
//! matrix whose column functions enter and leave the upper envelope at most
//! once each, in column order. A static balanced tree over the columns stores,
//! per node, the first row at which the right child's envelope strictly beats
//! the left child's. Increments are recorded as key/value pairs
//! `(col·s + row, ±α)` in a persistent ordered map so that an entry is the
//! base value plus a prefix sum. Updates copy one root-to-leaf path of each
//! structure.

mod pmap;

use std::sync::Arc;

use crate::error::{Error, Result};

pub type Base = Arc<dyn Fn(usize, usize) -> i64 + Send + Sync>;

#[derive(Debug)]
struct EnvNode {
    breakpoint: usize,
    left: Option<Arc<EnvNode>>,
    right: Option<Arc<EnvNode>>,
}

#[derive(Clone)]
struct Root {
    deltas: pmap::Link,
    envelope: Arc<EnvNode>,
}

/// Handle to one immutable version.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MongeVersion(pub usize);

pub struct MongeStore {
    base: Base,
    size: usize,
    versions: Vec<Root>,
}

impl MongeStore {
    /// `base` must describe an `s × s` Monge matrix.
    pub fn init(base: Base, s: usize) -> MongeStore {
        assert!(s >= 1, "matrix must be nonempty");
        let mut store = MongeStore { base, size: s, versions: Vec::new() };
        let envelope = store.build(&None, 0, s);
        store.versions.push(Root { deltas: None, envelope });
        store
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn latest(&self) -> MongeVersion {
        MongeVersion(self.versions.len() - 1)
    }

    pub fn version_count(&self) -> usize {
        self.versions.len()
    }

    fn root(&self, v: MongeVersion) -> Result<&Root> {
        self.versions.get(v.0).ok_or(Error::IndexOutOfRange { index: v.0, len: self.versions.len() })
    }

    /// Negated entry under the given increment map.
    fn inner(&self, deltas: &pmap::Link, row: usize, col: usize) -> i64 {
        -(self.base)(row, col) + pmap::prefix_sum(deltas, (col * self.size + row) as u64)
    }

    pub fn entry(&self, v: MongeVersion, row: usize, col: usize) -> Result<i64> {
        self.check_index(row)?;
        self.check_index(col)?;
        Ok(-self.inner(&self.root(v)?.deltas, row, col))
    }

    fn check_index(&self, x: usize) -> Result<()> {
        if x >= self.size {
            return Err(Error::IndexOutOfRange { index: x, len: self.size });
        }
        Ok(())
    }

    /// Upper envelope of the negated columns `[lo..hi)` at `row`: value and
    /// the column attaining it (smallest on ties).
    fn envelope_at(&self, deltas: &pmap::Link, node: &EnvNode, lo: usize, hi: usize, row: usize) -> (i64, usize) {
        let (mut node, mut lo, mut hi) = (node, lo, hi);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if row < node.breakpoint {
                node = node.left.as_deref().expect("internal node");
                hi = mid;
            } else {
                node = node.right.as_deref().expect("internal node");
                lo = mid;
            }
        }
        (self.inner(deltas, row, lo), lo)
    }

    fn breakpoint(&self, deltas: &pmap::Link, left: &EnvNode, right: &EnvNode, lo: usize, mid: usize, hi: usize) -> usize {
        let wins = |row: usize| self.envelope_at(deltas, right, mid, hi, row).0 > self.envelope_at(deltas, left, lo, mid, row).0;
        let (mut a, mut b) = (0, self.size);
        while a < b {
            let c = (a + b) / 2;
            if wins(c) {
                b = c;
            } else {
                a = c + 1;
            }
        }
        a
    }

    fn build(&self, deltas: &pmap::Link, lo: usize, hi: usize) -> Arc<EnvNode> {
        if hi - lo == 1 {
            return Arc::new(EnvNode { breakpoint: 0, left: None, right: None });
        }
        let mid = (lo + hi) / 2;
        let left = self.build(deltas, lo, mid);
        let right = self.build(deltas, mid, hi);
        let breakpoint = self.breakpoint(deltas, &left, &right, lo, mid, hi);
        Arc::new(EnvNode { breakpoint, left: Some(left), right: Some(right) })
    }

    fn rebuild(&self, deltas: &pmap::Link, node: &Arc<EnvNode>, lo: usize, hi: usize, col: usize) -> Arc<EnvNode> {
        if hi - lo == 1 {
            return node.clone();
        }
        let mid = (lo + hi) / 2;
        let (mut left, mut right) = (node.left.clone().expect("internal"), node.right.clone().expect("internal"));
        if col < mid {
            left = self.rebuild(deltas, &left, lo, mid, col);
        } else {
            right = self.rebuild(deltas, &right, mid, hi, col);
        }
        let breakpoint = self.breakpoint(deltas, &left, &right, lo, mid, hi);
        Arc::new(EnvNode { breakpoint, left: Some(left), right: Some(right) })
    }

    /// Adds `amount` to rows `[row_lo..row_hi]` of column `col`, creating a new
    /// version from the newest one. The result must stay Monge.
    pub fn subcol_increment(&mut self, v: MongeVersion, col: usize, row_lo: usize, row_hi: usize, amount: i64) -> Result<MongeVersion> {
        if v != self.latest() {
            return Err(Error::StaleVersion);
        }
        self.check_index(col)?;
        self.check_index(row_hi)?;
        if row_lo > row_hi {
            return Err(Error::EmptyRange);
        }
        let root = self.versions[v.0].clone();
        let s = self.size as u64;
        let key = col as u64 * s;
        let deltas = Some(pmap::add(&root.deltas, key + row_lo as u64, -amount));
        let deltas = Some(pmap::add(&deltas, key + row_hi as u64 + 1, amount));
        let envelope = self.rebuild(&deltas, &root.envelope, 0, self.size, col);
        self.versions.push(Root { deltas, envelope });
        Ok(self.latest())
    }

    /// Minimum of row `row` over columns `[col_lo..col_hi]` and the smallest
    /// column attaining it.
    pub fn subrow_min(&self, v: MongeVersion, row: usize, col_lo: usize, col_hi: usize) -> Result<(i64, usize)> {
        if col_lo > col_hi {
            return Err(Error::EmptyRange);
        }
        self.check_index(row)?;
        self.check_index(col_hi)?;
        let root = self.root(v)?;
        let mut best: Option<(i64, usize)> = None;
        self.canonical(root, &root.envelope, 0, self.size, col_lo, col_hi + 1, row, &mut best);
        let (value, col) = best.expect("nonempty range");
        Ok((-value, col))
    }

    #[allow(clippy::too_many_arguments)]
    fn canonical(&self, root: &Root, node: &EnvNode, lo: usize, hi: usize, a: usize, b: usize, row: usize, best: &mut Option<(i64, usize)>) {
        if b <= lo || hi <= a {
            return;
        }
        if a <= lo && hi <= b {
            let cand = self.envelope_at(&root.deltas, node, lo, hi, row);
            if best.is_none_or(|(v, _)| cand.0 > v) {
                *best = Some(cand);
            }
            return;
        }
        let mid = (lo + hi) / 2;
        self.canonical(root, node.left.as_deref().expect("internal"), lo, mid, a, b, row, best);
        self.canonical(root, node.right.as_deref().expect("internal"), mid, hi, a, b, row, best);
    }

    #[cfg(test)]
    fn breakpoints(&self, v: MongeVersion) -> Vec<(usize, usize, usize, usize)> {
        fn walk(node: &EnvNode, lo: usize, hi: usize, out: &mut Vec<(usize, usize, usize, usize)>) {
            if hi - lo > 1 {
                let mid = (lo + hi) / 2;
                out.push((lo, mid, hi, node.breakpoint));
                walk(node.left.as_deref().unwrap(), lo, mid, out);
                walk(node.right.as_deref().unwrap(), mid, hi, out);
            }
        }
        let mut out = Vec::new();
        walk(&self.versions[v.0].envelope, 0, self.size, &mut out);
        out
    }
}
