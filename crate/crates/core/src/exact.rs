//! Exact circular pattern matching in linear time via prefix arrays.

use crate::geometry::{merge_intervals, Interval};

/// Entry `i` is the length of the longest common prefix of `s` and `s[i..]`.
pub fn prefix_array(s: &[u8]) -> Vec<usize> {
    let n = s.len();
    let mut z = vec![0; n];
    if n == 0 {
        return z;
    }
    z[0] = n;
    let (mut l, mut r) = (0, 0);
    for i in 1..n {
        if i < r {
            z[i] = z[i - l].min(r - i);
        }
        while i + z[i] < n && s[z[i]] == s[i + z[i]] {
            z[i] += 1;
        }
        if i + z[i] > r {
            l = i;
            r = i + z[i];
        }
    }
    z
}

/// Starting positions of exact occurrences of any rotation of `p` in `t`.
pub fn exact_cpm(p: &[u8], t: &[u8]) -> Vec<Interval> {
    let (m, n) = (p.len(), t.len());
    if m > n {
        return Vec::new();
    }
    if m == 0 {
        return vec![Interval::new(0, n)];
    }
    let mut forward = Vec::with_capacity(m + n);
    forward.extend_from_slice(p);
    forward.extend_from_slice(t);
    let mut backward = Vec::with_capacity(m + n);
    backward.extend(p.iter().rev());
    backward.extend(t.iter().rev());
    let pi = prefix_array(&forward);
    let pi_r = prefix_array(&backward);
    let last = n - m;
    let mut found = Vec::new();
    // A rotation P[j..m)P[0..j) sits at i when T[i..s) is a suffix of P and
    // T[s..i+m) is a prefix of P, with the split s = i + m - j.
    for split in 0..n {
        let ahead = pi[m + split].min(m);
        let behind = if split == 0 { 0 } else { pi_r[m + n - split].min(m) };
        if ahead + behind < m {
            continue;
        }
        let lo = split - behind.min(split);
        let hi = (split + ahead - m).min(last);
        if lo <= hi {
            found.push(Interval::new(lo, hi));
        }
    }
    merge_intervals(found)
}
