//! Two constructions built on the circular matchers: a binary jumbled index
//! from the circular mismatch array, and edit distance from circular edit
//! decisions.

use std::collections::HashMap;

use crate::edit::{self, LpamSource};
use crate::error::{Error, Result};
use crate::mismatch;
use crate::oracles::brute_mismatch_cpm_array;

/// Inputs with `n·m` at most this go to the direct computation.
pub const DIRECT_CPM_LIMIT: usize = 1_000_000;

/// How [`mismatch_cpm_array`] computes its values.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CpmStrategy {
    /// Direct below [`DIRECT_CPM_LIMIT`], reporting searches above.
    #[default]
    Auto,
    /// One prefix-sum pass per alignment.
    Direct,
    /// Budgets `0, 1, 2, 4, …` bracket each value, then bisection over the
    /// brackets, one report per distinct budget.
    ViaReport,
}

/// Smallest circular Hamming distance of `p` to `t[i..i+m)` for every `i`.
pub fn mismatch_cpm_array(p: &[u8], t: &[u8], strategy: CpmStrategy) -> Result<Vec<usize>> {
    let (m, n) = (p.len(), t.len());
    if m == 0 {
        return Err(Error::EmptyInstance);
    }
    if m > n {
        return Ok(Vec::new());
    }
    let direct = match strategy {
        CpmStrategy::Auto => n.saturating_mul(m) <= DIRECT_CPM_LIMIT,
        CpmStrategy::Direct => true,
        CpmStrategy::ViaReport => false,
    };
    if direct {
        return Ok(brute_mismatch_cpm_array(p, t));
    }
    let count = n - m + 1;
    let mut reports: HashMap<usize, Vec<bool>> = HashMap::new();
    let mut member = |k: usize| -> Result<Vec<bool>> {
        if let Some(hit) = reports.get(&k) {
            return Ok(hit.clone());
        }
        let mut flags = vec![false; count];
        for i in mismatch::report(p, t, k)? {
            flags[i] = true;
        }
        reports.insert(k, flags.clone());
        Ok(flags)
    };
    // value ∈ (lo, hi]; every value is at most m
    let mut lo: Vec<Option<usize>> = vec![None; count];
    let mut hi = vec![m; count];
    let mut k = 0;
    while k < m {
        let flags = member(k)?;
        for i in 0..count {
            if flags[i] {
                hi[i] = hi[i].min(k);
            } else {
                lo[i] = Some(k);
            }
        }
        k = if k == 0 { 1 } else { 2 * k };
    }
    loop {
        let mut mids: Vec<usize> = (0..count)
            .filter(|&i| lo[i].map_or(hi[i] > 0, |l| hi[i] > l + 1))
            .map(|i| lo[i].map_or(0, |l| (l + 1 + hi[i]) / 2))
            .collect();
        if mids.is_empty() {
            break;
        }
        mids.sort_unstable();
        mids.dedup();
        for mid in mids {
            let flags = member(mid)?;
            for i in 0..count {
                let open = lo[i].map_or(0, |l| l + 1);
                if open <= mid && mid < hi[i] {
                    if flags[i] {
                        hi[i] = mid;
                    } else {
                        lo[i] = Some(mid);
                    }
                }
            }
        }
    }
    Ok(hi)
}

fn ones(x: &[u8]) -> Result<usize> {
    x.iter().try_fold(0, |acc, &c| match c {
        b'0' => Ok(acc),
        b'1' => Ok(acc + 1),
        _ => Err(Error::NonBinary),
    })
}

/// `max_t` for `t ∈ [0..n]` from the circular mismatch array of
/// `P = X·0ⁿ` against `T = 1ⁿ·0²ⁿ`: `CPM[n − t] = (t − max_t) + (j − max_t)`
/// where `j` counts the ones of `X`.
fn window_max(x: &[u8], strategy: CpmStrategy) -> Result<Vec<usize>> {
    let n = x.len();
    let j = ones(x)?;
    let mut p = x.to_vec();
    p.resize(2 * n, b'0');
    let mut t = vec![b'1'; n];
    t.resize(3 * n, b'0');
    let cpm = mismatch_cpm_array(&p, &t, strategy)?;
    Ok((0..=n).map(|s| if s == 0 { 0 } else { (s + j - cpm[n - s]) / 2 }).collect())
}

/// Minimum and maximum number of ones over the windows of each length `t`
/// (index `t`; index 0 holds 0).
pub fn bji_from_cpm(x: &[u8], strategy: CpmStrategy) -> Result<(Vec<usize>, Vec<usize>)> {
    if x.is_empty() {
        return Ok((vec![0], vec![0]));
    }
    let hi = window_max(x, strategy)?;
    let flipped: Vec<u8> = x.iter().map(|&c| if c == b'1' { b'0' } else { b'1' }).collect();
    let lo = window_max(&flipped, strategy)?.into_iter().enumerate().map(|(t, v)| t - v).collect();
    Ok((lo, hi))
}

pub const LEFT_PAD: u8 = b'$';
pub const RIGHT_PAD: u8 = b'#';

/// `δ_E(U, V)` as the smallest `k` for which `$³ⁿU#³ⁿ` has a circular
/// `k`-edit occurrence in `$³ⁿV#³ⁿ`, found by bisection.
pub fn edit_distance_via_cpm(u: &[u8], v: &[u8], source: LpamSource) -> Result<usize> {
    if let Some(&c) = u.iter().chain(v).find(|&&c| c == LEFT_PAD || c == RIGHT_PAD) {
        return Err(Error::SentinelCollision(c));
    }
    let n = u.len().max(v.len());
    if n == 0 {
        return Ok(0);
    }
    let pad = |s: &[u8]| -> Vec<u8> {
        let mut out = vec![LEFT_PAD; 3 * n];
        out.extend_from_slice(s);
        out.extend(std::iter::repeat_n(RIGHT_PAD, 3 * n));
        out
    };
    let (p, t) = (pad(u), pad(v));
    let (mut lo, mut hi) = (0, n);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if edit::decide(&p, &t, mid, source)?.is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{brute_bji, edit_dp};
    use proptest::prelude::*;

    #[test]
    fn cpm_examples() {
        assert_eq!(mismatch_cpm_array(b"abc", b"abc", CpmStrategy::ViaReport).unwrap(), vec![0]);
        assert_eq!(mismatch_cpm_array(b"ab", b"aa", CpmStrategy::ViaReport).unwrap(), vec![1]);
        assert_eq!(mismatch_cpm_array(b"ab", b"aa", CpmStrategy::Direct).unwrap(), vec![1]);
        assert!(mismatch_cpm_array(b"abc", b"ab", CpmStrategy::Auto).unwrap().is_empty());
    }

    #[test]
    fn bji_examples() {
        let (lo, hi) = bji_from_cpm(b"0110", CpmStrategy::ViaReport).unwrap();
        assert_eq!((lo[2], hi[2]), (1, 2));
        assert_eq!(bji_from_cpm(b"1111", CpmStrategy::Auto).unwrap().1, vec![0, 1, 2, 3, 4]);
        assert_eq!(bji_from_cpm(b"01a", CpmStrategy::Auto).unwrap_err(), Error::NonBinary);
    }

    #[test]
    fn edit_examples() {
        assert_eq!(edit_distance_via_cpm(b"0110", b"0110", LpamSource::Fast).unwrap(), 0);
        assert_eq!(edit_distance_via_cpm(b"0", b"", LpamSource::Fast).unwrap(), 1);
        assert_eq!(edit_distance_via_cpm(b"0$", b"", LpamSource::Fast).unwrap_err(), Error::SentinelCollision(b'$'));
    }

    fn binary(max: usize) -> impl Strategy<Value = Vec<u8>> {
        prop::collection::vec(prop_oneof![Just(b'0'), Just(b'1')], 0..max)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn cpm_strategies_agree(
            p in prop::collection::vec(b'a'..b'c', 1..30),
            t in prop::collection::vec(b'a'..b'c', 0..90),
        ) {
            let want = brute_mismatch_cpm_array(&p, &t);
            prop_assert_eq!(mismatch_cpm_array(&p, &t, CpmStrategy::ViaReport).unwrap(), want);
        }

        #[test]
        fn bji_matches_windows(x in binary(40)) {
            let (lo, hi) = bji_from_cpm(&x, CpmStrategy::ViaReport).unwrap();
            let (blo, bhi) = brute_bji(&x);
            prop_assert_eq!(&lo, &blo);
            prop_assert_eq!(&hi, &bhi);
            for t in 1..hi.len() {
                prop_assert!(hi[t] >= hi[t - 1] && hi[t] <= hi[t - 1] + 1);
                prop_assert!(lo[t] >= lo[t - 1]);
            }
        }

        #[test]
        fn edit_matches_dp(u in binary(30), v in binary(30)) {
            prop_assert_eq!(edit_distance_via_cpm(&u, &v, LpamSource::Baseline).unwrap(), edit_dp(&u, &v));
        }

        #[test]
        fn fast_tables_give_the_same_distance(u in binary(6), v in binary(6)) {
            prop_assert_eq!(edit_distance_via_cpm(&u, &v, LpamSource::Fast).unwrap(), edit_dp(&u, &v));
        }
    }
}
