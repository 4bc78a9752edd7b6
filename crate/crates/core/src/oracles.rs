//! Slow, direct reference implementations. They exist to be obviously correct
//! and to serve as fallbacks on tiny inputs.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Metric {
    Hamming,
    Edit,
}

pub fn rotate(p: &[u8], x: usize) -> Vec<u8> {
    let x = if p.is_empty() { 0 } else { x % p.len() };
    p[x..].iter().chain(&p[..x]).copied().collect()
}

/// Hamming distance, `None` when the lengths differ.
pub fn hamming(u: &[u8], v: &[u8]) -> Option<usize> {
    (u.len() == v.len()).then(|| u.iter().zip(v).filter(|(a, b)| a != b).count())
}

pub fn edit_dp(u: &[u8], v: &[u8]) -> usize {
    let mut row: Vec<usize> = (0..=v.len()).collect();
    for (a, &cu) in u.iter().enumerate() {
        let mut diag = row[0];
        row[0] = a + 1;
        for (b, &cv) in v.iter().enumerate() {
            let sub = diag + usize::from(cu != cv);
            diag = row[b + 1];
            row[b + 1] = sub.min(row[b] + 1).min(row[b + 1] + 1);
        }
    }
    row[v.len()]
}

/// Edit distance with insertions and deletions only.
pub fn deletion_dp(u: &[u8], v: &[u8]) -> usize {
    let mut row: Vec<usize> = (0..=v.len()).collect();
    for (a, &cu) in u.iter().enumerate() {
        let mut diag = row[0];
        row[0] = a + 1;
        for (b, &cv) in v.iter().enumerate() {
            let keep = if cu == cv { diag } else { usize::MAX };
            diag = row[b + 1];
            row[b + 1] = keep.min(row[b] + 1).min(row[b + 1] + 1);
        }
    }
    row[v.len()]
}

/// `CPM[i]` = minimum Hamming distance between `t[i..i+m)` and a rotation of
/// `p`, for every `i ∈ [0..n−m]`. Runs one prefix-sum pass per alignment
/// diagonal of `t` against `pp`.
pub fn brute_mismatch_cpm_array(p: &[u8], t: &[u8]) -> Vec<usize> {
    let (m, n) = (p.len(), t.len());
    if m > n {
        return Vec::new();
    }
    if m == 0 {
        return vec![0; n + 1];
    }
    let pp: Vec<u8> = p.iter().chain(p).copied().collect();
    let mut best = vec![usize::MAX; n - m + 1];
    let mut sums = Vec::with_capacity(n + 1);
    for o in -((n - m) as isize)..(m as isize) {
        let i_lo = (-o).max(0) as usize;
        let i_hi = (n - m).min((m as isize - 1 - o) as usize);
        if i_lo > i_hi {
            continue;
        }
        sums.clear();
        sums.push(0usize);
        for (y, &c) in t.iter().enumerate().take(i_hi + m).skip(i_lo) {
            let x = (y as isize + o) as usize;
            sums.push(sums.last().unwrap() + usize::from(c != pp[x]));
        }
        for i in i_lo..=i_hi {
            let d = sums[i - i_lo + m] - sums[i - i_lo];
            best[i] = best[i].min(d);
        }
    }
    best
}

/// For every start `i ∈ [0..n]`, the minimum over rotations of `p` and ends
/// `j ≥ i` of the edit distance to `t[i..j)`.
pub fn circular_edit_profile(p: &[u8], t: &[u8]) -> Vec<usize> {
    let (m, n) = (p.len(), t.len());
    let rev_t: Vec<u8> = t.iter().rev().copied().collect();
    let mut best = vec![m; n + 1];
    for x in 0..m.max(1) {
        let rot: Vec<u8> = rotate(p, x).into_iter().rev().collect();
        // Free-start matching of the reversed rotation in the reversed text:
        // column e holds the best distance of a match ending at e.
        let mut col: Vec<usize> = (0..=m).collect();
        best[n] = best[n].min(col[m]);
        for e in 1..=n {
            let mut prev_diag = col[0];
            col[0] = 0;
            for a in 1..=m {
                let sub = prev_diag + usize::from(rot[a - 1] != rev_t[e - 1]);
                prev_diag = col[a];
                col[a] = sub.min(col[a] + 1).min(col[a - 1] + 1);
            }
            best[n - e] = best[n - e].min(col[m]);
        }
    }
    best
}

pub fn brute_cyc_occ(metric: Metric, p: &[u8], t: &[u8], k: usize) -> Vec<usize> {
    let profile = match metric {
        Metric::Hamming => brute_mismatch_cpm_array(p, t),
        Metric::Edit => circular_edit_profile(p, t),
    };
    profile.iter().enumerate().filter(|(_, &d)| d <= k).map(|(i, _)| i).collect()
}

/// Non-circular k-mismatch occurrences.
pub fn brute_occ_k(p: &[u8], t: &[u8], k: usize) -> Vec<usize> {
    if p.len() > t.len() {
        return Vec::new();
    }
    (0..=t.len() - p.len())
        .filter(|&i| hamming(p, &t[i..i + p.len()]).unwrap() <= k)
        .collect()
}

/// `LPref_k[i]` for `i ∈ [0..n]`: longest prefix of `p` within `k` edits of
/// some prefix of `t[i..]`.
pub fn brute_lpref(p: &[u8], t: &[u8], k: usize) -> Vec<usize> {
    let (m, n) = (p.len(), t.len());
    (0..=n)
        .map(|i| {
            let span = (n - i).min(m + k);
            // row b holds distances of p[0..b) against t[i..i+a) for all a
            let mut row: Vec<usize> = (0..=span).collect();
            let mut best = 0;
            for b in 1..=m {
                let mut next = vec![b; span + 1];
                for a in 1..=span {
                    let sub = row[a - 1] + usize::from(p[b - 1] != t[i + a - 1]);
                    next[a] = sub.min(row[a] + 1).min(next[a - 1] + 1);
                }
                row = next;
                if row.iter().min().copied().unwrap_or(usize::MAX) <= k {
                    best = b;
                }
            }
            best
        })
        .collect()
}

/// Minimum and maximum number of ones over windows of every length; index `t`
/// holds the value for length `t`, index 0 is 0.
pub fn brute_bji(x: &[u8]) -> (Vec<usize>, Vec<usize>) {
    let n = x.len();
    let ones: Vec<usize> = std::iter::once(0)
        .chain(x.iter().scan(0, |acc, &c| {
            *acc += usize::from(c == b'1');
            Some(*acc)
        }))
        .collect();
    let mut lo = vec![0; n + 1];
    let mut hi = vec![0; n + 1];
    for t in 1..=n {
        let counts = (0..=n - t).map(|i| ones[i + t] - ones[i]);
        lo[t] = counts.clone().min().unwrap();
        hi[t] = counts.max().unwrap();
    }
    (lo, hi)
}

/// `D_t[i][j]` for every `t ∈ [0..|u|]`: shortest path length from
/// `(0, i + ℓ)` to `(t, t + j + ℓ)` in the alignment graph of `u` (rows) and
/// `v` (columns) whose diagonal edges may only be missing on diagonals
/// `b − a ∈ (ℓ..r)`, with `ℓ = p − k − 1`, `r = p + 2k` and
/// `i, j ∈ [0..3k+1]`.
///
/// Runs one 0-1 BFS per source over rows `[0..|u|]`: a detour through rows
/// outside that range returns to the row it left and so costs at least the
/// horizontal distance it covers. Diagonals are kept within the largest
/// possible path cost of the band.
pub fn brute_band_distances(u: &[u8], v: &[u8], p: usize, k: usize) -> Vec<Vec<Vec<usize>>> {
    let ell = p as i64 - k as i64 - 1;
    let r = p as i64 + 2 * k as i64;
    let s = 3 * k + 2;
    let margin = 9 * k as i64 + 3;
    let (dlo, dhi) = (ell - margin, r + margin);
    let width = (dhi - dlo + 1) as usize;
    let rows = u.len() + 1;
    let id = |a: usize, d: i64| a * width + (d - dlo) as usize;
    let diagonal_free = |a: usize, d: i64| {
        let b = a as i64 + d;
        let mismatch = a < u.len() && b >= 0 && (b as usize) < v.len() && u[a] != v[b as usize] && ell < d && d < r;
        !mismatch
    };
    let mut out = vec![vec![vec![0; s]; s]; rows];
    let mut dist = vec![usize::MAX; rows * width];
    for i in 0..s {
        dist.fill(usize::MAX);
        let mut queue = std::collections::VecDeque::new();
        let src = id(0, ell + i as i64);
        dist[src] = 0;
        queue.push_back((0usize, ell + i as i64));
        while let Some((a, d)) = queue.pop_front() {
            let here = dist[id(a, d)];
            let mut relax = |a2: usize, d2: i64, w: usize, queue: &mut std::collections::VecDeque<(usize, i64)>| {
                if a2 >= rows || d2 < dlo || d2 > dhi {
                    return;
                }
                let slot = id(a2, d2);
                if here + w < dist[slot] {
                    dist[slot] = here + w;
                    if w == 0 {
                        queue.push_front((a2, d2));
                    } else {
                        queue.push_back((a2, d2));
                    }
                }
            };
            // (a, b±1) and (a±1, b) in diagonal coordinates
            relax(a, d + 1, 1, &mut queue);
            relax(a, d - 1, 1, &mut queue);
            relax(a + 1, d - 1, 1, &mut queue);
            if a > 0 {
                relax(a - 1, d + 1, 1, &mut queue);
            }
            if diagonal_free(a, d) {
                relax(a + 1, d, 0, &mut queue);
            }
            if a > 0 && diagonal_free(a - 1, d) {
                relax(a - 1, d, 0, &mut queue);
            }
        }
        for (t, table) in out.iter_mut().enumerate() {
            for j in 0..s {
                table[i][j] = dist[id(t, ell + j as i64)];
            }
        }
    }
    out
}

#[cfg(test)]
#[allow(clippy::needless_range_loop)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dollar(s: &[u8]) -> Vec<u8> {
        s.iter().flat_map(|&c| [c, b'$']).collect()
    }

    #[test]
    fn hamming_examples() {
        assert_eq!(hamming(b"bbbbabc", b"bcbbabb"), Some(2));
        assert_eq!(hamming(b"abc", b"abc"), Some(0));
        assert_eq!(hamming(b"ab", b"abc"), None);
    }

    #[test]
    fn edit_examples() {
        assert_eq!(edit_dp(b"bbbbabc", b"bbcbacbc"), 2);
        assert_eq!(edit_dp(b"abc", b""), 3);
        assert_eq!(edit_dp(b"abaaabaa", b"aabaabaa"), 2);
    }

    #[test]
    fn deletion_examples() {
        assert_eq!(deletion_dp(&dollar(b"bbbbabc"), &dollar(b"bbcbacbc")), 4);
        assert_eq!(deletion_dp(b"abc", b"abc"), 0);
        assert_eq!(deletion_dp(b"ab", b"ba"), 2);
    }

    #[test]
    fn circular_examples() {
        let (p, t, t2) = (b"abcbbbb", b"aaccbcbbabbb", b"aacbbcbacbcb");
        assert!(brute_cyc_occ(Metric::Hamming, p, t, 2).contains(&4));
        assert!(brute_cyc_occ(Metric::Edit, p, t2, 2).contains(&3));
        assert!(!brute_cyc_occ(Metric::Hamming, p, t2, 2).contains(&3));
        assert!(brute_cyc_occ(Metric::Hamming, p, p, 0).contains(&0));
        assert!(brute_cyc_occ(Metric::Edit, p, p, 0).contains(&0));
    }

    #[test]
    fn occ_k_examples() {
        assert_eq!(brute_occ_k(b"aaa", b"aabaa", 1), vec![0, 1, 2]);
        assert_eq!(brute_occ_k(b"aaa", b"aabaa", 0), Vec::<usize>::new());
        assert!(brute_occ_k(b"aaaaaa", b"aabaa", 3).is_empty());
    }

    #[test]
    fn lpref_examples() {
        let (p, t) = (b"aabaabaa", b"abaaabaa");
        let l = brute_lpref(p, t, 2);
        assert_eq!(l[0], 8);
        assert_eq!(l[t.len()], 2);
        let exact = brute_lpref(p, t, 0);
        for i in 0..=t.len() {
            let want = p.iter().zip(&t[i..]).take_while(|(a, b)| a == b).count();
            assert_eq!(exact[i], want);
        }
    }

    #[test]
    fn cpm_array_examples() {
        assert_eq!(brute_mismatch_cpm_array(b"abc", b"abc"), vec![0]);
        assert_eq!(brute_mismatch_cpm_array(b"ab", b"aa"), vec![1]);
        assert_eq!(brute_mismatch_cpm_array(b"ab", b"bab"), vec![0, 0]);
    }

    #[test]
    fn bji_examples() {
        let (lo, hi) = brute_bji(b"0110");
        // windows 01, 11, 10
        assert_eq!((lo[2], hi[2]), (1, 2));
        let (lo, hi) = brute_bji(b"1111");
        assert_eq!(lo, vec![0, 1, 2, 3, 4]);
        assert_eq!(hi, vec![0, 1, 2, 3, 4]);
        assert_eq!(brute_bji(b"1"), (vec![0, 1], vec![0, 1]));
    }

    fn word(alpha: u8, max: usize) -> impl Strategy<Value = Vec<u8>> {
        prop::collection::vec(0..alpha, 0..max).prop_map(|v| v.into_iter().map(|c| b'a' + c).collect())
    }

    fn naive_min_rotation(p: &[u8], w: &[u8]) -> usize {
        (0..p.len()).map(|x| hamming(&rotate(p, x), w).unwrap()).min().unwrap()
    }

    fn naive_edit_at(p: &[u8], t: &[u8], i: usize) -> usize {
        (0..p.len().max(1))
            .flat_map(|x| (i..=t.len()).map(move |j| edit_dp(&rotate(p, x), &t[i..j])))
            .min()
            .unwrap()
    }

    proptest! {
        #[test]
        fn edit_symmetry_and_triangle(a in word(3, 12), b in word(3, 12), c in word(3, 12)) {
            prop_assert_eq!(edit_dp(&a, &b), edit_dp(&b, &a));
            prop_assert!(edit_dp(&a, &c) <= edit_dp(&a, &b) + edit_dp(&b, &c));
        }

        #[test]
        fn dollar_doubles_edit(a in word(3, 15), b in word(3, 15)) {
            prop_assert_eq!(deletion_dp(&dollar(&a), &dollar(&b)), 2 * edit_dp(&a, &b));
        }

        #[test]
        fn cpm_array_is_rotation_minimum(p in word(3, 8), t in word(3, 25)) {
            prop_assume!(!p.is_empty() && p.len() <= t.len());
            let got = brute_mismatch_cpm_array(&p, &t);
            for (i, &d) in got.iter().enumerate() {
                prop_assert_eq!(d, naive_min_rotation(&p, &t[i..i + p.len()]));
            }
        }

        #[test]
        fn edit_profile_is_exhaustive(p in word(3, 6), t in word(3, 12)) {
            let got = circular_edit_profile(&p, &t);
            for i in 0..=t.len() {
                prop_assert_eq!(got[i], naive_edit_at(&p, &t, i));
            }
        }

        #[test]
        fn occurrences_grow_with_budget(p in word(2, 6), t in word(2, 20), k in 0usize..4) {
            prop_assume!(!p.is_empty());
            for metric in [Metric::Hamming, Metric::Edit] {
                let small = brute_cyc_occ(metric, &p, &t, k);
                let large = brute_cyc_occ(metric, &p, &t, k + 1);
                prop_assert!(small.iter().all(|i| large.contains(i)));
            }
        }
    }
}
