//! Seeded fuzzing of every search path against the brute-force oracles.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::edit::{self, LpamSource};
use crate::error::Result;
use crate::lpam::{all_lpam, all_lpam_baseline};
use crate::mismatch::{self, Algo};
use crate::oracles::{brute_bji, brute_cyc_occ, brute_lpref, circular_edit_profile, edit_dp, brute_mismatch_cpm_array, Metric};
use crate::reductions::{bji_from_cpm, edit_distance_via_cpm, CpmStrategy};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SelftestReport {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SelftestReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, good: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !good {
            self.failures.push(what());
        }
    }
}

fn word(rng: &mut StdRng, sigma: u8, lo: usize, hi: usize) -> Vec<u8> {
    let len = rng.gen_range(lo..=hi);
    (0..len).map(|_| b'a' + rng.gen_range(0..sigma)).collect()
}

fn show(s: &[u8]) -> String {
    String::from_utf8_lossy(s).into_owned()
}

fn hamming_case(rng: &mut StdRng, out: &mut SelftestReport) -> Result<()> {
    let sigma = rng.gen_range(2..=4);
    let p = word(rng, sigma, 1, 24);
    let t = word(rng, sigma, 0, 120);
    let k = rng.gen_range(0..=5);
    let want = brute_cyc_occ(Metric::Hamming, &p, &t, k);
    let case = || format!("hamming p={} t={} k={k}", show(&p), show(&t));
    for algo in [Algo::Anchored, Algo::Nk] {
        let got = mismatch::search(&p, &t, k, algo)?;
        out.check(got == want, || format!("{} report {algo:?}", case()));
    }
    let profile = brute_mismatch_cpm_array(&p, &t);
    let hit = mismatch::decide(&p, &t, k)?;
    out.check(
        match hit {
            Some(i) => i < profile.len() && profile[i] <= k,
            None => want.is_empty(),
        },
        || format!("{} decide {hit:?}", case()),
    );
    Ok(())
}

fn edit_case(rng: &mut StdRng, out: &mut SelftestReport) -> Result<()> {
    let sigma = if rng.gen_bool(0.5) { 2 } else { 4 };
    let p = word(rng, sigma, 1, 12);
    let t = word(rng, sigma, 0, 50);
    let k = rng.gen_range(0..=3);
    let want = brute_cyc_occ(Metric::Edit, &p, &t, k);
    let case = || format!("edit p={} t={} k={k}", show(&p), show(&t));
    out.check(edit::report(&p, &t, k)? == want, || format!("{} report", case()));
    let profile = circular_edit_profile(&p, &t);
    for source in [LpamSource::Fast, LpamSource::Baseline] {
        let hit = edit::decide(&p, &t, k, source)?;
        out.check(
            match hit {
                Some(i) => profile[i] <= k,
                None => want.is_empty(),
            },
            || format!("{} decide {source:?} {hit:?}", case()),
        );
    }
    Ok(())
}

fn lpam_case(rng: &mut StdRng, out: &mut SelftestReport) -> Result<()> {
    let p = word(rng, 3, 0, 15);
    let t = word(rng, 3, 0, 40);
    let k = rng.gen_range(0..=4);
    let fast = all_lpam(&p, &t, k)?;
    let base = all_lpam_baseline(&p, &t, k)?;
    for kp in 0..=k {
        let want = brute_lpref(&p, &t, kp);
        let fast_row: Vec<usize> = (0..=t.len()).map(|j| fast.lpref(kp, j)).collect();
        let base_row: Vec<usize> = (0..=t.len()).map(|j| base.lpref(kp, j)).collect();
        out.check(fast_row == want && base_row == want, || format!("lpam p={} t={} k={kp}", show(&p), show(&t)));
    }
    Ok(())
}

fn reduction_case(rng: &mut StdRng, out: &mut SelftestReport) -> Result<()> {
    let x: Vec<u8> = (0..rng.gen_range(0..30)).map(|_| if rng.gen_bool(0.5) { b'1' } else { b'0' }).collect();
    let got = bji_from_cpm(&x, CpmStrategy::ViaReport)?;
    out.check(got == brute_bji(&x), || format!("bji x={}", show(&x)));
    let u = word(rng, 2, 0, 10);
    let v = word(rng, 2, 0, 10);
    let d = edit_distance_via_cpm(&u, &v, LpamSource::Baseline)?;
    out.check(d == edit_dp(&u, &v), || format!("edit-via-cpm u={} v={}", show(&u), show(&v)));
    Ok(())
}

/// Runs `iters` rounds, each one case from every family.
pub fn run(seed: u64, iters: usize) -> Result<SelftestReport> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = SelftestReport::default();
    for round in 0..iters {
        hamming_case(&mut rng, &mut out)?;
        edit_case(&mut rng, &mut out)?;
        if round % 4 == 0 {
            lpam_case(&mut rng, &mut out)?;
            reduction_case(&mut rng, &mut out)?;
        }
        log::debug!("selftest round {round}: {} checks", out.checks);
    }
    Ok(out)
}
