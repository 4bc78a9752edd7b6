//! Timing sweeps over the budget `k` on near-periodic inputs, with CSV rows
//! and a one-sided growth check against a reference cost function.

use std::fmt;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::edit::{self, LpamSource};
use crate::error::Result;
use crate::mismatch::{self, Algo};

pub const CSV_HEADER: &str = "n,m,k,algo,mode,elapsed_ns";

/// What a sweep times.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Workload {
    HammingDecide,
    HammingReport(Algo),
    EditDecide(LpamSource),
    EditReport,
}

impl Workload {
    pub fn algo(&self) -> &'static str {
        match self {
            Workload::HammingDecide | Workload::EditReport => "anchored",
            Workload::HammingReport(Algo::Anchored) => "anchored",
            Workload::HammingReport(Algo::Nk) => "nk",
            Workload::HammingReport(Algo::Brute) => "brute",
            Workload::EditDecide(LpamSource::Fast) => "fast",
            Workload::EditDecide(LpamSource::Baseline) => "baseline",
        }
    }

    pub fn mode(&self) -> &'static str {
        match self {
            Workload::HammingDecide | Workload::EditDecide(_) => "decide",
            Workload::HammingReport(_) | Workload::EditReport => "report",
        }
    }

    pub fn metric(&self) -> &'static str {
        match self {
            Workload::HammingDecide | Workload::HammingReport(_) => "hamming",
            Workload::EditDecide(_) | Workload::EditReport => "edit",
        }
    }

    fn run(&self, p: &[u8], t: &[u8], k: usize) -> Result<usize> {
        Ok(match *self {
            Workload::HammingDecide => mismatch::decide(p, t, k)?.map_or(0, |i| i + 1),
            Workload::HammingReport(algo) => mismatch::search(p, t, k, algo)?.len(),
            Workload::EditDecide(source) => edit::decide(p, t, k, source)?.map_or(0, |i| i + 1),
            Workload::EditReport => edit::report(p, t, k)?.len(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub algo: &'static str,
    pub mode: &'static str,
    pub elapsed_ns: u128,
}

impl fmt::Display for BenchRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{},{},{}", self.n, self.m, self.k, self.algo, self.mode, self.elapsed_ns)
    }
}

/// Pattern and text drawn from the powers of a short random root, with
/// roughly one substitution per 50 letters.
pub fn periodic_input(seed: u64, n: usize, m: usize) -> (Vec<u8>, Vec<u8>) {
    let mut rng = StdRng::seed_from_u64(seed);
    let root: Vec<u8> = (0..rng.gen_range(2..6)).map(|_| b'a' + rng.gen_range(0..3)).collect();
    let mut draw = |len: usize| -> Vec<u8> {
        let shift = rng.gen_range(0..root.len());
        (0..len)
            .map(|x| if rng.gen_ratio(1, 50) { b'a' + rng.gen_range(0..4) } else { root[(x + shift) % root.len()] })
            .collect()
    };
    let p = draw(m);
    let t = draw(n);
    (p, t)
}

/// Median wall time of `reps` runs.
pub fn measure(work: Workload, p: &[u8], t: &[u8], k: usize, reps: usize) -> Result<BenchRow> {
    let mut times = Vec::with_capacity(reps.max(1));
    for _ in 0..reps.max(1) {
        let start = Instant::now();
        std::hint::black_box(work.run(p, t, k)?);
        times.push(start.elapsed().as_nanos());
    }
    times.sort_unstable();
    Ok(BenchRow {
        n: t.len(),
        m: p.len(),
        k,
        algo: work.algo(),
        mode: work.mode(),
        elapsed_ns: times[times.len() / 2],
    })
}

/// One row per budget on a single fixed input.
pub fn sweep(work: Workload, n: usize, m: usize, ks: &[usize], reps: usize, seed: u64) -> Result<Vec<BenchRow>> {
    let (p, t) = periodic_input(seed, n, m);
    ks.iter().map(|&k| measure(work, &p, &t, k, reps)).collect()
}

pub fn k2(k: usize) -> f64 {
    (k * k) as f64
}

pub fn k2_log2k(k: usize) -> f64 {
    let l = (k.max(2) as f64).log2();
    (k * k) as f64 * l * l
}

/// Constant `c` read off the smallest budget, and the largest observed
/// `t_k / (c·f(k))`.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthFit {
    pub c: f64,
    pub worst: f64,
    pub tolerance: f64,
}

impl GrowthFit {
    pub fn passes(&self) -> bool {
        self.worst <= self.tolerance
    }
}

pub fn fit_growth(rows: &[BenchRow], f: fn(usize) -> f64, tolerance: f64) -> Option<GrowthFit> {
    let first = rows.iter().min_by_key(|r| r.k)?;
    let c = first.elapsed_ns.max(1) as f64 / f(first.k);
    let worst = rows.iter().map(|r| r.elapsed_ns as f64 / (c * f(r.k))).fold(0.0, f64::max);
    Some(GrowthFit { c, worst, tolerance })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(k: usize, elapsed_ns: u128) -> BenchRow {
        BenchRow { n: 10, m: 5, k, algo: "anchored", mode: "decide", elapsed_ns }
    }

    #[test]
    fn csv_line() {
        assert_eq!(row(4, 123).to_string(), "10,5,4,anchored,decide,123");
        assert_eq!(CSV_HEADER.split(',').count(), 6);
    }

    #[test]
    fn growth_is_one_sided() {
        let quadratic: Vec<BenchRow> = [4, 8, 16].iter().map(|&k| row(k, (k * k) as u128 * 10)).collect();
        let fit = fit_growth(&quadratic, k2, 2.0).unwrap();
        assert!((fit.c - 10.0).abs() < 1e-9 && fit.passes());
        let linear: Vec<BenchRow> = [4, 8, 16].iter().map(|&k| row(k, k as u128 * 100)).collect();
        assert!(fit_growth(&linear, k2, 2.0).unwrap().passes());
        let cubic: Vec<BenchRow> = [4, 8, 16].iter().map(|&k| row(k, (k * k * k) as u128)).collect();
        assert!(!fit_growth(&cubic, k2, 2.0).unwrap().passes());
        assert!(fit_growth(&[], k2, 2.0).is_none());
    }

    #[test]
    fn inputs_are_reproducible() {
        assert_eq!(periodic_input(5, 300, 40), periodic_input(5, 300, 40));
        let (p, t) = periodic_input(1, 300, 40);
        assert_eq!((p.len(), t.len()), (40, 300));
        assert_eq!(k2_log2k(4), 64.0);
    }

    #[test]
    fn sweep_rows() {
        let rows = sweep(Workload::HammingReport(Algo::Nk), 200, 30, &[1, 2], 1, 3).unwrap();
        assert_eq!(rows.iter().map(|r| (r.k, r.algo, r.mode)).collect::<Vec<_>>(), vec![(1, "nk", "report"), (2, "nk", "report")]);
    }
}
