//! Search for valid coefficient vectors at a fixed `(n, m)`.
//!
//! Exhaustive search walks `c_0..c_{n-2}` depth first while accumulating
//! every lag sum incrementally. The last coefficient `x` is not enumerated:
//! `r_0 = P_0 + x^2` fixes `x` to a square root of `1 - P_0`, read from a
//! precomputed table, and each remaining lag is linear in `x`
//! (`r_k = P_k + (c_{k-1} + c_{n-1-k}) x`), so only those roots are checked.
//!
//! Random search draws coefficient vectors from `ChaCha8Rng::seed_from_u64(seed)`,
//! one `gen_range(lo..m)` per coefficient in index order, where `lo` is 1
//! (or 0 with zeros allowed). The stream is a pure function of `(seed, trials)`.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::matrix::ResidueMatrix;
use crate::modular::{sqrt_of_unity_set, Modulus};
use crate::nht::{ConditionReport, NhtSpec};

/// Default cap on raw candidates, `(m-1)^n`, for an exhaustive run.
pub const DEFAULT_BUDGET: u128 = 10_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("exhaustive search over {candidates} candidates exceeds the budget of {budget}")]
    BudgetExceeded { candidates: u128, budget: u128 },
    #[error("half-size must be at least 1")]
    EmptySize,
    #[error("operation needs {expected} mode")]
    WrongMode { expected: &'static str },
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Randomized { trials: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub n: usize,
    pub modulus: Modulus,
    pub mode: SearchMode,
    pub dedup: bool,
    pub allow_zero: bool,
    pub limit: Option<usize>,
    pub budget: u128,
    /// Worker threads for exhaustive search; 0 uses the rayon default.
    pub workers: usize,
}

impl SearchConfig {
    pub fn exhaustive(n: usize, modulus: Modulus) -> Self {
        SearchConfig {
            n,
            modulus,
            mode: SearchMode::Exhaustive,
            dedup: false,
            allow_zero: false,
            limit: None,
            budget: DEFAULT_BUDGET,
            workers: 0,
        }
    }

    pub fn randomized(n: usize, modulus: Modulus, trials: u64, seed: u64) -> Self {
        SearchConfig {
            mode: SearchMode::Randomized { trials, seed },
            ..Self::exhaustive(n, modulus)
        }
    }

    pub fn with_dedup(mut self, dedup: bool) -> Self {
        self.dedup = dedup;
        self
    }

    pub fn with_allow_zero(mut self, allow_zero: bool) -> Self {
        self.allow_zero = allow_zero;
        self
    }

    pub fn with_limit(mut self, limit: Option<usize>) -> Self {
        self.limit = limit;
        self
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    fn lowest(&self) -> u64 {
        if self.allow_zero {
            0
        } else {
            1
        }
    }

    /// Size of the unpruned candidate space, saturating.
    pub fn raw_candidates(&self) -> u128 {
        let base = (self.modulus.get() - self.lowest()) as u128;
        (0..self.n).fold(1u128, |acc, _| acc.saturating_mul(base))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSummary {
    pub count: usize,
    pub elapsed: Duration,
    /// Exhaustive: `(n-1)`-prefixes resolved. Randomized: vectors drawn.
    pub candidates: u128,
}

/// Valid specs in lexicographic coefficient order, plus run statistics.
#[derive(Debug, Clone)]
pub struct SolutionStream {
    pub solutions: Vec<NhtSpec>,
    pub summary: SearchSummary,
}

impl SolutionStream {
    pub fn coefficient_vectors(&self) -> Vec<Vec<u64>> {
        self.solutions
            .iter()
            .map(|s| s.coefficients().to_vec())
            .collect()
    }

    /// One spec document per line.
    pub fn to_jsonl(&self) -> String {
        self.solutions
            .iter()
            .map(|s| s.to_json() + "\n")
            .collect()
    }
}

pub fn exhaustive_search(cfg: &SearchConfig) -> Result<SolutionStream, SearchError> {
    if cfg.mode != SearchMode::Exhaustive {
        return Err(SearchError::WrongMode {
            expected: "exhaustive",
        });
    }
    if cfg.n == 0 {
        return Err(SearchError::EmptySize);
    }
    let candidates = cfg.raw_candidates();
    if candidates > cfg.budget {
        return Err(SearchError::BudgetExceeded {
            candidates,
            budget: cfg.budget,
        });
    }
    let start = Instant::now();
    let searcher = Searcher::new(cfg);

    // Fan out over the first one or two coefficients; results come back in
    // task order, which is already lexicographic.
    let depth = (cfg.n - 1).min(2);
    let prefixes = searcher.prefixes(depth);
    let run = || -> Vec<(Vec<Vec<u64>>, u128)> {
        prefixes
            .par_iter()
            .map(|p| searcher.search_from(p, cfg.dedup))
            .collect()
    };
    let parts = if cfg.workers == 0 {
        run()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .map_err(|e| SearchError::Pool(e.to_string()))?
            .install(run)
    };

    let mut found = Vec::new();
    let mut examined = 0u128;
    for (sols, count) in parts {
        found.extend(sols);
        examined += count;
    }
    Ok(finish(cfg, found, examined, start))
}

pub fn random_search(cfg: &SearchConfig) -> Result<SolutionStream, SearchError> {
    let SearchMode::Randomized { trials, seed } = cfg.mode else {
        return Err(SearchError::WrongMode {
            expected: "randomized",
        });
    };
    if cfg.n == 0 {
        return Err(SearchError::EmptySize);
    }
    let start = Instant::now();
    let m = cfg.modulus.get();
    let lo = cfg.lowest();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found = BTreeSet::new();
    let mut c = vec![0u64; cfg.n];
    for _ in 0..trials {
        for slot in c.iter_mut() {
            *slot = rng.gen_range(lo..m);
        }
        if satisfies(&c, cfg.modulus) {
            let v = if cfg.dedup {
                canonicalize(&c, cfg.modulus)
            } else {
                c.clone()
            };
            found.insert(v);
        }
    }
    Ok(finish(cfg, found.into_iter().collect(), trials as u128, start))
}

fn finish(cfg: &SearchConfig, mut found: Vec<Vec<u64>>, candidates: u128, start: Instant) -> SolutionStream {
    if let Some(limit) = cfg.limit {
        found.truncate(limit);
    }
    let solutions: Vec<NhtSpec> = found
        .into_iter()
        .map(|c| {
            NhtSpec::from_residues(cfg.modulus, c, cfg.allow_zero)
                .expect("search only emits well-formed coefficient vectors")
        })
        .collect();
    SolutionStream {
        summary: SearchSummary {
            count: solutions.len(),
            elapsed: start.elapsed(),
            candidates,
        },
        solutions,
    }
}

fn satisfies(c: &[u64], m: Modulus) -> bool {
    let n = c.len();
    let mv = m.get();
    (0..=n / 2).all(|k| {
        let r = (0..n).fold(0u64, |acc, i| (acc + c[i] * c[(i + k) % n]) % mv);
        r == if k == 0 { 1 % mv } else { 0 }
    })
}

struct Searcher {
    n: usize,
    lags: usize,
    m: Modulus,
    lo: u64,
    /// `roots[t]` lists `x` in `[lo, m)` with `x^2 = t`, ascending.
    roots: Vec<Vec<u64>>,
}

impl Searcher {
    fn new(cfg: &SearchConfig) -> Self {
        let m = cfg.modulus;
        let mv = m.get() as usize;
        let mut roots = vec![Vec::new(); mv];
        for x in cfg.lowest()..m.get() {
            roots[m.mul(x, x) as usize].push(x);
        }
        Searcher {
            n: cfg.n,
            lags: cfg.n / 2 + 1,
            m,
            lo: cfg.lowest(),
            roots,
        }
    }

    fn prefixes(&self, depth: usize) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for _ in 0..depth {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (self.lo..self.m.get()).map(move |v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        out
    }

    /// Adds every lag product that position `j` closes, given `c[..=j]`.
    fn accumulate(&self, c: &[u64], j: usize, partial: &mut [u64]) {
        let (n, m) = (self.n, self.m);
        partial[0] = m.add(partial[0], m.mul(c[j], c[j]));
        for (k, slot) in partial.iter_mut().enumerate().skip(1) {
            let ahead = (j + k) % n;
            if ahead < j {
                *slot = m.add(*slot, m.mul(c[j], c[ahead]));
            }
            let behind = (j + n - k) % n;
            if behind < j {
                *slot = m.add(*slot, m.mul(c[behind], c[j]));
            }
        }
    }

    fn search_from(&self, prefix: &[u64], dedup: bool) -> (Vec<Vec<u64>>, u128) {
        let n = self.n;
        let mut c = vec![0u64; n];
        // partial sums after fixing positions 0..d live at [d * lags ..]
        let mut partial = vec![0u64; (n + 1) * self.lags];
        for (j, &v) in prefix.iter().enumerate() {
            c[j] = v;
            let (done, rest) = partial.split_at_mut((j + 1) * self.lags);
            rest[..self.lags].copy_from_slice(&done[j * self.lags..]);
            self.accumulate(&c, j, &mut rest[..self.lags]);
        }
        let mut out = Vec::new();
        let mut examined = 0u128;
        self.descend(prefix.len(), &mut c, &mut partial, &mut out, &mut examined);
        if dedup {
            out.retain(|v| canonicalize(v, self.m) == *v);
        }
        (out, examined)
    }

    fn descend(
        &self,
        depth: usize,
        c: &mut [u64],
        partial: &mut [u64],
        out: &mut Vec<Vec<u64>>,
        examined: &mut u128,
    ) {
        let lags = self.lags;
        if depth == self.n - 1 {
            *examined += 1;
            self.resolve_last(c, &partial[depth * lags..(depth + 1) * lags], out);
            return;
        }
        for v in self.lo..self.m.get() {
            c[depth] = v;
            let (done, rest) = partial.split_at_mut((depth + 1) * lags);
            rest[..lags].copy_from_slice(&done[depth * lags..]);
            self.accumulate(c, depth, &mut rest[..lags]);
            self.descend(depth + 1, c, partial, out, examined);
        }
    }

    fn resolve_last(&self, c: &mut [u64], partial: &[u64], out: &mut Vec<Vec<u64>>) {
        let (n, m) = (self.n, self.m);
        let target = m.add(1 % m.get(), m.neg(partial[0]));
        for &x in &self.roots[target as usize] {
            let ok = (1..self.lags).all(|k| {
                let slope = m.add(c[k - 1], c[n - 1 - k]);
                m.add(partial[k], m.mul(slope, x)) == 0
            });
            if ok {
                c[n - 1] = x;
                out.push(c.to_vec());
            }
        }
    }
}

/// Closure of `c` under rotations, reversal and scaling by square roots of one.
pub fn orbit(c: &[u64], m: Modulus) -> BTreeSet<Vec<u64>> {
    let n = c.len();
    let mut out = BTreeSet::new();
    let reversed: Vec<u64> = c.iter().rev().copied().collect();
    for s in sqrt_of_unity_set(m) {
        for base in [c, &reversed[..]] {
            let scaled: Vec<u64> = base.iter().map(|&v| m.mul(v % m.get(), s.value())).collect();
            for r in 0..n {
                out.insert((0..n).map(|i| scaled[(i + r) % n]).collect());
            }
        }
    }
    out
}

/// Lexicographically smallest member of the orbit.
pub fn canonicalize(c: &[u64], m: Modulus) -> Vec<u64> {
    orbit(c, m)
        .into_iter()
        .next()
        .unwrap_or_else(|| c.to_vec())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub conditions: ConditionReport,
    pub gram: ResidueMatrix,
    pub gram_identity: bool,
    /// Conditions verdict equals gram verdict; always true for a sound build.
    pub agreement: bool,
}

impl VerificationReport {
    pub fn is_valid(&self) -> bool {
        self.agreement && self.gram_identity
    }
}

pub fn verify_solution(spec: &NhtSpec) -> VerificationReport {
    let conditions = spec.conditions();
    let gram = spec.gram();
    let gram_identity = gram.is_identity();
    VerificationReport {
        agreement: conditions.is_satisfied() == gram_identity,
        conditions,
        gram,
        gram_identity,
    }
}
