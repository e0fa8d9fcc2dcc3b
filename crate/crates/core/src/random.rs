//! Seeded random instance generation and the fuzz driver.
//!
//! The generator is ChaCha8 keyed from the 64-bit seed via SplitMix64, with
//! the per-trial stream id set to the trial index, so trials are independent
//! and a corpus is reproducible byte-for-byte on any platform. All range
//! draws go through u32 to keep the stream identical across word sizes.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{verify_all, BoundReport, CheckCounter, VerifyConfig};
use crate::covering::{BranchPoint, HandlePair, HurwitzSystem};
use crate::error::{Error, Result};
use crate::fiber::{align, AlignedPair};
use crate::perm::{is_transitive, Permutation};

const MAX_RETRIES: u32 = 256;

/// Uniformly random permutation by Fisher–Yates.
pub fn random_permutation<R: Rng + ?Sized>(rng: &mut R, degree: usize) -> Permutation {
    assert!(degree >= 1, "degree must be at least 1");
    let mut images: Vec<usize> = (0..degree).collect();
    for i in (1..degree).rev() {
        let j = rng.gen_range(0..=i as u32) as usize;
        images.swap(i, j);
    }
    Permutation::from_images(images).expect("shuffle yields a bijection")
}

/// Random valid system over labels `z1..zr`; see
/// [`random_hurwitz_system_with_labels`].
pub fn random_hurwitz_system<R: Rng + ?Sized>(
    rng: &mut R,
    degree: usize,
    base_genus: usize,
    branch_count: usize,
) -> Result<HurwitzSystem> {
    let labels: Vec<String> = (1..=branch_count).map(|i| format!("z{}", i)).collect();
    random_hurwitz_system_with_labels(rng, degree, base_genus, &labels)
}

/// Draws handles and all but the last branch permutation uniformly; the last
/// branch permutation is the unique value closing the surface relation.
/// Resamples (bounded retries) until the system is transitive and, for
/// degree ≥ 2, the forced permutation is not the identity. With an empty
/// label list the handles themselves must close the relation, which is only
/// sampled, so positive-genus unbranched covers may exhaust their retries.
pub fn random_hurwitz_system_with_labels<R: Rng + ?Sized>(
    rng: &mut R,
    degree: usize,
    base_genus: usize,
    labels: &[String],
) -> Result<HurwitzSystem> {
    for _ in 0..MAX_RETRIES {
        let handles: Vec<HandlePair> = (0..base_genus)
            .map(|_| HandlePair {
                a: random_permutation(rng, degree),
                b: random_permutation(rng, degree),
            })
            .collect();
        let mut prefix = Permutation::identity(degree);
        for h in &handles {
            let comm =
                h.a.compose_unchecked(&h.b)
                    .compose_unchecked(&h.a.inverse())
                    .compose_unchecked(&h.b.inverse());
            prefix = prefix.compose_unchecked(&comm);
        }
        let mut branch: Vec<BranchPoint> = Vec::with_capacity(labels.len());
        for label in &labels[..labels.len().saturating_sub(1)] {
            let perm = random_permutation(rng, degree);
            prefix = prefix.compose_unchecked(&perm);
            branch.push(BranchPoint::new(label.clone(), perm));
        }
        if let Some(last_label) = labels.last() {
            let forced = prefix.inverse();
            if degree >= 2 && forced.is_identity() {
                continue;
            }
            branch.push(BranchPoint::new(last_label.clone(), forced));
        } else if !prefix.is_identity() {
            continue;
        }
        let gens: Vec<Permutation> = handles
            .iter()
            .flat_map(|h| [h.a.clone(), h.b.clone()])
            .chain(branch.iter().map(|b| b.perm.clone()))
            .collect();
        if !is_transitive(&gens, degree) {
            continue;
        }
        return Ok(HurwitzSystem::new(degree, base_genus, handles, branch)
            .expect("generated system satisfies the invariants"));
    }
    Err(Error::RetriesExhausted {
        retries: MAX_RETRIES,
    })
}

/// Fuzz campaign parameters. Identical configs yield identical instance
/// streams and byte-identical summaries.
#[derive(Clone, Debug, Serialize)]
pub struct FuzzConfig {
    pub seed: u64,
    pub trials: u64,
    pub max_degree: usize,
    pub max_branch: usize,
    pub max_base_genus: usize,
    pub group_order_cap: u64,
    pub tuple_budget: u64,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            seed: 0,
            trials: 100,
            max_degree: 6,
            max_branch: 5,
            max_base_genus: 2,
            group_order_cap: 10_000_000,
            tuple_budget: 10_000_000,
        }
    }
}

impl FuzzConfig {
    pub fn verify_config(&self) -> VerifyConfig {
        VerifyConfig {
            group_order_cap: self.group_order_cap,
            tuple_budget: self.tuple_budget,
        }
    }
}

/// The per-trial generator: one ChaCha8 stream per trial index, so parallel
/// and serial corpus runs agree.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

#[derive(Clone, Debug, Serialize)]
pub struct FuzzFailure {
    pub trial: u64,
    pub name: String,
    pub context: String,
}

#[derive(Clone, Debug)]
pub struct FuzzSummary {
    pub config: FuzzConfig,
    pub trials_run: u64,
    pub generation_retries_exhausted: u64,
    pub counters: BTreeMap<String, CheckCounter>,
    pub failures: Vec<FuzzFailure>,
}

impl FuzzSummary {
    pub fn any_failed(&self) -> bool {
        !self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Raw<'a> {
            format_version: u32,
            config: &'a FuzzConfig,
            trials_run: u64,
            generation_retries_exhausted: u64,
            failed: bool,
            checks: &'a BTreeMap<String, CheckCounter>,
            failures: &'a [FuzzFailure],
        }
        serde_json::to_string_pretty(&Raw {
            format_version: 1,
            config: &self.config,
            trials_run: self.trials_run,
            generation_retries_exhausted: self.generation_retries_exhausted,
            failed: self.any_failed(),
            checks: &self.counters,
            failures: &self.failures,
        })
        .expect("summary serialization cannot fail")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "fuzz: seed {}, {} trials ({} run, {} generation retries exhausted)\n",
            self.config.seed,
            self.config.trials,
            self.trials_run,
            self.generation_retries_exhausted
        ));
        let width = self
            .counters
            .keys()
            .map(|k| k.len())
            .max()
            .unwrap_or(5)
            .max(5);
        out.push_str(&format!(
            "{:width$}  {:>8} {:>8} {:>8} {:>8}\n",
            "check",
            "holds",
            "failed",
            "n/a",
            "skipped",
            width = width
        ));
        for (name, c) in &self.counters {
            out.push_str(&format!(
                "{:width$}  {:>8} {:>8} {:>8} {:>8}\n",
                name,
                c.holds,
                c.failed,
                c.inapplicable,
                c.skipped,
                width = width
            ));
        }
        for f in &self.failures {
            out.push_str(&format!(
                "FAILURE trial {}: {} [{}]\n",
                f.trial, f.name, f.context
            ));
        }
        out.push_str(if self.any_failed() {
            "verdict: FAILED\n"
        } else {
            "verdict: ok\n"
        });
        out
    }
}

/// One random aligned pair. Even trials share one labelled branch set; odd
/// trials draw disjoint sets so alignment has to insert identities.
pub fn random_aligned_pair(
    rng: &mut ChaCha8Rng,
    config: &FuzzConfig,
    shared_labels: bool,
) -> Result<AlignedPair> {
    let base_genus = rng.gen_range(0..=config.max_base_genus as u32) as usize;
    let deg_p = rng.gen_range(1..=config.max_degree.max(1) as u32) as usize;
    let deg_w = rng.gen_range(1..=config.max_degree.max(1) as u32) as usize;
    let min_branch = |deg: usize| if base_genus == 0 && deg >= 2 { 2 } else { 1 };
    let branch_range = |lo: usize| {
        let hi = config.max_branch.max(lo) as u32;
        lo as u32..=hi
    };
    let (p, w) = if shared_labels {
        let lo = min_branch(deg_p).max(min_branch(deg_w));
        let r = rng.gen_range(branch_range(lo)) as usize;
        let labels: Vec<String> = (1..=r).map(|i| format!("z{}", i)).collect();
        let p = random_hurwitz_system_with_labels(rng, deg_p, base_genus, &labels)?;
        let w = random_hurwitz_system_with_labels(rng, deg_w, base_genus, &labels)?;
        (p, w)
    } else {
        let rp = rng.gen_range(branch_range(min_branch(deg_p))) as usize;
        let rw = rng.gen_range(branch_range(min_branch(deg_w))) as usize;
        let p_labels: Vec<String> = (1..=rp).map(|i| format!("p{}", i)).collect();
        let w_labels: Vec<String> = (1..=rw).map(|i| format!("w{}", i)).collect();
        let p = random_hurwitz_system_with_labels(rng, deg_p, base_genus, &p_labels)?;
        let w = random_hurwitz_system_with_labels(rng, deg_w, base_genus, &w_labels)?;
        (p, w)
    };
    align(&p, &w)
}

/// Runs the whole corpus: generate, align, verify, accumulate. Per-trial cap
/// and budget exhaustion are already "skipped" entries in the reports;
/// exhausted generation retries are counted and the trial is dropped.
pub fn fuzz(config: &FuzzConfig) -> Result<FuzzSummary> {
    let mut counters: BTreeMap<String, CheckCounter> = BTreeMap::new();
    let mut failures = Vec::new();
    let mut trials_run = 0;
    let mut generation_retries_exhausted = 0;
    let verify_config = config.verify_config();
    for trial in 0..config.trials {
        let mut rng = trial_rng(config.seed, trial);
        let pair = match random_aligned_pair(&mut rng, config, trial % 2 == 0) {
            Ok(pair) => pair,
            Err(Error::RetriesExhausted { .. }) => {
                generation_retries_exhausted += 1;
                continue;
            }
            Err(other) => return Err(other),
        };
        let report = verify_all(&pair, &verify_config)?;
        accumulate(&mut counters, &mut failures, trial, &report);
        trials_run += 1;
    }
    Ok(FuzzSummary {
        config: config.clone(),
        trials_run,
        generation_retries_exhausted,
        counters,
        failures,
    })
}

fn accumulate(
    counters: &mut BTreeMap<String, CheckCounter>,
    failures: &mut Vec<FuzzFailure>,
    trial: u64,
    report: &BoundReport,
) {
    for (name, counter) in report.counters() {
        let slot = counters.entry(name).or_default();
        slot.holds += counter.holds;
        slot.failed += counter.failed;
        slot.inapplicable += counter.inapplicable;
        slot.skipped += counter.skipped;
    }
    for check in &report.checks {
        if check.failed() {
            failures.push(FuzzFailure {
                trial,
                name: check.name.to_string(),
                context: check.context.clone(),
            });
        }
    }
}
