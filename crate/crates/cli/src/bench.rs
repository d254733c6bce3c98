//! Timing harness for the determinant engines on identical seeded
//! instances.

use std::path::Path;
use std::time::Instant;

use anyhow::{Context, Result};
use serde::Serialize;

use kerndet_core::detcore::clear_denominators;
use kerndet_core::rng::SplitMix64;
use kerndet_core::sample::sample_general;
use kerndet_core::{
    det_exact, det_multimodular, project_matrix, PrimeSampler, Scalar, SystemError,
};

#[derive(Debug, Clone, Serialize)]
pub struct EngineTiming {
    pub median_ms: Option<f64>,
    pub note: Option<String>,
}

impl EngineTiming {
    fn measured(ms: f64) -> Self {
        EngineTiming {
            median_ms: Some(ms),
            note: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub matrix_size: usize,
    pub det_exact: EngineTiming,
    pub det_multimodular: EngineTiming,
    pub det_mod_p: EngineTiming,
    pub det_bordering: EngineTiming,
}

fn median(mut samples: Vec<f64>) -> f64 {
    samples.sort_by(|a, b| a.partial_cmp(b).expect("timings are finite"));
    samples[samples.len() / 2]
}

fn time_reps(reps: usize, mut f: impl FnMut()) -> f64 {
    let mut samples = Vec::with_capacity(reps);
    for _ in 0..reps {
        let start = Instant::now();
        f();
        samples.push(start.elapsed().as_secs_f64() * 1e3);
    }
    median(samples)
}

pub fn run(sizes: &[usize], reps: usize, seed: u64) -> Result<Vec<BenchRow>> {
    let reps = reps.max(1);
    let mut seeds = SplitMix64::new(seed);
    let mut rows = Vec::new();
    for &n in sizes {
        // Prefer an instance with a nonzero determinant so the engines do
        // real work instead of exiting early on a zero pivot column.
        let mut picked = None;
        // The distinctness constraints need room to breathe at larger n.
        let range = 20i64.max(4 * (n as i64 + 1));
        for _ in 0..64 {
            let candidate = sample_general(n, seeds.split(), range)
                .with_context(|| format!("cannot sample a bench instance at n = {n}"))?;
            let m = candidate.kernel_matrix(n + 1).expect("full size in range");
            let singular = det_exact(&m).expect("square by construction").is_zero();
            picked = Some((candidate, m));
            if !singular {
                break;
            }
        }
        let (sys, kernel) = picked.expect("at least one candidate");
        let (cleared, _scale) = clear_denominators(&kernel);
        let field = {
            let mut primes = PrimeSampler::new(seeds.split());
            loop {
                let f = primes.next_field();
                if project_matrix(&kernel, &f).is_ok() {
                    break f;
                }
            }
        };

        let exact_ms = time_reps(reps, || {
            det_exact(&kernel).expect("square by construction");
        });
        let multimod_ms = time_reps(reps, || {
            det_multimodular(&cleared).expect("integer matrix");
        });
        let modp_ms = time_reps(reps, || {
            let projected = project_matrix(&kernel, &field).expect("field was screened");
            det_exact(&projected).expect("square by construction");
        });
        let bordering = match sys.det_by_bordering() {
            Ok(_) => EngineTiming::measured(time_reps(reps, || {
                sys.det_by_bordering().expect("chain was screened");
            })),
            Err(SystemError::DegenerateChain { level }) => EngineTiming {
                median_ms: None,
                note: Some(format!("fallback: leading minor D_{level} vanishes")),
            },
            Err(e) => return Err(anyhow::anyhow!("unexpected error: {e}")),
        };

        rows.push(BenchRow {
            n,
            matrix_size: n + 1,
            det_exact: EngineTiming::measured(exact_ms),
            det_multimodular: EngineTiming::measured(multimod_ms),
            det_mod_p: EngineTiming::measured(modp_ms),
            det_bordering: bordering,
        });
    }
    Ok(rows)
}

fn cell(t: &EngineTiming) -> String {
    match (&t.median_ms, &t.note) {
        (Some(ms), _) => format!("{ms:>10.3}"),
        (None, Some(_)) => format!("{:>10}", "fallback"),
        (None, None) => format!("{:>10}", "-"),
    }
}

pub fn print_table(rows: &[BenchRow]) {
    println!(
        "{:>4} {:>6} {:>10} {:>10} {:>10} {:>10}   (median ms)",
        "n", "size", "exact", "multimod", "mod_p", "bordering"
    );
    for row in rows {
        println!(
            "{:>4} {:>6} {} {} {} {}",
            row.n,
            row.matrix_size,
            cell(&row.det_exact),
            cell(&row.det_multimodular),
            cell(&row.det_mod_p),
            cell(&row.det_bordering),
        );
    }
}

pub fn write_json(rows: &[BenchRow], path: &Path) -> Result<()> {
    let mut text = serde_json::to_string_pretty(rows)?;
    text.push('\n');
    std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}
