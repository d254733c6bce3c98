//! Argument parsing and command dispatch.
//!
//! Exit-code contract: 0 when every check passes, 1 when any identity check
//! fails, 2 for invalid input (unreadable/malformed files, violated system
//! invariants, bad arguments).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use kerndet_core::rng::SplitMix64;
use kerndet_core::sample::{
    sample_general, sample_general_mod, sample_symmetric, sample_symmetric_mod,
};
use kerndet_core::{det_exact, Scalar, SextupleSystem};

use crate::bench;
use crate::instance::{self, FieldSpec, InstanceFile, LoadedInstance, Mode, SeedInfo};
use crate::suite::{self, SuiteSel, TimedRecord};

#[derive(Parser)]
#[command(
    name = "kerndet",
    about = "Construct, evaluate, and verify exact determinant identities for Cauchy-like kernel matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Args, Clone)]
pub struct GenParams {
    /// Instance kind: a general system or the symmetric specialization.
    #[arg(long, value_enum, default_value_t = Mode::General)]
    pub mode: Mode,
    /// Number of base pairs (the system holds n+1 sextuples).
    #[arg(long)]
    pub n: usize,
    /// Seed for deterministic rejection sampling.
    #[arg(long)]
    pub seed: u64,
    /// Parameters are drawn uniformly from [-range, range].
    #[arg(long, default_value_t = 20)]
    pub range: i64,
    /// Field: "rational" or "prime:P" with P prime.
    #[arg(long, default_value = "rational")]
    pub field: String,
}

#[derive(Subcommand)]
pub enum Cmd {
    /// Generate a random valid instance file.
    Gen {
        #[command(flatten)]
        params: GenParams,
        /// Output path for the JSON instance.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run identity suites on an instance file (or on generated batches).
    Verify {
        /// Instance file; omit when using --trials.
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = SuiteSel::All)]
        suite: SuiteSel,
        /// Number of random 62-bit primes to re-verify under.
        #[arg(long, default_value_t = 3)]
        primes: usize,
        /// Seed for the prime stream.
        #[arg(long, default_value_t = 0x5EED)]
        prime_seed: u64,
        /// Batch mode: verify this many internally generated instances.
        #[arg(long)]
        trials: Option<usize>,
        /// Batch mode instance shape (defaults: general, n=2, range 20,
        /// rational).
        #[arg(long, value_enum, default_value_t = Mode::General)]
        mode: Mode,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        range: i64,
        #[arg(long, default_value = "rational")]
        field: String,
        /// Emit the report as JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Time the determinant engines on identical seeded instances.
    Bench {
        /// System sizes n, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Also write the rows as JSON.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the full kernel determinant D_{n+1} of an instance.
    Det { file: PathBuf },
}

pub fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Gen { params, output } => {
            let file = generate(&params)?;
            std::fs::write(&output, instance::to_json(&file))
                .with_context(|| format!("cannot write {}", output.display()))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify {
            file,
            suite,
            primes,
            prime_seed,
            trials,
            mode,
            n,
            seed,
            range,
            field,
            json,
        } => match (file, trials) {
            (Some(path), None) => verify_file(&path, suite, primes, prime_seed, json),
            (None, Some(count)) => {
                let params = GenParams {
                    mode,
                    n,
                    seed,
                    range,
                    field,
                };
                verify_batch(&params, count, suite, primes, prime_seed)
            }
            (Some(_), Some(_)) => bail!("pass either FILE or --trials, not both"),
            (None, None) => bail!("pass an instance FILE or --trials N"),
        },
        Cmd::Bench {
            sizes,
            reps,
            seed,
            output,
        } => {
            let rows = bench::run(&sizes, reps, seed)?;
            bench::print_table(&rows);
            if let Some(path) = output {
                bench::write_json(&rows, &path)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Det { file } => {
            let (_, loaded) = instance::load(&file)?;
            println!("{}", kernel_det_string(&loaded));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn generate(params: &GenParams) -> Result<InstanceFile> {
    let field = FieldSpec::parse(&params.field)?;
    if params.range < 1 {
        bail!("--range must be at least 1");
    }
    let seed_info = SeedInfo {
        seed: params.seed,
        range: params.range,
    };
    let file = match (params.mode, &field) {
        (Mode::General, FieldSpec::Rational) => {
            let sys = sample_general(params.n, params.seed, params.range)?;
            instance::file_from_general(&sys, &field, seed_info)
        }
        (Mode::General, FieldSpec::Prime(f)) => {
            let sys = sample_general_mod(f, params.n, params.seed, params.range)?;
            instance::file_from_general(&sys, &field, seed_info)
        }
        (Mode::Symmetric, FieldSpec::Rational) => {
            let sym = sample_symmetric(params.n, params.seed, params.range)?;
            instance::file_from_symmetric(&sym, &field, seed_info)
        }
        (Mode::Symmetric, FieldSpec::Prime(f)) => {
            let sym = sample_symmetric_mod(f, params.n, params.seed, params.range)?;
            instance::file_from_symmetric(&sym, &field, seed_info)
        }
    };
    Ok(file)
}

fn kernel_det_string(loaded: &LoadedInstance) -> String {
    fn det_of<T: Scalar>(sys: &SextupleSystem<T>) -> String {
        det_exact(&sys.kernel_matrix(sys.size()).expect("in range"))
            .expect("square by construction")
            .to_string()
    }
    match loaded {
        LoadedInstance::RationalGeneral(sys) => det_of(sys),
        LoadedInstance::PrimeGeneral(sys) => det_of(sys),
        LoadedInstance::RationalSymmetric(sym) => det_of(&sym.lift()),
        LoadedInstance::PrimeSymmetric(sym) => det_of(&sym.lift()),
    }
}

fn verify_file(
    path: &Path,
    sel: SuiteSel,
    primes: usize,
    prime_seed: u64,
    json: bool,
) -> Result<ExitCode> {
    let (file, loaded) = instance::load(path)?;
    if sel == SuiteSel::Symmetric && loaded.mode() != Mode::Symmetric {
        bail!("the symmetric suite needs a symmetric instance");
    }

    let mut records = Vec::new();
    // Golden kernel first: a mutated file is an identity failure (exit 1),
    // not a malformed input (exit 2).
    if let Some(stored) = &file.kernel {
        records.push(golden_record(stored, &loaded)?);
    }

    let suite_records = match &loaded {
        LoadedInstance::RationalGeneral(sys) => {
            suite::verify_rational_general(sys, sel, primes, prime_seed)
        }
        LoadedInstance::RationalSymmetric(sym) => {
            suite::verify_rational_symmetric(sym, sel, primes, prime_seed)
        }
        LoadedInstance::PrimeGeneral(sys) => {
            let mut r = suite::run_general(sys, sel);
            r.push(skipped_trials_record());
            r
        }
        LoadedInstance::PrimeSymmetric(sym) => {
            let mut r = suite::run_symmetric(sym, sel);
            r.push(skipped_trials_record());
            r
        }
    };
    records.extend(suite_records);

    let passed = suite::all_passed(&records);
    if json {
        print_json(path.display().to_string(), &file, &records, passed)?;
    } else {
        print_text(&path.display().to_string(), &file, &records, passed);
    }
    Ok(if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn skipped_trials_record() -> TimedRecord {
    TimedRecord {
        id: "modp.trials".into(),
        verdict: "skipped".into(),
        millis: 0.0,
        witness: vec![(
            "reason".into(),
            "instance already lives in a prime field".into(),
        )],
    }
}

fn golden_record(stored: &[Vec<String>], loaded: &LoadedInstance) -> Result<TimedRecord> {
    let mismatch = match loaded {
        LoadedInstance::RationalGeneral(sys) => instance::golden_kernel_mismatch(stored, sys)?,
        LoadedInstance::PrimeGeneral(sys) => instance::golden_kernel_mismatch(stored, sys)?,
        LoadedInstance::RationalSymmetric(sym) => {
            instance::golden_kernel_mismatch(stored, &sym.lift())?
        }
        LoadedInstance::PrimeSymmetric(sym) => {
            instance::golden_kernel_mismatch(stored, &sym.lift())?
        }
    };
    Ok(match mismatch {
        None => TimedRecord {
            id: "file.kernel_golden".into(),
            verdict: "pass".into(),
            millis: 0.0,
            witness: vec![],
        },
        Some((r, c, stored, fresh)) => TimedRecord {
            id: "file.kernel_golden".into(),
            verdict: "fail".into(),
            millis: 0.0,
            witness: vec![
                ("entry".into(), format!("({r}, {c})")),
                ("stored".into(), stored),
                ("recomputed".into(), fresh),
            ],
        },
    })
}

fn verify_batch(
    params: &GenParams,
    trials: usize,
    sel: SuiteSel,
    primes: usize,
    prime_seed: u64,
) -> Result<ExitCode> {
    if sel == SuiteSel::Symmetric && params.mode != Mode::Symmetric {
        bail!("the symmetric suite needs symmetric instances");
    }
    let field = FieldSpec::parse(&params.field)?;
    let mut master = SplitMix64::new(params.seed);
    let mut all = Vec::new();
    let mut failed_trials = 0usize;
    for t in 0..trials {
        let trial_seed = master.split();
        let records: Vec<TimedRecord> = match (params.mode, &field) {
            (Mode::General, FieldSpec::Rational) => {
                let sys = sample_general(params.n, trial_seed, params.range)?;
                suite::verify_rational_general(&sys, sel, primes, prime_seed ^ t as u64)
            }
            (Mode::Symmetric, FieldSpec::Rational) => {
                let sym = sample_symmetric(params.n, trial_seed, params.range)?;
                suite::verify_rational_symmetric(&sym, sel, primes, prime_seed ^ t as u64)
            }
            (Mode::General, FieldSpec::Prime(f)) => {
                let sys = sample_general_mod(f, params.n, trial_seed, params.range)?;
                suite::run_general(&sys, sel)
            }
            (Mode::Symmetric, FieldSpec::Prime(f)) => {
                let sym = sample_symmetric_mod(f, params.n, trial_seed, params.range)?;
                suite::run_symmetric(&sym, sel)
            }
        };
        let ok = suite::all_passed(&records);
        if !ok {
            failed_trials += 1;
            for r in records.iter().filter(|r| r.verdict == "fail") {
                println!("trial {t}: [fail] {} {:?}", r.id, r.witness);
            }
        }
        all.push((t, records));
    }
    all.sort_by_key(|(t, _)| *t);
    let checks: usize = all.iter().map(|(_, r)| r.len()).sum();
    println!(
        "{trials} trials, {checks} checks, {failed_trials} failing trials (mode {:?}, n={}, suite {:?})",
        params.mode, params.n, sel
    );
    Ok(if failed_trials == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn print_text(path: &str, file: &InstanceFile, records: &[TimedRecord], passed: bool) {
    println!(
        "instance: {path} (mode {:?}, n = {}, field {})",
        file.mode, file.n, file.field
    );
    for r in records {
        println!("[{:>7}] {:<32} {:>9.3} ms", r.verdict, r.id, r.millis);
        if r.verdict != "pass" {
            for (label, value) in &r.witness {
                println!("          {label}: {value}");
            }
        }
    }
    let fails = records.iter().filter(|r| r.verdict == "fail").count();
    let skips = records.iter().filter(|r| r.verdict == "skipped").count();
    println!(
        "aggregate: {} ({} checks, {} failed, {} skipped)",
        if passed { "PASS" } else { "FAIL" },
        records.len(),
        fails,
        skips
    );
}

fn print_json(
    path: String,
    file: &InstanceFile,
    records: &[TimedRecord],
    passed: bool,
) -> Result<()> {
    let report = serde_json::json!({
        "instance": path,
        "mode": file.mode,
        "n": file.n,
        "field": file.field,
        "records": records,
        "aggregate": if passed { "pass" } else { "fail" },
    });
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}
