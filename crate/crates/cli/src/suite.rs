//! Suite execution: which identity checks run for an instance, with
//! per-check timing, plus the prime-field re-runs for rational instances.

use std::time::Instant;

use serde::Serialize;

use kerndet_core::minors::{adjugate_minor_check, jacobi_check, sylvester_bordered};
use kerndet_core::okada::{
    big_border_representations, okada_matrix, verify_cominor_identities, verify_okada,
};
use kerndet_core::{
    det_exact, PrimeSampler, Rational, Report, Scalar, SextupleSystem, SymmetricSystem,
    SystemError, Verdict,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum SuiteSel {
    Kernel,
    Okada,
    Minors,
    Symmetric,
    All,
}

impl SuiteSel {
    fn wants(&self, other: SuiteSel) -> bool {
        *self == SuiteSel::All || *self == other
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TimedRecord {
    pub id: String,
    pub verdict: String,
    pub millis: f64,
    pub witness: Vec<(String, String)>,
}

fn absorb(records: &mut Vec<TimedRecord>, report: Report, millis: f64) {
    for r in report.records {
        records.push(TimedRecord {
            id: r.id,
            verdict: r.verdict.to_string(),
            millis,
            witness: r.witness,
        });
    }
}

fn timed(records: &mut Vec<TimedRecord>, f: impl FnOnce() -> Report) {
    let start = Instant::now();
    let report = f();
    let millis = start.elapsed().as_secs_f64() * 1e3;
    absorb(records, report, millis);
}

pub fn all_passed(records: &[TimedRecord]) -> bool {
    records.iter().all(|r| r.verdict != "fail")
}

/// Verdict skeleton used to compare runs across fields.
pub fn verdict_vector(records: &[TimedRecord]) -> Vec<(String, String)> {
    records
        .iter()
        .map(|r| (r.id.clone(), r.verdict.clone()))
        .collect()
}

/// The kernel/okada/minors checks for a general system.
pub fn run_general<T: Scalar>(sys: &SextupleSystem<T>, sel: SuiteSel) -> Vec<TimedRecord> {
    let mut records = Vec::new();
    if sel.wants(SuiteSel::Kernel) {
        timed(&mut records, || sys.verify_main_theorem());
        timed(&mut records, || bordering_report(sys));
    }
    if sel.wants(SuiteSel::Okada) {
        timed(&mut records, || verify_okada(sys));
        timed(&mut records, || verify_cominor_identities(sys));
        timed(&mut records, || match big_border_representations(sys) {
            Ok(report) => report,
            Err(SystemError::DegenerateMinor) => {
                let mut r = Report::new();
                r.push_skipped("okada.bigrep", "D_n vanishes");
                r
            }
            Err(e) => panic!("unexpected error: {e}"),
        });
    }
    if sel.wants(SuiteSel::Minors) {
        timed(&mut records, || minors_on_moment_matrix(sys));
    }
    records
}

fn bordering_report<T: Scalar>(sys: &SextupleSystem<T>) -> Report {
    let mut report = Report::new();
    match sys.det_by_bordering() {
        Ok(det) => {
            let full = det_exact(&sys.kernel_matrix(sys.size()).expect("in range"))
                .expect("square by construction");
            report.push_eq("kernel.bordering_recursion", &det, &full);
        }
        Err(SystemError::DegenerateChain { level }) => {
            report.push_skipped(
                "kernel.bordering_recursion",
                &format!("fallback: leading minor D_{level} vanishes"),
            );
        }
        Err(e) => panic!("unexpected error: {e}"),
    }
    report
}

/// Jacobi/Sylvester/adjugate exercised on the moment matrix at the
/// distinguished rows and columns. Needs n >= 1 (the matrix must be larger
/// than 2x2).
fn minors_on_moment_matrix<T: Scalar>(sys: &SextupleSystem<T>) -> Report {
    let mut report = Report::new();
    if sys.n() == 0 {
        report.push_skipped("minors.jacobi", "moment matrix is 2x2");
        report.push_skipped("minors.sylvester", "moment matrix is 2x2");
        report.push_skipped("minors.adjugate", "moment matrix is 2x2");
        return report;
    }
    let layout = okada_matrix(sys);
    let m = layout.matrix();
    let rows = (layout.pos_ku().0, layout.pos_kv().0);
    let cols = (layout.pos_ku().1, layout.pos_ly().1);
    report.merge(jacobi_check(m, rows, cols).expect("moment matrix is large enough"));
    report.merge(sylvester_bordered(m, 2).expect("moment matrix is large enough"));
    report.merge(adjugate_minor_check(m, 2).expect("moment matrix is large enough"));
    report
}

/// Symmetric checks plus the general ones on the lifted system.
pub fn run_symmetric<T: Scalar>(sym: &SymmetricSystem<T>, sel: SuiteSel) -> Vec<TimedRecord> {
    let mut records = Vec::new();
    if sel.wants(SuiteSel::Symmetric) {
        timed(&mut records, || sym.verify_reflection());
        timed(&mut records, || sym.verify_factorization());
        timed(&mut records, || sym.verify_alternating_factorizations());
        timed(&mut records, || {
            let mut inner = sym.lift().verify_main_theorem();
            for r in &mut inner.records {
                r.id = format!("symmetric.lifted_{}", r.id.trim_start_matches("kernel."));
            }
            inner
        });
    }
    if sel != SuiteSel::Symmetric {
        records.extend(run_general(&sym.lift(), sel));
    }
    records
}

/// Re-run the suite over `trials` random 62-bit primes and compare verdict
/// vectors with the rational run. Primes that fail to reduce the instance or
/// that introduce a degeneracy absent over the rationals are resampled
/// (Las Vegas); a genuine verdict flip is reported as a failure.
pub fn prime_trials<R, P>(
    base: &[TimedRecord],
    trials: usize,
    prime_seed: u64,
    project: impl Fn(u64) -> Option<R>,
    run: P,
) -> Vec<TimedRecord>
where
    P: Fn(&R) -> Vec<TimedRecord>,
{
    let mut sampler = PrimeSampler::new(prime_seed);
    let base_verdicts = verdict_vector(base);
    let mut records = Vec::new();
    let mut done = 0;
    let mut attempts = 0;
    while done < trials && attempts < 64 * trials.max(1) {
        attempts += 1;
        let p = sampler.next_prime();
        let projected = match project(p) {
            Some(x) => x,
            None => continue,
        };
        let start = Instant::now();
        let mod_records = run(&projected);
        let millis = start.elapsed().as_secs_f64() * 1e3;
        let mod_verdicts = verdict_vector(&mod_records);
        if mod_verdicts == base_verdicts {
            records.push(TimedRecord {
                id: format!("modp.trial{done}"),
                verdict: Verdict::Pass.to_string(),
                millis,
                witness: vec![("prime".into(), p.to_string())],
            });
            done += 1;
            continue;
        }
        // A degeneracy introduced by this particular prime (pass -> skipped)
        // is a bad prime, not a failed identity.
        let only_degenerate = base_verdicts.len() == mod_verdicts.len()
            && base_verdicts.iter().zip(&mod_verdicts).all(|((ia, va), (ib, vb))| {
                ia == ib && (va == vb || (va == "pass" && vb == "skipped"))
            });
        if only_degenerate {
            continue;
        }
        let first_diff = base_verdicts
            .iter()
            .zip(&mod_verdicts)
            .find(|(a, b)| a != b)
            .map(|((id, va), (_, vb))| (id.clone(), format!("{va} over Q vs {vb} mod {p}")))
            .unwrap_or_else(|| ("record count".into(), "shape mismatch".into()));
        records.push(TimedRecord {
            id: format!("modp.trial{done}"),
            verdict: Verdict::Fail.to_string(),
            millis,
            witness: vec![("prime".into(), p.to_string()), first_diff],
        });
        done += 1;
    }
    if done < trials {
        records.push(TimedRecord {
            id: "modp.trials".into(),
            verdict: Verdict::Fail.to_string(),
            millis: 0.0,
            witness: vec![(
                "reason".into(),
                format!("only {done}/{trials} usable primes in {attempts} attempts"),
            )],
        });
    }
    records
}

/// Full verification of a rational general instance, including prime trials.
pub fn verify_rational_general(
    sys: &SextupleSystem<Rational>,
    sel: SuiteSel,
    primes: usize,
    prime_seed: u64,
) -> Vec<TimedRecord> {
    let mut records = run_general(sys, sel);
    if primes > 0 {
        let trials = prime_trials(
            &records,
            primes,
            prime_seed,
            |p| {
                let field = kerndet_core::PrimeField::new(p).ok()?;
                sys.project(&field).ok()
            },
            |projected| run_general(projected, sel),
        );
        records.extend(trials);
    }
    records
}

/// Full verification of a rational symmetric instance, including prime
/// trials.
pub fn verify_rational_symmetric(
    sym: &SymmetricSystem<Rational>,
    sel: SuiteSel,
    primes: usize,
    prime_seed: u64,
) -> Vec<TimedRecord> {
    let mut records = run_symmetric(sym, sel);
    if primes > 0 {
        let trials = prime_trials(
            &records,
            primes,
            prime_seed,
            |p| {
                let field = kerndet_core::PrimeField::new(p).ok()?;
                sym.project(&field).ok()
            },
            |projected| run_symmetric(projected, sel),
        );
        records.extend(trials);
    }
    records
}
