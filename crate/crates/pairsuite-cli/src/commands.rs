//! Implementations of the subcommands: each returns the rendered report
//! (stdout payload) or a [`CliError`] carrying the process exit code.

use pairsuite_core::bounds::{bound_report, BoundsError};
use pairsuite_core::experiments::{
    self, assemble_report, experiment_trial, ExperimentError, ExperimentParams,
};
use pairsuite_core::galois::Field;
use pairsuite_core::pair_list_decoder::{decode_radius, list_decode, DecoderError};
use pairsuite_core::pair_metric::{ball_enumerate, ball_size_exact, PairMetricError, Word};
use pairsuite_core::poly::Poly;
use pairsuite_core::rs_codes::{inject_pair_errors, rs_encode, CodeSpec, ErrorPattern, RsError};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::args::{self, BallArgs, BoundsArgs, DecodeArgs, ExperimentArgs, Format};
use crate::output;

/// Exit codes: 1 internal/self-check failure, 2 usage (clap), 3 resource
/// guard, 4 domain error.
pub const EXIT_GUARD: i32 = 3;
pub const EXIT_DOMAIN: i32 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn domain(message: impl Into<String>) -> CliError {
        CliError { code: EXIT_DOMAIN, message: message.into() }
    }

    pub fn guard(message: impl Into<String>) -> CliError {
        CliError { code: EXIT_GUARD, message: message.into() }
    }
}

impl From<BoundsError> for CliError {
    fn from(e: BoundsError) -> CliError {
        CliError::domain(e.to_string())
    }
}

impl From<PairMetricError> for CliError {
    fn from(e: PairMetricError) -> CliError {
        match e {
            PairMetricError::SearchSpaceTooLarge => CliError::guard(e.to_string()),
            _ => CliError::domain(e.to_string()),
        }
    }
}

impl From<RsError> for CliError {
    fn from(e: RsError) -> CliError {
        match e {
            RsError::SearchSpaceTooLarge => CliError::guard(e.to_string()),
            _ => CliError::domain(e.to_string()),
        }
    }
}

impl From<DecoderError> for CliError {
    fn from(e: DecoderError) -> CliError {
        CliError::domain(e.to_string())
    }
}

impl From<ExperimentError> for CliError {
    fn from(e: ExperimentError) -> CliError {
        match e {
            ExperimentError::SearchSpaceTooLarge => CliError::guard(e.to_string()),
            _ => CliError::domain(e.to_string()),
        }
    }
}

fn field_for(q: u32) -> Result<Field, CliError> {
    Field::from_order(q).map_err(|e| CliError::domain(format!("cannot build F_{q}: {e}")))
}

pub fn bounds(a: &BoundsArgs, format: Format) -> Result<String, CliError> {
    let deltas: Vec<f64> = match &a.deltas {
        Some(ds) => ds.clone(),
        None => {
            if a.delta_step.is_nan() || a.delta_step <= 0.0 {
                return Err(CliError::domain("delta step must be positive"));
            }
            if a.delta_max < a.delta_min {
                return Err(CliError::domain("delta range is empty"));
            }
            let mut ds = Vec::new();
            let mut d = a.delta_min;
            while d <= a.delta_max + 1e-12 {
                ds.push(d.min(a.delta_max));
                d += a.delta_step;
            }
            ds
        }
    };
    let report = bound_report(a.q, &deltas)?;
    let rec = output::BoundsRecord {
        q: report.q,
        rows: report
            .rows
            .iter()
            .map(|r| output::BoundsRow {
                delta: r.delta,
                gv_pair: r.gv_pair,
                gv_hamming: r.gv_hamming,
                singleton: r.singleton,
                johnson_tau: r.johnson_tau,
                johnson_list_coeff: r.johnson_list_coeff,
            })
            .collect(),
    };
    Ok(match format {
        Format::Json => output::to_json(&rec),
        Format::Csv => output::bounds_csv(&rec),
    })
}

pub fn ball(a: &BallArgs, format: Format) -> Result<String, CliError> {
    let radius = match (a.radius, a.delta) {
        (Some(r), None) => r,
        (None, Some(d)) => {
            if !(0.0..=1.0).contains(&d) {
                return Err(CliError::domain("delta must lie in [0, 1]"));
            }
            (d * a.n as f64 + 1e-9).floor() as usize
        }
        (None, None) => return Err(CliError::domain("one of --radius or --delta is required")),
        (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
    };
    let size = ball_size_exact(a.n, a.q, radius)?;
    let verified = if a.verify {
        let field = field_for(a.q)?;
        let center = Word::zero(&field, a.n)?;
        let count = ball_enumerate(&center, radius)?.count() as u64;
        Some(num_bigint::BigUint::from(count) == size)
    } else {
        None
    };
    let rec = output::BallRecord { n: a.n, q: a.q, radius, size: size.to_string(), verified };
    if verified == Some(false) {
        // A formula/enumeration mismatch is a library defect, not user error.
        return Err(CliError {
            code: 1,
            message: format!(
                "ball verification FAILED: formula {} != enumeration at n={}, q={}, r={}",
                rec.size, a.n, a.q, radius
            ),
        });
    }
    Ok(match format {
        Format::Json => output::to_json(&rec),
        Format::Csv => output::ball_csv(&rec),
    })
}

pub fn decode(a: &DecodeArgs, format: Format) -> Result<String, CliError> {
    let field = field_for(a.q)?;
    let spec = CodeSpec::new(&field, a.n, a.k)?;
    let default_radius = decode_radius(a.n, a.k);
    let radius = match a.radius {
        None => None,
        Some(r) => {
            let guaranteed = default_radius.as_ref().copied().unwrap_or(0);
            if r > guaranteed && !a.force {
                return Err(CliError::domain(format!(
                    "radius {r} exceeds the guaranteed radius {guaranteed}; pass --force to \
                     decode anyway (the list stays exact but may be incomplete)"
                )));
            }
            Some(r)
        }
    };

    let (received, injected_errors) = match (&a.received, &a.message) {
        (Some(r), None) => {
            let symbols = args::parse_symbols(r).map_err(CliError::domain)?;
            (Word::from_indices(&field, &symbols)?, None)
        }
        (None, Some(m)) => {
            let coeffs = args::parse_symbols(m).map_err(CliError::domain)?;
            if coeffs.len() > a.k {
                return Err(CliError::domain(format!(
                    "message has {} coefficients but k = {}",
                    coeffs.len(),
                    a.k
                )));
            }
            let msg = Poly::from_indices(&field, &coeffs)
                .map_err(|e| CliError::domain(e.to_string()))?;
            let clean = rs_encode(&spec, &msg)?;
            let budget = a.errors.expect("clap requires --errors with --message");
            let seed = args::parse_seed(&a.seed).map_err(CliError::domain)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let pattern = if a.burst { ErrorPattern::Burst } else { ErrorPattern::Spread };
            (inject_pair_errors(&field, &clean, budget, pattern, &mut rng)?, Some(budget))
        }
        _ => {
            return Err(CliError::domain(
                "provide either --received or --message with --errors",
            ))
        }
    };

    let outcome = list_decode(&spec, &received, radius)?;
    let rec = output::DecodeRecord {
        q: a.q,
        n: a.n,
        k: a.k,
        radius: outcome.diagnostics.radius,
        completeness_guaranteed: outcome.diagnostics.completeness_guaranteed,
        received: received.indices(),
        injected_errors,
        list: outcome
            .list
            .iter()
            .map(|(msg, cw)| output::DecodeEntry {
                message: msg.coeffs().iter().map(|c| c.index()).collect(),
                codeword: cw.indices(),
                pair_distance: pairsuite_core::pair_metric::pair_distance(cw, &received)
                    .expect("codeword and received word share field and length"),
            })
            .collect(),
        diagnostics: output::DecodeDiag {
            aux_degree: outcome.diagnostics.aux_degree,
            interpolation_nullity: outcome.diagnostics.interpolation_nullity,
            linearized_solutions: outcome.diagnostics.linearized_solutions,
            degree_rejected: outcome.diagnostics.degree_rejected,
            distance_rejected: outcome.diagnostics.distance_rejected,
        },
    };
    Ok(match format {
        Format::Json => output::to_json(&rec),
        Format::Csv => output::decode_csv(&rec),
    })
}

/// Thread pool sized from PAIRSUITE_THREADS (unset or 0 = rayon's default).
fn experiment_pool() -> Result<rayon::ThreadPool, CliError> {
    let threads = match std::env::var("PAIRSUITE_THREADS") {
        Err(_) => 0,
        Ok(v) => v.parse::<usize>().map_err(|_| {
            CliError::domain(format!(
                "PAIRSUITE_THREADS must be a non-negative integer, got {v:?}"
            ))
        })?,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::domain(format!("cannot build thread pool: {e}")))
}

pub fn experiment(a: &ExperimentArgs, format: Format) -> Result<String, CliError> {
    let seed = args::parse_seed(&a.seed).map_err(CliError::domain)?;
    let start = a.timings.then(std::time::Instant::now);
    let design = experiments::gv_design(a.q, a.n, a.delta, a.epsilon)?;
    let params = ExperimentParams {
        q: a.q,
        n: a.n,
        radius: design.radius,
        rate: design.rate,
        code_size: design.code_size,
        trials: a.trials,
        list_bound: design.list_bound,
        master_seed: seed,
        centers_per_trial: a.centers,
    };
    let field = field_for(a.q)?;
    let pool = experiment_pool()?;
    let trials: Result<Vec<_>, ExperimentError> = pool.install(|| {
        (0..params.trials)
            .into_par_iter()
            .map(|i| experiment_trial(&field, &params, i))
            .collect()
    });
    let mut report = assemble_report(params, trials?);
    report.runtime_seconds = start.map(|t| t.elapsed().as_secs_f64());

    let rec = output::ExperimentRecord {
        q: report.params.q,
        n: report.params.n,
        delta: a.delta,
        epsilon: a.epsilon,
        kappa: design.kappa,
        rate: report.params.rate,
        list_bound: report.params.list_bound,
        radius: report.params.radius,
        code_size: report.params.code_size,
        trials: report.params.trials,
        master_seed: report.params.master_seed,
        centers_per_trial: report.params.centers_per_trial,
        seed_scheme: report.seed_scheme.clone(),
        results: report
            .trials
            .iter()
            .map(|t| output::TrialRow {
                index: t.index,
                seed: t.seed,
                max_list: t.max_list,
                within_bound: t.within_bound,
            })
            .collect(),
        max_list_overall: report.max_list_overall,
        fraction_within_bound: report.fraction_within_bound,
        runtime_seconds: report.runtime_seconds,
    };
    Ok(match format {
        Format::Json => output::to_json(&rec),
        Format::Csv => output::experiment_csv(&rec),
    })
}
