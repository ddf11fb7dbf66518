//! Built-in deterministic self checks. Each suite prints one line; the run
//! exits nonzero if any suite fails. A hidden fault switch corrupts one
//! computation on purpose so the harness itself can be shown to catch
//! regressions.

use std::fmt::Write as _;

use num_bigint::BigUint;
use pairsuite_core::bounds::kappa_sp;
use pairsuite_core::experiments::{double_counting_check, gv_list_experiment, sample_random_code};
use pairsuite_core::galois::Field;
use pairsuite_core::pair_list_decoder::{decode_radius, list_decode};
use pairsuite_core::pair_metric::{ball_enumerate, ball_size_exact, pair_distance, Word};
use pairsuite_core::poly::Poly;
use pairsuite_core::rs_codes::{
    inject_pair_errors, min_pair_distance_exhaustive, rs_encode, CodeSpec, ErrorPattern,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::args::Fault;

pub struct SelftestOutcome {
    pub stdout: String,
    pub failures: usize,
}

struct Runner {
    fault: Option<Fault>,
    out: String,
    failures: usize,
}

impl Runner {
    fn suite(&mut self, name: &str, body: impl FnOnce(&mut Self) -> Result<String, String>) {
        match body(self) {
            Ok(detail) => {
                writeln!(self.out, "{name}: pass ({detail})").unwrap();
            }
            Err(why) => {
                self.failures += 1;
                writeln!(self.out, "{name}: FAIL ({why})").unwrap();
            }
        }
    }

    /// Ball size as the selftest sees it; the injected fault drops the
    /// full-weight correction term, which the checks below must notice.
    fn ball_size(&self, n: usize, q: u32, r: usize) -> Result<BigUint, String> {
        let mut size = ball_size_exact(n, q, r).map_err(|e| e.to_string())?;
        if self.fault == Some(Fault::BallCorrection) && r >= n {
            size -= BigUint::from(q - 1).pow(n as u32);
        }
        Ok(size)
    }
}

pub fn run(fault: Option<Fault>) -> SelftestOutcome {
    let mut r = Runner { fault, out: String::new(), failures: 0 };

    r.suite("ball-formula-pins", |r| {
        let pins: [(usize, u32, usize, u64); 5] = [
            (2, 2, 2, 4),
            (5, 2, 3, 11),
            (8, 3, 4, 193),
            (7, 8, 6, 197_961),
            (16, 2, 16, 65_536),
        ];
        for (n, q, radius, expect) in pins {
            let got = r.ball_size(n, q, radius)?;
            if got != BigUint::from(expect) {
                return Err(format!("B(n={n}, q={q}, r={radius}) = {got}, expected {expect}"));
            }
        }
        Ok(format!("{} pinned values", pins.len()))
    });

    r.suite("ball-formula-vs-enumeration", |r| {
        let field = Field::from_order(3).map_err(|e| e.to_string())?;
        let center = Word::zero(&field, 6).map_err(|e| e.to_string())?;
        for radius in 0..=6 {
            let formula = r.ball_size(6, 3, radius)?;
            let count = ball_enumerate(&center, radius).map_err(|e| e.to_string())?.count();
            if formula != BigUint::from(count) {
                return Err(format!("radius {radius}: formula {formula}, enumeration {count}"));
            }
        }
        Ok("all radii of (n=6, q=3)".into())
    });

    r.suite("kappa-frozen-values", |_| {
        let cases = [
            (2u32, 0.5f64, 0.884610435722f64),
            (17, 0.5, 0.566422985226),
            (2, 0.25, 0.582831427623),
            (17, 0.3, 0.357785927451),
        ];
        for (q, delta, expect) in cases {
            let got = kappa_sp(q, delta, 1e-9).map_err(|e| e.to_string())?.value;
            if (got - expect).abs() >= 1e-9 {
                return Err(format!("kappa({q}, {delta}) = {got}, expected {expect}"));
            }
        }
        Ok(format!("{} reference points", cases.len()))
    });

    r.suite("rs-min-distance", |_| {
        for (q, n, k, expect) in [(5u32, 4usize, 2usize, 4usize), (8, 7, 3, 6)] {
            let field = Field::from_order(q).map_err(|e| e.to_string())?;
            let spec = CodeSpec::new(&field, n, k).map_err(|e| e.to_string())?;
            let got = min_pair_distance_exhaustive(&spec).map_err(|e| e.to_string())?;
            if got != expect {
                return Err(format!("RS[{n},{k}] over F_{q}: got {got}, expected {expect}"));
            }
        }
        Ok("exhaustive minima match n - k + 2".into())
    });

    r.suite("decoder-roundtrip", |_| {
        let field = Field::from_order(17).map_err(|e| e.to_string())?;
        let spec = CodeSpec::new(&field, 16, 5).map_err(|e| e.to_string())?;
        let radius = decode_radius(16, 5).map_err(|e| e.to_string())?;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..10 {
            let coeffs: Vec<u32> = (0..5).map(|_| rng.gen_range(0..17)).collect();
            let msg = Poly::from_indices(&field, &coeffs).map_err(|e| e.to_string())?;
            let clean = rs_encode(&spec, &msg).map_err(|e| e.to_string())?;
            let budget = 2 + trial % (radius - 1);
            let noisy = inject_pair_errors(&field, &clean, budget, ErrorPattern::Spread, &mut rng)
                .map_err(|e| e.to_string())?;
            let outcome = list_decode(&spec, &noisy, None).map_err(|e| e.to_string())?;
            if !outcome.list.iter().any(|(g, _)| *g == msg) {
                return Err(format!("trial {trial}: lost the message at budget {budget}"));
            }
            for (_, cw) in &outcome.list {
                let d = pair_distance(cw, &noisy).map_err(|e| e.to_string())?;
                if d > radius {
                    return Err(format!("trial {trial}: listed word at distance {d}"));
                }
            }
        }
        Ok("10 corrupted words recovered within radius 6".into())
    });

    r.suite("double-counting", |r| {
        let field = Field::from_order(2).map_err(|e| e.to_string())?;
        let code = sample_random_code(&field, 8, 12, 5).map_err(|e| e.to_string())?;
        let radius = 3;
        let check = double_counting_check(&field, &code, radius).map_err(|e| e.to_string())?;
        // Recompute the codeword side with the (possibly faulted) ball size.
        let expected = BigUint::from(code.len()) * r.ball_size(8, 2, radius)?;
        if !check.consistent || check.per_codeword_sum != expected {
            return Err(format!(
                "sum over centers {} vs |C| * ball {}",
                check.per_center_sum, expected
            ));
        }
        Ok("exact identity on a sampled binary code".into())
    });

    r.suite("experiment-reproducibility", |_| {
        let a = gv_list_experiment(2, 10, 0.3, 0.2, 3, 0).map_err(|e| e.to_string())?;
        let b = gv_list_experiment(2, 10, 0.3, 0.2, 3, 0).map_err(|e| e.to_string())?;
        if a != b {
            return Err("identical seeds produced different reports".into());
        }
        if a.0.list_bound != 19 {
            return Err(format!("list bound {} for epsilon 0.2, expected 19", a.0.list_bound));
        }
        Ok("3 trials repeat bit-for-bit, list bound 19".into())
    });

    let total = 7;
    writeln!(
        r.out,
        "selftest: {}/{} suites passed{}",
        total - r.failures,
        total,
        if r.failures == 0 { "" } else { " - FAILURE" }
    )
    .unwrap();
    SelftestOutcome { stdout: r.out, failures: r.failures }
}
