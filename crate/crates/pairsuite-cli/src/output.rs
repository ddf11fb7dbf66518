//! Typed output records and their JSON/CSV renderings.
//!
//! Every machine-readable report is first packed into one of the structs
//! below (all `deny_unknown_fields`, so a serialized report round-trips
//! through its own schema), then rendered. JSON is pretty-printed with a
//! trailing newline; CSV uses a fixed header row and 12-significant-digit
//! floats. Integers wider than 53 bits (exact ball sizes) travel as decimal
//! strings in both formats.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsRecord {
    pub q: u32,
    pub rows: Vec<BoundsRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsRow {
    pub delta: f64,
    pub gv_pair: f64,
    pub gv_hamming: f64,
    pub singleton: f64,
    pub johnson_tau: f64,
    pub johnson_list_coeff: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BallRecord {
    pub n: usize,
    pub q: u32,
    pub radius: usize,
    /// Exact ball size as a decimal string.
    pub size: String,
    /// Present only when --verify ran an independent enumeration.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub verified: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecodeRecord {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub radius: usize,
    pub completeness_guaranteed: bool,
    pub received: Vec<u32>,
    /// Exact pair-error budget injected when simulating a channel.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub injected_errors: Option<usize>,
    pub list: Vec<DecodeEntry>,
    pub diagnostics: DecodeDiag,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecodeEntry {
    pub message: Vec<u32>,
    pub codeword: Vec<u32>,
    pub pair_distance: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecodeDiag {
    pub aux_degree: usize,
    pub interpolation_nullity: usize,
    pub linearized_solutions: usize,
    pub degree_rejected: usize,
    pub distance_rejected: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentRecord {
    pub q: u32,
    pub n: usize,
    pub delta: f64,
    pub epsilon: f64,
    /// Ball growth exponent at (q, delta).
    pub kappa: f64,
    pub rate: f64,
    pub list_bound: usize,
    pub radius: usize,
    pub code_size: usize,
    pub trials: usize,
    pub master_seed: u64,
    pub centers_per_trial: Option<usize>,
    pub seed_scheme: String,
    pub results: Vec<TrialRow>,
    pub max_list_overall: usize,
    pub fraction_within_bound: f64,
    /// Present only under --timings.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub runtime_seconds: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrialRow {
    pub index: usize,
    pub seed: u64,
    pub max_list: usize,
    pub within_bound: bool,
}

/// Formats a float with up to 12 significant digits, trimming trailing
/// zeros; magnitudes outside [1e-4, 1e12) switch to scientific notation.
pub fn fmt_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs();
    if (1e-4..1e12).contains(&mag) {
        let exp = mag.log10().floor() as i32;
        let prec = (11 - exp).max(0) as usize;
        let s = format!("{x:.prec$}");
        trim_fixed(s)
    } else {
        let s = format!("{x:.11e}");
        trim_scientific(s)
    }
}

fn trim_fixed(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    t.to_string()
}

fn trim_scientific(s: String) -> String {
    // "1.23000000000e-7" -> "1.23e-7"
    let Some((mantissa, exp)) = s.split_once('e') else {
        return s;
    };
    let m = if mantissa.contains('.') {
        mantissa.trim_end_matches('0').trim_end_matches('.')
    } else {
        mantissa
    };
    format!("{m}e{exp}")
}

fn push_row(out: &mut String, cells: &[String]) {
    out.push_str(&cells.join(","));
    out.push('\n');
}

pub fn bounds_csv(r: &BoundsRecord) -> String {
    let mut out = String::new();
    push_row(
        &mut out,
        &["delta", "gv_pair", "gv_hamming", "singleton", "johnson_tau", "johnson_list_coeff"]
            .map(String::from),
    );
    for row in &r.rows {
        push_row(
            &mut out,
            &[
                fmt_sig12(row.delta),
                fmt_sig12(row.gv_pair),
                fmt_sig12(row.gv_hamming),
                fmt_sig12(row.singleton),
                fmt_sig12(row.johnson_tau),
                fmt_sig12(row.johnson_list_coeff),
            ],
        );
    }
    out
}

pub fn ball_csv(r: &BallRecord) -> String {
    let mut out = String::new();
    push_row(&mut out, &["n", "q", "radius", "size", "verified"].map(String::from));
    push_row(
        &mut out,
        &[
            r.n.to_string(),
            r.q.to_string(),
            r.radius.to_string(),
            r.size.clone(),
            r.verified.map(|v| v.to_string()).unwrap_or_default(),
        ],
    );
    out
}

pub fn decode_csv(r: &DecodeRecord) -> String {
    let mut out = String::new();
    push_row(&mut out, &["rank", "message", "codeword", "pair_distance"].map(String::from));
    for (rank, e) in r.list.iter().enumerate() {
        push_row(
            &mut out,
            &[
                rank.to_string(),
                join_symbols(&e.message),
                join_symbols(&e.codeword),
                e.pair_distance.to_string(),
            ],
        );
    }
    out
}

pub fn experiment_csv(r: &ExperimentRecord) -> String {
    let mut out = String::new();
    push_row(&mut out, &["index", "seed", "max_list", "within_bound"].map(String::from));
    for t in &r.results {
        push_row(
            &mut out,
            &[
                t.index.to_string(),
                t.seed.to_string(),
                t.max_list.to_string(),
                t.within_bound.to_string(),
            ],
        );
    }
    out
}

fn join_symbols(v: &[u32]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output records always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig12_covers_the_usual_shapes() {
        assert_eq!(fmt_sig12(0.0), "0");
        assert_eq!(fmt_sig12(1.0), "1");
        assert_eq!(fmt_sig12(0.5), "0.5");
        assert_eq!(fmt_sig12(-2.25), "-2.25");
        assert_eq!(fmt_sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_sig12(1234.5), "1234.5");
        assert_eq!(fmt_sig12(1e-7), "1e-7");
        assert_eq!(fmt_sig12(2.5e13), "2.5e13");
        assert_eq!(fmt_sig12(0.884610435722), "0.884610435722");
    }

    #[test]
    fn json_round_trips_through_the_schema() {
        let rec = BallRecord {
            n: 300,
            q: 2,
            radius: 150,
            size: "123456789012345678901234567890".into(),
            verified: None,
        };
        let json = to_json(&rec);
        let back: BallRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rec);
        // Unknown fields must be rejected: that's the schema check.
        let poisoned = json.replace("\"n\": 300", "\"n\": 300, \"zzz\": 1");
        assert!(serde_json::from_str::<BallRecord>(&poisoned).is_err());
    }

    #[test]
    fn csv_renders_fixed_headers() {
        let rec = ExperimentRecord {
            q: 2,
            n: 12,
            delta: 0.25,
            epsilon: 0.15,
            kappa: 0.58,
            rate: 0.27,
            list_bound: 26,
            radius: 3,
            code_size: 10,
            trials: 1,
            master_seed: 0,
            centers_per_trial: None,
            seed_scheme: "scheme".into(),
            results: vec![TrialRow { index: 0, seed: 9, max_list: 2, within_bound: true }],
            max_list_overall: 2,
            fraction_within_bound: 1.0,
            runtime_seconds: None,
        };
        let csv = experiment_csv(&rec);
        assert_eq!(csv, "index,seed,max_list,within_bound\n0,9,2,true\n");
    }
}
