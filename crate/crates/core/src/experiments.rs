//! Parameter tables, the optimality-frequency experiment and rate tables.

use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{Beta, ContinuousCDF};

use crate::code::{Code, CodeSpec};
use crate::distance::{self, Engine, Limits};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::points::{sample_plane, PlanePoints};
use crate::polyspace::binomial;

/// Something that renders as a table with a header row.
pub trait Tabular {
    fn headers(&self) -> Vec<String>;
    fn cells(&self) -> Vec<Vec<String>>;

    fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(self.headers()).expect("in-memory write");
        for row in self.cells() {
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }

    fn to_text(&self) -> String {
        let headers = self.headers();
        let cells = self.cells();
        let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
        for row in &cells {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |row: &[String]| {
            row.iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        };
        let mut out = line(&headers);
        out.push('\n');
        for row in &cells {
            out.push_str(&line(row));
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VzRow {
    pub z: usize,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub d_opt: usize,
    pub optimal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VzTable {
    pub q: u64,
    pub b: usize,
    pub r: usize,
    pub rows: Vec<VzRow>,
}

impl Tabular for VzTable {
    fn headers(&self) -> Vec<String> {
        ["z", "[n, k, d]", "d_z", "d_opt", "optimal"].map(String::from).to_vec()
    }

    fn cells(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                vec![
                    r.z.to_string(),
                    format!("[{}, {}, {}]_{}", r.n, r.k, r.d, self.q),
                    r.d.to_string(),
                    r.d_opt.to_string(),
                    r.optimal.to_string(),
                ]
            })
            .collect()
    }
}

/// `(r+1)(z+1) + 2`.
pub fn d_opt(r: usize, z: usize) -> usize {
    (r + 1) * (z + 1) + 2
}

/// Builds the code for each `z` on the same points and computes its distance.
pub fn vz_table(
    field: PrimeField,
    r: usize,
    points: &PlanePoints,
    zs: impl IntoIterator<Item = usize>,
    engine: Engine,
    limits: &Limits,
) -> Result<VzTable> {
    let mut rows = Vec::new();
    for z in zs {
        let code = Code::build(CodeSpec::plane(field, r, z, points.clone()))?;
        let rep = distance::min_distance(&code, engine, limits)?;
        rows.push(VzRow { z, n: code.n(), k: code.k(), d: rep.d, d_opt: d_opt(r, z), optimal: rep.optimal });
    }
    Ok(VzTable { q: field.order(), b: points.b(), r, rows })
}

/// SplitMix64 output for `state`; used to derive per-trial seeds.
pub fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `counter` under master seed `seed`.
pub fn trial_seed(seed: u64, counter: u64) -> u64 {
    splitmix64(seed ^ splitmix64(counter))
}

/// Two-sided Clopper-Pearson interval for `successes` out of `trials`.
pub fn clopper_pearson(successes: usize, trials: usize, confidence: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let alpha = 1.0 - confidence;
    let (x, n) = (successes as f64, trials as f64);
    let lo = if successes == 0 {
        0.0
    } else {
        Beta::new(x, n - x + 1.0).expect("positive shape").inverse_cdf(alpha / 2.0)
    };
    let hi = if successes == trials {
        1.0
    } else {
        Beta::new(x + 1.0, n - x).expect("positive shape").inverse_cdf(1.0 - alpha / 2.0)
    };
    (lo, hi)
}

#[derive(Clone, Debug, Serialize)]
pub struct McRow {
    pub q: u64,
    pub trials: usize,
    pub optimal: usize,
    /// `None` when there were no trials.
    pub fraction: Option<f64>,
    pub ci_low: f64,
    pub ci_high: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct McReport {
    pub b: usize,
    pub r: usize,
    pub seed: u64,
    pub confidence: f64,
    pub rows: Vec<McRow>,
}

impl Tabular for McReport {
    fn headers(&self) -> Vec<String> {
        ["q", "trials", "optimal", "fraction", "ci_low", "ci_high"].map(String::from).to_vec()
    }

    fn cells(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                vec![
                    r.q.to_string(),
                    r.trials.to_string(),
                    r.optimal.to_string(),
                    r.fraction.map_or("-".into(), |f| format!("{f:.4}")),
                    format!("{:.4}", r.ci_low),
                    format!("{:.4}", r.ci_high),
                ]
            })
            .collect()
    }
}

/// Whether a random plane code reaches `d = r + 3`.
///
/// Looks for a word of weight at most `r + 2` first. Without one the
/// distance is `r + 3`, since a word of that weight always exists. With
/// one, the exact distance is computed and returned as well.
pub fn trial_is_optimal(code: &Code, node_budget: u64) -> Result<(bool, usize)> {
    let r = code.r();
    match distance::find_weight_at_most(code, r + 2, node_budget)? {
        None => {
            let w = distance::weight_witness_r_plus_3(code)?.weight();
            debug_assert_eq!(w, r + 3);
            Ok((true, w))
        }
        Some(_) => {
            let rep = distance::min_distance_structured(code, node_budget)?;
            Ok((false, rep.d))
        }
    }
}

pub const CONFIDENCE: f64 = 0.95;

/// For each `q`, the fraction of `trials` random plane codes attaining `d = r + 3`.
pub fn optimality_probability(q_list: &[u64], b: usize, r: usize, trials: usize, seed: u64) -> Result<McReport> {
    let mut rows = Vec::new();
    let mut counter = 0u64;
    for &q in q_list {
        let field = PrimeField::new(q)?;
        if b * (r + 1) > q as usize {
            return Err(Error::CapacityExceeded(format!("b(r+1) = {} exceeds q = {q}", b * (r + 1))));
        }
        let base = counter;
        counter += trials as u64;
        let verdicts = (0..trials as u64)
            .into_par_iter()
            .map(|i| {
                let pts = sample_plane(&field, b, r, trial_seed(seed, base + i))?;
                let code = Code::build(CodeSpec::plane(field, r, 0, pts))?;
                Ok(trial_is_optimal(&code, Limits::default().node_budget)?.0)
            })
            .collect::<Result<Vec<bool>>>()?;
        let optimal = verdicts.into_iter().filter(|&v| v).count();
        let (ci_low, ci_high) = clopper_pearson(optimal, trials, CONFIDENCE);
        let fraction = (trials > 0).then(|| optimal as f64 / trials as f64);
        rows.push(McRow { q, trials, optimal, fraction, ci_low, ci_high });
    }
    Ok(McReport { b, r, seed, confidence: CONFIDENCE, rows })
}

#[derive(Clone, Debug, Serialize)]
pub struct AsymRow {
    pub m: usize,
    pub r: usize,
    pub n: usize,
    pub k: usize,
    pub d_bound: usize,
    pub k_ratio: f64,
    pub d_ratio: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct AsymReport {
    pub b: usize,
    pub t: usize,
    pub alpha: usize,
    pub beta: usize,
    /// Limit of `k/n` as `m` grows: `(α+1)/(bt)`.
    pub k_limit: f64,
    /// Limit of the distance bound over `n`: `(b-α)(t-1)/(bt)`.
    pub d_limit: f64,
    pub rows: Vec<AsymRow>,
}

impl Tabular for AsymReport {
    fn headers(&self) -> Vec<String> {
        ["m", "r", "n", "k", "d_bound", "k/n", "d_bound/n"].map(String::from).to_vec()
    }

    fn cells(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                vec![
                    r.m.to_string(),
                    r.r.to_string(),
                    r.n.to_string(),
                    r.k.to_string(),
                    r.d_bound.to_string(),
                    format!("{:.6}", r.k_ratio),
                    format!("{:.6}", r.d_ratio),
                ]
            })
            .collect()
    }
}

/// Bundle code parameters `n = b(tr+1)`, `k = (α+1)r`, `d ≥ (b-α)((t-1)r+2)`
/// with `r = C(β+m, β)`, for each `m`.
pub fn asymptotic_rates(
    b: usize,
    t: usize,
    alpha: usize,
    beta: usize,
    ms: impl IntoIterator<Item = usize>,
) -> Result<AsymReport> {
    if b < alpha + 1 {
        return Err(Error::InvalidParams(format!("need b >= alpha + 1, got b = {b}, alpha = {alpha}")));
    }
    if t < 1 {
        return Err(Error::InvalidParams("availability t must be at least 1".into()));
    }
    let mut rows = Vec::new();
    for m in ms {
        if m < 1 {
            return Err(Error::InvalidParams("fiber dimension m must be at least 1".into()));
        }
        let r = binomial(beta + m, beta);
        let n = b * (t * r + 1);
        let k = (alpha + 1) * r;
        let d_bound = (b - alpha) * ((t - 1) * r + 2);
        rows.push(AsymRow { m, r, n, k, d_bound, k_ratio: k as f64 / n as f64, d_ratio: d_bound as f64 / n as f64 });
    }
    let bt = (b * t) as f64;
    Ok(AsymReport {
        b,
        t,
        alpha,
        beta,
        k_limit: (alpha + 1) as f64 / bt,
        d_limit: ((b - alpha) * (t - 1)) as f64 / bt,
        rows,
    })
}
