//! Count tables, box-dimension estimates and the growth diagnostic.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

use super::space::SpaceSpec;

/// How a count was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Recursive,
    Oracle,
    ClosedForm,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Recursive => "recursive",
            Method::Oracle => "oracle",
            Method::ClosedForm => "closed-form",
        }
    }
}

fn decimal<S: serde::Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_str_radix(10))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub m: usize,
    #[serde(serialize_with = "decimal")]
    pub count: BigUint,
    pub method: Method,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountTable {
    pub space: String,
    pub rows: Vec<CountRow>,
}

impl CountTable {
    pub fn new(space: impl Into<String>, rows: Vec<CountRow>) -> Result<Self> {
        for r in &rows {
            if r.count.is_zero() {
                return Err(Error::Invariant(format!("zero count at m = {}", r.m)));
            }
        }
        Ok(CountTable { space: space.into(), rows })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("count table serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,count,method\n");
        for r in &self.rows {
            writeln!(out, "{},{},{}", r.m, r.count, r.method.as_str()).unwrap();
        }
        out
    }
}

/// Known exact counts of radius-`m` patterns, when a formula exists.
///
/// - full `F_n`: `R(m) - R(m-1)` with `R(m) = (1 + S(m-1))^{2n}` the number of
///   subtrees of the radius-`m` ball through `e`, and `S(d) = (1 + S(d-1))^{2n-1}`,
///   `S(0) = 1` the number of rooted subtrees hanging below a non-root vertex.
/// - valence 3: `4 · 3^{3(2^{m-1} - 1)}`.
/// - shift image on `k` symbols: `k^{2m}`.
pub fn closed_form_count(spec: &SpaceSpec, m: usize) -> Option<BigUint> {
    if m == 0 {
        return Some(BigUint::one());
    }
    match spec {
        SpaceSpec::Full { n } => {
            let n = *n as u32;
            let below = |d: usize| -> BigUint {
                let mut s = BigUint::one();
                for _ in 0..d {
                    s = (s + 1u32).pow(2 * n - 1);
                }
                s
            };
            let upto = |r: usize| -> BigUint {
                if r == 0 {
                    BigUint::one()
                } else {
                    (below(r - 1) + 1u32).pow(2 * n)
                }
            };
            Some(upto(m) - upto(m - 1))
        }
        SpaceSpec::Valence3 => {
            let e = 3 * ((1u64 << (m - 1)) - 1);
            Some(BigUint::from(4u32) * BigUint::from(3u32).pow(u32::try_from(e).ok()?))
        }
        SpaceSpec::Shift { alphabet, .. } => Some(BigUint::from(*alphabet).pow(u32::try_from(2 * m).ok()?)),
        SpaceSpec::Orbit { .. } => None,
    }
}

/// Natural log of an exact positive integer, from its bit length and top 64
/// bits. Deterministic: the same integer always gives the same float.
pub fn ln_biguint(x: &BigUint) -> f64 {
    assert!(!x.is_zero(), "log of zero");
    let bits = x.bits();
    if bits <= 64 {
        return (x.iter_u64_digits().next().unwrap_or(0) as f64).ln();
    }
    let shift = bits - 64;
    let top: BigUint = x >> shift;
    let mantissa = top.iter_u64_digits().next().unwrap_or(0) as f64;
    mantissa.ln() + shift as f64 * std::f64::consts::LN_2
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EstimateRow {
    pub m: usize,
    pub count: String,
    pub ln_count: f64,
    /// `ln(count) / m`; absent at `m = 0`.
    pub value: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DimensionEstimate {
    pub space: String,
    pub rows: Vec<EstimateRow>,
    /// Min and max of the per-`m` values over the last half of the table.
    pub liminf: f64,
    pub limsup: f64,
    /// Least-squares fit `ln(count) ≈ slope·m + intercept`.
    pub slope: f64,
    pub intercept: f64,
    /// Root mean square of the fit residuals.
    pub residual: f64,
}

pub fn box_dim_estimates(table: &CountTable) -> Result<DimensionEstimate> {
    if table.rows.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "dimension estimate needs at least 2 rows, table has {}",
            table.rows.len()
        )));
    }
    let rows: Vec<EstimateRow> = table
        .rows
        .iter()
        .map(|r| {
            let ln_count = ln_biguint(&r.count);
            EstimateRow {
                m: r.m,
                count: r.count.to_string(),
                ln_count,
                value: (r.m > 0).then(|| ln_count / r.m as f64),
            }
        })
        .collect();

    let values: Vec<f64> = rows.iter().filter_map(|r| r.value).collect();
    let tail = &values[values.len() / 2..];
    let liminf = tail.iter().copied().fold(f64::INFINITY, f64::min);
    let limsup = tail.iter().copied().fold(f64::NEG_INFINITY, f64::max);

    let (slope, intercept, residual) = least_squares(rows.iter().map(|r| (r.m as f64, r.ln_count)).collect())?;
    Ok(DimensionEstimate { space: table.space.clone(), rows, liminf, limsup, slope, intercept, residual })
}

fn least_squares(points: Vec<(f64, f64)>) -> Result<(f64, f64, f64)> {
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidArgument("regression needs at least two distinct m".into()));
    }
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = points.iter().map(|p| (p.1 - slope * p.0 - intercept).powi(2)).sum();
    Ok((slope, intercept, (sse / k).sqrt()))
}

impl DimensionEstimate {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("estimate serializes")
    }

    /// `m,count,estimate` rows followed by a summary block.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,count,estimate\n");
        for r in &self.rows {
            match r.value {
                Some(v) => writeln!(out, "{},{},{:.12}", r.m, r.count, v).unwrap(),
                None => writeln!(out, "{},{},", r.m, r.count).unwrap(),
            }
        }
        writeln!(out, "# slope,{:.12}", self.slope).unwrap();
        writeln!(out, "# intercept,{:.12}", self.intercept).unwrap();
        writeln!(out, "# residual,{:.12}", self.residual).unwrap();
        writeln!(out, "# liminf,{:.12}", self.liminf).unwrap();
        writeln!(out, "# limsup,{:.12}", self.limsup).unwrap();
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthLevel {
    pub m: usize,
    pub count: String,
    pub ln_count: f64,
    /// `m·α`, the exponent of the bound being tested.
    pub bound: f64,
    /// `count >= e^{mα}`.
    pub fails: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthDiagnostic {
    pub space: String,
    /// `None` encodes `α = +∞`.
    pub alpha: Option<f64>,
    pub levels: Vec<GrowthLevel>,
    /// First `m` with `N_m >= e^{mα}`.
    pub first_failure: Option<usize>,
    /// `ln(N_{m+1} / N_m)` for consecutive rows.
    pub log_ratios: Vec<f64>,
    pub strictly_increasing: bool,
}

/// Tests the bound `N_m < e^{mα}` level by level. `α = +∞` never fails.
pub fn growth_diagnostic(table: &CountTable, alpha: f64) -> Result<GrowthDiagnostic> {
    if alpha.is_nan() || alpha < 0.0 {
        return Err(Error::InvalidArgument(format!("alpha must be >= 0, got {alpha}")));
    }
    let levels: Vec<GrowthLevel> = table
        .rows
        .iter()
        .map(|r| {
            let ln_count = ln_biguint(&r.count);
            let bound = r.m as f64 * alpha;
            GrowthLevel { m: r.m, count: r.count.to_string(), ln_count, bound, fails: ln_count >= bound }
        })
        .collect();
    let first_failure = levels.iter().find(|l| l.fails).map(|l| l.m);
    let log_ratios: Vec<f64> = levels.windows(2).map(|w| w[1].ln_count - w[0].ln_count).collect();
    let strictly_increasing = log_ratios.windows(2).all(|w| w[1] > w[0]);
    Ok(GrowthDiagnostic {
        space: table.space.clone(),
        alpha: alpha.is_finite().then_some(alpha),
        levels,
        first_failure,
        log_ratios,
        strictly_increasing,
    })
}

impl GrowthDiagnostic {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("diagnostic serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,count,ln_count,bound,fails\n");
        for l in &self.levels {
            writeln!(out, "{},{},{:.12},{:.12},{}", l.m, l.count, l.ln_count, l.bound, l.fails).unwrap();
        }
        match self.first_failure {
            Some(m) => writeln!(out, "# first_failure,{m}").unwrap(),
            None => writeln!(out, "# first_failure,none").unwrap(),
        }
        for (i, r) in self.log_ratios.iter().enumerate() {
            writeln!(out, "# log_ratio,{},{:.12}", self.levels[i].m, r).unwrap();
        }
        writeln!(out, "# strictly_increasing,{}", self.strictly_increasing).unwrap();
        out
    }
}
