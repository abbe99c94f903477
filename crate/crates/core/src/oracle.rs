//! Brute-force sums and the grid verification harness.
//!
//! [`brute_sum`] is a literal loop over sequence terms. It touches nothing
//! from the Ledin or closed-form modules, which is what lets it act as the
//! reference for both.

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed::{Route, SumEvaluator, SumSpec};
use crate::error::{Error, Result};
use crate::eulerian::eulerian;
use crate::scalar::{factorial, int, pow, serde_rational, ExactScalar};
use crate::sequence::{HoradamParams, Sequence};

fn brute_with(seq: &Sequence, vh: &ExactScalar, spec: &SumSpec) -> Result<ExactScalar> {
    if spec.weighted && vh.is_zero() {
        return Err(Error::DegenerateDenominator {
            guard: "V_h",
            reason: "weighted sum is undefined",
        });
    }
    let h = i64::from(spec.h);
    let mut total = ExactScalar::zero();
    let mut weight = ExactScalar::from_integer(1.into());
    for k in 1..=spec.n as i64 {
        let mut term = pow(&int(k), i64::from(spec.m)) * seq.term(h * k + spec.r);
        if spec.weighted {
            weight /= vh;
            term *= &weight;
        }
        total += term;
    }
    Ok(total)
}

/// `sum_{k=1}^{n} k^m w_{hk+r}`, times `V_h^{-k}` when weighted, by direct summation.
pub fn brute_sum(spec: &SumSpec) -> Result<ExactScalar> {
    let seq = Sequence::new(spec.params.clone());
    let vh = Sequence::new(spec.params.lucas_v()).term(i64::from(spec.h));
    brute_with(&seq, &vh, spec)
}

/// Builds the Eulerian triangle from the additive recurrence
/// `A(i, j) = j A(i-1, j) + (i-j+1) A(i-1, j-1)` and compares it with the
/// alternating-binomial definition. Also checks every row sums to `i!`.
pub fn eulerian_recurrence_oracle(i_max: u32) -> bool {
    let mut row = vec![BigInt::from(1)];
    for i in 0..=i_max {
        if i > 0 {
            let prev = row;
            row = (0..=i as usize)
                .map(|j| {
                    let stay = prev.get(j).map_or_else(BigInt::zero, |a| a * j);
                    let step = if j == 0 { BigInt::zero() } else { &prev[j - 1] * (i as usize - j + 1) };
                    stay + step
                })
                .collect();
        }
        let matches = row.iter().enumerate().all(|(j, a)| *a == eulerian(i, j as u32));
        let total: BigInt = row.iter().sum();
        if !matches || total != factorial(u64::from(i)) {
            return false;
        }
    }
    true
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightMode {
    Unweighted,
    Weighted,
    #[default]
    Both,
}

impl WeightMode {
    fn flags(self) -> &'static [bool] {
        match self {
            WeightMode::Unweighted => &[false],
            WeightMode::Weighted => &[true],
            WeightMode::Both => &[false, true],
        }
    }
}

/// Finite ranges for [`verify_grid`]. An empty `params` list or an empty
/// `r` range (`r_min > r_max`) yields no cases.
#[derive(Clone, Debug, PartialEq)]
pub struct GridRanges {
    pub m_max: u32,
    pub n_max: u64,
    pub r_min: i64,
    pub r_max: i64,
    pub h_max: u32,
    pub params: Vec<HoradamParams>,
    pub weighted: WeightMode,
}

impl GridRanges {
    /// The standard grid, including a repeated-root set `(1, 1, 2, 1)`.
    pub fn default_grid() -> Self {
        Self {
            m_max: 6,
            n_max: 40,
            r_min: -8,
            r_max: 8,
            h_max: 3,
            params: default_params(),
            weighted: WeightMode::Both,
        }
    }

    pub fn empty() -> Self {
        Self {
            m_max: 0,
            n_max: 0,
            r_min: 0,
            r_max: 0,
            h_max: 0,
            params: Vec::new(),
            weighted: WeightMode::Both,
        }
    }

    pub fn describe(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
        format!(
            "m<={} n<={} r={}..{} h<={} weighted={} params=[{}]",
            self.m_max,
            self.n_max,
            self.r_min,
            self.r_max,
            self.h_max,
            match self.weighted {
                WeightMode::Unweighted => "no",
                WeightMode::Weighted => "yes",
                WeightMode::Both => "both",
            },
            params.join(" ")
        )
    }
}

/// Fibonacci, Lucas, Pell, Jacobsthal-type, a generic rational set and a
/// repeated-root set with `p^2 = 4q`.
pub fn default_params() -> Vec<HoradamParams> {
    use crate::scalar::ratio;
    vec![
        HoradamParams::fibonacci(),
        HoradamParams::lucas(),
        HoradamParams::from_ints(0, 1, 2, -1).unwrap(),
        HoradamParams::from_ints(0, 1, 1, -2).unwrap(),
        HoradamParams::new(ratio(3, 2), int(-5), ratio(7, 3), ratio(2, 5)).unwrap(),
        HoradamParams::from_ints(1, 1, 2, 1).unwrap(),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub spec: SumSpec,
    pub route: Route,
    #[serde(with = "serde_rational")]
    pub expected: ExactScalar,
    #[serde(with = "serde_rational")]
    pub got: ExactScalar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

/// Outcome of a grid run. `status` is `PASS` exactly when `mismatches` is empty.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub status: Status,
    pub grid_description: String,
    /// Number of sum instances evaluated.
    pub cases_run: u64,
    /// Number of (instance, route) comparisons made against the brute-force value.
    pub route_checks: u64,
    pub mismatches: Vec<Mismatch>,
    /// (instance, route) pairs whose guard denominator vanished.
    pub guard_skips: u64,
    /// Seconds.
    pub wall_time: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Parses a serialized report, rejecting a status that contradicts the mismatch list.
    pub fn parse(text: &str) -> Result<Self> {
        let report: Self =
            serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("malformed report: {e}")))?;
        let expected = if report.mismatches.is_empty() { Status::Pass } else { Status::Fail };
        if report.status != expected {
            return Err(Error::InvalidInput("report status disagrees with its mismatch list".into()));
        }
        Ok(report)
    }
}

#[derive(Default)]
struct Tally {
    cases: u64,
    checks: u64,
    skips: u64,
    mismatches: Vec<Mismatch>,
}

struct ParamsContext {
    evaluator: SumEvaluator,
    brute_seq: Sequence,
    brute_v: Sequence,
}

/// Compares every applicable route against [`brute_sum`] for every spec in
/// `ranges`. Vanishing guard denominators count as skips; a wrong value is
/// recorded as a mismatch. Output order is independent of scheduling.
pub fn verify_grid(ranges: &GridRanges) -> VerificationReport {
    let start = Instant::now();
    let contexts: Vec<ParamsContext> = ranges
        .params
        .iter()
        .map(|p| ParamsContext {
            evaluator: SumEvaluator::new(p.clone()),
            brute_seq: Sequence::new(p.clone()),
            brute_v: Sequence::new(p.lucas_v()),
        })
        .collect();

    let mut jobs = Vec::new();
    for (pi, _) in contexts.iter().enumerate() {
        for &weighted in ranges.weighted.flags() {
            for h in 1..=ranges.h_max {
                for r in ranges.r_min..=ranges.r_max {
                    jobs.push((pi, weighted, h, r));
                }
            }
        }
    }

    let tallies: Vec<Tally> = jobs
        .par_iter()
        .map(|&(pi, weighted, h, r)| {
            let ctx = &contexts[pi];
            let params = ctx.evaluator.params();
            let vh = ctx.brute_v.term(i64::from(h));
            let mut tally = Tally::default();
            for m in 0..=ranges.m_max {
                for n in 0..=ranges.n_max {
                    let spec = SumSpec { m, n, r, h, params: params.clone(), weighted };
                    tally.cases += 1;
                    let expected = match brute_with(&ctx.brute_seq, &vh, &spec) {
                        Ok(v) => v,
                        Err(_) => {
                            tally.skips += 1;
                            continue;
                        }
                    };
                    for route in Route::SUM_ROUTES {
                        if !ctx.evaluator.applies(&spec, route) {
                            continue;
                        }
                        match ctx.evaluator.evaluate(&spec, route) {
                            Ok(report) => {
                                tally.checks += 1;
                                if report.value != expected {
                                    tally.mismatches.push(Mismatch {
                                        spec: spec.clone(),
                                        route,
                                        expected: expected.clone(),
                                        got: report.value,
                                    });
                                }
                            }
                            Err(_) => tally.skips += 1,
                        }
                    }
                }
            }
            tally
        })
        .collect();

    let mut total = Tally::default();
    for t in tallies {
        total.cases += t.cases;
        total.checks += t.checks;
        total.skips += t.skips;
        total.mismatches.extend(t.mismatches);
    }
    total.mismatches.sort_by(|a, b| (&a.spec, a.route).cmp(&(&b.spec, b.route)));

    VerificationReport {
        status: if total.mismatches.is_empty() { Status::Pass } else { Status::Fail },
        grid_description: ranges.describe(),
        cases_run: total.cases,
        route_checks: total.checks,
        mismatches: total.mismatches,
        guard_skips: total.skips,
        wall_time: start.elapsed().as_secs_f64(),
    }
}
