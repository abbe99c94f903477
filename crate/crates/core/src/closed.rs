//! Eulerian-number closed forms.
//!
//! Each function transcribes one closed form with its original index ranges
//! and `delta_{m,0}` corrections; no algebraic simplification is applied.
//! Negative subscripts that appear inside the sums are served by the
//! backwards recurrence of [`Sequence`].
//!
//! The one-shot public functions build their own sequences. Grid callers
//! should hold a [`SumEvaluator`], which keeps every sequence and scheme for
//! a parameter set cached across calls.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::RwLock;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eulerian::eulerian_cached;
use crate::recursive::{HoradamScheme, LedinForm};
use crate::poly::PolynomialInN;
use crate::scalar::{binomial, from_bigint, int, pow, sign, ExactScalar};
use crate::sequence::{HoradamParams, Sequence};

fn euler(i: u32, j: u32) -> ExactScalar {
    from_bigint(eulerian_cached(i, j))
}

fn binom(n: u32, k: u32) -> ExactScalar {
    from_bigint(binomial(u64::from(n), u64::from(k)))
}

fn delta0(m: u32) -> bool {
    m == 0
}

/// `n^e` with `0^0 = 1`.
fn npow(n: u64, e: u32) -> ExactScalar {
    pow(&int(n as i64), i64::from(e))
}

/// One instance of `sum_{k=1}^{n} k^m w_{hk+r}`, optionally weighted by `V_h^{-k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SumSpec {
    pub m: u32,
    pub n: u64,
    pub r: i64,
    pub h: u32,
    pub params: HoradamParams,
    pub weighted: bool,
}

impl SumSpec {
    pub fn new(m: u32, n: u64, r: i64, h: u32, params: HoradamParams, weighted: bool) -> Result<Self> {
        if h == 0 {
            return Err(Error::InvalidInput("stride h must be at least 1".into()));
        }
        Ok(Self { m, n, r, h, params, weighted })
    }

    /// Unweighted, unit stride.
    pub fn plain(m: u32, n: u64, r: i64, params: HoradamParams) -> Self {
        Self { m, n, r, h: 1, params, weighted: false }
    }
}

/// Evaluation routes. `HsuTan` only describes plain power sums `sum k^m x^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    HsuTan,
    Theorem2,
    Omega,
    Uv,
    WeightedAp,
    Ap,
    /// Recursive Ledin scheme assembled as `P1 w_{n+r} + P2 w_{n+r+1} + C`.
    LedinAssembled,
    /// Ledin form with the explicit `(1 - p + q)^{s+1}` polynomials and constant.
    LedinExplicit,
    /// Ledin form with the `p = 1` polynomials built from `u_j(q)`.
    LedinRestricted,
}

impl Route {
    /// Routes that evaluate a [`SumSpec`], in default preference order.
    pub const SUM_ROUTES: [Route; 8] = [
        Route::LedinAssembled,
        Route::LedinExplicit,
        Route::LedinRestricted,
        Route::Theorem2,
        Route::Omega,
        Route::Uv,
        Route::Ap,
        Route::WeightedAp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Route::HsuTan => "hsu_tan",
            Route::Theorem2 => "theorem2",
            Route::Omega => "omega",
            Route::Uv => "uv",
            Route::WeightedAp => "weighted_ap",
            Route::Ap => "ap",
            Route::LedinAssembled => "ledin_assembled",
            Route::LedinExplicit => "ledin_explicit",
            Route::LedinRestricted => "ledin_restricted",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Route::HsuTan]
            .into_iter()
            .chain(Route::SUM_ROUTES)
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown route `{s}`")))
    }
}

/// A closed-form value together with the denominators it divided by.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormReport {
    pub value: ExactScalar,
    pub route: Route,
    pub guard_denominators: Vec<ExactScalar>,
}

fn require_nonzero(value: ExactScalar, guard: &'static str, reason: &'static str) -> Result<ExactScalar> {
    if value.is_zero() {
        Err(Error::DegenerateDenominator { guard, reason })
    } else {
        Ok(value)
    }
}

/// `A_i(x) = sum_j A(i, j) x^j`.
fn eulerian_poly(i: u32, x: &ExactScalar) -> ExactScalar {
    (0..=i).map(|j| euler(i, j) * pow(x, i64::from(j))).sum()
}

/// `sum_{k=0}^{n} k^m x^k` (with `0^0 = 1`) via
/// `-n^m x^{n+1}/(1-x) + A_m(x)/(1-x)^{m+1} - sum_s x^n C(m,s) n^{m-s} A_s(x)/(1-x)^{s+1}`.
pub fn q_power_sum_closed(x: &ExactScalar, m: u32, n: u64) -> Result<ExactScalar> {
    if x.is_zero() || x.is_one() {
        return Err(Error::GuardViolation("power-sum closed form requires x != 0 and x != 1".into()));
    }
    let one_minus = ExactScalar::one() - x;
    let n_i = n as i64;
    let mut total = -(npow(n, m) * pow(x, n_i + 1) / &one_minus)
        + eulerian_poly(m, x) / pow(&one_minus, i64::from(m) + 1);
    let xn = pow(x, n_i);
    for s in 1..=m {
        total -= &xn * binom(m, s) * npow(n, m - s) * eulerian_poly(s, x)
            / pow(&one_minus, i64::from(s) + 1);
    }
    Ok(total)
}

/// Cached sequences and schemes for one parameter set.
#[derive(Debug)]
pub struct SumEvaluator {
    seq: Sequence,
    /// `U_j(p, q)`; equals `u_j(q)` when `p = 1`.
    lucas_u: Sequence,
    /// `V_j(p, q)`; equals `v_j(q)` when `p = 1`.
    lucas_v: Sequence,
    scheme: std::result::Result<HoradamScheme, Error>,
    explicit_polys: RwLock<HashMap<u32, (PolynomialInN, PolynomialInN)>>,
    restricted_polys: RwLock<HashMap<u32, (PolynomialInN, PolynomialInN)>>,
}

impl SumEvaluator {
    pub fn new(params: HoradamParams) -> Self {
        Self {
            lucas_u: Sequence::new(params.lucas_u()),
            lucas_v: Sequence::new(params.lucas_v()),
            scheme: HoradamScheme::new(params.clone()),
            seq: Sequence::new(params),
            explicit_polys: RwLock::new(HashMap::new()),
            restricted_polys: RwLock::new(HashMap::new()),
        }
    }

    pub fn params(&self) -> &HoradamParams {
        self.seq.params()
    }

    pub fn sequence(&self) -> &Sequence {
        &self.seq
    }

    fn p(&self) -> &ExactScalar {
        self.params().p()
    }

    fn q(&self) -> &ExactScalar {
        self.params().q()
    }

    fn w(&self, j: i64) -> ExactScalar {
        self.seq.term(j)
    }

    /// `V_h(p, q)`.
    pub fn v_h(&self, h: u32) -> ExactScalar {
        self.lucas_v.term(i64::from(h))
    }

    fn is_p_one(&self) -> bool {
        self.p().is_one()
    }

    /// The recursive scheme, or the `q - p + 1 = 0` error.
    pub fn scheme(&self) -> Result<&HoradamScheme> {
        self.scheme.as_ref().map_err(Clone::clone)
    }

    /// Brousseau closed form for `p = 1`, `q = -1` sequences:
    /// `-delta w_r + n^m w_{n+r+2} + (-1)^{m+1} sum_j A(m,j) w_{j+m+r+1}
    ///  - sum_s (-1)^{s+1} C(m,s) n^{m-s} sum_{j>=1} A(s,j) w_{j+n+s+r+1}`.
    pub fn theorem2(&self, m: u32, n: u64, r: i64) -> Result<ExactScalar> {
        if !self.params().is_fibonacci_like() {
            return Err(Error::GuardViolation("Fibonacci/Lucas closed form requires p = 1 and q = -1".into()));
        }
        let (mi, ni) = (i64::from(m), n as i64);
        let mut total = npow(n, m) * self.w(ni + r + 2);
        if delta0(m) {
            total -= self.w(r);
        }
        let head: ExactScalar = (0..=m).map(|j| euler(m, j) * self.w(i64::from(j) + mi + r + 1)).sum();
        total += int(sign(mi + 1)) * head;
        for s in 1..=m {
            let si = i64::from(s);
            let inner: ExactScalar = (1..=s)
                .map(|j| euler(s, j) * self.w(i64::from(j) + ni + si + r + 1))
                .sum();
            total -= int(sign(si + 1)) * binom(m, s) * npow(n, m - s) * inner;
        }
        Ok(total)
    }

    /// `Omega(m, n; a, b, q) = sum_{k=1}^{n} k^m w*_k` for `p = 1`.
    pub fn omega(&self, m: u32, n: u64) -> Result<ExactScalar> {
        self.omega_shifted(m, n, 0)
    }

    /// Omega for the sequence reseeded at `(w_r, w_{r+1})`, read off the
    /// cached terms by an index offset instead of building a new sequence.
    fn omega_shifted(&self, m: u32, n: u64, r: i64) -> Result<ExactScalar> {
        if !self.is_p_one() {
            return Err(Error::GuardViolation("omega closed form requires p = 1".into()));
        }
        let q = self.q();
        let (mi, ni) = (i64::from(m), n as i64);
        let (u, v) = (&self.lucas_u, &self.lucas_v);
        let w = |j: i64| self.w(j + r);
        // w*_{j+1} - q w*_{j-1}
        let dual = |j: i64| w(j + 1) - q * w(j - 1);
        let two = int(2);

        let mut total = -(npow(n, m) * w(ni + 2) / q);
        if delta0(m) {
            total -= w(0);
        }
        let qm1 = pow(q, mi + 1);
        let sum_w: ExactScalar = (0..=m).map(|j| euler(m, j) * w(i64::from(j))).sum();
        let sum_dual: ExactScalar = (0..=m).map(|j| euler(m, j) * dual(i64::from(j))).sum();
        total += v.term(mi + 1) / (&two * &qm1) * sum_w;
        total += u.term(mi + 1) / (&two * &qm1) * sum_dual;
        for s in 1..=m {
            let si = i64::from(s);
            let coeff = npow(n, m - s) * binom(m, s) / (&two * pow(q, si + 1));
            let sum_w: ExactScalar = (1..=s).map(|j| euler(s, j) * w(i64::from(j))).sum();
            let sum_dual: ExactScalar = (1..=s).map(|j| euler(s, j) * dual(i64::from(j))).sum();
            total -= &coeff * v.term(ni + si + 1) * sum_w;
            total -= coeff * u.term(ni + si + 1) * sum_dual;
        }
        Ok(total)
    }

    /// `sum_{k=1}^{n} k^m x_k` for `x = u(q)` or `v(q)`, i.e. the seeds `(0, 1)`
    /// or `(2, 1)` with `p = 1`.
    pub fn uv(&self, m: u32, n: u64) -> Result<ExactScalar> {
        let params = self.params();
        let seeds_ok = params.b().is_one() && (params.a().is_zero() || *params.a() == int(2));
        if !self.is_p_one() || !seeds_ok {
            return Err(Error::GuardViolation("u/v closed form requires p = 1 and seeds (0,1) or (2,1)".into()));
        }
        let q = self.q();
        let (mi, ni) = (i64::from(m), n as i64);
        let mut total = -(npow(n, m) * self.w(ni + 2) / q);
        if delta0(m) {
            total -= self.w(0);
        }
        let head: ExactScalar = (0..=m).map(|j| euler(m, j) * self.w(i64::from(j) + mi + 1)).sum();
        total += head / pow(q, mi + 1);
        for s in 1..=m {
            let si = i64::from(s);
            let inner: ExactScalar = (1..=s)
                .map(|j| euler(s, j) * self.w(i64::from(j) + ni + si + 1))
                .sum();
            total -= binom(m, s) * npow(n, m - s) * inner / pow(q, si + 1);
        }
        Ok(total)
    }

    /// `sum_{k=1}^{n} V_h^{-k} k^m w_{hk+r}`.
    pub fn weighted_ap(&self, m: u32, n: u64, r: i64, h: u32) -> Result<ExactScalar> {
        let vh = require_nonzero(self.v_h(h), "V_h", "weighted sum is undefined")?;
        let (mi, ni, hi) = (i64::from(m), n as i64, i64::from(h));
        let qh = pow(self.q(), hi);

        let mut total = -(npow(n, m) * self.w(hi * (ni + 2) + r) / (&qh * pow(&vh, ni)));
        if delta0(m) {
            total -= self.w(r);
        }
        let head: ExactScalar = (0..=m)
            .map(|j| {
                let ji = i64::from(j);
                euler(m, j) * self.w(hi * (ji + mi + 1) + r) / pow(&vh, ji)
            })
            .sum();
        total += pow(&(&vh / &qh), mi + 1) * head;
        for s in 1..=m {
            let si = i64::from(s);
            let inner: ExactScalar = (1..=s)
                .map(|j| {
                    let ji = i64::from(j);
                    euler(s, j) * self.w(hi * (ji + ni + si + 1) + r) / pow(&vh, ji + ni - si - 1)
                })
                .sum();
            total -= binom(m, s) * npow(n, m - s) / pow(&qh, si + 1) * inner;
        }
        Ok(total)
    }

    /// `1 - V_h + q^h`.
    pub fn ap_denominator(&self, h: u32) -> ExactScalar {
        ExactScalar::one() - self.v_h(h) + pow(self.q(), i64::from(h))
    }

    /// `sum_{c=0}^{t+1} (-1)^c C(t+1, c) q^{hc} sum_{j=0}^{t} A(t, j) w_{h(j-c+offset)+r}`.
    fn binomial_eulerian_block(&self, t: u32, h: u32, offset: i64, r: i64, seq: &Sequence) -> ExactScalar {
        let hi = i64::from(h);
        let qh = pow(self.q(), hi);
        let row: Vec<ExactScalar> = (0..=t).map(|j| euler(t, j)).collect();
        let mut qh_c = ExactScalar::one();
        let mut total = ExactScalar::zero();
        for c in 0..=t + 1 {
            let ci = i64::from(c);
            let inner: ExactScalar = row
                .iter()
                .zip(0i64..)
                .filter(|(a, _)| !a.is_zero())
                .map(|(a, j)| a * seq.term(hi * (j - ci + offset) + r))
                .sum();
            total += int(sign(ci)) * binom(t + 1, c) * &qh_c * inner;
            qh_c *= &qh;
        }
        total
    }

    /// `sum_{k=1}^{n} k^m w_{hk+r}` with denominator `1 - V_h + q^h`.
    pub fn ap(&self, m: u32, n: u64, r: i64, h: u32) -> Result<ExactScalar> {
        let d = require_nonzero(self.ap_denominator(h), "1 - V_h + q^h", "arithmetic-progression closed form is undefined")?;
        let (mi, ni, hi) = (i64::from(m), n as i64, i64::from(h));
        let qh = pow(self.q(), hi);

        let mut total = -(npow(n, m) * (self.w(hi * (ni + 1) + r) - &qh * self.w(hi * ni + r)) / &d);
        if delta0(m) {
            total -= self.w(r);
        }
        total += self.binomial_eulerian_block(m, h, 0, r, &self.seq) / pow(&d, mi + 1);
        for s in 1..=m {
            let si = i64::from(s);
            total -= binom(m, s) * npow(n, m - s) / pow(&d, si + 1)
                * self.binomial_eulerian_block(s, h, ni, r, &self.seq);
        }
        Ok(total)
    }

    /// `1 - p + q`.
    pub fn ledin_explicit_denominator(&self) -> ExactScalar {
        ExactScalar::one() - self.p() + self.q()
    }

    /// Explicit polynomials with `(1 - p + q)^{s+1}` denominators built from `U_j(p, q)`.
    pub fn explicit_polys(&self, m: u32) -> Result<(PolynomialInN, PolynomialInN)> {
        let d = require_nonzero(self.ledin_explicit_denominator(), "1 - p + q", "excluded by Horadam definition")?;
        if let Some(hit) = self.explicit_polys.read().unwrap().get(&m) {
            return Ok(hit.clone());
        }
        let q = self.q();
        let mut p1 = PolynomialInN::monomial(q / &d, m as usize);
        let mut p2 = PolynomialInN::monomial(-d.recip(), m as usize);
        for s in 1..=m {
            let scale = binom(m, s) / pow(&d, i64::from(s) + 1);
            // The block with h = 1, r = 0 and offsets -1 / 0 gives U_{j-c-1} / U_{j-c}.
            let block1 = self.binomial_eulerian_block(s, 1, -1, 0, &self.lucas_u);
            let block2 = self.binomial_eulerian_block(s, 1, 0, 0, &self.lucas_u);
            let deg = (m - s) as usize;
            p1 = &p1 + &PolynomialInN::monomial(q * &scale * block1, deg);
            p2 = &p2 - &PolynomialInN::monomial(&scale * block2, deg);
        }
        self.explicit_polys.write().unwrap().insert(m, (p1.clone(), p2.clone()));
        Ok((p1, p2))
    }

    /// `-w_r delta + (1-p+q)^{-(m+1)} sum_c (-1)^c C(m+1,c) q^c sum_j A(m,j) w_{j-c+r}`.
    pub fn explicit_constant(&self, m: u32, r: i64) -> Result<ExactScalar> {
        let d = require_nonzero(self.ledin_explicit_denominator(), "1 - p + q", "excluded by Horadam definition")?;
        let mut c = self.binomial_eulerian_block(m, 1, 0, r, &self.seq) / pow(&d, i64::from(m) + 1);
        if delta0(m) {
            c -= self.w(r);
        }
        Ok(c)
    }

    pub fn explicit_form(&self, m: u32, r: i64) -> Result<LedinForm> {
        let (p1, p2) = self.explicit_polys(m)?;
        Ok(LedinForm {
            p1,
            p2,
            constant: self.explicit_constant(m, r)?,
            shift: r,
            params: self.params().clone(),
        })
    }

    /// `p = 1` polynomials:
    /// `P1 = n^m + q sum_s C(m,s) n^{m-s}/q^{s+1} sum_{j>=1} A(s,j) u_{j+s}`,
    /// `P2 = -n^m/q - sum_s C(m,s) n^{m-s}/q^{s+1} sum_{j>=1} A(s,j) u_{j+s+1}`.
    pub fn restricted_polys(&self, m: u32) -> Result<(PolynomialInN, PolynomialInN)> {
        if !self.is_p_one() {
            return Err(Error::GuardViolation("restricted Ledin form requires p = 1".into()));
        }
        if let Some(hit) = self.restricted_polys.read().unwrap().get(&m) {
            return Ok(hit.clone());
        }
        let q = self.q();
        let u = &self.lucas_u;
        let mut p1 = PolynomialInN::monomial(ExactScalar::one(), m as usize);
        let mut p2 = PolynomialInN::monomial(-q.recip(), m as usize);
        for s in 1..=m {
            let si = i64::from(s);
            let scale = binom(m, s) / pow(q, si + 1);
            let sum1: ExactScalar = (1..=s).map(|j| euler(s, j) * u.term(i64::from(j) + si)).sum();
            let sum2: ExactScalar = (1..=s).map(|j| euler(s, j) * u.term(i64::from(j) + si + 1)).sum();
            let deg = (m - s) as usize;
            p1 = &p1 + &PolynomialInN::monomial(q * &scale * sum1, deg);
            p2 = &p2 - &PolynomialInN::monomial(scale * sum2, deg);
        }
        self.restricted_polys.write().unwrap().insert(m, (p1.clone(), p2.clone()));
        Ok((p1, p2))
    }

    /// `C(m, r; a, b, 1, q) = -w_r delta + q^{-(m+1)} sum_j A(m,j) w_{j+m+1+r}`.
    pub fn restricted_constant(&self, m: u32, r: i64) -> Result<ExactScalar> {
        if !self.is_p_one() {
            return Err(Error::GuardViolation("restricted Ledin constant requires p = 1".into()));
        }
        let mi = i64::from(m);
        let sum: ExactScalar = (0..=m).map(|j| euler(m, j) * self.w(i64::from(j) + mi + 1 + r)).sum();
        let mut c = sum / pow(self.q(), mi + 1);
        if delta0(m) {
            c -= self.w(r);
        }
        Ok(c)
    }

    pub fn restricted_form(&self, m: u32, r: i64) -> Result<LedinForm> {
        let (p1, p2) = self.restricted_polys(m)?;
        Ok(LedinForm {
            p1,
            p2,
            constant: self.restricted_constant(m, r)?,
            shift: r,
            params: self.params().clone(),
        })
    }

    /// Whether `route` has the right shape for `spec` (guards aside).
    ///
    /// When `V_h = 1` the weighted and unweighted sums coincide, so both
    /// route families apply.
    pub fn applies(&self, spec: &SumSpec, route: Route) -> bool {
        let vh_is_one = self.v_h(spec.h).is_one();
        let plain_sum = !spec.weighted || vh_is_one;
        let unit = plain_sum && spec.h == 1;
        let params = self.params();
        match route {
            Route::HsuTan => false,
            Route::Theorem2 => unit && params.is_fibonacci_like(),
            Route::Omega => unit && self.is_p_one(),
            Route::Uv => {
                unit && self.is_p_one()
                    && spec.r == 0
                    && params.b().is_one()
                    && (params.a().is_zero() || *params.a() == int(2))
            }
            Route::LedinAssembled | Route::LedinExplicit => unit,
            Route::LedinRestricted => unit && self.is_p_one(),
            Route::Ap => plain_sum,
            Route::WeightedAp => spec.weighted || vh_is_one,
        }
    }

    /// Evaluates `spec` through `route`. Shape mismatches and vanishing
    /// denominators are errors, never silently rerouted.
    pub fn evaluate(&self, spec: &SumSpec, route: Route) -> Result<ClosedFormReport> {
        if spec.params != *self.params() {
            return Err(Error::InvalidInput("spec parameters differ from evaluator parameters".into()));
        }
        if !self.applies(spec, route) {
            return Err(Error::GuardViolation(format!("route {route} does not apply to this sum")));
        }
        let SumSpec { m, n, r, h, .. } = *spec;
        let (value, guards) = match route {
            Route::HsuTan => unreachable!(),
            Route::Theorem2 => (self.theorem2(m, n, r)?, vec![]),
            Route::Omega => {
                // Omega covers r = 0; other shifts use the sequence reseeded at (w_r, w_{r+1}).
                let value = self.omega_shifted(m, n, r)?;
                (value, vec![self.q().clone()])
            }
            Route::Uv => (self.uv(m, n)?, vec![self.q().clone()]),
            Route::WeightedAp => {
                let value = self.weighted_ap(m, n, r, h)?;
                (value, vec![self.v_h(h), pow(self.q(), i64::from(h))])
            }
            Route::Ap => (self.ap(m, n, r, h)?, vec![self.ap_denominator(h)]),
            Route::LedinAssembled => {
                let scheme = self.scheme()?;
                let value = scheme.form(m, r).evaluate_with(&self.seq, n);
                (value, vec![scheme.denominator().clone()])
            }
            Route::LedinExplicit => {
                let value = self.explicit_form(m, r)?.evaluate_with(&self.seq, n);
                (value, vec![self.ledin_explicit_denominator()])
            }
            Route::LedinRestricted => {
                let value = self.restricted_form(m, r)?.evaluate_with(&self.seq, n);
                (value, vec![self.q().clone()])
            }
        };
        Ok(ClosedFormReport { value, route, guard_denominators: guards })
    }
}

fn fibonacci_evaluator() -> SumEvaluator {
    SumEvaluator::new(HoradamParams::fibonacci())
}

fn lucas_evaluator() -> SumEvaluator {
    SumEvaluator::new(HoradamParams::lucas())
}

/// `S(m, n, r) = sum_{k=1}^{n} k^m F_{k+r}` in closed form.
pub fn s_closed(m: u32, n: u64, r: i64) -> ExactScalar {
    fibonacci_evaluator().theorem2(m, n, r).expect("Fibonacci parameters")
}

/// `T(m, n, r) = sum_{k=1}^{n} k^m L_{k+r}` in closed form.
pub fn t_closed(m: u32, n: u64, r: i64) -> ExactScalar {
    lucas_evaluator().theorem2(m, n, r).expect("Lucas parameters")
}

/// `(P1(m, .), P2(m, .))` with
/// `P1 = n^m + sum_s (-1)^s C(m,s) n^{m-s} sum_{j>=1} A(s,j) F_{j+s}` and
/// `F_{j+s+1}` in place of `F_{j+s}` for `P2`.
pub fn p_polys_explicit(m: u32) -> (PolynomialInN, PolynomialInN) {
    let fib = Sequence::new(HoradamParams::fibonacci());
    let mut p1 = PolynomialInN::monomial(ExactScalar::one(), m as usize);
    let mut p2 = p1.clone();
    for s in 1..=m {
        let si = i64::from(s);
        let scale = int(sign(si)) * binom(m, s);
        let sum1: ExactScalar = (1..=s).map(|j| euler(s, j) * fib.term(i64::from(j) + si)).sum();
        let sum2: ExactScalar = (1..=s).map(|j| euler(s, j) * fib.term(i64::from(j) + si + 1)).sum();
        let deg = (m - s) as usize;
        p1 = &p1 + &PolynomialInN::monomial(&scale * sum1, deg);
        p2 = &p2 + &PolynomialInN::monomial(scale * sum2, deg);
    }
    (p1, p2)
}

/// `(C(m, r), K(m, r))` with
/// `C(m, r) = -delta F_r + (-1)^{m+1} sum_{j=0}^{m} A(m,j) F_{j+m+r+1}` and the
/// Lucas analogue.
pub fn ledin_constants_explicit(m: u32, r: i64) -> (ExactScalar, ExactScalar) {
    let constant = |seq: Sequence| {
        let mi = i64::from(m);
        let sum: ExactScalar = (0..=m).map(|j| euler(m, j) * seq.term(i64::from(j) + mi + r + 1)).sum();
        let mut c = int(sign(mi + 1)) * sum;
        if delta0(m) {
            c -= seq.term(r);
        }
        c
    };
    (
        constant(Sequence::new(HoradamParams::fibonacci())),
        constant(Sequence::new(HoradamParams::lucas())),
    )
}

/// `Omega(m, n; a, b, q) = sum_{k=1}^{n} k^m w*_k`; requires `p = 1`.
pub fn omega_closed(m: u32, n: u64, params: &HoradamParams) -> Result<ExactScalar> {
    SumEvaluator::new(params.clone()).omega(m, n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UvKind {
    U,
    V,
}

/// `sum_{k=1}^{n} k^m u_k(q)` or `... v_k(q)`.
pub fn uv_closed(m: u32, n: u64, q: &ExactScalar, kind: UvKind) -> Result<ExactScalar> {
    let a = match kind {
        UvKind::U => int(0),
        UvKind::V => int(2),
    };
    let params = HoradamParams::new(a, int(1), int(1), q.clone())?;
    SumEvaluator::new(params).uv(m, n)
}

pub fn weighted_ap_closed(spec: &SumSpec) -> Result<ExactScalar> {
    if !spec.weighted {
        return Err(Error::InvalidInput("weighted closed form needs a weighted spec".into()));
    }
    SumEvaluator::new(spec.params.clone()).weighted_ap(spec.m, spec.n, spec.r, spec.h)
}

pub fn ap_sum_closed(spec: &SumSpec) -> Result<ExactScalar> {
    if spec.weighted {
        return Err(Error::InvalidInput("arithmetic-progression closed form needs an unweighted spec".into()));
    }
    SumEvaluator::new(spec.params.clone()).ap(spec.m, spec.n, spec.r, spec.h)
}

/// Ledin form with explicit `(1 - p + q)^{s+1}` polynomials and the full-Horadam constant.
pub fn horadam_ledin_explicit(m: u32, r: i64, params: &HoradamParams) -> Result<LedinForm> {
    SumEvaluator::new(params.clone()).explicit_form(m, r)
}

/// Ledin form from the `p = 1` expressions with `1/q^{s+1}` denominators.
pub fn horadam_ledin_restricted(m: u32, r: i64, params: &HoradamParams) -> Result<LedinForm> {
    SumEvaluator::new(params.clone()).restricted_form(m, r)
}
