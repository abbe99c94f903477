//! Recursive Ledin scheme.
//!
//! A weighted sum `sum_{k=1}^{n} k^m w_{k+r}` is written as
//! `P1(m, n) w_{n+r} + P2(m, n) w_{n+r+1} + C(m, r)` where `P1`, `P2` are
//! polynomials in `n` of degree `m`. All three pieces satisfy a recursion in
//! `m` whose weights are the derivatives of the characteristic denominator
//! `q e^{2y} - p e^y + 1` at `y = 0`:
//!
//! ```text
//! (q - p + 1) X(m) = seed(m) - sum_{j<m} C(m, j) (2^{m-j} q - p) X(j)
//! ```
//!
//! For Fibonacci/Lucas (`p = 1`, `q = -1`) the weights reduce to
//! `-(2^{m-j} + 1)` and the division by `q - p + 1 = -1` is folded into the
//! sign, giving the integer recursions used by [`p_polys_recursive`] and
//! [`ck_constants_recursive`].

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::PolynomialInN;
use crate::scalar::{binomial, from_bigint, int, ExactScalar};
use crate::sequence::{HoradamParams, Sequence};

/// `sum_{k=1}^{n} k^m w_{k+r} = p1(n) w_{n+r} + p2(n) w_{n+r+1} + constant`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedinForm {
    pub p1: PolynomialInN,
    pub p2: PolynomialInN,
    pub constant: ExactScalar,
    pub shift: i64,
    pub params: HoradamParams,
}

impl LedinForm {
    /// Evaluates the form at `n` using terms from `seq`, which must carry the
    /// same parameters as the form.
    pub fn evaluate_with(&self, seq: &Sequence, n: u64) -> ExactScalar {
        debug_assert_eq!(seq.params(), &self.params);
        let idx = n as i64 + self.shift;
        self.p1.eval_at(n) * seq.term(idx) + self.p2.eval_at(n) * seq.term(idx + 1)
            + &self.constant
    }

    pub fn evaluate(&self, n: u64) -> ExactScalar {
        self.evaluate_with(&Sequence::new(self.params.clone()), n)
    }
}

pub fn evaluate_ledin_form(form: &LedinForm, n: u64) -> ExactScalar {
    form.evaluate(n)
}

/// `C(m, j) (2^{m-j} + 1)` for the Fibonacci/Lucas recursions.
fn fib_weight(m: u32, j: u32) -> BigInt {
    binomial(u64::from(m), u64::from(j)) * ((BigInt::one() << (m - j)) + 1)
}

fn fib_poly_cache() -> &'static RwLock<Vec<(PolynomialInN, PolynomialInN)>> {
    static CACHE: OnceLock<RwLock<Vec<(PolynomialInN, PolynomialInN)>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(Vec::new()))
}

/// `(P1(m, .), P2(m, .))` from
/// `P1(m) = (n+2)^m - sum_{j<m} C(m,j)(2^{m-j}+1) P1(j)` and the same with
/// `(n+1)^m` for `P2`. Memoized across calls.
pub fn p_polys_recursive(m: u32) -> (PolynomialInN, PolynomialInN) {
    let cache = fib_poly_cache();
    if let Some(hit) = cache.read().unwrap().get(m as usize) {
        return hit.clone();
    }
    let mut levels = cache.write().unwrap();
    while levels.len() <= m as usize {
        let k = levels.len() as u32;
        let mut p1 = PolynomialInN::shifted_power(2, k);
        let mut p2 = PolynomialInN::shifted_power(1, k);
        for (j, (q1, q2)) in levels.iter().enumerate() {
            let w = from_bigint(fib_weight(k, j as u32));
            p1 = &p1 - &q1.scale(&w);
            p2 = &p2 - &q2.scale(&w);
        }
        levels.push((p1, p2));
    }
    levels[m as usize].clone()
}

/// Shared shape of the constant recursions: `X(k) = seed(k) - sum_{j<k} weight X(j)`.
fn fib_constant_recursion(m: u32, seed: impl Fn(u32) -> ExactScalar) -> Vec<ExactScalar> {
    let mut out: Vec<ExactScalar> = Vec::with_capacity(m as usize + 1);
    for k in 0..=m {
        let mut x = seed(k);
        for (j, prev) in out.iter().enumerate() {
            x -= from_bigint(fib_weight(k, j as u32)) * prev;
        }
        out.push(x);
    }
    out
}

/// `(C(m), K(m))`: `C(m) = -1 - sum ...`, `K(m) = -(2^{m+1} + 1) - sum ...`.
pub fn ck_constants_recursive(m: u32) -> (ExactScalar, ExactScalar) {
    let c = fib_constant_recursion(m, |_| int(-1));
    let k = fib_constant_recursion(m, |k| -from_bigint((BigInt::one() << (k + 1)) + 1));
    (c[m as usize].clone(), k[m as usize].clone())
}

/// `(C(m, r), K(m, r))` from `C(m, r) = -2^m F_r - F_{r+1} - sum ...` and the
/// Lucas analogue.
pub fn ck_shifted_recursive(m: u32, r: i64) -> (ExactScalar, ExactScalar) {
    let shifted = |seq: Sequence| {
        let (wr, wr1) = (seq.term(r), seq.term(r + 1));
        fib_constant_recursion(m, |k| -(from_bigint(BigInt::one() << k) * &wr) - &wr1)
    };
    let c = shifted(Sequence::new(HoradamParams::fibonacci()));
    let k = shifted(Sequence::new(HoradamParams::lucas()));
    (c[m as usize].clone(), k[m as usize].clone())
}

/// Memoized recursive Ledin scheme for one Horadam parameter set.
///
/// Polynomials depend only on `(p, q)`; constants additionally on the shift
/// `r`. Both caches only grow.
#[derive(Debug)]
pub struct HoradamScheme {
    seq: Sequence,
    denominator: ExactScalar,
    polys: RwLock<Vec<(PolynomialInN, PolynomialInN)>>,
    constants: RwLock<HashMap<i64, Vec<ExactScalar>>>,
}

impl HoradamScheme {
    /// Fails with `DegenerateDenominator` when `q - p + 1 = 0`.
    pub fn new(params: HoradamParams) -> Result<Self> {
        let denominator = params.ledin_denominator();
        if denominator.is_zero() {
            return Err(Error::DegenerateDenominator {
                guard: "q - p + 1",
                reason: "excluded by Horadam definition",
            });
        }
        Ok(Self {
            seq: Sequence::new(params),
            denominator,
            polys: RwLock::new(Vec::new()),
            constants: RwLock::new(HashMap::new()),
        })
    }

    pub fn params(&self) -> &HoradamParams {
        self.seq.params()
    }

    pub fn sequence(&self) -> &Sequence {
        &self.seq
    }

    /// `q - p + 1`.
    pub fn denominator(&self) -> &ExactScalar {
        &self.denominator
    }

    /// `C(k, j) (2^{k-j} q - p)`.
    fn weight(&self, k: u32, j: u32) -> ExactScalar {
        let params = self.params();
        from_bigint(binomial(u64::from(k), u64::from(j)))
            * (from_bigint(BigInt::one() << (k - j)) * params.q() - params.p())
    }

    /// `(P1(m, .; p, q), P2(m, .; p, q))`.
    pub fn polys(&self, m: u32) -> (PolynomialInN, PolynomialInN) {
        if let Some(hit) = self.polys.read().unwrap().get(m as usize) {
            return hit.clone();
        }
        let mut levels = self.polys.write().unwrap();
        let inv = self.denominator.recip();
        let q = self.params().q().clone();
        while levels.len() <= m as usize {
            let k = levels.len() as u32;
            // (q - p + 1) P1(k) = (n+2)^k q - sum ..., (q - p + 1) P2(k) = -(n+1)^k - sum ...
            let mut p1 = PolynomialInN::shifted_power(2, k).scale(&q);
            let mut p2 = -&PolynomialInN::shifted_power(1, k);
            for (j, (q1, q2)) in levels.iter().enumerate() {
                let w = self.weight(k, j as u32);
                p1 = &p1 - &q1.scale(&w);
                p2 = &p2 - &q2.scale(&w);
            }
            levels.push((p1.scale(&inv), p2.scale(&inv)));
        }
        levels[m as usize].clone()
    }

    /// `C(m, r; a, b, p, q)` from
    /// `(q - p + 1) C(m, r) = -2^m q w_r + w_{r+1} - sum_{j<m} C(m,j)(2^{m-j} q - p) C(j, r)`.
    pub fn constant(&self, m: u32, r: i64) -> ExactScalar {
        if let Some(hit) = self
            .constants
            .read()
            .unwrap()
            .get(&r)
            .and_then(|v| v.get(m as usize))
        {
            return hit.clone();
        }
        let wr = self.seq.term(r);
        let wr1 = self.seq.term(r + 1);
        let qwr = self.params().q() * &wr;
        let inv = self.denominator.recip();
        let mut map = self.constants.write().unwrap();
        let levels = map.entry(r).or_default();
        while levels.len() <= m as usize {
            let k = levels.len() as u32;
            let mut x = -(from_bigint(BigInt::one() << k) * &qwr) + &wr1;
            for (j, prev) in levels.iter().enumerate() {
                x -= self.weight(k, j as u32) * prev;
            }
            levels.push(x * &inv);
        }
        levels[m as usize].clone()
    }

    /// The constant read off the polynomials at `n = 0`:
    /// `C(m, r) = -w_r P1(m, 0) - w_{r+1} P2(m, 0)`.
    pub fn constant_from_polys(&self, m: u32, r: i64) -> ExactScalar {
        let (p1, p2) = self.polys(m);
        let zero = ExactScalar::zero();
        -(p1.eval(&zero) * self.seq.term(r)) - p2.eval(&zero) * self.seq.term(r + 1)
    }

    pub fn form(&self, m: u32, r: i64) -> LedinForm {
        let (p1, p2) = self.polys(m);
        LedinForm {
            p1,
            p2,
            constant: self.constant(m, r),
            shift: r,
            params: self.params().clone(),
        }
    }
}

/// Full recursive Ledin form for `sum_{k=1}^{n} k^m w_{k+r}`.
pub fn horadam_ledin_recursive(m: u32, r: i64, params: &HoradamParams) -> Result<LedinForm> {
    Ok(HoradamScheme::new(params.clone())?.form(m, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn poly(c: &[i64]) -> PolynomialInN {
        PolynomialInN::from_coeffs(c.iter().map(|&x| int(x)).collect())
    }

    fn brute(seq: &Sequence, m: u32, n: u64, r: i64) -> ExactScalar {
        (1..=n)
            .map(|k| int((k as i64).pow(m)) * seq.term(k as i64 + r))
            .sum()
    }

    #[test]
    fn initial_polynomials_and_first_step() {
        assert_eq!(p_polys_recursive(0), (poly(&[1]), poly(&[1])));
        assert_eq!(p_polys_recursive(1), (poly(&[-1, 1]), poly(&[-2, 1])));
    }

    #[test]
    fn monic_of_degree_m() {
        for m in 0..=8 {
            let (p1, p2) = p_polys_recursive(m);
            assert_eq!(p1.degree(), Some(m as usize));
            assert_eq!(p2.degree(), Some(m as usize));
            assert!(p1.leading_coeff().is_one() && p2.leading_coeff().is_one());
        }
    }

    #[test]
    fn golden_constants() {
        assert_eq!(ck_constants_recursive(0), (int(-1), int(-3)));
        assert_eq!(ck_constants_recursive(1), (int(2), int(4)));
    }

    #[test]
    fn constants_agree_with_polynomials_at_zero() {
        let zero = ExactScalar::zero();
        for m in 0..=8 {
            let (p1, p2) = p_polys_recursive(m);
            let (c, k) = ck_constants_recursive(m);
            assert_eq!(c, -p2.eval(&zero), "C({m})");
            assert_eq!(k, -(int(2) * p1.eval(&zero)) - p2.eval(&zero), "K({m})");
        }
    }

    #[test]
    fn shifted_constants() {
        assert_eq!(ck_shifted_recursive(0, 0), (int(-1), int(-3)));
        assert_eq!(ck_shifted_recursive(0, 2).0, int(-3));
        for m in 0..=6 {
            assert_eq!(ck_shifted_recursive(m, 0), ck_constants_recursive(m));
        }
    }

    #[test]
    fn horadam_scheme_zeroth_level() {
        let fib = horadam_ledin_recursive(0, 0, &HoradamParams::fibonacci()).unwrap();
        assert_eq!((fib.p1.clone(), fib.p2.clone(), fib.constant.clone()), (poly(&[1]), poly(&[1]), int(-1)));

        let params = HoradamParams::new(int(1), int(4), ratio(7, 3), ratio(2, 5)).unwrap();
        let form = horadam_ledin_recursive(0, 0, &params).unwrap();
        let d = params.ledin_denominator();
        assert_eq!(form.p1, PolynomialInN::constant(params.q() / &d));
        assert_eq!(form.p2, PolynomialInN::constant(-d.recip()));
    }

    #[test]
    fn pell_first_moment() {
        let pell = HoradamParams::from_ints(0, 1, 2, -1).unwrap();
        let form = horadam_ledin_recursive(1, 0, &pell).unwrap();
        assert_eq!(form.evaluate(3), int(20));
    }

    #[test]
    fn evaluation_examples() {
        let fib1 = horadam_ledin_recursive(1, 0, &HoradamParams::fibonacci()).unwrap();
        assert_eq!(evaluate_ledin_form(&fib1, 4), int(21));
        assert_eq!(evaluate_ledin_form(&fib1, 0), int(0));
        let luc0 = horadam_ledin_recursive(0, 0, &HoradamParams::lucas()).unwrap();
        assert_eq!(evaluate_ledin_form(&luc0, 3), int(8));
    }

    #[test]
    fn specializes_to_fibonacci_and_lucas() {
        let fib = HoradamScheme::new(HoradamParams::fibonacci()).unwrap();
        let luc = HoradamScheme::new(HoradamParams::lucas()).unwrap();
        for m in 0..=6 {
            assert_eq!(fib.polys(m), p_polys_recursive(m));
            assert_eq!(luc.polys(m), p_polys_recursive(m));
            for r in -8..=8 {
                let (c, k) = ck_shifted_recursive(m, r);
                assert_eq!(fib.constant(m, r), c);
                assert_eq!(luc.constant(m, r), k);
            }
        }
    }

    #[test]
    fn constant_routes_agree_and_forms_match_brute_force() {
        let grid = [
            HoradamParams::from_ints(0, 1, 2, -1).unwrap(),
            HoradamParams::from_ints(0, 1, 1, -2).unwrap(),
            HoradamParams::new(ratio(3, 2), int(-5), ratio(7, 3), ratio(2, 5)).unwrap(),
        ];
        for params in grid {
            let scheme = HoradamScheme::new(params).unwrap();
            for m in 0..=5 {
                for r in -5..=5 {
                    assert_eq!(scheme.constant(m, r), scheme.constant_from_polys(m, r));
                    let form = scheme.form(m, r);
                    for n in 0..=12 {
                        assert_eq!(
                            form.evaluate_with(scheme.sequence(), n),
                            brute(scheme.sequence(), m, n, r),
                            "m={m} r={r} n={n}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn degenerate_denominator_is_an_error() {
        let params = HoradamParams::from_ints(1, 1, 2, 1).unwrap();
        let err = horadam_ledin_recursive(1, 0, &params).unwrap_err();
        assert_eq!(err.to_string(), "q - p + 1 = 0: excluded by Horadam definition");
    }
}
