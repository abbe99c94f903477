//! Horadam sequences `w_j(a, b; p, q)` for every integer index.
//!
//! `w_0 = a`, `w_1 = b`, `w_j = p w_{j-1} - q w_{j-2}`, and backwards
//! `w_{-n} = (p w_{-n+1} - w_{-n+2}) / q`.

use std::fmt;
use std::sync::RwLock;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, int, serde_rational, ExactScalar};

/// Seeds and recurrence coefficients of a Horadam sequence; `p` and `q` are nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HoradamParams {
    #[serde(with = "serde_rational")]
    a: ExactScalar,
    #[serde(with = "serde_rational")]
    b: ExactScalar,
    #[serde(with = "serde_rational")]
    p: ExactScalar,
    #[serde(with = "serde_rational")]
    q: ExactScalar,
}

impl HoradamParams {
    pub fn new(a: ExactScalar, b: ExactScalar, p: ExactScalar, q: ExactScalar) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::InvalidParams("p must be nonzero".into()));
        }
        if q.is_zero() {
            return Err(Error::InvalidParams("q must be nonzero".into()));
        }
        Ok(Self { a, b, p, q })
    }

    /// Integer-valued shorthand, mainly for tests and the named sequences.
    pub fn from_ints(a: i64, b: i64, p: i64, q: i64) -> Result<Self> {
        Self::new(int(a), int(b), int(p), int(q))
    }

    pub fn fibonacci() -> Self {
        Self::from_ints(0, 1, 1, -1).unwrap()
    }

    pub fn lucas() -> Self {
        Self::from_ints(2, 1, 1, -1).unwrap()
    }

    pub fn a(&self) -> &ExactScalar {
        &self.a
    }

    pub fn b(&self) -> &ExactScalar {
        &self.b
    }

    pub fn p(&self) -> &ExactScalar {
        &self.p
    }

    pub fn q(&self) -> &ExactScalar {
        &self.q
    }

    /// Same recurrence with seeds `(w_r, w_{r+1})`, i.e. the sequence `j -> w_{j+r}`.
    pub fn shifted(&self, r: i64) -> Self {
        let seq = Sequence::new(self.clone());
        Self {
            a: seq.term(r),
            b: seq.term(r + 1),
            p: self.p.clone(),
            q: self.q.clone(),
        }
    }

    /// `U_j(p, q)`: seeds `(0, 1)` with this recurrence.
    pub fn lucas_u(&self) -> Self {
        Self {
            a: ExactScalar::zero(),
            b: ExactScalar::one(),
            p: self.p.clone(),
            q: self.q.clone(),
        }
    }

    /// `V_j(p, q)`: seeds `(2, p)` with this recurrence.
    pub fn lucas_v(&self) -> Self {
        Self {
            a: int(2),
            b: self.p.clone(),
            p: self.p.clone(),
            q: self.q.clone(),
        }
    }

    /// `q - p + 1`, the denominator of the Horadam Ledin scheme.
    pub fn ledin_denominator(&self) -> ExactScalar {
        &self.q - &self.p + ExactScalar::one()
    }

    pub fn is_fibonacci_like(&self) -> bool {
        self.p.is_one() && self.q == int(-1)
    }
}

impl fmt::Display for HoradamParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{})",
            format_rational(&self.a),
            format_rational(&self.b),
            format_rational(&self.p),
            format_rational(&self.q)
        )
    }
}

/// The parameter families used throughout.
#[derive(Clone, Debug, PartialEq)]
pub enum NamedSequence {
    Fibonacci,
    Lucas,
    /// Lucas sequence of the first kind `U(p, q)`.
    LucasU(ExactScalar, ExactScalar),
    /// Lucas sequence of the second kind `V(p, q)`.
    LucasV(ExactScalar, ExactScalar),
    /// `u_j(q) = w_j(0, 1; 1, q)`.
    USmall(ExactScalar),
    /// `v_j(q) = w_j(2, 1; 1, q)`.
    VSmall(ExactScalar),
}

pub fn named_sequence_params(name: &NamedSequence) -> Result<HoradamParams> {
    match name {
        NamedSequence::Fibonacci => Ok(HoradamParams::fibonacci()),
        NamedSequence::Lucas => Ok(HoradamParams::lucas()),
        NamedSequence::LucasU(p, q) => {
            HoradamParams::new(int(0), int(1), p.clone(), q.clone())
        }
        NamedSequence::LucasV(p, q) => HoradamParams::new(int(2), p.clone(), p.clone(), q.clone()),
        NamedSequence::USmall(q) => HoradamParams::new(int(0), int(1), int(1), q.clone()),
        NamedSequence::VSmall(q) => HoradamParams::new(int(2), int(1), int(1), q.clone()),
    }
}

#[derive(Debug)]
struct Terms {
    // forward[j] = w_j for j >= 0, backward[n] = w_{-n} for n >= 1 (slot 0 unused).
    forward: Vec<ExactScalar>,
    backward: Vec<ExactScalar>,
}

/// A Horadam sequence with an append-only term cache.
///
/// Reads take a shared lock; extension takes the write lock and only pushes,
/// so concurrent readers never observe a partially computed prefix.
#[derive(Debug)]
pub struct Sequence {
    params: HoradamParams,
    terms: RwLock<Terms>,
}

impl Clone for Sequence {
    fn clone(&self) -> Self {
        let terms = self.terms.read().unwrap();
        Self {
            params: self.params.clone(),
            terms: RwLock::new(Terms {
                forward: terms.forward.clone(),
                backward: terms.backward.clone(),
            }),
        }
    }
}

impl Sequence {
    pub fn new(params: HoradamParams) -> Self {
        let forward = vec![params.a.clone(), params.b.clone()];
        let backward = vec![ExactScalar::zero()];
        Self {
            params,
            terms: RwLock::new(Terms { forward, backward }),
        }
    }

    pub fn params(&self) -> &HoradamParams {
        &self.params
    }

    /// `w_j`, extending the cache as needed.
    pub fn term(&self, j: i64) -> ExactScalar {
        if let Some(v) = self.lookup(j) {
            return v;
        }
        let mut terms = self.terms.write().unwrap();
        let HoradamParams { p, q, .. } = &self.params;
        if j >= 0 {
            let forward = &mut terms.forward;
            while forward.len() <= j as usize {
                let k = forward.len();
                let next = p * &forward[k - 1] - q * &forward[k - 2];
                forward.push(next);
            }
            terms.forward[j as usize].clone()
        } else {
            let n = j.unsigned_abs() as usize;
            while terms.backward.len() <= n {
                let k = terms.backward.len();
                // w_{-k} = (p w_{-k+1} - w_{-k+2}) / q
                let prev1 = if k == 1 { terms.forward[0].clone() } else { terms.backward[k - 1].clone() };
                let prev2 = match k {
                    1 => terms.forward[1].clone(),
                    2 => terms.forward[0].clone(),
                    _ => terms.backward[k - 2].clone(),
                };
                let next = (p * prev1 - prev2) / q;
                terms.backward.push(next);
            }
            terms.backward[n].clone()
        }
    }

    fn lookup(&self, j: i64) -> Option<ExactScalar> {
        let terms = self.terms.read().unwrap();
        if j >= 0 {
            terms.forward.get(j as usize).cloned()
        } else {
            terms.backward.get(j.unsigned_abs() as usize).cloned()
        }
    }

    /// Number of cached terms on each side of zero: `(non-negative, negative)`.
    pub fn cached_span(&self) -> (usize, usize) {
        let terms = self.terms.read().unwrap();
        (terms.forward.len(), terms.backward.len() - 1)
    }
}

/// One-shot `w_j` without keeping the cache.
pub fn horadam_term(params: &HoradamParams, j: i64) -> ExactScalar {
    Sequence::new(params.clone()).term(j)
}
