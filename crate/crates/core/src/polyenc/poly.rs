//! Multilinear polynomials over query indicators, in factored (signed
//! products of literals) and expanded normal form.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::int_serde;
use crate::polyenc::machine::OracleMachine;
use crate::polyenc::primes::is_prime;
use crate::word::Word;

/// `sign · ∏_{i ∈ pos} y_i · ∏_{i ∈ neg} (1 - y_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Monomial {
    pub sign: i8,
    pub pos: Vec<usize>,
    pub neg: Vec<usize>,
}

impl Monomial {
    pub fn literal_count(&self) -> usize {
        self.pos.len() + self.neg.len()
    }

    fn eval(&self, y: &[bool]) -> i64 {
        let on = self.pos.iter().all(|&i| y[i]) && self.neg.iter().all(|&i| !y[i]);
        if on {
            self.sign as i64
        } else {
            0
        }
    }
}

/// Variables are `y_0 .. y_{vars-1}`; `y_i` stands for the `i`-th universe
/// string.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MultilinearPoly {
    vars: usize,
    monomials: Vec<Monomial>,
    #[serde(skip)]
    normal: OnceLock<BTreeMap<Vec<usize>, BigInt>>,
}

impl PartialEq for MultilinearPoly {
    /// Equal as polynomials: same variable count and normal form.
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.normal_form() == other.normal_form()
    }
}

impl Eq for MultilinearPoly {}

/// Normal form as a JSON-friendly list of `(variables, coefficient)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub vars: Vec<usize>,
    #[serde(with = "int_serde::int")]
    pub coeff: BigInt,
}

impl MultilinearPoly {
    pub fn new(vars: usize, monomials: Vec<Monomial>) -> Result<Self> {
        for m in &monomials {
            let lits: BTreeSet<usize> = m.pos.iter().chain(&m.neg).copied().collect();
            if lits.len() != m.literal_count() {
                return Err(Error::Encoding("variable repeated in a monomial".into()));
            }
            if let Some(&i) = lits.iter().find(|&&i| i >= vars) {
                return Err(Error::Encoding(format!("variable {i} out of {vars}")));
            }
            if m.sign != 1 && m.sign != -1 {
                return Err(Error::Encoding(format!("sign {} is not ±1", m.sign)));
            }
        }
        Ok(MultilinearPoly {
            vars,
            monomials,
            normal: OnceLock::new(),
        })
    }

    /// Builds the factored form from coefficients by repeating `±∏ y_i`
    /// `|c|` times, so keep coefficients small.
    pub fn from_terms(vars: usize, terms: &BTreeMap<Vec<usize>, i64>) -> Result<Self> {
        let mut monomials = Vec::new();
        for (set, &c) in terms {
            for _ in 0..c.unsigned_abs() {
                monomials.push(Monomial {
                    sign: c.signum() as i8,
                    pos: set.clone(),
                    neg: vec![],
                });
            }
        }
        Self::new(vars, monomials)
    }

    /// `Σ_k coeffs[k] · e_k(y)`, with `e_k` the elementary symmetric
    /// polynomial of degree `k`.
    pub fn symmetric(vars: usize, coeffs: &[i64]) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (k, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                for set in (0..vars).combinations(k) {
                    terms.insert(set, c);
                }
            }
        }
        Self::from_terms(vars, &terms)
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// Expansion of the factored form; zero coefficients are dropped.
    pub fn normal_form(&self) -> &BTreeMap<Vec<usize>, BigInt> {
        self.normal.get_or_init(|| {
            let mut out: BTreeMap<Vec<usize>, BigInt> = BTreeMap::new();
            for m in &self.monomials {
                // (1 - y_j) over the negated literals: choose a subset S of
                // them, contributing (-1)^{|S|} ∏_{S} y_j.
                for k in 0..=m.neg.len() {
                    for sub in m.neg.iter().combinations(k) {
                        let mut vars: Vec<usize> = m.pos.iter().copied().chain(sub.into_iter().copied()).collect();
                        vars.sort_unstable();
                        let sign = if k % 2 == 0 { m.sign } else { -m.sign };
                        *out.entry(vars).or_insert_with(BigInt::zero) += sign as i64;
                    }
                }
            }
            out.retain(|_, c| !c.is_zero());
            out
        })
    }

    pub fn terms(&self) -> Vec<Term> {
        self.normal_form()
            .iter()
            .map(|(vars, coeff)| Term {
                vars: vars.clone(),
                coeff: coeff.clone(),
            })
            .collect()
    }

    /// Total degree of the normal form; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.normal_form().keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn factored_degree(&self) -> usize {
        self.monomials.iter().map(Monomial::literal_count).max().unwrap_or(0)
    }

    fn check_len(&self, y: &[bool]) -> Result<()> {
        if y.len() != self.vars {
            return Err(Error::LengthMismatch {
                expected: self.vars,
                got: y.len(),
            });
        }
        Ok(())
    }

    /// Evaluation at a 0/1 point through the factored form.
    pub fn eval(&self, y: &[bool]) -> Result<BigInt> {
        self.check_len(y)?;
        Ok(BigInt::from(self.monomials.iter().map(|m| m.eval(y)).sum::<i64>()))
    }

    pub fn eval_normal(&self, y: &[bool]) -> Result<BigInt> {
        self.check_len(y)?;
        Ok(self
            .normal_form()
            .iter()
            .filter(|(vars, _)| vars.iter().all(|&i| y[i]))
            .map(|(_, c)| c)
            .sum())
    }
}

/// `Σ_ρ sign(ρ) · mono(ρ)` over the valid paths of `m` on `x`.
pub fn encode(m: &OracleMachine, x: &Word) -> Result<MultilinearPoly> {
    let index: BTreeMap<&Word, usize> = m.universe().iter().enumerate().map(|(i, w)| (w, i)).collect();
    let lookup = |w: &Word| {
        index
            .get(w)
            .copied()
            .ok_or_else(|| Error::Encoding(format!("query {w:?} is outside the universe")))
    };
    let mut monomials = Vec::new();
    for p in m.valid_paths(x)? {
        monomials.push(Monomial {
            sign: p.sign,
            pos: p.path.qplus.iter().map(lookup).collect::<Result<_>>()?,
            neg: p.path.qminus.iter().map(lookup).collect::<Result<_>>()?,
        });
    }
    MultilinearPoly::new(m.universe().len(), monomials)
}

pub fn eval_poly(p: &MultilinearPoly, assignment: &[bool]) -> Result<BigInt> {
    p.eval(assignment)
}

/// Default brute-force limit on the universe size.
pub const MAX_ORACLE_VARS: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EncodingMismatch {
    /// Characteristic vector as a 0/1 string over the universe.
    pub oracle: String,
    #[serde(with = "int_serde::int")]
    pub poly: BigInt,
    #[serde(with = "int_serde::int")]
    pub direct: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EncodingReport {
    pub machine: String,
    pub input: Word,
    pub vars: usize,
    pub paths: usize,
    pub degree: usize,
    pub time_bound: u64,
    pub degree_ok: bool,
    pub oracles_checked: u64,
    pub mismatches: Vec<EncodingMismatch>,
}

impl EncodingReport {
    pub fn is_clean(&self) -> bool {
        self.degree_ok && self.mismatches.is_empty()
    }
}

/// Compares the encoding against direct oracle-resolved runs for all `2^m`
/// oracles over the universe, and checks `deg ≤ t(|x|)`.
pub fn verify_encoding(m: &OracleMachine, x: &Word, max_vars: usize) -> Result<EncodingReport> {
    let vars = m.universe().len();
    if vars > max_vars {
        return Err(Error::Resource(format!(
            "universe of {vars} strings exceeds the brute-force bound {max_vars}"
        )));
    }
    let p = encode(m, x)?;
    let mut mismatches = Vec::new();
    for mask in 0u64..1 << vars {
        let y: Vec<bool> = (0..vars).map(|i| mask >> i & 1 == 1).collect();
        let oracle: BTreeSet<Word> = m
            .universe()
            .iter()
            .zip(&y)
            .filter(|(_, &b)| b)
            .map(|(w, _)| w.clone())
            .collect();
        let poly = p.eval(&y)?;
        let direct = m.gap_with(x, &oracle)?;
        if poly != direct || p.eval_normal(&y)? != direct {
            mismatches.push(EncodingMismatch {
                oracle: y.iter().map(|&b| if b { '1' } else { '0' }).collect(),
                poly,
                direct,
            });
        }
    }
    let bound = m.time_bound().eval(x.len() as u64);
    Ok(EncodingReport {
        machine: m.name().to_string(),
        input: x.clone(),
        vars,
        paths: p.monomials().len(),
        degree: p.degree(),
        time_bound: bound,
        degree_ok: p.degree() as u64 <= bound,
        oracles_checked: 1 << vars,
        mismatches,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    PNotPrime,
    PAboveHalfN,
    DegreeTooHigh,
    /// `s(0, …, 0) ≠ 0`.
    Origin,
    /// `s` takes two values on weight-`p` points.
    NotConstant,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeDivisor {
    Divides(#[serde(with = "int_serde::int")] BigInt),
    HypothesisFailed(Hypothesis),
    /// All hypotheses hold yet `p ∤ val`. Never expected.
    Refuted(#[serde(with = "int_serde::int")] BigInt),
}

/// Default cap on weight-`p` points evaluated.
pub const PRIME_DIVISOR_BUDGET: u64 = 1_000_000;

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Checks the hypotheses of the prime-divisor lemma for `s` over `n`
/// variables, then whether `p` divides the common slice value.
pub fn check_prime_divisor(s: &MultilinearPoly, p: u64, n: usize, budget: u64) -> Result<PrimeDivisor> {
    if s.vars() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: s.vars(),
        });
    }
    if !is_prime(p) {
        return Ok(PrimeDivisor::HypothesisFailed(Hypothesis::PNotPrime));
    }
    if 2 * p > n as u64 {
        return Ok(PrimeDivisor::HypothesisFailed(Hypothesis::PAboveHalfN));
    }
    if s.degree() as u64 >= p {
        return Ok(PrimeDivisor::HypothesisFailed(Hypothesis::DegreeTooHigh));
    }
    if !s.eval(&vec![false; n])?.is_zero() {
        return Ok(PrimeDivisor::HypothesisFailed(Hypothesis::Origin));
    }
    let points = binomial(n as u64, p);
    if points > budget {
        return Err(Error::Budget { limit: budget });
    }
    let mut val: Option<BigInt> = None;
    for ones in (0..n).combinations(p as usize) {
        let mut y = vec![false; n];
        for i in ones {
            y[i] = true;
        }
        let v = s.eval(&y)?;
        match &val {
            None => val = Some(v),
            Some(w) if *w != v => return Ok(PrimeDivisor::HypothesisFailed(Hypothesis::NotConstant)),
            _ => {}
        }
    }
    let val = val.unwrap_or_else(BigInt::one);
    Ok(if val.is_multiple_of(&BigInt::from(p)) {
        PrimeDivisor::Divides(val)
    } else {
        PrimeDivisor::Refuted(val)
    })
}
