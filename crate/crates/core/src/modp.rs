//! Heuristic HN oracle by prime counting: a system with integer
//! coefficients that is satisfiable over the algebraic numbers has points
//! modulo many primes, an unsatisfiable one modulo few. We sample primes,
//! decide each `F_p` instance exactly, and threshold the observed density.

use num_traits::{One, Zero};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{primes_in_range, Integer, PrimeFieldElem, Rational};
use crate::error::{Error, Result};
use crate::groebner::{hn_decide_fp_points, Budget};
use crate::poly::Polynomial;
use crate::sysio::to_csv;
use crate::Answer;

/// Widest prime range we are willing to sieve.
pub const MAX_PRIME_RANGE: u64 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeSamplerConfig {
    pub lo: u64,
    pub hi: u64,
    /// `None` uses every prime in the range.
    pub sample_count: Option<usize>,
    /// SAT iff the density of satisfiable primes is at least `tau`.
    pub tau: Rational,
    pub seed: u64,
}

impl Default for PrimeSamplerConfig {
    fn default() -> Self {
        Self {
            lo: 2,
            hi: 500,
            sample_count: None,
            tau: Rational::new(1.into(), 5.into()),
            seed: 0,
        }
    }
}

impl PrimeSamplerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.lo < 2 || self.hi < self.lo {
            return Err(Error::Config(format!("bad prime range {}..{}", self.lo, self.hi)));
        }
        if self.hi - self.lo > MAX_PRIME_RANGE {
            return Err(Error::BudgetExceeded(format!("prime range wider than {MAX_PRIME_RANGE}")));
        }
        if self.sample_count == Some(0) {
            return Err(Error::Config("sample count must be positive".into()));
        }
        if self.tau <= Rational::zero() || self.tau >= Rational::one() {
            return Err(Error::Config(format!("threshold {} not strictly between 0 and 1", self.tau)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeOutcome {
    pub p: u64,
    /// `None` when the per-prime computation ran out of budget.
    pub answer: Option<Answer>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModpReport {
    pub answer: Answer,
    #[serde(serialize_with = "ser_display")]
    pub density: Rational,
    #[serde(serialize_with = "ser_display")]
    pub tau: Rational,
    /// Primes that produced an answer, sorted ascending.
    pub per_prime: Vec<PrimeOutcome>,
    pub budget_failures: usize,
    /// Always true: agreement with the exact oracle is not guaranteed.
    pub heuristic: bool,
}

pub(crate) fn ser_display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Reduce an integer polynomial modulo `p`.
pub fn reduce_mod(f: &Polynomial<Integer>, p: u64) -> Polynomial<PrimeFieldElem> {
    f.map_coeffs(|c| PrimeFieldElem::from_integer(c, p))
}

/// Does the system have a point in `F_p^n`?
pub fn sat_mod_p(polys: &[Polynomial<Integer>], p: u64, budget: &Budget) -> Result<Answer> {
    let red: Vec<_> = polys.iter().map(|f| reduce_mod(f, p)).filter(|f| !f.is_zero()).collect();
    hn_decide_fp_points(&red, budget)
}

fn decide_all(polys: &[Polynomial<Integer>], primes: &[u64], budget: &Budget) -> Vec<PrimeOutcome> {
    let one = |&p: &u64| {
        let answer = match sat_mod_p(polys, p, budget) {
            Ok(a) => Some(a),
            Err(_) => None,
        };
        PrimeOutcome { p, answer }
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        primes.par_iter().map(one).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        primes.iter().map(one).collect()
    }
}

/// Sample distinct primes from the configured range and threshold the
/// fraction at which the system has an `F_p`-point.
pub fn hn_decide_modp(polys: &[Polynomial<Integer>], cfg: &PrimeSamplerConfig, budget: &Budget) -> Result<ModpReport> {
    cfg.validate()?;
    let all = primes_in_range(cfg.lo, cfg.hi);
    let mut chosen = match cfg.sample_count {
        None => all.clone(),
        Some(n) if n > all.len() => return Err(Error::TooFewPrimes { available: all.len(), requested: n }),
        Some(n) => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            sample(&mut rng, all.len(), n).into_iter().map(|i| all[i]).collect()
        }
    };
    if chosen.is_empty() {
        return Err(Error::TooFewPrimes { available: 0, requested: 1 });
    }
    chosen.sort_unstable();
    let outcomes = decide_all(polys, &chosen, budget);
    let budget_failures = outcomes.iter().filter(|o| o.answer.is_none()).count();
    let per_prime: Vec<PrimeOutcome> = outcomes.into_iter().filter(|o| o.answer.is_some()).collect();
    if per_prime.is_empty() {
        return Err(Error::BudgetExceeded("every sampled prime ran out of budget".into()));
    }
    let sat = per_prime.iter().filter(|o| o.answer == Some(Answer::Sat)).count();
    let density = Rational::new(sat.into(), per_prime.len().into());
    let answer = if density >= cfg.tau { Answer::Sat } else { Answer::Unsat };
    Ok(ModpReport { answer, density, tau: cfg.tau.clone(), per_prime, budget_failures, heuristic: true })
}

/// Exhaustive per-prime table over `[lo, hi]`.
pub fn prime_density_report(polys: &[Polynomial<Integer>], lo: u64, hi: u64, budget: &Budget) -> Result<Vec<PrimeOutcome>> {
    if hi.saturating_sub(lo) > MAX_PRIME_RANGE {
        return Err(Error::BudgetExceeded(format!("prime range wider than {MAX_PRIME_RANGE}")));
    }
    let primes = primes_in_range(lo.max(2), hi);
    let out = decide_all(polys, &primes, budget);
    if out.iter().any(|o| o.answer.is_none()) {
        let p = out.iter().find(|o| o.answer.is_none()).unwrap().p;
        return Err(Error::BudgetExceeded(format!("budget exhausted at p = {p}")));
    }
    Ok(out)
}

/// `p,sat` rows with `sat` in {true, false}.
pub fn density_csv(rows: &[PrimeOutcome]) -> String {
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|o| vec![o.p.to_string(), o.answer.map_or("budget".into(), |a| a.is_sat().to_string())])
        .collect();
    to_csv(&["p", "sat"], &body)
}
