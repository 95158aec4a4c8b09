//! Randomized reduction from the parametric problem to the plain one:
//! substitute parameters drawn uniformly from `{1..D}` and decide the
//! resulting integer system. Also the experiment harness that measures
//! how often a specialization flips the answer, and an exact or sampled
//! checker for the Schwartz-Zippel bound.

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{Integer, Rational};
use crate::certificate::find_certificate;
use crate::error::{Error, Result};
use crate::groebner::{hn_decide, Budget};
use crate::modp::{hn_decide_modp, ser_display, PrimeSamplerConfig};
use crate::poly::{to_rational, Polynomial};
use crate::sysio::to_csv;
use crate::system::PolynomialSystem;
use crate::Answer;

/// Largest exponent `e` for which `3 * 2^e` is materialised.
pub const MAX_D_EXPONENT: u64 = 1 << 24;

/// Cap on the number of points visited by an exhaustive enumeration.
pub const MAX_ENUMERATION: u64 = 4_000_000;

/// Bounds `lo <= log2(s) <= hi` with `hi - lo <= 2^-prec`, or the exact
/// value when `s` is a power of two.
fn log2_bounds(s: u64, prec: u32) -> (Rational, Rational) {
    let k = 63 - s.leading_zeros();
    let int = Rational::from_integer(k.into());
    if s.is_power_of_two() {
        return (int.clone(), int);
    }
    // fixed point with `frac` fractional bits, one copy rounded down and
    // one rounded up; squaring the mantissa reveals one bit at a time
    let frac = prec as usize + 64;
    let unit = BigUint::one() << frac;
    let two = &unit << 1;
    let mut lo = (BigUint::from(s) << frac) >> k;
    let mut hi = lo.clone();
    let mut bits = BigUint::zero();
    let mut known = 0u32;
    while known < prec {
        lo = (&lo * &lo) >> frac;
        hi = (&hi * &hi + &unit - 1u32) >> frac;
        let bit = if lo >= two {
            lo >>= 1;
            hi = (hi + 1u32) >> 1;
            1u32
        } else if hi < two {
            0
        } else {
            break;
        };
        bits = (bits << 1) | BigUint::from(bit);
        known += 1;
    }
    let scale = Rational::from_integer(Integer::one() << known);
    let low = int + Rational::from_integer(bits.into()) / &scale;
    let high = &low + scale.recip();
    (low, high)
}

/// `ceil((s * log2 s)^c)`, exactly.
pub fn bound_exponent(s: u64, c: u32) -> Integer {
    if s <= 1 {
        return Integer::zero();
    }
    let sr = Rational::from_integer(s.into());
    let mut prec = 64;
    loop {
        let (lo, hi) = log2_bounds(s, prec);
        let lo = (&sr * lo).pow(c as i32).ceil().to_integer();
        let hi = (&sr * hi).pow(c as i32).ceil().to_integer();
        // log2 s is irrational unless s is a power of two, so the bounds
        // eventually share a ceiling; past the cap we round up
        if lo == hi || prec >= 1 << 14 {
            return hi;
        }
        prec *= 2;
    }
}

/// `D = 3 * 2^ceil((s log2 s)^c)`, with `D = 3` for `s <= 1`.
pub fn compute_d(s: u64, c: u32) -> Result<Integer> {
    let e = bound_exponent(s, c);
    match e.to_u64() {
        Some(e) if e <= MAX_D_EXPONENT => Ok(Integer::from(3u8) << e),
        _ => Err(Error::BudgetExceeded(format!("D = 3 * 2^{e} is too large to represent"))),
    }
}

/// The random stream for one trial, independent of scheduling.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// `m` independent uniform draws from `{1..D}`.
pub fn sample_alpha<R: Rng + ?Sized>(m: usize, d: &Integer, rng: &mut R) -> Result<Vec<Integer>> {
    if d < &Integer::one() {
        return Err(Error::Config(format!("D must be positive, got {d}")));
    }
    let hi = d + 1u8;
    Ok((0..m).map(|_| rng.gen_bigint_range(&Integer::one(), &hi)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DMode {
    Explicit(Integer),
    /// `D` from the size formula with the given constant.
    Bound { c: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleKind {
    Groebner,
    Modp,
}

impl std::str::FromStr for OracleKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "groebner" => Ok(Self::Groebner),
            "modp" => Ok(Self::Modp),
            _ => Err(Error::Config(format!("unknown oracle {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReductionConfig {
    pub d_mode: DMode,
    pub trials: usize,
    /// Repetitions of the heuristic oracle; the exact oracle ignores it.
    pub amplification: usize,
    pub oracle: OracleKind,
    pub seed: u64,
    pub budget: Budget,
    pub modp: PrimeSamplerConfig,
}

impl Default for ReductionConfig {
    fn default() -> Self {
        Self {
            d_mode: DMode::Explicit(Integer::from(1_000_000)),
            trials: 5,
            amplification: 4,
            oracle: OracleKind::Groebner,
            seed: 0,
            budget: Budget::default(),
            modp: PrimeSamplerConfig { sample_count: Some(30), ..Default::default() },
        }
    }
}

impl ReductionConfig {
    pub fn resolve_d(&self, s: usize) -> Result<Integer> {
        let d = match &self.d_mode {
            DMode::Explicit(d) => d.clone(),
            DMode::Bound { c } => {
                if *c == 0 {
                    return Err(Error::Config("the constant c must be at least 1".into()));
                }
                compute_d(s as u64, *c)?
            }
        };
        if d < Integer::one() {
            return Err(Error::Config(format!("D must be positive, got {d}")));
        }
        Ok(d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub index: usize,
    #[serde(serialize_with = "ser_integers")]
    pub alpha: Vec<Integer>,
    /// `None` when the oracle gave no usable answer.
    pub answer: Option<Answer>,
    pub budget_exceeded: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn ser_integers<S: serde::Serializer>(v: &[Integer], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfigEcho {
    pub d_mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<u32>,
    #[serde(serialize_with = "ser_display")]
    pub d: Integer,
    pub trials: usize,
    pub amplification: usize,
    pub oracle: OracleKind,
    pub seed: u64,
}

/// Error arithmetic of the reduction for a given `s`, `D` and `l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErrorBounds {
    /// `min(1, s 2^s / D)`: chance an unsatisfiable system specializes to
    /// a satisfiable one.
    #[serde(serialize_with = "ser_display")]
    pub unsat_flip: Rational,
    /// `2^-l`: false-positive rate of the amplified inner test.
    #[serde(serialize_with = "ser_display")]
    pub oracle_false_positive: Rational,
    /// `(1 - unsat_flip)(1 - 2^-l)`.
    #[serde(serialize_with = "ser_display")]
    pub unsat_correct: Rational,
    /// `max(0, 1 - 2^e / D)` with `e = ceil((s log2 s)^c)`, when `c` is known.
    #[serde(serialize_with = "ser_opt_display", skip_serializing_if = "Option::is_none")]
    pub sat_correct: Option<Rational>,
    /// Whether `D >= 4 s 2^s`, which makes `unsat_correct >= 45/64`.
    pub d_large_enough: bool,
}

fn ser_opt_display<T: std::fmt::Display, S: serde::Serializer>(v: &Option<T>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.collect_str(x),
        None => s.serialize_none(),
    }
}

fn s_two_pow_s(s: usize) -> Integer {
    Integer::from(s) << s
}

pub fn error_bounds(s: usize, d: &Integer, amplification: usize, c: Option<u32>) -> ErrorBounds {
    let dq = Rational::from_integer(d.clone());
    let flip = (Rational::from_integer(s_two_pow_s(s)) / &dq).min(Rational::one());
    let fp = Rational::new(Integer::one(), Integer::one() << amplification);
    let unsat_correct = (Rational::one() - &flip) * (Rational::one() - &fp);
    let sat_correct = c.map(|c| {
        let e = bound_exponent(s as u64, c).to_usize().unwrap_or(usize::MAX);
        if e > MAX_D_EXPONENT as usize {
            return Rational::zero();
        }
        (Rational::one() - Rational::from_integer(Integer::one() << e) / &dq).max(Rational::zero())
    });
    ErrorBounds {
        unsat_flip: flip,
        oracle_false_positive: fp,
        unsat_correct,
        sat_correct,
        d_large_enough: d >= &(s_two_pow_s(s) * 4u8),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecisionTranscript {
    pub answer: Answer,
    pub sat_votes: usize,
    pub unsat_votes: usize,
    pub excluded: usize,
    pub config: ConfigEcho,
    pub error_bounds: ErrorBounds,
    pub trials: Vec<TrialRecord>,
}

impl DecisionTranscript {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("transcript serializes")
    }
}

/// Majority vote with ties going to UNSAT.
fn majority(sat: usize, unsat: usize) -> Answer {
    if sat > unsat {
        Answer::Sat
    } else {
        Answer::Unsat
    }
}

fn map_indexed<T: Send, F: Fn(usize) -> T + Sync + Send>(n: usize, f: F) -> Vec<T> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

fn count_where<F: Fn(u64) -> bool + Sync + Send>(n: u64, f: F) -> u64 {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().filter(|&i| f(i)).count() as u64
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).filter(|&i| f(i)).count() as u64
    }
}

fn decide_specialized(
    polys: &[Polynomial<Integer>],
    cfg: &ReductionConfig,
    trial: usize,
) -> Result<Answer> {
    match cfg.oracle {
        OracleKind::Groebner => {
            let q: Vec<_> = polys.iter().map(to_rational).collect();
            hn_decide(&q, &cfg.budget)
        }
        OracleKind::Modp => {
            let reps = cfg.amplification.max(1);
            let mut sat = 0;
            for r in 0..reps {
                let seed = trial_rng(cfg.modp.seed ^ cfg.seed, ((trial as u64) << 16) | r as u64).gen();
                let mcfg = PrimeSamplerConfig { seed, ..cfg.modp.clone() };
                if hn_decide_modp(polys, &mcfg, &cfg.budget)?.answer.is_sat() {
                    sat += 1;
                }
            }
            Ok(majority(sat, reps - sat))
        }
    }
}

/// Draw `alpha`, specialize, ask the configured oracle; repeat and take
/// the majority.
pub fn hnp_decide_randomized(system: &PolynomialSystem, cfg: &ReductionConfig) -> Result<DecisionTranscript> {
    if cfg.trials == 0 {
        return Err(Error::Config("at least one trial is required".into()));
    }
    let s = system.size();
    let d = cfg.resolve_d(s)?;
    let m = system.m();
    let trials = map_indexed(cfg.trials, |i| {
        let mut rng = trial_rng(cfg.seed, i as u64);
        let alpha = sample_alpha(m, &d, &mut rng).expect("D validated");
        let result = system.specialize(&alpha).and_then(|sp| decide_specialized(&sp.polys, cfg, i));
        let (answer, budget_exceeded, error) = match result {
            Ok(a) => (Some(a), false, None),
            Err(e @ Error::BudgetExceeded(_)) => (None, true, Some(e.to_string())),
            Err(e) => (None, false, Some(e.to_string())),
        };
        TrialRecord { index: i, alpha, answer, budget_exceeded, error }
    });
    let sat_votes = trials.iter().filter(|t| t.answer == Some(Answer::Sat)).count();
    let unsat_votes = trials.iter().filter(|t| t.answer == Some(Answer::Unsat)).count();
    let excluded = trials.len() - sat_votes - unsat_votes;
    if excluded == trials.len() {
        return Err(Error::BudgetExceeded("no trial produced an answer".into()));
    }
    let c = match cfg.d_mode {
        DMode::Bound { c } => Some(c),
        DMode::Explicit(_) => None,
    };
    Ok(DecisionTranscript {
        answer: majority(sat_votes, unsat_votes),
        sat_votes,
        unsat_votes,
        excluded,
        error_bounds: error_bounds(s, &d, cfg.amplification, c),
        config: ConfigEcho {
            d_mode: if c.is_some() { "bound" } else { "explicit" },
            c,
            d,
            trials: cfg.trials,
            amplification: cfg.amplification,
            oracle: cfg.oracle,
            seed: cfg.seed,
        },
        trials,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "mode")]
pub enum SampleMode {
    Exhaustive,
    Sampled { trials: u64, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct EquisatConfig {
    pub d: u64,
    pub mode: SampleMode,
    /// Enables the satisfiable-case bound `1 - 2^e / D`.
    pub bound_c: Option<u32>,
    pub budget: Budget,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquisatReport {
    pub d: u64,
    pub mode: SampleMode,
    /// Answer of the elimination oracle on the parametric system.
    pub parametric_answer: Answer,
    pub points: u64,
    pub sat_count: u64,
    pub budget_failures: u64,
    #[serde(serialize_with = "ser_display")]
    pub empirical_sat_fraction: Rational,
    /// `s 2^s / D`.
    #[serde(serialize_with = "ser_display")]
    pub size_bound: Rational,
    /// `deg(a) / D` for the certificate's `a`.
    #[serde(serialize_with = "ser_opt_display")]
    pub exact_bound: Option<Rational>,
    pub certificate_degree: Option<u64>,
    /// `1 - 2^e / D`, a lower bound on the satisfiable fraction.
    #[serde(serialize_with = "ser_opt_display")]
    pub sat_lower_bound: Option<Rational>,
    /// Satisfiable specializations where `a` does not vanish; always 0
    /// for a sound oracle.
    pub sat_off_certificate_zeros: Option<u64>,
    pub respects_bound: bool,
}

impl EquisatReport {
    pub fn to_csv(&self) -> String {
        let opt = |v: &Option<Rational>| v.as_ref().map_or(String::new(), |r| r.to_string());
        let mode = match self.mode {
            SampleMode::Exhaustive => "exhaustive".to_string(),
            SampleMode::Sampled { trials, seed } => format!("sampled({trials};{seed})"),
        };
        to_csv(
            &[
                "D",
                "mode",
                "parametric",
                "points",
                "sat",
                "budget_failures",
                "sat_fraction",
                "size_bound",
                "exact_bound",
                "sat_lower_bound",
                "respects_bound",
            ],
            &[vec![
                self.d.to_string(),
                mode,
                self.parametric_answer.to_string(),
                self.points.to_string(),
                self.sat_count.to_string(),
                self.budget_failures.to_string(),
                self.empirical_sat_fraction.to_string(),
                self.size_bound.to_string(),
                opt(&self.exact_bound),
                opt(&self.sat_lower_bound),
                self.respects_bound.to_string(),
            ]],
        )
    }
}

/// Mixed-radix decode of `index` into a point of `{1..d}^m`.
fn decode_point(mut index: u64, m: usize, d: u64) -> Vec<Integer> {
    (0..m)
        .map(|_| {
            let v = index % d;
            index /= d;
            Integer::from(v + 1)
        })
        .collect()
}

fn enumeration_size(base: u64, m: usize) -> Result<u64> {
    let mut total = 1u64;
    for _ in 0..m {
        total = total.checked_mul(base).filter(|t| *t <= MAX_ENUMERATION).ok_or_else(|| {
            Error::BudgetExceeded(format!("{base}^{m} points exceed the enumeration cap {MAX_ENUMERATION}"))
        })?;
    }
    Ok(total)
}

/// `3 sigma` slack for a binomial proportion with success rate `p`.
fn binomial_slack(p: &Rational, n: u64) -> f64 {
    let p = p.to_f64().unwrap_or(1.0).clamp(0.0, 1.0);
    3.0 * (p * (1.0 - p) / n as f64).sqrt()
}

/// Measure how often specialization at `alpha in {1..D}^m` is
/// satisfiable, against the applicable bounds.
pub fn equisat_experiment(system: &PolynomialSystem, cfg: &EquisatConfig) -> Result<EquisatReport> {
    if cfg.d == 0 {
        return Err(Error::Config("D must be positive".into()));
    }
    let m = system.m();
    let (parametric_answer, cert) = match find_certificate(system, &cfg.budget) {
        Ok(c) => (Answer::Unsat, Some(c)),
        Err(Error::Precondition(_)) => (Answer::Sat, None),
        Err(e) => return Err(e),
    };
    let points = match cfg.mode {
        SampleMode::Exhaustive => enumeration_size(cfg.d, m)?,
        SampleMode::Sampled { trials, .. } if trials == 0 => {
            return Err(Error::Config("at least one trial is required".into()))
        }
        SampleMode::Sampled { trials, .. } => trials,
    };
    let dz = Integer::from(cfg.d);
    let alpha_at = |i: u64| match cfg.mode {
        SampleMode::Exhaustive => decode_point(i, m, cfg.d),
        SampleMode::Sampled { seed, .. } => sample_alpha(m, &dz, &mut trial_rng(seed, i)).expect("D positive"),
    };
    // 0 = unsat, 1 = sat with a(alpha) = 0, 2 = sat with a(alpha) != 0, 3 = budget
    let outcomes = map_indexed(points as usize, |i| {
        let alpha = alpha_at(i as u64);
        let q: Vec<_> = match system.specialize(&alpha) {
            Ok(sp) => sp.polys.iter().map(to_rational).collect(),
            Err(_) => return 3u8,
        };
        match hn_decide(&q, &cfg.budget) {
            Ok(Answer::Unsat) => 0,
            Ok(Answer::Sat) => match &cert {
                Some(c) if !c.a.eval(&alpha).is_zero() => 2,
                _ => 1,
            },
            Err(_) => 3,
        }
    });
    let budget_failures = outcomes.iter().filter(|&&o| o == 3).count() as u64;
    let sat_count = outcomes.iter().filter(|&&o| o == 1 || o == 2).count() as u64;
    let used = points - budget_failures;
    if used == 0 {
        return Err(Error::BudgetExceeded("every specialization ran out of budget".into()));
    }
    let frac = Rational::new(sat_count.into(), used.into());
    let dq = Rational::from_integer(dz.clone());
    let size_bound = Rational::from_integer(s_two_pow_s(system.size())) / &dq;
    let certificate_degree = cert.as_ref().and_then(|c| c.a.degree().finite());
    let exact_bound = certificate_degree.map(|k| Rational::new(k.into(), dz.clone()));
    let sat_lower_bound = match (parametric_answer, cfg.bound_c) {
        (Answer::Sat, Some(c)) => error_bounds(system.size(), &dz, 1, Some(c)).sat_correct,
        _ => None,
    };
    let exhaustive = cfg.mode == SampleMode::Exhaustive;
    let within = |bound: &Rational, upper: bool| {
        if exhaustive {
            if upper { &frac <= bound } else { &frac >= bound }
        } else {
            let slack = binomial_slack(bound, used);
            let (f, b) = (frac.to_f64().unwrap_or(0.0), bound.to_f64().unwrap_or(0.0));
            if upper { f <= b + slack } else { f >= b - slack }
        }
    };
    let respects_bound = match (&exact_bound, &sat_lower_bound) {
        (Some(b), _) => within(b, true),
        (None, Some(b)) => within(b, false),
        (None, None) => true,
    };
    Ok(EquisatReport {
        d: cfg.d,
        mode: cfg.mode,
        parametric_answer,
        points,
        sat_count,
        budget_failures,
        empirical_sat_fraction: frac,
        size_bound,
        exact_bound,
        certificate_degree,
        sat_lower_bound,
        sat_off_certificate_zeros: cert.map(|_| outcomes.iter().filter(|&&o| o == 2).count() as u64),
        respects_bound,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityLemmaReport {
    pub lo: i64,
    pub hi: i64,
    pub mode: SampleMode,
    pub points: u64,
    pub zeros: u64,
    #[serde(serialize_with = "ser_display")]
    pub zero_fraction: Rational,
    /// `deg(f) / |S|`.
    #[serde(serialize_with = "ser_display")]
    pub bound: Rational,
    pub holds: bool,
}

impl IdentityLemmaReport {
    pub fn to_csv(&self) -> String {
        to_csv(
            &["lo", "hi", "points", "zeros", "zero_fraction", "bound", "holds"],
            &[vec![
                self.lo.to_string(),
                self.hi.to_string(),
                self.points.to_string(),
                self.zeros.to_string(),
                self.zero_fraction.to_string(),
                self.bound.to_string(),
                self.holds.to_string(),
            ]],
        )
    }
}

/// Fraction of points of `{lo..hi}^n` where the nonzero `f` vanishes,
/// compared with `deg(f) / (hi - lo + 1)`.
pub fn identity_lemma_check(f: &Polynomial<Integer>, lo: i64, hi: i64, mode: SampleMode) -> Result<IdentityLemmaReport> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if hi < lo {
        return Err(Error::Config(format!("empty range {lo}..{hi}")));
    }
    let width = (hi - lo) as u64 + 1;
    let n = f.support_len();
    let deg = f.degree().finite().expect("nonzero");
    let terms: Vec<(Vec<u32>, Integer)> = f
        .terms()
        .map(|(mono, c)| ((0..n).map(|v| mono.exp(v)).collect(), c.clone()))
        .collect();
    let eval_at = |coords: &[i64]| -> bool {
        let mut acc = Integer::zero();
        for (exps, c) in &terms {
            let mut t = c.clone();
            for (v, &e) in exps.iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(Integer::from(coords[v]), e as usize);
                }
            }
            acc += t;
        }
        acc.is_zero()
    };
    let (points, zeros) = match mode {
        SampleMode::Exhaustive => {
            let total = enumeration_size(width, n)?;
            let zeros = count_where(total, |mut i| {
                let coords: Vec<i64> = (0..n)
                    .map(|_| {
                        let v = (i % width) as i64 + lo;
                        i /= width;
                        v
                    })
                    .collect();
                eval_at(&coords)
            });
            (total, zeros)
        }
        SampleMode::Sampled { trials, seed } => {
            if trials == 0 {
                return Err(Error::Config("at least one trial is required".into()));
            }
            let mut rng = trial_rng(seed, 0);
            let pts: Vec<Vec<i64>> = (0..trials).map(|_| (0..n).map(|_| rng.gen_range(lo..=hi)).collect()).collect();
            let zeros = count_where(trials, |i| eval_at(&pts[i as usize]));
            (trials, zeros)
        }
    };
    let zero_fraction = Rational::new(zeros.into(), points.into());
    let bound = Rational::new(deg.into(), width.into());
    let holds = match mode {
        SampleMode::Exhaustive => zero_fraction <= bound,
        SampleMode::Sampled { .. } => {
            let p = bound.clone().min(Rational::one());
            zero_fraction.to_f64().unwrap_or(1.0) <= p.to_f64().unwrap_or(1.0) + binomial_slack(&p, points)
        }
    };
    Ok(IdentityLemmaReport { lo, hi, mode, points, zeros, zero_fraction, bound, holds })
}
