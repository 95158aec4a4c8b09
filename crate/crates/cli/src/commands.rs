use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::json;

use hnp_core::algebraic::{
    check_witness, coefficients_in, discriminant, minpoly_sum, primitive_element, resultant, specialize_witness,
    SolutionWitness, UnivarPoly,
};
use hnp_core::certificate::{find_certificate, verify_certificate, NullstellensatzCertificate};
use hnp_core::corpus::{load_corpus, run_corpus_suite, suite_csv, SuiteConfig};
use hnp_core::groebner::{hn_decide, hnp_decide_elimination};
use hnp_core::modp::{density_csv, hn_decide_modp, prime_density_report, PrimeSamplerConfig};
use hnp_core::normalize::normalize_system;
use hnp_core::poly::{clear_rational, to_rational};
use hnp_core::reduction::{
    equisat_experiment, hnp_decide_randomized, identity_lemma_check, DMode, EquisatConfig, ReductionConfig, SampleMode,
};
use hnp_core::sysio::{parse_integral_system, parse_polynomial, render_polynomial, render_system, DecisionReport};
use hnp_core::{Budget, Error, Integer, Polynomial, PolynomialSystem, PrimeField, PrimeFieldElem, Rational};

use crate::{AlgCmd, CertCmd, Cmd, ExperimentCmd, HnCmd, HnpCmd, ReductionArgs, VarArgs};

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_system(path: &Path) -> Result<PolynomialSystem> {
    let text = read(path)?;
    parse_integral_system(&text).with_context(|| format!("parsing {}", path.display()))
}

/// A system without parameters, as the parameter-free oracles expect.
fn read_plain_system(path: &Path) -> Result<PolynomialSystem> {
    let s = read_system(path)?;
    if s.m() > 0 {
        bail!(Error::Config("system has parameters; use `hnp decide-elim` or `hnp decide`".into()));
    }
    Ok(s)
}

fn instance(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

/// `lo..hi`, both ends included.
fn prime_range(s: &str) -> Result<(u64, u64)> {
    let (lo, hi) = s.split_once("..").with_context(|| format!("expected lo..hi, got {s:?}"))?;
    Ok((lo.trim().parse()?, hi.trim().parse()?))
}

fn names(list: &str) -> Vec<String> {
    list.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect()
}

fn json_string(v: serde_json::Value) -> String {
    serde_json::to_string_pretty(&v).expect("values serialize")
}

pub fn run(cmd: Cmd, budget: &Budget) -> Result<String> {
    let budget = budget.clone();
    match cmd {
        Cmd::Normalize { file, json } => {
            let (ns, map) = normalize_system(&read_system(&file)?);
            let map: serde_json::Value = serde_json::from_str(&map.to_json())?;
            let text = render_system(&ns);
            Ok(if json {
                json_string(json!({ "system": text, "map": map }))
            } else {
                format!("{text}# map {map}\n")
            })
        }
        Cmd::Hn(c) => hn(c, &budget),
        Cmd::Hnp(c) => hnp(c, &budget),
        Cmd::Cert(c) => cert(c, &budget),
        Cmd::Alg(c) => alg(c),
        Cmd::Experiment(c) => experiment(c, &budget),
        Cmd::Suite { corpus, d, trials, seed } => {
            let entries = load_corpus(&corpus)?;
            let rows = run_corpus_suite(&entries, &SuiteConfig { d, trials, seed, budget, ..Default::default() });
            let failed = rows.iter().filter(|r| !r.pass).count();
            eprintln!("{} instances, {} passed, {} failed", rows.len(), rows.len() - failed, failed);
            Ok(suite_csv(&rows))
        }
    }
}

fn hn(cmd: HnCmd, budget: &Budget) -> Result<String> {
    match cmd {
        HnCmd::Decide { file, field } => {
            let s = read_plain_system(&file)?;
            let (answer, oracle) = if field == "q" {
                let q: Vec<_> = s.polys.iter().map(to_rational).collect();
                (hn_decide(&q, budget)?, "groebner/Q".to_string())
            } else if let Some(p) = field.strip_prefix("fp:") {
                let f = PrimeField::new(p.parse().with_context(|| format!("bad prime {p:?}"))?)?;
                let red: Vec<Polynomial<PrimeFieldElem>> =
                    s.polys.iter().map(|g| g.map_coeffs(|c| f.from_integer(c))).filter(|g| !g.is_zero()).collect();
                (hn_decide(&red, budget)?, format!("groebner/closure of F_{}", f.modulus()))
            } else {
                bail!(Error::Config(format!("unknown field {field:?}; expected q or fp:<p>")));
            };
            Ok(DecisionReport { instance: instance(&file), answer, oracle, witness: None, certificate: None, elapsed_ms: None }
                .to_json())
        }
        HnCmd::DecideModp { file, primes, samples, tau, seed } => {
            let s = read_plain_system(&file)?;
            let (lo, hi) = prime_range(&primes)?;
            let tau: Rational = tau.parse().map_err(|_| Error::Config(format!("bad threshold {tau:?}")))?;
            let cfg = PrimeSamplerConfig { lo, hi, sample_count: samples, tau, seed };
            Ok(serde_json::to_string_pretty(&hn_decide_modp(&s.polys, &cfg, budget)?)?)
        }
        HnCmd::PrimeDensity { file, primes } => {
            let s = read_plain_system(&file)?;
            let (lo, hi) = prime_range(&primes)?;
            Ok(density_csv(&prime_density_report(&s.polys, lo, hi, budget)?))
        }
    }
}

fn reduction_config(a: ReductionArgs, budget: &Budget) -> Result<ReductionConfig> {
    let d_mode = match (a.d, a.bound_c) {
        (_, Some(c)) => DMode::Bound { c },
        (Some(d), None) => DMode::Explicit(d.parse::<Integer>().map_err(|_| Error::Config(format!("bad D {d:?}")))?),
        (None, None) => DMode::Explicit(Integer::from(1_000_000)),
    };
    Ok(ReductionConfig {
        d_mode,
        trials: a.trials,
        amplification: a.amplification,
        oracle: a.oracle.parse()?,
        seed: a.seed,
        budget: budget.clone(),
        modp: PrimeSamplerConfig { sample_count: Some(30), seed: a.seed, ..Default::default() },
    })
}

fn hnp(cmd: HnpCmd, budget: &Budget) -> Result<String> {
    match cmd {
        HnpCmd::DecideElim { file } => {
            let s = read_system(&file)?;
            let out = hnp_decide_elimination(&s, budget)?;
            let witness = out.witness.map(|w| render_polynomial(&w, &s.names()));
            Ok(DecisionReport {
                instance: instance(&file),
                answer: out.answer,
                oracle: "elimination".into(),
                witness,
                certificate: None,
                elapsed_ms: None,
            }
            .to_json())
        }
        HnpCmd::Decide { file, cfg } => {
            let s = read_system(&file)?;
            Ok(hnp_decide_randomized(&s, &reduction_config(cfg, budget)?)?.to_json())
        }
    }
}

fn cert(cmd: CertCmd, budget: &Budget) -> Result<String> {
    match cmd {
        CertCmd::Find { file } => {
            let s = read_system(&file)?;
            Ok(find_certificate(&s, budget)?.to_json(&s.names()))
        }
        CertCmd::Verify { file, cert } => {
            let s = read_system(&file)?;
            let c = NullstellensatzCertificate::from_json(&read(&cert)?, &s.names())?;
            match verify_certificate(&s, &c) {
                Ok(r) => Ok(serde_json::to_string_pretty(&r)?),
                // a certificate of the wrong shape is a failed check, not a usage error
                Err(Error::DimensionMismatch(why)) => Ok(json_string(json!({ "valid": false, "reason": why }))),
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn parse_in(text: &str, names: &[String]) -> Result<Polynomial<Rational>> {
    parse_polynomial(text, names).with_context(|| format!("parsing {text:?}"))
}

fn univariate(text: &str, var: &str) -> Result<UnivarPoly<Rational>> {
    let f = parse_in(text, &[var.to_string()])?;
    Ok(UnivarPoly::from_polynomial(&f, 0)?)
}

fn with_params(v: &VarArgs) -> (Vec<String>, usize) {
    let mut n = names(&v.params);
    n.push(v.var.clone());
    let idx = n.len() - 1;
    (n, idx)
}

fn alg(cmd: AlgCmd) -> Result<String> {
    match cmd {
        AlgCmd::Resultant { p, q, vars } => {
            let (n, idx) = with_params(&vars);
            let (p, q) = (parse_in(&p, &n)?, parse_in(&q, &n)?);
            let r = resultant(&coefficients_in(&p, idx), &coefficients_in(&q, idx))?;
            Ok(json_string(json!({ "resultant": render_polynomial(&r, &n) })))
        }
        AlgCmd::Disc { p, vars } => {
            let (n, idx) = with_params(&vars);
            let d = discriminant(&coefficients_in(&parse_in(&p, &n)?, idx))?;
            Ok(json_string(json!({ "discriminant": render_polynomial(&d, &n) })))
        }
        AlgCmd::MinpolySum { p, q, c, var } => {
            let m = minpoly_sum(&univariate(&p, &var)?, &univariate(&q, &var)?, &Integer::from(c))?;
            Ok(json_string(json!({ "c": c, "minpoly": m.render(&var) })))
        }
        AlgCmd::PrimElem { p, q, var } => {
            let (c, m) = primitive_element(&univariate(&p, &var)?, &univariate(&q, &var)?)?;
            Ok(json_string(json!({ "c": c, "minpoly": m.render(&var) })))
        }
        AlgCmd::WitnessCheck { file, witness, alpha } => {
            let s = read_system(&file)?;
            let w = SolutionWitness::from_json(&read(&witness)?, &s.params)?;
            let valid = check_witness(&s, &w)?;
            let mut out = json!({ "valid": valid });
            if let (true, Some(alpha)) = (valid, alpha) {
                let alpha: Vec<Integer> = names(&alpha)
                    .iter()
                    .map(|a| a.parse().map_err(|_| Error::Config(format!("bad parameter value {a:?}"))))
                    .collect::<std::result::Result<_, _>>()?;
                let sp = specialize_witness(&s, &w, &alpha)?;
                out["specialization"] = json!({
                    "alpha": alpha.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "b_nonzero": sp.b_nonzero,
                    "minpoly": sp.specialized_minpoly.render("t"),
                    "solution": sp.solution.map(|v| v.iter().map(|u| u.render("t")).collect::<Vec<_>>()),
                    "verified": sp.verified,
                });
            }
            Ok(json_string(out))
        }
    }
}

fn experiment(cmd: ExperimentCmd, budget: &Budget) -> Result<String> {
    match cmd {
        ExperimentCmd::Equisat { file, d, samples, seed, bound_c } => {
            let s = read_system(&file)?;
            let mode = samples.map_or(SampleMode::Exhaustive, |trials| SampleMode::Sampled { trials, seed });
            Ok(equisat_experiment(&s, &EquisatConfig { d, mode, bound_c, budget: budget.clone() })?.to_csv())
        }
        ExperimentCmd::IdentityLemma { poly, vars, lo, hi, samples, seed } => {
            let f = clear_rational(&parse_in(&poly, &names(&vars))?).1;
            let mode = samples.map_or(SampleMode::Exhaustive, |trials| SampleMode::Sampled { trials, seed });
            Ok(identity_lemma_check(&f, lo, hi, mode)?.to_csv())
        }
    }
}
