//! Labelled benchmark systems and the suite that cross-checks every
//! decision procedure against them.
//!
//! A corpus is a directory of `<name>.sys` files plus `labels.csv` with
//! columns `name,label,provenance`. Labels live apart from the inputs so a
//! wrong label shows up as a failing row rather than a silently adjusted
//! expectation.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::arith::Integer;
use crate::certificate::{bounded_degree_search, find_certificate, verify_certificate};
use crate::error::{Error, Result};
use crate::groebner::{hnp_decide_elimination, Budget};
use crate::normalize::normalize_system;
use crate::reduction::{equisat_experiment, hnp_decide_randomized, DMode, EquisatConfig, ReductionConfig, SampleMode};
use crate::sysio::{parse_integral_system, to_csv};
use crate::system::PolynomialSystem;
use crate::Answer;

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub system: PolynomialSystem,
    pub label: Answer,
    pub provenance: String,
}

#[derive(Deserialize)]
struct LabelRow {
    name: String,
    label: Answer,
    #[serde(default)]
    provenance: String,
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Io { path: path.display().to_string(), message: e.to_string() }
}

/// Load every `.sys` file of `dir` with its label, sorted by name. A
/// directory with no systems and no labels is an empty corpus.
pub fn load_corpus(dir: &Path) -> Result<Vec<CorpusEntry>> {
    let mut files = BTreeMap::new();
    for entry in std::fs::read_dir(dir).map_err(|e| io_err(dir, e))? {
        let path = entry.map_err(|e| io_err(dir, e))?.path();
        if path.extension().is_some_and(|e| e == "sys") {
            let name = path.file_stem().unwrap().to_string_lossy().into_owned();
            files.insert(name, path);
        }
    }
    let labels_path = dir.join("labels.csv");
    let mut labels = BTreeMap::new();
    if labels_path.exists() {
        let mut rdr = csv::Reader::from_path(&labels_path).map_err(|e| io_err(&labels_path, e))?;
        for row in rdr.deserialize::<LabelRow>() {
            let row = row.map_err(|e| io_err(&labels_path, e))?;
            if labels.insert(row.name.clone(), (row.label, row.provenance)).is_some() {
                return Err(Error::Corpus(format!("duplicate label for {}", row.name)));
            }
        }
    }
    if let Some(name) = labels.keys().find(|n| !files.contains_key(*n)) {
        return Err(Error::Corpus(format!("label for {name} has no {name}.sys")));
    }
    files
        .into_iter()
        .map(|(name, path)| {
            let (label, provenance) =
                labels.remove(&name).ok_or_else(|| Error::Corpus(format!("{name}.sys has no label")))?;
            let text = std::fs::read_to_string(&path).map_err(|e| io_err(&path, e))?;
            let system = parse_integral_system(&text).map_err(|e| Error::Corpus(format!("{name}.sys: {e}")))?;
            Ok(CorpusEntry { name, system, label, provenance })
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// `D` and trial count for the randomized reduction.
    pub d: u64,
    pub trials: usize,
    pub seed: u64,
    /// Side of the exhaustive grid `{1..D}^m` for the specialization bound.
    pub exhaustive_d: u64,
    pub budget: Budget,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { d: 1_000_000, trials: 5, seed: crate::DEFAULT_SEED, exhaustive_d: 50, budget: Budget::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteRow {
    pub name: String,
    pub label: Answer,
    pub oracle: Option<Answer>,
    /// Elimination oracle agrees with the stored label.
    pub label_ok: bool,
    /// Randomized majority agrees with the oracle.
    pub randomized_ok: bool,
    /// Trials whose specialized answer differs from the oracle.
    pub trial_disagreements: usize,
    /// Exhaustive SAT fraction within `deg(a) / D`; vacuous for SAT.
    pub bound_ok: bool,
    /// Certificate found and verified (UNSAT), or absent (SAT); and the
    /// bounded search at `(2^k, k 2^k)` matches the answer when `k <= 3`.
    pub certificate_ok: bool,
    /// Degrees at most 2, coefficients in {-1, 0, 1}, same answer.
    pub normalization_ok: bool,
    pub pass: bool,
    pub detail: String,
}

fn check_instance(e: &CorpusEntry, cfg: &SuiteConfig) -> SuiteRow {
    let mut detail = Vec::new();
    let mut note = |what: &str, r: std::result::Result<bool, Error>| match r {
        Ok(ok) => {
            if !ok {
                detail.push(format!("{what} failed"));
            }
            ok
        }
        Err(err) => {
            detail.push(format!("{what}: {err}"));
            false
        }
    };
    let s = &e.system;
    let oracle = hnp_decide_elimination(s, &cfg.budget).map(|o| o.answer);
    let truth = oracle.as_ref().ok().copied();
    let label_ok = note("label", oracle.clone().map(|a| a == e.label));

    let (randomized_ok, trial_disagreements) = match truth {
        None => (false, 0),
        Some(t) => {
            let rc = ReductionConfig {
                d_mode: DMode::Explicit(Integer::from(cfg.d)),
                trials: cfg.trials,
                seed: cfg.seed,
                budget: cfg.budget.clone(),
                ..Default::default()
            };
            match hnp_decide_randomized(s, &rc) {
                Ok(tr) => {
                    let dis = tr.trials.iter().filter(|r| r.answer != Some(t)).count();
                    (note("randomized", Ok(tr.answer == t)), dis)
                }
                Err(err) => (note("randomized", Err(err)), 0),
            }
        }
    };

    let bound_ok = match truth {
        Some(Answer::Unsat) => {
            let ec = EquisatConfig { d: cfg.exhaustive_d, mode: SampleMode::Exhaustive, bound_c: None, budget: cfg.budget.clone() };
            note(
                "bound",
                equisat_experiment(s, &ec).map(|r| r.respects_bound && r.sat_off_certificate_zeros == Some(0)),
            )
        }
        Some(Answer::Sat) => true,
        None => false,
    };

    let certificate_ok = match truth {
        None => false,
        Some(t) => {
            let found = match t {
                Answer::Unsat => find_certificate(s, &cfg.budget).and_then(|c| verify_certificate(s, &c)).map(|r| r.valid),
                Answer::Sat => Ok(matches!(find_certificate(s, &cfg.budget), Err(Error::Precondition(_)))),
            };
            let found = note("certificate", found);
            let k = s.k() as u32;
            let bounded = if k <= 3 {
                let top = 1u64 << k;
                let r = bounded_degree_search(s, top, k as u64 * top, &cfg.budget).and_then(|c| match (t, c) {
                    (Answer::Unsat, Some(c)) => verify_certificate(s, &c).map(|r| r.valid),
                    (Answer::Sat, None) => Ok(true),
                    _ => Ok(false),
                });
                note("bounded search", r)
            } else {
                true
            };
            found && bounded
        }
    };

    let normalization_ok = {
        let (ns, _) = normalize_system(s);
        let shape = ns.polys.iter().all(|f| {
            f.degree().finite().unwrap_or(0) <= 2
                && f.terms().all(|(_, c)| c == &Integer::from(1) || c == &Integer::from(-1))
        });
        let same = hnp_decide_elimination(&ns, &cfg.budget).map(|o| Some(o.answer) == truth && truth.is_some());
        note("normalization", same.map(|ok| ok && shape))
    };

    let pass = label_ok && randomized_ok && bound_ok && certificate_ok && normalization_ok;
    SuiteRow {
        name: e.name.clone(),
        label: e.label,
        oracle: truth,
        label_ok,
        randomized_ok,
        trial_disagreements,
        bound_ok,
        certificate_ok,
        normalization_ok,
        pass,
        detail: detail.join("; "),
    }
}

/// Run every cross-check on every instance; rows are ordered by name.
pub fn run_corpus_suite(corpus: &[CorpusEntry], cfg: &SuiteConfig) -> Vec<SuiteRow> {
    #[cfg(feature = "parallel")]
    let mut rows: Vec<SuiteRow> = {
        use rayon::prelude::*;
        corpus.par_iter().map(|e| check_instance(e, cfg)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let mut rows: Vec<SuiteRow> = corpus.iter().map(|e| check_instance(e, cfg)).collect();
    rows.sort_by(|a, b| a.name.cmp(&b.name));
    rows
}

pub fn suite_csv(rows: &[SuiteRow]) -> String {
    let b = |v: bool| v.to_string();
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.name.clone(),
                r.label.to_string(),
                r.oracle.map_or("error".into(), |a| a.to_string()),
                b(r.label_ok),
                b(r.randomized_ok),
                r.trial_disagreements.to_string(),
                b(r.bound_ok),
                b(r.certificate_ok),
                b(r.normalization_ok),
                b(r.pass),
                r.detail.clone(),
            ]
        })
        .collect();
    to_csv(
        &[
            "name",
            "label",
            "oracle",
            "label_ok",
            "randomized_ok",
            "trial_disagreements",
            "bound_ok",
            "certificate_ok",
            "normalization_ok",
            "pass",
            "detail",
        ],
        &body,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn missing_directory_is_an_io_error() {
        assert!(matches!(load_corpus(Path::new("/nonexistent/corpus")), Err(Error::Io { .. })));
    }
}
