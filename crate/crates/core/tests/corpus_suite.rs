use std::path::PathBuf;

use hnp_core::corpus::{load_corpus, run_corpus_suite, suite_csv, SuiteConfig};

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

#[test]
fn bundled_corpus_passes_every_check() {
    let corpus = load_corpus(&corpus_dir()).unwrap();
    assert!(corpus.len() >= 20);
    let rows = run_corpus_suite(&corpus, &SuiteConfig::default());
    let failing: Vec<_> = rows.iter().filter(|r| !r.pass).collect();
    assert!(failing.is_empty(), "{}", suite_csv(&rows));
}

fn copy_corpus(to: &std::path::Path) {
    for entry in std::fs::read_dir(corpus_dir()).unwrap() {
        let p = entry.unwrap().path();
        std::fs::copy(&p, to.join(p.file_name().unwrap())).unwrap();
    }
}

#[test]
fn a_single_mislabeled_file_fails_exactly_its_row() {
    let dir = tempfile::tempdir().unwrap();
    copy_corpus(dir.path());
    let labels = dir.path().join("labels.csv");
    let text = std::fs::read_to_string(&labels).unwrap();
    let flipped = text.replace("yx_y2x,UNSAT", "yx_y2x,SAT");
    assert_ne!(text, flipped);
    std::fs::write(&labels, flipped).unwrap();

    let rows = run_corpus_suite(&load_corpus(dir.path()).unwrap(), &SuiteConfig::default());
    let failing: Vec<&str> = rows.iter().filter(|r| !r.pass).map(|r| r.name.as_str()).collect();
    assert_eq!(failing, vec!["yx_y2x"]);
    let row = rows.iter().find(|r| r.name == "yx_y2x").unwrap();
    assert!(!row.label_ok && row.randomized_ok && row.certificate_ok);
}

#[test]
fn empty_corpus_gives_an_empty_table() {
    let dir = tempfile::tempdir().unwrap();
    let rows = run_corpus_suite(&load_corpus(dir.path()).unwrap(), &SuiteConfig::default());
    assert!(rows.is_empty());
    assert_eq!(suite_csv(&rows).lines().count(), 1);
}

#[test]
fn unlabeled_or_orphaned_entries_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("a.sys"), "params x\nvars y\neq y - x\n").unwrap();
    assert!(load_corpus(dir.path()).is_err());
    std::fs::write(dir.path().join("labels.csv"), "name,label,provenance\na,SAT,linear\nb,UNSAT,missing\n").unwrap();
    assert!(load_corpus(dir.path()).is_err());
    std::fs::write(dir.path().join("labels.csv"), "name,label,provenance\na,SAT,linear\n").unwrap();
    assert_eq!(load_corpus(dir.path()).unwrap().len(), 1);
}

#[test]
fn corpus_files_are_in_canonical_form() {
    use hnp_core::sysio::{parse_system, render_system};
    for entry in load_corpus(&corpus_dir()).unwrap() {
        let text = std::fs::read_to_string(corpus_dir().join(format!("{}.sys", entry.name))).unwrap();
        let once = render_system(&parse_system(&text).unwrap());
        assert_eq!(render_system(&parse_system(&once).unwrap()), once, "{}", entry.name);
        assert_eq!(once, text, "{}", entry.name);
    }
}

#[test]
fn corpus_shape_limits() {
    for e in load_corpus(&corpus_dir()).unwrap() {
        let s = &e.system;
        assert!(s.m() <= 2 && s.n() <= 3, "{}", e.name);
        assert!(s.polys.iter().all(|f| f.degree().finite().unwrap_or(0) <= 4), "{}", e.name);
    }
}
