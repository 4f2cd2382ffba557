//! The script corpus: every file states its expected exit code in a
//! `# expect:` header (with the error class for parse errors) and may pass
//! extra command-line flags in an `# args:` header.

use std::fs;

use icm_lab::parse;

mod common;

use common::{corpus, golden_dir, run};

#[test]
fn corpus_has_fifty_scripts_covering_every_exit_code() {
    let cases = corpus();
    assert_eq!(cases.len(), 50);
    for code in 0..=3 {
        assert!(cases.iter().any(|c| c.exit == code), "no script exits with {code}");
    }
}

#[test]
fn printing_round_trips() {
    for case in corpus() {
        match parse(&case.source) {
            Ok(script) => {
                let printed = script.to_string();
                let again = parse(&printed).unwrap_or_else(|e| panic!("{}: reprint fails: {e}", case.name));
                assert_eq!(again, script, "{}", case.name);
                assert_eq!(again.to_string(), printed, "{}", case.name);
            }
            Err(e) => {
                assert_eq!(case.exit, 2, "{}: {e}", case.name);
                assert_eq!(Some(e.kind), case.class, "{}: {e}", case.name);
            }
        }
    }
}

#[test]
fn exit_codes_and_golden_json() {
    let golden_dir = golden_dir();
    let update = std::env::var_os("ICM_UPDATE_GOLDEN").is_some();
    for case in corpus() {
        let (code, text) = run(&case, false);
        assert_eq!(code, case.exit, "{} (text)", case.name);
        let (code, first) = run(&case, true);
        assert_eq!(code, case.exit, "{} (json)", case.name);
        let (_, second) = run(&case, true);
        assert_eq!(first, second, "{}: JSON differs between runs", case.name);
        if case.exit == 2 {
            assert!(text.is_empty() && first.is_empty());
            continue;
        }
        let golden = golden_dir.join(format!("{}.json", case.name));
        if update {
            fs::write(&golden, &first).unwrap();
        }
        let expected = fs::read_to_string(&golden).unwrap_or_else(|_| panic!("missing {}", golden.display()));
        assert_eq!(first, expected, "{}: JSON differs from golden file", case.name);
    }
}

#[test]
fn golden_text_for_two_planes() {
    let case = corpus().into_iter().find(|c| c.name == "01-two-planes-instance").unwrap();
    let (code, text) = run(&case, false);
    assert_eq!(code, 0);
    for line in ["grade = 0", "dim M = 3", "dim M/IM = 3", "I-Cohen-Macaulay: yes"] {
        assert!(text.lines().any(|l| l == line), "missing {line:?} in\n{text}");
    }
}
