#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use icm_lab::ParseErrorKind;

pub struct Case {
    pub path: PathBuf,
    pub name: String,
    pub source: String,
    pub exit: i32,
    pub class: Option<ParseErrorKind>,
    pub args: Vec<String>,
}

pub fn corpus() -> Vec<Case> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus");
    let mut paths: Vec<PathBuf> = fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    paths.sort();
    paths
        .into_iter()
        .map(|path| {
            let source = fs::read_to_string(&path).unwrap();
            let header = |key: &str| {
                source.lines().find_map(|l| l.strip_prefix(key)).map(str::trim).map(String::from)
            };
            let expect = header("# expect:").expect("corpus file without expectation");
            let mut words = expect.split_whitespace();
            let exit = words.next().unwrap().parse().unwrap();
            let class = words.next().map(|c| match c {
                "lexical" => ParseErrorKind::Lexical,
                "syntax" => ParseErrorKind::Syntax,
                "undeclared" => ParseErrorKind::Undeclared,
                "arity" => ParseErrorKind::Arity,
                other => panic!("unknown error class {other}"),
            });
            let args = header("# args:").map(|a| a.split_whitespace().map(String::from).collect()).unwrap_or_default();
            let name = path.file_stem().unwrap().to_string_lossy().into_owned();
            Case { path, name, source, exit, class, args }
        })
        .collect()
}

pub fn run(case: &Case, json: bool) -> (i32, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_icm-lab"));
    cmd.arg("run").arg(&case.path).args(&case.args).env_remove("ICM_STEP_LIMIT");
    if json {
        cmd.arg("--json");
    }
    let out = cmd.output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}
