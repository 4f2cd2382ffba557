//! Runs a parsed script against the engine.
//!
//! Exit codes: 0 success, 1 engine error, 2 parse error, 3 a `verify` query
//! found failures.

use std::collections::HashMap;

use icm_core::checker::{icm_report, is_cohen_macaulay_graded};
use icm_core::invariants::{
    associated_primes_monomial, grade, height, krull_dimension, minimal_primes_monomial, MonomialPrime,
};
use icm_core::lab::run_suite;
use icm_core::{CyclicModule, FieldSpec, Ideal, Monomial, Polynomial, Ring, RingRef, Settings, TermOrder};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::ast::*;
use crate::parser::parse;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ENGINE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Clone)]
pub struct Options {
    pub json: bool,
    pub settings: Settings,
    /// Trial count for `verify` queries that do not give one.
    pub trials: u64,
    /// Include wall times in `verify` output.
    pub timing: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { json: false, settings: Settings::default(), trials: 100, timing: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

pub fn run_source(source: &str, opts: &Options) -> Outcome {
    match parse(source) {
        Ok(script) => execute(&script, opts),
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), exit_code: EXIT_PARSE },
    }
}

struct Env {
    ring: Option<RingRef>,
    ideals: HashMap<String, Ideal>,
}

/// What a statement produced: nothing (declarations), or a query result
/// as text lines plus its JSON value.
struct Answer {
    text: Vec<String>,
    json: Value,
    verify_failed: bool,
}

pub fn execute(script: &Script, opts: &Options) -> Outcome {
    let mut env = Env { ring: None, ideals: HashMap::new() };
    let mut text = String::new();
    let mut results: Vec<Value> = Vec::new();
    let mut exit_code = EXIT_OK;
    let mut stderr = String::new();
    for stmt in &script.stmts {
        let (label, pos, result) = match stmt {
            Stmt::Ring(r) => (format!("ring {}", r.name), r.span.0, declare_ring(&mut env, r).map(|_| None)),
            Stmt::Ideal(d) => (format!("ideal {}", d.name), d.span.0, declare_ideal(&mut env, d).map(|_| None)),
            Stmt::Query(q) => (q.to_string(), q.span().0, answer(&env, q, opts).map(Some)),
        };
        match result {
            Ok(None) => {}
            Ok(Some(a)) => {
                text.push_str(&format!("> {label}\n"));
                for line in &a.text {
                    text.push_str(line);
                    text.push('\n');
                }
                results.push(json!({ "query": label, "result": a.json }));
                if a.verify_failed {
                    exit_code = EXIT_VERIFY;
                }
            }
            Err(e) => {
                stderr = format!("error in `{label}` at {pos}: {e}\n");
                exit_code = EXIT_ENGINE;
                break;
            }
        }
    }
    let stdout = if opts.json {
        let mut s = serde_json::to_string_pretty(&Value::Array(results)).unwrap();
        s.push('\n');
        s
    } else {
        text
    };
    Outcome { stdout, stderr, exit_code }
}

fn declare_ring(env: &mut Env, r: &RingDecl) -> icm_core::Result<()> {
    let field = match &r.field {
        FieldAst::Rationals => FieldSpec::Rationals,
        FieldAst::Prime(digits) => {
            let p: u64 = digits
                .parse()
                .map_err(|_| icm_core::Error::InvalidField(format!("modulus {digits} is not below 2^31")))?;
            FieldSpec::prime(p)?
        }
    };
    let order = match r.order {
        Some(OrderAst::Lex) => TermOrder::Lex,
        Some(OrderAst::Grevlex) | None => TermOrder::Grevlex,
    };
    env.ring = Some(Ring::new(field, r.vars.iter().cloned(), order)?);
    env.ideals.clear();
    Ok(())
}

fn to_polynomial(ring: &RingRef, p: &PolyAst) -> icm_core::Result<Polynomial> {
    let n = ring.nvars();
    let mut terms = Vec::new();
    for t in &p.terms {
        let mut exps = vec![0u32; n];
        for (var, e) in &t.factors {
            let v = ring.var_index(var).expect("names are resolved before execution");
            exps[v] = exps[v]
                .checked_add(*e)
                .ok_or_else(|| icm_core::Error::Precondition(format!("exponent of {var} overflows")))?;
        }
        terms.push((Monomial::new(exps), ring.field().from_rational(&t.coeff)?));
    }
    Ok(Polynomial::from_terms(ring, terms))
}

fn declare_ideal(env: &mut Env, d: &IdealDecl) -> icm_core::Result<()> {
    let ring = env.ring.clone().expect("names are resolved before execution");
    let s = Settings::default();
    let ideal = match &d.expr {
        IdealExpr::Generators(polys) => {
            let gens = polys.iter().map(|p| to_polynomial(&ring, p)).collect::<icm_core::Result<Vec<_>>>()?;
            Ideal::new(&ring, gens)?
        }
        IdealExpr::Op { op, args } => {
            let a = &env.ideals[&args[0]];
            let b = &env.ideals[&args[1]];
            match op {
                IdealOp::Intersect => a.intersect(b, &s)?,
                IdealOp::Sum => a.sum(b)?,
                IdealOp::Product => a.product(b)?,
                IdealOp::Colon => a.quotient_ideal(b, &s)?,
                IdealOp::Sat => a.saturate(b, &s)?.ideal,
            }
        }
    };
    env.ideals.insert(d.name.clone(), ideal);
    Ok(())
}

fn strings(polys: &[Polynomial]) -> Vec<String> {
    polys.iter().map(Polynomial::to_string).collect()
}

fn bracket(items: &[String]) -> String {
    format!("[{}]", items.join(", "))
}

fn primes(ring: &RingRef, ps: &[MonomialPrime]) -> Vec<String> {
    ps.iter().map(|p| p.display(ring).to_string()).collect()
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn plain(text: Vec<String>, json: Value) -> Answer {
    Answer { text, json, verify_failed: false }
}

fn answer(env: &Env, q: &Query, opts: &Options) -> icm_core::Result<Answer> {
    let s = &opts.settings;
    let (kind, args) = match q {
        Query::Verify { suite, trials, seed, .. } => return verify(suite, *trials, *seed, opts),
        Query::Ideal { kind, args, .. } => (*kind, args),
    };
    let ring = env.ring.clone().expect("names are resolved before execution");
    let a = &env.ideals[&args[0]];
    let b = args.get(1).map(|n| &env.ideals[n]);
    let (na, nb) = (&args[0], args.get(1).map(String::as_str).unwrap_or(""));
    Ok(match kind {
        QueryKind::Gb => {
            let basis = strings(a.groebner(s)?.basis());
            plain(vec![format!("gb {na} = {}", bracket(&basis))], json!({ "basis": basis }))
        }
        QueryKind::Dim => {
            let d = krull_dimension(&CyclicModule::new(a.clone(), s)?, s)?;
            plain(vec![format!("dim R/{na} = {d}")], json!({ "dim": d }))
        }
        QueryKind::Height => {
            let h = height(a, s)?;
            plain(vec![format!("height {na} = {h}")], json!({ "height": h }))
        }
        QueryKind::Ass => {
            let ps = primes(&ring, &associated_primes_monomial(a)?);
            plain(vec![format!("ass {na} = {}", bracket(&ps))], json!({ "associated_primes": ps }))
        }
        QueryKind::Minprimes => {
            let ps = primes(&ring, &minimal_primes_monomial(a)?);
            plain(vec![format!("minprimes {na} = {}", bracket(&ps))], json!({ "minimal_primes": ps }))
        }
        QueryKind::Cm => {
            let cm = is_cohen_macaulay_graded(&CyclicModule::new(a.clone(), s)?, s)?;
            plain(vec![format!("Cohen-Macaulay: {}", yes(cm))], json!({ "cohen_macaulay": cm }))
        }
        QueryKind::Grade => {
            let w = grade(&CyclicModule::new(a.clone(), s)?, b.unwrap(), s)?;
            let seq = strings(&w.sequence);
            plain(
                vec![
                    format!("grade = {}", w.value),
                    format!("witness = {}", bracket(&seq)),
                    format!("certificate exponent = {}", w.certificate.exponent),
                ],
                json!({ "grade": w.value, "witness": seq, "certificate_exponent": w.certificate.exponent }),
            )
        }
        QueryKind::Icm => {
            let rep = icm_report(&CyclicModule::new(a.clone(), s)?, b.unwrap(), s)?;
            let mut text = vec![
                format!("grade = {}", rep.grade),
                format!("dim M = {}", rep.dim_m),
                format!("dim M/IM = {}", rep.dim_m_mod_im),
                format!("defect = {}", rep.defect),
                format!("I-Cohen-Macaulay: {}", yes(rep.is_icm)),
                format!("witness = {}", bracket(&rep.witness)),
                format!("certificate exponent = {}", rep.certificate_exponent),
            ];
            if let Some(h) = rep.height_i {
                text.push(format!("height I = {h}"));
            }
            plain(text, serde_json::to_value(&rep).unwrap())
        }
        QueryKind::Colon => {
            let c = strings(a.quotient_ideal(b.unwrap(), s)?.canonical(s)?.generators());
            plain(vec![format!("{na} : {nb} = {}", bracket(&c))], json!({ "ideal": c }))
        }
        QueryKind::Sat => {
            let sat = a.saturate(b.unwrap(), s)?;
            let c = strings(sat.ideal.canonical(s)?.generators());
            plain(
                vec![format!("{na} : {nb}^inf = {}", bracket(&c)), format!("saturation exponent = {}", sat.exponent)],
                json!({ "ideal": c, "exponent": sat.exponent }),
            )
        }
        QueryKind::Intersect => {
            let c = strings(a.intersect(b.unwrap(), s)?.canonical(s)?.generators());
            plain(vec![format!("intersect {na} {nb} = {}", bracket(&c))], json!({ "ideal": c }))
        }
    })
}

fn verify(suite: &str, trials: Option<u64>, seed: Option<u64>, opts: &Options) -> icm_core::Result<Answer> {
    let trials = trials.unwrap_or(opts.trials);
    let seed = seed.unwrap_or(opts.settings.seed);
    let report = run_suite(suite, trials as usize, seed, &opts.settings)?;
    let mut text = vec![format!(
        "suite {suite}: trials {}, passed {}, skipped {}",
        report.trials, report.passed, report.skipped_hypothesis
    )];
    text.push(format!("failures: {}", report.failures.len()));
    for f in &report.failures {
        text.push(format!("failure at seed {}:", f.seed));
        if let Some(e) = &f.error {
            text.push(format!("  error: {e}"));
        }
        text.extend(f.reproducer.lines().map(|l| format!("  {l}")));
    }
    let mut value = serde_json::to_value(&report).unwrap();
    if opts.timing {
        let ms = report.wall_time.as_millis().to_u64().unwrap_or(u64::MAX);
        text.push(format!("wall time: {ms} ms"));
        value["wall_time_ms"] = json!(ms);
    }
    Ok(Answer { text, json: value, verify_failed: !report.failures.is_empty() })
}
