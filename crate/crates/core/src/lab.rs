//! Randomized instance generation and suite execution for the structural
//! relations in [`crate::checker`].
//!
//! Instances are homogeneous, so the graded surrogate applies to every
//! relation with a local hypothesis. Each trial draws its ideal kind as
//! monomial (70%), binomial (20%) or mixed (10%); in the mixed kind every
//! generator is independently a binomial with probability
//! [`MIXED_BINOMIAL_PROBABILITY`]. Suites that need associated primes force
//! the monomial kind.

use std::time::{Duration, Instant};

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::checker::{
    annihilator_transport, ass_dimension_check, check_grade_height, cm_implies_icm_check,
    localization_cm_check, polynomial_extension_check, quotient_transport, subideal_transfer_check,
    RelationReport,
};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::ideal::Ideal;
use crate::invariants::{grade, minimal_primes_monomial, CyclicModule, MonomialPrime};
use crate::monomial::{Monomial, TermOrder};
use crate::poly::Polynomial;
use crate::ring::{Ring, RingRef};
use crate::settings::Settings;

pub const MAX_VARS: usize = 8;
pub const MAX_DEGREE: u32 = 4;
pub const MIXED_BINOMIAL_PROBABILITY: f64 = 0.5;
/// Characteristic used for the prime-field share of suite trials.
pub const SUITE_PRIME: u32 = 32003;

pub const SUITES: [&str; 8] = [
    "quotient-transport",
    "subideal-transfer",
    "annihilator-transport",
    "grade-height",
    "cm-implies-icm",
    "ass-dimension",
    "localization-cm",
    "poly-extension",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IdealKind {
    Monomial,
    Binomial,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub n_vars: usize,
    pub field: FieldSpec,
    pub ideal_kind: IdealKind,
    pub max_degree: u32,
    pub max_generators: usize,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub module: CyclicModule,
    pub ideal: Ideal,
    pub prime: Option<MonomialPrime>,
}

fn variable_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn random_monomial(rng: &mut ChaCha8Rng, n: usize, degree: u32) -> Monomial {
    let mut exps = vec![0u32; n];
    for _ in 0..degree {
        exps[rng.gen_range(0..n)] += 1;
    }
    Monomial::new(exps)
}

fn random_binomial(rng: &mut ChaCha8Rng, ring: &RingRef, degree: u32) -> Polynomial {
    let n = ring.nvars();
    let first = random_monomial(rng, n, degree);
    let mut second = random_monomial(rng, n, degree);
    while second == first {
        second = random_monomial(rng, n, degree);
    }
    let field = ring.field();
    let magnitude = rng.gen_range(1..=3i64);
    let mut c = field.from_i64(if rng.gen_bool(0.5) { magnitude } else { -magnitude });
    if c.is_zero() {
        c = field.one();
    }
    Polynomial::from_terms(ring, [(first, field.one()), (second, -&c)])
}

fn random_generator(rng: &mut ChaCha8Rng, ring: &RingRef, kind: IdealKind, degree: u32) -> Polynomial {
    let binomial = match kind {
        IdealKind::Monomial => false,
        IdealKind::Binomial => true,
        IdealKind::Mixed => rng.gen_bool(MIXED_BINOMIAL_PROBABILITY),
    };
    if binomial && ring.nvars() >= 2 {
        random_binomial(rng, ring, degree)
    } else {
        let m = random_monomial(rng, ring.nvars(), degree);
        Polynomial::monomial(ring, m)
    }
}

fn check_guardrails(spec: &InstanceSpec) -> Result<()> {
    if spec.n_vars == 0 || spec.n_vars > MAX_VARS {
        return Err(Error::Guardrail(format!("n_vars must lie in 1..={MAX_VARS}")));
    }
    if spec.max_degree == 0 || spec.max_degree > MAX_DEGREE {
        return Err(Error::Guardrail(format!("max_degree must lie in 1..={MAX_DEGREE}")));
    }
    if spec.max_generators == 0 {
        return Err(Error::Guardrail("max_generators must be positive".into()));
    }
    Ok(())
}

pub fn spec_ring(spec: &InstanceSpec) -> Result<RingRef> {
    Ring::new(spec.field, variable_names(spec.n_vars), TermOrder::Grevlex)
}

/// Deterministic homogeneous instance: `J` has up to `max_generators`
/// generators (possibly none), `I` has between one and three generators of
/// degree at most two, and `1 ∉ I + J`. For monomial `J` the prime is a
/// minimal prime of least size, enlarged by further variables half of the
/// time.
pub fn gen_instance(spec: &InstanceSpec, settings: &Settings) -> Result<Instance> {
    check_guardrails(spec)?;
    let ring = spec_ring(spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..32 {
        let j_count = rng.gen_range(0..=spec.max_generators);
        let j_gens: Vec<Polynomial> = (0..j_count)
            .map(|_| {
                let d = rng.gen_range(1..=spec.max_degree);
                random_generator(&mut rng, &ring, spec.ideal_kind, d)
            })
            .collect();
        let i_count = rng.gen_range(1..=spec.max_generators.min(3));
        let i_gens: Vec<Polynomial> = (0..i_count)
            .map(|_| {
                let d = rng.gen_range(1..=spec.max_degree.min(2));
                random_generator(&mut rng, &ring, spec.ideal_kind, d)
            })
            .collect();
        let j = Ideal::new(&ring, j_gens)?;
        let ideal = Ideal::new(&ring, i_gens)?;
        if j.sum(&ideal)?.is_unit(settings)? {
            continue;
        }
        let prime = if j.is_monomial() {
            let mins = minimal_primes_monomial(&j)?;
            let smallest = mins.iter().min_by_key(|q| q.size()).unwrap().clone();
            Some(if rng.gen_bool(0.5) {
                smallest
            } else {
                let mut vars = smallest.vars().to_vec();
                for v in 0..spec.n_vars {
                    if !vars.contains(&v) && rng.gen_bool(0.5) {
                        vars.push(v);
                    }
                }
                MonomialPrime::new(vars)
            })
        } else {
            None
        };
        let module = CyclicModule::new(j, settings)?;
        return Ok(Instance { module, ideal, prime });
    }
    Err(Error::Guardrail("rejection sampling found no instance with 1 ∉ I + J".into()))
}

/// The material a suite evaluates; also the unit the shrinker works on.
#[derive(Debug, Clone)]
pub struct Trial {
    pub ring: RingRef,
    pub j: Vec<Polynomial>,
    pub i: Vec<Polynomial>,
    /// Second ideal (subideal suite) or regular sequence (quotient suite).
    pub extra: Vec<Polynomial>,
    pub prime: Option<MonomialPrime>,
    /// Number of adjoined variables for the extension suite.
    pub k: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub seed: u64,
    pub spec: InstanceSpec,
    pub error: Option<String>,
    pub hypothesis_log: Vec<String>,
    pub reproducer: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite_id: String,
    pub trials: usize,
    pub passed: usize,
    pub skipped_hypothesis: usize,
    pub failures: Vec<Failure>,
    #[serde(skip)]
    pub wall_time: Duration,
}

enum Outcome {
    Passed,
    Skipped,
    Failed(Box<Failure>),
}

fn suite_spec(suite: &str, seed: u64) -> InstanceSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let roll: f64 = rng.gen();
    let needs_monomial = matches!(suite, "ass-dimension" | "localization-cm");
    let ideal_kind = if needs_monomial || roll < 0.7 {
        IdealKind::Monomial
    } else if roll < 0.9 {
        IdealKind::Binomial
    } else {
        IdealKind::Mixed
    };
    let field = if rng.gen_bool(0.2) { FieldSpec::Prime(SUITE_PRIME) } else { FieldSpec::Rationals };
    InstanceSpec {
        n_vars: rng.gen_range(2..=5),
        field,
        ideal_kind,
        max_degree: 3,
        max_generators: 3,
        seed: rng.next_u64(),
    }
}

/// The instance specification and trial a suite draws for `seed`.
pub fn suite_trial(suite: &str, seed: u64, settings: &Settings) -> Result<(InstanceSpec, Trial)> {
    let spec = suite_spec(suite, seed);
    let trial = build_trial(suite, &spec, settings)?;
    Ok((spec, trial))
}

fn build_trial(suite: &str, spec: &InstanceSpec, settings: &Settings) -> Result<Trial> {
    let inst = gen_instance(spec, settings)?;
    let ring = inst.module.ring().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed ^ 0x5eed);
    let mut trial = Trial {
        ring: ring.clone(),
        j: inst.module.defining_ideal().generators().to_vec(),
        i: inst.ideal.generators().to_vec(),
        extra: Vec::new(),
        prime: inst.prime,
        k: 0,
    };
    match suite {
        "quotient-transport" => {
            let w = grade(&inst.module, &inst.ideal, settings)?;
            if !w.sequence.is_empty() {
                let len = rng.gen_range(1..=w.sequence.len());
                trial.extra = w.sequence[..len].to_vec();
            }
        }
        "subideal-transfer" => {
            let count = rng.gen_range(1..=2);
            trial.extra = trial.i.clone();
            for _ in 0..count {
                let d = rng.gen_range(1..=2);
                trial.extra.push(random_generator(&mut rng, &ring, spec.ideal_kind, d));
            }
        }
        "grade-height" => trial.j.clear(),
        "cm-implies-icm" => {
            // half of the trials use a family that is always Cohen-Macaulay
            match rng.gen_range(0..4) {
                0 => trial.j.clear(),
                1 => {
                    let mut gens = Vec::new();
                    for v in 0..ring.nvars() {
                        if rng.gen_bool(0.5) {
                            let e = rng.gen_range(1..=3);
                            let x = Polynomial::variable(&ring, v);
                            gens.push(x.pow(e));
                        }
                    }
                    trial.j = gens;
                }
                _ => {}
            }
        }
        "poly-extension" => trial.k = rng.gen_range(1..=2),
        _ => {}
    }
    Ok(trial)
}

/// Runs the suite's relation on a trial.
pub fn evaluate(suite: &str, trial: &Trial, settings: &Settings) -> Result<RelationReport> {
    let j = Ideal::new(&trial.ring, trial.j.iter().cloned())?;
    let ideal = Ideal::new(&trial.ring, trial.i.iter().cloned())?;
    let module = CyclicModule::new(j, settings)?;
    let prime = || {
        trial
            .prime
            .clone()
            .ok_or_else(|| Error::Precondition("suite needs a monomial instance".into()))
    };
    match suite {
        "quotient-transport" if trial.extra.is_empty() => {
            Ok(RelationReport::skipped(suite, "I contains no regular element"))
        }
        "quotient-transport" => quotient_transport(&module, &ideal, &trial.extra, settings),
        "subideal-transfer" => {
            let larger = Ideal::new(&trial.ring, trial.extra.iter().cloned())?;
            subideal_transfer_check(&module, &ideal, &larger, settings)
        }
        "annihilator-transport" => annihilator_transport(&module, &ideal, settings),
        "grade-height" => check_grade_height(&ideal, settings),
        "cm-implies-icm" => cm_implies_icm_check(&module, &ideal, settings),
        "ass-dimension" => ass_dimension_check(&module, &prime()?, settings),
        "localization-cm" => localization_cm_check(&module, &prime()?, settings),
        "poly-extension" => polynomial_extension_check(&module, &ideal, trial.k, settings),
        other => Err(Error::UnknownSuite(other.to_string())),
    }
}

/// Repeatedly applies the first candidate on which `fails` still holds,
/// until no candidate does.
pub fn shrink<T, C, F>(start: T, candidates: C, fails: F) -> T
where
    C: Fn(&T) -> Vec<T>,
    F: Fn(&T) -> bool,
{
    let mut current = start;
    'outer: loop {
        for next in candidates(&current) {
            if fails(&next) {
                current = next;
                continue 'outer;
            }
        }
        return current;
    }
}

/// Lowers the degree of a homogeneous generator by one: divides every term
/// by a variable common to all of them.
fn lower_degree(f: &Polynomial) -> Vec<Polynomial> {
    let n = f.ring().nvars();
    (0..n)
        .filter(|&v| f.terms().iter().all(|(m, _)| m.exponents()[v] > 0))
        .filter(|_| f.total_degree().unwrap_or(0) > 1)
        .map(|v| {
            let x = Monomial::variable(n, v);
            Polynomial::from_terms(
                f.ring(),
                f.terms().iter().map(|(m, c)| (x.quotient_of(m).unwrap(), c.clone())),
            )
        })
        .collect()
}

/// Smaller trials: each drops one generator or lowers one degree.
pub fn trial_candidates(trial: &Trial) -> Vec<Trial> {
    let mut out = Vec::new();
    let lists: [fn(&mut Trial) -> &mut Vec<Polynomial>; 3] =
        [|t| &mut t.j, |t| &mut t.i, |t| &mut t.extra];
    for pick in lists {
        let len = pick(&mut trial.clone()).len();
        for idx in 0..len {
            let mut t = trial.clone();
            pick(&mut t).remove(idx);
            out.push(t);
        }
        for idx in 0..len {
            let g = pick(&mut trial.clone())[idx].clone();
            for lowered in lower_degree(&g) {
                let mut t = trial.clone();
                pick(&mut t)[idx] = lowered;
                out.push(t);
            }
        }
    }
    out
}

fn failing(suite: &str, trial: &Trial, settings: &Settings) -> bool {
    match evaluate(suite, trial, settings) {
        Ok(rel) => !rel.holds && !rel.skipped,
        Err(_) => true,
    }
}

fn run_trial(suite: &str, seed: u64, settings: &Settings) -> Outcome {
    let spec = suite_spec(suite, seed);
    let trial_settings = Settings { seed, ..*settings };
    let result = build_trial(suite, &spec, &trial_settings)
        .and_then(|t| evaluate(suite, &t, &trial_settings).map(|r| (t, r)));
    let (trial, error) = match result {
        Ok((_, rel)) if rel.skipped => return Outcome::Skipped,
        Ok((_, rel)) if rel.holds => return Outcome::Passed,
        Ok((t, _)) => (Some(t), None),
        Err(e) => (build_trial(suite, &spec, &trial_settings).ok(), Some(e.to_string())),
    };
    let (reproducer, hypothesis_log) = match trial {
        Some(t) => {
            let small = shrink(t, trial_candidates, |c| failing(suite, c, &trial_settings));
            match evaluate(suite, &small, &trial_settings) {
                Ok(rel) => (rel.counterexample.unwrap_or_default(), rel.hypothesis_log),
                Err(e) => (trial_script(&small, &format!("# {e}")), Vec::new()),
            }
        }
        None => (String::new(), Vec::new()),
    };
    Outcome::Failed(Box::new(Failure {
        seed,
        spec,
        error,
        hypothesis_log,
        reproducer: format!("# suite {suite}, seed {seed}\n{reproducer}"),
    }))
}

fn trial_script(trial: &Trial, footer: &str) -> String {
    let list = |gens: &[Polynomial]| {
        if gens.is_empty() {
            "0".to_string()
        } else {
            gens.iter().map(Polynomial::to_string).collect::<Vec<_>>().join(", ")
        }
    };
    format!(
        "ring R = {};\nideal J = {};\nideal I = {};\n{footer}\n",
        trial.ring,
        list(&trial.j),
        list(&trial.i)
    )
}

/// Seed of trial `t`: the first word of the ChaCha stream `t` keyed by the
/// base seed.
pub fn trial_seed(base_seed: u64, t: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(base_seed);
    rng.set_stream(t);
    rng.next_u64()
}

pub fn run_suite(suite_id: &str, trials: usize, base_seed: u64, settings: &Settings) -> Result<SuiteReport> {
    if !SUITES.contains(&suite_id) {
        return Err(Error::UnknownSuite(suite_id.to_string()));
    }
    let start = Instant::now();
    let outcomes: Vec<Outcome> = (0..trials as u64)
        .into_par_iter()
        .map(|t| run_trial(suite_id, trial_seed(base_seed, t), settings))
        .collect();
    let mut report = SuiteReport {
        suite_id: suite_id.to_string(),
        trials,
        passed: 0,
        skipped_hypothesis: 0,
        failures: Vec::new(),
        wall_time: Duration::ZERO,
    };
    for o in outcomes {
        match o {
            Outcome::Passed => report.passed += 1,
            Outcome::Skipped => report.skipped_hypothesis += 1,
            Outcome::Failed(f) => report.failures.push(*f),
        }
    }
    report.failures.sort_by_key(|f| f.seed);
    report.wall_time = start.elapsed();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(kind: IdealKind, seed: u64) -> InstanceSpec {
        InstanceSpec {
            n_vars: 4,
            field: FieldSpec::Rationals,
            ideal_kind: kind,
            max_degree: 3,
            max_generators: 3,
            seed,
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let s = Settings::default();
        let a = gen_instance(&spec(IdealKind::Mixed, 1), &s).unwrap();
        let b = gen_instance(&spec(IdealKind::Mixed, 1), &s).unwrap();
        assert_eq!(a.module.defining_ideal().generators(), b.module.defining_ideal().generators());
        assert_eq!(a.ideal.generators(), b.ideal.generators());
        assert_eq!(a.prime, b.prime);
    }

    #[test]
    fn monomial_kind_is_monomial_and_homogeneous() {
        let s = Settings::default();
        for seed in 0..20 {
            let inst = gen_instance(&spec(IdealKind::Monomial, seed), &s).unwrap();
            assert!(inst.module.defining_ideal().is_monomial() && inst.ideal.is_monomial());
            assert!(inst.prime.is_some());
            let b = gen_instance(&spec(IdealKind::Binomial, seed), &s).unwrap();
            assert!(b.module.defining_ideal().is_homogeneous() && b.ideal.is_homogeneous());
        }
    }

    #[test]
    fn guardrails() {
        let s = Settings::default();
        let mut big = spec(IdealKind::Monomial, 0);
        big.n_vars = 9;
        assert!(matches!(gen_instance(&big, &s), Err(Error::Guardrail(_))));
        let mut deep = spec(IdealKind::Monomial, 0);
        deep.max_degree = 5;
        assert!(matches!(gen_instance(&deep, &s), Err(Error::Guardrail(_))));
    }

    #[test]
    fn unknown_suite() {
        assert_eq!(
            run_suite("no-such-suite", 1, 0, &Settings::default()).unwrap_err(),
            Error::UnknownSuite("no-such-suite".into())
        );
    }

    #[test]
    fn shrinker_reaches_a_local_minimum() {
        // drop elements while the sum stays above 10
        let start = vec![7, 5, 3, 2, 1];
        let candidates = |v: &Vec<i32>| {
            (0..v.len())
                .map(|i| {
                    let mut w = v.clone();
                    w.remove(i);
                    w
                })
                .collect()
        };
        let result = shrink(start, candidates, |v: &Vec<i32>| v.iter().sum::<i32>() > 10);
        assert_eq!(result, vec![5, 3, 2, 1]);
    }

    #[test]
    fn trial_shrinking() {
        let r = Ring::rational(&["x", "y", "z"]);
        let p = |t: &str| Polynomial::parse(&r, t).unwrap();
        let trial = Trial {
            ring: r.clone(),
            j: vec![p("x^3*y"), p("y*z")],
            i: vec![p("x"), p("z^2")],
            extra: Vec::new(),
            prime: None,
            k: 0,
        };
        let has_cube = |t: &Trial| t.j.iter().any(|g| g.total_degree().unwrap() >= 3);
        let small = shrink(trial, trial_candidates, has_cube);
        assert!(small.i.is_empty());
        assert_eq!(small.j.len(), 1);
        assert_eq!(small.j[0].total_degree(), Some(3));
    }

    #[test]
    fn degree_lowering_keeps_homogeneity() {
        let r = Ring::rational(&["x", "y", "z"]);
        let f = Polynomial::parse(&r, "x^2*y - 2*x*y*z").unwrap();
        let lowered = lower_degree(&f);
        assert_eq!(lowered.len(), 2);
        assert!(lowered.iter().all(|g| g.is_homogeneous() && g.total_degree() == Some(2)));
    }
}
