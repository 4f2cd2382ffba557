//! GB-based monomial computations against combinatorial rules evaluated
//! directly on exponent vectors.

mod common;

use common::*;
use icm_core::invariants::{associated_primes_monomial, krull_dimension, minimal_primes_monomial};
use icm_core::{CyclicModule, Settings};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn support(e: &[u32]) -> Vec<usize> {
    (0..e.len()).filter(|&i| e[i] > 0).collect()
}

/// Largest set of variables containing the support of no generator.
fn brute_force_dimension(n: usize, gens: &[Vec<u32>]) -> usize {
    (0u32..1 << n)
        .filter(|mask| !gens.iter().any(|g| support(g).iter().all(|&v| mask & (1 << v) != 0)))
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap()
}

/// Minimal variable sets meeting the support of every generator.
fn brute_force_minimal_primes(n: usize, gens: &[Vec<u32>]) -> Vec<Vec<usize>> {
    let covers: Vec<u32> = (0u32..1 << n)
        .filter(|mask| gens.iter().all(|g| support(g).iter().any(|&v| mask & (1 << v) != 0)))
        .collect();
    let mut out: Vec<Vec<usize>> = covers
        .iter()
        .filter(|&&c| !covers.iter().any(|&d| d != c && d & c == d))
        .map(|&c| (0..n).filter(|v| c & (1 << v) != 0).collect())
        .collect();
    out.sort();
    out
}

fn lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn intersection_rule(a: &[Vec<u32>], b: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let all: Vec<Vec<u32>> = a.iter().flat_map(|g| b.iter().map(move |h| lcm(g, h))).collect();
    minimalize(&all)
}

fn colon_by_monomial_rule(a: &[Vec<u32>], m: &[u32]) -> Vec<Vec<u32>> {
    let all: Vec<Vec<u32>> = a
        .iter()
        .map(|g| g.iter().zip(m).map(|(x, y)| x.saturating_sub(*y)).collect())
        .collect();
    minimalize(&all)
}

fn colon_rule(a: &[Vec<u32>], b: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut acc = colon_by_monomial_rule(a, &b[0]);
    for m in &b[1..] {
        acc = intersection_rule(&acc, &colon_by_monomial_rule(a, m));
    }
    acc
}

#[test]
fn dimension_matches_subset_search() {
    let s = Settings::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let n = rng.gen_range(1..=6);
        let gens = random_monomial_gens(&mut rng, n, 3, 5);
        let r = ring(n);
        let module = CyclicModule::new(monomial_ideal(&r, &gens), &s).unwrap();
        assert_eq!(krull_dimension(&module, &s).unwrap(), brute_force_dimension(n, &gens), "{gens:?}");
    }
}

#[test]
fn colon_and_intersection_match_lcm_rules() {
    let s = Settings::default();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let n = rng.gen_range(2..=4);
        let a = random_monomial_gens(&mut rng, n, 3, 4);
        let b = random_monomial_gens(&mut rng, n, 3, 3);
        let r = ring(n);
        let (ia, ib) = (monomial_ideal(&r, &a), monomial_ideal(&r, &b));
        assert_eq!(engine_gens(&ia.intersect(&ib, &s).unwrap()), intersection_rule(&a, &b), "{a:?} ∩ {b:?}");
        assert_eq!(engine_gens(&ia.quotient_ideal(&ib, &s).unwrap()), colon_rule(&a, &b), "{a:?} : {b:?}");
    }
}

#[test]
fn minimal_primes_match_cover_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let n = rng.gen_range(1..=6);
        let gens = random_monomial_gens(&mut rng, n, 3, 5);
        let r = ring(n);
        let mut got: Vec<Vec<usize>> = minimal_primes_monomial(&monomial_ideal(&r, &gens))
            .unwrap()
            .iter()
            .map(|p| p.vars().to_vec())
            .collect();
        got.sort();
        assert_eq!(got, brute_force_minimal_primes(n, &gens));
    }
}

#[test]
fn associated_primes_contain_minimal_primes_and_come_from_colons() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..60 {
        let n = rng.gen_range(2..=4);
        let gens = random_monomial_gens(&mut rng, n, 3, 4);
        let r = ring(n);
        let j = monomial_ideal(&r, &gens);
        let ass = associated_primes_monomial(&j).unwrap();
        for q in minimal_primes_monomial(&j).unwrap() {
            assert!(ass.contains(&q));
        }
        // each associated prime is J : m for a monomial m, found among
        // divisors of the lcm of the generators
        let top = gens.iter().fold(vec![0; n], |acc, g| lcm(&acc, g));
        let mut annihilators: Vec<Vec<usize>> = Vec::new();
        let mut m = vec![0u32; n];
        loop {
            let colon = colon_by_monomial_rule(&gens, &m);
            if colon.iter().all(|g| g.iter().sum::<u32>() == 1) {
                let mut vars: Vec<usize> = colon.iter().map(|g| support(g)[0]).collect();
                vars.sort();
                annihilators.push(vars);
            }
            let mut i = 0;
            while i < n && m[i] == top[i] {
                m[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
            m[i] += 1;
        }
        annihilators.sort();
        annihilators.dedup();
        let ass_vars: Vec<Vec<usize>> = ass.iter().map(|p| p.vars().to_vec()).collect();
        assert_eq!(ass_vars, annihilators, "{gens:?}");
    }
}
