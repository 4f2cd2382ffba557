#![allow(dead_code)]

use icm_core::{FieldSpec, Ideal, Monomial, Polynomial, Ring, RingRef, Settings, TermOrder};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn ring(n: usize) -> RingRef {
    ring_over(FieldSpec::Rationals, n)
}

pub fn ring_over(field: FieldSpec, n: usize) -> RingRef {
    Ring::new(field, (1..=n).map(|i| format!("x{i}")), TermOrder::Grevlex).unwrap()
}

pub fn random_exponents(rng: &mut ChaCha8Rng, n: usize, max_degree: u32) -> Vec<u32> {
    let degree = rng.gen_range(1..=max_degree);
    let mut e = vec![0; n];
    for _ in 0..degree {
        e[rng.gen_range(0..n)] += 1;
    }
    e
}

pub fn random_monomial_gens(rng: &mut ChaCha8Rng, n: usize, max_degree: u32, max_gens: usize) -> Vec<Vec<u32>> {
    let count = rng.gen_range(1..=max_gens);
    (0..count).map(|_| random_exponents(rng, n, max_degree)).collect()
}

pub fn monomial_ideal(ring: &RingRef, gens: &[Vec<u32>]) -> Ideal {
    Ideal::new(ring, gens.iter().map(|e| Polynomial::monomial(ring, Monomial::new(e.clone())))).unwrap()
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Minimal generators of a monomial ideal, sorted.
pub fn minimalize(gens: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = Vec::new();
    for g in gens {
        let strictly_covered = gens.iter().any(|h| h != g && divides(h, g));
        if !strictly_covered && !out.contains(g) {
            out.push(g.clone());
        }
    }
    out.sort();
    out
}

/// The reduced Groebner basis of a monomial ideal as exponent vectors;
/// panics if any element is not a monic monomial.
pub fn engine_gens(ideal: &Ideal) -> Vec<Vec<u32>> {
    let gb = ideal.groebner(&Settings::default()).unwrap();
    let mut out: Vec<Vec<u32>> = gb
        .basis()
        .iter()
        .map(|g| {
            assert_eq!(g.terms().len(), 1, "non-monomial basis element {g}");
            assert!(g.terms()[0].1.is_one());
            g.terms()[0].0.exponents().to_vec()
        })
        .collect();
    out.sort();
    out
}
