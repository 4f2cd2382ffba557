//! Buchberger's algorithm producing reduced Groebner bases.
//!
//! Pairs are selected by the normal strategy (smallest lcm first). Pairs with
//! coprime leading monomials are dropped, and the chain criterion removes a
//! pair `(i, j)` when some `k` has `lm(k) | lcm(i, j)`, both `(i, k)` and
//! `(j, k)` are already treated, and neither of their lcms equals
//! `lcm(i, j)`. The last condition keeps the criterion well founded.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, TermOrder};
use crate::poly::{same_ring, Polynomial};
use crate::ring::RingRef;
use crate::settings::Settings;

/// The unique reduced, monic Groebner basis of an ideal under a term order,
/// sorted by decreasing leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedGb {
    ring: RingRef,
    basis: Vec<Polynomial>,
}

impl ReducedGb {
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn order(&self) -> TermOrder {
        self.ring.order()
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|g| g.leading_monomial().unwrap().clone()).collect()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::IncompatibleRing);
        }
        Ok(reduce(f, &self.basis))
    }
}

/// Remainder of `f` under full multivariate division by monic `divisors`.
/// No term of the result is divisible by a leading monomial of a divisor.
pub fn reduce(f: &Polynomial, divisors: &[Polynomial]) -> Polynomial {
    let ring = f.ring().clone();
    let mut rem: Vec<(Monomial, _)> = Vec::new();
    let mut p = f.clone();
    while let Some((m, c)) = p.terms().first() {
        let hit = divisors
            .iter()
            .find_map(|g| g.leading_monomial().and_then(|lm| lm.quotient_of(m)).map(|q| (g, q)));
        match hit {
            Some((g, shift)) => {
                debug_assert!(g.leading_coeff().unwrap().is_one());
                let c = c.clone();
                p = p.sub_multiple(&c, &shift, g);
            }
            None => rem.push(p.pop_leading().unwrap()),
        }
    }
    Polynomial::from_sorted_terms(&ring, rem)
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let lf = f.leading_monomial().unwrap();
    let lg = g.leading_monomial().unwrap();
    let l = lf.lcm(lg);
    let one = f.ring().field().one();
    let left = f.mul_term(&lf.quotient_of(&l).unwrap(), &one);
    left.sub_multiple(&one, &lg.quotient_of(&l).unwrap(), g)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Computes the reduced Groebner basis of the ideal generated by `gens` in
/// `ring`, under the ring's term order.
pub fn buchberger(ring: &RingRef, gens: &[Polynomial], settings: &Settings) -> Result<ReducedGb> {
    for g in gens {
        if !same_ring(g.ring(), ring) {
            return Err(Error::IncompatibleRing);
        }
    }
    let order = ring.order();
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let add = |h: Polynomial,
                   basis: &mut Vec<Polynomial>,
                   pairs: &mut Vec<Pair>,
                   pending: &mut HashSet<(usize, usize)>| {
        let h = h.monic();
        let new = basis.len();
        let lh = h.leading_monomial().unwrap().clone();
        for (i, g) in basis.iter().enumerate() {
            let lg = g.leading_monomial().unwrap();
            if lg.is_coprime(&lh) {
                continue;
            }
            pairs.push(Pair { i, j: new, lcm: lg.lcm(&lh) });
            pending.insert((i, new));
        }
        basis.push(h);
    };

    for g in gens {
        let h = reduce(&g.monic(), &basis);
        if !h.is_zero() {
            if h.is_constant() {
                return Ok(unit_basis(ring));
            }
            add(h, &mut basis, &mut pairs, &mut pending);
        }
    }

    let mut steps: u64 = 0;
    while !pairs.is_empty() {
        let pick = (0..pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&pairs[a], &pairs[b]);
                pa.lcm
                    .degree()
                    .cmp(&pb.lcm.degree())
                    .then_with(|| order.cmp(&pa.lcm, &pb.lcm))
                    .then_with(|| (pa.j, pa.i).cmp(&(pb.j, pb.i)))
            })
            .unwrap();
        let pair = pairs.swap_remove(pick);
        pending.remove(&(pair.i, pair.j));

        let chain = (0..basis.len()).any(|k| {
            if k == pair.i || k == pair.j {
                return false;
            }
            let lk = basis[k].leading_monomial().unwrap();
            if !lk.divides(&pair.lcm) {
                return false;
            }
            let key = |a: usize, b: usize| (a.min(b), a.max(b));
            if pending.contains(&key(pair.i, k)) || pending.contains(&key(pair.j, k)) {
                return false;
            }
            let li = basis[pair.i].leading_monomial().unwrap();
            let lj = basis[pair.j].leading_monomial().unwrap();
            li.lcm(lk) != pair.lcm && lj.lcm(lk) != pair.lcm
        });
        if chain {
            continue;
        }

        steps += 1;
        if steps > settings.step_limit {
            return Err(Error::StepLimitExceeded { limit: settings.step_limit });
        }
        let s = s_polynomial(&basis[pair.i], &basis[pair.j]);
        let h = reduce(&s, &basis);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(unit_basis(ring));
        }
        add(h, &mut basis, &mut pairs, &mut pending);
    }

    Ok(ReducedGb { ring: ring.clone(), basis: interreduce(basis, order) })
}

fn unit_basis(ring: &RingRef) -> ReducedGb {
    ReducedGb { ring: ring.clone(), basis: vec![Polynomial::one(ring)] }
}

/// Turns a Groebner basis into the reduced one: drops elements whose leading
/// monomial is divisible by another's, tail-reduces, and sorts.
fn interreduce(mut basis: Vec<Polynomial>, order: TermOrder) -> Vec<Polynomial> {
    basis.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in basis {
        let lg = g.leading_monomial().unwrap();
        if !minimal.iter().any(|h| h.leading_monomial().unwrap().divides(lg)) {
            minimal.push(g);
        }
    }
    let mut reduced: Vec<Polynomial> = (0..minimal.len())
        .map(|i| {
            let others: Vec<Polynomial> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g.clone())
                .collect();
            reduce(&minimal[i], &others).monic()
        })
        .collect();
    reduced.sort_by(|a, b| {
        order
            .cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap())
            .then(Ordering::Equal)
    });
    reduced
}

/// Checks Buchberger's criterion: every S-polynomial reduces to zero.
pub fn is_groebner_basis(basis: &[Polynomial]) -> bool {
    let monic: Vec<Polynomial> = basis.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    for i in 0..monic.len() {
        for j in i + 1..monic.len() {
            if !reduce(&s_polynomial(&monic[i], &monic[j]), &monic).is_zero() {
                return false;
            }
        }
    }
    true
}
