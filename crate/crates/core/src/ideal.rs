//! Ideals of an affine polynomial ring and the operations derived from
//! Groebner bases.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, ReducedGb};
use crate::monomial::TermOrder;
use crate::poly::{same_ring, Polynomial};
use crate::ring::{Ring, RingRef};
use crate::settings::Settings;

/// A finitely generated ideal. The reduced Groebner basis is computed on
/// first use and cached; the cache is filled at most once and concurrent
/// callers may compute it redundantly, always producing the same basis.
pub struct Ideal {
    ring: RingRef,
    gens: Vec<Polynomial>,
    gb: OnceLock<Arc<ReducedGb>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal { ring: self.ring.clone(), gens: self.gens.clone(), gb: self.gb.clone() }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal<{self}>")
    }
}

impl fmt::Display for Ideal {
    /// Comma separated generators, `0` for the zero ideal.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// `(J : I^exponent) = (J : I^∞)` with `exponent` minimal.
#[derive(Debug, Clone)]
pub struct SaturationResult {
    pub ideal: Ideal,
    pub exponent: u32,
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(ring: &RingRef, gens: impl IntoIterator<Item = Polynomial>) -> Result<Ideal> {
        let mut kept = Vec::new();
        for g in gens {
            if !same_ring(g.ring(), ring) {
                return Err(Error::IncompatibleRing);
            }
            if !g.is_zero() {
                kept.push(g);
            }
        }
        Ok(Ideal { ring: ring.clone(), gens: kept, gb: OnceLock::new() })
    }

    /// Parses each string as a generator.
    pub fn parse(ring: &RingRef, gens: &[&str]) -> Result<Ideal> {
        let polys = gens.iter().map(|s| Polynomial::parse(ring, s)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, polys)
    }

    pub fn zero(ring: &RingRef) -> Ideal {
        Ideal { ring: ring.clone(), gens: Vec::new(), gb: OnceLock::new() }
    }

    pub fn unit(ring: &RingRef) -> Ideal {
        Ideal { ring: ring.clone(), gens: vec![Polynomial::one(ring)], gb: OnceLock::new() }
    }

    /// The ideal generated by the given variables.
    pub fn variables(ring: &RingRef, vars: &[usize]) -> Ideal {
        Ideal {
            ring: ring.clone(),
            gens: vars.iter().map(|&v| Polynomial::variable(ring, v)).collect(),
            gb: OnceLock::new(),
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(|g| g.is_monomial())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    fn check_ring(&self, other: &Ideal) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::IncompatibleRing)
        }
    }

    pub fn groebner(&self, settings: &Settings) -> Result<Arc<ReducedGb>> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb.clone());
        }
        let gb = Arc::new(buchberger(&self.ring, &self.gens, settings)?);
        let _ = self.gb.set(gb);
        Ok(self.gb.get().unwrap().clone())
    }

    pub fn contains(&self, f: &Polynomial, settings: &Settings) -> Result<bool> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::IncompatibleRing);
        }
        Ok(self.groebner(settings)?.normal_form(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal, settings: &Settings) -> Result<bool> {
        self.check_ring(other)?;
        let gb = self.groebner(settings)?;
        for g in &other.gens {
            if !gb.normal_form(g)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_unit(&self, settings: &Settings) -> Result<bool> {
        Ok(self.groebner(settings)?.is_unit())
    }

    /// Ideal equality, decided by comparing reduced Groebner bases.
    pub fn equals(&self, other: &Ideal, settings: &Settings) -> Result<bool> {
        self.check_ring(other)?;
        Ok(self.groebner(settings)?.basis() == other.groebner(settings)?.basis())
    }

    /// The ideal generated by the reduced Groebner basis.
    pub fn canonical(&self, settings: &Settings) -> Result<Ideal> {
        let gb = self.groebner(settings)?;
        let out = Ideal::new(&self.ring, gb.basis().iter().cloned())?;
        let _ = out.gb.set(gb);
        Ok(out)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        Ideal::new(&self.ring, self.gens.iter().chain(&other.gens).cloned())
    }

    pub fn add_generators(&self, extra: &[Polynomial]) -> Result<Ideal> {
        Ideal::new(&self.ring, self.gens.iter().chain(extra).cloned())
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        Ideal::new(
            &self.ring,
            self.gens.iter().flat_map(|f| other.gens.iter().map(move |g| f * g)),
        )
    }

    /// `J ∩ k[keep]`, returned as an ideal of this ring whose generators
    /// involve only the kept variables. Uses a block order with the
    /// eliminated variables in the first block.
    pub fn eliminate(&self, keep: &[usize], settings: &Settings) -> Result<Ideal> {
        let n = self.ring.nvars();
        let drop: Vec<usize> = (0..n).filter(|v| !keep.contains(v)).collect();
        if drop.is_empty() || self.gens.is_empty() {
            return Ok(self.clone());
        }
        let kept: Vec<usize> = (0..n).filter(|v| keep.contains(v)).collect();
        let layout: Vec<usize> = drop.iter().chain(&kept).copied().collect();
        let names: Vec<String> = layout.iter().map(|&v| self.ring.variables()[v].clone()).collect();
        let elim_ring = Ring::new(self.ring.field(), names, TermOrder::Block { split: drop.len() })?;
        // old index -> position in the elimination ring
        let mut forward = vec![0; n];
        for (pos, &v) in layout.iter().enumerate() {
            forward[v] = pos;
        }
        let gens: Vec<Polynomial> = self.gens.iter().map(|g| g.remap(&elim_ring, &forward)).collect();
        let gb = buchberger(&elim_ring, &gens, settings)?;
        let survivors = gb
            .basis()
            .iter()
            .filter(|g| g.support().iter().all(|&v| v >= drop.len()))
            .map(|g| g.remap(&self.ring, &layout))
            .collect::<Vec<_>>();
        Ideal::new(&self.ring, survivors)
    }

    /// `J1 ∩ J2` via `(t*J1 + (1-t)*J2) ∩ k[vars]` for a fresh tag variable `t`.
    pub fn intersect(&self, other: &Ideal, settings: &Settings) -> Result<Ideal> {
        self.check_ring(other)?;
        if self.gens.is_empty() || other.gens.is_empty() {
            return Ok(Ideal::zero(&self.ring));
        }
        let n = self.ring.nvars();
        let tag = self.ring.fresh_name("t");
        let names = std::iter::once(tag).chain(self.ring.variables().iter().cloned());
        let big = Ring::new(self.ring.field(), names, TermOrder::Block { split: 1 })?;
        let shift: Vec<usize> = (1..=n).collect();
        let t = Polynomial::variable(&big, 0);
        let one_minus_t = &Polynomial::one(&big) - &t;
        let gens = self
            .gens
            .iter()
            .map(|g| &g.remap(&big, &shift) * &t)
            .chain(other.gens.iter().map(|g| &g.remap(&big, &shift) * &one_minus_t))
            .collect::<Vec<_>>();
        let gb = buchberger(&big, &gens, settings)?;
        let back: Vec<usize> = std::iter::once(0).chain(0..n).collect();
        let survivors = gb
            .basis()
            .iter()
            .filter(|g| g.terms().iter().all(|(m, _)| m.exponents()[0] == 0))
            .map(|g| g.remap(&self.ring, &back))
            .collect::<Vec<_>>();
        Ideal::new(&self.ring, survivors)?.canonical(settings)
    }

    /// `(J : f) = {g : g f ∈ J}`, computed as `(J ∩ ⟨f⟩) / f`.
    pub fn quotient(&self, f: &Polynomial, settings: &Settings) -> Result<Ideal> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::IncompatibleRing);
        }
        if f.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.contains(f, settings)? {
            return Ok(Ideal::unit(&self.ring));
        }
        let principal = Ideal::new(&self.ring, [f.clone()])?;
        let meet = self.intersect(&principal, settings)?;
        let gens = meet.gens.iter().map(|g| g.div_exact(f)).collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.ring, gens)?.canonical(settings)
    }

    /// `(J : I) = ∩_g (J : g)` over the generators of `I`.
    pub fn quotient_ideal(&self, other: &Ideal, settings: &Settings) -> Result<Ideal> {
        self.check_ring(other)?;
        if other.gens.is_empty() {
            return Err(Error::Precondition("colon by the zero ideal".into()));
        }
        let mut acc: Option<Ideal> = None;
        for g in &other.gens {
            let q = self.quotient(g, settings)?;
            acc = Some(match acc {
                None => q,
                Some(a) if a.is_unit(settings)? => q,
                Some(a) if q.is_unit(settings)? => a,
                Some(a) => a.intersect(&q, settings)?,
            });
        }
        acc.unwrap().canonical(settings)
    }

    /// `(J : I^∞)` by iterating `K ↦ (K : I)` from `K = J` until it
    /// stabilizes; the number of strict growth steps is the exponent.
    pub fn saturate(&self, other: &Ideal, settings: &Settings) -> Result<SaturationResult> {
        self.check_ring(other)?;
        if other.gens.is_empty() {
            return Err(Error::Precondition("saturation by the zero ideal".into()));
        }
        let mut current = self.canonical(settings)?;
        let mut exponent = 0;
        loop {
            let next = current.quotient_ideal(other, settings)?;
            if next.equals(&current, settings)? {
                return Ok(SaturationResult { ideal: current, exponent });
            }
            current = next;
            exponent += 1;
        }
    }

    /// The extension `J·R[new_vars]`: same generators in the larger ring,
    /// whose variables are this ring's followed by `new_vars`.
    pub fn extend_ring(&self, new_vars: &[String]) -> Result<Ideal> {
        let names = self.ring.variables().iter().cloned().chain(new_vars.iter().cloned());
        let big = Ring::new(self.ring.field(), names, self.ring.order())?;
        self.map_into(&big)
    }

    /// Reinterprets the generators in a ring whose variable list starts with
    /// this ring's variables.
    pub fn map_into(&self, target: &RingRef) -> Result<Ideal> {
        let n = self.ring.nvars();
        if target.nvars() < n || target.variables()[..n] != self.ring.variables()[..] {
            return Err(Error::IncompatibleRing);
        }
        let id: Vec<usize> = (0..n).collect();
        Ideal::new(target, self.gens.iter().map(|g| g.remap(target, &id)))
    }
}
