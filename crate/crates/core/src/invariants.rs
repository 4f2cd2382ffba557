//! Numerical invariants of cyclic modules `M = R/J`: Krull dimension,
//! height, minimal and associated primes (monomial case), regular elements
//! and grade with replayable certificates.
//!
//! Dimension comes from the leading-term ideal: `dim R/J = dim R/LT(J)`,
//! and for a monomial ideal the codimension is the size of a smallest
//! vertex cover of the generator supports.
//!
//! Grade is found by certified search. `I` contains a nonzerodivisor on
//! `R/K` exactly when `(K : I) = K`, i.e. when the saturation `(K : I^∞)`
//! does not grow. While that holds, a regular element is searched among the
//! generators of `I` and then among random combinations of them, and `K` is
//! replaced by `K + ⟨x⟩`. The final nontrivial saturation is the
//! certificate of maximality.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{Ideal, SaturationResult};
use crate::monomial::Monomial;
use crate::monomial_ideal::{associated_prime_supports, is_subset, minimal_vertex_covers};
use crate::poly::Polynomial;
use crate::ring::RingRef;
use crate::settings::Settings;

/// The module `R/J` for a proper ideal `J`.
#[derive(Debug, Clone)]
pub struct CyclicModule {
    defining: Ideal,
}

impl CyclicModule {
    pub fn new(defining: Ideal, settings: &Settings) -> Result<Self> {
        if defining.is_unit(settings)? {
            return Err(Error::ImproperIdeal);
        }
        Ok(CyclicModule { defining })
    }

    /// The ring itself, `R/0`.
    pub fn free(ring: &RingRef) -> Self {
        CyclicModule { defining: Ideal::zero(ring) }
    }

    pub fn ring(&self) -> &RingRef {
        self.defining.ring()
    }

    pub fn defining_ideal(&self) -> &Ideal {
        &self.defining
    }

    /// `M / ⟨extra⟩M = R/(J + ⟨extra⟩)`.
    pub fn quotient_by(&self, extra: &[Polynomial], settings: &Settings) -> Result<Self> {
        CyclicModule::new(self.defining.add_generators(extra)?, settings)
    }

    /// `M / IM = R/(J + I)`; errors when it vanishes.
    pub fn modulo_ideal(&self, ideal: &Ideal, settings: &Settings) -> Result<Self> {
        CyclicModule::new(self.defining.sum(ideal)?, settings).map_err(|e| match e {
            Error::ImproperIdeal => Error::IdealEqualsModule,
            e => e,
        })
    }
}

/// A prime generated by a set of variables; the empty set is the zero ideal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MonomialPrime {
    vars: Vec<usize>,
}

impl MonomialPrime {
    pub fn new(mut vars: Vec<usize>) -> Self {
        vars.sort_unstable();
        vars.dedup();
        MonomialPrime { vars }
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    /// Number of generators, which is also its height.
    pub fn size(&self) -> usize {
        self.vars.len()
    }

    pub fn is_contained_in(&self, other: &MonomialPrime) -> bool {
        is_subset(&self.vars, &other.vars)
    }

    pub fn to_ideal(&self, ring: &RingRef) -> Ideal {
        Ideal::variables(ring, &self.vars)
    }

    pub fn display<'a>(&'a self, ring: &'a RingRef) -> impl fmt::Display + 'a {
        PrimeDisplay { prime: self, ring }
    }
}

struct PrimeDisplay<'a> {
    prime: &'a MonomialPrime,
    ring: &'a RingRef,
}

impl fmt::Display for PrimeDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.prime.vars.is_empty() {
            return write!(f, "<0>");
        }
        let names: Vec<&str> =
            self.prime.vars.iter().map(|&v| self.ring.variables()[v].as_str()).collect();
        write!(f, "<{}>", names.join(","))
    }
}

/// A maximal `M`-regular sequence in `I` together with the saturation
/// showing that `I` consists of zerodivisors on what remains.
#[derive(Debug, Clone)]
pub struct GradeWitness {
    pub value: u32,
    pub sequence: Vec<Polynomial>,
    pub certificate: SaturationResult,
}

fn leading_supports(ideal: &Ideal, settings: &Settings) -> Result<Vec<Vec<usize>>> {
    Ok(ideal.groebner(settings)?.leading_monomials().iter().map(Monomial::support).collect())
}

/// `dim R/J` for a proper ideal `J`.
pub fn quotient_dimension(ideal: &Ideal, settings: &Settings) -> Result<usize> {
    let edges = leading_supports(ideal, settings)?;
    let covers = minimal_vertex_covers(&edges);
    let smallest = covers.iter().map(Vec::len).min().ok_or(Error::ImproperIdeal)?;
    Ok(ideal.ring().nvars() - smallest)
}

pub fn krull_dimension(module: &CyclicModule, settings: &Settings) -> Result<usize> {
    quotient_dimension(module.defining_ideal(), settings)
}

/// First variable set of maximal size, in lexicographic order of index
/// combinations, containing no leading-monomial support of `J`.
pub fn maximal_independent_set(ideal: &Ideal, settings: &Settings) -> Result<Vec<usize>> {
    let dim = quotient_dimension(ideal, settings)?;
    let edges = leading_supports(ideal, settings)?;
    let n = ideal.ring().nvars();
    let mut combo: Vec<usize> = (0..dim).collect();
    loop {
        if !edges.iter().any(|e| is_subset(e, &combo)) {
            return Ok(combo);
        }
        // next combination in lexicographic order
        let mut i = dim;
        loop {
            if i == 0 {
                unreachable!("a maximal independent set of size {dim} exists");
            }
            i -= 1;
            if combo[i] < n - dim + i {
                combo[i] += 1;
                for j in i + 1..dim {
                    combo[j] = combo[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// `height(J) = n - dim R/J`, valid for affine polynomial rings.
pub fn height(ideal: &Ideal, settings: &Settings) -> Result<usize> {
    Ok(ideal.ring().nvars() - quotient_dimension(ideal, settings)?)
}

fn monomial_generators(ideal: &Ideal) -> Result<Vec<Monomial>> {
    ideal
        .generators()
        .iter()
        .map(|g| {
            if g.is_monomial() {
                Ok(g.leading_monomial().unwrap().clone())
            } else {
                Err(Error::NotMonomial(g.to_string()))
            }
        })
        .collect()
}

/// Minimal primes of a monomial ideal: minimal vertex covers of the
/// generator supports.
pub fn minimal_primes_monomial(ideal: &Ideal) -> Result<Vec<MonomialPrime>> {
    let edges: Vec<Vec<usize>> = monomial_generators(ideal)?.iter().map(Monomial::support).collect();
    let mut primes: Vec<MonomialPrime> =
        minimal_vertex_covers(&edges).into_iter().map(MonomialPrime::new).collect();
    primes.sort();
    Ok(primes)
}

/// Associated primes of `R/J` for a monomial ideal `J`: radicals of the
/// components of its irredundant irreducible decomposition.
pub fn associated_primes_monomial(ideal: &Ideal) -> Result<Vec<MonomialPrime>> {
    let gens = monomial_generators(ideal)?;
    let mut primes: Vec<MonomialPrime> = associated_prime_supports(&gens, ideal.ring().nvars())
        .into_iter()
        .map(MonomialPrime::new)
        .collect();
    primes.sort();
    Ok(primes)
}

/// `x` is a nonzerodivisor on `R/J` iff `(J : x) = J`.
pub fn is_regular_on(ideal: &Ideal, x: &Polynomial, settings: &Settings) -> Result<bool> {
    if x.is_zero() || ideal.contains(x, settings)? {
        return Ok(false);
    }
    ideal.quotient(x, settings)?.equals(ideal, settings)
}

/// True iff `I` contains an `M`-regular element, i.e. `(J : I^∞) = J`.
/// The saturation is trivial exactly when its first colon step is.
pub fn has_regular_element(module: &CyclicModule, ideal: &Ideal, settings: &Settings) -> Result<bool> {
    let j = module.defining_ideal();
    for g in ideal.generators() {
        if is_regular_on(j, g, settings)? {
            return Ok(true);
        }
    }
    Ok(ideal.saturate_module(j, settings)?.exponent == 0)
}

impl Ideal {
    /// Saturation of `module_ideal` by `self`, treating the zero ideal as
    /// having colon equal to the whole ring.
    fn saturate_module(&self, module_ideal: &Ideal, settings: &Settings) -> Result<SaturationResult> {
        if self.is_zero_ideal() {
            return Ok(SaturationResult { ideal: Ideal::unit(self.ring()), exponent: 1 });
        }
        module_ideal.saturate(self, settings)
    }
}

fn random_coeff(rng: &mut ChaCha8Rng, range: i64, ring: &RingRef) -> crate::field::Coeff {
    ring.field().from_i64(rng.gen_range(-range..=range))
}

/// Random combinations of the generators of `I`, checked for regularity on
/// `R/J`. Homogeneous `I` with generators of several degrees is padded to a
/// common degree with powers of random linear forms so the candidates stay
/// homogeneous.
fn search_combinations(
    j: &Ideal,
    ideal: &Ideal,
    seed: u64,
    settings: &Settings,
) -> Result<Option<Polynomial>> {
    let ring = j.ring();
    let gens: Vec<&Polynomial> = ideal.generators().iter().collect();
    if gens.is_empty() {
        return Ok(None);
    }
    let homogeneous = ideal.is_homogeneous();
    let top = gens.iter().filter_map(|g| g.total_degree()).max().unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..settings.search_budget {
        let range = 1 + (trial / 4) as i64;
        let mut candidate = Polynomial::zero(ring);
        for g in &gens {
            let c = random_coeff(&mut rng, range, ring);
            if c.is_zero() {
                continue;
            }
            let mut term = g.scale(&c);
            let deficit = top - g.total_degree().unwrap();
            if homogeneous && deficit > 0 {
                let linear = Polynomial::from_terms(
                    ring,
                    (0..ring.nvars())
                        .map(|v| (Monomial::variable(ring.nvars(), v), random_coeff(&mut rng, range, ring))),
                );
                term = &term * &linear.pow(deficit);
            }
            candidate = &candidate + &term;
        }
        if candidate.is_zero() {
            continue;
        }
        if is_regular_on(j, &candidate, settings)? {
            return Ok(Some(candidate));
        }
    }
    Ok(None)
}

/// An `M`-regular element of `I`: generators are tried first, then random
/// combinations drawn with the configured seed and budget.
pub fn find_regular_element(module: &CyclicModule, ideal: &Ideal, settings: &Settings) -> Result<Polynomial> {
    find_regular_on(module.defining_ideal(), ideal, settings.seed, settings)
}

fn find_regular_on(j: &Ideal, ideal: &Ideal, seed: u64, settings: &Settings) -> Result<Polynomial> {
    for g in ideal.generators() {
        if is_regular_on(j, g, settings)? {
            return Ok(g.clone());
        }
    }
    if let Some(x) = search_combinations(j, ideal, seed, settings)? {
        return Ok(x);
    }
    if ideal.saturate_module(j, settings)?.exponent == 0 {
        Err(Error::SearchExhausted { budget: settings.search_budget })
    } else {
        Err(Error::Precondition("the ideal consists of zerodivisors on the module".into()))
    }
}

fn mix_seed(seed: u64, step: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = seed.wrapping_add(step.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `grade(I, M)` with a maximal regular sequence and its certificate.
pub fn grade(module: &CyclicModule, ideal: &Ideal, settings: &Settings) -> Result<GradeWitness> {
    let j = module.defining_ideal();
    if j.sum(ideal)?.is_unit(settings)? {
        return Err(Error::IdealEqualsModule);
    }
    let n = module.ring().nvars();
    let mut current = j.canonical(settings)?;
    let mut sequence: Vec<Polynomial> = Vec::new();
    loop {
        let mut next = None;
        for g in ideal.generators() {
            if is_regular_on(&current, g, settings)? {
                next = Some(g.clone());
                break;
            }
        }
        if next.is_none() {
            let cert = ideal.saturate_module(&current, settings)?;
            if cert.exponent > 0 {
                return Ok(GradeWitness { value: sequence.len() as u32, sequence, certificate: cert });
            }
            let seed = mix_seed(settings.seed, sequence.len() as u64);
            match search_combinations(&current, ideal, seed, settings)? {
                Some(x) => next = Some(x),
                None => return Err(Error::SearchExhausted { budget: settings.search_budget }),
            }
        }
        let x = next.unwrap();
        sequence.push(x.clone());
        current = current.add_generators(&[x])?.canonical(settings)?;
        assert!(sequence.len() <= n, "regular sequence longer than the number of variables");
    }
}

/// Replays a witness: every element lies in `I` and is regular modulo the
/// earlier ones, and `I` is made of zerodivisors on the final quotient with
/// the recorded saturation.
pub fn replay_witness(
    module: &CyclicModule,
    ideal: &Ideal,
    witness: &GradeWitness,
    settings: &Settings,
) -> Result<bool> {
    if witness.value as usize != witness.sequence.len() {
        return Ok(false);
    }
    let mut current = module.defining_ideal().clone();
    for x in &witness.sequence {
        if !ideal.contains(x, settings)? || !is_regular_on(&current, x, settings)? {
            return Ok(false);
        }
        current = current.add_generators(std::slice::from_ref(x))?;
    }
    let sat = ideal.saturate_module(&current, settings)?;
    Ok(sat.exponent > 0
        && sat.exponent == witness.certificate.exponent
        && sat.ideal.equals(&witness.certificate.ideal, settings)?
        && !sat.ideal.equals(&current, settings)?)
}

/// `dim M_p` for monomial `J` and a variable prime `p ⊇ J`: the longest
/// chain from a minimal prime `q ⊆ p` up to `p`, i.e. `max |p| - |q|`.
pub fn local_dimension(module: &CyclicModule, prime: &MonomialPrime) -> Result<usize> {
    minimal_primes_monomial(module.defining_ideal())?
        .iter()
        .filter(|q| q.is_contained_in(prime))
        .map(|q| prime.size() - q.size())
        .max()
        .ok_or_else(|| Error::EmptySupport(prime.display(module.ring()).to_string()))
}

/// `depth M_p`, read off as `grade(p, M)`. The equality only holds when `M`
/// is `p`-Cohen-Macaulay; the caller is responsible for that hypothesis.
#[derive(Debug, Clone)]
pub struct LocalDepth {
    pub value: u32,
    pub assumption: &'static str,
}

pub fn local_depth_under_pcm(
    module: &CyclicModule,
    prime: &MonomialPrime,
    settings: &Settings,
) -> Result<LocalDepth> {
    let w = grade(module, &prime.to_ideal(module.ring()), settings)?;
    Ok(LocalDepth { value: w.value, assumption: "assumes M is p-Cohen-Macaulay: depth M_p = grade(p, M)" })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn s() -> Settings {
        Settings::default()
    }

    fn module(r: &RingRef, gens: &[&str]) -> CyclicModule {
        CyclicModule::new(Ideal::parse(r, gens).unwrap(), &s()).unwrap()
    }

    fn two_planes_ring() -> RingRef {
        Ring::rational(&["x1", "x2", "x3", "y1", "y2", "y3"])
    }

    fn two_planes_module() -> CyclicModule {
        let r = two_planes_ring();
        let mut gens = Vec::new();
        for i in 1..=3 {
            for j in 1..=3 {
                gens.push(format!("x{i}*y{j}"));
            }
        }
        let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
        module(&r, &refs)
    }

    #[test]
    fn dimensions() {
        let r = Ring::rational(&["x", "y"]);
        assert_eq!(krull_dimension(&CyclicModule::free(&r), &s()).unwrap(), 2);
        assert_eq!(krull_dimension(&module(&r, &["x*y"]), &s()).unwrap(), 1);
        assert_eq!(krull_dimension(&two_planes_module(), &s()).unwrap(), 3);
        assert!(matches!(
            CyclicModule::new(Ideal::unit(&r), &s()),
            Err(Error::ImproperIdeal)
        ));
    }

    #[test]
    fn independent_set_is_lex_first() {
        let m = two_planes_module();
        assert_eq!(maximal_independent_set(m.defining_ideal(), &s()).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn heights() {
        let r = Ring::rational(&["x", "y"]);
        assert_eq!(height(&Ideal::parse(&r, &["x"]).unwrap(), &s()).unwrap(), 1);
        assert_eq!(height(&Ideal::parse(&r, &["x", "y"]).unwrap(), &s()).unwrap(), 2);
        assert_eq!(height(&Ideal::unit(&r), &s()), Err(Error::ImproperIdeal));
        let p = two_planes_ring();
        assert_eq!(height(&Ideal::parse(&p, &["x1", "x2", "x3"]).unwrap(), &s()).unwrap(), 3);
    }

    #[test]
    fn monomial_primes() {
        let r = Ring::rational(&["x", "y"]);
        let xy = Ideal::parse(&r, &["x*y"]).unwrap();
        let both = vec![MonomialPrime::new(vec![0]), MonomialPrime::new(vec![1])];
        assert_eq!(minimal_primes_monomial(&xy).unwrap(), both);
        assert_eq!(associated_primes_monomial(&xy).unwrap(), both);

        let emb = Ideal::parse(&r, &["x^2", "x*y"]).unwrap();
        assert_eq!(minimal_primes_monomial(&emb).unwrap(), vec![MonomialPrime::new(vec![0])]);
        assert_eq!(
            associated_primes_monomial(&emb).unwrap(),
            vec![MonomialPrime::new(vec![0]), MonomialPrime::new(vec![0, 1])]
        );

        let planes = two_planes_module();
        let expected = vec![MonomialPrime::new(vec![0, 1, 2]), MonomialPrime::new(vec![3, 4, 5])];
        assert_eq!(minimal_primes_monomial(planes.defining_ideal()).unwrap(), expected);
        assert_eq!(associated_primes_monomial(planes.defining_ideal()).unwrap(), expected);

        let mixed = Ideal::parse(&r, &["x + y"]).unwrap();
        assert!(matches!(minimal_primes_monomial(&mixed), Err(Error::NotMonomial(_))));
    }

    #[test]
    fn regular_elements() {
        let r = Ring::rational(&["x", "y"]);
        let x = Ideal::parse(&r, &["x"]).unwrap();
        assert!(!has_regular_element(&module(&r, &["x*y"]), &x, &s()).unwrap());
        assert!(has_regular_element(&CyclicModule::free(&r), &x, &s()).unwrap());
        let p = two_planes_ring();
        let i = Ideal::parse(&p, &["x1", "x2", "x3"]).unwrap();
        assert!(!has_regular_element(&two_planes_module(), &i, &s()).unwrap());

        let found = find_regular_element(&CyclicModule::free(&r), &x, &s()).unwrap();
        assert_eq!(found, Polynomial::parse(&r, "x").unwrap());
        let sum = Ideal::parse(&r, &["x + y"]).unwrap();
        let found = find_regular_element(&module(&r, &["x*y"]), &sum, &s()).unwrap();
        assert_eq!(found, Polynomial::parse(&r, "x + y").unwrap());
        let found = find_regular_element(&module(&r, &["x^2"]), &Ideal::parse(&r, &["x", "y"]).unwrap(), &s()).unwrap();
        assert_eq!(found, Polynomial::parse(&r, "y").unwrap());
    }

    #[test]
    fn random_search_is_needed_for_xy() {
        // on R/(xy) with I = (x, y) both generators are zerodivisors
        let r = Ring::rational(&["x", "y"]);
        let m = module(&r, &["x*y"]);
        let i = Ideal::parse(&r, &["x", "y"]).unwrap();
        let w = grade(&m, &i, &s()).unwrap();
        assert_eq!(w.value, 1);
        assert!(replay_witness(&m, &i, &w, &s()).unwrap());
    }

    #[test]
    fn grades() {
        let r = Ring::rational(&["x1", "x2", "x3", "x4"]);
        for k in 1..=4 {
            let vars: Vec<String> = (1..=k).map(|i| format!("x{i}")).collect();
            let refs: Vec<&str> = vars.iter().map(String::as_str).collect();
            let i = Ideal::parse(&r, &refs).unwrap();
            let w = grade(&CyclicModule::free(&r), &i, &s()).unwrap();
            assert_eq!(w.value, k as u32);
        }
        let p = two_planes_ring();
        let i = Ideal::parse(&p, &["x1", "x2", "x3"]).unwrap();
        let w = grade(&two_planes_module(), &i, &s()).unwrap();
        assert_eq!(w.value, 0);
        assert!(w.certificate.exponent > 0);

        let r2 = Ring::rational(&["x", "y"]);
        let w = grade(&module(&r2, &["x*y"]), &Ideal::parse(&r2, &["x"]).unwrap(), &s()).unwrap();
        assert_eq!(w.value, 0);
        assert_eq!(
            grade(&module(&r2, &["x"]), &Ideal::parse(&r2, &["x - 1"]).unwrap(), &s()).unwrap_err(),
            Error::IdealEqualsModule
        );
    }

    #[test]
    fn local_invariants() {
        let r = Ring::rational(&["x", "y"]);
        let free = CyclicModule::free(&r);
        let px = MonomialPrime::new(vec![0]);
        assert_eq!(local_dimension(&free, &px).unwrap(), 1);
        assert_eq!(local_depth_under_pcm(&free, &px, &s()).unwrap().value, 1);

        let planes = two_planes_module();
        let p = MonomialPrime::new(vec![0, 1, 2]);
        assert_eq!(local_dimension(&planes, &p).unwrap(), 0);
        assert_eq!(local_depth_under_pcm(&planes, &p, &s()).unwrap().value, 0);

        let xy = module(&r, &["x*y"]);
        let max = MonomialPrime::new(vec![0, 1]);
        assert_eq!(local_dimension(&xy, &max).unwrap(), 1);
        assert_eq!(local_depth_under_pcm(&xy, &max, &s()).unwrap().value, 1);

        let xonly = module(&r, &["x"]);
        assert!(matches!(
            local_dimension(&xonly, &MonomialPrime::new(vec![1])),
            Err(Error::EmptySupport(_))
        ));
    }
}
