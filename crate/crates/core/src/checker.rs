//! I-Cohen-Macaulay reports and verifiers for the structural relations
//! between them.
//!
//! A module `M = R/J` is I-Cohen-Macaulay when
//! `grade(I, M) + dim M/IM = dim M`. The defect
//! `dim M - grade(I, M) - dim M/IM` is never negative over an affine ring:
//! for a prime `P ⊇ I + J` with `dim R/P = dim M/IM`,
//! `grade(I, M) ≤ depth M_P ≤ dim M_P ≤ dim M - dim R/P`.
//!
//! Relations whose classical statement lives over a local ring are only
//! evaluated on homogeneous instances, where the graded computation
//! matches the behaviour at the irrelevant maximal ideal. When a
//! hypothesis fails the relation is reported as skipped, never as
//! vacuously true.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::invariants::{
    associated_primes_monomial, grade, height, is_regular_on, krull_dimension, local_dimension,
    minimal_primes_monomial, CyclicModule, GradeWitness, MonomialPrime,
};
use crate::poly::Polynomial;
use crate::settings::Settings;

#[derive(Debug, Clone, Serialize)]
pub struct IcmReport {
    pub grade: u32,
    pub dim_m: usize,
    pub dim_m_mod_im: usize,
    pub defect: i64,
    pub is_icm: bool,
    pub witness: Vec<String>,
    pub certificate_exponent: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub height_i: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grade_equals_height: Option<bool>,
    #[serde(skip)]
    pub grade_witness: GradeWitness,
}

/// One side of a relation.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Side {
    Report(Box<IcmReport>),
    Reports(Vec<IcmReport>),
    Scalar(i64),
    Empty,
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationReport {
    pub relation_id: String,
    pub holds: bool,
    /// A hypothesis of the relation failed; nothing was asserted.
    pub skipped: bool,
    pub left: Side,
    pub right: Side,
    pub hypothesis_log: Vec<String>,
    /// Input-language script reproducing a violation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl RelationReport {
    fn new(relation_id: &str) -> Self {
        RelationReport {
            relation_id: relation_id.to_string(),
            holds: true,
            skipped: false,
            left: Side::Empty,
            right: Side::Empty,
            hypothesis_log: Vec::new(),
            counterexample: None,
        }
    }

    /// A report for an instance that does not meet `reason`.
    pub fn skipped(relation_id: &str, reason: &str) -> Self {
        RelationReport::new(relation_id).skip(reason)
    }

    fn skip(mut self, reason: impl Into<String>) -> Self {
        self.skipped = true;
        self.hypothesis_log.push(format!("skipped: {}", reason.into()));
        self
    }

    fn log(&mut self, line: impl Into<String>) {
        self.hypothesis_log.push(line.into());
    }

    fn conclude(mut self, holds: bool, reproducer: impl FnOnce() -> String) -> Self {
        self.holds = holds;
        if !holds {
            self.counterexample = Some(reproducer());
        }
        self
    }
}

/// Input-language script declaring the ring and the named ideals, followed
/// by `query`.
pub fn reproducer(module: &CyclicModule, ideals: &[(&str, &Ideal)], query: &str) -> String {
    let mut out = format!("ring R = {};\n", module.ring());
    out.push_str(&format!("ideal J = {};\n", module.defining_ideal()));
    for (name, ideal) in ideals {
        out.push_str(&format!("ideal {name} = {ideal};\n"));
    }
    out.push_str(query);
    out.push('\n');
    out
}

pub fn icm_report(module: &CyclicModule, ideal: &Ideal, settings: &Settings) -> Result<IcmReport> {
    let quotient = module.modulo_ideal(ideal, settings)?;
    let witness = grade(module, ideal, settings)?;
    let dim_m = krull_dimension(module, settings)?;
    let dim_m_mod_im = krull_dimension(&quotient, settings)?;
    let defect = dim_m as i64 - witness.value as i64 - dim_m_mod_im as i64;
    let (height_i, grade_equals_height) = if module.defining_ideal().is_zero_ideal() {
        let h = height(ideal, settings)?;
        (Some(h), Some(h == witness.value as usize))
    } else {
        (None, None)
    };
    Ok(IcmReport {
        grade: witness.value,
        dim_m,
        dim_m_mod_im,
        defect,
        is_icm: defect == 0,
        witness: witness.sequence.iter().map(Polynomial::to_string).collect(),
        certificate_exponent: witness.certificate.exponent,
        height_i,
        grade_equals_height,
        grade_witness: witness,
    })
}

fn require_homogeneous(ideal: &Ideal) -> Result<()> {
    match ideal.generators().iter().find(|g| !g.is_homogeneous()) {
        Some(g) => Err(Error::NotHomogeneous(g.to_string())),
        None => Ok(()),
    }
}

/// Depth at the irrelevant ideal equals dimension, for homogeneous `J`.
pub fn is_cohen_macaulay_graded(module: &CyclicModule, settings: &Settings) -> Result<bool> {
    require_homogeneous(module.defining_ideal())?;
    let all: Vec<usize> = (0..module.ring().nvars()).collect();
    let depth = grade(module, &Ideal::variables(module.ring(), &all), settings)?.value as usize;
    Ok(depth == krull_dimension(module, settings)?)
}

/// A graded Cohen-Macaulay `M` is I-CM for every `I` with `IM ≠ M`.
pub fn cm_implies_icm_check(
    module: &CyclicModule,
    ideal: &Ideal,
    settings: &Settings,
) -> Result<RelationReport> {
    let mut rel = RelationReport::new("cm-implies-icm");
    match is_cohen_macaulay_graded(module, settings) {
        Ok(true) => rel.log("M is graded Cohen-Macaulay"),
        Ok(false) => return Ok(rel.skip("M is not Cohen-Macaulay")),
        Err(Error::NotHomogeneous(g)) => return Ok(rel.skip(format!("J is not homogeneous: {g}"))),
        Err(e) => return Err(e),
    }
    let report = icm_report(module, ideal, settings)?;
    let holds = report.is_icm;
    rel.left = Side::Scalar(report.defect);
    rel.right = Side::Scalar(0);
    Ok(rel.conclude(holds, || reproducer(module, &[("I", ideal)], "cm J;\nicm J I;")))
}

/// If `R` is I-CM then `grade(I, R) = height(I)`.
pub fn check_grade_height(ideal: &Ideal, settings: &Settings) -> Result<RelationReport> {
    let ring = ideal.ring();
    let module = CyclicModule::free(ring);
    let report = icm_report(&module, ideal, settings)?;
    let h = height(ideal, settings)?;
    let mut rel = RelationReport::new("grade-height");
    rel.log("module is the ring itself (J = 0)");
    rel.log(format!("is_icm = {}", report.is_icm));
    rel.left = Side::Scalar(report.grade as i64);
    rel.right = Side::Scalar(h as i64);
    if !report.is_icm {
        return Ok(rel.skip("R is not I-Cohen-Macaulay"));
    }
    let holds = report.grade as usize == h;
    Ok(rel.conclude(holds, || reproducer(&module, &[("I", ideal)], "icm J I;\nheight I;")))
}

fn all_homogeneous(module: &CyclicModule, ideal: &Ideal, extra: &[Polynomial]) -> bool {
    module.defining_ideal().is_homogeneous()
        && ideal.is_homogeneous()
        && extra.iter().all(Polynomial::is_homogeneous)
}

fn replay_regular(
    base: &Ideal,
    seq: &[Polynomial],
    settings: &Settings,
) -> Result<Option<usize>> {
    let mut current = base.clone();
    for (i, x) in seq.iter().enumerate() {
        if !is_regular_on(&current, x, settings)? {
            return Ok(Some(i));
        }
        current = current.add_generators(std::slice::from_ref(x))?;
    }
    Ok(None)
}

/// `M` is I-CM iff `M/(x)M` is I-CM, for an `M`-regular sequence `x` in `I`;
/// the grade drops by the length of `x` and `dim M/IM` is unchanged.
pub fn quotient_transport(
    module: &CyclicModule,
    ideal: &Ideal,
    seq: &[Polynomial],
    settings: &Settings,
) -> Result<RelationReport> {
    let mut rel = RelationReport::new("quotient-transport");
    if !all_homogeneous(module, ideal, seq) {
        return Ok(rel.skip("local hypothesis needs a homogeneous instance"));
    }
    for x in seq {
        if !ideal.contains(x, settings)? {
            return Ok(rel.skip(format!("{x} is not in I")));
        }
    }
    if let Some(i) = replay_regular(module.defining_ideal(), seq, settings)? {
        return Ok(rel.skip(format!("element {i} of the sequence is not regular")));
    }
    if seq.iter().any(|x| x.total_degree() == Some(0)) {
        return Ok(rel.skip("sequence contains a unit"));
    }
    rel.log(format!("sequence of length {} verified M-regular in I", seq.len()));
    let before = icm_report(module, ideal, settings)?;
    let reduced = module.quotient_by(seq, settings)?;
    let after = icm_report(&reduced, ideal, settings)?;
    let holds = before.is_icm == after.is_icm
        && before.grade as i64 - after.grade as i64 == seq.len() as i64
        && before.dim_m_mod_im == after.dim_m_mod_im;
    rel.left = Side::Report(Box::new(before));
    rel.right = Side::Report(Box::new(after));
    let seq_ideal = Ideal::new(module.ring(), seq.iter().cloned())?;
    Ok(rel.conclude(holds, || {
        reproducer(module, &[("I", ideal), ("X", &seq_ideal)], "icm J I;\nideal JX = sum(J, X);\nicm JX I;")
    }))
}

/// For `I ⊆ J2`: (1) J2-CM with equal grades gives I-CM, (2) I-CM with equal
/// `dim M/IM` gives J2-CM; and (3) I-CM and J2-CM give (I ∩ J2)-CM.
pub fn subideal_transfer_check(
    module: &CyclicModule,
    ideal: &Ideal,
    larger: &Ideal,
    settings: &Settings,
) -> Result<RelationReport> {
    let mut rel = RelationReport::new("subideal-transfer");
    let nested = larger.contains_ideal(ideal, settings)?;
    rel.log(format!("I ⊆ J2: {nested}"));
    let r_small = icm_report(module, ideal, settings)?;
    let r_large = match icm_report(module, larger, settings) {
        Ok(r) => Some(r),
        Err(Error::IdealEqualsModule) => {
            rel.log("J2·M = M: J2 parts not evaluated");
            None
        }
        Err(e) => return Err(e),
    };
    let meet = ideal.intersect(larger, settings)?;
    let mut holds = true;
    let mut evaluated = 0;
    if let Some(rl) = &r_large {
        if nested && rl.is_icm && rl.grade == r_small.grade {
            rel.log("part 1 hypotheses hold");
            evaluated += 1;
            holds &= r_small.is_icm;
        }
        if nested && r_small.is_icm && rl.dim_m_mod_im == r_small.dim_m_mod_im {
            rel.log("part 2 hypotheses hold");
            evaluated += 1;
            holds &= rl.is_icm;
        }
        if r_small.is_icm && rl.is_icm {
            evaluated += 1;
            rel.log("part 3 hypotheses hold");
            let r_meet = icm_report(module, &meet, settings)?;
            holds &= r_meet.is_icm;
            rel.right = Side::Report(Box::new(r_meet));
        }
    }
    let mut reports = vec![r_small];
    if let Some(rl) = r_large {
        reports.push(rl);
    }
    rel.left = Side::Reports(reports);
    if evaluated == 0 {
        return Ok(rel.skip("no part applies"));
    }
    Ok(rel.conclude(holds, || {
        reproducer(
            module,
            &[("I", ideal), ("J2", larger)],
            "icm J I;\nicm J J2;\nideal IJ2 = intersect(I, J2);\nicm J IJ2;",
        )
    }))
}

/// Transport along `M → M/Ann(Ī)M = R/(J : I)` when `(J : I) ⊆ I + J`:
/// regular sequences in `I` stay regular, and `M` is I-CM iff the
/// transported module is, with equal grade and dimension.
pub fn annihilator_transport(
    module: &CyclicModule,
    ideal: &Ideal,
    settings: &Settings,
) -> Result<RelationReport> {
    let mut rel = RelationReport::new("annihilator-transport");
    let j = module.defining_ideal();
    if j.contains_ideal(ideal, settings)? {
        return Ok(rel.skip("I maps to zero in R/J"));
    }
    if j.sum(ideal)?.is_unit(settings)? {
        return Ok(rel.skip("I is not proper modulo J"));
    }
    let ann = j.quotient_ideal(ideal, settings)?;
    if !j.sum(ideal)?.contains_ideal(&ann, settings)? {
        return Ok(rel.skip("(J : I) is not contained in I + J"));
    }
    rel.log("Ann(I) ⊆ I holds in R/J");
    let transported = CyclicModule::new(ann.clone(), settings)?;
    let before = icm_report(module, ideal, settings)?;
    let after = icm_report(&transported, ideal, settings)?;
    let agree = before.grade == after.grade && before.dim_m == after.dim_m;
    let forward = !before.is_icm || (after.is_icm && agree);
    let backward = !(after.is_icm && agree) || before.is_icm;

    let seq = &before.grade_witness.sequence;
    let usable = seq.iter().take_while(|x| !ann.contains(x, settings).unwrap_or(true)).count();
    if usable < seq.len() {
        rel.log(format!("sequence element {usable} lies in Ann(I); replay stops there"));
    }
    let replay_ok = replay_regular(&ann, &seq[..usable], settings)?.is_none();
    rel.log(format!("replayed {usable} regular elements on the transported module: {replay_ok}"));

    rel.left = Side::Report(Box::new(before));
    rel.right = Side::Report(Box::new(after));
    Ok(rel.conclude(forward && backward && replay_ok, || {
        reproducer(module, &[("I", ideal)], "icm J I;\nideal A = colon(J, I);\nicm A I;")
    }))
}

fn support_and_pcm(
    rel: &mut RelationReport,
    module: &CyclicModule,
    prime: &MonomialPrime,
    settings: &Settings,
) -> Result<Option<IcmReport>> {
    let mins = minimal_primes_monomial(module.defining_ideal())?;
    if !mins.iter().any(|q| q.is_contained_in(prime)) {
        rel.log("p is not in Supp(M)");
        return Ok(None);
    }
    let report = icm_report(module, &prime.to_ideal(module.ring()), settings)?;
    if !report.is_icm {
        rel.log(format!("M is not p-Cohen-Macaulay (defect {})", report.defect));
        return Ok(None);
    }
    rel.log("p ∈ Supp(M) and M is p-Cohen-Macaulay");
    Ok(Some(report))
}

/// For monomial `J` and `M` p-CM: some `q ∈ Ass(M)` with `q ⊆ p` has
/// `dim R/q = dim M`.
pub fn ass_dimension_check(
    module: &CyclicModule,
    prime: &MonomialPrime,
    settings: &Settings,
) -> Result<RelationReport> {
    let mut rel = RelationReport::new("ass-dimension");
    let Some(report) = support_and_pcm(&mut rel, module, prime, settings)? else {
        return Ok(rel.skip("hypothesis failed"));
    };
    let n = module.ring().nvars();
    let ass = associated_primes_monomial(module.defining_ideal())?;
    let hit = ass.iter().find(|q| q.is_contained_in(prime) && n - q.size() == report.dim_m);
    let ring = module.ring().clone();
    if let Some(q) = hit {
        rel.log(format!("q = {}", q.display(&ring)));
    }
    rel.left = Side::Scalar(report.dim_m as i64);
    rel.right = Side::Scalar(hit.map_or(-1, |q| (n - q.size()) as i64));
    let p_ideal = prime.to_ideal(&ring);
    Ok(rel.conclude(hit.is_some(), || reproducer(module, &[("P", &p_ideal)], "icm J P;\nass J;")))
}

/// For monomial `J` and `M` p-CM: `M_p` is Cohen-Macaulay
/// (`grade(p, M) = dim M_p`) and a maximal regular sequence in `p` has
/// length `dim M_p`, as a system of parameters must.
pub fn localization_cm_check(
    module: &CyclicModule,
    prime: &MonomialPrime,
    settings: &Settings,
) -> Result<RelationReport> {
    let mut rel = RelationReport::new("localization-cm");
    let Some(report) = support_and_pcm(&mut rel, module, prime, settings)? else {
        return Ok(rel.skip("hypothesis failed"));
    };
    let depth = report.grade as usize;
    let local_dim = local_dimension(module, prime)?;
    let sop_len = report.grade_witness.sequence.len();
    rel.log(format!("depth M_p = {depth}, dim M_p = {local_dim}, witness length = {sop_len}"));
    rel.left = Side::Scalar(depth as i64);
    rel.right = Side::Scalar(local_dim as i64);
    let p_ideal = prime.to_ideal(module.ring());
    Ok(rel.conclude(depth == local_dim && sop_len == local_dim, || {
        reproducer(module, &[("P", &p_ideal)], "icm J P;\nminprimes J;")
    }))
}

/// Adjoining `k_new` variables preserves the verdict and the grade, raises
/// both dimensions by `k_new`, and preserves heights of variable primes.
pub fn polynomial_extension_check(
    module: &CyclicModule,
    ideal: &Ideal,
    k_new: usize,
    settings: &Settings,
) -> Result<RelationReport> {
    let mut rel = RelationReport::new("poly-extension");
    if !module.defining_ideal().is_zero_ideal() {
        rel.log("extended suite: module is a proper quotient R/J");
    }
    let ring = module.ring();
    let mut names = Vec::new();
    for i in 0..k_new {
        let mut probe_vars: Vec<String> = ring.variables().to_vec();
        probe_vars.extend(names.iter().cloned());
        let stem = format!("t{i}");
        let mut candidate = stem.clone();
        let mut bump = 0;
        while probe_vars.contains(&candidate) {
            candidate = format!("{stem}_{bump}");
            bump += 1;
        }
        names.push(candidate);
    }
    let j_ext = module.defining_ideal().extend_ring(&names)?;
    let big = j_ext.ring().clone();
    let i_ext = ideal.map_into(&big)?;
    let ext_module = CyclicModule::new(j_ext, settings)?;

    let before = icm_report(module, ideal, settings)?;
    let after = icm_report(&ext_module, &i_ext, settings)?;
    let k = k_new;
    let mut holds = before.is_icm == after.is_icm
        && before.grade == after.grade
        && before.dim_m + k == after.dim_m
        && before.dim_m_mod_im + k == after.dim_m_mod_im;
    let is_variable_prime = ideal
        .generators()
        .iter()
        .all(|g| g.is_monomial() && g.total_degree() == Some(1));
    if is_variable_prime && !ideal.is_zero_ideal() {
        let h0 = height(ideal, settings)?;
        let h1 = height(&i_ext, settings)?;
        rel.log(format!("height(p) = {h0}, height(p[t]) = {h1}"));
        holds &= h0 == h1;
    }
    rel.left = Side::Report(Box::new(before));
    rel.right = Side::Report(Box::new(after));
    Ok(rel.conclude(holds, || reproducer(module, &[("I", ideal)], "icm J I;")))
}
