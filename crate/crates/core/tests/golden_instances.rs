use icm_core::checker::{check_grade_height, icm_report};
use icm_core::invariants::{associated_primes_monomial, height};
use icm_core::{CyclicModule, Ideal, Ring, Settings};

#[test]
fn two_planes_meeting_at_a_point() {
    let s = Settings::default();
    let r = Ring::rational(&["x1", "x2", "x3", "y1", "y2", "y3"]);
    let px = Ideal::parse(&r, &["x1", "x2", "x3"]).unwrap();
    let py = Ideal::parse(&r, &["y1", "y2", "y3"]).unwrap();
    let j = px.intersect(&py, &s).unwrap();
    assert_eq!(j.groebner(&s).unwrap().basis().len(), 9);
    let module = CyclicModule::new(j.clone(), &s).unwrap();
    let rep = icm_report(&module, &px, &s).unwrap();
    assert_eq!((rep.grade, rep.dim_m, rep.dim_m_mod_im, rep.defect), (0, 3, 3, 0));
    assert!(rep.is_icm);
    assert!(rep.witness.is_empty());
    let ass: Vec<String> = associated_primes_monomial(&j)
        .unwrap()
        .iter()
        .map(|p| p.display(&r).to_string())
        .collect();
    assert_eq!(ass, ["<x1,x2,x3>", "<y1,y2,y3>"]);
}

/// Over `k[u,v,x,y]` the ideal `⟨ux - 1⟩` has grade and height 1 and
/// `dim R/I = 3`, so the affine ring is I-CM. The non-I-CM behaviour of the
/// same generator needs a discrete valuation ring as base, which has no
/// affine model here.
#[test]
fn affine_analogue_of_the_valuation_ring_instance() {
    let s = Settings::default();
    let r = Ring::rational(&["u", "v", "x", "y"]);
    let i = Ideal::parse(&r, &["u*x - 1"]).unwrap();
    let rep = icm_report(&CyclicModule::free(&r), &i, &s).unwrap();
    assert_eq!((rep.grade, rep.dim_m, rep.dim_m_mod_im, rep.defect), (1, 4, 3, 0));
    assert!(rep.is_icm);
    assert_eq!(height(&i, &s).unwrap(), 1);
    assert_eq!(rep.grade_equals_height, Some(true));
    let rel = check_grade_height(&i, &s).unwrap();
    assert!(rel.holds && !rel.skipped);
}

/// Negative space for the valuation-ring instance. There the base is a
/// discrete valuation ring with uniformizer `u`, so inverting `u` (which
/// `ux - 1` does) collapses the base to its fraction field and
/// `dim R/I` drops by two while the height of `I` stays 1. In an affine ring
/// `u` only becomes a unit in a domain of the same dimension minus one, so
/// every affine model of the generator, with any number of extra variables
/// and any exponents, keeps `grade + dim R/I = dim R`.
#[test]
fn affine_models_of_the_valuation_ring_generator_stay_icm() {
    let s = Settings::default();
    for extra in 0..=2 {
        let mut names = vec!["u".to_string(), "x".to_string()];
        names.extend((0..extra).map(|i| format!("y{i}")));
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        let r = Ring::rational(&names);
        for (a, b) in [(1, 1), (2, 1), (1, 3), (2, 2)] {
            let g = format!("u^{a}*x^{b} - 1");
            let i = Ideal::parse(&r, &[g.as_str()]).unwrap();
            let rep = icm_report(&CyclicModule::free(&r), &i, &s).unwrap();
            assert_eq!((rep.grade, rep.dim_m, rep.dim_m_mod_im), (1, names.len(), names.len() - 1), "{g}");
            assert_eq!(rep.defect, 0);
            assert_eq!(height(&i, &s).unwrap(), 1);
        }
    }
}
