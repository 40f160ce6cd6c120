mod common;

use common::*;
use modlink::colinkage::*;
use modlink::homalg::ext;
use modlink::linkage::{canonical_module, cyclic_link, is_linked_by, link_operator, same_hf_up_to_shift, CategoryTag, ReflexiveEpi};
use modlink::modules::{hom_module, Pd};
use modlink::ring::Matrix;
use modlink::{Error, GradedModule, ModuleMap, Ring, Verdict};

const SEMIGROUP: [&str; 3] = ["y^2-x*z", "y*z", "z^2"];
const CUBIC: [&str; 3] = ["x*z-y^2", "y*w-z^2", "x*w-y*z"];

fn semigroup() -> (Ring, GradedModule) {
    let r = qring(101, &["x", "y", "z"], &SEMIGROUP);
    let w = canonical_module(&r).unwrap();
    (r, w)
}

fn natural(r: &Ring, a: &[&str], b: &[&str]) -> ModuleMap {
    ModuleMap::new(cyclic(r, a), cyclic(r, b), Matrix::identity(&[0]), 0).unwrap()
}

#[test]
fn natural_maps_for_free_k() {
    let s = ring(101, &["x", "y", "z", "w"]);
    let k = GradedModule::free(&s, &[0]);
    for m in [cyclic(&s, &CUBIC), cyclic(&s, &["x^2", "x*y"]), GradedModule::free(&s, &[0, 2])] {
        assert!(in_nabla(&m, &k).unwrap());
        assert!(in_delta(&m, &k).unwrap());
        let (t, _) = foxby_transform(Direction::TensorK, &m, &k).unwrap();
        assert_eq!(hf(&t, -1, 5), hf(&m, -1, 5));
    }
    let other = ring(101, &["x"]);
    assert!(matches!(foxby_transform(Direction::HomK, &GradedModule::free(&other, &[0]), &k), Err(Error::RingMismatch)));
}

#[test]
fn transforms_over_semigroup_ring() {
    let (r, w) = semigroup();
    let rr = GradedModule::free(&r, &[0]);
    let (t, m) = foxby_transform(Direction::TensorK, &rr, &w).unwrap();
    assert!(m.is_iso());
    assert_eq!(hf(&t, -2, 6), hf(&w, -2, 6));

    let p = GradedModule::free(&r, &[0, 1]);
    let pk = modlink::modules::tensor(&p, &w).unwrap();
    let (back, n) = foxby_transform(Direction::HomK, &pk, &w).unwrap();
    assert_eq!(hf(&back, -2, 6), hf(&p, -2, 6));
    assert!(n.is_iso());
}

#[test]
fn class_membership() {
    let (r, w) = semigroup();
    let free = GradedModule::free(&r, &[0, 0]);
    let c = class_member(FoxbyClass::Auslander, &free, &w, 3).unwrap();
    assert_eq!(c.verdict, Verdict::Holds);
    assert!(c.tor_vanishing.iter().all(|t| t.1));
    assert_eq!(class_member(FoxbyClass::Bass, &w, &w, 3).unwrap().verdict, Verdict::Holds);

    let k = cyclic(&r, &["x", "y", "z"]);
    let c = class_member(FoxbyClass::Bass, &k, &w, 2).unwrap();
    assert!(!c.natural_map_iso);
    assert!(c.verdict.fails());

    let s = ring(101, &["x", "y"]);
    let ks = GradedModule::free(&s, &[0]);
    for m in [cyclic(&s, &["x"]), cyclic(&s, &["x^2", "x*y"]), cyclic(&s, &["x", "y"])] {
        for class in [FoxbyClass::Auslander, FoxbyClass::Bass] {
            assert_eq!(class_member(class, &m, &ks, 3).unwrap().verdict, Verdict::Holds);
        }
    }
}

#[test]
fn dnk_examples() {
    let s = ring(101, &["x", "y"]);
    let ks = GradedModule::free(&s, &[0]);
    let m = cyclic(&s, &["x^2", "x*y"]);
    assert_eq!(hf(&dnk(&m, &ks, 1).unwrap(), -4, 4), hf(&ext(1, &m, &ks).module, -4, 4));
    assert_eq!(dnk(&m, &ks, 2).unwrap_err(), Error::GradeMismatch { expected: 2, found: 1 });

    let (_, w) = semigroup();
    let d = dnk(&w, &w, 0).unwrap();
    assert_eq!(hf(&d, -2, 6), hf(&w, -2, 6));
}

#[test]
fn xi_needs_nu() {
    let (r, w) = semigroup();
    let k = cyclic(&r, &["x", "y", "z"]);
    assert_eq!(xi_obstructions(&k, &w, 1).unwrap_err(), Error::NuNotIso);
    let kx = modlink::modules::tensor(&cyclic(&r, &["x"]), &w).unwrap();
    let (e1, e2) = xi_obstructions(&kx, &w, 1).unwrap();
    assert!(e1.module.is_zero() && e2.module.is_zero());
}

#[test]
fn pk_dimensions() {
    let (r, w) = semigroup();
    assert_eq!(pk_dimension(&w, &w, 3).unwrap().value, Some(Pd::Finite(0)));
    let kx = modlink::modules::tensor(&cyclic(&r, &["x"]), &w).unwrap();
    let d = pk_dimension(&kx, &w, 3).unwrap();
    assert_eq!(d.value, Some(Pd::Finite(1)));
    assert_eq!(hf(&hom_module(&w, &kx).unwrap(), -1, 4), hf(&cyclic(&r, &["x"]), -1, 4));
    let k = cyclic(&r, &["x", "y", "z"]);
    let d = pk_dimension(&k, &w, 2).unwrap();
    assert_eq!(d.verdict, Verdict::UndecidedAtBound(2));
    assert!(d.reason.unwrap().contains("natural map"));
}

#[test]
fn colinkage_with_free_k_is_linkage() {
    for (vars, c, i) in [(vec!["x"], vec!["x^3"], vec!["x"]), (vec!["x", "y", "z", "w"], CUBIC[..2].to_vec(), CUBIC.to_vec())] {
        let s = ring(101, &vars);
        let ks = GradedModule::free(&s, &[0]);
        let phi = natural(&s, &c, &i);
        let co = CoreflexiveEpi::certify(phi.clone(), &ks, CoTag::PKn, 3).unwrap();
        let re = ReflexiveEpi::certify(phi, &ks, CategoryTag::Pn, 3).unwrap();
        let a = colink_operator(&co).unwrap().colinked_module;
        let b = link_operator(&re).unwrap().linked_module;
        assert_eq!(a.annihilator(), b.annihilator());
        assert_eq!(hf(&a, -6, 4), hf(&b, -6, 4));
        assert!(is_colinked_by(&co).unwrap());
    }
}

#[test]
fn colinkage_for_twisted_free_k() {
    let s = ring(101, &["x"]);
    let w = canonical_module(&s).unwrap();
    assert_eq!(w.gen_degs(), &[1]);
    let phi = natural(&s, &["x^3"], &["x"]);
    let co = CoreflexiveEpi::certify(phi.clone(), &w, CoTag::PKn, 3).unwrap();
    let a = colink_operator(&co).unwrap().colinked_module;
    let re = ReflexiveEpi::certify(phi, &GradedModule::free(&s, &[0]), CategoryTag::Pn, 3).unwrap();
    let b = link_operator(&re).unwrap().linked_module;
    assert_eq!(a.annihilator(), b.annihilator());
    assert!(same_hf_up_to_shift(&a, &b, -4..=4));
}

#[test]
fn colinkage_over_semigroup_ring_matches_closed_form() {
    let (r, w) = semigroup();
    let phi = natural(&r, &["x^2"], &["x"]);
    let re = ReflexiveEpi::certify(phi, &w, CategoryTag::Pn, 3).unwrap();
    let fwd = adjoint_transfer(&re, &w, 3).unwrap();
    assert!(fwd.round_trip_iso);
    let co = colink_operator(&fwd.epi).unwrap().colinked_module;
    let closed = cyclic_link(&r, &polys(&r, &["x"]), &polys(&r, &["x^2"]), &w).unwrap().module;
    assert_eq!(co.annihilator(), closed.annihilator());
    assert!(same_hf_up_to_shift(&co, &closed, -4..=6));
    assert_eq!(co.length(), Some(3));
    assert!(is_colinked_by(&fwd.epi).unwrap());
    assert_eq!(is_colinked_by(&fwd.epi).unwrap(), is_linked_by(&re).unwrap());

    let back = adjoint_transfer_back(&fwd.epi, 3).unwrap();
    assert!(back.round_trip_iso);
    assert_eq!(hf(&back.epi.phi.source, -2, 5), hf(&re.phi.source, -2, 5));
    assert_eq!(hf(&back.epi.phi.target, -2, 5), hf(&re.phi.target, -2, 5));
}

#[test]
fn mixed_ideal_is_not_colinked() {
    let s = ring(101, &["x", "y"]);
    let ks = GradedModule::free(&s, &[0]);
    let co = CoreflexiveEpi::certify(natural(&s, &["x^2"], &["x^2", "x*y"]), &ks, CoTag::PKn, 3).unwrap();
    assert!(!is_colinked_by(&co).unwrap());
}

#[test]
fn self_colinkage_through_split_epi() {
    let s = ring(101, &["x", "y"]);
    let ks = GradedModule::free(&s, &[0]);
    let m = cyclic(&s, &["x"]);
    let d = dnk(&m, &ks, 1).unwrap();
    let sum = m.direct_sum(&d);
    let co = CoreflexiveEpi::certify(sum.proj[0].clone(), &ks, CoTag::PKn, 3).unwrap();
    assert!(is_colinked_by(&co).unwrap());
    let out = colink_operator(&co).unwrap().colinked_module;
    assert_eq!(hf(&out, -3, 4), hf(&m, -3, 4));
}

#[test]
fn transfer_with_free_k_is_identity() {
    let s = ring(101, &["x", "y"]);
    let ks = GradedModule::free(&s, &[0]);
    let re = ReflexiveEpi::certify(natural(&s, &["x^2"], &["x"]), &ks, CategoryTag::Pn, 3).unwrap();
    let fwd = adjoint_transfer(&re, &ks, 3).unwrap();
    assert!(fwd.round_trip_iso);
    assert_eq!(hf(&fwd.epi.phi.source, -2, 4), hf(&re.phi.source, -2, 4));
    assert_eq!(fwd.epi.phi.target.annihilator(), re.phi.target.annihilator());
}
