//! Desk-scale values recomputed by hand or by the dense oracle in `common`.

mod common;

use common::{fixture, hom_dim_oracle};
use envlab::checks::{dense_extension_check, refine_epi};
use envlab::envelope::{build_envelope, ext_kernel_verify, weak_kernel, Verdict};
use envlab::exact::{enumerate_deflations, is_deflation, Bounds, Membership};
use envlab::homological::{composition_factors, ext1, projective_cover};
use envlab::module::{hom_dim, FDModule};
use envlab::quotient::{compute_presentation, gabriel_hom, is_def_closed, is_lex};

#[test]
fn algebra_dimensions() {
    let a2 = fixture("FIX-A2-ALL");
    assert_eq!(a2.algebra.dim(), 3);
    let kron = fixture("FIX-KRON");
    assert_eq!(kron.algebra.dim(), 10);
    assert_eq!(kron.category.gamma().dim(), 10);
}

#[test]
fn module_level_values_over_a2() {
    let r = fixture("FIX-A2-ALL");
    let (p1, p2, s1) = (&r.modules["P1"], &r.modules["P2"], &r.modules["S1"]);
    assert_eq!((hom_dim(p2, p1), hom_dim_oracle(p2, p1)), (1, 1));
    assert_eq!((hom_dim(p1, p2), hom_dim_oracle(p1, p2)), (0, 0));
    assert_eq!(ext1(s1, p2), 1);
    assert_eq!(ext1(s1, s1), 0);
}

#[test]
fn gamma_level_values() {
    let r = fixture("FIX-A2-ALL");
    let e = &r.category;
    let gamma = e.gamma();
    assert_eq!(e.yoneda(&e.generator(0)).dims(), [1, 1, 0]);
    let d = e.hom_basis(&e.generator(0), &e.generator(2)).remove(0);
    let (c, _) = e.yoneda_map(&d).cokernel();
    assert_eq!(c.dims(), [0, 0, 1]);
    let p = FDModule::projective(gamma.clone(), 0);
    assert_eq!(composition_factors(&p), ["S[P1]", "S[P2]"]);
    // the covariant representable Hom(P1, -) is the projective on the other side
    let op = e.opposite();
    let q = op.yoneda(&op.generator(0));
    assert_eq!(q.dims(), [1, 0, 1]);
    assert_eq!(composition_factors(&q), ["S[P1]", "S[S1]"]);
    let cover = projective_cover(&FDModule::simple(gamma.clone(), 2));
    assert_eq!(cover.summand_slots, [2]);
    assert_eq!(cover.module.dims(), e.yoneda(&e.generator(2)).dims());
}

#[test]
fn deflation_membership_values() {
    let r = fixture("FIX-A2-ALL");
    let e = &r.category;
    let s = &r.structures["all"];
    let b = Bounds::new(1, 2 * e.n());
    let d = e.hom_basis(&e.generator(0), &e.generator(2)).remove(0);
    assert_eq!(is_deflation(e, s, &d, b), Membership::Yes);
    let mono = e.hom_basis(&e.generator(1), &e.generator(0)).remove(0);
    assert_eq!(is_deflation(e, s, &mono, b), Membership::No);
    assert!(enumerate_deflations(e, s, &e.generator(2), b).contains(&d));
    let zero = e.zero_object();
    assert_eq!(enumerate_deflations(e, s, &zero, b), vec![e.identity(&zero)]);
}

#[test]
fn quotient_values() {
    let r = fixture("FIX-A2-ALL");
    let e = &r.category;
    let s = &r.structures["all"];
    let env = build_envelope(e, s, Bounds::default_for(e));
    let (yp1, ys1) = (e.yoneda(&e.generator(0)), e.yoneda(&e.generator(2)));
    assert_eq!(env.quotient.apply(&yp1).dims(), [1, 1]);
    assert_eq!(gabriel_hom(&env.def, &yp1, &ys1), 1);
    let simple = FDModule::simple(e.gamma().clone(), 2);
    assert_eq!(gabriel_hom(&env.def, &yp1, &simple), 0);
    assert!(!is_lex(e, s, &simple));
    assert!(is_def_closed(e, &env.def, &yp1));
    assert!(!is_def_closed(e, &env.def, &simple));
}

#[test]
fn split_presentation_of_killed_simple() {
    let r = fixture("FIX-A2-SPLIT");
    let e = &r.category;
    let env = build_envelope(e, &r.structures["split"], Bounds::default_for(e));
    let pres = compute_presentation(e, &env.quotient, &FDModule::simple(e.gamma().clone(), 2));
    assert_eq!((pres.e0.clone(), pres.e1.clone()), (e.generator(0), e.generator(2)));
    assert_eq!(pres.a, e.hom_basis(&e.generator(0), &e.generator(2)).remove(0));
    let rep = dense_extension_check(&env, &pres.witness.target().clone());
    assert_eq!(rep.verdict, Verdict::Pass);
}

#[test]
fn kernels_and_ext_kernels() {
    let r = fixture("FIX-A2-ALL");
    let e = &r.category;
    let env = build_envelope(e, &r.structures["all"], Bounds::new(1, 2 * e.n()));
    let f = e.hom_basis(&e.generator(0), &e.generator(2)).remove(0);
    let w = weak_kernel(e, &f);
    assert_eq!(w.source(), &e.generator(1));
    let g = e.hom_basis(&e.generator(1), &e.generator(0)).remove(0);
    assert_eq!(ext_kernel_verify(&env, &g, &f).unwrap().verdict, Verdict::Pass);
    let zero = e.zero(&e.zero_object(), &e.generator(0));
    assert_eq!(ext_kernel_verify(&env, &zero, &f).unwrap().verdict, Verdict::Fail);
}

#[test]
fn refined_epi_onto_killed_quotient() {
    let r = fixture("FIX-A2-ALL");
    let e = &r.category;
    let env = build_envelope(e, &r.structures["all"], Bounds::default_for(e));
    let p = env.embed_map(&e.hom_basis(&e.generator(0), &e.generator(2)).remove(0));
    let (x, g) = refine_epi(&env, &p).unwrap();
    assert_eq!(x, e.generator(0));
    assert!(g.is_iso() && p.compose(&g).is_surjective());
}
