mod common;

use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{fixture, hom_dim_oracle};
use envlab::algebra::{build_algebra, FDAlgebra, Quiver, Relation};
use envlab::category::{AddCategory, EObject};
use envlab::envelope::{build_envelope, verify_weak_kernel, weak_kernel, Envelope};
use envlab::exact::{is_conflation, is_generator_wise_epi, is_split_epi, Bounds, DeflationSearch, Membership, StructureKind};
use envlab::field::Field;
use envlab::homological::{composition_factors, composition_multiplicities, ext1, ext1_padded, random_module};
use envlab::linalg::Mat;
use envlab::module::{hom_basis, FDModule, ModMorphism};
use envlab::workbench::corpus_names;

struct Fixture {
    tag: String,
    cat: AddCategory,
    env: Envelope,
}

fn fixtures() -> &'static [Fixture] {
    static CELL: OnceLock<Vec<Fixture>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut out = Vec::new();
        for name in corpus_names() {
            let r = fixture(name);
            for (s, st) in &r.structures {
                let env = build_envelope(&r.category, st, Bounds::default_for(&r.category));
                out.push(Fixture { tag: format!("{name}/{s}"), cat: r.category.clone(), env });
            }
        }
        out
    })
}

fn pick(rng: &mut ChaCha8Rng) -> &'static Fixture {
    let all = fixtures();
    &all[rng.gen_range(0..all.len())]
}

/// Random acyclic quiver on up to three vertices with optional zero relations.
fn random_algebra(rng: &mut ChaCha8Rng) -> Arc<FDAlgebra> {
    let f = Field::prime(common::P).unwrap();
    let n = rng.gen_range(1..=3);
    let vertices: Vec<String> = (0..n).map(|v| format!("v{v}")).collect();
    let mut arrows = Vec::new();
    for s in 0..n {
        for t in s + 1..n {
            for _ in 0..rng.gen_range(0..=2) {
                arrows.push((format!("a{}", arrows.len()), vertices[s].clone(), vertices[t].clone()));
            }
        }
    }
    let q = Quiver::new(vertices, arrows.clone()).unwrap();
    let mut relations = Vec::new();
    for (i, a) in arrows.iter().enumerate() {
        for (j, b) in arrows.iter().enumerate() {
            if a.2 == b.1 && rng.gen_bool(0.5) {
                relations.push(Relation { terms: vec![(f.one(), vec![i, j])] });
            }
        }
    }
    Arc::new(build_algebra(f, &q, &relations, 2).unwrap())
}

fn random_map(m: &FDModule, n: &FDModule, rng: &mut ChaCha8Rng) -> ModMorphism {
    let f = m.field();
    hom_basis(m, n).unwrap().iter().fold(ModMorphism::zero(m, n), |acc, b| acc.add(&b.scale(&f.random(rng))))
}

fn random_invertible(f: Field, n: usize, rng: &mut ChaCha8Rng) -> Mat {
    loop {
        let mut m = Mat::zeros(f, n, n);
        for r in 0..n {
            for c in 0..n {
                m.set(r, c, f.random(rng));
            }
        }
        if m.is_invertible() {
            return m;
        }
    }
}

fn base_change(m: &FDModule, rng: &mut ChaCha8Rng) -> FDModule {
    let alg = m.algebra();
    let p: Vec<Mat> = m.dims().iter().map(|&d| random_invertible(m.field(), d, rng)).collect();
    let action = (0..alg.dim())
        .map(|b| {
            let (i, j) = alg.slot_of(b);
            p[j].mul(m.action(b)).mul(&p[i].inverse().unwrap())
        })
        .collect();
    FDModule::new(alg.clone(), m.dims().to_vec(), action).unwrap()
}

fn random_object(rng: &mut ChaCha8Rng, n: usize) -> EObject {
    loop {
        let x = EObject::new((0..n).map(|_| rng.gen_range(0..=1)).collect());
        if !x.is_zero() {
            return x;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn algebras_are_associative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = random_algebra(&mut rng);
        let d = alg.dim();
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let (x, y, z) = (alg.basis_vector(a), alg.basis_vector(b), alg.basis_vector(c));
                    prop_assert_eq!(alg.mul(&alg.mul(&x, &y), &z), alg.mul(&x, &alg.mul(&y, &z)));
                }
            }
        }
    }

    #[test]
    fn rank_nullity(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = random_algebra(&mut rng);
        let (m, n) = (random_module(&alg, &mut rng), random_module(&alg, &mut rng));
        let f = random_map(&m, &n, &mut rng);
        let (k, _) = f.kernel();
        prop_assert_eq!(k.dim() + f.rank(), m.dim());
        for s in 0..alg.num_slots() {
            prop_assert_eq!(k.dims()[s] + f.block(s).rank(), m.dims()[s]);
        }
    }

    #[test]
    fn hom_basis_matches_oracle(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = if rng.gen_bool(0.5) { random_algebra(&mut rng) } else { pick(&mut rng).cat.gamma().clone() };
        let (m, n) = (random_module(&alg, &mut rng), random_module(&alg, &mut rng));
        prop_assert_eq!(hom_basis(&m, &n).unwrap().len(), hom_dim_oracle(&m, &n));
    }

    #[test]
    fn composition_factors_additive_and_basis_free(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = random_algebra(&mut rng);
        let (m, n) = (random_module(&alg, &mut rng), random_module(&alg, &mut rng));
        let sum: Vec<usize> = composition_multiplicities(&m).iter().zip(composition_multiplicities(&n)).map(|(a, b)| a + b).collect();
        prop_assert_eq!(composition_multiplicities(&m.direct_sum(&n)), sum);
        prop_assert_eq!(composition_factors(&base_change(&m, &mut rng)), composition_factors(&m));
    }

    #[test]
    fn ext1_independent_of_presentation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = random_algebra(&mut rng);
        let (m, n) = (random_module(&alg, &mut rng), random_module(&alg, &mut rng));
        let slot = rng.gen_range(0..alg.num_slots());
        prop_assert_eq!(ext1(&m, &n), ext1_padded(&m, &n, slot));
    }

    #[test]
    fn yoneda_dimension_identity(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fx = pick(&mut rng);
        let e = &fx.cat;
        let (x, y) = (random_object(&mut rng, e.n()), random_object(&mut rng, e.n()));
        prop_assert_eq!(e.hom_dim(&x, &y), hom_dim_oracle(&e.yoneda(&x), &e.yoneda(&y)));
    }

    #[test]
    fn weak_kernels_are_weak_kernels(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fx = pick(&mut rng);
        let e = &fx.cat;
        let (x, y) = (random_object(&mut rng, e.n()), random_object(&mut rng, e.n()));
        let fld = e.field();
        let f = e.hom_basis(&x, &y).into_iter().fold(e.zero(&x, &y), |acc, b| e.add(&acc, &e.scale(&b, &fld.random(&mut rng))));
        prop_assert!(verify_weak_kernel(e, &f, &weak_kernel(e, &f)), "{}", fx.tag);
    }

    #[test]
    fn quotient_is_exact_and_kills_def(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fx = pick(&mut rng);
        let q = &fx.env.quotient;
        let gamma = fx.cat.gamma();
        let (m, n) = (random_module(gamma, &mut rng), random_module(gamma, &mut rng));
        let f = random_map(&m, &n, &mut rng);
        let qf = q.apply_map(&f);
        prop_assert_eq!(q.apply(&f.kernel().0).dims().to_vec(), qf.kernel().0.dims().to_vec());
        prop_assert_eq!(q.apply(&f.cokernel().0).dims().to_vec(), qf.cokernel().0.dims().to_vec());
        let in_def = composition_multiplicities(&m).iter().enumerate().all(|(i, &k)| k == 0 || fx.env.def.contains(i));
        prop_assert_eq!(in_def, q.apply(&m).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn enumerated_deflations_are_sound(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fx = pick(&mut rng);
        let e = &fx.cat;
        let s = &fx.env.structure;
        let bounds = Bounds::default_for(e);
        let mut search = DeflationSearch::new(e, s, bounds);
        let target = e.generator(rng.gen_range(0..e.n()));
        let ds = search.onto(&target);
        for d in &ds {
            prop_assert!(is_generator_wise_epi(e, d), "{}", fx.tag);
            if s.kind == StructureKind::Split {
                prop_assert!(is_split_epi(e, d), "{}", fx.tag);
            }
            if s.kind == StructureKind::Ambient {
                let k = e.kernel(d).expect("deflations have kernels");
                prop_assert!(is_conflation(e, &k, d).unwrap());
            }
            // factors of coker Hom(-, d) lie in D
            let (c, _) = e.yoneda_map(d).cokernel();
            for (i, &k) in composition_multiplicities(&c).iter().enumerate() {
                prop_assert!(k == 0 || fx.env.def.contains(i), "{}", fx.tag);
            }
            // pullback along a generator morphism into the target is never rejected
            let z = e.generator(rng.gen_range(0..e.n()));
            if let Some(g) = e.hom_basis(&z, &target).first() {
                if let Some((_, _, pb)) = e.pullback(d, g) {
                    prop_assert_ne!(search.is_deflation(&pb), Membership::No, "{}", fx.tag);
                }
            }
            // image under the embedding is an epimorphism
            prop_assert!(fx.env.embed_map(d).is_surjective());
        }
        let other = e.generator(rng.gen_range(0..e.n()));
        let es = search.onto(&other);
        if let (Some(d1), Some(d2)) = (ds.first(), es.last()) {
            prop_assert_eq!(search.is_deflation(&e.direct_sum(d1, d2)), Membership::Yes, "{}", fx.tag);
        }
    }
}

#[test]
fn split_structures_have_identity_envelopes_and_smallest_d() {
    for fx in fixtures() {
        if fx.env.structure.kind == StructureKind::Split {
            assert!(fx.env.quotient.is_identity() && *fx.env.quotient.corner == **fx.cat.gamma(), "{}", fx.tag);
        }
    }
}
