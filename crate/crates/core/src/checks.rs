//! Dense extensions, the universal property, comparison of structures,
//! left abelian factorizations and duality.

use std::sync::Arc;
use std::time::Instant;

use crate::algebra::FDAlgebra;
use crate::category::{AddCategory, Ambient, EMorphism, EObject};
use crate::envelope::{build_envelope, construct_envelope, CheckReport, Envelope, Verdict};
use crate::error::{bad_input, Result};
use crate::exact::{generating_conflations, is_deflation, Bounds, Conflation, ExactStructure, Membership, StructureKind};
use crate::homological::{is_isomorphic, projective_cover};
use crate::linalg::{Mat, Vector};
use crate::module::{hom_basis, FDModule, ModMorphism};
use crate::quotient::{compute_presentation, compute_presentation_with, lift_embedded, Presentation};

/// `[p, −f]: A ⊕ X → M` and its kernel, returning the two projections.
fn module_pullback(p: &ModMorphism, f: &ModMorphism) -> (ModMorphism, ModMorphism) {
    let a = p.source();
    let x = f.source();
    let sum = a.direct_sum(x);
    let blocks = (0..a.dims().len()).map(|s| p.block(s).hstack(&f.block(s).neg())).collect();
    let m = ModMorphism::new_unchecked(sum.clone(), p.target().clone(), blocks);
    let (k, incl) = m.kernel();
    let pa = (0..a.dims().len()).map(|s| incl.block(s).block(0, 0, a.dims()[s], k.dims()[s])).collect();
    let px = (0..a.dims().len())
        .map(|s| incl.block(s).block(a.dims()[s], 0, x.dims()[s], k.dims()[s]))
        .collect();
    (
        ModMorphism::new_unchecked(k.clone(), a.clone(), pa),
        ModMorphism::new_unchecked(k, x.clone(), px),
    )
}

fn retarget(f: &ModMorphism, source: FDModule) -> ModMorphism {
    ModMorphism::new_unchecked(source, f.target().clone(), f.blocks().to_vec())
}

/// Given `p: M ↠ i_R(X)`, returns `X'` and `g: i_R(X') → M` with `p ∘ g`
/// an epimorphism, from the projective cover of `M`.
pub fn refine_epi(env: &Envelope, p: &ModMorphism) -> Result<(EObject, ModMorphism)> {
    if !p.is_surjective() {
        return Err(bad_input("refine_epi needs an epimorphism"));
    }
    let cover = projective_cover(p.source());
    let slots: Vec<usize> = cover.summand_slots.iter().map(|&t| env.quotient.keep[t]).collect();
    let x2 = env.cat.object_of_slots(&slots);
    let g = retarget(&cover.map, env.embed(&x2));
    Ok((x2, g))
}

/// Deflation `d: X' → X` with `i_R(d) = q ∘ t` for the refinement `t` of an
/// epimorphism `q: Y ↠ i_R(X)`; also returns `t`.
fn refined_deflation(env: &Envelope, x: &EObject, q: &ModMorphism) -> Option<(EMorphism, ModMorphism)> {
    let (x2, t) = refine_epi(env, q).ok()?;
    let dm = q.compose(&t);
    let d = lift_embedded(&env.cat, &env.quotient, &x2, x, &dm)?;
    Some((d, t))
}

/// The lifting and relation conditions for the presentation of `m`.
pub fn dense_extension_check(env: &Envelope, m: &FDModule) -> CheckReport {
    let start = Instant::now();
    let pres = compute_presentation(&env.cat, &env.quotient, m);
    let mut rep = dense_extension_check_with(env, &pres);
    rep.millis = start.elapsed().as_millis() as u64;
    rep
}

pub fn dense_extension_check_with(env: &Envelope, pres: &Presentation) -> CheckReport {
    let e = &env.cat;
    let q = &env.quotient;
    let mut rep = CheckReport::new("dense-extension");
    let mut search = env.deflations();
    let p = &pres.p;
    let m = p.target();
    let e1 = &pres.e1;
    // lifting: every f: i_R(X) → M, after a deflation, factors through p
    for x in e.generators() {
        let ix = env.embed(&x);
        for f in hom_basis(&ix, m).expect("same algebra") {
            let desc = format!("lift f: i_R({}) -> M", e.describe(&x));
            let (qe1, qx) = module_pullback(p, &f);
            if let Some((d, t)) = refined_deflation(env, &x, &qx) {
                if search.is_deflation(&d) == Membership::Yes {
                    let h = lift_embedded(e, q, d.source(), e1, &qe1.compose(&t));
                    if let Some(h) = h {
                        let lhs = f.compose(&env.embed_map(&d));
                        let rhs = p.compose(&env.embed_map(&h));
                        if lhs.flatten() == rhs.flatten() {
                            rep.record(Verdict::Pass, format!("{desc}: deflation from {}", e.describe(d.source())));
                            continue;
                        }
                    }
                }
            }
            let found = search.onto(&x).into_iter().find(|d| {
                let target = f.compose(&env.embed_map(d));
                let cols: Vec<Vector> =
                    e.hom_basis(d.source(), e1).iter().map(|h| p.compose(&env.embed_map(h)).flatten()).collect();
                let rhs = target.flatten();
                Mat::from_columns(e.field(), rhs.len(), &cols).solve(&rhs).is_some()
            });
            match found {
                Some(d) => rep.record(Verdict::Pass, format!("{desc}: enumerated deflation from {}", e.describe(d.source()))),
                None => rep.record(Verdict::Inconclusive, format!("{desc}: no deflation at depth {}", env.bounds.depth)),
            }
        }
    }
    // relations: every f: X → E_1 with p ∘ i_R(f) = 0, after a deflation, factors through a
    let ia = env.embed_map(&pres.a);
    for x in e.generators() {
        let basis = e.hom_basis(&x, e1);
        if basis.is_empty() {
            continue;
        }
        let cols: Vec<Vector> = basis.iter().map(|h| p.compose(&env.embed_map(h)).flatten()).collect();
        let rows = if cols.is_empty() { 0 } else { cols[0].len() };
        for v in Mat::from_columns(e.field(), rows, &cols).nullspace() {
            let f = e.from_coordinates(&x, e1, &v);
            let desc = format!("relation f: {} -> E1", e.describe(&x));
            if e.factor_through_left(&pres.a, &f).is_some() {
                rep.record(Verdict::Pass, format!("{desc}: identity deflation"));
                continue;
            }
            let (_, qx) = module_pullback(&ia, &env.embed_map(&f));
            if let Some((d, _)) = refined_deflation(env, &x, &qx) {
                if search.is_deflation(&d) == Membership::Yes && e.factor_through_left(&pres.a, &e.compose(&f, &d)).is_some() {
                    rep.record(Verdict::Pass, format!("{desc}: deflation from {}", e.describe(d.source())));
                    continue;
                }
            }
            let found = search.onto(&x).into_iter().find(|d| e.factor_through_left(&pres.a, &e.compose(&f, d)).is_some());
            match found {
                Some(d) => rep.record(Verdict::Pass, format!("{desc}: enumerated deflation from {}", e.describe(d.source()))),
                None => rep.record(Verdict::Inconclusive, format!("{desc}: no deflation at depth {}", env.bounds.depth)),
            }
        }
    }
    rep
}

/// Finite data of an additive functor `F: E → mod Σ`: the modules `F(G_i)`
/// and the maps `F(b)` for every basis element `b` of `Γ`.
#[derive(Debug, Clone)]
pub struct FunctorData {
    pub data: Ambient,
}

impl FunctorData {
    pub fn new(algebra: Arc<FDAlgebra>, images: Vec<FDModule>, maps: Vec<ModMorphism>) -> FunctorData {
        FunctorData { data: Ambient { algebra, generators: images, maps } }
    }

    /// The inclusion of `E` into its ambient module category.
    pub fn inclusion(e: &AddCategory) -> Option<FunctorData> {
        e.ambient().map(|a| FunctorData { data: a.clone() })
    }

    /// `i_R` itself, as functor data.
    pub fn embedding(env: &Envelope) -> FunctorData {
        let e = &env.cat;
        let images: Vec<FDModule> = e.generators().iter().map(|g| env.embed(g)).collect();
        let maps = (0..e.gamma().dim()).map(|b| env.embed_map(&e.basis_morphism(b))).collect();
        FunctorData::new(env.quotient.corner.clone(), images, maps)
    }

    /// The zero functor into `mod Σ`.
    pub fn zero(e: &AddCategory, algebra: Arc<FDAlgebra>) -> FunctorData {
        let z = FDModule::zero(algebra.clone());
        let images = vec![z.clone(); e.n()];
        let maps = (0..e.gamma().dim()).map(|_| ModMorphism::zero(&z, &z)).collect();
        FunctorData::new(algebra, images, maps)
    }

    pub fn object(&self, x: &EObject) -> FDModule {
        self.data.apply_object(x)
    }

    pub fn morphism(&self, e: &AddCategory, f: &EMorphism) -> ModMorphism {
        self.data.apply(e.field(), f)
    }

    /// Functoriality on basis pairs and right exactness on generating
    /// conflations.
    pub fn validate(&self, e: &AddCategory, s: &ExactStructure) -> Result<()> {
        let g = e.gamma();
        if self.data.generators.len() != e.n() || self.data.maps.len() != g.dim() {
            return Err(bad_input("functor data must give one module per generator and one map per basis element"));
        }
        for (b, m) in self.data.maps.iter().enumerate() {
            let (i, j) = g.slot_of(b);
            if m.source() != &self.data.generators[j] || m.target() != &self.data.generators[i] {
                return Err(bad_input(format!("F({}) has the wrong source or target", g.labels()[b])));
            }
            m.validate()?;
        }
        for i in 0..e.n() {
            let id = self.morphism(e, &e.identity(&e.generator(i)));
            if id != ModMorphism::identity(&self.data.generators[i]) {
                return Err(bad_input(format!("F does not preserve the identity of {}", e.label(i))));
            }
        }
        for a in 0..g.dim() {
            for b in 0..g.dim() {
                let (_, ja) = g.slot_of(a);
                let (ib, _) = g.slot_of(b);
                if ja != ib {
                    continue;
                }
                let fa = e.basis_morphism(a);
                let fb = e.basis_morphism(b);
                let lhs = self.morphism(e, &e.compose(&fa, &fb));
                let rhs = self.morphism(e, &fa).compose(&self.morphism(e, &fb));
                if lhs != rhs {
                    return Err(bad_input("F does not preserve composition"));
                }
            }
        }
        for c in generating_conflations(e, s) {
            let fi = self.morphism(e, &c.inflation);
            let fd = self.morphism(e, &c.deflation);
            if !fd.is_surjective() || fd.source().dim() - fd.rank() != fi.rank() {
                return Err(bad_input("F is not right exact on a generating conflation"));
            }
        }
        Ok(())
    }

    /// `F̃(M) = coker F(a)` for a presentation `a` of `M`.
    pub fn extend(&self, e: &AddCategory, pres: &Presentation) -> FDModule {
        self.morphism(e, &pres.a).cokernel().0
    }
}

/// The extension `F̃` with its checks: `F̃ ∘ i_R ≅ F` on generators and
/// independence of the chosen presentation on the given modules.
pub fn induce_functor(env: &Envelope, f: &FunctorData, modules: &[FDModule]) -> Result<(Vec<FDModule>, CheckReport)> {
    let start = Instant::now();
    let e = &env.cat;
    let q = &env.quotient;
    f.validate(e, &env.structure)?;
    let mut rep = CheckReport::new("universal-property");
    for x in e.generators() {
        let pres = compute_presentation(e, q, &env.embed(&x));
        let value = f.extend(e, &pres);
        rep.check(is_isomorphic(&value, &f.object(&x)), format!("F~(i_R({})) = F({})", e.describe(&x), e.describe(&x)));
    }
    let mut values = Vec::new();
    for (k, m) in modules.iter().enumerate() {
        let pres = compute_presentation(e, q, m);
        let value = f.extend(e, &pres);
        for t in 0..q.keep.len() {
            let padded = compute_presentation_with(e, q, m, Some(t));
            let other = f.extend(e, &padded);
            rep.check(
                padded.e1 != pres.e1 && is_isomorphic(&value, &other),
                format!("module #{k}: presentations through {} and {} agree", e.describe(&pres.e1), e.describe(&padded.e1)),
            );
        }
        values.push(value);
    }
    Ok((values, rep.timed(start)))
}

/// Structures `s ⊆ s2`: containment of `D`, and the truncation from the
/// envelope of `s` to that of `s2` commuting with both embeddings.
pub fn compare_structures(e: &AddCategory, s: &ExactStructure, s2: &ExactStructure, bounds: Bounds) -> Result<CheckReport> {
    let start = Instant::now();
    let mut rep = CheckReport::new("compare");
    for c in generating_conflations(e, s) {
        match is_deflation(e, s2, &c.deflation, bounds) {
            Membership::Yes => {}
            Membership::No => return Err(bad_input(format!("{} is not contained in {}", s.name, s2.name))),
            Membership::Inconclusive => rep.record(
                Verdict::Inconclusive,
                format!("containment of a deflation onto {}", e.describe(c.deflation.target())),
            ),
        }
    }
    let env1 = construct_envelope(e, s, bounds)?;
    let env2 = construct_envelope(e, s2, bounds)?;
    let contained = env1.def.simples.iter().all(|i| env2.def.contains(*i));
    rep.check(contained, format!("D: {:?} within {:?}", env1.def.labels(), env2.def.labels()));
    if !contained {
        return Ok(rep.timed(start));
    }
    let pos: Vec<usize> = env2.quotient.keep.iter().map(|g| env1.quotient.keep.iter().position(|k| k == g).unwrap()).collect();
    let (corner, basis_map) = env1.quotient.corner.corner(&pos);
    let corner = Arc::new(corner);
    rep.check(*corner == *env2.quotient.corner, format!("corner algebra of dimension {}", corner.dim()));
    let compare = |m: &FDModule| m.truncate(corner.clone(), &pos, &basis_map);
    let compare_map = |f: &ModMorphism| {
        ModMorphism::new_unchecked(compare(f.source()), compare(f.target()), pos.iter().map(|&s| f.block(s).clone()).collect())
    };
    for x in e.generators() {
        let lhs = compare(&env1.embed(&x));
        let rhs = env2.embed(&x);
        rep.check(lhs.dims() == rhs.dims() && lhs == rhs, format!("comparison of i_R({})", e.describe(&x)));
    }
    for x in e.generators() {
        for y in e.generators() {
            for f in e.hom_basis(&x, &y) {
                let fm = env1.embed_map(&f);
                let cf = compare_map(&fm);
                let (k, _) = fm.kernel();
                let (c, _) = fm.cokernel();
                let ok = compare(&k).dims() == cf.kernel().0.dims() && compare(&c).dims() == cf.cokernel().0.dims();
                rep.check(ok, format!("exactness on a map {} -> {}", e.describe(&x), e.describe(&y)));
            }
        }
    }
    Ok(rep.timed(start))
}

/// For `f: A → B`, `g: D → B` with `coker(f) ∘ g = 0`: a cokernel `d: Y → D`
/// and `h: Y → A` with `f ∘ h = g ∘ d`.
pub fn left_abelian_witness(f: &ModMorphism, g: &ModMorphism) -> Result<(ModMorphism, ModMorphism)> {
    if f.target() != g.target() {
        return Err(bad_input("f and g must share a target"));
    }
    let (_, c) = f.cokernel();
    if !c.compose(g).is_zero() {
        return Err(bad_input("coker(f) ∘ g is not zero"));
    }
    if g.is_zero() {
        return Ok((ModMorphism::identity(g.source()), ModMorphism::zero(g.source(), f.source())));
    }
    let (h, d) = module_pullback(f, g);
    debug_assert!(d.is_surjective());
    Ok((d, h))
}

/// The opposite category with inflations and deflations exchanged.
pub fn dualize(e: &AddCategory, s: &ExactStructure) -> (AddCategory, ExactStructure) {
    let op = e.opposite();
    let conflations = s
        .conflations
        .iter()
        .map(|c| Conflation { inflation: e.op_morphism(&c.deflation), deflation: e.op_morphism(&c.inflation) })
        .collect();
    (op, ExactStructure { name: s.name.clone(), kind: s.kind, conflations })
}

/// The envelope of the dual: the left envelope of `E`, read in `E^op`.
pub fn left_envelope(e: &AddCategory, s: &ExactStructure, bounds: Bounds) -> Envelope {
    let (op, sop) = dualize(e, s);
    build_envelope(&op, &sop, bounds)
}

/// Whether a structure only declares split data.
pub fn is_split_kind(s: &ExactStructure) -> bool {
    s.kind == StructureKind::Split
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, Quiver};
    use crate::field::Field;
    use crate::homological::small_indecomposables;

    fn a2() -> (AddCategory, Arc<FDAlgebra>) {
        let q = Quiver::new(vec!["1".into(), "2".into()], vec![("a".into(), "1".into(), "2".into())]).unwrap();
        let lambda = Arc::new(build_algebra(Field::prime(101).unwrap(), &q, &[], 1).unwrap());
        let gens = vec![
            FDModule::projective(lambda.clone(), 0),
            FDModule::projective(lambda.clone(), 1),
            FDModule::simple(lambda.clone(), 0),
        ];
        (AddCategory::from_modules(vec!["P1".into(), "P2".into(), "S1".into()], gens).unwrap(), lambda)
    }

    #[test]
    fn dense_extension_on_indecomposables() {
        let (e, _) = a2();
        for s in [ExactStructure::ambient("all"), ExactStructure::split("split")] {
            let env = build_envelope(&e, &s, Bounds::default_for(&e));
            for m in small_indecomposables(&env.quotient.corner) {
                let rep = dense_extension_check(&env, &m);
                assert_eq!(rep.verdict, Verdict::Pass, "{} {:?} {rep:?}", s.name, m.dims());
            }
        }
    }

    #[test]
    fn universal_property_for_inclusion() {
        let (e, _) = a2();
        let env = build_envelope(&e, &ExactStructure::split("split"), Bounds::default_for(&e));
        let f = FunctorData::inclusion(&e).unwrap();
        let s1 = FDModule::simple(env.quotient.corner.clone(), 2);
        let (values, rep) = induce_functor(&env, &f, &[s1]).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass, "{rep:?}");
        assert!(values[0].is_zero());
        let (_, rep) = induce_functor(&env, &FunctorData::embedding(&env), &[]).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
    }

    #[test]
    fn comparison_split_to_all() {
        let (e, _) = a2();
        let rep = compare_structures(&e, &ExactStructure::split("split"), &ExactStructure::ambient("all"), Bounds::default_for(&e))
            .unwrap();
        assert_eq!(rep.verdict, Verdict::Pass, "{rep:?}");
        let bad = compare_structures(&e, &ExactStructure::ambient("all"), &ExactStructure::split("split"), Bounds::default_for(&e));
        assert!(bad.is_err());
    }

    #[test]
    fn left_abelian_examples() {
        let (e, _) = a2();
        let env = build_envelope(&e, &ExactStructure::ambient("all"), Bounds::default_for(&e));
        let f = env.embed_map(&e.hom_basis(&e.generator(1), &e.generator(0)).remove(0));
        let g = env.embed_map(&e.identity(&e.generator(0)));
        assert!(left_abelian_witness(&f, &g).is_err());
        let surj = env.embed_map(&e.hom_basis(&e.generator(0), &e.generator(2)).remove(0));
        let g2 = env.embed_map(&e.identity(&e.generator(2)));
        let (d, h) = left_abelian_witness(&surj, &g2).unwrap();
        assert!(d.is_surjective());
        assert_eq!(surj.compose(&h), g2.compose(&d));
    }

    #[test]
    fn dual_envelope_has_dimension_three() {
        let (e, _) = a2();
        let s = ExactStructure::ambient("all");
        let env = left_envelope(&e, &s, Bounds::default_for(&e));
        assert_eq!(env.corner_dim(), 3);
        let (op, sop) = dualize(&e, &s);
        let (back, sback) = dualize(&op, &sop);
        assert_eq!(back, e);
        assert_eq!(sback, s);
    }
}
