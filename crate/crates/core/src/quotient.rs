//! `mod(E)` as right `Γ`-modules, the simples generating `def(E)`, and the
//! quotient `mod(E)/def(E)` realized by idempotent truncation `M ↦ Me`.

use std::sync::Arc;

use crate::algebra::FDAlgebra;
use crate::category::{AddCategory, EMorphism, EObject};
use crate::exact::{ambient_ext_targets, generating_conflations, ExactStructure, StructureKind};
use crate::homological::{composition_multiplicities, ext1, map_from_projectives, projective_cover, reject, trace};
use crate::linalg::{Mat, Vector};
use crate::module::{hom_basis, hom_dim, FDModule, ModMorphism};

/// The simples of `Γ` generating `def(E)` and where each came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefData {
    pub structure: String,
    pub kind: StructureKind,
    /// Generator indices `i` with `S[G_i]` in `def(E)`, ascending.
    pub simples: Vec<usize>,
    pub witnesses: Vec<(usize, String)>,
    labels: Vec<String>,
}

impl DefData {
    pub fn contains(&self, i: usize) -> bool {
        self.simples.contains(&i)
    }

    pub fn support(&self) -> Vec<bool> {
        (0..self.labels.len()).map(|i| self.contains(i)).collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.simples.iter().map(|&i| format!("S[{}]", self.labels[i])).collect()
    }

    /// Generators outside `D`, in order.
    pub fn kept(&self) -> Vec<usize> {
        (0..self.labels.len()).filter(|i| !self.contains(*i)).collect()
    }
}

/// Union of the composition factors of `coker Hom(-, d)` over the generating
/// deflations `d`.
pub fn def_simples(e: &AddCategory, s: &ExactStructure) -> DefData {
    let mut hits: Vec<Option<String>> = vec![None; e.n()];
    if s.kind != StructureKind::Split {
        for (k, c) in generating_conflations(e, s).iter().enumerate() {
            let (coker, _) = e.yoneda_map(&c.deflation).cokernel();
            for (i, m) in composition_multiplicities(&coker).into_iter().enumerate() {
                if m > 0 && hits[i].is_none() {
                    hits[i] = Some(format!(
                        "coker Hom(-, d) for conflation #{k} onto {}",
                        e.describe(c.deflation.target())
                    ));
                }
            }
        }
        if s.kind == StructureKind::Ambient {
            for (w, i) in ambient_ext_targets(e) {
                if hits[w].is_none() {
                    hits[w] = Some(format!("Ext^1({}, {}) != 0", e.label(w), e.label(i)));
                }
            }
        }
    }
    let simples: Vec<usize> = (0..e.n()).filter(|&i| hits[i].is_some()).collect();
    let witnesses = simples.iter().map(|&i| (i, hits[i].clone().unwrap())).collect();
    DefData { structure: s.name.clone(), kind: s.kind, simples, witnesses, labels: e.labels().to_vec() }
}

/// `e = Σ e_i` over generators outside `D`, and the corner algebra `eΓe`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientCtx {
    pub keep: Vec<usize>,
    pub corner: Arc<FDAlgebra>,
    pub basis_map: Vec<usize>,
    pub gamma: Arc<FDAlgebra>,
}

pub fn serre_quotient(e: &AddCategory, d: &DefData) -> QuotientCtx {
    let keep = d.kept();
    let (corner, basis_map) = e.gamma().corner(&keep);
    QuotientCtx { keep, corner: Arc::new(corner), basis_map, gamma: e.gamma().clone() }
}

impl QuotientCtx {
    pub fn apply(&self, m: &FDModule) -> FDModule {
        m.truncate(self.corner.clone(), &self.keep, &self.basis_map)
    }

    pub fn apply_map(&self, f: &ModMorphism) -> ModMorphism {
        let blocks = self.keep.iter().map(|&s| f.block(s).clone()).collect();
        ModMorphism::new_unchecked(self.apply(f.source()), self.apply(f.target()), blocks)
    }

    /// Corner slot of a kept generator.
    pub fn slot_of_generator(&self, g: usize) -> Option<usize> {
        self.keep.iter().position(|&k| k == g)
    }

    pub fn is_identity(&self) -> bool {
        self.keep.len() == self.gamma.num_slots()
    }
}

pub fn quotient_apply(q: &QuotientCtx, m: &FDModule) -> FDModule {
    q.apply(m)
}

pub fn quotient_apply_map(q: &QuotientCtx, f: &ModMorphism) -> ModMorphism {
    q.apply_map(f)
}

/// `dim Hom_Γ(reject_D(M), N / trace_D(N))`.
pub fn gabriel_hom(d: &DefData, m: &FDModule, n: &FDModule) -> usize {
    let support = d.support();
    let (r, _) = reject(m, &support);
    let (_, t) = trace(n, &support);
    let (nq, _) = t.cokernel();
    hom_dim(&r, &nq)
}

/// `i_R(X) = quotient_apply(yoneda(X))` and its effect on morphisms.
pub fn embed_object(e: &AddCategory, q: &QuotientCtx, x: &EObject) -> FDModule {
    q.apply(&e.yoneda(x))
}

pub fn embed_morphism(e: &AddCategory, q: &QuotientCtx, f: &EMorphism) -> ModMorphism {
    q.apply_map(&e.yoneda_map(f))
}

/// Matrix of `Hom_E(X, Y) → Hom_{eΓe}(i_R X, i_R Y)` on flattened blocks.
pub fn embedding_matrix(e: &AddCategory, q: &QuotientCtx, x: &EObject, y: &EObject) -> Mat {
    let (ix, iy) = (embed_object(e, q, x), embed_object(e, q, y));
    let rows: usize = ix.dims().iter().zip(iy.dims()).map(|(a, b)| a * b).sum();
    let cols: Vec<Vector> = e.hom_basis(x, y).iter().map(|f| embed_morphism(e, q, f).flatten()).collect();
    Mat::from_columns(e.field(), rows, &cols)
}

/// The `E`-morphism whose image under `i_R` is `phi`, if any.
pub fn lift_embedded(e: &AddCategory, q: &QuotientCtx, x: &EObject, y: &EObject, phi: &ModMorphism) -> Option<EMorphism> {
    let m = embedding_matrix(e, q, x, y);
    m.solve(&phi.flatten()).map(|c| e.from_coordinates(x, y, &c))
}

/// `E_0 → E_1 → M → 0` with `E_i` supported outside `D`.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub e0: EObject,
    pub e1: EObject,
    pub a: EMorphism,
    /// `i_R(E_1) → M`, a cokernel of `i_R(a)`.
    pub p: ModMorphism,
    /// The induced `coker i_R(a) → M`, an isomorphism.
    pub witness: ModMorphism,
}

fn object_on_slots(e: &AddCategory, q: &QuotientCtx, slots: &[usize]) -> EObject {
    e.object_of_slots(&slots.iter().map(|&t| q.keep[t]).collect::<Vec<_>>())
}

/// Projective presentation over `eΓe` lifted to `E`. With `pad = Some(t)` the
/// first cover receives an extra copy of the projective at corner slot `t`
/// mapping to zero, giving a second, non-minimal presentation.
pub fn compute_presentation_with(e: &AddCategory, q: &QuotientCtx, m: &FDModule, pad: Option<usize>) -> Presentation {
    let cover = projective_cover(m);
    let mut gens: Vec<(usize, Vector)> = cover.summand_slots.iter().cloned().zip(cover.generators.clone()).collect();
    if let Some(t) = pad {
        let at = gens.iter().position(|(s, _)| *s > t).unwrap_or(gens.len());
        gens.insert(at, (t, vec![e.field().zero(); m.dims()[t]]));
    }
    let (_, p) = map_from_projectives(m, &gens);
    let slots1: Vec<usize> = gens.iter().map(|(s, _)| *s).collect();
    let e1 = object_on_slots(e, q, &slots1);
    let (k, incl) = p.kernel();
    let cover2 = projective_cover(&k);
    let e0 = object_on_slots(e, q, &cover2.summand_slots);
    let into = incl.compose(&cover2.map);
    let src = embed_object(e, q, &e0);
    let tgt = embed_object(e, q, &e1);
    let into = ModMorphism::new_unchecked(src, tgt.clone(), into.blocks().to_vec());
    let a = lift_embedded(e, q, &e0, &e1, &into).expect("maps between projectives lift");
    let p = ModMorphism::new_unchecked(tgt, m.clone(), p.blocks().to_vec());
    let (_, pi) = embed_morphism(e, q, &a).cokernel();
    let witness_blocks = (0..m.dims().len())
        .map(|s| {
            let sec = pi.block(s).solve_matrix(&Mat::identity(e.field(), pi.block(s).rows())).expect("surjective");
            p.block(s).mul(&sec)
        })
        .collect();
    let witness = ModMorphism::new_unchecked(pi.target().clone(), m.clone(), witness_blocks);
    Presentation { e0, e1, a, p, witness }
}

pub fn compute_presentation(e: &AddCategory, q: &QuotientCtx, m: &FDModule) -> Presentation {
    compute_presentation_with(e, q, m, None)
}

/// `0 → M(C) → M(B) → M(A)` exact for every generating conflation.
pub fn is_lex(e: &AddCategory, s: &ExactStructure, m: &FDModule) -> bool {
    if s.kind == StructureKind::Split {
        return true;
    }
    generating_conflations(e, s).iter().all(|c| {
        let md = e.evaluate(m, &c.deflation);
        let mi = e.evaluate(m, &c.inflation);
        md.rank() == md.cols() && mi.cols() - mi.rank() == md.rank()
    })
}

/// `Hom(S, M) = 0` and `Ext^1(S, M) = 0` for every `S` in `D`.
pub fn is_def_closed(e: &AddCategory, d: &DefData, m: &FDModule) -> bool {
    d.simples.iter().all(|&i| {
        let s = FDModule::simple(e.gamma().clone(), i);
        hom_basis(&s, m).map(|b| b.is_empty()).unwrap_or(false) && ext1(&s, m) == 0
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, Quiver};
    use crate::field::Field;
    use crate::homological::small_indecomposables;

    fn a2_all() -> (AddCategory, ExactStructure) {
        let q = Quiver::new(vec!["1".into(), "2".into()], vec![("a".into(), "1".into(), "2".into())]).unwrap();
        let lambda = Arc::new(build_algebra(Field::prime(101).unwrap(), &q, &[], 1).unwrap());
        let gens = vec![
            FDModule::projective(lambda.clone(), 0),
            FDModule::projective(lambda.clone(), 1),
            FDModule::simple(lambda, 0),
        ];
        let e = AddCategory::from_modules(vec!["P1".into(), "P2".into(), "S1".into()], gens).unwrap();
        (e, ExactStructure::ambient("all"))
    }

    #[test]
    fn def_simples_of_a2() {
        let (e, s) = a2_all();
        let d = def_simples(&e, &s);
        assert_eq!(d.labels(), vec!["S[S1]"]);
        assert!(def_simples(&e, &ExactStructure::split("split")).simples.is_empty());
        let q = serre_quotient(&e, &d);
        assert_eq!(q.corner.dim(), 3);
        assert_eq!(embed_object(&e, &q, &e.generator(0)).dims(), &[1, 1]);
        assert_eq!(embed_object(&e, &q, &e.generator(1)).dims(), &[0, 1]);
        assert_eq!(embed_object(&e, &q, &e.generator(2)).dims(), &[1, 0]);
    }

    #[test]
    fn gabriel_hom_examples() {
        let (e, s) = a2_all();
        let d = def_simples(&e, &s);
        let y = |i| e.yoneda(&e.generator(i));
        assert_eq!(gabriel_hom(&d, &y(0), &y(2)), 1);
        let s1 = FDModule::simple(e.gamma().clone(), 2);
        assert_eq!(gabriel_hom(&d, &y(0), &s1), 0);
    }

    #[test]
    fn lex_and_def_closed_agree_on_indecomposables() {
        let (e, s) = a2_all();
        let d = def_simples(&e, &s);
        let mods = small_indecomposables(e.gamma());
        assert!(mods.len() >= 5);
        for m in &mods {
            assert_eq!(is_lex(&e, &s, m), is_def_closed(&e, &d, m), "{:?}", m.dims());
        }
        let s1 = FDModule::simple(e.gamma().clone(), 2);
        assert!(!is_lex(&e, &s, &s1));
    }

    #[test]
    fn presentation_of_simple_in_split_case() {
        let (e, _) = a2_all();
        let d = def_simples(&e, &ExactStructure::split("split"));
        let q = serre_quotient(&e, &d);
        let s1 = FDModule::simple(q.corner.clone(), 2);
        let pres = compute_presentation(&e, &q, &s1);
        assert_eq!(pres.e1, e.generator(2));
        assert_eq!(pres.e0, e.generator(0));
        assert!(pres.witness.is_iso());
        let padded = compute_presentation_with(&e, &q, &s1, Some(1));
        assert!(padded.witness.is_iso());
        assert_eq!(padded.e1, EObject::new(vec![0, 1, 1]));
    }
}
