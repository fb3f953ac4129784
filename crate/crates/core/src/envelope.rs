//! The envelope `i_R: E → mod(eΓe)` and the checks of its defining
//! properties: full faithfulness, exactness, reflection, weak kernels and
//! Ext-kernels.

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::category::{AddCategory, EMorphism, EObject};
use crate::error::{bad_input, Result};
use crate::exact::{
    generating_conflations, is_conflation, validate_structure, Bounds, Conflation, DeflationSearch, ExactStructure,
    Membership, StructureKind,
};
use crate::homological::{composition_multiplicities, projective_cover};
use crate::module::{hom_dim, FDModule, ModMorphism};
use crate::quotient::{def_simples, embed_morphism, embed_object, embedding_matrix, serre_quotient, DefData, QuotientCtx};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Inconclusive,
    Fail,
}

impl Verdict {
    /// Fail dominates inconclusive, which dominates pass.
    pub fn and(self, other: Verdict) -> Verdict {
        self.max(other)
    }

    pub fn all(vs: impl IntoIterator<Item = Verdict>) -> Verdict {
        vs.into_iter().fold(Verdict::Pass, Verdict::and)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Fail => "fail",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub verdict: Verdict,
    pub instances: usize,
    pub witnesses: Vec<String>,
    pub counterexamples: Vec<String>,
    pub inconclusive: Vec<String>,
    pub millis: u64,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> CheckReport {
        CheckReport {
            name: name.into(),
            verdict: Verdict::Pass,
            instances: 0,
            witnesses: Vec::new(),
            counterexamples: Vec::new(),
            inconclusive: Vec::new(),
            millis: 0,
        }
    }

    pub fn record(&mut self, verdict: Verdict, note: impl Into<String>) {
        self.instances += 1;
        let note = note.into();
        match verdict {
            Verdict::Pass => {
                if !note.is_empty() {
                    self.witnesses.push(note)
                }
            }
            Verdict::Fail => self.counterexamples.push(note),
            Verdict::Inconclusive => self.inconclusive.push(note),
        }
        self.verdict = self.verdict.and(verdict);
    }

    pub fn check(&mut self, ok: bool, note: impl Into<String>) {
        self.record(if ok { Verdict::Pass } else { Verdict::Fail }, note);
    }

    pub fn absorb(&mut self, other: CheckReport) {
        self.instances += other.instances;
        self.verdict = self.verdict.and(other.verdict);
        let tag = |v: Vec<String>| v.into_iter().map(|s| format!("{}: {s}", other.name)).collect::<Vec<_>>();
        self.witnesses.extend(tag(other.witnesses));
        self.counterexamples.extend(tag(other.counterexamples));
        self.inconclusive.extend(tag(other.inconclusive));
    }

    pub(crate) fn timed(mut self, start: Instant) -> CheckReport {
        self.millis = start.elapsed().as_millis() as u64;
        self
    }
}

/// `A_r(E) = mod(eΓe)` with `i_R = (−)e ∘ yoneda`.
#[derive(Debug, Clone)]
pub struct Envelope {
    pub cat: AddCategory,
    pub structure: ExactStructure,
    pub def: DefData,
    pub quotient: QuotientCtx,
    pub bounds: Bounds,
}

impl Envelope {
    pub fn embed(&self, x: &EObject) -> FDModule {
        embed_object(&self.cat, &self.quotient, x)
    }

    pub fn embed_map(&self, f: &EMorphism) -> ModMorphism {
        embed_morphism(&self.cat, &self.quotient, f)
    }

    pub fn corner_dim(&self) -> usize {
        self.quotient.corner.dim()
    }

    /// Dimension vectors of `i_R(G_i)`.
    pub fn embedding_dims(&self) -> Vec<Vec<usize>> {
        self.cat.generators().iter().map(|g| self.embed(g).dims().to_vec()).collect()
    }

    pub fn deflations(&self) -> DeflationSearch<'_> {
        DeflationSearch::new(&self.cat, &self.structure, self.bounds)
    }
}

/// Validates the structure, computes `D` and truncates.
pub fn construct_envelope(e: &AddCategory, s: &ExactStructure, bounds: Bounds) -> Result<Envelope> {
    validate_structure(e, s, bounds).into_result()?;
    Ok(build_envelope(e, s, bounds))
}

/// As [`construct_envelope`] without the validation pass.
pub fn build_envelope(e: &AddCategory, s: &ExactStructure, bounds: Bounds) -> Envelope {
    let def = def_simples(e, s);
    let quotient = serre_quotient(e, &def);
    Envelope { cat: e.clone(), structure: s.clone(), def, quotient, bounds }
}

fn short_exact(i: &ModMorphism, d: &ModMorphism) -> bool {
    i.is_injective() && d.is_surjective() && d.source().dim() - d.rank() == i.rank() && d.compose(i).is_zero()
}

/// Kernel-cokernel pairs `(k, d)` with `d: B → C`, `C` a generator and `B` of
/// at most two copies, `d` a hom-basis element, a sum of basis elements, or a
/// radical approximation.
fn candidate_pairs(e: &AddCategory) -> Vec<(EMorphism, EMorphism)> {
    let mut out = Vec::new();
    for c in e.generators() {
        let mut cands: Vec<EMorphism> = Vec::new();
        for b in EObject::enumerate(e.n(), 2, 2) {
            if b.is_zero() {
                continue;
            }
            let basis = e.hom_basis(&b, &c);
            if basis.is_empty() {
                continue;
            }
            let sum = basis.iter().skip(1).fold(basis[0].clone(), |acc, f| e.add(&acc, f));
            cands.extend(basis);
            cands.push(sum);
        }
        cands.push(crate::exact::radical_approximation(e, c.copies()[0]));
        for d in cands {
            if d.source().is_zero() {
                continue;
            }
            if let Some(k) = e.kernel(&d) {
                if is_conflation(e, &k, &d).unwrap_or(false) && !out.iter().any(|(_, d2)| d2 == &d) {
                    out.push((k, d));
                }
            }
        }
    }
    out
}

/// Full faithfulness and exactness of `i_R`, and reflection of conflations.
pub fn check_embedding(env: &Envelope) -> CheckReport {
    let start = Instant::now();
    let e = &env.cat;
    let mut ff = CheckReport::new("fully-faithful");
    for x in e.generators() {
        for y in e.generators() {
            let m = embedding_matrix(e, &env.quotient, &x, &y);
            let target = hom_dim(&env.embed(&x), &env.embed(&y));
            let src = e.hom_dim(&x, &y);
            ff.check(
                m.rank() == src && src == target,
                format!("Hom({}, {}): {} vs {}", e.describe(&x), e.describe(&y), src, target),
            );
        }
    }
    let mut exact = CheckReport::new("exact");
    let mut search = env.deflations();
    let mut conflations: Vec<Conflation> = generating_conflations(e, &env.structure);
    for c in e.generators() {
        for d in search.onto(&c) {
            if let Some(k) = e.kernel(&d) {
                let cf = Conflation { inflation: k, deflation: d };
                if !conflations.contains(&cf) {
                    conflations.push(cf);
                }
            }
        }
    }
    for cf in &conflations {
        let ok = short_exact(&env.embed_map(&cf.inflation), &env.embed_map(&cf.deflation));
        exact.check(
            ok,
            format!(
                "{} -> {} -> {}",
                e.describe(cf.inflation.source()),
                e.describe(cf.deflation.source()),
                e.describe(cf.deflation.target())
            ),
        );
    }
    let mut reflects = CheckReport::new("reflects");
    for (k, d) in candidate_pairs(e) {
        let image_exact = short_exact(&env.embed_map(&k), &env.embed_map(&d));
        let membership = search.is_deflation(&d);
        let desc = format!("{} -> {} -> {}", e.describe(k.source()), e.describe(d.source()), e.describe(d.target()));
        if image_exact {
            reflects.check(membership != Membership::No, format!("{desc}: image exact, deflation {membership}"));
        } else if membership == Membership::Yes {
            reflects.check(false, format!("{desc}: deflation with non-exact image"));
        } else {
            reflects.check(true, format!("{desc}: image not exact"));
        }
    }
    let mut rep = CheckReport::new("embedding");
    rep.absorb(ff);
    rep.absorb(exact);
    rep.absorb(reflects);
    rep.timed(start)
}

/// `w: W → X` with `f ∘ w = 0`, from the projective cover of `ker Hom(-, f)`.
pub fn weak_kernel(e: &AddCategory, f: &EMorphism) -> EMorphism {
    let yf = e.yoneda_map(f);
    let (k, incl) = yf.kernel();
    let cover = projective_cover(&k);
    let w = e.object_of_slots(&cover.summand_slots);
    let src = e.yoneda(&w);
    let map = ModMorphism::new_unchecked(src, yf.source().clone(), incl.compose(&cover.map).blocks().to_vec());
    e.lift_module_map(&w, f.source(), &map)
}

/// Bases of `{g': C' → X : f g' = 0}` for every generator `C'`.
fn killed_by(e: &AddCategory, f: &EMorphism) -> Vec<EMorphism> {
    let mut out = Vec::new();
    for c in e.generators() {
        let m = e.postcompose_matrix(f, &c);
        for v in m.nullspace() {
            out.push(e.from_coordinates(&c, f.source(), &v));
        }
    }
    out
}

/// Every `g'` killed by `f` factors through `w`.
pub fn verify_weak_kernel(e: &AddCategory, f: &EMorphism, w: &EMorphism) -> bool {
    e.compose(f, w).is_zero() && killed_by(e, f).iter().all(|g| e.factor_through_left(w, g).is_some())
}

/// Whether `g` is an Ext-kernel of `f`: every `g'` with `f g' = 0` becomes a
/// multiple of `g` after precomposing with some deflation.
pub fn ext_kernel_verify(env: &Envelope, g: &EMorphism, f: &EMorphism) -> Result<CheckReport> {
    let e = &env.cat;
    if g.target() != f.source() || !e.compose(f, g).is_zero() {
        return Err(bad_input("ext-kernel candidate must satisfy f ∘ g = 0"));
    }
    let start = Instant::now();
    let mut rep = CheckReport::new("ext-kernel");
    let mut search = env.deflations();
    let (coker, pi) = e.yoneda_map(g).cokernel();
    for gp in killed_by(e, f) {
        let c = gp.source().clone();
        let desc = format!("g' from {}", e.describe(&c));
        if e.factor_through_left(g, &gp).is_some() {
            rep.record(Verdict::Pass, "");
            continue;
        }
        let found = search
            .onto(&c)
            .into_iter()
            .find(|d| e.factor_through_left(g, &e.compose(&gp, d)).is_some());
        if let Some(d) = found {
            rep.record(Verdict::Pass, format!("{desc}: deflation from {}", e.describe(d.source())));
            continue;
        }
        let slot = c.copies()[0];
        let v = pi.block(slot).apply(&e.coordinates(&gp));
        let (sub, _) = coker.generated_submodule(&[(slot, v)]);
        let outside = composition_multiplicities(&sub)
            .into_iter()
            .enumerate()
            .any(|(i, m)| m > 0 && !env.def.contains(i));
        if outside {
            rep.record(Verdict::Fail, format!("{desc}: its class generates a functor outside def(E)"));
        } else {
            rep.record(Verdict::Inconclusive, format!("{desc}: no deflation found at depth {}", env.bounds.depth));
        }
    }
    Ok(rep.timed(start))
}

/// Weak kernels of all hom-basis morphisms between generators, each checked
/// as a weak kernel and as an Ext-kernel.
pub fn ext_coherence_report(env: &Envelope) -> CheckReport {
    let start = Instant::now();
    let e = &env.cat;
    let mut rep = CheckReport::new("ext-coherence");
    for x in e.generators() {
        for y in e.generators() {
            for f in e.hom_basis(&x, &y) {
                let w = weak_kernel(e, &f);
                let desc = format!("{} -> {}", e.describe(&x), e.describe(&y));
                if !verify_weak_kernel(e, &f, &w) {
                    rep.record(Verdict::Fail, format!("{desc}: weak kernel does not verify"));
                    continue;
                }
                let sub = ext_kernel_verify(env, &w, &f).expect("f ∘ w = 0");
                let note = match sub.verdict {
                    Verdict::Pass => String::new(),
                    _ => format!("{desc}: {:?}", sub.counterexamples),
                };
                rep.record(sub.verdict, note);
            }
        }
    }
    rep.timed(start)
}

/// Fraction of passing instances, as `(passed, total)`.
pub fn pass_fraction(rep: &CheckReport) -> (usize, usize) {
    (rep.instances - rep.counterexamples.len() - rep.inconclusive.len(), rep.instances)
}

/// Whether the structure is split, so that `D = ∅` and `A_r(E) = mod Γ`.
pub fn is_split_envelope(env: &Envelope) -> bool {
    env.structure.kind == StructureKind::Split && env.quotient.is_identity()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, Quiver};
    use crate::field::Field;
    use std::sync::Arc;

    fn a2() -> AddCategory {
        let q = Quiver::new(vec!["1".into(), "2".into()], vec![("a".into(), "1".into(), "2".into())]).unwrap();
        let lambda = Arc::new(build_algebra(Field::prime(101).unwrap(), &q, &[], 1).unwrap());
        let gens = vec![
            FDModule::projective(lambda.clone(), 0),
            FDModule::projective(lambda.clone(), 1),
            FDModule::simple(lambda, 0),
        ];
        AddCategory::from_modules(vec!["P1".into(), "P2".into(), "S1".into()], gens).unwrap()
    }

    #[test]
    fn a2_all_envelope() {
        let e = a2();
        let env = construct_envelope(&e, &ExactStructure::ambient("all"), Bounds::default_for(&e)).unwrap();
        assert_eq!(env.corner_dim(), 3);
        assert_eq!(env.embedding_dims(), vec![vec![1, 1], vec![0, 1], vec![1, 0]]);
        let rep = check_embedding(&env);
        assert_eq!(rep.verdict, Verdict::Pass, "{rep:?}");
        assert_eq!(ext_coherence_report(&env).verdict, Verdict::Pass);
    }

    #[test]
    fn split_envelope_reflects() {
        let e = a2();
        let env = construct_envelope(&e, &ExactStructure::split("split"), Bounds::default_for(&e)).unwrap();
        assert!(is_split_envelope(&env));
        assert_eq!(env.corner_dim(), 5);
        let rep = check_embedding(&env);
        assert_eq!(rep.verdict, Verdict::Pass, "{rep:?}");
        assert!(rep.witnesses.iter().any(|w| w.contains("P2 -> P1 -> S1: image not exact")));
        assert_eq!(ext_coherence_report(&env).verdict, Verdict::Pass);
    }

    #[test]
    fn weak_and_ext_kernels() {
        let e = a2();
        let env = build_envelope(&e, &ExactStructure::ambient("all"), Bounds::default_for(&e));
        let d = e.hom_basis(&e.generator(0), &e.generator(2)).remove(0);
        let w = weak_kernel(&e, &d);
        assert_eq!(w.source(), &e.generator(1));
        let id = e.identity(&e.generator(0));
        assert!(weak_kernel(&e, &id).source().is_zero());
        let z = e.zero(&e.generator(0), &e.generator(1));
        assert_eq!(weak_kernel(&e, &z), id);
        assert_eq!(ext_kernel_verify(&env, &w, &d).unwrap().verdict, Verdict::Pass);
        let zero = e.zero(&e.zero_object(), &e.generator(0));
        assert_eq!(ext_kernel_verify(&env, &zero, &d).unwrap().verdict, Verdict::Fail);
    }
}
