//! Exact structures on `add(G)`: conflations, the axiom validator, deflation
//! membership and bounded deflation enumeration.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::category::{AddCategory, EMorphism, EObject};
use crate::error::{dim_mismatch, Error, Result};
use crate::homological::{ext1, extension_middle_terms};
use crate::linalg::Mat;
use crate::module::{hom_basis, FDModule, ModMorphism};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StructureKind {
    Split,
    Ambient,
    Generated,
}

impl StructureKind {
    pub fn name(self) -> &'static str {
        match self {
            StructureKind::Split => "split",
            StructureKind::Ambient => "ambient",
            StructureKind::Generated => "generated",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conflation {
    pub inflation: EMorphism,
    pub deflation: EMorphism,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactStructure {
    pub name: String,
    pub kind: StructureKind,
    /// Declared conflations; for `Generated` these generate the structure.
    pub conflations: Vec<Conflation>,
}

impl ExactStructure {
    pub fn split(name: impl Into<String>) -> ExactStructure {
        ExactStructure { name: name.into(), kind: StructureKind::Split, conflations: Vec::new() }
    }

    pub fn ambient(name: impl Into<String>) -> ExactStructure {
        ExactStructure { name: name.into(), kind: StructureKind::Ambient, conflations: Vec::new() }
    }

    pub fn generated(name: impl Into<String>, conflations: Vec<Conflation>) -> ExactStructure {
        ExactStructure { name: name.into(), kind: StructureKind::Generated, conflations }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Membership {
    Yes,
    No,
    Inconclusive,
}

impl fmt::Display for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Membership::Yes => "yes",
            Membership::No => "no",
            Membership::Inconclusive => "inconclusive",
        })
    }
}

/// Search bounds: `depth` rounds of closure under composition, pullback and
/// direct sum; sources never exceed `max_source` generator copies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bounds {
    pub depth: usize,
    pub max_source: usize,
}

impl Bounds {
    pub fn new(depth: usize, max_source: usize) -> Bounds {
        Bounds { depth, max_source }
    }

    /// Depth 2 and sources of at most `2n` copies.
    pub fn default_for(e: &AddCategory) -> Bounds {
        Bounds { depth: 2, max_source: 2 * e.n() }
    }

    pub fn with_depth(e: &AddCategory, depth: usize) -> Bounds {
        Bounds { depth, ..Bounds::default_for(e) }
    }
}

fn injective(m: &Mat) -> bool {
    m.rank() == m.cols()
}

/// `d ∘ i = 0`, `i` is a kernel of `d` and `d` a cokernel of `i`, tested on
/// `Hom(Z, -)` and `Hom(-, Z)` for every generator `Z`.
pub fn is_conflation(e: &AddCategory, i: &EMorphism, d: &EMorphism) -> Result<bool> {
    if i.target() != d.source() {
        return Err(dim_mismatch("inflation target differs from deflation source"));
    }
    if !e.compose(d, i).is_zero() {
        return Ok(false);
    }
    for z in e.generators() {
        let hi = e.postcompose_matrix(i, &z);
        let hd = e.postcompose_matrix(d, &z);
        if !injective(&hi) || hd.cols() - hd.rank() != hi.rank() {
            return Ok(false);
        }
        let ci = e.precompose_matrix(i, &z);
        let cd = e.precompose_matrix(d, &z);
        if !injective(&cd) || ci.cols() - ci.rank() != cd.rank() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Hom(f, Z)` injective for every generator `Z`: the obstruction every
/// cokernel must clear.
pub fn is_generator_wise_epi(e: &AddCategory, f: &EMorphism) -> bool {
    e.generators().iter().all(|z| injective(&e.precompose_matrix(f, z)))
}

pub fn is_split_epi(e: &AddCategory, f: &EMorphism) -> bool {
    e.factor_through_left(f, &e.identity(f.target())).is_some()
}

pub fn is_split_mono(e: &AddCategory, f: &EMorphism) -> bool {
    e.factor_through_right(f, &e.identity(f.source())).is_some()
}

/// Ambient deflation test: surjective over `Λ` with `Λ`-kernel in `E`.
fn ambient_deflation(e: &AddCategory, f: &EMorphism) -> Option<EMorphism> {
    let m = e.realize(f)?;
    if !m.is_surjective() {
        return None;
    }
    let k = e.kernel(f)?;
    let km = e.realize(&k)?;
    (km.is_injective() && km.source().dim() + m.target().dim() == m.source().dim()).then_some(k)
}

/// `⊕_j G_j ⊗ rad Hom(G_j, G_k) → G_k`: every radical map into `G_k` at once.
pub fn radical_approximation(e: &AddCategory, k: usize) -> EMorphism {
    let g = e.gamma();
    let mut mult = vec![0; e.n()];
    let mut elems = Vec::new();
    for (j, m) in mult.iter_mut().enumerate() {
        for b in g.corner_basis(k, j) {
            if b != g.idempotent(k) {
                *m += 1;
                elems.push(g.basis_vector(b));
            }
        }
    }
    e.morphism(&EObject::new(mult), &e.generator(k), elems).expect("radical maps into G_k")
}

/// Conflations the structure is generated by. Ambient structures use the
/// radical approximations that are deflations.
pub fn generating_conflations(e: &AddCategory, s: &ExactStructure) -> Vec<Conflation> {
    let mut out = s.conflations.clone();
    if s.kind == StructureKind::Ambient && e.ambient().is_some() {
        for k in 0..e.n() {
            let d = radical_approximation(e, k);
            if let Some(i) = ambient_deflation(e, &d) {
                let c = Conflation { inflation: i, deflation: d };
                if !out.contains(&c) {
                    out.push(c);
                }
            }
        }
    }
    out
}

/// Generators `W` with `Ext^1_Λ(W, G_i) ≠ 0` for some `i`, with that `i`.
pub fn ambient_ext_targets(e: &AddCategory) -> Vec<(usize, usize)> {
    let Some(a) = e.ambient() else { return Vec::new() };
    let mut out = Vec::new();
    for w in 0..e.n() {
        if let Some(i) = (0..e.n()).find(|&i| ext1(&a.generators[w], &a.generators[i]) > 0) {
            out.push((w, i));
        }
    }
    out
}

/// Whether a `Λ`-module is a direct summand of a sum of generators, by
/// splitting its right `add(G)`-approximation.
pub fn in_add(generators: &[FDModule], b: &FDModule) -> bool {
    if b.is_zero() {
        return true;
    }
    let alg = b.algebra().clone();
    let mut parts = Vec::new();
    let mut maps = Vec::new();
    for g in generators {
        for h in hom_basis(g, b).expect("same algebra") {
            parts.push(g.clone());
            maps.push(h);
        }
    }
    if parts.is_empty() {
        return false;
    }
    let x = FDModule::direct_sum_all(&alg, &parts);
    let blocks: Vec<Mat> = (0..alg.num_slots())
        .map(|s| maps.iter().map(|h| h.block(s).clone()).reduce(|a, c| a.hstack(&c)).unwrap())
        .collect();
    let phi = ModMorphism::new_unchecked(x.clone(), b.clone(), blocks);
    let sections = hom_basis(b, &x).expect("same algebra");
    let id = ModMorphism::identity(b).flatten();
    let cols: Vec<_> = sections.iter().map(|s| phi.compose(s).flatten()).collect();
    Mat::from_columns(b.field(), id.len(), &cols).solve(&id).is_some()
}

/// Bounded closure of the generating deflations, memoized per target.
pub struct DeflationSearch<'a> {
    cat: &'a AddCategory,
    structure: &'a ExactStructure,
    gens: Vec<Conflation>,
    bounds: Bounds,
    cache: HashMap<(EObject, usize), Vec<EMorphism>>,
}

const MAX_PER_TARGET: usize = 96;

impl<'a> DeflationSearch<'a> {
    pub fn new(cat: &'a AddCategory, structure: &'a ExactStructure, bounds: Bounds) -> DeflationSearch<'a> {
        let gens = generating_conflations(cat, structure);
        DeflationSearch { cat, structure, gens, bounds, cache: HashMap::new() }
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    pub fn generating(&self) -> &[Conflation] {
        &self.gens
    }

    /// Deflations onto `target` found within the bounds.
    pub fn onto(&mut self, target: &EObject) -> Vec<EMorphism> {
        self.level(target, self.bounds.depth)
    }

    fn push(&self, out: &mut Vec<EMorphism>, seen: &mut BTreeSet<Vec<String>>, d: EMorphism) {
        if out.len() >= MAX_PER_TARGET || d.source().total() > self.bounds.max_source.max(d.target().total()) {
            return;
        }
        let key = canonical_key(&d);
        if seen.insert(key) {
            out.push(d);
        }
    }

    fn projections(&self, target: &EObject) -> Vec<EMorphism> {
        let e = self.cat;
        let mut out = vec![e.identity(target)];
        for y in e.generators() {
            let bp = e.biproduct(target, &y);
            out.push(bp.proj[0].clone());
        }
        out
    }

    fn level(&mut self, target: &EObject, r: usize) -> Vec<EMorphism> {
        if let Some(v) = self.cache.get(&(target.clone(), r)) {
            return v.clone();
        }
        let e = self.cat;
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        if target.is_zero() {
            let d = e.zero(target, target);
            self.cache.insert((target.clone(), r), vec![d.clone()]);
            return vec![d];
        }
        if r > 0 {
            for d in self.level(target, r - 1) {
                self.push(&mut out, &mut seen, d);
            }
        }
        for d in self.projections(target) {
            self.push(&mut out, &mut seen, d);
        }
        if self.structure.kind != StructureKind::Split {
            if target.total() == 1 {
                let t = target.copies()[0];
                for c in self.gens.clone() {
                    if c.deflation.target() == target {
                        self.push(&mut out, &mut seen, c.deflation.clone());
                    }
                }
                // pullbacks along generator morphisms
                let pool: Vec<EMorphism> = if r == 0 {
                    self.gens.iter().map(|c| c.deflation.clone()).collect()
                } else {
                    (0..e.n()).flat_map(|c| self.level(&e.generator(c), r - 1)).collect()
                };
                for d in pool {
                    if d.target().is_zero() || is_split_epi(e, &d) {
                        continue;
                    }
                    for g in e.hom_basis(&e.generator(t), d.target()) {
                        if let Some((_, _, pt)) = e.pullback(&d, &g) {
                            self.push(&mut out, &mut seen, pt);
                        }
                    }
                }
            } else {
                // peel off the first copy
                let first = target.copies()[0];
                let head = e.generator(first);
                let mut rest = target.clone();
                rest = EObject::new(
                    rest.multiplicities().iter().enumerate().map(|(i, &m)| if i == first { m - 1 } else { m }).collect(),
                );
                let hs = self.level(&head, r);
                let ts = self.level(&rest, r);
                for d1 in &hs {
                    for d2 in &ts {
                        if d1.source().total() + d2.source().total() <= self.bounds.max_source {
                            self.push(&mut out, &mut seen, e.direct_sum(d1, d2));
                        }
                    }
                }
            }
            if r > 0 {
                let current = out.clone();
                for d in current {
                    if is_split_epi(e, &d) {
                        continue;
                    }
                    for d2 in self.level(d.source(), 0) {
                        if d2.source() != d2.target() {
                            self.push(&mut out, &mut seen, e.compose(&d, &d2));
                        }
                    }
                }
            }
        }
        self.cache.insert((target.clone(), r), out.clone());
        out
    }

    /// Membership of `f` in the class of deflations.
    pub fn is_deflation(&mut self, f: &EMorphism) -> Membership {
        let e = self.cat;
        if !is_generator_wise_epi(e, f) {
            return Membership::No;
        }
        if is_split_epi(e, f) {
            return Membership::Yes;
        }
        match self.structure.kind {
            StructureKind::Split => Membership::No,
            StructureKind::Ambient if e.ambient().is_some() => {
                if ambient_deflation(e, f).is_some() {
                    Membership::Yes
                } else {
                    Membership::No
                }
            }
            _ => {
                let has_kernel = e.kernel(f).is_some();
                for d in self.onto(f.target()) {
                    if &d == f {
                        return Membership::Yes;
                    }
                    // f ∘ h = d with d a deflation and f admitting a kernel
                    if has_kernel && e.factor_through_left(f, &d).is_some() {
                        return Membership::Yes;
                    }
                }
                Membership::Inconclusive
            }
        }
    }
}

/// Key identifying a deflation up to reordering of equal copies in its source.
fn canonical_key(d: &EMorphism) -> Vec<String> {
    let src = d.source().copies();
    let mut cols: Vec<(usize, String)> = (0..src.len())
        .map(|c| {
            let col: Vec<String> =
                (0..d.target().total()).map(|r| format!("{:?}", d.entry(r, c))).collect();
            (src[c], col.join(";"))
        })
        .collect();
    cols.sort();
    let mut key: Vec<String> = vec![format!("{:?}->{:?}", d.source().multiplicities(), d.target().multiplicities())];
    key.extend(cols.into_iter().map(|(g, s)| format!("{g}:{s}")));
    key
}

pub fn is_deflation(e: &AddCategory, s: &ExactStructure, f: &EMorphism, bounds: Bounds) -> Membership {
    DeflationSearch::new(e, s, bounds).is_deflation(f)
}

pub fn enumerate_deflations(e: &AddCategory, s: &ExactStructure, target: &EObject, bounds: Bounds) -> Vec<EMorphism> {
    DeflationSearch::new(e, s, bounds).onto(target)
}

/// Outcome of validating an exact structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub structure: String,
    pub kind: StructureKind,
    pub instances: usize,
    pub failures: Vec<String>,
    pub inconclusive: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.inconclusive.is_empty()
    }

    pub fn into_result(self) -> Result<ValidationReport> {
        if let Some(f) = self.failures.first() {
            Err(Error::AxiomFail(format!("{}: {}", self.structure, f)))
        } else if let Some(i) = self.inconclusive.first() {
            Err(Error::SearchExhausted(format!("{}: {}", self.structure, i)))
        } else {
            Ok(self)
        }
    }
}

/// Checks the deflation axioms and their duals on generator-level instances.
pub fn validate_structure(e: &AddCategory, s: &ExactStructure, bounds: Bounds) -> ValidationReport {
    let mut rep = ValidationReport {
        structure: s.name.clone(),
        kind: s.kind,
        instances: 0,
        failures: Vec::new(),
        inconclusive: Vec::new(),
    };
    if s.kind == StructureKind::Ambient && e.ambient().is_none() {
        rep.failures.push("ambient structure on a category without ambient modules".into());
        return rep;
    }
    let mut search = DeflationSearch::new(e, s, bounds);
    let gens = search.generating().to_vec();
    for (k, c) in s.conflations.iter().enumerate() {
        rep.instances += 1;
        match is_conflation(e, &c.inflation, &c.deflation) {
            Ok(true) => {}
            _ => rep.failures.push(format!("declared pair #{k} is not a kernel-cokernel pair")),
        }
        if s.kind == StructureKind::Ambient && ambient_deflation(e, &c.deflation).is_none() {
            rep.failures.push(format!("declared pair #{k} is not exact in the ambient category"));
        }
    }
    for z in e.generators() {
        rep.instances += 1;
        if search.is_deflation(&e.identity(&z)) != Membership::Yes {
            rep.failures.push(format!("identity of {} is not a deflation", e.describe(&z)));
        }
    }
    for (k, c) in gens.iter().enumerate() {
        let d = &c.deflation;
        // compositions with deflations onto the source
        for d2 in search.level(d.source(), 0) {
            rep.instances += 1;
            let comp = e.compose(d, &d2);
            match search.is_deflation(&comp) {
                Membership::No => rep.failures.push(format!("composite with generating deflation #{k} is not a deflation")),
                Membership::Inconclusive => rep.inconclusive.push(format!("composite with generating deflation #{k}")),
                Membership::Yes => {}
            }
        }
        // pullbacks along generator morphisms
        for t in e.generators() {
            for g in e.hom_basis(&t, d.target()) {
                rep.instances += 1;
                match e.pullback(d, &g) {
                    None => rep.failures.push(format!(
                        "pullback of generating deflation #{k} along a map from {} does not exist in E",
                        e.describe(&t)
                    )),
                    Some((_, _, pt)) => match search.is_deflation(&pt) {
                        Membership::No => rep.failures.push(format!(
                            "pullback of generating deflation #{k} along a map from {} is not a deflation",
                            e.describe(&t)
                        )),
                        Membership::Inconclusive => rep.inconclusive.push(format!(
                            "pullback of generating deflation #{k} along a map from {}",
                            e.describe(&t)
                        )),
                        Membership::Yes => {}
                    },
                }
            }
        }
        // pushouts of the inflation along generator morphisms
        let i = &c.inflation;
        for t in e.generators() {
            for g in e.hom_basis(i.source(), &t) {
                rep.instances += 1;
                let ok = e.pushout(i, &g).and_then(|(_, _, it)| {
                    let c2 = e.cokernel(&it)?;
                    Some(is_conflation(e, &it, &c2).unwrap_or(false) && search.is_deflation(&c2) != Membership::No)
                });
                if ok != Some(true) {
                    rep.failures.push(format!(
                        "pushout of generating inflation #{k} along a map to {} is not an inflation",
                        e.describe(&t)
                    ));
                }
            }
        }
    }
    if s.kind == StructureKind::Ambient {
        let a = e.ambient().unwrap();
        for w in 0..e.n() {
            for i in 0..e.n() {
                for b in extension_middle_terms(&a.generators[w], &a.generators[i]) {
                    rep.instances += 1;
                    if !in_add(&a.generators, &b) {
                        rep.failures.push(format!(
                            "an extension of {} by {} leaves E",
                            e.label(w),
                            e.label(i)
                        ));
                    }
                }
            }
        }
        for (w, _) in ambient_ext_targets(e) {
            rep.instances += 1;
            if !gens.iter().any(|c| c.deflation.target() == &e.generator(w)) {
                rep.inconclusive.push(format!("no generating conflation found onto {}", e.label(w)));
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, Quiver};
    use crate::field::Field;
    use std::sync::Arc;

    fn a2(with_s1: bool) -> AddCategory {
        let q = Quiver::new(vec!["1".into(), "2".into()], vec![("a".into(), "1".into(), "2".into())]).unwrap();
        let lambda = Arc::new(build_algebra(Field::prime(101).unwrap(), &q, &[], 1).unwrap());
        let mut gens = vec![FDModule::projective(lambda.clone(), 0), FDModule::projective(lambda.clone(), 1)];
        let mut labels = vec!["P1".to_string(), "P2".to_string()];
        if with_s1 {
            gens.push(FDModule::simple(lambda, 0));
            labels.push("S1".into());
        }
        AddCategory::from_modules(labels, gens).unwrap()
    }

    fn pair(e: &AddCategory) -> (EMorphism, EMorphism) {
        let i = e.hom_basis(&e.generator(1), &e.generator(0)).remove(0);
        let d = e.hom_basis(&e.generator(0), &e.generator(2)).remove(0);
        (i, d)
    }

    #[test]
    fn conflation_examples() {
        let e = a2(true);
        let (i, d) = pair(&e);
        assert!(is_conflation(&e, &i, &d).unwrap());
        let p1 = e.generator(0);
        let z = e.zero_object();
        assert!(is_conflation(&e, &e.zero(&z, &p1), &e.identity(&p1)).unwrap());
        assert!(!is_conflation(&e, &e.zero(&z, &p1), &e.zero(&p1, &p1)).unwrap());
    }

    #[test]
    fn ambient_generating_conflation_is_the_a2_sequence() {
        let e = a2(true);
        let s = ExactStructure::ambient("all");
        let gens = generating_conflations(&e, &s);
        assert_eq!(gens.len(), 1);
        let (i, d) = pair(&e);
        assert_eq!(gens[0].deflation, d);
        assert_eq!(gens[0].inflation.source(), i.source());
        assert_eq!(ambient_ext_targets(&e), vec![(2, 1)]);
    }

    #[test]
    fn validation_of_fixture_structures() {
        for with_s1 in [true, false] {
            let e = a2(with_s1);
            for s in [ExactStructure::split("split"), ExactStructure::ambient("all")] {
                let rep = validate_structure(&e, &s, Bounds::default_for(&e));
                assert!(rep.passed(), "{rep:?}");
            }
        }
        let e = a2(true);
        let (i, _) = pair(&e);
        let bad = Conflation { inflation: i.clone(), deflation: e.zero(i.target(), &e.generator(2)) };
        let rep = validate_structure(&e, &ExactStructure::generated("bad", vec![bad]), Bounds::default_for(&e));
        assert!(matches!(rep.into_result(), Err(Error::AxiomFail(_))));
    }

    #[test]
    fn deflation_membership() {
        let e = a2(true);
        let b = Bounds::default_for(&e);
        let (i, d) = pair(&e);
        let all = ExactStructure::ambient("all");
        let split = ExactStructure::split("split");
        assert_eq!(is_deflation(&e, &all, &d, b), Membership::Yes);
        assert_eq!(is_deflation(&e, &split, &d, b), Membership::No);
        assert_eq!(is_deflation(&e, &all, &i, b), Membership::No);
        let gen = ExactStructure::generated("gen", vec![Conflation { inflation: i, deflation: d.clone() }]);
        assert_eq!(is_deflation(&e, &gen, &d, b), Membership::Yes);
        assert_eq!(is_deflation(&e, &gen, &e.identity(&e.generator(1)), b), Membership::Yes);
    }

    #[test]
    fn enumeration_examples() {
        let e = a2(true);
        let b = Bounds::new(1, 6);
        let s1 = e.generator(2);
        let split = enumerate_deflations(&e, &ExactStructure::split("split"), &s1, b);
        assert!(split.iter().all(|d| is_split_epi(&e, d)));
        let all = enumerate_deflations(&e, &ExactStructure::ambient("all"), &s1, b);
        let (_, d) = pair(&e);
        assert!(all.contains(&d));
        let z = enumerate_deflations(&e, &ExactStructure::ambient("all"), &e.zero_object(), b);
        assert_eq!(z.len(), 1);
    }
}
