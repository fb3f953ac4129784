//! The additive category `E = add(G_1, ..., G_n)`, presented by
//! `Γ = End(⊕ G_i)` with its generator idempotents.
//!
//! Conventions: the corner `e_i Γ e_j` is `Hom(G_j, G_i)` and the product of
//! `Γ` is composition, `γ δ = γ ∘ δ`. Right `Γ`-modules are then the
//! contravariant functors on `E`, and `Hom(⊕G, X)` is the Yoneda module of `X`.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::FDAlgebra;
use crate::error::{bad_input, dim_mismatch, Result};
use crate::field::{Field, Scalar};
use crate::homological::{local_radical, projective_cover};
use crate::linalg::{greedy_independent, Mat, Vector};
use crate::module::{hom_basis, FDModule, ModMorphism};

/// Generators realized as modules over an ambient algebra `Λ`, with the
/// `Λ`-morphism behind every basis element of `Γ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ambient {
    pub algebra: Arc<FDAlgebra>,
    pub generators: Vec<FDModule>,
    /// `maps[b]` realizes the basis element `b` of `Γ`.
    pub maps: Vec<ModMorphism>,
}

impl Ambient {
    /// `⊕ G_i^{m_i}` as a module.
    pub fn apply_object(&self, x: &EObject) -> FDModule {
        let parts: Vec<FDModule> = x.copies().into_iter().map(|g| self.generators[g].clone()).collect();
        FDModule::direct_sum_all(&self.algebra, &parts)
    }

    /// The module map with blocks `Σ_b f_{r,c}[b] · maps[b]`.
    pub fn apply(&self, fld: Field, f: &EMorphism) -> ModMorphism {
        let src = self.apply_object(&f.source);
        let tgt = self.apply_object(&f.target);
        let sc = f.source.copies();
        let tc = f.target.copies();
        let gens = &self.generators;
        let blocks = (0..self.algebra.num_slots())
            .map(|v| {
                let so = offsets(sc.iter().map(|&g| gens[g].dims()[v]));
                let to = offsets(tc.iter().map(|&g| gens[g].dims()[v]));
                let mut m = Mat::zeros(fld, tgt.dims()[v], src.dims()[v]);
                for r in 0..tc.len() {
                    for c in 0..sc.len() {
                        let mut block = Mat::zeros(fld, gens[tc[r]].dims()[v], gens[sc[c]].dims()[v]);
                        for (b, x) in f.entries[r * sc.len() + c].iter().enumerate() {
                            if !x.is_zero() {
                                block = block.add(&self.maps[b].block(v).scale(x));
                            }
                        }
                        m.set_block(to[r], so[c], &block);
                    }
                }
                m
            })
            .collect();
        ModMorphism::new_unchecked(src, tgt, blocks)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AddCategory {
    labels: Vec<String>,
    gamma: Arc<FDAlgebra>,
    ambient: Option<Ambient>,
}

/// An object `⊕ G_i^{m_i}`; its copies are ordered generator by generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EObject {
    mult: Vec<usize>,
}

impl EObject {
    pub fn new(mult: Vec<usize>) -> EObject {
        EObject { mult }
    }

    pub fn zero(n: usize) -> EObject {
        EObject { mult: vec![0; n] }
    }

    pub fn generator(n: usize, i: usize) -> EObject {
        let mut mult = vec![0; n];
        mult[i] = 1;
        EObject { mult }
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.mult
    }

    pub fn total(&self) -> usize {
        self.mult.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total() == 0
    }

    /// Generator index of each copy.
    pub fn copies(&self) -> Vec<usize> {
        self.mult.iter().enumerate().flat_map(|(i, &m)| std::iter::repeat(i).take(m)).collect()
    }

    pub fn sum(&self, other: &EObject) -> EObject {
        EObject { mult: self.mult.iter().zip(&other.mult).map(|(a, b)| a + b).collect() }
    }

    /// Every object with each multiplicity at most `max_each` and total at
    /// most `max_total`, in lexicographic order of multiplicity vectors.
    pub fn enumerate(n: usize, max_each: usize, max_total: usize) -> Vec<EObject> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            let mut next = Vec::new();
            for prefix in &out {
                let used: usize = prefix.iter().sum();
                for m in 0..=max_each.min(max_total - used.min(max_total)) {
                    let mut p = prefix.clone();
                    p.push(m);
                    next.push(p);
                }
            }
            out = next;
        }
        out.into_iter().map(EObject::new).collect()
    }
}

/// A morphism of `E`; entry `(r, c)` is the `Γ`-element from source copy `c`
/// to target copy `r`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EMorphism {
    source: EObject,
    target: EObject,
    entries: Vec<Vector>,
}

impl EMorphism {
    pub fn source(&self) -> &EObject {
        &self.source
    }

    pub fn target(&self) -> &EObject {
        &self.target
    }

    pub fn entry(&self, r: usize, c: usize) -> &Vector {
        &self.entries[r * self.source.total() + c]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|v| v.iter().all(Zero::is_zero))
    }
}

impl fmt::Debug for EMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EMorphism({:?} -> {:?}, {:?})", self.source.mult, self.target.mult, self.entries)
    }
}

/// Canonical structure maps of a binary direct sum.
#[derive(Debug, Clone)]
pub struct Biproduct {
    pub object: EObject,
    pub inj: [EMorphism; 2],
    pub proj: [EMorphism; 2],
}

impl AddCategory {
    /// `add(G_1..G_n)` for pairwise non-isomorphic indecomposable modules
    /// over `Λ` with split local endomorphism rings.
    pub fn from_modules(labels: Vec<String>, generators: Vec<FDModule>) -> Result<AddCategory> {
        let n = generators.len();
        if labels.len() != n || n == 0 {
            return Err(bad_input("one label per generator, at least one generator"));
        }
        let lambda = generators[0].algebra().clone();
        if generators.iter().any(|g| !g.same_algebra(&generators[0])) {
            return Err(dim_mismatch("generators live over different algebras"));
        }
        let f = lambda.field();
        // corner bases with the identity first on the diagonal
        let mut maps: Vec<ModMorphism> = Vec::new();
        let mut slots: Vec<(usize, usize)> = Vec::new();
        let mut basis_labels = Vec::new();
        let mut idempotents = vec![0; n];
        for i in 0..n {
            for j in 0..n {
                let homs = hom_basis(&generators[j], &generators[i])?;
                let chosen: Vec<ModMorphism> = if i == j {
                    let g = &generators[i];
                    if g.is_zero() {
                        return Err(bad_input(format!("generator {} is zero", labels[i])));
                    }
                    let mats: Vec<Mat> = homs.iter().map(ModMorphism::global_matrix).collect();
                    let rad = local_radical(f, g.dim(), &mats).ok_or_else(|| {
                        bad_input(format!("generator {} is not indecomposable with split local endomorphisms", labels[i]))
                    })?;
                    let mut out = vec![ModMorphism::identity(g)];
                    for r in rad {
                        out.push(module_map_from_global(g, g, &r));
                    }
                    out
                } else {
                    homs
                };
                for (k, h) in chosen.into_iter().enumerate() {
                    if i == j && k == 0 {
                        idempotents[i] = maps.len();
                        basis_labels.push(format!("id[{}]", labels[i]));
                    } else {
                        basis_labels.push(format!("{}->{}#{}", labels[j], labels[i], k));
                    }
                    maps.push(h);
                    slots.push((i, j));
                }
            }
        }
        let dim = maps.len();
        let corner_index = |i: usize, j: usize| -> Vec<usize> { (0..dim).filter(|&b| slots[b] == (i, j)).collect() };
        let mut table = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                let (ia, ja) = slots[a];
                let (ib, jb) = slots[b];
                if ja != ib {
                    continue;
                }
                let prod = maps[a].compose(&maps[b]);
                let corner = corner_index(ia, jb);
                let basis: Vec<ModMorphism> = corner.iter().map(|&k| maps[k].clone()).collect();
                let coords = prod
                    .coordinates_in(&basis)
                    .ok_or_else(|| bad_input("composition left the hom space"))?;
                for (k, c) in corner.iter().zip(coords) {
                    table[a][b][*k] = c;
                }
            }
        }
        let gamma = FDAlgebra::from_structure_constants(f, basis_labels, table, idempotents, labels.clone())
            .map_err(|e| bad_input(format!("generators do not give a basic endomorphism algebra: {e}")))?;
        Ok(AddCategory {
            labels,
            gamma: Arc::new(gamma),
            ambient: Some(Ambient { algebra: lambda, generators, maps }),
        })
    }

    /// The objects `v` of the path category of `A`: `Hom(v_a, v_b) = e_a A e_b`,
    /// so morphisms run along arrows. Equivalently the projective left
    /// `A`-modules, with `Γ = A^op`.
    pub fn from_vertex_objects(algebra: &FDAlgebra, labels: Vec<String>) -> Result<AddCategory> {
        if labels.len() != algebra.num_slots() {
            return Err(bad_input("one label per vertex required"));
        }
        let op = algebra.opposite();
        let gamma = FDAlgebra::from_structure_constants(
            op.field(),
            op.labels().to_vec(),
            (0..op.dim()).map(|a| (0..op.dim()).map(|b| op.product_of_basis(a, b).clone()).collect()).collect(),
            op.idempotents().to_vec(),
            labels.clone(),
        )?;
        Ok(AddCategory { labels, gamma: Arc::new(gamma), ambient: None })
    }

    /// Directly from `Γ`, whose slot labels name the generators.
    pub fn from_gamma(gamma: Arc<FDAlgebra>) -> AddCategory {
        AddCategory { labels: gamma.slot_labels().to_vec(), gamma, ambient: None }
    }

    pub fn gamma(&self) -> &Arc<FDAlgebra> {
        &self.gamma
    }

    pub fn field(&self) -> Field {
        self.gamma.field()
    }

    pub fn ambient(&self) -> Option<&Ambient> {
        self.ambient.as_ref()
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn generator_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn generator(&self, i: usize) -> EObject {
        EObject::generator(self.n(), i)
    }

    pub fn zero_object(&self) -> EObject {
        EObject::zero(self.n())
    }

    pub fn generators(&self) -> Vec<EObject> {
        (0..self.n()).map(|i| self.generator(i)).collect()
    }

    pub fn describe(&self, x: &EObject) -> String {
        let parts: Vec<String> = x
            .mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(i, &m)| if m == 1 { self.labels[i].clone() } else { format!("{}^{}", self.labels[i], m) })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }

    // ---- morphisms ----

    pub fn zero(&self, source: &EObject, target: &EObject) -> EMorphism {
        let d = self.gamma.dim();
        EMorphism {
            source: source.clone(),
            target: target.clone(),
            entries: vec![vec![Scalar::zero(); d]; source.total() * target.total()],
        }
    }

    pub fn identity(&self, x: &EObject) -> EMorphism {
        let mut f = self.zero(x, x);
        for (k, g) in x.copies().into_iter().enumerate() {
            f.entries[k * x.total() + k] = self.gamma.basis_vector(self.gamma.idempotent(g));
        }
        f
    }

    /// A morphism from a full `target x source` grid of `Γ`-elements.
    pub fn morphism(&self, source: &EObject, target: &EObject, entries: Vec<Vector>) -> Result<EMorphism> {
        if entries.len() != source.total() * target.total() {
            return Err(dim_mismatch("entry grid does not match the objects"));
        }
        let sc = source.copies();
        let tc = target.copies();
        let f = self.field();
        let mut clean = Vec::with_capacity(entries.len());
        for (k, v) in entries.into_iter().enumerate() {
            let (r, c) = (k / sc.len().max(1), k % sc.len().max(1));
            if v.len() != self.gamma.dim() {
                return Err(dim_mismatch("entry is not a Γ-vector"));
            }
            for (b, x) in v.iter().enumerate() {
                if !x.is_zero() && self.gamma.slot_of(b) != (tc[r], sc[c]) {
                    return Err(bad_input("entry lies outside Hom(G_c, G_r)"));
                }
            }
            clean.push(v.into_iter().map(|x| f.reduce(x)).collect());
        }
        Ok(EMorphism { source: source.clone(), target: target.clone(), entries: clean })
    }

    /// The basis element `b` of `Γ` as a morphism between generators.
    pub fn basis_morphism(&self, b: usize) -> EMorphism {
        let (i, j) = self.gamma.slot_of(b);
        let mut f = self.zero(&self.generator(j), &self.generator(i));
        f.entries[0] = self.gamma.basis_vector(b);
        f
    }

    /// `f ∘ g`.
    pub fn compose(&self, f: &EMorphism, g: &EMorphism) -> EMorphism {
        assert_eq!(f.source, g.target, "composition of non-composable morphisms");
        let (rows, mid, cols) = (f.target.total(), f.source.total(), g.source.total());
        let mut out = self.zero(&g.source, &f.target);
        let fld = self.field();
        for r in 0..rows {
            for c in 0..cols {
                let mut acc = vec![Scalar::zero(); self.gamma.dim()];
                for k in 0..mid {
                    let p = self.gamma.mul(&f.entries[r * mid + k], &g.entries[k * cols + c]);
                    for (a, b) in acc.iter_mut().zip(p) {
                        if !b.is_zero() {
                            *a = fld.add(a, &b);
                        }
                    }
                }
                out.entries[r * cols + c] = acc;
            }
        }
        out
    }

    pub fn add(&self, f: &EMorphism, g: &EMorphism) -> EMorphism {
        assert!(f.source == g.source && f.target == g.target, "sum of morphisms with different ends");
        let fld = self.field();
        let entries = f
            .entries
            .iter()
            .zip(&g.entries)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| fld.add(x, y)).collect())
            .collect();
        EMorphism { source: f.source.clone(), target: f.target.clone(), entries }
    }

    pub fn scale(&self, f: &EMorphism, c: &Scalar) -> EMorphism {
        let fld = self.field();
        let entries = f.entries.iter().map(|a| a.iter().map(|x| fld.mul(x, c)).collect()).collect();
        EMorphism { source: f.source.clone(), target: f.target.clone(), entries }
    }

    pub fn neg(&self, f: &EMorphism) -> EMorphism {
        self.scale(f, &self.field().from_i64(-1))
    }

    /// Coordinates of `f` in the basis returned by [`AddCategory::hom_basis`].
    pub fn coordinates(&self, f: &EMorphism) -> Vector {
        let sc = f.source.copies();
        let tc = f.target.copies();
        let mut out = Vec::new();
        for (r, &gi) in tc.iter().enumerate() {
            for (c, &gj) in sc.iter().enumerate() {
                for b in self.gamma.corner_basis(gi, gj) {
                    out.push(f.entries[r * sc.len() + c][b].clone());
                }
            }
        }
        out
    }

    pub fn hom_dim(&self, x: &EObject, y: &EObject) -> usize {
        let mut d = 0;
        for gi in y.copies() {
            for gj in x.copies() {
                d += self.gamma.corner_basis(gi, gj).len();
            }
        }
        d
    }

    /// Basis of `Hom_E(X, Y)`: single basis elements of `Γ` placed in one
    /// entry, row-major over entries.
    pub fn hom_basis(&self, x: &EObject, y: &EObject) -> Vec<EMorphism> {
        let sc = x.copies();
        let tc = y.copies();
        let mut out = Vec::new();
        for (r, &gi) in tc.iter().enumerate() {
            for (c, &gj) in sc.iter().enumerate() {
                for b in self.gamma.corner_basis(gi, gj) {
                    let mut f = self.zero(x, y);
                    f.entries[r * sc.len() + c] = self.gamma.basis_vector(b);
                    out.push(f);
                }
            }
        }
        out
    }

    pub fn from_coordinates(&self, x: &EObject, y: &EObject, coords: &[Scalar]) -> EMorphism {
        let basis = self.hom_basis(x, y);
        assert_eq!(basis.len(), coords.len());
        basis
            .iter()
            .zip(coords)
            .filter(|(_, c)| !c.is_zero())
            .fold(self.zero(x, y), |acc, (b, c)| self.add(&acc, &self.scale(b, c)))
    }

    /// Matrix of `h ↦ f ∘ h` from `Hom(W, X)` to `Hom(W, Y)`.
    pub fn postcompose_matrix(&self, f: &EMorphism, w: &EObject) -> Mat {
        let basis = self.hom_basis(w, &f.source);
        let rows = self.hom_dim(w, &f.target);
        let cols: Vec<Vector> = basis.iter().map(|h| self.coordinates(&self.compose(f, h))).collect();
        Mat::from_columns(self.field(), rows, &cols)
    }

    /// Matrix of `h ↦ h ∘ f` from `Hom(Y, Z)` to `Hom(X, Z)`.
    pub fn precompose_matrix(&self, f: &EMorphism, z: &EObject) -> Mat {
        let basis = self.hom_basis(&f.target, z);
        let rows = self.hom_dim(&f.source, z);
        let cols: Vec<Vector> = basis.iter().map(|h| self.coordinates(&self.compose(h, f))).collect();
        Mat::from_columns(self.field(), rows, &cols)
    }

    /// Some `h` with `f ∘ h = g`, if one exists.
    pub fn factor_through_left(&self, f: &EMorphism, g: &EMorphism) -> Option<EMorphism> {
        assert_eq!(f.target, g.target);
        let m = self.postcompose_matrix(f, &g.source);
        m.solve(&self.coordinates(g)).map(|c| self.from_coordinates(&g.source, &f.source, &c))
    }

    /// Some `h` with `h ∘ f = g`, if one exists.
    pub fn factor_through_right(&self, f: &EMorphism, g: &EMorphism) -> Option<EMorphism> {
        assert_eq!(f.source, g.source);
        let m = self.precompose_matrix(f, &g.target);
        m.solve(&self.coordinates(g)).map(|c| self.from_coordinates(&f.target, &g.target, &c))
    }

    pub fn biproduct(&self, x: &EObject, y: &EObject) -> Biproduct {
        let s = x.sum(y);
        let n = self.n();
        // position of each copy of x and y inside s
        let mut pos_x = Vec::new();
        let mut pos_y = Vec::new();
        let mut offset = 0;
        for i in 0..n {
            for k in 0..x.mult[i] {
                pos_x.push(offset + k);
            }
            for k in 0..y.mult[i] {
                pos_y.push(offset + x.mult[i] + k);
            }
            offset += s.mult[i];
        }
        let sc = s.copies();
        let make = |from: &EObject, to: &EObject, pairs: &[(usize, usize)]| {
            let mut f = self.zero(from, to);
            for &(r, c) in pairs {
                let g = if to == &s { sc[r] } else { sc[c] };
                f.entries[r * from.total() + c] = self.gamma.basis_vector(self.gamma.idempotent(g));
            }
            f
        };
        let inj_x = make(x, &s, &pos_x.iter().enumerate().map(|(c, &r)| (r, c)).collect::<Vec<_>>());
        let inj_y = make(y, &s, &pos_y.iter().enumerate().map(|(c, &r)| (r, c)).collect::<Vec<_>>());
        let proj_x = make(&s, x, &pos_x.iter().enumerate().map(|(r, &c)| (r, c)).collect::<Vec<_>>());
        let proj_y = make(&s, y, &pos_y.iter().enumerate().map(|(r, &c)| (r, c)).collect::<Vec<_>>());
        Biproduct { object: s, inj: [inj_x, inj_y], proj: [proj_x, proj_y] }
    }

    /// `f ⊕ g : X1 ⊕ X2 → Y1 ⊕ Y2` in canonical copy order.
    pub fn direct_sum(&self, f: &EMorphism, g: &EMorphism) -> EMorphism {
        let src = self.biproduct(&f.source, &g.source);
        let tgt = self.biproduct(&f.target, &g.target);
        let a = self.compose(&tgt.inj[0], &self.compose(f, &src.proj[0]));
        let b = self.compose(&tgt.inj[1], &self.compose(g, &src.proj[1]));
        self.add(&a, &b)
    }

    /// `[f, g] : X1 ⊕ X2 → Y`.
    pub fn copair(&self, f: &EMorphism, g: &EMorphism) -> (Biproduct, EMorphism) {
        assert_eq!(f.target, g.target);
        let src = self.biproduct(&f.source, &g.source);
        let m = self.add(&self.compose(f, &src.proj[0]), &self.compose(g, &src.proj[1]));
        (src, m)
    }

    /// `(f, g)ᵀ : X → Y1 ⊕ Y2`.
    pub fn pair(&self, f: &EMorphism, g: &EMorphism) -> (Biproduct, EMorphism) {
        assert_eq!(f.source, g.source);
        let tgt = self.biproduct(&f.target, &g.target);
        let m = self.add(&self.compose(&tgt.inj[0], f), &self.compose(&tgt.inj[1], g));
        (tgt, m)
    }

    // ---- Yoneda ----

    /// `Hom(⊕G, X)` as a right `Γ`-module: a sum of indecomposable projectives.
    pub fn yoneda(&self, x: &EObject) -> FDModule {
        let parts: Vec<FDModule> =
            x.copies().into_iter().map(|g| FDModule::projective(self.gamma.clone(), g)).collect();
        FDModule::direct_sum_all(&self.gamma, &parts)
    }

    /// `Hom(⊕G, f)`: postcomposition with `f`.
    pub fn yoneda_map(&self, f: &EMorphism) -> ModMorphism {
        let gm = &self.gamma;
        let fld = self.field();
        let src = self.yoneda(&f.source);
        let tgt = self.yoneda(&f.target);
        let sc = f.source.copies();
        let tc = f.target.copies();
        let blocks = (0..gm.num_slots())
            .map(|k| {
                let t_off: Vec<usize> = offsets(tc.iter().map(|&g| gm.corner_basis(g, k).len()));
                let mut m = Mat::zeros(fld, tgt.dims()[k], src.dims()[k]);
                let mut col = 0;
                for (c, &gc) in sc.iter().enumerate() {
                    for b in gm.corner_basis(gc, k) {
                        let elem = gm.basis_vector(b);
                        for (r, &gr) in tc.iter().enumerate() {
                            let img = gm.mul(&f.entries[r * sc.len() + c], &elem);
                            for (row, x) in gm.corner_basis(gr, k).into_iter().enumerate() {
                                if !img[x].is_zero() {
                                    m.set(t_off[r] + row, col, img[x].clone());
                                }
                            }
                        }
                        col += 1;
                    }
                }
                m
            })
            .collect();
        ModMorphism::new_unchecked(src, tgt, blocks)
    }

    /// Inverse of [`AddCategory::yoneda_map`] on `Hom(yoneda X, yoneda Y)`.
    pub fn lift_module_map(&self, x: &EObject, y: &EObject, phi: &ModMorphism) -> EMorphism {
        let gm = &self.gamma;
        let sc = x.copies();
        let tc = y.copies();
        let mut f = self.zero(x, y);
        for (c, &gc) in sc.iter().enumerate() {
            // position of the idempotent of copy c inside yoneda(X) e_{gc}
            let s_off = offsets(sc.iter().map(|&g| gm.corner_basis(g, gc).len()));
            let within = gm.corner_basis(gc, gc).iter().position(|&b| b == gm.idempotent(gc)).unwrap();
            let mut unit = vec![Scalar::zero(); phi.source().dims()[gc]];
            unit[s_off[c] + within] = Scalar::one();
            let img = phi.block(gc).apply(&unit);
            let t_off = offsets(tc.iter().map(|&g| gm.corner_basis(g, gc).len()));
            for (r, &gr) in tc.iter().enumerate() {
                let mut v = vec![Scalar::zero(); gm.dim()];
                for (k, b) in gm.corner_basis(gr, gc).into_iter().enumerate() {
                    v[b] = img[t_off[r] + k].clone();
                }
                f.entries[r * sc.len() + c] = v;
            }
        }
        f
    }

    /// The object whose Yoneda module is the given direct sum of
    /// indecomposable projectives (listed by slot, in slot order).
    pub fn object_of_slots(&self, slots: &[usize]) -> EObject {
        let mut mult = vec![0; self.n()];
        for &s in slots {
            mult[s] += 1;
        }
        EObject::new(mult)
    }

    /// Realizes a map `yoneda(X) → M` out of a projective cover whose summand
    /// slots are sorted, i.e. whose source is literally `yoneda(X)`.
    fn cover_object(&self, slots: &[usize]) -> Option<EObject> {
        slots.windows(2).all(|w| w[0] <= w[1]).then(|| self.object_of_slots(slots))
    }

    /// The kernel of `f` inside `E`, if it exists: an `E`-morphism `k` with
    /// `Hom(-, k)` the kernel of `Hom(-, f)`.
    pub fn kernel(&self, f: &EMorphism) -> Option<EMorphism> {
        let yf = self.yoneda_map(f);
        let (k, incl) = yf.kernel();
        let cover = projective_cover(&k);
        if !cover.map.is_iso() {
            return None;
        }
        let w = self.cover_object(&cover.summand_slots)?;
        let into = incl.compose(&cover.map);
        Some(self.lift_module_map(&w, &f.source, &into))
    }

    /// The cokernel of `f` inside `E`, computed as a kernel in `E^op`.
    pub fn cokernel(&self, f: &EMorphism) -> Option<EMorphism> {
        let op = self.opposite();
        op.kernel(&self.op_morphism(f)).map(|k| op.op_morphism(&k))
    }

    /// Pullback of `d: B → C` along `g: T → C`: returns `(P, P → B, P → T)`.
    pub fn pullback(&self, d: &EMorphism, g: &EMorphism) -> Option<(EObject, EMorphism, EMorphism)> {
        let (bp, m) = self.copair(d, &self.neg(g));
        let k = self.kernel(&m)?;
        let pb = self.compose(&bp.proj[0], &k);
        let pt = self.compose(&bp.proj[1], &k);
        Some((k.source.clone(), pb, pt))
    }

    /// Pushout of `i: A → B` along `g: A → T`: returns `(Q, B → Q, T → Q)`.
    pub fn pushout(&self, i: &EMorphism, g: &EMorphism) -> Option<(EObject, EMorphism, EMorphism)> {
        let (bp, m) = self.pair(i, &self.neg(g));
        let c = self.cokernel(&m)?;
        let qb = self.compose(&c, &bp.inj[0]);
        let qt = self.compose(&c, &bp.inj[1]);
        Some((c.target.clone(), qb, qt))
    }

    /// Value `M(f): M(Y) → M(X)` of a contravariant functor, given as a right
    /// `Γ`-module, on `f: X → Y`.
    pub fn evaluate(&self, m: &FDModule, f: &EMorphism) -> Mat {
        let sc = f.source.copies();
        let tc = f.target.copies();
        let fld = self.field();
        let row_off = offsets(sc.iter().map(|&g| m.dims()[g]));
        let col_off = offsets(tc.iter().map(|&g| m.dims()[g]));
        let rows: usize = sc.iter().map(|&g| m.dims()[g]).sum();
        let cols: usize = tc.iter().map(|&g| m.dims()[g]).sum();
        let mut out = Mat::zeros(fld, rows, cols);
        for (r, &gr) in tc.iter().enumerate() {
            for (c, &gc) in sc.iter().enumerate() {
                let mut block = Mat::zeros(fld, m.dims()[gc], m.dims()[gr]);
                for (b, x) in f.entries[r * sc.len() + c].iter().enumerate() {
                    if !x.is_zero() {
                        block = block.add(&m.action(b).scale(x));
                    }
                }
                out.set_block(row_off[c], col_off[r], &block);
            }
        }
        out
    }

    /// Dimension of `M(X)`.
    pub fn evaluate_dim(&self, m: &FDModule, x: &EObject) -> usize {
        x.copies().iter().map(|&g| m.dims()[g]).sum()
    }

    // ---- duality ----

    /// `E^op`: `Γ^op` on the same basis, ambient modules dualized.
    pub fn opposite(&self) -> AddCategory {
        let gamma = Arc::new(self.gamma.opposite());
        let ambient = self.ambient.as_ref().map(|a| {
            let lop = Arc::new(a.algebra.opposite());
            let gens: Vec<FDModule> = a.generators.iter().map(|g| g.dual(lop.clone())).collect();
            let maps = a
                .maps
                .iter()
                .enumerate()
                .map(|(b, m)| {
                    let (i, j) = self.gamma.slot_of(b);
                    let blocks = m.blocks().iter().map(Mat::transpose).collect();
                    ModMorphism::new_unchecked(gens[i].clone(), gens[j].clone(), blocks)
                })
                .collect();
            Ambient { algebra: lop, generators: gens, maps }
        });
        AddCategory { labels: self.labels.clone(), gamma, ambient }
    }

    /// The same morphism read in `E^op` (source and target swap).
    pub fn op_morphism(&self, f: &EMorphism) -> EMorphism {
        let (rows, cols) = (f.target.total(), f.source.total());
        let mut entries = Vec::with_capacity(rows * cols);
        for c in 0..cols {
            for r in 0..rows {
                entries.push(f.entries[r * cols + c].clone());
            }
        }
        EMorphism { source: f.target.clone(), target: f.source.clone(), entries }
    }

    // ---- ambient realization ----

    pub fn realize_object(&self, x: &EObject) -> Option<FDModule> {
        self.ambient.as_ref().map(|a| a.apply_object(x))
    }

    /// The `Λ`-module map behind an `E`-morphism.
    pub fn realize(&self, f: &EMorphism) -> Option<ModMorphism> {
        self.ambient.as_ref().map(|a| a.apply(self.field(), f))
    }

    /// Reads a `Λ`-module map between realized objects back as an `E`-morphism.
    pub fn morphism_from_module_map(&self, x: &EObject, y: &EObject, blocks: &[Mat]) -> Result<EMorphism> {
        let a = self.ambient.as_ref().ok_or_else(|| bad_input("category has no ambient module category"))?;
        let src = self.realize_object(x).unwrap();
        let tgt = self.realize_object(y).unwrap();
        let phi = ModMorphism::new(src, tgt, blocks.to_vec())?;
        let sc = x.copies();
        let tc = y.copies();
        let mut f = self.zero(x, y);
        for (r, &gr) in tc.iter().enumerate() {
            for (c, &gc) in sc.iter().enumerate() {
                let sub: Vec<Mat> = (0..a.algebra.num_slots())
                    .map(|v| {
                        let so = offsets(sc.iter().map(|&g| a.generators[g].dims()[v]));
                        let to = offsets(tc.iter().map(|&g| a.generators[g].dims()[v]));
                        phi.block(v).block(
                            to[r],
                            so[c],
                            a.generators[gr].dims()[v],
                            a.generators[gc].dims()[v],
                        )
                    })
                    .collect();
                let piece = ModMorphism::new_unchecked(a.generators[gc].clone(), a.generators[gr].clone(), sub);
                let corner = self.gamma.corner_basis(gr, gc);
                let basis: Vec<ModMorphism> = corner.iter().map(|&b| a.maps[b].clone()).collect();
                let coords = if basis.is_empty() {
                    if piece.is_zero() {
                        Vec::new()
                    } else {
                        return Err(bad_input("component is not a morphism between the generators"));
                    }
                } else {
                    piece.coordinates_in(&basis).ok_or_else(|| bad_input("component is not a module map"))?
                };
                let mut v = vec![Scalar::zero(); self.gamma.dim()];
                for (b, c) in corner.into_iter().zip(coords) {
                    v[b] = c;
                }
                f.entries[r * sc.len() + c] = v;
            }
        }
        Ok(f)
    }

    /// Dimension of `Hom_E(G_j, G_i)` for all pairs, `[i][j]`.
    pub fn hom_table(&self) -> Vec<Vec<usize>> {
        self.gamma.cartan_matrix()
    }

    /// Largest independent subset of a family of morphisms with common ends.
    pub fn independent(&self, fs: &[EMorphism]) -> Vec<usize> {
        if fs.is_empty() {
            return Vec::new();
        }
        let dim = self.hom_dim(&fs[0].source, &fs[0].target);
        let coords: Vec<Vector> = fs.iter().map(|f| self.coordinates(f)).collect();
        greedy_independent(self.field(), dim, &coords)
    }
}

fn offsets(sizes: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut acc = 0;
    sizes
        .map(|s| {
            let o = acc;
            acc += s;
            o
        })
        .collect()
}

fn module_map_from_global(src: &FDModule, tgt: &FDModule, m: &Mat) -> ModMorphism {
    let blocks = (0..src.dims().len())
        .map(|i| m.block(tgt.offset(i), src.offset(i), tgt.dims()[i], src.dims()[i]))
        .collect();
    ModMorphism::new_unchecked(src.clone(), tgt.clone(), blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, Quiver};

    pub(crate) fn a2_category() -> AddCategory {
        let q = Quiver::new(vec!["1".into(), "2".into()], vec![("a".into(), "1".into(), "2".into())]).unwrap();
        let lambda = Arc::new(build_algebra(Field::prime(101).unwrap(), &q, &[], 1).unwrap());
        let p1 = FDModule::projective(lambda.clone(), 0);
        let p2 = FDModule::projective(lambda.clone(), 1);
        let s1 = FDModule::simple(lambda.clone(), 0);
        AddCategory::from_modules(vec!["P1".into(), "P2".into(), "S1".into()], vec![p1, p2, s1]).unwrap()
    }

    #[test]
    fn auslander_algebra_of_a2_has_dimension_five() {
        let e = a2_category();
        assert_eq!(e.gamma().dim(), 5);
        // [i][j] = dim Hom(G_j, G_i)
        assert_eq!(e.hom_table(), vec![vec![1, 1, 0], vec![0, 1, 0], vec![1, 0, 1]]);
    }

    #[test]
    fn yoneda_dimension_vectors() {
        let e = a2_category();
        assert_eq!(e.yoneda(&e.generator(0)).dims(), &[1, 1, 0]);
        assert!(e.yoneda(&e.zero_object()).is_zero());
        let x = EObject::new(vec![1, 0, 1]);
        assert_eq!(e.yoneda(&x).dims(), &[2, 1, 1]);
    }

    #[test]
    fn yoneda_is_fully_faithful_on_generators() {
        let e = a2_category();
        for x in e.generators() {
            for y in e.generators() {
                let homs = hom_basis(&e.yoneda(&x), &e.yoneda(&y)).unwrap();
                assert_eq!(homs.len(), e.hom_dim(&x, &y));
                for f in e.hom_basis(&x, &y) {
                    let back = e.lift_module_map(&x, &y, &e.yoneda_map(&f));
                    assert_eq!(back, f);
                }
            }
        }
    }

    #[test]
    fn kernel_of_projection_onto_simple() {
        let e = a2_category();
        let d = e.hom_basis(&e.generator(0), &e.generator(2)).remove(0);
        let k = e.kernel(&d).unwrap();
        assert_eq!(k.source(), &e.generator(1));
        assert!(e.compose(&d, &k).is_zero());
        let c = e.cokernel(&k).unwrap();
        assert_eq!(c.target(), &e.generator(2));
    }

    #[test]
    fn realize_round_trip() {
        let e = a2_category();
        let x = EObject::new(vec![1, 1, 0]);
        for f in e.hom_basis(&x, &x) {
            let m = e.realize(&f).unwrap();
            assert_eq!(e.morphism_from_module_map(&x, &x, m.blocks()).unwrap(), f);
        }
    }

    #[test]
    fn direct_sum_matches_biproduct() {
        let e = a2_category();
        let d = e.hom_basis(&e.generator(0), &e.generator(2)).remove(0);
        let id = e.identity(&e.generator(1));
        let s = e.direct_sum(&d, &id);
        assert_eq!(s.source(), &EObject::new(vec![1, 1, 0]));
        assert_eq!(s.target(), &EObject::new(vec![0, 1, 1]));
        let opop = e.opposite().opposite();
        assert_eq!(opop, e);
    }
}
