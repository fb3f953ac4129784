//! Finite-dimensional right modules and their morphisms.
//!
//! A right module `M` is stored slot by slot: `M e_i` has dimension
//! `dims[i]`, and a basis element `b ∈ e_i A e_j` acts as a matrix
//! `M e_i -> M e_j`. Right action means `act(a * b) = act(b) * act(a)`.
//! For a quiver algebra this is exactly a representation: arrows act along
//! their direction.

use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::FDAlgebra;
use crate::error::{bad_input, dim_mismatch, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{greedy_independent, Mat, Vector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FDModule {
    algebra: Arc<FDAlgebra>,
    dims: Vec<usize>,
    action: Vec<Mat>,
}

impl FDModule {
    pub fn new(algebra: Arc<FDAlgebra>, dims: Vec<usize>, action: Vec<Mat>) -> Result<FDModule> {
        let m = FDModule { algebra, dims, action };
        m.validate()?;
        Ok(m)
    }

    /// Skips validation; for constructions that are correct by design.
    pub(crate) fn new_unchecked(algebra: Arc<FDAlgebra>, dims: Vec<usize>, action: Vec<Mat>) -> FDModule {
        let m = FDModule { algebra, dims, action };
        debug_assert!(m.validate().is_ok(), "{:?}", m.validate());
        m
    }

    pub fn validate(&self) -> Result<()> {
        let alg = &self.algebra;
        if self.dims.len() != alg.num_slots() || self.action.len() != alg.dim() {
            return Err(dim_mismatch("module shape does not match its algebra"));
        }
        let field = alg.field();
        for b in 0..alg.dim() {
            let (i, j) = alg.slot_of(b);
            if self.action[b].shape() != (self.dims[j], self.dims[i]) {
                return Err(dim_mismatch(format!("action of {} has wrong shape", alg.labels()[b])));
            }
        }
        for i in 0..alg.num_slots() {
            if self.action[alg.idempotent(i)] != Mat::identity(field, self.dims[i]) {
                return Err(bad_input(format!("idempotent {} does not act as identity", alg.slot_label(i))));
            }
        }
        for a in 0..alg.dim() {
            for b in 0..alg.dim() {
                let (sa, ta) = alg.slot_of(a);
                let (sb, tb) = alg.slot_of(b);
                if ta != sb {
                    continue;
                }
                let lhs = self.action[b].mul(&self.action[a]);
                let mut rhs = Mat::zeros(field, self.dims[tb], self.dims[sa]);
                for (k, c) in alg.product_of_basis(a, b).iter().enumerate() {
                    if !c.is_zero() {
                        rhs = rhs.add(&self.action[k].scale(c));
                    }
                }
                if lhs != rhs {
                    return Err(bad_input(format!(
                        "action violates the relation for {} * {}",
                        alg.labels()[a],
                        alg.labels()[b]
                    )));
                }
            }
        }
        Ok(())
    }

    /// A representation of a quiver algebra from the matrices of its arrows.
    pub fn from_representation(algebra: Arc<FDAlgebra>, dims: Vec<usize>, arrows: &[Mat]) -> Result<FDModule> {
        let paths = algebra
            .basis_paths()
            .ok_or_else(|| bad_input("algebra was not built from a quiver"))?
            .to_vec();
        let field = algebra.field();
        let mut action = Vec::with_capacity(algebra.dim());
        for (b, path) in paths.iter().enumerate() {
            let (i, _) = algebra.slot_of(b);
            let mut m = Mat::identity(field, dims[i]);
            for &a in path {
                m = arrows[a].mul(&m);
            }
            action.push(m);
        }
        FDModule::new(algebra, dims, action)
    }

    pub fn zero(algebra: Arc<FDAlgebra>) -> FDModule {
        let n = algebra.num_slots();
        let f = algebra.field();
        let action = (0..algebra.dim()).map(|_| Mat::zeros(f, 0, 0)).collect();
        FDModule::new_unchecked(algebra, vec![0; n], action)
    }

    /// The indecomposable projective `e_i A`.
    pub fn projective(algebra: Arc<FDAlgebra>, i: usize) -> FDModule {
        let n = algebra.num_slots();
        let f = algebra.field();
        let corners: Vec<Vec<usize>> = (0..n).map(|j| algebra.corner_basis(i, j)).collect();
        let dims: Vec<usize> = corners.iter().map(Vec::len).collect();
        let mut action = Vec::with_capacity(algebra.dim());
        for b in 0..algebra.dim() {
            let (j, k) = algebra.slot_of(b);
            let mut m = Mat::zeros(f, dims[k], dims[j]);
            for (col, &x) in corners[j].iter().enumerate() {
                let prod = algebra.product_of_basis(x, b);
                for (row, &y) in corners[k].iter().enumerate() {
                    m.set(row, col, prod[y].clone());
                }
            }
            action.push(m);
        }
        FDModule::new_unchecked(algebra, dims, action)
    }

    /// The simple top of `e_i A`.
    pub fn simple(algebra: Arc<FDAlgebra>, i: usize) -> FDModule {
        let n = algebra.num_slots();
        let f = algebra.field();
        let mut dims = vec![0; n];
        dims[i] = 1;
        let action = (0..algebra.dim())
            .map(|b| {
                let (s, t) = algebra.slot_of(b);
                if b == algebra.idempotent(i) {
                    Mat::identity(f, 1)
                } else {
                    Mat::zeros(f, dims[t], dims[s])
                }
            })
            .collect();
        FDModule::new_unchecked(algebra, dims, action)
    }

    pub fn algebra(&self) -> &Arc<FDAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn action(&self, b: usize) -> &Mat {
        &self.action[b]
    }

    pub fn offset(&self, slot: usize) -> usize {
        self.dims[..slot].iter().sum()
    }

    /// Matrix of the right action of `b` on the whole module.
    pub fn global_action(&self, b: usize) -> Mat {
        let (i, j) = self.algebra.slot_of(b);
        let mut m = Mat::zeros(self.field(), self.dim(), self.dim());
        m.set_block(self.offset(j), self.offset(i), &self.action[b]);
        m
    }

    /// Action of an arbitrary algebra element on the whole module.
    pub fn global_action_of(&self, x: &[Scalar]) -> Mat {
        let mut m = Mat::zeros(self.field(), self.dim(), self.dim());
        for (b, c) in x.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.global_action(b).scale(c));
            }
        }
        m
    }

    pub fn same_algebra(&self, other: &FDModule) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra
    }

    pub fn direct_sum(&self, other: &FDModule) -> FDModule {
        assert!(self.same_algebra(other));
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let action = self.action.iter().zip(&other.action).map(|(a, b)| a.block_diag(b)).collect();
        FDModule::new_unchecked(self.algebra.clone(), dims, action)
    }

    pub fn direct_sum_all(algebra: &Arc<FDAlgebra>, parts: &[FDModule]) -> FDModule {
        parts.iter().fold(FDModule::zero(algebra.clone()), |acc, m| acc.direct_sum(m))
    }

    /// `Hom_k(M, k)` as a right module over the opposite algebra.
    pub fn dual(&self, opposite: Arc<FDAlgebra>) -> FDModule {
        let action = self.action.iter().map(Mat::transpose).collect();
        FDModule::new_unchecked(opposite, self.dims.clone(), action)
    }

    /// Restriction to the corner algebra: keeps the listed slots and the
    /// basis elements named by `basis_map`.
    pub fn truncate(&self, corner: Arc<FDAlgebra>, keep: &[usize], basis_map: &[usize]) -> FDModule {
        let dims = keep.iter().map(|&s| self.dims[s]).collect();
        let action = basis_map.iter().map(|&b| self.action[b].clone()).collect();
        FDModule::new_unchecked(corner, dims, action)
    }

    /// Splits a global coordinate vector into per-slot pieces.
    pub fn split(&self, v: &[Scalar]) -> Vec<Vector> {
        (0..self.dims.len()).map(|s| v[self.offset(s)..self.offset(s) + self.dims[s]].to_vec()).collect()
    }

    /// Image of a slot element under the right action of `b`.
    pub fn act(&self, slot: usize, v: &[Scalar], b: usize) -> Option<(usize, Vector)> {
        let (i, j) = self.algebra.slot_of(b);
        (i == slot).then(|| (j, self.action[b].apply(v)))
    }

    /// Submodule spanned slot by slot by the columns of `spans`. Fails if the
    /// spans are not closed under the action.
    pub fn submodule(&self, spans: &[Mat]) -> Result<(FDModule, ModMorphism)> {
        let f = self.field();
        let spans: Vec<Mat> = spans
            .iter()
            .map(|s| {
                let idx = s.independent_columns();
                Mat::from_columns(f, s.rows(), &idx.iter().map(|&c| s.column(c)).collect::<Vec<_>>())
            })
            .collect();
        let dims: Vec<usize> = spans.iter().map(Mat::cols).collect();
        let mut action = Vec::with_capacity(self.algebra.dim());
        for b in 0..self.algebra.dim() {
            let (i, j) = self.algebra.slot_of(b);
            let img = self.action[b].mul(&spans[i]);
            let coeffs = spans[j]
                .solve_matrix(&img)
                .ok_or_else(|| bad_input("subspace is not a submodule"))?;
            action.push(coeffs);
        }
        let sub = FDModule::new_unchecked(self.algebra.clone(), dims, action);
        let incl = ModMorphism::new_unchecked(sub.clone(), self.clone(), spans);
        Ok((sub, incl))
    }

    /// Smallest submodule containing the given slot elements.
    pub fn generated_submodule(&self, gens: &[(usize, Vector)]) -> (FDModule, ModMorphism) {
        let f = self.field();
        let n = self.dims.len();
        let mut spans: Vec<Vec<Vector>> = vec![Vec::new(); n];
        let mut queue: Vec<(usize, Vector)> = gens.to_vec();
        while let Some((s, v)) = queue.pop() {
            if v.iter().all(Zero::is_zero) {
                continue;
            }
            let mut cand = spans[s].clone();
            cand.push(v.clone());
            if greedy_independent(f, self.dims[s], &cand).len() == spans[s].len() {
                continue;
            }
            spans[s].push(v.clone());
            for b in self.algebra.radical_basis() {
                if let Some((t, w)) = self.act(s, &v, b) {
                    queue.push((t, w));
                }
            }
        }
        let mats: Vec<Mat> = (0..n).map(|s| Mat::from_columns(f, self.dims[s], &spans[s])).collect();
        self.submodule(&mats).expect("generated subspace is closed")
    }

    /// Quotient by the submodule spanned slot by slot by `spans`.
    pub fn quotient(&self, spans: &[Mat]) -> Result<(FDModule, ModMorphism)> {
        let (_, incl) = self.submodule(spans)?;
        Ok(incl.cokernel())
    }

    /// Invariant helper: whole-module basis vector at a slot.
    pub fn slot_unit(&self, slot: usize, k: usize) -> Vector {
        let mut v = vec![Scalar::zero(); self.dims[slot]];
        v[k] = self.field().one();
        v
    }
}

/// A module homomorphism given by one matrix per slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModMorphism {
    source: FDModule,
    target: FDModule,
    blocks: Vec<Mat>,
}

impl ModMorphism {
    pub fn new(source: FDModule, target: FDModule, blocks: Vec<Mat>) -> Result<ModMorphism> {
        let m = ModMorphism { source, target, blocks };
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(source: FDModule, target: FDModule, blocks: Vec<Mat>) -> ModMorphism {
        let m = ModMorphism { source, target, blocks };
        debug_assert!(m.validate().is_ok(), "{:?}", m.validate());
        m
    }

    pub fn validate(&self) -> Result<()> {
        if !self.source.same_algebra(&self.target) {
            return Err(dim_mismatch("morphism between modules over different algebras"));
        }
        let n = self.source.dims.len();
        if self.blocks.len() != n {
            return Err(dim_mismatch("wrong number of blocks"));
        }
        for i in 0..n {
            if self.blocks[i].shape() != (self.target.dims[i], self.source.dims[i]) {
                return Err(dim_mismatch(format!("block {i} has wrong shape")));
            }
        }
        let alg = self.source.algebra.clone();
        for b in alg.radical_basis() {
            let (i, j) = alg.slot_of(b);
            let lhs = self.target.action[b].mul(&self.blocks[i]);
            let rhs = self.blocks[j].mul(&self.source.action[b]);
            if lhs != rhs {
                return Err(bad_input(format!("map does not commute with {}", alg.labels()[b])));
            }
        }
        Ok(())
    }

    pub fn identity(m: &FDModule) -> ModMorphism {
        let f = m.field();
        let blocks = m.dims.iter().map(|&d| Mat::identity(f, d)).collect();
        ModMorphism::new_unchecked(m.clone(), m.clone(), blocks)
    }

    pub fn zero(source: &FDModule, target: &FDModule) -> ModMorphism {
        let f = source.field();
        let blocks = source.dims.iter().zip(&target.dims).map(|(&s, &t)| Mat::zeros(f, t, s)).collect();
        ModMorphism::new_unchecked(source.clone(), target.clone(), blocks)
    }

    pub fn source(&self) -> &FDModule {
        &self.source
    }

    pub fn target(&self) -> &FDModule {
        &self.target
    }

    pub fn blocks(&self) -> &[Mat] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &Mat {
        &self.blocks[i]
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &ModMorphism) -> ModMorphism {
        assert_eq!(rhs.target.dims, self.source.dims, "composition shape");
        let blocks = self.blocks.iter().zip(&rhs.blocks).map(|(a, b)| a.mul(b)).collect();
        ModMorphism::new_unchecked(rhs.source.clone(), self.target.clone(), blocks)
    }

    pub fn add(&self, rhs: &ModMorphism) -> ModMorphism {
        let blocks = self.blocks.iter().zip(&rhs.blocks).map(|(a, b)| a.add(b)).collect();
        ModMorphism::new_unchecked(self.source.clone(), self.target.clone(), blocks)
    }

    pub fn scale(&self, c: &Scalar) -> ModMorphism {
        let blocks = self.blocks.iter().map(|a| a.scale(c)).collect();
        ModMorphism::new_unchecked(self.source.clone(), self.target.clone(), blocks)
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Mat::is_zero)
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Mat::rank).sum()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Flattened coordinates: slot blocks in order, each row-major.
    pub fn flatten(&self) -> Vector {
        self.blocks.iter().flat_map(|b| b.entries().iter().cloned()).collect()
    }

    pub fn global_matrix(&self) -> Mat {
        let mut m = Mat::zeros(self.source.field(), self.target.dim(), self.source.dim());
        for (i, b) in self.blocks.iter().enumerate() {
            m.set_block(self.target.offset(i), self.source.offset(i), b);
        }
        m
    }

    pub fn kernel(&self) -> (FDModule, ModMorphism) {
        let f = self.source.field();
        let spans: Vec<Mat> = self
            .blocks
            .iter()
            .enumerate()
            .map(|(i, b)| Mat::from_columns(f, self.source.dims[i], &b.nullspace()))
            .collect();
        self.source.submodule(&spans).expect("kernel is a submodule")
    }

    pub fn image(&self) -> (FDModule, ModMorphism) {
        let f = self.source.field();
        let spans: Vec<Mat> = self
            .blocks
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let cols: Vec<Vector> = b.independent_columns().into_iter().map(|c| b.column(c)).collect();
                Mat::from_columns(f, self.target.dims[i], &cols)
            })
            .collect();
        self.target.submodule(&spans).expect("image is a submodule")
    }

    pub fn cokernel(&self) -> (FDModule, ModMorphism) {
        let f = self.source.field();
        let alg = self.source.algebra.clone();
        let n = alg.num_slots();
        let mut proj = Vec::with_capacity(n);
        let mut sections = Vec::with_capacity(n);
        for i in 0..n {
            let d = self.target.dims[i];
            let rows = self.blocks[i].left_nullspace();
            let p = Mat::from_rows(f, rows.len(), d, rows);
            let s = p.solve_matrix(&Mat::identity(f, p.rows())).expect("projection is surjective");
            proj.push(p);
            sections.push(s);
        }
        let dims: Vec<usize> = proj.iter().map(Mat::rows).collect();
        let action = (0..alg.dim())
            .map(|b| {
                let (i, j) = alg.slot_of(b);
                proj[j].mul(&self.target.action[b]).mul(&sections[i])
            })
            .collect();
        let coker = FDModule::new_unchecked(alg, dims, action);
        let pi = ModMorphism::new_unchecked(self.target.clone(), coker.clone(), proj);
        (coker, pi)
    }

    /// Coordinates of `self` in a list of morphisms with the same source and
    /// target, if it lies in their span.
    pub fn coordinates_in(&self, basis: &[ModMorphism]) -> Option<Vector> {
        let f = self.source.field();
        let len = self.flatten().len();
        let cols: Vec<Vector> = basis.iter().map(ModMorphism::flatten).collect();
        Mat::from_columns(f, len, &cols).solve(&self.flatten())
    }
}

/// Basis of `Hom_A(M, N)`.
pub fn hom_basis(m: &FDModule, n: &FDModule) -> Result<Vec<ModMorphism>> {
    if !m.same_algebra(n) {
        return Err(dim_mismatch("modules over different algebras"));
    }
    let alg = m.algebra.clone();
    let f = alg.field();
    let slots = alg.num_slots();
    let mut offsets = Vec::with_capacity(slots);
    let mut nvars = 0;
    for i in 0..slots {
        offsets.push(nvars);
        nvars += n.dims[i] * m.dims[i];
    }
    let var = |i: usize, r: usize, c: usize| offsets[i] + r * m.dims[i] + c;
    let mut eqs: Vec<Vector> = Vec::new();
    for b in alg.radical_basis() {
        let (i, j) = alg.slot_of(b);
        let nb = &n.action[b];
        let mb = &m.action[b];
        // (N(b) φ_i − φ_j M(b))[r][c] = 0
        for r in 0..n.dims[j] {
            for c in 0..m.dims[i] {
                let mut eq = vec![Scalar::zero(); nvars];
                for k in 0..n.dims[i] {
                    let coef = nb.get(r, k);
                    if !coef.is_zero() {
                        let v = var(i, k, c);
                        eq[v] = f.add(&eq[v], coef);
                    }
                }
                for k in 0..m.dims[j] {
                    let coef = mb.get(k, c);
                    if !coef.is_zero() {
                        let v = var(j, r, k);
                        eq[v] = f.sub(&eq[v], coef);
                    }
                }
                if !eq.iter().all(Zero::is_zero) {
                    eqs.push(eq);
                }
            }
        }
    }
    let solutions = if eqs.is_empty() {
        Mat::identity(f, nvars).columns()
    } else {
        Mat::from_rows(f, eqs.len(), nvars, eqs).nullspace()
    };
    Ok(solutions
        .into_iter()
        .map(|sol| {
            let blocks = (0..slots)
                .map(|i| {
                    let mut b = Mat::zeros(f, n.dims[i], m.dims[i]);
                    for r in 0..n.dims[i] {
                        for c in 0..m.dims[i] {
                            b.set(r, c, sol[var(i, r, c)].clone());
                        }
                    }
                    b
                })
                .collect();
            ModMorphism::new_unchecked(m.clone(), n.clone(), blocks)
        })
        .collect())
}

pub fn hom_dim(m: &FDModule, n: &FDModule) -> usize {
    hom_basis(m, n).map(|b| b.len()).unwrap_or(0)
}

/// Inclusion of the `k`-th summand and projection onto it, for a sum built by
/// [`FDModule::direct_sum`] from `parts`.
pub fn summand_maps(sum: &FDModule, parts: &[FDModule], k: usize) -> (ModMorphism, ModMorphism) {
    let f = sum.field();
    let n = sum.dims.len();
    let mut inj = Vec::with_capacity(n);
    let mut proj = Vec::with_capacity(n);
    for i in 0..n {
        let before: usize = parts[..k].iter().map(|p| p.dims[i]).sum();
        let d = parts[k].dims[i];
        let mut a = Mat::zeros(f, sum.dims[i], d);
        a.set_block(before, 0, &Mat::identity(f, d));
        proj.push(a.transpose());
        inj.push(a);
    }
    (
        ModMorphism::new_unchecked(parts[k].clone(), sum.clone(), inj),
        ModMorphism::new_unchecked(sum.clone(), parts[k].clone(), proj),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, Quiver};

    fn a2() -> Arc<FDAlgebra> {
        let q = Quiver::new(vec!["1".into(), "2".into()], vec![("a".into(), "1".into(), "2".into())]).unwrap();
        Arc::new(build_algebra(Field::prime(101).unwrap(), &q, &[], 1).unwrap())
    }

    #[test]
    fn projectives_match_representations() {
        let alg = a2();
        let p1 = FDModule::projective(alg.clone(), 0);
        let p2 = FDModule::projective(alg.clone(), 1);
        assert_eq!(p1.dims(), &[1, 1]);
        assert_eq!(p2.dims(), &[0, 1]);
        let f = alg.field();
        let rep = FDModule::from_representation(alg.clone(), vec![1, 1], &[Mat::from_i64(f, 1, 1, &[1])]).unwrap();
        assert_eq!(rep, p1);
    }

    #[test]
    fn hom_spaces_over_a2() {
        let alg = a2();
        let p1 = FDModule::projective(alg.clone(), 0);
        let p2 = FDModule::projective(alg.clone(), 1);
        let s1 = FDModule::simple(alg.clone(), 0);
        assert_eq!(hom_dim(&p2, &p1), 1);
        assert_eq!(hom_dim(&p1, &p2), 0);
        assert_eq!(hom_dim(&s1, &s1), 1);
        assert_eq!(hom_dim(&p1, &s1), 1);
        assert_eq!(hom_dim(&s1, &p1), 0);
    }

    #[test]
    fn kernel_and_cokernel_of_identity_and_zero() {
        let alg = a2();
        let p1 = FDModule::projective(alg.clone(), 0);
        let id = ModMorphism::identity(&p1);
        assert!(id.kernel().0.is_zero());
        assert!(id.cokernel().0.is_zero());
        let z = ModMorphism::zero(&p1, &p1);
        assert_eq!(z.kernel().0.dims(), p1.dims());
        assert_eq!(z.cokernel().0.dims(), p1.dims());
    }

    #[test]
    fn cokernel_of_radical_inclusion_is_simple() {
        let alg = a2();
        let p1 = FDModule::projective(alg.clone(), 0);
        let p2 = FDModule::projective(alg.clone(), 1);
        let f = &hom_basis(&p2, &p1).unwrap()[0];
        let (c, pi) = f.cokernel();
        assert_eq!(c.dims(), &[1, 0]);
        assert!(pi.is_surjective());
        assert!(pi.compose(f).is_zero());
        let (k, _) = f.kernel();
        assert!(k.is_zero());
    }

    #[test]
    fn bad_representation_rejected() {
        let alg = a2();
        let f = alg.field();
        let err = FDModule::new(alg.clone(), vec![1, 1], vec![Mat::identity(f, 1), Mat::identity(f, 1), Mat::zeros(f, 1, 2)]);
        assert!(err.is_err());
    }
}
