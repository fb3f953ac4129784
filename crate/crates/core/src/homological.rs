//! Radical layers, projective covers, `Ext^1`, and Serre-subcategory
//! trace/reject for modules over a basic algebra.

use std::sync::Arc;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::FDAlgebra;
use crate::field::{Field, Scalar};
use crate::linalg::{greedy_independent, rank_of, Mat, Vector};
use crate::module::{hom_basis, FDModule, ModMorphism};

/// `M · J` for `J` the radical of the algebra.
pub fn radical(m: &FDModule) -> (FDModule, ModMorphism) {
    let f = m.field();
    let alg = m.algebra().clone();
    let mut spans: Vec<Vec<Vector>> = vec![Vec::new(); alg.num_slots()];
    for b in alg.radical_basis() {
        let (_, j) = alg.slot_of(b);
        spans[j].extend(m.action(b).columns());
    }
    let mats: Vec<Mat> = spans
        .iter()
        .enumerate()
        .map(|(j, cols)| Mat::from_columns(f, m.dims()[j], cols))
        .collect();
    m.submodule(&mats).expect("radical is a submodule")
}

/// Dimension vectors of the layers `M J^k / M J^{k+1}`.
pub fn radical_layers(m: &FDModule) -> Vec<Vec<usize>> {
    let mut layers = Vec::new();
    let mut current = m.clone();
    while !current.is_zero() {
        let (rad, _) = radical(&current);
        layers.push(current.dims().iter().zip(rad.dims()).map(|(a, b)| a - b).collect());
        current = rad;
    }
    layers
}

/// Multiplicity of each simple as a composition factor, indexed by slot,
/// accumulated along the radical series.
pub fn composition_multiplicities(m: &FDModule) -> Vec<usize> {
    let mut mult = vec![0; m.algebra().num_slots()];
    for layer in radical_layers(m) {
        for (acc, d) in mult.iter_mut().zip(layer) {
            *acc += d;
        }
    }
    mult
}

/// Composition factors as a sorted multiset of simple labels.
pub fn composition_factors(m: &FDModule) -> Vec<String> {
    let alg = m.algebra();
    let mut out = Vec::new();
    for (i, k) in composition_multiplicities(m).into_iter().enumerate() {
        for _ in 0..k {
            out.push(format!("S[{}]", alg.slot_label(i)));
        }
    }
    out
}

pub fn top_dims(m: &FDModule) -> Vec<usize> {
    let (rad, _) = radical(m);
    m.dims().iter().zip(rad.dims()).map(|(a, b)| a - b).collect()
}

/// A projective cover `π: P → M`. `P` is a direct sum of indecomposable
/// projectives in slot order; `slots()` lists the slot of each summand.
#[derive(Debug, Clone)]
pub struct ProjectiveCover {
    pub summand_slots: Vec<usize>,
    pub generators: Vec<Vector>,
    pub module: FDModule,
    pub map: ModMorphism,
}

/// Lifts of a basis of the top, chosen greedily among unit vectors so that
/// results are deterministic.
fn top_lifts(m: &FDModule) -> Vec<(usize, Vector)> {
    let f = m.field();
    let (_, incl) = radical(m);
    let mut lifts = Vec::new();
    for s in 0..m.dims().len() {
        let mut cols = incl.block(s).columns();
        let mut rank = cols.len();
        for k in 0..m.dims()[s] {
            let u = m.slot_unit(s, k);
            cols.push(u.clone());
            let r = rank_of(f, m.dims()[s], &cols);
            if r > rank {
                rank = r;
                lifts.push((s, u));
            } else {
                cols.pop();
            }
        }
    }
    lifts
}

/// Module map `⊕ e_{s_k} A → M` sending the idempotent of summand `k` to the
/// given slot element.
pub fn map_from_projectives(m: &FDModule, gens: &[(usize, Vector)]) -> (FDModule, ModMorphism) {
    let alg = m.algebra().clone();
    let f = m.field();
    let parts: Vec<FDModule> = gens.iter().map(|(s, _)| FDModule::projective(alg.clone(), *s)).collect();
    let p = FDModule::direct_sum_all(&alg, &parts);
    let blocks = (0..alg.num_slots())
        .map(|j| {
            let mut cols = Vec::new();
            for (s, v) in gens {
                for x in alg.corner_basis(*s, j) {
                    cols.push(m.action(x).apply(v));
                }
            }
            Mat::from_columns(f, m.dims()[j], &cols)
        })
        .collect();
    let map = ModMorphism::new_unchecked(p.clone(), m.clone(), blocks);
    (p, map)
}

pub fn projective_cover(m: &FDModule) -> ProjectiveCover {
    let lifts = top_lifts(m);
    let (p, map) = map_from_projectives(m, &lifts);
    ProjectiveCover {
        summand_slots: lifts.iter().map(|(s, _)| *s).collect(),
        generators: lifts.into_iter().map(|(_, v)| v).collect(),
        module: p,
        map,
    }
}

/// `dim Ext^1(M, N)` from the epimorphism `π: P → M` with `P` projective.
pub fn ext1_from_epi(pi: &ModMorphism, n: &FDModule) -> usize {
    let f = n.field();
    let (omega, incl) = pi.kernel();
    let hom_omega = hom_basis(&omega, n).expect("same algebra");
    let hom_p = hom_basis(pi.source(), n).expect("same algebra");
    if hom_omega.is_empty() {
        return 0;
    }
    let len = hom_omega[0].flatten().len();
    let restricted: Vec<Vector> = hom_p.iter().map(|phi| phi.compose(&incl).flatten()).collect();
    hom_omega.len() - rank_of(f, len, &restricted)
}

pub fn ext1(m: &FDModule, n: &FDModule) -> usize {
    ext1_from_epi(&projective_cover(m).map, n)
}

/// `Ext^1` computed from a deliberately non-minimal presentation: the cover
/// padded with an extra copy of `e_slot A` mapping to zero.
pub fn ext1_padded(m: &FDModule, n: &FDModule, slot: usize) -> usize {
    let cover = projective_cover(m);
    let mut gens: Vec<(usize, Vector)> = cover.summand_slots.iter().cloned().zip(cover.generators).collect();
    gens.push((slot, vec![Scalar::zero(); m.dims()[slot]]));
    let (_, map) = map_from_projectives(m, &gens);
    ext1_from_epi(&map, n)
}

/// Middle terms `B` of the extensions `0 → N → B → M → 0` for a basis of
/// `Ext^1(M, N)`, built as pushouts of the projective cover of `M`.
pub fn extension_middle_terms(m: &FDModule, n: &FDModule) -> Vec<FDModule> {
    let f = n.field();
    let pi = projective_cover(m).map;
    let (omega, incl) = pi.kernel();
    let hom_omega = hom_basis(&omega, n).expect("same algebra");
    if hom_omega.is_empty() {
        return Vec::new();
    }
    let len = hom_omega[0].flatten().len();
    let mut vecs: Vec<Vector> =
        hom_basis(pi.source(), n).expect("same algebra").iter().map(|phi| phi.compose(&incl).flatten()).collect();
    let restricted = greedy_independent(f, len, &vecs).len();
    let first = vecs.len();
    vecs.extend(hom_omega.iter().map(ModMorphism::flatten));
    let chosen = greedy_independent(f, len, &vecs);
    let reps: Vec<usize> = chosen.into_iter().filter(|&k| k >= first).map(|k| k - first).collect();
    debug_assert_eq!(reps.len(), hom_omega.len() - restricted);
    let sum = pi.source().direct_sum(n);
    reps.into_iter()
        .map(|k| {
            let xi = &hom_omega[k];
            let blocks = (0..omega.dims().len()).map(|s| incl.block(s).vstack(&xi.block(s).neg())).collect();
            let glue = ModMorphism::new_unchecked(omega.clone(), sum.clone(), blocks);
            glue.cokernel().0
        })
        .collect()
}

/// Largest submodule supported on the slots flagged in `support`.
pub fn trace(n: &FDModule, support: &[bool]) -> (FDModule, ModMorphism) {
    let f = n.field();
    let alg = n.algebra().clone();
    let slots = alg.num_slots();
    let mut spans: Vec<Mat> = (0..slots)
        .map(|i| if support[i] { Mat::identity(f, n.dims()[i]) } else { Mat::zeros(f, n.dims()[i], 0) })
        .collect();
    let max_rounds = n.dim() + 1;
    for _ in 0..max_rounds {
        let mut changed = false;
        for i in 0..slots {
            if spans[i].cols() == 0 {
                continue;
            }
            // keep x ∈ U_i with x·b ∈ U_j for every b: i → j
            let mut constraints: Vec<Mat> = Vec::new();
            for b in alg.radical_basis() {
                let (s, t) = alg.slot_of(b);
                if s != i {
                    continue;
                }
                let img = n.action(b).mul(&spans[i]);
                let ann = spans[t].left_nullspace();
                if ann.is_empty() {
                    continue;
                }
                let a = Mat::from_rows(f, ann.len(), n.dims()[t], ann);
                constraints.push(a.mul(&img));
            }
            if constraints.is_empty() {
                continue;
            }
            let stacked = constraints.iter().skip(1).fold(constraints[0].clone(), |acc, c| acc.vstack(c));
            let ns = stacked.nullspace();
            if ns.len() < spans[i].cols() {
                let cols: Vec<Vector> = ns.iter().map(|c| spans[i].apply(c)).collect();
                spans[i] = Mat::from_columns(f, n.dims()[i], &cols);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    n.submodule(&spans).expect("trace is a submodule")
}

/// Smallest submodule whose quotient is supported on the flagged slots.
pub fn reject(m: &FDModule, support: &[bool]) -> (FDModule, ModMorphism) {
    let gens: Vec<(usize, Vector)> = (0..m.dims().len())
        .filter(|&i| !support[i])
        .flat_map(|i| (0..m.dims()[i]).map(move |k| (i, k)))
        .map(|(i, k)| (i, m.slot_unit(i, k)))
        .collect();
    m.generated_submodule(&gens)
}

/// Given a basis of a finite-dimensional algebra of `n x n` matrices that
/// contains the identity in its span, decides whether it is local with
/// residue field `k`; if so returns a basis of its radical.
pub fn local_radical(field: Field, n: usize, basis: &[Mat]) -> Option<Vec<Mat>> {
    if n == 0 {
        return None;
    }
    let id = Mat::identity(field, n);
    let mut nil = Vec::new();
    for phi in basis {
        let lambda = unique_eigenvalue(field, phi)?;
        let d = phi.sub(&id.scale(&lambda));
        if !d.is_nilpotent() {
            return None;
        }
        nil.push(d);
    }
    let flat: Vec<Vector> = nil.iter().map(|m| m.entries().to_vec()).collect();
    let keep = greedy_independent(field, n * n, &flat);
    let rad: Vec<Mat> = keep.iter().map(|&k| nil[k].clone()).collect();
    if rad.len() + 1 != basis.len() {
        return None;
    }
    // the span must be a nilpotent ideal: R^n = 0
    let mut power = rad.clone();
    for _ in 0..n {
        let mut next: Vec<Mat> = Vec::new();
        for a in &power {
            for b in &rad {
                let p = a.mul(b);
                if !p.is_zero() {
                    next.push(p);
                }
            }
        }
        if next.is_empty() {
            return Some(rad);
        }
        let flat: Vec<Vector> = next.iter().map(|m| m.entries().to_vec()).collect();
        power = greedy_independent(field, n * n, &flat).into_iter().map(|k| next[k].clone()).collect();
    }
    None
}

/// The eigenvalue `λ` with `φ − λ` nilpotent, when `φ` has a single one in `k`.
fn unique_eigenvalue(field: Field, phi: &Mat) -> Option<Scalar> {
    let n = phi.rows();
    let trace = (0..n).fold(field.zero(), |acc, i| field.add(&acc, phi.get(i, i)));
    let nk = field.from_i64(n as i64);
    if !nk.is_zero() {
        return Some(field.div(&trace, &nk));
    }
    let p = field.order()?;
    let id = Mat::identity(field, n);
    (0..p as i64)
        .map(|l| field.from_i64(l))
        .find(|l| phi.sub(&id.scale(l)).is_nilpotent())
}

pub fn is_indecomposable(m: &FDModule) -> bool {
    if m.is_zero() {
        return false;
    }
    let end: Vec<Mat> = hom_basis(m, m).expect("same algebra").iter().map(ModMorphism::global_matrix).collect();
    local_radical(m.field(), m.dim(), &end).is_some()
}

/// Decides `M ≅ N` by testing seeded random elements of `Hom(M, N)` for
/// invertibility. Over `Q` and large prime fields a generic element of a
/// space containing an isomorphism is invertible; the fixed seed keeps the
/// answer reproducible.
pub fn is_isomorphic(m: &FDModule, n: &FDModule) -> bool {
    if m.dims() != n.dims() {
        return false;
    }
    if m.is_zero() {
        return true;
    }
    let homs = hom_basis(m, n).expect("same algebra");
    if homs.is_empty() {
        return false;
    }
    let f = m.field();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for h in &homs {
        if h.is_iso() {
            return true;
        }
    }
    for _ in 0..48 {
        let combo = homs
            .iter()
            .map(|h| (h, f.random(&mut rng)))
            .fold(ModMorphism::zero(m, n), |acc, (h, c)| acc.add(&h.scale(&c)));
        if combo.is_iso() {
            return true;
        }
    }
    false
}

/// A finite list of small modules: indecomposable projectives, simples,
/// radical powers and radical quotients of projectives, and their quotients
/// by socle-like submodules. Deduplicated up to isomorphism and filtered to
/// indecomposables.
pub fn small_indecomposables(alg: &Arc<FDAlgebra>) -> Vec<FDModule> {
    let mut cands: Vec<FDModule> = Vec::new();
    for i in 0..alg.num_slots() {
        let p = FDModule::projective(alg.clone(), i);
        cands.push(FDModule::simple(alg.clone(), i));
        cands.push(p.clone());
        let mut power = radical_power_spans(&p, &p.dims().iter().map(|&d| Mat::identity(alg.field(), d)).collect::<Vec<_>>());
        while power.iter().any(|m| m.cols() > 0) {
            if let Ok((sub, _)) = p.submodule(&power) {
                cands.push(sub);
            }
            if let Ok((q, _)) = p.quotient(&power) {
                cands.push(q);
            }
            power = radical_power_spans(&p, &power);
        }
        for s in 0..p.dims().len() {
            for k in 0..p.dims()[s] {
                let (_, incl) = p.generated_submodule(&[(s, p.slot_unit(s, k))]);
                if let Ok((q, _)) = p.quotient(incl.blocks()) {
                    cands.push(q);
                }
            }
        }
    }
    let mut out: Vec<FDModule> = Vec::new();
    for c in cands {
        if !is_indecomposable(&c) || out.iter().any(|o| is_isomorphic(o, &c)) {
            continue;
        }
        out.push(c);
    }
    out
}

/// Given a submodule of `m` as per-slot spans, the spans of its product
/// with the radical.
fn radical_power_spans(m: &FDModule, spans: &[Mat]) -> Vec<Mat> {
    let f = m.field();
    let alg = m.algebra();
    let mut cols: Vec<Vec<Vector>> = vec![Vec::new(); alg.num_slots()];
    for b in alg.radical_basis() {
        let (i, j) = alg.slot_of(b);
        cols[j].extend(m.action(b).mul(&spans[i]).columns());
    }
    cols.iter()
        .enumerate()
        .map(|(j, c)| {
            let keep = greedy_independent(f, m.dims()[j], c);
            Mat::from_columns(f, m.dims()[j], &keep.iter().map(|&k| c[k].clone()).collect::<Vec<_>>())
        })
        .collect()
}

/// A quotient of a sum of one or two random projectives by a submodule
/// generated by up to two random elements.
pub fn random_module<R: rand::Rng + ?Sized>(alg: &Arc<FDAlgebra>, rng: &mut R) -> FDModule {
    let f = alg.field();
    let n = alg.num_slots();
    let parts: Vec<FDModule> = (0..rng.gen_range(1..=2)).map(|_| FDModule::projective(alg.clone(), rng.gen_range(0..n))).collect();
    let p = FDModule::direct_sum_all(alg, &parts);
    let gens: Vec<(usize, Vector)> = (0..rng.gen_range(0..=2))
        .filter_map(|_| {
            let s = rng.gen_range(0..n);
            (p.dims()[s] > 0).then(|| (s, (0..p.dims()[s]).map(|_| f.random(rng)).collect()))
        })
        .collect();
    let (_, incl) = p.generated_submodule(&gens);
    incl.cokernel().0
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
    fn ext_between_a2_modules() {
        let alg = a2();
        let p1 = FDModule::projective(alg.clone(), 0);
        let p2 = FDModule::projective(alg.clone(), 1);
        let s1 = FDModule::simple(alg.clone(), 0);
        assert_eq!(ext1(&s1, &p2), 1);
        assert_eq!(ext1(&s1, &s1), 0);
        assert_eq!(ext1(&p1, &s1), 0);
        assert_eq!(ext1_padded(&s1, &p2, 0), 1);
        assert_eq!(ext1_padded(&s1, &p2, 1), 1);
    }

    #[test]
    fn covers_and_factors() {
        let alg = a2();
        let p1 = FDModule::projective(alg.clone(), 0);
        let cover = projective_cover(&p1);
        assert!(cover.map.is_iso());
        assert_eq!(cover.summand_slots, vec![0]);
        let z = FDModule::zero(alg.clone());
        assert!(projective_cover(&z).module.is_zero());
        assert_eq!(composition_factors(&p1), vec!["S[1]", "S[2]"]);
        assert_eq!(radical_layers(&p1), vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn trace_and_reject_on_projective() {
        let alg = a2();
        let p1 = FDModule::projective(alg.clone(), 0);
        // slot 2 is the socle of P1, slot 1 is its top
        assert_eq!(trace(&p1, &[false, true]).0.dims(), &[0, 1]);
        assert_eq!(trace(&p1, &[true, false]).0.dims(), &[0, 0]);
        assert_eq!(reject(&p1, &[true, false]).0.dims(), &[0, 1]);
        assert_eq!(reject(&p1, &[false, true]).0.dims(), &[1, 1]);
    }

    #[test]
    fn a2_has_three_indecomposables() {
        let inds = small_indecomposables(&a2());
        assert_eq!(inds.len(), 3);
    }

    #[test]
    fn direct_sum_is_decomposable() {
        let alg = a2();
        let s = FDModule::simple(alg.clone(), 0).direct_sum(&FDModule::simple(alg.clone(), 1));
        assert!(!is_indecomposable(&s));
        assert!(is_indecomposable(&FDModule::projective(alg, 0)));
    }
}
