//! Finite-dimensional basic algebras given by structure constants, and their
//! construction from bound quivers.
//!
//! Every algebra carries a complete set of orthogonal idempotents `e_1..e_n`
//! that are themselves basis elements. Every other basis element lies in a
//! single corner `e_i A e_j` and in the radical. This is the shape of a path
//! algebra with an admissible ideal, of `End(G_1 ⊕ ... ⊕ G_n)` for pairwise
//! non-isomorphic indecomposable `G_i`, and of every idempotent corner of
//! either.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{bad_input, Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{Mat, Vector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Quiver> {
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(bad_input(format!("duplicate vertex {v:?}")));
            }
        }
        let mut names = HashMap::new();
        let mut out = Vec::new();
        for (name, s, t) in arrows {
            let source = *index.get(&s).ok_or_else(|| bad_input(format!("arrow {name:?}: unknown source {s:?}")))?;
            let target = *index.get(&t).ok_or_else(|| bad_input(format!("arrow {name:?}: unknown target {t:?}")))?;
            if names.insert(name.clone(), out.len()).is_some() || index.contains_key(&name) {
                return Err(bad_input(format!("duplicate arrow name {name:?}")));
            }
            out.push(Arrow { name, source, target });
        }
        Ok(Quiver { vertices, arrows: out })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source })
                .collect(),
        }
    }
}

/// A linear combination of paths, each path listed in traversal order
/// (first arrow first).
#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    pub terms: Vec<(Scalar, Vec<usize>)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Path {
    source: usize,
    target: usize,
    arrows: Vec<usize>,
}

impl Path {
    fn sort_key(&self) -> (usize, Vec<usize>, usize) {
        (self.arrows.len(), self.arrows.clone(), self.source)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FDAlgebra {
    field: Field,
    labels: Vec<String>,
    slot_labels: Vec<String>,
    /// `table[a][b]` is the coordinate vector of `b_a * b_b`.
    table: Vec<Vec<Vector>>,
    /// `slots[b] = (i, j)` means `b ∈ e_i A e_j`.
    slots: Vec<(usize, usize)>,
    idempotents: Vec<usize>,
    /// Arrow words of the basis elements, for algebras built from a quiver.
    paths: Option<Vec<Vec<usize>>>,
}

impl FDAlgebra {
    /// Raw constructor from structure constants. `idempotents[i]` is the basis
    /// index of `e_i`.
    pub fn from_structure_constants(
        field: Field,
        labels: Vec<String>,
        table: Vec<Vec<Vector>>,
        idempotents: Vec<usize>,
        slot_labels: Vec<String>,
    ) -> Result<FDAlgebra> {
        let dim = labels.len();
        if table.len() != dim || table.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim)) {
            return Err(Error::DimMismatch(format!("structure constant table must be {dim}x{dim}x{dim}")));
        }
        if slot_labels.len() != idempotents.len() {
            return Err(bad_input("one label per idempotent required"));
        }
        if idempotents.iter().any(|&e| e >= dim) {
            return Err(bad_input("idempotent index out of range"));
        }
        let table: Vec<Vec<Vector>> = table
            .into_iter()
            .map(|r| r.into_iter().map(|v| v.into_iter().map(|x| field.reduce(x)).collect()).collect())
            .collect();
        let n = idempotents.len();
        let mut slots = Vec::with_capacity(dim);
        for b in 0..dim {
            let left: Vec<usize> = (0..n).filter(|&i| !table[idempotents[i]][b].iter().all(Zero::is_zero)).collect();
            let right: Vec<usize> = (0..n).filter(|&j| !table[b][idempotents[j]].iter().all(Zero::is_zero)).collect();
            if left.len() != 1 || right.len() != 1 {
                return Err(bad_input(format!("basis element {:?} is not in a single corner e_i A e_j", labels[b])));
            }
            slots.push((left[0], right[0]));
        }
        let alg = FDAlgebra { field, labels, slot_labels, table, slots, idempotents, paths: None };
        alg.validate()?;
        Ok(alg)
    }

    fn unit_vector(&self, b: usize) -> Vector {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[b] = Scalar::one();
        v
    }

    /// Checks associativity, idempotent relations, corner homogeneity, and
    /// that the non-idempotent basis spans a nilpotent ideal.
    pub fn validate(&self) -> Result<()> {
        let dim = self.dim();
        let n = self.idempotents.len();
        for i in 0..n {
            let ei = self.idempotents[i];
            if self.slots[ei] != (i, i) {
                return Err(bad_input(format!("idempotent {} sits in the wrong corner", self.slot_labels[i])));
            }
            for j in 0..n {
                let prod = &self.table[ei][self.idempotents[j]];
                let expect = if i == j { self.unit_vector(ei) } else { vec![Scalar::zero(); dim] };
                if *prod != expect {
                    return Err(bad_input("idempotents are not orthogonal"));
                }
            }
        }
        for b in 0..dim {
            let (i, j) = self.slots[b];
            if self.table[self.idempotents[i]][b] != self.unit_vector(b)
                || self.table[b][self.idempotents[j]] != self.unit_vector(b)
            {
                return Err(bad_input(format!("idempotents do not act as units on {:?}", self.labels[b])));
            }
        }
        for a in 0..dim {
            for b in 0..dim {
                let ab = &self.table[a][b];
                let (sa, ta) = self.slots[a];
                let (sb, tb) = self.slots[b];
                for (k, c) in ab.iter().enumerate() {
                    if !c.is_zero() && (ta != sb || self.slots[k] != (sa, tb)) {
                        return Err(bad_input("product leaves its corner"));
                    }
                }
                for c in 0..dim {
                    let left = self.mul(ab, &self.unit_vector(c));
                    let right = self.mul(&self.unit_vector(a), &self.table[b][c]);
                    if left != right {
                        return Err(bad_input(format!(
                            "multiplication not associative on ({}, {}, {})",
                            self.labels[a], self.labels[b], self.labels[c]
                        )));
                    }
                }
            }
        }
        // radical: products of radical elements have no idempotent component, and J^dim = 0
        let radical = self.radical_basis();
        for &a in &radical {
            for &b in &radical {
                if self.idempotents.iter().any(|&e| !self.table[a][b][e].is_zero()) {
                    return Err(bad_input("non-idempotent basis does not span an ideal (algebra not basic or corner not local)"));
                }
            }
        }
        let mut power: Vec<Vector> = radical.iter().map(|&b| self.unit_vector(b)).collect();
        for _ in 0..=dim {
            if power.is_empty() {
                return Ok(());
            }
            let mut next = Vec::new();
            for v in &power {
                for &b in &radical {
                    let p = self.mul(v, &self.unit_vector(b));
                    if !p.iter().all(Zero::is_zero) {
                        next.push(p);
                    }
                }
            }
            power = if next.is_empty() {
                next
            } else {
                let m = Mat::from_columns(self.field, dim, &next);
                m.independent_columns().into_iter().map(|c| next[c].clone()).collect()
            };
        }
        Err(bad_input("radical is not nilpotent"))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn num_slots(&self) -> usize {
        self.idempotents.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn slot_labels(&self) -> &[String] {
        &self.slot_labels
    }

    pub fn slot_label(&self, i: usize) -> &str {
        &self.slot_labels[i]
    }

    pub fn slot_of(&self, b: usize) -> (usize, usize) {
        self.slots[b]
    }

    pub fn idempotent(&self, i: usize) -> usize {
        self.idempotents[i]
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    pub fn is_idempotent_basis(&self, b: usize) -> bool {
        self.idempotents.contains(&b)
    }

    /// Basis indices of the corner `e_i A e_j`, ascending.
    pub fn corner_basis(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&b| self.slots[b] == (i, j)).collect()
    }

    pub fn radical_basis(&self) -> Vec<usize> {
        (0..self.dim()).filter(|b| !self.idempotents.contains(b)).collect()
    }

    pub fn product_of_basis(&self, a: usize, b: usize) -> &Vector {
        &self.table[a][b]
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let f = self.field;
        let mut out = vec![Scalar::zero(); self.dim()];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let c = f.mul(xa, yb);
                for (k, t) in self.table[a][b].iter().enumerate() {
                    if !t.is_zero() {
                        out[k] = f.add(&out[k], &f.mul(&c, t));
                    }
                }
            }
        }
        out
    }

    /// Arrow word of each basis element when the algebra came from a quiver.
    pub fn basis_paths(&self) -> Option<&[Vec<usize>]> {
        self.paths.as_deref()
    }

    pub fn basis_vector(&self, b: usize) -> Vector {
        self.unit_vector(b)
    }

    /// The opposite algebra on the same basis: `a ·op b = b · a`.
    pub fn opposite(&self) -> FDAlgebra {
        let dim = self.dim();
        let table = (0..dim).map(|a| (0..dim).map(|b| self.table[b][a].clone()).collect()).collect();
        FDAlgebra {
            field: self.field,
            labels: self.labels.clone(),
            slot_labels: self.slot_labels.clone(),
            table,
            slots: self.slots.iter().map(|&(i, j)| (j, i)).collect(),
            idempotents: self.idempotents.clone(),
            paths: self
                .paths
                .as_ref()
                .map(|ps| ps.iter().map(|p| p.iter().rev().cloned().collect()).collect()),
        }
    }

    /// The corner algebra `eAe` for `e` the sum of the idempotents in `keep`
    /// (listed in the order they become slots). Also returns, for each basis
    /// element of the corner, its index in `self`.
    pub fn corner(&self, keep: &[usize]) -> (FDAlgebra, Vec<usize>) {
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(k, &s)| (s, k)).collect();
        let basis: Vec<usize> = (0..self.dim())
            .filter(|&b| {
                let (i, j) = self.slots[b];
                pos.contains_key(&i) && pos.contains_key(&j)
            })
            .collect();
        let back: HashMap<usize, usize> = basis.iter().enumerate().map(|(k, &b)| (b, k)).collect();
        let table = basis
            .iter()
            .map(|&a| {
                basis
                    .iter()
                    .map(|&b| basis.iter().map(|&c| self.table[a][b][c].clone()).collect())
                    .collect()
            })
            .collect();
        let alg = FDAlgebra {
            field: self.field,
            labels: basis.iter().map(|&b| self.labels[b].clone()).collect(),
            slot_labels: keep.iter().map(|&s| self.slot_labels[s].clone()).collect(),
            table,
            slots: basis.iter().map(|&b| (pos[&self.slots[b].0], pos[&self.slots[b].1])).collect(),
            idempotents: keep.iter().map(|&s| back[&self.idempotents[s]]).collect(),
            paths: None,
        };
        (alg, basis)
    }

    /// Whether the structure constants agree after relabelling basis and
    /// slots through the given maps (`basis_map[b]` is the image of `b`).
    pub fn is_isomorphic_via(&self, other: &FDAlgebra, basis_map: &[usize]) -> bool {
        if self.dim() != other.dim() || basis_map.len() != self.dim() {
            return false;
        }
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                for c in 0..self.dim() {
                    if self.table[a][b][c] != other.table[basis_map[a]][basis_map[b]][basis_map[c]] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Corner dimension matrix `dims[i][j] = dim e_i A e_j`.
    pub fn cartan_matrix(&self) -> Vec<Vec<usize>> {
        let n = self.num_slots();
        (0..n).map(|i| (0..n).map(|j| self.corner_basis(i, j).len()).collect()).collect()
    }
}

/// Builds `kQ / I` with `I` generated by `relations`, assuming every path
/// longer than `path_bound` lies in `I`; the assumption is verified.
///
/// Basis: the paths of length at most `path_bound` that are not leading terms
/// of the ideal, ordered by length, then lexicographically by arrow index.
pub fn build_algebra(field: Field, quiver: &Quiver, relations: &[Relation], path_bound: usize) -> Result<FDAlgebra> {
    for (k, r) in relations.iter().enumerate() {
        let mut ends = None;
        for (_, p) in &r.terms {
            if p.is_empty() {
                return Err(bad_input(format!("relation {k}: trivial paths are not allowed in relations")));
            }
            for w in p.windows(2) {
                if quiver.arrows[w[0]].target != quiver.arrows[w[1]].source {
                    return Err(bad_input(format!("relation {k}: path is not composable")));
                }
            }
            let se = (quiver.arrows[p[0]].source, quiver.arrows[*p.last().unwrap()].target);
            if *ends.get_or_insert(se) != se {
                return Err(bad_input(format!("relation {k}: terms have different endpoints")));
            }
        }
    }

    let check_len = path_bound + 1;
    let paths = enumerate_paths(quiver, check_len);
    let long: Vec<&Path> = paths.iter().filter(|p| p.arrows.len() == check_len).collect();
    if !long.is_empty() {
        let reducer = IdealReducer::new(field, quiver, relations, &paths, check_len);
        for p in long {
            let v = reducer.reduce(reducer.coords_of(p));
            if !v.iter().all(Zero::is_zero) {
                let names: Vec<&str> = p.arrows.iter().map(|&a| quiver.arrows[a].name.as_str()).collect();
                return Err(Error::NotFiniteDimensional(format!(
                    "path {} of length {check_len} survives modulo the relations",
                    names.join("*")
                )));
            }
        }
    }

    let paths: Vec<Path> = paths.into_iter().filter(|p| p.arrows.len() <= path_bound).collect();
    let reducer = IdealReducer::new(field, quiver, relations, &paths, path_bound);
    let normal: Vec<usize> = (0..paths.len()).filter(|&k| !reducer.is_leading(k)).collect();
    for (v, _) in quiver.vertices.iter().enumerate() {
        if !normal.iter().any(|&k| paths[k].arrows.is_empty() && paths[k].source == v) {
            return Err(bad_input("relations kill a vertex idempotent; ideal is not admissible"));
        }
    }
    let coord_of: HashMap<usize, usize> = normal.iter().enumerate().map(|(c, &k)| (k, c)).collect();
    let dim = normal.len();
    let mut table = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
    for (a, &pa) in normal.iter().enumerate() {
        for (b, &pb) in normal.iter().enumerate() {
            let (x, y) = (&paths[pa], &paths[pb]);
            if x.target != y.source {
                continue;
            }
            let mut arrows = x.arrows.clone();
            arrows.extend(&y.arrows);
            if arrows.len() > path_bound {
                continue;
            }
            let prod = Path { source: x.source, target: y.target, arrows };
            let v = reducer.reduce(reducer.coords_of(&prod));
            for (k, c) in v.into_iter().enumerate() {
                if !c.is_zero() {
                    table[a][b][coord_of[&k]] = c;
                }
            }
        }
    }
    let labels = normal
        .iter()
        .map(|&k| {
            let p = &paths[k];
            if p.arrows.is_empty() {
                format!("e[{}]", quiver.vertices[p.source])
            } else {
                p.arrows.iter().map(|&a| quiver.arrows[a].name.as_str()).collect::<Vec<_>>().join("*")
            }
        })
        .collect();
    let idempotents = (0..quiver.vertices.len())
        .map(|v| normal.iter().position(|&k| paths[k].arrows.is_empty() && paths[k].source == v).unwrap())
        .collect();
    let mut alg = FDAlgebra::from_structure_constants(field, labels, table, idempotents, quiver.vertices.clone())?;
    alg.paths = Some(normal.iter().map(|&k| paths[k].arrows.clone()).collect());
    Ok(alg)
}

fn enumerate_paths(quiver: &Quiver, max_len: usize) -> Vec<Path> {
    let mut all: Vec<Path> = (0..quiver.vertices.len())
        .map(|v| Path { source: v, target: v, arrows: vec![] })
        .collect();
    let mut frontier = all.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            for (ai, a) in quiver.arrows.iter().enumerate() {
                if a.source == p.target {
                    let mut arrows = p.arrows.clone();
                    arrows.push(ai);
                    next.push(Path { source: p.source, target: a.target, arrows });
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all.sort_by_key(Path::sort_key);
    all
}

/// Row-reduced spanning set of the two-sided ideal, truncated at a path
/// length, with columns ordered so that larger paths are eliminated first.
struct IdealReducer {
    field: Field,
    index: HashMap<Path, usize>,
    /// (pivot path index, row vector in path coordinates)
    rows: Vec<(usize, Vector)>,
    npaths: usize,
}

impl IdealReducer {
    fn new(field: Field, quiver: &Quiver, relations: &[Relation], paths: &[Path], max_len: usize) -> IdealReducer {
        let index: HashMap<Path, usize> = paths.iter().cloned().enumerate().map(|(k, p)| (p, k)).collect();
        let n = paths.len();
        let mut gens: Vec<Vector> = Vec::new();
        for r in relations {
            let (s, t) = {
                let p = &r.terms[0].1;
                (quiver.arrows[p[0]].source, quiver.arrows[*p.last().unwrap()].target)
            };
            let min_len = r.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0);
            for u in paths.iter().filter(|u| u.target == s) {
                for v in paths.iter().filter(|v| v.source == t) {
                    if u.arrows.len() + min_len + v.arrows.len() > max_len {
                        continue;
                    }
                    let mut vec = vec![Scalar::zero(); n];
                    for (c, p) in &r.terms {
                        let len = u.arrows.len() + p.len() + v.arrows.len();
                        if len > max_len {
                            continue;
                        }
                        let mut arrows = u.arrows.clone();
                        arrows.extend(p);
                        arrows.extend(&v.arrows);
                        let k = index[&Path { source: u.source, target: v.target, arrows }];
                        vec[k] = field.add(&vec[k], c);
                    }
                    if !vec.iter().all(Zero::is_zero) {
                        gens.push(vec);
                    }
                }
            }
        }
        let mut rows = Vec::new();
        if !gens.is_empty() {
            // reverse column order so pivots land on the largest paths
            let reversed: Vec<Vector> = gens.iter().map(|g| g.iter().rev().cloned().collect()).collect();
            let m = Mat::from_rows(field, reversed.len(), n, reversed);
            let (r, pivots) = m.rref();
            for (row, &pc) in pivots.iter().enumerate() {
                let v: Vector = r.row(row).into_iter().rev().collect();
                rows.push((n - 1 - pc, v));
            }
        }
        IdealReducer { field, index, rows, npaths: n }
    }

    fn coords_of(&self, p: &Path) -> Vector {
        let mut v = vec![Scalar::zero(); self.npaths];
        v[self.index[p]] = Scalar::one();
        v
    }

    fn is_leading(&self, k: usize) -> bool {
        self.rows.iter().any(|(p, _)| *p == k)
    }

    fn reduce(&self, mut v: Vector) -> Vector {
        let f = self.field;
        for (p, row) in &self.rows {
            let c = v[*p].clone();
            if c.is_zero() {
                continue;
            }
            for (k, r) in row.iter().enumerate() {
                if !r.is_zero() {
                    v[k] = f.sub(&v[k], &f.mul(&c, r));
                }
            }
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f101() -> Field {
        Field::prime(101).unwrap()
    }

    fn a2() -> Quiver {
        Quiver::new(vec!["1".into(), "2".into()], vec![("a".into(), "1".into(), "2".into())]).unwrap()
    }

    pub(crate) fn beilinson() -> (Quiver, Vec<Relation>) {
        let q = Quiver::new(
            vec!["v0".into(), "v1".into(), "v2".into()],
            vec![
                ("x0".into(), "v0".into(), "v1".into()),
                ("x1".into(), "v0".into(), "v1".into()),
                ("y0".into(), "v1".into(), "v2".into()),
                ("y1".into(), "v1".into(), "v2".into()),
            ],
        )
        .unwrap();
        let f = f101();
        // y0∘x1 − y1∘x0, written in traversal order
        let rel = Relation { terms: vec![(f.from_i64(1), vec![1, 2]), (f.from_i64(-1), vec![0, 3])] };
        (q, vec![rel])
    }

    #[test]
    fn a2_path_algebra_has_dimension_three() {
        let alg = build_algebra(f101(), &a2(), &[], 2).unwrap();
        // e1, e2, a
        assert_eq!(alg.dim(), 3);
        assert_eq!(alg.labels(), &["e[1]", "e[2]", "a"]);
        assert_eq!(alg.slot_of(2), (0, 1));
    }

    #[test]
    fn single_vertex_is_base_field() {
        let q = Quiver::new(vec!["*".into()], vec![]).unwrap();
        let alg = build_algebra(Field::RATIONALS, &q, &[], 0).unwrap();
        assert_eq!(alg.dim(), 1);
        assert!(alg.product_of_basis(0, 0)[0].is_one());
    }

    #[test]
    fn beilinson_window_has_dimension_ten() {
        let (q, rels) = beilinson();
        let alg = build_algebra(f101(), &q, &rels, 2).unwrap();
        assert_eq!(alg.dim(), 10);
        assert_eq!(alg.corner_basis(0, 2).len(), 3);
        assert_eq!(alg.cartan_matrix(), vec![vec![1, 2, 3], vec![0, 1, 2], vec![0, 0, 1]]);
    }

    #[test]
    fn loop_without_relations_is_not_fd() {
        let q = Quiver::new(vec!["v".into()], vec![("t".into(), "v".into(), "v".into())]).unwrap();
        let err = build_algebra(f101(), &q, &[], 3).unwrap_err();
        assert_eq!(err.code(), "E_NOT_FD");
        // t^2 = 0 makes it 2-dimensional
        let rel = Relation { terms: vec![(f101().one(), vec![0, 0])] };
        assert_eq!(build_algebra(f101(), &q, &[rel], 1).unwrap().dim(), 2);
    }

    #[test]
    fn ill_typed_relations_rejected() {
        let (q, _) = beilinson();
        let mixed = Relation { terms: vec![(f101().one(), vec![0]), (f101().one(), vec![0, 2])] };
        assert_eq!(build_algebra(f101(), &q, &[mixed], 2).unwrap_err().code(), "E_BAD_INPUT");
        let broken = Relation { terms: vec![(f101().one(), vec![2, 0])] };
        assert_eq!(build_algebra(f101(), &q, &[broken], 2).unwrap_err().code(), "E_BAD_INPUT");
    }

    #[test]
    fn opposite_is_involutive_and_corner_restricts() {
        let (q, rels) = beilinson();
        let alg = build_algebra(f101(), &q, &rels, 2).unwrap();
        assert_eq!(alg.opposite().opposite(), alg);
        let (kron, _) = alg.corner(&[0, 1]);
        assert_eq!(kron.dim(), 4);
        kron.validate().unwrap();
    }
}
