//! The declarative input format and its resolution into algebraic objects.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{build_algebra, FDAlgebra, Quiver, Relation};
use crate::category::{AddCategory, EMorphism, EObject};
use crate::error::{bad_input, Error, Result};
use crate::exact::{Conflation, ExactStructure, StructureKind};
use crate::field::{Field, Scalar};
use crate::linalg::Mat;
use crate::module::FDModule;

/// A scalar written as a JSON integer or a string such as `"-3/4"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Text(String),
}

impl Num {
    fn value(&self, f: Field, key: &str) -> Result<Scalar> {
        match self {
            Num::Int(v) => Ok(f.from_i64(*v)),
            Num::Text(s) => f.parse(s).map_err(|e| bad_input(format!("{key}: {e}"))),
        }
    }
}

pub type Matrix = Vec<Vec<Num>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDecl {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDecl {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverDecl {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowDecl>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDecl {
    pub coeff: Num,
    /// Arrow names in traversal order.
    pub path: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationDecl {
    pub terms: Vec<TermDecl>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductDecl {
    pub left: String,
    pub right: String,
    pub result: BTreeMap<String, Num>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraDecl {
    Quiver {
        quiver: QuiverDecl,
        #[serde(default)]
        relations: Vec<RelationDecl>,
        path_bound: usize,
    },
    Raw {
        basis: Vec<String>,
        /// Nonzero products of basis elements.
        table: Vec<ProductDecl>,
        idempotents: Vec<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDecl {
    pub dims: BTreeMap<String, usize>,
    /// Arrow matrices (quiver algebras) or basis element actions (raw algebras).
    #[serde(default)]
    pub arrows: BTreeMap<String, Matrix>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexObjectDecl {
    pub vertex: String,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CategoryDecl {
    Modules { generators: Vec<String> },
    Vertices { vertex_objects: Vec<VertexObjectDecl> },
}

/// A morphism between sums of generators: per-vertex matrices of the
/// underlying module map, or a grid of algebra elements keyed by basis label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDecl {
    pub src: Vec<String>,
    pub tgt: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<BTreeMap<String, Matrix>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entries: Option<Vec<Vec<BTreeMap<String, Num>>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConflationDecl {
    pub i: MorphismDecl,
    pub d: MorphismDecl,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureDecl {
    pub kind: String,
    #[serde(default)]
    pub conflations: Vec<ConflationDecl>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Second structure for `compare`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub with: Option<String>,
    /// Sample count for randomized checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskDecl {
    pub op: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<TaskParams>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkbenchInput {
    #[serde(default)]
    pub name: String,
    pub field: FieldDecl,
    pub algebra: AlgebraDecl,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleDecl>,
    pub category: CategoryDecl,
    #[serde(default)]
    pub structures: BTreeMap<String, StructureDecl>,
    #[serde(default)]
    pub tasks: Vec<TaskDecl>,
}

pub const TASK_OPS: &[&str] = &[
    "validate",
    "envelope",
    "compare",
    "dualize",
    "check:embedding",
    "check:ext-coherence",
    "check:dense",
    "check:universal",
    "check:lex",
    "check:gabriel",
    "check:left-abelian",
];

/// Everything an input file resolves to.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub field: Field,
    pub algebra: Arc<FDAlgebra>,
    pub modules: BTreeMap<String, FDModule>,
    pub category: AddCategory,
    pub structures: BTreeMap<String, ExactStructure>,
}

pub fn parse_str(text: &str) -> Result<WorkbenchInput> {
    let input: WorkbenchInput = serde_json::from_str(text)
        .map_err(|e| bad_input(format!("line {} column {}: {e}", e.line(), e.column())))?;
    resolve(&input)?;
    Ok(input)
}

pub fn parse_input(path: &std::path::Path) -> Result<WorkbenchInput> {
    let text = std::fs::read_to_string(path).map_err(|e| bad_input(format!("{}: {e}", path.display())))?;
    parse_str(&text)
}

pub fn to_json(input: &WorkbenchInput) -> String {
    serde_json::to_string_pretty(input).expect("input serializes")
}

fn resolve_field(decl: &FieldDecl) -> Result<Field> {
    match (decl.kind.as_str(), decl.p) {
        ("rationals", None) => Ok(Field::RATIONALS),
        ("prime", Some(p)) => Field::prime(p).map_err(|e| bad_input(format!("field.p: {e}"))),
        ("prime", None) => Err(bad_input("field.p: required for a prime field")),
        (k, _) => Err(bad_input(format!("field.kind: unknown kind {k:?}"))),
    }
}

fn matrix(f: Field, rows: usize, cols: usize, m: &Matrix, key: &str) -> Result<Mat> {
    if m.len() != rows || m.iter().any(|r| r.len() != cols) {
        // an empty list stands for any matrix with no entries
        if rows * cols == 0 && m.iter().all(|r| r.is_empty()) {
            return Ok(Mat::zeros(f, rows, cols));
        }
        return Err(bad_input(format!("{key}: expected a {rows}x{cols} matrix")));
    }
    let mut out = Mat::zeros(f, rows, cols);
    for (r, row) in m.iter().enumerate() {
        for (c, x) in row.iter().enumerate() {
            out.set(r, c, x.value(f, key)?);
        }
    }
    Ok(out)
}

fn resolve_algebra(f: Field, decl: &AlgebraDecl) -> Result<(Arc<FDAlgebra>, Option<Quiver>)> {
    match decl {
        AlgebraDecl::Quiver { quiver, relations, path_bound } => {
            let arrows = quiver.arrows.iter().map(|a| (a.name.clone(), a.src.clone(), a.tgt.clone())).collect();
            let q = Quiver::new(quiver.vertices.clone(), arrows).map_err(|e| bad_input(format!("algebra.quiver: {e}")))?;
            let mut rels = Vec::new();
            for (k, r) in relations.iter().enumerate() {
                let mut terms = Vec::new();
                for (t, term) in r.terms.iter().enumerate() {
                    let key = format!("algebra.relations[{k}].terms[{t}]");
                    let path = term
                        .path
                        .iter()
                        .map(|a| q.arrow_index(a).ok_or_else(|| bad_input(format!("{key}.path: unknown arrow {a:?}"))))
                        .collect::<Result<Vec<_>>>()?;
                    terms.push((term.coeff.value(f, &key)?, path));
                }
                rels.push(Relation { terms });
            }
            let alg = build_algebra(f, &q, &rels, *path_bound)?;
            Ok((Arc::new(alg), Some(q)))
        }
        AlgebraDecl::Raw { basis, table, idempotents } => {
            let index = |l: &str, key: &str| {
                basis.iter().position(|b| b == l).ok_or_else(|| bad_input(format!("{key}: unknown basis element {l:?}")))
            };
            let dim = basis.len();
            let mut t = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
            for (k, p) in table.iter().enumerate() {
                let key = format!("algebra.table[{k}]");
                let (a, b) = (index(&p.left, &key)?, index(&p.right, &key)?);
                for (c, x) in &p.result {
                    t[a][b][index(c, &key)?] = x.value(f, &key)?;
                }
            }
            let idem = idempotents
                .iter()
                .map(|l| index(l, "algebra.idempotents"))
                .collect::<Result<Vec<_>>>()?;
            let alg = FDAlgebra::from_structure_constants(f, basis.clone(), t, idem, idempotents.clone())?;
            Ok((Arc::new(alg), None))
        }
    }
}

fn resolve_module(alg: &Arc<FDAlgebra>, quiver: Option<&Quiver>, name: &str, decl: &ModuleDecl) -> Result<FDModule> {
    let f = alg.field();
    let key = format!("modules.{name}");
    let slots = alg.slot_labels();
    for v in decl.dims.keys() {
        if !slots.contains(v) {
            return Err(bad_input(format!("{key}.dims: unknown vertex {v:?}")));
        }
    }
    let dims: Vec<usize> = slots.iter().map(|v| decl.dims.get(v).copied().unwrap_or(0)).collect();
    match quiver {
        Some(q) => {
            for a in decl.arrows.keys() {
                if q.arrow_index(a).is_none() {
                    return Err(bad_input(format!("{key}.arrows: unknown arrow {a:?}")));
                }
            }
            let mats = q
                .arrows()
                .iter()
                .map(|a| {
                    let (rows, cols) = (dims[a.target], dims[a.source]);
                    match decl.arrows.get(&a.name) {
                        Some(m) => matrix(f, rows, cols, m, &format!("{key}.arrows.{}", a.name)),
                        None => Ok(Mat::zeros(f, rows, cols)),
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            FDModule::from_representation(alg.clone(), dims, &mats).map_err(|e| bad_input(format!("{key}: {e}")))
        }
        None => {
            let labels = alg.labels();
            for a in decl.arrows.keys() {
                if !labels.contains(a) {
                    return Err(bad_input(format!("{key}.arrows: unknown basis element {a:?}")));
                }
            }
            let action = (0..alg.dim())
                .map(|b| {
                    let (i, j) = alg.slot_of(b);
                    if alg.is_idempotent_basis(b) {
                        return Ok(Mat::identity(f, dims[i]));
                    }
                    match decl.arrows.get(&labels[b]) {
                        Some(m) => matrix(f, dims[j], dims[i], m, &format!("{key}.arrows.{}", labels[b])),
                        None => Ok(Mat::zeros(f, dims[j], dims[i])),
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            FDModule::new(alg.clone(), dims, action).map_err(|e| bad_input(format!("{key}: {e}")))
        }
    }
}

fn resolve_object(e: &AddCategory, names: &[String], key: &str) -> Result<EObject> {
    let mut idx = Vec::with_capacity(names.len());
    for n in names {
        idx.push(e.generator_index(n).ok_or_else(|| bad_input(format!("{key}: unknown generator {n:?}")))?);
    }
    if idx.windows(2).any(|w| w[0] > w[1]) {
        return Err(bad_input(format!("{key}: list copies in generator order")));
    }
    Ok(e.object_of_slots(&idx))
}

fn resolve_morphism(e: &AddCategory, decl: &MorphismDecl, key: &str) -> Result<EMorphism> {
    let x = resolve_object(e, &decl.src, &format!("{key}.src"))?;
    let y = resolve_object(e, &decl.tgt, &format!("{key}.tgt"))?;
    let f = e.field();
    match (&decl.blocks, &decl.entries) {
        (Some(blocks), None) => {
            let a = e.ambient().ok_or_else(|| bad_input(format!("{key}.blocks: category has no underlying modules")))?;
            let src = a.apply_object(&x);
            let tgt = a.apply_object(&y);
            let slots = a.algebra.slot_labels();
            for v in blocks.keys() {
                if !slots.contains(v) {
                    return Err(bad_input(format!("{key}.blocks: unknown vertex {v:?}")));
                }
            }
            let mats = slots
                .iter()
                .enumerate()
                .map(|(s, v)| match blocks.get(v) {
                    Some(m) => matrix(f, tgt.dims()[s], src.dims()[s], m, &format!("{key}.blocks.{v}")),
                    None => Ok(Mat::zeros(f, tgt.dims()[s], src.dims()[s])),
                })
                .collect::<Result<Vec<_>>>()?;
            e.morphism_from_module_map(&x, &y, &mats).map_err(|err| bad_input(format!("{key}: {err}")))
        }
        (None, Some(grid)) => {
            let g = e.gamma();
            if grid.len() != y.total() || grid.iter().any(|r| r.len() != x.total()) {
                return Err(bad_input(format!("{key}.entries: expected {} rows of {} entries", y.total(), x.total())));
            }
            let mut entries = Vec::new();
            for (r, row) in grid.iter().enumerate() {
                for (c, cell) in row.iter().enumerate() {
                    let mut v = vec![Scalar::zero(); g.dim()];
                    for (label, coeff) in cell {
                        let k = format!("{key}.entries[{r}][{c}]");
                        let b = g
                            .labels()
                            .iter()
                            .position(|l| l == label)
                            .ok_or_else(|| bad_input(format!("{k}: unknown basis element {label:?}")))?;
                        v[b] = f.add(&v[b], &coeff.value(f, &k)?);
                    }
                    entries.push(v);
                }
            }
            e.morphism(&x, &y, entries).map_err(|err| bad_input(format!("{key}: {err}")))
        }
        _ => Err(bad_input(format!("{key}: give exactly one of blocks or entries"))),
    }
}

pub fn resolve(input: &WorkbenchInput) -> Result<Resolved> {
    let field = resolve_field(&input.field)?;
    let (algebra, quiver) = resolve_algebra(field, &input.algebra)?;
    let mut modules = BTreeMap::new();
    for (name, decl) in &input.modules {
        modules.insert(name.clone(), resolve_module(&algebra, quiver.as_ref(), name, decl)?);
    }
    let category = match &input.category {
        CategoryDecl::Modules { generators } => {
            let mut gens = Vec::new();
            for (k, g) in generators.iter().enumerate() {
                let m = modules
                    .get(g)
                    .ok_or_else(|| bad_input(format!("category.generators[{k}]: unknown module {g:?}")))?;
                gens.push(m.clone());
            }
            AddCategory::from_modules(generators.clone(), gens).map_err(|e| bad_input(format!("category: {e}")))?
        }
        CategoryDecl::Vertices { vertex_objects } => {
            let slots = algebra.slot_labels();
            for (k, v) in vertex_objects.iter().enumerate() {
                if slots.get(k) != Some(&v.vertex) {
                    return Err(bad_input(format!("category.vertex_objects[{k}]: expected vertex {:?}", slots.get(k))));
                }
            }
            if vertex_objects.len() != slots.len() {
                return Err(bad_input("category.vertex_objects: list every vertex once, in order"));
            }
            let labels = vertex_objects.iter().map(|v| v.label.clone()).collect();
            AddCategory::from_vertex_objects(&algebra, labels)?
        }
    };
    let mut structures = BTreeMap::new();
    for (name, decl) in &input.structures {
        let key = format!("structures.{name}");
        let kind = match decl.kind.as_str() {
            "split" => StructureKind::Split,
            "ambient" => StructureKind::Ambient,
            "generated" => StructureKind::Generated,
            k => return Err(bad_input(format!("{key}.kind: unknown kind {k:?}"))),
        };
        if kind == StructureKind::Ambient && category.ambient().is_none() {
            return Err(bad_input(format!("{key}.kind: ambient needs a category of modules")));
        }
        let mut conflations = Vec::new();
        for (k, c) in decl.conflations.iter().enumerate() {
            let i = resolve_morphism(&category, &c.i, &format!("{key}.conflations[{k}].i"))?;
            let d = resolve_morphism(&category, &c.d, &format!("{key}.conflations[{k}].d"))?;
            if i.target() != d.source() {
                return Err(Error::DimMismatch(format!("{key}.conflations[{k}]: i.tgt differs from d.src")));
            }
            conflations.push(Conflation { inflation: i, deflation: d });
        }
        structures.insert(name.clone(), ExactStructure { name: name.clone(), kind, conflations });
    }
    for (k, t) in input.tasks.iter().enumerate() {
        let key = format!("tasks[{k}]");
        if !TASK_OPS.contains(&t.op.as_str()) {
            return Err(bad_input(format!("{key}.op: unknown task {:?}", t.op)));
        }
        let needs_structure = t.op != "validate" || t.structure.is_some();
        if needs_structure {
            let s = t.structure.as_ref().ok_or_else(|| bad_input(format!("{key}.structure: required")))?;
            if !structures.contains_key(s) {
                return Err(bad_input(format!("{key}.structure: unknown structure {s:?}")));
            }
        }
        if t.op == "compare" {
            let w = t.params.as_ref().and_then(|p| p.with.as_ref());
            match w {
                Some(w) if structures.contains_key(w) => {}
                Some(w) => return Err(bad_input(format!("{key}.params.with: unknown structure {w:?}"))),
                None => return Err(bad_input(format!("{key}.params.with: required for compare"))),
            }
        }
    }
    Ok(Resolved { field, algebra, modules, category, structures })
}
