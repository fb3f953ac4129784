//! Input-level duality: the same data read in the opposite category.

use super::input::{AlgebraDecl, Matrix, MorphismDecl, WorkbenchInput};

fn transpose(m: &Matrix) -> Matrix {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|c| m.iter().map(|row| row[c].clone()).collect()).collect()
}

fn reverse_label(l: &str) -> String {
    l.split('*').rev().collect::<Vec<_>>().join("*")
}

fn op_morphism(f: &MorphismDecl) -> MorphismDecl {
    MorphismDecl {
        src: f.tgt.clone(),
        tgt: f.src.clone(),
        blocks: f.blocks.as_ref().map(|b| b.iter().map(|(v, m)| (v.clone(), transpose(m))).collect()),
        entries: f.entries.as_ref().map(|grid| {
            let cols = grid.first().map_or(0, Vec::len);
            (0..cols)
                .map(|c| {
                    grid.iter()
                        .map(|row| row[c].iter().map(|(l, x)| (reverse_label(l), x.clone())).collect())
                        .collect()
                })
                .collect()
        }),
    }
}

/// Opposite algebra, dual modules, transposed morphisms and exchanged
/// conflation ends. Applying it twice returns the original input.
pub fn dualize_input(input: &WorkbenchInput) -> WorkbenchInput {
    let mut out = input.clone();
    out.name = match input.name.strip_suffix("^op") {
        Some(base) => base.to_string(),
        None => format!("{}^op", input.name),
    };
    match &mut out.algebra {
        AlgebraDecl::Quiver { quiver, relations, .. } => {
            for a in &mut quiver.arrows {
                std::mem::swap(&mut a.src, &mut a.tgt);
            }
            for r in relations {
                for t in &mut r.terms {
                    t.path.reverse();
                }
            }
        }
        AlgebraDecl::Raw { table, .. } => {
            for p in table {
                std::mem::swap(&mut p.left, &mut p.right);
            }
        }
    }
    for m in out.modules.values_mut() {
        for a in m.arrows.values_mut() {
            *a = transpose(a);
        }
    }
    for s in out.structures.values_mut() {
        for c in &mut s.conflations {
            let i = op_morphism(&c.d);
            let d = op_morphism(&c.i);
            c.i = i;
            c.d = d;
        }
    }
    out
}
