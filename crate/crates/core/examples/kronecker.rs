//! The Beilinson window for the projective line: O, O(1), O(2) with the
//! exact structure generated by the Euler sequence. The envelope is the
//! Kronecker algebra.

use envlab::envelope::{construct_envelope, weak_kernel, ext_kernel_verify};
use envlab::exact::{is_deflation, Bounds};
use envlab::module::hom_dim;
use envlab::workbench::{load_corpus, resolve};

fn main() -> envlab::Result<()> {
    let resolved = resolve(&load_corpus("FIX-KRON")?)?;
    let e = &resolved.category;
    let euler = &resolved.structures["euler"];
    let bounds = Bounds::default_for(e);
    let env = construct_envelope(e, euler, bounds)?;

    println!("dim Γ = {}, hom table {:?}", e.gamma().dim(), e.hom_table());
    println!("def simples = {:?}, dim eΓe = {}", env.def.labels(), env.corner_dim());
    let o2 = env.embed(&e.generator(2));
    println!("i_R(O(2)) = {:?}, dim End = {}", o2.dims(), hom_dim(&o2, &o2));

    let d = &euler.conflations[0].deflation;
    println!("Euler deflation in the split structure: {}", is_deflation(e, &resolved.structures["split"], d, bounds));

    let f = e.hom_basis(&e.generator(0), &e.generator(1)).remove(0);
    let w = weak_kernel(e, &f);
    let rep = ext_kernel_verify(&env, &w, &f)?;
    println!("weak kernel of x0 from {}: ext-kernel {}", e.describe(w.source()), rep.verdict);
    Ok(())
}
