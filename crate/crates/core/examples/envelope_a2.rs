//! The right abelian envelope of add(P1, P2, S1) with the ambient structure:
//! the simple S[S1] is killed and the envelope is mod kA2.

use envlab::envelope::{check_embedding, construct_envelope, ext_coherence_report};
use envlab::exact::Bounds;
use envlab::workbench::{load_corpus, resolve};

fn main() -> envlab::Result<()> {
    let resolved = resolve(&load_corpus("FIX-A2-ALL")?)?;
    let e = &resolved.category;
    let s = &resolved.structures["all"];
    let env = construct_envelope(e, s, Bounds::default_for(e))?;

    println!("dim Γ = {}, def simples = {:?}", e.gamma().dim(), env.def.labels());
    println!("dim eΓe = {}, cartan {:?}", env.corner_dim(), env.quotient.corner.cartan_matrix());
    for (g, dims) in e.labels().iter().zip(env.embedding_dims()) {
        println!("i_R({g}) = {dims:?}");
    }

    for rep in [check_embedding(&env), ext_coherence_report(&env)] {
        println!("{}: {} over {} instances", rep.name, rep.verdict, rep.instances);
    }
    Ok(())
}
