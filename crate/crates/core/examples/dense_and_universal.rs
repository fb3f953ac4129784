//! Dense extensions of envelope modules and the universal property of the
//! embedding, for the split structure on add(P1, P2, S1).

use envlab::checks::{dense_extension_check, induce_functor, FunctorData};
use envlab::envelope::build_envelope;
use envlab::exact::Bounds;
use envlab::homological::small_indecomposables;
use envlab::module::FDModule;
use envlab::workbench::{load_corpus, resolve};

fn main() -> envlab::Result<()> {
    let resolved = resolve(&load_corpus("FIX-A2-SPLIT")?)?;
    let e = &resolved.category;
    let env = build_envelope(e, &resolved.structures["split"], Bounds::default_for(e));

    for m in small_indecomposables(&env.quotient.corner) {
        let rep = dense_extension_check(&env, &m);
        println!("dense extension for {:?}: {}", m.dims(), rep.verdict);
    }

    // the inclusion into mod kA2 extends; its extension kills S[S1]
    let inclusion = FunctorData::inclusion(e).expect("module category");
    let s1 = FDModule::simple(env.quotient.corner.clone(), 2);
    let (values, rep) = induce_functor(&env, &inclusion, &[s1])?;
    println!("F~ o i_R = F on generators: {} ({} checks)", rep.verdict, rep.instances);
    println!("F~(S[S1]) has dimension {}", values[0].dim());
    Ok(())
}
