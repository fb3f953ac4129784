//! Strengthening the exact structure shrinks the envelope; the dual
//! structure gives the left envelope.

use envlab::checks::{compare_structures, dualize, left_abelian_witness, left_envelope};
use envlab::envelope::build_envelope;
use envlab::exact::Bounds;
use envlab::workbench::{dualize_input, load_corpus, resolve, to_json};

fn main() -> envlab::Result<()> {
    let input = load_corpus("FIX-A2-SPLIT")?;
    let resolved = resolve(&input)?;
    let e = &resolved.category;
    let bounds = Bounds::default_for(e);
    let (split, all) = (&resolved.structures["split"], &resolved.structures["all"]);

    let rep = compare_structures(e, split, all, bounds)?;
    println!("split ⊆ all: {} ({} checks)", rep.verdict, rep.instances);
    match compare_structures(e, all, split, bounds) {
        Ok(r) => println!("all ⊆ split: {}", r.verdict),
        Err(err) => println!("all ⊆ split rejected: {err}"),
    }

    let left = left_envelope(e, all, bounds);
    println!("left envelope: dim {}, def simples {:?}", left.corner_dim(), left.def.labels());
    let (op, sop) = dualize(e, all);
    let (back, _) = dualize(&op, &sop);
    println!("category duality is an involution: {}", back == *e);
    let twice = dualize_input(&dualize_input(&input));
    println!("input duality is byte-exact: {}", to_json(&twice) == to_json(&input));

    // a cokernel condition witness inside the envelope
    let env = build_envelope(e, all, bounds);
    let f = env.embed_map(&e.hom_basis(&e.generator(0), &e.generator(2)).remove(0));
    let g = env.embed_map(&e.identity(&e.generator(2)));
    let (d, h) = left_abelian_witness(&f, &g)?;
    println!("witness: d surjective {}, f∘h = g∘d {}", d.is_surjective(), f.compose(&h) == g.compose(&d));
    Ok(())
}
