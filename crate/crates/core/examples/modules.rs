//! Path algebras, representations and their homological invariants.

use std::sync::Arc;

use envlab::algebra::{build_algebra, Quiver, Relation};
use envlab::field::Field;
use envlab::homological::{composition_factors, ext1, projective_cover, radical_layers};
use envlab::linalg::Mat;
use envlab::module::{hom_dim, FDModule};

fn main() -> envlab::Result<()> {
    let f = Field::prime(101)?;

    // 1 -> 2 -> 3 with the length-two path killed
    let q = Quiver::new(
        vec!["1".into(), "2".into(), "3".into()],
        vec![("a".into(), "1".into(), "2".into()), ("b".into(), "2".into(), "3".into())],
    )?;
    let zero_path = Relation { terms: vec![(f.one(), vec![0, 1])] };
    let lambda = Arc::new(build_algebra(f, &q, &[zero_path], 2)?);
    println!("dim = {}, basis = {:?}", lambda.dim(), lambda.labels());
    println!("cartan = {:?}", lambda.cartan_matrix());

    let p1 = FDModule::projective(lambda.clone(), 0);
    let s2 = FDModule::simple(lambda.clone(), 1);
    let m = FDModule::from_representation(
        lambda.clone(),
        vec![1, 1, 0],
        &[Mat::from_i64(f, 1, 1, &[1]), Mat::zeros(f, 0, 1)],
    )?;
    println!("P1 dims {:?}, radical layers {:?}", p1.dims(), radical_layers(&p1));
    println!("factors of M: {:?}", composition_factors(&m));
    println!("Hom(P1, M) = {}, Hom(M, S2) = {}", hom_dim(&p1, &m), hom_dim(&m, &s2));

    let s1 = FDModule::simple(lambda.clone(), 0);
    println!("Ext^1(S1, S2) = {}, Ext^1(S2, S1) = {}", ext1(&s1, &s2), ext1(&s2, &s1));

    let cover = projective_cover(&m);
    println!("cover of M from slots {:?}, kernel dims {:?}", cover.summand_slots, cover.map.kernel().0.dims());
    Ok(())
}
