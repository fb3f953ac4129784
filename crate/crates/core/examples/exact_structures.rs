//! Exact structures on add(P1, P2, S1) for the A2 quiver: conflation tests,
//! deflation membership and axiom validation.

use std::sync::Arc;

use envlab::algebra::{build_algebra, Quiver};
use envlab::category::AddCategory;
use envlab::exact::{enumerate_deflations, generating_conflations, is_conflation, is_deflation, validate_structure, Bounds, ExactStructure};
use envlab::field::Field;
use envlab::module::FDModule;

fn main() -> envlab::Result<()> {
    let f = Field::prime(101)?;
    let q = Quiver::new(vec!["1".into(), "2".into()], vec![("a".into(), "1".into(), "2".into())])?;
    let lambda = Arc::new(build_algebra(f, &q, &[], 1)?);
    let gens = vec![
        FDModule::projective(lambda.clone(), 0),
        FDModule::projective(lambda.clone(), 1),
        FDModule::simple(lambda.clone(), 0),
    ];
    let e = AddCategory::from_modules(vec!["P1".into(), "P2".into(), "S1".into()], gens)?;
    let (p1, p2, s1) = (e.generator(0), e.generator(1), e.generator(2));

    let i = e.hom_basis(&p2, &p1).remove(0);
    let d = e.hom_basis(&p1, &s1).remove(0);
    println!("(P2 -> P1, P1 -> S1) is a kernel-cokernel pair: {}", is_conflation(&e, &i, &d)?);

    let bounds = Bounds::default_for(&e);
    for s in [ExactStructure::split("split"), ExactStructure::ambient("all")] {
        let report = validate_structure(&e, &s, bounds);
        println!("\n{} ({}): {} instances, passed {}", s.name, s.kind.name(), report.instances, report.passed());
        println!("  P1 -> S1 deflation? {}", is_deflation(&e, &s, &d, bounds));
        for c in generating_conflations(&e, &s) {
            println!("  generating deflation onto {}", e.describe(c.deflation.target()));
        }
        let onto = enumerate_deflations(&e, &s, &s1, bounds);
        println!("  {} deflations onto S1 found at depth {}", onto.len(), bounds.depth);
    }
    Ok(())
}
