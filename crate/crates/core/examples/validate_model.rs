//! Algebraic checks on every catalog entry, and on a hand-built algebra
//! whose Jacobi identity fails.

use homfinsler::algebra::{validate_model, ReductiveModel, StructureConstants};
use homfinsler::catalog;
use nalgebra::DMatrix;

fn main() -> homfinsler::Result<()> {
    for e in catalog::all() {
        let r = validate_model(&e.model, &e.v)?;
        println!("{}: {}", e.name, if r.all_passed() { "ok" } else { "FAILED" });
    }

    // [e1,e2] = e3 with [e1,e3] = e1 breaks Jacobi
    let sc = StructureConstants::from_triples(3, &[(0, 1, 2, 1.0), (0, 2, 0, 1.0)])?;
    let model = ReductiveModel::new(sc, 0, DMatrix::identity(3, 3), &[0.5, 0.0, 0.0])?;
    let r = validate_model(&model, &model.invariant_vector())?;
    println!("\nbroken algebra:\n{r}");
    Ok(())
}
