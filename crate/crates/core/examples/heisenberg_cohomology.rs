//! Cohomology ring of the Heisenberg nilmanifold, `de₃ = e₁∧e₂`.

use leflab::cemodel::StructureSpec;
use leflab::cohomring::{mul, CohomologyRing, Element, GradedAlgebra};

fn main() -> leflab::Result<()> {
    let spec = StructureSpec::parse("(0,0,12)")?;
    let h = CohomologyRing::from_spec(&spec)?;
    println!("structure {}", spec.print());
    println!("betti {:?}", h.betti_numbers());
    for k in 0..=h.dimension() {
        let reps: Vec<String> = h.basis_representatives(k).unwrap().iter().map(|c| c.to_string()).collect();
        println!("H^{k} = span{{{}}}", reps.join(", "));
    }

    // cup products H¹ × H² → H³
    for i in 0..h.betti(1) {
        for j in 0..h.betti(2) {
            let p = mul(&h, &Element::basis(&h, 1, i), &Element::basis(&h, 2, j));
            println!("{} · {} = {}", h.basis_label(1, i), h.basis_label(2, j), h.format_element(&p));
        }
    }
    h.check_poincare_duality()?;
    println!("Poincaré duality holds");
    Ok(())
}
