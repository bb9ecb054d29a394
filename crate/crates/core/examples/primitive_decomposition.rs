//! Splitting `H^i = P_i ⊕ σ·H^{i−2}` on T⁴ with σ = e₁₂ + e₃₄.

use leflab::cemodel::parse_cochain;
use leflab::cohomring::{CohomologyRing, Element};
use leflab::exactla::q;
use leflab::lefschetz::primitive_decomposition;

fn main() -> leflab::Result<()> {
    let t = CohomologyRing::torus(4);
    let sigma = t.class_of(&parse_cochain("12+34", 4)?)?;
    let dec = primitive_decomposition(&t, &sigma)?;
    println!("dim P_i = {:?}", dec.primitive_dims());

    let x = Element::new(2, vec![q(1), q(0), q(2), q(0), q(0), q(3)]);
    let (p, y) = dec.decompose(&t, &x)?;
    println!("{} = {} + σ·({})", t.format_element(&x), t.format_element(&p), t.format_element(&y));

    // ℍ×ℍ fails the Lefschetz property, so there is no such splitting
    let hxh = CohomologyRing::from_spec(&leflab::cemodel::StructureSpec::parse("(0,0,12,0,0,45)")?)?;
    let w = hxh.class_of(&parse_cochain("14+23+56", 6)?)?;
    match primitive_decomposition(&hxh, &w) {
        Err(e) => println!("ℍ×ℍ: {e}"),
        Ok(_) => println!("ℍ×ℍ unexpectedly splits"),
    }
    Ok(())
}
