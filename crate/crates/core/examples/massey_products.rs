//! Triple Massey products on the Heisenberg manifold and on ℍ×ℍ.

use leflab::cemodel::{parse_cochain, StructureSpec};
use leflab::cohomring::CohomologyRing;
use leflab::massey::{search_triple_products, triple_product};

fn main() -> leflab::Result<()> {
    let h = CohomologyRing::from_spec(&StructureSpec::parse("(0,0,12)")?)?;
    let e1 = h.class_of(&parse_cochain("1", 3)?)?;
    let e2 = h.class_of(&parse_cochain("2", 3)?)?;
    let c = triple_product(&h, &e1, &e2, &e1)?;
    println!("witnesses: a13 = {}, a24 = {}", c.certificate.a13, c.certificate.a24);
    println!(
        "⟨e1, e2, e1⟩ = {} modulo a {}-dimensional indeterminacy: {}",
        h.format_element(&c.representative),
        c.indeterminacy.len(),
        if c.is_trivial() { "trivial" } else { "nontrivial" }
    );

    let x = CohomologyRing::from_spec(&StructureSpec::parse("(0,0,12,0,0,45)")?)?;
    let found = search_triple_products(&x, (1, 1, 1))?;
    println!("ℍ×ℍ has {} nontrivial products on basis triples of degree 1:", found.len());
    for c in found.iter().take(6) {
        let ins: Vec<String> = c.inputs.iter().map(|v| x.format_element(v)).collect();
        println!("  ⟨{}⟩ = {}", ins.join(", "), x.format_element(&c.representative));
    }
    Ok(())
}
