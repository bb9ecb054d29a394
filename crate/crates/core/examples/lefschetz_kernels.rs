//! Lefschetz maps of ℍ×ℍ with ω = e₁₄ + e₂₃ + e₅₆.

use leflab::cemodel::{parse_cochain, StructureSpec};
use leflab::cohomring::{pow, CohomologyRing, Element};
use leflab::lefschetz::SymplecticClass;

fn main() -> leflab::Result<()> {
    let x = CohomologyRing::from_spec(&StructureSpec::parse("(0,0,12,0,0,45)")?)?;
    let omega = x.class_of(&parse_cochain("14+23+56", 6)?)?;
    println!("∫ω³ = {}", x.integrate(&pow(&x, &omega, 3))?);

    let report = SymplecticClass::new(&x, omega)?.full_report()?;
    for l in &report.levels {
        let kernel: Vec<String> = l
            .kernel_basis
            .iter()
            .map(|v| x.format_element(&Element::new(l.k, v.clone())))
            .collect();
        println!(
            "level {}: ω^{} : H^{} → H^{} has rank {}/{}, kernel {{{}}}",
            l.k,
            report.n - l.k,
            l.k,
            2 * report.n - l.k,
            l.rank,
            l.target_dim,
            kernel.join(", ")
        );
    }
    println!("Lefschetz: {}", report.lefschetz);
    println!("{}", serde_json::to_string_pretty(&report.to_json(&x)).unwrap());
    Ok(())
}
