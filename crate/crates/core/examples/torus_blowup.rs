//! Blow-up of ℍ×ℍ along the torus spanned by ∂₁+∂₂+∂₃ and ∂₄+∂₅+∂₆.
//!
//! The ambient fails the Lefschetz property at levels 1 and 2; the blow-up
//! satisfies it at every level.

use leflab::blowup::{lefschetz_report_generic, predict_general, predict_surface_blowup, BlowupInput, BlowupRing};
use leflab::cemodel::{parse_cochain, StructureSpec};
use leflab::cohomring::{format_element, restriction_from_subtorus, CohomologyRing, GradedAlgebra};
use leflab::exactla::q;
use leflab::lefschetz::SymplecticClass;

fn main() -> leflab::Result<()> {
    let x = CohomologyRing::from_spec(&StructureSpec::parse("(0,0,12,0,0,45)")?)?;
    let omega = x.class_of(&parse_cochain("14+23+56", 6)?)?;
    let frame = vec![
        [1, 1, 1, 0, 0, 0].map(q).to_vec(),
        [0, 0, 0, 1, 1, 1].map(q).to_vec(),
    ];
    let res = restriction_from_subtorus(&x, &frame)?;
    let ambient = SymplecticClass::new(&x, omega.clone())?.full_report()?;
    let surface = predict_surface_blowup(&x, &omega, &res.torus, &res.map)?;
    let general = predict_general(&x, &omega, &res.torus, &res.map)?;

    let b = BlowupRing::build(BlowupInput::new(x, res.torus, res.map, None)?)?;
    println!("k = {}, Thom class {}", b.k(), b.input().ambient.format_element(b.thom()));
    println!("betti {:?}", b.betti_numbers());
    println!("a² = {}", format_element(&b, &b.power_of_a(2)));

    let g = lefschetz_report_generic(&b, &omega)?;
    println!("kernels {:?} → {:?}", ambient.kernel_dims(), g.kernel_dims());
    println!("Lefschetz over ℚ(ε): {}, admissible ε = {}", g.report.lefschetz, g.admissible_eps);
    for p in surface.iter().chain(&general) {
        let got = g.kernel_dims()[p.k];
        println!("level {}: {} ({}): {}", p.k, p.relation, p.reason, if p.holds(got) { "holds" } else { "fails" });
    }
    Ok(())
}
