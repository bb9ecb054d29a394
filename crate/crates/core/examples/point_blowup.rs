//! Blow-up of T⁶ at a point: the kernels of every Lefschetz map are unchanged.

use leflab::blowup::{lefschetz_report_generic, predict_general, BlowupInput, BlowupRing};
use leflab::cemodel::parse_cochain;
use leflab::cohomring::{format_element, CohomologyRing, GradedAlgebra, RingMap};

fn main() -> leflab::Result<()> {
    let x = CohomologyRing::torus(6);
    let omega = x.class_of(&parse_cochain("12+34+56", 6)?)?;
    let pt = CohomologyRing::point();
    let imap = RingMap::augmentation(&x, &pt);
    let predictions = predict_general(&x, &omega, &pt, &imap)?;
    let b = BlowupRing::build(BlowupInput::new(x, pt, imap, None)?)?;
    println!("betti {:?}", b.betti_numbers());
    println!("a³ = {}", format_element(&b, &b.power_of_a(3)));
    let g = lefschetz_report_generic(&b, &omega)?;
    for p in &predictions {
        println!("level {}: ambient {} → blow-up {} ({})", p.k, p.ambient_kernel, g.kernel_dims()[p.k], p.relation);
    }
    Ok(())
}
