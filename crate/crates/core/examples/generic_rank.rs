//! Ranks over ℚ(ε) against sampled ranks at ε = 2^{−m}.
//!
//! The blown-up symplectic class is `f*ω + ε·a` with ε formal; every
//! Lefschetz matrix is ranked over ℚ(ε) and the rank is confirmed on the
//! halving schedule, together with a root bound below which it cannot drop.

use leflab::blowup::{lefschetz_report_generic, BlowupInput, BlowupRing};
use leflab::cemodel::{parse_cochain, StructureSpec};
use leflab::cohomring::{format_element, CohomologyRing, RingMap};

fn main() -> leflab::Result<()> {
    let x = CohomologyRing::from_spec(&StructureSpec::parse("(0,0,12,0,0,45)")?)?;
    let omega = x.class_of(&parse_cochain("14+23+56", 6)?)?;
    let pt = CohomologyRing::point();
    let imap = RingMap::augmentation(&x, &pt);
    let b = BlowupRing::build(BlowupInput::new(x, pt, imap, None)?)?;
    let g = lefschetz_report_generic(&b, &omega)?;
    println!("ω̃ = {}", format_element(&b, &g.omega));
    for s in &g.levels {
        let bound = s.bound.as_ref().map_or("none".to_string(), |r| r.to_string());
        println!(
            "level {}: generic rank {}, stable from m = {}, root bound {bound}",
            s.k, s.generic_rank, s.stable_from
        );
    }
    println!("admissible ε = {}", g.admissible_eps);
    Ok(())
}
