//! Nontrivial Massey products survive blow-ups.
//!
//! On the ambient side `f*⟨e₁,e₂,e₁⟩` stays outside `(f*e₁)` in the torus
//! blow-up of ℍ×ℍ. On the submanifold side, M = Heisenberg × S¹ sits in
//! M × ℂP⁴ with codimension 8, and `a³` times the product form stays outside
//! `(a·e₁)`.

use leflab::blowup::{BlowupInput, BlowupRing};
use leflab::cemodel::{parse_cochain, StructureSpec};
use leflab::cohomring::{projective_space_ring, restriction_from_subtorus, CohomologyRing};
use leflab::exactla::q;
use leflab::massey::{survives_blowup_ambient, survives_blowup_submanifold, triple_product};

fn main() -> leflab::Result<()> {
    let x = CohomologyRing::from_spec(&StructureSpec::parse("(0,0,12,0,0,45)")?)?;
    let frame = vec![[1, 1, 1, 0, 0, 0].map(q).to_vec(), [0, 0, 0, 1, 1, 1].map(q).to_vec()];
    let res = restriction_from_subtorus(&x, &frame)?;
    let e1 = x.class_of(&parse_cochain("1", 6)?)?;
    let e2 = x.class_of(&parse_cochain("2", 6)?)?;
    let c = triple_product(&x, &e1, &e2, &e1)?;
    let b = BlowupRing::build(BlowupInput::new(x, res.torus, res.map, None)?)?;
    println!("ambient: survives = {}", survives_blowup_ambient(&b, &c)?);

    let m = CohomologyRing::from_spec(&StructureSpec::parse("(0,0,12,0)")?)?;
    let (total, imap) = CohomologyRing::slice(&m, &projective_space_ring(4))?;
    let b = BlowupRing::build(BlowupInput::new(total, m.clone(), imap, None)?)?;
    let v1 = m.class_of(&parse_cochain("1", 4)?)?;
    let v2 = m.class_of(&parse_cochain("2", 4)?)?;
    let c = triple_product(&m, &v1, &v2, &v1)?;
    println!("submanifold (k = {}): survives = {}", b.k(), survives_blowup_submanifold(&b, &m, &c)?);
    Ok(())
}
