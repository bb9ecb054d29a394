//! Triple Massey products `⟨x, y, z⟩` on Chevalley–Eilenberg backed rings,
//! and their fate in a blow-up.
//!
//! With `ā = (−1)^{|a|} a`, the witnesses solve `d a₁₃ = x̄·y` and
//! `d a₂₄ = ȳ·z` at cochain level, and the product is the class of
//! `x̄·a₂₄ + ā₁₃·z` modulo `x·H + z·H`.

use num::{One, Zero};
use serde_json::{json, Value};

use crate::blowup::BlowupRing;
use crate::cemodel::Cochain;
use crate::cohomring::{ideal_in_degree, in_span, mul, CohomologyRing, Element, GradedAlgebra, RingElement};
use crate::error::{Error, Result};
use crate::exactla::{fmt_rational, Rational};
use crate::lefschetz::canonical_basis;

/// The cochains `a₁₃`, `a₂₄` used to build a representative.
#[derive(Clone, Debug, PartialEq)]
pub struct MasseyCertificate {
    pub a13: Cochain,
    pub a24: Cochain,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MasseyCoset {
    pub inputs: [RingElement; 3],
    pub representative: RingElement,
    /// RREF basis of `x·H + z·H` in the representative's degree.
    pub indeterminacy: Vec<Vec<Rational>>,
    pub certificate: MasseyCertificate,
}

impl MasseyCoset {
    pub fn degree(&self) -> usize {
        self.representative.degree
    }

    /// Whether the representative lies in the indeterminacy.
    pub fn is_trivial(&self) -> bool {
        contains(&self.indeterminacy, &self.representative.coeffs)
    }

    /// Whether two cosets of the same inputs coincide.
    pub fn same_coset(&self, other: &MasseyCoset) -> bool {
        self.representative.degree == other.representative.degree
            && contains(&self.indeterminacy, &self.representative.sub(&other.representative).coeffs)
    }

    pub fn to_json(&self, ring: &CohomologyRing) -> Value {
        let terms = |c: &Cochain| -> Vec<Value> {
            c.terms()
                .map(|(m, q)| json!([m.label(), fmt_rational(q)]))
                .collect()
        };
        let coords = |v: &[Rational]| -> Vec<String> { v.iter().map(fmt_rational).collect() };
        json!({
            "inputs": self.inputs.iter().map(|x| ring.format_element(x)).collect::<Vec<_>>(),
            "witnesses": {
                "a13": terms(&self.certificate.a13),
                "a24": terms(&self.certificate.a24),
            },
            "representative": ring.format_element(&self.representative),
            "representative_coords": coords(&self.representative.coeffs),
            "indeterminacy": self.indeterminacy.iter().map(|v| coords(v)).collect::<Vec<_>>(),
            "verdict": if self.is_trivial() { "trivial" } else { "nontrivial" },
        })
    }
}

/// `⟨x, y, z⟩` with the pivot-canonical witnesses.
pub fn triple_product(ring: &CohomologyRing, x: &RingElement, y: &RingElement, z: &RingElement) -> Result<MasseyCoset> {
    check_inputs(ring, x, y, z)?;
    let (cx, cy, cz) = (ring.representative(x)?, ring.representative(y)?, ring.representative(z)?);
    let a13 = solve_exact(ring, &cx.bar().wedge(&cy), "[x][y]")?;
    let a24 = solve_exact(ring, &cy.bar().wedge(&cz), "[y][z]")?;
    triple_product_with(ring, x, y, z, MasseyCertificate { a13, a24 })
}

/// `⟨x, y, z⟩` computed from given witnesses, which are checked.
pub fn triple_product_with(
    ring: &CohomologyRing,
    x: &RingElement,
    y: &RingElement,
    z: &RingElement,
    certificate: MasseyCertificate,
) -> Result<MasseyCoset> {
    check_inputs(ring, x, y, z)?;
    let spec = ring.spec().expect("checked by check_inputs");
    let (cx, cy, cz) = (ring.representative(x)?, ring.representative(y)?, ring.representative(z)?);
    let MasseyCertificate { a13, a24 } = &certificate;
    if spec.differential(a13) != cx.bar().wedge(&cy) {
        return Err(Error::Usage("witness a13 does not satisfy d a13 = x̄·y".into()));
    }
    if spec.differential(a24) != cy.bar().wedge(&cz) {
        return Err(Error::Usage("witness a24 does not satisfy d a24 = ȳ·z".into()));
    }
    let form = cx.bar().wedge(a24).add(&a13.bar().wedge(&cz));
    let representative = ring
        .class_of(&form)
        .map_err(|e| Error::Internal(format!("Massey representative is not closed: {e}")))?;
    let indeterminacy = canonical_basis(
        ideal_in_degree(ring, &[x.clone(), z.clone()], representative.degree),
        ring.betti(representative.degree),
    );
    Ok(MasseyCoset {
        inputs: [x.clone(), y.clone(), z.clone()],
        representative,
        indeterminacy,
        certificate,
    })
}

/// `is_trivial` as a free function.
pub fn is_trivial(coset: &MasseyCoset) -> bool {
    coset.is_trivial()
}

/// Nontrivial products `⟨b₁, b₂, b₃⟩` over ordered basis triples of the
/// given degrees, in lexicographic order of the basis indices.
pub fn search_triple_products(ring: &CohomologyRing, degrees: (usize, usize, usize)) -> Result<Vec<MasseyCoset>> {
    if !ring.is_ce_backed() {
        return Err(Error::Usage("Massey products need a Chevalley–Eilenberg backed ring".into()));
    }
    let (p, q, r) = degrees;
    if p + q + r == 0 || p + q + r > ring.dimension() + 1 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for i in 0..ring.betti(p) {
        let x = Element::basis(ring, p, i);
        for j in 0..ring.betti(q) {
            let y = Element::basis(ring, q, j);
            if !mul(ring, &x, &y).is_zero() {
                continue;
            }
            for l in 0..ring.betti(r) {
                let z = Element::basis(ring, r, l);
                if !mul(ring, &y, &z).is_zero() {
                    continue;
                }
                let c = triple_product(ring, &x, &y, &z)?;
                if !c.is_trivial() {
                    out.push(c);
                }
            }
        }
    }
    Ok(out)
}

/// Whether `f*` of a nontrivial product on `X` stays outside the ideal
/// `(f*x, f*z)` of the blow-up.
///
/// A trivial coset gives `false`. For a nontrivial one the answer must be
/// `true` because `f*` is injective and the `aʲ` summands are direct; a
/// `false` there is reported as [`Error::Internal`].
pub fn survives_blowup_ambient(blow: &BlowupRing, coset: &MasseyCoset) -> Result<bool> {
    if coset.is_trivial() {
        return Ok(false);
    }
    let [x, _, z] = &coset.inputs;
    let gens = [blow.pullback(x), blow.pullback(z)];
    let deg = coset.degree();
    let span = ideal_in_degree(blow, &gens, deg);
    let survives = !contains(&span, &blow.pullback(&coset.representative).coeffs);
    if !survives {
        return Err(Error::Internal(
            "pulled-back Massey product fell into the ideal although f* is injective".into(),
        ));
    }
    Ok(true)
}

/// Whether a nontrivial product `⟨v₁, v₂, v₃⟩` on the submanifold yields
/// `a³·[w₁v₃ − (−1)^{|v₁|} v₁w₂] ∉ (a·v₁, a·v₃)` in the blow-up, where
/// `v₁v₂ = dw₁` and `v₂v₃ = dw₂`. Needs `k > 3`.
pub fn survives_blowup_submanifold(blow: &BlowupRing, sub: &CohomologyRing, coset: &MasseyCoset) -> Result<bool> {
    let k = blow.k();
    if k <= 3 {
        return Err(Error::Hypothesis(format!("k > 3 is required, got k = {k}")));
    }
    if coset.is_trivial() {
        return Ok(false);
    }
    let [v1, v2, v3] = &coset.inputs;
    let (c1, c3) = (sub.representative(v1)?, sub.representative(v3)?);
    let sign = |d: usize| if d % 2 == 1 { -Rational::one() } else { Rational::one() };
    // v₁v₂ = d(w₁) with w₁ = (−1)^{|v₁|} a₁₃, and likewise for w₂.
    let w1 = coset.certificate.a13.scale(&sign(v1.degree));
    let w2 = coset.certificate.a24.scale(&sign(v2.degree));
    let form = w1.wedge(&c3).sub(&c1.wedge(&w2).scale(&sign(v1.degree)));
    let class = sub.class_of(&form)?;
    if contains(&coset.indeterminacy, &class.coeffs) {
        return Err(Error::Internal("the submanifold product is trivial in the survival form".into()));
    }
    let target = blow.a_times(3, &class)?;
    let gens = [blow.a_times(1, v1)?, blow.a_times(1, v3)?];
    let span = ideal_in_degree(blow, &gens, target.degree);
    Ok(!contains(&span, &target.coeffs))
}

fn contains(span: &[Vec<Rational>], v: &[Rational]) -> bool {
    if v.iter().all(|c| c.is_zero()) {
        return true;
    }
    !span.is_empty() && in_span(span, v).expect("vectors share the ambient dimension")
}

fn check_inputs(ring: &CohomologyRing, x: &RingElement, y: &RingElement, z: &RingElement) -> Result<()> {
    if !ring.is_ce_backed() {
        return Err(Error::Usage("Massey products need a Chevalley–Eilenberg backed ring".into()));
    }
    for (name, e) in [("x", x), ("y", y), ("z", z)] {
        if e.degree == 0 {
            return Err(Error::Usage(format!("input {name} has degree 0")));
        }
        if e.coeffs.len() != ring.betti(e.degree) {
            return Err(Error::Dimension(format!("input {name} has the wrong number of coefficients")));
        }
    }
    if !ring.mul(x, y).is_zero() {
        return Err(Error::MasseyUndefined("[x][y] ≠ 0".into()));
    }
    if !ring.mul(y, z).is_zero() {
        return Err(Error::MasseyUndefined("[y][z] ≠ 0".into()));
    }
    Ok(())
}

/// Pivot-canonical `a` with `d a = b`, for an exact cochain `b`.
fn solve_exact(ring: &CohomologyRing, b: &Cochain, what: &str) -> Result<Cochain> {
    let spec = ring.spec().expect("CE-backed");
    let deg = b.degree();
    let dm = spec.differential_matrix(deg - 1)?;
    let src = ring.cochain_monomials(deg - 1).expect("CE-backed");
    let tgt = ring.cochain_monomials(deg).expect("CE-backed");
    let sol = dm
        .solve(&b.to_vector(tgt)?)?
        .ok_or_else(|| Error::MasseyUndefined(format!("{what} vanishes in cohomology but the cochain is not exact")))?;
    Ok(Cochain::from_vector(deg - 1, src, &sol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cemodel::{parse_cochain, StructureSpec};
    use crate::exactla::q;

    fn ring(s: &str) -> CohomologyRing {
        CohomologyRing::from_spec(&StructureSpec::parse(s).unwrap()).unwrap()
    }

    fn class(r: &CohomologyRing, s: &str) -> RingElement {
        r.class_of(&parse_cochain(s, r.dimension()).unwrap()).unwrap()
    }

    #[test]
    fn heisenberg_product() {
        let h = ring("(0,0,12)");
        let (e1, e2) = (class(&h, "1"), class(&h, "2"));
        let c = triple_product(&h, &e1, &e2, &e1).unwrap();
        assert_eq!(c.certificate.a13, parse_cochain("-3", 3).unwrap());
        assert_eq!(c.certificate.a24, parse_cochain("3", 3).unwrap());
        assert_eq!(c.representative, class(&h, "13").scale(&q(-2)));
        assert!(c.indeterminacy.is_empty());
        assert!(!c.is_trivial());
    }

    #[test]
    fn strictly_zero_products_are_trivial() {
        let h = ring("(0,0,12)");
        let e1 = class(&h, "1");
        let c = triple_product(&h, &e1, &e1, &e1).unwrap();
        assert!(c.certificate.a13.is_zero() && c.certificate.a24.is_zero());
        assert!(c.representative.is_zero());
        assert!(is_trivial(&c));
    }

    #[test]
    fn undefined_products_are_rejected() {
        let h = ring("(0,0,12)");
        let (e1, e23) = (class(&h, "1"), class(&h, "23"));
        let err = triple_product(&h, &e1, &e23, &e1).unwrap_err();
        assert_eq!(err, Error::MasseyUndefined("[x][y] ≠ 0".into()));
    }

    #[test]
    fn search_finds_heisenberg_product() {
        let h = ring("(0,0,12)");
        let found = search_triple_products(&h, (1, 1, 1)).unwrap();
        let (e1, e2) = (class(&h, "1"), class(&h, "2"));
        assert!(found.iter().any(|c| c.inputs == [e1.clone(), e2.clone(), e1.clone()]));
        assert!(search_triple_products(&CohomologyRing::torus(6), (1, 1, 1)).unwrap().is_empty());
        assert!(!search_triple_products(&ring("(0,0,12,0,0,45)"), (1, 1, 1)).unwrap().is_empty());
    }

    #[test]
    fn perturbing_witnesses_stays_in_coset() {
        let h = ring("(0,0,12)");
        let (e1, e2) = (class(&h, "1"), class(&h, "2"));
        let c = triple_product(&h, &e1, &e2, &e1).unwrap();
        let closed = parse_cochain("2*1-5*2", 3).unwrap();
        let moved = triple_product_with(
            &h,
            &e1,
            &e2,
            &e1,
            MasseyCertificate {
                a13: c.certificate.a13.add(&closed),
                a24: c.certificate.a24.clone(),
            },
        )
        .unwrap();
        assert!(c.same_coset(&moved));
        assert!(!moved.is_trivial());
        let bad = MasseyCertificate {
            a13: parse_cochain("3", 3).unwrap(),
            a24: c.certificate.a24.clone(),
        };
        assert!(triple_product_with(&h, &e1, &e2, &e1, bad).is_err());
    }

    #[test]
    fn hxh_product_and_json() {
        let x = ring("(0,0,12,0,0,45)");
        let c = triple_product(&x, &class(&x, "1"), &class(&x, "2"), &class(&x, "1")).unwrap();
        assert!(!c.is_trivial());
        let j = c.to_json(&x);
        assert_eq!(j["verdict"], "nontrivial");
        assert_eq!(j["witnesses"]["a13"][0][0], "e3");
    }

    #[test]
    fn ambient_product_survives_torus_blowup() {
        let b = crate::blowup::tests::torus_blowup();
        let x = &b.input().ambient;
        let c = triple_product(x, &class(x, "1"), &class(x, "2"), &class(x, "1")).unwrap();
        assert!(survives_blowup_ambient(&b, &c).unwrap());
        let t = triple_product(x, &class(x, "1"), &class(x, "1"), &class(x, "1")).unwrap();
        assert!(!survives_blowup_ambient(&b, &t).unwrap());
    }

    #[test]
    fn submanifold_product_survives_in_high_codimension() {
        let m = ring("(0,0,12,0)");
        let (x, imap) = CohomologyRing::slice(&m, &crate::cohomring::projective_space_ring(4)).unwrap();
        let b = BlowupRing::build(crate::blowup::BlowupInput::new(x, m.clone(), imap, None).unwrap()).unwrap();
        assert_eq!(b.k(), 4);
        let c = triple_product(&m, &class(&m, "1"), &class(&m, "2"), &class(&m, "1")).unwrap();
        assert!(!c.is_trivial());
        assert!(survives_blowup_submanifold(&b, &m, &c).unwrap());

        let small = crate::blowup::tests::torus_blowup();
        assert!(matches!(
            survives_blowup_submanifold(&small, &small.input().sub, &c),
            Err(Error::Hypothesis(_))
        ));
    }
}
