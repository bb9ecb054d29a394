//! Named end-to-end checks over the bundled examples.
//!
//! Each check rebuilds its inputs from [`Fixtures`], so a corrupted fixture
//! makes the checks that depend on it fail by name.

use num::{BigRational, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::blowup::{
    lefschetz_report_generic, predict_general, predict_surface_blowup, recurrence_factor, toeplitz_det, BlowupInput,
    BlowupRing,
};
use crate::cemodel::{parse_cochain, Cochain, StructureSpec};
use crate::cohomring::{
    mul, pow, projective_space_ring, restriction_from_subtorus, CohomologyRing, GradedAlgebra, RingElement, RingMap,
};
use crate::exactla::{q, Rational};
use crate::lefschetz::{canonical_basis, SymplecticClass};
use crate::massey::{
    survives_blowup_ambient, survives_blowup_submanifold, triple_product, triple_product_with, MasseyCertificate,
};

/// Structures used by the duality and property checks.
pub const BUNDLED_STRUCTURES: [&str; 8] = [
    "(0,0)",
    "(0,0,12)",
    "(0,0,12,0)",
    "(0,0,12,13)",
    "(0,0,0,0,0,0)",
    "(0,0,12,0,0,45)",
    "(0,0,0,12,13,23)",
    "(0,0,12,13,14,15)",
];

/// Frame of the torus in ℍ×ℍ spanned by `∂₁+∂₂+∂₃` and `∂₄+∂₅+∂₆`.
pub const DIAGONAL_FRAME: [[i64; 6]; 2] = [[1, 1, 1, 0, 0, 0], [0, 0, 0, 1, 1, 1]];

/// Structure strings the checks start from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixtures {
    pub heisenberg: String,
    pub hxh: String,
}

impl Default for Fixtures {
    fn default() -> Self {
        Fixtures {
            heisenberg: "(0,0,12)".into(),
            hxh: "(0,0,12,0,0,45)".into(),
        }
    }
}

impl Fixtures {
    /// Replaces one fixture from a `name=structure` override.
    pub fn set(&mut self, assignment: &str) -> crate::Result<()> {
        let (name, value) = assignment
            .split_once('=')
            .ok_or_else(|| crate::Error::Usage(format!("expected NAME=STRUCTURE, got {assignment:?}")))?;
        match name.trim() {
            "heisenberg" => self.heisenberg = value.trim().into(),
            "hxh" => self.hxh = value.trim().into(),
            other => return Err(crate::Error::Usage(format!("unknown fixture {other:?} (heisenberg, hxh)"))),
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub group: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type CheckFn = fn(&Fixtures) -> Result<String, String>;

/// `(group, name, check)` for every bundled check, in run order.
pub const CHECKS: [(&str, &str, CheckFn); 12] = [
    ("cohomology", "heisenberg-cohomology", heisenberg_cohomology),
    ("massey", "heisenberg-massey", heisenberg_massey),
    ("massey", "heisenberg-massey-perturbed", heisenberg_massey_perturbed),
    ("lefschetz", "hxh-symplectic", hxh_symplectic),
    ("blowup", "torus-blowup-lefschetz", torus_blowup_lefschetz),
    ("massey", "massey-survival-ambient", massey_survival_ambient),
    ("massey", "massey-survival-submanifold", massey_survival_submanifold),
    ("blowup", "point-blowup-t6", point_blowup_t6),
    ("toeplitz", "toeplitz-sweep", toeplitz_sweep),
    ("properties", "poincare-duality-bundled", poincare_duality_bundled),
    ("properties", "blowup-betti-additivity", blowup_betti_additivity),
    ("properties", "a-power-confluence", a_power_confluence),
];

/// Runs the checks whose group or name contains `filter`.
pub fn run_checks(fixtures: &Fixtures, filter: Option<&str>) -> Vec<Outcome> {
    CHECKS
        .iter()
        .filter(|(group, name, _)| filter.is_none_or(|f| group.contains(f) || name.contains(f)))
        .map(|&(group, name, check)| {
            let (passed, detail) = match check(fixtures) {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            Outcome {
                group,
                name,
                passed,
                detail,
            }
        })
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: crate::Error) -> String {
    e.to_string()
}

fn ring(s: &str) -> Result<CohomologyRing, String> {
    CohomologyRing::from_spec(&StructureSpec::parse(s).map_err(err)?).map_err(err)
}

fn class(r: &CohomologyRing, s: &str) -> Result<RingElement, String> {
    r.class_of(&parse_cochain(s, r.dimension()).map_err(err)?).map_err(err)
}

fn frame(rows: &[[i64; 6]]) -> Vec<Vec<Rational>> {
    rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect()
}

fn labels(r: &CohomologyRing, k: usize) -> Vec<String> {
    r.basis_representatives(k)
        .unwrap_or_default()
        .iter()
        .map(|c| c.to_string())
        .collect()
}

fn heisenberg_cohomology(f: &Fixtures) -> Result<String, String> {
    let h = ring(&f.heisenberg)?;
    let betti = h.betti_numbers();
    ensure(betti == [1, 2, 2, 1], || format!("betti {betti:?}, expected [1, 2, 2, 1]"))?;
    let (h1, h2) = (labels(&h, 1), labels(&h, 2));
    ensure(h1 == ["e1", "e2"] && h2 == ["e13", "e23"], || format!("H¹ = {h1:?}, H² = {h2:?}"))?;
    Ok(format!("betti {betti:?}, H¹ = span{h1:?}, H² = span{h2:?}"))
}

fn heisenberg_massey(f: &Fixtures) -> Result<String, String> {
    let h = ring(&f.heisenberg)?;
    let (e1, e2) = (class(&h, "1")?, class(&h, "2")?);
    let c = triple_product(&h, &e1, &e2, &e1).map_err(err)?;
    let rep = h.representative(&c.representative).map_err(err)?;
    let expected = parse_cochain("-2*13", 3).map_err(err)?;
    ensure(rep == expected, || format!("representative {rep}, expected -2*e13"))?;
    ensure(c.indeterminacy.is_empty(), || format!("indeterminacy of dimension {}", c.indeterminacy.len()))?;
    ensure(!c.is_trivial(), || "coset is trivial".into())?;
    Ok(format!("⟨e1,e2,e1⟩ = [{rep}], zero indeterminacy"))
}

fn random_closed(h: &CohomologyRing, rng: &mut StdRng) -> Result<Cochain, String> {
    let spec = h.spec().ok_or("not CE-backed")?;
    let cycles = spec.differential_matrix(1).map_err(err)?.rref().kernel_basis;
    let monos = h.cochain_monomials(1).ok_or("not CE-backed")?;
    let mut v = vec![Rational::zero(); monos.len()];
    for z in &cycles {
        let c = q(rng.gen_range(-5..=5));
        for (vi, zi) in v.iter_mut().zip(z) {
            *vi += &c * zi;
        }
    }
    Ok(Cochain::from_vector(1, monos, &v))
}

fn heisenberg_massey_perturbed(f: &Fixtures) -> Result<String, String> {
    let h = ring(&f.heisenberg)?;
    let (e1, e2) = (class(&h, "1")?, class(&h, "2")?);
    let c = triple_product(&h, &e1, &e2, &e1).map_err(err)?;
    ensure(!c.is_trivial(), || "canonical coset is trivial".into())?;
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for trial in 0..100 {
        let cert = MasseyCertificate {
            a13: c.certificate.a13.add(&random_closed(&h, &mut rng)?),
            a24: c.certificate.a24.add(&random_closed(&h, &mut rng)?),
        };
        let moved = triple_product_with(&h, &e1, &e2, &e1, cert).map_err(err)?;
        ensure(moved.same_coset(&c) && !moved.is_trivial(), || {
            format!("perturbation {trial} left the coset")
        })?;
    }
    Ok("100 closed perturbations of the witnesses stay in the nontrivial coset".into())
}

fn hxh_symplectic(f: &Fixtures) -> Result<String, String> {
    let x = ring(&f.hxh)?;
    let w = class(&x, "14+23+56")?;
    let top = x.integrate(&pow(&x, &w, 3)).map_err(err)?;
    ensure(top == q(6), || format!("ω³ = {top}·e123456, expected 6"))?;
    let report = SymplecticClass::new(&x, w).map_err(err)?.full_report().map_err(err)?;
    let k2 = canonical_basis(vec![class(&x, "25")?.coeffs], x.betti(2));
    let k1 = canonical_basis(vec![class(&x, "2")?.coeffs, class(&x, "5")?.coeffs], x.betti(1));
    ensure(report.levels[2].kernel_basis == k2, || "ker(ω: H²→H⁴) ≠ span{e25}".into())?;
    ensure(report.levels[1].kernel_basis == k1, || "ker(ω²: H¹→H⁵) ≠ span{e2, e5}".into())?;
    Ok(format!("ω³ = 6·e123456, kernel dims {:?}", report.kernel_dims()))
}

fn torus_blowup(f: &Fixtures) -> Result<(BlowupRing, RingElement), String> {
    let x = ring(&f.hxh)?;
    let w = class(&x, "14+23+56")?;
    let res = restriction_from_subtorus(&x, &frame(&DIAGONAL_FRAME)).map_err(err)?;
    let b = BlowupRing::build(BlowupInput::new(x, res.torus, res.map, None).map_err(err)?).map_err(err)?;
    Ok((b, w))
}

fn torus_blowup_lefschetz(f: &Fixtures) -> Result<String, String> {
    let (b, w) = torus_blowup(f)?;
    let input = b.input();
    let ambient = SymplecticClass::new(&input.ambient, w.clone())
        .map_err(err)?
        .full_report()
        .map_err(err)?
        .kernel_dims();
    let g = lefschetz_report_generic(&b, &w).map_err(err)?;
    let dims = g.kernel_dims();
    ensure(g.report.lefschetz, || format!("blow-up kernels {dims:?}"))?;
    ensure(ambient[2] == dims[2] + 1 && ambient[1] == dims[1] + 2, || {
        format!("ambient kernels {ambient:?} vs blow-up {dims:?}")
    })?;
    let surface = predict_surface_blowup(&input.ambient, &w, &input.sub, &input.imap).map_err(err)?;
    let general = predict_general(&input.ambient, &w, &input.sub, &input.imap).map_err(err)?;
    for p in surface.iter().chain(&general) {
        ensure(p.holds(dims[p.k]), || format!("prediction at level {} ({}) fails", p.k, p.relation))?;
    }
    Ok(format!(
        "kernels {ambient:?} → {dims:?}, Lefschetz at ε = {}",
        g.admissible_eps
    ))
}

fn massey_survival_ambient(f: &Fixtures) -> Result<String, String> {
    let (b, _) = torus_blowup(f)?;
    let x = &b.input().ambient;
    let c = triple_product(x, &class(x, "1")?, &class(x, "2")?, &class(x, "1")?).map_err(err)?;
    ensure(!c.is_trivial(), || "⟨e1,e2,e1⟩ is trivial on the ambient".into())?;
    let survives = survives_blowup_ambient(&b, &c).map_err(err)?;
    ensure(survives, || "f*⟨e1,e2,e1⟩ lies in (f*e1)".into())?;
    Ok(format!("f*({}) ∉ (f*e1) in the torus blow-up", x.format_element(&c.representative)))
}

fn massey_survival_submanifold(f: &Fixtures) -> Result<String, String> {
    let h = StructureSpec::parse(&f.heisenberg).map_err(err)?;
    let m_ce = CohomologyRing::from_spec(&h.product(&StructureSpec::abelian(1))).map_err(err)?;
    let (x, imap) = CohomologyRing::slice(&m_ce, &projective_space_ring(4)).map_err(err)?;
    let b = BlowupRing::build(BlowupInput::new(x, m_ce.clone(), imap, None).map_err(err)?).map_err(err)?;
    let c = triple_product(&m_ce, &class(&m_ce, "1")?, &class(&m_ce, "2")?, &class(&m_ce, "1")?).map_err(err)?;
    let survives = survives_blowup_submanifold(&b, &m_ce, &c).map_err(err)?;
    ensure(survives, || "a³·class lies in (a·e1)".into())?;
    let (small, _) = torus_blowup(f)?;
    let refused = survives_blowup_submanifold(&small, &small.input().sub, &c);
    ensure(matches!(refused, Err(crate::Error::Hypothesis(_))), || {
        "k = 2 was not refused".into()
    })?;
    Ok("survives in M ⊂ M × ℂP⁴ (k = 4); k = 2 refused".into())
}

fn point_blowup_t6(_: &Fixtures) -> Result<String, String> {
    let x = CohomologyRing::torus(6);
    let w = class(&x, "12+34+56")?;
    let pt = CohomologyRing::point();
    let imap = RingMap::augmentation(&x, &pt);
    let predictions = predict_general(&x, &w, &pt, &imap).map_err(err)?;
    let b = BlowupRing::build(BlowupInput::new(x, pt, imap, None).map_err(err)?).map_err(err)?;
    let dims = lefschetz_report_generic(&b, &w).map_err(err)?.kernel_dims();
    ensure(dims.iter().all(|&d| d == 0), || format!("blow-up kernels {dims:?}"))?;
    for p in &predictions {
        ensure(p.holds(dims[p.k]) && p.ambient_kernel == dims[p.k], || {
            format!("level {}: ambient {} vs blow-up {}", p.k, p.ambient_kernel, dims[p.k])
        })?;
    }
    Ok(format!("kernels unchanged: {dims:?}"))
}

fn toeplitz_sweep(_: &Fixtures) -> Result<String, String> {
    let mut count = 0;
    for n in 0..=12u64 {
        for p in 0..=6u64 {
            for k in 0..=n {
                let d = toeplitz_det(n, p, k);
                ensure(!d.is_zero(), || format!("Δ(n={n}, p={p}, k={k}) = 0"))?;
                if n < 12 {
                    let next = BigRational::from_integer(toeplitz_det(n + 1, p, k));
                    let rhs = recurrence_factor(n, p, k) * BigRational::from_integer(d);
                    ensure(next == rhs, || format!("recurrence fails at n={n}, p={p}, k={k}"))?;
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} determinants nonzero, recurrence exact"))
}

fn poincare_duality_bundled(f: &Fixtures) -> Result<String, String> {
    let mut all: Vec<&str> = BUNDLED_STRUCTURES.to_vec();
    all.push(&f.heisenberg);
    all.push(&f.hxh);
    for s in &all {
        ring(s)?.check_poincare_duality().map_err(|e| format!("{s}: {e}"))?;
    }
    Ok(format!("{} structures", all.len()))
}

fn bundled_blowups(f: &Fixtures) -> Result<Vec<BlowupRing>, String> {
    let (torus, _) = torus_blowup(f)?;
    let t6 = CohomologyRing::torus(6);
    let pt = CohomologyRing::point();
    let imap = RingMap::augmentation(&t6, &pt);
    let point = BlowupRing::build(BlowupInput::new(t6, pt, imap, None).map_err(err)?).map_err(err)?;
    let cp = projective_space_ring(3);
    let pt = CohomologyRing::point();
    let imap = RingMap::augmentation(&cp, &pt);
    let cp_point = BlowupRing::build(BlowupInput::new(cp, pt, imap, None).map_err(err)?).map_err(err)?;
    Ok(vec![torus, point, cp_point])
}

fn blowup_betti_additivity(f: &Fixtures) -> Result<String, String> {
    for b in bundled_blowups(f)? {
        let (x, m, k) = (&b.input().ambient, &b.input().sub, b.k());
        let expected: Vec<usize> = (0..=x.dimension())
            .map(|d| x.betti(d) + (1..k).filter(|&i| d >= 2 * i).map(|i| m.betti(d - 2 * i)).sum::<usize>())
            .collect();
        let got = b.betti_numbers();
        ensure(got == expected, || format!("betti {got:?}, expected {expected:?}"))?;
    }
    Ok("b(X̃) = b(X) + Σ b(M)[−2i] on all bundled blow-ups".into())
}

fn a_power_confluence(f: &Fixtures) -> Result<String, String> {
    for b in bundled_blowups(f)? {
        let a = b.exceptional();
        let mut iterated = a.clone();
        for m in 2..=b.top_degree() / 2 {
            iterated = mul(&b, &iterated, &a);
            let direct = b.power_of_a(m);
            ensure(iterated == direct, || format!("a^{m} differs between reductions (k = {})", b.k()))?;
            for j in 1..m {
                let split = mul(&b, &b.power_of_a(j), &b.power_of_a(m - j));
                ensure(split == direct, || format!("a^{j}·a^{} ≠ a^{m}", m - j))?;
            }
        }
    }
    Ok("aᵐ agrees across all bracketings".into())
}
