//! Cohomology ring of the blow-up of `X^{2n}` along `M^{2d}`, `k = n − d`.
//!
//! As a vector space `H•(X̃) = f*H•(X) ⊕ a·H•(M) ⊕ … ⊕ a^{k−1}·H•(M)` with
//! `|a| = 2`. Products follow
//!
//! ```text
//! f*x · f*y    = f*(xy)
//! f*x · aⁱu    = aⁱ(i*x · u)
//! aⁱu · aʲw    = a^{i+j}(uw)
//! aᵏu          = −f*(i_!u) − Σ_{j=1}^{k−1} aʲ(c_{k−j}u)
//! ```
//!
//! and higher powers are reduced by applying the last rule repeatedly, using
//! `f*y · aʲu = aʲ(i*y · u)` and `i*i_!u = c_k u` with `c_k = i*(t)`.

mod generic;
mod predict;
mod toeplitz;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num::{One, Zero};

use crate::cohomring::{check_degree, mul, pushforward, CohomologyRing, Element, GradedAlgebra, Pushforward, RingElement, RingMap};
use crate::error::{Error, Result};
use crate::exactla::Rational;

pub use generic::{lefschetz_report_generic, GenericLefschetz, Stabilization, EPS_SCHEDULE};
pub use predict::{predict_general, predict_surface_blowup, KernelRelation, LevelPrediction};
pub use toeplitz::{binomial, recurrence_factor, toeplitz_det};

/// Data defining a blow-up: both rings, the restriction `i*`, and the Chern
/// classes `c₁, …, c_{k−1}` of the normal bundle.
#[derive(Clone, Debug)]
pub struct BlowupInput {
    pub ambient: CohomologyRing,
    pub sub: CohomologyRing,
    pub imap: RingMap,
    /// `chern[j − 1] = c_j ∈ H^{2j}(M)` for `1 ≤ j < k`.
    pub chern: Vec<RingElement>,
    k: usize,
}

impl BlowupInput {
    /// Validates dimensions and Chern degrees. `chern = None` means all
    /// `c_j = 0`.
    pub fn new(
        ambient: CohomologyRing,
        sub: CohomologyRing,
        imap: RingMap,
        chern: Option<Vec<RingElement>>,
    ) -> Result<Self> {
        let (dx, dm) = (ambient.dimension(), sub.dimension());
        if dx < dm || (dx - dm) % 2 != 0 {
            return Err(Error::Dimension(format!(
                "submanifold of dimension {dm} in a {dx}-dimensional ambient"
            )));
        }
        let k = (dx - dm) / 2;
        if k < 2 {
            return Err(Error::Hypothesis(format!(
                "codimension {} < 4: the blow-up is the ambient manifold again",
                2 * k
            )));
        }
        for deg in 0..=dx {
            let m = imap
                .matrix(deg)
                .ok_or_else(|| Error::Dimension(format!("restriction has no matrix in degree {deg}")))?;
            if m.rows() != sub.betti(deg) || m.cols() != ambient.betti(deg) {
                return Err(Error::Dimension(format!("restriction matrix in degree {deg} has the wrong shape")));
            }
        }
        let chern = match chern {
            None => (1..k).map(|j| Element::zero(&sub, 2 * j)).collect(),
            Some(c) => {
                if c.len() != k - 1 {
                    return Err(Error::Dimension(format!(
                        "expected {} Chern classes c_1..c_{}, got {}",
                        k - 1,
                        k - 1,
                        c.len()
                    )));
                }
                for (j, cj) in c.iter().enumerate() {
                    if cj.degree != 2 * (j + 1) {
                        return Err(Error::Dimension(format!(
                            "c_{} has degree {}, expected {}",
                            j + 1,
                            cj.degree,
                            2 * (j + 1)
                        )));
                    }
                    check_degree(&sub, cj)?;
                }
                c
            }
        };
        Ok(BlowupInput {
            ambient,
            sub,
            imap,
            chern,
            k,
        })
    }

    /// Half the codimension.
    pub fn k(&self) -> usize {
        self.k
    }
}

/// `f*x + Σ_{j=1}^{k−1} aʲ u_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlowupElement {
    pub degree: usize,
    /// Coordinates of `x` in `H^degree(X)`.
    pub x: Vec<Rational>,
    /// `u[j − 1]`: coordinates of `u_j` in `H^{degree − 2j}(M)`, empty when
    /// that degree is negative.
    pub u: Vec<Vec<Rational>>,
}

impl BlowupElement {
    pub fn ambient_part(&self) -> RingElement {
        Element::new(self.degree, self.x.clone())
    }

    /// `u_j` as an element of `H•(M)`, or `None` when `2j > degree`.
    pub fn component(&self, j: usize) -> Option<RingElement> {
        (2 * j <= self.degree && j >= 1).then(|| Element::new(self.degree - 2 * j, self.u[j - 1].clone()))
    }
}

/// The blow-up ring with its structure constants and the derived Thom and
/// Euler classes.
#[derive(Clone, Debug)]
pub struct BlowupRing {
    input: BlowupInput,
    push: Pushforward,
    euler: RingElement,
    betti: Vec<usize>,
    labels: Vec<Vec<String>>,
    /// `tables[p * (top + 1) + q][i * betti[q] + j]`, filled on first use.
    tables: Vec<OnceLock<Vec<Vec<Rational>>>>,
}

/// Unreduced element: ambient part plus arbitrary powers of `a`.
struct Raw {
    degree: usize,
    x: Vec<Rational>,
    powers: BTreeMap<usize, Vec<Rational>>,
}

impl BlowupRing {
    pub fn build(input: BlowupInput) -> Result<Self> {
        let k = input.k;
        let push = pushforward(&input.ambient, &input.sub, &input.imap, 2 * k)?;
        let euler = input.imap.apply(&push.thom);
        let top = input.ambient.dimension();
        let mut betti = Vec::with_capacity(top + 1);
        let mut labels = Vec::with_capacity(top + 1);
        for deg in 0..=top {
            let mut l: Vec<String> = (0..input.ambient.betti(deg))
                .map(|i| format!("f*({})", input.ambient.basis_label(deg, i)))
                .collect();
            for j in 1..k {
                if 2 * j > deg {
                    break;
                }
                let a = if j == 1 { "a".to_string() } else { format!("a^{j}") };
                for i in 0..input.sub.betti(deg - 2 * j) {
                    l.push(format!("{a}·({})", input.sub.basis_label(deg - 2 * j, i)));
                }
            }
            betti.push(l.len());
            labels.push(l);
        }
        Ok(BlowupRing {
            input,
            push,
            euler,
            betti,
            labels,
            tables: (0..(top + 1) * (top + 1)).map(|_| OnceLock::new()).collect(),
        })
    }

    fn table(&self, p: usize, q: usize) -> &Vec<Vec<Rational>> {
        let top = self.top_degree();
        self.tables[p * (top + 1) + q].get_or_init(|| {
            let mut t = Vec::with_capacity(self.betti[p] * self.betti[q]);
            for i in 0..self.betti[p] {
                let x = self.unflatten(&Element::basis(self, p, i));
                for j in 0..self.betti[q] {
                    let y = self.unflatten(&Element::basis(self, q, j));
                    t.push(self.flatten(&self.multiply_by_rules(&x, &y)).coeffs);
                }
            }
            t
        })
    }

    pub fn input(&self) -> &BlowupInput {
        &self.input
    }

    pub fn k(&self) -> usize {
        self.input.k
    }

    pub fn thom(&self) -> &RingElement {
        &self.push.thom
    }

    /// `c_k = i*(t)`.
    pub fn euler(&self) -> &RingElement {
        &self.euler
    }

    pub fn pushforward(&self) -> &Pushforward {
        &self.push
    }

    /// `f*x`.
    pub fn pullback(&self, x: &RingElement) -> Element<Rational> {
        let mut out = Element::zero(self, x.degree);
        out.coeffs[..x.coeffs.len()].clone_from_slice(&x.coeffs);
        out
    }

    /// `aʲ·u` for `1 ≤ j < k`.
    pub fn a_times(&self, j: usize, u: &RingElement) -> Result<Element<Rational>> {
        if j == 0 || j >= self.input.k {
            return Err(Error::Usage(format!("a^{j}·u is not a basis block (k = {})", self.input.k)));
        }
        check_degree(&self.input.sub, u)?;
        let deg = u.degree + 2 * j;
        let mut e = BlowupElement {
            degree: deg,
            x: vec![Rational::zero(); self.input.ambient.betti(deg)],
            u: self.empty_components(deg),
        };
        e.u[j - 1] = u.coeffs.clone();
        Ok(self.flatten(&e))
    }

    /// The class `a` itself.
    pub fn exceptional(&self) -> Element<Rational> {
        self.a_times(1, &Element::one(&self.input.sub)).expect("k ≥ 2")
    }

    /// `aᵐ`, reduced directly from the relation rather than by repeated
    /// multiplication.
    pub fn power_of_a(&self, m: usize) -> Element<Rational> {
        if m == 0 {
            return Element::one(self);
        }
        let mut raw = Raw {
            degree: 2 * m,
            x: vec![Rational::zero(); self.input.ambient.betti(2 * m)],
            powers: BTreeMap::new(),
        };
        raw.powers.insert(m, Element::one(&self.input.sub).coeffs);
        self.flatten(&self.reduce(raw))
    }

    pub fn multiply(&self, p: &BlowupElement, q: &BlowupElement) -> BlowupElement {
        self.unflatten(&mul(self, &self.flatten(p), &self.flatten(q)))
    }

    pub fn flatten(&self, e: &BlowupElement) -> Element<Rational> {
        let mut coeffs = e.x.clone();
        for u in &e.u {
            coeffs.extend(u.iter().cloned());
        }
        Element::new(e.degree, coeffs)
    }

    pub fn unflatten(&self, e: &Element<Rational>) -> BlowupElement {
        let deg = e.degree;
        let nx = self.input.ambient.betti(deg);
        let mut at = nx;
        let mut u = self.empty_components(deg);
        for uj in u.iter_mut() {
            let len = uj.len();
            uj.clone_from_slice(&e.coeffs[at..at + len]);
            at += len;
        }
        BlowupElement {
            degree: deg,
            x: e.coeffs[..nx].to_vec(),
            u,
        }
    }

    fn empty_components(&self, deg: usize) -> Vec<Vec<Rational>> {
        (1..self.input.k)
            .map(|j| {
                if 2 * j > deg {
                    Vec::new()
                } else {
                    vec![Rational::zero(); self.input.sub.betti(deg - 2 * j)]
                }
            })
            .collect()
    }

    fn multiply_by_rules(&self, p: &BlowupElement, q: &BlowupElement) -> BlowupElement {
        let (amb, sub, imap) = (&self.input.ambient, &self.input.sub, &self.input.imap);
        let deg = p.degree + q.degree;
        let x = p.ambient_part();
        let y = q.ambient_part();
        let mut raw = Raw {
            degree: deg,
            x: mul(amb, &x, &y).coeffs,
            powers: BTreeMap::new(),
        };
        let ix = imap.apply(&x);
        let iy = imap.apply(&y);
        let k = self.input.k;
        for j in 1..k {
            if let Some(w) = q.component(j) {
                raw.add_power(j, &mul(sub, &ix, &w).coeffs);
            }
            if let Some(u) = p.component(j) {
                raw.add_power(j, &mul(sub, &u, &iy).coeffs);
                for l in 1..k {
                    if let Some(w) = q.component(l) {
                        raw.add_power(j + l, &mul(sub, &u, &w).coeffs);
                    }
                }
            }
        }
        self.reduce(raw)
    }

    /// Eliminates every `aᵐ` with `m ≥ k`, highest power first.
    fn reduce(&self, mut raw: Raw) -> BlowupElement {
        let k = self.input.k;
        let sub = &self.input.sub;
        while let Some((&m, _)) = raw.powers.iter().rev().find(|(&m, v)| m >= k && v.iter().any(|c| !c.is_zero())) {
            let coeffs = raw.powers.remove(&m).unwrap();
            let u = Element::new(raw.degree - 2 * m, coeffs);
            if m == k {
                let img = self.push.apply(&u);
                for (xi, c) in raw.x.iter_mut().zip(&img.coeffs) {
                    *xi -= c;
                }
            } else {
                raw.add_power(m - k, &mul(sub, &self.euler, &u).scale(&-Rational::one()).coeffs);
            }
            for j in 1..k {
                let c = &self.input.chern[k - j - 1];
                raw.add_power(m - k + j, &mul(sub, c, &u).scale(&-Rational::one()).coeffs);
            }
        }
        let mut out = BlowupElement {
            degree: raw.degree,
            x: raw.x,
            u: self.empty_components(raw.degree),
        };
        for (m, v) in raw.powers {
            if m >= 1 && m < k && 2 * m <= raw.degree {
                for (o, c) in out.u[m - 1].iter_mut().zip(&v) {
                    *o += c;
                }
            }
        }
        out
    }
}

impl Raw {
    fn add_power(&mut self, m: usize, v: &[Rational]) {
        if v.is_empty() || v.iter().all(|c| c.is_zero()) {
            return;
        }
        let slot = self
            .powers
            .entry(m)
            .or_insert_with(|| vec![Rational::zero(); v.len()]);
        for (s, c) in slot.iter_mut().zip(v) {
            *s += c;
        }
    }
}

impl GradedAlgebra for BlowupRing {
    fn top_degree(&self) -> usize {
        self.input.ambient.dimension()
    }

    fn betti(&self, degree: usize) -> usize {
        self.betti.get(degree).copied().unwrap_or(0)
    }

    fn basis_product(&self, p: usize, i: usize, q: usize, j: usize) -> &[Rational] {
        let top = self.top_degree();
        if p + q > top {
            return &[];
        }
        &self.table(p, q)[i * self.betti[q] + j]
    }

    fn basis_label(&self, degree: usize, i: usize) -> String {
        self.labels[degree][i].clone()
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::cemodel::{parse_cochain, StructureSpec};
    use crate::cohomring::restriction_from_subtorus;
    use crate::exactla::q;

    pub(crate) fn torus_blowup() -> BlowupRing {
        let x = CohomologyRing::from_spec(&StructureSpec::parse("(0,0,12,0,0,45)").unwrap()).unwrap();
        let frame = vec![
            [1, 1, 1, 0, 0, 0].iter().map(|&v| q(v)).collect(),
            [0, 0, 0, 1, 1, 1].iter().map(|&v| q(v)).collect(),
        ];
        let res = restriction_from_subtorus(&x, &frame).unwrap();
        BlowupRing::build(BlowupInput::new(x, res.torus, res.map, None).unwrap()).unwrap()
    }

    fn point_blowup_t6() -> BlowupRing {
        let x = CohomologyRing::torus(6);
        let pt = CohomologyRing::point();
        let i = RingMap::augmentation(&x, &pt);
        BlowupRing::build(BlowupInput::new(x, pt, i, None).unwrap()).unwrap()
    }

    #[test]
    fn betti_numbers_add_up() {
        let b = torus_blowup();
        assert_eq!(b.betti(2), 9);
        assert_eq!(b.betti(3), 12);
        assert_eq!(b.betti_numbers(), vec![1, 4, 9, 12, 9, 4, 1]);
        let p = point_blowup_t6();
        assert_eq!(p.betti(2), 16);
        assert_eq!(p.betti(4), 16);
    }

    #[test]
    fn a_squared_is_minus_thom() {
        let b = torus_blowup();
        let a = b.exceptional();
        let t = b.pullback(b.thom());
        assert_eq!(mul(&b, &a, &a), t.scale(&q(-1)));
        assert_eq!(b.power_of_a(2), t.scale(&q(-1)));
    }

    #[test]
    fn pullback_times_a_restricts() {
        let b = torus_blowup();
        let x = &b.input().ambient;
        let e1 = x.class_of(&parse_cochain("1", 6).unwrap()).unwrap();
        let du = b.input().imap.apply(&e1);
        assert_eq!(mul(&b, &b.pullback(&e1), &b.exceptional()), b.a_times(1, &du).unwrap());
        let ft = b.pullback(b.thom());
        assert_eq!(mul(&b, &ft, &b.exceptional()), b.a_times(1, b.euler()).unwrap());
    }

    #[test]
    fn rejects_small_codimension_and_bad_chern() {
        let x = CohomologyRing::torus(2);
        let pt = CohomologyRing::point();
        let i = RingMap::augmentation(&x, &pt);
        assert!(matches!(BlowupInput::new(x, pt.clone(), i, None), Err(Error::Hypothesis(_))));
        let x = CohomologyRing::torus(6);
        let i = RingMap::augmentation(&x, &pt);
        let bad = vec![Element::zero(&pt, 2)];
        assert!(BlowupInput::new(x, pt, i, Some(bad)).is_err());
    }

    #[test]
    fn point_blowup_relation() {
        let b = point_blowup_t6();
        // a³ = −f*(vol)
        let vol = Element::basis(&b.input().ambient, 6, 0);
        assert_eq!(b.power_of_a(3), b.pullback(&vol).scale(&q(-1)));
        let a = b.exceptional();
        assert_eq!(mul(&b, &mul(&b, &a, &a), &a), b.power_of_a(3));
    }
}
