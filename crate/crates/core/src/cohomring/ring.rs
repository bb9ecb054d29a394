use std::sync::OnceLock;

use num::{One, Zero};

use super::{check_degree, mul, Element, GradedAlgebra, RingElement, RingMap};
use crate::cemodel::{cochain_basis, Cochain, Monomial, StructureSpec};
use crate::error::{Error, Result};
use crate::exactla::{fmt_rational, ColumnCoordinates, Matrix, Rational};

/// Cohomology ring with a fixed basis per degree, cup-product structure
/// constants and an integration functional on the top degree.
///
/// Rings are either backed by a Chevalley–Eilenberg complex (each basis class
/// has a cochain representative) or defined by a presentation (ℂPⁿ, a point,
/// tensor products). Both expose the same [`GradedAlgebra`] interface;
/// chain-level operations require the former.
#[derive(Clone, Debug)]
pub struct CohomologyRing {
    top: usize,
    betti: Vec<usize>,
    labels: Vec<Vec<String>>,
    integration: Vec<Rational>,
    /// `tables[p * (top + 1) + q][i * betti[q] + j]` = coordinates of the product.
    tables: Vec<OnceLock<Vec<Vec<Rational>>>>,
    ce: Option<CeData>,
}

#[derive(Clone, Debug)]
struct CeData {
    spec: StructureSpec,
    monomials: Vec<Vec<Monomial>>,
    reps: Vec<Vec<Cochain>>,
    /// Coordinates against `reps[k]` followed by a basis of the coboundaries.
    coords: Vec<ColumnCoordinates<Rational>>,
    boundaries: Vec<Vec<Cochain>>,
}

impl CohomologyRing {
    /// Cohomology of the Chevalley–Eilenberg complex of `spec`, with
    /// `∫ e₁∧…∧e_N = scale`.
    ///
    /// In each degree the cocycles are reduced modulo the RREF basis of the
    /// coboundaries and the reduced vectors are put in RREF; the resulting rows
    /// are the representatives, so the basis depends only on the complex.
    pub fn compute(spec: &StructureSpec, scale: &Rational) -> Result<Self> {
        spec.check_d_squared()?;
        let n = spec.generator_count();
        let mut monomials = Vec::with_capacity(n + 1);
        let mut dmats = Vec::with_capacity(n + 1);
        for k in 0..=n {
            monomials.push(cochain_basis(n, k)?);
            dmats.push(spec.differential_matrix(k)?);
        }

        let mut reps = Vec::with_capacity(n + 1);
        let mut coords = Vec::with_capacity(n + 1);
        let mut boundaries = Vec::with_capacity(n + 1);
        let mut betti = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let dim = monomials[k].len();
            let bdry: Vec<Vec<Rational>> = if k == 0 {
                Vec::new()
            } else {
                dmats[k - 1].transpose().rref().image_basis
            };
            let cycles = dmats[k].rref().kernel_basis;
            let reduced: Vec<Vec<Rational>> = cycles
                .into_iter()
                .map(|mut z| {
                    for b in &bdry {
                        let p = b.iter().position(|x| !x.is_zero()).unwrap();
                        if !z[p].is_zero() {
                            let f = z[p].clone();
                            for (zi, bi) in z.iter_mut().zip(b) {
                                *zi -= &f * bi;
                            }
                        }
                    }
                    z
                })
                .collect();
            let rep_vecs = Matrix::from_rows(reduced, dim)?.rref().image_basis;
            betti.push(rep_vecs.len());

            let mut cols = rep_vecs.clone();
            cols.extend(bdry.iter().cloned());
            coords.push(ColumnCoordinates::new(Matrix::from_columns(&cols, dim)?)?);
            reps.push(
                rep_vecs
                    .iter()
                    .map(|v| Cochain::from_vector(k, &monomials[k], v))
                    .collect::<Vec<_>>(),
            );
            boundaries.push(
                bdry.iter()
                    .map(|v| Cochain::from_vector(k, &monomials[k], v))
                    .collect(),
            );
        }

        let labels = reps
            .iter()
            .map(|rs: &Vec<Cochain>| rs.iter().map(|c| c.to_string()).collect())
            .collect();
        let volume = monomials[n][0].clone();
        let integration = reps[n].iter().map(|r| r.coeff(&volume) * scale).collect();

        let ring = CohomologyRing {
            top: n,
            tables: empty_tables(n),
            betti,
            labels,
            integration,
            ce: Some(CeData {
                spec: spec.clone(),
                monomials,
                reps,
                coords,
                boundaries,
            }),
        };
        ring.spot_check_representatives()?;
        Ok(ring)
    }

    /// Cohomology with the default normalization `∫ e₁∧…∧e_N = 1`.
    pub fn from_spec(spec: &StructureSpec) -> Result<Self> {
        Self::compute(spec, &Rational::one())
    }

    /// Cohomology of the torus Tʳ.
    pub fn torus(r: usize) -> Self {
        Self::from_spec(&StructureSpec::abelian(r)).expect("abelian algebra is valid")
    }

    /// Cohomology of a point.
    pub fn point() -> Self {
        projective_space_ring(0)
    }

    /// Builds a presentation-defined ring from its structure constants.
    ///
    /// `product(p, i, q, j)` returns coordinates in degree `p + q`; it is only
    /// called when `p + q ≤ top`.
    pub fn from_presentation(
        betti: Vec<usize>,
        labels: Vec<Vec<String>>,
        integration: Vec<Rational>,
        product: impl Fn(usize, usize, usize, usize) -> Vec<Rational>,
    ) -> Result<Self> {
        let top = betti.len().checked_sub(1).ok_or_else(|| Error::Usage("empty ring".into()))?;
        if betti[0] != 1 {
            return Err(Error::Usage("degree 0 must be one-dimensional".into()));
        }
        if integration.len() != betti[top] {
            return Err(Error::Dimension("integration functional has wrong length".into()));
        }
        let tables = empty_tables(top);
        for p in 0..=top {
            for q in 0..=top - p {
                let mut t = Vec::with_capacity(betti[p] * betti[q]);
                for i in 0..betti[p] {
                    for j in 0..betti[q] {
                        let v = product(p, i, q, j);
                        if v.len() != betti[p + q] {
                            return Err(Error::Dimension(format!(
                                "product in degrees ({p},{q}) has {} coordinates",
                                v.len()
                            )));
                        }
                        t.push(v);
                    }
                }
                tables[p * (top + 1) + q].set(t).unwrap();
            }
        }
        Ok(CohomologyRing {
            top,
            betti,
            labels,
            integration,
            tables,
            ce: None,
        })
    }

    /// Künneth product `A ⊗ B` with `(a⊗b)(a'⊗b') = (−1)^{|b||a'|} aa' ⊗ bb'`.
    ///
    /// The basis of degree `m` lists `a_i ⊗ b_j` by decreasing `|a|`, then `i`,
    /// then `j`. The result is presentation-backed.
    pub fn tensor(a: &CohomologyRing, b: &CohomologyRing) -> Result<Self> {
        let top = a.top + b.top;
        // index[m] = list of (p, i, q, j)
        let mut index: Vec<Vec<(usize, usize, usize, usize)>> = vec![Vec::new(); top + 1];
        for (m, slot) in index.iter_mut().enumerate() {
            // factors of `a` with higher degree first, like the product spec's lex order
            for p in (0..=m.min(a.top)).rev() {
                let q = m - p;
                if q > b.top {
                    continue;
                }
                for i in 0..a.betti(p) {
                    for j in 0..b.betti(q) {
                        slot.push((p, i, q, j));
                    }
                }
            }
        }
        let position = |m: usize, key: (usize, usize, usize, usize)| {
            index[m].iter().position(|&k| k == key).unwrap()
        };
        let betti: Vec<usize> = index.iter().map(|v| v.len()).collect();
        let labels = index
            .iter()
            .map(|v| {
                v.iter()
                    .map(|&(p, i, q, j)| format!("{}⊗{}", a.basis_label(p, i), b.basis_label(q, j)))
                    .collect()
            })
            .collect();
        let integration = a
            .integration
            .iter()
            .flat_map(|x| b.integration.iter().map(move |y| x * y))
            .collect();
        CohomologyRing::from_presentation(betti.clone(), labels, integration, |m1, s, m2, t| {
            let (p1, i1, q1, j1) = index[m1][s];
            let (p2, i2, q2, j2) = index[m2][t];
            let mut out = vec![Rational::zero(); betti[m1 + m2]];
            let ap = a.basis_product(p1, i1, p2, i2);
            let bp = b.basis_product(q1, j1, q2, j2);
            if ap.is_empty() || bp.is_empty() {
                return out;
            }
            let sign = if (q1 * p2) % 2 == 1 { -Rational::one() } else { Rational::one() };
            for (ii, x) in ap.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (jj, y) in bp.iter().enumerate() {
                    if y.is_zero() {
                        continue;
                    }
                    let at = position(m1 + m2, (p1 + p2, ii, q1 + q2, jj));
                    out[at] += x * y * &sign;
                }
            }
            out
        })
    }

    /// `M × F` together with the restriction to the slice `M × {pt}`,
    /// which sends `u ⊗ 1 ↦ u` and kills every `u ⊗ f` with `|f| > 0`.
    pub fn slice(m: &CohomologyRing, fibre: &CohomologyRing) -> Result<(Self, RingMap)> {
        if fibre.betti(0) != 1 {
            return Err(Error::Usage("the fibre must be connected".into()));
        }
        let product = CohomologyRing::tensor(m, fibre)?;
        let mut matrices = Vec::with_capacity(product.top + 1);
        for k in 0..=product.top {
            let mut mat = Matrix::zeros(m.betti(k), product.betti(k));
            // with `|a|` descending, the `u ⊗ 1` classes come first
            for i in 0..m.betti(k) {
                mat.set(i, i, Rational::one());
            }
            matrices.push(mat);
        }
        Ok((product, RingMap::new(matrices)))
    }

    pub fn dimension(&self) -> usize {
        self.top
    }

    pub fn is_ce_backed(&self) -> bool {
        self.ce.is_some()
    }

    pub fn spec(&self) -> Option<&StructureSpec> {
        self.ce.as_ref().map(|c| &c.spec)
    }

    pub fn integration(&self) -> &[Rational] {
        &self.integration
    }

    pub fn element(&self, degree: usize, coeffs: Vec<Rational>) -> Result<RingElement> {
        let e = Element::new(degree, coeffs);
        check_degree(self, &e)?;
        Ok(e)
    }

    pub fn mul(&self, x: &RingElement, y: &RingElement) -> RingElement {
        mul(self, x, y)
    }

    fn ce(&self) -> Result<&CeData> {
        self.ce
            .as_ref()
            .ok_or_else(|| Error::Usage("operation needs a Chevalley–Eilenberg backed ring".into()))
    }

    /// Cochain representatives of the basis classes in `degree`.
    pub fn basis_representatives(&self, degree: usize) -> Option<&[Cochain]> {
        self.ce.as_ref().and_then(|c| c.reps.get(degree)).map(|v| v.as_slice())
    }

    /// RREF basis of the coboundaries in `degree`.
    pub fn coboundary_basis(&self, degree: usize) -> Option<&[Cochain]> {
        self.ce.as_ref().and_then(|c| c.boundaries.get(degree)).map(|v| v.as_slice())
    }

    /// Lexicographic monomial basis of the cochains in `degree`.
    pub fn cochain_monomials(&self, degree: usize) -> Option<&[Monomial]> {
        self.ce.as_ref().and_then(|c| c.monomials.get(degree)).map(|v| v.as_slice())
    }

    /// Cochain representing `x`.
    pub fn representative(&self, x: &RingElement) -> Result<Cochain> {
        let ce = self.ce()?;
        check_degree(self, x)?;
        let mut out = Cochain::zero(x.degree);
        for (c, r) in x.coeffs.iter().zip(&ce.reps[x.degree]) {
            out = out.add(&r.scale(c));
        }
        Ok(out)
    }

    /// Cohomology class of a closed cochain.
    pub fn class_of(&self, x: &Cochain) -> Result<RingElement> {
        let ce = self.ce()?;
        let k = x.degree();
        if k > self.top {
            return Err(Error::Dimension(format!("degree {k} above top {}", self.top)));
        }
        if !ce.spec.differential(x).is_zero() {
            return Err(Error::Usage(format!("cochain {x} is not closed")));
        }
        let v = x.to_vector(&ce.monomials[k])?;
        let c = ce.coords[k]
            .coords(&v)?
            .ok_or_else(|| Error::Internal(format!("closed cochain {x} outside cycles")))?;
        Ok(Element::new(k, c[..self.betti[k]].to_vec()))
    }

    /// `∫ x` for a top-degree element.
    pub fn integrate(&self, x: &RingElement) -> Result<Rational> {
        if x.degree != self.top {
            return Err(Error::Usage(format!(
                "integration of a degree-{} class on a {}-dimensional ring",
                x.degree, self.top
            )));
        }
        check_degree(self, x)?;
        Ok(x.coeffs
            .iter()
            .zip(&self.integration)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b))
    }

    /// Poincaré pairing `∫ x·y`; the degrees must be complementary.
    pub fn pairing(&self, x: &RingElement, y: &RingElement) -> Result<Rational> {
        if x.degree + y.degree != self.top {
            return Err(Error::Usage(format!(
                "pairing of degrees {} and {} on a {}-dimensional ring",
                x.degree, y.degree, self.top
            )));
        }
        check_degree(self, x)?;
        check_degree(self, y)?;
        self.integrate(&self.mul(x, y))
    }

    /// Matrix `P[a][b] = ∫ e_a · f_b` with `e_a` in degree `k` and `f_b` in
    /// degree `top − k`.
    pub fn pairing_matrix(&self, k: usize) -> Matrix<Rational> {
        let other = self.top - k;
        let mut m = Matrix::zeros(self.betti(k), self.betti(other));
        for a in 0..self.betti(k) {
            for b in 0..self.betti(other) {
                let v = self.basis_product(k, a, other, b);
                let s = v
                    .iter()
                    .zip(&self.integration)
                    .fold(Rational::zero(), |acc, (x, y)| acc + x * y);
                m.set(a, b, s);
            }
        }
        m
    }

    /// Checks that the Poincaré pairing is nondegenerate in every degree.
    pub fn check_poincare_duality(&self) -> Result<()> {
        if self.betti[self.top] != 1 {
            return Err(Error::DegeneratePairing(0, self.top));
        }
        for k in 0..=self.top {
            let p = self.pairing_matrix(k);
            if p.rows() != p.cols() || p.rank() != p.rows() {
                return Err(Error::DegeneratePairing(k, self.top - k));
            }
        }
        Ok(())
    }

    /// Human-readable form of an element, e.g. `-2*[e13]`.
    pub fn format_element(&self, x: &RingElement) -> String {
        super::format_element(self, x)
    }

    /// JSON export: dimension, Betti numbers, basis labels per degree, the
    /// nonzero structure constants and the top-degree integration weights.
    pub fn to_json(&self) -> serde_json::Value {
        let mut products = Vec::new();
        for p in 1..=self.top {
            for q in p..=self.top - p {
                for i in 0..self.betti[p] {
                    for j in 0..self.betti[q] {
                        for (k, c) in self.basis_product(p, i, q, j).iter().enumerate() {
                            if !c.is_zero() {
                                products.push(serde_json::json!({
                                    "left": [p, i],
                                    "right": [q, j],
                                    "result": [p + q, k],
                                    "coeff": fmt_rational(c),
                                }));
                            }
                        }
                    }
                }
            }
        }
        serde_json::json!({
            "dimension": self.top,
            "betti": self.betti,
            "basis": self.labels,
            "products": products,
            "integration": self.integration.iter().map(fmt_rational).collect::<Vec<_>>(),
        })
    }

    /// Adds a coboundary to one representative per degree and checks that
    /// products with every other degree's first class are unchanged.
    fn spot_check_representatives(&self) -> Result<()> {
        let ce = self.ce()?;
        for p in 1..=self.top {
            let (Some(rep), Some(b)) = (ce.reps[p].first(), ce.boundaries[p].first()) else {
                continue;
            };
            let perturbed = rep.add(b);
            for q in 0..=self.top - p {
                let Some(other) = ce.reps[q].first() else { continue };
                let lhs = self.class_of(&perturbed.wedge(other))?;
                let rhs = self.class_of(&rep.wedge(other))?;
                if lhs != rhs {
                    return Err(Error::Internal(format!(
                        "cup product depends on representative in degrees ({p},{q})"
                    )));
                }
            }
        }
        Ok(())
    }

    fn table(&self, p: usize, q: usize) -> &Vec<Vec<Rational>> {
        self.tables[p * (self.top + 1) + q].get_or_init(|| {
            let ce = self.ce.as_ref().expect("presentation tables are filled eagerly");
            let mut t = Vec::with_capacity(self.betti[p] * self.betti[q]);
            for a in &ce.reps[p] {
                for b in &ce.reps[q] {
                    t.push(self.class_of(&a.wedge(b)).expect("product of cocycles is closed").coeffs);
                }
            }
            t
        })
    }
}

impl GradedAlgebra for CohomologyRing {
    fn top_degree(&self) -> usize {
        self.top
    }

    fn betti(&self, degree: usize) -> usize {
        self.betti.get(degree).copied().unwrap_or(0)
    }

    fn basis_product(&self, p: usize, i: usize, q: usize, j: usize) -> &[Rational] {
        if p + q > self.top {
            return &[];
        }
        &self.table(p, q)[i * self.betti[q] + j]
    }

    fn basis_label(&self, degree: usize, i: usize) -> String {
        self.labels[degree][i].clone()
    }
}

fn empty_tables(top: usize) -> Vec<OnceLock<Vec<Vec<Rational>>>> {
    (0..(top + 1) * (top + 1)).map(|_| OnceLock::new()).collect()
}

/// Truncated polynomial ring `ℚ[h]/(h^{n+1})` with `|h| = 2` and `∫ hⁿ = 1`.
pub fn projective_space_ring(n: usize) -> CohomologyRing {
    let top = 2 * n;
    let betti: Vec<usize> = (0..=top).map(|k| usize::from(k % 2 == 0)).collect();
    let labels = (0..=top)
        .map(|k| match (k % 2, k / 2) {
            (1, _) => vec![],
            (_, 0) => vec!["1".to_string()],
            (_, 1) => vec!["h".to_string()],
            (_, j) => vec![format!("h^{j}")],
        })
        .collect();
    CohomologyRing::from_presentation(betti.clone(), labels, vec![Rational::one()], |p, _, q, _| {
        vec![Rational::one(); betti[p + q]]
    })
    .expect("valid presentation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cemodel::parse_cochain;
    use crate::cohomring::pow;
    use crate::exactla::q;

    fn ring(s: &str) -> CohomologyRing {
        CohomologyRing::from_spec(&StructureSpec::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn heisenberg_betti_and_basis() {
        let h = ring("(0,0,12)");
        assert_eq!(h.betti_numbers(), vec![1, 2, 2, 1]);
        let labels = |k| h.basis_representatives(k).unwrap().iter().map(|c| c.to_string()).collect::<Vec<_>>();
        assert_eq!(labels(1), ["e1", "e2"]);
        assert_eq!(labels(2), ["e13", "e23"]);
        assert_eq!(labels(3), ["e123"]);
    }

    #[test]
    fn torus_and_hxh_betti() {
        assert_eq!(ring("(0,0)").betti_numbers(), vec![1, 2, 1]);
        assert_eq!(ring("(0,0,12,0,0,45)").betti_numbers(), vec![1, 4, 8, 10, 8, 4, 1]);
    }

    #[test]
    fn rejects_d_squared() {
        let s = StructureSpec::parse("(0,0,12,34)").unwrap();
        assert!(matches!(CohomologyRing::from_spec(&s), Err(Error::DSquared { generator: 4, .. })));
    }

    #[test]
    fn projective_space() {
        assert_eq!(projective_space_ring(1).betti_numbers(), vec![1, 0, 1]);
        let p = projective_space_ring(3);
        let h = Element::basis(&p, 2, 0);
        let h2 = p.mul(&h, &h);
        assert_eq!(p.mul(&h, &h2), Element::basis(&p, 6, 0));
        assert!(pow(&p, &h, 4).is_zero());
        assert_eq!(p.integrate(&pow(&p, &h, 3)).unwrap(), q(1));
        p.check_poincare_duality().unwrap();
    }

    #[test]
    fn pairings() {
        let hxh = ring("(0,0,12,0,0,45)");
        let vol = hxh.class_of(&parse_cochain("123456", 6).unwrap()).unwrap();
        assert_eq!(hxh.integrate(&vol).unwrap(), q(1));

        let h = ring("(0,0,12)");
        let e1 = h.class_of(&parse_cochain("1", 3).unwrap()).unwrap();
        let e23 = h.class_of(&parse_cochain("23", 3).unwrap()).unwrap();
        let e13 = h.class_of(&parse_cochain("13", 3).unwrap()).unwrap();
        assert_eq!(h.pairing(&e1, &e23).unwrap(), q(1));
        assert_eq!(h.pairing(&e1, &e13).unwrap(), q(0));
        assert!(matches!(h.pairing(&e1, &e1), Err(Error::Usage(_))));
    }

    #[test]
    fn class_of_exact_is_zero() {
        let h = ring("(0,0,12)");
        assert!(h.class_of(&parse_cochain("12", 3).unwrap()).unwrap().is_zero());
        assert!(h.class_of(&parse_cochain("3", 3).unwrap()).is_err());
    }

    #[test]
    fn scaled_integration() {
        let s = StructureSpec::parse("(0,0,12)").unwrap();
        let h = CohomologyRing::compute(&s, &q(3)).unwrap();
        let vol = h.class_of(&parse_cochain("123", 3).unwrap()).unwrap();
        assert_eq!(h.integrate(&vol).unwrap(), q(3));
    }

    #[test]
    fn tensor_matches_product_spec() {
        let h = ring("(0,0,12)");
        let hh = CohomologyRing::tensor(&h, &h).unwrap();
        assert_eq!(hh.betti_numbers(), vec![1, 4, 8, 10, 8, 4, 1]);
        hh.check_poincare_duality().unwrap();
        let t = CohomologyRing::tensor(&CohomologyRing::torus(1), &CohomologyRing::torus(1)).unwrap();
        // (u⊗1)(1⊗v) = u⊗v and (1⊗v)(u⊗1) = -u⊗v
        let u = Element::basis(&t, 1, 0);
        let v = Element::basis(&t, 1, 1);
        assert_eq!(t.mul(&u, &v), t.mul(&v, &u).scale(&q(-1)));
        assert_eq!(t.integrate(&t.mul(&u, &v)).unwrap(), q(1));
    }

    #[test]
    fn json_export() {
        let j = ring("(0,0,12)").to_json();
        assert_eq!(j["betti"], serde_json::json!([1, 2, 2, 1]));
        assert_eq!(j["basis"][2], serde_json::json!(["e13", "e23"]));
        assert_eq!(j["integration"], serde_json::json!(["1"]));
        // e1·e23 = e123 and e2·e13 = −e123
        let prods = j["products"].as_array().unwrap();
        assert_eq!(prods.len(), 2);
        assert_eq!(prods[1]["coeff"], "-1");
    }

    #[test]
    fn slice_of_product() {
        let m = ring("(0,0,12)");
        let (x, i) = CohomologyRing::slice(&m, &projective_space_ring(2)).unwrap();
        assert_eq!(x.betti_numbers(), vec![1, 2, 3, 3, 3, 3, 2, 1]);
        i.check_multiplicative(&x, &m).unwrap();
    }
}
