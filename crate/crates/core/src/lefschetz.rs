//! Lefschetz maps `ω^{n−k}: H^k → H^{2n−k}`, level-by-level reports and the
//! primitive decomposition `H^i = P_i ⊕ σ·H^{i−2}`.
//!
//! Everything here is generic over the ring and the scalar field, so the same
//! code runs on nilmanifold rings over ℚ and on blow-up rings over ℚ(ε).

use serde_json::{json, Value};

use crate::cohomring::{format_element, multiplication_matrix, pow, Element, GradedAlgebra};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Scalar};

/// A degree-2 class whose top power is nonzero.
#[derive(Clone, Debug)]
pub struct SymplecticClass<'a, A: ?Sized, F> {
    ring: &'a A,
    omega: Element<F>,
    n: usize,
}

impl<'a, A, F> SymplecticClass<'a, A, F>
where
    A: GradedAlgebra + ?Sized,
    F: Scalar,
{
    /// Checks that `ω` has degree 2 and `ωⁿ ≠ 0`, where `2n` is the top degree.
    pub fn new(ring: &'a A, omega: Element<F>) -> Result<Self> {
        let top = ring.top_degree();
        if !top.is_multiple_of(2) {
            return Err(Error::Dimension(format!("ring of odd dimension {top}")));
        }
        if omega.degree != 2 || omega.coeffs.len() != ring.betti(2) {
            return Err(Error::Dimension(format!(
                "expected a degree-2 class with {} coefficients",
                ring.betti(2)
            )));
        }
        let n = top / 2;
        if pow(ring, &omega, n).is_zero() {
            return Err(Error::NotSymplectic);
        }
        Ok(SymplecticClass { ring, omega, n })
    }

    pub fn ring(&self) -> &'a A {
        self.ring
    }

    pub fn omega(&self) -> &Element<F> {
        &self.omega
    }

    /// Half the dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Matrix of `ω^{n−k}: H^k → H^{2n−k}`.
    pub fn lefschetz_map(&self, k: usize) -> Result<Matrix<F>> {
        if k > self.n {
            return Err(Error::Usage(format!("level {k} outside 0..={}", self.n)));
        }
        let power = pow(self.ring, &self.omega, self.n - k);
        Ok(multiplication_matrix(self.ring, &power, k))
    }

    pub fn level(&self, k: usize) -> Result<LevelReport<F>> {
        let m = self.lefschetz_map(k)?;
        let r = m.rref();
        let kernel_basis = canonical_basis(r.kernel_basis, m.cols());
        Ok(LevelReport {
            k,
            source_dim: m.cols(),
            target_dim: m.rows(),
            rank: r.rank,
            surjective: r.rank == m.rows(),
            kernel_basis,
        })
    }

    pub fn full_report(&self) -> Result<LefschetzReport<F>> {
        let levels = (0..=self.n).map(|k| self.level(k)).collect::<Result<Vec<_>>>()?;
        let lefschetz = levels.iter().all(|l| l.surjective);
        Ok(LefschetzReport {
            n: self.n,
            levels,
            lefschetz,
        })
    }
}

/// `lefschetz_map(ring, ω, k)` as a free function.
pub fn lefschetz_map<A, F>(ring: &A, omega: &Element<F>, k: usize) -> Result<Matrix<F>>
where
    A: GradedAlgebra + ?Sized,
    F: Scalar,
{
    SymplecticClass::new(ring, omega.clone())?.lefschetz_map(k)
}

/// Report for every level `0 ≤ k ≤ n`; fails with [`Error::NotSymplectic`]
/// if `ωⁿ = 0`.
pub fn full_report<A, F>(ring: &A, omega: &Element<F>) -> Result<LefschetzReport<F>>
where
    A: GradedAlgebra + ?Sized,
    F: Scalar,
{
    SymplecticClass::new(ring, omega.clone())?.full_report()
}

/// RREF of the span of `vectors`, i.e. a basis that depends only on the span.
pub fn canonical_basis<F: Scalar>(vectors: Vec<Vec<F>>, dim: usize) -> Vec<Vec<F>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    Matrix::from_rows(vectors, dim).expect("vectors of equal length").rref().image_basis
}

#[derive(Clone, Debug, PartialEq)]
pub struct LevelReport<F> {
    pub k: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub surjective: bool,
    /// RREF basis of the kernel, as coordinates in the degree-`k` basis.
    pub kernel_basis: Vec<Vec<F>>,
}

impl<F> LevelReport<F> {
    pub fn kernel_dim(&self) -> usize {
        self.kernel_basis.len()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LefschetzReport<F> {
    pub n: usize,
    pub levels: Vec<LevelReport<F>>,
    /// All levels surjective.
    pub lefschetz: bool,
}

impl<F: Scalar> LefschetzReport<F> {
    pub fn level(&self, k: usize) -> Option<&LevelReport<F>> {
        self.levels.get(k)
    }

    pub fn kernel_dims(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.kernel_dim()).collect()
    }

    /// Lowest level that is not surjective.
    pub fn first_failure(&self) -> Option<usize> {
        self.levels.iter().find(|l| !l.surjective).map(|l| l.k)
    }

    pub fn to_json<A: GradedAlgebra + ?Sized>(&self, ring: &A) -> Value {
        let levels: Vec<Value> = self
            .levels
            .iter()
            .map(|l| {
                let coords: Vec<Vec<String>> = l
                    .kernel_basis
                    .iter()
                    .map(|v| v.iter().map(|c| c.to_string()).collect())
                    .collect();
                let named: Vec<String> = l
                    .kernel_basis
                    .iter()
                    .map(|v| format_element(ring, &Element::new(l.k, v.clone())))
                    .collect();
                json!({
                    "k": l.k,
                    "kernel_dim": l.kernel_dim(),
                    "kernel_basis": coords,
                    "kernel": named,
                    "rank": l.rank,
                    "surjective": l.surjective,
                })
            })
            .collect();
        json!({ "levels": levels, "lefschetz": self.lefschetz })
    }
}

/// `H^i = P_i ⊕ σ·H^{i−2}` for every degree, with `P_i = ker σ^{d−i+1}` for
/// `i ≤ d` and `P_i = 0` above.
#[derive(Clone, Debug)]
pub struct PrimitiveDecomposition<F> {
    pub d: usize,
    pub sigma: Element<F>,
    /// `primitive[i]`: basis of `P_i`.
    pub primitive: Vec<Vec<Vec<F>>>,
    /// `lifted[i]`: images `σ·b` of the degree-`(i−2)` basis `b`.
    lifted: Vec<Vec<Vec<F>>>,
}

impl<F: Scalar> PrimitiveDecomposition<F> {
    pub fn primitive_dims(&self) -> Vec<usize> {
        self.primitive.iter().map(|p| p.len()).collect()
    }

    /// Splits `x ∈ H^i` as `p + σ·y` with `p ∈ P_i`.
    pub fn decompose<A: GradedAlgebra + ?Sized>(&self, ring: &A, x: &Element<F>) -> Result<(Element<F>, Element<F>)> {
        let i = x.degree;
        if i >= self.primitive.len() {
            return Err(Error::Usage(format!("degree {i} above the top")));
        }
        let mut cols = self.primitive[i].clone();
        cols.extend(self.lifted[i].iter().cloned());
        let m = Matrix::from_columns(&cols, ring.betti(i))?;
        let c = m
            .solve(&x.coeffs)?
            .ok_or_else(|| Error::Internal(format!("degree {i} not spanned by P_i and σ·H^{}", i as isize - 2)))?;
        let np = self.primitive[i].len();
        let mut p = Element::zero(ring, i);
        for (a, v) in c[..np].iter().zip(&self.primitive[i]) {
            p = p.add(&Element::new(i, v.clone()).scale(a));
        }
        let y = if i >= 2 {
            Element::new(i - 2, c[np..].to_vec())
        } else {
            Element::new(0, Vec::new())
        };
        Ok((p, y))
    }
}

/// Primitive decomposition for a ring with the Lefschetz property.
///
/// Refuses with [`Error::Hypothesis`] when some Lefschetz map is not
/// surjective. The splitting is verified in every degree.
pub fn primitive_decomposition<A, F>(ring: &A, sigma: &Element<F>) -> Result<PrimitiveDecomposition<F>>
where
    A: GradedAlgebra + ?Sized,
    F: Scalar,
{
    let class = SymplecticClass::new(ring, sigma.clone())?;
    let report = class.full_report()?;
    if let Some(k) = report.first_failure() {
        return Err(Error::Hypothesis(format!("Lefschetz property fails at level {k}")));
    }
    let d = class.n();
    let top = ring.top_degree();
    let mut primitive = Vec::with_capacity(top + 1);
    let mut lifted = Vec::with_capacity(top + 1);
    for i in 0..=top {
        let p = if i <= d {
            let power = pow(ring, sigma, d - i + 1);
            let m = multiplication_matrix(ring, &power, i);
            canonical_basis(m.rref().kernel_basis, ring.betti(i))
        } else {
            Vec::new()
        };
        let l: Vec<Vec<F>> = if i >= 2 {
            (0..ring.betti(i - 2))
                .map(|j| crate::cohomring::mul(ring, sigma, &Element::basis(ring, i - 2, j)).coeffs)
                .collect()
        } else {
            Vec::new()
        };
        let image_rank = if l.is_empty() {
            0
        } else {
            Matrix::from_columns(&l, ring.betti(i))?.rank()
        };
        let mut all = p.clone();
        all.extend(l.iter().cloned());
        let total_rank = if all.is_empty() {
            0
        } else {
            Matrix::from_columns(&all, ring.betti(i))?.rank()
        };
        if p.len() + image_rank != ring.betti(i) || total_rank != ring.betti(i) {
            return Err(Error::Internal(format!(
                "H^{i} is not P_{i} ⊕ σ·H^{}: dim P = {}, dim σH = {image_rank}, b = {}",
                i as isize - 2,
                p.len(),
                ring.betti(i)
            )));
        }
        primitive.push(p);
        lifted.push(l);
    }
    Ok(PrimitiveDecomposition {
        d,
        sigma: sigma.clone(),
        primitive,
        lifted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cemodel::{parse_cochain, StructureSpec};
    use crate::cohomring::{CohomologyRing, RingElement};
    use crate::exactla::{q, Rational};

    fn ring(s: &str) -> CohomologyRing {
        CohomologyRing::from_spec(&StructureSpec::parse(s).unwrap()).unwrap()
    }

    fn class(r: &CohomologyRing, s: &str) -> RingElement {
        r.class_of(&parse_cochain(s, r.dimension()).unwrap()).unwrap()
    }

    fn same_span(a: &[Vec<Rational>], b: &[RingElement]) -> bool {
        let b: Vec<Vec<Rational>> = b.iter().map(|e| e.coeffs.clone()).collect();
        canonical_basis(a.to_vec(), b[0].len()) == canonical_basis(b, a[0].len())
    }

    #[test]
    fn two_torus_level_one_is_identity() {
        let t = CohomologyRing::torus(2);
        let w = class(&t, "12");
        assert_eq!(lefschetz_map(&t, &w, 1).unwrap(), Matrix::identity(2));
    }

    #[test]
    fn hxh_kernels() {
        let x = ring("(0,0,12,0,0,45)");
        let w = class(&x, "14+23+56");
        let rep = full_report(&x, &w).unwrap();
        assert!(!rep.lefschetz);
        assert_eq!(rep.kernel_dims(), vec![0, 2, 1, 0]);
        assert!(same_span(&rep.levels[2].kernel_basis, &[class(&x, "25")]));
        assert!(same_span(&rep.levels[1].kernel_basis, &[class(&x, "2"), class(&x, "5")]));
        assert_eq!(rep.first_failure(), Some(1));
    }

    #[test]
    fn six_torus_is_lefschetz() {
        let t = CohomologyRing::torus(6);
        let rep = full_report(&t, &class(&t, "12+34+56")).unwrap();
        assert!(rep.lefschetz);
        assert_eq!(rep.kernel_dims(), vec![0; 4]);
    }

    #[test]
    fn degenerate_class_is_rejected() {
        let t = CohomologyRing::torus(4);
        assert!(matches!(full_report(&t, &class(&t, "12")), Err(Error::NotSymplectic)));
        assert!(lefschetz_map(&t, &class(&t, "12+34"), 3).is_err());
    }

    #[test]
    fn rescaling_keeps_kernels() {
        let x = ring("(0,0,12,0,0,45)");
        let w = class(&x, "14+23+56");
        let a = full_report(&x, &w).unwrap();
        let b = full_report(&x, &w.scale(&q(-7))).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn primitive_classes_of_tori() {
        let t2 = CohomologyRing::torus(2);
        let p = primitive_decomposition(&t2, &class(&t2, "12")).unwrap();
        assert_eq!(p.primitive_dims(), vec![1, 2, 0]);

        let t4 = CohomologyRing::torus(4);
        let s = class(&t4, "12+34");
        let p = primitive_decomposition(&t4, &s).unwrap();
        assert_eq!(p.primitive_dims(), vec![1, 4, 5, 0, 0]);
        let x = class(&t4, "13+2*12");
        let (prim, y) = p.decompose(&t4, &x).unwrap();
        assert_eq!(prim.add(&t4.mul(&s, &y)), x);
        assert!(t4.mul(&s, &prim).is_zero());
    }

    #[test]
    fn primitive_decomposition_needs_lefschetz() {
        let x = ring("(0,0,12,0,0,45)");
        let err = primitive_decomposition(&x, &class(&x, "14+23+56")).unwrap_err();
        assert!(matches!(err, Error::Hypothesis(_)));
    }

    #[test]
    fn json_lists_kernels() {
        let x = ring("(0,0,12,0,0,45)");
        let rep = full_report(&x, &class(&x, "14+23+56")).unwrap();
        let j = rep.to_json(&x);
        assert_eq!(j["lefschetz"], false);
        assert_eq!(j["levels"][2]["kernel"][0], "[e25]");
    }
}
