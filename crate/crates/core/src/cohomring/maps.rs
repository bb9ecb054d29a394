use num::{One, Zero};

use super::{check_degree, CohomologyRing, Element, GradedAlgebra, RingElement};
use crate::cemodel::{Cochain, StructureSpec};
use crate::error::{Error, Result};
use crate::exactla::{fmt_rational, Matrix, Rational};

/// Degree-preserving linear map between graded rings, one matrix per degree.
///
/// `matrices[k]` has `target.betti(k)` rows and `source.betti(k)` columns.
#[derive(Clone, Debug, PartialEq)]
pub struct RingMap {
    matrices: Vec<Matrix<Rational>>,
}

impl RingMap {
    pub fn new(matrices: Vec<Matrix<Rational>>) -> Self {
        RingMap { matrices }
    }

    /// The map that is the identity on degree 0 and zero elsewhere, as for
    /// restriction to a point.
    pub fn augmentation<S, T>(source: &S, target: &T) -> Self
    where
        S: GradedAlgebra + ?Sized,
        T: GradedAlgebra + ?Sized,
    {
        let matrices = (0..=source.top_degree())
            .map(|k| {
                let mut m = Matrix::zeros(target.betti(k), source.betti(k));
                if k == 0 {
                    m.set(0, 0, Rational::one());
                }
                m
            })
            .collect();
        RingMap { matrices }
    }

    pub fn matrix(&self, degree: usize) -> Option<&Matrix<Rational>> {
        self.matrices.get(degree)
    }

    pub fn apply(&self, x: &RingElement) -> RingElement {
        match self.matrices.get(x.degree) {
            Some(m) => Element::new(x.degree, m.mul_vec(&x.coeffs).expect("degree checked")),
            None => Element::new(x.degree, Vec::new()),
        }
    }

    /// Checks `f(1) = 1` and `f(x·y) = f(x)·f(y)` on all basis pairs.
    pub fn check_multiplicative<S, T>(&self, source: &S, target: &T) -> Result<()>
    where
        S: GradedAlgebra + ?Sized,
        T: GradedAlgebra + ?Sized,
    {
        for k in 0..=source.top_degree() {
            let m = self
                .matrices
                .get(k)
                .ok_or_else(|| Error::Dimension(format!("no matrix in degree {k}")))?;
            if m.rows() != target.betti(k) || m.cols() != source.betti(k) {
                return Err(Error::Dimension(format!("matrix in degree {k} has wrong shape")));
            }
        }
        if self.apply(&Element::one(source)) != Element::one(target) {
            return Err(Error::Hypothesis("ring map does not preserve the unit".into()));
        }
        let top = source.top_degree();
        for p in 0..=top {
            for q in 0..=top - p {
                for i in 0..source.betti(p) {
                    for j in 0..source.betti(q) {
                        let x = Element::basis(source, p, i);
                        let y = Element::basis(source, q, j);
                        let lhs = self.apply(&super::mul(source, &x, &y));
                        let rhs = super::mul(target, &self.apply(&x), &self.apply(&y));
                        let lhs_zero = lhs.is_zero() || lhs.coeffs.is_empty();
                        if !(lhs == rhs || (lhs_zero && rhs.is_zero())) {
                            return Err(Error::Hypothesis(format!(
                                "ring map is not multiplicative on basis pair ({p},{i}),({q},{j})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Restriction to a subtorus together with the torus ring itself.
#[derive(Clone, Debug)]
pub struct SubtorusRestriction {
    pub torus: CohomologyRing,
    pub map: RingMap,
    /// Images of the ambient generators `e_j` as torus 1-cochains.
    pub generator_images: Vec<Cochain>,
}

/// Restriction `i*: H•(X) → H•(Tʳ)` to the torus tangent to the `frame`
/// vectors, each given by its coefficients on `∂₁, …, ∂_N`.
///
/// The frame must be linearly independent and span an abelian subalgebra:
/// every structure 2-form `d e_i` must vanish on every pair of frame vectors.
/// Each `e_j` restricts to `Σ_a frame[a][j]·u_a`.
pub fn restriction_from_subtorus(ambient: &CohomologyRing, frame: &[Vec<Rational>]) -> Result<SubtorusRestriction> {
    let spec = ambient
        .spec()
        .ok_or_else(|| Error::Usage("subtorus restriction needs a Chevalley–Eilenberg ring".into()))?;
    let n = spec.generator_count();
    let r = frame.len();
    if frame.iter().any(|v| v.len() != n) {
        return Err(Error::Dimension(format!("frame vectors must have {n} coefficients")));
    }
    if Matrix::from_rows(frame.to_vec(), n)?.rank() != r {
        return Err(Error::NotSubtorus("frame vectors are linearly dependent".into()));
    }
    check_abelian(spec, frame)?;

    let torus = CohomologyRing::torus(r);
    let generator_images: Vec<Cochain> = (0..n)
        .map(|j| {
            let mut c = Cochain::zero(1);
            for (a, v) in frame.iter().enumerate() {
                c.add_term(crate::cemodel::Monomial::generator(a), v[j].clone());
            }
            c
        })
        .collect();

    let mut matrices = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let reps = ambient.basis_representatives(k).unwrap();
        let mut m = Matrix::zeros(torus.betti(k), reps.len());
        for (col, rep) in reps.iter().enumerate() {
            if k > r {
                continue;
            }
            let img = torus.class_of(&rep.substitute(&generator_images))?;
            for (row, c) in img.coeffs.into_iter().enumerate() {
                m.set(row, col, c);
            }
        }
        matrices.push(m);
    }
    let map = RingMap::new(matrices);
    map.check_multiplicative(ambient, &torus)?;
    Ok(SubtorusRestriction {
        torus,
        map,
        generator_images,
    })
}

fn check_abelian(spec: &StructureSpec, frame: &[Vec<Rational>]) -> Result<()> {
    for i in 0..spec.generator_count() {
        let d = spec.generator_differential(i);
        for a in 0..frame.len() {
            for b in a + 1..frame.len() {
                let mut val = Rational::zero();
                for (m, c) in d.terms() {
                    let idx: Vec<usize> = m.indices().collect();
                    let (j, k) = (idx[0], idx[1]);
                    val += c * (&frame[a][j] * &frame[b][k] - &frame[a][k] * &frame[b][j]);
                }
                if !val.is_zero() {
                    return Err(Error::NotSubtorus(format!(
                        "d e{} evaluates to {} on frame vectors {} and {}, so their bracket is nonzero",
                        i + 1,
                        fmt_rational(&val),
                        a + 1,
                        b + 1
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Pairing-adjoint pushforward `i_!: H^j(M) → H^{j+2k}(X)` and the Thom class.
#[derive(Clone, Debug)]
pub struct Pushforward {
    /// `matrices[j]` maps `H^j(M)` into `H^{j+codim}(X)`.
    matrices: Vec<Matrix<Rational>>,
    codim: usize,
    pub thom: RingElement,
}

impl Pushforward {
    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn apply(&self, u: &RingElement) -> RingElement {
        let m = &self.matrices[u.degree];
        Element::new(u.degree + self.codim, m.mul_vec(&u.coeffs).expect("degree checked"))
    }

    pub fn matrix(&self, degree: usize) -> Option<&Matrix<Rational>> {
        self.matrices.get(degree)
    }
}

/// Computes `i_!` from `∫_X i_!(u)·v = ∫_M u·i*(v)` for all `v`, and
/// `t = i_!(1)`. Both rings must satisfy Poincaré duality.
pub fn pushforward(
    ambient: &CohomologyRing,
    sub: &CohomologyRing,
    imap: &RingMap,
    codim: usize,
) -> Result<Pushforward> {
    if ambient.dimension() != sub.dimension() + codim {
        return Err(Error::Dimension(format!(
            "ambient dimension {} ≠ {} + codimension {codim}",
            ambient.dimension(),
            sub.dimension()
        )));
    }
    ambient.check_poincare_duality()?;
    sub.check_poincare_duality()?;
    let dsub = sub.dimension();
    let mut matrices = Vec::with_capacity(dsub + 1);
    for j in 0..=dsub {
        let target_deg = j + codim;
        let test_deg = dsub - j;
        // pair[b][a] = ∫ e_a · v_b
        let pair = ambient.pairing_matrix(target_deg).transpose();
        let mut m = Matrix::zeros(ambient.betti(target_deg), sub.betti(j));
        for col in 0..sub.betti(j) {
            let u = Element::basis(sub, j, col);
            let rhs: Vec<Rational> = (0..ambient.betti(test_deg))
                .map(|b| {
                    let iv = imap.apply(&Element::basis(ambient, test_deg, b));
                    sub.pairing(&u, &iv)
                })
                .collect::<Result<_>>()?;
            let x = pair
                .solve(&rhs)?
                .ok_or(Error::DegeneratePairing(target_deg, test_deg))?;
            for (row, c) in x.into_iter().enumerate() {
                m.set(row, col, c);
            }
        }
        matrices.push(m);
    }
    let thom = Element::new(codim, matrices[0].column(0));
    check_degree(ambient, &thom)?;
    Ok(Pushforward {
        matrices,
        codim,
        thom,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cemodel::parse_cochain;
    use crate::exactla::q;

    fn hxh() -> CohomologyRing {
        CohomologyRing::from_spec(&StructureSpec::parse("(0,0,12,0,0,45)").unwrap()).unwrap()
    }

    fn frame(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    fn class(r: &CohomologyRing, s: &str) -> RingElement {
        r.class_of(&parse_cochain(s, 6).unwrap()).unwrap()
    }

    #[test]
    fn diagonal_torus_in_hxh() {
        let x = hxh();
        let res = restriction_from_subtorus(&x, &frame(&[&[1, 1, 1, 0, 0, 0], &[0, 0, 0, 1, 1, 1]])).unwrap();
        let uv = Element::basis(&res.torus, 2, 0);
        assert_eq!(res.map.apply(&class(&x, "25")), uv);
        assert!(res.map.apply(&class(&x, "13")).is_zero());
        let w = class(&x, "14+23+56");
        assert_eq!(res.map.apply(&w), uv);
    }

    #[test]
    fn rejects_non_abelian_frame() {
        let x = hxh();
        let err = restriction_from_subtorus(&x, &frame(&[&[1, 0, 0, 0, 0, 0], &[0, 1, 0, 0, 0, 0]])).unwrap_err();
        assert!(matches!(err, Error::NotSubtorus(_)));
        let err = restriction_from_subtorus(&x, &frame(&[&[1, 0, 0, 0, 0, 0], &[2, 0, 0, 0, 0, 0]])).unwrap_err();
        assert!(matches!(err, Error::NotSubtorus(_)));
    }

    #[test]
    fn thom_class_of_point() {
        let t6 = CohomologyRing::torus(6);
        let pt = CohomologyRing::point();
        let imap = RingMap::augmentation(&t6, &pt);
        let pf = pushforward(&t6, &pt, &imap, 6).unwrap();
        assert_eq!(t6.integrate(&pf.thom).unwrap(), q(1));
        assert_eq!(pf.thom, Element::basis(&t6, 6, 0));
    }

    #[test]
    fn thom_class_of_diagonal_torus() {
        let x = hxh();
        let res = restriction_from_subtorus(&x, &frame(&[&[1, 1, 1, 0, 0, 0], &[0, 0, 0, 1, 1, 1]])).unwrap();
        let pf = pushforward(&x, &res.torus, &res.map, 4).unwrap();
        let t = &pf.thom;
        assert_eq!(t.degree, 4);
        assert_eq!(x.pairing(t, &class(&x, "14")).unwrap(), q(1));
        assert_eq!(x.pairing(t, &class(&x, "25")).unwrap(), q(1));
        assert_eq!(x.pairing(t, &class(&x, "13")).unwrap(), q(0));
        // adjunction on every degree-2 basis class
        for b in 0..x.betti(2) {
            let v = Element::basis(&x, 2, b);
            let lhs = x.pairing(t, &v).unwrap();
            let rhs = res.torus.integrate(&res.map.apply(&v)).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
