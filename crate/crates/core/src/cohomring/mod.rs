//! Finite graded-commutative rings: cohomology of Chevalley–Eilenberg
//! complexes, presentation-defined rings such as ℂPⁿ, ring maps, and the
//! pairing-adjoint pushforward that produces Thom classes.

mod maps;
mod ring;

use num::Zero;

use crate::error::{Error, Result};
use crate::exactla::{Matrix, Rational, Scalar};

pub use maps::{pushforward, restriction_from_subtorus, Pushforward, RingMap, SubtorusRestriction};
pub use ring::{projective_space_ring, CohomologyRing};

/// A finite-dimensional graded algebra with a fixed basis in each degree and
/// rational structure constants.
///
/// Degree-0 basis element 0 must be the unit.
pub trait GradedAlgebra {
    /// Highest degree with (possibly) nonzero classes.
    fn top_degree(&self) -> usize;

    /// Dimension in `degree`; zero above the top degree.
    fn betti(&self, degree: usize) -> usize;

    /// Product of basis element `i` of degree `p` with basis element `j` of
    /// degree `q`, as coordinates in degree `p + q` (empty past the top).
    fn basis_product(&self, p: usize, i: usize, q: usize, j: usize) -> &[Rational];

    /// Human-readable name of a basis element.
    fn basis_label(&self, degree: usize, i: usize) -> String;

    fn betti_numbers(&self) -> Vec<usize> {
        (0..=self.top_degree()).map(|k| self.betti(k)).collect()
    }
}

/// Homogeneous element of a [`GradedAlgebra`] with coefficients in `F`.
#[derive(Clone, PartialEq, Debug)]
pub struct Element<F> {
    pub degree: usize,
    pub coeffs: Vec<F>,
}

/// An element with rational coefficients, such as a cohomology class.
pub type RingElement = Element<Rational>;

impl<F: Scalar> Element<F> {
    pub fn new(degree: usize, coeffs: Vec<F>) -> Self {
        Element { degree, coeffs }
    }

    pub fn zero<A: GradedAlgebra + ?Sized>(alg: &A, degree: usize) -> Self {
        Element {
            degree,
            coeffs: vec![F::zero(); alg.betti(degree)],
        }
    }

    pub fn one<A: GradedAlgebra + ?Sized>(alg: &A) -> Self {
        Self::basis(alg, 0, 0)
    }

    pub fn basis<A: GradedAlgebra + ?Sized>(alg: &A, degree: usize, i: usize) -> Self {
        let mut e = Self::zero(alg, degree);
        e.coeffs[i] = F::one();
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "adding elements of different degrees");
        Element {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Element {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-F::one()))
    }

    /// Embeds rational coordinates into `F`.
    pub fn from_rational(x: &RingElement) -> Self {
        Element {
            degree: x.degree,
            coeffs: x.coeffs.iter().map(F::from_rational).collect(),
        }
    }
}

/// Product of two elements.
pub fn mul<A, F>(alg: &A, x: &Element<F>, y: &Element<F>) -> Element<F>
where
    A: GradedAlgebra + ?Sized,
    F: Scalar,
{
    let deg = x.degree + y.degree;
    let mut out = Element::zero(alg, deg);
    if out.coeffs.is_empty() {
        return out;
    }
    for (i, a) in x.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.coeffs.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let ab = a.clone() * b.clone();
            for (l, c) in alg.basis_product(x.degree, i, y.degree, j).iter().enumerate() {
                if !c.is_zero() {
                    out.coeffs[l] = out.coeffs[l].clone() + ab.clone() * F::from_rational(c);
                }
            }
        }
    }
    out
}

/// `x^e`, with `x⁰ = 1`.
pub fn pow<A, F>(alg: &A, x: &Element<F>, e: usize) -> Element<F>
where
    A: GradedAlgebra + ?Sized,
    F: Scalar,
{
    let mut acc = Element::one(alg);
    for _ in 0..e {
        acc = mul(alg, &acc, x);
    }
    acc
}

/// Matrix of `y ↦ x·y` from degree `source` to degree `source + |x|`.
pub fn multiplication_matrix<A, F>(alg: &A, x: &Element<F>, source: usize) -> Matrix<F>
where
    A: GradedAlgebra + ?Sized,
    F: Scalar,
{
    let cols = alg.betti(source);
    let rows = alg.betti(source + x.degree);
    let mut m = Matrix::zeros(rows, cols);
    for j in 0..cols {
        let img = mul(alg, x, &Element::basis(alg, source, j));
        for (i, c) in img.coeffs.into_iter().enumerate() {
            m.set(i, j, c);
        }
    }
    m
}

/// Span of `{g·h : g ∈ generators, h ∈ basis of the complementary degree}`
/// inside `degree`, as a list of spanning vectors (not necessarily independent).
pub fn ideal_in_degree<A>(alg: &A, generators: &[RingElement], degree: usize) -> Vec<Vec<Rational>>
where
    A: GradedAlgebra + ?Sized,
{
    let mut span = Vec::new();
    for g in generators {
        if g.degree > degree || g.is_zero() {
            continue;
        }
        let other = degree - g.degree;
        for j in 0..alg.betti(other) {
            let p = mul(alg, g, &Element::basis(alg, other, j));
            if !p.is_zero() {
                span.push(p.coeffs);
            }
        }
    }
    span
}

/// Whether `v` lies in the span of `vectors` (all of length `dim`).
pub fn in_span(vectors: &[Vec<Rational>], v: &[Rational]) -> Result<bool> {
    let m = Matrix::from_columns(vectors, v.len())?;
    Ok(m.solve(v)?.is_some())
}

pub(crate) fn check_degree<A: GradedAlgebra + ?Sized, F>(alg: &A, x: &Element<F>) -> Result<()> {
    if x.coeffs.len() != alg.betti(x.degree) {
        return Err(Error::Dimension(format!(
            "element of degree {} has {} coefficients, expected {}",
            x.degree,
            x.coeffs.len(),
            alg.betti(x.degree)
        )));
    }
    Ok(())
}

/// Human-readable form of an element, e.g. `-2*[e13] + [e23]`.
pub fn format_element<A, F>(alg: &A, x: &Element<F>) -> String
where
    A: GradedAlgebra + ?Sized,
    F: Scalar,
{
    let parts: Vec<String> = x
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            let l = alg.basis_label(x.degree, i);
            if c.is_one() {
                format!("[{l}]")
            } else if (-c.clone()).is_one() {
                format!("-[{l}]")
            } else {
                let c = c.to_string();
                if c.contains(' ') {
                    format!("({c})*[{l}]")
                } else {
                    format!("{c}*[{l}]")
                }
            }
        })
        .collect();
    let mut out = String::new();
    for (i, p) in parts.iter().enumerate() {
        match (i, p.strip_prefix('-')) {
            (0, _) => out.push_str(p),
            (_, Some(rest)) => out += &format!(" - {rest}"),
            (_, None) => out += &format!(" + {p}"),
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}
