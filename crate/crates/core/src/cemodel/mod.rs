//! Exterior algebra on degree-1 generators and the Chevalley–Eilenberg
//! differential of a nilpotent Lie algebra given in structure notation.

mod form;
mod structure;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactla::{fmt_rational, Rational};

pub use form::parse_cochain;
pub use structure::{DSquaredViolation, StructureSpec};

/// Wedge of distinct generators, stored as a strictly increasing list of
/// zero-based indices. The empty monomial is the unit `1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(Vec<u8>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn generator(i: usize) -> Self {
        Monomial(vec![i as u8])
    }

    /// Sorts `indices`, returning the sign of the sorting permutation, or
    /// `None` when an index repeats (the wedge is zero).
    pub fn from_unsorted(indices: &[usize]) -> Option<(i8, Monomial)> {
        let mut v: Vec<u8> = indices.iter().map(|&i| i as u8).collect();
        let mut sign = 1i8;
        // insertion sort, counting transpositions
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
            if j > 0 && v[j - 1] == v[j] {
                return None;
            }
        }
        Some((sign, Monomial(v)))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Zero-based generator indices.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&i| i as usize)
    }

    /// Product `self ∧ other` as a sign and monomial, or `None` if zero.
    pub fn wedge(&self, other: &Monomial) -> Option<(i8, Monomial)> {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let mut sign = 1i8;
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    // other[j] jumps over the remaining elements of self
                    if (self.0.len() - i) % 2 == 1 {
                        sign = -sign;
                    }
                    out.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => return None,
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Some((sign, Monomial(out)))
    }

    /// Label such as `e13`, or `e1.10` once an index exceeds 9.
    pub fn label(&self) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let wide = self.0.iter().any(|&i| i >= 9);
        let mut parts = self.0.iter().map(|&i| (i as usize + 1).to_string());
        if wide {
            format!("e{}", parts.join("."))
        } else {
            format!("e{}", parts.collect::<String>())
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// All monomials of the given degree on `n` generators, in lexicographic order.
pub fn cochain_basis(n: usize, degree: usize) -> Result<Vec<Monomial>> {
    if degree > n {
        return Err(Error::Usage(format!(
            "degree {degree} exceeds generator count {n}"
        )));
    }
    Ok((0..n as u8).combinations(degree).map(Monomial).collect())
}

/// Homogeneous element of the exterior algebra with rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cochain {
    degree: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Cochain {
    pub fn zero(degree: usize) -> Self {
        Cochain {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Cochain::monomial(Monomial::unit(), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut x = Cochain::zero(m.degree());
        x.add_term(m, c);
        x
    }

    /// The generator `e_{i+1}` (zero-based `i`).
    pub fn generator(i: usize) -> Self {
        Cochain::monomial(Monomial::generator(i), Rational::one())
    }

    /// Builds a cochain from terms of one degree.
    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Result<Self> {
        let mut x = Cochain::zero(degree);
        for (m, c) in terms {
            if m.degree() != degree {
                return Err(Error::Dimension(format!(
                    "monomial {m} in a degree-{degree} cochain"
                )));
            }
            x.add_term(m, c);
        }
        Ok(x)
    }

    /// Coefficients against `basis` (which must contain every monomial present).
    pub fn from_vector(degree: usize, basis: &[Monomial], v: &[Rational]) -> Self {
        let mut x = Cochain::zero(degree);
        for (m, c) in basis.iter().zip(v) {
            x.add_term(m.clone(), c.clone());
        }
        x
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest generator index used plus one (0 for constants and zero).
    pub fn span_bound(&self) -> usize {
        self.terms
            .keys()
            .filter_map(|m| m.indices().last())
            .max()
            .map_or(0, |i| i + 1)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.degree(), self.degree);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        debug_assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Cochain {
        if c.is_zero() {
            return Cochain::zero(self.degree);
        }
        Cochain {
            degree: self.degree,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn neg(&self) -> Cochain {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.add(&other.neg())
    }

    /// `(−1)^{deg} · self`, the bar operation used in Massey products.
    pub fn bar(&self) -> Cochain {
        if self.degree % 2 == 1 {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Cochain) -> Cochain {
        let mut out = Cochain::zero(self.degree + other.degree);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((s, m)) = a.wedge(b) {
                    let c = ca * cb;
                    out.add_term(m, if s < 0 { -c } else { c });
                }
            }
        }
        out
    }

    /// Coefficients against `basis`; errors if a term is missing from it.
    pub fn to_vector(&self, basis: &[Monomial]) -> Result<Vec<Rational>> {
        let mut v = vec![Rational::zero(); basis.len()];
        for (m, c) in &self.terms {
            let i = basis
                .binary_search(m)
                .map_err(|_| Error::Dimension(format!("monomial {m} not in basis")))?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    /// Replaces each generator `e_i` by the degree-1 cochain `images[i]` and
    /// expands multiplicatively. This is the pullback along a linear map.
    pub fn substitute(&self, images: &[Cochain]) -> Cochain {
        let mut out = Cochain::zero(self.degree);
        for (m, c) in &self.terms {
            let mut acc = Cochain::one();
            for i in m.indices() {
                acc = acc.wedge(&images[i]);
            }
            for (mm, cc) in acc.terms {
                out.add_term(mm, cc * c);
            }
        }
        out
    }
}

impl fmt::Display for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if a.is_one() {
                write!(f, "{m}")?;
            } else if m.degree() == 0 {
                write!(f, "{}", fmt_rational(&a))?;
            } else {
                write!(f, "{}*{m}", fmt_rational(&a))?;
            }
        }
        Ok(())
    }
}
