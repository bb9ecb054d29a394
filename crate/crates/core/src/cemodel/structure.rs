use std::fmt;

use num::{One, Signed, Zero};

use super::{cochain_basis, Cochain, Monomial};
use crate::error::{Error, Result};
use crate::exactla::{fmt_rational, Matrix, Rational};

/// Differentials of the degree-1 generators of a Chevalley–Eilenberg complex.
///
/// `d e_i = Σ c · e_j ∧ e_k` with `j < k`, one degree-2 cochain per generator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StructureSpec {
    differentials: Vec<Cochain>,
}

/// A generator on which `d² ≠ 0`, with the nonzero value of `d(d e_i)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DSquaredViolation {
    /// Zero-based generator index.
    pub generator: usize,
    pub witness: Cochain,
}

impl From<DSquaredViolation> for Error {
    fn from(v: DSquaredViolation) -> Self {
        Error::DSquared {
            generator: v.generator + 1,
            witness: v.witness.to_string(),
        }
    }
}

impl StructureSpec {
    /// Builds a spec from degree-2 differentials on `differentials.len()` generators.
    pub fn new(differentials: Vec<Cochain>) -> Result<Self> {
        let n = differentials.len();
        for (i, d) in differentials.iter().enumerate() {
            if d.degree() != 2 {
                return Err(Error::Dimension(format!(
                    "d e{} has degree {}, expected 2",
                    i + 1,
                    d.degree()
                )));
            }
            if d.span_bound() > n {
                return Err(Error::Dimension(format!(
                    "d e{} references a generator beyond e{n}",
                    i + 1
                )));
            }
        }
        Ok(StructureSpec { differentials })
    }

    /// The abelian Lie algebra on `n` generators (a torus).
    pub fn abelian(n: usize) -> Self {
        StructureSpec {
            differentials: vec![Cochain::zero(2); n],
        }
    }

    /// Direct sum: generators of `other` are appended after those of `self`.
    pub fn product(&self, other: &StructureSpec) -> StructureSpec {
        let shift = self.generator_count();
        let images: Vec<Cochain> = (0..other.generator_count())
            .map(|i| Cochain::generator(i + shift))
            .collect();
        let mut differentials = self.differentials.clone();
        differentials.extend(other.differentials.iter().map(|d| d.substitute(&images)));
        StructureSpec { differentials }
    }

    pub fn generator_count(&self) -> usize {
        self.differentials.len()
    }

    /// `d e_i` for zero-based `i`.
    pub fn generator_differential(&self, i: usize) -> &Cochain {
        &self.differentials[i]
    }

    /// Parses structure notation such as `(0,0,12)` or `(0,0,1.2,0,0,4.5)`.
    ///
    /// Entries are `0` or signed sums of `[integer*]pair` terms, where a pair is
    /// two digits or two dot-separated indices. Whitespace is ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = Parser::new(text);
        p.expect('(')?;
        let mut raw: Vec<Vec<(Rational, usize, usize, usize)>> = Vec::new();
        loop {
            raw.push(p.entry()?);
            match p.next() {
                Some((_, ',')) => continue,
                Some((_, ')')) => break,
                Some((pos, c)) => return Err(parse_err(pos, format!("expected ',' or ')', found '{c}'"))),
                None => return Err(parse_err(text.len(), "unterminated structure, expected ')'")),
            }
        }
        if let Some((pos, c)) = p.next() {
            return Err(parse_err(pos, format!("trailing input '{c}'")));
        }
        let n = raw.len();
        let mut differentials = Vec::with_capacity(n);
        for terms in raw {
            let mut d = Cochain::zero(2);
            for (c, j, k, pos) in terms {
                if j == 0 || k == 0 || j > n || k > n {
                    return Err(parse_err(
                        pos,
                        format!("index out of range in pair ({j},{k}); generators are 1..={n}"),
                    ));
                }
                if j >= k {
                    return Err(parse_err(pos, format!("pair ({j},{k}) must have j < k")));
                }
                let (_, m) = Monomial::from_unsorted(&[j - 1, k - 1]).unwrap();
                d.add_term(m, c);
            }
            differentials.push(d);
        }
        Ok(StructureSpec { differentials })
    }

    /// Canonical notation; `parse(print(s)) == s`.
    pub fn print(&self) -> String {
        let wide = self.generator_count() > 9;
        let entries: Vec<String> = self
            .differentials
            .iter()
            .map(|d| {
                if d.is_zero() {
                    return "0".to_string();
                }
                let mut s = String::new();
                for (i, (m, c)) in d.terms().enumerate() {
                    let neg = c.is_negative();
                    if neg {
                        s.push('-');
                    } else if i > 0 {
                        s.push('+');
                    }
                    let a = c.abs();
                    if !a.is_one() {
                        s.push_str(&fmt_rational(&a));
                        s.push('*');
                    }
                    let idx: Vec<usize> = m.indices().map(|x| x + 1).collect();
                    if wide {
                        s.push_str(&format!("{}.{}", idx[0], idx[1]));
                    } else {
                        s.push_str(&format!("{}{}", idx[0], idx[1]));
                    }
                }
                s
            })
            .collect();
        format!("({})", entries.join(","))
    }

    /// Chevalley–Eilenberg differential, extended by the graded Leibniz rule.
    pub fn differential(&self, x: &Cochain) -> Cochain {
        let mut out = Cochain::zero(x.degree() + 1);
        for (m, c) in x.terms() {
            let idx: Vec<usize> = m.indices().collect();
            for (r, &g) in idx.iter().enumerate() {
                let dg = &self.differentials[g];
                if dg.is_zero() {
                    continue;
                }
                let prefix = monomial_of(&idx[..r]);
                let suffix = monomial_of(&idx[r + 1..]);
                let term = prefix.wedge(dg).wedge(&suffix);
                let sign = if r % 2 == 0 { c.clone() } else { -c.clone() };
                for (mm, cc) in term.terms() {
                    out.add_term(mm.clone(), cc * &sign);
                }
            }
        }
        out
    }

    /// Checks `d(d e_i) = 0` for every generator (the Jacobi identity).
    pub fn check_d_squared(&self) -> std::result::Result<(), DSquaredViolation> {
        for (i, d) in self.differentials.iter().enumerate() {
            let dd = self.differential(d);
            if !dd.is_zero() {
                return Err(DSquaredViolation {
                    generator: i,
                    witness: dd,
                });
            }
        }
        Ok(())
    }

    /// Matrix of `d: C^k → C^{k+1}` in the lexicographic monomial bases.
    pub fn differential_matrix(&self, k: usize) -> Result<Matrix<Rational>> {
        let n = self.generator_count();
        let src = cochain_basis(n, k)?;
        let tgt = if k < n { cochain_basis(n, k + 1)? } else { Vec::new() };
        let mut m = Matrix::zeros(tgt.len(), src.len());
        for (j, mono) in src.iter().enumerate() {
            if k == n {
                break;
            }
            let img = self.differential(&Cochain::monomial(mono.clone(), Rational::one()));
            for (mm, c) in img.terms() {
                let i = tgt.binary_search(mm).expect("differential stays in basis");
                m.set(i, j, c.clone());
            }
        }
        Ok(m)
    }
}

impl fmt::Display for StructureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.print())
    }
}

fn monomial_of(idx: &[usize]) -> Cochain {
    let (_, m) = Monomial::from_unsorted(idx).expect("indices are distinct");
    Cochain::monomial(m, Rational::one())
}

fn parse_err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        msg: msg.into(),
    }
}

/// Character cursor over the non-whitespace characters, keeping byte offsets.
struct Parser {
    chars: Vec<(usize, char)>,
    at: usize,
    len: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser {
            chars: text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
            at: 0,
            len: text.len(),
        }
    }

    fn peek(&self) -> Option<(usize, char)> {
        self.chars.get(self.at).copied()
    }

    fn peek_at(&self, off: usize) -> Option<char> {
        self.chars.get(self.at + off).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.peek().map_or(self.len, |(p, _)| p)
    }

    fn next(&mut self) -> Option<(usize, char)> {
        let c = self.peek();
        if c.is_some() {
            self.at += 1;
        }
        c
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.next() {
            Some((_, c)) if c == want => Ok(()),
            Some((pos, c)) => Err(parse_err(pos, format!("expected '{want}', found '{c}'"))),
            None => Err(parse_err(self.len, format!("expected '{want}'"))),
        }
    }

    fn digits(&mut self) -> Result<(usize, String)> {
        let pos = self.pos();
        let mut s = String::new();
        while let Some((_, c)) = self.peek() {
            if c.is_ascii_digit() {
                s.push(c);
                self.at += 1;
            } else {
                break;
            }
        }
        if s.is_empty() {
            return Err(match self.peek() {
                Some((p, c)) => parse_err(p, format!("expected a digit, found '{c}'")),
                None => parse_err(self.len, "expected a digit"),
            });
        }
        Ok((pos, s))
    }

    fn entry(&mut self) -> Result<Vec<(Rational, usize, usize, usize)>> {
        if self.peek().map(|(_, c)| c) == Some('0') && matches!(self.peek_at(1), Some(',') | Some(')')) {
            self.at += 1;
            return Ok(Vec::new());
        }
        let mut terms = Vec::new();
        let mut sign = Rational::one();
        if let Some((_, c @ ('+' | '-'))) = self.peek() {
            if c == '-' {
                sign = -sign;
            }
            self.at += 1;
        }
        loop {
            let (coeff, j, k, pos) = self.term()?;
            terms.push((coeff * &sign, j, k, pos));
            match self.peek() {
                Some((_, '+')) => sign = Rational::one(),
                Some((_, '-')) => sign = -Rational::one(),
                _ => break,
            }
            self.at += 1;
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<(Rational, usize, usize, usize)> {
        let (pos, first) = self.digits()?;
        if let Some((_, '*')) = self.peek() {
            self.at += 1;
            let coeff: num::BigInt = first.parse().expect("digits");
            if coeff.is_zero() {
                return Err(parse_err(pos, "zero coefficient"));
            }
            let (ppos, lead) = self.digits()?;
            let (j, k) = self.pair(ppos, lead)?;
            return Ok((Rational::from_integer(coeff), j, k, ppos));
        }
        let (j, k) = self.pair(pos, first)?;
        Ok((Rational::one(), j, k, pos))
    }

    fn pair(&mut self, pos: usize, lead: String) -> Result<(usize, usize)> {
        if let Some((_, '.')) = self.peek() {
            self.at += 1;
            let (_, second) = self.digits()?;
            let j = lead.parse().map_err(|_| parse_err(pos, "index too large"))?;
            let k = second.parse().map_err(|_| parse_err(pos, "index too large"))?;
            return Ok((j, k));
        }
        let b = lead.as_bytes();
        if b.len() != 2 {
            return Err(parse_err(
                pos,
                format!("pair '{lead}' must be two digits or use the dot form j.k"),
            ));
        }
        Ok(((b[0] - b'0') as usize, (b[1] - b'0') as usize))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cemodel::parse_cochain;
    use crate::exactla::q;

    fn c(text: &str, n: usize) -> Cochain {
        parse_cochain(text, n).unwrap()
    }

    #[test]
    fn parses_heisenberg() {
        let s = StructureSpec::parse("(0,0,12)").unwrap();
        assert_eq!(s.generator_count(), 3);
        assert!(s.generator_differential(0).is_zero());
        assert!(s.generator_differential(1).is_zero());
        assert_eq!(s.generator_differential(2), &c("12", 3));
    }

    #[test]
    fn parses_hxh_and_dot_form() {
        let s = StructureSpec::parse("(0,0,12,0,0,45)").unwrap();
        assert_eq!(s.generator_count(), 6);
        assert_eq!(s.generator_differential(5), &c("45", 6));
        assert_eq!(StructureSpec::parse(" ( 0, 0,1.2 ,0,0,4.5)").unwrap(), s);
    }

    #[test]
    fn coefficients_and_signs() {
        let s = StructureSpec::parse("(0,0,0,2*12-13,-23)").unwrap();
        assert_eq!(s.generator_differential(3), &c("2*12-13", 5));
        assert_eq!(s.generator_differential(4), &c("-23", 5));
    }

    #[test]
    fn parse_errors_carry_position() {
        match StructureSpec::parse("(0,0,21)") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        match StructureSpec::parse("(0,0,14)") {
            Err(Error::Parse { pos, msg }) => {
                assert_eq!(pos, 5);
                assert!(msg.contains("out of range"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(StructureSpec::parse("(0,0,123)"), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(StructureSpec::parse("(0,0,1x)"), Err(Error::Parse { .. })));
        assert!(matches!(StructureSpec::parse("(0,0"), Err(Error::Parse { .. })));
        assert!(matches!(StructureSpec::parse("(0,0) x"), Err(Error::Parse { .. })));
        assert!(matches!(StructureSpec::parse(""), Err(Error::Parse { pos: 0, .. })));
    }

    #[test]
    fn differential_on_heisenberg() {
        let s = StructureSpec::parse("(0,0,12)").unwrap();
        assert_eq!(s.differential(&c("3", 3)), c("12", 3));
        assert!(s.differential(&c("12", 3)).is_zero());
        assert!(s.differential(&c("13", 3)).is_zero());
        assert!(s.differential(&Cochain::one().scale(&q(5))).is_zero());
    }

    #[test]
    fn d_squared_checks() {
        assert!(StructureSpec::parse("(0,0,12)").unwrap().check_d_squared().is_ok());
        assert!(StructureSpec::parse("(0,0,12,0,0,45)").unwrap().check_d_squared().is_ok());
        let v = StructureSpec::parse("(0,0,12,34)")
            .unwrap()
            .check_d_squared()
            .unwrap_err();
        assert_eq!(v.generator, 3);
        assert_eq!(v.witness, c("124", 4));
    }

    #[test]
    fn print_round_trip() {
        for s in ["(0,0,12)", "(0,0,12,0,0,45)", "(0,0,-12,2*13-23,0)"] {
            assert_eq!(StructureSpec::parse(s).unwrap().print(), s);
        }
        let wide = "(0,0,1.2,0,0,0,0,0,0,0,1.10)";
        assert_eq!(StructureSpec::parse(wide).unwrap().print(), wide);
    }

    #[test]
    fn product_shifts_indices() {
        let h = StructureSpec::parse("(0,0,12)").unwrap();
        assert_eq!(h.product(&h), StructureSpec::parse("(0,0,12,0,0,45)").unwrap());
    }

    #[test]
    fn differential_matrix_shape() {
        let s = StructureSpec::parse("(0,0,12)").unwrap();
        let d1 = s.differential_matrix(1).unwrap();
        assert_eq!((d1.rows(), d1.cols()), (3, 3));
        assert_eq!(d1.rank(), 1);
        let d3 = s.differential_matrix(3).unwrap();
        assert_eq!((d3.rows(), d3.cols()), (0, 1));
    }
}
