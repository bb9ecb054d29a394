use num::One;

use super::{Cochain, Monomial};
use crate::error::{Error, Result};
use crate::exactla::Rational;

/// Parses a homogeneous cochain such as `14+23+56`, `2*1.2-1/3*3.4` or `e1`.
///
/// Each term is `[coefficient*]monomial`, the coefficient an integer or a
/// fraction `p/q`. A monomial is an optional `e` followed by its indices:
/// dot-separated (`1.10`), or, without dots, one digit per index when there
/// are at most 9 generators and a single index otherwise. Indices may come in
/// any order; the sign of the sorting permutation is applied. Constants are
/// built programmatically, not parsed.
pub fn parse_cochain(text: &str, n: usize) -> Result<Cochain> {
    let chars: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(err(0, "empty expression"));
    }
    let mut at = 0;
    let mut degree = None;
    let mut out: Option<Cochain> = None;
    let mut first = true;
    while at < chars.len() {
        let mut sign = Rational::one();
        match chars[at].1 {
            '+' | '-' => {
                if chars[at].1 == '-' {
                    sign = -sign;
                }
                at += 1;
            }
            _ if !first => return Err(err(chars[at].0, "expected '+' or '-'")),
            _ => {}
        }
        first = false;
        let start = chars.get(at).map_or(text.len(), |c| c.0);
        let end = chars[at..]
            .iter()
            .position(|&(_, c)| c == '+' || c == '-')
            .map_or(chars.len(), |p| at + p);
        let token: String = chars[at..end].iter().map(|&(_, c)| c).collect();
        at = end;
        if token.is_empty() {
            return Err(err(start, "empty term"));
        }
        let (coeff, mono) = match token.split_once('*') {
            Some((c, m)) => {
                let c = crate::exactla::parse_rational(c)
                    .ok_or_else(|| err(start, format!("bad coefficient '{c}'")))?;
                (c, m.to_string())
            }
            None => (Rational::one(), token.clone()),
        };
        let mono = mono.strip_prefix('e').unwrap_or(&mono);
        let indices = parse_indices(mono, n).map_err(|m| err(start, m))?;
        let d = indices.len();
        if *degree.get_or_insert(d) != d {
            return Err(err(start, "terms of different degrees"));
        }
        let acc = out.get_or_insert_with(|| Cochain::zero(d));
        if let Some((s, m)) = Monomial::from_unsorted(&indices) {
            let c = coeff * sign;
            acc.add_term(m, if s < 0 { -c } else { c });
        }
    }
    Ok(out.unwrap_or_else(|| Cochain::zero(0)))
}

fn parse_indices(body: &str, n: usize) -> std::result::Result<Vec<usize>, String> {
    if body.is_empty() || !body.chars().all(|c| c.is_ascii_digit() || c == '.') {
        return Err(format!("bad monomial '{body}'"));
    }
    let raw: Vec<usize> = if body.contains('.') {
        body.split('.')
            .map(|p| p.parse::<usize>().map_err(|_| format!("bad index in '{body}'")))
            .collect::<std::result::Result<_, _>>()?
    } else if n > 9 {
        vec![body.parse().map_err(|_| format!("bad index '{body}'"))?]
    } else {
        body.bytes().map(|b| (b - b'0') as usize).collect()
    };
    raw.into_iter()
        .map(|i| {
            if i == 0 || i > n {
                Err(format!("index {i} out of range 1..={n}"))
            } else {
                Ok(i - 1)
            }
        })
        .collect()
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        msg: msg.into(),
    }
}
