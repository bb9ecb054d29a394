//! JSON description of a blow-up `X̃ → X` along `M`.
//!
//! ```json
//! {
//!   "ambient": "(0,0,12,0,0,45)",
//!   "sub": "(0,0)",
//!   "frame": [[1,1,1,0,0,0],[0,0,0,1,1,1]],
//!   "omega": "14+23+56",
//!   "checks": ["betti","lefschetz","massey","predictions"]
//! }
//! ```
//!
//! `ambient` is a structure string or `CPn:<n>`; `sub` is `point` or the
//! structure string of a torus `(0,…,0)` whose generators are the frame
//! vectors. `chern[j-1]` lists the coordinates of `c_j` in `H^{2j}(M)`
//! (zero when omitted). Rational entries may be integers or strings like
//! `"-1/3"`.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::blowup::{BlowupInput, BlowupRing};
use crate::cemodel::{parse_cochain, StructureSpec};
use crate::cohomring::{projective_space_ring, restriction_from_subtorus, CohomologyRing, Element, RingElement, RingMap};
use crate::error::{Error, Result};
use crate::exactla::{parse_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Betti,
    Lefschetz,
    Massey,
    Predictions,
}

impl Check {
    pub const ALL: [Check; 4] = [Check::Betti, Check::Lefschetz, Check::Massey, Check::Predictions];
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Check::Betti => "betti",
            Check::Lefschetz => "lefschetz",
            Check::Massey => "massey",
            Check::Predictions => "predictions",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Int(i64),
    Text(String),
}

impl Coefficient {
    pub fn value(&self) -> Result<Rational> {
        match self {
            Coefficient::Int(v) => Ok(Rational::from_integer((*v).into())),
            Coefficient::Text(s) => parse_rational(s).ok_or_else(|| Error::Usage(format!("not a rational number: {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlowupConfig {
    pub ambient: String,
    pub sub: String,
    #[serde(default)]
    pub frame: Vec<Vec<Coefficient>>,
    #[serde(default)]
    pub chern: Vec<Vec<Coefficient>>,
    /// Symplectic class on the ambient; defaults to `h` on `CPn:<n>`.
    #[serde(default)]
    pub omega: Option<String>,
    /// `x;y;z` cochains on the ambient for the Massey check. When absent the
    /// first nontrivial product of degrees (1,1,1) is used.
    #[serde(default)]
    pub massey_inputs: Option<String>,
    #[serde(default = "all_checks")]
    pub checks: Vec<Check>,
}

fn all_checks() -> Vec<Check> {
    Check::ALL.to_vec()
}

/// A config resolved into rings and classes.
#[derive(Debug)]
pub struct BlowupSetup {
    pub blowup: BlowupRing,
    pub omega: RingElement,
    pub massey_inputs: Option<[RingElement; 3]>,
    pub checks: Vec<Check>,
}

impl BlowupConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            pos: e.column(),
            msg: format!("config line {}: {e}", e.line()),
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Builds the rings; structures with more than `max_dim` generators are
    /// refused before any linear algebra happens.
    pub fn build(&self, max_dim: usize) -> Result<BlowupSetup> {
        let (ambient, omega) = self.ambient_ring(max_dim)?;
        let (sub, imap) = self.sub_ring(&ambient, max_dim)?;
        let chern = self.chern_classes(&sub)?;
        let massey_inputs = match &self.massey_inputs {
            None => None,
            Some(text) => Some(parse_triple(&ambient, text)?),
        };
        let blowup = BlowupRing::build(BlowupInput::new(ambient, sub, imap, chern)?)?;
        let mut checks = self.checks.clone();
        checks.sort();
        checks.dedup();
        Ok(BlowupSetup {
            blowup,
            omega,
            massey_inputs,
            checks,
        })
    }

    fn ambient_ring(&self, max_dim: usize) -> Result<(CohomologyRing, RingElement)> {
        if let Some(n) = self.ambient.trim().strip_prefix("CPn:") {
            let n: usize = n
                .trim()
                .parse()
                .map_err(|_| Error::Usage(format!("bad projective space {:?}", self.ambient)))?;
            if n == 0 || 2 * n > max_dim {
                return Err(Error::Dimension(format!("CPn:{n} is outside 1..={}", max_dim / 2)));
            }
            let ring = projective_space_ring(n);
            let scale = match self.omega.as_deref().map(str::trim) {
                None | Some("h") => Rational::from_integer(1.into()),
                Some(s) => s
                    .strip_suffix("h")
                    .map(|c| c.trim_end_matches('*'))
                    .and_then(parse_rational)
                    .ok_or_else(|| Error::Usage(format!("omega on CPn must be a multiple of h, got {s:?}")))?,
            };
            return Ok((ring, Element::new(2, vec![scale])));
        }
        let spec = parse_structure(&self.ambient, max_dim)?;
        let ring = CohomologyRing::from_spec(&spec)?;
        let text = self
            .omega
            .as_deref()
            .ok_or_else(|| Error::Usage("\"omega\" is required for a nilmanifold ambient".into()))?;
        let omega = ring.class_of(&parse_cochain(text, ring.dimension())?)?;
        Ok((ring, omega))
    }

    fn sub_ring(&self, ambient: &CohomologyRing, max_dim: usize) -> Result<(CohomologyRing, RingMap)> {
        if self.sub.trim() == "point" {
            if !self.frame.is_empty() {
                return Err(Error::Usage("a point takes no frame".into()));
            }
            let pt = CohomologyRing::point();
            let imap = RingMap::augmentation(ambient, &pt);
            return Ok((pt, imap));
        }
        if !ambient.is_ce_backed() {
            return Err(Error::Usage("subtori need a nilmanifold ambient".into()));
        }
        let spec = parse_structure(&self.sub, max_dim)?;
        let r = spec.generator_count();
        if r > 0 && !spec.differential_matrix(1)?.is_zero() {
            return Err(Error::Usage(format!("sub {:?} is not a torus", self.sub)));
        }
        if self.frame.len() != r {
            return Err(Error::Dimension(format!("sub has {r} generators but the frame has {} vectors", self.frame.len())));
        }
        let frame = self
            .frame
            .iter()
            .map(|row| row.iter().map(Coefficient::value).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let res = restriction_from_subtorus(ambient, &frame)?;
        Ok((res.torus, res.map))
    }

    fn chern_classes(&self, sub: &CohomologyRing) -> Result<Option<Vec<RingElement>>> {
        if self.chern.is_empty() {
            return Ok(None);
        }
        let classes = self
            .chern
            .iter()
            .enumerate()
            .map(|(j, row)| {
                let coeffs = row.iter().map(Coefficient::value).collect::<Result<Vec<_>>>()?;
                sub.element(2 * (j + 1), coeffs)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Some(classes))
    }
}

/// Parses a structure string and enforces the generator limit.
pub fn parse_structure(text: &str, max_dim: usize) -> Result<StructureSpec> {
    let spec = StructureSpec::parse(text)?;
    if spec.generator_count() > max_dim {
        return Err(Error::Dimension(format!(
            "{} generators exceed the limit of {max_dim} (set LEFLAB_MAX_DIM to raise it)",
            spec.generator_count()
        )));
    }
    Ok(spec)
}

/// Parses `x;y;z` into three cohomology classes of a CE-backed ring.
pub fn parse_triple(ring: &CohomologyRing, text: &str) -> Result<[RingElement; 3]> {
    let parts: Vec<&str> = text.split(';').collect();
    let [x, y, z] = parts.as_slice() else {
        return Err(Error::Usage(format!("expected three classes separated by ';', got {text:?}")));
    };
    let class = |s: &str| ring.class_of(&parse_cochain(s, ring.dimension())?);
    Ok([class(x)?, class(y)?, class(z)?])
}
