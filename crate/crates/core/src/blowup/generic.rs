use num::Zero;

use super::BlowupRing;
use crate::cohomring::{pow, Element, RingElement};
use crate::error::{Error, Result};
use crate::exactla::{EpsScalar, Rational};
use crate::lefschetz::{LefschetzReport, SymplecticClass};

/// Exponents `m` of the sampled values `ε = 2^{−m}`.
pub const EPS_SCHEDULE: std::ops::RangeInclusive<u32> = 1..=20;

/// Ranks of one Lefschetz map along the ε schedule.
#[derive(Clone, Debug, PartialEq)]
pub struct Stabilization {
    pub k: usize,
    pub generic_rank: usize,
    /// `samples[i]` is the rank at `ε = 2^{−(i+1)}`.
    pub samples: Vec<usize>,
    /// Smallest `m` from which every sampled rank equals the generic rank.
    pub stable_from: u32,
    /// Every `0 < ε <` this bound gives the generic rank (`None`: all `ε ≠ 0`).
    pub bound: Option<Rational>,
}

/// Lefschetz report of `ω̃ = f*ω + ε·a` over ℚ(ε).
#[derive(Clone, Debug)]
pub struct GenericLefschetz {
    pub omega: Element<EpsScalar>,
    pub report: LefschetzReport<EpsScalar>,
    pub levels: Vec<Stabilization>,
    /// A concrete `ε = 2^{−m}` at which `ω̃` is symplectic in cohomology
    /// and every level has its generic rank.
    pub admissible_eps: Rational,
}

impl GenericLefschetz {
    pub fn kernel_dims(&self) -> Vec<usize> {
        self.report.kernel_dims()
    }
}

/// Runs the Lefschetz analysis of the blow-up with ε formal, then confirms
/// each generic rank by substitution along `ε = 2^{−m}`.
pub fn lefschetz_report_generic(ring: &BlowupRing, omega: &RingElement) -> Result<GenericLefschetz> {
    SymplecticClass::new(&ring.input().ambient, omega.clone())?;
    let base: Element<EpsScalar> = Element::from_rational(&ring.pullback(omega));
    let a: Element<EpsScalar> = Element::from_rational(&ring.exceptional());
    let omega_t = base.add(&a.scale(&EpsScalar::eps()));
    let class = match SymplecticClass::new(ring, omega_t.clone()) {
        Err(Error::NotSymplectic) => {
            return Err(Error::Hypothesis(
                "f*ω + εa has vanishing top power for every ε: inconsistent blow-up data".into(),
            ))
        }
        other => other?,
    };
    let report = class.full_report()?;

    let mut bound = top_power_bound(ring, &omega_t, class.n());
    let mut levels = Vec::with_capacity(report.levels.len());
    for lvl in &report.levels {
        let m = class.lefschetz_map(lvl.k)?;
        let samples = EPS_SCHEDULE
            .map(|e| m.rank_at(&dyadic(e)))
            .collect::<Result<Vec<_>>>()?;
        let stable_from = stable_index(&samples, lvl.rank).ok_or_else(|| {
            Error::Internal(format!(
                "level {}: sampled ranks {samples:?} never settle at the generic rank {}",
                lvl.k, lvl.rank
            ))
        })?;
        let minor = m.witness_minor();
        let level_bound = minor.numer().nonzero_root_lower_bound();
        bound = min_bound(bound, level_bound.clone());
        levels.push(Stabilization {
            k: lvl.k,
            generic_rank: lvl.rank,
            samples,
            stable_from,
            bound: level_bound,
        });
    }

    let admissible_eps = first_dyadic_below(bound.as_ref());
    for lvl in &report.levels {
        let r = class.lefschetz_map(lvl.k)?.rank_at(&admissible_eps)?;
        if r != lvl.rank {
            return Err(Error::Internal(format!(
                "level {}: rank {r} at ε = {admissible_eps} differs from the generic rank {}",
                lvl.k, lvl.rank
            )));
        }
    }
    Ok(GenericLefschetz {
        omega: omega_t,
        report,
        levels,
        admissible_eps,
    })
}

fn dyadic(m: u32) -> Rational {
    Rational::new(1.into(), num::BigInt::from(2).pow(m))
}

fn stable_index(samples: &[usize], generic: usize) -> Option<u32> {
    let last_bad = samples.iter().rposition(|&r| r != generic);
    let idx = last_bad.map_or(0, |i| i + 1);
    (idx < samples.len()).then(|| *EPS_SCHEDULE.start() + idx as u32)
}

/// Root bound for one nonzero coordinate of `ω̃ⁿ`.
fn top_power_bound(ring: &BlowupRing, omega: &Element<EpsScalar>, n: usize) -> Option<Rational> {
    let top = pow(ring, omega, n);
    top.coeffs
        .iter()
        .find(|c| !c.is_zero())
        .and_then(|c| c.numer().nonzero_root_lower_bound())
}

fn min_bound(a: Option<Rational>, b: Option<Rational>) -> Option<Rational> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if x < y { x } else { y }),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Largest `2^{−m}`, `m ≥ 1`, strictly below the bound.
fn first_dyadic_below(bound: Option<&Rational>) -> Rational {
    let mut e = dyadic(1);
    if let Some(b) = bound {
        while &e >= b {
            e /= Rational::from_integer(2.into());
        }
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::tests::torus_blowup;
    use crate::cemodel::parse_cochain;
    use crate::exactla::qf;

    #[test]
    fn stable_index_picks_the_tail() {
        assert_eq!(stable_index(&[1, 2, 2], 2), Some(2));
        assert_eq!(stable_index(&[2, 2, 2], 2), Some(1));
        assert_eq!(stable_index(&[2, 2, 1], 2), None);
    }

    #[test]
    fn dyadic_below_bound() {
        assert_eq!(first_dyadic_below(Some(&qf(1, 3))), qf(1, 4));
        assert_eq!(first_dyadic_below(Some(&qf(1, 4))), qf(1, 8));
        assert_eq!(first_dyadic_below(None), qf(1, 2));
    }

    #[test]
    fn torus_blowup_is_lefschetz() {
        let b = torus_blowup();
        let w = b.input().ambient.class_of(&parse_cochain("14+23+56", 6).unwrap()).unwrap();
        let g = lefschetz_report_generic(&b, &w).unwrap();
        assert!(g.report.lefschetz);
        assert_eq!(g.kernel_dims(), vec![0, 0, 0, 0]);
        for s in &g.levels {
            assert_eq!(s.samples.last(), Some(&s.generic_rank));
        }
        assert!(g.admissible_eps > Rational::zero());
    }
}
