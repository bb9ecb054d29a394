use std::fmt;

use crate::cohomring::{mul, CohomologyRing, Element, RingElement, RingMap};
use crate::error::{Error, Result};
use crate::exactla::Rational;
use crate::lefschetz::{LefschetzReport, SymplecticClass};

/// Predicted relation between `dim ker ω̃^{n−i}` on the blow-up and
/// `dim ker ω^{n−i}` on the ambient manifold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelRelation {
    Equal,
    DropExactly(usize),
    DropAtLeast(usize),
    NoIncrease,
}

impl KernelRelation {
    pub fn holds(&self, ambient: usize, blowup: usize) -> bool {
        match *self {
            KernelRelation::Equal => blowup == ambient,
            KernelRelation::DropExactly(m) => blowup + m == ambient,
            KernelRelation::DropAtLeast(m) => blowup + m <= ambient,
            KernelRelation::NoIncrease => blowup <= ambient,
        }
    }
}

impl fmt::Display for KernelRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelRelation::Equal => write!(f, "equal"),
            KernelRelation::DropExactly(m) => write!(f, "drop exactly {m}"),
            KernelRelation::DropAtLeast(m) => write!(f, "drop at least {m}"),
            KernelRelation::NoIncrease => write!(f, "no increase"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LevelPrediction {
    pub k: usize,
    pub ambient_kernel: usize,
    pub relation: KernelRelation,
    pub reason: String,
}

impl LevelPrediction {
    pub fn holds(&self, blowup_kernel: usize) -> bool {
        self.relation.holds(self.ambient_kernel, blowup_kernel)
    }
}

/// Predictions for the blow-up along a symplectic surface.
///
/// Level `i > 2`: unchanged. Level 2: drops by one iff some class in
/// `ker ω^{n−2}` restricts nontrivially. Level 1: drops by at least two if
/// `i*(v₁v₂) ≠ 0` for some `v₁, v₂ ∈ ker ω^{n−1}`, otherwise does not grow.
pub fn predict_surface_blowup(
    ambient: &CohomologyRing,
    omega: &RingElement,
    sub: &CohomologyRing,
    imap: &RingMap,
) -> Result<Vec<LevelPrediction>> {
    if sub.dimension() != 2 {
        return Err(Error::Hypothesis(format!(
            "surface prediction needs a 2-dimensional submanifold, got dimension {}",
            sub.dimension()
        )));
    }
    let report = SymplecticClass::new(ambient, omega.clone())?.full_report()?;
    let mut out = Vec::with_capacity(report.levels.len());
    for lvl in &report.levels {
        let kernel = kernel_classes(&report, lvl.k);
        let (relation, reason) = match lvl.k {
            0 => (KernelRelation::Equal, "ω and ω̃ are symplectic".to_string()),
            1 => match restricted_product_witness(ambient, imap, &kernel) {
                Some((a, b)) => (
                    KernelRelation::DropAtLeast(2),
                    format!("i*(v{a}·v{b}) ≠ 0 for kernel basis classes"),
                ),
                None => (KernelRelation::NoIncrease, "i*(v₁v₂) = 0 on ker ω^{n−1}".to_string()),
            },
            2 => restriction_relation(imap, &kernel),
            _ => (KernelRelation::Equal, "degree above the surface".to_string()),
        };
        out.push(LevelPrediction {
            k: lvl.k,
            ambient_kernel: lvl.kernel_dim(),
            relation,
            reason,
        });
    }
    Ok(out)
}

/// Predictions for a symplectic submanifold `M^{2d}` with `2d < n`, using
/// `σ = i*ω` on `M`.
///
/// Levels `i > 2d` are unchanged; level `2d` drops by one iff some class in
/// `ker ω^{n−2d}` restricts nontrivially; levels `i < 2d` do not grow,
/// provided `M` has the Lefschetz property.
pub fn predict_general(
    ambient: &CohomologyRing,
    omega: &RingElement,
    sub: &CohomologyRing,
    imap: &RingMap,
) -> Result<Vec<LevelPrediction>> {
    let report = SymplecticClass::new(ambient, omega.clone())?.full_report()?;
    let n = report.n;
    let two_d = sub.dimension();
    if two_d >= n {
        return Err(Error::Hypothesis(format!(
            "2d < n is required, got 2d = {two_d} and n = {n}"
        )));
    }
    let sigma = imap.apply(omega);
    let sub_class = SymplecticClass::new(sub, sigma).map_err(|e| match e {
        Error::NotSymplectic => Error::Hypothesis("i*ω is not symplectic on the submanifold".into()),
        other => other,
    })?;
    if two_d > 0 {
        let sub_report = sub_class.full_report()?;
        if let Some(k) = sub_report.first_failure() {
            return Err(Error::Hypothesis(format!(
                "the submanifold fails the Lefschetz property at level {k}, needed for levels below {two_d}"
            )));
        }
    }
    let mut out = Vec::with_capacity(report.levels.len());
    for lvl in &report.levels {
        let i = lvl.k;
        let (relation, reason) = if i > two_d {
            (KernelRelation::Equal, format!("level {i} > 2d = {two_d}"))
        } else if i == two_d {
            restriction_relation(imap, &kernel_classes(&report, i))
        } else {
            (KernelRelation::NoIncrease, format!("level {i} < 2d with M Lefschetz"))
        };
        out.push(LevelPrediction {
            k: i,
            ambient_kernel: lvl.kernel_dim(),
            relation,
            reason,
        });
    }
    Ok(out)
}

fn kernel_classes(report: &LefschetzReport<Rational>, k: usize) -> Vec<RingElement> {
    report.levels[k]
        .kernel_basis
        .iter()
        .map(|v| Element::new(k, v.clone()))
        .collect()
}

fn restriction_relation(imap: &RingMap, kernel: &[RingElement]) -> (KernelRelation, String) {
    match kernel.iter().position(|v| !imap.apply(v).is_zero()) {
        Some(i) => (
            KernelRelation::DropExactly(1),
            format!("kernel basis class {} restricts nontrivially", i + 1),
        ),
        None => (KernelRelation::Equal, "the kernel restricts to zero".to_string()),
    }
}

fn restricted_product_witness(
    ambient: &CohomologyRing,
    imap: &RingMap,
    kernel: &[RingElement],
) -> Option<(usize, usize)> {
    for (a, v1) in kernel.iter().enumerate() {
        for (b, v2) in kernel.iter().enumerate().skip(a + 1) {
            let r = imap.apply(&mul(ambient, v1, v2));
            if !r.is_zero() {
                return Some((a + 1, b + 1));
            }
        }
    }
    None
}
