//! Hermite–Biehler functions generating the space.

use super::jet::Jet;
use crate::{Cplx, DbError, Result, I};
use serde::{Deserialize, Serialize};

/// A Hermite–Biehler function `e` with `|e(z)| > |e(z̄)|` on the upper half plane.
///
/// `PaleyWiener { a }` is `e(z) = exp(-iaz)`; `Shifted(base)` is `(z + i)·base(z)`.
/// At most one level of shifting is allowed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum HbRealization {
    PaleyWiener { a: f64 },
    Shifted(Box<HbRealization>),
}

impl HbRealization {
    pub fn paley_wiener(a: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(DbError::invalid(format!("bandwidth a must be positive, got {a}")));
        }
        Ok(HbRealization::PaleyWiener { a })
    }

    pub fn shifted(base: HbRealization) -> Result<Self> {
        match base {
            HbRealization::PaleyWiener { .. } => Ok(HbRealization::Shifted(Box::new(base))),
            HbRealization::Shifted(_) => {
                Err(DbError::invalid("shifted realizations nest at most one level"))
            }
        }
    }

    /// Exponential type of `e`.
    pub fn bandwidth(&self) -> f64 {
        match self {
            HbRealization::PaleyWiener { a } => *a,
            HbRealization::Shifted(b) => b.bandwidth(),
        }
    }

    pub fn is_paley_wiener(&self) -> bool {
        matches!(self, HbRealization::PaleyWiener { .. })
    }

    pub fn e(&self, z: Cplx) -> Cplx {
        match self {
            HbRealization::PaleyWiener { a } => (-I * *a * z).exp(),
            HbRealization::Shifted(b) => (z + I) * b.e(z),
        }
    }

    pub fn e_sharp(&self, z: Cplx) -> Cplx {
        match self {
            HbRealization::PaleyWiener { a } => (I * *a * z).exp(),
            HbRealization::Shifted(b) => (z - I) * b.e_sharp(z),
        }
    }

    pub fn e_jet(&self, z: Cplx, len: usize) -> Jet {
        match self {
            HbRealization::PaleyWiener { a } => Jet::exponential(self.e(z), -I * *a, len),
            HbRealization::Shifted(b) => b.e_jet(z, len).mul_affine(z, -I),
        }
    }

    pub fn e_sharp_jet(&self, z: Cplx, len: usize) -> Jet {
        match self {
            HbRealization::PaleyWiener { a } => Jet::exponential(self.e_sharp(z), I * *a, len),
            HbRealization::Shifted(b) => b.e_sharp_jet(z, len).mul_affine(z, I),
        }
    }

    /// Weight `1/|e(x)|²` of the space norm on the real line.
    pub fn weight(&self, x: f64) -> f64 {
        match self {
            HbRealization::PaleyWiener { .. } => 1.0,
            HbRealization::Shifted(b) => b.weight(x) / (x * x + 1.0),
        }
    }
}

/// Outcome of a Hermite–Biehler check on a sample set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HbReport {
    pub ok: bool,
    /// Smallest `|e(z)| - |e(z̄)|` observed.
    pub worst_margin: f64,
    pub worst_at: Cplx,
}

/// Checks `|e(z)| > |e(z̄)|` on samples from the open upper half plane.
pub fn hb_verify(e: &HbRealization, samples: &[Cplx]) -> Result<HbReport> {
    if samples.is_empty() {
        return Err(DbError::EmptySampleSet);
    }
    let mut worst = f64::INFINITY;
    let mut worst_at = samples[0];
    for &z in samples {
        if z.im <= 0.0 {
            return Err(DbError::invalid(format!("sample {z} is not in the upper half plane")));
        }
        let margin = e.e(z).norm() - e.e(z.conj()).norm();
        if margin < worst {
            worst = margin;
            worst_at = z;
        }
    }
    Ok(HbReport { ok: worst > 0.0, worst_margin: worst, worst_at })
}
