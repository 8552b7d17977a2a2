use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Result, ZcdError};

/// Named prior families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PriorKind {
    /// Bayes-Laplace uniform prior.
    BL,
    /// Jeffreys-Jaynes `1/ρ` prior.
    JJ,
    /// Jeffreys-rule `ρ^{-1/2}` prior.
    JR,
    /// Maximum-entropy `t e^{-ρt}` prior.
    ME,
    /// Arbitrary Gamma-kernel prior.
    Custom,
}

impl PriorKind {
    pub const REFERENCE: [PriorKind; 4] =
        [PriorKind::BL, PriorKind::JJ, PriorKind::JR, PriorKind::ME];

    pub fn name(&self) -> &'static str {
        match self {
            PriorKind::BL => "BL",
            PriorKind::JJ => "JJ",
            PriorKind::JR => "JR",
            PriorKind::ME => "ME",
            PriorKind::Custom => "Custom",
        }
    }
}

impl fmt::Display for PriorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PriorKind {
    type Err = ZcdError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bl" => Ok(PriorKind::BL),
            "jj" => Ok(PriorKind::JJ),
            "jr" => Ok(PriorKind::JR),
            "me" => Ok(PriorKind::ME),
            "custom" => Ok(PriorKind::Custom),
            other => Err(ZcdError::InvalidInput(format!("unknown prior '{other}'"))),
        }
    }
}

/// A prior with density proportional to `ρ^{a-1} e^{-bρ}`.
///
/// `b` carries the units of time. `a = 0` is accepted here; whether the
/// resulting posterior is proper depends on the data and is decided by
/// [`posterior`](super::posterior).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PriorSpec {
    pub kind: PriorKind,
    pub a: f64,
    pub b: f64,
}

impl PriorSpec {
    /// The catalog prior of the given kind for measurements of length `t`.
    ///
    /// Only `ME` depends on `t` (`b = t`). `Custom` has no catalog entry.
    pub fn from_kind(kind: PriorKind, t: f64) -> Result<Self> {
        let (a, b) = match kind {
            PriorKind::BL => (1.0, 0.0),
            PriorKind::JJ => (0.0, 0.0),
            PriorKind::JR => (0.5, 0.0),
            PriorKind::ME => {
                if !(t > 0.0 && t.is_finite()) {
                    return Err(ZcdError::InvalidInput(format!(
                        "the ME prior needs a positive duration, got t = {t}"
                    )));
                }
                (1.0, t)
            }
            PriorKind::Custom => {
                return Err(ZcdError::InvalidInput(
                    "custom priors need explicit (a, b); use PriorSpec::custom".into(),
                ))
            }
        };
        Ok(PriorSpec { kind, a, b })
    }

    pub fn custom(a: f64, b: f64) -> Result<Self> {
        if !(a >= 0.0 && a.is_finite() && b >= 0.0 && b.is_finite()) {
            return Err(ZcdError::InvalidInput(format!(
                "custom prior needs finite a >= 0 and b >= 0, got a = {a}, b = {b}"
            )));
        }
        Ok(PriorSpec {
            kind: PriorKind::Custom,
            a,
            b,
        })
    }

    /// Short label, e.g. `ME` or `Custom(0.5,2)`.
    pub fn label(&self) -> String {
        match self.kind {
            PriorKind::Custom => format!("Custom({},{})", self.a, self.b),
            k => k.name().to_string(),
        }
    }
}

/// Catalog lookup, same as [`PriorSpec::from_kind`].
pub fn prior_params(kind: PriorKind, t: f64) -> Result<PriorSpec> {
    PriorSpec::from_kind(kind, t)
}

/// Scaling applied by [`prior_density`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum PriorNormalization {
    /// `1`, `1/ρ`, `ρ^{-1/2}`, `t e^{-ρt}` and `ρ^{a-1} e^{-bρ}` for custom priors.
    #[default]
    Raw,
    /// Rescaled so that every curve equals 1 at `ρ = 1`; for plotting only.
    ThroughUnit,
}

/// Prior density at `rho`. Unnormalized except for ME.
pub fn prior_density(prior: &PriorSpec, rho: f64, mode: PriorNormalization) -> Result<f64> {
    if !(rho >= 0.0) || rho.is_infinite() {
        return Err(ZcdError::domain(
            "prior_density",
            format!("rho must be finite and >= 0, got {rho}"),
        ));
    }
    if rho == 0.0 && prior.a < 1.0 {
        return Err(ZcdError::domain(
            "prior_density",
            format!("{} prior diverges at rho = 0", prior.label()),
        ));
    }
    let kernel = |r: f64| -> f64 {
        let power = if prior.a == 1.0 {
            1.0
        } else {
            r.powf(prior.a - 1.0)
        };
        power * (-prior.b * r).exp()
    };
    let raw = match prior.kind {
        PriorKind::ME => prior.b * kernel(rho),
        _ => kernel(rho),
    };
    Ok(match mode {
        PriorNormalization::Raw => raw,
        PriorNormalization::ThroughUnit => kernel(rho) / kernel(1.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog() {
        let me = prior_params(PriorKind::ME, 1.0).unwrap();
        assert_eq!((me.a, me.b), (1.0, 1.0));
        let jr = prior_params(PriorKind::JR, 7.0).unwrap();
        assert_eq!((jr.a, jr.b), (0.5, 0.0));
        let jj = prior_params(PriorKind::JJ, 7.0).unwrap();
        assert_eq!((jj.a, jj.b), (0.0, 0.0));
        let bl = prior_params(PriorKind::BL, 7.0).unwrap();
        assert_eq!((bl.a, bl.b), (1.0, 0.0));
        assert_eq!(prior_params(PriorKind::ME, 3.0).unwrap().b, 3.0);
        assert!(prior_params(PriorKind::ME, 0.0).is_err());
        assert!(prior_params(PriorKind::Custom, 1.0).is_err());
        assert!(PriorSpec::custom(-1.0, 0.0).is_err());
    }

    #[test]
    fn density_examples() {
        let raw = PriorNormalization::Raw;
        let me = prior_params(PriorKind::ME, 1.0).unwrap();
        assert_eq!(prior_density(&me, 0.0, raw).unwrap(), 1.0);
        let jj = prior_params(PriorKind::JJ, 1.0).unwrap();
        assert_eq!(prior_density(&jj, 2.0, raw).unwrap(), 0.5);
        let jr = prior_params(PriorKind::JR, 1.0).unwrap();
        assert_eq!(prior_density(&jr, 4.0, raw).unwrap(), 0.5);
        assert!(prior_density(&jj, 0.0, raw).is_err());
        assert!(prior_density(&jr, 0.0, raw).is_err());
        let bl = prior_params(PriorKind::BL, 1.0).unwrap();
        assert_eq!(prior_density(&bl, 123.0, raw).unwrap(), 1.0);
    }

    #[test]
    fn unit_normalization_passes_through_one() {
        for kind in PriorKind::REFERENCE {
            for t in [0.5, 1.0, 3.0] {
                let p = prior_params(kind, t).unwrap();
                let v = prior_density(&p, 1.0, PriorNormalization::ThroughUnit).unwrap();
                assert!((v - 1.0).abs() < 1e-15, "{kind} at t = {t}");
            }
        }
        let me = prior_params(PriorKind::ME, 2.0).unwrap();
        let v = prior_density(&me, 0.0, PriorNormalization::ThroughUnit).unwrap();
        assert!((v - 2f64.exp()).abs() < 1e-12);
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("me".parse::<PriorKind>().unwrap(), PriorKind::ME);
        assert_eq!("BL".parse::<PriorKind>().unwrap(), PriorKind::BL);
        assert!("xx".parse::<PriorKind>().is_err());
    }
}
