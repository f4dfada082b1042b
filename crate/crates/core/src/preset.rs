//! Named parameter sets for the two figure-reproducing experiments.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::str::FromStr;

use crate::error::Error;
use crate::qutrit::EulerAngles;
use crate::stats::EvolutionConfig;

/// Parameter-set presets, named after the figures they reproduce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// Set 1: θ₁=0, χ₁=π/4, χ₂=3π/4, φ₁=φ₂=0. Maximizes the
    /// unambiguously-measured K; headline point θ₂=π/2.
    Fig2,
    /// Set 2: θ₁=0.831π, χ₁=χ₂=0.688π, φ₁=φ₂=0.423π. Ambiguous violation
    /// with zero signalling; headline point θ₂=0.831π.
    Fig3,
}

impl Preset {
    /// Template configuration at the preset's headline θ₂.
    pub fn config(self) -> EvolutionConfig {
        match self {
            Preset::Fig2 => set1_config(FRAC_PI_2),
            Preset::Fig3 => set2_config(0.831 * PI),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig2 => "fig2",
            Preset::Fig3 => "fig3",
        }
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "fig2" => Ok(Preset::Fig2),
            "fig3" => Ok(Preset::Fig3),
            other => Err(Error::invalid(format!("unknown preset '{other}' (expected fig2 or fig3)"))),
        }
    }
}

/// Set-1 configuration at the given θ₂.
pub fn set1_config(theta2: f64) -> EvolutionConfig {
    EvolutionConfig::new(
        EulerAngles::new(0.0, FRAC_PI_4, 0.0),
        EulerAngles::new(theta2, 3.0 * FRAC_PI_4, 0.0),
    )
}

/// Set-2 configuration at the given θ₂.
pub fn set2_config(theta2: f64) -> EvolutionConfig {
    EvolutionConfig::new(
        EulerAngles::new(0.831 * PI, 0.688 * PI, 0.423 * PI),
        EulerAngles::new(theta2, 0.688 * PI, 0.423 * PI),
    )
}
