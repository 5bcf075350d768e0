//! The single-document JSON configuration and its conversion into core
//! types. See the README for the documented schema.

use std::path::Path;

use dualcavity_core::charges::ChargeConstants;
use dualcavity_core::classical::ClassicalModeState;
use dualcavity_core::config::{CavityConfig, UnitSystem};
use dualcavity_core::fock::FockSpace;
use dualcavity_core::modes::{build_mode_set, ModeSet};
use dualcavity_core::Complex64;
use serde::{Deserialize, Serialize};

use crate::{CliError, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(rename = "L")]
    pub length: f64,
    #[serde(rename = "V")]
    pub volume: f64,
    #[serde(default)]
    pub unit_system: UnitSystemField,
    /// Defaults follow the unit system when omitted.
    pub c: Option<f64>,
    pub eps0: Option<f64>,
    pub mu0: Option<f64>,
    /// Reduced Planck constant; 1 unless stated.
    pub hbar: Option<f64>,
    /// Mass parameter for modes without an explicit one.
    pub m_default: Option<f64>,
    /// Elementary charge entering the currents.
    pub e_charge: Option<f64>,
    /// Fock truncation for the quantization commands.
    pub n_levels: Option<usize>,
    pub modes: Vec<ModeEntry>,
    #[serde(default)]
    pub grid: GridConfig,
    /// Exchange-ratio interval for the charge report.
    pub j_ratio: Option<JRatio>,
}

#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum UnitSystemField {
    Si,
    Cgs,
    #[default]
    Natural,
}

impl From<UnitSystemField> for UnitSystem {
    fn from(u: UnitSystemField) -> Self {
        match u {
            UnitSystemField::Si => UnitSystem::Si,
            UnitSystemField::Cgs => UnitSystem::Cgs,
            UnitSystemField::Natural => UnitSystem::Natural,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeEntry {
    pub alpha: u32,
    /// Per-mode mass parameter; `m_default` when omitted.
    pub m: Option<f64>,
    #[serde(rename = "C1_re", default)]
    pub c1_re: f64,
    #[serde(rename = "C1_im", default)]
    pub c1_im: f64,
    #[serde(rename = "C2_re", default)]
    pub c2_re: f64,
    #[serde(rename = "C2_im", default)]
    pub c2_im: f64,
    /// Boundary-condition constants of the charge operators; default 1.
    #[serde(rename = "K1")]
    pub k1: Option<f64>,
    #[serde(rename = "K2")]
    pub k2: Option<f64>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub nz: usize,
    pub nt: usize,
    /// Time span in units of the fundamental period.
    pub periods: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            nz: 64,
            nt: 32,
            periods: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JRatio {
    pub low: f64,
    pub high: f64,
}

impl Default for JRatio {
    fn default() -> Self {
        // Published range of the exchange-constant ratio.
        Self {
            low: 1.2e4,
            high: 1.6e4,
        }
    }
}

/// Everything the commands need, converted and validated.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub cavity: CavityConfig,
    pub mode_set: ModeSet,
    pub states: Vec<ClassicalModeState>,
    pub constants: Vec<ChargeConstants>,
    pub e_charge: f64,
    pub n_levels: usize,
    pub grid: GridConfig,
    pub j_ratio: JRatio,
}

impl Scenario {
    pub fn fock_space(&self) -> Result<FockSpace> {
        Ok(FockSpace::new(self.n_levels)?)
    }
}

pub fn load(path: &Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::ConfigRead {
        path: path.to_path_buf(),
        source,
    })?;
    let file: ConfigFile = serde_json::from_str(&text).map_err(|source| CliError::ConfigParse {
        path: path.to_path_buf(),
        source,
    })?;
    build_scenario(&file)
}

pub fn build_scenario(file: &ConfigFile) -> Result<Scenario> {
    let unit_system: UnitSystem = file.unit_system.into();
    let (c_default, eps0_default, mu0_default) = match unit_system {
        UnitSystem::Si => {
            let c = dualcavity_core::config::C_SI;
            let eps0 = dualcavity_core::config::EPS0_SI;
            (c, eps0, 1.0 / (eps0 * c * c))
        }
        UnitSystem::Cgs | UnitSystem::Natural => (1.0, 1.0, 1.0),
    };
    let hbar_default = match unit_system {
        UnitSystem::Si => dualcavity_core::config::HBAR_SI,
        _ => 1.0,
    };
    let cavity = CavityConfig::new(
        file.length,
        file.volume,
        file.c.unwrap_or(c_default),
        file.eps0.unwrap_or(eps0_default),
        file.mu0.unwrap_or(mu0_default),
        file.hbar.unwrap_or(hbar_default),
        unit_system,
        file.m_default.unwrap_or(1.0),
    )?;

    if file.modes.is_empty() {
        return Err(CliError::ConfigInvalid("modes must not be empty".into()));
    }
    for (idx, entry) in file.modes.iter().enumerate() {
        let expected = (idx + 1) as u32;
        if entry.alpha != expected {
            return Err(CliError::ConfigInvalid(format!(
                "modes[{idx}].alpha must be {expected} (indices run 1..n in order), got {}",
                entry.alpha
            )));
        }
    }
    let masses: Vec<f64> = file
        .modes
        .iter()
        .map(|m| m.m.unwrap_or(cavity.m_default))
        .collect();
    let mode_set = build_mode_set(&cavity, file.modes.len(), Some(&masses))?;

    let states: Vec<ClassicalModeState> = file
        .modes
        .iter()
        .map(|m| {
            ClassicalModeState::new(
                Complex64::new(m.c1_re, m.c1_im),
                Complex64::new(m.c2_re, m.c2_im),
            )
        })
        .collect();
    let constants: Vec<ChargeConstants> = file
        .modes
        .iter()
        .map(|m| ChargeConstants {
            k1: m.k1.unwrap_or(1.0),
            k2: m.k2.unwrap_or(1.0),
        })
        .collect();

    let n_levels = file.n_levels.unwrap_or(12);
    let grid = file.grid;
    if grid.nz < 2 || grid.nt < 2 || !(grid.periods > 0.0) {
        return Err(CliError::ConfigInvalid(
            "grid needs nz >= 2, nt >= 2, periods > 0".into(),
        ));
    }

    let j_ratio = file.j_ratio.unwrap_or_default();

    Ok(Scenario {
        cavity,
        mode_set,
        states,
        constants,
        e_charge: file.e_charge.unwrap_or(1.0),
        n_levels,
        grid,
        j_ratio,
    })
}
