//! Group configuration files.
//!
//! TOML with two tables `A` and `B`, each holding the four matrix entries as
//! `[re, im]` pairs, and an optional `deform` table:
//!
//! ```toml
//! name = "reference"
//!
//! [A]
//! a = [0.7530050803975887, 0.0]
//! b = [2.781717304106738, 0.0]
//! c = [0.24394533738593735, 0.0]
//! d = [2.22918411835458, 0.0]
//!
//! [B]
//! # ...
//!
//! [deform]
//! bend = 0.3   # rotation angle about L applied to B
//! ```
//!
//! Matrices are normalized to determinant one on load.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::isometry::{MobiusMap, C64};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatrixConfig {
    pub a: [f64; 2],
    pub b: [f64; 2],
    pub c: [f64; 2],
    pub d: [f64; 2],
}

impl MatrixConfig {
    pub fn to_map(&self) -> Result<MobiusMap> {
        let z = |v: [f64; 2]| C64::new(v[0], v[1]);
        MobiusMap::new(z(self.a), z(self.b), z(self.c), z(self.d))
            .map_err(|e| Error::Config(format!("matrix cannot be normalized: {e}")))
    }

    pub fn from_map(m: &MobiusMap) -> Self {
        let v = |z: C64| [z.re, z.im];
        Self { a: v(m.a), b: v(m.b), c: v(m.c), d: v(m.d) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeformConfig {
    /// Bending angle about `L` at the far end of the interpolation path.
    pub bend: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupConfig {
    #[serde(default)]
    pub name: Option<String>,
    #[serde(rename = "A")]
    pub gen_a: MatrixConfig,
    #[serde(rename = "B")]
    pub gen_b: MatrixConfig,
    #[serde(default)]
    pub deform: Option<DeformConfig>,
}

impl GroupConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: GroupConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let all = [cfg.gen_a, cfg.gen_b];
        if all.iter().flat_map(|m| [m.a, m.b, m.c, m.d]).flatten().any(|x| !x.is_finite()) {
            return Err(Error::Config("non-finite matrix entry".into()));
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn generators(&self) -> Result<(MobiusMap, MobiusMap)> {
        Ok((self.gen_a.to_map()?, self.gen_b.to_map()?))
    }
}

/// The certified reference model group (also shipped as
/// `configs/reference.toml`).
pub const REFERENCE_CONFIG: &str = include_str!("../../../configs/reference.toml");

pub fn reference() -> GroupConfig {
    GroupConfig::parse(REFERENCE_CONFIG).expect("bundled reference config parses")
}
