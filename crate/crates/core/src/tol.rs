//! Numerical tolerances shared by every module.
//!
//! The defaults are tuned for unit-scale matrices and words of length up to
//! about forty letters. A process-wide override can be installed once at
//! startup (the CLI reads it from `HYPESI_TOL`); library callers that never
//! install one get [`Tolerances::default`].

use std::sync::RwLock;

/// Tolerance bundle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Determinant normalization and matrix equality.
    pub det: f64,
    /// Trace comparisons (parabolic / half-turn detection).
    pub trace: f64,
    /// Fixed points and boundary point coincidence (chordal metric).
    pub fixed_point: f64,
    /// Perpendicularity residuals.
    pub perp: f64,
    /// Right-angle exclusion for crossing angles.
    pub angle: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            det: 1e-9,
            trace: 1e-9,
            fixed_point: 1e-9,
            perp: 1e-8,
            angle: 1e-7,
        }
    }
}

impl Tolerances {
    /// Scale every tolerance so that `base` replaces the default 1e-9 while
    /// keeping the relative spacing of the bundle.
    pub fn scaled(base: f64) -> Self {
        let k = base / 1e-9;
        let d = Self::default();
        Self {
            det: d.det * k,
            trace: d.trace * k,
            fixed_point: d.fixed_point * k,
            perp: d.perp * k,
            angle: d.angle * k,
        }
    }

    pub fn is_valid(&self) -> bool {
        [self.det, self.trace, self.fixed_point, self.perp, self.angle]
            .iter()
            .all(|t| t.is_finite() && *t > 0.0)
    }
}

static GLOBAL: RwLock<Option<Tolerances>> = RwLock::new(None);

/// The active tolerances.
pub fn get() -> Tolerances {
    GLOBAL
        .read()
        .map(|g| g.unwrap_or_default())
        .unwrap_or_default()
}

/// Install a process-wide override.
pub fn set(t: Tolerances) {
    if let Ok(mut g) = GLOBAL.write() {
        *g = Some(t);
    }
}
