//! Orientation-preserving isometries of H³ as normalized 2×2 complex matrices.
//!
//! A [`MobiusMap`] always has determinant one. The matrix is only defined up
//! to a global sign, so equality goes through [`MobiusMap::approx_eq`] which
//! compares against both signs.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// A point of the Riemann sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryPoint {
    Finite(C64),
    Infinity,
}

impl BoundaryPoint {
    pub fn real(x: f64) -> Self {
        BoundaryPoint::Finite(C64::new(x, 0.0))
    }

    pub fn finite(&self) -> Option<C64> {
        match self {
            BoundaryPoint::Finite(z) => Some(*z),
            BoundaryPoint::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, BoundaryPoint::Infinity)
    }

    /// Chordal distance on the unit-diameter-two Riemann sphere, in `[0, 2]`.
    pub fn chordal(&self, other: &BoundaryPoint) -> f64 {
        match (self, other) {
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => 0.0,
            (BoundaryPoint::Finite(z), BoundaryPoint::Infinity)
            | (BoundaryPoint::Infinity, BoundaryPoint::Finite(z)) => 2.0 / (1.0 + z.norm_sqr()).sqrt(),
            (BoundaryPoint::Finite(z), BoundaryPoint::Finite(w)) => {
                2.0 * (z - w).norm() / ((1.0 + z.norm_sqr()) * (1.0 + w.norm_sqr())).sqrt()
            }
        }
    }

    /// Is the point on the extended real line (within `eps` of it)?
    pub fn is_real(&self, eps: f64) -> bool {
        match self {
            BoundaryPoint::Infinity => true,
            BoundaryPoint::Finite(z) => z.im.abs() <= eps * (1.0 + z.norm()),
        }
    }

    pub fn conj(&self) -> Self {
        match self {
            BoundaryPoint::Finite(z) => BoundaryPoint::Finite(z.conj()),
            BoundaryPoint::Infinity => BoundaryPoint::Infinity,
        }
    }
}

impl From<C64> for BoundaryPoint {
    fn from(z: C64) -> Self {
        BoundaryPoint::Finite(z)
    }
}

impl From<f64> for BoundaryPoint {
    fn from(x: f64) -> Self {
        BoundaryPoint::real(x)
    }
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryPoint::Infinity => write!(f, "inf"),
            BoundaryPoint::Finite(z) => write!(f, "{:.17e}{:+.17e}i", z.re, z.im),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IsometryClass {
    Identity,
    Parabolic,
    Elliptic,
    Hyperbolic,
    LoxodromicNonreal,
}

impl IsometryClass {
    pub fn name(&self) -> &'static str {
        match self {
            IsometryClass::Identity => "identity",
            IsometryClass::Parabolic => "parabolic",
            IsometryClass::Elliptic => "elliptic",
            IsometryClass::Hyperbolic => "hyperbolic",
            IsometryClass::LoxodromicNonreal => "loxodromic",
        }
    }

    /// Hyperbolic or strictly loxodromic: two fixed points and a translation.
    pub fn is_loxodromic(&self) -> bool {
        matches!(self, IsometryClass::Hyperbolic | IsometryClass::LoxodromicNonreal)
    }
}

/// `z ↦ (az + b)/(cz + d)` with `ad − bc = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusMap {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

impl MobiusMap {
    pub const IDENTITY: MobiusMap = MobiusMap { a: ONE, b: ZERO, c: ZERO, d: ONE };

    /// Normalize `(a b; c d)` to determinant one.
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Result<Self> {
        let det = a * d - b * c;
        let scale = a.norm_sqr() + b.norm_sqr() + c.norm_sqr() + d.norm_sqr();
        if !(det.norm() > 1e-300 && det.norm() > 1e-28 * scale) || !det.is_finite() {
            return Err(Error::Singular(det.norm()));
        }
        let s = det.sqrt();
        Ok(Self { a: a / s, b: b / s, c: c / s, d: d / s })
    }

    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    /// `diag(λ, 1/λ)`.
    pub fn diagonal(lambda: C64) -> Self {
        Self { a: lambda, b: ZERO, c: ZERO, d: ONE / lambda }
    }

    pub fn det(&self) -> C64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> C64 {
        self.a + self.d
    }

    pub fn entries(&self) -> [C64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn neg(&self) -> Self {
        Self { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MobiusMap) -> MobiusMap {
        MobiusMap {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    pub fn inverse(&self) -> MobiusMap {
        MobiusMap { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// `self ∘ m ∘ self⁻¹`.
    pub fn conjugate(&self, m: &MobiusMap) -> MobiusMap {
        self.compose(m).compose(&self.inverse())
    }

    pub fn apply(&self, z: BoundaryPoint) -> BoundaryPoint {
        match z {
            BoundaryPoint::Infinity => {
                if self.c == ZERO {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite(self.a / self.c)
                }
            }
            BoundaryPoint::Finite(z) => {
                let den = self.c * z + self.d;
                if den == ZERO {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite((self.a * z + self.b) / den)
                }
            }
        }
    }

    fn scale(&self) -> f64 {
        self.entries().iter().map(|e| e.norm()).fold(1.0, f64::max)
    }

    /// Matrix equality up to global sign, relative to the entry scale.
    pub fn approx_eq(&self, other: &MobiusMap, eps: f64) -> bool {
        self.sign_distance(other) <= eps * self.scale().max(other.scale())
    }

    /// `min(‖self − other‖∞, ‖self + other‖∞)`.
    pub fn sign_distance(&self, other: &MobiusMap) -> f64 {
        let x = self.entries();
        let y = other.entries();
        let plus = x.iter().zip(&y).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max);
        let minus = x.iter().zip(&y).map(|(p, q)| (p + q).norm()).fold(0.0, f64::max);
        plus.min(minus)
    }

    pub fn is_identity(&self) -> bool {
        self.approx_eq(&MobiusMap::IDENTITY, tol::get().det)
    }

    pub fn is_real(&self, eps: f64) -> bool {
        let s = self.scale();
        self.entries().iter().all(|e| e.im.abs() <= eps * s)
    }

    pub fn classify(&self) -> IsometryClass {
        if self.is_identity() {
            return IsometryClass::Identity;
        }
        let eps = tol::get().trace;
        let t = self.trace();
        if t.im.abs() > eps * (1.0 + t.norm()) {
            return IsometryClass::LoxodromicNonreal;
        }
        let r = t.re.abs();
        if (r - 2.0).abs() <= eps * 2.0 {
            IsometryClass::Parabolic
        } else if r < 2.0 {
            IsometryClass::Elliptic
        } else {
            IsometryClass::Hyperbolic
        }
    }

    pub fn is_half_turn(&self) -> bool {
        self.trace().norm() < tol::get().trace * self.scale() && !self.is_identity()
    }

    /// Complex translation length `λ` with `2 cosh(λ/2) = ±trace`, real part
    /// nonnegative.
    pub fn complex_length(&self) -> C64 {
        let half = self.trace() / 2.0;
        let mut l = 2.0 * half.acosh();
        if l.re < 0.0 {
            l = -l;
        }
        l
    }

    /// Real translation length.
    pub fn translation_length(&self) -> f64 {
        self.complex_length().re
    }

    /// Roots of `cz² + (d − a)z − b = 0` on the Riemann sphere.
    pub fn fixed_points(&self) -> Result<Vec<BoundaryPoint>> {
        if self.is_identity() {
            return Err(Error::NoFixedPoints);
        }
        let eps = tol::get().fixed_point;
        let s = self.scale();
        let beta = self.d - self.a;
        let gamma = -self.b;
        if self.c.norm() <= eps * 1e-3 * s {
            // c = 0: ∞ is fixed, plus the finite root of βz + γ = 0.
            if beta.norm() <= eps * s {
                return Ok(vec![BoundaryPoint::Infinity]);
            }
            return Ok(vec![BoundaryPoint::Finite(-gamma / beta), BoundaryPoint::Infinity]);
        }
        let disc = self.trace() * self.trace() - 4.0;
        if disc.norm() <= eps * s * s {
            return Ok(vec![BoundaryPoint::Finite(-beta / (2.0 * self.c))]);
        }
        let mut root = disc.sqrt();
        if (beta.conj() * root).re < 0.0 {
            root = -root;
        }
        let q = -(beta + root) / 2.0;
        let z1 = q / self.c;
        let z2 = if q.norm() == 0.0 { BoundaryPoint::Finite(-z1) } else { BoundaryPoint::Finite(gamma / q) };
        Ok(vec![BoundaryPoint::Finite(z1), z2])
    }

    /// Attracting and repelling fixed points `(attracting, repelling)` of a
    /// loxodromic map.
    pub fn attracting_repelling(&self) -> Result<(BoundaryPoint, BoundaryPoint)> {
        let fp = self.fixed_points()?;
        if fp.len() != 2 || !self.classify().is_loxodromic() {
            return Err(Error::AxisUndefined(self.classify().name()));
        }
        // The derivative at a finite fixed point z is 1/(cz + d)²; at ∞ (c = 0) it is d/a.
        let mult = |p: &BoundaryPoint| match p {
            BoundaryPoint::Infinity => self.a * self.a,
            BoundaryPoint::Finite(z) => {
                let k = self.c * z + self.d;
                k * k
            }
        };
        // Multiplier (cz+d)² > 1 in modulus means the derivative is < 1: attracting.
        if mult(&fp[0]).norm() >= mult(&fp[1]).norm() {
            Ok((fp[0], fp[1]))
        } else {
            Ok((fp[1], fp[0]))
        }
    }
}

impl fmt::Display for MobiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = |z: C64| format!("{:.17e}{:+.17e}i", z.re, z.im);
        write!(f, "[{}, {}; {}, {}]", e(self.a), e(self.b), e(self.c), e(self.d))
    }
}
