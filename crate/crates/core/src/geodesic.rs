//! Geodesics as endpoint pairs, half-turns, common perpendiculars, and the
//! planar (H² ⊂ H³) crossing data.
//!
//! H² is the vertical half-plane of upper half-space standing on the real
//! axis; a [`PlanePoint`] `x + iy` is the point at horizontal position `x`
//! and height `y`. A geodesic lies in H² exactly when both endpoints are on
//! the extended real line.
//!
//! Cross ratio convention: `[a, b; c, d] = (a − c)(b − d) / ((a − d)(b − c))`,
//! with the usual limits when one point is ∞.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::isometry::{BoundaryPoint, IsometryClass, MobiusMap, C64};
use crate::tol;

/// An unoriented geodesic of H³, stored with an orientation `e1 → e2` that
/// only matters for tangent directions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geodesic {
    pub e1: BoundaryPoint,
    pub e2: BoundaryPoint,
}

impl Geodesic {
    pub fn new(e1: BoundaryPoint, e2: BoundaryPoint) -> Result<Self> {
        if e1.chordal(&e2) <= tol::get().fixed_point {
            return Err(Error::DegenerateGeodesic);
        }
        Ok(Self { e1, e2 })
    }

    pub fn real(x1: f64, x2: f64) -> Result<Self> {
        Self::new(x1.into(), x2.into())
    }

    /// The vertical geodesic from `x` to ∞.
    pub fn vertical(x: f64) -> Self {
        Self { e1: x.into(), e2: BoundaryPoint::Infinity }
    }

    pub fn endpoints(&self) -> [BoundaryPoint; 2] {
        [self.e1, self.e2]
    }

    pub fn reversed(&self) -> Self {
        Self { e1: self.e2, e2: self.e1 }
    }

    pub fn image(&self, m: &MobiusMap) -> Self {
        Self { e1: m.apply(self.e1), e2: m.apply(self.e2) }
    }

    /// Set distance between endpoint pairs (chordal, best matching).
    pub fn distance(&self, other: &Geodesic) -> f64 {
        let straight = self.e1.chordal(&other.e1).max(self.e2.chordal(&other.e2));
        let crossed = self.e1.chordal(&other.e2).max(self.e2.chordal(&other.e1));
        straight.min(crossed)
    }

    pub fn approx_eq(&self, other: &Geodesic, eps: f64) -> bool {
        self.distance(other) <= eps
    }

    pub fn shares_endpoint(&self, other: &Geodesic, eps: f64) -> bool {
        self.endpoints()
            .iter()
            .any(|p| other.endpoints().iter().any(|q| p.chordal(q) <= eps))
    }

    pub fn is_planar(&self, eps: f64) -> bool {
        self.e1.is_real(eps) && self.e2.is_real(eps)
    }

    /// A map sending `e1 ↦ 0` and `e2 ↦ ∞`.
    pub fn normalizer(&self) -> MobiusMap {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        let m = match (self.e1, self.e2) {
            (BoundaryPoint::Finite(u), BoundaryPoint::Finite(v)) => MobiusMap::new(one, -u, one, -v),
            (BoundaryPoint::Infinity, BoundaryPoint::Finite(v)) => MobiusMap::new(zero, one, one, -v),
            (BoundaryPoint::Finite(u), BoundaryPoint::Infinity) => MobiusMap::new(one, -u, zero, one),
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => unreachable!("validated geodesic"),
        };
        m.expect("distinct endpoints give an invertible normalizer")
    }

    /// Loxodromic map with axis `self`, translating `e1 → e2` by the complex
    /// length `lambda` (real part translation, imaginary part rotation).
    pub fn screw(&self, lambda: C64) -> MobiusMap {
        let n = self.normalizer();
        let half = (lambda / 2.0).exp();
        n.inverse().compose(&MobiusMap::diagonal(half)).compose(&n)
    }

    /// Rotation by `angle` about this geodesic.
    pub fn rotation(&self, angle: f64) -> MobiusMap {
        self.screw(C64::new(0.0, angle))
    }

    /// Signed position along the geodesic of the point closest to `p`,
    /// measured in hyperbolic arclength from the normalizer's base point.
    pub fn parameter_of(&self, p: &SpacePoint) -> f64 {
        let q = p.image(&self.normalizer());
        // Closest point of the vertical axis over 0 to (z, h) is at height √(|z|² + h²).
        0.5 * (q.z.norm_sqr() + q.h * q.h).ln()
    }

    /// Point at arclength parameter `t`.
    pub fn point_at(&self, t: f64) -> SpacePoint {
        SpacePoint::new(C64::new(0.0, 0.0), t.exp()).image(&self.normalizer().inverse())
    }

    /// Hyperbolic distance from a point to the geodesic.
    pub fn distance_to_point(&self, p: &SpacePoint) -> f64 {
        let q = p.image(&self.normalizer());
        (q.z.norm() / q.h).asinh()
    }

    /// Foot of `other` on `self`: where the common perpendicular of the two
    /// meets `self`, as an arclength parameter.
    pub fn foot_parameter(&self, other: &Geodesic) -> Result<f64> {
        let perp = common_perpendicular(self, other)?;
        let n = self.normalizer();
        let (a, b) = (n.apply(perp.e1), n.apply(perp.e2));
        match (a, b) {
            (BoundaryPoint::Finite(a), BoundaryPoint::Finite(b)) => Ok(0.5 * (a.norm() * b.norm()).ln()),
            _ => Err(Error::Numerical("perpendicular meets axis at an endpoint".into())),
        }
    }
}

impl fmt::Display for Geodesic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.e1, self.e2)
    }
}

/// A point of H² in the upper half-plane model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanePoint(C64);

impl PlanePoint {
    pub fn new(z: C64) -> Option<Self> {
        (z.im > 0.0 && z.is_finite()).then_some(Self(z))
    }

    pub fn z(&self) -> C64 {
        self.0
    }

    pub fn to_space(&self) -> SpacePoint {
        SpacePoint::new(C64::new(self.0.re, 0.0), self.0.im)
    }

    pub fn distance(&self, other: &PlanePoint) -> f64 {
        self.to_space().distance(&other.to_space())
    }
}

/// A point of upper half-space: horizontal coordinate `z`, height `h > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacePoint {
    pub z: C64,
    pub h: f64,
}

impl SpacePoint {
    pub fn new(z: C64, h: f64) -> Self {
        Self { z, h }
    }

    /// Poincaré extension of `m` to H³.
    pub fn image(&self, m: &MobiusMap) -> SpacePoint {
        let w = m.c * self.z + m.d;
        let den = w.norm_sqr() + m.c.norm_sqr() * self.h * self.h;
        let z = ((m.a * self.z + m.b) * w.conj() + m.a * m.c.conj() * self.h * self.h) / den;
        SpacePoint { z, h: self.h / den }
    }

    pub fn distance(&self, other: &SpacePoint) -> f64 {
        let num = (self.z - other.z).norm_sqr() + (self.h - other.h).powi(2);
        2.0 * (num.sqrt() / (2.0 * (self.h * other.h).sqrt())).asinh()
    }
}

/// The half-turn about `g`: trace zero, fixing both endpoints.
pub fn half_turn_about(g: &Geodesic) -> MobiusMap {
    let one = C64::new(1.0, 0.0);
    let m = match (g.e1, g.e2) {
        (BoundaryPoint::Finite(p), BoundaryPoint::Finite(q)) => {
            MobiusMap::new(p + q, -2.0 * p * q, 2.0 * one, -(p + q))
        }
        (BoundaryPoint::Finite(p), BoundaryPoint::Infinity) | (BoundaryPoint::Infinity, BoundaryPoint::Finite(p)) => {
            MobiusMap::new(one, -2.0 * p, C64::new(0.0, 0.0), -one)
        }
        (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => unreachable!("validated geodesic"),
    };
    m.expect("distinct endpoints give a nonsingular half-turn")
}

/// Invariant geodesic of an elliptic or loxodromic map.
pub fn axis_of(m: &MobiusMap) -> Result<Geodesic> {
    let class = m.classify();
    match class {
        IsometryClass::Identity | IsometryClass::Parabolic => Err(Error::AxisUndefined(class.name())),
        _ => {
            let fp = m.fixed_points()?;
            if fp.len() != 2 {
                return Err(Error::AxisUndefined(class.name()));
            }
            Geodesic::new(fp[0], fp[1]).map_err(|_| Error::AxisUndefined(class.name()))
        }
    }
}

/// Axis of a loxodromic map oriented from repelling to attracting point.
pub fn oriented_axis_of(m: &MobiusMap) -> Result<Geodesic> {
    let (att, rep) = m.attracting_repelling()?;
    Geodesic::new(rep, att)
}

/// Common perpendicular: the axis of the product of the two half-turns.
pub fn common_perpendicular(g1: &Geodesic, g2: &Geodesic) -> Result<Geodesic> {
    if g1.shares_endpoint(g2, tol::get().fixed_point) {
        return Err(Error::PerpendicularUndefined);
    }
    let prod = half_turn_about(g1).compose(&half_turn_about(g2));
    axis_of(&prod).map_err(|_| Error::PerpendicularUndefined)
}

/// Zero exactly when the geodesics meet at a right angle.
pub fn perpendicularity_residual(g1: &Geodesic, g2: &Geodesic) -> f64 {
    let h = half_turn_about(g1);
    let a = h.apply(g2.e1).chordal(&g2.e2);
    let b = h.apply(g2.e2).chordal(&g2.e1);
    a.max(b)
}

/// Real description of a planar geodesic.
#[derive(Debug, Clone, Copy)]
enum PlanarShape {
    /// Semicircle with center and radius; `left_to_right` is the orientation.
    Circle { center: f64, radius: f64, left_to_right: bool },
    /// Vertical line at `x`; `upward` when oriented from `x` to ∞.
    Vertical { x: f64, upward: bool },
}

fn planar_shape(g: &Geodesic) -> Result<PlanarShape> {
    if !g.is_planar(tol::get().fixed_point) {
        return Err(Error::NotPlanarGeodesic);
    }
    Ok(match (g.e1, g.e2) {
        (BoundaryPoint::Finite(p), BoundaryPoint::Finite(q)) => PlanarShape::Circle {
            center: 0.5 * (p.re + q.re),
            radius: 0.5 * (p.re - q.re).abs(),
            left_to_right: p.re < q.re,
        },
        (BoundaryPoint::Finite(p), BoundaryPoint::Infinity) => PlanarShape::Vertical { x: p.re, upward: true },
        (BoundaryPoint::Infinity, BoundaryPoint::Finite(p)) => PlanarShape::Vertical { x: p.re, upward: false },
        _ => unreachable!("validated geodesic"),
    })
}

/// Do two planar geodesics cross in H² (interleaved endpoints)?
pub fn crosses_h2(g1: &Geodesic, g2: &Geodesic) -> Result<bool> {
    Ok(intersection_point_h2(g1, g2).is_ok())
}

/// The crossing point of two planar geodesics.
pub fn intersection_point_h2(g1: &Geodesic, g2: &Geodesic) -> Result<PlanePoint> {
    let s1 = planar_shape(g1)?;
    let s2 = planar_shape(g2)?;
    let point = match (s1, s2) {
        (PlanarShape::Vertical { .. }, PlanarShape::Vertical { .. }) => None,
        (PlanarShape::Vertical { x, .. }, PlanarShape::Circle { center, radius, .. })
        | (PlanarShape::Circle { center, radius, .. }, PlanarShape::Vertical { x, .. }) => {
            let dx = x - center;
            let h2 = radius * radius - dx * dx;
            (h2 > 0.0).then(|| C64::new(x, h2.sqrt()))
        }
        (
            PlanarShape::Circle { center: c1, radius: r1, .. },
            PlanarShape::Circle { center: c2, radius: r2, .. },
        ) => {
            let (lo1, hi1, lo2, hi2) = (c1 - r1, c1 + r1, c2 - r2, c2 + r2);
            let interleaved = (lo1 < lo2 && lo2 < hi1 && hi1 < hi2) || (lo2 < lo1 && lo1 < hi2 && hi2 < hi1);
            if interleaved {
                let x = (r1 * r1 - r2 * r2 - c1 * c1 + c2 * c2) / (2.0 * (c2 - c1));
                let h2 = r1 * r1 - (x - c1) * (x - c1);
                (h2 > 0.0).then(|| C64::new(x, h2.sqrt()))
            } else {
                None
            }
        }
    };
    point.and_then(PlanePoint::new).ok_or(Error::DisjointInH2)
}

fn tangent_at(shape: PlanarShape, q: C64) -> C64 {
    let i = C64::new(0.0, 1.0);
    match shape {
        PlanarShape::Vertical { upward, .. } => {
            if upward {
                i
            } else {
                -i
            }
        }
        PlanarShape::Circle { center, left_to_right, .. } => {
            let radial = q - C64::new(center, 0.0);
            if left_to_right {
                -i * radial
            } else {
                i * radial
            }
        }
    }
}

/// Angle in `(0, π)` between the oriented tangents at the crossing point.
pub fn angle_at_intersection_h2(g1: &Geodesic, g2: &Geodesic) -> Result<f64> {
    let q = intersection_point_h2(g1, g2)?.z();
    let t1 = tangent_at(planar_shape(g1)?, q);
    let t2 = tangent_at(planar_shape(g2)?, q);
    let cos = (t1 * t2.conj()).re / (t1.norm() * t2.norm());
    Ok(cos.clamp(-1.0, 1.0).acos())
}

/// Where a planar geodesic crosses an oriented planar axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisCrossing {
    /// Arclength parameter along `axis` (same scale as [`Geodesic::parameter_of`]).
    pub parameter: f64,
    /// Angle in `(0, π)` between the oriented tangents.
    pub angle: f64,
    pub point: PlanePoint,
}

/// Crossing of `line` with `axis`, computed in coordinates where the axis is
/// `(0, ∞)`: if the line runs from `a` to `b` there, it crosses at height
/// `√(−ab)` with `cos θ = (a + b)/(b − a)`. Stays accurate for crossings far
/// down the axis, where intersecting the two circles directly does not.
pub fn axis_crossing(axis: &Geodesic, line: &Geodesic) -> Result<AxisCrossing> {
    let eps = tol::get().fixed_point;
    if !axis.is_planar(eps) || !line.is_planar(eps) {
        return Err(Error::NotPlanarGeodesic);
    }
    let n = axis.normalizer();
    let (a, b) = match (n.apply(line.e1), n.apply(line.e2)) {
        (BoundaryPoint::Finite(a), BoundaryPoint::Finite(b)) => (a.re, b.re),
        _ => return Err(Error::DisjointInH2),
    };
    if a * b >= 0.0 {
        return Err(Error::DisjointInH2);
    }
    let h = (-a * b).sqrt();
    let cos = ((a + b) / (b - a)).clamp(-1.0, 1.0);
    let q = SpacePoint::new(C64::new(0.0, 0.0), h).image(&n.inverse());
    let point = PlanePoint::new(C64::new(q.z.re, q.h)).ok_or(Error::DisjointInH2)?;
    Ok(AxisCrossing { parameter: h.ln(), angle: cos.acos(), point })
}

/// `(a − c)(b − d) / ((a − d)(b − c))`.
pub fn cross_ratio(a: BoundaryPoint, b: BoundaryPoint, c: BoundaryPoint, d: BoundaryPoint) -> Result<C64> {
    let pts = [a, b, c, d];
    let eps = tol::get().fixed_point;
    for i in 0..4 {
        for j in (i + 1)..4 {
            if pts[i].chordal(&pts[j]) <= eps {
                return Err(Error::CrossRatioDegenerate);
            }
        }
    }
    use BoundaryPoint::{Finite as F, Infinity as Inf};
    Ok(match (a, b, c, d) {
        (F(a), F(b), F(c), F(d)) => (a - c) * (b - d) / ((a - d) * (b - c)),
        (Inf, F(b), F(c), F(d)) => (b - d) / (b - c),
        (F(a), Inf, F(c), F(d)) => (a - c) / (a - d),
        (F(a), F(b), Inf, F(d)) => (b - d) / (a - d),
        (F(a), F(b), F(c), Inf) => (a - c) / (b - c),
        _ => return Err(Error::CrossRatioDegenerate),
    })
}

/// Is `angle` a right angle within the right-angle tolerance?
pub fn is_right_angle(angle: f64) -> bool {
    (angle - PI / 2.0).abs() < tol::get().angle
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: f64, b: f64) -> Geodesic {
        Geodesic::real(a, b).unwrap()
    }

    #[test]
    fn half_turn_examples() {
        let h = half_turn_about(&g(1.0, -1.0));
        let expected =
            MobiusMap::new(C64::new(0.0, 0.0), C64::new(0.0, 1.0), C64::new(0.0, 1.0), C64::new(0.0, 0.0)).unwrap();
        assert!(h.approx_eq(&expected, 1e-12));

        let h = half_turn_about(&Geodesic::vertical(0.0));
        assert!(h.approx_eq(&MobiusMap::diagonal(C64::new(0.0, 1.0)), 1e-12));

        let h = half_turn_about(&Geodesic::vertical(1.5));
        let img = h.apply(0.25.into()).finite().unwrap();
        assert!((img - C64::new(2.75, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn axis_examples() {
        let a = axis_of(&MobiusMap::real(2.0, 0.0, 0.0, 0.5).unwrap()).unwrap();
        assert!(a.approx_eq(&Geodesic::vertical(0.0), 1e-12));
        let h = half_turn_about(&g(1.0, -1.0));
        assert!(axis_of(&h).unwrap().approx_eq(&g(-1.0, 1.0), 1e-12));
        let p = MobiusMap::real(1.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(axis_of(&p), Err(Error::AxisUndefined("parabolic")));
    }

    #[test]
    fn common_perpendicular_concentric() {
        let p = common_perpendicular(&g(-1.0, 1.0), &g(-2.5, 2.5)).unwrap();
        assert!(p.approx_eq(&Geodesic::vertical(0.0), 1e-12));
    }

    #[test]
    fn common_perpendicular_shared_endpoint() {
        assert_eq!(
            common_perpendicular(&Geodesic::vertical(0.0), &g(0.0, 1.0)),
            Err(Error::PerpendicularUndefined)
        );
    }

    #[test]
    fn residual_examples() {
        assert!(perpendicularity_residual(&Geodesic::vertical(0.0), &g(-1.0, 1.0)) < 1e-14);
        assert!(perpendicularity_residual(&Geodesic::vertical(0.0), &g(1.0, 3.0)) > 0.1);
        let x = g(1.0, 3.0);
        assert!(perpendicularity_residual(&x, &x) > 0.1);
    }

    #[test]
    fn intersection_examples() {
        let v = Geodesic::vertical(0.0);
        let q = intersection_point_h2(&v, &g(-1.0, 1.0)).unwrap().z();
        assert!((q - C64::new(0.0, 1.0)).norm() < 1e-14);
        let q = intersection_point_h2(&v, &g(-2.0, 2.0)).unwrap().z();
        assert!((q - C64::new(0.0, 2.0)).norm() < 1e-14);
        assert_eq!(intersection_point_h2(&v, &g(1.0, 3.0)), Err(Error::DisjointInH2));
        assert_eq!(intersection_point_h2(&g(-1.0, 1.0), &g(-3.0, 3.0)), Err(Error::DisjointInH2));
    }

    #[test]
    fn axis_crossing_matches_circle_algebra() {
        let cases = [(g(-3.0, 2.0), g(1.0, 5.0)), (g(4.0, -1.0), g(0.5, 7.0)), (Geodesic::vertical(0.3), g(-2.0, 1.0))];
        for (axis, line) in cases {
            let c = axis_crossing(&axis, &line).unwrap();
            let q = intersection_point_h2(&axis, &line).unwrap();
            assert!(c.point.distance(&q) < 1e-12);
            assert!((c.angle - angle_at_intersection_h2(&axis, &line).unwrap()).abs() < 1e-12);
            assert!((c.parameter - axis.parameter_of(&q.to_space())).abs() < 1e-12);
        }
        assert_eq!(axis_crossing(&g(0.0, 1.0), &g(2.0, 3.0)), Err(Error::DisjointInH2));
    }

    #[test]
    fn right_angle_example() {
        let a = angle_at_intersection_h2(&Geodesic::vertical(0.0), &g(-1.0, 1.0)).unwrap();
        assert!((a - PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn nonplanar_rejected() {
        let h = Geodesic::new(C64::new(0.0, 1.0).into(), C64::new(0.0, -1.0).into()).unwrap();
        assert_eq!(intersection_point_h2(&h, &Geodesic::vertical(0.5)), Err(Error::NotPlanarGeodesic));
    }

    #[test]
    fn cross_ratio_limits() {
        // a=0, b=2, c=1, d=∞: (a − c)/(b − c) = −1
        let v = cross_ratio(0.0.into(), 2.0.into(), 1.0.into(), BoundaryPoint::Infinity).unwrap();
        assert!((v - C64::new(-1.0, 0.0)).norm() < 1e-14);
        // (0, 1, ∞, x) = (x − 1)/x
        let x = 3.0;
        let v = cross_ratio(0.0.into(), 1.0.into(), BoundaryPoint::Infinity, x.into()).unwrap();
        assert!((v.re - (x - 1.0) / x).abs() < 1e-14);
        assert_eq!(
            cross_ratio(0.0.into(), 0.0.into(), 1.0.into(), 2.0.into()),
            Err(Error::CrossRatioDegenerate)
        );
    }

    #[test]
    fn space_point_distance_and_parameter() {
        let v = Geodesic::vertical(0.0);
        let p = SpacePoint::new(C64::new(0.0, 0.0), 1.0);
        let q = SpacePoint::new(C64::new(0.0, 0.0), 5f64.exp());
        assert!((p.distance(&q) - 5.0).abs() < 1e-12);
        assert!((v.parameter_of(&q) - 5.0).abs() < 1e-12);
        assert!(v.distance_to_point(&q) < 1e-12);
        let pt = v.point_at(2.0);
        assert!((pt.h - 2f64.exp()).abs() < 1e-12);
    }

    #[test]
    fn poincare_extension_preserves_distance() {
        let m = MobiusMap::new(C64::new(1.0, 0.5), C64::new(0.3, -1.0), C64::new(0.2, 0.1), C64::new(2.0, 0.0)).unwrap();
        let p = SpacePoint::new(C64::new(0.4, -0.2), 0.7);
        let q = SpacePoint::new(C64::new(-1.0, 2.0), 0.3);
        let d0 = p.distance(&q);
        let d1 = p.image(&m).distance(&q.image(&m));
        assert!((d0 - d1).abs() < 1e-10);
    }

    #[test]
    fn foot_parameter_on_vertical_axis() {
        let v = Geodesic::vertical(0.0);
        let t = v.foot_parameter(&g(-3.0, 3.0)).unwrap();
        assert!((t - 3f64.ln()).abs() < 1e-12);
    }
}
