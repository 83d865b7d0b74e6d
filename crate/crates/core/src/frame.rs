//! The half-turn frame of a generator pair: the lines `L`, `L_A`, `L_B`
//! with `A = H_L H_{L_A}` and `B = H_L H_{L_B}`, the right-angled hexagon
//! `[Ax_A, L_A, Ax_{A⁻¹B}, L_B, Ax_B, L]`, and the planar / winding checks.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geodesic::{
    axis_of, common_perpendicular, half_turn_about, intersection_point_h2, perpendicularity_residual, Geodesic,
    PlanePoint,
};
use crate::isometry::{BoundaryPoint, IsometryClass, MobiusMap, C64};
use crate::tol;
use crate::words::{GroupWord, Letter, Seam};

/// Residual above which frame construction is treated as a numerical breakdown.
const BREAKDOWN_RESIDUAL: f64 = 1e-4;

#[derive(Debug, Clone)]
pub struct GroupFrame {
    pub gen_a: MobiusMap,
    pub gen_b: MobiusMap,
    pub axis_a: Geodesic,
    pub axis_b: Geodesic,
    pub axis_ainv_b: Geodesic,
    pub line_l: Geodesic,
    pub line_la: Geodesic,
    pub line_lb: Geodesic,
    /// `[Ax_A, L_A, Ax_{A⁻¹B}, L_B, Ax_B, L]`.
    pub hexagon: [Geodesic; 6],
    half_l: MobiusMap,
    half_la: MobiusMap,
    half_lb: MobiusMap,
}

pub fn build_frame(a: &MobiusMap, b: &MobiusMap) -> Result<GroupFrame> {
    if !a.classify().is_loxodromic() {
        return Err(Error::NotLoxodromic("A"));
    }
    if !b.classify().is_loxodromic() {
        return Err(Error::NotLoxodromic("B"));
    }
    let axis_a = axis_of(a)?;
    let axis_b = axis_of(b)?;
    if axis_a.shares_endpoint(&axis_b, tol::get().fixed_point) {
        return Err(Error::SharedEndpoints);
    }
    let line_l = common_perpendicular(&axis_a, &axis_b)?;
    let half_l = half_turn_about(&line_l);

    let seam_of = |g: &MobiusMap, name: &str| -> Result<Geodesic> {
        let h = half_l.compose(g);
        if !h.is_half_turn() {
            return Err(Error::Numerical(format!("H_L ∘ {name} is not a half-turn (trace {})", h.trace())));
        }
        axis_of(&h)
    };
    let line_la = seam_of(a, "A")?;
    let line_lb = seam_of(b, "B")?;
    let ainv_b = a.inverse().compose(b);
    let axis_ainv_b = axis_of(&ainv_b).map_err(|_| Error::NotLoxodromic("A⁻¹B"))?;

    let frame = GroupFrame {
        gen_a: *a,
        gen_b: *b,
        axis_a,
        axis_b,
        axis_ainv_b,
        line_l,
        line_la,
        line_lb,
        hexagon: [axis_a, line_la, axis_ainv_b, line_lb, axis_b, line_l],
        half_l,
        half_la: half_turn_about(&line_la),
        half_lb: half_turn_about(&line_lb),
    };
    let worst = frame.hexagon_residuals().into_iter().fold(0.0, f64::max);
    if worst > BREAKDOWN_RESIDUAL {
        return Err(Error::Numerical(format!("hexagon orthogonality residual {worst:e}")));
    }
    Ok(frame)
}

impl GroupFrame {
    /// Perpendicularity residual of each adjacent hexagon pair `(i, i+1)`.
    pub fn hexagon_residuals(&self) -> [f64; 6] {
        std::array::from_fn(|i| {
            let g = &self.hexagon[i];
            let h = &self.hexagon[(i + 1) % 6];
            perpendicularity_residual(g, h).max(perpendicularity_residual(h, g))
        })
    }

    pub fn seam_line(&self, s: Seam) -> Geodesic {
        match s {
            Seam::L => self.line_l,
            Seam::LA => self.line_la,
            Seam::LB => self.line_lb,
        }
    }

    pub fn half_turn(&self, s: Seam) -> MobiusMap {
        match s {
            Seam::L => self.half_l,
            Seam::LA => self.half_la,
            Seam::LB => self.half_lb,
        }
    }

    fn letter(&self, l: Letter) -> MobiusMap {
        match l {
            Letter::A => self.gen_a,
            Letter::B => self.gen_b,
            Letter::AInv => self.gen_a.inverse(),
            Letter::BInv => self.gen_b.inverse(),
        }
    }

    /// Matrix of a word in `A, B`.
    pub fn element(&self, w: &GroupWord) -> MobiusMap {
        w.letters().iter().fold(MobiusMap::IDENTITY, |m, &l| m.compose(&self.letter(l)))
    }

    /// The image `W(Y)` of a seam line.
    pub fn line(&self, conjugator: &GroupWord, seam: Seam) -> Geodesic {
        self.seam_line(seam).image(&self.element(conjugator))
    }

    /// Whether the generators are real matrices (the group preserves H²).
    pub fn is_planar(&self) -> bool {
        let eps = tol::get().det;
        self.gen_a.is_real(eps) && self.gen_b.is_real(eps)
    }
}

/// Composition of named half-turns, left to right.
pub fn extension_elements(frame: &GroupFrame, word: &[Seam]) -> MobiusMap {
    word.iter().fold(MobiusMap::IDENTITY, |m, &s| m.compose(&frame.half_turn(s)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelGroupReport {
    pub axes_disjoint: bool,
    pub hexagon_convex: bool,
    pub all_hyperbolic: bool,
    pub verdict: bool,
}

/// Poincaré-extension image of a planar point lies in the vertical plane
/// again; read it back as a plane point.
pub fn plane_image(m: &MobiusMap, p: &PlanePoint) -> PlanePoint {
    let s = p.to_space().image(m);
    PlanePoint::new(C64::new(s.z.re, s.h)).expect("positive height")
}

/// Klein-disk coordinates of an upper half-plane point.
pub fn klein(p: &PlanePoint) -> (f64, f64) {
    let z = p.z();
    let i = C64::new(0.0, 1.0);
    let w = (z - i) / (z + i);
    let k = 2.0 * w / (1.0 + w.norm_sqr());
    (k.re, k.im)
}

fn axes_disjoint_h2(g: &Geodesic, h: &Geodesic) -> bool {
    !g.shares_endpoint(h, tol::get().fixed_point) && intersection_point_h2(g, h).is_err()
}

/// Vertices of the hexagon (crossings of adjacent sides), if they all exist.
pub fn hexagon_vertices(frame: &GroupFrame) -> Option<[PlanePoint; 6]> {
    let mut out = Vec::with_capacity(6);
    for i in 0..6 {
        out.push(intersection_point_h2(&frame.hexagon[i], &frame.hexagon[(i + 1) % 6]).ok()?);
    }
    out.try_into().ok()
}

/// Consistent turning of the six vertices in the Klein model (straight
/// sides), with total turning one full revolution.
fn hexagon_is_convex(frame: &GroupFrame) -> bool {
    let Some(v) = hexagon_vertices(frame) else { return false };
    let k: Vec<(f64, f64)> = v.iter().map(klein).collect();
    let mut sign = 0.0;
    let mut turning = 0.0;
    for i in 0..6 {
        let (p, q, r) = (k[i], k[(i + 1) % 6], k[(i + 2) % 6]);
        let (ux, uy) = (q.0 - p.0, q.1 - p.1);
        let (vx, vy) = (r.0 - q.0, r.1 - q.1);
        let cross = ux * vy - uy * vx;
        if cross == 0.0 || (sign != 0.0 && cross.signum() != sign) {
            return false;
        }
        sign = cross.signum();
        turning += cross.atan2(ux * vx + uy * vy);
    }
    (turning.abs() - 2.0 * PI).abs() < 1e-6
}

/// Is `p` strictly inside the hexagon (Klein-model convex polygon test)?
pub fn inside_hexagon(frame: &GroupFrame, p: &PlanePoint) -> bool {
    let Some(v) = hexagon_vertices(frame) else { return false };
    let k: Vec<(f64, f64)> = v.iter().map(klein).collect();
    let x = klein(p);
    let signs: Vec<f64> = (0..6)
        .map(|i| {
            let (a, b) = (k[i], k[(i + 1) % 6]);
            (b.0 - a.0) * (x.1 - a.1) - (b.1 - a.1) * (x.0 - a.0)
        })
        .collect();
    signs.iter().all(|s| *s > 0.0) || signs.iter().all(|s| *s < 0.0)
}

pub fn validate_model_group(frame: &GroupFrame) -> Result<ModelGroupReport> {
    if !frame.is_planar() {
        return Err(Error::NotPlanar);
    }
    let hyperbolic = |m: &MobiusMap| m.classify() == IsometryClass::Hyperbolic;
    let a = frame.gen_a;
    let b = frame.gen_b;
    let all_hyperbolic =
        hyperbolic(&a) && hyperbolic(&b) && hyperbolic(&a.inverse().compose(&b)) && hyperbolic(&a.compose(&b));
    let axes = [frame.axis_a, frame.axis_b, frame.axis_ainv_b];
    let axes_disjoint = axes_disjoint_h2(&axes[0], &axes[1])
        && axes_disjoint_h2(&axes[0], &axes[2])
        && axes_disjoint_h2(&axes[1], &axes[2]);
    let hexagon_convex = hexagon_is_convex(frame);
    Ok(ModelGroupReport {
        axes_disjoint,
        hexagon_convex,
        all_hyperbolic,
        verdict: axes_disjoint && hexagon_convex && all_hyperbolic,
    })
}

/// Generators bent along `L`: `(A, R B R⁻¹)` with `R` the rotation by
/// `angle` about `L`. The frame line `L` is unchanged.
pub fn bend_generators(frame: &GroupFrame, angle: f64) -> (MobiusMap, MobiusMap) {
    let r = frame.line_l.rotation(angle);
    (frame.gen_a, r.conjugate(&frame.gen_b))
}

#[derive(Debug, Clone, PartialEq)]
pub struct WindingReport {
    /// Support plane found for `Ax_A`, `Ax_B`, `Ax_{A⁻¹B}`.
    pub support: [bool; 3],
    /// Best one-sidedness margin per axis (≤ 0 when a support plane exists).
    pub violation: [f64; 3],
    pub sample_count: usize,
    pub verdict: bool,
}

/// Default plane-angle resolution of the support scan.
pub const PLANE_SCAN_STEPS: usize = 720;

/// Fixed points of loxodromic words of length `1..=word_len_cap`,
/// deduplicated, at most `sample_cap` of them.
pub fn limit_set_sample(frame: &GroupFrame, word_len_cap: usize, sample_cap: usize) -> Vec<BoundaryPoint> {
    let eps = tol::get().fixed_point;
    let mut pts: Vec<BoundaryPoint> = Vec::new();
    'words: for w in GroupWord::all_up_to(word_len_cap).iter().skip(1) {
        let m = frame.element(w);
        if !m.classify().is_loxodromic() {
            continue;
        }
        let Ok(fp) = m.fixed_points() else { continue };
        for p in fp {
            if pts.len() >= sample_cap {
                break 'words;
            }
            if !pts.iter().any(|q| q.chordal(&p) <= eps * 10.0) {
                pts.push(p);
            }
        }
    }
    pts
}

/// `min(max s, max −s)` over signed side values of the unit directions
/// against the line through 0 at angle `theta`; ≤ 0 iff one closed side holds
/// every direction.
fn side_violation(dirs: &[C64], theta: f64) -> f64 {
    let rot = C64::from_polar(1.0, -theta);
    let (mut hi, mut lo) = (f64::NEG_INFINITY, f64::INFINITY);
    for u in dirs {
        let s = (u * rot).im;
        hi = hi.max(s);
        lo = lo.min(s);
    }
    hi.min(-lo)
}

/// Best one-sidedness margin over the planes containing `axis`.
pub fn support_plane_scan(axis: &Geodesic, samples: &[BoundaryPoint], steps: usize) -> f64 {
    let n = axis.normalizer();
    let eps = tol::get().fixed_point;
    let dirs: Vec<C64> = samples
        .iter()
        .filter_map(|p| match n.apply(*p) {
            BoundaryPoint::Finite(w) if w.norm() > eps && w.norm() < 1.0 / eps => Some(w / w.norm()),
            _ => None,
        })
        .collect();
    if dirs.is_empty() {
        return f64::NEG_INFINITY;
    }
    let step = PI / steps as f64;
    let (mut best_theta, mut best) = (0.0, f64::INFINITY);
    for k in 0..steps {
        let th = k as f64 * step;
        let v = side_violation(&dirs, th);
        if v < best {
            best = v;
            best_theta = th;
        }
    }
    // golden-section refinement around the best grid angle
    let (mut lo, mut hi) = (best_theta - step, best_theta + step);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..60 {
        let x1 = hi - g * (hi - lo);
        let x2 = lo + g * (hi - lo);
        if side_violation(&dirs, x1) < side_violation(&dirs, x2) {
            hi = x2;
        } else {
            lo = x1;
        }
    }
    best.min(side_violation(&dirs, 0.5 * (lo + hi)))
}

pub fn winding_group_check(frame: &GroupFrame, word_len_cap: usize, sample_cap: usize) -> Result<WindingReport> {
    let samples = limit_set_sample(frame, word_len_cap, sample_cap);
    if samples.len() < 4 {
        return Err(Error::DegenerateSample(samples.len()));
    }
    let eps = tol::get().fixed_point;
    let axes = [frame.axis_a, frame.axis_b, frame.axis_ainv_b];
    let violation = axes.map(|ax| support_plane_scan(&ax, &samples, PLANE_SCAN_STEPS));
    let support = violation.map(|v| v <= eps);
    Ok(WindingReport { support, violation, sample_count: samples.len(), verdict: support.iter().all(|s| *s) })
}

/// A point inside the hexagon (average of its vertices in the Klein model).
pub fn hexagon_center(frame: &GroupFrame) -> Option<PlanePoint> {
    let v = hexagon_vertices(frame)?;
    let (mut x, mut y) = (0.0, 0.0);
    for p in &v {
        let k = klein(p);
        x += k.0 / 6.0;
        y += k.1 / 6.0;
    }
    // Klein → Poincaré → upper half-plane
    let kk = C64::new(x, y);
    let w = kk / (1.0 + (1.0 - kk.norm_sqr()).sqrt());
    let i = C64::new(0.0, 1.0);
    PlanePoint::new(i * (1.0 + w) / (1.0 - w))
}
