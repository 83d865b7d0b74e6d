//! Generalized essential self-intersections and their connectors for
//! loxodromic groups acting on H³.
//!
//! The labeling of the model group is transferred word for word. For each
//! labeled pair `(L_j, Ax_E)` the connector `O_j` is their common orthogonal.
//! Every wall is computed after pulling back by its conjugator `W_j`, as the
//! seam `Y` against the axis of the reduced conjugate `W_j⁻¹ E W_j`, and then
//! pushed forward.

use crate::error::{Error, Result};
use crate::esi::{cyclic_runs, LoopTag};
use crate::farey::RationalLabel;
use crate::frame::{bend_generators, build_frame, GroupFrame};
use crate::geodesic::{common_perpendicular, oriented_axis_of, perpendicularity_residual, Geodesic, SpacePoint};
use crate::isometry::MobiusMap;
use crate::labeling::{labeling, Labeling, Wall};
use crate::tol;
use crate::words::{GroupWord, Seam};

/// Word length up to which every element is checked to be loxodromic.
pub const LOXODROMIC_SPOT_CHECK: usize = 5;

/// Word cap for the lifts and half-turns searched by [`transversal_check`].
pub const TRANSVERSAL_WORD_CAP: usize = 2;

/// A labeled pair `(L_j, Ax_E)`.
#[derive(Debug, Clone)]
pub struct EsiPair {
    pub index: i64,
    pub conjugator: GroupWord,
    pub seam: Seam,
    pub line: Geodesic,
    pub axis: Geodesic,
    /// `L_j` meets `Ax_E` at a right angle (excluded from the count).
    pub perpendicular: bool,
}

#[derive(Debug, Clone)]
pub struct ConnectorRecord {
    pub index: i64,
    pub conjugator: GroupWord,
    pub seam: Seam,
    pub line: Geodesic,
    pub axis: Geodesic,
    pub orthogonal: Geodesic,
    /// Arclength parameter of `O_j ∩ Ax_E` on the oriented axis.
    pub foot_on_axis: f64,
    /// Arclength parameter of `O_j ∩ H_{L_j}(Ax_E)` on the image axis.
    pub foot_on_partner_axis: f64,
    /// Distance between the two feet.
    pub separation: f64,
    /// Perpendicularity residuals of `O_j` against `L_j` and `Ax_E`.
    pub connector_residuals: [f64; 2],
    /// Set distance between `H_{L_j}(O_j)` and `O_j`.
    pub invariance_residual: f64,
    /// Set distance between `O_j` and the common orthogonal of `L_j` and the partner axis.
    pub partner_residual: f64,
    pub perpendicular: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarkedPoint {
    pub index: i64,
    pub parameter: f64,
}

#[derive(Debug, Clone)]
pub struct ConnectorSet {
    pub label: RationalLabel,
    pub axis: Geodesic,
    pub translation_length: f64,
    /// One record per wall of the half-open period window.
    pub records: Vec<ConnectorRecord>,
    pub marked_points: Vec<MarkedPoint>,
    /// Wall indices `(j, j*)` whose feet are the two ends of one connector on the quotient.
    pub pairs: Vec<(i64, i64)>,
    pub loop_tags: Vec<LoopTag>,
}

impl ConnectorSet {
    pub fn kept(&self) -> impl Iterator<Item = &ConnectorRecord> {
        self.records.iter().filter(|r| !r.perpendicular)
    }

    pub fn record(&self, index: i64) -> Option<&ConnectorRecord> {
        self.records.iter().find(|r| r.index == index)
    }

    pub fn quotient_connector_count(&self) -> usize {
        self.pairs.len()
    }
}

fn spot_check_loxodromic(frame: &GroupFrame, max_len: usize) -> Result<()> {
    for w in GroupWord::all_up_to(max_len).into_iter().skip(1) {
        if !frame.element(&w).classify().is_loxodromic() {
            return Err(Error::NotLoxodromic("a short word"));
        }
    }
    Ok(())
}

struct Context {
    labeling: Labeling,
    word: GroupWord,
    axis: Geodesic,
    translation_length: f64,
}

fn context(frame: &GroupFrame, x: RationalLabel) -> Result<Context> {
    spot_check_loxodromic(frame, LOXODROMIC_SPOT_CHECK.min(x.sum() as usize))?;
    let labeling = labeling(x)?;
    let word = labeling.word.to_group_word();
    let e = frame.element(&word);
    let axis = oriented_axis_of(&e)?;
    Ok(Context { labeling, word, axis, translation_length: e.translation_length() })
}

/// `W⁻¹ E W` and its oriented axis for a wall.
fn local_axis(frame: &GroupFrame, e: &GroupWord, wall: &Wall) -> Result<Geodesic> {
    let local = wall.conjugator.inverse().concat(e).concat(&wall.conjugator);
    oriented_axis_of(&frame.element(&local))
}

fn check_pair(line: &Geodesic, axis: &Geodesic, index: i64) -> Result<()> {
    if line.shares_endpoint(axis, tol::get().fixed_point) {
        return Err(Error::DegeneratePair(format!("wall {index} shares an endpoint with the axis")));
    }
    Ok(())
}

/// The labeled pairs `(L_j, Ax_E)` over one period.
pub fn generalized_esi_pairs(frame: &GroupFrame, x: RationalLabel) -> Result<Vec<EsiPair>> {
    let ctx = context(frame, x)?;
    let period = &ctx.labeling.walls[..ctx.labeling.walls.len() - 1];
    period
        .iter()
        .map(|wall| {
            check_pair(&frame.seam_line(wall.seam), &local_axis(frame, &ctx.word, wall)?, wall.index)?;
            Ok(EsiPair {
                index: wall.index,
                conjugator: wall.conjugator.clone(),
                seam: wall.seam,
                line: frame.line(&wall.conjugator, wall.seam),
                axis: ctx.axis,
                perpendicular: wall.perpendicular,
            })
        })
        .collect()
}

fn connector_record(frame: &GroupFrame, ctx: &Context, wall: &Wall) -> Result<ConnectorRecord> {
    let y = frame.seam_line(wall.seam);
    let h = frame.half_turn(wall.seam);
    let axis_l = local_axis(frame, &ctx.word, wall)?;
    check_pair(&y, &axis_l, wall.index)?;

    let o_l = common_perpendicular(&y, &axis_l)?;
    let connector_residuals = [perpendicularity_residual(&o_l, &y), perpendicularity_residual(&o_l, &axis_l)];
    let worst = connector_residuals[0].max(connector_residuals[1]);
    if worst > 1e3 * tol::get().perp {
        return Err(Error::ResidualOverflow(format!("wall {}: perpendicularity residual {worst:e}", wall.index)));
    }
    let invariance_residual = o_l.image(&h).distance(&o_l);
    let partner_l = axis_l.image(&h);
    let partner_residual = common_perpendicular(&y, &partner_l)?.distance(&o_l);

    let foot_l = axis_l.point_at(axis_l.foot_parameter(&y)?);
    let partner_foot_l = foot_l.image(&h);
    let separation = foot_l.distance(&partner_foot_l);

    let w: MobiusMap = frame.element(&wall.conjugator);
    let partner = partner_l.image(&w);
    Ok(ConnectorRecord {
        index: wall.index,
        conjugator: wall.conjugator.clone(),
        seam: wall.seam,
        line: y.image(&w),
        axis: ctx.axis,
        orthogonal: o_l.image(&w),
        foot_on_axis: ctx.axis.parameter_of(&foot_l.image(&w)),
        foot_on_partner_axis: partner.parameter_of(&partner_foot_l.image(&w)),
        separation,
        connector_residuals,
        invariance_residual,
        partner_residual,
        perpendicular: wall.perpendicular,
    })
}

/// Mirror partner of wall `j` about the opening perpendicular wall, reduced
/// into the window.
fn mirror_index(lab: &Labeling, j: i64) -> i64 {
    lab.start + (lab.start - j).rem_euclid(lab.period)
}

/// Connectors, paired marked points and loop tags of `E_{p/q}`.
pub fn connectors(frame: &GroupFrame, x: RationalLabel) -> Result<ConnectorSet> {
    let ctx = context(frame, x)?;
    let lab = &ctx.labeling;
    let period = &lab.walls[..lab.walls.len() - 1];
    let records = period.iter().map(|w| connector_record(frame, &ctx, w)).collect::<Result<Vec<_>>>()?;

    if let Some(w) = records.windows(2).find(|w| w[1].foot_on_axis <= w[0].foot_on_axis) {
        return Err(Error::MarkOrdering(format!("{x}: feet of walls {} and {} out of order", w[0].index, w[1].index)));
    }
    let ell = ctx.translation_length;
    let t_start = records[0].foot_on_axis;
    let marked_points: Vec<MarkedPoint> = records
        .iter()
        .filter(|r| !r.perpendicular)
        .map(|r| MarkedPoint { index: r.index, parameter: r.foot_on_axis })
        .collect();

    let mut pairs = Vec::new();
    for m in &marked_points {
        let partner = mirror_index(lab, m.index);
        if partner <= m.index {
            continue;
        }
        let other = records[(partner - lab.start) as usize].foot_on_axis;
        let turns = (m.parameter + other - 2.0 * t_start) / ell;
        if (turns - turns.round()).abs() > 1e-6 {
            return Err(Error::Invariant(format!("{x}: marks {} and {partner} are not mirror images", m.index)));
        }
        pairs.push((m.index, partner));
    }

    let loop_tags = lab.loop_tags().into_iter().filter_map(LoopTag::from_seam).collect();
    Ok(ConnectorSet { label: x, axis: ctx.axis, translation_length: ell, records, marked_points, pairs, loop_tags })
}

/// Loops of the quotient picture: arcs of the axis between consecutive feet
/// on `L`-type lines, each tagged by the one other seam it meets.
pub fn loop_count(set: &ConnectorSet) -> Result<(usize, Vec<LoopTag>, Vec<usize>)> {
    let period = &set.records;
    if period.windows(2).any(|w| (w[0].seam == Seam::L) == (w[1].seam == Seam::L)) {
        return Err(Error::MarkOrdering(format!("{}: feet on L-type lines do not alternate", set.label)));
    }
    let tags: Vec<LoopTag> = period.iter().filter_map(|r| LoopTag::from_seam(r.seam)).collect();
    if tags != set.loop_tags {
        return Err(Error::Invariant(format!("{}: loop tags disagree with the labeling", set.label)));
    }
    let runs = cyclic_runs(&tags);
    Ok((tags.len(), tags, runs))
}

/// Is `candidate` orthogonal to some lift `α` of `γ_{p/q}` and preserved by a
/// half-turn `H` of the extended group that moves `α` (so that it also meets
/// `H(α)` orthogonally)?
pub fn transversal_check(frame: &GroupFrame, candidate: &Geodesic, x: RationalLabel) -> bool {
    let Ok(ctx) = context(frame, x) else { return false };
    let t = tol::get();
    let words = GroupWord::all_up_to(TRANSVERSAL_WORD_CAP);
    let lifts: Vec<Geodesic> = words
        .iter()
        .map(|w| ctx.axis.image(&frame.element(w)))
        .filter(|a| perpendicularity_residual(candidate, a) < t.perp && !a.shares_endpoint(candidate, t.fixed_point))
        .collect();
    if lifts.is_empty() {
        return false;
    }
    words.iter().any(|w| {
        let m = frame.element(w);
        [Seam::L, Seam::LA, Seam::LB].into_iter().any(|s| {
            let h = m.compose(&frame.half_turn(s)).compose(&m.inverse());
            candidate.image(&h).distance(candidate) < t.perp
                && lifts.iter().any(|a| a.image(&h).distance(a) > t.perp)
        })
    })
}

/// One step of a deformation path.
#[derive(Debug, Clone)]
pub struct DeformStep {
    pub angle: f64,
    pub set: ConnectorSet,
}

/// Connectors along the bending path from `bend` down to the planar group
/// `base` in `steps` equal steps (`steps + 1` groups, ending at `base`).
pub fn deformation_path(base: &GroupFrame, x: RationalLabel, bend: f64, steps: usize) -> Result<Vec<DeformStep>> {
    if steps == 0 {
        return Err(Error::Config("a deformation path needs at least one step".into()));
    }
    (0..=steps)
        .map(|k| {
            let angle = bend * (1.0 - k as f64 / steps as f64);
            let (a, b) = bend_generators(base, angle);
            let set = connectors(&build_frame(&a, &b)?, x)?;
            Ok(DeformStep { angle, set })
        })
        .collect()
}

/// Largest foot separation over kept connectors.
pub fn max_separation(set: &ConnectorSet) -> f64 {
    set.kept().map(|r| r.separation).fold(0.0, f64::max)
}

/// Distance from the connector of wall `index` to a point.
pub fn connector_distance(set: &ConnectorSet, index: i64, p: &SpacePoint) -> Option<f64> {
    set.record(index).map(|r| r.orthogonal.distance_to_point(p))
}
