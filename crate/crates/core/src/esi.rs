//! Essential self-intersections of primitive geodesics in a planar model group.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::farey::{conjugate_partner, continued_fraction, primitive_word, RationalLabel};
use crate::frame::{validate_model_group, GroupFrame};
use crate::geodesic::{axis_crossing, is_right_angle, oriented_axis_of, Geodesic, PlanePoint};
use crate::isometry::MobiusMap;
use crate::labeling::{labeling, Labeling};
use crate::tol;
use crate::words::{GroupWord, Letter, Seam};

/// One labeled crossing `Q_j = L_j ∩ Ax_E`.
#[derive(Debug, Clone)]
pub struct EsiRecord {
    pub index: i64,
    pub conjugator: GroupWord,
    pub seam: Seam,
    pub line: Geodesic,
    pub point: PlanePoint,
    pub angle: f64,
    pub is_right_angle: bool,
    /// Arclength position of the crossing along the oriented axis.
    pub parameter: f64,
}

impl EsiRecord {
    /// `W(Y)` notation for the line.
    pub fn line_word(&self) -> String {
        format!("{}({})", self.conjugator, self.seam)
    }
}

/// The crossing `Ax_E ∩ L` that `Ax_E` shares with `Ax_Ẽ` (even case).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SharedCrossing {
    pub index: i64,
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct EsiSet {
    pub label: RationalLabel,
    pub word: GroupWord,
    /// Oriented axis of `E`, repelling to attracting.
    pub axis: Geodesic,
    pub translation_length: f64,
    /// Records over the closed window; the last record is the translate of the first.
    pub records: Vec<EsiRecord>,
    pub essential_count: usize,
    pub quotient_count: usize,
    pub shared_crossing: Option<SharedCrossing>,
    pub labeling: Labeling,
}

impl EsiSet {
    pub fn kept(&self) -> impl Iterator<Item = &EsiRecord> {
        self.records.iter().filter(|r| !r.is_right_angle)
    }

    pub fn record(&self, index: i64) -> Option<&EsiRecord> {
        self.records.iter().find(|r| r.index == index)
    }
}

fn require_model_group(frame: &GroupFrame) -> Result<()> {
    let report = validate_model_group(frame)?;
    if !report.verdict {
        return Err(Error::ModelValidation(format!(
            "axes disjoint {}, hexagon convex {}, hyperbolic {}",
            report.axes_disjoint, report.hexagon_convex, report.all_hyperbolic
        )));
    }
    Ok(())
}

fn crossing(axis: &Geodesic, line: &Geodesic) -> Result<(PlanePoint, f64, f64)> {
    let c = axis_crossing(axis, line)?;
    Ok((c.point, c.angle, c.parameter))
}

/// Crossing angle of `W(Y)` with `Ax_E`, measured after pulling back by `W`
/// (as `Y` against the axis of the reduced conjugate `W⁻¹ E W`) so that it is
/// computed near the frame rather than far down the axis.
fn local_angle(frame: &GroupFrame, e: &GroupWord, w: &GroupWord, seam: Seam) -> Result<f64> {
    let local = w.inverse().concat(e).concat(w);
    let axis = oriented_axis_of(&frame.element(&local))?;
    Ok(axis_crossing(&axis, &frame.seam_line(seam))?.angle)
}

/// Labeled crossings of `Ax_{E_{p/q}}` over one period.
pub fn esi_points(frame: &GroupFrame, x: RationalLabel) -> Result<EsiSet> {
    require_model_group(frame)?;
    let lab = labeling(x)?;
    let word = lab.word.to_group_word();
    let e = frame.element(&word);
    let axis = oriented_axis_of(&e)?;
    let ell = e.translation_length();

    let mut records = Vec::with_capacity(lab.walls.len());
    for wall in &lab.walls {
        let line = frame.line(&wall.conjugator, wall.seam);
        let (point, _, parameter) = crossing(&axis, &line)
            .map_err(|err| Error::PeriodDetection(format!("{x}: wall {} misses the axis ({err})", wall.index)))?;
        let angle = local_angle(frame, &word, &wall.conjugator, wall.seam)?;
        let right = is_right_angle(angle);
        if right != wall.perpendicular {
            return Err(Error::Invariant(format!(
                "{x}: wall {} has angle {angle} but combinatorial perpendicular = {}",
                wall.index, wall.perpendicular
            )));
        }
        records.push(EsiRecord {
            index: wall.index,
            conjugator: wall.conjugator.clone(),
            seam: wall.seam,
            line,
            point,
            angle,
            is_right_angle: right,
            parameter,
        });
    }
    check_period(x, &records, ell)?;

    let essential_count = records[..records.len() - 1].iter().filter(|r| !r.is_right_angle).count();
    let shared_crossing = if x.is_odd() { None } else { Some(shared_crossing(frame, x, &axis)?) };
    Ok(EsiSet {
        label: x,
        word,
        axis,
        translation_length: ell,
        records,
        essential_count,
        quotient_count: essential_count / 2,
        shared_crossing,
        labeling: lab,
    })
}

fn check_period(x: RationalLabel, records: &[EsiRecord], ell: f64) -> Result<()> {
    if let Some(w) = records.windows(2).find(|w| w[1].parameter <= w[0].parameter) {
        return Err(Error::PeriodDetection(format!("{x}: walls {} and {} out of axis order", w[0].index, w[1].index)));
    }
    let span = records[records.len() - 1].parameter - records[0].parameter;
    if (span - ell).abs() > 1e-6 * ell.max(1.0) {
        return Err(Error::PeriodDetection(format!("{x}: window spans {span}, translation length {ell}")));
    }
    Ok(())
}

fn shared_crossing(frame: &GroupFrame, x: RationalLabel, axis: &Geodesic) -> Result<SharedCrossing> {
    let partner = frame.element(&conjugate_partner(x)?.to_group_word());
    let partner_axis = oriented_axis_of(&partner)?;
    let q = axis_crossing(axis, &frame.line_l)?.point;
    let q_tilde = axis_crossing(&partner_axis, &frame.line_l)?.point;
    let residual = q.distance(&q_tilde);
    if residual >= tol::get().fixed_point {
        return Err(Error::Invariant(format!("{x}: axes of E and Ẽ cross L {residual:e} apart")));
    }
    Ok(SharedCrossing { index: 0, residual })
}

/// Independent count of non-right crossings of `Ax_E` with every line
/// `W(Y)`, `|W| ≤ word_cap`, over the half-open period starting at `Ax_E ∩ L`.
pub fn brute_force_esi_count(frame: &GroupFrame, x: RationalLabel, word_cap: usize) -> Result<usize> {
    require_model_group(frame)?;
    let word = primitive_word(x)?.to_group_word();
    let e = frame.element(&word);
    let axis = oriented_axis_of(&e)?;
    let ell = e.translation_length();
    let (_, _, t0) = crossing(&axis, &frame.line_l)?;
    let eps = 1e-7 * ell.max(1.0);

    let mut seen: Vec<f64> = Vec::new();
    let mut count = 0;
    for (w, m) in group_elements(frame, word_cap) {
        for seam in [Seam::L, Seam::LA, Seam::LB] {
            let line = frame.seam_line(seam).image(&m);
            let Ok((_, _, t)) = crossing(&axis, &line) else { continue };
            if t < t0 - eps || t >= t0 + ell - eps || seen.iter().any(|s| (s - t).abs() < eps) {
                continue;
            }
            seen.push(t);
            if !is_right_angle(local_angle(frame, &word, &w, seam)?) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// All reduced words of length at most `cap` with their matrices.
fn group_elements(frame: &GroupFrame, cap: usize) -> Vec<(GroupWord, MobiusMap)> {
    let gens = [
        (Letter::A, frame.gen_a),
        (Letter::B, frame.gen_b),
        (Letter::AInv, frame.gen_a.inverse()),
        (Letter::BInv, frame.gen_b.inverse()),
    ];
    let mut frontier = vec![(GroupWord::identity(), MobiusMap::IDENTITY)];
    let mut out = frontier.clone();
    for _ in 0..cap {
        let mut next = Vec::with_capacity(frontier.len() * 3);
        for (w, m) in &frontier {
            for (l, g) in &gens {
                if w.letters().last() == Some(&l.inverse()) {
                    continue;
                }
                let mut v = w.clone();
                v.push(*l);
                next.push((v, m.compose(g)));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Homotopy class of a loop, by the generator axis it winds around.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LoopTag {
    /// Touches `L` and `L_A`: winds around the projection of `Ax_A`.
    AroundGamma0,
    /// Touches `L` and `L_B`: winds around the projection of `Ax_B`.
    AroundGammaInf,
}

impl LoopTag {
    pub fn from_seam(s: Seam) -> Option<Self> {
        match s {
            Seam::L => None,
            Seam::LA => Some(LoopTag::AroundGamma0),
            Seam::LB => Some(LoopTag::AroundGammaInf),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LoopTag::AroundGamma0 => "around-gamma0",
            LoopTag::AroundGammaInf => "around-gammaInf",
        }
    }
}

impl fmt::Display for LoopTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopDecomposition {
    pub label: RationalLabel,
    pub loops: Vec<LoopTag>,
    pub run_lengths: Vec<usize>,
}

impl LoopDecomposition {
    /// `(#around-γ∞, #around-γ0)`.
    pub fn totals(&self) -> (usize, usize) {
        let g0 = self.loops.iter().filter(|t| **t == LoopTag::AroundGamma0).count();
        (self.loops.len() - g0, g0)
    }
}

/// Loops of the closed geodesic: the arcs between consecutive crossings with
/// `L`-type lines over one period. Each arc crosses one `L_A` or `L_B` line and
/// is tagged by it.
pub fn loop_decomposition(frame: &GroupFrame, esi: &EsiSet) -> Result<LoopDecomposition> {
    let e = frame.element(&esi.word);
    let axis = oriented_axis_of(&e)?;
    if !axis.approx_eq(&esi.axis, 1e-6) {
        return Err(Error::Mismatch(format!("{}: crossing data was computed for another group", esi.label)));
    }
    let period = &esi.records[..esi.records.len() - 1];
    if period.windows(2).any(|w| (w[0].seam == Seam::L) == (w[1].seam == Seam::L)) {
        return Err(Error::Invariant(format!("{}: L-type and other crossings do not alternate", esi.label)));
    }
    let loops: Vec<LoopTag> = period.iter().filter_map(|r| LoopTag::from_seam(r.seam)).collect();
    let run_lengths = cyclic_runs(&loops);
    Ok(LoopDecomposition { label: esi.label, loops, run_lengths })
}

/// Run lengths of a cyclic sequence, starting at a run boundary.
pub fn cyclic_runs<T: PartialEq>(seq: &[T]) -> Vec<usize> {
    let n = seq.len();
    let Some(start) = (0..n).find(|&i| seq[i] != seq[(i + n - 1) % n]) else {
        return if n == 0 { vec![] } else { vec![n] };
    };
    let mut runs = Vec::new();
    let mut len = 1;
    for k in 1..n {
        if seq[(start + k) % n] == seq[(start + k - 1) % n] {
            len += 1;
        } else {
            runs.push(len);
            len = 1;
        }
    }
    runs.push(len);
    runs
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindingPattern {
    pub runs: Vec<usize>,
    pub continued_fraction: Vec<u64>,
    /// Continued fraction of `#γ∞ / #γ0` read back from the cyclic tag word.
    pub recovered: Option<Vec<u64>>,
}

impl WindingPattern {
    pub fn matches(&self) -> bool {
        self.recovered.as_ref() == Some(&self.continued_fraction)
    }
}

/// Run lengths of the loop tags together with the continued fraction of the
/// label. The tag word is desubstituted run by run: the entries of the
/// continued fraction are the run lengths of successive levels.
pub fn winding_pattern(x: RationalLabel, d: &LoopDecomposition) -> WindingPattern {
    let bits: Vec<bool> = d.loops.iter().map(|t| *t == LoopTag::AroundGammaInf).collect();
    WindingPattern {
        runs: d.run_lengths.clone(),
        continued_fraction: continued_fraction(x).unwrap_or_default(),
        recovered: desubstitute(&bits, true),
    }
}

/// Continued fraction of `#num / #other` for a balanced cyclic binary word.
fn desubstitute(w: &[bool], num: bool) -> Option<Vec<u64>> {
    let n_num = w.iter().filter(|b| **b == num).count();
    let n_den = w.len() - n_num;
    if n_den == 0 {
        return None;
    }
    if n_num < n_den {
        let mut out = vec![0];
        out.extend(desubstitute(w, !num)?);
        return Some(out);
    }
    let den_at: Vec<usize> = (0..w.len()).filter(|&i| w[i] != num).collect();
    let runs: Vec<usize> = den_at
        .iter()
        .enumerate()
        .map(|(k, &i)| {
            let next = den_at.get(k + 1).copied().unwrap_or(den_at[0] + w.len());
            next - i - 1
        })
        .collect();
    let a = *runs.iter().min()?;
    let b = *runs.iter().max()?;
    if a == 0 || b > a + 1 {
        return None;
    }
    if a == b {
        return (n_den == 1).then(|| vec![a as u64]);
    }
    let level: Vec<bool> = runs.iter().map(|r| *r == a).collect();
    let c = desubstitute(&level, true)?;
    let mut out = vec![a as u64, c[0] + 1];
    out.extend(&c[1..]);
    Some(out)
}

/// `H_L` acts on the crossings of a palindromic axis by `j ↦ −j`, reflecting
/// the axis about the crossing with `L`; the largest parameter mismatch.
pub fn mirror_residual(esi: &EsiSet) -> Option<f64> {
    if !esi.label.is_odd() {
        return None;
    }
    let by_index: HashMap<i64, f64> = esi.records.iter().map(|r| (r.index, r.parameter)).collect();
    let t0 = by_index[&0];
    Some(
        esi.records
            .iter()
            .filter_map(|r| by_index.get(&-r.index).map(|t| (r.parameter + t - 2.0 * t0).abs()))
            .fold(0.0, f64::max),
    )
}
