//! Batch verification of every label up to a maximal `p+q`.

use std::thread;

use crate::connector::{connectors, deformation_path, loop_count, max_separation};
use crate::esi::{brute_force_esi_count, esi_points, loop_decomposition, winding_pattern, LoopTag};
use crate::farey::{primitive_word, RationalLabel};
use crate::error::Result;
use crate::frame::GroupFrame;
use crate::records::{float, Table};
use crate::words::Letter;

/// Residual bound for frame orthogonality, shared crossings and connectors.
pub const RESIDUAL_BOUND: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub brute_force_max_sum: u64,
    pub winding_max_sum: u64,
    pub connector_max_sum: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { brute_force_max_sum: 8, winding_max_sum: 10, connector_max_sum: 10 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabelReport {
    pub label: RationalLabel,
    pub palindrome: bool,
    pub essential_count: Option<usize>,
    pub quotient_count: Option<usize>,
    pub brute_force: Option<usize>,
    pub shared_residual: Option<f64>,
    pub winding: Option<bool>,
    /// One verdict per deformed group.
    pub connectors: Vec<bool>,
    pub errors: Vec<String>,
}

impl LabelReport {
    pub fn expected(&self) -> usize {
        2 * (self.label.sum() as usize - 1)
    }

    pub fn passed(&self) -> bool {
        let n = self.expected();
        self.errors.is_empty()
            && self.palindrome
            && self.essential_count == Some(n)
            && self.quotient_count == Some(n / 2)
            && self.brute_force.map_or(true, |b| b == n)
            && self.shared_residual.map_or(true, |r| r < RESIDUAL_BOUND)
            && self.winding != Some(false)
            && self.connectors.iter().all(|&c| c)
    }
}

fn palindrome_ok(x: RationalLabel) -> bool {
    primitive_word(x).is_ok_and(|w| {
        w.is_palindrome() == x.is_odd() && w.count(Letter::A) as u64 == x.q() && w.count(Letter::B) as u64 == x.p()
    })
}

fn connector_ok(frame: &GroupFrame, x: RationalLabel) -> std::result::Result<bool, String> {
    let set = connectors(frame, x).map_err(|e| e.to_string())?;
    let (loops, tags, _) = loop_count(&set).map_err(|e| e.to_string())?;
    let n = x.sum() as usize;
    let g0 = tags.iter().filter(|t| **t == LoopTag::AroundGamma0).count();
    let residual = set
        .records
        .iter()
        .flat_map(|r| [r.connector_residuals[0], r.connector_residuals[1], r.invariance_residual, r.partner_residual])
        .fold(0.0, f64::max);
    Ok(set.marked_points.len() == 2 * (n - 1)
        && set.quotient_connector_count() == n - 1
        && loops == n
        && (loops - g0, g0) == (x.p() as usize, x.q() as usize)
        && residual < RESIDUAL_BOUND)
}

/// Every check for one label on the model group `frame` and its deformations.
pub fn verify_label(frame: &GroupFrame, deformed: &[GroupFrame], x: RationalLabel, opts: &VerifyOptions) -> LabelReport {
    let mut report = LabelReport {
        label: x,
        palindrome: palindrome_ok(x),
        essential_count: None,
        quotient_count: None,
        brute_force: None,
        shared_residual: None,
        winding: None,
        connectors: Vec::new(),
        errors: Vec::new(),
    };
    match esi_points(frame, x) {
        Ok(esi) => {
            report.essential_count = Some(esi.essential_count);
            report.quotient_count = Some(esi.quotient_count);
            report.shared_residual = esi.shared_crossing.map(|s| s.residual);
            if x.sum() <= opts.winding_max_sum {
                match loop_decomposition(frame, &esi) {
                    Ok(d) => report.winding = Some(d.totals() == (x.p() as usize, x.q() as usize) && winding_pattern(x, &d).matches()),
                    Err(e) => report.errors.push(e.to_string()),
                }
            }
        }
        Err(e) => report.errors.push(e.to_string()),
    }
    if x.sum() <= opts.brute_force_max_sum {
        match brute_force_esi_count(frame, x, x.sum() as usize + 2) {
            Ok(n) => report.brute_force = Some(n),
            Err(e) => report.errors.push(e.to_string()),
        }
    }
    if x.sum() <= opts.connector_max_sum {
        for f in deformed {
            match connector_ok(f, x) {
                Ok(ok) => report.connectors.push(ok),
                Err(e) => {
                    report.connectors.push(false);
                    report.errors.push(e);
                }
            }
        }
    }
    report
}

/// Labels with `p, q ≥ 1` and `p+q ≤ max_sum`, checked across worker threads;
/// reports come back in label order.
pub fn verify_all(frame: &GroupFrame, deformed: &[GroupFrame], max_sum: u64, opts: &VerifyOptions) -> Vec<LabelReport> {
    let labels: Vec<RationalLabel> = RationalLabel::all_up_to(max_sum).into_iter().filter(|x| x.p() > 0 && x.q() > 0).collect();
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(labels.len().max(1));
    let mut slots: Vec<Option<LabelReport>> = vec![None; labels.len()];
    thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let labels = &labels;
                s.spawn(move || {
                    (w..labels.len())
                        .step_by(workers)
                        .map(|i| (i, verify_label(frame, deformed, labels[i], opts)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (i, r) in h.join().expect("verify worker") {
                slots[i] = Some(r);
            }
        }
    });
    slots.into_iter().map(|r| r.expect("every label verified")).collect()
}

/// Largest hexagon adjacency residual of a frame.
pub fn frame_residual(frame: &GroupFrame) -> f64 {
    frame.hexagon_residuals().into_iter().fold(0.0, f64::max)
}

pub fn verify_table(reports: &[LabelReport]) -> Table {
    let mut t = Table::new(
        "verify",
        &[
            "label",
            "essential_count",
            "expected",
            "quotient_count",
            "brute_force",
            "palindrome",
            "shared_residual",
            "winding",
            "connectors",
            "status",
        ],
    );
    let opt = |o: Option<usize>| o.map_or("-".into(), |n| n.to_string());
    let yes_no = |b: bool| if b { "yes" } else { "no" }.to_string();
    for r in reports {
        t.push(vec![
            r.label.to_string(),
            opt(r.essential_count),
            r.expected().to_string(),
            opt(r.quotient_count),
            opt(r.brute_force),
            yes_no(r.palindrome),
            r.shared_residual.map_or("-".into(), float),
            r.winding.map_or("-".into(), yes_no),
            if r.connectors.is_empty() {
                "-".into()
            } else {
                format!("{}/{}", r.connectors.iter().filter(|&&c| c).count(), r.connectors.len())
            },
            if r.passed() { "pass" } else { "fail" }.into(),
        ]);
    }
    t
}

/// Bound on foot separation and on the distance to the planar crossing at the
/// end of a deformation path.
pub const DEGENERATION_BOUND: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq)]
pub struct DeformReport {
    pub label: RationalLabel,
    pub separations: Vec<f64>,
    pub monotone: bool,
    /// Largest distance from a connector of the planar endpoint to its crossing.
    pub crossing_distance: f64,
}

impl DeformReport {
    pub fn end_separation(&self) -> f64 {
        self.separations.last().copied().unwrap_or(f64::INFINITY)
    }

    pub fn passed(&self) -> bool {
        self.monotone && self.end_separation() < DEGENERATION_BOUND && self.crossing_distance < DEGENERATION_BOUND
    }
}

/// Connectors along the bending path from `bend` down to the planar `base`.
pub fn deform_report(base: &GroupFrame, x: RationalLabel, bend: f64, steps: usize) -> Result<DeformReport> {
    let path = deformation_path(base, x, bend, steps)?;
    let separations: Vec<f64> = path.iter().map(|s| max_separation(&s.set)).collect();
    let monotone = separations.windows(2).all(|w| w[1] <= w[0] + 1e-12);
    let esi = esi_points(base, x)?;
    let end = &path.last().expect("nonempty path").set;
    let crossing_distance = end
        .kept()
        .map(|r| esi.record(r.index).map_or(f64::INFINITY, |e| r.orthogonal.distance_to_point(&e.point.to_space())))
        .fold(0.0, f64::max);
    Ok(DeformReport { label: x, separations, monotone, crossing_distance })
}

pub fn deform_table(reports: &[DeformReport]) -> Table {
    let mut t = Table::new(
        "deform",
        &["label", "steps", "start_separation", "end_separation", "monotone", "crossing_distance", "status"],
    );
    for r in reports {
        t.push(vec![
            r.label.to_string(),
            (r.separations.len().saturating_sub(1)).to_string(),
            float(r.separations.first().copied().unwrap_or(f64::INFINITY)),
            float(r.end_separation()),
            if r.monotone { "yes" } else { "no" }.into(),
            float(r.crossing_distance),
            if r.passed() { "pass" } else { "fail" }.into(),
        ]);
    }
    t
}
