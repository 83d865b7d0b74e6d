//! Tab-separated record tables.
//!
//! Each table is a `#kind` line, a header line, then one line per row.
//! Floats are printed with 17 significant digits and parse back exactly.

use std::fmt;

use crate::connector::ConnectorSet;
use crate::error::{Error, Result};
use crate::esi::EsiSet;
use crate::frame::{ModelGroupReport, WindingReport};
use crate::geodesic::Geodesic;
use crate::isometry::BoundaryPoint;

pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

fn flag(b: bool, yes: &str, no: &str) -> String {
    if b { yes } else { no }.to_string()
}

fn endpoint_cells(g: &Geodesic) -> [String; 4] {
    let cells = |p: BoundaryPoint| match p {
        BoundaryPoint::Finite(z) => [float(z.re), float(z.im)],
        BoundaryPoint::Infinity => [float(f64::INFINITY), float(f64::INFINITY)],
    };
    let [a, b] = g.endpoints();
    let ([a0, a1], [b0, b1]) = (cells(a), cells(b));
    [a0, a1, b0, b1]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub kind: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(kind: &str, header: &[&str]) -> Self {
        Table { kind: kind.into(), header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.header.len(), "row width for {}", self.kind);
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    pub fn cell(&self, row: usize, name: &str) -> Result<&str> {
        let c = self.column(name).ok_or_else(|| Error::Config(format!("{}: no column {name}", self.kind)))?;
        self.rows.get(row).map(|r| r[c].as_str()).ok_or_else(|| Error::Config(format!("{}: no row {row}", self.kind)))
    }

    pub fn float(&self, row: usize, name: &str) -> Result<f64> {
        let s = self.cell(row, name)?;
        s.parse().map_err(|_| Error::Config(format!("{}: {name} = {s:?} is not a float", self.kind)))
    }
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "#{}", self.kind)?;
        writeln!(f, "{}", self.header.join("\t"))?;
        for r in &self.rows {
            writeln!(f, "{}", r.join("\t"))?;
        }
        Ok(())
    }
}

/// Parse concatenated tables. Blank lines between tables are ignored.
pub fn parse_tables(text: &str) -> Result<Vec<Table>> {
    let mut out: Vec<Table> = Vec::new();
    let mut lines = text.lines().filter(|l| !l.is_empty());
    while let Some(line) = lines.next() {
        if let Some(kind) = line.strip_prefix('#') {
            let header = lines.next().ok_or_else(|| Error::Config(format!("{kind}: missing header")))?;
            out.push(Table { kind: kind.into(), header: header.split('\t').map(String::from).collect(), rows: Vec::new() });
            continue;
        }
        let t = out.last_mut().ok_or_else(|| Error::Config("row before any table".into()))?;
        let row: Vec<String> = line.split('\t').map(String::from).collect();
        if row.len() != t.header.len() {
            return Err(Error::Config(format!("{}: row has {} fields, header has {}", t.kind, row.len(), t.header.len())));
        }
        t.rows.push(row);
    }
    Ok(out)
}

pub const ESI_HEADER: [&str; 12] =
    ["index", "line", "seam", "end1_re", "end1_im", "end2_re", "end2_im", "x", "y", "angle", "parameter", "status"];

/// One row per labeled line of the closed window.
pub fn esi_table(esi: &EsiSet) -> Table {
    let mut t = Table::new("esi", &ESI_HEADER);
    for r in &esi.records {
        let [a0, a1, b0, b1] = endpoint_cells(&r.line);
        let p = r.point.z();
        t.push(vec![
            r.index.to_string(),
            r.line_word(),
            r.seam.to_string(),
            a0,
            a1,
            b0,
            b1,
            float(p.re),
            float(p.im),
            float(r.angle),
            float(r.parameter),
            flag(r.is_right_angle, "excluded", "kept"),
        ]);
    }
    t
}

pub fn esi_summary(esi: &EsiSet) -> Table {
    let mut t = Table::new(
        "esi-summary",
        &["label", "word", "essential_count", "expected", "quotient_count", "translation_length", "shared_residual"],
    );
    t.push(vec![
        esi.label.to_string(),
        esi.word.to_string(),
        esi.essential_count.to_string(),
        (2 * (esi.label.sum() - 1)).to_string(),
        esi.quotient_count.to_string(),
        float(esi.translation_length),
        esi.shared_crossing.map_or("-".into(), |s| float(s.residual)),
    ]);
    t
}

pub const CONNECTOR_HEADER: [&str; 20] = [
    "index",
    "conjugator",
    "seam",
    "line_end1_re",
    "line_end1_im",
    "line_end2_re",
    "line_end2_im",
    "orth_end1_re",
    "orth_end1_im",
    "orth_end2_re",
    "orth_end2_im",
    "foot_on_axis",
    "foot_on_partner_axis",
    "separation",
    "perp_line",
    "perp_axis",
    "invariance",
    "partner",
    "status",
    "partner_index",
];

/// One row per labeled line of the half-open window.
pub fn connector_table(set: &ConnectorSet) -> Table {
    let mut t = Table::new("connectors", &CONNECTOR_HEADER);
    for r in &set.records {
        let [l0, l1, l2, l3] = endpoint_cells(&r.line);
        let [o0, o1, o2, o3] = endpoint_cells(&r.orthogonal);
        let partner = set
            .pairs
            .iter()
            .find_map(|&(i, j)| if i == r.index { Some(j) } else if j == r.index { Some(i) } else { None })
            .map_or("-".into(), |j| j.to_string());
        t.push(vec![
            r.index.to_string(),
            r.conjugator.to_string(),
            r.seam.to_string(),
            l0,
            l1,
            l2,
            l3,
            o0,
            o1,
            o2,
            o3,
            float(r.foot_on_axis),
            float(r.foot_on_partner_axis),
            float(r.separation),
            float(r.connector_residuals[0]),
            float(r.connector_residuals[1]),
            float(r.invariance_residual),
            float(r.partner_residual),
            flag(r.perpendicular, "excluded", "kept"),
            partner,
        ]);
    }
    t
}

pub fn connector_summary(set: &ConnectorSet, loop_count: usize) -> Table {
    let mut t = Table::new(
        "connector-summary",
        &["label", "marked_points", "quotient_connectors", "expected", "loop_count", "loop_tags"],
    );
    let tags: Vec<&str> = set.loop_tags.iter().map(|l| l.name()).collect();
    t.push(vec![
        set.label.to_string(),
        set.marked_points.len().to_string(),
        set.quotient_connector_count().to_string(),
        (set.label.sum() - 1).to_string(),
        loop_count.to_string(),
        tags.join(","),
    ]);
    t
}

pub fn model_table(report: &ModelGroupReport, hexagon_residuals: &[f64; 6]) -> Table {
    let mut t = Table::new("model", &["check", "value"]);
    let yes_no = |b: bool| flag(b, "yes", "no");
    t.push(vec!["axes_disjoint".into(), yes_no(report.axes_disjoint)]);
    t.push(vec!["hexagon_convex".into(), yes_no(report.hexagon_convex)]);
    t.push(vec!["all_hyperbolic".into(), yes_no(report.all_hyperbolic)]);
    for (i, r) in hexagon_residuals.iter().enumerate() {
        t.push(vec![format!("hexagon_residual_{i}"), float(*r)]);
    }
    t.push(vec!["verdict".into(), flag(report.verdict, "pass", "fail")]);
    t
}

pub fn winding_table(report: &WindingReport) -> Table {
    let mut t = Table::new("winding", &["axis", "support", "violation"]);
    for ((name, s), v) in ["A", "B", "A^-1B"].iter().zip(report.support).zip(report.violation) {
        t.push(vec![name.to_string(), flag(s, "yes", "no"), float(v)]);
    }
    t
}

pub fn winding_summary(report: &WindingReport) -> Table {
    let mut t = Table::new("winding-summary", &["sample_count", "verdict"]);
    t.push(vec![report.sample_count.to_string(), flag(report.verdict, "pass", "fail")]);
    t
}
