//! Acceptance suite: one PASS/FAIL line per criterion.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use hypesi_core::config::reference;
use hypesi_core::connector::{connectors, deformation_path, loop_count, max_separation};
use hypesi_core::esi::{brute_force_esi_count, esi_points, loop_decomposition, winding_pattern};
use hypesi_core::farey::conjugate_partner;
use hypesi_core::frame::{bend_generators, winding_group_check};
use hypesi_core::geodesic::{axis_crossing, oriented_axis_of};
use hypesi_core::{build_frame, primitive_word, BoundaryPoint, Geodesic, GroupFrame, Letter, MobiusMap, RationalLabel, Seam, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SMALL_BEND: f64 = 0.05;
const LARGER_BEND: f64 = 0.1;

fn fuchsian() -> GroupFrame {
    let (a, b) = reference().generators().unwrap();
    build_frame(&a, &b).unwrap()
}

fn bent(angle: f64) -> GroupFrame {
    let (a, b) = bend_generators(&fuchsian(), angle);
    build_frame(&a, &b).unwrap()
}

fn labels(max_sum: u64) -> Vec<RationalLabel> {
    RationalLabel::all_up_to(max_sum).into_iter().filter(|x| x.p() > 0 && x.q() > 0).collect()
}

/// Half-turn about `g` applied to `z`, as `z ↦ m + r²/(z − m)` about the
/// midpoint `m` of the endpoints, so tiny lines keep full relative precision.
fn half_turn_apply(g: &Geodesic, z: BoundaryPoint) -> BoundaryPoint {
    match g.endpoints() {
        [BoundaryPoint::Finite(c), BoundaryPoint::Finite(d)] => {
            let (m, r) = ((c + d) * 0.5, (d - c) * 0.5);
            match z {
                BoundaryPoint::Infinity => BoundaryPoint::Finite(m),
                BoundaryPoint::Finite(w) if w == m => BoundaryPoint::Infinity,
                BoundaryPoint::Finite(w) => BoundaryPoint::Finite(m + r * r / (w - m)),
            }
        }
        [BoundaryPoint::Finite(c), BoundaryPoint::Infinity] | [BoundaryPoint::Infinity, BoundaryPoint::Finite(c)] => match z {
            BoundaryPoint::Infinity => BoundaryPoint::Infinity,
            BoundaryPoint::Finite(w) => BoundaryPoint::Finite(c * 2.0 - w),
        },
        _ => unreachable!("geodesic endpoints are distinct"),
    }
}

/// Does the half-turn about `g` swap the endpoints `a, b` of `h`? Measured as
/// the chordal distance in `H(a) = b` or `H(b) = a`, whichever direction `H`
/// contracts; through the involution they are the same equation.
fn swap_residual(g: &Geodesic, h: &Geodesic) -> f64 {
    let [a, b] = h.endpoints();
    half_turn_apply(g, a).chordal(&b).min(half_turn_apply(g, b).chordal(&a))
}

/// Largest endpoint displacement, matching endpoints in either order.
fn set_distance(g: &Geodesic, h: &Geodesic) -> f64 {
    let ([a, b], [c, d]) = (g.endpoints(), h.endpoints());
    (a.chordal(&c).max(b.chordal(&d))).min(a.chordal(&d).max(b.chordal(&c)))
}

fn frame_orthogonality(f: &GroupFrame) -> f64 {
    (0..6)
        .map(|i| {
            let (g, h) = (&f.hexagon[i], &f.hexagon[(i + 1) % 6]);
            swap_residual(g, h).max(swap_residual(h, g))
        }).fold(0.0, f64::max)
}

fn loxodromic(u: C64, v: C64, k: C64) -> MobiusMap {
    let s = k.sqrt();
    MobiusMap::new(-v * s + u / s, u * v * (s - 1.0 / s), 1.0 / s - s, u * s - v / s).unwrap()
}

/// Random loxodromic pairs whose four axis endpoints are pairwise at least
/// one unit apart and whose product `A⁻¹B` is loxodromic too.
fn random_frames(n: usize) -> Vec<GroupFrame> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = Vec::new();
    while out.len() < n {
        let pts: Vec<C64> = (0..4).map(|_| C64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0))).collect();
        if (0..4).any(|i| (i + 1..4).any(|j| (pts[i] - pts[j]).norm() < 1.0)) {
            continue;
        }
        let mult = |rng: &mut ChaCha8Rng| C64::from_polar(rng.gen_range(1.0f64..3.0).exp(), rng.gen_range(-PI / 2.0..PI / 2.0));
        let a = loxodromic(pts[0], pts[1], mult(&mut rng));
        let b = loxodromic(pts[2], pts[3], mult(&mut rng));
        if !a.inverse().compose(&b).classify().is_loxodromic() {
            continue;
        }
        if let Ok(f) = build_frame(&a, &b) {
            out.push(f);
        }
    }
    out
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let f = fuchsian();
    let mut bad = Vec::new();
    let all = labels(12);
    for &x in &all {
        let n = x.sum() as usize;
        match esi_points(&f, x) {
            Ok(e) if e.essential_count == 2 * (n - 1) && e.quotient_count == n - 1 => {}
            Ok(e) => bad.push(format!("{x}: {} / {}", e.essential_count, e.quotient_count)),
            Err(e) => bad.push(format!("{x}: {e}")),
        }
    }
    let secs = t.elapsed().as_secs_f64();
    Outcome {
        pass: bad.is_empty() && secs < 30.0,
        detail: format!("{} labels with p+q <= 12 in {secs:.2} s; mismatches {bad:?}", all.len()),
    }
}

fn criterion_2() -> Outcome {
    let f = fuchsian();
    let mut bad = Vec::new();
    let all = labels(8);
    for &x in &all {
        let fast = esi_points(&f, x).map(|e| e.essential_count);
        let slow = brute_force_esi_count(&f, x, x.sum() as usize + 2);
        if fast.is_err() || fast != slow {
            bad.push(format!("{x}: {fast:?} vs {slow:?}"));
        }
    }
    Outcome { pass: bad.is_empty(), detail: format!("{} labels with p+q <= 8; mismatches {bad:?}", all.len()) }
}

fn criterion_3() -> Outcome {
    let mut bad = Vec::new();
    let all = RationalLabel::all_up_to(20);
    for &x in &all {
        let w = primitive_word(x).unwrap();
        let letters = w.letters();
        let literal = letters.iter().eq(letters.iter().rev());
        let count = |l: Letter| letters.iter().filter(|&&m| m == l).count() as u64;
        if literal != x.is_odd() || (count(Letter::A), count(Letter::B)) != (x.q(), x.p()) {
            bad.push(x.to_string());
        }
    }
    Outcome { pass: bad.is_empty(), detail: format!("{} labels with p+q <= 20; failures {bad:?}", all.len()) }
}

fn criterion_4() -> Outcome {
    let reference_residual = frame_orthogonality(&fuchsian());
    let random = random_frames(100).iter().map(frame_orthogonality).fold(0.0, f64::max);
    Outcome {
        pass: reference_residual < 1e-8 && random < 1e-8,
        detail: format!("reference {reference_residual:.1e}, worst of 100 random groups {random:.1e}"),
    }
}

fn criterion_5() -> Outcome {
    let f = fuchsian();
    let mut worst = 0.0f64;
    let mut bad = Vec::new();
    let evens: Vec<_> = labels(12).into_iter().filter(|x| !x.is_odd()).collect();
    for &x in &evens {
        let e = f.element(&primitive_word(x).unwrap().to_group_word());
        let partner = f.element(&conjugate_partner(x).unwrap().to_group_word());
        let cross = |m: &MobiusMap| axis_crossing(&oriented_axis_of(m).unwrap(), &f.line_l).map(|c| c.point);
        let distinct = set_distance(&oriented_axis_of(&e).unwrap(), &oriented_axis_of(&partner).unwrap()) > 1e-6;
        match (cross(&e), cross(&partner)) {
            (Ok(p), Ok(q)) if distinct => worst = worst.max(p.distance(&q)),
            (a, b) => bad.push(format!("{x}: distinct axes {distinct}, {:?} {:?}", a.err(), b.err())),
        }
    }
    Outcome {
        pass: bad.is_empty() && worst < 1e-8,
        detail: format!("{} even labels with p+q <= 12; worst distance {worst:.1e}; failures {bad:?}", evens.len()),
    }
}

fn criterion_6() -> Outcome {
    let (mut inv, mut perp) = (0.0f64, 0.0f64);
    let mut bad = Vec::new();
    for f in [fuchsian(), bent(SMALL_BEND), bent(LARGER_BEND)] {
        for x in labels(10) {
            let set = match connectors(&f, x) {
                Ok(s) => s,
                Err(e) => {
                    bad.push(format!("{x}: {e}"));
                    continue;
                }
            };
            for r in &set.records {
                inv = inv.max(swap_residual(&r.line, &r.orthogonal));
                perp = perp.max(swap_residual(&r.orthogonal, &r.line)).max(swap_residual(&r.orthogonal, &r.axis));
            }
        }
    }
    Outcome {
        pass: bad.is_empty() && inv < 1e-8 && perp < 1e-8,
        detail: format!("3 groups, p+q <= 10; invariance {inv:.1e}, perpendicularity {perp:.1e}; failures {bad:?}"),
    }
}

fn criterion_7() -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for f in [bent(SMALL_BEND), bent(LARGER_BEND)] {
        for x in labels(10) {
            let n = x.sum() as usize;
            let ok = connectors(&f, x).is_ok_and(|set| {
                let marked = set.records.iter().filter(|r| !r.perpendicular).count();
                let tagged = |s: Seam| set.records.iter().filter(|r| r.seam == s).count();
                let (loops, tags, _) = loop_count(&set).unwrap_or((0, Vec::new(), Vec::new()));
                marked == 2 * (n - 1)
                    && set.marked_points.len() == marked
                    && set.quotient_connector_count() == n - 1
                    && loops == n
                    && tags.len() == tagged(Seam::LA) + tagged(Seam::LB)
                    && (tagged(Seam::LB), tagged(Seam::LA)) == (x.p() as usize, x.q() as usize)
            });
            checked += 1;
            if !ok {
                bad.push(x.to_string());
            }
        }
    }
    Outcome { pass: bad.is_empty(), detail: format!("{checked} label-group pairs, p+q <= 10; failures {bad:?}") }
}

fn criterion_8() -> Outcome {
    let base = fuchsian();
    let (mut sep, mut dist) = (0.0f64, 0.0f64);
    let mut bad = Vec::new();
    for x in labels(10) {
        let path = match deformation_path(&base, x, LARGER_BEND, 10) {
            Ok(p) => p,
            Err(e) => {
                bad.push(format!("{x}: {e}"));
                continue;
            }
        };
        let end = &path.last().unwrap().set;
        sep = sep.max(max_separation(end));
        let esi = esi_points(&base, x).unwrap();
        for r in end.kept() {
            let q = esi.record(r.index).unwrap().point.to_space();
            dist = dist.max(r.orthogonal.distance_to_point(&q));
        }
    }
    Outcome {
        pass: bad.is_empty() && sep < 1e-7 && dist < 1e-7,
        detail: format!("10 steps from bend {LARGER_BEND}, p+q <= 10; separation {sep:.1e}, distance to crossings {dist:.1e}; failures {bad:?}"),
    }
}

fn criterion_9() -> Outcome {
    let f = fuchsian();
    let pattern = |x: RationalLabel| {
        let d = loop_decomposition(&f, &esi_points(&f, x).unwrap()).unwrap();
        winding_pattern(x, &d)
    };
    let (one_third, three) = (pattern(RationalLabel::new(1, 3).unwrap()), pattern(RationalLabel::new(3, 1).unwrap()));
    let pinned = one_third.runs == [1, 3]
        && one_third.continued_fraction == [0, 3]
        && three.runs == [1, 3]
        && three.continued_fraction == [3];
    let bad: Vec<_> = labels(10).into_iter().filter(|&x| !pattern(x).matches()).map(|x| x.to_string()).collect();
    Outcome {
        pass: pinned && bad.is_empty(),
        detail: format!("1/3 and 3/1 pinned {pinned}; p+q <= 10 mismatches {bad:?}"),
    }
}

fn criterion_10() -> Outcome {
    let results: Vec<(f64, bool)> = [0.0, SMALL_BEND, LARGER_BEND]
        .iter()
        .map(|&bend| {
            let f = if bend == 0.0 { fuchsian() } else { bent(bend) };
            (bend, winding_group_check(&f, 8, 2000).is_ok_and(|r| r.verdict))
        })
        .collect();
    Outcome {
        pass: results.iter().all(|r| r.1),
        detail: format!("word length 8, 2000 samples, (bend, verdict) {results:?}"),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("ESI count", criterion_1),
        ("oracle equivalence", criterion_2),
        ("palindromicity", criterion_3),
        ("frame orthogonality", criterion_4),
        ("shared crossing, even case", criterion_5),
        ("connector invariance", criterion_6),
        ("counts in H3", criterion_7),
        ("Fuchsian degeneration", criterion_8),
        ("winding pattern", criterion_9),
        ("winding-group heuristic", criterion_10),
    ];
    let mut all = true;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        all &= o.pass;
        println!("criterion {:>2} {}: {name}: {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
