use hypesi_core::config::reference;
use hypesi_core::connector::{connectors, deformation_path, loop_count, max_separation};
use hypesi_core::esi::{esi_points, LoopTag};
use hypesi_core::frame::{bend_generators, winding_group_check};
use hypesi_core::{build_frame, GroupFrame, RationalLabel};

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

fn labels(max_sum: u64) -> impl Iterator<Item = RationalLabel> {
    RationalLabel::all_up_to(max_sum).into_iter().filter(|x| x.p() >= 1 && x.q() >= 1)
}

#[test]
fn larger_deformation_passes_winding_heuristic() {
    let report = winding_group_check(&bent(LARGER_BEND), 8, 2000).unwrap();
    assert!(report.verdict, "{report:?}");
}

#[test]
fn counts_on_deformed_groups() {
    for f in [bent(SMALL_BEND), bent(LARGER_BEND), bent(0.3)] {
        for x in labels(10) {
            let s = connectors(&f, x).unwrap();
            let n = x.sum() as usize;
            assert_eq!(s.marked_points.len(), 2 * (n - 1), "{x}");
            assert_eq!(s.quotient_connector_count(), n - 1, "{x}");
            let (loops, tags, _) = loop_count(&s).unwrap();
            assert_eq!(loops, n, "{x}");
            let g0 = tags.iter().filter(|t| **t == LoopTag::AroundGamma0).count();
            assert_eq!((loops - g0, g0), (x.p() as usize, x.q() as usize), "{x}");
        }
    }
}

#[test]
fn half_turn_invariance_and_residuals() {
    for f in [fuchsian(), bent(SMALL_BEND), bent(LARGER_BEND)] {
        for x in labels(10) {
            for r in connectors(&f, x).unwrap().kept() {
                assert!(r.invariance_residual < 1e-8, "{x} {}: {:e}", r.index, r.invariance_residual);
                assert!(r.partner_residual < 1e-8, "{x} {}: {:e}", r.index, r.partner_residual);
                assert!(r.connector_residuals.iter().all(|v| *v < 1e-8), "{x} {}", r.index);
            }
        }
    }
}

#[test]
fn deformation_continuity_to_fuchsian_point() {
    let base = fuchsian();
    for x in labels(8) {
        let path = deformation_path(&base, x, LARGER_BEND, 10).unwrap();
        let seps: Vec<f64> = path.iter().map(|s| max_separation(&s.set)).collect();
        assert!(seps.windows(2).all(|w| w[1] <= w[0] + 1e-12), "{x}: {seps:?}");
        let end = &path.last().unwrap().set;
        assert!(max_separation(end) < 1e-7, "{x}");
        let esi = esi_points(&base, x).unwrap();
        for r in end.kept() {
            let q = esi.record(r.index).unwrap().point.to_space();
            assert!(r.orthogonal.distance_to_point(&q) < 1e-7, "{x} {}", r.index);
        }
    }
}

#[test]
fn fuchsian_feet_match_crossings() {
    let f = fuchsian();
    for x in labels(10) {
        let esi = esi_points(&f, x).unwrap();
        let s = connectors(&f, x).unwrap();
        for r in &s.records {
            let e = esi.record(r.index).unwrap();
            assert!((r.foot_on_axis - e.parameter).abs() < 1e-7, "{x} {}", r.index);
        }
    }
}
