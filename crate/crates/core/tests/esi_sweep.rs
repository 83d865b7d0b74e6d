use std::f64::consts::FRAC_PI_2;

use hypesi_core::config::reference;
use hypesi_core::esi::{brute_force_esi_count, esi_points, loop_decomposition, mirror_residual, winding_pattern};
use hypesi_core::{build_frame, GroupFrame, RationalLabel};

fn frame() -> GroupFrame {
    let (a, b) = reference().generators().unwrap();
    build_frame(&a, &b).unwrap()
}

fn labels(max_sum: u64) -> impl Iterator<Item = RationalLabel> {
    RationalLabel::all_up_to(max_sum).into_iter().filter(|x| x.p() >= 1 && x.q() >= 1)
}

#[test]
fn counts_up_to_sum_twelve() {
    let f = frame();
    for x in labels(12) {
        let s = esi_points(&f, x).unwrap();
        let n = x.sum() as usize;
        assert_eq!(s.essential_count, 2 * (n - 1), "{x}");
        assert_eq!(s.quotient_count, n - 1, "{x}");
    }
}

#[test]
fn kept_angles_are_far_from_right() {
    let f = frame();
    let mut closest = f64::INFINITY;
    for x in labels(12) {
        for r in esi_points(&f, x).unwrap().kept() {
            closest = closest.min((r.angle - FRAC_PI_2).abs());
        }
    }
    let eps = hypesi_core::tol::get().angle;
    assert!(closest > 10.0 * eps, "closest non-right angle is {closest:e} from π/2");
}

#[test]
fn brute_force_agrees() {
    let f = frame();
    for x in labels(8) {
        let s = esi_points(&f, x).unwrap();
        let cap = x.sum() as usize + 2;
        assert_eq!(brute_force_esi_count(&f, x, cap).unwrap(), s.essential_count, "{x}");
    }
}

#[test]
fn even_labels_share_the_crossing_on_l() {
    let f = frame();
    for x in labels(12).filter(|x| !x.is_odd()) {
        let shared = esi_points(&f, x).unwrap().shared_crossing.unwrap();
        assert!(shared.residual < 1e-8, "{x}: {}", shared.residual);
    }
}

#[test]
fn odd_labels_are_mirror_symmetric() {
    let f = frame();
    for x in labels(12).filter(|x| x.is_odd()) {
        let s = esi_points(&f, x).unwrap();
        assert!(mirror_residual(&s).unwrap() < 1e-9, "{x}");
    }
}

#[test]
fn loops_and_winding_up_to_sum_ten() {
    let f = frame();
    for x in labels(10) {
        let d = loop_decomposition(&f, &esi_points(&f, x).unwrap()).unwrap();
        assert_eq!(d.loops.len() as u64, x.sum(), "{x}");
        assert_eq!(d.totals(), (x.p() as usize, x.q() as usize), "{x}");
        assert!(winding_pattern(x, &d).matches(), "{x}");
    }
}
