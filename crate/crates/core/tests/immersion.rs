mod common;

use soliton_core::basis::{su_project, SuBasis};
use soliton_core::cpn::veronese_chain;
use soliton_core::field::Diff;
use soliton_core::geometry::*;
use soliton_core::immersion::*;
use soliton_core::matrix::{CMat, JMat};
use soliton_core::spectral::Normalization;
use soliton_core::{re, Error, FieldSampler, Point, C64};

fn surface(n: usize, k: usize, f: Family) -> Surface {
    Surface::build(&veronese_chain(n).unwrap(), k, f, Options::default()).unwrap()
}

/// Points away from the origin and the fold of the scaling family at |z| = 1.
fn pts(seed: u64, t: &[f64]) -> Vec<Point> {
    common::points(seed, 30, 3.0, t)
        .into_iter()
        .filter(|p| p.modulus() > 0.1 && (p.modulus() - 1.0).abs() > 0.1)
        .collect()
}

fn coords(m: &CMat) -> [f64; 3] {
    let c = su_project(m, &SuBasis::new(2)).unwrap();
    [c[0], c[1], c[2]]
}

#[test]
fn family_names_round_trip() {
    for f in Family::ALL {
        assert_eq!(Family::parse(f.name()), Some(f));
    }
    assert_eq!(Family::parse("ST"), Some(Family::St));
    assert_eq!(Family::parse("sphere"), None);
}

#[test]
fn surfaces_are_su_valued() {
    for f in Family::ALL {
        for k in 0..2 {
            let s = surface(2, k, f);
            for p in pts(1, &common::TS) {
                let v = s.f.eval(p);
                assert!((&v + &v.dagger()).norm() < 1e-11, "{f:?} k={k}");
                assert!(v.trace().norm() < 1e-11);
            }
        }
    }
    let s = surface(3, 1, Family::St);
    for p in pts(2, &common::TS) {
        assert!(su_project(&s.f.eval(p), &SuBasis::new(3)).is_ok());
    }
}

#[test]
fn st_surface_vanishes_at_origin() {
    for k in 0..2 {
        let s = surface(2, k, Family::St);
        for t in common::TS {
            assert!(s.f.eval(Point::new(0.0, 0.0, t)).norm() < 1e-14);
        }
    }
}

#[test]
fn direct_and_conjugated_immersions_agree() {
    for f in Family::ALL {
        for k in 0..2 {
            let s = surface(2, k, f);
            for p in pts(3, &common::TS) {
                assert!(common::close(&s.f.eval(p), &s.f_direct.eval(p), 1e-10), "{f:?} k={k}");
            }
        }
    }
}

#[test]
fn tangents_match_derivatives() {
    for f in Family::ALL {
        let s = surface(2, 0, f);
        for p in pts(4, &common::TS) {
            assert!(tangent_residual(&s, p, Diff::Exact).unwrap() < 1e-10, "{f:?}");
            if f != Family::Gwfi {
                assert!(psi_deformation_residual(&s, p, Diff::Exact).unwrap() < 1e-10, "{f:?}");
            }
        }
    }
}

#[test]
fn psi_deformation_rejects_wrong_characteristic() {
    let mut s = surface(2, 0, Family::Scaling);
    let a = s.a[0].clone();
    s.a[0] = FieldSampler::new(a.order(), false, move |v| a.apply(v).scale_c(re(1.5)));
    let worst = pts(5, &[1.0]).into_iter().map(|p| psi_deformation_residual(&s, p, Diff::Exact).unwrap()).fold(0.0, f64::max);
    assert!(worst > 1e-3);
}

#[test]
fn st_surface_is_round_sphere() {
    for k in 0..2 {
        let s = surface(2, k, Family::St);
        for t in [0.5, 1.0, 2.0] {
            let r = 1.0 / (1.0 + t * t);
            for p in pts(6, &[t]) {
                let c = curvatures(&s, p, orientation_sign(&s, p).unwrap()).unwrap();
                assert!((c.gaussian - 1.0 / (r * r)).abs() < 1e-8, "k={k} t={t} K={}", c.gaussian);
                assert!((c.mean - 2.0 / r).abs() < 1e-8);
                assert!((c.gaussian_literal - c.gaussian).abs() < 1e-8);
            }
            let cloud: Vec<[f64; 3]> = common::points(7, 40, 3.0, &[t]).iter().map(|p| coords(&s.f.eval(*p))).collect();
            let fit = sphere_fit(&cloud).unwrap();
            assert!((fit.radius - r).abs() < 1e-10 && fit.max_residual < 1e-10);
        }
    }
}

#[test]
fn scaling_surface_curvatures() {
    for t in [0.25, 0.5, 1.0] {
        let s = surface(2, 0, Family::Scaling);
        for p in pts(8, &[t]) {
            let c = curvatures(&s, p, 1.0).unwrap();
            assert!((c.gaussian - 4.0 * t * t).abs() < 1e-8, "t={t} K={}", c.gaussian);
            assert!((c.mean.abs() - 4.0 * t).abs() < 1e-8);
        }
    }
}

#[test]
fn scaling_frame_degenerates_on_unit_circle() {
    let s = surface(2, 0, Family::Scaling);
    let r = curvatures(&s, Point::new(0.6, 0.8, 0.5), 1.0);
    assert!(matches!(r, Err(Error::FrameDegenerate { .. })), "{r:?}");
}

#[test]
fn frame_curvatures_agree_with_second_derivatives_of_f() {
    let mut checked = 0;
    for f in Family::ALL {
        for k in 0..2 {
            let s = surface(2, k, f);
            for p in pts(9, &[0.5, 1.0]) {
                let sign = 1.0;
                let (Ok(c), Ok((kk, hh))) = (curvatures(&s, p, sign), curvatures_of_immersion(&s.f, p, sign)) else {
                    continue;
                };
                assert!((c.gaussian - kk).abs() < 1e-7 * kk.abs().max(1.0), "{f:?} k={k} {p:?}");
                assert!((c.mean - hh).abs() < 1e-7 * hh.abs().max(1.0), "{f:?} k={k} {p:?}");
                assert!(c.mean * c.mean >= 4.0 * c.gaussian - 1e-8);
                checked += 1;
            }
        }
    }
    assert!(checked > 100, "{checked}");
}

#[test]
fn normal_is_unit_and_orthogonal() {
    for f in Family::ALL {
        let s = surface(2, 1, f);
        for p in pts(10, &[0.5, 2.0]) {
            let Ok(fr) = frame(&s, p, 1.0) else { continue };
            let ip = |a: &CMat, b: &CMat| -0.5 * (a * b).trace().re;
            assert!((ip(&fr.normal, &fr.normal) - 1.0).abs() < 1e-10);
            for t in &fr.tangents {
                assert!(ip(&fr.normal, t).abs() < 1e-10, "{f:?}");
            }
            assert!(fr.second_asymmetry < 1e-9);
            assert!(common::close(&normal_field(&s, 1.0).eval(p), &fr.normal, 1e-10));
        }
    }
}

#[test]
fn conformal_surface_is_not_a_sphere() {
    let s = surface(2, 0, Family::Conformal);
    let ks: Vec<f64> = pts(11, &[1.0]).into_iter().filter_map(|p| curvatures(&s, p, 1.0).ok()).map(|c| c.gaussian).collect();
    let mean = ks.iter().sum::<f64>() / ks.len() as f64;
    let var = ks.iter().map(|k| (k - mean) * (k - mean)).sum::<f64>() / ks.len() as f64;
    assert!(var > 1e-3, "{var}");
}

#[test]
fn curvatures_ignore_additive_constants() {
    let s = surface(2, 0, Family::Fg);
    let f = s.f.clone();
    let c = CMat::from_vec(vec![C64::new(0.0, 0.7), re(0.3), re(-0.3), C64::new(0.0, -0.7)]);
    let shifted = FieldSampler::new(f.order(), f.uses_t(), move |v| &f.apply(v) + &JMat::from_cmat(&c));
    for p in pts(12, &[1.0]) {
        let (Ok(a), Ok(b)) = (curvatures_of_immersion(&s.f, p, 1.0), curvatures_of_immersion(&shifted, p, 1.0)) else {
            continue;
        };
        assert!((a.0 - b.0).abs() < 1e-9 && (a.1 - b.1).abs() < 1e-9);
    }
}

#[test]
fn synthetic_sphere_oracle() {
    // F = r(sinθcosφ e₁ + sinθsinφ e₂ + cosθ e₃) via stereographic (x, y)
    let r = 0.8;
    let b = SuBasis::new(2);
    let es: Vec<JMat> = b.elements().iter().map(JMat::from_cmat).collect();
    let f = FieldSampler::new(0, false, move |v| {
        let (x, y) = (v.x, v.y);
        let d = (x * x + y * y + re(1.0)).recip();
        let c = [x * re(2.0) * d, y * re(2.0) * d, (x * x + y * y - re(1.0)) * d];
        (0..3).fold(JMat::zeros(2), |acc, i| &acc + &es[i].scale(c[i] * re(r)))
    });
    for p in pts(13, &[0.0]) {
        let (k, h) = curvatures_of_immersion(&f, p, 1.0).unwrap();
        assert!((k - 1.0 / (r * r)).abs() < 1e-9);
        assert!((h.abs() - 2.0 / r).abs() < 1e-9);
    }
}

#[test]
fn master_formula_reduces_to_families() {
    let ch = veronese_chain(2).unwrap();
    let s = Surface::build(&ch, 0, Family::St, Options::default()).unwrap();
    let st = master_immersion(&s.phi, Some(re(1.0)), None, None).unwrap();
    let g = Surface::build(&ch, 0, Family::Scaling, Options::default()).unwrap();
    let sg = master_immersion(&g.phi, None, Some(&g.gauge.as_ref().unwrap().s), None).unwrap();
    for p in pts(14, &common::TS) {
        assert!(common::close(&st.eval(p), &s.f.eval(p), 1e-11));
        assert!(common::close(&sg.eval(p), &g.f.eval(p), 1e-11));
    }
    assert!(master_immersion(&s.phi, None, None, None).is_err());
}

#[test]
fn closed_normalization_changes_surface_not_curvature() {
    let ch = veronese_chain(2).unwrap();
    let opts = Options { normalization: Normalization::Closed, ..Options::default() };
    let a = Surface::build(&ch, 0, Family::Scaling, opts).unwrap();
    let b = Surface::build(&ch, 0, Family::Scaling, Options::default()).unwrap();
    for p in pts(15, &[0.5]) {
        let (ca, cb) = (curvatures(&a, p, 1.0).unwrap(), curvatures(&b, p, 1.0).unwrap());
        assert!((ca.gaussian - cb.gaussian).abs() < 1e-9);
    }
}

#[test]
fn gwfi_surface_is_sphere() {
    let s = surface(2, 0, Family::Gwfi);
    for p in pts(16, &[0.0]) {
        let c = curvatures(&s, p, orientation_sign(&s, p).unwrap()).unwrap();
        assert!((c.gaussian - 4.0).abs() < 1e-8 && (c.mean - 4.0).abs() < 1e-8);
    }
}

#[test]
fn sphere_fit_needs_enough_points() {
    assert!(matches!(sphere_fit(&[[0.0; 3]; 3]), Err(Error::FitDegenerate)));
}
