mod common;

use soliton_core::cpn::{theta_of, veronese_chain};
use soliton_core::field::{Coords, Diff};
use soliton_core::fixtures;
use soliton_core::matrix::JMat;
use soliton_core::spectral::*;
use soliton_core::{re, FieldSampler, Point, C64};

fn pts(seed: u64) -> Vec<Point> {
    common::points(seed, 20, 3.0, &common::TS).into_iter().filter(|p| p.modulus() > 0.05).collect()
}

#[test]
fn potentials_match_reference_matrices() {
    let ch = veronese_chain(2).unwrap();
    let u = potentials(&ch, 0).unwrap();
    for p in pts(1) {
        assert!(common::close(&u.u1.eval(p), &fixtures::u10(p.x, p.y, p.t), 1e-13), "{p:?}");
        assert!(common::close(&u.u2.eval(p), &fixtures::u20(p.x, p.y, p.t), 1e-13), "{p:?}");
    }
}

#[test]
fn potentials_are_paired_and_traceless() {
    for n in 2..=3 {
        let ch = veronese_chain(n).unwrap();
        for k in 0..n {
            let u = potentials(&ch, k).unwrap();
            for p in pts(k as u64 + 7) {
                assert!(u.pairing_residual(p) < 1e-12);
                assert!(u.u1.eval(p).trace().norm() < 1e-12);
            }
        }
    }
}

#[test]
fn theta_potentials_are_real_form_at_reflected_parameter() {
    let ch = veronese_chain(2).unwrap();
    for k in 0..2 {
        let bb = potentials_theta(&theta_of(ch.member(k).unwrap(), 2));
        let real = to_real(&potentials(&ch, k).unwrap());
        assert_eq!(real.coords, Coords::Real);
        for p in pts(20 + k as u64) {
            let q = Point::new(p.x, p.y, -p.t);
            assert!(common::close(&bb.u1.eval(p), &real.u1.eval(q), 1e-12));
            assert!(common::close(&bb.u2.eval(p), &real.u2.eval(q), 1e-12));
            assert!(zcc_residual(&bb, p, Diff::Exact).unwrap() < 1e-10);
        }
    }
}

#[test]
fn linear_problem_is_solved() {
    for n in 2..=3 {
        let ch = veronese_chain(n).unwrap();
        for k in 0..n {
            let u = potentials(&ch, k).unwrap();
            for norm in [Normalization::Closed, Normalization::Origin] {
                let w = wavefunction(&ch, k, norm).unwrap();
                for p in pts(30 + k as u64) {
                    assert!(lsp_residual(&w.phi, &u, p, Diff::Exact).unwrap() < 1e-10, "n={n} k={k}");
                    assert!(w.inverse_residual(p) < 1e-11);
                }
            }
        }
    }
}

#[test]
fn linear_problem_with_fd() {
    let ch = veronese_chain(2).unwrap();
    let u = potentials(&ch, 1).unwrap();
    let w = wavefunction(&ch, 1, Normalization::Origin).unwrap();
    for p in pts(3) {
        assert!(lsp_residual(&w.phi, &u, p, Diff::Fd).unwrap() < 1e-7);
    }
}

#[test]
fn linear_problem_rejects_wrong_potentials() {
    let ch = veronese_chain(2).unwrap();
    let u = potentials(&ch, 0).unwrap();
    let (a, b) = (u.u1.clone(), u.u2.clone());
    let doubled = PotentialPair {
        u1: FieldSampler::new(a.order(), false, move |v| a.apply(v).scale_c(re(2.0))),
        u2: FieldSampler::new(b.order(), false, move |v| b.apply(v).scale_c(re(2.0))),
        coords: Coords::Wirtinger,
    };
    let w = wavefunction(&ch, 0, Normalization::Origin).unwrap();
    let worst = pts(4).into_iter().map(|p| lsp_residual(&w.phi, &doubled, p, Diff::Exact).unwrap()).fold(0.0, f64::max);
    assert!(worst > 1e-2);
}

#[test]
fn zero_curvature() {
    for n in 2..=4 {
        let ch = veronese_chain(n).unwrap();
        for k in 0..n {
            let u = potentials(&ch, k).unwrap();
            for p in pts(40 + n as u64) {
                assert!(zcc_residual(&u, p, Diff::Exact).unwrap() < 1e-10);
                assert!(zcc_field(&u).eval(p).norm() < 1e-10);
            }
        }
    }
}

#[test]
fn zero_curvature_rejects_mismatched_parameter() {
    let ch = veronese_chain(2).unwrap();
    let p0 = ch.member(0).unwrap().clone();
    let u = potentials(&ch, 0).unwrap();
    // U₁ with t shifted by 0.1
    let u1 = FieldSampler::new(p0.order() + 1, false, move |v| {
        let j = p0.apply(v);
        let l = soliton_core::Jet::cst(C64::new(0.0, v.t.value().re + 0.1));
        j.dz().bracket(&j).scale((l + re(1.0)).recip() * re(2.0))
    });
    let bad = PotentialPair { u1, u2: u.u2.clone(), coords: Coords::Wirtinger };
    let worst = pts(5).into_iter().map(|p| zcc_residual(&bad, p, Diff::Exact).unwrap()).fold(0.0, f64::max);
    assert!(worst > 1e-3, "{worst}");
}

#[test]
fn deformed_zero_curvature_for_potential_derivative() {
    // A_α = ∂tU_α satisfies the deformed condition
    let ch = veronese_chain(2).unwrap();
    let u = potentials(&ch, 0).unwrap();
    let dt = |f: FieldSampler| FieldSampler::new(f.order() + 1, true, move |v| f.apply(v).d(soliton_core::Var::T));
    let (a1, a2) = (dt(u.u1.clone()), dt(u.u2.clone()));
    for p in pts(6) {
        assert!(deformed_zcc_residual(&a1, &a2, &u, p, Diff::Exact).unwrap() < 1e-10);
    }
    let c = FieldSampler::new(0, false, |_| JMat::identity(2).scale_c(C64::new(0.0, 1.0)));
    let x = FieldSampler::new(0, false, |v| {
        let mut m = JMat::zeros(2);
        m[(0, 1)] = v.z();
        m
    });
    let worst = pts(7).into_iter().map(|p| deformed_zcc_residual(&x, &c, &u, p, Diff::Exact).unwrap()).fold(0.0, f64::max);
    assert!(worst > 1e-3);
}

#[test]
fn normalization() {
    let ch = veronese_chain(2).unwrap();
    for k in 0..2 {
        let closed = wavefunction(&ch, k, Normalization::Closed).unwrap();
        let origin = wavefunction(&ch, k, Normalization::Origin).unwrap();
        for p in pts(8 + k as u64) {
            let (d, u) = origin.unitarity(p);
            assert!((d - re(1.0)).norm() < 1e-12 && u < 1e-12);
            // eigenvalues r² on P_j (j < k) and r on P_k, r = (t−i)/(t+i)
            let ratio = C64::new(p.t, -1.0) / C64::new(p.t, 1.0);
            let (dc, uc) = closed.unitarity(p);
            assert!((dc - ratio.powu(2 * k as u32 + 1)).norm() < 1e-12);
            assert!(uc < 1e-12);
        }
    }
    let closed = wavefunction(&ch, 0, Normalization::Closed).unwrap();
    let at0 = closed.phi.eval(Point::new(0.0, 0.0, 0.5));
    let l = C64::new(0.0, 0.5);
    assert!((at0[(0, 0)] - (re(1.0) - re(2.0) / (re(1.0) - l))).norm() < 1e-14);
    assert!((at0[(1, 1)] - re(1.0)).norm() < 1e-14);
}

#[test]
fn large_parameter_is_finite() {
    let ch = veronese_chain(2).unwrap();
    let u = potentials(&ch, 0).unwrap();
    let w = wavefunction(&ch, 0, Normalization::Origin).unwrap();
    for t in [1e3, 1e6, -1e6] {
        let p = Point::new(0.3, 0.2, t);
        assert!(w.phi.eval(p).is_finite());
        assert!(u.u1.eval(p).norm() < 10.0 / t.abs());
        assert!(lsp_residual(&w.phi, &u, p, Diff::Exact).unwrap() < 1e-10);
    }
}
