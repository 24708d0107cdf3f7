mod common;

use soliton_core::cpn::*;
use soliton_core::matrix::{is_rank_one_projector, CMat};
use soliton_core::{re, Error, FieldSampler, Point, C64};

fn regular_points(seed: u64) -> Vec<Point> {
    common::points(seed, 25, 3.0, &[0.0]).into_iter().filter(|p| p.modulus() > 0.05).collect()
}

#[test]
fn cp1_chain_closed_forms() {
    let ch = veronese_chain(2).unwrap();
    for p in regular_points(1) {
        let z = C64::new(p.x, p.y);
        let r = z.norm_sqr();
        let p0 = CMat::from_vec(vec![re(1.0), z.conj(), z, re(r)]).scale_c(re(1.0 / (1.0 + r)));
        let p1 = CMat::from_vec(vec![re(r), -z.conj(), -z, re(1.0)]).scale_c(re(1.0 / (1.0 + r)));
        assert!(common::close(&ch.member(0).unwrap().eval(p), &p0, 1e-14));
        assert!(common::close(&ch.member(1).unwrap().eval(p), &p1, 1e-14));
        assert!(common::close(&soliton_core::fixtures::p0(p.x, p.y), &p0, 1e-14));
        assert!(common::close(&soliton_core::fixtures::p1(p.x, p.y), &p1, 1e-14));
    }
}

#[test]
fn chain_members_are_orthogonal_rank_one_projectors() {
    for n in 2..=4 {
        let ch = veronese_chain(n).unwrap();
        assert_eq!(ch.n(), n);
        for p in regular_points(n as u64) {
            for m in ch.members() {
                let (_, ok) = is_rank_one_projector(&m.eval(p), 1e-10);
                assert!(ok);
            }
            let (orth, sum) = ch.orthogonality_residual(p);
            assert!(orth < 1e-10 && sum < 1e-10, "n={n} {orth} {sum}");
            assert!(ch.raising_residual(p).unwrap() < 1e-9, "n={n}");
        }
    }
}

#[test]
fn raise_and_lower_are_inverse_steps() {
    let ch = veronese_chain(3).unwrap();
    let p = Point::new(0.4, -0.9, 0.0);
    let up = raise(ch.member(0).unwrap(), p).unwrap();
    assert!(common::close(&up.matrix, &ch.member(1).unwrap().eval(p), 1e-12));
    let down = lower(ch.member(1).unwrap(), p).unwrap();
    assert!(common::close(&down.matrix, &ch.member(0).unwrap().eval(p), 1e-12));
    // the ends of the chain map to zero
    assert!(lower(ch.member(0).unwrap(), p).unwrap().matrix.norm() < 1e-12);
    assert!(raise(ch.member(2).unwrap(), p).unwrap().matrix.norm() < 1e-12);
}

#[test]
fn euler_lagrange_holds_on_chain() {
    for n in 2..=4 {
        let ch = veronese_chain(n).unwrap();
        for p in regular_points(10 + n as u64) {
            for m in ch.members() {
                assert!(el_residual(m, p).unwrap() < 1e-9, "n={n} {p:?}");
            }
        }
    }
}

#[test]
fn euler_lagrange_fails_for_non_holomorphic_seed() {
    // f = (1, z + 0.3 z̄²) is not holomorphic
    let f = FieldSampler::new(0, false, |v| {
        let zb = v.zb();
        projector_jet(&[soliton_core::Jet::one(), v.z() + zb * zb * re(0.3)])
    });
    let worst = regular_points(3).into_iter().map(|p| el_residual(&f, p).unwrap()).fold(0.0, f64::max);
    assert!(worst > 1e-2, "{worst}");
}

#[test]
fn general_seed_chain() {
    let seed = Seed::new(vec![
        vec![re(1.0), C64::new(0.2, 0.1)],
        vec![re(0.0), re(1.0), C64::new(0.0, 0.5)],
        vec![C64::new(0.3, 0.0), re(0.0), re(0.0), re(1.0)],
    ])
    .unwrap();
    let ch = ProjectorChain::from_seed(seed).unwrap();
    for p in regular_points(21) {
        let (orth, sum) = ch.orthogonality_residual(p);
        assert!(orth < 1e-9 && sum < 1e-9);
        for m in ch.members() {
            assert!(el_residual(m, p).unwrap() < 1e-8);
        }
    }
}

#[test]
fn degenerate_seed_terminates() {
    // a degree-one curve in CP² spans only a line
    let seed = Seed::new(vec![vec![re(1.0)], vec![re(0.0), re(1.0)], vec![re(1.0), re(1.0)]]).unwrap();
    assert!(matches!(ProjectorChain::from_seed(seed), Err(Error::ChainTerminated { .. })));
    assert!(matches!(Seed::new(vec![vec![re(0.0)], vec![re(0.0)]]), Err(Error::ZeroVector)));
    assert!(veronese_chain(1).is_err());
}

#[test]
fn gwfi_values_and_derivative() {
    let ch = veronese_chain(2).unwrap();
    let f0 = gwfi(&ch, 0).unwrap();
    let p0 = ch.member(0).unwrap();
    for p in regular_points(4) {
        let want = soliton_core::fixtures::f_gwfi0(p.x, p.y, 0.0);
        assert!(common::close(&f0.eval(p), &want, 1e-13));
        // F₀ = −iP₀ + const
        let (d, _) = f0.wirtinger(p).unwrap();
        let (dp, _) = p0.wirtinger(p).unwrap();
        assert!(common::close(&d, &dp.scale_c(C64::new(0.0, -1.0)), 1e-13));
        let v = f0.eval(p);
        assert!((&v + &v.dagger()).norm() < 1e-13 && v.trace().norm() < 1e-13);
    }
}

#[test]
fn algebraic_conditions() {
    for n in 2..=4 {
        let ch = veronese_chain(n).unwrap();
        for p in regular_points(30 + n as u64) {
            assert!(algebraic_conditions_residual(&ch, p).unwrap() < 1e-10, "n={n}");
        }
    }
    // perturbing one immersion breaks the identities
    let ch = veronese_chain(3).unwrap();
    let p = Point::new(0.5, 0.5, 0.0);
    let mut fs: Vec<CMat> = (0..3).map(|k| gwfi(&ch, k).unwrap().eval(p)).collect();
    fs[1] = &fs[1] + &CMat::identity(3).scale_c(C64::new(0.0, 0.05));
    assert!(algebraic_residual_of(&fs) > 1e-3);
}

#[test]
fn theta_form() {
    let ch = veronese_chain(3).unwrap();
    for k in 0..3 {
        let th = theta_of(ch.member(k).unwrap(), 3);
        for p in regular_points(40 + k as u64) {
            assert!(theta_constraint_residual(&th, p) < 1e-12);
            assert!(theta_el_residual(&th, p).unwrap() < 1e-8);
            if k < 2 {
                let up = raise_theta(&th, p).unwrap();
                assert!(common::close(&up, &ch.member(k + 1).unwrap().eval(p), 1e-10));
            }
            if k > 0 {
                let down = lower_theta(&th, p).unwrap();
                assert!(common::close(&down, &ch.member(k - 1).unwrap().eval(p), 1e-10));
            }
        }
    }
}

#[test]
fn euler_density_closed_form() {
    // For (1, z): tr(∂P ∂̄P) = 1/(1+r²)², so ∂∂̄ ln tr = −2/(1+r²)²
    let p = veronese_chain(2).unwrap().member(0).unwrap().clone();
    for q in regular_points(50) {
        let r2 = q.x * q.x + q.y * q.y;
        let want = -2.0 / ((1.0 + r2) * (1.0 + r2));
        assert!((euler_density(&p, q).unwrap() - want).abs() < 1e-12);
    }
}

#[test]
fn euler_characteristic_of_sphere() {
    let ch = veronese_chain(2).unwrap();
    for k in 0..2 {
        let chi = euler_characteristic(ch.member(k).unwrap(), 50.0, 200).unwrap();
        // analytic disk value 2 R²/(1+R²)
        let disk = 2.0 * 2500.0 / 2501.0;
        assert!((chi - disk).abs() < 2e-3, "k={k} chi={chi}");
    }
    let small = euler_characteristic(ch.member(0).unwrap(), 1.0, 100).unwrap();
    assert!((small - 1.0).abs() < 1e-6, "{small}");
    assert!(EulerQuadrature::new(0.0, 10).is_err());
}
