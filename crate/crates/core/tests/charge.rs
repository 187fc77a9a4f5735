use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use realflow::charge::{
    charge_equivariance_check, fundamental_sample, hyperboloid_form, hyperboloid_param, kronecker_constant, level_form,
    positivity_check, rank2_charge, sample_stream, wall_vanishing_check,
};
use realflow::linalg::jacobi_eigen;
use realflow::{catalog, CoxeterSystem, Exec, FlowAssignment, Region, ThetaVec};

fn sys(name: &str) -> CoxeterSystem {
    CoxeterSystem::new(catalog::parse(name).unwrap())
}

#[test]
fn rank_two_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for m in [3.0, 4.0, 5.0, 7.5] {
        for _ in 0..100 {
            let x = rng.gen_range(-3.0..=3.0);
            let (a, b) = rank2_charge(m, x).unwrap();
            assert!((a * a + m * a * b + b * b - 1.0).abs() <= 1e-10);
        }
        // endpoints sit on the two walls
        let (a0, b0) = rank2_charge(m, 0.0).unwrap();
        let (a1, b1) = rank2_charge(m, 1.0).unwrap();
        assert!((a0 - 1.0).abs() < 1e-12 && b0.abs() < 1e-12);
        assert!(a1.abs() < 1e-12 && (b1 - 1.0).abs() < 1e-12);
    }
}

#[test]
fn kronecker_constants() {
    assert!((kronecker_constant(2.0).unwrap() - 1.0).abs() <= 1e-12);
    assert!((kronecker_constant(3.0).unwrap() - (3.0 + 5f64.sqrt()) / 2.0).abs() <= 1e-12);
    // κ and 1/κ are the roots of t² − m t + 1
    for m in [3.0, 4.0, 10.0] {
        let k = kronecker_constant(m).unwrap();
        assert!((k * k - m * k + 1.0).abs() < 1e-9);
    }
    assert!(kronecker_constant(1.5).is_err());
}

#[test]
fn limit_at_m_two_is_linear_in_eps() {
    for x in [0.0, 0.2, 0.5, 0.9, 1.5] {
        let dev = |eps: f64| {
            let (a, b) = rank2_charge(2.0 + eps, x).unwrap();
            (a - (1.0 - x)).hypot(b - x)
        };
        let (d3, d4) = (dev(1e-3), dev(1e-4));
        assert!(d3 <= 1e-3 && d4 <= 1e-4, "x = {x}: {d3} {d4}");
        if d3 > 1e-9 {
            // shrinking ε tenfold shrinks the deviation about tenfold
            assert!((d3 / d4 - 10.0).abs() < 1.0, "x = {x}: ratio {}", d3 / d4);
        }
    }
    assert_eq!(rank2_charge(2.0, 0.3).unwrap(), (0.7, 0.3));
}

#[test]
fn hyperboloid_identity_on_cartan_eigenvalues() {
    for name in ["A_hyp:1", "A_tilde:2,3", "A_hyp:2"] {
        let g = catalog::parse(name).unwrap();
        let rows: Vec<Vec<f64>> =
            g.gcm().matrix().rows().iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
        let (eig, _) = jacobi_eigen(&rows).unwrap();
        assert_eq!(eig.iter().filter(|&&e| e < 0.0).count(), 1, "{name}");
        assert!(*eig.last().unwrap() < 0.0);
        let scales: Vec<f64> = eig.iter().map(|e| e.abs().sqrt()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let sigma: Vec<f64> = (1..scales.len()).map(|_| rng.gen_range(-2.5..=2.5)).collect();
            let x = hyperboloid_param(&scales, &sigma).unwrap();
            assert!((hyperboloid_form(&scales, &x) + 1.0).abs() <= 1e-8);
        }
    }
    assert!(hyperboloid_param(&[1.0, 0.0], &[0.5]).is_err());
}

#[test]
fn affine_level_factors_through_delta() {
    for (name, lambda) in [("A_tilde:2", 3.0), ("K:2", 2.0), ("A_tilde:3", 4.0)] {
        let s = sys(name);
        let delta = s.minimal_imaginary_root().unwrap();
        let qf = level_form(&s).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let t = ThetaVec((0..s.rank()).map(|_| rng.gen_range(-2.0..=2.0)).collect());
            let d: f64 = t.0.iter().zip(&delta.0).map(|(a, &b)| a * b as f64).sum();
            assert!((qf.eval(&t) - lambda * d * d).abs() < 1e-9, "{name}");
        }
    }
}

#[test]
fn level_is_weyl_invariant() {
    for name in ["A_tilde:2", "K:3", "A_hyp:1", "A_hyp:2"] {
        let s = sys(name);
        let qf = level_form(&s).unwrap();
        let rep = charge_equivariance_check(&s, &qf, 100, 4).unwrap();
        assert!(rep.pass, "{name}: {rep:?}");
    }
}

#[test]
fn bruhat_positivity_equals_fundamental_margin() {
    for name in ["A_tilde:2", "A_hyp:1", "A_tilde:2,3"] {
        let reg = Region::enumerate(sys(name), 4).unwrap();
        let qf = level_form(reg.system()).unwrap();
        let rep = positivity_check(&FlowAssignment::bruhat(&reg), &qf, 5, 17, Exec::Parallel).unwrap();
        assert!(rep.pass);
        // alcove a draws its fundamental points from stream a
        let mut want = f64::INFINITY;
        for a in &rep.alcoves {
            let m = sample_stream(&qf, 5, 17, a.alcove as u64)
                .unwrap()
                .iter()
                .flat_map(|t| t.0.clone())
                .fold(f64::INFINITY, f64::min);
            assert!((a.min_pairing - m).abs() <= 1e-9, "{name} alcove {}", a.alcove);
            want = want.min(m);
        }
        assert!((rep.min_pairing - want).abs() <= 1e-9, "{name}: {} vs {want}", rep.min_pairing);
    }
}

#[test]
fn samples_lie_on_the_level() {
    let qf = level_form(&sys("A_hyp:1")).unwrap();
    for t in fundamental_sample(&qf, 20, 9).unwrap() {
        assert!((qf.eval(&t) - 1.0).abs() < 1e-12);
        assert!(t.0.iter().all(|&x| x > 0.0));
    }
}

#[test]
fn walls_vanish_on_their_root_only() {
    let reg = Region::enumerate(sys("A_hyp:1"), 3).unwrap();
    let qf = level_form(reg.system()).unwrap();
    for (k, _) in reg.interior_walls() {
        let rep = wall_vanishing_check(&reg, &qf, k, 5, 0).unwrap();
        assert!(rep.residual < 1e-9 && rep.min_other > 1e-6, "{rep:?}");
    }
}
