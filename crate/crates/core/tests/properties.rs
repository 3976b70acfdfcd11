use chv_core::forms::{cartan_cubic, grad_norm_sq_orbit, Candidate, DeltaParam, ShiftConstant};
use chv_core::numerics::{haar_so5, jacobi_eigen, jacobi_eigen_vectors, skew_exp, RngState, SkewParam};
use chv_core::spectra::{
    k_metric, mu_spectrum_half, ordered_spectrum_half, recover_orbit_param, OrbitParam, Spectrum5,
};
use chv_core::verify::{diff_matrices, PairSample, Sampler};
use chv_core::{SymMat5, Vec5};
use proptest::prelude::*;

fn coord() -> impl Strategy<Value = f64> {
    -1.0f64..1.0
}

fn nonzero_vec() -> impl Strategy<Value = Vec5> {
    [coord(), coord(), coord(), coord(), coord()]
        .prop_map(Vec5)
        .prop_filter("away from the origin", |v| v.norm() > 0.05)
}

fn symmetric() -> impl Strategy<Value = SymMat5> {
    proptest::array::uniform15(-10.0f64..10.0).prop_map(SymMat5::from_packed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn cubic_and_w_are_homogeneous(x in nonzero_vec(), lambda in 0.1f64..3.0, d in 0.0f64..0.99) {
        let l3 = lambda.powi(3);
        prop_assert!((cartan_cubic(&x.scale(lambda)) - l3 * cartan_cubic(&x)).abs() <= 1e-13 * l3);
        let cand = Candidate::new(DeltaParam::new(d).unwrap(), ShiftConstant::DEFAULT).with_r_min(1e-4).unwrap();
        let lw = lambda.powf(2.0 - d);
        let lhs = cand.w_value(&x.scale(lambda)).unwrap();
        prop_assert!((lhs - lw * cand.w_value(&x).unwrap()).abs() <= 1e-12 * lw.max(1.0));
    }

    #[test]
    fn table_is_a_sort(p in -1.0f64..=1.0) {
        let p = OrbitParam::new(p).unwrap();
        let table = ordered_spectrum_half(p);
        let sorted = Spectrum5::from_unsorted(mu_spectrum_half(p));
        prop_assert!(table.max_abs_diff(&sorted) <= 1e-10);
    }

    #[test]
    fn orbit_parameter_inverts_the_cubic(x in nonzero_vec()) {
        let p = recover_orbit_param(&x).unwrap().value();
        let target = cartan_cubic(&x.scale(1.0 / x.norm()));
        prop_assert!((0.5 * p * (3.0 - p * p) - target).abs() <= 1e-13);
        prop_assert!((-1.0..=1.0).contains(&p));
    }

    #[test]
    fn orbit_gradient_norm(x in nonzero_vec()) {
        let cand = Candidate::new(DeltaParam::HALF, ShiftConstant::DEFAULT);
        let p = recover_orbit_param(&x).unwrap().value();
        let g = cand.grad_w(&x).unwrap().norm_sq();
        prop_assert!((g - grad_norm_sq_orbit(p, x.norm())).abs() <= 1e-11 * g.max(1.0));
    }

    #[test]
    fn jacobi_recovers_constructed_spectrum(
        seed in any::<u64>(),
        mut lambda in proptest::array::uniform5(-50.0f64..50.0),
    ) {
        lambda.sort_by(|a, b| b.total_cmp(a));
        let v = haar_so5(RngState::new(seed, 0));
        // V diag(lambda) V^T = (V^T)^T diag(lambda) V^T
        let m = SymMat5::diag(lambda).conjugate(&v.transpose());
        let spec = jacobi_eigen(&m).unwrap();
        prop_assert!(spec.values().iter().zip(&lambda).all(|(a, b)| (a - b).abs() <= 1e-11));
    }

    #[test]
    fn jacobi_backward_error(m in symmetric()) {
        let (spec, vecs) = jacobi_eigen_vectors(&m).unwrap();
        let mut worst: f64 = 0.0;
        for i in 0..5 {
            for j in 0..5 {
                let r: f64 = (0..5).map(|k| vecs[i][k] * spec.values()[k] * vecs[j][k]).sum();
                worst = worst.max((r - m.get(i, j)).abs());
            }
        }
        prop_assert!(worst <= 1e-11 * m.frobenius().max(1.0));
        prop_assert!(spec.is_non_increasing());
    }

    #[test]
    fn weyl_inequalities(a in symmetric(), b in symmetric()) {
        let (la, lb, ld) = (jacobi_eigen(&a).unwrap(), jacobi_eigen(&b).unwrap(), jacobi_eigen(&(a - b)).unwrap());
        for i in 0..5 {
            let d = la.values()[i] - lb.values()[i];
            prop_assert!(ld.largest() >= d - 1e-10);
            prop_assert!(ld.smallest() <= d + 1e-10);
        }
    }

    #[test]
    fn skew_exp_is_special_orthogonal(theta in proptest::array::uniform10(-3.0f64..3.0)) {
        let o = skew_exp(&SkewParam(theta));
        prop_assert!(o.orthogonality_defect() < 1e-12);
        prop_assert!((o.det() - 1.0).abs() < 1e-12);
        let inv = skew_exp(&SkewParam(theta.map(|t| -t)));
        let prod = o.mul(&inv);
        prop_assert!(chv_core::OrthoMat5::identity()
            .as_array()
            .iter()
            .flatten()
            .zip(prod.as_array().iter().flatten())
            .all(|(a, b)| (a - b).abs() < 1e-12));
    }

    #[test]
    fn k_metric_symmetry(p in -1.0f64..=1.0, q in -1.0f64..=1.0, s in 0.01f64..=1.0, t in 0.01f64..=1.0) {
        let (p, q) = (OrbitParam::new(p).unwrap(), OrbitParam::new(q).unwrap());
        prop_assert_eq!(k_metric(p, q, s, t), k_metric(q, p, t, s));
        prop_assert_eq!(k_metric(p, p, s, s), 0.0);
    }

    #[test]
    fn decomposition_identity(seed in any::<u64>(), index in 0u64..1000) {
        let sample: PairSample = Sampler::new(seed, 1e-3).unwrap().pair(index);
        let cand = Candidate::new(DeltaParam::HALF, ShiftConstant::DEFAULT);
        let dm = diff_matrices(&cand, &sample).unwrap();
        prop_assert!(dm.decomposition_defect(240_000.0) <= 1e-9);
    }
}
