use dbscale::numerics::{find_zeros, RootWindow};
use dbscale::perturbation::{
    boundary_functional, boundary_functional_alt, cyclicity_check, dom_gamma_decompose, half_extension,
    krein_denominator, krein_diff_check, lambda_of_gamma, pairing_s0_f, qfunc, rank_one_eigenvalues, rhat_on_s0,
    s_tilde_gamma_pairing_check, KreinData, PerturbedDomainElement, QForm,
};
use dbscale::suite::dictionary;
use dbscale::{c, Cplx, DbError, DbSpace, EntireFn, ExtensionHandle, GammaDomainElement, I};
use proptest::prelude::*;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6, PI};

fn pw() -> DbSpace {
    DbSpace::paley_wiener(PI).unwrap()
}

fn grid9() -> Vec<Cplx> {
    (0..9).map(|k| c(-2.0 + 0.5 * k as f64, 0.0)).collect()
}

fn off_axis_grid() -> Vec<Cplx> {
    vec![c(-1.5, 0.0), c(0.0, 0.0), c(0.7, 0.0), c(0.2, 0.9), c(-0.4, -1.3), c(1.8, 0.4)]
}

fn half_tests(sp: &DbSpace) -> Vec<GammaDomainElement> {
    let half = half_extension(sp);
    [c(0.0, 0.0), c(0.6, 0.3), c(-1.1, -0.5), c(1.7, 0.0), c(-0.2, 1.4)]
        .iter()
        .map(|&w| half.resolvent(I, &EntireFn::kernel(w)).unwrap())
        .collect()
}

#[test]
fn rhat_examples() {
    let sp = pw();
    let v = sp.eval(&rhat_on_s0(&sp, I).unwrap(), 0.0.into()).unwrap();
    assert!((v - Cplx::from(PI.tanh())).norm() < 1e-14, "{v}");
    assert!((PI.tanh() - 0.996_272_1).abs() < 1e-7);
    let finite = sp.eval(&rhat_on_s0(&sp, 0.3.into()).unwrap(), 0.1.into()).unwrap();
    assert!(finite.is_finite());
    assert!(matches!(rhat_on_s0(&sp, 0.5.into()), Err(DbError::SpectralPoint { .. })));
}

#[test]
fn rhat_pairs_to_point_values() {
    let sp = pw();
    let dict = dictionary(&sp, FRAC_PI_4).unwrap();
    for w in [I, c(0.3, 0.7), c(-1.2, -0.4)] {
        let r = rhat_on_s0(&sp, w).unwrap();
        let wb = w.conj();
        for f in &dict {
            let lhs = sp.inner(&r, f).unwrap();
            let rhs = -PI * sp.eval(f, wb).unwrap() / sp.s_gamma(FRAC_PI_2, wb).unwrap();
            assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()), "w={w}: {lhs} vs {rhs}");
        }
    }
}

#[test]
fn boundary_functional_examples() {
    let sp = pw();
    let half = half_extension(&sp);
    let h = half.resolvent(I, &EntireFn::kernel(0.0.into())).unwrap();
    let v = boundary_functional(&sp, &h).unwrap();
    assert!((v - Cplx::from(PI.tanh())).norm() < 1e-12);
    let alt = boundary_functional_alt(&sp, &h).unwrap();
    assert!((alt - v).norm() < 1e-12, "{alt} vs {v}");

    // f(i) = 0 puts R(i) f in dom(S)
    let k0_i = sp.kernel(I, 0.0.into()).unwrap();
    let kii = sp.kernel_diag(I).unwrap();
    let f = EntireFn::kernel(0.0.into()).axpy(-k0_i / kii, &EntireFn::kernel(I));
    assert!(sp.eval(&f, I).unwrap().norm() < 1e-12);
    let h = half.resolvent(I, &f).unwrap();
    assert!(boundary_functional(&sp, &h).unwrap().norm() < 1e-12);

    let other = ExtensionHandle::new(&sp, 0.4).resolvent(I, &EntireFn::kernel(0.0.into())).unwrap();
    assert_eq!(boundary_functional(&sp, &other), Err(DbError::LevelMismatch));
}

#[test]
fn qfunc_examples() {
    let sp = pw();
    let q = qfunc(&sp, 0.25.into(), QForm::ClosedForm).unwrap();
    assert!((q - Cplx::from(PI)).norm() < 1e-12, "{q}");
    let q = qfunc(&sp, I, QForm::ClosedForm).unwrap();
    assert!((q - I * PI * PI.tanh()).norm() < 1e-12);
    assert!((q.im - 3.129_88).abs() < 1e-5 && q.im > 0.0);
    let w = c(0.3, 0.7);
    let a = qfunc(&sp, w, QForm::Definitional).unwrap();
    let b = qfunc(&sp, w, QForm::ClosedForm).unwrap();
    assert!((a - b).norm() <= 1e-9 * (1.0 + b.norm()), "{a} vs {b}");
    assert!(matches!(qfunc(&sp, 0.5.into(), QForm::ClosedForm), Err(DbError::SpectralPoint { .. })));
    assert!(qfunc(&sp, 0.3.into(), QForm::Definitional).is_err());
}

#[test]
fn qfunc_is_herglotz() {
    let sp = pw();
    for j in 0..20 {
        let w = c(-2.0 + 0.2 * j as f64, 0.1 + 0.15 * (j % 5) as f64);
        let q = qfunc(&sp, w, QForm::ClosedForm).unwrap();
        assert!(q.im > 0.0, "w={w}: {q}");
        let expect = PI * (PI * w).tan();
        assert!((q - expect).norm() < 1e-10 * (1.0 + expect.norm()));
    }
}

#[test]
fn krein_examples() {
    let sp = pw();
    let rep = krein_diff_check(&sp, FRAC_PI_4, I, &EntireFn::kernel(0.0.into()), &grid9()).unwrap();
    assert!(rep.max_err <= 1e-9, "{rep:?}");
    assert!(rep.lambda_err <= 1e-10, "{rep:?}");
    assert!((lambda_of_gamma(&sp, FRAC_PI_4).unwrap() - PI).abs() < 1e-12);
    let kd = KreinData::new(&sp, FRAC_PI_4, QForm::ClosedForm).unwrap();
    assert!((kd.lambda - PI).abs() < 1e-12);
    assert!(krein_diff_check(&sp, FRAC_PI_2, I, &EntireFn::kernel(0.0.into()), &grid9()).is_err());
    assert!(lambda_of_gamma(&sp, 0.0).is_err());
}

#[test]
fn krein_on_dictionary() {
    let sp = pw();
    let dict = dictionary(&sp, FRAC_PI_4).unwrap();
    for gamma in [FRAC_PI_6, FRAC_PI_4, PI / 3.0, 2.0 * PI / 3.0, 3.0 * PI / 4.0] {
        for (f, w) in dict.iter().step_by(4).zip([I, c(0.3, 0.8), c(-0.6, -1.1), c(1.4, 0.5), c(0.0, -2.0)]) {
            let rep = krein_diff_check(&sp, gamma, w, f, &off_axis_grid()).unwrap();
            assert!(rep.max_err <= 1e-8, "γ={gamma} w={w}: {rep:?}");
            assert!(rep.lambda_err <= 1e-10, "γ={gamma} w={w}: {rep:?}");
        }
    }
}

#[test]
fn rank_one_eigenvalues_are_zeros_of_s_gamma() {
    for sp in [pw(), DbSpace::paley_wiener(1.0).unwrap()] {
        for gamma in [FRAC_PI_6, FRAC_PI_4, PI / 3.0, 2.0 * PI / 3.0, 3.0 * PI / 4.0] {
            let ev = rank_one_eigenvalues(&sp, gamma, -3.0, 3.0).unwrap();
            let z = find_zeros(&sp, gamma, RootWindow::for_space(&sp, -3.0, 3.0).unwrap()).unwrap();
            assert_eq!(ev.len(), z.len(), "γ={gamma}: {ev:?} vs {z:?}");
            for (a, b) in ev.iter().zip(&z) {
                assert!((a - b).abs() <= 1e-8, "{a} vs {b}");
                let d = krein_denominator(&sp, gamma, Cplx::new(*a, 0.0)).unwrap();
                assert!(d.norm() < 1e-8);
            }
        }
    }
}

#[test]
fn decomposition_example() {
    let sp = pw();
    let ext = ExtensionHandle::new(&sp, FRAC_PI_4);
    let g = ext.resolvent(I, &EntireFn::kernel(0.0.into())).unwrap();
    let d = dom_gamma_decompose(&sp, FRAC_PI_4, &g).unwrap();
    let expect = -Cplx::from(PI.sinh() / PI) / (I * PI.sinh() - PI.cosh());
    assert!((d.b() - expect).norm() < 1e-13, "{}", d.b());
    assert!((d.b() - c(0.15916, 0.15856)).norm() < 1e-5);
    assert!(d.boundary_residual().unwrap() <= 1e-8);
    let bf = boundary_functional(&sp, d.h()).unwrap();
    assert!((bf - PI * d.b()).norm() <= 1e-8, "{bf}");
    assert!(d.reassembly_error(&off_axis_grid()).unwrap() <= 1e-9);
    let sigma = pairing_s0_f(&sp, &d).unwrap();
    assert!((sigma - PI * d.b() * FRAC_PI_4.tan()).norm() <= 1e-8);
}

#[test]
fn decomposition_at_half() {
    let sp = pw();
    let half = half_extension(&sp);
    let g = half.resolvent(c(0.2, 1.1), &EntireFn::kernel(c(0.5, -0.3))).unwrap();
    let d = dom_gamma_decompose(&sp, FRAC_PI_2, &g).unwrap();
    assert_eq!(d.b(), Cplx::new(0.0, 0.0));
    for z in off_axis_grid() {
        let a = sp.eval(d.h().function(), z).unwrap();
        let b = sp.eval(g.function(), z).unwrap();
        assert!((a - b).norm() < 1e-12);
    }
    let sigma = pairing_s0_f(&sp, &d).unwrap();
    assert!((sigma - boundary_functional(&sp, d.h()).unwrap()).norm() < 1e-15);
    let other = ExtensionHandle::new(&sp, 0.7).resolvent(I, &EntireFn::kernel(0.0.into())).unwrap();
    assert_eq!(
        PerturbedDomainElement::new(&sp, 0.7, other, 1.0.into()).err(),
        Some(DbError::LevelMismatch)
    );
}

#[test]
fn s_tilde_examples() {
    let sp = pw();
    let tests = half_tests(&sp);
    let ext = ExtensionHandle::new(&sp, FRAC_PI_4);
    let g = ext.resolvent(I, &EntireFn::kernel(0.0.into())).unwrap();
    let d = dom_gamma_decompose(&sp, FRAC_PI_4, &g).unwrap();
    assert!(s_tilde_gamma_pairing_check(&sp, FRAC_PI_4, &d, &tests).unwrap() <= 1e-7);

    let half = half_extension(&sp);
    let g = half.resolvent(I, &EntireFn::kernel(c(0.3, 0.2))).unwrap();
    let d = dom_gamma_decompose(&sp, FRAC_PI_2, &g).unwrap();
    assert!(s_tilde_gamma_pairing_check(&sp, FRAC_PI_2, &d, &tests).unwrap() <= 1e-8);

    // f(i) = 0 gives g ∈ dom(S) and b = 0
    let k0_i = sp.kernel(I, 0.0.into()).unwrap();
    let f = EntireFn::kernel(0.0.into()).axpy(-k0_i / sp.kernel_diag(I).unwrap(), &EntireFn::kernel(I));
    let g = ext.resolvent(I, &f).unwrap();
    let d = dom_gamma_decompose(&sp, FRAC_PI_4, &g).unwrap();
    assert!(d.b().norm() < 1e-14);
    assert!(pairing_s0_f(&sp, &d).unwrap().norm() < 1e-10);
    assert!(s_tilde_gamma_pairing_check(&sp, FRAC_PI_4, &d, &tests).unwrap() <= 1e-8);
}

#[test]
fn s_tilde_across_gamma_grid() {
    let sp = pw();
    let tests = half_tests(&sp);
    for gamma in [FRAC_PI_6, PI / 3.0, 2.0 * PI / 3.0, 3.0 * PI / 4.0] {
        let ext = ExtensionHandle::new(&sp, gamma);
        let g = ext.resolvent(c(0.4, -0.9), &EntireFn::kernel(c(-0.7, 0.5))).unwrap();
        let d = dom_gamma_decompose(&sp, gamma, &g).unwrap();
        assert!(d.boundary_residual().unwrap() <= 1e-8);
        assert!(d.reassembly_error(&off_axis_grid()).unwrap() <= 1e-9);
        let sigma = pairing_s0_f(&sp, &d).unwrap();
        assert!((sigma - PI * d.b() * gamma.tan()).norm() <= 1e-8 * (1.0 + sigma.norm()));
        assert!(s_tilde_gamma_pairing_check(&sp, gamma, &d, &tests).unwrap() <= 1e-7);
    }
}

#[test]
fn cyclicity_examples() {
    let sp = pw();
    let w1 = c(0.3, 0.8);
    let wset = [w1, c(-1.0, 0.5), c(0.9, -1.2)];
    let rep = cyclicity_check(&sp, &wset, &EntireFn::kernel(w1.conj())).unwrap();
    assert!(rep.relative < 1e-6, "{rep:?}");

    let target = EntireFn::kernel(0.0.into());
    let pts = [c(0.5, 1.0), c(-0.5, 1.0), c(1.5, 0.7), c(-1.5, 0.7), c(0.3, -0.6), c(-0.3, -0.6), c(2.2, 1.3), c(-2.2, 1.3)];
    let mut prev = f64::INFINITY;
    for n in [2, 4, 8] {
        let rep = cyclicity_check(&sp, &pts[..n], &target).unwrap();
        assert!(rep.residual < prev, "n={n}: {rep:?}");
        assert_eq!(rep.size, n);
        prev = rep.residual;
    }
    assert_eq!(cyclicity_check(&sp, &[], &target), Err(DbError::EmptyDictionary));
    assert!(cyclicity_check(&sp, &[c(0.2, 0.0)], &target).is_err());
}

#[test]
fn d0_characterization() {
    let sp = pw();
    let half = half_extension(&sp);
    let kii = sp.kernel_diag(I).unwrap();
    for j in 0..10 {
        let w = c(-1.9 + 0.4 * j as f64, -0.8 + 0.23 * j as f64);
        let f = EntireFn::kernel(w).axpy(-sp.kernel(I, w).unwrap() / kii, &EntireFn::kernel(I));
        let inside = half.resolvent(I, &f).unwrap();
        assert!(boundary_functional(&sp, &inside).unwrap().norm() <= 1e-9);
        let outside = half.resolvent(I, &EntireFn::kernel(w)).unwrap();
        assert!(boundary_functional(&sp, &outside).unwrap().norm() > 1e-6);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn rhat_proportional_to_kernel(u in -2.0f64..2.0, v in 0.1f64..2.0, sgn in any::<bool>(), x in -2.0f64..2.0, y in -1.0f64..1.0) {
        let sp = pw();
        let w = c(u, if sgn { v } else { -v });
        let z = c(x, y);
        let r = sp.eval(&rhat_on_s0(&sp, w).unwrap(), z).unwrap();
        let expect = -PI * sp.kernel(z, w.conj()).unwrap() / sp.s_gamma(FRAC_PI_2, w).unwrap();
        prop_assert!((r - expect).norm() <= 1e-12 * (1.0 + expect.norm()));
    }

    #[test]
    fn lambda_minus_q_is_denominator(gamma in 0.05f64..3.1, u in -2.0f64..2.0, v in 0.1f64..2.0, a in prop::sample::select(vec![1.0, PI])) {
        prop_assume!((gamma - FRAC_PI_2).abs() > 0.05);
        let sp = DbSpace::paley_wiener(a).unwrap();
        let w = c(u, v);
        let lambda = KreinData::new(&sp, gamma, QForm::ClosedForm).unwrap().lambda;
        let q = qfunc(&sp, w, QForm::ClosedForm).unwrap();
        let d = krein_denominator(&sp, gamma, w).unwrap();
        prop_assert!(((lambda - q) - PI * d).norm() <= 1e-10 * (1.0 + q.norm()));
    }

    #[test]
    fn qfunc_forms_agree(u in -2.0f64..2.0, v in 0.2f64..2.0, sgn in any::<bool>()) {
        let sp = pw();
        let w = c(u, if sgn { v } else { -v });
        let a = qfunc(&sp, w, QForm::Definitional).unwrap();
        let b = qfunc(&sp, w, QForm::ClosedForm).unwrap();
        prop_assert!((a - b).norm() <= 1e-9 * (1.0 + b.norm()));
    }

    #[test]
    fn decomposition_boundary_condition(gamma in 0.1f64..3.0, x in -2.0f64..2.0, y in -1.0f64..1.0) {
        prop_assume!((gamma - FRAC_PI_2).abs() > 0.05);
        let sp = pw();
        let ext = ExtensionHandle::new(&sp, gamma);
        let g = ext.resolvent(I, &EntireFn::kernel(c(x, y))).unwrap();
        let d = dom_gamma_decompose(&sp, gamma, &g).unwrap();
        prop_assert!(d.boundary_residual().unwrap() <= 1e-8);
        prop_assert!(d.reassembly_error(&off_axis_grid()).unwrap() <= 1e-9);
    }
}
