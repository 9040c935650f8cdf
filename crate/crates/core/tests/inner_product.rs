use dbscale::numerics::{inner_b, inner_b_detailed, IpEngine};
use dbscale::suite::dictionary;
use dbscale::{c, Cplx, DbSpace, EntireFn, I};
use std::f64::consts::PI;

fn kernel_pairs() -> Vec<(Cplx, Cplx)> {
    vec![
        (c(0.0, 0.0), c(0.3, 0.0)),
        (c(0.2, 0.8), c(-1.0, 0.3)),
        (c(1.5, -0.4), c(0.5, 0.5)),
        (c(0.0, 1.0), c(0.0, -1.0)),
        (c(-2.0, 0.0), c(2.0, 1.2)),
    ]
}

fn check_reproducing(space: &DbSpace, engine: IpEngine, tol: f64) {
    for (w, v) in kernel_pairs() {
        let o = inner_b_detailed(space, &engine, &EntireFn::kernel(w), &EntireFn::kernel(v)).unwrap();
        let expect = space.kernel(w, v).unwrap();
        let rel = (o.value - expect).norm() / (space.kernel_diag(w).unwrap() * space.kernel_diag(v).unwrap()).sqrt();
        assert!(rel < tol, "w={w} v={v}: rel {rel:e}");
    }
}

#[test]
fn sampling_reproduces_kernel_pw() {
    let sp = DbSpace::paley_wiener(PI).unwrap();
    check_reproducing(&sp, IpEngine::default_sampling(), 1e-9);
}

#[test]
fn quadrature_reproduces_kernel_pw() {
    let sp = DbSpace::paley_wiener(PI).unwrap();
    check_reproducing(&sp, IpEngine::default_quadrature(), 1e-9);
}

#[test]
fn sampling_reproduces_kernel_shifted() {
    let sp = DbSpace::shifted_paley_wiener(1.0).unwrap();
    check_reproducing(&sp, IpEngine::default_sampling(), 1e-9);
}

#[test]
fn quadrature_reproduces_kernel_shifted() {
    let sp = DbSpace::shifted_paley_wiener(1.0).unwrap();
    check_reproducing(&sp, IpEngine::default_quadrature(), 1e-9);
}

#[test]
fn frozen_inner_products() {
    let sp = DbSpace::paley_wiener(PI).unwrap();
    let k0 = EntireFn::kernel(0.0.into());
    assert!((sp.inner(&k0, &k0).unwrap() - 1.0).norm() < 1e-12);
    let v = sp.inner(&k0, &EntireFn::kernel(-I)).unwrap();
    assert!((v - PI.sinh() / PI).norm() < 1e-10, "{v}");
}

#[test]
fn methods_agree_on_dictionary() {
    let sp = DbSpace::paley_wiener(PI).unwrap();
    let d = dictionary(&sp, PI / 4.0).unwrap();
    let quad = IpEngine::default_quadrature();
    for j in 0..d.len() {
        let (f, g) = (&d[j], &d[(j * 7 + 3) % d.len()]);
        let a = sp.inner(f, g).unwrap();
        let b = inner_b(&sp, &quad, f, g).unwrap();
        assert!((a - b).norm() <= 1e-6 * (1.0 + a.norm()), "pair {j}: {a} vs {b}");
    }
}

#[test]
fn parseval_on_integer_nodes() {
    // For PW(π) the zeros of s₀ are the integers and ‖f‖² = Σ |f(n)|².
    let sp = DbSpace::paley_wiener(PI).unwrap();
    let d = dictionary(&sp, PI / 4.0).unwrap();
    let quad = IpEngine::default_quadrature();
    for f in d.iter().take(12) {
        let norm_sq = inner_b(&sp, &quad, f, f).unwrap().re;
        let mut sum = 0.0;
        for n in -200_000i64..=200_000 {
            sum += sp.eval(f, c(n as f64, 0.0)).unwrap().norm_sqr();
        }
        assert!((sum - norm_sq).abs() <= 1e-5 * norm_sq, "{f:?}: {sum} vs {norm_sq}");
    }
}
