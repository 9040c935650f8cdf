//! 21-point Gauss–Kronrod panels for vector-valued complex integrands.

use crate::{Cplx, DbError, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// One panel estimate.
#[derive(Clone, Copy, Debug)]
pub struct Panel<const K: usize> {
    pub value: [Cplx; K],
    /// `|Kronrod - Gauss|`, maximised over components.
    pub err: f64,
    /// Kronrod estimate of `∫|f|`, maximised over components.
    pub abs: f64,
}

pub fn gk21<const K: usize, F>(f: &F, a: f64, b: f64) -> Result<Panel<K>>
where
    F: Fn(f64) -> Result<[Cplx; K]>,
{
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let zero = Cplx::new(0.0, 0.0);
    let mut kron = [zero; K];
    let mut gauss = [zero; K];
    let mut abs = [0.0f64; K];
    let fc = f(centre)?;
    for k in 0..K {
        kron[k] = fc[k] * WGK[10];
        abs[k] = fc[k].norm() * WGK[10];
    }
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(centre - dx)?;
        let f2 = f(centre + dx)?;
        for k in 0..K {
            let s = f1[k] + f2[k];
            kron[k] += s * WGK[j];
            abs[k] += (f1[k].norm() + f2[k].norm()) * WGK[j];
            if j % 2 == 1 {
                gauss[k] += s * WG[j / 2];
            }
        }
    }
    let mut err = 0.0f64;
    let mut amax = 0.0f64;
    for k in 0..K {
        kron[k] *= half;
        err = err.max((kron[k] - gauss[k] * half).norm());
        amax = amax.max(abs[k] * half.abs());
    }
    Ok(Panel { value: kron, err, abs: amax })
}

/// Adaptive bisection of one panel until the Kronrod–Gauss gap is below
/// `rel_tol` times the panel's absolute mass (or `abs_floor`).
pub fn adaptive<const K: usize, F>(f: &F, a: f64, b: f64, rel_tol: f64, abs_floor: f64) -> Result<Panel<K>>
where
    F: Fn(f64) -> Result<[Cplx; K]>,
{
    const MAX_DEPTH: usize = 12;
    fn rec<const K: usize, F>(
        f: &F,
        a: f64,
        b: f64,
        rel_tol: f64,
        abs_floor: f64,
        depth: usize,
    ) -> Result<Panel<K>>
    where
        F: Fn(f64) -> Result<[Cplx; K]>,
    {
        let p = gk21(f, a, b)?;
        if p.err <= (rel_tol * p.abs).max(abs_floor) {
            return Ok(p);
        }
        if depth >= MAX_DEPTH {
            return Err(DbError::NonConvergence { levels: depth, change: p.err });
        }
        let m = 0.5 * (a + b);
        let l = rec(f, a, m, rel_tol, abs_floor, depth + 1)?;
        let r = rec(f, m, b, rel_tol, abs_floor, depth + 1)?;
        let mut value = l.value;
        for (v, rv) in value.iter_mut().zip(r.value) {
            *v += rv;
        }
        Ok(Panel { value, err: l.err + r.err, abs: l.abs + r.abs })
    }
    rec(f, a, b, rel_tol, abs_floor, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomial_exactly() {
        let f = |x: f64| Ok([Cplx::new(x.powi(20), -x.powi(3))]);
        let p = gk21(&f, -1.0, 2.0).unwrap();
        let exact_re = (2f64.powi(21) + 1.0) / 21.0;
        let exact_im = -(16.0 - 1.0) / 4.0;
        assert!((p.value[0] - Cplx::new(exact_re, exact_im)).norm() < 1e-9 * exact_re);
    }

    #[test]
    fn adaptive_handles_peak() {
        let f = |x: f64| Ok([Cplx::from(1.0 / (1e-4 + x * x))]);
        let p = adaptive(&f, -1.0, 1.0, 1e-13, 0.0).unwrap();
        let exact = 2.0 * (1.0 / 1e-2) * (1.0f64 / 1e-2).atan();
        assert!((p.value[0].re - exact).abs() < 1e-10 * exact);
    }
}
