//! Gauss-Kronrod 10-21 rule on a single panel, QUADPACK-style error
//! rescaling included.

use crate::error::{Error, Result};
use crate::real::Real;

/// Kronrod abscissae (positive half), 21-point rule.
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

/// Gauss weights for the embedded 10-point rule.
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Kronrod weights.
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

/// One evaluated panel.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Panel<T> {
    pub a: T,
    pub b: T,
    pub value: T,
    pub error: T,
}

pub(crate) const EVALS_PER_PANEL: u64 = 21;

/// Evaluate the 21-point Kronrod rule with embedded 10-point Gauss rule on
/// [a, b]. Non-finite integrand values surface as `Error::Eval`.
pub(crate) fn qk21<T, F>(f: &mut F, a: T, b: T) -> Result<Panel<T>>
where
    T: Real,
    F: FnMut(T) -> Result<T>,
{
    let center = T::cst(0.5) * (a + b);
    let half_length = T::cst(0.5) * (b - a);
    let abs_half = half_length.abs();

    let mut eval = |x: T| -> Result<T> {
        let v = f(x)?;
        if !v.is_finite() {
            return Err(Error::Eval(format!("non-finite integrand value at x = {x}")));
        }
        Ok(v)
    };

    let f_center = eval(center)?;
    // Kronrod sum accumulators; Gauss rule uses the odd-index Kronrod nodes.
    let mut result_gauss = T::zero();
    let mut result_kronrod = f_center * T::cst(WGK[10]);
    let mut resabs = result_kronrod.abs();
    let mut fv1 = [T::zero(); 10];
    let mut fv2 = [T::zero(); 10];

    for j in 0..5 {
        let jtw = 2 * j + 1;
        let abscissa = half_length * T::cst(XGK[jtw]);
        let f1 = eval(center - abscissa)?;
        let f2 = eval(center + abscissa)?;
        let fsum = f1 + f2;
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        result_gauss = result_gauss + T::cst(WG[j]) * fsum;
        result_kronrod = result_kronrod + T::cst(WGK[jtw]) * fsum;
        resabs = resabs + T::cst(WGK[jtw]) * (f1.abs() + f2.abs());
    }

    for j in 0..5 {
        let jtwm1 = 2 * j;
        let abscissa = half_length * T::cst(XGK[jtwm1]);
        let f1 = eval(center - abscissa)?;
        let f2 = eval(center + abscissa)?;
        let fsum = f1 + f2;
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        result_kronrod = result_kronrod + T::cst(WGK[jtwm1]) * fsum;
        resabs = resabs + T::cst(WGK[jtwm1]) * (f1.abs() + f2.abs());
    }

    let mean = result_kronrod * T::cst(0.5);
    let mut resasc = T::cst(WGK[10]) * (f_center - mean).abs();
    for j in 0..10 {
        resasc = resasc + T::cst(WGK[j]) * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let err = ((result_kronrod - result_gauss) * half_length).abs();
    let resabs = resabs * abs_half;
    let resasc = resasc * abs_half;

    Ok(Panel {
        a,
        b,
        value: result_kronrod * half_length,
        error: rescale_error(err, resabs, resasc),
    })
}

/// QUADPACK's empirical error model for the Kronrod-Gauss difference.
fn rescale_error<T: Real>(err: T, resabs: T, resasc: T) -> T {
    let mut err = err.abs();
    if resasc != T::zero() && err != T::zero() {
        let scale = (T::cst(200.0) * err / resasc).powf(T::cst(1.5));
        err = if scale < T::one() { resasc * scale } else { resasc };
    }
    let underflow_floor = T::min_positive_value() / (T::cst(50.0) * T::epsilon());
    if resabs > underflow_floor {
        let min_err = T::cst(50.0) * T::epsilon() * resabs;
        if min_err > err {
            err = min_err;
        }
    }
    err
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        // degree 15 is well inside the Kronrod exactness range
        let mut f = |x: f64| Ok(x.powi(15) - 3.0 * x.powi(7) + x);
        let p = qk21(&mut f, 0.0, 2.0).unwrap();
        let exact = 2.0f64.powi(16) / 16.0 - 3.0 * 2.0f64.powi(8) / 8.0 + 2.0;
        assert!((p.value - exact).abs() < 1e-10);
        assert!(p.error < 1e-9);
    }

    #[test]
    fn error_estimate_covers_true_error() {
        let mut f = |x: f64| Ok((10.0 * x).sin() * (-x).exp());
        let p = qk21(&mut f, 0.0, 3.0).unwrap();
        // true value of int_0^3 sin(10x) e^{-x} dx
        let exact = (10.0 - (-3.0f64).exp() * (10.0 * (30.0f64).cos() + (30.0f64).sin())) / 101.0;
        assert!((p.value - exact).abs() <= p.error * 3.0 + 1e-15);
    }

    #[test]
    fn non_finite_integrand_is_reported() {
        let mut g = |x: f64| Ok(if (x - 0.5).abs() < 0.3 { f64::NAN } else { x });
        assert!(matches!(qk21(&mut g, 0.0, 1.0), Err(Error::Eval(_))));
    }
}
