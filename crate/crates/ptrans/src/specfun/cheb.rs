//! Chebyshev evaluation and the Temme gamma ratios used by the Bessel
//! routines for orders reduced to |mu| <= 1/2.

use crate::real::Real;

/// Clenshaw recurrence on [-1, 1] with the first coefficient halved.
pub(crate) fn cheb_eval<T: Real>(coeffs: &[f64], y: T) -> T {
    let y2 = y + y;
    let mut d = T::zero();
    let mut dd = T::zero();
    for &c in coeffs.iter().skip(1).rev() {
        let tmp = d;
        d = y2 * d - dd + T::cst(c);
        dd = tmp;
    }
    y * d - dd + T::cst(0.5 * coeffs[0])
}

const G1_DAT: [f64; 14] = [
    -1.14516408366268311786898152867,
    0.00636085311347084238122955495,
    0.00186245193007206848934643657,
    0.000152833085873453507081227824,
    0.000017017464011802038795324732,
    -6.4597502923347254354668326451e-07,
    -5.1819848432519380894104312968e-08,
    4.5189092894858183051123180797e-10,
    3.2433227371020873043666259180e-11,
    6.8309434024947522875432400828e-13,
    2.8353502755172101513119628130e-14,
    -7.9883905769323592875638087541e-16,
    -3.3726677300771949833341213457e-17,
    -3.6586334809210520744054437104e-20,
];

const G2_DAT: [f64; 15] = [
    1.882645524949671835019616975350,
    -0.077490658396167518329547945212,
    -0.018256714847324929419579340950,
    0.0006338030209074895795923971731,
    0.0000762290543508729021194461175,
    -9.5501647561720443519853993526e-07,
    -8.8927268107886351912431512955e-08,
    -1.9521334772319613740511880132e-09,
    -9.4003052735885162111769579771e-11,
    4.6875133849532393179290879101e-12,
    2.2658535746925759582447545145e-13,
    -1.1725509698488015111878735251e-15,
    -7.0441338200245222530843155877e-17,
    -2.4377878310107693650659740228e-18,
    -7.5225243218253901727164675011e-20,
];

/// Gamma combinations near order zero, all even or odd in `nu` as noted.
/// The linear combinations `g2 + nu*g1` and `g2 - nu*g1` reproduce
/// `1/Gamma(1 - nu)` and `1/Gamma(1 + nu)` exactly, which is what the
/// Temme series for Y and K consume.
pub(crate) struct TemmeGamma<T> {
    /// (1/Gamma(1-nu) - 1/Gamma(1+nu)) / (2 nu), even in nu.
    pub g1: T,
    /// (1/Gamma(1-nu) + 1/Gamma(1+nu)) / 2, even in nu.
    pub g2: T,
    /// 1/Gamma(1+nu)
    pub inv_gamma_1p: T,
    /// 1/Gamma(1-nu)
    pub inv_gamma_1m: T,
}

/// Temme's gamma ratios for |nu| <= 1/2.
pub(crate) fn temme_gamma<T: Real>(nu: T) -> TemmeGamma<T> {
    debug_assert!(nu.abs() <= T::cst(0.5 + 1e-12));
    let x = T::cst(4.0) * nu.abs() - T::one();
    let g1 = cheb_eval(&G1_DAT, x);
    let g2 = cheb_eval(&G2_DAT, x);
    TemmeGamma {
        g1,
        g2,
        inv_gamma_1p: g2 - nu * g1,
        inv_gamma_1m: g2 + nu * g1,
    }
}
