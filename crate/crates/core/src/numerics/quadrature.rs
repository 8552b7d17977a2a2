//! Globally adaptive Gauss-Kronrod quadrature on finite and half-infinite
//! intervals.

use serde::{Deserialize, Serialize};

use super::ToleranceConfig;
use crate::{Result, ZcdError};

const MAX_PANELS: usize = 5000;

/// Gauss-Kronrod rule pair used on each panel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum QuadRule {
    /// 7-point Gauss embedded in 15-point Kronrod.
    Gk15,
    /// 10-point Gauss embedded in 21-point Kronrod.
    #[default]
    Gk21,
}

struct Nodes {
    xgk: &'static [f64],
    wg: &'static [f64],
    wgk: &'static [f64],
}

#[allow(clippy::excessive_precision)]
const GK15: Nodes = Nodes {
    xgk: &[
        0.991_455_371_120_812_639_206_854_697_526_329,
        0.949_107_912_342_758_524_526_189_684_047_851,
        0.864_864_423_359_769_072_789_712_788_640_926,
        0.741_531_185_599_394_439_863_864_773_280_788,
        0.586_087_235_467_691_130_294_144_838_258_730,
        0.405_845_151_377_397_166_906_606_412_076_961,
        0.207_784_955_007_898_467_600_689_403_773_245,
        0.0,
    ],
    wg: &[
        0.129_484_966_168_869_693_270_611_432_679_082,
        0.279_705_391_489_276_667_901_467_771_423_780,
        0.381_830_050_505_118_944_950_369_775_488_975,
        0.417_959_183_673_469_387_755_102_040_816_327,
    ],
    wgk: &[
        0.022_935_322_010_529_224_963_732_008_058_970,
        0.063_092_092_629_978_553_290_700_663_189_204,
        0.104_790_010_322_250_183_839_876_322_541_518,
        0.140_653_259_715_525_918_745_189_590_510_238,
        0.169_004_726_639_267_902_826_583_426_598_550,
        0.190_350_578_064_785_409_913_256_402_421_014,
        0.204_432_940_075_298_892_414_161_999_234_649,
        0.209_482_141_084_727_828_012_999_174_891_714,
    ],
};

#[allow(clippy::excessive_precision)]
const GK21: Nodes = Nodes {
    xgk: &[
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
    ],
    wg: &[
        0.066_671_344_308_688_137_593_568_809_893_332,
        0.149_451_349_150_580_593_145_776_339_657_697,
        0.219_086_362_515_982_043_995_534_934_228_163,
        0.269_266_719_309_996_355_091_226_921_569_469,
        0.295_524_224_714_752_870_173_892_994_651_338,
    ],
    wgk: &[
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
    ],
};

impl QuadRule {
    fn nodes(self) -> &'static Nodes {
        match self {
            QuadRule::Gk15 => &GK15,
            QuadRule::Gk21 => &GK21,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    abs_value: f64,
}

fn eval<F: Fn(f64) -> f64>(f: &F, x: f64) -> Result<f64> {
    let v = f(x);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(ZcdError::domain(
            "integrate",
            format!("integrand is not finite at x = {x:e} (value {v})"),
        ))
    }
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rule: QuadRule) -> Result<Panel> {
    let Nodes { xgk, wg, wgk } = rule.nodes();
    let n = xgk.len();
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = eval(f, center)?;

    let mut fv1 = [0.0; 16];
    let mut fv2 = [0.0; 16];
    let mut res_kronrod = f_center * wgk[n - 1];
    let mut res_gauss = if n % 2 == 0 {
        f_center * wg[n / 2 - 1]
    } else {
        0.0
    };
    let mut res_abs = res_kronrod.abs();

    for (j, wgj) in wg.iter().enumerate().take((n - 1) / 2) {
        let k = 2 * j + 1;
        let dx = half * xgk[k];
        let (f1, f2) = (eval(f, center - dx)?, eval(f, center + dx)?);
        fv1[k] = f1;
        fv2[k] = f2;
        res_gauss += wgj * (f1 + f2);
        res_kronrod += wgk[k] * (f1 + f2);
        res_abs += wgk[k] * (f1.abs() + f2.abs());
    }
    for j in 0..n / 2 {
        let k = 2 * j;
        let dx = half * xgk[k];
        let (f1, f2) = (eval(f, center - dx)?, eval(f, center + dx)?);
        fv1[k] = f1;
        fv2[k] = f2;
        res_kronrod += wgk[k] * (f1 + f2);
        res_abs += wgk[k] * (f1.abs() + f2.abs());
    }

    let mean = 0.5 * res_kronrod;
    let mut res_asc = wgk[n - 1] * (f_center - mean).abs();
    for k in 0..n - 1 {
        res_asc += wgk[k] * ((fv1[k] - mean).abs() + (fv2[k] - mean).abs());
    }
    let scale = half.abs();
    let value = res_kronrod * half;
    let error = rescale_error(
        (res_kronrod - res_gauss) * half,
        res_abs * scale,
        res_asc * scale,
    );
    Ok(Panel {
        a,
        b,
        value,
        error,
        abs_value: res_abs * scale,
    })
}

// QUADPACK error heuristic.
fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut err = err.abs();
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        err = if scale < 1.0 {
            res_asc * scale
        } else {
            res_asc
        };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    err
}

fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol: &ToleranceConfig,
    rule: QuadRule,
) -> Result<f64> {
    let mut panels = vec![gauss_kronrod(f, a, b, rule)?];
    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        let abs_value: f64 = panels.iter().map(|p| p.abs_value).sum();
        let target = (tol.quad_rel_tol * value.abs()).max(100.0 * f64::EPSILON * abs_value);
        if error <= target {
            return Ok(value);
        }
        if panels.len() >= MAX_PANELS {
            return Err(ZcdError::Quadrature {
                panels: panels.len(),
                partial: value,
                error_estimate: error,
            });
        }
        let (worst, _) =
            panels
                .iter()
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |(bi, be), (i, p)| {
                    if p.error > be {
                        (i, p.error)
                    } else {
                        (bi, be)
                    }
                });
        let Panel { a, b, .. } = panels.swap_remove(worst);
        let mid = 0.5 * (a + b);
        if !(mid > a && mid < b) {
            // Panel cannot be split further in floating point.
            return Err(ZcdError::Quadrature {
                panels: panels.len() + 1,
                partial: value,
                error_estimate: error,
            });
        }
        panels.push(gauss_kronrod(f, a, mid, rule)?);
        panels.push(gauss_kronrod(f, mid, b, rule)?);
    }
}

/// Integrates `f` over the finite interval `[a, b]` with the default rule.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: &ToleranceConfig) -> Result<f64> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(ZcdError::domain("integrate", "finite limits required"));
    }
    if a == b {
        return Ok(0.0);
    }
    if a > b {
        return Ok(-adaptive(&f, b, a, tol, QuadRule::default())?);
    }
    adaptive(&f, a, b, tol, QuadRule::default())
}

/// Integrates `f` over `[lower, ∞)`.
///
/// The tail is folded onto `[0, 1)` with `x = lower + u/(1-u)`, so `f` must
/// decay fast enough for the mapped integrand to stay finite.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(
    f: F,
    lower: f64,
    tol: &ToleranceConfig,
) -> Result<f64> {
    integrate_semi_infinite_with(f, lower, tol, QuadRule::default())
}

/// [`integrate_semi_infinite`] with an explicit Gauss-Kronrod rule.
pub fn integrate_semi_infinite_with<F: Fn(f64) -> f64>(
    f: F,
    lower: f64,
    tol: &ToleranceConfig,
    rule: QuadRule,
) -> Result<f64> {
    if !lower.is_finite() {
        return Err(ZcdError::domain(
            "integrate_semi_infinite",
            "lower limit must be finite",
        ));
    }
    let mapped = |u: f64| {
        let w = 1.0 - u;
        let x = lower + u / w;
        if x.is_infinite() {
            return 0.0;
        }
        f(x) / (w * w)
    };
    adaptive(&mapped, 0.0, 1.0, tol, rule)
}
