//! Gauss–Kronrod building blocks shared by the integrators.

// Node and weight tables are quoted at the precision they are published with.
#![allow(clippy::excessive_precision)]

#[allow(unused_imports)] // inherent in test builds, where std is linked
use num_traits::Float;
use alloc::collections::BinaryHeap;
use core::cmp::Ordering;


use crate::Complex;

/// A Gauss–Kronrod pair. `xgk` lists the positive Kronrod abscissae in
/// decreasing order with the centre last; the Gauss nodes are the entries
/// at odd indices, weighted by `wg`, plus the centre when `wg_center != 0`.
pub struct Rule {
    xgk: &'static [f64],
    wgk: &'static [f64],
    wg: &'static [f64],
    wg_center: f64,
}

/// The 7/15-point pair.
pub const GK15: Rule = Rule {
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
    wg: &[
        0.129_484_966_168_869_693_270_611_432_679_082,
        0.279_705_391_489_276_667_901_467_771_423_780,
        0.381_830_050_505_118_944_950_369_775_488_975,
    ],
    wg_center: 0.417_959_183_673_469_387_755_102_040_816_327,
};

/// The 10/21-point pair.
pub const GK21: Rule = Rule {
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
    wgk: &[
        0.011_694_638_867_371_874_278_064_396_062_192,
        0.032_558_162_307_964_727_478_818_972_459_390,
        0.054_755_896_574_351_996_031_381_300_244_580,
        0.075_039_674_810_919_952_767_043_140_916_190,
        0.093_125_454_583_697_605_535_065_465_083_366,
        0.109_387_158_802_297_641_899_210_590_325_805,
        0.123_491_976_262_065_851_077_208_323_457_620,
        0.134_709_217_311_473_325_928_054_001_771_707,
        0.142_775_938_577_060_080_797_094_273_138_717,
        0.147_739_104_901_338_491_374_841_515_972_068,
        0.149_445_554_002_916_905_664_936_468_389_821,
    ],
    wg: &[
        0.066_671_344_308_688_137_593_568_809_893_332,
        0.149_451_349_150_580_593_145_776_339_657_697,
        0.219_086_362_515_982_043_995_534_934_228_163,
        0.269_266_719_309_996_355_091_226_921_569_469,
        0.295_524_224_714_752_870_173_892_994_651_338,
    ],
    wg_center: 0.0,
};

const MAX_PAIRS: usize = 10;

/// One application of a Gauss–Kronrod pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: Complex,
    /// Rescaled `|K − G|` truncation estimate.
    pub error: f64,
    /// Kronrod estimate of `∫|f|`.
    pub abs_integral: f64,
}

impl Estimate {
    /// Rounding floor `(50 + Φ) ε ∫|f|` below which bisection cannot help.
    /// `Φ` bounds a phase factored out of the whole segment: its rounding,
    /// about `εΦ`, rotates the segment value and is invisible to the
    /// Kronrod–Gauss difference.
    pub fn roundoff_floor(&self, phase_magnitude: f64) -> f64 {
        (50.0 + phase_magnitude) * f64::EPSILON * self.abs_integral
    }

    /// Contribution to the linear (truncation) and quadrature (rounding)
    /// error sums. An estimate at or below its floor is indistinguishable
    /// from rounding noise and only enters through the floor.
    fn error_parts(&self, phase_magnitude: f64) -> (f64, f64) {
        let floor = self.roundoff_floor(phase_magnitude);
        let truncation = if self.error > floor { self.error } else { 0.0 };
        (truncation, floor * floor)
    }
}

/// QUADPACK's heuristic rescaling of the raw Kronrod–Gauss difference,
/// without the rounding floor (that is accounted for separately).
fn rescale_error(err: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    scaled
}

/// Error of a sum of segments: truncation estimates add, rounding floors of
/// independent segments add in quadrature.
fn combined_error(truncation: f64, roundoff_sq: f64) -> f64 {
    truncation + roundoff_sq.sqrt()
}

/// Integrates over `[a, b]` with `rule`. The integrand is supplied in
/// segment-local form: `local(c)` returns the function of the offset `x`
/// from the segment centre `c`. Integrands whose phase is large can then
/// factor out the phase at `c` once and evaluate the remainder from `x`
/// without cancellation.
pub fn kronrod<L, G>(rule: &Rule, local: &L, a: f64, b: f64) -> Estimate
where
    L: Fn(f64) -> G + ?Sized,
    G: Fn(f64) -> Complex,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let pairs = rule.xgk.len() - 1;
    let mut fv1 = [Complex::new(0.0, 0.0); MAX_PAIRS];
    let mut fv2 = [Complex::new(0.0, 0.0); MAX_PAIRS];
    let f = local(center);

    let f_center = f(0.0);
    let mut gauss = f_center * rule.wg_center;
    let mut kronrod = f_center * rule.wgk[pairs];
    let mut res_abs = rule.wgk[pairs] * f_center.norm();

    for j in 0..pairs {
        let x = half * rule.xgk[j];
        let (v1, v2) = (f(-x), f(x));
        fv1[j] = v1;
        fv2[j] = v2;
        let sum = v1 + v2;
        kronrod += sum * rule.wgk[j];
        res_abs += rule.wgk[j] * (v1.norm() + v2.norm());
        if j % 2 == 1 {
            gauss += sum * rule.wg[j / 2];
        }
    }

    let mean = kronrod * 0.5;
    let mut res_asc = rule.wgk[pairs] * (f_center - mean).norm();
    for j in 0..pairs {
        res_asc += rule.wgk[j] * ((fv1[j] - mean).norm() + (fv2[j] - mean).norm());
    }

    let scale = half.abs();
    let err = (kronrod - gauss).norm() * scale;
    Estimate {
        value: kronrod * half,
        error: rescale_error(err, res_asc * scale),
        abs_integral: res_abs * scale,
    }
}

/// The 7/15-point pair applied to a plain integrand.
pub fn gk15<F>(f: &F, a: f64, b: f64) -> Estimate
where
    F: Fn(f64) -> Complex + ?Sized,
{
    kronrod(&GK15, &|c: f64| move |x: f64| f(c + x), a, b)
}

/// Neumaier-compensated complex accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    re: (f64, f64),
    im: (f64, f64),
}

fn neumaier(acc: &mut (f64, f64), x: f64) {
    let (sum, comp) = *acc;
    let t = sum + x;
    let c = if sum.abs() >= x.abs() {
        (sum - t) + x
    } else {
        (x - t) + sum
    };
    *acc = (t, comp + c);
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, z: Complex) {
        neumaier(&mut self.re, z.re);
        neumaier(&mut self.im, z.im);
    }

    pub fn value(&self) -> Complex {
        Complex::new(self.re.0 + self.re.1, self.im.0 + self.im.1)
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Segment {
    pub a: f64,
    pub b: f64,
    pub estimate: Estimate,
}

/// Max-heap entry ordered by error.
struct ByError(f64, usize);

impl PartialEq for ByError {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for ByError {}

impl PartialOrd for ByError {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ByError {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0).then_with(|| other.1.cmp(&self.1))
    }
}

/// Outcome of [`refine`].
#[derive(Debug, Clone, Copy)]
pub(crate) struct Refined {
    pub value: Complex,
    pub error: f64,
    pub converged: bool,
}

/// Global adaptive refinement: repeatedly bisects the segment with the
/// largest error until `error <= rel_tol·|value|` (or `abs_tol`), the
/// segment budget runs out, or every remaining error sits at its roundoff
/// floor. `phase(a, b)` bounds the phase factored out of a segment, see
/// [`Estimate::roundoff_floor`].
pub(crate) fn refine<L, G, P>(
    rule: &Rule,
    local: &L,
    phase: &P,
    mut segments: alloc::vec::Vec<Segment>,
    rel_tol: f64,
    abs_tol: f64,
    max_segments: usize,
) -> Refined
where
    L: Fn(f64) -> G + ?Sized,
    G: Fn(f64) -> Complex,
    P: Fn(f64, f64) -> f64 + ?Sized,
{
    let parts = |s: &Segment| s.estimate.error_parts(phase(s.a, s.b));
    let totals = |segments: &[Segment]| {
        let mut sum = CompensatedSum::new();
        let (mut trunc, mut round_sq) = (0.0, 0.0);
        for s in segments {
            sum.add(s.estimate.value);
            let (t, r) = parts(s);
            trunc += t;
            round_sq += r;
        }
        (sum.value(), trunc, round_sq)
    };
    let target = |value: Complex| (rel_tol * value.norm()).max(abs_tol);

    let (mut value, mut trunc, mut round_sq) = totals(&segments);
    if combined_error(trunc, round_sq) <= target(value) {
        return Refined {
            value,
            error: combined_error(trunc, round_sq),
            converged: true,
        };
    }

    let mut heap: BinaryHeap<ByError> = segments
        .iter()
        .enumerate()
        .filter(|(_, s)| parts(s).0 > 0.0)
        .map(|(i, s)| ByError(s.estimate.error, i))
        .collect();

    let mut since_resum = 0usize;
    while combined_error(trunc, round_sq) > target(value) {
        if segments.len() >= max_segments {
            break;
        }
        let Some(ByError(_, idx)) = heap.pop() else {
            break;
        };
        let seg = segments[idx];
        let mid = 0.5 * (seg.a + seg.b);
        if !(mid > seg.a && mid < seg.b) {
            continue;
        }
        let left = Segment {
            a: seg.a,
            b: mid,
            estimate: kronrod(rule, local, seg.a, mid),
        };
        let right = Segment {
            a: mid,
            b: seg.b,
            estimate: kronrod(rule, local, mid, seg.b),
        };

        let ((lt, lr), (rt, rr), (st, sr)) = (parts(&left), parts(&right), parts(&seg));
        value += left.estimate.value + right.estimate.value - seg.estimate.value;
        trunc += lt + rt - st;
        round_sq += lr + rr - sr;

        segments[idx] = left;
        segments.push(right);
        let new_idx = segments.len() - 1;
        for (i, (t, _), err) in [(idx, (lt, lr), left.estimate.error), (new_idx, (rt, rr), right.estimate.error)] {
            if t > 0.0 {
                heap.push(ByError(err, i));
            }
        }

        since_resum += 1;
        if since_resum >= 4096 {
            // refresh the running totals to shed accumulated drift
            (value, trunc, round_sq) = totals(&segments);
            since_resum = 0;
        }
    }
    let (value, trunc, round_sq) = totals(&segments);
    let error = combined_error(trunc, round_sq);
    Refined {
        value,
        error,
        converged: error <= target(value),
    }
}

/// Adaptive integration of a complex function over `[a, b]`.
///
/// Returns `(value, error_estimate, converged)`.
pub fn integrate<F>(f: F, a: f64, b: f64, rel_tol: f64, max_segments: usize) -> (Complex, f64, bool)
where
    F: Fn(f64) -> Complex,
{
    if a == b {
        return (Complex::new(0.0, 0.0), 0.0, true);
    }
    let first = alloc::vec![Segment {
        a,
        b,
        estimate: gk15(&f, a, b),
    }];
    let local = |c: f64| {
        let f = &f;
        move |x: f64| f(c + x)
    };
    let out = refine(&GK15, &local, &|_, _| 0.0, first, rel_tol, 0.0, max_segments.max(1));
    (out.value, out.error, out.converged)
}

/// Adaptive integration of a real function over `[a, b]`.
pub fn integrate_real<F>(f: F, a: f64, b: f64, rel_tol: f64, max_segments: usize) -> (f64, f64, bool)
where
    F: Fn(f64) -> f64,
{
    let (v, e, ok) = integrate(|x| Complex::new(f(x), 0.0), a, b, rel_tol, max_segments);
    (v.re, e, ok)
}
