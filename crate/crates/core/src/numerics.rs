//! Shared numerical kernels: bracketed bisection and adaptive
//! Gauss-Kronrod quadrature with user-supplied break points.

/// Bisection on [lo, hi], requiring f(lo) and f(hi) to have opposite signs.
///
/// Returns a point within `tol` of a root, or `None` when the endpoints do
/// not bracket a sign change.
pub fn bisect<F>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> Option<f64>
where
    F: Fn(f64) -> f64,
{
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if flo.signum() == fhi.signum() {
        return None;
    }
    // 0.5*(hi-lo) halves each step; 200 iterations exhaust f64 resolution
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if 0.5 * (hi - lo) <= tol || mid <= lo || mid >= hi {
            return Some(mid);
        }
        let fmid = f(mid);
        if fmid == 0.0 {
            return Some(mid);
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Result of an adaptive quadrature: best value and its error estimate.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub abs_err: f64,
}

impl QuadResult {
    pub fn converged(&self, abs_tol: f64) -> bool {
        self.abs_err <= abs_tol
    }
}

// 15-point Kronrod abscissae on [-1, 1] (positive half; node 7 is the centre)
// and the embedded 7-point Gauss weights. Published to more digits than f64
// holds so each constant rounds to the nearest representable value.
#[allow(clippy::excessive_precision)]
const XGK15: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_33,
    0.949_107_912_342_758_524_526_189_684_047_85,
    0.864_864_423_359_769_072_789_712_788_640_93,
    0.741_531_185_599_394_439_863_864_773_280_79,
    0.586_087_235_467_691_130_294_144_838_258_73,
    0.405_845_151_377_397_166_906_606_412_076_96,
    0.207_784_955_007_898_467_600_689_403_773_24,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WG7: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_08,
    0.279_705_391_489_276_667_901_467_771_423_78,
    0.381_830_050_505_118_944_950_369_775_488_98,
    0.417_959_183_673_469_387_755_102_040_816_33,
];
#[allow(clippy::excessive_precision)]
const WGK15: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_97,
    0.063_092_092_629_978_553_290_700_663_189_2,
    0.104_790_010_322_250_183_839_876_322_541_52,
    0.140_653_259_715_525_918_745_189_590_510_24,
    0.169_004_726_639_267_902_826_583_426_598_55,
    0.190_350_578_064_785_409_913_256_402_421_01,
    0.204_432_940_075_298_892_414_161_999_234_65,
    0.209_482_141_084_727_828_012_999_174_891_71,
];

/// One G7/K15 panel: returns (kronrod value, |kronrod - gauss| error estimate).
fn gk15_panel<F>(f: &F, lo: f64, hi: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let centre = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let f_centre = f(centre);
    let mut kronrod = WGK15[7] * f_centre;
    let mut gauss = WG7[3] * f_centre;
    for j in 0..7 {
        let dx = half * XGK15[j];
        let fsum = f(centre - dx) + f(centre + dx);
        kronrod += WGK15[j] * fsum;
        if j % 2 == 1 {
            gauss += WG7[j / 2] * fsum;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// Globally adaptive G7/K15 integration of `f` over [lo, hi]: repeatedly
/// splits the panel with the largest error estimate until the summed
/// estimate drops below `abs_tol` or the panel budget is exhausted. The
/// returned estimate is honest either way; callers decide what to do with a
/// non-converged result.
pub fn integrate<F>(f: F, lo: f64, hi: f64, abs_tol: f64, max_panels: usize) -> QuadResult
where
    F: Fn(f64) -> f64,
{
    integrate_split(f, &[lo, hi], abs_tol, max_panels)
}

/// As [`integrate`], but with interior break points where the integrand is
/// non-smooth; `points` must be sorted ascending and include both endpoints.
pub fn integrate_split<F>(f: F, points: &[f64], abs_tol: f64, max_panels: usize) -> QuadResult
where
    F: Fn(f64) -> f64,
{
    #[derive(Debug)]
    struct Panel {
        lo: f64,
        hi: f64,
        value: f64,
        err: f64,
    }

    assert!(points.len() >= 2, "need at least the two endpoints");
    let mut panels: Vec<Panel> = points
        .windows(2)
        .filter(|p| p[1] > p[0])
        .map(|p| {
            let (value, err) = gk15_panel(&f, p[0], p[1]);
            Panel { lo: p[0], hi: p[1], value, err }
        })
        .collect();
    if panels.is_empty() {
        return QuadResult { value: 0.0, abs_err: 0.0 };
    }

    loop {
        let total_err: f64 = panels.iter().map(|p| p.err).sum();
        if total_err <= abs_tol || panels.len() >= max_panels {
            let value = panels.iter().map(|p| p.value).sum();
            return QuadResult { value, abs_err: total_err };
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .map(|(i, _)| i)
            .expect("non-empty");
        let Panel { lo, hi, .. } = panels[worst];
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // interval exhausted at f64 resolution; keep its estimate as-is
            let value = panels.iter().map(|p| p.value).sum();
            return QuadResult { value, abs_err: total_err };
        }
        let (v1, e1) = gk15_panel(&f, lo, mid);
        let (v2, e2) = gk15_panel(&f, mid, hi);
        panels[worst] = Panel { lo, hi: mid, value: v1, err: e1 };
        panels.push(Panel { lo: mid, hi, value: v2, err: e2 });
    }
}
