use std::collections::BinaryHeap;

use num_complex::Complex64;

use super::{Series, SeriesValue};
use crate::{Error, Result};

/// Trapezoid rule over grid indices `from..=to` of a sampled series.
pub fn trapezoid_integrate<T: SeriesValue>(series: &Series<T>, from: usize, to: usize) -> Result<T> {
    let n_steps = series.grid().n_steps();
    if from > to || to > n_steps {
        return Err(Error::Contract(format!(
            "trapezoid range {from}..={to} invalid for a grid of {n_steps} steps"
        )));
    }
    if from == to {
        return Ok(T::zero());
    }
    let v = series.values();
    let interior = v[from + 1..to].iter().fold(T::zero(), |acc, &x| acc + x);
    Ok((interior + (v[from] + v[to]) * 0.5) * series.grid().step())
}

/// Composite Simpson rule with `n` panels (`n` rounded up to even).
pub fn simpson<F>(f: F, a: f64, b: f64, n: usize) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let n = n.max(2) + n % 2;
    let h = (b - a) / n as f64;
    let mut sum = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += f(a + i as f64 * h) * w;
    }
    sum * (h / 3.0)
}

/// Tolerances for [`gauss_kronrod_adaptive`].
#[derive(Debug, Clone, Copy)]
pub struct QuadratureOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Initial number of equal panels; oscillatory integrands want about one
    /// panel per half period.
    pub initial_panels: usize,
    /// Refinement stops once this many panels exist.
    pub max_panels: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-15,
            rel_tol: 1e-12,
            initial_panels: 16,
            max_panels: 200_000,
        }
    }
}

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

fn kronrod15<F>(f: &F, a: f64, b: f64) -> (Complex64, f64)
where
    F: Fn(f64) -> Complex64,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (i, (&x, &wk)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kronrod += pair * wk;
        if i % 2 == 1 {
            gauss += pair * WG[i / 2];
        }
    }
    let kronrod = kronrod * half;
    let gauss = gauss * half;
    (kronrod, (kronrod - gauss).norm())
}

struct Panel {
    lo: f64,
    hi: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Globally adaptive Gauss-Kronrod (7/15) quadrature of a complex integrand.
///
/// The panel with the largest error estimate is bisected until the summed
/// estimate drops below `max(abs_tol, rel_tol * |I|)` or `max_panels` is hit.
pub fn gauss_kronrod_adaptive<F>(f: F, a: f64, b: f64, opts: QuadratureOptions) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    if a == b {
        return Complex64::new(0.0, 0.0);
    }
    let panels = opts.initial_panels.max(1);
    let width = (b - a) / panels as f64;
    let panel = |lo: f64, hi: f64| {
        let (value, error) = kronrod15(&f, lo, hi);
        Panel {
            lo,
            hi,
            value,
            error,
        }
    };
    let mut heap: BinaryHeap<Panel> = (0..panels)
        .map(|i| {
            let lo = a + i as f64 * width;
            let hi = if i + 1 == panels { b } else { lo + width };
            panel(lo, hi)
        })
        .collect();

    let mut total: Complex64 = heap.iter().map(|p| p.value).sum();
    let mut error: f64 = heap.iter().map(|p| p.error).sum();
    while heap.len() < opts.max_panels {
        if error <= opts.abs_tol.max(opts.rel_tol * total.norm()) {
            break;
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            heap.push(worst);
            break;
        }
        let left = panel(worst.lo, mid);
        let right = panel(mid, worst.hi);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // re-sum to drop the drift of the running updates
    heap.iter().map(|p| p.value).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{RealSeries, TimeGrid};

    fn series(n: usize, f: impl Fn(f64) -> f64) -> RealSeries {
        let grid = TimeGrid::new(0.0, 1.0, n).unwrap();
        let values = grid.times().map(f).collect();
        RealSeries::new(grid, values).unwrap()
    }

    #[test]
    fn trapezoid_constant_and_linear() {
        let grid = TimeGrid::new(0.0, 1.0, 7).unwrap();
        let ones = Series::new(grid, vec![Complex64::new(1.0, 0.0); 8]).unwrap();
        let r = trapezoid_integrate(&ones, 0, 7).unwrap();
        assert!((r - Complex64::new(1.0, 0.0)).norm() < 1e-15);

        let lin = series(100, |t| t);
        assert!((trapezoid_integrate(&lin, 0, 100).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn trapezoid_quadratic_against_antiderivative() {
        let sq = series(100, |t| t * t);
        let r = trapezoid_integrate(&sq, 0, 100).unwrap();
        assert!((r - 1.0 / 3.0).abs() < 1e-4);
    }

    #[test]
    fn trapezoid_rejects_bad_ranges() {
        let lin = series(10, |t| t);
        assert!(trapezoid_integrate(&lin, 5, 4).is_err());
        assert!(trapezoid_integrate(&lin, 0, 11).is_err());
        assert_eq!(trapezoid_integrate(&lin, 3, 3).unwrap(), 0.0);
    }

    #[test]
    fn adaptive_matches_oscillatory_closed_form() {
        // int_0^10 exp(-i w 7) dw = (1 - exp(-70 i)) / (7 i)
        let got = gauss_kronrod_adaptive(
            |w| Complex64::new(0.0, -7.0 * w).exp(),
            0.0,
            10.0,
            QuadratureOptions::default(),
        );
        let want = (Complex64::new(1.0, 0.0) - Complex64::new(0.0, -70.0).exp())
            / Complex64::new(0.0, 7.0);
        assert!((got - want).norm() < 1e-12);
    }

    #[test]
    fn simpson_is_exact_for_cubics() {
        let got = simpson(|x| Complex64::new(x * x * x, 0.0), 0.0, 2.0, 10);
        assert!((got.re - 4.0).abs() < 1e-13);
    }
}
