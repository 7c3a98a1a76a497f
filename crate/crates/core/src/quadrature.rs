//! Adaptive Gauss-Kronrod (7/15) integration.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Maximum bisection depth of any subinterval.
pub const MAX_DEPTH: u32 = 60;
const MAX_INTERVALS: usize = 50_000;

// Kronrod nodes and weights, kept at their published precision.
#[allow(clippy::excessive_precision)]
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
#[allow(clippy::excessive_precision)]
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
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub fn both(tol: f64) -> Self {
        Tolerance { abs: tol, rel: tol }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    depth: u32,
    at_floor: bool,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F>(f: &mut F, a: f64, b: f64, depth: u32) -> Result<Piece>
where
    F: FnMut(f64) -> Result<f64>,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut eval = |t: f64| -> Result<f64> {
        let v = f(t)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::domain(format!("integrand is not finite at {t}")))
        }
    };
    let fc = eval(c)?;
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    let mut abs = WGK[7] * fc.abs();
    for i in 0..7 {
        let dx = h * XGK[i];
        let f1 = eval(c - dx)?;
        let f2 = eval(c + dx)?;
        k += WGK[i] * (f1 + f2);
        abs += WGK[i] * (f1.abs() + f2.abs());
        if i % 2 == 1 {
            g += WG[i / 2] * (f1 + f2);
        }
    }
    let value = k * h;
    let mut error = ((k - g) * h).abs();
    // below this level the difference is rounding, not truncation
    let floor = 50.0 * f64::EPSILON * abs * h.abs();
    let at_floor = error <= floor;
    if at_floor {
        error = floor;
    }
    Ok(Piece {
        a,
        b,
        value,
        error,
        depth,
        at_floor,
    })
}

/// Adaptive integral of a fallible integrand over `[a, b]`.
///
/// Stops when the summed error estimate is at most
/// `max(tol.abs, tol.rel * |I|)`. A subinterval that would need more than
/// [`MAX_DEPTH`] halvings yields [`Error::NonConvergence`], unless its
/// remaining error is at the rounding floor.
pub fn try_integrate<F>(mut f: F, a: f64, b: f64, tol: Tolerance) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::domain(format!("integration limits must be finite, got [{a}, {b}]")));
    }
    if b < a {
        return Err(Error::domain(format!("integration limits reversed: [{a}, {b}]")));
    }
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            error: 0.0,
            evaluations: 0,
            intervals: 0,
        });
    }
    let mut heap = BinaryHeap::new();
    let mut settled: Vec<Piece> = Vec::new();
    let mut evaluations = 15;
    let first = kronrod(&mut f, a, b, 0)?;
    let (mut value, mut error) = (first.value, first.error);
    let place = |p: Piece, heap: &mut BinaryHeap<Piece>, settled: &mut Vec<Piece>| {
        if p.at_floor {
            settled.push(p);
        } else {
            heap.push(p);
        }
    };
    place(first, &mut heap, &mut settled);
    let mut steps = 0usize;
    loop {
        steps += 1;
        if steps.is_multiple_of(512) {
            // drop accumulated drift of the running sums
            value = heap.iter().chain(settled.iter()).map(|p| p.value).sum();
            error = heap.iter().chain(settled.iter()).map(|p| p.error).sum();
        }
        let target = tol.abs.max(tol.rel * value.abs());
        if error <= target || heap.is_empty() {
            let value: f64 = heap.iter().chain(settled.iter()).map(|p| p.value).sum();
            let error: f64 = heap.iter().chain(settled.iter()).map(|p| p.error).sum();
            return Ok(QuadResult {
                value,
                error,
                evaluations,
                intervals: heap.len() + settled.len(),
            });
        }
        let worst = heap.pop().expect("heap checked nonempty");
        if worst.depth >= MAX_DEPTH || heap.len() + settled.len() >= MAX_INTERVALS {
            return Err(Error::NonConvergence(format!(
                "quadrature on [{a}, {b}]: error {error:e} above {target:e} at [{}, {}]",
                worst.a, worst.b
            )));
        }
        let mid = 0.5 * (worst.a + worst.b);
        if !(worst.a < mid && mid < worst.b) {
            settled.push(worst);
            continue;
        }
        let left = kronrod(&mut f, worst.a, mid, worst.depth + 1)?;
        let right = kronrod(&mut f, mid, worst.b, worst.depth + 1)?;
        evaluations += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        place(left, &mut heap, &mut settled);
        place(right, &mut heap, &mut settled);
    }
}

/// Adaptive integral of `f` over `[a, b]` with absolute and relative
/// tolerance both `tol`.
pub fn quadrature<F>(mut f: F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    Ok(try_integrate(|t| Ok(f(t)), a, b, Tolerance::both(tol))?.value)
}
