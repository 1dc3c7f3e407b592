use crate::error::{Error, Result};
use crate::math::fabs;

const MAX_ROOT_ITERATIONS: usize = 100;
const MAX_GOLDEN_ITERATIONS: usize = 200;
const GOLDEN_TOLERANCE: f64 = 1e-9;

/// An interval with the function values at its ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    /// Evaluates `f` at both ends and requires a sign change.
    pub fn new<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> Result<Self> {
        check_interval(lo, hi)?;
        let bracket = Self {
            lo,
            hi,
            f_lo: f(lo),
            f_hi: f(hi),
        };
        if !(bracket.f_lo * bracket.f_hi <= 0.0) {
            return Err(Error::NoSignChange {
                lo,
                hi,
                f_lo: bracket.f_lo,
                f_hi: bracket.f_hi,
            });
        }
        Ok(bracket)
    }
}

fn check_interval(lo: f64, hi: f64) -> Result<()> {
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidInterval { lo, hi });
    }
    Ok(())
}

/// Brent's method: inverse quadratic / secant steps guarded by bisection.
///
/// Returns once the bracket is narrower than `tol` (or `f` hits zero).
pub fn find_root<F: Fn(f64) -> f64>(f: F, bracket: Bracket, tol: f64) -> Result<f64> {
    let Bracket {
        lo: mut a,
        hi: mut b,
        f_lo: mut fa,
        f_hi: mut fb,
    } = bracket;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    // bracket width to beat by half within three steps, else bisect
    let mut reference_width = fabs(b - a);
    let mut since_halving = 0;

    for _ in 0..MAX_ROOT_ITERATIONS {
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fabs(fc) < fabs(fb) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * fabs(b) + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if fabs(xm) <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        let width = fabs(c - b);
        since_halving += 1;
        let stalled = since_halving > 2 && width > 0.5 * reference_width;
        if width <= 0.5 * reference_width || stalled {
            reference_width = width;
            since_halving = 0;
        }
        if !stalled && fabs(e) >= tol1 && fabs(fa) > fabs(fb) {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = fabs(p);
            let min1 = 3.0 * xm * q - fabs(tol1 * q);
            let min2 = fabs(e * q);
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if fabs(d) > tol1 {
            d
        } else if xm > 0.0 {
            tol1
        } else {
            -tol1
        };
        fb = f(b);
    }
    Err(Error::NoConvergence {
        iterations: MAX_ROOT_ITERATIONS,
    })
}

/// Where two curves meet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossing {
    pub t: f64,
    /// Common value `a(t) = b(t)`.
    pub value: f64,
}

/// Locates `t` in `[lo, hi]` with `a(t) = b(t)`.
pub fn find_crossing<A, B>(a: A, b: B, lo: f64, hi: f64, tol: f64) -> Result<Crossing>
where
    A: Fn(f64) -> f64,
    B: Fn(f64) -> f64,
{
    let diff = |t: f64| a(t) - b(t);
    let bracket = Bracket::new(diff, lo, hi)?;
    if bracket.f_lo == 0.0 && bracket.f_hi == 0.0 && diff(0.5 * (lo + hi)) == 0.0 {
        return Err(Error::DegenerateCrossing { lo, hi });
    }
    let t = find_root(diff, bracket, tol)?;
    Ok(Crossing { t, value: a(t) })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum {
    pub x: f64,
    pub value: f64,
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
pub fn maximize_scalar<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> Result<Maximum> {
    check_interval(lo, hi)?;
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let target = GOLDEN_TOLERANCE * (hi - lo);
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..MAX_GOLDEN_ITERATIONS {
        if b - a < target {
            let x = 0.5 * (a + b);
            return Ok(Maximum { x, value: f(x) });
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    Err(Error::NoConvergence {
        iterations: MAX_GOLDEN_ITERATIONS,
    })
}
