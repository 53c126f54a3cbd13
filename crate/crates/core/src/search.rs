//! Shared 1-D maximization: a coarse uniform scan that brackets the
//! global maximum, followed by golden-section refinement of the bracket.

/// Outcome of [`maximize`].
pub(crate) struct ScanMax {
    /// Refined abscissa of the maximum.
    pub x: f64,
    /// Objective value at `x`.
    pub value: f64,
    /// Coarse-scan max − min, a flatness diagnostic for the caller.
    pub spread: f64,
    /// True when the coarse argmax landed on the last grid sample.
    pub at_upper: bool,
}

/// Scans `[lo, hi]` with `samples` uniform points, then refines the best
/// sample's bracketing cells by golden-section search down to `tol`.
pub(crate) fn maximize<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    samples: usize,
    tol: f64,
) -> ScanMax {
    debug_assert!(samples >= 2 && hi > lo);
    let step = (hi - lo) / (samples - 1) as f64;
    let mut best_i = 0;
    let mut best = f64::NEG_INFINITY;
    let mut worst = f64::INFINITY;
    for i in 0..samples {
        let y = f(lo + step * i as f64);
        if y > best {
            best = y;
            best_i = i;
        }
        if y < worst {
            worst = y;
        }
    }
    let a = lo + step * best_i.saturating_sub(1) as f64;
    let b = lo + step * (best_i + 1).min(samples - 1) as f64;
    let refined = if b > a { golden(&f, a, b, tol) } else { a };
    // Keep the coarse sample when refinement does not beat it, so a
    // maximum at the window edge reports the edge itself.
    let value_refined = f(refined);
    let (mut x, mut value) = if best > value_refined {
        (lo + step * best_i as f64, best)
    } else {
        (refined, value_refined)
    };
    // Parabolic polish at a spacing where the objective's variation
    // dominates evaluation noise; golden-section alone can wander by
    // ~√(noise/curvature) when the peak is very flat. The spacing also
    // has to stay small because any cubic skew in the objective biases
    // the vertex by O(h²).
    let h = 0.05 * step;
    if x - h > lo && x + h < hi {
        let (f_lo, f_hi) = (f(x - h), f(x + h));
        let denom = 2.0 * (f_lo - 2.0 * value + f_hi);
        let offset = h * (f_lo - f_hi) / denom;
        if denom < 0.0 && offset.is_finite() && offset.abs() <= h {
            let polished = x + offset;
            x = polished;
            value = f(polished).max(value);
        }
    }
    ScanMax {
        x,
        value,
        spread: best - worst,
        at_upper: best_i == samples - 1,
    }
}

/// Golden-section maximization on a bracket known to contain the peak.
fn golden<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a) > tol {
        if fc >= fd {
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
    0.5 * (a + b)
}
