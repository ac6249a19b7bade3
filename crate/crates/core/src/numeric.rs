//! One-dimensional search primitives shared by the Young-function and norm code.
//!
//! Everything here works on monotone predicates or unimodal objectives, which is
//! all the Orlicz machinery ever needs: generalized inverses and gauge norms are
//! boundaries of monotone sets, conjugates and Amemiya norms are extrema of
//! concave/convex scalar maps.

/// Golden ratio conjugate, `(sqrt(5) - 1) / 2`.
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Shrinks `[lo, hi]` around the boundary of a monotone predicate.
///
/// `below(lo)` must be true and `below(hi)` false. On return `below(lo)` still
/// holds, `below(hi)` still fails, and `hi - lo <= rel_tol * |hi|` unless the
/// floating-point midpoint stopped moving first.
pub fn bisect_boundary<F>(mut below: F, mut lo: f64, mut hi: f64, rel_tol: f64, max_iter: usize) -> (f64, f64)
where
    F: FnMut(f64) -> bool,
{
    for _ in 0..max_iter {
        if hi - lo <= rel_tol * hi.abs() {
            break;
        }
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        if below(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Result of a golden-section run: the best abscissa seen and its value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub x: f64,
    pub value: f64,
    pub iterations: usize,
}

/// Golden-section minimization of a unimodal `f` on `[a, b]`.
///
/// Ties (including two `+inf` probes) move the bracket to the right, which is
/// the correct side for objectives that are infinite on a left prefix.
pub fn golden_min<F>(mut f: F, mut a: f64, mut b: f64, abs_tol: f64, max_iter: usize) -> Extremum
where
    F: FnMut(f64) -> f64,
{
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let fa = f(a);
    let fb = f(b);

    let mut best = Extremum { x: a, value: fa, iterations: 0 };
    let consider = |x: f64, v: f64, best: &mut Extremum| {
        if v < best.value || best.value.is_nan() {
            best.x = x;
            best.value = v;
        }
    };
    consider(b, fb, &mut best);
    consider(c, fc, &mut best);
    consider(d, fd, &mut best);

    let mut iterations = 0;
    while (b - a).abs() > abs_tol && iterations < max_iter {
        iterations += 1;
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
            consider(c, fc, &mut best);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
            consider(d, fd, &mut best);
        }
    }
    best.iterations = iterations;
    best
}

/// Golden-section maximization; thin wrapper over [`golden_min`].
pub fn golden_max<F>(mut f: F, a: f64, b: f64, abs_tol: f64, max_iter: usize) -> Extremum
where
    F: FnMut(f64) -> f64,
{
    let mut e = golden_min(|x| -f(x), a, b, abs_tol, max_iter);
    e.value = -e.value;
    e
}

/// `points` log-spaced abscissae covering `[lo, hi]`, endpoints included.
pub fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi >= lo, "log_grid needs 0 < lo <= hi");
    if points <= 1 {
        return vec![lo];
    }
    let (l0, l1) = (lo.ln(), hi.ln());
    let step = (l1 - l0) / (points - 1) as f64;
    (0..points)
        .map(|i| match i {
            0 => lo,
            i if i == points - 1 => hi,
            i => (l0 + step * i as f64).exp(),
        })
        .collect()
}

/// Relative difference `|a - b| / max(|a|, |b|)`, zero when both vanish.
pub fn rel_diff(a: f64, b: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let scale = a.abs().max(b.abs());
    (a - b).abs() / scale
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_finds_sqrt_two() {
        let (lo, hi) = bisect_boundary(|x| x * x <= 2.0, 0.0, 2.0, 1e-15, 200);
        assert!(lo * lo <= 2.0 && hi * hi > 2.0);
        assert!((lo - std::f64::consts::SQRT_2).abs() < 1e-14);
    }

    #[test]
    fn golden_min_quadratic() {
        let e = golden_min(|x| (x - 1.25).powi(2) + 3.0, -10.0, 10.0, 1e-12, 500);
        assert!((e.x - 1.25).abs() < 1e-6);
        assert!((e.value - 3.0).abs() < 1e-12);
    }

    #[test]
    fn golden_min_moves_right_through_infinite_prefix() {
        let e = golden_min(|x| if x < 2.0 { f64::INFINITY } else { (x - 3.0).powi(2) }, 0.0, 10.0, 1e-10, 500);
        assert!((e.x - 3.0).abs() < 1e-5, "x = {}", e.x);
    }

    #[test]
    fn log_grid_endpoints_exact() {
        let g = log_grid(1e-6, 1e3, 1000);
        assert_eq!(g.len(), 1000);
        assert_eq!(g[0], 1e-6);
        assert_eq!(g[999], 1e3);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }
}
