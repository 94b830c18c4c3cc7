//! Independent oracles shared by the integration suites. These never call
//! the closed-form code paths they are used to check.

/// Brute-force infimum of k(s) = A − B s^{q−p} + C s^{r−p} over s > 0:
/// dense logarithmic scan on a dominance-bounded window followed by
/// golden-section refinement of the best bracket.
pub fn brute_force_inf_k(a: f64, b: f64, c: f64, p: f64, q: f64, r: f64) -> f64 {
    let k = |s: f64| a - b * s.powf(q - p) + c * s.powf(r - p);
    // Beyond s_hi the positive top term dominates the negative one.
    let s_hi = 4.0 * (2.0 * b / c).powf(1.0 / (r - q)).max(1e-12);
    let s_lo = s_hi * 1e-12;
    let n = 4096;
    let ratio = (s_hi / s_lo).ln() / n as f64;
    let mut best_i = 0;
    let mut best = f64::INFINITY;
    let grid: Vec<f64> = (0..=n).map(|i| s_lo * (ratio * i as f64).exp()).collect();
    for (i, &s) in grid.iter().enumerate() {
        let v = k(s);
        if v < best {
            best = v;
            best_i = i;
        }
    }
    // Golden-section on the bracketing pair of grid cells.
    let mut lo = grid[best_i.saturating_sub(1)];
    let mut hi = grid[(best_i + 1).min(n)];
    let phi = 0.618_033_988_749_894_9;
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let mut f1 = k(x1);
    let mut f2 = k(x2);
    for _ in 0..200 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = k(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = k(x2);
        }
        if hi - lo <= 1e-14 * hi {
            break;
        }
    }
    best.min(f1).min(f2)
}

/// Oracle for the threshold constant: with A = 0 and B = C = 1 the
/// infimum of k equals −d_*(p, q, r) after normalization.
pub fn brute_force_d_star(p: f64, q: f64, r: f64) -> f64 {
    -brute_force_inf_k(0.0, 1.0, 1.0, p, q, r)
}

/// Least-squares slope of y against x.
pub fn regression_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    num / den
}
