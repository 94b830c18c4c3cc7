//! Finite sums of real powers `Σ cᵢ s^{eᵢ}` on the positive half-line.
//!
//! Every sign and zero question about the auxiliary functions of this crate
//! (G, V, L, K and their derivatives, and level sets such as V(s) − ω)
//! reduces to locating the positive zeros of such a sum. A sum with k
//! distinct exponents has at most k − 1 positive zeros; we find all of them
//! by recursing on the derivative (after factoring out the lowest power the
//! derivative has one term fewer) and bisecting each monotone piece between
//! consecutive critical points. No zero can be missed this way, which the
//! classification logic relies on.

/// Relative tolerance used for root refinement.
const ROOT_RTOL: f64 = 1e-14;

/// A sum of terms `c * s^e` with strictly increasing exponents and nonzero
/// coefficients, evaluated for `s > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSum {
    terms: Vec<(f64, f64)>, // (coefficient, exponent)
}

impl PowerSum {
    /// Builds a sum from arbitrary `(coefficient, exponent)` pairs. Terms
    /// with equal exponents are merged; terms with zero (or fully
    /// cancelled) coefficients are dropped.
    pub fn new(terms: impl IntoIterator<Item = (f64, f64)>) -> Self {
        let mut terms: Vec<(f64, f64)> = terms.into_iter().filter(|&(c, _)| c != 0.0).collect();
        terms.sort_by(|a, b| a.1.total_cmp(&b.1));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(terms.len());
        for (c, e) in terms {
            match merged.last_mut() {
                Some(last) if last.1 == e => last.0 += c,
                _ => merged.push((c, e)),
            }
        }
        merged.retain(|&(c, _)| c != 0.0);
        PowerSum { terms: merged }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(f64, f64)] {
        &self.terms
    }

    /// Sign of the sum as s → 0⁺ (sign of the lowest-order coefficient).
    pub fn sign_at_zero(&self) -> f64 {
        self.terms.first().map_or(0.0, |t| t.0.signum())
    }

    /// Sign of the sum as s → +∞ (sign of the highest-order coefficient).
    pub fn sign_at_infinity(&self) -> f64 {
        self.terms.last().map_or(0.0, |t| t.0.signum())
    }

    pub fn eval(&self, s: f64) -> f64 {
        self.terms.iter().map(|&(c, e)| c * s.powf(e)).sum()
    }

    /// Termwise derivative d/ds.
    pub fn derivative(&self) -> PowerSum {
        PowerSum::new(self.terms.iter().map(|&(c, e)| (c * e, e - 1.0)))
    }

    /// Scales every coefficient.
    pub fn scaled(&self, factor: f64) -> PowerSum {
        PowerSum::new(self.terms.iter().map(|&(c, e)| (c * factor, e)))
    }

    /// Adds a single term.
    pub fn plus_term(&self, coeff: f64, exponent: f64) -> PowerSum {
        let mut terms = self.terms.clone();
        terms.push((coeff, exponent));
        PowerSum::new(terms)
    }

    /// Same zeros, lowest exponent shifted to 0 (divide by s^{e₁}; legal
    /// for s > 0).
    fn reduced(&self) -> PowerSum {
        let e0 = match self.terms.first() {
            Some(&(_, e)) => e,
            None => return self.clone(),
        };
        PowerSum {
            terms: self.terms.iter().map(|&(c, e)| (c, e - e0)).collect(),
        }
    }

    /// A radius below which the constant term of a reduced sum dominates,
    /// so the sign near zero is settled.
    fn lower_guard(&self) -> f64 {
        let c0 = self.terms[0].0.abs();
        let k = self.terms.len() as f64;
        let mut s_lo = f64::INFINITY;
        for &(c, e) in &self.terms[1..] {
            // |c| s^e < c0 / (2k)  ⟺  s < (c0 / (2k|c|))^{1/e}
            let bound = (c0 / (2.0 * k * c.abs())).powf(1.0 / e);
            s_lo = s_lo.min(bound);
        }
        s_lo
    }

    /// A radius beyond which the top term dominates, so the sign at
    /// infinity is settled.
    fn upper_guard(&self) -> f64 {
        let (ck, ek) = *self.terms.last().unwrap();
        let k = self.terms.len() as f64;
        let mut s_hi = 0.0f64;
        for &(c, e) in &self.terms[..self.terms.len() - 1] {
            let bound = (2.0 * k * c.abs() / ck.abs()).powf(1.0 / (ek - e));
            s_hi = s_hi.max(bound);
        }
        s_hi.max(f64::MIN_POSITIVE)
    }

    /// Radii `(lo, hi)` outside of which the sign of the sum matches its
    /// asymptotic sign at the corresponding end.
    pub fn sign_window(&self) -> (f64, f64) {
        let f = self.reduced();
        if f.terms.len() < 2 {
            return (1.0, 1.0);
        }
        (f.lower_guard(), f.upper_guard())
    }

    /// All positive zeros, ascending. Tangential zeros (where the sum
    /// touches zero at a critical point) are reported once.
    pub fn positive_roots(&self) -> Vec<f64> {
        let f = self.reduced();
        match f.terms.len() {
            0 | 1 => Vec::new(),
            2 => {
                let (c0, _) = f.terms[0];
                let (c1, e1) = f.terms[1];
                if c0.signum() == c1.signum() {
                    Vec::new()
                } else {
                    vec![(-c0 / c1).powf(1.0 / e1)]
                }
            }
            _ => f.roots_by_monotone_pieces(),
        }
    }

    fn roots_by_monotone_pieces(&self) -> Vec<f64> {
        let crit = self.derivative().positive_roots();

        let mut lo = self.lower_guard();
        let mut hi = self.upper_guard();
        if let Some(&first) = crit.first() {
            lo = lo.min(first / 2.0);
        }
        if let Some(&last) = crit.last() {
            hi = hi.max(2.0 * last);
        }

        // Breakpoints delimiting monotone pieces.
        let mut pts = Vec::with_capacity(crit.len() + 2);
        pts.push(lo);
        pts.extend_from_slice(&crit);
        pts.push(hi);

        let scale_at = |s: f64| -> f64 {
            self.terms
                .iter()
                .map(|&(c, e)| (c * s.powf(e)).abs())
                .sum::<f64>()
                .max(f64::MIN_POSITIVE)
        };

        let nearly_zero = |s: f64, f: f64| f == 0.0 || f.abs() <= 1e-13 * scale_at(s);
        let mut roots = Vec::new();
        for win in pts.windows(2) {
            let (a, b) = (win[0], win[1]);
            let (fa, fb) = (self.eval(a), self.eval(b));
            // Tangency at a monotone-piece boundary (critical point).
            if nearly_zero(a, fa) {
                roots.push(a);
                continue;
            }
            if nearly_zero(b, fb) {
                // Cancellation noise near a touching zero must not be
                // bisected; the point is handled as the next window's left
                // endpoint (or below for the final one).
                continue;
            }
            if fa.signum() != fb.signum() {
                roots.push(self.bisect(a, b));
            }
        }
        let b_end = *pts.last().unwrap();
        if nearly_zero(b_end, self.eval(b_end)) {
            roots.push(b_end);
        }

        roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-7 * b.abs());
        roots
    }

    /// Bisection in log coordinates followed by a few Newton polish steps.
    fn bisect(&self, mut a: f64, mut b: f64) -> f64 {
        let fa = self.eval(a);
        debug_assert!(fa.signum() != self.eval(b).signum());
        let neg_left = fa < 0.0;
        for _ in 0..200 {
            let mid = (0.5 * (a.ln() + b.ln())).exp();
            if !(a < mid && mid < b) {
                break;
            }
            let fm = self.eval(mid);
            if (fm < 0.0) == neg_left {
                a = mid;
            } else {
                b = mid;
            }
            if b - a <= ROOT_RTOL * b {
                break;
            }
        }
        let mut x = 0.5 * (a + b);
        let deriv = self.derivative();
        for _ in 0..4 {
            let d = deriv.eval(x);
            if d == 0.0 {
                break;
            }
            let step = self.eval(x) / d;
            let xn = x - step;
            if xn > a && xn < b {
                x = xn;
            } else {
                break;
            }
        }
        x
    }

    /// Least positive zero, if any.
    pub fn first_positive_root(&self) -> Option<f64> {
        self.positive_roots().into_iter().next()
    }

    /// Infimum over (0, ∞), assessed through critical points and the two
    /// endpoint limits. Returns the infimum value (possibly −∞) and the
    /// location of the best interior candidate when one exists.
    pub fn infimum(&self) -> (f64, Option<f64>) {
        if self.terms.is_empty() {
            return (0.0, None);
        }
        let limit_of = |&(c, e): &(f64, f64), toward_zero: bool| -> f64 {
            let vanishes = if toward_zero { e > 0.0 } else { e < 0.0 };
            if vanishes {
                0.0
            } else if e == 0.0 {
                c
            } else if c > 0.0 {
                f64::INFINITY
            } else {
                f64::NEG_INFINITY
            }
        };
        let lim0 = limit_of(self.terms.first().unwrap(), true);
        let lim_inf = limit_of(self.terms.last().unwrap(), false);
        let mut inf = lim0.min(lim_inf);
        if inf == f64::NEG_INFINITY {
            return (inf, None);
        }
        let mut where_min = None;
        for c in self.derivative().positive_roots() {
            let v = self.eval(c);
            if v < inf {
                inf = v;
                where_min = Some(c);
            }
        }
        (inf, where_min)
    }
}
