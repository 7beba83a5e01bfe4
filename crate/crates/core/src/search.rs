// Copyright 2026 The klm-prep Developers
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except
// in compliance with the License. You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License
// is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
// or implied. See the License for the specific language governing permissions and limitations under
// the License.

//! One-dimensional maximization for functions that need not be unimodal.
//!
//! A uniform grid locates the best cell, then golden-section refinement runs on
//! the bracket around it. Interval endpoints are always candidates.

/// `1 / phi`, the golden-section shrink factor.
const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section maximization of `f` on `[a, b]`, assuming a single peak inside.
pub fn golden_section_max<F>(f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
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
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Grid-seeded maximum of `f` on `[a, b]` using `seeds` grid points (at least 2).
///
/// Returns `(argmax, max)`. Ties prefer the larger abscissa.
pub fn maximize<F>(f: F, a: f64, b: f64, seeds: usize, tol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    assert!(seeds >= 2, "need at least two grid points");
    if a == b {
        return (a, f(a));
    }
    let step = (b - a) / (seeds - 1) as f64;
    let xs: Vec<f64> = (0..seeds)
        .map(|k| {
            if k + 1 == seeds {
                b
            } else {
                a + step * k as f64
            }
        })
        .collect();
    let mut best = 0;
    let mut best_val = f64::NEG_INFINITY;
    for (k, &x) in xs.iter().enumerate() {
        let v = f(x);
        if v >= best_val {
            best = k;
            best_val = v;
        }
    }
    let lo = xs[best.saturating_sub(1)];
    let hi = xs[(best + 1).min(seeds - 1)];
    let (x, v) = golden_section_max(&f, lo, hi, tol);
    if v > best_val {
        (x, v)
    } else {
        (xs[best], best_val)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn golden_finds_parabola_peak() {
        let (x, v) = golden_section_max(|x| -(x - 0.3).powi(2) + 2.0, -1.0, 2.0, 1e-10);
        // a flat peak pins x only to about sqrt(machine epsilon)
        assert_abs_diff_eq!(x, 0.3, epsilon = 1e-7);
        assert_abs_diff_eq!(v, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn grid_seed_escapes_local_peak() {
        // two peaks; the right one is higher
        let f =
            |x: f64| (-(x - 1.0).powi(2) * 20.0).exp() + 1.5 * (-(x - 4.0).powi(2) * 20.0).exp();
        let (x, v) = maximize(f, 0.0, 5.0, 512, 1e-10);
        assert_abs_diff_eq!(x, 4.0, epsilon = 1e-6);
        assert_abs_diff_eq!(v, 1.5, epsilon = 1e-9);
    }

    #[test]
    fn endpoint_maximum() {
        let (x, v) = maximize(|x| x * x, -1.0, 2.0, 16, 1e-10);
        assert_eq!(x, 2.0);
        assert_eq!(v, 4.0);
        let (x, _) = maximize(|x| -x, 0.5, 0.5, 16, 1e-10);
        assert_eq!(x, 0.5);
    }
}
