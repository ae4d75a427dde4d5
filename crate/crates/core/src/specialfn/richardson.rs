//! Richardson extrapolation on ratio-2 ladders.

use crate::error::{Error, Result};

/// Number of difference quotients used by [`extract_linear_coefficient`].
pub const DEFAULT_LEVELS: usize = 4;

/// Recovers `c1` from `g(t) = c0 + c1 t + c2 t^2 + ...`, sampling only `t > 0`.
///
/// The ladder is `t_k = t_max / 2^k` for `k = 0..=K` with `K` the largest
/// value `<= DEFAULT_LEVELS` keeping `t_K >= t_min`. Neighbouring samples give
/// `D(h) = (g(2h) - g(h)) / h = c1 + 3 c2 h + 7 c3 h^2 + ...`, and a ratio-2
/// Richardson table removes the `h, h^2, ...` terms. Polynomials of degree
/// up to `K` are reproduced to round-off.
pub fn extract_linear_coefficient<G: Fn(f64) -> f64>(g: G, t_min: f64, t_max: f64) -> Result<f64> {
    extract_linear_coefficient_with_floor(g, t_min, t_max, 0.0)
}

/// Like [`extract_linear_coefficient`] for a `g` formed by subtracting terms
/// of size up to `cancelled`. Their rounding error, not the samples' size,
/// then sets the level below which the Richardson table is not required to
/// contract.
pub fn extract_linear_coefficient_with_floor<G: Fn(f64) -> f64>(
    g: G,
    t_min: f64,
    t_max: f64,
    cancelled: f64,
) -> Result<f64> {
    if !(t_min > 0.0) || !(t_max > t_min) || !t_max.is_finite() {
        return Err(Error::domain(format!(
            "need 0 < t_min < t_max, got t_min={t_min}, t_max={t_max}"
        )));
    }
    let span = (t_max / t_min).log2().floor() as usize;
    let levels = span.min(DEFAULT_LEVELS);
    if levels < 2 {
        return Err(Error::domain(format!(
            "t_max/t_min = {} leaves fewer than two ladder levels",
            t_max / t_min
        )));
    }
    let samples: Vec<f64> = (0..=levels)
        .map(|k| g(t_max / f64::powi(2.0, k as i32)))
        .collect();
    if samples.iter().any(|v| !v.is_finite()) {
        return Err(Error::domain("g is not finite on the ladder"));
    }
    // D_k uses the pair (t_k, t_{k+1}), h = t_{k+1}; larger k means smaller h.
    let diffs: Vec<f64> = (0..levels)
        .map(|k| {
            let h = t_max / f64::powi(2.0, k as i32 + 1);
            (samples[k] - samples[k + 1]) / h
        })
        .collect();
    let largest = samples.iter().fold(cancelled.abs(), |m, v| m.max(v.abs()));
    let scale = largest / (t_max / f64::powi(2.0, levels as i32));
    richardson(&diffs, scale)
}

/// Extrapolates `F(t) = F0 + f1 t + f2 t^2 + ...` to `t = 0` from samples on an
/// arbitrary set of distinct positive abscissae (Neville's scheme). With a
/// ratio-2 ladder this is the classic Richardson table.
pub fn extrapolate_to_zero(ts: &[f64], values: &[f64]) -> Result<f64> {
    if ts.len() != values.len() || ts.len() < 3 {
        return Err(Error::domain("need at least three (t, value) samples"));
    }
    if ts.iter().any(|t| !(*t > 0.0)) {
        return Err(Error::domain("abscissae must be positive"));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::domain("samples must be finite"));
    }
    // Sort from largest t to smallest so the diagonal improves monotonically.
    let mut order: Vec<usize> = (0..ts.len()).collect();
    order.sort_by(|&i, &j| ts[j].total_cmp(&ts[i]));
    if order.windows(2).any(|w| ts[w[0]] == ts[w[1]]) {
        return Err(Error::domain("abscissae must be distinct"));
    }
    let t: Vec<f64> = order.iter().map(|&i| ts[i]).collect();
    let mut p: Vec<f64> = order.iter().map(|&i| values[i]).collect();
    let n = t.len();
    let mut diagonal = vec![p[0]];
    // After pass m, p[k] holds the interpolant through points k-m..=k at 0.
    for m in 1..n {
        for k in (m..n).rev() {
            p[k] = (t[k - m] * p[k] - t[k] * p[k - 1]) / (t[k - m] - t[k]);
        }
        diagonal.push(p[m]);
    }
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    check_contraction(&diagonal, scale)
}

fn richardson(first_column: &[f64], scale: f64) -> Result<f64> {
    let n = first_column.len();
    let mut row = first_column.to_vec();
    let mut diagonal = vec![row[0]];
    for m in 1..n {
        let factor = f64::powi(2.0, m as i32);
        for k in (m..n).rev() {
            row[k] = (factor * row[k] - row[k - 1]) / (factor - 1.0);
        }
        diagonal.push(row[m]);
    }
    check_contraction(&diagonal, scale)
}

fn check_contraction(diagonal: &[f64], scale: f64) -> Result<f64> {
    let best = *diagonal.last().expect("non-empty");
    let n = diagonal.len();
    if n >= 3 {
        let last = (diagonal[n - 1] - diagonal[n - 2]).abs();
        let prev = (diagonal[n - 2] - diagonal[n - 3]).abs();
        let noise = 1e3 * f64::EPSILON * scale.max(best.abs());
        // Growth alone also happens for exact polynomials whose top
        // coefficient dominates; a table carrying no information has
        // corrections as large as the difference quotients of the samples.
        if last > noise && last > prev && last > 0.5 * scale {
            return Err(Error::accuracy(
                format!("Richardson estimates are not contracting ({prev:e} then {last:e})"),
                best,
            ));
        }
    }
    Ok(best)
}
