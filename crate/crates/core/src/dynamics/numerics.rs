//! Quadrature and differentiation on uniform grids.

use crate::{Error, Result};

/// Cumulative integral `F[i] = ∫_0^{t_i} f` of uniformly spaced samples.
///
/// Even nodes use composite Simpson. Each odd node adds the single interval
/// `[t_{2k}, t_{2k+1}]` to the Simpson value at `t_{2k}` with a four-point
/// (cubic) rule, so every node carries a fourth-order global error.
pub fn cumulative_simpson(values: &[f64], h: f64) -> Result<Vec<f64>> {
    let n = values.len();
    if n < 3 || n % 2 == 0 {
        return Err(Error::InvalidGrid(format!(
            "cumulative Simpson needs an odd number of at least 3 points, got {n}"
        )));
    }
    let f = values;
    let mut out = vec![0.0; n];
    for k in (2..n).step_by(2) {
        out[k] = out[k - 2] + h / 3.0 * (f[k - 2] + 4.0 * f[k - 1] + f[k]);
    }
    for k in (1..n).step_by(2) {
        let left = k - 1;
        let piece = if n < 4 {
            h / 12.0 * (5.0 * f[0] + 8.0 * f[1] - f[2])
        } else if left == 0 {
            h / 24.0 * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3])
        } else if k + 1 < n {
            h / 24.0 * (-f[left - 1] + 13.0 * f[left] + 13.0 * f[k] - f[k + 1])
        } else {
            h / 24.0 * (f[left - 2] - 5.0 * f[left - 1] + 19.0 * f[left] + 9.0 * f[k])
        };
        out[k] = out[left] + piece;
    }
    Ok(out)
}

/// First derivative of uniformly spaced samples.
///
/// Five-point central stencil on `2..n-2`, three-point central at the
/// second and second-to-last nodes, and second-order one-sided formulas at
/// both ends.
pub fn derivative(values: &[f64], h: f64) -> Vec<f64> {
    let n = values.len();
    let f = values;
    let mut out = vec![0.0; n];
    if n < 3 {
        if n == 2 {
            let d = (f[1] - f[0]) / h;
            out = vec![d, d];
        }
        return out;
    }
    out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    out[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    for i in 1..n - 1 {
        out[i] = if i >= 2 && i + 2 < n {
            (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h)
        } else {
            (f[i + 1] - f[i - 1]) / (2.0 * h)
        };
    }
    out
}

/// Indices where the five-point central stencil applies.
pub fn interior(n: usize) -> std::ops::Range<usize> {
    if n < 5 {
        0..0
    } else {
        2..n - 2
    }
}
