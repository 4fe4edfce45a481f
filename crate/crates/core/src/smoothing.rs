//! Smooth surrogates for `|t|` and `max(t, 0)`.
//!
//! Each function returns `(value, derivative)`.

use crate::error::{invalid, Result};

fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(invalid("eps", format!("must be positive and finite, got {eps}")));
    }
    Ok(())
}

/// `sqrt(t^2 + eps)`, an upper approximation of `|t|` within `sqrt(eps)`.
pub fn smooth_abs_sqrt(t: f64, eps: f64) -> Result<(f64, f64)> {
    check_eps(eps)?;
    Ok(abs_sqrt(t, eps))
}

#[inline]
pub(crate) fn abs_sqrt(t: f64, eps: f64) -> (f64, f64) {
    let r = t.hypot(eps.sqrt());
    (r, t / r)
}

/// Huber-type surrogate: `t^2/2` on `|t| <= eps`, `eps*|t| - eps^2/2` outside.
///
/// Value and derivative are continuous at `|t| = eps`, and
/// `|value - eps*|t|| <= eps^2/2` everywhere.
pub fn smooth_abs_huber(t: f64, eps: f64) -> Result<(f64, f64)> {
    check_eps(eps)?;
    Ok(huber(t, eps))
}

#[inline]
pub(crate) fn huber(t: f64, eps: f64) -> (f64, f64) {
    if t.abs() <= eps {
        (0.5 * t * t, t)
    } else {
        (eps * t.abs() - 0.5 * eps * eps, eps * t.signum())
    }
}

/// `(t + sqrt(t^2 + eps)) / 2`, a smooth upper bound of `max(t, 0)`.
pub fn smooth_plus(t: f64, eps: f64) -> Result<(f64, f64)> {
    check_eps(eps)?;
    Ok(plus(t, eps))
}

#[inline]
pub(crate) fn plus(t: f64, eps: f64) -> (f64, f64) {
    let (r, dr) = abs_sqrt(t, eps);
    // for large negative t, t + r cancels; use eps / (r - t) instead
    let v = if t < 0.0 { 0.5 * eps / (r - t) } else { 0.5 * (t + r) };
    (v, 0.5 * (1.0 + dr))
}
