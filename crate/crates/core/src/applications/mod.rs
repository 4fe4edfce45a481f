//! Reductions of three application domains to the box-plus-balance format.

mod market;
mod portfolio;
mod svm;

pub use market::{build_market, verify_market_equilibrium, Agent, MarketModel, MarketReport};
pub use portfolio::{build_portfolio, PortfolioData, PortfolioObjective};
pub use svm::{
    build_svm_dual, svm_cap_active, svm_weights, SvmDataset, SvmDualObjective, DEFAULT_SVM_CAP,
};

/// `(value, derivative)` of `(t)_+^p / p`: exact for `p = 2`, smoothed
/// plus function for `p = 1`.
pub(crate) fn penalty(t: f64, p: u8, eps: f64) -> (f64, f64) {
    match p {
        2 => {
            let tp = t.max(0.0);
            (0.5 * tp * tp, tp)
        }
        _ => crate::smoothing::plus(t, eps),
    }
}

pub(crate) fn check_power(p: u8, eps: f64) -> crate::Result<()> {
    if p != 1 && p != 2 {
        return Err(crate::error::invalid("p", format!("must be 1 or 2, got {p}")));
    }
    if p == 1 && !(eps > 0.0) {
        return Err(crate::error::invalid("smooth_eps", "must be positive when p = 1"));
    }
    Ok(())
}
