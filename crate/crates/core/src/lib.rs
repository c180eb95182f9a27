#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod evaluation;
pub mod gamma_kernel;
pub mod inequalities;
pub mod quadrature;
pub mod xbeta;
pub mod xhyper;

pub use error::{Error, Result};
pub use evaluation::Evaluation;
pub use gamma_kernel::{
    classical_beta, coeff_f_delta, coeff_f_delta_log_derivative, digamma, log_beta, log_gamma,
    pochhammer, PochhammerTerm,
};
pub use inequalities::{
    gruss_functional, Check, CheckConfig, Direction, InequalityCheck, Inputs, MonotonicityCheck,
    Verdict,
};
pub use quadrature::{
    integrate_unit, integrate_unit_log, integrate_unit_split, QuadratureConfig, QuadratureResult,
};
pub use xbeta::{ext_beta, ext_beta_sigma_derivative, ExtBetaPoint};
pub use xhyper::{
    echf, echf_integral, echf_reflect, echf_series, echf_term, echf_x_derivative, eghf,
    eghf_integral, eghf_series, eghf_term, HypergeomParams, Route, SeriesControl,
};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/quadrature.md")]
    mod quadrature {}
    #[doc = include_str!("../../../book/src/gamma.md")]
    mod gamma {}
    #[doc = include_str!("../../../book/src/extended-beta.md")]
    mod extended_beta {}
    #[doc = include_str!("../../../book/src/hypergeometric.md")]
    mod hypergeometric {}
    #[doc = include_str!("../../../book/src/inequalities.md")]
    mod inequalities {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
