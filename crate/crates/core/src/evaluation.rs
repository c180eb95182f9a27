use crate::quadrature::QuadratureResult;

/// A function value with its error estimate and convergence flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    pub error_estimate: f64,
    /// Integrand evaluations spent, summed over every quadrature involved.
    pub evaluations: usize,
    pub converged: bool,
}

impl Evaluation {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            error_estimate: 0.0,
            evaluations: 0,
            converged: true,
        }
    }

    pub fn scaled(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            error_estimate: self.error_estimate * factor.abs(),
            ..self
        }
    }

    /// The value, or `None` when it did not converge.
    pub fn converged_value(&self) -> Option<f64> {
        self.converged.then_some(self.value)
    }
}

impl From<QuadratureResult> for Evaluation {
    fn from(r: QuadratureResult) -> Self {
        Self {
            value: r.value,
            error_estimate: r.error_estimate,
            evaluations: r.evaluations,
            converged: r.converged,
        }
    }
}
