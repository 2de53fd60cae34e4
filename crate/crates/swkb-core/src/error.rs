use thiserror::Error;

/// Crate-wide error type. Every failure mode is explicit; no operation
/// silently returns a NaN or an infinity in place of a diagnosis.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A physical parameter violates its validity constraint.
    #[error("invalid parameter {name}: {reason} (got {value})")]
    Param {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// Evaluation requested outside the model domain.
    #[error("position {x} outside model domain (requires {requirement})")]
    Domain { x: f64, requirement: &'static str },

    /// The classically allowed set is not a single interval, so the
    /// quantization integral over one `[x_left, x_right]` is ill-defined.
    #[error("detected {pairs} disjoint classically allowed regions; expected exactly one")]
    MultipleRegions { pairs: usize },

    /// Bracket expansion for a root search ran off the end of its budget.
    #[error("no sign change found while expanding bracket {side} (last probe {last_probe})")]
    NoRoot {
        side: &'static str,
        last_probe: f64,
    },

    /// The quadrature refinement sequence did not reach the requested
    /// tolerance within its level budget.
    #[error("quadrature failed to reach relative tolerance {tol} in {levels} levels (last estimate {estimate}, last delta {delta})")]
    QuadratureDivergence {
        tol: f64,
        levels: usize,
        estimate: f64,
        delta: f64,
    },

    /// The integrand went negative inside the allowed interval by more than
    /// roundoff allows; the turning points are wrong.
    #[error("integrand negative beyond roundoff inside the allowed interval: {value} at x = {x} (floor {floor})")]
    Negativity { x: f64, value: f64, floor: f64 },

    /// Energy bisection in the eigensolver did not converge.
    #[error("eigenvalue bisection did not converge: bracket width {width} after {iterations} iterations")]
    NoConvergence { width: f64, iterations: usize },

    /// The eigenfunction has not decayed at the integration box edge; the
    /// box does not contain the state.
    #[error("eigenfunction not negligible at the box boundary (relative amplitude {leak}); enlarge the box")]
    BoxTooSmall { leak: f64 },

    /// A grid specification is unusable.
    #[error("invalid grid: {reason}")]
    Grid { reason: &'static str },
}

pub type Result<T> = std::result::Result<T, Error>;
