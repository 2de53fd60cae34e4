//! Additive shape-invariance residual and the ħ-scaling structure of the
//! quantization integral.
//!
//! The identity under test relates the partner combinations at shifted
//! parameters:
//!
//! ```text
//! W²(x, a) + ħ W'(x, a) + g(a)  =  W²(x, a₊) − ħ W'(x, a₊) + g(a₊),
//! a = ℓ,  a₊ = ℓ + ħ,  g(a) = 2ωa.
//! ```
//!
//! The left-minus-right residual is evaluated in a regrouped form: the big
//! ωx/2 and ℓ/x blocks of the two sides are differenced term by term before
//! squaring can amplify them, so the report measures the identity itself and
//! not floating-point cancellation noise. Every term of the superpotential
//! carries a scale factor, which is how the mutation controls (drop or
//! perturb one term) flow through the same evaluator.

use crate::error::{Error, Result};
use crate::model::{ModelKind, PhysParams, SuperpotentialModel};
use crate::swkb::{swkb_integral_scaled_with, swkb_integral_with, SwkbConfig};

/// The parameter shift aᵢ → aᵢ₊₁ = aᵢ + ħ with its ladder function g(a) = 2ωa.
#[derive(Debug, Clone, Copy)]
pub struct ShiftRule {
    pub a_i: f64,
    pub a_next: f64,
    omega: f64,
}

impl ShiftRule {
    pub fn from_params(params: &PhysParams) -> Self {
        Self {
            a_i: params.ell(),
            a_next: params.ell() + params.hbar(),
            omega: params.omega(),
        }
    }

    pub fn g(&self, a: f64) -> f64 {
        2.0 * self.omega * a
    }

    /// g(ℓ + kħ) − g(ℓ), the energy gained over k rungs of the ladder.
    pub fn ladder_gain(&self, k: u32) -> f64 {
        let step = self.a_next - self.a_i;
        self.g(self.a_i + k as f64 * step) - self.g(self.a_i)
    }
}

/// Pointwise residual summary over a spatial grid.
#[derive(Debug, Clone)]
pub struct ResidualReport {
    pub grid: Vec<f64>,
    /// max |LHS − RHS|, energy units.
    pub max_abs_residual: f64,
    /// mean |LHS − RHS|, energy units.
    pub mean_abs_residual: f64,
    /// grid point attaining the maximum.
    pub worst_point: f64,
}

/// Spatial grid for the residual scan, log-spaced between the bounds.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
}

impl GridSpec {
    /// Default residual grid: [10⁻², 10²]·√(ħ/ω) with 400 points, covering
    /// both the 1/x-dominated and the ωx/2-dominated regions.
    pub fn default_for(params: &PhysParams) -> Self {
        let s = params.length_scale();
        Self {
            x_min: 1e-2 * s,
            x_max: 1e2 * s,
            points: 400,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.x_min > 0.0) || !(self.x_max > self.x_min) {
            return Err(Error::Grid {
                reason: "need 0 < x_min < x_max",
            });
        }
        if self.points < 2 {
            return Err(Error::Grid {
                reason: "need at least 2 points",
            });
        }
        Ok(())
    }

    fn log_points(&self) -> Vec<f64> {
        let ratio = self.x_max / self.x_min;
        (0..self.points)
            .map(|i| self.x_min * ratio.powf(i as f64 / (self.points - 1) as f64))
            .collect()
    }
}

/// Which term of the extended superpotential a mutation touches.
///
/// `W = ωx/2 − ℓ/x + 2ωxħ/(ωx² + 2ℓ − ħ) − 2ωxħ/(ωx² + 2ℓ + ħ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WTerm {
    Harmonic,
    Centrifugal,
    CorrectionMinus,
    CorrectionPlus,
}

/// A deliberate defect injected into the superpotential, used to show the
/// residual check is not vacuous.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mutation {
    Drop(WTerm),
    Scale(WTerm, f64),
}

impl Mutation {
    fn scales(&self) -> [f64; 4] {
        let mut s = [1.0; 4];
        let (term, factor) = match *self {
            Mutation::Drop(t) => (t, 0.0),
            Mutation::Scale(t, f) => (t, f),
        };
        let idx = match term {
            WTerm::Harmonic => 0,
            WTerm::Centrifugal => 1,
            WTerm::CorrectionMinus => 2,
            WTerm::CorrectionPlus => 3,
        };
        s[idx] = factor;
        s
    }
}

/// LHS − RHS of the shape-invariance identity at one point, with per-term
/// scale factors s on W = s₀(ωx/2) − s₁(ℓ/x) + s₂r₋ − s₃r₊.
///
/// Derivation of the regrouping: with S = W(ℓ) + W(ℓ₊), D = W(ℓ) − W(ℓ₊),
/// the residual is S·D + ħ(W'(ℓ) + W'(ℓ₊)) + g(ℓ) − g(ℓ₊). The harmonic
/// terms cancel inside D exactly, the centrifugal ones difference to
/// s₁·dℓ/x, and the rational terms difference analytically via
/// 1/A − 1/B = (B − A)/(AB). The product S·D then meets the ħ(ℓ + ℓ₊)/x²
/// piece of the derivative sum in a single grouped term
/// s₁(ℓ + ℓ₊)(ħ − s₁dℓ)/x², leaving only O(ħω)-sized contributions.
fn residual_at(params: &PhysParams, x: f64, s: [f64; 4]) -> f64 {
    let omega = params.omega();
    let hbar = params.hbar();
    let ell = params.ell();
    let ell_next = ell + hbar;
    let d_ell = ell_next - ell;
    let [s0, s1, s2, s3] = s;

    let q = omega * x * x;
    let num = 2.0 * omega * x * hbar;

    // rational denominators at both parameter values
    let dm_i = q + 2.0 * ell - hbar;
    let dp_i = q + 2.0 * ell + hbar;
    let dm_n = q + 2.0 * ell_next - hbar;
    let dp_n = q + 2.0 * ell_next + hbar;

    // termwise differences r(ℓ) − r(ℓ₊): small and cancellation-free
    let drm = num * 2.0 * d_ell / (dm_i * dm_n);
    let drp = num * 2.0 * d_ell / (dp_i * dp_n);
    let d_wh = s2 * drm - s3 * drp;
    let d = s1 * d_ell / x + d_wh;

    // sums that stay O(√E)-sized
    let s_sing = -s1 * (ell + ell_next) / x;
    let s_wh = s2 * (num / dm_i + num / dm_n) - s3 * (num / dp_i + num / dp_n);

    // derivative sum, with its s₁(ℓ+ℓ₊)/x² piece folded into the grouped term
    let rmp = |dm: f64, c: f64| 2.0 * omega * hbar * (c - q) / (dm * dm);
    let p_wh = s2 * (rmp(dm_i, 2.0 * ell - hbar) + rmp(dm_n, 2.0 * ell_next - hbar))
        - s3 * (rmp(dp_i, 2.0 * ell + hbar) + rmp(dp_n, 2.0 * ell_next + hbar));

    s0 * omega * x * d
        + s1 * (ell + ell_next) * (hbar - s1 * d_ell) / (x * x)
        + s_sing * d_wh
        + s_wh * d
        + hbar * (s0 * omega + p_wh)
        - 2.0 * omega * d_ell
}

fn scales_for(kind: ModelKind) -> Result<[f64; 4]> {
    match kind {
        ModelKind::ConventionalRadial => Ok([1.0, 1.0, 0.0, 0.0]),
        ModelKind::ExtendedRadial => Ok([1.0; 4]),
        ModelKind::HarmonicOscillator => Err(Error::Param {
            name: "model",
            value: 0.0,
            reason: "shape-invariance residual is defined for the radial models",
        }),
    }
}

fn run_residual(params: &PhysParams, grid: &GridSpec, scales: [f64; 4]) -> Result<ResidualReport> {
    grid.validate()?;
    let floor = crate::model::RADIAL_DOMAIN_FLOOR * params.length_scale();
    if grid.x_min < floor {
        return Err(Error::Domain {
            x: grid.x_min,
            requirement: "x >= 1e-12 * sqrt(hbar/omega)",
        });
    }
    let points = grid.log_points();
    let mut max_abs = 0.0_f64;
    let mut worst = points[0];
    let mut sum = 0.0_f64;
    for &x in &points {
        let r = residual_at(params, x, scales).abs();
        sum += r;
        if r > max_abs {
            max_abs = r;
            worst = x;
        }
    }
    Ok(ResidualReport {
        mean_abs_residual: sum / points.len() as f64,
        max_abs_residual: max_abs,
        worst_point: worst,
        grid: points,
    })
}

/// Scan the shape-invariance residual of a radial model over a grid.
pub fn shape_invariance_residual(
    model: &SuperpotentialModel,
    grid: &GridSpec,
) -> Result<ResidualReport> {
    run_residual(model.params(), grid, scales_for(model.kind())?)
}

/// Same scan with one term of the extended superpotential deliberately
/// mutated; the result should be grossly nonzero.
pub fn shape_invariance_residual_mutated(
    params: &PhysParams,
    grid: &GridSpec,
    mutation: Mutation,
) -> Result<ResidualReport> {
    // the mutation applies to the extended model's term structure
    SuperpotentialModel::new(ModelKind::ExtendedRadial, *params)?;
    run_residual(params, grid, mutation.scales())
}

/// One row of the ħ sweep: the physical integral at ℓ = ħℓ̃ and its ratio
/// I/ħ, which must not depend on ħ.
#[derive(Debug, Clone, Copy)]
pub struct ScalingRow {
    pub hbar: f64,
    pub integral: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone)]
pub struct ScalingCheck {
    pub rows: Vec<ScalingRow>,
    /// The dimensionless integral J(ℓ̃, n) computed without any ħ at all.
    pub scaled_integral: f64,
    /// max over rows of |I/ħ − J| / max(|J|, ε).
    pub max_rel_spread: f64,
}

/// Run the physical integral across a list of ħ values at fixed (ℓ̃, n) and
/// compare every I/ħ against the dimensionless J(ℓ̃, n).
pub fn hbar_scaling_check(
    kind: ModelKind,
    ell_tilde: f64,
    n: u32,
    omega: f64,
    hbar_values: &[f64],
) -> Result<ScalingCheck> {
    hbar_scaling_check_with(kind, ell_tilde, n, omega, hbar_values, &SwkbConfig::default())
}

pub fn hbar_scaling_check_with(
    kind: ModelKind,
    ell_tilde: f64,
    n: u32,
    omega: f64,
    hbar_values: &[f64],
    cfg: &SwkbConfig,
) -> Result<ScalingCheck> {
    let scaled = swkb_integral_scaled_with(kind, ell_tilde, n, cfg)?;
    let mut rows = Vec::with_capacity(hbar_values.len());
    let mut spread = 0.0_f64;
    for &hbar in hbar_values {
        let params = PhysParams::new(omega, hbar * ell_tilde, hbar)?;
        let model = SuperpotentialModel::new(kind, params)?;
        let result = swkb_integral_with(&model, n, cfg)?;
        let ratio = result.integral / hbar;
        spread = spread
            .max((ratio - scaled.integral).abs() / scaled.integral.abs().max(f64::MIN_POSITIVE));
        rows.push(ScalingRow {
            hbar,
            integral: result.integral,
            ratio,
        });
    }
    Ok(ScalingCheck {
        rows,
        scaled_integral: scaled.integral,
        max_rel_spread: spread,
    })
}

/// Energy gained over k rungs of the shift ladder, g(ℓ + kħ) − g(ℓ).
/// For the radial ladder this equals E_k = 2kħω.
pub fn verify_spectrum_shift(model: &SuperpotentialModel, k: u32) -> f64 {
    let rule = ShiftRule::from_params(model.params());
    let gain = rule.ladder_gain(k);
    debug_assert!({
        let expected = 2.0 * k as f64 * model.params().hbar() * model.params().omega();
        (gain - expected).abs() <= 1e-12 * expected.abs().max(1.0)
    });
    gain
}
