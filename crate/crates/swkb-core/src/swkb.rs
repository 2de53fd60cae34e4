//! Turning points and the quantization integral ∫√(Eₙ − W²) dx.
//!
//! The integral is evaluated between the two simple roots of Eₙ − W² after
//! the substitution x = c − r·cosθ, which absorbs the square-root endpoint
//! behavior (√ vanishes like θ against dx = r·sinθ·dθ, leaving a smooth, even
//! integrand at both ends). Two unrelated engines then integrate the same
//! transformed integrand and must agree: Romberg is canonical, tanh-sinh is
//! the cross-check.

use std::cell::Cell;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::{
    scaled_bracket, scaled_energy, EnergyLevel, ModelKind, ScaledPoint, SuperpotentialModel,
    RADIAL_DOMAIN_FLOOR,
};
use crate::quad::{romberg, tanh_sinh};
use crate::roots::{bisect, brent};

/// Tunables for the turning-point search and the quadrature.
#[derive(Debug, Clone, Copy)]
pub struct SwkbConfig {
    /// Relative tolerance for turning-point refinement.
    pub root_tol: f64,
    /// Relative tolerance target for the integral.
    pub quad_tol: f64,
    /// Points in the single-region pre-scan.
    pub scan_points: usize,
    /// Level budget for the Romberg refinement (2^levels panels at the last).
    pub max_romberg_levels: usize,
    /// Level budget for the tanh-sinh refinement.
    pub max_tanh_sinh_levels: usize,
}

impl Default for SwkbConfig {
    fn default() -> Self {
        Self {
            root_tol: 1e-13,
            quad_tol: 1e-11,
            scan_points: 4096,
            max_romberg_levels: 20,
            max_tanh_sinh_levels: 14,
        }
    }
}

/// The classically allowed interval [x_left, x_right] of one level.
///
/// `x_left == x_right` only for the degenerate n = 0 record produced by
/// [`swkb_integral`]; [`find_turning_points`] always returns a proper
/// interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurningPoints {
    pub x_left: f64,
    pub x_right: f64,
    /// |Eₙ − W²| at each refined root.
    pub bracket_residuals: (f64, f64),
}

/// One level's quantization record.
#[derive(Debug, Clone, Copy)]
pub struct SwkbResult {
    pub n: u32,
    pub energy: f64,
    pub turning: TurningPoints,
    /// Canonical integral value (Romberg scheme), action units.
    pub integral: f64,
    /// I/(πħ) − n; zero iff the condition holds exactly at this level.
    pub deviation: f64,
    /// Absolute error estimate of the canonical scheme.
    pub quad_error: f64,
    /// |Romberg − tanh-sinh| on the same integrand.
    pub scheme_agreement: f64,
}

/// Dimensionless analogue of [`SwkbResult`]: J = I/ħ as a function of
/// (ℓ̃, n) alone.
#[derive(Debug, Clone, Copy)]
pub struct ScaledSwkbResult {
    pub n: u32,
    pub ell_tilde: f64,
    pub y_left: f64,
    pub y_right: f64,
    /// J = ∫√η dỹ; the physical integral is ħ·J.
    pub integral: f64,
    /// J/π − n.
    pub deviation: f64,
    pub quad_error: f64,
    pub scheme_agreement: f64,
}

/// What the root search and quadrature act on: either the physical
/// integrand Eₙ − W²(x) or the dimensionless η(ỹ) = Eₙ/(ħω) − bracket².
enum Profile<'a> {
    Physical {
        model: &'a SuperpotentialModel,
        energy: f64,
    },
    Scaled {
        kind: ModelKind,
        ell_tilde: f64,
        energy: f64,
    },
}

impl Profile<'_> {
    fn w(&self, x: f64) -> f64 {
        match self {
            Profile::Physical { model, .. } => model
                .eval_w(x)
                .expect("turning-point probe left the model domain"),
            Profile::Scaled {
                kind, ell_tilde, ..
            } => scaled_bracket(
                *kind,
                &ScaledPoint {
                    y_tilde: x,
                    ell_tilde: *ell_tilde,
                },
            )
            .expect("turning-point probe left the model domain"),
        }
    }

    /// Eₙ − W² (or its scaled counterpart); positive in the allowed region.
    fn gap(&self, x: f64) -> f64 {
        let w = self.w(x);
        self.energy() - w * w
    }

    fn energy(&self) -> f64 {
        match self {
            Profile::Physical { energy, .. } | Profile::Scaled { energy, .. } => *energy,
        }
    }

    fn domain_min(&self) -> f64 {
        match self {
            Profile::Physical { model, .. } => model.domain_min(),
            Profile::Scaled { kind, .. } => {
                if kind.is_radial() {
                    RADIAL_DOMAIN_FLOOR
                } else {
                    f64::NEG_INFINITY
                }
            }
        }
    }

    fn length_scale(&self) -> f64 {
        match self {
            Profile::Physical { model, .. } => model.params().length_scale(),
            Profile::Scaled { .. } => 1.0,
        }
    }
}

/// Position where W crosses zero (negative to positive). All three models
/// cross exactly once.
fn w_zero(profile: &Profile<'_>, root_tol: f64) -> Result<f64> {
    let scale = profile.length_scale();
    let floor = profile.domain_min();

    // probe outward until the signs bracket the crossing
    let mut lo = if floor.is_finite() {
        (0.5 * scale).max(floor)
    } else {
        -scale
    };
    let mut expansions = 0;
    while profile.w(lo) >= 0.0 {
        lo = if floor.is_finite() {
            (0.5 * (lo - floor) + floor).max(floor * (1.0 + 1e-3))
        } else {
            lo * 2.0
        };
        expansions += 1;
        if expansions > 200 || !lo.is_finite() {
            return Err(Error::NoRoot {
                side: "superpotential zero (lower)",
                last_probe: lo,
            });
        }
    }
    let mut hi = scale;
    expansions = 0;
    while profile.w(hi) <= 0.0 {
        hi *= 2.0;
        expansions += 1;
        if expansions > 200 || !hi.is_finite() {
            return Err(Error::NoRoot {
                side: "superpotential zero (upper)",
                last_probe: hi,
            });
        }
    }
    Ok(bisect(|x| profile.w(x), lo, hi, root_tol))
}

/// Expand geometrically away from `start` (where the gap is positive) in the
/// direction given by `right`, until the gap turns negative.
fn expand_bracket(
    profile: &Profile<'_>,
    start: f64,
    right: bool,
    side: &'static str,
) -> Result<(f64, f64)> {
    let scale = profile.length_scale();
    let floor = profile.domain_min();
    let mut inside = start;
    let mut step = 0.25 * scale;

    for _ in 0..200 {
        let probe = if right {
            inside + step
        } else if floor.is_finite() {
            // shrink toward the domain floor where the pole dominates
            ((inside - floor) * 0.5 + floor).max(floor * (1.0 + 1e-6))
        } else {
            inside - step
        };
        if !probe.is_finite() {
            break;
        }
        if profile.gap(probe) < 0.0 {
            return Ok(if right {
                (inside, probe)
            } else {
                (probe, inside)
            });
        }
        inside = probe;
        step *= 2.0;
        if !right && floor.is_finite() && (probe - floor) <= floor.abs() * 1e-6 {
            break;
        }
    }
    Err(Error::NoRoot {
        side,
        last_probe: inside,
    })
}

/// Count maximal positive runs of `f` on a uniform grid over [lo, hi].
pub(crate) fn count_allowed_regions<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    points: usize,
) -> usize {
    let points = points.max(16);
    let mut regions = 0usize;
    let mut in_region = false;
    for i in 0..points {
        let x = lo + (hi - lo) * i as f64 / (points - 1) as f64;
        let positive = f(x) > 0.0;
        if positive && !in_region {
            regions += 1;
        }
        in_region = positive;
    }
    regions
}

fn locate_turning_points(
    profile: &Profile<'_>,
    n: u32,
    cfg: &SwkbConfig,
) -> Result<TurningPoints> {
    if n == 0 {
        return Err(Error::Param {
            name: "n",
            value: 0.0,
            reason: "level 0 has a zero-width allowed region; handled by the integral shortcut",
        });
    }
    let x0 = w_zero(profile, cfg.root_tol)?;
    debug_assert!(profile.gap(x0) > 0.0);

    let (left_lo, left_hi) = expand_bracket(profile, x0, false, "left turning point")?;
    let (right_lo, right_hi) = expand_bracket(profile, x0, true, "right turning point")?;

    let (x_left, res_left) = brent(|x| profile.gap(x), left_lo, left_hi, cfg.root_tol);
    let (x_right, res_right) = brent(|x| profile.gap(x), right_lo, right_hi, cfg.root_tol);

    // single-interval policy: scan a slightly enlarged window and refuse to
    // integrate over disjoint allowed regions
    let floor = profile.domain_min();
    let scan_lo = if x_left > 0.0 {
        (0.9 * x_left).max(if floor.is_finite() { floor } else { x_left })
    } else {
        1.1 * x_left
    };
    let scan_hi = 1.1 * x_right;
    let regions = count_allowed_regions(|x| profile.gap(x), scan_lo, scan_hi, cfg.scan_points);
    if regions != 1 {
        return Err(Error::MultipleRegions { pairs: regions });
    }

    Ok(TurningPoints {
        x_left,
        x_right,
        bracket_residuals: (res_left, res_right),
    })
}

/// Integrate √(gap) over [x_left, x_right] with both engines.
/// Returns (canonical value, error estimate, cross-scheme disagreement).
fn integrate_gap(
    profile: &Profile<'_>,
    tp: &TurningPoints,
    cfg: &SwkbConfig,
) -> Result<(f64, f64, f64)> {
    let c = 0.5 * (tp.x_left + tp.x_right);
    let r = 0.5 * (tp.x_right - tp.x_left);
    let energy = profile.energy();
    let neg_floor = 1e-14 * energy;
    let violation: Cell<Option<(f64, f64)>> = Cell::new(None);

    let transformed = |theta: f64| -> f64 {
        let s = theta.sin();
        if s == 0.0 {
            return 0.0;
        }
        let x = c - r * theta.cos();
        let gap = profile.gap(x);
        if gap < 0.0 {
            if gap < -neg_floor {
                violation.set(Some((x, gap)));
            }
            return 0.0;
        }
        gap.sqrt() * r * s
    };

    let a = romberg(&transformed, 0.0, PI, cfg.quad_tol, cfg.max_romberg_levels).map_err(|f| {
        Error::QuadratureDivergence {
            tol: f.tol,
            levels: f.levels,
            estimate: f.estimate,
            delta: f.delta,
        }
    })?;
    let b = tanh_sinh(&transformed, 0.0, PI, cfg.quad_tol, cfg.max_tanh_sinh_levels).map_err(
        |f| Error::QuadratureDivergence {
            tol: f.tol,
            levels: f.levels,
            estimate: f.estimate,
            delta: f.delta,
        },
    )?;
    if let Some((x, value)) = violation.get() {
        return Err(Error::Negativity {
            x,
            value,
            floor: neg_floor,
        });
    }
    Ok((a.value, a.error_estimate, (a.value - b.value).abs()))
}

/// Turning points of Eₙ − W²(x) for a level with n ≥ 1.
pub fn find_turning_points(
    model: &SuperpotentialModel,
    level: &EnergyLevel,
) -> Result<TurningPoints> {
    find_turning_points_with(model, level, &SwkbConfig::default())
}

pub fn find_turning_points_with(
    model: &SuperpotentialModel,
    level: &EnergyLevel,
    cfg: &SwkbConfig,
) -> Result<TurningPoints> {
    let profile = Profile::Physical {
        model,
        energy: level.energy,
    };
    locate_turning_points(&profile, level.n, cfg)
}

/// The quantization record for level n: I = ∫√(Eₙ − W²) dx, its deviation
/// Δₙ = I/(πħ) − n, and the two-scheme diagnostics.
///
/// n = 0 short-circuits to I = 0 exactly: E₀ = 0 and W² ≥ 0 leave a
/// zero-width allowed region at the zero of W.
pub fn swkb_integral(model: &SuperpotentialModel, n: u32) -> Result<SwkbResult> {
    swkb_integral_with(model, n, &SwkbConfig::default())
}

pub fn swkb_integral_with(
    model: &SuperpotentialModel,
    n: u32,
    cfg: &SwkbConfig,
) -> Result<SwkbResult> {
    let level = model.energy(n);
    let profile = Profile::Physical {
        model,
        energy: level.energy,
    };
    if n == 0 {
        let x0 = w_zero(&profile, cfg.root_tol)?;
        let w = profile.w(x0);
        return Ok(SwkbResult {
            n: 0,
            energy: level.energy,
            turning: TurningPoints {
                x_left: x0,
                x_right: x0,
                bracket_residuals: (w * w, w * w),
            },
            integral: 0.0,
            deviation: 0.0,
            quad_error: 0.0,
            scheme_agreement: 0.0,
        });
    }

    let turning = locate_turning_points(&profile, n, cfg)?;
    let (integral, quad_error, scheme_agreement) = integrate_gap(&profile, &turning, cfg)?;
    let deviation = integral / (PI * model.params().hbar()) - n as f64;
    Ok(SwkbResult {
        n,
        energy: level.energy,
        turning,
        integral,
        deviation: if deviation == 0.0 { 0.0 } else { deviation },
        quad_error,
        scheme_agreement,
    })
}

/// Dimensionless form of the integral: J(ℓ̃, n) = ∫√η dỹ between the roots
/// of η. No ω or ħ enters the computation; the physical integral is ħ·J.
pub fn swkb_integral_scaled(kind: ModelKind, ell_tilde: f64, n: u32) -> Result<ScaledSwkbResult> {
    swkb_integral_scaled_with(kind, ell_tilde, n, &SwkbConfig::default())
}

pub fn swkb_integral_scaled_with(
    kind: ModelKind,
    ell_tilde: f64,
    n: u32,
    cfg: &SwkbConfig,
) -> Result<ScaledSwkbResult> {
    if kind.is_radial() && !(ell_tilde > 0.0) {
        return Err(Error::Param {
            name: "ell_tilde",
            value: ell_tilde,
            reason: "must be > 0",
        });
    }
    if kind == ModelKind::ExtendedRadial && ell_tilde <= 0.5 {
        return Err(Error::Param {
            name: "ell_tilde",
            value: ell_tilde,
            reason: "extended model requires ell_tilde > 1/2",
        });
    }
    let profile = Profile::Scaled {
        kind,
        ell_tilde,
        energy: scaled_energy(kind, n),
    };
    if n == 0 {
        let y0 = w_zero(&profile, cfg.root_tol)?;
        return Ok(ScaledSwkbResult {
            n: 0,
            ell_tilde,
            y_left: y0,
            y_right: y0,
            integral: 0.0,
            deviation: 0.0,
            quad_error: 0.0,
            scheme_agreement: 0.0,
        });
    }
    let turning = locate_turning_points(&profile, n, cfg)?;
    let (integral, quad_error, scheme_agreement) = integrate_gap(&profile, &turning, cfg)?;
    let deviation = integral / PI - n as f64;
    Ok(ScaledSwkbResult {
        n,
        ell_tilde,
        y_left: turning.x_left,
        y_right: turning.x_right,
        integral,
        deviation: if deviation == 0.0 { 0.0 } else { deviation },
        quad_error,
        scheme_agreement,
    })
}

/// Tanh-sinh-only reference evaluation of the integral, used to regenerate
/// the pinned fixture table. Never consulted by the main path.
pub fn reference_integral(model: &SuperpotentialModel, n: u32, rel_tol: f64) -> Result<f64> {
    if n == 0 {
        return Ok(0.0);
    }
    let cfg = SwkbConfig {
        quad_tol: rel_tol,
        max_tanh_sinh_levels: 16,
        ..SwkbConfig::default()
    };
    let level = model.energy(n);
    let profile = Profile::Physical {
        model,
        energy: level.energy,
    };
    let tp = locate_turning_points(&profile, n, &cfg)?;
    let c = 0.5 * (tp.x_left + tp.x_right);
    let r = 0.5 * (tp.x_right - tp.x_left);
    let transformed = |theta: f64| -> f64 {
        let s = theta.sin();
        if s == 0.0 {
            return 0.0;
        }
        let gap = profile.gap(c - r * theta.cos());
        gap.max(0.0).sqrt() * r * s
    };
    let out = tanh_sinh(
        &transformed,
        0.0,
        PI,
        cfg.quad_tol,
        cfg.max_tanh_sinh_levels,
    )
    .map_err(|f| Error::QuadratureDivergence {
        tol: f.tol,
        levels: f.levels,
        estimate: f.estimate,
        delta: f.delta,
    })?;
    Ok(out.value)
}

/// Closed-form integral for the oscillator baseline: ∫√(A − Bx²) dx = πA/(2√B)
/// with A = Eₙ, B = ω²/4.
pub fn closed_form_harmonic(omega: f64, hbar: f64, n: u32) -> f64 {
    let a = n as f64 * hbar * omega;
    let b = 0.25 * omega * omega;
    PI * a / (2.0 * b.sqrt())
}

/// Closed-form integral for the conventional radial model:
/// ∫√(A − Bx² − C/x²) dx = π(A/(4√B) − √C/2) with A = Eₙ + ωℓ, B = ω²/4,
/// C = ℓ².
pub fn closed_form_conventional(omega: f64, ell: f64, hbar: f64, n: u32) -> f64 {
    let a = 2.0 * n as f64 * hbar * omega + omega * ell;
    let b = 0.25 * omega * omega;
    let c = ell * ell;
    PI * (a / (4.0 * b.sqrt()) - c.sqrt() / 2.0)
}
