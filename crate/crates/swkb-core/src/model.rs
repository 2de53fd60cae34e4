//! Superpotential models and their dimensionless scaled forms.
//!
//! Three closed-world models are supported:
//!
//! * `HarmonicOscillator` — W = ωx/2 on the whole real line, ladder Eₙ = nħω.
//!   Included as an analytically trivial exactness control.
//! * `ConventionalRadial` — W = ωx/2 − ℓ/x on x > 0, ladder Eₙ = 2nħω.
//! * `ExtendedRadial` — the conventional radial superpotential plus a rational
//!   two-fraction correction, isospectral with the conventional one and
//!   additively shape invariant, but not SWKB-exact.
//!
//! Units are carried explicitly: ω is an angular frequency (1/time), ℓ and ħ
//! are actions, positions are lengths, W has units of √energy (factorization
//! convention 2m = 1). ħ is an ordinary runtime parameter, never a baked-in
//! constant.

use crate::error::{Error, Result};

/// Physical parameter set (ω, ℓ, ħ), all strictly positive and finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysParams {
    omega: f64,
    ell: f64,
    hbar: f64,
}

impl PhysParams {
    pub fn new(omega: f64, ell: f64, hbar: f64) -> Result<Self> {
        let check = |name: &'static str, value: f64| -> Result<()> {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::Param {
                    name,
                    value,
                    reason: "must be finite and > 0",
                });
            }
            Ok(())
        };
        check("omega", omega)?;
        check("ell", ell)?;
        check("hbar", hbar)?;
        Ok(Self { omega, ell, hbar })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn ell(&self) -> f64 {
        self.ell
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Oscillator length √(ħ/ω); the natural length unit of the problem.
    pub fn length_scale(&self) -> f64 {
        (self.hbar / self.omega).sqrt()
    }

    /// Energy quantum ħω; the natural energy unit of the problem.
    pub fn energy_scale(&self) -> f64 {
        self.hbar * self.omega
    }

    /// Dimensionless shape parameter ℓ̃ = ℓ/ħ.
    pub fn ell_tilde(&self) -> f64 {
        self.ell / self.hbar
    }

    /// Same parameters with ℓ replaced (used by the shape-invariance shift).
    pub fn with_ell(&self, ell: f64) -> Result<Self> {
        Self::new(self.omega, ell, self.hbar)
    }
}

/// Which superpotential to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    HarmonicOscillator,
    ConventionalRadial,
    ExtendedRadial,
}

impl ModelKind {
    pub fn is_radial(&self) -> bool {
        !matches!(self, ModelKind::HarmonicOscillator)
    }

    /// Stable lowercase name, used by the CLI and report files.
    pub fn name(&self) -> &'static str {
        match self {
            ModelKind::HarmonicOscillator => "harmonic-oscillator",
            ModelKind::ConventionalRadial => "conventional-radial",
            ModelKind::ExtendedRadial => "extended-radial",
        }
    }
}

impl std::fmt::Display for ModelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A superpotential model: a kind plus validated parameters.
///
/// Validity is enforced at construction. In particular the extended model
/// requires 2ℓ/ħ > 1 so both rational denominators ωx² + 2ℓ ∓ ħ stay
/// strictly positive on the whole half line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperpotentialModel {
    kind: ModelKind,
    params: PhysParams,
}

/// One rung of the energy ladder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevel {
    pub n: u32,
    pub energy: f64,
}

/// A position in the dimensionless variables ỹ = √(ω/ħ)·x, ℓ̃ = ℓ/ħ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledPoint {
    pub y_tilde: f64,
    pub ell_tilde: f64,
}

/// Relative domain floor for the radial models, in units of √(ħ/ω).
/// Below it the 1/x pole is an error, never a silent infinity.
pub const RADIAL_DOMAIN_FLOOR: f64 = 1e-12;

impl SuperpotentialModel {
    pub fn new(kind: ModelKind, params: PhysParams) -> Result<Self> {
        if kind == ModelKind::ExtendedRadial && 2.0 * params.ell / params.hbar <= 1.0 {
            return Err(Error::Param {
                name: "ell",
                value: params.ell,
                reason: "extended model requires 2*ell/hbar > 1",
            });
        }
        Ok(Self { kind, params })
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn params(&self) -> &PhysParams {
        &self.params
    }

    /// Smallest admissible position. The radial models exclude the origin.
    pub fn domain_min(&self) -> f64 {
        match self.kind {
            ModelKind::HarmonicOscillator => f64::NEG_INFINITY,
            _ => RADIAL_DOMAIN_FLOOR * self.params.length_scale(),
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        x.is_finite() && x >= self.domain_min()
    }

    fn check_domain(&self, x: f64) -> Result<()> {
        if !self.contains(x) {
            return Err(Error::Domain {
                x,
                requirement: match self.kind {
                    ModelKind::HarmonicOscillator => "finite x",
                    _ => "x >= 1e-12 * sqrt(hbar/omega)",
                },
            });
        }
        Ok(())
    }

    /// The superpotential W(x), units √energy.
    pub fn eval_w(&self, x: f64) -> Result<f64> {
        self.check_domain(x)?;
        let PhysParams { omega, ell, hbar } = self.params;
        let w0 = match self.kind {
            ModelKind::HarmonicOscillator => return Ok(0.5 * omega * x),
            _ => 0.5 * omega * x - ell / x,
        };
        match self.kind {
            ModelKind::ConventionalRadial => Ok(w0),
            ModelKind::ExtendedRadial => {
                let q = omega * x * x;
                let num = 2.0 * omega * x * hbar;
                Ok(w0 + num / (q + 2.0 * ell - hbar) - num / (q + 2.0 * ell + hbar))
            }
            ModelKind::HarmonicOscillator => unreachable!(),
        }
    }

    /// Closed-form dW/dx, units √energy / length. Hand-differentiated;
    /// finite differences are reserved for the test oracles.
    pub fn eval_w_prime(&self, x: f64) -> Result<f64> {
        self.check_domain(x)?;
        let PhysParams { omega, ell, hbar } = self.params;
        match self.kind {
            ModelKind::HarmonicOscillator => Ok(0.5 * omega),
            ModelKind::ConventionalRadial => Ok(0.5 * omega + ell / (x * x)),
            ModelKind::ExtendedRadial => {
                let q = omega * x * x;
                let cm = 2.0 * ell - hbar;
                let cp = 2.0 * ell + hbar;
                let dm = q + cm;
                let dp = q + cp;
                // d/dx [2ωħx/(ωx²+c)] = 2ωħ(c − ωx²)/(ωx²+c)²
                Ok(0.5 * omega + ell / (x * x) + 2.0 * omega * hbar * (cm - q) / (dm * dm)
                    - 2.0 * omega * hbar * (cp - q) / (dp * dp))
            }
        }
    }

    /// The n-th energy level: Eₙ = 2nħω for the radial models, nħω for the
    /// oscillator baseline. E₀ = 0 in both conventions (unbroken SUSY).
    pub fn energy(&self, n: u32) -> EnergyLevel {
        let step = match self.kind {
            ModelKind::HarmonicOscillator => 1.0,
            _ => 2.0,
        };
        EnergyLevel {
            n,
            energy: step * n as f64 * self.params.hbar * self.params.omega,
        }
    }
}

/// Map a physical position to the dimensionless pair (ỹ, ℓ̃).
pub fn to_scaled(params: &PhysParams, x: f64) -> Result<ScaledPoint> {
    if !x.is_finite() {
        return Err(Error::Domain {
            x,
            requirement: "finite x",
        });
    }
    Ok(ScaledPoint {
        y_tilde: (params.omega / params.hbar).sqrt() * x,
        ell_tilde: params.ell / params.hbar,
    })
}

fn check_scaled(kind: ModelKind, p: &ScaledPoint) -> Result<()> {
    if kind.is_radial() && p.y_tilde <= 0.0 {
        return Err(Error::Domain {
            x: p.y_tilde,
            requirement: "y_tilde > 0",
        });
    }
    if !p.y_tilde.is_finite() {
        return Err(Error::Domain {
            x: p.y_tilde,
            requirement: "finite y_tilde",
        });
    }
    match kind {
        ModelKind::ExtendedRadial if p.ell_tilde <= 0.5 => Err(Error::Param {
            name: "ell_tilde",
            value: p.ell_tilde,
            reason: "extended model requires ell_tilde > 1/2",
        }),
        ModelKind::ConventionalRadial if p.ell_tilde <= 0.0 => Err(Error::Param {
            name: "ell_tilde",
            value: p.ell_tilde,
            reason: "must be > 0",
        }),
        _ => Ok(()),
    }
}

/// Dimensionless superpotential bracket: W = √(ħω) · bracket(ỹ, ℓ̃).
pub fn scaled_bracket(kind: ModelKind, p: &ScaledPoint) -> Result<f64> {
    check_scaled(kind, p)?;
    let y = p.y_tilde;
    let lt = p.ell_tilde;
    Ok(match kind {
        ModelKind::HarmonicOscillator => 0.5 * y,
        ModelKind::ConventionalRadial => 0.5 * y - lt / y,
        ModelKind::ExtendedRadial => {
            let q = y * y;
            0.5 * y - lt / y + 2.0 * y / (q + 2.0 * lt - 1.0) - 2.0 * y / (q + 2.0 * lt + 1.0)
        }
    })
}

/// Energy level in units of ħω: 2n for the radial models, n for the baseline.
pub fn scaled_energy(kind: ModelKind, n: u32) -> f64 {
    match kind {
        ModelKind::HarmonicOscillator => n as f64,
        _ => 2.0 * n as f64,
    }
}

/// Dimensionless quantization integrand η = Eₙ/(ħω) − bracket².
///
/// May be negative; callers clip integration to the classically allowed
/// region. The identity Eₙ − W²(x) = ħω · η(ỹ, ℓ̃) ties it to the physical
/// integrand.
pub fn scaled_eta(kind: ModelKind, p: &ScaledPoint, n: u32) -> Result<f64> {
    let b = scaled_bracket(kind, p)?;
    Ok(scaled_energy(kind, n) - b * b)
}

/// Dimensionless quantum number ℓ′ with ℓ = ħ(ℓ′ + 1).
pub fn quantum_number_map(ell: f64, hbar: f64) -> Result<f64> {
    if !hbar.is_finite() || hbar <= 0.0 {
        return Err(Error::Param {
            name: "hbar",
            value: hbar,
            reason: "must be finite and > 0",
        });
    }
    Ok(ell / hbar - 1.0)
}

/// Inverse of [`quantum_number_map`]: ℓ = ħ(ℓ′ + 1).
pub fn ell_from_quantum_number(ell_prime: f64, hbar: f64) -> Result<f64> {
    if !hbar.is_finite() || hbar <= 0.0 {
        return Err(Error::Param {
            name: "hbar",
            value: hbar,
            reason: "must be finite and > 0",
        });
    }
    Ok(hbar * (ell_prime + 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn model(kind: ModelKind, omega: f64, ell: f64, hbar: f64) -> SuperpotentialModel {
        SuperpotentialModel::new(kind, PhysParams::new(omega, ell, hbar).unwrap()).unwrap()
    }

    #[test]
    fn params_reject_nonpositive() {
        assert!(PhysParams::new(0.0, 1.0, 1.0).is_err());
        assert!(PhysParams::new(1.0, -2.0, 1.0).is_err());
        assert!(PhysParams::new(1.0, 1.0, f64::NAN).is_err());
        assert!(PhysParams::new(1.0, 1.0, f64::INFINITY).is_err());
    }

    #[test]
    fn extended_bound_enforced_at_construction() {
        let p = PhysParams::new(1.0, 0.5, 1.0).unwrap();
        assert!(SuperpotentialModel::new(ModelKind::ExtendedRadial, p).is_err());
        // the same parameters are fine for the conventional model
        assert!(SuperpotentialModel::new(ModelKind::ConventionalRadial, p).is_ok());
        // strictly above the bound is accepted
        let p = PhysParams::new(1.0, 0.5000001, 1.0).unwrap();
        assert!(SuperpotentialModel::new(ModelKind::ExtendedRadial, p).is_ok());
    }

    #[test]
    fn conventional_w_root() {
        // W₀ vanishes at x = √(2ℓ/ω)
        let m = model(ModelKind::ConventionalRadial, 1.0, 1.0, 1.0);
        assert_abs_diff_eq!(m.eval_w(2.0_f64.sqrt()).unwrap(), 0.0, epsilon = 1e-15);
        let m = model(ModelKind::ConventionalRadial, 4.0, 3.0, 0.7);
        let x0 = (2.0 * 3.0 / 4.0_f64).sqrt();
        assert_abs_diff_eq!(m.eval_w(x0).unwrap(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn extended_w_at_sqrt2() {
        // conventional part cancels there, leaving 2√2/3 − 2√2/5 = 4√2/15
        let m = model(ModelKind::ExtendedRadial, 1.0, 1.0, 1.0);
        let expected = 4.0 * 2.0_f64.sqrt() / 15.0;
        assert_relative_eq!(
            m.eval_w(2.0_f64.sqrt()).unwrap(),
            expected,
            max_relative = 1e-15
        );
    }

    #[test]
    fn extended_w_diverges_like_centrifugal_term_near_origin() {
        let m = model(ModelKind::ExtendedRadial, 1.0, 1.0, 1.0);
        for &x in &[1e-5, 1e-7, 1e-9] {
            let w = m.eval_w(x).unwrap();
            assert!(w < 0.0);
            // x·W → −ℓ as x → 0⁺
            assert_relative_eq!(x * w, -1.0, max_relative = 1e-8);
        }
    }

    #[test]
    fn domain_errors_are_explicit() {
        let m = model(ModelKind::ConventionalRadial, 1.0, 1.0, 1.0);
        assert!(matches!(m.eval_w(0.0), Err(Error::Domain { .. })));
        assert!(matches!(m.eval_w(-1.0), Err(Error::Domain { .. })));
        assert!(matches!(m.eval_w(1e-14), Err(Error::Domain { .. })));
        assert!(matches!(m.eval_w(f64::NAN), Err(Error::Domain { .. })));
        let ho = model(ModelKind::HarmonicOscillator, 1.0, 1.0, 1.0);
        assert!(ho.eval_w(-5.0).is_ok());
        assert!(ho.eval_w(f64::INFINITY).is_err());
    }

    #[test]
    fn w_prime_closed_forms() {
        let ho = model(ModelKind::HarmonicOscillator, 1.0, 1.0, 1.0);
        assert_eq!(ho.eval_w_prime(-3.7).unwrap(), 0.5);
        let conv = model(ModelKind::ConventionalRadial, 1.0, 1.0, 1.0);
        assert_relative_eq!(conv.eval_w_prime(1.0).unwrap(), 1.5, max_relative = 1e-15);
        let ext = model(ModelKind::ExtendedRadial, 1.0, 1.0, 1.0);
        assert_relative_eq!(ext.eval_w_prime(1.0).unwrap(), 1.25, max_relative = 1e-15);
    }

    #[test]
    fn w_prime_matches_central_differences() {
        // central difference with step h has O(h²) error; h = 1e-5 gives
        // ~1e-10 truncation, so 1e-8 relative agreement is a safe gate.
        let mut rng = StdRng::seed_from_u64(0x5eed);
        for _ in 0..200 {
            let omega = rng.gen_range(0.3..3.0);
            let hbar = rng.gen_range(0.3..3.0);
            let ell = hbar * rng.gen_range(0.6..8.0);
            for kind in [
                ModelKind::HarmonicOscillator,
                ModelKind::ConventionalRadial,
                ModelKind::ExtendedRadial,
            ] {
                let m = model(kind, omega, ell, hbar);
                let s = m.params().length_scale();
                let x = s * rng.gen_range(0.4..4.0);
                let h = 1e-5 * s;
                let fd = (m.eval_w(x + h).unwrap() - m.eval_w(x - h).unwrap()) / (2.0 * h);
                assert_relative_eq!(m.eval_w_prime(x).unwrap(), fd, max_relative = 1e-8);
            }
        }
    }

    #[test]
    fn energy_ladder() {
        let conv = model(ModelKind::ConventionalRadial, 1.0, 1.0, 1.0);
        assert_eq!(conv.energy(3).energy, 6.0);
        assert_eq!(conv.energy(0).energy, 0.0);
        let ext = model(ModelKind::ExtendedRadial, 2.0, 1.0, 0.5);
        assert_eq!(ext.energy(2).energy, 4.0);
        let ho = model(ModelKind::HarmonicOscillator, 1.0, 1.0, 1.0);
        assert_eq!(ho.energy(4).energy, 4.0);
        assert_eq!(ho.energy(0).energy, 0.0);
    }

    #[test]
    fn to_scaled_examples() {
        let p = PhysParams::new(1.0, 1.0, 1.0).unwrap();
        let s = to_scaled(&p, 2.0).unwrap();
        assert_eq!((s.y_tilde, s.ell_tilde), (2.0, 1.0));

        let p = PhysParams::new(4.0, 3.0, 1.0).unwrap();
        let s = to_scaled(&p, 1.0).unwrap();
        assert_eq!((s.y_tilde, s.ell_tilde), (2.0, 3.0));

        let p = PhysParams::new(1.0, 2.0, 4.0).unwrap();
        let s = to_scaled(&p, 2.0).unwrap();
        assert_eq!((s.y_tilde, s.ell_tilde), (1.0, 0.5));
        // ℓ̃ = 0.5 violates the extended bound and must be rejected downstream
        assert!(scaled_bracket(ModelKind::ExtendedRadial, &s).is_err());
        assert!(SuperpotentialModel::new(ModelKind::ExtendedRadial, p).is_err());
    }

    #[test]
    fn scaled_bracket_examples() {
        let p = ScaledPoint {
            y_tilde: 2.0_f64.sqrt(),
            ell_tilde: 1.0,
        };
        let expected = 4.0 * 2.0_f64.sqrt() / 15.0;
        assert_relative_eq!(
            scaled_bracket(ModelKind::ExtendedRadial, &p).unwrap(),
            expected,
            max_relative = 1e-15
        );
        // conventional bracket vanishes at ỹ = √(2ℓ̃)
        for lt in [0.6, 1.0, 2.5, 7.0] {
            let p = ScaledPoint {
                y_tilde: (2.0 * lt).sqrt(),
                ell_tilde: lt,
            };
            assert_abs_diff_eq!(
                scaled_bracket(ModelKind::ConventionalRadial, &p).unwrap(),
                0.0,
                epsilon = 1e-15
            );
        }
    }

    #[test]
    fn scaling_identity_against_physical_w() {
        // W(x) = √(ħω)·bracket(to_scaled(x)) for the extended model
        let mut rng = StdRng::seed_from_u64(42);
        for _ in 0..100 {
            let omega = rng.gen_range(0.2..4.0);
            let hbar = rng.gen_range(0.2..4.0);
            let ell = hbar * rng.gen_range(0.55..9.0);
            let m = model(ModelKind::ExtendedRadial, omega, ell, hbar);
            let x = m.params().length_scale() * rng.gen_range(0.05..20.0);
            let p = to_scaled(m.params(), x).unwrap();
            let lhs = (hbar * omega).sqrt() * scaled_bracket(ModelKind::ExtendedRadial, &p).unwrap();
            assert_relative_eq!(lhs, m.eval_w(x).unwrap(), max_relative = 1e-12);
        }
    }

    #[test]
    fn eta_examples() {
        let p = ScaledPoint {
            y_tilde: 2.0_f64.sqrt(),
            ell_tilde: 1.0,
        };
        assert_relative_eq!(
            scaled_eta(ModelKind::ExtendedRadial, &p, 1).unwrap(),
            418.0 / 225.0,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            scaled_eta(ModelKind::ExtendedRadial, &p, 0).unwrap(),
            -32.0 / 225.0,
            max_relative = 1e-14
        );
        // bracket = 0, n = 0 → η = 0
        let p0 = ScaledPoint {
            y_tilde: 2.0_f64.sqrt(),
            ell_tilde: 1.0,
        };
        assert_eq!(scaled_eta(ModelKind::ConventionalRadial, &p0, 0).unwrap(), 0.0);
    }

    #[test]
    fn eta_matches_physical_integrand() {
        // Eₙ − W²(x) = ħω · η(ỹ, ℓ̃, n)
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..100 {
            let omega = rng.gen_range(0.2..4.0);
            let hbar = rng.gen_range(0.2..4.0);
            let ell = hbar * rng.gen_range(0.55..9.0);
            let n = rng.gen_range(0..9u32);
            for kind in [ModelKind::ConventionalRadial, ModelKind::ExtendedRadial] {
                let m = model(kind, omega, ell, hbar);
                let x = m.params().length_scale() * rng.gen_range(0.05..10.0);
                let w = m.eval_w(x).unwrap();
                let lhs = m.energy(n).energy - w * w;
                let eta = scaled_eta(kind, &to_scaled(m.params(), x).unwrap(), n).unwrap();
                let rhs = hbar * omega * eta;
                assert_relative_eq!(lhs, rhs, max_relative = 1e-12, epsilon = 1e-12 * hbar * omega);
            }
        }
    }

    #[test]
    fn split_consistency() {
        // extended = conventional + the two-fraction correction, everywhere
        let mut rng = StdRng::seed_from_u64(99);
        for _ in 0..200 {
            let omega = rng.gen_range(0.2..4.0);
            let hbar = rng.gen_range(0.2..4.0);
            let ell = hbar * rng.gen_range(0.55..9.0);
            let ext = model(ModelKind::ExtendedRadial, omega, ell, hbar);
            let conv = model(ModelKind::ConventionalRadial, omega, ell, hbar);
            let x = ext.params().length_scale() * rng.gen_range(0.02..30.0);
            let q = omega * x * x;
            let correction = 2.0 * omega * x * hbar / (q + 2.0 * ell - hbar)
                - 2.0 * omega * x * hbar / (q + 2.0 * ell + hbar);
            let lhs = ext.eval_w(x).unwrap();
            let rhs = conv.eval_w(x).unwrap() + correction;
            assert_relative_eq!(lhs, rhs, max_relative = 1e-13, epsilon = 1e-300);
        }
    }

    #[test]
    fn correction_decays_cubically() {
        let ext = model(ModelKind::ExtendedRadial, 1.0, 1.0, 1.0);
        let conv = model(ModelKind::ConventionalRadial, 1.0, 1.0, 1.0);
        let dw = |x: f64| (ext.eval_w(x).unwrap() - conv.eval_w(x).unwrap()).abs();
        // fit the cubic envelope at x = 10 and check it bounds the tail
        let c = dw(10.0) * 1000.0;
        let mut x = 10.0;
        while x <= 100.0 {
            assert!(dw(x) <= 1.05 * c / (x * x * x), "x = {x}");
            x += 2.5;
        }
    }

    #[test]
    fn quantum_number_map_examples() {
        assert_eq!(quantum_number_map(2.0, 1.0).unwrap(), 1.0);
        assert_eq!(quantum_number_map(3.0, 3.0).unwrap(), 0.0);
        assert_eq!(quantum_number_map(3.0, 2.0).unwrap(), 0.5);
        assert!(quantum_number_map(1.0, 0.0).is_err());
        assert_eq!(ell_from_quantum_number(1.0, 1.0).unwrap(), 2.0);
    }
}
