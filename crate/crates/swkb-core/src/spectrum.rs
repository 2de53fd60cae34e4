//! Independent spectral cross-check: solve −ħ²ψ″ + V₋ψ = Eψ for
//! V₋ = W² − ħW′ by Numerov shooting and compare against the ladder.
//!
//! The mass convention is 2m = 1, matching the first-order factorization
//! H₋ = W² − ħW′ used throughout; the half-line problem is approximated by a
//! Dirichlet box. Eigenvalues come from bisection on the interior node count
//! of the left-shot solution, whose jumps are exactly the box eigenvalues
//! (Sturm oscillation); the final eigenfunction is assembled from both ends,
//! matched at the classical right turning point where the two branches are
//! well conditioned, and must have decayed at the box edge.

use crate::error::{Error, Result};
use crate::model::{ModelKind, PhysParams, SuperpotentialModel};

/// Uniform grid specification for the eigensolver box.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
}

impl GridSpec {
    /// Default box: [10⁻⁴, 20]·√(ħ/ω) for the radial models (ground state
    /// and n ≤ 8 fit comfortably), symmetric ±15·√(ħ/ω) for the baseline.
    pub fn default_for(model: &SuperpotentialModel) -> Self {
        let s = model.params().length_scale();
        match model.kind() {
            ModelKind::HarmonicOscillator => Self {
                x_min: -15.0 * s,
                x_max: 15.0 * s,
                points: 12_001,
            },
            _ => Self {
                x_min: 1e-4 * s,
                x_max: 20.0 * s,
                points: 12_001,
            },
        }
    }
}

/// Discretized partner potential V₋ on a uniform grid.
#[derive(Debug, Clone)]
pub struct PotentialGrid {
    pub x: Vec<f64>,
    pub v: Vec<f64>,
    pub step: f64,
    kind: ModelKind,
    params: PhysParams,
}

impl PotentialGrid {
    /// Ladder energy this grid's model predicts for level n.
    pub fn expected_energy(&self, n: u32) -> f64 {
        let step = match self.kind {
            ModelKind::HarmonicOscillator => 1.0,
            _ => 2.0,
        };
        step * n as f64 * self.params.hbar() * self.params.omega()
    }

    pub fn params(&self) -> &PhysParams {
        &self.params
    }
}

/// Solver tunables.
#[derive(Debug, Clone, Copy)]
pub struct SpectrumConfig {
    /// Bisection stops when the energy bracket is below this, in units of ħω.
    pub energy_tol: f64,
    pub max_bisect: usize,
    /// Largest tolerated |ψ|/max|ψ| next to a decay boundary.
    pub boundary_leak_tol: f64,
}

impl Default for SpectrumConfig {
    fn default() -> Self {
        Self {
            energy_tol: 1e-11,
            max_bisect: 200,
            boundary_leak_tol: 1e-8,
        }
    }
}

/// A converged eigenvalue.
#[derive(Debug, Clone, Copy)]
pub struct EigenResult {
    /// Node count of the converged eigenfunction (equals the requested level).
    pub n: u32,
    pub energy_numeric: f64,
    /// Final energy bracket width.
    pub bisection_width: f64,
    /// |energy_numeric − ladder energy|.
    pub matches: f64,
}

/// Evaluate V₋ = W² − ħW′ on the grid.
pub fn build_potential(model: &SuperpotentialModel, spec: &GridSpec) -> Result<PotentialGrid> {
    if !(spec.x_min < spec.x_max) {
        return Err(Error::Grid {
            reason: "need x_min < x_max",
        });
    }
    if spec.points < 1000 {
        return Err(Error::Grid {
            reason: "need at least 1000 grid points",
        });
    }
    let hbar = model.params().hbar();
    let step = (spec.x_max - spec.x_min) / (spec.points - 1) as f64;
    let mut x = Vec::with_capacity(spec.points);
    let mut v = Vec::with_capacity(spec.points);
    for i in 0..spec.points {
        let xi = spec.x_min + i as f64 * step;
        let w = model.eval_w(xi)?;
        let vi = w * w - hbar * model.eval_w_prime(xi)?;
        if !vi.is_finite() {
            return Err(Error::Grid {
                reason: "potential not finite on the grid",
            });
        }
        x.push(xi);
        v.push(vi);
    }
    Ok(PotentialGrid {
        x,
        v,
        step,
        kind: model.kind(),
        params: *model.params(),
    })
}

const RENORM_THRESHOLD: f64 = 1e140;

/// Numerov sweep from the left across the whole box; returns the interior
/// node count. Sign changes are scale invariant, so periodic renormalization
/// cannot disturb the count.
fn count_nodes_full(pot: &PotentialGrid, energy: f64, hbar: f64) -> usize {
    let n_pts = pot.v.len();
    let hh = pot.step * pot.step / 12.0;
    let q = |i: usize| (pot.v[i] - energy) / (hbar * hbar);

    let mut prev = 0.0_f64;
    let mut cur = pot.step;
    let mut q_prev = q(0);
    let mut q_cur = q(1);
    let mut nodes = 0usize;
    let mut last_sign = cur.signum();

    for i in 1..n_pts - 1 {
        let q_next = q(i + 1);
        let next = (2.0 * (1.0 + 5.0 * hh * q_cur) * cur - (1.0 - hh * q_prev) * prev)
            / (1.0 - hh * q_next);
        if i + 1 < n_pts - 1 && next != 0.0 {
            let s = next.signum();
            if s != last_sign {
                nodes += 1;
            }
            last_sign = s;
        }
        prev = cur;
        cur = next;
        q_prev = q_cur;
        q_cur = q_next;
        if cur.abs() > RENORM_THRESHOLD {
            let scale = 1.0 / cur.abs();
            prev *= scale;
            cur *= scale;
        }
    }
    nodes
}

struct Composite {
    psi: Vec<f64>,
    nodes: usize,
}

/// Two-sided Numerov pass at a converged energy: integrate from both walls,
/// match the branch values at index m, and assemble the eigenfunction.
fn two_sided(pot: &PotentialGrid, energy: f64, hbar: f64, m: usize) -> Composite {
    let n_pts = pot.v.len();
    let hh = pot.step * pot.step / 12.0;
    let q: Vec<f64> = pot
        .v
        .iter()
        .map(|&vi| (vi - energy) / (hbar * hbar))
        .collect();

    // left branch up to m+1
    let mut left = vec![0.0; m + 2];
    left[1] = pot.step;
    for i in 1..=m {
        left[i + 1] = (2.0 * (1.0 + 5.0 * hh * q[i]) * left[i]
            - (1.0 - hh * q[i - 1]) * left[i - 1])
            / (1.0 - hh * q[i + 1]);
        if left[i + 1].abs() > RENORM_THRESHOLD {
            let scale = 1.0 / left[i + 1].abs();
            for value in left[..=i + 1].iter_mut() {
                *value *= scale;
            }
        }
    }

    // right branch down to m-1
    let mut right = vec![0.0; n_pts];
    right[n_pts - 2] = pot.step;
    for i in (m..=n_pts - 2).rev() {
        right[i - 1] = (2.0 * (1.0 + 5.0 * hh * q[i]) * right[i]
            - (1.0 - hh * q[i + 1]) * right[i + 1])
            / (1.0 - hh * q[i - 1]);
        if right[i - 1].abs() > RENORM_THRESHOLD {
            let scale = 1.0 / right[i - 1].abs();
            for value in right[i - 1..].iter_mut() {
                *value *= scale;
            }
        }
    }

    // match branch values at m (log-derivative continuity is what the energy
    // bisection converged toward; value matching fixes the relative scale)
    let sigma = if right[m] != 0.0 {
        left[m] / right[m]
    } else {
        1.0
    };
    let mut psi = vec![0.0; n_pts];
    psi[..=m].copy_from_slice(&left[..=m]);
    for i in m + 1..n_pts {
        psi[i] = sigma * right[i];
    }

    let mut nodes = 0usize;
    let mut last_sign = 0.0_f64;
    for &value in &psi[1..n_pts - 1] {
        if value == 0.0 {
            continue;
        }
        let s = value.signum();
        if last_sign != 0.0 && s != last_sign {
            nodes += 1;
        }
        last_sign = s;
    }
    Composite { psi, nodes }
}

/// Matching index: the rightmost grid point still classically allowed at
/// this energy, clamped away from the walls.
fn matching_index(pot: &PotentialGrid, energy: f64) -> usize {
    let n_pts = pot.v.len();
    let idx = pot
        .v
        .iter()
        .rposition(|&vi| vi <= energy)
        .unwrap_or(n_pts / 2);
    idx.clamp(2, n_pts - 3)
}

/// Find the n-th eigenvalue of the discretized problem.
pub fn solve_eigenvalue(pot: &PotentialGrid, n: u32, hbar: f64) -> Result<EigenResult> {
    solve_eigenvalue_with(pot, n, hbar, &SpectrumConfig::default())
}

pub fn solve_eigenvalue_with(
    pot: &PotentialGrid,
    n: u32,
    hbar: f64,
    cfg: &SpectrumConfig,
) -> Result<EigenResult> {
    let energy_scale = pot.params.energy_scale();
    let tol = cfg.energy_tol * energy_scale;
    let v_min = pot.v.iter().copied().fold(f64::INFINITY, f64::min);

    let mut lo = v_min.min(0.0) - 0.5 * energy_scale;
    let mut hi = pot.expected_energy(n) + 2.0 * energy_scale;
    let mut expansions = 0;
    while count_nodes_full(pot, hi, hbar) < n as usize + 1 {
        hi = hi * 1.5 + energy_scale;
        expansions += 1;
        if expansions > 64 {
            return Err(Error::NoConvergence {
                width: hi - lo,
                iterations: expansions,
            });
        }
    }

    let mut iterations = 0;
    while hi - lo > tol {
        iterations += 1;
        if iterations > cfg.max_bisect {
            return Err(Error::NoConvergence {
                width: hi - lo,
                iterations,
            });
        }
        let mid = 0.5 * (lo + hi);
        if count_nodes_full(pot, mid, hbar) >= n as usize + 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    let energy = 0.5 * (lo + hi);
    let m = matching_index(pot, energy);
    let composite = two_sided(pot, energy, hbar, m);

    // decay boundaries: the outer wall always, the inner wall only where the
    // box is approximating infinity rather than the origin
    let peak = composite
        .psi
        .iter()
        .fold(0.0_f64, |acc, &value| acc.max(value.abs()));
    let n_pts = composite.psi.len();
    let right_leak = composite.psi[n_pts - 2].abs() / peak;
    if right_leak > cfg.boundary_leak_tol {
        return Err(Error::BoxTooSmall { leak: right_leak });
    }
    if pot.kind == ModelKind::HarmonicOscillator {
        let left_leak = composite.psi[1].abs() / peak;
        if left_leak > cfg.boundary_leak_tol {
            return Err(Error::BoxTooSmall { leak: left_leak });
        }
    }

    if composite.nodes != n as usize {
        return Err(Error::NoConvergence {
            width: hi - lo,
            iterations,
        });
    }

    Ok(EigenResult {
        n,
        energy_numeric: energy,
        bisection_width: hi - lo,
        matches: (energy - pot.expected_energy(n)).abs(),
    })
}
