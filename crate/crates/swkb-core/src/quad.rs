//! The two independent quadrature engines behind the quantization integral.
//!
//! Both operate on the cosine-transformed integrand, which is smooth when the
//! turning points are simple roots:
//!
//! * `romberg` — composite trapezoid with Richardson extrapolation; the
//!   canonical scheme. Acceptance requires the last refinements to shrink
//!   monotonically, so a lucky agreement between two bad levels cannot pass.
//! * `tanh_sinh` — double-exponential quadrature with level doubling; the
//!   cross-check scheme, sharing no code or nodes with the first.

#[derive(Debug, Clone, Copy)]
pub(crate) struct QuadOutcome {
    pub value: f64,
    /// Conservative absolute error estimate (last refinement delta).
    pub error_estimate: f64,
    pub levels: usize,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct QuadFailure {
    pub tol: f64,
    pub levels: usize,
    pub estimate: f64,
    pub delta: f64,
}

/// Trapezoid + Richardson (Romberg) on [a, b] to a relative tolerance.
///
/// Accepts once the diagonal stabilizes to `rel_tol` AND the last three
/// refinement deltas are non-increasing.
pub(crate) fn romberg<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    max_levels: usize,
) -> Result<QuadOutcome, QuadFailure> {
    let max_levels = max_levels.max(5);
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(max_levels);
    let width = b - a;

    let mut trapezoid = 0.5 * width * (f(a) + f(b));
    rows.push(vec![trapezoid]);

    let mut deltas: Vec<f64> = Vec::with_capacity(max_levels);
    for level in 1..max_levels {
        // refine the trapezoid with the new midpoints
        let panels = 1usize << level;
        let h = width / panels as f64;
        let mut new_sum = 0.0;
        let mut i = 1;
        while i < panels {
            new_sum += f(a + i as f64 * h);
            i += 2;
        }
        trapezoid = 0.5 * trapezoid + h * new_sum;

        // Richardson column sweep
        let prev = &rows[level - 1];
        let mut row = Vec::with_capacity(level + 1);
        row.push(trapezoid);
        let mut factor = 4.0;
        for k in 0..prev.len() {
            let extrapolated = row[k] + (row[k] - prev[k]) / (factor - 1.0);
            row.push(extrapolated);
            factor *= 4.0;
        }
        let estimate = *row.last().unwrap();
        let prev_best = *prev.last().unwrap();
        rows.push(row);

        let delta = (estimate - prev_best).abs();
        deltas.push(delta);

        let scale = estimate.abs().max(f64::MIN_POSITIVE);
        let tight = delta <= rel_tol * scale;
        let settled = deltas.len() >= 3 && {
            let k = deltas.len();
            deltas[k - 1] <= deltas[k - 2] && deltas[k - 2] <= deltas[k - 3]
        };
        if level >= 4 && tight && settled {
            return Ok(QuadOutcome {
                value: estimate,
                error_estimate: delta.max(4.0 * f64::EPSILON * scale),
                levels: level,
            });
        }
    }

    let estimate = *rows.last().unwrap().last().unwrap();
    Err(QuadFailure {
        tol: rel_tol,
        levels: max_levels,
        estimate,
        delta: deltas.last().copied().unwrap_or(f64::INFINITY),
    })
}

/// Double-exponential (tanh-sinh) quadrature on [a, b] to a relative
/// tolerance, by successive halving of the step in the transformed variable.
pub(crate) fn tanh_sinh<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    max_levels: usize,
) -> Result<QuadOutcome, QuadFailure> {
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    let pi_half = std::f64::consts::FRAC_PI_2;

    // x = c + r·tanh(π/2·sinh t), weight = π/2·cosh t / cosh²(π/2·sinh t).
    // |t| beyond ~4.2 puts x within one ulp of the endpoints.
    let t_max = 4.2_f64;

    let eval_pair = |t: f64| -> f64 {
        let sh = pi_half * t.sinh();
        let ch = sh.cosh();
        let weight = pi_half * t.cosh() / (ch * ch);
        if weight < 1e-300 {
            return 0.0;
        }
        let u = sh.tanh();
        weight * (f(c + r * u) + f(c - r * u))
    };

    // level 0: step 1, nodes at t = 0, ±1, ±2, ...
    let mut h = 1.0_f64;
    let mut sum = pi_half * f(c);
    let mut k = 1;
    while (k as f64) * h <= t_max {
        sum += eval_pair(k as f64 * h);
        k += 1;
    }
    let mut value = sum * h * r;

    let mut last_delta = f64::INFINITY;
    for level in 1..=max_levels {
        h *= 0.5;
        // add the new odd-multiple nodes of the halved step
        let mut k = 1;
        while (k as f64) * h <= t_max {
            sum += eval_pair(k as f64 * h);
            k += 2;
        }
        let refined = sum * h * r;
        last_delta = (refined - value).abs();
        let scale = refined.abs().max(f64::MIN_POSITIVE);
        let converged = level >= 3 && last_delta <= rel_tol * scale;
        value = refined;
        if converged {
            return Ok(QuadOutcome {
                value,
                error_estimate: last_delta.max(4.0 * f64::EPSILON * scale),
                levels: level,
            });
        }
    }

    Err(QuadFailure {
        tol: rel_tol,
        levels: max_levels,
        estimate: value,
        delta: last_delta,
    })
}
