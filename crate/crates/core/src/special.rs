//! Normalized generalized Laguerre functions
//! `l_k^α(t) = sqrt(k! / Γ(k+α+1)) t^(α/2) e^(-t/2) L_k^α(t)`.
//!
//! These stay O(1) for every `k` and `t`, which is what makes them usable both
//! for quadrature weights at large order and for |ξ> coefficients at large cutoff.

/// `ln Γ(α + 1)` for integer or half-integer `α >= 0`.
pub(crate) fn ln_gamma_plus_one(alpha: f64) -> f64 {
    assert!(alpha >= 0.0, "alpha must be non-negative");
    let twice = 2.0 * alpha;
    assert!(
        twice.fract() == 0.0,
        "only integer and half-integer alpha are supported"
    );
    if alpha.fract() == 0.0 {
        (2..=alpha as usize).map(|i| (i as f64).ln()).sum()
    } else {
        // Γ(k + 3/2) = Γ(1/2) Π_{i=0..k} (i + 1/2)
        let k = alpha.floor() as usize;
        0.5 * std::f64::consts::PI.ln() + (0..=k).map(|i| (i as f64 + 0.5).ln()).sum::<f64>()
    }
}

/// `[l_0^α(t), ..., l_kmax^α(t)]`.
pub(crate) fn laguerre_functions(kmax: usize, alpha: f64, t: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(kmax + 1);
    let seed = if alpha == 0.0 {
        (-0.5 * t).exp()
    } else if t == 0.0 {
        0.0
    } else {
        (0.5 * alpha * t.ln() - 0.5 * t - 0.5 * ln_gamma_plus_one(alpha)).exp()
    };
    out.push(seed);
    let mut prev = 0.0;
    let mut cur = seed;
    for k in 0..kmax {
        let kf = k as f64;
        let next = ((2.0 * kf + alpha + 1.0 - t) * cur - (kf * (kf + alpha)).sqrt() * prev)
            / ((kf + 1.0) * (kf + 1.0 + alpha)).sqrt();
        out.push(next);
        prev = cur;
        cur = next;
    }
    out
}
