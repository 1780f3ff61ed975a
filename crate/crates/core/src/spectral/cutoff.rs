//! Smooth radial cutoff pair `χ₀ + χ₁ ≡ 1`.

fn psi(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        (-1.0 / t).exp()
    }
}

/// `C^∞` cutoff: 1 on `r ≤ 1`, 0 on `r ≥ 2`, monotone in between.
pub fn chi0(r: f64) -> f64 {
    if r <= 1.0 {
        1.0
    } else if r >= 2.0 {
        0.0
    } else {
        let a = psi(2.0 - r);
        a / (a + psi(r - 1.0))
    }
}

/// `1 − χ₀(r)`.
pub fn chi1(r: f64) -> f64 {
    1.0 - chi0(r)
}
