//! Associated Laguerre polynomials L_n^{(α)}(x) for integer α ≥ 0.
//!
//! The separable hydrogen eigenfunctions in parabolic coordinates are built
//! from these polynomials, one factor per coordinate.  Values come from the
//! upward three-term recurrence
//!
//! ```text
//! (k + 1) L_{k+1}^{(α)} = (2k + 1 + α − x) L_k^{(α)} − (k + α) L_{k−1}^{(α)},
//! ```
//!
//! which is forward-stable on x ≥ 0 for the small degrees (n ≤ 10) this
//! crate targets, unlike the explicit alternating-sum formula whose terms
//! cancel catastrophically already around degree 20.

/// Evaluate L_n^{(α)}(x) by the three-term recurrence.
pub fn laguerre(n: u32, alpha: u32, x: f64) -> f64 {
    let a = f64::from(alpha);
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0; // L_0
    let mut curr = 1.0 + a - x; // L_1
    for k in 1..n {
        let kf = f64::from(k);
        let next = ((2.0 * kf + 1.0 + a - x) * curr - (kf + a) * prev) / (kf + 1.0);
        prev = curr;
        curr = next;
    }
    curr
}

/// Derivative d/dx L_n^{(α)}(x) = −L_{n−1}^{(α+1)}(x).
pub fn laguerre_derivative(n: u32, alpha: u32, x: f64) -> f64 {
    if n == 0 {
        0.0
    } else {
        -laguerre(n - 1, alpha + 1, x)
    }
}
