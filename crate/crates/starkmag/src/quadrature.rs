//! Gauss–Laguerre quadrature on the half-line and the quadrant.
//!
//! Bound-state integrands in parabolic coordinates all look like
//! (polynomial) × e^{−(ξ+η)/s} with a state-dependent decay length s, so
//! Gauss–Laguerre rules are the natural tool: an N-point rule integrates
//! e^{−x} × (any polynomial of degree ≤ 2N−1) exactly.
//!
//! Nodes and weights come from the Golub–Welsch construction: the recurrence
//! coefficients of the Laguerre polynomials form a symmetric tridiagonal
//! Jacobi matrix whose eigenvalues are the nodes and whose eigenvectors'
//! first components square to the weights.  The eigenproblem is solved with
//! an in-house implicit-shift QL iteration that tracks only the first row of
//! the eigenvector matrix — all that quadrature needs.
//!
//! # Weight-factored integrands
//!
//! Every `integrate_*` method expects the integrand *with the rule's
//! exponential already divided out*: to compute ∫₀^∞ F(ξ) dξ, pass
//! g(ξ) = F(ξ)·e^{ξ/s}.  Callers assemble g analytically (for wavefunction
//! products this is a pure polynomial), which avoids evaluating e^{+ξ/s} at
//! the large outer nodes where it overflows.

use crate::error::{Error, Result};

/// Smallest accepted rule order; coarser rules cannot resolve the n ≤ 5
/// states the rest of the crate is validated for.
pub const MIN_ORDER: usize = 16;

/// A Gauss–Laguerre rule, scaled so that the implicit weight is e^{−ξ/scale}.
///
/// `nodes` are the physical coordinates s·x_i; paired with `weights` they
/// satisfy ∫₀^∞ e^{−ξ/s} p(ξ) dξ ≈ s·Σ w_i p(s·x_i) exactly for polynomials
/// p up to degree 2·order − 1.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    /// Raw Laguerre nodes x_i (ascending, all positive), for weight e^{−x}.
    raw_nodes: Vec<f64>,
    /// Raw weights w_i, all positive, summing to 1.
    raw_weights: Vec<f64>,
    /// Length scale s mapping raw nodes to physical coordinates ξ = s·x.
    scale: f64,
}

impl QuadratureRule {
    /// Build an `order`-point rule with decay length `scale`.
    ///
    /// Fails if `order < `[`MIN_ORDER`] or `scale` is not a positive finite
    /// length.
    pub fn gauss_laguerre(order: usize, scale: f64) -> Result<Self> {
        if order < MIN_ORDER {
            return Err(Error::QuadratureOrder {
                order,
                min: MIN_ORDER,
            });
        }
        if !scale.is_finite() || scale <= 0.0 {
            return Err(Error::NonPositive {
                name: "quadrature scale",
                value: scale,
            });
        }
        // Jacobi matrix of the (α = 0) Laguerre polynomials:
        // diagonal 2k+1, off-diagonal k.
        let mut diag: Vec<f64> = (0..order).map(|k| 2.0 * k as f64 + 1.0).collect();
        let mut off: Vec<f64> = (0..order).map(|k| k as f64).collect();
        off.remove(0); // off[k] couples k and k+1
        off.push(0.0); // sentinel
        let mut first_row = vec![0.0; order];
        first_row[0] = 1.0;
        tridiagonal_eigen_first_row(&mut diag, &mut off, &mut first_row)
            .map_err(|_| Error::QuadratureConvergence { order })?;

        let mut pairs: Vec<(f64, f64)> = diag
            .into_iter()
            .zip(first_row)
            .map(|(node, z)| (node, z * z)) // total mass ∫e^{−x}dx = 1
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (raw_nodes, raw_weights) = pairs.into_iter().unzip();
        Ok(Self {
            raw_nodes,
            raw_weights,
            scale,
        })
    }

    /// Number of nodes per axis.
    pub fn order(&self) -> usize {
        self.raw_nodes.len()
    }

    /// The decay length s of the implicit weight e^{−ξ/s}.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Physical nodes and weights: (s·x_i, s·w_i).
    pub fn node_weight_pairs(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.raw_nodes
            .iter()
            .zip(&self.raw_weights)
            .map(|(&x, &w)| (self.scale * x, self.scale * w))
    }

    /// Same order-doubled rule, for convergence self-checks.
    pub fn doubled(&self) -> Result<Self> {
        Self::gauss_laguerre(2 * self.order(), self.scale)
    }

    /// ∫₀^∞ F(ξ) dξ with the weight-factored integrand g(ξ) = F(ξ)·e^{ξ/s}.
    ///
    /// Returns an error naming the node if `g` produces a non-finite value.
    pub fn integrate_half_line(&self, g: impl Fn(f64) -> f64) -> Result<f64> {
        let mut acc = 0.0;
        for (&x, &w) in self.raw_nodes.iter().zip(&self.raw_weights) {
            let xi = self.scale * x;
            let v = g(xi);
            if !v.is_finite() {
                return Err(Error::NonFiniteIntegrand {
                    xi,
                    eta: f64::NAN,
                    value: v,
                });
            }
            acc += w * v;
        }
        Ok(self.scale * acc)
    }

    /// ∫₀^∞∫₀^∞ F(ξ, η) dξ dη with g(ξ, η) = F(ξ, η)·e^{(ξ+η)/s}.
    ///
    /// Returns an error naming the node if `g` produces a non-finite value.
    pub fn integrate_quadrant(&self, g: impl Fn(f64, f64) -> f64) -> Result<f64> {
        let mut acc = 0.0;
        for (&x, &wx) in self.raw_nodes.iter().zip(&self.raw_weights) {
            let xi = self.scale * x;
            let mut row = 0.0;
            for (&y, &wy) in self.raw_nodes.iter().zip(&self.raw_weights) {
                let eta = self.scale * y;
                let v = g(xi, eta);
                if !v.is_finite() {
                    return Err(Error::NonFiniteIntegrand { xi, eta, value: v });
                }
                row += wy * v;
            }
            acc += wx * row;
        }
        Ok(self.scale * self.scale * acc)
    }
}

/// Implicit-shift QL iteration for a symmetric tridiagonal matrix,
/// accumulating only the first row of the eigenvector matrix.
///
/// On entry `diag` holds the diagonal, `off[k]` the coupling between rows k
/// and k+1 (`off[n−1]` is scratch), and `first_row` the first row of the
/// identity.  On exit `diag` holds eigenvalues (unsorted) and `first_row[j]`
/// the first component of the j-th eigenvector.  Errs if any eigenvalue
/// fails to converge within the usual iteration budget.
fn tridiagonal_eigen_first_row(
    diag: &mut [f64],
    off: &mut [f64],
    first_row: &mut [f64],
) -> std::result::Result<(), ()> {
    let n = diag.len();
    if n == 0 {
        return Ok(());
    }
    off[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            // Find the first negligible off-diagonal at or after l.
            let mut m = l;
            while m + 1 < n {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if off[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(());
            }
            // Implicit shift from the 2x2 block at l.
            let mut g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + off[l] / (g + r.copysign(g));
            let (mut s, mut c) = (1.0, 1.0);
            let mut p = 0.0;
            let mut underflowed = false;
            for i in (l..m).rev() {
                let mut f = s * off[i];
                let b = c * off[i];
                r = f.hypot(g);
                off[i + 1] = r;
                if r == 0.0 {
                    // Recover from underflow: skip the rest of the sweep.
                    diag[i + 1] -= p;
                    off[m] = 0.0;
                    underflowed = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
                // Rotate the tracked first row.
                f = first_row[i + 1];
                first_row[i + 1] = s * first_row[i] + c * f;
                first_row[i] = c * first_row[i] - s * f;
            }
            if underflowed {
                continue;
            }
            diag[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        }
    }
    Ok(())
}
