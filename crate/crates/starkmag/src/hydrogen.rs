//! Hydrogen bound states in parabolic coordinates.
//!
//! Parabolic coordinates (ξ, η, φ) are related to Cartesian ones by
//! ξ = r + z, η = r − z, x + iy = √(ξη)·e^{iφ}, with volume element
//! dV = ¼(ξ + η) dξ dη dφ.  The Coulomb problem separates here into two
//! one-dimensional equations sharing the energy −e²/(2a₀n²), and the bound
//! states are labelled by parabolic quantum numbers (n₁, n₂, m) with
//! n = n₁ + n₂ + |m| + 1.  Unlike the spherical basis, these states carry a
//! permanent electric dipole moment along z — which is exactly why they are
//! the natural basis for Stark physics.
//!
//! The normalized eigenfunctions are products of associated-Laguerre factors
//! in ξ/n and η/n:
//!
//! ```text
//! ψ(ξ, η, φ) = R(ξ, η) · e^{imφ}/√(2π),
//! R(ξ, η) = (√2/n²) a₀^{−3/2} f_{n₁}(ξ/(n a₀)) f_{n₂}(η/(n a₀)),
//! f_p(x)  = √(p!/(p+|m|)!) · e^{−x/2} x^{|m|/2} L_p^{(|m|)}(x).
//! ```
//!
//! The factorization into `R × azimuthal phase` is exposed directly because
//! every matrix element in this crate reduces, after the analytic φ
//! integral, to a two-dimensional Gauss–Laguerre sum over R.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laguerre::{laguerre, laguerre_derivative};
use crate::quadrature::QuadratureRule;
use crate::units::Constants;

/// Largest principal quantum number the numerics are validated for.
///
/// The Laguerre recurrence, the default quadrature order and the
/// finite-difference stencils are all comfortably accurate up to n = 10;
/// beyond that the factorial normalizations and node layouts would need a
/// dedicated audit, so higher states are rejected rather than silently
/// degraded.
pub const MAX_PRINCIPAL: u32 = 10;

/// Parabolic quantum numbers (n₁, n₂, m) of a bound state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuantumNumbers {
    /// Number of nodes of the ξ factor.
    pub n1: u32,
    /// Number of nodes of the η factor.
    pub n2: u32,
    /// Azimuthal quantum number; the φ dependence is the phase e^{imφ}.
    pub m: i32,
}

impl QuantumNumbers {
    /// Validate and build a set of parabolic quantum numbers.
    ///
    /// Any combination with n = n₁ + n₂ + |m| + 1 ≤ [`MAX_PRINCIPAL`] is a
    /// genuine bound state; larger n is rejected.
    pub fn new(n1: u32, n2: u32, m: i32) -> Result<Self> {
        let qn = Self { n1, n2, m };
        let n = qn.principal();
        if n > MAX_PRINCIPAL {
            return Err(Error::PrincipalOutOfRange {
                n,
                max: MAX_PRINCIPAL,
            });
        }
        Ok(qn)
    }

    /// Principal quantum number n = n₁ + n₂ + |m| + 1.
    pub fn principal(&self) -> u32 {
        self.n1 + self.n2 + self.m.unsigned_abs() + 1
    }

    /// |m| as used by the Laguerre factors.
    pub fn abs_m(&self) -> u32 {
        self.m.unsigned_abs()
    }

    /// The state with ξ and η roles exchanged, (n₂, n₁, m).
    ///
    /// Exchange flips the sign of every odd-in-z observable, which makes it
    /// the natural partner state in mirror tests and in the two-beam
    /// experiment.
    pub fn exchanged(&self) -> Self {
        Self {
            n1: self.n2,
            n2: self.n1,
            m: self.m,
        }
    }
}

impl std::fmt::Display for QuantumNumbers {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.n1, self.n2, self.m)
    }
}

/// A point in parabolic coordinates, ξ ≥ 0, η ≥ 0, φ unrestricted.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParabolicPoint {
    /// ξ = r + z ≥ 0.
    pub xi: f64,
    /// η = r − z ≥ 0.
    pub eta: f64,
    /// Azimuth around the z-axis.
    pub phi: f64,
}

impl ParabolicPoint {
    /// Validate coordinates (both parabolic radii non-negative and finite).
    pub fn new(xi: f64, eta: f64, phi: f64) -> Result<Self> {
        if !xi.is_finite() || !eta.is_finite() || !phi.is_finite() || xi < 0.0 || eta < 0.0 {
            return Err(Error::InvalidParabolicPoint { xi, eta });
        }
        Ok(Self { xi, eta, phi })
    }

    /// Convert from Cartesian coordinates.
    pub fn from_cartesian(x: f64, y: f64, z: f64) -> Self {
        let r = (x * x + y * y + z * z).sqrt();
        Self {
            // Clamp away the −0.0/-1e-17 that r ± z can produce at the axis.
            xi: (r + z).max(0.0),
            eta: (r - z).max(0.0),
            phi: y.atan2(x),
        }
    }

    /// Convert to Cartesian coordinates (x, y, z).
    pub fn to_cartesian(&self) -> [f64; 3] {
        let rho = (self.xi * self.eta).sqrt();
        [
            rho * self.phi.cos(),
            rho * self.phi.sin(),
            0.5 * (self.xi - self.eta),
        ]
    }

    /// Spherical radius r = (ξ + η)/2.
    pub fn r(&self) -> f64 {
        0.5 * (self.xi + self.eta)
    }

    /// Height z = (ξ − η)/2.
    pub fn z(&self) -> f64 {
        0.5 * (self.xi - self.eta)
    }

    /// Cylindrical radius ρ = √(ξη).
    pub fn rho(&self) -> f64 {
        (self.xi * self.eta).sqrt()
    }
}

/// Bound-state energy E_n = −e²/(2a₀n²).
pub fn bound_energy(n: u32, constants: &Constants) -> Result<f64> {
    if n == 0 || n > MAX_PRINCIPAL {
        return Err(Error::PrincipalOutOfRange {
            n,
            max: MAX_PRINCIPAL,
        });
    }
    let e = constants.elementary_charge;
    Ok(-e * e / (2.0 * constants.bohr_radius * f64::from(n * n)))
}

/// √(p!/(p+k)!) without forming either factorial.
fn inverse_rising_factorial_sqrt(p: u32, k: u32) -> f64 {
    let mut acc = 1.0;
    for j in 1..=k {
        acc *= f64::from(p + j);
    }
    1.0 / acc.sqrt()
}

/// Normalization prefactor (√2/n²)·a₀^{−3/2}·√(n₁!/(n₁+|m|)!)·√(n₂!/(n₂+|m|)!).
fn radial_norm(qn: &QuantumNumbers, constants: &Constants) -> f64 {
    let n = f64::from(qn.principal());
    let a0 = constants.bohr_radius;
    std::f64::consts::SQRT_2 / (n * n) * a0.powf(-1.5)
        * inverse_rising_factorial_sqrt(qn.n1, qn.abs_m())
        * inverse_rising_factorial_sqrt(qn.n2, qn.abs_m())
}

/// The real (ξ, η) factor R of ψ = R·e^{imφ}/√(2π).
///
/// Normalized so that ∬ ¼(ξ+η) R² dξ dη = 1, i.e. the full wavefunction has
/// unit norm under dV = ¼(ξ+η) dξ dη dφ.
pub fn radial_part(qn: &QuantumNumbers, xi: f64, eta: f64, constants: &Constants) -> f64 {
    let s = f64::from(qn.principal()) * constants.bohr_radius;
    radial_polynomial(qn, xi, eta, constants) * (-(xi + eta) / (2.0 * s)).exp()
}

/// `radial_part` with its exponential divided out:
/// R(ξ, η) = radial_polynomial · e^{−(ξ+η)/(2 n a₀)}.
///
/// This is the form quadrature wants — for |m| even it is a genuine
/// polynomial in (ξ, η), for |m| odd it carries one factor of √(ξη).
pub fn radial_polynomial(qn: &QuantumNumbers, xi: f64, eta: f64, constants: &Constants) -> f64 {
    let s = f64::from(qn.principal()) * constants.bohr_radius;
    let (x, y) = (xi / s, eta / s);
    let am = qn.abs_m();
    let angular = if am == 0 {
        1.0
    } else {
        (x * y).powf(0.5 * f64::from(am))
    };
    radial_norm(qn, constants) * angular * laguerre(qn.n1, am, x) * laguerre(qn.n2, am, y)
}

/// ∂P/∂ξ of [`radial_polynomial`], again with the exponential factored out
/// (valid for ξ > 0; at |m| > 0 the √ξ factor makes the derivative singular
/// on the axis itself).
///
/// Exposed separately because quadrature-exact derivative integrands (fluxes,
/// current densities) must be assembled from the polynomial parts — forming
/// R first and dividing its exponential back out would overflow at
/// high-order quadrature nodes.
pub fn radial_polynomial_dxi(
    qn: &QuantumNumbers,
    xi: f64,
    eta: f64,
    constants: &Constants,
) -> f64 {
    let s = f64::from(qn.principal()) * constants.bohr_radius;
    let (x, y) = (xi / s, eta / s);
    let am = qn.abs_m();
    let amf = f64::from(am);
    let angular = if am == 0 {
        1.0
    } else {
        (x * y).powf(0.5 * amf)
    };
    let l1 = laguerre(qn.n1, am, x);
    let l2 = laguerre(qn.n2, am, y);
    let dl1 = laguerre_derivative(qn.n1, am, x);
    // d/dx [(xy)^{|m|/2} L₁(x)] · L₂(y)
    let mut dx = dl1 * angular;
    if am > 0 {
        dx += 0.5 * amf / x * angular * l1;
    }
    radial_norm(qn, constants) * l2 * dx / s
}

/// ∂P/∂η; mirror image of [`radial_polynomial_dxi`].
pub fn radial_polynomial_deta(
    qn: &QuantumNumbers,
    xi: f64,
    eta: f64,
    constants: &Constants,
) -> f64 {
    radial_polynomial_dxi(&qn.exchanged(), eta, xi, constants)
}

/// ∂R/∂ξ, from the polynomial derivative and the product rule
/// ∂(P·e^{−(ξ+η)/2s}) = (∂P − P/2s)·e^{−(ξ+η)/2s}.
pub fn radial_part_dxi(qn: &QuantumNumbers, xi: f64, eta: f64, constants: &Constants) -> f64 {
    let s = f64::from(qn.principal()) * constants.bohr_radius;
    (radial_polynomial_dxi(qn, xi, eta, constants)
        - radial_polynomial(qn, xi, eta, constants) / (2.0 * s))
        * (-(xi + eta) / (2.0 * s)).exp()
}

/// ∂R/∂η; mirror image of [`radial_part_dxi`].
pub fn radial_part_deta(qn: &QuantumNumbers, xi: f64, eta: f64, constants: &Constants) -> f64 {
    radial_part_dxi(&qn.exchanged(), eta, xi, constants)
}

/// Full complex wavefunction ψ(ξ, η, φ) = R·e^{imφ}/√(2π).
pub fn wavefunction(
    qn: &QuantumNumbers,
    point: &ParabolicPoint,
    constants: &Constants,
) -> Complex64 {
    let radial = radial_part(qn, point.xi, point.eta, constants);
    let phase = Complex64::from_polar(1.0, f64::from(qn.m) * point.phi);
    radial / (2.0 * std::f64::consts::PI).sqrt() * phase
}

/// A Gauss–Laguerre rule matched to the state's decay length n·a₀.
pub fn state_rule(qn: &QuantumNumbers, order: usize, constants: &Constants) -> Result<QuadratureRule> {
    QuadratureRule::gauss_laguerre(
        order,
        f64::from(qn.principal()) * constants.bohr_radius,
    )
}

/// Weight-factored product R_a·R_b·e^{(ξ+η)/s} for use under `rule`.
///
/// The residual exponential e^{(ξ+η)(1/s − 1/(2n_a a₀) − 1/(2n_b a₀))} is
/// applied explicitly, so mixed-n products integrate correctly (though only
/// equal-n products are exactly polynomial).
fn weighted_pair(
    a: &QuantumNumbers,
    b: &QuantumNumbers,
    rule: &QuadratureRule,
    constants: &Constants,
) -> impl Fn(f64, f64) -> f64 {
    let a = *a;
    let b = *b;
    let c = *constants;
    let decay = 1.0 / rule.scale()
        - 0.5 / (f64::from(a.principal()) * c.bohr_radius)
        - 0.5 / (f64::from(b.principal()) * c.bohr_radius);
    move |xi, eta| {
        radial_polynomial(&a, xi, eta, &c)
            * radial_polynomial(&b, xi, eta, &c)
            * ((xi + eta) * decay).exp()
    }
}

/// ⟨a|b⟩ under the full measure ¼(ξ+η) dξ dη dφ.
///
/// States with different m are orthogonal by the analytic φ integral and
/// return exactly 0 without touching the quadrature.
pub fn overlap(
    a: &QuantumNumbers,
    b: &QuantumNumbers,
    rule: &QuadratureRule,
    constants: &Constants,
) -> Result<f64> {
    if a.m != b.m {
        return Ok(0.0);
    }
    let pair = weighted_pair(a, b, rule, constants);
    rule.integrate_quadrant(move |xi, eta| 0.25 * (xi + eta) * pair(xi, eta))
}

/// ⟨ψ|ψ⟩; equals 1 for every bound state.
pub fn norm(qn: &QuantumNumbers, rule: &QuadratureRule, constants: &Constants) -> Result<f64> {
    overlap(qn, qn, rule, constants)
}

/// ⟨z⟩ by quadrature, z = (ξ − η)/2.
pub fn z_expectation(
    qn: &QuantumNumbers,
    rule: &QuadratureRule,
    constants: &Constants,
) -> Result<f64> {
    let pair = weighted_pair(qn, qn, rule, constants);
    rule.integrate_quadrant(move |xi, eta| 0.125 * (xi + eta) * (xi - eta) * pair(xi, eta))
}

/// The closed form ⟨z⟩ = (3/2)·n·(n₁ − n₂)·a₀ that the quadrature must
/// reproduce; the permanent dipole of the parabolic states.
pub fn z_expectation_closed(qn: &QuantumNumbers, constants: &Constants) -> f64 {
    1.5 * f64::from(qn.principal()) * (f64::from(qn.n1) - f64::from(qn.n2))
        * constants.bohr_radius
}

/// ⟨cos θ⟩ = ⟨z/r⟩ by quadrature; the measure's (ξ+η) cancels against 1/r,
/// leaving ¼(ξ − η)·R².  Closed form: (n₁ − n₂)/n.
pub fn cos_theta_expectation(
    qn: &QuantumNumbers,
    rule: &QuadratureRule,
    constants: &Constants,
) -> Result<f64> {
    let pair = weighted_pair(qn, qn, rule, constants);
    rule.integrate_quadrant(move |xi, eta| 0.25 * (xi - eta) * pair(xi, eta))
}

/// Apply the field-free Hamiltonian
///
/// ```text
/// H₀ f = −(ħ²/2mₑ)·[ 4/(ξ+η)·(∂_ξ(ξ ∂_ξ f) + ∂_η(η ∂_η f)) − m²/(ξη)·f ]
///        − 2e²/(ξ+η)·f
/// ```
///
/// to a scalar field `f(ξ, η)` at `point`, discretizing both radial terms
/// with the conservative central stencil
/// ∂(ξ∂f) ≈ [(ξ+h/2)(f₊−f₀) − (ξ−h/2)(f₀−f₋)]/h², which is O(h²) accurate.
/// `m` supplies the analytic centrifugal term for states e^{imφ}.
///
/// The point must be strictly interior: ξ, η > 2h.
pub fn apply_h0(
    f: impl Fn(f64, f64) -> f64,
    m: i32,
    point: &ParabolicPoint,
    constants: &Constants,
    h: f64,
) -> Result<f64> {
    let (xi, eta) = (point.xi, point.eta);
    if !h.is_finite() || h <= 0.0 || xi <= 2.0 * h || eta <= 2.0 * h {
        return Err(Error::FiniteDifferenceDomain { h, xi, eta });
    }
    let f0 = f(xi, eta);
    let d_xi = ((xi + 0.5 * h) * (f(xi + h, eta) - f0) - (xi - 0.5 * h) * (f0 - f(xi - h, eta)))
        / (h * h);
    let d_eta = ((eta + 0.5 * h) * (f(xi, eta + h) - f0)
        - (eta - 0.5 * h) * (f0 - f(xi, eta - h)))
        / (h * h);
    let mut bracket = 4.0 / (xi + eta) * (d_xi + d_eta);
    if m != 0 {
        bracket -= f64::from(m * m) / (xi * eta) * f0;
    }
    let e = constants.elementary_charge;
    Ok(-constants.hbar * constants.hbar / (2.0 * constants.electron_mass) * bracket
        - 2.0 * e * e / (xi + eta) * f0)
}

/// Local energy (H₀ψ)/ψ of the bound state `qn` at `point`, using the
/// finite-difference [`apply_h0`].  Deviation from `bound_energy(n)` is pure
/// O(h²) discretization error — the crate's strongest internal check that
/// wavefunction, Hamiltonian and energy all belong to the same problem.
///
/// Evaluate away from nodal surfaces of the state, where the division is
/// ill-conditioned.
pub fn local_energy(
    qn: &QuantumNumbers,
    point: &ParabolicPoint,
    constants: &Constants,
    h: f64,
) -> Result<f64> {
    let q = *qn;
    let c = *constants;
    let value = radial_part(&q, point.xi, point.eta, constants);
    let applied = apply_h0(
        move |xi, eta| radial_part(&q, xi, eta, &c),
        qn.m,
        point,
        constants,
        h,
    )?;
    let local = applied / value;
    if !local.is_finite() {
        return Err(Error::NonFiniteIntegrand {
            xi: point.xi,
            eta: point.eta,
            value: local,
        });
    }
    Ok(local)
}
