//! Magnetic charge carried by hydrogen Stark states.
//!
//! The construction implemented here reinterprets the permanent electric
//! dipole of a parabolic bound state as the work of a *magnetic-charge*
//! current.  The ingredients, in the order they appear below:
//!
//! 1. **Two dipole definitions.**  The conventional moment d = e⟨r⟩, and a
//!    dual route d = ½∫r×J dV where J = g·L/(mₑc·r) is an
//!    angular-momentum-proportional "magnetic current" of pole strength g.
//!    On the axially symmetric Stark states both reduce to z-components.
//! 2. **Dressed states.**  Multiplying a bound state by the unit-modulus
//!    phase exp(i·(eg/ħc)·ln(ξη/a₀²) − iMφ) leaves the field-free energy
//!    untouched (the phase gradient drops out of the real part of the
//!    eigenvalue problem) but gives the state a logarithmic phase
//!    singularity on the whole z-axis — the analogue of a Dirac string.
//! 3. **Two Stark-shift routes.**  In a uniform field ℰẑ, the interaction
//!    operator of the dual dipole produces a shift quadratic in g through
//!    the phase gradient; the conventional route gives the familiar linear
//!    Stark shift (3/2)n(n₁−n₂)eℰa₀.  Demanding the two closed forms agree
//!    fixes the pole strength: eg/ħc = √3·n — an irrational multiple of the
//!    Dirac quantization eg/ħc = k/2.
//!
//! Every quadrature here is Gauss–Laguerre over the (ξ, η) quadrant with the
//! exponential of the wavefunction folded into the weight, so polynomial
//! integrands are evaluated exactly (up to rounding).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hydrogen::{
    self, ParabolicPoint, QuantumNumbers, MAX_PRINCIPAL,
};
use crate::quadrature::QuadratureRule;
use crate::units::Constants;

/// A uniform electrostatic field of magnitude `field_strength` along +z.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StarkConfig {
    /// Field magnitude (statvolt/cm in Gaussian units, e/a₀² in atomic units).
    pub field_strength: f64,
}

impl StarkConfig {
    /// Validate a non-negative, finite field strength.
    pub fn new(field_strength: f64) -> Result<Self> {
        if !field_strength.is_finite() || field_strength < 0.0 {
            return Err(Error::NonPositive {
                name: "field strength",
                value: field_strength,
            });
        }
        Ok(Self { field_strength })
    }

    /// Whether first-order perturbation theory is trustworthy: the applied
    /// field must be well below the internal atomic field e/a₀² (threshold
    /// here: 1%).
    pub fn is_perturbative(&self, constants: &Constants) -> bool {
        self.field_strength < 0.01 * constants.internal_field()
    }
}

/// A magnetic pole strength, with its dimensionless coupling cached.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MagneticCharge {
    /// Pole strength g in Gaussian charge units (signed).
    pub pole_strength: f64,
    /// The dimensionless combination eg/ħc (signed).
    pub coupling: f64,
    /// The integer the charge was solved for: the principal quantum number
    /// for the Stark-state route, the quantization index for the Dirac
    /// route; `None` for ad-hoc pole strengths.
    pub derived_for: Option<u32>,
}

impl MagneticCharge {
    /// Wrap an arbitrary (finite, signed) pole strength.
    pub fn from_pole_strength(pole_strength: f64, constants: &Constants) -> Self {
        Self {
            pole_strength,
            coupling: constants.charge_coupling(pole_strength),
            derived_for: None,
        }
    }

    /// The same charge scaled by `factor` (e.g. −1 for the mirror beam).
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            pole_strength: factor * self.pole_strength,
            coupling: factor * self.coupling,
            derived_for: None,
        }
    }
}

/// Per-unit-(n₁−n₂), per-unit-field coefficient of the conventional linear
/// Stark shift: (3/2)·n·e·a₀.
fn conventional_shift_coefficient(n: u32, constants: &Constants) -> f64 {
    1.5 * f64::from(n) * constants.elementary_charge * constants.bohr_radius
}

/// Per-unit-(n₁−n₂), per-unit-field coefficient of the monopole-route closed
/// form: e·g²·λ̄/(2ħc·n).
fn monopole_shift_coefficient(n: u32, pole_strength: f64, constants: &Constants) -> f64 {
    constants.elementary_charge * pole_strength * pole_strength * constants.compton_wavelength
        / (2.0 * constants.hbar * constants.speed_of_light * f64::from(n))
}

/// Solve for the pole strength that makes the monopole-route closed-form
/// Stark shift equal the conventional one at principal quantum number n.
///
/// Equating the two per-asymmetry coefficients gives
/// g² = 3n²·a₀·ħc/λ̄, i.e. the dimensionless coupling eg/ħc = √3·n — obtained
/// here numerically from the implemented coefficients rather than from the
/// reduced formula, so the algebra is genuinely re-derived on every call.
pub fn solve_magnetic_charge(n: u32, constants: &Constants) -> Result<MagneticCharge> {
    if n == 0 || n > MAX_PRINCIPAL {
        return Err(Error::PrincipalOutOfRange {
            n,
            max: MAX_PRINCIPAL,
        });
    }
    let conventional = conventional_shift_coefficient(n, constants);
    // conventional = e·g²·λ̄/(2ħc·n)  ⇒  g² = conventional·2ħc·n/(e·λ̄)
    let g_squared = conventional * 2.0 * constants.hbar * constants.speed_of_light
        * f64::from(n)
        / (constants.elementary_charge * constants.compton_wavelength);
    let mut charge = MagneticCharge::from_pole_strength(g_squared.sqrt(), constants);
    charge.derived_for = Some(n);
    Ok(charge)
}

/// The Dirac–Saha quantization: the k-th charge with eg/ħc = k/2.
pub fn dirac_charge(k: u32, constants: &Constants) -> Result<MagneticCharge> {
    if k == 0 {
        return Err(Error::NonPositive {
            name: "quantization index",
            value: 0.0,
        });
    }
    let coupling = 0.5 * f64::from(k);
    let mut charge = MagneticCharge::from_pole_strength(
        coupling * constants.hbar * constants.speed_of_light / constants.elementary_charge,
        constants,
    );
    charge.derived_for = Some(k);
    Ok(charge)
}

/// An electric dipole moment vector (charge·length components).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DipoleVector {
    /// x-component.
    pub x: f64,
    /// y-component.
    pub y: f64,
    /// z-component.
    pub z: f64,
}

/// R²·e^{+(ξ+η)/s}: the probability-density radial factor with the rule's
/// weight divided out, ready for [`QuadratureRule`] integration.
fn weighted_density(
    qn: &QuantumNumbers,
    rule: &QuadratureRule,
    constants: &Constants,
) -> impl Fn(f64, f64) -> f64 {
    let q = *qn;
    let c = *constants;
    let residual =
        1.0 / rule.scale() - 1.0 / (f64::from(qn.principal()) * constants.bohr_radius);
    move |xi, eta| {
        let p = hydrogen::radial_polynomial(&q, xi, eta, &c);
        p * p * ((xi + eta) * residual).exp()
    }
}

/// The conventional dipole moment d = e·⟨r⟩ by quadrature.
///
/// Convention: d uses the charge *magnitude* e, so the interaction energy
/// with a field ℰẑ is ΔE = +d_z·ℰ (the electron's charge is −e; the two
/// signs cancel).  x- and y-components vanish by azimuthal symmetry and are
/// returned as exact zeros.
pub fn electric_dipole_conventional(
    qn: &QuantumNumbers,
    rule: &QuadratureRule,
    constants: &Constants,
) -> Result<DipoleVector> {
    let z = hydrogen::z_expectation(qn, rule, constants)?;
    Ok(DipoleVector {
        x: 0.0,
        y: 0.0,
        z: constants.elementary_charge * z,
    })
}

/// Closed form of the conventional dipole's z-component,
/// (3/2)·n·(n₁−n₂)·e·a₀.
pub fn dipole_closed_form_z(qn: &QuantumNumbers, constants: &Constants) -> f64 {
    constants.elementary_charge * hydrogen::z_expectation_closed(qn, constants)
}

/// The magnetic-current density J = g·L/(mₑc·r) evaluated as an expectation
/// density in state `qn` at `point`, returned in Cartesian components.
///
/// For an azimuthal eigenstate e^{imφ} the angular-momentum density is
/// ħm|ψ|²·(ẑ − (z/ρ)·ρ̂): a z-component plus an inward/outward cylindrical
/// component, with *no* azimuthal part (this is an angular-momentum density,
/// not a convection current).  Its volume integral is ⟨L⟩ = ħm·ẑ.  m = 0
/// states carry no current at all.
pub fn magnetic_current(
    qn: &QuantumNumbers,
    charge: &MagneticCharge,
    point: &ParabolicPoint,
    constants: &Constants,
) -> Result<[f64; 3]> {
    let r = point.r();
    if r == 0.0 {
        return Err(Error::SingularOrigin);
    }
    if qn.m == 0 {
        return Ok([0.0, 0.0, 0.0]);
    }
    let density = hydrogen::wavefunction(qn, point, constants).norm_sqr();
    let scale = charge.pole_strength * constants.hbar * f64::from(qn.m) * density
        / (constants.electron_mass * constants.speed_of_light * r);
    let rho = point.rho();
    // ẑ − (z/ρ)·ρ̂; on the axis the |ψ|² ∝ ρ^{2|m|} factor has already
    // driven the density (and the whole vector) to zero.
    let radial = if rho == 0.0 { 0.0 } else { -point.z() / rho * scale };
    Ok([
        radial * point.phi.cos(),
        radial * point.phi.sin(),
        scale,
    ])
}

/// The dual-route dipole moment d = ½∫r×J dV, evaluated as the dressed-state
/// expectation of the corresponding operator.
///
/// Reducing ½·r×(g·L/(mₑc·r)) to parabolic coordinates and letting the
/// antisymmetrized derivative act on the string phase exp(i·(eg/ħc)·ln ξη)
/// leaves the z-integrand ¼(ξ+η)·[(ξ−η)/(ξ+η)]·R²·(eg²λ̄/ħc) — the operator's
/// ξη/(ξ+η) kernel times the phase gradient (1/ξ − 1/η).  The result is
/// (eg²λ̄/ħc)·⟨cos θ⟩, quadratic in the pole strength.  x/y vanish by
/// symmetry.
pub fn dipole_from_magnetic_current(
    qn: &QuantumNumbers,
    charge: &MagneticCharge,
    rule: &QuadratureRule,
    constants: &Constants,
) -> Result<DipoleVector> {
    let density = weighted_density(qn, rule, constants);
    // ¼(ξ+η)·(ξη/(ξ+η))·(1/η − 1/ξ) · R², written as the literal kernel
    // chain; quadrature nodes are strictly interior so no division degenerates.
    let kernel = move |xi: f64, eta: f64| {
        0.25 * (xi + eta) * (xi * eta / (xi + eta)) * (1.0 / eta - 1.0 / xi) * density(xi, eta)
    };
    let integral = rule.integrate_quadrant(kernel)?;
    let prefactor = constants.elementary_charge
        * charge.pole_strength
        * charge.pole_strength
        * constants.compton_wavelength
        / (constants.hbar * constants.speed_of_light);
    Ok(DipoleVector {
        x: 0.0,
        y: 0.0,
        z: prefactor * integral,
    })
}

/// Outcome of matching the two dipole definitions on one state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DipoleIdentityReport {
    /// The state the identity was solved on.
    pub state: QuantumNumbers,
    /// Conventional-route z-dipole e⟨z⟩ (quadrature).
    pub dipole_conventional_z: f64,
    /// Dual-route z-dipole at the residual-zeroing pole strength (quadrature).
    pub dipole_from_current_z: f64,
    /// |conventional − dual| / |conventional| at that pole strength.
    pub residual: f64,
    /// The pole strength g* that zeroes the residual.
    pub residual_zeroing_pole_strength: f64,
    /// Dimensionless coupling eg*/ħc of the residual-zeroing charge
    /// (evaluates to √(3/2)·n).
    pub residual_zeroing_coupling: f64,
    /// Coupling from the closed-form Stark-shift route (√3·n), for
    /// comparison; the two routes weight the dipole integrand differently
    /// and genuinely disagree by the factor √2.
    pub closed_form_coupling: f64,
    /// Surface-term decay diagnostic: radially averaged density profile at
    /// the check radius, as a fraction of its peak.
    pub surface_decay_ratio: f64,
    /// The check radius in units of a₀ (40 by convention).
    pub surface_decay_radius_over_a0: f64,
}

/// Radial profile used for the surface-term decay check:
/// S(r) = r · (angular mean of |ψ|² over the sphere of radius r).
fn surface_profile(qn: &QuantumNumbers, r: f64, constants: &Constants) -> f64 {
    // Simpson rule over u = cos θ ∈ [−1, 1]; the integrand is polynomial in
    // u times the fixed exponential e^{−r/(n a₀)/…}, so 128 panels are ample.
    const PANELS: usize = 128;
    let h = 2.0 / PANELS as f64;
    let value = |u: f64| {
        let xi = r * (1.0 + u);
        let eta = r * (1.0 - u);
        let radial = hydrogen::radial_part(qn, xi.max(0.0), eta.max(0.0), constants);
        radial * radial / (2.0 * std::f64::consts::PI)
    };
    let mut sum = value(-1.0) + value(1.0);
    for k in 1..PANELS {
        let u = -1.0 + h * k as f64;
        sum += value(u) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    // Simpson total over length 2, then divide by the interval length for
    // the mean: (h/3)·Σ / 2.
    r * sum * h / 6.0
}

/// Ratio of the surface profile S(r) = r·⟨|ψ|²⟩_sphere at `radius` to its
/// peak over (0, radius].
///
/// Surface terms discarded when converting between the two dipole
/// definitions live on a sphere eventually taken to infinity; this ratio
/// quantifies how fast the integrand dies.  For n = 2 states it falls below
/// 1e-12 by r = 40·a₀.
pub fn surface_decay_ratio(
    qn: &QuantumNumbers,
    radius: f64,
    constants: &Constants,
) -> Result<f64> {
    if !radius.is_finite() || radius <= 0.0 {
        return Err(Error::NonPositive {
            name: "surface check radius",
            value: radius,
        });
    }
    const SCAN: usize = 2000;
    let mut peak = 0.0f64;
    for k in 1..=SCAN {
        let r = radius * k as f64 / SCAN as f64;
        peak = peak.max(surface_profile(qn, r, constants));
    }
    Ok(surface_profile(qn, radius, constants) / peak)
}

/// Match the two dipole definitions on `qn`: report the pole strength that
/// makes the dual route reproduce the conventional moment, the residual when
/// the dual route is re-evaluated at that strength, and the surface-decay
/// diagnostic justifying the integration-by-parts step that connects them.
pub fn dipole_identity(
    qn: &QuantumNumbers,
    rule: &QuadratureRule,
    constants: &Constants,
) -> Result<DipoleIdentityReport> {
    if qn.n1 == qn.n2 {
        return Err(Error::ZeroDipoleState { n1: qn.n1 });
    }
    let conventional = electric_dipole_conventional(qn, rule, constants)?.z;
    let cos_theta = hydrogen::cos_theta_expectation(qn, rule, constants)?;
    // dual(g) = (e g² λ̄/ħc)·⟨cos θ⟩  ⇒  g*² = conventional·ħc/(e·λ̄·⟨cos θ⟩).
    let g_star_squared = conventional * constants.hbar * constants.speed_of_light
        / (constants.elementary_charge * constants.compton_wavelength * cos_theta);
    let g_star = MagneticCharge::from_pole_strength(g_star_squared.sqrt(), constants);
    let dual = dipole_from_magnetic_current(qn, &g_star, rule, constants)?.z;
    let closed = solve_magnetic_charge(qn.principal(), constants)?;
    let surface = surface_decay_ratio(qn, 40.0 * constants.bohr_radius, constants)?;
    Ok(DipoleIdentityReport {
        state: *qn,
        dipole_conventional_z: conventional,
        dipole_from_current_z: dual,
        residual: (conventional - dual).abs() / conventional.abs(),
        residual_zeroing_pole_strength: g_star.pole_strength,
        residual_zeroing_coupling: g_star.coupling,
        closed_form_coupling: closed.coupling,
        surface_decay_ratio: surface,
        surface_decay_radius_over_a0: 40.0,
    })
}

/// Conventional linear Stark shift ΔE = (3/2)·n·(n₁−n₂)·e·ℰ·a₀.
pub fn stark_shift_conventional(
    qn: &QuantumNumbers,
    stark: &StarkConfig,
    constants: &Constants,
) -> f64 {
    conventional_shift_coefficient(qn.principal(), constants)
        * (f64::from(qn.n1) - f64::from(qn.n2))
        * stark.field_strength
}

/// Closed form of the monopole-route Stark shift,
/// ΔE = (e·g²·λ̄·ℰ)/(2ħc) · (n₁−n₂)/n.
pub fn stark_shift_monopole_closed(
    qn: &QuantumNumbers,
    stark: &StarkConfig,
    charge: &MagneticCharge,
    constants: &Constants,
) -> f64 {
    monopole_shift_coefficient(qn.principal(), charge.pole_strength, constants)
        * (f64::from(qn.n1) - f64::from(qn.n2))
        * stark.field_strength
}

/// Which measure the monopole-route shift integral is taken under.
///
/// The source convention writes the g²-order integral ∫ψ²(ξ−η) over a flat
/// dξ dη sheet; the physically normalized expectation carries the full
/// volume element ¼(ξ+η) dξ dη dφ.  Both are legitimate reproductions of a
/// stated result and they scale differently with n, so both are implemented
/// and reported side by side rather than silently reconciled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MeasureMode {
    /// Flat dξ̂ dη̂ measure in Bohr-scaled coordinates (default; reproduces
    /// the (n₁−n₂)/n scaling of the quoted closed form, smaller by π).
    #[default]
    Flat,
    /// Full volume measure ¼(ξ̂+η̂) dξ̂ dη̂ dφ (yields the ⟨ξ−η⟩ = 3n(n₁−n₂)·a₀
    /// dipole scaling instead).
    Volume,
}

impl std::fmt::Display for MeasureMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MeasureMode::Flat => "flat",
            MeasureMode::Volume => "volume",
        })
    }
}

impl std::str::FromStr for MeasureMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "flat" => Ok(MeasureMode::Flat),
            "volume" => Ok(MeasureMode::Volume),
            other => Err(format!(
                "unknown measure mode {other:?}; expected \"flat\" or \"volume\""
            )),
        }
    }
}

/// Monopole-route Stark shift evaluated by quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonopoleShift {
    /// The g²-order energy shift under the chosen measure.
    pub shift: f64,
    /// Magnitude of the g-linear term (e·g·λ̄·ℰ/8 times its integral), which
    /// vanishes identically for real radial states.
    pub first_term_magnitude: f64,
    /// The measure the quadrature ran under.
    pub mode: MeasureMode,
}

/// Evaluate the monopole-route Stark shift
/// ΔE = (e·g²·λ̄·ℰ)/(4ħc) · ∫ ψ̂²(ξ̂−η̂) under the chosen measure,
/// in Bohr-scaled coordinates ξ̂ = ξ/a₀ with ψ̂² = a₀³|ψ|² (the only scaling
/// under which the flat-measure integral is dimensionless).
///
/// The integrand is the string-phase gradient (1/ξ − 1/η) contracted with
/// the interaction kernel ξη, i.e. ξη·(1/η − 1/ξ) = ξ−η.  The g-linear term
/// ∝ ∫ξη·(ψ ∂̄ψ) is also evaluated and reported: for a real radial factor
/// the antisymmetrized derivative ψ(∂ψ) − (∂ψ)ψ cancels pointwise, so the
/// quadrature confirms an identical zero rather than discovering a small
/// number.
pub fn stark_shift_monopole(
    qn: &QuantumNumbers,
    stark: &StarkConfig,
    charge: &MagneticCharge,
    rule: &QuadratureRule,
    constants: &Constants,
    mode: MeasureMode,
) -> Result<MonopoleShift> {
    let a0 = constants.bohr_radius;
    let density = weighted_density(qn, rule, constants);
    let two_pi = 2.0 * std::f64::consts::PI;
    let integral = match mode {
        // ∫dξ̂ dη̂ ψ̂²(ξ̂−η̂) = ∫dξ dη |ψ|²(ξ−η): already dimensionless.
        MeasureMode::Flat => {
            rule.integrate_quadrant(move |xi, eta| (xi - eta) * density(xi, eta) / two_pi)?
        }
        // ∫dV̂ ψ̂²(ξ̂−η̂) = ∫dξ dη ¼(ξ+η)(ξ−η) R² / a₀ (the φ integral cancels
        // the azimuthal normalization).
        MeasureMode::Volume => rule.integrate_quadrant(move |xi, eta| {
            0.25 * (xi + eta) * (xi - eta) * density(xi, eta) / a0
        })?,
    };
    let quadratic_prefactor = constants.elementary_charge
        * charge.pole_strength
        * charge.pole_strength
        * constants.compton_wavelength
        * stark.field_strength
        / (4.0 * constants.hbar * constants.speed_of_light);

    // g-linear term: ∫dξ̂ dη̂ ξ̂η̂ · (ψ̄ ∂̄ ψ̄) with ∂̄ the antisymmetrized
    // (∂_ξ − ∂_η); the products ψ(∂ψ) and (∂ψ)ψ are identical floats, so the
    // integrand is exactly zero at every node.
    let q = *qn;
    let c = *constants;
    let residual = 1.0 / rule.scale() - 1.0 / (f64::from(qn.principal()) * a0);
    let first_integral = rule.integrate_quadrant(move |xi, eta| {
        let value = hydrogen::radial_polynomial(&q, xi, eta, &c);
        let grad = hydrogen::radial_polynomial_dxi(&q, xi, eta, &c)
            - hydrogen::radial_polynomial_deta(&q, xi, eta, &c);
        #[allow(clippy::eq_op)]
        let antisymmetrized = value * grad - grad * value;
        xi * eta * antisymmetrized * ((xi + eta) * residual).exp() / two_pi
    })?;
    let first_term_magnitude = (charge.pole_strength
        * constants.compton_wavelength
        * stark.field_strength
        / 8.0
        * first_integral)
        .abs();

    Ok(MonopoleShift {
        shift: quadratic_prefactor * integral,
        first_term_magnitude,
        mode,
    })
}

/// A dressed Stark state: base wavefunction times the string phase
/// exp(i·(eg/ħc)·F − iMφ) with F = ln(ξη/a₀²).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DressedState {
    /// The undressed bound state.
    pub base: QuantumNumbers,
    /// The attached magnetic charge.
    pub charge: MagneticCharge,
    /// The azimuthal winding M removed by the dressing; chosen equal to the
    /// base state's m so the dressed state's φ-dependence sits entirely in
    /// the string phase.
    pub magnetic_quantum_number: i32,
}

impl DressedState {
    /// Dress `base` with `charge`, cancelling its azimuthal phase (M = m).
    pub fn new(base: QuantumNumbers, charge: MagneticCharge) -> Self {
        Self {
            base,
            charge,
            magnetic_quantum_number: base.m,
        }
    }
}

/// Classify which branch of the string a vanishing coordinate sits on.
fn string_branch(xi: f64, eta: f64) -> Option<(&'static str, &'static str)> {
    if xi == 0.0 {
        Some(("negative z half-axis", "xi"))
    } else if eta == 0.0 {
        Some(("positive z half-axis", "eta"))
    } else {
        None
    }
}

/// The dressing phase exponent Θ(p) = (eg/ħc)·ln(ξη/a₀²) − M·φ.
///
/// Errors on the string (ξ = 0 or η = 0), where the logarithm diverges.
pub fn string_phase_exponent(
    state: &DressedState,
    point: &ParabolicPoint,
    constants: &Constants,
) -> Result<f64> {
    if let Some((half_axis, coordinate)) = string_branch(point.xi, point.eta) {
        return Err(Error::OnDiracString {
            half_axis,
            coordinate,
        });
    }
    let a0 = constants.bohr_radius;
    Ok(state.charge.coupling * (point.xi * point.eta / (a0 * a0)).ln()
        - f64::from(state.magnetic_quantum_number) * point.phi)
}

/// The dressed wavefunction Φ(p) = ψ(p)·exp(iΘ(p)).
///
/// |Φ| = |ψ| at every regular point; the phase exponent is logarithmically
/// singular exactly on the z-axis (ξ = 0 below the origin, η = 0 above it).
pub fn dressed_wavefunction(
    state: &DressedState,
    point: &ParabolicPoint,
    constants: &Constants,
) -> Result<Complex64> {
    let theta = string_phase_exponent(state, point, constants)?;
    Ok(hydrogen::wavefunction(&state.base, point, constants)
        * Complex64::from_polar(1.0, theta))
}

/// The two halves of the z-axis on which the dressing phase is singular.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StringBranch {
    /// ξ = 0, i.e. the half-line z < 0.
    NegativeZ,
    /// η = 0, i.e. the half-line z > 0.
    PositiveZ,
}

/// Build a geometric ladder of probe points approaching one string branch:
/// the approach coordinate runs from a₀/10 down through `decades` decades
/// with `per_decade` logarithmic substeps, at fixed other coordinate and φ.
pub fn axis_approach_probes(
    branch: StringBranch,
    other_coordinate: f64,
    phi: f64,
    decades: u32,
    per_decade: usize,
    constants: &Constants,
) -> Result<Vec<ParabolicPoint>> {
    if !other_coordinate.is_finite() || other_coordinate <= 0.0 {
        return Err(Error::NonPositive {
            name: "fixed coordinate of the probe ladder",
            value: other_coordinate,
        });
    }
    if decades == 0 || per_decade == 0 {
        return Err(Error::NonPositive {
            name: "probe ladder resolution",
            value: 0.0,
        });
    }
    let a0 = constants.bohr_radius;
    let count = decades as usize * per_decade;
    let mut probes = Vec::with_capacity(count + 1);
    for i in 0..=count {
        let exponent = 1.0 + i as f64 / per_decade as f64;
        let approach = a0 * 10f64.powf(-exponent);
        let point = match branch {
            StringBranch::NegativeZ => ParabolicPoint::new(approach, other_coordinate, phi)?,
            StringBranch::PositiveZ => ParabolicPoint::new(other_coordinate, approach, phi)?,
        };
        probes.push(point);
    }
    Ok(probes)
}

/// Measured logarithmic divergence of the dressing phase on one half-axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AxisDivergence {
    /// The parabolic coordinate that vanishes on this branch.
    pub coordinate: &'static str,
    /// The half of the z-axis this branch occupies.
    pub half_axis: &'static str,
    /// Fitted slope of the unwrapped phase against ln(coordinate/a₀);
    /// equals eg/ħc when the phase diverges logarithmically.
    pub slope: f64,
    /// Root-mean-square residual of the linear fit (diagnoses bad probes).
    pub fit_rms: f64,
    /// Number of probes used in the fit.
    pub samples: usize,
}

/// String-singularity classification for both half-axes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StringReport {
    /// Divergence measured on ξ → 0 (the z < 0 half-line).
    pub negative_z: AxisDivergence,
    /// Divergence measured on η → 0 (the z > 0 half-line).
    pub positive_z: AxisDivergence,
    /// The coupling eg/ħc both slopes should equal.
    pub expected_coupling: f64,
}

/// Unwrap principal phases into a continuous sequence (true steps must stay
/// below π in magnitude, which the probe ladders guarantee).
fn unwrap_phases(principal: &[f64]) -> Vec<f64> {
    let two_pi = std::f64::consts::TAU;
    let mut out = Vec::with_capacity(principal.len());
    for (i, &p) in principal.iter().enumerate() {
        if i == 0 {
            out.push(p);
            continue;
        }
        let mut step = p - principal[i - 1];
        step -= two_pi * (step / two_pi).round();
        out.push(out[i - 1] + step);
    }
    out
}

/// Least-squares slope and rms residual of y against x.
fn fit_slope(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mean_x = x.iter().sum::<f64>() / n;
    let mean_y = y.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        sxx += (xi - mean_x) * (xi - mean_x);
        sxy += (xi - mean_x) * (yi - mean_y);
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let mut ss = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        let r = yi - (slope * xi + intercept);
        ss += r * r;
    }
    (slope, (ss / n).sqrt())
}

/// Measure the logarithmic phase divergence of a dressed state on both
/// string branches from a set of probe points.
///
/// Probes are classified by which coordinate is smaller (ξ < η approaches
/// the negative-z branch and vice versa); each branch needs at least two
/// probes.  The phase is *measured*, not assumed: the unit-modulus factor
/// Φ/ψ is evaluated at every probe, its principal argument unwrapped along
/// the approach, and a straight line fitted against ln(coordinate/a₀).  The
/// fitted slope equals eg/ħc on both branches.
pub fn string_singularity(
    state: &DressedState,
    probes: &[ParabolicPoint],
    constants: &Constants,
) -> Result<StringReport> {
    let mut xi_probes: Vec<ParabolicPoint> = Vec::new();
    let mut eta_probes: Vec<ParabolicPoint> = Vec::new();
    for p in probes {
        if p.xi < p.eta {
            xi_probes.push(*p);
        } else if p.eta < p.xi {
            eta_probes.push(*p);
        }
    }
    let measure = |group: &mut Vec<ParabolicPoint>,
                   coordinate: &'static str,
                   half_axis: &'static str|
     -> Result<AxisDivergence> {
        if group.len() < 2 {
            return Err(Error::MissingAxisProbes { coordinate });
        }
        // Sort along the approach (largest coordinate first) so unwrapping
        // walks continuously toward the axis.
        group.sort_by(|a, b| {
            let (ka, kb) = if coordinate == "xi" {
                (a.xi, b.xi)
            } else {
                (a.eta, b.eta)
            };
            kb.partial_cmp(&ka).expect("finite coordinates")
        });
        let mut lens = Vec::with_capacity(group.len());
        let mut principal = Vec::with_capacity(group.len());
        for p in group.iter() {
            let dressed = dressed_wavefunction(state, p, constants)?;
            let bare = hydrogen::wavefunction(&state.base, p, constants);
            let phase_factor = dressed / bare;
            principal.push(phase_factor.arg());
            let k = if coordinate == "xi" { p.xi } else { p.eta };
            lens.push((k / constants.bohr_radius).ln());
        }
        let unwrapped = unwrap_phases(&principal);
        let (slope, fit_rms) = fit_slope(&lens, &unwrapped);
        Ok(AxisDivergence {
            coordinate,
            half_axis,
            slope,
            fit_rms,
            samples: group.len(),
        })
    };
    let negative_z = measure(&mut xi_probes, "xi", "negative z half-axis")?;
    let positive_z = measure(&mut eta_probes, "eta", "positive z half-axis")?;
    Ok(StringReport {
        negative_z,
        positive_z,
        expected_coupling: state.charge.coupling,
    })
}

/// Self-adjointness bookkeeping for the radial factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseTermReport {
    /// a₀·∫dξ dη ∂_ξ(ξ·ψ̄²): the ξ-boundary flux of the weighted density,
    /// zero because ξψ̄² vanishes at both ends of the half-line.
    pub xi_boundary_flux: f64,
    /// The η counterpart.
    pub eta_boundary_flux: f64,
    /// Largest finite-difference residual of ∂_ξ(ξ·∂F/∂ξ) over the sample
    /// ladder, with F = ln(ξη/a₀²): ξ·(1/ξ) = 1, so the derivative is zero
    /// to machine precision.
    pub radial_identity_max_residual: f64,
}

/// Certify the step that removes the g-linear phase term from the dressed
/// eigenvalue problem.
///
/// Two facts are verified numerically.  First, the Sturm–Liouville boundary
/// fluxes ∫dξ dη ∂_ξ(ξψ̄²) and its η mirror vanish: the separation weight ξ
/// kills the inner boundary and the exponential kills infinity, so the
/// g-linear cross term integrates to a pure boundary value of zero.  (The
/// flux integrand is assembled from the analytic polynomial derivatives, so
/// Gauss–Laguerre integrates it exactly.)  Second, the string phase
/// F = ln(ξη/a₀²) satisfies ∂_ξ(ξ·∂F/∂ξ) = 0 pointwise — the property that
/// decouples the phase from the radial equation in the first place.
pub fn phase_term_expectation(
    qn: &QuantumNumbers,
    rule: &QuadratureRule,
    constants: &Constants,
) -> Result<PhaseTermReport> {
    let a0 = constants.bohr_radius;
    let s_state = f64::from(qn.principal()) * a0;
    let residual = 1.0 / rule.scale() - 1.0 / s_state;
    let two_pi = 2.0 * std::f64::consts::PI;

    // ∂_ξ(ξ R² e^{−(ξ+η)/s̄}) = [R²-polynomial part + 2ξ P ∂_ξP − ξP²/s̄]·e^{−…};
    // evaluated weight-factored so the quadrature sees pure polynomials.
    let q = *qn;
    let c = *constants;
    let flux = |along_xi: bool| {
        rule.integrate_quadrant(move |xi, eta| {
            let p = hydrogen::radial_polynomial(&q, xi, eta, &c);
            let dp = if along_xi {
                hydrogen::radial_polynomial_dxi(&q, xi, eta, &c)
            } else {
                hydrogen::radial_polynomial_deta(&q, xi, eta, &c)
            };
            let coord = if along_xi { xi } else { eta };
            (p * p + 2.0 * coord * p * dp - coord * p * p / s_state)
                * ((xi + eta) * residual).exp()
                / two_pi
                * a0
        })
    };
    let xi_boundary_flux = flux(true)?;
    let eta_boundary_flux = flux(false)?;

    // F-gradient identity by central differences of ξ·(∂F/∂ξ) = ξ·(1/ξ).
    let mut radial_identity_max_residual = 0.0f64;
    for k in 0..16 {
        let xi = a0 * 0.1 * 1.6f64.powi(k);
        let h = xi / 100.0;
        let product = |x: f64| x * (1.0 / x);
        let derivative = (product(xi + h) - product(xi - h)) / (2.0 * h);
        radial_identity_max_residual = radial_identity_max_residual.max(derivative.abs() * a0);
    }

    Ok(PhaseTermReport {
        xi_boundary_flux,
        eta_boundary_flux,
        radial_identity_max_residual,
    })
}

/// Everything the charge pipeline produces for one principal quantum number,
/// in one serializable record.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChargeReport {
    /// Principal quantum number the charge was solved for.
    pub principal: u32,
    /// Reference state (0, n−1, 0) used for the state-dependent entries.
    pub state: QuantumNumbers,
    /// Measure convention used for the quadrature shift.
    pub measure_mode: MeasureMode,
    /// Applied field strength.
    pub field_strength: f64,
    /// Whether that field is safely perturbative (< 1% of e/a₀²).
    pub perturbative: bool,
    /// Solved pole strength g.
    pub pole_strength: f64,
    /// Dimensionless coupling eg/ħc.
    pub coupling: f64,
    /// coupling − √3·n (signed); zero to rounding when the algebra holds.
    pub coupling_deviation_from_sqrt3n: f64,
    /// coupling divided by the smallest Dirac coupling 1/2.
    pub dirac_ratio: f64,
    /// Conventional dipole z-component of the reference state (quadrature);
    /// `None` when the reference state carries no dipole (n = 1).
    pub dipole_conventional_z: Option<f64>,
    /// Dual-route dipole z-component at the residual-zeroing charge.
    pub dipole_from_current_z: Option<f64>,
    /// Relative residual between the two dipole routes at that charge.
    pub identity_residual: Option<f64>,
    /// Coupling eg*/ħc of the residual-zeroing charge (√(3/2)·n).
    pub identity_coupling: Option<f64>,
    /// Conventional Stark shift of the reference state.
    pub shift_conventional: f64,
    /// Monopole-route shift by quadrature under `measure_mode`.
    pub shift_monopole_quadrature: f64,
    /// Monopole-route closed form.
    pub shift_monopole_closed: f64,
    /// Quadrature/closed ratio (1/π flat, (3/2)n² volume) — the documented
    /// bookkeeping gap between the conventions; `None` when both vanish.
    pub shift_ratio_quadrature_to_closed: Option<f64>,
    /// Magnitude of the g-linear term (identically zero).
    pub first_term_magnitude: f64,
    /// Surface-decay diagnostic at 40·a₀ for the reference state.
    pub surface_decay_ratio: Option<f64>,
}

/// Run the full charge pipeline for principal quantum number `n`:
/// solve the charge, compare dipole routes on the reference state (0, n−1, 0),
/// and evaluate both Stark-shift routes at `stark`.
pub fn charge_report(
    n: u32,
    stark: &StarkConfig,
    mode: MeasureMode,
    order: usize,
    constants: &Constants,
) -> Result<ChargeReport> {
    let charge = solve_magnetic_charge(n, constants)?;
    let state = QuantumNumbers::new(0, n - 1, 0)?;
    let rule = hydrogen::state_rule(&state, order, constants)?;
    let sqrt3n = 3f64.sqrt() * f64::from(n);

    let identity = if state.n1 == state.n2 {
        None
    } else {
        Some(dipole_identity(&state, &rule, constants)?)
    };
    let shift = stark_shift_monopole(&state, stark, &charge, &rule, constants, mode)?;
    let closed = stark_shift_monopole_closed(&state, stark, &charge, constants);
    let ratio = if closed == 0.0 {
        None
    } else {
        Some(shift.shift / closed)
    };

    Ok(ChargeReport {
        principal: n,
        state,
        measure_mode: mode,
        field_strength: stark.field_strength,
        perturbative: stark.is_perturbative(constants),
        pole_strength: charge.pole_strength,
        coupling: charge.coupling,
        coupling_deviation_from_sqrt3n: charge.coupling - sqrt3n,
        dirac_ratio: charge.coupling / 0.5,
        dipole_conventional_z: identity.map(|i| i.dipole_conventional_z),
        dipole_from_current_z: identity.map(|i| i.dipole_from_current_z),
        identity_residual: identity.map(|i| i.residual),
        identity_coupling: identity.map(|i| i.residual_zeroing_coupling),
        shift_conventional: stark_shift_conventional(&state, stark, constants),
        shift_monopole_quadrature: shift.shift,
        shift_monopole_closed: closed,
        shift_ratio_quadrature_to_closed: ratio,
        first_term_magnitude: shift.first_term_magnitude,
        surface_decay_ratio: identity.map(|i| i.surface_decay_ratio),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hydrogen::state_rule;
    use crate::units::UnitSystem;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn atomic() -> Constants {
        Constants::new(UnitSystem::Atomic)
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn solved_coupling_is_sqrt3_n_to_machine_precision() {
        for c in [atomic(), Constants::new(UnitSystem::GaussianCgs)] {
            for n in 1..=10u32 {
                let charge = solve_magnetic_charge(n, &c).unwrap();
                let expected = 3f64.sqrt() * f64::from(n);
                assert!(
                    rel(charge.coupling, expected) < 1e-12,
                    "n = {n}: coupling {} vs {expected}",
                    charge.coupling
                );
                assert_eq!(charge.derived_for, Some(n));
            }
        }
        assert!(solve_magnetic_charge(0, &atomic()).is_err());
        assert!(solve_magnetic_charge(11, &atomic()).is_err());
    }

    #[test]
    fn dirac_couplings_are_half_integers() {
        let c = atomic();
        assert!(rel(dirac_charge(1, &c).unwrap().coupling, 0.5) < 1e-15);
        assert!(rel(dirac_charge(2, &c).unwrap().coupling, 1.0) < 1e-15);
        assert!(dirac_charge(0, &c).is_err());
    }

    #[test]
    fn no_dirac_index_reproduces_the_stark_coupling() {
        // eg/ħc = √3·n is irrational, so it never lands on the half-integer
        // Dirac ladder; scan the first million rungs for every supported n.
        let c = atomic();
        for n in 1..=10u32 {
            let coupling = solve_magnetic_charge(n, &c).unwrap().coupling;
            let nearest = (2.0 * coupling).round() / 2.0;
            let mut best = (coupling - nearest).abs();
            for k in 1..=1_000_000u64 {
                let distance = (coupling - 0.5 * k as f64).abs();
                if distance < best {
                    best = distance;
                }
            }
            // The closest approach over all supported n is ≈ 0.0359 (n = 2,
            // where 2√3·2 ≈ 6.928 sits near 7); demand a clear gap.
            assert!(
                best > 0.01,
                "n = {n}: coupling {coupling} approaches a half-integer within {best}"
            );
        }
    }

    #[test]
    fn conventional_dipole_matches_the_closed_form_and_its_symmetries() {
        let c = atomic();
        let down = QuantumNumbers::new(0, 1, 0).unwrap();
        let up = QuantumNumbers::new(1, 0, 0).unwrap();
        let rule = state_rule(&down, 80, &c).unwrap();
        let d_down = electric_dipole_conventional(&down, &rule, &c).unwrap();
        let d_up = electric_dipole_conventional(&up, &rule, &c).unwrap();
        assert!(rel(d_down.z, -3.0) < 1e-10, "dz = {}", d_down.z);
        assert!(rel(d_up.z, 3.0) < 1e-10);
        assert!((d_down.z + d_up.z).abs() < 1e-12);
        assert_eq!((d_down.x, d_down.y), (0.0, 0.0));
        assert!(rel(dipole_closed_form_z(&down, &c), -3.0) < 1e-15);

        let balanced = QuantumNumbers::new(1, 1, 0).unwrap();
        let rule3 = state_rule(&balanced, 80, &c).unwrap();
        let d0 = electric_dipole_conventional(&balanced, &rule3, &c).unwrap();
        assert!(d0.z.abs() < 1e-12);
    }

    #[test]
    fn magnetic_current_has_the_angular_momentum_direction() {
        let c = atomic();
        let qn = QuantumNumbers::new(0, 0, 1).unwrap();
        let g = MagneticCharge::from_pole_strength(2.0, &c);

        // In the z = 0 plane (ξ = η) the density points along +z with
        // magnitude g·ħ·|ψ|²/(mₑ·c·r).
        let p = ParabolicPoint::new(2.0, 2.0, 0.4).unwrap();
        let j = magnetic_current(&qn, &g, &p, &c).unwrap();
        let psi2 = hydrogen::wavefunction(&qn, &p, &c).norm_sqr();
        let expected = g.pole_strength * c.hbar * psi2 / (c.electron_mass * c.speed_of_light * p.r());
        assert!(j[0].abs() < 1e-18 && j[1].abs() < 1e-18);
        assert!(rel(j[2], expected) < 1e-12);

        // Off the plane the cylindrical component −(z/ρ)ρ̂ appears.
        let p2 = ParabolicPoint::new(4.0, 1.0, 0.0).unwrap();
        let j2 = magnetic_current(&qn, &g, &p2, &c).unwrap();
        let ratio = j2[0] / j2[2];
        assert!(rel(ratio, -p2.z() / p2.rho()) < 1e-12, "ratio {ratio}");
        assert_eq!(j2[1], 0.0);

        // Linear in g.
        let j_double = magnetic_current(&qn, &g.scaled(2.0), &p2, &c).unwrap();
        for (a, b) in j_double.iter().zip(j2.iter()) {
            assert!(rel(*a, 2.0 * b) < 1e-14);
        }

        // m = 0 carries nothing; the origin is singular.
        let m0 = QuantumNumbers::new(0, 1, 0).unwrap();
        assert_eq!(magnetic_current(&m0, &g, &p, &c).unwrap(), [0.0; 3]);
        let origin = ParabolicPoint::new(0.0, 0.0, 0.0).unwrap();
        assert!(matches!(
            magnetic_current(&qn, &g, &origin, &c),
            Err(Error::SingularOrigin)
        ));
    }

    #[test]
    fn magnetic_current_volume_integral_recovers_the_angular_momentum() {
        // ∫ J_z dV = g·ħm/(mₑc)·⟨1/r⟩ with ⟨1/r⟩ = 1/(n²a₀).
        let c = atomic();
        let qn = QuantumNumbers::new(0, 0, 1).unwrap();
        let g = MagneticCharge::from_pole_strength(1.0, &c);
        let rule = state_rule(&qn, 80, &c).unwrap();
        // J_z·dV reduces to ½·scale·∫dξ dη R² with the 1/r cancelling half
        // of the volume weight.
        let q = qn;
        let cc = c;
        let density = weighted_density(&q, &rule, &cc);
        let integral = rule
            .integrate_quadrant(move |xi, eta| 0.5 * density(xi, eta))
            .unwrap();
        let lhs = g.pole_strength * c.hbar / (c.electron_mass * c.speed_of_light) * integral;
        let n = f64::from(qn.principal());
        let rhs = g.pole_strength * c.hbar / (c.electron_mass * c.speed_of_light)
            / (n * n * c.bohr_radius);
        assert!(rel(lhs, rhs) < 1e-10, "{lhs} vs {rhs}");
    }

    #[test]
    fn dual_route_dipole_is_quadratic_in_g_and_matches_its_reduction() {
        let c = atomic();
        let qn = QuantumNumbers::new(0, 1, 0).unwrap();
        let rule = state_rule(&qn, 80, &c).unwrap();

        let zero = MagneticCharge::from_pole_strength(0.0, &c);
        assert_eq!(
            dipole_from_magnetic_current(&qn, &zero, &rule, &c).unwrap().z,
            0.0
        );

        // With the n = 2 solved charge the dual route gives
        // (e g² λ̄/ħc)·(n₁−n₂)/n = 12·e·a₀·(−1/2) = −6·e·a₀.
        let g2 = solve_magnetic_charge(2, &c).unwrap();
        let d = dipole_from_magnetic_current(&qn, &g2, &rule, &c).unwrap();
        assert!(rel(d.z, -6.0) < 1e-8, "dz = {}", d.z);

        // Quadratic in g.
        let d4 = dipole_from_magnetic_current(&qn, &g2.scaled(2.0), &rule, &c).unwrap();
        assert!(rel(d4.z, 4.0 * d.z) < 1e-12);

        // Balanced states carry nothing.
        let balanced = QuantumNumbers::new(2, 2, 0).unwrap();
        let rule5 = state_rule(&balanced, 80, &c).unwrap();
        let db = dipole_from_magnetic_current(&balanced, &g2, &rule5, &c).unwrap();
        assert!(db.z.abs() < 1e-12);
    }

    #[test]
    fn dipole_identity_zeroes_its_residual_and_reports_both_couplings() {
        let c = atomic();
        let qn = QuantumNumbers::new(0, 1, 0).unwrap();
        let rule = state_rule(&qn, 80, &c).unwrap();
        let report = dipole_identity(&qn, &rule, &c).unwrap();

        assert!(report.residual < 1e-8, "residual {}", report.residual);
        assert!(rel(report.dipole_conventional_z, -3.0) < 1e-10);
        assert!(rel(report.dipole_from_current_z, -3.0) < 1e-8);
        // Identity route: eg*/ħc = √(3/2)·n = √6 for n = 2.
        assert!(
            rel(report.residual_zeroing_coupling, 6f64.sqrt()) < 1e-10,
            "identity coupling {}",
            report.residual_zeroing_coupling
        );
        // Closed-form route: √3·2.
        assert!(rel(report.closed_form_coupling, 2.0 * 3f64.sqrt()) < 1e-12);
        // Surface terms are dead by 40 a₀ (but not an underflow artifact).
        assert!(report.surface_decay_ratio < 1e-12);
        assert!(report.surface_decay_ratio > 1e-16);

        let balanced = QuantumNumbers::new(1, 1, 0).unwrap();
        assert!(matches!(
            dipole_identity(&balanced, &rule, &c),
            Err(Error::ZeroDipoleState { n1: 1 })
        ));
    }

    #[test]
    fn conventional_stark_shift_follows_the_dipole() {
        let c = atomic();
        let stark = StarkConfig::new(1e-4).unwrap();
        let qn = QuantumNumbers::new(0, 1, 0).unwrap();
        assert!(rel(stark_shift_conventional(&qn, &stark, &c), -3e-4) < 1e-12);

        // ΔE = +d_z·ℰ under the charge-magnitude dipole convention.
        let rule = state_rule(&qn, 80, &c).unwrap();
        let d = electric_dipole_conventional(&qn, &rule, &c).unwrap();
        assert!(rel(stark_shift_conventional(&qn, &stark, &c), d.z * 1e-4) < 1e-8);

        let balanced = QuantumNumbers::new(1, 1, 0).unwrap();
        assert_eq!(stark_shift_conventional(&balanced, &stark, &c), 0.0);

        let double = StarkConfig::new(2e-4).unwrap();
        assert!(
            rel(
                stark_shift_conventional(&qn, &double, &c),
                2.0 * stark_shift_conventional(&qn, &stark, &c)
            ) < 1e-15
        );

        assert!(StarkConfig::new(-1.0).is_err());
        assert!(StarkConfig::new(f64::NAN).is_err());
        assert!(StarkConfig::new(1e-4).unwrap().is_perturbative(&c));
        assert!(!StarkConfig::new(0.5).unwrap().is_perturbative(&c));
    }

    #[test]
    fn solved_charge_makes_the_two_closed_forms_agree() {
        let c = Constants::new(UnitSystem::GaussianCgs);
        let stark = StarkConfig::new(1e-3).unwrap();
        for n in 2..=6u32 {
            let qn = QuantumNumbers::new(0, n - 1, 0).unwrap();
            let g = solve_magnetic_charge(n, &c).unwrap();
            let conventional = stark_shift_conventional(&qn, &stark, &c);
            let monopole = stark_shift_monopole_closed(&qn, &stark, &g, &c);
            assert!(
                rel(monopole, conventional) < 1e-12,
                "n = {n}: {monopole} vs {conventional}"
            );
        }
    }

    #[test]
    fn quadrature_shift_reproduces_the_documented_measure_ratios() {
        let c = atomic();
        let stark = StarkConfig::new(1e-4).unwrap();
        let qn = QuantumNumbers::new(0, 1, 0).unwrap();
        let rule = state_rule(&qn, 80, &c).unwrap();
        let g = solve_magnetic_charge(2, &c).unwrap();
        let closed = stark_shift_monopole_closed(&qn, &stark, &g, &c);

        let flat = stark_shift_monopole(&qn, &stark, &g, &rule, &c, MeasureMode::Flat).unwrap();
        assert!(
            rel(flat.shift, closed / std::f64::consts::PI) < 1e-8,
            "flat {} vs closed/π {}",
            flat.shift,
            closed / std::f64::consts::PI
        );

        let volume =
            stark_shift_monopole(&qn, &stark, &g, &rule, &c, MeasureMode::Volume).unwrap();
        // Volume measure promotes the integral to 2⟨ẑ⟩: ratio (3/2)n² = 6.
        assert!(
            rel(volume.shift, 6.0 * closed) < 1e-8,
            "volume {} vs 6·closed {}",
            volume.shift,
            6.0 * closed
        );
    }

    #[test]
    fn quadrature_shift_symmetries_and_first_term() {
        let c = atomic();
        let stark = StarkConfig::new(1e-4).unwrap();
        let g = solve_magnetic_charge(2, &c).unwrap();

        for mode in [MeasureMode::Flat, MeasureMode::Volume] {
            let down = QuantumNumbers::new(0, 1, 0).unwrap();
            let up = QuantumNumbers::new(1, 0, 0).unwrap();
            let rule = state_rule(&down, 80, &c).unwrap();
            let s_down = stark_shift_monopole(&down, &stark, &g, &rule, &c, mode).unwrap();
            let s_up = stark_shift_monopole(&up, &stark, &g, &rule, &c, mode).unwrap();
            assert!((s_down.shift + s_up.shift).abs() < 1e-12 * s_down.shift.abs());

            let balanced = QuantumNumbers::new(1, 1, 0).unwrap();
            let rule3 = state_rule(&balanced, 80, &c).unwrap();
            let s0 = stark_shift_monopole(&balanced, &stark, &g, &rule3, &c, mode).unwrap();
            assert!(s0.shift.abs() < 1e-12);

            // Quadratic in g, linear in ℰ.
            let s_double_g =
                stark_shift_monopole(&down, &stark, &g.scaled(2.0), &rule, &c, mode).unwrap();
            assert!(rel(s_double_g.shift, 4.0 * s_down.shift) < 1e-12);
            let double_field = StarkConfig::new(2e-4).unwrap();
            let s_double_f =
                stark_shift_monopole(&down, &double_field, &g, &rule, &c, mode).unwrap();
            assert!(rel(s_double_f.shift, 2.0 * s_down.shift) < 1e-12);

            // The g-linear term cancels pointwise for every tested state.
            for qn in [down, up, balanced, QuantumNumbers::new(0, 1, 1).unwrap()] {
                let r = state_rule(&qn, 80, &c).unwrap();
                let s = stark_shift_monopole(&qn, &stark, &g, &r, &c, mode).unwrap();
                assert!(
                    s.first_term_magnitude < 1e-10,
                    "{qn}: first term {}",
                    s.first_term_magnitude
                );
            }
        }
    }

    #[test]
    fn dressed_wavefunction_keeps_the_modulus_and_knows_its_string() {
        let c = atomic();
        let base = QuantumNumbers::new(0, 1, 0).unwrap();
        let charge = solve_magnetic_charge(2, &c).unwrap();
        let ds = DressedState::new(base, charge);

        // Unit-modulus dressing at 10⁴ seeded random regular points.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5741524b);
        for _ in 0..10_000 {
            let p = ParabolicPoint::new(
                rng.gen_range(1e-6..30.0),
                rng.gen_range(1e-6..30.0),
                rng.gen_range(-3.2..3.2),
            )
            .unwrap();
            let dressed = dressed_wavefunction(&ds, &p, &c).unwrap();
            let bare = hydrogen::wavefunction(&base, &p, &c);
            assert!(
                (dressed.norm() - bare.norm()).abs() <= 4.0 * f64::EPSILON * bare.norm(),
                "modulus changed at ({}, {})",
                p.xi,
                p.eta
            );
        }

        // Where ξη = a₀² the log vanishes and only the −Mφ winding remains.
        let p = ParabolicPoint::new(4.0, 0.25, 0.7).unwrap();
        let m1 = QuantumNumbers::new(0, 0, 1).unwrap();
        let ds_m1 = DressedState::new(m1, charge);
        let theta = string_phase_exponent(&ds_m1, &p, &c).unwrap();
        assert!((theta - (-0.7)).abs() < 1e-12, "theta = {theta}");

        // Zero charge and zero winding leave the state untouched.
        let ds0 = DressedState::new(base, MagneticCharge::from_pole_strength(0.0, &c));
        let q = ParabolicPoint::new(2.0, 3.0, 1.1).unwrap();
        let same = dressed_wavefunction(&ds0, &q, &c).unwrap();
        assert_eq!(same, hydrogen::wavefunction(&base, &q, &c));

        // The string itself is out of bounds, with the branch named.
        let on_xi = ParabolicPoint::new(0.0, 2.0, 0.0).unwrap();
        assert!(matches!(
            dressed_wavefunction(&ds, &on_xi, &c),
            Err(Error::OnDiracString { coordinate: "xi", .. })
        ));
        let on_eta = ParabolicPoint::new(2.0, 0.0, 0.0).unwrap();
        assert!(matches!(
            dressed_wavefunction(&ds, &on_eta, &c),
            Err(Error::OnDiracString { coordinate: "eta", .. })
        ));
    }

    #[test]
    fn string_divergence_slope_measures_the_coupling_on_both_branches() {
        let c = atomic();
        let base = QuantumNumbers::new(0, 1, 0).unwrap();
        let charge = solve_magnetic_charge(2, &c).unwrap();
        let ds = DressedState::new(base, charge);

        let mut probes =
            axis_approach_probes(StringBranch::NegativeZ, 2.5, 0.3, 7, 256, &c).unwrap();
        probes.extend(axis_approach_probes(StringBranch::PositiveZ, 2.5, 0.3, 7, 256, &c).unwrap());
        let report = string_singularity(&ds, &probes, &c).unwrap();

        assert!(
            (report.negative_z.slope - charge.coupling).abs() < 1e-6,
            "xi slope {} vs {}",
            report.negative_z.slope,
            charge.coupling
        );
        assert!((report.positive_z.slope - charge.coupling).abs() < 1e-6);
        assert!((report.negative_z.slope - report.positive_z.slope).abs() < 1e-9);
        assert!(report.negative_z.fit_rms < 1e-9);
        assert_eq!(report.negative_z.half_axis, "negative z half-axis");
        assert_eq!(report.positive_z.half_axis, "positive z half-axis");

        // Zero charge: no divergence on either branch.
        let ds0 = DressedState::new(base, MagneticCharge::from_pole_strength(0.0, &c));
        let flat = string_singularity(&ds0, &probes, &c).unwrap();
        assert!(flat.negative_z.slope.abs() < 1e-9);
        assert!(flat.positive_z.slope.abs() < 1e-9);

        // Probes hugging only one branch cannot classify the other.
        let one_sided =
            axis_approach_probes(StringBranch::NegativeZ, 2.5, 0.0, 3, 16, &c).unwrap();
        assert!(matches!(
            string_singularity(&ds, &one_sided, &c),
            Err(Error::MissingAxisProbes { coordinate: "eta" })
        ));
    }

    #[test]
    fn phase_term_fluxes_vanish_for_bound_states() {
        let c = atomic();
        for (n1, n2, m) in [(0, 0, 0), (0, 1, 0), (2, 1, 0), (1, 0, 2)] {
            let qn = QuantumNumbers::new(n1, n2, m).unwrap();
            let rule = state_rule(&qn, 80, &c).unwrap();
            let report = phase_term_expectation(&qn, &rule, &c).unwrap();
            assert!(
                report.xi_boundary_flux.abs() < 1e-10,
                "{qn}: xi flux {}",
                report.xi_boundary_flux
            );
            assert!(report.eta_boundary_flux.abs() < 1e-10);
            assert!(report.radial_identity_max_residual < 1e-12);
        }
    }

    #[test]
    fn charge_report_collects_consistent_numbers() {
        let c = atomic();
        let stark = StarkConfig::new(1e-4).unwrap();
        let report = charge_report(2, &stark, MeasureMode::Flat, 80, &c).unwrap();
        assert!(rel(report.coupling, 2.0 * 3f64.sqrt()) < 1e-12);
        assert!(report.coupling_deviation_from_sqrt3n.abs() < 1e-12);
        assert!(rel(report.dirac_ratio, 4.0 * 3f64.sqrt()) < 1e-12);
        assert!(rel(report.identity_coupling.unwrap(), 6f64.sqrt()) < 1e-8);
        assert!(report.identity_residual.unwrap() < 1e-8);
        assert!(
            rel(
                report.shift_ratio_quadrature_to_closed.unwrap(),
                1.0 / std::f64::consts::PI
            ) < 1e-8
        );
        assert!(report.perturbative);

        let ground = charge_report(1, &stark, MeasureMode::Volume, 80, &c).unwrap();
        assert!(ground.dipole_conventional_z.is_none());
        assert!(ground.identity_residual.is_none());
        assert_eq!(ground.shift_conventional, 0.0);

        // The record round-trips through serialization for the CLI.
        let json = serde_json::to_string(&report).unwrap();
        let back: ChargeReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn exchange_flips_every_signed_quantity(
            n1 in 0u32..3,
            n2 in 0u32..3,
            m in 0i32..2,
        ) {
            prop_assume!(n1 != n2);
            let c = atomic();
            let qn = QuantumNumbers::new(n1, n2, m).unwrap();
            prop_assume!(qn.principal() <= 5);
            let swapped = qn.exchanged();
            let rule = state_rule(&qn, 80, &c).unwrap();
            let stark = StarkConfig::new(1e-4).unwrap();
            let g = solve_magnetic_charge(qn.principal(), &c).unwrap();

            let d = electric_dipole_conventional(&qn, &rule, &c).unwrap().z;
            let ds = electric_dipole_conventional(&swapped, &rule, &c).unwrap().z;
            prop_assert!((d + ds).abs() < 1e-10 * d.abs().max(1e-6));

            let s = stark_shift_monopole(&qn, &stark, &g, &rule, &c, MeasureMode::Flat)
                .unwrap()
                .shift;
            let ss = stark_shift_monopole(&swapped, &stark, &g, &rule, &c, MeasureMode::Flat)
                .unwrap()
                .shift;
            prop_assert!((s + ss).abs() < 1e-10 * s.abs().max(1e-20));

            let c1 = stark_shift_conventional(&qn, &stark, &c);
            let c2 = stark_shift_conventional(&swapped, &stark, &c);
            prop_assert!((c1 + c2).abs() < 1e-15 * c1.abs().max(1e-20));
        }

        #[test]
        fn balanced_states_shift_nowhere(m in 0i32..3, n_pair in 0u32..2) {
            let c = atomic();
            let qn = QuantumNumbers::new(n_pair, n_pair, m).unwrap();
            prop_assume!(qn.principal() <= 5);
            let rule = state_rule(&qn, 80, &c).unwrap();
            let stark = StarkConfig::new(1e-4).unwrap();
            let g = solve_magnetic_charge(qn.principal(), &c).unwrap();
            prop_assert!(electric_dipole_conventional(&qn, &rule, &c).unwrap().z.abs() < 1e-10);
            prop_assert_eq!(stark_shift_conventional(&qn, &stark, &c), 0.0);
            let s = stark_shift_monopole(&qn, &stark, &g, &rule, &c, MeasureMode::Volume)
                .unwrap();
            prop_assert!(s.shift.abs() < 1e-12);
        }
    }
}
