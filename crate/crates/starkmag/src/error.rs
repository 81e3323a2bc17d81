//! Error type shared by every module in the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong when driving the laboratory.
///
/// Domain violations (bad quantum numbers, points outside the coordinate
/// patch, degenerate detectors) are reported before any arithmetic runs;
/// numerical failures (non-finite integrands, unresolved crossings) carry
/// enough context to locate the offending sample.
#[derive(Debug, thiserror::Error)]
#[non_exhaustive]
pub enum Error {
    /// A strictly positive quantity was zero, negative, or non-finite.
    #[error("{name} must be positive and finite, got {value}")]
    NonPositive {
        /// Human-readable name of the offending quantity.
        name: &'static str,
        /// The rejected value.
        value: f64,
    },

    /// Principal quantum number outside the supported bound-state range.
    #[error("principal quantum number n = {n} outside supported range 1..={max}")]
    PrincipalOutOfRange {
        /// n = n1 + n2 + |m| + 1 as requested.
        n: u32,
        /// Largest n the numerics are validated for.
        max: u32,
    },

    /// Parabolic coordinates must satisfy ξ ≥ 0 and η ≥ 0.
    #[error("parabolic coordinates need xi >= 0 and eta >= 0, got xi = {xi}, eta = {eta}")]
    InvalidParabolicPoint {
        /// Offending ξ.
        xi: f64,
        /// Offending η.
        eta: f64,
    },

    /// Quadrature order below the supported minimum.
    #[error("quadrature order {order} too coarse; need at least {min} nodes per axis")]
    QuadratureOrder {
        /// Requested order.
        order: usize,
        /// Minimum accepted order.
        min: usize,
    },

    /// The Golub–Welsch eigenvalue iteration failed to converge.
    #[error("quadrature rule construction failed to converge at order {order}")]
    QuadratureConvergence {
        /// Requested order.
        order: usize,
    },

    /// An integrand evaluated to NaN or ±∞ at a quadrature node.
    #[error("integrand not finite at node (xi = {xi}, eta = {eta}): value {value}")]
    NonFiniteIntegrand {
        /// ξ coordinate of the offending node.
        xi: f64,
        /// η coordinate of the offending node.
        eta: f64,
        /// The non-finite value produced there.
        value: f64,
    },

    /// Finite-difference evaluation needs a strictly interior point.
    #[error(
        "finite-difference step h = {h} needs an interior point with xi, eta > 2h; \
         got xi = {xi}, eta = {eta}"
    )]
    FiniteDifferenceDomain {
        /// Step size.
        h: f64,
        /// ξ of the requested point.
        xi: f64,
        /// η of the requested point.
        eta: f64,
    },

    /// The dressed state is singular on the Dirac string.
    #[error("point lies on the Dirac string along the {half_axis} (where {coordinate} = 0)")]
    OnDiracString {
        /// Which half of the z-axis the string occupies at this point.
        half_axis: &'static str,
        /// Which parabolic coordinate vanished.
        coordinate: &'static str,
    },

    /// An operator density with a 1/r factor was evaluated at r = 0.
    #[error("density is singular at the coordinate origin (r = 0)")]
    SingularOrigin,

    /// A time argument must be non-negative.
    #[error("time must be non-negative, got {t}")]
    NegativeTime {
        /// The rejected time value.
        t: f64,
    },

    /// A string-singularity probe set never comes close to the named axis.
    #[error("probe set never approaches the {coordinate} = 0 axis; cannot fit a divergence slope")]
    MissingAxisProbes {
        /// The coordinate whose axis lacks probes.
        coordinate: &'static str,
    },

    /// Both dipole routes vanish identically, so no charge zeroes the residual.
    #[error("dipole identity residual undefined: n1 = n2 = {n1} makes both dipole routes vanish")]
    ZeroDipoleState {
        /// The common value of n1 and n2.
        n1: u32,
    },

    /// Charge oscillation needs an excited level.
    #[error("no oscillation between n = {n} and the ground level; need n >= 2")]
    NoTransition {
        /// The requested principal quantum number.
        n: u32,
    },

    /// The dual Lorentz force law implemented here is nonrelativistic.
    #[error("beam speed {speed} exceeds the nonrelativistic guard {limit} (1% of c)")]
    RelativisticBeam {
        /// Speed that tripped the guard.
        speed: f64,
        /// The guard value 0.01·c in the active units.
        limit: f64,
    },

    /// A trajectory never reached the requested measurement plane.
    #[error("trajectory never crosses the plane z = {plane_z}")]
    NoPlaneCrossing {
        /// The plane that was never crossed.
        plane_z: f64,
    },

    /// Two ring-plane crossings landed in adjacent integration steps.
    #[error(
        "trajectory sampling too coarse near t = {t} (step {index}): \
         consecutive segments both cross the ring plane"
    )]
    CrossingUnresolved {
        /// Index of the second offending segment.
        index: usize,
        /// Time at the start of that segment.
        t: f64,
    },

    /// A detector normal with zero length cannot define a plane.
    #[error("ring normal must have nonzero length")]
    DegenerateNormal,
}
