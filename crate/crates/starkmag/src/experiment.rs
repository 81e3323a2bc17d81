//! Beam-line simulation: fabricating and detecting the magnetic charge.
//!
//! The proposed experiment, end to end:
//!
//! 1. **Excitation.** Hydrogen atoms absorb two photons of a frequency-
//!    doubled dye laser (2430 Å), reaching the n = 2 shell where the two
//!    extreme Stark states carry opposite magnetic charge ±g.
//! 2. **Deflection.** The beam traverses a region of uniform electrostatic
//!    field.  A magnetic charge in an electric field feels the dual of the
//!    Lorentz force, F = −(g/c)·v×E: always perpendicular to the velocity,
//!    so the two charge species bend into opposite circular arcs — the
//!    electric mirror image of cyclotron motion.
//! 3. **Detection.** Each separated beam threads a superconducting ring.  A
//!    monopole passing through the ring changes the linked flux by 4πg
//!    (Gaussian units) — a topological amount, independent of where or at
//!    what angle the disk is pierced — read out by a SQUID in units of the
//!    superconducting flux quantum πħc/e.
//!
//! Everything here is classical point-particle kinematics; the quantum
//! content enters only through the solved pole strength g.

use serde::{Deserialize, Serialize};

use crate::dynamics;
use crate::error::{Error, Result};
use crate::hydrogen;
use crate::monopole::{solve_magnetic_charge, MagneticCharge};
use crate::units::{photon_energy, Constants, UnitSystem, HYDROGEN_MASS_G};

// ---------------------------------------------------------------------------
// Small 3-vector helpers (module-private; no algebra crate is warranted for
// cross products and norms on fixed-size arrays).
// ---------------------------------------------------------------------------

fn add(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn scale(a: [f64; 3], s: f64) -> [f64; 3] {
    [a[0] * s, a[1] * s, a[2] * s]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn norm(a: [f64; 3]) -> f64 {
    dot(a, a).sqrt()
}

fn all_finite(a: [f64; 3]) -> bool {
    a.iter().all(|x| x.is_finite())
}

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// A monoenergetic beam of point particles carrying a magnetic charge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BeamSpec {
    /// Particle mass (a hydrogen atom for the intended experiment).
    pub mass: f64,
    /// Initial speed (> 0, below the 0.01·c nonrelativistic guard).
    pub speed: f64,
    /// Unit vector of the initial velocity.
    pub direction: [f64; 3],
    /// Launch position.
    pub start: [f64; 3],
    /// Signed magnetic charge the particle carries.
    pub charge: MagneticCharge,
}

impl BeamSpec {
    /// Validate and normalize a beam description.
    ///
    /// The direction may have any nonzero length (it is normalized here).
    /// Speeds at or above 1% of c are rejected: the dual-Lorentz force law
    /// implemented below is strictly nonrelativistic.
    pub fn new(
        mass: f64,
        speed: f64,
        direction: [f64; 3],
        start: [f64; 3],
        charge: MagneticCharge,
        constants: &Constants,
    ) -> Result<Self> {
        if !mass.is_finite() || mass <= 0.0 {
            return Err(Error::NonPositive {
                name: "beam particle mass",
                value: mass,
            });
        }
        if !speed.is_finite() || speed <= 0.0 {
            return Err(Error::NonPositive {
                name: "beam speed",
                value: speed,
            });
        }
        let limit = 0.01 * constants.speed_of_light;
        if speed >= limit {
            return Err(Error::RelativisticBeam { speed, limit });
        }
        let length = norm(direction);
        if !all_finite(direction) || !all_finite(start) || length <= 0.0 {
            return Err(Error::NonPositive {
                name: "beam direction length",
                value: length,
            });
        }
        Ok(Self {
            mass,
            speed,
            direction: scale(direction, 1.0 / length),
            start,
            charge,
        })
    }

    /// Initial velocity vector, speed × direction.
    pub fn initial_velocity(&self) -> [f64; 3] {
        scale(self.direction, self.speed)
    }
}

/// A uniform electric field confined to an axis-aligned box; zero outside.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldRegion {
    /// The field vector inside the box.
    pub field: [f64; 3],
    /// Lower corner of the box.
    pub lo: [f64; 3],
    /// Upper corner of the box (strictly above `lo` in every axis).
    pub hi: [f64; 3],
}

impl FieldRegion {
    /// Validate a field region: finite field, box of positive volume.
    pub fn new(field: [f64; 3], lo: [f64; 3], hi: [f64; 3]) -> Result<Self> {
        if !all_finite(field) || !all_finite(lo) || !all_finite(hi) {
            return Err(Error::NonPositive {
                name: "field region inputs (finite)",
                value: f64::NAN,
            });
        }
        for axis in 0..3 {
            if hi[axis] <= lo[axis] {
                return Err(Error::NonPositive {
                    name: "field region extent",
                    value: hi[axis] - lo[axis],
                });
            }
        }
        Ok(Self { field, lo, hi })
    }

    /// The field at a point: uniform inside the (inclusive) box, zero outside.
    pub fn field_at(&self, position: [f64; 3]) -> [f64; 3] {
        let inside = position
            .iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(p, (lo, hi))| *lo <= *p && *p <= *hi);
        if inside {
            self.field
        } else {
            [0.0; 3]
        }
    }
}

/// A circular superconducting detection loop, modeled as an oriented disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RingDetector {
    /// Ring radius (> 0).
    pub radius: f64,
    /// Disk center.
    pub center: [f64; 3],
    /// Unit normal defining the positive crossing orientation.
    pub normal: [f64; 3],
}

impl RingDetector {
    /// Validate a ring; the normal is normalized here and must have a
    /// resolvable (non-degenerate) length.
    pub fn new(radius: f64, center: [f64; 3], normal: [f64; 3]) -> Result<Self> {
        if !radius.is_finite() || radius <= 0.0 || !all_finite(center) {
            return Err(Error::NonPositive {
                name: "ring radius",
                value: radius,
            });
        }
        let length = norm(normal);
        if !all_finite(normal) || length <= 1e-12 {
            return Err(Error::DegenerateNormal);
        }
        Ok(Self {
            radius,
            center,
            normal: scale(normal, 1.0 / length),
        })
    }

    /// An orthonormal in-plane basis (û, ŵ) with û × ŵ = n̂.
    fn in_plane_basis(&self) -> ([f64; 3], [f64; 3]) {
        let n = self.normal;
        // Seed with the axis least aligned with n̂ for conditioning.
        let seed = if n[0].abs() <= n[1].abs() && n[0].abs() <= n[2].abs() {
            [1.0, 0.0, 0.0]
        } else if n[1].abs() <= n[2].abs() {
            [0.0, 1.0, 0.0]
        } else {
            [0.0, 0.0, 1.0]
        };
        let mut u = sub(seed, scale(n, dot(seed, n)));
        u = scale(u, 1.0 / norm(u));
        let w = cross(n, u);
        (u, w)
    }
}

/// One integrator sample: time, position, velocity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectorySample {
    /// Time since launch.
    pub t: f64,
    /// Position.
    pub position: [f64; 3],
    /// Velocity.
    pub velocity: [f64; 3],
}

/// A fixed-step time series of kinematic states.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    /// Samples at t = 0, dt, 2·dt, …, with strictly increasing time.
    pub samples: Vec<TrajectorySample>,
}

impl Trajectory {
    /// The final sample (trajectories always hold at least the launch state).
    pub fn last(&self) -> &TrajectorySample {
        self.samples.last().expect("trajectories are never empty")
    }

    /// Largest relative deviation of the sampled speed from the launch
    /// speed.  The dual-Lorentz force is perpendicular to the velocity, so
    /// this measures pure integrator error (≲ 1e-9 for sane steps).
    pub fn speed_drift(&self) -> f64 {
        let v0 = norm(self.samples[0].velocity);
        self.samples
            .iter()
            .map(|s| (norm(s.velocity) - v0).abs() / v0)
            .fold(0.0, f64::max)
    }
}

// ---------------------------------------------------------------------------
// Excitation energetics
// ---------------------------------------------------------------------------

/// Bookkeeping for the laser-excitation step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExcitationReport {
    /// Target principal quantum number.
    pub principal: u32,
    /// Laser vacuum wavelength (system length units).
    pub wavelength: f64,
    /// Single photon energy 2πħc/λ.
    pub photon_energy: f64,
    /// Two-photon absorption energy, 2 × the above.
    pub two_photon_energy: f64,
    /// Level gap E_n − E_1.
    pub transition_energy: f64,
    /// |two-photon − gap| / gap.
    pub two_photon_relative_mismatch: f64,
    /// |single photon − gap| / gap (≈ 50% at the two-photon wavelength —
    /// the reason the two-photon reading is the right one).
    pub single_photon_relative_mismatch: f64,
    /// Whether the two-photon reading is on resonance (mismatch < 0.2%).
    pub two_photon_resonant: bool,
}

/// Compare a laser wavelength against the 1 → n transition under single- and
/// two-photon readings.
pub fn excitation_check(
    wavelength: f64,
    principal: u32,
    constants: &Constants,
) -> Result<ExcitationReport> {
    let photon = photon_energy(wavelength, constants)?;
    let gap = hydrogen::bound_energy(principal, constants)?
        - hydrogen::bound_energy(1, constants)?;
    if principal < 2 {
        return Err(Error::NoTransition { n: principal });
    }
    let two_photon = 2.0 * photon;
    let two_mismatch = (two_photon - gap).abs() / gap;
    Ok(ExcitationReport {
        principal,
        wavelength,
        photon_energy: photon,
        two_photon_energy: two_photon,
        transition_energy: gap,
        two_photon_relative_mismatch: two_mismatch,
        single_photon_relative_mismatch: (photon - gap).abs() / gap,
        two_photon_resonant: two_mismatch < 0.002,
    })
}

// ---------------------------------------------------------------------------
// Kinematics
// ---------------------------------------------------------------------------

/// The dual-Lorentz force on a magnetic charge in an electric field:
/// F = −(g/c)·(v × E).
///
/// This is the duality image (E → B, B → −E, e → g) of the magnetic Lorentz
/// force on an electric charge; it is always perpendicular to v, so it bends
/// without changing speed, and flipping the sign of g mirrors the force
/// exactly — the mechanism that separates the two Stark species.
pub fn dual_lorentz_force(
    charge: &MagneticCharge,
    velocity: [f64; 3],
    field: [f64; 3],
    constants: &Constants,
) -> [f64; 3] {
    scale(
        cross(velocity, field),
        -charge.pole_strength / constants.speed_of_light,
    )
}

/// Integrate the beam through the field region with classical fixed-step
/// fourth-order Runge–Kutta.
///
/// The returned trajectory has `n_steps + 1` samples at t = 0, dt, …,
/// n_steps·dt.  Speed is conserved to ≲ 1e-9 relative inside the field (the
/// force is perpendicular to v) and motion is exactly straight outside it.
/// The nonrelativistic guard is re-checked at every step.
pub fn integrate_trajectory(
    beam: &BeamSpec,
    region: &FieldRegion,
    dt: f64,
    n_steps: u32,
    constants: &Constants,
) -> Result<Trajectory> {
    if !dt.is_finite() || dt <= 0.0 {
        return Err(Error::NonPositive {
            name: "integrator time step",
            value: dt,
        });
    }
    if n_steps == 0 {
        return Err(Error::NonPositive {
            name: "integrator step count",
            value: 0.0,
        });
    }
    let limit = 0.01 * constants.speed_of_light;
    let acceleration = |position: [f64; 3], velocity: [f64; 3]| {
        scale(
            dual_lorentz_force(&beam.charge, velocity, region.field_at(position), constants),
            1.0 / beam.mass,
        )
    };

    let mut samples = Vec::with_capacity(n_steps as usize + 1);
    let mut p = beam.start;
    let mut v = beam.initial_velocity();
    samples.push(TrajectorySample {
        t: 0.0,
        position: p,
        velocity: v,
    });
    for step in 1..=n_steps {
        let speed = norm(v);
        if speed >= limit {
            return Err(Error::RelativisticBeam { speed, limit });
        }
        // Classical RK4 on the coupled (position, velocity) system.
        let k1p = v;
        let k1v = acceleration(p, v);
        let k2p = add(v, scale(k1v, 0.5 * dt));
        let k2v = acceleration(add(p, scale(k1p, 0.5 * dt)), k2p);
        let k3p = add(v, scale(k2v, 0.5 * dt));
        let k3v = acceleration(add(p, scale(k2p, 0.5 * dt)), k3p);
        let k4p = add(v, scale(k3v, dt));
        let k4v = acceleration(add(p, scale(k3p, dt)), k4p);
        p = add(
            p,
            scale(
                add(add(k1p, scale(add(k2p, k3p), 2.0)), k4p),
                dt / 6.0,
            ),
        );
        v = add(
            v,
            scale(
                add(add(k1v, scale(add(k2v, k3v), 2.0)), k4v),
                dt / 6.0,
            ),
        );
        samples.push(TrajectorySample {
            t: f64::from(step) * dt,
            position: p,
            velocity: v,
        });
    }
    Ok(Trajectory { samples })
}

/// First crossing of the plane z = `plane_z`: linearly interpolated position.
fn plane_crossing(trajectory: &Trajectory, plane_z: f64) -> Result<[f64; 3]> {
    for pair in trajectory.samples.windows(2) {
        let s0 = pair[0].position[2] - plane_z;
        let s1 = pair[1].position[2] - plane_z;
        if s0 == 0.0 {
            return Ok(pair[0].position);
        }
        if s0 * s1 < 0.0 {
            let lambda = s0 / (s0 - s1);
            return Ok(add(
                pair[0].position,
                scale(sub(pair[1].position, pair[0].position), lambda),
            ));
        }
    }
    if trajectory.last().position[2] == plane_z {
        return Ok(trajectory.last().position);
    }
    Err(Error::NoPlaneCrossing { plane_z })
}

/// Transverse distance between the points where two trajectories first cross
/// the plane z = `plane_z` (crossings located by linear interpolation
/// between bracketing samples).
pub fn beam_separation(a: &Trajectory, b: &Trajectory, plane_z: f64) -> Result<f64> {
    let pa = plane_crossing(a, plane_z)?;
    let pb = plane_crossing(b, plane_z)?;
    let dx = pa[0] - pb[0];
    let dy = pa[1] - pb[1];
    Ok((dx * dx + dy * dy).sqrt())
}

/// One oriented pass of a trajectory through the detector disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RingCrossing {
    /// Interpolated crossing time.
    pub t: f64,
    /// Interpolated crossing position (in the disk).
    pub position: [f64; 3],
    /// +1 for a pass along the ring normal, −1 against it.
    pub orientation: i8,
}

/// Flux bookkeeping for one trajectory and one ring.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FluxEvent {
    /// Every oriented disk pass, in time order.
    pub crossings: Vec<RingCrossing>,
    /// Total flux change: 4πg per signed crossing (Gaussian units).
    pub flux: f64,
}

impl FluxEvent {
    /// Net signed crossing count.
    pub fn net_crossings(&self) -> i64 {
        self.crossings
            .iter()
            .map(|c| i64::from(c.orientation))
            .sum()
    }
}

/// Count oriented passes of the trajectory through the ring's disk and
/// return the total linked-flux change, 4πg per signed crossing.
///
/// The amount per pass is topological: a monopole's total flux 4πg threads
/// any surface the particle passes through, regardless of where on the disk
/// or at what angle — so the computation is a crossing count, validated
/// elsewhere against direct solid-angle integration of the monopole field.
///
/// Crossings are detected as strict sign changes of the signed distance to
/// the ring plane, with the disk-membership test applied at the linearly
/// interpolated crossing point.  Two consecutive segments that both cross
/// the plane (or a sample landing exactly on it) mean the sampling cannot
/// resolve individual passes, and an error is returned instead of a guess.
pub fn ring_flux_event(
    trajectory: &Trajectory,
    ring: &RingDetector,
    charge: &MagneticCharge,
) -> Result<FluxEvent> {
    let signed: Vec<f64> = trajectory
        .samples
        .iter()
        .map(|s| dot(sub(s.position, ring.center), ring.normal))
        .collect();
    for (i, &s) in signed.iter().enumerate() {
        if s == 0.0 {
            return Err(Error::CrossingUnresolved {
                index: i,
                t: trajectory.samples[i].t,
            });
        }
    }
    let mut crossings = Vec::new();
    let mut previous_crossed = false;
    for i in 0..signed.len() - 1 {
        let crossed = signed[i] * signed[i + 1] < 0.0;
        if crossed && previous_crossed {
            return Err(Error::CrossingUnresolved {
                index: i,
                t: trajectory.samples[i].t,
            });
        }
        if crossed {
            let lambda = signed[i] / (signed[i] - signed[i + 1]);
            let a = &trajectory.samples[i];
            let b = &trajectory.samples[i + 1];
            let position = add(a.position, scale(sub(b.position, a.position), lambda));
            let in_plane = sub(position, ring.center);
            let radial = sub(in_plane, scale(ring.normal, dot(in_plane, ring.normal)));
            if norm(radial) <= ring.radius {
                crossings.push(RingCrossing {
                    t: a.t + lambda * (b.t - a.t),
                    position,
                    orientation: if signed[i + 1] > 0.0 { 1 } else { -1 },
                });
            }
        }
        previous_crossed = crossed;
    }
    let net: f64 = crossings.iter().map(|c| f64::from(c.orientation)).sum();
    Ok(FluxEvent {
        crossings,
        flux: 4.0 * std::f64::consts::PI * charge.pole_strength * net,
    })
}

/// Signed solid angle of the ring's disk as seen from `point`, positive on
/// the side the normal points away from (so that a monopole g at `point`
/// sends flux Φ = g·Ω through the disk along +n̂).
///
/// Evaluated by the van Oosterom–Strackee triangle formula over a fan of
/// `segments` triangles on an inscribed rim polygon; the polygonal error
/// falls off as 1/segments², ≈ 1e-7 relative at 8192 segments.  This is the
/// independent oracle for the topological flux count: tracking Ω(t)
/// continuously along a trajectory, each disk pass contributes a ∓4π jump.
pub fn ring_solid_angle(point: [f64; 3], ring: &RingDetector, segments: usize) -> f64 {
    let (u, w) = ring.in_plane_basis();
    let apex = sub(ring.center, point);
    let mut vertices = Vec::with_capacity(segments + 1);
    for k in 0..=segments {
        let theta = std::f64::consts::TAU * k as f64 / segments as f64;
        let rim = add(
            ring.center,
            add(
                scale(u, ring.radius * theta.cos()),
                scale(w, ring.radius * theta.sin()),
            ),
        );
        vertices.push(sub(rim, point));
    }
    let mut omega = 0.0;
    for k in 0..segments {
        let (a, b, c) = (apex, vertices[k], vertices[k + 1]);
        let (la, lb, lc) = (norm(a), norm(b), norm(c));
        let numerator = dot(a, cross(b, c));
        let denominator =
            la * lb * lc + dot(a, b) * lc + dot(b, c) * la + dot(c, a) * lb;
        omega += 2.0 * numerator.atan2(denominator);
    }
    omega
}

/// Flux change in units of the superconducting flux quantum Φ₀ = πħc/e
/// (the Gaussian form of hc/2e).
pub fn squid_signal(flux: f64, constants: &Constants) -> f64 {
    flux * constants.elementary_charge
        / (std::f64::consts::PI * constants.hbar * constants.speed_of_light)
}

// ---------------------------------------------------------------------------
// Scenario plumbing
// ---------------------------------------------------------------------------

/// Laser block of a scenario file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExcitationBlock {
    /// Target principal quantum number (n = 2 for the canonical experiment).
    pub principal: u32,
    /// Laser vacuum wavelength in system length units.
    pub laser_wavelength: f64,
}

/// Beam block of a scenario file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BeamBlock {
    /// Particle mass.
    pub mass: f64,
    /// Launch speed.
    pub speed: f64,
    /// Launch direction (any nonzero length).
    pub direction: [f64; 3],
    /// Launch position.
    pub start: [f64; 3],
}

/// Field-region block of a scenario file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldBlock {
    /// Field magnitude.
    pub strength: f64,
    /// Field direction (any nonzero length; normalized on use).
    pub direction: [f64; 3],
    /// Lower box corner.
    pub lo: [f64; 3],
    /// Upper box corner.
    pub hi: [f64; 3],
}

/// Ring block of a scenario file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingBlock {
    /// Ring radius.
    pub radius: f64,
    /// Ring center.
    pub center: [f64; 3],
    /// Ring normal (any nonzero length; normalized on use).
    pub normal: [f64; 3],
}

/// Integrator block of a scenario file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegratorBlock {
    /// Fixed time step.
    pub dt: f64,
    /// Number of steps.
    pub steps: u32,
}

/// Separation block of a scenario file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeparationBlock {
    /// z-plane at which the ±g beam separation is measured.
    pub plane_z: f64,
}

/// A complete, file-loadable description of one experiment run.
///
/// The [`Default`] value is a working end-to-end setup in Gaussian cgs
/// units: thermal hydrogen (3 km/s) excited to n = 2 by 2430 Å two-photon
/// absorption, bent by a 1e-4 statvolt/cm (≈ 0.03 V/cm) field over a 10 cm
/// region, with both ±g beams threading a 1 cm superconducting ring 60 cm
/// downstream (crossings at y ≈ ∓0.83 cm, separation ≈ 1.67 cm).  These are
/// artifact defaults chosen for a clean demonstration, not measured values;
/// every entry is configurable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ExperimentScenario {
    /// Unit system every number below is expressed in.
    pub units: UnitSystem,
    /// Laser excitation parameters.
    pub excitation: ExcitationBlock,
    /// Beam parameters (the ±g pair shares them).
    pub beam: BeamBlock,
    /// Deflection field region.
    pub field_region: FieldBlock,
    /// Detection ring.
    pub ring: RingBlock,
    /// Integrator parameters.
    pub integrator: IntegratorBlock,
    /// Separation measurement.
    pub separation: SeparationBlock,
}

impl Default for ExperimentScenario {
    fn default() -> Self {
        Self {
            units: UnitSystem::GaussianCgs,
            excitation: ExcitationBlock {
                principal: 2,
                laser_wavelength: 2430e-8, // 2430 Å in cm
            },
            beam: BeamBlock {
                mass: HYDROGEN_MASS_G,
                speed: 3.0e5, // 3 km/s thermal beam
                direction: [0.0, 0.0, 1.0],
                start: [0.0, 0.0, -5.0],
            },
            field_region: FieldBlock {
                strength: 1.0e-4, // statvolt/cm ≈ 0.03 V/cm
                direction: [1.0, 0.0, 0.0],
                lo: [-50.0, -50.0, 0.0],
                hi: [50.0, 50.0, 10.0],
            },
            ring: RingBlock {
                radius: 1.0,
                center: [0.0, 0.0, 60.0],
                normal: [0.0, 0.0, 1.0],
            },
            integrator: IntegratorBlock {
                dt: 1.0e-8,
                steps: 24_000,
            },
            separation: SeparationBlock { plane_z: 60.0 },
        }
    }
}

/// Everything measured for one beam of the ±g pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BeamOutcome {
    /// The signed charge this beam carries.
    pub charge: MagneticCharge,
    /// The integrated trajectory.
    pub trajectory: Trajectory,
    /// Ring crossings and linked-flux change.
    pub flux_event: FluxEvent,
    /// The flux change in superconducting flux quanta.
    pub squid_quanta: f64,
}

/// The full outcome of one scenario run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentOutcome {
    /// Excitation energetics for the configured laser.
    pub excitation: ExcitationReport,
    /// Mixing frequency of the excited level with the ground level.
    pub transition_frequency: f64,
    /// The +g beam.
    pub plus: BeamOutcome,
    /// The −g beam.
    pub minus: BeamOutcome,
    /// Transverse ±g separation at the configured plane.
    pub separation: f64,
    /// The plane the separation was measured at.
    pub separation_plane_z: f64,
}

/// Run a scenario end to end: excitation bookkeeping, ±g trajectory pair,
/// ring flux events, SQUID counts, and beam separation.
pub fn run(scenario: &ExperimentScenario) -> Result<ExperimentOutcome> {
    let constants = Constants::new(scenario.units);
    let excitation = excitation_check(
        scenario.excitation.laser_wavelength,
        scenario.excitation.principal,
        &constants,
    )?;
    let transition = dynamics::transition_frequency(scenario.excitation.principal, &constants)?;
    let charge = solve_magnetic_charge(scenario.excitation.principal, &constants)?;

    let fb = &scenario.field_region;
    let field_length = norm(fb.direction);
    if !field_length.is_finite() || field_length <= 0.0 {
        return Err(Error::NonPositive {
            name: "field direction length",
            value: field_length,
        });
    }
    let region = FieldRegion::new(
        scale(fb.direction, fb.strength / field_length),
        fb.lo,
        fb.hi,
    )?;
    let ring = RingDetector::new(scenario.ring.radius, scenario.ring.center, scenario.ring.normal)?;

    let beam_outcome = |signed: MagneticCharge| -> Result<BeamOutcome> {
        let beam = BeamSpec::new(
            scenario.beam.mass,
            scenario.beam.speed,
            scenario.beam.direction,
            scenario.beam.start,
            signed,
            &constants,
        )?;
        let trajectory = integrate_trajectory(
            &beam,
            &region,
            scenario.integrator.dt,
            scenario.integrator.steps,
            &constants,
        )?;
        let flux_event = ring_flux_event(&trajectory, &ring, &signed)?;
        let squid_quanta = squid_signal(flux_event.flux, &constants);
        Ok(BeamOutcome {
            charge: signed,
            trajectory,
            flux_event,
            squid_quanta,
        })
    };
    let plus = beam_outcome(charge)?;
    let minus = beam_outcome(charge.scaled(-1.0))?;
    let separation = beam_separation(
        &plus.trajectory,
        &minus.trajectory,
        scenario.separation.plane_z,
    )?;

    Ok(ExperimentOutcome {
        excitation,
        transition_frequency: transition,
        plus,
        minus,
        separation,
        separation_plane_z: scenario.separation.plane_z,
    })
}
