//! Unit systems and physical constants.
//!
//! The whole crate is written in Gaussian (cgs) electromagnetic conventions:
//! Coulomb's law reads e²/r², the fine-structure constant is α = e²/ħc, and
//! electric and magnetic charge share one dimension.  Two concrete systems
//! are offered:
//!
//! * [`UnitSystem::GaussianCgs`] — centimetres, grams, seconds, statcoulombs,
//!   with CODATA 2018 values for ħ, m_e, e and the exact SI speed of light.
//! * [`UnitSystem::Atomic`] — Hartree atomic units (ħ = m_e = e = 1), in
//!   which the speed of light becomes 1/α ≈ 137.036 and the Bohr radius is 1.
//!
//! Derived lengths are *computed* from the four base constants rather than
//! stored, so the defining relations a₀ = ħ²/(m_e e²) and λ̄_C = ħ/(m_e c)
//! = α·a₀ hold to machine precision in both systems.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Reduced Planck constant, erg·s (CODATA 2018: 1.054571817e-34 J·s, exact
/// via the SI definition of h).
pub const HBAR_ERG_S: f64 = 1.054_571_817e-27;

/// Electron mass, g (CODATA 2018: 9.1093837015e-31 kg).
pub const ELECTRON_MASS_G: f64 = 9.1093837015e-28;

/// Elementary charge, statC.  Exact SI value 1.602176634e-19 C times the
/// exact conversion 2.99792458e9 statC/C.
pub const ELEMENTARY_CHARGE_ESU: f64 = 4.803_204_712_570e-10;

/// Speed of light, cm/s (exact).
pub const SPEED_OF_LIGHT_CM_S: f64 = 2.997_924_58e10;

/// One electron-volt in erg (exact via the SI elementary charge).
pub const ERG_PER_EV: f64 = 1.602_176_634e-12;

/// Hydrogen-atom mass, g: proton (CODATA 2018: 1.67262192369e-27 kg) plus
/// electron.  The ~1.5e-8 relative binding-energy correction is far below
/// anything the beam simulations resolve.
pub const HYDROGEN_MASS_G: f64 = 1.672_621_923_69e-24 + ELECTRON_MASS_G;

/// Selects which concrete numbers populate a [`Constants`] table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum UnitSystem {
    /// Gaussian cgs with CODATA 2018 values.
    #[default]
    GaussianCgs,
    /// Hartree atomic units: ħ = m_e = e = 1, c = 1/α.
    Atomic,
}

impl UnitSystem {
    /// Build the constants table for this system.
    pub fn constants(self) -> Constants {
        Constants::new(self)
    }
}

impl std::str::FromStr for UnitSystem {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "gaussian-cgs" | "gaussian_cgs" | "cgs" => Ok(Self::GaussianCgs),
            "atomic" | "au" => Ok(Self::Atomic),
            other => Err(format!(
                "unknown unit system {other:?}; expected \"gaussian-cgs\" or \"atomic\""
            )),
        }
    }
}

impl std::fmt::Display for UnitSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::GaussianCgs => f.write_str("gaussian-cgs"),
            Self::Atomic => f.write_str("atomic"),
        }
    }
}

/// Physical constants in one consistent unit system.
///
/// All lengths and couplings downstream (wavefunctions, dipoles, Stark
/// shifts, forces) are expressed through this table, so switching the system
/// re-scales every result coherently.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    /// Which system the values below are expressed in.
    pub system: UnitSystem,
    /// Reduced Planck constant ħ.
    pub hbar: f64,
    /// Electron mass m_e.
    pub electron_mass: f64,
    /// Elementary charge e (> 0; the electron carries −e).
    pub elementary_charge: f64,
    /// Speed of light c.
    pub speed_of_light: f64,
    /// Bohr radius a₀ = ħ²/(m_e e²), computed from the base constants.
    pub bohr_radius: f64,
    /// Reduced Compton wavelength λ̄_C = ħ/(m_e c) = α·a₀.
    pub compton_wavelength: f64,
    /// Fine-structure constant α = e²/(ħc), dimensionless.
    pub fine_structure: f64,
}

impl Constants {
    /// Populate the table for `system`, deriving a₀, λ̄_C and α from the
    /// base constants so the defining relations hold to machine precision.
    pub fn new(system: UnitSystem) -> Self {
        let (hbar, electron_mass, elementary_charge, speed_of_light) = match system {
            UnitSystem::GaussianCgs => (
                HBAR_ERG_S,
                ELECTRON_MASS_G,
                ELEMENTARY_CHARGE_ESU,
                SPEED_OF_LIGHT_CM_S,
            ),
            // Atomic units keep the same α by setting c = 1/α with α taken
            // from the cgs table; everything else is exactly 1.
            UnitSystem::Atomic => {
                let alpha = ELEMENTARY_CHARGE_ESU * ELEMENTARY_CHARGE_ESU
                    / (HBAR_ERG_S * SPEED_OF_LIGHT_CM_S);
                (1.0, 1.0, 1.0, 1.0 / alpha)
            }
        };
        let fine_structure =
            elementary_charge * elementary_charge / (hbar * speed_of_light);
        let bohr_radius =
            hbar * hbar / (electron_mass * elementary_charge * elementary_charge);
        let compton_wavelength = hbar / (electron_mass * speed_of_light);
        Self {
            system,
            hbar,
            electron_mass,
            elementary_charge,
            speed_of_light,
            bohr_radius,
            compton_wavelength,
            fine_structure,
        }
    }

    /// The Hartree energy e²/a₀ (twice the hydrogen ground-state binding).
    pub fn hartree(&self) -> f64 {
        self.elementary_charge * self.elementary_charge / self.bohr_radius
    }

    /// Atomic field scale e/a₀², against which applied Stark fields are
    /// judged perturbative.
    pub fn internal_field(&self) -> f64 {
        self.elementary_charge / (self.bohr_radius * self.bohr_radius)
    }

    /// Express an energy from this system in electron-volts.
    pub fn energy_in_ev(&self, energy: f64) -> f64 {
        match self.system {
            UnitSystem::GaussianCgs => energy / ERG_PER_EV,
            UnitSystem::Atomic => {
                // One hartree in erg, from the cgs table.
                let cgs = Constants::new(UnitSystem::GaussianCgs);
                energy * cgs.hartree() / ERG_PER_EV
            }
        }
    }

    /// Dimensionless coupling e·g/(ħc) of a magnetic charge `g`.
    pub fn charge_coupling(&self, g: f64) -> f64 {
        self.elementary_charge * g / (self.hbar * self.speed_of_light)
    }
}

/// Photon energy E = 2πħc/λ for vacuum wavelength `wavelength`.
///
/// The wavelength must be positive and in the length unit of `constants`
/// (centimetres for Gaussian cgs, Bohr radii for atomic units).
pub fn photon_energy(wavelength: f64, constants: &Constants) -> Result<f64> {
    if !wavelength.is_finite() || wavelength <= 0.0 {
        return Err(Error::NonPositive {
            name: "photon wavelength",
            value: wavelength,
        });
    }
    Ok(2.0 * std::f64::consts::PI * constants.hbar * constants.speed_of_light / wavelength)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn cgs_table_matches_codata_reference_values() {
        let c = Constants::new(UnitSystem::GaussianCgs);
        // CODATA 2018 published values for the derived quantities.
        assert!(rel(c.bohr_radius, 5.29177210903e-9) < 1e-9);
        assert!(rel(c.compton_wavelength, 3.8615926796e-11) < 1e-9);
        assert!(rel(c.fine_structure, 7.2973525693e-3) < 1e-9);
        assert!(rel(1.0 / c.fine_structure, 137.035_999_084) < 1e-9);
    }

    #[test]
    fn defining_relations_hold_to_machine_precision_in_both_systems() {
        for system in [UnitSystem::GaussianCgs, UnitSystem::Atomic] {
            let c = Constants::new(system);
            let a0 = c.hbar * c.hbar
                / (c.electron_mass * c.elementary_charge * c.elementary_charge);
            let lambda = c.hbar / (c.electron_mass * c.speed_of_light);
            assert!(rel(c.bohr_radius, a0) < 1e-12, "{system}: a0");
            assert!(rel(c.compton_wavelength, lambda) < 1e-12, "{system}: compton");
            assert!(
                rel(c.compton_wavelength, c.fine_structure * c.bohr_radius) < 1e-12,
                "{system}: compton = alpha * a0"
            );
            assert!(
                rel(
                    c.fine_structure,
                    c.elementary_charge * c.elementary_charge
                        / (c.hbar * c.speed_of_light)
                ) < 1e-12,
                "{system}: alpha"
            );
        }
    }

    #[test]
    fn atomic_units_pin_the_base_constants_to_one() {
        let c = Constants::new(UnitSystem::Atomic);
        assert_eq!(c.hbar, 1.0);
        assert_eq!(c.electron_mass, 1.0);
        assert_eq!(c.elementary_charge, 1.0);
        assert_eq!(c.bohr_radius, 1.0);
        assert!(rel(c.speed_of_light, 137.035_999_084) < 1e-9);
        assert!(rel(c.compton_wavelength, c.fine_structure) < 1e-14);
    }

    #[test]
    fn photon_energy_reproduces_the_ev_angstrom_product() {
        let c = Constants::new(UnitSystem::GaussianCgs);
        // hc in eV·Å, a standard spectroscopy reference number.
        let one_angstrom_cm = 1e-8;
        let hc_ev_angstrom = c.energy_in_ev(photon_energy(one_angstrom_cm, &c).unwrap());
        assert!(rel(hc_ev_angstrom, 12_398.419_84) < 1e-6);

        // A 2430 Å photon carries about 5.10 eV.
        let e_2430 = c.energy_in_ev(photon_energy(2430.0 * one_angstrom_cm, &c).unwrap());
        assert!(rel(e_2430, 5.102_23) < 1e-5);
    }

    #[test]
    fn photon_energy_rejects_nonpositive_and_nonfinite_wavelengths() {
        let c = Constants::new(UnitSystem::GaussianCgs);
        for bad in [0.0, -1.0e-8, f64::NAN, f64::INFINITY] {
            assert!(matches!(
                photon_energy(bad, &c),
                Err(Error::NonPositive { name: "photon wavelength", .. })
            ));
        }
    }

    #[test]
    fn unit_system_round_trips_through_its_display_name() {
        for system in [UnitSystem::GaussianCgs, UnitSystem::Atomic] {
            let parsed: UnitSystem = system.to_string().parse().unwrap();
            assert_eq!(parsed, system);
        }
        assert!("furlongs".parse::<UnitSystem>().is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            // E(λ1)/E(λ2) must equal λ2/λ1 independent of the unit system.
            #[test]
            fn photon_energy_scales_inversely_with_wavelength(
                l1 in 1e-6f64..1.0,
                l2 in 1e-6f64..1.0,
                atomic in proptest::bool::ANY,
            ) {
                let system = if atomic { UnitSystem::Atomic } else { UnitSystem::GaussianCgs };
                let c = Constants::new(system);
                let e1 = photon_energy(l1, &c).unwrap();
                let e2 = photon_energy(l2, &c).unwrap();
                let expected = l2 / l1;
                prop_assert!(
                    ((e1 / e2) - expected).abs() <= 1e-12 * expected.abs(),
                    "ratio {} vs {}", e1 / e2, expected
                );
            }
        }
    }
}
