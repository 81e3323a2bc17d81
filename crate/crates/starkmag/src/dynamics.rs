//! Time dependence of the magnetic charge under radiative two-level mixing.
//!
//! An excited Stark level |n⟩ decays toward the ground level |0⟩ by emitting
//! at the transition frequency ω_n = (E_n − E_1)/ħ.  Treating the pair as a
//! two-level system rotating at that single frequency, the state that starts
//! excited evolves with amplitudes (cos ω_n t, sin ω_n t), so the magnetic
//! charge attached to the excited level oscillates between the two members:
//! g_n(t) = g_n·cos² ω_n t on the excited level and g_0(t) = g_n·sin² ω_n t
//! on the ground level.  The sum is conserved at every instant — charge
//! sloshes, it never leaks.
//!
//! The mixing rate and the radiation frequency are deliberately the same
//! number here; no independent Rabi frequency is introduced.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hydrogen;
use crate::monopole::{solve_magnetic_charge, MagneticCharge};
use crate::units::Constants;

/// Angular frequency of the |n⟩ ↔ ground transition, (E_n − E_1)/ħ.
///
/// Requires n ≥ 2: the ground level has nothing below it to mix with.
pub fn transition_frequency(n: u32, constants: &Constants) -> Result<f64> {
    if n < 2 {
        return Err(Error::NoTransition { n });
    }
    let excited = hydrogen::bound_energy(n, constants)?;
    let ground = hydrogen::bound_energy(1, constants)?;
    Ok((excited - ground) / constants.hbar)
}

/// An excited level radiatively mixed with the ground level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixedPair {
    /// Principal quantum number of the excited member (≥ 2).
    pub n: u32,
    /// Mixing/radiation angular frequency ω_n = (E_n − E_1)/ħ.
    pub omega: f64,
    /// The magnetic charge the excited level carries (eg/ħc = √3·n).
    pub charge: MagneticCharge,
}

impl MixedPair {
    /// Build the pair for excited level `n`, deriving both the transition
    /// frequency and the level's solved magnetic charge.
    pub fn new(n: u32, constants: &Constants) -> Result<Self> {
        let omega = transition_frequency(n, constants)?;
        let charge = solve_magnetic_charge(n, constants)?;
        Ok(Self { n, omega, charge })
    }
}

/// The 2×2 rotation connecting (excited, ground) amplitudes at time t to
/// their initial values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixedAmplitudes {
    /// (excited, ground) amplitudes of the state that started excited:
    /// (cos ω_n t, sin ω_n t).
    pub from_excited: (f64, f64),
    /// (excited, ground) amplitudes of the state that started in the ground
    /// level: (−sin ω_n t, cos ω_n t).
    pub from_ground: (f64, f64),
}

/// Evolve both initial conditions of the two-level pair to time `t` ≥ 0.
pub fn mixed_amplitudes(pair: &MixedPair, t: f64) -> Result<MixedAmplitudes> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::NegativeTime { t });
    }
    let phase = pair.omega * t;
    let (sin, cos) = phase.sin_cos();
    Ok(MixedAmplitudes {
        from_excited: (cos, sin),
        from_ground: (-sin, cos),
    })
}

/// How the conserved magnetic charge is split across the pair at one instant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChargePartition {
    /// Charge residing on the excited level: g_n·cos² ω_n t.
    pub excited: f64,
    /// Charge residing on the ground level: g_n·sin² ω_n t.
    pub ground: f64,
}

impl ChargePartition {
    /// The partition sum, conserved (= g_n) at every time.
    pub fn total(&self) -> f64 {
        self.excited + self.ground
    }
}

/// Magnetic charge carried by each member of the pair at time `t` ≥ 0:
/// (g_n·cos² ω_n t, g_n·sin² ω_n t).
///
/// Each component is computed independently from its own trigonometric
/// factor — conservation of the sum is a verified outcome, not an enforced
/// one.
pub fn charge_evolution(pair: &MixedPair, t: f64) -> Result<ChargePartition> {
    let amplitudes = mixed_amplitudes(pair, t)?;
    let (cos, sin) = (amplitudes.from_excited.0, amplitudes.from_excited.1);
    let g = pair.charge.pole_strength;
    Ok(ChargePartition {
        excited: g * cos * cos,
        ground: g * sin * sin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::UnitSystem;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn atomic() -> Constants {
        Constants::new(UnitSystem::Atomic)
    }

    #[test]
    fn transition_frequencies_climb_the_rydberg_ladder() {
        let c = atomic();
        // (−1/8 − (−1/2))/ħ = 3/8 in atomic units.
        assert!((transition_frequency(2, &c).unwrap() - 0.375).abs() < 1e-15);
        // 1/2 − 1/18 = 4/9.
        let w3 = transition_frequency(3, &c).unwrap();
        assert!((w3 - 4.0 / 9.0).abs() < 1e-15);
        // Monotone toward the ionization limit ħω → 1/2, never reaching it.
        let mut previous = 0.0;
        for n in 2..=10 {
            let w = transition_frequency(n, &c).unwrap();
            assert!(w > previous && w < 0.5);
            previous = w;
        }
        assert!((transition_frequency(10, &c).unwrap() - 0.495).abs() < 1e-15);

        assert!(matches!(
            transition_frequency(1, &c),
            Err(Error::NoTransition { n: 1 })
        ));
        assert!(matches!(
            transition_frequency(0, &c),
            Err(Error::NoTransition { n: 0 })
        ));
        assert!(transition_frequency(11, &c).is_err());
    }

    #[test]
    fn mixed_pair_carries_its_solved_charge() {
        let c = atomic();
        let pair = MixedPair::new(2, &c).unwrap();
        assert_eq!(pair.n, 2);
        assert!((pair.omega - 0.375).abs() < 1e-15);
        assert!((pair.charge.coupling - 2.0 * 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn amplitudes_start_clean_and_transfer_at_the_quarter_period() {
        let c = atomic();
        let pair = MixedPair::new(2, &c).unwrap();

        let start = mixed_amplitudes(&pair, 0.0).unwrap();
        assert_eq!(start.from_excited, (1.0, 0.0));
        assert_eq!(start.from_ground, (-0.0, 1.0));

        let quarter = std::f64::consts::FRAC_PI_2 / pair.omega;
        let turned = mixed_amplitudes(&pair, quarter).unwrap();
        assert!(turned.from_excited.0.abs() < 1e-15);
        assert!((turned.from_excited.1 - 1.0).abs() < 1e-15);
        assert!((turned.from_ground.0 + 1.0).abs() < 1e-15);

        assert!(matches!(
            mixed_amplitudes(&pair, -1.0),
            Err(Error::NegativeTime { .. })
        ));
        assert!(mixed_amplitudes(&pair, f64::NAN).is_err());
    }

    #[test]
    fn evolution_is_unitary_at_random_times() {
        let c = atomic();
        let pair = MixedPair::new(3, &c).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x6f7363);
        for _ in 0..10_000 {
            let t = rng.gen_range(0.0..1e4);
            let a = mixed_amplitudes(&pair, t).unwrap();
            for row in [a.from_excited, a.from_ground] {
                let norm = row.0 * row.0 + row.1 * row.1;
                assert!((norm - 1.0).abs() <= 4.0 * f64::EPSILON);
            }
            // Row orthogonality is exact: the cross products cancel bitwise.
            let dot = a.from_excited.0 * a.from_ground.0 + a.from_excited.1 * a.from_ground.1;
            assert_eq!(dot, 0.0);
        }
    }

    #[test]
    fn charge_is_conserved_at_ten_thousand_random_times() {
        let c = atomic();
        let pair = MixedPair::new(2, &c).unwrap();
        let g = pair.charge.pole_strength;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x636f6e73);
        for _ in 0..10_000 {
            let t = rng.gen_range(0.0..1e4);
            let split = charge_evolution(&pair, t).unwrap();
            assert!(
                (split.total() - g).abs() <= 4.0 * f64::EPSILON * g,
                "t = {t}: sum deviates by {:e}",
                split.total() - g
            );
        }
    }

    #[test]
    fn charge_transfers_completely_and_returns_each_half_period() {
        let c = atomic();
        let pair = MixedPair::new(2, &c).unwrap();
        let g = pair.charge.pole_strength;

        let start = charge_evolution(&pair, 0.0).unwrap();
        assert_eq!(start.excited, g);
        assert_eq!(start.ground, 0.0);

        let quarter = std::f64::consts::FRAC_PI_2 / pair.omega;
        let swapped = charge_evolution(&pair, quarter).unwrap();
        assert!(swapped.excited.abs() < 1e-30 * g.max(1.0) + 1e-25);
        assert!((swapped.ground - g).abs() < 1e-12 * g);

        // Period π/ω in each component.
        let period = std::f64::consts::PI / pair.omega;
        for k in 1..=5 {
            let t = 0.37 * period + f64::from(k) * period;
            let shifted = charge_evolution(&pair, t).unwrap();
            let reference = charge_evolution(&pair, 0.37 * period).unwrap();
            assert!((shifted.excited - reference.excited).abs() < 1e-9 * g);
            assert!((shifted.ground - reference.ground).abs() < 1e-9 * g);
        }
    }

    proptest! {
        #[test]
        fn partition_components_stay_inside_the_conserved_band(t in 0.0..1e6f64) {
            let c = atomic();
            let pair = MixedPair::new(4, &c).unwrap();
            let g = pair.charge.pole_strength;
            let split = charge_evolution(&pair, t).unwrap();
            prop_assert!(split.excited >= 0.0 && split.excited <= g * (1.0 + 4.0 * f64::EPSILON));
            prop_assert!(split.ground >= 0.0 && split.ground <= g * (1.0 + 4.0 * f64::EPSILON));
        }
    }
}
