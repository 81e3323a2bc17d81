//! Doc-test harness for the guide in `book/`.
//!
//! Each module below embeds one chapter of the mdbook source verbatim, so
//! `cargo test -p starkmag-book` compiles and runs every Rust code block in
//! the guide. The prose can never silently drift from the library it
//! documents: a renamed function or a changed numerical result fails the
//! build here.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/units.md")]
pub mod units {}

#[doc = include_str!("../../../book/src/parabolic-hydrogen.md")]
pub mod parabolic_hydrogen {}

#[doc = include_str!("../../../book/src/dipole-duality.md")]
pub mod dipole_duality {}

#[doc = include_str!("../../../book/src/magnetic-charge.md")]
pub mod magnetic_charge {}

#[doc = include_str!("../../../book/src/charge-oscillation.md")]
pub mod charge_oscillation {}

#[doc = include_str!("../../../book/src/beam-experiment.md")]
pub mod beam_experiment {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
