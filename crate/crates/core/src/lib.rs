//! Atom-interferometer gravimetry and gravitational clock dilation.
//!
//! Closed-form phases and dilations live in [`phase`], [`clock`] and
//! [`interferometer`]; [`oracle`] re-derives the interferometer phase from a
//! grid Schrödinger evolution; [`scenario`] drives both from JSON scenarios
//! for the `gravsim` binary.

pub mod clock;
pub mod error;
pub mod interferometer;
pub mod oracle;
pub mod phase;
pub mod physics;
pub mod scenario;

pub use error::{Error, Result};
