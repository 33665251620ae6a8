//! Frustrated ferromagnetic-antiferromagnetic spin chains on a cyclic
//! lattice: energies, ground states, chirality-wall (crease) profiles, the
//! near-critical scaling regimes, and matching continuum phase-transition
//! functionals.
//!
//! The chain couples nearest neighbours ferromagnetically (strength alpha)
//! and next-to-nearest neighbours antiferromagnetically. Below alpha = 4 the
//! ground state is helical with pitch angle arccos(alpha/4) and two chirality
//! classes; walls between the classes carry a finite energy that vanishes
//! like (4 - alpha)^{3/2} at the transition.

pub mod continuum;
pub mod crease;
pub mod error;
pub mod ground_state;
pub mod model;
pub mod optim;
pub mod scaling;

pub use continuum::{
    DoubleWellSpec, EquivalenceReport, FunctionalKind, GridFunction, NodePins,
};
pub use crease::{CreaseProfile, CreaseResult, PowerLawFit};
pub use error::{Error, Result};
pub use ground_state::{
    ChiralityProfile, Init, MinimizeOptions, MinimizeResult, PinSet,
};
pub use model::{AngleChain, DerivedConstants, SpinChain};
pub use optim::{SolveReport, StepControl};
pub use scaling::{OrderParameterChain, Regime, RegimePoint};
