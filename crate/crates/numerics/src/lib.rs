//! Numerical plumbing shared by the pipeline crates.

pub mod fd;
pub mod grid;
pub mod newton;
pub mod ode;

pub use fd::{fd_weights, Stencil5};
pub use newton::{newton_fd, NewtonError, NewtonOptions, NewtonReport};
pub use ode::{Dopri5, OdeError};
