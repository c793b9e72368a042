//! Census of closed geodesics on compact hyperbolic surfaces.
//!
//! Conjugacy classes of the surface group are enumerated as canonical cyclic
//! words up to a word-length bound ([`census`]), their lengths computed
//! from a Fuchsian representation in interval-style arbitrary precision
//! ([`hyperbolic`]), and their homology classes counted singly and in pairs
//! ([`counting`]) against the Gaussian local-limit predictors
//! ([`asymptotics`]).
//!
//! ```
//! use geodesic_census::census::enumerate;
//! use geodesic_census::counting::Counter;
//! use geodesic_census::hyperbolic::Representation;
//!
//! let rep = Representation::bolza(128)?;
//! let census = enumerate(&rep, 4)?;
//! let systole = 2.0 * (1.0 + 2f64.sqrt()).acosh();
//! assert_eq!(Counter::new(&census).pi((systole + 0.01).exp()), 24);
//! # Ok::<(), geodesic_census::Error>(())
//! ```

pub mod asymptotics;
pub mod census;
pub mod cli;
pub mod counting;
pub mod error;
pub mod hyperbolic;
pub mod surface_group;

pub use error::{Error, Result};
