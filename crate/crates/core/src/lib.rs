//! Secrecy-capacity analysis of a correlated Rayleigh-fading wiretap
//! channel.
//!
//! Three independent engines compute the same two quantities — the average
//! secrecy capacity and the secrecy-outage probability — and are expected
//! to agree within stated tolerances:
//!
//! * [`closedform`] — truncated single/double series with analytic error
//!   control (the production path);
//! * [`oracle`] — direct 2-D adaptive quadrature of the defining integrals;
//! * [`montecarlo`] — seeded, reproducible simulation of the fading process.
//!
//! Shared foundations live in [`channel`] (parameters, joint PDF, the
//! instantaneous secrecy capacity), [`specfun`] (exponential integral,
//! Bessel I0, incomplete gammas, the log-moment recursion), and
//! [`quadrature`] (adaptive Gauss–Kronrod).

pub mod channel;
pub mod closedform;
pub mod error;
pub mod montecarlo;
pub mod oracle;
pub mod quadrature;
pub mod specfun;

pub use channel::{instantaneous_secrecy_capacity, ChannelParams, SnrPair, RHO_MAX};
pub use closedform::{
    average_secrecy_capacity, outage_probability, CapacityResult, OutageResult, SeriesControl,
};
pub use error::{Error, Result};
pub use montecarlo::{estimate_capacity, estimate_outage, McEstimate};
pub use oracle::{capacity_by_quadrature, outage_by_quadrature, QuadratureSpec};
