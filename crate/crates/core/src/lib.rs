//! Blocking probability of single-reflection ray paths in an obstructed
//! rectangular tunnel with ceiling-mounted reconfigurable intelligent
//! surfaces (RIS).
//!
//! The scene is the 2-D `y`-`z` cross-section of the tunnel: the ceiling is
//! at `y = h`, the transmitter sits at `(z, y) = (0, y_t)` and the receiver at
//! `(z_r, y_r)`. Without a RIS the only path is the specular ceiling bounce
//! found with the image method. Each RIS adds a Tx-RIS-Rx path. An obstacle is
//! a vertical segment from the floor; the link is blocked when the obstacle
//! reaches the upper envelope of all available paths at its location.
//!
//! The crate is organised as:
//!
//! * [`geometry`] - the scene, ray paths, their upper envelope and the
//!   area-based blocking oracle.
//! * [`analytic`] - closed-form blocking probabilities (one RIS, two RISs,
//!   i.i.d. obstacle counts, truncated-normal obstacle heights).
//! * [`montecarlo`] - a seeded, parallel, order-independent stochastic
//!   estimator with Wilson confidence intervals.
//! * [`placement`] - RIS position / Tx height optimisation and effective
//!   receiver range.
//!
//! ```
//! use tunnelbp::{analytic, geometry::TunnelGeometry};
//!
//! let geom = TunnelGeometry::new(4.0, 2.0, 2.0, 100.0).unwrap();
//! let bp = analytic::bp_single_ris(&geom, 100.0).unwrap();
//! assert!((bp.value() - 1.0 / 6.0).abs() < 1e-12);
//! ```

pub mod analytic;
mod error;
pub mod geometry;
pub mod montecarlo;
pub mod placement;

pub use analytic::{DtndParams, ObstacleModel, Probability};
pub use error::{BpError, Result};
pub use geometry::{CaseId, PathEnvelope, RisPlacement, TunnelGeometry};
pub use montecarlo::{BpEstimate, McConfig};

pub use placement::PlacementResult;
