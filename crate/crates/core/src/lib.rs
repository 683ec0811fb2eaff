//! Optimal Lewenstein-Sanpera decomposition and relative entropy of
//! entanglement for Bell-diagonal two-qubit states, with generic SDP/LP
//! solvers, KKT certificates, and brute-force lattice oracles that check
//! the closed forms independently.
//!
//! ```
//! use bdconvex::{bdstate::BDState, lsd, relent};
//!
//! let rho = BDState::from_probs([0.7, 0.1, 0.1, 0.1]).unwrap();
//! let d = lsd::optimal_lsd(&rho);
//! let ree = relent::ree_bd(&rho);
//! assert!((d.lambda - 0.6).abs() < 1e-12);
//! assert!(d.separable.max_abs_diff(&ree.closest_state) < 1e-12);
//! ```

pub mod bdstate;
pub mod convex;
pub mod error;
pub mod io;
pub mod linalg;
pub mod lsd;
pub mod oracle;
pub mod relent;
pub mod sampling;

pub use bdstate::{BDState, DensityMatrix4, RegionClass, TVector};
pub use error::{Error, Result};
pub use lsd::LSDecomposition;
pub use relent::REEResult;
