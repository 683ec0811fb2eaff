//! Desk-scale convex optimization: semidefinite and linear programs with
//! primal-dual certificates, and a KKT condition checker.

pub mod kkt;
pub mod lp;
pub mod lsd_forms;
pub mod sdp;

pub use kkt::{check_kkt, Affine, Differentiable, FnWithGradient, KKTReport};
pub use lp::{enumerate_vertices_optimum, lp_residuals, solve_lp, LpResiduals, LpSolution};
pub use lsd_forms::{lsd_as_sdp, lsd_lp_data, lsd_lp_over_separable};
pub use sdp::{
    check_slackness, duality_gap, solve_sdp, CentralPoint, SDPProblem, SDPSolution, SdpStatus,
    DEFAULT_TOL,
};
