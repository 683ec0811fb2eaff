//! The separable-weight problem for Bell-diagonal states written as a
//! generic SDP (fixed candidate) and as an LP (all candidates at once).

use crate::bdstate::BDState;
use crate::convex::lp::{self, LpSolution};
use crate::convex::sdp::SDPProblem;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// One-variable SDP `minimize −λ s.t. ρ − λσ ⪰ 0`, with both states diagonal
/// in the Bell basis. Diagonal entries where ρ and σ both vanish impose
/// nothing and are dropped.
pub fn lsd_as_sdp(rho: &BDState, sigma: &BDState) -> Result<SDPProblem> {
    if !rho.classify().is_entangled() {
        return Err(Error::NotEntangled);
    }
    if !sigma.classify().is_separable() {
        return Err(Error::NotSeparable);
    }
    let (p, q) = (rho.probs(), sigma.probs());
    let keep: Vec<usize> = (0..4).filter(|&i| p[i] > 0.0 || q[i] > 0.0).collect();
    let f0: Vec<f64> = keep.iter().map(|&i| p[i]).collect();
    let f1: Vec<f64> = keep.iter().map(|&i| -q[i]).collect();
    SDPProblem::new(
        vec![-1.0],
        CMatrix::from_real_diag(&f0),
        vec![CMatrix::from_real_diag(&f1)],
    )
}

/// Standard-form data of the LP over all separable candidates.
///
/// Variables are `[q₁..q₄, u₁..u₄, v₁..v₄]` with qᵢ = λσᵢ:
///
/// ```text
/// minimize −Σ qᵢ
/// s.t.     qᵢ + uᵢ = pᵢ            (qᵢ ≤ pᵢ)
///          Σⱼ qⱼ − 2qᵢ − vᵢ = 0     (σᵢ ≤ ½)
///          q, u, v ≥ 0
/// ```
pub fn lsd_lp_data(rho: &BDState) -> (Vec<f64>, Vec<Vec<f64>>, Vec<f64>) {
    let p = rho.probs();
    let mut c = vec![0.0; 12];
    c[..4].fill(-1.0);
    let mut a = Vec::with_capacity(8);
    let mut b = Vec::with_capacity(8);
    for i in 0..4 {
        let mut row = vec![0.0; 12];
        row[i] = 1.0;
        row[4 + i] = 1.0;
        a.push(row);
        b.push(p[i]);
    }
    for i in 0..4 {
        let mut row = vec![0.0; 12];
        row[..4].fill(1.0);
        row[i] -= 2.0;
        row[8 + i] = -1.0;
        a.push(row);
        b.push(0.0);
    }
    (c, a, b)
}

/// Maximal separable weight over the whole separable octahedron, by LP.
/// Returns λ, the optimal candidate σ, and the raw LP solution.
pub fn lsd_lp_over_separable(rho: &BDState) -> Result<(f64, BDState, LpSolution)> {
    if !rho.classify().is_entangled() {
        return Err(Error::NotEntangled);
    }
    let (c, a, b) = lsd_lp_data(rho);
    let sol = lp::solve_lp(&c, &a, &b)?;
    let q = [sol.x[0], sol.x[1], sol.x[2], sol.x[3]];
    let lambda: f64 = q.iter().sum();
    let sigma = if lambda > 0.0 {
        BDState::from_probs(q.map(|v| v / lambda))?
    } else {
        BDState::maximally_mixed()
    };
    Ok((lambda, sigma, sol))
}
