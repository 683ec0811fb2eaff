//! Optimal Lewenstein-Sanpera decomposition of Bell-diagonal states.
//!
//! Any state splits as ρ = λ·ρₛ + (1 − λ)·ρₑ with ρₛ separable. For a
//! Bell-diagonal state whose dominant weight pₖ exceeds ½, the largest
//! admissible λ is 2(1 − pₖ): the separable part sits on the octahedron face
//! with component k equal to ½ and the others pᵢ / (2(1 − pₖ)), and the
//! remainder is the pure Bell projector |ψₖ⟩⟨ψₖ|.
//!
//! All arithmetic stays in the Bell-diagonal representation; 4×4 matrices
//! are built only by [`residual_spectrum`].

use serde::Serialize;

use crate::bdstate::{BDState, RegionClass};
use crate::error::{Error, Result};

const RECOMBINATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LSDecomposition {
    /// Weight of the separable part.
    pub lambda: f64,
    pub separable: BDState,
    /// 1-based Bell index of the pure part.
    pub entangled_index: usize,
    pub entangled_weight: f64,
}

impl LSDecomposition {
    /// λ·separable + (1 − λ)·eₖ in Bell-basis components.
    pub fn recombine(&self) -> [f64; 4] {
        let mut out = self.separable.probs().map(|v| self.lambda * v);
        out[self.entangled_index - 1] += self.entangled_weight;
        out
    }
}

/// min over i of pᵢ/σᵢ, skipping σᵢ = 0. Returns the ratio and the 0-based
/// index attaining it (smallest index on ties).
fn min_ratio(p: &[f64; 4], sigma: &[f64; 4]) -> (f64, usize) {
    let mut best = (f64::INFINITY, 0);
    for i in 0..4 {
        if sigma[i] > 0.0 {
            let r = p[i] / sigma[i];
            if r < best.0 {
                best = (r, i);
            }
        }
    }
    best
}

/// Largest λ with ρ − λσ ⪰ 0 for a separable candidate σ.
///
/// A component with σᵢ > 0 but pᵢ = 0 pins λ to 0, which is returned as a
/// value rather than an error.
pub fn lambda_for_candidate(rho: &BDState, sigma: &BDState) -> Result<f64> {
    if !sigma.classify().is_separable() {
        return Err(Error::NotSeparable);
    }
    Ok(min_ratio(&rho.probs(), &sigma.probs()).0)
}

/// Same as [`lambda_for_candidate`] without the separability check; the
/// grid oracle calls it on lattice points it already knows are separable.
pub(crate) fn lambda_unchecked(p: &[f64; 4], sigma: &[f64; 4]) -> f64 {
    min_ratio(p, sigma).0
}

/// λ along the one-parameter family of candidates whose dominant component
/// is `p1_prime` and whose remaining components are proportional to ρ's:
/// (1 − p₁)/(1 − p₁′).
pub fn lambda_profile(p1: f64, p1_prime: f64) -> f64 {
    (1.0 - p1) / (1.0 - p1_prime)
}

/// Member of the candidate family above for a given dominant weight.
pub fn profile_candidate(rho: &BDState, p1_prime: f64) -> Result<BDState> {
    let k = rho.dominant_index();
    let p = rho.probs();
    let scale = (1.0 - p1_prime) / (1.0 - p[k]);
    let mut sigma = p.map(|v| v * scale);
    sigma[k] = p1_prime;
    BDState::from_probs(sigma)
}

pub fn optimal_lsd(rho: &BDState) -> LSDecomposition {
    match rho.classify() {
        RegionClass::Entangled(k) => {
            let p = rho.probs();
            let lambda = 2.0 * (1.0 - p[k - 1]);
            let separable = if lambda > 0.0 {
                let mut s = p.map(|v| v / lambda);
                s[k - 1] = 0.5;
                BDState::from_probs(s).expect("boundary state is normalized")
            } else {
                BDState::maximally_mixed()
            };
            LSDecomposition {
                lambda,
                separable,
                entangled_index: k,
                entangled_weight: 1.0 - lambda,
            }
        }
        _ => LSDecomposition {
            lambda: 1.0,
            separable: *rho,
            entangled_index: rho.dominant_index() + 1,
            entangled_weight: 0.0,
        },
    }
}

/// Eigenvalues, in descending order, of the normalized residual
/// (ρ − λσ)/(1 − λ) assembled as a 4×4 matrix in the computational basis.
/// Empty when λ = 1.
pub fn residual_spectrum(rho: &BDState, d: &LSDecomposition) -> Result<Vec<f64>> {
    let deviation = rho
        .probs()
        .iter()
        .zip(d.recombine())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if deviation > RECOMBINATION_TOL {
        return Err(Error::Mismatch { deviation });
    }
    if d.lambda >= 1.0 {
        return Ok(Vec::new());
    }
    let rho_m = rho.density_matrix().into_matrix();
    let sep_m = d.separable.density_matrix().into_matrix();
    let residual = (&rho_m - &sep_m.scale(d.lambda)).scale(1.0 / (1.0 - d.lambda));
    let mut eig = residual.hermitian_eigenvalues();
    eig.reverse();
    Ok(eig)
}

/// Second-largest eigenvalue of the normalized residual; zero for a pure
/// residual and for λ = 1.
pub fn residual_check(rho: &BDState, d: &LSDecomposition) -> Result<f64> {
    let eig = residual_spectrum(rho, d)?;
    Ok(eig.get(1).copied().unwrap_or(0.0))
}
