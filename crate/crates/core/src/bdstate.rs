//! Bell-diagonal two-qubit states: probability and correlation-vector
//! coordinates, density matrices, and the tetrahedron/octahedron geometry
//! that separates entangled from separable states.
//!
//! Bell basis ordering (computational basis |00⟩,|01⟩,|10⟩,|11⟩):
//!
//! | index | state | vector            |
//! |-------|-------|-------------------|
//! | 1     | φ⁺    | (1, 0, 0, 1)/√2   |
//! | 2     | φ⁻    | (1, 0, 0, −1)/√2  |
//! | 3     | ψ⁺    | (0, 1, 1, 0)/√2   |
//! | 4     | ψ⁻    | (0, 1, −1, 0)/√2  |
//!
//! Indices are 1-based in [`RegionClass::Entangled`] and in reports, and
//! 0-based for array access.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// Width of the band around p = 1/2 treated as the separable boundary.
pub const BOUNDARY_BAND: f64 = 1e-12;
/// Largest tolerated negative probability; smaller magnitudes are clamped.
pub const NEGATIVE_TOL: f64 = 1e-12;
/// Largest tolerated deviation of Σp from 1 on input.
pub const NORMALIZATION_TOL: f64 = 1e-9;
/// Separability threshold on the partial-transpose minimum eigenvalue.
pub const PPT_TOL: f64 = 1e-10;

/// Vertices O₁±, O₂±, O₃± of the separable octahedron in t-space.
pub const OCTAHEDRON_VERTICES: [[f64; 3]; 6] = [
    [1.0, 0.0, 0.0],
    [-1.0, 0.0, 0.0],
    [0.0, 1.0, 0.0],
    [0.0, -1.0, 0.0],
    [0.0, 0.0, 1.0],
    [0.0, 0.0, -1.0],
];

/// Vertices of the state tetrahedron in t-space; vertex i is Bell state i+1.
pub const TETRAHEDRON_VERTICES: [[f64; 3]; 4] = [
    [1.0, -1.0, 1.0],
    [-1.0, 1.0, 1.0],
    [1.0, 1.0, -1.0],
    [-1.0, -1.0, -1.0],
];

/// A Bell-diagonal state given by its spectrum over the Bell basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BDState {
    p: [f64; 4],
}

/// Correlation coordinates (t₁, t₂, t₃) with ρ = ¼(I⊗I + Σ tᵢ σᵢ⊗σᵢ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TVector {
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
}

/// Where a state sits relative to the separable octahedron.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionClass {
    SeparableInterior,
    SeparableBoundary,
    /// Entangled with dominant Bell index `k` (1-based).
    Entangled(usize),
}

impl RegionClass {
    pub fn is_entangled(&self) -> bool {
        matches!(self, RegionClass::Entangled(_))
    }

    pub fn is_separable(&self) -> bool {
        !self.is_entangled()
    }

    pub fn label(&self) -> &'static str {
        match self {
            RegionClass::SeparableInterior => "separable_interior",
            RegionClass::SeparableBoundary => "separable_boundary",
            RegionClass::Entangled(_) => "entangled",
        }
    }
}

impl fmt::Display for RegionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionClass::Entangled(k) => write!(f, "entangled({k})"),
            other => f.write_str(other.label()),
        }
    }
}

/// Validated two-qubit density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix4 {
    m: CMatrix,
}

impl BDState {
    /// Validates and normalizes a probability 4-vector.
    ///
    /// Components in `[-1e-12, 0)` are clamped to zero and the vector is
    /// rescaled so that it sums to one exactly (up to rounding).
    pub fn from_probs(p: [f64; 4]) -> Result<Self> {
        if p.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        if let Some((index, &value)) = p.iter().enumerate().find(|(_, &v)| v < -NEGATIVE_TOL) {
            return Err(Error::NegativeProbability { index, value });
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::NotNormalized { sum });
        }
        let clamped = p.map(|v| v.max(0.0));
        let sum: f64 = clamped.iter().sum();
        Ok(Self {
            p: clamped.map(|v| v / sum),
        })
    }

    /// Uniform mixture I/4.
    pub fn maximally_mixed() -> Self {
        Self { p: [0.25; 4] }
    }

    /// Pure Bell state with 1-based index `k`.
    pub fn bell(k: usize) -> Self {
        assert!((1..=4).contains(&k), "Bell index must be in 1..=4");
        let mut p = [0.0; 4];
        p[k - 1] = 1.0;
        Self { p }
    }

    pub fn probs(&self) -> [f64; 4] {
        self.p
    }

    /// 0-based index of the largest probability; ties go to the smallest index.
    pub fn dominant_index(&self) -> usize {
        let mut best = 0;
        for i in 1..4 {
            if self.p[i] > self.p[best] {
                best = i;
            }
        }
        best
    }

    pub fn max_prob(&self) -> f64 {
        self.p[self.dominant_index()]
    }

    /// Reorders components so that new component i is old component `perm[i]`.
    pub fn permuted(&self, perm: [usize; 4]) -> Self {
        Self {
            p: perm.map(|i| self.p[i]),
        }
    }

    pub fn to_tvec(&self) -> TVector {
        probs_to_tvec(self)
    }

    pub fn density_matrix(&self) -> DensityMatrix4 {
        density_matrix(self)
    }

    pub fn classify(&self) -> RegionClass {
        classify(self)
    }

    pub fn concurrence(&self) -> f64 {
        concurrence(self)
    }

    /// Largest componentwise distance to another state.
    pub fn max_abs_diff(&self, other: &BDState) -> f64 {
        self.p
            .iter()
            .zip(other.p.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl TVector {
    pub fn new(t1: f64, t2: f64, t3: f64) -> Self {
        Self { t1, t2, t3 }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.t1, self.t2, self.t3]
    }

    /// Left-hand sides of the four positivity inequalities; the i-th equals 4pᵢ.
    pub fn tetrahedron_forms(&self) -> [f64; 4] {
        let TVector { t1, t2, t3 } = *self;
        [
            1.0 + t1 - t2 + t3,
            1.0 - t1 + t2 + t3,
            1.0 + t1 + t2 - t3,
            1.0 - t1 - t2 - t3,
        ]
    }

    /// Left-hand sides of the four additional separability inequalities;
    /// they equal 2 − 4p₄, 2 − 4p₃, 2 − 4p₂, 2 − 4p₁ respectively.
    pub fn octahedron_forms(&self) -> [f64; 4] {
        let TVector { t1, t2, t3 } = *self;
        [
            1.0 + t1 + t2 + t3,
            1.0 - t1 - t2 + t3,
            1.0 + t1 - t2 - t3,
            1.0 - t1 + t2 - t3,
        ]
    }

    pub fn l1_norm(&self) -> f64 {
        self.t1.abs() + self.t2.abs() + self.t3.abs()
    }
}

impl DensityMatrix4 {
    /// Validates a 4×4 matrix as a density matrix.
    pub fn from_matrix(m: CMatrix) -> Result<Self> {
        if m.dim() != 4 {
            return Err(Error::DimensionMismatch(format!(
                "expected a 4x4 matrix, got {0}x{0}",
                m.dim()
            )));
        }
        let defect = m.hermitian_defect();
        if defect > 1e-14 {
            return Err(Error::NotHermitian { defect });
        }
        let tr = m.trace().re;
        if (tr - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized { sum: tr });
        }
        let eig = m.hermitian_eigenvalues();
        if let Some((index, &value)) = eig.iter().enumerate().find(|(_, &v)| v < -1e-12) {
            return Err(Error::NegativeProbability { index, value });
        }
        Ok(Self { m })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> CMatrix {
        self.m
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.m.hermitian_eigenvalues()
    }

    pub fn ppt_min_eigenvalue(&self) -> f64 {
        ppt_min_eigenvalue(&self.m).expect("validated density matrix is Hermitian")
    }
}

/// Pauli matrices σ₁, σ₂, σ₃.
pub fn pauli() -> [CMatrix; 3] {
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let mut x = CMatrix::zeros(2);
    x[(0, 1)] = one;
    x[(1, 0)] = one;
    let mut y = CMatrix::zeros(2);
    y[(0, 1)] = -i;
    y[(1, 0)] = i;
    let mut zz = CMatrix::zeros(2);
    zz[(0, 0)] = one;
    zz[(1, 1)] = -one;
    [x, y, zz]
}

/// Bell vector for the 1-based index `k` in the computational basis.
pub fn bell_vector(k: usize) -> [Complex64; 4] {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let o = Complex64::new(0.0, 0.0);
    match k {
        1 => [h, o, o, h],
        2 => [h, o, o, -h],
        3 => [o, h, h, o],
        4 => [o, h, -h, o],
        _ => panic!("Bell index must be in 1..=4, got {k}"),
    }
}

/// Projector |ψₖ⟩⟨ψₖ| for the 1-based Bell index `k`.
pub fn bell_projector(k: usize) -> CMatrix {
    CMatrix::outer(&bell_vector(k))
}

/// Change-of-basis matrix whose columns are the Bell vectors.
pub fn bell_basis() -> CMatrix {
    let mut u = CMatrix::zeros(4);
    for k in 1..=4 {
        let v = bell_vector(k);
        for (row, z) in v.iter().enumerate() {
            u[(row, k - 1)] = *z;
        }
    }
    u
}

pub fn bd_from_probs(p: [f64; 4]) -> Result<BDState> {
    BDState::from_probs(p)
}

pub fn probs_to_tvec(s: &BDState) -> TVector {
    let [p1, p2, p3, p4] = s.p;
    TVector {
        t1: p1 - p2 + p3 - p4,
        t2: -p1 + p2 + p3 - p4,
        t3: p1 + p2 - p3 - p4,
    }
}

/// Inverse of [`probs_to_tvec`]: each pᵢ is a tetrahedron form divided by 4.
pub fn tvec_to_probs(t: &TVector) -> Result<BDState> {
    if t.as_array().iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    let forms = t.tetrahedron_forms();
    if let Some((index, &f)) = forms.iter().enumerate().find(|(_, &f)| f < -NEGATIVE_TOL) {
        return Err(Error::OutsideTetrahedron {
            index,
            violation: -f,
        });
    }
    let p = forms.map(|f| (f / 4.0).max(0.0));
    Ok(BDState { p })
}

/// ρ = ¼(I⊗I + Σᵢ tᵢ σᵢ⊗σᵢ).
pub fn density_matrix(s: &BDState) -> DensityMatrix4 {
    DensityMatrix4 {
        m: pauli_expansion(&s.to_tvec()),
    }
}

pub(crate) fn pauli_expansion(t: &TVector) -> CMatrix {
    let mut rho = CMatrix::identity(4);
    for (sigma, ti) in pauli().iter().zip(t.as_array()) {
        rho = &rho + &sigma.kron(sigma).scale(ti);
    }
    rho.scale(0.25)
}

/// Σᵢ pᵢ |ψᵢ⟩⟨ψᵢ|, the second route to the density matrix.
pub fn bell_projector_sum(s: &BDState) -> CMatrix {
    (1..=4).fold(CMatrix::zeros(4), |acc, k| {
        &acc + &bell_projector(k).scale(s.p[k - 1])
    })
}

pub fn classify(s: &BDState) -> RegionClass {
    let k = s.dominant_index();
    let pmax = s.p[k];
    if pmax > 0.5 + BOUNDARY_BAND {
        RegionClass::Entangled(k + 1)
    } else if pmax >= 0.5 - BOUNDARY_BAND {
        RegionClass::SeparableBoundary
    } else {
        RegionClass::SeparableInterior
    }
}

/// max(0, 2·maxᵢ pᵢ − 1).
pub fn concurrence(s: &BDState) -> f64 {
    (2.0 * s.max_prob() - 1.0).max(0.0)
}

/// Partial transpose over the second qubit of a 4×4 matrix.
pub fn partial_transpose(m: &CMatrix) -> CMatrix {
    let mut out = CMatrix::zeros(4);
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    out[(2 * a + d, 2 * c + b)] = m[(2 * a + b, 2 * c + d)];
                }
            }
        }
    }
    out
}

/// Minimum eigenvalue of the partial transpose over the second qubit.
pub fn ppt_min_eigenvalue(m: &CMatrix) -> Result<f64> {
    if m.dim() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "expected a 4x4 matrix, got {0}x{0}",
            m.dim()
        )));
    }
    let defect = m.hermitian_defect();
    if defect > 1e-12 {
        return Err(Error::NotHermitian { defect });
    }
    Ok(partial_transpose(m).hermitian_eigenvalues()[0])
}

/// Separability predicate on probabilities: all pᵢ ≤ 1/2 within the band.
pub fn separable_by_probs(s: &BDState) -> bool {
    s.p.iter().all(|&v| v <= 0.5 + BOUNDARY_BAND)
}

/// Separability predicate on the eight t-space inequalities.
pub fn separable_by_inequalities(t: &TVector) -> bool {
    t.tetrahedron_forms()
        .iter()
        .chain(t.octahedron_forms().iter())
        .all(|&f| f >= -BOUNDARY_BAND)
}

/// Separability predicate on the octahedron |t₁|+|t₂|+|t₃| ≤ 1.
pub fn separable_by_l1(t: &TVector) -> bool {
    t.l1_norm() <= 1.0 + BOUNDARY_BAND
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn st(p: [f64; 4]) -> BDState {
        BDState::from_probs(p).unwrap()
    }

    #[test]
    fn from_probs_accepts_and_rejects() {
        assert!(BDState::from_probs([0.7, 0.1, 0.1, 0.1]).is_ok());
        assert!(BDState::from_probs([0.25; 4]).is_ok());
        assert!(matches!(
            BDState::from_probs([0.7, 0.2, 0.2, 0.1]),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            BDState::from_probs([1.1, -0.1, 0.0, 0.0]),
            Err(Error::NegativeProbability { index: 1, .. })
        ));
        assert!(matches!(
            BDState::from_probs([f64::NAN, 0.0, 0.0, 1.0]),
            Err(Error::NonFinite)
        ));
    }

    #[test]
    fn tiny_negatives_are_clamped() {
        let s = st([0.5 + 5e-13, -5e-13, 0.25, 0.25]);
        assert_eq!(s.probs()[1], 0.0);
        assert_abs_diff_eq!(s.probs().iter().sum::<f64>(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn tvec_examples() {
        let t = st([0.7, 0.1, 0.1, 0.1]).to_tvec();
        assert_abs_diff_eq!(t.t1, 0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(t.t2, -0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(t.t3, 0.6, epsilon = 1e-15);
        assert_eq!(BDState::maximally_mixed().to_tvec(), TVector::new(0.0, 0.0, 0.0));
        assert_eq!(BDState::bell(1).to_tvec(), TVector::new(1.0, -1.0, 1.0));
    }

    #[test]
    fn bell_states_sit_on_tetrahedron_vertices() {
        for k in 1..=4 {
            assert_eq!(BDState::bell(k).to_tvec().as_array(), TETRAHEDRON_VERTICES[k - 1]);
        }
    }

    #[test]
    fn octahedron_vertices_are_boundary_states() {
        for v in OCTAHEDRON_VERTICES {
            let s = tvec_to_probs(&TVector::new(v[0], v[1], v[2])).unwrap();
            assert_eq!(s.classify(), RegionClass::SeparableBoundary);
            assert_abs_diff_eq!(s.to_tvec().l1_norm(), 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn tvec_to_probs_examples() {
        let s = tvec_to_probs(&TVector::new(0.0, 0.0, 0.0)).unwrap();
        assert_eq!(s.probs(), [0.25; 4]);
        let s = tvec_to_probs(&TVector::new(0.6, -0.6, 0.6)).unwrap();
        for (a, b) in s.probs().iter().zip([0.7, 0.1, 0.1, 0.1]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-15);
        }
        assert!(matches!(
            tvec_to_probs(&TVector::new(1.0, 1.0, 1.0)),
            Err(Error::OutsideTetrahedron { index: 3, .. })
        ));
    }

    #[test]
    fn density_matrix_examples() {
        let rho = BDState::maximally_mixed().density_matrix();
        assert!((rho.matrix() - &CMatrix::identity(4).scale(0.25)).max_abs() < 1e-15);

        let rho = BDState::bell(1).density_matrix();
        assert!((rho.matrix() - &bell_projector(1)).max_abs() < 1e-15);
        assert_abs_diff_eq!(rho.matrix()[(0, 3)].re, 0.5, epsilon = 1e-15);

        // U† ρ U in the Bell basis should be diag(p)
        let s = st([0.7, 0.1, 0.1, 0.1]);
        let u = bell_basis();
        let in_bell = &(&u.adjoint() * s.density_matrix().matrix()) * &u;
        let expected = CMatrix::from_real_diag(&[0.7, 0.1, 0.1, 0.1]);
        assert!((&in_bell - &expected).max_abs() < 1e-14);
    }

    #[test]
    fn density_matrix_validation() {
        let ok = DensityMatrix4::from_matrix(CMatrix::identity(4).scale(0.25));
        assert!(ok.is_ok());
        let mut bad = CMatrix::identity(4).scale(0.25);
        bad[(0, 1)] = Complex64::new(0.1, 0.0);
        assert!(matches!(
            DensityMatrix4::from_matrix(bad),
            Err(Error::NotHermitian { .. })
        ));
        let neg = CMatrix::from_real_diag(&[0.6, 0.6, -0.1, -0.1]);
        assert!(matches!(
            DensityMatrix4::from_matrix(neg),
            Err(Error::NegativeProbability { .. })
        ));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(st([0.7, 0.1, 0.1, 0.1]).classify(), RegionClass::Entangled(1));
        assert_eq!(
            st([0.5, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0]).classify(),
            RegionClass::SeparableBoundary
        );
        assert_eq!(BDState::maximally_mixed().classify(), RegionClass::SeparableInterior);
        assert_eq!(st([0.1, 0.1, 0.1, 0.7]).classify(), RegionClass::Entangled(4));
    }

    #[test]
    fn concurrence_examples() {
        assert_abs_diff_eq!(st([0.7, 0.1, 0.1, 0.1]).concurrence(), 0.4, epsilon = 1e-15);
        assert_eq!(BDState::maximally_mixed().concurrence(), 0.0);
        assert_eq!(BDState::bell(1).concurrence(), 1.0);
    }

    #[test]
    fn ppt_examples() {
        let v = BDState::maximally_mixed().density_matrix().ppt_min_eigenvalue();
        assert_abs_diff_eq!(v, 0.25, epsilon = 1e-14);
        let v = BDState::bell(1).density_matrix().ppt_min_eigenvalue();
        assert_abs_diff_eq!(v, -0.5, epsilon = 1e-14);
        let v = st([0.5, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0])
            .density_matrix()
            .ppt_min_eigenvalue();
        assert_abs_diff_eq!(v, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn ppt_rejects_non_hermitian() {
        let mut m = CMatrix::identity(4).scale(0.25);
        m[(0, 2)] = Complex64::new(0.0, 0.3);
        assert!(matches!(ppt_min_eigenvalue(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn partial_transpose_of_bell_projector() {
        // PT of |φ+⟩⟨φ+| is SWAP/2
        let pt = partial_transpose(&bell_projector(1));
        let mut swap = CMatrix::zeros(4);
        for (i, j) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
            swap[(i, j)] = Complex64::new(0.5, 0.0);
        }
        assert!((&pt - &swap).max_abs() < 1e-15);
    }

    #[test]
    fn dominant_index_ties_pick_smallest() {
        assert_eq!(st([0.25; 4]).dominant_index(), 0);
        assert_eq!(st([0.1, 0.4, 0.4, 0.1]).dominant_index(), 1);
    }
}
