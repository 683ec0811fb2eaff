//! Primal barrier method for small semidefinite programs
//!
//! ```text
//! minimize    cᵀx
//! subject to  F(x) = F₀ + Σᵢ xᵢ Fᵢ ⪰ 0
//! ```
//!
//! with dual
//!
//! ```text
//! maximize    −Tr[F₀ Z]
//! subject to  Z ⪰ 0,  Tr[Fᵢ Z] = cᵢ.
//! ```
//!
//! Each outer iteration centers `t·cᵀx − log det F(x)` by damped Newton and
//! multiplies `t` by 10. At a central point `Z = F(x)⁻¹ / t` is dual feasible
//! and the duality gap equals `m / t`. A phase-I problem with an added slack
//! `F(x) + sI ⪰ 0` supplies the strictly feasible start.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};

pub const DEFAULT_TOL: f64 = 1e-8;
/// Newton step budget shared by phase I and phase II.
pub const MAX_NEWTON_STEPS: usize = 200;
pub const MAX_VARIABLES: usize = 8;
pub const MAX_MATRIX_DIM: usize = 16;

const BARRIER_GROWTH: f64 = 10.0;
const HERMITIAN_TOL: f64 = 1e-14;
/// Newton decrement² ending an intermediate centering step.
const CENTERING_TOL: f64 = 1e-6;
/// Newton decrement² ending the final centering step, where Z is read off.
const POLISH_TOL: f64 = 1e-22;
const UNBOUNDED_NORM: f64 = 1e9;
const PHASE1_BOX: f64 = 1e4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SdpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    MaxIterations,
}

#[derive(Debug, Clone)]
pub struct SDPProblem {
    c: Vec<f64>,
    f0: CMatrix,
    fi: Vec<CMatrix>,
    /// Real diagonals of F₀ and the Fᵢ when every matrix is real diagonal.
    diag: Option<(Vec<f64>, Vec<Vec<f64>>)>,
}

fn real_diagonal(m: &CMatrix) -> Option<Vec<f64>> {
    let n = m.dim();
    for i in 0..n {
        for j in 0..n {
            let z = m[(i, j)];
            if z.im != 0.0 || (i != j && z.re != 0.0) {
                return None;
            }
        }
    }
    Some((0..n).map(|i| m[(i, i)].re).collect())
}

/// Primal/dual objectives at the end of one centering step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentralPoint {
    pub t: f64,
    pub primal: f64,
    pub dual: f64,
}

#[derive(Debug, Clone)]
pub struct SDPSolution {
    pub x: Vec<f64>,
    pub z: CMatrix,
    pub pstar: f64,
    pub dstar: f64,
    pub gap: f64,
    pub status: SdpStatus,
    pub newton_steps: usize,
    /// Central points visited by phase II, in order.
    pub path: Vec<CentralPoint>,
}

impl SDPProblem {
    /// Validates a desk-scale problem (n ≤ 8 variables, m ≤ 16).
    pub fn new(c: Vec<f64>, f0: CMatrix, fi: Vec<CMatrix>) -> Result<Self> {
        if c.len() > MAX_VARIABLES || f0.dim() > MAX_MATRIX_DIM {
            return Err(Error::DimensionMismatch(format!(
                "problem exceeds desk scale (n = {}, m = {})",
                c.len(),
                f0.dim()
            )));
        }
        Self::new_unchecked_size(c, f0, fi)
    }

    /// Same validation as [`SDPProblem::new`] without the size limits; used
    /// for internally generated problems (phase I, LP embeddings).
    pub(crate) fn new_unchecked_size(c: Vec<f64>, f0: CMatrix, fi: Vec<CMatrix>) -> Result<Self> {
        if c.len() != fi.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} objective coefficients but {} constraint matrices",
                c.len(),
                fi.len()
            )));
        }
        if c.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        let m = f0.dim();
        for mat in std::iter::once(&f0).chain(fi.iter()) {
            if mat.dim() != m {
                return Err(Error::DimensionMismatch(format!(
                    "constraint matrix is {0}x{0}, expected {m}x{m}",
                    mat.dim()
                )));
            }
            let defect = mat.hermitian_defect();
            if defect > HERMITIAN_TOL {
                return Err(Error::NotHermitian { defect });
            }
        }
        let diag = real_diagonal(&f0).and_then(|d0| {
            let di = fi.iter().map(real_diagonal).collect::<Option<Vec<_>>>()?;
            Some((d0, di))
        });
        Ok(Self { c, f0, fi, diag })
    }

    pub fn c(&self) -> &[f64] {
        &self.c
    }

    pub fn f0(&self) -> &CMatrix {
        &self.f0
    }

    pub fn fi(&self) -> &[CMatrix] {
        &self.fi
    }

    pub fn num_vars(&self) -> usize {
        self.c.len()
    }

    pub fn matrix_dim(&self) -> usize {
        self.f0.dim()
    }

    /// F(x) = F₀ + Σ xᵢ Fᵢ.
    pub fn eval(&self, x: &[f64]) -> CMatrix {
        assert_eq!(x.len(), self.fi.len(), "dimension mismatch");
        self.fi
            .iter()
            .zip(x)
            .fold(self.f0.clone(), |acc, (f, &xi)| &acc + &f.scale(xi))
    }

    /// Diagonal of F(x) for diagonal problems.
    fn eval_diag(&self, x: &[f64]) -> Option<Vec<f64>> {
        let (d0, di) = self.diag.as_ref()?;
        let mut out = d0.clone();
        for (d, &xi) in di.iter().zip(x) {
            for (o, v) in out.iter_mut().zip(d) {
                *o += xi * v;
            }
        }
        Some(out)
    }

    pub fn objective(&self, x: &[f64]) -> f64 {
        self.c.iter().zip(x).map(|(c, x)| c * x).sum()
    }

    /// −Tr[F₀ Z].
    pub fn dual_objective(&self, z: &CMatrix) -> f64 {
        -self.f0.trace_product(z)
    }

    /// max |Tr[Fᵢ Z] − cᵢ|.
    pub fn dual_residual(&self, z: &CMatrix) -> f64 {
        self.fi
            .iter()
            .zip(&self.c)
            .map(|(f, c)| (f.trace_product(z) - c).abs())
            .fold(0.0, f64::max)
    }
}

impl SDPSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == SdpStatus::Optimal
    }

    /// Maps non-optimal statuses onto the corresponding error.
    pub fn into_result(self) -> Result<Self> {
        match self.status {
            SdpStatus::Optimal => Ok(self),
            SdpStatus::Infeasible => Err(Error::Infeasible),
            SdpStatus::Unbounded => Err(Error::Unbounded),
            SdpStatus::MaxIterations => Err(Error::MaxIterations {
                iterations: self.newton_steps,
            }),
        }
    }
}

enum Centering {
    Done,
    Unbounded,
    OutOfSteps,
}

struct Barrier<'a> {
    prob: &'a SDPProblem,
    steps: usize,
    max_steps: usize,
}

impl<'a> Barrier<'a> {
    /// Gradient and Hessian of t·cᵀx − log det F(x).
    fn derivatives(&self, x: &[f64], t: f64) -> Option<(Vec<f64>, Vec<f64>)> {
        let n = x.len();
        let prob = self.prob;
        let mut grad: Vec<f64> = prob.c.iter().map(|c| t * c).collect();
        let mut hess = vec![0.0; n * n];
        if let (Some(s), Some((_, di))) = (prob.eval_diag(x), prob.diag.as_ref()) {
            let inv: Vec<f64> = s.iter().map(|v| 1.0 / v).collect();
            let scaled: Vec<Vec<f64>> = di
                .iter()
                .map(|d| d.iter().zip(&inv).map(|(a, b)| a * b).collect())
                .collect();
            for i in 0..n {
                grad[i] -= scaled[i].iter().sum::<f64>();
                for j in i..n {
                    let h: f64 = scaled[i].iter().zip(&scaled[j]).map(|(a, b)| a * b).sum();
                    hess[i * n + j] = h;
                    hess[j * n + i] = h;
                }
            }
            return Some((grad, hess));
        }
        let finv = prob.eval(x).inverse().ok()?.symmetrized();
        let g_mats: Vec<CMatrix> = prob.fi.iter().map(|fi| &finv * fi).collect();
        for i in 0..n {
            grad[i] -= g_mats[i].trace().re;
            for j in i..n {
                let h = g_mats[i].trace_product(&g_mats[j]);
                hess[i * n + j] = h;
                hess[j * n + i] = h;
            }
        }
        Some((grad, hess))
    }

    /// Newton's method on t·cᵀx − log det F(x), damped as for a
    /// self-concordant function: full steps once the Newton decrement λ is
    /// below ¼, steps of 1/(1 + λ) before that. Centering ends when λ² falls
    /// below `dec_tol`, or when `stop` returns true after an accepted step.
    fn center(
        &mut self,
        x: &mut [f64],
        t: f64,
        dec_tol: f64,
        stop: &dyn Fn(&[f64]) -> bool,
    ) -> Centering {
        let n = x.len();
        loop {
            let (grad, mut hess) = match self.derivatives(x, t) {
                Some(d) => d,
                None => return Centering::Done,
            };
            let ridge = 1e-14 * (0..n).map(|i| hess[i * n + i]).fold(1e-300, f64::max);
            for i in 0..n {
                hess[i * n + i] += ridge;
            }
            let neg_grad: Vec<f64> = grad.iter().map(|g| -g).collect();
            let dx = match linalg::solve_real(&hess, &neg_grad, n) {
                Ok(d) => d,
                Err(_) => return Centering::Unbounded,
            };
            let decrement_sq = -grad.iter().zip(&dx).map(|(g, d)| g * d).sum::<f64>();
            // NaN from a breakdown also ends centering
            if decrement_sq.is_nan() || decrement_sq <= dec_tol {
                return Centering::Done;
            }
            if self.steps >= self.max_steps {
                return Centering::OutOfSteps;
            }

            let dec = decrement_sq.sqrt();
            let mut step = if dec < 0.25 { 1.0 } else { 1.0 / (1.0 + dec) };
            let mut accepted = None;
            for _ in 0..60 {
                let trial: Vec<f64> = x.iter().zip(&dx).map(|(x, d)| x + step * d).collect();
                if is_strictly_feasible(self.prob, &trial) {
                    accepted = Some(trial);
                    break;
                }
                step *= 0.5;
            }
            let Some(trial) = accepted else {
                // No feasible progress left at working precision.
                return Centering::Done;
            };
            let moved = trial
                .iter()
                .zip(x.iter())
                .any(|(a, b)| (a - b).abs() > 4.0 * f64::EPSILON * b.abs().max(1.0));
            if !moved {
                return Centering::Done;
            }
            x.copy_from_slice(&trial);
            self.steps += 1;

            if x.iter().any(|v| v.abs() > UNBOUNDED_NORM) {
                return Centering::Unbounded;
            }
            if stop(x) {
                return Centering::Done;
            }
        }
    }
}

fn is_strictly_feasible(prob: &SDPProblem, x: &[f64]) -> bool {
    if let Some(d) = prob.eval_diag(x) {
        return d.iter().all(|&v| v > 0.0);
    }
    prob.eval(x).cholesky().is_some()
}

/// Finds x with F(x) ≻ 0 by minimizing s over F(x) + sI ⪰ 0, s ≥ −1,
/// |xᵢ| ≤ 1e4. Returns `None` when the optimal slack is nonnegative.
fn phase_one(prob: &SDPProblem, steps: &mut usize, max_steps: usize) -> Option<Vec<f64>> {
    let n = prob.num_vars();
    let m = prob.matrix_dim();
    let dim = m + 1 + 2 * n;

    let embed = |core: &CMatrix, extra: &[f64]| {
        let mut big = CMatrix::zeros(dim);
        for i in 0..m {
            for j in 0..m {
                big[(i, j)] = core[(i, j)];
            }
        }
        for (k, v) in extra.iter().enumerate() {
            big[(m + k, m + k)] = v.into();
        }
        big
    };

    // Blocks after the core: s + 1, then R − xᵢ and R + xᵢ per variable.
    let mut f0_extra = vec![1.0];
    f0_extra.extend(std::iter::repeat_n(PHASE1_BOX, 2 * n));
    let f0 = embed(&prob.f0, &f0_extra);

    let mut fi = Vec::with_capacity(n + 1);
    for (i, f) in prob.fi.iter().enumerate() {
        let mut extra = vec![0.0; 1 + 2 * n];
        extra[1 + 2 * i] = -1.0;
        extra[2 + 2 * i] = 1.0;
        fi.push(embed(f, &extra));
    }
    let mut slack_extra = vec![0.0; 1 + 2 * n];
    slack_extra[0] = 1.0;
    fi.push(embed(&CMatrix::identity(m), &slack_extra));

    let mut c = vec![0.0; n + 1];
    c[n] = 1.0;
    let aux = SDPProblem::new_unchecked_size(c, f0, fi).ok()?;

    let lambda_min = prob.f0.hermitian_eigenvalues()[0];
    let mut y = vec![0.0; n + 1];
    y[n] = (-lambda_min).max(0.0) + 1.0;

    let found = |y: &[f64]| y[n] < 0.0 && is_strictly_feasible(prob, &y[..n]);
    let mut barrier = Barrier {
        prob: &aux,
        steps: *steps,
        max_steps,
    };
    let mut t = 1.0;
    let dim_f = dim as f64;
    let result = loop {
        match barrier.center(&mut y, t, CENTERING_TOL, &found) {
            Centering::Done => {}
            Centering::Unbounded | Centering::OutOfSteps => break None,
        }
        if found(&y) {
            break Some(y[..n].to_vec());
        }
        if dim_f / t < 1e-10 {
            break None;
        }
        t *= BARRIER_GROWTH;
    };
    *steps = barrier.steps;
    result
}

/// Solves the SDP to duality gap `tol`.
///
/// The returned status is `Optimal` only when the gap target was met;
/// `MaxIterations` carries the best iterate found.
pub fn solve_sdp(prob: &SDPProblem, tol: f64) -> SDPSolution {
    solve_sdp_with_budget(prob, tol, MAX_NEWTON_STEPS)
}

pub(crate) fn solve_sdp_with_budget(prob: &SDPProblem, tol: f64, max_steps: usize) -> SDPSolution {
    let n = prob.num_vars();
    let m = prob.matrix_dim();
    let mut steps = 0;

    let failed = |status: SdpStatus, x: Vec<f64>, steps: usize| SDPSolution {
        pstar: prob.objective(&x),
        x,
        z: CMatrix::zeros(m),
        dstar: f64::NEG_INFINITY,
        gap: f64::INFINITY,
        status,
        newton_steps: steps,
        path: Vec::new(),
    };

    let mut x = vec![0.0; n];
    if !is_strictly_feasible(prob, &x) {
        match phase_one(prob, &mut steps, max_steps) {
            Some(start) => x = start,
            None if steps >= max_steps => return failed(SdpStatus::MaxIterations, x, steps),
            None => return failed(SdpStatus::Infeasible, x, steps),
        }
    }

    let mut barrier = Barrier {
        prob,
        steps,
        max_steps,
    };
    let mut path = Vec::new();
    let mut t = 1.0;
    let never = |_: &[f64]| false;
    loop {
        let last = (m as f64) / t < tol;
        let dec_tol = if last { POLISH_TOL } else { CENTERING_TOL };
        match barrier.center(&mut x, t, dec_tol, &never) {
            Centering::Done => {}
            Centering::Unbounded => return failed(SdpStatus::Unbounded, x, barrier.steps),
            Centering::OutOfSteps => {
                let mut sol = certify(prob, &x, t, barrier.steps, path);
                sol.status = SdpStatus::MaxIterations;
                return sol;
            }
        }
        let z = project_dual(prob, central_dual(prob, &x, t));
        path.push(CentralPoint {
            t,
            primal: prob.objective(&x),
            dual: prob.dual_objective(&z),
        });
        if last {
            let sol = certify(prob, &x, t, barrier.steps, path);
            return sol;
        }
        t *= BARRIER_GROWTH;
    }
}

fn central_dual(prob: &SDPProblem, x: &[f64], t: f64) -> CMatrix {
    if let Some(d) = prob.eval_diag(x) {
        if d.iter().all(|&v| v > 0.0) {
            let z: Vec<f64> = d.iter().map(|v| 1.0 / (t * v)).collect();
            return CMatrix::from_real_diag(&z);
        }
    }
    prob.eval(x)
        .inverse()
        .map(|inv| inv.symmetrized().scale(1.0 / t))
        .unwrap_or_else(|_| CMatrix::zeros(prob.matrix_dim()))
}

/// Removes the dual residual Tr[Fᵢ Z] − cᵢ left by rounding in F(x)⁻¹,
/// correcting along Z Fⱼ Z so that positive semidefiniteness survives.
fn project_dual(prob: &SDPProblem, z: CMatrix) -> CMatrix {
    let n = prob.num_vars();
    if n == 0 {
        return z;
    }
    let dirs: Vec<CMatrix> = prob.fi.iter().map(|f| &(&z * f) * &z).collect();
    let mut gram = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            gram[i * n + j] = prob.fi[i].trace_product(&dirs[j]);
        }
    }
    let r: Vec<f64> = (0..n)
        .map(|i| prob.fi[i].trace_product(&z) - prob.c[i])
        .collect();
    let Ok(beta) = linalg::solve_real(&gram, &r, n) else {
        return z;
    };
    let projected = dirs
        .iter()
        .zip(&beta)
        .fold(z.clone(), |acc, (d, b)| &acc - &d.scale(*b))
        .symmetrized();
    if prob.dual_residual(&projected) < prob.dual_residual(&z) {
        projected
    } else {
        z
    }
}

fn certify(prob: &SDPProblem, x: &[f64], t: f64, steps: usize, path: Vec<CentralPoint>) -> SDPSolution {
    let z = project_dual(prob, central_dual(prob, x, t));
    let pstar = prob.objective(x);
    let dstar = prob.dual_objective(&z);
    SDPSolution {
        x: x.to_vec(),
        z,
        pstar,
        dstar,
        gap: pstar - dstar,
        status: SdpStatus::Optimal,
        newton_steps: steps,
        path,
    }
}

/// Feasibility slack used by [`duality_gap`].
pub const FEASIBILITY_TOL: f64 = 1e-9;
const GAP_AGREEMENT_TOL: f64 = 1e-10;

/// Duality gap of a primal/dual pair, computed as both cᵀx + Tr[F₀Z] and
/// Tr[F(x)Z]; the two must agree.
pub fn duality_gap(prob: &SDPProblem, x: &[f64], z: &CMatrix) -> Result<f64> {
    if x.len() != prob.num_vars() || z.dim() != prob.matrix_dim() {
        return Err(Error::DimensionMismatch("x or Z has the wrong size".into()));
    }
    let fx = prob.eval(x);
    let fx_min = fx.hermitian_eigenvalues()[0];
    if fx_min < -FEASIBILITY_TOL {
        return Err(Error::NotFeasible(format!(
            "primal: F(x) has eigenvalue {fx_min}"
        )));
    }
    let defect = z.hermitian_defect();
    if defect > FEASIBILITY_TOL {
        return Err(Error::NotFeasible(format!("dual: Z not Hermitian ({defect})")));
    }
    let z_min = z.hermitian_eigenvalues()[0];
    if z_min < -FEASIBILITY_TOL {
        return Err(Error::NotFeasible(format!("dual: Z has eigenvalue {z_min}")));
    }
    for (i, (f, c)) in prob.fi.iter().zip(&prob.c).enumerate() {
        let r = f.trace_product(z) - c;
        if r.abs() > FEASIBILITY_TOL {
            return Err(Error::NotFeasible(format!(
                "dual: Tr[F{} Z] - c{} = {r}",
                i + 1,
                i + 1
            )));
        }
    }
    let via_objectives = prob.objective(x) + prob.f0.trace_product(z);
    let via_product = fx.trace_product(z);
    if (via_objectives - via_product).abs() > GAP_AGREEMENT_TOL {
        return Err(Error::NotFeasible(format!(
            "gap expressions disagree: {via_objectives} vs {via_product}"
        )));
    }
    if via_product < -GAP_AGREEMENT_TOL {
        return Err(Error::NotFeasible(format!("negative gap {via_product}")));
    }
    Ok(via_product)
}

/// Complementary slackness: both F(x)Z and ZF(x) vanish entrywise within `tol`.
pub fn check_slackness(fx: &CMatrix, z: &CMatrix, tol: f64) -> bool {
    (fx * z).max_abs() <= tol && (z * fx).max_abs() <= tol
}

// JSON import/export. Entries are either a real number or a [re, im] pair.

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Entry {
    Real(f64),
    Complex([f64; 2]),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemJson {
    c: Vec<f64>,
    #[serde(rename = "F0")]
    f0: Vec<Vec<Entry>>,
    #[serde(rename = "Fi")]
    fi: Vec<Vec<Vec<Entry>>>,
}

fn matrix_from_json(rows: &[Vec<Entry>]) -> Result<CMatrix> {
    let n = rows.len();
    let mut m = CMatrix::zeros(n);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Parse(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        for (j, e) in row.iter().enumerate() {
            m[(i, j)] = match *e {
                Entry::Real(re) => re.into(),
                Entry::Complex([re, im]) => num_complex::Complex64::new(re, im),
            };
        }
    }
    Ok(m)
}

fn matrix_to_json(m: &CMatrix) -> Vec<Vec<Entry>> {
    (0..m.dim())
        .map(|i| {
            (0..m.dim())
                .map(|j| {
                    let z = m[(i, j)];
                    if z.im == 0.0 {
                        Entry::Real(z.re)
                    } else {
                        Entry::Complex([z.re, z.im])
                    }
                })
                .collect()
        })
        .collect()
}

impl SDPProblem {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: ProblemJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let f0 = matrix_from_json(&raw.f0)?;
        let fi = raw
            .fi
            .iter()
            .map(|m| matrix_from_json(m))
            .collect::<Result<Vec<_>>>()?;
        Self::new(raw.c, f0, fi)
    }

    pub fn to_json(&self) -> String {
        let raw = ProblemJson {
            c: self.c.clone(),
            f0: matrix_to_json(&self.f0),
            fi: self.fi.iter().map(matrix_to_json).collect(),
        };
        serde_json::to_string(&raw).expect("problem serializes")
    }
}
