//! Standard-form linear programs
//!
//! ```text
//! minimize cᵀx  subject to  Ax = b, x ≥ 0
//! ```
//!
//! The feasible set is parametrized as x = x₀ + Nz over a null-space basis N
//! of A, which turns the LP into a diagonal SDP `diag(x₀ + Nz) ⪰ 0` solved
//! by the barrier method. The returned point is the optimal vertex nearest
//! to the barrier solution, found by enumerating bases; its basis supplies
//! the multipliers (ζ, y) of the optimality system
//!
//! ```text
//! Aᵀζ + y = c,  Ax = b,  x ≥ 0,  y ≥ 0,  xᵢyᵢ = 0.
//! ```

use crate::convex::sdp::{self, SDPProblem, SdpStatus};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};

/// Largest number of standard-form variables accepted.
pub const MAX_LP_VARIABLES: usize = 16;
/// Residual tolerance for the optimality system.
pub const LP_TOL: f64 = 1e-9;
const ZERO_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub zeta: Vec<f64>,
    pub y: Vec<f64>,
    pub objective: f64,
    /// xᵢ + yᵢ > 1e-9 for every i.
    pub strictly_complementary: bool,
    /// Optimal value reached by the barrier path, when the feasible set has
    /// a nonempty interior.
    pub barrier_objective: Option<f64>,
}

/// Residuals of the optimality system at a candidate triple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LpResiduals {
    pub stationarity: f64,
    pub primal: f64,
    pub x_negativity: f64,
    pub y_negativity: f64,
    pub complementarity: f64,
}

impl LpResiduals {
    pub fn max(&self) -> f64 {
        [
            self.stationarity,
            self.primal,
            self.x_negativity,
            self.y_negativity,
            self.complementarity,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

fn validate(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> Result<()> {
    let n = c.len();
    if n == 0 || n > MAX_LP_VARIABLES {
        return Err(Error::DimensionMismatch(format!(
            "LP has {n} variables, expected 1..={MAX_LP_VARIABLES}"
        )));
    }
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "A has {} rows but b has {} entries",
            a.len(),
            b.len()
        )));
    }
    if let Some(row) = a.iter().find(|r| r.len() != n) {
        return Err(Error::DimensionMismatch(format!(
            "A row has {} columns, expected {n}",
            row.len()
        )));
    }
    let finite = c.iter().chain(b).chain(a.iter().flatten()).all(|v| v.is_finite());
    if !finite {
        return Err(Error::NonFinite);
    }
    Ok(())
}

/// Evaluates the optimality system for (x, ζ, y).
pub fn lp_residuals(c: &[f64], a: &[Vec<f64>], b: &[f64], x: &[f64], zeta: &[f64], y: &[f64]) -> LpResiduals {
    let n = c.len();
    let stationarity = (0..n)
        .map(|j| {
            let atz: f64 = a.iter().zip(zeta).map(|(row, z)| row[j] * z).sum();
            (atz + y[j] - c[j]).abs()
        })
        .fold(0.0, f64::max);
    let primal = a
        .iter()
        .zip(b)
        .map(|(row, bi)| (row.iter().zip(x).map(|(r, x)| r * x).sum::<f64>() - bi).abs())
        .fold(0.0, f64::max);
    LpResiduals {
        stationarity,
        primal,
        x_negativity: x.iter().map(|v| (-v).max(0.0)).fold(0.0, f64::max),
        y_negativity: y.iter().map(|v| (-v).max(0.0)).fold(0.0, f64::max),
        complementarity: x.iter().zip(y).map(|(x, y)| (x * y).abs()).fold(0.0, f64::max),
    }
}

/// Greedy selection of linearly independent rows; returns their indices.
/// Errors with `Infeasible` if a dependent row has an inconsistent rhs.
fn independent_rows(a: &[Vec<f64>], b: &[f64]) -> Result<Vec<usize>> {
    let n = a.first().map_or(0, Vec::len);
    // Orthonormal basis of the span of accepted rows, each with its rhs.
    let mut basis: Vec<(Vec<f64>, f64)> = Vec::new();
    let mut keep = Vec::new();
    for (i, (row, &bi)) in a.iter().zip(b).enumerate() {
        let mut v = row.clone();
        let mut rhs = bi;
        for (q, qb) in &basis {
            let d: f64 = v.iter().zip(q).map(|(x, y)| x * y).sum();
            for k in 0..n {
                v[k] -= d * q[k];
            }
            rhs -= d * qb;
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let scale = row.iter().map(|x| x * x).sum::<f64>().sqrt().max(1.0);
        if norm <= 1e-10 * scale {
            if rhs.abs() > 1e-9 * (1.0 + bi.abs()) {
                return Err(Error::Infeasible);
            }
            continue;
        }
        basis.push((v.iter().map(|x| x / norm).collect(), rhs / norm));
        keep.push(i);
    }
    Ok(keep)
}

/// Orthonormal basis for the null space of the given rows.
fn null_space(rows: &[Vec<f64>], n: usize) -> Vec<Vec<f64>> {
    let mut row_basis: Vec<Vec<f64>> = Vec::new();
    for r in rows {
        let mut v = r.clone();
        for q in &row_basis {
            let d: f64 = v.iter().zip(q).map(|(x, y)| x * y).sum();
            v.iter_mut().zip(q).for_each(|(x, y)| *x -= d * y);
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-10 {
            row_basis.push(v.iter().map(|x| x / norm).collect());
        }
    }
    let mut null: Vec<Vec<f64>> = Vec::new();
    for k in 0..n {
        let mut v = vec![0.0; n];
        v[k] = 1.0;
        for _ in 0..2 {
            for q in row_basis.iter().chain(null.iter()) {
                let d: f64 = v.iter().zip(q).map(|(x, y)| x * y).sum();
                v.iter_mut().zip(q).for_each(|(x, y)| *x -= d * y);
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-8 {
            null.push(v.iter().map(|x| x / norm).collect());
        }
    }
    null
}

/// Minimum-norm solution of the full-row-rank system `a x = b`.
fn min_norm_solution(a: &[Vec<f64>], b: &[f64]) -> Result<Vec<f64>> {
    let r = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut gram = vec![0.0; r * r];
    for i in 0..r {
        for j in 0..r {
            gram[i * r + j] = a[i].iter().zip(&a[j]).map(|(x, y)| x * y).sum();
        }
    }
    let w = linalg::solve_real(&gram, b, r)?;
    Ok((0..n).map(|k| (0..r).map(|i| a[i][k] * w[i]).sum()).collect())
}

struct Vertex {
    basis: Vec<usize>,
    x: Vec<f64>,
    zeta: Vec<f64>,
    y: Vec<f64>,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return out;
        };
        idx[i] += 1;
        for j in (i + 1)..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Basic feasible solutions of {Ax = b, x ≥ 0} for full-row-rank `a`,
/// each paired with the multipliers of its basis.
fn basic_feasible_solutions(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> Vec<Vertex> {
    let r = a.len();
    let n = c.len();
    let mut out = Vec::new();
    if r == 0 {
        out.push(Vertex {
            basis: Vec::new(),
            x: vec![0.0; n],
            zeta: Vec::new(),
            y: c.to_vec(),
        });
        return out;
    }
    for basis in combinations(n, r) {
        let mut bm = vec![0.0; r * r];
        for i in 0..r {
            for (jj, &j) in basis.iter().enumerate() {
                bm[i * r + jj] = a[i][j];
            }
        }
        let Ok(xb) = linalg::solve_real(&bm, b, r) else {
            continue;
        };
        if xb.iter().any(|&v| v < -ZERO_TOL) {
            continue;
        }
        // Bᵀζ = c_B
        let mut bt = vec![0.0; r * r];
        for i in 0..r {
            for jj in 0..r {
                bt[jj * r + i] = bm[i * r + jj];
            }
        }
        let cb: Vec<f64> = basis.iter().map(|&j| c[j]).collect();
        let Ok(zeta) = linalg::solve_real(&bt, &cb, r) else {
            continue;
        };
        let mut x = vec![0.0; n];
        for (jj, &j) in basis.iter().enumerate() {
            x[j] = xb[jj].max(0.0);
        }
        let mut y: Vec<f64> = (0..n)
            .map(|j| c[j] - (0..r).map(|i| a[i][j] * zeta[i]).sum::<f64>())
            .collect();
        for &j in &basis {
            y[j] = 0.0;
        }
        out.push(Vertex { basis, x, zeta, y });
    }
    out
}

fn barrier_solve(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> Option<(Vec<f64>, Vec<f64>, f64)> {
    let n = c.len();
    let x0 = if a.is_empty() {
        vec![0.0; n]
    } else {
        min_norm_solution(a, b).ok()?
    };
    let null = null_space(a, n);
    if null.is_empty() {
        return None;
    }
    let f0 = CMatrix::from_real_diag(&x0);
    let fi: Vec<CMatrix> = null.iter().map(|v| CMatrix::from_real_diag(v)).collect();
    let cz: Vec<f64> = null
        .iter()
        .map(|v| v.iter().zip(c).map(|(v, c)| v * c).sum())
        .collect();
    let prob = SDPProblem::new_unchecked_size(cz, f0, fi).ok()?;
    let sol = sdp::solve_sdp(&prob, 1e-10);
    if sol.status != SdpStatus::Optimal {
        return None;
    }
    let x = prob.eval(&sol.x);
    let x: Vec<f64> = (0..n).map(|i| x[(i, i)].re).collect();
    let y: Vec<f64> = (0..n).map(|i| sol.z[(i, i)].re).collect();
    let obj = x.iter().zip(c).map(|(x, c)| x * c).sum();
    Some((x, y, obj))
}

/// Solves a standard-form LP with at most 16 variables.
pub fn solve_lp(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> Result<LpSolution> {
    validate(c, a, b)?;
    let n = c.len();
    let keep = independent_rows(a, b)?;
    let a_red: Vec<Vec<f64>> = keep.iter().map(|&i| a[i].clone()).collect();
    let b_red: Vec<f64> = keep.iter().map(|&i| b[i]).collect();

    let vertices = basic_feasible_solutions(c, &a_red, &b_red);
    if vertices.is_empty() {
        return Err(Error::Infeasible);
    }
    let scale = c.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
    let optimal: Vec<&Vertex> = vertices
        .iter()
        .filter(|v| v.y.iter().all(|&y| y >= -ZERO_TOL * scale))
        .collect();
    if optimal.is_empty() {
        return Err(Error::Unbounded);
    }

    let barrier = barrier_solve(c, &a_red, &b_red);
    let distance = |v: &Vertex| match &barrier {
        Some((xb, _, _)) => v
            .x
            .iter()
            .zip(xb)
            .map(|(p, q)| (p - q).abs())
            .fold(0.0, f64::max),
        None => 0.0,
    };
    // Nearest optimal vertex; `min_by` keeps the first (lexicographic basis) on ties.
    let best = optimal
        .iter()
        .min_by(|u, v| distance(u).total_cmp(&distance(v)))
        .expect("nonempty");
    debug_assert!(best.basis.windows(2).all(|w| w[0] < w[1]));

    let mut zeta = vec![0.0; a.len()];
    for (k, &row) in keep.iter().enumerate() {
        zeta[row] = best.zeta[k];
    }
    let objective: f64 = best.x.iter().zip(c).map(|(x, c)| x * c).sum();
    if let Some((_, _, bobj)) = &barrier {
        debug_assert!(
            (bobj - objective).abs() <= 1e-6 * (1.0 + objective.abs()),
            "barrier {bobj} vs vertex {objective}"
        );
    }
    let strictly_complementary = (0..n).all(|i| best.x[i] + best.y[i] > LP_TOL);
    Ok(LpSolution {
        x: best.x.clone(),
        zeta,
        y: best.y.clone(),
        objective,
        strictly_complementary,
        barrier_objective: barrier.map(|(_, _, o)| o),
    })
}

/// Brute-force optimum by enumerating every basis; independent of the
/// barrier path. Returns `None` when no basic feasible solution exists.
pub fn enumerate_vertices_optimum(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> Option<f64> {
    let keep = independent_rows(a, b).ok()?;
    let a_red: Vec<Vec<f64>> = keep.iter().map(|&i| a[i].clone()).collect();
    let b_red: Vec<f64> = keep.iter().map(|&i| b[i]).collect();
    basic_feasible_solutions(c, &a_red, &b_red)
        .iter()
        .map(|v| v.x.iter().zip(c).map(|(x, c)| x * c).sum::<f64>())
        .min_by(f64::total_cmp)
}
