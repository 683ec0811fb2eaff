//! First-order optimality certificates for
//!
//! ```text
//! minimize f(x)  subject to  h(x) = 0,  g(x) ≤ 0
//! ```
//!
//! with Lagrangian L(x, ζ, y) = f(x) + Σ ζᵢ hᵢ(x) + Σ yᵢ gᵢ(x).
//! Gradients are supplied by the caller.

use crate::error::{Error, Result};

/// A scalar function with an analytic gradient.
pub trait Differentiable {
    fn value(&self, x: &[f64]) -> f64;
    fn gradient(&self, x: &[f64]) -> Vec<f64>;
}

/// Adapts a pair of closures into a [`Differentiable`].
pub struct FnWithGradient<F, G> {
    f: F,
    g: G,
}

impl<F, G> FnWithGradient<F, G>
where
    F: Fn(&[f64]) -> f64,
    G: Fn(&[f64]) -> Vec<f64>,
{
    pub fn new(f: F, g: G) -> Self {
        Self { f, g }
    }
}

impl<F, G> Differentiable for FnWithGradient<F, G>
where
    F: Fn(&[f64]) -> f64,
    G: Fn(&[f64]) -> Vec<f64>,
{
    fn value(&self, x: &[f64]) -> f64 {
        (self.f)(x)
    }

    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        (self.g)(x)
    }
}

/// Affine function aᵀx + c.
#[derive(Debug, Clone)]
pub struct Affine {
    pub a: Vec<f64>,
    pub c: f64,
}

impl Differentiable for Affine {
    fn value(&self, x: &[f64]) -> f64 {
        self.a.iter().zip(x).map(|(a, x)| a * x).sum::<f64>() + self.c
    }

    fn gradient(&self, _x: &[f64]) -> Vec<f64> {
        self.a.clone()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KKTReport {
    pub primal_feasible_eq: bool,
    pub primal_feasible_ineq: bool,
    pub dual_feasible: bool,
    pub complementary: bool,
    pub stationary: bool,
    /// Per-condition violations in the order above.
    pub violations: [f64; 5],
    pub max_violation: f64,
    pub tol: f64,
    pub zeta: Vec<f64>,
    pub y: Vec<f64>,
}

impl KKTReport {
    pub fn all_satisfied(&self) -> bool {
        self.primal_feasible_eq
            && self.primal_feasible_ineq
            && self.dual_feasible
            && self.complementary
            && self.stationary
    }

    /// Names of the conditions that failed.
    pub fn failures(&self) -> Vec<&'static str> {
        let names = [
            "primal_feasible_eq",
            "primal_feasible_ineq",
            "dual_feasible",
            "complementary",
            "stationary",
        ];
        let flags = [
            self.primal_feasible_eq,
            self.primal_feasible_ineq,
            self.dual_feasible,
            self.complementary,
            self.stationary,
        ];
        names
            .into_iter()
            .zip(flags)
            .filter(|(_, ok)| !ok)
            .map(|(n, _)| n)
            .collect()
    }
}

fn check_len(what: &str, got: usize, want: usize) -> Result<()> {
    if got != want {
        return Err(Error::DimensionMismatch(format!(
            "{what} has length {got}, expected {want}"
        )));
    }
    Ok(())
}

/// Evaluates the five KKT conditions at (x, ζ, y), each against `tol`.
pub fn check_kkt(
    f: &dyn Differentiable,
    g: &[&dyn Differentiable],
    h: &[&dyn Differentiable],
    x: &[f64],
    zeta: &[f64],
    y: &[f64],
    tol: f64,
) -> Result<KKTReport> {
    check_len("zeta", zeta.len(), h.len())?;
    check_len("y", y.len(), g.len())?;
    let n = x.len();

    let mut lagrangian_grad = f.gradient(x);
    check_len("gradient of f", lagrangian_grad.len(), n)?;
    for (fun, &mult) in h.iter().zip(zeta).chain(g.iter().zip(y)) {
        let grad = fun.gradient(x);
        check_len("constraint gradient", grad.len(), n)?;
        for (acc, gi) in lagrangian_grad.iter_mut().zip(grad) {
            *acc += mult * gi;
        }
    }

    let g_vals: Vec<f64> = g.iter().map(|gi| gi.value(x)).collect();
    let eq = h.iter().map(|hi| hi.value(x).abs()).fold(0.0, f64::max);
    let ineq = g_vals.iter().map(|v| v.max(0.0)).fold(0.0, f64::max);
    let dual = y.iter().map(|v| (-v).max(0.0)).fold(0.0, f64::max);
    let comp = y
        .iter()
        .zip(&g_vals)
        .map(|(y, g)| (y * g).abs())
        .fold(0.0, f64::max);
    let stat = lagrangian_grad.iter().map(|v| v.abs()).fold(0.0, f64::max);

    let violations = [eq, ineq, dual, comp, stat];
    let max_violation = violations.iter().copied().fold(0.0, f64::max);
    Ok(KKTReport {
        primal_feasible_eq: eq <= tol,
        primal_feasible_ineq: ineq <= tol,
        dual_feasible: dual <= tol,
        complementary: comp <= tol,
        stationary: stat <= tol,
        violations,
        max_violation,
        tol,
        zeta: zeta.to_vec(),
        y: y.to_vec(),
    })
}
