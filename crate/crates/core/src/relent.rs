//! Shannon entropy, relative entropy, and its minimization over the
//! probability simplex under linear mean constraints.
//!
//! The minimized quantity is I(ω; q) = Σ ωᵢ log(ωᵢ/qᵢ) with ω the candidate
//! and q a strictly positive prior. With constraints 1ᵀω = 1, Aω = b the
//! minimizer has the exponential-family form
//!
//! ```text
//! ωⱼ* = uⱼ / Σ uⱼ,   uⱼ = qⱼ exp(−aⱼᵀ y*)
//! ```
//!
//! where y* minimizes the smooth convex dual log Σ uⱼ(y) + bᵀy. For a
//! Bell-diagonal state with dominant weight pₖ > ½ and the single constraint
//! ωₖ = b₁ the minimum is b₁ log(b₁/pₖ) + (1 − b₁) log((1 − b₁)/(1 − pₖ)),
//! which decreases on (0, pₖ); over the separable range b₁ ≤ ½ it is
//! smallest at b₁ = ½, giving −½ log(1 − c²) with c the concurrence.
//!
//! Reported values are in bits. Note that I(ω; q) has the candidate in the
//! first slot; the usual quantum relative entropy S(ρ‖σ) puts the state
//! first. Call [`relative_entropy`] with swapped arguments for that order.

use std::f64::consts::LN_2;

use serde::Serialize;

use crate::bdstate::{BDState, RegionClass};
use crate::convex::kkt::{check_kkt, Affine, Differentiable, FnWithGradient, KKTReport};
use crate::convex::lp::solve_lp;
use crate::error::{Error, Result};
use crate::linalg;

const DISTRIBUTION_TOL: f64 = 1e-9;
/// Newton stops once ‖Aω − b‖∞ falls below this.
pub const NEWTON_RESIDUAL_TOL: f64 = 1e-12;
const NEWTON_MAX_ITERS: usize = 100;
const MAX_HALVINGS: usize = 60;
const MAX_DUAL_STEP: f64 = 20.0;
const FLAT_DECREMENT: f64 = 1e-14;
/// Tolerance used when certifying a Newton solution with the KKT checker.
pub const KKT_TOL: f64 = 1e-9;
const SLATER_MARGIN: f64 = 1e-12;

fn check_distribution(w: &[f64], what: &str) -> Result<()> {
    if w.is_empty() {
        return Err(Error::NotDistribution(format!("{what} is empty")));
    }
    if w.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(Error::NotDistribution(format!(
            "{what} has a negative or non-finite entry"
        )));
    }
    let sum: f64 = w.iter().sum();
    if (sum - 1.0).abs() > DISTRIBUTION_TOL {
        return Err(Error::NotDistribution(format!("{what} sums to {sum}")));
    }
    Ok(())
}

/// −Σ wᵢ log₂ wᵢ with 0·log 0 = 0.
pub fn shannon_entropy(w: &[f64]) -> Result<f64> {
    check_distribution(w, "w")?;
    let nats: f64 = w.iter().filter(|&&v| v > 0.0).map(|&v| -v * v.ln()).sum();
    Ok(nats / LN_2)
}

/// Σ wᵢ ln(wᵢ/qᵢ) without validation; +∞ if some wᵢ > 0 has qᵢ = 0.
pub(crate) fn kl_nats(w: &[f64], q: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (&wi, &qi) in w.iter().zip(q) {
        if wi > 0.0 {
            if qi <= 0.0 {
                return f64::INFINITY;
            }
            acc += wi * (wi / qi).ln();
        }
    }
    acc
}

/// I(w; q) = Σ wᵢ log₂(wᵢ/qᵢ) in bits; +∞ when w puts weight where q has none.
pub fn relative_entropy(w: &[f64], q: &[f64]) -> Result<f64> {
    if w.len() != q.len() {
        return Err(Error::DimensionMismatch(format!(
            "w has {} entries, q has {}",
            w.len(),
            q.len()
        )));
    }
    check_distribution(w, "w")?;
    check_distribution(q, "q")?;
    Ok((kl_nats(w, q) / LN_2).max(0.0))
}

/// Relative-entropy minimization instance: prior q, constraints Aω = b.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyProblem {
    q: Vec<f64>,
    a: Vec<Vec<f64>>,
    b: Vec<f64>,
}

impl EntropyProblem {
    pub fn new(q: Vec<f64>, a: Vec<Vec<f64>>, b: Vec<f64>) -> Result<Self> {
        check_distribution(&q, "q")?;
        if q.iter().any(|&v| v <= 0.0) {
            return Err(Error::NotDistribution("prior q must be strictly positive".into()));
        }
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch(format!(
                "A has {} rows, b has {} entries",
                a.len(),
                b.len()
            )));
        }
        if let Some(row) = a.iter().find(|r| r.len() != q.len()) {
            return Err(Error::DimensionMismatch(format!(
                "A row has {} entries, expected {}",
                row.len(),
                q.len()
            )));
        }
        if a.iter().flatten().chain(&b).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { q, a, b })
    }

    /// The Bell-diagonal instance: prior ρ's spectrum and the single
    /// constraint ωₖ = b₁ on the dominant index k.
    pub fn bell_diagonal(rho: &BDState, b1: f64) -> Result<Self> {
        let k = rho.dominant_index();
        let mut row = vec![0.0; 4];
        row[k] = 1.0;
        Self::new(rho.probs().to_vec(), vec![row], vec![b1])
    }

    pub fn q(&self) -> &[f64] {
        &self.q
    }

    pub fn a(&self) -> &[Vec<f64>] {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    fn a_dot(&self, row: usize, w: &[f64]) -> f64 {
        self.a[row].iter().zip(w).map(|(a, w)| a * w).sum()
    }

    /// max |Aω − b|.
    pub fn constraint_residual(&self, w: &[f64]) -> f64 {
        (0..self.b.len())
            .map(|r| (self.a_dot(r, w) - self.b[r]).abs())
            .fold(0.0, f64::max)
    }

    /// ω(y) and log Σ uⱼ(y), evaluated with a shifted exponent.
    fn tilt(&self, y: &[f64]) -> (Vec<f64>, f64) {
        let k = self.q.len();
        let z: Vec<f64> = (0..k)
            .map(|j| {
                let ay: f64 = self.a.iter().zip(y).map(|(row, yr)| row[j] * yr).sum();
                self.q[j].ln() - ay
            })
            .collect();
        let m = z.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let e: Vec<f64> = z.iter().map(|v| (v - m).exp()).collect();
        let s: f64 = e.iter().sum();
        (e.iter().map(|v| v / s).collect(), m + s.ln())
    }

    fn dual_objective(&self, y: &[f64]) -> f64 {
        let (_, log_s) = self.tilt(y);
        log_s + self.b.iter().zip(y).map(|(b, y)| b * y).sum::<f64>()
    }
}

/// Decides whether some ω > 0 satisfies 1ᵀω = 1 and Aω = b, by maximizing a
/// common lower bound s on the components (ω = s·1 + w, w ≥ 0).
pub fn slater_check(prob: &EntropyProblem) -> bool {
    let k = prob.q.len();
    let n = k + 1;
    // variables: w₁..w_k, s
    let mut c = vec![0.0; n];
    c[k] = -1.0;
    let mut a = Vec::with_capacity(1 + prob.a.len());
    let mut b = Vec::with_capacity(1 + prob.a.len());
    let mut ones = vec![1.0; n];
    ones[k] = k as f64;
    a.push(ones);
    b.push(1.0);
    for (row, &bi) in prob.a.iter().zip(&prob.b) {
        let mut r = row.clone();
        r.push(row.iter().sum());
        a.push(r);
        b.push(bi);
    }
    match solve_lp(&c, &a, &b) {
        Ok(sol) => sol.x[k] > SLATER_MARGIN,
        Err(_) => false,
    }
}

#[derive(Debug, Clone)]
pub struct MinEntropySolution {
    pub w_star: Vec<f64>,
    /// Multipliers of Aω = b (natural-log units).
    pub y_star: Vec<f64>,
    /// Minimum of I(ω; q) in bits.
    pub value: f64,
    pub iterations: usize,
    pub kkt: KKTReport,
}

/// KKT certificate of (ω, y) for the relative-entropy problem, in nats.
///
/// Constraints are ordered h = (1ᵀω − 1, Aω − b) and g = −ω ≤ 0. The
/// multiplier of the normalization row is log Σ uⱼ(y) − 1, those of Aω = b
/// are y, and those of ω ≥ 0 are zero.
pub fn kkt_report(prob: &EntropyProblem, w: &[f64], y: &[f64], tol: f64) -> Result<KKTReport> {
    let k = prob.q.len();
    if y.len() != prob.b.len() {
        return Err(Error::DimensionMismatch(format!(
            "y has {} entries, expected {}",
            y.len(),
            prob.b.len()
        )));
    }
    let q = prob.q.clone();
    let q2 = prob.q.clone();
    let f = FnWithGradient::new(
        move |x: &[f64]| kl_nats(x, &q),
        move |x: &[f64]| {
            x.iter()
                .zip(&q2)
                .map(|(&xi, &qi)| (xi / qi).ln() + 1.0)
                .collect()
        },
    );
    let mut h: Vec<Affine> = vec![Affine {
        a: vec![1.0; k],
        c: -1.0,
    }];
    h.extend(prob.a.iter().zip(&prob.b).map(|(row, &bi)| Affine {
        a: row.clone(),
        c: -bi,
    }));
    let g: Vec<Affine> = (0..k)
        .map(|j| {
            let mut a = vec![0.0; k];
            a[j] = -1.0;
            Affine { a, c: 0.0 }
        })
        .collect();

    let (_, log_s) = prob.tilt(y);
    let mut zeta = vec![log_s - 1.0];
    zeta.extend_from_slice(y);
    let ineq_mult = vec![0.0; k];

    let h_refs: Vec<&dyn Differentiable> = h.iter().map(|a| a as &dyn Differentiable).collect();
    let g_refs: Vec<&dyn Differentiable> = g.iter().map(|a| a as &dyn Differentiable).collect();
    check_kkt(&f, &g_refs, &h_refs, w, &zeta, &ineq_mult, tol)
}

/// Minimizes I(ω; q) subject to 1ᵀω = 1, Aω = b by damped Newton on the dual.
pub fn min_relative_entropy(prob: &EntropyProblem) -> Result<MinEntropySolution> {
    if !slater_check(prob) {
        return Err(Error::NoSlaterPoint);
    }
    let d = prob.b.len();
    let mut y = vec![0.0; d];
    let mut iterations = 0;

    loop {
        let (w, _) = prob.tilt(&y);
        let residual = prob.constraint_residual(&w);
        if residual < NEWTON_RESIDUAL_TOL {
            break;
        }
        if iterations >= NEWTON_MAX_ITERS {
            return Err(Error::NewtonDivergence { residual });
        }
        iterations += 1;

        let aw: Vec<f64> = (0..d).map(|r| prob.a_dot(r, &w)).collect();
        let grad: Vec<f64> = (0..d).map(|r| prob.b[r] - aw[r]).collect();
        let mut hess = vec![0.0; d * d];
        for r in 0..d {
            for s in 0..d {
                let cov: f64 = w
                    .iter()
                    .enumerate()
                    .map(|(j, wj)| wj * prob.a[r][j] * prob.a[s][j])
                    .sum();
                hess[r * d + s] = cov - aw[r] * aw[s];
            }
        }
        for r in 0..d {
            hess[r * d + r] += 1e-14;
        }
        let neg: Vec<f64> = grad.iter().map(|g| -g).collect();
        let mut step_dir = linalg::solve_real(&hess, &neg, d)
            .map_err(|_| Error::NewtonDivergence { residual })?;
        // Shifts beyond a few tens of nats only saturate the weights and
        // strand the iteration where the Hessian vanishes.
        let longest = step_dir.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if longest > MAX_DUAL_STEP {
            step_dir.iter_mut().for_each(|v| *v *= MAX_DUAL_STEP / longest);
        }
        let slope: f64 = grad.iter().zip(&step_dir).map(|(g, s)| g * s).sum();
        let phi0 = prob.dual_objective(&y);

        let mut t = 1.0;
        let mut next = None;
        // Below this decrement the decrease in φ is under its rounding
        // error, so the line search carries no information.
        let halvings = if -slope < FLAT_DECREMENT { 0 } else { MAX_HALVINGS + 1 };
        for _ in 0..halvings {
            let trial: Vec<f64> = y.iter().zip(&step_dir).map(|(y, s)| y + t * s).collect();
            if prob.dual_objective(&trial) <= phi0 + 1e-4 * t * slope {
                next = Some(trial);
                break;
            }
            t *= 0.5;
        }
        let next = match next {
            Some(n) => n,
            None => {
                // φ is flat at working precision; accept the full step only
                // if it still shrinks the constraint residual.
                let full: Vec<f64> = y.iter().zip(&step_dir).map(|(y, s)| y + s).collect();
                if prob.constraint_residual(&prob.tilt(&full).0) < residual {
                    full
                } else {
                    return Err(Error::NewtonDivergence { residual });
                }
            }
        };
        y = next;
    }

    let (w, _) = prob.tilt(&y);
    let kkt = kkt_report(prob, &w, &y, KKT_TOL)?;
    if !kkt.all_satisfied() {
        return Err(Error::NewtonDivergence {
            residual: kkt.max_violation,
        });
    }
    let value = (kl_nats(&w, &prob.q) / LN_2).max(0.0);
    Ok(MinEntropySolution {
        w_star: w,
        y_star: y,
        value,
        iterations,
        kkt,
    })
}

/// b₁ log₂(b₁/p₁) + (1 − b₁) log₂((1 − b₁)/(1 − p₁)) for any b₁, p₁ in (0, 1).
pub fn profile_value(p1: f64, b1: f64) -> f64 {
    let term = |x: f64, p: f64| if x > 0.0 { x * (x / p).ln() } else { 0.0 };
    (term(b1, p1) + term(1.0 - b1, 1.0 - p1)) / LN_2
}

/// Minimal relative entropy over candidates with dominant weight b₁ ∈ (0, ½].
pub fn ree_profile(rho: &BDState, b1: f64) -> Result<f64> {
    if !rho.classify().is_entangled() {
        return Err(Error::NotEntangled);
    }
    if !(b1 > 0.0 && b1 <= 0.5) {
        return Err(Error::OutOfRange {
            value: b1,
            range: "(0, 1/2]",
        });
    }
    Ok(profile_value(rho.max_prob(), b1))
}

/// Closed-form relative entropy of entanglement of a Bell-diagonal state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct REEResult {
    /// Bits; +∞ for a pure Bell state.
    pub value: f64,
    pub closest_state: BDState,
    /// Multiplier y₁* of the constraint ωₖ = ½ (natural-log units).
    pub multiplier: f64,
    pub concurrence: f64,
    /// Set when the value is infinite (pₖ = 1).
    pub infinite: bool,
}

/// −½ log₂(1 − c²).
pub fn ree_from_concurrence(c: f64) -> f64 {
    -0.5 * (1.0 - c * c).log2()
}

pub fn ree_bd(rho: &BDState) -> REEResult {
    let concurrence = rho.concurrence();
    match rho.classify() {
        RegionClass::Entangled(k) => {
            let p = rho.probs();
            let pk = p[k - 1];
            if pk >= 1.0 {
                return REEResult {
                    value: f64::INFINITY,
                    closest_state: BDState::maximally_mixed(),
                    multiplier: f64::INFINITY,
                    concurrence,
                    infinite: true,
                };
            }
            let scale = 2.0 * (1.0 - pk);
            let mut w = p.map(|v| v / scale);
            w[k - 1] = 0.5;
            REEResult {
                value: profile_value(pk, 0.5),
                closest_state: BDState::from_probs(w).expect("boundary state is normalized"),
                multiplier: (pk / (1.0 - pk)).ln(),
                concurrence,
                infinite: false,
            }
        }
        _ => REEResult {
            value: 0.0,
            closest_state: *rho,
            multiplier: 0.0,
            concurrence,
            infinite: false,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn st(p: [f64; 4]) -> BDState {
        BDState::from_probs(p).unwrap()
    }

    const SIXTH: f64 = 1.0 / 6.0;

    #[test]
    fn shannon_examples() {
        assert_eq!(shannon_entropy(&[1.0, 0.0, 0.0, 0.0]).unwrap(), 0.0);
        assert_abs_diff_eq!(shannon_entropy(&[0.25; 4]).unwrap(), 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(shannon_entropy(&[0.5, 0.5, 0.0, 0.0]).unwrap(), 1.0, epsilon = 1e-15);
        assert!(matches!(shannon_entropy(&[0.5, 0.6]), Err(Error::NotDistribution(_))));
        assert!(matches!(shannon_entropy(&[1.5, -0.5]), Err(Error::NotDistribution(_))));
    }

    #[test]
    fn relative_entropy_examples() {
        let q = [0.7, 0.1, 0.1, 0.1];
        assert_eq!(relative_entropy(&q, &q).unwrap(), 0.0);
        let w = [0.5, SIXTH, SIXTH, SIXTH];
        let expected = 0.5 * (5.0f64 / 7.0).log2() + 0.5 * (5.0f64 / 3.0).log2();
        let got = relative_entropy(&w, &q).unwrap();
        assert_abs_diff_eq!(got, expected, epsilon = 1e-14);
        assert_abs_diff_eq!(got, 0.12577, epsilon = 1e-5);
        let reversed = relative_entropy(&q, &w).unwrap();
        assert!((got - reversed).abs() > 1e-3);
    }

    #[test]
    fn relative_entropy_infinite_sentinel() {
        let v = relative_entropy(&[0.5, 0.5], &[1.0, 0.0]).unwrap();
        assert_eq!(v, f64::INFINITY);
        // zero weight where q vanishes is fine
        assert_eq!(relative_entropy(&[1.0, 0.0], &[1.0, 0.0]).unwrap(), 0.0);
    }

    #[test]
    fn problem_validation() {
        assert!(matches!(
            EntropyProblem::new(vec![0.5, 0.5, 0.0], vec![], vec![]),
            Err(Error::NotDistribution(_))
        ));
        assert!(matches!(
            EntropyProblem::new(vec![0.5, 0.5], vec![vec![1.0]], vec![0.2]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn slater_examples() {
        let rho = st([0.7, 0.1, 0.1, 0.1]);
        assert!(slater_check(&EntropyProblem::bell_diagonal(&rho, 0.4).unwrap()));
        assert!(!slater_check(&EntropyProblem::bell_diagonal(&rho, 0.0).unwrap()));
        assert!(slater_check(&EntropyProblem::bell_diagonal(&rho, 0.5).unwrap()));
        // infeasible outright
        assert!(!slater_check(&EntropyProblem::bell_diagonal(&rho, 1.5).unwrap()));
    }

    #[test]
    fn min_relative_entropy_examples() {
        let rho = st([0.7, 0.1, 0.1, 0.1]);
        let sol = min_relative_entropy(&EntropyProblem::bell_diagonal(&rho, 0.5).unwrap()).unwrap();
        for (got, want) in sol.w_star.iter().zip([0.5, SIXTH, SIXTH, SIXTH]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(sol.y_star[0], (0.7f64 / 0.3).ln(), epsilon = 1e-10);
        assert!(sol.kkt.all_satisfied());

        let sol = min_relative_entropy(&EntropyProblem::bell_diagonal(&rho, 0.3).unwrap()).unwrap();
        for (got, want) in sol.w_star.iter().zip([0.3, 7.0 / 30.0, 7.0 / 30.0, 7.0 / 30.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(sol.value, profile_value(0.7, 0.3), epsilon = 1e-12);

        let free = EntropyProblem::new(vec![0.7, 0.1, 0.1, 0.1], vec![], vec![]).unwrap();
        let sol = min_relative_entropy(&free).unwrap();
        assert_eq!(sol.iterations, 0);
        assert_abs_diff_eq!(sol.value, 0.0, epsilon = 1e-15);
        for (got, want) in sol.w_star.iter().zip([0.7, 0.1, 0.1, 0.1]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-15);
        }
    }

    #[test]
    fn min_relative_entropy_without_slater_point() {
        let rho = st([0.7, 0.1, 0.1, 0.1]);
        let prob = EntropyProblem::bell_diagonal(&rho, 0.0).unwrap();
        assert!(matches!(min_relative_entropy(&prob), Err(Error::NoSlaterPoint)));
    }

    #[test]
    fn two_constraint_problem() {
        // ω₁ = 0.2 and ω₂ + ω₃ = 0.5 under a uniform prior: the tilt keeps
        // ω₂ = ω₃ = 0.25 and puts the remaining 0.3 on ω₄.
        let prob = EntropyProblem::new(
            vec![0.25; 4],
            vec![vec![1.0, 0.0, 0.0, 0.0], vec![0.0, 1.0, 1.0, 0.0]],
            vec![0.2, 0.5],
        )
        .unwrap();
        let sol = min_relative_entropy(&prob).unwrap();
        for (got, want) in sol.w_star.iter().zip([0.2, 0.25, 0.25, 0.3]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn profile_examples() {
        let rho = st([0.7, 0.1, 0.1, 0.1]);
        let half = ree_profile(&rho, 0.5).unwrap();
        let expected = 0.5 * (1.0f64 / 1.4).log2() + 0.5 * (1.0f64 / 0.6).log2();
        assert_abs_diff_eq!(half, expected, epsilon = 1e-15);
        assert_abs_diff_eq!(profile_value(0.7, 0.7), 0.0, epsilon = 1e-15);
        let v = ree_profile(&rho, 0.3).unwrap();
        let expected = 0.3 * (3.0f64 / 7.0).log2() + 0.7 * (7.0f64 / 3.0).log2();
        assert_abs_diff_eq!(v, expected, epsilon = 1e-15);
        assert_abs_diff_eq!(v, 0.489, epsilon = 1e-3);
        assert!(matches!(ree_profile(&rho, 0.6), Err(Error::OutOfRange { .. })));
        assert!(matches!(ree_profile(&rho, 0.0), Err(Error::OutOfRange { .. })));
        assert!(matches!(
            ree_profile(&BDState::maximally_mixed(), 0.5),
            Err(Error::NotEntangled)
        ));
    }

    #[test]
    fn ree_bd_examples() {
        let r = ree_bd(&st([0.7, 0.1, 0.1, 0.1]));
        assert_abs_diff_eq!(r.value, 0.12577, epsilon = 1e-5);
        assert_abs_diff_eq!(r.value, ree_from_concurrence(0.4), epsilon = 1e-12);
        assert!(r.closest_state.max_abs_diff(&st([0.5, SIXTH, SIXTH, SIXTH])) < 1e-15);
        assert_abs_diff_eq!(r.concurrence, 0.4, epsilon = 1e-15);
        assert!(!r.infinite);

        let u = BDState::maximally_mixed();
        let r = ree_bd(&u);
        assert_eq!(r.value, 0.0);
        assert_eq!(r.closest_state, u);

        let r = ree_bd(&BDState::bell(1));
        assert!(r.infinite);
        assert_eq!(r.value, f64::INFINITY);
        assert_eq!(r.concurrence, 1.0);
    }

    #[test]
    fn ree_bd_boundary_is_zero() {
        let r = ree_bd(&st([0.5, SIXTH, SIXTH, SIXTH]));
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn perturbed_optimum_fails_kkt() {
        let rho = st([0.7, 0.1, 0.1, 0.1]);
        let prob = EntropyProblem::bell_diagonal(&rho, 0.5).unwrap();
        let sol = min_relative_entropy(&prob).unwrap();
        let mut w = sol.w_star.clone();
        w[1] += 1e-2;
        w[2] -= 1e-2;
        let r = kkt_report(&prob, &w, &sol.y_star, KKT_TOL).unwrap();
        assert!(r.primal_feasible_eq);
        assert!(!r.stationary);
    }
}
