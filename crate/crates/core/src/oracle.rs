//! Brute-force lattice scans over the separable octahedron, used as
//! independent checks of the closed-form optima.
//!
//! Lattice points are ω = (i·h, j·h, k·h, 1 − (i + j + k)·h) with every
//! component in [0, ½]. When the requested step is finer than 1e-2, a
//! global pass at 1e-2 locates the optimum and a second pass at the
//! requested step covers a ±5e-2 box around it. Slabs of constant `i` are
//! scanned in parallel; ties go to the lexicographically smallest lattice
//! index, so results do not depend on scheduling.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::bdstate::BDState;
use crate::error::{Error, Result};
use crate::lsd::lambda_unchecked;
use crate::relent::kl_nats;

pub const MIN_STEP: f64 = 1e-4;
pub const MAX_STEP: f64 = 1e-1;
pub const COARSE_STEP: f64 = 1e-2;
pub const FINE_HALF_WIDTH: f64 = 5e-2;

const MEMBERSHIP_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridResult {
    pub argmin_or_max: BDState,
    pub value: f64,
    pub grid_step: f64,
    pub points_evaluated: u64,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Goal {
    Minimize,
    Maximize,
}

#[derive(Clone, Copy)]
struct Best {
    value: f64,
    index: [i64; 3],
    count: u64,
}

impl Best {
    fn empty() -> Self {
        Self {
            value: f64::NAN,
            index: [i64::MAX; 3],
            count: 0,
        }
    }

    /// Whether `self` beats `other` under `goal`, with lexicographic ties.
    fn better_than(&self, other: &Best, goal: Goal) -> bool {
        if other.value.is_nan() {
            return !self.value.is_nan();
        }
        if self.value.is_nan() {
            return false;
        }
        let ord = match goal {
            Goal::Minimize => self.value.total_cmp(&other.value),
            Goal::Maximize => other.value.total_cmp(&self.value),
        };
        match ord {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => self.index < other.index,
        }
    }

    fn merge(self, other: Best, goal: Goal) -> Best {
        let count = self.count + other.count;
        let mut winner = if other.better_than(&self, goal) { other } else { self };
        winner.count = count;
        winner
    }
}

fn point(step: f64, idx: [i64; 3]) -> Option<[f64; 4]> {
    let w1 = idx[0] as f64 * step;
    let w2 = idx[1] as f64 * step;
    let w3 = idx[2] as f64 * step;
    let w4 = 1.0 - w1 - w2 - w3;
    let half = 0.5 + MEMBERSHIP_TOL;
    if w4 < -MEMBERSHIP_TOL || w1 > half || w2 > half || w3 > half || w4 > half {
        return None;
    }
    Some([w1, w2, w3, w4.max(0.0)])
}

/// Scans lattice indices within `[lo, hi]` per axis.
fn scan<F>(step: f64, lo: [i64; 3], hi: [i64; 3], goal: Goal, f: &F) -> Best
where
    F: Fn(&[f64; 4]) -> f64 + Sync,
{
    (lo[0]..=hi[0])
        .into_par_iter()
        .map(|i| {
            let mut best = Best::empty();
            for j in lo[1]..=hi[1] {
                for k in lo[2]..=hi[2] {
                    let idx = [i, j, k];
                    let Some(w) = point(step, idx) else { continue };
                    best.count += 1;
                    let v = f(&w);
                    if !v.is_finite() {
                        continue;
                    }
                    let cand = Best {
                        value: v,
                        index: idx,
                        count: 0,
                    };
                    if cand.better_than(&best, goal) {
                        best = Best {
                            count: best.count,
                            ..cand
                        };
                    }
                }
            }
            best
        })
        .reduce(Best::empty, |a, b| a.merge(b, goal))
}

fn global_bounds(step: f64) -> ([i64; 3], [i64; 3]) {
    let top = (0.5 / step + 1e-9).floor() as i64;
    ([0; 3], [top; 3])
}

fn two_pass<F>(step: f64, goal: Goal, f: F) -> Result<GridResult>
where
    F: Fn(&[f64; 4]) -> f64 + Sync,
{
    if !(MIN_STEP..=MAX_STEP).contains(&step) {
        return Err(Error::StepOutOfRange(step));
    }
    let (best, total, used_step) = if step >= COARSE_STEP {
        let (lo, hi) = global_bounds(step);
        let best = scan(step, lo, hi, goal, &f);
        (best, best.count, step)
    } else {
        let (lo, hi) = global_bounds(COARSE_STEP);
        let coarse = scan(COARSE_STEP, lo, hi, goal, &f);
        if coarse.value.is_nan() {
            return Err(Error::Infeasible);
        }
        let center = coarse.index.map(|i| i as f64 * COARSE_STEP);
        let top = (0.5 / step + 1e-9).floor() as i64;
        let lo = center.map(|c| (((c - FINE_HALF_WIDTH) / step).floor() as i64).max(0));
        let hi = center.map(|c| (((c + FINE_HALF_WIDTH) / step).ceil() as i64).min(top));
        let fine = scan(step, lo, hi, goal, &f);
        (fine, coarse.count + fine.count, step)
    };
    if best.value.is_nan() {
        return Err(Error::Infeasible);
    }
    let w = point(used_step, best.index).expect("winning index is on the lattice");
    Ok(GridResult {
        argmin_or_max: BDState::from_probs(w)?,
        value: best.value,
        grid_step: used_step,
        points_evaluated: total,
    })
}

/// Lattice minimizer of I(ω; ρ) in bits over separable ω.
pub fn grid_min_ree(rho: &BDState, step: f64) -> Result<GridResult> {
    if !rho.classify().is_entangled() {
        return Err(Error::NotEntangled);
    }
    let p = rho.probs();
    two_pass(step, Goal::Minimize, |w| kl_nats(w, &p) / std::f64::consts::LN_2)
}

/// Lattice maximizer of the separable weight λ(ρ, σ) over separable σ.
pub fn grid_max_lambda(rho: &BDState, step: f64) -> Result<GridResult> {
    if !rho.classify().is_entangled() {
        return Err(Error::NotEntangled);
    }
    let p = rho.probs();
    two_pass(step, Goal::Maximize, |w| lambda_unchecked(&p, w))
}
