#![allow(dead_code)]

use bdconvex::BDState;
use proptest::prelude::*;

/// Points of the open probability simplex.
pub fn simplex() -> impl Strategy<Value = [f64; 4]> {
    prop::array::uniform4(1e-6..1.0f64).prop_map(|w| {
        let s: f64 = w.iter().sum();
        w.map(|v| v / s)
    })
}

pub fn any_state() -> impl Strategy<Value = BDState> {
    simplex().prop_map(|p| BDState::from_probs(p).unwrap())
}

/// Entangled states with dominant weight in (0.5, 0.999) at any index.
pub fn entangled_state() -> impl Strategy<Value = BDState> {
    (0.5001..0.999f64, 0..4usize, prop::array::uniform3(1e-6..1.0f64)).prop_map(|(pk, k, r)| {
        let s: f64 = r.iter().sum();
        let mut rest = r.iter().map(|v| (1.0 - pk) * v / s);
        let p: [f64; 4] = std::array::from_fn(|i| if i == k { pk } else { rest.next().unwrap() });
        BDState::from_probs(p).unwrap()
    })
}

/// All 24 permutations of four indices.
pub fn permutations() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let mut seen = [false; 4];
                    p.iter().for_each(|&i| seen[i] = true);
                    if seen.iter().all(|&s| s) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}
