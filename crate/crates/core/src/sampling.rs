//! Random Bell-diagonal states for property checks and verification batches.

use rand::Rng;

use crate::bdstate::BDState;

/// Lower end (exclusive) of the dominant weight for entangled samples.
pub const DOMINANT_MIN: f64 = 0.5;
/// Upper end (exclusive) of the dominant weight for entangled samples.
pub const DOMINANT_MAX: f64 = 0.999;

/// Uniform point on the k-simplex (flat Dirichlet).
fn dirichlet<R: Rng + ?Sized, const K: usize>(rng: &mut R) -> [f64; K] {
    let mut e = [0.0; K];
    for v in e.iter_mut() {
        // 1 - U lies in (0, 1], so the log is finite
        *v = -(1.0 - rng.gen::<f64>()).ln();
    }
    let s: f64 = e.iter().sum();
    e.map(|v| v / s)
}

/// Uniformly distributed state on the probability simplex.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R) -> BDState {
    BDState::from_probs(dirichlet::<R, 4>(rng)).expect("Dirichlet sample is a distribution")
}

/// Entangled state whose dominant weight is uniform on (0.5, 0.999), placed
/// at a uniformly chosen Bell index, with the remainder spread uniformly
/// over the simplex of the other three components.
pub fn random_entangled<R: Rng + ?Sized>(rng: &mut R) -> BDState {
    loop {
        let pmax = rng.gen_range(DOMINANT_MIN..DOMINANT_MAX);
        if pmax <= DOMINANT_MIN + 1e-9 {
            continue;
        }
        let k = rng.gen_range(0..4);
        let rest = dirichlet::<R, 3>(rng);
        let mut p = [0.0; 4];
        let mut r = rest.iter();
        for (i, slot) in p.iter_mut().enumerate() {
            *slot = if i == k {
                pmax
            } else {
                (1.0 - pmax) * r.next().expect("three remaining components")
            };
        }
        let s = BDState::from_probs(p).expect("sample is a distribution");
        if s.classify().is_entangled() {
            return s;
        }
    }
}
