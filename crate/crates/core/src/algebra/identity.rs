use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::FieldElement;
use super::poly::MultiPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityMode {
    /// Zero iff no terms survive.
    Structural,
    /// Evaluate at `trials` uniformly random points of the coefficient field.
    Randomized { trials: u32, seed: u64 },
}

/// Polynomial identity test.
///
/// The randomized mode can only err by reporting `true` for a nonzero
/// polynomial; see [`failure_bound`].
pub fn is_zero_identity(p: &MultiPoly, mode: IdentityMode) -> bool {
    if p.is_zero() {
        return true;
    }
    match mode {
        IdentityMode::Structural => false,
        IdentityMode::Randomized { trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = *p.field();
            let n = p.ring().nvars();
            for _ in 0..trials {
                let point: Vec<FieldElement> = (0..n).map(|_| FieldElement(rng.gen_range(0..f.size()))).collect();
                if !p.eval(&point).is_zero() {
                    return false;
                }
            }
            true
        }
    }
}

/// Schwartz–Zippel: a nonzero polynomial of total degree `degree` survives all
/// `trials` random evaluations over a field of `field_size` elements with
/// probability at most (degree/field_size)^trials.
pub fn failure_bound(degree: u32, field_size: u64, trials: u32) -> f64 {
    (degree as f64 / field_size as f64).powi(trials as i32)
}
