use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{SampledFunction, TrigPoly};
use crate::group::{GroupModel, IrrepLabel};
use crate::linalg::{self, CMat, C64};
use crate::Result;

fn entry<R: Rng>(rng: &mut R) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Coefficients with real and imaginary parts uniform in `[-1, 1)` on the
/// given labels. With `central` every block is a scalar multiple of `I`.
pub fn random_trig_poly(group: &GroupModel, support: &[IrrepLabel], seed: u64, central: bool) -> Result<TrigPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut blocks = Vec::with_capacity(support.len());
    for label in support {
        let d = group.irrep_dim(label)?;
        let m = if central {
            linalg::identity(d) * entry(&mut rng)
        } else {
            CMat::from_fn(d, d, |_, _| entry(&mut rng))
        };
        blocks.push((label.clone(), m));
    }
    TrigPoly::new(group, blocks)
}

/// Uniform random samples on a finite model.
pub fn random_sampled(group: &GroupModel, seed: u64) -> Result<SampledFunction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = group.order().unwrap_or(0);
    SampledFunction::new(group, (0..n).map(|_| entry(&mut rng)).collect())
}
