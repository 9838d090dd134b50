//! Seeds and the per-trial seed derivation.
//!
//! Every sampler takes a [`Seed`] and builds a fresh [`ChaCha8Rng`] from it,
//! so a sample is a pure function of its inputs. Independent streams (one per
//! trial, one per sweep cell, truth vs. instance) are obtained with
//! [`Seed::derive`], a SplitMix64-style mix of the parent seed and an index.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seed {
    pub value: u64,
}

impl Seed {
    pub const fn new(value: u64) -> Self {
        Self { value }
    }

    /// Child seed for stream `index`. Distinct indices give unrelated seeds.
    pub fn derive(self, index: u64) -> Seed {
        let mut z = self
            .value
            .wrapping_add(0x9E37_79B9_7F4A_7C15)
            .wrapping_add(splitmix(index.wrapping_add(0xD1B5_4A32_D192_ED03)));
        z = splitmix(z);
        Seed::new(z)
    }

    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.value)
    }
}

impl From<u64> for Seed {
    fn from(value: u64) -> Self {
        Seed::new(value)
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
