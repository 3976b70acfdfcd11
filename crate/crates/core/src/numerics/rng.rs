use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Generator handed to samplers.
pub type SampleRng = ChaCha8Rng;

/// Counter-based random state: `(seed, stream)` fully determines the draws,
/// whatever the host or the number of workers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngState {
    pub seed: u64,
    pub stream: u64,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl RngState {
    pub fn new(seed: u64, stream: u64) -> Self {
        RngState { seed, stream }
    }

    /// Same seed, a different stream.
    pub fn at(self, stream: u64) -> Self {
        RngState { stream, ..self }
    }

    /// Independent seed family for a named purpose, so that e.g. unit-sphere
    /// points and pair samples never share draws.
    pub fn derive(self, tag: u64) -> Self {
        RngState {
            seed: splitmix64(self.seed ^ splitmix64(tag)),
            stream: self.stream,
        }
    }

    pub fn generator(self) -> SampleRng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}
