//! Counter-keyed random streams.
//!
//! Every random decision is drawn from a generator addressed by the run seed,
//! the round coordinates and the cluster id it belongs to. The draws therefore
//! do not depend on how work is split across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// What a stream is used for; distinct purposes never share a stream.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u32)]
pub enum Purpose {
    Color = 1,
    Proposal = 2,
}

/// Round coordinates of a stream.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct RoundKey {
    pub layer: u32,
    pub outer: u32,
    pub inner: u32,
}

/// Generator for one `(seed, round, purpose, id)` address.
pub fn stream(seed: u64, round: RoundKey, purpose: Purpose, id: u32) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[0..8].copy_from_slice(&seed.to_le_bytes());
    key[8..12].copy_from_slice(&round.layer.to_le_bytes());
    key[12..16].copy_from_slice(&round.outer.to_le_bytes());
    key[16..20].copy_from_slice(&round.inner.to_le_bytes());
    key[20..24].copy_from_slice(&(purpose as u32).to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(id as u64);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::RngCore;

    #[test]
    fn addresses_are_independent() {
        let r = RoundKey { layer: 1, outer: 2, inner: 3 };
        let a = stream(9, r, Purpose::Color, 5).next_u64();
        assert_eq!(a, stream(9, r, Purpose::Color, 5).next_u64());
        assert_ne!(a, stream(9, r, Purpose::Proposal, 5).next_u64());
        assert_ne!(a, stream(9, r, Purpose::Color, 6).next_u64());
        assert_ne!(a, stream(10, r, Purpose::Color, 5).next_u64());
        assert_ne!(a, stream(9, RoundKey { inner: 4, ..r }, Purpose::Color, 5).next_u64());
    }
}
