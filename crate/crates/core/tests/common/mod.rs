#![allow(dead_code)]

use knaster::BinSeq;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn bits(rng: &mut impl Rng, len: usize) -> Vec<bool> {
    (0..len).map(|_| rng.gen()).collect()
}

/// Random eventually-periodic sequence with prefix `≤ max_prefix` and
/// period `1..=max_period`.
pub fn random_seq(rng: &mut impl Rng, max_prefix: usize, max_period: usize) -> BinSeq {
    let p = rng.gen_range(0..=max_prefix);
    let q = rng.gen_range(1..=max_period);
    let prefix = bits(rng, p);
    let period = bits(rng, q);
    BinSeq::new(prefix, period).unwrap()
}

/// A sequence `E_0*`-related to `a`: up to ten leading bits of `a` or of its
/// complement are overwritten.
pub fn related_to(rng: &mut impl Rng, a: &BinSeq) -> BinSeq {
    let base = if rng.gen() { a.complement() } else { a.clone() };
    let len = rng.gen_range(0..=10);
    base.with_head(&bits(rng, len))
}

pub fn seq(s: &str) -> BinSeq {
    s.parse().unwrap()
}
