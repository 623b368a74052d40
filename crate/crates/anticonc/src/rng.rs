//! Splittable counter-based pseudo-random generator.
//!
//! Every stream is a pure function of `(key, counter)`: the output at step
//! `i` is `mix64(key ^ (i * GOLDEN))`, the SplitMix64 finalizer applied to a
//! keyed counter. Child streams derive a fresh key from the parent key and a
//! split index, so parallel batches can draw independently and the
//! concatenated output depends only on the root seed and the batch indexing,
//! never on scheduling. Non-cryptographic.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// One deterministic random stream.
#[derive(Clone, Debug)]
pub struct Stream {
    key: u64,
    counter: u64,
}

impl Stream {
    pub fn new(seed: u64) -> Self {
        Stream {
            key: mix64(seed.wrapping_add(GOLDEN)),
            counter: 0,
        }
    }

    /// Child stream `index`; children with distinct indices are independent
    /// of each other and of the parent's own output sequence.
    pub fn split(&self, index: u64) -> Self {
        Stream {
            key: mix64(self.key ^ mix64(index.wrapping_mul(GOLDEN) ^ 0x5851_F42D_4C95_7F2D)),
            counter: 0,
        }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        let c = self.counter;
        self.counter = self.counter.wrapping_add(1);
        mix64(self.key ^ c.wrapping_mul(GOLDEN))
    }

    /// Uniform in [0, 1) with 53 bits of precision.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        const DEN: f64 = (1u64 << 53) as f64;
        ((self.next_u64() >> 11) as f64) / DEN
    }

    /// Uniform in [lo, hi).
    #[inline]
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform integer in [0, n). Uses rejection to avoid modulo bias.
    pub fn next_index(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        let n = n as u64;
        let zone = u64::MAX - (u64::MAX % n);
        loop {
            let v = self.next_u64();
            if v < zone {
                return (v % n) as usize;
            }
        }
    }

    /// Standard normal via Box-Muller (one value per call, the pair's
    /// second member is discarded to keep the stream position predictable).
    pub fn next_standard_normal(&mut self) -> f64 {
        let u1 = loop {
            let u = self.next_f64();
            if u > 0.0 {
                break u;
            }
        };
        let u2 = self.next_f64();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_sequence() {
        let mut a = Stream::new(7);
        let mut b = Stream::new(7);
        for _ in 0..32 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn split_streams_differ_from_parent_and_each_other() {
        let root = Stream::new(1);
        let mut s0 = root.split(0);
        let mut s1 = root.split(1);
        let mut parent = root.clone();
        let x0: Vec<u64> = (0..8).map(|_| s0.next_u64()).collect();
        let x1: Vec<u64> = (0..8).map(|_| s1.next_u64()).collect();
        let xp: Vec<u64> = (0..8).map(|_| parent.next_u64()).collect();
        assert_ne!(x0, x1);
        assert_ne!(x0, xp);
        assert_ne!(x1, xp);
    }

    #[test]
    fn split_is_reproducible() {
        let a: Vec<u64> = {
            let mut s = Stream::new(42).split(3);
            (0..8).map(|_| s.next_u64()).collect()
        };
        let b: Vec<u64> = {
            let mut s = Stream::new(42).split(3);
            (0..8).map(|_| s.next_u64()).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn uniform_mean_is_centered() {
        let mut s = Stream::new(12345);
        let n = 100_000;
        let mean: f64 = (0..n).map(|_| s.next_f64()).sum::<f64>() / n as f64;
        assert!((mean - 0.5).abs() < 0.01, "mean = {mean}");
    }

    #[test]
    fn next_index_in_range() {
        let mut s = Stream::new(9);
        for _ in 0..1000 {
            let i = s.next_index(7);
            assert!(i < 7);
        }
    }
}
