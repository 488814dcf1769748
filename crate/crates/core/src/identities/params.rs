//! Named parameter sets and the deterministic sampler.

use std::fmt;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::error::{QError, Result};
use crate::qcore::{format_complex, Base, ComplexScalar};

type C = ComplexScalar;

/// Ordered name -> scalar map. Order is the registry's parameter order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Params(Vec<(String, C)>);

impl Params {
    pub fn new() -> Self {
        Params(Vec::new())
    }

    pub fn from_real(pairs: &[(&str, f64)]) -> Self {
        Params(pairs.iter().map(|&(k, v)| (k.to_string(), C::new(v, 0.0))).collect())
    }

    pub fn set(&mut self, name: &str, value: C) {
        match self.0.iter_mut().find(|(k, _)| k == name) {
            Some(slot) => slot.1 = value,
            None => self.0.push((name.to_string(), value)),
        }
    }

    pub fn with(mut self, name: &str, value: f64) -> Self {
        self.set(name, C::new(value, 0.0));
        self
    }

    pub fn get(&self, name: &str) -> Result<C> {
        self.lookup(name).ok_or_else(|| QError::InvalidArgument(format!("missing parameter `{name}`")))
    }

    pub fn lookup(&self, name: &str) -> Option<C> {
        self.0.iter().find(|(k, _)| k == name).map(|&(_, v)| v)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.lookup(name).is_some()
    }

    /// A real parameter; rejects a nonzero imaginary part.
    pub fn real(&self, name: &str) -> Result<f64> {
        let v = self.get(name)?;
        if v.im != 0.0 {
            return Err(QError::domain(format!("parameter `{name}` must be real")));
        }
        Ok(v.re)
    }

    /// A nonnegative integer parameter such as a polynomial degree.
    pub fn index(&self, name: &str) -> Result<usize> {
        let v = self.real(name)?;
        if v < 0.0 || v.fract() != 0.0 || v > 1e6 {
            return Err(QError::InvalidArgument(format!("parameter `{name}` must be a nonnegative integer")));
        }
        Ok(v as usize)
    }

    pub fn base(&self) -> Result<Base> {
        Base::new(self.get("q")?)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, C)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={}", format_complex(*v))).collect();
        f.write_str(&parts.join(" "))
    }
}

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            if v.im == 0.0 {
                map.serialize_entry(k, &v.re)?;
            } else {
                map.serialize_entry(k, &crate::identities::Cx::from(*v))?;
            }
        }
        map.end()
    }
}

/// 64-bit FNV-1a, used to give every identity its own random stream.
pub fn fnv1a(text: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in text.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Source of draws for one (identity, seed, draw index).
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(id: &str, seed: u64, draw: u64) -> Self {
        let mix = seed ^ fnv1a(id).rotate_left(17) ^ draw.wrapping_mul(0x9e37_79b9_7f4a_7c15);
        Sampler { rng: ChaCha8Rng::seed_from_u64(mix) }
    }

    /// Uniform on [lo, hi].
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..=hi)
    }

    /// Magnitude in the default [0.05, 0.6] band.
    pub fn mag(&mut self) -> f64 {
        self.uniform(0.05, 0.6)
    }

    pub fn pick<T: Copy>(&mut self, options: &[T]) -> T {
        options[self.rng.gen_range(0..options.len())]
    }

    /// One of the suite bases 0.3, 0.5, 0.7.
    pub fn base(&mut self) -> f64 {
        self.pick(&[0.3, 0.5, 0.7])
    }
}
