// SPDX-License-Identifier: MIT OR Apache-2.0

use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_pcg::Pcg64Mcg;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How many future candidates each candidate is compared against per step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum SamplingMode {
    All,
    Rand(usize),
}

impl FromStr for SamplingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("all") {
            return Ok(SamplingMode::All);
        }
        let k = s
            .strip_prefix("rand:")
            .or_else(|| s.strip_prefix("rand"))
            .and_then(|k| k.parse::<usize>().ok())
            .ok_or_else(|| Error::Configuration(format!("sampling must be 'all' or 'rand:<k>', got '{s}'")))?;
        if k == 0 {
            return Err(Error::Configuration("rand sampling needs k >= 1".into()));
        }
        Ok(SamplingMode::Rand(k))
    }
}

impl TryFrom<String> for SamplingMode {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<SamplingMode> for String {
    fn from(m: SamplingMode) -> Self {
        m.to_string()
    }
}

impl fmt::Display for SamplingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SamplingMode::All => write!(f, "all"),
            SamplingMode::Rand(k) => write!(f, "rand:{k}"),
        }
    }
}

/// Policy for drawing the future candidates of each living candidate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SamplerSpec {
    pub mode: SamplingMode,
    pub seed: u64,
}

impl SamplerSpec {
    pub fn all() -> Self {
        Self {
            mode: SamplingMode::All,
            seed: 0,
        }
    }

    pub fn rand(k: usize, seed: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::Configuration("rand sampling needs k >= 1".into()));
        }
        Ok(Self {
            mode: SamplingMode::Rand(k),
            seed,
        })
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    /// Fills `out` with positions in `0..count`, ascending. The draw depends
    /// only on `(seed, t, s)`.
    pub(crate) fn draw(&self, count: usize, t: usize, s: usize, out: &mut Vec<usize>) {
        out.clear();
        match self.mode {
            SamplingMode::Rand(k) if k < count => {
                let mut rng = Pcg64Mcg::seed_from_u64(stream_key(self.seed, t as u64, s as u64));
                if k == 1 {
                    out.push(rng.random_range(0..count));
                } else {
                    out.extend(index::sample(&mut rng, count, k).iter());
                    out.sort_unstable();
                }
            }
            _ => out.extend(0..count),
        }
    }
}

impl Default for SamplerSpec {
    fn default() -> Self {
        Self {
            mode: SamplingMode::Rand(1),
            seed: 0,
        }
    }
}

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn stream_key(seed: u64, t: u64, s: u64) -> u64 {
    mix(mix(mix(seed) ^ t) ^ s)
}

/// Future candidates of `s` at time `t`: the members of `active` newer than
/// `s`, plus `t` itself, thinned according to `spec`.
pub fn sample_future(active: &[usize], s: usize, t: usize, spec: &SamplerSpec) -> Vec<usize> {
    let mut pool: Vec<usize> = active.iter().copied().filter(|&x| x > s && x < t).collect();
    pool.sort_unstable();
    if t > s {
        pool.push(t);
    }
    let mut picks = Vec::new();
    spec.draw(pool.len(), t, s, &mut picks);
    picks.into_iter().map(|k| pool[k]).collect()
}
