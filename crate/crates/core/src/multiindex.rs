//! Strictly increasing multi-indices `I = (i₁ < … < i_p)` over `1..=q`.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// A strictly increasing list of 1-based indices into `1..=ambient`.
///
/// The empty index is allowed and stands for the single element of `I₀^q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    indices: Vec<usize>,
    ambient: usize,
}

impl MultiIndex {
    pub fn new(indices: Vec<usize>, ambient: usize) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&i| i == 0 || i > ambient) {
            return Err(Error::Index(format!("entry {bad} outside 1..={ambient}")));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Index(format!(
                "{indices:?} is not strictly increasing"
            )));
        }
        Ok(Self { indices, ambient })
    }

    /// The empty multi-index in `I₀^q`.
    pub fn empty(ambient: usize) -> Self {
        Self {
            indices: Vec::new(),
            ambient,
        }
    }

    /// `(1, …, q)`.
    pub fn full(ambient: usize) -> Self {
        Self {
            indices: (1..=ambient).collect(),
            ambient,
        }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Number of entries `p`.
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// `|I| = i₁ + … + i_p`.
    pub fn weight(&self) -> usize {
        self.indices.iter().sum()
    }

    /// `Î`: the increasing list of indices in `1..=q` not in `I`.
    pub fn complement(&self) -> Self {
        let indices = (1..=self.ambient)
            .filter(|i| !self.indices.contains(i))
            .collect();
        Self {
            indices,
            ambient: self.ambient,
        }
    }

    /// Entries shifted to 0-based positions.
    pub fn zero_based(&self) -> Vec<usize> {
        self.indices.iter().map(|i| i - 1).collect()
    }

    /// Sign `σ_I = (−1)^{|I| + p(p+1)/2}` of the coordinate decomposition
    /// `ω = σ_I ω_I ∧ ω_Î`.
    pub fn sigma(&self) -> i32 {
        let p = self.len();
        if (self.weight() + p * (p + 1) / 2) % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, i) in self.indices.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str(")")
    }
}

/// All `C(q, p)` multi-indices of length `p` over `1..=q`, in lexicographic
/// order. `p = 0` yields the single empty index; `p > q` yields nothing.
pub fn multi_indices(p: usize, q: usize) -> Vec<MultiIndex> {
    if p > q {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut current: Vec<usize> = (1..=p).collect();
    loop {
        out.push(MultiIndex {
            indices: current.clone(),
            ambient: q,
        });
        // rightmost entry that can still be incremented
        let Some(k) = (0..p).rev().find(|&k| current[k] < q - (p - 1 - k)) else {
            break;
        };
        current[k] += 1;
        for j in k + 1..p {
            current[j] = current[j - 1] + 1;
        }
    }
    out
}

/// `σ_I` as a free function.
pub fn sigma_sign(index: &MultiIndex) -> i32 {
    index.sigma()
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}
