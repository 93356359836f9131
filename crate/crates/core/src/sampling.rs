//! Seeded random instances: Gaussian vectors, Haar-like unitary frames,
//! random subspaces, orthogonal (not normalized) bases and partitions.
//!
//! All randomness flows from a ChaCha8 stream, so a `(seed, stream)` pair
//! reproduces the same instance on every platform.

use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exterior::Blade;
use crate::linalg::{orthonormalize, Tolerance};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::subspace::{Partition, Subspace};

#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Independent stream `stream` of the generator seeded by `seed`.
    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { rng }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Uniform integer in `lo..=hi`.
    pub fn int(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.random_range(lo..=hi)
    }

    /// Uniform real in `[lo, hi)`.
    pub fn real(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    pub fn vector<T: Scalar>(&mut self, n: usize) -> Vec<T> {
        (0..n).map(|_| T::sample_gaussian(&mut self.rng)).collect()
    }

    pub fn matrix<T: Scalar>(&mut self, rows: usize, cols: usize) -> Matrix<T> {
        Matrix::from_fn(rows, cols, |_, _| T::sample_gaussian(&mut self.rng))
    }

    /// Random orthogonal (unitary over ℂ) `n × n` matrix.
    pub fn unitary<T: Scalar>(&mut self, n: usize) -> Matrix<T> {
        loop {
            let (q, rank) = orthonormalize(&self.matrix::<T>(n, n), &Tolerance::default());
            if rank == n {
                return q;
            }
        }
    }

    /// Random `dim`-dimensional subspace of an `n`-dimensional space.
    pub fn subspace<T: Scalar>(&mut self, n: usize, dim: usize) -> Result<Subspace<T>> {
        if dim > n {
            return Err(Error::Infeasible(format!(
                "subspace of dimension {dim} in {n}"
            )));
        }
        let q = self.unitary::<T>(n);
        let cols: Vec<usize> = (0..dim).collect();
        Subspace::from_orthonormal(q.select_columns(&cols))
    }

    /// Random `dim`-dimensional subspace of `parent`.
    pub fn subspace_of<T: Scalar>(
        &mut self,
        parent: &Subspace<T>,
        dim: usize,
    ) -> Result<Subspace<T>> {
        if dim > parent.dim() {
            return Err(Error::Infeasible(format!(
                "subspace of dimension {dim} inside dimension {}",
                parent.dim()
            )));
        }
        let coords = self.unitary::<T>(parent.dim());
        let cols: Vec<usize> = (0..dim).collect();
        let onb = parent.onb().matmul(&coords.select_columns(&cols))?;
        Subspace::from_orthonormal(onb)
    }

    /// A random, generally non-orthonormal basis of `sub`.
    pub fn basis_of<T: Scalar>(&mut self, sub: &Subspace<T>) -> Vec<Vec<T>> {
        let k = sub.dim();
        loop {
            let mix = self.matrix::<T>(k, k);
            if orthonormalize(&mix, &Tolerance::default()).1 == k {
                let b = sub.onb().matmul(&mix).expect("shapes");
                return b.columns();
            }
        }
    }

    /// Orthogonal basis of the whole space with each vector scaled by a
    /// random factor in `[0.5, 3)`.
    pub fn orthogonal_basis<T: Scalar>(&mut self, n: usize) -> Vec<Vec<T>> {
        let q = self.unitary::<T>(n);
        (0..n)
            .map(|j| {
                let s = self.real(0.5, 3.0);
                q.column(j).into_iter().map(|x| x.scale(s)).collect()
            })
            .collect()
    }

    /// Orthogonal partition of a random `Σ dims`-dimensional subspace into
    /// parts of the given dimensions (a partition of the whole space when
    /// the dims add up to `n`).
    pub fn partition<T: Scalar>(&mut self, n: usize, dims: &[usize]) -> Result<Partition<T>> {
        let total: usize = dims.iter().sum();
        if total > n || dims.is_empty() {
            return Err(Error::Infeasible(format!(
                "parts {dims:?} in dimension {n}"
            )));
        }
        let q = self.unitary::<T>(n);
        let mut start = 0;
        let mut parts = Vec::with_capacity(dims.len());
        for &d in dims {
            let cols: Vec<usize> = (start..start + d).collect();
            parts.push(Subspace::from_orthonormal(q.select_columns(&cols))?);
            start += d;
        }
        Partition::new(parts, &Tolerance::default())
    }

    /// Random composition of `n` into `k` positive parts.
    pub fn composition(&mut self, n: usize, k: usize) -> Vec<usize> {
        let k = k.clamp(1, n.max(1));
        let mut dims = alloc::vec![1usize; k];
        for _ in k..n {
            let i = self.int(0, k - 1);
            dims[i] += 1;
        }
        dims
    }

    /// Blade with `p` Gaussian factors.
    pub fn blade<T: Scalar>(&mut self, n: usize, p: usize) -> Result<Blade<T>> {
        let factors = (0..p).map(|_| self.vector::<T>(n)).collect();
        Blade::new(n, factors)
    }
}

/// Independent random subspaces of the given dimensions.
pub fn random_instance<T: Scalar>(n: usize, dims: &[usize], seed: u64) -> Result<Vec<Subspace<T>>> {
    if let Some(&d) = dims.iter().find(|&&d| d > n) {
        return Err(Error::Infeasible(format!(
            "dimension {d} exceeds ambient {n}"
        )));
    }
    let mut s = Sampler::new(seed);
    dims.iter().map(|&d| s.subspace(n, d)).collect()
}
