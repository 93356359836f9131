//! Subspaces, orthogonal projections, principal angles and the
//! principal-subspace / principal-partition predicates.
//!
//! Principal bases are not unique when principal angles repeat, so none of
//! the predicates here try to recover "the" principal basis. They are all
//! phrased as orthogonality of projected subspaces, which does not depend on
//! that choice.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exterior::Blade;
use crate::linalg::{extend_orthonormal, orthonormalize, orthonormalize_scaled, Tolerance};
use crate::matrix::Matrix;
use crate::scalar::{norm, Scalar};
use crate::svd::{singular_values, svd};
#[allow(unused_imports)] // inherent float methods shadow it when std is linked
use num_traits::Float;

/// A linear subspace of an `ambient`-dimensional space, stored as an
/// orthonormal basis (the columns of `onb`). Zero columns represent `{0}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<T> {
    onb: Matrix<T>,
}

impl<T: Scalar> Subspace<T> {
    /// Span of `vectors`, orthonormalized. Dependent vectors are dropped.
    pub fn from_basis<V: AsRef<[T]>>(
        ambient: usize,
        vectors: &[V],
        tol: &Tolerance,
    ) -> Result<Self> {
        let m = Matrix::from_columns(ambient, vectors)?;
        Ok(Self::span_of_columns(&m, tol))
    }

    /// Like [`Subspace::from_basis`] but fails when the vectors are not
    /// linearly independent.
    pub fn from_independent<V: AsRef<[T]>>(
        ambient: usize,
        vectors: &[V],
        tol: &Tolerance,
    ) -> Result<Self> {
        let s = Self::from_basis(ambient, vectors, tol)?;
        if s.dim() != vectors.len() {
            return Err(Error::DegenerateBasis(format!(
                "{} vectors span only {} dimensions",
                vectors.len(),
                s.dim()
            )));
        }
        Ok(s)
    }

    pub fn span_of_columns(m: &Matrix<T>, tol: &Tolerance) -> Self {
        Self {
            onb: orthonormalize(m, tol).0,
        }
    }

    /// Wraps columns that are already orthonormal (checked to 1e-10).
    pub fn from_orthonormal(onb: Matrix<T>) -> Result<Self> {
        let defect = crate::linalg::orthonormality_defect(&onb);
        if defect > 1e-10 {
            return Err(Error::Domain(format!(
                "columns are not orthonormal (defect {defect:e})"
            )));
        }
        Ok(Self { onb })
    }

    /// `{0}`.
    pub fn zero(ambient: usize) -> Self {
        Self {
            onb: Matrix::zeros(ambient, 0),
        }
    }

    /// The whole space.
    pub fn full(ambient: usize) -> Self {
        Self {
            onb: Matrix::identity(ambient),
        }
    }

    pub fn ambient(&self) -> usize {
        self.onb.rows()
    }

    pub fn dim(&self) -> usize {
        self.onb.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn onb(&self) -> &Matrix<T> {
        &self.onb
    }

    pub fn basis(&self) -> Vec<Vec<T>> {
        self.onb.columns()
    }

    /// Unit blade `e₁ ∧ … ∧ e_p` of the orthonormal basis.
    /// Fails when the ambient dimension exceeds the blade limit.
    pub fn blade(&self) -> Result<Blade<T>> {
        Blade::from_columns(&self.onb)
    }

    /// `‖X − Proj(X)‖_max` over the columns of `other`.
    pub fn containment_defect(&self, other: &Self) -> f64 {
        let coords = self.onb.adjoint_mul(&other.onb);
        let back = self.onb.matmul(&coords).expect("shapes");
        (&other.onb - &back).max_abs()
    }

    /// `other ⊆ self` up to `tol.residual_eps`.
    pub fn contains(&self, other: &Self, tol: &Tolerance) -> bool {
        self.ambient() == other.ambient() && self.containment_defect(other) <= tol.residual_eps
    }

    /// `self + other`.
    pub fn sum(&self, other: &Self, tol: &Tolerance) -> Result<Self> {
        check_ambient(self, other)?;
        let m = self.onb.hcat(&other.onb)?;
        Ok(Self {
            onb: orthonormalize_scaled(&m, tol, 1.0).0,
        })
    }

    /// `sub⊥ ∩ self`, the orthogonal complement of `sub` inside `self`.
    pub fn relative_complement(&self, sub: &Self, tol: &Tolerance) -> Result<Self> {
        check_ambient(self, sub)?;
        let m = sub.onb.hcat(&self.onb)?;
        let (q, _) = orthonormalize_scaled(&m, tol, 1.0);
        // orthonormalizing [sub | self] keeps sub's span in the leading columns
        let rest: Vec<usize> = (sub.dim()..q.cols()).collect();
        let onb = q.select_columns(&rest);
        Ok(Self { onb })
    }

    /// `P(V)` for `P = Proj_W`, as a subspace of `W`.
    pub fn projected_onto(&self, w: &Self, tol: &Tolerance) -> Result<Self> {
        check_ambient(self, w)?;
        let images = w.onb.matmul(&w.onb.adjoint_mul(&self.onb))?;
        Ok(Self {
            onb: orthonormalize_scaled(&images, tol, 1.0).0,
        })
    }

    /// Image under a linear map (assumed unitary, so the basis stays
    /// orthonormal).
    pub fn transformed(&self, map: &Matrix<T>) -> Result<Self> {
        Ok(Self {
            onb: map.matmul(&self.onb)?,
        })
    }
}

fn check_ambient<T: Scalar>(a: &Subspace<T>, b: &Subspace<T>) -> Result<()> {
    if a.ambient() != b.ambient() {
        return Err(Error::Dimension(format!(
            "subspaces live in dimensions {} and {}",
            a.ambient(),
            b.ambient()
        )));
    }
    Ok(())
}

/// `Proj_W v = Q (Q* v)`.
pub fn project<T: Scalar>(v: &[T], w: &Subspace<T>) -> Result<Vec<T>> {
    if v.len() != w.ambient() {
        return Err(Error::Dimension(format!(
            "vector of length {} projected in dimension {}",
            v.len(),
            w.ambient()
        )));
    }
    let coords = w.onb.adjoint().mul_vec(v);
    Ok(w.onb.mul_vec(&coords))
}

/// `Pν = Pv₁ ∧ … ∧ Pv_p`.
pub fn project_blade<T: Scalar>(nu: &Blade<T>, w: &Subspace<T>) -> Result<Blade<T>> {
    if nu.ambient() != w.ambient() {
        return Err(Error::Dimension(format!(
            "blade in dimension {} projected in dimension {}",
            nu.ambient(),
            w.ambient()
        )));
    }
    Ok(nu.map_factors(|v| project(v, w).expect("checked dimensions")))
}

/// Orthogonal complement `W⊥`.
pub fn complement<T: Scalar>(w: &Subspace<T>) -> Subspace<T> {
    let n = w.ambient();
    let full = extend_orthonormal(&w.onb, n);
    let rest: Vec<usize> = (w.dim()..full.cols()).collect();
    Subspace {
        onb: full.select_columns(&rest),
    }
}

/// Matrix of `Proj^V_W` in the stored orthonormal bases: `dim W × dim V`.
pub fn projection_matrix<T: Scalar>(v: &Subspace<T>, w: &Subspace<T>) -> Result<Matrix<T>> {
    check_ambient(v, w)?;
    Ok(w.onb.adjoint_mul(&v.onb))
}

/// `V ⊥̸ W`: some nonzero vector of `V` is orthogonal to all of `W`, i.e.
/// `Proj_W` restricted to `V` has rank below `dim V`.
pub fn is_partially_orthogonal<T: Scalar>(
    v: &Subspace<T>,
    w: &Subspace<T>,
    tol: &Tolerance,
) -> Result<bool> {
    let p = projection_matrix(v, w)?;
    if v.is_zero() {
        return Ok(false);
    }
    if v.dim() > w.dim() {
        return Ok(true);
    }
    let rank = singular_values(&p)
        .iter()
        .filter(|&&s| s >= tol.rank_eps)
        .count();
    Ok(rank < v.dim())
}

/// Paired principal bases of `V` and `W` with principal angles
/// `θ₁ ≤ … ≤ θ_m`, `m = min(dim V, dim W)`.
#[derive(Debug, Clone)]
pub struct PrincipalDecomposition<T> {
    /// `e₁ … e_p`, an orthonormal basis of `V`.
    pub e_basis: Matrix<T>,
    /// `f₁ … f_q`, an orthonormal basis of `W`.
    pub f_basis: Matrix<T>,
    /// Nondecreasing, in `[0, π/2]`.
    pub angles: Vec<f64>,
    /// `cos θ_i`, clamped to `[0, 1]`.
    pub cosines: Vec<f64>,
    /// `sin θ_i = ‖(1 − P) e_i‖`, measured directly so small angles keep
    /// full relative accuracy.
    pub sines: Vec<f64>,
}

impl<T: Scalar> PrincipalDecomposition<T> {
    pub fn m(&self) -> usize {
        self.angles.len()
    }

    /// `max |⟨e_i, f_j⟩ − δ_ij cos θ_i|`.
    pub fn residual(&self) -> f64 {
        let g = self.e_basis.adjoint_mul(&self.f_basis);
        let mut worst: f64 = 0.0;
        for i in 0..g.rows() {
            for j in 0..g.cols() {
                let want = if i == j && i < self.m() {
                    self.cosines[i]
                } else {
                    0.0
                };
                worst = worst.max((g[(i, j)] - T::from_real(want)).abs());
            }
        }
        worst
    }

    /// `∏ cos θ_i`.
    pub fn cos_product(&self) -> f64 {
        self.cosines.iter().product()
    }

    /// `∏ sin θ_i`.
    pub fn sin_product(&self) -> f64 {
        self.sines.iter().product()
    }

    /// `sin Θ` for `Θ` with `cos Θ = ∏ cos θ_i`, as
    /// `√(1 − ∏ (1 − sin² θ_i))` without the cancellation near `Θ = 0`.
    pub fn sin_of_cos_product(&self) -> f64 {
        let log_cos_sq: f64 = self.sines.iter().map(|s| (-(s * s)).min(0.0).ln_1p()).sum();
        (-log_cos_sq.exp_m1()).clamp(0.0, 1.0).sqrt()
    }

    /// `sin Θ⊥` for `cos Θ⊥ = ∏ sin θ_i`.
    pub fn sin_of_sin_product(&self) -> f64 {
        let log_sin_sq: f64 = self
            .cosines
            .iter()
            .map(|c| (-(c * c)).max(-1.0).ln_1p())
            .sum();
        (-log_sin_sq.exp_m1()).clamp(0.0, 1.0).sqrt()
    }

    pub fn e(&self, i: usize) -> Vec<T> {
        self.e_basis.column(i)
    }

    pub fn f(&self, i: usize) -> Vec<T> {
        self.f_basis.column(i)
    }
}

/// Principal bases from the SVD of the `q × p` matrix of `Proj^V_W`.
pub fn principal_decomposition<T: Scalar>(
    v: &Subspace<T>,
    w: &Subspace<T>,
) -> Result<PrincipalDecomposition<T>> {
    check_ambient(v, w)?;
    if v.is_zero() || w.is_zero() {
        return Err(Error::Domain(
            "principal angles need nonzero subspaces".into(),
        ));
    }
    let p = projection_matrix(v, w)?;
    let d = svd(&p);
    let right = extend_orthonormal(&d.v, v.dim());
    let left = extend_orthonormal(&d.u, w.dim());
    let e_basis = v.onb.matmul(&right)?;
    let f_basis = w.onb.matmul(&left)?;
    let cosines: Vec<f64> = d.s.iter().map(|&s| s.clamp(0.0, 1.0)).collect();
    let m = cosines.len();
    let residual = &e_basis - &w.onb.matmul(&w.onb.adjoint_mul(&e_basis))?;
    let sines: Vec<f64> = (0..m)
        .map(|i| norm(&residual.column(i)).clamp(0.0, 1.0))
        .collect();
    let angles = sines
        .iter()
        .zip(&cosines)
        .map(|(s, c)| s.atan2(*c))
        .collect();
    Ok(PrincipalDecomposition {
        e_basis,
        f_basis,
        angles,
        cosines,
        sines,
    })
}

/// Largest cosine between two subspaces (0 when either is `{0}`).
pub fn max_cosine<T: Scalar>(a: &Subspace<T>, b: &Subspace<T>) -> Result<f64> {
    let p = projection_matrix(a, b)?;
    if a.is_zero() || b.is_zero() {
        return Ok(0.0);
    }
    Ok(singular_values(&p)[0])
}

/// `U` is principal in `V` with respect to `W` iff `P(U) ⊥ P(U⊥ ∩ V)` for
/// `P = Proj_W`. `{0}` and subspaces orthogonal to `W` count as principal.
pub fn is_principal_subspace<T: Scalar>(
    u: &Subspace<T>,
    v: &Subspace<T>,
    w: &Subspace<T>,
    tol: &Tolerance,
) -> Result<bool> {
    check_ambient(u, v)?;
    check_ambient(v, w)?;
    if !v.contains(u, tol) {
        return Err(Error::Domain("U is not contained in V".into()));
    }
    let rest = v.relative_complement(u, tol)?;
    let pu = u.projected_onto(w, tol)?;
    let prest = rest.projected_onto(w, tol)?;
    Ok(max_cosine(&pu, &prest)? < tol.residual_eps)
}

/// An orthogonal partition `V = V₁ ⊕ … ⊕ V_k`. Parts may be `{0}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition<T> {
    parts: Vec<Subspace<T>>,
}

impl<T: Scalar> Partition<T> {
    pub fn new(parts: Vec<Subspace<T>>, tol: &Tolerance) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Domain("a partition needs at least one part".into()));
        }
        for (i, a) in parts.iter().enumerate() {
            for b in &parts[i + 1..] {
                check_ambient(a, b)?;
                let cross = a.onb.adjoint_mul(&b.onb).max_abs();
                if cross > tol.residual_eps {
                    return Err(Error::Domain(format!(
                        "parts are not orthogonal (cross Gram {cross:e})"
                    )));
                }
            }
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[Subspace<T>] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn ambient(&self) -> usize {
        self.parts[0].ambient()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.parts.iter().map(|p| p.dim()).collect()
    }

    /// `V₁ ⊕ … ⊕ V_k`, with the parts' bases concatenated in order.
    pub fn direct_sum(&self) -> Subspace<T> {
        let mut onb = Matrix::zeros(self.ambient(), 0);
        for p in &self.parts {
            onb = onb.hcat(&p.onb).expect("same ambient");
        }
        Subspace { onb }
    }
}

/// Criterion: the projections `P(V_i)` onto `W` are pairwise orthogonal.
pub fn is_principal_partition<T: Scalar>(
    partition: &Partition<T>,
    w: &Subspace<T>,
    tol: &Tolerance,
) -> Result<bool> {
    let projected: Vec<Subspace<T>> = partition
        .parts()
        .iter()
        .map(|p| p.projected_onto(w, tol))
        .collect::<Result<_>>()?;
    for (i, a) in projected.iter().enumerate() {
        for b in &projected[i + 1..] {
            if max_cosine(a, b)? >= tol.residual_eps {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
