//! Vector angles, Grassmann angles and complementary Grassmann angles.
//!
//! `cos Θ_{V,W} = ‖Pν‖ / ‖ν‖` for a blade `ν` of `V` and `P = Proj_W`. The
//! angle is asymmetric: it is `π/2` whenever `dim V > dim W`. Conventions
//! for trivial subspaces: `Θ_{{0},W} = 0`, and `Θ_{V,{0}} = π/2` for
//! `V ≠ {0}`.
//!
//! Each angle has a projection route and one or more Gram-determinant
//! formulas on arbitrary (not necessarily orthonormal) bases. With
//! `A = (⟨w_i, w_j⟩)`, `B = (⟨w_i, v_j⟩)` and `D = (⟨v_i, v_j⟩)`:
//!
//! ```text
//! equal dims:     cos² Θ  = |det B|² / (det A · det D)
//! any dims:       cos² Θ  = det(B* A⁻¹ B) / det D
//! complementary:  cos² Θ⊥ = det(A − B D⁻¹ B*) / det A
//! ```

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exterior::{Blade, MAX_AMBIENT};
use crate::linalg::{det, gram, solve, volume};
use crate::matrix::Matrix;
use crate::scalar::{inner, norm, Scalar};
use crate::subspace::{
    complement, principal_decomposition, project_blade, projection_matrix, Subspace,
};
use crate::svd::singular_values;
#[allow(unused_imports)] // inherent float methods shadow it when std is linked
use num_traits::Float;

/// Gram matrices with a condition number above this are rejected.
pub const MAX_GRAM_CONDITION: f64 = 1e12;

/// How far below zero a computed `cos²` may land before it is treated as a
/// bug rather than rounding.
pub const COS_SQ_NEGATIVE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Method {
    Projection,
    EqualDimFormula,
    AnyDimFormula,
    PrincipalProduct,
    ComplementaryFormula,
    ComplementaryProjection,
    Oriented,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Projection => "projection",
            Method::EqualDimFormula => "equal-dim-formula",
            Method::AnyDimFormula => "any-dim-formula",
            Method::PrincipalProduct => "principal-product",
            Method::ComplementaryFormula => "complementary-formula",
            Method::ComplementaryProjection => "complementary-projection",
            Method::Oriented => "oriented",
        }
    }
}

/// An angle in `[0, π/2]` with the method that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AngleReport {
    /// Radians.
    pub value: f64,
    /// `cos` of the angle, computed directly rather than as `cos(value)`.
    pub cos: f64,
    pub method: Method,
    /// Largest disagreement with the cross-check routes, 0 if none ran.
    pub residual: f64,
}

impl AngleReport {
    pub fn from_cos(cos: f64, method: Method) -> Self {
        let cos = cos.clamp(0.0, 1.0);
        Self {
            value: cos.acos(),
            cos,
            method,
            residual: 0.0,
        }
    }

    /// Angle `atan2(sin, cos)`, keeping small angles accurate where
    /// `acos(cos)` loses half the digits.
    pub fn from_cos_sin(cos: f64, sin: f64, method: Method) -> Self {
        let cos = cos.clamp(0.0, 1.0);
        Self {
            value: sin.clamp(0.0, 1.0).atan2(cos),
            cos,
            method,
            residual: 0.0,
        }
    }

    fn from_cos_sq(cos_sq: f64, method: Method) -> Result<Self> {
        if cos_sq < -COS_SQ_NEGATIVE_SLACK {
            return Err(Error::Consistency(format!("cos² = {cos_sq:e} is negative")));
        }
        Ok(Self::from_cos(cos_sq.clamp(0.0, 1.0).sqrt(), method))
    }

    pub fn with_residual(mut self, residual: f64) -> Self {
        self.residual = residual;
        self
    }

    pub fn cos_squared(&self) -> f64 {
        self.cos * self.cos
    }

    pub fn degrees(&self) -> f64 {
        self.value.to_degrees()
    }
}

/// Euclidean angle in `[0, π]` and, over ℂ, the Hermitian angle in `[0, π/2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VectorAngle {
    pub euclidean: f64,
    pub hermitian: Option<f64>,
}

pub fn vector_angle<T: Scalar>(v: &[T], w: &[T]) -> Result<VectorAngle> {
    if v.len() != w.len() {
        return Err(Error::Dimension(format!(
            "vectors of lengths {} and {}",
            v.len(),
            w.len()
        )));
    }
    let scale = norm(v) * norm(w);
    if scale == 0.0 {
        return Err(Error::Domain("angle with a zero vector".into()));
    }
    let ip = inner(v, w);
    let euclidean = (ip.re() / scale).clamp(-1.0, 1.0).acos();
    let hermitian = match T::FIELD {
        crate::scalar::Field::Real => None,
        crate::scalar::Field::Complex => Some((ip.abs() / scale).clamp(0.0, 1.0).acos()),
    };
    Ok(VectorAngle {
        euclidean,
        hermitian,
    })
}

/// Projection route: `cos Θ = ‖Pν‖` for the unit blade of `V`, cross-checked
/// against the product of principal cosines.
pub fn grassmann_angle<T: Scalar>(v: &Subspace<T>, w: &Subspace<T>) -> Result<AngleReport> {
    check_ambient(v, w)?;
    if v.is_zero() {
        return Ok(AngleReport::from_cos(1.0, Method::Projection));
    }
    if v.dim() > w.dim() {
        return Ok(AngleReport::from_cos(0.0, Method::Projection));
    }
    let cos = if v.ambient() <= MAX_AMBIENT {
        project_blade(&v.blade()?, w)?.norm()?
    } else {
        // same quantity, ‖Pν‖² = det(P* P), without building blades
        grassmann_cos_sq_orthonormal(&projection_matrix(v, w)?)?
            .max(0.0)
            .sqrt()
    };
    let d = principal_decomposition(v, w)?;
    let check = d.cos_product();
    let report = AngleReport::from_cos_sin(cos, d.sin_of_cos_product(), Method::Projection);
    Ok(report.with_residual((cos - check).abs()))
}

/// `cos Θ = ∏ cos θ_i` over the principal angles (`π/2` when `dim V > dim W`).
pub fn grassmann_angle_principal<T: Scalar>(
    v: &Subspace<T>,
    w: &Subspace<T>,
) -> Result<AngleReport> {
    check_ambient(v, w)?;
    if v.is_zero() {
        return Ok(AngleReport::from_cos(1.0, Method::PrincipalProduct));
    }
    if v.dim() > w.dim() {
        return Ok(AngleReport::from_cos(0.0, Method::PrincipalProduct));
    }
    let d = principal_decomposition(v, w)?;
    Ok(AngleReport::from_cos_sin(
        d.cos_product(),
        d.sin_of_cos_product(),
        Method::PrincipalProduct,
    ))
}

/// `cos² Θ = det(P* P)` for the matrix `P` of `Proj^V_W` in orthonormal bases.
pub fn grassmann_cos_sq_orthonormal<T: Scalar>(p: &Matrix<T>) -> Result<f64> {
    Ok(det(&p.adjoint_mul(p))?.re())
}

/// `cos² Θ⊥ = det(1 − P P*)` for the `q × p` matrix `P` of `Proj^V_W` in
/// orthonormal bases.
pub fn complementary_cos_sq_orthonormal<T: Scalar>(p: &Matrix<T>) -> Result<f64> {
    let q = p.rows();
    let ppt = p.matmul(&p.adjoint())?;
    Ok(det(&(&Matrix::identity(q) - &ppt))?.re())
}

/// `cos Θ⊥` from orthonormal bases `E` of `V` and `F` of `W`, evaluating
/// `det(1 − P P*)` in the factored form `det(R* R)` with `R = (1 − E E*) F`.
/// The unfactored determinant is accurate to rounding in `cos²`, which
/// near `Θ⊥ = π/2` leaves only about `√ε` in the angle. This form keeps the
/// angle accurate there too.
pub fn complementary_cos_orthonormal<T: Scalar>(e: &Matrix<T>, f: &Matrix<T>) -> Result<f64> {
    if e.rows() != f.rows() {
        return Err(Error::Dimension(format!(
            "bases live in dimensions {} and {}",
            e.rows(),
            f.rows()
        )));
    }
    let coords = e.adjoint_mul(f);
    let r = f - &e.matmul(&coords)?;
    Ok(volume(&r.columns()).min(1.0))
}

struct Grams<T> {
    a: Matrix<T>,
    b: Matrix<T>,
    d: Matrix<T>,
}

fn grams<T: Scalar, V: AsRef<[T]>>(basis_v: &[V], basis_w: &[V]) -> Result<Grams<T>> {
    let n = basis_v
        .iter()
        .chain(basis_w)
        .map(|x| x.as_ref().len())
        .next()
        .unwrap_or(0);
    if basis_v.iter().chain(basis_w).any(|x| x.as_ref().len() != n) {
        return Err(Error::Dimension(
            "basis vectors have different lengths".into(),
        ));
    }
    let a = gram(basis_w, basis_w);
    let d = gram(basis_v, basis_v);
    check_gram(&a, "W")?;
    check_gram(&d, "V")?;
    let b = gram(basis_w, basis_v);
    Ok(Grams { a, b, d })
}

fn check_gram<T: Scalar>(g: &Matrix<T>, label: &str) -> Result<()> {
    if g.rows() == 0 {
        return Ok(());
    }
    let s = singular_values(g);
    let (largest, smallest) = (s[0], s[s.len() - 1]);
    if !(largest > 0.0) || smallest * MAX_GRAM_CONDITION <= largest {
        return Err(Error::DegenerateBasis(format!(
            "basis of {label} is dependent or ill-conditioned (Gram singular values {largest:e} .. {smallest:e})"
        )));
    }
    Ok(())
}

/// `cos² Θ = |det B|² / (det A · det D)` for bases of equal length `p ≥ 1`.
pub fn grassmann_angle_equal_dim<T: Scalar, V: AsRef<[T]>>(
    basis_v: &[V],
    basis_w: &[V],
) -> Result<AngleReport> {
    if basis_v.len() != basis_w.len() {
        return Err(Error::Dimension(format!(
            "equal-dimension formula needs bases of equal length, got {} and {}",
            basis_v.len(),
            basis_w.len()
        )));
    }
    if basis_v.is_empty() {
        return Err(Error::Domain("equal-dimension formula needs p >= 1".into()));
    }
    let g = grams(basis_v, basis_w)?;
    let det_b = det(&g.b)?;
    let cos_sq = det_b.abs_sqr() / (det(&g.a)?.re() * det(&g.d)?.re());
    AngleReport::from_cos_sq(cos_sq, Method::EqualDimFormula)
}

/// `cos² Θ = det(B* A⁻¹ B) / det D`, with `A⁻¹B` from an LU solve.
pub fn grassmann_angle_any_dim<T: Scalar, V: AsRef<[T]>>(
    basis_v: &[V],
    basis_w: &[V],
) -> Result<AngleReport> {
    let g = grams(basis_v, basis_w)?;
    let (p, q) = (basis_v.len(), basis_w.len());
    if p > q {
        // B* A⁻¹ B is p × p of rank at most q
        return Ok(AngleReport::from_cos(0.0, Method::AnyDimFormula));
    }
    if p == 0 {
        return Ok(AngleReport::from_cos(1.0, Method::AnyDimFormula));
    }
    let a_inv_b = solve(&g.a, &g.b)?;
    let n = g.b.adjoint_mul(&a_inv_b);
    let cos_sq = det(&n)?.re() / det(&g.d)?.re();
    AngleReport::from_cos_sq(cos_sq, Method::AnyDimFormula)
}

/// `Θ⊥_{V,W} = Θ_{V,W⊥}`, cross-checked against `∏ sin θ_i` and
/// `det(1 − P P*)`.
pub fn complementary_angle<T: Scalar>(v: &Subspace<T>, w: &Subspace<T>) -> Result<AngleReport> {
    check_ambient(v, w)?;
    let base = grassmann_angle(v, &complement(w))?;
    let cos = base.cos;
    let sines = if v.is_zero() || w.is_zero() {
        1.0
    } else {
        principal_decomposition(v, w)?.sin_product()
    };
    let eq12 = complementary_cos_sq_orthonormal(&projection_matrix(v, w)?)?;
    let residual = (cos - sines)
        .abs()
        .max((cos * cos - eq12).abs())
        .max(base.residual);
    Ok(AngleReport {
        method: Method::ComplementaryProjection,
        residual,
        ..base
    })
}

/// `cos Θ⊥ = ∏ sin θ_i` over the principal angles (`0` when either
/// subspace is `{0}`).
pub fn complementary_angle_principal<T: Scalar>(
    v: &Subspace<T>,
    w: &Subspace<T>,
) -> Result<AngleReport> {
    check_ambient(v, w)?;
    if v.is_zero() || w.is_zero() {
        return Ok(AngleReport::from_cos(1.0, Method::PrincipalProduct));
    }
    let d = principal_decomposition(v, w)?;
    Ok(AngleReport::from_cos_sin(
        d.sin_product(),
        d.sin_of_sin_product(),
        Method::PrincipalProduct,
    ))
}

/// `cos² Θ⊥ = det(A − B D⁻¹ B*) / det A`.
///
/// The Schur complement `A − B D⁻¹ B*` is the Gram matrix of the residuals
/// `R = W − V D⁻¹ B*` of the `w_i` against `V`, so `cos Θ⊥` is taken as
/// `vol(R) / vol(W)` from QR volumes. The literal determinant ratio is
/// reported as the residual; it agrees in `cos²` but near `Θ⊥ = π/2` only
/// pins the angle to about `√ε`.
pub fn complementary_angle_formula<T: Scalar, V: AsRef<[T]>>(
    basis_v: &[V],
    basis_w: &[V],
) -> Result<AngleReport> {
    let g = grams(basis_v, basis_w)?;
    let n = basis_v
        .iter()
        .chain(basis_w)
        .map(|x| x.as_ref().len())
        .next()
        .unwrap_or(0);
    let d_inv_bt = solve(&g.d, &g.b.adjoint())?;
    let schur = &g.a - &g.b.matmul(&d_inv_bt)?;
    let literal = det(&schur)?.re() / det(&g.a)?.re();
    if literal < -COS_SQ_NEGATIVE_SLACK {
        return Err(Error::Consistency(format!(
            "cos² = {literal:e} is negative"
        )));
    }
    let vm = Matrix::from_columns(n, basis_v)?;
    let wm = Matrix::from_columns(n, basis_w)?;
    let r = &wm - &vm.matmul(&d_inv_bt)?;
    let cos = volume(&r.columns()) / volume(&wm.columns());
    let report = AngleReport::from_cos(cos, Method::ComplementaryFormula);
    Ok(report.with_residual((report.cos_squared() - literal).abs()))
}

/// `⟨ν, ω⟩ / (‖ν‖ ‖ω‖)`: the cosine of the oriented Grassmann angle. Its
/// modulus is `cos Θ_{V,W}`; over ℂ it also carries a phase.
pub fn oriented_grassmann_cos<T: Scalar>(nu: &Blade<T>, omega: &Blade<T>) -> Result<T> {
    if nu.grade() != omega.grade() {
        return Err(Error::Domain(format!(
            "oriented angle needs equal grades, got {} and {}",
            nu.grade(),
            omega.grade()
        )));
    }
    if nu.ambient() != omega.ambient() {
        return Err(Error::Dimension("blades live in different spaces".into()));
    }
    let tol = crate::linalg::Tolerance::default();
    if nu.is_zero(&tol) || omega.is_zero(&tol) {
        return Err(Error::Domain("oriented angle with a zero blade".into()));
    }
    let scale = nu.norm()? * omega.norm()?;
    Ok(nu.inner(omega).scale(1.0 / scale))
}

fn check_ambient<T: Scalar>(v: &Subspace<T>, w: &Subspace<T>) -> Result<()> {
    if v.ambient() != w.ambient() {
        return Err(Error::Dimension(format!(
            "subspaces live in dimensions {} and {}",
            v.ambient(),
            w.ambient()
        )));
    }
    Ok(())
}

/// Every available route for `Θ_{V,W}` on the given bases. The equal-dim
/// formula is included only when the dimensions match.
pub fn all_methods<T: Scalar, V: AsRef<[T]>>(
    basis_v: &[V],
    basis_w: &[V],
    tol: &crate::linalg::Tolerance,
) -> Result<Vec<AngleReport>> {
    let n = basis_v
        .iter()
        .chain(basis_w)
        .map(|x| x.as_ref().len())
        .next()
        .unwrap_or(0);
    let v = Subspace::from_independent(n, basis_v, tol)?;
    let w = Subspace::from_independent(n, basis_w, tol)?;
    let mut out = Vec::new();
    out.push(grassmann_angle(&v, &w)?);
    out.push(grassmann_angle_principal(&v, &w)?);
    out.push(grassmann_angle_any_dim(basis_v, basis_w)?);
    if basis_v.len() == basis_w.len() && !basis_v.is_empty() {
        out.push(grassmann_angle_equal_dim(basis_v, basis_w)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Tolerance;
    use alloc::vec;
    use core::f64::consts::{FRAC_PI_2, FRAC_PI_4};
    use num_complex::Complex64;

    fn xi() -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * core::f64::consts::PI / 3.0)
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn example_bases() -> (Vec<Vec<Complex64>>, Vec<Vec<Complex64>>) {
        let x = xi();
        let v = vec![vec![c(1.0), -x, c(0.0)], vec![c(0.0), x, -x * x]];
        let w = vec![vec![c(1.0), c(0.0), c(0.0)], vec![c(0.0), x, c(0.0)]];
        (v, w)
    }

    #[test]
    fn vector_angle_same_and_orthogonal() {
        let a = vector_angle(&[1.0, 2.0], &[1.0, 2.0]).unwrap();
        assert!(a.euclidean.abs() < 1e-7);
        assert_eq!(a.hermitian, None);
        let b = vector_angle(&[1.0, 0.0], &[0.0, 3.0]).unwrap();
        assert!((b.euclidean - FRAC_PI_2).abs() < 1e-15);
        assert!(vector_angle(&[0.0, 0.0], &[1.0, 0.0]).is_err());
    }

    #[test]
    fn hermitian_angle_of_worked_complex_pair() {
        let x = xi();
        let v = [x, x * x, c(-2.0)];
        let w = [c(1.0), x, c(0.0)];
        let a = vector_angle(&v, &w).unwrap();
        let h = a.hermitian.unwrap();
        assert!((h.cos() - 3f64.sqrt() / 3.0).abs() < 1e-12);
    }

    #[test]
    fn equal_dim_formula_on_worked_complex_planes() {
        let (v, w) = example_bases();
        let r = grassmann_angle_equal_dim(&v, &w).unwrap();
        assert!((r.cos - 3f64.sqrt() / 3.0).abs() < 1e-12);
        assert_eq!(r.method, Method::EqualDimFormula);
    }

    #[test]
    fn identical_bases_give_zero() {
        let (v, _) = example_bases();
        let r = grassmann_angle_equal_dim(&v, &v).unwrap();
        assert!(r.value < 1e-7);
    }

    #[test]
    fn any_dim_formula_worked_real_example() {
        let v = vec![vec![1.0, 0.0, 1.0, 0.0]];
        let w = vec![vec![0.0, 1.0, 1.0, 0.0], vec![1.0, 2.0, 2.0, -1.0]];
        let r = grassmann_angle_any_dim(&v, &w).unwrap();
        assert!((r.value - FRAC_PI_4).abs() < 1e-12);
        let r = grassmann_angle_any_dim(&w, &v).unwrap();
        assert_eq!(r.value, FRAC_PI_2);
    }

    #[test]
    fn projection_route_dimension_rules() {
        let t = Tolerance::default();
        let w = Subspace::from_basis(3, &[[1.0, 1.0, 0.0]], &t).unwrap();
        assert!(grassmann_angle(&w, &w).unwrap().value < 1e-7);
        let big = Subspace::<f64>::full(3);
        assert_eq!(grassmann_angle(&big, &w).unwrap().value, FRAC_PI_2);
        assert_eq!(grassmann_angle(&Subspace::zero(3), &w).unwrap().value, 0.0);
        assert_eq!(
            grassmann_angle(&w, &Subspace::zero(3)).unwrap().value,
            FRAC_PI_2
        );
    }

    #[test]
    fn complementary_orthogonal_and_intersecting() {
        let t = Tolerance::default();
        let x = Subspace::from_basis(3, &[[1.0, 0.0, 0.0]], &t).unwrap();
        let yz = Subspace::from_basis(3, &[[0.0, 1.0, 0.0], [0.0, 0.0, 1.0]], &t).unwrap();
        assert!(complementary_angle(&x, &yz).unwrap().value < 1e-7);
        let xy = Subspace::from_basis(3, &[[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]], &t).unwrap();
        let r = complementary_angle(&xy, &yz).unwrap();
        assert!((r.value - FRAC_PI_2).abs() < 1e-12);
        assert!(r.residual < 1e-12);
    }

    #[test]
    fn complementary_formula_orthogonal_bases() {
        let v = vec![vec![1.0, 0.0, 0.0]];
        let w = vec![vec![0.0, 2.0, 0.0], vec![0.0, 0.0, 3.0]];
        let r = complementary_angle_formula(&v, &w).unwrap();
        assert_eq!(r.cos, 1.0);
    }

    #[test]
    fn dependent_basis_is_rejected() {
        let v = vec![vec![1.0, 2.0, 3.0], vec![2.0, 4.0, 6.0]];
        let w = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]];
        for r in [
            grassmann_angle_equal_dim(&v, &w),
            grassmann_angle_any_dim(&v, &w),
            complementary_angle_formula(&v, &w),
        ] {
            assert!(matches!(r, Err(Error::DegenerateBasis(_))));
        }
    }

    #[test]
    fn oriented_cos_signs_and_errors() {
        let nu = Blade::new(3, vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]).unwrap();
        assert!((oriented_grassmann_cos(&nu, &nu).unwrap() - 1.0).abs() < 1e-15);
        let neg = nu.scaled(-1.0);
        assert!((oriented_grassmann_cos(&nu, &neg).unwrap() + 1.0).abs() < 1e-15);
        let line = Blade::new(3, vec![vec![1.0, 0.0, 0.0]]).unwrap();
        assert!(oriented_grassmann_cos(&nu, &line).is_err());
        let zero = Blade::new(3, vec![vec![1.0, 0.0, 0.0], vec![2.0, 0.0, 0.0]]).unwrap();
        assert!(oriented_grassmann_cos(&nu, &zero).is_err());
    }
}
