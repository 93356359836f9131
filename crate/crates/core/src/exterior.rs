//! Blades in the exterior algebra `ΛX`, kept in factored form.
//!
//! A [`Blade`] is `c · v₁ ∧ … ∧ v_p`. Nothing is ever expanded into the
//! `C(n, p)` coordinates of `ΛᵖX`: inner products are Gram determinants
//! `⟨ν, ω⟩ = det(⟨v_i, w_j⟩)`, and contractions are returned as coefficient
//! lists against the coordinate blades `ω_Î` of the contracted blade.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{det, gram, volume, Tolerance};
use crate::matrix::Matrix;
use crate::multiindex::{multi_indices, MultiIndex};
use crate::scalar::{norm, Scalar};
#[allow(unused_imports)] // inherent float methods shadow it when std is linked
use num_traits::Float;

pub use crate::multiindex::sigma_sign;

/// Largest ambient dimension (and grade) a blade may carry.
pub const MAX_AMBIENT: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct Blade<T> {
    ambient: usize,
    coeff: T,
    factors: Vec<Vec<T>>,
}

impl<T: Scalar> Blade<T> {
    /// `v₁ ∧ … ∧ v_p` in an `ambient`-dimensional space.
    pub fn new(ambient: usize, factors: Vec<Vec<T>>) -> Result<Self> {
        Self::with_coefficient(ambient, T::one(), factors)
    }

    pub fn with_coefficient(ambient: usize, coeff: T, factors: Vec<Vec<T>>) -> Result<Self> {
        if ambient > MAX_AMBIENT {
            return Err(Error::Domain(format!(
                "ambient dimension {ambient} exceeds {MAX_AMBIENT}"
            )));
        }
        if factors.len() > MAX_AMBIENT {
            return Err(Error::Domain(format!(
                "grade {} exceeds {MAX_AMBIENT}",
                factors.len()
            )));
        }
        if let Some(f) = factors.iter().find(|f| f.len() != ambient) {
            return Err(Error::Dimension(format!(
                "factor of length {} in a {ambient}-dimensional space",
                f.len()
            )));
        }
        Ok(Self {
            ambient,
            coeff,
            factors,
        })
    }

    /// Grade-0 blade carrying the scalar `c`.
    pub fn scalar(ambient: usize, c: T) -> Self {
        Self {
            ambient,
            coeff: c,
            factors: Vec::new(),
        }
    }

    /// Blade whose factors are the columns of `m`.
    pub fn from_columns(m: &Matrix<T>) -> Result<Self> {
        Self::new(m.rows(), m.columns())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn grade(&self) -> usize {
        self.factors.len()
    }

    pub fn coefficient(&self) -> T {
        self.coeff
    }

    pub fn factors(&self) -> &[Vec<T>] {
        &self.factors
    }

    pub fn scaled(&self, k: T) -> Self {
        Self {
            ambient: self.ambient,
            coeff: self.coeff * k,
            factors: self.factors.clone(),
        }
    }

    /// Gram matrix of the factors (without the coefficient).
    pub fn gram(&self) -> Matrix<T> {
        gram(&self.factors, &self.factors)
    }

    /// `⟨self, other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &Self) -> T {
        blade_inner(self, other)
    }

    /// `‖ν‖²`.
    pub fn norm_sqr(&self) -> f64 {
        let n = self.volume();
        n * n
    }

    pub fn norm(&self) -> Result<f64> {
        blade_norm(self)
    }

    fn volume(&self) -> f64 {
        self.coeff.abs() * volume(&self.factors)
    }

    /// Scale-invariant zero test: `‖ν‖ < rank_eps · |c| ∏ ‖v_i‖`, i.e. the
    /// Gram determinant is below `rank_eps² · ∏ ‖v_i‖²`.
    pub fn is_zero(&self, tol: &Tolerance) -> bool {
        if self.coeff == T::zero() {
            return true;
        }
        let lengths: f64 = self.factors.iter().map(|f| norm(f)).product();
        if lengths == 0.0 {
            return true;
        }
        volume(&self.factors) < tol.rank_eps * lengths
    }

    /// Unit blade with the same orientation.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm()?;
        if n == 0.0 {
            return Err(Error::Domain("cannot normalize the zero blade".into()));
        }
        Ok(self.scaled(T::from_real(1.0 / n)))
    }

    /// Applies a linear map to every factor.
    pub fn map_factors(&self, mut f: impl FnMut(&[T]) -> Vec<T>) -> Self {
        Self {
            ambient: self.ambient,
            coeff: self.coeff,
            factors: self.factors.iter().map(|v| f(v)).collect(),
        }
    }
}

/// `a ∧ b`: concatenates factor lists and multiplies coefficients.
pub fn wedge<T: Scalar>(a: &Blade<T>, b: &Blade<T>) -> Result<Blade<T>> {
    if a.ambient != b.ambient {
        return Err(Error::Dimension(format!(
            "wedge of blades in dimensions {} and {}",
            a.ambient, b.ambient
        )));
    }
    let mut factors = a.factors.clone();
    factors.extend(b.factors.iter().cloned());
    Blade::with_coefficient(a.ambient, a.coeff * b.coeff, factors)
}

/// `⟨ν, ω⟩ = conj(c_ν) c_ω det(⟨v_i, w_j⟩)` for equal grades, 0 otherwise.
pub fn blade_inner<T: Scalar>(a: &Blade<T>, b: &Blade<T>) -> T {
    if a.grade() != b.grade() {
        return T::zero();
    }
    let g = gram(&a.factors, &b.factors);
    a.coeff.conj() * b.coeff * det(&g).expect("square Gram matrix")
}

/// `‖ν‖ = √⟨ν, ν⟩`, the `p`-volume of the spanned parallelotope times
/// `|c|`. Computed from a QR factorization of the factors rather than the
/// Gram determinant, so degenerate blades come out at rounding level.
pub fn blade_norm<T: Scalar>(a: &Blade<T>) -> Result<f64> {
    let n = a.volume();
    if !n.is_finite() {
        return Err(Error::Consistency(format!("blade norm is {n}")));
    }
    Ok(n)
}

/// One term `c_I · ω_Î` of a contraction.
#[derive(Debug, Clone, PartialEq)]
pub struct ContractionTerm<T> {
    pub index: MultiIndex,
    pub coeff: T,
    pub blade: Blade<T>,
}

/// `ν ⌐ ω = Σ_I σ_I ⟨ν, ω_I⟩ ω_Î`, stored as its terms.
#[derive(Debug, Clone, PartialEq)]
pub struct Contraction<T> {
    pub grade: usize,
    pub terms: Vec<ContractionTerm<T>>,
}

impl<T: Scalar> Contraction<T> {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `⟨μ, ν ⌐ ω⟩`.
    pub fn inner_left(&self, mu: &Blade<T>) -> T {
        self.terms
            .iter()
            .map(|t| t.coeff * mu.inner(&t.blade))
            .sum()
    }

    /// `‖ν ⌐ ω‖²` from the Gram matrix of the `ω_Î` family.
    pub fn norm_sqr(&self) -> f64 {
        let mut total = T::zero();
        for s in &self.terms {
            for t in &self.terms {
                total += s.coeff.conj() * t.coeff * s.blade.inner(&t.blade);
            }
        }
        total.re().max(0.0)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }
}

/// Left contraction of `nu` on `omega`, expanded along the factors of
/// `omega`. Zero when `grade(nu) > grade(omega)`.
pub fn contract<T: Scalar>(nu: &Blade<T>, omega: &Blade<T>) -> Result<Contraction<T>> {
    if nu.ambient != omega.ambient {
        return Err(Error::Dimension(format!(
            "contraction of blades in dimensions {} and {}",
            nu.ambient, omega.ambient
        )));
    }
    let p = nu.grade();
    let q = omega.grade();
    if p > q {
        return Ok(Contraction {
            grade: 0,
            terms: Vec::new(),
        });
    }
    let set = coordinate_blades(&omega.factors, p)?;
    let mut terms = Vec::with_capacity(set.blades.len());
    for (index, omega_i) in &set.blades {
        let hat = index.complement();
        let factors = hat
            .zero_based()
            .iter()
            .map(|&k| omega.factors[k].clone())
            .collect();
        let blade = Blade::new(omega.ambient, factors)?;
        let sign = T::from_real(f64::from(index.sigma()));
        let coeff = omega.coeff * sign * nu.inner(omega_i);
        terms.push(ContractionTerm {
            index: index.clone(),
            coeff,
            blade,
        });
    }
    Ok(Contraction {
        grade: q - p,
        terms,
    })
}

/// The coordinate `p`-blades `ω_I = w_{i₁} ∧ … ∧ w_{i_p}` of a basis.
#[derive(Debug, Clone, PartialEq)]
pub struct CoordinateBladeSet<T> {
    pub basis: Vec<Vec<T>>,
    pub grade: usize,
    pub blades: Vec<(MultiIndex, Blade<T>)>,
}

impl<T: Scalar> CoordinateBladeSet<T> {
    pub fn get(&self, index: &MultiIndex) -> Option<&Blade<T>> {
        self.blades.iter().find(|(i, _)| i == index).map(|(_, b)| b)
    }

    pub fn len(&self) -> usize {
        self.blades.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blades.is_empty()
    }
}

pub fn coordinate_blades<T: Scalar>(basis: &[Vec<T>], p: usize) -> Result<CoordinateBladeSet<T>> {
    let q = basis.len();
    let ambient = basis.first().map_or(0, |v| v.len());
    if p > q {
        return Err(Error::Domain(format!("grade {p} exceeds basis length {q}")));
    }
    let mut blades = Vec::new();
    for index in multi_indices(p, q) {
        let factors = index
            .zero_based()
            .iter()
            .map(|&k| basis[k].clone())
            .collect();
        blades.push((index, Blade::new(ambient, factors)?));
    }
    Ok(CoordinateBladeSet {
        basis: basis.to_vec(),
        grade: p,
        blades,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use num_complex::Complex64;

    fn e(n: usize, i: usize) -> Vec<f64> {
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        v
    }

    #[test]
    fn scalar_one_is_wedge_identity() {
        let nu = Blade::new(3, vec![vec![1.0, 2.0, 3.0], vec![0.0, 1.0, 1.0]]).unwrap();
        let w = wedge(&Blade::scalar(3, 1.0), &nu).unwrap();
        assert_eq!(w, nu);
    }

    #[test]
    fn repeated_factor_is_zero() {
        let v = vec![1.0, -2.0, 0.5];
        let b = Blade::new(3, vec![v.clone()]).unwrap();
        let w = wedge(&b, &b).unwrap();
        assert!(w.norm().unwrap() < 1e-12);
        assert!(w.is_zero(&Tolerance::default()));
    }

    #[test]
    fn unit_square_has_norm_one() {
        let b = Blade::new(3, vec![e(3, 0), e(3, 1)]).unwrap();
        assert!((b.norm().unwrap() - 1.0).abs() < 1e-15);
        assert!((b.inner(&b) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rectangle_area() {
        let b = Blade::new(2, vec![vec![2.0, 0.0], vec![0.0, 3.0]]).unwrap();
        assert!((b.norm().unwrap() - 6.0).abs() < 1e-14);
    }

    #[test]
    fn distinct_grades_are_orthogonal() {
        let a = Blade::new(3, vec![e(3, 0)]).unwrap();
        let b = Blade::new(3, vec![e(3, 0), e(3, 1)]).unwrap();
        assert_eq!(blade_inner(&a, &b), 0.0);
    }

    #[test]
    fn complex_plane_area() {
        let xi = Complex64::from_polar(1.0, 2.0 * core::f64::consts::PI / 3.0);
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let v1 = vec![one, -xi, zero];
        let v2 = vec![zero, xi, -xi * xi];
        let b = Blade::new(3, vec![v1, v2]).unwrap();
        // Gram det of [[2, −1], [−1, 2]] is 3
        assert!((b.norm().unwrap() - 3f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn contraction_of_higher_grade_is_zero() {
        let nu = Blade::new(3, vec![e(3, 0), e(3, 1)]).unwrap();
        let omega = Blade::new(3, vec![e(3, 2)]).unwrap();
        assert!(contract(&nu, &omega).unwrap().is_zero());
    }

    #[test]
    fn equal_grade_contraction_is_inner_product() {
        let nu = Blade::new(3, vec![e(3, 0), e(3, 2)]).unwrap();
        let c = contract(&nu, &nu).unwrap();
        assert_eq!(c.terms.len(), 1);
        assert_eq!(c.grade, 0);
        assert!((c.terms[0].coeff - 1.0).abs() < 1e-15);
    }

    #[test]
    fn contraction_of_axis_on_plane() {
        // e1 ⌐ (e1 ∧ e2) = e2, e2 ⌐ (e1 ∧ e2) = −e1
        let omega = Blade::new(3, vec![e(3, 0), e(3, 1)]).unwrap();
        let c1 = contract(&Blade::new(3, vec![e(3, 0)]).unwrap(), &omega).unwrap();
        let c2 = contract(&Blade::new(3, vec![e(3, 1)]).unwrap(), &omega).unwrap();
        let e1 = Blade::new(3, vec![e(3, 0)]).unwrap();
        let e2 = Blade::new(3, vec![e(3, 1)]).unwrap();
        assert!((c1.inner_left(&e2) - 1.0).abs() < 1e-15);
        assert!(c1.inner_left(&e1).abs() < 1e-15);
        assert!((c2.inner_left(&e1) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn coordinate_blades_counts_and_orthonormality() {
        let basis: Vec<Vec<f64>> = (0..3).map(|i| e(3, i)).collect();
        let full = coordinate_blades(&basis, 3).unwrap();
        assert_eq!(full.len(), 1);
        assert!((full.blades[0].1.norm().unwrap() - 1.0).abs() < 1e-15);

        let zero = coordinate_blades(&basis, 0).unwrap();
        assert_eq!(zero.len(), 1);
        assert_eq!(zero.blades[0].1.grade(), 0);
        assert_eq!(zero.blades[0].1.coefficient(), 1.0);

        let planes = coordinate_blades(&basis, 2).unwrap();
        assert_eq!(planes.len(), 3);
        for (i, (_, a)) in planes.blades.iter().enumerate() {
            for (j, (_, b)) in planes.blades.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((a.inner(b) - want).abs() < 1e-15);
            }
        }
        let i13 = MultiIndex::new(vec![1, 3], 3).unwrap();
        assert_eq!(planes.get(&i13).unwrap().factors(), &[e(3, 0), e(3, 2)]);
    }

    #[test]
    fn construction_limits() {
        assert!(Blade::<f64>::new(17, vec![]).is_err());
        assert!(Blade::new(3, vec![vec![1.0, 2.0]]).is_err());
    }
}
