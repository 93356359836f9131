mod common;

use core::f64::consts::FRAC_PI_2;

use grassmann_core::angles::{
    complementary_angle, complementary_angle_formula, grassmann_angle, grassmann_angle_any_dim,
    grassmann_angle_equal_dim, grassmann_angle_principal, oriented_grassmann_cos,
};
use grassmann_core::linalg::volume;
use grassmann_core::sampling::Sampler;
use grassmann_core::scalar::{norm, Scalar};
use grassmann_core::subspace::{complement, project, Subspace};
use grassmann_core::{Complex64, Error, Matrix};
use proptest::prelude::*;

use common::{random_pair, span_of, tol};

fn dims(s: &mut Sampler, n: usize) -> (usize, usize) {
    (s.int(0, n), s.int(0, n))
}

fn symmetric_for_equal_dims<T: Scalar>(seed: u64, n: usize) {
    let mut s = Sampler::new(seed);
    let p = s.int(1, n);
    let v = s.subspace::<T>(n, p).unwrap();
    let w = s.subspace::<T>(n, p).unwrap();
    let a = grassmann_angle(&v, &w).unwrap().value;
    let b = grassmann_angle(&w, &v).unwrap().value;
    assert!((a - b).abs() <= 1e-9, "{a} vs {b}");
}

fn unitary_invariance<T: Scalar>(seed: u64, n: usize) {
    let mut s = Sampler::new(seed);
    let (p, q) = dims(&mut s, n);
    let v = s.subspace::<T>(n, p).unwrap();
    let w = s.subspace::<T>(n, q).unwrap();
    let u = s.unitary::<T>(n);
    let before = grassmann_angle(&v, &w).unwrap().value;
    let after = grassmann_angle(&v.transformed(&u).unwrap(), &w.transformed(&u).unwrap())
        .unwrap()
        .value;
    assert!((before - after).abs() <= 1e-9, "{before} vs {after}");
}

fn complement_swap<T: Scalar>(seed: u64, n: usize) {
    let mut s = Sampler::new(seed);
    let (p, q) = dims(&mut s, n);
    let v = s.subspace::<T>(n, p).unwrap();
    let w = s.subspace::<T>(n, q).unwrap();
    let a = grassmann_angle(&v, &w).unwrap().value;
    let b = grassmann_angle(&complement(&w), &complement(&v))
        .unwrap()
        .value;
    assert!((a - b).abs() <= 1e-8, "p={p} q={q}: {a} vs {b}");
}

/// `V = U ⊕ V'`, `W = U ⊕ W'` with `V', W' ⊥ U`.
fn common_part_drops_out<T: Scalar>(seed: u64, n: usize) {
    let mut s = Sampler::new(seed);
    let k = s.int(1, n - 1);
    let q_frame = s.unitary::<T>(n);
    let shared: Vec<usize> = (0..k).collect();
    let rest: Vec<usize> = (k..n).collect();
    let u = span_of(&q_frame, &shared);
    let outside = span_of(&q_frame, &rest);
    let (p1, q1) = (s.int(0, n - k), s.int(0, n - k));
    let v1 = s.subspace_of(&outside, p1).unwrap();
    let w1 = s.subspace_of(&outside, q1).unwrap();
    let v = u.sum(&v1, &tol()).unwrap();
    let w = u.sum(&w1, &tol()).unwrap();
    let whole = grassmann_angle(&v, &w).unwrap().value;
    let reduced = grassmann_angle(&v1, &w1).unwrap().value;
    assert!((whole - reduced).abs() <= 1e-8, "{whole} vs {reduced}");
}

fn line_complementary<T: Scalar>(seed: u64, n: usize) {
    let mut s = Sampler::new(seed);
    let v = s.subspace::<T>(n, 1).unwrap();
    let q = s.int(0, n);
    let w = s.subspace::<T>(n, q).unwrap();
    let theta = grassmann_angle(&v, &w).unwrap().value;
    let perp = complementary_angle(&v, &w).unwrap().value;
    assert!(
        (perp - (FRAC_PI_2 - theta)).abs() <= 1e-9,
        "{perp} vs π/2 - {theta}"
    );
}

fn line_projection_factor<T: Scalar>(seed: u64, n: usize) {
    let mut s = Sampler::new(seed);
    let q = s.int(0, n);
    let w = s.subspace::<T>(n, q).unwrap();
    let x = s.vector::<T>(n);
    let line = Subspace::from_basis(n, &[x.clone()], &tol()).unwrap();
    let cos = grassmann_angle(&line, &w).unwrap().cos;
    let px = project(&x, &w).unwrap();
    assert!((norm(&px) - norm(&x) * cos).abs() <= 1e-9 * norm(&x));
}

/// Real coordinates of `v, iv` (or just `v` over ℝ).
fn realified<T: Scalar>(v: &[T]) -> Vec<Vec<f64>> {
    let re: Vec<f64> = v.iter().flat_map(|z| [z.re(), z.im()]).collect();
    match T::FIELD {
        grassmann_core::Field::Real => vec![v.iter().map(|z| z.re()).collect()],
        grassmann_core::Field::Complex => {
            let im: Vec<f64> = v.iter().flat_map(|z| [-z.im(), z.re()]).collect();
            vec![re, im]
        }
    }
}

/// Parallelotope volumes in the underlying real space shrink by `cos Θ`
/// (by `cos² Θ` over ℂ, where the dimension doubles).
fn parallelotope_factor<T: Scalar>(seed: u64, n: usize) {
    let mut s = Sampler::new(seed);
    let q = s.int(1, n);
    let p = s.int(1, q);
    let (v, basis) = random_pair::<T>(&mut s, n, p);
    let w = s.subspace::<T>(n, q).unwrap();
    let cos = grassmann_angle(&v, &w).unwrap().cos;
    let factor = match T::FIELD {
        grassmann_core::Field::Real => cos,
        grassmann_core::Field::Complex => cos * cos,
    };
    let solid: Vec<Vec<f64>> = basis.iter().flat_map(|b| realified(b)).collect();
    let shadow: Vec<Vec<f64>> = basis
        .iter()
        .flat_map(|b| realified(&project(b, &w).unwrap()))
        .collect();
    let (vs, vp) = (volume(&solid), volume(&shadow));
    assert!(
        (vp - vs * factor).abs() <= 1e-9 * vs.max(1.0),
        "{vp} vs {vs}·{factor}"
    );
}

fn methods_agree<T: Scalar>(seed: u64, n: usize) {
    let mut s = Sampler::new(seed);
    let (p, q) = (s.int(1, n), s.int(1, n));
    let (v, bv) = random_pair::<T>(&mut s, n, p);
    let (w, bw) = random_pair::<T>(&mut s, n, q);
    let proj = grassmann_angle(&v, &w).unwrap().cos;
    let mut others = vec![
        grassmann_angle_principal(&v, &w).unwrap().cos,
        grassmann_angle_any_dim(&bv, &bw).unwrap().cos,
    ];
    if p == q {
        others.push(grassmann_angle_equal_dim(&bv, &bw).unwrap().cos);
    }
    for c in others {
        assert!((proj - c).abs() <= 1e-8, "p={p} q={q}: {proj} vs {c}");
    }
}

fn complementary_symmetric<T: Scalar>(seed: u64, n: usize) {
    let mut s = Sampler::new(seed);
    let (p, q) = (s.int(1, n), s.int(1, n));
    let (_, bv) = random_pair::<T>(&mut s, n, p);
    let (_, bw) = random_pair::<T>(&mut s, n, q);
    let a = complementary_angle_formula(&bv, &bw).unwrap().value;
    let b = complementary_angle_formula(&bw, &bv).unwrap().value;
    assert!((a - b).abs() <= 1e-9, "{a} vs {b}");
}

fn oriented_modulus<T: Scalar>(seed: u64, n: usize) {
    let mut s = Sampler::new(seed);
    let p = s.int(1, n);
    let (v, bv) = random_pair::<T>(&mut s, n, p);
    let (w, bw) = random_pair::<T>(&mut s, n, p);
    let nu = grassmann_core::Blade::new(n, bv).unwrap();
    let omega = grassmann_core::Blade::new(n, bw).unwrap();
    let c = oriented_grassmann_cos(&nu, &omega).unwrap();
    let cos = grassmann_angle(&v, &w).unwrap().cos;
    assert!((c.abs() - cos).abs() <= 1e-10, "{} vs {cos}", c.abs());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn equal_dimensions_give_a_symmetric_angle(seed in any::<u64>(), n in 1usize..=8) {
        symmetric_for_equal_dims::<f64>(seed, n);
        symmetric_for_equal_dims::<Complex64>(seed, n);
    }

    #[test]
    fn angle_is_unitarily_invariant(seed in any::<u64>(), n in 1usize..=8) {
        unitary_invariance::<f64>(seed, n);
        unitary_invariance::<Complex64>(seed, n);
    }

    #[test]
    fn angle_equals_that_of_swapped_complements(seed in any::<u64>(), n in 1usize..=8) {
        complement_swap::<f64>(seed, n);
        complement_swap::<Complex64>(seed, n);
    }

    #[test]
    fn common_part_does_not_change_the_angle(seed in any::<u64>(), n in 2usize..=8) {
        common_part_drops_out::<f64>(seed, n);
        common_part_drops_out::<Complex64>(seed, n);
    }

    #[test]
    fn line_complementary_angle_is_the_complement(seed in any::<u64>(), n in 1usize..=8) {
        line_complementary::<f64>(seed, n);
        line_complementary::<Complex64>(seed, n);
    }

    #[test]
    fn projection_scales_lines_by_cos(seed in any::<u64>(), n in 1usize..=8) {
        line_projection_factor::<f64>(seed, n);
        line_projection_factor::<Complex64>(seed, n);
    }

    #[test]
    fn projection_scales_volumes(seed in any::<u64>(), n in 1usize..=6) {
        parallelotope_factor::<f64>(seed, n);
        parallelotope_factor::<Complex64>(seed, n);
    }

    #[test]
    fn all_routes_agree(seed in any::<u64>(), n in 1usize..=8) {
        methods_agree::<f64>(seed, n);
        methods_agree::<Complex64>(seed, n);
    }

    #[test]
    fn complementary_formula_is_symmetric(seed in any::<u64>(), n in 1usize..=8) {
        complementary_symmetric::<f64>(seed, n);
        complementary_symmetric::<Complex64>(seed, n);
    }

    #[test]
    fn oriented_cosine_has_the_unoriented_modulus(seed in any::<u64>(), n in 1usize..=8) {
        oriented_modulus::<f64>(seed, n);
        oriented_modulus::<Complex64>(seed, n);
    }
}

#[test]
fn degenerate_bases_are_rejected() {
    let v = vec![vec![1.0, 0.0, 0.0], vec![2.0, 0.0, 0.0]];
    let w = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]];
    assert!(matches!(
        grassmann_angle_equal_dim(&v, &w),
        Err(Error::DegenerateBasis(_))
    ));
    assert!(matches!(
        grassmann_angle_any_dim(&v, &w),
        Err(Error::DegenerateBasis(_))
    ));
    assert!(matches!(
        complementary_angle_formula(&w, &v),
        Err(Error::DegenerateBasis(_))
    ));
    let nearly = vec![vec![1.0, 0.0, 0.0], vec![1.0, 1e-9, 0.0]];
    assert!(matches!(
        grassmann_angle_any_dim(&nearly, &w),
        Err(Error::DegenerateBasis(_))
    ));
}

#[test]
fn mismatched_ambients_are_rejected() {
    let v = Subspace::<f64>::full(2);
    let w = Subspace::<f64>::full(3);
    assert!(matches!(grassmann_angle(&v, &w), Err(Error::Dimension(_))));
    assert!(matches!(
        complementary_angle(&v, &w),
        Err(Error::Dimension(_))
    ));
}

#[test]
fn large_ambient_falls_back_to_determinants() {
    let mut s = Sampler::new(77);
    for (p, q) in [(3, 5), (4, 4), (6, 2), (1, 20)] {
        let (v, bv) = random_pair::<Complex64>(&mut s, 20, p);
        let (w, bw) = random_pair::<Complex64>(&mut s, 20, q);
        let r = grassmann_angle(&v, &w).unwrap();
        let check = grassmann_angle_any_dim(&bv, &bw).unwrap();
        assert!((r.cos - check.cos).abs() <= 1e-8);
        assert!(r.residual <= 1e-8);
    }
}

#[test]
fn zero_and_oversized_subspaces() {
    let mut s = Sampler::new(5);
    let w = s.subspace::<f64>(4, 2).unwrap();
    let big = s.subspace::<f64>(4, 3).unwrap();
    assert_eq!(grassmann_angle(&Subspace::zero(4), &w).unwrap().value, 0.0);
    assert_eq!(grassmann_angle(&big, &w).unwrap().value, FRAC_PI_2);
    assert_eq!(
        grassmann_angle(&w, &Subspace::zero(4)).unwrap().value,
        FRAC_PI_2
    );
}

#[test]
fn orthonormal_frame_matrix_round_trip() {
    let mut s = Sampler::new(6);
    let u = s.unitary::<Complex64>(4);
    let id: Matrix<Complex64> = u.adjoint_mul(&u);
    assert!((&id - &Matrix::identity(4)).max_abs() <= 1e-12);
}

#[test]
fn complementary_routes_agree() {
    use grassmann_core::angles::complementary_angle_principal;
    let mut s = Sampler::new(8);
    for n in 1..=6 {
        for _ in 0..20 {
            let (p, q) = (s.int(0, n), s.int(0, n));
            let v = s.subspace::<Complex64>(n, p).unwrap();
            let w = s.subspace::<Complex64>(n, q).unwrap();
            let a = complementary_angle(&v, &w).unwrap();
            let b = complementary_angle_principal(&v, &w).unwrap();
            assert!(
                (a.value - b.value).abs() <= 1e-9,
                "n={n} p={p} q={q}: {} vs {}",
                a.value,
                b.value
            );
        }
    }
}
