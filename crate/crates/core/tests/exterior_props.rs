mod common;

use grassmann_core::exterior::{blade_inner, contract, coordinate_blades, wedge, Blade};
use grassmann_core::multiindex::multi_indices;
use grassmann_core::sampling::Sampler;
use grassmann_core::scalar::Scalar;
use grassmann_core::subspace::{is_partially_orthogonal, project, Subspace};
use grassmann_core::Complex64;
use proptest::prelude::*;

use common::tol;

fn unit<T: Scalar>(s: &mut Sampler, n: usize, p: usize) -> Blade<T> {
    s.blade::<T>(n, p).unwrap().normalized().unwrap()
}

fn adjoint_identity<T: Scalar>(seed: u64, n: usize) {
    let mut s = Sampler::new(seed);
    let q = s.int(0, n.min(5));
    let p = s.int(0, q);
    let nu = unit::<T>(&mut s, n, p);
    let omega = unit::<T>(&mut s, n, q);
    let mu = unit::<T>(&mut s, n, q - p);
    let lhs = contract(&nu, &omega).unwrap().inner_left(&mu);
    let rhs = blade_inner(&wedge(&nu, &mu).unwrap(), &omega);
    assert!(
        (lhs - rhs).abs() <= 1e-10,
        "n={n} p={p} q={q}: {lhs:?} vs {rhs:?}"
    );
}

fn coordinate_decomposition<T: Scalar>(seed: u64, n: usize) {
    let mut s = Sampler::new(seed);
    let q = s.int(1, n);
    let omega = unit::<T>(&mut s, n, q);
    let factors = omega.factors().to_vec();
    for p in 0..=q {
        for index in multi_indices(p, q) {
            let pick = |idx: Vec<usize>| {
                Blade::new(n, idx.iter().map(|&k| factors[k].clone()).collect()).unwrap()
            };
            let part = pick(index.zero_based());
            let rest = pick(index.complement().zero_based());
            let sign = T::from_real(f64::from(index.sigma()));
            let rebuilt = wedge(&part, &rest)
                .unwrap()
                .scaled(sign * omega.coefficient());
            let got = blade_inner(&omega, &rebuilt);
            assert!((got - T::one()).abs() <= 1e-9, "I = {index}: {got:?}");
        }
    }
}

/// `V ⊥̸ W` iff `ν` is orthogonal to every coordinate `p`-blade of a basis
/// of `W`. Half of the instances force a vector of `V` into `W⊥`.
fn partial_orthogonality<T: Scalar>(seed: u64, n: usize) {
    let mut s = Sampler::new(seed);
    let q = s.int(1, n - 1);
    let p = s.int(1, q);
    let w = s.subspace::<T>(n, q).unwrap();
    let forced = seed % 2 == 0;
    let mut basis_v: Vec<Vec<T>> = (0..p).map(|_| s.vector(n)).collect();
    if forced {
        let x = s.vector::<T>(n);
        let px = project(&x, &w).unwrap();
        basis_v[0] = x.iter().zip(&px).map(|(&a, &b)| a - b).collect();
    }
    let v = Subspace::from_independent(n, &basis_v, &tol()).unwrap();
    let nu = Blade::new(n, basis_v).unwrap().normalized().unwrap();
    let coords = coordinate_blades(&s.basis_of(&w), p).unwrap();
    let biggest = coords
        .blades
        .iter()
        .map(|(_, b)| blade_inner(&nu, &b.normalized().unwrap()).abs())
        .fold(0.0, f64::max);
    let po = is_partially_orthogonal(&v, &w, &tol()).unwrap();
    assert_eq!(po, forced);
    if po {
        assert!(biggest <= 1e-10, "{biggest:e}");
    } else {
        assert!(biggest > 1e-6, "{biggest:e}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn contraction_is_adjoint_to_wedge(seed in any::<u64>(), n in 1usize..=6) {
        adjoint_identity::<f64>(seed, n);
        adjoint_identity::<Complex64>(seed, n);
    }

    #[test]
    fn coordinate_decomposition_reassembles(seed in any::<u64>(), n in 1usize..=6) {
        coordinate_decomposition::<f64>(seed, n);
        coordinate_decomposition::<Complex64>(seed, n);
    }

    #[test]
    fn partial_orthogonality_matches_coordinate_blades(seed in any::<u64>(), n in 2usize..=6) {
        partial_orthogonality::<f64>(seed, n);
        partial_orthogonality::<Complex64>(seed, n);
    }

    #[test]
    fn wedge_norm_is_submultiplicative(seed in any::<u64>(), n in 1usize..=6) {
        let mut s = Sampler::new(seed);
        let (p, q) = (s.int(0, n), s.int(0, n));
        let a = s.blade::<Complex64>(n, p).unwrap();
        let b = s.blade::<Complex64>(n, q).unwrap();
        let lhs = wedge(&a, &b).unwrap().norm().unwrap();
        let rhs = a.norm().unwrap() * b.norm().unwrap();
        prop_assert!(lhs <= rhs * (1.0 + 1e-12));
    }

    #[test]
    fn inner_product_is_conjugate_symmetric(seed in any::<u64>(), n in 1usize..=6) {
        let mut s = Sampler::new(seed);
        let p = s.int(0, n);
        let a = s.blade::<Complex64>(n, p).unwrap();
        let b = s.blade::<Complex64>(n, p).unwrap();
        let k = Complex64::new(0.3, -1.7);
        prop_assert!((a.inner(&b) - b.inner(&a).conj()).norm() <= 1e-10 * a.norm().unwrap() * b.norm().unwrap());
        // conjugate-linear in the first slot
        prop_assert!((a.scaled(k).inner(&b) - k.conj() * a.inner(&b)).norm() <= 1e-9 * (1.0 + a.inner(&b).norm()));
    }
}
