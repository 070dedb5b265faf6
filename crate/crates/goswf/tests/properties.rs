//! Randomized property checks over the numerical foundations.

use goswf::eigen::{sym_eig, SymmetricMatrix};
use goswf::jacobi::{clenshaw_series, eval_normalized, WeightParams};
use goswf::quadrature::gauss_jacobi;
use goswf::special::kummer_m;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn eigensolver_reconstructs_random_symmetric(
        seed in any::<u64>(),
        dim in 2usize..10,
    ) {
        // simple deterministic generator from the seed
        let mut state = seed | 1;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
        };
        let m = SymmetricMatrix::from_fn(dim, |i, j| if i <= j { next() } else { 0.0 });
        let dec = sym_eig(&m).unwrap();
        // residual || A v - lambda v || per pair
        for (k, &lam) in dec.values.iter().enumerate() {
            let v = &dec.vectors[k];
            for i in 0..dim {
                let av: f64 = (0..dim).map(|j| m.get(i, j) * v[j]).sum();
                prop_assert!((av - lam * v[i]).abs() < 1e-11 * (1.0 + m.frobenius_norm()));
            }
        }
        // eigenvalues ascending, vectors orthonormal
        prop_assert!(dec.values.windows(2).all(|w| w[0] <= w[1]));
        for a in 0..dim {
            for b in 0..=a {
                let dot: f64 = (0..dim).map(|i| dec.vectors[a][i] * dec.vectors[b][i]).sum();
                let expect = if a == b { 1.0 } else { 0.0 };
                prop_assert!((dot - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn quadrature_integrates_polynomials_exactly(
        alpha in 0.0..4.0f64,
        beta in 0.0..4.0f64,
        n in 3usize..12,
        degree_frac in 0.0..1.0f64,
    ) {
        let p = WeightParams::new(alpha, beta).unwrap();
        let rule = gauss_jacobi(&p, n).unwrap();
        let degree = ((2 * n - 1) as f64 * degree_frac) as usize;
        // orthogonality oracle: integral of **P**_degree * omega is 0 for
        // degree >= 1 and sqrt(mass) for degree 0
        let got = rule.integrate(|x| eval_normalized(&p, degree, x).unwrap());
        let expect = if degree == 0 { p.total_mass().sqrt() } else { 0.0 };
        prop_assert!((got - expect).abs() < 1e-11 * (1.0 + expect.abs()));
    }

    #[test]
    fn kummer_transformation_random(
        a in 0.1..4.0f64,
        b_gap in 0.2..4.0f64,
        z in 0.01..8.0f64,
    ) {
        let b = a + b_gap;
        let lhs = kummer_m(a, b, z).unwrap() * (-z).exp();
        let rhs = kummer_m(b - a, b, -z).unwrap();
        prop_assert!(((lhs - rhs) / rhs).abs() < 1e-10);
    }

    #[test]
    fn clenshaw_matches_direct_sum_random(
        alpha in 0.0..3.0f64,
        beta in 0.0..3.0f64,
        coeffs in prop::collection::vec(-2.0..2.0f64, 1..12),
        x in -1.0..1.0f64,
    ) {
        let p = WeightParams::new(alpha, beta).unwrap();
        let direct: f64 = coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| c * eval_normalized(&p, k, x).unwrap())
            .sum();
        let clen = clenshaw_series::<f64>(&p, &coeffs, x, p.total_mass());
        prop_assert!((direct - clen).abs() < 1e-11 * (1.0 + direct.abs()));
    }
}
