mod common;

use std::sync::Arc;

use common::{brute_force_kernel_count, laplace_det, mat_mul, random_unimodular, to_rows};
use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stabilitylab::fieldrank::{field_report, unit_inverse, NumberField, UnitCandidate};
use stabilitylab::grouptrace::{
    hs_distance, induce_trace, induce_trace_with, is_trace, random_chain, random_trace, random_unitary, AlmostHom,
    FiniteGroup, Subgroup, Transversal, hom_defect,
};
use stabilitylab::intlinalg::{char_poly, det_exact, mat_pow, smith_normal_form};
use stabilitylab::polyclass::{classify_automorphism, factor_over_integers};
use stabilitylab::shiftdyn::{empirical_measure, folner_box, periodicize, Configuration, Pattern, WindowShape};
use stabilitylab::tordyn::fixed_subgroup;
use stabilitylab::{IntMatrix, IntPoly};

fn matrix_strategy(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim).prop_flat_map(move |n| {
        proptest::collection::vec(-bound..=bound, n * n).prop_map(move |e| {
            IntMatrix::new(n, n, e.into_iter().map(BigInt::from).collect()).unwrap()
        })
    })
}

fn poly_strategy() -> impl Strategy<Value = IntPoly> {
    proptest::collection::vec(-4i64..=4, 2..=7)
        .prop_filter("nonconstant", |c| c.iter().skip(1).any(|&x| x != 0))
        .prop_map(|c| IntPoly::from_i64(&c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_decomposition_is_valid(a in matrix_strategy(5, 9)) {
        let s = smith_normal_form(&a).unwrap();
        let (u, d, v) = (to_rows(&s.u), to_rows(&s.d), to_rows(&s.v));
        prop_assert_eq!(mat_mul(&mat_mul(&u, &to_rows(&a)), &v), d.clone());
        prop_assert!(laplace_det(&u).abs().is_one());
        prop_assert!(laplace_det(&v).abs().is_one());
        let f = s.invariant_factors();
        for w in f.windows(2) {
            prop_assert!(!w[0].is_negative());
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])));
        }
        let product: BigInt = f.iter().product();
        prop_assert_eq!(product, laplace_det(&to_rows(&a)).abs());
        let g = a.entries().iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        prop_assert_eq!(&f[0], &g);
    }

    #[test]
    fn cayley_hamilton(a in matrix_strategy(5, 9)) {
        let p = char_poly(&a).unwrap();
        prop_assert!(p.is_monic());
        prop_assert!(p.eval_matrix(&a).unwrap().is_zero());
        let n = a.rows();
        let trace: BigInt = (0..n).map(|i| a.get(i, i).clone()).sum();
        prop_assert_eq!(-p.coeff(n - 1), trace);
        let det = laplace_det(&to_rows(&a));
        prop_assert_eq!(if n % 2 == 0 { p.coeff(0) } else { -p.coeff(0) }, det.clone());
        prop_assert_eq!(det_exact(&a).unwrap(), det);
    }

    #[test]
    fn factorization_expands_back(p in poly_strategy()) {
        let fl = factor_over_integers(&p).unwrap();
        prop_assert_eq!(fl.expand(), p.clone());
        for (f, _) in &fl.factors {
            prop_assert!(f.leading().is_positive());
            prop_assert!(f.content().is_one());
        }
    }

    #[test]
    fn spectral_flags_are_consistent(seed in any::<u64>(), k in 2usize..=4) {
        let rows = random_unimodular(k, 6, seed);
        let a = IntMatrix::from_rows(&rows).unwrap();
        let c = classify_automorphism(&a).unwrap();
        prop_assert!(c.is_consistent());
        if let Some(order) = c.order {
            prop_assert!(mat_pow(&a, order).unwrap().is_identity());
        }
        // Ergodic iff no A^n - I (n up to 6) is singular, an independent
        // check for the cyclotomic factors of degree at most 2.
        if k == 2 {
            let singular = (1..=6).any(|n| {
                let b = mat_pow(&a, n).unwrap().checked_sub(&IntMatrix::identity(2)).unwrap();
                laplace_det(&to_rows(&b)).is_zero()
            });
            prop_assert_eq!(c.is_ergodic, !singular);
        }
    }

    #[test]
    fn periodic_count_matches_determinant(seed in any::<u64>(), n in 1u64..=3) {
        let rows = random_unimodular(2, 5, seed);
        let a = IntMatrix::from_rows(&rows).unwrap();
        let b = mat_pow(&a, n).unwrap().checked_sub(&IntMatrix::identity(2)).unwrap();
        let det = laplace_det(&to_rows(&b)).abs();
        prop_assume!(!det.is_zero() && det <= BigInt::from(400));
        let fs = fixed_subgroup(&a, n, false).unwrap();
        prop_assert_eq!(&fs.order, &det);
        let small: Vec<Vec<i64>> = to_rows(&b).iter().map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect()).collect();
        let d = i64::try_from(&det).unwrap();
        prop_assert_eq!(BigInt::from(brute_force_kernel_count(&small, d)), det);
    }

    #[test]
    fn induced_traces_are_traces(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (phi, _middle, top) = random_chain(&mut rng).unwrap();
        let ind = induce_trace(&phi, &top).unwrap();
        prop_assert!(is_trace(&ind).unwrap().ok());
        let other = induce_trace_with(&phi, &top, Transversal::Seeded(seed ^ 1)).unwrap();
        prop_assert!(ind.max_difference(&other).unwrap() <= 1e-12);
    }

    #[test]
    fn hs_distance_is_bi_invariant(seed in any::<u64>(), n in 2usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [u, v, w, x] = std::array::from_fn(|_| random_unitary(n, &mut rng));
        let d = hs_distance(&u, &v).unwrap();
        prop_assert!((hs_distance(&(&w * &u * &x), &(&w * &v * &x)).unwrap() - d).abs() <= 1e-12);
        // Oracle: the normalized Frobenius norm computed by nalgebra.
        let diff: DMatrix<_> = &u - &v;
        prop_assert!((diff.norm() / (n as f64).sqrt() - d).abs() <= 1e-12);
    }

    #[test]
    fn unit_inverse_closes(c0 in -3i64..=3, c1 in -3i64..=3, e in 1u64..=4) {
        let f = IntPoly::from_i64(&[-1, -3, 0, 1]);
        let field = NumberField::new(f).unwrap();
        let base = IntPoly::from_i64(&[c0, c1, 1]);
        let u = field.pow(&base, e);
        let cand = UnitCandidate::new(&field, &u).unwrap();
        if cand.is_unit() {
            let inv = unit_inverse(&field, &cand).unwrap();
            prop_assert!(field.is_one(&field.mul(&cand.element, &inv)));
        }
        prop_assert!(cand.char_poly.eval_matrix(&cand.mult_matrix).unwrap().is_zero());
    }

    #[test]
    fn periodicization_is_periodic(seed in any::<u64>(), len in 1u64..=12, period in 1u64..=9, g in -40i64..40) {
        let x = Pattern::random(3, vec![len, 2], seed).unwrap();
        let xn = periodicize(&x, period).unwrap();
        let p = period as i64;
        prop_assert_eq!(xn.at(&[g, 1]), xn.at(&[g + p, 1 - p]));
        prop_assert_eq!(xn.at(&[g.rem_euclid(p), 1 % p]), x.at(&[g.rem_euclid(p), 1 % p]));
        let mu = empirical_measure(&xn, &folner_box(2, period).unwrap(), &WindowShape(vec![2, 1])).unwrap();
        prop_assert!(mu.total().is_one());
    }
}

#[test]
fn field_reports_are_consistent() {
    for c in [[-2, 0, 1, 0, 0], [-1, -3, 0, 1, 0], [-2, 0, 0, 1, 0], [-1, -1, 0, 0, 1], [1, 0, 0, 0, 1], [1, 1, 1, 1, 1]] {
        let f = IntPoly::from_i64(&c);
        let r = field_report(&f).unwrap();
        assert!(r.is_consistent(), "{r:?}");
        // Oracle: sign changes of f on a fine grid inside the Cauchy bound.
        let eval = |x: f64| c.iter().rev().fold(0.0, |acc, &a| acc * x + a as f64);
        let bound = 1.0 + c.iter().map(|a| a.abs()).max().unwrap() as f64;
        let steps = (2.0 * bound * 4096.0) as i64;
        let grid: Vec<f64> = (0..=steps).map(|i| eval(-bound + i as f64 / 4096.0)).collect();
        let real = grid.windows(2).filter(|w| w[0].signum() != w[1].signum() && w[1] != 0.0).count();
        assert_eq!(r.r1, real, "{f}");
    }
}

#[test]
fn regular_representation_is_a_homomorphism() {
    for name in ["S3", "D4", "Q8", "C2xA4"] {
        let g = Arc::new(FiniteGroup::preset(name).unwrap());
        let pi = AlmostHom::regular(g.clone());
        assert!(hom_defect(&pi) <= 1e-12);
        let h = Subgroup::whole(g);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let t = random_trace(&h, 3, &mut rng).unwrap();
        assert!(is_trace(&t).unwrap().ok());
    }
}
