use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cluster_core::arith::{poly_det, ExactRational, LaurentPolynomial, Monomial, SparsePolynomial, VariableTable};
use cluster_core::ideals::{member, saturate, IdealBasis, MonomialOrder};
use cluster_core::presets::preset;
use cluster_core::quiver::random_skew_symmetrizable;
use cluster_core::seed::{enumerate_pattern, enumerate_pattern_with, FrontierOrder, Seed};

fn ring() -> Arc<VariableTable> {
    VariableTable::new(["x", "y", "z", "f"], [false, false, false, true]).unwrap().shared()
}

fn poly_strategy(max_terms: usize, max_exp: u32) -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, 4), -5i64..=5), 0..=max_terms)
}

fn build(v: &Arc<VariableTable>, terms: &[(Vec<u32>, i64)]) -> SparsePolynomial {
    let mut out = SparsePolynomial::zero(v);
    for (e, c) in terms {
        out = &out + &SparsePolynomial::monomial(v, Monomial::from_exponents(e.clone()), (*c).into());
    }
    out
}

fn leibniz(m: &[Vec<i64>]) -> i128 {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }
    let n = m.len();
    perms(n)
        .into_iter()
        .map(|p| {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let prod: i128 = (0..n).map(|i| m[i][p[i]] as i128).product();
            if inversions % 2 == 0 { prod } else { -prod }
        })
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_division_recovers_factor(p in poly_strategy(4, 2), q in poly_strategy(3, 2)) {
        let v = ring();
        let (p, q) = (build(&v, &p), build(&v, &q));
        prop_assume!(!q.is_zero());
        prop_assert_eq!((&p * &q).exact_div(&q).unwrap(), p);
    }

    #[test]
    fn laurent_reduction_is_idempotent(p in poly_strategy(4, 2), q in poly_strategy(4, 2), d in prop::collection::vec(0u32..3, 3)) {
        let v = ring();
        let den = Monomial::from_exponents(vec![d[0], d[1], d[2], 0]);
        let a = LaurentPolynomial::new(build(&v, &p), den.clone()).unwrap();
        let b = LaurentPolynomial::new(build(&v, &q), Monomial::variable(4, 0, 1)).unwrap();
        let r = a.clone().reduced();
        prop_assert_eq!(r.clone().reduced(), r.clone());
        prop_assert_eq!(r.checked_add(&b).unwrap(), a.checked_add(&b).unwrap());
        prop_assert_eq!(a.checked_add(&b).unwrap().denominator().exp(3), 0);
    }

    #[test]
    fn determinant_matches_leibniz(n in 1usize..=4, seed in any::<u64>()) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        let v = ring();
        let pm: Vec<Vec<SparsePolynomial>> =
            m.iter().map(|r| r.iter().map(|&x| SparsePolynomial::constant(&v, x.into())).collect()).collect();
        let d = poly_det(&pm).unwrap();
        let expect = ExactRational::from_integer(leibniz(&m) as i64);
        prop_assert_eq!(d.constant_value().unwrap_or_else(ExactRational::zero), expect);
    }

    #[test]
    fn matrix_mutation_is_an_involution(n in 2usize..=5, seed in any::<u64>(), k in 0usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_skew_symmetrizable(&mut rng, n, 3);
        let k = k % n;
        let once = b.mutate(k).unwrap();
        prop_assert!(once.is_skew_symmetrizable());
        prop_assert_eq!(once.symmetrizer(), b.symmetrizer());
        prop_assert_eq!(once.mutate(k).unwrap(), b);
    }

    #[test]
    fn seed_mutation_is_an_involution(n in 2usize..=4, seed in any::<u64>(), walk in prop::collection::vec(0usize..4, 0..4), k in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_skew_symmetrizable(&mut rng, n, 2);
        let labels = (1..=n).map(|i| format!("x{i}")).collect();
        let walk: Vec<usize> = walk.into_iter().map(|k| k % n).collect();
        let s = Seed::initial(b, labels).unwrap().mutate_walk(&walk).unwrap();
        let k = k % n;
        prop_assert_eq!(s.mutate(k).unwrap().mutate(k).unwrap(), s);
    }

    #[test]
    fn normal_form_is_linear(f in poly_strategy(4, 3), g in poly_strategy(4, 3)) {
        let v = ring();
        let gens = vec![
            build(&v, &[(vec![2, 0, 0, 0], 1), (vec![0, 1, 0, 0], -1)]),
            build(&v, &[(vec![1, 1, 0, 0], 1), (vec![0, 0, 1, 1], -1)]),
        ];
        let basis = IdealBasis::new(&v, gens, MonomialOrder::DegRevLex).unwrap();
        let gb = basis.groebner().unwrap();
        let (f, g) = (build(&v, &f), build(&v, &g));
        let lhs = gb.normal_form(&(&f + &g)).unwrap();
        let rhs = gb.normal_form(&(&gb.normal_form(&f).unwrap() + &gb.normal_form(&g).unwrap())).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ideal_lies_in_its_saturation(f in poly_strategy(3, 2), h in poly_strategy(2, 1), e in prop::collection::vec(0u32..2, 4)) {
        let v = ring();
        let gens = vec![
            build(&v, &[(vec![1, 1, 0, 0], 1), (vec![0, 0, 0, 1], -1)]),
            build(&v, &[(vec![0, 1, 1, 0], 1), (vec![1, 0, 0, 0], -1), (vec![0, 0, 0, 0], -1)]),
        ];
        let i = IdealBasis::new(&v, gens.clone(), MonomialOrder::DegRevLex).unwrap();
        let j = saturate(&i, &Monomial::from_exponents(e)).unwrap();
        let inside = &(&build(&v, &f) * &gens[0]) + &(&build(&v, &h) * &gens[1]);
        prop_assert!(member(&inside, &i).unwrap());
        prop_assert!(member(&inside, &j).unwrap());
    }

    #[test]
    fn enumeration_ignores_frontier_order(order in any::<u64>(), which in 0usize..4) {
        let name = ["a:3", "b2", "rectangles:2,5", "wiring:4"][which];
        let s = preset(name).unwrap().seed().unwrap();
        let base = enumerate_pattern(&s, 10_000).unwrap();
        let shuffled = enumerate_pattern_with(&s, 10_000, FrontierOrder::Shuffled(order)).unwrap();
        let set = |p: &cluster_core::PatternSummary<LaurentPolynomial>| {
            let mut v: Vec<String> = p.cluster_variable_values().map(|x| x.to_string()).collect();
            v.sort();
            v
        };
        prop_assert!(base.closed && shuffled.closed);
        prop_assert_eq!(set(&base), set(&shuffled));
        prop_assert_eq!(base.clusters.len(), shuffled.clusters.len());
    }
}

/// Every recorded exchange relation of a closed finite-type pattern holds in
/// the initial variables.
#[test]
fn recorded_relations_hold_in_finite_type() {
    for name in ["a:4", "b2", "rectangles:2,6", "rectangles:3,6", "wiring:4", "quadric:4"] {
        let s = preset(name).unwrap().seed().unwrap();
        let p = enumerate_pattern(&s, 10_000).unwrap();
        assert!(p.closed, "{name}");
        let mono = |m: &[(usize, u32)]| {
            m.iter().fold(LaurentPolynomial::one(s.cluster()[0].vars()), |acc, &(i, e)| {
                acc.checked_mul(&p.variables[i].pow(e)).unwrap()
            })
        };
        for r in &p.relations {
            let zz = p.variables[r.z].checked_mul(&p.variables[r.z_prime]).unwrap();
            let rhs = mono(&r.m1).checked_add(&mono(&r.m2)).unwrap();
            assert_eq!(zz, rhs, "{name}");
        }
    }
}

/// Bound presets enumerate through genuine polynomials.
#[test]
fn bound_presets_stay_polynomial() {
    for name in ["rectangles:2,6", "rectangles:3,6", "wiring:4", "two_by_n:3:2,2", "mat:2,5"] {
        let ms = preset(name).unwrap().model.unwrap();
        let p = enumerate_pattern(&ms.bound_seed().unwrap(), 10_000).unwrap();
        assert!(p.closed, "{name}");
    }
}
