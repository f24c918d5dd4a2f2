use num_traits::Zero;
use proptest::prelude::*;

use ranklab_core::census::{grassmann_census, record_is_explained, veronese_census, CensusQuery};
use ranklab_core::flag::{classify_and_decompose, tangent_element, FlagPoint, KChoice, TangentParams};
use ranklab_core::matrix::{rank_exact, rank_modp, DenseMatrix};
use ranklab_core::random;
use ranklab_core::scalar::{int, ratio, Scalar};
use ranklab_core::secant::{
    arithmetic_generic_rank, expected_dim, generic_rank, terracini_dim, ExceptionTable, RankMode,
};
use ranklab_core::varieties::{matrix3, square3};
use ranklab_core::witness::{random_point_off, rank_witness, restrict_to_line, HypersurfaceModel};
use ranklab_core::{eval_poly, VarietyFamily};

const MODELS: [HypersurfaceModel; 3] = [
    HypersurfaceModel::Flag,
    HypersurfaceModel::Klein,
    HypersurfaceModel::Sym2,
];

fn small_families() -> Vec<VarietyFamily> {
    vec![
        VarietyFamily::veronese(1, 3).unwrap(),
        VarietyFamily::veronese(2, 2).unwrap(),
        VarietyFamily::veronese(2, 3).unwrap(),
        VarietyFamily::veronese(3, 2).unwrap(),
        VarietyFamily::grassmann(2, 5).unwrap(),
        VarietyFamily::grassmann(3, 6).unwrap(),
        VarietyFamily::segre(vec![2, 2, 2]).unwrap(),
        VarietyFamily::segre(vec![2, 3, 3]).unwrap(),
        VarietyFamily::flag_adjoint3(),
    ]
}

#[test]
fn terracini_monotone_and_bounded() {
    for v in small_families() {
        let big_n = v.ambient().n;
        let mut prev = None;
        for s in 1.. {
            let d = terracini_dim(&v, s, 3, 50, 0, RankMode::Modular).unwrap();
            assert!(d <= expected_dim(&v, s), "{v} s={s}");
            if let Some(p) = prev {
                assert!(d > p || p == big_n, "{v} s={s}: {p} -> {d}");
            }
            prev = Some(d);
            if d == big_n {
                break;
            }
        }
    }
}

#[test]
fn terracini_reproducible_and_mode_independent() {
    for v in small_families() {
        for s in 1..=3 {
            let a = terracini_dim(&v, s, 2, 50, 11, RankMode::Exact).unwrap();
            assert_eq!(a, terracini_dim(&v, s, 2, 50, 11, RankMode::Exact).unwrap());
            assert_eq!(
                a,
                terracini_dim(&v, s, 2, 50, 11, RankMode::Modular).unwrap(),
                "{v} s={s}"
            );
        }
    }
}

#[test]
fn generic_rank_is_arithmetic_away_from_exceptions() {
    let table = ExceptionTable::builtin();
    for n in 1..=4 {
        for d in 3..=6 {
            let v = VarietyFamily::veronese(n, d).unwrap();
            let g = arithmetic_generic_rank(&v);
            if table.lookup(&v, g).is_none() {
                assert_eq!(generic_rank(&v, &table).unwrap(), g, "{v}");
            }
        }
    }
    for n in 4..=12 {
        for k in 2..=n / 2 {
            let v = VarietyFamily::grassmann(k, n).unwrap();
            let g = arithmetic_generic_rank(&v);
            if table.lookup(&v, g).is_none() {
                assert_eq!(generic_rank(&v, &table).unwrap(), g, "{v}");
            }
        }
    }
}

#[test]
fn census_records_are_explained() {
    let table = ExceptionTable::builtin();
    let q = CensusQuery::default();
    for r in veronese_census(5, 6, &table, &q).unwrap() {
        assert!(r.record.hypersurface && record_is_explained(&r), "{:?}", r);
    }
    for r in grassmann_census(60, &table, &q).unwrap() {
        assert!(r.record.hypersurface && record_is_explained(&r), "{:?}", r);
    }
}

fn tangent_params() -> impl Strategy<Value = TangentParams> {
    // small numerators with frequent zeros to reach the zero-pattern cases
    let entry = prop_oneof![
        2 => Just((0i64, 1i64)),
        5 => (-6i64..=6, 1i64..=4),
    ];
    [entry.clone(), entry.clone(), entry.clone(), entry]
        .prop_filter("not all zero", |e| e.iter().any(|(p, _)| *p != 0))
        .prop_map(|e| e.map(|(p, q)| ratio(p, q)))
}

fn is_flag_point_matrix(m: &[Scalar]) -> bool {
    rank_exact(&matrix3(m)) == 1 && square3(m).iter().all(Zero::is_zero)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1500))]

    #[test]
    fn classifier_agrees_with_flag_membership(p in tangent_params()) {
        let d = classify_and_decompose(&p, &KChoice::Default).unwrap();
        let t = tangent_element(&p).unwrap();
        prop_assert_eq!(d.sum(), t.clone());
        prop_assert!(d.summands.iter().all(|(c, pt): &(Scalar, FlagPoint)| !c.is_zero() && pt.is_valid()));
        prop_assert!(d.rank() == 1 || d.rank() == 2);
        prop_assert_eq!(d.rank() == 1, is_flag_point_matrix(&t));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn line_restriction_endpoints(m in 0usize..3, seed in any::<u64>()) {
        let model = MODELS[m];
        let mut rng = random::rng(seed);
        let p = random::int_vector(&mut rng, model.num_coords(), 9);
        let q = random::int_vector(&mut rng, model.num_coords(), 9);
        prop_assume!(!ranklab_core::scalar::proportional(&p, &q));
        let f = model.equation();
        let lr = restrict_to_line(&f, &p, &q).unwrap();
        prop_assert_eq!(&lr.coeffs[0], &eval_poly(&f, &p).unwrap());
        prop_assert_eq!(lr.coeffs.last().unwrap(), &eval_poly(&f, &q).unwrap());
        // the binary form agrees with f on the line at t = 2
        let two = int(2);
        let x: Vec<Scalar> = p.iter().zip(&q).map(|(a, b)| a + &two * b).collect();
        let val = lr.coeffs.iter().rev().fold(Scalar::zero(), |acc, c| acc * &two + c);
        prop_assert_eq!(val, eval_poly(&f, &x).unwrap());
    }

    #[test]
    fn witnesses_verify_and_scale(m in 0usize..3, seed in any::<u64>(), lam in prop_oneof![-7i64..=-1, 1i64..=7]) {
        let model = MODELS[m];
        let mut rng = random::rng(seed);
        let p = random_point_off(model, &mut rng, 15);
        let w = rank_witness(model, &p, seed, 25).unwrap();
        prop_assert!(w.verify().unwrap());
        let cap = if model == HypersurfaceModel::Klein { 2 } else { 3 };
        prop_assert!(w.rank_bound <= cap);
        let scaled: Vec<Scalar> = p.iter().map(|x| x * int(lam)).collect();
        let ws = rank_witness(model, &scaled, seed, 25).unwrap();
        prop_assert!(ws.verify().unwrap());
        prop_assert_eq!(ws.rank_bound, w.rank_bound);
    }

    #[test]
    fn modular_rank_matches_exact_on_low_rank_products(r in 1usize..6, seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let a = DenseMatrix::new(8, r, random::int_vector(&mut rng, 8 * r, 9)).unwrap();
        let b = DenseMatrix::new(r, 10, random::int_vector(&mut rng, r * 10, 9)).unwrap();
        let mut c = DenseMatrix::zeros(8, 10);
        for i in 0..8 {
            for j in 0..10 {
                let v = (0..r).fold(Scalar::zero(), |acc, t| acc + a.get(i, t) * b.get(t, j));
                c.set(i, j, v);
            }
        }
        let p = ranklab_core::matrix::random_prime_62(&mut rng);
        prop_assert_eq!(rank_modp(&c, p).unwrap(), rank_exact(&c));
        prop_assert!(rank_exact(&c) <= r);
    }
}
