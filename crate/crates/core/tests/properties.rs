use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use zerocen::jordan::{jordan_base, rank_partition};
use zerocen::ncpoly::{comm, comm2, product_identity, standard, Mult, NCPoly};
use zerocen::random::{self, trial_rng};
use zerocen::text::{format_matrix, parse_matrix};
use zerocen::{ExactMatrix, FieldSpec, Subspace};

fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::Prime(2)),
        Just(FieldSpec::Prime(3)),
        Just(FieldSpec::Prime(5)),
        Just(FieldSpec::Prime(101)),
        Just(FieldSpec::Rationals),
    ]
}

fn matrix(field: FieldSpec, rows: usize, cols: usize) -> impl Strategy<Value = ExactMatrix> {
    prop::collection::vec(-3i64..=3, rows * cols).prop_map(move |e| ExactMatrix::from_i64(field, rows, cols, &e))
}

fn any_matrix() -> impl Strategy<Value = ExactMatrix> {
    (field(), 1usize..=6, 1usize..=6).prop_flat_map(|(f, r, c)| matrix(f, r, c))
}

fn square() -> impl Strategy<Value = ExactMatrix> {
    (field(), 1usize..=6).prop_flat_map(|(f, n)| matrix(f, n, n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(a in any_matrix()) {
        prop_assert_eq!(a.rank() + a.kernel().dim(), a.cols());
        prop_assert_eq!(a.rank(), a.transpose().rank());
        prop_assert_eq!(a.image().dim(), a.rank());
        let zero = vec![a.field().zero(); a.rows()];
        for v in a.kernel().vectors() {
            prop_assert_eq!(a.mul_vec(&v).unwrap(), zero.clone());
        }
    }

    #[test]
    fn inverse_is_two_sided(a in square()) {
        let n = a.rows();
        match a.inverse().unwrap() {
            Some(inv) => {
                prop_assert_eq!(&a * &inv, ExactMatrix::identity(a.field(), n));
                prop_assert_eq!(&inv * &a, ExactMatrix::identity(a.field(), n));
            }
            None => prop_assert!(a.rank() < n),
        }
    }

    #[test]
    fn subspaces_form_a_lattice(a in square(), b_seed in any::<u64>()) {
        let f = a.field();
        let n = a.rows();
        let b = random::matrix(f, n, n, &mut trial_rng(b_seed, 0));
        let (s, t) = (a.image(), b.kernel());
        let j = s.join(&t).unwrap();
        prop_assert!(s.leq(&j).unwrap() && t.leq(&j).unwrap());
        prop_assert!(j.dim() <= s.dim() + t.dim());
        let mut vs = a.columns();
        vs.reverse();
        prop_assert_eq!(Subspace::span(f, n, &vs).unwrap(), s.clone());
        prop_assert_eq!(j.join(&s).unwrap(), j);
    }

    #[test]
    fn jordan_base_matches_rank_partition(seed in any::<u64>(), n in 1usize..=6, f in field()) {
        let (a, profile) = random::nilpotent(f, n, &mut trial_rng(seed, 0));
        let base = jordan_base(&a).unwrap();
        prop_assert!(base.satisfies_chain_property(&a));
        prop_assert_eq!(base.block_sizes().to_vec(), rank_partition(&a).unwrap());
        prop_assert_eq!(base.block_sizes(), profile.k());
    }

    #[test]
    fn matrix_text_round_trips(a in any_matrix()) {
        prop_assert_eq!(parse_matrix(&format_matrix(&a), None).unwrap(), a);
    }

    #[test]
    fn prime_field_arithmetic_matches_integers(p in prop::sample::select(vec![2u32, 3, 5, 7, 101, 65521]), x in -1000i64..1000, y in -1000i64..1000) {
        let f = FieldSpec::Prime(p);
        let m = i64::from(p);
        let (a, b) = (f.from_i64(x), f.from_i64(y));
        prop_assert_eq!(&a + &b, f.from_i64((x + y).rem_euclid(m)));
        prop_assert_eq!(&a * &b, f.from_i64((x * y).rem_euclid(m)));
        prop_assert_eq!(&a - &b, f.from_i64((x - y).rem_euclid(m)));
        if !b.is_zero() {
            prop_assert_eq!(&a.try_div(&b).unwrap() * &b, a.clone());
        }
    }

    #[test]
    fn rational_arithmetic_matches_bigrational(n1 in -50i64..50, d1 in 1i64..20, n2 in -50i64..50, d2 in 1i64..20) {
        let q = FieldSpec::Rationals;
        let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        let a = q.from_ratio(&BigInt::from(n1), &BigInt::from(d1)).unwrap();
        let b = q.from_ratio(&BigInt::from(n2), &BigInt::from(d2)).unwrap();
        prop_assert_eq!((&a + &b).as_rational().cloned(), Some(r(n1, d1) + r(n2, d2)));
        prop_assert_eq!((&a * &b).as_rational().cloned(), Some(r(n1, d1) * r(n2, d2)));
        if n2 != 0 {
            prop_assert_eq!(a.try_div(&b).unwrap().as_rational().cloned(), Some(r(n1, d1) / r(n2, d2)));
        }
    }
}

fn candidates(f: FieldSpec) -> Vec<NCPoly> {
    vec![comm(f), comm2(f), standard(f, 3), standard(f, 4)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn multilinear_evaluation_is_linear(seed in any::<u64>(), f in field(), which in 0usize..4, slot in 0usize..4, n in 1usize..=3, opposite: bool) {
        let poly = &candidates(f)[which];
        let slot = slot % poly.num_vars();
        let mult = if opposite { Mult::Opposite } else { Mult::Standard };
        let mut rng = trial_rng(seed, 0);
        let args: Vec<ExactMatrix> = (0..poly.num_vars()).map(|_| random::matrix(f, n, n, &mut rng)).collect();
        let other = random::matrix(f, n, n, &mut rng);
        let (a, b) = (random::element(f, &mut rng), random::element(f, &mut rng));
        let with = |x: ExactMatrix| {
            let mut v = args.clone();
            v[slot] = x;
            poly.evaluate(&v, mult).unwrap()
        };
        let combined = with(args[slot].scale(&a).try_add(&other.scale(&b)).unwrap());
        let split = with(args[slot].clone()).scale(&a).try_add(&with(other.clone()).scale(&b)).unwrap();
        prop_assert_eq!(combined, split);
    }

    #[test]
    fn product_identity_evaluates_factorwise(seed in any::<u64>(), f in field(), picks in prop::collection::vec(0usize..4, 1..=3), n in 1usize..=3, opposite: bool) {
        let all = candidates(f);
        let factors: Vec<NCPoly> = picks.iter().map(|&i| all[i].clone()).collect();
        let product = product_identity(&factors).unwrap();
        let mult = if opposite { Mult::Opposite } else { Mult::Standard };
        let mut rng = trial_rng(seed, 1);
        let args: Vec<ExactMatrix> = (0..product.num_vars()).map(|_| random::matrix(f, n, n, &mut rng)).collect();
        let mut offset = 0;
        let mut expected = ExactMatrix::identity(f, n);
        for g in &factors {
            let value = g.evaluate(&args[offset..offset + g.num_vars()], mult).unwrap();
            expected = mult.apply(&expected, &value);
            offset += g.num_vars();
        }
        prop_assert_eq!(product.evaluate(&args, mult).unwrap(), expected);
    }
}
