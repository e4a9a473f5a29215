//! Randomized invariants of the linear algebra kernel and of the comodule
//! categories built on top of it.

use std::sync::Arc;

use proptest::prelude::*;

use tannakit::battery::{g_battery, l_battery, Named};
use tannakit::comod::{direct_sum, dual_comodule, hom_space, tensor_comodule, Comodule};
use tannakit::exactlin::{determinant, kernel_basis, rank, solve, FieldSpec, Matrix, Subspace};
use tannakit::functors::{adjunction_check, cotensor, QuotientDatum};
use tannakit::groups::{catalog, Subgroup};
use tannakit::hopf::function_algebra;

fn fields() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![Just(FieldSpec::Rationals), Just(FieldSpec::prime(7).unwrap())]
}

fn entries(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, cols), rows)
}

fn matrix(field: FieldSpec, rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    entries(rows, cols).prop_map(move |e| Matrix::from_i64(field, &e))
}

fn field_and_matrix() -> impl Strategy<Value = Matrix> {
    (fields(), 1usize..6, 1usize..6).prop_flat_map(|(f, r, c)| matrix(f, r, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(m in field_and_matrix()) {
        let k = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + k.cols(), m.cols());
        prop_assert!((&m * &k).is_zero());
    }

    #[test]
    fn kron_mixed_product(
        (a, b, c, d) in (fields(), 1usize..4, 1usize..4, 1usize..4, 1usize..4, 1usize..4, 1usize..4)
            .prop_flat_map(|(f, n, m, p, q, r, s)| (matrix(f, n, m), matrix(f, p, q), matrix(f, m, r), matrix(f, q, s)))
    ) {
        let lhs = &a.kron(&b) * &c.kron(&d);
        let rhs = (&a * &c).kron(&(&b * &d));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn solve_recovers_consistent_systems(
        (a, x) in (fields(), 1usize..6, 1usize..6, 1usize..3)
            .prop_flat_map(|(f, r, c, k)| (matrix(f, r, c), matrix(f, c, k)))
    ) {
        let b = &a * &x;
        let y = solve(&a, &b).unwrap().expect("consistent by construction");
        prop_assert_eq!(&a * &y, b);
    }

    #[test]
    fn span_ignores_invertible_column_operations(
        (m, p) in (fields(), 1usize..6, 1usize..5)
            .prop_flat_map(|(f, r, c)| (matrix(f, r, c), matrix(f, c, c)))
    ) {
        let det = determinant(&p).unwrap();
        prop_assume!(!det.is_zero());
        prop_assert_eq!(Subspace::span(&m), Subspace::span(&(&m * &p)));
    }

    #[test]
    fn determinant_is_multiplicative(
        (a, b) in (fields(), 1usize..5).prop_flat_map(|(f, n)| (matrix(f, n, n), matrix(f, n, n)))
    ) {
        let lhs = determinant(&(&a * &b)).unwrap();
        let rhs = &determinant(&a).unwrap() * &determinant(&b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

fn s3_items() -> Vec<Named> {
    let g = catalog("S3").unwrap();
    let o = Arc::new(function_algebra(&g, FieldSpec::Rationals));
    g_battery(&g, &o).into_iter().filter(|(n, _)| n != "reg").collect()
}

/// Direct sum of the chosen battery items (indices taken modulo its length).
fn sum_of(items: &[Named], picks: &[usize]) -> Comodule {
    let mut it = picks.iter().map(|&i| items[i % items.len()].1.clone());
    let first = it.next().expect("at least one pick");
    it.fold(first, |acc, c| direct_sum(&acc, &c).unwrap())
}

fn picks() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..8, 1..3)
}

fn dim_hom(x: &Comodule, y: &Comodule) -> usize {
    hom_space(x, y).unwrap().cols()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn duality_reverses_hom(a in picks(), b in picks()) {
        let items = s3_items();
        let (x, y) = (sum_of(&items, &a), sum_of(&items, &b));
        prop_assert_eq!(dim_hom(&x, &y), dim_hom(&dual_comodule(&y), &dual_comodule(&x)));
    }

    #[test]
    fn tensor_hom_adjunction(a in picks(), b in picks(), c in picks()) {
        let items = s3_items();
        let (x, y, z) = (sum_of(&items, &a), sum_of(&items, &b), sum_of(&items, &c));
        let lhs = dim_hom(&tensor_comodule(&x, &y).unwrap(), &z);
        let rhs = dim_hom(&x, &tensor_comodule(&dual_comodule(&y), &z).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn frobenius_reciprocity_dims(a in picks(), b in picks()) {
        let g = catalog("S3").unwrap();
        let l = Subgroup::by_name(&g, "A3").unwrap();
        let d = QuotientDatum::new(&g, &l, FieldSpec::Rationals).unwrap();
        let g_items = g_battery(&d.g, &d.o_g);
        let l_items = l_battery(&d).unwrap();
        let v = sum_of(&g_items, &a);
        let u = sum_of(&l_items, &b);
        let ind = cotensor(&d, &u).unwrap();
        prop_assert_eq!(ind.comodule.dim(), d.index() * u.dim());
        let r = adjunction_check(&d, &v, &u).unwrap();
        prop_assert_eq!(r.dim_hom_g, r.dim_hom_l);
        prop_assert!(r.bijective);
    }
}
