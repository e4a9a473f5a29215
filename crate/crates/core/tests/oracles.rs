//! Hom dimensions checked against character inner products. The oracle only
//! uses traces of the component matrices and the group table; it never calls
//! the intertwiner solver.

use std::sync::Arc;

use tannakit::battery::{g_battery, l_battery, Named};
use tannakit::comod::{hom_space, Comodule};
use tannakit::etale::{base_change_category, SeparableExtension};
use tannakit::exactlin::{FieldSpec, Scalar};
use tannakit::functors::{cotensor, QuotientDatum};
use tannakit::groups::{catalog, FiniteGroup, Subgroup, CATALOG_NAMES};
use tannakit::hopf::function_algebra;
use tannakit::quotient::{hom_space_p, quotient_functor_q, QuotientContext};

const Q: FieldSpec = FieldSpec::Rationals;

fn trace(x: &Comodule, g: usize) -> Scalar {
    let m = x.component(g);
    (0..m.rows()).fold(Scalar::from_i64(m.field(), 0), |acc, i| &acc + m.get(i, i))
}

/// `(1/|S|) sum_{s in S} chi_x(s^-1) chi_y(s)` over the listed elements.
fn inner(g: &FiniteGroup, elements: &[usize], x: &Comodule, y: &Comodule) -> usize {
    let total = elements
        .iter()
        .fold(Scalar::from_i64(Q, 0), |acc, &s| &acc + &(&trace(x, g.inv(s)) * &trace(y, s)));
    let avg = &total * &Scalar::from_ratio(Q, 1, elements.len() as i64);
    let r = avg.to_big_rational();
    assert!(r.is_integer(), "character inner product {r} is not an integer");
    r.to_integer().try_into().expect("small dimension")
}

fn battery(name: &str, field: FieldSpec) -> (FiniteGroup, Vec<Named>) {
    let g = catalog(name).unwrap();
    let o = Arc::new(function_algebra(&g, field));
    let items = g_battery(&g, &o);
    (g, items)
}

#[test]
fn hom_dims_match_characters_over_q() {
    let mut pairs = 0;
    for name in CATALOG_NAMES {
        let (g, items) = battery(name, Q);
        let all: Vec<usize> = g.elements().collect();
        for (nx, x) in &items {
            for (ny, y) in &items {
                let solved = hom_space(x, y).unwrap().cols();
                assert_eq!(solved, inner(&g, &all, x, y), "{name}: Hom({nx}, {ny})");
                pairs += 1;
            }
        }
    }
    assert!(pairs > 50);
}

#[test]
fn hom_dims_over_good_primes_match_q() {
    for name in CATALOG_NAMES {
        let (g, q_items) = battery(name, Q);
        let all: Vec<usize> = g.elements().collect();
        for p in [5u64, 7] {
            if g.order() as u64 % p == 0 {
                continue;
            }
            let (_, p_items) = battery(name, FieldSpec::prime(p).unwrap());
            for (nx, x) in &p_items {
                for (ny, y) in &p_items {
                    let qx = &q_items.iter().find(|(n, _)| n == nx).expect("same battery names").1;
                    let qy = &q_items.iter().find(|(n, _)| n == ny).expect("same battery names").1;
                    let solved = hom_space(x, y).unwrap().cols();
                    assert_eq!(solved, inner(&g, &all, qx, qy), "{name} over F{p}: Hom({nx}, {ny})");
                }
            }
        }
    }
}

fn datum(g: &str, l: &str) -> QuotientDatum {
    let g = catalog(g).unwrap();
    let l = Subgroup::by_name(&g, l).unwrap();
    QuotientDatum::new(&g, &l, Q).unwrap()
}

#[test]
fn quotient_category_homs_match_restricted_characters() {
    for (gn, ln) in [("S3", "A3"), ("C4", "C2"), ("D4", "center"), ("C6", "C3")] {
        let d = datum(gn, ln);
        let members = d.l.members().to_vec();
        let g = d.g.clone();
        let items = g_battery(&d.g, &d.o_g);
        let ctx = QuotientContext::new(d).unwrap();
        for (nx, x) in items.iter().filter(|(n, _)| n != "reg") {
            for (ny, y) in items.iter().filter(|(n, _)| n != "reg") {
                let a = quotient_functor_q(&ctx, x).unwrap();
                let b = quotient_functor_q(&ctx, y).unwrap();
                let dim = hom_space_p(&ctx, &a, &b).unwrap().len();
                assert_eq!(dim, inner(&g, &members, x, y), "{gn}/{ln}: Hom_P(q'{nx}, q'{ny})");
            }
        }
    }
}

/// Induced character `(1/|L|) sum_{x in G, x g x^-1 in L} chi_U(x g x^-1)`.
fn induced_trace(d: &QuotientDatum, u: &Comodule, g: usize) -> Scalar {
    let grp = &d.g;
    let total = grp.elements().fold(Scalar::from_i64(Q, 0), |acc, x| {
        let c = grp.mul(grp.mul(x, g), grp.inv(x));
        match d.l.position(c) {
            Some(i) => &acc + &trace(u, i),
            None => acc,
        }
    });
    &total * &Scalar::from_ratio(Q, 1, d.l.order() as i64)
}

#[test]
fn frobenius_against_induced_characters() {
    for (gn, ln) in [("S3", "A3"), ("C4", "C2"), ("Q8", "center")] {
        let d = datum(gn, ln);
        let l_items = l_battery(&d).unwrap();
        let g_items = g_battery(&d.g, &d.o_g);
        for (nu, u) in &l_items {
            let ind = cotensor(&d, u).unwrap().comodule;
            for g in d.g.elements() {
                assert_eq!(trace(&ind, g), induced_trace(&d, u, g), "{gn}/{ln}: chi_ind({nu})");
            }
            for (nv, v) in g_items.iter().filter(|(n, _)| n != "reg") {
                // <res V, U>_L computed from the G-components of V on L.
                let l_sum = d.l.members().iter().enumerate().fold(Scalar::from_i64(Q, 0), |acc, (i, &s)| {
                    &acc + &(&trace(v, d.g.inv(s)) * &trace(u, i))
                });
                let rhs = &l_sum * &Scalar::from_ratio(Q, 1, d.l.order() as i64);
                let lhs = hom_space(v, &ind).unwrap().cols();
                assert_eq!(Scalar::from_i64(Q, lhs as i64), rhs, "{gn}/{ln}: Hom({nv}, ind {nu})");
            }
        }
    }
}

#[test]
fn base_change_doubles_character_dims() {
    for name in ["S3", "C4", "Q8"] {
        let (g, items) = battery(name, Q);
        let all: Vec<usize> = g.elements().collect();
        let k = SeparableExtension::default_quadratic(Q).unwrap();
        let bc = base_change_category(&k, items[0].1.algebra()).unwrap();
        for (nx, x) in items.iter().filter(|(n, _)| n != "reg") {
            for (ny, y) in items.iter().filter(|(n, _)| n != "reg") {
                let r = bc.check_pair(x, y).unwrap();
                assert_eq!(r.dim_hom_k, 2 * inner(&g, &all, x, y), "{name}: Hom_K({nx}, {ny})");
            }
        }
    }
}
