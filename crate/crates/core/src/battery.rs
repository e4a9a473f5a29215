//! Fixed test batteries of comodules for a pair `L <| G`.
//!
//! `G`-battery: the unit, every nontrivial `+-1` character, a faithful
//! "std" representation for catalog groups, and the regular comodule.
//! `L`-battery: the unit, `+-1` characters of `L`, the cyclotomic companion
//! representation when `L` is cyclic of order at least 3, the regular
//! comodule of `L`, and restrictions of the `G`-battery.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::comod::{
    direct_sum, invariants, quotient_comodule, regular_comodule, rep_over, subcomodule,
    trivial_comodule, Comodule, ComoduleMap,
};
use crate::error::Error;
use crate::exactlin::{FieldSpec, Matrix, Scalar};
use crate::functors::{counit_eps, restrict, QuotientDatum};
use crate::groups::FiniteGroup;
use crate::hopf::HopfAlgebra;

pub const BATTERY_VERSION: &str = "battery-v1";

pub type Named = (String, Comodule);

/// Extends generator images to all elements by breadth-first search,
/// `M(x s) = M(x) M(s)`, then validates the homomorphism property.
pub fn rep_from_generators(g: &FiniteGroup, o: &Arc<HopfAlgebra>, gens: &[(usize, Matrix)]) -> Result<Comodule, Error> {
    let d = gens.first().map(|(_, m)| m.rows()).unwrap_or(1);
    let mut images: Vec<Option<Matrix>> = vec![None; g.order()];
    images[g.identity()] = Some(Matrix::identity(o.field(), d));
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        for (s, ms) in gens {
            let y = g.mul(x, *s);
            if images[y].is_none() {
                images[y] = Some(images[x].as_ref().expect("visited") * ms);
                queue.push_back(y);
            }
        }
    }
    let images = images
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Verification("generators do not generate the group".into()))?;
    rep_over(o, g, &images)
}

/// All nontrivial homomorphisms `G -> {+-1}`, as 1-dimensional comodules,
/// in the order of sign patterns on `g.generators()`.
pub fn sign_characters(g: &FiniteGroup, o: &Arc<HopfAlgebra>) -> Vec<Comodule> {
    let f = o.field();
    let gens = g.generators();
    let triv = trivial_comodule(o, 1);
    let mut out: Vec<Comodule> = Vec::new();
    if f.characteristic() == 2 {
        return out;
    }
    for mask in 1u64..(1u64 << gens.len()) {
        let imgs: Vec<(usize, Matrix)> = gens
            .iter()
            .enumerate()
            .map(|(k, &s)| {
                let v = if mask >> k & 1 == 1 { -1 } else { 1 };
                (s, Matrix::from_i64(f, &[vec![v]]))
            })
            .collect();
        if let Ok(c) = rep_from_generators(g, o, &imgs) {
            if c != triv && !out.contains(&c) {
                out.push(c);
            }
        }
    }
    out
}

/// Integer coefficients (constant term first) of the `n`-th cyclotomic
/// polynomial.
pub fn cyclotomic(n: usize) -> Vec<i64> {
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = poly_div(&num, &cyclotomic(d));
        }
    }
    num
}

fn poly_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; rem.len() - dd];
    for k in (0..q.len()).rev() {
        let c = rem[k + dd] / den[dd];
        q[k] = c;
        for (i, &x) in den.iter().enumerate() {
            rem[k + i] -= c * x;
        }
    }
    q
}

/// Companion matrix of a monic integer polynomial.
pub fn companion(field: FieldSpec, p: &[i64]) -> Matrix {
    let k = p.len() - 1;
    let mut m = Matrix::zeros(field, k, k);
    for i in 1..k {
        m.set(i, i - 1, field.one());
    }
    for i in 0..k {
        m.set(i, k - 1, Scalar::from_i64(field, -p[i]));
    }
    m
}

/// A faithful irreducible-over-`Q` representation for catalog groups.
fn std_rep(g: &FiniteGroup, o: &Arc<HopfAlgebra>) -> Option<Comodule> {
    let f = o.field();
    let m = |rows: &[Vec<i64>]| Matrix::from_i64(f, rows);
    let gens = match g.name() {
        "S3" => vec![
            ("r", m(&[vec![0, -1], vec![1, -1]])),
            ("s", m(&[vec![0, 1], vec![1, 0]])),
        ],
        "D4" => vec![
            ("r", m(&[vec![0, -1], vec![1, 0]])),
            ("s", m(&[vec![1, 0], vec![0, -1]])),
        ],
        // left multiplication by i and j on the basis 1, i, j, k
        "Q8" => vec![
            ("i", m(&[vec![0, -1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, -1], vec![0, 0, 1, 0]])),
            ("j", m(&[vec![0, 0, -1, 0], vec![0, 0, 0, 1], vec![1, 0, 0, 0], vec![0, -1, 0, 0]])),
        ],
        name if name.starts_with('C') && g.order() >= 3 && g.is_abelian() => {
            let gen = g.elements().find(|&x| g.element_order(x) == g.order())?;
            let c = companion(f, &cyclotomic(g.order()));
            return rep_from_generators(g, o, &[(gen, c)]).ok();
        }
        _ => return None,
    };
    let gens: Vec<(usize, Matrix)> = gens
        .into_iter()
        .map(|(l, mat)| g.index_of(l).map(|i| (i, mat)))
        .collect::<Option<_>>()?;
    rep_from_generators(g, o, &gens).ok()
}

fn sign_name(k: usize, total: usize) -> String {
    if total == 1 || k == 0 {
        "sign".into()
    } else {
        format!("sign{}", k + 1)
    }
}

pub fn g_battery(g: &FiniteGroup, o: &Arc<HopfAlgebra>) -> Vec<Named> {
    let mut out = vec![("I".to_string(), trivial_comodule(o, 1))];
    let signs = sign_characters(g, o);
    let n = signs.len();
    for (k, c) in signs.into_iter().enumerate() {
        out.push((sign_name(k, n), c));
    }
    if let Some(s) = std_rep(g, o) {
        out.push(("std".into(), s));
    }
    out.push(("reg".into(), regular_comodule(o)));
    out
}

pub fn l_battery(d: &QuotientDatum) -> Result<Vec<Named>, Error> {
    let lg = &d.l_group;
    let o = &d.o_l;
    let mut out: Vec<Named> = vec![("I".to_string(), trivial_comodule(o, 1))];
    let signs = sign_characters(lg, o);
    let n = signs.len();
    for (k, c) in signs.into_iter().enumerate() {
        out.push((sign_name(k, n), c));
    }
    if lg.order() >= 3 {
        if let Some(gen) = lg.elements().find(|&x| lg.element_order(x) == lg.order()) {
            let c = companion(o.field(), &cyclotomic(lg.order()));
            out.push(("cyc".into(), rep_from_generators(lg, o, &[(gen, c)])?));
        }
    }
    out.push(("reg".into(), regular_comodule(o)));
    for (name, v) in g_battery(&d.g, &d.o_g) {
        let r = restrict(d, &v)?;
        if !out.iter().any(|(_, c)| *c == r) {
            out.push((format!("res({name})"), r));
        }
    }
    Ok(out)
}

/// Up to `limit` pairs `(V, U)` in battery order.
pub fn adjunction_pairs(g_items: &[Named], l_items: &[Named], limit: usize) -> Vec<(Named, Named)> {
    g_items
        .iter()
        .flat_map(|v| l_items.iter().map(move |u| (v.clone(), u.clone())))
        .take(limit)
        .collect()
}

/// A short exact sequence `0 -> U' -> U -> U'' -> 0` of comodules.
#[derive(Clone, Debug)]
pub struct ShortExact {
    pub name: String,
    pub inclusion: ComoduleMap,
    pub projection: ComoduleMap,
}

fn split_sequence(name: String, a: &Comodule, b: &Comodule) -> Result<ShortExact, Error> {
    let f = a.field();
    let (da, db) = (a.dim(), b.dim());
    let sum = direct_sum(a, b)?;
    let inc = Matrix::identity(f, da).vstack(&Matrix::zeros(f, db, da))?;
    let proj = Matrix::zeros(f, db, da).hstack(&Matrix::identity(f, db))?;
    Ok(ShortExact {
        name,
        inclusion: ComoduleMap::new(a.clone(), sum.clone(), inc)?,
        projection: ComoduleMap::new(sum, b.clone(), proj)?,
    })
}

/// Sub/quotient sequences of `L`-comodules: invariants of every battery
/// item with proper nonzero invariants, the kernel of `eps` for the
/// regular comodule, and split sequences between battery items.
pub fn ses_battery(d: &QuotientDatum, l_items: &[Named]) -> Result<Vec<ShortExact>, Error> {
    let mut out = Vec::new();
    for (name, u) in l_items {
        let (inv, _) = invariants(u);
        if inv.cols() > 0 && inv.cols() < u.dim() {
            out.push(ShortExact {
                name: format!("invariants({name})"),
                inclusion: subcomodule(u, &inv)?,
                projection: quotient_comodule(u, &inv)?,
            });
        }
    }
    let reg = regular_comodule(&d.o_l);
    let eps = counit_eps(d, &reg)?;
    let ker = crate::exactlin::kernel_basis(eps.matrix());
    let inc = subcomodule(eps.source(), &ker)?;
    let proj = ComoduleMap::new(eps.source().clone(), reg, eps.matrix().clone())?;
    out.push(ShortExact {
        name: "kernel(eps_reg)".into(),
        inclusion: inc,
        projection: proj,
    });
    for w in l_items.windows(2) {
        out.push(split_sequence(format!("{}+{}", w[0].0, w[1].0), &w[0].1, &w[1].1)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comod::hom_space;
    use crate::groups::{catalog, Subgroup};
    use crate::hopf::function_algebra;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic(1), vec![-1, 1]);
        assert_eq!(cyclotomic(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic(8), vec![1, 0, 0, 0, 1]);
    }

    #[test]
    fn g_batteries_for_catalog() {
        let expect = [("S3", vec!["I", "sign", "std", "reg"]), ("C4", vec!["I", "sign", "std", "reg"]), ("Q8", vec!["I", "sign", "sign2", "sign3", "std", "reg"])];
        for (name, names) in expect {
            let g = catalog(name).unwrap();
            let o = Arc::new(function_algebra(&g, Q));
            let b = g_battery(&g, &o);
            let got: Vec<&str> = b.iter().map(|(n, _)| n.as_str()).collect();
            assert_eq!(got, names, "{name}");
            for (_, c) in &b {
                assert!(c.axiom_failure().is_none());
            }
        }
    }

    #[test]
    fn std_reps_are_irreducible_over_q() {
        for name in ["S3", "D4", "Q8", "C5"] {
            let g = catalog(name).unwrap();
            let o = Arc::new(function_algebra(&g, Q));
            let s = std_rep(&g, &o).unwrap();
            assert_eq!(invariants(&s).0.cols(), 0);
            // End(std) is a division algebra over Q; its dimension is small
            let e = hom_space(&s, &s).unwrap().cols();
            assert!(e <= s.dim(), "{name}: {e}");
        }
    }

    #[test]
    fn l_battery_for_s3_a3() {
        let g = catalog("S3").unwrap();
        let d = QuotientDatum::new(&g, &Subgroup::by_name(&g, "A3").unwrap(), Q).unwrap();
        let names: Vec<String> = l_battery(&d).unwrap().into_iter().map(|(n, _)| n).collect();
        assert_eq!(names, vec!["I", "cyc", "reg", "res(reg)"]);
    }

    #[test]
    fn ses_battery_is_exact_as_vector_spaces() {
        let g = catalog("C4").unwrap();
        let d = QuotientDatum::new(&g, &Subgroup::by_name(&g, "C2").unwrap(), Q).unwrap();
        let l = l_battery(&d).unwrap();
        let seqs = ses_battery(&d, &l).unwrap();
        assert!(seqs.len() >= 3);
        for s in seqs {
            assert!((s.projection.matrix() * s.inclusion.matrix()).is_zero());
            assert_eq!(s.inclusion.source().dim() + s.projection.target().dim(), s.inclusion.target().dim());
        }
    }

    #[test]
    fn non_semisimple_regular_in_characteristic_two() {
        let f2 = FieldSpec::prime(2).unwrap();
        let g = catalog("C2").unwrap();
        let o = Arc::new(function_algebra(&g, f2));
        let reg = regular_comodule(&o);
        assert_eq!(invariants(&reg).0.cols(), 1);
        let triv2 = trivial_comodule(&o, 2);
        assert!(crate::comod::find_isomorphism(&reg, &triv2).unwrap().is_none());
        assert!(sign_characters(&g, &o).is_empty());
    }
}
