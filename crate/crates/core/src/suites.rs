//! Verification suites over a pair `(G, L)` and a base field. Every suite
//! appends checks to a [`Recorder`]; [`run`] assembles the report.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde_json::json;

use crate::battery::{adjunction_pairs, g_battery, l_battery, ses_battery, Named, BATTERY_VERSION};
use crate::comod::{find_isomorphism, hom_basis, regular_comodule, tensor_comodule, trivial_comodule, ComoduleMap};
use crate::error::Error;
use crate::etale::{
    base_change_category, free_omodule, free_tensor_iso, omodule_tensor, rigidity, split_module,
    splitting_section, summand_rank, verify_section, AlgebraObject, OModuleObject, SeparableExtension,
};
use crate::exactlin::{rank, FieldSpec, Matrix, Subspace};
use crate::functors::{
    adjunction_check, cotensor, counit_eps, ind_res_iso, restrict, restrict_map, sandwich, ses_exactness,
    takeuchi_instance, takeuchi_phi, QuotientDatum,
};
use crate::groups::{FiniteGroup, Subgroup};
use crate::hopf::{check_axioms, dual_hopf, find_integral, function_algebra, group_algebra, is_hopf_morphism, HopfAlgebra};
use crate::quotient::{
    compose_bar, compose_p, deligne_space, deligne_triple, equivalence_on_map, equivalence_to_repl, from_deligne,
    from_deligne_solved,
    hom_space_p, image_is_free, preimage_of, quotient_functor_q, quotient_functor_q_map, right_adjoint_p, tensor_p,
    tensor_p_maps, to_bar, verify_quotient_axioms, QuotientContext, QuotientMap, QuotientObject,
};
use crate::report::{matrix_json, verdict, BatteryHeader, Recorder, VerificationReport};

/// Adjunction pairs checked per run.
pub const ADJUNCTION_PAIR_LIMIT: usize = 25;

/// Largest `dim X * dim Y` for which the Deligne triple is also found by
/// solving over `Hom_G(X, Y (x) O)`.
pub const DELIGNE_SOLVED_MAX_DIM: usize = 36;

/// Largest `dim X * dim Y` for which `free(X) (x)_O free(Y)` is compared
/// with `free(X (x) Y)`.
pub const TENSOR_FREE_MAX_DIM: usize = 36;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    HopfAxioms,
    Adjunction,
    Takeuchi,
    QuotientEquivalence,
    EtaleSplitting,
    BaseChange,
    All,
}

impl Suite {
    pub const COMPONENTS: [Suite; 6] = [
        Suite::HopfAxioms,
        Suite::Adjunction,
        Suite::Takeuchi,
        Suite::QuotientEquivalence,
        Suite::EtaleSplitting,
        Suite::BaseChange,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Suite::HopfAxioms => "hopf-axioms",
            Suite::Adjunction => "adjunction",
            Suite::Takeuchi => "takeuchi",
            Suite::QuotientEquivalence => "quotient-equivalence",
            Suite::EtaleSplitting => "etale-splitting",
            Suite::BaseChange => "base-change",
            Suite::All => "all",
        }
    }

    fn components(&self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::COMPONENTS.to_vec(),
            s => vec![*s],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Suite::COMPONENTS
            .iter()
            .chain(std::iter::once(&Suite::All))
            .find(|x| x.id() == s)
            .copied()
            .ok_or_else(|| Error::UnknownName(format!("suite {s}")))
    }
}

/// Everything a suite needs: the quotient datum and both batteries.
pub struct Setup {
    pub datum: QuotientDatum,
    pub g_items: Vec<Named>,
    pub l_items: Vec<Named>,
    pub extension: Option<SeparableExtension>,
}

impl Setup {
    pub fn new(g: &FiniteGroup, l: &Subgroup, field: FieldSpec, extension: Option<SeparableExtension>) -> Result<Self, Error> {
        let datum = QuotientDatum::new(g, l, field)?;
        let g_items = g_battery(&datum.g, &datum.o_g);
        let l_items = l_battery(&datum)?;
        Ok(Setup {
            datum,
            g_items,
            l_items,
            extension,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.datum.field()
    }

    fn header(&self) -> BatteryHeader {
        BatteryHeader {
            version: BATTERY_VERSION.into(),
            g: self.g_items.iter().map(|(n, _)| n.clone()).collect(),
            l: self.l_items.iter().map(|(n, _)| n.clone()).collect(),
        }
    }
}

/// Rejects runs whose hypotheses fail: the quotient construction needs
/// `char k` prime to `|A|`, the splitting needs it prime to `|G|`.
pub fn preconditions(setup: &Setup, suite: Suite) -> Result<(), Error> {
    let f = setup.field();
    for s in suite.components() {
        let order = match s {
            Suite::QuotientEquivalence => setup.datum.index(),
            Suite::EtaleSplitting => setup.datum.g.order(),
            _ => continue,
        };
        if f.divides(order) {
            return Err(Error::EtaleHypothesis {
                characteristic: f.characteristic(),
                order,
            });
        }
    }
    Ok(())
}

pub fn run(setup: &Setup, suite: Suite) -> Result<VerificationReport, Error> {
    preconditions(setup, suite)?;
    let mut r = Recorder::new();
    for s in suite.components() {
        match s {
            Suite::HopfAxioms => hopf_suite(setup, &mut r),
            Suite::Adjunction => adjunction_suite(setup, &mut r)?,
            Suite::Takeuchi => takeuchi_suite(setup, &mut r)?,
            Suite::QuotientEquivalence => quotient_suite(setup, &mut r)?,
            Suite::EtaleSplitting => etale_suite(setup, &mut r)?,
            Suite::BaseChange => base_change_suite(setup, &mut r)?,
            Suite::All => unreachable!("expanded above"),
        }
    }
    let d = &setup.datum;
    VerificationReport::new(
        suite.id(),
        d.g.name(),
        d.l.members().iter().map(|&x| d.g.label(x).to_string()).collect(),
        &setup.field().to_string(),
        setup.header(),
        r.into_checks(),
    )
}

fn groups_of(d: &QuotientDatum) -> [(&'static str, &FiniteGroup); 3] {
    [("G", &d.g), ("L", &d.l_group), ("A", &d.quotient.group)]
}

// ---------------------------------------------------------------- hopf

const HOPF_REF: &str = "Hopf algebra axioms";

fn hopf_suite(s: &Setup, r: &mut Recorder) {
    let f = s.field();
    let d = &s.datum;
    for (role, grp) in groups_of(d) {
        let kg = group_algebra(grp, f);
        let og = function_algebra(grp, f);
        for (kind, h) in [("kG", &kg), ("OG", &og)] {
            for c in check_axioms(h).checks {
                r.check(
                    format!("hopf-axioms/{role}/{kind}/{}", c.axiom.id()),
                    format!("{} satisfies {}", h.name(), c.axiom.id()),
                    HOPF_REF,
                    || Ok(verdict(c.passed, || json!({ "witness": c.witness }))),
                );
            }
        }
        r.check(
            format!("hopf-axioms/{role}/dual"),
            format!("the dual of k[{}] is O({})", grp.name(), grp.name()),
            "duality of finite-dimensional Hopf algebras",
            || {
                let dual = dual_hopf(&kg);
                Ok(verdict(dual == og, || json!({ "mult_difference": dual.mult().first_difference(og.mult()) })))
            },
        );
        r.check(
            format!("hopf-axioms/{role}/integral/OG"),
            format!("the integrals of O({}) are spanned by the delta at the identity", grp.name()),
            "integrals of Hopf algebras",
            || {
                let x = find_integral(&og)?.vector;
                let e = Matrix::unit_column(f, grp.order(), grp.identity());
                Ok(verdict(x == e, || json!({ "integral": matrix_json(&x) })))
            },
        );
        r.check(
            format!("hopf-axioms/{role}/integral/kG"),
            format!("the integrals of k[{}] are spanned by the sum of all elements", grp.name()),
            "integrals of Hopf algebras",
            || {
                let x = find_integral(&kg)?.vector;
                let ones = Matrix::from_fn(f, grp.order(), 1, |_, _| f.one());
                Ok(verdict(x == ones, || json!({ "integral": matrix_json(&x) })))
            },
        );
    }
    let (o_g, o_l, o_a) = (&d.o_g, &d.o_l, &d.o_a);
    r.check(
        "hopf-axioms/maps/inclusion",
        "O(A) -> O(G) is a Hopf algebra map",
        "Hopf subalgebra of a quotient group",
        || Ok(verdict(is_hopf_morphism(o_a, o_g, &d.f_star), || json!({ "map": matrix_json(&d.f_star) }))),
    );
    r.check(
        "hopf-axioms/maps/restriction",
        "O(G) -> O(L) is a Hopf algebra map",
        "Hopf quotient of a subgroup",
        || Ok(verdict(is_hopf_morphism(o_g, o_l, &d.q_star), || json!({ "map": matrix_json(&d.q_star) }))),
    );
    for (name, h) in mutations(&d.g, f) {
        r.check(
            format!("hopf-axioms/mutation/{name}"),
            format!("the axiom checker rejects {name}"),
            HOPF_REF,
            || {
                let rep = check_axioms(&h);
                Ok(verdict(!rep.all_pass(), || json!({ "undetected": name })))
            },
        );
    }
}

/// Ten perturbations: one entry at the identity of each structure map of
/// `k[G]` and `O(G)` is increased by one.
pub fn mutations(g: &FiniteGroup, f: FieldSpec) -> Vec<(String, HopfAlgebra)> {
    let e = g.identity();
    let n = g.order();
    let bump = |m: &Matrix, i: usize, j: usize| {
        let mut m = m.clone();
        let v = m.get(i, j) + &f.one();
        m.set(i, j, v);
        m
    };
    let mut out = Vec::new();
    for (kind, h) in [("kG", group_algebra(g, f)), ("OG", function_algebra(g, f))] {
        out.push((format!("{kind}/mult"), h.with_mult(bump(h.mult(), e, e * n + e))));
        out.push((format!("{kind}/unit"), h.with_unit(bump(h.unit(), e, 0))));
        out.push((format!("{kind}/comult"), h.with_comult(bump(h.comult(), e * n + e, e))));
        out.push((format!("{kind}/counit"), h.with_counit(bump(h.counit(), 0, e))));
        out.push((format!("{kind}/antipode"), h.with_antipode(bump(h.antipode(), e, e))));
    }
    out
}

// ---------------------------------------------------------- adjunction

const ADJ_REF: &str = "restriction and coinduction adjunction";

fn adjunction_suite(s: &Setup, r: &mut Recorder) -> Result<(), Error> {
    let d = &s.datum;
    for (name, v) in &s.g_items {
        r.check(
            format!("adjunction/restriction/{name}"),
            format!("res({name}) is an L-comodule"),
            ADJ_REF,
            || {
                let res = restrict(d, v)?;
                let failure = res.axiom_failure();
                Ok(verdict(failure.is_none(), || json!({ "failure": failure })))
            },
        );
    }
    for (name, u) in &s.l_items {
        r.check(
            format!("adjunction/cotensor-dim/{name}"),
            format!("dim ind({name}) = dim {name} * [G:L]"),
            "cotensor product with O(G)",
            || {
                let c = cotensor(d, u)?;
                let want = u.dim() * d.index();
                Ok(verdict(c.comodule.dim() == want, || json!({ "dim": c.comodule.dim(), "expected": want })))
            },
        );
        r.check(
            format!("adjunction/counit/{name}"),
            format!("the counit res ind({name}) -> {name} is surjective"),
            ADJ_REF,
            || {
                let eps = counit_eps(d, u)?;
                Ok(verdict(eps.is_surjective(), || json!({ "rank": eps.rank(), "dim": u.dim() })))
            },
        );
    }
    r.check(
        "adjunction/cotensor-trivial",
        "ind(k) is the image of O(A) in O(G)",
        "coinvariants of a normal Hopf subalgebra",
        || {
            let c = cotensor(d, &trivial_comodule(&d.o_l, 1))?;
            let got = Subspace::span(&c.embedding);
            let want = Subspace::span(&d.f_star);
            Ok(verdict(got == want, || json!({ "embedding": matrix_json(&c.embedding) })))
        },
    );
    for ((vn, v), (un, u)) in adjunction_pairs(&s.g_items, &s.l_items, ADJUNCTION_PAIR_LIMIT) {
        r.check(
            format!("adjunction/hom/{vn},{un}"),
            format!("Hom_L(res {vn}, {un}) = Hom_G({vn}, ind {un}) via the counit"),
            ADJ_REF,
            || {
                let rep = adjunction_check(d, &v, &u)?;
                Ok(verdict(rep.bijective && rep.dim_hom_g == rep.dim_hom_l, || {
                    json!({ "dim_hom_g": rep.dim_hom_g, "dim_hom_l": rep.dim_hom_l, "image_rank": rep.image_rank })
                }))
            },
        );
    }
    Ok(())
}

// ------------------------------------------------------------ takeuchi

const TAKEUCHI_REF: &str = "Takeuchi correspondence";

fn takeuchi_suite(s: &Setup, r: &mut Recorder) -> Result<(), Error> {
    let d = &s.datum;
    r.check(
        "takeuchi/regular",
        "O(G) (x) O(G) modulo the L-relations is isomorphic to O(G) box O(L) box O(G)",
        TAKEUCHI_REF,
        || {
            let t = takeuchi_phi(d)?;
            Ok(verdict(t.well_defined && t.inverse_pair && t.source_dim == t.target_dim, || {
                json!({
                    "source_dim": t.source_dim, "target_dim": t.target_dim,
                    "well_defined": t.well_defined, "inverse_pair": t.inverse_pair,
                })
            }))
        },
    );
    for (name, u) in &s.l_items {
        r.check(
            format!("takeuchi/instance/{name}"),
            format!("the comparison map for {name} is a well-defined isomorphism"),
            TAKEUCHI_REF,
            || {
                let t = takeuchi_instance(d, u)?;
                Ok(verdict(t.well_defined && t.invertible, || {
                    json!({
                        "source_dim": t.source_dim, "target_dim": t.target_dim,
                        "well_defined": t.well_defined, "invertible": t.invertible,
                    })
                }))
            },
        );
        r.check(
            format!("takeuchi/sandwich/{name}"),
            format!("{name} is a quotient and a subobject of restrictions"),
            "coinduction and restriction",
            || {
                let (surj, inj) = sandwich(d, u)?;
                Ok(verdict(surj.is_surjective() && inj.is_injective(), || {
                    json!({ "surjection_rank": surj.rank(), "injection_rank": inj.rank(), "dim": u.dim() })
                }))
            },
        );
    }
    for (name, v) in &s.g_items {
        r.check(
            format!("takeuchi/ind-res/{name}"),
            format!("ind res {name} = {name} (x) O(A) as G-comodules"),
            "tensor identity for coinduction",
            || {
                let iso = ind_res_iso(d, v)?;
                Ok(verdict(iso.is_injective() && iso.is_surjective(), || json!({ "rank": iso.rank() })))
            },
        );
    }
    for ses in ses_battery(d, &s.l_items)? {
        r.check(
            format!("takeuchi/exact/{}", ses.name),
            format!("ind preserves the exactness of {}", ses.name),
            "exactness of coinduction",
            || {
                let rep = ses_exactness(d, &ses.inclusion, &ses.projection)?;
                Ok(verdict(rep.exact(), || {
                    json!({
                        "dims": rep.dims, "induced_dims": rep.induced_dims,
                        "composite_zero": rep.composite_zero, "injective": rep.injective,
                        "surjective": rep.surjective, "middle_exact": rep.middle_exact,
                    })
                }))
            },
        );
    }
    Ok(())
}

// ------------------------------------------------------------ quotient

const QUOT_REF: &str = "de-equivariantization by a normal subgroup";

struct Objects {
    items: Vec<(String, QuotientObject)>,
    homs: HashMap<(usize, usize), Vec<QuotientMap>>,
}

impl Objects {
    fn hom(&mut self, ctx: &QuotientContext, a: usize, b: usize) -> Result<&Vec<QuotientMap>, Error> {
        if !self.homs.contains_key(&(a, b)) {
            let h = hom_space_p(ctx, &self.items[a].1, &self.items[b].1)?;
            self.homs.insert((a, b), h);
        }
        Ok(&self.homs[&(a, b)])
    }
}

/// The sum of a hom basis, or `None` for a zero hom space.
fn generic(maps: &[QuotientMap]) -> Option<QuotientMap> {
    let first = maps.first()?;
    let mut m = first.clone();
    for x in &maps[1..] {
        m.matrix = &m.matrix + &x.matrix;
    }
    Some(m)
}

fn flat_rank(maps: &[ComoduleMap]) -> usize {
    let Some(first) = maps.first() else { return 0 };
    let m = first.matrix();
    let rows = m.rows() * m.cols();
    let mut stack = Matrix::zeros(m.field(), rows, 0);
    for x in maps {
        stack = stack.hstack(&x.matrix().flatten()).expect("equal shapes");
    }
    rank(&stack)
}

fn quotient_suite(s: &Setup, r: &mut Recorder) -> Result<(), Error> {
    let ctx = QuotientContext::new(s.datum.clone())?;
    let d = &ctx.datum;
    let mut objs = Objects {
        items: Vec::new(),
        homs: HashMap::new(),
    };
    for (name, x) in &s.g_items {
        objs.items.push((format!("q'({name})"), quotient_functor_q(&ctx, x)?));
    }
    let q_count = objs.items.len();
    for (name, u) in &s.l_items {
        objs.items.push((format!("pre({name})"), preimage_of(&ctx, u)?));
    }
    let n = objs.items.len();

    for a in 0..n {
        for b in 0..n {
            let (an, bn) = (objs.items[a].0.clone(), objs.items[b].0.clone());
            let maps = objs.hom(&ctx, a, b)?.clone();
            let (oa, ob) = (&objs.items[a].1, &objs.items[b].1);
            r.check(
                format!("quotient-equivalence/fully-faithful/{an},{bn}"),
                format!("F is bijective on Hom_P({an}, {bn})"),
                QUOT_REF,
                || {
                    let fa = equivalence_to_repl(&ctx, oa)?;
                    let fb = equivalence_to_repl(&ctx, ob)?;
                    let dim_l = hom_basis(&fa.comodule, &fb.comodule)?.len();
                    let images = maps.iter().map(|m| equivalence_on_map(&ctx, m)).collect::<Result<Vec<_>, _>>()?;
                    let rk = flat_rank(&images);
                    Ok(verdict(dim_l == maps.len() && rk == maps.len(), || {
                        json!({ "dim_hom_p": maps.len(), "dim_hom_l": dim_l, "image_rank": rk })
                    }))
                },
            );
        }
    }

    let m = n.min(5);
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                let names = format!("{},{},{}", objs.items[a].0, objs.items[b].0, objs.items[c].0);
                let f = generic(objs.hom(&ctx, a, b)?);
                let g = generic(objs.hom(&ctx, b, c)?);
                let (Some(f), Some(g)) = (f, g) else { continue };
                r.check(
                    format!("quotient-equivalence/composition/{names}"),
                    format!("F preserves composition along {names}"),
                    QUOT_REF,
                    || {
                        let gf = equivalence_on_map(&ctx, &compose_p(&g, &f)?)?;
                        let prod = equivalence_on_map(&ctx, &f)?.then(&equivalence_on_map(&ctx, &g)?)?;
                        Ok(verdict(gf.matrix() == prod.matrix(), || {
                            json!({ "F(gf)": matrix_json(gf.matrix()), "F(g)F(f)": matrix_json(prod.matrix()) })
                        }))
                    },
                );
            }
        }
    }

    for (k, (name, u)) in s.l_items.iter().enumerate() {
        let obj = &objs.items[q_count + k].1;
        r.check(
            format!("quotient-equivalence/essentially-surjective/{name}"),
            format!("F(pre({name})) is isomorphic to {name}"),
            QUOT_REF,
            || {
                let img = equivalence_to_repl(&ctx, obj)?;
                let iso = find_isomorphism(&img.comodule, u)?;
                Ok(verdict(iso.is_some(), || json!({ "dim": img.comodule.dim(), "expected": u.dim() })))
            },
        );
    }

    for a in 0..m {
        for b in 0..m {
            let (an, oa) = &objs.items[a];
            let (bn, ob) = &objs.items[b];
            r.check(
                format!("quotient-equivalence/monoidal/{an},{bn}"),
                format!("F({an} (x) {bn}) = F({an}) (x) F({bn}) inside res(Y (x) Y')"),
                "tensor functor",
                || {
                    let t = equivalence_to_repl(&ctx, &tensor_p(&ctx, oa, ob)?)?;
                    let fa = equivalence_to_repl(&ctx, oa)?;
                    let fb = equivalence_to_repl(&ctx, ob)?;
                    let got = Subspace::span(&t.inclusion);
                    let want = Subspace::span(&fa.inclusion.kron(&fb.inclusion));
                    Ok(verdict(got == want, || json!({ "dim": got.dim(), "expected": want.dim() })))
                },
            );
        }
    }

    naturality_checks(&ctx, &mut objs, r)?;

    for a in 0..q_count {
        for b in 0..q_count {
            let (an, bn) = (objs.items[a].0.clone(), objs.items[b].0.clone());
            let maps = objs.hom(&ctx, a, b)?.clone();
            r.check(
                format!("quotient-equivalence/triangle/{an},{bn}"),
                format!("F(phi) = (id (x) eps) phi_bar on Hom_P({an}, {bn})"),
                QUOT_REF,
                || {
                    for phi in &maps {
                        let via_f = equivalence_on_map(&ctx, phi)?;
                        let direct = &ctx.counit_on(phi.target.y.dim()) * &to_bar(&ctx, phi);
                        if via_f.matrix() != &direct {
                            return Ok(Err(json!({ "F": matrix_json(via_f.matrix()), "direct": matrix_json(&direct) })));
                        }
                    }
                    Ok(Ok(()))
                },
            );
        }
    }

    for a in 0..q_count {
        for b in 0..q_count {
            for c in 0..q_count {
                let names = format!("{},{},{}", objs.items[a].0, objs.items[b].0, objs.items[c].0);
                let f = generic(objs.hom(&ctx, a, b)?);
                let g = generic(objs.hom(&ctx, b, c)?);
                let (Some(f), Some(g)) = (f, g) else { continue };
                let zdim = objs.items[c].1.y.dim();
                r.check(
                    format!("quotient-equivalence/bar-composition/{names}"),
                    format!("composing bar maps along {names} matches composition in P"),
                    QUOT_REF,
                    || {
                        let via_bar = compose_bar(&ctx, zdim, &to_bar(&ctx, &g), &to_bar(&ctx, &f));
                        let direct = to_bar(&ctx, &compose_p(&g, &f)?);
                        Ok(verdict(via_bar == direct, || {
                            json!({ "bar": matrix_json(&via_bar), "direct": matrix_json(&direct) })
                        }))
                    },
                );
            }
        }
    }

    for (xn, x) in &s.g_items {
        for (yn, y) in &s.g_items {
            r.check(
                format!("quotient-equivalence/q-tensor/{xn},{yn}"),
                format!("q'({xn}) (x) q'({yn}) = q'({xn} (x) {yn})"),
                "tensor functor",
                || {
                    let lhs = tensor_p(&ctx, &quotient_functor_q(&ctx, x)?, &quotient_functor_q(&ctx, y)?)?;
                    let rhs = quotient_functor_q(&ctx, &tensor_comodule(x, y)?)?;
                    Ok(verdict(lhs.f == rhs.f, || json!({ "f": matrix_json(&lhs.f) })))
                },
            );
            r.check(
                format!("quotient-equivalence/q-maps/{xn},{yn}"),
                format!("F(q'(h)) = res(h) for h in Hom_G({xn}, {yn})"),
                QUOT_REF,
                || {
                    for h in hom_basis(x, y)? {
                        let hm = ComoduleMap::new(x.clone(), y.clone(), h)?;
                        let via = equivalence_on_map(&ctx, &quotient_functor_q_map(&ctx, &hm)?)?;
                        let res = restrict_map(d, &hm)?;
                        if via.matrix() != res.matrix() {
                            return Ok(Err(json!({ "F": matrix_json(via.matrix()), "res": matrix_json(res.matrix()) })));
                        }
                    }
                    Ok(Ok(()))
                },
            );
            r.check(
                format!("quotient-equivalence/deligne/{xn},{yn}"),
                format!("L-invariants of {xn}^v (x) {yn} round-trip through triples"),
                "Deligne tensor product identification",
                || {
                    let space = deligne_space(&ctx, x, y)?;
                    let solve_too = x.dim() * y.dim() <= DELIGNE_SOLVED_MAX_DIM;
                    for j in 0..space.cols() {
                        let v = space.column(j);
                        let obj = from_deligne(&ctx, x, y, &v)?;
                        let back = deligne_triple(&ctx, &obj)?;
                        if back != v {
                            return Ok(Err(json!({ "vector": matrix_json(&v), "returned": matrix_json(&back) })));
                        }
                        if solve_too && from_deligne_solved(&ctx, x, y, &v)? != obj {
                            return Ok(Err(json!({ "vector": matrix_json(&v), "solved_differs": true })));
                        }
                    }
                    Ok(Ok(()))
                },
            );
        }
    }

    for (name, obj) in &objs.items {
        r.check(
            format!("quotient-equivalence/deligne-object/{name}"),
            format!("{name} is recovered from its invariant vector"),
            "Deligne tensor product identification",
            || {
                let back = from_deligne(&ctx, &obj.x, &obj.y, &deligne_triple(&ctx, obj)?)?;
                Ok(verdict(back.f == obj.f, || json!({ "f": matrix_json(&obj.f), "returned": matrix_json(&back.f) })))
            },
        );
        r.check(
            format!("quotient-equivalence/free/{name}"),
            format!("p({name}) is free over O(A) of rank dim F({name})"),
            "Nichols-Zoeller freeness",
            || {
                let p = right_adjoint_p(&ctx, obj)?;
                let f_dim = equivalence_to_repl(&ctx, obj)?.comodule.dim();
                let ok = image_is_free(&ctx, obj) && p.dim() == f_dim * ctx.n_a();
                Ok(verdict(ok, || json!({ "dim_p": p.dim(), "dim_F": f_dim, "order_A": ctx.n_a() })))
            },
        );
    }

    for c in verify_quotient_axioms(&ctx, &s.g_items, &s.l_items)? {
        r.check(
            format!("quotient-equivalence/axiom/{}", c.name),
            format!("quotient axiom {}", c.name),
            "quotient functor axioms",
            || Ok(verdict(c.passed, || json!({ "detail": c.detail }))),
        );
    }
    Ok(())
}

/// `F(phi (x) psi)` against `F(phi) (x) F(psi)` on endomorphism bases of two
/// nontrivial objects.
fn naturality_checks(ctx: &QuotientContext, objs: &mut Objects, r: &mut Recorder) -> Result<(), Error> {
    let pick = |prefix: &str| {
        objs.items
            .iter()
            .position(|(n, o)| n.starts_with(prefix) && !n.ends_with("(I)") && o.image().dim() > 0)
    };
    let (Some(a), Some(b)) = (pick("q'"), pick("pre")) else { return Ok(()) };
    for (i, j) in [(a, a), (a, b), (b, b)] {
        let names = format!("{},{}", objs.items[i].0, objs.items[j].0);
        let phis = objs.hom(ctx, i, i)?.clone();
        let psis = objs.hom(ctx, j, j)?.clone();
        let (oi, oj) = (objs.items[i].1.clone(), objs.items[j].1.clone());
        r.check(
            format!("quotient-equivalence/monoidal-natural/{names}"),
            format!("F(phi (x) psi) = F(phi) (x) F(psi) on End({names})"),
            "tensor functor",
            || {
                let t = equivalence_to_repl(ctx, &tensor_p(ctx, &oi, &oj)?)?;
                let fi = equivalence_to_repl(ctx, &oi)?;
                let fj = equivalence_to_repl(ctx, &oj)?;
                let coords = Subspace::span(&t.inclusion)
                    .coordinates(&fi.inclusion.kron(&fj.inclusion))
                    .ok_or_else(|| Error::Verification("F(a) (x) F(b) leaves F(a (x) b)".into()))?;
                for phi in &phis {
                    for psi in &psis {
                        let lhs = &equivalence_on_map(ctx, &tensor_p_maps(ctx, phi, psi)?)?.matrix().clone() * &coords;
                        let fphi = equivalence_on_map(ctx, phi)?;
                        let fpsi = equivalence_on_map(ctx, psi)?;
                        let rhs = &coords * &fphi.matrix().kron(fpsi.matrix());
                        if lhs != rhs {
                            return Ok(Err(json!({ "lhs": matrix_json(&lhs), "rhs": matrix_json(&rhs) })));
                        }
                    }
                }
                Ok(Ok(()))
            },
        );
    }
    Ok(())
}

// --------------------------------------------------------------- etale

const ETALE_REF: &str = "separable algebras and module splittings";

fn etale_suite(s: &Setup, r: &mut Recorder) -> Result<(), Error> {
    let f = s.field();
    let d = &s.datum;
    for (role, grp) in groups_of(d) {
        let o = Arc::new(function_algebra(grp, f));
        let sec = splitting_section(&o)?;
        let rep = verify_section(&sec)?;
        for (prop, ok) in [
            ("splits", rep.splits),
            ("left-linear", rep.left_linear),
            ("right-linear", rep.right_linear),
            ("colinear", rep.colinear),
        ] {
            r.check(
                format!("etale-splitting/section/{role}/{prop}"),
                format!("the section of m on O({}) is {prop}", grp.name()),
                ETALE_REF,
                || Ok(verdict(ok, || json!({ "s1": matrix_json(&sec.s1) }))),
            );
        }
        r.check(
            format!("etale-splitting/section/{role}/solved"),
            format!("the solved separability element of O({}) equals the one built from the integral", grp.name()),
            ETALE_REF,
            || {
                let alg = AlgebraObject::new("O", regular_comodule(&o), o.mult().clone(), o.unit().clone())?;
                let solved = alg.separability_element()?;
                Ok(verdict(solved == sec.s1, || {
                    json!({ "solved": matrix_json(&solved), "integral": matrix_json(&sec.s1) })
                }))
            },
        );
    }

    let ctx = QuotientContext::new(d.clone())?;
    let s1 = splitting_section(&d.o_a)?.s1;
    let mut modules: Vec<(String, OModuleObject)> = Vec::new();
    for (name, x) in &s.g_items {
        modules.push((format!("free({name})"), free_omodule(&ctx.algebra, x)?));
    }
    if !ctx.field().divides(ctx.n_a()) {
        for (name, u) in &s.l_items {
            modules.push((format!("p(pre({name}))"), right_adjoint_p(&ctx, &preimage_of(&ctx, u)?)?));
        }
    }
    for (name, m) in &modules {
        r.check(
            format!("etale-splitting/module/{name}"),
            format!("{name} is an O(A)-linear colinear summand of O(A) (x) {name}"),
            ETALE_REF,
            || {
                let sp = split_module(m, &s1)?;
                let summand = summand_rank(m, &sp);
                let ok = sp.splits && sp.o_linear && sp.colinear && sp.idempotent && summand == m.dim();
                Ok(verdict(ok, || {
                    json!({
                        "splits": sp.splits, "o_linear": sp.o_linear, "colinear": sp.colinear,
                        "idempotent": sp.idempotent, "summand_rank": summand, "dim": m.dim(),
                    })
                }))
            },
        );
        r.check(
            format!("etale-splitting/rigid/{name}"),
            format!("{name} has a dual over O(A) with both snake identities"),
            "rigidity of modules over a separable algebra",
            || {
                let rep = rigidity(m, &s1)?;
                Ok(verdict(rep.all(), || {
                    json!({
                        "ev_colinear": rep.ev_colinear, "ev_balanced": rep.ev_balanced,
                        "ev_o_linear": rep.ev_o_linear, "coev_invariant": rep.coev_invariant,
                        "snake_left": rep.snake_left, "snake_right": rep.snake_right,
                    })
                }))
            },
        );
    }

    let unit = free_omodule(&ctx.algebra, &trivial_comodule(&d.o_g, 1))?;
    for (xn, x) in &s.g_items {
        r.check(
            format!("etale-splitting/tensor-unit/{xn}"),
            format!("free({xn}) (x)_O free(I) has the dimension of free({xn})"),
            ETALE_REF,
            || {
                let m = free_omodule(&ctx.algebra, x)?;
                let (t, _) = omodule_tensor(&m, &unit)?;
                Ok(verdict(t.dim() == m.dim(), || json!({ "dim": t.dim(), "expected": m.dim() })))
            },
        );
        for (yn, y) in s.g_items.iter().filter(|(_, y)| x.dim() * y.dim() <= TENSOR_FREE_MAX_DIM) {
            r.check(
                format!("etale-splitting/tensor-free/{xn},{yn}"),
                format!("free({xn}) (x)_O free({yn}) = free({xn} (x) {yn})"),
                ETALE_REF,
                || {
                    let iso = free_tensor_iso(&ctx.algebra, x, y)?;
                    Ok(verdict(iso.is_some(), || json!({ "iso": null })))
                },
            );
        }
    }

    let order = d.g.order();
    for p in (2..=order as u64).filter(|&p| order as u64 % p == 0 && (2..p).all(|q| p % q != 0)) {
        r.check(
            format!("etale-splitting/rejects/F{p}"),
            format!("the splitting is refused for O({}) over F{p}", d.g.name()),
            ETALE_REF,
            || {
                let o = Arc::new(function_algebra(&d.g, FieldSpec::prime(p)?));
                let res = splitting_section(&o);
                Ok(verdict(matches!(res, Err(Error::EtaleHypothesis { .. })), || json!({ "accepted": res.is_ok() })))
            },
        );
    }
    Ok(())
}

// --------------------------------------------------------- base change

const BC_REF: &str = "base change along a separable field extension";

fn base_change_suite(s: &Setup, r: &mut Recorder) -> Result<(), Error> {
    let f = s.field();
    let d = &s.datum;
    let ext = match &s.extension {
        Some(e) => e.clone(),
        None => SeparableExtension::default_quadratic(f)?,
    };
    r.check(
        format!("base-change/{}/separable", ext.name),
        format!("{} has a nonzero trace-form discriminant", ext.name),
        BC_REF,
        || Ok(verdict(!ext.discriminant.is_zero(), || json!({ "discriminant": ext.discriminant.to_string() }))),
    );
    for e in [ext, SeparableExtension::trivial(f)] {
        let bc = base_change_category(&e, &d.o_g)?;
        for (xn, x) in &s.g_items {
            for (yn, y) in &s.g_items {
                let rep = bc.check_pair(x, y)?;
                let w = json!({ "dim_hom_k": rep.dim_hom_k, "dim_hom": rep.dim_hom, "degree": rep.degree });
                r.check(
                    format!("base-change/{}/hom-dim/{xn},{yn}", e.name),
                    format!("dim Hom_K(K{xn}, K{yn}) = [K:k] dim Hom({xn}, {yn})"),
                    BC_REF,
                    || Ok(verdict(rep.formula_holds, || w.clone())),
                );
                r.check(
                    format!("base-change/{}/composition/{xn},{yn}", e.name),
                    format!("bar composition agrees with K-module composition on ({xn}, {yn})"),
                    BC_REF,
                    || Ok(verdict(rep.composition_agrees, || w.clone())),
                );
            }
        }
    }
    Ok(())
}
