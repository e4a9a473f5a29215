//! Restriction and induction along `O(G) -> O(L)` for a normal subgroup `L`.
//!
//! Induction is the cotensor product `U [] O(G)`, realized as an equalizer
//! inside `U (x) O(G)`. The counit `eps_U`, the adjunction bijection, and the
//! Takeuchi isomorphism are all checked by exact rank computations.

use std::sync::Arc;

use serde::Serialize;

use crate::comod::{
    dual_comodule, hom_basis, regular_comodule, same_algebra, subcomodule, tensor_comodule,
    trivial_comodule, Comodule, ComoduleMap,
};
use crate::error::Error;
use crate::exactlin::{inverse, kernel_basis, rank, solve, FieldSpec, Matrix, QuotientSpace, Subspace};
use crate::groups::{is_normal, normality_witness, FiniteGroup, QuotientGroup, Subgroup};
use crate::hopf::{hopf_surjection_from_quotient, HopfAlgebra};

/// `1 -> L -> G -> A = G/L -> 1` together with `q*: O(G) -> O(L)` and
/// `f*: O(A) -> O(G)`.
#[derive(Clone, Debug)]
pub struct QuotientDatum {
    pub g: FiniteGroup,
    pub l: Subgroup,
    pub l_group: FiniteGroup,
    pub quotient: QuotientGroup,
    pub o_g: Arc<HopfAlgebra>,
    pub o_l: Arc<HopfAlgebra>,
    pub o_a: Arc<HopfAlgebra>,
    pub q_star: Matrix,
    pub f_star: Matrix,
}

impl QuotientDatum {
    pub fn new(g: &FiniteGroup, l: &Subgroup, field: FieldSpec) -> Result<Self, Error> {
        if !is_normal(g, l) {
            let (member, by) = normality_witness(g, l).expect("witness for non-normal subgroup");
            return Err(Error::NotNormal { member, by });
        }
        let maps = hopf_surjection_from_quotient(g, l, field)?;
        Ok(QuotientDatum {
            g: g.clone(),
            l: l.clone(),
            l_group: maps.subgroup_group,
            quotient: maps.quotient,
            o_g: Arc::new(maps.o_g),
            o_l: Arc::new(maps.o_l),
            o_a: Arc::new(maps.o_a),
            q_star: maps.q_star,
            f_star: maps.f_star,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.o_g.field()
    }

    /// `|G/L|`.
    pub fn index(&self) -> usize {
        self.o_a.dim()
    }

    /// `O(A)` as a `G`-comodule: coaction `(id (x) f*) Delta_A`.
    pub fn oa_comodule(&self) -> Comodule {
        regular_comodule(&self.o_a)
            .push_along(self.o_g.clone(), &self.f_star)
            .expect("f* has the right shape")
    }

    /// An `A`-comodule viewed as a `G`-comodule.
    pub fn pullback(&self, x: &Comodule) -> Result<Comodule, Error> {
        self.expect_algebra(x, &self.o_a)?;
        x.push_along(self.o_g.clone(), &self.f_star)
    }

    fn expect_algebra(&self, x: &Comodule, o: &Arc<HopfAlgebra>) -> Result<(), Error> {
        if same_algebra(x.algebra(), o) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }
}

/// `res(V)`: coaction `(id (x) q*) rho_V`.
pub fn restrict(d: &QuotientDatum, v: &Comodule) -> Result<Comodule, Error> {
    d.expect_algebra(v, &d.o_g)?;
    v.push_along(d.o_l.clone(), &d.q_star)
}

/// `res` on maps is the identity on matrices.
pub fn restrict_map(d: &QuotientDatum, phi: &ComoduleMap) -> Result<ComoduleMap, Error> {
    ComoduleMap::new(
        restrict(d, phi.source())?,
        restrict(d, phi.target())?,
        phi.matrix().clone(),
    )
}

/// `U [] O(G)` with its embedding into `U (x) O(G)` (columns are the echelon
/// basis of the equalizer).
#[derive(Clone, Debug)]
pub struct Cotensor {
    pub comodule: Comodule,
    pub embedding: Matrix,
    pub source_dim: usize,
}

/// Equalizer of `rho_U (x) id` and `id (x) (q* (x) id) Delta_G` with the
/// coaction `id (x) Delta_G`.
pub fn cotensor(d: &QuotientDatum, u: &Comodule) -> Result<Cotensor, Error> {
    d.expect_algebra(u, &d.o_l)?;
    let f = d.field();
    let n = d.o_g.dim();
    let du = u.dim();
    let lhs = u.coaction().kron(&Matrix::identity(f, n));
    let right_leg = &d.q_star.kron(&Matrix::identity(f, n)) * d.o_g.comult();
    let rhs = Matrix::identity(f, du).kron(&right_leg);
    let eq = kernel_basis(&(&lhs - &rhs));
    let ambient = tensor_comodule(&trivial_comodule(&d.o_g, du), &regular_comodule(&d.o_g))?;
    let inc = subcomodule(&ambient, &eq)?;
    Ok(Cotensor {
        comodule: inc.source().clone(),
        embedding: inc.matrix().clone(),
        source_dim: du,
    })
}

/// `ind(phi) = (phi (x) id) restricted to the equalizers`.
pub fn cotensor_map(d: &QuotientDatum, phi: &ComoduleMap) -> Result<(Cotensor, Cotensor, ComoduleMap), Error> {
    let src = cotensor(d, phi.source())?;
    let tgt = cotensor(d, phi.target())?;
    let ambient = phi.matrix().kron(&Matrix::identity(d.field(), d.o_g.dim()));
    let image = &ambient * &src.embedding;
    let coords = Subspace::span(&tgt.embedding)
        .coordinates(&image)
        .ok_or_else(|| Error::Verification("induced map leaves the equalizer".into()))?;
    let map = ComoduleMap::new(src.comodule.clone(), tgt.comodule.clone(), coords)?;
    Ok((src, tgt, map))
}

/// `eps_U: res(ind U) -> U`, `u (x) g -> u eps(g)`.
pub fn counit_eps(d: &QuotientDatum, u: &Comodule) -> Result<ComoduleMap, Error> {
    let ind = cotensor(d, u)?;
    counit_from(d, u, &ind)
}

fn counit_from(d: &QuotientDatum, u: &Comodule, ind: &Cotensor) -> Result<ComoduleMap, Error> {
    let f = d.field();
    let m = &Matrix::identity(f, u.dim()).kron(d.o_g.counit()) * &ind.embedding;
    ComoduleMap::new(restrict(d, &ind.comodule)?, u.clone(), m)
}

#[derive(Clone, Debug, Serialize)]
pub struct AdjunctionReport {
    pub dim_hom_g: usize,
    pub dim_hom_l: usize,
    pub image_rank: usize,
    pub bijective: bool,
}

/// Checks that `f -> eps_U o res(f)` is a bijection
/// `Hom_G(V, ind U) -> Hom_L(res V, U)`.
pub fn adjunction_check(d: &QuotientDatum, v: &Comodule, u: &Comodule) -> Result<AdjunctionReport, Error> {
    let ind = cotensor(d, u)?;
    let eps = counit_from(d, u, &ind)?;
    let res_v = restrict(d, v)?;
    let left = hom_basis(v, &ind.comodule)?;
    let right = hom_basis(&res_v, u)?;
    let (dv, du) = (v.dim(), u.dim());
    let f = d.field();
    let mut images = Matrix::zeros(f, dv * du, 0);
    for phi in &left {
        images = images.hstack(&(eps.matrix() * phi).flatten())?;
    }
    let mut targets = Matrix::zeros(f, dv * du, 0);
    for psi in &right {
        targets = targets.hstack(&psi.flatten())?;
    }
    let image_rank = rank(&images);
    let lands = Subspace::span(&targets).contains(&images);
    Ok(AdjunctionReport {
        dim_hom_g: left.len(),
        dim_hom_l: right.len(),
        image_rank,
        bijective: lands && image_rank == left.len() && image_rank == right.len(),
    })
}

/// `M (x)_{O(A)} O(G)` for a right `O(A)`-module `M` given by the matrices
/// of right multiplication by each basis element of `O(A)`: the quotient of
/// `M (x) O(G)` by `(m a) (x) h - m (x) f*(a) h`.
fn balanced_quotient(d: &QuotientDatum, right_action: &[Matrix], dm: usize) -> Result<QuotientSpace, Error> {
    let f = d.field();
    let n = d.o_g.dim();
    let mut rel = Matrix::zeros(f, dm * n, 0);
    for (a, act) in right_action.iter().enumerate() {
        let fa = d.f_star.column(a);
        let left_on_g = &d.o_g.mult().clone() * &fa.kron(&Matrix::identity(f, n));
        let block = &act.kron(&Matrix::identity(f, n)) - &Matrix::identity(f, dm).kron(&left_on_g);
        rel = rel.hstack(&block)?;
    }
    Ok(QuotientSpace::new(&Subspace::span(&rel)))
}

#[derive(Clone, Debug)]
pub struct TakeuchiMaps {
    pub phi: Matrix,
    pub psi: Matrix,
    /// `dim O(G) (x)_{O(A)} O(G)`.
    pub source_dim: usize,
    /// `dim O(L) (x) O(G)`.
    pub target_dim: usize,
    pub well_defined: bool,
    pub inverse_pair: bool,
}

/// `phi: O(G) (x)_{O(A)} O(G) -> O(L) (x) O(G)`,
/// `g (x) h -> sum q*(g_(1)) (x) g_(2) h`, with inverse
/// `psi(g (x) h) = sum g_(1) (x) S(g_(2)) h` computed on a lift of `g`.
pub fn takeuchi_phi(d: &QuotientDatum) -> Result<TakeuchiMaps, Error> {
    let f = d.field();
    let n = d.o_g.dim();
    let nl = d.o_l.dim();
    let id_g = Matrix::identity(f, n);
    let m = d.o_g.mult();
    let right_action: Vec<Matrix> = (0..d.o_a.dim())
        .map(|a| d.o_g.right_mult_by(&d.f_star.column(a)))
        .collect();
    let quo = balanced_quotient(d, &right_action, n)?;
    let phi_tilde = &d.q_star.kron(m) * &d.o_g.comult().kron(&id_g);
    let rel_basis = kernel_basis(&quo.projection);
    let phi_ok = (&phi_tilde * &rel_basis).is_zero();
    let phi = &phi_tilde * &quo.lift;

    let psi_bar = &(&id_g.kron(m) * &id_g.kron(&d.o_g.antipode().kron(&id_g)))
        * &d.o_g.comult().kron(&id_g);
    let section = d.q_star.transpose();
    let kernel_q = kernel_basis(&d.q_star);
    let psi_ok = (&(&quo.projection * &psi_bar) * &kernel_q.kron(&id_g)).is_zero();
    let psi = &(&quo.projection * &psi_bar) * &section.kron(&id_g);

    let inverse_pair = (&phi * &psi).is_identity() && (&psi * &phi).is_identity();
    Ok(TakeuchiMaps {
        source_dim: quo.dim(),
        target_dim: nl * n,
        well_defined: phi_ok && psi_ok,
        inverse_pair,
        phi,
        psi,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TakeuchiInstance {
    pub source_dim: usize,
    pub target_dim: usize,
    pub well_defined: bool,
    pub invertible: bool,
}

/// `(U [] O(G)) (x)_{O(A)} O(G) -> U (x) O(G)`, `u (x) g (x) h -> u (x) g h`,
/// checked to be well defined and invertible for one comodule `U`.
pub fn takeuchi_instance(d: &QuotientDatum, u: &Comodule) -> Result<TakeuchiInstance, Error> {
    let f = d.field();
    let n = d.o_g.dim();
    let du = u.dim();
    let ind = cotensor(d, u)?;
    let space = Subspace::span(&ind.embedding);
    let mut right_action = Vec::with_capacity(d.o_a.dim());
    for a in 0..d.o_a.dim() {
        let op = Matrix::identity(f, du).kron(&d.o_g.right_mult_by(&d.f_star.column(a)));
        right_action.push(
            space
                .restrict(&op, &space)
                .ok_or_else(|| Error::Verification("O(A) does not act on the equalizer".into()))?,
        );
    }
    let k = ind.comodule.dim();
    let quo = balanced_quotient(d, &right_action, k)?;
    let mult = &Matrix::identity(f, du).kron(d.o_g.mult()) * &ind.embedding.kron(&Matrix::identity(f, n));
    let well_defined = (&mult * &kernel_basis(&quo.projection)).is_zero();
    let induced = &mult * &quo.lift;
    Ok(TakeuchiInstance {
        source_dim: quo.dim(),
        target_dim: du * n,
        well_defined,
        invertible: inverse(&induced).is_some(),
    })
}

/// The colinear isomorphism `ind(res V) -> V (x) O(A)` given by
/// `v (x) g -> sum v_(0) (x) S(v_(1)) g` on the equalizer.
pub fn ind_res_iso(d: &QuotientDatum, v: &Comodule) -> Result<ComoduleMap, Error> {
    let f = d.field();
    let n = d.o_g.dim();
    let dv = v.dim();
    let ind = cotensor(d, &restrict(d, v)?)?;
    let id_v = Matrix::identity(f, dv);
    let id_g = Matrix::identity(f, n);
    let theta_inv = &(&id_v.kron(d.o_g.mult()) * &id_v.kron(&d.o_g.antipode().kron(&id_g)))
        * &v.coaction().kron(&id_g);
    let image = &theta_inv * &ind.embedding;
    let frame = id_v.kron(&d.f_star);
    let coords = solve(&frame, &image)?
        .filter(|c| &frame * c == image)
        .ok_or_else(|| Error::Verification("image is not inside V (x) O(A)".into()))?;
    let target = tensor_comodule(v, &d.oa_comodule())?;
    let map = ComoduleMap::new(ind.comodule, target, coords)?;
    if inverse(map.matrix()).is_none() {
        return Err(Error::Verification("ind(res V) -> V (x) O(A) is not invertible".into()));
    }
    Ok(map)
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactnessReport {
    pub dims: [usize; 3],
    pub induced_dims: [usize; 3],
    pub composite_zero: bool,
    pub injective: bool,
    pub surjective: bool,
    pub middle_exact: bool,
}

impl ExactnessReport {
    pub fn exact(&self) -> bool {
        self.induced_dims[1] == self.induced_dims[0] + self.induced_dims[2]
            && self.composite_zero
            && self.injective
            && self.surjective
            && self.middle_exact
    }
}

/// Applies `ind` to `0 -> U' -> U -> U'' -> 0` given by an injection and a
/// surjection, and checks the result is short exact.
pub fn ses_exactness(d: &QuotientDatum, inc: &ComoduleMap, proj: &ComoduleMap) -> Result<ExactnessReport, Error> {
    let (a, _, ia) = cotensor_map(d, inc)?;
    let (_, c, pb) = cotensor_map(d, proj)?;
    let composite = pb.matrix() * ia.matrix();
    let ker_p = kernel_basis(pb.matrix()).cols();
    Ok(ExactnessReport {
        dims: [inc.source().dim(), inc.target().dim(), proj.target().dim()],
        induced_dims: [a.comodule.dim(), ia.target().dim(), c.comodule.dim()],
        composite_zero: composite.is_zero(),
        injective: ia.is_injective(),
        surjective: pb.is_surjective(),
        middle_exact: ia.rank() == ker_p,
    })
}

/// `U` as a quotient of `res(ind U)` (via `eps_U`) and as a subobject of
/// `res((ind U^v)^v)` (via the transpose of `eps_{U^v}`).
pub fn sandwich(d: &QuotientDatum, u: &Comodule) -> Result<(ComoduleMap, ComoduleMap), Error> {
    let surj = counit_eps(d, u)?;
    let ud = dual_comodule(u);
    let ind_dual = cotensor(d, &ud)?;
    let eps_dual = counit_from(d, &ud, &ind_dual)?;
    let w = dual_comodule(&ind_dual.comodule);
    let inj = ComoduleMap::new(u.clone(), restrict(d, &w)?, eps_dual.matrix().transpose())?;
    Ok((surj, inj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comod::{find_isomorphism, hom_space, invariants, quotient_comodule, rep_over};
    use crate::groups::catalog;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn s3_a3() -> QuotientDatum {
        let g = catalog("S3").unwrap();
        let l = Subgroup::by_name(&g, "A3").unwrap();
        QuotientDatum::new(&g, &l, Q).unwrap()
    }

    fn s3_rep(d: &QuotientDatum, r: Matrix, s: Matrix) -> Comodule {
        let k = r.rows();
        let mut imgs = Vec::new();
        for b in 0..2 {
            for a in 0..3 {
                let mut m = Matrix::identity(Q, k);
                for _ in 0..a {
                    m = &m * &r;
                }
                if b == 1 {
                    m = &m * &s;
                }
                imgs.push(m);
            }
        }
        rep_over(&d.o_g, &d.g, &imgs).unwrap()
    }

    fn std(d: &QuotientDatum) -> Comodule {
        s3_rep(
            d,
            Matrix::from_i64(Q, &[vec![0, -1], vec![1, -1]]),
            Matrix::from_i64(Q, &[vec![0, 1], vec![1, 0]]),
        )
    }

    fn sign(d: &QuotientDatum) -> Comodule {
        s3_rep(d, Matrix::identity(Q, 1), Matrix::from_i64(Q, &[vec![-1]]))
    }

    #[test]
    fn non_normal_rejected() {
        let g = catalog("S3").unwrap();
        let l = Subgroup::by_name(&g, "gen:s").unwrap();
        assert!(matches!(QuotientDatum::new(&g, &l, Q), Err(Error::NotNormal { .. })));
    }

    #[test]
    fn restriction_examples() {
        let d = s3_a3();
        let triv = trivial_comodule(&d.o_g, 1);
        assert_eq!(restrict(&d, &triv).unwrap(), trivial_comodule(&d.o_l, 1));
        assert_eq!(restrict(&d, &sign(&d)).unwrap(), trivial_comodule(&d.o_l, 1));
        let rs = restrict(&d, &std(&d)).unwrap();
        assert!(rs.axiom_failure().is_none());
        assert_eq!(invariants(&rs).0.cols(), 0);
    }

    #[test]
    fn cotensor_of_unit_is_oa() {
        let d = s3_a3();
        let ind = cotensor(&d, &trivial_comodule(&d.o_l, 1)).unwrap();
        assert_eq!(ind.comodule.dim(), 2);
        assert_eq!(Subspace::span(&ind.embedding), Subspace::span(&d.f_star));
        assert!(find_isomorphism(&ind.comodule, &d.oa_comodule()).unwrap().is_some());
    }

    #[test]
    fn cotensor_of_regular_is_regular() {
        let d = s3_a3();
        let ind = cotensor(&d, &regular_comodule(&d.o_l)).unwrap();
        assert_eq!(ind.comodule.dim(), 6);
        assert!(find_isomorphism(&ind.comodule, &regular_comodule(&d.o_g)).unwrap().is_some());
    }

    #[test]
    fn counit_is_surjective() {
        let d = s3_a3();
        for u in [trivial_comodule(&d.o_l, 1), regular_comodule(&d.o_l), restrict(&d, &std(&d)).unwrap()] {
            let eps = counit_eps(&d, &u).unwrap();
            assert!(eps.is_surjective());
        }
        let eps = counit_eps(&d, &trivial_comodule(&d.o_l, 1)).unwrap();
        assert_eq!(eps.rank(), 1);
    }

    #[test]
    fn adjunction_examples() {
        let d = s3_a3();
        let triv_g = trivial_comodule(&d.o_g, 1);
        let triv_l = trivial_comodule(&d.o_l, 1);
        let r = adjunction_check(&d, &triv_g, &triv_l).unwrap();
        assert!(r.bijective && r.dim_hom_g == 1);
        let st = std(&d);
        let rs = restrict(&d, &st).unwrap();
        let r = adjunction_check(&d, &st, &rs).unwrap();
        assert!(r.bijective);
        assert_eq!(r.dim_hom_g, hom_space(&rs, &rs).unwrap().cols());
        let r = adjunction_check(&d, &sign(&d), &regular_comodule(&d.o_l)).unwrap();
        assert!(r.bijective);
    }

    #[test]
    fn takeuchi_s3_a3() {
        let d = s3_a3();
        let t = takeuchi_phi(&d).unwrap();
        assert_eq!((t.source_dim, t.target_dim), (18, 18));
        assert!(t.well_defined && t.inverse_pair);
    }

    #[test]
    fn takeuchi_extremes() {
        let g = catalog("S3").unwrap();
        for l in [Subgroup::trivial(&g), Subgroup::whole(&g)] {
            let d = QuotientDatum::new(&g, &l, Q).unwrap();
            let t = takeuchi_phi(&d).unwrap();
            assert_eq!(t.source_dim, l.order() * 6);
            assert!(t.well_defined && t.inverse_pair);
        }
    }

    #[test]
    fn takeuchi_per_comodule() {
        let d = s3_a3();
        for u in [trivial_comodule(&d.o_l, 1), regular_comodule(&d.o_l), restrict(&d, &std(&d)).unwrap()] {
            let t = takeuchi_instance(&d, &u).unwrap();
            assert_eq!(t.source_dim, t.target_dim);
            assert!(t.well_defined && t.invertible);
        }
    }

    #[test]
    fn ind_res_examples() {
        let d = s3_a3();
        for (v, k) in [(trivial_comodule(&d.o_g, 1), 2), (std(&d), 4), (regular_comodule(&d.o_g), 12)] {
            let iso = ind_res_iso(&d, &v).unwrap();
            assert_eq!(iso.source().dim(), k);
        }
    }

    #[test]
    fn induction_is_exact_on_regular_filtration() {
        let d = s3_a3();
        let reg = regular_comodule(&d.o_l);
        let (inv, _) = invariants(&reg);
        let inc = subcomodule(&reg, &inv).unwrap();
        let proj = quotient_comodule(&reg, &inv).unwrap();
        let r = ses_exactness(&d, &inc, &proj).unwrap();
        assert_eq!(r.induced_dims, [2, 6, 4]);
        assert!(r.exact());
    }

    #[test]
    fn sandwich_exists() {
        let d = s3_a3();
        let u = restrict(&d, &std(&d)).unwrap();
        let (surj, inj) = sandwich(&d, &u).unwrap();
        assert!(surj.is_surjective() && inj.is_injective());
    }
}
