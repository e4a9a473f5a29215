//! Right comodules over a finite-dimensional Hopf algebra.
//!
//! A coaction `rho: V -> V (x) O` is stored together with its components
//! `C_a = (id (x) e^a) rho`, where `e^a` is the dual basis of `O`. Everything
//! downstream works with components: coassociativity reads
//! `C_a C_b = sum_c Delta[(a,b),c] C_c`, and a map is colinear exactly when it
//! intertwines the two component families.

use std::sync::Arc;

use crate::error::Error;
use crate::exactlin::{
    find_invertible_combination, intertwiners, kernel_basis, rank, FieldSpec, Matrix,
    QuotientSpace, Subspace,
};
use crate::groups::FiniteGroup;
use crate::hopf::{function_algebra, HopfAlgebra};

#[derive(Clone, Debug)]
pub struct Comodule {
    algebra: Arc<HopfAlgebra>,
    coaction: Matrix,
    components: Vec<Matrix>,
}

impl PartialEq for Comodule {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.coaction == other.coaction
    }
}

impl Eq for Comodule {}

pub fn same_algebra(a: &Arc<HopfAlgebra>, b: &Arc<HopfAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn split_components(coaction: &Matrix, d: usize, d_o: usize) -> Vec<Matrix> {
    (0..d_o)
        .map(|a| Matrix::from_fn(coaction.field(), d, d, |i, j| coaction.get(i * d_o + a, j).clone()))
        .collect()
}

fn join_components(components: &[Matrix], d: usize, field: FieldSpec) -> Matrix {
    let d_o = components.len();
    Matrix::from_fn(field, d * d_o, d, |r, j| components[r % d_o].get(r / d_o, j).clone())
}

/// `sum_a coeffs[a] * mats[a]`, skipping zero coefficients.
fn combine(coeffs: impl Iterator<Item = (usize, crate::exactlin::Scalar)>, mats: &[Matrix], d: usize, field: FieldSpec) -> Matrix {
    let mut acc = Matrix::zeros(field, d, d);
    for (a, c) in coeffs {
        if !c.is_zero() {
            acc = &acc + &mats[a].scale(&c);
        }
    }
    acc
}

impl Comodule {
    /// Validates coassociativity and counitality.
    pub fn new(algebra: Arc<HopfAlgebra>, coaction: Matrix) -> Result<Self, Error> {
        let c = Self::new_unchecked(algebra, coaction)?;
        if let Some(why) = c.axiom_failure() {
            return Err(Error::NotComodule(why));
        }
        Ok(c)
    }

    /// Shape-checked but axiom-unchecked construction.
    pub fn new_unchecked(algebra: Arc<HopfAlgebra>, coaction: Matrix) -> Result<Self, Error> {
        let d_o = algebra.dim();
        let d = coaction.cols();
        if coaction.rows() != d * d_o || coaction.field() != algebra.field() {
            return Err(Error::DimensionMismatch(format!(
                "coaction is {}x{}, expected {}x{}",
                coaction.rows(),
                coaction.cols(),
                d * d_o,
                d
            )));
        }
        let components = split_components(&coaction, d, d_o);
        Ok(Comodule {
            algebra,
            coaction,
            components,
        })
    }

    pub fn from_components(algebra: Arc<HopfAlgebra>, components: Vec<Matrix>, dim: usize) -> Result<Self, Error> {
        if components.len() != algebra.dim()
            || components.iter().any(|c| c.rows() != dim || c.cols() != dim)
        {
            return Err(Error::DimensionMismatch("coaction components".into()));
        }
        let coaction = join_components(&components, dim, algebra.field());
        Ok(Comodule {
            algebra,
            coaction,
            components,
        })
    }

    /// Description of the first failing comodule axiom, if any.
    pub fn axiom_failure(&self) -> Option<String> {
        let o = &self.algebra;
        let (d, d_o, f) = (self.dim(), o.dim(), o.field());
        let counit = combine((0..d_o).map(|a| (a, o.counit().get(0, a).clone())), &self.components, d, f);
        if !counit.is_identity() {
            return Some("counit triangle fails".into());
        }
        let delta = o.comult();
        for a in 0..d_o {
            for b in 0..d_o {
                let lhs = &self.components[a] * &self.components[b];
                let rhs = combine(
                    (0..d_o).map(|c| (c, delta.get(a * d_o + b, c).clone())),
                    &self.components,
                    d,
                    f,
                );
                if lhs != rhs {
                    return Some(format!("coassociativity fails at components ({a}, {b})"));
                }
            }
        }
        None
    }

    pub fn dim(&self) -> usize {
        self.coaction.cols()
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field()
    }

    pub fn algebra(&self) -> &Arc<HopfAlgebra> {
        &self.algebra
    }

    pub fn coaction(&self) -> &Matrix {
        &self.coaction
    }

    pub fn components(&self) -> &[Matrix] {
        &self.components
    }

    pub fn component(&self, a: usize) -> &Matrix {
        &self.components[a]
    }

    pub fn identity_map(&self) -> ComoduleMap {
        ComoduleMap {
            source: self.clone(),
            target: self.clone(),
            matrix: Matrix::identity(self.field(), self.dim()),
        }
    }

    /// Coaction pushed along a Hopf algebra map `phi: O -> O'`:
    /// `(id (x) phi) rho`.
    pub fn push_along(&self, target: Arc<HopfAlgebra>, phi: &Matrix) -> Result<Comodule, Error> {
        if phi.cols() != self.algebra.dim() || phi.rows() != target.dim() {
            return Err(Error::DimensionMismatch("Hopf map shape".into()));
        }
        let comps = (0..target.dim())
            .map(|b| combine((0..phi.cols()).map(|a| (a, phi.get(b, a).clone())), &self.components, self.dim(), self.field()))
            .collect();
        Comodule::from_components(target, comps, self.dim())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComoduleMap {
    source: Comodule,
    target: Comodule,
    matrix: Matrix,
}

impl ComoduleMap {
    /// Validates shape and colinearity.
    pub fn new(source: Comodule, target: Comodule, matrix: Matrix) -> Result<Self, Error> {
        if !same_algebra(source.algebra(), target.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch(format!(
                "map is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        if let Some(a) = colinearity_defect(&source, &target, &matrix) {
            return Err(Error::NotColinear(format!("component {a}")));
        }
        Ok(ComoduleMap {
            source,
            target,
            matrix,
        })
    }

    pub fn source(&self) -> &Comodule {
        &self.source
    }

    pub fn target(&self) -> &Comodule {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        rank(&self.matrix)
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    /// `other` after `self`.
    pub fn then(&self, other: &ComoduleMap) -> Result<ComoduleMap, Error> {
        if self.target != other.source {
            return Err(Error::DimensionMismatch("composing non-adjacent maps".into()));
        }
        Ok(ComoduleMap {
            source: self.source.clone(),
            target: other.target.clone(),
            matrix: &other.matrix * &self.matrix,
        })
    }
}

/// First component index at which `matrix` fails to intertwine.
pub fn colinearity_defect(source: &Comodule, target: &Comodule, matrix: &Matrix) -> Option<usize> {
    (0..source.components.len())
        .find(|&a| &target.components[a] * matrix != matrix * &source.components[a])
}

pub fn is_colinear(source: &Comodule, target: &Comodule, matrix: &Matrix) -> bool {
    colinearity_defect(source, target, matrix).is_none()
}

/// `n` copies of the unit object: `rho(v) = v (x) 1`.
pub fn trivial_comodule(o: &Arc<HopfAlgebra>, n: usize) -> Comodule {
    let coaction = Matrix::identity(o.field(), n).kron(o.unit());
    Comodule::new_unchecked(o.clone(), coaction).expect("shape")
}

/// `O` coacting on itself through the comultiplication.
pub fn regular_comodule(o: &Arc<HopfAlgebra>) -> Comodule {
    Comodule::new_unchecked(o.clone(), o.comult().clone()).expect("shape")
}

/// The `O(G)`-comodule `rho(v) = sum_g M_g v (x) x^g` of a representation
/// given by one matrix per group element (in element order).
pub fn rep_from_matrices(g: &FiniteGroup, images: &[Matrix], field: FieldSpec) -> Result<Comodule, Error> {
    rep_over(&Arc::new(function_algebra(g, field)), g, images)
}

/// As [`rep_from_matrices`], over an already constructed `O(G)`.
pub fn rep_over(o: &Arc<HopfAlgebra>, g: &FiniteGroup, images: &[Matrix]) -> Result<Comodule, Error> {
    if images.len() != g.order() || o.dim() != g.order() {
        return Err(Error::DimensionMismatch(format!(
            "{} matrices for a group of order {}",
            images.len(),
            g.order()
        )));
    }
    let d = images[0].rows();
    if images.iter().any(|m| m.rows() != d || m.cols() != d || m.field() != o.field()) {
        return Err(Error::DimensionMismatch("representation matrices differ in shape".into()));
    }
    if !images[g.identity()].is_identity() {
        let e = g.label(g.identity()).to_string();
        return Err(Error::NotHomomorphism { g: e.clone(), h: e });
    }
    for a in g.elements() {
        for b in g.elements() {
            if &images[a] * &images[b] != images[g.mul(a, b)] {
                return Err(Error::NotHomomorphism {
                    g: g.label(a).to_string(),
                    h: g.label(b).to_string(),
                });
            }
        }
    }
    Comodule::from_components(o.clone(), images.to_vec(), d)
}

/// Inverse of [`rep_from_matrices`]: the matrices `M_g` are the components.
pub fn matrices_from_comodule(x: &Comodule) -> Vec<Matrix> {
    x.components.clone()
}

/// Basis of colinear maps `x -> y`; each column is a row-major flattened
/// `dim(y) x dim(x)` matrix, and the basis is in reduced column echelon form.
pub fn hom_space(x: &Comodule, y: &Comodule) -> Result<Matrix, Error> {
    if !same_algebra(&x.algebra, &y.algebra) {
        return Err(Error::AlgebraMismatch);
    }
    intertwiners(&x.components, &y.components, x.dim(), y.dim(), x.field())
}

/// Basis of `Hom(x, y)` as matrices.
pub fn hom_basis(x: &Comodule, y: &Comodule) -> Result<Vec<Matrix>, Error> {
    let h = hom_space(x, y)?;
    Ok((0..h.cols()).map(|j| h.column(j).unflatten(y.dim(), x.dim())).collect())
}

/// Diagonal coaction `(id (x) id (x) m) tau_23 (rho_x (x) rho_y)`.
pub fn tensor_comodule(x: &Comodule, y: &Comodule) -> Result<Comodule, Error> {
    if !same_algebra(&x.algebra, &y.algebra) {
        return Err(Error::AlgebraMismatch);
    }
    let o = &x.algebra;
    let d_o = o.dim();
    let d = x.dim() * y.dim();
    let f = o.field();
    let m = o.mult();
    let mut comps = vec![Matrix::zeros(f, d, d); d_o];
    for a in 0..d_o {
        for b in 0..d_o {
            let col = a * d_o + b;
            let outs: Vec<usize> = (0..d_o).filter(|&c| !m.get(c, col).is_zero()).collect();
            if outs.is_empty() {
                continue;
            }
            let k = x.components[a].kron(&y.components[b]);
            for c in outs {
                comps[c] = &comps[c] + &k.scale(m.get(c, col));
            }
        }
    }
    Comodule::from_components(o.clone(), comps, d)
}

/// Dual comodule; components `D_b = sum_a S[b,a] C_a^T`.
pub fn dual_comodule(x: &Comodule) -> Comodule {
    let o = &x.algebra;
    let s = o.antipode();
    let transposed: Vec<Matrix> = x.components.iter().map(|c| c.transpose()).collect();
    let comps = (0..o.dim())
        .map(|b| combine((0..o.dim()).map(|a| (a, s.get(b, a).clone())), &transposed, x.dim(), x.field()))
        .collect();
    Comodule::from_components(o.clone(), comps, x.dim()).expect("shape")
}

/// `ev: x^v (x) x -> I`, `phi (x) v -> phi(v)`.
pub fn evaluation(x: &Comodule) -> ComoduleMap {
    let d = x.dim();
    let f = x.field();
    let ev = Matrix::from_fn(f, 1, d * d, |_, c| if c / d == c % d { f.one() } else { f.zero() });
    let src = tensor_comodule(&dual_comodule(x), x).expect("same algebra");
    ComoduleMap {
        source: src,
        target: trivial_comodule(&x.algebra, 1),
        matrix: ev,
    }
}

/// `coev: I -> x (x) x^v`, `1 -> sum_i e_i (x) e^i`.
pub fn coevaluation(x: &Comodule) -> ComoduleMap {
    let d = x.dim();
    let f = x.field();
    let coev = Matrix::from_fn(f, d * d, 1, |r, _| if r / d == r % d { f.one() } else { f.zero() });
    let tgt = tensor_comodule(x, &dual_comodule(x)).expect("same algebra");
    ComoduleMap {
        source: trivial_comodule(&x.algebra, 1),
        target: tgt,
        matrix: coev,
    }
}

/// `{v : rho(v) = v (x) 1}`, as an echelon basis and as a trivial comodule.
pub fn invariants(x: &Comodule) -> (Matrix, Comodule) {
    let o = &x.algebra;
    let (d, f) = (x.dim(), x.field());
    let mut stacked = Matrix::zeros(f, 0, d);
    for a in 0..o.dim() {
        let block = &x.components[a] - &Matrix::identity(f, d).scale(o.unit().get(a, 0));
        if !block.is_zero() {
            stacked = stacked.vstack(&block).expect("width");
        }
    }
    let sub = kernel_basis(&stacked);
    let triv = trivial_comodule(o, sub.cols());
    (sub, triv)
}

/// The subcomodule spanned by the columns of `basis`, with its inclusion.
/// The returned basis is the echelon basis of the span.
pub fn subcomodule(x: &Comodule, basis: &Matrix) -> Result<ComoduleMap, Error> {
    let s = Subspace::span(basis);
    let mut comps = Vec::with_capacity(x.components.len());
    for (a, c) in x.components.iter().enumerate() {
        comps.push(
            s.restrict(c, &s)
                .ok_or_else(|| Error::NotStable(format!("component {a} leaves the subspace")))?,
        );
    }
    let sub = Comodule::from_components(x.algebra.clone(), comps, s.dim())?;
    Ok(ComoduleMap {
        source: sub,
        target: x.clone(),
        matrix: s.basis().clone(),
    })
}

/// `x / span(basis)` with its projection.
pub fn quotient_comodule(x: &Comodule, basis: &Matrix) -> Result<ComoduleMap, Error> {
    let s = Subspace::span(basis);
    for (a, c) in x.components.iter().enumerate() {
        if s.restrict(c, &s).is_none() {
            return Err(Error::NotStable(format!("component {a} leaves the subspace")));
        }
    }
    let q = QuotientSpace::new(&s);
    let comps = x
        .components
        .iter()
        .map(|c| &(&q.projection * c) * &q.lift)
        .collect();
    let quo = Comodule::from_components(x.algebra.clone(), comps, q.dim())?;
    Ok(ComoduleMap {
        source: x.clone(),
        target: quo,
        matrix: q.projection,
    })
}

pub fn direct_sum(x: &Comodule, y: &Comodule) -> Result<Comodule, Error> {
    if !same_algebra(&x.algebra, &y.algebra) {
        return Err(Error::AlgebraMismatch);
    }
    let comps = x
        .components
        .iter()
        .zip(&y.components)
        .map(|(a, b)| a.direct_sum(b))
        .collect();
    Comodule::from_components(x.algebra.clone(), comps, x.dim() + y.dim())
}

/// An invertible colinear map `x -> y`, if the search over `Hom(x, y)` finds one.
pub fn find_isomorphism(x: &Comodule, y: &Comodule) -> Result<Option<ComoduleMap>, Error> {
    if x.dim() != y.dim() {
        return Ok(None);
    }
    if x.dim() == 0 {
        return Ok(Some(ComoduleMap {
            source: x.clone(),
            target: y.clone(),
            matrix: Matrix::zeros(x.field(), 0, 0),
        }));
    }
    let basis = hom_basis(x, y)?;
    Ok(find_invertible_combination(&basis).map(|m| ComoduleMap {
        source: x.clone(),
        target: y.clone(),
        matrix: m,
    }))
}

/// Largest subcomodule on which the coaction pushed along `q_star` is
/// trivial, i.e. the `L`-invariants. Also checks that its coaction lands in
/// `x_S (x) f_star(O(A))`, so the action factors through the quotient.
pub fn largest_s_subobject_with(x: &Comodule, o_l: &Arc<HopfAlgebra>, q_star: &Matrix, f_star: &Matrix) -> Result<ComoduleMap, Error> {
    let restricted = x.push_along(o_l.clone(), q_star)?;
    let (sub, _) = invariants(&restricted);
    let inc = subcomodule(x, &sub)?;
    let xs = inc.source();
    let image = Subspace::span(&Matrix::identity(x.field(), xs.dim()).kron(f_star));
    if !image.contains(xs.coaction()) {
        return Err(Error::Verification(
            "invariant subobject does not factor through the quotient".into(),
        ));
    }
    Ok(inc)
}

/// Largest quotient on which the pushed-along coaction is trivial: `x`
/// modulo the span of `(C'_b - u_L[b]) x` over the restricted components.
pub fn largest_s_quotient_with(x: &Comodule, o_l: &Arc<HopfAlgebra>, q_star: &Matrix) -> Result<ComoduleMap, Error> {
    let restricted = x.push_along(o_l.clone(), q_star)?;
    let (d, f) = (x.dim(), x.field());
    let mut rel = Matrix::zeros(f, d, 0);
    for (b, c) in restricted.components.iter().enumerate() {
        let block = c - &Matrix::identity(f, d).scale(o_l.unit().get(b, 0));
        rel = rel.hstack(&block)?;
    }
    quotient_comodule(x, &rel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Scalar;
    use crate::groups::catalog;
    use crate::hopf::hopf_surjection_from_quotient;
    use crate::groups::Subgroup;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn s3() -> (FiniteGroup, Arc<HopfAlgebra>) {
        let g = catalog("S3").unwrap();
        let o = Arc::new(function_algebra(&g, Q));
        (g, o)
    }

    /// Images of `r^a s^b` given images of `r` and `s`.
    fn s3_rep(g: &FiniteGroup, o: &Arc<HopfAlgebra>, r: Matrix, s: Matrix) -> Comodule {
        let d = r.rows();
        let mut imgs = Vec::new();
        for b in 0..2 {
            for a in 0..3 {
                let mut m = Matrix::identity(Q, d);
                for _ in 0..a {
                    m = &m * &r;
                }
                if b == 1 {
                    m = &m * &s;
                }
                imgs.push(m);
            }
        }
        rep_over(o, g, &imgs).unwrap()
    }

    fn sign(g: &FiniteGroup, o: &Arc<HopfAlgebra>) -> Comodule {
        s3_rep(g, o, Matrix::identity(Q, 1), Matrix::from_i64(Q, &[vec![-1]]))
    }

    fn std(g: &FiniteGroup, o: &Arc<HopfAlgebra>) -> Comodule {
        s3_rep(
            g,
            o,
            Matrix::from_i64(Q, &[vec![0, -1], vec![1, -1]]),
            Matrix::from_i64(Q, &[vec![0, 1], vec![1, 0]]),
        )
    }

    #[test]
    fn trivial_and_regular_pass_axioms() {
        let (_, o) = s3();
        for x in [trivial_comodule(&o, 0), trivial_comodule(&o, 3), regular_comodule(&o)] {
            assert!(x.axiom_failure().is_none());
        }
        let c1 = catalog("C1").unwrap();
        let o1 = Arc::new(function_algebra(&c1, Q));
        assert_eq!(regular_comodule(&o1), trivial_comodule(&o1, 1));
    }

    #[test]
    fn regular_c2_splits() {
        let g = catalog("C2").unwrap();
        let o = Arc::new(function_algebra(&g, Q));
        let reg = regular_comodule(&o);
        assert_eq!(invariants(&reg).0.cols(), 1);
        let sgn = rep_over(&o, &g, &[Matrix::identity(Q, 1), Matrix::from_i64(Q, &[vec![-1]])]).unwrap();
        let sum = direct_sum(&trivial_comodule(&o, 1), &sgn).unwrap();
        assert!(find_isomorphism(&reg, &sum).unwrap().is_some());
    }

    #[test]
    fn sign_coaction_formula() {
        let (g, o) = s3();
        let sgn = sign(&g, &o);
        let expected: Vec<i64> = (0..6).map(|x| if x < 3 { 1 } else { -1 }).collect();
        assert_eq!(*sgn.coaction(), Matrix::from_i64(Q, &expected.iter().map(|&v| vec![v]).collect::<Vec<_>>()));
        assert_eq!(matrices_from_comodule(&sgn)[3], Matrix::from_i64(Q, &[vec![-1]]));
    }

    #[test]
    fn non_homomorphism_rejected() {
        let (g, o) = s3();
        let mut imgs = vec![Matrix::identity(Q, 1); 6];
        imgs[1] = Matrix::from_i64(Q, &[vec![-1]]);
        assert!(matches!(rep_over(&o, &g, &imgs), Err(Error::NotHomomorphism { .. })));
    }

    #[test]
    fn hom_dimensions() {
        let (g, o) = s3();
        let triv = trivial_comodule(&o, 1);
        assert_eq!(hom_space(&triv, &triv).unwrap().cols(), 1);
        assert_eq!(hom_space(&sign(&g, &o), &triv).unwrap().cols(), 0);
        let reg = regular_comodule(&o);
        assert_eq!(hom_space(&reg, &reg).unwrap().cols(), 6);
    }

    #[test]
    fn hom_rejects_mixed_algebras() {
        let (_, o) = s3();
        let o2 = Arc::new(function_algebra(&catalog("C2").unwrap(), Q));
        let r = hom_space(&trivial_comodule(&o, 1), &trivial_comodule(&o2, 1));
        assert!(matches!(r, Err(Error::AlgebraMismatch)));
    }

    #[test]
    fn tensor_examples() {
        let (g, o) = s3();
        let sgn = sign(&g, &o);
        let ss = tensor_comodule(&sgn, &sgn).unwrap();
        assert_eq!(ss, trivial_comodule(&o, 1));
        let st = std(&g, &o);
        let tt = tensor_comodule(&st, &st).unwrap();
        assert_eq!(tt.dim(), 4);
        assert!(tt.axiom_failure().is_none());
        assert_eq!(invariants(&tt).0.cols(), 1);
        let unit = tensor_comodule(&st, &trivial_comodule(&o, 1)).unwrap();
        assert!(is_colinear(&st, &unit, &Matrix::identity(Q, 2)));
        assert_eq!(unit, st);
    }

    #[test]
    fn duals() {
        let (g, o) = s3();
        let triv = trivial_comodule(&o, 1);
        assert_eq!(dual_comodule(&triv), triv);
        let sgn = sign(&g, &o);
        assert_eq!(dual_comodule(&sgn), sgn);
        let st = std(&g, &o);
        assert_eq!(dual_comodule(&dual_comodule(&st)), st);
        for x in [st.clone(), regular_comodule(&o)] {
            let ev = evaluation(&x);
            assert!(is_colinear(ev.source(), ev.target(), ev.matrix()));
            let co = coevaluation(&x);
            assert!(is_colinear(co.source(), co.target(), co.matrix()));
        }
    }

    #[test]
    fn invariants_examples() {
        let (g, o) = s3();
        assert_eq!(invariants(&trivial_comodule(&o, 2)).0.cols(), 2);
        assert_eq!(invariants(&regular_comodule(&o)).0.cols(), 1);
        assert_eq!(invariants(&sign(&g, &o)).0.cols(), 0);
    }

    #[test]
    fn sub_and_quotient_of_regular() {
        let (_, o) = s3();
        let reg = regular_comodule(&o);
        let (inv, _) = invariants(&reg);
        let inc = subcomodule(&reg, &inv).unwrap();
        assert_eq!(*inc.source(), trivial_comodule(&o, 1));
        let proj = quotient_comodule(&reg, &inv).unwrap();
        assert_eq!(proj.target().dim(), 5);
        assert!(proj.target().axiom_failure().is_none());
        assert!(is_colinear(&reg, proj.target(), proj.matrix()));
        let bad = Matrix::unit_column(Q, 6, 0);
        assert!(matches!(subcomodule(&reg, &bad), Err(Error::NotStable(_))));
    }

    #[test]
    fn largest_s_subobject_examples() {
        let (g, o) = s3();
        let reg = regular_comodule(&o);
        let a3 = Subgroup::by_name(&g, "A3").unwrap();
        let maps = hopf_surjection_from_quotient(&g, &a3, Q).unwrap();
        let o_l = Arc::new(maps.o_l.clone());
        let inc = largest_s_subobject_with(&reg, &o_l, &maps.q_star, &maps.f_star).unwrap();
        assert_eq!(inc.source().dim(), 2);
        assert_eq!(Subspace::span(inc.matrix()), Subspace::span(&maps.f_star));

        let triv = hopf_surjection_from_quotient(&g, &Subgroup::trivial(&g), Q).unwrap();
        let inc = largest_s_subobject_with(&reg, &Arc::new(triv.o_l.clone()), &triv.q_star, &triv.f_star).unwrap();
        assert!(inc.matrix().is_identity());

        let whole = hopf_surjection_from_quotient(&g, &Subgroup::whole(&g), Q).unwrap();
        let inc = largest_s_subobject_with(&reg, &Arc::new(whole.o_l.clone()), &whole.q_star, &whole.f_star).unwrap();
        assert_eq!(*inc.matrix(), invariants(&reg).0);
    }

    #[test]
    fn non_comodule_rejected() {
        let (_, o) = s3();
        let mut bad = o.comult().clone();
        bad.set(0, 0, Scalar::from_i64(Q, 5));
        assert!(matches!(Comodule::new(o, bad), Err(Error::NotComodule(_))));
    }
}
