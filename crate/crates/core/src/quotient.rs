//! The quotient category `P` of `Rep(G)` by `Rep(G/L)`.
//!
//! Objects are triples `(X, Y, f: X -> Y (x) O)` with `O = O(A)` and `f`
//! colinear. The image of `f^ = (id (x) m)(f (x) id)` is an `O`-module in
//! `Rep(G)`; morphisms are `O`-linear colinear maps between images, held as
//! matrices on the echelon bases of the images.

use std::sync::Arc;

use crate::comod::{
    dual_comodule, hom_basis, invariants, is_colinear, largest_s_subobject_with, subcomodule, tensor_comodule,
    trivial_comodule, Comodule, ComoduleMap,
};
use crate::error::Error;
use crate::etale::{AlgebraObject, OModuleObject};
use crate::exactlin::{intertwiners, rank, solve, FieldSpec, Matrix, Subspace};
use crate::functors::{cotensor, restrict, sandwich, QuotientDatum};

#[derive(Clone, Debug)]
pub struct QuotientContext {
    pub datum: QuotientDatum,
    /// `O(A)` as a commutative algebra in `Rep(G)`.
    pub algebra: Arc<AlgebraObject>,
    pub counit_oa: Matrix,
}

impl QuotientContext {
    /// Multiplication and unit of `O(A)` are checked to be colinear.
    pub fn new(datum: QuotientDatum) -> Result<Self, Error> {
        let algebra = AlgebraObject::new(
            "O(A)",
            datum.oa_comodule(),
            datum.o_a.mult().clone(),
            datum.o_a.unit().clone(),
        )?;
        let counit_oa = datum.o_a.counit().clone();
        Ok(QuotientContext {
            datum,
            algebra: Arc::new(algebra),
            counit_oa,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.datum.field()
    }

    pub fn oa(&self) -> &Comodule {
        self.algebra.comodule()
    }

    /// `|A|`.
    pub fn n_a(&self) -> usize {
        self.datum.o_a.dim()
    }

    pub fn mult_oa(&self) -> &Matrix {
        self.algebra.mult()
    }

    pub fn unit_oa(&self) -> &Matrix {
        self.algebra.unit()
    }

    /// `(id (x) m)(f (x) id)`.
    pub fn f_hat(&self, y_dim: usize, f: &Matrix) -> Matrix {
        let fs = self.field();
        &Matrix::identity(fs, y_dim).kron(self.mult_oa()) * &f.kron(&Matrix::identity(fs, self.n_a()))
    }

    /// `(id_Y (x) eps_A)`, from `Y (x) O` to `Y`.
    pub fn counit_on(&self, y_dim: usize) -> Matrix {
        Matrix::identity(self.field(), y_dim).kron(&self.counit_oa)
    }
}

/// `im f^` with its `O`-action and `G`-coaction restricted from `Y (x) O`.
#[derive(Clone, Debug)]
pub struct ObjectImage {
    pub space: Subspace,
    pub comodule: Comodule,
    /// Right multiplication by each basis element of `O`, on image coordinates.
    pub action: Vec<Matrix>,
}

impl ObjectImage {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> &Matrix {
        self.space.basis()
    }

    /// The action as one matrix `im (x) O -> im`.
    pub fn action_matrix(&self) -> Matrix {
        let r = self.dim();
        let n = self.action.len();
        Matrix::from_fn(self.comodule.field(), r, r * n, |i, c| self.action[c % n].get(i, c / n).clone())
    }
}

#[derive(Clone, Debug)]
pub struct QuotientObject {
    pub x: Comodule,
    pub y: Comodule,
    pub f: Matrix,
    image: ObjectImage,
}

impl PartialEq for QuotientObject {
    fn eq(&self, other: &Self) -> bool {
        self.x == other.x && self.y == other.y && self.f == other.f
    }
}

impl Eq for QuotientObject {}

impl QuotientObject {
    /// Validates that `f: X -> Y (x) O` is colinear, then computes `im f^`.
    pub fn new(ctx: &QuotientContext, x: Comodule, y: Comodule, f: Matrix) -> Result<Self, Error> {
        let yo = tensor_comodule(&y, ctx.oa())?;
        ComoduleMap::new(x.clone(), yo.clone(), f.clone())?;
        let fh = ctx.f_hat(y.dim(), &f);
        let inc = subcomodule(&yo, &fh)?;
        let space = Subspace::span(inc.matrix());
        let mut action = Vec::with_capacity(ctx.n_a());
        for op in ctx.algebra.right_action() {
            let lifted = Matrix::identity(ctx.field(), y.dim()).kron(op);
            action.push(
                space
                    .restrict(&lifted, &space)
                    .ok_or_else(|| Error::NotStable("image is not an O-submodule".into()))?,
            );
        }
        let image = ObjectImage {
            space,
            comodule: inc.source().clone(),
            action,
        };
        Ok(QuotientObject { x, y, f, image })
    }

    pub fn image(&self) -> &ObjectImage {
        &self.image
    }

    /// `f_0 = (id (x) eps) f: X -> Y`.
    pub fn f0(&self, ctx: &QuotientContext) -> Matrix {
        &ctx.counit_on(self.y.dim()) * &self.f
    }

    fn families(&self) -> Vec<Matrix> {
        let mut fam = self.image.action.clone();
        fam.extend(self.image.comodule.components().iter().cloned());
        fam
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMap {
    pub source: QuotientObject,
    pub target: QuotientObject,
    pub matrix: Matrix,
}

impl QuotientMap {
    /// Validates `O`-linearity and colinearity on image coordinates.
    pub fn new(source: QuotientObject, target: QuotientObject, matrix: Matrix) -> Result<Self, Error> {
        if matrix.rows() != target.image.dim() || matrix.cols() != source.image.dim() {
            return Err(Error::DimensionMismatch("map between images".into()));
        }
        let ok = source
            .families()
            .iter()
            .zip(target.families().iter())
            .all(|(p, q)| q * &matrix == &matrix * p);
        if !ok {
            return Err(Error::NotColinear("not O-linear and colinear on images".into()));
        }
        Ok(QuotientMap {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(obj: &QuotientObject) -> Self {
        QuotientMap {
            source: obj.clone(),
            target: obj.clone(),
            matrix: Matrix::identity(obj.x.field(), obj.image.dim()),
        }
    }

    /// The same map as a matrix `Y_s (x) O -> Y_t (x) O` on the images.
    pub fn ambient(&self) -> Matrix {
        &(self.target.image.basis() * &self.matrix) * &pseudo_left_inverse(self.source.image.basis())
    }
}

/// Left inverse of an echelon basis: select its pivot rows.
fn pseudo_left_inverse(basis: &Matrix) -> Matrix {
    let s = Subspace::span(basis);
    Matrix::identity(basis.field(), basis.rows()).select_rows(s.pivots())
}

pub fn zero_object(ctx: &QuotientContext) -> QuotientObject {
    let z = trivial_comodule(&ctx.datum.o_g, 0);
    QuotientObject::new(ctx, z.clone(), z, Matrix::zeros(ctx.field(), 0, 0)).expect("zero object")
}

/// `q'(X) = (X, X, id (x) u)`.
pub fn quotient_functor_q(ctx: &QuotientContext, x: &Comodule) -> Result<QuotientObject, Error> {
    let f = Matrix::identity(ctx.field(), x.dim()).kron(ctx.unit_oa());
    QuotientObject::new(ctx, x.clone(), x.clone(), f)
}

/// `q'(h) = h (x) id_O` between `q'`-objects.
pub fn quotient_functor_q_map(ctx: &QuotientContext, h: &ComoduleMap) -> Result<QuotientMap, Error> {
    let src = quotient_functor_q(ctx, h.source())?;
    let tgt = quotient_functor_q(ctx, h.target())?;
    QuotientMap::new(src, tgt, h.matrix().kron(&Matrix::identity(ctx.field(), ctx.n_a())))
}

/// Basis of `Hom_P(a, b)` in reduced column echelon order.
pub fn hom_space_p(ctx: &QuotientContext, a: &QuotientObject, b: &QuotientObject) -> Result<Vec<QuotientMap>, Error> {
    let (ra, rb) = (a.image.dim(), b.image.dim());
    let basis = intertwiners(&a.families(), &b.families(), ra, rb, ctx.field())?;
    Ok((0..basis.cols())
        .map(|j| QuotientMap {
            source: a.clone(),
            target: b.clone(),
            matrix: basis.column(j).unflatten(rb, ra),
        })
        .collect())
}

/// `g` after `f`.
pub fn compose_p(g: &QuotientMap, f: &QuotientMap) -> Result<QuotientMap, Error> {
    if f.target != g.source {
        return Err(Error::DimensionMismatch("composing non-adjacent maps in P".into()));
    }
    Ok(QuotientMap {
        source: f.source.clone(),
        target: g.target.clone(),
        matrix: &g.matrix * &f.matrix,
    })
}

/// For maps between `q'`-objects: `f_bar = phi o (id (x) u): X -> Y (x) O`.
pub fn to_bar(ctx: &QuotientContext, phi: &QuotientMap) -> Matrix {
    let u = Matrix::identity(ctx.field(), phi.source.x.dim()).kron(ctx.unit_oa());
    &phi.ambient() * &u
}

/// Inverse of [`to_bar`]: `phi = (id (x) m)(f_bar (x) id)`.
pub fn from_bar(ctx: &QuotientContext, x: &Comodule, y: &Comodule, f_bar: &Matrix) -> Result<QuotientMap, Error> {
    let src = quotient_functor_q(ctx, x)?;
    let tgt = quotient_functor_q(ctx, y)?;
    QuotientMap::new(src, tgt, ctx.f_hat(y.dim(), f_bar))
}

/// `(id (x) m)(g_bar (x) id) f_bar`.
pub fn compose_bar(ctx: &QuotientContext, z_dim: usize, g_bar: &Matrix, f_bar: &Matrix) -> Matrix {
    &ctx.f_hat(z_dim, g_bar) * f_bar
}

/// `(id (x) id (x) m) tau_23` from `(Y0 (x) O) (x) (Y1 (x) O)` to
/// `Y0 (x) Y1 (x) O`.
fn theta(ctx: &QuotientContext, d0: usize, d1: usize) -> Matrix {
    let n = ctx.n_a();
    let fs = ctx.field();
    Matrix::identity(fs, d0 * d1)
        .kron(ctx.mult_oa())
        .permute_tensor_columns(&[d0, n, d1, n], &[0, 2, 1, 3])
}

/// `(X0 (x) X1, Y0 (x) Y1, (id (x) m) tau_23 (f0 (x) f1))`.
pub fn tensor_p(ctx: &QuotientContext, a: &QuotientObject, b: &QuotientObject) -> Result<QuotientObject, Error> {
    let f = &theta(ctx, a.y.dim(), b.y.dim()) * &a.f.kron(&b.f);
    QuotientObject::new(ctx, tensor_comodule(&a.x, &b.x)?, tensor_comodule(&a.y, &b.y)?, f)
}

/// The tensor product of two maps: the unique `T` with
/// `T o Theta_s = Theta_t o (phi (x) psi)` on image coordinates.
pub fn tensor_p_maps(ctx: &QuotientContext, phi: &QuotientMap, psi: &QuotientMap) -> Result<QuotientMap, Error> {
    let src = tensor_p(ctx, &phi.source, &psi.source)?;
    let tgt = tensor_p(ctx, &phi.target, &psi.target)?;
    let to_coords = |obj: &QuotientObject, a: &QuotientObject, b: &QuotientObject| -> Result<Matrix, Error> {
        let t = &theta(ctx, a.y.dim(), b.y.dim()) * &a.image.basis().kron(b.image.basis());
        obj.image
            .space
            .coordinates(&t)
            .ok_or_else(|| Error::Verification("Theta leaves the tensor image".into()))
    };
    let ts = to_coords(&src, &phi.source, &psi.source)?;
    let tt = to_coords(&tgt, &phi.target, &psi.target)?;
    let rhs = &tt * &phi.matrix.kron(&psi.matrix);
    let t = solve(&ts.transpose(), &rhs.transpose())?
        .map(|m| m.transpose())
        .filter(|t| &(t * &ts) == &rhs)
        .ok_or_else(|| Error::Verification("tensor of maps is not well defined".into()))?;
    QuotientMap::new(src, tgt, t)
}

/// Componentwise direct sum of triples.
pub fn direct_sum_p(ctx: &QuotientContext, a: &QuotientObject, b: &QuotientObject) -> Result<QuotientObject, Error> {
    use crate::comod::direct_sum;
    QuotientObject::new(ctx, direct_sum(&a.x, &b.x)?, direct_sum(&a.y, &b.y)?, a.f.direct_sum(&b.f))
}

/// `F(a)`: the image of `f_0` inside `res(Y)`, with the surjection `pi` from
/// `im f^` onto it (both in echelon coordinates).
#[derive(Clone, Debug)]
pub struct RepLImage {
    pub comodule: Comodule,
    /// Echelon basis of `im f_0` in `Y`.
    pub inclusion: Matrix,
    /// `id (x) eps` from `im f^` to `im f_0`.
    pub pi: Matrix,
}

pub fn equivalence_to_repl(ctx: &QuotientContext, obj: &QuotientObject) -> Result<RepLImage, Error> {
    let res_y = restrict(&ctx.datum, &obj.y)?;
    let inc = subcomodule(&res_y, &obj.f0(ctx))?;
    let space = Subspace::span(inc.matrix());
    let pi = space
        .coordinates(&(&ctx.counit_on(obj.y.dim()) * obj.image.basis()))
        .ok_or_else(|| Error::Verification("counit does not map im f^ onto im f_0".into()))?;
    Ok(RepLImage {
        comodule: inc.source().clone(),
        inclusion: inc.matrix().clone(),
        pi,
    })
}

/// `F(phi)`: the unique `L`-map with `F(phi) pi_s = pi_t phi`.
pub fn equivalence_on_map(ctx: &QuotientContext, phi: &QuotientMap) -> Result<ComoduleMap, Error> {
    let s = equivalence_to_repl(ctx, &phi.source)?;
    let t = equivalence_to_repl(ctx, &phi.target)?;
    let rhs = &t.pi * &phi.matrix;
    let m = solve(&s.pi.transpose(), &rhs.transpose())?
        .map(|m| m.transpose())
        .filter(|m| &(m * &s.pi) == &rhs)
        .ok_or_else(|| Error::Verification("F(phi) is not well defined".into()))?;
    ComoduleMap::new(s.comodule, t.comodule, m)
}

/// `vec(f_0)` in `X^v (x) Y`, index `(i, j) -> i dim(Y) + j`. The result is
/// checked to be `L`-invariant.
pub fn deligne_triple(ctx: &QuotientContext, obj: &QuotientObject) -> Result<Matrix, Error> {
    let f0 = obj.f0(ctx);
    let (dx, dy) = (obj.x.dim(), obj.y.dim());
    let v = Matrix::from_fn(ctx.field(), dx * dy, 1, |r, _| f0.get(r % dy, r / dy).clone());
    let space = Subspace::span(&deligne_space(ctx, &obj.x, &obj.y)?);
    if !space.contains(&v) {
        return Err(Error::Verification("f_0 is not L-invariant".into()));
    }
    Ok(v)
}

/// `L`-invariants of `X^v (x) Y`.
pub fn deligne_space(ctx: &QuotientContext, x: &Comodule, y: &Comodule) -> Result<Matrix, Error> {
    let z = restrict(&ctx.datum, &tensor_comodule(&dual_comodule(x), y)?)?;
    Ok(invariants(&z).0)
}

/// Inverse of [`deligne_triple`]: reads `f_0` off `v` and builds the triple
/// with [`triple_from_f0`].
pub fn from_deligne(ctx: &QuotientContext, x: &Comodule, y: &Comodule, v: &Matrix) -> Result<QuotientObject, Error> {
    let dy = y.dim();
    let f0 = Matrix::from_fn(ctx.field(), dy, x.dim(), |j, i| v.get(i * dy + j, 0).clone());
    triple_from_f0(ctx, x, y, &f0)
}

/// The colinear `f: X -> Y (x) O` with `(id (x) eps) f = f_0` for an
/// `L`-colinear `f_0`. The block of `f` at the coset `j` is `g^-1 f_0 g` for
/// any `g` in `j`, which does not depend on `g` because `f_0` commutes with `L`.
pub fn triple_from_f0(ctx: &QuotientContext, x: &Comodule, y: &Comodule, f0: &Matrix) -> Result<QuotientObject, Error> {
    let d = &ctx.datum;
    if !is_colinear(&restrict(d, x)?, &restrict(d, y)?, f0) {
        return Err(Error::NotColinear("f_0 does not commute with L".into()));
    }
    let (dx, dy, n) = (x.dim(), y.dim(), ctx.n_a());
    let mut f = Matrix::zeros(ctx.field(), dy * n, dx);
    for (j, coset) in d.quotient.cosets.iter().enumerate() {
        let g = coset[0];
        let block = &(y.component(d.g.inv(g)) * f0) * x.component(g);
        for i in 0..dy {
            for c in 0..dx {
                f.set(i * n + j, c, block.get(i, c).clone());
            }
        }
    }
    QuotientObject::new(ctx, x.clone(), y.clone(), f)
}

/// Same triple as [`from_deligne`], found instead by solving for the
/// colinear `f` with `(id (x) eps) f = f_0` over a basis of
/// `Hom_G(X, Y (x) O)`.
pub fn from_deligne_solved(ctx: &QuotientContext, x: &Comodule, y: &Comodule, v: &Matrix) -> Result<QuotientObject, Error> {
    let (dx, dy) = (x.dim(), y.dim());
    let fs = ctx.field();
    let basis = hom_basis(x, &tensor_comodule(y, ctx.oa())?)?;
    let eps = ctx.counit_on(dy);
    let mut reduced = Matrix::zeros(fs, dx * dy, 0);
    for b in &basis {
        let f0 = &eps * b;
        let col = Matrix::from_fn(fs, dx * dy, 1, |r, _| f0.get(r % dy, r / dy).clone());
        reduced = reduced.hstack(&col)?;
    }
    let c = solve(&reduced, v)?
        .filter(|c| &(&reduced * c) == v)
        .ok_or_else(|| Error::Verification("vector does not come from a colinear triple".into()))?;
    let mut f = Matrix::zeros(fs, dy * ctx.n_a(), dx);
    for (k, b) in basis.iter().enumerate() {
        f = &f + &b.scale(c.get(k, 0));
    }
    QuotientObject::new(ctx, x.clone(), y.clone(), f)
}

/// `p(a)`: `im f^` as a `G`-comodule with its `O`-module structure.
pub fn right_adjoint_p(ctx: &QuotientContext, obj: &QuotientObject) -> Result<OModuleObject, Error> {
    OModuleObject::new(
        ctx.algebra.clone(),
        obj.image.comodule.clone(),
        obj.image.action_matrix(),
    )
}

#[derive(Clone, Debug)]
pub struct AxiomCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Condition (i): the `L`-invariants of `res X` are the image of the largest
/// `S`-subobject of `X`. Condition (ii): every `L`-comodule is a quotient and
/// a subobject of restrictions.
pub fn verify_quotient_axioms(ctx: &QuotientContext, g_battery: &[(String, Comodule)], l_battery: &[(String, Comodule)]) -> Result<Vec<AxiomCheck>, Error> {
    let d = &ctx.datum;
    let mut out = Vec::new();
    for (name, x) in g_battery {
        let res = restrict(d, x)?;
        let triv = Subspace::span(&invariants(&res).0);
        let xs = largest_s_subobject_with(x, &d.o_l, &d.q_star, &d.f_star)?;
        let s = Subspace::span(xs.matrix());
        out.push(AxiomCheck {
            name: format!("largest-trivial/{name}"),
            passed: triv == s,
            detail: format!("dim {} vs {}", triv.dim(), s.dim()),
        });
    }
    for (name, u) in l_battery {
        let (surj, inj) = sandwich(d, u)?;
        out.push(AxiomCheck {
            name: format!("sandwich/{name}"),
            passed: surj.is_surjective() && inj.is_injective(),
            detail: format!("ranks {} and {}", surj.rank(), inj.rank()),
        });
    }
    Ok(out)
}

/// A triple whose image under `F` is isomorphic to `U`: `V = ind U`,
/// `W = (ind U^v)^v`, `f_0 = iota o eps_U`.
pub fn preimage_of(ctx: &QuotientContext, u: &Comodule) -> Result<QuotientObject, Error> {
    let d = &ctx.datum;
    let (surj, inj) = sandwich(d, u)?;
    let v = cotensor(d, u)?.comodule;
    let w = dual_comodule(&cotensor(d, &dual_comodule(u))?.comodule);
    triple_from_f0(ctx, &v, &w, &(inj.matrix() * surj.matrix()))
}

/// `dim im f^ = rank(f_0) |A|` is the freeness of images over `O`.
pub fn image_is_free(ctx: &QuotientContext, obj: &QuotientObject) -> bool {
    obj.image.dim() == rank(&obj.f0(ctx)) * ctx.n_a()
}
