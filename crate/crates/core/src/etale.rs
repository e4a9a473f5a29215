//! Separable algebras in `Rep(G)` and their module categories.
//!
//! Covers the splitting section `s: O -> O (x) O` of the multiplication of a
//! commutative Hopf algebra, `O`-module objects with `O`-linear colinear
//! sections of their action, tensor products over `O`, duals with snake
//! identities, and base change along a finite separable field extension.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::comod::{
    dual_comodule, hom_space, is_colinear, quotient_comodule, tensor_comodule, trivial_comodule,
    Comodule, ComoduleMap,
};
use crate::error::Error;
use crate::exactlin::{
    determinant, intertwiners, is_invertible, kernel_basis, solve, FieldSpec, Matrix,
    Scalar,
};
use crate::hopf::{find_integral, HopfAlgebra};
use crate::report::scalar_from_json;

/// An associative unital algebra in `Rep(G)`: a comodule with colinear
/// multiplication and unit.
#[derive(Clone, Debug)]
pub struct AlgebraObject {
    name: String,
    comodule: Comodule,
    mult: Matrix,
    unit: Matrix,
    right_action: Vec<Matrix>,
}

impl AlgebraObject {
    pub fn new(name: impl Into<String>, comodule: Comodule, mult: Matrix, unit: Matrix) -> Result<Self, Error> {
        let n = comodule.dim();
        let f = comodule.field();
        if mult.rows() != n || mult.cols() != n * n || unit.rows() != n || unit.cols() != 1 {
            return Err(Error::DimensionMismatch("algebra structure shapes".into()));
        }
        let id = Matrix::identity(f, n);
        if &mult * &mult.kron(&id) != &mult * &id.kron(&mult) {
            return Err(Error::Verification("algebra multiplication is not associative".into()));
        }
        if !(&mult * &unit.kron(&id)).is_identity() || !(&mult * &id.kron(&unit)).is_identity() {
            return Err(Error::Verification("algebra unit law fails".into()));
        }
        ComoduleMap::new(tensor_comodule(&comodule, &comodule)?, comodule.clone(), mult.clone())?;
        ComoduleMap::new(trivial_comodule(comodule.algebra(), 1), comodule.clone(), unit.clone())?;
        let right_action = (0..n)
            .map(|a| &mult * &id.kron(&Matrix::unit_column(f, n, a)))
            .collect();
        Ok(AlgebraObject {
            name: name.into(),
            comodule,
            mult,
            unit,
            right_action,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn comodule(&self) -> &Comodule {
        &self.comodule
    }

    pub fn mult(&self) -> &Matrix {
        &self.mult
    }

    pub fn unit(&self) -> &Matrix {
        &self.unit
    }

    pub fn dim(&self) -> usize {
        self.comodule.dim()
    }

    pub fn field(&self) -> FieldSpec {
        self.comodule.field()
    }

    /// Matrices of `b -> b e_a`.
    pub fn right_action(&self) -> &[Matrix] {
        &self.right_action
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        let swap = Matrix::tensor_permutation(self.field(), &[n, n], &[1, 0]);
        &self.mult * &swap == self.mult
    }

    /// The element `e` of `O (x) O` with `m(e) = 1` and `(a (x) 1) e = e (1 (x) a)`
    /// for all `a`, found by solving the defining linear system.
    pub fn separability_element(&self) -> Result<Matrix, Error> {
        let n = self.dim();
        let f = self.field();
        let id = Matrix::identity(f, n);
        let mut system = self.mult.clone();
        let mut rhs = self.unit.clone();
        for a in 0..n {
            let ea = Matrix::unit_column(f, n, a);
            let left = &self.mult * &ea.kron(&id);
            let right = &self.right_action[a];
            system = system.vstack(&(&left.kron(&id) - &id.kron(right)))?;
            rhs = rhs.vstack(&Matrix::zeros(f, n * n, 1))?;
        }
        let e = solve(&system, &rhs)?
            .filter(|e| &system * e == rhs)
            .ok_or_else(|| Error::NotSeparable(format!("{} has no separability element", self.name)))?;
        Ok(e)
    }
}

/// `s: O -> O (x) O`, `s(a) = (a (x) 1) s(1)`, with `s(1) = (id (x) S) Delta(x)`
/// for the integral `x` normalized by `eps(x) = 1`.
#[derive(Clone, Debug)]
pub struct SplittingSection {
    pub algebra: Arc<HopfAlgebra>,
    pub s1: Matrix,
    pub s: Matrix,
}

/// Builds the splitting section; rejects when the characteristic divides
/// `dim O`.
pub fn splitting_section(o: &Arc<HopfAlgebra>) -> Result<SplittingSection, Error> {
    let f = o.field();
    let n = o.dim();
    if f.divides(n) {
        return Err(Error::EtaleHypothesis {
            characteristic: f.characteristic(),
            order: n,
        });
    }
    let x = find_integral(o)?.vector;
    let c = (o.counit() * &x).get(0, 0).clone();
    let c_inv = c
        .inv()
        .ok_or_else(|| Error::NotSeparable("integral is killed by the counit".into()))?;
    let id = o.identity();
    let s1 = (&(&id.kron(o.antipode()) * o.comult()) * &x).scale(&c_inv);
    let s = &o.mult().kron(&id) * &id.kron(&s1);
    Ok(SplittingSection {
        algebra: o.clone(),
        s1,
        s,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SectionReport {
    pub splits: bool,
    pub left_linear: bool,
    pub right_linear: bool,
    pub colinear: bool,
}

impl SectionReport {
    pub fn all(&self) -> bool {
        self.splits && self.left_linear && self.right_linear && self.colinear
    }
}

/// `m s = id`, `s m = (m (x) id)(id (x) s) = (id (x) m)(s (x) id)`, and `s` is
/// colinear from the regular comodule to its tensor square.
pub fn verify_section(sec: &SplittingSection) -> Result<SectionReport, Error> {
    let o = &sec.algebra;
    let id = o.identity();
    let m = o.mult();
    let sm = &sec.s * m;
    let reg = crate::comod::regular_comodule(o);
    let sq = tensor_comodule(&reg, &reg)?;
    Ok(SectionReport {
        splits: (m * &sec.s).is_identity(),
        left_linear: sm == &m.kron(&id) * &id.kron(&sec.s),
        right_linear: sm == &id.kron(m) * &sec.s.kron(&id),
        colinear: is_colinear(&reg, &sq, &sec.s),
    })
}

/// A right module over an [`AlgebraObject`] in `Rep(G)`: `mu: M (x) O -> M`.
#[derive(Clone, Debug)]
pub struct OModuleObject {
    algebra: Arc<AlgebraObject>,
    carrier: Comodule,
    action: Matrix,
    components: Vec<Matrix>,
}

impl OModuleObject {
    /// Validates associativity, unit law and colinearity of the action.
    pub fn new(algebra: Arc<AlgebraObject>, carrier: Comodule, action: Matrix) -> Result<Self, Error> {
        let d = carrier.dim();
        let n = algebra.dim();
        let f = carrier.field();
        if action.rows() != d || action.cols() != d * n {
            return Err(Error::DimensionMismatch("module action shape".into()));
        }
        let id_m = Matrix::identity(f, d);
        let id_o = Matrix::identity(f, n);
        if &action * &action.kron(&id_o) != &action * &id_m.kron(algebra.mult()) {
            return Err(Error::Verification("module action is not associative".into()));
        }
        if !(&action * &id_m.kron(algebra.unit())).is_identity() {
            return Err(Error::Verification("module unit law fails".into()));
        }
        ComoduleMap::new(tensor_comodule(&carrier, algebra.comodule())?, carrier.clone(), action.clone())?;
        let components = (0..n)
            .map(|a| &action * &id_m.kron(&Matrix::unit_column(f, n, a)))
            .collect();
        Ok(OModuleObject {
            algebra,
            carrier,
            action,
            components,
        })
    }

    pub fn algebra(&self) -> &Arc<AlgebraObject> {
        &self.algebra
    }

    pub fn carrier(&self) -> &Comodule {
        &self.carrier
    }

    pub fn action(&self) -> &Matrix {
        &self.action
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    /// Matrices of `v -> v e_a`.
    pub fn action_components(&self) -> &[Matrix] {
        &self.components
    }

    fn families(&self) -> Vec<Matrix> {
        let mut fam = self.components.clone();
        fam.extend(self.carrier.components().iter().cloned());
        fam
    }
}

/// `X (x) O` with `O` acting on the right factor.
pub fn free_omodule(algebra: &Arc<AlgebraObject>, x: &Comodule) -> Result<OModuleObject, Error> {
    let carrier = tensor_comodule(x, algebra.comodule())?;
    let action = Matrix::identity(x.field(), x.dim()).kron(algebra.mult());
    OModuleObject::new(algebra.clone(), carrier, action)
}

/// Basis of `O`-linear colinear maps `a -> b`, as matrices.
pub fn omodule_hom(a: &OModuleObject, b: &OModuleObject) -> Result<Vec<Matrix>, Error> {
    let basis = intertwiners(&a.families(), &b.families(), a.dim(), b.dim(), a.carrier.field())?;
    Ok((0..basis.cols()).map(|j| basis.column(j).unflatten(b.dim(), a.dim())).collect())
}

pub fn is_omodule_map(a: &OModuleObject, b: &OModuleObject, m: &Matrix) -> bool {
    a.families().iter().zip(b.families().iter()).all(|(p, q)| q * m == m * p)
}

#[derive(Clone, Debug)]
pub struct ModuleSplitting {
    /// `sigma: M -> M (x) O`, `v -> sum (v e_i) (x) e'_i`.
    pub sigma: Matrix,
    pub splits: bool,
    pub o_linear: bool,
    pub colinear: bool,
    pub idempotent: bool,
}

/// Section of `mu_M` built from a separability element `sum e_i (x) e'_i`.
pub fn split_module(m: &OModuleObject, s1: &Matrix) -> Result<ModuleSplitting, Error> {
    let alg = m.algebra();
    let f = m.carrier.field();
    let (d, n) = (m.dim(), alg.dim());
    if s1.rows() != n * n || s1.cols() != 1 {
        return Err(Error::DimensionMismatch("separability element".into()));
    }
    let id_m = Matrix::identity(f, d);
    let id_o = Matrix::identity(f, n);
    let sigma = &m.action.kron(&id_o) * &id_m.kron(s1);
    let free = free_omodule(alg, &m.carrier)?;
    let o_linear = (0..n).all(|a| &sigma * &m.components[a] == &free.components[a] * &sigma);
    let colinear = is_colinear(&m.carrier, &free.carrier, &sigma);
    let e = &sigma * &m.action;
    Ok(ModuleSplitting {
        splits: (&m.action * &sigma).is_identity(),
        o_linear,
        colinear,
        idempotent: &e * &e == e,
        sigma,
    })
}

/// `a (x)_O b`: the quotient of `a (x) b` by `(v o) (x) w - v (x) (o w)`, with
/// `O` acting through the right factor. Also returns the projection.
pub fn omodule_tensor(a: &OModuleObject, b: &OModuleObject) -> Result<(OModuleObject, Matrix), Error> {
    if !Arc::ptr_eq(a.algebra(), b.algebra()) && a.algebra().mult() != b.algebra().mult() {
        return Err(Error::AlgebraMismatch);
    }
    let f = a.carrier.field();
    let (da, db) = (a.dim(), b.dim());
    let ia = Matrix::identity(f, da);
    let ib = Matrix::identity(f, db);
    let mut rel = Matrix::zeros(f, da * db, 0);
    for (pa, pb) in a.components.iter().zip(&b.components) {
        rel = rel.hstack(&(&pa.kron(&ib) - &ia.kron(pb)))?;
    }
    let ab = tensor_comodule(&a.carrier, &b.carrier)?;
    let proj = quotient_comodule(&ab, &rel)?;
    let q = proj.target().clone();
    let lift = pseudo_lift(proj.matrix());
    let n = a.algebra().dim();
    let r = q.dim();
    let comps: Vec<Matrix> = b
        .components
        .iter()
        .map(|pb| &(proj.matrix() * &ia.kron(pb)) * &lift)
        .collect();
    let action = Matrix::from_fn(f, r, r * n, |i, c| comps[c % n].get(i, c / n).clone());
    let module = OModuleObject::new(a.algebra().clone(), q, action)?;
    Ok((module, proj.matrix().clone()))
}

/// A right inverse of a projection whose rows contain an identity block.
fn pseudo_lift(p: &Matrix) -> Matrix {
    solve(p, &Matrix::identity(p.field(), p.rows()))
        .expect("shape")
        .expect("projection is surjective")
}

/// The canonical map `free(x) (x)_O free(y) -> free(x (x) y)`,
/// `(v a) (x) (w b) -> (v (x) w) ab`, when it is a well-defined isomorphism
/// of `O`-modules in `Rep(G)`.
pub fn free_tensor_iso(alg: &Arc<AlgebraObject>, x: &Comodule, y: &Comodule) -> Result<Option<Matrix>, Error> {
    let f = x.field();
    let (dx, dy, n) = (x.dim(), y.dim(), alg.dim());
    let (t, proj) = omodule_tensor(&free_omodule(alg, x)?, &free_omodule(alg, y)?)?;
    let target = free_omodule(alg, &tensor_comodule(x, y)?)?;
    let phi = Matrix::identity(f, dx * dy)
        .kron(alg.mult())
        .permute_tensor_columns(&[dx, n, dy, n], &[0, 2, 1, 3]);
    if !(&phi * &kernel_basis(&proj)).is_zero() {
        return Ok(None);
    }
    let bar = &phi * &pseudo_lift(&proj);
    let ok = t.dim() == target.dim() && is_invertible(&bar) && is_omodule_map(&t, &target, &bar);
    Ok(ok.then_some(bar))
}

/// `M^v` with `(phi a)(v) = phi(v a)`.
pub fn dual_omodule(m: &OModuleObject) -> Result<OModuleObject, Error> {
    let f = m.carrier.field();
    let (d, n) = (m.dim(), m.algebra.dim());
    let comps: Vec<Matrix> = m.components.iter().map(|c| c.transpose()).collect();
    let action = Matrix::from_fn(f, d, d * n, |i, c| comps[c % n].get(i, c / n).clone());
    OModuleObject::new(m.algebra.clone(), dual_comodule(&m.carrier), action)
}

#[derive(Clone, Debug, Serialize)]
pub struct RigidityReport {
    pub ev_colinear: bool,
    pub ev_balanced: bool,
    pub ev_o_linear: bool,
    pub coev_invariant: bool,
    pub snake_left: bool,
    pub snake_right: bool,
}

impl RigidityReport {
    pub fn all(&self) -> bool {
        self.ev_colinear
            && self.ev_balanced
            && self.ev_o_linear
            && self.coev_invariant
            && self.snake_left
            && self.snake_right
    }
}

/// Evaluation `D (x) M -> O`, `phi (x) v -> sum_i phi(v e_i) e'_i`, and
/// coevaluation `1 -> sum_j v_j (x) v^j`, checked against the snake
/// identities `mu_M (id (x) ev)(coev (x) id) = id` and
/// `mu_D tau (ev (x) id)(id (x) coev) = id`.
pub fn rigidity(m: &OModuleObject, s1: &Matrix) -> Result<RigidityReport, Error> {
    let alg = m.algebra();
    let f = m.carrier.field();
    let (d, n) = (m.dim(), alg.dim());
    let dual = dual_omodule(m)?;
    let id_m = Matrix::identity(f, d);
    // ev[k, (j, v)] = sum_i phi_j(v e_i) [e'_i]_k
    let mut ev = Matrix::zeros(f, n, d * d);
    for j in 0..d {
        for v in 0..d {
            let col = j * d + v;
            for i in 0..n {
                for ip in 0..n {
                    let c = s1.get(i * n + ip, 0);
                    if c.is_zero() {
                        continue;
                    }
                    let w = m.components[i].get(j, v);
                    if w.is_zero() {
                        continue;
                    }
                    let cur = ev.get(ip, col).clone();
                    ev.set(ip, col, &cur + &(c * w));
                }
            }
        }
    }
    let dm = tensor_comodule(dual.carrier(), m.carrier())?;
    let ev_colinear = is_colinear(&dm, alg.comodule(), &ev);
    let ev_balanced = (0..n).all(|a| {
        &ev * &dual.components[a].kron(&id_m) == &ev * &id_m.kron(&m.components[a])
    });
    let ev_o_linear = (0..n).all(|a| &ev * &id_m.kron(&m.components[a]) == &alg.right_action()[a] * &ev);
    let coev = Matrix::from_fn(f, d * d, 1, |r, _| if r / d == r % d { f.one() } else { f.zero() });
    let md = tensor_comodule(m.carrier(), dual.carrier())?;
    let coev_invariant = is_colinear(&trivial_comodule(m.carrier.algebra(), 1), &md, &coev);
    let snake_left = &(&m.action * &id_m.kron(&ev)) * &coev.kron(&id_m);
    let tau = Matrix::tensor_permutation(f, &[n, d], &[1, 0]);
    let snake_right = &(&(&dual.action * &tau) * &ev.kron(&id_m)) * &id_m.kron(&coev);
    Ok(RigidityReport {
        ev_colinear,
        ev_balanced,
        ev_o_linear,
        coev_invariant,
        snake_left: snake_left.is_identity(),
        snake_right: snake_right.is_identity(),
    })
}

/// A finite commutative algebra over the base field with basis `e_0 = 1,
/// e_1, ...` and structure constants `e_i e_j = sum_k c[i][j][k] e_k`.
#[derive(Clone, Debug)]
pub struct SeparableExtension {
    pub name: String,
    pub base: FieldSpec,
    pub degree: usize,
    pub mult: Matrix,
    pub discriminant: Scalar,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtensionJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub degree: usize,
    pub mult_table: Vec<Vec<Vec<serde_json::Value>>>,
}

impl SeparableExtension {
    /// Validates commutativity, associativity, `e_0 = 1` and a nonzero
    /// trace-form discriminant.
    pub fn new(name: impl Into<String>, base: FieldSpec, table: &[Vec<Vec<Scalar>>]) -> Result<Self, Error> {
        let d = table.len();
        if d == 0 || table.iter().any(|r| r.len() != d || r.iter().any(|c| c.len() != d)) {
            return Err(Error::DimensionMismatch("multiplication table must be d x d x d".into()));
        }
        let mult = Matrix::from_fn(base, d, d * d, |k, c| table[c / d][c % d][k].clone());
        let id = Matrix::identity(base, d);
        let swap = Matrix::tensor_permutation(base, &[d, d], &[1, 0]);
        if &mult * &swap != mult {
            return Err(Error::NotSeparable("multiplication is not commutative".into()));
        }
        if &mult * &mult.kron(&id) != &mult * &id.kron(&mult) {
            return Err(Error::NotSeparable("multiplication is not associative".into()));
        }
        let e0 = Matrix::unit_column(base, d, 0);
        if !(&mult * &e0.kron(&id)).is_identity() {
            return Err(Error::NotSeparable("first basis element is not the unit".into()));
        }
        // Tr(e_i e_j) = sum_k c[i][j][k] Tr(L_{e_k})
        let traces: Vec<Scalar> = (0..d)
            .map(|k| {
                let lk = &mult * &Matrix::unit_column(base, d, k).kron(&id);
                (0..d).fold(base.zero(), |acc, t| &acc + lk.get(t, t))
            })
            .collect();
        let form = Matrix::from_fn(base, d, d, |i, j| {
            (0..d).fold(base.zero(), |acc, k| &acc + &(&table[i][j][k] * &traces[k]))
        });
        let discriminant = determinant(&form).expect("square");
        if discriminant.is_zero() {
            return Err(Error::NotSeparable("trace form is degenerate".into()));
        }
        Ok(SeparableExtension {
            name: name.into(),
            base,
            degree: d,
            mult,
            discriminant,
        })
    }

    pub fn from_json(base: FieldSpec, json: &ExtensionJson) -> Result<Self, Error> {
        if json.mult_table.len() != json.degree {
            return Err(Error::Parse(format!(
                "degree {} but {} table rows",
                json.degree,
                json.mult_table.len()
            )));
        }
        let table = json
            .mult_table
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| c.iter().map(|v| scalar_from_json(base, v)).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        SeparableExtension::new(json.name.clone().unwrap_or_else(|| "K".into()), base, &table)
    }

    /// The base field as a degree-1 extension.
    pub fn trivial(base: FieldSpec) -> Self {
        SeparableExtension::new(base.to_string(), base, &[vec![vec![base.one()]]]).expect("k is separable")
    }

    /// `k[w] / (w^2 - b w - c)`.
    pub fn quadratic(base: FieldSpec, b: i64, c: i64) -> Result<Self, Error> {
        let s = |v: i64| Scalar::from_i64(base, v);
        let table = vec![
            vec![vec![s(1), s(0)], vec![s(0), s(1)]],
            vec![vec![s(0), s(1)], vec![s(c), s(b)]],
        ];
        let name = match (b, c) {
            (0, c) => format!("{base}(sqrt{c})"),
            (b, c) => format!("{base}(w^2={b}w+{c})"),
        };
        SeparableExtension::new(name, base, &table)
    }

    /// A standard quadratic field extension: `Q(sqrt 2)`, `F_4` over `F_2`,
    /// and `F_p[w]/(w^2 - r)` for the least quadratic non-residue `r`.
    pub fn default_quadratic(base: FieldSpec) -> Result<Self, Error> {
        match base {
            FieldSpec::Rationals => Self::quadratic(base, 0, 2),
            FieldSpec::PrimeField(2) => Self::quadratic(base, 1, 1),
            FieldSpec::PrimeField(p) => {
                let r = (2..p)
                    .find(|&r| mod_pow(r, (p - 1) / 2, p) == p - 1)
                    .expect("odd prime has a non-residue");
                Self::quadratic(base, 0, r as i64)
            }
        }
    }

    /// `K` as an algebra object with trivial coaction.
    pub fn algebra_object(&self, o: &Arc<HopfAlgebra>) -> Result<AlgebraObject, Error> {
        AlgebraObject::new(
            self.name.clone(),
            trivial_comodule(o, self.degree),
            self.mult.clone(),
            Matrix::unit_column(self.base, self.degree, 0),
        )
    }
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// `K`-modules in `Rep_k(G)`.
#[derive(Clone, Debug)]
pub struct BaseChange {
    pub extension: SeparableExtension,
    pub k_alg: Arc<AlgebraObject>,
}

pub fn base_change_category(ext: &SeparableExtension, o: &Arc<HopfAlgebra>) -> Result<BaseChange, Error> {
    if ext.base != o.field() {
        return Err(Error::InvalidField(format!("extension over {} but algebra over {}", ext.base, o.field())));
    }
    Ok(BaseChange {
        extension: ext.clone(),
        k_alg: Arc::new(ext.algebra_object(o)?),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BaseChangeReport {
    pub dim_hom_k: usize,
    pub dim_hom: usize,
    pub degree: usize,
    pub formula_holds: bool,
    pub composition_agrees: bool,
}

impl BaseChange {
    /// `X_(K) = X (x) K`.
    pub fn extend(&self, x: &Comodule) -> Result<OModuleObject, Error> {
        free_omodule(&self.k_alg, x)
    }

    /// `bar(phi) = phi (id (x) 1_K): X -> Y (x) K`.
    pub fn bar(&self, x_dim: usize, phi: &Matrix) -> Matrix {
        phi * &Matrix::identity(self.extension.base, x_dim).kron(self.k_alg.unit())
    }

    /// `(id (x) m)(g_bar (x) id) f_bar`.
    pub fn compose_bar(&self, z_dim: usize, g_bar: &Matrix, f_bar: &Matrix) -> Matrix {
        let b = self.extension.base;
        let lift = &Matrix::identity(b, z_dim).kron(self.k_alg.mult())
            * &g_bar.kron(&Matrix::identity(b, self.extension.degree));
        &lift * f_bar
    }

    /// Compares `dim Hom_K(X_K, Y_K)` with `degree * dim Hom(X, Y)` and checks
    /// the composition formula on pairs of basis maps `X_K -> Y_K -> Y_K`.
    pub fn check_pair(&self, x: &Comodule, y: &Comodule) -> Result<BaseChangeReport, Error> {
        let (xk, yk) = (self.extend(x)?, self.extend(y)?);
        let hk = omodule_hom(&xk, &yk)?;
        let dim_hom = hom_space(x, y)?.cols();
        let ends = omodule_hom(&yk, &yk)?;
        let mut composition_agrees = true;
        for f in hk.iter().take(3) {
            for g in ends.iter().take(3) {
                let direct = self.bar(x.dim(), &(g * f));
                let formula = self.compose_bar(y.dim(), &self.bar(y.dim(), g), &self.bar(x.dim(), f));
                composition_agrees &= direct == formula;
            }
        }
        Ok(BaseChangeReport {
            dim_hom_k: hk.len(),
            dim_hom,
            degree: self.extension.degree,
            formula_holds: hk.len() == self.extension.degree * dim_hom,
            composition_agrees,
        })
    }
}

/// True when the idempotent `sigma mu` of `m` has the expected rank.
pub fn summand_rank(m: &OModuleObject, split: &ModuleSplitting) -> usize {
    let e = &split.sigma * m.action();
    let k = kernel_basis(&(&e - &Matrix::identity(e.field(), e.rows())));
    k.cols()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comod::{regular_comodule, rep_over};
    use crate::functors::QuotientDatum;
    use crate::groups::{catalog, Subgroup};
    use crate::hopf::function_algebra;
    use crate::quotient::QuotientContext;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn o_of(name: &str, f: FieldSpec) -> Arc<HopfAlgebra> {
        Arc::new(function_algebra(&catalog(name).unwrap(), f))
    }

    #[test]
    fn section_for_c1_and_c2() {
        let s = splitting_section(&o_of("C1", Q)).unwrap();
        assert!(s.s.is_identity());
        let s = splitting_section(&o_of("C2", Q)).unwrap();
        assert_eq!(s.s1, Matrix::from_i64(Q, &[vec![1], vec![0], vec![0], vec![1]]));
        assert!(verify_section(&s).unwrap().all());
    }

    #[test]
    fn section_rejected_in_bad_characteristic() {
        let f2 = FieldSpec::prime(2).unwrap();
        let r = splitting_section(&o_of("C2", f2));
        assert!(matches!(r, Err(Error::EtaleHypothesis { characteristic: 2, order: 2 })));
    }

    #[test]
    fn section_agrees_with_solved_separability_element() {
        for (name, f) in [("S3", Q), ("Q8", FieldSpec::prime(3).unwrap())] {
            let o = o_of(name, f);
            let s = splitting_section(&o).unwrap();
            assert!(verify_section(&s).unwrap().all());
            let alg = AlgebraObject::new("O", regular_comodule(&o), o.mult().clone(), o.unit().clone()).unwrap();
            assert_eq!(alg.separability_element().unwrap(), s.s1);
        }
    }

    fn s3_ctx() -> QuotientContext {
        let g = catalog("S3").unwrap();
        let l = Subgroup::by_name(&g, "A3").unwrap();
        QuotientContext::new(QuotientDatum::new(&g, &l, Q).unwrap()).unwrap()
    }

    fn std(c: &QuotientContext) -> Comodule {
        let r = Matrix::from_i64(Q, &[vec![0, -1], vec![1, -1]]);
        let s = Matrix::from_i64(Q, &[vec![0, 1], vec![1, 0]]);
        let mut imgs = Vec::new();
        for b in 0..2 {
            for a in 0..3 {
                let mut m = Matrix::identity(Q, 2);
                for _ in 0..a {
                    m = &m * &r;
                }
                if b == 1 {
                    m = &m * &s;
                }
                imgs.push(m);
            }
        }
        rep_over(&c.datum.o_g, &c.datum.g, &imgs).unwrap()
    }

    #[test]
    fn free_modules_split() {
        let c = s3_ctx();
        let s1 = splitting_section(&c.datum.o_a).unwrap().s1;
        let unit = free_omodule(&c.algebra, &trivial_comodule(&c.datum.o_g, 1)).unwrap();
        assert_eq!(unit.dim(), 2);
        let sp = split_module(&unit, &s1).unwrap();
        assert_eq!(sp.sigma, splitting_section(&c.datum.o_a).unwrap().s);
        let m = free_omodule(&c.algebra, &std(&c)).unwrap();
        assert_eq!(m.dim(), 4);
        let sp = split_module(&m, &s1).unwrap();
        assert!(sp.splits && sp.o_linear && sp.colinear && sp.idempotent);
        assert_eq!(crate::exactlin::rank(&sp.sigma), 4);
        assert_eq!(summand_rank(&m, &sp), 4);
    }

    #[test]
    fn tensor_over_o() {
        let c = s3_ctx();
        let st = std(&c);
        let unit = free_omodule(&c.algebra, &trivial_comodule(&c.datum.o_g, 1)).unwrap();
        let m = free_omodule(&c.algebra, &st).unwrap();
        let (t, _) = omodule_tensor(&m, &unit).unwrap();
        assert_eq!(t.dim(), m.dim());
        assert!(crate::exactlin::find_invertible_combination(&omodule_hom(&t, &m).unwrap()).is_some());
        let (tt, _) = omodule_tensor(&m, &m).unwrap();
        assert_eq!(tt.dim(), 2 * 2 * 2);
        assert!(free_tensor_iso(&c.algebra, &st, &st).unwrap().is_some());
    }

    #[test]
    fn rigid_modules() {
        let c = s3_ctx();
        let s1 = splitting_section(&c.datum.o_a).unwrap().s1;
        for x in [trivial_comodule(&c.datum.o_g, 1), std(&c), regular_comodule(&c.datum.o_g)] {
            let m = free_omodule(&c.algebra, &x).unwrap();
            let r = rigidity(&m, &s1).unwrap();
            assert!(r.all(), "{r:?}");
        }
    }

    #[test]
    fn extensions() {
        assert!(SeparableExtension::default_quadratic(Q).is_ok());
        let f5 = FieldSpec::prime(5).unwrap();
        let e = SeparableExtension::default_quadratic(f5).unwrap();
        assert_eq!(e.discriminant, Scalar::from_i64(f5, 3));
        assert!(SeparableExtension::default_quadratic(FieldSpec::prime(2).unwrap()).is_ok());
        // w^2 = 0 is not reduced
        assert!(matches!(SeparableExtension::quadratic(Q, 0, 0), Err(Error::NotSeparable(_))));
        assert_eq!(SeparableExtension::trivial(Q).degree, 1);
    }

    #[test]
    fn extension_json() {
        let j: ExtensionJson = serde_json::from_str(r#"{"degree":2,"mult_table":[[[1,0],[0,1]],[[0,1],[2,0]]]}"#).unwrap();
        let e = SeparableExtension::from_json(Q, &j).unwrap();
        assert_eq!(e.degree, 2);
        let bad: ExtensionJson = serde_json::from_str(r#"{"degree":2,"mult_table":[[[1,0],[0,1]]]}"#).unwrap();
        assert!(SeparableExtension::from_json(Q, &bad).is_err());
    }

    #[test]
    fn base_change_hom_dimensions() {
        let c = s3_ctx();
        let st = std(&c);
        let k = SeparableExtension::default_quadratic(Q).unwrap();
        let bc = base_change_category(&k, &c.datum.o_g).unwrap();
        let r = bc.check_pair(&st, &st).unwrap();
        assert_eq!((r.dim_hom_k, r.dim_hom), (2, 1));
        assert!(r.formula_holds && r.composition_agrees);
        let triv = base_change_category(&SeparableExtension::trivial(Q), &c.datum.o_g).unwrap();
        let r = triv.check_pair(&st, &st).unwrap();
        assert_eq!(r.dim_hom_k, r.dim_hom);
    }
}
