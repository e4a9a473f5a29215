//! Finite-dimensional Hopf algebras as structure-constant matrices.
//!
//! Every structure map is a matrix on tensor-power bases: `mult` is
//! `dim x dim^2`, `comult` is `dim^2 x dim`, and so on.

use std::fmt;

use serde::Serialize;

use crate::error::Error;
use crate::exactlin::{kernel_basis, FieldSpec, Matrix, Scalar};
use crate::groups::{quotient_group, FiniteGroup, QuotientGroup, Subgroup};

#[derive(Clone, Debug)]
pub struct HopfAlgebra {
    name: String,
    field: FieldSpec,
    labels: Vec<String>,
    mult: Matrix,
    unit: Matrix,
    comult: Matrix,
    counit: Matrix,
    antipode: Matrix,
}

/// Structural equality: names are ignored.
impl PartialEq for HopfAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.mult == other.mult
            && self.unit == other.unit
            && self.comult == other.comult
            && self.counit == other.counit
            && self.antipode == other.antipode
    }
}

impl Eq for HopfAlgebra {}

/// The group algebra `k[G]`: `g h` from the table, `Delta(g) = g (x) g`,
/// `eps(g) = 1`, `S(g) = g^-1`.
pub fn group_algebra(g: &FiniteGroup, field: FieldSpec) -> HopfAlgebra {
    let n = g.order();
    let one = field.one();
    let mut mult = Matrix::zeros(field, n, n * n);
    let mut comult = Matrix::zeros(field, n * n, n);
    let mut antipode = Matrix::zeros(field, n, n);
    for a in g.elements() {
        for b in g.elements() {
            mult.set(g.mul(a, b), a * n + b, one.clone());
        }
        comult.set(a * n + a, a, one.clone());
        antipode.set(g.inv(a), a, one.clone());
    }
    HopfAlgebra {
        name: format!("k[{}]", g.name()),
        field,
        labels: g.labels().to_vec(),
        mult,
        unit: Matrix::unit_column(field, n, g.identity()),
        comult,
        counit: Matrix::from_fn(field, 1, n, |_, _| one.clone()),
        antipode,
    }
}

/// The function algebra `O(G) = k[G]^*` on the indicator basis `x^g`:
/// `x^g x^h = delta_{g,h} x^g`, `1 = sum_g x^g`,
/// `Delta(x^g) = sum_h x^h (x) x^(h^-1 g)`, `eps(x^g) = delta_{g,e}`,
/// `S(x^g) = x^(g^-1)`.
pub fn function_algebra(g: &FiniteGroup, field: FieldSpec) -> HopfAlgebra {
    let n = g.order();
    let one = field.one();
    let mut mult = Matrix::zeros(field, n, n * n);
    let mut comult = Matrix::zeros(field, n * n, n);
    let mut antipode = Matrix::zeros(field, n, n);
    for a in g.elements() {
        mult.set(a, a * n + a, one.clone());
        for h in g.elements() {
            comult.set(h * n + g.mul(g.inv(h), a), a, one.clone());
        }
        antipode.set(g.inv(a), a, one.clone());
    }
    HopfAlgebra {
        name: format!("O({})", g.name()),
        field,
        labels: g.labels().iter().map(|l| format!("x^{l}")).collect(),
        mult,
        unit: Matrix::from_fn(field, n, 1, |_, _| one.clone()),
        comult,
        counit: Matrix::unit_column(field, n, g.identity()).transpose(),
        antipode,
    }
}

/// Linear dual: every structure tensor transposed.
pub fn dual_hopf(h: &HopfAlgebra) -> HopfAlgebra {
    HopfAlgebra {
        name: format!("dual({})", h.name),
        field: h.field,
        labels: h.labels.iter().map(|l| format!("{l}*")).collect(),
        mult: h.comult.transpose(),
        unit: h.counit.transpose(),
        comult: h.mult.transpose(),
        counit: h.unit.transpose(),
        antipode: h.antipode.transpose(),
    }
}

impl HopfAlgebra {
    /// Assembles a Hopf algebra from raw structure matrices without checking
    /// the axioms (see [`check_axioms`]).
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        name: impl Into<String>,
        labels: Vec<String>,
        mult: Matrix,
        unit: Matrix,
        comult: Matrix,
        counit: Matrix,
        antipode: Matrix,
    ) -> Result<Self, Error> {
        let d = labels.len();
        let shapes = [
            (&mult, d, d * d),
            (&unit, d, 1),
            (&comult, d * d, d),
            (&counit, 1, d),
            (&antipode, d, d),
        ];
        if shapes.iter().any(|(m, r, c)| m.rows() != *r || m.cols() != *c) {
            return Err(Error::DimensionMismatch("Hopf structure shapes".into()));
        }
        Ok(HopfAlgebra {
            name: name.into(),
            field: mult.field(),
            labels,
            mult,
            unit,
            comult,
            counit,
            antipode,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn mult(&self) -> &Matrix {
        &self.mult
    }

    pub fn unit(&self) -> &Matrix {
        &self.unit
    }

    pub fn comult(&self) -> &Matrix {
        &self.comult
    }

    pub fn counit(&self) -> &Matrix {
        &self.counit
    }

    pub fn antipode(&self) -> &Matrix {
        &self.antipode
    }

    pub fn identity(&self) -> Matrix {
        Matrix::identity(self.field, self.dim())
    }

    /// Matrix of `b -> a b` for the basis element `a`.
    pub fn left_mult(&self, a: usize) -> Matrix {
        let e = Matrix::unit_column(self.field, self.dim(), a);
        &self.mult * &e.kron(&self.identity())
    }

    /// Matrix of `b -> b a` for the basis element `a`.
    pub fn right_mult(&self, a: usize) -> Matrix {
        let e = Matrix::unit_column(self.field, self.dim(), a);
        &self.mult * &self.identity().kron(&e)
    }

    /// Matrix of `b -> b v` for an arbitrary element `v` (a column).
    pub fn right_mult_by(&self, v: &Matrix) -> Matrix {
        &self.mult * &self.identity().kron(v)
    }

    pub fn with_mult(&self, mult: Matrix) -> Self {
        HopfAlgebra { mult, ..self.clone() }
    }

    pub fn with_comult(&self, comult: Matrix) -> Self {
        HopfAlgebra { comult, ..self.clone() }
    }

    pub fn with_unit(&self, unit: Matrix) -> Self {
        HopfAlgebra { unit, ..self.clone() }
    }

    pub fn with_counit(&self, counit: Matrix) -> Self {
        HopfAlgebra { counit, ..self.clone() }
    }

    pub fn with_antipode(&self, antipode: Matrix) -> Self {
        HopfAlgebra { antipode, ..self.clone() }
    }
}

impl fmt::Display for HopfAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.name, self.field)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Associativity,
    Unit,
    Coassociativity,
    Counit,
    ComultMultiplicative,
    CounitMultiplicative,
    Antipode,
}

impl Axiom {
    pub const ALL: [Axiom; 7] = [
        Axiom::Associativity,
        Axiom::Unit,
        Axiom::Coassociativity,
        Axiom::Counit,
        Axiom::ComultMultiplicative,
        Axiom::CounitMultiplicative,
        Axiom::Antipode,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Axiom::Associativity => "associativity",
            Axiom::Unit => "unit",
            Axiom::Coassociativity => "coassociativity",
            Axiom::Counit => "counit",
            Axiom::ComultMultiplicative => "comult-multiplicative",
            Axiom::CounitMultiplicative => "counit-multiplicative",
            Axiom::Antipode => "antipode",
        }
    }
}

/// Basis multi-indices where the two sides of an axiom first disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomWitness {
    /// Which equation of the family failed (0-based).
    pub equation: usize,
    pub output: Vec<usize>,
    pub input: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub passed: bool,
    pub witness: Option<AxiomWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub algebra: String,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failing(&self) -> Vec<Axiom> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.axiom).collect()
    }
}

fn decode(mut idx: usize, d: usize, power: usize) -> Vec<usize> {
    let mut out = vec![0; power];
    for slot in out.iter_mut().rev() {
        *slot = idx % d;
        idx /= d;
    }
    out
}

/// Checks all seven axiom families, reporting a witness for each failure.
pub fn check_axioms(h: &HopfAlgebra) -> AxiomReport {
    let d = h.dim();
    let f = h.field;
    let id = h.identity();
    let m = &h.mult;
    let u = &h.unit;
    let c = &h.comult;
    let e = &h.counit;
    let s = &h.antipode;
    let one = Matrix::identity(f, 1);

    // (lhs, rhs, output tensor power, input tensor power)
    let families: Vec<(Axiom, Vec<(Matrix, Matrix, usize, usize)>)> = vec![
        (
            Axiom::Associativity,
            vec![(m * &m.kron(&id), m * &id.kron(m), 1, 3)],
        ),
        (
            Axiom::Unit,
            vec![(m * &u.kron(&id), id.clone(), 1, 1), (m * &id.kron(u), id.clone(), 1, 1)],
        ),
        (
            Axiom::Coassociativity,
            vec![(&c.kron(&id) * c, &id.kron(c) * c, 3, 1)],
        ),
        (
            Axiom::Counit,
            vec![(&e.kron(&id) * c, id.clone(), 1, 1), (&id.kron(e) * c, id.clone(), 1, 1)],
        ),
        (
            Axiom::ComultMultiplicative,
            vec![
                (c * m, &m.kron(m).permute_tensor_columns(&[d, d, d, d], &[0, 2, 1, 3]) * &c.kron(c), 2, 2),
                (c * u, u.kron(u), 2, 0),
            ],
        ),
        (
            Axiom::CounitMultiplicative,
            vec![(e * m, e.kron(e), 0, 2), (e * u, one, 0, 0)],
        ),
        (
            Axiom::Antipode,
            vec![
                (&(m * &s.kron(&id)) * c, u * e, 1, 1),
                (&(m * &id.kron(s)) * c, u * e, 1, 1),
            ],
        ),
    ];

    let checks = families
        .into_iter()
        .map(|(axiom, eqs)| {
            let witness = eqs.iter().enumerate().find_map(|(k, (lhs, rhs, po, pi))| {
                lhs.first_difference(rhs).map(|(r, col)| AxiomWitness {
                    equation: k,
                    output: decode(r, d, *po),
                    input: decode(col, d, *pi),
                })
            });
            AxiomCheck {
                axiom,
                passed: witness.is_none(),
                witness,
            }
        })
        .collect();
    AxiomReport {
        algebra: h.name.clone(),
        checks,
    }
}

/// A nonzero left integral: `a x = eps(a) x` for every `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralElement {
    pub vector: Matrix,
}

/// Solves for the left integrals; the solution space must be a line, and the
/// generator is normalized so its first nonzero coordinate is 1.
pub fn find_integral(h: &HopfAlgebra) -> Result<IntegralElement, Error> {
    let d = h.dim();
    let mut system = Matrix::zeros(h.field, 0, d);
    for a in 0..d {
        let block = &h.left_mult(a) - &h.identity().scale(h.counit.get(0, a));
        system = system.vstack(&block)?;
    }
    let k = kernel_basis(&system);
    if k.cols() != 1 {
        return Err(Error::IntegralDimension(k.cols()));
    }
    Ok(IntegralElement { vector: k })
}

/// `x` satisfies `a x = eps(a) x` for every basis element `a`.
pub fn is_left_integral(h: &HopfAlgebra, x: &Matrix) -> bool {
    (0..h.dim()).all(|a| &h.left_mult(a) * x == x.scale(h.counit.get(0, a)))
}

/// True when `map: source -> target` respects multiplication, unit,
/// comultiplication and counit.
pub fn is_hopf_morphism(source: &HopfAlgebra, target: &HopfAlgebra, map: &Matrix) -> bool {
    map.rows() == target.dim()
        && map.cols() == source.dim()
        && map * &source.mult == &target.mult * &map.kron(map)
        && map * &source.unit == target.unit
        && &target.comult * map == &map.kron(map) * &source.comult
        && &target.counit * map == source.counit
        && &target.antipode * map == map * &source.antipode
}

/// The Hopf algebra maps attached to `1 -> L -> G -> A = G/L -> 1`.
#[derive(Clone, Debug)]
pub struct HopfQuotientMaps {
    pub o_g: HopfAlgebra,
    pub o_l: HopfAlgebra,
    pub o_a: HopfAlgebra,
    pub quotient: QuotientGroup,
    pub subgroup_group: FiniteGroup,
    /// `O(G) -> O(L)`, restriction of functions to `L`.
    pub q_star: Matrix,
    /// `O(A) -> O(G)`, pullback of functions along `G -> G/L`.
    pub f_star: Matrix,
}

pub fn hopf_surjection_from_quotient(
    g: &FiniteGroup,
    l: &Subgroup,
    field: FieldSpec,
) -> Result<HopfQuotientMaps, Error> {
    let quotient = quotient_group(g, l)?;
    let lg = l.as_group(g);
    let o_g = function_algebra(g, field);
    let o_l = function_algebra(&lg, field);
    let o_a = function_algebra(&quotient.group, field);
    let one = Scalar::from_i64(field, 1);
    let mut q_star = Matrix::zeros(field, l.order(), g.order());
    for (pos, &x) in l.members().iter().enumerate() {
        q_star.set(pos, x, one.clone());
    }
    let mut f_star = Matrix::zeros(field, g.order(), quotient.group.order());
    for x in g.elements() {
        f_star.set(x, quotient.projection[x], one.clone());
    }
    Ok(HopfQuotientMaps {
        o_g,
        o_l,
        o_a,
        quotient,
        subgroup_group: lg,
        q_star,
        f_star,
    })
}
