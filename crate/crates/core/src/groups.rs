//! Finite groups given by validated multiplication tables.
//!
//! Catalog element orderings (identity first, then generators in
//! presentation order):
//!
//! | name  | elements |
//! |-------|----------|
//! | `Cn`  | `e, a, a2, ..., a(n-1)` with `a^i a^j = a^(i+j)` |
//! | `S3`  | `e, r, r2, s, rs, r2s` where `r^3 = s^2 = e`, `s r s = r^-1` |
//! | `D4`  | `e, r, r2, r3, s, rs, r2s, r3s` where `r^4 = s^2 = e`, `s r s = r^-1` |
//! | `Q8`  | `1, i, j, k, -1, -i, -j, -k` with `i^2 = j^2 = k^2 = ijk = -1` |

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;

/// Default cap on the order of user-supplied groups.
pub const DEFAULT_MAX_ORDER: usize = 64;

/// First failing group axiom, with witnessing element indices.
#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize)]
pub enum GroupError {
    #[error("group has no elements")]
    Empty,
    #[error("order {order} exceeds the configured maximum {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("table row {row} has the wrong length or labels do not match the order")]
    Shape { row: usize },
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown element label {0:?}")]
    UnknownLabel(String),
    #[error("closure fails: table[{i}][{j}] = {value} is not an element index")]
    Closure { i: usize, j: usize, value: usize },
    #[error("associativity fails for ({i}, {j}, {k})")]
    Associativity { i: usize, j: usize, k: usize },
    #[error("identity law fails at element {element}")]
    Identity { element: usize },
    #[error("element {element} has no inverse")]
    Inverse { element: usize },
}

impl GroupError {
    /// Short axiom name for reports.
    pub fn axiom(&self) -> &'static str {
        match self {
            GroupError::Empty | GroupError::Shape { .. } | GroupError::OrderTooLarge { .. } => {
                "shape"
            }
            GroupError::DuplicateLabel(_) | GroupError::UnknownLabel(_) => "labels",
            GroupError::Closure { .. } => "closure",
            GroupError::Associativity { .. } => "associativity",
            GroupError::Identity { .. } => "identity",
            GroupError::Inverse { .. } => "inverses",
        }
    }
}

/// A finite group as a multiplication table: `table[i][j]` is the index of
/// `g_i g_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

/// Checks closure, associativity, identity and inverses in that order.
pub fn validate_group(
    table: Vec<Vec<usize>>,
    labels: Vec<String>,
    identity: usize,
    max_order: usize,
) -> Result<FiniteGroup, GroupError> {
    let n = table.len();
    if n == 0 {
        return Err(GroupError::Empty);
    }
    if n > max_order {
        return Err(GroupError::OrderTooLarge {
            order: n,
            max: max_order,
        });
    }
    if labels.len() != n {
        return Err(GroupError::Shape { row: 0 });
    }
    let mut seen = BTreeSet::new();
    for l in &labels {
        if !seen.insert(l) {
            return Err(GroupError::DuplicateLabel(l.clone()));
        }
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(GroupError::Shape { row: i });
        }
        if let Some((j, &value)) = row.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(GroupError::Closure { i, j, value });
        }
    }
    for i in 0..n {
        for j in 0..n {
            let ij = table[i][j];
            for k in 0..n {
                if table[ij][k] != table[i][table[j][k]] {
                    return Err(GroupError::Associativity { i, j, k });
                }
            }
        }
    }
    if identity >= n {
        return Err(GroupError::Identity { element: identity });
    }
    if let Some(element) = (0..n).find(|&g| table[identity][g] != g || table[g][identity] != g) {
        return Err(GroupError::Identity { element });
    }
    let mut inverses = Vec::with_capacity(n);
    for g in 0..n {
        match (0..n).find(|&h| table[g][h] == identity && table[h][g] == identity) {
            Some(h) => inverses.push(h),
            None => return Err(GroupError::Inverse { element: g }),
        }
    }
    Ok(FiniteGroup {
        name: String::new(),
        labels,
        table,
        identity,
        inverses,
    })
}

impl FiniteGroup {
    /// Validates a table whose identity is given by label.
    pub fn from_labelled_table(
        labels: Vec<String>,
        table: Vec<Vec<usize>>,
        identity: &str,
        max_order: usize,
    ) -> Result<Self, GroupError> {
        let e = labels
            .iter()
            .position(|l| l == identity)
            .ok_or_else(|| GroupError::UnknownLabel(identity.to_string()))?;
        validate_group(table, labels, e, max_order)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverses[g]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|g| self.elements().all(|h| self.mul(g, h) == self.mul(h, g)))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Generators found greedily: each new element not in the span so far.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = Subgroup::trivial(self);
        for g in self.elements() {
            if !span.contains(g) {
                gens.push(g);
                span = Subgroup::generated_by(self, &gens);
            }
        }
        gens
    }
}

/// A subgroup, stored as a sorted set of parent element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<usize>,
    parent_order: usize,
}

impl Subgroup {
    pub fn new(g: &FiniteGroup, members: impl IntoIterator<Item = usize>) -> Result<Self, Error> {
        let set: BTreeSet<usize> = members.into_iter().collect();
        if set.iter().any(|&x| x >= g.order()) {
            return Err(Error::NotSubgroup("member index out of range".into()));
        }
        if !set.contains(&g.identity()) {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        for &a in &set {
            if !set.contains(&g.inv(a)) {
                return Err(Error::NotSubgroup(format!("inverse of {} missing", g.label(a))));
            }
            for &b in &set {
                if !set.contains(&g.mul(a, b)) {
                    return Err(Error::NotSubgroup(format!(
                        "{} * {} not in subset",
                        g.label(a),
                        g.label(b)
                    )));
                }
            }
        }
        Ok(Subgroup {
            members: set.into_iter().collect(),
            parent_order: g.order(),
        })
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Subgroup {
            members: vec![g.identity()],
            parent_order: g.order(),
        }
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup {
            members: g.elements().collect(),
            parent_order: g.order(),
        }
    }

    pub fn generated_by(g: &FiniteGroup, gens: &[usize]) -> Self {
        let mut set: BTreeSet<usize> = BTreeSet::from([g.identity()]);
        let mut frontier = vec![g.identity()];
        while let Some(x) = frontier.pop() {
            for &s in gens {
                let y = g.mul(x, s);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Subgroup {
            members: set.into_iter().collect(),
            parent_order: g.order(),
        }
    }

    pub fn center(g: &FiniteGroup) -> Self {
        Subgroup {
            members: g
                .elements()
                .filter(|&z| g.elements().all(|h| g.mul(z, h) == g.mul(h, z)))
                .collect(),
            parent_order: g.order(),
        }
    }

    /// Resolves a subgroup name:
    /// `trivial`, `whole`, `center`, `A3` (generated by the first element of
    /// order 3), `C<d>` (generated by the first element of order `d`), or
    /// `gen:l1,l2,...` (generated by the labelled elements).
    pub fn by_name(g: &FiniteGroup, name: &str) -> Result<Self, Error> {
        let first_of_order = |d: usize| {
            g.elements()
                .find(|&x| g.element_order(x) == d)
                .map(|x| Subgroup::generated_by(g, &[x]))
                .ok_or_else(|| Error::UnknownName(format!("{name}: no element of order {d}")))
        };
        match name {
            "trivial" | "1" | "e" => Ok(Subgroup::trivial(g)),
            "whole" | "G" => Ok(Subgroup::whole(g)),
            "center" | "Z" => Ok(Subgroup::center(g)),
            "A3" => first_of_order(3),
            _ => {
                if let Some(list) = name.strip_prefix("gen:") {
                    let gens = list
                        .split(',')
                        .map(|l| {
                            g.index_of(l.trim())
                                .ok_or_else(|| Error::UnknownName(l.trim().to_string()))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    return Ok(Subgroup::generated_by(g, &gens));
                }
                if let Some(d) = name.strip_prefix('C').and_then(|d| d.parse::<usize>().ok()) {
                    return first_of_order(d);
                }
                if g.name() == name {
                    return Ok(Subgroup::whole(g));
                }
                Err(Error::UnknownName(format!("subgroup {name}")))
            }
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// Position of a parent element within `members`.
    pub fn position(&self, x: usize) -> Option<usize> {
        self.members.binary_search(&x).ok()
    }

    /// The subgroup as a group in its own right, elements in `members` order.
    pub fn as_group(&self, g: &FiniteGroup) -> FiniteGroup {
        let labels = self.members.iter().map(|&x| g.label(x).to_string()).collect();
        let table = self
            .members
            .iter()
            .map(|&a| {
                self.members
                    .iter()
                    .map(|&b| self.position(g.mul(a, b)).expect("closed"))
                    .collect()
            })
            .collect();
        let e = self.position(g.identity()).expect("identity");
        validate_group(table, labels, e, usize::MAX)
            .expect("subgroup tables are groups")
            .with_name(format!("{}<{}>", g.name(), self.order()))
    }
}

/// First `(h, g)` with `g h g^-1` outside the subgroup, if any.
pub fn normality_witness(g: &FiniteGroup, h: &Subgroup) -> Option<(usize, usize)> {
    for &x in h.members() {
        for y in g.elements() {
            if !h.contains(g.mul(g.mul(y, x), g.inv(y))) {
                return Some((x, y));
            }
        }
    }
    None
}

pub fn is_normal(g: &FiniteGroup, h: &Subgroup) -> bool {
    normality_witness(g, h).is_none()
}

/// `G / L` with its coset partition and projection.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    pub group: FiniteGroup,
    /// Cosets ordered by smallest member; each coset sorted.
    pub cosets: Vec<Vec<usize>>,
    /// Parent element index to coset index.
    pub projection: Vec<usize>,
}

impl QuotientGroup {
    /// Members of the kernel of the projection.
    pub fn kernel(&self, g: &FiniteGroup) -> Vec<usize> {
        g.elements()
            .filter(|&x| self.projection[x] == self.projection[g.identity()])
            .collect()
    }
}

pub fn quotient_group(g: &FiniteGroup, h: &Subgroup) -> Result<QuotientGroup, Error> {
    if let Some((member, by)) = normality_witness(g, h) {
        return Err(Error::NotNormal { member, by });
    }
    let mut projection = vec![usize::MAX; g.order()];
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for x in g.elements() {
        if projection[x] != usize::MAX {
            continue;
        }
        let mut coset: Vec<usize> = h.members().iter().map(|&l| g.mul(x, l)).collect();
        coset.sort_unstable();
        for &y in &coset {
            projection[y] = cosets.len();
        }
        cosets.push(coset);
    }
    let labels: Vec<String> = cosets.iter().map(|c| format!("[{}]", g.label(c[0]))).collect();
    let table = cosets
        .iter()
        .map(|a| cosets.iter().map(|b| projection[g.mul(a[0], b[0])]).collect())
        .collect();
    let group = validate_group(table, labels, projection[g.identity()], usize::MAX)
        .expect("quotient of a group by a normal subgroup is a group")
        .with_name(format!("{}/{}", g.name(), h.order()));
    Ok(QuotientGroup {
        group,
        cosets,
        projection,
    })
}

fn cyclic(n: usize) -> FiniteGroup {
    let labels = (0..n)
        .map(|i| match i {
            0 => "e".to_string(),
            1 => "a".to_string(),
            _ => format!("a{i}"),
        })
        .collect();
    let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    validate_group(table, labels, 0, usize::MAX).expect("cyclic table")
}

/// Dihedral group of order `2n`: element `r^a s^b` has index `b * n + a`.
fn dihedral(n: usize) -> FiniteGroup {
    let label = |a: usize, b: usize| {
        let r = match a {
            0 => String::new(),
            1 => "r".to_string(),
            _ => format!("r{a}"),
        };
        let s = if b == 1 { "s" } else { "" };
        let l = format!("{r}{s}");
        if l.is_empty() {
            "e".to_string()
        } else {
            l
        }
    };
    let idx = |a: usize, b: usize| b * n + a;
    let mut labels = Vec::new();
    for b in 0..2 {
        for a in 0..n {
            labels.push(label(a, b));
        }
    }
    let mut table = vec![vec![0; 2 * n]; 2 * n];
    for b in 0..2 {
        for a in 0..n {
            for d in 0..2 {
                for c in 0..n {
                    // (r^a s^b)(r^c s^d) = r^(a + (-1)^b c) s^(b + d)
                    let shift = if b == 0 { c } else { n - c };
                    table[idx(a, b)][idx(c, d)] = idx((a + shift) % n, (b + d) % 2);
                }
            }
        }
    }
    validate_group(table, labels, 0, usize::MAX).expect("dihedral table")
}

fn quaternion() -> FiniteGroup {
    // units 1, i, j, k; unit_mul[a][b] = (sign, unit) of e_a e_b
    let unit_mul = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let labels = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut table = vec![vec![0; 8]; 8];
    for x in 0..8 {
        for y in 0..8 {
            let (neg, u) = unit_mul[x % 4][y % 4];
            let sign = (x / 4 + y / 4 + neg as usize) % 2;
            table[x][y] = sign * 4 + u;
        }
    }
    validate_group(table, labels, 0, usize::MAX).expect("quaternion table")
}

/// Names accepted by [`catalog`].
pub const CATALOG_NAMES: [&str; 11] = ["C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "S3", "D4", "Q8"];

pub fn catalog(name: &str) -> Result<FiniteGroup, Error> {
    let g = match name {
        "S3" => dihedral(3),
        "D4" => dihedral(4),
        "Q8" => quaternion(),
        _ => match name.strip_prefix('C').and_then(|n| n.parse::<usize>().ok()) {
            Some(n @ 1..=8) => cyclic(n),
            _ => return Err(Error::UnknownName(format!("group {name}"))),
        },
    };
    Ok(g.with_name(name))
}

/// JSON group format `{"labels": [...], "identity": "e", "table": [[...]]}`.
///
/// Table entries may be element indices or labels.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupJson {
    #[serde(default)]
    pub name: Option<String>,
    pub labels: Vec<String>,
    pub identity: String,
    pub table: Vec<Vec<TableEntry>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TableEntry {
    Index(usize),
    Label(String),
}

impl GroupJson {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupJson {
            name: Some(g.name().to_string()),
            labels: g.labels().to_vec(),
            identity: g.label(g.identity()).to_string(),
            table: g
                .table()
                .iter()
                .map(|row| row.iter().map(|&x| TableEntry::Label(g.label(x).to_string())).collect())
                .collect(),
        }
    }

    pub fn into_group(self, max_order: usize) -> Result<FiniteGroup, GroupError> {
        let labels = self.labels;
        let table = self
            .table
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|e| match e {
                        TableEntry::Index(i) => Ok(i),
                        TableEntry::Label(l) => labels
                            .iter()
                            .position(|x| *x == l)
                            .ok_or(GroupError::UnknownLabel(l)),
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let g = FiniteGroup::from_labelled_table(labels, table, &self.identity, max_order)?;
        Ok(match self.name {
            Some(n) => g.with_name(n),
            None => g.with_name("custom"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_groups_validate() {
        for name in CATALOG_NAMES {
            let g = catalog(name).unwrap();
            let again = validate_group(g.table().to_vec(), g.labels().to_vec(), g.identity(), 64);
            assert!(again.is_ok(), "{name}");
        }
        assert_eq!(catalog("C1").unwrap().order(), 1);
        assert!(catalog("C9").is_err());
        assert!(catalog("A5").is_err());
    }

    #[test]
    fn s3_presentation() {
        let g = catalog("S3").unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        let r = g.index_of("r").unwrap();
        let s = g.index_of("s").unwrap();
        assert_eq!(g.element_order(r), 3);
        assert_eq!(g.element_order(s), 2);
        assert_eq!(g.mul(g.mul(s, r), s), g.inv(r));
        assert_eq!(g.mul(r, s), g.index_of("rs").unwrap());
    }

    #[test]
    fn quaternion_relations() {
        let g = catalog("Q8").unwrap();
        let (i, j, k, m1) = (1, 2, 3, 4);
        assert_eq!(g.mul(i, i), m1);
        assert_eq!(g.mul(i, j), k);
        assert_eq!(g.mul(j, i), 7);
        assert_eq!(g.mul(g.mul(i, j), k), m1);
    }

    #[test]
    fn broken_associativity_is_reported() {
        let g = catalog("C3").unwrap();
        let mut t = g.table().to_vec();
        // swap two entries of one row: the row stays a permutation
        t[1].swap(0, 1);
        let err = validate_group(t, g.labels().to_vec(), 0, 64).unwrap_err();
        assert!(matches!(err, GroupError::Associativity { .. }), "{err:?}");
    }

    #[test]
    fn bad_tables_rejected() {
        let labels = vec!["e".to_string(), "a".to_string()];
        assert_eq!(
            validate_group(vec![vec![0, 1], vec![1, 2]], labels.clone(), 0, 64),
            Err(GroupError::Closure { i: 1, j: 1, value: 2 })
        );
        assert!(matches!(
            validate_group(vec![vec![0, 0], vec![0, 0]], labels.clone(), 0, 64),
            Err(GroupError::Identity { .. })
        ));
        assert!(matches!(
            validate_group(vec![vec![0]; 3], labels, 0, 2),
            Err(GroupError::OrderTooLarge { .. })
        ));
    }

    #[test]
    fn normality_examples() {
        let g = catalog("S3").unwrap();
        let a3 = Subgroup::by_name(&g, "A3").unwrap();
        assert_eq!(a3.members(), &[0, 1, 2]);
        assert!(is_normal(&g, &a3));
        let s = Subgroup::generated_by(&g, &[g.index_of("s").unwrap()]);
        assert!(!is_normal(&g, &s));
        assert!(is_normal(&g, &Subgroup::whole(&g)));
    }

    #[test]
    fn quotient_examples() {
        let g = catalog("S3").unwrap();
        let a3 = Subgroup::by_name(&g, "A3").unwrap();
        let q = quotient_group(&g, &a3).unwrap();
        assert_eq!(q.group.order(), 2);
        assert_eq!(q.kernel(&g), a3.members());

        let c4 = catalog("C4").unwrap();
        let c2 = Subgroup::by_name(&c4, "C2").unwrap();
        let q = quotient_group(&c4, &c2).unwrap();
        assert_eq!(q.group.order(), 2);
        assert_eq!(q.group.table(), catalog("C2").unwrap().table());

        let q = quotient_group(&g, &Subgroup::trivial(&g)).unwrap();
        assert_eq!(q.group.table(), g.table());

        let s = Subgroup::generated_by(&g, &[3]);
        assert!(matches!(quotient_group(&g, &s), Err(Error::NotNormal { .. })));
    }

    #[test]
    fn every_subgroup_of_q8_is_normal() {
        let g = catalog("Q8").unwrap();
        for x in g.elements() {
            for y in g.elements() {
                let h = Subgroup::generated_by(&g, &[x, y]);
                assert!(is_normal(&g, &h));
                assert_eq!(g.order() % h.order(), 0);
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let g = catalog("D4").unwrap();
        let text = serde_json::to_string(&GroupJson::from_group(&g)).unwrap();
        let back: GroupJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.into_group(64).unwrap(), g);
    }
}
