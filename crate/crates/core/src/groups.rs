//! Group backends.
//!
//! Every backend has decidable equality, multiplication, inversion and an
//! identity. Finite backends additionally expose a canonical element order:
//!
//! * cyclic: residues `0..m`
//! * symmetric: image sequences in lexicographic order
//! * product: tuples in lexicographic order, first factor most significant
//! * cayley: table index
//! * fg-abelian with free rank 0: coordinate vectors, first coordinate most significant
//!
//! Infinite backends (free rank ≥ 1, free groups) refuse enumeration with
//! [`Error::NotEnumerable`].

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error as ThisError;

use crate::error::{invalid, Error, Result};
use crate::perm::{factorial, Permutation};
use crate::words::{Alphabet, ReducedWord};

/// Default degree cap for symmetric groups.
pub const DEFAULT_SYMMETRIC_CAP: usize = 8;

/// Default order cap for exhaustive Cayley table validation.
pub const DEFAULT_CAYLEY_CAP: usize = 256;

/// Largest order for which [`IndexedGroup`] caches a full product table.
const DENSE_TABLE_MAX: usize = 1024;

/// Largest finite order that may be indexed at all.
const INDEXABLE_MAX: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    /// Cyclic residue or Cayley table index.
    Int(i64),
    Perm(Permutation),
    /// Element of a direct product.
    Tuple(Vec<Element>),
    /// Coordinates in a finitely generated abelian group.
    Vector(Vec<i64>),
    Word(ReducedWord),
}

#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum CayleyError {
    #[error("table shape does not match order {order}")]
    Shape { order: usize },
    #[error("entry ({row}, {col}) = {value} is out of range")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("row {0} is not a permutation")]
    RowNotPermutation(usize),
    #[error("column {0} is not a permutation")]
    ColumnNotPermutation(usize),
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NonAssociative { a: usize, b: usize, c: usize },
    #[error("index {0} is not a two-sided identity")]
    NoIdentity(usize),
}

/// A validated multiplication table of a finite group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyTable {
    order: usize,
    identity: usize,
    entries: Vec<usize>,
}

impl CayleyTable {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn get(&self, a: usize, b: usize) -> usize {
        self.entries[a * self.order + b]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.entries
            .chunks(self.order)
            .map(|r| r.to_vec())
            .collect()
    }

    fn inverse_of(&self, a: usize) -> usize {
        (0..self.order)
            .find(|&b| self.get(a, b) == self.identity)
            .expect("validated table has inverses")
    }
}

/// Validate a candidate group table: Latin square, then exhaustive
/// associativity, then the identity laws. The first violation found in
/// lexicographic scan order is reported.
pub fn validate_cayley(table: &[Vec<usize>], identity: usize) -> Result<CayleyTable> {
    validate_cayley_with_cap(table, identity, DEFAULT_CAYLEY_CAP)
}

pub fn validate_cayley_with_cap(
    table: &[Vec<usize>],
    identity: usize,
    cap: usize,
) -> Result<CayleyTable> {
    let n = table.len();
    if n == 0 || table.iter().any(|row| row.len() != n) {
        return Err(CayleyError::Shape { order: n }.into());
    }
    if n > cap {
        return Err(Error::ResourceLimit(format!(
            "Cayley table order {n} exceeds validation cap {cap}"
        )));
    }
    for (row, values) in table.iter().enumerate() {
        for (col, &value) in values.iter().enumerate() {
            if value >= n {
                return Err(CayleyError::EntryOutOfRange { row, col, value }.into());
            }
        }
    }
    for (row, values) in table.iter().enumerate() {
        let mut seen = vec![false; n];
        for &v in values {
            if std::mem::replace(&mut seen[v], true) {
                return Err(CayleyError::RowNotPermutation(row).into());
            }
        }
    }
    for col in 0..n {
        let mut seen = vec![false; n];
        for row in table {
            if std::mem::replace(&mut seen[row[col]], true) {
                return Err(CayleyError::ColumnNotPermutation(col).into());
            }
        }
    }
    if let Some((a, b, c)) = first_non_associative(n, |x, y| table[x][y]) {
        return Err(CayleyError::NonAssociative { a, b, c }.into());
    }
    if identity >= n || (0..n).any(|j| table[identity][j] != j || table[j][identity] != j) {
        return Err(CayleyError::NoIdentity(identity).into());
    }
    Ok(CayleyTable {
        order: n,
        identity,
        entries: table.iter().flatten().copied().collect(),
    })
}

/// First triple `(a, b, c)` in lexicographic order with `(ab)c != a(bc)`.
pub fn first_non_associative(
    n: usize,
    op: impl Fn(usize, usize) -> usize,
) -> Option<(usize, usize, usize)> {
    for a in 0..n {
        for b in 0..n {
            let ab = op(a, b);
            for c in 0..n {
                if op(ab, c) != op(a, op(b, c)) {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// JSON description of a backend.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GroupSpec {
    Cyclic {
        m: u64,
    },
    Symmetric {
        n: usize,
    },
    Cayley {
        order: usize,
        identity: usize,
        table: Vec<Vec<usize>>,
    },
    Product {
        factors: Vec<GroupSpec>,
    },
    FgAbelian {
        rank: usize,
        #[serde(default)]
        torsion: Vec<u64>,
    },
    /// Alias for `fg-abelian` with no torsion.
    Lattice {
        rank: usize,
    },
    Free {
        rank: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GroupSpec", into = "GroupSpec")]
pub enum Group {
    Cyclic(u64),
    Symmetric(usize),
    Cayley(Arc<CayleyTable>),
    Product(Vec<Group>),
    FgAbelian { rank: usize, torsion: Vec<u64> },
    Free(Alphabet),
}

impl TryFrom<GroupSpec> for Group {
    type Error = Error;

    fn try_from(spec: GroupSpec) -> Result<Group> {
        Group::from_spec(&spec)
    }
}

impl From<Group> for GroupSpec {
    fn from(g: Group) -> GroupSpec {
        g.spec()
    }
}

impl Group {
    pub fn cyclic(m: u64) -> Result<Group> {
        if m == 0 {
            return invalid("cyclic group order must be at least 1");
        }
        Ok(Group::Cyclic(m))
    }

    pub fn symmetric(n: usize) -> Result<Group> {
        Group::symmetric_with_cap(n, DEFAULT_SYMMETRIC_CAP)
    }

    pub fn symmetric_with_cap(n: usize, cap: usize) -> Result<Group> {
        if n == 0 {
            return invalid("symmetric group degree must be at least 1");
        }
        if n > cap {
            return Err(Error::ResourceLimit(format!(
                "symmetric degree {n} exceeds cap {cap}"
            )));
        }
        Ok(Group::Symmetric(n))
    }

    pub fn cayley(table: &[Vec<usize>], identity: usize) -> Result<Group> {
        Ok(Group::Cayley(Arc::new(validate_cayley(table, identity)?)))
    }

    pub fn direct_product(g: Group, h: Group) -> Group {
        Group::Product(vec![g, h])
    }

    /// `Z^rank × Z/d_1 × ... × Z/d_s`.
    pub fn fg_abelian(rank: usize, torsion: Vec<u64>) -> Result<Group> {
        if let Some(d) = torsion.iter().find(|&&d| d < 2) {
            return invalid(format!("torsion coefficient {d} must be at least 2"));
        }
        Ok(Group::FgAbelian { rank, torsion })
    }

    pub fn lattice(rank: usize) -> Group {
        Group::FgAbelian {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn integers() -> Group {
        Group::lattice(1)
    }

    pub fn free(rank: usize) -> Result<Group> {
        Ok(Group::Free(Alphabet::new(rank)?))
    }

    pub fn from_spec(spec: &GroupSpec) -> Result<Group> {
        match spec {
            GroupSpec::Cyclic { m } => Group::cyclic(*m),
            GroupSpec::Symmetric { n } => Group::symmetric(*n),
            GroupSpec::Cayley {
                order,
                identity,
                table,
            } => {
                if table.len() != *order {
                    return Err(CayleyError::Shape { order: *order }.into());
                }
                Group::cayley(table, *identity)
            }
            GroupSpec::Product { factors } => Ok(Group::Product(
                factors
                    .iter()
                    .map(Group::from_spec)
                    .collect::<Result<_>>()?,
            )),
            GroupSpec::FgAbelian { rank, torsion } => Group::fg_abelian(*rank, torsion.clone()),
            GroupSpec::Lattice { rank } => Ok(Group::lattice(*rank)),
            GroupSpec::Free { rank } => Group::free(*rank),
        }
    }

    pub fn spec(&self) -> GroupSpec {
        match self {
            Group::Cyclic(m) => GroupSpec::Cyclic { m: *m },
            Group::Symmetric(n) => GroupSpec::Symmetric { n: *n },
            Group::Cayley(t) => GroupSpec::Cayley {
                order: t.order,
                identity: t.identity,
                table: t.rows(),
            },
            Group::Product(fs) => GroupSpec::Product {
                factors: fs.iter().map(Group::spec).collect(),
            },
            Group::FgAbelian { rank, torsion } => GroupSpec::FgAbelian {
                rank: *rank,
                torsion: torsion.clone(),
            },
            Group::Free(a) => GroupSpec::Free { rank: a.rank() },
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Group::Cyclic(_) => "cyclic",
            Group::Symmetric(_) => "symmetric",
            Group::Cayley(_) => "cayley",
            Group::Product(_) => "product",
            Group::FgAbelian { .. } => "fg-abelian",
            Group::Free(_) => "free",
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Group::Cyclic(_) | Group::Symmetric(_) | Group::Cayley(_) => true,
            Group::Product(fs) => fs.iter().all(Group::is_finite),
            Group::FgAbelian { rank, .. } => *rank == 0,
            Group::Free(_) => false,
        }
    }

    /// Order of a finite backend.
    pub fn order(&self) -> Result<u64> {
        let overflow = || Error::ResourceLimit(format!("order of {self} overflows"));
        match self {
            Group::Cyclic(m) => Ok(*m),
            Group::Symmetric(n) => Ok(factorial(*n) as u64),
            Group::Cayley(t) => Ok(t.order as u64),
            Group::Product(fs) => fs.iter().try_fold(1u64, |acc, f| {
                acc.checked_mul(f.order()?).ok_or_else(overflow)
            }),
            Group::FgAbelian { rank: 0, torsion } => torsion
                .iter()
                .try_fold(1u64, |acc, &d| acc.checked_mul(d).ok_or_else(overflow)),
            _ => Err(Error::NotEnumerable(self.to_string())),
        }
    }

    pub fn identity(&self) -> Element {
        match self {
            Group::Cyclic(_) => Element::Int(0),
            Group::Symmetric(n) => Element::Perm(Permutation::identity(*n)),
            Group::Cayley(t) => Element::Int(t.identity as i64),
            Group::Product(fs) => Element::Tuple(fs.iter().map(Group::identity).collect()),
            Group::FgAbelian { rank, torsion } => Element::Vector(vec![0; rank + torsion.len()]),
            Group::Free(a) => Element::Word(ReducedWord::identity(*a)),
        }
    }

    pub fn contains(&self, e: &Element) -> bool {
        match (self, e) {
            (Group::Cyclic(m), Element::Int(v)) => *v >= 0 && (*v as u64) < *m,
            (Group::Cayley(t), Element::Int(v)) => *v >= 0 && (*v as usize) < t.order,
            (Group::Symmetric(n), Element::Perm(p)) => p.degree() == *n,
            (Group::Product(fs), Element::Tuple(xs)) => {
                fs.len() == xs.len() && fs.iter().zip(xs).all(|(f, x)| f.contains(x))
            }
            (Group::FgAbelian { rank, torsion }, Element::Vector(v)) => {
                v.len() == rank + torsion.len()
                    && torsion
                        .iter()
                        .zip(&v[*rank..])
                        .all(|(&d, &c)| c >= 0 && (c as u64) < d)
            }
            (Group::Free(a), Element::Word(w)) => w.alphabet() == *a,
            _ => false,
        }
    }

    fn check(&self, e: &Element) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            invalid(format!("{e:?} is not an element of {self}"))
        }
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub fn inverse(&self, a: &Element) -> Result<Element> {
        self.check(a)?;
        Ok(self.inv_unchecked(a))
    }

    /// Product of two members of this group; panics on foreign elements.
    pub(crate) fn mul_unchecked(&self, a: &Element, b: &Element) -> Element {
        match (self, a, b) {
            (Group::Cyclic(m), Element::Int(x), Element::Int(y)) => {
                Element::Int(((*x as u64 + *y as u64) % m) as i64)
            }
            (Group::Cayley(t), Element::Int(x), Element::Int(y)) => {
                Element::Int(t.get(*x as usize, *y as usize) as i64)
            }
            (Group::Symmetric(_), Element::Perm(p), Element::Perm(q)) => {
                Element::Perm(p.compose(q))
            }
            (Group::Product(fs), Element::Tuple(xs), Element::Tuple(ys)) => Element::Tuple(
                fs.iter()
                    .zip(xs.iter().zip(ys))
                    .map(|(f, (x, y))| f.mul_unchecked(x, y))
                    .collect(),
            ),
            (Group::FgAbelian { rank, torsion }, Element::Vector(x), Element::Vector(y)) => {
                Element::Vector(
                    x.iter()
                        .zip(y)
                        .enumerate()
                        .map(|(i, (&u, &v))| {
                            if i < *rank {
                                u + v
                            } else {
                                (u + v).rem_euclid(torsion[i - rank] as i64)
                            }
                        })
                        .collect(),
                )
            }
            (Group::Free(_), Element::Word(u), Element::Word(v)) => {
                Element::Word(u.multiply(v).expect("same alphabet"))
            }
            _ => panic!("element kind does not match {self}"),
        }
    }

    pub(crate) fn inv_unchecked(&self, a: &Element) -> Element {
        match (self, a) {
            (Group::Cyclic(m), Element::Int(x)) => Element::Int(((m - *x as u64) % m) as i64),
            (Group::Cayley(t), Element::Int(x)) => Element::Int(t.inverse_of(*x as usize) as i64),
            (Group::Symmetric(_), Element::Perm(p)) => Element::Perm(p.inverse()),
            (Group::Product(fs), Element::Tuple(xs)) => {
                Element::Tuple(fs.iter().zip(xs).map(|(f, x)| f.inv_unchecked(x)).collect())
            }
            (Group::FgAbelian { rank, torsion }, Element::Vector(x)) => Element::Vector(
                x.iter()
                    .enumerate()
                    .map(|(i, &u)| {
                        if i < *rank {
                            -u
                        } else {
                            (-u).rem_euclid(torsion[i - rank] as i64)
                        }
                    })
                    .collect(),
            ),
            (Group::Free(_), Element::Word(w)) => Element::Word(w.inverse()),
            _ => panic!("element kind does not match {self}"),
        }
    }

    /// The element at position `index` of the canonical order.
    pub fn element_at(&self, index: u64) -> Result<Element> {
        let order = self.order()?;
        if index >= order {
            return invalid(format!("index {index} out of range for order {order}"));
        }
        Ok(self.element_at_unchecked(index))
    }

    fn element_at_unchecked(&self, index: u64) -> Element {
        match self {
            Group::Cyclic(_) | Group::Cayley(_) => Element::Int(index as i64),
            Group::Symmetric(n) => Element::Perm(Permutation::lex_unrank(*n, index as usize)),
            Group::Product(fs) => {
                let mut rest = index;
                let mut parts = vec![Element::Int(0); fs.len()];
                for (slot, f) in fs.iter().enumerate().rev() {
                    let o = f.order().expect("finite factor");
                    parts[slot] = f.element_at_unchecked(rest % o);
                    rest /= o;
                }
                Element::Tuple(parts)
            }
            Group::FgAbelian { torsion, .. } => {
                let mut rest = index;
                let mut coords = vec![0i64; torsion.len()];
                for (slot, &d) in torsion.iter().enumerate().rev() {
                    coords[slot] = (rest % d) as i64;
                    rest /= d;
                }
                Element::Vector(coords)
            }
            Group::Free(_) => unreachable!("free groups are infinite"),
        }
    }

    /// Inverse of [`Group::element_at`].
    pub fn index_of(&self, e: &Element) -> Result<u64> {
        self.order()?;
        self.check(e)?;
        Ok(self.index_of_unchecked(e))
    }

    fn index_of_unchecked(&self, e: &Element) -> u64 {
        match (self, e) {
            (Group::Cyclic(_) | Group::Cayley(_), Element::Int(v)) => *v as u64,
            (Group::Symmetric(_), Element::Perm(p)) => p.lex_rank() as u64,
            (Group::Product(fs), Element::Tuple(xs)) => fs.iter().zip(xs).fold(0, |acc, (f, x)| {
                acc * f.order().expect("finite factor") + f.index_of_unchecked(x)
            }),
            (Group::FgAbelian { torsion, .. }, Element::Vector(v)) => torsion
                .iter()
                .zip(v)
                .fold(0, |acc, (&d, &c)| acc * d + c as u64),
            _ => unreachable!("checked membership"),
        }
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> Result<Vec<Element>> {
        let order = self.order()?;
        if order > INDEXABLE_MAX {
            return Err(Error::ResourceLimit(format!(
                "refusing to enumerate {order} elements"
            )));
        }
        Ok((0..order).map(|i| self.element_at_unchecked(i)).collect())
    }

    /// Export the multiplication table in canonical order.
    pub fn cayley_table(&self) -> Result<Vec<Vec<usize>>> {
        let indexed = IndexedGroup::new(self)?;
        let n = indexed.order();
        Ok((0..n)
            .map(|a| (0..n).map(|b| indexed.mul(a, b)).collect())
            .collect())
    }

    pub fn element_to_json(&self, e: &Element) -> Value {
        match (self, e) {
            (Group::FgAbelian { rank, torsion }, Element::Vector(v))
                if rank + torsion.len() == 1 =>
            {
                Value::from(v[0])
            }
            (Group::Product(fs), Element::Tuple(xs)) => Value::Array(
                fs.iter()
                    .zip(xs)
                    .map(|(f, x)| f.element_to_json(x))
                    .collect(),
            ),
            (_, e) => element_json(e),
        }
    }

    pub fn element_from_json(&self, v: &Value) -> Result<Element> {
        let bad = || Error::InvalidInput(format!("`{v}` is not an element of {self}"));
        let int = |v: &Value| v.as_i64().ok_or_else(bad);
        let e = match self {
            Group::Cyclic(_) | Group::Cayley(_) => Element::Int(int(v)?),
            Group::Symmetric(_) => {
                let images = v
                    .as_array()
                    .ok_or_else(bad)?
                    .iter()
                    .map(|x| x.as_u64().map(|u| u as usize).ok_or_else(bad))
                    .collect::<Result<Vec<_>>>()?;
                Element::Perm(Permutation::from_images(images)?)
            }
            Group::Product(fs) => {
                let xs = v.as_array().ok_or_else(bad)?;
                if xs.len() != fs.len() {
                    return Err(bad());
                }
                Element::Tuple(
                    fs.iter()
                        .zip(xs)
                        .map(|(f, x)| f.element_from_json(x))
                        .collect::<Result<_>>()?,
                )
            }
            Group::FgAbelian { rank, torsion } => match v {
                Value::Array(xs) => Element::Vector(xs.iter().map(int).collect::<Result<_>>()?),
                Value::Number(_) if rank + torsion.len() == 1 => Element::Vector(vec![int(v)?]),
                _ => return Err(bad()),
            },
            Group::Free(a) => Element::Word(ReducedWord::parse(v.as_str().ok_or_else(bad)?, *a)?),
        };
        self.check(&e)?;
        Ok(e)
    }

    /// Short provenance label for an element.
    pub fn label(&self, e: &Element) -> String {
        match e {
            Element::Word(w) => w.to_string(),
            _ => self.element_to_json(e).to_string(),
        }
    }
}

fn element_json(e: &Element) -> Value {
    match e {
        Element::Int(v) => Value::from(*v),
        Element::Perm(p) => Value::from(p.images().to_vec()),
        Element::Tuple(xs) => Value::Array(xs.iter().map(element_json).collect()),
        Element::Vector(v) => Value::from(v.clone()),
        Element::Word(w) => Value::from(w.to_string()),
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::Cyclic(m) => write!(f, "Z/{m}"),
            Group::Symmetric(n) => write!(f, "S{n}"),
            Group::Cayley(t) => write!(f, "Cayley({})", t.order),
            Group::Product(fs) => {
                if fs.is_empty() {
                    return f.write_str("1");
                }
                for (i, g) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" x ")?;
                    }
                    write!(f, "{g}")?;
                }
                Ok(())
            }
            Group::FgAbelian { rank, torsion } => {
                let mut parts: Vec<String> = Vec::new();
                if *rank > 0 {
                    parts.push(if *rank == 1 {
                        "Z".into()
                    } else {
                        format!("Z^{rank}")
                    });
                }
                parts.extend(torsion.iter().map(|d| format!("Z/{d}")));
                if parts.is_empty() {
                    f.write_str("1")
                } else {
                    f.write_str(&parts.join(" x "))
                }
            }
            Group::Free(a) => write!(f, "F{}", a.rank()),
        }
    }
}

/// A finite group addressed by canonical element index.
#[derive(Debug, Clone)]
pub struct IndexedGroup {
    group: Group,
    order: usize,
    identity: usize,
    inverses: Vec<usize>,
    table: Option<Vec<u32>>,
}

impl IndexedGroup {
    pub fn new(group: &Group) -> Result<Self> {
        let order = group.order()?;
        if order > INDEXABLE_MAX {
            return Err(Error::ResourceLimit(format!(
                "group of order {order} is too large to index"
            )));
        }
        let order = order as usize;
        let identity = group.index_of_unchecked(&group.identity()) as usize;
        let table = (order <= DENSE_TABLE_MAX).then(|| {
            let elems: Vec<Element> = (0..order as u64)
                .map(|i| group.element_at_unchecked(i))
                .collect();
            let mut t = Vec::with_capacity(order * order);
            for a in &elems {
                for b in &elems {
                    t.push(group.index_of_unchecked(&group.mul_unchecked(a, b)) as u32);
                }
            }
            t
        });
        let inverses = match &table {
            Some(t) => (0..order)
                .map(|a| {
                    (0..order)
                        .find(|&b| t[a * order + b] as usize == identity)
                        .expect("group has inverses")
                })
                .collect(),
            None => (0..order as u64)
                .map(|i| {
                    let e = group.element_at_unchecked(i);
                    group.index_of_unchecked(&group.inv_unchecked(&e)) as usize
                })
                .collect(),
        };
        Ok(IndexedGroup {
            group: group.clone(),
            order,
            identity,
            inverses,
            table,
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.order + b] as usize,
            None => {
                let x = self.group.element_at_unchecked(a as u64);
                let y = self.group.element_at_unchecked(b as u64);
                self.group
                    .index_of_unchecked(&self.group.mul_unchecked(&x, &y)) as usize
            }
        }
    }

    pub fn element(&self, index: usize) -> Element {
        self.group.element_at_unchecked(index as u64)
    }

    pub fn index(&self, e: &Element) -> Option<usize> {
        self.group
            .contains(e)
            .then(|| self.group.index_of_unchecked(e) as usize)
    }
}

/// Exhaustively check the group axioms of a finite backend.
pub fn check_axioms(group: &Group) -> Result<()> {
    let elems = group.elements()?;
    let id = group.identity();
    for a in &elems {
        if group.mul_unchecked(&id, a) != *a || group.mul_unchecked(a, &id) != *a {
            return invalid(format!("identity law fails at {a:?}"));
        }
        let inv = group.inv_unchecked(a);
        if group.mul_unchecked(a, &inv) != id || group.mul_unchecked(&inv, a) != id {
            return invalid(format!("inverse law fails at {a:?}"));
        }
    }
    let indexed = IndexedGroup::new(group)?;
    if let Some((a, b, c)) = first_non_associative(indexed.order(), |x, y| indexed.mul(x, y)) {
        return invalid(format!("associativity fails at ({a}, {b}, {c})"));
    }
    Ok(())
}
