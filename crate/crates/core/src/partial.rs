//! Partial multiplication tables and local-embedding verification.
//!
//! A [`PartialGroupTable`] records, for a finite labelled set `A`, every
//! triple `(i, j, k)` with `a_i * a_j = a_k`. A map `f: A -> H` is a partial
//! homomorphism when `f(a_i) f(a_j) = f(a_k)` holds for every recorded
//! triple, and a local embedding when it is also injective. Only products
//! are constrained; inverses are not recorded.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{invalid, Error, Result};
use crate::groups::{Element, Group};
use crate::SCHEMA;

pub type Triple = (usize, usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TableJson", into = "TableJson")]
pub struct PartialGroupTable {
    size: usize,
    labels: Vec<String>,
    identity: Option<usize>,
    triples: Vec<Triple>,
    // n*n lookup of recorded products
    products: Vec<Option<usize>>,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    schema: Option<String>,
    size: usize,
    #[serde(default)]
    labels: Vec<String>,
    identity: Option<usize>,
    triples: Vec<[usize; 3]>,
}

impl TryFrom<TableJson> for PartialGroupTable {
    type Error = Error;

    fn try_from(j: TableJson) -> Result<Self> {
        crate::check_schema(j.schema.as_deref())?;
        let labels = if j.labels.is_empty() {
            default_labels(j.size)
        } else {
            j.labels
        };
        PartialGroupTable::new(
            j.size,
            labels,
            j.triples.iter().map(|t| (t[0], t[1], t[2])),
            j.identity,
        )
    }
}

impl From<PartialGroupTable> for TableJson {
    fn from(t: PartialGroupTable) -> TableJson {
        TableJson {
            schema: Some(SCHEMA.to_string()),
            size: t.size,
            labels: t.labels,
            identity: t.identity,
            triples: t.triples.iter().map(|&(i, j, k)| [i, j, k]).collect(),
        }
    }
}

fn default_labels(size: usize) -> Vec<String> {
    (0..size).map(|i| format!("a{i}")).collect()
}

impl PartialGroupTable {
    pub fn new(
        size: usize,
        labels: Vec<String>,
        triples: impl IntoIterator<Item = Triple>,
        identity: Option<usize>,
    ) -> Result<Self> {
        if size == 0 {
            return invalid("table size must be positive");
        }
        if labels.len() != size {
            return invalid(format!("expected {size} labels, got {}", labels.len()));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(*l)) {
            return invalid(format!("duplicate label `{dup}`"));
        }
        let mut products = vec![None; size * size];
        let mut list = Vec::new();
        for (i, j, k) in triples {
            if i >= size || j >= size || k >= size {
                return invalid(format!(
                    "triple ({i}, {j}, {k}) out of range for size {size}"
                ));
            }
            match products[i * size + j] {
                Some(prev) if prev != k => {
                    return invalid(format!(
                        "pair ({i}, {j}) has two recorded products {prev} and {k}"
                    ))
                }
                Some(_) => {}
                None => {
                    products[i * size + j] = Some(k);
                    list.push((i, j, k));
                }
            }
        }
        list.sort_unstable();
        if let Some(e) = identity {
            if e >= size {
                return invalid(format!("identity index {e} out of range"));
            }
            if products[e * size + e] != Some(e) {
                return invalid(format!(
                    "identity index {e} lacks the triple ({e}, {e}, {e})"
                ));
            }
        }
        Ok(PartialGroupTable {
            size,
            labels,
            identity,
            triples: list,
            products,
        })
    }

    /// A table with generated labels `a0, a1, ...`.
    pub fn unlabeled(
        size: usize,
        triples: impl IntoIterator<Item = Triple>,
        identity: Option<usize>,
    ) -> Result<Self> {
        PartialGroupTable::new(size, default_labels(size), triples, identity)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    /// Recorded triples in lexicographic order.
    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn product(&self, i: usize, j: usize) -> Option<usize> {
        self.products[i * self.size + j]
    }

    /// SHA-256 over the combinatorial content (labels excluded).
    pub fn digest(&self) -> String {
        let body = serde_json::json!({
            "size": self.size,
            "identity": self.identity,
            "triples": self.triples.iter().map(|&(i, j, k)| [i, j, k]).collect::<Vec<_>>(),
        });
        hex::encode(Sha256::digest(body.to_string().as_bytes()))
    }
}

/// Record every product of two subset members that lands in the subset.
pub fn extract_table(group: &Group, subset: &[Element]) -> Result<PartialGroupTable> {
    if subset.is_empty() {
        return invalid("subset must be nonempty");
    }
    let mut position: HashMap<&Element, usize> = HashMap::with_capacity(subset.len());
    for (i, e) in subset.iter().enumerate() {
        if !group.contains(e) {
            return invalid(format!("{e:?} is not an element of {group}"));
        }
        if position.insert(e, i).is_some() {
            return invalid(format!("duplicate subset element {}", group.label(e)));
        }
    }
    let mut triples = Vec::new();
    for (i, a) in subset.iter().enumerate() {
        for (j, b) in subset.iter().enumerate() {
            if let Some(&k) = position.get(&group.mul_unchecked(a, b)) {
                triples.push((i, j, k));
            }
        }
    }
    let identity = position.get(&group.identity()).copied();
    let labels = subset.iter().map(|e| group.label(e)).collect();
    PartialGroupTable::new(subset.len(), labels, triples, identity)
}

/// A map from table indices into a target group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub target: Group,
    pub images: Vec<Element>,
}

impl Assignment {
    pub fn new(target: Group, images: Vec<Element>) -> Result<Self> {
        if let Some(bad) = images.iter().find(|e| !target.contains(e)) {
            return invalid(format!("{bad:?} is not an element of {target}"));
        }
        Ok(Assignment { target, images })
    }

    pub fn image_json(&self) -> Vec<Value> {
        self.images
            .iter()
            .map(|e| self.target.element_to_json(e))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "target": self.target.spec(),
            "images": self.image_json(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let target: Group = serde_json::from_value(
            v.get("target")
                .cloned()
                .ok_or_else(|| Error::InvalidInput("assignment lacks `target`".into()))?,
        )?;
        let images = v
            .get("images")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidInput("assignment lacks `images`".into()))?
            .iter()
            .map(|x| target.element_from_json(x))
            .collect::<Result<_>>()?;
        Ok(Assignment { target, images })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub is_partial_hom: bool,
    pub is_injective: bool,
    pub violations: Vec<Triple>,
    pub collisions: Vec<(usize, usize)>,
}

impl VerificationReport {
    pub fn is_local_embedding(&self) -> bool {
        self.is_partial_hom && self.is_injective
    }
}

/// Check every recorded triple and every pair of images.
pub fn verify_partial_hom(
    table: &PartialGroupTable,
    target: &Group,
    images: &[Element],
) -> Result<VerificationReport> {
    if images.len() != table.size() {
        return invalid(format!(
            "assignment has {} images for a table of size {}",
            images.len(),
            table.size()
        ));
    }
    if let Some(bad) = images.iter().find(|e| !target.contains(e)) {
        return invalid(format!("{bad:?} is not an element of {target}"));
    }
    let violations: Vec<Triple> = table
        .triples()
        .iter()
        .copied()
        .filter(|&(i, j, k)| target.mul_unchecked(&images[i], &images[j]) != images[k])
        .collect();
    let mut collisions = Vec::new();
    for i in 0..images.len() {
        for i2 in i + 1..images.len() {
            if images[i] == images[i2] {
                collisions.push((i, i2));
            }
        }
    }
    Ok(VerificationReport {
        is_partial_hom: violations.is_empty(),
        is_injective: collisions.is_empty(),
        violations,
        collisions,
    })
}

/// Same report as [`verify_partial_hom`]; success means
/// [`VerificationReport::is_local_embedding`].
pub fn verify_local_embedding(
    table: &PartialGroupTable,
    target: &Group,
    images: &[Element],
) -> Result<VerificationReport> {
    verify_partial_hom(table, target, images)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vec<Element> {
        xs.iter().map(|&x| Element::Vector(vec![x])).collect()
    }

    fn residues(xs: &[i64]) -> Vec<Element> {
        xs.iter().map(|&x| Element::Int(x)).collect()
    }

    #[test]
    fn extract_examples() {
        let z = Group::integers();
        let t = extract_table(&z, &ints(&[1, 2, 3])).unwrap();
        assert_eq!(t.triples(), &[(0, 0, 1), (0, 1, 2), (1, 0, 2)]);
        assert_eq!(t.identity(), None);
        assert_eq!(t.labels(), &["1", "2", "3"]);

        let z2 = Group::cyclic(2).unwrap();
        let t = extract_table(&z2, &residues(&[0, 1])).unwrap();
        assert_eq!(t.triples().len(), 4);
        assert_eq!(t.identity(), Some(0));

        let t = extract_table(&z, &ints(&[0])).unwrap();
        assert_eq!(t.triples(), &[(0, 0, 0)]);
        assert_eq!(t.identity(), Some(0));
    }

    #[test]
    fn extract_rejects_duplicates_and_empty() {
        let z = Group::integers();
        assert!(extract_table(&z, &ints(&[1, 1])).is_err());
        assert!(extract_table(&z, &[]).is_err());
    }

    #[test]
    fn table_invariants() {
        assert!(PartialGroupTable::unlabeled(2, [(0, 0, 0), (0, 0, 1)], None).is_err());
        assert!(PartialGroupTable::unlabeled(2, [(0, 0, 2)], None).is_err());
        assert!(PartialGroupTable::unlabeled(2, [], Some(0)).is_err());
        assert!(PartialGroupTable::new(2, vec!["a".into(), "a".into()], [], None).is_err());
        let t =
            PartialGroupTable::unlabeled(2, [(1, 0, 1), (0, 0, 0), (0, 0, 0)], Some(0)).unwrap();
        assert_eq!(t.triples(), &[(0, 0, 0), (1, 0, 1)]);
    }

    #[test]
    fn identity_restriction_is_local_embedding() {
        let s3 = Group::symmetric(3).unwrap();
        let elems = s3.elements().unwrap();
        let t = extract_table(&s3, &elems).unwrap();
        assert_eq!(t.triples().len(), 36);
        let r = verify_local_embedding(&t, &s3, &elems).unwrap();
        assert!(r.is_local_embedding());
    }

    #[test]
    fn parity_map_collides() {
        let t = extract_table(&Group::integers(), &ints(&[0, 1, 2])).unwrap();
        let z2 = Group::cyclic(2).unwrap();
        let r = verify_partial_hom(&t, &z2, &residues(&[0, 1, 0])).unwrap();
        assert!(r.is_partial_hom);
        assert!(!r.is_injective);
        assert_eq!(r.collisions, vec![(0, 2)]);
    }

    #[test]
    fn mod3_on_123() {
        let t = extract_table(&Group::integers(), &ints(&[1, 2, 3])).unwrap();
        let z3 = Group::cyclic(3).unwrap();
        let r = verify_partial_hom(&t, &z3, &residues(&[1, 2, 0])).unwrap();
        assert!(r.is_partial_hom && r.is_injective);
    }

    #[test]
    fn mod8_witness_on_2_5_9() {
        let t = extract_table(&Group::integers(), &ints(&[2, 5, 9])).unwrap();
        assert!(t.triples().is_empty());
        let z8 = Group::cyclic(8).unwrap();
        assert!(verify_local_embedding(&t, &z8, &residues(&[2, 5, 1]))
            .unwrap()
            .is_local_embedding());
    }

    #[test]
    fn constant_map_not_injective() {
        let t = PartialGroupTable::unlabeled(2, [], None).unwrap();
        let z3 = Group::cyclic(3).unwrap();
        let r = verify_local_embedding(&t, &z3, &residues(&[1, 1])).unwrap();
        assert!(r.is_partial_hom);
        assert!(!r.is_local_embedding());
    }

    #[test]
    fn corrupted_image_reports_triple() {
        let z4 = Group::cyclic(4).unwrap();
        let t = extract_table(&z4, &z4.elements().unwrap()).unwrap();
        let r = verify_local_embedding(&t, &z4, &residues(&[0, 3, 2, 1])).unwrap();
        // negation is an automorphism
        assert!(r.is_local_embedding());
        let r = verify_local_embedding(&t, &z4, &residues(&[0, 2, 2, 3])).unwrap();
        assert!(!r.is_partial_hom);
        // (1,1,2): 2+2 = 0 != 2
        assert!(r.violations.contains(&(1, 1, 2)));
    }

    #[test]
    fn rejects_foreign_images() {
        let t = PartialGroupTable::unlabeled(1, [], None).unwrap();
        let z3 = Group::cyclic(3).unwrap();
        assert!(verify_partial_hom(&t, &z3, &residues(&[3])).is_err());
        assert!(verify_partial_hom(&t, &z3, &residues(&[0, 1])).is_err());
    }

    #[test]
    fn json_roundtrip_and_digest() {
        let t = extract_table(&Group::integers(), &ints(&[1, 2, 3])).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(
            s,
            r#"{"schema":"lefkit/1","size":3,"labels":["1","2","3"],"identity":null,"triples":[[0,0,1],[0,1,2],[1,0,2]]}"#
        );
        let back: PartialGroupTable = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
        let relabeled = PartialGroupTable::unlabeled(3, t.triples().iter().copied(), None).unwrap();
        assert_eq!(relabeled.digest(), t.digest());
        let bad = r#"{"schema":"other/9","size":1,"identity":null,"triples":[]}"#;
        assert!(serde_json::from_str::<PartialGroupTable>(bad).is_err());
    }

    #[test]
    fn assignment_json() {
        let a = Assignment::new(
            Group::symmetric(2).unwrap(),
            Group::symmetric(2).unwrap().elements().unwrap(),
        )
        .unwrap();
        let v = a.to_json();
        assert_eq!(
            v.to_string(),
            r#"{"images":[[0,1],[1,0]],"target":{"kind":"symmetric","n":2}}"#
        );
        assert_eq!(Assignment::from_json(&v).unwrap(), a);
    }
}
