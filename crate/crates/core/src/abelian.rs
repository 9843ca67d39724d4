//! Closed-form local embeddings of abelian subsets into finite groups.
//!
//! A finite `A ⊆ Z` embeds into `Z/m` through `a ↦ a mod m` as soon as `m`
//! exceeds `max(A) - min(A)`: the map is the restriction of the reduction
//! homomorphism, and two distinct members of `A` differ by less than `m`.
//! We always take `m = spread + 1`. The same argument runs coordinatewise
//! for `Z^k`, and torsion coordinates of `Z^r × Z/d_1 × ... × Z/d_s` are
//! carried over unchanged.

use std::collections::HashSet;

use crate::error::{invalid, Result};
use crate::groups::{Element, Group};
use crate::partial::{extract_table, verify_local_embedding};
use crate::search::EmbeddingWitness;

pub const CONSTRUCTION: &str = "abelian-mod-m";

/// Per-coordinate `max - min` over the free coordinates of a subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpreadProfile(pub Vec<u64>);

impl SpreadProfile {
    /// Moduli `spread_i + 1`.
    pub fn moduli(&self) -> Vec<u64> {
        self.0.iter().map(|s| s + 1).collect()
    }
}

pub fn spread(points: &[Vec<i64>]) -> Result<SpreadProfile> {
    let Some(first) = points.first() else {
        return invalid("spread of an empty subset");
    };
    let k = first.len();
    if points.iter().any(|p| p.len() != k) {
        return invalid("points have different dimensions");
    }
    Ok(SpreadProfile(
        (0..k)
            .map(|c| {
                let (lo, hi) = points.iter().fold((i64::MAX, i64::MIN), |(lo, hi), p| {
                    (lo.min(p[c]), hi.max(p[c]))
                });
                hi.abs_diff(lo)
            })
            .collect(),
    ))
}

fn residue(a: i64, m: u64) -> i64 {
    a.rem_euclid(m as i64)
}

fn check_distinct(points: &[Vec<i64>]) -> Result<()> {
    if points.is_empty() {
        return invalid("subset must be nonempty");
    }
    let mut seen = HashSet::new();
    if let Some(dup) = points.iter().find(|p| !seen.insert(*p)) {
        return invalid(format!("duplicate subset element {dup:?}"));
    }
    Ok(())
}

fn modulus(spread: u64) -> Result<u64> {
    match spread.checked_add(1) {
        Some(m) if m <= i64::MAX as u64 => Ok(m),
        _ => invalid("subset spread too large for a machine-sized modulus"),
    }
}

/// The result of a closed-form construction, not yet re-verified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianWitness {
    pub target: Group,
    pub images: Vec<Element>,
}

impl AbelianWitness {
    /// Re-check against the table extracted from `source` and wrap as a witness.
    pub fn verify(self, source: &Group, subset: &[Element]) -> Result<EmbeddingWitness> {
        let table = extract_table(source, subset)?;
        let verified =
            verify_local_embedding(&table, &self.target, &self.images)?.is_local_embedding();
        Ok(EmbeddingWitness {
            target: self.target,
            images: self.images,
            verified,
            nodes: 0,
            construction: Some(CONSTRUCTION.to_string()),
        })
    }
}

/// `a ↦ a mod m` with `m = max(A) - min(A) + 1`.
pub fn cyclic_witness(subset: &[i64]) -> Result<AbelianWitness> {
    let points: Vec<Vec<i64>> = subset.iter().map(|&a| vec![a]).collect();
    check_distinct(&points)?;
    let m = modulus(spread(&points)?.0[0])?;
    Ok(AbelianWitness {
        target: Group::cyclic(m)?,
        images: subset
            .iter()
            .map(|&a| Element::Int(residue(a, m)))
            .collect(),
    })
}

/// Coordinatewise reduction into `Z/m_1 × ... × Z/m_k`.
pub fn lattice_witness(subset: &[Vec<i64>]) -> Result<AbelianWitness> {
    check_distinct(subset)?;
    if subset[0].is_empty() {
        return invalid("lattice dimension must be at least 1");
    }
    let moduli = spread(subset)?
        .0
        .into_iter()
        .map(modulus)
        .collect::<Result<Vec<_>>>()?;
    let target = Group::Product(moduli.iter().map(|&m| Group::Cyclic(m)).collect());
    let images = subset
        .iter()
        .map(|p| {
            Element::Tuple(
                p.iter()
                    .zip(&moduli)
                    .map(|(&a, &m)| Element::Int(residue(a, m)))
                    .collect(),
            )
        })
        .collect();
    Ok(AbelianWitness { target, images })
}

/// Free coordinates reduced mod `spread_i + 1`; torsion coordinates kept in
/// their own `Z/d_i` factors. Inputs are coordinate vectors of
/// `Z^rank × Z/d_1 × ... × Z/d_s`.
pub fn fg_abelian_witness(
    rank: usize,
    torsion: &[u64],
    subset: &[Vec<i64>],
) -> Result<AbelianWitness> {
    let source = Group::fg_abelian(rank, torsion.to_vec())?;
    check_distinct(subset)?;
    for p in subset {
        if !source.contains(&Element::Vector(p.clone())) {
            return invalid(format!("{p:?} is not an element of {source}"));
        }
    }
    let free: Vec<Vec<i64>> = subset.iter().map(|p| p[..rank].to_vec()).collect();
    let moduli: Vec<u64> = if rank == 0 {
        Vec::new()
    } else {
        spread(&free)?
            .0
            .into_iter()
            .map(modulus)
            .collect::<Result<_>>()?
    };
    let target = Group::Product(
        moduli
            .iter()
            .chain(torsion)
            .map(|&m| Group::Cyclic(m))
            .collect(),
    );
    let images = subset
        .iter()
        .map(|p| {
            Element::Tuple(
                p.iter()
                    .zip(moduli.iter().chain(torsion))
                    .map(|(&a, &m)| Element::Int(residue(a, m)))
                    .collect(),
            )
        })
        .collect();
    Ok(AbelianWitness { target, images })
}

/// Dispatch on the source group: `Z` gets [`cyclic_witness`], `Z^k` gets
/// [`lattice_witness`], anything else abelian gets [`fg_abelian_witness`].
pub fn witness_for(source: &Group, subset: &[Element]) -> Result<EmbeddingWitness> {
    let Group::FgAbelian { rank, torsion } = source else {
        return invalid(format!(
            "{source} is not a finitely generated abelian backend"
        ));
    };
    let mut points = Vec::with_capacity(subset.len());
    for e in subset {
        match e {
            Element::Vector(v) if source.contains(e) => points.push(v.clone()),
            _ => return invalid(format!("{e:?} is not an element of {source}")),
        }
    }
    let raw = if torsion.is_empty() && *rank == 1 {
        cyclic_witness(&points.iter().map(|p| p[0]).collect::<Vec<_>>())?
    } else if torsion.is_empty() && *rank > 1 {
        lattice_witness(&points)?
    } else {
        fg_abelian_witness(*rank, torsion, &points)?
    };
    raw.verify(source, subset)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vec<Element> {
        xs.iter().map(|&x| Element::Int(x)).collect()
    }

    fn tuples(xs: &[&[i64]]) -> Vec<Element> {
        xs.iter().map(|p| Element::Tuple(ints(p))).collect()
    }

    #[test]
    fn spread_examples() {
        assert_eq!(spread(&[vec![2], vec![5], vec![9]]).unwrap().0, [7]);
        assert_eq!(spread(&[vec![4]]).unwrap().0, [0]);
        assert_eq!(
            spread(&[vec![0, 3], vec![4, 3], vec![1, 8]]).unwrap().0,
            [4, 5]
        );
        assert!(spread(&[]).is_err());
    }

    #[test]
    fn cyclic_examples() {
        let w = cyclic_witness(&[2, 5, 9]).unwrap();
        assert_eq!(w.target, Group::Cyclic(8));
        assert_eq!(w.images, ints(&[2, 5, 1]));
        let w = cyclic_witness(&[0]).unwrap();
        assert_eq!(w.target, Group::Cyclic(1));
        assert_eq!(w.images, ints(&[0]));
        let w = cyclic_witness(&[-3, 0, 3]).unwrap();
        assert_eq!(w.target, Group::Cyclic(7));
        assert_eq!(w.images, ints(&[4, 0, 3]));
        assert!(cyclic_witness(&[1, 1]).is_err());
    }

    #[test]
    fn lattice_examples() {
        let w = lattice_witness(&[vec![0, 0]]).unwrap();
        assert_eq!(
            w.target,
            Group::Product(vec![Group::Cyclic(1), Group::Cyclic(1)])
        );
        let w = lattice_witness(&[vec![0, 3], vec![4, 3], vec![1, 8]]).unwrap();
        assert_eq!(
            w.target,
            Group::Product(vec![Group::Cyclic(5), Group::Cyclic(6)])
        );
        assert_eq!(w.images, tuples(&[&[0, 3], &[4, 3], &[1, 2]]));
        let row: Vec<Vec<i64>> = (0..5).map(|i| vec![i, 0]).collect();
        let w = lattice_witness(&row).unwrap();
        assert_eq!(
            w.target,
            Group::Product(vec![Group::Cyclic(5), Group::Cyclic(1)])
        );
    }

    #[test]
    fn fg_abelian_examples() {
        let w = fg_abelian_witness(0, &[2, 3], &[vec![1, 2], vec![0, 1]]).unwrap();
        assert_eq!(
            w.target,
            Group::Product(vec![Group::Cyclic(2), Group::Cyclic(3)])
        );
        assert_eq!(w.images, tuples(&[&[1, 2], &[0, 1]]));

        let w = fg_abelian_witness(1, &[4], &[vec![0, 1], vec![3, 2]]).unwrap();
        assert_eq!(
            w.target,
            Group::Product(vec![Group::Cyclic(4), Group::Cyclic(4)])
        );
        assert_eq!(w.images, tuples(&[&[0, 1], &[3, 2]]));

        let w = fg_abelian_witness(1, &[2], &[vec![-2, 0], vec![2, 0]]).unwrap();
        assert_eq!(
            w.target,
            Group::Product(vec![Group::Cyclic(5), Group::Cyclic(2)])
        );
        assert_eq!(w.images, tuples(&[&[3, 0], &[2, 0]]));

        assert!(fg_abelian_witness(1, &[2], &[vec![0, 2]]).is_err());
    }

    #[test]
    fn witnesses_verify() {
        let z = Group::integers();
        let subset: Vec<Element> = [2, 5, 9]
            .iter()
            .map(|&a| Element::Vector(vec![a]))
            .collect();
        let w = witness_for(&z, &subset).unwrap();
        assert!(w.verified);
        assert_eq!(w.target, Group::Cyclic(8));
        assert_eq!(w.to_json()["construction"], CONSTRUCTION);

        let g = Group::fg_abelian(1, vec![4]).unwrap();
        let subset = vec![
            Element::Vector(vec![0, 1]),
            Element::Vector(vec![3, 2]),
            Element::Vector(vec![0, 0]),
        ];
        assert!(witness_for(&g, &subset).unwrap().verified);
        assert!(witness_for(&Group::cyclic(3).unwrap(), &ints(&[0])).is_err());
    }
}
