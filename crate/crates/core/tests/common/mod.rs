#![allow(dead_code)]

use std::collections::BTreeSet;

use lefkit::groups::{Element, Group};
use lefkit::partial::PartialGroupTable;
use lefkit::perm::Permutation;
use lefkit::words::{reduce, Alphabet, Letter, ReducedWord, Sign};
use rand::Rng;

pub fn letter(symbol: usize, positive: bool) -> Letter {
    Letter {
        symbol,
        sign: if positive { Sign::Pos } else { Sign::Neg },
    }
}

pub fn random_letters<R: Rng>(rng: &mut R, rank: usize, max_len: usize) -> Vec<Letter> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| letter(rng.gen_range(0..rank), rng.gen_bool(0.5)))
        .collect()
}

pub fn random_word<R: Rng>(rng: &mut R, alphabet: Alphabet, max_len: usize) -> ReducedWord {
    let raw = random_letters(rng, alphabet.rank(), max_len);
    reduce(&raw, alphabet).unwrap()
}

/// Reduction by repeated scanning for a cancelling adjacent pair.
pub fn naive_reduce(raw: &[(usize, i8)]) -> Vec<(usize, i8)> {
    let mut w = raw.to_vec();
    loop {
        let hit = w
            .windows(2)
            .position(|p| p[0].0 == p[1].0 && p[0].1 == -p[1].1);
        match hit {
            Some(i) => {
                w.drain(i..i + 2);
            }
            None => return w,
        }
    }
}

/// Every letter sequence of length at most `radius`, reduced and deduplicated.
pub fn naive_ball(rank: usize, radius: usize) -> BTreeSet<Vec<(usize, i8)>> {
    let letters: Vec<(usize, i8)> = (0..rank).flat_map(|s| [(s, 1), (s, -1)]).collect();
    let mut layer: Vec<Vec<(usize, i8)>> = vec![Vec::new()];
    let mut out = BTreeSet::new();
    out.insert(Vec::new());
    for _ in 0..radius {
        let mut next = Vec::with_capacity(layer.len() * letters.len());
        for w in &layer {
            for &l in &letters {
                let mut v = w.clone();
                v.push(l);
                out.insert(naive_reduce(&v));
                next.push(v);
            }
        }
        layer = next;
    }
    out
}

pub fn as_pairs(w: &ReducedWord) -> Vec<(usize, i8)> {
    w.letters()
        .iter()
        .map(|l| (l.symbol, if l.sign == Sign::Pos { 1 } else { -1 }))
        .collect()
}

pub fn closed_form_ball(rank: u64, radius: u32) -> u64 {
    1 + (1..=radius)
        .map(|i| 2 * rank * (2 * rank - 1).pow(i - 1))
        .sum::<u64>()
}

/// Random table: `n ≤ max_n`, each pair recorded with probability `density`,
/// and sometimes an identity index.
pub fn random_table<R: Rng>(rng: &mut R, max_n: usize, density: f64) -> PartialGroupTable {
    let n = rng.gen_range(1..=max_n);
    let identity = if rng.gen_bool(0.3) {
        Some(rng.gen_range(0..n))
    } else {
        None
    };
    let mut triples = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if Some(i) == identity && Some(j) == identity {
                triples.push((i, j, i));
            } else if rng.gen_bool(density) {
                triples.push((i, j, rng.gen_range(0..n)));
            }
        }
    }
    PartialGroupTable::unlabeled(n, triples, identity).unwrap()
}

pub fn random_element<R: Rng>(rng: &mut R, g: &Group) -> Element {
    let order = g.order().unwrap();
    g.element_at(rng.gen_range(0..order)).unwrap()
}

/// Distinct random elements of a finite group, in random order.
pub fn random_subset<R: Rng>(rng: &mut R, g: &Group, max_len: usize) -> Vec<Element> {
    let order = g.order().unwrap() as usize;
    let len = rng.gen_range(1..=max_len.min(order));
    let mut idx: Vec<u64> = (0..order as u64).collect();
    for i in 0..len {
        let j = rng.gen_range(i..order);
        idx.swap(i, j);
    }
    idx[..len]
        .iter()
        .map(|&i| g.element_at(i).unwrap())
        .collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A genuine homomorphism between small finite backends, as an explicit map.
pub struct Hom {
    pub domain: Group,
    pub codomain: Group,
    pub map: Box<dyn Fn(&Element) -> Element>,
}

fn sign_of(p: &Permutation) -> i64 {
    let n = p.degree();
    let mut seen = vec![false; n];
    let mut parity = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p.apply(x);
            len += 1;
        }
        parity += len - 1;
    }
    (parity % 2) as i64
}

fn perm_power(p: &Permutation, k: u64) -> Permutation {
    (0..k).fold(Permutation::identity(p.degree()), |acc, _| acc.compose(p))
}

fn perm_order(p: &Permutation) -> u64 {
    let mut k = 1;
    let mut q = p.clone();
    while !q.is_identity() {
        q = q.compose(p);
        k += 1;
    }
    k
}

/// One of several hom families, chosen at random: `Z/m → Z/n` by scaling,
/// the sign map `S_n → Z/2`, `Z/m → S_k` by powers of a permutation whose
/// order divides `m`, `S_3 → S_4` by adding a fixed point, and projections
/// out of a product.
pub fn random_hom<R: Rng>(rng: &mut R) -> Hom {
    match rng.gen_range(0..5) {
        0 => {
            let m = rng.gen_range(1..=24u64);
            let n = rng.gen_range(1..=24u64);
            let step = n / gcd(m, n);
            let c = step * rng.gen_range(0..=n);
            Hom {
                domain: Group::cyclic(m).unwrap(),
                codomain: Group::cyclic(n).unwrap(),
                map: Box::new(move |e| match e {
                    Element::Int(x) => Element::Int(((*x as u64 * c) % n) as i64),
                    _ => unreachable!(),
                }),
            }
        }
        1 => {
            let n = rng.gen_range(1..=4usize);
            Hom {
                domain: Group::symmetric(n).unwrap(),
                codomain: Group::cyclic(2).unwrap(),
                map: Box::new(|e| match e {
                    Element::Perm(p) => Element::Int(sign_of(p)),
                    _ => unreachable!(),
                }),
            }
        }
        2 => {
            let k = rng.gen_range(1..=4usize);
            let sk = Group::symmetric(k).unwrap();
            let Element::Perm(p) = random_element(rng, &sk) else {
                unreachable!()
            };
            let m = perm_order(&p) * rng.gen_range(1..=4);
            Hom {
                domain: Group::cyclic(m).unwrap(),
                codomain: sk,
                map: Box::new(move |e| match e {
                    Element::Int(x) => Element::Perm(perm_power(&p, *x as u64)),
                    _ => unreachable!(),
                }),
            }
        }
        3 => Hom {
            domain: Group::symmetric(3).unwrap(),
            codomain: Group::symmetric(4).unwrap(),
            map: Box::new(|e| match e {
                Element::Perm(p) => {
                    let mut img = p.images().to_vec();
                    img.push(3);
                    Element::Perm(Permutation::from_images(img).unwrap())
                }
                _ => unreachable!(),
            }),
        },
        _ => {
            let a = Group::cyclic(rng.gen_range(1..=4)).unwrap();
            let b = Group::symmetric(rng.gen_range(1..=3)).unwrap();
            let first = rng.gen_bool(0.5);
            let codomain = if first { a.clone() } else { b.clone() };
            Hom {
                domain: Group::direct_product(a, b),
                codomain,
                map: Box::new(move |e| match e {
                    Element::Tuple(xs) => xs[if first { 0 } else { 1 }].clone(),
                    _ => unreachable!(),
                }),
            }
        }
    }
}
