//! Freely reduced words over a finite alphabet.
//!
//! A word is a sequence of signed generator letters with no adjacent
//! cancelling pair. The empty word is the identity `e`, and the length of a
//! reduced word is its letter count, which in a free group is the minimal
//! number of signed generators needed to spell the element.
//!
//! Text syntax: `x0 x1^-1 x0^2`, with `e` for the empty word.

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};

/// Default upper bound on ball radii.
pub const DEFAULT_BALL_CAP: usize = 12;

/// Hard ceiling on the number of words a single ball may hold.
pub const MAX_BALL_MEMBERS: u64 = 1 << 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet {
    rank: usize,
}

impl Alphabet {
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 {
            return invalid("alphabet rank must be at least 1");
        }
        Ok(Alphabet { rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// All `2 * rank` letters in canonical order: `x0, x0^-1, x1, x1^-1, ...`.
    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.rank).flat_map(|s| [Letter::new(s, Sign::Pos), Letter::new(s, Sign::Neg)])
    }
}

/// Exponent sign of a letter. `Pos` orders before `Neg`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }
}

/// A signed generator `x_symbol^{±1}`. Ordered by `(symbol, sign)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub symbol: usize,
    pub sign: Sign,
}

impl Letter {
    pub const fn new(symbol: usize, sign: Sign) -> Self {
        Letter { symbol, sign }
    }

    pub const fn pos(symbol: usize) -> Self {
        Letter::new(symbol, Sign::Pos)
    }

    pub const fn neg(symbol: usize) -> Self {
        Letter::new(symbol, Sign::Neg)
    }

    pub fn inverse(self) -> Letter {
        Letter::new(self.symbol, self.sign.flip())
    }

    fn cancels(self, other: Letter) -> bool {
        self.symbol == other.symbol && self.sign != other.sign
    }
}

/// A freely reduced word; the empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReducedWord {
    alphabet: Alphabet,
    letters: Vec<Letter>,
}

impl PartialOrd for ReducedWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Shortlex: shorter words first, then lexicographic on letters.
impl Ord for ReducedWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.alphabet
            .rank
            .cmp(&other.alphabet.rank)
            .then(self.letters.len().cmp(&other.letters.len()))
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl ReducedWord {
    pub fn identity(alphabet: Alphabet) -> Self {
        ReducedWord {
            alphabet,
            letters: Vec::new(),
        }
    }

    /// The single-letter word `x_symbol^{sign}`.
    pub fn generator(alphabet: Alphabet, letter: Letter) -> Result<Self> {
        reduce(&[letter], alphabet)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Word length: the reduced letter count.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn multiply(&self, other: &ReducedWord) -> Result<ReducedWord> {
        multiply(self, other)
    }

    pub fn inverse(&self) -> ReducedWord {
        invert(self)
    }

    pub fn parse(text: &str, alphabet: Alphabet) -> Result<ReducedWord> {
        let raw = parse_letters(text)?;
        reduce(&raw, alphabet)
    }
}

/// Freely reduce a raw letter sequence.
pub fn reduce(raw: &[Letter], alphabet: Alphabet) -> Result<ReducedWord> {
    let mut letters: Vec<Letter> = Vec::with_capacity(raw.len());
    for &letter in raw {
        if letter.symbol >= alphabet.rank {
            return invalid(format!(
                "symbol x{} out of range for rank {}",
                letter.symbol, alphabet.rank
            ));
        }
        match letters.last() {
            Some(&top) if top.cancels(letter) => {
                letters.pop();
            }
            _ => letters.push(letter),
        }
    }
    Ok(ReducedWord { alphabet, letters })
}

pub fn multiply(u: &ReducedWord, v: &ReducedWord) -> Result<ReducedWord> {
    if u.alphabet != v.alphabet {
        return invalid(format!(
            "alphabet mismatch: rank {} vs rank {}",
            u.alphabet.rank, v.alphabet.rank
        ));
    }
    // Cancel across the junction only; both halves are already reduced.
    let mut cut = 0;
    while cut < u.letters.len()
        && cut < v.letters.len()
        && u.letters[u.letters.len() - 1 - cut].cancels(v.letters[cut])
    {
        cut += 1;
    }
    let mut letters = Vec::with_capacity(u.letters.len() + v.letters.len() - 2 * cut);
    letters.extend_from_slice(&u.letters[..u.letters.len() - cut]);
    letters.extend_from_slice(&v.letters[cut..]);
    Ok(ReducedWord {
        alphabet: u.alphabet,
        letters,
    })
}

pub fn invert(w: &ReducedWord) -> ReducedWord {
    ReducedWord {
        alphabet: w.alphabet,
        letters: w.letters.iter().rev().map(|l| l.inverse()).collect(),
    }
}

pub fn length(w: &ReducedWord) -> usize {
    w.letters.len()
}

/// The prefix chain `e = w_0, w_1, ..., w_k = w`; `w_j` has length `j`.
pub fn prefixes(w: &ReducedWord) -> Vec<ReducedWord> {
    (0..=w.letters.len())
        .map(|j| ReducedWord {
            alphabet: w.alphabet,
            letters: w.letters[..j].to_vec(),
        })
        .collect()
}

/// Number of reduced words of length at most `radius` over `rank` generators.
pub fn ball_size(rank: usize, radius: usize) -> Option<u64> {
    let r = rank as u64;
    let mut total: u64 = 1;
    let mut sphere: u64 = 2 * r;
    for i in 1..=radius {
        if i > 1 {
            sphere = sphere.checked_mul(2 * r - 1)?;
        }
        total = total.checked_add(sphere)?;
    }
    Some(total)
}

/// The closed ball of reduced words of length at most `radius`, in shortlex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball {
    alphabet: Alphabet,
    radius: usize,
    members: Vec<ReducedWord>,
}

impl Ball {
    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn members(&self) -> &[ReducedWord] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, w: &ReducedWord) -> bool {
        w.alphabet == self.alphabet && w.len() <= self.radius
    }
}

pub fn ball(alphabet: Alphabet, radius: usize) -> Result<Ball> {
    ball_with_cap(alphabet, radius, DEFAULT_BALL_CAP)
}

pub fn ball_with_cap(alphabet: Alphabet, radius: usize, cap: usize) -> Result<Ball> {
    if radius > cap {
        return Err(Error::ResourceLimit(format!(
            "ball radius {radius} exceeds cap {cap}"
        )));
    }
    let expected = ball_size(alphabet.rank, radius)
        .filter(|&n| n <= MAX_BALL_MEMBERS)
        .ok_or_else(|| {
            Error::ResourceLimit(format!(
                "ball of rank {} and radius {radius} exceeds {MAX_BALL_MEMBERS} words",
                alphabet.rank
            ))
        })?;

    let mut members = Vec::with_capacity(expected as usize);
    members.push(ReducedWord::identity(alphabet));
    // Extending a lexicographically sorted sphere letter by letter keeps the
    // next sphere sorted, so levels concatenate into shortlex order.
    let mut level_start = 0;
    for _ in 0..radius {
        let level_end = members.len();
        for idx in level_start..level_end {
            for letter in alphabet.letters() {
                let w = &members[idx];
                if w.letters.last().is_some_and(|&l| l.cancels(letter)) {
                    continue;
                }
                let mut letters = Vec::with_capacity(w.letters.len() + 1);
                letters.extend_from_slice(&w.letters);
                letters.push(letter);
                members.push(ReducedWord { alphabet, letters });
            }
        }
        level_start = level_end;
    }
    debug_assert_eq!(members.len() as u64, expected);
    Ok(Ball {
        alphabet,
        radius,
        members,
    })
}

fn parse_letters(text: &str) -> Result<Vec<Letter>> {
    let text = text.trim();
    if text == "e" || text.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for token in text.split_whitespace() {
        if token == "e" {
            continue;
        }
        let (base, exp) = match token.split_once('^') {
            Some((b, e)) => {
                let exp: i64 = e
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("bad exponent in `{token}`")))?;
                if exp == 0 {
                    return invalid(format!("zero exponent in `{token}`"));
                }
                (b, exp)
            }
            None => (token, 1),
        };
        let symbol: usize = base
            .strip_prefix('x')
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::InvalidInput(format!("bad generator `{token}`")))?;
        let sign = if exp > 0 { Sign::Pos } else { Sign::Neg };
        if exp.unsigned_abs() > 1 << 20 {
            return Err(Error::ResourceLimit(format!(
                "exponent too large in `{token}`"
            )));
        }
        out.extend(std::iter::repeat_n(
            Letter::new(symbol, sign),
            exp.unsigned_abs() as usize,
        ));
    }
    Ok(out)
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let letter = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == letter {
                run += 1;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let exp = run as i64 * letter.sign.as_i32() as i64;
            if exp == 1 {
                write!(f, "x{}", letter.symbol)?;
            } else {
                write!(f, "x{}^{}", letter.symbol, exp)?;
            }
            i += run;
        }
        Ok(())
    }
}

/// Parses a word of unknown rank; the rank is taken as one past the largest symbol.
impl FromStr for ReducedWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let raw = parse_letters(s)?;
        let rank = raw.iter().map(|l| l.symbol + 1).max().unwrap_or(1);
        reduce(&raw, Alphabet::new(rank)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const X: usize = 0;
    const Y: usize = 1;

    fn ab(rank: usize) -> Alphabet {
        Alphabet::new(rank).unwrap()
    }

    fn w(letters: &[Letter]) -> ReducedWord {
        reduce(letters, ab(2)).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let r = w(&[
            Letter::pos(X),
            Letter::pos(Y),
            Letter::neg(Y),
            Letter::pos(X),
        ]);
        assert_eq!(r.letters(), &[Letter::pos(X), Letter::pos(X)]);
        assert!(w(&[]).is_identity());
        let r = w(&[
            Letter::pos(X),
            Letter::pos(Y),
            Letter::neg(X),
            Letter::pos(X),
            Letter::neg(Y),
            Letter::neg(X),
        ]);
        assert!(r.is_identity());
    }

    #[test]
    fn reduce_rejects_out_of_range() {
        assert!(matches!(
            reduce(&[Letter::pos(2)], ab(2)),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn multiply_examples() {
        let xy = w(&[Letter::pos(X), Letter::pos(Y)]);
        let yx = w(&[Letter::pos(Y), Letter::pos(X)]);
        assert!(multiply(&xy, &invert(&xy)).unwrap().is_identity());
        assert_eq!(multiply(&ReducedWord::identity(ab(2)), &xy).unwrap(), xy);
        assert_eq!(multiply(&xy, &yx).unwrap().to_string(), "x0 x1^2 x0");
        let other = ReducedWord::identity(ab(3));
        assert!(multiply(&xy, &other).is_err());
    }

    #[test]
    fn invert_examples() {
        let xy = w(&[Letter::pos(X), Letter::pos(Y)]);
        assert_eq!(invert(&xy).letters(), &[Letter::neg(Y), Letter::neg(X)]);
        assert!(invert(&ReducedWord::identity(ab(2))).is_identity());
        let c = w(&[Letter::neg(X), Letter::pos(Y), Letter::pos(X)]);
        let ci = invert(&c);
        assert_eq!(
            ci.letters(),
            &[Letter::neg(X), Letter::neg(Y), Letter::pos(X)]
        );
        assert!(multiply(&c, &ci).unwrap().is_identity());
    }

    #[test]
    fn length_examples() {
        assert_eq!(length(&ReducedWord::identity(ab(2))), 0);
        assert_eq!(length(&w(&[Letter::neg(X)])), 1);
        assert_eq!(
            length(&w(&[Letter::pos(X), Letter::pos(Y), Letter::neg(X)])),
            3
        );
    }

    #[test]
    fn ball_examples() {
        let b = ball(ab(2), 1).unwrap();
        let shown: Vec<String> = b.members().iter().map(|w| w.to_string()).collect();
        assert_eq!(shown, ["e", "x0", "x0^-1", "x1", "x1^-1"]);

        let b = ball(ab(1), 3).unwrap();
        let shown: Vec<String> = b.members().iter().map(|w| w.to_string()).collect();
        assert_eq!(
            shown,
            ["e", "x0", "x0^-1", "x0^2", "x0^-2", "x0^3", "x0^-3"]
        );

        assert_eq!(ball(ab(2), 2).unwrap().len(), 17);
    }

    #[test]
    fn ball_cap_is_an_error() {
        assert!(matches!(ball(ab(1), 13), Err(Error::ResourceLimit(_))));
        assert_eq!(ball_with_cap(ab(1), 13, 13).unwrap().len(), 27);
        assert!(matches!(
            ball_with_cap(ab(6), 12, 12),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn ball_is_shortlex_sorted() {
        let b = ball(ab(3), 3).unwrap();
        assert!(b.members().windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn prefixes_examples() {
        let v = w(&[Letter::pos(X), Letter::neg(Y), Letter::pos(X)]);
        let shown: Vec<String> = prefixes(&v).iter().map(|w| w.to_string()).collect();
        assert_eq!(shown, ["e", "x0", "x0 x1^-1", "x0 x1^-1 x0"]);
        assert_eq!(prefixes(&ReducedWord::identity(ab(2))).len(), 1);
        let cube = ReducedWord::parse("x0^3", ab(1)).unwrap();
        let lens: Vec<usize> = prefixes(&cube).iter().map(length).collect();
        assert_eq!(lens, [0, 1, 2, 3]);
    }

    #[test]
    fn text_syntax() {
        let a = ab(2);
        let v = ReducedWord::parse("x0 x1^-1 x0^2", a).unwrap();
        assert_eq!(v.len(), 4);
        assert_eq!(v.to_string(), "x0 x1^-1 x0^2");
        assert!(ReducedWord::parse("e", a).unwrap().is_identity());
        assert!(ReducedWord::parse("x0 x0^-1", a).unwrap().is_identity());
        assert!(ReducedWord::parse("x0^0", a).is_err());
        assert!(ReducedWord::parse("y1", a).is_err());
        assert!(ReducedWord::parse("x2", a).is_err());
        let parsed: ReducedWord = "x3^-2".parse().unwrap();
        assert_eq!(parsed.alphabet().rank(), 4);
    }
}
