//! Finite presentations and homomorphisms out of free groups.
//!
//! A presentation `⟨X; R⟩` is held symbolically: an alphabet and a list of
//! relator words. Choosing images for the generators in a group `H`
//! determines a unique homomorphism `f*: F(X) -> H`; it factors through the
//! presented group exactly when every relator evaluates to the identity.
//!
//! Ball reports measure how `f*` separates the words of a free-group ball.
//! Two words landing on the same image form a collision class. These are
//! collisions on the free ball, not on the ball of the presented group:
//! deciding which free words are equal in `⟨X; R⟩` is the word problem,
//! which is not attempted here.

use std::collections::HashMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{invalid, Error, Result};
use crate::groups::{Element, Group, IndexedGroup};
use crate::search::{BudgetLimit, SearchBudget};
use crate::words::{ball_with_cap, Alphabet, ReducedWord, Sign, DEFAULT_BALL_CAP};
use crate::SCHEMA;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PresentationJson", into = "PresentationJson")]
pub struct Presentation {
    alphabet: Alphabet,
    relators: Vec<ReducedWord>,
}

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    schema: Option<String>,
    rank: usize,
    #[serde(default)]
    relators: Vec<String>,
}

impl TryFrom<PresentationJson> for Presentation {
    type Error = Error;

    fn try_from(j: PresentationJson) -> Result<Self> {
        crate::check_schema(j.schema.as_deref())?;
        let alphabet = Alphabet::new(j.rank)?;
        let relators = j
            .relators
            .iter()
            .map(|r| ReducedWord::parse(r, alphabet))
            .collect::<Result<_>>()?;
        Ok(Presentation { alphabet, relators })
    }
}

impl From<Presentation> for PresentationJson {
    fn from(p: Presentation) -> Self {
        PresentationJson {
            schema: Some(SCHEMA.to_string()),
            rank: p.alphabet.rank(),
            relators: p.relators.iter().map(ToString::to_string).collect(),
        }
    }
}

impl Presentation {
    pub fn new(alphabet: Alphabet, relators: Vec<ReducedWord>) -> Result<Self> {
        if let Some(r) = relators.iter().find(|r| r.alphabet() != alphabet) {
            return invalid(format!("relator `{r}` uses a different alphabet"));
        }
        Ok(Presentation { alphabet, relators })
    }

    /// Parse relators in word syntax over `rank` generators.
    pub fn parse(rank: usize, relators: &[&str]) -> Result<Self> {
        let alphabet = Alphabet::new(rank)?;
        let relators = relators
            .iter()
            .map(|r| ReducedWord::parse(r, alphabet))
            .collect::<Result<_>>()?;
        Ok(Presentation { alphabet, relators })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn rank(&self) -> usize {
        self.alphabet.rank()
    }

    pub fn relators(&self) -> &[ReducedWord] {
        &self.relators
    }

    /// Indices of relators that reduce to the empty word.
    pub fn redundant_relators(&self) -> Vec<usize> {
        (0..self.relators.len())
            .filter(|&i| self.relators[i].is_identity())
            .collect()
    }
}

/// Images of the generators; determines the homomorphism `f*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorImages {
    target: Group,
    images: Vec<Element>,
}

impl GeneratorImages {
    pub fn new(target: Group, images: Vec<Element>) -> Result<Self> {
        if let Some(bad) = images.iter().find(|e| !target.contains(e)) {
            return invalid(format!("{bad:?} is not an element of {target}"));
        }
        Ok(GeneratorImages { target, images })
    }

    pub fn from_json(target: Group, images: &Value) -> Result<Self> {
        let images = images
            .as_array()
            .ok_or_else(|| Error::InvalidInput("generator images must be an array".into()))?
            .iter()
            .map(|v| target.element_from_json(v))
            .collect::<Result<_>>()?;
        Ok(GeneratorImages { target, images })
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn image_json(&self) -> Vec<Value> {
        self.images
            .iter()
            .map(|e| self.target.element_to_json(e))
            .collect()
    }

    fn check_rank(&self, rank: usize) -> Result<()> {
        if self.images.len() != rank {
            return invalid(format!(
                "{} generator images for rank {rank}",
                self.images.len()
            ));
        }
        Ok(())
    }
}

/// `f*(x_1^{e_1} ... x_k^{e_k}) = f*(x_1)^{e_1} ... f*(x_k)^{e_k}`.
pub fn induced_hom_eval(gi: &GeneratorImages, w: &ReducedWord) -> Result<Element> {
    gi.check_rank(w.alphabet().rank())?;
    let g = &gi.target;
    let inverses: Vec<Element> = gi.images.iter().map(|x| g.inv_unchecked(x)).collect();
    Ok(w.letters().iter().fold(g.identity(), |acc, l| {
        let factor = match l.sign {
            Sign::Pos => &gi.images[l.symbol],
            Sign::Neg => &inverses[l.symbol],
        };
        g.mul_unchecked(&acc, factor)
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelatorCheck {
    pub all_vanish: bool,
    /// Index of the first relator whose image is not the identity.
    pub first_failing: Option<usize>,
}

pub fn check_relators(p: &Presentation, gi: &GeneratorImages) -> Result<RelatorCheck> {
    gi.check_rank(p.rank())?;
    let id = gi.target.identity();
    for (i, r) in p.relators.iter().enumerate() {
        if induced_hom_eval(gi, r)? != id {
            return Ok(RelatorCheck {
                all_vanish: false,
                first_failing: Some(i),
            });
        }
    }
    Ok(RelatorCheck {
        all_vanish: true,
        first_failing: None,
    })
}

/// Words of the free ball sharing one image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageClass {
    pub image: Element,
    pub words: Vec<ReducedWord>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallImageReport {
    pub radius: usize,
    pub total_words: usize,
    pub distinct_images: usize,
    /// Every image class, singletons included, ordered by first word in shortlex.
    pub classes: Vec<ImageClass>,
    pub relators_vanish: bool,
}

impl BallImageReport {
    /// Classes with at least two words.
    pub fn collision_classes(&self) -> impl Iterator<Item = &ImageClass> {
        self.classes.iter().filter(|c| c.words.len() > 1)
    }

    /// `total_words - distinct_images`: words lost to collisions.
    pub fn collision_excess(&self) -> usize {
        self.total_words - self.distinct_images
    }

    pub fn is_injective(&self) -> bool {
        self.distinct_images == self.total_words
    }

    pub fn to_json(&self) -> Value {
        json!({
            "radius": self.radius,
            "total_words": self.total_words,
            "distinct_images": self.distinct_images,
            "collision_classes": self
                .collision_classes()
                .map(|c| c.words.iter().map(ToString::to_string).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "relators_vanish": self.relators_vanish,
        })
    }
}

pub fn ball_image(
    p: &Presentation,
    gi: &GeneratorImages,
    radius: usize,
) -> Result<BallImageReport> {
    ball_image_with_cap(p, gi, radius, DEFAULT_BALL_CAP)
}

pub fn ball_image_with_cap(
    p: &Presentation,
    gi: &GeneratorImages,
    radius: usize,
    cap: usize,
) -> Result<BallImageReport> {
    gi.check_rank(p.rank())?;
    let ball = ball_with_cap(p.alphabet, radius, cap)?;
    let mut slot: HashMap<Element, usize> = HashMap::new();
    let mut classes: Vec<ImageClass> = Vec::new();
    for w in ball.members() {
        let image = induced_hom_eval(gi, w)?;
        match slot.get(&image) {
            Some(&c) => classes[c].words.push(w.clone()),
            None => {
                slot.insert(image.clone(), classes.len());
                classes.push(ImageClass {
                    image,
                    words: vec![w.clone()],
                });
            }
        }
    }
    Ok(BallImageReport {
        radius,
        total_words: ball.len(),
        distinct_images: classes.len(),
        classes,
        relators_vanish: check_relators(p, gi)?.all_vanish,
    })
}

/// Next tuple in lexicographic order, last coordinate fastest.
fn advance(tuple: &mut [usize], order: usize) -> bool {
    for pos in (0..tuple.len()).rev() {
        tuple[pos] += 1;
        if tuple[pos] < order {
            return true;
        }
        tuple[pos] = 0;
    }
    false
}

/// Smallest radius whose ball holds every generator and relator.
pub fn min_radius(p: &Presentation) -> usize {
    p.relators.iter().map(ReducedWord::len).fold(1, usize::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TargetFamily {
    Cyclic,
    Symmetric,
}

impl TargetFamily {
    fn targets(self, budget: &SearchBudget) -> Vec<Result<Group>> {
        match self {
            TargetFamily::Cyclic => (1..=budget.max_cyclic_m).map(Group::cyclic).collect(),
            TargetFamily::Symmetric => (1..=budget.max_symmetric_n).map(Group::symmetric).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientResult {
    pub images: GeneratorImages,
    pub report: BallImageReport,
    /// Generator-image tuples examined.
    pub candidates: u64,
    /// `false` when a budget limit stopped the enumeration early.
    pub exhaustive: bool,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuotientOutcome {
    Found(QuotientResult),
    NoQuotientFound {
        candidates: u64,
        exhaustive: bool,
        limit: Option<BudgetLimit>,
    },
}

impl QuotientOutcome {
    pub fn to_json(&self, p: &Presentation) -> Value {
        match self {
            QuotientOutcome::Found(r) => json!({
                "schema": SCHEMA,
                "outcome": "found",
                "presentation": p,
                "target": r.images.target.spec(),
                "images": r.images.image_json(),
                "report": r.report.to_json(),
                "candidates": r.candidates,
                "exhaustive": r.exhaustive,
                "warnings": r.warnings,
            }),
            QuotientOutcome::NoQuotientFound {
                candidates,
                exhaustive,
                limit,
            } => json!({
                "schema": SCHEMA,
                "outcome": "no-quotient-found",
                "presentation": p,
                "candidates": candidates,
                "exhaustive": exhaustive,
                "limit": limit,
            }),
        }
    }
}

/// Enumerate generator images into the given families (in order, each by
/// increasing size, tuples in canonical order), keep those that kill every
/// relator, and return the one with the fewest words lost to collisions on
/// the free ball of `radius`. Ties go to the first candidate; a
/// collision-free candidate ends the search.
pub fn lef_quotient_search(
    p: &Presentation,
    radius: usize,
    families: &[TargetFamily],
    budget: &SearchBudget,
) -> Result<QuotientOutcome> {
    lef_quotient_search_with_cap(p, radius, families, budget, DEFAULT_BALL_CAP)
}

pub fn lef_quotient_search_with_cap(
    p: &Presentation,
    radius: usize,
    families: &[TargetFamily],
    budget: &SearchBudget,
    cap: usize,
) -> Result<QuotientOutcome> {
    budget.validate()?;
    let ball = ball_with_cap(p.alphabet, radius, cap)?;
    let mut warnings = Vec::new();
    if radius < min_radius(p) {
        warnings.push(format!(
            "radius {radius} is below the minimal radius {} covering generators and relators",
            min_radius(p)
        ));
    }
    let deadline = Instant::now() + budget.time_limit;
    let rank = p.rank();
    let mut candidates = 0u64;
    let mut best: Option<(usize, Group, Vec<usize>)> = None;
    let mut stopped: Option<BudgetLimit> = None;

    'families: for family in families {
        for target in family.targets(budget) {
            let target = target?;
            let g = IndexedGroup::new(&target)?;
            let order = g.order();
            let mut tuple = vec![0usize; rank];
            loop {
                candidates += 1;
                if candidates > budget.node_limit {
                    stopped = Some(BudgetLimit::Nodes);
                    candidates -= 1;
                    break 'families;
                }
                if candidates.is_multiple_of(256) && Instant::now() >= deadline {
                    stopped = Some(BudgetLimit::Time);
                    break 'families;
                }
                let eval = |w: &ReducedWord| {
                    w.letters().iter().fold(g.identity(), |acc, l| {
                        let x = tuple[l.symbol];
                        g.mul(acc, if l.sign == Sign::Pos { x } else { g.inv(x) })
                    })
                };
                if p.relators.iter().all(|r| eval(r) == g.identity()) {
                    let mut seen = vec![false; order];
                    let distinct = ball
                        .members()
                        .iter()
                        .filter(|w| !std::mem::replace(&mut seen[eval(w)], true))
                        .count();
                    let excess = ball.len() - distinct;
                    if best.as_ref().is_none_or(|(b, _, _)| excess < *b) {
                        best = Some((excess, target.clone(), tuple.clone()));
                        if excess == 0 {
                            break 'families;
                        }
                    }
                }
                if !advance(&mut tuple, order) {
                    break;
                }
            }
        }
    }

    let exhaustive = stopped.is_none();
    match best {
        Some((_, target, tuple)) => {
            let g = IndexedGroup::new(&target)?;
            let images =
                GeneratorImages::new(target, tuple.iter().map(|&i| g.element(i)).collect())?;
            let report = ball_image_with_cap(p, &images, radius, cap)?;
            Ok(QuotientOutcome::Found(QuotientResult {
                images,
                report,
                candidates,
                exhaustive,
                warnings,
            }))
        }
        None => Ok(QuotientOutcome::NoQuotientFound {
            candidates,
            exhaustive,
            limit: stopped,
        }),
    }
}
