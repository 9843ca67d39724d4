//! Exhaustive search for local embeddings of a partial table into finite groups.
//!
//! Variables are table indices, visited in index order; values are target
//! elements in canonical order. When an identity index is present its image
//! is fixed to the target identity before branching. After every assignment
//! each recorded triple with two known images forces the third
//! (`c = ab`, `b = a⁻¹c`, `a = cb⁻¹`), and injectivity is maintained through
//! an owner map on target elements. Any contradiction backtracks at once.
//!
//! [`brute_oracle`] is an independent reference that enumerates every
//! injective assignment and checks it with [`verify_local_embedding`].

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::groups::{Element, Group, IndexedGroup};
use crate::partial::{verify_local_embedding, PartialGroupTable, Triple};
use crate::SCHEMA;

const NONE: usize = usize::MAX;

/// Upper bound on `|target|^n` for [`brute_oracle`].
pub const ORACLE_GUARD: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchBudget {
    pub max_cyclic_m: u64,
    pub max_symmetric_n: usize,
    /// Node limit per target.
    pub node_limit: u64,
    /// Wall-clock limit per call.
    #[serde(rename = "time_limit_ms", with = "millis")]
    pub time_limit: Duration,
}

mod millis {
    use serde::{Deserialize, Deserializer, Serializer};
    use std::time::Duration;

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(d.as_millis() as u64)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_millis(u64::deserialize(d)?))
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_cyclic_m: 64,
            max_symmetric_n: 6,
            node_limit: 10_000_000,
            time_limit: Duration::from_secs(60),
        }
    }
}

impl SearchBudget {
    pub fn validate(&self) -> Result<()> {
        if self.max_cyclic_m == 0
            || self.max_symmetric_n == 0
            || self.node_limit == 0
            || self.time_limit.is_zero()
        {
            return Err(Error::InvalidInput("budget fields must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BudgetLimit {
    Nodes,
    Time,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingWitness {
    pub target: Group,
    pub images: Vec<Element>,
    pub verified: bool,
    pub nodes: u64,
    /// Set for witnesses built by a closed-form construction.
    pub construction: Option<String>,
}

impl EmbeddingWitness {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "schema": SCHEMA,
            "target": self.target.spec(),
            "images": self.images.iter().map(|e| self.target.element_to_json(e)).collect::<Vec<_>>(),
            "verified": self.verified,
            "nodes": self.nodes,
        });
        if let Some(c) = &self.construction {
            v["construction"] = Value::from(c.clone());
        }
        v
    }

    /// Re-check against a table; returns `true` iff the images form a local embedding.
    pub fn recheck(&self, table: &PartialGroupTable) -> Result<bool> {
        Ok(verify_local_embedding(table, &self.target, &self.images)?.is_local_embedding())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(EmbeddingWitness),
    Exhausted { nodes: u64 },
    BudgetExceeded { nodes: u64, limit: BudgetLimit },
}

impl SearchOutcome {
    pub fn nodes(&self) -> u64 {
        match self {
            SearchOutcome::Found(w) => w.nodes,
            SearchOutcome::Exhausted { nodes } | SearchOutcome::BudgetExceeded { nodes, .. } => {
                *nodes
            }
        }
    }

    pub fn witness(&self) -> Option<&EmbeddingWitness> {
        match self {
            SearchOutcome::Found(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateOutcome {
    /// Every target was searched completely without finding an embedding.
    Exhausted,
    /// Some target hit the budget; nothing is claimed about it or later targets.
    BudgetExceeded,
}

/// Record of a completed (or budget-stopped) search that found nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExhaustionCertificate {
    pub table_digest: String,
    pub targets: Vec<Group>,
    pub nodes_per_target: Vec<u64>,
    pub outcome: CertificateOutcome,
    pub limit: Option<BudgetLimit>,
    pub budget: SearchBudget,
}

impl ExhaustionCertificate {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "schema": SCHEMA,
            "outcome": self.outcome,
            "table_digest": self.table_digest,
            "targets": self.targets.iter().map(Group::spec).collect::<Vec<_>>(),
            "nodes_per_target": self.nodes_per_target,
            "budget": self.budget,
        });
        if let Some(limit) = self.limit {
            v["limit"] = json!(limit);
        }
        v
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SweepOutcome {
    Witness(EmbeddingWitness),
    Certificate(ExhaustionCertificate),
}

impl SweepOutcome {
    pub fn witness(&self) -> Option<&EmbeddingWitness> {
        match self {
            SweepOutcome::Witness(w) => Some(w),
            SweepOutcome::Certificate(_) => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            SweepOutcome::Witness(w) => w.to_json(),
            SweepOutcome::Certificate(c) => c.to_json(),
        }
    }
}

struct Stop(BudgetLimit);

struct Engine<'a> {
    target: &'a IndexedGroup,
    // triples touching each variable
    watch: Vec<Vec<Triple>>,
    image: Vec<usize>,
    owner: Vec<usize>,
    trail: Vec<usize>,
    queue: Vec<usize>,
    nodes: u64,
    node_limit: u64,
    deadline: Instant,
}

impl<'a> Engine<'a> {
    fn new(
        table: &PartialGroupTable,
        target: &'a IndexedGroup,
        node_limit: u64,
        deadline: Instant,
    ) -> Self {
        let n = table.size();
        let mut watch = vec![Vec::new(); n];
        for &(i, j, k) in table.triples() {
            watch[i].push((i, j, k));
            if j != i {
                watch[j].push((i, j, k));
            }
            if k != i && k != j {
                watch[k].push((i, j, k));
            }
        }
        Engine {
            target,
            watch,
            image: vec![NONE; n],
            owner: vec![NONE; target.order()],
            trail: Vec::with_capacity(n),
            queue: Vec::new(),
            nodes: 0,
            node_limit,
            deadline,
        }
    }

    fn set(&mut self, var: usize, value: usize) -> bool {
        if self.image[var] != NONE {
            return self.image[var] == value;
        }
        if self.owner[value] != NONE {
            return false;
        }
        self.image[var] = value;
        self.owner[value] = var;
        self.trail.push(var);
        self.queue.push(var);
        true
    }

    /// Assign and propagate to a fixpoint; `false` on contradiction.
    fn assign(&mut self, var: usize, value: usize) -> bool {
        self.queue.clear();
        if !self.set(var, value) {
            return false;
        }
        while let Some(v) = self.queue.pop() {
            for t in 0..self.watch[v].len() {
                let (i, j, k) = self.watch[v][t];
                let (a, b, c) = (self.image[i], self.image[j], self.image[k]);
                let ok = match (a != NONE, b != NONE, c != NONE) {
                    (true, true, _) => self.set(k, self.target.mul(a, b)),
                    (true, false, true) => self.set(j, self.target.mul(self.target.inv(a), c)),
                    (false, true, true) => self.set(i, self.target.mul(c, self.target.inv(b))),
                    _ => true,
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let var = self.trail.pop().expect("trail above mark");
            self.owner[self.image[var]] = NONE;
            self.image[var] = NONE;
        }
    }

    fn solve(&mut self, from: usize) -> std::result::Result<bool, Stop> {
        let Some(var) = (from..self.image.len()).find(|&v| self.image[v] == NONE) else {
            return Ok(true);
        };
        for value in 0..self.target.order() {
            if self.owner[value] != NONE {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.node_limit {
                return Err(Stop(BudgetLimit::Nodes));
            }
            if self.nodes.is_multiple_of(1024) && Instant::now() >= self.deadline {
                return Err(Stop(BudgetLimit::Time));
            }
            let mark = self.trail.len();
            if self.assign(var, value) && self.solve(var + 1)? {
                return Ok(true);
            }
            self.undo(mark);
        }
        Ok(false)
    }
}

fn index_target(target: &Group) -> Result<IndexedGroup> {
    IndexedGroup::new(target).map_err(|e| match e {
        Error::NotEnumerable(msg) => {
            Error::InvalidInput(format!("search target must be finite: {msg}"))
        }
        other => other,
    })
}

/// Search one finite target for a local embedding of `table`.
pub fn search_embedding(
    table: &PartialGroupTable,
    target: &Group,
    budget: &SearchBudget,
) -> Result<SearchOutcome> {
    budget.validate()?;
    let indexed = index_target(target)?;
    Ok(search_indexed(
        table,
        &indexed,
        budget.node_limit,
        Instant::now() + budget.time_limit,
    ))
}

fn search_indexed(
    table: &PartialGroupTable,
    target: &IndexedGroup,
    node_limit: u64,
    deadline: Instant,
) -> SearchOutcome {
    if target.order() < table.size() {
        return SearchOutcome::Exhausted { nodes: 0 };
    }
    let mut engine = Engine::new(table, target, node_limit, deadline);
    if let Some(e) = table.identity() {
        if !engine.assign(e, target.identity()) {
            return SearchOutcome::Exhausted { nodes: 0 };
        }
    }
    match engine.solve(0) {
        Ok(true) => {
            let images: Vec<Element> = engine.image.iter().map(|&i| target.element(i)).collect();
            let verified = verify_local_embedding(table, target.group(), &images)
                .map(|r| r.is_local_embedding())
                .unwrap_or(false);
            debug_assert!(verified, "search produced an unverifiable witness");
            SearchOutcome::Found(EmbeddingWitness {
                target: target.group().clone(),
                images,
                verified,
                nodes: engine.nodes,
                construction: None,
            })
        }
        Ok(false) => SearchOutcome::Exhausted {
            nodes: engine.nodes,
        },
        Err(Stop(limit)) => SearchOutcome::BudgetExceeded {
            nodes: engine.nodes.min(node_limit),
            limit,
        },
    }
}

/// Try the targets in order; return the first witness, or a certificate.
pub fn sweep(
    table: &PartialGroupTable,
    targets: impl IntoIterator<Item = Result<Group>>,
    budget: &SearchBudget,
) -> Result<SweepOutcome> {
    budget.validate()?;
    let deadline = Instant::now() + budget.time_limit;
    let mut tried = Vec::new();
    let mut nodes = Vec::new();
    for target in targets {
        let target = target?;
        let indexed = index_target(&target)?;
        let outcome = search_indexed(table, &indexed, budget.node_limit, deadline);
        nodes.push(outcome.nodes());
        tried.push(target);
        match outcome {
            SearchOutcome::Found(w) => return Ok(SweepOutcome::Witness(w)),
            SearchOutcome::Exhausted { .. } => {}
            SearchOutcome::BudgetExceeded { limit, .. } => {
                return Ok(SweepOutcome::Certificate(ExhaustionCertificate {
                    table_digest: table.digest(),
                    targets: tried,
                    nodes_per_target: nodes,
                    outcome: CertificateOutcome::BudgetExceeded,
                    limit: Some(limit),
                    budget: *budget,
                }))
            }
        }
    }
    Ok(SweepOutcome::Certificate(ExhaustionCertificate {
        table_digest: table.digest(),
        targets: tried,
        nodes_per_target: nodes,
        outcome: CertificateOutcome::Exhausted,
        limit: None,
        budget: *budget,
    }))
}

/// Minimal `m ≤ max_cyclic_m` such that the table embeds in `Z/m`.
pub fn sweep_cyclic(table: &PartialGroupTable, budget: &SearchBudget) -> Result<SweepOutcome> {
    sweep(table, (1..=budget.max_cyclic_m).map(Group::cyclic), budget)
}

/// Minimal `n ≤ max_symmetric_n` such that the table embeds in `S_n`.
pub fn sweep_symmetric(table: &PartialGroupTable, budget: &SearchBudget) -> Result<SweepOutcome> {
    sweep(
        table,
        (1..=budget.max_symmetric_n).map(Group::symmetric),
        budget,
    )
}

/// Wrap a single-target outcome as a sweep outcome over that one target.
pub fn single_target(
    table: &PartialGroupTable,
    target: &Group,
    budget: &SearchBudget,
) -> Result<SweepOutcome> {
    sweep(table, std::iter::once(Ok(target.clone())), budget)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    Found(Vec<Element>),
    Exhausted,
}

impl OracleOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self, OracleOutcome::Found(_))
    }
}

/// Enumerate every injective assignment in canonical order and return the
/// first local embedding.
pub fn brute_oracle(table: &PartialGroupTable, target: &Group) -> Result<OracleOutcome> {
    let elements = target.elements().map_err(|e| match e {
        Error::NotEnumerable(msg) => Error::InvalidInput(msg),
        other => other,
    })?;
    let n = table.size();
    let space = (elements.len() as u64).checked_pow(n as u32);
    if space.is_none_or(|s| s > ORACLE_GUARD) {
        return Err(Error::ResourceLimit(format!(
            "oracle space {}^{n} exceeds {ORACLE_GUARD}",
            elements.len()
        )));
    }
    if elements.len() < n {
        return Ok(OracleOutcome::Exhausted);
    }
    let mut choice = vec![0usize; n];
    let mut used = vec![false; elements.len()];
    let mut images: Vec<Element> = Vec::with_capacity(n);
    let mut found = None;
    enumerate(0, &elements, &mut choice, &mut used, &mut |choice| {
        images.clear();
        images.extend(choice.iter().map(|&c| elements[c].clone()));
        match verify_local_embedding(table, target, &images) {
            Ok(r) if r.is_local_embedding() => {
                found = Some(images.clone());
                true
            }
            _ => false,
        }
    });
    Ok(match found {
        Some(images) => OracleOutcome::Found(images),
        None => OracleOutcome::Exhausted,
    })
}

fn enumerate(
    depth: usize,
    elements: &[Element],
    choice: &mut [usize],
    used: &mut [bool],
    accept: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if depth == choice.len() {
        return accept(choice);
    }
    for c in 0..elements.len() {
        if used[c] {
            continue;
        }
        used[c] = true;
        choice[depth] = c;
        let done = enumerate(depth + 1, elements, choice, used, accept);
        used[c] = false;
        if done {
            return true;
        }
    }
    false
}
