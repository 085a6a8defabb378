//! Influence diagram model, document format and structural checks.
//!
//! The same skeleton carries numeric tables ([`InfluenceDiagram`]) or
//! order-of-magnitude tables ([`OomInfluenceDiagram`]).
//!
//! # Document format
//!
//! A diagram is one JSON document:
//!
//! ```json
//! {
//!   "variables": [{"id": "Oil", "kind": "chance", "domain": ["dry", "wet"]}],
//!   "cpts": [{"child": "Oil", "parents": [], "table": [0.4, 0.6]}],
//!   "utilities": [{"name": "U", "scope": ["Oil"], "table": [-5, 10]}],
//!   "decision_order": [],
//!   "information_sets": {}
//! }
//! ```
//!
//! CPT tables are flat and row-major over `parents` followed by `child`: the
//! first parent varies slowest and the child index fastest. Utility tables
//! are row-major over `scope`. An optional `evidence` object maps chance
//! variables to observed labels.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Debug;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{DiagramError, Result};
use crate::factor::{flat_index, Configs};
use crate::oom::OomValue;
use crate::oom_set::OomSet;

pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VarKind {
    Chance,
    Decision,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Variable {
    pub id: String,
    pub kind: VarKind,
    pub domain: Vec<String>,
}

impl Variable {
    pub fn card(&self) -> usize {
        self.domain.len()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cpt<P> {
    pub child: usize,
    pub parents: Vec<usize>,
    pub table: Vec<P>,
}

impl<P> Cpt<P> {
    /// Table scope: parents then child.
    pub fn scope(&self) -> Vec<usize> {
        let mut s = self.parents.clone();
        s.push(self.child);
        s
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Utility<U> {
    pub name: Option<String>,
    pub scope: Vec<usize>,
    pub table: Vec<U>,
}

/// Probability entry checks for a table type.
pub trait ProbabilityEntry: Clone + Debug {
    fn zero() -> Self;
    /// Problems with one CPT row (all child values for one parent configuration).
    fn check_row(row: &[Self]) -> Option<String>;
}

impl ProbabilityEntry for f64 {
    fn zero() -> Self {
        0.0
    }

    fn check_row(row: &[f64]) -> Option<String> {
        if let Some(p) = row.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Some(format!("entry {p} outside [0, 1]"));
        }
        let sum: f64 = row.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Some(format!("row sums to {sum}, not 1"));
        }
        None
    }
}

impl ProbabilityEntry for OomValue {
    fn zero() -> Self {
        OomValue::ZERO
    }

    fn check_row(row: &[OomValue]) -> Option<String> {
        row.iter()
            .find(|p| !p.is_nonnegative())
            .map(|p| format!("entry {p} is not a positive order-of-magnitude value"))
    }
}

pub trait UtilityEntry: Clone + Debug {
    fn check(&self) -> Option<String>;
}

impl UtilityEntry for f64 {
    fn check(&self) -> Option<String> {
        (!self.is_finite()).then(|| format!("utility {self} is not finite"))
    }
}

impl UtilityEntry for OomSet {
    fn check(&self) -> Option<String> {
        (!self.is_canonical()).then(|| format!("utility {self} is not canonical"))
    }
}

/// An influence diagram over probability entries `P` and utility entries `U`.
///
/// `information_sets[k]` lists the parents of `decision_order[k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Diagram<P, U> {
    pub variables: Vec<Variable>,
    pub cpts: Vec<Cpt<P>>,
    pub utilities: Vec<Utility<U>>,
    pub decision_order: Vec<usize>,
    pub information_sets: Vec<Vec<usize>>,
    /// Observed chance variables as `(variable, value index)`.
    pub evidence: Vec<(usize, usize)>,
}

pub type InfluenceDiagram = Diagram<f64, f64>;
pub type OomInfluenceDiagram = Diagram<OomValue, OomSet>;

/// Chance blocks `I₀ … I_m` around the decisions `D₁ … D_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemporalPartition {
    pub blocks: Vec<Vec<usize>>,
    pub decisions: Vec<usize>,
}

#[derive(Clone, Copy, Debug)]
pub struct LoadOptions {
    /// Extend every information set with all earlier decisions and their parents.
    pub non_forgetting: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            non_forgetting: true,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CptDoc<P> {
    pub child: String,
    #[serde(default)]
    pub parents: Vec<String>,
    pub table: Vec<P>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct UtilityDoc<U> {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub scope: Vec<String>,
    pub table: Vec<U>,
}

/// Serialized form of a diagram, with variables referenced by id.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiagramDoc<P, U> {
    pub variables: Vec<Variable>,
    pub cpts: Vec<CptDoc<P>>,
    pub utilities: Vec<UtilityDoc<U>>,
    #[serde(default)]
    pub decision_order: Vec<String>,
    #[serde(default)]
    pub information_sets: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub evidence: BTreeMap<String, String>,
}

impl<P, U> Diagram<P, U> {
    pub fn card(&self, var: usize) -> usize {
        self.variables[var].card()
    }

    pub fn cards(&self, vars: &[usize]) -> Vec<usize> {
        vars.iter().map(|&v| self.card(v)).collect()
    }

    pub fn var_index(&self, id: &str) -> Option<usize> {
        self.variables.iter().position(|v| v.id == id)
    }

    pub fn is_decision(&self, var: usize) -> bool {
        self.variables[var].kind == VarKind::Decision
    }

    /// Number of distinct policies: `Π_k |Ω_{D_k}|^{|Ω_{pa(D_k)}|}`, as a float.
    pub fn policy_space_size(&self) -> f64 {
        self.decision_order
            .iter()
            .zip(&self.information_sets)
            .map(|(&d, info)| {
                let configs: f64 = info.iter().map(|&v| self.card(v) as f64).product();
                (self.card(d) as f64).powf(configs)
            })
            .product()
    }

    pub fn value_label(&self, var: usize, value: usize) -> &str {
        &self.variables[var].domain[value]
    }
}

impl<P, U> Diagram<P, U>
where
    P: ProbabilityEntry,
    U: UtilityEntry,
{
    pub fn from_doc(doc: DiagramDoc<P, U>, options: LoadOptions) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, v) in doc.variables.iter().enumerate() {
            index.entry(v.id.clone()).or_insert(i);
        }
        let resolve = |name: &String| -> Result<usize> {
            index
                .get(name)
                .copied()
                .ok_or_else(|| DiagramError::UnknownVariable(name.clone()))
        };
        let resolve_all = |names: &[String]| -> Result<Vec<usize>> { names.iter().map(resolve).collect() };

        let mut cpts = Vec::with_capacity(doc.cpts.len());
        for c in doc.cpts {
            cpts.push(Cpt {
                child: resolve(&c.child)?,
                parents: resolve_all(&c.parents)?,
                table: c.table,
            });
        }
        let mut utilities = Vec::with_capacity(doc.utilities.len());
        for u in doc.utilities {
            utilities.push(Utility {
                name: u.name,
                scope: resolve_all(&u.scope)?,
                table: u.table,
            });
        }
        let decision_order = resolve_all(&doc.decision_order)?;
        let mut problems = Vec::new();
        for key in doc.information_sets.keys() {
            if !doc.decision_order.contains(key) {
                problems.push(format!("information set given for {key:?}, which is not in decision_order"));
            }
        }
        let mut information_sets = Vec::with_capacity(decision_order.len());
        for name in &doc.decision_order {
            let members = doc.information_sets.get(name).cloned().unwrap_or_default();
            information_sets.push(resolve_all(&members)?);
        }
        let mut evidence = Vec::new();
        for (name, label) in &doc.evidence {
            let var = resolve(name)?;
            match doc.variables[var].domain.iter().position(|l| l == label) {
                Some(value) => evidence.push((var, value)),
                None => problems.push(format!("evidence {label:?} is not in the domain of {name}")),
            }
        }
        if !problems.is_empty() {
            return Err(DiagramError::Invalid(problems));
        }
        let diagram = Diagram {
            variables: doc.variables,
            cpts,
            utilities,
            decision_order,
            information_sets,
            evidence,
        };
        Ok(if options.non_forgetting {
            diagram.with_non_forgetting()
        } else {
            diagram
        })
    }

    pub fn to_doc(&self) -> DiagramDoc<P, U> {
        let name = |i: &usize| self.variables[*i].id.clone();
        DiagramDoc {
            variables: self.variables.clone(),
            cpts: self
                .cpts
                .iter()
                .map(|c| CptDoc {
                    child: name(&c.child),
                    parents: c.parents.iter().map(name).collect(),
                    table: c.table.clone(),
                })
                .collect(),
            utilities: self
                .utilities
                .iter()
                .map(|u| UtilityDoc {
                    name: u.name.clone(),
                    scope: u.scope.iter().map(name).collect(),
                    table: u.table.clone(),
                })
                .collect(),
            decision_order: self.decision_order.iter().map(name).collect(),
            information_sets: self
                .decision_order
                .iter()
                .zip(&self.information_sets)
                .map(|(d, info)| (name(d), info.iter().map(name).collect()))
                .collect(),
            evidence: self
                .evidence
                .iter()
                .map(|&(v, x)| (name(&v), self.variables[v].domain[x].clone()))
                .collect(),
        }
    }

    /// Every violated invariant, one message each. Empty means valid.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let n = self.variables.len();
        let mut seen = BTreeSet::new();
        for v in &self.variables {
            if !seen.insert(v.id.as_str()) {
                out.push(format!("variable {}: duplicate id", v.id));
            }
            if v.domain.is_empty() {
                out.push(format!("variable {}: empty domain", v.id));
            }
            let labels: BTreeSet<_> = v.domain.iter().collect();
            if labels.len() != v.domain.len() {
                out.push(format!("variable {}: duplicate domain labels", v.id));
            }
        }

        let mut cpt_count = vec![0usize; n];
        for cpt in &self.cpts {
            let child = &self.variables[cpt.child];
            cpt_count[cpt.child] += 1;
            if child.kind != VarKind::Chance {
                out.push(format!("cpt {}: child is a decision variable", child.id));
                continue;
            }
            let scope = cpt.scope();
            if has_duplicates(&scope) {
                out.push(format!("cpt {}: repeated variable in scope", child.id));
                continue;
            }
            let size: usize = scope.iter().map(|&v| self.variables[v].card()).product();
            if cpt.table.len() != size {
                out.push(format!(
                    "cpt {}: table has {} entries, expected {size}",
                    child.id,
                    cpt.table.len()
                ));
                continue;
            }
            let card = child.card().max(1);
            for (r, row) in cpt.table.chunks(card).enumerate() {
                if let Some(problem) = P::check_row(row) {
                    out.push(format!("cpt {}: normalization violation in row {r}: {problem}", child.id));
                }
            }
        }
        for (i, v) in self.variables.iter().enumerate() {
            if v.kind == VarKind::Chance && cpt_count[i] != 1 {
                out.push(format!("variable {}: has {} cpts, expected 1", v.id, cpt_count[i]));
            }
        }

        if self.utilities.is_empty() {
            out.push("diagram has no utility functions".to_string());
        }
        for (j, u) in self.utilities.iter().enumerate() {
            let label = u.name.clone().unwrap_or_else(|| format!("#{j}"));
            if u.scope.is_empty() {
                out.push(format!("utility {label}: empty scope"));
                continue;
            }
            if has_duplicates(&u.scope) {
                out.push(format!("utility {label}: repeated variable in scope"));
                continue;
            }
            let size: usize = u.scope.iter().map(|&v| self.variables[v].card()).product();
            if u.table.len() != size {
                out.push(format!(
                    "utility {label}: table has {} entries, expected {size}",
                    u.table.len()
                ));
            }
            if let Some(problem) = u.table.iter().find_map(UtilityEntry::check) {
                out.push(format!("utility {label}: {problem}"));
            }
        }

        let decisions: Vec<usize> = (0..n)
            .filter(|&i| self.variables[i].kind == VarKind::Decision)
            .collect();
        for &d in &decisions {
            let count = self.decision_order.iter().filter(|&&x| x == d).count();
            if count != 1 {
                out.push(format!(
                    "decision {}: appears {count} times in decision_order",
                    self.variables[d].id
                ));
            }
        }
        for &d in &self.decision_order {
            if self.variables[d].kind != VarKind::Decision {
                out.push(format!(
                    "decision_order: {} is not a decision variable",
                    self.variables[d].id
                ));
            }
        }
        if self.information_sets.len() != self.decision_order.len() {
            out.push("information_sets do not match decision_order".to_string());
        }
        for (k, (&d, info)) in self.decision_order.iter().zip(&self.information_sets).enumerate() {
            for &p in info {
                if p == d {
                    out.push(format!("decision {}: observes itself", self.variables[d].id));
                } else if self.variables[p].kind == VarKind::Decision {
                    let pos = self.decision_order.iter().position(|&x| x == p);
                    if pos.map_or(true, |pos| pos >= k) {
                        out.push(format!(
                            "decision {}: ordering violation, parent {} does not precede it",
                            self.variables[d].id, self.variables[p].id
                        ));
                    }
                }
            }
        }
        for &(v, x) in &self.evidence {
            if self.variables[v].kind != VarKind::Chance {
                out.push(format!("evidence on {}: not a chance variable", self.variables[v].id));
            } else if x >= self.variables[v].card() {
                out.push(format!("evidence on {}: value out of range", self.variables[v].id));
            }
        }

        if let Some(cycle_at) = self.find_cycle() {
            out.push(format!("graph has a directed cycle through {}", self.variables[cycle_at].id));
        } else {
            let parents = self.parent_lists();
            for &(v, _) in &self.evidence {
                let anc = self.ancestors(v, &parents);
                if let Some(&d) = self.decision_order.iter().find(|d| anc.contains(d)) {
                    out.push(format!(
                        "evidence on {}: depends on decision {}",
                        self.variables[v].id, self.variables[d].id
                    ));
                }
            }
            if out.is_empty() {
                if let Err(e) = self.temporal_partition() {
                    out.push(e.to_string());
                }
            }
        }
        out
    }

    pub fn check(&self) -> Result<()> {
        let problems = self.validate();
        if problems.is_empty() {
            Ok(())
        } else {
            Err(DiagramError::Invalid(problems))
        }
    }

    /// Adds every earlier decision and its parents to each information set.
    pub fn with_non_forgetting(mut self) -> Self {
        let mut known: Vec<usize> = Vec::new();
        for k in 0..self.decision_order.len().min(self.information_sets.len()) {
            let mut info = self.information_sets[k].clone();
            for &v in &known {
                if !info.contains(&v) {
                    info.push(v);
                }
            }
            for &v in &info {
                if !known.contains(&v) {
                    known.push(v);
                }
            }
            let d = self.decision_order[k];
            if !known.contains(&d) {
                known.push(d);
            }
            self.information_sets[k] = info;
        }
        self
    }

    /// Parents of every node in the directed graph: CPT parents for chance
    /// nodes, information sets for decisions.
    pub fn parent_lists(&self) -> Vec<Vec<usize>> {
        let mut parents = vec![Vec::new(); self.variables.len()];
        for cpt in &self.cpts {
            parents[cpt.child].extend(cpt.parents.iter().copied());
        }
        for (&d, info) in self.decision_order.iter().zip(&self.information_sets) {
            parents[d].extend(info.iter().copied());
        }
        parents
    }

    fn find_cycle(&self) -> Option<usize> {
        let parents = self.parent_lists();
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state = vec![0u8; self.variables.len()];
        fn visit(v: usize, parents: &[Vec<usize>], state: &mut [u8]) -> Option<usize> {
            state[v] = 1;
            for &p in &parents[v] {
                match state[p] {
                    1 => return Some(p),
                    0 => {
                        if let Some(c) = visit(p, parents, state) {
                            return Some(c);
                        }
                    }
                    _ => {}
                }
            }
            state[v] = 2;
            None
        }
        (0..self.variables.len()).find_map(|v| if state[v] == 0 { visit(v, &parents, &mut state) } else { None })
    }

    fn ancestors(&self, var: usize, parents: &[Vec<usize>]) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        let mut stack = parents[var].clone();
        while let Some(v) = stack.pop() {
            if out.insert(v) {
                stack.extend(parents[v].iter().copied());
            }
        }
        out
    }

    /// Splits chance variables into `I₀, …, I_m`: `I_k` holds those first
    /// observed by decision `k + 1`, and `I_m` those never observed.
    pub fn temporal_partition(&self) -> Result<TemporalPartition> {
        let m = self.decision_order.len();
        let mut blocks = vec![Vec::new(); m + 1];
        let mut placed = vec![false; self.variables.len()];
        for (k, info) in self.information_sets.iter().enumerate().take(m) {
            for &v in info {
                if !self.is_decision(v) && !placed[v] {
                    placed[v] = true;
                    blocks[k].push(v);
                }
            }
        }
        for (v, var) in self.variables.iter().enumerate() {
            if var.kind == VarKind::Chance && !placed[v] {
                blocks[m].push(v);
            }
        }
        for b in &mut blocks {
            b.sort_unstable();
        }
        let parents = self.parent_lists();
        for (k, block) in blocks.iter().enumerate().take(m) {
            for &x in block {
                let anc = self.ancestors(x, &parents);
                if let Some(&d) = self.decision_order[k..].iter().find(|d| anc.contains(d)) {
                    return Err(DiagramError::Temporal {
                        chance: self.variables[x].id.clone(),
                        decision: self.variables[d].id.clone(),
                    });
                }
            }
        }
        Ok(TemporalPartition {
            blocks,
            decisions: self.decision_order.clone(),
        })
    }

    /// Scopes of all probability and utility tables.
    pub fn function_scopes(&self) -> Vec<Vec<usize>> {
        self.cpts
            .iter()
            .map(Cpt::scope)
            .chain(self.utilities.iter().map(|u| u.scope.clone()))
            .collect()
    }

    /// Elimination ordering whose reverse extends the temporal order:
    /// `I_m, D_m, I_{m-1}, …, D₁, I₀`, with each chance block ordered by
    /// greedy min-fill on the interaction graph of the tables.
    pub fn legal_ordering(&self) -> Result<Vec<usize>> {
        let partition = self.temporal_partition()?;
        let mut graph = InteractionGraph::new(self.variables.len(), &self.function_scopes());
        let mut order = Vec::with_capacity(self.variables.len());
        let m = partition.decisions.len();
        for k in (0..=m).rev() {
            let mut block = partition.blocks[k].clone();
            while !block.is_empty() {
                let best = block
                    .iter()
                    .copied()
                    .min_by_key(|&v| (graph.fill_in(v), v))
                    .expect("non-empty block");
                block.retain(|&v| v != best);
                graph.eliminate(best);
                order.push(best);
            }
            if k > 0 {
                let d = partition.decisions[k - 1];
                graph.eliminate(d);
                order.push(d);
            }
        }
        Ok(order)
    }

    /// Maps every table entry, keeping the structure unchanged.
    pub fn map_tables<P2, U2, E>(
        &self,
        mut prob: impl FnMut(&P) -> std::result::Result<P2, E>,
        mut util: impl FnMut(&U) -> std::result::Result<U2, E>,
    ) -> std::result::Result<Diagram<P2, U2>, E> {
        let cpts = self
            .cpts
            .iter()
            .map(|c| {
                Ok(Cpt {
                    child: c.child,
                    parents: c.parents.clone(),
                    table: c.table.iter().map(&mut prob).collect::<std::result::Result<_, E>>()?,
                })
            })
            .collect::<std::result::Result<_, E>>()?;
        let utilities = self
            .utilities
            .iter()
            .map(|u| {
                Ok(Utility {
                    name: u.name.clone(),
                    scope: u.scope.clone(),
                    table: u.table.iter().map(&mut util).collect::<std::result::Result<_, E>>()?,
                })
            })
            .collect::<std::result::Result<_, E>>()?;
        Ok(Diagram {
            variables: self.variables.clone(),
            cpts,
            utilities,
            decision_order: self.decision_order.clone(),
            information_sets: self.information_sets.clone(),
            evidence: self.evidence.clone(),
        })
    }

    /// Entry of chance variable `child`'s CPT at a full assignment.
    pub fn cpt_entry(&self, cpt: &Cpt<P>, assignment: &[usize]) -> P {
        let scope = cpt.scope();
        let cards = self.cards(&scope);
        let values: Vec<usize> = scope.iter().map(|&v| assignment[v]).collect();
        cpt.table[flat_index(&values, &cards)].clone()
    }

    pub fn utility_entry(&self, u: &Utility<U>, assignment: &[usize]) -> U {
        let cards = self.cards(&u.scope);
        let values: Vec<usize> = u.scope.iter().map(|&v| assignment[v]).collect();
        u.table[flat_index(&values, &cards)].clone()
    }

    /// All joint assignments of all variables, respecting evidence.
    pub fn assignments(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let cards: Vec<usize> = self.variables.iter().map(Variable::card).collect();
        Configs::new(&cards).filter(move |a| self.evidence.iter().all(|&(v, x)| a[v] == x))
    }
}

impl<P, U> Diagram<P, U>
where
    P: ProbabilityEntry + Serialize + DeserializeOwned,
    U: UtilityEntry + Serialize + DeserializeOwned,
{
    pub fn from_json(text: &str, options: LoadOptions) -> Result<Self> {
        let doc: DiagramDoc<P, U> = serde_json::from_str(text)?;
        Self::from_doc(doc, options)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("diagram documents always serialize")
    }

    pub fn load(path: impl AsRef<std::path::Path>, options: LoadOptions) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text, options)
    }
}

fn has_duplicates(vars: &[usize]) -> bool {
    let set: BTreeSet<_> = vars.iter().collect();
    set.len() != vars.len()
}

/// Undirected graph connecting variables that share a table, with
/// elimination that adds fill edges among the remaining neighbours.
#[derive(Clone, Debug)]
pub struct InteractionGraph {
    adj: Vec<BTreeSet<usize>>,
    eliminated: Vec<bool>,
}

impl InteractionGraph {
    pub fn new(n: usize, scopes: &[Vec<usize>]) -> Self {
        let mut adj = vec![BTreeSet::new(); n];
        for scope in scopes {
            for &a in scope {
                for &b in scope {
                    if a != b {
                        adj[a].insert(b);
                    }
                }
            }
        }
        InteractionGraph {
            adj,
            eliminated: vec![false; n],
        }
    }

    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        self.adj[v].iter().copied().filter(|&u| !self.eliminated[u]).collect()
    }

    /// Edges that eliminating `v` would add.
    pub fn fill_in(&self, v: usize) -> usize {
        let nb = self.neighbours(v);
        let mut count = 0;
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if !self.adj[a].contains(&b) {
                    count += 1;
                }
            }
        }
        count
    }

    /// Eliminates `v` and returns the number of its remaining neighbours.
    pub fn eliminate(&mut self, v: usize) -> usize {
        let nb = self.neighbours(v);
        for &a in &nb {
            for &b in &nb {
                if a != b {
                    self.adj[a].insert(b);
                }
            }
        }
        self.eliminated[v] = true;
        nb.len()
    }
}

/// Induced width of an elimination ordering on the diagram's interaction graph.
pub fn induced_width(n: usize, scopes: &[Vec<usize>], ordering: &[usize]) -> usize {
    let mut graph = InteractionGraph::new(n, scopes);
    ordering.iter().map(|&v| graph.eliminate(v)).max().unwrap_or(0)
}
