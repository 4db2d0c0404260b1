//! Evidential networks over binary variables and exact marginal inference.
//!
//! Every node is a three-state discrete variable with states `{T}`, `{F}` and
//! `{T, F}`. Root nodes carry a prior mass function; the others carry a
//! conditional mass table, either built from a gate or given explicitly.
//! Marginals are computed by variable elimination over the ancestors of the
//! query node.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::belief::{BeliefError, BeliefReport, MassFunction, ProbabilityInterval, Subset};
use crate::gates::{ConditionalMassTable, GateError, GateSpec, GateVariant, ParentStates};

/// Parent-state mass below this is treated as absent.
const ZERO_MASS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EnetError {
    #[error("duplicate node id `{0}`")]
    DuplicateNode(String),
    #[error("node `{node}` references unknown parent `{parent}`")]
    DanglingParent { node: String, parent: String },
    #[error("node `{node}` has {parents} parents but its conditional expects {expected}")]
    ArityMismatch {
        node: String,
        parents: usize,
        expected: usize,
    },
    #[error("cycle detected among nodes {0:?}")]
    CycleDetected(Vec<String>),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("gate of node `{node}`: {source}")]
    Gate { node: String, source: GateError },
    #[error("node `{node}` has no row for parent states {row:?}, which carry mass")]
    UndefinedRow { node: String, row: Vec<Subset> },
    #[error("marginal of `{node}` is not a mass function: {source}")]
    InvalidMarginal { node: String, source: BeliefError },
}

/// The local model of a node as given by the caller.
#[derive(Debug, Clone, PartialEq)]
pub enum Conditional {
    Prior(MassFunction),
    /// Gate whose parent ignorance is derived from the parents' marginals.
    Gate {
        parents: Vec<String>,
        variant: GateVariant,
        links: Vec<ProbabilityInterval>,
    },
    Table {
        parents: Vec<String>,
        table: ConditionalMassTable,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub id: String,
    pub conditional: Conditional,
}

impl Node {
    pub fn root(id: impl Into<String>, prior: MassFunction) -> Self {
        Self {
            id: id.into(),
            conditional: Conditional::Prior(prior),
        }
    }

    pub fn gate<S: Into<String>>(
        id: impl Into<String>,
        parents: impl IntoIterator<Item = S>,
        variant: GateVariant,
        links: Vec<ProbabilityInterval>,
    ) -> Self {
        Self {
            id: id.into(),
            conditional: Conditional::Gate {
                parents: parents.into_iter().map(Into::into).collect(),
                variant,
                links,
            },
        }
    }

    pub fn table<S: Into<String>>(
        id: impl Into<String>,
        parents: impl IntoIterator<Item = S>,
        table: ConditionalMassTable,
    ) -> Self {
        Self {
            id: id.into(),
            conditional: Conditional::Table {
                parents: parents.into_iter().map(Into::into).collect(),
                table,
            },
        }
    }

    fn parents(&self) -> &[String] {
        match &self.conditional {
            Conditional::Prior(_) => &[],
            Conditional::Gate { parents, .. } | Conditional::Table { parents, .. } => parents,
        }
    }
}

/// Resolved local model of a built node.
#[derive(Debug, Clone, PartialEq)]
pub enum LocalModel {
    Prior(MassFunction),
    Table {
        table: ConditionalMassTable,
        /// The gate the table was built from, with its derived ignorance.
        gate: Option<GateSpec>,
    },
}

#[derive(Debug, Clone)]
struct BuiltNode {
    id: String,
    parents: Vec<usize>,
    model: LocalModel,
}

impl BuiltNode {
    /// `m(node = state | parents = parent_states)`; missing rows count as zero.
    fn local_mass(&self, state: Subset, parent_states: &[Subset]) -> f64 {
        match &self.model {
            LocalModel::Prior(m) => m.mass(state),
            LocalModel::Table { table, .. } => table.get(parent_states).map_or(0.0, |m| m.mass(state)),
        }
    }
}

/// A validated, immutable evidential network.
#[derive(Debug, Clone)]
pub struct EvidentialNetwork {
    nodes: Vec<BuiltNode>,
    index: HashMap<String, usize>,
    order: Vec<usize>,
    marginals: Vec<MassFunction>,
}

impl EvidentialNetwork {
    /// Validates the graph, orders it topologically, and builds every gate
    /// table with `η_i` set to the `{T, F}` mass of parent `i`'s marginal.
    pub fn build(nodes: Vec<Node>) -> Result<Self, EnetError> {
        let mut index = HashMap::with_capacity(nodes.len());
        for (i, node) in nodes.iter().enumerate() {
            if index.insert(node.id.clone(), i).is_some() {
                return Err(EnetError::DuplicateNode(node.id.clone()));
            }
        }

        let mut parents = Vec::with_capacity(nodes.len());
        for node in &nodes {
            let resolved = node
                .parents()
                .iter()
                .map(|p| {
                    index.get(p).copied().ok_or_else(|| EnetError::DanglingParent {
                        node: node.id.clone(),
                        parent: p.clone(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            let expected = match &node.conditional {
                Conditional::Prior(_) => 0,
                Conditional::Gate { links, .. } => links.len(),
                Conditional::Table { table, .. } => table.arity(),
            };
            if expected != resolved.len() {
                return Err(EnetError::ArityMismatch {
                    node: node.id.clone(),
                    parents: resolved.len(),
                    expected,
                });
            }
            parents.push(resolved);
        }

        let order = topological_order(&parents)
            .map_err(|stuck| EnetError::CycleDetected(stuck.into_iter().map(|i| nodes[i].id.clone()).collect()))?;

        // Placeholder models are replaced in topological order below.
        let mut net = EvidentialNetwork {
            nodes: nodes
                .iter()
                .zip(parents)
                .map(|(n, p)| BuiltNode {
                    id: n.id.clone(),
                    parents: p,
                    model: LocalModel::Prior(MassFunction::VACUOUS),
                })
                .collect(),
            index,
            order: order.clone(),
            marginals: vec![MassFunction::VACUOUS; nodes.len()],
        };

        for &v in &order {
            let node = &nodes[v];
            let model = match &node.conditional {
                Conditional::Prior(m) => LocalModel::Prior(*m),
                Conditional::Gate { variant, links, .. } => {
                    let etas = net.nodes[v]
                        .parents
                        .iter()
                        .map(|&p| net.marginals[p].tf().clamp(0.0, 1.0))
                        .collect();
                    let spec = GateSpec::new(*variant, links.clone(), etas).map_err(|source| EnetError::Gate {
                        node: node.id.clone(),
                        source,
                    })?;
                    let table = spec.table().map_err(|source| EnetError::Gate {
                        node: node.id.clone(),
                        source,
                    })?;
                    LocalModel::Table {
                        table,
                        gate: Some(spec),
                    }
                }
                Conditional::Table { table, .. } => LocalModel::Table {
                    table: table.clone(),
                    gate: None,
                },
            };
            if let LocalModel::Table { table, .. } = &model {
                net.check_missing_rows(v, table)?;
            }
            net.nodes[v].model = model;
            net.marginals[v] = net.eliminate(v, None)?;
        }
        Ok(net)
    }

    /// A missing row is acceptable only if one of its parent states carries
    /// no marginal mass, so that the row is never reached.
    fn check_missing_rows(&self, v: usize, table: &ConditionalMassTable) -> Result<(), EnetError> {
        let parents = &self.nodes[v].parents;
        for (i, states) in ParentStates::new(parents.len()).enumerate() {
            if table.get_index(i).is_some() {
                continue;
            }
            let unreachable = states
                .iter()
                .zip(parents)
                .any(|(&s, &p)| self.marginals[p].mass(s) <= ZERO_MASS);
            if !unreachable {
                return Err(EnetError::UndefinedRow {
                    node: self.nodes[v].id.clone(),
                    row: states,
                });
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node_ids(&self) -> impl Iterator<Item = &str> {
        self.nodes.iter().map(|n| n.id.as_str())
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn id(&self, index: usize) -> &str {
        &self.nodes[index].id
    }

    /// Parent indices of node `index`, in gate order.
    pub fn parents(&self, index: usize) -> &[usize] {
        &self.nodes[index].parents
    }

    pub fn model(&self, index: usize) -> &LocalModel {
        &self.nodes[index].model
    }

    /// The gate spec (with derived ignorance) of a gate node.
    pub fn gate_spec(&self, id: &str) -> Option<&GateSpec> {
        match &self.nodes[self.index_of(id)?].model {
            LocalModel::Table { gate, .. } => gate.as_ref(),
            LocalModel::Prior(_) => None,
        }
    }

    pub fn topological_order(&self) -> &[usize] {
        &self.order
    }

    /// `m(node = state | parents = parent_states)`.
    pub fn local_mass(&self, index: usize, state: Subset, parent_states: &[Subset]) -> f64 {
        self.nodes[index].local_mass(state, parent_states)
    }

    /// Exact marginal mass function of `target`.
    pub fn marginal(&self, target: &str) -> Result<MassFunction, EnetError> {
        let v = self
            .index_of(target)
            .ok_or_else(|| EnetError::UnknownNode(target.to_string()))?;
        self.eliminate(v, None)
    }

    /// Marginal with a caller-chosen elimination order. Nodes outside the
    /// target's ancestry are skipped; relevant nodes left out are eliminated
    /// last in topological order.
    pub fn marginal_with_order(&self, target: &str, order: &[&str]) -> Result<MassFunction, EnetError> {
        let v = self
            .index_of(target)
            .ok_or_else(|| EnetError::UnknownNode(target.to_string()))?;
        let order = order
            .iter()
            .map(|id| self.index_of(id).ok_or_else(|| EnetError::UnknownNode(id.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        self.eliminate(v, Some(&order))
    }

    /// Bel/Pl/BetP summary of the marginal of `target`.
    pub fn report(&self, target: &str) -> Result<BeliefReport, EnetError> {
        Ok(BeliefReport::from_mass(&self.marginal(target)?))
    }

    /// Marginals of every node, cached at build time, in insertion order.
    pub fn marginals(&self) -> impl Iterator<Item = (&str, &MassFunction)> {
        self.nodes.iter().map(|n| n.id.as_str()).zip(self.marginals.iter())
    }

    fn ancestors(&self, v: usize) -> Vec<bool> {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![v];
        seen[v] = true;
        while let Some(u) = stack.pop() {
            for &p in &self.nodes[u].parents {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    fn eliminate(&self, target: usize, order: Option<&[usize]>) -> Result<MassFunction, EnetError> {
        let relevant = self.ancestors(target);
        let mut factors: Vec<Factor> = (0..self.nodes.len())
            .filter(|&v| relevant[v])
            .map(|v| Factor::from_node(v, &self.nodes[v]))
            .collect();

        let mut pending: Vec<usize> = match order {
            Some(order) => {
                let mut seen = vec![false; self.nodes.len()];
                let mut out: Vec<usize> = order
                    .iter()
                    .copied()
                    .filter(|&u| u != target && relevant[u] && !std::mem::replace(&mut seen[u], true))
                    .collect();
                out.extend(
                    self.order
                        .iter()
                        .copied()
                        .filter(|&u| u != target && relevant[u] && !seen[u]),
                );
                out
            }
            None => (0..self.nodes.len()).filter(|&u| u != target && relevant[u]).collect(),
        };

        while !pending.is_empty() {
            let pick = match order {
                Some(_) => 0,
                None => greedy_pick(&pending, &factors),
            };
            let var = pending.remove(pick);
            let (involved, rest): (Vec<_>, Vec<_>) = factors.into_iter().partition(|f| f.scope.contains(&var));
            factors = rest;
            if let Some(product) = involved.into_iter().reduce(|a, b| a.product(&b)) {
                factors.push(product.sum_out(var));
            }
        }

        let joint = factors
            .into_iter()
            .reduce(|a, b| a.product(&b))
            .expect("target factor present");
        debug_assert_eq!(joint.scope, vec![target]);
        let [t, f, tf] = [joint.values[0], joint.values[1], joint.values[2]];
        MassFunction::new(t, f, tf).map_err(|source| EnetError::InvalidMarginal {
            node: self.nodes[target].id.clone(),
            source,
        })
    }
}

/// Min-size heuristic: eliminate the variable whose product factor is smallest.
fn greedy_pick(pending: &[usize], factors: &[Factor]) -> usize {
    let mut best = (usize::MAX, 0);
    for (i, &var) in pending.iter().enumerate() {
        let mut scope: Vec<usize> = factors
            .iter()
            .filter(|f| f.scope.contains(&var))
            .flat_map(|f| f.scope.iter().copied())
            .collect();
        scope.sort_unstable();
        scope.dedup();
        if scope.len() < best.0 {
            best = (scope.len(), i);
        }
    }
    best.1
}

/// Kahn's algorithm; on failure returns the nodes left on a cycle.
fn topological_order(parents: &[Vec<usize>]) -> Result<Vec<usize>, Vec<usize>> {
    let n = parents.len();
    let mut indegree = vec![0usize; n];
    let mut children = vec![Vec::new(); n];
    for (v, ps) in parents.iter().enumerate() {
        let mut unique = ps.clone();
        unique.sort_unstable();
        unique.dedup();
        indegree[v] = unique.len();
        for p in unique {
            children[p].push(v);
        }
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &c in &children[v] {
            indegree[c] -= 1;
            if indegree[c] == 0 {
                queue.push_back(c);
            }
        }
    }
    if order.len() == n {
        Ok(order)
    } else {
        Err((0..n).filter(|&v| indegree[v] > 0).collect())
    }
}

/// A nonnegative table over 3-state variables, first scope variable most
/// significant.
#[derive(Debug, Clone)]
struct Factor {
    scope: Vec<usize>,
    values: Vec<f64>,
}

impl Factor {
    fn from_node(v: usize, node: &BuiltNode) -> Factor {
        let mut scope: Vec<usize> = node.parents.iter().copied().chain([v]).collect();
        scope.sort_unstable();
        scope.dedup();
        let values = assignments(scope.len())
            .map(|states| {
                let at = |u: usize| states[scope.binary_search(&u).expect("in scope")];
                let parent_states: Vec<Subset> = node.parents.iter().map(|&p| at(p)).collect();
                node.local_mass(at(v), &parent_states)
            })
            .collect();
        Factor { scope, values }
    }

    fn product(&self, other: &Factor) -> Factor {
        let mut scope: Vec<usize> = self.scope.iter().chain(&other.scope).copied().collect();
        scope.sort_unstable();
        scope.dedup();
        let pos = |s: &[usize]| -> Vec<usize> { s.iter().map(|u| scope.binary_search(u).unwrap()).collect() };
        let (left, right) = (pos(&self.scope), pos(&other.scope));
        let values = digits(scope.len())
            .map(|d| self.values[project(&d, &left)] * other.values[project(&d, &right)])
            .collect();
        Factor { scope, values }
    }

    fn sum_out(&self, var: usize) -> Factor {
        let k = self.scope.binary_search(&var).expect("variable in scope");
        let scope: Vec<usize> = self.scope.iter().copied().filter(|&u| u != var).collect();
        let mut values = vec![0.0; 3usize.pow(scope.len() as u32)];
        let keep: Vec<usize> = (0..self.scope.len()).filter(|&i| i != k).collect();
        for (d, &x) in digits(self.scope.len()).zip(&self.values) {
            values[project(&d, &keep)] += x;
        }
        Factor { scope, values }
    }
}

fn project(digits: &[usize], positions: &[usize]) -> usize {
    positions.iter().fold(0, |acc, &p| acc * 3 + digits[p])
}

fn digits(len: usize) -> impl Iterator<Item = Vec<usize>> {
    ParentStates::new(len).map(|states| states.iter().map(|s| s.focal_index().unwrap()).collect())
}

fn assignments(len: usize) -> ParentStates {
    ParentStates::new(len)
}
