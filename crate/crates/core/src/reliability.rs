//! Two-terminal reliability of directed networks.
//!
//! A [`ReliabilityNetwork`] is translated either into the classic Bayesian
//! model (edges as explicit root nodes, connectivity nodes as OR-of-ANDs) or
//! into a belief Noisy-OR model where each edge is absorbed into the link of
//! the gate on its head node. Either way the sink's connectivity marginal is
//! the system state `S`.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::belief::{BeliefError, BeliefReport, MassFunction, ProbabilityInterval, Subset};
use crate::enet::{EnetError, EvidentialNetwork, Node};
use crate::gates::{logic_table, GateVariant, LogicOp};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReliabilityError {
    #[error("source and sink are both `{0}`")]
    SourceIsSink(String),
    #[error("duplicate node `{0}`")]
    DuplicateNode(String),
    #[error("duplicate edge `{0}`")]
    DuplicateEdge(String),
    #[error("edge `{edge}` references unknown node `{node}`")]
    UnknownEndpoint { edge: String, node: String },
    #[error("unknown terminal node `{0}`")]
    UnknownTerminal(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("edge `{edge}` has negative failure rate {rate}")]
    NegativeRate { edge: String, rate: f64 },
    #[error("edge `{edge}` has probability {value} outside [0, 1]")]
    InvalidProbability { edge: String, value: f64 },
    #[error("mission time {0} is negative")]
    NegativeMissionTime(f64),
    #[error("sink `{sink}` cannot be reached from source `{from}`")]
    UnreachableSink { from: String, sink: String },
    #[error("sweep parameter out of range: {0}")]
    SweepDomain(String),
    #[error(transparent)]
    Belief(#[from] BeliefError),
    #[error(transparent)]
    Model(#[from] EnetError),
}

/// How an edge's working probability is given.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeReliability {
    Probability(f64),
    Interval(ProbabilityInterval),
    /// Constant failure rate per hour under an exponential lifetime.
    Rate(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Edge {
    pub id: String,
    pub from: String,
    pub to: String,
    pub reliability: EdgeReliability,
}

impl Edge {
    pub fn new(
        id: impl Into<String>,
        from: impl Into<String>,
        to: impl Into<String>,
        reliability: EdgeReliability,
    ) -> Self {
        Self {
            id: id.into(),
            from: from.into(),
            to: to.into(),
            reliability,
        }
    }
}

/// Directed network with a source, a sink and per-edge working probabilities.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReliabilityNetwork {
    nodes: Vec<String>,
    edges: Vec<Edge>,
    source: String,
    sink: String,
    mission_time: f64,
}

/// `exp(-rate * t)`.
pub fn edge_working_probability(rate: f64, mission_time: f64) -> f64 {
    (-rate * mission_time).exp()
}

impl ReliabilityNetwork {
    pub fn new(
        nodes: Vec<String>,
        edges: Vec<Edge>,
        source: impl Into<String>,
        sink: impl Into<String>,
        mission_time: f64,
    ) -> Result<Self, ReliabilityError> {
        let (source, sink) = (source.into(), sink.into());
        let mut known = HashSet::new();
        for n in &nodes {
            if !known.insert(n.as_str()) {
                return Err(ReliabilityError::DuplicateNode(n.clone()));
            }
        }
        for t in [&source, &sink] {
            if !known.contains(t.as_str()) {
                return Err(ReliabilityError::UnknownTerminal(t.clone()));
            }
        }
        if source == sink {
            return Err(ReliabilityError::SourceIsSink(source));
        }
        if mission_time.is_nan() || mission_time < 0.0 {
            return Err(ReliabilityError::NegativeMissionTime(mission_time));
        }
        let mut edge_ids = HashSet::new();
        for e in &edges {
            if !edge_ids.insert(e.id.as_str()) {
                return Err(ReliabilityError::DuplicateEdge(e.id.clone()));
            }
            for end in [&e.from, &e.to] {
                if !known.contains(end.as_str()) {
                    return Err(ReliabilityError::UnknownEndpoint {
                        edge: e.id.clone(),
                        node: end.clone(),
                    });
                }
            }
            match e.reliability {
                EdgeReliability::Rate(rate) if rate.is_nan() || rate < 0.0 => {
                    return Err(ReliabilityError::NegativeRate {
                        edge: e.id.clone(),
                        rate,
                    });
                }
                EdgeReliability::Probability(p) if !(0.0..=1.0).contains(&p) => {
                    return Err(ReliabilityError::InvalidProbability {
                        edge: e.id.clone(),
                        value: p,
                    });
                }
                _ => {}
            }
        }
        Ok(Self {
            nodes,
            edges,
            source,
            sink,
            mission_time,
        })
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn sink(&self) -> &str {
        &self.sink
    }

    pub fn mission_time(&self) -> f64 {
        self.mission_time
    }

    /// Link interval of an edge at the mission time.
    pub fn edge_interval(&self, edge: &Edge) -> ProbabilityInterval {
        match edge.reliability {
            EdgeReliability::Interval(iv) => iv,
            EdgeReliability::Probability(p) => ProbabilityInterval::point(p).expect("validated"),
            EdgeReliability::Rate(rate) => {
                let p = edge_working_probability(rate, self.mission_time).clamp(0.0, 1.0);
                ProbabilityInterval::point(p).expect("in range")
            }
        }
    }

    /// Point working probabilities, if no edge carries an imprecise interval.
    pub fn point_probabilities(&self) -> Option<Vec<f64>> {
        self.edges
            .iter()
            .map(|e| {
                let iv = self.edge_interval(e);
                iv.is_degenerate().then(|| iv.lower())
            })
            .collect()
    }

    /// Copy with one edge's reliability replaced by an interval.
    pub fn with_edge_interval(&self, edge_id: &str, interval: ProbabilityInterval) -> Result<Self, ReliabilityError> {
        let mut out = self.clone();
        let edge = out
            .edges
            .iter_mut()
            .find(|e| e.id == edge_id)
            .ok_or_else(|| ReliabilityError::UnknownEdge(edge_id.to_string()))?;
        edge.reliability = EdgeReliability::Interval(interval);
        Ok(out)
    }

    /// Edges that can lie on a simple source-to-sink path contribute; self
    /// loops and edges back into the source never do.
    fn incoming(&self) -> HashMap<&str, Vec<&Edge>> {
        let mut incoming: HashMap<&str, Vec<&Edge>> = HashMap::new();
        for e in &self.edges {
            if e.from == e.to || e.to == self.source {
                continue;
            }
            incoming.entry(e.to.as_str()).or_default().push(e);
        }
        incoming
    }

    fn check_sink_reachable(&self) -> Result<(), ReliabilityError> {
        let mut seen: HashSet<&str> = HashSet::from([self.source.as_str()]);
        let mut queue = VecDeque::from([self.source.as_str()]);
        while let Some(u) = queue.pop_front() {
            for e in self.edges.iter().filter(|e| e.from == u) {
                if seen.insert(e.to.as_str()) {
                    queue.push_back(e.to.as_str());
                }
            }
        }
        if seen.contains(self.sink.as_str()) {
            Ok(())
        } else {
            Err(ReliabilityError::UnreachableSink {
                from: self.source.clone(),
                sink: self.sink.clone(),
            })
        }
    }
}

/// Node id of the explicit edge variable in the Bayesian translation.
pub fn edge_node_id(edge: &str) -> String {
    format!("edge:{edge}")
}

/// Node id of the `N_j AND e_k` auxiliary variable in the Bayesian translation.
pub fn path_node_id(edge: &str) -> String {
    format!("and:{edge}")
}

/// Classic translation: `N_1` and the edges are roots; each other `N_i` is
/// the OR over its incoming edges `e_k = <n_j, n_i>` of `N_j AND e_k`.
///
/// Edge priors are the mass functions of their intervals, so precise edges
/// give Bayesian priors.
pub fn build_bn_model(rn: &ReliabilityNetwork) -> Result<EvidentialNetwork, ReliabilityError> {
    rn.check_sink_reachable()?;
    let incoming = rn.incoming();
    let mut nodes = Vec::new();
    for e in &rn.edges {
        nodes.push(Node::root(edge_node_id(&e.id), MassFunction::from(rn.edge_interval(e))));
    }
    for n in &rn.nodes {
        if *n == rn.source {
            nodes.push(Node::root(n.clone(), MassFunction::CERTAIN_TRUE));
            continue;
        }
        match incoming.get(n.as_str()) {
            None => nodes.push(Node::root(n.clone(), MassFunction::CERTAIN_FALSE)),
            Some(edges) => {
                for e in edges {
                    nodes.push(Node::table(
                        path_node_id(&e.id),
                        [e.from.clone(), edge_node_id(&e.id)],
                        logic_table(LogicOp::And, 2),
                    ));
                }
                let parents: Vec<String> = edges.iter().map(|e| path_node_id(&e.id)).collect();
                nodes.push(Node::table(n.clone(), parents, logic_table(LogicOp::Or, edges.len())));
            }
        }
    }
    Ok(EvidentialNetwork::build(nodes)?)
}

/// Gate translation: each non-source node carries a gate over the tails of
/// its incoming edges, with the edge intervals as link probabilities.
pub fn build_bnor_model(rn: &ReliabilityNetwork, variant: GateVariant) -> Result<EvidentialNetwork, ReliabilityError> {
    rn.check_sink_reachable()?;
    let incoming = rn.incoming();
    let nodes = rn
        .nodes
        .iter()
        .map(|n| {
            if *n == rn.source {
                return Node::root(n.clone(), MassFunction::CERTAIN_TRUE);
            }
            match incoming.get(n.as_str()) {
                None => Node::root(n.clone(), MassFunction::CERTAIN_FALSE),
                Some(edges) => Node::gate(
                    n.clone(),
                    edges.iter().map(|e| e.from.clone()),
                    variant,
                    edges.iter().map(|e| rn.edge_interval(e)).collect(),
                ),
            }
        })
        .collect();
    Ok(EvidentialNetwork::build(nodes)?)
}

/// Mass and decision measures of the system state `S`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReliabilityReport {
    pub mass: MassFunction,
    pub bel_working: f64,
    pub pl_working: f64,
    pub betp_working: f64,
    /// `None` for the Bayesian translation.
    pub variant: Option<GateVariant>,
    pub lambda: Option<f64>,
}

impl ReliabilityReport {
    fn new(mass: MassFunction, variant: Option<GateVariant>) -> Self {
        let r = BeliefReport::from_mass(&mass);
        Self {
            mass,
            bel_working: r.bel_t,
            pl_working: r.pl_t,
            betp_working: r.betp_t,
            variant,
            lambda: variant.and_then(|v| v.optimism()),
        }
    }

    pub fn belief(&self) -> BeliefReport {
        BeliefReport::from_mass(&self.mass)
    }
}

/// Reliability bounds under a gate variant.
pub fn evaluate(rn: &ReliabilityNetwork, variant: GateVariant) -> Result<ReliabilityReport, ReliabilityError> {
    let net = build_bnor_model(rn, variant)?;
    Ok(ReliabilityReport::new(net.marginal(&rn.sink)?, Some(variant)))
}

/// Reliability through the Bayesian (explicit-edge) translation.
pub fn evaluate_bn(rn: &ReliabilityNetwork) -> Result<ReliabilityReport, ReliabilityError> {
    let net = build_bn_model(rn)?;
    Ok(ReliabilityReport::new(net.marginal(&rn.sink)?, None))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    pub param: f64,
    pub report: ReliabilityReport,
}

fn grid(from: f64, to: f64, steps: usize) -> Result<Vec<f64>, ReliabilityError> {
    if steps == 0 {
        return Err(ReliabilityError::SweepDomain("at least one step is required".into()));
    }
    if steps == 1 {
        return Ok(vec![from]);
    }
    let span = to - from;
    Ok((0..steps)
        .map(|k| {
            if k + 1 == steps {
                to
            } else {
                from + span * k as f64 / (steps - 1) as f64
            }
        })
        .collect())
}

/// OCBNOR evaluated on an evenly spaced grid of optimism coefficients.
pub fn lambda_sweep(
    rn: &ReliabilityNetwork,
    from: f64,
    to: f64,
    steps: usize,
) -> Result<Vec<SweepPoint>, ReliabilityError> {
    for l in [from, to] {
        if !(0.0..=1.0).contains(&l) {
            return Err(ReliabilityError::SweepDomain(format!(
                "optimism coefficient {l} outside [0, 1]"
            )));
        }
    }
    grid(from, to, steps)?
        .into_iter()
        .map(|l| {
            Ok(SweepPoint {
                param: l,
                report: evaluate(rn, GateVariant::Ocbnor(l))?,
            })
        })
        .collect()
}

/// Widens one edge's interval symmetrically about its midpoint, half-width
/// running over the grid.
pub fn width_sweep(
    rn: &ReliabilityNetwork,
    edge_id: &str,
    variant: GateVariant,
    from: f64,
    to: f64,
    steps: usize,
) -> Result<Vec<SweepPoint>, ReliabilityError> {
    let edge = rn
        .edges
        .iter()
        .find(|e| e.id == edge_id)
        .ok_or_else(|| ReliabilityError::UnknownEdge(edge_id.to_string()))?;
    let mid = rn.edge_interval(edge).midpoint();
    let widest = from.max(to);
    if from.min(to) < 0.0 || mid - widest < 0.0 || mid + widest > 1.0 {
        return Err(ReliabilityError::SweepDomain(format!(
            "half-width range [{from}, {to}] does not fit around midpoint {mid} of edge `{edge_id}`"
        )));
    }
    grid(from, to, steps)?
        .into_iter()
        .map(|alpha| {
            let interval = ProbabilityInterval::around(mid, alpha)?;
            let widened = rn.with_edge_interval(edge_id, interval)?;
            Ok(SweepPoint {
                param: alpha,
                report: evaluate(&widened, variant)?,
            })
        })
        .collect()
}

/// `m(S = {T})`, `m(S = {F})`, `m(S = {T,F})` of a report, in that order.
pub fn state_masses(report: &ReliabilityReport) -> [f64; 3] {
    Subset::FOCAL.map(|s| report.mass.mass(s))
}
