//! JSON file formats for reliability networks and evidential networks.

use serde::{Deserialize, Serialize};

use bnor_core::{
    ConditionalMassTable, Edge, EdgeReliability, EnetError, EvidentialNetwork, GateVariant, MassFunction, Node,
    ProbabilityInterval, ReliabilityError, ReliabilityNetwork,
};

use crate::error::CliError;
use crate::variant::parse_variant;

/// On-disk reliability network.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkFile {
    pub nodes: Vec<String>,
    pub edges: Vec<EdgeFile>,
    pub source: String,
    pub sink: String,
    #[serde(default)]
    pub mission_time: f64,
}

/// One edge. Exactly one of `prob` and `interval` may be set; either one
/// overrides `rate`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeFile {
    pub id: String,
    pub from: String,
    pub to: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prob: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rate: Option<f64>,
}

impl EdgeFile {
    fn reliability(&self) -> Result<EdgeReliability, CliError> {
        let invalid = |msg: String| CliError::Format(format!("edge `{}`: {msg}", self.id));
        match (self.prob, self.interval, self.rate) {
            (Some(_), Some(_), _) => Err(invalid("`prob` and `interval` are mutually exclusive".into())),
            (None, Some([lo, hi]), _) => ProbabilityInterval::new(lo, hi)
                .map(EdgeReliability::Interval)
                .map_err(|e| invalid(e.to_string())),
            (Some(p), None, _) => Ok(EdgeReliability::Probability(p)),
            (None, None, Some(rate)) => Ok(EdgeReliability::Rate(rate)),
            (None, None, None) => Err(invalid("one of `prob`, `interval` or `rate` is required".into())),
        }
    }
}

impl NetworkFile {
    pub fn into_network(self) -> Result<ReliabilityNetwork, CliError> {
        let edges = self
            .edges
            .iter()
            .map(|e| Ok(Edge::new(e.id.clone(), e.from.clone(), e.to.clone(), e.reliability()?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        ReliabilityNetwork::new(self.nodes, edges, self.source, self.sink, self.mission_time)
            .map_err(|e: ReliabilityError| CliError::Format(e.to_string()))
    }

    pub fn from_network(rn: &ReliabilityNetwork) -> Self {
        let edges = rn
            .edges()
            .iter()
            .map(|e| {
                let mut file = EdgeFile {
                    id: e.id.clone(),
                    from: e.from.clone(),
                    to: e.to.clone(),
                    prob: None,
                    interval: None,
                    rate: None,
                };
                match e.reliability {
                    EdgeReliability::Probability(p) => file.prob = Some(p),
                    EdgeReliability::Interval(iv) => file.interval = Some([iv.lower(), iv.upper()]),
                    EdgeReliability::Rate(r) => file.rate = Some(r),
                }
                file
            })
            .collect();
        Self {
            nodes: rn.nodes().to_vec(),
            edges,
            source: rn.source().to_string(),
            sink: rn.sink().to_string(),
            mission_time: rn.mission_time(),
        }
    }
}

fn from_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| {
        let full = e.to_string();
        let message = full
            .rsplit_once(" at line ")
            .map_or(full.as_str(), |(m, _)| m)
            .to_string();
        CliError::Syntax {
            line: e.line(),
            column: e.column(),
            message,
        }
    })
}

pub fn parse_network(text: &str) -> Result<ReliabilityNetwork, CliError> {
    from_json::<NetworkFile>(text)?.into_network()
}

pub fn network_to_json(rn: &ReliabilityNetwork) -> String {
    serde_json::to_string_pretty(&NetworkFile::from_network(rn)).expect("network serializes")
}

/// A link given either as `p` or as `[lower, upper]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LinkFile {
    Point(f64),
    Interval([f64; 2]),
}

impl LinkFile {
    fn interval(self) -> Result<ProbabilityInterval, CliError> {
        match self {
            LinkFile::Point(p) => ProbabilityInterval::point(p),
            LinkFile::Interval([lo, hi]) => ProbabilityInterval::new(lo, hi),
        }
        .map_err(|e| CliError::Format(e.to_string()))
    }
}

/// One evidential-network node: a prior, a gate, or an explicit table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum NodeFile {
    Prior {
        id: String,
        prior: MassFunction,
    },
    Gate {
        id: String,
        parents: Vec<String>,
        variant: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        lambda: Option<f64>,
        links: Vec<LinkFile>,
    },
    Table {
        id: String,
        parents: Vec<String>,
        table: ConditionalMassTable,
    },
}

/// On-disk evidential network with an optional default query.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnetFile {
    pub nodes: Vec<NodeFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
}

impl EnetFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        from_json(text)
    }

    pub fn build(&self) -> Result<EvidentialNetwork, CliError> {
        let nodes = self
            .nodes
            .iter()
            .map(|n| {
                Ok(match n {
                    NodeFile::Prior { id, prior } => Node::root(id.clone(), *prior),
                    NodeFile::Gate {
                        id,
                        parents,
                        variant,
                        lambda,
                        links,
                    } => {
                        let variant: GateVariant = parse_variant(variant, *lambda)?;
                        let links = links.iter().map(|l| l.interval()).collect::<Result<Vec<_>, _>>()?;
                        Node::gate(id.clone(), parents.iter().cloned(), variant, links)
                    }
                    NodeFile::Table { id, parents, table } => {
                        Node::table(id.clone(), parents.iter().cloned(), table.clone())
                    }
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        EvidentialNetwork::build(nodes).map_err(|e: EnetError| CliError::Model(e))
    }
}
