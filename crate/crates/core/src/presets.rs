//! Reference models: the burglar/earthquake alarm and the five-node network.

use crate::belief::{MassFunction, ProbabilityInterval};
use crate::enet::{EnetError, EvidentialNetwork, Node};
use crate::gates::GateVariant;
use crate::reliability::{Edge, EdgeReliability, ReliabilityNetwork};

pub const BURGLAR_LINK: (f64, f64) = (0.6, 0.8);
pub const EARTHQUAKE_LINK: (f64, f64) = (0.7, 0.9);

pub fn burglar_prior() -> MassFunction {
    MassFunction::new(0.4, 0.6, 0.0).expect("valid")
}

pub fn earthquake_prior() -> MassFunction {
    MassFunction::new(0.3, 0.6, 0.1).expect("valid")
}

/// Alarm `A` with causes burglar `B` and earthquake `E`.
pub fn alarm_network(variant: GateVariant) -> Result<EvidentialNetwork, EnetError> {
    let link = |(lo, hi)| ProbabilityInterval::new(lo, hi).expect("valid");
    EvidentialNetwork::build(vec![
        Node::root("B", burglar_prior()),
        Node::root("E", earthquake_prior()),
        Node::gate(
            "A",
            ["B", "E"],
            variant,
            vec![link(BURGLAR_LINK), link(EARTHQUAKE_LINK)],
        ),
    ])
}

/// Edge `(id, from, to, working probability at t = 200 h)`.
pub const FIVE_NODE_EDGES: [(&str, &str, &str, f64); 6] = [
    ("e1", "n1", "n2", 0.8025),
    ("e2", "n2", "n5", 0.6977),
    ("e3", "n1", "n3", 0.8025),
    ("e4", "n3", "n5", 0.6977),
    ("e5", "n1", "n4", 0.8025),
    ("e6", "n4", "n5", 0.6977),
];

/// Imprecise links for `e1` and `e2`; the other edges stay precise.
pub const FIVE_NODE_INTERVALS: [(&str, f64, f64); 2] = [("e1", 0.7525, 0.8525), ("e2", 0.6477, 0.7477)];

/// Five nodes, three two-hop paths from `n1` to `n5`, precise edges.
pub fn five_node_network() -> ReliabilityNetwork {
    let nodes = (1..=5).map(|i| format!("n{i}")).collect();
    let edges = FIVE_NODE_EDGES
        .iter()
        .map(|&(id, from, to, p)| Edge::new(id, from, to, EdgeReliability::Probability(p)))
        .collect();
    ReliabilityNetwork::new(nodes, edges, "n1", "n5", 200.0).expect("valid network")
}

/// [`five_node_network`] with imprecise links on `e1` and `e2`.
pub fn five_node_network_uncertain() -> ReliabilityNetwork {
    FIVE_NODE_INTERVALS
        .iter()
        .fold(five_node_network(), |rn, &(id, lo, hi)| {
            rn.with_edge_interval(id, ProbabilityInterval::new(lo, hi).expect("valid"))
                .expect("known edge")
        })
}
