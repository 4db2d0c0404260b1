//! Brute-force reference computations.
//!
//! Both oracles enumerate their whole state space and share no code with the
//! elimination kernel, so they can certify it.

use std::collections::VecDeque;

use thiserror::Error;

use crate::belief::{BeliefError, MassFunction};
use crate::enet::EvidentialNetwork;
use crate::gates::ParentStates;
use crate::reliability::ReliabilityNetwork;

/// Largest network for full-joint enumeration (`3^15` joint states).
pub const MAX_JOINT_NODES: usize = 15;
/// Largest edge count for world enumeration (`2^20` worlds).
pub const MAX_WORLD_EDGES: usize = 20;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("{size} exceeds the enumeration budget of {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("{given} edge probabilities for {edges} edges")]
    LengthMismatch { given: usize, edges: usize },
    #[error(transparent)]
    Belief(#[from] BeliefError),
}

/// Marginal of `target` by summing the product of all local models over
/// every joint assignment of the three-state nodes.
pub fn joint_enumeration_marginal(net: &EvidentialNetwork, target: &str) -> Result<MassFunction, OracleError> {
    if net.len() > MAX_JOINT_NODES {
        return Err(OracleError::TooLarge {
            size: net.len(),
            limit: MAX_JOINT_NODES,
        });
    }
    let t = net
        .index_of(target)
        .ok_or_else(|| OracleError::UnknownNode(target.to_string()))?;
    let mut acc = [0.0; 3];
    let mut parent_states = Vec::new();
    for joint in ParentStates::new(net.len()) {
        let mut weight = 1.0;
        for v in 0..net.len() {
            parent_states.clear();
            parent_states.extend(net.parents(v).iter().map(|&p| joint[p]));
            weight *= net.local_mass(v, joint[v], &parent_states);
            if weight == 0.0 {
                break;
            }
        }
        acc[joint[t].focal_index().expect("focal")] += weight;
    }
    Ok(MassFunction::new(acc[0], acc[1], acc[2])?)
}

/// Probability that the sink is reachable from the source through working
/// edges, summed over all `2^|E|` edge-state worlds.
pub fn world_enumeration_reliability(rn: &ReliabilityNetwork, edge_probs: &[f64]) -> Result<f64, OracleError> {
    let edges = rn.edges();
    if edges.len() != edge_probs.len() {
        return Err(OracleError::LengthMismatch {
            given: edge_probs.len(),
            edges: edges.len(),
        });
    }
    if edges.len() > MAX_WORLD_EDGES {
        return Err(OracleError::TooLarge {
            size: edges.len(),
            limit: MAX_WORLD_EDGES,
        });
    }
    let index = |id: &str| rn.nodes().iter().position(|n| n == id).expect("validated endpoint");
    let arcs: Vec<(usize, usize)> = edges.iter().map(|e| (index(&e.from), index(&e.to))).collect();
    let (source, sink) = (index(rn.source()), index(rn.sink()));

    let mut total = 0.0;
    let mut seen = vec![false; rn.nodes().len()];
    let mut queue = VecDeque::new();
    for world in 0u64..(1u64 << edges.len()) {
        let works = |k: usize| world >> k & 1 == 1;
        let weight: f64 = edge_probs
            .iter()
            .enumerate()
            .map(|(k, &p)| if works(k) { p } else { 1.0 - p })
            .product();
        if weight == 0.0 {
            continue;
        }
        seen.iter_mut().for_each(|s| *s = false);
        seen[source] = true;
        queue.clear();
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for (k, &(a, b)) in arcs.iter().enumerate() {
                if a == u && works(k) && !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
        if seen[sink] {
            total += weight;
        }
    }
    Ok(total)
}
