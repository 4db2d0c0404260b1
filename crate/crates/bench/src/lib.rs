//! Workloads shared by the benchmarks.

use bnor_core::{Edge, EdgeReliability, ProbabilityInterval, ReliabilityNetwork};

/// A ladder of `rungs` stages: two nodes per stage, each fully connected to
/// the next stage. Every edge carries an imprecise link around 0.8.
pub fn ladder(rungs: usize) -> ReliabilityNetwork {
    let mut nodes = vec!["s".to_string()];
    let mut edges = Vec::new();
    let mut prev = vec!["s".to_string()];
    for r in 0..rungs {
        let stage: Vec<String> = (0..2).map(|k| format!("r{r}_{k}")).collect();
        for from in &prev {
            for to in &stage {
                let id = format!("{from}->{to}");
                let iv = ProbabilityInterval::new(0.75, 0.85).expect("valid");
                edges.push(Edge::new(id, from.clone(), to.clone(), EdgeReliability::Interval(iv)));
            }
        }
        nodes.extend(stage.iter().cloned());
        prev = stage;
    }
    nodes.push("t".to_string());
    for from in &prev {
        let iv = ProbabilityInterval::new(0.75, 0.85).expect("valid");
        edges.push(Edge::new(
            format!("{from}->t"),
            from.clone(),
            "t",
            EdgeReliability::Interval(iv),
        ));
    }
    ReliabilityNetwork::new(nodes, edges, "s", "t", 0.0).expect("valid ladder")
}
