//! Reference values, random model generators and a small check ledger used
//! by the acceptance target.

use std::fmt::Write;

use rand::seq::index::sample;
use rand::Rng;

use bnor_core::{
    ConditionalMassTable, Edge, EdgeReliability, GateVariant, MassFunction, Node, ProbabilityInterval,
    ReliabilityNetwork,
};

/// Published reference values.
pub mod reference {
    /// Alarm gate, burglar parent `{T}`: rows `({T},{T})`, `({T},{F})`,
    /// `({T},{T,F})` as `[m_T, m_F, m_TF]`, per variant in the order
    /// ImNOR, LC-BNOR, PBNOR, OBNOR, TBNOR, OCBNOR(0.6).
    pub const ALARM_ROWS_B_TRUE: [[[f64; 3]; 3]; 6] = [
        [[0.88, 0.02, 0.02], [0.6, 0.2, 0.2], [0.6, 0.02, 0.38]],
        [[0.88, 0.02, 0.02], [0.6, 0.2, 0.2], [0.6, 0.0, 0.4]],
        [[0.88, 0.02, 0.02], [0.6, 0.2, 0.2], [0.6, 0.18, 0.22]],
        [[0.88, 0.02, 0.02], [0.6, 0.2, 0.2], [0.88, 0.0, 0.12]],
        [[0.88, 0.02, 0.02], [0.6, 0.2, 0.2], [0.74, 0.09, 0.17]],
        [[0.88, 0.02, 0.02], [0.6, 0.2, 0.2], [0.768, 0.072, 0.16]],
    ];

    /// Alarm marginal `m(A)`, same variant order.
    pub const ALARM_MARGINALS: [[f64; 3]; 6] = [
        [0.3996, 0.4352, 0.1652],
        [0.3996, 0.4284, 0.1720],
        [0.3996, 0.4896, 0.1108],
        [0.4528, 0.4284, 0.1188],
        [0.4262, 0.4590, 0.1148],
        [0.4315, 0.4529, 0.1156],
    ];

    /// Five-node reliability with precise edges.
    pub const FIVE_NODE_RELIABILITY: f64 = 0.9148;

    /// Five-node system mass `m(S)` with imprecise `e1`, `e2`, same variant order.
    pub const FIVE_NODE_MASSES: [[f64; 3]; 6] = [
        [0.9007, 0.0702, 0.0291],
        [0.8818, 0.0540, 0.0642],
        [0.9007, 0.0828, 0.0165],
        [0.9133, 0.0683, 0.0184],
        [0.9070, 0.0755, 0.0175],
        [0.9082, 0.0741, 0.0177],
    ];

    /// Pignistic `(BetP(S=T), BetP(S=F))`, same variant order.
    pub const FIVE_NODE_PIGNISTIC: [[f64; 2]; 6] = [
        [0.9152, 0.0848],
        [0.9139, 0.0861],
        [0.9090, 0.0910],
        [0.9225, 0.0775],
        [0.9157, 0.0843],
        [0.9171, 0.0829],
    ];

    /// `Bel(S=T)` and `Pl(S=T)` under OCBNOR(0.6).
    pub const FIVE_NODE_OC06_BEL_PL: [f64; 2] = [0.9082, 0.9259];
}

/// The variant order of every reference table.
pub fn reference_variants() -> [GateVariant; 6] {
    [
        GateVariant::ImNor,
        GateVariant::LcBnor,
        GateVariant::Pbnor,
        GateVariant::Obnor,
        GateVariant::Tbnor,
        GateVariant::Ocbnor(0.6),
    ]
}

/// Outcome of one comparison.
#[derive(Debug, Clone)]
pub struct Check {
    pub label: String,
    pub ok: bool,
    pub detail: String,
}

/// Checks collected for a single criterion.
#[derive(Debug, Default)]
pub struct Checklist {
    pub checks: Vec<Check>,
}

impl Checklist {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn check(&mut self, label: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            label: label.into(),
            ok,
            detail: detail.into(),
        });
    }

    /// `|got - want| <= tol`.
    pub fn close(&mut self, label: impl Into<String>, got: f64, want: f64, tol: f64) {
        let diff = (got - want).abs();
        self.check(
            label,
            diff <= tol,
            format!("got {got:.6}, expected {want:.6}, |diff| {diff:.1e}, tol {tol:.0e}"),
        );
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok)
    }

    /// One summary line plus one indented line per failed check.
    pub fn render(&self, id: usize, title: &str) -> String {
        let mut out = String::new();
        let failed = self.failures().count();
        let _ = writeln!(
            out,
            "criterion {id}: {} {title} ({}/{} checks passed)",
            if failed == 0 { "PASS" } else { "FAIL" },
            self.checks.len() - failed,
            self.checks.len()
        );
        for c in self.failures() {
            let _ = writeln!(out, "    failed {}: {}", c.label, c.detail);
        }
        out
    }
}

pub fn random_mass(rng: &mut impl Rng) -> MassFunction {
    let mut w: [f64; 3] = [rng.gen(), rng.gen(), rng.gen()];
    // Sparse masses exercise the zero-weight paths.
    for x in &mut w {
        if rng.gen_bool(0.2) {
            *x = 0.0;
        }
    }
    let total: f64 = w.iter().sum();
    if total == 0.0 {
        return MassFunction::VACUOUS;
    }
    MassFunction::new(w[0] / total, w[1] / total, 1.0 - w[0] / total - w[1] / total).expect("normalized")
}

pub fn random_interval(rng: &mut impl Rng) -> ProbabilityInterval {
    let a: f64 = rng.gen();
    if rng.gen_bool(0.2) {
        return ProbabilityInterval::point(a).expect("in range");
    }
    let b: f64 = rng.gen();
    ProbabilityInterval::new(a.min(b), a.max(b)).expect("ordered")
}

/// Any variant usable with uncertain parents.
pub fn random_variant(rng: &mut impl Rng) -> GateVariant {
    match rng.gen_range(0..6) {
        0 => GateVariant::ImNor,
        1 => GateVariant::LcBnor,
        2 => GateVariant::Pbnor,
        3 => GateVariant::Obnor,
        4 => GateVariant::Tbnor,
        _ => GateVariant::Ocbnor(rng.gen()),
    }
}

fn random_table(rng: &mut impl Rng, arity: usize) -> ConditionalMassTable {
    ConditionalMassTable::from_fn::<()>(arity, |_| Ok(Some(random_mass(rng)))).expect("infallible")
}

/// A random DAG of at most `max_nodes` nodes, with priors, gates of random
/// variants and explicit random tables. Node `i` only has parents `< i`.
pub fn random_dag(rng: &mut impl Rng, max_nodes: usize) -> Vec<Node> {
    let n = rng.gen_range(1..=max_nodes);
    let mut nodes = Vec::with_capacity(n);
    for i in 0..n {
        let id = format!("x{i}");
        let k = if i == 0 { 0 } else { rng.gen_range(0..=i.min(3)) };
        if k == 0 {
            nodes.push(Node::root(id, random_mass(rng)));
            continue;
        }
        let parents: Vec<String> = sample(rng, i, k).into_iter().map(|p| format!("x{p}")).collect();
        if rng.gen_bool(0.15) {
            let table = random_table(rng, k);
            nodes.push(Node::table(id, parents, table));
        } else {
            let links = (0..k).map(|_| random_interval(rng)).collect();
            nodes.push(Node::gate(id, parents, random_variant(rng), links));
        }
    }
    nodes
}

/// A random two-terminal network with at most `max_edges` edges and precise
/// edge probabilities. Edges point forward in node order, so the graph is
/// acyclic apart from the occasional self loop or edge back into the
/// source; the sink is always reachable.
pub fn random_graph(rng: &mut impl Rng, max_edges: usize) -> ReliabilityNetwork {
    let n = rng.gen_range(2..=6usize);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    // A random forward path guarantees reachability.
    let mut at = 0;
    while at != n - 1 && arcs.len() < max_edges - 1 {
        let next = rng.gen_range(at + 1..n);
        arcs.push((at, next));
        at = next;
    }
    if at != n - 1 {
        arcs.push((at, n - 1));
    }
    let extra = rng.gen_range(0..=max_edges - arcs.len());
    for _ in 0..extra {
        let arc = match rng.gen_range(0..10) {
            0 => {
                let v = rng.gen_range(0..n);
                (v, v)
            }
            1 => (rng.gen_range(1..n), 0),
            _ => {
                let a = rng.gen_range(0..n - 1);
                (a, rng.gen_range(a + 1..n))
            }
        };
        arcs.push(arc);
    }
    let edges = arcs
        .iter()
        .enumerate()
        .map(|(k, &(a, b))| {
            let p = match rng.gen_range(0..10) {
                0 => 0.0,
                1 => 1.0,
                _ => rng.gen(),
            };
            Edge::new(
                format!("e{k}"),
                names[a].clone(),
                names[b].clone(),
                EdgeReliability::Probability(p),
            )
        })
        .collect();
    ReliabilityNetwork::new(names.clone(), edges, names[0].clone(), names[n - 1].clone(), 0.0).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn generators_respect_bounds() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..200 {
            assert!(random_dag(&mut rng, 8).len() <= 8);
            let g = random_graph(&mut rng, 8);
            assert!(g.edges().len() <= 8);
            let m = random_mass(&mut rng);
            assert!(m.validate().is_ok());
        }
    }
}
