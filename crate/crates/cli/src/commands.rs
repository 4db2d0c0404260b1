//! Subcommand bodies. Each returns the complete output so nothing is printed
//! when a command fails halfway.

use std::fmt::Write;

use serde::Serialize;

use bnor_core::oracle::MAX_JOINT_NODES;
use bnor_core::reliability::{build_bn_model, state_masses};
use bnor_core::{
    build_bnor_model, evaluate, evaluate_bn, joint_enumeration_marginal, lambda_sweep, width_sweep,
    world_enumeration_reliability, BeliefReport, EvidentialNetwork, GateSpec, GateVariant, MassFunction,
    ProbabilityInterval, ReliabilityNetwork, ReliabilityReport, SweepPoint,
};

use crate::error::CliError;
use crate::format::{parse_network, EnetFile};

/// Agreement required between the elimination kernel and the oracles.
pub const VERIFY_TOLERANCE: f64 = 1e-9;

/// How a reliability network is turned into an evidential network.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    Gate(GateVariant),
    /// Edges as explicit nodes with deterministic AND/OR tables.
    Bn,
}

impl Model {
    fn name(&self) -> String {
        match self {
            Model::Gate(v) => v.name(),
            Model::Bn => "BN".into(),
        }
    }

    fn network(&self, rn: &ReliabilityNetwork) -> Result<EvidentialNetwork, CliError> {
        Ok(match self {
            Model::Gate(v) => build_bnor_model(rn, *v)?,
            Model::Bn => build_bn_model(rn)?,
        })
    }

    fn evaluate(&self, rn: &ReliabilityNetwork) -> Result<ReliabilityReport, CliError> {
        Ok(match self {
            Model::Gate(v) => evaluate(rn, *v)?,
            Model::Bn => evaluate_bn(rn)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    Lambda,
    Width,
}

pub fn cmd_gate(
    variant: GateVariant,
    links: Vec<ProbabilityInterval>,
    etas: Vec<f64>,
    precision: usize,
    json: bool,
) -> Result<String, CliError> {
    let etas = if etas.is_empty() { vec![0.0; links.len()] } else { etas };
    let spec = GateSpec::new(variant, links, etas)?;
    let table = spec.table()?;
    if json {
        return Ok(to_json(&table));
    }
    let mut out = String::new();
    let links: Vec<String> = spec.links.iter().map(|l| l.to_string()).collect();
    let etas: Vec<String> = spec.parent_ignorance.iter().map(|e| e.to_string()).collect();
    let _ = writeln!(
        out,
        "{}  links {}  eta [{}]",
        spec.variant,
        links.join(" "),
        etas.join(", ")
    );
    out.push_str(&table.render(precision));
    Ok(out)
}

#[derive(Serialize)]
struct MarginalOut<'a> {
    node: &'a str,
    mass: MassFunction,
    #[serde(flatten)]
    belief: BeliefReport,
}

pub fn cmd_infer(
    text: &str,
    target: Option<&str>,
    precision: usize,
    verify: bool,
    json: bool,
) -> Result<String, CliError> {
    let file = EnetFile::parse(text)?;
    let net = file.build()?;
    let targets: Vec<String> = match target.or(file.target.as_deref()) {
        Some(t) => vec![t.to_string()],
        None => net.node_ids().map(str::to_string).collect(),
    };
    let mut rows = Vec::with_capacity(targets.len());
    for t in &targets {
        rows.push((t.as_str(), net.marginal(t)?));
    }
    let mut notes = Vec::new();
    if verify {
        let mut worst = 0.0f64;
        for (t, m) in &rows {
            worst = worst.max(max_diff(m, &joint_enumeration_marginal(&net, t)?));
        }
        if worst > VERIFY_TOLERANCE {
            return Err(CliError::Verification(format!(
                "joint enumeration differs by {worst:e}"
            )));
        }
        notes.push(format!("verify: joint enumeration agrees, max |diff| = {worst:.1e}"));
    }
    if json {
        let out: Vec<MarginalOut> = rows
            .iter()
            .map(|(node, m)| MarginalOut {
                node,
                mass: *m,
                belief: BeliefReport::from_mass(m),
            })
            .collect();
        return Ok(to_json(&out));
    }
    let width = targets.iter().map(|t| t.len()).max().unwrap_or(0).max(4);
    let col = precision + 4;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<width$} {:>col$} {:>col$} {:>col$} {:>col$} {:>col$} {:>col$}",
        "node", "{T}", "{F}", "{T,F}", "Bel(T)", "Pl(T)", "BetP(T)"
    );
    for (t, m) in &rows {
        let r = BeliefReport::from_mass(m);
        let _ = writeln!(
            out,
            "{:<width$} {:>col$.p$} {:>col$.p$} {:>col$.p$} {:>col$.p$} {:>col$.p$} {:>col$.p$}",
            t,
            m.t(),
            m.f(),
            m.tf(),
            r.bel_t,
            r.pl_t,
            r.betp_t,
            p = precision
        );
    }
    for n in notes {
        let _ = writeln!(out, "{n}");
    }
    Ok(out)
}

fn max_diff(a: &MassFunction, b: &MassFunction) -> f64 {
    a.as_array()
        .iter()
        .zip(b.as_array())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Cross-checks the model against full-joint enumeration and, with precise
/// edges, against world enumeration of the graph.
fn verify_reliability(
    rn: &ReliabilityNetwork,
    model: Model,
    report: &ReliabilityReport,
) -> Result<Vec<String>, CliError> {
    let mut notes = Vec::new();
    let net = model.network(rn)?;
    if net.len() <= MAX_JOINT_NODES {
        let joint = joint_enumeration_marginal(&net, rn.sink())?;
        let d = max_diff(&report.mass, &joint);
        if d > VERIFY_TOLERANCE {
            return Err(CliError::Verification(format!("joint enumeration differs by {d:e}")));
        }
        notes.push(format!("verify: joint enumeration agrees, max |diff| = {d:.1e}"));
    } else {
        notes.push(format!(
            "verify: joint enumeration skipped, {} nodes exceed {MAX_JOINT_NODES}",
            net.len()
        ));
    }
    match rn.point_probabilities() {
        Some(probs) => {
            let r = world_enumeration_reliability(rn, &probs)?;
            let d = (report.mass.t() - r).abs().max(report.mass.tf());
            if d > VERIFY_TOLERANCE {
                return Err(CliError::Verification(format!(
                    "world enumeration gives {r}, model differs by {d:e}"
                )));
            }
            notes.push(format!("verify: world enumeration R = {r}, max |diff| = {d:.1e}"));
        }
        None => notes.push("verify: world enumeration skipped, edges carry intervals".into()),
    }
    Ok(notes)
}

#[derive(Serialize)]
struct ReliabilityOut {
    model: String,
    #[serde(flatten)]
    report: ReliabilityReport,
    betp_failed: f64,
}

pub fn cmd_reliability(
    text: &str,
    model: Model,
    precision: usize,
    verify: bool,
    json: bool,
) -> Result<String, CliError> {
    let rn = parse_network(text)?;
    let report = model.evaluate(&rn)?;
    let notes = if verify {
        verify_reliability(&rn, model, &report)?
    } else {
        Vec::new()
    };
    if json {
        let betp_failed = report.mass.betp().1;
        return Ok(to_json(&ReliabilityOut {
            model: model.name(),
            report,
            betp_failed,
        }));
    }
    let b = report.belief();
    let p = precision;
    let mut out = String::new();
    let _ = writeln!(out, "model       {}", model.name());
    let _ = writeln!(out, "m(S={{T}})    {:.p$}", report.mass.t());
    let _ = writeln!(out, "m(S={{F}})    {:.p$}", report.mass.f());
    let _ = writeln!(out, "m(S={{T,F}})  {:.p$}", report.mass.tf());
    let _ = writeln!(out, "Bel(S=T)    {:.p$}", b.bel_t);
    let _ = writeln!(out, "Pl(S=T)     {:.p$}", b.pl_t);
    let _ = writeln!(out, "BetP(S=T)   {:.p$}", b.betp_t);
    let _ = writeln!(out, "BetP(S=F)   {:.p$}", b.betp_f);
    for n in notes {
        let _ = writeln!(out, "{n}");
    }
    Ok(out)
}

pub const SWEEP_HEADER: &str = "param,m_T,m_F,m_TF,bel_T,pl_T,betp_T";

pub fn sweep_csv(points: &[SweepPoint], precision: usize) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for pt in points {
        let b = pt.report.belief();
        let [t, f, tf] = state_masses(&pt.report);
        let p = precision;
        let _ = writeln!(
            out,
            "{:.p$},{t:.p$},{f:.p$},{tf:.p$},{:.p$},{:.p$},{:.p$}",
            pt.param, b.bel_t, b.pl_t, b.betp_t
        );
    }
    out
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_sweep(
    text: &str,
    param: SweepParam,
    from: f64,
    to: f64,
    steps: usize,
    edge: Option<&str>,
    variant: GateVariant,
    precision: usize,
) -> Result<String, CliError> {
    let rn = parse_network(text)?;
    let points = match param {
        SweepParam::Lambda => lambda_sweep(&rn, from, to, steps)?,
        SweepParam::Width => {
            let edge = edge.ok_or_else(|| CliError::Usage("a width sweep needs --edge".into()))?;
            width_sweep(&rn, edge, variant, from, to, steps)?
        }
    };
    Ok(sweep_csv(&points, precision))
}

/// Variants shown by `compare`, in column order.
pub fn compare_variants(lambda: f64) -> [GateVariant; 6] {
    [
        GateVariant::ImNor,
        GateVariant::LcBnor,
        GateVariant::Pbnor,
        GateVariant::Obnor,
        GateVariant::Tbnor,
        GateVariant::Ocbnor(lambda),
    ]
}

/// A labelled quantity read off a report.
type Measure = fn(&ReliabilityReport) -> f64;

pub fn cmd_compare(text: &str, lambda: f64, precision: usize) -> Result<String, CliError> {
    let rn = parse_network(text)?;
    let reports = compare_variants(lambda)
        .into_iter()
        .map(|v| Ok((v, evaluate(&rn, v)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let col = reports
        .iter()
        .map(|(v, _)| v.name().chars().count())
        .max()
        .unwrap_or(0)
        .max(precision + 3);
    let mut out = String::new();
    let _ = write!(out, "{:<11}", "");
    for (v, _) in &reports {
        let _ = write!(out, " {:>col$}", v.name());
    }
    out.push('\n');
    let rows: [(&str, Measure); 7] = [
        ("m(S={T})", |r| r.mass.t()),
        ("m(S={F})", |r| r.mass.f()),
        ("m(S={T,F})", |r| r.mass.tf()),
        ("Bel(S=T)", |r| r.bel_working),
        ("Pl(S=T)", |r| r.pl_working),
        ("BetP(S=T)", |r| r.betp_working),
        ("BetP(S=F)", |r| r.mass.betp().1),
    ];
    for (label, get) in rows {
        let _ = write!(out, "{label:<11}");
        for (_, r) in &reports {
            let _ = write!(out, " {:>col$.p$}", get(r), p = precision);
        }
        out.push('\n');
    }
    Ok(out)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}
