//! Canonical OR gates: conditional mass tables from link probabilities.
//!
//! Each parent `X_i` of a child `Y` passes through a noisy flip `X_i -> X_i'`
//! described by a conditional mass function, and `Y = X_1' ∨ … ∨ X_n'` with
//! the OR taken elementwise on subsets of `{T, F}`. The variants differ only
//! in how belief held on an ignorant parent state `{T, F}` is flipped.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::belief::{BeliefError, MassFunction, ProbabilityInterval, Subset};

const BETA_NOISE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GateError {
    #[error("gate needs at least one parent")]
    NoParents,
    #[error("{links} link intervals but {etas} parent ignorance values")]
    LengthMismatch { links: usize, etas: usize },
    #[error("optimism coefficient {0} is outside [0, 1]")]
    InvalidOptimism(f64),
    #[error("parent ignorance {eta} for parent {parent} is outside [0, 1]")]
    InvalidIgnorance { parent: usize, eta: f64 },
    #[error("link probability {0} is outside [0, 1]")]
    InvalidProbability(f64),
    #[error("probabilistic Noisy-OR needs a precise link for parent {parent}, got {link}")]
    ImpreciseLink { parent: usize, link: ProbabilityInterval },
    #[error(
        "invalid gate parameters for parent {parent}: flip mass on {{F}} is {beta} \
         (optimism {lambda}, ignorance {eta}, upper link {upper})"
    )]
    InvalidGateParameters {
        parent: usize,
        lambda: f64,
        eta: f64,
        upper: f64,
        beta: f64,
    },
    #[error("row {row:?} is not a valid mass function: {source}")]
    InvalidRow { row: Vec<Subset>, source: BeliefError },
}

/// The family of OR gates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", content = "lambda", rename_all = "lowercase")]
pub enum GateVariant {
    /// Classic probabilistic Noisy-OR.
    Nor,
    /// Imprecise Noisy-OR, kept as the comparison baseline.
    ImNor,
    /// Least committed: an ignorant parent flips to `{T, F}` with mass 1.
    LcBnor,
    /// Pessimistic, equal to `Ocbnor(0)`.
    Pbnor,
    /// Optimistic, equal to `Ocbnor(1)`.
    Obnor,
    /// Temperate, equal to `Ocbnor(0.5)`.
    Tbnor,
    /// General optimism coefficient in `[0, 1]`.
    Ocbnor(f64),
}

impl GateVariant {
    /// Optimism coefficient for the OCBNOR family, `None` for the rest.
    pub fn optimism(&self) -> Option<f64> {
        match *self {
            GateVariant::Pbnor => Some(0.0),
            GateVariant::Obnor => Some(1.0),
            GateVariant::Tbnor => Some(0.5),
            GateVariant::Ocbnor(l) => Some(l),
            GateVariant::Nor | GateVariant::ImNor | GateVariant::LcBnor => None,
        }
    }

    pub fn check(&self) -> Result<(), GateError> {
        match self.optimism() {
            Some(l) if !(0.0..=1.0).contains(&l) => Err(GateError::InvalidOptimism(l)),
            _ => Ok(()),
        }
    }

    /// Short name used on the command line.
    pub fn name(&self) -> String {
        match self {
            GateVariant::Nor => "NOR".into(),
            GateVariant::ImNor => "ImNOR".into(),
            GateVariant::LcBnor => "LC-BNOR".into(),
            GateVariant::Pbnor => "PBNOR".into(),
            GateVariant::Obnor => "OBNOR".into(),
            GateVariant::Tbnor => "TBNOR".into(),
            GateVariant::Ocbnor(l) => format!("OCBNOR(λ={l})"),
        }
    }
}

impl fmt::Display for GateVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A gate: variant, one link interval per parent, and the parents' prior
/// ignorance `η_i = m(X_i = {T, F})`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateSpec {
    pub variant: GateVariant,
    pub links: Vec<ProbabilityInterval>,
    pub parent_ignorance: Vec<f64>,
}

impl GateSpec {
    pub fn new(
        variant: GateVariant,
        links: Vec<ProbabilityInterval>,
        parent_ignorance: Vec<f64>,
    ) -> Result<Self, GateError> {
        let spec = Self {
            variant,
            links,
            parent_ignorance,
        };
        spec.check()?;
        Ok(spec)
    }

    /// A gate whose parents carry no ignorance.
    pub fn with_precise_parents(variant: GateVariant, links: Vec<ProbabilityInterval>) -> Result<Self, GateError> {
        let n = links.len();
        Self::new(variant, links, vec![0.0; n])
    }

    pub fn arity(&self) -> usize {
        self.links.len()
    }

    pub fn check(&self) -> Result<(), GateError> {
        self.variant.check()?;
        if self.links.is_empty() {
            return Err(GateError::NoParents);
        }
        if self.links.len() != self.parent_ignorance.len() {
            return Err(GateError::LengthMismatch {
                links: self.links.len(),
                etas: self.parent_ignorance.len(),
            });
        }
        for (parent, &eta) in self.parent_ignorance.iter().enumerate() {
            if !(0.0..=1.0).contains(&eta) {
                return Err(GateError::InvalidIgnorance { parent, eta });
            }
        }
        Ok(())
    }

    /// Builds the conditional mass table for this gate.
    pub fn table(&self) -> Result<ConditionalMassTable, GateError> {
        match self.variant {
            GateVariant::Nor => {
                let probs = self
                    .links
                    .iter()
                    .enumerate()
                    .map(|(parent, link)| {
                        if link.is_degenerate() {
                            Ok(link.lower())
                        } else {
                            Err(GateError::ImpreciseLink { parent, link: *link })
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                nor_cpt(&probs)
            }
            GateVariant::ImNor => imnor_table(self),
            _ => bnor_table(self),
        }
    }
}

/// Child mass functions indexed by parent-state tuples over `{T}, {F}, {T,F}`.
///
/// Rows are stored in mixed-radix order with the first parent most
/// significant. Probabilistic tables leave the rows involving `{T, F}` empty.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalMassTable {
    arity: usize,
    rows: Vec<Option<MassFunction>>,
}

impl ConditionalMassTable {
    /// Builds every row from `f`, which may decline a row by returning `None`.
    pub fn from_fn<E>(
        arity: usize,
        mut f: impl FnMut(&[Subset]) -> Result<Option<MassFunction>, E>,
    ) -> Result<Self, E> {
        let rows = ParentStates::new(arity)
            .map(|states| f(&states))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { arity, rows })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of row slots, always `3^arity`.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Number of rows actually defined.
    pub fn defined_rows(&self) -> usize {
        self.rows.iter().filter(|r| r.is_some()).count()
    }

    pub fn get(&self, parents: &[Subset]) -> Option<&MassFunction> {
        row_index(parents)
            .filter(|_| parents.len() == self.arity)
            .and_then(|i| self.rows[i].as_ref())
    }

    /// Row by mixed-radix index (state indices `T=0, F=1, TF=2`).
    pub fn get_index(&self, index: usize) -> Option<&MassFunction> {
        self.rows.get(index).and_then(Option::as_ref)
    }

    /// Defined rows with their parent tuples, in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<Subset>, &MassFunction)> {
        ParentStates::new(self.arity)
            .zip(self.rows.iter())
            .filter_map(|(states, row)| row.as_ref().map(|m| (states, m)))
    }

    /// Plain-text rendering: one row per parent tuple, masses to `precision`
    /// decimals and a normalization column.
    pub fn render(&self, precision: usize) -> String {
        let mut out = String::new();
        let label_width = (self.arity * 6).max(7);
        let col = precision + 4;
        let _ = writeln!(
            out,
            "{:<label_width$} {:>col$} {:>col$} {:>col$} {:>col$}",
            "parents", "{T}", "{F}", "{T,F}", "sum"
        );
        for (states, m) in self.iter() {
            let label = states.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",");
            let sum = m.t() + m.f() + m.tf();
            let _ = writeln!(
                out,
                "{:<label_width$} {:>col$.p$} {:>col$.p$} {:>col$.p$} {:>col$.p$}",
                label,
                m.t(),
                m.f(),
                m.tf(),
                sum,
                p = precision
            );
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct TableRow {
    parents: Vec<Subset>,
    mass: MassFunction,
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    arity: usize,
    rows: Vec<TableRow>,
}

impl Serialize for ConditionalMassTable {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        TableRepr {
            arity: self.arity,
            rows: self.iter().map(|(parents, m)| TableRow { parents, mass: *m }).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ConditionalMassTable {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = TableRepr::deserialize(deserializer)?;
        let mut rows = vec![None; 3usize.pow(repr.arity as u32)];
        for row in repr.rows {
            if row.parents.len() != repr.arity {
                return Err(D::Error::custom(format!("row {:?} has the wrong arity", row.parents)));
            }
            let i = row_index(&row.parents).ok_or_else(|| D::Error::custom("empty parent state"))?;
            if rows[i].replace(row.mass).is_some() {
                return Err(D::Error::custom(format!("duplicate row {:?}", row.parents)));
            }
        }
        Ok(Self {
            arity: repr.arity,
            rows,
        })
    }
}

/// Mixed-radix index of a parent tuple, `None` if a state is empty.
pub fn row_index(parents: &[Subset]) -> Option<usize> {
    parents
        .iter()
        .try_fold(0usize, |acc, s| s.focal_index().map(|d| acc * 3 + d))
}

/// All `3^n` parent tuples in storage order.
#[derive(Debug, Clone)]
pub struct ParentStates {
    digits: Vec<usize>,
    done: bool,
}

impl ParentStates {
    pub fn new(arity: usize) -> Self {
        Self {
            digits: vec![0; arity],
            done: false,
        }
    }
}

impl Iterator for ParentStates {
    type Item = Vec<Subset>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let item = self.digits.iter().map(|&d| Subset::FOCAL[d]).collect();
        self.done = true;
        for d in self.digits.iter_mut().rev() {
            if *d < 2 {
                *d += 1;
                self.done = false;
                break;
            }
            *d = 0;
        }
        Some(item)
    }
}

/// Set-valued OR of two subsets.
pub fn set_or(a: Subset, b: Subset) -> Subset {
    a.or(b)
}

/// Probabilistic Noisy-OR table. Only `{T}`/`{F}` parent tuples are defined.
pub fn nor_cpt(link_probs: &[f64]) -> Result<ConditionalMassTable, GateError> {
    if link_probs.is_empty() {
        return Err(GateError::NoParents);
    }
    if let Some(&p) = link_probs.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(GateError::InvalidProbability(p));
    }
    ConditionalMassTable::from_fn(link_probs.len(), |states| {
        if states.contains(&Subset::TF) {
            return Ok(None);
        }
        let inhibited: f64 = states
            .iter()
            .zip(link_probs)
            .filter(|(s, _)| **s == Subset::T)
            .map(|(_, p)| 1.0 - p)
            .product();
        MassFunction::new(1.0 - inhibited, inhibited, 0.0)
            .map(Some)
            .map_err(|source| GateError::InvalidRow {
                row: states.to_vec(),
                source,
            })
    })
}

/// Imprecise Noisy-OR table, implemented verbatim (pathologies included).
pub fn imnor_table(spec: &GateSpec) -> Result<ConditionalMassTable, GateError> {
    spec.check()?;
    ConditionalMassTable::from_fn(spec.arity(), |states| {
        let mut lower_inhibit = 1.0;
        let mut upper_inhibit = 1.0;
        for (s, link) in states.iter().zip(&spec.links) {
            match s {
                Subset::T => {
                    lower_inhibit *= 1.0 - link.lower();
                    upper_inhibit *= 1.0 - link.upper();
                }
                Subset::TF => upper_inhibit *= 1.0 - link.upper(),
                _ => {}
            }
        }
        MassFunction::new(1.0 - lower_inhibit, upper_inhibit, lower_inhibit - upper_inhibit)
            .map(Some)
            .map_err(|source| GateError::InvalidRow {
                row: states.to_vec(),
                source,
            })
    })
}

/// Conditional mass of the flipped parent `X_i'` given the parent state.
pub fn flip_distribution(
    variant: GateVariant,
    link: ProbabilityInterval,
    parent_state: Subset,
    eta: f64,
) -> Result<MassFunction, GateError> {
    flip_for_parent(variant, link, parent_state, eta, 0)
}

fn flip_for_parent(
    variant: GateVariant,
    link: ProbabilityInterval,
    parent_state: Subset,
    eta: f64,
    parent: usize,
) -> Result<MassFunction, GateError> {
    variant.check()?;
    let (lo, hi) = (link.lower(), link.upper());
    let on_true = MassFunction::from(link);
    match parent_state {
        Subset::T => Ok(on_true),
        Subset::F | Subset::Empty => Ok(MassFunction::CERTAIN_FALSE),
        Subset::TF => match variant {
            GateVariant::LcBnor => Ok(MassFunction::VACUOUS),
            GateVariant::Nor | GateVariant::ImNor => Ok(MassFunction::VACUOUS),
            _ => {
                let lambda = variant.optimism().expect("OCBNOR family");
                let alpha = lambda * lo;
                let beta = lambda * (1.0 - hi) + (1.0 - lambda - eta);
                let gamma = lambda * (hi - lo) + eta;
                if beta < -BETA_NOISE {
                    return Err(GateError::InvalidGateParameters {
                        parent,
                        lambda,
                        eta,
                        upper: hi,
                        beta,
                    });
                }
                MassFunction::new(alpha, beta.max(0.0), gamma).map_err(|source| GateError::InvalidRow {
                    row: vec![Subset::TF],
                    source,
                })
            }
        },
    }
}

/// Belief Noisy-OR table: for each parent tuple, the disjunctive combination
/// of the per-parent flip distributions.
pub fn bnor_table(spec: &GateSpec) -> Result<ConditionalMassTable, GateError> {
    spec.check()?;
    // Flip distributions per parent and state, computed once.
    let flips = spec
        .links
        .iter()
        .zip(&spec.parent_ignorance)
        .enumerate()
        .map(|(i, (link, &eta))| {
            Subset::FOCAL
                .iter()
                .map(|&s| flip_for_parent(spec.variant, *link, s, eta, i))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;

    ConditionalMassTable::from_fn(spec.arity(), |states| {
        // Fold the running child distribution one parent at a time.
        let mut acc = [0.0, 1.0, 0.0];
        for (i, s) in states.iter().enumerate() {
            let flip = &flips[i][s.focal_index().expect("focal state")];
            let mut next = [0.0; 3];
            for (a, &pa) in Subset::FOCAL.iter().zip(&acc) {
                if pa == 0.0 {
                    continue;
                }
                for b in Subset::FOCAL {
                    let pb = flip.mass(b);
                    if pb != 0.0 {
                        next[set_or(*a, b).focal_index().expect("focal")] += pa * pb;
                    }
                }
            }
            acc = next;
        }
        MassFunction::new(acc[0], acc[1], acc[2])
            .map(Some)
            .map_err(|source| GateError::InvalidRow {
                row: states.to_vec(),
                source,
            })
    })
}

/// Deterministic Boolean connective lifted to subsets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogicOp {
    And,
    Or,
}

/// Deterministic table: each row puts all mass on the set-valued result.
pub fn logic_table(op: LogicOp, arity: usize) -> ConditionalMassTable {
    ConditionalMassTable::from_fn::<std::convert::Infallible>(arity, |states| {
        let (first, rest) = states.split_first().expect("arity >= 1");
        let out = rest.iter().fold(*first, |acc, &s| match op {
            LogicOp::And => acc.and(s),
            LogicOp::Or => acc.or(s),
        });
        Ok(Some(MassFunction::categorical(out)))
    })
    .unwrap_or_else(|e| match e {})
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use Subset::{F, T, TF};

    fn iv(lo: f64, hi: f64) -> ProbabilityInterval {
        ProbabilityInterval::new(lo, hi).unwrap()
    }

    fn alarm(variant: GateVariant, eta_b: f64, eta_e: f64) -> ConditionalMassTable {
        GateSpec::new(variant, vec![iv(0.6, 0.8), iv(0.7, 0.9)], vec![eta_b, eta_e])
            .unwrap()
            .table()
            .unwrap()
    }

    fn close(m: &MassFunction, expected: [f64; 3], tol: f64) -> bool {
        m.as_array().iter().zip(expected).all(|(a, b)| (a - b).abs() <= tol)
    }

    /// Independent closed form for an OR of flips: the child is `{F}` only if
    /// every flip is `{F}`, and `{T}` if at least one flip is `{T}`.
    fn closed_form(flips: &[MassFunction]) -> [f64; 3] {
        let f: f64 = flips.iter().map(|m| m.f()).product();
        let not_t: f64 = flips.iter().map(|m| 1.0 - m.t()).product();
        [1.0 - not_t, f, not_t - f]
    }

    #[test]
    fn parent_states_enumerate_in_order() {
        let all: Vec<_> = ParentStates::new(2).collect();
        assert_eq!(all.len(), 9);
        assert_eq!(all[0], vec![T, T]);
        assert_eq!(all[2], vec![T, TF]);
        assert_eq!(all[8], vec![TF, TF]);
        for (i, s) in all.iter().enumerate() {
            assert_eq!(row_index(s), Some(i));
        }
        assert_eq!(ParentStates::new(0).count(), 1);
    }

    #[test]
    fn nor_examples() {
        let t = nor_cpt(&[0.6, 0.7]).unwrap();
        assert_eq!(t.defined_rows(), 4);
        assert_eq!(t.len(), 9);
        let tt = t.get(&[T, T]).unwrap();
        assert!((tt.t() - (1.0 - 0.4 * 0.3)).abs() < 1e-12);
        assert!((tt.t() - 0.88).abs() < 1e-12);
        assert_eq!(t.get(&[F, F]).unwrap().as_array(), [0.0, 1.0, 0.0]);
        assert!((t.get(&[T, F]).unwrap().t() - 0.6).abs() < 1e-12);
        assert!((t.get(&[F, T]).unwrap().t() - 0.7).abs() < 1e-12);
        assert!(t.get(&[T, TF]).is_none());
        assert!(t.iter().all(|(_, m)| m.tf() == 0.0));
        assert_eq!(nor_cpt(&[1.2]), Err(GateError::InvalidProbability(1.2)));
    }

    #[test]
    fn imnor_examples() {
        let t = alarm(GateVariant::ImNor, 0.0, 0.1);
        assert!(close(t.get(&[T, TF]).unwrap(), [0.6, 0.02, 0.38], 1e-12));
        assert!(close(t.get(&[F, F]).unwrap(), [0.0, 1.0, 0.0], 1e-12));
        // Printed as 0.02 on {T,F} in the reference table; the row only
        // normalizes with 0.10.
        assert!(close(t.get(&[T, T]).unwrap(), [0.88, 0.02, 0.10], 1e-12));
    }

    #[test]
    fn flip_examples() {
        let m = flip_distribution(GateVariant::Ocbnor(0.6), iv(0.6, 0.8), TF, 0.0).unwrap();
        assert!(close(&m, [0.36, 0.52, 0.12], 1e-12));
        let m = flip_distribution(GateVariant::LcBnor, iv(0.3, 0.9), TF, 0.4).unwrap();
        assert_eq!(m, MassFunction::VACUOUS);
        for v in [
            GateVariant::LcBnor,
            GateVariant::Pbnor,
            GateVariant::Obnor,
            GateVariant::Ocbnor(0.3),
        ] {
            assert_eq!(
                flip_distribution(v, iv(0.2, 0.5), F, 0.1).unwrap(),
                MassFunction::CERTAIN_FALSE
            );
            assert!(close(
                &flip_distribution(v, iv(0.2, 0.5), T, 0.1).unwrap(),
                [0.2, 0.5, 0.3],
                1e-12
            ));
        }
    }

    #[test]
    fn negative_beta_is_rejected() {
        // OBNOR: beta = 1 - p_U - eta < 0 when eta > 1 - p_U.
        let err = flip_distribution(GateVariant::Obnor, iv(0.7, 0.9), TF, 0.3).unwrap_err();
        assert!(matches!(err, GateError::InvalidGateParameters { .. }));
        // The boundary case beta = 0 is allowed.
        let m = flip_distribution(GateVariant::Obnor, iv(0.7, 0.9), TF, 0.1).unwrap();
        assert!(close(&m, [0.7, 0.0, 0.3], 1e-12));
        let spec = GateSpec::new(GateVariant::Obnor, vec![iv(0.6, 0.8), iv(0.7, 0.9)], vec![0.0, 0.5]).unwrap();
        assert!(matches!(
            spec.table(),
            Err(GateError::InvalidGateParameters { parent: 1, .. })
        ));
    }

    #[test]
    fn spec_validation() {
        assert!(matches!(
            GateSpec::new(GateVariant::Ocbnor(1.2), vec![iv(0.1, 0.2)], vec![0.0]),
            Err(GateError::InvalidOptimism(_))
        ));
        assert!(matches!(
            GateSpec::new(GateVariant::LcBnor, vec![iv(0.1, 0.2)], vec![]),
            Err(GateError::LengthMismatch { .. })
        ));
        assert!(matches!(
            GateSpec::new(GateVariant::LcBnor, vec![], vec![]),
            Err(GateError::NoParents)
        ));
        let nor = GateSpec::with_precise_parents(GateVariant::Nor, vec![iv(0.1, 0.2)]).unwrap();
        assert!(matches!(nor.table(), Err(GateError::ImpreciseLink { .. })));
    }

    #[test]
    fn bnor_examples() {
        let lc = alarm(GateVariant::LcBnor, 0.0, 0.1);
        assert!(close(lc.get(&[T, TF]).unwrap(), [0.6, 0.0, 0.4], 1e-12));
        let tb = alarm(GateVariant::Tbnor, 0.0, 0.1);
        assert!(close(tb.get(&[T, TF]).unwrap(), [0.74, 0.09, 0.17], 1e-12));
        let oc = alarm(GateVariant::Ocbnor(0.6), 0.0, 0.1);
        // Brute-force expansion: B' = (0.36, 0.52, 0.12), E' = (0.7, 0.1, 0.2).
        assert!(close(oc.get(&[TF, T]).unwrap(), [0.808, 0.052, 0.14], 1e-12));
        assert_eq!(oc.len(), 9);
        assert_eq!(oc.defined_rows(), 9);
    }

    #[test]
    fn logic_tables() {
        let and = logic_table(LogicOp::And, 2);
        assert_eq!(*and.get(&[T, T]).unwrap(), MassFunction::CERTAIN_TRUE);
        assert_eq!(*and.get(&[T, TF]).unwrap(), MassFunction::VACUOUS);
        assert_eq!(*and.get(&[F, TF]).unwrap(), MassFunction::CERTAIN_FALSE);
        let or = logic_table(LogicOp::Or, 3);
        assert_eq!(*or.get(&[F, F, F]).unwrap(), MassFunction::CERTAIN_FALSE);
        assert_eq!(*or.get(&[F, TF, F]).unwrap(), MassFunction::VACUOUS);
        assert_eq!(*or.get(&[F, TF, T]).unwrap(), MassFunction::CERTAIN_TRUE);
    }

    #[test]
    fn render_has_sum_column() {
        let text = alarm(GateVariant::LcBnor, 0.0, 0.1).render(4);
        let first = text.lines().nth(1).unwrap();
        assert!(first.starts_with("{T},{T}"));
        assert!(first.contains("0.8800"));
        assert!(first.trim_end().ends_with("1.0000"));
        assert_eq!(text.lines().count(), 10);
    }

    fn interval() -> impl Strategy<Value = ProbabilityInterval> {
        (0.0..=1.0f64, 0.0..=1.0f64).prop_map(|(a, b)| iv(a.min(b), a.max(b)))
    }

    fn spec_parts() -> impl Strategy<Value = (Vec<ProbabilityInterval>, Vec<f64>)> {
        (1usize..=4).prop_flat_map(|n| {
            (
                prop::collection::vec(interval(), n),
                prop::collection::vec(0.0..=0.3f64, n),
            )
        })
    }

    fn gate_variant() -> impl Strategy<Value = GateVariant> {
        prop_oneof![
            Just(GateVariant::LcBnor),
            Just(GateVariant::Pbnor),
            Just(GateVariant::Obnor),
            Just(GateVariant::Tbnor),
            (0.0..=1.0f64).prop_map(GateVariant::Ocbnor),
        ]
    }

    proptest! {
        #[test]
        fn rows_normalize_and_match_closed_form(
            (links, etas) in spec_parts(),
            variant in gate_variant(),
        ) {
            let spec = GateSpec::new(variant, links.clone(), etas.clone()).unwrap();
            match bnor_table(&spec) {
                Ok(table) => {
                    prop_assert_eq!(table.defined_rows(), 3usize.pow(links.len() as u32));
                    for (states, m) in table.iter() {
                        prop_assert!(m.validate().is_ok());
                        let flips: Vec<_> = states.iter().enumerate()
                            .map(|(i, &s)| flip_distribution(variant, links[i], s, etas[i]).unwrap())
                            .collect();
                        let expected = closed_form(&flips);
                        prop_assert!(close(m, expected, 1e-12), "{:?} {:?} {:?}", states, m, expected);
                    }
                }
                Err(GateError::InvalidGateParameters { parent, lambda, eta, upper, .. }) => {
                    prop_assert!(lambda * (1.0 - upper) + 1.0 - lambda - etas[parent] < 0.0);
                    prop_assert_eq!(eta, etas[parent]);
                }
                Err(e) => prop_assert!(false, "unexpected {e}"),
            }
        }

        #[test]
        fn imnor_rows_normalize((links, etas) in spec_parts()) {
            let table = imnor_table(&GateSpec::new(GateVariant::ImNor, links, etas).unwrap()).unwrap();
            for (_, m) in table.iter() {
                prop_assert!(m.validate().is_ok());
            }
        }

        #[test]
        fn degenerate_collapse_to_nor(
            probs in prop::collection::vec(0.0..=1.0f64, 1..=4),
            variant in gate_variant(),
        ) {
            let links: Vec<_> = probs.iter().map(|&p| iv(p, p)).collect();
            let nor = nor_cpt(&probs).unwrap();
            for v in [variant, GateVariant::ImNor] {
                let table = GateSpec::with_precise_parents(v, links.clone()).unwrap().table().unwrap();
                for (states, expected) in nor.iter() {
                    let got = table.get(&states).unwrap();
                    prop_assert_eq!(got.tf(), 0.0);
                    prop_assert!(close(got, expected.as_array(), 1e-12));
                }
            }
        }

        #[test]
        fn ocbnor_monotone_in_lambda((links, etas) in spec_parts()) {
            // Keep beta >= 0 for all lambda: eta <= 1 - p_U covers lambda = 1.
            let etas: Vec<f64> = etas.iter().zip(&links).map(|(e, l)| e.min(1.0 - l.upper())).collect();
            let tables: Vec<_> = (0..=10)
                .map(|k| GateSpec::new(GateVariant::Ocbnor(k as f64 / 10.0), links.clone(), etas.clone())
                    .unwrap().table().unwrap())
                .collect();
            for pair in tables.windows(2) {
                for ((_, a), (_, b)) in pair[0].iter().zip(pair[1].iter()) {
                    prop_assert!(b.t() >= a.t() - 1e-12);
                    prop_assert!(b.f() <= a.f() + 1e-12);
                }
            }
        }

        #[test]
        fn lc_dominates_ignorance((links, etas) in spec_parts(), variant in gate_variant()) {
            let lc = GateSpec::new(GateVariant::LcBnor, links.clone(), etas.clone()).unwrap().table().unwrap();
            if let Ok(other) = GateSpec::new(variant, links, etas).unwrap().table() {
                for ((_, a), (_, b)) in lc.iter().zip(other.iter()) {
                    prop_assert!(a.tf() >= b.tf() - 1e-12);
                }
            }
        }

        #[test]
        fn named_variants_equal_ocbnor((links, etas) in spec_parts()) {
            for (named, lambda) in [(GateVariant::Obnor, 1.0), (GateVariant::Pbnor, 0.0), (GateVariant::Tbnor, 0.5)] {
                let a = GateSpec::new(named, links.clone(), etas.clone()).unwrap().table();
                let b = GateSpec::new(GateVariant::Ocbnor(lambda), links.clone(), etas.clone()).unwrap().table();
                prop_assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn imnor_insensitive_to_known_false_parent() {
        let t = alarm(GateVariant::ImNor, 0.0, 0.1);
        for b in [T, F, TF] {
            assert_eq!(t.get(&[b, TF]).unwrap().t(), t.get(&[b, F]).unwrap().t());
        }
        assert_eq!(t.get(&[T, T]).unwrap().f(), t.get(&[T, TF]).unwrap().f());
    }

    #[test]
    fn bnor_learning_a_cause_lowers_doubt() {
        for lambda in [0.0, 0.3, 0.6, 0.85] {
            let t = alarm(GateVariant::Ocbnor(lambda), 0.0, 0.1);
            assert!(t.get(&[T, T]).unwrap().f() < t.get(&[T, TF]).unwrap().f());
        }
    }
}
