//! Belief functions on the binary frame `{T, F}`.
//!
//! A [`MassFunction`] allocates unit belief over the three non-empty subsets
//! `{T}`, `{F}` and `{T, F}`. The closed-world assumption holds throughout:
//! the empty set never carries mass, and there is no way to construct a mass
//! function that gives it any.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tolerance on `m_T + m_F + m_TF = 1`.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// Negative components down to this magnitude are treated as rounding noise
/// and snapped to zero.
const NEGATIVE_NOISE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BeliefError {
    #[error("mass on {component} is negative ({value})")]
    NegativeMass { component: Subset, value: f64 },
    #[error("masses sum to {sum}, expected 1")]
    UnnormalizedMass { sum: f64 },
    #[error("belief values {bel_t} on {{T}} and {bel_f} on {{F}} sum above 1")]
    InconsistentBelief { bel_t: f64, bel_f: f64 },
    #[error("invalid probability interval [{lower}, {upper}]")]
    InvalidInterval { lower: f64, upper: f64 },
}

/// An element of the power set of `{T, F}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Subset {
    Empty,
    T,
    F,
    TF,
}

impl Subset {
    /// The focal candidates in their natural order `{T}, {F}, {T,F}`.
    pub const FOCAL: [Subset; 3] = [Subset::T, Subset::F, Subset::TF];

    pub fn cardinality(self) -> usize {
        match self {
            Subset::Empty => 0,
            Subset::T | Subset::F => 1,
            Subset::TF => 2,
        }
    }

    pub fn complement(self) -> Subset {
        match self {
            Subset::Empty => Subset::TF,
            Subset::T => Subset::F,
            Subset::F => Subset::T,
            Subset::TF => Subset::Empty,
        }
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.bits() & !other.bits() == 0
    }

    pub fn intersects(self, other: Subset) -> bool {
        self.bits() & other.bits() != 0
    }

    fn bits(self) -> u8 {
        match self {
            Subset::Empty => 0b00,
            Subset::T => 0b01,
            Subset::F => 0b10,
            Subset::TF => 0b11,
        }
    }

    fn from_bits(bits: u8) -> Subset {
        match bits & 0b11 {
            0b00 => Subset::Empty,
            0b01 => Subset::T,
            0b10 => Subset::F,
            _ => Subset::TF,
        }
    }

    /// Position in [`Subset::FOCAL`]; `None` for the empty set.
    pub fn focal_index(self) -> Option<usize> {
        match self {
            Subset::Empty => None,
            Subset::T => Some(0),
            Subset::F => Some(1),
            Subset::TF => Some(2),
        }
    }

    /// Elementwise extension of Boolean OR: `a ∨ b = {x ∨ y : x ∈ a, y ∈ b}`.
    pub fn or(self, other: Subset) -> Subset {
        self.lift(other, |x, y| x || y)
    }

    /// Elementwise extension of Boolean AND.
    pub fn and(self, other: Subset) -> Subset {
        self.lift(other, |x, y| x && y)
    }

    fn lift(self, other: Subset, op: impl Fn(bool, bool) -> bool) -> Subset {
        let mut bits = 0u8;
        for x in self.members() {
            for y in other.members() {
                bits |= if op(x, y) { 0b01 } else { 0b10 };
            }
        }
        Subset::from_bits(bits)
    }

    fn members(self) -> impl Iterator<Item = bool> {
        let bits = self.bits();
        [(0b01, true), (0b10, false)]
            .into_iter()
            .filter(move |(b, _)| bits & b != 0)
            .map(|(_, v)| v)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Subset::Empty => "{}",
            Subset::T => "{T}",
            Subset::F => "{F}",
            Subset::TF => "{T,F}",
        };
        f.write_str(s)
    }
}

/// Bounds `[lower, upper]` on a probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "(f64, f64)", into = "(f64, f64)")]
pub struct ProbabilityInterval {
    lower: f64,
    upper: f64,
}

impl ProbabilityInterval {
    pub fn new(lower: f64, upper: f64) -> Result<Self, BeliefError> {
        if !(0.0..=1.0).contains(&lower) || !(0.0..=1.0).contains(&upper) || lower > upper {
            return Err(BeliefError::InvalidInterval { lower, upper });
        }
        Ok(Self { lower, upper })
    }

    /// Degenerate interval `[p, p]`.
    pub fn point(p: f64) -> Result<Self, BeliefError> {
        Self::new(p, p)
    }

    /// Symmetric interval `[mid - half_width, mid + half_width]`.
    pub fn around(mid: f64, half_width: f64) -> Result<Self, BeliefError> {
        Self::new(mid - half_width, mid + half_width)
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn is_degenerate(&self) -> bool {
        self.lower == self.upper
    }
}

impl TryFrom<(f64, f64)> for ProbabilityInterval {
    type Error = BeliefError;

    fn try_from((lower, upper): (f64, f64)) -> Result<Self, Self::Error> {
        Self::new(lower, upper)
    }
}

impl From<ProbabilityInterval> for (f64, f64) {
    fn from(p: ProbabilityInterval) -> Self {
        (p.lower, p.upper)
    }
}

impl fmt::Display for ProbabilityInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lower, self.upper)
    }
}

/// A basic belief assignment on `{T, F}` with `m(∅) = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct MassFunction {
    t: f64,
    f: f64,
    tf: f64,
}

impl MassFunction {
    /// Total ignorance: all mass on `{T, F}`.
    pub const VACUOUS: MassFunction = MassFunction {
        t: 0.0,
        f: 0.0,
        tf: 1.0,
    };
    pub const CERTAIN_TRUE: MassFunction = MassFunction {
        t: 1.0,
        f: 0.0,
        tf: 0.0,
    };
    pub const CERTAIN_FALSE: MassFunction = MassFunction {
        t: 0.0,
        f: 1.0,
        tf: 0.0,
    };

    pub fn new(t: f64, f: f64, tf: f64) -> Result<Self, BeliefError> {
        validate(t, f, tf)?;
        let snap = |x: f64| if x < 0.0 { 0.0 } else { x };
        Ok(Self {
            t: snap(t),
            f: snap(f),
            tf: snap(tf),
        })
    }

    /// Bayesian mass `(p, 1 - p, 0)`.
    pub fn bayesian(p: f64) -> Result<Self, BeliefError> {
        Self::new(p, 1.0 - p, 0.0)
    }

    /// All mass on a single focal set. `Empty` maps to the vacuous mass, since
    /// the closed world forbids mass on it.
    pub fn categorical(a: Subset) -> Self {
        match a {
            Subset::T => Self::CERTAIN_TRUE,
            Subset::F => Self::CERTAIN_FALSE,
            Subset::TF | Subset::Empty => Self::VACUOUS,
        }
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn f(&self) -> f64 {
        self.f
    }

    pub fn tf(&self) -> f64 {
        self.tf
    }

    pub fn mass(&self, a: Subset) -> f64 {
        match a {
            Subset::Empty => 0.0,
            Subset::T => self.t,
            Subset::F => self.f,
            Subset::TF => self.tf,
        }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.t, self.f, self.tf]
    }

    /// Re-checks the construction invariants.
    pub fn validate(&self) -> Result<(), BeliefError> {
        validate(self.t, self.f, self.tf)
    }

    /// Credibility: total mass of the non-empty subsets of `a`.
    pub fn bel(&self, a: Subset) -> f64 {
        Subset::FOCAL
            .iter()
            .filter(|b| b.is_subset_of(a))
            .map(|&b| self.mass(b))
            .sum()
    }

    /// Plausibility: total mass of the subsets intersecting `a`.
    pub fn pl(&self, a: Subset) -> f64 {
        Subset::FOCAL
            .iter()
            .filter(|b| b.intersects(a))
            .map(|&b| self.mass(b))
            .sum()
    }

    /// Pignistic probabilities `(BetP(T), BetP(F))`.
    pub fn betp(&self) -> (f64, f64) {
        let half = 0.5 * self.tf;
        (self.t + half, self.f + half)
    }

    /// Whether the mass function is a probability (no mass on `{T, F}`).
    pub fn is_bayesian(&self) -> bool {
        self.tf == 0.0
    }
}

impl TryFrom<[f64; 3]> for MassFunction {
    type Error = BeliefError;

    fn try_from([t, f, tf]: [f64; 3]) -> Result<Self, Self::Error> {
        Self::new(t, f, tf)
    }
}

impl From<MassFunction> for [f64; 3] {
    fn from(m: MassFunction) -> Self {
        m.as_array()
    }
}

/// The bba whose `[Bel(T), Pl(T)]` equals the interval.
impl From<ProbabilityInterval> for MassFunction {
    fn from(p: ProbabilityInterval) -> Self {
        mass_from_interval(p)
    }
}

impl fmt::Display for MassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = f.precision().unwrap_or(4);
        write!(f, "({:.p$}, {:.p$}, {:.p$})", self.t, self.f, self.tf, p = p)
    }
}

/// Checks nonnegativity and normalization of a candidate triple.
pub fn validate(t: f64, f: f64, tf: f64) -> Result<(), BeliefError> {
    for (component, value) in [(Subset::T, t), (Subset::F, f), (Subset::TF, tf)] {
        if value.is_nan() || value < -NEGATIVE_NOISE {
            return Err(BeliefError::NegativeMass { component, value });
        }
    }
    let sum = t + f + tf;
    if (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(BeliefError::UnnormalizedMass { sum });
    }
    Ok(())
}

/// Möbius inversion of the credibility function on the binary frame.
pub fn mass_from_bel(bel_t: f64, bel_f: f64) -> Result<MassFunction, BeliefError> {
    if bel_t < -NEGATIVE_NOISE || bel_f < -NEGATIVE_NOISE || bel_t + bel_f > 1.0 + NORMALIZATION_TOLERANCE {
        return Err(BeliefError::InconsistentBelief { bel_t, bel_f });
    }
    // m(TF) = Bel(TF) - Bel(T) - Bel(F) + Bel(∅), with Bel(TF) = 1.
    MassFunction::new(bel_t, bel_f, 1.0 - bel_t - bel_f)
}

pub fn mass_from_interval(p: ProbabilityInterval) -> MassFunction {
    MassFunction {
        t: p.lower,
        f: 1.0 - p.upper,
        tf: p.upper - p.lower,
    }
}

/// Credal and pignistic summary of a mass function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BeliefReport {
    pub bel_t: f64,
    pub pl_t: f64,
    pub bel_f: f64,
    pub pl_f: f64,
    pub betp_t: f64,
    pub betp_f: f64,
}

impl BeliefReport {
    pub fn from_mass(m: &MassFunction) -> Self {
        let (betp_t, betp_f) = m.betp();
        Self {
            bel_t: m.bel(Subset::T),
            pl_t: m.pl(Subset::T),
            bel_f: m.bel(Subset::F),
            pl_f: m.pl(Subset::F),
            betp_t,
            betp_f,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    const PUBLISHED_TOL: f64 = 5e-4;

    fn m(t: f64, f: f64, tf: f64) -> MassFunction {
        MassFunction::new(t, f, tf).unwrap()
    }

    #[test]
    fn subset_cardinality_and_complement() {
        assert_eq!(Subset::Empty.cardinality(), 0);
        assert_eq!(Subset::T.cardinality(), 1);
        assert_eq!(Subset::F.cardinality(), 1);
        assert_eq!(Subset::TF.cardinality(), 2);
        for a in [Subset::Empty, Subset::T, Subset::F, Subset::TF] {
            assert_eq!(a.complement().complement(), a);
        }
    }

    #[test]
    fn validate_examples() {
        assert!(validate(1.0, 0.0, 0.0).is_ok());
        assert!(validate(0.4, 0.6, 0.0).is_ok());
        assert_eq!(
            validate(0.5, 0.6, -0.1),
            Err(BeliefError::NegativeMass {
                component: Subset::TF,
                value: -0.1
            })
        );
        assert!(matches!(
            validate(0.5, 0.6, 0.1),
            Err(BeliefError::UnnormalizedMass { .. })
        ));
        assert!(validate(0.5, 0.5 + 5e-10, 0.0).is_ok());
    }

    #[test]
    fn bel_examples() {
        assert_eq!(m(0.6, 0.2, 0.2).bel(Subset::T), 0.6);
        assert_abs_diff_eq!(m(0.9082, 0.0741, 0.0177).bel(Subset::T), 0.9082, epsilon = PUBLISHED_TOL);
        assert_abs_diff_eq!(m(0.3, 0.3, 0.4).bel(Subset::TF), 1.0, epsilon = 1e-12);
        assert_eq!(m(0.3, 0.3, 0.4).bel(Subset::Empty), 0.0);
    }

    #[test]
    fn pl_examples() {
        assert_abs_diff_eq!(m(0.9082, 0.0741, 0.0177).pl(Subset::T), 0.9259, epsilon = PUBLISHED_TOL);
        let p = 0.37;
        assert_abs_diff_eq!(MassFunction::bayesian(p).unwrap().pl(Subset::T), p, epsilon = 1e-12);
        assert_eq!(MassFunction::VACUOUS.pl(Subset::T), 1.0);
    }

    #[test]
    fn mobius_examples() {
        let got = mass_from_bel(0.6, 0.2).unwrap();
        assert_abs_diff_eq!(got.bel(Subset::T), 0.6, epsilon = 1e-12);
        assert_abs_diff_eq!(got.bel(Subset::F), 0.2, epsilon = 1e-12);
        assert_abs_diff_eq!(got.tf(), 0.2, epsilon = 1e-12);
        assert_eq!(mass_from_bel(0.0, 0.0).unwrap(), MassFunction::VACUOUS);
        assert!(matches!(
            mass_from_bel(0.7, 0.4),
            Err(BeliefError::InconsistentBelief { .. })
        ));
    }

    #[test]
    fn interval_examples() {
        let a = mass_from_interval(ProbabilityInterval::new(0.6, 0.8).unwrap());
        assert_abs_diff_eq!(a.t(), 0.6, epsilon = 1e-12);
        assert_abs_diff_eq!(a.f(), 0.2, epsilon = 1e-12);
        assert_abs_diff_eq!(a.tf(), 0.2, epsilon = 1e-12);
        let b = mass_from_interval(ProbabilityInterval::new(0.7, 0.9).unwrap());
        assert_abs_diff_eq!(b.t(), 0.7, epsilon = 1e-12);
        assert_abs_diff_eq!(b.f(), 0.1, epsilon = 1e-12);
        assert_abs_diff_eq!(b.tf(), 0.2, epsilon = 1e-12);
        let c = mass_from_interval(ProbabilityInterval::point(0.42).unwrap());
        assert_eq!(c.tf(), 0.0);
        assert_abs_diff_eq!(c.t(), 0.42, epsilon = 1e-12);
        assert!(ProbabilityInterval::new(0.8, 0.6).is_err());
        assert!(ProbabilityInterval::new(-0.1, 0.6).is_err());
    }

    #[test]
    fn betp_examples() {
        let (t, f) = m(0.9082, 0.0741, 0.0177).betp();
        assert_abs_diff_eq!(t, 0.9171, epsilon = PUBLISHED_TOL);
        assert_abs_diff_eq!(f, 0.0829, epsilon = PUBLISHED_TOL);
        assert_eq!(MassFunction::VACUOUS.betp(), (0.5, 0.5));
        let (t, f) = m(0.9007, 0.0702, 0.0291).betp();
        assert_abs_diff_eq!(t, 0.9152, epsilon = PUBLISHED_TOL);
        assert_abs_diff_eq!(f, 0.0848, epsilon = PUBLISHED_TOL);
    }

    #[test]
    fn set_or_and_tables() {
        use Subset::*;
        assert_eq!(T.or(TF), T);
        assert_eq!(F.or(F), F);
        assert_eq!(F.or(TF), TF);
        assert_eq!(TF.or(TF), TF);
        assert_eq!(T.and(TF), TF);
        assert_eq!(F.and(TF), F);
        assert_eq!(T.and(T), T);
    }

    #[test]
    fn rejects_invalid_arrays() {
        assert!(MassFunction::try_from([0.5, 0.6, -0.1]).is_err());
        assert!(MassFunction::try_from([0.5, 0.6, 0.1]).is_err());
    }

    fn mass_strategy() -> impl Strategy<Value = MassFunction> {
        (0.0..=1.0f64, 0.0..=1.0f64).prop_map(|(a, b)| {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            m(lo, 1.0 - hi, hi - lo)
        })
    }

    proptest! {
        #[test]
        fn bounding_property(m in mass_strategy()) {
            let (bt, bf) = m.betp();
            prop_assert!(m.bel(Subset::T) <= bt + 1e-12 && bt <= m.pl(Subset::T) + 1e-12);
            prop_assert!(m.bel(Subset::F) <= bf + 1e-12 && bf <= m.pl(Subset::F) + 1e-12);
            prop_assert!((bt + bf - 1.0).abs() <= 1e-12);
        }

        #[test]
        fn duality(m in mass_strategy()) {
            for a in [Subset::T, Subset::F] {
                prop_assert!((m.pl(a) - (1.0 - m.bel(a.complement()))).abs() <= 1e-12);
            }
        }

        #[test]
        fn mobius_round_trip(m in mass_strategy()) {
            let back = mass_from_bel(m.bel(Subset::T), m.bel(Subset::F)).unwrap();
            for a in Subset::FOCAL {
                prop_assert!((back.mass(a) - m.mass(a)).abs() <= 1e-12);
            }
        }

        #[test]
        fn degenerate_interval_is_bayesian(p in 0.0..=1.0f64) {
            let m = mass_from_interval(ProbabilityInterval::point(p).unwrap());
            prop_assert_eq!(m.tf(), 0.0);
            prop_assert!((m.betp().0 - p).abs() <= 1e-12);
        }

        #[test]
        fn interval_matches_bel_pl(a in 0.0..=1.0f64, b in 0.0..=1.0f64) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let m = mass_from_interval(ProbabilityInterval::new(lo, hi).unwrap());
            prop_assert!((m.bel(Subset::T) - lo).abs() <= 1e-12);
            prop_assert!((m.pl(Subset::T) - hi).abs() <= 1e-12);
        }
    }
}
