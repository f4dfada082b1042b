//! Probability tables, inferred quasi-probabilities, correlators and
//! signalling quantities for one choice of evolution parameters.
//!
//! Conventions: the first measurement is absorbed into state preparation, the
//! final measurement is always projective, and the intermediate measurement is
//! either pass-one (unambiguous) or block-one (ambiguous). All tables are
//! indexed `[n3][second]` where the second index is the intermediate outcome.

use crate::error::{Error, Result};
use crate::qutrit::{
    block, born_probs, build_unitary, evolve, project, AmbiguousOutcome, EulerAngles, Outcome,
    QutritState,
};

/// The six evolution angles plus the prepared state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionConfig {
    pub angles1: EulerAngles,
    pub angles2: EulerAngles,
    pub initial_state: QutritState,
}

impl EvolutionConfig {
    /// Standard preparation: ψ₀ = |C⟩.
    pub fn new(angles1: EulerAngles, angles2: EulerAngles) -> Self {
        EvolutionConfig {
            angles1,
            angles2,
            initial_state: QutritState::basis(Outcome::C),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.angles1.is_finite() || !self.angles2.is_finite() {
            return Err(Error::invalid("evolution angles must be finite"));
        }
        if !self.initial_state.is_normalized(1e-12) {
            return Err(Error::invalid(format!(
                "initial state must be normalized, squared norm = {}",
                self.initial_state.norm_sqr()
            )));
        }
        Ok(())
    }
}

/// Assignment of ±1 to each outcome, used to build the correlator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DichotomicMap {
    values: [f64; 3],
}

impl DichotomicMap {
    pub fn new(q_a: i8, q_b: i8, q_c: i8) -> Result<Self> {
        for v in [q_a, q_b, q_c] {
            if v != 1 && v != -1 {
                return Err(Error::invalid(format!("dichotomic values must be ±1, got {v}")));
            }
        }
        Ok(DichotomicMap { values: [q_a as f64, q_b as f64, q_c as f64] })
    }

    pub fn q(&self, n: Outcome) -> f64 {
        self.values[n.index()]
    }
}

/// The standard convention q(A) = −q(B) = q(C) = 1.
impl Default for DichotomicMap {
    fn default() -> Self {
        DichotomicMap { values: [1.0, -1.0, 1.0] }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    /// P(n₃, n₂) from projective intermediate measurements.
    UnambiguousJoint,
    /// P(n₃, α) from block-one intermediate measurements.
    AmbiguousJoint,
    /// P'(n₃, n₂) inferred from the ambiguous table; may be negative.
    InferredQuasi,
}

/// 3×3 real table keyed by (n₃, n₂) or (n₃, α).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbabilityTable {
    pub kind: TableKind,
    entries: [[f64; 3]; 3],
}

impl ProbabilityTable {
    pub fn new(kind: TableKind, entries: [[f64; 3]; 3]) -> Self {
        ProbabilityTable { kind, entries }
    }

    pub fn get(&self, n3: Outcome, second: usize) -> f64 {
        self.entries[n3.index()][second]
    }

    pub fn entries(&self) -> &[[f64; 3]; 3] {
        &self.entries
    }

    pub fn row_sum(&self, n3: Outcome) -> f64 {
        self.entries[n3.index()].iter().sum()
    }

    pub fn column(&self, second: usize) -> [f64; 3] {
        [
            self.entries[0][second],
            self.entries[1][second],
            self.entries[2][second],
        ]
    }

    pub fn total(&self) -> f64 {
        self.entries.iter().flatten().sum()
    }
}

/// All derived scalars and tables for one evolution configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct LgiReport {
    /// P(n₃) from the run without intermediate measurement.
    pub marginals: [f64; 3],
    pub joint_u: ProbabilityTable,
    pub joint_a: ProbabilityTable,
    pub quasi: ProbabilityTable,
    pub q2_mean: f64,
    pub q3q2_mean: f64,
    pub q3_mean: f64,
    pub k: f64,
    pub delta: [f64; 3],
    pub delta_total: f64,
    pub q2_mean_a: f64,
    pub q3q2_mean_a: f64,
    pub k_amb: f64,
    pub delta_a: [f64; 3],
    pub delta_a_total: f64,
}

fn evolved_intermediate(cfg: &EvolutionConfig) -> Result<(QutritState, crate::qutrit::Unitary3)> {
    let u21 = build_unitary(&cfg.angles1)?;
    let u32 = build_unitary(&cfg.angles2)?;
    Ok((evolve(&cfg.initial_state, &u21), u32))
}

/// P(n₃) with no intermediate measurement: Born probabilities of U32·U21·ψ₀.
pub fn marginal_distribution(cfg: &EvolutionConfig) -> Result<[f64; 3]> {
    cfg.validate()?;
    let (mid, u32) = evolved_intermediate(cfg)?;
    Ok(born_probs(&evolve(&mid, &u32)))
}

/// P(n₃, n₂): project onto n₂ at t₂, evolve the branch, read off at t₃.
pub fn joint_unambiguous(cfg: &EvolutionConfig) -> Result<ProbabilityTable> {
    cfg.validate()?;
    let (mid, u32) = evolved_intermediate(cfg)?;
    let mut entries = [[0.0; 3]; 3];
    for n2 in Outcome::ALL {
        let (_, branch) = project(&mid, n2);
        let probs = born_probs(&evolve(&branch, &u32));
        for n3 in Outcome::ALL {
            entries[n3.index()][n2.index()] = probs[n3.index()];
        }
    }
    Ok(ProbabilityTable::new(TableKind::UnambiguousJoint, entries))
}

/// P(n₃, α): block the excluded mode at t₂, evolve the coherent remainder.
pub fn joint_ambiguous(cfg: &EvolutionConfig) -> Result<ProbabilityTable> {
    cfg.validate()?;
    let (mid, u32) = evolved_intermediate(cfg)?;
    let mut entries = [[0.0; 3]; 3];
    for alpha in AmbiguousOutcome::ALL {
        let (_, branch) = block(&mid, alpha.excluded);
        let probs = born_probs(&evolve(&branch, &u32));
        for n3 in Outcome::ALL {
            entries[n3.index()][alpha.excluded.index()] = probs[n3.index()];
        }
    }
    Ok(ProbabilityTable::new(TableKind::AmbiguousJoint, entries))
}

/// P'(n₃, n₂) = ½·[sum of the two α tables containing n₂] − ½·[the one excluding n₂].
pub fn infer_quasiprobabilities(table: &ProbabilityTable) -> Result<ProbabilityTable> {
    if table.kind != TableKind::AmbiguousJoint {
        return Err(Error::invalid("quasi-probability inference requires an ambiguous-joint table"));
    }
    let mut entries = [[0.0; 3]; 3];
    for n3 in Outcome::ALL {
        for n2 in Outcome::ALL {
            let mut value = 0.0;
            for alpha in AmbiguousOutcome::ALL {
                let sign = if alpha.contains(n2) { 0.5 } else { -0.5 };
                value += sign * table.get(n3, alpha.excluded.index());
            }
            entries[n3.index()][n2.index()] = value;
        }
    }
    Ok(ProbabilityTable::new(TableKind::InferredQuasi, entries))
}

/// (⟨Q₂⟩, ⟨Q₃Q₂⟩, ⟨Q₃⟩, K) for a joint or inferred table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Correlators {
    pub q2_mean: f64,
    pub q3q2_mean: f64,
    pub q3_mean: f64,
    pub k: f64,
}

pub fn correlators(
    table: &ProbabilityTable,
    marginals: &[f64; 3],
    qmap: &DichotomicMap,
) -> Result<Correlators> {
    if table.kind == TableKind::AmbiguousJoint {
        return Err(Error::invalid("correlators need per-outcome columns; α outcomes carry no q value"));
    }
    let mut q2_mean = 0.0;
    let mut q3q2_mean = 0.0;
    for n3 in Outcome::ALL {
        for n2 in Outcome::ALL {
            let p = table.get(n3, n2.index());
            q2_mean += qmap.q(n2) * p;
            q3q2_mean += qmap.q(n3) * qmap.q(n2) * p;
        }
    }
    let q3_mean: f64 = Outcome::ALL
        .iter()
        .map(|&n| qmap.q(n) * marginals[n.index()])
        .sum();
    Ok(Correlators {
        q2_mean,
        q3q2_mean,
        q3_mean,
        k: q2_mean + q3q2_mean - q3_mean,
    })
}

/// δ(n₃) = P(n₃) − Σ_{n₂} table(n₃, n₂), and Δ = Σ|δ(n₃)|.
pub fn signalling_deltas(
    marginals: &[f64; 3],
    table: &ProbabilityTable,
) -> Result<([f64; 3], f64)> {
    if table.kind == TableKind::AmbiguousJoint {
        return Err(Error::invalid("signalling deltas are defined for unambiguous or inferred tables"));
    }
    let mut delta = [0.0; 3];
    for n3 in Outcome::ALL {
        delta[n3.index()] = marginals[n3.index()] - table.row_sum(n3);
    }
    let total = delta.iter().map(|d| d.abs()).sum();
    Ok((delta, total))
}

/// Assemble a full report from already-measured tables. Used both for exact
/// theory tables and for empirical (sampled) ones.
pub fn report_from_tables(
    marginals: [f64; 3],
    joint_u: ProbabilityTable,
    joint_a: ProbabilityTable,
    qmap: &DichotomicMap,
) -> Result<LgiReport> {
    let quasi = infer_quasiprobabilities(&joint_a)?;
    let cu = correlators(&joint_u, &marginals, qmap)?;
    let ca = correlators(&quasi, &marginals, qmap)?;
    let (delta, delta_total) = signalling_deltas(&marginals, &joint_u)?;
    let (delta_a, delta_a_total) = signalling_deltas(&marginals, &quasi)?;
    Ok(LgiReport {
        marginals,
        joint_u,
        joint_a,
        quasi,
        q2_mean: cu.q2_mean,
        q3q2_mean: cu.q3q2_mean,
        q3_mean: cu.q3_mean,
        k: cu.k,
        delta,
        delta_total,
        q2_mean_a: ca.q2_mean,
        q3q2_mean_a: ca.q3q2_mean,
        k_amb: ca.k,
        delta_a,
        delta_a_total,
    })
}

/// Exact report for one configuration.
pub fn lgi_report(cfg: &EvolutionConfig, qmap: &DichotomicMap) -> Result<LgiReport> {
    let marginals = marginal_distribution(cfg)?;
    let joint_u = joint_unambiguous(cfg)?;
    let joint_a = joint_ambiguous(cfg)?;
    report_from_tables(marginals, joint_u, joint_a, qmap)
}
