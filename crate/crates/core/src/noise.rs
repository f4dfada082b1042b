//! Monte Carlo emulation of the experiment's imperfections: Gaussian
//! waveplate misalignment on every evolution angle plus multinomial photon
//! counting noise, run by run, exactly as the data were collected.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution, Normal};

use crate::error::{Error, Result};
use crate::qutrit::{block, born_probs, build_unitary, evolve, project, AmbiguousOutcome, EulerAngles, Outcome};
use crate::stats::{report_from_tables, DichotomicMap, EvolutionConfig, LgiReport, ProbabilityTable, TableKind};

/// Photon budget of one experimental run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Counts {
    Finite(u64),
    /// Shortcut for the infinite-statistics limit: probabilities are used
    /// exactly, no sampling.
    Infinite,
}

impl std::str::FromStr for Counts {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "inf" {
            return Ok(Counts::Infinite);
        }
        let n: u64 = s
            .parse()
            .map_err(|_| Error::invalid(format!("counts must be a positive integer or 'inf', got '{s}'")))?;
        if n == 0 {
            return Err(Error::invalid("counts must be >= 1"));
        }
        Ok(Counts::Finite(n))
    }
}

/// Noise model parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseConfig {
    /// Physical waveplate alignment error, degrees (one standard deviation).
    pub sigma_waveplate_deg: f64,
    /// Effective number of waveplates contributing to each evolution angle.
    pub waveplates_per_angle: u32,
    /// Photons collected per experimental run.
    pub counts_per_run: Counts,
    pub trials: u64,
    pub seed: u64,
}

impl Default for NoiseConfig {
    fn default() -> Self {
        NoiseConfig {
            sigma_waveplate_deg: 0.1,
            waveplates_per_angle: 2,
            counts_per_run: Counts::Finite(14_000),
            trials: 1000,
            seed: 0,
        }
    }
}

impl NoiseConfig {
    pub fn validate(&self) -> Result<()> {
        if self.sigma_waveplate_deg.is_nan() || self.sigma_waveplate_deg < 0.0 {
            return Err(Error::invalid("sigma must be >= 0"));
        }
        if self.trials < 1 {
            return Err(Error::invalid("trials must be >= 1"));
        }
        if self.counts_per_run == Counts::Finite(0) {
            return Err(Error::invalid("counts must be >= 1"));
        }
        Ok(())
    }

    /// Per-Euler-angle perturbation standard deviation in radians. The factor
    /// 2 is the half-wave-plate doubling of the physical angle; errors of the
    /// plates feeding one angle add in quadrature.
    pub fn angle_std_rad(&self) -> f64 {
        (2.0 * self.sigma_waveplate_deg * (self.waveplates_per_angle as f64).sqrt()).to_radians()
    }
}

/// Independent Gaussian perturbation of each of the six evolution angles.
pub fn perturb_angles<R: Rng>(
    cfg: &EvolutionConfig,
    noise: &NoiseConfig,
    rng: &mut R,
) -> EvolutionConfig {
    let std = noise.angle_std_rad();
    if std == 0.0 {
        return *cfg;
    }
    let normal = Normal::new(0.0, std).expect("std is finite and non-negative");
    let mut jitter = |a: &EulerAngles| {
        EulerAngles::new(
            a.theta + normal.sample(rng),
            a.chi + normal.sample(rng),
            a.phi + normal.sample(rng),
        )
    };
    EvolutionConfig {
        angles1: jitter(&cfg.angles1),
        angles2: jitter(&cfg.angles2),
        initial_state: cfg.initial_state,
    }
}

/// One multinomial sample over {A, B, C, lost} for a single run, returned as
/// empirical probabilities count/N. Lost absorbs the blocked/undetected share.
pub fn sample_run<R: Rng>(probs: &[f64; 3], counts: Counts, rng: &mut R) -> Result<[f64; 3]> {
    let detected: f64 = probs.iter().sum();
    if detected > 1.0 + 1e-12 {
        return Err(Error::invalid(format!("run probabilities sum to {detected} > 1")));
    }
    let n = match counts {
        Counts::Infinite => return Ok(*probs),
        Counts::Finite(n) => n,
    };
    // Conditional-binomial decomposition of the multinomial.
    let mut remaining = n;
    let mut prob_left = 1.0;
    let mut empirical = [0.0; 3];
    for (i, &p) in probs.iter().enumerate() {
        if remaining == 0 || prob_left <= 0.0 {
            break;
        }
        let cond = (p / prob_left).clamp(0.0, 1.0);
        let draw = Binomial::new(remaining, cond)
            .expect("conditional probability is in [0,1]")
            .sample(rng);
        empirical[i] = draw as f64 / n as f64;
        remaining -= draw;
        prob_left -= p;
    }
    Ok(empirical)
}

/// Mean and sample standard deviation of one metric over the trials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricStats {
    pub mean: f64,
    pub std: f64,
}

/// Per-metric Monte Carlo summary.
#[derive(Debug, Clone, PartialEq)]
pub struct McSummary {
    pub trials: u64,
    pub k: MetricStats,
    pub delta_total: MetricStats,
    pub k_amb: MetricStats,
    pub delta_a_total: MetricStats,
    pub delta: [MetricStats; 3],
    pub delta_a: [MetricStats; 3],
    /// Inferred quasi-probability entries, indexed [n3][n2].
    pub quasi: [[MetricStats; 3]; 3],
}

const N_METRICS: usize = 4 + 3 + 3 + 9;

fn metrics_of(report: &LgiReport) -> [f64; N_METRICS] {
    let mut m = [0.0; N_METRICS];
    m[0] = report.k;
    m[1] = report.delta_total;
    m[2] = report.k_amb;
    m[3] = report.delta_a_total;
    m[4..7].copy_from_slice(&report.delta);
    m[7..10].copy_from_slice(&report.delta_a);
    for n3 in 0..3 {
        m[10 + 3 * n3..13 + 3 * n3].copy_from_slice(&report.quasi.entries()[n3]);
    }
    m
}

/// One simulated experiment: perturbed angles, then an independent multinomial
/// sample per run (one marginal run, three pass-one runs, three block-one
/// runs), then the full report rebuilt from the empirical tables.
pub fn empirical_report<R: Rng>(
    cfg: &EvolutionConfig,
    qmap: &DichotomicMap,
    counts: Counts,
    rng: &mut R,
) -> Result<LgiReport> {
    let u21 = build_unitary(&cfg.angles1)?;
    let u32 = build_unitary(&cfg.angles2)?;
    let mid = evolve(&cfg.initial_state, &u21);

    let exact_marg = born_probs(&evolve(&mid, &u32));
    let marginals = sample_run(&exact_marg, counts, rng)?;

    let mut entries_u = [[0.0; 3]; 3];
    for n2 in Outcome::ALL {
        let (_, branch) = project(&mid, n2);
        let exact = born_probs(&evolve(&branch, &u32));
        let emp = sample_run(&exact, counts, rng)?;
        for n3 in Outcome::ALL {
            entries_u[n3.index()][n2.index()] = emp[n3.index()];
        }
    }
    let mut entries_a = [[0.0; 3]; 3];
    for alpha in AmbiguousOutcome::ALL {
        let (_, branch) = block(&mid, alpha.excluded);
        let exact = born_probs(&evolve(&branch, &u32));
        let emp = sample_run(&exact, counts, rng)?;
        for n3 in Outcome::ALL {
            entries_a[n3.index()][alpha.excluded.index()] = emp[n3.index()];
        }
    }

    report_from_tables(
        marginals,
        ProbabilityTable::new(TableKind::UnambiguousJoint, entries_u),
        ProbabilityTable::new(TableKind::AmbiguousJoint, entries_a),
        qmap,
    )
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Monte Carlo over `noise.trials` simulated experiments.
pub fn monte_carlo(
    cfg: &EvolutionConfig,
    qmap: &DichotomicMap,
    noise: &NoiseConfig,
) -> Result<McSummary> {
    cfg.validate()?;
    noise.validate()?;

    let mut samples: Vec<[f64; N_METRICS]> = Vec::with_capacity(noise.trials as usize);
    for trial in 0..noise.trials {
        let mut rng = trial_rng(noise.seed, trial);
        let perturbed = perturb_angles(cfg, noise, &mut rng);
        let report = empirical_report(&perturbed, qmap, noise.counts_per_run, &mut rng)?;
        samples.push(metrics_of(&report));
    }

    let n = samples.len() as f64;
    let mut stats = [MetricStats { mean: 0.0, std: 0.0 }; N_METRICS];
    for (i, s) in stats.iter_mut().enumerate() {
        let mean = samples.iter().map(|m| m[i]).sum::<f64>() / n;
        let var = if samples.len() > 1 {
            samples.iter().map(|m| (m[i] - mean).powi(2)).sum::<f64>() / (n - 1.0)
        } else {
            0.0
        };
        *s = MetricStats { mean, std: var.sqrt() };
    }

    Ok(McSummary {
        trials: noise.trials,
        k: stats[0],
        delta_total: stats[1],
        k_amb: stats[2],
        delta_a_total: stats[3],
        delta: [stats[4], stats[5], stats[6]],
        delta_a: [stats[7], stats[8], stats[9]],
        quasi: [
            [stats[10], stats[11], stats[12]],
            [stats[13], stats[14], stats[15]],
            [stats[16], stats[17], stats[18]],
        ],
    })
}
