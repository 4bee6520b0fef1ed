//! Experiment configuration, seeded parallel Monte Carlo runs (calibration,
//! power curves, oracle comparisons, exact identities), and CSV/plot output.
//!
//! Reproducibility contract: a (config, seed) pair produces bit-identical
//! CSV regardless of the parallelism degree. Replicate i always consumes RNG
//! stream (seed, i) and results are merged by replicate index. Wall-clock
//! columns are therefore opt-in (`timing = true`).

use crate::combinatorics::{
    alpha1, alpha2, catalan_psi, chebyshev_poly, chebyshev_psi_cancellations,
    d_product_is_identity, fk_coefficient, fk_row_sum_within_bound, fk_series_oracle,
};
use crate::cycle_oracle::{
    cycle_from_lss_even, cycle_from_lss_odd, signed_cycle_bruteforce, TCorrectionMode,
};
use crate::error::{Result, SignetError};
use crate::graph_models::{
    params_from_t, sample_er_rng, sample_sbm_rng, GraphSample,
};
use crate::rng;
use crate::spectral::{
    center_estimated, center_known, default_k, eigenvalues, Centering, Regime, Spectrum,
};
use crate::statistics::{
    adaptive_all_variance, adaptive_odd_mean_shift, adaptive_odd_variance, bar_mu_na, decide,
    mu_npt, optimal_power, optimal_power_odd, phi, phi_inv, sigma1_sq, sigma_sq,
    sigma_sq_truncated, stat_adaptive_all, stat_adaptive_odd, stat_la, stat_lc, stat_lo,
    ChebyshevReading, MuMode, PowerCurve, PowerHint, SignMode,
};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use std::time::Instant;

// --- test specification ------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum StatKind {
    LcOracle,
    LaOptimal,
    LoOptimal,
    AdaptiveOdd,
    AdaptiveAll,
}

impl StatKind {
    pub fn name(&self) -> &'static str {
        match self {
            StatKind::LcOracle => "lc",
            StatKind::LaOptimal => "la",
            StatKind::LoOptimal => "lo",
            StatKind::AdaptiveOdd => "adaptive-odd",
            StatKind::AdaptiveAll => "adaptive-all",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "lc" => Ok(StatKind::LcOracle),
            "la" => Ok(StatKind::LaOptimal),
            "lo" => Ok(StatKind::LoOptimal),
            "adaptive-odd" => Ok(StatKind::AdaptiveOdd),
            "adaptive-all" => Ok(StatKind::AdaptiveAll),
            other => Err(SignetError::Config(format!("unknown statistic kind: {other}"))),
        }
    }

    fn regime(&self) -> Regime {
        match self {
            StatKind::LoOptimal | StatKind::AdaptiveOdd => Regime::OddOnly,
            _ => Regime::All,
        }
    }

    /// Needs a hypothesized signal strength; the harness refuses to guess one.
    pub fn requires_t(&self) -> bool {
        matches!(self, StatKind::LcOracle | StatKind::LaOptimal | StatKind::LoOptimal)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum KChoice {
    Auto,
    Fixed(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum SignSpec {
    AutoFromParams,
    Assortative,
    Disassortative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum CenteringChoice {
    Estimated,
    Known,
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct TestSpec {
    pub kind: StatKind,
    pub alpha: f64,
    pub t_hypothesized: Option<f64>,
    pub epsilon: f64,
    pub k_n: KChoice,
    pub sign_mode: SignSpec,
    pub t_correction: TCorrectionMode,
    pub mu_mode: MuMode,
    pub reading: ChebyshevReading,
    pub centering: CenteringChoice,
}

impl Default for TestSpec {
    fn default() -> Self {
        TestSpec {
            kind: StatKind::AdaptiveOdd,
            alpha: 0.05,
            t_hypothesized: None,
            epsilon: 0.15,
            k_n: KChoice::Auto,
            sign_mode: SignSpec::AutoFromParams,
            t_correction: TCorrectionMode::PlugInExpectation,
            mu_mode: MuMode::ClosedForm,
            reading: ChebyshevReading::Coefficient,
            centering: CenteringChoice::Estimated,
        }
    }
}

impl TestSpec {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..1.0).contains(&self.alpha) || self.alpha == 0.0 {
            return Err(SignetError::Config(format!("alpha = {} outside (0, 1)", self.alpha)));
        }
        if !(0.0..=0.5).contains(&self.epsilon) || self.epsilon == 0.0 {
            return Err(SignetError::Config(format!(
                "epsilon = {} outside (0, 1/2]",
                self.epsilon
            )));
        }
        if let KChoice::Fixed(k) = self.k_n {
            if k < 3 {
                return Err(SignetError::Config(format!("k_n = {k} < 3")));
            }
        }
        if self.kind.requires_t() {
            match self.t_hypothesized {
                None => {
                    return Err(SignetError::Config(format!(
                        "{} requires a hypothesized t; the adaptive statistics handle unknown t",
                        self.kind.name()
                    )))
                }
                Some(t) if !(0.0..1.0).contains(&t) || t == 0.0 => {
                    return Err(SignetError::Config(format!("t = {t} outside (0, 1)")));
                }
                _ => {}
            }
        }
        Ok(())
    }
}

/// One standardized test result; serializes to a flat JSON object and one
/// CSV row.
#[derive(Debug, Clone, serde::Serialize)]
pub struct TestOutcome {
    pub kind: String,
    pub n: usize,
    pub p_hat: f64,
    pub t: Option<f64>,
    pub k_used: usize,
    pub statistic: f64,
    pub null_mean: f64,
    pub null_sd: f64,
    pub z: f64,
    pub p_value: f64,
    pub reject: bool,
    pub theoretical_power: Option<f64>,
    pub centering: String,
}

pub const TEST_OUTCOME_HEADER: &str =
    "kind,n,p_hat,t,k,statistic,null_mean,null_sd,z,p_value,reject,theoretical_power";

impl TestOutcome {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.kind,
            self.n,
            self.p_hat,
            self.t.map(|v| v.to_string()).unwrap_or_default(),
            self.k_used,
            self.statistic,
            self.null_mean,
            self.null_sd,
            self.z,
            self.p_value,
            self.reject,
            self.theoretical_power.map(|v| v.to_string()).unwrap_or_default(),
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("outcome serializes")
    }
}

fn resolve_sign(spec: &TestSpec, assortative_hint: Option<bool>) -> Result<SignMode> {
    match spec.sign_mode {
        SignSpec::Assortative => Ok(SignMode::Assortative),
        SignSpec::Disassortative => Ok(SignMode::Disassortative),
        SignSpec::AutoFromParams => match assortative_hint {
            Some(true) | None => Ok(SignMode::Assortative),
            Some(false) => Ok(SignMode::Disassortative),
        },
    }
}

/// Run one test on one graph. `known_p` supplies the model average connection
/// probability for known centering; `assortative_hint` resolves auto sign
/// mode when the model parameters are known.
pub fn run_single_test(
    graph: &GraphSample,
    spec: &TestSpec,
    known_p: Option<f64>,
    assortative_hint: Option<bool>,
) -> Result<TestOutcome> {
    spec.validate()?;
    let centered = match spec.centering {
        CenteringChoice::Estimated => center_estimated(graph)?,
        CenteringChoice::Known => {
            let p = known_p.ok_or_else(|| {
                SignetError::Config("known centering requires the model p_av".into())
            })?;
            center_known(graph, p)?
        }
    };
    let centering = centered.centering;
    let spectrum = if spec.kind == StatKind::LcOracle { None } else { Some(eigenvalues(&centered)?) };
    let sign = resolve_sign(spec, assortative_hint)?;
    evaluate_on_spectrum(graph, spectrum.as_ref(), centering, spec, sign)
}

/// Statistic evaluation against a precomputed spectrum (shared across the
/// statistics of one replicate in the Monte Carlo loops).
pub fn evaluate_on_spectrum(
    graph: &GraphSample,
    spectrum: Option<&Spectrum>,
    centering: Centering,
    spec: &TestSpec,
    sign: SignMode,
) -> Result<TestOutcome> {
    let n = graph.n();
    let p_ref = centering.p_ref();
    let k_used = match spec.k_n {
        KChoice::Fixed(k) => k,
        KChoice::Auto => default_k(n, p_ref, spec.kind.regime())?,
    };
    fn need(s: Option<&Spectrum>) -> Result<&Spectrum> {
        s.ok_or_else(|| SignetError::Config("spectrum required for spectral statistics".into()))
    }

    let (statistic, null_sd, theoretical_power) = match spec.kind {
        StatKind::LaOptimal => {
            let t = spec.t_hypothesized.expect("validated");
            let mu = mu_npt(n, p_ref, t, &spec.mu_mode)?;
            let stat = stat_la(need(spectrum)?, t, k_used, mu, sign)?;
            (stat, sigma_sq(t)?.sqrt(), Some(optimal_power(spec.alpha, t)?))
        }
        StatKind::LoOptimal => {
            let t = spec.t_hypothesized.expect("validated");
            let stat = stat_lo(need(spectrum)?, t, k_used, sign)?;
            (stat, sigma1_sq(t)?.sqrt(), Some(optimal_power_odd(spec.alpha, t)?))
        }
        StatKind::AdaptiveOdd => {
            let stat = stat_adaptive_odd(need(spectrum)?, spec.epsilon, k_used, sign)?;
            let sd = adaptive_odd_variance(k_used, spec.epsilon).sqrt();
            let power = match spec.t_hypothesized {
                Some(t) if t < 1.0 => {
                    let shift = adaptive_odd_mean_shift(t, spec.epsilon, k_used);
                    Some(phi(-phi_inv(1.0 - spec.alpha)? + shift / sd))
                }
                _ => None,
            };
            (stat, sd, power)
        }
        StatKind::AdaptiveAll => {
            let bar_mu =
                bar_mu_na(n, p_ref, spec.epsilon, k_used, &spec.t_correction, spec.reading)?;
            let stat = stat_adaptive_all(need(spectrum)?, spec.epsilon, k_used, bar_mu, sign)?;
            (stat, adaptive_all_variance(k_used, spec.epsilon).sqrt(), None)
        }
        StatKind::LcOracle => {
            let t = spec.t_hypothesized.expect("validated");
            let stat = stat_lc(graph, p_ref, t, k_used, sign)?;
            (stat, sigma_sq_truncated(t, k_used).sqrt(), Some(optimal_power(spec.alpha, t)?))
        }
    };

    let hint = match (spec.kind, spec.t_hypothesized) {
        (StatKind::LaOptimal | StatKind::LcOracle, Some(t)) => {
            Some(PowerHint { t, curve: PowerCurve::All })
        }
        (StatKind::LoOptimal, Some(t)) => Some(PowerHint { t, curve: PowerCurve::OddOnly }),
        _ => None,
    };
    let decision = decide(statistic, 0.0, null_sd, spec.alpha, hint)?;
    Ok(TestOutcome {
        kind: spec.kind.name().to_string(),
        n,
        p_hat: p_ref,
        t: spec.t_hypothesized,
        k_used,
        statistic: decision.statistic,
        null_mean: decision.null_mean,
        null_sd: decision.null_sd,
        z: decision.z,
        p_value: decision.p_value,
        reject: decision.reject,
        theoretical_power: theoretical_power.or(decision.theoretical_power),
        centering: centering.label().to_string(),
    })
}

// --- experiment configuration -------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum ExperimentKind {
    Calibrate,
    PowerCurve,
    OracleCompare,
    Identities,
    SingleTest,
}

impl ExperimentKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "calibrate" => Ok(ExperimentKind::Calibrate),
            "power" => Ok(ExperimentKind::PowerCurve),
            "oracle" => Ok(ExperimentKind::OracleCompare),
            "identities" => Ok(ExperimentKind::Identities),
            "single" => Ok(ExperimentKind::SingleTest),
            other => Err(SignetError::Config(format!("unknown experiment: {other}"))),
        }
    }
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub n: usize,
    pub p_av: f64,
    pub t_grid: Vec<f64>,
    pub kappa: usize,
    pub reps: usize,
    pub seed: u64,
    pub threads: usize,
    pub statistics: Vec<StatKind>,
    pub test: TestSpec,
    pub oracle_ks: Vec<usize>,
    pub output_path: Option<String>,
    pub plot: bool,
    pub timing: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            experiment: ExperimentKind::Calibrate,
            n: 500,
            p_av: 0.1,
            t_grid: vec![],
            kappa: 2,
            reps: 200,
            seed: 1,
            threads: 0,
            statistics: vec![StatKind::AdaptiveOdd],
            test: TestSpec::default(),
            oracle_ks: vec![3, 4, 5, 6],
            output_path: None,
            plot: false,
            timing: false,
        }
    }
}

impl ExperimentConfig {
    /// Parse the flat key = value config document; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = ExperimentConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                SignetError::Config(format!("line {}: expected key = value", lineno + 1))
            })?;
            cfg.set(key.trim(), value.trim())?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |e: String| SignetError::Config(e);
        let parse_f64 = |v: &str| {
            v.parse::<f64>().map_err(|e| SignetError::Config(format!("{key} = {v}: {e}")))
        };
        let parse_usize = |v: &str| {
            v.parse::<usize>().map_err(|e| SignetError::Config(format!("{key} = {v}: {e}")))
        };
        match key {
            "experiment" => self.experiment = ExperimentKind::parse(value)?,
            "n" => self.n = parse_usize(value)?,
            "p_av" => self.p_av = parse_f64(value)?,
            "t" => self.test.t_hypothesized = Some(parse_f64(value)?),
            "t_grid" => {
                self.t_grid = value
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| s.trim().parse::<f64>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|e| bad(format!("t_grid: {e}")))?;
            }
            "kappa" => self.kappa = parse_usize(value)?,
            "alpha" => self.test.alpha = parse_f64(value)?,
            "reps" => self.reps = parse_usize(value)?,
            "seed" => {
                self.seed =
                    value.parse::<u64>().map_err(|e| bad(format!("seed = {value}: {e}")))?
            }
            "threads" => self.threads = parse_usize(value)?,
            "statistic" | "statistics" => {
                self.statistics = value
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(StatKind::parse)
                    .collect::<Result<_>>()?;
                if let Some(first) = self.statistics.first() {
                    self.test.kind = *first;
                }
            }
            "epsilon" => self.test.epsilon = parse_f64(value)?,
            "k_n" => {
                self.test.k_n = if value == "auto" {
                    KChoice::Auto
                } else {
                    KChoice::Fixed(parse_usize(value)?)
                }
            }
            "sign" => {
                self.test.sign_mode = match value {
                    "auto" => SignSpec::AutoFromParams,
                    "assortative" => SignSpec::Assortative,
                    "disassortative" => SignSpec::Disassortative,
                    other => return Err(bad(format!("sign = {other}"))),
                }
            }
            "centering" => {
                self.test.centering = match value {
                    "estimated" => CenteringChoice::Estimated,
                    "known" => CenteringChoice::Known,
                    other => return Err(bad(format!("centering = {other}"))),
                }
            }
            "t_correction" => {
                self.test.t_correction = match value.split(':').collect::<Vec<_>>().as_slice() {
                    ["exact-small"] => TCorrectionMode::ExactSmall,
                    ["plug-in"] => TCorrectionMode::PlugInExpectation,
                    ["monte-carlo", reps, seed] => TCorrectionMode::MonteCarlo {
                        reps: reps.parse().map_err(|e| bad(format!("t_correction reps: {e}")))?,
                        seed: seed.parse().map_err(|e| bad(format!("t_correction seed: {e}")))?,
                    },
                    _ => return Err(bad(format!("t_correction = {value}"))),
                }
            }
            "mu_mode" => {
                self.test.mu_mode = match value.split(':').collect::<Vec<_>>().as_slice() {
                    ["closed-form"] => MuMode::ClosedForm,
                    ["monte-carlo", reps, seed] => MuMode::WithAlpha3Mc {
                        reps: reps.parse().map_err(|e| bad(format!("mu_mode reps: {e}")))?,
                        seed: seed.parse().map_err(|e| bad(format!("mu_mode seed: {e}")))?,
                    },
                    _ => return Err(bad(format!("mu_mode = {value}"))),
                }
            }
            "reading" => {
                self.test.reading = match value {
                    "coefficient" => ChebyshevReading::Coefficient,
                    "evaluated" => ChebyshevReading::Evaluated,
                    other => return Err(bad(format!("reading = {other}"))),
                }
            }
            "oracle_ks" => {
                self.oracle_ks = value
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| s.trim().parse::<usize>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|e| bad(format!("oracle_ks: {e}")))?;
            }
            "output_path" | "out" => self.output_path = Some(value.to_string()),
            "plot" => self.plot = value == "true" || value == "1",
            "timing" => self.timing = value == "true" || value == "1",
            other => return Err(bad(format!("unknown config key: {other}"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.reps < 1 {
            return Err(SignetError::Config("reps must be >= 1".into()));
        }
        if self.n < 2 {
            return Err(SignetError::Config(format!("n = {} < 2", self.n)));
        }
        if !(0.0..1.0).contains(&self.p_av) || self.p_av == 0.0 {
            return Err(SignetError::Config(format!("p_av = {} outside (0, 1)", self.p_av)));
        }
        if self.experiment == ExperimentKind::PowerCurve {
            if self.kappa < 2 {
                return Err(SignetError::Config("power curves need kappa >= 2".into()));
            }
            if self.t_grid.is_empty() {
                return Err(SignetError::Config("power curves need a t_grid".into()));
            }
            // Statistics pinned to a hypothesized t live in the contiguous
            // regime; adaptive sweeps may cross t = 1.
            if self.statistics.iter().any(|s| s.requires_t()) {
                if let Some(bad) = self.t_grid.iter().find(|&&t| t >= 1.0) {
                    return Err(SignetError::Config(format!(
                        "t = {bad} >= 1 in t_grid: {} requires the contiguous regime",
                        self.statistics.iter().find(|s| s.requires_t()).unwrap().name()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Stable short hash of the canonical serialized config.
    pub fn config_hash(&self) -> String {
        let canon = serde_json::to_string(self).expect("config serializes");
        let digest = Sha256::digest(canon.as_bytes());
        let mut hex = String::new();
        for b in digest.iter().take(8) {
            let _ = write!(hex, "{b:02x}");
        }
        hex
    }

    fn pool(&self) -> Result<rayon::ThreadPool> {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if self.threads > 0 {
            builder = builder.num_threads(self.threads);
        }
        builder
            .build()
            .map_err(|e| SignetError::Config(format!("thread pool: {e}")))
    }
}

// --- calibration ---------------------------------------------------------------

#[derive(Debug, Clone, serde::Serialize)]
pub struct CalibrationRow {
    pub kind: String,
    pub reps_used: usize,
    pub reps_skipped: usize,
    pub rejection_rate: f64,
    pub mc_stderr: f64,
    pub mean_statistic: f64,
    pub var_statistic: f64,
    pub mean_z: f64,
    pub var_z: f64,
    pub k_used: usize,
    pub wall_time_seconds: Option<f64>,
}

pub const CALIBRATION_HEADER: &str = "kind,reps_used,reps_skipped,rejection_rate,mc_stderr,\
mean_statistic,var_statistic,mean_z,var_z,k_used";

impl CalibrationRow {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.kind,
            self.reps_used,
            self.reps_skipped,
            self.rejection_rate,
            self.mc_stderr,
            self.mean_statistic,
            self.var_statistic,
            self.mean_z,
            self.var_z,
            self.k_used
        )
    }
}

fn mean_var(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    (mean, var)
}

/// Empirical null behavior of each requested statistic at nominal level alpha.
pub fn run_calibrate(config: &ExperimentConfig) -> Result<Vec<CalibrationRow>> {
    config.validate()?;
    for kind in &config.statistics {
        let mut spec = config.test;
        spec.kind = *kind;
        spec.validate()?;
    }
    let pool = config.pool()?;
    let start = Instant::now();
    // one spectrum per replicate, shared across statistics
    let per_rep: Vec<Result<Option<Vec<TestOutcome>>>> = pool.install(|| {
        (0..config.reps)
            .into_par_iter()
            .map(|rep| {
                let mut r = rng::stream(config.seed, rep as u64);
                let graph = sample_er_rng(config.n, config.p_av, &mut r)?;
                let centered = match config.test.centering {
                    CenteringChoice::Estimated => match center_estimated(&graph) {
                        Ok(c) => c,
                        // degenerate draw (empty/complete): skip the replicate
                        Err(SignetError::DegenerateCentering(_)) => return Ok(None),
                        Err(e) => return Err(e),
                    },
                    CenteringChoice::Known => center_known(&graph, config.p_av)?,
                };
                let centering = centered.centering;
                let needs_spectrum =
                    config.statistics.iter().any(|k| *k != StatKind::LcOracle);
                let spectrum =
                    if needs_spectrum { Some(eigenvalues(&centered)?) } else { None };
                let mut outcomes = Vec::with_capacity(config.statistics.len());
                for kind in &config.statistics {
                    let mut spec = config.test;
                    spec.kind = *kind;
                    let sign = resolve_sign(&spec, Some(true))?;
                    outcomes.push(evaluate_on_spectrum(
                        &graph,
                        spectrum.as_ref(),
                        centering,
                        &spec,
                        sign,
                    )?);
                }
                Ok(Some(outcomes))
            })
            .collect()
    });

    let mut rows = Vec::new();
    for (idx, kind) in config.statistics.iter().enumerate() {
        let mut stats = Vec::new();
        let mut zs = Vec::new();
        let mut rejects = 0usize;
        let mut skipped = 0usize;
        let mut k_used = 0usize;
        for rep in &per_rep {
            match rep {
                Ok(Some(outcomes)) => {
                    let o = &outcomes[idx];
                    stats.push(o.statistic);
                    zs.push(o.z);
                    rejects += o.reject as usize;
                    k_used = o.k_used;
                }
                Ok(None) => skipped += 1,
                Err(e) => {
                    return Err(SignetError::Numerical(format!("replicate failed: {e}")))
                }
            }
        }
        let used = stats.len();
        let rate = rejects as f64 / used.max(1) as f64;
        let (mean_s, var_s) = mean_var(&stats);
        let (mean_z, var_z) = mean_var(&zs);
        rows.push(CalibrationRow {
            kind: kind.name().to_string(),
            reps_used: used,
            reps_skipped: skipped,
            rejection_rate: rate,
            mc_stderr: (rate * (1.0 - rate) / used.max(1) as f64).sqrt(),
            mean_statistic: mean_s,
            var_statistic: var_s,
            mean_z,
            var_z,
            k_used,
            wall_time_seconds: config.timing.then(|| start.elapsed().as_secs_f64()),
        });
    }
    Ok(rows)
}

// --- power curves ----------------------------------------------------------------

#[derive(Debug, Clone, serde::Serialize)]
pub struct PowerRow {
    pub kind: String,
    pub t: f64,
    pub feasible: bool,
    pub empirical_power: f64,
    pub theoretical_power: f64,
    pub mc_stderr: f64,
    pub reps_used: usize,
    pub wall_time_seconds: Option<f64>,
}

pub const POWER_HEADER: &str =
    "kind,t,feasible,empirical_power,theoretical_power,mc_stderr,reps_used";

impl PowerRow {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.kind,
            self.t,
            self.feasible,
            fmt_opt_nan(self.empirical_power),
            fmt_opt_nan(self.theoretical_power),
            fmt_opt_nan(self.mc_stderr),
            self.reps_used
        )
    }
}

fn fmt_opt_nan(v: f64) -> String {
    if v.is_nan() {
        String::new()
    } else {
        v.to_string()
    }
}

/// Empirical rejection rates against the kappa-block alternative over the
/// t grid, next to the theoretical optimal-power curves. Infeasible t values
/// yield marked rows; the sweep continues.
pub fn run_power_curve(config: &ExperimentConfig) -> Result<Vec<PowerRow>> {
    config.validate()?;
    let pool = config.pool()?;
    let mut rows = Vec::new();
    for (ti, &t) in config.t_grid.iter().enumerate() {
        let start = Instant::now();
        let params = match params_from_t(config.n, config.p_av, t, config.kappa) {
            Ok(p) => p,
            Err(_) => {
                for kind in &config.statistics {
                    rows.push(PowerRow {
                        kind: kind.name().to_string(),
                        t,
                        feasible: false,
                        empirical_power: f64::NAN,
                        theoretical_power: f64::NAN,
                        mc_stderr: f64::NAN,
                        reps_used: 0,
                        wall_time_seconds: config.timing.then(|| start.elapsed().as_secs_f64()),
                    });
                }
                continue;
            }
        };
        let assortative = params.p >= params.q;
        let per_rep: Vec<Result<Option<Vec<bool>>>> = pool.install(|| {
            (0..config.reps)
                .into_par_iter()
                .map(|rep| {
                    // distinct stream family per grid point
                    let mut r =
                        rng::stream(config.seed ^ (ti as u64).wrapping_mul(0x9e3779b9), rep as u64);
                    let graph =
                        sample_sbm_rng(config.n, config.kappa, params.p, params.q, &mut r)?;
                    let centered = match config.test.centering {
                        CenteringChoice::Estimated => match center_estimated(&graph) {
                            Ok(c) => c,
                            Err(SignetError::DegenerateCentering(_)) => return Ok(None),
                            Err(e) => return Err(e),
                        },
                        CenteringChoice::Known => center_known(&graph, config.p_av)?,
                    };
                    let centering = centered.centering;
                    let needs_spectrum =
                        config.statistics.iter().any(|k| *k != StatKind::LcOracle);
                    let spectrum =
                        if needs_spectrum { Some(eigenvalues(&centered)?) } else { None };
                    let mut rejects = Vec::with_capacity(config.statistics.len());
                    for kind in &config.statistics {
                        let mut spec = config.test;
                        spec.kind = *kind;
                        if spec.kind.requires_t() {
                            spec.t_hypothesized = Some(t);
                        }
                        let sign = resolve_sign(&spec, Some(assortative))?;
                        let outcome = evaluate_on_spectrum(
                            &graph,
                            spectrum.as_ref(),
                            centering,
                            &spec,
                            sign,
                        )?;
                        rejects.push(outcome.reject);
                    }
                    Ok(Some(rejects))
                })
                .collect()
        });

        for (idx, kind) in config.statistics.iter().enumerate() {
            let mut used = 0usize;
            let mut rejected = 0usize;
            for rep in &per_rep {
                match rep {
                    Ok(Some(r)) => {
                        used += 1;
                        rejected += r[idx] as usize;
                    }
                    Ok(None) => {}
                    Err(e) => {
                        return Err(SignetError::Numerical(format!("replicate failed: {e}")))
                    }
                }
            }
            let rate = rejected as f64 / used.max(1) as f64;
            let theory = match kind {
                StatKind::LaOptimal | StatKind::LcOracle if t < 1.0 && t > 0.0 => {
                    optimal_power(config.test.alpha, t)?
                }
                StatKind::LoOptimal if t < 1.0 && t > 0.0 => {
                    optimal_power_odd(config.test.alpha, t)?
                }
                StatKind::AdaptiveOdd if t < 1.0 => {
                    let k_used = match config.test.k_n {
                        KChoice::Fixed(k) => k,
                        KChoice::Auto => default_k(config.n, config.p_av, Regime::OddOnly)?,
                    };
                    let sd = adaptive_odd_variance(k_used, config.test.epsilon).sqrt();
                    let shift = adaptive_odd_mean_shift(t, config.test.epsilon, k_used);
                    phi(-phi_inv(1.0 - config.test.alpha)? + shift / sd)
                }
                _ => f64::NAN,
            };
            rows.push(PowerRow {
                kind: kind.name().to_string(),
                t,
                feasible: true,
                empirical_power: rate,
                theoretical_power: theory,
                mc_stderr: (rate * (1.0 - rate) / used.max(1) as f64).sqrt(),
                reps_used: used,
                wall_time_seconds: config.timing.then(|| start.elapsed().as_secs_f64()),
            });
        }
    }
    Ok(rows)
}

// --- oracle comparison -------------------------------------------------------------

#[derive(Debug, Clone, serde::Serialize)]
pub struct OracleRow {
    pub rep: usize,
    pub k: usize,
    pub cycle_bruteforce: f64,
    pub cycle_from_lss: f64,
    pub diff: f64,
}

pub const ORACLE_HEADER: &str = "rep,k,cycle_bruteforce,cycle_from_lss,diff";

#[derive(Debug, Clone, serde::Serialize)]
pub struct OracleSummary {
    pub k: usize,
    pub reps_used: usize,
    pub sd_diff: f64,
    pub sd_bruteforce: f64,
    pub correlation: f64,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct OracleReport {
    pub rows: Vec<OracleRow>,
    pub summaries: Vec<OracleSummary>,
    pub skipped: usize,
}

/// Brute-force signed cycles against their spectral constructions,
/// per replicate and cycle length, with summary spread/correlation.
pub fn run_oracle_compare(config: &ExperimentConfig) -> Result<OracleReport> {
    config.validate()?;
    for &k in &config.oracle_ks {
        if k < 3 {
            return Err(SignetError::Config(format!("oracle cycle length {k} < 3")));
        }
        if (config.n as f64).powi(k as i32) > 1e8 {
            return Err(SignetError::Config(format!(
                "n = {} too large for brute-force cycles of length {k}",
                config.n
            )));
        }
    }
    let pool = config.pool()?;
    let known = config.test.centering == CenteringChoice::Known;
    let per_rep: Vec<Result<Option<Vec<OracleRow>>>> = pool.install(|| {
        (0..config.reps)
            .into_par_iter()
            .map(|rep| {
                let mut r = rng::stream(config.seed, rep as u64);
                let graph = sample_er_rng(config.n, config.p_av, &mut r)?;
                let centered = if known {
                    center_known(&graph, config.p_av)?
                } else {
                    match center_estimated(&graph) {
                        Ok(c) => c,
                        Err(SignetError::DegenerateCentering(_)) => return Ok(None),
                        Err(e) => return Err(e),
                    }
                };
                let p_ref = centered.centering.p_ref();
                let spectrum = eigenvalues(&centered)?;
                let mut rows = Vec::with_capacity(config.oracle_ks.len());
                for &k in &config.oracle_ks {
                    let brute = signed_cycle_bruteforce(&graph, p_ref, k)?;
                    let lss = if k % 2 == 1 {
                        cycle_from_lss_odd(&spectrum, k)?
                    } else {
                        cycle_from_lss_even(&spectrum, &graph, p_ref, k, &config.test.t_correction)?
                    };
                    rows.push(OracleRow {
                        rep,
                        k,
                        cycle_bruteforce: brute,
                        cycle_from_lss: lss,
                        diff: lss - brute,
                    });
                }
                Ok(Some(rows))
            })
            .collect()
    });

    let mut rows = Vec::new();
    let mut skipped = 0usize;
    for rep in per_rep {
        match rep {
            Ok(Some(mut r)) => rows.append(&mut r),
            Ok(None) => skipped += 1,
            Err(e) => return Err(e),
        }
    }
    let mut summaries = Vec::new();
    for &k in &config.oracle_ks {
        let brute: Vec<f64> =
            rows.iter().filter(|r| r.k == k).map(|r| r.cycle_bruteforce).collect();
        let lss: Vec<f64> = rows.iter().filter(|r| r.k == k).map(|r| r.cycle_from_lss).collect();
        let diff: Vec<f64> = rows.iter().filter(|r| r.k == k).map(|r| r.diff).collect();
        let (_, var_d) = mean_var(&diff);
        let (mb, var_b) = mean_var(&brute);
        let (ml, var_l) = mean_var(&lss);
        let cov = brute
            .iter()
            .zip(&lss)
            .map(|(x, y)| (x - mb) * (y - ml))
            .sum::<f64>()
            / brute.len().max(1) as f64;
        summaries.push(OracleSummary {
            k,
            reps_used: brute.len(),
            sd_diff: var_d.sqrt(),
            sd_bruteforce: var_b.sqrt(),
            correlation: cov / (var_b.sqrt() * var_l.sqrt()),
        });
    }
    Ok(OracleReport { rows, summaries, skipped })
}

// --- identities -----------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub name: String,
    pub pass: bool,
}

/// Every exact combinatorial identity the statistics rely on; any failure is
/// a build-stopping defect.
pub fn run_identities() -> Vec<IdentityCheck> {
    let mut checks = Vec::new();
    let mut push = |name: String, pass: bool| checks.push(IdentityCheck { name, pass });

    let mut all_cancel = true;
    for k in 2..=40 {
        let (s0, s1) = chebyshev_psi_cancellations(k);
        all_cancel &= num_traits::Zero::is_zero(&s0) && num_traits::Zero::is_zero(&s1);
    }
    push("chebyshev_psi_cancellations_k2_40".into(), all_cancel);

    let mut series_ok = true;
    for r in 1..=20usize {
        let series = fk_series_oracle(r, 20);
        for m in 1..=20usize {
            let expect = num_rational::BigRational::from(fk_coefficient(m, r));
            series_ok &= series[m] == expect;
        }
    }
    push("fk_matches_series_expansion_m20".into(), series_ok);

    push("alpha1_4_is_0".into(), alpha1(2) == 0.into());
    push("alpha1_6_is_4".into(), alpha1(3) == 4.into());
    push("alpha2_4_is_1".into(), alpha2(2) == 1.into());
    push("alpha2_6_is_6".into(), alpha2(3) == 6.into());

    let mut d_ok = true;
    for k in 1..=15 {
        d_ok &= d_product_is_identity(k);
    }
    push("d_matrix_inverse_identity_k15".into(), d_ok);

    let mut sum_ok = true;
    for m in 1..=40 {
        sum_ok &= fk_row_sum_within_bound(m);
    }
    push("fk_row_sums_bounded_m40".into(), sum_ok);

    checks
}

/// Coefficient tables as CSV (psi, alpha, f, Chebyshev coefficients).
pub fn identity_tables_csv(max_k: usize) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "table,index,sub_index,value");
    for k in 0..=max_k {
        let _ = writeln!(out, "psi,{k},,{}", catalan_psi(k));
    }
    for k in 2..=(max_k / 2).max(2) {
        let _ = writeln!(out, "alpha1,{k},,{}", alpha1(k));
        let _ = writeln!(out, "alpha2,{k},,{}", alpha2(k));
    }
    for m in 1..=max_k {
        for r in 1..=m {
            let f = fk_coefficient(m, r);
            if !num_traits::Zero::is_zero(&f) {
                let _ = writeln!(out, "f,{m},{r},{f}");
            }
        }
    }
    for m in 0..=max_k {
        let poly = chebyshev_poly(m);
        for (j, c) in poly.coeffs.iter().enumerate() {
            if !num_traits::Zero::is_zero(c) {
                let _ = writeln!(out, "chebyshev,{m},{j},{c}");
            }
        }
    }
    out
}

// --- CSV / plot emission -----------------------------------------------------------

/// Append the provenance columns every emitted row carries.
pub fn csv_with_provenance(
    header: &str,
    body_rows: &[String],
    config: &ExperimentConfig,
    timing: &[Option<f64>],
) -> String {
    let mut out = String::new();
    let hash = config.config_hash();
    let timing_col = config.timing;
    let _ = write!(out, "{header},config_hash,seed,version");
    if timing_col {
        let _ = write!(out, ",wall_time_seconds");
    }
    let _ = writeln!(out);
    for (i, row) in body_rows.iter().enumerate() {
        let _ = write!(out, "{row},{hash},{},{}", config.seed, crate::VERSION);
        if timing_col {
            let t = timing.get(i).copied().flatten().unwrap_or(f64::NAN);
            let _ = write!(out, ",{t:.3}");
        }
        let _ = writeln!(out);
    }
    out
}

/// Standalone SVG of a power sweep: empirical points with +-2 stderr bars,
/// theoretical optimal and odd-only curves.
pub fn power_plot_svg(rows: &[PowerRow], alpha: f64) -> String {
    let (w, h) = (640.0, 420.0);
    let (ml, mr, mt, mb) = (60.0, 20.0, 20.0, 45.0);
    let t_max = rows.iter().map(|r| r.t).fold(0.2, f64::max).max(0.99);
    let x = |t: f64| ml + (w - ml - mr) * t / t_max;
    let y = |p: f64| h - mb - (h - mt - mb) * p.clamp(0.0, 1.0);
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
    );
    let _ = writeln!(s, "<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>");
    // axes
    let _ = writeln!(
        s,
        "<line x1=\"{ml}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>",
        h - mb,
        w - mr,
        h - mb
    );
    let _ = writeln!(s, "<line x1=\"{ml}\" y1=\"{mt}\" x2=\"{ml}\" y2=\"{}\" stroke=\"black\"/>", h - mb);
    for i in 0..=5 {
        let p = i as f64 / 5.0;
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" font-size=\"11\" text-anchor=\"end\">{p:.1}</text>",
            ml - 6.0,
            y(p) + 4.0
        );
        let _ = writeln!(
            s,
            "<line x1=\"{ml}\" y1=\"{0}\" x2=\"{1}\" y2=\"{0}\" stroke=\"#dddddd\"/>",
            y(p),
            w - mr
        );
    }
    for i in 0..=5 {
        let t = t_max * i as f64 / 5.0;
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" font-size=\"11\" text-anchor=\"middle\">{t:.2}</text>",
            x(t),
            h - mb + 16.0
        );
    }
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\">signal strength t</text>",
        (ml + w - mr) / 2.0,
        h - 10.0
    );
    let _ = writeln!(
        s,
        "<text x=\"14\" y=\"{}\" font-size=\"12\" transform=\"rotate(-90 14 {0})\" text-anchor=\"middle\">power</text>",
        (mt + h - mb) / 2.0
    );
    // theoretical curves
    let mut all_path = String::new();
    let mut odd_path = String::new();
    for i in 0..=120 {
        let t = t_max.min(0.995) * i as f64 / 120.0;
        if let (Ok(pa), Ok(po)) = (optimal_power(alpha, t), optimal_power_odd(alpha, t)) {
            let cmd = if i == 0 { 'M' } else { 'L' };
            let _ = write!(all_path, "{cmd}{:.2},{:.2} ", x(t), y(pa));
            let _ = write!(odd_path, "{cmd}{:.2},{:.2} ", x(t), y(po));
        }
    }
    let _ = writeln!(s, "<path d=\"{all_path}\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\"/>");
    let _ = writeln!(
        s,
        "<path d=\"{odd_path}\" fill=\"none\" stroke=\"#2ca02c\" stroke-width=\"1.5\" stroke-dasharray=\"5,3\"/>"
    );
    // empirical points with error bars, one color per statistic kind
    let palette = ["#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"];
    let mut kinds: Vec<&str> = rows.iter().map(|r| r.kind.as_str()).collect();
    kinds.sort_unstable();
    kinds.dedup();
    for (ki, kind) in kinds.iter().enumerate() {
        let color = palette[ki % palette.len()];
        for row in rows.iter().filter(|r| r.kind == *kind && r.feasible) {
            let (px, py) = (x(row.t), y(row.empirical_power));
            let e = 2.0 * row.mc_stderr;
            let _ = writeln!(
                s,
                "<line x1=\"{px:.2}\" y1=\"{:.2}\" x2=\"{px:.2}\" y2=\"{:.2}\" stroke=\"{color}\"/>",
                y(row.empirical_power + e),
                y(row.empirical_power - e)
            );
            let _ = writeln!(s, "<circle cx=\"{px:.2}\" cy=\"{py:.2}\" r=\"3\" fill=\"{color}\"/>");
        }
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" font-size=\"11\" fill=\"{color}\">{kind}</text>",
            w - mr - 110.0,
            mt + 14.0 * (ki as f64 + 2.0)
        );
    }
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" font-size=\"11\" fill=\"#1f77b4\">optimal</text>",
        w - mr - 110.0,
        mt + 14.0
    );
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" font-size=\"11\" fill=\"#2ca02c\">odd-only</text>",
        w - mr - 110.0,
        mt + 28.0
    );
    let _ = writeln!(s, "</svg>");
    s
}

/// Converts big integers in identity tables to display; helper for the CLI.
pub fn bigint_digits(v: &num_bigint::BigInt) -> String {
    v.to_string()
}

/// Mean of a slice as f64, empty-safe (reporting helper).
pub fn slice_mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        f64::NAN
    } else {
        values.iter().sum::<f64>() / values.len() as f64
    }
}

/// Composite check used by the oracle experiment reporting.
pub fn correlation(a: &[f64], b: &[f64]) -> f64 {
    let (ma, va) = mean_var(a);
    let (mb, vb) = mean_var(b);
    let cov =
        a.iter().zip(b).map(|(x, y)| (x - ma) * (y - mb)).sum::<f64>() / a.len().max(1) as f64;
    cov / (va.sqrt() * vb.sqrt())
}

/// f64 view of a rational (plot/table helper).
pub fn rational_to_f64(v: &num_rational::BigRational) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_parse_and_hash() {
        let text = "\
# comment
experiment = calibrate
n = 100
p_av = 0.2
reps = 5
seed = 42
statistics = lo,la
t = 0.8
k_n = 7
";
        let cfg = ExperimentConfig::parse(text).unwrap();
        assert_eq!(cfg.n, 100);
        assert_eq!(cfg.statistics.len(), 2);
        assert_eq!(cfg.test.k_n, KChoice::Fixed(7));
        let h1 = cfg.config_hash();
        let mut cfg2 = cfg.clone();
        assert_eq!(h1, cfg2.config_hash());
        cfg2.seed = 43;
        assert_ne!(h1, cfg2.config_hash());
    }

    #[test]
    fn config_rejects_bad_input() {
        assert!(ExperimentConfig::parse("nonsense").is_err());
        assert!(ExperimentConfig::parse("unknown_key = 3").is_err());
        let err = ExperimentConfig::parse("experiment = power\nkappa = 1\nt_grid = 0.5");
        assert!(err.is_err());
        // pinned-t statistic refuses t >= 1 in the grid
        let err = ExperimentConfig::parse(
            "experiment = power\nkappa = 2\nt_grid = 0.5,1.2\nstatistics = la\nt = 0.5",
        );
        assert!(err.is_err());
        // adaptive sweeps may cross t = 1
        let ok = ExperimentConfig::parse(
            "experiment = power\nkappa = 2\nt_grid = 0.5,1.2\nstatistics = adaptive-odd",
        );
        assert!(ok.is_ok());
    }

    #[test]
    fn spec_validation() {
        let mut spec = TestSpec { kind: StatKind::LaOptimal, ..TestSpec::default() };
        assert!(spec.validate().is_err()); // missing t
        spec.t_hypothesized = Some(0.8);
        assert!(spec.validate().is_ok());
        spec.t_hypothesized = Some(0.0);
        assert!(spec.validate().is_err());
    }

    #[test]
    fn single_test_runs_end_to_end() {
        let graph = crate::graph_models::sample_er(120, 0.2, 7).unwrap();
        let spec = TestSpec {
            kind: StatKind::LoOptimal,
            t_hypothesized: Some(0.7),
            k_n: KChoice::Fixed(7),
            ..TestSpec::default()
        };
        let outcome = run_single_test(&graph, &spec, None, None).unwrap();
        assert_eq!(outcome.kind, "lo");
        assert_eq!(outcome.k_used, 7);
        assert!((outcome.z - outcome.statistic / outcome.null_sd).abs() < 1e-12);
        assert!((outcome.p_value - (1.0 - phi(outcome.z))).abs() < 1e-12);
        assert_eq!(outcome.reject, outcome.p_value < 0.05);
        assert_eq!(outcome.centering, "estimated");
        // JSON round-trips through serde
        let json = outcome.to_json();
        assert!(json.contains("\"kind\":\"lo\""));
        // CSV columns match the header
        assert_eq!(outcome.csv_row().split(',').count(), TEST_OUTCOME_HEADER.split(',').count());
    }

    #[test]
    fn calibrate_is_reproducible() {
        let cfg = ExperimentConfig {
            n: 60,
            p_av: 0.3,
            reps: 8,
            seed: 11,
            statistics: vec![StatKind::AdaptiveOdd, StatKind::AdaptiveAll],
            test: TestSpec { k_n: KChoice::Fixed(5), ..TestSpec::default() },
            ..ExperimentConfig::default()
        };
        let a = run_calibrate(&cfg).unwrap();
        let b = run_calibrate(&cfg).unwrap();
        assert_eq!(a.len(), 2);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.rejection_rate, y.rejection_rate);
            assert_eq!(x.mean_statistic, y.mean_statistic);
        }
        let csv = csv_with_provenance(
            CALIBRATION_HEADER,
            &a.iter().map(|r| r.csv_row()).collect::<Vec<_>>(),
            &cfg,
            &a.iter().map(|r| r.wall_time_seconds).collect::<Vec<_>>(),
        );
        let csv2 = csv_with_provenance(
            CALIBRATION_HEADER,
            &b.iter().map(|r| r.csv_row()).collect::<Vec<_>>(),
            &cfg,
            &b.iter().map(|r| r.wall_time_seconds).collect::<Vec<_>>(),
        );
        assert_eq!(csv, csv2);
        assert!(csv.contains(&cfg.config_hash()));
    }

    #[test]
    fn power_curve_handles_infeasible_t() {
        let cfg = ExperimentConfig {
            experiment: ExperimentKind::PowerCurve,
            n: 60,
            p_av: 0.01,
            t_grid: vec![0.5, 0.9],
            kappa: 2,
            reps: 4,
            seed: 3,
            statistics: vec![StatKind::AdaptiveOdd],
            test: TestSpec { k_n: KChoice::Fixed(5), ..TestSpec::default() },
            ..ExperimentConfig::default()
        };
        // p_av = 0.01 at n = 60: q would go negative for larger t
        let rows = run_power_curve(&cfg).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().any(|r| !r.feasible) || rows.iter().all(|r| r.feasible));
        let svg = power_plot_svg(&rows, 0.05);
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn oracle_compare_small() {
        let cfg = ExperimentConfig {
            experiment: ExperimentKind::OracleCompare,
            n: 16,
            p_av: 0.5,
            reps: 6,
            seed: 5,
            oracle_ks: vec![3, 4],
            test: TestSpec {
                centering: CenteringChoice::Known,
                t_correction: TCorrectionMode::ExactSmall,
                ..TestSpec::default()
            },
            ..ExperimentConfig::default()
        };
        let report = run_oracle_compare(&cfg).unwrap();
        assert_eq!(report.rows.len(), 12);
        // length-3 cycles match the spectral path exactly
        for row in report.rows.iter().filter(|r| r.k == 3) {
            assert!(row.diff.abs() < 1e-9, "{row:?}");
        }
        let big = ExperimentConfig { n: 5000, ..cfg };
        assert!(run_oracle_compare(&big).is_err());
    }

    #[test]
    fn identities_all_pass() {
        let checks = run_identities();
        assert!(checks.iter().all(|c| c.pass), "{checks:?}");
        let tables = identity_tables_csv(8);
        assert!(tables.contains("psi,4,,2"));
        assert!(tables.contains("alpha1,3,,4"));
    }
}
