//! Null and alternative random-graph samplers, the average-connection
//! estimate, and the SNR parameterization (a, b, c, t) used throughout the
//! test harness.

use crate::error::{Result, SignetError};
use crate::rng::{stream as rng_stream, uniform_below, uniform_f64};
use rand_core::Rng;
use std::fmt::Write as _;

/// Undirected simple graph stored as a dense symmetric 0/1 matrix with zero
/// diagonal. SBM samples carry their block labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSample {
    n: usize,
    adjacency: Vec<u8>,
    pub labels: Option<Vec<u32>>,
}

impl GraphSample {
    pub fn empty(n: usize) -> Self {
        GraphSample { n, adjacency: vec![0; n * n], labels: None }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i * self.n + j] != 0
    }

    pub fn set_edge(&mut self, i: usize, j: usize) {
        assert_ne!(i, j, "no self-loops");
        self.adjacency[i * self.n + j] = 1;
        self.adjacency[j * self.n + i] = 1;
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|&b| b as usize).sum::<usize>() / 2
    }

    /// Edge-list text format: a header line with n, then one `i j` pair per
    /// edge, 0-based, i < j.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.n);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.edge(i, j) {
                    let _ = writeln!(out, "{i} {j}");
                }
            }
        }
        out
    }

    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| SignetError::InvalidParameter("empty edge list".into()))?
            .trim()
            .parse()
            .map_err(|e| SignetError::InvalidParameter(format!("bad header line: {e}")))?;
        if n < 2 {
            return Err(SignetError::InvalidParameter("edge list needs n >= 2".into()));
        }
        let mut g = GraphSample::empty(n);
        for line in lines {
            let mut it = line.split_whitespace();
            let i: usize = it
                .next()
                .ok_or_else(|| SignetError::InvalidParameter(format!("bad edge line: {line}")))?
                .parse()
                .map_err(|e| SignetError::InvalidParameter(format!("bad edge line {line}: {e}")))?;
            let j: usize = it
                .next()
                .ok_or_else(|| SignetError::InvalidParameter(format!("bad edge line: {line}")))?
                .parse()
                .map_err(|e| SignetError::InvalidParameter(format!("bad edge line {line}: {e}")))?;
            if i >= n || j >= n || i == j {
                return Err(SignetError::InvalidParameter(format!(
                    "edge ({i}, {j}) out of range for n = {n}"
                )));
            }
            g.set_edge(i, j);
        }
        Ok(g)
    }
}

/// Model parameters; kappa = 1 means Erdos-Renyi and q is ignored.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ModelParams {
    pub n: usize,
    pub kappa: usize,
    pub p: f64,
    pub q: f64,
}

impl ModelParams {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(SignetError::InvalidParameter(format!("n = {} < 2", self.n)));
        }
        if self.kappa < 1 {
            return Err(SignetError::InvalidParameter("kappa must be >= 1".into()));
        }
        for (name, v) in [("p", self.p), ("q", self.q)] {
            if !(0.0..=1.0).contains(&v) || !v.is_finite() {
                return Err(SignetError::InvalidParameter(format!("{name} = {v} outside [0, 1]")));
            }
        }
        Ok(())
    }

    /// (p + (kappa - 1) q) / kappa.
    pub fn p_av(&self) -> f64 {
        if self.kappa == 1 {
            self.p
        } else {
            (self.p + (self.kappa as f64 - 1.0) * self.q) / self.kappa as f64
        }
    }
}

/// Signal-to-noise summary of a two-or-more-block alternative.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct SnrSummary {
    /// a = n p
    pub a: f64,
    /// b = n q
    pub b: f64,
    /// (a-b)^2 / (a + (kappa-1) b)
    pub c: f64,
    /// sqrt(c / (2 (1 - p_av))), finite-n p_av
    pub t: f64,
    pub assortative: bool,
}

/// Erdos-Renyi sample: each unordered pair present independently with
/// probability p, reproducible from the seed.
pub fn sample_er(n: usize, p: f64, seed: u64) -> Result<GraphSample> {
    let mut rng = rng_stream(seed, 0);
    sample_er_rng(n, p, &mut rng)
}

pub fn sample_er_rng<R: Rng>(n: usize, p: f64, rng: &mut R) -> Result<GraphSample> {
    if n < 2 {
        return Err(SignetError::InvalidParameter(format!("n = {n} < 2")));
    }
    if !(0.0..=1.0).contains(&p) || !p.is_finite() {
        return Err(SignetError::InvalidParameter(format!("p = {p} outside [0, 1]")));
    }
    let mut g = GraphSample::empty(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if uniform_f64(rng) < p {
                g.set_edge(i, j);
            }
        }
    }
    Ok(g)
}

/// Symmetric SBM sample: labels i.i.d. uniform on {1..kappa}; within-block
/// probability p, between-block q. Labels are kept on the sample.
pub fn sample_sbm(n: usize, kappa: usize, p: f64, q: f64, seed: u64) -> Result<GraphSample> {
    let mut rng = rng_stream(seed, 0);
    sample_sbm_rng(n, kappa, p, q, &mut rng)
}

pub fn sample_sbm_rng<R: Rng>(
    n: usize,
    kappa: usize,
    p: f64,
    q: f64,
    rng: &mut R,
) -> Result<GraphSample> {
    if n < 2 {
        return Err(SignetError::InvalidParameter(format!("n = {n} < 2")));
    }
    if kappa < 2 {
        return Err(SignetError::InvalidParameter(format!("kappa = {kappa} < 2")));
    }
    for (name, v) in [("p", p), ("q", q)] {
        if !(0.0..=1.0).contains(&v) || !v.is_finite() {
            return Err(SignetError::InvalidParameter(format!("{name} = {v} outside [0, 1]")));
        }
    }
    let labels: Vec<u32> = (0..n).map(|_| uniform_below(rng, kappa as u64) as u32 + 1).collect();
    let mut g = GraphSample::empty(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let prob = if labels[i] == labels[j] { p } else { q };
            if uniform_f64(rng) < prob {
                g.set_edge(i, j);
            }
        }
    }
    g.labels = Some(labels);
    Ok(g)
}

/// Sample counterpart of the average connection probability:
/// twice the edge count over n(n-1). 0 and 1 are valid outputs; the
/// centering step rejects them downstream.
pub fn estimate_p_hat(graph: &GraphSample) -> f64 {
    let n = graph.n();
    2.0 * graph.edge_count() as f64 / (n as f64 * (n as f64 - 1.0))
}

pub fn snr_summary(params: &ModelParams) -> Result<SnrSummary> {
    params.validate()?;
    if params.kappa < 2 {
        return Err(SignetError::InvalidParameter("snr_summary needs kappa >= 2".into()));
    }
    let n = params.n as f64;
    let kappa = params.kappa as f64;
    let a = n * params.p;
    let b = n * params.q;
    let denom = a + (kappa - 1.0) * b;
    if denom == 0.0 {
        return Err(SignetError::InvalidParameter(
            "degenerate parameters: a + (kappa-1) b = 0".into(),
        ));
    }
    let c = (a - b).powi(2) / denom;
    let p_av = params.p_av();
    let t = (c / (2.0 * (1.0 - p_av))).sqrt();
    Ok(SnrSummary { a, b, c, t, assortative: params.p > params.q })
}

/// Invert the SNR parameterization: find (p, q) with the requested average
/// connection probability and signal strength t.
pub fn params_from_t(n: usize, p_av: f64, t: f64, kappa: usize) -> Result<ModelParams> {
    if n < 2 {
        return Err(SignetError::InvalidParameter(format!("n = {n} < 2")));
    }
    if kappa < 2 {
        return Err(SignetError::InvalidParameter(format!("kappa = {kappa} < 2")));
    }
    if !(0.0..1.0).contains(&p_av) || p_av <= 0.0 {
        return Err(SignetError::InvalidParameter(format!("p_av = {p_av} outside (0, 1)")));
    }
    if t < 0.0 || !t.is_finite() {
        return Err(SignetError::InvalidParameter(format!("t = {t} must be finite and >= 0")));
    }
    let nf = n as f64;
    let kf = kappa as f64;
    let c = t * t * 2.0 * (1.0 - p_av);
    let d = (c * kf * nf * p_av).sqrt();
    let p = p_av + d * (kf - 1.0) / (kf * nf);
    let q = p_av - d / (kf * nf);
    if !(0.0..=1.0).contains(&p) || !(0.0..=1.0).contains(&q) {
        return Err(SignetError::InvalidParameter(format!(
            "infeasible t = {t}: implied p = {p:.6}, q = {q:.6} outside [0, 1]"
        )));
    }
    Ok(ModelParams { n, kappa, p, q })
}
