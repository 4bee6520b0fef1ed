//! Centering/rescaling of adjacency matrices, the one eigendecomposition per
//! graph that every statistic reuses, and trace evaluations from the spectrum.

use crate::error::{Result, SignetError};
use crate::graph_models::{estimate_p_hat, GraphSample};
use std::sync::Once;

/// Which connection probability centered the matrix.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub enum Centering {
    Known(f64),
    Estimated(f64),
}

impl Centering {
    pub fn p_ref(&self) -> f64 {
        match self {
            Centering::Known(p) | Centering::Estimated(p) => *p,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Centering::Known(_) => "known",
            Centering::Estimated(_) => "estimated",
        }
    }
}

/// (A - p_ref (J - I)) / sqrt(n p_ref (1 - p_ref)), zero diagonal, symmetric.
pub struct CenteredMatrix {
    n: usize,
    mat: faer::Mat<f64>,
    pub centering: Centering,
    /// n p_ref (1 - p_ref), the squared entry scale.
    pub scale: f64,
}

fn faer_sequential() {
    static INIT: Once = Once::new();
    INIT.call_once(|| {
        // Reproducibility contract: results must not depend on thread count,
        // so the eigensolver always runs sequentially. Parallelism lives at
        // the replicate level.
        faer::set_global_parallelism(faer::Par::Seq);
    });
}

fn center(graph: &GraphSample, centering: Centering) -> Result<CenteredMatrix> {
    let p = centering.p_ref();
    if p <= 0.0 || p >= 1.0 || !p.is_finite() {
        return Err(SignetError::DegenerateCentering(format!(
            "reference probability {p} outside (0, 1); cannot rescale"
        )));
    }
    let n = graph.n();
    let scale = n as f64 * p * (1.0 - p);
    let inv_sqrt = 1.0 / scale.sqrt();
    let on = (1.0 - p) * inv_sqrt;
    let off = -p * inv_sqrt;
    let mat = faer::Mat::from_fn(n, n, |i, j| {
        if i == j {
            0.0
        } else if graph.edge(i, j) {
            on
        } else {
            off
        }
    });
    Ok(CenteredMatrix { n, mat, centering, scale })
}

/// Center by a known average connection probability.
pub fn center_known(graph: &GraphSample, p_av: f64) -> Result<CenteredMatrix> {
    center(graph, Centering::Known(p_av))
}

/// Center by the estimated average connection probability; empty and complete
/// graphs are degenerate.
pub fn center_estimated(graph: &GraphSample) -> Result<CenteredMatrix> {
    let p_hat = estimate_p_hat(graph);
    if p_hat <= 0.0 || p_hat >= 1.0 {
        return Err(SignetError::DegenerateCentering(format!(
            "estimated p_hat = {p_hat}; graph is empty or complete"
        )));
    }
    center(graph, Centering::Estimated(p_hat))
}

impl CenteredMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.mat[(i, j)]
    }

    pub fn as_faer(&self) -> &faer::Mat<f64> {
        &self.mat
    }
}

/// Eigenvalues of a centered matrix, sorted descending. The single O(n^3)
/// object that all linear spectral statistics reuse.
#[derive(Debug, Clone)]
pub struct Spectrum {
    n: usize,
    eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn from_sorted(eigenvalues: Vec<f64>) -> Self {
        Spectrum { n: eigenvalues.len(), eigenvalues }
    }
}

/// Full symmetric eigendecomposition (values only), sorted descending.
pub fn eigenvalues(m: &CenteredMatrix) -> Result<Spectrum> {
    faer_sequential();
    let mut ev = m
        .mat
        .self_adjoint_eigenvalues(faer::Side::Lower)
        .map_err(|e| SignetError::Numerical(format!("symmetric eigensolver failed: {e:?}")))?;
    ev.sort_by(|a, b| b.partial_cmp(a).expect("eigenvalues are finite"));
    if ev.iter().any(|v| !v.is_finite()) {
        return Err(SignetError::Numerical("non-finite eigenvalue".into()));
    }
    Ok(Spectrum { n: m.n, eigenvalues: ev })
}

/// Tr P_m over the spectrum via the scalar recurrence q_0 = 2, q_1 = lambda,
/// q_{j+1} = lambda q_j - q_{j-1}. Never expands monomial coefficients; the
/// recurrence is stable on [-2, 2] where the spectrum concentrates.
pub fn chebyshev_lss(spectrum: &Spectrum, m: usize) -> f64 {
    match m {
        0 => return 2.0 * spectrum.n as f64,
        1 => return spectrum.eigenvalues.iter().sum(),
        _ => {}
    }
    let mut total = 0.0;
    for &lambda in &spectrum.eigenvalues {
        let mut prev = 2.0;
        let mut cur = lambda;
        for _ in 2..=m {
            let next = lambda * cur - prev;
            prev = cur;
            cur = next;
        }
        total += cur;
    }
    total
}

/// Sum of k-th powers of the eigenvalues.
pub fn power_trace(spectrum: &Spectrum, k: usize) -> f64 {
    spectrum.eigenvalues.iter().map(|&l| l.powi(k as i32)).sum()
}

/// Which family of traces a test consumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Regime {
    OddOnly,
    All,
}

/// Heuristic default truncation degree from the growth conditions; the
/// asymptotic o(.) rates cannot pick a finite k, so this is a floor-3 clamp
/// exposed in config.
pub fn default_k(n: usize, p_ref: f64, regime: Regime) -> Result<usize> {
    if !(0.0..1.0).contains(&p_ref) || p_ref <= 0.0 {
        return Err(SignetError::InvalidParameter(format!("p_ref = {p_ref} outside (0, 1)")));
    }
    let nf = n as f64;
    if nf.ln() <= 1.0 {
        return Err(SignetError::RegimeTooSparse(format!(
            "n = {n} too small: sqrt(log n) growth condition needs log n > 1"
        )));
    }
    let degree_arg = match regime {
        Regime::OddOnly => nf * p_ref,
        Regime::All => nf * nf * p_ref.powi(3),
    };
    if degree_arg <= 1.0 {
        let cond = match regime {
            Regime::OddOnly => "n p_av -> infinity",
            Regime::All => "n^2 p_av^3 -> infinity",
        };
        return Err(SignetError::RegimeTooSparse(format!(
            "growth condition {cond} violated: argument {degree_arg:.4} <= 1"
        )));
    }
    let k = (degree_arg.ln().min(nf.ln().sqrt()) - 1.0).floor();
    Ok((k.max(3.0) as usize).min(60))
}
