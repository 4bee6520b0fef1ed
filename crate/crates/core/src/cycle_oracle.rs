//! Ground-truth signed-cycle statistics by brute-force enumeration, trace
//! oracles, the exact small-order remainder corrections, and the
//! cycle-from-spectrum constructions.

use crate::combinatorics::{alpha1, alpha2, bigint_to_f64, catalan_psi, chebyshev_poly};
use crate::error::{Result, SignetError};
use crate::graph_models::{sample_er_rng, GraphSample};
use crate::rng;
use crate::spectral::{center_known, chebyshev_lss, eigenvalues, power_trace, CenteredMatrix, Spectrum};
use num_bigint::BigInt;

/// How the T_r remainder terms of even-cycle constructions are supplied.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub enum TCorrectionMode {
    /// Exact per-graph corrections; valid only for cycle lengths 4 and 6.
    ExactSmall,
    /// Deterministic plug-in expectation from exact Bernoulli moments.
    PlugInExpectation,
    /// Estimate the expectations by simulating null graphs.
    MonteCarlo { reps: usize, seed: u64 },
}

const TUPLE_GUARD: f64 = 1e8;

/// E[(x-p)^4] / (p(1-p))^2 for Bernoulli(p); tends to 1/p as p -> 0.
pub fn bernoulli_fourth_moment_ratio(p: f64) -> f64 {
    (1.0 - 3.0 * p * (1.0 - p)) / (p * (1.0 - p))
}

/// Var[(x-p)^2] / (p(1-p))^2 = (1-2p)^2 / (p(1-p)); the fourth-moment ratio
/// minus one.
pub fn bernoulli_var_ratio(p: f64) -> f64 {
    (1.0 - 2.0 * p).powi(2) / (p * (1.0 - p))
}

/// E[(x-p)^6] / (p(1-p))^3.
fn bernoulli_sixth_moment_ratio(p: f64) -> f64 {
    let q = 1.0 - p;
    (q.powi(5) + p.powi(5)) / (p * q).powi(2)
}

fn check_p_ref(p_ref: f64) -> Result<()> {
    if p_ref <= 0.0 || p_ref >= 1.0 || !p_ref.is_finite() {
        return Err(SignetError::InvalidParameter(format!("p_ref = {p_ref} outside (0, 1)")));
    }
    Ok(())
}

/// Signed cycle of length k by direct enumeration over ordered tuples of
/// pairwise-distinct nodes:
/// (n p (1-p))^{-k/2} sum prod_j (x_{i_j, i_{j+1}} - p), indices cyclic.
pub fn signed_cycle_bruteforce(graph: &GraphSample, p_ref: f64, k: usize) -> Result<f64> {
    check_p_ref(p_ref)?;
    if k < 3 {
        return Err(SignetError::InvalidParameter(format!("cycle length k = {k} < 3")));
    }
    let n = graph.n();
    if (n as f64).powi(k as i32) > TUPLE_GUARD {
        return Err(SignetError::ComplexityGuard(format!(
            "n^k = {n}^{k} exceeds the {TUPLE_GUARD:.0} tuple budget"
        )));
    }
    let w_on = 1.0 - p_ref;
    let w_off = -p_ref;
    let weight = |a: usize, b: usize| if graph.edge(a, b) { w_on } else { w_off };

    let mut used = vec![false; n];
    let mut total = 0.0;
    // DFS over ordered tuples (i_0, ..., i_{k-1}); partial products carried down.
    fn dfs(
        graph: &GraphSample,
        weight: &impl Fn(usize, usize) -> f64,
        used: &mut [bool],
        first: usize,
        current: usize,
        depth: usize,
        k: usize,
        prod: f64,
        total: &mut f64,
    ) {
        if depth == k {
            *total += prod * weight(current, first);
            return;
        }
        for next in 0..graph.n() {
            if !used[next] {
                used[next] = true;
                dfs(graph, weight, used, first, next, depth + 1, k, prod * weight(current, next), total);
                used[next] = false;
            }
        }
    }
    for first in 0..n {
        used[first] = true;
        dfs(graph, &weight, &mut used, first, first, 1, k, 1.0, &mut total);
        used[first] = false;
    }

    let scale = n as f64 * p_ref * (1.0 - p_ref);
    Ok(total / scale.sqrt().powi(k as i32))
}

/// Trace of the k-th matrix power by repeated dense multiplication; oracle
/// for the spectral power traces. Intended for n <= 500.
pub fn bruteforce_trace(m: &CenteredMatrix, k: usize) -> f64 {
    debug_assert!(k >= 1);
    debug_assert!(m.n() <= 500, "bruteforce_trace is an oracle for small n");
    let n = m.n();
    if k == 1 {
        return (0..n).map(|i| m.entry(i, i)).sum();
    }
    let mut power = m.as_faer().clone();
    for _ in 2..k {
        power = &power * m.as_faer();
    }
    // trace(power * M) without forming the last product
    let mut tr = 0.0;
    for i in 0..n {
        for j in 0..n {
            tr += power[(i, j)] * m.entry(j, i);
        }
    }
    tr
}

/// Exact T_4 correction statistic: s^{-2} sum_{i != j} (x_{ij} - p)^4,
/// s = n p (1 - p).
pub fn t4_correction(graph: &GraphSample, p_ref: f64) -> Result<f64> {
    check_p_ref(p_ref)?;
    let n = graph.n();
    let s = n as f64 * p_ref * (1.0 - p_ref);
    let on = (1.0 - p_ref).powi(4);
    let off = p_ref.powi(4);
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += if graph.edge(i, j) { on } else { off };
            }
        }
    }
    Ok(sum / (s * s))
}

/// Exact T_6 correction statistic:
/// 6 s^{-3} sum_{distinct i1,i2,i3} (x_{i1 i2}-p)^4 (x_{i2 i3}-p)^2
/// + s^{-3} sum_{i != j} (x_{ij}-p)^6 + 4, computed in O(n^2).
pub fn t6_correction(graph: &GraphSample, p_ref: f64) -> Result<f64> {
    check_p_ref(p_ref)?;
    let n = graph.n();
    let s = n as f64 * p_ref * (1.0 - p_ref);
    let q = 1.0 - p_ref;
    let (on2, off2) = (q * q, p_ref * p_ref);
    let (on4, off4) = (on2 * on2, off2 * off2);
    let (on6, off6) = (on4 * on2, off4 * off2);

    let mut path_sum = 0.0; // sum over distinct (i1, i2, i3)
    let mut six_sum = 0.0; // sum over ordered pairs
    for mid in 0..n {
        let mut s2 = 0.0;
        let mut s4 = 0.0;
        let mut s6 = 0.0;
        for other in 0..n {
            if other != mid {
                if graph.edge(mid, other) {
                    s2 += on2;
                    s4 += on4;
                    s6 += on6;
                } else {
                    s2 += off2;
                    s4 += off4;
                    s6 += off6;
                }
            }
        }
        path_sum += s4 * s2 - s6;
        six_sum += s6;
    }
    let s3 = s * s * s;
    Ok(6.0 * path_sum / s3 + six_sum / s3 + 4.0)
}

/// Expected value of the even-trace remainder T_{2k} under the null.
///
/// `PlugInExpectation` returns alpha_{1,2k} + alpha_{2,2k} * rho4(p) where
/// rho4 is the exact Bernoulli fourth-moment ratio E[(x-p)^4]/(p(1-p))^2
/// (the 1/p of the vanishing-p regime, kept exact at fixed p). `ExactSmall`
/// returns the exact finite-n expectation of the T_4 / T_6 correction
/// statistics. `MonteCarlo` averages the trace remainder over simulated null
/// graphs.
pub fn expected_t(k: usize, n: usize, p_ref: f64, mode: &TCorrectionMode) -> Result<f64> {
    check_p_ref(p_ref)?;
    if k < 2 {
        return Err(SignetError::InvalidParameter(format!("expected_t needs k >= 2, got {k}")));
    }
    match mode {
        TCorrectionMode::ExactSmall => {
            let nf = n as f64;
            let rho4 = bernoulli_fourth_moment_ratio(p_ref);
            match k {
                2 => Ok((nf - 1.0) / nf * rho4),
                3 => {
                    let rho6 = bernoulli_sixth_moment_ratio(p_ref);
                    Ok(6.0 * (nf - 1.0) * (nf - 2.0) / (nf * nf) * rho4
                        + (nf - 1.0) / (nf * nf) * rho6
                        + 4.0)
                }
                _ => Err(SignetError::ModeMismatch(format!(
                    "ExactSmall only covers cycle lengths 4 and 6, got 2k = {}",
                    2 * k
                ))),
            }
        }
        TCorrectionMode::PlugInExpectation => {
            Ok(bigint_to_f64(&alpha1(k))
                + bigint_to_f64(&alpha2(k)) * bernoulli_fourth_moment_ratio(p_ref))
        }
        TCorrectionMode::MonteCarlo { reps, seed } => {
            if *reps == 0 {
                return Err(SignetError::InvalidParameter("MonteCarlo reps must be >= 1".into()));
            }
            let psi2k = bigint_to_f64(&catalan_psi(2 * k));
            let pairs = (k * (k + 1) / 2) as f64;
            let mut acc = 0.0;
            for rep in 0..*reps {
                let mut r = rng::stream(*seed, rep as u64);
                let g = sample_er_rng(n, p_ref, &mut r)?;
                let m = center_known(&g, p_ref)?;
                let spec = eigenvalues(&m)?;
                acc += power_trace(&spec, 2 * k);
            }
            // R_1 and R_2 have mean zero under the null, so the averaged
            // trace minus the deterministic terms estimates E[T_{2k}].
            Ok(acc / *reps as f64 - (n as f64 - pairs) * psi2k)
        }
    }
}

/// Odd signed cycle from the spectrum: C_{n,k} is approximated by Tr P_k.
pub fn cycle_from_lss_odd(spectrum: &Spectrum, k: usize) -> Result<f64> {
    if k < 3 || k % 2 == 0 {
        return Err(SignetError::ModeMismatch(format!(
            "odd construction needs odd k >= 3, got {k}; use the even variant"
        )));
    }
    Ok(chebyshev_lss(spectrum, k))
}

/// Even signed cycle from the spectrum:
/// C_{n,k} = Tr P_k - sum_{r even} P_k[r] (T_r - binom(r/2+1, 2) psi_r),
/// T_0 = T_2 = 0 and T_r supplied per mode.
pub fn cycle_from_lss_even(
    spectrum: &Spectrum,
    graph: &GraphSample,
    p_ref: f64,
    k: usize,
    mode: &TCorrectionMode,
) -> Result<f64> {
    if k < 4 || k % 2 == 1 {
        return Err(SignetError::ModeMismatch(format!(
            "even construction needs even k >= 4, got {k}"
        )));
    }
    if *mode == TCorrectionMode::ExactSmall && k > 6 {
        return Err(SignetError::ModeMismatch(format!(
            "ExactSmall only covers cycle lengths 4 and 6, got {k}"
        )));
    }
    let poly = chebyshev_poly(k);
    let mut correction = 0.0;
    for r in (2..=k).step_by(2) {
        let coeff = poly.coeff_f64(r);
        if coeff == 0.0 {
            continue;
        }
        let t_r = if r == 2 {
            0.0
        } else {
            match mode {
                TCorrectionMode::ExactSmall => match r {
                    4 => t4_correction(graph, p_ref)?,
                    6 => t6_correction(graph, p_ref)?,
                    _ => unreachable!("k <= 6 checked above"),
                },
                other => expected_t(r / 2, graph.n(), p_ref, other)?,
            }
        };
        let pairs = ((r / 2) * (r / 2 + 1) / 2) as f64;
        let psi_r = bigint_to_f64(&catalan_psi(r));
        correction += coeff * (t_r - pairs * psi_r);
    }
    Ok(chebyshev_lss(spectrum, k) - correction)
}

/// Exact-identity witness: the constant bookkeeping of the even construction
/// relies on sum_r P_k[2r] psi_{2r} = 0, asserted exactly in combinatorics.
pub fn even_constant_cancellation_holds(k: usize) -> bool {
    use num_traits::Zero;
    let poly = chebyshev_poly(2 * k);
    let mut s = BigInt::zero();
    for r in 0..=k {
        s += poly.coeff(2 * r) * catalan_psi(2 * r);
    }
    s.is_zero()
}
