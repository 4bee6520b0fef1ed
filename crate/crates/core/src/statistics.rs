//! Test statistics over the spectrum (the likelihood surrogate, the optimal
//! all-trace and odd-trace statistics, their adaptive variants), null
//! means/variances, the centering corrections, covariance matrices of trace
//! vectors, decision rules and theoretical power formulas.

use crate::combinatorics::{alpha1, alpha2, bigint_to_f64, binomial, catalan_psi, chebyshev_poly};
use crate::cycle_oracle::{
    bernoulli_fourth_moment_ratio, bernoulli_var_ratio, expected_t, signed_cycle_bruteforce,
    TCorrectionMode,
};
use crate::error::{Result, SignetError};
use crate::graph_models::GraphSample;
use crate::spectral::{chebyshev_lss, Spectrum};
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};
use statrs::distribution::{Continuous, ContinuousCDF, Normal};
use std::sync::OnceLock;

fn std_normal() -> &'static Normal {
    static NORMAL: OnceLock<Normal> = OnceLock::new();
    NORMAL.get_or_init(|| Normal::new(0.0, 1.0).expect("standard normal"))
}

/// Standard normal CDF.
pub fn phi(x: f64) -> f64 {
    std_normal().cdf(x)
}

/// Standard normal quantile.
pub fn phi_inv(p: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&p) || p == 0.0 {
        return Err(SignetError::InvalidParameter(format!("quantile level {p} outside (0, 1)")));
    }
    Ok(std_normal().inverse_cdf(p))
}

/// Direction of the block signal; disassortative flips the sign of every odd
/// cycle contribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum SignMode {
    Assortative,
    Disassortative,
}

impl SignMode {
    fn t_effective(&self, t: f64) -> f64 {
        match self {
            SignMode::Assortative => t,
            SignMode::Disassortative => -t,
        }
    }
}

fn check_t_open_unit(t: f64) -> Result<()> {
    if !(0.0..1.0).contains(&t) || !t.is_finite() {
        return Err(SignetError::InvalidParameter(format!(
            "t = {t} outside [0, 1): the contiguous-regime formulas are singular at t >= 1"
        )));
    }
    Ok(())
}

/// Asymptotic null variance of the likelihood surrogate:
/// (1/2)[-log(1-t^2) - t^2 - t^4/2].
pub fn sigma_sq(t: f64) -> Result<f64> {
    check_t_open_unit(t)?;
    let t2 = t * t;
    Ok(0.5 * (-(1.0 - t2).ln() - t2 - t2 * t2 / 2.0))
}

/// Asymptotic null variance of the odd-only statistic:
/// (1/4)[-log((1-t^2)/(1+t^2)) - 2 t^2].
pub fn sigma1_sq(t: f64) -> Result<f64> {
    check_t_open_unit(t)?;
    let t2 = t * t;
    Ok(0.25 * (-((1.0 - t2) / (1.0 + t2)).ln() - 2.0 * t2))
}

/// Truncation of sigma^2 at degree k_n: (1/2) sum_{r=3}^{k_n} t^{2r}/r.
pub fn sigma_sq_truncated(t: f64, k_n: usize) -> f64 {
    let t2 = t * t;
    0.5 * (3..=k_n).map(|r| t2.powi(r as i32) / r as f64).sum::<f64>()
}

/// Truncation of sigma_1^2 at degree k_n (odd r only).
pub fn sigma1_sq_truncated(t: f64, k_n: usize) -> f64 {
    let t2 = t * t;
    0.5 * (3..=k_n).step_by(2).map(|r| t2.powi(r as i32) / r as f64).sum::<f64>()
}

/// Null variance of the adaptive odd statistic truncated at k_n:
/// sum_r 1 / ((4r+2) (log(2r+1))^{1+2 eps}).
pub fn adaptive_odd_variance(k_n: usize, epsilon: f64) -> f64 {
    let mut acc = 0.0;
    let mut r = 1;
    while 2 * r + 1 <= k_n {
        let m = (2 * r + 1) as f64;
        acc += 1.0 / (2.0 * m * m.ln().powf(1.0 + 2.0 * epsilon));
        r += 1;
    }
    acc
}

/// Null variance of the adaptive all-trace statistic truncated at k_n:
/// sum_{r=3}^{k_n} 1 / (2r (log r)^{1+2 eps}).
pub fn adaptive_all_variance(k_n: usize, epsilon: f64) -> f64 {
    (3..=k_n)
        .map(|r| {
            let rf = r as f64;
            1.0 / (2.0 * rf * rf.ln().powf(1.0 + 2.0 * epsilon))
        })
        .sum()
}

/// Limiting alternative mean of the adaptive odd statistic for t < 1,
/// truncated at k_n (diverges as k_n grows when t >= 1).
pub fn adaptive_odd_mean_shift(t: f64, epsilon: f64, k_n: usize) -> f64 {
    let mut acc = 0.0;
    let mut r = 1;
    while 2 * r + 1 <= k_n {
        let m = (2 * r + 1) as f64;
        acc += t.powi(2 * r as i32 + 1) / (2.0 * m * m.ln().powf(0.5 + epsilon));
        r += 1;
    }
    acc
}

/// Largest power achievable by a level-alpha test at signal t:
/// Phi(-z_alpha + sigma(t)).
pub fn optimal_power(alpha: f64, t: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&alpha) || alpha == 0.0 {
        return Err(SignetError::InvalidParameter(format!("alpha = {alpha} outside (0, 1)")));
    }
    let z = phi_inv(1.0 - alpha)?;
    Ok(phi(-z + sigma_sq(t)?.sqrt()))
}

/// Asymptotic power of the odd-only statistic: Phi(-z_alpha + sigma_1(t)).
pub fn optimal_power_odd(alpha: f64, t: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&alpha) || alpha == 0.0 {
        return Err(SignetError::InvalidParameter(format!("alpha = {alpha} outside (0, 1)")));
    }
    let z = phi_inv(1.0 - alpha)?;
    Ok(phi(-z + sigma1_sq(t)?.sqrt()))
}

// --- null-mean machinery for even traces -----------------------------------

/// B_j = alpha_{1,2j} + alpha_{2,2j} rho4(p) [+ alpha_3 term] - binom(j+1,2) psi_{2j},
/// the expected bracket of the even-trace decomposition; B_1 = -1 since T_2 = 0.
fn bracket_f64(j: usize, p_ref: f64) -> f64 {
    if j == 1 {
        return -1.0;
    }
    let pairs = bigint_to_f64(&binomial(j as u64 + 1, 2));
    bigint_to_f64(&alpha1(j)) + bigint_to_f64(&alpha2(j)) * bernoulli_fourth_moment_ratio(p_ref)
        - pairs * bigint_to_f64(&catalan_psi(2 * j))
}

fn bracket_rational(j: usize, p_ref: &BigRational) -> BigRational {
    if j == 1 {
        return -BigRational::one();
    }
    let one = BigRational::one();
    let pq = p_ref * (&one - p_ref);
    // rho4 = (1 - 3 p (1-p)) / (p (1-p)), exact in rationals.
    let rho4 = (&one - BigRational::from_i64(3).unwrap() * &pq) / &pq;
    BigRational::from(alpha1(j)) + BigRational::from(alpha2(j)) * rho4
        - BigRational::from(binomial(j as u64 + 1, 2) * catalan_psi(2 * j))
}

/// Exact-rational E_0[Tr P_m] for even m (coefficient reading):
/// sum_j P_m[2j] B_j. Rational arithmetic sidesteps the catastrophic
/// cancellation between the alternating Chebyshev coefficients.
pub fn expected_tr_p_even_rational(m: usize, p_ref: f64) -> Result<f64> {
    if m % 2 == 1 || m < 2 {
        return Err(SignetError::InvalidParameter(format!("even degree required, got {m}")));
    }
    let p = BigRational::from_f64(p_ref)
        .ok_or_else(|| SignetError::InvalidParameter(format!("p_ref = {p_ref} not finite")))?;
    let poly = chebyshev_poly(m);
    let mut acc = BigRational::zero();
    for j in 1..=m / 2 {
        let c = poly.coeff(2 * j);
        if c.is_zero() {
            continue;
        }
        acc += BigRational::from(c) * bracket_rational(j, &p);
    }
    acc.to_f64()
        .ok_or_else(|| SignetError::Numerical("expected trace does not fit in f64".into()))
}

/// E_0[Tr P_m] for even m with the bracket expectations supplied per mode
/// (MonteCarlo / ExactSmall refine the low orders; plug-in covers the rest).
pub fn expected_tr_p_even(n: usize, p_ref: f64, m: usize, mode: &TCorrectionMode) -> Result<f64> {
    if m % 2 == 1 || m < 2 {
        return Err(SignetError::InvalidParameter(format!("even degree required, got {m}")));
    }
    let poly = chebyshev_poly(m);
    let mut acc = 0.0;
    for j in 1..=m / 2 {
        let coeff = poly.coeff_f64(2 * j);
        if coeff == 0.0 {
            continue;
        }
        let e_t = if j == 1 {
            0.0
        } else {
            match mode {
                TCorrectionMode::ExactSmall if j <= 3 => expected_t(j, n, p_ref, mode)?,
                TCorrectionMode::MonteCarlo { .. } if j <= 4 => expected_t(j, n, p_ref, mode)?,
                _ => expected_t(j, n, p_ref, &TCorrectionMode::PlugInExpectation)?,
            }
        };
        let pairs = bigint_to_f64(&binomial(j as u64 + 1, 2));
        acc += coeff * (e_t - pairs * bigint_to_f64(&catalan_psi(2 * j)));
    }
    Ok(acc)
}

/// Null mean of Tr A_cen^{2k}: n psi_{2k} - binom(k+1,2) psi_{2k} + E[T_{2k}].
pub fn null_mean_even_trace(n: usize, p_ref: f64, k: usize, mode: &TCorrectionMode) -> Result<f64> {
    if k < 2 {
        return Err(SignetError::InvalidParameter(format!("k = {k} < 2")));
    }
    let psi = bigint_to_f64(&catalan_psi(2 * k));
    let pairs = bigint_to_f64(&binomial(k as u64 + 1, 2));
    Ok((n as f64 - pairs) * psi + expected_t(k, n, p_ref, mode)?)
}

/// How alpha_3-order terms enter the centering constant.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub enum MuMode {
    /// Deterministic series from exact Bernoulli moments (no alpha_3 term).
    ClosedForm,
    /// Refine the low-order bracket expectations by null-model simulation.
    WithAlpha3Mc { reps: usize, seed: u64 },
}

const MU_MAX_TERMS: usize = 200;
const MU_TERM_TOL: f64 = 1e-12;

/// Deterministic centering constant for the all-trace statistic. Computed as
/// t^2/4 + (1/2) sum_j (s^{2j} / 2j) B_j with s = t/(1+t^2); the series is
/// truncated when a term falls below 1e-12 or at 200 terms.
pub fn mu_npt(n: usize, p_ref: f64, t: f64, mode: &MuMode) -> Result<f64> {
    check_t_open_unit(t)?;
    if p_ref <= 0.0 || p_ref >= 1.0 {
        return Err(SignetError::InvalidParameter(format!("p_ref = {p_ref} outside (0, 1)")));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    let mc_brackets: Vec<(usize, f64)> = match mode {
        MuMode::ClosedForm => Vec::new(),
        MuMode::WithAlpha3Mc { reps, seed } => {
            let mut v = Vec::new();
            for j in 2..=4usize {
                let mc = TCorrectionMode::MonteCarlo { reps: *reps, seed: seed.wrapping_add(j as u64) };
                let pairs = bigint_to_f64(&binomial(j as u64 + 1, 2));
                let e_t = expected_t(j, n, p_ref, &mc)?;
                v.push((j, e_t - pairs * bigint_to_f64(&catalan_psi(2 * j))));
            }
            v
        }
    };
    let s = t / (1.0 + t * t);
    let s2 = s * s;
    let mut weight = 1.0;
    let mut acc = 0.0;
    for j in 1..=MU_MAX_TERMS {
        weight *= s2;
        let bracket = mc_brackets
            .iter()
            .find(|(jj, _)| *jj == j)
            .map(|(_, b)| *b)
            .unwrap_or_else(|| bracket_f64(j, p_ref));
        let term = weight / (2.0 * j as f64) * bracket;
        acc += term;
        if j > 4 && term.abs() < MU_TERM_TOL {
            break;
        }
    }
    Ok(t * t / 4.0 + 0.5 * acc)
}

/// Independent high-precision summation of the ClosedForm mu series in exact
/// rational arithmetic (oracle for regression tests).
pub fn mu_npt_rational_oracle(p_ref: f64, t: f64, terms: usize) -> Result<f64> {
    check_t_open_unit(t)?;
    let tq = BigRational::from_f64(t)
        .ok_or_else(|| SignetError::InvalidParameter("t not finite".into()))?;
    let p = BigRational::from_f64(p_ref)
        .ok_or_else(|| SignetError::InvalidParameter("p_ref not finite".into()))?;
    let one = BigRational::one();
    let s = &tq / (&one + &tq * &tq);
    let s2 = &s * &s;
    let mut weight = BigRational::one();
    let mut acc = BigRational::zero();
    for j in 1..=terms {
        weight *= &s2;
        let term = &weight / BigRational::from_i64(2 * j as i64).unwrap() * bracket_rational(j, &p);
        acc += term;
    }
    let total = &tq * &tq / BigRational::from_i64(4).unwrap()
        + acc / BigRational::from_i64(2).unwrap();
    total.to_f64().ok_or_else(|| SignetError::Numerical("mu oracle overflow".into()))
}

/// Which reading of the correction weights the adaptive-all centering uses.
/// `Coefficient` treats P_{2r}[2j] as the monomial coefficient (consistent
/// with the even-cycle construction and exactly centering the statistic);
/// `Evaluated` is the literal polynomial-value reading, kept behind this
/// switch so calibration experiments can compare the two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum ChebyshevReading {
    Coefficient,
    Evaluated,
}

/// Centering constant for the adaptive all-trace statistic: the null mean of
/// the weighted even traces, truncated at the same k_n as the statistic.
pub fn bar_mu_na(
    n: usize,
    p_ref: f64,
    epsilon: f64,
    k_n: usize,
    mode: &TCorrectionMode,
    reading: ChebyshevReading,
) -> Result<f64> {
    if !(0.0..=0.5).contains(&epsilon) || epsilon == 0.0 {
        return Err(SignetError::InvalidParameter(format!("epsilon = {epsilon} outside (0, 1/2]")));
    }
    if p_ref <= 0.0 || p_ref >= 1.0 {
        return Err(SignetError::InvalidParameter(format!("p_ref = {p_ref} outside (0, 1)")));
    }
    let mut acc = 0.0;
    for m in (4..=k_n).step_by(2) {
        let weight = 1.0 / (2.0 * m as f64 * (m as f64).ln().powf(0.5 + epsilon));
        let expected = match reading {
            ChebyshevReading::Coefficient => expected_tr_p_even(n, p_ref, m, mode)?,
            ChebyshevReading::Evaluated => {
                // literal reading: weights are P_m evaluated at 2j
                let poly = chebyshev_poly(m);
                let mut s = 0.0;
                for j in 1..=m / 2 {
                    let val = poly.eval_f64(2.0 * j as f64);
                    let e_t = if j == 1 {
                        0.0
                    } else {
                        expected_t(j, n, p_ref, &TCorrectionMode::PlugInExpectation)?
                    };
                    let pairs = bigint_to_f64(&binomial(j as u64 + 1, 2));
                    s += val * (e_t - pairs * bigint_to_f64(&catalan_psi(2 * j)));
                }
                s
            }
        };
        acc += weight * expected;
    }
    Ok(acc)
}

// --- the statistics ---------------------------------------------------------

/// All-trace likelihood-matching statistic minus its centering constant:
/// sum_{r=3}^{k_n} t^r Tr P_r / (2r) - mu_value.
pub fn stat_la(
    spectrum: &Spectrum,
    t: f64,
    k_n: usize,
    mu_value: f64,
    sign: SignMode,
) -> Result<f64> {
    if t <= 0.0 || t >= 1.0 || !t.is_finite() {
        return Err(SignetError::InvalidParameter(format!("t = {t} outside (0, 1)")));
    }
    if k_n < 3 {
        return Err(SignetError::InvalidParameter(format!("k_n = {k_n} < 3")));
    }
    let te = sign.t_effective(t);
    let mut acc = 0.0;
    for r in 3..=k_n {
        acc += te.powi(r as i32) * chebyshev_lss(spectrum, r) / (2.0 * r as f64);
    }
    Ok(acc - mu_value)
}

/// Odd-trace statistic: sum_{r=1}^{(k_n-1)/2} t^{2r+1} Tr P_{2r+1} / (2(2r+1)).
pub fn stat_lo(spectrum: &Spectrum, t: f64, k_n: usize, sign: SignMode) -> Result<f64> {
    if t <= 0.0 || t >= 1.0 || !t.is_finite() {
        return Err(SignetError::InvalidParameter(format!("t = {t} outside (0, 1)")));
    }
    if k_n < 3 {
        return Err(SignetError::InvalidParameter(format!("k_n = {k_n} < 3")));
    }
    let te = sign.t_effective(t);
    let mut acc = 0.0;
    let mut m = 3;
    while m <= k_n {
        acc += te.powi(m as i32) * chebyshev_lss(spectrum, m) / (2.0 * m as f64);
        m += 2;
    }
    Ok(acc)
}

/// Adaptive odd statistic: sum_r Tr P_{2r+1} / ((4r+2) (log(2r+1))^{1/2+eps});
/// disassortative flips the overall sign.
pub fn stat_adaptive_odd(
    spectrum: &Spectrum,
    epsilon: f64,
    k_n: usize,
    sign: SignMode,
) -> Result<f64> {
    if !(0.0..=0.5).contains(&epsilon) || epsilon == 0.0 {
        return Err(SignetError::InvalidParameter(format!("epsilon = {epsilon} outside (0, 1/2]")));
    }
    if k_n < 3 {
        return Err(SignetError::InvalidParameter(format!("k_n = {k_n} < 3")));
    }
    let mut acc = 0.0;
    let mut m = 3;
    while m <= k_n {
        let mf = m as f64;
        acc += chebyshev_lss(spectrum, m) / (2.0 * mf * mf.ln().powf(0.5 + epsilon));
        m += 2;
    }
    Ok(match sign {
        SignMode::Assortative => acc,
        SignMode::Disassortative => -acc,
    })
}

/// Adaptive all-trace statistic:
/// sum_{r=3}^{k_n} Tr P_r / (2r (log r)^{1/2+eps}) - bar_mu_value;
/// disassortative multiplies the r-th term by (-1)^r.
pub fn stat_adaptive_all(
    spectrum: &Spectrum,
    epsilon: f64,
    k_n: usize,
    bar_mu_value: f64,
    sign: SignMode,
) -> Result<f64> {
    if !(0.0..=0.5).contains(&epsilon) || epsilon == 0.0 {
        return Err(SignetError::InvalidParameter(format!("epsilon = {epsilon} outside (0, 1/2]")));
    }
    if k_n < 3 {
        return Err(SignetError::InvalidParameter(format!("k_n = {k_n} < 3")));
    }
    let mut acc = 0.0;
    for r in 3..=k_n {
        let rf = r as f64;
        let sgn = match sign {
            SignMode::Assortative => 1.0,
            SignMode::Disassortative => {
                if r % 2 == 1 {
                    -1.0
                } else {
                    1.0
                }
            }
        };
        acc += sgn * chebyshev_lss(spectrum, r) / (2.0 * rf * rf.ln().powf(0.5 + epsilon));
    }
    Ok(acc - bar_mu_value)
}

/// Brute-force likelihood surrogate: sum_{r=3}^{k_max} t^r C_{n,r} / (2r).
/// Oracle statistic for cross-checking the spectral path on small graphs.
pub fn stat_lc(
    graph: &GraphSample,
    p_ref: f64,
    t: f64,
    k_max: usize,
    sign: SignMode,
) -> Result<f64> {
    if t <= 0.0 || t >= 1.0 || !t.is_finite() {
        return Err(SignetError::InvalidParameter(format!("t = {t} outside (0, 1)")));
    }
    let te = sign.t_effective(t);
    let mut acc = 0.0;
    for r in 3..=k_max {
        acc += te.powi(r as i32) * signed_cycle_bruteforce(graph, p_ref, r)? / (2.0 * r as f64);
    }
    Ok(acc)
}

// --- covariance matrices and mean shifts ------------------------------------

/// Null covariance matrix of a vector of traces.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SigmaMatrix {
    /// Half-degrees: entry i corresponds to the trace of power 2 k_i + 1
    /// (odd family) or 2 k_i (even family).
    pub ks: Vec<usize>,
    pub entries: Vec<Vec<f64>>,
}

/// Covariance of odd power traces: entry (i, j) =
/// sum_{r odd >= 3} 2 f(2k_i+1, r) f(2k_j+1, r) (2k_i+1)(2k_j+1) / r.
pub fn sigma_matrix_odd(ks: &[usize]) -> SigmaMatrix {
    let l = ks.len();
    let mut entries = vec![vec![0.0; l]; l];
    for i in 0..l {
        for j in i..l {
            let mi = 2 * ks[i] + 1;
            let mj = 2 * ks[j] + 1;
            let mut acc = 0.0;
            let mut r = 3;
            while r <= mi.min(mj) {
                let fi = bigint_to_f64(&crate::combinatorics::fk_coefficient(mi, r));
                let fj = bigint_to_f64(&crate::combinatorics::fk_coefficient(mj, r));
                acc += 2.0 * fi * fj * (mi as f64) * (mj as f64) / r as f64;
                r += 2;
            }
            entries[i][j] = acc;
            entries[j][i] = acc;
        }
    }
    SigmaMatrix { ks: ks.to_vec(), entries }
}

/// Covariance of centered even power traces: entry (i, j) =
/// sum_{r even >= 4} 2 f(2k_i, r) f(2k_j, r) (2k_i)(2k_j) / r
/// + 2 k_i k_j psi_{2k_i} psi_{2k_j} Var[(x-p)^2]/(p(1-p))^2.
pub fn sigma_matrix_even(ks: &[usize], p_ref: f64) -> Result<SigmaMatrix> {
    if p_ref <= 0.0 || p_ref >= 1.0 {
        return Err(SignetError::InvalidParameter(format!("p_ref = {p_ref} outside (0, 1)")));
    }
    let ratio = bernoulli_var_ratio(p_ref);
    let l = ks.len();
    let mut entries = vec![vec![0.0; l]; l];
    for i in 0..l {
        for j in i..l {
            let mi = 2 * ks[i];
            let mj = 2 * ks[j];
            let mut acc = 0.0;
            let mut r = 4;
            while r <= mi.min(mj) {
                let fi = bigint_to_f64(&crate::combinatorics::fk_coefficient(mi, r));
                let fj = bigint_to_f64(&crate::combinatorics::fk_coefficient(mj, r));
                acc += 2.0 * fi * fj * (mi as f64) * (mj as f64) / r as f64;
                r += 2;
            }
            acc += 2.0
                * (ks[i] as f64)
                * (ks[j] as f64)
                * bigint_to_f64(&catalan_psi(mi))
                * bigint_to_f64(&catalan_psi(mj))
                * ratio;
            entries[i][j] = acc;
            entries[j][i] = acc;
        }
    }
    Ok(SigmaMatrix { ks: ks.to_vec(), entries })
}

/// Alternative mean shift of the odd power trace of degree 2k+1:
/// sum_{r odd >= 3} binom(2k+1, (2k+1+r)/2) t^r. Pass a negative t for the
/// disassortative direction.
pub fn nu_odd(k: usize, t: f64) -> f64 {
    let m = 2 * k + 1;
    let mut acc = 0.0;
    let mut r = 3;
    while r <= m {
        acc += bigint_to_f64(&binomial(m as u64, ((m + r) / 2) as u64)) * t.powi(r as i32);
        r += 2;
    }
    acc
}

// --- decision rule ----------------------------------------------------------

/// Which theoretical power curve annotates a decision.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub enum PowerCurve {
    All,
    OddOnly,
}

#[derive(Debug, Clone, Copy)]
pub struct PowerHint {
    pub t: f64,
    pub curve: PowerCurve,
}

/// Standardized one-sided upper decision.
#[derive(Debug, Clone, serde::Serialize)]
pub struct Decision {
    pub statistic: f64,
    pub null_mean: f64,
    pub null_sd: f64,
    pub z: f64,
    pub p_value: f64,
    pub reject: bool,
    pub theoretical_power: Option<f64>,
}

/// Standardize a statistic against its null law and decide at level alpha;
/// the theoretical power annotation is filled when the signal strength is
/// hypothesized.
pub fn decide(
    statistic: f64,
    null_mean: f64,
    null_sd: f64,
    alpha: f64,
    power_hint: Option<PowerHint>,
) -> Result<Decision> {
    if null_sd <= 0.0 || !null_sd.is_finite() {
        return Err(SignetError::InvalidParameter(format!("null_sd = {null_sd} must be positive")));
    }
    if !(0.0..1.0).contains(&alpha) || alpha == 0.0 {
        return Err(SignetError::InvalidParameter(format!("alpha = {alpha} outside (0, 1)")));
    }
    let z = (statistic - null_mean) / null_sd;
    let p_value = 1.0 - phi(z);
    let theoretical_power = match power_hint {
        Some(PowerHint { t, curve }) if t < 1.0 => Some(match curve {
            PowerCurve::All => optimal_power(alpha, t)?,
            PowerCurve::OddOnly => optimal_power_odd(alpha, t)?,
        }),
        _ => None,
    };
    Ok(Decision { statistic, null_mean, null_sd, z, p_value, reject: p_value < alpha, theoretical_power })
}

/// Density of the standard normal (plot annotations).
pub fn std_normal_pdf(x: f64) -> f64 {
    std_normal().pdf(x)
}
