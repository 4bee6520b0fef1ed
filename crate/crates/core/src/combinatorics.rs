//! Exact-integer coefficients behind every statistic: Catalan numbers,
//! Fueredi--Komlos counts, rescaled Chebyshev polynomials, the cycle-to-trace
//! conversion matrix and its inverse, and the alpha constants of the even-trace
//! remainder. Everything here is arbitrary precision; magnitudes like
//! binom(40, 20) overflow 64-bit.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact binomial coefficient, 0 outside the triangle.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// psi_k: the (k/2)-th Catalan number for even k, zero for odd k.
pub fn catalan_psi(k: usize) -> BigInt {
    if k % 2 == 1 {
        return BigInt::zero();
    }
    let h = (k / 2) as u64;
    binomial(k as u64, h) / BigInt::from(h + 1)
}

/// f(m, r): number of equivalence classes of FK words of length m with an
/// acronym of length r. Nonzero only when 1 <= r <= m and m - r is even,
/// in which case f(m, r) * m / r = binom(m, (m + r) / 2).
pub fn fk_coefficient(m: usize, r: usize) -> BigInt {
    if r < 1 || r > m || (m - r) % 2 == 1 {
        return BigInt::zero();
    }
    let num = binomial(m as u64, ((m + r) / 2) as u64) * BigInt::from(r);
    exact_div(num, BigInt::from(m))
}

fn exact_div(a: BigInt, b: BigInt) -> BigInt {
    let q = &a / &b;
    debug_assert!((a - &q * &b).is_zero(), "division expected to be exact");
    q
}

/// Rescaled Chebyshev polynomial P_m with integer coefficients:
/// P_0 = 2, P_1 = x, P_{m+1} = x P_m - P_{m-1}. Satisfies
/// P_m(z + 1/z) = z^m + z^{-m} and P_m(2 cos a) = 2 cos(m a).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChebyshevPoly {
    pub degree: usize,
    /// coeffs[j] is the coefficient of x^j; length degree + 1.
    pub coeffs: Vec<BigInt>,
}

impl ChebyshevPoly {
    pub fn coeff(&self, j: usize) -> BigInt {
        self.coeffs.get(j).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeff_f64(&self, j: usize) -> f64 {
        self.coeff(j).to_f64().unwrap_or(f64::NAN)
    }

    /// Evaluate at a float argument by Horner's rule (test use only; the
    /// spectral path uses the three-term recurrence instead).
    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }
}

/// Coefficients of P_m via the three-term recurrence.
pub fn chebyshev_poly(m: usize) -> ChebyshevPoly {
    let mut prev = vec![BigInt::from(2)]; // P_0
    if m == 0 {
        return ChebyshevPoly { degree: 0, coeffs: prev };
    }
    let mut cur = vec![BigInt::zero(), BigInt::one()]; // P_1
    for d in 1..m {
        // next = shift(cur) - prev
        let mut next = vec![BigInt::zero(); d + 2];
        for (j, c) in cur.iter().enumerate() {
            next[j + 1] = c.clone();
        }
        for (j, c) in prev.iter().enumerate() {
            next[j] -= c;
        }
        prev = cur;
        cur = next;
    }
    ChebyshevPoly { degree: m, coeffs: cur }
}

/// alpha_{1,2k} = 2^{2k-1} - binom(2k,k)(5k+1)/(2(k+1)) + binom(k+1,2) psi_{2k}
///              - 3 binom(2k,k+2); always an exact integer.
pub fn alpha1(k: usize) -> BigInt {
    let k64 = k as u64;
    let pow = BigInt::one() << (2 * k - 1);
    let central = binomial(2 * k64, k64) * BigInt::from(5 * k64 + 1);
    let central_term = exact_div(central, BigInt::from(2 * (k64 + 1)));
    let pairs = binomial(k64 + 1, 2);
    pow - central_term + pairs * catalan_psi(2 * k) - BigInt::from(3) * binomial(2 * k64, k64 + 2)
}

/// alpha_{2,2k} = binom(2k, k+2).
pub fn alpha2(k: usize) -> BigInt {
    binomial(2 * k as u64, k as u64 + 2)
}

/// Lower-triangular k x k matrix converting odd signed cycles to odd power
/// traces: entry (i, j) for i > j is (2i+1) f(2i+1, 2j+1) / (2j+1)
/// = binom(2i+1, i+j+1), diagonal 1 (indices 1-based over cycle lengths
/// 3, 5, ..., 2k+1).
pub fn d_matrix(k: usize) -> Vec<Vec<BigRational>> {
    let mut m = vec![vec![BigRational::zero(); k]; k];
    for i in 1..=k {
        for j in 1..=i {
            let num = BigInt::from((2 * i + 1) as u64) * fk_coefficient(2 * i + 1, 2 * j + 1);
            m[i - 1][j - 1] = BigRational::new(num, BigInt::from((2 * j + 1) as u64));
        }
    }
    m
}

/// Exact inverse of `d_matrix(k)`: entry (i, j) is the Chebyshev coefficient
/// P_{2i+1}[2j+1].
pub fn d_matrix_inverse(k: usize) -> Vec<Vec<BigInt>> {
    let mut m = vec![vec![BigInt::zero(); k]; k];
    for i in 1..=k {
        let poly = chebyshev_poly(2 * i + 1);
        for j in 1..=i {
            m[i - 1][j - 1] = poly.coeff(2 * j + 1);
        }
    }
    m
}

/// Memoized tables up to a caller-supplied maximum degree.
#[derive(Debug, Clone)]
pub struct CoeffTables {
    pub max_degree: usize,
    pub psi: Vec<BigInt>,
    /// f[m][r] for 0 <= m, r <= max_degree (row 0 and column 0 are zero).
    pub f: Vec<Vec<BigInt>>,
    pub chebyshev: Vec<ChebyshevPoly>,
    pub alpha1: Vec<BigInt>,
    pub alpha2: Vec<BigInt>,
}

impl CoeffTables {
    pub fn up_to(max_degree: usize) -> Self {
        let psi = (0..=max_degree).map(catalan_psi).collect();
        let f = (0..=max_degree)
            .map(|m| (0..=max_degree).map(|r| fk_coefficient(m, r)).collect())
            .collect();
        let chebyshev = (0..=max_degree).map(chebyshev_poly).collect();
        let half = max_degree / 2;
        let alpha1 = (0..=half).map(|k| if k == 0 { BigInt::zero() } else { alpha1(k) }).collect();
        let alpha2 = (0..=half).map(|k| if k == 0 { BigInt::zero() } else { alpha2(k) }).collect();
        CoeffTables { max_degree, psi, f, chebyshev, alpha1, alpha2 }
    }

    pub fn psi_f64(&self, k: usize) -> f64 {
        self.psi[k].to_f64().unwrap_or(f64::NAN)
    }
}

/// Exact rational Taylor coefficients of ((1 - sqrt(1 - 4 z^2)) / (2 z))^r up
/// to z^max_m. Independent series oracle for `fk_coefficient`.
pub fn fk_series_oracle(r: usize, max_m: usize) -> Vec<BigRational> {
    // sqrt(1 - 4 z^2) = sum_k c_k z^{2k}, c_0 = 1,
    // c_k = c_{k-1} * 2(2k - 3) / k  (binomial series with x = -4 z^2).
    let half = max_m / 2 + 1;
    let mut c = vec![BigRational::zero(); half + 1];
    c[0] = BigRational::one();
    for k in 1..=half {
        let prev = c[k - 1].clone();
        c[k] = prev * BigRational::new(BigInt::from(2 * (2 * k as i64 - 3)), BigInt::from(k as i64));
    }
    // g(z) = (1 - sqrt)/(2z) = sum_{j>=0} g_j z^{2j+1}, g_j = -c_{j+1}/2.
    let mut g = vec![BigRational::zero(); max_m + 1];
    for j in 0.. {
        let deg = 2 * j + 1;
        if deg > max_m {
            break;
        }
        g[deg] = -c[j + 1].clone() / BigRational::from(BigInt::from(2));
    }
    // g^r by repeated truncated multiplication.
    let mut acc = vec![BigRational::zero(); max_m + 1];
    acc[0] = BigRational::one();
    for _ in 0..r {
        let mut next = vec![BigRational::zero(); max_m + 1];
        for i in 0..=max_m {
            if acc[i].is_zero() {
                continue;
            }
            for j in 0..=(max_m - i) {
                if g[j].is_zero() {
                    continue;
                }
                let add = &acc[i] * &g[j];
                next[i + j] += add;
            }
        }
        acc = next;
    }
    acc
}

/// The two exact cancellation identities satisfied by even Chebyshev
/// coefficients against Catalan moments, for a given even degree 2k (k >= 2):
/// sum_r P_{2k}[2r] psi_{2r} = 0 and sum_r P_{2k}[2r] r psi_{2r} = 0.
pub fn chebyshev_psi_cancellations(k: usize) -> (BigInt, BigInt) {
    let poly = chebyshev_poly(2 * k);
    let mut s0 = BigInt::zero();
    let mut s1 = BigInt::zero();
    for r in 0..=k {
        let c = poly.coeff(2 * r);
        s0 += &c * catalan_psi(2 * r);
        s1 += &c * BigInt::from(r as u64) * catalan_psi(2 * r);
    }
    (s0, s1)
}

/// Multiply the exact D matrix by its claimed inverse; identity iff correct.
pub fn d_product_is_identity(k: usize) -> bool {
    let d = d_matrix(k);
    let dinv = d_matrix_inverse(k);
    for i in 0..k {
        for j in 0..k {
            let mut acc = BigRational::zero();
            for l in 0..k {
                acc += &d[i][l] * BigRational::from(dinv[l][j].clone());
            }
            let expect = if i == j { BigRational::one() } else { BigRational::zero() };
            if acc != expect {
                return false;
            }
        }
    }
    true
}

/// sum_r f(m, r) <= 2^{m-1} (FK word count bound).
pub fn fk_row_sum_within_bound(m: usize) -> bool {
    let mut sum = BigInt::zero();
    for r in 1..=m {
        sum += fk_coefficient(m, r);
    }
    sum <= (BigInt::one() << (m - 1))
}

pub fn bigint_to_f64(v: &BigInt) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

pub fn is_nonnegative(v: &BigInt) -> bool {
    !v.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_small_values() {
        assert_eq!(catalan_psi(3), BigInt::zero());
        assert_eq!(catalan_psi(0), BigInt::one());
        assert_eq!(catalan_psi(4), BigInt::from(2));
        assert_eq!(catalan_psi(6), BigInt::from(5));
    }

    #[test]
    fn fk_small_values() {
        assert_eq!(fk_coefficient(3, 3), BigInt::one());
        assert_eq!(fk_coefficient(5, 3), BigInt::from(3));
        assert_eq!(fk_coefficient(4, 3), BigInt::zero()); // parity
        assert_eq!(fk_coefficient(4, 5), BigInt::zero()); // r > m
    }

    #[test]
    fn fk_odd_column_one_is_catalan() {
        // f(2j+1, 1) equals the j-th Catalan number.
        for j in 0..8usize {
            assert_eq!(fk_coefficient(2 * j + 1, 1), catalan_psi(2 * j));
        }
    }

    #[test]
    fn chebyshev_small_polys() {
        assert_eq!(chebyshev_poly(0).coeffs, vec![BigInt::from(2)]);
        assert_eq!(chebyshev_poly(2).coeffs, vec![BigInt::from(-2), BigInt::zero(), BigInt::one()]);
        let p3 = chebyshev_poly(3);
        assert_eq!(p3.coeffs, vec![BigInt::zero(), BigInt::from(-3), BigInt::zero(), BigInt::one()]);
    }

    #[test]
    fn chebyshev_parity_and_leading() {
        for m in 1..=20 {
            let p = chebyshev_poly(m);
            assert_eq!(p.coeff(m), BigInt::one());
            for j in 0..=m {
                if (m + j) % 2 == 1 {
                    assert!(p.coeff(j).is_zero(), "parity violated at m={m} j={j}");
                }
            }
        }
    }

    #[test]
    fn chebyshev_trig_identity() {
        // P_m(2 cos a) = 2 cos(m a)
        let theta = std::f64::consts::PI / 5.0;
        for m in 0..=12usize {
            let lhs = chebyshev_poly(m).eval_f64(2.0 * theta.cos());
            let rhs = 2.0 * (m as f64 * theta).cos();
            assert!((lhs - rhs).abs() < 1e-9, "m={m}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn alpha_values() {
        assert_eq!(alpha1(2), BigInt::zero());
        assert_eq!(alpha1(3), BigInt::from(4));
        assert_eq!(alpha2(2), BigInt::one());
        assert_eq!(alpha2(3), BigInt::from(6));
    }

    #[test]
    fn alpha1_matches_binomial_sum() {
        // alpha_{1,2k} also equals sum_{r=3}^{k} (r+1) binom(2k, k+r).
        for k in 2..=12usize {
            let mut s = BigInt::zero();
            for r in 3..=k {
                s += BigInt::from((r + 1) as u64) * binomial(2 * k as u64, (k + r) as u64);
            }
            assert_eq!(alpha1(k), s, "k={k}");
        }
    }

    #[test]
    fn d_matrix_examples() {
        let d = d_matrix(2);
        assert_eq!(d[1][0], BigRational::from(BigInt::from(5)));
        assert_eq!(d[0][0], BigRational::one());
        assert_eq!(d_matrix(1)[0][0], BigRational::one());
        assert_eq!(d_matrix_inverse(1)[0][0], BigInt::one());
        assert!(d_product_is_identity(3));
    }

    #[test]
    fn psi_cancellations_up_to_12() {
        for k in 2..=12 {
            let (s0, s1) = chebyshev_psi_cancellations(k);
            assert!(s0.is_zero() && s1.is_zero(), "k={k}");
        }
    }

    #[test]
    fn series_oracle_agrees_small() {
        for r in 1..=6usize {
            let series = fk_series_oracle(r, 12);
            for m in 1..=12usize {
                let expect = BigRational::from(fk_coefficient(m, r));
                assert_eq!(series[m], expect, "m={m} r={r}");
            }
        }
    }

    #[test]
    fn fk_row_sums_bounded() {
        for m in 1..=20 {
            assert!(fk_row_sum_within_bound(m), "m={m}");
        }
    }

    #[test]
    fn tables_are_consistent() {
        let t = CoeffTables::up_to(12);
        assert_eq!(t.psi[4], BigInt::from(2));
        assert_eq!(t.f[5][3], BigInt::from(3));
        assert_eq!(t.alpha1[3], BigInt::from(4));
        assert_eq!(t.chebyshev[3].coeff(1), BigInt::from(-3));
        assert_eq!(t.psi_f64(6), 5.0);
    }
}
