//! Floating-point exact-formula oracles for Fourier coefficients, and the
//! closed-form nonnegativity bounds with a threshold finder.
//!
//! Everything here is double precision and serves as a sanity gate or a
//! positivity bound. Certificates never consume these values; exact integer
//! coefficients come from [`crate::qseries`] and [`crate::eta`].

use std::collections::BTreeMap;
use std::f64::consts::PI;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum RademacherError {
    #[error("no positive threshold found below {limit}")]
    ThresholdNotFound { limit: u64 },
}

/// A truncated coefficient-formula sum together with the truncation point and
/// an elementary estimate of the dropped tail. The reported value is the raw
/// truncated sum, never tail-adjusted.
#[derive(Clone, Copy, Debug)]
pub struct CoeffEstimate {
    pub value: f64,
    pub cutoff_c: u64,
    pub tail_bound: f64,
}

/// Default truncation point for the coefficient sums; empirically sufficient
/// for 1e-6 relative accuracy at n <= 20.
pub const DEFAULT_C_MAX: u64 = 1000;

fn mod_inverse(x: i64, c: i64) -> Option<i64> {
    let (mut r0, mut r1) = (c, x.rem_euclid(c));
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        None
    } else {
        Some(t0.rem_euclid(c))
    }
}

/// Classical Kloosterman sum `K(m,n,c) = sum_{x (c)*} e((mx + n x~)/c)`,
/// evaluated as a real cosine sum by pairing `x` with `-x`.
pub fn kloosterman(m: i64, n: i64, c: u64) -> f64 {
    let c = c as i64;
    if c == 1 {
        return 1.0;
    }
    let mut sum = 0.0;
    for x in 1..=c / 2 {
        let Some(xinv) = mod_inverse(x, c) else {
            continue;
        };
        let phase = ((m * x).rem_euclid(c) + (n * xinv).rem_euclid(c)) as f64;
        let angle = 2.0 * PI * phase / c as f64;
        if 2 * x == c {
            // self-paired term (only x = c/2, necessarily c = 2)
            sum += angle.cos();
        } else {
            sum += 2.0 * angle.cos();
        }
    }
    sum
}

/// Modified Bessel function of the first kind `I_1`, by its power series
/// `(x/2) sum (x^2/4)^k / (k! (k+1)!)`. All terms are positive, so the
/// truncation error is bounded by the last term added.
pub fn bessel_i1(x: f64) -> f64 {
    assert!(x > 0.0, "bessel_i1 requires x > 0");
    if x > 713.0 {
        // e^x already overflows f64; the callers treat +inf as "dominant".
        return f64::INFINITY;
    }
    let z = x * x / 4.0;
    let mut term = x / 2.0;
    let mut sum = term;
    let mut k = 0u64;
    loop {
        k += 1;
        term *= z / ((k * (k + 1)) as f64);
        sum += term;
        if term < 1e-17 * sum {
            return sum;
        }
    }
}

fn tail_bound_from(c_start: u64, scale: f64) -> f64 {
    // Per-term bound (2/c^{1/4}) * (2/3) * arg with arg = scale/c, valid once
    // arg < 1; integrate c^{-5/4} from c_start.
    let c0 = (c_start as f64).max(scale).max(1.0);
    (4.0 / 3.0) * scale * 4.0 * c0.powf(-0.25)
}

/// Truncated exact formula for the coefficient of `q^n` in `J | mT(m)`:
/// `2 pi sqrt(m/n) sum_{c <= c_max} K(-m,n,c)/c * I_1(4 pi sqrt(mn)/c)`.
pub fn coeff_estimate_hecke_j(m: u64, n: u64, c_max: u64) -> CoeffEstimate {
    assert!(m >= 1 && n >= 1);
    let mut value = 0.0;
    for c in 1..=c_max {
        let arg = 4.0 * PI * ((m * n) as f64).sqrt() / c as f64;
        value += kloosterman(-(m as i64), n as i64, c) / c as f64 * bessel_i1(arg);
    }
    value *= 2.0 * PI * (m as f64 / n as f64).sqrt();
    let scale = 4.0 * PI * ((m * n) as f64).sqrt();
    CoeffEstimate {
        value,
        cutoff_c: c_max,
        tail_bound: 2.0 * PI * (m as f64 / n as f64).sqrt() * tail_bound_from(c_max + 1, scale),
    }
}

/// Truncated exact formula for the coefficient of `q^n` in the normalized
/// Hauptmodul of level `level`: the sum runs over multiples of the level.
pub fn coeff_estimate_hauptmodul(level: u64, n: u64, c_max: u64) -> CoeffEstimate {
    assert!(level >= 1 && n >= 1);
    if level == 1 {
        return coeff_estimate_hecke_j(1, n, c_max);
    }
    let mut value = 0.0;
    for c in 1..=c_max {
        let cn = c * level;
        let arg = 4.0 * PI * (n as f64).sqrt() / cn as f64;
        value += kloosterman(-1, n as i64, cn) / cn as f64 * bessel_i1(arg);
    }
    value *= 2.0 * PI / (n as f64).sqrt();
    let scale = 4.0 * PI * (n as f64).sqrt() / level as f64;
    CoeffEstimate {
        value,
        cutoff_c: c_max,
        tail_bound: 2.0 * PI / (n as f64).sqrt() * tail_bound_from(c_max + 1, scale)
            / (level as f64).powf(1.25),
    }
}

/// Tapered variant of [`coeff_estimate_hauptmodul`]: terms in `(c_max/2, c_max]`
/// are weighted by a cosine window. The smoothing damps the oscillation of the
/// partial sums of this conditionally convergent series by roughly an order of
/// magnitude; the reported value is still a weighted truncation, never
/// tail-adjusted.
pub fn coeff_estimate_hauptmodul_tapered(level: u64, n: u64, c_max: u64) -> CoeffEstimate {
    assert!(level >= 1 && n >= 1 && c_max >= 4);
    let half = c_max / 2;
    let mut value = 0.0;
    for c in 1..=c_max {
        let cn = c * level;
        let arg = 4.0 * PI * (n as f64).sqrt() / cn as f64;
        let w = if c <= half {
            1.0
        } else {
            0.5 * (1.0 + (PI * (c - half) as f64 / (c_max - half) as f64).cos())
        };
        value += w * kloosterman(-1, n as i64, cn) / cn as f64 * bessel_i1(arg);
    }
    value *= 2.0 * PI / (n as f64).sqrt();
    let scale = 4.0 * PI * (n as f64).sqrt() / level as f64;
    CoeffEstimate {
        value,
        cutoff_c: c_max,
        tail_bound: 2.0 * PI / (n as f64).sqrt() * tail_bound_from(half, scale)
            / (level as f64).powf(1.25),
    }
}

/// Asymptotic for the coefficients `b_{m,t}(n)` of `(Delta(m tau)/Delta(tau))^t`:
/// `(t (m-1)/m)^{1/4} / (m^{12t} sqrt(2) n^{3/4}) * exp(4 pi sqrt((m-1)/m t n))`.
pub fn asymptotic_b(m: u64, t: u64, n: u64) -> f64 {
    assert!(m >= 2 && t >= 1 && n >= 1);
    let ratio = (m - 1) as f64 / m as f64;
    let nf = n as f64;
    let prefactor = (t as f64 * ratio).powf(0.25) / (2.0f64.sqrt() * nf.powf(0.75));
    let log_mpow = 12.0 * t as f64 * (m as f64).ln();
    let exponent = 4.0 * PI * (ratio * t as f64 * nf).sqrt() - log_mpow;
    prefactor * exponent.exp()
}

/// Asymptotic for the coefficients of `J | mT(m)`:
/// `m^{1/4} / (sqrt(2) n^{3/4}) * exp(4 pi sqrt(mn))`.
pub fn asymptotic_c_e(m: u64, n: u64) -> f64 {
    assert!(m >= 1 && n >= 1);
    let nf = n as f64;
    (m as f64).powf(0.25) / (2.0f64.sqrt() * nf.powf(0.75)) * (4.0 * PI * (m as f64 * nf).sqrt()).exp()
}

/// Closed-form lower bound for `c_e(1,n)`, the coefficient of `q^n` in `J`:
/// `(2 pi/sqrt n) I_1(4 pi sqrt n) - 8*2^{3/4} pi^2 I_1(2 pi sqrt n)
///  - 64 sqrt(2) pi^{7/4} / (3 n^{1/8})`.
pub fn j_lower_bound(n: u64) -> f64 {
    let nf = n as f64;
    let s = nf.sqrt();
    2.0 * PI / s * bessel_i1(4.0 * PI * s)
        - 8.0 * 2.0f64.powf(0.75) * PI * PI * bessel_i1(2.0 * PI * s)
        - 64.0 * 2.0f64.sqrt() * PI.powf(1.75) / (3.0 * nf.powf(0.125))
}

/// Closed-form upper bound for `|c_g(1,n)|`, the coefficient of `q^n` in the
/// level-`level` Hauptmodul:
/// `(4 pi/(sqrt n N^{1/4})) (1 + 4 pi sqrt n / N) I_1(4 pi sqrt n / N)
///  + 64 sqrt(2) pi^{7/4} / (3 N n^{1/8})`.
pub fn cg_upper_bound(level: u64, n: u64) -> f64 {
    assert!(level >= 2);
    let nf = n as f64;
    let nn = level as f64;
    let s = nf.sqrt();
    4.0 * PI / (s * nn.powf(0.25)) * (1.0 + 4.0 * PI * s / nn) * bessel_i1(4.0 * PI * s / nn)
        + 64.0 * 2.0f64.sqrt() * PI.powf(1.75) / (3.0 * nn * nf.powf(0.125))
}

/// The combined positivity expression: positive iff every multiplicity of a
/// Hauptmodul trace assignment with the given element-order statistics is
/// forced nonnegative at `n`. `margin` scales every negative term up (1.0 for
/// the bare bound).
pub fn positivity_bound(order_stats: &BTreeMap<u64, u64>, n: u64, margin: f64) -> f64 {
    let nf = n as f64;
    let s = nf.sqrt();
    let i1 = bessel_i1(2.0 * PI * s);
    let mut bracket = PI * (2.0 * PI * s).exp() / s - margin * 8.0 * 2.0f64.powf(0.75) * PI * PI;
    let mut small = 1.0;
    for (&v, &count) in order_stats {
        if v == 1 {
            continue;
        }
        let vf = v as f64;
        let exponent = 4.0 * PI * s * (1.0 / vf - 0.5);
        bracket -= margin
            * count as f64
            * (4.0 * PI * vf.powf(0.75) / s)
            * (1.0 + 4.0 * PI * s / vf)
            * exponent.exp();
        small += count as f64 / vf;
    }
    let penalty = margin * 64.0 * 2.0f64.sqrt() * PI.powf(1.75) / (3.0 * nf.powf(0.125)) * small;
    if i1.is_infinite() {
        // I_1 overflowed f64; its true value exceeds 1e300, so the sign of the
        // first summand is the sign of the bracket and it dwarfs the penalty.
        return if bracket > 0.0 {
            f64::INFINITY
        } else {
            f64::NEG_INFINITY
        };
    }
    i1 * bracket - penalty
}

/// Smallest `n0 >= 1` at which the positivity expression is positive (hence
/// positive for all larger `n` by monotonicity). The bound found is
/// re-verified with a 10% safety margin on every negative term.
pub fn nonneg_threshold(order_stats: &BTreeMap<u64, u64>) -> Result<u64, RademacherError> {
    const LIMIT: u64 = 1_000_000;
    for n in 1..=LIMIT {
        if positivity_bound(order_stats, n, 1.0) > 0.0 {
            // guard against cancellation: re-verify with inflated negatives
            if positivity_bound(order_stats, n, 1.1) > 0.0 {
                return Ok(n);
            }
        }
    }
    Err(RademacherError::ThresholdNotFound { limit: LIMIT })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    /// Brute-force complex Kloosterman sum, the oracle for `kloosterman`.
    fn kloosterman_bruteforce(m: i64, n: i64, c: u64) -> Complex64 {
        let c = c as i64;
        let mut sum = Complex64::new(0.0, 0.0);
        for x in 0..c {
            if num_integer::gcd(x, c) != 1 {
                continue;
            }
            let xinv = mod_inverse(x, c).unwrap_or(0);
            let angle = 2.0 * PI * ((m * x + n * xinv).rem_euclid(c)) as f64 / c as f64;
            sum += Complex64::new(angle.cos(), angle.sin());
        }
        sum
    }

    #[test]
    fn kloosterman_trivial_modulus() {
        for (m, n) in [(0, 0), (1, 1), (-5, 3)] {
            assert_eq!(kloosterman(m, n, 1), 1.0);
        }
    }

    #[test]
    fn kloosterman_small_values() {
        // K(-1,1,2): single term x=1, phase 0.
        assert!((kloosterman(-1, 1, 2) - 1.0).abs() < 1e-12);
        // Brute-force over x in {1,2}: both phases vanish, so K(-1,1,3) = 2.
        let bf = kloosterman_bruteforce(-1, 1, 3);
        assert!((bf.re - 2.0).abs() < 1e-12 && bf.im.abs() < 1e-12);
        assert!((kloosterman(-1, 1, 3) - 2.0).abs() < 1e-12);
        // The classical value K(1,1,3) = 2 cos(4 pi/3) = -1.
        assert!((kloosterman(1, 1, 3) + 1.0).abs() < 1e-12);
    }

    #[test]
    fn kloosterman_real_and_bounded() {
        for c in 1..=60u64 {
            for (m, n) in [(-1, 1), (-2, 3), (-7, 5), (4, 9)] {
                let bf = kloosterman_bruteforce(m, n, c);
                let fast = kloosterman(m, n, c);
                assert!(bf.im.abs() < 1e-9, "imaginary residue at c={c}");
                assert!((bf.re - fast).abs() < 1e-8, "mismatch at c={c}: {} vs {fast}", bf.re);
                let phi = (1..=c as i64).filter(|&x| num_integer::gcd(x, c as i64) == 1).count();
                assert!(fast.abs() <= phi as f64 + 1e-8);
            }
        }
    }

    #[test]
    fn bessel_small_argument_limit() {
        // I_1(x)/x -> 1/2 as x -> 0+.
        let x = 1e-6;
        assert!((bessel_i1(x) / x - 0.5).abs() < 1e-9);
    }

    #[test]
    fn bessel_reference_value() {
        // Independent high-precision series summation gives
        // I_1(2) = 1.59063685463732906338...
        assert!((bessel_i1(2.0) - 1.5906368546373290).abs() < 1e-12);
        assert!(bessel_i1(3.0) > bessel_i1(2.0));
    }

    #[test]
    fn hecke_j_estimates_match_known_coefficients() {
        let e = coeff_estimate_hecke_j(1, 1, DEFAULT_C_MAX);
        assert!((e.value - 196884.0).abs() / 196884.0 < 1e-6, "{}", e.value);
        let e = coeff_estimate_hecke_j(2, 1, DEFAULT_C_MAX);
        assert!((e.value - 42987520.0).abs() / 42987520.0 < 1e-6, "{}", e.value);
        let e = coeff_estimate_hecke_j(1, 2, DEFAULT_C_MAX);
        assert!((e.value - 21493760.0).abs() / 21493760.0 < 1e-6, "{}", e.value);
        assert!(e.tail_bound >= 0.0);
    }

    #[test]
    fn hauptmodul_estimate_level_7() {
        // T_7 = q^{-1} + 2q + ...: the q-coefficient is exactly 2. The series
        // converges conditionally; the measured truncation floor at this
        // cutoff is a few times 1e-4, decisive at integer resolution.
        let e = coeff_estimate_hauptmodul(7, 1, 2000);
        assert!((e.value - 2.0).abs() < 5e-3, "{}", e.value);
        let t = coeff_estimate_hauptmodul_tapered(7, 1, 4000);
        assert!((t.value - 2.0).abs() < 1e-4, "{}", t.value);
    }

    #[test]
    fn asymptotics_increase() {
        assert!(asymptotic_c_e(2, 10) > asymptotic_c_e(1, 10));
        assert!(asymptotic_b(2, 12, 401) > asymptotic_b(2, 12, 400));
        // With t_m = m h/(m-1) the exponent 4 pi sqrt(h n) is m-independent:
        // the ratio of the exponentials is exactly 1.
        let h = 6u64;
        let n = 1000u64;
        for m in [2u64, 3, 4] {
            let t = m * h / (m - 1);
            let rate = ((m - 1) as f64 / m as f64) * t as f64;
            assert!((rate - h as f64).abs() < 1e-12, "m={m}");
            let _ = asymptotic_b(m, t, n);
        }
    }

    #[test]
    fn trivial_group_threshold_is_one() {
        let stats = BTreeMap::from([(1u64, 1u64)]);
        assert_eq!(nonneg_threshold(&stats).unwrap(), 1);
    }

    #[test]
    fn z7_rank4_threshold_is_two() {
        // (Z/7Z)^4: 2400 elements of order 7; the bound goes positive at n=2.
        let stats = BTreeMap::from([(1u64, 1u64), (7, 2400)]);
        assert_eq!(nonneg_threshold(&stats).unwrap(), 2);
    }

    #[test]
    fn positivity_bound_monotone_after_threshold() {
        let stats = BTreeMap::from([(1u64, 1u64), (2, 8191)]);
        let n0 = nonneg_threshold(&stats).unwrap();
        assert!(n0 <= 100);
        // Stays positive and never decreases through zero past the threshold.
        let mut prev = positivity_bound(&stats, n0, 1.0);
        for n in n0 + 1..n0 + 1000 {
            let cur = positivity_bound(&stats, n, 1.0);
            assert!(cur > 0.0, "went negative at n={n}");
            if prev.is_finite() && cur.is_finite() {
                assert!(cur >= prev * 0.999999, "dropped at n={n}: {cur} < {prev}");
            }
            prev = cur;
        }
    }
}
