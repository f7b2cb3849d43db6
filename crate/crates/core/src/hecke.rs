//! Normalized weight-0 Hecke operators on q-expansions, Faber polynomials,
//! and the replicability identity for J.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::qseries::{j_function, QSeries, SeriesError};

#[derive(Debug, Error)]
pub enum HeckeError {
    #[error("insufficient precision for |{m}T({m}): have {have}, need at least {need}")]
    InsufficientPrecision { m: u64, have: i64, need: i64 },
    #[error("m = {m} and n = {n} are not coprime")]
    NotCoprime { m: u64, n: u64 },
    #[error("series is not normalized to q^-1 + 0 + O(q): {0}")]
    NotNormalized(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// `f | mT(m)` coefficientwise: the coefficient of `q^j` in the image is
/// `sum_{ad = m, a | j} d * c(d j / a)`. The result window is
/// `[m * valuation, floor((P-1)/m) + 1)`.
pub fn hecke(f: &QSeries, m: u64) -> Result<QSeries, HeckeError> {
    assert!(m >= 1);
    let mi = m as i64;
    let divisors: Vec<i64> = (1..=mi).filter(|a| mi % a == 0).collect();
    let out_val = f.valuation().min(0) * mi;
    let out_prec = (f.precision() - 1).div_euclid(mi) + 1;
    if out_prec <= out_val {
        return Err(HeckeError::InsufficientPrecision {
            m,
            have: f.precision(),
            need: mi * (out_val + 1),
        });
    }
    let mut coeffs = Vec::with_capacity((out_prec - out_val) as usize);
    for j in out_val..out_prec {
        let mut acc = BigInt::zero();
        for &a in &divisors {
            if j % a != 0 {
                continue;
            }
            let d = mi / a;
            let c = f
                .coeff(d * (j / a))
                .expect("window guarantees availability");
            acc += c * d;
        }
        coeffs.push(acc);
    }
    Ok(QSeries::new(out_val, coeffs))
}

/// Whether `(f|mT(m))|nT(n)` equals `f|mnT(mn)` on the common window;
/// requires `gcd(m,n) = 1`.
pub fn hecke_multiplicativity_check(f: &QSeries, m: u64, n: u64) -> Result<bool, HeckeError> {
    if num_integer::gcd(m, n) != 1 {
        return Err(HeckeError::NotCoprime { m, n });
    }
    let lhs = hecke(&hecke(f, m)?, n)?;
    let rhs = hecke(f, m * n)?;
    Ok(lhs.agrees_with(&rhs) == Some(true))
}

/// Coefficients `(lambda_0, ..., lambda_m)` of the Faber polynomial: the
/// unique monic-degree-m integer polynomial with `F_m(f) = q^{-m} + O(q)`,
/// for `f = q^{-1} + 0 + O(q)` with integer coefficients. Computed by greedy
/// elimination of the exponents `-m+1, ..., 0` using cached powers of `f`.
pub fn faber_polynomial(f: &QSeries, m: u32) -> Result<Vec<BigInt>, HeckeError> {
    if f.valuation() > -1
        || !f.coeff_known(-1).is_one()
        || !f.coeff(0).map(Zero::is_zero).unwrap_or(false)
    {
        return Err(HeckeError::NotNormalized(format!("{f}")));
    }
    let mut powers: Vec<QSeries> = Vec::with_capacity(m as usize + 1);
    powers.push(QSeries::one(f.precision() + f.valuation().abs()));
    for k in 1..=m {
        powers.push(powers[k as usize - 1].mul(f));
    }
    let mut lambda = vec![BigInt::zero(); m as usize + 1];
    lambda[m as usize] = BigInt::one();
    let mut acc = powers[m as usize].clone();
    for e in (0..m as i64).rev() {
        let c = acc
            .coeff(-e)
            .ok_or(SeriesError::InsufficientPrecision {
                have: acc.precision(),
                need: -e + 1,
            })?
            .clone();
        if !c.is_zero() {
            acc = acc.sub(&powers[e as usize].scalar_mul(&c));
            lambda[e as usize] = -c;
        }
    }
    Ok(lambda)
}

/// Evaluate `sum_k lambda_k f^k`.
pub fn faber_eval(f: &QSeries, lambda: &[BigInt]) -> QSeries {
    let mut acc = QSeries::zeros(f.valuation() * (lambda.len() as i64 - 1), f.precision());
    let mut power = QSeries::one(f.precision() + f.valuation().abs());
    for (k, c) in lambda.iter().enumerate() {
        if !c.is_zero() {
            acc = acc.add(&power.scalar_mul(c));
        }
        if k + 1 < lambda.len() {
            power = power.mul(f);
        }
    }
    acc
}

/// Check the replication identity `F_m(J) = J | mT(m)` exactly on a window of
/// `precision` coefficients past the pole.
pub fn replicability_check_j(m: u32, precision: i64) -> Result<bool, HeckeError> {
    let p = (m as i64 * precision + 1).max(precision + m as i64 + 1);
    let j = j_function(p);
    let lambda = faber_polynomial(&j, m)?;
    let lhs = faber_eval(&j, &lambda);
    let rhs = hecke(&j, m as u64)?;
    Ok(lhs
        .truncated(precision)?
        .agrees_with(&rhs.truncated(precision)?)
        == Some(true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::assert_agree;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    /// Double-sum oracle for `f | mT(m)` at small m: expand
    /// `sum_{ad=m} d sum_k c(dk) q^{ak}` term by term.
    fn hecke_oracle(f: &QSeries, m: i64) -> QSeries {
        let out_val = f.valuation().min(0) * m;
        let out_prec = (f.precision() - 1).div_euclid(m) + 1;
        let mut acc = QSeries::zeros(out_val, out_prec);
        for a in 1..=m {
            if m % a != 0 {
                continue;
            }
            let d = m / a;
            let mut part = QSeries::zeros(out_val, out_prec);
            let mut k = f.valuation().min(0);
            while d * k < f.precision() {
                if a * k >= out_val && a * k < out_prec {
                    let mut t = QSeries::zeros(a * k, a * k + 1);
                    t = t.add(&QSeries::new(
                        a * k,
                        vec![f.coeff(d * k).unwrap().clone() * d],
                    ));
                    part = part.add(&t);
                }
                k += 1;
            }
            acc = acc.add(&part);
        }
        acc
    }

    #[test]
    fn hecke_on_j_level_two() {
        let j = j_function(9);
        let h = hecke(&j, 2).unwrap();
        // J|2T(2) = q^{-2} + 42987520 q + O(q^2)
        assert_eq!(h.coeff_known(-2), &big(1));
        assert_eq!(h.coeff_known(-1), &big(0));
        assert_eq!(h.coeff_known(0), &big(0));
        assert_eq!(h.coeff_known(1), &big(42987520));
        assert_agree(&h, &hecke_oracle(&j, 2), "coefficientwise vs double sum");
    }

    #[test]
    fn hecke_identity_and_principal_part() {
        let j = j_function(8);
        assert_agree(&hecke(&j, 1).unwrap(), &j, "T(1) is the identity");
        // principal part of (q^{-1} + tail) | 3T(3) is exactly q^{-3}
        let f = QSeries::from_i64(-1, &[1, 0, 5, -2, 7, 1, 3, 4, 2, 6]);
        let h = hecke(&f, 3).unwrap();
        assert_eq!(h.coeff_known(-3), &big(1));
        assert_eq!(h.coeff_known(-2), &big(0));
        assert_eq!(h.coeff_known(-1), &big(0));
        assert_eq!(h.coeff_known(0), &big(0));
        assert_agree(&h, &hecke_oracle(&f, 3), "oracle agreement");
    }

    #[test]
    fn hecke_multiplicativity() {
        let j = j_function(80);
        assert!(hecke_multiplicativity_check(&j, 2, 3).unwrap());
        assert!(hecke_multiplicativity_check(&j, 1, 5).unwrap());
        assert!(matches!(
            hecke_multiplicativity_check(&j, 2, 2),
            Err(HeckeError::NotCoprime { .. })
        ));
    }

    #[test]
    fn hecke_congruence_preservation() {
        // if f = g mod M coefficientwise then f|pT(p) = g|pT(p) mod M
        let f = QSeries::from_i64(-1, &[1, 0, 7, 19, 31, 43, 55, 67, 79, 91, 103, 115, 127]);
        let g = QSeries::from_i64(-1, &[1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1]);
        let m = big(6);
        for p in [2u64, 3, 5] {
            let diff = hecke(&f, p).unwrap().sub(&hecke(&g, p).unwrap());
            for n in diff.valuation()..diff.precision() {
                assert!(
                    (diff.coeff_known(n) % &m).is_zero(),
                    "p={p}, exponent {n}"
                );
            }
        }
    }

    #[test]
    fn faber_polynomials_for_j() {
        let j = j_function(60);
        // F_2(J) = J^2 - 393768
        let l2 = faber_polynomial(&j, 2).unwrap();
        assert_eq!(l2, vec![big(-393768), big(0), big(1)]);
        // F_3(J) = J^3 - 590652 J - 64481280
        let l3 = faber_polynomial(&j, 3).unwrap();
        assert_eq!(l3, vec![big(-64481280), big(-590652), big(0), big(1)]);
        // F_1(f) = f
        let l1 = faber_polynomial(&j, 1).unwrap();
        assert_eq!(l1, vec![big(0), big(1)]);
    }

    #[test]
    fn faber_rejects_unnormalized() {
        let f = QSeries::from_i64(-1, &[1, 5, 3]);
        assert!(matches!(
            faber_polynomial(&f, 2),
            Err(HeckeError::NotNormalized(_))
        ));
    }

    #[test]
    fn replicability_small_orders() {
        assert!(replicability_check_j(1, 10).unwrap());
        assert!(replicability_check_j(2, 10).unwrap());
        assert!(replicability_check_j(3, 8).unwrap());
        // q-coefficients of the images match the printed values
        let j = j_function(10);
        assert_eq!(hecke(&j, 2).unwrap().coeff_known(1), &big(42987520));
        assert_eq!(hecke(&j, 3).unwrap().coeff_known(1), &big(2592899910));
    }

    #[test]
    fn hecke_reports_needed_precision() {
        let f = QSeries::from_i64(-2, &[1, 0, 0]);
        assert!(matches!(
            hecke(&f, 5),
            Err(HeckeError::InsufficientPrecision { .. })
        ));
    }
}
