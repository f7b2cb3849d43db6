//! Truncated Laurent series with exact integer coefficients.
//!
//! A [`QSeries`] stores the window of a q-expansion that is fully determined:
//! coefficients of `q^n` for `valuation <= n < precision`. Coefficients below
//! the valuation are known to be zero; coefficients at or above the precision
//! are unknown. Every operation computes the largest window on which its
//! result is determined by the inputs, so a wrong tail can never be produced
//! silently.
//!
//! The module also provides the standard modular expansions used everywhere
//! downstream: the eta product `prod (1-q^n)`, the discriminant Delta, the
//! Eisenstein series E4 and E6, and the normalized j-function J.

use std::fmt;
use std::sync::LazyLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

static ZERO: LazyLock<BigInt> = LazyLock::new(BigInt::zero);

#[derive(Debug, Error)]
pub enum SeriesError {
    #[error("precision exhausted: window [{valuation}, {precision}) is empty")]
    PrecisionExhausted { valuation: i64, precision: i64 },
    #[error("not invertible over Z: leading coefficient is {lead}")]
    NotInvertible { lead: BigInt },
    #[error("insufficient precision: have exponents below {have}, need below {need}")]
    InsufficientPrecision { have: i64, need: i64 },
    #[error("coefficient of q^{n} is not divisible by {divisor}")]
    NotDivisible { n: i64, divisor: BigInt },
    #[error("malformed q-expansion text: {0}")]
    Parse(String),
}

/// Truncated Laurent series `sum_{valuation <= n < precision} c_n q^n` with
/// exact integer coefficients. Exponents below the valuation are zero;
/// exponents at or above the precision are unknown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    valuation: i64,
    coeffs: Vec<BigInt>,
}

impl QSeries {
    /// Build a series from its lowest stored exponent and coefficient window.
    ///
    /// Panics if the window is empty.
    pub fn new(valuation: i64, coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "empty coefficient window");
        QSeries { valuation, coeffs }
    }

    pub fn from_i64(valuation: i64, coeffs: &[i64]) -> Self {
        Self::new(valuation, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The all-zero window `[valuation, precision)`.
    pub fn zeros(valuation: i64, precision: i64) -> Self {
        assert!(precision > valuation);
        QSeries {
            valuation,
            coeffs: vec![BigInt::zero(); (precision - valuation) as usize],
        }
    }

    /// The constant series `1 + O(q^precision)`.
    pub fn one(precision: i64) -> Self {
        let mut s = Self::zeros(0, precision.max(1));
        s.coeffs[0] = BigInt::one();
        s
    }

    /// The monomial `q^exponent`, known up to `precision`.
    pub fn monomial(exponent: i64, precision: i64) -> Self {
        assert!(precision > exponent);
        let mut s = Self::zeros(exponent, precision);
        s.coeffs[0] = BigInt::one();
        s
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    /// Exclusive upper bound of the known window.
    pub fn precision(&self) -> i64 {
        self.valuation + self.coeffs.len() as i64
    }

    /// Coefficient of `q^n`; zero below the valuation, `None` at or above the
    /// precision.
    pub fn coeff(&self, n: i64) -> Option<&BigInt> {
        if n >= self.precision() {
            None
        } else if n < self.valuation {
            Some(&ZERO)
        } else {
            Some(&self.coeffs[(n - self.valuation) as usize])
        }
    }

    /// Coefficient of `q^n`, panicking outside the known window.
    pub fn coeff_known(&self, n: i64) -> &BigInt {
        self.coeff(n)
            .unwrap_or_else(|| panic!("coefficient q^{n} beyond precision {}", self.precision()))
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Exponent of the lowest nonzero known coefficient, if any.
    pub fn order(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| self.valuation + i as i64)
    }

    pub fn is_zero_window(&self) -> bool {
        self.order().is_none()
    }

    /// Mathematical equality on the overlap of the two known windows.
    /// Returns `None` when the overlap is empty (equality is undecidable).
    pub fn agrees_with(&self, other: &QSeries) -> Option<bool> {
        let lo = self.valuation.min(other.valuation);
        let hi = self.precision().min(other.precision());
        if hi <= lo {
            return None;
        }
        Some((lo..hi).all(|n| self.coeff_known(n) == other.coeff_known(n)))
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let valuation = self.valuation.min(other.valuation);
        let precision = self.precision().min(other.precision());
        let mut coeffs = Vec::with_capacity((precision - valuation) as usize);
        for n in valuation..precision {
            coeffs.push(self.coeff_known(n) + other.coeff_known(n));
        }
        QSeries { valuation, coeffs }
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QSeries {
        QSeries {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scalar_mul(&self, c: &BigInt) -> QSeries {
        QSeries {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Add a constant at exponent 0. Panics if 0 lies outside the window.
    pub fn add_constant(&self, c: &BigInt) -> QSeries {
        assert!(
            self.valuation <= 0 && self.precision() > 0,
            "constant term outside window [{}, {})",
            self.valuation,
            self.precision()
        );
        let mut s = self.clone();
        let idx = (-s.valuation) as usize;
        s.coeffs[idx] += c;
        s
    }

    /// Convolution product on the largest fully determined window:
    /// valuation `v_a + v_b`, precision `min(P_a + v_b, P_b + v_a)`.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let valuation = self.valuation + other.valuation;
        let precision = (self.precision() + other.valuation).min(other.precision() + self.valuation);
        let len = (precision - valuation) as usize;
        let mut out = vec![BigInt::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let jmax = len.saturating_sub(i).min(other.coeffs.len());
            for (j, b) in other.coeffs[..jmax].iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] += a * b;
            }
        }
        QSeries {
            valuation,
            coeffs: out,
        }
    }

    /// `self^k` by binary powering; `k = 0` yields 1 on a window of the same
    /// length as `self`'s.
    pub fn pow(&self, k: u32) -> QSeries {
        if k == 0 {
            return QSeries::one(self.coeffs.len() as i64);
        }
        let mut result: Option<QSeries> = None;
        let mut base = self.clone();
        let mut e = k;
        loop {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.mul(&base),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base);
        }
        result.unwrap()
    }

    /// Multiplicative inverse of a series whose leading coefficient is a unit
    /// over Z. The result has valuation `-v` and precision `P - 2v`.
    pub fn invert(&self) -> Result<QSeries, SeriesError> {
        let v = self.order().ok_or_else(|| SeriesError::NotInvertible {
            lead: BigInt::zero(),
        })?;
        let lead = self.coeff_known(v).clone();
        if !lead.magnitude().is_one() {
            return Err(SeriesError::NotInvertible { lead });
        }
        let len = (self.precision() - v) as usize;
        let mut inv = vec![BigInt::zero(); len];
        // lead is +-1, so division is exact throughout.
        inv[0] = lead.clone();
        for n in 1..len {
            let mut acc = BigInt::zero();
            for k in 1..=n {
                let a = self.coeff_known(v + k as i64);
                if a.is_zero() || inv[n - k].is_zero() {
                    continue;
                }
                acc += a * &inv[n - k];
            }
            inv[n] = -acc * &lead;
        }
        Ok(QSeries {
            valuation: -v,
            coeffs: inv,
        })
    }

    /// Exact quotient `self / other` by long division; requires the divisor's
    /// leading coefficient to be a unit over Z.
    pub fn div(&self, other: &QSeries) -> Result<QSeries, SeriesError> {
        let vd = other.order().ok_or_else(|| SeriesError::NotInvertible {
            lead: BigInt::zero(),
        })?;
        let lead = other.coeff_known(vd).clone();
        if !lead.magnitude().is_one() {
            return Err(SeriesError::NotInvertible { lead });
        }
        let valuation = self.valuation - vd;
        let precision = (self.precision() - vd).min(other.precision() + self.valuation - 2 * vd);
        if precision <= valuation {
            return Err(SeriesError::PrecisionExhausted {
                valuation,
                precision,
            });
        }
        let len = (precision - valuation) as usize;
        let mut rem: Vec<BigInt> = (0..len)
            .map(|i| self.coeff_known(self.valuation + i as i64).clone())
            .collect();
        let mut out = vec![BigInt::zero(); len];
        for n in 0..len {
            if rem[n].is_zero() {
                continue;
            }
            let c = &rem[n] * &lead;
            for k in 1..len - n {
                let d = other.coeff_known(vd + k as i64);
                if !d.is_zero() {
                    let t = &c * d;
                    rem[n + k] -= t;
                }
            }
            out[n] = c;
        }
        Ok(QSeries {
            valuation,
            coeffs: out,
        })
    }

    /// Substitute `q -> q^m`: the coefficient of `q^{mn}` in the result is
    /// the coefficient of `q^n` here. Precision becomes `m*(P-1)+1`.
    pub fn rescale(&self, m: u32) -> QSeries {
        assert!(m >= 1);
        let m = m as i64;
        let valuation = self.valuation * m;
        let precision = m * (self.precision() - 1) + 1;
        let mut coeffs = vec![BigInt::zero(); (precision - valuation) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * m as usize] = c.clone();
        }
        QSeries { valuation, coeffs }
    }

    /// Restrict the window to exponents below `new_precision`.
    pub fn truncated(&self, new_precision: i64) -> Result<QSeries, SeriesError> {
        if new_precision >= self.precision() {
            return Ok(self.clone());
        }
        if new_precision <= self.valuation {
            return Err(SeriesError::PrecisionExhausted {
                valuation: self.valuation,
                precision: new_precision,
            });
        }
        Ok(QSeries {
            valuation: self.valuation,
            coeffs: self.coeffs[..(new_precision - self.valuation) as usize].to_vec(),
        })
    }

    /// Divide every coefficient by `m`, failing on the first non-divisible one.
    pub fn exact_div_scalar(&self, m: &BigInt) -> Result<QSeries, SeriesError> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            let (q, r) = num_integer::Integer::div_rem(c, m);
            if !r.is_zero() {
                return Err(SeriesError::NotDivisible {
                    n: self.valuation + i as i64,
                    divisor: m.clone(),
                });
            }
            coeffs.push(q);
        }
        Ok(QSeries {
            valuation: self.valuation,
            coeffs,
        })
    }

    /// Serialize in the interchange format: a header line
    /// `# valuation=<v> precision=<P>` followed by `n<TAB>coefficient` lines
    /// in increasing `n`.
    pub fn to_qexp(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "# valuation={} precision={}\n",
            self.valuation,
            self.precision()
        ));
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push_str(&format!("{}\t{}\n", self.valuation + i as i64, c));
        }
        out
    }

    pub fn from_qexp(text: &str) -> Result<QSeries, SeriesError> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| SeriesError::Parse("empty input".into()))?;
        let header = header
            .strip_prefix('#')
            .ok_or_else(|| SeriesError::Parse("missing '#' header".into()))?;
        let mut valuation: Option<i64> = None;
        let mut precision: Option<i64> = None;
        for field in header.split_whitespace() {
            if let Some(v) = field.strip_prefix("valuation=") {
                valuation = Some(v.parse().map_err(|e| SeriesError::Parse(format!("{e}")))?);
            } else if let Some(p) = field.strip_prefix("precision=") {
                precision = Some(p.parse().map_err(|e| SeriesError::Parse(format!("{e}")))?);
            }
        }
        let (valuation, precision) = match (valuation, precision) {
            (Some(v), Some(p)) if p > v => (v, p),
            _ => return Err(SeriesError::Parse("bad header window".into())),
        };
        let mut coeffs = vec![BigInt::zero(); (precision - valuation) as usize];
        let mut expected = valuation;
        for line in lines {
            if line.trim().is_empty() {
                continue;
            }
            let (n, c) = line
                .split_once('\t')
                .ok_or_else(|| SeriesError::Parse(format!("bad line: {line}")))?;
            let n: i64 = n.parse().map_err(|e| SeriesError::Parse(format!("{e}")))?;
            if n != expected {
                return Err(SeriesError::Parse(format!(
                    "exponent {n} out of order (expected {expected})"
                )));
            }
            coeffs[(n - valuation) as usize] = c
                .trim()
                .parse()
                .map_err(|e| SeriesError::Parse(format!("{e}")))?;
            expected += 1;
        }
        if expected != precision {
            return Err(SeriesError::Parse(format!(
                "missing coefficients: stopped at {expected}, precision {precision}"
            )));
        }
        Ok(QSeries { valuation, coeffs })
    }
}

impl fmt::Display for QSeries {
    /// Human-readable form `q^-1 + 196884*q + ...` of the first few terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut printed = 0;
        let mut first = true;
        for n in self.valuation..self.precision() {
            let c = self.coeff_known(n);
            if c.is_zero() {
                continue;
            }
            if printed == 8 {
                write!(f, " + ...")?;
                break;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            match (n, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{n}")?,
                (_, false) => write!(f, "{mag}*q^{n}")?,
            }
            printed += 1;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.precision())
    }
}

/// Truncated Laurent series with exact rational coefficients. Appears only
/// as an intermediate carrier for multiplicity series before integrality is
/// certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeriesRational {
    valuation: i64,
    coeffs: Vec<BigRational>,
}

impl QSeriesRational {
    pub fn new(valuation: i64, coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty());
        QSeriesRational { valuation, coeffs }
    }

    /// `series / m` as an exact rational series.
    pub fn from_integer_div(series: &QSeries, m: &BigInt) -> Self {
        QSeriesRational {
            valuation: series.valuation,
            coeffs: series
                .coeffs
                .iter()
                .map(|c| BigRational::new(c.clone(), m.clone()))
                .collect(),
        }
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn precision(&self) -> i64 {
        self.valuation + self.coeffs.len() as i64
    }

    pub fn coeff(&self, n: i64) -> Option<BigRational> {
        if n >= self.precision() {
            None
        } else if n < self.valuation {
            Some(BigRational::zero())
        } else {
            Some(self.coeffs[(n - self.valuation) as usize].clone())
        }
    }

    pub fn add(&self, other: &QSeriesRational) -> QSeriesRational {
        let valuation = self.valuation.min(other.valuation);
        let precision = self.precision().min(other.precision());
        let coeffs = (valuation..precision)
            .map(|n| self.coeff(n).unwrap() + other.coeff(n).unwrap())
            .collect();
        QSeriesRational { valuation, coeffs }
    }

    pub fn scalar_mul(&self, c: &BigRational) -> QSeriesRational {
        QSeriesRational {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Succeeds iff every coefficient is an integer, returning the exponent of
    /// the first offender otherwise.
    pub fn to_integer(&self) -> Result<QSeries, i64> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_integer() {
                return Err(self.valuation + i as i64);
            }
            coeffs.push(c.to_integer());
        }
        Ok(QSeries::new(self.valuation, coeffs))
    }

    /// Exponent of the first negative coefficient, if any.
    pub fn first_negative(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| c.is_negative())
            .map(|i| self.valuation + i as i64)
    }

    /// Exponent of the last negative coefficient, if any.
    pub fn last_negative(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .rposition(|c| c.is_negative())
            .map(|i| self.valuation + i as i64)
    }
}

// ---------------------------------------------------------------------------
// Standard expansions
// ---------------------------------------------------------------------------

/// `prod_{n>=1} (1 - q^n)` truncated before `q^precision`. This is the eta
/// product with the `q^{1/24}` prefactor stripped; callers that need the
/// fractional exponent track it symbolically.
pub fn eta_expansion(precision: i64) -> QSeries {
    assert!(precision >= 1);
    let len = precision as usize;
    let mut coeffs = vec![BigInt::zero(); len];
    coeffs[0] = BigInt::one();
    // Multiply the binomials (1 - q^n) one at a time, highest exponent last.
    for n in 1..len {
        for i in (0..len - n).rev() {
            if !coeffs[i].is_zero() {
                let t = coeffs[i].clone();
                coeffs[i + n] -= t;
            }
        }
    }
    QSeries::new(0, coeffs)
}

fn sigma_series(k: u32, precision: i64) -> Vec<BigInt> {
    let len = precision.max(1) as usize;
    let mut sums = vec![0u128; len];
    for d in 1..len as u128 {
        let dk = d.pow(k);
        let mut n = d as usize;
        while n < len {
            sums[n] += dk;
            n += d as usize;
        }
    }
    sums.into_iter().map(BigInt::from).collect()
}

/// Normalized Eisenstein series `E_k` for `k` in `{4, 6}`.
pub fn eisenstein(k: u32, precision: i64) -> QSeries {
    assert!(precision >= 2);
    let factor: i64 = match k {
        4 => 240,
        6 => -504,
        _ => panic!("eisenstein weight {k} not supported (only 4 and 6)"),
    };
    let mut coeffs = sigma_series(k - 1, precision);
    for c in coeffs.iter_mut().skip(1) {
        *c *= factor;
    }
    coeffs[0] = BigInt::one();
    QSeries::new(0, coeffs)
}

/// The discriminant `Delta = q prod (1-q^n)^24 = q - 24q^2 + O(q^3)`.
pub fn delta(precision: i64) -> QSeries {
    assert!(precision >= 2);
    let eta = eta_expansion(precision - 1);
    let mut d = eta.pow(24);
    d.valuation += 1;
    d.truncated(precision).expect("window nonempty")
}

/// The normalized j-function `J = E4^3/Delta - 744 = q^{-1} + 196884q + ...`.
pub fn j_function(precision: i64) -> QSeries {
    assert!(precision >= 2);
    // E4^3 and Delta to precision P+2 give the quotient to precision P.
    let e4 = eisenstein(4, precision + 2);
    let num = e4.pow(3);
    let den = delta(precision + 2);
    let j = num.div(&den).expect("Delta has unit leading coefficient");
    j.add_constant(&BigInt::from(-744))
        .truncated(precision)
        .expect("window nonempty")
}

/// Assert two series agree on their (nonempty) overlap; for tests.
pub fn assert_agree(a: &QSeries, b: &QSeries, what: &str) {
    match a.agrees_with(b) {
        Some(true) => {}
        Some(false) => panic!("{what}: series disagree\n  a = {a}\n  b = {b}"),
        None => panic!("{what}: windows do not overlap"),
    }
}

impl QSeries {
    /// Approximate magnitude of a coefficient as f64 (for oracle comparisons).
    pub fn coeff_f64(&self, n: i64) -> Option<f64> {
        self.coeff(n).map(|c| c.to_f64().unwrap_or(f64::INFINITY))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q_pow(n: i64, prec: i64) -> QSeries {
        QSeries::monomial(n, prec)
    }

    #[test]
    fn product_of_principal_parts_gives_faber_constant() {
        // (q^-1 + 196884q)^2 has constant term 2*196884 = 393768.
        let f = QSeries::from_i64(-1, &[1, 0, 196884]);
        let sq = f.mul(&f);
        assert_eq!(sq.coeff_known(-2), &big(1));
        assert_eq!(sq.coeff_known(0), &big(2 * 196884));
    }

    #[test]
    fn additive_and_multiplicative_identities() {
        let f = QSeries::from_i64(-1, &[1, 7, -3, 5]);
        let zero = QSeries::zeros(-1, 3);
        let one = QSeries::one(4);
        assert_eq!(f.add(&zero).agrees_with(&f), Some(true));
        assert_eq!(f.mul(&one).agrees_with(&f), Some(true));
    }

    #[test]
    fn geometric_series_inverts_one_minus_q() {
        let one_minus_q = QSeries::from_i64(0, &[1, -1, 0, 0, 0, 0, 0, 0]);
        let geo = one_minus_q.invert().unwrap();
        for n in 0..geo.precision() {
            assert_eq!(geo.coeff_known(n), &big(1), "coefficient q^{n}");
        }
        assert_agree(
            &one_minus_q.mul(&geo),
            &QSeries::one(8),
            "(1-q) * invert(1-q)",
        );
    }

    #[test]
    fn invert_delta_begins_q_inverse_plus_24() {
        // Brute-force long division oracle: 1 / Delta computed directly from
        // the recurrence sum_{k} Delta_k x_{n-k} = [n == 0].
        let d = delta(12);
        let inv = d.invert().unwrap();
        let mut oracle = vec![BigInt::zero(); 10];
        oracle[0] = BigInt::one(); // coefficient of q^{-1}
        for n in 1..10 {
            let mut acc = BigInt::zero();
            for k in 1..=n {
                acc += d.coeff_known(1 + k as i64) * &oracle[n - k];
            }
            oracle[n] = -acc;
        }
        for (i, expect) in oracle.iter().enumerate() {
            assert_eq!(inv.coeff_known(-1 + i as i64), expect);
        }
        assert_eq!(inv.coeff_known(-1), &big(1));
        assert_eq!(inv.coeff_known(0), &big(24));
        assert_agree(&inv.invert().unwrap(), &d, "invert is an involution");
    }

    #[test]
    fn invert_rejects_non_unit_lead() {
        let f = QSeries::from_i64(0, &[2, 1, 1]);
        assert!(matches!(f.invert(), Err(SeriesError::NotInvertible { .. })));
    }

    #[test]
    fn rescale_delta_by_two() {
        let d = delta(4); // q - 24q^2 + 252q^3
        let r = d.rescale(2);
        assert_eq!(r.coeff_known(2), &big(1));
        assert_eq!(r.coeff_known(3), &big(0));
        assert_eq!(r.coeff_known(4), &big(-24));
        assert_eq!(r.coeff_known(6), &big(252));
        let f = QSeries::from_i64(-1, &[1, 3, 9]);
        assert_eq!(f.rescale(1).agrees_with(&f), Some(true));
        assert_eq!(
            f.rescale(2).rescale(3).agrees_with(&f.rescale(6)),
            Some(true)
        );
    }

    #[test]
    fn eta_product_first_terms() {
        // Direct product expansion: 1 - q - q^2 + q^5 + q^7 - ...
        let e = eta_expansion(10);
        let expect = [1i64, -1, -1, 0, 0, 1, 0, 1, 0, 0];
        for (n, c) in expect.iter().enumerate() {
            assert_eq!(e.coeff_known(n as i64), &big(*c), "exponent {n}");
        }
        assert_agree(
            &e.mul(&e.invert().unwrap()),
            &QSeries::one(10),
            "eta * 1/eta",
        );
    }

    #[test]
    fn eta_matches_pentagonal_pattern_to_1000() {
        // Pentagonal number theorem as oracle: exponents k(3k-1)/2 carry
        // (-1)^k, everything else vanishes.
        let n = 1001;
        let e = eta_expansion(n);
        let mut oracle = vec![BigInt::zero(); n as usize];
        let mut k: i64 = 0;
        loop {
            let mut hit = false;
            for kk in [k, -k] {
                let e1 = kk * (3 * kk - 1) / 2;
                if e1 < n {
                    hit = true;
                    if e1 >= 0 {
                        oracle[e1 as usize] = if k % 2 == 0 { big(1) } else { big(-1) };
                    }
                }
                if kk == 0 {
                    break;
                }
            }
            if !hit {
                break;
            }
            k += 1;
        }
        for i in 0..n as usize {
            assert_eq!(e.coeffs()[i], oracle[i], "exponent {i}");
        }
    }

    #[test]
    fn standard_expansions_match_printed_values() {
        let d = delta(6);
        assert_eq!(d.coeff_known(1), &big(1));
        assert_eq!(d.coeff_known(2), &big(-24));
        assert_eq!(d.coeff_known(3), &big(252));
        let e4 = eisenstein(4, 4);
        assert_eq!(e4.coeff_known(0), &big(1));
        assert_eq!(e4.coeff_known(1), &big(240));
        assert_eq!(e4.coeff_known(2), &big(2160));
        let e6 = eisenstein(6, 3);
        assert_eq!(e6.coeff_known(1), &big(-504));
        let j = j_function(3);
        assert_eq!(j.coeff_known(-1), &big(1));
        assert_eq!(j.coeff_known(0), &big(0));
        assert_eq!(j.coeff_known(1), &big(196884));
        assert_eq!(j.coeff_known(2), &big(21493760));
    }

    #[test]
    fn eisenstein_delta_identity() {
        // E4^3 - E6^2 = 1728 Delta on the full window.
        let p = 40;
        let lhs = eisenstein(4, p).pow(3).sub(&eisenstein(6, p).pow(2));
        let rhs = delta(p).scalar_mul(&big(1728));
        assert_agree(&lhs, &rhs, "E4^3 - E6^2 = 1728 Delta");
    }

    #[test]
    fn j_delta_identity() {
        // J * Delta = E4^3 - 744 Delta.
        let p = 30;
        let lhs = j_function(p).mul(&delta(p + 2));
        let rhs = eisenstein(4, p).pow(3).sub(&delta(p).scalar_mul(&big(744)));
        assert_agree(&lhs, &rhs, "J*Delta = E4^3 - 744*Delta");
    }

    #[test]
    fn rational_series_integrality() {
        let f = QSeries::from_i64(0, &[6, 9, 12]);
        let r = QSeriesRational::from_integer_div(&f, &big(3));
        assert_eq!(r.to_integer().unwrap().coeffs(), &[big(2), big(3), big(4)]);
        let bad = QSeriesRational::from_integer_div(&f, &big(4));
        assert_eq!(bad.to_integer(), Err(0));
    }

    #[test]
    fn qexp_text_round_trip() {
        let f = QSeries::from_i64(-2, &[1, 0, -5, 44, 0]);
        let text = f.to_qexp();
        assert!(text.starts_with("# valuation=-2 precision=3\n"));
        let g = QSeries::from_qexp(&text).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn mul_window_is_tight() {
        // q^-1 known to q^3 times q^-1 known to q^2: product window ends at
        // min(4 + -1, 3 + -1) = 2.
        let a = q_pow(-1, 4);
        let b = q_pow(-1, 3);
        let p = a.mul(&b);
        assert_eq!(p.valuation(), -2);
        assert_eq!(p.precision(), 2);
    }

    fn arb_series() -> impl Strategy<Value = QSeries> {
        (
            -4i64..4,
            prop::collection::vec(-50i64..50, 1..12),
        )
            .prop_map(|(v, cs)| QSeries::from_i64(v, &cs))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn ring_axioms(a in arb_series(), b in arb_series(), c in arb_series()) {
            // Associativity, commutativity, distributivity on the overlap.
            let ab_c = a.mul(&b).mul(&c);
            let a_bc = a.mul(&b.mul(&c));
            prop_assert_ne!(ab_c.agrees_with(&a_bc), Some(false));

            let ab = a.mul(&b);
            let ba = b.mul(&a);
            prop_assert_eq!(ab.agrees_with(&ba), Some(true));

            let lhs = a.mul(&b.add(&c));
            let rhs = a.mul(&b).add(&a.mul(&c));
            prop_assert_ne!(lhs.agrees_with(&rhs), Some(false));

            let add_comm = a.add(&b);
            let add_comm2 = b.add(&a);
            prop_assert_eq!(add_comm.agrees_with(&add_comm2), Some(true));
        }

        #[test]
        fn double_inversion_is_identity(v in -3i64..3, cs in prop::collection::vec(-30i64..30, 1..10)) {
            let mut coeffs = cs.clone();
            coeffs.insert(0, 1); // force unit leading coefficient
            let f = QSeries::from_i64(v, &coeffs);
            let ff = f.invert().unwrap().invert().unwrap();
            prop_assert_ne!(ff.agrees_with(&f), Some(false));
        }
    }
}
