//! Sturm-bounded congruence certificates among Hauptmoduln, and maximal
//! prime-power relation discovery by p-adic kernel lifting.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::eta::{hauptmodul, hauptmodul_quotient, is_genus_zero, EtaError};
use crate::groups::AbelianShape;
use crate::qseries::QSeries;

#[derive(Debug, Error)]
pub enum CongruenceError {
    #[error("level {0} is not genus zero")]
    NotGenusZero(u32),
    #[error("requested prefix {prefix} is below the Sturm bound {sturm}")]
    PrefixBelowSturm { prefix: i64, sturm: i64 },
    #[error("empty term list")]
    Empty,
    #[error("group has non-genus-zero element order: exponent {0}")]
    NonGenusZeroOrder(u64),
    #[error(transparent)]
    Eta(#[from] EtaError),
}

/// `[SL_2(Z) : Gamma_0(n)] = n prod_{p | n} (1 + 1/p)`.
pub fn index_gamma0(n: u64) -> u64 {
    let mut index = n;
    let mut rem = n;
    let mut p = 2;
    while rem > 1 {
        if p * p > rem {
            p = rem;
        }
        if rem % p == 0 {
            index = index / p * (p + 1);
            while rem % p == 0 {
                rem /= p;
            }
        }
        p += 1;
    }
    index
}

/// Sturm-type verification prefix for weakly holomorphic modular functions:
/// `s * ([SL_2(Z) : Gamma_0(lcm)] - 1)` where `s` bounds the highest cusp
/// pole order (in q-scale).
pub fn sturm_prefix(levels: &[u32], s: i64) -> i64 {
    let l = levels.iter().fold(1u64, |acc, &n| acc.lcm(&(n as u64)));
    s * (index_gamma0(l) as i64 - 1)
}

/// Conservative pole-order bound `s` for a combination of Hauptmoduln viewed
/// on the lcm level: the maximum over terms of the largest q-scale pole order
/// at any cusp, rounded up (at least 1). `T_1 = J` has q-scale pole order
/// exactly 1 at every cusp.
pub fn pole_scale_bound(levels: &[u32]) -> Result<i64, CongruenceError> {
    let l = levels.iter().fold(1u64, |acc, &n| acc.lcm(&(n as u64))) as u32;
    let mut s = 1i64;
    for &n in levels {
        if !is_genus_zero(n) {
            return Err(CongruenceError::NotGenusZero(n));
        }
        if n == 1 {
            continue;
        }
        let scale = hauptmodul_quotient(n)?.max_pole_scale(l)?;
        let ceil = scale.ceil().to_integer();
        s = s.max(ceil);
    }
    Ok(s)
}

/// Cache of Hauptmodul expansions at a common precision.
pub struct HauptmodulSet {
    precision: i64,
    map: BTreeMap<u32, QSeries>,
}

impl HauptmodulSet {
    pub fn with_precision(precision: i64) -> Self {
        let mut set = HauptmodulSet {
            precision: 0,
            map: BTreeMap::new(),
        };
        set.ensure(precision);
        set
    }

    /// Grow the cache so every `T_N` is known strictly below `precision`.
    pub fn ensure(&mut self, precision: i64) {
        if precision <= self.precision {
            return;
        }
        self.map.clear();
        for n in crate::eta::GENUS_ZERO {
            self.map
                .insert(n, hauptmodul(n, precision).expect("genus-zero level"));
        }
        self.precision = precision;
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    pub fn get(&self, level: u32) -> &QSeries {
        self.map
            .get(&level)
            .unwrap_or_else(|| panic!("level {level} not cached"))
    }

    /// Exact combination `sum a_i T_{N_i}`.
    pub fn combination(&self, terms: &[(u32, BigInt)]) -> QSeries {
        let mut acc: Option<QSeries> = None;
        for (level, a) in terms {
            let t = self.get(*level).scalar_mul(a);
            acc = Some(match acc {
                None => t,
                Some(s) => s.add(&t),
            });
        }
        acc.expect("nonempty terms")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "status", content = "first_bad")]
pub enum CertStatus {
    Pass,
    Fail(i64),
}

/// A verified congruence `sum a_i T_{N_i} = 0 (mod modulus)`: the exact
/// combination is divisible through `checked_prefix >= sturm_bound`, which
/// proves divisibility of every coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceCertificate {
    pub terms: Vec<(u32, BigInt)>,
    pub modulus: BigInt,
    pub checked_prefix: i64,
    pub sturm_bound: i64,
    pub status: CertStatus,
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    terms: Vec<(u32, i64)>,
    modulus: String,
    prefix: i64,
    sturm: i64,
    status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_bad: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    version: Option<String>,
}

impl CongruenceCertificate {
    pub fn passed(&self) -> bool {
        self.status == CertStatus::Pass
    }

    pub fn to_json(&self) -> String {
        let raw = CertificateJson {
            terms: self
                .terms
                .iter()
                .map(|(n, a)| (*n, a.to_i64().expect("coefficient fits i64")))
                .collect(),
            modulus: self.modulus.to_string(),
            prefix: self.checked_prefix,
            sturm: self.sturm_bound,
            status: match self.status {
                CertStatus::Pass => "pass".into(),
                CertStatus::Fail(_) => "fail".into(),
            },
            first_bad: match self.status {
                CertStatus::Pass => None,
                CertStatus::Fail(n) => Some(n),
            },
            version: Some(env!("CARGO_PKG_VERSION").into()),
        };
        serde_json::to_string_pretty(&raw).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<(Vec<(u32, BigInt)>, BigInt, Option<i64>), String> {
        #[derive(Deserialize)]
        struct Input {
            terms: Vec<(u32, i64)>,
            modulus: String,
            #[serde(default)]
            prefix: Option<i64>,
        }
        let raw: Input = serde_json::from_str(text).map_err(|e| e.to_string())?;
        let modulus: BigInt = raw.modulus.parse().map_err(|_| "bad modulus".to_string())?;
        Ok((
            raw.terms
                .into_iter()
                .map(|(n, a)| (n, BigInt::from(a)))
                .collect(),
            modulus,
            raw.prefix,
        ))
    }
}

/// Verify `sum a_i T_{N_i} = 0 (mod modulus)` on the conservative Sturm
/// prefix (or a caller-supplied longer prefix), checking every coefficient
/// from the principal part up.
pub fn verify_congruence(
    set: &mut HauptmodulSet,
    terms: &[(u32, BigInt)],
    modulus: &BigInt,
    prefix_override: Option<i64>,
) -> Result<CongruenceCertificate, CongruenceError> {
    if terms.is_empty() {
        return Err(CongruenceError::Empty);
    }
    let levels: Vec<u32> = terms.iter().map(|&(n, _)| n).collect();
    for &n in &levels {
        if !is_genus_zero(n) {
            return Err(CongruenceError::NotGenusZero(n));
        }
    }
    let s = pole_scale_bound(&levels)?;
    let sturm = sturm_prefix(&levels, s);
    let prefix = prefix_override.unwrap_or(sturm);
    if prefix < sturm {
        return Err(CongruenceError::PrefixBelowSturm { prefix, sturm });
    }
    set.ensure(prefix + 1);
    let combo = set.combination(terms);
    let mut status = CertStatus::Pass;
    for n in combo.valuation()..=prefix {
        if !combo.coeff_known(n).mod_floor(modulus).is_zero() {
            status = CertStatus::Fail(n);
            break;
        }
    }
    Ok(CongruenceCertificate {
        terms: terms.to_vec(),
        modulus: modulus.clone(),
        checked_prefix: prefix,
        sturm_bound: sturm,
        status,
    })
}

fn modinv(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "not invertible");
    e.x.mod_floor(m)
}

/// Largest `k` such that a relation `T_{N_1} + sum_{i>1} a_i T_{N_i} = 0
/// (mod p^k)` holds on the coefficient window `[-1, prefix]`, with the
/// witness normalized to leading coefficient 1 and reduced mod `p^k`.
/// Found by mod-p elimination with lifting: combinations whose values are
/// divisible by `p^k` are divided by `p` and eliminated again.
pub fn max_prime_power_relation(
    set: &mut HauptmodulSet,
    levels: &[u32],
    p: u64,
    prefix: i64,
) -> Result<(u32, Vec<BigInt>), CongruenceError> {
    if levels.is_empty() {
        return Err(CongruenceError::Empty);
    }
    set.ensure(prefix + 1);
    let cols = (prefix + 2) as usize; // exponents -1 ..= prefix
    let rows: Vec<Vec<BigInt>> = levels
        .iter()
        .map(|&n| {
            let t = set.get(n);
            (-1..=prefix).map(|e| t.coeff_known(e).clone()).collect()
        })
        .collect();
    let s = levels.len();
    let pb = BigInt::from(p);

    // basis of {t : t . rows = 0 (mod p^k)}, with exact values v = t . rows
    struct Elem {
        tracked: Vec<BigInt>,
        values: Vec<BigInt>,
    }
    let dot = |t: &[BigInt]| -> Vec<BigInt> {
        (0..cols)
            .map(|j| t.iter().zip(&rows).map(|(c, row)| c * &row[j]).sum())
            .collect()
    };
    let mut basis: Vec<Elem> = (0..s)
        .map(|i| {
            let mut tracked = vec![BigInt::zero(); s];
            tracked[i] = BigInt::one();
            let values = rows[i].clone();
            Elem { tracked, values }
        })
        .collect();

    let mut k = 0u32;
    let mut best: Option<(u32, Vec<BigInt>)> = None;
    loop {
        // record the strongest relation with unit leading coefficient
        if let Some(e) = basis
            .iter()
            .find(|e| !e.tracked[0].mod_floor(&pb).is_zero())
        {
            if k > 0 {
                let pk = pb.pow(k);
                let inv = modinv(&e.tracked[0], &pk);
                let witness: Vec<BigInt> = e
                    .tracked
                    .iter()
                    .map(|c| (c * &inv).mod_floor(&pk))
                    .collect();
                best = Some((k, witness));
            }
        } else {
            break;
        }
        if k >= 64 {
            break;
        }

        // divide values by p^k and eliminate mod p
        let pk = pb.pow(k);
        let mut w: Vec<Vec<u64>> = basis
            .iter()
            .map(|e| {
                e.values
                    .iter()
                    .map(|v| {
                        let (q, r) = v.div_rem(&pk);
                        debug_assert!(r.is_zero());
                        q.mod_floor(&pb).to_u64().expect("residue fits")
                    })
                    .collect()
            })
            .collect();
        let mut in_next: Vec<bool> = vec![false; basis.len()];
        let mut pivot_rows: Vec<usize> = Vec::new();
        let mut col = 0;
        while col < cols {
            let Some(r) = (0..basis.len())
                .find(|&r| !in_next[r] && !pivot_rows.contains(&r) && w[r][col] != 0)
            else {
                col += 1;
                continue;
            };
            let inv = mod_inverse_u64(w[r][col], p);
            for r2 in 0..basis.len() {
                if r2 == r || pivot_rows.contains(&r2) || w[r2][col] == 0 {
                    continue;
                }
                let factor = w[r2][col] as u128 * inv as u128 % p as u128;
                let fb = BigInt::from(factor as u64);
                for j in 0..cols {
                    w[r2][j] = ((w[r2][j] as u128 + (p as u128 - factor) * w[r][j] as u128)
                        % p as u128) as u64;
                }
                let (tr, vr): (Vec<BigInt>, Vec<BigInt>) =
                    (basis[r].tracked.clone(), basis[r].values.clone());
                for (t2, t1) in basis[r2].tracked.iter_mut().zip(&tr) {
                    *t2 -= &fb * t1;
                }
                for (v2, v1) in basis[r2].values.iter_mut().zip(&vr) {
                    *v2 -= &fb * v1;
                }
            }
            pivot_rows.push(r);
            col += 1;
        }
        for r in 0..basis.len() {
            if w[r].iter().all(|&x| x == 0) {
                in_next[r] = true;
            }
        }
        // next basis: cleared rows as-is, pivot rows multiplied by p
        let pnext = pb.pow(k + 2);
        let mut next: Vec<Elem> = Vec::with_capacity(basis.len());
        for (r, e) in basis.into_iter().enumerate() {
            let mut tracked: Vec<BigInt> = if in_next[r] {
                e.tracked
            } else {
                e.tracked.iter().map(|c| c * &pb).collect()
            };
            for c in tracked.iter_mut() {
                *c = c.mod_floor(&pnext);
            }
            let values = dot(&tracked);
            next.push(Elem { tracked, values });
        }
        basis = next;
        k += 1;
    }
    Ok(best.unwrap_or((0, vec![])))
}

fn mod_inverse_u64(a: u64, p: u64) -> u64 {
    // p is prime and a != 0 mod p
    let mut t = (0i128, 1i128);
    let mut r = (p as i128, (a % p) as i128);
    while r.1 != 0 {
        let q = r.0 / r.1;
        r = (r.1, r.0 - q * r.1);
        t = (t.1, t.0 - q * t.1);
    }
    t.0.rem_euclid(p as i128) as u64
}

/// One congruence produced by the inclusion-exclusion machinery: terms,
/// modulus, and a label naming the subset and depth tuple.
#[derive(Clone, Debug)]
pub struct C2Congruence {
    pub terms: Vec<(u32, BigInt)>,
    pub modulus: BigInt,
    pub label: String,
}

/// The finite list of congruences equivalent to integrality of all
/// multiplicity series of a Hauptmodul trace assignment on the shape:
/// for every nonempty subset `P` of the primes and every depth tuple
/// `1 <= n_p <= h_p`, `sum_{S subset P} (-1)^{|S|} T_{prod_{p in S} p^{n_p}}`
/// vanishes mod `prod_{p in P} prod_{j >= n_p} p^{r_{p,j} (j - n_p + 1)}`.
pub fn c2_congruences(shape: &AbelianShape) -> Result<Vec<C2Congruence>, CongruenceError> {
    let exponent = shape.exponent();
    if u32::try_from(exponent).map(is_genus_zero) != Ok(true) {
        return Err(CongruenceError::NonGenusZeroOrder(exponent));
    }
    let primes: Vec<u64> = shape.primes().collect();
    let mut out = Vec::new();
    for mask in 1u32..(1 << primes.len()) {
        let subset: Vec<u64> = primes
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        // all depth tuples over the subset
        let mut tuple: Vec<u32> = subset.iter().map(|_| 1).collect();
        loop {
            let mut modulus = BigInt::one();
            for (i, &p) in subset.iter().enumerate() {
                let n = tuple[i];
                let rs = &shape.layers()[&p];
                for (j, &r) in rs.iter().enumerate() {
                    let j1 = j as u32 + 1;
                    if j1 >= n {
                        modulus *= BigInt::from(p).pow(r * (j1 - n + 1));
                    }
                }
            }
            if !modulus.is_one() {
                let mut terms: BTreeMap<u32, BigInt> = BTreeMap::new();
                for smask in 0u32..(1 << subset.len()) {
                    let mut level = 1u64;
                    for (i, &p) in subset.iter().enumerate() {
                        if smask >> i & 1 == 1 {
                            level *= p.pow(tuple[i]);
                        }
                    }
                    let sign = if smask.count_ones() % 2 == 0 {
                        BigInt::one()
                    } else {
                        -BigInt::one()
                    };
                    *terms
                        .entry(level as u32)
                        .or_insert_with(BigInt::zero) += sign;
                }
                let label = subset
                    .iter()
                    .zip(&tuple)
                    .map(|(p, n)| format!("{p}^{n}"))
                    .collect::<Vec<_>>()
                    .join(",");
                out.push(C2Congruence {
                    terms: terms.into_iter().collect(),
                    modulus,
                    label: format!("P={{{label}}}"),
                });
            }
            // advance the depth tuple
            let mut i = 0;
            loop {
                if i == subset.len() {
                    break;
                }
                tuple[i] += 1;
                if tuple[i] <= shape.height(subset[i]) {
                    break;
                }
                tuple[i] = 1;
                i += 1;
            }
            if i == subset.len() {
                break;
            }
        }
    }
    Ok(out)
}

/// The raw profile congruences: for every character profile, the combination
/// `sum_v a_v T_v` must vanish mod `|G|` (integrality of the multiplicity
/// series by exact division).
pub fn c1_congruences(shape: &AbelianShape) -> Result<Vec<C2Congruence>, CongruenceError> {
    let exponent = shape.exponent();
    if u32::try_from(exponent).map(is_genus_zero) != Ok(true) {
        return Err(CongruenceError::NonGenusZeroOrder(exponent));
    }
    let modulus = shape.order();
    let mut out = Vec::new();
    for (profile, _) in shape.profiles() {
        let sums = shape.order_sums_for_profile(&profile);
        let terms: Vec<(u32, BigInt)> = sums
            .into_iter()
            .filter(|(_, a)| !a.is_zero())
            .map(|(v, a)| (v as u32, a))
            .collect();
        out.push(C2Congruence {
            terms,
            modulus: modulus.clone(),
            label: crate::groups::profile_label(&profile),
        });
    }
    Ok(out)
}

/// The fourteen maximal-modulus congruences among the genus-zero Hauptmoduln
/// (levels and moduli as printed; maximality is re-verified in tests).
pub fn appendix_a_rows() -> Vec<(Vec<(u32, i64)>, BigInt)> {
    let pow = |p: u64, k: u32| BigInt::from(p).pow(k);
    vec![
        (vec![(1, 1), (2, -1)], pow(2, 16)),
        (vec![(1, 1), (4, -1)], pow(2, 8)),
        (vec![(1, 1), (8, -1)], pow(2, 4)),
        (vec![(1, 1), (16, -1)], pow(2, 2)),
        (vec![(1, 1), (3, -1)], pow(3, 9)),
        (vec![(1, 1), (9, -1)], pow(3, 3)),
        (vec![(1, 1), (5, -1)], pow(5, 5)),
        (vec![(1, 1), (25, -1)], pow(5, 1)),
        (vec![(1, 1), (7, -1)], pow(7, 4)),
        (vec![(1, 1), (13, -1)], pow(13, 2)),
        (vec![(1, 1), (2, -1), (3, -1), (6, 1)], pow(2, 4) * pow(3, 3)),
        (vec![(1, 1), (4, -1), (3, -1), (12, 1)], pow(2, 2) * pow(3, 2)),
        (vec![(1, 1), (2, -1), (9, -1), (18, 1)], pow(2, 2) * pow(3, 1)),
        (vec![(1, 1), (2, -1), (5, -1), (10, 1)], pow(2, 3) * pow(5, 2)),
    ]
}

pub fn terms_from_i64(terms: &[(u32, i64)]) -> Vec<(u32, BigInt)> {
    terms.iter().map(|&(n, a)| (n, BigInt::from(a))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma0_indices() {
        assert_eq!(index_gamma0(1), 1);
        assert_eq!(index_gamma0(7), 8);
        assert_eq!(index_gamma0(12), 24);
        assert_eq!(index_gamma0(16), 24);
        assert_eq!(index_gamma0(18), 36);
        assert_eq!(index_gamma0(25), 30);
    }

    #[test]
    fn sturm_prefixes() {
        assert_eq!(sturm_prefix(&[1, 7], 1), 7);
        assert_eq!(sturm_prefix(&[2, 9], 1), 35);
        assert_eq!(sturm_prefix(&[1], 1), 0);
        assert_eq!(sturm_prefix(&[1, 2, 4, 8, 16], 1), 23);
    }

    #[test]
    fn hauptmodul_combinations_have_unit_pole_scale() {
        // every T_N has only simple poles in q-scale, so s = 1
        for levels in [
            vec![1u32, 7],
            vec![1, 2, 4, 8, 16],
            vec![1, 2, 9, 18],
            vec![1, 2, 3, 6],
            vec![1, 25],
        ] {
            assert_eq!(pole_scale_bound(&levels).unwrap(), 1, "{levels:?}");
        }
    }

    #[test]
    fn t1_t7_certificate() {
        let mut set = HauptmodulSet::with_precision(12);
        let terms = terms_from_i64(&[(1, 1), (7, -1)]);
        let m = BigInt::from(2401);
        let cert = verify_congruence(&mut set, &terms, &m, None).unwrap();
        assert_eq!(cert.sturm_bound, 7);
        assert_eq!(cert.checked_prefix, 7);
        assert!(cert.passed());
        // maximality: fails at 7^5, first bad exponent has coefficient
        // 82 * 7^4 with 82 not divisible by 7
        let cert5 = verify_congruence(&mut set, &terms, &(m * 7), None).unwrap();
        assert_eq!(cert5.status, CertStatus::Fail(1));
    }

    #[test]
    fn certificate_json_round_trip() {
        let mut set = HauptmodulSet::with_precision(12);
        let terms = terms_from_i64(&[(1, 1), (7, -1)]);
        let cert =
            verify_congruence(&mut set, &terms, &BigInt::from(2401), None).unwrap();
        let json = cert.to_json();
        let (terms2, modulus, _) = CongruenceCertificate::from_json(&json).unwrap();
        assert_eq!(terms2, cert.terms);
        assert_eq!(modulus, cert.modulus);
        assert!(json.contains("\"status\": \"pass\""));
    }

    #[test]
    fn kernel_search_level_pair_seven() {
        let mut set = HauptmodulSet::with_precision(40);
        let (k, witness) =
            max_prime_power_relation(&mut set, &[1, 7], 7, 7).unwrap();
        assert_eq!(k, 4);
        assert_eq!(witness[0], BigInt::one());
        // -1 mod 7^4
        assert_eq!(witness[1], BigInt::from(2400));
    }

    #[test]
    fn kernel_search_single_level_is_trivial() {
        let mut set = HauptmodulSet::with_precision(40);
        let (k, _) = max_prime_power_relation(&mut set, &[1], 2, 23).unwrap();
        assert_eq!(k, 0);
    }

    #[test]
    fn kernel_search_monotone_in_prefix() {
        let mut set = HauptmodulSet::with_precision(40);
        let mut prev = u32::MAX;
        for prefix in [3i64, 7, 15, 23, 31] {
            let (k, _) = max_prime_power_relation(&mut set, &[1, 2, 4], 2, prefix).unwrap();
            assert!(k <= prev, "prefix {prefix}: k={k} > {prev}");
            prev = k;
        }
    }

    #[test]
    fn c2_for_z7_rank4() {
        let shape = AbelianShape::elementary(7, 4);
        let congs = c2_congruences(&shape).unwrap();
        assert_eq!(congs.len(), 1);
        assert_eq!(
            congs[0].terms,
            vec![(1, BigInt::one()), (7, -BigInt::one())]
        );
        assert_eq!(congs[0].modulus, BigInt::from(2401));
    }

    #[test]
    fn c2_for_mixed_two_three() {
        // (Z/2)^a x (Z/3)^b with P = {2,3}: T_1 - T_2 - T_3 + T_6 mod 2^a 3^b
        let shape = AbelianShape::new(&[(2, vec![3]), (3, vec![2])]).unwrap();
        let congs = c2_congruences(&shape).unwrap();
        assert_eq!(congs.len(), 3);
        let mixed = congs
            .iter()
            .find(|c| c.terms.len() == 4)
            .expect("mixed congruence");
        assert_eq!(
            mixed.terms,
            terms_from_i64(&[(1, 1), (2, -1), (3, -1), (6, 1)])
        );
        assert_eq!(mixed.modulus, BigInt::from(8 * 9));
    }

    #[test]
    fn c2_trivial_group_is_empty() {
        let shape = AbelianShape::trivial();
        assert!(c2_congruences(&shape).unwrap().is_empty());
    }

    #[test]
    fn c2_rejects_bad_exponent() {
        let shape = AbelianShape::elementary(11, 1);
        assert!(matches!(
            c2_congruences(&shape),
            Err(CongruenceError::NonGenusZeroOrder(11))
        ));
    }

    #[test]
    fn appendix_subset_passes() {
        let mut set = HauptmodulSet::with_precision(40);
        for (terms, modulus) in appendix_a_rows().into_iter().take(4) {
            let cert =
                verify_congruence(&mut set, &terms_from_i64(&terms), &modulus, None).unwrap();
            assert!(cert.passed(), "{terms:?} mod {modulus}");
        }
    }
}
