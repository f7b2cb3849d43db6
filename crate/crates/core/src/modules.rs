//! Trace assignments and module certificates.
//!
//! A [`TraceAssignment`] maps element orders (or conjugacy classes) to graded
//! trace series. Builders cover the three constructions used throughout:
//! - [`hauptmodul_assignment`]: order v acts by the Hauptmodul `T_v`
//! - [`theorem12_construct`]: `R_e = J|dT(d)`, `R_v = R_e - |G| Bbar_{v,t_v}`,
//!   with [`hecke_lift`] and [`regularize`] as follow-up steps
//! - [`tensor_assignment`]: classes act by products of rescaled `J`
//!
//! [`certify`] computes the multiplicity generating series of every
//! irreducible character, certifies integrality (by exact division, and by
//! Sturm-bounded congruences where the assignment is a Hauptmodul one),
//! checks nonnegativity against the closed-form threshold or a scan window,
//! spot-checks strictness of level numerically, and reports the asymptotic
//! representation profile. [`classify_abelian`] runs the whole pipeline over
//! a region of abelian shapes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::congruence::{
    c2_congruences, verify_congruence, CongruenceError, HauptmodulSet,
};
use crate::eta::{hauptmodul_quotient, is_genus_zero, numeric_invariance_check, EtaError, EtaQuotient};
use crate::groups::{AbelianShape, ClassData, GroupDescriptor, GroupError};
use crate::hecke::{hecke, HeckeError};
use crate::qseries::{j_function, QSeries, QSeriesRational};
use crate::rademacher;

#[derive(Debug, Error)]
pub enum ModulesError {
    #[error("element order {0} is not in the genus-zero list")]
    NonGenusZeroOrder(u64),
    #[error("depth {d} does not exceed h = {h}; asymptotic domination not guaranteed")]
    DepthTooSmall { d: u64, h: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("lift prime {p} must be coprime to the depth {depth} and the group order")]
    NotCoprime { p: u64, depth: u64 },
    #[error("assignment keys do not cover element order {0}")]
    MissingOrder(u64),
    #[error("negative multiplicity at the scan boundary; increase scan_precision (last negative at {0})")]
    ScanTooShort(i64),
    #[error("insufficient precision: need {need}, have {have}")]
    InsufficientPrecision { need: i64, have: i64 },
    #[error("classes with identical character columns carry different series: {0} and {1}")]
    OrbitInconsistent(usize, usize),
    #[error("cycle type {0:?} has lcm {1}, expected the class order {2}")]
    BadCycleType(Vec<u32>, u64, u64),
    #[error("nonnegativity threshold search failed: {0}")]
    Threshold(#[from] rademacher::RademacherError),
    #[error(transparent)]
    Series(#[from] crate::qseries::SeriesError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Eta(#[from] EtaError),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
}

/// How an assignment was built; drives the analytic profile classification
/// and the applicable nonnegativity regime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AssignmentKind {
    /// every order v acts by the Hauptmodul T_v
    Hauptmodul,
    /// R_e = J|dT(d), R_v = R_e - |G| Bbar_{v, t_v}
    Virtual,
    /// a Virtual assignment pushed through |pT(p)
    Lifted,
    /// a Lifted assignment with |G| (J|p'T(p')) added to R_e
    Regularized,
    /// classes act by products of rescaled J
    Tensor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum EntryKey {
    Order(u64),
    Class(usize),
}

impl std::fmt::Display for EntryKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EntryKey::Order(v) => write!(f, "order {v}"),
            EntryKey::Class(j) => write!(f, "class {j}"),
        }
    }
}

/// A graded trace assignment: one series per element order (or per class),
/// the group it serves, and the pole order of the identity series.
#[derive(Clone, Debug)]
pub struct TraceAssignment {
    pub kind: AssignmentKind,
    pub group: GroupDescriptor,
    pub depth: u64,
    pub entries: BTreeMap<EntryKey, QSeries>,
}

impl TraceAssignment {
    pub fn order_keyed(&self) -> bool {
        self.entries.keys().all(|k| matches!(k, EntryKey::Order(_)))
    }

    pub fn identity_entry(&self) -> &QSeries {
        match self.entries.get(&EntryKey::Order(1)) {
            Some(s) => s,
            None => self
                .entries
                .get(&EntryKey::Class(0))
                .expect("identity entry present"),
        }
    }

    /// Common exclusive upper bound of the known windows.
    pub fn window(&self) -> i64 {
        self.entries
            .values()
            .map(super::qseries::QSeries::precision)
            .min()
            .expect("nonempty assignment")
    }
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

/// `h = lcm { ord(g) - 1 : g != e }`.
pub fn h_of(group: &GroupDescriptor) -> u64 {
    group
        .element_order_counts()
        .keys()
        .filter(|&&v| v > 1)
        .fold(1u64, |acc, &v| acc.lcm(&(v - 1)))
}

/// `t_m = m h / (m - 1)`; integral whenever `(m-1) | h`.
pub fn t_exponent(m: u64, h: u64) -> u64 {
    assert!(m >= 2 && (m * h) % (m - 1) == 0);
    m * h / (m - 1)
}

/// `Bbar_{m,t} = m^{12t} (Delta(m tau)/Delta(tau))^t`, an integer series with
/// valuation `t(m-1)`.
pub fn bbar(m: u64, t: u64, precision: i64) -> Result<QSeries, ModulesError> {
    assert!(m >= 2 && t >= 1);
    let e = EtaQuotient::new(
        m as u32,
        &[(m as u32, 24 * t as i32), (1, -24 * t as i32)],
        0,
    );
    let series = e.expand(precision)?;
    let scale = BigInt::from(m).pow(12 * t as u32);
    Ok(series.scalar_mul(&scale))
}

/// The depth-one assignment `v -> T_v`; requires every element order to be a
/// genus-zero level.
pub fn hauptmodul_assignment(
    group: &GroupDescriptor,
    precision: i64,
) -> Result<TraceAssignment, ModulesError> {
    let mut entries = BTreeMap::new();
    for (&v, _) in &group.element_order_counts() {
        let level = u32::try_from(v).ok().filter(|&l| is_genus_zero(l));
        let Some(level) = level else {
            return Err(ModulesError::NonGenusZeroOrder(v));
        };
        entries.insert(
            EntryKey::Order(v),
            crate::eta::hauptmodul(level, precision)?,
        );
    }
    Ok(TraceAssignment {
        kind: AssignmentKind::Hauptmodul,
        group: group.clone(),
        depth: 1,
        entries,
    })
}

/// The finite-virtual construction: `R_e = J | dT(d)` and, for each order
/// `v > 1`, `R_v = R_e - |G| Bbar_{v, t_v}` with `t_v = v h/(v-1)`. Requires
/// `d > h` so the identity series dominates asymptotically.
pub fn theorem12_construct(
    group: &GroupDescriptor,
    d: u64,
    precision: i64,
) -> Result<TraceAssignment, ModulesError> {
    let h = h_of(group);
    if d <= h {
        return Err(ModulesError::DepthTooSmall { d, h });
    }
    let j = j_function(d as i64 * precision + 1);
    let r_e = hecke(&j, d)?.truncated(precision)?;
    let order_big = group.order();
    let mut entries = BTreeMap::new();
    for (&v, _) in &group.element_order_counts() {
        if v == 1 {
            entries.insert(EntryKey::Order(1), r_e.clone());
        } else {
            let t = t_exponent(v, h);
            let b = bbar(v, t, precision)?;
            entries.insert(EntryKey::Order(v), r_e.sub(&b.scalar_mul(&order_big)));
        }
    }
    Ok(TraceAssignment {
        kind: AssignmentKind::Virtual,
        group: group.clone(),
        depth: d,
        entries,
    })
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Push every entry through the normalized Hecke operator `|pT(p)`; the new
/// depth is `p * depth`. Congruences mod |G| among the entries are preserved
/// coefficientwise, so integrality of the multiplicities survives the lift.
pub fn hecke_lift(assignment: &TraceAssignment, p: u64) -> Result<TraceAssignment, ModulesError> {
    if !is_prime_u64(p) {
        return Err(ModulesError::NotPrime(p));
    }
    let order = &assignment.group.order();
    if assignment.depth % p == 0 || (order % BigInt::from(p)).is_zero() {
        return Err(ModulesError::NotCoprime {
            p,
            depth: assignment.depth,
        });
    }
    let mut entries = BTreeMap::new();
    for (key, series) in &assignment.entries {
        entries.insert(*key, hecke(series, p)?);
    }
    Ok(TraceAssignment {
        kind: AssignmentKind::Lifted,
        group: assignment.group.clone(),
        depth: assignment.depth * p,
        entries,
    })
}

/// Replace `R_e` by `|G| (J | p2 T(p2)) + R_e` for a prime `p2` exceeding the
/// depth; the regular profile of the added term dominates, making the module
/// asymptotically regular.
pub fn regularize(assignment: &TraceAssignment, p2: u64) -> Result<TraceAssignment, ModulesError> {
    if !is_prime_u64(p2) {
        return Err(ModulesError::NotPrime(p2));
    }
    if p2 <= assignment.depth {
        return Err(ModulesError::DepthTooSmall {
            d: p2,
            h: assignment.depth,
        });
    }
    let window = assignment.window();
    let j = j_function(p2 as i64 * window + 1);
    let extra = hecke(&j, p2)?
        .truncated(window)?
        .scalar_mul(&assignment.group.order());
    let mut entries = assignment.entries.clone();
    let key = if assignment.order_keyed() {
        EntryKey::Order(1)
    } else {
        EntryKey::Class(0)
    };
    let r_e = entries.get(&key).expect("identity entry").add(&extra);
    entries.insert(key, r_e);
    Ok(TraceAssignment {
        kind: AssignmentKind::Regularized,
        group: assignment.group.clone(),
        depth: p2,
        entries,
    })
}

/// `J(k_1 tau) J(k_2 tau) ... J(k_d tau)` for a cycle type.
pub fn tensor_trace(cycle_type: &[u32], precision: i64) -> QSeries {
    assert!(!cycle_type.is_empty());
    let total: i64 = cycle_type.iter().map(|&k| k as i64).sum();
    let j = j_function(precision + total);
    let mut acc: Option<QSeries> = None;
    for &k in cycle_type {
        let f = j.rescale(k);
        acc = Some(match acc {
            None => f,
            Some(a) => a.mul(&f),
        });
    }
    acc.unwrap().truncated(precision).expect("window covers")
}

/// Class-keyed assignment from per-class cycle types (a permutation action on
/// a tensor power of a graded space with dimension series J).
pub fn tensor_assignment(
    class_data: &ClassData,
    cycle_types: &[Vec<u32>],
    precision: i64,
) -> Result<TraceAssignment, ModulesError> {
    assert_eq!(cycle_types.len(), class_data.num_classes());
    let mut entries = BTreeMap::new();
    for (j, ct) in cycle_types.iter().enumerate() {
        let lcm = ct.iter().fold(1u64, |acc, &k| acc.lcm(&(k as u64)));
        if lcm != class_data.orders[j] {
            return Err(ModulesError::BadCycleType(
                ct.clone(),
                lcm,
                class_data.orders[j],
            ));
        }
        entries.insert(EntryKey::Class(j), tensor_trace(ct, precision));
    }
    // classes with identical character columns must share one series
    let k = class_data.num_classes();
    for a in 0..k {
        for b in a + 1..k {
            let same_column = (0..k).all(|i| class_data.table[i][a] == class_data.table[i][b]);
            if same_column
                && entries[&EntryKey::Class(a)].agrees_with(&entries[&EntryKey::Class(b)])
                    != Some(true)
            {
                return Err(ModulesError::OrbitInconsistent(a, b));
            }
        }
    }
    let depth = cycle_types[0].iter().map(|&k| k as u64).sum();
    Ok(TraceAssignment {
        kind: AssignmentKind::Tensor,
        group: GroupDescriptor::Classes(class_data.clone()),
        depth,
        entries,
    })
}

// ---------------------------------------------------------------------------
// Multiplicity series
// ---------------------------------------------------------------------------

/// One multiplicity generating series with its provenance: the character (or
/// profile of characters) it belongs to, how many characters share it, and
/// the dimension.
#[derive(Clone, Debug)]
pub struct MultiplicityRow {
    pub label: String,
    pub dim: i64,
    pub count: BigInt,
    pub series: QSeriesRational,
}

/// `F_i = (1/|G|) sum_r a_r^{(i)} R_r` (order-keyed) or
/// `F_i = (1/|G|) sum_j #[g_j] chi_i(g_j) R_j` (class-keyed), exactly.
pub fn multiplicity_series(assignment: &TraceAssignment) -> Result<Vec<MultiplicityRow>, ModulesError> {
    let order = assignment.group.order();
    let mut rows = Vec::new();
    if assignment.order_keyed() {
        for (summary, count, label) in assignment.group.summaries() {
            let mut acc: Option<QSeries> = None;
            for (&r, a) in &summary.a {
                if a.is_zero() {
                    continue;
                }
                let series = assignment
                    .entries
                    .get(&EntryKey::Order(r))
                    .ok_or(ModulesError::MissingOrder(r))?;
                let t = series.scalar_mul(a);
                acc = Some(match acc {
                    None => t,
                    Some(s) => s.add(&t),
                });
            }
            let combo = acc.expect("summary has a_1 = dim != 0");
            rows.push(MultiplicityRow {
                label,
                dim: summary.dim,
                count,
                series: QSeriesRational::from_integer_div(&combo, &order),
            });
        }
    } else {
        let GroupDescriptor::Classes(data) = &assignment.group else {
            unreachable!("class-keyed assignments carry class data");
        };
        for i in 0..data.num_classes() {
            let mut acc: Option<QSeries> = None;
            for j in 0..data.num_classes() {
                let series = &assignment.entries[&EntryKey::Class(j)];
                let weight = BigInt::from(data.sizes[j]) * &data.table[i][j];
                if weight.is_zero() {
                    continue;
                }
                let t = series.scalar_mul(&weight);
                acc = Some(match acc {
                    None => t,
                    Some(s) => s.add(&t),
                });
            }
            rows.push(MultiplicityRow {
                label: format!("chi{}", i + 1),
                dim: data.dims()[i],
                count: BigInt::one(),
                series: QSeriesRational::from_integer_div(&acc.expect("identity column"), &order),
            });
        }
    }
    Ok(rows)
}

/// Inverse of the orthogonality transform: `R_j = sum_i chi_i(g_j) F_i`.
pub fn reconstruct_traces(data: &ClassData, series: &[QSeriesRational]) -> Vec<QSeriesRational> {
    (0..data.num_classes())
        .map(|j| {
            let mut acc: Option<QSeriesRational> = None;
            for (i, f) in series.iter().enumerate() {
                let w = BigRational::from_integer(data.table[i][j].clone());
                let t = f.scalar_mul(&w);
                acc = Some(match acc {
                    None => t,
                    Some(s) => s.add(&t),
                });
            }
            acc.expect("nonempty table")
        })
        .collect()
}

/// Smallest admissible lift prime: prime `p` exceeding the last negative
/// multiplicity index, coprime to the depth and the group order. The scan
/// window must extend safely past the last negative index; for Hauptmodul
/// assignments the closed-form threshold replaces the heuristic margin.
pub fn find_lift_prime(
    assignment: &TraceAssignment,
    scan_precision: i64,
) -> Result<u64, ModulesError> {
    let window = assignment.window().min(scan_precision);
    let rows = multiplicity_series(assignment)?;
    let mut last_negative: i64 = 0;
    for row in &rows {
        if let Some(n) = row.series.last_negative() {
            last_negative = last_negative.max(n);
        }
    }
    match assignment.kind {
        AssignmentKind::Hauptmodul => {
            let stats = order_stats_u64(&assignment.group);
            let n0 = rademacher::nonneg_threshold(&stats)? as i64;
            if window <= n0.max(last_negative) {
                return Err(ModulesError::ScanTooShort(last_negative));
            }
        }
        _ => {
            // asymptotic-domination gate: the scan must extend 20% past the
            // last negative index, and every series must have grown positive
            // and increasing on the tail.
            let margin = (window / 6).max(10);
            if last_negative > window - margin {
                return Err(ModulesError::ScanTooShort(last_negative));
            }
            for row in &rows {
                for n in window - 3..window {
                    let cur = row.series.coeff(n).expect("within window");
                    let prev = row.series.coeff(n - 1).expect("within window");
                    if cur.is_negative() || cur < prev {
                        return Err(ModulesError::ScanTooShort(last_negative.max(n)));
                    }
                }
            }
        }
    }
    let order = &assignment.group.order();
    let mut p = (last_negative.max(1) as u64) + 1;
    loop {
        if is_prime_u64(p)
            && assignment.depth % p != 0
            && !(order % BigInt::from(p)).is_zero()
        {
            return Ok(p);
        }
        p += 1;
    }
}

fn order_stats_u64(group: &GroupDescriptor) -> BTreeMap<u64, u64> {
    group
        .element_order_counts()
        .into_iter()
        .map(|(v, c)| (v, c.to_u64().expect("order statistics fit u64")))
        .collect()
}

// ---------------------------------------------------------------------------
// Certification
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitProfile {
    /// proportions tend to dim(chi_i)/sum dim(chi_j)
    Regular,
    /// the trivial character swallows everything
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NonnegRegime {
    /// exact prefix check up to the closed-form threshold: nonnegativity is
    /// proven for all n
    SturmThreshold { n0: u64 },
    /// exact prefix check plus an asymptotic-domination gate at the boundary
    PrefixAsymptotic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckOutcome {
    Pass,
    Skipped,
    Fail { witness: String },
}

/// The certificate produced by [`certify`]: per-character multiplicity
/// prefixes, the integrality and nonnegativity verdicts with their regimes,
/// the level-strictness spot check, and the asymptotic profile.
#[derive(Clone, Debug)]
pub struct ModuleCertificate {
    pub kind: AssignmentKind,
    pub group_label: String,
    pub depth: u64,
    pub characters: Vec<CharacterRecord>,
    pub integrality: CheckOutcome,
    /// integrality additionally proven for all n by Sturm certificates
    pub sturm_proven: bool,
    pub nonneg: CheckOutcome,
    pub nonneg_prefix: i64,
    pub threshold_n0: Option<u64>,
    pub regime: NonnegRegime,
    pub strictness: CheckOutcome,
    pub limit: LimitProfile,
    pub status: bool,
}

#[derive(Clone, Debug)]
pub struct CharacterRecord {
    pub label: String,
    pub dim: i64,
    pub count: BigInt,
    /// integer multiplicity prefix (present when integrality passed)
    pub series: Option<QSeries>,
}

impl ModuleCertificate {
    /// Exact representation proportions `delta(mult_i(n))` at a given n, in
    /// character order, with the total.
    pub fn proportions_at(&self, n: i64) -> Option<(Vec<BigRational>, BigRational)> {
        let mut values = Vec::new();
        let mut total = BigRational::zero();
        for c in &self.characters {
            let s = c.series.as_ref()?;
            let v = s.coeff(n)?.clone();
            let v = BigRational::from_integer(v);
            total += &v * BigRational::from_integer(c.count.clone());
            values.push(v);
        }
        if total.is_zero() {
            return None;
        }
        Some((values.iter().map(|v| v / &total).collect(), total))
    }

    /// Limiting proportions per character (dim/sum(dim) or the trivial spike).
    pub fn limit_proportions(&self) -> Vec<BigRational> {
        match self.limit {
            LimitProfile::Trivial => self
                .characters
                .iter()
                .enumerate()
                .map(|(i, _)| {
                    if i == 0 {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect(),
            LimitProfile::Regular => {
                let total: BigInt = self
                    .characters
                    .iter()
                    .map(|c| BigInt::from(c.dim) * &c.count)
                    .sum();
                self.characters
                    .iter()
                    .map(|c| BigRational::new(BigInt::from(c.dim), total.clone()))
                    .collect()
            }
        }
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct CharJson {
            label: String,
            dim: i64,
            count: String,
            prefix: Vec<(i64, String)>,
        }
        #[derive(Serialize)]
        struct Json<'a> {
            version: &'a str,
            kind: &'a AssignmentKind,
            group: &'a str,
            depth: u64,
            integrality: &'a CheckOutcome,
            sturm_proven: bool,
            nonneg: &'a CheckOutcome,
            nonneg_prefix: i64,
            threshold_n0: Option<u64>,
            regime: &'a NonnegRegime,
            strictness: &'a CheckOutcome,
            limit: &'a LimitProfile,
            limit_proportions: Vec<String>,
            status: bool,
            characters: Vec<CharJson>,
        }
        let characters = self
            .characters
            .iter()
            .map(|c| CharJson {
                label: c.label.clone(),
                dim: c.dim,
                count: c.count.to_string(),
                prefix: c
                    .series
                    .as_ref()
                    .map(|s| {
                        (s.valuation()..s.precision())
                            .map(|n| (n, s.coeff_known(n).to_string()))
                            .collect()
                    })
                    .unwrap_or_default(),
            })
            .collect();
        serde_json::to_string_pretty(&Json {
            version: env!("CARGO_PKG_VERSION"),
            kind: &self.kind,
            group: &self.group_label,
            depth: self.depth,
            integrality: &self.integrality,
            sturm_proven: self.sturm_proven,
            nonneg: &self.nonneg,
            nonneg_prefix: self.nonneg_prefix,
            threshold_n0: self.threshold_n0,
            regime: &self.regime,
            strictness: &self.strictness,
            limit: &self.limit,
            limit_proportions: self
                .limit_proportions()
                .iter()
                .map(|r| r.to_string())
                .collect(),
            status: self.status,
            characters,
        })
        .expect("serializable")
    }
}

/// Certify an assignment: exact integrality and nonnegativity of every
/// multiplicity series on the available window, Sturm congruence proofs and
/// the closed-form nonnegativity threshold for Hauptmodul assignments, and a
/// numeric strictness spot check.
pub fn certify(assignment: &TraceAssignment, precision: i64) -> Result<ModuleCertificate, ModulesError> {
    let window = assignment.window().min(precision);
    let rows = multiplicity_series(assignment)?;

    // integrality by exact division
    let mut integrality = CheckOutcome::Pass;
    let mut characters = Vec::new();
    for row in &rows {
        match row.series.to_integer() {
            Ok(s) => characters.push(CharacterRecord {
                label: row.label.clone(),
                dim: row.dim,
                count: row.count.clone(),
                series: Some(s.truncated(window).ok()).flatten(),
            }),
            Err(n) => {
                integrality = CheckOutcome::Fail {
                    witness: format!("{}: non-integral coefficient at q^{n}", row.label),
                };
                characters.push(CharacterRecord {
                    label: row.label.clone(),
                    dim: row.dim,
                    count: row.count.clone(),
                    series: None,
                });
            }
        }
    }

    // Sturm-certified integrality for Hauptmodul assignments: each character
    // combination sum_r a_r T_r vanishes mod |G| with a finite check
    let mut sturm_proven = false;
    if assignment.kind == AssignmentKind::Hauptmodul && integrality == CheckOutcome::Pass {
        let order = assignment.group.order();
        let mut set = HauptmodulSet::with_precision(40);
        sturm_proven = true;
        for (summary, _, _) in assignment.group.summaries() {
            let terms: Vec<(u32, BigInt)> = summary
                .a
                .iter()
                .filter(|(_, a)| !a.is_zero())
                .map(|(&r, a)| (r as u32, a.clone()))
                .collect();
            let cert = verify_congruence(&mut set, &terms, &order, None)?;
            if !cert.passed() {
                sturm_proven = false;
                integrality = CheckOutcome::Fail {
                    witness: format!("Sturm certificate failed for {terms:?}"),
                };
                break;
            }
        }
    }

    // nonnegativity
    let mut threshold_n0 = None;
    let regime;
    let mut nonneg = CheckOutcome::Pass;
    let mut first_negative: Option<(String, i64)> = None;
    for row in &rows {
        if let Some(n) = row.series.first_negative() {
            if first_negative.as_ref().map_or(true, |&(_, m)| n < m) {
                first_negative = Some((row.label.clone(), n));
            }
        }
    }
    match assignment.kind {
        AssignmentKind::Hauptmodul => {
            let stats = order_stats_u64(&assignment.group);
            let n0 = rademacher::nonneg_threshold(&stats)?;
            threshold_n0 = Some(n0);
            regime = NonnegRegime::SturmThreshold { n0 };
            if window <= n0 as i64 {
                return Err(ModulesError::InsufficientPrecision {
                    need: n0 as i64 + 1,
                    have: window,
                });
            }
        }
        _ => {
            regime = NonnegRegime::PrefixAsymptotic;
        }
    }
    if let Some((label, n)) = &first_negative {
        nonneg = CheckOutcome::Fail {
            witness: format!("{label}: negative multiplicity at q^{n}"),
        };
    }

    // strictness of level: numeric invariance spot check on the eta-quotient
    // building block of each non-identity order
    let strictness = match assignment.kind {
        AssignmentKind::Hauptmodul => {
            strictness_check(&assignment.group, |v| hauptmodul_quotient(v).cloned())?
        }
        AssignmentKind::Virtual | AssignmentKind::Lifted | AssignmentKind::Regularized => {
            let h = h_of(&assignment.group);
            strictness_check(&assignment.group, |v| {
                let t = t_exponent(v as u64, h) as i32;
                Ok(EtaQuotient::new(v, &[(v, 24 * t), (1, -24 * t)], 0))
            })?
        }
        AssignmentKind::Tensor => CheckOutcome::Skipped,
    };

    let limit = match assignment.kind {
        AssignmentKind::Hauptmodul | AssignmentKind::Regularized | AssignmentKind::Tensor => {
            LimitProfile::Regular
        }
        AssignmentKind::Virtual | AssignmentKind::Lifted => LimitProfile::Trivial,
    };

    let status = integrality == CheckOutcome::Pass
        && nonneg == CheckOutcome::Pass
        && !matches!(strictness, CheckOutcome::Fail { .. });
    Ok(ModuleCertificate {
        kind: assignment.kind,
        group_label: group_label(&assignment.group),
        depth: assignment.depth,
        characters,
        integrality,
        sturm_proven,
        nonneg,
        nonneg_prefix: window - 1,
        threshold_n0,
        regime,
        strictness,
        limit,
        status,
    })
}

fn strictness_check<F>(group: &GroupDescriptor, quotient: F) -> Result<CheckOutcome, ModulesError>
where
    F: Fn(u32) -> Result<EtaQuotient, EtaError>,
{
    for (&v, _) in &group.element_order_counts() {
        if v == 1 {
            continue;
        }
        let v = v as u32;
        let e = quotient(v)?;
        if !numeric_invariance_check(&e, v, 2)? {
            return Ok(CheckOutcome::Fail {
                witness: format!("order {v}: not invariant under its own level"),
            });
        }
        // not invariant under Gamma_0(v/p) for any maximal proper divisor
        for p in [2u32, 3, 5, 7, 13] {
            if v % p == 0 {
                if numeric_invariance_check(&e, v / p, 2)? {
                    return Ok(CheckOutcome::Fail {
                        witness: format!("order {v}: also invariant on level {}", v / p),
                    });
                }
            }
        }
    }
    Ok(CheckOutcome::Pass)
}

pub fn group_label(group: &GroupDescriptor) -> String {
    match group {
        GroupDescriptor::Abelian(s) => format!("{s}"),
        GroupDescriptor::Classes(c) => format!("group of order {}", c.order()),
    }
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

/// Why a shape was rejected (or that it was accepted).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassifyOutcome {
    Accepted,
    FailsIntegrality { label: String },
    FailsNonnegativity { witness: i64 },
}

#[derive(Clone, Debug)]
pub struct ClassifyRecord {
    pub shape: AbelianShape,
    pub outcome: ClassifyOutcome,
}

/// Classify the abelian shapes with exponent in the genus-zero list and order
/// at most `max_order`: a shape is accepted iff every (C2) congruence holds
/// at its required modulus and every multiplicity is nonnegative up to
/// `max(100, threshold)`.
pub fn classify_abelian(max_order: u64) -> Result<Vec<ClassifyRecord>, ModulesError> {
    let mut set = HauptmodulSet::with_precision(110);
    // maximal prime-power divisibility of each distinct congruence combination
    let mut max_power: BTreeMap<Vec<(u32, i64)>, BTreeMap<u64, u32>> = BTreeMap::new();

    let shapes: Vec<AbelianShape> = AbelianShape::enumerate_up_to(max_order)
        .into_iter()
        .filter(|s| {
            u32::try_from(s.exponent())
                .map(is_genus_zero)
                .unwrap_or(false)
        })
        .collect();
    let mut out = Vec::new();
    for shape in shapes {
        let mut outcome = ClassifyOutcome::Accepted;
        for cong in c2_congruences(&shape)? {
            let key: Vec<(u32, i64)> = cong
                .terms
                .iter()
                .map(|(n, a)| (*n, a.to_i64().expect("unit coefficients")))
                .collect();
            let powers = match max_power.get(&key) {
                Some(p) => p,
                None => {
                    let levels: Vec<u32> = key.iter().map(|&(n, _)| n).collect();
                    let s = crate::congruence::pole_scale_bound(&levels)?;
                    let prefix = crate::congruence::sturm_prefix(&levels, s);
                    set.ensure(prefix + 1);
                    let combo = set.combination(&cong.terms);
                    let mut powers = BTreeMap::new();
                    for p in [2u64, 3, 5, 7, 13] {
                        powers.insert(p, min_padic_valuation(&combo, p, prefix));
                    }
                    max_power.entry(key.clone()).or_insert(powers)
                }
            };
            // required exponent per prime from the congruence modulus
            let mut need = cong.modulus.clone();
            for (&p, &have) in powers {
                let mut e = 0u32;
                while (&need % BigInt::from(p)).is_zero() {
                    need /= BigInt::from(p);
                    e += 1;
                }
                if e > have {
                    outcome = ClassifyOutcome::FailsIntegrality {
                        label: cong.label.clone(),
                    };
                    break;
                }
            }
            if outcome != ClassifyOutcome::Accepted {
                break;
            }
            debug_assert!(need.is_one(), "modulus has only genus-zero primes");
        }
        if outcome == ClassifyOutcome::Accepted {
            let stats: BTreeMap<u64, u64> = shape
                .element_order_counts()
                .into_iter()
                .map(|(v, c)| (v, c.to_u64().expect("fits")))
                .collect();
            let n0 = rademacher::nonneg_threshold(&stats)?;
            let check_to = (n0 as i64).max(100);
            set.ensure(check_to + 1);
            let order = shape.order();
            'profiles: for (profile, _) in shape.profiles() {
                let sums = shape.order_sums_for_profile(&profile);
                let terms: Vec<(u32, BigInt)> = sums
                    .into_iter()
                    .filter(|(_, a)| !a.is_zero())
                    .map(|(v, a)| (v as u32, a))
                    .collect();
                let combo = set.combination(&terms);
                let f = QSeriesRational::from_integer_div(&combo, &order);
                for n in f.valuation()..=check_to {
                    if f.coeff(n).expect("window ensured").is_negative() {
                        outcome = ClassifyOutcome::FailsNonnegativity { witness: n };
                        break 'profiles;
                    }
                }
            }
        }
        out.push(ClassifyRecord { shape, outcome });
    }
    Ok(out)
}

fn min_padic_valuation(series: &QSeries, p: u64, prefix: i64) -> u32 {
    let pb = BigInt::from(p);
    let mut best = u32::MAX;
    for n in series.valuation()..=prefix.min(series.precision() - 1) {
        let mut c = series.coeff_known(n).clone();
        if c.is_zero() {
            continue;
        }
        let mut v = 0u32;
        while (&c % &pb).is_zero() {
            c /= &pb;
            v += 1;
            if v >= best {
                break;
            }
        }
        best = best.min(v);
        if best == 0 {
            break;
        }
    }
    best
}

/// Robust f64 value of a big rational (shifting down when the parts overflow).
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let bits = r.numer().bits().max(r.denom().bits());
    let shift = bits.saturating_sub(512) as u64;
    let n = r.numer() >> shift;
    let d = r.denom() >> shift;
    n.to_f64().unwrap_or(f64::NAN) / d.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn z7_4() -> GroupDescriptor {
        GroupDescriptor::Abelian(AbelianShape::elementary(7, 4))
    }

    #[test]
    fn z7_rank4_multiplicities() {
        let assignment = hauptmodul_assignment(&z7_4(), 12).unwrap();
        let rows = multiplicity_series(&assignment).unwrap();
        assert_eq!(rows.len(), 2);
        let nontrivial = rows.iter().find(|r| r.count == big(2400)).unwrap();
        // (T_1 - T_7)/2401 = 82q + 8952q^2 + 359975q^3 + 8432260q^4 + ...
        let f = nontrivial.series.to_integer().expect("integral");
        assert_eq!(f.coeff_known(1), &big(82));
        assert_eq!(f.coeff_known(2), &big(8952));
        assert_eq!(f.coeff_known(3), &big(359975));
        assert_eq!(f.coeff_known(4), &big(8432260));
        // the trivial character gets (T_1 + 2400 T_7)/2401
        let trivial = rows.iter().find(|r| r.count == big(1)).unwrap();
        let f1 = trivial.series.to_integer().expect("integral");
        assert_eq!(f1.coeff_known(-1), &big(1));
        assert_eq!(f1.coeff_known(1), &big(84));
    }

    #[test]
    fn z7_rank4_certificate() {
        let assignment = hauptmodul_assignment(&z7_4(), 12).unwrap();
        let cert = certify(&assignment, 12).unwrap();
        assert!(cert.status, "{:?}", cert);
        assert!(cert.sturm_proven);
        assert_eq!(cert.threshold_n0, Some(2));
        assert_eq!(cert.limit, LimitProfile::Regular);
        let limits = cert.limit_proportions();
        assert_eq!(limits[0], BigRational::new(big(1), big(2401)));
        // delta(mult_1(1)) = 84/196884
        let (props, _) = cert.proportions_at(1).unwrap();
        assert_eq!(props[0], BigRational::new(big(84), big(196884)));
        let v = ratio_to_f64(&props[0]);
        assert!((v - 4.2664e-4).abs() < 1e-8, "{v}");
    }

    #[test]
    fn hauptmodul_assignment_rejects_order_11() {
        let g = GroupDescriptor::Abelian(AbelianShape::elementary(11, 1));
        assert!(matches!(
            hauptmodul_assignment(&g, 8),
            Err(ModulesError::NonGenusZeroOrder(11))
        ));
    }

    #[test]
    fn s4_h_and_t_values() {
        let s4 = GroupDescriptor::Classes(ClassData::s4());
        assert_eq!(h_of(&s4), 6);
        assert_eq!(t_exponent(2, 6), 12);
        assert_eq!(t_exponent(3, 6), 9);
        assert_eq!(t_exponent(4, 6), 8);
    }

    #[test]
    fn bbar_leading_terms() {
        // Bbar_{2,1} = 2^12 (q + 24 q^2 + ...)
        let b = bbar(2, 1, 5).unwrap();
        assert_eq!(b.coeff_known(1), &(big(24 * 0 + 1) << 12));
        assert_eq!(b.coeff_known(2), &(big(24) << 12));
        // valuation of Bbar_{2,12} is t(m-1) = 12
        let b = bbar(2, 12, 16).unwrap();
        assert_eq!(b.order(), Some(12));
        assert_eq!(b.coeff_known(12), &BigInt::from(2u64).pow(144));
    }

    #[test]
    fn theorem12_requires_depth_above_h() {
        let s4 = GroupDescriptor::Classes(ClassData::s4());
        assert!(matches!(
            theorem12_construct(&s4, 6, 12),
            Err(ModulesError::DepthTooSmall { d: 6, h: 6 })
        ));
    }

    #[test]
    fn s4_theorem12_assignment() {
        let s4 = GroupDescriptor::Classes(ClassData::s4());
        let a = theorem12_construct(&s4, 7, 30).unwrap();
        // R_1 = J|7T(7) = q^{-7} + 44656994071935 q + ...
        let r1 = &a.entries[&EntryKey::Order(1)];
        assert_eq!(r1.coeff_known(-7), &big(1));
        assert_eq!(r1.coeff_known(1), &big(44656994071935));
        // F_1 = R_1 - 9 Bbar_2 - 8 Bbar_3 - 6 Bbar_4 as a series identity
        let rows = multiplicity_series(&a).unwrap();
        let f1 = rows[0].series.to_integer().expect("integral");
        let expect = r1
            .sub(&bbar(2, 12, 30).unwrap().scalar_mul(&big(9)))
            .sub(&bbar(3, 9, 30).unwrap().scalar_mul(&big(8)))
            .sub(&bbar(4, 8, 30).unwrap().scalar_mul(&big(6)));
        crate::qseries::assert_agree(&f1, &expect, "F_1 combination");
    }

    #[test]
    fn lift_preserves_integrality() {
        let s4 = GroupDescriptor::Classes(ClassData::s4());
        let a = theorem12_construct(&s4, 7, 2 * 13 + 2).unwrap();
        let lifted = hecke_lift(&a, 13).unwrap();
        assert_eq!(lifted.depth, 91);
        for row in multiplicity_series(&lifted).unwrap() {
            assert!(row.series.to_integer().is_ok(), "{}", row.label);
        }
        // coprimality enforcement
        assert!(matches!(
            hecke_lift(&a, 7),
            Err(ModulesError::NotCoprime { .. })
        ));
        assert!(matches!(
            hecke_lift(&a, 3),
            Err(ModulesError::NotCoprime { .. })
        ));
        assert!(matches!(hecke_lift(&a, 1), Err(ModulesError::NotPrime(1))));
    }

    #[test]
    fn tensor_traces() {
        // cycle type (n) gives J(n tau); (1,1) gives J^2
        let t = tensor_trace(&[3], 5);
        let j = j_function(8);
        crate::qseries::assert_agree(&t, &j.rescale(3).truncated(5).unwrap(), "J(3 tau)");
        let t2 = tensor_trace(&[1, 1], 5);
        crate::qseries::assert_agree(&t2, &j.mul(&j).truncated(5).unwrap(), "J^2");
    }

    #[test]
    fn s4_tensor_assignment_is_a_module() {
        let s4 = ClassData::s4();
        let cycle_types: Vec<Vec<u32>> = vec![
            vec![1, 1, 1, 1],
            vec![2, 1, 1],
            vec![2, 2],
            vec![3, 1],
            vec![4],
        ];
        let a = tensor_assignment(&s4, &cycle_types, 8).unwrap();
        assert_eq!(a.depth, 4);
        let rows = multiplicity_series(&a).unwrap();
        for row in &rows {
            let f = row.series.to_integer().expect("integral");
            for n in f.valuation()..f.precision() {
                assert!(!f.coeff_known(n).is_negative(), "{} at {n}", row.label);
            }
        }
        // round trip through the character table
        let series: Vec<QSeriesRational> = rows.iter().map(|r| r.series.clone()).collect();
        let back = reconstruct_traces(&s4, &series);
        for (j, r) in back.iter().enumerate() {
            let original = &a.entries[&EntryKey::Class(j)];
            let rec = r.to_integer().expect("integer traces");
            assert_eq!(
                rec.agrees_with(original),
                Some(true),
                "class {j} round trip"
            );
        }
    }

    #[test]
    fn classify_smallest_region() {
        let records = classify_abelian(16).unwrap();
        // every 2-group of order <= 16 with exponent <= 16 is in the table
        for r in &records {
            assert_eq!(
                r.outcome,
                ClassifyOutcome::Accepted,
                "{} should be accepted",
                r.shape
            );
        }
        let trivial = records
            .iter()
            .find(|r| r.shape == AbelianShape::trivial())
            .unwrap();
        assert_eq!(trivial.outcome, ClassifyOutcome::Accepted);
    }
}
