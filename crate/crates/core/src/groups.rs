//! Group descriptors and order-restricted character sums.
//!
//! Two kinds of descriptor are supported:
//! - [`AbelianShape`]: a finite abelian group as prime layers
//!   `prod_p prod_j (Z/p^j Z)^{r_{p,j}}`, with the torsion-profile
//!   combinatorics (`pi_p`, `c_p`, profile enumeration) that determine all
//!   order-restricted character sums in closed form
//! - [`ClassData`]: explicit conjugacy-class data with an integer character
//!   table, validated through the Schur orthogonality relations
//!
//! A brute-force oracle evaluates character sums as exact cyclotomic
//! integers and projects them to rational integers, independently of the
//! closed-form route.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("layer list for prime {0} has a trailing zero")]
    TrailingZero(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("group too large for brute force: order {0} exceeds {1}")]
    TooLarge(BigInt, u64),
    #[error("character sum projected to a non-integer (residual degree {0})")]
    NonIntegralProjection(usize),
    #[error("inconsistent character table: {0}")]
    InconsistentTable(String),
    #[error("malformed group descriptor: {0}")]
    Malformed(String),
}

fn is_prime(n: u64) -> bool {
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

// ---------------------------------------------------------------------------
// Abelian shapes
// ---------------------------------------------------------------------------

/// A finite abelian group `prod_p prod_{j=1}^{h_p} (Z/p^j Z)^{r_{p,j}}`,
/// stored as `p -> [r_{p,1}, ..., r_{p,h_p}]` with nonzero trailing entry.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct AbelianShape {
    layers: BTreeMap<u64, Vec<u32>>,
}

/// Character profile: for each prime of the shape, the torsion depth
/// `n_p` in `1..=h_p`, or the sentinel `h_p + 1` when the character is
/// trivial on the p-part.
pub type Profile = BTreeMap<u64, u32>;

impl AbelianShape {
    pub fn new(layers: &[(u64, Vec<u32>)]) -> Result<Self, GroupError> {
        let mut map = BTreeMap::new();
        for (p, rs) in layers {
            if !is_prime(*p) {
                return Err(GroupError::NotPrime(*p));
            }
            let mut rs = rs.clone();
            while rs.last() == Some(&0) {
                rs.pop();
            }
            if !rs.is_empty() {
                map.insert(*p, rs);
            }
        }
        Ok(AbelianShape { layers: map })
    }

    pub fn trivial() -> Self {
        AbelianShape {
            layers: BTreeMap::new(),
        }
    }

    /// Elementary abelian `(Z/pZ)^r`.
    pub fn elementary(p: u64, r: u32) -> Self {
        AbelianShape::new(&[(p, vec![r])]).expect("prime")
    }

    pub fn layers(&self) -> &BTreeMap<u64, Vec<u32>> {
        &self.layers
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.layers.keys().copied()
    }

    /// `h_p`: the largest layer index for `p` (0 if `p` does not occur).
    pub fn height(&self, p: u64) -> u32 {
        self.layers.get(&p).map_or(0, |rs| rs.len() as u32)
    }

    pub fn order(&self) -> BigInt {
        let mut n = BigInt::one();
        for (&p, rs) in &self.layers {
            for (j, &r) in rs.iter().enumerate() {
                n *= BigInt::from(p).pow((j as u32 + 1) * r);
            }
        }
        n
    }

    /// Exponent `prod_p p^{h_p}` (the largest element order).
    pub fn exponent(&self) -> u64 {
        self.layers
            .iter()
            .map(|(&p, rs)| p.pow(rs.len() as u32))
            .product()
    }

    fn p_part_order(&self, p: u64) -> BigInt {
        let mut n = BigInt::one();
        if let Some(rs) = self.layers.get(&p) {
            for (j, &r) in rs.iter().enumerate() {
                n *= BigInt::from(p).pow((j as u32 + 1) * r);
            }
        }
        n
    }

    /// `pi_p(t)`: the number of p-part elements killed by `p^{t-1}`, i.e.
    /// `p^{sum_j min(j, t-1) r_{p,j}}`; by convention `pi_p(0) = 0` and
    /// `pi_p(1) = 1`.
    pub fn pi_p(&self, p: u64, t: u32) -> BigInt {
        if t == 0 {
            return BigInt::zero();
        }
        let mut e = 0u32;
        if let Some(rs) = self.layers.get(&p) {
            for (j, &r) in rs.iter().enumerate() {
                e += (j as u32 + 1).min(t - 1) * r;
            }
        }
        BigInt::from(p).pow(e)
    }

    /// `c_p(n,t)`: 0 if `t > n`; `-pi_p(t)` if `t = n`; `pi_p(t+1) - pi_p(t)`
    /// if `t < n`.
    pub fn c_p(&self, p: u64, n: u32, t: u32) -> BigInt {
        if t > n {
            BigInt::zero()
        } else if t == n {
            -self.pi_p(p, t)
        } else {
            self.pi_p(p, t + 1) - self.pi_p(p, t)
        }
    }

    /// Exact element-order statistics `v -> #{g : ord(g) = v}`.
    pub fn element_order_counts(&self) -> BTreeMap<u64, BigInt> {
        let primes: Vec<u64> = self.primes().collect();
        let mut out = BTreeMap::new();
        let mut stack: Vec<(usize, u64, BigInt)> = vec![(0, 1, BigInt::one())];
        while let Some((i, v, count)) = stack.pop() {
            if i == primes.len() {
                *out.entry(v).or_insert_with(BigInt::zero) += count;
                continue;
            }
            let p = primes[i];
            for t in 0..=self.height(p) {
                let exact = self.pi_p(p, t + 1) - self.pi_p(p, t);
                if exact.is_zero() {
                    continue;
                }
                stack.push((i + 1, v * p.pow(t), &count * exact));
            }
        }
        out
    }

    /// All character profiles with their multiplicities; the counts sum to
    /// the group order.
    pub fn profiles(&self) -> Vec<(Profile, BigInt)> {
        let primes: Vec<u64> = self.primes().collect();
        let mut out: Vec<(Profile, BigInt)> = vec![(Profile::new(), BigInt::one())];
        for &p in &primes {
            let h = self.height(p);
            let gp = self.p_part_order(p);
            let mut next = Vec::new();
            for (profile, count) in &out {
                for n in 1..=h + 1 {
                    let c = if n <= h {
                        &gp / self.pi_p(p, n) - &gp / self.pi_p(p, n + 1)
                    } else {
                        BigInt::one()
                    };
                    if c.is_zero() {
                        continue;
                    }
                    let mut profile = profile.clone();
                    profile.insert(p, n);
                    next.push((profile, count * c));
                }
            }
            out = next;
        }
        out
    }

    /// The closed-form order-restricted character sums for a profile:
    /// `a_v = prod_p c_p(n_p, t_p)` for `v = prod_p p^{t_p}`. Orders with a
    /// zero sum are omitted, except `v = 1`.
    pub fn order_sums_for_profile(&self, profile: &Profile) -> BTreeMap<u64, BigInt> {
        let primes: Vec<u64> = self.primes().collect();
        let mut out = BTreeMap::new();
        let mut stack: Vec<(usize, u64, BigInt)> = vec![(0, 1, BigInt::one())];
        while let Some((i, v, value)) = stack.pop() {
            if i == primes.len() {
                if !value.is_zero() || v == 1 {
                    out.insert(v, value);
                }
                continue;
            }
            let p = primes[i];
            let n = profile[&p];
            for t in 0..=self.height(p) {
                let c = self.c_p(p, n, t);
                if c.is_zero() {
                    continue;
                }
                stack.push((i + 1, v * p.pow(t), &value * c));
            }
        }
        out
    }

    pub fn summary_for_profile(&self, profile: &Profile) -> CharacterSummary {
        CharacterSummary {
            dim: 1,
            a: self.order_sums_for_profile(profile),
        }
    }

    /// A concrete character with the given profile, as a dual element: one
    /// coordinate per cyclic factor, factors listed layer by layer.
    pub fn representative_dual(&self, profile: &Profile) -> DualElement {
        let mut coords = BTreeMap::new();
        for (&p, rs) in &self.layers {
            let h = rs.len() as u32;
            let n = profile[&p];
            let mut c: Vec<u64> = Vec::new();
            let mut placed = n > h; // sentinel: all-zero coordinates
            for (j, &r) in rs.iter().enumerate() {
                let j1 = j as u32 + 1;
                for _ in 0..r {
                    if !placed && j1 >= n {
                        // coordinate of p-adic valuation n-1 in Z/p^{j1}
                        c.push(p.pow(n - 1));
                        placed = true;
                    } else {
                        c.push(0);
                    }
                }
            }
            assert!(placed, "profile {n} exceeds height {h} + 1 for p={p}");
            coords.insert(p, c);
        }
        DualElement { coords }
    }

    /// Torsion-depth profile of a dual element: `n_p` is the least `t >= 1`
    /// with the character nontrivial on the `p^t`-torsion subgroup.
    pub fn profile_of_dual(&self, chi: &DualElement) -> Profile {
        let mut profile = Profile::new();
        for (&p, rs) in &self.layers {
            let coords = &chi.coords[&p];
            let mut best: Option<u32> = None;
            let mut idx = 0;
            for (j, &r) in rs.iter().enumerate() {
                let modulus = p.pow(j as u32 + 1);
                for _ in 0..r {
                    let a = coords[idx] % modulus;
                    idx += 1;
                    if a != 0 {
                        let mut v = 0u32;
                        let mut x = a;
                        while x % p == 0 {
                            v += 1;
                            x /= p;
                        }
                        best = Some(best.map_or(v + 1, |b| b.min(v + 1)));
                    }
                }
            }
            profile.insert(p, best.unwrap_or(rs.len() as u32 + 1));
        }
        profile
    }

    /// Enumerate every abelian shape of order at most `max_order`.
    pub fn enumerate_up_to(max_order: u64) -> Vec<AbelianShape> {
        fn rec(
            max_order: u64,
            min_prime: u64,
            budget: u64,
            acc: &mut Vec<(u64, Vec<u32>)>,
            out: &mut Vec<AbelianShape>,
        ) {
            out.push(AbelianShape::new(acc).expect("valid layers"));
            let mut p = min_prime;
            while p <= budget {
                if is_prime(p) {
                    // all layer vectors for p with p^{sum j r_j} <= budget
                    let mut layer_sets: Vec<(Vec<u32>, u64)> = Vec::new();
                    fn layers_rec(
                        p: u64,
                        budget: u64,
                        j: u32,
                        cur: &mut Vec<u32>,
                        size: u64,
                        out: &mut Vec<(Vec<u32>, u64)>,
                    ) {
                        if cur.iter().any(|&r| r > 0) && cur.last() != Some(&0) {
                            out.push((cur.clone(), size));
                        }
                        let step = p.checked_pow(j).unwrap_or(u64::MAX);
                        if step == u64::MAX || size.checked_mul(step).map_or(true, |s| s > budget)
                        {
                            return;
                        }
                        // extend with a new layer of multiplicity >= 0
                        let mut r = 0u32;
                        let mut sz = size;
                        loop {
                            cur.push(r);
                            layers_rec(p, budget, j + 1, cur, sz, out);
                            cur.pop();
                            r += 1;
                            match sz.checked_mul(step) {
                                Some(next) if next <= budget => sz = next,
                                _ => break,
                            }
                            if r > 40 {
                                break;
                            }
                        }
                    }
                    let mut cur = Vec::new();
                    layers_rec(p, budget, 1, &mut cur, 1, &mut layer_sets);
                    for (rs, size) in layer_sets {
                        acc.push((p, rs));
                        rec(max_order, p + 1, budget / size, acc, out);
                        acc.pop();
                    }
                }
                p += 1;
            }
        }
        let mut out = Vec::new();
        let mut acc = Vec::new();
        rec(max_order, 2, max_order, &mut acc, &mut out);
        out.sort();
        out.dedup();
        out
    }
}

impl std::fmt::Display for AbelianShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.layers.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (&p, rs) in &self.layers {
            for (j, &r) in rs.iter().enumerate() {
                if r == 0 {
                    continue;
                }
                if !first {
                    write!(f, " x ")?;
                }
                first = false;
                let q = p.pow(j as u32 + 1);
                if r == 1 {
                    write!(f, "Z/{q}")?;
                } else {
                    write!(f, "(Z/{q})^{r}")?;
                }
            }
        }
        Ok(())
    }
}

/// A character of an abelian shape, written as an element of the dual group
/// in the same coordinates.
#[derive(Clone, Debug)]
pub struct DualElement {
    pub coords: BTreeMap<u64, Vec<u64>>,
}

// ---------------------------------------------------------------------------
// Brute-force cyclotomic oracle
// ---------------------------------------------------------------------------

const BRUTE_FORCE_CAP: u64 = 100_000;

/// Order-restricted character sums `a_r = sum_{ord(g)=r} conj(chi(g))` by
/// explicit enumeration of the group, with character values accumulated as
/// exact cyclotomic integers (exponent vectors of r-th roots of unity per
/// order r) and projected to rational integers at the end.
pub fn brute_force_order_sums(
    shape: &AbelianShape,
    chi: &DualElement,
) -> Result<BTreeMap<u64, BigInt>, GroupError> {
    let order = shape.order();
    if order > BigInt::from(BRUTE_FORCE_CAP) {
        return Err(GroupError::TooLarge(order, BRUTE_FORCE_CAP));
    }
    let exponent = shape.exponent();
    // flatten the factors: (prime, modulus, dual coordinate)
    let mut factors: Vec<(u64, u64, u64)> = Vec::new();
    for (&p, rs) in shape.layers() {
        let duals = &chi.coords[&p];
        let mut idx = 0;
        for (j, &r) in rs.iter().enumerate() {
            let modulus = p.pow(j as u32 + 1);
            for _ in 0..r {
                factors.push((p, modulus, duals[idx] % modulus));
                idx += 1;
            }
        }
    }
    // per element order r, counts of conj(chi(g)) as powers of zeta_r
    let mut counts: BTreeMap<u64, Vec<i64>> = BTreeMap::new();
    let mut coords = vec![0u64; factors.len()];
    loop {
        // order and character exponent of the current element
        let mut ord: u64 = 1;
        let mut chi_exp: u64 = 0; // as power of zeta_exponent
        for (i, &(p, modulus, a)) in factors.iter().enumerate() {
            let x = coords[i];
            if x != 0 {
                let mut v = 0u32;
                let mut y = x;
                while y % p == 0 {
                    v += 1;
                    y /= p;
                }
                let factor_ord = modulus / p.pow(v);
                ord = ord.lcm(&factor_ord);
            }
            chi_exp = (chi_exp + (a as u128 * x as u128 % modulus as u128) as u64
                * (exponent / modulus))
                % exponent;
        }
        // conj(chi(g)) is a power of zeta_ord: exponent -chi_exp * ord / E
        debug_assert_eq!((chi_exp as u128 * ord as u128) % exponent as u128, 0);
        let k = ((chi_exp as u128 * ord as u128 / exponent as u128) % ord as u128) as u64;
        let conj = (ord - k) % ord;
        counts.entry(ord).or_insert_with(|| vec![0; ord as usize])[conj as usize] += 1;
        // odometer
        let mut i = 0;
        loop {
            if i == factors.len() {
                let mut out = BTreeMap::new();
                for (r, v) in counts {
                    out.insert(r, project_to_integer(&v, r)?);
                }
                return Ok(out);
            }
            coords[i] += 1;
            if coords[i] < factors[i].1 {
                break;
            }
            coords[i] = 0;
            i += 1;
        }
    }
}

/// Project `sum_k v[k] zeta_r^k` to a rational integer by reducing each
/// prime-power coordinate with the sparse cyclotomic relation
/// `zeta^{p^{e-1}(p-1)+s} = -sum_l zeta^{l p^{e-1} + s}`; the reduced tensor
/// basis is a Z-basis, so the value is integral iff only the constant
/// coordinate survives.
fn project_to_integer(v: &[i64], r: u64) -> Result<BigInt, GroupError> {
    let mut v: Vec<i64> = v.to_vec();
    if r == 1 {
        return Ok(BigInt::from(v[0]));
    }
    // prime-power factorization of r with CRT idempotent multipliers
    let mut rem = r;
    let mut parts: Vec<(u64, u64, u64)> = Vec::new(); // (p, p^e, alpha)
    let mut p = 2;
    while rem > 1 {
        if p * p > rem {
            p = rem;
        }
        if rem % p == 0 {
            let mut pe = 1;
            while rem % p == 0 {
                rem /= p;
                pe *= p;
            }
            parts.push((p, pe, 0));
        }
        p += 1;
    }
    for part in parts.iter_mut() {
        let m = part.1;
        let cof = r / m;
        // alpha = cof * (cof^{-1} mod m): 1 mod m, 0 mod r/m
        let inv = (1..m).find(|&x| (cof % m) * x % m == 1).expect("coprime");
        part.2 = cof * inv;
    }
    for &(p, pe, alpha) in &parts {
        let slab = pe / p * (p - 1);
        for k in 0..r {
            if v[k as usize] == 0 {
                continue;
            }
            let kp = k % pe;
            if kp < slab {
                continue;
            }
            let s = kp - pe / p * (p - 1);
            let val = v[k as usize];
            v[k as usize] = 0;
            for l in 0..p - 1 {
                let tp = l * (pe / p) + s;
                let target = ((k as u128 + (tp + pe - kp) as u128 * alpha as u128)
                    % r as u128) as u64;
                v[target as usize] -= val;
            }
        }
    }
    let residual = v
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &x)| x != 0)
        .count();
    if residual > 0 {
        return Err(GroupError::NonIntegralProjection(residual));
    }
    Ok(BigInt::from(v[0]))
}

// ---------------------------------------------------------------------------
// Class data
// ---------------------------------------------------------------------------

/// Conjugacy-class data with an integer character table. Row i of `table`
/// lists the values of the i-th irreducible character on the classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassData {
    pub sizes: Vec<u64>,
    pub orders: Vec<u64>,
    pub table: Vec<Vec<BigInt>>,
}

/// Per-character summary: the dimension and the order-restricted sums
/// `a_r = sum_{ord(g)=r} conj(chi(g))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterSummary {
    pub dim: i64,
    pub a: BTreeMap<u64, BigInt>,
}

impl ClassData {
    pub fn order(&self) -> u64 {
        self.sizes.iter().sum()
    }

    pub fn num_classes(&self) -> usize {
        self.sizes.len()
    }

    pub fn dims(&self) -> Vec<i64> {
        self.table
            .iter()
            .map(|row| {
                use num_traits::ToPrimitive;
                row[0].to_i64().expect("dimension fits i64")
            })
            .collect()
    }

    pub fn element_order_counts(&self) -> BTreeMap<u64, BigInt> {
        let mut out = BTreeMap::new();
        for (i, &size) in self.sizes.iter().enumerate() {
            *out.entry(self.orders[i]).or_insert_with(BigInt::zero) += BigInt::from(size);
        }
        out
    }

    /// First and second Schur orthogonality for integer tables, plus basic
    /// shape checks (identity class first, sizes summing to the order).
    pub fn validate(&self) -> Result<(), GroupError> {
        let k = self.num_classes();
        if self.orders.len() != k || self.table.len() != k {
            return Err(GroupError::InconsistentTable(
                "character count must equal class count".into(),
            ));
        }
        if self.sizes[0] != 1 || self.orders[0] != 1 {
            return Err(GroupError::InconsistentTable(
                "first class must be the identity".into(),
            ));
        }
        let g = BigInt::from(self.order());
        for i in 0..k {
            for i2 in i..k {
                let mut acc = BigInt::zero();
                for j in 0..k {
                    acc += BigInt::from(self.sizes[j]) * &self.table[i][j] * &self.table[i2][j];
                }
                let expect = if i == i2 { g.clone() } else { BigInt::zero() };
                if acc != expect {
                    return Err(GroupError::InconsistentTable(format!(
                        "row orthogonality fails for characters {i}, {i2}"
                    )));
                }
            }
        }
        for j in 0..k {
            for j2 in j..k {
                let mut acc = BigInt::zero();
                for i in 0..k {
                    acc += &self.table[i][j] * &self.table[i][j2];
                }
                let expect = if j == j2 {
                    &g / BigInt::from(self.sizes[j])
                } else {
                    BigInt::zero()
                };
                if acc != expect {
                    return Err(GroupError::InconsistentTable(format!(
                        "column orthogonality fails for classes {j}, {j2}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `a_r` sums for the i-th character (values are integers, so conjugation
    /// is the identity).
    pub fn character_summary(&self, i: usize) -> CharacterSummary {
        use num_traits::ToPrimitive;
        let mut a = BTreeMap::new();
        for (j, &size) in self.sizes.iter().enumerate() {
            *a.entry(self.orders[j]).or_insert_with(BigInt::zero) +=
                BigInt::from(size) * &self.table[i][j];
        }
        CharacterSummary {
            dim: self.table[i][0].to_i64().expect("dimension fits"),
            a,
        }
    }

    /// The symmetric group S4: classes e, (12), (12)(34), (123), (1234).
    pub fn s4() -> ClassData {
        let row = |v: [i64; 5]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        ClassData {
            sizes: vec![1, 6, 3, 8, 6],
            orders: vec![1, 2, 2, 3, 4],
            table: vec![
                row([1, 1, 1, 1, 1]),
                row([1, -1, 1, 1, -1]),
                row([2, 0, 2, -1, 0]),
                row([3, 1, -1, 0, -1]),
                row([3, -1, -1, 0, 1]),
            ],
        }
    }
}

// ---------------------------------------------------------------------------
// Descriptor JSON
// ---------------------------------------------------------------------------

/// A group given either as an abelian shape or as explicit class data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupDescriptor {
    Abelian(AbelianShape),
    Classes(ClassData),
}

impl GroupDescriptor {
    pub fn order(&self) -> BigInt {
        match self {
            GroupDescriptor::Abelian(s) => s.order(),
            GroupDescriptor::Classes(c) => BigInt::from(c.order()),
        }
    }

    pub fn element_order_counts(&self) -> BTreeMap<u64, BigInt> {
        match self {
            GroupDescriptor::Abelian(s) => s.element_order_counts(),
            GroupDescriptor::Classes(c) => c.element_order_counts(),
        }
    }

    /// Summaries for all characters (grouped with multiplicity for abelian
    /// shapes, one per row for class data).
    pub fn summaries(&self) -> Vec<(CharacterSummary, BigInt, String)> {
        match self {
            GroupDescriptor::Abelian(s) => {
                let mut out = Vec::new();
                for (profile, count) in s.profiles() {
                    let label = profile_label(&profile);
                    out.push((s.summary_for_profile(&profile), count, label));
                }
                out
            }
            GroupDescriptor::Classes(c) => (0..c.num_classes())
                .map(|i| (c.character_summary(i), BigInt::one(), format!("chi{}", i + 1)))
                .collect(),
        }
    }
}

pub fn profile_label(profile: &Profile) -> String {
    if profile.is_empty() {
        return "trivial".into();
    }
    let parts: Vec<String> = profile.iter().map(|(p, n)| format!("{p}:{n}")).collect();
    format!("n[{}]", parts.join(","))
}

#[derive(Serialize, Deserialize)]
struct ClassJson {
    size: u64,
    order: u64,
    chi: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct DescriptorJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    abelian: Option<BTreeMap<String, Vec<u32>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    classes: Option<Vec<ClassJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dims: Option<Vec<u64>>,
    /// optional cycle types per class, for tensor-product trace assignments
    #[serde(skip_serializing_if = "Option::is_none")]
    cycle_types: Option<Vec<Vec<u32>>>,
}

/// Parse a descriptor JSON document. Returns the descriptor and, when given,
/// the per-class cycle types.
pub fn parse_descriptor(text: &str) -> Result<(GroupDescriptor, Option<Vec<Vec<u32>>>), GroupError>
{
    let raw: DescriptorJson =
        serde_json::from_str(text).map_err(|e| GroupError::Malformed(e.to_string()))?;
    if let Some(layers) = raw.abelian {
        let mut pairs = Vec::new();
        for (p, rs) in layers {
            let p: u64 = p
                .parse()
                .map_err(|_| GroupError::Malformed(format!("bad prime key {p}")))?;
            pairs.push((p, rs));
        }
        return Ok((
            GroupDescriptor::Abelian(AbelianShape::new(&pairs)?),
            raw.cycle_types,
        ));
    }
    let classes = raw
        .classes
        .ok_or_else(|| GroupError::Malformed("need \"abelian\" or \"classes\"".into()))?;
    let k = classes.len();
    let mut sizes = Vec::with_capacity(k);
    let mut orders = Vec::with_capacity(k);
    let mut table = vec![Vec::with_capacity(k); k];
    for c in &classes {
        if c.chi.len() != k {
            return Err(GroupError::Malformed(format!(
                "class has {} character values, expected {k}",
                c.chi.len()
            )));
        }
        sizes.push(c.size);
        orders.push(c.order);
        for (i, &v) in c.chi.iter().enumerate() {
            table[i].push(BigInt::from(v));
        }
    }
    let data = ClassData {
        sizes,
        orders,
        table,
    };
    data.validate()?;
    Ok((GroupDescriptor::Classes(data), raw.cycle_types))
}

pub fn descriptor_to_json(g: &GroupDescriptor, cycle_types: Option<&[Vec<u32>]>) -> String {
    use num_traits::ToPrimitive;
    let raw = match g {
        GroupDescriptor::Abelian(s) => DescriptorJson {
            abelian: Some(
                s.layers()
                    .iter()
                    .map(|(p, rs)| (p.to_string(), rs.clone()))
                    .collect(),
            ),
            classes: None,
            dims: None,
            cycle_types: cycle_types.map(|c| c.to_vec()),
        },
        GroupDescriptor::Classes(c) => DescriptorJson {
            abelian: None,
            classes: Some(
                (0..c.num_classes())
                    .map(|j| ClassJson {
                        size: c.sizes[j],
                        order: c.orders[j],
                        chi: c.table.iter().map(|row| row[j].to_i64().unwrap()).collect(),
                    })
                    .collect(),
            ),
            dims: Some(c.dims().iter().map(|&d| d as u64).collect()),
            cycle_types: cycle_types.map(|c| c.to_vec()),
        },
    };
    serde_json::to_string_pretty(&raw).expect("serializable")
}
