//! Exhaustive permutation enumeration with descent-type statistics, plus the
//! classical number triangles. Everything here is brute force on purpose: it
//! is the ground truth the grammar and series routes are compared against.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::size_limit;
use crate::exactalg::{Monomial, Poly, Rational, Var};
use crate::{Error, Result};

/// Largest `n` for which all of `S_n` is enumerated.
pub const MAX_PERM_N: usize = 10;
/// Largest row index served by [`Triangle`].
pub const MAX_TRIANGLE_N: usize = 60;

/// A permutation `π(1)…π(n)` of `[n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn new(values: Vec<u8>) -> Result<Perm> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidParam(format!(
                    "{values:?} is not a permutation"
                )));
            }
            seen[v] = true;
        }
        Ok(Perm(values))
    }

    pub fn identity(n: usize) -> Perm {
        Perm((1..=n as u8).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[u8] {
        &self.0
    }

    pub fn stats(&self) -> StatRecord {
        perm_stats(&self.0)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.0 {
            write!(f, "{v}")?;
            if self.0.len() > 9 {
                f.write_str(" ")?;
            }
        }
        Ok(())
    }
}

/// All statistics of one permutation.
///
/// Descents, ascents, successions and big ascents live on `[n-1]` with no
/// boundary letters. Double descents use `π(0)=π(n+1)=0`; interior peaks
/// use positions `2..=n-1` only.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StatRecord {
    pub des: usize,
    pub asc: usize,
    pub exc: usize,
    pub aexc: usize,
    pub fix: usize,
    pub suc: usize,
    pub basc: usize,
    pub ddes: usize,
    pub ipk: usize,
    /// Positions `k` in `[n-1]` with `π(k+1) = π(k)+1`.
    pub suc_set: BTreeSet<usize>,
    /// Fixed points among positions `1..=n-1`.
    pub fix_set_restricted: BTreeSet<usize>,
}

pub fn perm_stats(p: &[u8]) -> StatRecord {
    let n = p.len();
    let at = |i: usize| -> u8 {
        // 1-based with zero padding on both ends
        if i == 0 || i > n {
            0
        } else {
            p[i - 1]
        }
    };
    let mut r = StatRecord::default();
    for i in 1..n {
        let (a, b) = (p[i - 1], p[i]);
        if a > b {
            r.des += 1;
        } else {
            r.asc += 1;
            if b == a + 1 {
                r.suc += 1;
                r.suc_set.insert(i);
            } else {
                r.basc += 1;
            }
        }
    }
    for i in 1..=n {
        let v = p[i - 1] as usize;
        match v.cmp(&i) {
            std::cmp::Ordering::Greater => r.exc += 1,
            std::cmp::Ordering::Less => r.aexc += 1,
            std::cmp::Ordering::Equal => {
                r.fix += 1;
                if i < n {
                    r.fix_set_restricted.insert(i);
                }
            }
        }
        if at(i - 1) > at(i) && at(i) > at(i + 1) {
            r.ddes += 1;
        }
        if i >= 2 && i < n && at(i - 1) < at(i) && at(i) > at(i + 1) {
            r.ipk += 1;
        }
    }
    r
}

/// Advances to the next permutation in lexicographic order.
pub fn next_permutation(p: &mut [u8]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn check_guard(n: usize, max: usize) -> Result<()> {
    if n > max {
        return Err(size_limit(
            format!("enumeration of S_{n}"),
            format!("n <= {max}"),
        ));
    }
    Ok(())
}

/// Visits every permutation of `[n]` in lexicographic order.
pub fn for_each_perm(n: usize, mut f: impl FnMut(&[u8])) -> Result<()> {
    check_guard(n, MAX_PERM_N)?;
    let mut p: Vec<u8> = (1..=n as u8).collect();
    loop {
        f(&p);
        if !next_permutation(&mut p) {
            return Ok(());
        }
    }
}

/// Folds over `S_n` in parallel, one task per value of `π(1)`.
/// `fold` must be commutative in the sense that the combined result does not
/// depend on how the permutations are split.
fn par_fold_perms<A, F, M>(n: usize, init: impl Fn() -> A + Sync, fold: F, merge: M) -> Result<A>
where
    A: Send,
    F: Fn(&mut A, &[u8]) + Sync,
    M: Fn(A, A) -> A + Sync + Send,
{
    check_guard(n, MAX_PERM_N)?;
    if n <= 1 {
        let mut acc = init();
        fold(&mut acc, &(1..=n as u8).collect::<Vec<_>>());
        return Ok(acc);
    }
    let merged = (1..=n as u8)
        .into_par_iter()
        .map(|first| {
            let mut acc = init();
            let mut rest: Vec<u8> = (1..=n as u8).filter(|&v| v != first).collect();
            let mut p = Vec::with_capacity(n);
            loop {
                p.clear();
                p.push(first);
                p.extend_from_slice(&rest);
                fold(&mut acc, &p);
                if !next_permutation(&mut rest) {
                    break;
                }
            }
            acc
        })
        .reduce(&init, &merge);
    Ok(merged)
}

/// Generating-polynomial families over `S_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PermFamily {
    /// `A_n(x) = Σ x^des`.
    Eulerian,
    /// `A_n(x,y,s) = Σ x^basc y^des s^suc`.
    Trivariate,
    /// `C_n(x,y,s) = Σ x^exc y^aexc s^fix`.
    Fixpoint,
    /// `A_n(x,y) = Σ x^asc y^(des+1)`, with `A_0 = 1`.
    Bivariate,
    /// `d_n(x) = Σ x^exc` over derangements.
    Derangement,
    /// `Σ x^des` over permutations with no successions and `π(1) > 1`.
    NoSuccessionFirstNot1,
    /// `Σ x^des` over permutations with no double descents.
    GammaEulerianNoDdes,
    /// `Σ x^ipk` over all permutations.
    Peak,
}

impl PermFamily {
    pub const ALL: [PermFamily; 8] = [
        PermFamily::Eulerian,
        PermFamily::Trivariate,
        PermFamily::Fixpoint,
        PermFamily::Bivariate,
        PermFamily::Derangement,
        PermFamily::NoSuccessionFirstNot1,
        PermFamily::GammaEulerianNoDdes,
        PermFamily::Peak,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PermFamily::Eulerian => "eulerian",
            PermFamily::Trivariate => "trivariate",
            PermFamily::Fixpoint => "fixpoint",
            PermFamily::Bivariate => "bivariate",
            PermFamily::Derangement => "derangement",
            PermFamily::NoSuccessionFirstNot1 => "no-succession-first-not-1",
            PermFamily::GammaEulerianNoDdes => "gamma-eulerian-no-ddes",
            PermFamily::Peak => "peak",
        }
    }

    fn vars(self) -> Vec<Var> {
        let names: &[&str] = match self {
            PermFamily::Trivariate | PermFamily::Fixpoint => &["x", "y", "s"],
            PermFamily::Bivariate => &["x", "y"],
            _ => &["x"],
        };
        names.iter().map(|n| Var::new(n)).collect()
    }

    /// Exponent vector of `p`'s weight, or `None` if `p` is filtered out.
    fn weight(self, p: &[u8]) -> Option<[u8; 3]> {
        let r = perm_stats(p);
        let e = |v: usize| v as u8;
        match self {
            PermFamily::Eulerian => Some([e(r.des), 0, 0]),
            PermFamily::Trivariate => Some([e(r.basc), e(r.des), e(r.suc)]),
            PermFamily::Fixpoint => Some([e(r.exc), e(r.aexc), e(r.fix)]),
            PermFamily::Bivariate => Some([e(r.asc), e(r.des + 1), 0]),
            PermFamily::Derangement => (r.fix == 0).then(|| [e(r.exc), 0, 0]),
            PermFamily::NoSuccessionFirstNot1 => (r.suc == 0 && p[0] > 1).then(|| [e(r.des), 0, 0]),
            PermFamily::GammaEulerianNoDdes => (r.ddes == 0).then(|| [e(r.des), 0, 0]),
            PermFamily::Peak => Some([e(r.ipk), 0, 0]),
        }
    }
}

impl FromStr for PermFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<PermFamily> {
        PermFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidParam(format!("unknown permutation family {s:?}")))
    }
}

/// Sum of the family weight over `S_n`.
pub fn perm_poly(n: usize, family: PermFamily) -> Result<Poly> {
    check_guard(n, MAX_PERM_N)?;
    if n == 0 {
        // S_0 holds the empty word; every family starts from 1.
        return Ok(Poly::one());
    }
    let counts = par_fold_perms(
        n,
        HashMap::<[u8; 3], u64>::new,
        |acc, p| {
            if let Some(w) = family.weight(p) {
                *acc.entry(w).or_insert(0) += 1;
            }
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        },
    )?;
    let vars = family.vars();
    Ok(Poly::from_terms(counts.into_iter().map(|(w, c)| {
        let m = Monomial::from_pairs(vars.iter().cloned().zip(w.iter().map(|&e| e as u32)));
        (m, Rational::from_integer(BigInt::from(c)))
    })))
}

/// Counts of `π ∈ S_n` by succession set and by fixed-point set in `[n-1]`.
pub type SetProfile = BTreeMap<BTreeSet<usize>, u64>;

pub fn diaconis_profile(n: usize) -> Result<(SetProfile, SetProfile)> {
    if n == 0 {
        return Err(Error::OutOfRange("diaconis profile needs n >= 1".into()));
    }
    check_guard(n, 9)?;
    let (suc, fix) = par_fold_perms(
        n,
        || (HashMap::<u32, u64>::new(), HashMap::<u32, u64>::new()),
        |acc, p| {
            let mut suc_mask = 0u32;
            let mut fix_mask = 0u32;
            for k in 1..p.len() {
                if p[k] == p[k - 1] + 1 {
                    suc_mask |= 1 << k;
                }
                if p[k - 1] as usize == k {
                    fix_mask |= 1 << k;
                }
            }
            *acc.0.entry(suc_mask).or_insert(0) += 1;
            *acc.1.entry(fix_mask).or_insert(0) += 1;
        },
        |mut a, b| {
            for (k, v) in b.0 {
                *a.0.entry(k).or_insert(0) += v;
            }
            for (k, v) in b.1 {
                *a.1.entry(k).or_insert(0) += v;
            }
            a
        },
    )?;
    let to_profile = |m: HashMap<u32, u64>| -> SetProfile {
        m.into_iter()
            .map(|(mask, c)| ((1..n).filter(|k| mask & (1 << k) != 0).collect(), c))
            .collect()
    };
    Ok((to_profile(suc), to_profile(fix)))
}

/// `P(n, r, s)`: permutations of `[n]` with `r` ascents and `s` successions,
/// counted by brute force. Indexed `[r][s]`.
pub fn ascent_succession_counts(n: usize) -> Result<Vec<Vec<u64>>> {
    let width = n.max(1);
    par_fold_perms(
        n,
        || vec![vec![0u64; width]; width],
        |acc, p| {
            let r = perm_stats(p);
            acc[r.asc][r.suc] += 1;
        },
        |mut a, b| {
            for (ra, rb) in a.iter_mut().zip(b) {
                for (x, y) in ra.iter_mut().zip(rb) {
                    *x += y;
                }
            }
            a
        },
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TriangleName {
    /// Stirling numbers of the second kind `S(n,k)`.
    Stirling2,
    /// Eulerian numbers: permutations of `[n]` with `k` descents.
    Eulerian,
    /// Second-order Eulerian numbers `C_{n,k}`.
    SecondOrderEulerian,
    /// Surjection numbers `k! S(n,k)`.
    Surjection,
}

impl TriangleName {
    pub fn name(self) -> &'static str {
        match self {
            TriangleName::Stirling2 => "stirling2",
            TriangleName::Eulerian => "eulerian",
            TriangleName::SecondOrderEulerian => "second-order-eulerian",
            TriangleName::Surjection => "surjection",
        }
    }
}

impl FromStr for TriangleName {
    type Err = Error;
    fn from_str(s: &str) -> Result<TriangleName> {
        [
            TriangleName::Stirling2,
            TriangleName::Eulerian,
            TriangleName::SecondOrderEulerian,
            TriangleName::Surjection,
        ]
        .into_iter()
        .find(|t| t.name() == s)
        .ok_or_else(|| Error::InvalidParam(format!("unknown triangle {s:?}")))
    }
}

/// A number triangle filled row by row from its defining recurrence.
#[derive(Clone, Debug)]
pub struct Triangle {
    name: TriangleName,
    rows: Vec<Vec<BigInt>>,
}

impl Triangle {
    pub fn build(name: TriangleName, n_max: usize) -> Result<Triangle> {
        if n_max > MAX_TRIANGLE_N {
            return Err(size_limit(
                format!("{} triangle to row {n_max}", name.name()),
                format!("n <= {MAX_TRIANGLE_N}"),
            ));
        }
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n_max + 1);
        rows.push(vec![BigInt::one()]);
        for n in 1..=n_max {
            let prev = &rows[n - 1];
            let get = |k: usize| prev.get(k).cloned().unwrap_or_else(BigInt::zero);
            let mut row = vec![BigInt::zero(); n + 1];
            for (k, slot) in row.iter_mut().enumerate() {
                let below = if k == 0 { BigInt::zero() } else { get(k - 1) };
                let (kk, m) = (BigInt::from(k), n - 1);
                *slot = match name {
                    TriangleName::Stirling2 => &kk * get(k) + below,
                    // A(n,k) = (k+1) A(n-1,k) + (n-k) A(n-1,k-1)
                    TriangleName::Eulerian => (&kk + 1) * get(k) + BigInt::from(n - k) * below,
                    // C_{m+1,k} = k C_{m,k} + (2m+2-k) C_{m,k-1}
                    TriangleName::SecondOrderEulerian => {
                        let coef = BigInt::from(2 * m + 2) - &kk;
                        &kk * get(k) + coef * below
                    }
                    // E_{m+1,k} = k (E_{m,k} + E_{m,k-1})
                    TriangleName::Surjection => &kk * (get(k) + below),
                };
            }
            rows.push(row);
        }
        Ok(Triangle { name, rows })
    }

    pub fn name(&self) -> TriangleName {
        self.name
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, n: usize, k: usize) -> Result<&BigInt> {
        if k > n || n > self.n_max() {
            return Err(Error::OutOfRange(format!(
                "{}({n},{k}) outside 0 <= k <= n <= {}",
                self.name.name(),
                self.n_max()
            )));
        }
        Ok(&self.rows[n][k])
    }

    pub fn row(&self, n: usize) -> Result<&[BigInt]> {
        self.rows
            .get(n)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::OutOfRange(format!("row {n} beyond {}", self.n_max())))
    }
}

pub fn triangle_get(name: TriangleName, n: usize, k: usize) -> Result<BigInt> {
    if k > n || n > MAX_TRIANGLE_N {
        return Err(Error::OutOfRange(format!(
            "{}({n},{k}) outside 0 <= k <= n <= {MAX_TRIANGLE_N}",
            name.name()
        )));
    }
    Ok(Triangle::build(name, n)?.get(n, k)?.clone())
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}
