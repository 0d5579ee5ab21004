//! k-Stirling permutations: words on `{1^k, …, n^k}` in which every letter
//! between two copies of `i` is at least `i`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;

use crate::error::size_limit;
use crate::exactalg::{Monomial, Poly, Rational, Var};
use crate::grammar::stirling_vars;
use crate::{Error, Result};

/// Upper bound on `|Q_n(k)| = Π_{i<n} (ki+1)` for exhaustive generation.
pub const MAX_STIRLING_WORDS: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StirlingWord {
    k: usize,
    n: usize,
    word: Vec<u8>,
}

impl StirlingWord {
    /// Validates multiplicities and the nesting condition.
    pub fn new(k: usize, word: Vec<u8>) -> Result<StirlingWord> {
        if k == 0 || !word.len().is_multiple_of(k) {
            return Err(Error::InvalidParam(format!(
                "word of length {} is not a {k}-Stirling word",
                word.len()
            )));
        }
        let n = word.len() / k;
        let mut count = vec![0usize; n + 1];
        for &c in &word {
            let c = c as usize;
            if c == 0 || c > n {
                return Err(Error::InvalidParam(format!("letter {c} outside [{n}]")));
            }
            count[c] += 1;
        }
        if count[1..].iter().any(|&c| c != k) {
            return Err(Error::InvalidParam(
                "every letter must appear exactly k times".into(),
            ));
        }
        // between two copies of i everything is >= i
        let mut first = vec![usize::MAX; n + 1];
        let mut last = vec![0usize; n + 1];
        for (pos, &c) in word.iter().enumerate() {
            let c = c as usize;
            first[c] = first[c].min(pos);
            last[c] = pos;
        }
        for i in 1..=n {
            if word[first[i]..=last[i]].iter().any(|&c| (c as usize) < i) {
                return Err(Error::InvalidParam(format!(
                    "letter smaller than {i} between two copies of {i}"
                )));
            }
        }
        Ok(StirlingWord { k, n, word })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[u8] {
        &self.word
    }

    pub fn stats(&self) -> StirlingStats {
        stirling_stats(self.k, &self.word)
    }
}

impl fmt::Display for StirlingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n > 9 { " " } else { "" };
        for (i, c) in self.word.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Ascents, descents and plateaux over indices `0..=kn` with
/// `σ_0 = σ_{kn+1} = 0`, plus the split of plateaux by occurrence number.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct StirlingStats {
    pub asc: usize,
    pub des: usize,
    pub plat: usize,
    /// `plat_j[j-1]` counts `j`-plateaux, `1 <= j <= k-1`.
    pub plat_j: Vec<usize>,
}

pub fn stirling_stats(k: usize, word: &[u8]) -> StirlingStats {
    let len = word.len();
    let n = len / k.max(1);
    let mut seen = vec![0usize; n + 1];
    let mut s = StirlingStats {
        plat_j: vec![0; k.saturating_sub(1)],
        ..Default::default()
    };
    let at = |i: usize| if i == 0 || i > len { 0 } else { word[i - 1] };
    for i in 0..=len {
        let (a, b) = (at(i), at(i + 1));
        if i > 0 {
            seen[a as usize] += 1;
        }
        match a.cmp(&b) {
            std::cmp::Ordering::Less => s.asc += 1,
            std::cmp::Ordering::Greater => s.des += 1,
            std::cmp::Ordering::Equal => {
                s.plat += 1;
                // σ_i is the j-th copy of its letter: j-1 earlier indices hold it
                s.plat_j[seen[a as usize] - 1] += 1;
            }
        }
    }
    s
}

/// `|Q_n(k)| = Π_{i=0}^{n-1} (ki+1)`.
pub fn stirling_count(n: usize, k: usize) -> u128 {
    (0..n as u128).map(|i| k as u128 * i + 1).product()
}

fn check_guard(n: usize, k: usize) -> Result<()> {
    if n == 0 || k == 0 {
        return Err(Error::OutOfRange(format!(
            "Q_n(k) needs n, k >= 1 (got n={n}, k={k})"
        )));
    }
    let mut count: u128 = 1;
    for i in 0..n as u128 {
        count = count.saturating_mul(k as u128 * i + 1);
        if count > MAX_STIRLING_WORDS {
            return Err(size_limit(
                format!("|Q_{n}({k})|"),
                format!("{MAX_STIRLING_WORDS} words"),
            ));
        }
    }
    Ok(())
}

/// Visits every word of `Q_n(k)` once. Words of order `m` are built from
/// order `m-1` by inserting the block `m^k` into one of its `k(m-1)+1` gaps.
pub fn for_each_stirling(n: usize, k: usize, mut f: impl FnMut(&[u8])) -> Result<()> {
    check_guard(n, k)?;
    let mut word: Vec<u8> = Vec::with_capacity(n * k);
    grow(&mut word, 1, n, k, &mut f);
    Ok(())
}

fn grow(word: &mut Vec<u8>, m: usize, n: usize, k: usize, f: &mut impl FnMut(&[u8])) {
    if m > n {
        f(word);
        return;
    }
    let gaps = word.len() + 1;
    for gap in 0..gaps {
        word.splice(gap..gap, std::iter::repeat_n(m as u8, k));
        grow(word, m + 1, n, k, f);
        word.drain(gap..gap + k);
    }
}

pub fn stirling_gen(n: usize, k: usize) -> Result<Vec<StirlingWord>> {
    let mut out = Vec::new();
    for_each_stirling(n, k, |w| {
        out.push(StirlingWord {
            k,
            n,
            word: w.to_vec(),
        })
    })?;
    Ok(out)
}

/// `C_n(x_1, …, x_{k+1}) = Σ x_1^{plat_1} ⋯ x_{k-1}^{plat_{k-1}} x_k^{des} x_{k+1}^{asc}`.
pub fn kth_order_poly(n: usize, k: usize) -> Result<Poly> {
    let mut counts: HashMap<Vec<u32>, u64> = HashMap::new();
    for_each_stirling(n, k, |w| {
        let s = stirling_stats(k, w);
        let mut key: Vec<u32> = s.plat_j.iter().map(|&c| c as u32).collect();
        key.push(s.des as u32);
        key.push(s.asc as u32);
        *counts.entry(key).or_insert(0) += 1;
    })?;
    let xs = stirling_vars(k);
    Ok(Poly::from_terms(counts.into_iter().map(|(key, c)| {
        (
            Monomial::from_pairs(xs.iter().cloned().zip(key)),
            Rational::from_integer(BigInt::from(c)),
        )
    })))
}

/// Renames `x_1 -> z, x_2 -> y, x_3 -> x` so that the `k = 2` polynomial
/// reads as `C_n(x, y, z) = Σ x^asc y^des z^plat`.
pub fn as_trivariate_second_order(p: &Poly) -> Poly {
    let (x1, x2, x3) = (Var::new("x_1"), Var::new("x_2"), Var::new("x_3"));
    p.rename(|v| {
        if *v == x1 {
            Var::new("z")
        } else if *v == x2 {
            Var::new("y")
        } else if *v == x3 {
            Var::new("x")
        } else {
            v.clone()
        }
    })
}

/// The second-order Eulerian polynomial `C_n(x) = Σ x^des` over `Q_n`.
pub fn second_order_poly(n: usize) -> Result<Poly> {
    let mut counts: HashMap<usize, u64> = HashMap::new();
    for_each_stirling(n, 2, |w| {
        *counts.entry(stirling_stats(2, w).des).or_insert(0) += 1;
    })?;
    let x = Var::new("x");
    Ok(Poly::from_terms(counts.into_iter().map(|(d, c)| {
        (
            Monomial::from_pairs([(x.clone(), d as u32)]),
            Rational::from_integer(BigInt::from(c)),
        )
    })))
}
