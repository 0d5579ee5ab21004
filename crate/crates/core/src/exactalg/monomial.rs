use std::cmp::Ordering;
use std::fmt;

use super::Var;

/// A power product of variables. Exponents are kept sorted by variable with
/// no zero entries, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<(Var, u32)>,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial { exps: Vec::new() }
    }

    pub fn var(v: Var) -> Monomial {
        Monomial { exps: vec![(v, 1)] }
    }

    /// Builds a monomial from arbitrary `(var, exponent)` pairs; repeated
    /// variables are merged and zero exponents dropped.
    pub fn from_pairs<I: IntoIterator<Item = (Var, u32)>>(pairs: I) -> Monomial {
        let mut exps: Vec<(Var, u32)> = pairs.into_iter().filter(|(_, e)| *e > 0).collect();
        exps.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Var, u32)> = Vec::with_capacity(exps.len());
        for (v, e) in exps {
            match merged.last_mut() {
                Some((last, acc)) if *last == v => *acc += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial { exps: merged }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: &Var) -> u32 {
        self.exps
            .binary_search_by(|(w, _)| w.cmp(v))
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, u32)> + '_ {
        self.exps.iter().map(|(v, e)| (v, *e))
    }

    pub fn vars(&self) -> impl Iterator<Item = &Var> + '_ {
        self.exps.iter().map(|(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            let (a, b) = (&self.exps[i], &other.exps[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.0.clone(), a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.exps[i..]);
        out.extend_from_slice(&other.exps[j..]);
        Monomial { exps: out }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.exps.len());
        let mut j = 0;
        for (v, e) in &self.exps {
            if j < other.exps.len() && other.exps[j].0 < *v {
                return None;
            }
            if j < other.exps.len() && other.exps[j].0 == *v {
                let f = other.exps[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => continue,
                    Ordering::Greater => out.push((v.clone(), e - f)),
                }
            } else {
                out.push((v.clone(), *e));
            }
        }
        if j < other.exps.len() {
            return None;
        }
        Some(Monomial { exps: out })
    }

    /// Lowers the exponent of `v` by one, returning the old exponent.
    pub fn lower(&self, v: &Var) -> Option<(u32, Monomial)> {
        let idx = self.exps.binary_search_by(|(w, _)| w.cmp(v)).ok()?;
        let e = self.exps[idx].1;
        let mut exps = self.exps.clone();
        if e == 1 {
            exps.remove(idx);
        } else {
            exps[idx].1 -= 1;
        }
        Some((e, Monomial { exps }))
    }

    /// Removes `v`, returning its exponent and the remaining monomial.
    pub fn split_off(&self, v: &Var) -> (u32, Monomial) {
        match self.exps.binary_search_by(|(w, _)| w.cmp(v)) {
            Ok(idx) => {
                let mut exps = self.exps.clone();
                let (_, e) = exps.remove(idx);
                (e, Monomial { exps })
            }
            Err(_) => (0, self.clone()),
        }
    }

    /// Applies a variable renaming; images may collide and are merged.
    pub fn rename(&self, f: impl Fn(&Var) -> Var) -> Monomial {
        Monomial::from_pairs(self.exps.iter().map(|(v, e)| (f(v), *e)))
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the exponent of the
    /// smallest-named variable where the two differ decides.
    fn cmp(&self, other: &Monomial) -> Ordering {
        let d = self.degree().cmp(&other.degree());
        if d != Ordering::Equal {
            return d;
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.exps.get(i), other.exps.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(a), Some(b)) => match a.0.cmp(&b.0) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if a.1 != b.1 {
                            return a.1.cmp(&b.1);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return f.write_str("1");
        }
        for (i, (v, e)) in self.exps.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(pairs: &[(&str, u32)]) -> Monomial {
        Monomial::from_pairs(pairs.iter().map(|(v, e)| (Var::new(v), *e)))
    }

    #[test]
    fn grlex() {
        assert!(m(&[("x", 1)]) > m(&[("y", 1)]));
        assert!(m(&[("y", 2)]) > m(&[("x", 1)]));
        assert!(m(&[("x", 1), ("y", 1)]) > m(&[("y", 2)]));
        assert!(m(&[("x", 2)]) > m(&[("x", 1), ("y", 1)]));
        assert!(Monomial::one() < m(&[("z", 1)]));
    }

    #[test]
    fn division() {
        let a = m(&[("x", 2), ("y", 1)]);
        assert_eq!(a.div(&m(&[("x", 1)])), Some(m(&[("x", 1), ("y", 1)])));
        assert_eq!(a.div(&m(&[("z", 1)])), None);
        assert_eq!(a.div(&m(&[("y", 2)])), None);
        assert_eq!(a.div(&a), Some(Monomial::one()));
    }

    #[test]
    fn merge_and_drop_zero() {
        assert_eq!(m(&[("x", 1), ("y", 0), ("x", 2)]), m(&[("x", 3)]));
    }
}
