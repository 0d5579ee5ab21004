//! Context-free grammars in Chen's sense: a substitution rule per letter,
//! extended to all polynomials as a derivation.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::exactalg::{elementary_symmetric, indexed_vars, Poly, Var};
use crate::{Error, Result};

/// Letters without a rule are constants for the derivation.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Grammar {
    rules: BTreeMap<Var, Poly>,
}

impl Grammar {
    pub fn new<I, V>(rules: I) -> Grammar
    where
        I: IntoIterator<Item = (V, Poly)>,
        V: Into<Var>,
    {
        Grammar {
            rules: rules.into_iter().map(|(v, p)| (v.into(), p)).collect(),
        }
    }

    /// Builds a grammar from textual rules such as `("x", "x*y")`.
    pub fn parse(rules: &[(&str, &str)]) -> Result<Grammar> {
        let mut out = BTreeMap::new();
        for (v, img) in rules {
            out.insert(Var::new(v), img.parse::<Poly>()?);
        }
        Ok(Grammar { rules: out })
    }

    pub fn rule(&self, v: &Var) -> Option<&Poly> {
        self.rules.get(v)
    }

    pub fn rules(&self) -> impl Iterator<Item = (&Var, &Poly)> + '_ {
        self.rules.iter()
    }

    /// `D_G(p) = Σ_v (∂p/∂v) · G(v)`.
    pub fn derive(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        let present = p.vars();
        for (v, image) in &self.rules {
            if image.is_zero() || !present.contains(v) {
                continue;
            }
            out += &(&p.diff(v) * image);
        }
        out
    }

    /// `D_G^n(seed)`.
    pub fn iterate(&self, seed: &Poly, n: usize) -> Poly {
        let mut cur = seed.clone();
        for _ in 0..n {
            cur = self.derive(&cur);
        }
        cur
    }

    /// All of `seed, D(seed), …, D^n(seed)`.
    pub fn orbit(&self, seed: &Poly, n: usize) -> Vec<Poly> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(seed.clone());
        for i in 0..n {
            let next = self.derive(&out[i]);
            out.push(next);
        }
        out
    }
}

impl fmt::Display for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, p)) in self.rules.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v} -> {p}")?;
        }
        f.write_str("}")
    }
}

/// Checks a change of grammars: for every defined new letter `u`,
/// `G_new(u)` rewritten through `defs` must equal `D_{G_old}(defs[u])`.
pub fn transform_check(old: &Grammar, defs: &HashMap<Var, Poly>, new: &Grammar) -> bool {
    transform_mismatch(old, defs, new).is_none()
}

/// Like [`transform_check`] but returns the first failing letter with both sides.
pub fn transform_mismatch(
    old: &Grammar,
    defs: &HashMap<Var, Poly>,
    new: &Grammar,
) -> Option<(Var, Poly, Poly)> {
    let mut letters: Vec<&Var> = defs.keys().collect();
    letters.sort();
    for u in letters {
        let zero = Poly::zero();
        let lhs = new.rule(u).unwrap_or(&zero).subst(defs);
        let rhs = old.derive(&defs[u]);
        if lhs != rhs {
            return Some((u.clone(), lhs, rhs));
        }
    }
    None
}

/// The catalog of named grammars.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GrammarName {
    G1,
    G2,
    G3,
    G4,
    G5,
    G6,
    G7,
    G8,
    G9(usize),
    G10(usize),
}

impl GrammarName {
    pub fn build(self) -> Grammar {
        match self {
            GrammarName::G1 => fixed(&[("x", "x*y"), ("y", "x*y")]),
            GrammarName::G2 => fixed(&[("u", "u*v"), ("v", "2*u")]),
            GrammarName::G3 => fixed(&[("x", "x*(u+x)"), ("u", "0")]),
            GrammarName::G4 => fixed(&[("u", "u*v"), ("v", "u")]),
            GrammarName::G5 => fixed(&[
                ("L", "L*y"),
                ("M", "M*s"),
                ("s", "x*y"),
                ("x", "x*y"),
                ("y", "x*y"),
            ]),
            GrammarName::G6 => fixed(&[("I", "I*t"), ("t", "u"), ("u", "u*v"), ("v", "u")]),
            GrammarName::G7 => fixed(&[("x", "x*y*z"), ("y", "x*y*z"), ("z", "x*y*z")]),
            GrammarName::G8 => fixed(&[("u", "3*w"), ("v", "2*u*w"), ("w", "v*w")]),
            GrammarName::G9(k) => g9(k),
            GrammarName::G10(k) => g10(k),
        }
    }

    pub fn name(self) -> String {
        match self {
            GrammarName::G9(k) => format!("G9:{k}"),
            GrammarName::G10(k) => format!("G10:{k}"),
            other => format!("{other:?}"),
        }
    }
}

impl FromStr for GrammarName {
    type Err = Error;

    fn from_str(s: &str) -> Result<GrammarName> {
        let bad = || Error::UnknownGrammar(s.to_owned());
        let param = |rest: &str| -> Result<usize> {
            let k: usize = rest.parse().map_err(|_| bad())?;
            if k == 0 {
                return Err(bad());
            }
            Ok(k)
        };
        Ok(match s {
            "G1" => GrammarName::G1,
            "G2" => GrammarName::G2,
            "G3" => GrammarName::G3,
            "G4" => GrammarName::G4,
            "G5" => GrammarName::G5,
            "G6" => GrammarName::G6,
            "G7" => GrammarName::G7,
            "G8" => GrammarName::G8,
            _ => {
                if let Some(rest) = s.strip_prefix("G10:") {
                    GrammarName::G10(param(rest)?)
                } else if let Some(rest) = s.strip_prefix("G9:") {
                    GrammarName::G9(param(rest)?)
                } else {
                    return Err(bad());
                }
            }
        })
    }
}

fn fixed(rules: &[(&str, &str)]) -> Grammar {
    Grammar::parse(rules).expect("catalog rules are well formed")
}

/// `x_1 … x_{k+1}`.
pub fn stirling_vars(k: usize) -> Vec<Var> {
    indexed_vars("x", k + 1)
}

/// `e_1 … e_{k+1}` as opaque letters.
pub fn e_letter(i: usize) -> Poly {
    if i == 0 {
        Poly::one()
    } else {
        Poly::from_var(Var::indexed("e", i))
    }
}

/// `x_i -> x_1 ⋯ x_{k+1}` for every `i`.
pub fn g9(k: usize) -> Grammar {
    assert!(k >= 1, "G9 needs k >= 1");
    let xs = stirling_vars(k);
    let top = elementary_symmetric(&xs, k + 1);
    Grammar::new(xs.into_iter().map(|x| (x, top.clone())))
}

/// `x_1 -> e_{k+1}`, `e_i -> (k-i+2) e_{i-1} e_{k+1}` for `1 <= i <= k+1`, with `e_0 = 1`.
pub fn g10(k: usize) -> Grammar {
    assert!(k >= 1, "G10 needs k >= 1");
    let top = e_letter(k + 1);
    let mut rules = vec![(Var::indexed("x", 1), top.clone())];
    for i in 1..=k + 1 {
        let coef = Poly::int((k + 2 - i) as i64);
        rules.push((Var::indexed("e", i), &(&coef * &e_letter(i - 1)) * &top));
    }
    Grammar::new(rules)
}

/// The substitution `e_i -> e_i(x_1, …, x_{k+1})` expanding the e-letters.
pub fn esym_defs(k: usize) -> HashMap<Var, Poly> {
    let xs = stirling_vars(k);
    (1..=k + 1)
        .map(|i| (Var::indexed("e", i), elementary_symmetric(&xs, i)))
        .collect()
}
