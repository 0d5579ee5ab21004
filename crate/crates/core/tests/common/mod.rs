//! Strategies and property bodies shared by the property tests and the
//! acceptance run.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use eulab_core::exactalg::{int, rat};
use eulab_core::expand::{
    esym_expand, frobenius_expand, gamma_expand, partial_gamma_expand, Basis, Expansion,
};
use eulab_core::grammar::{stirling_vars, GrammarName};
use eulab_core::permstats::perm_stats;
use eulab_core::series::Series;
use eulab_core::stirlingperm::stirling_stats;
use eulab_core::trees::{trees_gen, FamilySpec};
use eulab_core::{Monomial, Poly, Rational, Var};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub type Check = Result<(), TestCaseError>;

pub const VARS: [&str; 3] = ["x", "y", "z"];

pub fn arb_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

/// Sparse polynomials in `x, y, z` with at most six terms of degree <= 3 per variable.
pub fn arb_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(([0u32..=3, 0u32..=3, 0u32..=3], arb_rational()), 0..=6).prop_map(
        |terms| {
            Poly::from_terms(terms.into_iter().map(|(e, c)| {
                (
                    Monomial::from_pairs(VARS.iter().zip(e).map(|(v, e)| (Var::new(v), e))),
                    c,
                )
            }))
        },
    )
}

pub fn arb_var() -> impl Strategy<Value = Var> {
    prop::sample::select(VARS.to_vec()).prop_map(Var::new)
}

pub fn ring_laws(a: &Poly, b: &Poly, c: &Poly) -> Check {
    prop_assert_eq!(a + b, b + a);
    prop_assert_eq!(a * b, b * a);
    prop_assert_eq!(&(a + b) + c, a + &(b + c));
    prop_assert_eq!(&(a * b) * c, a * &(b * c));
    prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
    prop_assert_eq!(a - &a.clone(), Poly::zero());
    prop_assert_eq!(a * &Poly::one(), a.clone());
    prop_assert_eq!(a + &Poly::zero(), a.clone());
    prop_assert!((a * &Poly::zero()).is_zero());
    Ok(())
}

pub fn leibniz(a: &Poly, b: &Poly, v: &Var) -> Check {
    prop_assert_eq!((a * b).diff(v), &(&a.diff(v) * b) + &(a * &b.diff(v)));
    // the same rule for a grammar derivation
    let g = GrammarName::G1.build();
    let (a2, b2) = (a.eval(&HashMap::from([(Var::new("z"), int(1))])), b.clone());
    let b2 = b2.eval(&HashMap::from([(Var::new("z"), int(2))]));
    prop_assert_eq!(
        g.derive(&(&a2 * &b2)),
        &(&g.derive(&a2) * &b2) + &(&a2 * &g.derive(&b2))
    );
    Ok(())
}

pub fn subst_is_homomorphism(a: &Poly, b: &Poly, image: &Poly) -> Check {
    let defs = HashMap::from([(Var::new("x"), image.clone())]);
    prop_assert_eq!((a * b).subst(&defs), &a.subst(&defs) * &b.subst(&defs));
    prop_assert_eq!((a + b).subst(&defs), &a.subst(&defs) + &b.subst(&defs));
    Ok(())
}

pub fn json_round_trip(a: &Poly) -> Check {
    prop_assert_eq!(&Poly::from_json(&a.to_json()).unwrap(), a);
    prop_assert_eq!(&a.to_string().parse::<Poly>().unwrap(), a);
    Ok(())
}

/// Random expansion data: `(n, coefficients)` for a univariate basis.
pub fn arb_univariate_coeffs(max_n: usize) -> impl Strategy<Value = (usize, Vec<Rational>)> {
    (1..=max_n).prop_flat_map(|n| (Just(n), prop::collection::vec(arb_rational(), n + 1)))
}

fn expansion(
    basis: Basis,
    degree: usize,
    vars: Vec<Var>,
    coeffs: impl IntoIterator<Item = (Vec<usize>, Rational)>,
) -> Expansion {
    Expansion {
        basis,
        coeffs: coeffs.into_iter().filter(|(_, c)| *c != int(0)).collect(),
        degree,
        vars,
    }
}

pub fn gamma_round_trip(n: usize, cs: &[Rational]) -> Check {
    let e = expansion(
        Basis::Gamma,
        n,
        vec![Var::new("x")],
        (0..=n / 2).map(|k| (vec![k], cs[k].clone())),
    );
    let back = gamma_expand(&e.reconstruct(), &Var::new("x"), n)
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(back.coeffs, e.coeffs);
    Ok(())
}

pub fn frobenius_round_trip(n: usize, cs: &[Rational]) -> Check {
    let e = expansion(
        Basis::Frobenius,
        n,
        vec![Var::new("x")],
        (1..=n).map(|k| (vec![k], cs[k].clone())),
    );
    let back = frobenius_expand(&e.reconstruct(), &Var::new("x"), n)
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(back.coeffs, e.coeffs);
    Ok(())
}

pub fn arb_partial_gamma() -> impl Strategy<Value = (usize, BTreeMap<Vec<usize>, Rational>)> {
    (0usize..=5).prop_flat_map(|n| {
        let keys: Vec<Vec<usize>> = (0..=n)
            .flat_map(|i| (0..=(n - i) / 2).map(move |j| vec![i, j]))
            .collect();
        let len = keys.len();
        (
            Just(n),
            prop::collection::vec(arb_rational(), len)
                .prop_map(move |cs| keys.iter().cloned().zip(cs).collect()),
        )
    })
}

pub fn partial_gamma_round_trip(n: usize, cs: &BTreeMap<Vec<usize>, Rational>) -> Check {
    let e = expansion(
        Basis::PartialGamma,
        n,
        ["x", "y", "s"].map(Var::new).to_vec(),
        cs.clone(),
    );
    let back = partial_gamma_expand(&e.reconstruct(), n)
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(back.coeffs, e.coeffs);
    Ok(())
}

/// Up to five terms `c e_1^a e_2^b e_3^d` with small exponents.
pub fn arb_esym() -> impl Strategy<Value = BTreeMap<Vec<usize>, Rational>> {
    prop::collection::btree_map(prop::collection::vec(0usize..=2, 3), arb_rational(), 0..=5)
}

pub fn esym_round_trip(cs: &BTreeMap<Vec<usize>, Rational>) -> Check {
    let xs = stirling_vars(2);
    let e = expansion(Basis::Esym, 0, xs.clone(), cs.clone());
    let back =
        esym_expand(&e.reconstruct(), &xs).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(back.coeffs, e.coeffs);
    Ok(())
}

pub fn arb_perm() -> impl Strategy<Value = Vec<u8>> {
    (1u8..=12).prop_flat_map(|n| Just((1..=n).collect::<Vec<u8>>()).prop_shuffle())
}

pub fn perm_identities(p: &[u8]) -> Check {
    let s = perm_stats(p);
    let n = p.len();
    prop_assert_eq!(s.asc, s.suc + s.basc);
    prop_assert_eq!(s.asc + s.des, n - 1);
    prop_assert_eq!(s.exc + s.fix + s.aexc, n);
    Ok(())
}

/// A k-Stirling word grown from random gap choices.
pub fn arb_stirling() -> impl Strategy<Value = (usize, Vec<u8>)> {
    (1usize..=4, 1usize..=7).prop_flat_map(|(k, n)| {
        let gaps: Vec<_> = (0..n).map(|m| 0..=k * m).collect();
        (Just(k), gaps).prop_map(move |(k, gaps)| {
            let mut word: Vec<u8> = Vec::new();
            for (m, gap) in gaps.into_iter().enumerate() {
                word.splice(gap..gap, std::iter::repeat_n(m as u8 + 1, k));
            }
            (k, word)
        })
    })
}

pub fn stirling_identities(k: usize, w: &[u8]) -> Check {
    let s = stirling_stats(k, w);
    let n = w.len() / k;
    prop_assert_eq!(s.asc + s.des + s.plat, k * n + 1);
    prop_assert_eq!(s.plat_j.iter().sum::<usize>(), s.plat);
    Ok(())
}

/// Series with polynomial coefficients in `x` and zero constant term.
pub fn arb_series(order: usize) -> impl Strategy<Value = Series> {
    prop::collection::vec(arb_poly(), order).prop_map(move |cs| {
        let x = Var::new("x");
        let zero = HashMap::from([(Var::new("y"), int(0)), (Var::new("z"), int(0))]);
        let mut coeffs = vec![Poly::zero()];
        coeffs.extend(cs.into_iter().map(|c| {
            let c = c.eval(&zero);
            Poly::from_terms(c.terms().map(|(m, q)| {
                (
                    Monomial::from_pairs([(x.clone(), m.exponent(&x))]),
                    q.clone(),
                )
            }))
        }));
        Series::new(order, coeffs)
    })
}

pub fn series_laws(a: &Series, b: &Series) -> Check {
    let one_plus_b = &Series::one(a.order()) + b;
    prop_assert_eq!(&(a * &one_plus_b).div(&one_plus_b).unwrap(), a);
    prop_assert_eq!(
        (a + b).exp().unwrap(),
        &a.exp().unwrap() * &b.exp().unwrap()
    );
    let (s, c) = (a.sin().unwrap(), a.cos().unwrap());
    prop_assert_eq!(&(&s * &s) + &(&c * &c), Series::one(a.order()));
    Ok(())
}

/// Every family at small `n`: generated trees are increasing and pairwise distinct.
pub fn tree_families_deduplicate(max_n: usize) -> Result<(), String> {
    let families = [
        FamilySpec::NonPlane {
            max_degree: Some(2),
        },
        FamilySpec::NonPlane { max_degree: None },
        FamilySpec::Plane {
            max_degree: Some(2),
        },
        FamilySpec::Plane {
            max_degree: Some(3),
        },
        FamilySpec::Plane { max_degree: None },
        FamilySpec::Forest012,
    ];
    for spec in families {
        for n in 0..=max_n {
            if n == 0 && matches!(spec, FamilySpec::Plane { .. }) {
                continue;
            }
            let trees = trees_gen(n, spec).map_err(|e| e.to_string())?;
            let mut seen = BTreeSet::new();
            for t in &trees {
                if !t.is_increasing() {
                    return Err(format!(
                        "{spec:?} n={n}: {} is not increasing",
                        t.canonical()
                    ));
                }
                if !seen.insert(t.canonical()) {
                    return Err(format!("{spec:?} n={n}: {} generated twice", t.canonical()));
                }
            }
        }
    }
    Ok(())
}
