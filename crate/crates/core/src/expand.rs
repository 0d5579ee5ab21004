//! Expansions in structured bases, and the γ-coefficient tables.
//!
//! All solvers peel coefficients off one at a time and finish by checking
//! that the residual vanishes, so a successful result is its own certificate.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::size_limit;
use crate::exactalg::{elementary_symmetric, int, Monomial, Poly, Rational, Var};
use crate::grammar::g10;
use crate::{Error, Result};

/// Largest `n` accepted by [`gamma_tables`].
pub const MAX_GAMMA_N: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// `v^k (1+v)^{n-2k}`, key `[k]`.
    Gamma,
    /// `v^k (1-v)^{n-k}`, key `[k]`.
    Frobenius,
    /// `(s+y)^i (2xy)^j (x+y)^{n-i-2j}`, key `[i, j]`.
    PartialGamma,
    /// `e_1^{a_1} ⋯ e_m^{a_m}` in the variables, key `[a_1, …, a_m]`.
    Esym,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::Gamma => "gamma",
            Basis::Frobenius => "frobenius",
            Basis::PartialGamma => "partial-gamma",
            Basis::Esym => "esym",
        }
    }
}

impl std::str::FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Basis> {
        [
            Basis::Gamma,
            Basis::Frobenius,
            Basis::PartialGamma,
            Basis::Esym,
        ]
        .into_iter()
        .find(|b| b.name() == s)
        .ok_or_else(|| Error::InvalidParam(format!("unknown basis {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub basis: Basis,
    pub coeffs: BTreeMap<Vec<usize>, Rational>,
    /// `n` for the univariate and partial bases, total degree for `Esym`.
    pub degree: usize,
    /// The variables the basis is written in.
    pub vars: Vec<Var>,
}

impl Expansion {
    pub fn coeff(&self, key: &[usize]) -> Rational {
        self.coeffs.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// The basis element for `key`, as a polynomial in `vars`.
    pub fn basis_poly(&self, key: &[usize]) -> Poly {
        let n = self.degree as u32;
        match self.basis {
            Basis::Gamma => {
                let v = Poly::from_var(self.vars[0].clone());
                let k = key[0] as u32;
                &v.pow(k) * &(&Poly::one() + &v).pow(n - 2 * k)
            }
            Basis::Frobenius => {
                let v = Poly::from_var(self.vars[0].clone());
                let k = key[0] as u32;
                &v.pow(k) * &(&Poly::one() - &v).pow(n - k)
            }
            Basis::PartialGamma => {
                let [x, y, s] = [0, 1, 2].map(|i| Poly::from_var(self.vars[i].clone()));
                let (i, j) = (key[0] as u32, key[1] as u32);
                let two_xy = (&x * &y).scale(&int(2));
                &(&(&s + &y).pow(i) * &two_xy.pow(j)) * &(&x + &y).pow(n - i - 2 * j)
            }
            Basis::Esym => key
                .iter()
                .enumerate()
                .map(|(i, &a)| elementary_symmetric(&self.vars, i + 1).pow(a as u32))
                .fold(Poly::one(), |acc, e| &acc * &e),
        }
    }

    /// Substitutes the basis back in and sums.
    pub fn reconstruct(&self) -> Poly {
        self.coeffs
            .iter()
            .map(|(key, c)| self.basis_poly(key).scale(c))
            .sum()
    }

    /// For `Esym`: the expansion as a polynomial in the letters `e_1, …, e_m`.
    pub fn to_e_poly(&self) -> Poly {
        Poly::from_terms(self.coeffs.iter().map(|(key, c)| {
            let m = Monomial::from_pairs(
                key.iter()
                    .enumerate()
                    .map(|(i, &a)| (Var::indexed("e", i + 1), a as u32)),
            );
            (m, c.clone())
        }))
    }
}

fn only_vars(f: &Poly, allowed: &[Var]) -> Result<()> {
    match f.vars().into_iter().find(|v| !allowed.contains(v)) {
        Some(v) => Err(Error::InvalidParam(format!(
            "unexpected variable {}",
            v.name()
        ))),
        None => Ok(()),
    }
}

fn univariate(f: &Poly, v: &Var, n: usize) -> Result<Vec<Rational>> {
    only_vars(f, std::slice::from_ref(v))?;
    let coeffs = f.univariate_coeffs(v).unwrap_or_default();
    if coeffs.len() > n + 1 {
        return Err(Error::NotExpandable(format!("degree exceeds {n}")));
    }
    Ok(coeffs)
}

fn residual_zero(r: &Poly, what: &str) -> Result<()> {
    if r.is_zero() {
        Ok(())
    } else {
        Err(Error::NotExpandable(format!(
            "{what}: nonzero residual {r}"
        )))
    }
}

/// `f = Σ γ_k v^k (1+v)^{n-2k}` for `f` palindromic of center `n/2`.
pub fn gamma_expand(f: &Poly, v: &Var, n: usize) -> Result<Expansion> {
    univariate(f, v, n)?;
    if !f.is_palindromic(v, n as u32) {
        return Err(Error::NotPalindromic(format!("{f} about {n}/2")));
    }
    let mut out = Expansion {
        basis: Basis::Gamma,
        coeffs: BTreeMap::new(),
        degree: n,
        vars: vec![v.clone()],
    };
    let mut residual = f.clone();
    for k in 0..=n / 2 {
        let c = residual.coeff(&Monomial::from_pairs([(v.clone(), k as u32)]));
        if !c.is_zero() {
            residual -= &out.basis_poly(&[k]).scale(&c);
            out.coeffs.insert(vec![k], c);
        }
    }
    residual_zero(&residual, "gamma")?;
    Ok(out)
}

/// `f = Σ_{k=1}^n c_k v^k (1-v)^{n-k}`.
pub fn frobenius_expand(f: &Poly, v: &Var, n: usize) -> Result<Expansion> {
    univariate(f, v, n)?;
    if !f.constant_term().is_zero() {
        return Err(Error::NotExpandable("nonzero constant term".into()));
    }
    let mut out = Expansion {
        basis: Basis::Frobenius,
        coeffs: BTreeMap::new(),
        degree: n,
        vars: vec![v.clone()],
    };
    let mut residual = f.clone();
    for k in 1..=n {
        let c = residual.coeff(&Monomial::from_pairs([(v.clone(), k as u32)]));
        if !c.is_zero() {
            residual -= &out.basis_poly(&[k]).scale(&c);
            out.coeffs.insert(vec![k], c);
        }
    }
    residual_zero(&residual, "frobenius")?;
    Ok(out)
}

/// `f(x,y,s) = Σ γ_{n,i,j} (s+y)^i (2xy)^j (x+y)^{n-i-2j}`.
///
/// Works in `t = s + y`: each coefficient of `t^i` must be symmetric in
/// `x, y`; it is then peeled by the coefficient of `x^j y^{m-j}`, which only
/// basis terms with index `<= j` reach.
pub fn partial_gamma_expand(f: &Poly, n: usize) -> Result<Expansion> {
    let [x, y, s] = ["x", "y", "s"].map(Var::new);
    only_vars(f, &[x.clone(), y.clone(), s.clone()])?;
    let t = Var::new("t");
    let shifted = f.subst(&HashMap::from([(
        s.clone(),
        &Poly::from_var(t.clone()) - &Poly::from_var(y.clone()),
    )]));
    let mut out = Expansion {
        basis: Basis::PartialGamma,
        coeffs: BTreeMap::new(),
        degree: n,
        vars: vec![x.clone(), y.clone(), s],
    };
    if shifted.degree_in(&t).unwrap_or(0) as usize > n {
        return Err(Error::NotExpandable(format!("degree in s+y exceeds {n}")));
    }
    let xy = [x.clone(), y.clone()];
    let two_xy = (&Poly::from_var(x.clone()) * &Poly::from_var(y.clone())).scale(&int(2));
    let x_plus_y = &Poly::from_var(x.clone()) + &Poly::from_var(y.clone());
    for i in 0..=n {
        let mut h = shifted.coeff_of_power(&t, i as u32);
        if h.is_zero() {
            continue;
        }
        if !h.is_symmetric(&xy) {
            return Err(Error::NotExpandable(format!(
                "coefficient of (s+y)^{i} is not symmetric in x, y"
            )));
        }
        let m = n - i;
        for j in 0..=m / 2 {
            let at = Monomial::from_pairs([(x.clone(), j as u32), (y.clone(), (m - j) as u32)]);
            let c = h.coeff(&at) / Rational::from_integer(BigInt::from(1u64 << j));
            if !c.is_zero() {
                let b = &two_xy.pow(j as u32) * &x_plus_y.pow((m - 2 * j) as u32);
                h -= &b.scale(&c);
                out.coeffs.insert(vec![i, j], c);
            }
        }
        residual_zero(&h, &format!("coefficient of (s+y)^{i}"))?;
    }
    Ok(out)
}

/// Writes a symmetric `f` in the elementary symmetric polynomials of `vars`
/// by repeatedly cancelling the leading term.
pub fn esym_expand(f: &Poly, vars: &[Var]) -> Result<Expansion> {
    only_vars(f, vars)?;
    if !f.is_symmetric(vars) {
        return Err(Error::NotSymmetric(format!(
            "{} terms in {} variables",
            f.len(),
            vars.len()
        )));
    }
    let m = vars.len();
    let e: Vec<Poly> = (1..=m).map(|i| elementary_symmetric(vars, i)).collect();
    let mut powers: HashMap<(usize, usize), Poly> = HashMap::new();
    let mut out = Expansion {
        basis: Basis::Esym,
        coeffs: BTreeMap::new(),
        degree: f.total_degree().unwrap_or(0) as usize,
        vars: vars.to_vec(),
    };
    let mut residual = f.clone();
    while let Some((lead, c)) = residual.leading_term() {
        let a: Vec<u32> = vars.iter().map(|v| lead.exponent(v)).collect();
        let c = c.clone();
        let key: Vec<usize> = (0..m)
            .map(|i| (a[i] - a.get(i + 1).copied().unwrap_or(0)) as usize)
            .collect();
        let mut prod = Poly::constant(c.clone());
        for (i, &p) in key.iter().enumerate() {
            if p > 0 {
                let ep = powers.entry((i, p)).or_insert_with(|| e[i].pow(p as u32));
                prod = &prod * &*ep;
            }
        }
        residual -= &prod;
        *out.coeffs.entry(key).or_insert_with(Rational::zero) += c;
    }
    out.coeffs.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Reads the degree histogram `(i_1, …, i_n)` off an e-letter monomial:
/// the exponent of `e_{k-j+2}` is `i_j`, and `e_0 = 1` leaves `i_n` to be
/// recovered from `i_1 + ⋯ + i_n = n`.
pub fn hist_from_e_monomial(m: &Monomial, n: usize, k: usize) -> Option<Vec<usize>> {
    if n == 0 || n > k + 2 {
        return None;
    }
    let mut hist = vec![0usize; n];
    let mut total = 0usize;
    for (v, e) in m.iter() {
        let idx: usize = v.name().strip_prefix("e_")?.parse().ok()?;
        if idx == 0 || idx > k + 1 || k + 2 - idx > n {
            return None;
        }
        hist[k + 2 - idx - 1] = e as usize;
        total += e as usize;
    }
    if k + 2 == n {
        if total > n || hist[n - 1] != 0 {
            return None;
        }
        hist[n - 1] = n - total;
    }
    Some(hist)
}

/// Inverse of [`hist_from_e_monomial`].
pub fn e_monomial_from_hist(hist: &[usize], k: usize) -> Monomial {
    Monomial::from_pairs(hist.iter().enumerate().filter_map(|(j0, &c)| {
        let idx = (k + 1).checked_sub(j0)?;
        (idx > 0).then(|| (Var::indexed("e", idx), c as u32))
    }))
}

/// Violations of the structural constraints on a γ(n;·) index.
pub fn histogram_violation(n: usize, hist: &[usize]) -> Option<String> {
    let sum: usize = hist.iter().sum();
    let (i1, i_n) = (hist[0], hist[n - 1]);
    if hist.len() != n || sum != n {
        Some(format!("{hist:?}: entries must sum to {n}"))
    } else if n >= 2 && !(1..n).contains(&i1) {
        Some(format!("{hist:?}: i_1 outside [1, {}]", n - 1))
    } else if n >= 2 && i_n > 1 {
        Some(format!("{hist:?}: i_n > 1"))
    } else if n >= 2 && i_n == 1 && i1 != n - 1 {
        Some(format!("{hist:?}: i_n = 1 needs i_1 = n-1"))
    } else {
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GammaKind {
    Nij,
    Histogram,
    XyPoly,
}

impl GammaKind {
    pub const ALL: [GammaKind; 3] = [GammaKind::Nij, GammaKind::Histogram, GammaKind::XyPoly];

    pub fn name(self) -> &'static str {
        match self {
            GammaKind::Nij => "gamma-nij",
            GammaKind::Histogram => "gamma-n-histogram",
            GammaKind::XyPoly => "gamma-n-xy-poly",
        }
    }
}

impl std::str::FromStr for GammaKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<GammaKind> {
        GammaKind::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::InvalidParam(format!("unknown table {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GammaTable {
    /// `γ_{n,i,j}` keyed by `(n, i, j)`; zero entries are omitted.
    Nij(BTreeMap<(usize, usize, usize), BigInt>),
    /// `γ(n; i_1, …, i_n)` keyed by `n` then the histogram.
    Histogram(BTreeMap<usize, BTreeMap<Vec<usize>, BigInt>>),
    /// `γ_n(x, y)` for `n = 0, …, n_max`.
    XyPoly(Vec<Poly>),
}

fn check_table_size(n_max: usize) -> Result<()> {
    if n_max > MAX_GAMMA_N {
        Err(size_limit(
            format!("γ-table to n = {n_max}"),
            format!("n <= {MAX_GAMMA_N}"),
        ))
    } else {
        Ok(())
    }
}

pub fn gamma_tables(kind: GammaKind, n_max: usize) -> Result<GammaTable> {
    check_table_size(n_max)?;
    Ok(match kind {
        GammaKind::Nij => GammaTable::Nij(gamma_nij(n_max)),
        GammaKind::Histogram => {
            GammaTable::Histogram(histogram_by_grammar(n_max, n_max.saturating_sub(1).max(1))?)
        }
        GammaKind::XyPoly => GammaTable::XyPoly(gamma_xy_polys(n_max)),
    })
}

/// `γ_{n+1,i,j} = γ_{n,i-1,j} + (1+i)γ_{n,i+1,j-1} + jγ_{n,i,j} + (n-i-2j+2)γ_{n,i,j-1}`.
pub fn gamma_nij(n_max: usize) -> BTreeMap<(usize, usize, usize), BigInt> {
    let mut rows: Vec<HashMap<(usize, usize), BigInt>> =
        vec![HashMap::from([((0, 0), BigInt::one())])];
    for n in 0..n_max {
        let prev = &rows[n];
        let get = |i: Option<usize>, j: Option<usize>| -> BigInt {
            match (i, j) {
                (Some(i), Some(j)) => prev.get(&(i, j)).cloned().unwrap_or_default(),
                _ => BigInt::zero(),
            }
        };
        let mut next = HashMap::new();
        for i in 0..=n + 1 {
            for j in 0..=(n + 1 - i) / 2 {
                let mut v = get(i.checked_sub(1), Some(j));
                v += (1 + i) * get(Some(i + 1), j.checked_sub(1));
                v += j * get(Some(i), Some(j));
                // n - i - 2j + 2 >= 0 whenever γ_{n,i,j-1} can be nonzero
                let w = n as i64 - i as i64 - 2 * j as i64 + 2;
                if w > 0 {
                    v += w * get(Some(i), j.checked_sub(1));
                }
                if !v.is_zero() {
                    next.insert((i, j), v);
                }
            }
        }
        rows.push(next);
    }
    rows.into_iter()
        .enumerate()
        .flat_map(|(n, row)| row.into_iter().map(move |((i, j), v)| ((n, i, j), v)))
        .collect()
}

/// `γ_{n+1} = (x + ny)γ_n + y(1-x)∂_x γ_n + y(1-2y)∂_y γ_n` from `γ_0 = 1`.
pub fn gamma_xy_polys(n_max: usize) -> Vec<Poly> {
    let (x, y) = (Var::new("x"), Var::new("y"));
    let (xp, yp) = (Poly::from_var(x.clone()), Poly::from_var(y.clone()));
    let one = Poly::one();
    let a_y = &yp * &(&one - &xp);
    let b_y = &yp * &(&one - &yp.scale(&int(2)));
    let mut rows = vec![Poly::one()];
    for n in 0..n_max {
        let g = &rows[n];
        let next = &(&(&(&xp + &yp.scale(&int(n as i64))) * g) + &(&a_y * &g.diff(&x)))
            + &(&b_y * &g.diff(&y));
        rows.push(next);
    }
    rows
}

/// `γ(n;·)` for `1 <= n <= n_max` read from `G10(k)^n(x_1)`; needs `n_max <= k + 2`.
pub fn histogram_by_grammar(
    n_max: usize,
    k: usize,
) -> Result<BTreeMap<usize, BTreeMap<Vec<usize>, BigInt>>> {
    check_table_size(n_max)?;
    if k == 0 || n_max > k + 2 {
        return Err(Error::OutOfRange(format!("G10({k}) covers n <= {}", k + 2)));
    }
    let g = g10(k);
    let mut p = Poly::from_var(Var::indexed("x", 1));
    let mut out = BTreeMap::new();
    for n in 1..=n_max {
        p = g.derive(&p);
        let mut row = BTreeMap::new();
        for (m, c) in p.terms() {
            let hist = hist_from_e_monomial(m, n, k).ok_or_else(|| {
                Error::NotExpandable(format!("monomial {m} is not an e-alphabet histogram"))
            })?;
            if let Some(msg) = histogram_violation(n, &hist) {
                return Err(Error::NotExpandable(msg));
            }
            row.insert(hist, c.to_integer());
        }
        out.insert(n, row);
    }
    Ok(out)
}

/// `γ(n;·)` by growing increasing plane trees one leaf at a time: a new leaf
/// under a vertex of degree `d` has `d + 1` positions.
pub fn histogram_by_insertion(n_max: usize) -> BTreeMap<usize, BTreeMap<Vec<usize>, BigInt>> {
    let mut out = BTreeMap::new();
    if n_max == 0 {
        return out;
    }
    let mut row: BTreeMap<Vec<usize>, BigInt> = BTreeMap::from([(vec![1], BigInt::one())]);
    out.insert(1, row.clone());
    for n in 1..n_max {
        let mut next: BTreeMap<Vec<usize>, BigInt> = BTreeMap::new();
        for (h, c) in &row {
            for d in 0..n {
                if h[d] == 0 {
                    continue;
                }
                let mut h2 = h.clone();
                h2.push(0);
                h2[d] -= 1;
                h2[d + 1] += 1;
                h2[0] += 1;
                *next.entry(h2).or_default() += c * (h[d] * (d + 1));
            }
        }
        row = next;
        out.insert(n + 1, row.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::indexed_vars;
    use crate::stirlingperm::kth_order_poly;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn coeffs(e: &Expansion) -> Vec<(Vec<usize>, i64)> {
        e.coeffs
            .iter()
            .map(|(k, c)| (k.clone(), i64::try_from(c.to_integer()).unwrap()))
            .collect()
    }

    #[test]
    fn gamma_examples() {
        let x = Var::new("x");
        let e = gamma_expand(&p("1 + 4*x + x^2"), &x, 2).unwrap();
        assert_eq!(coeffs(&e), vec![(vec![0], 1), (vec![1], 2)]);
        let e = gamma_expand(&p("1 + 11*x + 11*x^2 + x^3"), &x, 3).unwrap();
        assert_eq!(coeffs(&e), vec![(vec![0], 1), (vec![1], 8)]);
        let e = gamma_expand(&p("(1+x)^5"), &x, 5).unwrap();
        assert_eq!(coeffs(&e), vec![(vec![0], 1)]);
        assert!(matches!(
            gamma_expand(&p("1 + 2*x"), &x, 1),
            Err(Error::NotPalindromic(_))
        ));
    }

    #[test]
    fn frobenius_examples() {
        let x = Var::new("x");
        let e = frobenius_expand(&p("x + 4*x^2 + x^3"), &x, 3).unwrap();
        assert_eq!(coeffs(&e), vec![(vec![1], 1), (vec![2], 6), (vec![3], 6)]);
        let e = frobenius_expand(&p("x + 11*x^2 + 11*x^3 + x^4"), &x, 4).unwrap();
        assert_eq!(
            coeffs(&e),
            vec![(vec![1], 1), (vec![2], 14), (vec![3], 36), (vec![4], 24)]
        );
        assert_eq!(
            coeffs(&frobenius_expand(&p("x"), &x, 1).unwrap()),
            vec![(vec![1], 1)]
        );
        assert!(frobenius_expand(&p("1 + x"), &x, 1).is_err());
    }

    #[test]
    fn partial_gamma_examples() {
        let a4 = p("(s+y)^3 + 6*x*y*(s+y) + 2*x*y*(x+y)");
        let e = partial_gamma_expand(&a4, 3).unwrap();
        assert_eq!(
            coeffs(&e),
            vec![(vec![0, 1], 1), (vec![1, 1], 3), (vec![3, 0], 1)]
        );
        assert_eq!(e.reconstruct(), a4);
        let e = partial_gamma_expand(&Poly::one(), 0).unwrap();
        assert_eq!(coeffs(&e), vec![(vec![0, 0], 1)]);
        let a5 = p("(s+y)^4 + 12*x*y*(s+y)^2 + 8*x*y*(s+y)*(x+y) + 2*x*y*(x+y)^2 + 16*x^2*y^2");
        let e = partial_gamma_expand(&a5, 4).unwrap();
        assert_eq!(
            coeffs(&e),
            vec![
                (vec![0, 1], 1),
                (vec![0, 2], 4),
                (vec![1, 1], 4),
                (vec![2, 1], 6),
                (vec![4, 0], 1)
            ]
        );
        assert!(matches!(
            partial_gamma_expand(&p("x*s"), 2),
            Err(Error::NotExpandable(_))
        ));
    }

    #[test]
    fn esym_examples() {
        let xs = indexed_vars("x", 3);
        let e = esym_expand(&kth_order_poly(2, 2).unwrap(), &xs).unwrap();
        assert_eq!(e.to_e_poly(), p("e_2*e_3"));
        let e = esym_expand(&kth_order_poly(4, 2).unwrap(), &xs).unwrap();
        assert_eq!(e.to_e_poly(), p("e_2^3*e_3 + 8*e_1*e_2*e_3^2 + 6*e_3^3"));
        assert!(e.is_nonnegative());
        let e = esym_expand(&elementary_symmetric(&xs, 1), &xs).unwrap();
        assert_eq!(e.to_e_poly(), p("e_1"));
        assert!(matches!(
            esym_expand(&p("x_1"), &xs),
            Err(Error::NotSymmetric(_))
        ));
    }

    #[test]
    fn round_trips() {
        let x = Var::new("x");
        let f = p("1 + 26*x + 66*x^2 + 26*x^3 + x^4");
        assert_eq!(gamma_expand(&f, &x, 4).unwrap().reconstruct(), f);
        let f = p("x + 26*x^2 + 66*x^3 + 26*x^4 + x^5");
        assert_eq!(frobenius_expand(&f, &x, 5).unwrap().reconstruct(), f);
        let xs = indexed_vars("x", 3);
        let f = kth_order_poly(3, 2).unwrap();
        assert_eq!(esym_expand(&f, &xs).unwrap().reconstruct(), f);
    }

    #[test]
    fn nij_examples_and_xy_agreement() {
        let t = gamma_nij(8);
        assert_eq!(t[&(2, 0, 1)], BigInt::from(1));
        assert_eq!(t[&(2, 2, 0)], BigInt::from(1));
        assert_eq!(t[&(3, 1, 1)], BigInt::from(3));
        let polys = gamma_xy_polys(8);
        for (n, g) in polys.iter().enumerate() {
            let from_nij =
                Poly::from_terms(t.iter().filter(|(k, _)| k.0 == n).map(|(&(_, i, j), v)| {
                    (
                        Monomial::from_pairs([
                            (Var::new("x"), i as u32),
                            (Var::new("y"), j as u32),
                        ]),
                        Rational::from_integer(v.clone()),
                    )
                }));
            assert_eq!(*g, from_nij, "n={n}");
        }
    }

    #[test]
    fn histogram_tables_agree() {
        let GammaTable::Histogram(h) = gamma_tables(GammaKind::Histogram, 7).unwrap() else {
            unreachable!()
        };
        assert_eq!(h[&4][&vec![2, 1, 1, 0]], BigInt::from(8));
        assert_eq!(h[&3][&vec![2, 0, 1]], BigInt::from(2));
        assert_eq!(h, histogram_by_insertion(7));
    }

    #[test]
    fn e_alphabet_map() {
        let m = e_monomial_from_hist(&[2, 1, 1, 0], 3);
        assert_eq!(Poly::monomial(m.clone(), int(1)), p("e_4^2*e_3*e_2"));
        assert_eq!(hist_from_e_monomial(&m, 4, 3), Some(vec![2, 1, 1, 0]));
        // e_0 = 1 drops out at n = k + 2
        let m = e_monomial_from_hist(&[3, 0, 0, 1], 2);
        assert_eq!(Poly::monomial(m.clone(), int(1)), p("e_3^3"));
        assert_eq!(hist_from_e_monomial(&m, 4, 2), Some(vec![3, 0, 0, 1]));
    }

    #[test]
    fn violations() {
        assert!(histogram_violation(3, &[2, 0, 1]).is_none());
        assert!(histogram_violation(3, &[3, 0, 0]).is_some());
        assert!(histogram_violation(4, &[2, 1, 0, 1]).is_some());
    }

    #[test]
    fn table_guard() {
        assert!(matches!(
            gamma_tables(GammaKind::Nij, 13),
            Err(Error::SizeLimit { .. })
        ));
    }
}
