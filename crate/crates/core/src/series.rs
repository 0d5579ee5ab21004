//! Truncated power series in `z` with polynomial coefficients.
//!
//! Every value carries its truncation order `N` and holds the coefficients of
//! `z^0, …, z^N`. Binary operations work at the smaller of the two orders.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exactalg::{Poly, Rational, Var};
use crate::permstats::factorial;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    order: usize,
    coeffs: Vec<Poly>,
}

impl Series {
    /// Pads with zeros or truncates so that there are `order + 1` coefficients.
    pub fn new(order: usize, mut coeffs: Vec<Poly>) -> Series {
        coeffs.resize(order + 1, Poly::zero());
        Series { order, coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Poly) -> Series {
        Series {
            order,
            coeffs: (0..=order).map(f).collect(),
        }
    }

    /// Series whose `n`-th coefficient is `f(n) / n!`.
    pub fn from_egf(order: usize, mut f: impl FnMut(usize) -> Poly) -> Series {
        Series::from_fn(order, |n| f(n).scale(&fact(n).recip()))
    }

    pub fn zero(order: usize) -> Series {
        Series::new(order, Vec::new())
    }

    pub fn constant(order: usize, c: Poly) -> Series {
        Series::new(order, vec![c])
    }

    pub fn one(order: usize) -> Series {
        Series::constant(order, Poly::one())
    }

    /// `c · z`.
    pub fn z_times(order: usize, c: Poly) -> Series {
        Series::new(order, vec![Poly::zero(), c])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Poly {
        &self.coeffs[n]
    }

    /// `n! · [z^n]`.
    pub fn egf_coeff(&self, n: usize) -> Poly {
        self.coeffs[n].scale(&fact(n))
    }

    pub fn truncate(&self, order: usize) -> Series {
        let order = order.min(self.order);
        Series {
            order,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn map(&self, f: impl FnMut(&Poly) -> Poly) -> Series {
        Series {
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn subst(&self, map: &HashMap<Var, Poly>) -> Series {
        self.map(|p| p.subst(map))
    }

    pub fn eval(&self, values: &HashMap<Var, Rational>) -> Series {
        self.map(|p| p.eval(values))
    }

    pub fn scale(&self, c: &Poly) -> Series {
        self.map(|p| p * c)
    }

    /// Partial derivative of every coefficient in `v`.
    pub fn diff_var(&self, v: &Var) -> Series {
        self.map(|p| p.diff(v))
    }

    /// `d/dz`; the result has order one less (order 0 stays at order 0).
    pub fn diff_z(&self) -> Series {
        let order = self.order.saturating_sub(1);
        Series::from_fn(order, |n| match self.coeffs.get(n + 1) {
            Some(c) => c.scale(&Rational::from_integer(BigInt::from(n + 1))),
            None => Poly::zero(),
        })
    }

    /// Quotient with exact division by the constant term at each step.
    /// The constant term may be a polynomial, as long as every partial
    /// quotient stays polynomial.
    pub fn div(&self, rhs: &Series) -> Result<Series> {
        let order = self.order.min(rhs.order);
        let b0 = &rhs.coeffs[0];
        if b0.is_zero() {
            return Err(Error::NonInvertibleConstantTerm);
        }
        let inv = b0.as_constant().map(|c| c.recip());
        let mut out: Vec<Poly> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut num = self.coeffs[n].clone();
            for k in 1..=n {
                if !rhs.coeffs[k].is_zero() {
                    num -= &(&rhs.coeffs[k] * &out[n - k]);
                }
            }
            let q = match &inv {
                Some(c) => num.scale(c),
                None => num.div_exact(b0).ok_or(Error::InexactDivision(n))?,
            };
            out.push(q);
        }
        Ok(Series { order, coeffs: out })
    }

    pub fn recip(&self) -> Result<Series> {
        Series::one(self.order).div(self)
    }

    /// `exp` of a series with zero constant term, from `n E_n = Σ k a_k E_{n-k}`.
    pub fn exp(&self) -> Result<Series> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm("exp"));
        }
        let mut e: Vec<Poly> = vec![Poly::one()];
        for n in 1..=self.order {
            let mut acc = Poly::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    let w = Rational::from_integer(BigInt::from(k));
                    acc += &(&self.coeffs[k] * &e[n - k]).scale(&w);
                }
            }
            e.push(acc.scale(&Rational::from_integer(BigInt::from(n)).recip()));
        }
        Ok(Series {
            order: self.order,
            coeffs: e,
        })
    }

    /// `self(inner(z))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm("compose"));
        }
        let order = self.order.min(inner.order);
        let inner = inner.truncate(order);
        let mut acc = Series::constant(order, self.coeffs[order].clone());
        for k in (0..order).rev() {
            acc = &(&acc * &inner) + &Series::constant(order, self.coeffs[k].clone());
        }
        Ok(acc)
    }

    pub fn pow(&self, e: u32) -> Series {
        let mut acc = Series::one(self.order);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn sin(&self) -> Result<Series> {
        sin_series(self.order).compose(self)
    }

    pub fn cos(&self) -> Result<Series> {
        cos_series(self.order).compose(self)
    }

    /// `1 / cos`.
    pub fn sec(&self) -> Result<Series> {
        self.cos()?.recip()
    }

    /// `sin / cos`.
    pub fn tan(&self) -> Result<Series> {
        self.sin()?.div(&self.cos()?)
    }
}

fn fact(n: usize) -> Rational {
    Rational::from_integer(factorial(n as u64))
}

fn taylor(order: usize, f: impl Fn(usize) -> Option<i64>) -> Series {
    Series::from_fn(order, |n| match f(n) {
        Some(sign) => Poly::constant(Rational::from_integer(BigInt::from(sign)) / fact(n)),
        None => Poly::zero(),
    })
}

fn sin_series(order: usize) -> Series {
    taylor(order, |n| {
        (n % 2 == 1).then_some(if n % 4 == 1 { 1 } else { -1 })
    })
}

fn cos_series(order: usize) -> Series {
    taylor(order, |n| {
        (n % 2 == 0).then_some(if n % 4 == 0 { 1 } else { -1 })
    })
}

/// `exp(c z)` truncated at `order`.
pub fn exp_linear(order: usize, c: &Poly) -> Series {
    let mut pw = Poly::one();
    let mut coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        coeffs.push(pw.scale(&fact(n).recip()));
        pw = &pw * c;
    }
    Series { order, coeffs }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let order = self.order.min(rhs.order);
        Series::from_fn(order, |n| &self.coeffs[n] + &rhs.coeffs[n])
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        let order = self.order.min(rhs.order);
        Series::from_fn(order, |n| &self.coeffs[n] - &rhs.coeffs[n])
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.map(|p| -p)
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let order = self.order.min(rhs.order);
        let mut coeffs = vec![Poly::zero(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += &(a * b);
                }
            }
        }
        Series { order, coeffs }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{n}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(z^{})", self.order + 1)
    }
}

/// Named closed-form generating functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EgfName {
    /// `Σ A_{n+1}(x,y,s) z^n/n!`, ascents split into big ascents `x` and successions `s`.
    Trivariate,
    /// `Σ C_n(x,y,0) z^n/n!`: derangements by excedances `x` and anti-excedances `y`.
    Derangement,
    /// `Σ C_n(x,y,s) z^n/n!` by excedances, anti-excedances and fixed points.
    Fixpoint,
    /// `Σ A_n(x,y) z^n/n!` with `A_n(x,y) = Σ x^asc y^(des+1)`, `A_0 = 1`.
    Bivariate,
    /// Permutations without successions and with `π(1) > 1`, by ascents.
    NoSuccession,
    /// `Σ γ_n(x,y) z^n/n!` evaluated at a rational `y` with `2y - 1` a square.
    GammaXy,
}

impl EgfName {
    pub const ALL: [EgfName; 6] = [
        EgfName::Trivariate,
        EgfName::Derangement,
        EgfName::Fixpoint,
        EgfName::Bivariate,
        EgfName::NoSuccession,
        EgfName::GammaXy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EgfName::Trivariate => "trivariate",
            EgfName::Derangement => "derangement",
            EgfName::Fixpoint => "fixpoint",
            EgfName::Bivariate => "bivariate",
            EgfName::NoSuccession => "no-succession",
            EgfName::GammaXy => "gamma-xy",
        }
    }
}

impl FromStr for EgfName {
    type Err = Error;
    fn from_str(s: &str) -> Result<EgfName> {
        EgfName::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::InvalidParam(format!("unknown generating function {s:?}")))
    }
}

/// Square root of a non-negative rational when it is itself rational.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| Rational::new(rn, rd))
}

/// `(y e^{xz} - x e^{yz})`, the shared denominator.
fn eulerian_denominator(order: usize, x: &Poly, y: &Poly) -> Series {
    &exp_linear(order, x).scale(y) - &exp_linear(order, y).scale(x)
}

/// Builds the named generating function to order `order`. Variables bound in
/// `params` are evaluated afterwards; `gamma-xy` needs `y` bound.
pub fn egf_build(name: EgfName, order: usize, params: &HashMap<Var, Rational>) -> Result<Series> {
    let (x, y, s) = (Poly::var("x"), Poly::var("y"), Poly::var("s"));
    let series = match name {
        EgfName::Trivariate => {
            let q = Series::constant(order, &y - &x).div(&eulerian_denominator(order, &x, &y))?;
            &exp_linear(order, &(&y + &s)) * &q.pow(2)
        }
        EgfName::Fixpoint | EgfName::Derangement | EgfName::Bivariate => {
            let top = match name {
                EgfName::Fixpoint => exp_linear(order, &s),
                EgfName::Derangement => Series::one(order),
                _ => exp_linear(order, &y),
            };
            top.scale(&(&y - &x))
                .div(&eulerian_denominator(order, &x, &y))?
        }
        EgfName::NoSuccession => {
            let den = &exp_linear(order, &x) - &exp_linear(order, &Poly::one()).scale(&x);
            Series::constant(order, &Poly::one() - &x).div(&den)?
        }
        EgfName::GammaXy => return gamma_xy(order, params),
    };
    Ok(if params.is_empty() {
        series
    } else {
        series.eval(params)
    })
}

/// `e^{z(x-1)} (r sec(rz/2) / (r - tan(rz/2)))^2` with `r = √(2y-1)`.
fn gamma_xy(order: usize, params: &HashMap<Var, Rational>) -> Result<Series> {
    let y0 = params
        .get(&Var::new("y"))
        .ok_or_else(|| Error::InvalidParam("gamma-xy needs a rational value for y".into()))?;
    let two = Rational::from_integer(BigInt::from(2));
    let r = rational_sqrt(&(&two * y0 - Rational::one()))
        .ok_or_else(|| Error::InvalidParam(format!("2y-1 is not a rational square at y = {y0}")))?;
    if r.is_zero() {
        return Err(Error::InvalidParam("gamma-xy needs 2y-1 != 0".into()));
    }
    let arg = Series::z_times(order, Poly::constant(&r / &two));
    let rc = Poly::constant(r);
    let num = arg.sec()?.scale(&rc);
    let den = &Series::constant(order, rc) - &arg.tan()?;
    let f = num.div(&den)?;
    let x = params
        .get(&Var::new("x"))
        .map(|v| Poly::constant(v.clone()))
        .unwrap_or_else(|| Poly::var("x"));
    Ok(&exp_linear(order, &(&x - &Poly::one())) * &f.pow(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn none() -> HashMap<Var, Rational> {
        HashMap::new()
    }

    #[test]
    fn exp_of_sz() {
        let e = Series::z_times(2, Poly::var("s")).exp().unwrap();
        assert_eq!(e.coeffs(), &[p("1"), p("s"), p("s^2/2")]);
    }

    #[test]
    fn derangement_ratio_at_order_three() {
        let x = Poly::var("x");
        let den = &exp_linear(3, &x) - &exp_linear(3, &Poly::one()).scale(&x);
        let d = Series::constant(3, &Poly::one() - &x).div(&den).unwrap();
        assert_eq!(d.egf_coeff(3), p("x + x^2"));
        assert_eq!(d.egf_coeff(0), Poly::one());
        assert!(d.egf_coeff(1).is_zero());
    }

    #[test]
    fn trivariate_rows() {
        let a = egf_build(EgfName::Trivariate, 4, &none()).unwrap();
        assert_eq!(a.egf_coeff(0), Poly::one());
        assert_eq!(a.egf_coeff(1), p("s + y"));
        assert_eq!(a.egf_coeff(2), p("(s+y)^2 + 2*x*y"));
        assert_eq!(a.egf_coeff(3), p("(s+y)^3 + 6*x*y*(s+y) + 2*x*y*(x+y)"));
        assert_eq!(
            a.egf_coeff(4),
            p("(s+y)^4 + 12*x*y*(s+y)^2 + 8*x*y*(s+y)*(x+y) + 2*x*y*(x+y)^2 + 16*x^2*y^2")
        );
    }

    #[test]
    fn derangement_order_zero() {
        let d = egf_build(EgfName::Derangement, 0, &none()).unwrap();
        assert_eq!(d.coeffs(), &[Poly::one()]);
    }

    #[test]
    fn trig_identities() {
        let w = Series::z_times(9, Poly::int(1));
        let (s, c) = (w.sin().unwrap(), w.cos().unwrap());
        assert_eq!(&(&s * &s) + &(&c * &c), Series::one(9));
        // tangent numbers 1, 2, 16, 272
        let t = w.tan().unwrap();
        let tn: Vec<Poly> = (1..=9).step_by(2).map(|n| t.egf_coeff(n)).collect();
        assert_eq!(tn, [1, 2, 16, 272, 7936].map(Poly::int));
        let sec = w.sec().unwrap();
        let en: Vec<Poly> = (0..=8).step_by(2).map(|n| sec.egf_coeff(n)).collect();
        assert_eq!(en, [1, 1, 5, 61, 1385].map(Poly::int));
    }

    #[test]
    fn division_errors() {
        let a = Series::one(3);
        assert_eq!(
            a.div(&Series::z_times(3, Poly::one())),
            Err(Error::NonInvertibleConstantTerm)
        );
        let b = Series::constant(3, Poly::var("x"));
        assert_eq!(a.div(&b), Err(Error::InexactDivision(0)));
        assert_eq!(a.exp(), Err(Error::NonzeroConstantTerm("exp")));
        assert_eq!(a.sin(), Err(Error::NonzeroConstantTerm("compose")));
    }

    #[test]
    fn orders_take_minimum() {
        let a = Series::one(5);
        let b = Series::one(3);
        assert_eq!((&a * &b).order(), 3);
        assert_eq!((&a + &b).order(), 3);
        assert_eq!(a.div(&b).unwrap().order(), 3);
        assert_eq!(a.diff_z().order(), 4);
    }

    #[test]
    fn sqrt_detection() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
        assert_eq!(rational_sqrt(&rat(-1, 1)), None);
        let mut params = HashMap::from([(Var::new("y"), int(2))]);
        assert!(matches!(gamma_xy(3, &params), Err(Error::InvalidParam(_))));
        params.clear();
        assert!(matches!(gamma_xy(3, &params), Err(Error::InvalidParam(_))));
    }

    /// `γ_{n+1} = (x + ny)γ_n + y(1-x)∂_x γ_n + y(1-2y)∂_y γ_n`.
    fn gamma_rows(n_max: usize) -> Vec<Poly> {
        let (x, y) = (Var::new("x"), Var::new("y"));
        let (xp, yp) = (Poly::from_var(x.clone()), Poly::from_var(y.clone()));
        let mut rows = vec![Poly::one()];
        for n in 0..n_max {
            let g = &rows[n];
            let a = &(&xp + &yp.scale(&int(n as i64))) * g;
            let b = &(&yp * &(&Poly::one() - &xp)) * &g.diff(&x);
            let c = &(&yp * &(&Poly::one() - &yp.scale(&int(2)))) * &g.diff(&y);
            rows.push(&(&a + &b) + &c);
        }
        rows
    }

    #[test]
    fn gamma_closed_form_at_sample_points() {
        let rows = gamma_rows(7);
        for y0 in [int(1), rat(5, 2), rat(13, 8)] {
            let g = egf_build(
                EgfName::GammaXy,
                7,
                &HashMap::from([(Var::new("y"), y0.clone())]),
            )
            .unwrap();
            for (n, row) in rows.iter().enumerate() {
                let at = HashMap::from([(Var::new("y"), y0.clone())]);
                assert_eq!(g.egf_coeff(n), row.eval(&at), "n={n} y={y0}");
            }
        }
    }
}
