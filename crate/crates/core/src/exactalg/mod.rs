//! Exact sparse multivariate polynomials over the rationals.

mod json;
mod monomial;
mod parse;
mod poly;
mod var;

pub use monomial::Monomial;
pub use poly::Poly;
pub use var::Var;

use num_bigint::BigInt;

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for a list of variables by name.
pub fn vars(names: &[&str]) -> Vec<Var> {
    names.iter().map(|n| Var::new(n)).collect()
}

/// `x_1, ..., x_m` (or any other stem).
pub fn indexed_vars(stem: &str, m: usize) -> Vec<Var> {
    (1..=m).map(|i| Var::indexed(stem, i)).collect()
}

/// The elementary symmetric polynomial `e_d` in `xs`.
pub fn elementary_symmetric(xs: &[Var], d: usize) -> Poly {
    // Row-by-row expansion of prod (1 + x_i t), keeping coefficients of t^0..t^d.
    let mut row = vec![Poly::one()];
    row.resize(d + 1, Poly::zero());
    for x in xs {
        let xp = Poly::from_var(x.clone());
        for j in (1..=d).rev() {
            let add = &row[j - 1] * &xp;
            row[j] += &add;
        }
    }
    row.swap_remove(d)
}
