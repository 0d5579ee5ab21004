//! `eulab table`: rows `n <= N` as Poly-JSON or as CSV with quoted values.

use std::fmt::Write;

use clap::ValueEnum;
use eulab_core::exactalg::{vars, Monomial};
use eulab_core::expand::{gamma_tables, GammaKind, GammaTable};
use eulab_core::grammar::stirling_vars;
use eulab_core::permstats::{perm_poly, PermFamily, Triangle, TriangleName};
use eulab_core::stirlingperm::kth_order_poly;
use eulab_core::trees::{tree_weight_poly, Weighting};
use eulab_core::{Poly, Rational, Var};
use num_bigint::BigInt;
use serde_json::json;

use crate::Failure;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TableName {
    Eulerian,
    Trivariate,
    SecondOrder,
    KthOrder,
    GammaNij,
    GammaHistogram,
    Andre,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

impl TableName {
    fn name(self) -> &'static str {
        match self {
            TableName::Eulerian => "eulerian",
            TableName::Trivariate => "trivariate",
            TableName::SecondOrder => "second-order",
            TableName::KthOrder => "kth-order",
            TableName::GammaNij => "gamma-nij",
            TableName::GammaHistogram => "gamma-histogram",
            TableName::Andre => "andre",
        }
    }
}

pub fn cmd_table(
    name: TableName,
    n: usize,
    k: Option<usize>,
    format: Format,
) -> Result<String, Failure> {
    match (name, k) {
        (TableName::KthOrder, None) => return Err(Failure::usage("kth-order needs --k")),
        (TableName::KthOrder, Some(0)) => return Err(Failure::usage("k must be at least 1")),
        (TableName::KthOrder, Some(_)) | (_, None) => {}
        (_, Some(_)) => return Err(Failure::usage(format!("{} does not take --k", name.name()))),
    }
    match name {
        TableName::GammaNij => {
            let GammaTable::Nij(t) = gamma_tables(GammaKind::Nij, n)? else {
                unreachable!("asked for the nij table")
            };
            Ok(match format {
                Format::Json => {
                    let entries: Vec<_> = t
                        .iter()
                        .map(|(&(n, i, j), c)| json!({"n": n, "i": i, "j": j, "value": c.to_string()}))
                        .collect();
                    json_doc(name, entries)
                }
                Format::Csv => {
                    let mut out = String::from("n,i,j,value\n");
                    for ((n, i, j), c) in &t {
                        writeln!(out, "{n},{i},{j},\"{c}\"").expect("write to string");
                    }
                    out
                }
            })
        }
        TableName::GammaHistogram => {
            let GammaTable::Histogram(t) = gamma_tables(GammaKind::Histogram, n)? else {
                unreachable!("asked for the histogram table")
            };
            Ok(match format {
                Format::Json => {
                    let entries: Vec<_> = t
                        .iter()
                        .flat_map(|(n, row)| {
                            row.iter().map(
                                move |(h, c)| json!({"n": n, "hist": h, "value": c.to_string()}),
                            )
                        })
                        .collect();
                    json_doc(name, entries)
                }
                Format::Csv => {
                    let mut out = String::from("n");
                    for j in 1..=n {
                        write!(out, ",i_{j}").expect("write to string");
                    }
                    out.push_str(",value\n");
                    for (m, row) in &t {
                        for (h, c) in row {
                            write!(out, "{m}").expect("write to string");
                            for j in 0..n {
                                write!(out, ",{}", h.get(j).copied().unwrap_or(0))
                                    .expect("write to string");
                            }
                            writeln!(out, ",\"{c}\"").expect("write to string");
                        }
                    }
                    out
                }
            })
        }
        _ => {
            let (cols, rows) = poly_rows(name, n, k)?;
            Ok(match format {
                Format::Json => {
                    let entries: Vec<_> = rows
                        .iter()
                        .map(|(n, p)| json!({"n": n, "poly": p.to_json_value()}))
                        .collect();
                    json_doc(name, entries)
                }
                Format::Csv => poly_csv(&cols, &rows),
            })
        }
    }
}

fn json_doc(name: TableName, rows: Vec<serde_json::Value>) -> String {
    let mut s = json!({"table": name.name(), "rows": rows}).to_string();
    s.push('\n');
    s
}

fn triangle_rows(name: TriangleName, n_max: usize) -> Result<Rows, Failure> {
    let t = Triangle::build(name, n_max)?;
    let x = Var::new("x");
    (1..=n_max)
        .map(|n| {
            let row = t.row(n)?;
            let p = Poly::from_terms(row.iter().enumerate().map(|(k, c)| {
                (
                    Monomial::from_pairs([(x.clone(), k as u32)]),
                    Rational::from_integer(c.clone()),
                )
            }));
            Ok((n, p))
        })
        .collect()
}

type Rows = Vec<(usize, Poly)>;

/// Column variables and rows for the polynomial-valued tables.
fn poly_rows(name: TableName, n_max: usize, k: Option<usize>) -> Result<(Vec<Var>, Rows), Failure> {
    Ok(match name {
        TableName::Eulerian => (vars(&["x"]), triangle_rows(TriangleName::Eulerian, n_max)?),
        TableName::SecondOrder => (
            vars(&["x"]),
            triangle_rows(TriangleName::SecondOrderEulerian, n_max)?,
        ),
        TableName::Trivariate => (
            vars(&["x", "y", "s"]),
            (1..=n_max)
                .map(|n| Ok((n, perm_poly(n, PermFamily::Trivariate)?)))
                .collect::<Result<_, Failure>>()?,
        ),
        TableName::KthOrder => {
            let k = k.expect("checked by caller");
            (
                stirling_vars(k),
                (1..=n_max)
                    .map(|n| Ok((n, kth_order_poly(n, k)?)))
                    .collect::<Result<_, Failure>>()?,
            )
        }
        TableName::Andre => (
            vars(&["u", "v"]),
            (0..=n_max)
                .map(|n| Ok((n, tree_weight_poly(n, Weighting::Andre)?)))
                .collect::<Result<_, Failure>>()?,
        ),
        TableName::GammaNij | TableName::GammaHistogram => unreachable!("integer tables"),
    })
}

/// One line per nonzero coefficient: `n`, the exponents, then the quoted value.
/// A single-variable table names its exponent column `k`.
fn poly_csv(cols: &[Var], rows: &[(usize, Poly)]) -> String {
    let mut out = String::from("n");
    if cols.len() == 1 {
        out.push_str(",k");
    } else {
        for v in cols {
            write!(out, ",{}", v.name()).expect("write to string");
        }
    }
    out.push_str(",value\n");
    for (n, p) in rows {
        let mut lines: Vec<(Vec<u32>, BigInt)> = p
            .terms()
            .map(|(m, c)| (cols.iter().map(|v| m.exponent(v)).collect(), c.to_integer()))
            .collect();
        lines.sort();
        for (exps, c) in lines {
            write!(out, "{n}").expect("write to string");
            for e in exps {
                write!(out, ",{e}").expect("write to string");
            }
            writeln!(out, ",\"{c}\"").expect("write to string");
        }
    }
    out
}
