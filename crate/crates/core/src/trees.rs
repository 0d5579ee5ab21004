//! Increasing trees: labels increase along every path away from the root.
//!
//! Families are grown by attaching the next label as a new leaf. Non-plane
//! trees get one insertion per eligible vertex; plane trees get one per gap,
//! so a vertex with `d` children offers `d + 1` positions.

use std::collections::HashMap;
use std::fmt;
use std::ops::ControlFlow;

use num_bigint::BigInt;

use crate::error::size_limit;
use crate::exactalg::{Monomial, Poly, Rational, Var};
use crate::{Error, Result};

/// Trees per family beyond which generation refuses to run.
pub const MAX_TREES: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    Plane,
    NonPlane,
}

/// Which trees to grow, and on which label set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    /// Non-plane increasing trees on `{0, …, n}` with at most `max_degree` children per vertex.
    NonPlane { max_degree: Option<usize> },
    /// Increasing plane trees on `[n]` with at most `max_degree` children per vertex.
    Plane { max_degree: Option<usize> },
    /// Non-plane trees on `{0, …, n}`: root children have degree at most 1,
    /// all other non-root vertices at most 2, the root is unrestricted.
    Forest012,
}

impl FamilySpec {
    pub fn flavor(self) -> Flavor {
        match self {
            FamilySpec::Plane { .. } => Flavor::Plane,
            _ => Flavor::NonPlane,
        }
    }

    /// Smallest label; the root carries it.
    pub fn first_label(self) -> usize {
        match self {
            FamilySpec::Plane { .. } => 1,
            _ => 0,
        }
    }

    pub fn vertex_count(self, n: usize) -> usize {
        match self {
            FamilySpec::Plane { .. } => n,
            _ => n + 1,
        }
    }

    fn can_grow(self, v: usize, degree: usize, parent: Option<usize>) -> bool {
        match self {
            FamilySpec::NonPlane { max_degree } | FamilySpec::Plane { max_degree } => {
                max_degree.is_none_or(|d| degree < d)
            }
            FamilySpec::Forest012 => match (v, parent) {
                (0, _) => true,
                (_, Some(0)) => degree < 1,
                _ => degree < 2,
            },
        }
    }
}

/// An increasing tree stored as ordered child lists indexed by
/// `label - first_label`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IncTree {
    flavor: Flavor,
    first_label: usize,
    children: Vec<Vec<u8>>,
}

impl IncTree {
    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn vertex_count(&self) -> usize {
        self.children.len()
    }

    pub fn label(&self, idx: usize) -> usize {
        self.first_label + idx
    }

    /// Children of vertex `idx` (indices, in left-to-right order).
    pub fn children(&self, idx: usize) -> &[u8] {
        &self.children[idx]
    }

    pub fn deg_hist(&self) -> DegHist {
        DegHist::of(&self.children, self.first_label == 0)
    }

    /// Preorder serialization such as `0(1(3),2)`.
    pub fn canonical(&self) -> String {
        let mut s = String::new();
        self.write_canonical(0, &mut s);
        s
    }

    fn write_canonical(&self, v: usize, out: &mut String) {
        out.push_str(&self.label(v).to_string());
        let kids = &self.children[v];
        if !kids.is_empty() {
            out.push('(');
            for (i, &c) in kids.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                self.write_canonical(c as usize, out);
            }
            out.push(')');
        }
    }

    /// True when labels increase away from the root and every vertex is reached once.
    pub fn is_increasing(&self) -> bool {
        let mut seen = vec![false; self.children.len()];
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            if std::mem::replace(&mut seen[v], true) {
                return false;
            }
            for &c in &self.children[v] {
                if (c as usize) <= v {
                    return false;
                }
                stack.push(c as usize);
            }
        }
        seen.into_iter().all(|s| s)
    }
}

impl fmt::Display for IncTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

/// Degree histogram: `counts[d]` vertices have `d` children, i.e. `i_{d+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct DegHist {
    pub counts: Vec<usize>,
    /// Leaves hanging directly off the root (trees rooted at label 0 only).
    pub root_leaf_count: usize,
    /// Leaves elsewhere (trees rooted at label 0 only).
    pub other_leaf_count: usize,
}

impl DegHist {
    fn of(children: &[Vec<u8>], rooted_at_zero: bool) -> DegHist {
        let mut counts = vec![0usize; children.len()];
        for kids in children {
            counts[kids.len()] += 1;
        }
        let (mut root_leaf_count, mut other_leaf_count) = (0, 0);
        if rooted_at_zero {
            root_leaf_count = children[0]
                .iter()
                .filter(|&&c| children[c as usize].is_empty())
                .count();
            let leaves = children[1..].iter().filter(|k| k.is_empty()).count();
            other_leaf_count = leaves - root_leaf_count;
        }
        DegHist {
            counts,
            root_leaf_count,
            other_leaf_count,
        }
    }

    pub fn degree(&self, d: usize) -> usize {
        self.counts.get(d).copied().unwrap_or(0)
    }

    pub fn vertices(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn edges(&self) -> usize {
        self.counts.iter().enumerate().map(|(d, c)| d * c).sum()
    }
}

struct Grower<'a, F> {
    spec: FamilySpec,
    target: usize,
    children: Vec<Vec<u8>>,
    parent: Vec<Option<usize>>,
    visit: &'a mut F,
    stopped: bool,
}

impl<F: FnMut(&[Vec<u8>]) -> ControlFlow<()>> Grower<'_, F> {
    fn grow(&mut self) {
        let m = self.children.len();
        if m == self.target {
            self.stopped = (self.visit)(&self.children).is_break();
            return;
        }
        self.children.push(Vec::new());
        self.parent.push(None);
        for v in 0..m {
            let deg = self.children[v].len();
            if !self.spec.can_grow(v, deg, self.parent[v]) {
                continue;
            }
            self.parent[m] = Some(v);
            let positions = match self.spec.flavor() {
                Flavor::Plane => deg + 1,
                Flavor::NonPlane => 1,
            };
            for pos in 0..positions {
                let at = if positions == 1 { deg } else { pos };
                self.children[v].insert(at, m as u8);
                self.grow();
                self.children[v].remove(at);
                if self.stopped {
                    break;
                }
            }
            if self.stopped {
                break;
            }
        }
        self.children.pop();
        self.parent.pop();
    }
}

fn raw_for_each(n: usize, spec: FamilySpec, mut f: impl FnMut(&[Vec<u8>]) -> ControlFlow<()>) {
    let target = spec.vertex_count(n);
    if target == 0 {
        return;
    }
    let mut g = Grower {
        spec,
        target,
        children: vec![Vec::new()],
        parent: vec![None],
        visit: &mut f,
        stopped: false,
    };
    g.grow();
}

/// Number of trees in the family, counted by generation. Stops early and
/// returns `None` once the count passes `cap`.
fn count_capped(n: usize, spec: FamilySpec, cap: u64) -> Option<u64> {
    let bound: Option<u64> = (1..spec.vertex_count(n) as u64).try_fold(1u64, |acc, m| {
        let choices = match spec.flavor() {
            Flavor::Plane => 2 * m - 1,
            Flavor::NonPlane => m,
        };
        acc.checked_mul(choices)
    });
    if bound.is_some_and(|b| b <= cap) {
        return bound;
    }
    let mut count = 0u64;
    raw_for_each(n, spec, |_| {
        count += 1;
        if count > cap {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    (count <= cap).then_some(count)
}

fn check_guard(n: usize, spec: FamilySpec) -> Result<()> {
    if spec.vertex_count(n) > u8::MAX as usize {
        return Err(Error::OutOfRange(format!("{n} vertices")));
    }
    if count_capped(n, spec, MAX_TREES).is_none() {
        return Err(size_limit(
            format!("tree family {spec:?} at n={n}"),
            format!("{MAX_TREES} trees"),
        ));
    }
    Ok(())
}

/// Visits each tree of the family exactly once.
pub fn for_each_tree(n: usize, spec: FamilySpec, mut f: impl FnMut(&IncTree)) -> Result<()> {
    check_guard(n, spec)?;
    let first_label = spec.first_label();
    let flavor = spec.flavor();
    raw_for_each(n, spec, |children| {
        let t = IncTree {
            flavor,
            first_label,
            children: children.to_vec(),
        };
        f(&t);
        ControlFlow::Continue(())
    });
    Ok(())
}

pub fn trees_gen(n: usize, spec: FamilySpec) -> Result<Vec<IncTree>> {
    let mut out = Vec::new();
    for_each_tree(n, spec, |t| out.push(t.clone()))?;
    Ok(out)
}

/// Histogram of degree histograms over the family.
pub fn deg_hist_counts(n: usize, spec: FamilySpec) -> Result<HashMap<DegHist, u64>> {
    check_guard(n, spec)?;
    let rooted_at_zero = spec.first_label() == 0;
    let mut counts: HashMap<DegHist, u64> = HashMap::new();
    raw_for_each(n, spec, |children| {
        *counts
            .entry(DegHist::of(children, rooted_at_zero))
            .or_insert(0) += 1;
        ControlFlow::Continue(())
    });
    Ok(counts)
}

/// Tree weightings; each one fixes its family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Weighting {
    /// `Σ u^leaves v^(degree-1 vertices)` over 0-1-2 non-plane trees on `{0, …, n}`.
    Andre,
    /// `Σ t^i u^j` over 0-1-2 rooted forests on `{0, …, n}`: `i` leaves are
    /// children of the root, `j` leaves are not.
    ForestGamma,
    /// `Σ x^leaves` over 0-1-2 plane trees on `[n]`.
    PlaneLeaf,
    /// `Σ m_1^leaves m_2^(deg 1) m_3^(deg 2)` over 0-1-2-3 plane trees on `[n]`.
    Ternary,
    /// `Σ Π_j m_j^{i_j}` with `i_j` vertices of degree `j-1`, over plane trees
    /// on `[n]` with at most `max_degree` children per vertex.
    DegHist { max_degree: Option<usize> },
}

impl Weighting {
    pub fn family(self) -> FamilySpec {
        match self {
            Weighting::Andre => FamilySpec::NonPlane {
                max_degree: Some(2),
            },
            Weighting::ForestGamma => FamilySpec::Forest012,
            Weighting::PlaneLeaf => FamilySpec::Plane {
                max_degree: Some(2),
            },
            Weighting::Ternary => FamilySpec::Plane {
                max_degree: Some(3),
            },
            Weighting::DegHist { max_degree } => FamilySpec::Plane { max_degree },
        }
    }

    fn monomial(self, h: &DegHist) -> Monomial {
        let e = |d: usize| h.degree(d) as u32;
        let v = Var::new;
        match self {
            Weighting::Andre => Monomial::from_pairs([(v("u"), e(0)), (v("v"), e(1))]),
            Weighting::ForestGamma => Monomial::from_pairs([
                (v("t"), h.root_leaf_count as u32),
                (v("u"), h.other_leaf_count as u32),
            ]),
            Weighting::PlaneLeaf => Monomial::from_pairs([(v("x"), e(0))]),
            Weighting::Ternary => Monomial::from_pairs((0..3).map(|d| (marker(d + 1), e(d)))),
            Weighting::DegHist { .. } => Monomial::from_pairs(
                h.counts
                    .iter()
                    .enumerate()
                    .map(|(d, &c)| (marker(d + 1), c as u32)),
            ),
        }
    }
}

/// Marker variable `m_j` for vertices of degree `j - 1`.
pub fn marker(j: usize) -> Var {
    Var::indexed("m", j)
}

pub fn tree_weight_poly(n: usize, weighting: Weighting) -> Result<Poly> {
    let counts = deg_hist_counts(n, weighting.family())?;
    Ok(Poly::from_terms(counts.into_iter().map(|(h, c)| {
        (
            weighting.monomial(&h),
            Rational::from_integer(BigInt::from(c)),
        )
    })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    const NONPLANE2: FamilySpec = FamilySpec::NonPlane {
        max_degree: Some(2),
    };

    #[test]
    fn two_andre_trees_on_three_vertices() {
        let trees = trees_gen(2, NONPLANE2).unwrap();
        let shapes: HashSet<String> = trees.iter().map(IncTree::canonical).collect();
        assert_eq!(shapes, HashSet::from(["0(1(2))".into(), "0(1,2)".into()]));
    }

    #[test]
    fn single_vertex_families() {
        for spec in [
            NONPLANE2,
            FamilySpec::Forest012,
            FamilySpec::Plane { max_degree: None },
            FamilySpec::Plane {
                max_degree: Some(2),
            },
        ] {
            let n = if spec.first_label() == 0 { 0 } else { 1 };
            assert_eq!(trees_gen(n, spec).unwrap().len(), 1);
        }
        assert_eq!(trees_gen(1, NONPLANE2).unwrap().len(), 1);
    }

    #[test]
    fn forest_histogram_n3() {
        let counts = deg_hist_counts(3, FamilySpec::Forest012).unwrap();
        let mut by_leaves: HashMap<(usize, usize), u64> = HashMap::new();
        for (h, c) in counts {
            *by_leaves
                .entry((h.root_leaf_count, h.other_leaf_count))
                .or_insert(0) += c;
        }
        assert_eq!(
            by_leaves,
            HashMap::from([((3, 0), 1), ((1, 1), 3), ((0, 1), 1)])
        );
    }

    #[test]
    fn andre_small() {
        assert_eq!(
            tree_weight_poly(0, Weighting::Andre).unwrap(),
            Poly::var("u")
        );
        let e2: Poly = "u*v^2 + u^2".parse().unwrap();
        assert_eq!(tree_weight_poly(2, Weighting::Andre).unwrap(), e2);
    }

    #[test]
    fn deghist_n3_and_n5() {
        let d3 = tree_weight_poly(3, Weighting::DegHist { max_degree: None }).unwrap();
        assert_eq!(d3, "m_1*m_2^2 + 2*m_1^2*m_3".parse::<Poly>().unwrap());
        let d5 = tree_weight_poly(5, Weighting::DegHist { max_degree: None }).unwrap();
        let m = |v: &[u32]| {
            Monomial::from_pairs(v.iter().enumerate().map(|(j, &e)| (marker(j + 1), e)))
        };
        let cases: [(&[u32], i64); 5] = [
            (&[1, 4, 0, 0, 0], 1),
            (&[2, 2, 1, 0, 0], 22),
            (&[3, 0, 2, 0, 0], 16),
            (&[3, 1, 0, 1, 0], 42),
            (&[4, 0, 0, 0, 1], 24),
        ];
        for (h, c) in cases {
            assert_eq!(d5.coeff(&m(h)), crate::exactalg::int(c), "{h:?}");
        }
    }

    #[test]
    fn families_are_duplicate_free_and_increasing() {
        let specs = [
            NONPLANE2,
            FamilySpec::Forest012,
            FamilySpec::Plane { max_degree: None },
            FamilySpec::Plane {
                max_degree: Some(2),
            },
            FamilySpec::Plane {
                max_degree: Some(3),
            },
        ];
        for spec in specs {
            for n in 1..=6 {
                let trees = trees_gen(n, spec).unwrap();
                let distinct: HashSet<String> = trees.iter().map(IncTree::canonical).collect();
                assert_eq!(distinct.len(), trees.len(), "{spec:?} n={n}");
                for t in &trees {
                    assert!(t.is_increasing());
                    let h = t.deg_hist();
                    assert_eq!(h.vertices(), t.vertex_count());
                    assert_eq!(h.edges() + 1, t.vertex_count());
                }
            }
        }
    }

    #[test]
    fn plane_counts_are_double_factorials() {
        // (2n-3)!! increasing plane trees on [n]
        let expect = [1u64, 1, 3, 15, 105, 945];
        for (i, &e) in expect.iter().enumerate() {
            let n = i + 1;
            assert_eq!(
                trees_gen(n, FamilySpec::Plane { max_degree: None })
                    .unwrap()
                    .len() as u64,
                e
            );
        }
    }

    #[test]
    fn guard() {
        let r = trees_gen(12, FamilySpec::Plane { max_degree: None });
        assert!(matches!(r, Err(Error::SizeLimit { .. })));
    }
}
