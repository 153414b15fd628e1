//! Proper fractions, remainder maps and the remainder polynomial.
//!
//! A proper fraction `(a_1, ..., a_n)/r` is a symbol, not a rational vector:
//! `(2, 2)/4` and `(1, 1)/2` are different fractions. Remainder maps act on
//! fractions whose first entry is `1`; the polynomial expands the full tree
//! of iterated remainders, which is finite because denominators strictly
//! decrease along every edge.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ProperFraction {
    a: Vec<i64>,
    r: i64,
}

impl ProperFraction {
    pub fn new(a: Vec<i64>, r: i64) -> Result<ProperFraction> {
        if r < 1 {
            return Err(Error::ZeroOrder(r));
        }
        if a.is_empty() {
            return Err(Error::EmptyFraction);
        }
        if let Some(&entry) = a.iter().find(|&&x| x < 0 || x >= r) {
            return Err(Error::FractionEntry { entry, den: r });
        }
        Ok(ProperFraction { a, r })
    }

    pub fn numerators(&self) -> &[i64] {
        &self.a
    }

    pub fn denominator(&self) -> i64 {
        self.r
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn is_semi_unimodular(&self) -> bool {
        self.a.contains(&1)
    }

    /// `(0, ..., 0)/1`, the type of a smooth cone.
    pub fn is_trivial(&self) -> bool {
        self.r == 1
    }

    /// Moves the first unimodular entry to slot 1, keeping the other slots in
    /// order. Returns the fraction and `perm` with `new[i] = old[perm[i]]`.
    pub fn normalize_unimodular(&self) -> Result<(ProperFraction, Vec<usize>)> {
        let j = self
            .a
            .iter()
            .position(|&x| x == 1)
            .ok_or(Error::NotSemiUnimodular)?;
        let perm: Vec<usize> = std::iter::once(j)
            .chain((0..self.dim()).filter(|&i| i != j))
            .collect();
        let a = perm.iter().map(|&i| self.a[i]).collect();
        Ok((ProperFraction { a, r: self.r }, perm))
    }
}

impl fmt::Display for ProperFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nums: Vec<String> = self.a.iter().map(i64::to_string).collect();
        write!(f, "1/{}({})", self.r, nums.join(","))
    }
}

/// A proper fraction or the formal element `INF`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtFraction {
    Finite(ProperFraction),
    Infinity,
}

impl fmt::Display for ExtFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtFraction::Finite(p) => p.fmt(f),
            ExtFraction::Infinity => write!(f, "INF"),
        }
    }
}

/// The `i`-th remainder map, `i` counted from 1 as in `x_2, ..., x_n`.
///
/// For `(1, a_2, ..., a_n)/r` with `a_i != 0` the result has denominator
/// `a_i`, entry `(-r) mod a_i` in slot `i` and `a_j mod a_i` elsewhere.
pub fn remainder_map(i: usize, f: &ExtFraction) -> Result<ExtFraction> {
    let ExtFraction::Finite(f) = f else {
        return Ok(ExtFraction::Infinity);
    };
    let n = f.dim();
    if i < 2 || i > n {
        return Err(Error::RemainderIndex { index: i, dim: n });
    }
    if f.a[0] != 1 {
        return Err(Error::FirstSlotNotUnimodular);
    }
    let m = f.a[i - 1];
    if m == 0 {
        return Ok(ExtFraction::Infinity);
    }
    let a =
        f.a.iter()
            .enumerate()
            .map(|(j, &x)| {
                if j == i - 1 {
                    (-f.r).rem_euclid(m)
                } else {
                    x.rem_euclid(m)
                }
            })
            .collect();
    Ok(ExtFraction::Finite(ProperFraction { a, r: m }))
}

/// One term of the remainder polynomial and its subterms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RemainderNode {
    pub fraction: ProperFraction,
    /// Keyed by the remainder-map index `i` (from 2).
    pub children: BTreeMap<usize, RemainderNode>,
}

impl RemainderNode {
    fn build(fraction: ProperFraction) -> RemainderNode {
        let mut children = BTreeMap::new();
        let node = ExtFraction::Finite(fraction.clone());
        for i in 2..=fraction.dim() {
            match remainder_map(i, &node).expect("index in range, first slot is 1") {
                ExtFraction::Finite(child) if !child.is_trivial() => {
                    debug_assert!(child.r < fraction.r);
                    children.insert(i, RemainderNode::build(child));
                }
                _ => {}
            }
        }
        RemainderNode { fraction, children }
    }

    fn collect<'a>(
        &'a self,
        path: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, &'a ProperFraction)>,
    ) {
        out.push((path.clone(), &self.fraction));
        for (i, child) in &self.children {
            path.push(*i);
            child.collect(path, out);
            path.pop();
        }
    }
}

/// The remainder polynomial as a tree; `root` is `None` for the trivial
/// fraction `(0, ..., 0)/1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RemainderTree {
    pub root: Option<RemainderNode>,
    /// Slot permutation applied to bring a unimodular entry to slot 1:
    /// normalized slot `i` is input slot `permutation[i]`.
    pub permutation: Vec<usize>,
}

impl RemainderTree {
    /// All terms as `(monomial path, coefficient)`, ordered by degree and
    /// then lexicographically by path.
    pub fn terms(&self) -> Vec<(Vec<usize>, &ProperFraction)> {
        let mut out = Vec::new();
        if let Some(root) = &self.root {
            root.collect(&mut Vec::new(), &mut out);
        }
        out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        out
    }

    pub fn len(&self) -> usize {
        self.terms().len()
    }

    pub fn is_empty(&self) -> bool {
        self.root.is_none()
    }

    /// Renders e.g. `1/11(1,2,8) + 1/2(1,1,0)x_2 + 1/2(1,0,1)x_3x_2`.
    pub fn render(&self) -> String {
        let terms = self.terms();
        if terms.is_empty() {
            return "0".to_string();
        }
        terms
            .iter()
            .map(|(path, f)| {
                let mono: String = path.iter().map(|i| format!("x_{i}")).collect();
                format!("{f}{mono}")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

pub fn remainder_polynomial(f: &ProperFraction) -> Result<RemainderTree> {
    if f.is_trivial() {
        return Ok(RemainderTree {
            root: None,
            permutation: (0..f.dim()).collect(),
        });
    }
    let (normal, permutation) = f.normalize_unimodular()?;
    Ok(RemainderTree {
        root: Some(RemainderNode::build(normal)),
        permutation,
    })
}
