//! Canonicity, terminality, the Gorenstein property and the four classes of
//! canonical three-dimensional cyclic quotients.

use std::fmt;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::lattice::GroupAction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassLabel {
    /// `G` in `SL(3, C)`.
    I,
    /// `1/r(1, a, r - a)` with `gcd(r, a) = 1`: the terminal quotients.
    IIAlpha {
        r: i64,
        a: i64,
    },
    /// `1/(d r)(1, d r - 1, a d)` with `gcd(r, a) = 1`, `r > a`, `d > 1`.
    IIBeta {
        d: i64,
        r: i64,
        a: i64,
    },
    /// `1/4k(1, 2k + 1, 4k - 2)` with `k >= 2`.
    III {
        k: i64,
    },
    IV9,
    IV14,
    NotCanonical,
}

impl ClassLabel {
    pub fn is_canonical(&self) -> bool {
        *self != ClassLabel::NotCanonical
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::I => write!(f, "I"),
            ClassLabel::IIAlpha { r, a } => write!(f, "IIalpha(r={r},a={a})"),
            ClassLabel::IIBeta { d, r, a } => write!(f, "IIbeta(d={d},r={r},a={a})"),
            ClassLabel::III { k } => write!(f, "III(k={k})"),
            ClassLabel::IV9 => write!(f, "IV_9"),
            ClassLabel::IV14 => write!(f, "IV_14"),
            ClassLabel::NotCanonical => write!(f, "NotCanonical"),
        }
    }
}

impl Serialize for ClassLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Every weight triple obtained by a generator replacement `g -> g^t` and a
/// coordinate permutation.
fn forms(g: &GroupAction) -> impl Iterator<Item = [i64; 3]> + '_ {
    g.units().flat_map(move |t| {
        let p = g.power(t);
        PERMUTATIONS
            .iter()
            .map(move |perm| p.permuted(*perm).weights())
    })
}

/// Reid-Tai: every nonzero group element has age at least one.
pub fn reid_tai_canonical(g: &GroupAction) -> bool {
    let r = g.order();
    (1..r).all(|t| g.power(t).weights().iter().sum::<i64>() >= r)
}

/// Reid-Tai for terminality: every nonzero element has age strictly above one.
pub fn reid_tai_terminal(g: &GroupAction) -> bool {
    let r = g.order();
    (1..r).all(|t| g.power(t).weights().iter().sum::<i64>() > r)
}

pub fn is_gorenstein(g: &GroupAction) -> bool {
    g.weights().iter().sum::<i64>() % g.order() == 0
}

/// Whether some generator and ordering has the form `1/r(1, a, r - a)` with
/// `gcd(r, a) = 1`. The trivial group counts as terminal.
pub fn is_terminal(g: &GroupAction) -> bool {
    let r = g.order();
    r == 1 || forms(g).any(|b| b[0] == 1 && b[1] >= 1 && b[1] + b[2] == r && b[1].gcd(&r) == 1)
}

/// First match in the order I, IIalpha, IIbeta, III, IV.
pub fn match_class(g: &GroupAction) -> ClassLabel {
    let r = g.order();
    if is_gorenstein(g) {
        return ClassLabel::I;
    }
    if let Some(a) = forms(g)
        .filter(|b| b[0] == 1 && b[1] >= 1 && b[1] + b[2] == r && b[1].gcd(&r) == 1)
        .map(|b| b[1])
        .min()
    {
        return ClassLabel::IIAlpha { r, a };
    }
    if let Some((d, rr, a)) = forms(g)
        .filter(|b| b[0] == 1 && b[1] == r - 1 && b[2].gcd(&r) > 1)
        .map(|b| {
            let d = b[2].gcd(&r);
            (d, r / d, b[2] / d)
        })
        .min_by_key(|&(d, rr, a)| (a, d, rr))
    {
        return ClassLabel::IIBeta { d, r: rr, a };
    }
    if r % 4 == 0 && r >= 8 {
        let k = r / 4;
        if forms(g).any(|b| b == [1, 2 * k + 1, 4 * k - 2]) {
            return ClassLabel::III { k };
        }
    }
    if r == 9 && forms(g).any(|b| b == [1, 4, 7]) {
        return ClassLabel::IV9;
    }
    if r == 14 && forms(g).any(|b| b == [1, 9, 11]) {
        return ClassLabel::IV14;
    }
    ClassLabel::NotCanonical
}

/// The generators `g^t` having some weight equal to one, ordered by `t`.
pub fn semi_unimodular_generators(g: &GroupAction) -> Vec<GroupAction> {
    g.units()
        .map(|t| g.power(t))
        .filter(|p| p.weights().contains(&1))
        .collect()
}
