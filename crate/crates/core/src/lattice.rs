//! Exact arithmetic in the overlattice `N = Z^3 + Z (1/r)(a1, a2, a3)`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intmat::{self, Mat3, Vec3};

pub type Rational = Ratio<i64>;

/// The cyclic group `1/r(a1, a2, a3)` acting diagonally on `C^3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupAction {
    r: i64,
    weights: [i64; 3],
}

impl GroupAction {
    /// Checks `r >= 1` and `0 <= ai < r`. Faithfulness is checked by
    /// [`Lattice::new`], since subgroup powers may be non-faithful symbols.
    pub fn new(r: i64, weights: [i64; 3]) -> Result<Self> {
        if r < 1 {
            return Err(Error::ZeroOrder(r));
        }
        if let Some(&weight) = weights.iter().find(|&&w| w < 0 || w >= r) {
            return Err(Error::WeightOutOfRange { weight, order: r });
        }
        Ok(GroupAction { r, weights })
    }

    /// Builds the group with weights reduced mod `r`.
    pub fn reduced(r: i64, weights: [i64; 3]) -> Result<Self> {
        if r < 1 {
            return Err(Error::ZeroOrder(r));
        }
        Ok(GroupAction {
            r,
            weights: weights.map(|w| w.rem_euclid(r)),
        })
    }

    pub fn trivial() -> Self {
        GroupAction {
            r: 1,
            weights: [0; 3],
        }
    }

    pub fn order(&self) -> i64 {
        self.r
    }

    pub fn weights(&self) -> [i64; 3] {
        self.weights
    }

    pub fn is_faithful(&self) -> bool {
        self.weights.iter().fold(self.r, |g, w| g.gcd(w)) == 1
    }

    /// Weights of `g^t`, keeping the symbol's order `r`.
    pub fn power(&self, t: i64) -> GroupAction {
        GroupAction {
            r: self.r,
            weights: self.weights.map(|w| (w * t).rem_euclid(self.r)),
        }
    }

    /// The subgroup generated by `g^s` for `s | r`, as a group of order `r / s`.
    pub fn subgroup(&self, s: i64) -> Result<GroupAction> {
        if s < 1 || self.r % s != 0 {
            return Err(Error::ZeroOrder(s));
        }
        let p = self.power(s);
        GroupAction::new(self.r / s, p.weights.map(|w| w / s))
    }

    /// Permutes coordinates: slot `i` of the result is slot `perm[i]` of `self`.
    pub fn permuted(&self, perm: [usize; 3]) -> GroupAction {
        GroupAction {
            r: self.r,
            weights: perm.map(|i| self.weights[i]),
        }
    }

    /// Exponents `t` in `1..r` coprime to `r` (all generators of the group).
    pub fn units(&self) -> impl Iterator<Item = i64> {
        let r = self.r;
        (1..=r.max(1)).filter(move |t| t.gcd(&r) == 1 && (*t < r || r == 1))
    }
}

impl fmt::Display for GroupAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.weights;
        write!(f, "1/{}({},{},{})", self.r, a, b, c)
    }
}

/// A point of `Q^3` in lowest terms over a common positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    num: [i64; 3],
    den: i64,
}

impl LatticePoint {
    /// Panics if `den == 0`.
    pub fn new(num: [i64; 3], den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let sign = den.signum();
        let g = intmat::gcd_vec(&num).gcd(&den);
        LatticePoint {
            num: num.map(|x| sign * x / g),
            den: den.abs() / g,
        }
    }

    pub fn integral(v: [i64; 3]) -> Self {
        LatticePoint { num: v, den: 1 }
    }

    pub fn unit(i: usize) -> Self {
        let mut v = [0; 3];
        v[i] = 1;
        LatticePoint::integral(v)
    }

    pub fn zero() -> Self {
        LatticePoint::integral([0; 3])
    }

    pub fn num(&self) -> [i64; 3] {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == [0; 3]
    }

    pub fn coord(&self, i: usize) -> Rational {
        Rational::new(self.num[i], self.den)
    }

    pub fn age(&self) -> Rational {
        Rational::new(self.num.iter().sum(), self.den)
    }

    pub fn scale(&self, k: i64) -> LatticePoint {
        LatticePoint::new(self.num.map(|x| x * k), self.den)
    }

    /// Componentwise `self >= 0`.
    pub fn in_octant(&self) -> bool {
        self.num.iter().all(|&x| x >= 0)
    }

    /// `[num1, num2, num3, den]`, the interchange encoding.
    pub fn to_array(&self) -> [i64; 4] {
        [self.num[0], self.num[1], self.num[2], self.den]
    }

    pub fn from_array(a: [i64; 4]) -> Result<Self> {
        if a[3] <= 0 {
            return Err(Error::Malformed(format!("denominator {} in {:?}", a[3], a)));
        }
        Ok(LatticePoint::new([a[0], a[1], a[2]], a[3]))
    }
}

/// Serialized as `[num1, num2, num3, den]`.
impl Serialize for LatticePoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_array().serialize(s)
    }
}

/// Age of a point: the sum of its coordinates.
pub fn age(p: &LatticePoint) -> Rational {
    p.age()
}

impl Add for LatticePoint {
    type Output = LatticePoint;
    fn add(self, o: LatticePoint) -> LatticePoint {
        let l = self.den.lcm(&o.den);
        let (s, t) = (l / self.den, l / o.den);
        LatticePoint::new([0, 1, 2].map(|i| self.num[i] * s + o.num[i] * t), l)
    }
}

impl Neg for LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> LatticePoint {
        LatticePoint {
            num: self.num.map(|x| -x),
            den: self.den,
        }
    }
}

impl Sub for LatticePoint {
    type Output = LatticePoint;
    fn sub(self, o: LatticePoint) -> LatticePoint {
        self + (-o)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.num;
        if self.den == 1 {
            write!(f, "({a},{b},{c})")
        } else {
            write!(f, "1/{}({a},{b},{c})", self.den)
        }
    }
}

/// The lattice `N = Z^3 + Z v1` of a faithful cyclic action.
///
/// Internally points are handled in "scaled" coordinates `r * p`, which are
/// integral for every point of `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    group: GroupAction,
    /// Hermite basis of `r * N`, rows.
    basis: Mat3,
    adj: Mat3,
    det: i64,
}

impl Lattice {
    pub fn new(group: &GroupAction) -> Result<Self> {
        if !group.is_faithful() {
            return Err(Error::NotFaithful(*group));
        }
        let r = group.order();
        let rows = [[r, 0, 0], [0, r, 0], [0, 0, r], group.weights()];
        let basis = intmat::hermite_basis(&rows).expect("overlattice has full rank");
        let det = intmat::det3(&basis);
        Ok(Lattice {
            group: *group,
            basis,
            adj: intmat::adjugate(&basis),
            det,
        })
    }

    pub fn group(&self) -> &GroupAction {
        &self.group
    }

    /// Index of `Z^3` in `N`.
    pub fn index(&self) -> i64 {
        self.group.order()
    }

    pub fn generator(&self) -> LatticePoint {
        LatticePoint::new(self.group.weights(), self.group.order())
    }

    /// `r * p`, when that is an integer vector.
    pub fn scaled(&self, p: &LatticePoint) -> Option<Vec3> {
        let r = self.index();
        (r % p.den == 0).then(|| p.num.map(|x| x * (r / p.den)))
    }

    pub fn from_scaled(&self, s: Vec3) -> LatticePoint {
        LatticePoint::new(s, self.index())
    }

    /// Coordinates of a scaled vector in the Hermite basis, if integral.
    pub fn basis_coords_scaled(&self, s: &Vec3) -> Option<Vec3> {
        let c = intmat::vec_mat(s, &self.adj);
        c.iter()
            .all(|x| x % self.det == 0)
            .then(|| c.map(|x| x / self.det))
    }

    pub fn contains_scaled(&self, s: &Vec3) -> bool {
        self.basis_coords_scaled(s).is_some()
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.scaled(p).is_some_and(|s| self.contains_scaled(&s))
    }

    /// The primitive lattice point on the ray through a nonzero scaled vector.
    pub fn primitive_scaled(&self, s: &Vec3) -> Vec3 {
        let w = intmat::primitive_dir(s);
        assert!(w != [0; 3], "zero vector has no ray");
        (1..=self.index())
            .map(|k| w.map(|x| x * k))
            .find(|v| self.contains_scaled(v))
            .expect("r * w always lies in N")
    }

    /// The primitive lattice point on the ray through `p`.
    pub fn primitive(&self, p: &LatticePoint) -> LatticePoint {
        let r = self.index();
        let dir = p.num.map(|x| x * r);
        self.from_scaled(self.primitive_scaled(&dir))
    }

    pub fn is_primitive(&self, p: &LatticePoint) -> bool {
        self.contains(p) && !p.is_zero() && self.primitive(p) == *p
    }

    /// Multiplicity (index of the spanned sublattice) of a simplicial cone.
    pub fn multiplicity(&self, gens: [&LatticePoint; 3]) -> Result<i64> {
        let mut m = [[0; 3]; 3];
        for (row, g) in m.iter_mut().zip(gens) {
            let s = self.scaled(g).ok_or(Error::NotInLattice(*g))?;
            *row = self
                .basis_coords_scaled(&s)
                .ok_or(Error::NotInLattice(*g))?;
        }
        match intmat::det3(&m).abs() {
            0 => Err(Error::Degenerate),
            d => Ok(d),
        }
    }

    /// Whether every point of `self` lies in `other`.
    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        [0, 1, 2]
            .iter()
            .map(|&i| self.from_scaled(self.basis[i]))
            .all(|p| other.contains(&p))
    }
}

/// `N = Z^3 + Z (1/r)(a1, a2, a3)`.
pub fn make_lattice(g: &GroupAction) -> Result<Lattice> {
    Lattice::new(g)
}

/// The representatives `v_0 = 0, v_1, ..., v_{r-1}` of `N / Z^3` in `[0, 1)^3`.
pub fn group_points(g: &GroupAction) -> Vec<LatticePoint> {
    let r = g.order();
    (0..r)
        .map(|i| LatticePoint::new(g.power(i).weights(), r))
        .collect()
}

/// Multiplicity of the cone spanned by three lattice points.
pub fn cone_multiplicity(generators: [&LatticePoint; 3], lat: &Lattice) -> Result<i64> {
    lat.multiplicity(generators)
}
