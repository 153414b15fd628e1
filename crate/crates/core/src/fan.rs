//! Simplicial fans supported in the positive octant.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intmat::{self, Vec3};
use crate::lattice::{GroupAction, Lattice, LatticePoint};
use crate::polycone::PolyCone;

/// A cone of a fan, given by sorted indices into the fan's ray table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    rays: Vec<usize>,
}

impl Cone {
    pub fn new(mut rays: Vec<usize>) -> Cone {
        rays.sort_unstable();
        rays.dedup();
        Cone { rays }
    }

    pub fn rays(&self) -> &[usize] {
        &self.rays
    }

    pub fn dim(&self) -> usize {
        self.rays.len()
    }
}

/// Counts for the triangulation a fan induces on the junior simplex.
///
/// `s` is the boundary parameter in `E = (3F + s + 2) / 2`; for a
/// triangulated disk it equals the number of boundary vertices minus two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JuniorStats {
    #[serde(rename = "V")]
    pub v: usize,
    #[serde(rename = "E")]
    pub e: usize,
    #[serde(rename = "F")]
    pub f: usize,
    pub s: usize,
}

/// Interchange encoding of a fan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanJson {
    pub lattice: GroupAction,
    pub rays: Vec<[i64; 4]>,
    pub cones: Vec<[usize; 3]>,
}

/// A simplicial fan over a fixed lattice, stored as its maximal cones.
///
/// Rays are kept sorted and cone index triples sorted, so two fans with the
/// same cones compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    lattice: Lattice,
    rays: Vec<LatticePoint>,
    cones: Vec<[usize; 3]>,
}

impl Fan {
    /// Validates rays (in the lattice, primitive) and cones (nondegenerate),
    /// then canonicalizes the ordering.
    pub fn new(lattice: Lattice, rays: Vec<LatticePoint>, cones: Vec<[usize; 3]>) -> Result<Fan> {
        for p in &rays {
            if !lattice.contains(p) {
                return Err(Error::NotInLattice(*p));
            }
            if !lattice.is_primitive(p) {
                return Err(Error::NotPrimitive(*p));
            }
        }
        let cone_points: Vec<[LatticePoint; 3]> = cones
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&i| rays.get(i).copied())
                    .collect::<Option<Vec<_>>>()
                    .and_then(|v| <[LatticePoint; 3]>::try_from(v).ok())
                    .ok_or_else(|| {
                        Error::Malformed(format!("cone {c:?} indexes past the ray table"))
                    })
            })
            .collect::<Result<_>>()?;
        Ok(Fan::from_cone_points(lattice, cone_points))
    }

    /// Builds a canonical fan from cones given by their generators; the ray
    /// table is the set of generators that occur.
    pub(crate) fn from_cone_points(lattice: Lattice, cones: Vec<[LatticePoint; 3]>) -> Fan {
        let ray_set: BTreeSet<LatticePoint> = cones.iter().flatten().copied().collect();
        let rays: Vec<LatticePoint> = ray_set.into_iter().collect();
        let index: BTreeMap<LatticePoint, usize> =
            rays.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let mut cones: Vec<[usize; 3]> = cones
            .iter()
            .map(|c| {
                let mut ids = c.map(|p| index[&p]);
                ids.sort_unstable();
                ids
            })
            .collect();
        cones.sort_unstable();
        cones.dedup();
        Fan {
            lattice,
            rays,
            cones,
        }
    }

    /// The single cone on the primitive generators of the coordinate axes.
    pub fn positive_octant(g: &GroupAction) -> Result<Fan> {
        let lattice = Lattice::new(g)?;
        let gens = [0, 1, 2].map(|i| lattice.primitive(&LatticePoint::unit(i)));
        Ok(Fan::from_cone_points(lattice, vec![gens]))
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn rays(&self) -> &[LatticePoint] {
        &self.rays
    }

    pub fn cones(&self) -> &[[usize; 3]] {
        &self.cones
    }

    pub fn cone_points(&self, cone: &[usize; 3]) -> [LatticePoint; 3] {
        cone.map(|i| self.rays[i])
    }

    fn scaled(&self, i: usize) -> Vec3 {
        self.lattice
            .scaled(&self.rays[i])
            .expect("rays lie in the lattice")
    }

    pub fn multiplicity(&self, cone: &[usize; 3]) -> i64 {
        let [a, b, c] = self.cone_points(cone);
        self.lattice
            .multiplicity([&a, &b, &c])
            .expect("fan cones are nondegenerate")
    }

    pub fn is_smooth(&self) -> bool {
        self.cones.iter().all(|c| self.multiplicity(c) == 1)
    }

    /// Primitive generators of all rays.
    pub fn gen_set(&self) -> BTreeSet<LatticePoint> {
        self.rays.iter().copied().collect()
    }

    /// All cones of the given dimension (1, 2 or 3) that are faces of
    /// maximal cones.
    pub fn faces(&self, dim: usize) -> Vec<Cone> {
        let mut out = BTreeSet::new();
        for c in &self.cones {
            match dim {
                1 => c.iter().for_each(|&i| {
                    out.insert(Cone::new(vec![i]));
                }),
                2 => {
                    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                        out.insert(Cone::new(vec![c[i], c[j]]));
                    }
                }
                3 => {
                    out.insert(Cone::new(c.to_vec()));
                }
                _ => {}
            }
        }
        out.into_iter().collect()
    }

    pub(crate) fn poly_cone(&self, cone: &[usize; 3]) -> PolyCone {
        PolyCone::from_rays(&cone.map(|i| self.scaled(i)))
    }

    /// Signs of the barycentric coordinates of `p` in the cone, or `None`
    /// when `p` lies outside.
    fn locate(&self, cone: &[usize; 3], p: &Vec3) -> Option<[bool; 3]> {
        let s = cone.map(|i| self.scaled(i));
        let d = intmat::det_rows(&s[0], &s[1], &s[2]);
        let mut positive = [false; 3];
        for k in 0..3 {
            let mut t = s;
            t[k] = *p;
            let dk = intmat::det_rows(&t[0], &t[1], &t[2]) * d.signum();
            if dk < 0 {
                return None;
            }
            positive[k] = dk > 0;
        }
        Some(positive)
    }

    /// Fan-wide star subdivision at a primitive lattice point.
    ///
    /// Returns the new fan and whether anything changed; subdividing at an
    /// existing ray is a no-op.
    pub fn star_subdivide(&self, p: &LatticePoint) -> Result<(Fan, bool)> {
        let s = self.lattice.scaled(p).ok_or(Error::NotInLattice(*p))?;
        if !self.lattice.contains_scaled(&s) {
            return Err(Error::NotInLattice(*p));
        }
        if !self.lattice.is_primitive(p) {
            return Err(Error::NotPrimitive(*p));
        }
        if self.rays.contains(p) {
            return Ok((self.clone(), false));
        }
        let mut hit = false;
        let mut cones = Vec::new();
        for c in &self.cones {
            let pts = self.cone_points(c);
            match self.locate(c, &s) {
                Some(positive) => {
                    hit = true;
                    for k in (0..3).filter(|&k| positive[k]) {
                        let mut q = pts;
                        q[k] = *p;
                        cones.push(q);
                    }
                }
                None => cones.push(pts),
            }
        }
        if !hit {
            return Err(Error::OutsideSupport(*p));
        }
        Ok((Fan::from_cone_points(self.lattice.clone(), cones), true))
    }

    /// Pairwise check that maximal cones meet in common faces.
    pub fn check_fan_condition(&self) -> Result<()> {
        let polys: Vec<PolyCone> = self.cones.iter().map(|c| self.poly_cone(c)).collect();
        for i in 0..polys.len() {
            for j in i + 1..polys.len() {
                if !polys[i].meets_properly(&polys[j]) {
                    return Err(Error::FanCondition(
                        self.cones[i].to_vec(),
                        self.cones[j].to_vec(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Total area of the cones' traces on the junior simplex, relative to
    /// the whole simplex. Equals one iff the cones tile the octant (given
    /// the fan condition).
    pub fn junior_area(&self) -> BigRational {
        self.cones
            .iter()
            .map(|c| {
                let s = c.map(|i| self.scaled(i));
                let det = intmat::det_rows(&s[0], &s[1], &s[2]).abs();
                // scaled coordinates carry a factor r per row, and so do the ages
                let ages: BigInt = s
                    .iter()
                    .map(|v| BigInt::from(v.iter().sum::<i64>()))
                    .product();
                BigRational::new(BigInt::from(det), ages)
            })
            .fold(BigRational::zero(), |a, b| a + b)
    }

    fn supported_on_octant(&self) -> bool {
        self.rays.iter().all(LatticePoint::in_octant) && self.junior_area() == BigRational::one()
    }

    pub fn junior_stats(&self) -> Result<JuniorStats> {
        if !self.supported_on_octant() {
            return Err(Error::SupportNotOctant);
        }
        let v = self.rays.len();
        let e = self.faces(2).len();
        let f = self.cones.len();
        let euler = v as i64 - e as i64 + f as i64;
        if euler != 1 {
            return Err(Error::Euler(euler));
        }
        let boundary = self.rays.iter().filter(|p| p.num().contains(&0)).count();
        Ok(JuniorStats {
            v,
            e,
            f,
            s: boundary - 2,
        })
    }

    /// The same cones read in a finer lattice; rays are re-primitivized.
    pub fn with_lattice(&self, lattice: Lattice) -> Result<Fan> {
        if !self.lattice.is_sublattice_of(&lattice) {
            return Err(Error::NotSublattice {
                small: *self.lattice.group(),
                big: *lattice.group(),
            });
        }
        let cones = self
            .cones
            .iter()
            .map(|c| self.cone_points(c).map(|p| lattice.primitive(&p)))
            .collect();
        Ok(Fan::from_cone_points(lattice, cones))
    }

    pub fn to_json(&self) -> FanJson {
        FanJson {
            lattice: *self.lattice.group(),
            rays: self.rays.iter().map(LatticePoint::to_array).collect(),
            cones: self.cones.clone(),
        }
    }

    pub fn from_json(json: &FanJson) -> Result<Fan> {
        let g = GroupAction::new(json.lattice.order(), json.lattice.weights())?;
        let lattice = Lattice::new(&g)?;
        let rays = json
            .rays
            .iter()
            .map(|a| LatticePoint::from_array(*a))
            .collect::<Result<Vec<_>>>()?;
        let fan = Fan::new(lattice, rays, json.cones.clone())?;
        for c in fan.cones() {
            let [a, b, d] = fan.cone_points(c);
            fan.lattice.multiplicity([&a, &b, &d])?;
        }
        Ok(fan)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(r: i64, w: [i64; 3]) -> GroupAction {
        GroupAction::new(r, w).unwrap()
    }

    fn e(i: usize) -> LatticePoint {
        LatticePoint::unit(i)
    }

    #[test]
    fn octant_examples() {
        let f = Fan::positive_octant(&g(11, [1, 2, 8])).unwrap();
        assert_eq!(f.cones().len(), 1);
        assert_eq!(f.gen_set(), [e(0), e(1), e(2)].into_iter().collect());
        assert_eq!(f.multiplicity(&f.cones()[0]), 11);
        assert!(!f.is_smooth());
        assert!(Fan::positive_octant(&GroupAction::trivial())
            .unwrap()
            .is_smooth());
        let f9 = Fan::positive_octant(&g(9, [1, 4, 7])).unwrap();
        assert_eq!(f9.multiplicity(&f9.cones()[0]), 9);
        assert!(!f9.is_smooth());
    }

    #[test]
    fn octant_stats() {
        let f = Fan::positive_octant(&g(9, [1, 4, 7])).unwrap();
        assert_eq!(
            f.junior_stats().unwrap(),
            JuniorStats {
                v: 3,
                e: 3,
                f: 1,
                s: 1
            }
        );
    }

    #[test]
    fn subdivision_at_oka_center() {
        let f = Fan::positive_octant(&g(11, [1, 2, 8])).unwrap();
        let c = LatticePoint::new([1, 2, 8], 11);
        let (f2, changed) = f.star_subdivide(&c).unwrap();
        assert!(changed);
        let mut cones: Vec<BTreeSet<LatticePoint>> = f2
            .cones()
            .iter()
            .map(|k| f2.cone_points(k).into_iter().collect())
            .collect();
        cones.sort();
        let mut expected: Vec<BTreeSet<LatticePoint>> = vec![
            [c, e(1), e(2)].into_iter().collect(),
            [e(0), c, e(2)].into_iter().collect(),
            [e(0), e(1), c].into_iter().collect(),
        ];
        expected.sort();
        assert_eq!(cones, expected);
        let (same, changed) = f2.star_subdivide(&c).unwrap();
        assert!(!changed);
        assert_eq!(same, f2);
    }

    #[test]
    fn shared_face_split_propagates() {
        let f = Fan::positive_octant(&g(11, [1, 2, 8])).unwrap();
        let c = LatticePoint::new([1, 2, 8], 11);
        let (f2, _) = f.star_subdivide(&c).unwrap();
        // (e1 + c) / 2 lies on the face (e1, c) shared by (e1,c,e3) and (e1,e2,c)
        let m = f2.lattice().primitive(&(e(0) + c));
        assert_eq!(m, LatticePoint::new([6, 1, 4], 11));
        let (f3, _) = f2.star_subdivide(&m).unwrap();
        assert_eq!(f3.cones().len(), 5);
        f3.check_fan_condition().unwrap();
        let containing_m = f3
            .cones()
            .iter()
            .filter(|k| f3.cone_points(k).contains(&m))
            .count();
        assert_eq!(containing_m, 4);
        assert_eq!(f3.junior_stats().unwrap().f, 5);
    }

    #[test]
    fn subdivision_errors() {
        let f = Fan::positive_octant(&g(5, [1, 2, 3])).unwrap();
        let outside = LatticePoint::new([-4, 2, 3], 5);
        assert_eq!(
            f.star_subdivide(&outside),
            Err(Error::OutsideSupport(outside))
        );
        let not_in = LatticePoint::new([1, 1, 1], 5);
        assert_eq!(f.star_subdivide(&not_in), Err(Error::NotInLattice(not_in)));
        let fat = LatticePoint::new([2, 4, 6], 5);
        assert_eq!(f.star_subdivide(&fat), Err(Error::NotPrimitive(fat)));
    }

    #[test]
    fn json_roundtrip_and_validation() {
        let f = Fan::positive_octant(&g(11, [1, 2, 8])).unwrap();
        let (f, _) = f.star_subdivide(&LatticePoint::new([1, 2, 8], 11)).unwrap();
        let j = f.to_json();
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.starts_with("{\"lattice\":{\"r\":11,\"weights\":[1,2,8]},\"rays\":"));
        let back: FanJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Fan::from_json(&back).unwrap(), f);

        let mut bad = j.clone();
        bad.rays[0] = [1, 1, 1, 11];
        assert!(Fan::from_json(&bad).is_err());
    }

    #[test]
    fn stats_reject_partial_support() {
        let f = Fan::positive_octant(&g(11, [1, 2, 8])).unwrap();
        let (f, _) = f.star_subdivide(&LatticePoint::new([1, 2, 8], 11)).unwrap();
        let lat = f.lattice().clone();
        let first = f.cone_points(&f.cones()[0]);
        let partial = Fan::from_cone_points(lat, vec![first]);
        assert_eq!(partial.junior_stats(), Err(Error::SupportNotOctant));
    }

    #[test]
    fn relattice_reprimitivizes() {
        let h = Fan::positive_octant(&g(3, [1, 1, 1])).unwrap();
        let (h, _) = h.star_subdivide(&LatticePoint::new([1, 1, 1], 3)).unwrap();
        let big = Lattice::new(&g(9, [1, 4, 7])).unwrap();
        let f = h.with_lattice(big).unwrap();
        assert_eq!(f.cones().len(), 3);
        assert_eq!(f.gen_set(), h.gen_set());
        let small = Lattice::new(&g(2, [1, 1, 0])).unwrap();
        assert!(h.with_lattice(small).is_err());
    }

    fn lattice_points_in_octant(g: &GroupAction, max: i64) -> Vec<LatticePoint> {
        let r = g.order();
        let lat = Lattice::new(g).unwrap();
        let mut out = Vec::new();
        for x in 0..=max * r {
            for y in 0..=max * r {
                for z in 0..=max * r {
                    let s = [x, y, z];
                    if s != [0; 3] && lat.contains_scaled(&s) && intmat::gcd_vec(&s) > 0 {
                        let p = lat.from_scaled(s);
                        if lat.is_primitive(&p) && p.age() <= num_rational::Ratio::from_integer(1) {
                            out.push(p);
                        }
                    }
                }
            }
        }
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn star_subdivision_keeps_support_and_fan_condition(
            r in 2i64..9, a in 0i64..9, b in 0i64..9, c in 0i64..9,
            picks in proptest::collection::vec(0usize..1000, 1..6),
        ) {
            let grp = GroupAction::reduced(r, [a, b, c]).unwrap();
            prop_assume!(grp.is_faithful());
            let pool = lattice_points_in_octant(&grp, 1);
            prop_assume!(!pool.is_empty());
            let mut fan = Fan::positive_octant(&grp).unwrap();
            for k in picks {
                let p = pool[k % pool.len()];
                let before = fan.gen_set();
                let (next, changed) = fan.star_subdivide(&p).unwrap();
                let mut expected = before.clone();
                expected.insert(p);
                prop_assert_eq!(next.gen_set(), expected);
                prop_assert_eq!(changed, !before.contains(&p));
                fan = next;
                fan.check_fan_condition().unwrap();
                let st = fan.junior_stats().unwrap();
                prop_assert_eq!(st.v as i64 - st.e as i64 + st.f as i64, 1);
            }
        }
    }
}
