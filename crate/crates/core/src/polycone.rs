//! Pointed polyhedral cones in `R^3` with integer ray directions.
//!
//! Used for the non-simplicial charts of the G-Hilbert fan and for pairwise
//! fan-condition checks. Directions are primitive integer vectors in
//! whatever scaled coordinates the caller works in.

use std::collections::BTreeSet;

use crate::intmat::{cross, dot, primitive_dir, Vec3};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyCone {
    /// Extreme ray directions, primitive, sorted.
    rays: Vec<Vec3>,
    /// Inward facet normals, primitive, sorted.
    facets: Vec<Vec3>,
}

impl PolyCone {
    /// Cone spanned by the given directions. Non-extreme inputs are dropped.
    pub fn from_rays(dirs: &[Vec3]) -> PolyCone {
        let dirs: BTreeSet<Vec3> = dirs
            .iter()
            .filter(|d| **d != [0; 3])
            .map(primitive_dir)
            .collect();
        let dirs: Vec<Vec3> = dirs.into_iter().collect();
        let mut facets = BTreeSet::new();
        for i in 0..dirs.len() {
            for j in i + 1..dirs.len() {
                let n = cross(&dirs[i], &dirs[j]);
                if n == [0; 3] {
                    continue;
                }
                let signs: Vec<i64> = dirs.iter().map(|d| dot(&n, d).signum()).collect();
                if signs.iter().all(|&s| s >= 0) && signs.contains(&1) {
                    facets.insert(primitive_dir(&n));
                } else if signs.iter().all(|&s| s <= 0) && signs.contains(&-1) {
                    facets.insert(primitive_dir(&n.map(|x| -x)));
                }
            }
        }
        let facets: Vec<Vec3> = facets.into_iter().collect();
        // keep directions that lie on at least two independent facets
        let rays = dirs
            .into_iter()
            .filter(|d| {
                let tight: Vec<&Vec3> = facets.iter().filter(|n| dot(n, d) == 0).collect();
                tight
                    .iter()
                    .enumerate()
                    .any(|(i, a)| tight[i + 1..].iter().any(|b| cross(a, b) != [0; 3]))
            })
            .collect();
        PolyCone { rays, facets }
    }

    /// The cone `{x : n . x >= 0 for all n}`, assumed pointed.
    pub fn from_inequalities(normals: &[Vec3]) -> PolyCone {
        let normals: Vec<Vec3> = normals
            .iter()
            .filter(|n| **n != [0; 3])
            .map(primitive_dir)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut rays = BTreeSet::new();
        for i in 0..normals.len() {
            for j in i + 1..normals.len() {
                let c = cross(&normals[i], &normals[j]);
                if c == [0; 3] {
                    continue;
                }
                for cand in [c, c.map(|x| -x)] {
                    if normals.iter().all(|n| dot(n, &cand) >= 0) {
                        rays.insert(primitive_dir(&cand));
                    }
                }
            }
        }
        let rays: Vec<Vec3> = rays.into_iter().collect();
        PolyCone::from_rays(&rays)
    }

    pub fn rays(&self) -> &[Vec3] {
        &self.rays
    }

    pub fn facets(&self) -> &[Vec3] {
        &self.facets
    }

    pub fn is_full_dimensional(&self) -> bool {
        let r = &self.rays;
        (0..r.len()).any(|i| {
            (i + 1..r.len()).any(|j| {
                let c = cross(&r[i], &r[j]);
                c != [0; 3] && r.iter().any(|k| dot(&c, k) != 0)
            })
        })
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == 3 && self.is_full_dimensional()
    }

    pub fn contains(&self, v: &Vec3) -> bool {
        self.facets.iter().all(|n| dot(n, v) >= 0)
    }

    pub fn contains_in_interior(&self, v: &Vec3) -> bool {
        self.facets.iter().all(|n| dot(n, v) > 0)
    }

    /// Whether the two full-dimensional cones intersect in a common face.
    ///
    /// Both cones must lie in an open half-space shared with each other (true
    /// for cones inside the positive octant), so the test reduces to convex
    /// polygons in an affine slice: interiors must be separated by an edge
    /// line, and no vertex of one may lie in the other unless shared.
    pub fn meets_properly(&self, other: &PolyCone) -> bool {
        let separated = self
            .facets
            .iter()
            .any(|n| other.rays.iter().all(|x| dot(n, x) <= 0))
            || other
                .facets
                .iter()
                .any(|n| self.rays.iter().all(|x| dot(n, x) <= 0));
        if !separated {
            return false;
        }
        let stray = |a: &PolyCone, b: &PolyCone| {
            b.rays.iter().any(|x| a.contains(x) && !a.rays.contains(x))
        };
        !stray(self, other) && !stray(other, self)
    }
}
