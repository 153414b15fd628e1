//! Hilbert basis of the positive octant with respect to `N`, and the
//! Hilbert-desingularization verdict.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::fan::Fan;
use crate::lattice::{group_points, Lattice, LatticePoint};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertBasis {
    elements: BTreeSet<LatticePoint>,
    lattice: Lattice,
}

impl HilbertBasis {
    pub fn elements(&self) -> &BTreeSet<LatticePoint> {
        &self.elements
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.elements.contains(p)
    }
}

/// Whether `y` lies strictly between `0` and `x` in the componentwise order.
fn strictly_below(y: &LatticePoint, x: &LatticePoint) -> bool {
    y != x && !y.is_zero() && (0..3).all(|i| y.coord(i) <= x.coord(i))
}

/// Irreducible nonzero lattice points of the positive octant.
///
/// Irreducible elements lie in the half-open unit cube or on the axes at
/// `e_i`, so the candidates are `v_1, ..., v_{r-1}` and the unit vectors.
/// A candidate `x` is reducible iff some nonzero `y != x` of `N` satisfies
/// `0 <= y <= x`, and any such `y` is itself in the unit cube.
pub fn hilbert_basis(lat: &Lattice) -> HilbertBasis {
    let cube: Vec<LatticePoint> = group_points(lat.group()).into_iter().skip(1).collect();
    let units = [0, 1, 2].map(LatticePoint::unit);
    let elements = cube
        .iter()
        .chain(units.iter())
        .filter(|x| !cube.iter().any(|y| strictly_below(y, x)))
        .copied()
        .collect();
    HilbertBasis {
        elements,
        lattice: lat.clone(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum HilbVerdict {
    Yes,
    NotSmooth,
    GenMismatch {
        /// Ray generators that are not in the Hilbert basis.
        extra: Vec<LatticePoint>,
        /// Hilbert basis elements that are not ray generators.
        missing: Vec<LatticePoint>,
    },
}

impl HilbVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, HilbVerdict::Yes)
    }
}

/// Smooth, with ray generators exactly the Hilbert basis of the octant.
pub fn is_hilb_desingularization(f: &Fan) -> HilbVerdict {
    if !f.is_smooth() {
        return HilbVerdict::NotSmooth;
    }
    let hilb = hilbert_basis(f.lattice());
    let gens = f.gen_set();
    if &gens == hilb.elements() {
        HilbVerdict::Yes
    } else {
        HilbVerdict::GenMismatch {
            extra: gens.difference(hilb.elements()).copied().collect(),
            missing: hilb.elements().difference(&gens).copied().collect(),
        }
    }
}
