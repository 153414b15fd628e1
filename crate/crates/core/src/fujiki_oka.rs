//! Fujiki-Oka resolutions: repeated star subdivision at Oka centers, driven
//! by the remainder polynomial of the singularity type.
//!
//! Each cone is subdivided on its own. A center can land on a 2-face only
//! when the corresponding fraction entry is zero, and then the face's
//! subdivision depends on the face alone (it is the minimal resolution of
//! the 2-dimensional quotient), so neighbors sharing the face agree.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

use crate::ashikaga::{remainder_polynomial, ProperFraction, RemainderNode};
use crate::classify::semi_unimodular_generators;
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::{GroupAction, Lattice, LatticePoint, Rational};

/// A cone with ordered generators and its type. Slot 1 is the unimodular
/// direction; the lattice is generated by the generators and the Oka
/// center `(g1 + a2 g2 + a3 g3) / r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledCone {
    pub generators: [LatticePoint; 3],
    pub fraction: ProperFraction,
}

impl LabeledCone {
    pub fn oka_center(&self) -> LatticePoint {
        weighted_sum(
            &self.generators,
            self.fraction.numerators(),
            self.fraction.denominator(),
        )
    }
}

/// `(sum_i w_i p_i) / m`.
pub(crate) fn weighted_sum(p: &[LatticePoint; 3], w: &[i64], m: i64) -> LatticePoint {
    let den = p.iter().fold(1i64, |acc, q| acc.lcm(&q.den()));
    let mut num = [0i64; 3];
    for (q, &wi) in p.iter().zip(w) {
        let f = den / q.den();
        for (k, n) in num.iter_mut().enumerate() {
            *n += wi * f * q.num()[k];
        }
    }
    LatticePoint::new(num, den * m)
}

/// One star subdivision of the construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    /// Remainder-map indices leading to this cone.
    pub path: Vec<usize>,
    pub cone: LabeledCone,
    pub center: LatticePoint,
    /// Types of the cones replacing generators 2 and 3; `None` where the
    /// center lies on the opposite face.
    pub children: Vec<(usize, Option<ProperFraction>)>,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let path: String = self.path.iter().map(|i| format!("x_{i}")).collect();
        let [g1, g2, g3] = &self.cone.generators;
        write!(
            f,
            "[{}] type {} cone ({g1}, {g2}, {g3}) center {}:",
            if path.is_empty() { "1" } else { &path },
            self.cone.fraction,
            self.center
        )?;
        write!(f, " sigma_1 smooth")?;
        for (i, child) in &self.children {
            match child {
                Some(t) => write!(f, ", sigma_{i} {t}")?,
                None => write!(f, ", sigma_{i} empty")?,
            }
        }
        Ok(())
    }
}

/// The octant of `g` as a labeled cone with the weight-one slot of
/// `choice` first and the other axes in index order.
fn root_cone(lattice: &Lattice, choice: &GroupAction) -> Result<LabeledCone> {
    let w = choice.weights();
    let r = choice.order();
    let j = w
        .iter()
        .position(|&x| x == 1)
        .ok_or(Error::NotSemiUnimodular)?;
    let others: Vec<usize> = (0..3).filter(|&i| i != j).collect();
    let order = [j, others[0], others[1]];
    let axes = order.map(|i| lattice.primitive(&LatticePoint::unit(i)));
    // coefficients of the generator (w / r) in the axis generators e_i / k_i
    let coef: Vec<Rational> = order
        .iter()
        .zip(&axes)
        .map(|(&i, p)| Rational::new(w[i], r) / p.coord(i))
        .collect();
    let m = coef.iter().fold(1i64, |acc, c| acc.lcm(c.denom()));
    let a: Vec<i64> = coef
        .iter()
        .map(|c| (c * Rational::from_integer(m)).to_integer().rem_euclid(m))
        .collect();
    let fraction = ProperFraction::new(a, m)?;
    if fraction.numerators()[0] != 1 && m > 1 {
        return Err(Error::NotSemiUnimodular);
    }
    Ok(LabeledCone {
        generators: axes,
        fraction,
    })
}

struct Walk<'a> {
    lattice: &'a Lattice,
    cones: Vec<[LatticePoint; 3]>,
    trace: Vec<TraceStep>,
}

impl Walk<'_> {
    fn walk(&mut self, node: &RemainderNode, gens: [LatticePoint; 3], path: &mut Vec<usize>) {
        let cone = LabeledCone {
            generators: gens,
            fraction: node.fraction.clone(),
        };
        debug_assert_eq!(
            self.lattice.multiplicity([&gens[0], &gens[1], &gens[2]]),
            Ok(cone.fraction.denominator())
        );
        let c = cone.oka_center();
        debug_assert!(self.lattice.contains(&c) && self.lattice.is_primitive(&c));

        let mut first = gens;
        first[0] = c;
        self.cones.push(first);

        let mut children = Vec::new();
        let mut pending = Vec::new();
        for i in 2..=3 {
            if cone.fraction.numerators()[i - 1] == 0 {
                children.push((i, None));
                continue;
            }
            let mut child = gens;
            child[i - 1] = c;
            match node.children.get(&i) {
                Some(sub) => {
                    children.push((i, Some(sub.fraction.clone())));
                    pending.push((i, sub, child));
                }
                None => {
                    children.push((i, Some(ProperFraction::new(vec![0; 3], 1).unwrap())));
                    self.cones.push(child);
                }
            }
        }
        self.trace.push(TraceStep {
            path: path.clone(),
            cone,
            center: c,
            children,
        });
        for (i, sub, child) in pending {
            path.push(i);
            self.walk(sub, child, path);
            path.pop();
        }
    }
}

/// Smooth cones of the Fujiki-Oka resolution together with the trace.
fn resolve_cones(
    g: &GroupAction,
    choice: &GroupAction,
) -> Result<(Lattice, Vec<[LatticePoint; 3]>, Vec<TraceStep>)> {
    let lattice = Lattice::new(g)?;
    if g.order() == 1 {
        let e = [0, 1, 2].map(LatticePoint::unit);
        return Ok((lattice, vec![e], Vec::new()));
    }
    if !semi_unimodular_generators(g).contains(choice) {
        return Err(if semi_unimodular_generators(g).is_empty() {
            Error::NoSemiUnimodularGenerator(*g)
        } else {
            Error::BadGeneratorChoice {
                group: *g,
                choice: *choice,
            }
        });
    }
    let root = root_cone(&lattice, choice)?;
    let tree = remainder_polynomial(&root.fraction)?;
    let mut walk = Walk {
        lattice: &lattice,
        cones: Vec::new(),
        trace: Vec::new(),
    };
    match &tree.root {
        Some(node) => walk.walk(node, root.generators, &mut Vec::new()),
        None => walk.cones.push(root.generators),
    }
    let Walk {
        cones, mut trace, ..
    } = walk;
    trace.sort_by(|a, b| {
        a.path
            .len()
            .cmp(&b.path.len())
            .then_with(|| a.path.cmp(&b.path))
    });
    Ok((lattice, cones, trace))
}

/// The Fujiki-Oka resolution of the octant of `g`, built over the slot in
/// which `choice` (a semi-unimodular power of `g`) has weight one.
pub fn fujiki_oka_resolve(g: &GroupAction, choice: &GroupAction) -> Result<Fan> {
    fujiki_oka_traced(g, choice).map(|(fan, _)| fan)
}

/// As [`fujiki_oka_resolve`], with one trace step per star subdivision in
/// the order of the remainder polynomial's terms.
pub fn fujiki_oka_traced(g: &GroupAction, choice: &GroupAction) -> Result<(Fan, Vec<TraceStep>)> {
    let (lattice, cones, trace) = resolve_cones(g, choice)?;
    let fan = Fan::from_cone_points(lattice, cones);
    assert!(fan.is_smooth(), "Fujiki-Oka output for {g} is not smooth");
    Ok((fan, trace))
}

/// Fujiki-Oka over [`preferred_choice`].
pub fn fujiki_oka_default(g: &GroupAction) -> Result<Fan> {
    fujiki_oka_resolve(g, &preferred_choice(g)?)
}

/// The semi-unimodular generator used when none is given: for a terminal
/// group the one of the form `1/r(1, a, r - a)` (its Fujiki-Oka resolution
/// is the economic one), otherwise the first by exponent.
pub fn preferred_choice(g: &GroupAction) -> Result<GroupAction> {
    if g.order() == 1 {
        return Ok(*g);
    }
    let r = g.order();
    let choices = semi_unimodular_generators(g);
    let terminal_form = choices.iter().find(|c| {
        let w = c.weights();
        let j = w.iter().position(|&x| x == 1).unwrap();
        let rest: i64 = (0..3).filter(|&i| i != j).map(|i| w[i]).sum();
        rest == r && (0..3).all(|i| i == j || w[i] > 0)
    });
    terminal_form
        .or(choices.first())
        .copied()
        .ok_or(Error::NoSemiUnimodularGenerator(*g))
}

/// Smooth cones resolving the octant of `g`, in octant coordinates.
pub(crate) fn fujiki_oka_cones(g: &GroupAction) -> Result<Vec<[LatticePoint; 3]>> {
    let choice = preferred_choice(g)?;
    resolve_cones(g, &choice).map(|(_, cones, _)| cones)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscrepancyReport {
    /// `age - 1` for every ray other than the octant's corners.
    pub discrepancies: BTreeMap<LatticePoint, Rational>,
    pub crepant: bool,
}

pub fn discrepancies(f: &Fan) -> DiscrepancyReport {
    let corners: Vec<LatticePoint> = (0..3)
        .map(|i| f.lattice().primitive(&LatticePoint::unit(i)))
        .collect();
    let discrepancies: BTreeMap<LatticePoint, Rational> = f
        .rays()
        .iter()
        .filter(|p| !corners.contains(p))
        .map(|p| (*p, p.age() - Rational::from_integer(1)))
        .collect();
    let crepant = discrepancies
        .values()
        .all(|d| *d == Rational::from_integer(0));
    DiscrepancyReport {
        discrepancies,
        crepant,
    }
}
