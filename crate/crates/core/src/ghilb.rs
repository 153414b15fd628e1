//! G-graphs and the fan of the toric component of the G-Hilbert scheme.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::intmat::{self, Vec3};
use crate::lattice::{GroupAction, Lattice, LatticePoint};
use crate::polycone::PolyCone;

/// Largest group order accepted by [`enumerate_ggraphs`].
pub const MAX_ORDER: i64 = 40;
/// Default cap on DFS nodes visited by [`enumerate_ggraphs`].
pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// A monomial `x^u1 y^u2 z^u3`, or a Laurent monomial when exponents are
/// negative. Ordered by total degree, then with `x > y > z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub [i64; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 3]);

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn times(&self, o: &Monomial) -> Monomial {
        Monomial([0, 1, 2].map(|i| self.0[i] + o.0[i]))
    }

    pub fn over(&self, o: &Monomial) -> Monomial {
        Monomial([0, 1, 2].map(|i| self.0[i] - o.0[i]))
    }

    pub fn var(i: usize) -> Monomial {
        let mut u = [0; 3];
        u[i] = 1;
        Monomial(u)
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        (0..3).all(|i| self.0[i] <= o.0[i])
    }

    /// `m / x_i` for each variable dividing `m`.
    fn immediate_divisors(&self) -> impl Iterator<Item = Monomial> + '_ {
        (0..3).filter(|&i| self.0[i] > 0).map(|i| {
            let mut u = self.0;
            u[i] -= 1;
            Monomial(u)
        })
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree()
            .cmp(&o.degree())
            .then_with(|| o.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut num = String::new();
        let mut den = String::new();
        for (i, v) in ["x", "y", "z"].iter().enumerate() {
            let e = self.0[i];
            let target = if e > 0 { &mut num } else { &mut den };
            match e.abs() {
                0 => {}
                1 => target.push_str(v),
                k => target.push_str(&format!("{v}^{k}")),
            }
        }
        if num.is_empty() {
            num.push('1');
        }
        if den.is_empty() {
            write!(f, "{num}")
        } else {
            write!(f, "{num}/{den}")
        }
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// The character index of a monomial: `u . a mod r`.
pub fn weight(m: &Monomial, g: &GroupAction) -> i64 {
    let a = g.weights();
    (0..3)
        .map(|i| m.0[i] * a[i])
        .sum::<i64>()
        .rem_euclid(g.order())
}

/// An order ideal of monomials on which the weight is a bijection onto
/// `Z/r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GGraph {
    group: GroupAction,
    elements: BTreeSet<Monomial>,
    /// `by_weight[w]` is the element of weight `w`.
    by_weight: Vec<Monomial>,
}

impl GGraph {
    /// Validates divisor closure and bijectivity of the weight map.
    pub fn new(
        group: &GroupAction,
        elements: impl IntoIterator<Item = Monomial>,
    ) -> Result<GGraph> {
        let elements: BTreeSet<Monomial> = elements.into_iter().collect();
        let r = group.order();
        if elements.len() as i64 != r {
            return Err(Error::Malformed(format!(
                "a G-graph of {group} has {r} elements, got {}",
                elements.len()
            )));
        }
        let mut by_weight = vec![None; r as usize];
        for m in &elements {
            if m.0.iter().any(|&e| e < 0) {
                return Err(Error::Malformed(format!("{m} is not a monomial")));
            }
            if m.immediate_divisors().any(|d| !elements.contains(&d)) {
                return Err(Error::Malformed(format!("a divisor of {m} is missing")));
            }
            let w = weight(m, group) as usize;
            if by_weight[w].replace(*m).is_some() {
                return Err(Error::Malformed(format!("weight {w} occurs twice")));
            }
        }
        Ok(GGraph {
            group: *group,
            elements,
            by_weight: by_weight.into_iter().map(Option::unwrap).collect(),
        })
    }

    pub fn group(&self) -> &GroupAction {
        &self.group
    }

    pub fn elements(&self) -> &BTreeSet<Monomial> {
        &self.elements
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.elements.contains(m)
    }

    pub fn weight_of(&self, m: &Monomial) -> i64 {
        weight(m, &self.group)
    }

    /// `wt_Γ(m)`: the element with the same weight as `m`.
    pub fn wt(&self, m: &Monomial) -> Monomial {
        self.by_weight[weight(m, &self.group) as usize]
    }
}

impl fmt::Display for GGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.elements.iter().map(Monomial::to_string).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

/// All G-graphs, with the default node budget.
pub fn enumerate_ggraphs(g: &GroupAction) -> Result<Vec<GGraph>> {
    enumerate_ggraphs_with_budget(g, DEFAULT_BUDGET)
}

/// Include/exclude search over monomials in graded order. A monomial can be
/// included once all its immediate divisors are and its weight is unused;
/// a graph is complete at `r` elements.
pub fn enumerate_ggraphs_with_budget(g: &GroupAction, budget: u64) -> Result<Vec<GGraph>> {
    if !g.is_faithful() {
        return Err(Error::NotFaithful(*g));
    }
    let r = g.order();
    if r > MAX_ORDER {
        return Err(Error::Budget(format!("order {r} exceeds {MAX_ORDER}")));
    }
    // an order ideal of size r containing x^u has at least prod(u_i + 1) elements
    let mut cands = Vec::new();
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                if (a + 1) * (b + 1) * (c + 1) <= r {
                    cands.push(Monomial([a, b, c]));
                }
            }
        }
    }
    cands.sort();
    let index: HashMap<Monomial, usize> = cands.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let divisors: Vec<Vec<usize>> = cands
        .iter()
        .map(|m| m.immediate_divisors().map(|d| index[&d]).collect())
        .collect();
    let weights: Vec<usize> = cands.iter().map(|m| weight(m, g) as usize).collect();

    let mut search = Search {
        r: r as usize,
        divisors: &divisors,
        weights: &weights,
        included: vec![false; cands.len()],
        used: vec![false; r as usize],
        count: 0,
        nodes: 0,
        budget,
        found: Vec::new(),
    };
    search.dfs(0)?;
    let graphs = search
        .found
        .iter()
        .map(|set| GGraph::new(g, set.iter().map(|&i| cands[i])).expect("search yields G-graphs"))
        .collect();
    Ok(graphs)
}

struct Search<'a> {
    r: usize,
    divisors: &'a [Vec<usize>],
    weights: &'a [usize],
    included: Vec<bool>,
    used: Vec<bool>,
    count: usize,
    nodes: u64,
    budget: u64,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn dfs(&mut self, k: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Budget(format!(
                "more than {} search nodes",
                self.budget
            )));
        }
        if self.count == self.r {
            self.found
                .push((0..k).filter(|&i| self.included[i]).collect());
            return Ok(());
        }
        if k == self.divisors.len() || self.count + (self.divisors.len() - k) < self.r {
            return Ok(());
        }
        let addable =
            !self.used[self.weights[k]] && self.divisors[k].iter().all(|&d| self.included[d]);
        if addable {
            self.included[k] = true;
            self.used[self.weights[k]] = true;
            self.count += 1;
            self.dfs(k + 1)?;
            self.count -= 1;
            self.used[self.weights[k]] = false;
            self.included[k] = false;
        }
        // with monomial 1 excluded nothing else can be added
        if k == 0 {
            return Ok(());
        }
        self.dfs(k + 1)
    }
}

/// Minimal generators `A_Γ` of the monomial ideal spanned by the
/// complement of Γ.
pub fn min_generators(gamma: &GGraph) -> BTreeSet<Monomial> {
    gamma
        .elements
        .iter()
        .flat_map(|x| (0..3).map(move |i| x.times(&Monomial::var(i))))
        .filter(|m| !gamma.contains(m) && m.immediate_divisors().all(|d| gamma.contains(&d)))
        .collect()
}

/// The monomials (with exponents below `r`) outside the ideal generated by
/// `gens`.
pub fn graph_of_ideal(gens: &[Monomial], r: i64) -> BTreeSet<Monomial> {
    let mut out = BTreeSet::new();
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                let m = Monomial([a, b, c]);
                if !gens.iter().any(|q| q.divides(&m)) {
                    out.insert(m);
                }
            }
        }
    }
    out
}

/// The closed cone `σ(Γ)` in `N_R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaCone {
    /// Pairs `(u, wt_Γ(u))` for `u ∈ A_Γ`.
    pub inequalities: Vec<(Monomial, Monomial)>,
    /// Primitive generators in `N`, in cyclic order around the cone.
    pub rays: Vec<LatticePoint>,
    poly: PolyCone,
    lattice: Lattice,
}

impl GammaCone {
    pub fn is_full_dimensional(&self) -> bool {
        self.poly.is_full_dimensional()
    }

    pub fn is_simplicial(&self) -> bool {
        self.poly.is_simplicial()
    }

    /// Normalized volume: the sum of multiplicities of any triangulation
    /// without new rays. Zero for lower-dimensional cones.
    pub fn multiplicity(&self) -> i64 {
        self.triangles()
            .iter()
            .map(|[a, b, c]| self.lattice.multiplicity([a, b, c]).expect("nondegenerate"))
            .sum()
    }

    pub fn is_smooth(&self) -> bool {
        self.is_simplicial() && self.multiplicity() == 1
    }

    /// Fan triangulation from the first ray.
    pub fn triangles(&self) -> Vec<[LatticePoint; 3]> {
        if !self.is_full_dimensional() {
            return Vec::new();
        }
        (1..self.rays.len() - 1)
            .map(|i| [self.rays[0], self.rays[i], self.rays[i + 1]])
            .collect()
    }

    /// Edges of the cone's polygon as pairs of rays.
    pub fn edges(&self) -> Vec<[LatticePoint; 2]> {
        let n = self.rays.len();
        (0..n)
            .map(|i| {
                let mut e = [self.rays[i], self.rays[(i + 1) % n]];
                e.sort();
                e
            })
            .collect()
    }
}

/// `σ(Γ) = {w : w.u >= w.wt_Γ(u) for u ∈ A_Γ, w >= 0}`.
pub fn sigma_cone(gamma: &GGraph, g: &GroupAction) -> Result<GammaCone> {
    let lattice = Lattice::new(g)?;
    let inequalities: Vec<(Monomial, Monomial)> = min_generators(gamma)
        .into_iter()
        .map(|u| (u, gamma.wt(&u)))
        .collect();
    let mut normals: Vec<Vec3> = inequalities.iter().map(|(u, t)| u.over(t).0).collect();
    normals.extend([[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
    let poly = PolyCone::from_inequalities(&normals);
    let rays = cyclic_order(&poly)
        .into_iter()
        .map(|d| lattice.primitive(&LatticePoint::integral(d)))
        .collect();
    Ok(GammaCone {
        inequalities,
        rays,
        poly,
        lattice,
    })
}

/// Rays of a cone in cyclic order, starting from the smallest.
fn cyclic_order(poly: &PolyCone) -> Vec<Vec3> {
    let rays = poly.rays();
    if !poly.is_full_dimensional() {
        return rays.to_vec();
    }
    let neighbors = |r: &Vec3| -> Vec<Vec3> {
        poly.facets()
            .iter()
            .filter(|n| intmat::dot(n, r) == 0)
            .flat_map(|n| {
                rays.iter()
                    .filter(move |s| *s != r && intmat::dot(n, s) == 0)
            })
            .copied()
            .collect()
    };
    let mut order = vec![rays[0]];
    let mut prev = rays[0];
    let mut cur = *neighbors(&rays[0]).iter().min().expect("polygon has edges");
    while cur != rays[0] {
        order.push(cur);
        let next = *neighbors(&cur)
            .iter()
            .find(|&&s| s != prev)
            .expect("polygon is a cycle");
        prev = cur;
        cur = next;
    }
    order
}

/// Reduced generators of `S(Γ)`, as Laurent monomials.
///
/// The single-step quotients `x_i x / wt_Γ(x_i x)` generate, since every
/// `m x / wt_Γ(m x)` telescopes into them. Redundant ones are removed by
/// expressing each as a sum of the others, using a grading positive on
/// the semigroup.
pub fn semigroup_generators(gamma: &GGraph, g: &GroupAction) -> Result<BTreeSet<Monomial>> {
    let cone = sigma_cone(gamma, g)?;
    let raw: BTreeSet<Monomial> = gamma
        .elements
        .iter()
        .flat_map(|x| (0..3).map(move |i| x.times(&Monomial::var(i))))
        .map(|m| m.over(&gamma.wt(&m)))
        .filter(|q| *q != Monomial::ONE)
        .collect();
    if !cone.is_full_dimensional() {
        return Ok(raw);
    }
    // an interior point of σ(Γ) pairs positively with S(Γ) \ {0}
    let grading: Vec3 = cone.poly.rays().iter().fold([0; 3], |acc, r| {
        [acc[0] + r[0], acc[1] + r[1], acc[2] + r[2]]
    });
    let degree = |m: &Monomial| intmat::dot(&grading, &m.0);
    let mut sorted: Vec<Monomial> = raw.into_iter().collect();
    sorted.sort_by_key(|m| (degree(m), *m));
    assert!(
        sorted.iter().all(|m| degree(m) > 0),
        "S(Γ) lies in the dual of σ(Γ)"
    );
    let mut kept: Vec<Monomial> = Vec::new();
    for m in sorted {
        let mut memo = HashMap::new();
        if !representable(&m, &kept, &degree, &mut memo) {
            kept.push(m);
        }
    }
    Ok(kept.into_iter().collect())
}

fn representable(
    target: &Monomial,
    gens: &[Monomial],
    degree: &impl Fn(&Monomial) -> i64,
    memo: &mut HashMap<Monomial, bool>,
) -> bool {
    if *target == Monomial::ONE {
        return true;
    }
    if degree(target) <= 0 {
        return false;
    }
    if let Some(&v) = memo.get(target) {
        return v;
    }
    let v = gens
        .iter()
        .any(|s| representable(&target.over(s), gens, degree, memo));
    memo.insert(*target, v);
    v
}

/// One torus-fixed chart of the G-Hilbert scheme.
#[derive(Clone, Debug)]
pub struct Chart {
    pub graph: GGraph,
    pub ideal_gens: BTreeSet<Monomial>,
    pub cone: GammaCone,
}

#[derive(Serialize)]
pub struct ChartJson {
    pub graph: Vec<Monomial>,
    pub ideal_gens: Vec<Monomial>,
    pub cone_rays: Vec<LatticePoint>,
    pub smooth: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GStats {
    #[serde(rename = "V")]
    pub v: usize,
    #[serde(rename = "E")]
    pub e: usize,
    #[serde(rename = "F")]
    pub f: usize,
}

/// `Fan(G)`: the full-dimensional cones `σ(Γ)` over all G-graphs.
#[derive(Clone, Debug)]
pub struct GFan {
    lattice: Lattice,
    /// Charts with full-dimensional cones, in enumeration order.
    charts: Vec<Chart>,
}

impl GFan {
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn charts(&self) -> &[Chart] {
        &self.charts
    }

    pub fn num_max_cones(&self) -> usize {
        self.charts.len()
    }

    /// `Gen(Fan(G))`.
    pub fn gen_set(&self) -> BTreeSet<LatticePoint> {
        self.charts
            .iter()
            .flat_map(|c| c.cone.rays.iter().copied())
            .collect()
    }

    pub fn is_smooth(&self) -> bool {
        self.charts.iter().all(|c| c.cone.is_smooth())
    }

    pub fn singular_charts(&self) -> Vec<&Chart> {
        self.charts.iter().filter(|c| !c.cone.is_smooth()).collect()
    }

    /// Vertices, edges and polygons of the induced subdivision of the
    /// junior simplex.
    pub fn stats(&self) -> GStats {
        let edges: BTreeSet<[LatticePoint; 2]> =
            self.charts.iter().flat_map(|c| c.cone.edges()).collect();
        GStats {
            v: self.gen_set().len(),
            e: edges.len(),
            f: self.charts.len(),
        }
    }

    /// The simplicial fan obtained by triangulating every cone without new
    /// rays; equal to `Fan(G)` itself when all cones are simplicial.
    pub fn triangulated(&self) -> Fan {
        let cones = self
            .charts
            .iter()
            .flat_map(|c| c.cone.triangles())
            .collect();
        Fan::from_cone_points(self.lattice.clone(), cones)
    }

    /// Rays of `Fan(G)` that are not in the Hilbert basis of the octant.
    pub fn non_hilbert_generators(&self) -> Vec<LatticePoint> {
        let hilb = crate::hilbert::hilbert_basis(&self.lattice);
        self.gen_set()
            .into_iter()
            .filter(|p| !hilb.contains(p))
            .collect()
    }

    pub fn charts_json(&self) -> Vec<ChartJson> {
        self.charts
            .iter()
            .map(|c| ChartJson {
                graph: c.graph.elements().iter().copied().collect(),
                ideal_gens: c.ideal_gens.iter().copied().collect(),
                cone_rays: c.cone.rays.clone(),
                smooth: c.cone.is_smooth(),
            })
            .collect()
    }
}

pub fn fan_of_g(g: &GroupAction) -> Result<GFan> {
    fan_of_g_with_budget(g, DEFAULT_BUDGET)
}

pub fn fan_of_g_with_budget(g: &GroupAction, budget: u64) -> Result<GFan> {
    let lattice = Lattice::new(g)?;
    let mut seen: BTreeMap<Vec<LatticePoint>, usize> = BTreeMap::new();
    let mut charts = Vec::new();
    for graph in enumerate_ggraphs_with_budget(g, budget)? {
        let cone = sigma_cone(&graph, g)?;
        if !cone.is_full_dimensional() {
            continue;
        }
        let mut key = cone.rays.clone();
        key.sort();
        if seen.insert(key, charts.len()).is_some() {
            return Err(Error::Malformed(format!(
                "two G-graphs of {g} give the same cone"
            )));
        }
        charts.push(Chart {
            ideal_gens: min_generators(&graph),
            graph,
            cone,
        });
    }
    Ok(GFan { lattice, charts })
}
