//! Iterated Fujiki-Oka resolutions: resolve `C^3/H` for an SL subgroup
//! `H`, read the fan in the lattice of `G`, then resolve what is left.

use serde::Serialize;

use crate::classify::{is_gorenstein, is_terminal, match_class, ClassLabel};
use crate::error::{Error, Result};
use crate::fan::{Fan, FanJson, JuniorStats};
use crate::fujiki_oka::{
    discrepancies, fujiki_oka_cones, fujiki_oka_resolve, preferred_choice, weighted_sum,
};
use crate::hilbert::{hilbert_basis, is_hilb_desingularization};
use crate::intmat::{self, Mat3};
use crate::lattice::{GroupAction, Lattice, LatticePoint, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupDecomposition {
    pub group: GroupAction,
    /// Generated by `g^exponent`.
    pub subgroup: GroupAction,
    pub exponent: i64,
    pub index: i64,
}

/// The SL subgroup used for each class that needs one: `<g^2>` for (iii),
/// `<g^3>` for 1/9(1,4,7), `<g^2>` for 1/14(1,9,11) and `<g^r>` for
/// (ii)-β with `|G| = d r`.
pub fn sl_subgroup(g: &GroupAction) -> Result<SubgroupDecomposition> {
    let exponent = match match_class(g) {
        ClassLabel::III { .. } => 2,
        ClassLabel::IV9 => 3,
        ClassLabel::IV14 => 2,
        ClassLabel::IIBeta { r, .. } => r,
        ClassLabel::NotCanonical => return Err(Error::NotCanonical(*g)),
        ClassLabel::I | ClassLabel::IIAlpha { .. } => return Err(Error::NoDecomposition(*g)),
    };
    let subgroup = g.subgroup(exponent)?;
    debug_assert!(is_gorenstein(&subgroup));
    Ok(SubgroupDecomposition {
        group: *g,
        subgroup,
        exponent,
        index: exponent,
    })
}

/// A cone of the relatticed fan that is singular in the finer lattice,
/// with its type relative to the listed generator order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidualSingularity {
    pub cone: [LatticePoint; 3],
    #[serde(rename = "type")]
    pub kind: GroupAction,
}

/// Type `1/m(w)` of a simplicial cone: the lattice is generated by the
/// cone's generators and `sum_i (w_i / m) g_i`.
pub fn cone_type(lattice: &Lattice, gens: &[LatticePoint; 3]) -> Result<GroupAction> {
    let mut a: Mat3 = [[0; 3]; 3];
    for (row, p) in a.iter_mut().zip(gens) {
        let s = lattice.scaled(p).ok_or(Error::NotInLattice(*p))?;
        *row = lattice
            .basis_coords_scaled(&s)
            .ok_or(Error::NotInLattice(*p))?;
    }
    let snf = intmat::smith(&a);
    let [d0, d1, m] = snf.diag;
    if m == 0 {
        return Err(Error::Degenerate);
    }
    if d0 != 1 || d1 != 1 {
        return Err(Error::NonCyclicQuotient(snf.diag));
    }
    // lattice points are lambda A with lambda in Z^3 A^-1 = Z^3 + Z u_3 / m
    let w = snf.u[2].map(|x| x.rem_euclid(m));
    GroupAction::new(m, w)
}

/// The fan read in the lattice of `g`, with its singular cones typed.
pub fn relattice(f: &Fan, g: &GroupAction) -> Result<(Fan, Vec<ResidualSingularity>)> {
    let fine = f.with_lattice(Lattice::new(g)?)?;
    let mut residuals = Vec::new();
    for c in fine.cones() {
        if fine.multiplicity(c) > 1 {
            let cone = fine.cone_points(c);
            let kind = cone_type(fine.lattice(), &cone)?;
            residuals.push(ResidualSingularity { cone, kind });
        }
    }
    Ok((fine, residuals))
}

/// Smooth cones resolving the octant of `t`, in octant coordinates:
/// Fujiki-Oka for terminal types, the iterated construction for
/// Gorenstein ones.
fn type_cones(t: &GroupAction) -> Result<Vec<[LatticePoint; 3]>> {
    if t.order() == 1 || is_terminal(t) {
        return fujiki_oka_cones(t);
    }
    if is_gorenstein(t) {
        let (fan, _) = iterated_fo(t)?;
        return Ok(fan.cones().iter().map(|c| fan.cone_points(c)).collect());
    }
    Err(Error::ResidualNotTerminal(*t))
}

/// Replaces each residual cone by a resolution of its type, mapped in by
/// `p -> sum_i p_i g_i`.
///
/// Faces are consistent without a separate pass: the construction
/// restricted to a 2-face is the minimal resolution of that face, which
/// depends only on the face.
pub fn resolve_residual(f: &Fan, residuals: &[ResidualSingularity]) -> Result<Fan> {
    if residuals.is_empty() {
        return Ok(f.clone());
    }
    let lattice = f.lattice();
    let mut cones: Vec<[LatticePoint; 3]> = f
        .cones()
        .iter()
        .filter(|c| f.multiplicity(c) == 1)
        .map(|c| f.cone_points(c))
        .collect();
    for res in residuals {
        for local in type_cones(&res.kind)? {
            let mapped = local.map(|p| {
                let q = weighted_sum(&res.cone, &p.num(), p.den());
                debug_assert!(lattice.is_primitive(&q), "{q} from {p}");
                q
            });
            cones.push(mapped);
        }
    }
    let out = Fan::from_cone_points(lattice.clone(), cones);
    out.check_fan_condition()?;
    assert!(out.is_smooth(), "residual resolution is not smooth");
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub smooth: bool,
    pub crepant: bool,
    pub hilbert: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub class: ClassLabel,
    pub subgroup: Option<GroupAction>,
    pub stage1: FanJson,
    pub residuals: Vec<ResidualSingularity>,
    #[serde(rename = "final")]
    pub final_fan: FanJson,
    pub verdicts: Verdicts,
    pub stats: JuniorStats,
    /// Rays of the final fan outside the Hilbert basis, with their ages.
    pub non_hilbert_rays: Vec<(LatticePoint, String)>,
}

/// The iterated Fujiki-Oka resolution of a canonical cyclic quotient.
pub fn iterated_fo(g: &GroupAction) -> Result<(Fan, Report)> {
    let class = match_class(g);
    let lattice = Lattice::new(g)?;
    let (subgroup, stage1, residuals, fin) = match class {
        ClassLabel::NotCanonical => return Err(Error::NotCanonical(*g)),
        _ if g.order() == 1 => {
            let f = Fan::positive_octant(g)?;
            (None, f.clone(), Vec::new(), f)
        }
        ClassLabel::IIAlpha { .. } => {
            let f = fujiki_oka_resolve(g, &preferred_choice(g)?)?;
            (None, f.clone(), Vec::new(), f)
        }
        ClassLabel::I => match preferred_choice(g) {
            Ok(choice) => {
                let f = fujiki_oka_resolve(g, &choice)?;
                (None, f.clone(), Vec::new(), f)
            }
            Err(Error::NoSemiUnimodularGenerator(_)) => {
                // a subgroup of prime order is semi-isolated
                let r = g.order();
                let p = (2..=r).find(|p| r % p == 0).expect("r > 1");
                let h = g.subgroup(r / p)?;
                let (stage1, residuals, fin) = decompose(g, &h, false)?;
                (Some(h), stage1, residuals, fin)
            }
            Err(e) => return Err(e),
        },
        _ => {
            let dec = sl_subgroup(g)?;
            let (stage1, residuals, fin) = decompose(g, &dec.subgroup, true)?;
            (Some(dec.subgroup), stage1, residuals, fin)
        }
    };
    debug_assert_eq!(fin.lattice(), &lattice);
    let report = report(class, subgroup, &stage1, residuals, &fin)?;
    Ok((fin, report))
}

/// Stage one over `h`, then the residual resolution in the lattice of `g`.
fn decompose(
    g: &GroupAction,
    h: &GroupAction,
    terminal_residuals: bool,
) -> Result<(Fan, Vec<ResidualSingularity>, Fan)> {
    let stage1 = fujiki_oka_resolve(h, &preferred_choice(h)?)?;
    assert!(
        discrepancies(&stage1).crepant,
        "stage one over {h} is not crepant"
    );
    let (fine, residuals) = relattice(&stage1, g)?;
    if terminal_residuals {
        if let Some(res) = residuals.iter().find(|res| !is_terminal(&res.kind)) {
            return Err(Error::ResidualNotTerminal(res.kind));
        }
    }
    let fin = resolve_residual(&fine, &residuals)?;
    Ok((stage1, residuals, fin))
}

fn report(
    class: ClassLabel,
    subgroup: Option<GroupAction>,
    stage1: &Fan,
    residuals: Vec<ResidualSingularity>,
    fin: &Fan,
) -> Result<Report> {
    let hilb = hilbert_basis(fin.lattice());
    let non_hilbert_rays = fin
        .rays()
        .iter()
        .filter(|p| !hilb.contains(p))
        .map(|p| (*p, age_string(p.age())))
        .collect();
    Ok(Report {
        class,
        subgroup,
        stage1: stage1.to_json(),
        residuals,
        final_fan: fin.to_json(),
        verdicts: Verdicts {
            smooth: fin.is_smooth(),
            crepant: discrepancies(fin).crepant,
            hilbert: is_hilb_desingularization(fin).is_yes(),
        },
        stats: fin.junior_stats()?,
        non_hilbert_rays,
    })
}

fn age_string(a: Rational) -> String {
    if a.is_integer() {
        a.to_integer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::semi_unimodular_generators;
    use crate::fujiki_oka::fujiki_oka_default;
    use crate::lattice::group_points;
    use num_integer::Integer;

    fn g(r: i64, w: [i64; 3]) -> GroupAction {
        GroupAction::new(r, w).unwrap()
    }

    #[test]
    fn subgroups() {
        assert_eq!(
            sl_subgroup(&g(8, [1, 5, 6])).unwrap().subgroup,
            g(4, [1, 1, 2])
        );
        assert_eq!(
            sl_subgroup(&g(9, [1, 4, 7])).unwrap().subgroup,
            g(3, [1, 1, 1])
        );
        assert_eq!(
            sl_subgroup(&g(14, [1, 9, 11])).unwrap().subgroup,
            g(7, [1, 2, 4])
        );
        let d = sl_subgroup(&g(6, [1, 5, 2])).unwrap();
        assert_eq!(d.subgroup, g(2, [1, 1, 0]));
        assert_eq!(d.index, 3);
        assert!(Lattice::new(&d.subgroup)
            .unwrap()
            .is_sublattice_of(&Lattice::new(&d.group).unwrap()));
        assert_eq!(
            sl_subgroup(&g(7, [1, 2, 5])),
            Err(Error::NoDecomposition(g(7, [1, 2, 5])))
        );
        assert_eq!(
            sl_subgroup(&g(3, [1, 1, 0])),
            Err(Error::NotCanonical(g(3, [1, 1, 0])))
        );
    }

    /// Type of a cone by enumerating lattice points in its fundamental
    /// parallelepiped: the cone coordinates of every such point are
    /// multiples of one of them.
    fn enumerated_type(lat: &Lattice, gens: &[LatticePoint; 3]) -> (i64, Vec<[Rational; 3]>) {
        let m = lat.multiplicity(gens.each_ref()).unwrap();
        let den = m * lat.index();
        let mut found = Vec::new();
        for i in 0..den {
            for j in 0..den {
                for k in 0..den {
                    let p = weighted_sum(gens, &[i, j, k], den);
                    if lat.contains(&p) {
                        found.push([i, j, k].map(|x| Rational::new(x, den)));
                    }
                }
            }
        }
        (m, found)
    }

    #[test]
    fn cone_types_agree_with_enumeration() {
        let grp = g(9, [1, 4, 7]);
        let stage1 = fujiki_oka_default(&g(3, [1, 1, 1])).unwrap();
        let (fine, residuals) = relattice(&stage1, &grp).unwrap();
        assert!(!residuals.is_empty());
        for c in fine.cones() {
            assert!(3 % fine.multiplicity(c) == 0);
        }
        for res in &residuals {
            assert_eq!(res.kind.order(), 3);
            assert!(is_terminal(&res.kind), "{}", res.kind);
            let (m, pts) = enumerated_type(fine.lattice(), &res.cone);
            assert_eq!(m, 3);
            let gen: Vec<Rational> = res
                .kind
                .weights()
                .iter()
                .map(|&w| Rational::new(w, 3))
                .collect();
            let multiples: Vec<[Rational; 3]> = (0..3)
                .map(|t| [0, 1, 2].map(|i| (gen[i] * Rational::from_integer(t)).fract()))
                .collect();
            let mut pts = pts;
            pts.sort();
            let mut multiples = multiples;
            multiples.sort();
            assert_eq!(pts, multiples);
        }
    }

    #[test]
    fn cone_type_of_octant() {
        let grp = g(11, [1, 2, 8]);
        let lat = Lattice::new(&grp).unwrap();
        let t = cone_type(&lat, &[0, 1, 2].map(LatticePoint::unit)).unwrap();
        assert_eq!(t.order(), 11);
        assert!(grp.units().any(|u| grp.power(u) == t));
    }

    #[test]
    fn non_cyclic_quotient_is_reported() {
        // 2e1, 2e2, e3 in Z^3: quotient Z/2 x Z/2
        let lat = Lattice::new(&GroupAction::trivial()).unwrap();
        let gens = [
            LatticePoint::integral([2, 0, 0]),
            LatticePoint::integral([0, 2, 0]),
            LatticePoint::unit(2),
        ];
        assert_eq!(
            cone_type(&lat, &gens),
            Err(Error::NonCyclicQuotient([1, 2, 2]))
        );
    }

    #[test]
    fn main_examples() {
        for (r, w) in [
            (9, [1, 4, 7]),
            (14, [1, 9, 11]),
            (8, [1, 5, 6]),
            (12, [1, 7, 10]),
            (6, [1, 5, 2]),
        ] {
            let grp = g(r, w);
            let (f, rep) = iterated_fo(&grp).unwrap();
            assert!(rep.verdicts.smooth && rep.verdicts.hilbert, "{grp}");
            assert!(rep.non_hilbert_rays.is_empty());
            assert!(rep.subgroup.is_some());
            f.check_fan_condition().unwrap();
            for res in &rep.residuals {
                assert!(is_terminal(&res.kind));
            }
        }
    }

    #[test]
    fn terminal_and_gorenstein_inputs() {
        let grp = g(7, [1, 2, 5]);
        let (f, rep) = iterated_fo(&grp).unwrap();
        assert_eq!(f, fujiki_oka_resolve(&grp, &grp).unwrap());
        assert!(rep.verdicts.hilbert && rep.subgroup.is_none());

        let grp = g(6, [1, 2, 3]);
        let (_, rep) = iterated_fo(&grp).unwrap();
        assert!(rep.verdicts.crepant && rep.verdicts.hilbert);
        assert!(rep.residuals.is_empty());

        let t = GroupAction::trivial();
        let (f, _) = iterated_fo(&t).unwrap();
        assert_eq!(f, Fan::positive_octant(&t).unwrap());

        assert_eq!(
            iterated_fo(&g(3, [1, 1, 0])).unwrap_err(),
            Error::NotCanonical(g(3, [1, 1, 0]))
        );
    }

    #[test]
    fn gorenstein_without_semi_unimodular_generator() {
        // the smallest SL cyclic group with no weight coprime to the order
        let grp = g(30, [2, 3, 25]);
        assert!(semi_unimodular_generators(&grp).is_empty());
        let (f, rep) = iterated_fo(&grp).unwrap();
        assert!(rep.verdicts.crepant && rep.verdicts.hilbert, "{grp}");
        f.check_fan_condition().unwrap();
        let h = rep.subgroup.unwrap();
        assert!(h.order().gcd(&grp.order()) == h.order());
    }

    #[test]
    fn class_two_beta_and_three_small() {
        for r in 2..=24i64 {
            for a in 0..r {
                for b in a..r {
                    let grp = g(r, [1, a, b]);
                    if matches!(
                        match_class(&grp),
                        ClassLabel::IIBeta { .. } | ClassLabel::III { .. }
                    ) {
                        let (_, rep) = iterated_fo(&grp).unwrap();
                        assert!(rep.verdicts.smooth && rep.verdicts.hilbert, "{grp}");
                    }
                }
            }
        }
    }

    #[test]
    fn hilbert_basis_points_of_stage_one_stay_primitive() {
        let grp = g(14, [1, 9, 11]);
        let (_, rep) = iterated_fo(&grp).unwrap();
        let hilb = hilbert_basis(&Lattice::new(&grp).unwrap());
        let stage1 = Fan::from_json(&rep.stage1).unwrap();
        for p in stage1.rays() {
            let q = Lattice::new(&grp).unwrap().primitive(p);
            assert!(hilb.contains(&q), "{q}");
        }
        let v = group_points(&grp);
        assert!(hilb.contains(&v[2]));
    }
}
