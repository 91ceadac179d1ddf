//! Circles Phi(a) + b, the circularity decision, and tangency families.
//!
//! Translating the orbits of a subgroup yields a geometry of "circles" with
//! a radius class and a center. A pair is circular when any three distinct
//! points lie on at most one circle while any two points lie on at least
//! two; circular pairs are where disks and their designs become available.
//! Families collect the circles of one radius class centered along one
//! orbit; their members all meet each other in the same tangent/secant
//! pattern, which the disk construction exploits.

use crate::error::Error;
use crate::ferrero::{Orbit, PhiGroup};
use crate::field::FieldElement;
use std::cmp::Ordering;
use std::collections::HashMap;

/// A circle: the orbit of a radius class translated to a center.
///
/// The pair (radius representative, center) is a canonical form. Two
/// circles are setwise equal exactly when their canonical forms agree: the
/// k >= 2 points of Phi(a) + b sum to k*b, because a nontrivial subgroup of
/// units sums to zero, so the point set pins down the center and then the
/// radius class.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Circle {
    p: u64,
    generator: u64,
    radius_rep: FieldElement,
    center: FieldElement,
    points: Vec<FieldElement>,
}

impl Circle {
    /// Canonical representative of the radius class.
    pub fn radius_rep(&self) -> FieldElement {
        self.radius_rep
    }

    pub fn center(&self) -> FieldElement {
        self.center
    }

    /// The |Phi| points, ascending.
    pub fn points(&self) -> &[FieldElement] {
        &self.points
    }

    pub fn contains(&self, x: FieldElement) -> bool {
        self.points.binary_search(&x).is_ok()
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn generator(&self) -> u64 {
        self.generator
    }
}

/// The circle Phi(a) + b. The radius a must be nonzero; any radius in the
/// same orbit produces the same circle.
pub fn circle(phi: &PhiGroup, a: FieldElement, b: FieldElement) -> Result<Circle, Error> {
    if a.is_zero() {
        return Err(Error::ZeroRadius);
    }
    let mut points: Vec<FieldElement> = phi.elements().iter().map(|&f| f * a + b).collect();
    points.sort_unstable();
    Ok(Circle {
        p: phi.field().modulus(),
        generator: phi.generator().value(),
        radius_rep: phi.orbit_rep(a),
        center: b,
        points,
    })
}

/// Every circle of the pair, one per (radius class, center), ordered by
/// ascending radius representative and then center. Exactly p(p-1)/k
/// circles, with no deduplication needed thanks to the canonical form.
pub fn all_circles(phi: &PhiGroup) -> Vec<Circle> {
    let mut out = Vec::with_capacity(((phi.field().modulus() - 1) / phi.order()) as usize);
    for rep in phi.nonzero_orbit_reps() {
        for b in phi.field().elements() {
            out.push(circle(phi, rep, b).expect("orbit representatives are nonzero"));
        }
    }
    out
}

/// Outcome of the circularity decision, with a witness on failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircularityReport {
    pub circular: bool,
    pub witness: Option<CircularityWitness>,
}

/// How a pair fails circularity. Circles are identified by their canonical
/// (radius representative, center) form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CircularityWitness {
    /// Three distinct points lying on two distinct circles.
    TripleInTwoCircles {
        triple: [u64; 3],
        first: (u64, u64),
        second: (u64, u64),
    },
    /// Two distinct points covered by fewer than two circles.
    PairInFewCircles { pair: [u64; 2], circles: usize },
}

/// Decides circularity: every three distinct points on at most one circle,
/// every two distinct points on at least two.
///
/// Builds an index from point pairs to the circles through them. The first
/// condition is equivalent to distinct circles sharing at most two points;
/// since two circles sharing t points co-occur in t(t-1)/2 pair lists, a
/// per-circle-pair counter reaching three certifies a shared triple. The
/// second condition reads directly off each pair's list. Pairs are scanned
/// in ascending order, so the reported witness is deterministic.
pub fn is_circular(phi: &PhiGroup) -> CircularityReport {
    let p = phi.field().modulus() as usize;
    let circles = all_circles(phi);
    // triangular index over pairs x < y
    let pair_index = |x: usize, y: usize| x * (2 * p - x - 1) / 2 + (y - x - 1);
    let mut through: Vec<Vec<u32>> = vec![Vec::new(); p * (p - 1) / 2];
    for (ci, c) in circles.iter().enumerate() {
        let pts = c.points();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let (x, y) = (pts[i].value() as usize, pts[j].value() as usize);
                through[pair_index(x, y)].push(ci as u32);
            }
        }
    }
    let mut shared: HashMap<(u32, u32), u32> = HashMap::new();
    for x in 0..p {
        for y in x + 1..p {
            let list = &through[pair_index(x, y)];
            if list.len() < 2 {
                return CircularityReport {
                    circular: false,
                    witness: Some(CircularityWitness::PairInFewCircles {
                        pair: [x as u64, y as u64],
                        circles: list.len(),
                    }),
                };
            }
            for i in 0..list.len() {
                for j in i + 1..list.len() {
                    let key = (list[i], list[j]);
                    let count = shared.entry(key).or_insert(0);
                    *count += 1;
                    if *count == 3 {
                        let a = &circles[key.0 as usize];
                        let b = &circles[key.1 as usize];
                        let common = intersect(a, b).expect("circles share a pair");
                        return CircularityReport {
                            circular: false,
                            witness: Some(CircularityWitness::TripleInTwoCircles {
                                triple: [
                                    common[0].value(),
                                    common[1].value(),
                                    common[2].value(),
                                ],
                                first: (a.radius_rep.value(), a.center.value()),
                                second: (b.radius_rep.value(), b.center.value()),
                            }),
                        };
                    }
                }
            }
        }
    }
    CircularityReport {
        circular: true,
        witness: None,
    }
}

/// The largest group order compatible with circularity on v points: the
/// greatest k with (2k - 3)^2 <= 4v - 7, which is the integer form of
/// k <= (3 + sqrt(4v - 7)) / 2. Computed without floating point.
pub fn circularity_bound(v: u64) -> u64 {
    assert!(v >= 3, "a geometry needs at least three points");
    (3 + (4 * v - 7).isqrt()) / 2
}

/// The family E^r_c: one circle of radius class r per center in the orbit
/// of c, ordered by ascending center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleFamily {
    radius_rep: FieldElement,
    center_orbit_rep: FieldElement,
    circles: Vec<Circle>,
}

impl CircleFamily {
    pub fn radius_rep(&self) -> FieldElement {
        self.radius_rep
    }

    pub fn center_orbit_rep(&self) -> FieldElement {
        self.center_orbit_rep
    }

    pub fn circles(&self) -> &[Circle] {
        &self.circles
    }
}

/// Builds E^r_c for nonzero r and c; the family has exactly |Phi| members.
pub fn family(phi: &PhiGroup, r: FieldElement, c: FieldElement) -> Result<CircleFamily, Error> {
    if r.is_zero() || c.is_zero() {
        return Err(Error::ZeroFamilyParameter {
            radius: r.value(),
            center: c.value(),
        });
    }
    let circles = phi
        .orbit(c)
        .elements()
        .iter()
        .map(|&b| circle(phi, r, b))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CircleFamily {
        radius_rep: phi.orbit_rep(r),
        center_orbit_rep: phi.orbit_rep(c),
        circles,
    })
}

/// Setwise intersection of two circles of the same pair, ascending.
pub fn intersect(a: &Circle, b: &Circle) -> Result<Vec<FieldElement>, Error> {
    if a.p != b.p || a.generator != b.generator {
        return Err(Error::PairMismatch {
            left_p: a.p,
            left_g: a.generator,
            right_p: b.p,
            right_g: b.generator,
        });
    }
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.points.len() && j < b.points.len() {
        match a.points[i].cmp(&b.points[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                out.push(a.points[i]);
                i += 1;
                j += 1;
            }
        }
    }
    Ok(out)
}

/// Counts how the other members of a family meet one member: (tangent,
/// secant) = (circles sharing exactly one point, circles sharing two).
/// Within a family this profile is the same for every member.
pub fn tangency_profile(family: &CircleFamily, member: &Circle) -> Result<(usize, usize), Error> {
    if !family.circles.contains(member) {
        return Err(Error::CircleNotInFamily);
    }
    let mut tangent = 0;
    let mut secant = 0;
    for other in &family.circles {
        if other == member {
            continue;
        }
        match intersect(member, other)?.len() {
            1 => tangent += 1,
            2 => secant += 1,
            _ => {}
        }
    }
    Ok((tangent, secant))
}

/// |A ∩ O| for each member A of the family, in member order. Across a
/// family this count is constant for any fixed orbit O.
pub fn orbit_intersection_sizes(family: &CircleFamily, orbit: &Orbit) -> Vec<usize> {
    family
        .circles
        .iter()
        .map(|c| c.points.iter().filter(|&&x| orbit.contains(x)).count())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn phi(p: u64, g: u64) -> PhiGroup {
        PhiGroup::new(PrimeField::new(p).unwrap(), g).unwrap()
    }

    fn points(c: &Circle) -> Vec<u64> {
        c.points().iter().map(|x| x.value()).collect()
    }

    #[test]
    fn circle_examples() {
        let g = phi(61, 11);
        let f = g.field().clone();
        let unit = circle(&g, f.element(1), f.zero()).unwrap();
        assert_eq!(points(&unit), vec![1, 11, 50, 60]);
        assert_eq!(unit.radius_rep().value(), 1);
        // any radius in the orbit gives the same canonical circle
        assert_eq!(circle(&g, f.element(11), f.zero()).unwrap(), unit);
        let shifted = circle(&g, f.element(1), f.element(3)).unwrap();
        assert_eq!(points(&shifted), vec![2, 4, 14, 53]);
        assert_eq!(
            circle(&g, f.zero(), f.zero()).unwrap_err(),
            Error::ZeroRadius
        );
    }

    #[test]
    fn circle_counts() {
        assert_eq!(all_circles(&phi(61, 11)).len(), 915);
        assert_eq!(all_circles(&phi(61, 9)).len(), 732);
    }

    #[test]
    fn canonical_form_is_a_bijection() {
        // distinct (radius class, center) pairs give distinct point sets
        let g = phi(61, 11);
        let circles = all_circles(&g);
        let mut seen = std::collections::HashSet::new();
        for c in &circles {
            assert!(seen.insert(c.points().to_vec()));
        }
        assert_eq!(seen.len(), circles.len());
    }

    #[test]
    fn the_three_z61_groups_are_circular() {
        for g in [11, 9, 13] {
            let report = is_circular(&phi(61, g));
            assert!(report.circular, "generator {g}");
            assert_eq!(report.witness, None);
        }
    }

    #[test]
    fn order_two_groups_are_never_circular() {
        let report = is_circular(&phi(61, 60));
        assert!(!report.circular);
        match report.witness.unwrap() {
            CircularityWitness::PairInFewCircles { pair, circles } => {
                assert_eq!(pair, [0, 1]);
                assert_eq!(circles, 1);
            }
            other => panic!("expected an undercovered pair, got {other:?}"),
        }
    }

    #[test]
    fn triple_witnesses_are_real() {
        // order 6 in Z_13: <4> has order 6, beyond the bound of 4
        let g = phi(13, 4);
        assert_eq!(g.order(), 6);
        let report = is_circular(&g);
        assert!(!report.circular);
        if let Some(CircularityWitness::TripleInTwoCircles {
            triple,
            first,
            second,
        }) = report.witness
        {
            assert_ne!(first, second);
            let f = g.field().clone();
            let a = circle(&g, f.element(first.0), f.element(first.1)).unwrap();
            let b = circle(&g, f.element(second.0), f.element(second.1)).unwrap();
            for t in triple {
                assert!(a.contains(f.element(t)) && b.contains(f.element(t)));
            }
        } else {
            panic!("expected a shared triple witness");
        }
    }

    #[test]
    fn bound_values() {
        assert_eq!(circularity_bound(61), 9);
        assert_eq!(circularity_bound(7), 3);
        assert_eq!(circularity_bound(3), 2);
        // consistency: group orders of circular pairs stay within the bound
        assert!(phi(61, 11).order() <= circularity_bound(61));
    }

    #[test]
    fn family_shape() {
        let g = phi(61, 11);
        let f = g.field().clone();
        let fam = family(&g, f.element(31), f.element(31)).unwrap();
        assert_eq!(fam.circles().len(), 4);
        let centers: Vec<u64> = fam.circles().iter().map(|c| c.center().value()).collect();
        assert_eq!(centers, vec![25, 30, 31, 36]);
        assert_eq!(fam.radius_rep().value(), 25);
        assert!(matches!(
            family(&g, f.zero(), f.element(31)).unwrap_err(),
            Error::ZeroFamilyParameter { .. }
        ));
    }

    #[test]
    fn intersection_examples() {
        let g = phi(61, 11);
        let f = g.field().clone();
        let unit = circle(&g, f.element(1), f.zero()).unwrap();
        // the circle of radius class 31 centered at 31 touches the unit
        // circle exactly at 2 * 31 = 1
        let tangent = circle(&g, f.element(31), f.element(31)).unwrap();
        let meet = intersect(&tangent, &unit).unwrap();
        assert_eq!(meet, vec![f.element(1)]);
        // same radius class, neighboring center: disjoint
        let shifted = circle(&g, f.element(1), f.element(1)).unwrap();
        assert_eq!(intersect(&unit, &shifted).unwrap(), vec![]);
        assert_eq!(intersect(&unit, &unit).unwrap().len(), 4);
        // circles over different pairs refuse to intersect
        let other = circle(&phi(61, 9), f.element(1), f.zero()).unwrap();
        assert!(matches!(
            intersect(&unit, &other).unwrap_err(),
            Error::PairMismatch { .. }
        ));
    }

    #[test]
    fn tangency_profile_is_uniform_on_the_sample_family() {
        let g = phi(61, 11);
        let f = g.field().clone();
        let fam = family(&g, f.element(31), f.element(31)).unwrap();
        for member in fam.circles() {
            assert_eq!(tangency_profile(&fam, member).unwrap(), (1, 2));
        }
        let outsider = circle(&g, f.element(1), f.zero()).unwrap();
        assert_eq!(
            tangency_profile(&fam, &outsider).unwrap_err(),
            Error::CircleNotInFamily
        );
    }

    #[test]
    fn orbit_cross_sections_are_constant() {
        let g = phi(61, 11);
        let f = g.field().clone();
        let fam = family(&g, f.element(31), f.element(31)).unwrap();
        let expect = [(1u64, 1usize), (2, 0), (3, 0), (5, 2), (31, 0)];
        for (rep, size) in expect {
            let orbit = g.orbit(f.element(rep));
            let sizes = orbit_intersection_sizes(&fam, &orbit);
            assert_eq!(sizes, vec![size; 4], "orbit of {rep}");
        }
    }

    #[test]
    fn families_are_stable_under_the_group_action() {
        let g = phi(61, 11);
        let f = g.field().clone();
        let fam = family(&g, f.element(31), f.element(31)).unwrap();
        for &el in g.elements() {
            for member in fam.circles() {
                let mapped: Vec<FieldElement> =
                    member.points().iter().map(|&x| el * x).collect();
                let mut mapped_sorted = mapped.clone();
                mapped_sorted.sort_unstable();
                let image_center = el * member.center();
                let image = fam
                    .circles()
                    .iter()
                    .find(|c| c.center() == image_center)
                    .expect("the image center stays on the center orbit");
                assert_eq!(image.points(), mapped_sorted.as_slice());
            }
        }
    }
}
