//! Planar nearring multiplications from orbit projections, double planar
//! pairs, and partner-dependent interior points.
//!
//! A multiplication a * b = f(a) b on the field becomes a planar nearring
//! when f projects the units onto the subgroup Phi multiplicatively and
//! fixes Phi pointwise. The power map f(x) = x^m does exactly that when m
//! is the idempotent (mod p - 1) that is 1 mod k and 0 mod (p-1)/k, which
//! exists precisely when k and (p-1)/k are coprime. Every nearring and
//! planarity axiom is checked exhaustively at construction rather than
//! assumed.
//!
//! Two such nearrings over one field form a double planar pair when each
//! multiplication distributes over the other from the left; the pair then
//! defines interior points of a circle through the second multiplication's
//! rays. A point c off the circle counts as interior when no ray from c
//! cuts the circle twice, that is, when the circle points fall into
//! pairwise distinct partner classes as seen from c.

use crate::error::Error;
use crate::ferrero::PhiGroup;
use crate::field::{gcd, invert_mod, FieldElement};
use crate::geometry::{circle, Circle};
use crate::disks;

/// A planar nearring (Z_p, +, *) with a * b = f(a) b for the projection
/// f(x) = x^m onto the group Phi (and f(0) = 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionNearring {
    phi: PhiGroup,
    omega: FieldElement,
    exponent: u64,
    f_table: Vec<u32>,
}

impl ProjectionNearring {
    /// Builds the nearring for the given group and verifies every axiom
    /// exhaustively: the projection fixes the group pointwise, maps the
    /// units onto it multiplicatively, the multiplication is associative
    /// and left distributive, the planarity conditions hold, and the
    /// blocks N* a + b are exactly the circles. The projection exponent
    /// exists only when |Phi| and (p-1)/|Phi| are coprime.
    pub fn new(phi: PhiGroup) -> Result<ProjectionNearring, Error> {
        let p = phi.field().modulus();
        let k = phi.order();
        let t = (p - 1) / k;
        if gcd(k, t) != 1 {
            return Err(Error::NoProjection {
                order: k,
                cofactor: t,
            });
        }
        let u = invert_mod(t % k, k).expect("t is invertible mod k when gcd(k, t) = 1");
        let exponent = t * u;
        let omega = phi.field().primitive_root();
        let mut f_table = vec![0u32; p as usize];
        for x in 1..p {
            f_table[x as usize] = phi.field().element(x).pow(exponent).value() as u32;
        }
        let nearring = ProjectionNearring {
            phi,
            omega,
            exponent,
            f_table,
        };
        nearring.verify()?;
        Ok(nearring)
    }

    pub fn phi(&self) -> &PhiGroup {
        &self.phi
    }

    /// The canonical (smallest) primitive root of the field.
    pub fn omega(&self) -> FieldElement {
        self.omega
    }

    /// The projection exponent m with f(x) = x^m.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// The projection: f(0) = 0, f(x) = x^m in Phi otherwise.
    pub fn f(&self, a: FieldElement) -> FieldElement {
        self.phi.field().element(self.f_table[a.value() as usize] as u64)
    }

    /// The nearring product a * b = f(a) b.
    pub fn multiply(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.f(a) * b
    }

    /// Number of equivalent-multiplier classes: the zero class plus one
    /// class per group element, |Phi| + 1 in total.
    pub fn multiplier_class_count(&self) -> u64 {
        self.phi.order() + 1
    }

    fn verify(&self) -> Result<(), Error> {
        let field = self.phi.field().clone();
        let p = field.modulus();
        let violation = |law: &'static str, a: u64, b: u64, c: u64| {
            Err(Error::AxiomViolation { law, a, b, c })
        };

        // the projection fixes the group pointwise
        for &g in self.phi.elements() {
            if self.f(g) != g {
                return violation("projection fixes the group pointwise", g.value(), 0, 0);
            }
        }
        // the image of the units is exactly the group
        let mut attained = vec![false; p as usize];
        for x in 1..p {
            let fx = field.element(self.f_table[x as usize] as u64);
            if !self.phi.contains(fx) {
                return violation("projection image is the group", x, fx.value(), 0);
            }
            attained[fx.value() as usize] = true;
        }
        for &g in self.phi.elements() {
            if !attained[g.value() as usize] {
                return violation("projection image is the group", g.value(), 0, 0);
            }
        }
        // multiplicativity of the projection
        for x in 1..p {
            for y in 1..p {
                let (ex, ey) = (field.element(x), field.element(y));
                if self.f(ex * ey) != self.f(ex) * self.f(ey) {
                    return violation("projection is multiplicative", x, y, 0);
                }
            }
        }
        // associativity and left distributivity over every triple
        for a in 0..p {
            for b in 0..p {
                for c in 0..p {
                    let (ea, eb, ec) = (field.element(a), field.element(b), field.element(c));
                    let left = self.multiply(self.multiply(ea, eb), ec);
                    let right = self.multiply(ea, self.multiply(eb, ec));
                    if left != right {
                        return violation("associativity", a, b, c);
                    }
                    let sum = self.multiply(ea, eb + ec);
                    let split = self.multiply(ea, eb) + self.multiply(ea, ec);
                    if sum != split {
                        return violation("left distributivity", a, b, c);
                    }
                }
            }
        }
        // planarity: at least three multiplier classes, and a x = b x + c
        // uniquely solvable whenever the multipliers differ
        if self.multiplier_class_count() < 3 {
            return violation("at least three multiplier classes", self.phi.order(), 0, 0);
        }
        let mut multipliers: Vec<FieldElement> = self.phi.elements().to_vec();
        multipliers.push(field.zero());
        for &u in &multipliers {
            for &w in &multipliers {
                if u == w {
                    continue;
                }
                for c in 0..p {
                    let ec = field.element(c);
                    let mut solutions = 0;
                    for x in 0..p {
                        let ex = field.element(x);
                        if u * ex == w * ex + ec {
                            solutions += 1;
                        }
                    }
                    if solutions != 1 {
                        return violation("unique planar solution", u.value(), w.value(), c);
                    }
                }
            }
        }
        // blocks N* a + b are the circles: N* a is the orbit of a
        for a in 1..p {
            let ea = field.element(a);
            let mut block: Vec<FieldElement> =
                (1..p).map(|x| self.multiply(field.element(x), ea)).collect();
            block.sort_unstable();
            block.dedup();
            if block != self.phi.orbit(ea).elements() {
                return violation("blocks are the orbits", a, 0, 0);
            }
        }
        Ok(())
    }
}

/// First triple violating one of the two mutual distributive laws.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MutualLawWitness {
    /// Which law broke: "first over second" or "second over first".
    pub law: &'static str,
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

/// Outcome of the mutual distributivity check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DoublePlanarReport {
    pub holds: bool,
    pub witness: Option<MutualLawWitness>,
}

fn violates_mutual(
    outer: &ProjectionNearring,
    inner: &ProjectionNearring,
    law: &'static str,
) -> Option<MutualLawWitness> {
    let field = outer.phi().field().clone();
    let p = field.modulus();
    for a in 0..p {
        let ea = field.element(a);
        for b in 0..p {
            let eb = field.element(b);
            let ab = outer.multiply(ea, eb);
            for c in 0..p {
                let ec = field.element(c);
                let lhs = outer.multiply(ea, inner.multiply(eb, ec));
                let rhs = inner.multiply(ab, outer.multiply(ea, ec));
                if lhs != rhs {
                    return Some(MutualLawWitness { law, a, b, c });
                }
            }
        }
    }
    None
}

/// Checks both mutual left distributive laws over all p^3 triples:
/// a *1 (b *2 c) = (a *1 b) *2 (a *1 c) and the law with the roles
/// swapped. Scans triples in ascending order, first law first, so the
/// reported witness is deterministic.
pub fn is_double_planar(
    first: &ProjectionNearring,
    second: &ProjectionNearring,
) -> Result<DoublePlanarReport, Error> {
    if first.phi().field() != second.phi().field() {
        return Err(Error::MixedFields {
            left: first.phi().field().modulus(),
            right: second.phi().field().modulus(),
        });
    }
    let witness = violates_mutual(first, second, "first over second")
        .or_else(|| violates_mutual(second, first, "second over first"));
    Ok(DoublePlanarReport {
        holds: witness.is_none(),
        witness,
    })
}

/// Two planar nearrings over one field, each left distributive over the
/// other; construction re-runs the exhaustive mutual check and fails with
/// the violating triple otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoublePlanarPair {
    first: ProjectionNearring,
    second: ProjectionNearring,
}

impl DoublePlanarPair {
    pub fn new(
        first: ProjectionNearring,
        second: ProjectionNearring,
    ) -> Result<DoublePlanarPair, Error> {
        let report = is_double_planar(&first, &second)?;
        if let Some(w) = report.witness {
            return Err(Error::NotDoublePlanar {
                law: w.law,
                a: w.a,
                b: w.b,
                c: w.c,
            });
        }
        Ok(DoublePlanarPair { first, second })
    }

    pub fn first(&self) -> &ProjectionNearring {
        &self.first
    }

    pub fn second(&self) -> &ProjectionNearring {
        &self.second
    }
}

/// Interior of the circle Phi(a) + b as seen through the partner
/// multiplication: the points c off the circle from which every partner
/// ray (Gamma(d) + c for a nonzero class d) meets the circle at most once.
/// Equivalently, the partner classes of x - c over the circle points x are
/// pairwise distinct; a repeated class is a secant ray. Ascending order.
pub fn clay_interior(
    pair: &DoublePlanarPair,
    a: FieldElement,
    b: FieldElement,
) -> Result<Vec<FieldElement>, Error> {
    let phi = pair.first().phi();
    let gamma = pair.second().phi();
    let boundary = circle(phi, a, b)?;
    let field = phi.field().clone();
    let mut interior = Vec::new();
    let mut seen: Vec<FieldElement> = Vec::with_capacity(boundary.points().len());
    'candidates: for c in field.elements() {
        if boundary.contains(c) {
            continue;
        }
        seen.clear();
        for &x in boundary.points() {
            let class = gamma.orbit_rep(x - c);
            if seen.contains(&class) {
                continue 'candidates;
            }
            seen.push(class);
        }
        interior.push(c);
    }
    Ok(interior)
}

/// One partner's view in an interior comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteriorEntry {
    /// Generator of the partner group.
    pub partner_generator: u64,
    /// The partner-dependent interior, ascending.
    pub points: Vec<FieldElement>,
    /// Phi-orbit representatives of the centered interior (x - b), the
    /// compact form the interior is usually quoted in.
    pub orbit_reps: Vec<FieldElement>,
    /// Points in this interior but not in the partner-free one.
    pub only_here: Vec<FieldElement>,
    /// Points in the partner-free interior but not in this one.
    pub only_definitional: Vec<FieldElement>,
}

/// A circle, its partner-free interior (disk minus circle), and one
/// partner-dependent interior per requested partner generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteriorComparison {
    pub circle: Circle,
    /// The interior from the disk definition, with no partner involved.
    pub definitional: Vec<FieldElement>,
    pub entries: Vec<InteriorEntry>,
}

/// Computes the partner-dependent interiors of Phi(a) + b for each partner
/// generator next to the partner-free interior, reporting the symmetric
/// differences. Each partner must form a double planar pair with the base
/// group. Pure reporting: different partners genuinely produce different
/// interior sets, which is the point of the comparison.
pub fn compare_interiors(
    phi: &PhiGroup,
    partner_generators: &[u64],
    a: FieldElement,
    b: FieldElement,
) -> Result<InteriorComparison, Error> {
    let base_circle = circle(phi, a, b)?;
    let definitional = disks::interior(phi, a, b)?;
    let first = ProjectionNearring::new(phi.clone())?;
    let mut entries = Vec::with_capacity(partner_generators.len());
    for &generator in partner_generators {
        let partner = PhiGroup::new(phi.field().clone(), generator)?;
        let second = ProjectionNearring::new(partner)?;
        let pair = DoublePlanarPair::new(first.clone(), second)?;
        let points = clay_interior(&pair, a, b)?;
        let mut orbit_reps: Vec<FieldElement> =
            points.iter().map(|&x| phi.orbit_rep(x - b)).collect();
        orbit_reps.sort_unstable();
        orbit_reps.dedup();
        let only_here: Vec<FieldElement> = points
            .iter()
            .copied()
            .filter(|x| definitional.binary_search(x).is_err())
            .collect();
        let only_definitional: Vec<FieldElement> = definitional
            .iter()
            .copied()
            .filter(|x| points.binary_search(x).is_err())
            .collect();
        entries.push(InteriorEntry {
            partner_generator: generator,
            points,
            orbit_reps,
            only_here,
            only_definitional,
        });
    }
    Ok(InteriorComparison {
        circle: base_circle,
        definitional,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn phi(p: u64, g: u64) -> PhiGroup {
        PhiGroup::new(PrimeField::new(p).unwrap(), g).unwrap()
    }

    fn nearring(p: u64, g: u64) -> ProjectionNearring {
        ProjectionNearring::new(phi(p, g)).unwrap()
    }

    fn values(points: &[FieldElement]) -> Vec<u64> {
        points.iter().map(|x| x.value()).collect()
    }

    #[test]
    fn construction_and_multiplication() {
        let nr = nearring(61, 11);
        let f = nr.phi().field().clone();
        assert_eq!(nr.exponent(), 45);
        assert_eq!(nr.omega().value(), 2);
        assert_eq!(nr.f(f.element(2)).value(), 50);
        assert_eq!(nr.multiply(f.element(2), f.element(3)).value(), 28);
        // the multiplier of a group element is the element itself
        assert_eq!(nr.multiply(f.element(11), f.element(1)).value(), 11);
        for b in 0..61 {
            assert!(nr.multiply(f.zero(), f.element(b)).is_zero());
        }
        assert_eq!(nr.multiplier_class_count(), 5);
        assert_eq!(nearring(61, 9).exponent(), 36);
        assert_eq!(nearring(61, 13).exponent(), 40);
    }

    #[test]
    fn projection_requires_coprime_cofactor() {
        // |<60>| = 2 and 60 / 2 = 30 share the factor 2
        assert_eq!(
            ProjectionNearring::new(phi(61, 60)).unwrap_err(),
            Error::NoProjection { order: 2, cofactor: 30 }
        );
    }

    #[test]
    fn axiom_checks_pass_on_more_pairs() {
        for (p, g) in [(13, 5), (13, 3), (31, 6), (31, 5)] {
            let nr = ProjectionNearring::new(phi(p, g)).unwrap();
            assert!(nr.multiplier_class_count() >= 3);
        }
        // (17, <4>) has order 4 with cofactor 4: no projection exists
        assert_eq!(
            ProjectionNearring::new(phi(17, 4)).unwrap_err(),
            Error::NoProjection { order: 4, cofactor: 4 }
        );
    }

    #[test]
    fn motivating_pairs_are_double_planar() {
        let first = nearring(61, 11);
        for g in [9, 13] {
            let second = nearring(61, g);
            let report = is_double_planar(&first, &second).unwrap();
            assert!(report.holds, "partner {g}");
            assert_eq!(report.witness, None);
            DoublePlanarPair::new(first.clone(), second).unwrap();
        }
    }

    #[test]
    fn a_nearring_is_not_double_planar_with_itself() {
        // the self law forces every multiplier to be 1: with a = 2,
        // b = c = 1 the two sides are f(2) = 50 and f(50) * 50 = 60
        let nr = nearring(61, 11);
        let report = is_double_planar(&nr, &nr).unwrap();
        assert!(!report.holds);
        let w = report.witness.unwrap();
        assert_eq!((w.law, w.a, w.b, w.c), ("first over second", 2, 1, 1));
        let f = nr.phi().field().clone();
        let lhs = nr.multiply(f.element(2), nr.multiply(f.element(1), f.element(1)));
        let rhs = nr.multiply(
            nr.multiply(f.element(2), f.element(1)),
            nr.multiply(f.element(2), f.element(1)),
        );
        assert_eq!((lhs.value(), rhs.value()), (50, 60));
        assert_eq!(
            DoublePlanarPair::new(nr.clone(), nr.clone()).unwrap_err(),
            Error::NotDoublePlanar { law: "first over second", a: 2, b: 1, c: 1 }
        );
    }

    #[test]
    fn some_projection_pairs_fail_the_mutual_laws() {
        // <32> has order 12 and exponent 25; 4 does not divide 25, so the
        // first law cannot kill the first group's multipliers
        let first = nearring(61, 11);
        let second = nearring(61, 32);
        assert_eq!(second.exponent(), 25);
        let report = is_double_planar(&first, &second).unwrap();
        assert!(!report.holds);
        assert_eq!(report.witness.unwrap().law, "first over second");
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a = nearring(61, 11);
        let b = nearring(13, 5);
        assert_eq!(
            is_double_planar(&a, &b).unwrap_err(),
            Error::MixedFields { left: 61, right: 13 }
        );
    }

    fn orbit_union(base: &PhiGroup, reps: &[u64]) -> Vec<u64> {
        let f = base.field().clone();
        let mut out: Vec<u64> = reps
            .iter()
            .flat_map(|&rep| values(base.orbit(f.element(rep)).elements()))
            .collect();
        out.sort_unstable();
        out
    }

    #[test]
    fn partner_interiors_match_the_motivating_example() {
        let base = phi(61, 11);
        let f = base.field().clone();
        let first = ProjectionNearring::new(base.clone()).unwrap();

        let gamma_pair =
            DoublePlanarPair::new(first.clone(), nearring(61, 9)).unwrap();
        let gamma = clay_interior(&gamma_pair, f.element(1), f.zero()).unwrap();
        assert_eq!(
            values(&gamma),
            orbit_union(&base, &[0, 4, 5, 7, 9, 10, 13, 19, 20])
        );
        assert_eq!(gamma.len(), 33);

        let sigma_pair =
            DoublePlanarPair::new(first.clone(), nearring(61, 13)).unwrap();
        let sigma = clay_interior(&sigma_pair, f.element(1), f.zero()).unwrap();
        assert_eq!(
            values(&sigma),
            orbit_union(&base, &[0, 3, 4, 5, 7, 8, 13, 14, 15, 19, 20, 25])
        );
        assert_eq!(sigma.len(), 45);

        // circle points are excluded by definition
        for x in [1u64, 11, 50, 60] {
            assert!(!gamma.contains(&f.element(x)));
            assert!(!sigma.contains(&f.element(x)));
        }
    }

    #[test]
    fn partner_interiors_translate_and_stay_orbit_closed() {
        let base = phi(61, 11);
        let f = base.field().clone();
        let first = ProjectionNearring::new(base.clone()).unwrap();
        let pair = DoublePlanarPair::new(first, nearring(61, 9)).unwrap();
        let at_zero = clay_interior(&pair, f.element(1), f.zero()).unwrap();
        let b = f.element(3);
        let moved = clay_interior(&pair, f.element(1), b).unwrap();
        let mut shifted: Vec<FieldElement> = at_zero.iter().map(|&x| x + b).collect();
        shifted.sort_unstable();
        assert_eq!(moved, shifted);
        for &c in &moved {
            for &g in base.elements() {
                let image = g * (c - b) + b;
                assert!(moved.binary_search(&image).is_ok());
            }
        }
    }

    #[test]
    fn interior_comparison_report() {
        let base = phi(61, 11);
        let f = base.field().clone();
        let report = compare_interiors(&base, &[9, 13], f.element(1), f.zero()).unwrap();
        assert_eq!(values(&report.definitional), vec![0, 5, 6, 55, 56]);
        assert_eq!(report.entries.len(), 2);
        let gamma = &report.entries[0];
        assert_eq!(gamma.partner_generator, 9);
        assert_eq!(values(&gamma.orbit_reps), vec![0, 4, 5, 7, 9, 10, 13, 19, 20]);
        assert_eq!(gamma.points.len(), 33);
        // the partner-free interior happens to sit inside both Clay sets
        assert!(gamma.only_definitional.is_empty());
        assert_eq!(gamma.only_here.len(), 33 - 5);
        let sigma = &report.entries[1];
        assert_eq!(
            values(&sigma.orbit_reps),
            vec![0, 3, 4, 5, 7, 8, 13, 14, 15, 19, 20, 25]
        );
        assert_eq!(sigma.points.len(), 45);
        // the two partners disagree: different sets for the same circle
        assert_ne!(gamma.points, sigma.points);

        let single = compare_interiors(&base, &[9], f.element(1), f.zero()).unwrap();
        assert_eq!(single.entries.len(), 1);
        assert_eq!(single.entries[0].points, gamma.points);
    }
}
