//! Disks, interiors, tangent radius classes, and the even-order fast path.
//!
//! The disk of radius a and center b collects every point of every circle
//! that passes through b and touches the circle Phi(a) + b in exactly one
//! point. A brute-force enumeration of the p - 1 circles through b serves
//! as the oracle; when |Phi| = 2n is even the disk is also the union of one
//! small family of circles, which gives a fast equivalent construction and
//! an exact count of 2n^2 + 1 points. Disks translate and rescale the way
//! the name suggests: D(a; b) = a * D(1; 0) + b.

use crate::error::Error;
use crate::ferrero::PhiGroup;
use crate::field::{FieldElement, PrimeField};
use crate::geometry::{circle, family, intersect, Circle};
use std::collections::BTreeSet;

/// A disk: the union of the circles through the center tangent to the
/// boundary circle of the given radius class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disk {
    radius_rep: FieldElement,
    center: FieldElement,
    points: Vec<FieldElement>,
    orbit_reps: Vec<FieldElement>,
}

impl Disk {
    /// Canonical representative of the boundary radius class.
    pub fn radius_rep(&self) -> FieldElement {
        self.radius_rep
    }

    pub fn center(&self) -> FieldElement {
        self.center
    }

    /// All points of the disk, ascending.
    pub fn points(&self) -> &[FieldElement] {
        &self.points
    }

    /// Canonical orbit representatives o_i with
    /// points = union of (Phi(o_i) + center), ascending. Disks are closed
    /// under the group action around their center, so this list always
    /// reconstructs the disk exactly.
    pub fn orbit_reps(&self) -> &[FieldElement] {
        &self.orbit_reps
    }

    pub fn contains(&self, x: FieldElement) -> bool {
        self.points.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn disk_from_points(
    phi: &PhiGroup,
    a: FieldElement,
    b: FieldElement,
    points: Vec<FieldElement>,
) -> Disk {
    let mut points = points;
    points.sort_unstable();
    points.dedup();
    let mut orbit_reps: Vec<FieldElement> = points.iter().map(|&x| phi.orbit_rep(x - b)).collect();
    orbit_reps.sort_unstable();
    orbit_reps.dedup();
    Disk {
        radius_rep: phi.orbit_rep(a),
        center: b,
        points,
        orbit_reps,
    }
}

/// The disk D(a; b) by direct enumeration: every circle through b is
/// Phi(r) + c with c in b - Phi(r), and it belongs to the disk when it
/// meets Phi(a) + b in exactly one point. This is the oracle the fast
/// construction is tested against; it works for every group order.
pub fn disk_bruteforce(phi: &PhiGroup, a: FieldElement, b: FieldElement) -> Result<Disk, Error> {
    if a.is_zero() {
        return Err(Error::ZeroRadius);
    }
    let base = circle(phi, a, b)?;
    let mut points = Vec::new();
    for r in phi.nonzero_orbit_reps() {
        for &f in phi.elements() {
            let c = b - f * r;
            let candidate = circle(phi, r, c)?;
            if intersect(&candidate, &base)?.len() == 1 {
                points.extend_from_slice(candidate.points());
            }
        }
    }
    Ok(disk_from_points(phi, a, b, points))
}

/// The interior of the circle Phi(a) + b: the disk minus the circle
/// itself, ascending. When |Phi| is even the center always belongs to it.
pub fn interior(phi: &PhiGroup, a: FieldElement, b: FieldElement) -> Result<Vec<FieldElement>, Error> {
    let d = disk(phi, a, b)?;
    let boundary = circle(phi, a, b)?;
    Ok(d.points
        .iter()
        .copied()
        .filter(|&x| !boundary.contains(x))
        .collect())
}

/// Fast disk construction for even group order |Phi| = 2n: with
/// r = 2^{-1} a, the disk is the union of the circles Phi(r) + c over
/// c in Phi(r), translated by b; pointwise that is (f1 + f2) r + b over
/// all pairs of group elements. Agrees with `disk_bruteforce` on every
/// circular pair.
pub fn disk_fast(phi: &PhiGroup, a: FieldElement, b: FieldElement) -> Result<Disk, Error> {
    if a.is_zero() {
        return Err(Error::ZeroRadius);
    }
    if phi.order() % 2 != 0 {
        return Err(Error::OddGroupOrder(phi.order()));
    }
    let r = a * phi.field().element(2).inv()?;
    let mut points = Vec::with_capacity(phi.order() as usize * phi.order() as usize);
    for &f1 in phi.elements() {
        for &f2 in phi.elements() {
            points.push((f1 + f2) * r + b);
        }
    }
    Ok(disk_from_points(phi, a, b, points))
}

/// The disk D(a; b), choosing the fast path when the group order is even
/// and falling back to the brute-force enumeration when it is odd (no fast
/// formula is known for odd order).
pub fn disk(phi: &PhiGroup, a: FieldElement, b: FieldElement) -> Result<Disk, Error> {
    if phi.order() % 2 == 0 {
        disk_fast(phi, a, b)
    } else {
        disk_bruteforce(phi, a, b)
    }
}

/// For even order |Phi| = 2n, the n + 1 orbit representatives whose orbits
/// tile D(a; 0): the raw values {0, a} followed by (g^i + 1) r for
/// i = 1..n-1, with g the stored generator and r = 2^{-1} a. The values are
/// returned as computed, not canonicalized; they lie in pairwise distinct
/// orbits and their orbits union to the brute-force disk.
pub fn disk_orbit_decomposition(phi: &PhiGroup, a: FieldElement) -> Result<Vec<FieldElement>, Error> {
    if a.is_zero() {
        return Err(Error::ZeroRadius);
    }
    if phi.order() % 2 != 0 {
        return Err(Error::OddGroupOrder(phi.order()));
    }
    let n = phi.order() / 2;
    let r = a * phi.field().element(2).inv()?;
    let one = phi.field().one();
    let mut reps = vec![phi.field().zero(), a];
    let mut power = phi.generator();
    for _ in 1..n {
        reps.push((power + one) * r);
        power = power * phi.generator();
    }
    Ok(reps)
}

/// Setwise equality of D(a; b) and D(a2; b2), decided on the brute-force
/// point sets. When the group order is even and the punctured disk
/// D(1; 0) \ {0} is not a multiplicative group, this is equivalent to
/// b = b2 together with a and a2 sharing an orbit.
pub fn disk_equal(
    phi: &PhiGroup,
    a: FieldElement,
    b: FieldElement,
    a2: FieldElement,
    b2: FieldElement,
) -> Result<bool, Error> {
    let left = disk_bruteforce(phi, a, b)?;
    let right = disk_bruteforce(phi, a2, b2)?;
    Ok(left.points == right.points)
}

/// Whether a point set is a multiplicative subgroup of the field's units:
/// nonempty, free of zero, containing one, and closed under products and
/// inverses. Points from a different field make the answer false.
pub fn is_multiplicative_group(field: &PrimeField, s: &[FieldElement]) -> bool {
    if s.is_empty() {
        return false;
    }
    if s.iter().any(|x| x.modulus() != field.modulus() || x.is_zero()) {
        return false;
    }
    let set: BTreeSet<FieldElement> = s.iter().copied().collect();
    if !set.contains(&field.one()) {
        return false;
    }
    for &x in &set {
        let inverse = x.inv().expect("zero was excluded above");
        if !set.contains(&inverse) {
            return false;
        }
        for &y in &set {
            if !set.contains(&(x * y)) {
                return false;
            }
        }
    }
    true
}

/// One tangent radius class, with a concrete witness circle through the
/// disk center tangent to the boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentClass {
    class_rep: FieldElement,
    witness: Circle,
}

impl TangentClass {
    pub fn class_rep(&self) -> FieldElement {
        self.class_rep
    }

    pub fn witness(&self) -> &Circle {
        &self.witness
    }
}

/// The set M^{a,b}: every orbit class Phi(r) admitting a circle through b
/// tangent to Phi(a) + b, each carrying one witness circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentRadiusSet {
    radius_rep: FieldElement,
    center: FieldElement,
    entries: Vec<TangentClass>,
}

impl TangentRadiusSet {
    pub fn radius_rep(&self) -> FieldElement {
        self.radius_rep
    }

    pub fn center(&self) -> FieldElement {
        self.center
    }

    /// The witnessed classes, ascending by representative.
    pub fn entries(&self) -> &[TangentClass] {
        &self.entries
    }

    /// The class representatives alone, ascending.
    pub fn classes(&self) -> Vec<FieldElement> {
        self.entries.iter().map(|e| e.class_rep).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Computes M^{a,b} by scanning, for each orbit class, the circles of that
/// class through b and keeping the first tangent one as witness.
pub fn tangent_radius_set(
    phi: &PhiGroup,
    a: FieldElement,
    b: FieldElement,
) -> Result<TangentRadiusSet, Error> {
    if a.is_zero() {
        return Err(Error::ZeroRadius);
    }
    let base = circle(phi, a, b)?;
    let mut entries = Vec::new();
    for r in phi.nonzero_orbit_reps() {
        for &f in phi.elements() {
            let c = b - f * r;
            let candidate = circle(phi, r, c)?;
            if intersect(&candidate, &base)?.len() == 1 {
                entries.push(TangentClass {
                    class_rep: r,
                    witness: candidate,
                });
                break;
            }
        }
    }
    Ok(TangentRadiusSet {
        radius_rep: phi.orbit_rep(a),
        center: b,
        entries,
    })
}

/// Raw observations about the families E^r_{-r} + b attached to the
/// tangent classes of M^{a,b}: how many class pairs share a point besides
/// the center, and whether the union of the full families reproduces the
/// brute-force disk. Reported without interpretation; no claim is asserted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TangentFamilyReport {
    /// |M^{a,b}|.
    pub class_count: usize,
    /// Number of unordered pairs of distinct classes.
    pub family_pairs: usize,
    /// Pairs whose translated families share a point other than b.
    pub overlapping_family_pairs: usize,
    /// Whether the union of all translated family points equals D(a; b).
    pub union_matches_disk: bool,
}

/// Builds the family overlap report for the conjecture experiment.
pub fn tangent_family_report(
    phi: &PhiGroup,
    a: FieldElement,
    b: FieldElement,
) -> Result<TangentFamilyReport, Error> {
    let tangents = tangent_radius_set(phi, a, b)?;
    let brute = disk_bruteforce(phi, a, b)?;
    let mut family_sets: Vec<BTreeSet<FieldElement>> = Vec::new();
    for entry in tangents.entries() {
        let r = entry.class_rep();
        let fam = family(phi, r, -r)?;
        let mut set = BTreeSet::new();
        for member in fam.circles() {
            for &x in member.points() {
                set.insert(x + b);
            }
        }
        family_sets.push(set);
    }
    let m = family_sets.len();
    let mut overlapping = 0;
    for i in 0..m {
        for j in i + 1..m {
            if family_sets[i]
                .intersection(&family_sets[j])
                .any(|&x| x != b)
            {
                overlapping += 1;
            }
        }
    }
    let union: BTreeSet<FieldElement> = family_sets.iter().flatten().copied().collect();
    let disk_set: BTreeSet<FieldElement> = brute.points().iter().copied().collect();
    Ok(TangentFamilyReport {
        class_count: m,
        family_pairs: m * m.saturating_sub(1) / 2,
        overlapping_family_pairs: overlapping,
        union_matches_disk: union == disk_set,
    })
}
