//! Multiplicative subgroups of Z_p^* acting on Z_p, and their orbits.
//!
//! A nontrivial subgroup Phi of the units acts on the field by
//! multiplication. The action is regular away from zero: no non-identity
//! element fixes a nonzero point, and x -> x - phi(x) is onto. These two
//! facts make (Z_p, Phi) a Ferrero pair, the seed of every structure in the
//! crate, and both are re-verified here by exhaustive checks rather than
//! taken on faith from the algebra.

use crate::error::Error;
use crate::field::{FieldElement, PrimeField};
use std::sync::Arc;

/// A cyclic subgroup Phi = <g> of Z_p^* together with its action on Z_p.
///
/// Construction also builds a table sending every point to the smallest
/// residue in its orbit, so canonical representatives and membership are
/// O(1) lookups; downstream modules query them constantly. The group is
/// immutable afterwards and cheap to clone.
#[derive(Clone, Debug)]
pub struct PhiGroup {
    field: PrimeField,
    generator: FieldElement,
    elements: Vec<FieldElement>,
    rep: Arc<Vec<u32>>,
}

impl PartialEq for PhiGroup {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.generator == other.generator
    }
}

impl Eq for PhiGroup {}

impl PhiGroup {
    /// Builds <g> inside Z_p^*. The generator must reduce into 2..=p-1:
    /// g = 1 would give the trivial group, which is excluded from Ferrero
    /// pairs, and g = 0 generates nothing.
    pub fn new(field: PrimeField, generator: u64) -> Result<Self, Error> {
        let g = field.element(generator);
        if g.value() < 2 {
            return Err(Error::BadGenerator {
                generator,
                modulus: field.modulus(),
            });
        }
        let mut elements = vec![field.one()];
        let mut x = g;
        while x.value() != 1 {
            elements.push(x);
            x = x * g;
        }
        let p = field.modulus();
        let mut rep = vec![0u32; p as usize];
        let mut seen = vec![false; p as usize];
        for start in 1..p {
            if seen[start as usize] {
                continue;
            }
            // Sweeping upwards, the first unseen point is the minimum of
            // its whole orbit.
            for &phi in &elements {
                let image = phi.value() * start % p;
                seen[image as usize] = true;
                rep[image as usize] = start as u32;
            }
        }
        Ok(Self {
            field,
            generator: g,
            elements,
            rep: Arc::new(rep),
        })
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    /// Group order k; always at least 2 and a divisor of p - 1.
    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    /// The group elements in generation order: g^0, g^1, ..., g^(k-1).
    pub fn elements(&self) -> &[FieldElement] {
        &self.elements
    }

    /// Membership of x in the group itself, i.e. in the orbit of 1.
    pub fn contains(&self, x: FieldElement) -> bool {
        !x.is_zero() && self.rep[x.value() as usize] == 1
    }

    /// Canonical representative (smallest residue) of the orbit of a.
    pub fn orbit_rep(&self, a: FieldElement) -> FieldElement {
        self.field.element(u64::from(self.rep[a.value() as usize]))
    }

    /// The orbit Phi(a) with ascending elements; {0} when a = 0.
    pub fn orbit(&self, a: FieldElement) -> Orbit {
        if a.is_zero() {
            return Orbit {
                representative: a,
                elements: vec![a],
            };
        }
        let mut elements: Vec<FieldElement> =
            self.elements.iter().map(|&phi| phi * a).collect();
        elements.sort_unstable();
        Orbit {
            representative: elements[0],
            elements,
        }
    }

    /// Every orbit, sorted by canonical representative: the trivial orbit
    /// {0} followed by (p-1)/k orbits of size k.
    pub fn orbit_partition(&self) -> Vec<Orbit> {
        (0..self.field.modulus())
            .filter(|&x| u64::from(self.rep[x as usize]) == x)
            .map(|x| self.orbit(self.field.element(x)))
            .collect()
    }

    /// Canonical representatives of the nontrivial orbits, ascending.
    pub fn nonzero_orbit_reps(&self) -> Vec<FieldElement> {
        (1..self.field.modulus())
            .filter(|&x| u64::from(self.rep[x as usize]) == x)
            .map(|x| self.field.element(x))
            .collect()
    }

    /// Executes the regularity checks directly: every non-identity group
    /// element moves every nonzero point, and x -> x - phi(x) covers all of
    /// Z_p. Both are automatic for a nontrivial subgroup of units acting on
    /// a field, but they are verified, not assumed.
    pub fn is_ferrero_pair(&self) -> bool {
        let p = self.field.modulus();
        for &phi in &self.elements[1..] {
            for x in 1..p {
                if phi.value() * x % p == x {
                    return false;
                }
            }
            let mut hit = vec![false; p as usize];
            for x in 0..p {
                let image = (x + p - phi.value() * x % p) % p;
                hit[image as usize] = true;
            }
            if hit.iter().any(|&h| !h) {
                return false;
            }
        }
        true
    }
}

/// An orbit Phi(a): the trivial {0}, or a coset of size |Phi|, stored
/// ascending with its smallest residue as the canonical representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    representative: FieldElement,
    elements: Vec<FieldElement>,
}

impl Orbit {
    pub fn representative(&self) -> FieldElement {
        self.representative
    }

    pub fn elements(&self) -> &[FieldElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: FieldElement) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}
