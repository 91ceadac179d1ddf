//! Circular Ferrero pairs over prime fields: circles, disks, interiors,
//! and the block designs they generate.
//!
//! A pair (Z_p, Phi) of a prime field and a multiplicative subgroup
//! Phi = <g> acts on the field by multiplication; translating the orbits
//! gives circles Phi(a) + b. When the pair is circular (three points never
//! share two circles, two points always share at least two), the circles
//! and the disks built from tangent circles both form balanced incomplete
//! block designs with closed-form parameters, and projection nearrings
//! over the same field attach partner-dependent interior points to every
//! circle.
//!
//! Every fast construction in this crate is validated against a
//! brute-force enumeration, and every nearring axiom is checked
//! exhaustively at construction time rather than assumed.
//!
//! ```
//! use circular::{PhiGroup, PrimeField};
//!
//! let field = PrimeField::new(61)?;
//! let phi = PhiGroup::new(field.clone(), 11)?;
//! assert!(phi.is_ferrero_pair());
//! assert!(circular::is_circular(&phi).circular);
//!
//! let disk = circular::disk(&phi, field.element(1), field.element(0))?;
//! assert_eq!(disk.len(), 9); // 2 n^2 + 1 with n = 2
//!
//! let params = circular::verify_bibd(&circular::disk_design(&phi)?).unwrap();
//! assert_eq!(params.to_string(), "(61, 915, 9, 135, 18)");
//! # Ok::<(), circular::Error>(())
//! ```

pub mod designs;
pub mod disks;
pub mod error;
pub mod ferrero;
pub mod field;
pub mod geometry;
pub mod nearring;

pub use designs::{
    circle_design, design_json, disk_design, disk_design_params, incidence_matrix, pair_count,
    verify_bibd, BibdFailure, BibdParams, Design, IncidenceMatrix,
};
pub use disks::{
    disk, disk_bruteforce, disk_equal, disk_fast, disk_orbit_decomposition, interior,
    is_multiplicative_group, tangent_family_report, tangent_radius_set, Disk, TangentClass,
    TangentFamilyReport, TangentRadiusSet,
};
pub use error::Error;
pub use ferrero::{Orbit, PhiGroup};
pub use field::{divisors, is_prime, FieldElement, PrimeField};
pub use geometry::{
    all_circles, circle, circularity_bound, family, intersect, is_circular,
    orbit_intersection_sizes, tangency_profile, Circle, CircleFamily, CircularityReport,
    CircularityWitness,
};
pub use nearring::{
    clay_interior, compare_interiors, is_double_planar, DoublePlanarPair, DoublePlanarReport,
    InteriorComparison, InteriorEntry, MutualLawWitness, ProjectionNearring,
};
