//! Block designs cut from circles and disks, and their verification.
//!
//! The circles of a pair form an incidence structure on the p field points,
//! and so do the distinct disks. Both are checked for the balanced
//! incomplete block design conditions by exhaustive counting: constant
//! block size k, constant replication r per point, constant count lambda
//! per unordered point pair. The circle design of a circular pair has
//! parameters (v, v(v-1)/k, k, v-1, k-1); the disk design of an even-order
//! pair whose punctured unit disk is not a multiplicative group has the
//! closed-form parameters given by `disk_design_params`.

use crate::error::Error;
use crate::ferrero::PhiGroup;
use crate::field::is_prime;
use crate::geometry::all_circles;
use crate::disks::disk;
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::collections::BTreeSet;
use std::fmt;
use std::io::{self, Write};

/// An incidence structure: points 0..v-1 and a deduplicated list of
/// nonempty blocks in lexicographic order on their sorted point lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Design {
    v: u64,
    blocks: Vec<Vec<u64>>,
}

impl Design {
    /// Builds a design over points 0..v-1. Blocks are treated as sets:
    /// points within a block are sorted and deduplicated, equal blocks are
    /// merged, and the final order is lexicographic.
    pub fn new(v: u64, blocks: Vec<Vec<u64>>) -> Result<Design, Error> {
        let mut canonical: BTreeSet<Vec<u64>> = BTreeSet::new();
        for (index, block) in blocks.into_iter().enumerate() {
            if block.is_empty() {
                return Err(Error::EmptyBlock { index });
            }
            for &point in &block {
                if point >= v {
                    return Err(Error::PointOutOfRange { point, count: v });
                }
            }
            let mut block = block;
            block.sort_unstable();
            block.dedup();
            canonical.insert(block);
        }
        Ok(Design {
            v,
            blocks: canonical.into_iter().collect(),
        })
    }

    pub fn v(&self) -> u64 {
        self.v
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Blocks in canonical order; each block is sorted ascending.
    pub fn blocks(&self) -> &[Vec<u64>] {
        &self.blocks
    }
}

/// Parameters of a balanced incomplete block design.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BibdParams {
    pub v: u64,
    pub b: u64,
    pub k: u64,
    pub r: u64,
    pub lambda: u64,
}

impl BibdParams {
    /// The two counting identities every BIBD satisfies:
    /// v r = b k and lambda (v - 1) = r (k - 1).
    pub fn identities_hold(&self) -> bool {
        self.v * self.r == self.b * self.k && self.lambda * (self.v - 1) == self.r * (self.k - 1)
    }
}

impl fmt::Display for BibdParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {}, {})",
            self.v, self.b, self.k, self.r, self.lambda
        )
    }
}

/// First reason a design fails the BIBD conditions, under canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BibdFailure {
    #[error("a design needs at least two points and one block")]
    Empty,
    #[error("block {index} has {size} points, expected {expected}")]
    BlockSize {
        index: usize,
        size: usize,
        expected: usize,
    },
    #[error("point {point} lies in {count} blocks, expected {expected}")]
    Replication {
        point: u64,
        count: u64,
        expected: u64,
    },
    #[error("pair ({x}, {y}) lies in {count} blocks, expected {expected}")]
    PairCount {
        x: u64,
        y: u64,
        count: u64,
        expected: u64,
    },
}

/// Checks the three BIBD conditions exhaustively and returns the
/// parameters, or the first failure in canonical order (blocks by index,
/// then points ascending, then pairs ascending). On success both counting
/// identities are asserted as a redundant self-check.
pub fn verify_bibd(design: &Design) -> Result<BibdParams, BibdFailure> {
    let v = design.v as usize;
    if v < 2 || design.blocks.is_empty() {
        return Err(BibdFailure::Empty);
    }
    let k = design.blocks[0].len();
    for (index, block) in design.blocks.iter().enumerate() {
        if block.len() != k {
            return Err(BibdFailure::BlockSize {
                index,
                size: block.len(),
                expected: k,
            });
        }
    }
    let mut replication = vec![0u64; v];
    let pair_index = |x: usize, y: usize| x * (2 * v - x - 1) / 2 + (y - x - 1);
    let mut pairs = vec![0u64; v * (v - 1) / 2];
    for block in &design.blocks {
        for (i, &x) in block.iter().enumerate() {
            replication[x as usize] += 1;
            for &y in &block[i + 1..] {
                pairs[pair_index(x as usize, y as usize)] += 1;
            }
        }
    }
    let r = replication[0];
    for (point, &count) in replication.iter().enumerate() {
        if count != r {
            return Err(BibdFailure::Replication {
                point: point as u64,
                count,
                expected: r,
            });
        }
    }
    let lambda = pairs[0];
    for x in 0..v {
        for y in x + 1..v {
            let count = pairs[pair_index(x, y)];
            if count != lambda {
                return Err(BibdFailure::PairCount {
                    x: x as u64,
                    y: y as u64,
                    count,
                    expected: lambda,
                });
            }
        }
    }
    let params = BibdParams {
        v: design.v,
        b: design.blocks.len() as u64,
        k: k as u64,
        r,
        lambda,
    };
    assert!(
        params.identities_hold(),
        "constant counts always satisfy the design identities"
    );
    Ok(params)
}

/// The design whose blocks are all circles of the pair: p(p-1)/k blocks of
/// size k on the p field points.
pub fn circle_design(phi: &PhiGroup) -> Design {
    let v = phi.field().modulus();
    let blocks = all_circles(phi)
        .iter()
        .map(|c| c.points().iter().map(|x| x.value()).collect())
        .collect();
    Design::new(v, blocks).expect("circles are nonempty sets of field points")
}

/// The design whose blocks are all distinct disks of the pair. Disks are
/// enumerated one radius class at a time (radii in one orbit give the same
/// disk) over every center, then deduplicated on their point sets, so the
/// occasional coincidence between different classes is also merged.
pub fn disk_design(phi: &PhiGroup) -> Result<Design, Error> {
    let v = phi.field().modulus();
    let mut blocks = Vec::new();
    for a in phi.nonzero_orbit_reps() {
        for b in phi.field().elements() {
            let d = disk(phi, a, b)?;
            blocks.push(d.points().iter().map(|x| x.value()).collect());
        }
    }
    Design::new(v, blocks)
}

/// Closed-form disk design parameters for a prime p and even group order
/// 2n: (p, p(p-1)/2n, 2n^2+1, (p-1)(2n^2+1)/2n, n(2n^2+1)). Requires 2n to
/// divide p - 1. The parameters describe an actual BIBD when the pair is
/// circular and the punctured unit disk is not a multiplicative group.
pub fn disk_design_params(p: u64, n: u64) -> Result<BibdParams, Error> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 || (p - 1) % (2 * n) != 0 {
        return Err(Error::OrderDoesNotDivide {
            divisor: 2 * n,
            dividend: p - 1,
        });
    }
    let k = 2 * n * n + 1;
    let params = BibdParams {
        v: p,
        b: p * (p - 1) / (2 * n),
        k,
        r: (p - 1) * k / (2 * n),
        lambda: n * k,
    };
    assert!(params.identities_hold());
    Ok(params)
}

/// Number of blocks containing both points, counted by scanning all
/// blocks. Translation arguments (such as pair orbits under the group)
/// can be tested against this exact count.
pub fn pair_count(design: &Design, x: u64, y: u64) -> Result<u64, Error> {
    if x == y {
        return Err(Error::IdenticalPoints(x));
    }
    for point in [x, y] {
        if point >= design.v {
            return Err(Error::PointOutOfRange {
                point,
                count: design.v,
            });
        }
    }
    Ok(design
        .blocks
        .iter()
        .filter(|b| b.binary_search(&x).is_ok() && b.binary_search(&y).is_ok())
        .count() as u64)
}

/// The v-by-b 0/1 incidence matrix of a design: rows are points in
/// increasing order, columns are blocks in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceMatrix {
    v: usize,
    b: usize,
    data: Vec<u8>,
}

impl IncidenceMatrix {
    pub fn rows(&self) -> usize {
        self.v
    }

    pub fn columns(&self) -> usize {
        self.b
    }

    pub fn get(&self, point: usize, block: usize) -> u8 {
        self.data[point * self.b + block]
    }

    /// Per-point block counts; all equal to r in a BIBD.
    pub fn row_sums(&self) -> Vec<u64> {
        (0..self.v)
            .map(|i| self.data[i * self.b..(i + 1) * self.b].iter().map(|&x| x as u64).sum())
            .collect()
    }

    /// Per-block sizes; all equal to k in a BIBD.
    pub fn column_sums(&self) -> Vec<u64> {
        let mut sums = vec![0u64; self.b];
        for i in 0..self.v {
            for (j, sum) in sums.iter_mut().enumerate() {
                *sum += self.data[i * self.b + j] as u64;
            }
        }
        sums
    }

    /// Checks N * N^T = (r - lambda) I + lambda J entry by entry against
    /// the given parameters, a standard redundant check for a verified
    /// BIBD.
    pub fn gram_identity_holds(&self, params: &BibdParams) -> bool {
        for i in 0..self.v {
            for j in i..self.v {
                let mut dot = 0u64;
                for col in 0..self.b {
                    dot += (self.data[i * self.b + col] & self.data[j * self.b + col]) as u64;
                }
                let expected = if i == j { params.r } else { params.lambda };
                if dot != expected {
                    return false;
                }
            }
        }
        true
    }

    /// Writes the matrix as CSV: a header row naming the block indices,
    /// then one row per point with its 0/1 incidences.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        write!(out, "point")?;
        for j in 0..self.b {
            write!(out, ",{j}")?;
        }
        writeln!(out)?;
        for i in 0..self.v {
            write!(out, "{i}")?;
            for j in 0..self.b {
                write!(out, ",{}", self.data[i * self.b + j])?;
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

/// Builds the incidence matrix of a design.
pub fn incidence_matrix(design: &Design) -> IncidenceMatrix {
    let v = design.v as usize;
    let b = design.blocks.len();
    let mut data = vec![0u8; v * b];
    for (j, block) in design.blocks.iter().enumerate() {
        for &point in block {
            data[point as usize * b + j] = 1;
        }
    }
    IncidenceMatrix { v, b, data }
}

/// Serializes a design as JSON together with the pair that produced it and
/// its verified parameters, when available:
/// {v, phi: {p, g}, blocks: [[...]], params: {v,b,k,r,lambda} | null}.
pub fn design_json(phi: &PhiGroup, design: &Design, params: Option<&BibdParams>) -> serde_json::Value {
    json!({
        "v": design.v,
        "phi": {
            "p": phi.field().modulus(),
            "g": phi.generator().value(),
        },
        "blocks": design.blocks,
        "params": params,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn phi(p: u64, g: u64) -> PhiGroup {
        PhiGroup::new(PrimeField::new(p).unwrap(), g).unwrap()
    }

    #[test]
    fn design_normalizes_blocks() {
        let d = Design::new(5, vec![vec![2, 1], vec![1, 2, 2], vec![0, 3]]).unwrap();
        assert_eq!(d.blocks(), &[vec![0, 3], vec![1, 2]]);
        assert_eq!(
            Design::new(5, vec![vec![]]).unwrap_err(),
            Error::EmptyBlock { index: 0 }
        );
        assert_eq!(
            Design::new(5, vec![vec![5]]).unwrap_err(),
            Error::PointOutOfRange { point: 5, count: 5 }
        );
    }

    #[test]
    fn circle_design_shapes() {
        let d = circle_design(&phi(61, 11));
        assert_eq!(d.v(), 61);
        assert_eq!(d.block_count(), 915);
        assert!(d.blocks().iter().all(|b| b.len() == 4));
        let d9 = circle_design(&phi(61, 9));
        assert_eq!(d9.block_count(), 732);
        assert!(d9.blocks().iter().all(|b| b.len() == 5));
    }

    #[test]
    fn circle_designs_verify() {
        let expect = [
            (11u64, (61u64, 915u64, 4u64, 60u64, 3u64)),
            (9, (61, 732, 5, 60, 4)),
            (13, (61, 1220, 3, 60, 2)),
        ];
        for (g, (v, b, k, r, lambda)) in expect {
            let params = verify_bibd(&circle_design(&phi(61, g))).unwrap();
            assert_eq!((params.v, params.b, params.k, params.r, params.lambda), (v, b, k, r, lambda));
            assert!(params.identities_hold());
        }
        let shown = verify_bibd(&circle_design(&phi(61, 11))).unwrap();
        assert_eq!(shown.to_string(), "(61, 915, 4, 60, 3)");
    }

    #[test]
    fn disk_designs_verify() {
        let d = disk_design(&phi(61, 11)).unwrap();
        assert_eq!(d.block_count(), 915);
        assert!(d.blocks().iter().all(|b| b.len() == 9));
        let params = verify_bibd(&d).unwrap();
        assert_eq!(params, disk_design_params(61, 2).unwrap());
        assert_eq!(params.to_string(), "(61, 915, 9, 135, 18)");

        let small = disk_design(&phi(13, 5)).unwrap();
        assert_eq!(small.block_count(), 39);
        let small_params = verify_bibd(&small).unwrap();
        assert_eq!(small_params, disk_design_params(13, 2).unwrap());
        assert_eq!(small_params.to_string(), "(13, 39, 9, 27, 18)");
    }

    #[test]
    fn raw_disk_enumeration_collapses_to_the_design() {
        // all 61 * 60 = 3660 (radius, center) pairs produce only 915 disks
        let g = phi(61, 11);
        let f = g.field().clone();
        let mut raw = Vec::new();
        for a in 1..61 {
            for b in 0..61 {
                let d = disk(&g, f.element(a), f.element(b)).unwrap();
                raw.push(d.points().iter().map(|x| x.value()).collect::<Vec<u64>>());
            }
        }
        assert_eq!(raw.len(), 3660);
        let collapsed = Design::new(61, raw).unwrap();
        assert_eq!(collapsed, disk_design(&g).unwrap());
    }

    #[test]
    fn closed_form_parameters() {
        let params = disk_design_params(61, 2).unwrap();
        assert_eq!(params.to_string(), "(61, 915, 9, 135, 18)");
        assert_eq!(params.lambda * 60, params.r * 8);
        assert_eq!(disk_design_params(13, 2).unwrap().to_string(), "(13, 39, 9, 27, 18)");
        assert_eq!(disk_design_params(60, 2).unwrap_err(), Error::NotPrime(60));
        assert_eq!(
            disk_design_params(61, 4).unwrap_err(),
            Error::OrderDoesNotDivide { divisor: 8, dividend: 60 }
        );
        assert_eq!(
            disk_design_params(61, 0).unwrap_err(),
            Error::OrderDoesNotDivide { divisor: 0, dividend: 60 }
        );
    }

    #[test]
    fn pair_counts() {
        let g = phi(61, 11);
        let circles = circle_design(&g);
        assert_eq!(pair_count(&circles, 0, 1).unwrap(), 3);
        assert_eq!(pair_count(&circles, 17, 44).unwrap(), 3);
        let disks = disk_design(&g).unwrap();
        assert_eq!(pair_count(&disks, 0, 1).unwrap(), 18);
        // pairs translate: <x, y> has the count of <0, y - x>
        for (x, y) in [(3u64, 10u64), (20, 41), (59, 60)] {
            let translated = pair_count(&disks, 0, (y + 61 - x) % 61).unwrap();
            assert_eq!(pair_count(&disks, x, y).unwrap(), translated);
        }
        assert_eq!(pair_count(&circles, 5, 5).unwrap_err(), Error::IdenticalPoints(5));
        assert_eq!(
            pair_count(&circles, 0, 61).unwrap_err(),
            Error::PointOutOfRange { point: 61, count: 61 }
        );
    }

    #[test]
    fn verification_failures_are_witnessed() {
        // dropping the block that contains point 1 breaks replication there
        let g = phi(61, 11);
        let full = circle_design(&g);
        let mut blocks = full.blocks().to_vec();
        let removed = blocks
            .iter()
            .position(|b| b == &vec![1, 11, 50, 60])
            .expect("the unit circle is a block");
        blocks.remove(removed);
        let broken = Design::new(61, blocks).unwrap();
        assert_eq!(
            verify_bibd(&broken).unwrap_err(),
            BibdFailure::Replication { point: 1, count: 59, expected: 60 }
        );

        let ragged = Design::new(4, vec![vec![0, 1], vec![1, 2, 3]]).unwrap();
        assert_eq!(
            verify_bibd(&ragged).unwrap_err(),
            BibdFailure::BlockSize { index: 1, size: 3, expected: 2 }
        );

        // constant size and replication, but pair (0, 2) never appears
        let unbalanced = Design::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(
            verify_bibd(&unbalanced).unwrap_err(),
            BibdFailure::PairCount { x: 0, y: 2, count: 0, expected: 1 }
        );

        assert_eq!(
            verify_bibd(&Design::new(1, vec![vec![0]]).unwrap()).unwrap_err(),
            BibdFailure::Empty
        );
    }

    #[test]
    fn fano_plane_verifies() {
        let fano = Design::new(
            7,
            vec![
                vec![0, 1, 2],
                vec![0, 3, 4],
                vec![0, 5, 6],
                vec![1, 3, 5],
                vec![1, 4, 6],
                vec![2, 3, 6],
                vec![2, 4, 5],
            ],
        )
        .unwrap();
        let params = verify_bibd(&fano).unwrap();
        assert_eq!(params.to_string(), "(7, 7, 3, 3, 1)");
        assert!(incidence_matrix(&fano).gram_identity_holds(&params));
    }

    #[test]
    fn incidence_matrix_sums_and_gram() {
        let g = phi(61, 11);
        let design = circle_design(&g);
        let params = verify_bibd(&design).unwrap();
        let matrix = incidence_matrix(&design);
        assert_eq!(matrix.rows(), 61);
        assert_eq!(matrix.columns(), 915);
        assert!(matrix.row_sums().iter().all(|&s| s == 60));
        assert!(matrix.column_sums().iter().all(|&s| s == 4));
        assert!(matrix.gram_identity_holds(&params));
    }

    #[test]
    fn single_block_matrix_and_csv() {
        let single = Design::new(3, vec![vec![0, 1, 2]]).unwrap();
        let matrix = incidence_matrix(&single);
        assert_eq!(matrix.column_sums(), vec![3]);
        let mut csv = Vec::new();
        matrix.write_csv(&mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert_eq!(text, "point,0\n0,1\n1,1\n2,1\n");
    }

    #[test]
    fn json_export_shape() {
        let g = phi(13, 5);
        let design = circle_design(&g);
        let params = verify_bibd(&design).unwrap();
        let with = design_json(&g, &design, Some(&params));
        assert_eq!(with["v"], 13);
        assert_eq!(with["phi"]["p"], 13);
        assert_eq!(with["phi"]["g"], 5);
        assert_eq!(with["blocks"].as_array().unwrap().len(), design.block_count());
        assert_eq!(with["params"]["lambda"], 3);
        let without = design_json(&g, &design, None);
        assert!(without["params"].is_null());
    }
}
