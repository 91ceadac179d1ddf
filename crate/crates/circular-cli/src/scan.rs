//! Prime-range scanning for circular pairs, with an append-only cache of
//! line-delimited JSON records.
//!
//! Subgroups of the cyclic unit group are determined by their order, so a
//! scan visits one canonical generator per order: the smallest value
//! attaining it. Orders above the circularity bound cannot be circular (a
//! counting argument, no enumeration needed), so the expensive decision
//! runs only below the bound. For circular even-order pairs the scan also
//! records the disk size, whether the punctured unit disk is a
//! multiplicative group, and the verified disk design parameters.

use anyhow::Context;
use circular::{
    circularity_bound, disk_bruteforce, disk_design, disk_fast, divisors, is_circular,
    is_multiplicative_group, is_prime, verify_bibd, BibdParams, FieldElement, PhiGroup,
    PrimeField,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

/// One scanned pair. Optional fields are present only when they were
/// computed: disk data and design parameters apply to circular even-order
/// pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub p: u64,
    pub g: u64,
    pub k: u64,
    pub circular: bool,
    pub even: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub disk_size: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub punctured_disk_is_group: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bibd: Option<BibdParams>,
    pub timestamp: String,
}

/// The smallest generator of the subgroup of the given order, or None
/// when the order does not divide p - 1.
pub fn canonical_generator(field: &PrimeField, k: u64) -> Option<u64> {
    if k < 2 || (field.modulus() - 1) % k != 0 {
        return None;
    }
    (2..field.modulus()).find(|&g| {
        field
            .element(g)
            .mult_order()
            .expect("nonzero candidates")
            == k
    })
}

/// Surveys the pair (Z_p, <g>) of order k: circularity (decided by the
/// bound first, enumeration second) and, for circular even-order pairs,
/// the disk size, the group test on the punctured unit disk, and the
/// verified disk design parameters.
pub fn survey_pair(field: &PrimeField, g: u64, k: u64) -> anyhow::Result<ScanRecord> {
    let p = field.modulus();
    let phi = PhiGroup::new(field.clone(), g)?;
    debug_assert_eq!(phi.order(), k);
    let circular = k <= circularity_bound(p) && is_circular(&phi).circular;
    let even = k % 2 == 0;
    let mut record = ScanRecord {
        p,
        g,
        k,
        circular,
        even,
        disk_size: None,
        punctured_disk_is_group: None,
        bibd: None,
        timestamp: chrono::Utc::now().to_rfc3339(),
    };
    if circular {
        let one = field.element(1);
        let zero = field.zero();
        if even {
            let disk = disk_fast(&phi, one, zero)?;
            record.disk_size = Some(disk.len() as u64);
            let punctured: Vec<FieldElement> = disk
                .points()
                .iter()
                .copied()
                .filter(|x| !x.is_zero())
                .collect();
            record.punctured_disk_is_group = Some(is_multiplicative_group(field, &punctured));
            record.bibd = verify_bibd(&disk_design(&phi)?).ok();
        } else {
            record.disk_size = Some(disk_bruteforce(&phi, one, zero)?.len() as u64);
        }
    }
    Ok(record)
}

/// The subgroup orders a scan visits for a prime p: divisors of p - 1 that
/// are at least 2, restricted to the requested order when one is given.
pub fn orders_for(p: u64, requested: Option<u64>) -> Vec<u64> {
    divisors(p - 1)
        .into_iter()
        .filter(|&k| k >= 2 && requested.is_none_or(|want| k == want))
        .collect()
}

/// Scans all primes in [p_min, p_max], skipping (p, k) pairs already in
/// `known`, in parallel across primes. Results are sorted by (p, k).
pub fn scan_range(
    p_min: u64,
    p_max: u64,
    requested: Option<u64>,
    known: &BTreeSet<(u64, u64)>,
) -> anyhow::Result<Vec<ScanRecord>> {
    let primes: Vec<u64> = (p_min.max(3)..=p_max).filter(|&p| is_prime(p)).collect();
    let mut records: Vec<ScanRecord> = primes
        .par_iter()
        .map(|&p| -> anyhow::Result<Vec<ScanRecord>> {
            let field = PrimeField::new(p)?;
            let mut out = Vec::new();
            for k in orders_for(p, requested) {
                if known.contains(&(p, k)) {
                    continue;
                }
                let g = canonical_generator(&field, k)
                    .expect("k divides p - 1, so a generator exists");
                out.push(survey_pair(&field, g, k)?);
            }
            Ok(out)
        })
        .collect::<anyhow::Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    records.sort_by_key(|r| (r.p, r.k));
    Ok(records)
}

/// Resolves the cache file path: the explicit argument, then
/// $CIRCULAR_CACHE_DIR/scan-cache.jsonl, then ./scan-cache.jsonl.
pub fn cache_path(explicit: Option<&Path>) -> PathBuf {
    if let Some(path) = explicit {
        return path.to_path_buf();
    }
    if let Some(dir) = std::env::var_os("CIRCULAR_CACHE_DIR") {
        return PathBuf::from(dir).join("scan-cache.jsonl");
    }
    PathBuf::from("scan-cache.jsonl")
}

/// Loads every record of an existing cache file; a missing file is an
/// empty cache.
pub fn load_cache(path: &Path) -> anyhow::Result<Vec<ScanRecord>> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read cache file {}", path.display()))?;
    let mut records = Vec::new();
    for (number, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let record: ScanRecord = serde_json::from_str(line).with_context(|| {
            format!("malformed cache line {} in {}", number + 1, path.display())
        })?;
        records.push(record);
    }
    Ok(records)
}

/// Appends records to the cache file, creating it (and its directory) on
/// first use. Append-only: existing lines are never rewritten.
pub fn append_records(path: &Path, records: &[ScanRecord]) -> anyhow::Result<()> {
    if records.is_empty() {
        return Ok(());
    }
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)
                .with_context(|| format!("cannot create cache directory {}", parent.display()))?;
        }
    }
    let mut file = fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .with_context(|| format!("cannot open cache file {}", path.display()))?;
    for record in records {
        let line = serde_json::to_string(record)?;
        writeln!(file, "{line}")
            .with_context(|| format!("cannot write to cache file {}", path.display()))?;
    }
    Ok(())
}
