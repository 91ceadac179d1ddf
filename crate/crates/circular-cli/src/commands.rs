//! The command implementations behind the CLI. Every command is
//! deterministic for fixed arguments and cache state, prints set outputs
//! in ascending order, and exits nonzero only on a real failure (bad
//! input, broken invariant, or I/O trouble).

use crate::scan::{self, ScanRecord};
use crate::{Blocks, Format, Method};
use anyhow::{bail, Context};
use circular::{
    circle, circle_design, circularity_bound, compare_interiors, design_json, disk,
    disk_bruteforce, disk_design, disk_fast, disk_orbit_decomposition, incidence_matrix,
    interior, is_circular, tangent_family_report, tangent_radius_set, verify_bibd,
    CircularityWitness, FieldElement, PhiGroup, PrimeField,
};
use std::collections::BTreeSet;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

fn format_set(points: &[FieldElement]) -> String {
    let inner: Vec<String> = points.iter().map(|x| x.value().to_string()).collect();
    format!("{{{}}}", inner.join(", "))
}

fn build_pair(p: u64, g: u64) -> anyhow::Result<PhiGroup> {
    let field = PrimeField::new(p)?;
    Ok(PhiGroup::new(field, g)?)
}

fn require_circular(phi: &PhiGroup) -> anyhow::Result<()> {
    let report = is_circular(phi);
    if !report.circular {
        bail!(
            "pair (p={}, g={}) is not circular: {}",
            phi.field().modulus(),
            phi.generator().value(),
            describe_witness(&report.witness.expect("non-circular reports carry a witness"))
        );
    }
    Ok(())
}

fn describe_witness(witness: &CircularityWitness) -> String {
    match witness {
        CircularityWitness::TripleInTwoCircles {
            triple,
            first,
            second,
        } => format!(
            "points {{{}, {}, {}}} lie on two circles, radius {} center {} and radius {} center {}",
            triple[0], triple[1], triple[2], first.0, first.1, second.0, second.1
        ),
        CircularityWitness::PairInFewCircles { pair, circles } => format!(
            "points {{{}, {}}} lie on only {} circle(s), need at least 2",
            pair[0], pair[1], circles
        ),
    }
}

/// `pair p g`: orbits, regularity, and the circularity decision.
pub fn cmd_pair(p: u64, g: u64) -> anyhow::Result<()> {
    let phi = build_pair(p, g)?;
    let k = phi.order();
    println!("pair: p = {p}, generator = {g}");
    println!(
        "group order: {k} ({})",
        if k % 2 == 0 { "even" } else { "odd" }
    );
    println!("group elements: {}", format_set(phi.elements()));
    println!("ferrero pair (fixed point free and regular): {}", phi.is_ferrero_pair());
    let partition = phi.orbit_partition();
    println!("orbits: {}", partition.len());
    for orbit in &partition {
        println!(
            "  orbit {:>3}: {}",
            orbit.representative().value(),
            format_set(orbit.elements())
        );
    }
    println!(
        "circularity bound: group order at most {} can be circular on {p} points",
        circularity_bound(p)
    );
    let report = is_circular(&phi);
    println!("circular: {}", report.circular);
    if let Some(witness) = report.witness {
        println!("witness: {}", describe_witness(&witness));
    }
    Ok(())
}

/// `disk p g a b [--method ...]`: the disk, its orbit classes, and the
/// interior of the circle.
pub fn cmd_disk(p: u64, g: u64, a: u64, b: u64, method: Method) -> anyhow::Result<()> {
    let phi = build_pair(p, g)?;
    require_circular(&phi)?;
    let field = phi.field().clone();
    let (a, b) = (field.element(a), field.element(b));
    let k = phi.order();
    println!(
        "pair: p = {p}, generator = {g}, order {k} ({})",
        if k % 2 == 0 { "even" } else { "odd" }
    );
    let boundary = circle(&phi, a, b)?;
    println!("circle points: {}", format_set(boundary.points()));
    let chosen = match method {
        Method::Auto => disk(&phi, a, b)?,
        Method::Brute => disk_bruteforce(&phi, a, b)?,
        Method::Fast => disk_fast(&phi, a, b)?,
        Method::Both => {
            let fast = disk_fast(&phi, a, b)?;
            let brute = disk_bruteforce(&phi, a, b)?;
            if fast != brute {
                bail!(
                    "fast and brute-force disks disagree for a = {}, b = {}: {} vs {}",
                    a.value(),
                    b.value(),
                    format_set(fast.points()),
                    format_set(brute.points())
                );
            }
            println!("fast and brute force agree: true");
            fast
        }
    };
    println!(
        "disk points ({}): {}",
        chosen.len(),
        format_set(chosen.points())
    );
    println!(
        "orbit classes around the center: {}",
        format_set(chosen.orbit_reps())
    );
    if k % 2 == 0 {
        let reps = disk_orbit_decomposition(&phi, a)?;
        println!("decomposition representatives: {}", format_set(&reps));
    }
    let inside = interior(&phi, a, b)?;
    println!("interior ({}): {}", inside.len(), format_set(&inside));
    Ok(())
}

/// `design p g [--blocks ...] [--export PATH] [--format ...]`: build,
/// verify, and optionally export a design.
pub fn cmd_design(
    p: u64,
    g: u64,
    blocks: Blocks,
    export: Option<&Path>,
    format: Format,
) -> anyhow::Result<()> {
    let phi = build_pair(p, g)?;
    let design = match blocks {
        Blocks::Circles => circle_design(&phi),
        Blocks::Disks => {
            require_circular(&phi)?;
            disk_design(&phi)?
        }
    };
    println!(
        "design: p = {p}, generator = {g}, blocks = {}",
        match blocks {
            Blocks::Circles => "circles",
            Blocks::Disks => "disks",
        }
    );
    println!("blocks: {}", design.block_count());
    let params = match verify_bibd(&design) {
        Ok(params) => {
            println!("balanced incomplete block design: true");
            println!("parameters (v, b, k, r, lambda): {params}");
            Some(params)
        }
        Err(failure) => {
            println!("balanced incomplete block design: false");
            println!("failure: {failure}");
            None
        }
    };
    if let Some(path) = export {
        match format {
            Format::Json => {
                let value = design_json(&phi, &design, params.as_ref());
                let text = serde_json::to_string_pretty(&value)?;
                fs::write(path, text + "\n")
                    .with_context(|| format!("cannot write design file {}", path.display()))?;
            }
            Format::Csv => {
                let file = fs::File::create(path)
                    .with_context(|| format!("cannot write matrix file {}", path.display()))?;
                let mut writer = BufWriter::new(file);
                incidence_matrix(&design).write_csv(&mut writer)?;
                writer
                    .flush()
                    .with_context(|| format!("cannot write matrix file {}", path.display()))?;
            }
        }
        println!("wrote {}", path.display());
    }
    Ok(())
}

/// `clay p g_phi g_partner a b`: partner-dependent interior next to the
/// disk interior.
pub fn cmd_clay(p: u64, g_phi: u64, g_partner: u64, a: u64, b: u64) -> anyhow::Result<()> {
    let phi = build_pair(p, g_phi)?;
    require_circular(&phi)?;
    let field = phi.field().clone();
    let (a, b) = (field.element(a), field.element(b));
    let report = compare_interiors(&phi, &[g_partner], a, b)?;
    let entry = &report.entries[0];
    println!(
        "pair: p = {p}, circle group <{g_phi}> of order {}, partner group <{g_partner}>",
        phi.order()
    );
    println!("circle points: {}", format_set(report.circle.points()));
    println!(
        "partner interior ({}): {}",
        entry.points.len(),
        format_set(&entry.points)
    );
    println!(
        "orbit representatives (centered): {}",
        format_set(&entry.orbit_reps)
    );
    println!(
        "disk interior ({}): {}",
        report.definitional.len(),
        format_set(&report.definitional)
    );
    println!(
        "only in partner interior ({}): {}",
        entry.only_here.len(),
        format_set(&entry.only_here)
    );
    println!(
        "only in disk interior ({}): {}",
        entry.only_definitional.len(),
        format_set(&entry.only_definitional)
    );
    Ok(())
}

fn record_row(record: &ScanRecord) -> String {
    let disk_size = record
        .disk_size
        .map_or_else(|| "-".to_string(), |s| s.to_string());
    let punctured = record
        .punctured_disk_is_group
        .map_or("-", |g| if g { "yes" } else { "no" });
    let bibd = record
        .bibd
        .map_or_else(|| "-".to_string(), |params| params.to_string());
    format!(
        "{:>5} {:>5} {:>4} {:>8} {:>5} {:>9} {:>15} {}",
        record.p,
        record.g,
        record.k,
        record.circular,
        record.even,
        disk_size,
        punctured,
        bibd
    )
}

/// `scan p_min p_max [--order K] [--cache PATH]`: survey pairs, append
/// new records to the cache, and print the catalog for the range.
pub fn cmd_scan(
    p_min: u64,
    p_max: u64,
    order: Option<u64>,
    cache: Option<std::path::PathBuf>,
) -> anyhow::Result<()> {
    if p_min > p_max {
        bail!("p_min {p_min} must not exceed p_max {p_max}");
    }
    if let Some(k) = order {
        if k < 2 {
            bail!("subgroup order must be at least 2, got {k}");
        }
    }
    let path = scan::cache_path(cache.as_deref());
    let cached = scan::load_cache(&path)?;
    let known: BTreeSet<(u64, u64)> = cached.iter().map(|r| (r.p, r.k)).collect();
    let fresh = scan::scan_range(p_min, p_max, order, &known)?;
    scan::append_records(&path, &fresh)?;

    let in_scope = |r: &ScanRecord| {
        r.p >= p_min && r.p <= p_max && order.is_none_or(|k| r.k == k)
    };
    let cached_in_scope = cached.iter().filter(|r| in_scope(r)).count();
    let mut rows: Vec<&ScanRecord> = cached
        .iter()
        .filter(|r| in_scope(r))
        .chain(fresh.iter())
        .collect();
    rows.sort_by_key(|r| (r.p, r.k));
    println!(
        "{:>5} {:>5} {:>4} {:>8} {:>5} {:>9} {:>15} {}",
        "p", "g", "k", "circular", "even", "disk_size", "punctured_group", "bibd"
    );
    for row in rows {
        println!("{}", record_row(row));
    }
    println!(
        "{} new, {} cached (cache: {})",
        fresh.len(),
        cached_in_scope,
        path.display()
    );
    Ok(())
}

/// `conjecture p_min p_max [--odd-only]`: |M| per circular pair with raw
/// family observations; rows are flagged, never failed.
pub fn cmd_conjecture(p_min: u64, p_max: u64, odd_only: bool) -> anyhow::Result<()> {
    println!(
        "{:>5} {:>5} {:>4} {:>4} {:>7} {:>8}",
        "p", "g", "k", "n", "M_size", "matches"
    );
    for p in p_min.max(3)..=p_max {
        if !circular::is_prime(p) {
            continue;
        }
        let field = PrimeField::new(p)?;
        let bound = circularity_bound(p);
        for k in scan::orders_for(p, None) {
            if k > bound || (odd_only && k % 2 == 0) {
                continue;
            }
            let g = scan::canonical_generator(&field, k).expect("k divides p - 1");
            let phi = PhiGroup::new(field.clone(), g)?;
            if !is_circular(&phi).circular {
                continue;
            }
            let one = field.element(1);
            let zero = field.zero();
            let tangents = tangent_radius_set(&phi, one, zero)?;
            let m_size = tangents.len();
            let (n, matches) = if k % 2 == 1 {
                let n = (k - 1) / 2;
                (n, if m_size as u64 == 2 * n { "yes" } else { "no" })
            } else {
                (k / 2, "-")
            };
            println!(
                "{:>5} {:>5} {:>4} {:>4} {:>7} {:>8}",
                p, g, k, n, m_size, matches
            );
            let families = tangent_family_report(&phi, one, zero)?;
            let translated = tangent_radius_set(&phi, one, field.element(1))?;
            let invariant = translated
                .classes()
                .iter()
                .map(|x| x.value())
                .eq(tangents.classes().iter().map(|x| x.value()));
            println!(
                "# p={p} g={g}: family_pairs={} overlapping={} union_matches_disk={} translation_invariant={}",
                families.family_pairs,
                families.overlapping_family_pairs,
                families.union_matches_disk,
                invariant
            );
        }
    }
    Ok(())
}
