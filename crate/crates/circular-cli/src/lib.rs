//! Command-line surface for the `circular` library: pair inspection, disk
//! and interior queries, design verification and export, cached scans for
//! circular pairs, and the tangent-class counting experiment.

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

pub mod commands;
pub mod scan;

#[derive(Parser, Debug)]
#[command(
    name = "circular",
    version,
    about = "Circles, disks, and block designs of circular Ferrero pairs over prime fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Inspect a pair (Z_p, <g>): orbits, regularity, circularity
    Pair {
        /// Prime modulus
        p: u64,
        /// Generator of the multiplicative subgroup
        g: u64,
    },
    /// Compute the disk D(a; b) and the interior of the circle
    Disk {
        /// Prime modulus
        p: u64,
        /// Generator of the multiplicative subgroup
        g: u64,
        /// Radius (nonzero)
        a: u64,
        /// Center
        b: u64,
        /// Construction to use; `both` cross-checks fast against brute force
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Build a block design from circles or disks and verify it
    Design {
        /// Prime modulus
        p: u64,
        /// Generator of the multiplicative subgroup
        g: u64,
        /// Which blocks to use
        #[arg(long, value_enum, default_value_t = Blocks::Circles)]
        blocks: Blocks,
        /// Write the design to this path
        #[arg(long)]
        export: Option<PathBuf>,
        /// Export format: a JSON design file or a CSV incidence matrix
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Partner-dependent interior of a circle next to the disk interior
    Clay {
        /// Prime modulus
        p: u64,
        /// Generator of the circle-bearing subgroup
        g_phi: u64,
        /// Generator of the partner subgroup supplying the rays
        g_partner: u64,
        /// Radius of the circle (nonzero)
        a: u64,
        /// Center of the circle
        b: u64,
    },
    /// Scan a prime range for circular pairs, caching what was computed
    Scan {
        /// Smallest prime to consider
        p_min: u64,
        /// Largest prime to consider
        p_max: u64,
        /// Only this subgroup order
        #[arg(long, conflicts_with = "all_orders")]
        order: Option<u64>,
        /// Every subgroup order of each prime (the default)
        #[arg(long)]
        all_orders: bool,
        /// Cache file (default: $CIRCULAR_CACHE_DIR/scan-cache.jsonl or ./scan-cache.jsonl)
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Tangent radius class counts |M| for circular pairs in a prime range
    Conjecture {
        /// Smallest prime to consider
        p_min: u64,
        /// Largest prime to consider
        p_max: u64,
        /// Keep only pairs of odd group order
        #[arg(long)]
        odd_only: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Fast construction for even order, brute force for odd
    Auto,
    /// Enumerate all circles through the center
    Brute,
    /// Even-order family construction only
    Fast,
    /// Run both and insist they agree
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Blocks {
    Circles,
    Disks,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// Parses the process arguments and runs the chosen command.
pub fn run() -> anyhow::Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Pair { p, g } => commands::cmd_pair(p, g),
        Command::Disk { p, g, a, b, method } => commands::cmd_disk(p, g, a, b, method),
        Command::Design {
            p,
            g,
            blocks,
            export,
            format,
        } => commands::cmd_design(p, g, blocks, export.as_deref(), format),
        Command::Clay {
            p,
            g_phi,
            g_partner,
            a,
            b,
        } => commands::cmd_clay(p, g_phi, g_partner, a, b),
        Command::Scan {
            p_min,
            p_max,
            order,
            all_orders: _,
            cache,
        } => commands::cmd_scan(p_min, p_max, order, cache),
        Command::Conjecture {
            p_min,
            p_max,
            odd_only,
        } => commands::cmd_conjecture(p_min, p_max, odd_only),
    }
}
