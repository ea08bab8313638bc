//! Command-line front end.
//!
//! Exit codes: 0 success, 1 failed verification or internal inconsistency,
//! 2 usage or input error, 3 capacity error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::classify::classify_facets;
use crate::collapse::{collapse_above_dim_checked, BettiCheck};
use crate::complex::SimplicialComplex;
use crate::error::Error;
use crate::homology::reduced_betti;
use crate::pitchspace::{PitchUniverse, Scale};
use crate::spheres::sphere_report;
use crate::verify;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum OutputFormat {
    #[default]
    Table,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "scale-complex",
    version,
    about = "The simplicial complex of non-chromatic scales"
)]
pub struct Cli {
    /// Number of pitch classes in the cyclic universe.
    #[arg(long, global = true, default_value_t = 12)]
    pub pitches: u32,

    /// Length of the forbidden run of consecutive pitch classes.
    #[arg(long = "run", global = true, default_value_t = 3)]
    pub run_limit: u32,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Face counts by dimension, starting with the empty face.
    Fvector,
    /// Maximal non-chromatic scales.
    Facets,
    /// Facets grouped by interval sequence.
    Classify,
    /// Reduced Betti numbers over the rationals.
    Homology {
        /// Complex in JSON form instead of the non-chromatic complex.
        #[arg(long)]
        facets_file: Option<PathBuf>,
    },
    /// Collapse away every face above a dimension.
    Collapse {
        #[arg(long, default_value_t = 5)]
        to_dim: isize,
        #[arg(long)]
        facets_file: Option<PathBuf>,
    },
    /// The four Messiaen spheres and their intersections.
    Spheres,
    /// Check every known count and property of the default complex.
    Verify,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::Capacity { .. }) => 3,
            CliError::Core(Error::Inconsistency(_)) | CliError::Verification(_) => 1,
            CliError::Core(_) | CliError::Io(_) => 2,
        }
    }
}

type CliResult = std::result::Result<(), CliError>;

/// Runs one parsed invocation, writing its report to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> CliResult {
    let u = PitchUniverse::new(cli.pitches, cli.run_limit)?;
    let json = cli.format == OutputFormat::Json;
    let text = match &cli.command {
        Command::Fvector => fvector(&u, json)?,
        Command::Facets => facets(&u, json)?,
        Command::Classify => classify(&u, json)?,
        Command::Homology { facets_file } => homology(&load(&u, facets_file.as_ref())?, json),
        Command::Collapse { to_dim, facets_file } => collapse(&load(&u, facets_file.as_ref())?, *to_dim, json)?,
        Command::Spheres => spheres(&u, json)?,
        Command::Verify => {
            let report = verify::run_all()?;
            out.write_all(render_verify(&report, json).as_bytes())?;
            if !report.passed {
                let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
                return Err(CliError::Verification(failed.join(", ")));
            }
            return Ok(());
        }
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn load(u: &PitchUniverse, path: Option<&PathBuf>) -> std::result::Result<SimplicialComplex, CliError> {
    match path {
        Some(p) => Ok(SimplicialComplex::from_json_str(&std::fs::read_to_string(p)?)?),
        None => Ok(SimplicialComplex::non_chromatic(u)?),
    }
}

fn to_json(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn label(s: Scale, ground: u32) -> String {
    if ground == 12 {
        s.note_names()
    } else {
        s.to_string()
    }
}

fn fvector(u: &PitchUniverse, json: bool) -> crate::Result<String> {
    let fv = SimplicialComplex::non_chromatic(u)?.f_vector();
    Ok(if json {
        format!("{}\n", json!({ "f_vector": fv }))
    } else {
        format!("{fv}\n")
    })
}

fn facets(u: &PitchUniverse, json: bool) -> crate::Result<String> {
    let k = SimplicialComplex::non_chromatic(u)?;
    let mut facets = k.facets();
    facets.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    if json {
        return Ok(to_json(&json!({ "count": facets.len(), "facets": facets })));
    }
    let mut out = String::new();
    for f in facets {
        let seq = u.interval_sequence(f).map(|s| s.to_string()).unwrap_or_default();
        writeln!(out, "{:<24} {}", label(f, u.n_pitches()), seq).expect("write to string");
    }
    Ok(out)
}

fn classify(u: &PitchUniverse, json: bool) -> crate::Result<String> {
    let k = SimplicialComplex::non_chromatic(u)?;
    let classes = classify_facets(&k, u)?;
    if json {
        let rows: Vec<_> = classes
            .iter()
            .map(|c| {
                json!({
                    "pitch_classes": c.cardinality,
                    "interval_sequence": c.display_sequence,
                    "canonical_sequence": c.canonical_sequence.canonical_string(),
                    "scales": c.scale_count,
                    "name": c.name,
                })
            })
            .collect();
        return Ok(to_json(&json!({ "facet_count": k.facets().len(), "classes": rows })));
    }
    let mut out = String::new();
    writeln!(
        out,
        "{:<14} {:<18} {:<7} name",
        "pitch classes", "interval sequence", "scales"
    )
    .unwrap();
    for c in &classes {
        writeln!(
            out,
            "{:<14} {:<18} {:<7} {}",
            c.cardinality, c.display_sequence, c.scale_count, c.name
        )
        .unwrap();
    }
    writeln!(out, "total facets: {}", k.facets().len()).unwrap();
    Ok(out)
}

fn homology(k: &SimplicialComplex, json: bool) -> String {
    let b = reduced_betti(k);
    if json {
        return to_json(&json!({
            "dims_from": -1,
            "reduced_betti": b,
            "f_vector": k.f_vector(),
        }));
    }
    format!("reduced Betti numbers, dimensions -1..{}: {b}\n", k.dimension())
}

fn collapse(k: &SimplicialComplex, to_dim: isize, json: bool) -> std::result::Result<String, CliError> {
    let (outcome, before) = collapse_above_dim_checked(k, to_dim, BettiCheck::Endpoints)?;
    let after = reduced_betti(&outcome.complex);
    if json {
        return Ok(to_json(&json!({
            "to_dim": to_dim,
            "complete": outcome.complete,
            "f_vector_before": k.f_vector(),
            "f_vector_after": outcome.complex.f_vector(),
            "reduced_betti_before": before,
            "reduced_betti_after": after,
            "log": outcome.log,
        })));
    }
    let mut out = String::new();
    writeln!(out, "f-vector before: {}", k.f_vector()).unwrap();
    writeln!(out, "f-vector after:  {}", outcome.complex.f_vector()).unwrap();
    writeln!(out, "reduced Betti before: {before}").unwrap();
    writeln!(out, "reduced Betti after:  {after}").unwrap();
    let max_card = outcome.complex.dimension() + 1;
    writeln!(
        out,
        "collapses: {} ({}), largest remaining face has {max_card} elements",
        outcome.log.len(),
        if outcome.complete { "complete" } else { "stuck" }
    )
    .unwrap();
    for p in &outcome.log {
        writeln!(out, "{} / {}", p.facet, p.free_face).unwrap();
    }
    Ok(out)
}

fn spheres(u: &PitchUniverse, json: bool) -> crate::Result<String> {
    let k = SimplicialComplex::non_chromatic(u)?;
    let report = sphere_report(u, &k)?;
    if json {
        return Ok(to_json(&report));
    }
    let mut out = String::new();
    for (i, s) in report.spheres.iter().enumerate() {
        writeln!(
            out,
            "sphere {i}: omit {} | {} hexatonics | Betti ({}) | pseudomanifold {} | connected {} | certified {}",
            s.omitted_triad.note_names(),
            s.hexatonics.len(),
            s.certificate.betti,
            s.certificate.closed_pseudomanifold,
            s.certificate.dual_connected,
            s.certified,
        )
        .unwrap();
    }
    for p in &report.pairwise_intersections {
        writeln!(
            out,
            "spheres {:?} meet in {} ({}) facet {} collapses to triads {}",
            p.spheres,
            p.intersection.note_names(),
            p.interval_sequence,
            p.is_facet,
            p.collapses_to_triads
        )
        .unwrap();
    }
    for t in &report.triple_intersections {
        writeln!(
            out,
            "spheres {:?} meet in {} augmented {} collapses to a point {}",
            t.spheres,
            t.intersection.note_names(),
            t.is_augmented_triad,
            t.triad_collapses_to_point
        )
        .unwrap();
    }
    writeln!(out, "all four meet in {}", report.quadruple_intersection).unwrap();
    for r in &report.basis_ranks {
        writeln!(out, "homology rank of spheres {:?}: {}", r.spheres, r.rank).unwrap();
    }
    writeln!(out, "reduced Betti 5: {}", report.betti_5).unwrap();
    Ok(out)
}

fn render_verify(report: &verify::VerifyReport, json: bool) -> String {
    if json {
        return to_json(report);
    }
    let mut out = String::new();
    for c in &report.checks {
        writeln!(
            out,
            "{} {}: {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        )
        .unwrap();
    }
    let passed = report.checks.iter().filter(|c| c.passed).count();
    writeln!(out, "{passed}/{} checks passed", report.checks.len()).unwrap();
    out
}
