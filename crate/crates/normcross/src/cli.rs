//! Command-line front end.
//!
//! Every command prints one JSON document (or a plain table) on stdout.
//! Output depends only on the arguments: no timings, no hash-ordered maps.
//! Exit codes: 0 success, 2 precondition failure (bad input, unmet
//! hypotheses), 3 enumeration abort (a resource cap was hit).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curves::{coords_of_slope, BoundaryCurveCoords, Class, CurveError, Slope};
use crate::homology::{two_torsion_framing, Framing, FramingFlavor, HomologyError, Peripheral};
use crate::invariants::{
    classify, crosscap_general, crosscap_quad, crosscap_suitable, edge_class, knot_genus, meridian_class, slope_norm,
    slope_norm_of_manifold, Config, CrosscapResult, InvariantError, SurfaceRole,
};
use crate::normal::{
    fundamental_surfaces, zero_efficiency_check, Caps, CoordSystem, EfficiencyReport, NormalError, NormalSurface,
    WitnessKind, DEFAULT_DISC_CAP, DEFAULT_HB_CAP,
};
use crate::triangulation::{
    compute_skeleton, validate_knot_exterior, ExteriorReport, Triangulation, TriangulationError,
};

pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_ABORT: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Triangulation(#[from] TriangulationError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Normal(#[from] NormalError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error("malformed manifest: {0}")]
    Manifest(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        let abort = match self {
            CliError::Normal(e) => e.is_abort(),
            CliError::Invariant(e) => e.is_abort(),
            _ => false,
        };
        if abort {
            EXIT_ABORT
        } else {
            EXIT_PRECONDITION
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Coords {
    Standard,
    Quad,
}

impl From<Coords> for CoordSystem {
    fn from(c: Coords) -> Self {
        match c {
            Coords::Standard => CoordSystem::Standard,
            Coords::Quad => CoordSystem::Quad,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "normcross", version, about = "Slope norms, knot genus and crosscap numbers of knot exteriors")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that the input is a knot exterior, and report efficiency and suitability.
    Validate(RunConfig),
    /// List fundamental (or Q-fundamental) surfaces.
    Enumerate(RunConfig),
    /// Norm of an even slope, or of the manifold when no slope is given.
    Slopenorm(RunConfig),
    /// Crosscap number.
    Crosscap(RunConfig),
    /// Knot genus.
    Genus(RunConfig),
    /// Crosscap numbers for every knot in a manifest, one row each.
    Batch(BatchConfig),
}

#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["input", "isosig"])))]
#[command(group(ArgGroup::new("meridian").args(["meridian_edge", "meridian_coords"])))]
pub struct RunConfig {
    /// Gluing-table JSON or a file holding an isomorphism signature.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub isosig: Option<String>,
    /// Boundary edge isotopic to the meridian.
    #[arg(long)]
    pub meridian_edge: Option<usize>,
    /// Meridian as boundary arc coordinates `x1,x2,x3`.
    #[arg(long, value_parser = parse_coords)]
    pub meridian_coords: Option<BoundaryCurveCoords>,
    /// Slope `p/q` relative to the framing; the meridian for `crosscap` and
    /// `genus` when no other meridian is given.
    #[arg(long)]
    pub slope: Option<Slope>,
    /// Framing as two classes `a/b c/d` in boundary-edge coordinates;
    /// defaults to the 2-torsion framing.
    #[arg(long, num_args = 2, value_names = ["FIRST", "SECOND"])]
    pub framing: Option<Vec<String>>,
    #[arg(long, value_enum, default_value = "standard")]
    pub coords: Coords,
    #[arg(long, default_value_t = DEFAULT_DISC_CAP, value_parser = clap::value_parser!(u64).range(1..))]
    pub disc_cap: u64,
    #[arg(long, default_value_t = DEFAULT_HB_CAP, value_parser = parse_positive)]
    pub hb_cap: usize,
    /// Skip the efficiency check and trust the triangulation's hypotheses.
    #[arg(long)]
    pub assume_efficient: bool,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct BatchConfig {
    /// JSON list of `{name, isosig | file, meridian_edge}`.
    #[arg(long)]
    pub manifest: PathBuf,
    #[arg(long, value_enum, default_value = "quad")]
    pub coords: Coords,
    #[arg(long, default_value_t = DEFAULT_DISC_CAP, value_parser = clap::value_parser!(u64).range(1..))]
    pub disc_cap: u64,
    #[arg(long, default_value_t = DEFAULT_HB_CAP, value_parser = parse_positive)]
    pub hb_cap: usize,
    #[arg(long)]
    pub assume_efficient: bool,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

fn parse_coords(s: &str) -> Result<BoundaryCurveCoords, String> {
    s.parse().map_err(|e: CurveError| e.to_string())
}

fn parse_positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

impl RunConfig {
    fn config(&self) -> Config {
        Config {
            caps: Caps { discs: self.disc_cap, generators: self.hb_cap },
            check_efficiency: !self.assume_efficient,
        }
    }

    fn triangulation(&self) -> Result<Triangulation, CliError> {
        match (&self.input, &self.isosig) {
            (Some(path), _) => Ok(Triangulation::parse(&read(path)?)?),
            (None, Some(sig)) => Ok(Triangulation::from_isosig(sig.trim())?),
            (None, None) => Err(CliError::Usage("one of --input or --isosig is required".into())),
        }
    }

    fn framing(&self, tri: &Triangulation) -> Result<Framing, CliError> {
        match self.framing.as_deref() {
            Some([a, b]) => Ok(Framing::from_strings(a, b, FramingFlavor::TwoTorsion)?),
            Some(_) => Err(CliError::Usage("--framing takes two classes".into())),
            None => Ok(two_torsion_framing(tri)?),
        }
    }

    /// The meridian as a class, from whichever form was given.
    fn meridian(&self, tri: &Triangulation) -> Result<Option<Class>, CliError> {
        if let Some(e) = self.meridian_edge {
            return Ok(Some(edge_class(&Peripheral::new(tri)?.torus, e)?));
        }
        if let Some(c) = self.meridian_coords {
            return Ok(Some(meridian_class(c)?));
        }
        match self.slope {
            Some(s) => Ok(Some(meridian_class(coords_of_slope(s, &self.framing(tri)?))?)),
            None => Ok(None),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

#[derive(Debug, Serialize)]
pub struct ValidateReport {
    pub tetrahedra: usize,
    pub exterior: ExteriorReport,
    /// Absent when the exterior checks fail.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub efficiency: Option<EfficiencyReport>,
    pub meridian_edge: Option<usize>,
    pub efficient_suitable: bool,
}

pub fn cmd_validate(cfg: &RunConfig) -> Result<ValidateReport, CliError> {
    let tri = cfg.triangulation()?;
    let exterior = validate_knot_exterior(&tri);
    let efficiency = if exterior.passed() { Some(zero_efficiency_check(&tri, cfg.config().caps)?) } else { None };
    let on_boundary = match cfg.meridian_edge {
        Some(e) if exterior.passed() => compute_skeleton(&tri).boundary_edges().contains(&e),
        _ => false,
    };
    let no_spheres = efficiency.as_ref().is_some_and(|r| r.witnesses.iter().all(|w| w.kind == WitnessKind::Disc));
    Ok(ValidateReport {
        tetrahedra: tri.size(),
        exterior,
        efficiency,
        meridian_edge: cfg.meridian_edge,
        efficient_suitable: on_boundary && no_spheres,
    })
}

#[derive(Debug, Serialize)]
pub struct EnumeratedSurface {
    #[serde(flatten)]
    pub surface: NormalSurface,
    /// Relation to the meridian, when one was given.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub role: Option<SurfaceRole>,
}

#[derive(Debug, Serialize)]
pub struct EnumerateReport {
    pub system: CoordSystem,
    pub count: usize,
    pub disconnected_excluded: usize,
    pub surfaces: Vec<EnumeratedSurface>,
}

pub fn cmd_enumerate(cfg: &RunConfig) -> Result<EnumerateReport, CliError> {
    let tri = cfg.triangulation()?;
    let meridian = cfg.meridian(&tri)?;
    let set = fundamental_surfaces(&tri, cfg.coords.into(), cfg.config().caps)?;
    let mut surfaces: Vec<EnumeratedSurface> = set
        .surfaces
        .into_iter()
        .map(|s| EnumeratedSurface { role: meridian.map(|m| classify(&s, m)), surface: s })
        .collect();
    surfaces.sort_by(|a, b| a.surface.coords.cmp(&b.surface.coords));
    Ok(EnumerateReport {
        system: set.system,
        count: surfaces.len(),
        disconnected_excluded: set.disconnected_excluded,
        surfaces,
    })
}

pub fn cmd_slopenorm(cfg: &RunConfig) -> Result<serde_json::Value, CliError> {
    let tri = cfg.triangulation()?;
    let fr = cfg.framing(&tri)?;
    let value = match cfg.slope {
        Some(delta) => {
            if cfg.coords == Coords::Quad {
                return Err(CliError::Usage("the norm of a single slope is computed in standard coordinates".into()));
            }
            serde_json::to_value(slope_norm(&tri, &fr, delta, &cfg.config())?)
        }
        None => serde_json::to_value(slope_norm_of_manifold(&tri, &fr, cfg.coords.into(), &cfg.config())?),
    };
    Ok(value.expect("results serialise"))
}

/// Picks the algorithm from the meridian form and coordinate system: an
/// edge selects the suitable (standard) or quad method, a curve the general one.
pub fn cmd_crosscap(cfg: &RunConfig) -> Result<CrosscapResult, CliError> {
    let tri = cfg.triangulation()?;
    let config = cfg.config();
    let result = match (cfg.meridian_edge, cfg.coords) {
        (Some(e), Coords::Standard) => crosscap_suitable(&tri, e, &config)?,
        (Some(e), Coords::Quad) => crosscap_quad(&tri, e, &config)?,
        (None, Coords::Standard) => {
            let curve = match (cfg.meridian_coords, cfg.slope) {
                (Some(c), _) => c,
                (None, Some(s)) => coords_of_slope(s, &cfg.framing(&tri)?),
                (None, None) => return Err(CliError::Usage("a meridian is required".into())),
            };
            crosscap_general(&tri, curve, &config)?
        }
        (None, Coords::Quad) => {
            return Err(CliError::Usage("quad coordinates need the meridian as a boundary edge".into()));
        }
    };
    Ok(result)
}

pub fn cmd_genus(cfg: &RunConfig) -> Result<serde_json::Value, CliError> {
    let tri = cfg.triangulation()?;
    let m = cfg.meridian(&tri)?.ok_or_else(|| CliError::Usage("a meridian is required".into()))?;
    let r = knot_genus(&tri, m, &cfg.config())?;
    Ok(serde_json::to_value(r).expect("results serialise"))
}

#[derive(Debug, Deserialize)]
struct ManifestEntry {
    name: String,
    isosig: Option<String>,
    file: Option<PathBuf>,
    meridian_edge: usize,
}

/// One row of a crosscap table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BatchRow {
    pub name: String,
    pub cross: Option<u64>,
    #[serde(rename = "nOr")]
    pub n_or: Option<i64>,
    pub or: Option<i64>,
    #[serde(rename = "nSp")]
    pub n_sp: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Runs every manifest entry; failures become rows with an error, and the
/// first failure's exit code is returned alongside.
pub fn cmd_batch(cfg: &BatchConfig) -> Result<(Vec<BatchRow>, i32), CliError> {
    let text = read(&cfg.manifest)?;
    let entries: Vec<ManifestEntry> = serde_json::from_str(&text).map_err(|e| CliError::Manifest(e.to_string()))?;
    let dir = cfg.manifest.parent().unwrap_or(Path::new("."));
    let mut rows = Vec::new();
    let mut code = 0;
    for entry in entries {
        let run = RunConfig {
            input: entry.file.as_ref().map(|f| dir.join(f)),
            isosig: entry.isosig.clone(),
            meridian_edge: Some(entry.meridian_edge),
            meridian_coords: None,
            slope: None,
            framing: None,
            coords: cfg.coords,
            disc_cap: cfg.disc_cap,
            hb_cap: cfg.hb_cap,
            assume_efficient: cfg.assume_efficient,
            format: cfg.format,
        };
        match cmd_crosscap(&run) {
            Ok(r) => rows.push(BatchRow {
                name: entry.name,
                cross: Some(r.crosscap),
                n_or: r.n_or,
                or: r.or,
                n_sp: r.n_sp,
                error: None,
            }),
            Err(e) => {
                if code == 0 {
                    code = e.exit_code();
                }
                rows.push(BatchRow {
                    name: entry.name,
                    cross: None,
                    n_or: None,
                    or: None,
                    n_sp: None,
                    error: Some(e.to_string()),
                });
            }
        }
    }
    Ok((rows, code))
}

fn cell<T: std::fmt::Display>(x: &Option<T>) -> String {
    x.as_ref().map_or("-".to_string(), T::to_string)
}

fn batch_table(rows: &[BatchRow]) -> String {
    let mut out = format!("{:<12} {:>5} {:>5} {:>5} {:>5}\n", "knot", "cross", "nOr", "or", "nSp");
    for r in rows {
        let _ = write!(
            out,
            "{:<12} {:>5} {:>5} {:>5} {:>5}",
            r.name,
            cell(&r.cross),
            cell(&r.n_or),
            cell(&r.or),
            cell(&r.n_sp)
        );
        if let Some(e) = &r.error {
            let _ = write!(out, "  ({e})");
        }
        out.push('\n');
    }
    out
}

fn surface_table(r: &EnumerateReport) -> String {
    let mut out = format!("{} {} surfaces ({} disconnected excluded)\n", r.count, r.system, r.disconnected_excluded);
    let _ =
        writeln!(out, "{:>5} {:>5} {:>5} {:>5}  {:<24} {:<22} coords", "#", "chi", "or", "conn", "boundary", "role");
    for (i, s) in r.surfaces.iter().enumerate() {
        let f = &s.surface;
        let boundary: Vec<String> = f.boundary.iter().map(ToString::to_string).collect();
        let role = s.role.map_or("-".to_string(), |x| format!("{x:?}"));
        let coords: Vec<String> = f.coords.iter().map(ToString::to_string).collect();
        let _ = writeln!(
            out,
            "{i:>5} {:>5} {:>5} {:>5}  {:<24} {:<22} {}",
            f.euler,
            f.orientable,
            f.connected,
            boundary.join(" "),
            role,
            coords.join(" ")
        );
    }
    out
}

/// Flattens a JSON object into `key: value` lines.
fn key_value_table(v: &serde_json::Value) -> String {
    fn walk(prefix: &str, v: &serde_json::Value, out: &mut String) {
        match v {
            serde_json::Value::Object(map) => {
                for (k, x) in map {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&key, x, out);
                }
            }
            serde_json::Value::Array(xs) if xs.iter().any(|x| x.is_object()) => {
                for (i, x) in xs.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), x, out);
                }
            }
            _ => {
                let _ = writeln!(out, "{prefix}: {v}");
            }
        }
    }
    let mut out = String::new();
    walk("", v, &mut out);
    out
}

fn render<T: Serialize>(value: &T, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(value).expect("results serialise") + "\n",
        Format::Table => key_value_table(&serde_json::to_value(value).expect("results serialise")),
    }
}

/// Runs a parsed command; returns the text for stdout and the exit code.
pub fn execute(cli: &Cli) -> Result<(String, i32), CliError> {
    let out = match &cli.command {
        Command::Validate(c) => {
            let r = cmd_validate(c)?;
            let text = match c.format {
                Format::Json => render(&r, Format::Json),
                Format::Table => {
                    let mut t = key_value_table(&serde_json::to_value(&r).expect("results serialise"));
                    for d in &r.exterior.diagnostics {
                        let _ = writeln!(t, "diagnostic: {d}");
                    }
                    let _ = writeln!(t, "efficient suitable: {}", r.efficient_suitable);
                    t
                }
            };
            (text, 0)
        }
        Command::Enumerate(c) => {
            let r = cmd_enumerate(c)?;
            let text = match c.format {
                Format::Json => render(&r, Format::Json),
                Format::Table => surface_table(&r),
            };
            (text, 0)
        }
        Command::Slopenorm(c) => (render(&cmd_slopenorm(c)?, c.format), 0),
        Command::Crosscap(c) => (render(&cmd_crosscap(c)?, c.format), 0),
        Command::Genus(c) => (render(&cmd_genus(c)?, c.format), 0),
        Command::Batch(c) => {
            let (rows, code) = cmd_batch(c)?;
            let text = match c.format {
                Format::Json => render(&rows, Format::Json),
                Format::Table => batch_table(&rows),
            };
            (text, code)
        }
    };
    Ok(out)
}

/// Sizes the global thread pool from `NORMCROSS_THREADS`, if set.
fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("NORMCROSS_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("NORMCROSS_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| CliError::Usage(e.to_string()))
}

/// Entry point for the binary; returns the process exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_PRECONDITION } else { 0 };
        }
    };
    match configure_threads().and_then(|()| execute(&cli)) {
        Ok((text, code)) => {
            print!("{text}");
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn meridian_forms_are_exclusive() {
        let r = Cli::try_parse_from([
            "normcross",
            "crosscap",
            "--isosig",
            "x",
            "--meridian-edge",
            "0",
            "--meridian-coords",
            "1,0,0",
        ]);
        assert!(r.is_err());
        assert!(Cli::try_parse_from(["normcross", "crosscap", "--meridian-edge", "0"]).is_err());
        assert!(Cli::try_parse_from(["normcross", "crosscap", "--isosig", "x", "--hb-cap", "0"]).is_err());
    }

    #[test]
    fn abort_exit_code() {
        let e = CliError::Normal(NormalError::DiscCap { discs: 2, cap: 1 });
        assert_eq!(e.exit_code(), EXIT_ABORT);
        assert_eq!(CliError::Usage(String::new()).exit_code(), EXIT_PRECONDITION);
    }

    #[test]
    fn table_flattens_nested_objects() {
        let v = serde_json::json!({"a": 1, "b": {"c": [1, 2]}, "d": [{"e": null}]});
        assert_eq!(key_value_table(&v), "a: 1\nb.c: [1,2]\nd[0].e: null\n");
    }
}
