//! Command-line interface.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::adamschart::{mth_pipeline, render_ascii, render_svg, MthCase};
use crate::ahss::{ko4_ahss, resolve_extensions, space_expression, ExtensionPolicy};
use crate::classify::{bosonic_classification, fermionic_classification, BosonicSymmetry, FermionicCase, FinAbGroup};
use crate::error::{Error, Result};
use crate::modcat::{validate, GradedA1Module};
use crate::resolve::{ext_chart, minimal_resolution, ExtChart};
use crate::thomspaces::any_builtin;

#[derive(Parser, Debug)]
#[command(
    name = "a1ext",
    version,
    about = "Ext over A(1), Adams charts and bordism classifications"
)]
struct Cli {
    /// Truncation degree for builtin modules (defaults to tmax).
    #[arg(long, global = true)]
    truncation: Option<i32>,
    /// Output file (defaults to stdout).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Ascii,
    Svg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimal resolution of a module; emits its Ext chart as json (default), ascii or svg.
    Resolve {
        /// Builtin name such as `A1`, `MO(2)`, `RPinf(-1)` or a module JSON file.
        #[arg(long)]
        module: String,
        #[arg(long)]
        smax: u32,
        #[arg(long)]
        tmax: i32,
    },
    /// Renders a chart JSON file.
    Chart {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Homotopy groups of a Thom spectrum by the Adams spectral sequence.
    Homotopy {
        /// `ko`, `pin+`, `pin-`, `pinc+`, `pinc-`, `g+` or `spinz2n(n)`.
        #[arg(long)]
        case: String,
        #[arg(long, default_value = "0..4")]
        stems: String,
    },
    /// ko<0..4>-cohomology of a space by the Atiyah-Hirzebruch spectral sequence.
    Ahss {
        /// Product of `RPinf`, `RP(n)`, `CPinf`, `BC2n(n)`, e.g. `RPinf^2` or `RPinf*BC2n(2)`.
        #[arg(long)]
        space: String,
        #[arg(long)]
        n: i32,
        /// `maximal_torsion`, `sw_oracle` or `sw_oracle(k)`.
        #[arg(long, default_value = "maximal_torsion")]
        policy: String,
    },
    /// Classification of bosonic or fermionic phases.
    Classify {
        /// `bosonic:none_T`, `bosonic:T_U1`, `bosonic:U1`, `fermionic:C2_dim4`,
        /// `fermionic:C2xC4_dim4`, `fermionic:C2k_dim3(k)` or `fermionic:SpinZ2n(n)`.
        #[arg(long)]
        case: String,
        #[arg(long, default_value = "0..4")]
        dims: String,
    },
    /// Checks the A(1)-module relations of a module file.
    Validate {
        #[arg(long)]
        module: PathBuf,
    },
}

/// Runs the CLI and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Compute(e)) => {
            eprintln!("error: {e}");
            1
        }
    }
}

enum CliError {
    Usage(String),
    Compute(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Compute(e)
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// `a..b` (inclusive), `a..=b` or a single integer.
pub fn parse_range(s: &str) -> Result<Vec<i32>> {
    let bad = || Error::Parse(format!("bad range `{s}`"));
    let int = |x: &str| x.trim().parse::<i32>().map_err(|_| bad());
    if let Some((a, b)) = s.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        let (a, b) = (int(a)?, int(b)?);
        if a > b {
            return Err(bad());
        }
        Ok((a..=b).collect())
    } else {
        Ok(vec![int(s)?])
    }
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(p) => std::fs::write(p, text).map_err(|source| Error::Io {
            path: p.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_module(spec: &str, t: i32) -> Result<GradedA1Module> {
    let path = Path::new(spec);
    if path.is_file() {
        GradedA1Module::read(path)
    } else {
        any_builtin(spec, t, 0)
    }
}

fn table_or_json(cli: &Cli) -> std::result::Result<bool, CliError> {
    match cli.format {
        None | Some(Format::Table) => Ok(false),
        Some(Format::Json) => Ok(true),
        Some(f) => Err(usage(format!("format {f:?} is not available for this command"))),
    }
}

#[derive(Serialize)]
struct GroupRow {
    dim: i32,
    rank: u32,
    torsion: Vec<u64>,
}

impl GroupRow {
    fn new(dim: i32, g: &FinAbGroup) -> Self {
        GroupRow {
            dim,
            rank: g.rank,
            torsion: g.torsion.clone(),
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn run(cli: &Cli) -> std::result::Result<(), CliError> {
    match &cli.command {
        Command::Resolve { module, smax, tmax } => {
            let t = cli.truncation.unwrap_or(*tmax);
            let m = load_module(module, t)?;
            let chart = ext_chart(&minimal_resolution(&m, *smax, *tmax)?);
            let text = match cli.format {
                None | Some(Format::Json) => {
                    let mut s = chart.to_json();
                    s.push('\n');
                    s
                }
                Some(Format::Ascii) => render_ascii(&chart),
                Some(Format::Svg) => render_svg(&chart),
                Some(Format::Table) => return Err(usage("resolve supports json, ascii and svg")),
            };
            emit(cli, &text)?;
        }
        Command::Chart { input } => {
            let raw = std::fs::read_to_string(input).map_err(|source| Error::Io {
                path: input.display().to_string(),
                source,
            })?;
            let chart = ExtChart::from_json(&raw)?;
            let text = match cli.format {
                None | Some(Format::Ascii) => render_ascii(&chart),
                Some(Format::Svg) => render_svg(&chart),
                Some(Format::Json) => {
                    let mut s = chart.to_json();
                    s.push('\n');
                    s
                }
                Some(Format::Table) => return Err(usage("chart supports ascii, svg and json")),
            };
            emit(cli, &text)?;
        }
        Command::Homotopy { case, stems } => {
            let json = table_or_json(cli)?;
            let case: MthCase = case.parse().map_err(|e: Error| usage(e.to_string()))?;
            let stems = parse_range(stems).map_err(|e| usage(e.to_string()))?;
            let r = mth_pipeline(&case, &stems)?;
            let text = if json {
                #[derive(Serialize)]
                struct Out<'a> {
                    case: String,
                    groups: Vec<GroupRow>,
                    two_complete: bool,
                    ambiguities: &'a [String],
                }
                to_json(&Out {
                    case: case.to_string(),
                    groups: r.groups.iter().map(|(&k, g)| GroupRow::new(k, g)).collect(),
                    two_complete: r.two_complete,
                    ambiguities: &r.ambiguities,
                })
            } else {
                let mut s = String::new();
                for (k, g) in &r.groups {
                    let _ = writeln!(s, "pi_{k} {case} = {g}");
                }
                for a in &r.ambiguities {
                    let _ = writeln!(s, "note: {a}");
                }
                s
            };
            emit(cli, &text)?;
        }
        Command::Ahss { space, n, policy } => {
            let json = table_or_json(cli)?;
            let policy: ExtensionPolicy = policy.parse().map_err(|e: Error| usage(e.to_string()))?;
            let x = space_expression(space, n + 8).map_err(|e| match e {
                Error::Parse(_) | Error::UnknownName(_) => usage(e.to_string()),
                e => CliError::Compute(e),
            })?;
            let r = ko4_ahss(&x, *n)?;
            let group = match resolve_extensions(&r, policy) {
                Ok(g) => Some(g),
                Err(Error::Budget(msg)) => {
                    eprintln!("note: {msg}");
                    None
                }
                Err(e) => return Err(e.into()),
            };
            let text = if json {
                #[derive(Serialize)]
                struct Out<'a> {
                    ahss: &'a crate::ahss::AhssResult,
                    group: Option<GroupRow>,
                }
                to_json(&Out {
                    ahss: &r,
                    group: group.as_ref().map(|g| GroupRow::new(*n, g)),
                })
            } else {
                let mut s = String::new();
                for e in &r.entries {
                    let b = e.torsion_log2;
                    let bound = if b.is_exact() {
                        format!("2^{}", b.lo)
                    } else {
                        format!("2^{}..2^{}", b.lo, b.hi)
                    };
                    let _ = writeln!(
                        s,
                        "E({},{}): E2 = {}, E-infinity torsion order {bound}, rank {}",
                        e.p, e.q, e.e2, e.rank
                    );
                }
                for c in &r.candidates {
                    let _ = writeln!(s, "candidate: {c}");
                }
                for c in &r.certificates {
                    let _ = writeln!(s, "certificate: {c}");
                }
                for c in &r.notes {
                    let _ = writeln!(s, "note: {c}");
                }
                match &group {
                    Some(g) => {
                        let _ = writeln!(s, "group: {g}");
                    }
                    None => {
                        let _ = writeln!(
                            s,
                            "group: torsion order between 2^{} and 2^{}",
                            r.torsion_bounds.0, r.torsion_bounds.1
                        );
                    }
                }
                s
            };
            emit(cli, &text)?;
        }
        Command::Classify { case, dims } => {
            let json = table_or_json(cli)?;
            let dims = parse_range(dims).map_err(|e| usage(e.to_string()))?;
            let text = if let Some(sym) = case.strip_prefix("bosonic:") {
                let sym: BosonicSymmetry = sym.parse().map_err(|e: Error| usage(e.to_string()))?;
                let mut rows = Vec::new();
                for &d in &dims {
                    if d < 0 {
                        return Err(usage(format!("negative dimension {d}")));
                    }
                    rows.push((d, bosonic_classification(sym, d as u32)?));
                }
                render_rows(case, &rows, json)
            } else if let Some(rest) = case.strip_prefix("fermionic:") {
                let cases: Vec<(i32, FermionicCase)> = match rest.strip_prefix("SpinZ2n(") {
                    Some(arg) if !arg.contains(',') => {
                        let n: u32 = arg
                            .trim_end_matches(')')
                            .parse()
                            .map_err(|_| usage(format!("bad case `{case}`")))?;
                        dims.iter().map(|&d| (d, FermionicCase::SpinZ2n(n, d))).collect()
                    }
                    _ => {
                        let c: FermionicCase = rest.parse().map_err(|e: Error| usage(e.to_string()))?;
                        let d = match c {
                            FermionicCase::C2Dim4 | FermionicCase::C2xC4Dim4 => 4,
                            FermionicCase::C2kDim3(_) => 3,
                            FermionicCase::SpinZ2n(_, s) => s,
                        };
                        vec![(d, c)]
                    }
                };
                let mut out = Vec::new();
                for (d, c) in cases {
                    out.push((d, fermionic_classification(&c)?));
                }
                if json {
                    #[derive(Serialize)]
                    struct Row {
                        dim: i32,
                        rank: Option<u32>,
                        torsion: Option<Vec<u64>>,
                        certificate: crate::classify::Certificate,
                        notes: Vec<String>,
                    }
                    let rows: Vec<Row> = out
                        .into_iter()
                        .map(|(dim, r)| Row {
                            dim,
                            rank: r.group.as_ref().map(|g| g.rank),
                            torsion: r.group.as_ref().map(|g| g.torsion.clone()),
                            certificate: r.certificate,
                            notes: r.notes,
                        })
                        .collect();
                    to_json(&rows)
                } else {
                    let mut s = String::new();
                    for (d, r) in out {
                        let g = r.group.map_or("unknown".to_string(), |g| g.to_string());
                        let _ = writeln!(s, "{case} d={d}: {g} ({:?})", r.certificate);
                        for n in r.notes {
                            let _ = writeln!(s, "  note: {n}");
                        }
                    }
                    s
                }
            } else {
                return Err(usage(format!("case `{case}` must start with bosonic: or fermionic:")));
            };
            emit(cli, &text)?;
        }
        Command::Validate { module } => {
            let m = GradedA1Module::read(module)?;
            let rep = validate(&m);
            if let Some(f) = rep.first_failure() {
                return Err(Error::range(
                    m.name.clone(),
                    f.degree,
                    format!(
                        "relation for word {:?} fails: {} ({} failures)",
                        f.word,
                        f.detail,
                        rep.failures.len()
                    ),
                )
                .into());
            }
            emit(cli, &format!("{}: ok ({} words checked)\n", m.name, rep.words_checked))?;
        }
    }
    Ok(())
}

fn render_rows(case: &str, rows: &[(i32, FinAbGroup)], json: bool) -> String {
    if json {
        return to_json(&rows.iter().map(|(d, g)| GroupRow::new(*d, g)).collect::<Vec<_>>());
    }
    let mut s = String::new();
    let _ = writeln!(s, "{case}");
    for (d, g) in rows {
        let _ = writeln!(s, "d={d}: {g}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("0..4").unwrap(), vec![0, 1, 2, 3, 4]);
        assert_eq!(parse_range("2..=3").unwrap(), vec![2, 3]);
        assert_eq!(parse_range("5").unwrap(), vec![5]);
        assert!(parse_range("4..1").is_err());
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(main_with_args(["a1ext", "frobnicate"]), 2);
        assert_eq!(main_with_args(["a1ext", "homotopy", "--case", "nope"]), 2);
    }
}
