//! `nilfract`: exact group-theory computations from the command line.
//!
//! Exit status: 0 when the requested check passes (or the computation
//! succeeds), 1 on a mathematical failure (a fracture square that is not a
//! pullback, invalid tower data, a refused non-nilpotent input), 2 on an
//! input error.

use clap::{Parser, Subcommand};
use nilfract_core::actions::{alpha_lower_central_series, structure_to_tower, tower_to_structure};
use nilfract_core::fracture::{
    fracture_colimit_row_check, fracture_finite_nilpotent, fracture_postnikov,
    fracture_square_abelian, FractureFamilies, DEFAULT_SEED,
};
use nilfract_core::localization::{localize_abelian, localize_finite_nilpotent, NumSet};
use nilfract_core::matrix::smith_normal_form;
use nilfract_core::parse::{parse_group, parse_numbers};
use nilfract_core::postnikov::{localize_tower, nilpotency_degree, principal_factorization};
use nilfract_core::{
    Error, GroupAction, GroupTarget, IntMatrix, NilpotentStructure, PostnikovData,
    SubTarget,
};
use serde::Serialize;
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "nilfract", version, about = "Nilpotent groups, localization away from sets of naturals, and fracture squares")]
struct Cli {
    /// Write the JSON report to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for sampled (non-exhaustive) checks
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Smith normal form of an integer matrix (inline JSON or @file)
    Snf {
        #[arg(long)]
        matrix: String,
    },
    /// Localize a group away from a set of naturals
    Localize {
        /// Group: a named constructor, inline JSON, or @file
        #[arg(long)]
        group: String,
        /// Comma-separated naturals to invert, e.g. 2,3
        #[arg(long)]
        away: String,
    },
    /// Verify the fracture square for a group or a Postnikov tower
    Fracture {
        #[arg(long, conflicts_with = "tower")]
        group: Option<String>,
        #[arg(long)]
        tower: Option<PathBuf>,
        /// Entries of the family R, e.g. 2
        #[arg(long)]
        r: String,
        /// Entries of the family S, e.g. 3,5
        #[arg(long)]
        s: String,
        /// Depth for the derived families and the colimit-row check
        #[arg(long, default_value_t = 4)]
        depth: usize,
        /// Additionally run the three-row colimit diagram check
        #[arg(long)]
        check_colimit: bool,
    },
    /// Lower central series, nilpotency and Sylow decomposition
    Nilpotency {
        #[arg(long)]
        group: String,
    },
    /// Convert a central series into its epimorphism tower
    SeriesConvert {
        /// A Cayley-table group; the series lives on its conjugation action
        #[arg(long)]
        group: String,
        /// Chain as a JSON list of element-index lists; defaults to the
        /// twisted lower central series
        #[arg(long)]
        chain: Option<String>,
    },
    /// Validate Postnikov tower data
    TowerValidate {
        #[arg(long)]
        tower: PathBuf,
    },
    /// Localize every homotopy group of a tower
    TowerLocalize {
        #[arg(long)]
        tower: PathBuf,
        #[arg(long)]
        away: String,
    },
    /// Factor every level of a tower through principal-fibration stages
    Factorize {
        #[arg(long)]
        tower: PathBuf,
    },
}

#[derive(Serialize)]
struct Report {
    command: String,
    pass: bool,
    warnings: Vec<String>,
    result: Value,
}

enum Failure {
    Input(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::ZeroInNumSet
            | Error::NotCoprime(_, _)
            | Error::Dimension(_)
            | Error::DepthOutOfRange { .. }
            | Error::Invalid { .. } => Failure::Input(e.to_string()),
            _ => Failure::Math(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command_echo = echo(&cli.command);
    match run(&cli) {
        Ok(report) => {
            let code = if report.pass { 0 } else { 1 };
            emit(&cli.out, &report);
            ExitCode::from(code)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("input error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Math(msg)) => {
            let report = Report {
                command: command_echo,
                pass: false,
                warnings: Vec::new(),
                result: json!({ "error": msg }),
            };
            emit(&cli.out, &report);
            ExitCode::from(1)
        }
    }
}

fn emit(out: &Option<PathBuf>, report: &Report) {
    let text = format!(
        "{}\n",
        serde_json::to_string_pretty(report).expect("report serializes")
    );
    match out {
        Some(path) => std::fs::write(path, &text).expect("writable output path"),
        None => print!("{text}"),
    }
}

fn echo(c: &Command) -> String {
    match c {
        Command::Snf { .. } => "snf",
        Command::Localize { .. } => "localize",
        Command::Fracture { .. } => "fracture",
        Command::Nilpotency { .. } => "nilpotency",
        Command::SeriesConvert { .. } => "series-convert",
        Command::TowerValidate { .. } => "tower-validate",
        Command::TowerLocalize { .. } => "tower-localize",
        Command::Factorize { .. } => "factorize",
    }
    .to_string()
}

/// Reads `@path` indirection for inline arguments.
fn read_arg(text: &str) -> Result<String, Failure> {
    if let Some(path) = text.strip_prefix('@') {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("cannot read {path}: {e}")))
    } else {
        Ok(text.to_string())
    }
}

fn read_tower(path: &PathBuf) -> Result<PostnikovData, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    // syntax errors are input errors; semantic rejections are mathematical
    let value: Value =
        serde_json::from_str(&text).map_err(|e| Failure::Input(format!("invalid JSON: {e}")))?;
    serde_json::from_value(value).map_err(|e| Failure::Math(format!("invalid tower: {e}")))
}

fn numset_from(text: &str) -> Result<NumSet, Failure> {
    let entries = parse_numbers(text).map_err(Failure::from)?;
    NumSet::new(entries).map_err(Failure::from)
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let command = echo(&cli.command);
    let (pass, warnings, result) = match &cli.command {
        Command::Snf { matrix } => run_snf(matrix)?,
        Command::Localize { group, away } => run_localize(group, away)?,
        Command::Fracture {
            group,
            tower,
            r,
            s,
            depth,
            check_colimit,
        } => run_fracture(group, tower, r, s, *depth, *check_colimit, cli.seed)?,
        Command::Nilpotency { group } => run_nilpotency(group)?,
        Command::SeriesConvert { group, chain } => run_series_convert(group, chain)?,
        Command::TowerValidate { tower } => run_tower_validate(tower)?,
        Command::TowerLocalize { tower, away } => run_tower_localize(tower, away)?,
        Command::Factorize { tower } => run_factorize(tower)?,
    };
    Ok(Report {
        command,
        pass,
        warnings,
        result,
    })
}

type Outcome = (bool, Vec<String>, Value);

fn run_snf(matrix: &str) -> Result<Outcome, Failure> {
    let text = read_arg(matrix)?;
    let rows: Vec<Vec<i64>> = serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("matrix must be a JSON array of rows: {e}")))?;
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    let m = IntMatrix::from_i64_rows(&refs);
    let s = smith_normal_form(&m);
    let verified = s.u.mul(&m).map_err(Failure::from)?.mul(&s.v).map_err(Failure::from)? == s.d
        && s.u.is_unimodular()
        && s.v.is_unimodular();
    let result = json!({
        "u": matrix_value(&s.u),
        "d": matrix_value(&s.d),
        "v": matrix_value(&s.v),
        "diagonal": s.diagonal().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "identity_d_eq_umv": verified,
    });
    Ok((verified, Vec::new(), result))
}

fn matrix_value(m: &IntMatrix) -> Value {
    let rows: Vec<Vec<String>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.at(i, j).to_string()).collect())
        .collect();
    json!(rows)
}

fn run_localize(group: &str, away: &str) -> Result<Outcome, Failure> {
    let spec = read_arg(group)?;
    let target = parse_group(&spec).map_err(Failure::from)?;
    let s = numset_from(away)?;
    let res = match &target {
        GroupTarget::Abelian(a) => localize_abelian(a, &s),
        GroupTarget::Finite(g) => localize_finite_nilpotent(g, &s).map_err(Failure::from)?,
    };
    let local = res.certificate.reverify(&res.localized);
    let result = json!({
        "input": target,
        "localized": res.localized,
        "unit": res.unit,
        "certificate": res.certificate,
        "is_local": local,
    });
    Ok((local, Vec::new(), result))
}

#[allow(clippy::too_many_arguments)]
fn run_fracture(
    group: &Option<String>,
    tower: &Option<PathBuf>,
    r: &str,
    s: &str,
    depth: usize,
    check_colimit: bool,
    seed: u64,
) -> Result<Outcome, Failure> {
    let r_entries = parse_numbers(r).map_err(Failure::from)?;
    let s_entries = parse_numbers(s).map_err(Failure::from)?;
    let fams = FractureFamilies::new(r_entries, s_entries, depth).map_err(Failure::from)?;
    let mut warnings = Vec::new();
    match (group, tower) {
        (Some(spec), None) => {
            let spec = read_arg(spec)?;
            let target = parse_group(&spec).map_err(Failure::from)?;
            match target {
                GroupTarget::Abelian(a) => {
                    let cert = fracture_square_abelian(&a, &fams, seed).map_err(Failure::from)?;
                    let pass = cert.verify().map_err(Failure::from)?;
                    warnings.extend(cert.warnings.clone());
                    let mut result = json!({
                        "families": fams,
                        "certificate": cert,
                    });
                    if check_colimit {
                        let rows =
                            fracture_colimit_row_check(&a, &fams, depth).map_err(Failure::from)?;
                        let rows_pass = rows.pass;
                        result["colimit_rows"] = serde_json::to_value(rows).expect("serialize");
                        return Ok((pass && rows_pass, warnings, result));
                    }
                    Ok((pass, warnings, result))
                }
                GroupTarget::Finite(g) => {
                    let check = fracture_finite_nilpotent(&g, &fams).map_err(Failure::from)?;
                    let pass = check.pullback_bijective;
                    Ok((pass, warnings, json!({ "families": fams, "pi1": check })))
                }
            }
        }
        (None, Some(path)) => {
            let x = read_tower(path)?;
            let report = fracture_postnikov(&x, &fams, seed).map_err(Failure::from)?;
            let pass = report.pass;
            for level in &report.levels {
                warnings.extend(level.certificate.warnings.clone());
            }
            warnings.dedup();
            Ok((pass, warnings, json!({ "families": fams, "report": report })))
        }
        _ => Err(Failure::Input(
            "fracture needs exactly one of --group or --tower".into(),
        )),
    }
}

fn run_nilpotency(group: &str) -> Result<Outcome, Failure> {
    let spec = read_arg(group)?;
    let target = parse_group(&spec).map_err(Failure::from)?;
    match target {
        GroupTarget::Abelian(a) => Ok((
            true,
            Vec::new(),
            json!({
                "group": a,
                "nilpotent": true,
                "note": "abelian groups are nilpotent of class <= 1",
            }),
        )),
        GroupTarget::Finite(g) => {
            let series = nilfract_core::finite::lower_central_series(&g);
            let nilpotent = series.last().map(|s| s.order() == 1).unwrap_or(false);
            let series_json: Vec<Vec<usize>> =
                series.iter().map(|s| s.elements().to_vec()).collect();
            let conj = GroupAction::conjugation(&g);
            let twisted = alpha_lower_central_series(&conj);
            let sylow = if nilpotent {
                let dec = nilfract_core::finite::sylow_decomposition(&g).map_err(Failure::from)?;
                Some(
                    dec.into_iter()
                        .map(|(p, s)| {
                            json!({"prime": p, "order": s.order(), "elements": s.elements()})
                        })
                        .collect::<Vec<_>>(),
                )
            } else {
                None
            };
            let result = json!({
                "group_order": g.order(),
                "nilpotent": nilpotent,
                "lower_central_series": series_json,
                "conjugation_structure_length": twisted.map(|s| s.length()),
                "sylow": sylow,
            });
            Ok((true, Vec::new(), result))
        }
    }
}

fn run_series_convert(group: &str, chain: &Option<String>) -> Result<Outcome, Failure> {
    let spec = read_arg(group)?;
    let GroupTarget::Finite(g) = parse_group(&spec).map_err(Failure::from)? else {
        return Err(Failure::Input(
            "series-convert expects a Cayley-table group".into(),
        ));
    };
    let conj = GroupAction::conjugation(&g);
    let structure = match chain {
        Some(text) => {
            let text = read_arg(text)?;
            let lists: Vec<Vec<usize>> = serde_json::from_str(&text)
                .map_err(|e| Failure::Input(format!("chain must be element-index lists: {e}")))?;
            let subs = lists
                .into_iter()
                .map(|elems| {
                    g.subgroup_from_elements(elems)
                        .map(SubTarget::Finite)
                        .map_err(Failure::from)
                })
                .collect::<Result<Vec<_>, _>>()?;
            NilpotentStructure::new(conj, subs).map_err(|e| Failure::Math(e.to_string()))?
        }
        None => alpha_lower_central_series(&conj)
            .ok_or_else(|| Failure::Math("group is not nilpotent".into()))?,
    };
    let tower = structure_to_tower(&structure).map_err(Failure::from)?;
    let back = tower_to_structure(&tower).map_err(Failure::from)?;
    let round_trip = back == structure;
    let stage_orders: Vec<String> = std::iter::once(tower.base().target().order())
        .chain(tower.maps().iter().map(|m| m.dest().target().order()))
        .map(|o| o.map(|v| v.to_string()).unwrap_or_else(|| "inf".into()))
        .collect();
    let result = json!({
        "group_order": g.order(),
        "chain": structure_chain_json(&structure),
        "tower": tower,
        "stage_orders": stage_orders,
        "round_trip_identity": round_trip,
    });
    Ok((round_trip, Vec::new(), result))
}

fn structure_chain_json(s: &NilpotentStructure) -> Value {
    let chain: Vec<Value> = s
        .chain()
        .iter()
        .map(|sub| match sub {
            SubTarget::Finite(sg) => json!(sg.elements()),
            SubTarget::Abelian(sg) => matrix_value(&sg.lattice().transpose()),
        })
        .collect();
    json!(chain)
}

fn run_tower_validate(path: &PathBuf) -> Result<Outcome, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| Failure::Input(format!("invalid JSON: {e}")))?;
    match serde_json::from_value::<PostnikovData>(value) {
        Ok(x) => {
            let report = nilfract_core::postnikov::validate(&x);
            let degree = nilpotency_degree(&x).ok();
            let pass = report.valid;
            Ok((
                pass,
                Vec::new(),
                json!({ "validation": report, "nilpotency_degree": degree }),
            ))
        }
        Err(e) => Ok((
            false,
            Vec::new(),
            json!({ "validation": { "valid": false, "failures": [e.to_string()] } }),
        )),
    }
}

fn run_tower_localize(path: &PathBuf, away: &str) -> Result<Outcome, Failure> {
    let x = read_tower(path)?;
    let s = numset_from(away)?;
    let loc = localize_tower(&x, &s).map_err(Failure::from)?;
    let degree_before = nilpotency_degree(&x).map_err(Failure::from)?;
    let degree_after = nilpotency_degree(&loc).map_err(Failure::from)?;
    let result = json!({
        "away": s,
        "localized": loc,
        "degree_before": degree_before,
        "degree_after": degree_after,
    });
    Ok((degree_after <= degree_before, Vec::new(), result))
}

fn run_factorize(path: &PathBuf) -> Result<Outcome, Failure> {
    let x = read_tower(path)?;
    let report = principal_factorization(&x).map_err(Failure::from)?;
    let per_level: Vec<Value> = report
        .level_towers
        .iter()
        .map(|(n, t)| json!({ "n": n, "length": t.length() }))
        .collect();
    let degree = nilpotency_degree(&x).map_err(Failure::from)?;
    let result = json!({
        "pi1_length": report.pi1_tower.length(),
        "levels": per_level,
        "total_length": report.total_length,
        "matches_nilpotency_degree": report.total_length == degree,
        "pi1_tower": report.pi1_tower,
        "level_towers": report.level_towers.iter().map(|(n, t)| json!({"n": n, "tower": t})).collect::<Vec<_>>(),
    });
    Ok((report.total_length == degree, Vec::new(), result))
}
