use std::collections::BTreeMap;
use std::path::Path;

use elevatum_core::claims::{
    run_claim, run_contact, run_solve, ClaimError, ClaimRefusal, ClaimSpec, Verdict, PACIOLI_LII,
};
use elevatum_core::io::{export_model, parse_decimal, ExportError, ModelFormat};
use elevatum_core::mesh::{equilateral_height, MeshError};
use elevatum_core::predicates::{PredicateError, Stability};
use elevatum_core::{build_seed, elevate, list_seeds, HeightRule, PrecisionPolicy, Real, SeedId};
use thiserror::Error;

use crate::args::{Cli, Command, ElevateMode, Elevation, Precision};

pub const OK: u8 = 0;
pub const FAILURE: u8 = 1;
pub const USAGE: u8 = 2;
pub const UNDECIDED: u8 = 3;
pub const INFEASIBLE: u8 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => USAGE,
            CliError::Infeasible(_) => INFEASIBLE,
            CliError::Undecided(_) => UNDECIDED,
            CliError::Failure(_) => FAILURE,
        }
    }
}

impl From<ClaimError> for CliError {
    fn from(e: ClaimError) -> Self {
        let msg = e.to_string();
        match e {
            ClaimError::UnknownClaim(_) => CliError::Usage(msg),
            ClaimError::Predicate(PredicateError::ToleranceUnreachable(_)) => CliError::Undecided(msg),
            ClaimError::Predicate(
                PredicateError::NonPositiveTolerance | PredicateError::Mesh(MeshError::NoSuchFace(_) | MeshError::MissingHeight(_)),
            ) => CliError::Usage(msg),
            ClaimError::Predicate(PredicateError::Eval(elevatum_core::EvalError::InvalidPolicy { .. })) => {
                CliError::Usage(msg)
            }
            e if e.is_infeasible() => CliError::Infeasible(msg),
            _ => CliError::Failure(msg),
        }
    }
}

pub fn dispatch(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Catalog { json } => catalog(json),
        Command::Build {
            seed,
            elevation,
            out,
            digits,
        } => build(seed, &elevation, &out, digits),
        Command::Verify {
            claim,
            seed,
            elevation,
            pentagon,
            precision,
            json,
        } => verify(&claim, seed, &elevation, pentagon, &precision, json.as_deref()),
        Command::SolveHeight {
            seed,
            fixed_tri,
            tol,
            precision,
            json,
        } => solve_height(seed, &fixed_tri, &tol, &precision, json.as_deref()),
        Command::Contact {
            seed,
            elevation,
            face,
            precision,
            json,
        } => contact(seed, &elevation, &face, &precision, json.as_deref()),
    }
}

fn emit(text: &str, json: Option<&Path>) -> Result<(), CliError> {
    match json {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Failure(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn policy(p: &Precision) -> Result<PrecisionPolicy, CliError> {
    PrecisionPolicy::new(p.precision_start, p.precision_max).map_err(|e| CliError::Usage(e.to_string()))
}

fn arity_key(key: &str) -> Result<usize, CliError> {
    match key {
        "tri" | "triangle" => Ok(3),
        "quad" | "square" => Ok(4),
        "pent" | "pentagon" => Ok(5),
        "dec" | "decagon" => Ok(10),
        k => k
            .parse()
            .ok()
            .filter(|&n: &usize| n >= 3)
            .ok_or_else(|| CliError::Usage(format!("unknown face kind `{k}`"))),
    }
}

/// `equilateral` or a decimal literal, in edge units.
fn height_value(arity: usize, value: &str) -> Result<Real, CliError> {
    if value == "equilateral" {
        return equilateral_height(arity).ok_or_else(|| {
            CliError::Infeasible(format!("no equilateral pyramid on faces of arity {arity}"))
        });
    }
    parse_decimal(value)
        .map(Real::from_rational)
        .ok_or_else(|| CliError::Usage(format!("bad height `{value}`")))
}

fn parse_heights(spec: &str) -> Result<HeightRule, CliError> {
    let mut map = BTreeMap::new();
    for item in spec.split(',').filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("expected kind=height, got `{item}`")))?;
        let arity = arity_key(k.trim())?;
        map.insert(arity, height_value(arity, v.trim())?);
    }
    if map.is_empty() {
        return Err(CliError::Usage("empty --heights".to_owned()));
    }
    Ok(HeightRule::Explicit(map))
}

/// `None` means the bare seed.
fn rule(e: &Elevation, default: ElevateMode) -> Result<Option<HeightRule>, CliError> {
    if let Some(h) = &e.heights {
        return parse_heights(h).map(Some);
    }
    Ok(match e.elevate.unwrap_or(default) {
        ElevateMode::None => None,
        ElevateMode::Equilateral => Some(HeightRule::Equilateral),
        ElevateMode::Zero => Some(HeightRule::Zero),
    })
}

fn catalog(json: bool) -> Result<u8, CliError> {
    let seeds = list_seeds();
    if json {
        let mut text = serde_json::to_string_pretty(&seeds).map_err(|e| CliError::Failure(e.to_string()))?;
        text.push('\n');
        print!("{text}");
        return Ok(OK);
    }
    println!("{:<24}{:>4}{:>5}{:>5}  {:<12}edge^2", "seed", "V", "E", "F", "faces");
    for s in seeds {
        let faces: Vec<String> = s.face_arities.iter().map(|(n, c)| format!("{c}x{n}")).collect();
        println!(
            "{:<24}{:>4}{:>5}{:>5}  {:<12}{}",
            s.id.name(),
            s.vertices,
            s.edges,
            s.faces,
            faces.join(" "),
            s.edge_squared
        );
    }
    Ok(OK)
}

fn build(seed: SeedId, elevation: &Elevation, out: &Path, digits: usize) -> Result<u8, CliError> {
    let format = ModelFormat::from_path(out)
        .ok_or_else(|| CliError::Usage(format!("{}: extension must be .off or .obj", out.display())))?;
    let base = build_seed(seed);
    let mesh = match rule(elevation, ElevateMode::None)? {
        None => base,
        Some(r) => elevate(&base, &r)
            .map_err(|e| match e {
                MeshError::EquilateralInfeasible(arity) => ClaimError::EquilateralInfeasible { seed, arity },
                other => ClaimError::from(other),
            })?
            .mesh(),
    };
    let bytes = export_model(&mesh, format, digits).map_err(|e| match e {
        ExportError::Digits(_) => CliError::Usage(e.to_string()),
        other => CliError::Failure(other.to_string()),
    })?;
    std::fs::write(out, bytes).map_err(|e| CliError::Failure(format!("{}: {e}", out.display())))?;
    println!(
        "wrote {} (V={} E={} F={})",
        out.display(),
        mesh.vertex_count(),
        mesh.edge_count(),
        mesh.face_count()
    );
    Ok(OK)
}

fn verify(
    claim: &str,
    seed: SeedId,
    elevation: &Elevation,
    pentagon: Option<usize>,
    precision: &Precision,
    json: Option<&Path>,
) -> Result<u8, CliError> {
    if claim != PACIOLI_LII {
        return Err(CliError::Usage(format!("unknown claim `{claim}`")));
    }
    let policy = policy(precision)?;
    let rule = rule(elevation, ElevateMode::Equilateral)?
        .ok_or_else(|| CliError::Usage("the claim needs an elevation".to_owned()))?;
    let spec = ClaimSpec {
        claim_id: claim.to_owned(),
        seed,
        rule,
        pentagon,
    };
    match run_claim(&spec, &policy) {
        Ok(report) => {
            emit(&report.to_json(), json)?;
            Ok(if report.verdict == Verdict::Undecided { UNDECIDED } else { OK })
        }
        Err(e) if e.is_infeasible() => {
            emit(&ClaimRefusal::from_error(&spec, &e).to_json(), json)?;
            Err(e.into())
        }
        Err(e) => Err(e.into()),
    }
}

fn solve_height(
    seed: SeedId,
    fixed_tri: &str,
    tol: &str,
    precision: &Precision,
    json: Option<&Path>,
) -> Result<u8, CliError> {
    let policy = policy(precision)?;
    let tri = height_value(3, fixed_tri)?;
    let tol = parse_decimal(tol).ok_or_else(|| CliError::Usage(format!("bad tolerance `{tol}`")))?;
    let report = run_solve(seed, &tri, &tol, &policy)?;
    emit(&report.to_json(), json)?;
    Ok(if report.is_decided() { OK } else { UNDECIDED })
}

/// Base face index for `kind:K` or a plain index.
fn select_face(seed: SeedId, face: &str) -> Result<usize, CliError> {
    let base = build_seed(seed);
    let Some((kind, k)) = face.split_once(':') else {
        return face
            .parse()
            .ok()
            .filter(|&f: &usize| f < base.face_count())
            .ok_or_else(|| CliError::Usage(format!("no face `{face}` on the {seed}")));
    };
    let arity = arity_key(kind)?;
    let k: usize = k.parse().map_err(|_| CliError::Usage(format!("bad face number in `{face}`")))?;
    base.faces_of_arity(arity)
        .get(k)
        .copied()
        .ok_or_else(|| CliError::Usage(format!("no face `{face}` on the {seed}")))
}

fn contact(
    seed: SeedId,
    elevation: &Elevation,
    face: &str,
    precision: &Precision,
    json: Option<&Path>,
) -> Result<u8, CliError> {
    let policy = policy(precision)?;
    let face = select_face(seed, face)?;
    let rule = rule(elevation, ElevateMode::None)?;
    let report = run_contact(seed, rule.as_ref(), face, &policy)?;
    emit(&report.to_json(), json)?;
    Ok(if report.stable.0 == Stability::Marginal { UNDECIDED } else { OK })
}
