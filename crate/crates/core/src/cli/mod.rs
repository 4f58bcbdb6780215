//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 when the answer is a mathematical negative
//! (with the witness in the report), 1 on input or schema errors with an
//! `{"error": ...}` payload.

pub mod svg;
pub mod wire;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};
use thiserror::Error;

use crate::admissible::{AdmissibleCone, AdmissibleError};
use crate::classify::{round_trip, saturation_check, ClassifyError, Saturation, SaturationBounds};
use crate::fans::{fan_from_cones, product_fan, rational_cone, Fan, FanError, LinearFan};
use crate::ordfield::OrdFieldError;
use crate::polyhedra::{Cone, PolyError};
use crate::projtoric::{
    heights_from_valuations, orbit_correspondence, weight_subdivision, ProjError, Subdivision,
};

use wire::{cone_json, element_json, generators_json, slice_json, vector_json, vectors_json};

/// Largest degree bound tried when `--bound` is not given.
pub const DEFAULT_MAX_BOUND: u32 = 6;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("schema error in {path}: {message}")]
    Schema { path: String, message: String },
    #[error("drawing needs n <= 2, got n = {0}")]
    DimensionTooHigh(usize),
    #[error("{0}")]
    BadParameter(String),
    #[error(transparent)]
    Field(#[from] OrdFieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Proj(#[from] ProjError),
    #[error(transparent)]
    Admissible(#[from] AdmissibleError),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

#[derive(Debug, Parser)]
#[command(
    name = "toricval",
    version,
    about = "Exact toolkit for toric schemes over valuation rings"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Also write an SVG drawing (check-cone, slice, weightsub).
    #[arg(long, global = true)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Admissibility, slice and finite-type test of one cone.
    CheckCone { input: PathBuf },
    /// Dual cone.
    Dual { input: PathBuf },
    /// Homogeneous algebra generators.
    Generators {
        input: PathBuf,
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Cone to generators and back.
    RoundTrip {
        input: PathBuf,
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Common-face check and face closure of a fan.
    FanValidate { input: PathBuf },
    /// Slice complex of a fan at s = 1.
    Slice { input: PathBuf },
    /// Recession fan of a fan.
    Recession { input: PathBuf },
    /// Fan of the cones sigma x R_+ over a rational fan.
    ProductFan { input: PathBuf },
    /// Weight subdivision of a heighted configuration.
    Weightsub { input: PathBuf },
    /// Orbit-face correspondence of a heighted configuration.
    Orbits { input: PathBuf },
    /// Brute-force saturation check of a generator set.
    Saturation {
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        bu: u32,
        #[arg(long, default_value_t = 3)]
        kmax: u32,
    },
}

/// A finished command: exit code, JSON report and optional drawing.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub report: Value,
    pub svg: Option<String>,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome {
            code: 0,
            report,
            svg: None,
        }
    }

    fn negative(report: Value) -> Self {
        Outcome {
            code: 2,
            report,
            svg: None,
        }
    }

    fn with_svg(mut self, svg: Option<String>) -> Self {
        self.svg = svg;
        self
    }
}

fn read<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Schema {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Negative answers of the admissibility layer as exit-2 reports.
fn admissible_negative(e: &AdmissibleError) -> Option<Value> {
    match e {
        AdmissibleError::ConstantNotInGamma(i) => {
            Some(json!({"status": "constant_not_in_gamma", "index": i}))
        }
        AdmissibleError::ContainsLine => Some(json!({"status": "contains_line"})),
        AdmissibleError::NotFiniteType => Some(json!({"status": "not_finite_type"})),
        AdmissibleError::BoundTooSmall(b) => Some(json!({"status": "bound_too_small", "bound": b})),
        _ => None,
    }
}

fn load_cone(path: &Path) -> Result<Result<AdmissibleCone, AdmissibleError>, CliError> {
    let f: wire::ConeFile = read(path)?;
    let gamma = wire::gamma(&f.gamma)?;
    let hs = wire::halfspaces(&f.halfspaces, gamma.field())?;
    Ok(AdmissibleCone::new(f.n, &hs, &gamma))
}

/// Splits an admissibility result into a cone, an exit-2 report or an error.
macro_rules! admissible_or_return {
    ($res:expr) => {
        match $res {
            Ok(c) => c,
            Err(e) => match admissible_negative(&e) {
                Some(v) => return Ok(Outcome::negative(v)),
                None => return Err(e.into()),
            },
        }
    };
}

fn load_fan(path: &Path) -> Result<Result<Fan, Outcome>, CliError> {
    let f: wire::FanFile = read(path)?;
    let gamma = wire::gamma(&f.gamma)?;
    let mut cones = Vec::with_capacity(f.cones.len());
    for (i, c) in f.cones.iter().enumerate() {
        let hs = wire::halfspaces(&c.halfspaces, gamma.field())?;
        match AdmissibleCone::new(c.n, &hs, &gamma) {
            Ok(a) => cones.push(a),
            Err(e) => match admissible_negative(&e) {
                Some(mut v) => {
                    v["cone"] = json!(i);
                    return Ok(Err(Outcome::negative(v)));
                }
                None => return Err(e.into()),
            },
        }
    }
    match fan_from_cones(&cones) {
        Ok(fan) => Ok(Ok(fan)),
        Err(e) => fan_negative(e).map(Err),
    }
}

fn fan_negative(e: FanError) -> Result<Outcome, CliError> {
    match e {
        FanError::NotAFan { i, j, intersection } => Ok(Outcome::negative(json!({
            "valid": false,
            "i": i,
            "j": j,
            "intersection_rays": vectors_json(intersection.rays()),
        }))),
        other => Err(other.into()),
    }
}

fn linear_fan_json(f: &LinearFan) -> Value {
    json!({
        "cones": f.cones.iter().map(|c| json!({"dim": c.linear_dim(), "rays": vectors_json(c.rays())})).collect::<Vec<_>>(),
        "covers": f.covers,
    })
}

fn fan_json(fan: &Fan) -> Value {
    json!({
        "valid": true,
        "gamma": wire::gamma_json(fan.gamma()),
        "n": fan.n(),
        "maximal_cones": fan.maximal_cones().iter().map(|c| vectors_json(c.cone().rays())).collect::<Vec<_>>(),
        "cones": fan.all_cones().iter().map(|c| json!({"dim": c.linear_dim(), "rays": vectors_json(c.rays())})).collect::<Vec<_>>(),
        "covers": fan.covers(),
        "finite_type": fan.is_finite_type(),
    })
}

fn subdivision_json(sub: &Subdivision) -> Value {
    json!({
        "support_vertices": sub.support_vertices,
        "faces": sub.faces.iter().map(|f| json!({
            "dim": f.dim,
            "vertices": f.vertices,
            "indices": f.indices,
            "lifted": f.lifted,
        })).collect::<Vec<_>>(),
        "covers": sub.covers,
        "top_cells": sub.top_cells().len(),
    })
}

fn load_config(path: &Path) -> Result<Result<crate::projtoric::HeightedConfig, Outcome>, CliError> {
    let f: wire::ConfigFile = read(path)?;
    let (cfg, gamma) = wire::config(&f)?;
    if let Some(g) = gamma {
        match heights_from_valuations(cfg.heights(), &g) {
            Ok(_) => {}
            Err(ProjError::ValueNotInGamma(j)) => {
                return Ok(Err(Outcome::negative(
                    json!({"status": "value_not_in_gamma", "index": j}),
                )))
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Ok(cfg))
}

fn resolve_bound(cone: &AdmissibleCone, bound: Option<u32>) -> Result<u32, AdmissibleError> {
    match bound {
        Some(0) => Err(AdmissibleError::ZeroBound),
        Some(b) => Ok(b),
        None => cone.sufficient_bound(DEFAULT_MAX_BOUND),
    }
}

/// Runs one command without touching stdout or output files.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let wants_svg = cli.svg.is_some();
    if wants_svg
        && !matches!(
            cli.command,
            Command::CheckCone { .. } | Command::Slice { .. } | Command::Weightsub { .. }
        )
    {
        return Err(CliError::BadParameter(
            "--svg is supported by check-cone, slice and weightsub".into(),
        ));
    }
    match &cli.command {
        Command::CheckCone { input } => {
            let cone = admissible_or_return!(load_cone(input)?);
            let finite = cone.is_finite_type();
            let mut report = json!({
                "n": cone.n(),
                "gamma": wire::gamma_json(cone.gamma()),
                "discrete_gamma": cone.gamma().is_discrete(),
                "pointed": true,
                "cone": cone_json(cone.cone()),
                "slice": slice_json(cone.slice()),
                "faces": cone.cone().face_lattice()?.len(),
                "finite_type": finite,
            });
            if let Some(v) = cone.first_bad_vertex().filter(|_| !finite) {
                report["bad_vertex"] = json!(v.iter().map(|x| x.to_string()).collect::<Vec<_>>());
                report["bad_vertex_exact"] = vector_json(&v);
            }
            let svg = if wants_svg {
                Some(svg::cone_slice_svg(cone.slice(), cone.n())?)
            } else {
                None
            };
            let out = if finite {
                Outcome::ok(report)
            } else {
                Outcome::negative(report)
            };
            Ok(out.with_svg(svg))
        }
        Command::Dual { input } => {
            let f: wire::ConeFile = read(input)?;
            let gamma = wire::gamma(&f.gamma)?;
            let hs = wire::halfspaces(&f.halfspaces, gamma.field())?;
            let cone = Cone::from_halfspaces(f.n, &hs)?;
            let dual = cone.dual();
            Ok(Outcome::ok(json!({
                "cone": cone_json(&cone),
                "dual": cone_json(&dual),
                "dual_pointed": dual.is_pointed(),
                "dual_span_rank": dual.span_rank(),
            })))
        }
        Command::Generators { input, bound } => {
            let cone = admissible_or_return!(load_cone(input)?);
            let b = admissible_or_return!(resolve_bound(&cone, *bound));
            let gens = admissible_or_return!(cone.algebra_generators(b));
            let mut report = generators_json(&gens);
            report["bound"] = json!(b);
            Ok(Outcome::ok(report))
        }
        Command::RoundTrip { input, bound } => {
            let cone = admissible_or_return!(load_cone(input)?);
            let b = admissible_or_return!(resolve_bound(&cone, *bound));
            let rt = match round_trip(&cone, b) {
                Ok(rt) => rt,
                Err(ClassifyError::Admissible(e)) => admissible_or_return!(Err(e)),
                Err(e) => return Err(e.into()),
            };
            let report = json!({
                "status": if rt.ok { "ok" } else { "mismatch" },
                "bound": b,
                "generators": generators_json(&rt.generators)["gens"].clone(),
                "original_rays": vectors_json(cone.cone().rays()),
                "reconstructed_rays": vectors_json(rt.reconstructed.rays()),
            });
            Ok(if rt.ok {
                Outcome::ok(report)
            } else {
                Outcome::negative(report)
            })
        }
        Command::FanValidate { input } => Ok(match load_fan(input)? {
            Ok(fan) => Outcome::ok(fan_json(&fan)),
            Err(o) => o,
        }),
        Command::Slice { input } => {
            let fan = match load_fan(input)? {
                Ok(f) => f,
                Err(o) => return Ok(o),
            };
            let sc = fan.slice_complex()?;
            let svg = if wants_svg {
                Some(svg::slice_complex_svg(&sc)?)
            } else {
                None
            };
            Ok(Outcome::ok(json!({
                "cells": sc.cells.iter().map(slice_json).collect::<Vec<_>>(),
                "covers": sc.covers,
                "vertices": vectors_json(&sc.vertices),
                "components": sc.component_count(),
            }))
            .with_svg(svg))
        }
        Command::Recession { input } => {
            let fan = match load_fan(input)? {
                Ok(f) => f,
                Err(o) => return Ok(o),
            };
            Ok(Outcome::ok(linear_fan_json(&fan.recession_fan()?)))
        }
        Command::ProductFan { input } => {
            let f: wire::ProductFanFile = read(input)?;
            let gamma = wire::gamma(&f.gamma)?;
            let base = f
                .cones
                .iter()
                .map(|c| rational_cone(f.n, &c.rays))
                .collect::<Result<Vec<_>, _>>()?;
            let fan = match product_fan(&base, f.n, &gamma) {
                Ok(fan) => fan,
                Err(e) => return fan_negative(e),
            };
            let rec = fan.recession_fan()?;
            let mut report = fan_json(&fan);
            report["components"] = json!(fan.slice_complex()?.component_count());
            report["recession_equals_base"] = json!(rec == LinearFan::new(f.n, &base)?);
            Ok(Outcome::ok(report))
        }
        Command::Weightsub { input } => {
            let cfg = match load_config(input)? {
                Ok(c) => c,
                Err(o) => return Ok(o),
            };
            let sub = weight_subdivision(&cfg)?;
            let svg = if wants_svg {
                Some(svg::subdivision_svg(&sub, &cfg)?)
            } else {
                None
            };
            Ok(Outcome::ok(subdivision_json(&sub)).with_svg(svg))
        }
        Command::Orbits { input } => {
            let cfg = match load_config(input)? {
                Ok(c) => c,
                Err(o) => return Ok(o),
            };
            let sub = weight_subdivision(&cfg)?;
            let orbits = orbit_correspondence(&sub);
            Ok(Outcome::ok(json!({
                "orbits": orbits.iter().map(|o| json!({
                    "face": o.face,
                    "dim": o.dim,
                    "vertices": sub.faces[o.face].vertices,
                    "nonzero_coords": o.nonzero_coords,
                })).collect::<Vec<_>>(),
            })))
        }
        Command::Saturation { input, bu, kmax } => {
            if *bu == 0 || *kmax == 0 {
                return Err(CliError::BadParameter(
                    "--bu and --kmax must be positive".into(),
                ));
            }
            let f: wire::GeneratorsFile = read(input)?;
            let g = wire::generator_set(&f)?;
            let n = g
                .gens
                .first()
                .map(|e| e.u.len())
                .ok_or_else(|| CliError::BadParameter("generator set is empty".into()))?;
            if g.gens.iter().any(|e| e.u.len() != n) {
                return Err(CliError::BadParameter(
                    "generators have different lengths".into(),
                ));
            }
            let bounds = SaturationBounds::new(*bu, *kmax, n);
            let bounds_json = json!({
                "box_radius": bounds.box_radius,
                "k_max": bounds.k_max,
                "grid_radius": bounds.grid_radius,
                "max_terms": bounds.max_terms,
            });
            Ok(match saturation_check(&g, n, &bounds) {
                Saturation::Saturated => {
                    Outcome::ok(json!({"status": "saturated", "bounds": bounds_json}))
                }
                Saturation::Witness { u, g, k } => Outcome::negative(json!({
                    "status": "witness",
                    "u": u,
                    "g": element_json(&g),
                    "k": k,
                    "bounds": bounds_json,
                })),
            })
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn emit(cli: &Cli, report: &Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(report).expect("JSON values serialize");
    text.push('\n');
    match &cli.out {
        Some(p) => write_file(p, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Runs a command, writing the report and drawing; returns the exit code.
pub fn run(cli: &Cli) -> i32 {
    let result = execute(cli).and_then(|o| {
        if let (Some(path), Some(svg)) = (&cli.svg, &o.svg) {
            write_file(path, svg)?;
        }
        emit(cli, &o.report)?;
        Ok(o.code)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            let payload = json!({"error": e.to_string()});
            if emit(cli, &payload).is_err() {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&payload).expect("JSON values serialize")
                );
            }
            1
        }
    }
}
