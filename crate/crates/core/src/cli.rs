//! Command-line front end: every command reads and writes sorted-key UTF-8
//! JSON and emits a certificate with content hashes of its inputs, so that
//! identical inputs produce byte-identical artifacts.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use sha2::{Digest, Sha256};

use crate::adc::Adc;
use crate::cat3::{FiniteThreeCat, OneCat};
use crate::nerve::{self, SimplicialMap};
use crate::nu;
use crate::oplax::{self, OplaxData};
use crate::orientals::OrientalHandle;
use crate::simplicial;
use crate::strictify;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser)]
#[command(name = "trilax", version, about = "finite strict 3-categories, orientals and oplax 3-functors")]
struct Cli {
    /// Directory for output artifacts.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the chain complex of the n-simplex and a census of its oriental's
    /// cells.
    Oriental {
        n: usize,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
        #[arg(long, default_value_t = 1)]
        coeff_cap: i64,
    },
    /// Enumerate the nerve of a 3-category at one dimension.
    Nerve {
        cat: PathBuf,
        #[arg(long)]
        dim: usize,
    },
    /// Validate a normalised oplax 3-functor.
    ValidateOplax { f: PathBuf },
    /// Compose two normalised oplax 3-functors and validate the result.
    ComposeOplax { g: PathBuf, f: PathBuf },
    /// The induced simplicial map of a validated oplax 3-functor.
    ToSimplicial { f: PathBuf },
    /// The normalised oplax 3-functor underlying a simplicial oplax map.
    ToCellular { map: PathBuf },
    /// Check the simplicial-oplax conditions of a map between two nerves.
    CheckSimplicial { a: PathBuf, b: PathBuf, map: PathBuf },
    /// Strictify a split-free 1-category; emits the 3-category and the unit.
    Strictify {
        a: PathBuf,
        /// Bound on the number of enumerated composable tuples.
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// Census of the hom cells between two 1-cells of an oriental, given as
    /// comma-separated vertex paths.
    Hom {
        n: usize,
        f: String,
        g: String,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
        #[arg(long, default_value_t = 1)]
        coeff_cap: i64,
    },
}

#[derive(serde::Serialize)]
struct Certificate {
    command: String,
    inputs: BTreeMap<String, String>,
    verdict: String,
    violations: Vec<serde_json::Value>,
}

struct Ctx {
    out: PathBuf,
    command: String,
    inputs: BTreeMap<String, String>,
}

impl Ctx {
    fn read<T: serde::de::DeserializeOwned>(&mut self, path: &Path) -> Result<T, String> {
        let bytes = std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let mut hasher = Sha256::new();
        hasher.update(&bytes);
        self.inputs
            .insert(path.display().to_string(), hex::encode(hasher.finalize()));
        serde_json::from_slice(&bytes).map_err(|e| format!("{}: {e}", path.display()))
    }

    fn write<T: serde::Serialize>(&self, name: &str, value: &T) -> Result<(), String> {
        std::fs::create_dir_all(&self.out).map_err(|e| e.to_string())?;
        let mut text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
        text.push('\n');
        std::fs::write(self.out.join(name), text).map_err(|e| e.to_string())
    }

    fn certify(&self, verdict: &str, violations: Vec<serde_json::Value>) -> Result<(), String> {
        let cert = Certificate {
            command: self.command.clone(),
            inputs: self.inputs.clone(),
            verdict: verdict.to_string(),
            violations,
        };
        self.write("certificate.json", &cert)
    }
}

pub fn run(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_BAD_INPUT } else { EXIT_PASS };
        }
    };
    let mut ctx = Ctx {
        out: cli.out.clone(),
        command: argv[1..].join(" "),
        inputs: BTreeMap::new(),
    };
    match dispatch(&cli.command, &mut ctx) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_BAD_INPUT
        }
    }
}

fn parse_path(text: &str, n: usize) -> Result<Vec<usize>, String> {
    let vertices: Vec<usize> = text
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| format!("bad vertex {p}")))
        .collect::<Result<_, _>>()?;
    if vertices.is_empty() || vertices.windows(2).any(|w| w[0] >= w[1]) {
        return Err("vertex path must be strictly increasing".into());
    }
    if vertices.iter().any(|v| *v > n) {
        return Err(format!("vertex out of range for the {n}-simplex"));
    }
    Ok(vertices)
}

fn load_cat(ctx: &mut Ctx, path: &Path) -> Result<FiniteThreeCat, String> {
    let j: crate::cat3::CatJson = ctx.read(path)?;
    FiniteThreeCat::from_json(&j).map_err(|e| e.to_string())
}

fn dispatch(cmd: &Command, ctx: &mut Ctx) -> Result<i32, String> {
    match cmd {
        Command::Oriental { n, max_dim, coeff_cap } => {
            let k = Adc::simplex_complex(*n);
            ctx.write(&format!("oriental-{n}.adc.json"), &k)?;
            let levels = nu::enumerate_by_dim(&k, *max_dim, *coeff_cap);
            let census: Vec<serde_json::Value> = levels
                .iter()
                .enumerate()
                .map(|(d, cells)| {
                    serde_json::json!({
                        "dim": d,
                        "cells": cells.len(),
                        "nonidentity": cells.iter().filter(|c| !c.is_identity_cell()).count(),
                    })
                })
                .collect();
            ctx.write(&format!("oriental-{n}.census.json"), &census)?;
            ctx.certify("pass", vec![])?;
            Ok(EXIT_PASS)
        }
        Command::Nerve { cat, dim } => {
            if *dim > 4 {
                return Err("nerve is materialised up to dimension 4".into());
            }
            let c = load_cat(ctx, cat)?;
            let all = nerve::simplices(&c, *dim);
            let nondeg: Vec<_> = all.iter().filter(|s| !s.is_degenerate(&c)).collect();
            let listing: Vec<crate::nerve::SimplexJson> =
                nondeg.iter().map(|s| s.to_json(&c)).collect();
            ctx.write(
                &format!("nerve-{dim}.json"),
                &serde_json::json!({
                    "dim": dim,
                    "simplices": all.len(),
                    "nondegenerate": listing,
                }),
            )?;
            ctx.certify("pass", vec![])?;
            Ok(EXIT_PASS)
        }
        Command::ValidateOplax { f } => {
            let j: oplax::OplaxJson = ctx.read(f)?;
            let data = OplaxData::from_json(&j)?;
            let report = data.validate();
            let violations: Vec<serde_json::Value> = report
                .violations
                .iter()
                .map(|v| serde_json::json!({"kind": v.family, "witness": v.witness}))
                .collect();
            let ok = report.is_valid();
            ctx.certify(if ok { "pass" } else { "fail" }, violations)?;
            Ok(if ok { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::ComposeOplax { g, f } => {
            let gj: oplax::OplaxJson = ctx.read(g)?;
            let fj: oplax::OplaxJson = ctx.read(f)?;
            let gd = OplaxData::from_json(&gj)?;
            let fd = OplaxData::from_json(&fj)?;
            let composite = oplax::compose(&gd, &fd)?;
            ctx.write("composite.oplax.json", &composite.to_json())?;
            let report = composite.validate();
            let violations: Vec<serde_json::Value> = report
                .violations
                .iter()
                .map(|v| serde_json::json!({"kind": v.family, "witness": v.witness}))
                .collect();
            let ok = report.is_valid();
            ctx.certify(if ok { "pass" } else { "fail" }, violations)?;
            Ok(if ok { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::ToSimplicial { f } => {
            let j: oplax::OplaxJson = ctx.read(f)?;
            let data = OplaxData::from_json(&j)?;
            let report = data.validate();
            if !report.is_valid() {
                let violations: Vec<serde_json::Value> = report
                    .violations
                    .iter()
                    .map(|v| serde_json::json!({"kind": v.family, "witness": v.witness}))
                    .collect();
                ctx.certify("fail", violations)?;
                return Ok(EXIT_FAIL);
            }
            let m = data.to_simplicial()?;
            ctx.write("map.json", &m.to_json(&data.source, &data.target))?;
            ctx.certify("pass", vec![])?;
            Ok(EXIT_PASS)
        }
        Command::ToCellular { map } => {
            let j: nerve::MapJson = ctx.read(map)?;
            let (a, b, m) = SimplicialMap::from_json(&j)?;
            match oplax::from_simplicial(&a, &b, &m) {
                Ok(data) => {
                    ctx.write("cellular.oplax.json", &data.to_json())?;
                    ctx.certify("pass", vec![])?;
                    Ok(EXIT_PASS)
                }
                Err(e) => {
                    ctx.certify("fail", vec![serde_json::json!({"kind": e})])?;
                    Ok(EXIT_FAIL)
                }
            }
        }
        Command::CheckSimplicial { a, b, map } => {
            let aj: crate::cat3::CatJson = ctx.read(a)?;
            let bj: crate::cat3::CatJson = ctx.read(b)?;
            let mj: nerve::MapJson = ctx.read(map)?;
            let a_cat = FiniteThreeCat::from_json(&aj).map_err(|e| e.to_string())?;
            let b_cat = FiniteThreeCat::from_json(&bj).map_err(|e| e.to_string())?;
            let (ma, mb, m) = SimplicialMap::from_json(&mj)?;
            if ma != a_cat || mb != b_cat {
                return Err("map does not connect the given categories".into());
            }
            let violations = simplicial::simplicial_oplax_violations(&m, &a_cat, &b_cat);
            let ok = violations.is_empty();
            let violations = violations
                .iter()
                .map(|v| serde_json::json!({"condition": v.condition, "witness": v.witness}))
                .collect();
            ctx.certify(if ok { "pass" } else { "fail" }, violations)?;
            Ok(if ok { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Strictify { a, budget } => {
            let j: crate::cat3::OneCatJson = ctx.read(a)?;
            let one = OneCat::from_json(&j)?;
            let t = match strictify::strictify_with_budget(&one, *budget) {
                Ok(t) => t,
                Err(strictify::StrictifyError::Budget) => {
                    ctx.certify("fail", vec![serde_json::json!({"kind": "budget"})])?;
                    return Ok(EXIT_BUDGET);
                }
                Err(e) => {
                    ctx.certify("fail", vec![serde_json::json!({"kind": e.to_string()})])?;
                    return Ok(EXIT_FAIL);
                }
            };
            ctx.write("strictified.cat.json", &t.cat.to_json())?;
            let unit = strictify::eta(&t).map_err(|e| e.to_string())?;
            ctx.write("eta.oplax.json", &unit.to_json())?;
            ctx.certify("pass", vec![])?;
            Ok(EXIT_PASS)
        }
        Command::Hom { n, f, g, max_dim, coeff_cap } => {
            let o = OrientalHandle::standard(*n);
            let fc = o.path_cell(&parse_path(f, *n)?);
            let gc = o.path_cell(&parse_path(g, *n)?);
            let hom = o
                .hom_cells(&fc, &gc, *max_dim, *coeff_cap)
                .map_err(|e| e.to_string())?;
            let mut census: BTreeMap<usize, Vec<String>> = BTreeMap::new();
            for c in &hom {
                census.entry(c.dim).or_default().push(c.name());
            }
            ctx.write(
                &format!("hom-{n}.json"),
                &serde_json::json!({
                    "ambient_cells": census,
                    "total": hom.len(),
                }),
            )?;
            ctx.certify("pass", vec![])?;
            Ok(EXIT_PASS)
        }
    }
}
