use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use ha_core::derham::h_dr;
use ha_core::graphs::{ha_cohn, ha_leavitt, regular_vertices, DirectedGraph};
use ha_core::groebner::{filtered_noetherian_witness, strong_gb, IdealSpec};
use ha_core::lift::{
    lift_idempotent, psi_cocycle_check, section_curvature_check, Connection, LiftingRecursion, ModMatrix,
};
use ha_core::ncforms::xcomplex_homology;
use ha_core::tube::{fedosov_growth_check, floor_estimates, tube_closure_check};
use ha_core::{AlgebraPresentation, AlgebraSpec, Error, PrimeConfig};

use crate::report::{int_json, Report};
use crate::suites::{check_all, growth_profiles, run_suite, SuiteConfig, DEGREE_PATTERNS, SUITES};
use crate::{Cli, Command, InputError, TubeCheck};

pub const DEFAULT_TRUNCATION: u32 = 20;

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_algebra(path: &Path) -> Result<AlgebraPresentation, InputError> {
    let spec: AlgebraSpec = serde_json::from_str(&read(path)?)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    Ok(AlgebraPresentation::from_spec(&spec)?)
}

fn prime_config(cli: &Cli) -> Result<PrimeConfig, InputError> {
    let p = cli.prime.ok_or_else(|| InputError("--prime is required".into()))?;
    Ok(PrimeConfig::new(p, cli.precision)?)
}

fn to_fields(report: &mut Report, v: Value) {
    if let Value::Object(m) = v {
        for (k, v) in m {
            report.field(&k, v);
        }
    }
}

fn unstable(report: &mut Report, e: &Error) -> bool {
    match e {
        Error::Unstable {
            d,
            padded,
            at_d,
            at_padded,
        } => {
            report
                .field("stable", false)
                .field("truncation", *d)
                .field("dims", json!({ d.to_string(): [at_d.0, at_d.1], padded.to_string(): [at_padded.0, at_padded.1] }))
                .check(false);
            true
        }
        _ => false,
    }
}

pub fn execute(cli: &Cli) -> Result<Report, InputError> {
    let cfg = prime_config(cli)?;
    let d = cli.truncate.unwrap_or(DEFAULT_TRUNCATION);
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let mut report;
    match &cli.command {
        Command::Graph { file, cohn } => {
            let g = DirectedGraph::from_json(&read(file)?)?;
            report = Report::new("graph");
            report.input("file", file.display().to_string()).input("cohn", *cohn);
            let r = if *cohn { ha_cohn(&g, &cfg) } else { ha_leavitt(&g, &cfg) };
            report
                .field("ha0", r.dim_ha0)
                .field("ha1", r.dim_ha1)
                .field("snf_invariants", r.snf_invariants.iter().map(int_json).collect::<Vec<_>>())
                .field("vertices", g.vertices.len())
                .field("regular", regular_vertices(&g).len());
        }
        Command::Xcomplex { algebra } => {
            let alg = load_algebra(algebra)?;
            report = Report::new("xcomplex");
            report.input("algebra", serde_json::to_value(alg.to_spec()).unwrap()).input("truncate", d);
            match xcomplex_homology(&alg, &cfg, d) {
                Ok(r) => to_fields(&mut report, serde_json::to_value(r).unwrap()),
                Err(e) if unstable(&mut report, &e) => {}
                Err(e) => return Err(e.into()),
            }
        }
        Command::Derham { algebra } => {
            let alg = load_algebra(algebra)?;
            report = Report::new("derham");
            report.input("algebra", serde_json::to_value(alg.to_spec()).unwrap()).input("truncate", d);
            match h_dr(&alg, &cfg, d) {
                Ok(r) => {
                    report.check(r.valuation_loss <= r.loss_bound);
                    to_fields(&mut report, serde_json::to_value(r).unwrap());
                }
                Err(e) if unstable(&mut report, &e) => {}
                Err(e) => return Err(e.into()),
            }
        }
        Command::Tube { algebra, level, check } => {
            report = Report::new("tube");
            report.input("level", *level).input("seed", cli.seed);
            if *level == 0 {
                return Err(InputError("--level must be positive".into()));
            }
            match check {
                TubeCheck::Floors => {
                    let n = cli.truncate.unwrap_or(200) as u64;
                    report.input("check", "floors").input("n_max", n);
                    let r = floor_estimates(n);
                    report.check(r.passed());
                    to_fields(&mut report, serde_json::to_value(r).unwrap());
                }
                TubeCheck::Closure | TubeCheck::Growth => {
                    let path = algebra
                        .as_ref()
                        .ok_or_else(|| InputError("--algebra is required for this check".into()))?;
                    let alg = load_algebra(path)?;
                    report.input("algebra", serde_json::to_value(alg.to_spec()).unwrap());
                    if *check == TubeCheck::Closure {
                        let pairs = cli.samples.unwrap_or(1000);
                        report.input("check", "closure").input("samples", pairs);
                        let r = tube_closure_check(&alg, *level, pairs, 2, &cfg, &mut rng)?;
                        report.check(r.violations == 0);
                        to_fields(&mut report, serde_json::to_value(r).unwrap());
                    } else {
                        let samples = cli.samples.unwrap_or(100);
                        report.input("check", "growth").input("samples", samples);
                        let mut patterns = Vec::new();
                        for profile in &growth_profiles(&alg) {
                            for degrees in DEGREE_PATTERNS {
                                let r = fedosov_growth_check(&alg, profile, degrees, samples, &cfg, &mut rng)?;
                                report.check(r.passed());
                                let mut v = serde_json::to_value(r).unwrap();
                                v["profile"] = profile.to_string().into();
                                patterns.push(v);
                            }
                        }
                        report.field("patterns", patterns);
                    }
                }
            }
        }
        Command::Lift { algebra, order, cap } => {
            let alg = load_algebra(algebra)?;
            report = Report::new("lift");
            report
                .input("algebra", serde_json::to_value(alg.to_spec()).unwrap())
                .input("order", *order)
                .input("cap", *cap);
            let rec = LiftingRecursion::new(Connection::standard(&alg)?, *cap)?;
            let mut cocycles = Vec::new();
            for k in 1..=*order {
                let c = psi_cocycle_check(&rec, k, *cap)?;
                report.check(c.violations == 0);
                cocycles.push(serde_json::to_value(c).unwrap());
            }
            let curv = section_curvature_check(&rec, *order, *cap)?;
            report.check(curv.passed());
            report.field("cocycles", cocycles).field("curvature", serde_json::to_value(curv).unwrap());
        }
        Command::Idem { matrix } => {
            let rows = parse_matrix(&read(matrix)?)?;
            let n = cli.precision;
            report = Report::new("idem");
            report
                .input("matrix", json!(rows.iter().map(|r| r.iter().map(int_json).collect::<Vec<_>>()).collect::<Vec<_>>()))
                .input("precision", n);
            let modulus = cfg.modulus(n);
            let e = ModMatrix::new(&rows, &modulus)?;
            let lifted = lift_idempotent(&e, &cfg, n)?;
            let p = BigInt::from(cfg.p());
            let idempotent = lifted.is_idempotent();
            let congruent = lifted.reduce(&p) == e.reduce(&p);
            report
                .check(idempotent && congruent)
                .field("modulus", int_json(&modulus))
                .field(
                    "lift",
                    lifted.rows().iter().map(|r| r.iter().map(int_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
                )
                .field("idempotent", idempotent)
                .field("congruent_mod_p", congruent);
        }
        Command::Groebner { file, witness } => {
            let spec = IdealSpec::from_json(&read(file)?)?;
            let gens = spec.polys()?;
            report = Report::new("groebner");
            report.input("file", file.display().to_string()).input("seed", cli.seed);
            let gb = strong_gb(&gens)?;
            let members = gens.iter().all(|g| gb.is_member(g));
            report
                .check(members)
                .field("basis", gb.basis().iter().map(|b| b.format(&spec.vars)).collect::<Vec<_>>())
                .field("generators_reduce_to_zero", members);
            if let Some(samples) = witness {
                let max_deg = gens.iter().filter_map(|g| g.degree()).max().unwrap_or(0) + 2;
                let w = filtered_noetherian_witness(&gens, *samples, max_deg, &mut rng)?;
                report.input("witness", *samples);
                report.check(w.passed());
                report.field("witness", serde_json::to_value(w).unwrap());
            }
        }
        Command::Check { suite } => {
            let sc = SuiteConfig {
                cfg: cfg.clone(),
                truncate: cli.truncate,
                seed: cli.seed,
                samples: cli.samples,
            };
            report = Report::new("check");
            report.input("suite", suite.clone()).input("seed", cli.seed);
            if let Some(s) = cli.samples {
                report.input("samples", s);
            }
            let outcomes = if suite == "all" {
                check_all(&sc)
            } else if SUITES.contains(&suite.as_str()) {
                vec![(suite.clone(), run_suite(suite, &sc))]
            } else {
                return Err(InputError(format!("unknown suite {suite}; expected all or one of {}", SUITES.join(", "))));
            };
            let mut suites = serde_json::Map::new();
            for (name, o) in outcomes {
                report.check(o.passed());
                suites.insert(name, o.to_value());
            }
            report.field("suites", Value::Object(suites));
        }
    }
    report.input("prime", cfg.p());
    Ok(report)
}

/// `{"matrix": [[..], ..]}` or a bare array of rows.
fn parse_matrix(s: &str) -> Result<Vec<Vec<BigInt>>, InputError> {
    let v: Value = serde_json::from_str(s)?;
    let rows = match &v {
        Value::Object(m) => m.get("matrix").ok_or_else(|| InputError("missing \"matrix\"".into()))?,
        other => other,
    };
    let rows = rows.as_array().ok_or_else(|| InputError("matrix must be an array of rows".into()))?;
    rows.iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| InputError("matrix rows must be arrays".into()))?
                .iter()
                .map(|x| {
                    x.as_i64()
                        .map(BigInt::from)
                        .ok_or_else(|| InputError("matrix entries must be integers".into()))
                })
                .collect()
        })
        .collect()
}
