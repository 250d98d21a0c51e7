//! `freemap` — exact freeness certification from the command line.
//!
//! Subcommands: `verify`, `repro`, `search`, `sturm`, `collar`, `obstruct`.
//! Exit codes: 0 success, 1 verdict failure (NOT_FREE or reproduction
//! mismatch), 2 schema/validation error, 3 computation error.

use clap::{Args, Parser, Subcommand};
use freemap_core::ansatz::{default_weight_set, obstruction_check, AnsatzSpec, WeightSet};
use freemap_core::collar::{verify_collar, CollarProfile, CollarVerdict};
use freemap_core::error::Error;
use freemap_core::rational::Rational;
use freemap_core::ratpoly::RatPoly;
use freemap_core::registry::{format_report, repro_case, repro_paper, ReproReport, CASES};
use freemap_core::search::{search, SearchConfig};
use freemap_core::sturm::{
    certify_sign, format_sign_table, sign_table, sturm_sequence, SignDomain,
};
use freemap_core::verify::{verify, verify_extended, Verdict};
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_VERDICT: u8 = 1;
const EXIT_SCHEMA: u8 = 2;
const EXIT_COMPUTE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "freemap",
    about = "Exact freeness certificates for block-rotation torus immersions",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputOpts {
    /// Emit machine-readable JSON on stdout instead of the text summary.
    #[arg(long)]
    json: bool,
    /// Also write the JSON artifact to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a block-rotation spec (file path or inline JSON).
    Verify {
        /// AnsatzSpec JSON; use --extended for two-loop specs.
        spec: String,
        /// Treat the input as an extended two-loop spec.
        #[arg(long)]
        extended: bool,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Reproduce the bundled reference cases and compare published values.
    Repro {
        /// Run a single case (default: all of them).
        #[arg(long)]
        case: Option<String>,
        /// Write one certificate JSON per case into this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Deterministic coefficient search with exact certification handoff.
    Search {
        /// SearchConfig JSON (file path or inline).
        config: String,
        /// Exactly verify every emitted candidate, not just promising ones.
        #[arg(long)]
        certify_all: bool,
        /// Write the candidate stream (JSON lines) to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sturm chain, sign table and sign certificate of a rational polynomial.
    Sturm {
        /// RatPoly JSON array (ascending coefficients), file path or inline.
        poly: String,
        /// Certify on the closed interval [A, B] instead of all of R.
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        interval: Option<Vec<String>>,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Verify a collar interpolation profile.
    Collar {
        /// CollarProfile JSON (file path or inline).
        profile: String,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Necessary-condition check for the block-rotation ansatz on T^m.
    Obstruct {
        #[arg(long)]
        m: u32,
        /// WeightSet JSON (file path or inline); defaults to the bundled
        /// weights for m = 2..5 and a generated set otherwise.
        #[arg(long)]
        weights: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

/// Inputs are file paths or inline JSON (leading `{` or `[`).
fn read_input(s: &str) -> Result<String, String> {
    let trimmed = s.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        Ok(s.to_string())
    } else {
        fs::read_to_string(s).map_err(|e| format!("cannot read {s}: {e}"))
    }
}

fn error_exit(e: &Error) -> u8 {
    match e {
        Error::Validation(_) => EXIT_SCHEMA,
        _ => EXIT_COMPUTE,
    }
}

fn write_artifact(out: &Option<PathBuf>, json: &str) -> Result<(), String> {
    if let Some(path) = out {
        fs::write(path, format!("{json}\n")).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    Ok(())
}

fn cmd_verify(spec_input: &str, extended: bool, output: &OutputOpts) -> Result<u8, (u8, String)> {
    let raw = read_input(spec_input).map_err(|e| (EXIT_SCHEMA, e))?;
    let cert = if extended {
        let spec: freemap_core::extended::ExtendedAnsatzSpec =
            serde_json::from_str(&raw).map_err(|e| (EXIT_SCHEMA, e.to_string()))?;
        verify_extended(&spec).map_err(|e| (error_exit(&e), e.to_string()))?
    } else {
        let spec: AnsatzSpec =
            serde_json::from_str(&raw).map_err(|e| (EXIT_SCHEMA, e.to_string()))?;
        spec.validate().map_err(|e| (EXIT_SCHEMA, e.to_string()))?;
        verify(&spec).map_err(|e| (error_exit(&e), e.to_string()))?
    };
    let json = serde_json::to_string(&cert).unwrap();
    write_artifact(&output.out, &json).map_err(|e| (EXIT_COMPUTE, e))?;
    if output.json {
        println!("{json}");
    } else {
        println!("spec: {}", cert.spec_label);
        println!("determinant: {}", cert.determinant);
        println!(
            "numerator degree: {:?}, denominator power: {}",
            cert.weierstrass.numerator.degree(),
            cert.weierstrass.denom_power
        );
        if let Some(p) = &cert.positivity {
            println!(
                "V(-inf) = {}, V(+inf) = {}, roots = {}, sign = {}",
                p.v_minus_inf, p.v_plus_inf, p.real_root_count, p.verdict
            );
        }
        println!("D(0) = {}", cert.value_at_zero);
        println!("D(pi) = {}", cert.value_at_pi);
        println!(
            "verdict: {}",
            match cert.verdict {
                Verdict::Free => "FREE",
                Verdict::NotFree => "NOT_FREE",
            }
        );
    }
    Ok(if cert.verdict == Verdict::Free {
        EXIT_OK
    } else {
        EXIT_VERDICT
    })
}

fn cmd_repro(case: &Option<String>, out_dir: &Option<PathBuf>, json: bool) -> Result<u8, (u8, String)> {
    let report = match case {
        Some(name) => {
            if !CASES.contains(&name.as_str()) {
                return Err((
                    EXIT_SCHEMA,
                    format!("unknown case {name}; known cases: {}", CASES.join(", ")),
                ));
            }
            let r = repro_case(name).map_err(|e| (error_exit(&e), e.to_string()))?;
            let all = r.pass;
            ReproReport {
                cases: vec![r],
                all_pass: all,
            }
        }
        None => repro_paper(),
    };
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).map_err(|e| (EXIT_COMPUTE, e.to_string()))?;
        for case in &report.cases {
            let path = dir.join(format!("{}.json", case.name));
            let body = serde_json::to_string_pretty(&case.artifact).unwrap();
            fs::write(&path, format!("{body}\n"))
                .map_err(|e| (EXIT_COMPUTE, format!("cannot write {}: {e}", path.display())))?;
        }
    }
    if json {
        println!("{}", serde_json::to_string(&report).unwrap());
    } else {
        print!("{}", format_report(&report));
    }
    Ok(if report.all_pass { EXIT_OK } else { EXIT_VERDICT })
}

fn cmd_search(config_input: &str, certify_all: bool, out: &Option<PathBuf>) -> Result<u8, (u8, String)> {
    let raw = read_input(config_input).map_err(|e| (EXIT_SCHEMA, e))?;
    let mut config: SearchConfig =
        serde_json::from_str(&raw).map_err(|e| (EXIT_SCHEMA, e.to_string()))?;
    if certify_all {
        config.certify_threshold = f64::NEG_INFINITY;
    }
    let candidates = search(&config).map_err(|e| (error_exit(&e), e.to_string()))?;
    let mut lines = String::new();
    for c in &candidates {
        lines.push_str(&serde_json::to_string(c).unwrap());
        lines.push('\n');
    }
    if let Some(path) = out {
        fs::write(path, &lines)
            .map_err(|e| (EXIT_COMPUTE, format!("cannot write {}: {e}", path.display())))?;
    } else {
        print!("{lines}");
    }
    eprintln!(
        "{} candidates, {} certified",
        candidates.len(),
        candidates.iter().filter(|c| c.certified.is_some()).count()
    );
    Ok(EXIT_OK)
}

fn cmd_sturm(poly_input: &str, interval: &Option<Vec<String>>, output: &OutputOpts) -> Result<u8, (u8, String)> {
    let raw = read_input(poly_input).map_err(|e| (EXIT_SCHEMA, e))?;
    let poly: RatPoly = serde_json::from_str(&raw).map_err(|e| (EXIT_SCHEMA, e.to_string()))?;
    let domain = match interval {
        Some(ab) => {
            let a: Rational = ab[0].parse().map_err(|e| (EXIT_SCHEMA, format!("bad endpoint: {e}")))?;
            let b: Rational = ab[1].parse().map_err(|e| (EXIT_SCHEMA, format!("bad endpoint: {e}")))?;
            SignDomain::Interval(a, b)
        }
        None => SignDomain::AllReals,
    };
    let chain = sturm_sequence(&poly).map_err(|e| (error_exit(&e), e.to_string()))?;
    let table = sign_table(&chain);
    let cert = certify_sign(&poly, domain).map_err(|e| (error_exit(&e), e.to_string()))?;
    let artifact = serde_json::json!({
        "schema_version": 1,
        "sign_table": table,
        "certificate": cert,
    });
    let json = serde_json::to_string(&artifact).unwrap();
    write_artifact(&output.out, &json).map_err(|e| (EXIT_COMPUTE, e))?;
    if output.json {
        println!("{json}");
    } else {
        print!("{}", format_sign_table(&table));
        println!(
            "V(-inf) = {}, V(+inf) = {}, distinct real roots = {}",
            cert.v_minus_inf, cert.v_plus_inf, cert.real_root_count
        );
        println!("sample p({}) = {}", cert.sample_point, cert.sample_value);
        println!("verdict: {}", cert.verdict);
    }
    Ok(EXIT_OK)
}

fn cmd_collar(profile_input: &str, output: &OutputOpts) -> Result<u8, (u8, String)> {
    let raw = read_input(profile_input).map_err(|e| (EXIT_SCHEMA, e))?;
    let profile: CollarProfile =
        serde_json::from_str(&raw).map_err(|e| (EXIT_SCHEMA, e.to_string()))?;
    let cert = verify_collar(&profile).map_err(|e| (error_exit(&e), e.to_string()))?;
    let json = serde_json::to_string(&cert).unwrap();
    write_artifact(&output.out, &json).map_err(|e| (EXIT_COMPUTE, e))?;
    if output.json {
        println!("{json}");
    } else {
        println!("H degree: {:?}", cert.h.degree());
        println!("K = {} * (-H), K degree: {:?}", cert.k_scale, cert.k.degree());
        println!("jets at u=0: {}, jets at u=1: {}", cert.jet0_ok, cert.jet1_ok);
        println!(
            "a on [0,1]: {}, K on [0,1]: {}",
            cert.a_positive_on_01.verdict, cert.k_positive_on_01.verdict
        );
        println!(
            "verdict: {}",
            match cert.verdict {
                CollarVerdict::FreeOnCollar => "FREE_ON_COLLAR",
                CollarVerdict::Fails => "FAILS",
            }
        );
    }
    Ok(match cert.verdict {
        CollarVerdict::FreeOnCollar => EXIT_OK,
        CollarVerdict::Fails => EXIT_VERDICT,
    })
}

fn cmd_obstruct(m: u32, weights: &Option<String>, json: bool) -> Result<u8, (u8, String)> {
    if m < 2 {
        return Err((EXIT_SCHEMA, "m must be at least 2".into()));
    }
    let ws: WeightSet = match weights {
        Some(input) => {
            let raw = read_input(input).map_err(|e| (EXIT_SCHEMA, e))?;
            serde_json::from_str(&raw).map_err(|e| (EXIT_SCHEMA, e.to_string()))?
        }
        None => match m {
            2..=5 => {
                let case = ["t2", "t3", "t4", "t5"][(m - 2) as usize];
                freemap_core::registry::fixture_spec(case)
                    .map_err(|e| (EXIT_COMPUTE, e.to_string()))?
                    .weight_set
            }
            _ => default_weight_set(m),
        },
    };
    ws.validate()
        .map_err(|e| (EXIT_SCHEMA, format!("invalid weight set: {}", e.join("; "))))?;
    let report = obstruction_check(m, &ws);
    if json {
        println!("{}", serde_json::to_string(&report).unwrap());
    } else if report.passes {
        println!(
            "passes: {} blocks >= {} and quadratic rank {}/{}",
            report.blocks, report.required_blocks, report.quadratic_rank, report.rank_required
        );
    } else if !report.count_ok {
        println!(
            "fails: floor(q_m/2)={} < {}",
            report.blocks, report.required_blocks
        );
    } else {
        println!(
            "fails: quadratic rank {} < {}",
            report.quadratic_rank, report.rank_required
        );
    }
    Ok(if report.passes { EXIT_OK } else { EXIT_VERDICT })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify {
            spec,
            extended,
            output,
        } => cmd_verify(spec, *extended, output),
        Command::Repro { case, out_dir, json } => cmd_repro(case, out_dir, *json),
        Command::Search {
            config,
            certify_all,
            out,
        } => cmd_search(config, *certify_all, out),
        Command::Sturm {
            poly,
            interval,
            output,
        } => cmd_sturm(poly, interval, output),
        Command::Collar { profile, output } => cmd_collar(profile, output),
        Command::Obstruct { m, weights, json } => cmd_obstruct(*m, weights, *json),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
