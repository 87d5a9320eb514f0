use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cgroupkit::catalog::{builtin_catalog, load_catalog_dir, DatumFile};
use cgroupkit::cgroup::{build_c_group, build_rc, galois_descent_check};
use cgroupkit::highest_weight::weyl_dimension;
use cgroupkit::parameters::run_corollary_trials;
use cgroupkit::report::{run_full_verification_with, CGroupSummary};
use cgroupkit::root_datum::{RootDatum, WeightVector, DEFAULT_WEYL_BOUND};
use cgroupkit::shimura::{normalize_mu, verify_lemma1, ShimuraData};
use cgroupkit::{Error, Rational, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "cgroupkit",
    version,
    about = "Dual groups, C-groups and twist checks for Shimura root data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check the root datum axioms and the Shimura condition on mu.
    Validate {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print the dual root datum.
    Dual {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print d and the dimension of V_mu by two formulas.
    Dim {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print the character of V_mu.
    Char {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print the quotient torus lattices, Galois descent and r_C.
    Cgroup {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
    /// Verify a whole catalog (the built-in one by default).
    Report {
        #[arg(long, env = "CGROUPKIT_CATALOG")]
        catalog: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        /// Include wall-clock timings (output is then not reproducible).
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Subcommand)]
enum Verify {
    /// <chi, mu> = -d and the central scalar of e on V_mu.
    Lemma1 {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Seeded random trials of the twist identity.
    Corollary {
        file: PathBuf,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

/// Result of a command: structured output, text output, pass/fail.
struct Output {
    json: Value,
    text: String,
    passed: bool,
}

fn read_file(path: &Path) -> Result<DatumFile> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    DatumFile::parse(&path.display().to_string(), &text)
}

fn load(path: &Path) -> Result<(DatumFile, RootDatum, ShimuraData)> {
    let file = read_file(path)?;
    let (datum, s) = file.load(&path.display().to_string())?;
    Ok((file, datum, s))
}

fn rows(m: &cgroupkit::IntMatrix) -> Vec<Vec<i64>> {
    m.to_rows()
}

fn validate(path: &Path) -> Result<Output> {
    let file = read_file(path)?;
    let datum = file.to_root_datum_unchecked(&path.display().to_string())?;
    let report = datum.validate();
    let mut text = String::new();
    for c in &report.checks {
        text += &format!("{} {}", if c.passed { "ok  " } else { "FAIL" }, c.invariant);
        if let Some(d) = &c.detail {
            text += &format!(": {d}");
        }
        text.push('\n');
    }
    let mut json = json!({ "datum": report.datum, "checks": report.checks });
    let mut passed = report.passed;
    if passed {
        match normalize_mu(&datum, &WeightVector::cocharacter(file.mu.clone())) {
            Ok(s) => {
                text += &format!("ok   mu normalizes to {:?}, d = {}\n", s.mu.coords, s.d);
                json["mu"] = json!(s.mu.coords);
                json["d"] = json!(s.d);
            }
            Err(e) => {
                text += &format!("FAIL mu: {e}\n");
                json["mu_error"] = json!(e.to_string());
                passed = false;
            }
        }
    }
    json["passed"] = json!(passed);
    Ok(Output { json, text, passed })
}

fn dual(path: &Path) -> Result<Output> {
    let file = read_file(path)?;
    let datum = file.to_root_datum(&path.display().to_string())?;
    let d = datum.dual()?;
    let mut json = json!({
        "name": d.name,
        "rank": d.rank,
        "roots": d.roots,
        "coroots": d.coroots,
        "simple": d.simple,
        "galois": d.automorphisms.iter().map(rows).collect::<Vec<_>>(),
        "mu_hat": file.mu,
    });
    if !d.pairing.is_identity() {
        json["pairing"] = json!(rows(&d.pairing));
    }
    let mut text = format!("{} (rank {})\nroot -> coroot\n", d.name, d.rank);
    for (r, c) in d.roots.iter().zip(&d.coroots) {
        text += &format!("  {r:?} -> {c:?}\n");
    }
    text += &format!("simple: {:?}\n", d.simple);
    for a in &d.automorphisms {
        text += &format!("automorphism: {:?}\n", rows(a));
    }
    Ok(Output {
        json,
        text,
        passed: true,
    })
}

fn dim(path: &Path) -> Result<Output> {
    let (_, datum, s) = load(path)?;
    let dual = s.dual_datum()?;
    let highest = dual.dominant_conjugate(&s.mu.dualize())?;
    let freudenthal = s.v_mu()?.dimension();
    let weyl = weyl_dimension(&dual, &highest)?;
    let order = datum.weyl_group_order(DEFAULT_WEYL_BOUND)?;
    let passed = freudenthal == weyl;
    let json = json!({
        "datum": datum.name,
        "mu": s.mu.coords,
        "d": s.d,
        "highest_weight": highest.coords,
        "weyl_group_order": order,
        "dim_freudenthal": freudenthal,
        "dim_weyl": weyl,
        "passed": passed,
    });
    let text = format!(
        "{}: mu = {:?}, d = {}, |W| = {order}\nV_mu highest weight {:?}: dim {freudenthal} (multiplicities), {weyl} (Weyl formula)\n",
        datum.name, s.mu.coords, s.d, highest.coords
    );
    Ok(Output { json, text, passed })
}

fn character(path: &Path) -> Result<Output> {
    let (_, _, s) = load(path)?;
    let ch = s.v_mu()?;
    let mut text = format!("V_mu for {}: dimension {}\n", s.datum.name, ch.dimension());
    for (w, m) in &ch.entries {
        text += &format!("  {w:?} x{m}\n");
    }
    Ok(Output {
        json: serde_json::to_value(&ch).expect("character serializes"),
        text,
        passed: true,
    })
}

fn cgroup(path: &Path) -> Result<Output> {
    let (_, _, s) = load(path)?;
    let c = build_c_group::<Rational>(&s)?;
    let summary = CGroupSummary::new(&c);
    let descent = galois_descent_check(&c, &c.dual_datum.automorphisms);
    let rl = s.v_mu()?;
    let rc = build_rc(&c, &rl)?;
    let weights: Vec<Value> = rc
        .character
        .entries
        .iter()
        .map(|(w, m)| json!({ "weight": w, "multiplicity": m, "coordinates": rc.coordinates[w] }))
        .collect();
    let mut text = format!("chi = {:?}, d = {}\n", c.chi.coords, c.d);
    text += &format!("character lattice basis: {:?}\n", summary.char_basis);
    text += &format!("cocharacter lattice basis: {:?}\n", summary.cochar_basis);
    text += &format!(
        "indices {} / {}, kernel order {} generated by {:?}, e trivial: {}\n",
        summary.char_index,
        summary.cochar_index,
        summary.kernel_order,
        summary.kernel_generator,
        summary.e_trivial
    );
    for check in &descent.checks {
        text += &format!(
            "automorphism {}: fixes chi {}, preserves lattices {}/{}\n",
            check.automorphism,
            check.fixes_chi,
            check.preserves_char_lattice,
            check.preserves_cochar_lattice
        );
    }
    text += "r_C weights (coordinates in the character lattice basis):\n";
    for (w, m) in &rc.character.entries {
        text += &format!("  {w:?} x{m}  {:?}\n", rc.coordinates[w]);
    }
    let passed = descent.passed;
    let json = json!({ "cgroup": summary, "galois": descent, "r_c": weights, "passed": passed });
    Ok(Output { json, text, passed })
}

fn lemma1(path: &Path) -> Result<Output> {
    let (_, _, s) = load(path)?;
    let r = verify_lemma1(&s)?;
    let text = format!(
        "{}: <chi, mu> = {}, d = {}, e acts by {:+} on V_mu (dim {}){}\n{}\n",
        r.datum,
        r.pairing,
        r.d,
        r.scalar,
        r.dim_v_mu,
        if r.degenerate { ", degenerate" } else { "" },
        if r.passed { "pass" } else { "FAIL" }
    );
    Ok(Output {
        json: serde_json::to_value(&r).expect("lemma report serializes"),
        text,
        passed: r.passed,
    })
}

fn corollary(path: &Path, trials: u64, seed: u64) -> Result<Output> {
    let (_, _, s) = load(path)?;
    let c = build_c_group::<Rational>(&s)?;
    let rl = s.v_mu()?;
    let rc = build_rc(&c, &rl)?;
    let summary = run_corollary_trials(&s, &c, &rl, &rc, seed, trials, true)?;
    let passed = summary.passed();
    let text = format!(
        "{}: {} of {} trials agree (seed {}); perturbed twist rejected in {} of {} trials with s != 1\n{}\n",
        s.datum.name,
        summary.trials - summary.failures,
        summary.trials,
        seed,
        summary.negative_controls_rejected,
        summary.negative_controls,
        if passed { "pass" } else { "FAIL" }
    );
    Ok(Output {
        json: serde_json::to_value(&summary).expect("summary serializes"),
        text,
        passed,
    })
}

fn report(
    catalog: Option<PathBuf>,
    seed: u64,
    trials: u64,
    timing: bool,
) -> Result<(String, String, bool)> {
    let entries = match catalog {
        Some(dir) => load_catalog_dir(dir)?,
        None => builtin_catalog(),
    };
    let r = run_full_verification_with(&entries, seed, trials, timing);
    Ok((r.to_json(), r.to_text(), r.passed))
}

fn emit(out: Result<Output>, format: Format) -> ExitCode {
    finish(
        out.map(|o| {
            let json = serde_json::to_string_pretty(&o.json).expect("json output");
            (json, o.text, o.passed)
        }),
        format,
    )
}

fn finish(out: Result<(String, String, bool)>, format: Format) -> ExitCode {
    match out {
        Ok((json, text, passed)) => {
            match format {
                Format::Json => println!("{json}"),
                Format::Text => print!("{text}"),
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 2 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Validate { file, format } => emit(validate(&file), format),
        Command::Dual { file, format } => emit(dual(&file), format),
        Command::Dim { file, format } => emit(dim(&file), format),
        Command::Char { file, format } => emit(character(&file), format),
        Command::Cgroup { file, format } => emit(cgroup(&file), format),
        Command::Verify {
            what: Verify::Lemma1 { file, format },
        } => emit(lemma1(&file), format),
        Command::Verify {
            what:
                Verify::Corollary {
                    file,
                    trials,
                    seed,
                    format,
                },
        } => emit(corollary(&file, trials, seed), format),
        Command::Report {
            catalog,
            format,
            seed,
            trials,
            timing,
        } => finish(report(catalog, seed, trials, timing), format),
    }
}
