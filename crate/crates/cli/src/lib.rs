//! Command-line front end for `septic-core`.

pub mod cache;
pub mod survey;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use septic_core::arith::{FactorBudget, Factorizer, RhoFactorizer};
use septic_core::blocks::{build_block, verify_block};
use septic_core::family::{self, Catalogue, Mismatch};
use septic_core::field::{powerfree_decomposition, FieldReport};
use septic_core::poly::IntPoly;
use septic_core::Error;

use cache::CachedFactorizer;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "septic", version, about = "Arithmetic of the cyclic septic fields K_t")]
pub struct Cli {
    /// Factorization cache file (plain text, appended to).
    #[arg(long, global = true, env = "SEPTIC_CACHE")]
    pub cache: Option<PathBuf>,

    /// Pollard rho iteration budget per composite.
    #[arg(long, global = true, env = "SEPTIC_BUDGET", default_value_t = FactorBudget::default().rho_iterations)]
    pub budget: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full arithmetic profile of K_t as JSON.
    #[command(allow_negative_numbers = true)]
    Report { t: i64 },

    /// One row per nonzero t in [t_min, t_max].
    #[command(allow_negative_numbers = true)]
    Survey {
        t_min: i64,
        t_max: i64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Worker threads; output does not depend on it.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },

    /// Check every polynomial identity of the family.
    VerifyIdentities {
        /// Add 1 to the constant term of a catalogue polynomial first
        /// (E, F, G, H, I, J, L, M, W, N, PSI, U). For self-testing.
        #[arg(long, hide = true)]
        mutate: Option<String>,
    },

    /// Valuations of E, F, G, I, J, H on a residue class.
    #[command(allow_negative_numbers = true)]
    Valuations {
        #[arg(long, default_value_t = 7)]
        q: u64,
        #[arg(long, default_value_t = 2)]
        r: u64,
        /// Also print pointwise 7-adic valuations at this parameter.
        #[arg(long)]
        t: Option<i64>,
    },

    /// Build and verify a CRT certificate for m consecutive fields of 7-rank >= r.
    Block {
        m: usize,
        r: usize,
        #[arg(long, default_value_t = 3)]
        samples: usize,
    },

    /// E(t) = 7^alpha · A · B^2 · C^3 · D^4.
    #[command(allow_negative_numbers = true)]
    Decompose { t: i64 },
}

/// Maps a library error to an exit code.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::OutsideHypothesis(_) => EXIT_USAGE,
        Error::Resource(_) | Error::Incomplete(_) => EXIT_RESOURCE,
        Error::CertificateInvalid(_) => EXIT_VERIFY,
    }
}

pub fn make_factorizer(cli: &Cli) -> anyhow::Result<CachedFactorizer<RhoFactorizer>> {
    let inner = RhoFactorizer::new(FactorBudget {
        rho_iterations: cli.budget,
        ..FactorBudget::default()
    });
    Ok(match &cli.cache {
        Some(path) => CachedFactorizer::open(inner, path)?,
        None => CachedFactorizer::in_memory(inner),
    })
}

/// Runs a parsed command, writing results to `out` and diagnostics to
/// `err`. Returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<i32> {
    let fz = match make_factorizer(cli) {
        Ok(fz) => fz,
        Err(e) => {
            writeln!(err, "error: {e:#}")?;
            return Ok(EXIT_USAGE);
        }
    };
    let result = match &cli.command {
        Command::Report { t } => report(*t, &fz, out, err),
        Command::Survey { t_min, t_max, format, jobs } => {
            survey::run(*t_min, *t_max, *format, *jobs, &fz, out, err)
        }
        Command::VerifyIdentities { mutate } => return verify_identities(mutate.as_deref(), &fz, out, err),
        Command::Valuations { q, r, t } => valuations(*q, *r, *t, out),
        Command::Block { m, r, samples } => block(*m, *r, *samples, &fz, out),
        Command::Decompose { t } => decompose(*t, &fz, out),
    };
    match result {
        Ok(code) => Ok(code),
        Err(e) => match e.downcast_ref::<Error>() {
            Some(core) => {
                writeln!(err, "error: {core}")?;
                Ok(exit_code(core))
            }
            None => Err(e),
        },
    }
}

fn report(t: i64, fz: &dyn Factorizer, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<i32> {
    let report = FieldReport::compute(t, fz)?;
    for reason in &report.unknown_reasons {
        writeln!(err, "note: {reason}")?;
    }
    writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
    Ok(EXIT_OK)
}

fn mutated_catalogue(name: &str) -> anyhow::Result<Catalogue> {
    let mut cat = Catalogue::standard().clone();
    let slot = match name.to_ascii_uppercase().as_str() {
        "E" => &mut cat.e,
        "F" => &mut cat.f,
        "G" => &mut cat.g,
        "H" => &mut cat.h,
        "I" => &mut cat.i,
        "J" => &mut cat.j,
        "L" => &mut cat.l,
        "M" => &mut cat.m,
        "W" => &mut cat.w,
        "N" => &mut cat.n,
        "PSI" => &mut cat.psi,
        "U" => &mut cat.u,
        other => return Err(Error::Domain(format!("unknown catalogue polynomial {other:?}")).into()),
    };
    *slot = &*slot + &IntPoly::one();
    Ok(cat)
}

fn verify_identities(
    mutate: Option<&str>,
    fz: &dyn Factorizer,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> anyhow::Result<i32> {
    let owned;
    let cat = match mutate {
        Some(name) => match mutated_catalogue(name) {
            Ok(c) => {
                owned = c;
                &owned
            }
            Err(e) => {
                writeln!(err, "error: {e}")?;
                return Ok(EXIT_USAGE);
            }
        },
        None => Catalogue::standard(),
    };

    type Check<'a> = (&'static str, Box<dyn Fn() -> septic_core::Result<family::Verification> + 'a>);
    let checks: Vec<Check> = vec![
        ("h-factorization", Box::new(|| Ok(family::verify_h_factorization(cat)))),
        ("disc(g_t), t in [-10, 10]", Box::new(|| family::verify_disc_g(cat, -10..=10, fz))),
        ("disc(f_t), t in [-20, 20]", Box::new(|| family::verify_disc_f(cat, -20..=20))),
        ("bezout", Box::new(|| Ok(family::verify_bezout(cat)))),
        ("cyclotomic", Box::new(|| Ok(family::verify_cyclotomic_identity(cat)))),
        ("psi", Box::new(|| Ok(family::verify_psi_identity(cat)))),
        ("block polynomials U, V", Box::new(|| Ok(family::verify_block_polynomials(cat)))),
        ("psi repeated roots", Box::new(|| no_repeated_roots(&cat.psi))),
        ("7-adic class valuations", Box::new(|| class_table(cat))),
    ];

    let mut failed = false;
    for (name, check) in checks {
        match check() {
            Ok(Ok(())) => writeln!(out, "PASS {name}")?,
            Ok(Err(Mismatch(w))) => {
                failed = true;
                writeln!(out, "FAIL {name}: {w}")?;
            }
            Err(e) => {
                failed = true;
                writeln!(out, "FAIL {name}: {e}")?;
            }
        }
    }
    Ok(if failed { EXIT_VERIFY } else { EXIT_OK })
}

fn no_repeated_roots(p: &IntPoly) -> septic_core::Result<family::Verification> {
    Ok(if family::verify_no_repeated_roots(p, 4)? {
        Ok(())
    } else {
        Err(Mismatch("gcd(psi, psi^(k)) != 1 for some k <= 4".into()))
    })
}

const CLASS_EXPECTED: [(char, u32); 6] = [('E', 2), ('F', 1), ('G', 2), ('I', 3), ('J', 4), ('H', 5)];

fn class_table(cat: &Catalogue) -> septic_core::Result<family::Verification> {
    let table = family::seven_adic_class_table(cat)?;
    if let Some(((name, got), (_, want))) = table.iter().zip(CLASS_EXPECTED).find(|(a, b)| a.1 != b.1) {
        return Ok(Err(Mismatch(format!("v_7({name}) on t ≡ 2 is {got}, expected {want}"))));
    }
    for r in (0..7).filter(|&r| r != 2) {
        let v = family::residue_class_valuation(&cat.e, 7, r)?;
        if v != 0 {
            return Ok(Err(Mismatch(format!("v_7(E) on t ≡ {r} is {v}, expected 0"))));
        }
    }
    Ok(Ok(()))
}

fn valuations(q: u64, r: u64, t: Option<i64>, out: &mut dyn Write) -> anyhow::Result<i32> {
    let cat = Catalogue::standard();
    let polys = [('E', &cat.e), ('F', &cat.f), ('G', &cat.g), ('I', &cat.i), ('J', &cat.j), ('H', &cat.h)];
    let mut class = Vec::new();
    for (name, p) in polys {
        let v = family::residue_class_valuation(p, q, r)?;
        writeln!(out, "v_{q}({name}) on t ≡ {r} (mod {q}): {v}")?;
        class.push(v);
    }
    if let Some(t) = t {
        if q != 7 {
            return Err(Error::Domain("pointwise comparison is only available for q = 7".into()).into());
        }
        let in_class = t.rem_euclid(7) as u64 == r;
        for ((name, v), class_v) in family::seven_adic_pointwise(cat, t).into_iter().zip(class) {
            let shown = v.map_or("inf".to_string(), |v| v.to_string());
            let flag = in_class && v.is_none_or(|v| v > class_v);
            let note = if flag { "  (exceeds class valuation)" } else { "" };
            writeln!(out, "v_7({name}({t})) = {shown}{note}")?;
        }
    }
    Ok(EXIT_OK)
}

fn block(m: usize, r: usize, samples: usize, fz: &dyn Factorizer, out: &mut dyn Write) -> anyhow::Result<i32> {
    let mut cert = build_block(m, r, fz)?;
    let report = verify_block(&cert, samples, fz)?;
    cert.samples_verified = report.samples_verified;
    let small: Vec<_> = report
        .checks
        .iter()
        .filter_map(|c| {
            let rep = c.report.as_ref()?;
            Some(json!({
                "k": c.k.to_string(),
                "j": c.j,
                "t": c.t.to_string(),
                "omega_H": c.omega_h,
                "polya_rank": rep.polya_rank,
                "fifth_power_free": rep.fifth_power_free,
            }))
        })
        .collect();
    let doc = json!({
        "certificate": cert,
        "verification": {
            "samples_verified": cert.samples_verified,
            "divisibility": "pass",
            "rank_lower_bound": r,
            "conditional_on": "E(2k + j) fifth-power free",
            "fully_factored_samples": small,
        }
    });
    writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
    Ok(EXIT_OK)
}

fn decompose(t: i64, fz: &dyn Factorizer, out: &mut dyn Write) -> anyhow::Result<i32> {
    let d = powerfree_decomposition(t, fz)?;
    let doc = json!({
        "t": t.to_string(),
        "E_value": family::e_value(t).to_string(),
        "alpha": d.alpha,
        "A": d.a.to_string(),
        "B": d.b.to_string(),
        "C": d.c.to_string(),
        "D": d.d.to_string(),
    });
    debug_assert_eq!(BigInt::from(d.reconstruct()), family::e_value(t));
    writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
    Ok(EXIT_OK)
}
