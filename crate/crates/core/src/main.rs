use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use hecke::cycles::enumerate::{enumerate, in_rect, rect_radius2, Bound};
use hecke::cycles::holes::{add_overlap, default_primes, find_hole};
use hecke::field::poly;
use hecke::output::{to_csv, to_json, to_svg, View};
use hecke::{q5, verify, Context, CycInt, Error, QLambda, ZLambda};

#[derive(Parser)]
#[command(name = "hecke", version, about = "Hecke groups and their odd vanishing cycles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Svg,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the cyclotomic polynomial Φ_2q and the minimal polynomial of λ.
    Minpoly {
        #[arg(long)]
        q: u32,
    },
    /// Enumerate odd vanishing cycles in a disk, a rectangle, or up to an age.
    #[command(group(ArgGroup::new("bound").required(true).args(["radius2", "age", "rect"])))]
    Enumerate {
        #[arg(long)]
        q: u32,
        /// Squared radius, as an integer, decimal or fraction.
        #[arg(long)]
        radius2: Option<String>,
        #[arg(long)]
        age: Option<u32>,
        /// Width and height of a rectangle centred at 0, e.g. "12,8".
        #[arg(long)]
        rect: Option<String>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Bits of precision for decimal coordinates.
        #[arg(long, default_value_t = 53, value_parser = clap::value_parser!(u32).range(16..))]
        precision: u32,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Decide whether a + cη is an odd vanishing cycle.
    Member {
        #[arg(long)]
        q: u32,
        /// Coefficients of a in the basis 1, λ, λ², …, separated by ';'.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
    },
    /// λ-continued fraction of num/den by the nearest-integer algorithm.
    Cf {
        #[arg(long)]
        q: u32,
        #[arg(long, allow_hyphen_values = true)]
        num: String,
        #[arg(long, allow_hyphen_values = true)]
        den: String,
        #[arg(long, default_value_t = 1000)]
        max_steps: usize,
    },
    /// Write γ = a + cη (q = 5) as u·δ with u > 0 in Z[λ] and δ an odd vanishing cycle.
    Reduce5 {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
    },
    /// Certificate for a hole built from an N×N grid of primes (q = 3, 4, 6).
    Holes {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: Option<usize>,
        /// Rows separated by ';', entries by ',', e.g. "2,3;5,7".
        #[arg(long)]
        primes: Option<String>,
        /// Also shift the hole inside a hole of the second lattice (q = 4, 6).
        #[arg(long)]
        overlap: bool,
    },
    /// Check the group relations for one q.
    Relations {
        #[arg(long)]
        q: u32,
    },
    /// Run the self-check suites.
    Verify {
        /// Comma-separated list of q values.
        #[arg(long, default_value = "3,4,5,6,7,8,9,10")]
        q: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
}

/// Outcome of a command: success, negative answer, bad usage, or internal failure.
enum Failure {
    Negative,
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) | Error::Io(_) | Error::StepCapExceeded(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn context(q: u32) -> std::result::Result<Context, Failure> {
    Context::new(q).map_err(|e| Failure::Usage(e.to_string()))
}

fn parse_zl(ctx: &Context, s: &str) -> std::result::Result<ZLambda, Failure> {
    let coeffs = s
        .split(';')
        .map(|t| BigInt::from_str(t.trim()))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Failure::Usage(format!("cannot parse coefficients {s:?}")))?;
    Ok(ctx.zl_from_coeffs(&coeffs)?)
}

fn parse_cyc(ctx: &Context, a: &str, c: &str) -> std::result::Result<CycInt, Failure> {
    Ok(ctx.cyc(parse_zl(ctx, a)?, parse_zl(ctx, c)?))
}

/// Parses "25", "6.99" or "13/2".
fn parse_rational(s: &str) -> std::result::Result<BigRational, Failure> {
    let bad = || Failure::Usage(format!("cannot parse number {s:?}"));
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let digits = format!("{int}{frac}");
        let n = BigInt::from_str(&digits).map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(BigRational::new(n, d));
    }
    Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?))
}

fn emit(out: Option<&PathBuf>, text: &str) -> Outcome {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Minpoly { q } => {
            let ctx = context(q)?;
            println!("cyclotomic: {}", poly::to_string(ctx.phi2q(), "t"));
            println!("minimal: {}", poly::to_string(ctx.pmin(), "t"));
            Ok(())
        }
        Command::Enumerate {
            q,
            radius2,
            age,
            rect,
            format,
            out,
            precision,
            workers,
        } => {
            let ctx = context(q)?;
            let workers = workers.max(1);
            let (recs, view) = if let Some(s) = age {
                let recs = enumerate(&ctx, &Bound::Age(s), workers)?;
                let r2 = recs
                    .iter()
                    .map(|r| {
                        let (x, y) = ctx.cyc_to_f64(&r.point);
                        x * x + y * y
                    })
                    .fold(1.0f64, f64::max);
                let r = r2.sqrt();
                (recs, View { half_w: r, half_h: r })
            } else if let Some(r2) = radius2 {
                let r2 = parse_rational(&r2)?;
                if r2.is_negative() {
                    return Err(Failure::Usage("radius2 must be nonnegative".into()));
                }
                let bound = Bound::disk(r2.numer().clone(), r2.denom().clone());
                let recs = enumerate(&ctx, &bound, workers)?;
                (recs, View::disk(r2.numer(), r2.denom()))
            } else {
                let rect = rect.expect("clap requires one bound");
                let (w, h) = rect
                    .split_once(',')
                    .ok_or_else(|| Failure::Usage("rect must be W,H".into()))?;
                let (w, h) = (parse_rational(w)?, parse_rational(h)?);
                if !w.is_positive() || !h.is_positive() {
                    return Err(Failure::Usage("rect sides must be positive".into()));
                }
                let r2 = rect_radius2(&w, &h);
                let bound = Bound::disk(r2.numer().clone(), r2.denom().clone());
                let recs = in_rect(&ctx, enumerate(&ctx, &bound, workers)?, &w, &h);
                (recs, View::rect(&w, &h))
            };
            let text = match format {
                Format::Csv => to_csv(&ctx, &recs, precision)?,
                Format::Json => to_json(&ctx, &recs, precision)? + "\n",
                Format::Svg => to_svg(&ctx, &recs, view),
            };
            emit(out.as_ref(), &text)
        }
        Command::Member { q, a, c } => {
            let ctx = context(q)?;
            let x = parse_cyc(&ctx, &a, &c)?;
            let trace = ctx.membership(&x)?;
            println!("{}", trace.member);
            let qs: Vec<String> = trace.quotients.iter().map(|m| m.to_string()).collect();
            println!("quotients: [{}]", qs.join(", "));
            println!("reason: {}", trace.reason);
            if trace.member {
                println!("orbit: {}", ctx.orbit_label(&x)?);
                Ok(())
            } else {
                Err(Failure::Negative)
            }
        }
        Command::Cf {
            q,
            num,
            den,
            max_steps,
        } => {
            let ctx = context(q)?;
            let n = QLambda::from_integral(parse_zl(&ctx, &num)?);
            let d = QLambda::from_integral(parse_zl(&ctx, &den)?);
            let cf = ctx.pseudo_euclid(&n, &d, max_steps)?;
            if cf.terminated {
                if !ctx.cf_matches(&cf.terms, &n, &d) {
                    return Err(Failure::Internal("expansion does not evaluate back".into()));
                }
                println!("{}", cf.render());
                Ok(())
            } else {
                println!("undecided(max-steps)");
                Err(Failure::Negative)
            }
        }
        Command::Reduce5 { a, c } => {
            let ctx = context(5)?;
            let g = parse_cyc(&ctx, &a, &c)?;
            if g.is_zero() {
                eprintln!("error: γ = 0 has no decomposition");
                return Err(Failure::Negative);
            }
            let d = q5::decompose_q5(&ctx, &g)?;
            println!("{}", json_line(&reduce5_json(&g, &d)).trim_end());
            Ok(())
        }
        Command::Holes {
            q,
            n,
            primes,
            overlap,
        } => {
            let ctx = context(q)?;
            let grid = match (primes, n) {
                (Some(p), _) => parse_grid(&p)?,
                (None, Some(n)) if n > 0 => default_primes(n),
                _ => return Err(Failure::Usage("give --n or --primes".into())),
            };
            if let Some(n) = n {
                if grid.len() != n {
                    return Err(Failure::Usage(format!("expected a {n}×{n} grid of primes")));
                }
            }
            let mut cert = find_hole(&ctx, &grid)?;
            if overlap {
                add_overlap(&ctx, &mut cert)?;
            }
            println!("{}", json_line(&cert.to_json()).trim_end());
            let ok = cert.verified && cert.overlap.as_ref().is_none_or(|o| o.verified);
            if ok {
                Ok(())
            } else {
                Err(Failure::Negative)
            }
        }
        Command::Relations { q } => {
            let ctx = context(q)?;
            let report = ctx.relations_report();
            println!("q = {}, order of A1A2 = {}", report.q, report.q_tilde);
            for c in &report.checks {
                println!("{} {}", if c.holds { "PASS" } else { "FAIL" }, c.name);
            }
            if report.all_hold() {
                Ok(())
            } else {
                Err(Failure::Negative)
            }
        }
        Command::Verify { q, seed, workers } => {
            let qs = q
                .split(',')
                .map(|t| t.trim().parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Failure::Usage(format!("cannot parse q list {q:?}")))?;
            let results = verify::run(&qs, seed, workers.max(1))?;
            let failed = results.iter().filter(|r| !r.passed()).count();
            for r in &results {
                println!("{r}");
            }
            println!("{} suites, {} failed", results.len(), failed);
            if failed == 0 {
                Ok(())
            } else {
                Err(Failure::Negative)
            }
        }
    }
}

fn parse_grid(s: &str) -> std::result::Result<Vec<Vec<u64>>, Failure> {
    s.split(';')
        .map(|row| {
            row.split(',')
                .map(|t| t.trim().parse::<u64>())
                .collect::<std::result::Result<Vec<_>, _>>()
        })
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Failure::Usage(format!("cannot parse primes {s:?}")))
}

#[derive(Serialize)]
struct CycJson {
    a: String,
    c: String,
}

#[derive(Serialize)]
struct StepJson {
    k: u32,
    n: i64,
    norm: String,
}

#[derive(Serialize)]
struct Reduce5Json {
    gamma: CycJson,
    u: String,
    u_text: String,
    delta: CycJson,
    delta_text: String,
    unit_index: u32,
    word: String,
    trace: Vec<StepJson>,
}

fn cyc_json(x: &CycInt) -> CycJson {
    CycJson {
        a: x.a.to_coeff_string(),
        c: x.c.to_coeff_string(),
    }
}

fn reduce5_json(g: &CycInt, d: &q5::Decomposition) -> Reduce5Json {
    Reduce5Json {
        gamma: cyc_json(g),
        u: d.u.to_coeff_string(),
        u_text: d.u.to_string(),
        delta: cyc_json(&d.delta),
        delta_text: d.delta.to_string(),
        unit_index: d.unit_index,
        word: d.word.to_string(),
        trace: d
            .trace
            .iter()
            .map(|s| StepJson {
                k: s.k,
                n: s.n,
                norm: s.norm.to_string(),
            })
            .collect(),
    }
}
