use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use catalan_hyperlab::elliptic::{ellipe_eval, ellipk_eval, Modulus};
use catalan_hyperlab::identities::{lookup, registry, registry_by_id, Param, Verifier};
use catalan_hyperlab::integrals::{CatalanMethod, Integrals};
use catalan_hyperlab::quadrature::MAX_LEVEL_LIMIT;
use catalan_hyperlab::report::{catalog_json, format_number, Num, Report};
use catalan_hyperlab::sfcore::{pfq_with_caps, PfqParams};
use catalan_hyperlab::{Error, EvalResult, Settings};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "catalan-hyperlab", version, about = "Catalan's constant, elliptic integrals and hypergeometric identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Knobs {
    /// Term cap for direct series
    #[arg(long)]
    max_terms: Option<usize>,
    /// Maximum tanh-sinh level (at most 12)
    #[arg(long)]
    quad_level: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate K, E, pfq, A, B, C, D or G
    Eval {
        /// One of K, E, pfq, A, B, C, D, G
        name: String,
        /// Arguments; pfq takes `p q a1..ap b1..bq x`
        #[arg(allow_negative_numbers = true)]
        args: Vec<f64>,
        /// Route for G
        #[arg(long)]
        method: Option<String>,
        #[command(flatten)]
        knobs: Knobs,
        #[arg(long)]
        json: bool,
    },
    /// Verify identities
    Verify {
        ids: Vec<String>,
        #[arg(long, conflicts_with = "ids")]
        all: bool,
        /// Tolerance for every selected identity
        #[arg(long)]
        tol: Option<f64>,
        /// Replace the s-grid of parametric sweeps, `lo:hi:step`
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        #[command(flatten)]
        knobs: Knobs,
        #[arg(long)]
        json: bool,
    },
    /// List every identity
    Catalog {
        #[arg(long)]
        json: bool,
    },
}

struct Usage(String);

fn settings(knobs: Knobs) -> Result<Settings, Usage> {
    let mut st = Settings::default();
    if let Some(m) = knobs.max_terms {
        if m == 0 {
            return Err(Usage("--max-terms must be positive".into()));
        }
        st.max_terms = m;
    }
    if let Some(level) = knobs.quad_level {
        if level > MAX_LEVEL_LIMIT {
            return Err(Usage(format!("--quad-level must be at most {MAX_LEVEL_LIMIT}")));
        }
        st.quad_level = level;
    }
    Ok(st)
}

fn parse_grid(spec: &str) -> Result<Vec<f64>, Usage> {
    let bad = || Usage(format!("--grid expects lo:hi:step, got `{spec}`"));
    let parts: Vec<f64> = spec
        .split(':')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| bad())?;
    let [lo, hi, step] = parts[..] else {
        return Err(bad());
    };
    if !(step > 0.0 && lo <= hi && lo.is_finite() && hi.is_finite()) {
        return Err(bad());
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    if count > 10_000 {
        return Err(Usage("--grid has more than 10000 points".into()));
    }
    Ok((0..count)
        .map(|i| {
            let v = lo + i as f64 * step;
            (v * 1e12).round() / 1e12
        })
        .collect())
}

fn run_eval(
    name: &str,
    args: &[f64],
    method: Option<&str>,
    st: Settings,
) -> Result<Result<EvalResult, Error>, Usage> {
    let arity = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(Usage(format!("{name} takes {n} argument(s), got {}", args.len())))
        }
    };
    if method.is_some() && name != "G" {
        return Err(Usage("--method applies to G only".into()));
    }
    let ig = Integrals::new(st);
    Ok(match name {
        "K" | "E" => {
            arity(1)?;
            Modulus::new(args[0]).and_then(|m| if name == "K" { ellipk_eval(m) } else { ellipe_eval(m) })
        }
        "A" | "B" | "C" | "D" => {
            arity(1)?;
            let s = args[0];
            match name {
                "A" => ig.a(s),
                "B" => ig.b(s),
                "C" => ig.c(s),
                _ => ig.d(s),
            }
        }
        "G" => {
            arity(0)?;
            let m = match method {
                Some(m) => m.parse::<CatalanMethod>().map_err(|e| Usage(e.to_string()))?,
                None => CatalanMethod::BetaSeries,
            };
            ig.catalan(m)
        }
        "pfq" => {
            let counts = |i: usize| -> Result<usize, Usage> {
                args.get(i)
                    .filter(|v| v.fract() == 0.0 && **v >= 0.0)
                    .map(|v| *v as usize)
                    .ok_or_else(|| Usage("pfq takes `p q a1..ap b1..bq x`".into()))
            };
            let p = counts(0)?;
            let q = counts(1)?;
            if args.len() != 2 + p + q + 1 {
                return Err(Usage(format!("pfq with p={p}, q={q} takes {} numbers", 3 + p + q)));
            }
            let upper = args[2..2 + p].to_vec();
            let lower = args[2 + p..2 + p + q].to_vec();
            let x = args[2 + p + q];
            PfqParams::new(upper, lower, x)
                .and_then(|params| pfq_with_caps(&params, st.series_tol, st.max_terms, st.accel_cap))
        }
        other => return Err(Usage(format!("unknown function `{other}`; expected K, E, pfq, A, B, C, D or G"))),
    })
}

fn cmd_eval(
    name: &str,
    args: &[f64],
    method: Option<&str>,
    knobs: Knobs,
    as_json: bool,
) -> Result<u8, Usage> {
    let st = settings(knobs)?;
    match run_eval(name, args, method, st)? {
        Ok(r) => {
            if as_json {
                let doc = json!({
                    "name": name,
                    "args": args.iter().map(|a| format_number(*a)).collect::<Vec<_>>(),
                    "value": Num::new(r.value),
                    "err_estimate": Num::new(r.err_estimate),
                    "effort": r.effort,
                    "converged": r.converged,
                    "method": r.method,
                });
                println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
            } else {
                let shown: Vec<String> = args.iter().map(|a| format_number(*a)).collect();
                println!(
                    "{name}({}) = {}  err {}  [{}, effort {}]",
                    shown.join(", "),
                    format_number(r.value),
                    format_number(r.err_estimate),
                    r.method,
                    r.effort
                );
            }
            Ok(0)
        }
        Err(e) => {
            eprintln!("error: {e}");
            Ok(EXIT_FAIL)
        }
    }
}

fn cmd_verify(
    ids: &[String],
    all: bool,
    tol: Option<f64>,
    grid: Option<&str>,
    knobs: Knobs,
    as_json: bool,
) -> Result<u8, Usage> {
    let st = settings(knobs)?;
    if let Some(t) = tol {
        if !(t > 0.0) {
            return Err(Usage("--tol must be positive".into()));
        }
    }
    let grid = grid.map(parse_grid).transpose()?;
    let selected = if all {
        registry_by_id()
    } else if ids.is_empty() {
        return Err(Usage("give identity ids or --all".into()));
    } else {
        let mut chosen = Vec::new();
        for id in ids {
            match lookup(id) {
                Ok(identity) => chosen.push(identity),
                Err(_) => {
                    let valid: Vec<String> = registry().into_iter().map(|i| i.id).collect();
                    return Err(Usage(format!("unknown identity `{id}`; valid ids: {}", valid.join(", "))));
                }
            }
        }
        chosen
    };
    let plan: Vec<_> = selected
        .into_iter()
        .map(|identity| {
            let points = match (&grid, identity.sweep) {
                (Some(g), true) => g.iter().map(|&s| Param::S(s)).collect(),
                _ => identity.points.clone(),
            };
            let t = tol.unwrap_or(identity.tol);
            (identity, points, t)
        })
        .collect();

    let start = Instant::now();
    let outcomes = Verifier::new(st).run(&plan);
    let report = Report::new(&outcomes, start.elapsed().as_secs_f64());

    let mut out = String::new();
    if as_json {
        out.push_str(&report.to_json());
        out.push('\n');
    } else {
        out.push_str(&format!(
            "{:<24} {:<22} {:>22} {:>10}  {}\n",
            "id", "point", "residual", "tol", "result"
        ));
        for r in &report.records {
            out.push_str(&format!(
                "{:<24} {:<22} {:>22} {:>10}  {}\n",
                r.id,
                r.param,
                format_number(r.residual()),
                r.tol.to_string(),
                if r.pass { "pass" } else { "FAIL" }
            ));
            if let Some(d) = &r.diagnostics {
                out.push_str(&format!("    {d}\n"));
            }
        }
        let s = &report.summary;
        out.push_str(&format!(
            "\n{} identities, {} passed, {} failed ({} points, worst residual {}, {} s)\n",
            s.total, s.passed, s.failed, s.records, s.worst_residual, s.wallclock
        ));
    }
    print!("{out}");
    Ok(if report.all_passed() { 0 } else { EXIT_FAIL })
}

fn cmd_catalog(as_json: bool) -> u8 {
    let reg = registry();
    if as_json {
        println!("{}", catalog_json());
    } else {
        let mut out = String::new();
        for i in &reg {
            out.push_str(&format!("{:<24} {}  [{}]\n", i.id, i.description, i.citation));
        }
        print!("{out}");
    }
    0
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Eval {
            name,
            args,
            method,
            knobs,
            json,
        } => cmd_eval(name, args, method.as_deref(), *knobs, *json),
        Command::Verify {
            ids,
            all,
            tol,
            grid,
            knobs,
            json,
        } => cmd_verify(ids, *all, *tol, grid.as_deref(), *knobs, *json),
        Command::Catalog { json } => Ok(cmd_catalog(*json)),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
