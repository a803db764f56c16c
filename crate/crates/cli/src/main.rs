use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use qfleck_core::flecksums::{evaluate, factor_report, factor_report_cyc, predicted_exponents, SumSpec, XPoly};
use qfleck_core::qbinomial::qbinom_deriv;
use qfleck_core::verify::{run_check, sharpness_scan, table1_rows, CheckOptions, NRange, SweepGrid, CHECK_IDS};
use qfleck_core::{Error, Poly, RingCtx};

mod range;

#[derive(Parser)]
#[command(name = "qfleck", version, about = "Alternating q-binomial sums and their cyclotomic factors")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Run full grids: no case cap, larger scan bounds.
    #[arg(long, global = true)]
    exhaustive: bool,
    /// Worker threads for sweeps (defaults to all cores).
    #[arg(long, global = true, env = "QFLECK_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Gaussian binomial [n, m]_q or its derivative.
    Qbinom {
        n: usize,
        m: usize,
        #[arg(long, default_value_t = 0)]
        deriv: usize,
    },
    /// Evaluate the full sum, or a class sum when --j is given.
    Sum {
        #[command(flatten)]
        spec: SpecArgs,
        /// Print the factorization instead of the expanded polynomial.
        #[arg(long)]
        factored: bool,
    },
    /// Factor a polynomial in q into sign, q-power, cyclotomic part and residual.
    Factor {
        poly: String,
        /// Coefficient ring Z[zeta_2c] for inputs containing z.
        #[arg(long, default_value_t = 1)]
        c: usize,
    },
    /// Run a named check and exit non-zero on failure.
    Verify {
        id: String,
        #[command(flatten)]
        grid: Box<GridArgs>,
    },
    /// Recompute the tabulated class sums and compare their residuals.
    Table1,
    /// Search for classes whose cyclotomic multiplicities match the prediction exactly.
    Sharpness {
        #[arg(long, default_value_t = 7)]
        p_max: usize,
        #[arg(long)]
        n_max: Option<usize>,
    },
}

#[derive(Args)]
struct SpecArgs {
    #[arg(long)]
    c: usize,
    #[arg(long)]
    j: Option<usize>,
    #[arg(long, default_value_t = 0)]
    l: usize,
    #[arg(long, default_value_t = 0)]
    z: usize,
    #[arg(long)]
    n: usize,
    /// Weight polynomial in x, e.g. "x^2+1" or "(1+z)*x".
    #[arg(long = "P", default_value = "1")]
    p: String,
}

#[derive(Args)]
struct GridArgs {
    #[arg(long, value_parser = range::parse_list)]
    c: Option<range::List>,
    #[arg(long, value_parser = range::parse_list)]
    k: Option<range::List>,
    #[arg(long, value_parser = range::parse_list)]
    l: Option<range::List>,
    #[arg(long, value_parser = range::parse_list)]
    d: Option<range::List>,
    #[arg(long, value_parser = range::parse_list)]
    z: Option<range::List>,
    #[arg(long, value_parser = range::parse_list)]
    deg_p: Option<range::List>,
    #[arg(long, value_parser = range::parse_list)]
    j: Option<range::List>,
    /// Explicit n values instead of threshold-relative ones.
    #[arg(long, value_parser = range::parse_list)]
    n: Option<range::List>,
    /// How far past each threshold to sweep.
    #[arg(long)]
    extra: Option<usize>,
    #[arg(long)]
    n_cap: Option<usize>,
    /// Fixed weight polynomial in place of seeded random ones.
    #[arg(long = "P")]
    p: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    case_cap: Option<usize>,
    /// Upper n for the non-grid checks.
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    p_max: Option<usize>,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::InvalidArgument(_) | Error::CtxMismatch { .. } => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Check(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Qbinom { n, m, deriv } => {
            let p = qbinom_deriv(*n, *m as i64, *deriv);
            if cli.json {
                println!("{}", json!({"n": n, "m": m, "deriv": deriv, "poly": p}));
            } else {
                println!("{p}");
            }
            Ok(())
        }
        Command::Sum { spec, factored } => cmd_sum(cli, spec, *factored),
        Command::Factor { poly, c } => cmd_factor(cli, poly, *c),
        Command::Verify { id, grid } => cmd_verify(cli, id, grid),
        Command::Table1 => cmd_table1(cli),
        Command::Sharpness { p_max, n_max } => {
            let n_max = n_max.unwrap_or(if cli.exhaustive { 100 } else { 50 });
            let (report, rows) = sharpness_scan(*p_max, n_max);
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&json!({"report": report, "rows": rows})).unwrap());
            } else {
                for row in &rows {
                    println!("p={} n={} witnesses={:?}", row.p, row.n, row.witnesses);
                }
                print!("{report}");
            }
            verdict(report.passed(), "sharpness scan found rows without a witness")
        }
    }
}

fn verdict(ok: bool, msg: &str) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(Failure::Check(msg.to_string()))
    }
}

fn cmd_sum(cli: &Cli, args: &SpecArgs, factored: bool) -> Outcome {
    if args.c == 0 {
        return Err(Failure::Usage("--c must be positive".into()));
    }
    let ctx = RingCtx::new(args.c);
    let mut spec = SumSpec::new(XPoly::parse(&ctx, &args.p)?, args.l, args.z, args.n);
    if let Some(j) = args.j {
        spec = spec.with_class(j)?;
    }
    let sum = evaluate(&spec)?;
    let predicted = predicted_exponents(args.c, args.l, spec.deg_p(), args.n);
    let report = if factored && !sum.is_zero() { Some(factor_report_cyc(&sum, &predicted)?) } else { None };
    if cli.json {
        println!("{}", json!({"spec": spec, "sum": sum, "factored": report}));
    } else if let Some(r) = report {
        println!("{r}");
    } else {
        println!("{sum}");
    }
    Ok(())
}

fn cmd_factor(cli: &Cli, text: &str, c: usize) -> Outcome {
    if c == 0 {
        return Err(Failure::Usage("--c must be positive".into()));
    }
    let none = Default::default();
    let out = if text.contains('z') || c > 1 {
        let p = RingCtx::new(c).parse_cpoly(text)?;
        let r = factor_report_cyc(&p, &none)?;
        (serde_json::to_value(&r).unwrap(), r.to_string())
    } else {
        let p: Poly = text.parse()?;
        let r = factor_report(&p, &none)?;
        (serde_json::to_value(&r).unwrap(), r.to_string())
    };
    if cli.json {
        println!("{}", out.0);
    } else {
        println!("{}", out.1);
    }
    Ok(())
}

fn build_grid(cli: &Cli, args: &GridArgs) -> SweepGrid {
    let mut grid = SweepGrid::default();
    let set = |slot: &mut Vec<usize>, v: &Option<range::List>| {
        if let Some(v) = v {
            *slot = v.0.clone();
        }
    };
    set(&mut grid.c, &args.c);
    set(&mut grid.k, &args.k);
    set(&mut grid.l, &args.l);
    set(&mut grid.d, &args.d);
    set(&mut grid.z, &args.z);
    set(&mut grid.deg_p, &args.deg_p);
    grid.j = args.j.as_ref().map(|j| j.0.clone());
    grid.n = match (&args.n, &grid.n) {
        (Some(ns), _) => NRange::Explicit(ns.0.clone()),
        (None, NRange::Threshold { extra, cap }) => {
            NRange::Threshold { extra: args.extra.unwrap_or(*extra), cap: args.n_cap.unwrap_or(*cap) }
        }
        (None, other) => other.clone(),
    };
    grid.p_override = args.p.clone();
    if let Some(seed) = args.seed {
        grid.seed = seed;
    }
    grid.case_cap = if cli.exhaustive { None } else { args.case_cap };
    grid
}

fn cmd_verify(cli: &Cli, id: &str, args: &GridArgs) -> Outcome {
    if !CHECK_IDS.contains(&id) {
        return Err(Failure::Usage(format!("unknown check '{id}'; expected one of: {}", CHECK_IDS.join(", "))));
    }
    if args.c.as_ref().is_some_and(|c| c.0.contains(&0)) {
        return Err(Failure::Usage("--c values must be positive".into()));
    }
    if args.k.as_ref().is_some_and(|k| k.0.contains(&0)) {
        return Err(Failure::Usage("--k values must be positive".into()));
    }
    let grid = build_grid(cli, args);
    if let Some(p) = &grid.p_override {
        for &c in &grid.c {
            XPoly::parse(&RingCtx::new(c), p)?;
        }
    }
    let opts = CheckOptions { grid, n_max: args.n_max, p_max: args.p_max, exhaustive: cli.exhaustive };
    let report = run_check(id, &opts).expect("id validated above");
    if cli.json {
        println!("{}", report.to_json());
    } else {
        print!("{report}");
    }
    verdict(report.passed(), &format!("{id}: {} failure(s)", report.failures.len()))
}

fn cmd_table1(cli: &Cli) -> Outcome {
    let rows = table1_rows()?;
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&rows).unwrap());
    } else {
        for (i, row) in rows.iter().enumerate() {
            let verdict = if row.matches { "MATCH" } else { "MISMATCH" };
            let r = &row.report;
            let mut cyclo = vec![format!("{:+}", r.unit)];
            if r.qpower > 0 {
                cyclo.push(format!("q^{}", r.qpower));
            }
            cyclo.extend(r.cyclo_exponents.iter().map(|(m, e)| match e {
                1 => format!("Phi_{m}"),
                _ => format!("Phi_{m}^{e}"),
            }));
            println!("row {}: c={} j={} n={}", i + 1, row.spec.c(), row.spec.class_j.unwrap_or(0), row.spec.n);
            println!("  cyclotomic part: {}", cyclo.join(" * "));
            println!("  residual: {}", r.residual);
            if !row.matches {
                println!("  expected: {}", row.golden);
            }
            println!("  {verdict}");
        }
    }
    verdict(rows.iter().all(|r| r.matches), "table residuals do not match")
}
