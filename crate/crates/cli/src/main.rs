use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;
use tilecohom_core::homalg::{beta_matrix, smith, IntMatrix};
use tilecohom_core::pointorbits::build_tables;
use tilecohom_core::report::{compute_with, line_orbits, LineSource};
use tilecohom_core::selftest::run_all;
use tilecohom_core::window::{build_window, enumerate_cubes, verify_counts};
use tilecohom_core::{Error, GammaParam, QuadRat};

const EXIT_PARSE: u8 = 2;
const EXIT_CONSISTENCY: u8 = 3;
const LARGE_DENOMINATOR: u64 = 1_000_000;

/// Exact cohomology of generalized dodecagonal cut-and-project tilings.
#[derive(Parser, Debug)]
#[command(name = "tilecohom", version, arg_required_else_help = true)]
struct Cli {
    /// Shift γ as "<q>,<q>", each q like 1/2, sqrt3/3 or 1/7+sqrt3/11
    #[arg(long, global = true, default_value = "0,0", allow_hyphen_values = true)]
    gamma: String,
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Print only the result line, no warnings
    #[arg(long, global = true)]
    quiet: bool,
    /// Run the acceptance checks and exit
    #[arg(long)]
    selftest: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full pipeline: line orbits, point classes, ranks
    Report {
        /// Line source: candidates (default) or sliced
        #[arg(long, default_value = "candidates")]
        lines: String,
    },
    /// Number of 1-singularity orbits and their representatives
    L1 {
        #[arg(long, default_value = "candidates")]
        lines: String,
    },
    /// Intersection parameters and line types
    Tables {
        #[arg(long, default_value = "candidates")]
        lines: String,
    },
    /// Smith normal form of β
    Smith,
    /// Window census
    VerifyWindow {
        /// Include vertices and cubes in the JSON output
        #[arg(long)]
        dump: bool,
    },
}

enum Failure {
    Parse(String),
    Consistency(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_parse() {
            Failure::Parse(e.to_string())
        } else {
            Failure::Consistency(e.to_string())
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = if cli.selftest {
        selftest(&cli)
    } else {
        match &cli.command {
            Some(cmd) => dispatch(&cli, cmd),
            None => Err(Failure::Parse("no subcommand given".into())),
        }
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Parse(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_PARSE)
        }
        Err(Failure::Consistency(m)) => {
            eprintln!("consistency failure: {m}");
            ExitCode::from(EXIT_CONSISTENCY)
        }
    }
}

fn dispatch(cli: &Cli, cmd: &Command) -> Outcome {
    match cmd {
        Command::Report { lines } => report(cli, lines.parse()?),
        Command::L1 { lines } => l1(cli, lines.parse()?),
        Command::Tables { lines } => tables(cli, lines.parse()?),
        Command::Smith => smith_cmd(cli),
        Command::VerifyWindow { dump } => verify_window(cli, *dump),
    }
}

fn gamma(cli: &Cli) -> Result<(QuadRat, QuadRat), Failure> {
    let (g1, g2) = GammaParam::parse(&cli.gamma)?;
    if !cli.quiet {
        let limit = LARGE_DENOMINATOR.into();
        if g1.max_denominator() > limit || g2.max_denominator() > limit {
            eprintln!("warning: denominators above 10^6; exact arithmetic may be slow");
        }
    }
    Ok((g1, g2))
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("JSON value serializes"));
}

fn report(cli: &Cli, source: LineSource) -> Outcome {
    let (g1, g2) = gamma(cli)?;
    let rep = compute_with(&g1, &g2, source)?;
    if cli.json {
        println!("{}", rep.to_json());
    } else if cli.quiet {
        println!("{}", rep.summary_row());
    } else {
        print!("{}", rep.render_text());
    }
    if rep.consistent() {
        Ok(())
    } else {
        Err(Failure::Consistency(format!(
            "counts depend on the choice of orbit representatives ({} alternatives differ)",
            rep.representatives.mismatches.len()
        )))
    }
}

fn l1(cli: &Cli, source: LineSource) -> Outcome {
    let (g1, g2) = gamma(cli)?;
    let g = GammaParam::reduce(&g1, &g2);
    let orbits = line_orbits(&g, source)?;
    if cli.json {
        let list: Vec<_> = orbits
            .orbits
            .iter()
            .map(|o| json!({"direction": o.direction, "representative": o.representative.anchor.to_string(), "members": o.members.len()}))
            .collect();
        print_json(&json!({
            "gamma": [g.g1.to_string(), g.g2.to_string()],
            "line_source": source.to_string(),
            "l1": orbits.l1,
            "per_direction": orbits.per_direction,
            "orbits": list,
        }));
        return Ok(());
    }
    println!("L1 = {}", orbits.l1);
    if !cli.quiet {
        let per: Vec<String> = orbits.per_direction.iter().map(|d| d.to_string()).collect();
        println!("per direction {}", per.join(" "));
        for o in &orbits.orbits {
            println!("  {}   ({} lines)", o.representative, o.members.len());
        }
    }
    Ok(())
}

fn tables(cli: &Cli, source: LineSource) -> Outcome {
    let (g1, g2) = gamma(cli)?;
    let g = GammaParam::reduce(&g1, &g2);
    let orbits = line_orbits(&g, source)?;
    let t = build_tables(&orbits)?;
    if cli.json {
        print_json(&serde_json::to_value(&t).expect("tables serialize"));
        return Ok(());
    }
    for line in &t.lines {
        println!(
            "x^{} through {}: L0α = {}, profile {:?}",
            line.direction, line.anchor, line.l0, line.profile
        );
        if !cli.quiet {
            let lambdas: Vec<String> = line.lambdas.iter().map(|l| l.to_string()).collect();
            println!("  λ mod G: {}", lambdas.join(", "));
        }
    }
    println!("ΣL0α = {}, L0 = {}, e = {}", t.sum_l0_alpha, t.l0, t.e);
    Ok(())
}

fn matrix_rows(m: &IntMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m[(i, j)].to_string()).collect())
        .collect()
}

fn smith_cmd(cli: &Cli) -> Outcome {
    let beta = beta_matrix();
    let s = smith(&beta);
    let factors: Vec<String> = s.factors.iter().map(|f| f.to_string()).collect();
    if s.u.mul(&beta).mul(&s.v) != s.diagonal(beta.rows(), beta.cols()) {
        return Err(Failure::Consistency("U·β·V is not the Smith diagonal".into()));
    }
    if cli.json {
        print_json(&json!({
            "beta": matrix_rows(&beta),
            "factors": factors,
            "rank": s.rank(),
            "u": matrix_rows(&s.u),
            "v": matrix_rows(&s.v),
        }));
    } else {
        if !cli.quiet {
            println!("β =\n{beta}");
        }
        println!("invariant factors {}; rank {}", factors.join(","), s.rank());
    }
    Ok(())
}

fn verify_window(cli: &Cli, dump: bool) -> Outcome {
    let w = build_window()?;
    let cubes = enumerate_cubes(&w)?;
    let rep = verify_counts(&w, &cubes);
    if cli.json {
        let mut v = serde_json::to_value(&rep).expect("report serializes");
        if dump {
            v["window"] = serde_json::to_value(&w).expect("window serializes");
            v["cube_list"] = serde_json::to_value(&cubes).expect("cubes serialize");
        }
        print_json(&v);
    } else if cli.quiet {
        println!("{}", if rep.ok() { "ok" } else { "MISMATCH" });
    } else {
        print!("{rep}");
    }
    if rep.ok() {
        Ok(())
    } else {
        Err(Failure::Consistency(rep.mismatches.join("; ")))
    }
}

fn selftest(cli: &Cli) -> Outcome {
    let results = run_all();
    let failed = results.iter().filter(|r| !r.pass).count();
    if cli.json {
        print_json(&serde_json::to_value(&results).expect("results serialize"));
    } else {
        if !cli.quiet {
            for r in &results {
                println!("{r}");
            }
        }
        println!("{} passed, {failed} failed", results.len() - failed);
    }
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Consistency(format!("{failed} acceptance criteria fail")))
    }
}
