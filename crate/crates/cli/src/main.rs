use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use latsum::closedform::{self, ConjectureReport, ScanOptions};
use latsum::dp::{crosscheck, SumTable};
use latsum::oracle::{brute_quantity, Quantity, DEFAULT_LIMIT};
use latsum::recguess::{self, GuessOptions, RecurrenceCandidate, DEFAULT_GUARD};
use latsum::record::ValueRecord;
use latsum::weights::{Bcmv, Form};
use latsum::weights::WeightSystem;
use latsum::{BigRat, Error, Exec, RatFunc};

/// Exact lattice sums with Markovian weights.
#[derive(Parser, Debug)]
#[command(name = "latsum", version)]
struct Cli {
    /// Write results here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Run on the current thread only.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Brute-force one quantity by enumerating chains.
    Oracle {
        #[arg(long)]
        p: usize,
        #[command(flatten)]
        sys: System,
        #[arg(long)]
        quantity: Quantity,
        /// Largest p the enumeration accepts.
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: usize,
    },
    /// Quadratic-time values for p = 1..pmax.
    Dp {
        #[arg(long)]
        pmax: usize,
        #[command(flatten)]
        sys: System,
        #[arg(long)]
        quantity: Quantity,
    },
    /// Compare the oracle with the quadratic engine on all four quantities.
    Crosscheck {
        #[arg(long)]
        pmax: usize,
        #[command(flatten)]
        sys: System,
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: usize,
    },
    /// Check a closed form or conjecture over a range of p.
    Verify {
        check: Target,
        #[arg(long)]
        pmax: usize,
        /// Report every violation instead of stopping at the first.
        #[arg(long)]
        keep_going: bool,
        /// Weight form used by closed-b.
        #[arg(long, value_enum, default_value_t = FormArg::Reduced)]
        form: FormArg,
    },
    /// Guess a linear recurrence with polynomial coefficients.
    Guess {
        /// One rational per line.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        max_order: usize,
        #[arg(long)]
        max_degree: usize,
        #[arg(long, default_value_t = DEFAULT_GUARD)]
        guard: usize,
    },
    /// Run a recurrence forward from seed values.
    Extend {
        /// Candidate JSON as printed by `guess`.
        #[arg(long)]
        candidate: PathBuf,
        #[arg(long)]
        seed: PathBuf,
        #[arg(long)]
        upto: usize,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct XMode {
    /// Evaluate at this rational value of x.
    #[arg(long, value_name = "X")]
    x: Option<BigRat>,
    /// Keep x as a variable.
    #[arg(long)]
    symbolic: bool,
}

#[derive(Args, Debug)]
struct System {
    #[command(flatten)]
    mode: XMode,
    #[arg(long, value_enum, default_value_t = WeightsArg::Bcmv)]
    weights: WeightsArg,
    #[arg(long, value_enum, default_value_t = FormArg::Reduced)]
    form: FormArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum WeightsArg {
    Bcmv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormArg {
    Raw,
    Reduced,
}

impl From<FormArg> for Form {
    fn from(f: FormArg) -> Form {
        match f {
            FormArg::Raw => Form::Raw,
            FormArg::Reduced => Form::Reduced,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Target {
    Conj3,
    Conj4,
    ClosedA,
    ClosedB,
    Rec5,
}

/// Failure modes that are not library errors.
enum Failure {
    /// A check ran and found a violation.
    Violation,
    /// Bad input or a limit.
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Out = Box<dyn Write>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    let mut out: Out = match &cli.output {
        Some(path) => Box::new(BufWriter::new(
            fs::File::create(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let result = dispatch(cli.command, exec, &mut out);
    out.flush()?;
    result
}

// Binds `$ws` to the requested weight system, symbolic or fixed, and
// expands `$body` once for each.
macro_rules! with_system {
    ($sys:expr, $pmax:expr, |$ws:ident| $body:expr) => {{
        let sys: &System = $sys;
        let WeightsArg::Bcmv = sys.weights;
        let form = Form::from(sys.form);
        match &sys.mode.x {
            None => {
                let $ws = &Bcmv::<RatFunc>::symbolic(form);
                $body
            }
            Some(x0) => {
                reject_index_pole(x0, $pmax)?;
                let $ws = &Bcmv::<BigRat>::fixed(x0.clone(), form);
                $body
            }
        }
    }};
}

fn dispatch(command: Command, exec: Exec, out: &mut Out) -> Result<(), Failure> {
    match command {
        Command::Oracle { p, sys, quantity, limit } => {
            if p == 0 {
                return Err(Failure::Usage("--p must be at least 1".into()));
            }
            with_system!(&sys, p, |ws| {
                let v = brute_quantity(ws, p, quantity, limit, exec)?;
                writeln!(out, "{}", ValueRecord::new(p, quantity, &ws.mode(), &v).to_line())?;
                Ok(())
            })
        }
        Command::Dp { pmax, sys, quantity } => {
            if pmax == 0 {
                return Err(Failure::Usage("--pmax must be at least 1".into()));
            }
            with_system!(&sys, pmax, |ws| {
                let table = SumTable::compute(ws, pmax, exec)?;
                for r in table.records(quantity) {
                    writeln!(out, "{}", r.to_line())?;
                }
                Ok(())
            })
        }
        Command::Crosscheck { pmax, sys, limit } => {
            if pmax == 0 {
                return Err(Failure::Usage("--pmax must be at least 1".into()));
            }
            if pmax > limit {
                return Err(Failure::Usage(format!(
                    "--pmax {pmax} exceeds the enumeration limit {limit}; pass --limit to raise it"
                )));
            }
            with_system!(&sys, pmax, |ws| {
                let rows = crosscheck(ws, ws, pmax, limit, exec)?;
                let mismatches = rows.iter().filter(|r| !r.agree).count();
                for r in &rows {
                    writeln!(out, "{}", json(r))?;
                }
                let summary = serde_json::json!({
                    "name": "crosscheck",
                    "pmax": pmax,
                    "status": if mismatches == 0 { "pass" } else { "fail" },
                    "mismatches": mismatches,
                });
                writeln!(out, "{summary}")?;
                if mismatches > 0 {
                    return Err(Failure::Violation);
                }
                Ok(())
            })
        }
        Command::Verify { check, pmax, keep_going, form } => {
            let opts = ScanOptions { keep_going, exec, progress: Some(progress) };
            let report = match check {
                Target::Conj3 | Target::Conj4 if pmax < 2 => {
                    return Err(Failure::Usage("--pmax must be at least 2".into()));
                }
                _ if pmax == 0 => return Err(Failure::Usage("--pmax must be at least 1".into())),
                Target::Conj3 => closedform::verify_conj3(pmax, opts)?,
                Target::Conj4 => closedform::verify_conj4(pmax, opts)?,
                Target::ClosedA => closedform::verify_closed_a(pmax, opts)?,
                Target::ClosedB => closedform::verify_closed_b(pmax, form.into(), opts)?,
                Target::Rec5 => closedform::check_recurrence5(pmax, opts)?,
            };
            write_report(out, &report)
        }
        Command::Guess { input, max_order, max_degree, guard } => {
            let seq = read_sequence(&input)?;
            let opts = GuessOptions::new(max_order, max_degree).with_guard(guard);
            match recguess::guess(&seq, opts)? {
                Some(g) => {
                    writeln!(out, "{}", json(&g))?;
                    Ok(())
                }
                None => {
                    writeln!(out, "null")?;
                    eprintln!("no recurrence with order <= {max_order} and degree <= {max_degree} fits");
                    Err(Failure::Violation)
                }
            }
        }
        Command::Extend { candidate, seed, upto } => {
            let text = read_text(&candidate)?;
            let cand: RecurrenceCandidate = serde_json::from_str(&text)
                .map_err(|e| Failure::Usage(format!("{}: {e}", candidate.display())))?;
            let seed = read_sequence(&seed)?;
            for v in recguess::extend(&cand, &seed, upto)? {
                writeln!(out, "{v}")?;
            }
            Ok(())
        }
    }
}

// `f2(i, j)` carries `x - i` in its denominator for every `i < j`, so an
// integer `x` in `1..pmax-1` makes every later term singular.
fn reject_index_pole(x0: &BigRat, pmax: usize) -> Result<(), Failure> {
    if let Some(k) = x0.to_i64() {
        if k >= 1 && (k as usize) < pmax {
            return Err(Failure::Usage(format!(
                "x = {k} is a pole: f2({k}, j) has the factor (x - {k}) in its denominator for every j > {k}, \
                 so the sums for p > {k} are undefined there; use a non-integer x, x >= {pmax}, or --symbolic"
            )));
        }
    }
    Ok(())
}

fn progress(p: usize) {
    eprintln!("checked p <= {p}");
}

fn write_report(out: &mut Out, report: &ConjectureReport) -> Result<(), Failure> {
    for o in &report.outcomes {
        writeln!(out, "{}", json(o))?;
    }
    writeln!(out, "{}", json(report))?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Violation)
    }
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// One rational per line; blank lines are skipped.
fn read_sequence(path: &Path) -> Result<Vec<BigRat>, Failure> {
    let text = read_text(path)?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            l.trim()
                .parse::<BigRat>()
                .map_err(|e| Failure::Usage(format!("{}:{}: {e}", path.display(), i + 1)))
        })
        .collect()
}
