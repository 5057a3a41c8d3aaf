//! `mpart`: counting, series dumps, coefficient tables and verification
//! reports for M-ary partitions.
//!
//! Exit status: 0 on success, 1 when a theorem check finds a violation,
//! 2 on usage or parse errors. Conjecture probes exit 0 whatever they find.

use std::fmt::Display;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mpart_core::hbeta::HCache;
use mpart_core::partitions::DEFAULT_ORDER_BUDGET;
use mpart_core::verify::{verify_main_theorem_sweep, IdentityReport, COUNTEREXAMPLE_NS};
use mpart_core::*;
use serde_json::{json, Value};

#[derive(Debug, Parser)]
#[command(
    name = "mpart",
    version,
    about = "Exact M-ary partition counts and congruence checks"
)]
struct Cli {
    /// Output format.
    #[arg(
        long,
        global = true,
        value_enum,
        env = "MPART_FORMAT",
        default_value = "text"
    )]
    format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Args)]
struct SeqArg {
    /// Sequence spec: `fact`, `const:M[,LEN]` or `list:A,B,...[,tail=const|succ]`.
    #[arg(long, value_parser = parse_seq)]
    seq: MSequence,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// p_M(n).
    Count {
        #[command(flatten)]
        seq: SeqArg,
        #[arg(long)]
        n: u64,
    },
    /// Coefficients of F_M(q), or of U_{m_r}...U_{m_1}(q F_M(q)) with --r.
    Series {
        #[command(flatten)]
        seq: SeqArg,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        r: Option<usize>,
    },
    /// alpha_{m,r}(1..=r).
    Alpha {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        r: usize,
    },
    /// Canonical beta coefficients of H_(m_1, ..., m_r).
    Beta {
        /// Comma-separated multipliers, e.g. `2,3,4`.
        #[arg(long, value_parser = parse_ms)]
        ms: List,
    },
    /// Coefficients of H_(m_1, ..., m_r).
    Hseries {
        #[arg(long, value_parser = parse_ms)]
        ms: List,
        #[arg(long)]
        order: usize,
    },
    /// p_M(m_1...m_r n - 1) modulo the theorem's modulus for n = 1..=n_max.
    VerifyTheorem {
        #[command(flatten)]
        seq: SeqArg,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n_max: u64,
        /// Check every r' in 1..=r instead of r alone.
        #[arg(long)]
        all_r: bool,
    },
    /// The generating-function identity behind the theorem, to --order.
    VerifyIdentity {
        #[command(flatten)]
        seq: SeqArg,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        order: usize,
    },
    /// Probe a conjectured congruence on shifted arguments.
    CheckConjecture {
        #[command(flatten)]
        seq: SeqArg,
        #[arg(long)]
        r: usize,
        /// eps_1..eps_{r-1} as comma-separated 0/1 values.
        #[arg(long, value_parser = parse_eps, default_value = "")]
        eps: Eps,
        #[arg(long)]
        c: u64,
        #[arg(long)]
        n_max: u64,
        #[arg(long, value_enum, default_value = "theorem-aligned")]
        indexing: Indexing,
    },
    /// p_M(120n - 26) mod 20 over partitions into factorials.
    Counterexample {
        /// Values of n (default: the six with residue 10).
        #[arg(long, value_parser = parse_ns)]
        n: Option<List>,
    },
    /// b_m(m^{r+1} n - sigma - m) mod m^r / c_r.
    Classical {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        r: usize,
        #[arg(long, value_parser = parse_eps, default_value = "")]
        eps: Eps,
        #[arg(long)]
        n_max: u64,
        #[arg(long, value_enum, default_value = "proven")]
        form: Form,
    },
    /// Both Churchhouse families for b_2.
    Churchhouse {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n_max: u64,
        #[arg(long, value_enum, default_value = "proven")]
        form: Form,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Indexing {
    Literal,
    TheoremAligned,
    FactorialLiteral,
    FactorialShifted,
}

impl From<Indexing> for Conjecture {
    fn from(i: Indexing) -> Self {
        match i {
            Indexing::Literal => Conjecture::General(GeneralIndexing::Literal),
            Indexing::TheoremAligned => Conjecture::General(GeneralIndexing::TheoremAligned),
            Indexing::FactorialLiteral => Conjecture::Factorial(FactorialIndexing::Literal),
            Indexing::FactorialShifted => Conjecture::Factorial(FactorialIndexing::Shifted),
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Form {
    Proven,
    Printed,
}

impl From<Form> for ClassicalForm {
    fn from(f: Form) -> Self {
        match f {
            Form::Proven => ClassicalForm::Proven,
            Form::Printed => ClassicalForm::Printed,
        }
    }
}

#[derive(Debug, Clone)]
struct Eps(Vec<bool>);

#[derive(Debug, Clone)]
struct List(Vec<u64>);

fn parse_seq(s: &str) -> Result<MSequence, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_ns(s: &str) -> Result<List, String> {
    let v = mpart_core::mseq::parse_entry_list(s).map_err(|e| e.to_string())?;
    if let Some(i) = v.iter().position(|&n| n == 0) {
        return Err(format!("n must be positive (entry {})", i + 1));
    }
    Ok(List(v))
}

fn parse_ms(s: &str) -> Result<List, String> {
    let v = mpart_core::mseq::parse_entry_list(s).map_err(|e| e.to_string())?;
    if v.is_empty() {
        return Err("expected at least one multiplier".into());
    }
    let mut pos = 0;
    for (tok, &m) in s.split(',').zip(&v) {
        if m < 2 {
            return Err(format!(
                "multipliers must be at least 2 at position {pos} (token `{tok}`)"
            ));
        }
        pos += tok.len() + 1;
    }
    Ok(List(v))
}

fn parse_eps(s: &str) -> Result<Eps, String> {
    if s.trim().is_empty() {
        return Ok(Eps(Vec::new()));
    }
    let mut pos = 0;
    let mut out = Vec::new();
    for tok in s.split(',') {
        match tok.trim() {
            "0" => out.push(false),
            "1" => out.push(true),
            _ => return Err(format!("expected 0 or 1 at position {pos} (token `{tok}`)")),
        }
        pos += tok.len() + 1;
    }
    Ok(Eps(out))
}

/// A big integer as a JSON number.
fn num(x: &impl Display) -> Value {
    Value::Number(
        x.to_string()
            .parse()
            .expect("integers are valid JSON numbers"),
    )
}

/// What a command produced, and whether it counts as a failed check.
struct Output {
    text: String,
    violated: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            violated: false,
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize") + "\n"
}

fn render_reports(reports: &[CongruenceReport], format: Format) -> String {
    match format {
        Format::Json if reports.len() == 1 => reports[0].to_json() + "\n",
        Format::Json => {
            let v: Vec<Value> = reports
                .iter()
                .map(|r| serde_json::to_value(r).expect("reports serialize"))
                .collect();
            pretty(&Value::Array(v))
        }
        Format::Csv if reports.len() == 1 => reports[0].to_csv(),
        Format::Csv => {
            let mut out = String::new();
            for (i, r) in reports.iter().enumerate() {
                let csv = r.to_csv();
                let mut lines = csv.lines();
                let header = lines.next().unwrap_or_default();
                if i == 0 {
                    let _ = writeln!(out, "check,{header}");
                }
                for line in lines {
                    let _ = writeln!(out, "{},{line}", r.check);
                }
            }
            out
        }
        Format::Text => {
            let parts: Vec<String> = reports.iter().map(|r| r.to_string()).collect();
            parts.join("\n\n") + "\n"
        }
    }
}

fn render_series(head: Value, coeffs: &[num_bigint::BigInt], format: Format) -> String {
    match format {
        Format::Json => {
            let mut v = head;
            v["coeffs"] = Value::Array(coeffs.iter().map(num).collect());
            pretty(&v)
        }
        Format::Csv => {
            let mut out = String::from("n,coeff\n");
            for (i, c) in coeffs.iter().enumerate() {
                let _ = writeln!(out, "{i},{c}");
            }
            out
        }
        Format::Text => TruncatedSeries::new(coeffs.to_vec()).to_dump(),
    }
}

fn render_identity(rep: &IdentityReport, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(rep).expect("reports serialize") + "\n",
        Format::Csv => format!(
            "check,order,holds,first_mismatch\n{},{},{},{}\n",
            rep.check,
            rep.order,
            rep.holds,
            rep.first_mismatch
                .map(|m| m.to_string())
                .unwrap_or_default()
        ),
        Format::Text => {
            let mut out = format!(
                "check:     {}\nparams:    {}\norder:     {}\n",
                rep.check, rep.params, rep.order
            );
            match rep.first_mismatch {
                None => out.push_str("verdict:   pass\n"),
                Some(i) => {
                    let _ = writeln!(out, "verdict:   fail (first mismatch at q^{i})");
                }
            }
            out
        }
    }
}

fn run(command: Command, format: Format) -> Result<Output> {
    Ok(match command {
        Command::Count { seq, n } => {
            let v = count_pm(&seq.seq, n);
            Output::ok(match format {
                Format::Json => {
                    pretty(&json!({ "seq": seq.seq.to_spec(), "n": n, "count": num(&v) }))
                }
                Format::Csv => format!("n,count\n{n},{v}\n"),
                Format::Text => format!("{v}\n"),
            })
        }
        Command::Series { seq, order, r } => {
            let budget = DEFAULT_ORDER_BUDGET;
            if order > budget {
                return Err(Error::OrderBudget {
                    required: order as u128,
                    budget,
                });
            }
            let s = match r {
                None => pm_series(&seq.seq, order),
                Some(r) => shifted_series(&seq.seq, r, order)?,
            };
            let head = json!({ "seq": seq.seq.to_spec(), "r": r, "order": order });
            Output::ok(render_series(head, s.coeffs(), format))
        }
        Command::Alpha { m, r } => {
            if m < 2 || r < 1 {
                return Err(Error::InvalidParameter(
                    "alpha needs m >= 2 and r >= 1".into(),
                ));
            }
            let t = alpha_table(m, r);
            Output::ok(match format {
                Format::Json => pretty(&json!({
                    "m": m,
                    "r": r,
                    "alpha": t.values().iter().map(num).collect::<Vec<_>>(),
                })),
                Format::Csv => {
                    let mut out = String::from("i,alpha\n");
                    for (i, a) in t.values().iter().enumerate() {
                        let _ = writeln!(out, "{},{a}", i + 1);
                    }
                    out
                }
                Format::Text => {
                    let vals: Vec<String> = t.values().iter().map(|v| v.to_string()).collect();
                    format!("alpha_{{{m},{r}}} = ({})\n", vals.join(", "))
                }
            })
        }
        Command::Beta { ms } => {
            let b = beta_map(&ms.0);
            Output::ok(match format {
                Format::Json => b.to_json() + "\n",
                Format::Csv => {
                    let mut out = String::from("tuple,value\n");
                    for (t, v) in b.entries() {
                        let _ = writeln!(out, "\"{}\",{v}", join(t));
                    }
                    out
                }
                Format::Text => {
                    let mut out = String::new();
                    for (t, v) in b.entries() {
                        let _ = writeln!(out, "beta({}) = {v}", join(t));
                    }
                    out
                }
            })
        }
        Command::Hseries { ms, order } => {
            let s = HCache::new().get(&ms.0, order)?;
            let head = json!({ "ms": ms.0, "order": order });
            Output::ok(render_series(head, s.coeffs(), format))
        }
        Command::VerifyTheorem {
            seq,
            r,
            n_max,
            all_r,
        } => {
            let reports = if all_r {
                verify_main_theorem_sweep(&seq.seq, r, n_max)?
            } else {
                vec![verify_main_theorem(&seq.seq, r, n_max)?]
            };
            Output {
                violated: reports.iter().any(|r| !r.passed()),
                text: render_reports(&reports, format),
            }
        }
        Command::VerifyIdentity { seq, r, order } => {
            let rep = verify_identity(&seq.seq, r, order)?;
            Output {
                violated: !rep.holds,
                text: render_identity(&rep, format),
            }
        }
        Command::CheckConjecture {
            seq,
            r,
            eps,
            c,
            n_max,
            indexing,
        } => {
            let params = ConjectureParams {
                seq: seq.seq,
                r,
                eps: eps.0,
                c,
                conjecture: indexing.into(),
            };
            let rep = check_conjecture(&params, n_max)?;
            Output::ok(render_reports(&[rep], format))
        }
        Command::Counterexample { n } => {
            let ns = n.map_or_else(|| COUNTEREXAMPLE_NS.to_vec(), |l| l.0);
            let rep = reproduce_counterexample(&ns)?;
            Output::ok(render_reports(&[rep], format))
        }
        Command::Classical {
            m,
            r,
            eps,
            n_max,
            form,
        } => {
            let rep = verify_classical_mary(m, r, &eps.0, n_max, form.into())?;
            Output {
                violated: !rep.passed(),
                text: render_reports(&[rep], format),
            }
        }
        Command::Churchhouse { k, n_max, form } => {
            let reports = verify_churchhouse(k, n_max, form.into())?;
            Output {
                violated: reports.iter().any(|r| !r.passed()),
                text: render_reports(&reports, format),
            }
        }
    })
}

fn join(t: &[usize]) -> String {
    t.iter()
        .map(|j| j.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = match run(cli.command, cli.format) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &output.text),
        None => std::io::stdout().write_all(output.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    if output.violated {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
