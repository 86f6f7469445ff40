use std::fmt::Write as _;
use std::process::ExitCode;

use altperm::bijection::{self, Parity};
use altperm::harness::{self, EquivalenceReport, Method, TableReport};
use altperm::{AlternationConvention, ClassSpec, Error, Permutation, SuccessionRule, Tableau};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "altperm", version, about = "Pattern avoidance in alternating permutations")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Largest length to compute (verify, equiv).
    #[arg(long, global = true)]
    max_n: Option<usize>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Tsv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count the avoiders of a pattern at one length.
    Count {
        #[arg(long)]
        pattern: Permutation,
        #[arg(long)]
        length: usize,
        /// all, alt-up, alt-down or des-k.
        #[arg(long, default_value = "alt-up")]
        class: ClassSpec,
        /// brute, tree or formula.
        #[arg(long, default_value = "brute")]
        method: Method,
    },
    /// Count the avoiders of a pattern at several lengths.
    Series {
        #[arg(long)]
        pattern: Permutation,
        #[arg(long, default_value = "alt-up")]
        class: ClassSpec,
        #[arg(long, value_delimiter = ',', required = true)]
        ns: Vec<usize>,
        #[arg(long, default_value = "brute")]
        method: Method,
    },
    /// Level sizes or label distributions of a generating tree.
    Tree {
        /// rect-syt, alt-even-2143, alt-odd-2143, alt-even-1234 or shifted-syt.
        #[arg(long)]
        rule: String,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        labels: bool,
    },
    /// Map a permutation to its tableau or back.
    Biject {
        #[arg(long, conflicts_with = "tableau", required_unless_present = "tableau")]
        perm: Option<Permutation>,
        #[arg(long)]
        tableau: Option<String>,
        /// Only `auto` is supported: the direction follows the input.
        #[arg(long, default_value = "auto", value_parser = ["auto"])]
        direction: String,
    },
    /// Recompute a reference table.
    Verify {
        /// 1 to 5, or all.
        #[arg(long)]
        table: String,
    },
    /// Group patterns by their avoider counts.
    Equiv {
        #[arg(long)]
        len: usize,
        /// alt-even, alt-odd, all or des-k.
        #[arg(long, default_value = "alt-even")]
        class: String,
    },
}

/// What a command produced: rendered output and whether it passed.
struct Outcome {
    text: String,
    pass: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, pass: true }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Parse(_) | Error::Usage(_) => 2,
                Error::Precondition(_) | Error::Domain(_) => 1,
            })
        }
    }
}

fn run(cli: &Cli) -> altperm::Result<Outcome> {
    let fmt = cli.format;
    match &cli.command {
        Command::Count { pattern, length, class, method } => {
            let series = harness::series(pattern, *class, &[*length], *method)?;
            let count = &series.points[0].count;
            let text = match fmt {
                Format::Text => format!("{count}\n"),
                Format::Tsv => format!("{length}\t{count}\n"),
                Format::Json => json_line(&series),
            };
            Ok(Outcome::ok(text))
        }
        Command::Series { pattern, class, ns, method } => {
            let series = harness::series(pattern, *class, ns, *method)?;
            let text = match fmt {
                Format::Text => {
                    let counts: Vec<String> = series.points.iter().map(|p| p.count.to_string()).collect();
                    format!("{}\n", counts.join(","))
                }
                Format::Tsv => series.points.iter().map(|p| format!("{}\t{}\n", p.n, p.count)).collect(),
                Format::Json => json_line(&series),
            };
            Ok(Outcome::ok(text))
        }
        Command::Tree { rule, depth, labels } => tree(fmt, rule, *depth, *labels),
        Command::Biject { perm, tableau, .. } => match (perm, tableau) {
            (Some(w), None) => biject_perm(fmt, w),
            (None, Some(t)) => biject_tableau(fmt, t),
            _ => Err(Error::Usage("give exactly one of --perm and --tableau".into())),
        },
        Command::Verify { table } => verify(fmt, table, cli.max_n),
        Command::Equiv { len, class } => equiv(fmt, *len, class, cli.max_n),
    }
}

fn json_line<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}

fn tree(fmt: Format, name: &str, depth: usize, labels: bool) -> altperm::Result<Outcome> {
    let rule = SuccessionRule::by_name(name).ok_or_else(|| Error::Usage(format!("unknown rule {name:?}")))?;
    if !labels {
        let count = altperm::level_count(&rule, depth);
        let text = match fmt {
            Format::Text => format!("{count}\n"),
            Format::Tsv => format!("{depth}\t{count}\n"),
            Format::Json => json_line(&json!({ "rule": rule.name, "depth": depth, "count": count.to_string() })),
        };
        return Ok(Outcome::ok(text));
    }
    let dist = altperm::label_distribution(&rule, depth);
    let text = match fmt {
        Format::Text => {
            let parts: Vec<String> = dist
                .iter()
                .map(|(l, c)| if *c == 1u32.into() { l.to_string() } else { format!("{l}:{c}") })
                .collect();
            format!("{}\n", parts.join(","))
        }
        Format::Tsv => dist.iter().map(|(l, c)| format!("{}\t{}\t{c}\n", l.a, l.b)).collect(),
        Format::Json => {
            let entries: Vec<Value> = dist
                .iter()
                .map(|(l, c)| json!({ "a": l.a, "b": l.b, "count": c.to_string() }))
                .collect();
            json_line(&json!({ "rule": rule.name, "depth": depth, "labels": entries }))
        }
    };
    Ok(Outcome::ok(text))
}

fn tableau_json(t: &Tableau) -> Value {
    let shape: Vec<usize> = t.rows().iter().map(Vec::len).collect();
    json!({ "shape": shape, "shifted": t.is_shifted(), "rows": t.rows() })
}

fn biject_perm(fmt: Format, w: &Permutation) -> altperm::Result<Outcome> {
    let (t, converted) = match Parity::of_len(w.len()) {
        Parity::Even => (bijection::perm_to_tableau(w)?, None),
        Parity::Odd => {
            let down_up = bijection::to_down_up(w);
            let converted = (down_up != *w).then_some(down_up);
            (bijection::odd_perm_to_shsyt(w)?, converted)
        }
    };
    let text = match fmt {
        Format::Text => {
            let mut s = format!("{t}\n");
            if let Some(rc) = &converted {
                let _ = writeln!(s, "note: {w} is up-down; mapped its reverse-complement {rc}");
            }
            s
        }
        Format::Tsv => format!("{w}\t{t}\n"),
        Format::Json => json_line(&json!({
            "perm": w.to_string(),
            "converted": converted.map(|c| c.to_string()),
            "tableau": tableau_json(&t),
        })),
    };
    Ok(Outcome::ok(text))
}

/// Rectangular when all three rows have equal length, shifted for
/// `<n+2, n+1, n>` and `<2, 1>`.
fn is_shifted_family(text: &str) -> altperm::Result<bool> {
    let lens: Vec<usize> = text.split(';').map(|r| r.split(',').count()).collect();
    match lens.as_slice() {
        [a, b, c] if a == b && b == c => Ok(false),
        [a, b, c] if *a == c + 2 && *b == c + 1 => Ok(true),
        [2, 1] => Ok(true),
        _ => Err(Error::Precondition(format!(
            "tableau shape {lens:?} is neither <n,n,n> nor <n+2,n+1,n>"
        ))),
    }
}

fn biject_tableau(fmt: Format, text: &str) -> altperm::Result<Outcome> {
    // Malformed text is a parse error before the shape is judged.
    Tableau::parse(text, false).or_else(|_| Tableau::parse(text, true))?;
    let shifted = is_shifted_family(text)?;
    let t = Tableau::parse(text, shifted)?;
    let w = if shifted { bijection::shsyt_to_odd_perm(&t)? } else { bijection::tableau_to_perm(&t)? };
    let out = match fmt {
        Format::Text => format!("{w}\n"),
        Format::Tsv => format!("{t}\t{w}\n"),
        Format::Json => json_line(&json!({ "tableau": tableau_json(&t), "perm": w.to_string() })),
    };
    Ok(Outcome::ok(out))
}

fn verify(fmt: Format, which: &str, max_n: Option<usize>) -> altperm::Result<Outcome> {
    let ids: Vec<u8> = match which {
        "all" => (1..=5).collect(),
        s => match s.parse::<u8>() {
            Ok(id @ 1..=5) => vec![id],
            _ => return Err(Error::Usage(format!("unknown table {s:?}; expected 1..5 or all"))),
        },
    };
    let reports: Vec<TableReport> = ids
        .iter()
        .map(|&id| harness::verify_table(id, max_n))
        .collect::<altperm::Result<_>>()?;
    let pass = reports.iter().all(|r| r.pass);
    let verdict = if pass { "PASS" } else { "FAIL" };
    let text = match fmt {
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                let _ = writeln!(
                    s,
                    "table {}: {} ({} cells checked, {} skipped)",
                    r.table,
                    if r.pass { "PASS" } else { "FAIL" },
                    r.cells.len(),
                    r.skipped.len()
                );
                for (cell, check) in r.mismatches() {
                    let _ = writeln!(
                        s,
                        "  mismatch: row {} pattern {} n={} expected {} computed {}",
                        cell.row, check.pattern, cell.n, cell.expected, check.computed
                    );
                }
                for sk in &r.skipped {
                    let _ = writeln!(s, "  skipped: row {} n={}", sk.row, sk.n);
                }
            }
            let _ = writeln!(s, "{verdict}");
            s
        }
        Format::Tsv => {
            let mut s = String::from("table\trow\tpattern\tn\texpected\tcomputed\tok\n");
            for r in &reports {
                for c in r.flat_cells() {
                    let _ = writeln!(
                        s,
                        "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                        r.table, c.row, c.pattern, c.n, c.expected, c.computed, c.ok
                    );
                }
            }
            s
        }
        Format::Json => json_line(&json!({ "pass": pass, "tables": reports })),
    };
    Ok(Outcome { text, pass })
}

fn equiv_lengths(class: &str, max_n: Option<usize>) -> altperm::Result<(ClassSpec, Vec<usize>)> {
    let up = ClassSpec::Alternating(AlternationConvention::UpDown);
    let (spec, lengths): (ClassSpec, Vec<usize>) = match class {
        "alt-even" => (up, (2..=max_n.unwrap_or(12)).step_by(2).collect()),
        "alt-odd" => (up, (1..=max_n.unwrap_or(11)).step_by(2).collect()),
        "all" => (ClassSpec::All, (1..=max_n.unwrap_or(8)).collect()),
        other => match other.parse::<ClassSpec>()? {
            ClassSpec::DescentSet(k) => (ClassSpec::DescentSet(k), (k..=max_n.unwrap_or(4 * k)).step_by(k).collect()),
            _ => return Err(Error::Usage(format!("unknown class {other:?}"))),
        },
    };
    if lengths.is_empty() {
        return Err(Error::Usage("--max-n leaves no lengths to compare".into()));
    }
    Ok((spec, lengths))
}

fn equiv(fmt: Format, len: usize, class: &str, max_n: Option<usize>) -> altperm::Result<Outcome> {
    let (spec, lengths) = equiv_lengths(class, max_n)?;
    let report: EquivalenceReport = harness::equivalence_report(len, spec, &lengths)?;
    let join = |xs: &[Permutation]| xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    let nums = |xs: &[u64]| xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    let text = match fmt {
        Format::Text => {
            let mut s = format!(
                "lengths {}; symmetry {}\n",
                nums(&lengths.iter().map(|&n| n as u64).collect::<Vec<_>>()),
                match (report.symmetry, report.symmetry_consistent) {
                    (Some(sym), Some(true)) => format!("{sym:?} (consistent)"),
                    (Some(sym), _) => format!("{sym:?} (VIOLATED)"),
                    (None, _) => "none".into(),
                }
            );
            for c in &report.classes {
                let _ = writeln!(s, "{}\t{}", join(&c.patterns), nums(&c.counts));
            }
            s
        }
        Format::Tsv => report
            .classes
            .iter()
            .map(|c| format!("{}\t{}\n", join(&c.patterns), nums(&c.counts)))
            .collect(),
        Format::Json => json_line(&report),
    };
    Ok(Outcome::ok(text))
}
