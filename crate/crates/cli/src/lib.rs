//! Command-line front end over the permutiple pipeline.
//!
//! [`run`] parses arguments, dispatches one subcommand and returns the exit
//! status with everything that should be printed, so it can be driven from
//! tests without spawning a process.

pub mod schema;

use std::fmt::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use permutiple::oracle::{self, Budgets};
use permutiple::{
    build_hs_multigraph, build_mother_graph, condition_report, count_circuits, cycle_multi_image,
    dot, enumerate_cycles, enumerate_strings, equivalence_check, graph_of_witness, string_to_witness,
    union_images, verify_witness, CycleInventory, CycleMultiset, DedupMode, DigitPair, DigitVec,
    EnumerationOptions, Error, HSMultigraph, LeadingZeroPolicy, Params, PermutipleString,
    PermutipleWitness,
};
use serde::Serialize;

use schema::*;

pub const EXIT_OK: i32 = 0;
/// Unparseable command line, or a format the subcommand cannot produce.
pub const EXIT_USAGE: i32 = 2;
/// Well-formed arguments naming invalid values.
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;
/// A digit alignment or string that no L-walk realises.
pub const EXIT_WALK: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "permutiple", version, about = "Permutiples via mother graphs and carry-state multigraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Dot,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Multiplier, 1 < n < b.
    #[arg(long)]
    pub n: u32,
    /// Base.
    #[arg(long)]
    pub b: u32,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
    #[arg(long, default_value_t = permutiple::mothergraph::DEFAULT_CYCLE_CAP)]
    pub max_cycles: usize,
    #[arg(long, default_value_t = permutiple::euler::DEFAULT_STRING_CAP)]
    pub max_strings: usize,
    #[arg(long, default_value_t = oracle::DEFAULT_SCAN_BUDGET)]
    pub max_scan: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Dedup {
    Label,
    Numeric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LeadingZero {
    Allow,
    Forbid,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The mother graph M(n,b).
    Mother(#[command(flatten)] Common),
    /// Elementary cycles of the mother graph with their canonical indices.
    Cycles(#[command(flatten)] Common),
    /// The full carry-state multigraph.
    Multigraph(#[command(flatten)] Common),
    /// The multi-image of one cycle.
    Image {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        cycle: usize,
    },
    /// Whether a multiset of cycles can be ordered into permutiple strings.
    Check {
        #[command(flatten)]
        common: Common,
        /// Canonical cycle indices, repeats allowed.
        #[arg(long, value_delimiter = ',', required = true)]
        cycles: Vec<usize>,
    },
    /// Every permutiple string of a multiset of cycles, with witnesses.
    Strings {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', required = true)]
        cycles: Vec<usize>,
        #[arg(long, value_enum, default_value = "label")]
        dedup: Dedup,
        #[arg(long, value_enum, default_value = "allow")]
        leading_zero: LeadingZero,
    },
    /// Check a witness given as two digit lists, or as a permutiple string.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Msd-first, comma separated.
        #[arg(long, value_delimiter = ',', requires = "permuted", conflicts_with = "string")]
        digits: Option<Vec<u32>>,
        #[arg(long, value_delimiter = ',', requires = "digits")]
        permuted: Option<Vec<u32>>,
        /// Pairs lsd-first, e.g. "(0,2)(1,0)(2,1)".
        #[arg(long, required_unless_present = "digits")]
        string: Option<String>,
    },
    /// Brute-force search of one length.
    Search {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        len: usize,
    },
    /// Numbers equal to n times their own reversal.
    Palintiples {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        len: usize,
    },
    /// Compare the graph route against brute force at one length.
    Equiv {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        len: usize,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Mother(c) | Command::Cycles(c) | Command::Multigraph(c) => c,
            Command::Image { common, .. }
            | Command::Check { common, .. }
            | Command::Strings { common, .. }
            | Command::Verify { common, .. }
            | Command::Search { common, .. }
            | Command::Palintiples { common, .. }
            | Command::Equiv { common, .. } => common,
        }
    }
}

/// What a finished invocation prints, and its status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } | Error::CycleCapExceeded { .. } | Error::StringCapExceeded { .. } => {
            EXIT_BUDGET
        }
        Error::NotAnLWalk(_)
        | Error::RejectedInput(_)
        | Error::NonIntegralCarry { .. }
        | Error::CarryOutOfRange { .. } => EXIT_WALK,
        _ => EXIT_INPUT,
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli.command) {
        Ok(stdout) => Outcome { code: EXIT_OK, stdout, stderr: String::new() },
        Err(Failure::Usage(msg)) => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(Failure::Lib(e)) => Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

fn no_dot(what: &str) -> Failure {
    Failure::Usage(format!("{what} has no DOT rendering; use --format table or json"))
}

fn inventory(p: Params, c: &Common) -> Result<CycleInventory, Failure> {
    Ok(enumerate_cycles(&build_mother_graph(p), c.max_cycles)?)
}

fn multiset_union(p: Params, c: &Common, indices: &[usize]) -> Result<HSMultigraph, Failure> {
    let inv = inventory(p, c)?;
    Ok(union_images(&CycleMultiset::from_indices(indices.iter().copied()), &inv)?)
}

fn dispatch(cmd: &Command) -> Result<String, Failure> {
    let c = cmd.common();
    let p = Params::new(c.n, c.b)?;
    match cmd {
        Command::Mother(_) => {
            let m = build_mother_graph(p);
            Ok(match c.format {
                Format::Json => json(&MotherDoc { params: p.into(), edges: m.edges().to_vec() }),
                Format::Dot => dot::mother_graph(&m, None),
                Format::Table => {
                    let mut out = format!("mother graph {p}: {} edges\n", m.edges().len());
                    for d in 0..p.b() {
                        let to: Vec<String> = m.successors(d).map(|t| t.to_string()).collect();
                        writeln!(out, "{d:>3} -> {}", to.join(" ")).unwrap();
                    }
                    out
                }
            })
        }
        Command::Cycles(_) => {
            let inv = inventory(p, c)?;
            Ok(match c.format {
                Format::Json => json(&CyclesDoc::new(&inv)),
                Format::Dot => return Err(no_dot("cycles")),
                Format::Table => {
                    let mut out = format!("{} cycles of {p}\n", inv.len());
                    for (i, cy) in inv.cycles().iter().enumerate() {
                        writeln!(out, "C{i:<4} len {:<3} {cy}", cy.len()).unwrap();
                    }
                    out
                }
            })
        }
        Command::Multigraph(_) => Ok(render_multigraph(&build_hs_multigraph(p), c.format)),
        Command::Image { cycle, .. } => {
            let inv = inventory(p, c)?;
            let cy = inv.get(*cycle)?;
            let g = cycle_multi_image(cy, p)?;
            Ok(match c.format {
                Format::Json => json(&ImageDoc {
                    params: p.into(),
                    cycle: CycleOut { index: *cycle, length: cy.len(), edges: cy.edges().to_vec() },
                    multiedges: multiedges(&g),
                }),
                Format::Dot => dot::hs_multigraph(&g),
                Format::Table => format!("C{cycle} = {cy}\n{}", render_multigraph(&g, Format::Table)),
            })
        }
        Command::Check { cycles, .. } => {
            let g = multiset_union(p, c, cycles)?;
            let report = condition_report(&g);
            Ok(match c.format {
                Format::Json => json(&CheckDoc {
                    params: p.into(),
                    cycles: sorted(cycles),
                    multiedges: multiedges(&g),
                    report,
                }),
                Format::Dot => dot::hs_multigraph(&g),
                Format::Table => {
                    let ms = CycleMultiset::from_indices(cycles.iter().copied());
                    let mut out = format!("{ms} over {p}: {} multiedges\n", g.len());
                    out += &report_table(&report);
                    out
                }
            })
        }
        Command::Strings { cycles, dedup, leading_zero, .. } => strings(p, c, cycles, *dedup, *leading_zero),
        Command::Verify { digits, permuted, string, .. } => {
            let w = match (digits, permuted, string) {
                (Some(d), Some(q), _) => {
                    PermutipleWitness::new(p, DigitVec::from_msd(d, p.b())?, DigitVec::from_msd(q, p.b())?)?
                        .with_derived_sigma()
                }
                (_, _, Some(s)) => string_to_witness(&parse_string(s)?, p)?,
                _ => return Err(Failure::Usage("give --digits and --permuted, or --string".into())),
            };
            let report = verify_witness(&w);
            Ok(match c.format {
                Format::Json => json(&VerifyDoc { params: p.into(), witness: (&w).into(), report }),
                Format::Dot => dot::class_graph(&graph_of_witness(&w), p.b()),
                Format::Table => {
                    let verdict = if report.is_permutiple { "valid" } else { "invalid" };
                    let mut out = format!("{} = {} * {}: {verdict}\n", w.digits, p.n(), w.permuted);
                    writeln!(out, "carries (lsd-first): {:?}", w.carries.as_slice()).unwrap();
                    writeln!(out, "digit multisets equal: {}", report.multiset_equal).unwrap();
                    writeln!(out, "value relation:        {}", report.value_relation).unwrap();
                    writeln!(out, "carry recurrence:      {}", report.carry_recurrence).unwrap();
                    writeln!(out, "final carry zero:      {}", report.final_carry_zero).unwrap();
                    writeln!(out, "carries below n:       {}", report.carries_bounded).unwrap();
                    out
                }
            })
        }
        Command::Search { len, .. } => {
            let found = oracle::brute_force_search(p, *len, c.max_scan)?;
            Ok(match c.format {
                Format::Json => json(&SearchDoc {
                    params: p.into(),
                    len: *len,
                    results: found.iter().map(WitnessOut::from).collect(),
                }),
                Format::Dot => return Err(no_dot("search")),
                Format::Table => {
                    let mut out = format!("{} {len}-digit {p}-permutiples\n", found.len());
                    for w in &found {
                        let (m, q) = (permutiple::value(&w.digits), permutiple::value(&w.permuted));
                        writeln!(out, "{m} = {} * {q}   {} = {} * {}", p.n(), w.digits, p.n(), w.permuted).unwrap();
                    }
                    out
                }
            })
        }
        Command::Palintiples { len, .. } => {
            let values = oracle::palintiples(p, *len, c.max_scan)?;
            Ok(match c.format {
                Format::Json => json(&PalintiplesDoc {
                    params: p.into(),
                    len: *len,
                    count: values.len() as u64,
                    values,
                }),
                Format::Dot => return Err(no_dot("palintiples")),
                Format::Table => {
                    let mut out = format!("{} {len}-digit {p}-palintiples\n", values.len());
                    for v in values {
                        writeln!(out, "{v}").unwrap();
                    }
                    out
                }
            })
        }
        Command::Equiv { len, .. } => {
            let budgets = Budgets { scan: c.max_scan, cycles: c.max_cycles, strings: c.max_strings };
            let r = equivalence_check(p, *len, budgets)?;
            let strs = |s: &std::collections::BTreeSet<num_bigint::BigUint>| s.iter().map(|v| v.to_string()).collect();
            Ok(match c.format {
                Format::Json => json(&EquivDoc {
                    params: p.into(),
                    len: *len,
                    agrees: r.agrees(),
                    graph_side_sound: r.graph_side_sound,
                    multisets_examined: r.multisets_examined,
                    multisets_accepted: r.multisets_accepted,
                    graph_values: strs(&r.graph_values),
                    brute_values: strs(&r.brute_values),
                    only_graph: strs(&r.only_graph),
                    only_brute: strs(&r.only_brute),
                }),
                Format::Dot => return Err(no_dot("equiv")),
                Format::Table => {
                    let mut out = format!(
                        "{p} len {len}: {} multisets, {} accepted\n",
                        r.multisets_examined, r.multisets_accepted
                    );
                    writeln!(out, "graph route: {} values", r.graph_values.len()).unwrap();
                    writeln!(out, "brute force: {} values", r.brute_values.len()).unwrap();
                    writeln!(out, "agree: {}  witnesses sound: {}", r.agrees(), r.graph_side_sound).unwrap();
                    for v in &r.only_graph {
                        writeln!(out, "only graph: {v}").unwrap();
                    }
                    for v in &r.only_brute {
                        writeln!(out, "only brute: {v}").unwrap();
                    }
                    out
                }
            })
        }
    }
}

fn strings(p: Params, c: &Common, cycles: &[usize], dedup: Dedup, leading_zero: LeadingZero) -> Result<String, Failure> {
    let g = multiset_union(p, c, cycles)?;
    let report = condition_report(&g);
    let opts = EnumerationOptions {
        dedup: match dedup {
            Dedup::Label => DedupMode::LabelDistinct,
            Dedup::Numeric => DedupMode::NumericallyDistinct,
        },
        leading_zero: match leading_zero {
            LeadingZero::Allow => LeadingZeroPolicy::Allow,
            LeadingZero::Forbid => LeadingZeroPolicy::Forbid,
        },
        cap: c.max_strings,
    };
    let found = enumerate_strings(&g, opts)?;
    let counts = if report.verdict {
        count_circuits(&g)
    } else {
        permutiple::CircuitCounts { edge_sequences_from_zero: 0u32.into(), label_distinct: 0u32.into() }
    };
    let mut rows = Vec::with_capacity(found.len());
    for s in &found {
        let w = string_to_witness(s, p)?;
        rows.push(StringOut { string: s.pairs().to_vec(), witness: (&w).into() });
    }
    Ok(match c.format {
        Format::Json => json(&StringsDoc {
            params: p.into(),
            cycles: sorted(cycles),
            report,
            counts: CountsOut {
                edge_sequences_from_zero: counts.edge_sequences_from_zero.to_string(),
                label_distinct: counts.label_distinct.to_string(),
            },
            dedup: opts.dedup,
            leading_zero: opts.leading_zero,
            strings: rows,
        }),
        Format::Dot => dot::hs_multigraph(&g),
        Format::Table => {
            let ms = CycleMultiset::from_indices(cycles.iter().copied());
            let mut out = format!("{ms} over {p}: verdict {}\n", report.verdict);
            writeln!(
                out,
                "circuits from 0: {} edge sequences, {} label-distinct; {} listed",
                counts.edge_sequences_from_zero,
                counts.label_distinct,
                found.len()
            )
            .unwrap();
            for (s, row) in found.iter().zip(&rows) {
                let w = &row.witness;
                writeln!(out, "{s}   {} = {} * {}", w.value, p.n(), w.multiplicand).unwrap();
            }
            out
        }
    })
}

fn render_multigraph(g: &HSMultigraph, format: Format) -> String {
    match format {
        Format::Json => json(&MultigraphDoc::new(g)),
        Format::Dot => dot::hs_multigraph(g),
        Format::Table => {
            let mut out = format!("{} states, {} multiedges\n", g.state_count(), g.len());
            for ((from, to), labels) in g.grouped() {
                let labels: Vec<String> = labels.iter().map(DigitPair::to_string).collect();
                writeln!(out, "{from} -> {to}: {}", labels.join(" ")).unwrap();
            }
            out
        }
    }
}

fn report_table(r: &permutiple::ConditionReport) -> String {
    format!(
        "contains state 0:   {}\nstrongly connected: {}\nbalanced:           {}\nin - out per state: {:?}\nverdict:            {}\n",
        r.contains_zero, r.strongly_connected, r.balanced, r.deltas, r.verdict
    )
}

fn sorted(indices: &[usize]) -> Vec<usize> {
    let mut v = indices.to_vec();
    v.sort_unstable();
    v
}

/// Parses `(d1,d2)(d1,d2)...`; whitespace is ignored.
fn parse_string(s: &str) -> Result<PermutipleString, Failure> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Failure::Usage(format!("cannot parse {s:?} as pairs like (0,2)(1,0)"));
    let body = compact.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
    body.split(")(")
        .map(|pair| {
            let (d1, d2) = pair.split_once(',').ok_or_else(bad)?;
            Ok(DigitPair::new(d1.parse().map_err(|_| bad())?, d2.parse().map_err(|_| bad())?))
        })
        .collect()
}
