mod error;
mod spec;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use apseq::analysis::*;
use apseq::core::{agreement_length, Agreement};
use apseq::omega::{decide_buchi_det, decide_muller, Automaton};
use apseq::transforms::{transduce, Transducer};
use apseq::{Alphabet, Sequence, Word};
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};

use error::CliError;
use spec::SequenceSpec;

/// Construct, transform and measure almost periodic sequences.
///
/// A sequence is given either as `--spec "family key=value ..."` (or `--spec @file`) or as
/// `--family NAME` followed by `--key value` pairs.
#[derive(Parser)]
#[command(name = "apseq", version)]
struct Cli {
    /// Seed for randomized scheme policies.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct SpecArgs {
    /// Sequence spec text, or @path.
    #[arg(long, conflicts_with = "family")]
    spec: Option<String>,
    /// Family name; parameters follow as --key value.
    #[arg(long)]
    family: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a prefix.
    Gen {
        #[command(flatten)]
        spec: SpecArgs,
        /// Number of symbols.
        #[arg(long)]
        n: usize,
    },
    /// Measure a sequence; CSV on stdout.
    Analyze {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum)]
        metric: Metric,
        /// `a..b` (inclusive) or a single value.
        #[arg(long, default_value = "1..8")]
        n: String,
        #[arg(long, default_value_t = 100_000)]
        horizon: usize,
        /// Power kind: square, cube or overlap.
        #[arg(long, default_value = "square")]
        kind: String,
        /// Largest root length for powers.
        #[arg(long)]
        max_root: Option<usize>,
        /// Number of shifts for am.
        #[arg(long, default_value_t = 64)]
        shifts: usize,
        /// Averaging length for am.
        #[arg(long, default_value_t = 65_536)]
        t: usize,
        /// Block for frequency, word for quasiperiods and tiling.
        #[arg(long)]
        word: Option<String>,
        /// Use the certified regulator instead of the empirical one.
        #[arg(long)]
        certified: bool,
    },
    /// Run a finite-state transducer over a sequence.
    Transduce {
        /// Machine file.
        #[arg(long)]
        machine: PathBuf,
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        n: usize,
        /// Also print the propagated certified bound at n = 1..8.
        #[arg(long)]
        emit_bound: bool,
    },
    /// Decide whether a deterministic Muller or Büchi automaton accepts a sequence.
    Decide {
        /// Automaton file.
        #[arg(long)]
        automaton: PathBuf,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Compare two sequences.
    Compare {
        /// First spec text or @path.
        #[arg(long)]
        a: String,
        /// Second spec text or @path.
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 100_000)]
        horizon: usize,
    },
    /// List families and their parameters.
    Families,
}

#[derive(Clone, Copy, ValueEnum)]
enum Metric {
    Complexity,
    Regulator,
    PrefixRegulator,
    Rd,
    Balance,
    Powers,
    Am,
    Frequency,
    Entropy,
    Quasiperiods,
    Tiling,
    Screen,
}

impl Metric {
    fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

/// Pulls `--key value` pairs that are not options of the subcommand out of `args`; they are
/// family parameters.
fn split_params(args: Vec<String>) -> Result<(Vec<String>, BTreeMap<String, String>), CliError> {
    let cmd = Cli::command();
    let Some(pos) = args.iter().position(|a| cmd.find_subcommand(a).is_some()) else {
        return Ok((args, BTreeMap::new()));
    };
    let sub = cmd.find_subcommand(&args[pos]).unwrap();
    if !sub.get_arguments().any(|a| a.get_id() == "family") {
        return Ok((args, BTreeMap::new()));
    }
    let mut known: Vec<String> = sub.get_arguments().filter_map(|a| a.get_long()).map(String::from).collect();
    known.extend(["help".to_string(), "seed".to_string()]);
    let mut kept = args[..=pos].to_vec();
    let mut params = BTreeMap::new();
    let mut it = args.into_iter().skip(pos + 1);
    while let Some(a) = it.next() {
        let Some(body) = a.strip_prefix("--") else {
            kept.push(a);
            continue;
        };
        let (key, inline) = match body.split_once('=') {
            Some((k, v)) => (k.to_string(), Some(v.to_string())),
            None => (body.to_string(), None),
        };
        if key.is_empty() || known.contains(&key) {
            kept.push(a);
            continue;
        }
        let value = match inline {
            Some(v) => v,
            None => it.next().ok_or_else(|| CliError::Spec(format!("parameter `{key}` needs a value")))?,
        };
        if params.insert(key.clone(), value).is_some() {
            return Err(CliError::Spec(format!("parameter `{key}` given twice")));
        }
    }
    Ok((kept, params))
}

fn resolve(args: &SpecArgs, params: &BTreeMap<String, String>) -> Result<SequenceSpec, CliError> {
    match (&args.spec, &args.family) {
        (Some(text), None) => {
            if let Some(k) = params.keys().next() {
                return Err(CliError::Spec(format!("parameter `{k}` given alongside --spec")));
            }
            SequenceSpec::load(text)
        }
        (None, Some(f)) => SequenceSpec::new(f, params.clone()),
        _ => Err(CliError::Spec("give a sequence with --spec or --family".into())),
    }
}

fn parse_range(text: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Spec(format!("cannot read range `{text}`"));
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (a, b.trim_start_matches('=')),
        None => (text, text),
    };
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a == 0 || b < a {
        return Err(bad());
    }
    Ok((a, b))
}

fn read_machine_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Machine(format!("cannot read {}: {e}", path.display())))
}

fn infer_alphabet(w: &str) -> Result<Alphabet, CliError> {
    let mut v: Vec<String> = w.chars().map(String::from).collect();
    v.sort();
    v.dedup();
    if v.iter().all(|c| c == "0" || c == "1") {
        return Ok(Alphabet::binary());
    }
    Ok(Alphabet::new(v)?)
}

fn fmt_f(v: f64) -> String {
    format!("{v:.6}")
}

struct Csv<W: Write> {
    w: csv::Writer<W>,
    metric: String,
}

impl<W: Write> Csv<W> {
    fn new(out: W, metric: Metric) -> Result<Self, CliError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["metric", "param", "value", "kind", "horizon"]).map_err(csv_err)?;
        Ok(Csv { w, metric: metric.name() })
    }

    fn row(&mut self, param: impl ToString, value: impl ToString, kind: &str, horizon: usize) -> Result<(), CliError> {
        self.w
            .write_record([self.metric.clone(), param.to_string(), value.to_string(), kind.to_string(), horizon.to_string()])
            .map_err(csv_err)
    }
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io(std::io::Error::other(e))
}

struct AnalyzeOpts {
    metric: Metric,
    n: String,
    horizon: usize,
    kind: String,
    max_root: Option<usize>,
    shifts: usize,
    t: usize,
    word: Option<String>,
    certified: bool,
}

fn analyze(x: Option<&Sequence>, o: &AnalyzeOpts, out: impl Write) -> Result<(), CliError> {
    let mut csv = Csv::new(out, o.metric)?;
    let h = o.horizon;
    let seq = || x.ok_or_else(|| CliError::Spec("this metric needs a sequence".into()));
    let word = || o.word.as_deref().ok_or_else(|| CliError::Spec("this metric needs --word".into()));
    match o.metric {
        Metric::Complexity => {
            let (a, b) = parse_range(&o.n)?;
            for n in a..=b {
                let r = subword_complexity(seq()?, n, h)?;
                csv.row(n, r.count, if r.exact { "exact" } else { "empirical" }, h)?;
            }
        }
        Metric::Regulator => {
            let (a, b) = parse_range(&o.n)?;
            for n in a..=b {
                let r = if o.certified { certified_regulator(seq()?, n)? } else { empirical_regulator(seq()?, n, h)? };
                csv.row(n, r.value, &r.kind.to_string(), r.horizon)?;
            }
        }
        Metric::PrefixRegulator => {
            let (a, b) = parse_range(&o.n)?;
            for n in a..=b {
                csv.row(n, prefix_regulator(seq()?, n, h)?, "empirical-lower", h)?;
            }
        }
        Metric::Rd => {
            let (a, b) = parse_range(&o.n)?;
            let rep = ap_coefficient(seq()?, b, h)?;
            for row in rep.rows.iter().filter(|r| r.n >= a) {
                csv.row(row.n, row.rd, "empirical-lower", h)?;
            }
            csv.row("max-rd-ratio", fmt_f(rep.max_rd_ratio), "estimate", h)?;
            csv.row("max-r-ratio", fmt_f(rep.max_r_ratio), "estimate", h)?;
        }
        Metric::Balance => {
            let (_, b) = parse_range(&o.n)?;
            let rep = is_balanced(seq()?, b, h)?;
            csv.row(b, if rep.balanced { "balanced" } else { "unbalanced" }, "empirical", h)?;
            if let Some(v) = rep.violation {
                csv.row("violation", format!("n={} {}/{}", v.n, v.light, v.heavy), "empirical", h)?;
            }
        }
        Metric::Powers => {
            let kind: PowerKind = o.kind.parse()?;
            let rep = detect_powers_upto(seq()?, h, kind, o.max_root.unwrap_or(usize::MAX))?;
            let mut runs = rep.runs.clone();
            runs.sort_by_key(|r| (r.period, r.start));
            for r in runs {
                csv.row(r.period, format!("{}..{}", r.start, r.end), &kind.to_string(), h)?;
            }
        }
        Metric::Am => {
            let rep = am_estimate(seq()?, o.shifts, o.t)?;
            for (i, d) in rep.densities.iter().enumerate() {
                csv.row(i + 1, fmt_f(*d), "shift", o.t)?;
            }
            csv.row("min", fmt_f(rep.min), "estimate", o.t)?;
        }
        Metric::Frequency => {
            let x = seq()?;
            let u = Word::parse(x.alphabet(), word()?)?;
            let rep = frequency(x, &u, 0, h - 1)?;
            csv.row(&u, fmt_f(rep.density), "empirical", h)?;
        }
        Metric::Entropy => {
            let (a, b) = parse_range(&o.n)?;
            for n in a..=b {
                csv.row(n, fmt_f(entropy_estimate(seq()?, n, h)?), "estimate", h)?;
            }
        }
        Metric::Quasiperiods => {
            let text = word()?;
            let w = Word::parse(&infer_alphabet(text)?, text)?;
            let rep = quasiperiods(&w)?;
            for q in &rep.all {
                let kind = if q == &rep.minimal {
                    "minimal"
                } else if rep.superprimitive.contains(q) {
                    "superprimitive"
                } else {
                    "quasiperiod"
                };
                csv.row(q.len(), q, kind, w.len())?;
            }
        }
        Metric::Tiling => {
            let text = word()?;
            let w = Word::parse(&infer_alphabet(text)?, text)?;
            let rep = tiling_periods(&w)?;
            for p in &rep.all {
                let kind = if rep.minimal.contains(p) { "minimal" } else { "tiling-period" };
                csv.row(p.len(), p, kind, w.len())?;
            }
        }
        Metric::Screen => {
            let rep = periodicity_screen(seq()?, h)?;
            for (n, p) in &rep.complexity {
                csv.row(n, p, "empirical", h)?;
            }
            if let Some(n) = rep.triggered_at {
                csv.row("triggered-at", n, "empirical", h)?;
            }
            if let Some(p) = rep.period {
                csv.row("period", format!("{}+{}", p.preperiod, p.period), "empirical", h)?;
            }
        }
    }
    csv.w.flush()?;
    Ok(())
}

fn cmd_transduce(machine: &Path, x: &Sequence, n: usize, emit_bound: bool, out: &mut impl Write) -> Result<(), CliError> {
    let m = Transducer::parse(&read_machine_file(machine)?).map_err(|e| CliError::Machine(e.to_string()))?;
    let y = transduce(&m, x)?;
    writeln!(out, "{}", y.render(n)?)?;
    if emit_bound {
        match y.certified_bound() {
            Some(b) => {
                for k in 1..=8u64 {
                    match b.eval(k) {
                        Some(v) => writeln!(out, "bound({k}) = {v}")?,
                        None => writeln!(out, "bound({k}) = overflow")?,
                    }
                }
            }
            None => writeln!(out, "bound: none (input has no certified bound or the machine is not uniform)")?,
        }
    }
    Ok(())
}

fn cmd_decide(path: &Path, x: &Sequence, out: &mut impl Write) -> Result<(), CliError> {
    let aut = Automaton::parse(&read_machine_file(path)?).map_err(|e| CliError::Machine(e.to_string()))?;
    let (verdict, states) = match &aut {
        Automaton::Muller(m) => (decide_muller(m, x)?, m.core().states().to_vec()),
        Automaton::Buchi(b) => (decide_buchi_det(b, x)?, b.states().to_vec()),
    };
    writeln!(out, "{}", if verdict.accept { "ACCEPT" } else { "REJECT" })?;
    writeln!(out, "limit-macrostate: {{{}}}", verdict.state_names(&states).join(","))?;
    writeln!(out, "window: {}", verdict.window)?;
    writeln!(out, "bound: {}", verdict.bound_trace.provenance())?;
    Ok(())
}

fn cmd_compare(a: &Sequence, b: &Sequence, h: usize, out: &mut impl Write) -> Result<(), CliError> {
    if a.alphabet() != b.alphabet() {
        return Err(apseq::SeqError::AlphabetMismatch("compared sequences use different alphabets".into()).into());
    }
    let agree = agreement_length(a, b, h)?;
    let density = besicovitch_density(a, b, h)?;
    match agree {
        Agreement::AtLeast(n) => writeln!(out, "agreement: >= {n}")?,
        Agreement::At(k) => writeln!(out, "agreement: {k}")?,
    }
    writeln!(out, "density: {}", fmt_f(density))?;
    match agree {
        Agreement::AtLeast(_) => writeln!(out, "divergence: none")?,
        Agreement::At(k) => {
            let lo = k.saturating_sub(8);
            let hi = (k + 8).min(h);
            let show = |x: &Sequence| -> Result<String, CliError> {
                let al = x.alphabet();
                let s = x.range(lo, hi)?;
                Ok(format!("{}[{}]{}", al.render(&s[..k - lo]), al.render(&s[k - lo..=k - lo]), al.render(&s[k - lo + 1..])))
            };
            writeln!(out, "divergence: {k}")?;
            writeln!(out, "a[{lo}..{hi}): {}", show(a)?)?;
            writeln!(out, "b[{lo}..{hi}): {}", show(b)?)?;
        }
    }
    Ok(())
}

fn meta(line: &str) {
    eprintln!("# {line}");
}

fn run(cli: Cli, params: BTreeMap<String, String>) -> Result<(), CliError> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let seed = cli.seed;
    let load = |args: &SpecArgs| -> Result<(SequenceSpec, Sequence), CliError> {
        let s = resolve(args, &params)?;
        meta(&format!("spec={s} seed={seed} cap={}", apseq::core::horizon_cap()));
        let x = s.build(seed)?;
        Ok((s, x))
    };
    match cli.cmd {
        Cmd::Gen { spec, n } => {
            let (_, x) = load(&spec)?;
            writeln!(out, "{}", x.render(n)?)?;
        }
        Cmd::Analyze { spec, metric, n, horizon, kind, max_root, shifts, t, word, certified } => {
            let x = if spec.spec.is_none() && spec.family.is_none() && matches!(metric, Metric::Quasiperiods | Metric::Tiling) {
                None
            } else {
                Some(load(&spec)?.1)
            };
            let opts = AnalyzeOpts { metric, n, horizon, kind, max_root, shifts, t, word, certified };
            analyze(x.as_ref(), &opts, &mut out)?;
        }
        Cmd::Transduce { machine, spec, n, emit_bound } => {
            let (_, x) = load(&spec)?;
            cmd_transduce(&machine, &x, n, emit_bound, &mut out)?;
        }
        Cmd::Decide { automaton, spec } => {
            let (_, x) = load(&spec)?;
            cmd_decide(&automaton, &x, &mut out)?;
        }
        Cmd::Compare { a, b, horizon } => {
            let sa = SequenceSpec::load(&a)?;
            let sb = SequenceSpec::load(&b)?;
            meta(&format!("a={sa} b={sb} seed={seed}"));
            cmd_compare(&sa.build(seed)?, &sb.build(seed)?, horizon, &mut out)?;
        }
        Cmd::Families => {
            for f in spec::family_lines() {
                writeln!(out, "{f}")?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn main() {
    let code = match split_params(std::env::args().collect()) {
        Ok((args, params)) => {
            let cli = Cli::parse_from(args);
            match run(cli, params) {
                Ok(()) => 0,
                Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
                Err(e) => {
                    eprintln!("error: {e}");
                    e.exit_code()
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}
