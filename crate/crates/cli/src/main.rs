mod golden;
mod sequences;

use std::io::{self, BufRead, BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use lambda_skeletons::enumerate::{
    closable, closable_by_filter, closed_terms, motzkin, unclosable, uniquely_closable_with,
    UniqueMethod,
};
use lambda_skeletons::sampler::{BudgetGuard, SampleFamily, Sampler, SamplerConfig};
use lambda_skeletons::typecheck::{
    build_constraints, infer_type, is_typable_skel, is_uniquely_typable_skel,
    is_untypable_closable_skel, solve_upto, to_binary_tree, typable_closed_terms,
    uniquely_closable_typable, BinaryTree,
};
use lambda_skeletons::Skeleton;
use num_bigint::BigUint;
use serde_json::json;

use crate::sequences::{Method, Sequence};

#[derive(Parser)]
#[command(
    name = "skel",
    version,
    about = "Count, enumerate, sample and type-check lambda term skeletons"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every object of one size, one per line.
    Enumerate(EnumerateArgs),
    /// Print a counting sequence.
    Count(CountArgs),
    /// Draw random skeletons with a Boltzmann sampler.
    Sample(SampleArgs),
    /// Report closability and typability of given skeletons.
    Classify(ClassifyArgs),
    /// Pair typable uniquely closable skeletons with binary trees.
    Bijection(BijectionArgs),
    /// Compare computed sequences with the shipped reference data.
    Check(CheckArgs),
    /// Closable against typable skeletons by size.
    Density(DensityArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Lines,
    Csv,
    Json,
    Bfile,
}

impl Format {
    fn require(self, allowed: &[Format], command: &str) -> Result<()> {
        if !allowed.contains(&self) {
            bail!("{command} does not support --format {self:?}");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Construction {
    Grammar,
    Filter,
    BinderCount,
    Marker,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long, value_enum)]
    family: Sequence,
    #[arg(long)]
    size: usize,
    /// How to generate closable and uniquely closable skeletons.
    #[arg(long, value_enum, default_value = "grammar")]
    construction: Construction,
    /// Print only the number of objects.
    #[arg(long)]
    count_only: bool,
    #[arg(long, value_enum, default_value = "lines")]
    format: Format,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long, value_enum)]
    family: Sequence,
    #[arg(long, group = "upto", required = true)]
    upto_size: Option<usize>,
    /// Index by generating-function exponent (size + 1) instead of size.
    #[arg(long, group = "upto")]
    upto_exponent: Option<usize>,
    #[arg(long, value_enum, default_value = "auto")]
    method: Method,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum SampleFamilyArg {
    Closable,
    UniquelyClosable,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long, value_enum)]
    family: SampleFamilyArg,
    #[arg(long)]
    min: usize,
    #[arg(long)]
    max: usize,
    #[arg(long, env = "SKEL_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = SamplerConfig::DEFAULT_TRIES)]
    tries: u64,
    /// Number of samples to draw from one generator.
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Refuse every constructor choice at the root, forcing an application.
    #[arg(long)]
    strict_guard: bool,
    /// Print the stats line only.
    #[arg(long)]
    stats_only: bool,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Skeletons in `v` / `l(X)` / `a(X,Y)` syntax; read from stdin if absent.
    skeletons: Vec<String>,
    #[arg(long, value_enum, default_value = "lines")]
    format: Format,
}

#[derive(Args)]
struct BijectionArgs {
    #[arg(long)]
    size: usize,
    #[arg(long, value_enum, default_value = "lines")]
    format: Format,
}

#[derive(Args)]
struct CheckArgs {
    /// Sequences to check; all shipped sequences when absent.
    #[arg(long = "sequence", value_enum)]
    sequences: Vec<Sequence>,
    /// Last index to check instead of the per-sequence default.
    #[arg(long)]
    upto_size: Option<usize>,
    #[arg(long, value_enum, default_value = "auto")]
    method: Method,
    /// Read `<name>.txt` reference files from here instead of the built-in copies.
    #[arg(long)]
    golden_dir: Option<PathBuf>,
}

#[derive(Args)]
struct DensityArgs {
    #[arg(long)]
    upto_size: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match cli.command {
        Command::Enumerate(args) => enumerate(args, &mut out),
        Command::Count(args) => count(args, &mut out),
        Command::Sample(args) => sample(args, &mut out),
        Command::Classify(args) => classify(args, &mut out),
        Command::Bijection(args) => bijection(args, &mut out),
        Command::Check(args) => check(args, &mut out),
        Command::Density(args) => density(args, &mut out),
    }?;
    out.flush()?;
    Ok(())
}

type Out<'a> = BufWriter<io::StdoutLock<'a>>;

fn objects(
    family: Sequence,
    size: usize,
    construction: Construction,
) -> Result<Box<dyn Iterator<Item = (String, Option<String>)>>> {
    let show = |s: Skeleton| (s.to_string(), None);
    let unique = |m| Box::new(uniquely_closable_with(m, size).map(show));
    Ok(match (family, construction) {
        (Sequence::Closable, Construction::Grammar) => Box::new(closable(size).map(show)),
        (Sequence::Closable, Construction::Filter) => Box::new(closable_by_filter(size).map(show)),
        (Sequence::UniquelyClosable, Construction::Grammar) => unique(UniqueMethod::Grammar),
        (Sequence::UniquelyClosable, Construction::BinderCount) => {
            unique(UniqueMethod::BinderCount)
        }
        (Sequence::UniquelyClosable, Construction::Marker) => unique(UniqueMethod::Marker),
        (Sequence::UniquelyClosable, Construction::Filter) => Box::new(
            motzkin(size)
                .filter(Skeleton::is_uniquely_closable)
                .map(show),
        ),
        (Sequence::Closable, _) => {
            bail!(
                "construction {construction:?} does not apply to {}",
                family.name()
            )
        }
        (_, Construction::Grammar) => match family {
            Sequence::Motzkin => Box::new(motzkin(size).map(show)),
            Sequence::Binary => Box::new(motzkin(size).filter(|s| s.unary_count() == 0).map(show)),
            Sequence::ClosedTerms => Box::new(closed_terms(size).map(|t| (t.to_string(), None))),
            Sequence::Unclosable => Box::new(unclosable(size).map(show)),
            Sequence::TypableClosedTerms => Box::new(typable_closed_terms(size).map(|t| {
                let ty = infer_type(&t).expect("stream yields typable terms");
                (t.to_string(), Some(ty.to_string()))
            })),
            Sequence::TypableSkeletons => Box::new(motzkin(size).filter(is_typable_skel).map(show)),
            Sequence::UntypableSkeletons => {
                Box::new(motzkin(size).filter(is_untypable_closable_skel).map(show))
            }
            Sequence::UniquelyTypable => {
                Box::new(motzkin(size).filter(is_uniquely_typable_skel).map(show))
            }
            Sequence::UniquelyClosableTypable => {
                Box::new(uniquely_closable_typable(size).map(show))
            }
            Sequence::Catalan => Box::new(
                BinaryTree::all_with(size)
                    .into_iter()
                    .map(|b| (b.to_string(), None)),
            ),
            Sequence::Closable | Sequence::UniquelyClosable => unreachable!(),
        },
        _ => bail!(
            "construction {construction:?} does not apply to {}",
            family.name()
        ),
    })
}

fn enumerate(args: EnumerateArgs, out: &mut Out) -> Result<()> {
    args.format
        .require(&[Format::Lines, Format::Csv, Format::Json], "enumerate")?;
    let items = objects(args.family, args.size, args.construction)?;
    if args.count_only {
        let n = items.count();
        match args.format {
            Format::Json => writeln!(
                out,
                "{}",
                json!({"family": args.family.name(), "size": args.size, "count": n})
            )?,
            Format::Csv => writeln!(
                out,
                "family,size,count\n{},{},{n}",
                args.family.name(),
                args.size
            )?,
            _ => writeln!(out, "{n}")?,
        }
        return Ok(());
    }
    if args.format == Format::Csv {
        writeln!(out, "size,object,type")?;
    }
    for (object, ty) in items {
        match args.format {
            Format::Json => {
                let mut row = json!({"size": args.size, "object": object});
                if let Some(ty) = ty {
                    row["type"] = json!(ty);
                }
                writeln!(out, "{row}")?;
            }
            Format::Csv => writeln!(out, "{},{object},{}", args.size, ty.unwrap_or_default())?,
            _ => writeln!(out, "{object}")?,
        }
    }
    Ok(())
}

fn count(args: CountArgs, out: &mut Out) -> Result<()> {
    let (kind, values) = match (args.upto_size, args.upto_exponent) {
        (Some(n), _) => (
            args.family.index_name(),
            sequences::by_index(args.family, args.method, n)?,
        ),
        (None, Some(e)) => (
            "exponent",
            sequences::by_exponent(args.family, args.method, e)?,
        ),
        (None, None) => unreachable!("clap requires one bound"),
    };
    let name = args.family.name();
    match args.format {
        Format::Csv => writeln!(out, "index_kind,index,family,value")?,
        Format::Bfile => writeln!(out, "# {name}, indexed by {kind}")?,
        _ => {}
    }
    for (i, v) in values.iter().enumerate() {
        match args.format {
            Format::Csv => writeln!(out, "{kind},{i},{name},{v}")?,
            Format::Json => writeln!(
                out,
                "{}",
                json!({"index_kind": kind, "index": i, "family": name, "value": v.to_string()})
            )?,
            Format::Lines | Format::Bfile => writeln!(out, "{i} {v}")?,
        }
    }
    Ok(())
}

fn sample(args: SampleArgs, out: &mut Out) -> Result<()> {
    let family = match args.family {
        SampleFamilyArg::Closable => SampleFamily::Closable,
        SampleFamilyArg::UniquelyClosable => SampleFamily::UniquelyClosable,
    };
    let mut cfg = SamplerConfig::new(family, args.min, args.max, args.seed);
    cfg.tries_budget = args.tries;
    if args.strict_guard {
        cfg.guard = BudgetGuard::Strict;
    }
    let mut sampler = Sampler::new(cfg)?;
    for _ in 0..args.count {
        let start = Instant::now();
        let got = sampler.sample()?;
        let elapsed = start.elapsed();
        if !args.stats_only {
            writeln!(out, "{}", got.skeleton)?;
        }
        let stats = json!({
            "family": family.name(),
            "size": got.skeleton.size(),
            "attempts": got.attempts,
            "seed": args.seed,
            "elapsed_ms": elapsed.as_secs_f64() * 1e3,
        });
        writeln!(out, "{stats}")?;
    }
    Ok(())
}

struct Classification {
    skeleton: String,
    size: usize,
    closable: bool,
    uniquely_closable: bool,
    typable: bool,
    uniquely_typable: bool,
    /// Principal type of the only typable closed term, when there is one.
    ty: Option<String>,
}

fn classify_one(text: &str) -> Result<Classification> {
    let s: Skeleton = text.parse().with_context(|| format!("parsing {text:?}"))?;
    let solutions = solve_upto(&build_constraints(&s), 2);
    Ok(Classification {
        skeleton: s.to_string(),
        size: s.size(),
        closable: s.is_closable(),
        uniquely_closable: s.is_uniquely_closable(),
        typable: !solutions.is_empty(),
        uniquely_typable: solutions.len() == 1,
        ty: (solutions.len() == 1).then(|| solutions[0].ty.to_string()),
    })
}

fn classify(args: ClassifyArgs, out: &mut Out) -> Result<()> {
    args.format
        .require(&[Format::Lines, Format::Csv, Format::Json], "classify")?;
    let inputs: Vec<String> = if args.skeletons.is_empty() {
        io::stdin()
            .lock()
            .lines()
            .filter(|l| l.as_ref().map_or(true, |l| !l.trim().is_empty()))
            .map(|l| l.map(|l| l.trim().to_string()))
            .collect::<io::Result<_>>()?
    } else {
        args.skeletons
    };
    if args.format == Format::Csv {
        writeln!(
            out,
            "skeleton,size,closable,uniquely_closable,typable,uniquely_typable,type"
        )?;
    }
    for text in &inputs {
        let c = classify_one(text)?;
        let ty = c.ty.clone().unwrap_or_default();
        match args.format {
            Format::Csv => writeln!(
                out,
                "{},{},{},{},{},{},{ty}",
                c.skeleton, c.size, c.closable, c.uniquely_closable, c.typable, c.uniquely_typable
            )?,
            Format::Json => writeln!(
                out,
                "{}",
                json!({
                    "skeleton": c.skeleton, "size": c.size, "closable": c.closable,
                    "uniquely_closable": c.uniquely_closable, "typable": c.typable,
                    "uniquely_typable": c.uniquely_typable, "type": c.ty,
                })
            )?,
            _ => writeln!(
                out,
                "{} size={} closable={} uniquely_closable={} typable={} uniquely_typable={} type={}",
                c.skeleton,
                c.size,
                c.closable,
                c.uniquely_closable,
                c.typable,
                c.uniquely_typable,
                if ty.is_empty() { "-" } else { &ty }
            )?,
        }
    }
    Ok(())
}

fn bijection(args: BijectionArgs, out: &mut Out) -> Result<()> {
    args.format
        .require(&[Format::Lines, Format::Csv, Format::Json], "bijection")?;
    if args.format == Format::Csv {
        writeln!(out, "skeleton,binary_tree")?;
    }
    for s in uniquely_closable_typable(args.size) {
        let b = to_binary_tree(&s)?;
        match args.format {
            Format::Csv => writeln!(out, "{s},{b}")?,
            Format::Json => writeln!(
                out,
                "{}",
                json!({"skeleton": s.to_string(), "binary_tree": b.to_string()})
            )?,
            _ => writeln!(out, "{s} {b}")?,
        }
    }
    Ok(())
}

fn check(args: CheckArgs, out: &mut Out) -> Result<()> {
    let list = if args.sequences.is_empty() {
        Sequence::GOLDEN.to_vec()
    } else {
        args.sequences
    };
    let mut failures = 0;
    for seq in list {
        let golden = golden::load(seq, args.golden_dir.as_deref())?;
        let available = golden.values.len() - 1;
        let last = match args.upto_size {
            Some(n) if n > available => {
                bail!(
                    "reference data for {} stops at {} {available}",
                    seq.name(),
                    golden.index_kind
                )
            }
            Some(n) => n,
            None => available.min(seq.check_cutoff()),
        };
        let computed = sequences::by_index(seq, args.method, last)?;
        let mismatch = (0..=last).find(|&i| computed[i] != golden.values[i]);
        match mismatch {
            None => writeln!(
                out,
                "PASS {} {} 0..={last} (value at {last} = {})",
                seq.name(),
                golden.index_kind,
                computed[last]
            )?,
            Some(i) => {
                failures += 1;
                writeln!(
                    out,
                    "FAIL {} at {} {i}: computed {}, expected {}",
                    seq.name(),
                    golden.index_kind,
                    computed[i],
                    golden.values[i]
                )?;
            }
        }
    }
    out.flush()?;
    if failures > 0 {
        bail!("{failures} sequence(s) differ from the reference data");
    }
    Ok(())
}

fn density(args: DensityArgs, out: &mut Out) -> Result<()> {
    args.format
        .require(&[Format::Lines, Format::Csv, Format::Json], "density")?;
    let closable = sequences::by_index(Sequence::Closable, Method::Auto, args.upto_size)?;
    if args.format == Format::Csv {
        writeln!(out, "n,closable,typable,ratio")?;
    }
    for (n, c) in closable.iter().enumerate() {
        let typable = BigUint::from(motzkin(n).filter(is_typable_skel).count());
        let ratio = lambda_skeletons::series::ratio(&typable, c);
        let ratio = if ratio.is_finite() {
            format!("{ratio:.6}")
        } else {
            String::new()
        };
        match args.format {
            Format::Csv => writeln!(out, "{n},{c},{typable},{ratio}")?,
            Format::Json => writeln!(
                out,
                "{}",
                json!({"n": n, "closable": c.to_string(), "typable": typable.to_string(), "ratio": ratio})
            )?,
            _ => writeln!(out, "{n} {c} {typable} {ratio}")?,
        }
    }
    Ok(())
}
