use std::fs;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser as ClapParser, Subcommand};

use hodyne::candgen::{count_expansions, generate_candidates};
use hodyne::constraints::exclusion_check;
use hodyne::net::{TrainStats, TYPICAL_WEIGHT_RANGE};
use hodyne::pipeline::{self, autodidactic_check, evaluate, load_corpus, train_stage, Config, GoldEntry, Status};
use hodyne::resources::{self, Sources};
use hodyne::{FeatureMode, GenerationLimits, Parser, Resources, SingleLayerNet, Stage, TrainConfig, TruncationPolicy};

#[derive(ClapParser)]
#[command(name = "hodyne", version, about = "Find the subject of a sentence and the head of the subject")]
struct Cli {
    #[command(flatten)]
    res: ResourceArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ResourceArgs {
    /// Mode-1 tagset file [default: built in]
    #[arg(long, global = true)]
    tagset: Option<PathBuf>,
    /// Mode-2 tagset file [default: built in]
    #[arg(long, global = true)]
    head_tagset: Option<PathBuf>,
    /// Lexicon file [default: built in]
    #[arg(long, global = true)]
    lexicon: Option<PathBuf>,
    /// Prohibition table [default: built in]
    #[arg(long, global = true)]
    prohibit: Option<PathBuf>,
    /// Grammar rules [default: built in]
    #[arg(long, global = true)]
    grammar: Option<PathBuf>,
    /// Pre-subject length bound (exclusive)
    #[arg(long, global = true, default_value_t = 15)]
    max_pre_subject: usize,
    /// Longest subject, in tokens
    #[arg(long, global = true, default_value_t = 12)]
    max_subject: usize,
    /// Tag symbols kept after the subject
    #[arg(long, global = true, default_value_t = 2)]
    window: usize,
    /// Feature tuples: tripos or both
    #[arg(long, global = true, default_value = "tripos")]
    features: String,
}

#[derive(Args)]
struct NetArgs {
    /// Trained subject net [default: train on the built-in corpus]
    #[arg(long)]
    subject_net: Option<PathBuf>,
    /// Trained head net [default: train on the built-in corpus]
    #[arg(long)]
    head_net: Option<PathBuf>,
}

#[derive(Args)]
struct TrainArgs {
    /// Stopping threshold on per-cycle accuracy
    #[arg(long, default_value_t = 0.97)]
    threshold: f64,
    /// Maximum training cycles
    #[arg(long, default_value_t = 200)]
    max_cycles: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Train one stage's net on a gold corpus
    Train {
        /// Gold corpus [default: built in]
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Stage to train: subject or head
        #[arg(long, default_value = "subject")]
        stage: String,
        /// Weight file to write [default: <stage>.net]
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        train: TrainArgs,
    },
    /// Mark subject and head in sentences, one per line
    Parse {
        /// Sentence to parse; reads stdin lines when absent
        #[arg(long)]
        sentence: Option<String>,
        #[command(flatten)]
        nets: NetArgs,
    },
    /// Score the nets against a gold corpus
    Eval {
        /// Gold corpus [default: built in]
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Print key=value lines instead of a table
        #[arg(long)]
        kv: bool,
        /// Keep excluded sentences in the accuracy denominators
        #[arg(long)]
        include_excluded: bool,
        #[command(flatten)]
        nets: NetArgs,
    },
    /// List the pruned subject candidates of a sentence
    Candidates {
        #[arg(long)]
        sentence: String,
    },
    /// Flag gold entries the trained nets disagree with
    Check {
        /// Gold corpus [default: built in]
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[command(flatten)]
        nets: NetArgs,
        #[command(flatten)]
        train: TrainArgs,
    },
}

fn read(path: &Option<PathBuf>, builtin: &'static str) -> Result<String> {
    match path {
        Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        None => Ok(builtin.to_string()),
    }
}

fn resources(args: &ResourceArgs) -> Result<Resources> {
    let mode1 = read(&args.tagset, resources::MODE1_TAGSET)?;
    let mode2 = read(&args.head_tagset, resources::MODE2_TAGSET)?;
    let lexicon = read(&args.lexicon, resources::LEXICON)?;
    let prohibitions = read(&args.prohibit, resources::PROHIBITIONS)?;
    let grammar = read(&args.grammar, resources::GRAMMAR)?;
    let limits = GenerationLimits::new(args.max_pre_subject, args.max_subject)?;
    let sources = Sources {
        mode1: &mode1,
        mode2: &mode2,
        lexicon: &lexicon,
        prohibitions: &prohibitions,
        grammar: &grammar,
    };
    Ok(Resources::from_sources(sources, limits)?)
}

fn config(args: &ResourceArgs, train: Option<&TrainArgs>) -> Result<Config> {
    let Some(features) = FeatureMode::parse(&args.features) else {
        bail!("--features must be `tripos` or `both`, not `{}`", args.features);
    };
    let mut config = Config {
        window: TruncationPolicy { window: args.window },
        features,
        ..Config::default()
    };
    if let Some(t) = train {
        config.train = TrainConfig {
            threshold: t.threshold,
            max_cycles: t.max_cycles,
        };
    }
    Ok(config)
}

fn corpus(path: &Option<PathBuf>, res: &Resources) -> Result<Vec<GoldEntry>> {
    let text = read(path, resources::CORPUS)?;
    Ok(load_corpus(&text, res)?)
}

fn report_stats(stage: Stage, stats: &TrainStats) {
    eprintln!(
        "{stage}: {} cycles, accuracy {:.4}, {} links, {:.2?}{}",
        stats.cycles,
        stats.accuracy,
        stats.link_count,
        stats.wall_time,
        if stats.converged { "" } else { " (did not converge)" }
    );
    if let (false, Some((lo, hi))) = (stats.weights_typical(), stats.weight_range) {
        eprintln!(
            "warning: {stage} weights span {lo:.3e}..{hi:.3e}, outside the typical {:.0e}..{:.0}",
            TYPICAL_WEIGHT_RANGE.0, TYPICAL_WEIGHT_RANGE.1
        );
    }
}

fn train_both(corpus: &[GoldEntry], res: &Resources, config: &Config) -> Result<(SingleLayerNet, SingleLayerNet)> {
    let mut nets = Vec::new();
    for stage in [Stage::Subject, Stage::Head] {
        let (net, stats, set) = train_stage(corpus, stage, res, config)?;
        for fault in &set.faults {
            eprintln!("corpus fault: entry {}: {}", fault.entry + 1, fault.reason);
        }
        report_stats(stage, &stats);
        nets.push(net);
    }
    let head = nets.pop().expect("two nets");
    let subject = nets.pop().expect("two nets");
    Ok((subject, head))
}

fn load_net(path: &Path, res: &Resources, stage: Stage) -> Result<SingleLayerNet> {
    let tagset = match stage {
        Stage::Subject => &res.mode1,
        Stage::Head => &res.mode2,
    };
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    SingleLayerNet::load(&text, tagset).with_context(|| format!("loading {}", path.display()))
}

fn nets(args: &NetArgs, res: &Resources, config: &Config) -> Result<(SingleLayerNet, SingleLayerNet)> {
    match (&args.subject_net, &args.head_net) {
        (Some(s), Some(h)) => Ok((load_net(s, res, Stage::Subject)?, load_net(h, res, Stage::Head)?)),
        (None, None) => {
            let corpus = load_corpus(resources::CORPUS, res)?;
            train_both(&corpus, res, config)
        }
        _ => bail!("give both --subject-net and --head-net, or neither"),
    }
}

fn print_parse(out: &mut impl Write, result: &pipeline::ParseResult, text: &str) -> io::Result<()> {
    match result.status {
        Status::Parsed => {
            let agreement = result.agreement.map_or("none", |a| a.as_str());
            writeln!(
                out,
                "{}\thead={}\tagreement={agreement}",
                result.render(),
                result.head_form().unwrap_or("-")
            )
        }
        Status::Excluded(reason) => writeln!(out, "EXCLUDED({reason})\t{text}"),
    }
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let res = resources(&cli.res)?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match &cli.command {
        Command::Train {
            corpus: path,
            stage,
            out: file,
            train,
        } => {
            let Some(stage) = Stage::parse(stage) else {
                bail!("--stage must be `subject` or `head`, not `{stage}`");
            };
            let config = config(&cli.res, Some(train))?;
            let corpus = corpus(path, &res)?;
            let (net, stats, set) = train_stage(&corpus, stage, &res, &config)?;
            for fault in &set.faults {
                eprintln!("corpus fault: entry {}: {}", fault.entry + 1, fault.reason);
            }
            report_stats(stage, &stats);
            let tagset = match stage {
                Stage::Subject => &res.mode1,
                Stage::Head => &res.mode2,
            };
            let file = file.clone().unwrap_or_else(|| PathBuf::from(format!("{stage}.net")));
            fs::write(&file, net.to_text(tagset)?).with_context(|| format!("writing {}", file.display()))?;
            writeln!(out, "wrote {} ({} training strings)", file.display(), set.items.len())?;
        }
        Command::Parse { sentence, nets: n } => {
            let config = config(&cli.res, None)?;
            let (subject, head) = nets(n, &res, &config)?;
            let parser = Parser::new(&res, &config, &subject, &head)?;
            let lines: Vec<String> = match sentence {
                Some(s) => vec![s.clone()],
                None => io::stdin().lock().lines().collect::<io::Result<_>>()?,
            };
            for line in lines.iter().filter(|l| !l.trim().is_empty()) {
                let result = parser.parse_text(line)?;
                print_parse(&mut out, &result, line)?;
            }
        }
        Command::Eval {
            corpus: path,
            kv,
            include_excluded,
            nets: n,
        } => {
            let mut config = config(&cli.res, None)?;
            config.exclude_from_denominator = !include_excluded;
            let corpus = corpus(path, &res)?;
            let (subject, head) = nets(n, &res, &config)?;
            let parser = Parser::new(&res, &config, &subject, &head)?;
            let report = evaluate(&corpus, &parser);
            if *kv {
                write!(out, "{}", report.render_kv())?;
            } else {
                write!(out, "{}", report.render_table())?;
            }
        }
        Command::Candidates { sentence } => {
            let s = res.lexicon.tag_sentence(sentence)?;
            if let Err(reason) = exclusion_check(&s, &res.limits, &res.mode1) {
                writeln!(out, "EXCLUDED({reason})")?;
                return Ok(());
            }
            let expansions = count_expansions(&s, &res.limits);
            let cands = generate_candidates(&s, &res.limits, &res.prohibitions, &res.grammar, &res.mode1);
            writeln!(
                out,
                "# {} candidates from {}{} unpruned",
                cands.len(),
                expansions.count,
                if expansions.saturated { "+" } else { "" }
            )?;
            for c in &cands {
                writeln!(out, "{}", c.render(&res.mode1))?;
            }
        }
        Command::Check {
            corpus: path,
            nets: n,
            train,
        } => {
            let config = config(&cli.res, Some(train))?;
            let corpus = corpus(path, &res)?;
            let (subject, head) = match (&n.subject_net, &n.head_net) {
                (None, None) => train_both(&corpus, &res, &config)?,
                _ => nets(n, &res, &config)?,
            };
            let parser = Parser::new(&res, &config, &subject, &head)?;
            let report = autodidactic_check(&corpus, &parser);
            for f in &report.faults {
                writeln!(out, "fault\t{}\t{}", f.entry + 1, f.reason)?;
            }
            for (entry, reason) in &report.excluded {
                writeln!(out, "excluded\t{}\t{reason}", entry + 1)?;
            }
            for flag in &report.flagged {
                writeln!(out, "flagged\t{}\tgold: {}\tpredicted: {}", flag.entry + 1, flag.gold, flag.predicted)?;
            }
            writeln!(
                out,
                "# {} flagged, {} excluded, {} faults of {} entries",
                report.flagged.len(),
                report.excluded.len(),
                report.faults.len(),
                corpus.len()
            )?;
        }
    }
    Ok(())
}
