use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use treehaar::experiment::{
    list_experiments, run, ExperimentConfig, OutputFormat, EXIT_OK, EXIT_USAGE,
};

#[derive(Parser, Debug)]
#[command(
    name = "treehaar",
    version,
    about = "Experiments on groups acting on regular rooted trees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Built-in group: full-wreath:d, cyclic-wreath:p, abelian-level:p, affine:d, grigorchuk
    #[arg(long, global = true)]
    group: Option<String>,
    /// JSON group definition
    #[arg(long, global = true)]
    group_file: Option<PathBuf>,
    #[arg(short = 'n', long = "depth", global = true)]
    depth: Option<usize>,
    #[arg(short = 'm', long = "section-depth", global = true)]
    section_depth: Option<usize>,
    #[arg(short = 'D', long = "pattern-depth", global = true)]
    pattern_depth: Option<usize>,
    #[arg(short = 'k', long = "rank", visible_alias = "k", global = true)]
    rank: Option<usize>,
    #[arg(short = 'L', long = "max-word-len", global = true)]
    max_word_len: Option<usize>,
    #[arg(long, global = true)]
    samples: Option<u64>,
    #[arg(long, global = true)]
    alpha: Option<f64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write the report here instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Refuse randomized runs without an explicit seed
    #[arg(long, global = true)]
    ci: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the experiment catalog
    List,
    /// Order of the level-n quotient
    Enumerate,
    /// Structural property check
    Checks {
        #[arg(long, value_parser = ["transitive", "fractal", "ssf", "pattern", "branching"])]
        kind: String,
    },
    /// One Haar-random element
    Sample,
    /// Haar measure of a cylinder set
    Cone {
        /// Portrait such as 21(12(),21()); repeatable
        #[arg(long = "element")]
        elements: Vec<String>,
    },
    /// Uniformity of sections at level-n vertices
    SectionMp {
        #[arg(long = "vertex")]
        vertices: Vec<String>,
    },
    /// Kernel size of the joint section map
    Kernel {
        #[arg(long = "vertex")]
        vertices: Vec<String>,
        /// Run even when the cousin precondition fails
        #[arg(long)]
        unchecked: bool,
    },
    /// Independence of sections
    Independence {
        #[arg(long = "vertex")]
        vertices: Vec<String>,
        #[arg(long, conflicts_with = "chi2")]
        exact: bool,
        #[arg(long)]
        chi2: bool,
    },
    /// Fixed-point proportion
    Fpp {
        #[arg(long, conflicts_with_all = ["mc", "curve", "recursion"])]
        exact: bool,
        #[arg(long, conflicts_with_all = ["curve", "recursion"])]
        mc: bool,
        #[arg(long, conflicts_with = "recursion")]
        curve: bool,
        #[arg(long)]
        recursion: bool,
        #[arg(long)]
        p: Option<usize>,
    },
    /// Short words trivial at depth n on random tuples
    Freeness {
        /// Verdict: at most this many tuples with a trivial word
        #[arg(long)]
        max_failures: Option<u64>,
    },
    /// Fixed vertices of word evaluations
    FreeAction {
        #[arg(long)]
        max_failures: Option<u64>,
    },
    /// Non-cousin property along a trajectory
    Cousins {
        /// Signed letters, e.g. "1 2 -1" or "x1 x2^-1"
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        vertex: String,
    },
    /// Probability that k random vectors span F_p^d
    Formula {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        d: usize,
    },
    /// Monte Carlo estimate of the same probability
    FormulaMc {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        d: usize,
        /// Sample d x k matrices instead of k x d
        #[arg(long)]
        transposed: bool,
    },
}

fn mode(flags: &[(bool, &str)]) -> Option<String> {
    flags
        .iter()
        .find(|(set, _)| *set)
        .map(|(_, m)| m.to_string())
}

fn config(cli: Cli) -> Option<ExperimentConfig> {
    let mut c = ExperimentConfig {
        group: cli.group,
        group_file: cli.group_file,
        n: cli.depth,
        m: cli.section_depth,
        pattern_depth: cli.pattern_depth,
        k: cli.rank,
        max_len: cli.max_word_len,
        samples: cli.samples,
        alpha: cli.alpha,
        seed: cli.seed,
        format: match cli.format {
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
        },
        ci: cli.ci,
        out: cli.out,
        threads: cli.threads,
        ..Default::default()
    };
    c.experiment = match cli.command {
        Command::List => return None,
        Command::Enumerate => "enumerate".into(),
        Command::Checks { kind } => {
            c.mode = Some(kind);
            "checks".into()
        }
        Command::Sample => "sample".into(),
        Command::Cone { elements } => {
            c.elements = elements;
            "cone".into()
        }
        Command::SectionMp { vertices } => {
            c.vertices = vertices;
            "section-mp".into()
        }
        Command::Kernel {
            vertices,
            unchecked,
        } => {
            c.vertices = vertices;
            c.unchecked = unchecked;
            "kernel".into()
        }
        Command::Independence {
            vertices,
            exact,
            chi2,
        } => {
            c.vertices = vertices;
            c.mode = mode(&[(exact, "exact"), (chi2, "chi2")]);
            "independence".into()
        }
        Command::Fpp {
            exact,
            mc,
            curve,
            recursion,
            p,
        } => {
            c.mode = mode(&[
                (exact, "exact"),
                (mc, "mc"),
                (curve, "curve"),
                (recursion, "recursion"),
            ]);
            c.p = p;
            "fpp".into()
        }
        Command::Freeness { max_failures } => {
            c.max_failures = max_failures;
            "freeness".into()
        }
        Command::FreeAction { max_failures } => {
            c.max_failures = max_failures;
            "free-action".into()
        }
        Command::Cousins { word, vertex } => {
            c.word = Some(word);
            c.vertices = vec![vertex];
            "cousins".into()
        }
        Command::Formula { p, d } => {
            c.p = Some(p);
            c.d = Some(d);
            "formula".into()
        }
        Command::FormulaMc { p, d, transposed } => {
            c.p = Some(p);
            c.d = Some(d);
            c.transposed = transposed;
            "formula-mc".into()
        }
    };
    Some(c)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let Some(cfg) = config(cli) else {
        for e in list_experiments() {
            let modes = if e.modes.is_empty() {
                String::new()
            } else {
                format!(" ({})", e.modes.join("|"))
            };
            println!("{}{modes}\t{}", e.name, e.description);
        }
        return ExitCode::from(EXIT_OK as u8);
    };
    let outcome = run(&cfg).and_then(|report| {
        let text = report.render()?;
        match &cfg.out {
            Some(path) => report.write(path)?,
            None => print!("{text}"),
        }
        Ok(report)
    });
    match outcome {
        Ok(report) => {
            for (name, ok) in &report.verdicts {
                if !ok {
                    eprintln!("verdict failed: {name}");
                }
            }
            if report.seed_defaulted && report.streams["layout"] != "none" {
                eprintln!("note: no --seed given, used seed {}", report.seed);
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
