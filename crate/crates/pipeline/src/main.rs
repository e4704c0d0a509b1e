use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use folkman_core::enumerate::all_graphs;
use folkman_core::extender::populate_to_fixpoint;
use folkman_core::{
    algorithm_extend, arrows_oracle, canonical_graph, dedup, descend_vertices, maximalize, sperner_closure,
    write_graph6, ArrowChecker, ArrowOutcome, ArrowTarget, ClassSpec, ExtendParams, Graph,
};
use folkman_pipeline::config::read_config;
use folkman_pipeline::error::{PipelineError, Result, EXIT_OK};
use folkman_pipeline::io::{read_graphs, write_graphs};
use folkman_pipeline::ledger::{cited_records, derive, parse_ledger_input};
use folkman_pipeline::{filter_graphs, run_lower_bound, run_upper_bound, Constants, Predicates, RunOptions, Subject};
use rayon::prelude::*;

#[derive(Parser)]
#[command(name = "folkman", version, about = "Search tools for vertex Folkman numbers")]
struct Cli {
    /// worker threads (default: all cores)
    #[arg(long, short = 'j', global = true)]
    jobs: Option<usize>,
    /// constants table to use instead of the bundled one
    #[arg(long, global = true)]
    constants: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Debug, Default)]
struct PredArgs {
    /// vertex count
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    omega_max: Option<usize>,
    #[arg(long)]
    alpha_min: Option<usize>,
    #[arg(long)]
    alpha_max: Option<usize>,
    /// every non-edge has a common neighbour
    #[arg(long)]
    plus_k3: bool,
    #[arg(long)]
    non_sperner: bool,
    /// maximal K_q-free
    #[arg(long, value_name = "Q")]
    maximal_q: Option<usize>,
    /// arrows the target, e.g. 2,2,3
    #[arg(long, value_name = "TARGET")]
    arrows: Option<ArrowTarget>,
    /// member of H_v(target; q; n), written target;q;n
    #[arg(long)]
    class: Option<ClassSpec>,
}

impl PredArgs {
    fn predicates(&self) -> Predicates {
        Predicates {
            n: self.n,
            omega_max: self.omega_max,
            alpha_min: self.alpha_min,
            alpha_max: self.alpha_max,
            plus_k3: self.plus_k3,
            non_sperner: self.non_sperner,
            maximal_q: self.maximal_q,
            arrows: self.arrows.clone(),
            class: self.class.clone(),
        }
    }
}

#[derive(Args, Clone, Debug)]
struct Io {
    /// graph6 input (`-` for stdin; gzip accepted)
    #[arg(default_value = "-")]
    input: PathBuf,
    /// graph6 output (`-` for stdout)
    #[arg(long, short, default_value = "-")]
    output: PathBuf,
}

#[derive(Args, Clone, Debug)]
struct DriverArgs {
    config: PathBuf,
    /// directory for stage outputs and the manifest (default: <config>.work)
    #[arg(long)]
    workdir: Option<PathBuf>,
    /// run stages marked `cost = unknown`
    #[arg(long)]
    allow_unknown_cost: bool,
    /// entries in the arrowing memo (0 disables it)
    #[arg(long, default_value_t = 1 << 16)]
    cache: usize,
}

impl DriverArgs {
    fn options(&self) -> RunOptions {
        let workdir = self.workdir.clone().unwrap_or_else(|| {
            let mut p = self.config.clone().into_os_string();
            p.push(".work");
            PathBuf::from(p)
        });
        RunOptions {
            workdir,
            allow_unknown_cost: self.allow_unknown_cost,
            cache_capacity: self.cache,
        }
    }

    fn base(&self) -> PathBuf {
        self.config.parent().map(Path::to_path_buf).unwrap_or_default()
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Relabel each graph canonically, keeping order and duplicates
    Canon(Io),
    /// Keep one canonical representative per isomorphism class, sorted
    Dedup(Io),
    /// Keep graphs passing every predicate
    Filter {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        preds: PredArgs,
    },
    /// Decide arrowing for each input graph
    Arrows {
        target: ArrowTarget,
        #[arg(default_value = "-")]
        input: PathBuf,
        /// use the exhaustive colouring oracle (small graphs only)
        #[arg(long)]
        oracle: bool,
        /// print a colouring without monochromatic cliques when one exists
        #[arg(long)]
        witness: bool,
    },
    /// Maximal non-Sperner graphs with α = s in H_v(2_r,3;4;n) from their inputs
    Extend {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        /// skip the input admissibility checks
        #[arg(long)]
        no_validate: bool,
    },
    /// Maximal Sperner members of a class from the maximal members one vertex smaller
    SpernerExtend {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        class: ClassSpec,
    },
    /// All maximal K_q-free supergraphs of each input graph
    Maximalize {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        q: usize,
        /// keep only members of this class
        #[arg(long)]
        class: Option<ClassSpec>,
    },
    /// Grow a set of maximal class members by edge removal and re-maximalization
    Populate {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        class: ClassSpec,
        #[arg(long, default_value_t = 1)]
        rounds: usize,
    },
    /// Class members obtained by deleting one vertex
    Descend {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        class: ClassSpec,
    },
    /// All non-isomorphic graphs on n ≤ 10 vertices passing the predicates
    Enumerate {
        #[command(flatten)]
        preds: PredArgs,
        #[arg(long, short, default_value = "-")]
        output: PathBuf,
    },
    /// Copy an external graph6 dataset to a local normalized file
    Ingest {
        /// path, `-`, or http(s) URL
        source: String,
        #[arg(long, short)]
        output: PathBuf,
        /// SHA-256 of the source bytes; a mismatch aborts
        #[arg(long)]
        expected_hash: Option<String>,
        /// manifest to record the ingestion in
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// Run a lower-bound config (α case split); exit 0 if every claim holds, 10 otherwise
    LowerBound(DriverArgs),
    /// Run an upper-bound config; exit 0 if a witness is found, 10 otherwise
    UpperBound(DriverArgs),
    /// Close a set of bounds under the ledger rules
    Ledger {
        /// file of [bound] and [query] stanzas
        input: Option<PathBuf>,
        /// also use the Folkman-number entries of the constants table
        #[arg(long)]
        with_constants: bool,
        /// extra subjects to evaluate, e.g. 2,3;5
        #[arg(long)]
        query: Vec<Subject>,
    },
    /// Print the cited constants table
    Constants,
}

fn read(path: &Path) -> Result<Vec<Graph>> {
    read_graphs(path)
}

fn write(path: &Path, graphs: &[Graph]) -> Result<()> {
    write_graphs(path, graphs)?;
    Ok(())
}

fn run(cli: Cli) -> Result<u8> {
    let constants = match &cli.constants {
        Some(p) => Constants::load(p)?,
        None => Constants::builtin(),
    };
    let checker = ArrowChecker::with_cache(1 << 16);
    match cli.cmd {
        Cmd::Canon(io) => {
            let out: Vec<Graph> = read(&io.input)?.par_iter().map(canonical_graph).collect();
            write(&io.output, &out)?;
        }
        Cmd::Dedup(io) => {
            let input = read(&io.input)?;
            let total = input.len();
            let out = dedup(input);
            eprintln!("{} classes from {total} graphs", out.len());
            write(&io.output, &out)?;
        }
        Cmd::Filter { io, preds } => {
            let input = read(&io.input)?;
            let total = input.len();
            let preds = preds.predicates();
            let out = filter_graphs(input, &preds, &checker);
            eprintln!("kept {} of {total} ({preds})", out.len());
            write(&io.output, &out)?;
        }
        Cmd::Arrows {
            target,
            input,
            oracle,
            witness,
        } => {
            let graphs = read(&input)?;
            let outcomes: Vec<Result<ArrowOutcome>> = graphs
                .par_iter()
                .map(|g| {
                    if oracle {
                        Ok(arrows_oracle(g, &target)?)
                    } else if witness {
                        Ok(checker.arrows_with_witness(g, &target))
                    } else if checker.arrows(g, &target) {
                        Ok(ArrowOutcome::Arrows)
                    } else {
                        Ok(ArrowOutcome::Fails(folkman_core::Coloring { colors: Vec::new() }))
                    }
                })
                .collect();
            for (g, o) in graphs.iter().zip(outcomes) {
                match o? {
                    ArrowOutcome::Arrows => println!("{}\tarrows {target}", write_graph6(g)),
                    ArrowOutcome::Fails(c) if witness && !c.colors.is_empty() => {
                        let colors: String = c.colors.iter().map(|&x| char::from(b'0' + x)).collect();
                        println!("{}\tfails {target}\tcolouring {colors}", write_graph6(g));
                    }
                    ArrowOutcome::Fails(_) => println!("{}\tfails {target}", write_graph6(g)),
                }
            }
        }
        Cmd::Extend {
            io,
            n,
            r,
            s,
            no_validate,
        } => {
            let mut params = ExtendParams::new(n, r, s);
            params.validate_inputs = !no_validate;
            let run = algorithm_extend(&read(&io.input)?, &params, &checker)?;
            eprintln!(
                "{} candidate families, {} graphs after isomorph rejection, {} arrow {}",
                run.candidates,
                run.after_dedup,
                run.graphs.len(),
                params.output_target()
            );
            write(&io.output, &run.graphs)?;
        }
        Cmd::SpernerExtend { io, class } => {
            let out = sperner_closure(&read(&io.input)?, &class, &checker);
            eprintln!("{} maximal Sperner graphs in {class}", out.len());
            write(&io.output, &out)?;
        }
        Cmd::Maximalize { io, q, class } => {
            let grown: Vec<Vec<Graph>> = read(&io.input)?
                .par_iter()
                .map(|g| maximalize(g, q))
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| PipelineError::Data(e.to_string()))?;
            let mut out = dedup(grown.into_iter().flatten());
            if let Some(c) = &class {
                out.retain(|g| c.contains_with(g, &checker));
            }
            eprintln!("{} maximal graphs", out.len());
            write(&io.output, &out)?;
        }
        Cmd::Populate { io, class, rounds } => {
            let seed = read(&io.input)?;
            let (out, ran) = populate_to_fixpoint(&seed, &class, &checker, rounds)?;
            eprintln!("{} maximal graphs in {class} after {ran} rounds (seed {})", out.len(), seed.len());
            write(&io.output, &out)?;
        }
        Cmd::Descend { io, class } => {
            let out = descend_vertices(&read(&io.input)?, &class, &checker);
            eprintln!("{} graphs in {class}", out.len());
            write(&io.output, &out)?;
        }
        Cmd::Enumerate { preds, output } => {
            let p = preds.predicates();
            let n = p
                .n
                .or(p.class.as_ref().map(|c| c.n))
                .ok_or_else(|| PipelineError::Usage("enumerate needs --n or --class".into()))?;
            let all = all_graphs(n, p.hereditary()).ok_or_else(|| {
                PipelineError::Usage(format!(
                    "enumeration is capped at {} vertices",
                    folkman_core::enumerate::ENUMERATION_MAX_VERTICES
                ))
            })?;
            let generated = all.len();
            let out = filter_graphs(all, &p, &checker);
            eprintln!("{} of {generated} graphs on {n} vertices ({p})", out.len());
            write(&output, &out)?;
        }
        Cmd::Ingest {
            source,
            output,
            expected_hash,
            manifest,
        } => {
            let rep = folkman_pipeline::ingest::ingest(&source, &output, expected_hash.as_deref(), manifest.as_deref())?;
            eprintln!("ingested {} graphs from {} (sha256 {})", rep.count, rep.source, rep.source_sha256);
        }
        Cmd::LowerBound(args) => {
            let report = run_lower_bound(&read_config(&args.config)?, &args.base(), &constants, args.options())?;
            println!("{report}");
            return Ok(report.exit_code());
        }
        Cmd::UpperBound(args) => {
            let report = run_upper_bound(&read_config(&args.config)?, &args.base(), &constants, args.options())?;
            println!("{report}");
            return Ok(report.exit_code());
        }
        Cmd::Ledger {
            input,
            with_constants,
            query,
        } => {
            let (mut records, mut queries) = match &input {
                Some(p) => parse_ledger_input(&read_config(p)?, &constants)?,
                None => (Vec::new(), Vec::new()),
            };
            if with_constants {
                records.extend(cited_records(&constants));
            }
            queries.extend(query);
            for r in derive(&records, &queries)? {
                println!("{r}");
            }
        }
        Cmd::Constants => {
            println!("constants table version {}", constants.version);
            for c in constants.iter() {
                println!("{}\t{}\t{}", c.key, c.statement(), c.citation);
            }
        }
    }
    Ok(EXIT_OK)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(folkman_pipeline::EXIT_USAGE);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
