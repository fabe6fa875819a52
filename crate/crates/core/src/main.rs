use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use chain_discord::decoherence::{default_cutoff, gaussian_rates};
use chain_discord::runner::{
    emit_series_csv, emit_sweep_csv, parse_grid, preset, run_sweep, run_timeseries, Column,
    ConfigFile, ScenarioConfig, Sweep, SweepParam, PRESET_NAMES,
};
use chain_discord::{validate, Error, Result};

#[derive(Parser)]
#[command(name = "chain-discord", version, about = "Two-qubit correlations under an XY spin-chain environment")]
struct Cli {
    /// TOML file with scenario keys; command-line flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Time series for a single parameter set.
    Simulate(RunArgs),
    /// One time series per value of a swept parameter.
    Sweep {
        #[command(flatten)]
        run: RunArgs,
        /// Parameter to sweep: lambda, D, delta or gamma.
        #[arg(long)]
        param: Option<String>,
        /// Comma-separated sweep values.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        values: Option<Vec<f64>>,
    },
    /// Run a figure preset (sweep presets emit a sweep table).
    Preset {
        #[arg(value_parser = PRESET_NAMES)]
        name: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run the invariant and oracle suites.
    Validate,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum GridArg {
    Half,
    Int,
}

#[derive(Args, Clone)]
struct RunArgs {
    /// Start from a figure preset instead of the defaults.
    #[arg(long, value_parser = PRESET_NAMES)]
    preset: Option<String>,
    #[arg(long)]
    sites: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<f64>,
    /// DM strength D.
    #[arg(long, allow_hyphen_values = true)]
    dm: Option<f64>,
    /// Qubit-chain coupling g.
    #[arg(long)]
    coupling: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    cx: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    cy: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    cz: Option<f64>,
    #[arg(long)]
    t_max: Option<f64>,
    #[arg(long)]
    t_steps: Option<usize>,
    #[arg(long, value_enum)]
    mode_grid: Option<GridArg>,
    /// Cutoff for the short-time Gaussian rates reported on stderr.
    #[arg(long)]
    kc: Option<usize>,
    /// Comma-separated subset of output columns.
    #[arg(long, value_delimiter = ',')]
    columns: Option<Vec<String>>,
    /// Output file (default: stdout).
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

impl RunArgs {
    fn scenario(&self, config: Option<&ConfigFile>, forced_preset: Option<&str>) -> Result<ScenarioConfig> {
        let mut cfg = match forced_preset.or(self.preset.as_deref()) {
            Some(name) => preset(name)?,
            None => ScenarioConfig::default(),
        };
        if let Some(file) = config {
            file.apply(&mut cfg)?;
        }
        let c = &mut cfg.chain;
        if let Some(v) = self.sites { c.sites = v; }
        if let Some(v) = self.gamma { c.gamma = v; }
        if let Some(v) = self.lambda { c.lambda = v; }
        if let Some(v) = self.dm { c.dm = v; }
        if let Some(v) = self.coupling { c.coupling = v; }
        if let Some(v) = self.delta { c.delta = v; }
        if let Some(g) = self.mode_grid {
            c.grid = parse_grid(match g {
                GridArg::Half => "half",
                GridArg::Int => "int",
            })?;
        }
        if let Some(v) = self.cx { cfg.initial.cx = v; }
        if let Some(v) = self.cy { cfg.initial.cy = v; }
        if let Some(v) = self.cz { cfg.initial.cz = v; }
        if let Some(v) = self.t_max { cfg.t_max = v; }
        if let Some(v) = self.t_steps { cfg.t_steps = v; }
        if let Some(cols) = &self.columns {
            cfg.outputs = cols
                .iter()
                .map(|s| Column::parse(s).ok_or_else(|| Error::InvalidConfig(format!("unknown column `{s}`"))))
                .collect::<Result<_>>()?;
        }
        Ok(cfg)
    }

    fn sink(&self) -> Result<Box<dyn Write>> {
        let Format::Csv = self.format;
        Ok(match &self.output {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }

    fn report_rates(&self, cfg: &ScenarioConfig) {
        let Some(kc) = self.kc else { return };
        let kc = if kc == 0 { default_cutoff(&cfg.chain) } else { kc };
        match gaussian_rates(&cfg.chain, kc) {
            Ok(r) => eprintln!("gaussian rates (K_c = {}): tau1 = {:e}, tau2 = {:e}", r.cutoff, r.tau1, r.tau2),
            Err(e) => eprintln!("gaussian rates unavailable: {e}"),
        }
    }
}

fn emit(run: &RunArgs, cfg: &ScenarioConfig) -> Result<()> {
    run.report_rates(cfg);
    let out = run.sink()?;
    if cfg.sweep.is_some() {
        emit_sweep_csv(&run_sweep(cfg)?, &cfg.outputs, out)
    } else {
        emit_series_csv(&run_timeseries(cfg)?, &cfg.outputs, out)
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let config = cli.config.as_deref().map(ConfigFile::load).transpose()?;
    match cli.command {
        Command::Simulate(run) => {
            let mut cfg = run.scenario(config.as_ref(), None)?;
            cfg.sweep = None;
            emit(&run, &cfg)?;
        }
        Command::Sweep { run, param, values } => {
            let mut cfg = run.scenario(config.as_ref(), None)?;
            match (param, values) {
                (Some(p), Some(values)) => {
                    cfg.sweep = Some(Sweep { param: p.parse::<SweepParam>()?, values });
                }
                (None, None) => {}
                _ => return Err(Error::InvalidConfig("--param and --values go together".into())),
            }
            if cfg.sweep.is_none() {
                return Err(Error::InvalidConfig(
                    "no sweep configured: pass --param/--values, a sweep preset or a config file".into(),
                ));
            }
            emit(&run, &cfg)?;
        }
        Command::Preset { name, run } => {
            let cfg = run.scenario(config.as_ref(), Some(&name))?;
            emit(&run, &cfg)?;
        }
        Command::Validate => {
            let reports = validate::run_all();
            let width = reports.iter().map(|r| r.name.len()).max().unwrap_or(0);
            let mut failed = 0;
            for r in &reports {
                let status = if r.passed { "PASS" } else { "FAIL" };
                println!("{status}  {:<width$}  {:>8.2?}  {}", r.name, r.elapsed, r.detail);
                failed += usize::from(!r.passed);
            }
            println!("{} suites, {} failed", reports.len(), failed);
            if failed > 0 {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        pool = pool.num_threads(n);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: thread pool: {e}");
            return ExitCode::FAILURE;
        }
    };
    match pool.install(|| run(cli)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
