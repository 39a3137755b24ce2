use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use qdiscord_cli::{preset_names, run, CliError, CliResult, RawConfig, ScenarioConfig};

/// Detect non-Markovian dynamics from system-ancilla entropies and quantum discord.
#[derive(Debug, Parser)]
#[command(name = "qdiscord", version)]
struct Args {
    /// Scenario file (flat `key = value` text, dotted keys or `[section]` headers).
    #[arg(long)]
    config: Option<PathBuf>,

    /// Built-in scenario; a --config file is layered on top of it.
    #[arg(long)]
    preset: Option<String>,

    #[arg(long)]
    out_dir: Option<PathBuf>,

    #[arg(long)]
    dt: Option<f64>,

    /// End of the time grid; also moves the analysis window tau there.
    #[arg(long)]
    t_end: Option<f64>,

    /// Entropy units: 2 (bits) or e (nats).
    #[arg(long)]
    log_base: Option<String>,

    /// Also record the discord and commutator witness at every grid time.
    #[arg(long)]
    record_discord: bool,

    /// Fock cutoff for the Jaynes-Cummings mode.
    #[arg(long)]
    n_max: Option<usize>,

    /// Arbitrary `key=value` override, applied last. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,

    /// Print the names of the built-in scenarios and exit.
    #[arg(long)]
    list_presets: bool,
}

fn load(args: &Args) -> CliResult<ScenarioConfig> {
    if args.config.is_none() && args.preset.is_none() {
        return Err(CliError::config("give --preset or --config (see --list-presets)"));
    }
    let mut raw = match &args.preset {
        Some(name) => RawConfig::preset(name)?,
        None => RawConfig::default(),
    };
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
        raw.merge(&RawConfig::parse(&text)?);
    }
    if let Some(dir) = &args.out_dir {
        raw.set("output.dir", dir.display().to_string());
    }
    if let Some(dt) = args.dt {
        raw.set("time.dt", dt.to_string());
    }
    if let Some(t_end) = args.t_end {
        raw.set("time.t_end", t_end.to_string());
        raw.set("analysis.tau", t_end.to_string());
    }
    if let Some(base) = &args.log_base {
        raw.set("entropy.log_base", base.clone());
    }
    if args.record_discord {
        raw.set("analysis.record_discord", "true");
    }
    if let Some(n) = args.n_max {
        raw.set("jc.n_max", n.to_string());
    }
    for pair in &args.overrides {
        raw.set_pair(pair)?;
    }
    ScenarioConfig::from_raw(&raw)
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.6}"))
}

fn main() -> ExitCode {
    let args = Args::parse();
    if args.list_presets {
        for name in preset_names() {
            println!("{name}");
        }
        return ExitCode::SUCCESS;
    }
    let outcome = load(&args).and_then(|cfg| run(&cfg).map(|o| (cfg, o)));
    match outcome {
        Ok((cfg, outcome)) => {
            for a in &outcome.artifacts {
                let s = &a.summary;
                println!("model            {}", s.model);
                println!("verdict          {}", s.verdict);
                if let Some(v) = &s.discord_verdict {
                    println!("discord verdict  {v}");
                }
                println!(
                    "{:<17}{:.6} ({})",
                    format!("P~_NM({})", cfg.tau),
                    s.p_nm_tilde,
                    cfg.log_base.as_str()
                );
                println!("{:<17}{}", format!("P_NM({})", cfg.tau), fmt_opt(s.p_nm));
                println!("first detection  {}", fmt_opt(s.first_detection_time));
                println!("series           {}", a.series.display());
                println!("summary          {}", a.summary_path.display());
            }
            if let Some(index) = outcome.sweep_index {
                println!("sweep index      {}", index.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("qdiscord: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
