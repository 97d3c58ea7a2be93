use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use picard_cli::config::{Format, SweepConfig};
use picard_cli::output::{Cell, Table};
use picard_cli::suites::run_suites_with;
use picard_cli::{run_eisenstein_sieve, run_phi, run_quadform, CliError, CliResult};
use picard_core::afe::{v1, v2, AfeConfig, Weight};
use picard_core::bessel::{kernel_bold_j, kernel_bold_j_integral};
use picard_core::kloosterman::{kloosterman_sum, weil_ratio, KloostermanQuery};
use picard_core::spectral::{h_direct, h_fourier, h_laplacian, h_weighted, TestFunction};
use picard_core::{GaussInt, QuadratureSpec};

#[derive(Parser)]
#[command(name = "picard", version, about = "Kuznetsov-formula numerics over the Gaussian integers")]
struct Cli {
    /// JSON sweep configuration (phi, sieve, quadform).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for random coefficient sequences; overrides the config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output file; stdout if absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// Quadrature tolerance; overrides the config.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Route {
    Direct,
    Laplacian,
    Weighted,
    Fourier,
}

#[derive(Clone, Copy, ValueEnum)]
enum WeightArg {
    V1,
    V2,
}

#[derive(Subcommand)]
enum Command {
    /// Run acceptance criteria: all, a group name, or c1..c11.
    Suites {
        #[arg(default_value = "all")]
        selector: String,
    },
    /// S(m, n; c) and its Weil ratio.
    Kloosterman {
        #[arg(long, value_parser = gauss_arg, allow_hyphen_values = true)]
        m: GaussInt,
        #[arg(long, value_parser = gauss_arg, allow_hyphen_values = true)]
        n: GaussInt,
        #[arg(long, value_parser = gauss_arg, allow_hyphen_values = true)]
        c: GaussInt,
    },
    /// The Bessel kernel J_{i kappa, p}(z).
    Bessel {
        #[arg(long, allow_hyphen_values = true)]
        kappa: f64,
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
        z: Complex64,
        /// Use the real-line integral instead of the series.
        #[arg(long)]
        integral: bool,
    },
    /// The Bessel integral H(z) of the test function with widths K, P.
    Hkernel {
        #[arg(long = "K")]
        k: f64,
        #[arg(long = "P")]
        p: f64,
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
        z: Complex64,
        #[arg(long, value_enum, default_value = "fourier")]
        route: Route,
    },
    /// Approximate functional equation weights V1, V2.
    Afe {
        #[arg(long)]
        y: f64,
        #[arg(long, allow_hyphen_values = true)]
        kappa: f64,
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, value_enum, default_value = "v1")]
        weight: WeightArg,
        /// Contour height; default log(K^2 + P^2) for the box around (kappa, p).
        #[arg(long)]
        u: Option<f64>,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
    },
    /// Bound ratios of the quadratic form B over the configured grid.
    Quadform,
    /// Geometric side Phi(c) and its partial sums.
    Phi,
    /// Eisenstein contribution against its envelope.
    Sieve,
}

fn gauss_arg(s: &str) -> Result<GaussInt, String> {
    let (a, b) = s.split_once(',').ok_or("expected RE,IM")?;
    let p = |t: &str| t.trim().parse::<i64>().map_err(|e| e.to_string());
    Ok(GaussInt::new(p(a)?, p(b)?))
}

fn complex_arg(s: &str) -> Result<Complex64, String> {
    let p = |t: &str| t.trim().parse::<f64>().map_err(|e| e.to_string());
    match s.split_once(',') {
        Some((a, b)) => Ok(Complex64::new(p(a)?, p(b)?)),
        None => Ok(Complex64::new(p(s)?, 0.0)),
    }
}

fn sweep_config(cli: &Cli) -> CliResult<SweepConfig> {
    let mut cfg = match &cli.config {
        Some(path) => SweepConfig::from_path(path)?,
        None => SweepConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.sequence.seed = Some(seed);
    }
    if let Some(tol) = cli.tol {
        cfg.quadrature.tol = tol;
    }
    if cli.out.is_some() {
        cfg.out = cli.out.clone();
    }
    if let Some(f) = cli.format {
        cfg.format = format_of(f);
    }
    cfg.validate()?;
    Ok(cfg)
}

fn format_of(f: FormatArg) -> Format {
    match f {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    }
}

fn point_spec(cli: &Cli) -> CliResult<QuadratureSpec> {
    let mut spec = QuadratureSpec::default();
    if let Some(tol) = cli.tol {
        if !(tol > 0.0) {
            return Err(CliError::Config(format!("tolerance {tol} must be positive")));
        }
        spec.tol = tol;
    }
    Ok(spec)
}

fn emit(table: &Table, format: Format, out: Option<&PathBuf>) -> CliResult<()> {
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            table.write(format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            table.write(format, &mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> CliResult<()> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(e.to_string()))?;
    }
    let format = cli.format.map(format_of).unwrap_or_default();
    match &cli.command {
        Command::Suites { selector } => {
            let (table, reports) = run_suites_with(selector, |r| eprintln!("{}", r.line()))?;
            emit(&table, format, cli.out.as_ref())?;
            let failed = reports.iter().filter(|r| !r.passed).count();
            if failed > 0 {
                return Err(CliError::SuiteFailure(failed));
            }
        }
        Command::Kloosterman { m, n, c } => {
            let q = KloostermanQuery::new(*m, *n, *c);
            let s = kloosterman_sum(&q)?;
            let mut t = Table::new("kloosterman", &["m_re", "m_im", "n_re", "n_im", "c_re", "c_im", "s_re", "s_im", "weil_ratio"]);
            let mut row: Vec<Cell> = [m.re, m.im, n.re, n.im, c.re, c.im].into_iter().map(Cell::from).collect();
            row.extend([Cell::from(s.re), Cell::from(s.im), Cell::from(weil_ratio(&q)?)]);
            t.push(row);
            emit(&t, format, cli.out.as_ref())?;
        }
        Command::Bessel { kappa, p, z, integral } => {
            let (v, err) = if *integral {
                let iv = kernel_bold_j_integral(*kappa, *p, z.norm(), z.arg(), &point_spec(cli)?)?;
                (Complex64::new(iv.value, 0.0), Some(iv.error))
            } else {
                (kernel_bold_j(*kappa, *p, *z)?, None)
            };
            let mut t = Table::new("bessel", &["kappa", "p", "z_re", "z_im", "method", "value_re", "value_im", "error"]);
            t.push(vec![
                Cell::from(*kappa),
                Cell::from(*p),
                Cell::from(z.re),
                Cell::from(z.im),
                Cell::from(if *integral { "integral" } else { "series" }),
                Cell::from(v.re),
                Cell::from(v.im),
                Cell::from(err),
            ]);
            emit(&t, format, cli.out.as_ref())?;
        }
        Command::Hkernel { k, p, z, route } => {
            let tf = TestFunction::new(*k, *p)?;
            let spec = point_spec(cli)?;
            let (name, h) = match route {
                Route::Direct => ("direct", h_direct(&tf, *z, &spec)?),
                Route::Laplacian => ("laplacian", h_laplacian(&tf, *z, &spec)?),
                Route::Weighted => ("weighted", h_weighted(&tf, *z, &spec)?),
                Route::Fourier => ("fourier", h_fourier(&tf, *z, &spec)?),
            };
            let mut t = Table::new("hkernel", &["K", "P", "z_re", "z_im", "route", "value_re", "value_im", "truncation"]);
            t.push(vec![
                Cell::from(*k),
                Cell::from(*p),
                Cell::from(z.re),
                Cell::from(z.im),
                Cell::from(name),
                Cell::from(h.value.re),
                Cell::from(h.value.im),
                Cell::from(h.truncation),
            ]);
            emit(&t, format, cli.out.as_ref())?;
        }
        Command::Afe { y, kappa, p, weight, u, eps } => {
            let u = match u {
                Some(u) => *u,
                None => AfeConfig::for_box(kappa.abs().max(1.0), (p.unsigned_abs() as f64).max(1.0))?.u,
            };
            let cfg = AfeConfig::new(*eps, u)?;
            let (name, v) = match weight {
                WeightArg::V1 => (Weight::V1, v1(*y, *kappa, *p, &cfg)?),
                WeightArg::V2 => (Weight::V2, v2(*y, *kappa, *p, &cfg)?),
            };
            let tol = point_spec(cli)?.tol;
            let mut t = Table::new("afe", &["y", "kappa", "p", "weight", "eps", "U", "value_re", "value_im", "envelope", "flagged"]);
            t.push(vec![
                Cell::from(*y),
                Cell::from(*kappa),
                Cell::from(*p),
                Cell::from(format!("{name:?}")),
                Cell::from(cfg.eps),
                Cell::from(cfg.u),
                Cell::from(v.value.re),
                Cell::from(v.value.im),
                Cell::from(v.envelope),
                Cell::from(v.flagged(tol)),
            ]);
            emit(&t, format, cli.out.as_ref())?;
        }
        Command::Quadform | Command::Phi | Command::Sieve => {
            let cfg = sweep_config(cli)?;
            let table = match cli.command {
                Command::Quadform => run_quadform(&cfg)?,
                Command::Phi => run_phi(&cfg)?,
                _ => run_eisenstein_sieve(&cfg)?,
            };
            emit(&table, cfg.format, cfg.out.as_ref())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("picard: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
