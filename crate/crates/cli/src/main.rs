use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand as ClapSubcommand, ValueEnum};
use gstt::grey::Background;
use gstt_cli::{run, RunConfig, Subcommand, EXIT_CODE_TABLE};

#[derive(Parser)]
#[command(name = "gstt", version, about = "Grey models and fractional accumulation on time scales")]
#[command(after_help = EXIT_CODE_TABLE)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(ClapSubcommand)]
enum Command {
    /// Fit y^Delta + a y = b and print a, b, residual_norm, mape, rmse.
    #[command(after_help = EXIT_CODE_TABLE)]
    Fit(SeriesArgs),
    /// Fit, then write fitted and forecast values as `t,x_hat` CSV.
    ///
    /// Forecast times continue the spacing of the last two samples and must
    /// lie on the time scale.
    #[command(after_help = EXIT_CODE_TABLE)]
    Forecast {
        #[command(flatten)]
        series: SeriesArgs,
        /// Number of forecast points after the last sample.
        #[arg(long, default_value_t = 0)]
        horizon: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Write the accumulated series as `t,y` CSV.
    #[command(after_help = EXIT_CODE_TABLE)]
    Integrate {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compare analytic and numeric fractional integrals of t^2 as
    /// `order,t,analytic,rl_numeric,fago` CSV.
    #[command(name = "frac-compare", after_help = EXIT_CODE_TABLE)]
    FracCompare {
        #[arg(long, value_delimiter = ',', default_value = "0.4,0.3", allow_negative_numbers = true)]
        orders: Vec<f64>,
        #[arg(long = "t-max", default_value_t = 15.0)]
        t_max: f64,
        #[arg(long, default_value_t = 1.0)]
        dt: f64,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Also write an SVG chart of the comparison to this path.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SeriesArgs {
    /// CSV file with header `t,x`.
    #[arg(long)]
    input: PathBuf,
    /// Time scale such as `0..1;2..3;5`; defaults to the integers spanned
    /// by the input.
    #[arg(long)]
    timescale: Option<String>,
    #[arg(long, value_enum, default_value_t = BackgroundArg::Point)]
    background: BackgroundArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackgroundArg {
    /// z = y(t)
    Point,
    /// z = (y(t) + y(sigma(t))) / 2, the textbook GM(1,1) estimator
    Trapezoid,
}

impl From<BackgroundArg> for Background {
    fn from(b: BackgroundArg) -> Self {
        match b {
            BackgroundArg::Point => Background::Point,
            BackgroundArg::Trapezoid => Background::Trapezoid,
        }
    }
}

fn with_series(mut config: RunConfig, series: SeriesArgs) -> RunConfig {
    config.input_path = Some(series.input);
    config.timescale_spec = series.timescale;
    config.background = series.background.into();
    config
}

fn config_from(cli: Cli) -> RunConfig {
    let base = RunConfig::default();
    match cli.command {
        Command::Fit(series) => with_series(
            RunConfig {
                subcommand: Subcommand::Fit,
                ..base
            },
            series,
        ),
        Command::Forecast { series, horizon, output } => with_series(
            RunConfig {
                subcommand: Subcommand::Forecast,
                horizon,
                output_path: output,
                ..base
            },
            series,
        ),
        Command::Integrate { series, output } => with_series(
            RunConfig {
                subcommand: Subcommand::Integrate,
                output_path: output,
                ..base
            },
            series,
        ),
        Command::FracCompare {
            orders,
            t_max,
            dt,
            output,
            svg,
        } => RunConfig {
            subcommand: Subcommand::FracCompare,
            orders,
            t_max,
            dt,
            output_path: output,
            svg_path: svg,
            ..base
        },
    }
}

fn main() -> ExitCode {
    let config = config_from(Cli::parse());
    match run(&config) {
        Ok(stdout) => {
            print!("{stdout}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
