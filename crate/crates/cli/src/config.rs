use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

const UNITS_NOTE: &str = "Energies are in units of hbar*c/R with the well radius R = 1.";

#[derive(Debug, Parser)]
#[command(name = "cauchy-well", version, about = "Spectral solver for the Cauchy operator in the unit ball", after_help = UNITS_NOTE)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lowest eigenpairs of one orbital series.
    Solve {
        #[arg(long, default_value_t = 0)]
        l: usize,
        #[command(flatten)]
        truncation: Truncation,
        #[arg(long, default_value_t = 1, value_parser = parse_count)]
        count: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Energies for l = 0..=3 and k = 1..=count.
    Table {
        #[command(flatten)]
        truncation: Truncation,
        #[arg(long, default_value_t = 6, value_parser = parse_count)]
        count: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Pointwise residual |(-Delta)^{1/2} psi - E psi| along the polar axis.
    Detune {
        #[arg(long, default_value_t = 0)]
        l: usize,
        #[arg(long, default_value_t = 1, value_parser = parse_count)]
        k: usize,
        #[command(flatten)]
        truncation: Truncation,
        #[command(flatten)]
        common: Common,
    },
    /// Probability density on a polar (r, theta) grid at phi = 0.
    Density {
        #[arg(long, default_value_t = 1, value_parser = parse_count)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        l: usize,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        m: i64,
        #[command(flatten)]
        truncation: Truncation,
        #[arg(long, default_value_t = 101, value_parser = parse_grid)]
        grid_r: usize,
        #[arg(long, default_value_t = 91, value_parser = parse_grid)]
        grid_theta: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Radial levels against stored one-dimensional reference levels.
    CompareD1 {
        #[command(flatten)]
        truncation: Truncation,
        #[arg(long, default_value_t = 6, value_parser = parse_count)]
        count: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Quadrature of the operator on trial functions against the generating matrix.
    OracleCheck {
        #[arg(long, default_value_t = 0)]
        l: usize,
        #[arg(long, default_value_t = 3)]
        jmax: usize,
        /// Evaluation radii in (0, 0.9].
        #[arg(long, value_delimiter = ',', default_value = "0.2,0.5,0.8")]
        points: Vec<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Generating-matrix entries as rows `i,k,value` with value a[k-i, k], 0 <= i <= k <= n.
    DumpMatrix {
        #[arg(long, default_value_t = 0)]
        l: usize,
        #[command(flatten)]
        truncation: Truncation,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args)]
pub struct Truncation {
    /// Polynomial degree 2n; even and at least 2.
    #[arg(long, default_value_t = 500, value_parser = parse_degree)]
    pub degree: usize,
}

impl Truncation {
    pub fn order(&self) -> usize {
        self.degree / 2
    }
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Check the result and exit with status 1 if the check fails.
    #[arg(long)]
    pub assert: bool,
    /// Tolerance for --assert; each command has its own default.
    #[arg(long)]
    pub tol: Option<f64>,
}

impl Common {
    pub fn tolerance(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

fn parse_degree(s: &str) -> Result<usize, String> {
    let d: usize = s.parse().map_err(|e| format!("{e}"))?;
    if d < 2 || !d.is_multiple_of(2) {
        return Err(format!("degree must be even and at least 2, got {d}"));
    }
    Ok(d)
}

fn parse_count(s: &str) -> Result<usize, String> {
    let c: usize = s.parse().map_err(|e| format!("{e}"))?;
    if c == 0 {
        return Err("must be at least 1".into());
    }
    Ok(c)
}

fn parse_grid(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if n < 2 {
        return Err(format!("grid needs at least 2 points, got {n}"));
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn degree_rules() {
        assert_eq!(parse_degree("500"), Ok(500));
        assert!(parse_degree("7").is_err());
        assert!(parse_degree("0").is_err());
        assert!(parse_degree("x").is_err());
    }

    #[test]
    fn count_and_grid_rules() {
        assert!(parse_count("0").is_err());
        assert_eq!(parse_count("3"), Ok(3));
        assert!(parse_grid("1").is_err());
    }

    #[test]
    fn parses_negative_m() {
        let cli = Cli::try_parse_from(["cauchy-well", "density", "--l", "2", "--m", "-1", "--format", "json"]).unwrap();
        match cli.command {
            Command::Density { m, common, .. } => {
                assert_eq!(m, -1);
                assert_eq!(common.format, Format::Json);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
