//! `selbound` subcommands. Output is tab-separated: one `#` header naming the
//! columns, then one record per line. Every record starts with the provenance
//! columns `p, F, K, L, conjectural, mode` (`-` where a column does not apply).

use std::ffi::OsString;
use std::fmt::{self, Write as _};
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_integer::Integer as _;
use num_traits::Signed;
use selbound_core::arith::{Integer, Rational};
use selbound_core::bounds::{
    descent_failure_avg_bound, fixed_space_avg_bound, mw_multiplicity_corollary, rank_avg_bound,
    selmer_avg_bound, Bound, BoundInterval, BoundKind, BoundRequest, DEFAULT_CUTOFF,
};
use selbound_core::curves::{quadratic_twist, reduction_type, CurveParams, ReductionType};
use selbound_core::lattice::{
    fixed_dim_mod_p, h1_p_torsion_dim, mw_multiplicity_hypothesis_check, rational_fixed_rank,
    HypothesisCheck, LatticeDesc,
};
use selbound_core::localdata::{default_scan_limit, genus_bound, GenusMode};
use selbound_core::numfield::ExtensionDesc;

use crate::config::{ExperimentConfig, LatticeConfig, ModeName};
use crate::stats::{self, ExperimentReport};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "selbound",
    version,
    about = "Average Selmer and rank bounds in extensions, and the census checks behind them"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// C_p(K/F) as a rigorous interval
    Constants(ExtArgs),
    /// Average bounds built on C_p(K/F)
    Bound {
        #[command(subcommand)]
        which: BoundCommand,
    },
    /// Genus-theory bound for one curve
    Genus {
        #[command(flatten)]
        ext: ExtArgs,
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, value_enum)]
        mode: Option<ModeName>,
    },
    /// Reduction type of one curve at a prime ℓ ≥ 5
    Reduction {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        ell: u64,
    },
    /// Quadratic twist by a squarefree D, normalized back into the family
    Twist {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long = "D", allow_negative_numbers = true)]
        d: Integer,
    },
    /// Fixed spaces and H¹ p-torsion of a lattice
    Lattice {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        p: u64,
    },
    /// Exhaustive checks over the height-X family
    Census {
        #[command(subcommand)]
        which: CensusCommand,
    },
}

#[derive(Debug, Subcommand)]
enum BoundCommand {
    /// Average dim of the Galois-fixed Selmer space, F = Q
    FixedSpace(ExtArgs),
    /// Average dim Sel_p(E/K) for [K:F] a power of p
    Selmer(ExtArgs),
    /// Average rank of E(K)
    Rank(ExtArgs),
    /// Average Galois descent failure
    Descent(ExtArgs),
    /// Average Mordell-Weil lattice multiplicity
    Mw {
        #[command(flatten)]
        ext: ExtArgs,
        #[arg(long)]
        lattice: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum CensusCommand {
    /// Size of the family against 4X^{5/6}/ζ(10)
    Count(CensusArgs),
    /// Fraction with bad reduction other than I₁ at ℓ
    Density {
        #[command(flatten)]
        census: CensusArgs,
        #[arg(long)]
        ell: u64,
    },
    /// Mean genus-theory bound against C_p(K/F)
    GenusAvg {
        #[command(flatten)]
        census: CensusArgs,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        cutoff: Option<u64>,
        #[arg(long, value_enum)]
        mode: Option<ModeName>,
    },
    /// Fraction with a rational point of order 2
    Torsion(CensusArgs),
}

#[derive(Debug, Args)]
struct ExtArgs {
    /// TOML manifest describing K/F (default K = F = Q)
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    p: Option<u64>,
    /// Prime-sum cutoff L
    #[arg(long)]
    cutoff: Option<u64>,
    /// Admit primes other than 2, 3, 5
    #[arg(long)]
    conjectural: bool,
    /// Threads for the prime sum (output does not depend on it)
    #[arg(long)]
    shards: Option<usize>,
}

#[derive(Debug, Args)]
struct CurveArgs {
    #[arg(long = "A", allow_negative_numbers = true)]
    a: Integer,
    #[arg(long = "B", allow_negative_numbers = true)]
    b: Integer,
}

#[derive(Debug, Args)]
struct CensusArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    /// Height bound; accepts 10000000, 10^7 or 1e7
    #[arg(long = "X", value_parser = parse_height)]
    x: Option<u64>,
    /// Worker threads (output does not depend on it)
    #[arg(long)]
    shards: Option<usize>,
}

fn parse_height(s: &str) -> Result<u64, String> {
    let s = s.replace('_', "");
    let power = |base: &str, exp: &str| -> Option<u64> {
        let base: u64 = base.parse().ok()?;
        base.checked_mul(10u64.checked_pow(exp.parse().ok()?)?)
    };
    let parsed = if let Some(exp) = s.strip_prefix("10^") {
        power("1", exp)
    } else if let Some((base, exp)) = s.split_once(['e', 'E']) {
        power(base, exp)
    } else {
        s.parse().ok()
    };
    parsed.ok_or_else(|| format!("not a height: {s:?}"))
}

/// Run the CLI on `args` (program name first). Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match execute(cli.command).and_then(|text| Ok(out.write_all(text.as_bytes())?)) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "selbound: {e}");
            e.exit_code()
        }
    }
}

/// Config file plus flag overrides.
struct Settings {
    config: ExperimentConfig,
}

impl Settings {
    fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let config = match path {
            Some(p) => ExperimentConfig::load(p)?,
            None => ExperimentConfig::default(),
        };
        Ok(Settings { config })
    }

    fn p(&self, flag: Option<u64>) -> Result<u64, CliError> {
        flag.or(self.config.p)
            .ok_or_else(|| CliError::Usage("--p is required".into()))
    }

    fn x(&self, flag: Option<u64>) -> Result<u64, CliError> {
        flag.or(self.config.x)
            .ok_or_else(|| CliError::Usage("--X is required".into()))
    }

    fn cutoff(&self, flag: Option<u64>) -> u64 {
        flag.or(self.config.cutoff).unwrap_or(DEFAULT_CUTOFF)
    }

    fn mode(&self, flag: Option<ModeName>) -> GenusMode {
        flag.or(self.config.mode)
            .map_or(GenusMode::Refined, GenusMode::from)
    }

    fn conjectural(&self, flag: bool) -> bool {
        flag || self.config.conjectural.unwrap_or(false)
    }

    fn extension(&self) -> Result<ExtensionDesc, CliError> {
        self.config.extension()
    }
}

/// The leading columns of every record.
#[derive(Default)]
struct Provenance {
    p: Option<u64>,
    fields: Option<(String, String)>,
    cutoff: Option<u64>,
    conjectural: Option<bool>,
    mode: Option<GenusMode>,
}

impl Provenance {
    const HEADER: &'static str = "p\tF\tK\tL\tconjectural\tmode";

    fn of_request(req: &BoundRequest) -> Self {
        Provenance {
            p: Some(req.p),
            fields: Some(field_names(&req.ext)),
            cutoff: Some(req.cutoff),
            conjectural: Some(req.conjectural),
            mode: None,
        }
    }
}

fn field_names(ext: &ExtensionDesc) -> (String, String) {
    (ext.base().to_string(), ext.top().to_string())
}

fn dash<T: fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".into(), ToString::to_string)
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (base, top) = match &self.fields {
            Some((b, t)) => (b.as_str(), t.as_str()),
            None => ("-", "-"),
        };
        write!(
            f,
            "{}\t{base}\t{top}\t{}\t{}\t{}",
            dash(&self.p),
            dash(&self.cutoff),
            dash(&self.conjectural),
            dash(&self.mode)
        )
    }
}

/// A header and a single record.
fn table(payload_header: &str, provenance: &Provenance, payload: &str) -> String {
    format!(
        "# {}\t{payload_header}\n{provenance}\t{payload}\n",
        Provenance::HEADER
    )
}

const BOUND_HEADER: &str = "quantity\tlo\thi\tlo_exact\thi_exact\tnote";

/// `x` to 6 decimals, rounded toward −∞ or +∞.
fn decimal6(x: &Rational, up: bool) -> String {
    let scaled = x * Rational::from_integer(Integer::from(1_000_000));
    let n = if up { scaled.ceil() } else { scaled.floor() }.to_integer();
    let (whole, frac) = n.abs().div_rem(&Integer::from(1_000_000));
    let sign = if n.is_negative() { "-" } else { "" };
    format!("{sign}{whole}.{frac:06}")
}

fn interval_columns(interval: &BoundInterval) -> String {
    format!(
        "{}\t{}\t{}\t{}",
        decimal6(interval.lo(), false),
        decimal6(interval.hi(), true),
        interval.lo(),
        interval.hi()
    )
}

fn bound_record(bound: &Bound) -> String {
    format!(
        "{}\t{}\t{}",
        bound.kind,
        interval_columns(&bound.interval),
        bound.note.unwrap_or("-")
    )
}

fn request(ext: &ExtArgs) -> Result<(BoundRequest, usize), CliError> {
    let settings = Settings::load(ext.config.as_deref())?;
    let req = BoundRequest::new(
        settings.p(ext.p)?,
        settings.extension()?,
        settings.cutoff(ext.cutoff),
        settings.conjectural(ext.conjectural),
    )?;
    Ok((req, ext.shards.unwrap_or_else(stats::default_shards)))
}

fn load_lattice(path: &Path) -> Result<LatticeDesc, CliError> {
    LatticeConfig::load(path)?.build()
}

fn execute(command: Command) -> Result<String, CliError> {
    match command {
        Command::Constants(ext) => {
            let (req, shards) = request(&ext)?;
            let c = stats::c_constant_sharded(&req, shards)?;
            let bound = Bound {
                kind: BoundKind::Constant,
                interval: c,
                note: None,
            };
            Ok(table(
                BOUND_HEADER,
                &Provenance::of_request(&req),
                &bound_record(&bound),
            ))
        }
        Command::Bound { which } => run_bound(which),
        Command::Genus { ext, curve, mode } => {
            let settings = Settings::load(ext.config.as_deref())?;
            let p = settings.p(ext.p)?;
            let extension = settings.extension()?;
            let mode = settings.mode(mode);
            let c = CurveParams::new(curve.a, curve.b)?;
            let report = genus_bound(&c, &extension, p, mode, &default_scan_limit())?;
            let terms = if report.g1_terms.is_empty() {
                "-".to_string()
            } else {
                let mut s = String::new();
                for (i, (ell, g)) in report.g1_terms.iter().enumerate() {
                    let sep = if i > 0 { "," } else { "" };
                    let _ = write!(s, "{sep}{ell}:{g}");
                }
                s
            };
            let provenance = Provenance {
                p: Some(p),
                fields: Some(field_names(&extension)),
                mode: Some(mode),
                ..Default::default()
            };
            let payload = format!(
                "{}\t{}\t{}\t{}\t{}\t{terms}",
                c.a(),
                c.b(),
                report.g0_cap,
                report.g1(),
                report.total
            );
            Ok(table(
                "A\tB\tg0\tg1\ttotal\tg1_terms",
                &provenance,
                &payload,
            ))
        }
        Command::Reduction { curve, ell } => {
            let c = CurveParams::new(curve.a, curve.b)?;
            let kind = match reduction_type(&c, ell)? {
                ReductionType::Good => "good".to_string(),
                ReductionType::Multiplicative { n, split: true } => format!("I{n} split"),
                ReductionType::Multiplicative { n, split: false } => format!("I{n} nonsplit"),
                ReductionType::Additive => "additive".to_string(),
            };
            let payload = format!("{}\t{}\t{ell}\t{kind}", c.a(), c.b());
            Ok(table("A\tB\tell\ttype", &Provenance::default(), &payload))
        }
        Command::Twist { curve, d } => {
            let c = CurveParams::new(curve.a, curve.b)?;
            let t = quadratic_twist(&c, &d)?;
            let payload = format!("{}\t{}\t{d}\t{}\t{}", c.a(), c.b(), t.a(), t.b());
            Ok(table(
                "A\tB\tD\ttwist_A\ttwist_B",
                &Provenance::default(),
                &payload,
            ))
        }
        Command::Lattice { lattice, p } => {
            let lattice = load_lattice(&lattice)?;
            let fixed = fixed_dim_mod_p(&lattice, p)?;
            let rational = rational_fixed_rank(&lattice);
            let h1 = h1_p_torsion_dim(&lattice, p)?;
            let hypothesis = match mw_multiplicity_hypothesis_check(&lattice, p)? {
                HypothesisCheck::Satisfied(d) => format!("satisfied({d})"),
                HypothesisCheck::Violated => "violated".into(),
            };
            let provenance = Provenance {
                p: Some(p),
                ..Default::default()
            };
            let payload = format!(
                "{}\t{}\t{fixed}\t{rational}\t{h1}\t{hypothesis}",
                lattice.rank(),
                lattice.group_order()
            );
            Ok(table(
                "rank\tgroup_order\tfixed_dim_mod_p\trational_fixed_rank\th1_p_torsion\thypothesis",
                &provenance,
                &payload,
            ))
        }
        Command::Census { which } => run_census(which),
    }
}

fn run_bound(which: BoundCommand) -> Result<String, CliError> {
    let (ext, lattice) = match &which {
        BoundCommand::FixedSpace(ext)
        | BoundCommand::Selmer(ext)
        | BoundCommand::Rank(ext)
        | BoundCommand::Descent(ext) => (ext, None),
        BoundCommand::Mw { ext, lattice } => (ext, Some(lattice)),
    };
    let (req, shards) = request(ext)?;
    let c = stats::c_constant_sharded(&req, shards)?;
    let bound = match &which {
        BoundCommand::FixedSpace(_) => fixed_space_avg_bound(&req, &c)?,
        BoundCommand::Selmer(_) => selmer_avg_bound(&req, &c)?,
        BoundCommand::Rank(_) => rank_avg_bound(&req, &c)?,
        BoundCommand::Descent(_) => descent_failure_avg_bound(&c),
        BoundCommand::Mw { .. } => {
            let lattice = load_lattice(lattice.expect("mw carries a lattice"))?;
            let dim = fixed_dim_mod_p(&lattice, req.p)?;
            mw_multiplicity_corollary(&req, &c, dim)?
        }
    };
    Ok(table(
        BOUND_HEADER,
        &Provenance::of_request(&req),
        &bound_record(&bound),
    ))
}

fn run_census(which: CensusCommand) -> Result<String, CliError> {
    let census = match &which {
        CensusCommand::Count(c) | CensusCommand::Torsion(c) => c,
        CensusCommand::Density { census, .. } | CensusCommand::GenusAvg { census, .. } => census,
    };
    let settings = Settings::load(census.config.as_deref())?;
    let x = settings.x(census.x)?;
    let shards = census.shards.unwrap_or_else(stats::default_shards);
    let (report, provenance): (ExperimentReport, Provenance) = match which {
        CensusCommand::Count(_) => (stats::count_curves(x, shards)?, Provenance::default()),
        CensusCommand::Torsion(_) => (
            stats::two_torsion_fraction(x, shards)?,
            Provenance::default(),
        ),
        CensusCommand::Density { ell, .. } => (
            stats::bad_not_i1_fraction(ell, x, shards)?,
            Provenance::default(),
        ),
        CensusCommand::GenusAvg {
            p, cutoff, mode, ..
        } => {
            let req = BoundRequest::new(
                settings.p(p)?,
                settings.extension()?,
                settings.cutoff(cutoff),
                settings.conjectural(false),
            )?;
            let mode = settings.mode(mode);
            let report = stats::avg_genus_bound_empirical(&req, x, mode, shards)?;
            let provenance = Provenance {
                mode: Some(mode),
                ..Provenance::of_request(&req)
            };
            (report, provenance)
        }
    };
    Ok(table(
        ExperimentReport::HEADER,
        &provenance,
        &report.to_string(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn directed_decimals() {
        let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
        assert_eq!(decimal6(&r(1, 3), false), "0.333333");
        assert_eq!(decimal6(&r(1, 3), true), "0.333334");
        assert_eq!(decimal6(&r(-1, 3), false), "-0.333334");
        assert_eq!(decimal6(&r(-1, 3), true), "-0.333333");
        assert_eq!(decimal6(&r(5, 1), true), "5.000000");
        assert_eq!(decimal6(&r(-1, 2_000_000), true), "0.000000");
    }

    #[test]
    fn heights() {
        assert_eq!(parse_height("10000000"), Ok(10_000_000));
        assert_eq!(parse_height("10^7"), Ok(10_000_000));
        assert_eq!(parse_height("1e7"), Ok(10_000_000));
        assert_eq!(parse_height("4E3"), Ok(4000));
        assert_eq!(parse_height("1_000"), Ok(1000));
        assert!(parse_height("10^30").is_err());
        assert!(parse_height("x").is_err());
    }

    #[test]
    fn provenance_columns() {
        assert_eq!(Provenance::default().to_string(), "-\t-\t-\t-\t-\t-");
        assert_eq!(Provenance::HEADER.split('\t').count(), 6);
    }
}
