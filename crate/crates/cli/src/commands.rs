use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use absorbing::exactalg::{format_decimal, parse_number, to_f64};
use absorbing::game::represent_quadratic;
use absorbing::simulate::{estimate_gamma, PlayoutConfig};
use absorbing::solver::{
    discounted_optimal, discounted_payoff, discounted_value, lambda_sweep, limit_value, stationary_guarantee_with,
    LimitOptions, LimitResult, LimitValue,
};
use absorbing::{AbsorbingGame, Builtin, Execution, Interval, Player, QuadraticTarget, Rational, StationaryStrategy};
use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use crate::gamefile::{parse_game_file, serialize_game};
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_UNCERTIFIED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "absorbing", version, about = "Exact values of zero-sum absorbing games")]
struct Cli {
    /// Run every loop on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    /// Significant digits in decimal renderings.
    #[arg(long, global = true, default_value_t = 10, value_parser = clap::value_parser!(u8).range(1..=17))]
    digits: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Discounted value and optimal stationary strategies at one λ.
    Solve {
        #[command(flatten)]
        game: GameArg,
        #[arg(long, value_parser = number)]
        lambda: Rational,
        /// Maximum width of the value interval.
        #[arg(long, value_parser = number, default_value = "1e-12")]
        width: Rational,
    },
    /// Certify the limit value as λ → 0.
    Limit {
        #[command(flatten)]
        game: GameArg,
        #[command(flatten)]
        limit: LimitArgs,
    },
    /// Best stationary guarantee for one player in the limit.
    Guarantee {
        #[command(flatten)]
        game: GameArg,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        player: u8,
        #[arg(long, value_parser = number, default_value = "1e-9")]
        width: Rational,
    },
    /// Discounted values over a list of λ, as CSV.
    Sweep {
        #[command(flatten)]
        game: GameArg,
        /// `A..B` for every decade from A down to B, or a comma-separated list.
        #[arg(long, default_value = "1e-1..1e-7")]
        lambdas: String,
        /// Output file; standard output when omitted.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, value_parser = number, default_value = "1e-12")]
        width: Rational,
    },
    /// Monte Carlo estimate of the discounted payoff of a stationary pair.
    Simulate {
        #[command(flatten)]
        game: GameArg,
        /// Row strategy, e.g. `1/3,2/3`.
        #[arg(long)]
        x: String,
        /// Column strategy.
        #[arg(long)]
        y: String,
        #[arg(long, value_parser = number)]
        lambda: Rational,
        #[arg(short = 'n', long = "samples", default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Unabsorbed runs stop once the remaining weight falls below this.
        #[arg(long, default_value_t = 1e-9)]
        tail_eps: f64,
    },
    /// Print or save one of the built-in games.
    Example {
        /// big-match, theorem2 or sqrt-k
        name: String,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Build a game whose limit value is p + q·√k and certify it.
    Represent {
        #[arg(long, value_parser = number, allow_hyphen_values = true)]
        p: Rational,
        #[arg(long, value_parser = number, allow_hyphen_values = true)]
        q: Rational,
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        limit: LimitArgs,
    },
    /// Run the reproduction suite.
    Verify,
}

#[derive(Debug, Args)]
struct GameArg {
    /// Game file, or a built-in name (big-match, theorem2, sqrt-k:K).
    #[arg(long = "game")]
    game: String,
    /// Parameter for sqrt-k.
    #[arg(long)]
    k: Option<u32>,
}

#[derive(Debug, Args)]
struct LimitArgs {
    #[arg(long, value_parser = number, default_value = "1e-3")]
    tol: Rational,
    #[arg(long, default_value = "1e-1..1e-7")]
    lambdas: String,
    #[arg(long, value_parser = number, default_value = "1e-12")]
    width: Rational,
}

fn number(s: &str) -> Result<Rational, String> {
    parse_number(s).map_err(|e| e.to_string())
}

struct Ctx {
    exec: Execution,
    digits: usize,
}

impl Ctx {
    fn dec(&self, r: &Rational) -> String {
        format_decimal(r, self.digits)
    }

    fn interval(&self, iv: &Interval) -> String {
        format!("[{}, {}]", self.dec(&iv.lo), self.dec(&iv.hi))
    }

    fn strategy(&self, s: &StationaryStrategy) -> String {
        let parts: Vec<String> = s.probs().iter().map(|p| self.dec(p)).collect();
        format!("({})", parts.join(", "))
    }
}

/// Parses the command line, runs it and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_FAILURE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let ctx = Ctx {
        exec: if cli.sequential { Execution::Sequential } else { Execution::Parallel },
        digits: cli.digits as usize,
    };
    match dispatch(cli.command, &ctx, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_FAILURE
        }
    }
}

fn load_game(arg: &GameArg) -> Result<(String, AbsorbingGame)> {
    let path = Path::new(&arg.game);
    if path.is_file() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let game = parse_game_file(&text).with_context(|| format!("parsing {}", path.display()))?;
        return Ok((arg.game.clone(), game));
    }
    let (name, k) = match arg.game.split_once(':') {
        Some((n, k)) => (n, Some(k.parse::<u32>().map_err(|_| anyhow!("bad parameter in {:?}", arg.game))?)),
        None => (arg.game.as_str(), arg.k),
    };
    if !Builtin::NAMES.contains(&name) {
        bail!("{:?} is neither a game file nor a built-in game ({})", arg.game, Builtin::NAMES.join(", "));
    }
    let b = Builtin::from_name(name, k)?;
    let label = match b {
        Builtin::SqrtK(k) => format!("sqrt-k:{k}"),
        _ => b.name().to_string(),
    };
    Ok((label, b.game()))
}

fn header(out: &mut impl Write, label: &str, g: &AbsorbingGame) -> Result<()> {
    writeln!(out, "game: {label} ({}x{})", g.rows(), g.cols())?;
    Ok(())
}

/// `A..B` walks decades from `A` down to `B`; otherwise a comma list. The
/// result is sorted by decreasing λ without duplicates.
fn parse_lambdas(s: &str) -> Result<Vec<Rational>> {
    let mut out = if let Some((a, b)) = s.split_once("..") {
        let a = parse_number(a).with_context(|| format!("λ range {s:?}"))?;
        let b = parse_number(b).with_context(|| format!("λ range {s:?}"))?;
        let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
        let ten = Rational::from_integer(10.into());
        let mut v = Vec::new();
        let mut l = hi;
        while l >= lo {
            v.push(l.clone());
            l /= &ten;
            if v.len() > 64 {
                bail!("λ range {s:?} spans more than 64 decades");
            }
        }
        if v.last() != Some(&lo) {
            bail!("λ range {s:?}: the ends must differ by a power of ten");
        }
        v
    } else {
        s.split(',').map(|p| parse_number(p).with_context(|| format!("λ list {s:?}"))).collect::<Result<_>>()?
    };
    if out.is_empty() {
        bail!("no λ values given");
    }
    out.sort_by(|a, b| b.cmp(a));
    out.dedup();
    Ok(out)
}

fn parse_strategy(s: &str, owner: Player, len: usize) -> Result<StationaryStrategy> {
    let probs = s
        .split(',')
        .map(|p| parse_number(p).with_context(|| format!("strategy {s:?}")))
        .collect::<Result<Vec<_>>>()?;
    if probs.len() != len {
        bail!("strategy {s:?} has {} entries, the game needs {len}", probs.len());
    }
    Ok(StationaryStrategy::new(owner, probs)?)
}

fn dispatch(cmd: Command, ctx: &Ctx, out: &mut impl Write) -> Result<i32> {
    match cmd {
        Command::Solve { game, lambda, width } => {
            let (label, g) = load_game(&game)?;
            let iv = discounted_value(&g, &lambda, &width)?;
            let (x, y) = discounted_optimal(&g, &lambda, &width)?;
            header(out, &label, &g)?;
            writeln!(out, "lambda: {lambda}")?;
            writeln!(out, "v_lambda in [{}, {}]", iv.lo, iv.hi)?;
            writeln!(out, "  decimal: {} ({} significant digits)", ctx.interval(&iv), ctx.digits)?;
            writeln!(out, "x (secures v_lo): {}", ctx.strategy(&x))?;
            writeln!(out, "  exact: {x}")?;
            writeln!(out, "y (holds to v_hi): {}", ctx.strategy(&y))?;
            writeln!(out, "  exact: {y}")?;
            Ok(EXIT_OK)
        }
        Command::Limit { game, limit } => {
            let (label, g) = load_game(&game)?;
            header(out, &label, &g)?;
            limit_report(&g, &limit, ctx, out)
        }
        Command::Guarantee { game, player, width } => {
            let (label, g) = load_game(&game)?;
            let who = if player == 1 { Player::One } else { Player::Two };
            let r = stationary_guarantee_with(&g, who, &width, ctx.exec)?;
            header(out, &label, &g)?;
            writeln!(out, "player: {player}")?;
            writeln!(out, "guarantee in [{}, {}]", r.value.lo, r.value.hi)?;
            writeln!(out, "  decimal: {} ({} significant digits)", ctx.interval(&r.value), ctx.digits)?;
            let support: Vec<String> = r.support.iter().map(|i| (i + 1).to_string()).collect();
            writeln!(out, "support: {{{}}}", support.join(", "))?;
            writeln!(out, "strategy: {}", ctx.strategy(&r.strategy))?;
            writeln!(out, "  exact: {}", r.strategy)?;
            Ok(EXIT_OK)
        }
        Command::Sweep { game, lambdas, csv, width } => {
            let (_, g) = load_game(&game)?;
            let lambdas = parse_lambdas(&lambdas)?;
            let trace = lambda_sweep(&g, &lambdas, &width, ctx.exec)?;
            let sink: Box<dyn Write> = match &csv {
                Some(p) => Box::new(fs::File::create(p).with_context(|| format!("creating {}", p.display()))?),
                None => Box::new(&mut *out),
            };
            let mut w = csv::Writer::from_writer(sink);
            w.write_record(["lambda", "v_lo", "v_hi", "v_lo_exact", "v_hi_exact"])?;
            for t in &trace {
                w.write_record([
                    ctx.dec(&t.lambda),
                    ctx.dec(&t.interval.lo),
                    ctx.dec(&t.interval.hi),
                    t.interval.lo.to_string(),
                    t.interval.hi.to_string(),
                ])?;
            }
            w.flush()?;
            drop(w);
            if let Some(p) = csv {
                writeln!(out, "wrote {} rows to {}", trace.len(), p.display())?;
            }
            Ok(EXIT_OK)
        }
        Command::Simulate { game, x, y, lambda, samples, seed, tail_eps } => {
            let (label, g) = load_game(&game)?;
            let x = parse_strategy(&x, Player::One, g.rows())?;
            let y = parse_strategy(&y, Player::Two, g.cols())?;
            let mut cfg = PlayoutConfig::new(lambda.clone(), samples, seed);
            cfg.tail_eps = tail_eps;
            cfg.exec = ctx.exec;
            let est = estimate_gamma(&g, &x, &y, &cfg)?;
            let exact = discounted_payoff(&g, &lambda, &x, &y)?;
            header(out, &label, &g)?;
            writeln!(out, "lambda: {lambda}, samples: {}, seed: {seed}", est.samples)?;
            writeln!(out, "mean: {:.*e}", ctx.digits - 1, est.mean)?;
            writeln!(out, "std error: {:.3e}", est.std_error)?;
            writeln!(out, "exact gamma: {} ({})", exact, ctx.dec(&exact))?;
            let gap = (est.mean - to_f64(&exact)).abs();
            if est.std_error > 0.0 {
                writeln!(out, "|mean - exact| / std error: {:.3}", gap / est.std_error)?;
            } else {
                writeln!(out, "|mean - exact|: {gap:.3e}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Example { name, k, emit } => {
            let b = Builtin::from_name(&name, k)?;
            let text = serialize_game(&b.game());
            match emit {
                Some(p) => {
                    fs::write(&p, &text).with_context(|| format!("writing {}", p.display()))?;
                    writeln!(out, "wrote {} to {}", b.name(), p.display())?;
                }
                None => write!(out, "{text}")?,
            }
            Ok(EXIT_OK)
        }
        Command::Represent { p, q, k, limit } => {
            let t = QuadraticTarget { p, qcoef: q, k };
            let g = represent_quadratic(&t)?;
            writeln!(out, "target: {} + {}·√{} ≈ {:.*}", t.p, t.qcoef, t.k, ctx.digits, t.to_f64())?;
            write!(out, "{}", serialize_game(&g))?;
            limit_report(&g, &limit, ctx, out)
        }
        Command::Verify => {
            let report = verify::run_all(ctx.exec);
            writeln!(out, "{report}")?;
            Ok(if report.pass() { EXIT_OK } else { EXIT_FAILURE })
        }
    }
}

fn limit_report(g: &AbsorbingGame, args: &LimitArgs, ctx: &Ctx, out: &mut impl Write) -> Result<i32> {
    let opts = LimitOptions {
        tol: args.tol.clone(),
        schedule: parse_lambdas(&args.lambdas)?,
        width: args.width.clone(),
        exec: ctx.exec,
        ..LimitOptions::default()
    };
    let r = limit_value(g, &opts)?;
    write_limit(&r, ctx, out)?;
    Ok(if r.certified { EXIT_OK } else { EXIT_UNCERTIFIED })
}

fn write_limit(r: &LimitResult, ctx: &Ctx, out: &mut impl Write) -> Result<()> {
    match &r.value {
        Some(v) => {
            let approx = v.refine(&parse_number(&format!("1e-{}", ctx.digits + 2))?);
            writeln!(out, "limit value: {} ({} significant digits)", ctx.dec(&approx.midpoint()), ctx.digits)?;
            match v {
                LimitValue::Rational(q) => writeln!(out, "  exact: {q} (rational)")?,
                LimitValue::Algebraic(a) => {
                    writeln!(out, "  exact: {a}")?;
                    let note = if a.minimality_certified() { "minimal polynomial" } else { "minimality not certified" };
                    writeln!(out, "  degree: {} ({note})", a.degree())?;
                }
            }
        }
        None => writeln!(out, "limit value: none")?,
    }
    match (&r.reason, r.certified) {
        (_, true) => writeln!(out, "certified: yes")?,
        (Some(why), false) => writeln!(out, "certified: no ({why})")?,
        (None, false) => writeln!(out, "certified: no")?,
    }
    writeln!(out, "candidates: {}", r.candidates.len())?;
    for c in &r.candidates {
        let rows: Vec<String> = c.rows.iter().map(|i| (i + 1).to_string()).collect();
        let cols: Vec<String> = c.cols.iter().map(|j| (j + 1).to_string()).collect();
        writeln!(out, "  {}    rows {{{}}} cols {{{}}}", c.poly, rows.join(","), cols.join(","))?;
    }
    writeln!(out, "lambda trace:")?;
    for (i, t) in r.lambda_trace.iter().enumerate() {
        let d = r.distances.get(i).map(|d| format_decimal(d, 3)).unwrap_or_else(|| "-".into());
        writeln!(out, "  lambda {:<12} v {}  distance {d}", ctx.dec(&t.lambda), ctx.interval(&t.interval))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use absorbing::exactalg::rat;
    use num_traits::Signed;

    #[test]
    fn decade_ranges() {
        let v = parse_lambdas("1e-1..1e-3").unwrap();
        assert_eq!(v, vec![rat(1, 10), rat(1, 100), rat(1, 1000)]);
        assert_eq!(parse_lambdas("1e-3..1e-1").unwrap(), v);
        assert_eq!(parse_lambdas("1/100,1/2,1/100").unwrap(), vec![rat(1, 2), rat(1, 100)]);
        assert!(parse_lambdas("1e-1..3e-3").is_err());
        assert!(parse_lambdas("x").is_err());
    }

    #[test]
    fn strategies() {
        let s = parse_strategy("1/3, 2/3", Player::One, 2).unwrap();
        assert_eq!(s.probs(), &[rat(1, 3), rat(2, 3)]);
        assert!(parse_strategy("1/3,1/3", Player::One, 2).is_err());
        assert!(parse_strategy("1", Player::One, 2).is_err());
        assert!(parse_strategy("0.5,0.5", Player::Two, 2).unwrap().probs()[0].is_positive());
    }
}
