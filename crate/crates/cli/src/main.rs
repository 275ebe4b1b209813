use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use lyzeta::checks::{CheckInput, HolomorphyReport, MonodromyReport, Verdict};
use lyzeta::lys::{lys_ztop, sis_ztop, LysSurface};
use lyzeta::resolution::{CurveResolutionGraph, StratifiedResolution};
use lyzeta::suspension::{
    fbad_set, suspend_f, suspend_g, suspend_matrix, suspend_profile, GermSummary, SuspendMatrix, ZetaProfile,
};
use lyzeta::{CycloProduct, Error, Exec, OrderSet, RatFun};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::Value;

#[derive(Parser)]
#[command(name = "lyzeta", version, about = "Topological zeta functions and monodromy of suspensions and k-LYS surfaces")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Missing twisted entries are an error instead of zero.
    #[arg(long, global = true)]
    strict: bool,
    /// Suppress warnings on stderr.
    #[arg(long, global = true)]
    quiet: bool,
    /// Skip the normalization checks on zeta profiles.
    #[arg(long, global = true)]
    unchecked: bool,
    /// Run per-ell work on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Args)]
struct Input {
    /// Input JSON file, or `-` for stdin.
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
}

#[derive(Subcommand)]
enum Cmd {
    /// Twisted topological zeta function of a resolution.
    Zeta {
        #[command(subcommand)]
        src: ZetaSrc,
    },
    /// Monodromy zeta function and characteristic polynomial of a curve.
    Acampo(Input),
    /// Zeta functions of z^k + f, or of z^m (z^k + f) when --m is given.
    Suspend {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: BigInt,
        #[arg(long)]
        m: Option<BigInt>,
        #[arg(long, requires = "m")]
        nuz: Option<BigInt>,
        /// Twist indices; all reachable indices when omitted.
        #[arg(long, value_delimiter = ',')]
        ell: Vec<BigInt>,
        /// Print the matrix form of the suspension formula.
        #[arg(long, conflicts_with_all = ["m", "ell"])]
        matrix: bool,
    },
    /// Twisted zeta functions of a k-LYS surface.
    Lys {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        ell: Vec<BigInt>,
    },
    /// Twisted zeta functions of a superisolated singularity (k = 1).
    Sis {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        ell: Vec<BigInt>,
    },
    /// Characteristic polynomials Δ and Δ̃ = (τ - 1)Δ.
    Charpoly(Input),
    /// Check a conjecture on a graph, a LYS surface or a suspension.
    Check {
        #[command(subcommand)]
        which: CheckCmd,
    },
    /// f-bad integers of a set of eigenvalue orders.
    Fbad {
        #[arg(long, value_delimiter = ',', required = true)]
        orders: Vec<BigInt>,
    },
}

#[derive(Subcommand)]
enum ZetaSrc {
    /// From a curve resolution graph.
    Graph {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "1")]
        ell: BigInt,
    },
    /// From a stratified resolution.
    Strata {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "1")]
        ell: BigInt,
    },
}

#[derive(Subcommand)]
enum CheckCmd {
    Monodromy(Input),
    Holomorphy {
        #[command(flatten)]
        input: Input,
        /// Largest twist checked; defaults to 2·lcm of the order closure.
        #[arg(long)]
        lmax: Option<BigInt>,
    },
}

struct Ctx {
    format: Format,
    strict: bool,
    quiet: bool,
    checked: bool,
    exec: Exec,
}

impl Ctx {
    fn warn(&self, msg: &str) {
        if !self.quiet {
            eprintln!("warning: {msg}");
        }
    }
}

/// Output text plus whether a conjecture check failed.
struct Output {
    text: String,
    failed: bool,
}

impl From<String> for Output {
    fn from(text: String) -> Self {
        Output { text, failed: false }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let ctx = Ctx {
        format: cli.format,
        strict: cli.strict,
        quiet: cli.quiet,
        checked: !cli.unchecked,
        exec: if cli.sequential { Exec::Sequential } else { Exec::Parallel },
    };
    match run(&ctx, cli.cmd) {
        Ok(out) => {
            print!("{}", out.text);
            if !out.text.ends_with('\n') {
                println!();
            }
            ExitCode::from(if out.failed { 2 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let internal = e.downcast_ref::<Error>().is_some_and(Error::is_internal);
            ExitCode::from(if internal { 3 } else { 1 })
        }
    }
}

fn run(ctx: &Ctx, cmd: Cmd) -> anyhow::Result<Output> {
    match cmd {
        Cmd::Zeta { src } => {
            let z = match src {
                ZetaSrc::Graph { input, ell } => load_graph(ctx, &read_json(&input)?)?.ztop(&ell),
                ZetaSrc::Strata { input, ell } => {
                    let s: StratifiedResolution = from_value(read_json(&input)?)?;
                    s.validate(ctx.checked)?;
                    s.ztop(&ell)
                }
            };
            Ok(render_ratfun(ctx, &z).into())
        }
        Cmd::Acampo(input) => {
            let g = load_graph(ctx, &read_json(&input)?)?;
            let a = g.acampo()?;
            Ok(match ctx.format {
                Format::Json => to_json(&a)?,
                Format::Text => format!("zeta: {}\nDelta: {}\n", a.zeta.render_text(), a.delta.render_text()),
                Format::Latex => format!(
                    "\\zeta(\\tau) = {}\n\\Delta(\\tau) = {}\n",
                    a.zeta.render_latex(),
                    a.delta.render_latex()
                ),
            }
            .into())
        }
        Cmd::Suspend {
            input,
            k,
            m,
            nuz,
            ell,
            matrix,
        } => {
            let f = load_profile(ctx, &read_json(&input)?)?;
            if matrix {
                return render_matrix(ctx, &suspend_matrix(&f, &k)?).map(Into::into);
            }
            let nu_z = nuz.unwrap_or_else(|| BigInt::from(1));
            if ell.is_empty() {
                let m = m.unwrap_or_default();
                let p = suspend_profile(&f, &m, &k, &nu_z, None, ctx.exec)?;
                return render_profile(ctx, &p).map(Into::into);
            }
            let vals = ctx.exec.try_map(&ell, |l| match &m {
                Some(m) => suspend_g(&f, m, &k, &nu_z, l),
                None => suspend_f(&f, &k, l),
            })?;
            render_values(ctx, &ell, vals, f.prod_nu0() * &nu_z).map(Into::into)
        }
        Cmd::Lys { input, ell } => {
            let s = load_lys(ctx, &read_json(&input)?)?;
            let vals = ctx.exec.try_map(&ell, |l| lys_ztop(&s, l))?;
            render_values(ctx, &ell, vals, BigInt::from(1)).map(Into::into)
        }
        Cmd::Sis { input, ell } => {
            let s = load_lys(ctx, &read_json(&input)?)?;
            let vals = ctx.exec.try_map(&ell, |l| sis_ztop(&s, l))?;
            render_values(ctx, &ell, vals, BigInt::from(1)).map(Into::into)
        }
        Cmd::Charpoly(input) => {
            let ci = load_check_input(ctx, &read_json(&input)?)?;
            let (_, dt) = ci.monodromy_data()?;
            let d = dt.div(&CycloProduct::bracket(1, 1));
            Ok(match ctx.format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Out<'a> {
                        delta: &'a CycloProduct,
                        delta_tilde: &'a CycloProduct,
                    }
                    to_json(&Out {
                        delta: &d,
                        delta_tilde: &dt,
                    })?
                }
                Format::Text => format!("Delta: {}\nDelta~: {}\n", d.render_text(), dt.render_text()),
                Format::Latex => format!(
                    "\\Delta(\\tau) = {}\n\\tilde\\Delta(\\tau) = {}\n",
                    d.render_latex(),
                    dt.render_latex()
                ),
            }
            .into())
        }
        Cmd::Check { which } => match which {
            CheckCmd::Monodromy(input) => {
                let ci = load_check_input(ctx, &read_json(&input)?)?;
                let r = ci.check_monodromy()?;
                Ok(Output {
                    failed: r.verdict == Verdict::Fail,
                    text: render_monodromy(ctx, &r)?,
                })
            }
            CheckCmd::Holomorphy { input, lmax } => {
                let ci = load_check_input(ctx, &read_json(&input)?)?;
                let r = ci.check_holomorphy(lmax.as_ref(), ctx.exec)?;
                Ok(Output {
                    failed: r.verdict == Verdict::Fail,
                    text: render_holomorphy(ctx, &r)?,
                })
            }
        },
        Cmd::Fbad { orders } => {
            if let Some(d) = orders.iter().find(|d| *d <= &BigInt::from(0)) {
                return Err(Error::validation("orders", format!("{d} is not a positive integer")).into());
            }
            let bad = fbad_set(&orders.into_iter().collect::<OrderSet>());
            Ok(match ctx.format {
                Format::Json => to_json(&bad)?,
                _ => bad.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","),
            }
            .into())
        }
    }
}

fn read_json(input: &Input) -> anyhow::Result<Value> {
    let text = if input.input.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        s
    } else {
        std::fs::read_to_string(&input.input).with_context(|| format!("reading {}", input.input.display()))?
    };
    serde_json::from_str(&text).context("malformed JSON")
}

fn from_value<T: serde::de::DeserializeOwned>(v: Value) -> anyhow::Result<T> {
    serde_json::from_value(v).map_err(|e| Error::Input(e.to_string()).into())
}

fn load_graph(ctx: &Ctx, v: &Value) -> anyhow::Result<CurveResolutionGraph> {
    let g: CurveResolutionGraph = from_value(v.clone())?;
    g.validate()?;
    if g.has_nonreduced_arrows() {
        let ids: Vec<&str> = g.arrows.iter().filter(|a| a.mult > BigInt::from(1)).map(|a| a.id.as_str()).collect();
        ctx.warn(&format!("non-reduced arrows {}: they only enter through N", ids.join(", ")));
    }
    Ok(g)
}

/// A zeta profile, a germ summary or a resolution graph.
fn load_profile(ctx: &Ctx, v: &Value) -> anyhow::Result<ZetaProfile> {
    if v.get("vertices").is_some() {
        return Ok(ZetaProfile::from_graph(&load_graph(ctx, v)?)?);
    }
    let p = if v.get("delta").is_some() {
        GermSummary::from_json(v, ctx.checked)?.zeta
    } else {
        ZetaProfile::from_json(v, ctx.checked)?
    };
    Ok(p.with_strict(ctx.strict))
}

fn load_lys(ctx: &Ctx, v: &Value) -> anyhow::Result<LysSurface> {
    let mut s = LysSurface::from_json(v, ctx.checked)?;
    let from_graph: Vec<bool> = match v.get("points").and_then(Value::as_array) {
        Some(ps) => ps.iter().map(|p| p.get("graph").is_some()).collect(),
        None => Vec::new(),
    };
    for (p, g) in s.points.iter_mut().zip(from_graph) {
        if !g {
            p.zeta = p.zeta.clone().with_strict(ctx.strict);
        }
    }
    Ok(s)
}

fn load_check_input(ctx: &Ctx, v: &Value) -> anyhow::Result<CheckInput> {
    let ci = CheckInput::from_json(v, ctx.checked)?;
    Ok(match ci {
        CheckInput::Lys(_) => CheckInput::Lys(load_lys(ctx, v)?),
        CheckInput::Graph(_) => CheckInput::Graph(load_graph(ctx, v)?),
        CheckInput::Suspension { k, germ } => {
            let from_graph = v["suspension"]["germ"].get("vertices").is_some();
            let germ = if from_graph {
                germ
            } else {
                GermSummary {
                    zeta: germ.zeta.with_strict(ctx.strict),
                    ..germ
                }
            };
            CheckInput::Suspension { k, germ }
        }
    })
}

fn to_json<T: Serialize>(v: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string(v)?)
}

fn render_ratfun(ctx: &Ctx, z: &RatFun) -> String {
    match ctx.format {
        Format::Text => z.render_text(),
        Format::Latex => z.render_latex(),
        Format::Json => serde_json::to_string(z).expect("RatFun serializes"),
    }
}

/// One value prints bare; several print as a profile.
fn render_values(ctx: &Ctx, ls: &[BigInt], vals: Vec<RatFun>, prod_nu0: BigInt) -> anyhow::Result<String> {
    if let [z] = vals.as_slice() {
        return Ok(render_ratfun(ctx, z));
    }
    let mut entries = BTreeMap::new();
    for (l, z) in ls.iter().zip(vals) {
        if entries.insert(l.clone(), z).is_some() {
            return Err(Error::validation("ell", format!("{l} listed twice")).into());
        }
    }
    render_profile(ctx, &ZetaProfile::unchecked(entries, prod_nu0)?)
}

fn render_profile(ctx: &Ctx, p: &ZetaProfile) -> anyhow::Result<String> {
    let mut out = String::new();
    match ctx.format {
        Format::Json => out = to_json(p)?,
        Format::Text => {
            for (l, z) in p.entries() {
                writeln!(out, "Z^({l}) = {}", z.render_text())?;
            }
        }
        Format::Latex => {
            for (l, z) in p.entries() {
                writeln!(out, "Z^{{({l})}}_{{\\mathrm{{top}}}}(s) = {}", z.render_latex())?;
            }
        }
    }
    Ok(out)
}

fn render_matrix(ctx: &Ctx, mx: &SuspendMatrix) -> anyhow::Result<String> {
    if ctx.format == Format::Json {
        return to_json(mx);
    }
    let r = |z: &RatFun| render_ratfun(ctx, z);
    let mut out = String::new();
    let ds: Vec<String> = mx.divisors.iter().map(|d| d.to_string()).collect();
    writeln!(out, "divisors: {}", ds.join(","))?;
    writeln!(out, "A: [{}]", mx.a.iter().map(r).collect::<Vec<_>>().join(", "))?;
    writeln!(out, "B:")?;
    for row in &mx.b {
        writeln!(out, "  [{}]", row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))?;
    }
    writeln!(out, "ZF(s): [{}]", mx.zf_s.iter().map(r).collect::<Vec<_>>().join(", "))?;
    writeln!(out, "Zf(t): [{}]", mx.zf_t.iter().map(r).collect::<Vec<_>>().join(", "))?;
    writeln!(out, "identity k*ZF(s) = A/t + B*Zf(t): {}", mx.identity_holds)?;
    Ok(out)
}

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
    }
}

fn render_monodromy(ctx: &Ctx, r: &MonodromyReport) -> anyhow::Result<String> {
    if ctx.format == Format::Json {
        return to_json(r);
    }
    let mut out = format!("monodromy: {}\n", verdict(r.verdict));
    for it in &r.items {
        write!(out, "  pole {} order {} {}", it.pole, it.order, if it.ok { "ok" } else { "FAIL" })?;
        if let Some(n) = &it.note {
            write!(out, " ({n})")?;
        }
        out.push('\n');
    }
    Ok(out)
}

fn render_holomorphy(ctx: &Ctx, r: &HolomorphyReport) -> anyhow::Result<String> {
    if ctx.format == Format::Json {
        return to_json(r);
    }
    let mut out = format!(
        "holomorphy: {} (l_max {}, {} checked, {} in closure)\n",
        verdict(r.verdict),
        r.l_max,
        r.items.len(),
        r.skipped
    );
    for it in r.items.iter().filter(|i| !i.ok) {
        let z = it.zeta.as_ref().ok_or_else(|| anyhow!("failed item without value"))?;
        writeln!(out, "  ell {}: Z = {} is not zero", it.ell, render_ratfun(ctx, z))?;
    }
    Ok(out)
}
