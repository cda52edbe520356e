mod config;
mod output;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{anyhow, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use classalg::algebra::{WreathAlgebra, WreathClassFunction};
use classalg::character::CharacterTable;
use classalg::class_algebra::{euler_number, ClassFunctionG};
use classalg::group::{load_group, FiniteGroup, GroupBundle};
use classalg::report::Report;
use classalg::stable::{stable_algebra_build, verify_table, StableContext};
use classalg::suites;
use classalg::winf::{p_l_polynomial, VoForm};
use classalg::wreath::{class_table, Wreath};

use config::{Flags, RunConfig};
use output::{Output, Table};

#[derive(Parser)]
#[command(name = "classalg", version, about = "Exact class algebras of wreath products and their Fock space")]
struct Cli {
    #[command(flatten)]
    flags: Flags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classes, centralizers and character table of the base group
    Group,
    /// Conjugacy classes of the wreath product at level n
    Wreath {
        #[command(subcommand)]
        cmd: WreathCmd,
    },
    /// Jucys-Murphy elements and their symmetric functions
    Jm {
        #[command(subcommand)]
        cmd: JmCmd,
    },
    /// Fock space operator identities
    Fock {
        #[command(subcommand)]
        cmd: FockCmd,
    },
    /// W-infinity action, bracket, vertex operator, P_l
    Winf {
        #[command(subcommand)]
        cmd: WinfCmd,
    },
    /// Stable structure constants of the class algebras
    Stable {
        #[command(subcommand)]
        cmd: StableCmd,
    },
    /// Dimensions of the subalgebras generated by Xi_n^i(K^c) and P_i(K^c, n)
    Generators,
    /// Every verification suite
    All,
}

#[derive(Subcommand)]
enum WreathCmd {
    /// Types, class sizes and centralizer orders of G_n
    Classes,
}

#[derive(Subcommand)]
enum JmCmd {
    /// Support of each xi_j and class decomposition of each Xi_n^k(K^c)
    Table,
    /// Commutativity and the eta/epsilon product formulas
    Verify,
}

#[derive(Clone, Copy, ValueEnum)]
enum FockCheck {
    Heisenberg,
    Virasoro,
    Cubic,
    Covcomm,
    /// Symbolic against induction realization
    Dual,
}

#[derive(Subcommand)]
enum FockCmd {
    Verify {
        #[arg(value_enum)]
        check: FockCheck,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum WinfCheck {
    Bracket,
    Vo,
    LevelOne,
}

#[derive(Clone, Copy, ValueEnum)]
enum VoNorm {
    /// q/(q-1)^2 (V_0(gamma; q^{h^2}) - 1)
    Literal,
    /// h Q/(Q-1)^2 (V_0(gamma; Q) - 1), Q = q^h
    Corrected,
}

#[derive(Subcommand)]
enum WinfCmd {
    Verify {
        #[arg(value_enum)]
        check: WinfCheck,
        /// Normalization for the vertex-operator check
        #[arg(long, value_enum, default_value = "literal")]
        form: VoNorm,
    },
    /// Print P_l as a normally ordered polynomial
    Pl {
        #[arg(long = "l", default_value_t = 3)]
        l: usize,
    },
}

#[derive(Subcommand)]
enum StableCmd {
    /// d~ and d for ||rho||, ||sigma|| <= cap
    Constants,
    /// Stability, integrality, positivity and the forgetful homomorphism
    Verify,
}

struct Ctx {
    cfg: RunConfig,
    bundle: GroupBundle,
    group: Arc<FiniteGroup>,
}

impl Ctx {
    fn table(&self) -> Result<&CharacterTable> {
        self.bundle
            .characters
            .as_ref()
            .ok_or_else(|| anyhow!("group {} has no character table", self.group.name()))
    }
}

/// Runs a suite and records its wall time.
fn timed<T>(f: impl FnOnce() -> Result<T>) -> Result<(T, f64)> {
    let start = Instant::now();
    let v = f()?;
    Ok((v, start.elapsed().as_secs_f64() * 1000.0))
}

fn one(f: impl FnOnce() -> Result<Report>) -> Result<Vec<(Report, f64)>> {
    let (r, t) = timed(f)?;
    Ok(vec![(r, t)])
}

fn many(f: impl FnOnce() -> Result<Vec<Report>>) -> Result<Vec<(Report, f64)>> {
    let (rs, t) = timed(f)?;
    let each = t / rs.len().max(1) as f64;
    Ok(rs.into_iter().map(|r| (r, each)).collect())
}

fn group_info(ctx: &Ctx) -> Result<Output> {
    let g = &ctx.group;
    let classes: Vec<_> = (0..g.num_classes())
        .map(|c| json!({ "id": c, "size": g.class_size(c), "centralizer": g.zeta(c), "representative": g.class_rep(c), "inverse": g.inv_class(c) }))
        .collect();
    let characters = ctx.bundle.characters.as_ref().map(|t| {
        (0..t.len())
            .map(|i| json!({ "degree": t.degree(i), "h": t.h(i), "values": t.row(i).values }))
            .collect::<Vec<_>>()
    });
    let value = json!({
        "name": g.name(),
        "order": g.order(),
        "exponent": g.exponent(),
        "classes": classes,
        "euler_number": euler_number(g)?,
        "characters": characters,
    });
    let mut rows = Vec::new();
    for c in 0..g.num_classes() {
        rows.push(vec![c.to_string(), g.class_size(c).to_string(), g.zeta(c).to_string(), g.class_rep(c).to_string()]);
    }
    Ok(Output::Table(Table::new(value, &["class", "size", "centralizer", "representative"], rows)))
}

fn wreath_classes(ctx: &Ctx) -> Result<Output> {
    let n = ctx.cfg.n_or(3);
    let rows = class_table(&ctx.group, n);
    let csv = rows.iter().map(|r| vec![r.ty.to_string(), r.size.clone(), r.centralizer.clone()]).collect();
    Ok(Output::Table(Table::new(serde_json::to_value(&rows)?, &["type", "size", "centralizer"], csv)))
}

fn jm_table(ctx: &Ctx) -> Result<Output> {
    let n = ctx.cfg.n_or(3);
    let alg = WreathAlgebra::get(&ctx.group, n)?;
    let w = Wreath::new(ctx.group.clone(), n);
    let mut xis = Vec::new();
    let mut csv = Vec::new();
    for j in 1..=n {
        let xi = alg.jm_element(j)?;
        let mut by_type = std::collections::BTreeMap::new();
        for r in xi.terms.keys() {
            *by_type.entry(w.type_of(alg.element(*r))).or_insert(0u64) += 1;
        }
        for (t, count) in &by_type {
            csv.push(vec![format!("xi_{j}"), t.to_string(), count.to_string()]);
        }
        let classes: Vec<_> = by_type.into_iter().map(|(t, c)| json!({ "type": t, "elements": c })).collect();
        xis.push(json!({ "j": j, "support": xi.support_size(), "classes": classes }));
    }
    let mut powers = Vec::new();
    for k in 0..=ctx.cfg.k {
        for c in 0..ctx.group.num_classes() {
            let f: WreathClassFunction = alg.xi_power_sum(k, &ClassFunctionG::k_basis(&ctx.group, c))?;
            let terms: Vec<_> = alg
                .types()
                .iter()
                .filter(|t| !f.get(t).is_zero())
                .map(|t| {
                    csv.push(vec![format!("Xi^{k}(K^{c})"), t.to_string(), f.get(t).to_string()]);
                    json!({ "type": t, "coefficient": f.get(t) })
                })
                .collect();
            powers.push(json!({ "k": k, "class": c, "terms": terms }));
        }
    }
    let value = json!({ "group": ctx.group.name(), "n": n, "jm": xis, "power_sums": powers });
    Ok(Output::Table(Table::new(value, &["element", "type", "value"], csv)))
}

fn stable_constants(ctx: &Ctx) -> Result<Output> {
    let sc = StableContext::new(ctx.group.clone());
    let table = stable_algebra_build(&sc, ctx.cfg.cap, ctx.cfg.n)?;
    let mut csv = Vec::new();
    for p in &table.pairs {
        for t in &p.terms {
            csv.push(vec![p.rho.to_string(), p.sigma.to_string(), t.nu.to_string(), t.dtilde.to_string(), t.d.to_string()]);
        }
    }
    let value = json!({ "group": ctx.group.name(), "cap": table.cap, "n": table.n, "pairs": table.pairs });
    Ok(Output::Table(Table::new(value, &["rho", "sigma", "nu", "dtilde", "d"], csv)))
}

fn stable_verify(ctx: &Ctx) -> Result<Vec<(Report, f64)>> {
    let cap = ctx.cfg.cap;
    let mut out = many(|| {
        let sc = StableContext::new(ctx.group.clone());
        let table = stable_algebra_build(&sc, cap, None)?;
        Ok(verify_table(&sc, &table, cap + 2)?)
    })?;
    let n0 = ctx.cfg.n_or(2 * cap);
    out.extend(many(|| Ok(suites::stability(&ctx.group, cap, &[n0, n0 + 1])?))?);
    Ok(out)
}

fn vo(ctx: &Ctx, form: VoNorm) -> Result<Vec<(Report, f64)>> {
    let form = match form {
        VoNorm::Literal => VoForm::Literal,
        VoNorm::Corrected => VoForm::Corrected,
    };
    let level = ctx.cfg.level.min(3);
    one(|| Ok(suites::vertex_operator(&ctx.group, ctx.table()?, level, ctx.cfg.order, form)?))
}

fn all(ctx: &Ctx) -> Result<Vec<(Report, f64)>> {
    let (g, c) = (&ctx.group, &ctx.cfg);
    let l = c.level;
    let n = c.n_or(l.min(4));
    let mut out = Vec::new();
    out.extend(one(|| Ok(suites::heisenberg(g, l, l.min(3) as i64)?))?);
    out.extend(one(|| Ok(suites::jucys_murphy(g, ctx.bundle.characters.as_ref(), n)?))?);
    out.extend(one(|| Ok(suites::virasoro(g, l, 2)?))?);
    out.extend(one(|| Ok(suites::cubic(g, l)?))?);
    out.extend(one(|| Ok(suites::covcomm(g, l, c.k.min(3))?))?);
    out.extend(one(|| Ok(suites::p_l_table()))?);
    out.extend(vo(ctx, VoNorm::Literal)?);
    out.extend(one(|| Ok(suites::bracket(g, ctx.table()?, 200, c.seed)?))?);
    out.extend(one(|| Ok(suites::level_one(g, ctx.table()?, l, c.samples, c.seed)?))?);
    out.extend(stable_verify(ctx)?);
    out.extend(one(|| Ok(suites::generators(g, n)?))?);
    out.extend(one(|| Ok(suites::dual_realization(g, l)?))?);
    Ok(out)
}

fn run(cli: &Cli, ctx: &Ctx) -> Result<Output> {
    let c = &ctx.cfg;
    let g = &ctx.group;
    Ok(match &cli.command {
        Command::Group => group_info(ctx)?,
        Command::Wreath { cmd: WreathCmd::Classes } => wreath_classes(ctx)?,
        Command::Jm { cmd: JmCmd::Table } => jm_table(ctx)?,
        Command::Jm { cmd: JmCmd::Verify } => {
            Output::Reports(one(|| Ok(suites::jucys_murphy(g, ctx.bundle.characters.as_ref(), c.n_or(3))?))?)
        }
        Command::Fock { cmd: FockCmd::Verify { check } } => Output::Reports(match check {
            FockCheck::Heisenberg => one(|| Ok(suites::heisenberg(g, c.level, c.level.min(3) as i64)?))?,
            FockCheck::Virasoro => one(|| Ok(suites::virasoro(g, c.level, 2)?))?,
            FockCheck::Cubic => one(|| Ok(suites::cubic(g, c.level)?))?,
            FockCheck::Covcomm => one(|| Ok(suites::covcomm(g, c.level, c.k)?))?,
            FockCheck::Dual => one(|| Ok(suites::dual_realization(g, c.level)?))?,
        }),
        Command::Winf { cmd: WinfCmd::Verify { check, form } } => Output::Reports(match check {
            WinfCheck::Bracket => one(|| Ok(suites::bracket(g, ctx.table()?, c.samples.max(200), c.seed)?))?,
            WinfCheck::Vo => vo(ctx, *form)?,
            WinfCheck::LevelOne => one(|| Ok(suites::level_one(g, ctx.table()?, c.level, c.samples, c.seed)?))?,
        }),
        Command::Winf { cmd: WinfCmd::Pl { l } } => {
            if *l == 0 {
                return Err(anyhow!("--l must be at least 1"));
            }
            Output::Text(format!("P{l} = {}", p_l_polynomial(*l)))
        }
        Command::Stable { cmd: StableCmd::Constants } => stable_constants(ctx)?,
        Command::Stable { cmd: StableCmd::Verify } => Output::Reports(stable_verify(ctx)?),
        Command::Generators => Output::Reports(one(|| Ok(suites::generators(g, c.n_or(3))?))?),
        Command::All => Output::Reports(all(ctx)?),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let setup = || -> Result<Ctx> {
        let cfg = RunConfig::resolve(&cli.flags)?;
        let bundle = load_group(&cfg.group)?;
        let group = Arc::new(bundle.group.clone());
        Ok(Ctx { cfg, bundle, group })
    };
    let ctx = match setup() {
        Ok(ctx) => ctx,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let result = run(&cli, &ctx).and_then(|out| output::emit(&out, &ctx.cfg).map(|()| out.passed()));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
