//! Command-line surface. `run` is the whole program minus process exit, so
//! tests can drive it in-process.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::degeneracy::{classify, Classification, DegeneracyReport, Mode, RandomizedConfig, Verdict};
use crate::error::{Error, Result};
use crate::family::{
    assemble_zeta, check_assumptions, compare_pair, mu2_generic_section, FamilyMember, SectionConfig,
};
use crate::io::{load_member, parse_in, parse_rational, print, report, Aliases};
use crate::newton::newton_number;
use crate::resolution::{build_dual_graph, builtin_catalog, graphs_isomorphic, sigma_star, Catalog};
use crate::zeta::{milnor_from_zeta, varchenko_zeta};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERDICT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "singzeta", version, about = "Newton-polyhedral invariants and monodromy zeta-functions")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Seed for every random draw.
    #[arg(long, global = true, env = "SINGZETA_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,
    /// Prime size for randomized face checks.
    #[arg(long, global = true, default_value_t = 61, value_parser = clap::value_parser!(u32).range(8..=63))]
    pub prime_bits: u32,
    /// Attempts when drawing a generic plane section.
    #[arg(long, global = true, default_value_t = 16)]
    pub retries: u32,
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Randomized,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Newton boundary and face-by-face non-degeneracy.
    Analyze(ExprArgs),
    /// Zeta-function from the Newton boundary.
    Zeta(ExprArgs),
    /// Newton number and the Milnor number read off the zeta-function.
    Milnor(ExprArgs),
    /// Canonical form of an expression.
    Parse(ExprArgs),
    #[command(subcommand)]
    Family(FamilyCommand),
    #[command(subcommand)]
    Resgraph(ResgraphCommand),
    /// The fixed fan used for the first toric modification.
    SigmaStar {
        /// Verify that every maximal cone is unimodular.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Args, Debug)]
pub struct ExprArgs {
    pub expr: String,
    #[arg(long, default_value_t = 3)]
    pub nvars: usize,
}

#[derive(Subcommand, Debug)]
pub enum FamilyCommand {
    /// Verify the standing assumptions on a member.
    Check { member: PathBuf },
    /// Zeta-function and Milnor number of `g` at the origin.
    Zeta { member: PathBuf },
    /// Compare zeta-functions, Milnor numbers and sectional Milnor numbers.
    Compare {
        first: PathBuf,
        second: PathBuf,
        /// Exit 1 unless the zeta-functions and Milnor numbers agree.
        #[arg(long)]
        expect_equal: bool,
    },
    /// Milnor number of a generic plane section `z3 = a z1 + b z2`.
    Mu2 {
        member: PathBuf,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value = "2", allow_hyphen_values = true)]
        b: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum ResgraphCommand {
    /// Decorated dual graph (DOT, or JSON with --json).
    Build {
        member: PathBuf,
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Test two members' graphs for isomorphism.
    Compare {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Ignore multiplicities when matching nodes.
        #[arg(long)]
        ignore_multiplicity: bool,
        #[arg(long)]
        expect_equal: bool,
    },
}

impl GlobalOpts {
    fn mode(&self) -> Mode {
        match self.mode {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Randomized => Mode::Randomized(RandomizedConfig {
                seed: self.seed,
                prime_bits: self.prime_bits,
                ..RandomizedConfig::default()
            }),
        }
    }

    fn sections(&self) -> SectionConfig {
        SectionConfig {
            seed: self.seed,
            retries: self.retries,
        }
    }
}

struct Output {
    text: String,
    json: String,
    code: i32,
}

fn ok(text: String, json: String) -> Result<Output> {
    Ok(Output { text, json, code: EXIT_OK })
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::NonDegenerate => "non-degenerate".into(),
        Verdict::Degenerate => "DEGENERATE".into(),
        Verdict::Probabilistic {
            nondegenerate,
            trials,
            agreeing,
            prime_bits,
        } => format!(
            "{} (probabilistic, {agreeing}/{trials} trials, {prime_bits}-bit primes)",
            if *nondegenerate { "non-degenerate" } else { "DEGENERATE" }
        ),
    }
}

fn point_text(p: &[i64]) -> String {
    let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn analyze_text(r: &DegeneracyReport) -> String {
    let b = &r.boundary;
    let mut s = format!(
        "variables: {}\nconvenient: {}\ncompact faces: {}\n",
        b.nvars,
        if b.convenient { "yes" } else { "no" },
        b.faces.len()
    );
    for v in &r.verdicts {
        let f = &b.faces[v.face];
        let verts: Vec<String> = f.vertices.iter().map(|p| point_text(p)).collect();
        s += &format!(
            "  [{}] dim {} vertices {} normal {} level {}: {}\n",
            v.face,
            f.dim,
            verts.join(" "),
            point_text(&f.normal.entries),
            f.normal.level,
            verdict_text(&v.verdict)
        );
    }
    s += &format!(
        "classification: {}\n",
        match &r.classification {
            Classification::NewtonNonDegenerate => "Newton non-degenerate".to_string(),
            Classification::WeaklyAlmostNonDegenerate { facet } =>
                format!("weakly almost non-degenerate (facet {facet})"),
            Classification::Degenerate { faces } => format!("degenerate on faces {faces:?}"),
        }
    );
    s
}

fn parse_expr(a: &ExprArgs) -> Result<crate::poly::Polynomial> {
    parse_in(&a.expr, a.nvars, Aliases::Local)
}

#[derive(Serialize)]
struct ZetaJson {
    pretty: String,
    factors: crate::zeta::ZetaFunction,
    degree: i64,
}

fn zeta_json(z: &crate::zeta::ZetaFunction) -> ZetaJson {
    ZetaJson {
        pretty: z.to_string(),
        factors: z.clone(),
        degree: z.degree(),
    }
}

fn member_name(m: &FamilyMember) -> String {
    m.name.clone().unwrap_or_else(|| "member".into())
}

fn load_catalog(path: &Option<PathBuf>) -> Result<Catalog> {
    match path {
        Some(p) => Catalog::load(p),
        None => Ok(builtin_catalog()),
    }
}

fn dispatch(cli: &Cli) -> Result<Output> {
    let g = &cli.global;
    match &cli.command {
        Command::Parse(a) => {
            let p = parse_expr(a)?;
            let s = print(&p);
            ok(format!("{s}\n"), report("parse", &serde_json::json!({ "canonical": s, "terms": p.len() })))
        }
        Command::Analyze(a) => {
            let p = parse_expr(a)?;
            let r = classify(&p, None, &g.mode())?;
            ok(analyze_text(&r), report("analyze", &r))
        }
        Command::Zeta(a) => {
            let p = parse_expr(a)?;
            let z = varchenko_zeta(&crate::newton::newton_boundary(&p)?)?;
            ok(format!("{z}\n"), report("zeta", &zeta_json(&z)))
        }
        Command::Milnor(a) => {
            let p = parse_expr(a)?;
            let b = crate::newton::newton_boundary(&p)?;
            let nu = newton_number(&b).ok();
            let z = varchenko_zeta(&b)?;
            let mu = milnor_from_zeta(&z, b.nvars);
            let nd = classify(&p, None, &g.mode())?.classification == Classification::NewtonNonDegenerate;
            let text = format!(
                "newton number: {}\nmilnor number from zeta: {mu}\nnewton non-degenerate: {}\n",
                nu.map_or("undefined (not convenient)".to_string(), |n| n.to_string()),
                if nd { "yes" } else { "no" }
            );
            let json = report(
                "milnor",
                &serde_json::json!({
                    "newton_number": nu,
                    "mu_from_zeta": mu,
                    "newton_nondegenerate": nd,
                    "zeta": zeta_json(&z),
                }),
            );
            ok(text, json)
        }
        Command::SigmaStar { check } => {
            let fan = sigma_star();
            let mut text = String::new();
            let mut cones = Vec::new();
            for c in &fan.maximal_cones {
                let names = fan.cone_names(c);
                let det = fan.determinant(c);
                cones.push(serde_json::json!({ "cone": names, "determinant": det }));
                if !check {
                    text += &format!("Cone({}) det {det}\n", names.join(","));
                }
            }
            let uni = fan.all_unimodular();
            let summary = format!(
                "{} cones, {}",
                fan.maximal_cones.len(),
                if uni { "all unimodular" } else { "NOT all unimodular" }
            );
            text += &summary;
            text.push('\n');
            let json = report(
                "sigma-star",
                &serde_json::json!({
                    "generators": fan.generators,
                    "cones": cones,
                    "all_unimodular": uni,
                }),
            );
            Ok(Output {
                text,
                json,
                code: if *check && !uni { EXIT_VERDICT } else { EXIT_OK },
            })
        }
        Command::Family(fc) => family(g, fc),
        Command::Resgraph(rc) => resgraph(rc),
    }
}

fn family(g: &GlobalOpts, fc: &FamilyCommand) -> Result<Output> {
    match fc {
        FamilyCommand::Check { member } => {
            let m = load_member(member)?;
            let r = check_assumptions(&m, &g.mode())?;
            let pass = r.ff.pass && r.sing_disjoint.pass && r.in_w_gamma.pass;
            let text = format!(
                "member: {} (d = {}, mu_tot = {})\nfirst-facet non-degeneracy: {}\nsingular points off h = 0: {}\nweakly almost non-degenerate: {}\n",
                member_name(&m),
                m.d,
                m.mu_tot,
                r.ff,
                r.sing_disjoint,
                r.in_w_gamma
            );
            let json = report(
                "family check",
                &serde_json::json!({
                    "member": member_name(&m), "d": m.d, "mu_tot": m.mu_tot,
                    "assumptions": r, "pass": pass,
                }),
            );
            Ok(Output {
                text,
                json,
                code: if pass { EXIT_OK } else { EXIT_VERDICT },
            })
        }
        FamilyCommand::Zeta { member } => {
            let m = load_member(member)?;
            let z = assemble_zeta(&m)?;
            let mu = milnor_from_zeta(&z, 3);
            let text = format!("zeta: {z}\nmu: {mu}\nmu_tot: {}\n", m.mu_tot);
            let json = report(
                "family zeta",
                &serde_json::json!({
                    "member": member_name(&m), "d": m.d, "mu_tot": m.mu_tot,
                    "zeta": zeta_json(&z), "mu": mu,
                }),
            );
            ok(text, json)
        }
        FamilyCommand::Compare {
            first,
            second,
            expect_equal,
        } => {
            let m0 = load_member(first)?;
            let m1 = load_member(second)?;
            let c = compare_pair(&m0, &m1, &g.sections())?;
            let yn = |b: bool| if b { "equal" } else { "DIFFERENT" };
            let text = format!(
                "{}: zeta {} mu {} mu2 {}\n{}: zeta {} mu {} mu2 {}\nzeta: {}\nmu: {}\nmu2: {}\n",
                member_name(&m0),
                c.zeta[0],
                c.mu[0],
                c.mu2[0],
                member_name(&m1),
                c.zeta[1],
                c.mu[1],
                c.mu2[1],
                yn(c.zeta_equal),
                yn(c.mu_equal),
                yn(c.mu2_equal)
            );
            let json = report(
                "family compare",
                &serde_json::json!({
                    "members": [member_name(&m0), member_name(&m1)],
                    "zeta": [zeta_json(&c.zeta[0]), zeta_json(&c.zeta[1])],
                    "mu": c.mu, "mu2": c.mu2,
                    "zeta_equal": c.zeta_equal, "mu_equal": c.mu_equal, "mu2_equal": c.mu2_equal,
                    "seed": g.seed,
                }),
            );
            let failed = *expect_equal && !(c.zeta_equal && c.mu_equal);
            Ok(Output {
                text,
                json,
                code: if failed { EXIT_VERDICT } else { EXIT_OK },
            })
        }
        FamilyCommand::Mu2 { member, a, b } => {
            let m = load_member(member)?;
            let s = mu2_generic_section(&m, parse_rational(a)?, parse_rational(b)?, &g.sections())?;
            let text = format!(
                "mu2: {} (section z3 = {}*z1 + {}*z2, attempts {})\n",
                s.mu2, s.a, s.b, s.attempts
            );
            ok(text, report("family mu2", &s))
        }
    }
}

fn resgraph(rc: &ResgraphCommand) -> Result<Output> {
    match rc {
        ResgraphCommand::Build { member, catalog } => {
            let m = load_member(member)?;
            let graph = build_dual_graph(&m, &load_catalog(catalog)?)?;
            let dot = graph.to_dot();
            let json = report(
                "resgraph build",
                &serde_json::json!({ "member": member_name(&m), "graph": graph, "dot": dot }),
            );
            ok(dot, json)
        }
        ResgraphCommand::Compare {
            first,
            second,
            catalog,
            ignore_multiplicity,
            expect_equal,
        } => {
            let cat = load_catalog(catalog)?;
            let a = build_dual_graph(&load_member(first)?, &cat)?;
            let b = build_dual_graph(&load_member(second)?, &cat)?;
            let iso = graphs_isomorphic(&a, &b, !ignore_multiplicity);
            let text = format!("isomorphic: {}\n", if iso { "yes" } else { "no" });
            let json = report("resgraph compare", &serde_json::json!({ "isomorphic": iso }));
            Ok(Output {
                text,
                json,
                code: if *expect_equal && !iso { EXIT_VERDICT } else { EXIT_OK },
            })
        }
    }
}

/// Run the program on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok(o) => {
            let _ = out.write_all(if cli.global.json { o.json } else { o.text }.as_bytes());
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code_for(&e)
        }
    }
}

/// Errors that represent a mathematical verdict rather than bad input.
fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::GenericityFailure(_) | Error::LocalModel { .. } => EXIT_VERDICT,
        _ => EXIT_USAGE,
    }
}
