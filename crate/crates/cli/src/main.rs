use std::collections::HashMap;
use std::io::Read;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use fflab_core::affine::{limits, perk_schultz, pi_cd_rmatrix, AffineRParams, LimitKind, PerkSchultzParams};
use fflab_core::exactalg::{BigRational, Generator, LaurentExpr};
use fflab_core::lattice::{
    boundary_from_partition, default_row_parameters, enumerate_states, partition_function, partition_function_at,
    render_state, Flavor, GridGeometry, Partition, RENDER_MAX_COLUMNS,
};
use fflab_core::quantumgroup::{baxterize, r_matrix, RKind};
use fflab_core::sixvertex::{
    cubic_residual, free_fermion_residual, matrix_to_weights, table_weights_default, weights_to_matrix,
    SixVertexWeights, TableKind, VertexMatrix, WeightPack,
};
use fflab_core::symfunc::{schur_jacobi_trudi, schur_ssyt, tokuyama_rhs};
use fflab_core::verify::{parse_suites, run, Mode, VerifyPlan};

#[derive(Parser)]
#[command(name = "fflab", version, about = "Free-fermionic six-vertex R-matrices and Tokuyama partition functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites; exit 1 if any residual is nonzero.
    Verify {
        /// `all` or a comma-separated subset of: intertwiner, structural, ybe1,
        /// ybe2, freefermion, cubic, tables, rtt, tokuyama, affine.
        #[arg(long, default_value = "all")]
        suites: String,
        #[arg(long, env = "FFLAB_MODE", default_value = "symbolic")]
        mode: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Lattice partition function and the Schur-side product.
    Partition {
        /// Comma-separated parts, e.g. `2,1,0`.
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        rows: usize,
        /// Grid width; defaults to `lambda_1 + rows`.
        #[arg(long)]
        cols: Option<usize>,
        #[arg(long, value_enum, default_value_t = FlavorArg::Gamma)]
        flavor: FlavorArg,
        /// Rational bindings such as `z_1=2,z_2=3,sqrt_v=1/5`.
        #[arg(long)]
        at: Option<String>,
        /// Draw every state (grids up to 12 columns).
        #[arg(long)]
        states: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print an R-matrix in the six-vertex layout.
    Rmatrix {
        /// R, Rprime, baxterized, table:<T_GAMMA|T_DELTA|R_GG|R_DD|R_GD|R_DG>,
        /// perk_schultz, pi_cd, A or B.
        kind: String,
        #[arg(long, default_value = "zeta")]
        zeta: String,
        #[arg(long, default_value = "zeta_p")]
        zeta_p: String,
        #[arg(long, default_value = "alpha")]
        alpha: String,
        #[arg(long, default_value = "beta")]
        beta: String,
        #[arg(long, default_value = "z")]
        z: String,
        #[arg(long, default_value = "w")]
        w: String,
        #[arg(long, default_value = "q")]
        q: String,
        #[arg(long, default_value = "c")]
        c: String,
        #[arg(long, default_value = "d")]
        d: String,
        #[arg(long)]
        json: bool,
    },
    /// Schur polynomial by Jacobi–Trudi, by tableaux, or both.
    Schur {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        vars: usize,
        #[arg(long, value_enum, default_value_t = SchurMethod::Jt)]
        method: SchurMethod,
    },
    /// Read a JSON weight pack (file or `-` for stdin) and report its residuals.
    CheckWeights { path: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Gamma,
    Delta,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Flavor {
        match f {
            FlavorArg::Gamma => Flavor::Gamma,
            FlavorArg::Delta => Flavor::Delta,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SchurMethod {
    Jt,
    Ssyt,
    Both,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(false)` means a check ran and failed; errors are usage or input problems.
fn dispatch(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Verify { suites, mode, seed, json } => cmd_verify(&suites, &mode, seed, json),
        Command::Partition { lambda, rows, cols, flavor, at, states, json } => {
            cmd_partition(&lambda, rows, cols, flavor.into(), at.as_deref(), states, json)
        }
        Command::Rmatrix { kind, zeta, zeta_p, alpha, beta, z, w, q, c, d, json } => {
            let p = RParams { zeta, zeta_p, alpha, beta, z, w, q, c, d };
            cmd_rmatrix(&kind, &p, json)
        }
        Command::Schur { lambda, vars, method } => cmd_schur(&lambda, vars, method),
        Command::CheckWeights { path } => cmd_check_weights(&path),
    }
}

fn cmd_verify(suites: &str, mode: &str, seed: u64, json: bool) -> Result<bool> {
    let plan = VerifyPlan::new(parse_suites(suites)?, mode.parse::<Mode>()?, seed)?;
    let report = run(&plan);
    if json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!("{report}");
    }
    Ok(report.all_zero)
}

fn expr(s: &str) -> Result<LaurentExpr> {
    s.parse().with_context(|| format!("cannot parse `{s}`"))
}

fn parse_bindings(s: &str) -> Result<HashMap<Generator, BigRational>> {
    let mut out = HashMap::new();
    for item in s.split(',').filter(|t| !t.trim().is_empty()) {
        let (k, v) = item.split_once('=').ok_or_else(|| anyhow!("binding `{item}` is not name=value"))?;
        let g = Generator::lookup(k.trim()).ok_or_else(|| anyhow!("unknown generator `{}`", k.trim()))?;
        let val = expr(v.trim())?.as_rational().ok_or_else(|| anyhow!("`{v}` is not a rational number"))?;
        out.insert(g, val);
    }
    Ok(out)
}

fn cmd_partition(
    lambda: &str,
    rows: usize,
    cols: Option<usize>,
    flavor: Flavor,
    at: Option<&str>,
    states: bool,
    json: bool,
) -> Result<bool> {
    let lambda: Partition = lambda.parse()?;
    let n = cols.unwrap_or(lambda.padded(rows)?.first().copied().unwrap_or(0) + rows);
    let rhs = tokuyama_rhs(&lambda, rows);
    let (z_text, rhs_text, equal) = match at {
        None => {
            let z = partition_function(&lambda, rows, n, flavor, &default_row_parameters(rows))?;
            let eq = z == rhs;
            (z.to_string(), rhs.to_string(), eq)
        }
        Some(text) => {
            let point = parse_bindings(text)?;
            let get = |g: Generator| point.get(&g).cloned().ok_or_else(|| anyhow!("no value bound for {}", g.name()));
            let z: Vec<BigRational> = (1..=rows).map(|i| get(Generator::z(i))).collect::<Result<_>>()?;
            let sv = get(Generator::SQRT_V)?;
            let lhs = partition_function_at(&lambda, rows, n, flavor, &z, &sv)?;
            let r = rhs.eval_rational(&point)?;
            let eq = lhs == r;
            (lhs.to_string(), r.to_string(), eq)
        }
    };
    let verdict = if equal { "EQUAL" } else { "DIFFERENT" };
    if json {
        let v = serde_json::json!({
            "lambda": lambda.parts(),
            "rows": rows,
            "cols": n,
            "flavor": flavor.name(),
            "Z": z_text,
            "rhs": rhs_text,
            "verdict": verdict,
        });
        println!("{}", serde_json::to_string_pretty(&v)?);
    } else {
        println!("Z = {z_text}");
        println!("rhs = {rhs_text}");
        println!("verdict: {verdict}");
    }
    if states {
        if n > RENDER_MAX_COLUMNS {
            bail!("state drawing is limited to {RENDER_MAX_COLUMNS} columns");
        }
        let b = boundary_from_partition(&lambda, rows, n)?;
        let all = enumerate_states(&b, &GridGeometry { rows, cols: n, flavor })?;
        println!("{} states", all.len());
        for s in &all {
            println!();
            print!("{}", render_state(s)?);
        }
    }
    Ok(equal)
}

struct RParams {
    zeta: String,
    zeta_p: String,
    alpha: String,
    beta: String,
    z: String,
    w: String,
    q: String,
    c: String,
    d: String,
}

fn build_rmatrix(kind: &str, p: &RParams) -> Result<VertexMatrix> {
    let m = match kind {
        "R" => weights_to_matrix(&r_matrix(RKind::R, &expr(&p.zeta)?, &expr(&p.zeta_p)?).weights),
        "Rprime" => weights_to_matrix(&r_matrix(RKind::RPrime, &expr(&p.zeta)?, &expr(&p.zeta_p)?).weights),
        "baxterized" => {
            weights_to_matrix(&baxterize(&expr(&p.zeta)?, &expr(&p.zeta_p)?, &expr(&p.alpha)?, &expr(&p.beta)?).weights)
        }
        "perk_schultz" => {
            let m = perk_schultz(&PerkSchultzParams { z: expr(&p.z)?, w: expr(&p.w)?, q: expr(&p.q)? });
            VertexMatrix::try_from(m)?
        }
        "pi_cd" => pi_cd_rmatrix(&AffineRParams { c: expr(&p.c)?, d: expr(&p.d)?, z: expr(&p.z)?, q: expr(&p.q)? }),
        "A" => limits(LimitKind::A, &expr(&p.q)?, &expr(&p.z)?)?,
        "B" => limits(LimitKind::B, &expr(&p.q)?, &expr(&p.z)?)?,
        other => match other.strip_prefix("table:") {
            Some(t) => weights_to_matrix(&table_weights_default(t.parse::<TableKind>()?)),
            None => bail!("unknown matrix kind `{other}`"),
        },
    };
    Ok(m)
}

fn cmd_rmatrix(kind: &str, p: &RParams, json: bool) -> Result<bool> {
    let m = build_rmatrix(kind, p)?;
    if json {
        let pack = WeightPack { kind: kind.to_string(), weights: m.weights() };
        println!("{}", serde_json::to_string_pretty(&pack)?);
    } else {
        println!("{m}");
        println!("{}", m.weights());
    }
    Ok(true)
}

fn cmd_schur(lambda: &str, vars: usize, method: SchurMethod) -> Result<bool> {
    let lambda: Partition = lambda.parse()?;
    let z = default_row_parameters(vars);
    let jt = || schur_jacobi_trudi(&lambda, &z);
    match method {
        SchurMethod::Jt => println!("{}", jt()),
        SchurMethod::Ssyt => println!("{}", schur_ssyt(&lambda, &z)?),
        SchurMethod::Both => {
            let a = jt();
            let b = schur_ssyt(&lambda, &z)?;
            println!("jacobi-trudi: {a}");
            println!("tableaux: {b}");
            let eq = a == b;
            println!("verdict: {}", if eq { "EQUAL" } else { "DIFFERENT" });
            return Ok(eq);
        }
    }
    Ok(true)
}

fn cmd_check_weights(path: &str) -> Result<bool> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path).with_context(|| format!("cannot read {path}"))?
    };
    let pack: WeightPack = serde_json::from_str(&text).context("invalid weight pack")?;
    let w: SixVertexWeights = matrix_to_weights(weights_to_matrix(&pack.weights).as_matrix())?;
    let ff = free_fermion_residual(&w);
    let cubic = cubic_residual(&w);
    println!("kind: {}", pack.kind);
    println!("free-fermion residual: {ff}");
    println!("cubic residual: {cubic}");
    let mut ok = ff.is_zero() && cubic.is_zero();
    if let Some(t) = pack.kind.strip_prefix("table:").and_then(|t| t.parse::<TableKind>().ok()) {
        let same = table_weights_default(t) == w;
        println!("matches {}: {}", t, if same { "yes" } else { "no" });
        ok &= same;
    }
    Ok(ok)
}
