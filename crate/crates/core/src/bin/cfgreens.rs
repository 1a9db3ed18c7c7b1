use cfgreens::dirac::solve_bound;
use cfgreens::driver::{prepare, run, GfRequest, GridSpec, PotentialSource, RunRequest, DEFAULT_CHECK_THRESHOLD};
use cfgreens::greens::{build_greens, PhysicalConstants, DEFAULT_C};
use cfgreens::io::{convert_energy, parse_orbital, parse_symmetry, EnergyUnit};
use cfgreens::matel::{radial_matrix_element, Component, MatrixElementSpec};
use cfgreens::potential::linearize;
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

/// Relativistic radial Green's functions of the Dirac equation for E < 0.
#[derive(Parser, Debug)]
#[command(version, args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    generate: Generate,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Radial second-order matrix element for one Green's function.
    Matel(Matel),
}

#[derive(Args, Debug)]
struct Common {
    /// coulomb:<Z> or file:<path.pot>
    #[arg(long, default_value = "coulomb:79")]
    potential: PotentialSource,
    /// <rnt>,<h>,<n>
    #[arg(long, default_value = "2.177968408335618e-4,0.0625,390")]
    grid: GridSpec,
    #[arg(long, default_value_t = DEFAULT_C)]
    clight: f64,
    /// eV or Hartree
    #[arg(long, default_value = "eV")]
    units: EnergyUnit,
}

#[derive(Args, Debug)]
struct Generate {
    #[command(flatten)]
    common: Common,
    /// <E>:<symmetry>, e.g. -10000:s; repeat for more functions
    #[arg(long = "gf")]
    gf: Vec<GfRequest>,
    /// Test each function against its two lowest bound states.
    #[arg(long)]
    check: bool,
    /// Largest accepted |overlap - 1| with --check.
    #[arg(long, default_value_t = DEFAULT_CHECK_THRESHOLD)]
    threshold: f64,
    #[arg(long, default_value = "greens.rgf")]
    out: PathBuf,
    #[arg(long)]
    save_pot: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Matel {
    #[command(flatten)]
    common: Common,
    /// <E>:<symmetry> of the Green's function
    #[arg(long)]
    gf: GfRequest,
    /// Bra orbital, e.g. 1s
    #[arg(long)]
    beta: String,
    /// Ket orbital, e.g. 1s
    #[arg(long)]
    alpha: String,
    #[arg(long, default_value_t = 0.0)]
    k: f64,
    #[arg(long, default_value_t = 0)]
    lambda: u32,
    #[arg(long, default_value_t = 0.0)]
    ktilde: f64,
    #[arg(long, default_value_t = 0)]
    lambda_tilde: u32,
    /// Components T_beta T T~ T_alpha, each L or S
    #[arg(long, default_value = "LLLL")]
    components: String,
}

fn generate(g: Generate) -> cfgreens::Result<bool> {
    let c = g.common;
    let req = RunRequest {
        potential: c.potential,
        grid: c.grid,
        c: c.clight,
        functions: g.gf,
        unit: c.units,
        check: g.check,
        check_threshold: g.threshold,
        out: g.out,
        save_pot: g.save_pot,
    };
    let mut out = std::io::stdout().lock();
    let summary = run(&req, &mut out)?;
    Ok(summary.passed)
}

fn matel(m: Matel) -> cfgreens::Result<()> {
    let c = m.common;
    let mut req = RunRequest::new(c.potential, vec![m.gf.clone()], PathBuf::new());
    req.grid = c.grid;
    let consts = PhysicalConstants::new(c.clight)?;
    let (charge, grid) = prepare(&req)?;
    let pw = linearize(&charge, &grid)?;
    let comp: Vec<Component> = m
        .components
        .chars()
        .map(|ch| ch.to_string().parse())
        .collect::<cfgreens::Result<_>>()?;
    if comp.len() != 4 {
        return Err(cfgreens::Error::Parse(format!(
            "--components needs four letters, got {:?}",
            m.components
        )));
    }
    let gf = build_greens(convert_energy(m.gf.energy, c.units), parse_symmetry(&m.gf.symmetry)?, &pw, &consts)?;
    let (nb, kb) = parse_orbital(&m.beta)?;
    let (na, ka) = parse_orbital(&m.alpha)?;
    let ob = solve_bound(&pw, kb, nb, &consts)?;
    let oa = solve_bound(&pw, ka, na, &consts)?;
    let spec = MatrixElementSpec {
        k: m.k,
        ktilde: m.ktilde,
        lambda: m.lambda,
        lambda_tilde: m.lambda_tilde,
        t_beta: comp[0],
        t: comp[1],
        t_tilde: comp[2],
        t_alpha: comp[3],
    };
    let u = radial_matrix_element(&ob, &gf, &oa, &spec)?;
    println!("{u:.15E}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Some(Command::Matel(m)) => matel(m).map(|_| true),
        None => generate(cli.generate),
    };
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
