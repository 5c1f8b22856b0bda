//! `acs`: command-line front end for `acs-core`.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error, 3 internal
//! consistency failure.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use acs_core::cochain::{cohomology_dim, conj_action, differential, Budget, CoeffModule, Cochain};
use acs_core::cs::{
    bundled_families, cs_family, cs_final, find_family, load_families, obstruction_check, quaternion_constraints,
    random_cs_case, table1, FamilyFixture,
};
use acs_core::extensions::{
    builtin_extension, extension_cocycle, is_split_central, pullback_cocycle, section_defect_gamma,
    CentralExtension, ExtensionFixture, Lift,
};
use acs_core::groups::{builtin, construct_group, FiniteGroup};
use acs_core::homotopy::{composition_defect, homotopy_h, homotopy_multi, stokes_check};
use acs_core::numtheory::delta_invariant;
use acs_core::polynomial::{poly_discriminant, poly_parse};
use acs_core::{Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "acs", version, about = "Exact cochain calculus and arithmetic Chern-Simons evaluators")]
struct Cli {
    /// Family fixture file; overrides ACS_FIXTURES and the bundled set.
    #[arg(long, global = true)]
    fixtures: Option<PathBuf>,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print Δ(d1, d2).
    Delta {
        #[arg(allow_negative_numbers = true)]
        d1: i64,
        #[arg(allow_negative_numbers = true)]
        d2: i64,
    },
    /// Reproduce the quaternion obstruction table.
    Table1,
    /// Evaluate the Chern-Simons invariant.
    Cs(CsArgs),
    /// Dimensions of H^i(G, F_p) for i up to a bound.
    Cohomology {
        #[arg(long)]
        group: String,
        #[arg(long = "mod")]
        modulus: u32,
        #[arg(long)]
        max_degree: usize,
    },
    /// Randomised checks of the conjugation homotopy identities.
    HomotopyCheck {
        #[arg(long)]
        group: String,
        #[arg(long = "mod")]
        modulus: u32,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Action::Trivial)]
        action: Action,
    },
    /// Inspect a central extension.
    Extension {
        #[arg(long, required_unless_present = "fixture", conflicts_with = "fixture")]
        name: Option<String>,
        /// Extension fixture JSON file.
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
    /// Obstructions to a quaternion field containing Q(√d1, √d2).
    Obstruction {
        #[arg(allow_negative_numbers = true)]
        d1: i64,
        #[arg(allow_negative_numbers = true)]
        d2: i64,
    },
    /// Polynomial utilities.
    Poly {
        #[command(subcommand)]
        command: PolyCommand,
    },
    /// List the family fixtures in use.
    Fixtures,
}

#[derive(Args, Debug)]
struct CsArgs {
    #[arg(long, conflicts_with_all = ["general", "random"])]
    family: Option<String>,
    #[arg(long)]
    t: Option<u64>,
    #[arg(long)]
    class: Option<String>,

    /// Evaluate from explicit (D, t, M, D_L support).
    #[arg(long, conflicts_with = "random")]
    general: bool,
    #[arg(long = "D")]
    d: Option<u64>,
    #[arg(long = "M", allow_negative_numbers = true)]
    m: Option<i64>,
    #[arg(long, value_delimiter = ',')]
    dl: Vec<u64>,

    /// Run seeded random consistency cases.
    #[arg(long)]
    random: bool,
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum PolyCommand {
    /// Discriminant of an integer polynomial.
    Disc { expr: String },
    /// Check a fixture's factorisation modulo its prime.
    FactorCheck {
        #[arg(long)]
        fixture: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Action {
    Trivial,
    Sign,
}

/// Errors that map to exit codes.
enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Run = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if matches!(e, Error::Consistency(_)) { 3 } else { 1 })
        }
    }
}

fn emit(json_mode: bool, value: Value, text: impl FnOnce() -> String) {
    if json_mode {
        println!("{}", serde_json::to_string_pretty(&value).expect("JSON values serialise"));
    } else {
        println!("{}", text());
    }
}

fn run(cli: &Cli) -> Run {
    let j = cli.json;
    match &cli.command {
        Command::Delta { d1, d2 } => {
            let delta = delta_invariant(*d1, *d2)?;
            emit(j, json!({ "d1": d1, "d2": d2, "delta": delta }), || delta.to_string());
        }
        Command::Table1 => {
            let rows = table1();
            emit(j, serde_json::to_value(&rows).expect("rows serialise"), || {
                let mut out = String::from("d1\td2\tdelta\tobstructed");
                for r in &rows {
                    out.push_str(&format!("\n{}\t{}\t{}\t{}", r.d1, r.d2, r.delta, r.obstructed));
                }
                out
            });
        }
        Command::Cs(args) => run_cs(cli, args)?,
        Command::Cohomology { group, modulus, max_degree } => {
            let g = Arc::new(construct_group(group)?);
            let mut dims = Vec::new();
            for i in 0..=*max_degree {
                dims.push(cohomology_dim(&g, *modulus, i, Budget::default())?);
            }
            emit(j, json!({ "group": g.label(), "p": modulus, "dims": dims }), || {
                dims.iter()
                    .enumerate()
                    .map(|(i, d)| format!("H^{i}({}, F_{modulus}) = {d}", g.label()))
                    .collect::<Vec<_>>()
                    .join("\n")
            });
        }
        Command::HomotopyCheck { group, modulus, degree, trials, seed, action } => {
            homotopy_check(j, group, *modulus, *degree, *trials, *seed, *action)?
        }
        Command::Extension { name, fixture } => {
            let ext = match (name, fixture) {
                (Some(n), _) => builtin_extension(n)?,
                (None, Some(path)) => {
                    let text = read(path)?;
                    let fx: ExtensionFixture =
                        serde_json::from_str(&text).map_err(|e| Error::Fixture(e.to_string()))?;
                    fx.load()?
                }
                (None, None) => return Err(Failure::Usage("extension needs --name or --fixture".into())),
            };
            describe_extension(j, &ext)?;
        }
        Command::Obstruction { d1, d2 } => {
            let r = obstruction_check(*d1, *d2)?;
            let checklist = quaternion_constraints(*d1, *d2);
            let items: serde_json::Map<String, Value> =
                checklist.items().iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            let value = json!({
                "d1": r.d1, "d2": r.d2, "delta": r.delta,
                "delta_obstruction": r.delta_obstruction,
                "prime_witnesses": r.prime_witnesses,
                "obstructed": r.obstructed,
                "hypotheses": items,
            });
            emit(j, value, || {
                let mut out = format!("d1 = {}, d2 = {}, Δ = {}", r.d1, r.d2, r.delta);
                for (k, v) in checklist.items() {
                    out.push_str(&format!("\n  {k}: {}", if v { "ok" } else { "fails" }));
                }
                for (p, i) in &r.prime_witnesses {
                    out.push_str(&format!("\n  witness p = {p} divides d{i}"));
                }
                out.push_str(&format!("\nobstructed: {}", r.obstructed));
                out
            });
        }
        Command::Poly { command } => match command {
            PolyCommand::Disc { expr } => {
                let p = poly_parse(expr)?;
                let d = poly_discriminant(&p)?;
                emit(j, json!({ "polynomial": p.to_string(), "discriminant": d.to_string() }), || d.to_string());
            }
            PolyCommand::FactorCheck { fixture } => {
                let fams = families(cli)?;
                let fam = find_family(&fams, fixture)?;
                let check = fam
                    .factor_check
                    .as_ref()
                    .ok_or_else(|| Error::Fixture(format!("{fixture} has no factor check")))?;
                let holds = fam.run_factor_check()?.unwrap_or(false);
                let value = json!({
                    "fixture": fam.name, "polynomial": check.polynomial,
                    "factors": check.factors, "modulus": check.modulus, "holds": holds,
                });
                emit(j, value, || {
                    format!("{} ≡ {} (mod {}): {holds}", check.polynomial, check.factors, check.modulus)
                });
                if !holds {
                    return Err(Error::Consistency(format!("factorisation fails for {fixture}")).into());
                }
            }
        },
        Command::Fixtures => {
            let fams = families(cli)?;
            let value = serde_json::to_value(&fams).expect("fixtures serialise");
            emit(j, value, || {
                fams.iter()
                    .map(|f| {
                        let classes: Vec<&str> = f.classes.iter().map(|c| c.label.as_str()).collect();
                        format!("{}\t{} -> {}\tD = {}\tclasses {}", f.name, f.cover_group, f.base_group, f.d, classes.join(","))
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            });
        }
    }
    Ok(())
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Fixture(format!("{}: {e}", path.display())))
}

/// `--fixtures`, then `ACS_FIXTURES`, then the bundled set.
fn families(cli: &Cli) -> Result<Vec<FamilyFixture>> {
    let path = cli
        .fixtures
        .clone()
        .or_else(|| std::env::var_os("ACS_FIXTURES").map(PathBuf::from));
    match path {
        Some(p) => load_families(&read(&p)?),
        None => Ok(bundled_families()),
    }
}

fn run_cs(cli: &Cli, args: &CsArgs) -> Run {
    let j = cli.json;
    if args.random {
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        let mut halves = 0;
        for _ in 0..args.trials {
            let c = random_cs_case(&mut rng);
            let r = cs_final(&c.dl_support, c.d, c.t, c.m)?;
            halves += !r.value.is_zero() as usize;
        }
        emit(j, json!({ "trials": args.trials, "seed": args.seed, "consistent": true, "half_count": halves }), || {
            format!("{} cases consistent (seed {}), {halves} with value 1/2", args.trials, args.seed)
        });
        return Ok(());
    }
    let t = args.t.ok_or_else(|| Failure::Usage("cs needs --t".into()))?;
    if args.general {
        let (d, m) = match (args.d, args.m) {
            (Some(d), Some(m)) => (d, m),
            _ => return Err(Failure::Usage("cs --general needs --D and --M".into())),
        };
        let r = cs_final(&args.dl, d, t, m)?;
        let value = json!({ "D": d, "t": t, "M": m, "N": r.n, "dl": args.dl, "value": r.value, "s": r.s, "r": r.r });
        emit(j, value, || format!("{}\n(s = {}, r = {}, N = {})", r.value, r.s, r.r, r.n));
        return Ok(());
    }
    let (name, class) = match (&args.family, &args.class) {
        (Some(n), Some(c)) => (n, c),
        _ => return Err(Failure::Usage("cs needs --family and --class, --general, or --random".into())),
    };
    let fams = families(cli)?;
    let r = cs_family(find_family(&fams, name)?, t, class)?;
    emit(j, serde_json::to_value(&r).expect("result serialises"), || r.value.to_string());
    Ok(())
}

fn coefficients(g: &FiniteGroup, modulus: u32, action: Action) -> Result<CoeffModule> {
    match action {
        Action::Trivial => {
            if modulus == 0 {
                return Err(Error::InvalidModule("modulus must be positive".into()));
            }
            Ok(CoeffModule::trivial(modulus, g))
        }
        Action::Sign => {
            let ch = builtin::sign_character(g)
                .ok_or_else(|| Error::InvalidModule(format!("{} has no sign character", g.label())))?;
            CoeffModule::sign(modulus, g, &ch)
        }
    }
}

fn homotopy_check(
    j: bool,
    group: &str,
    modulus: u32,
    degree: usize,
    trials: usize,
    seed: u64,
    action: Action,
) -> Run {
    if degree == 0 {
        return Err(Failure::Usage("--degree must be at least 1".into()));
    }
    let g = Arc::new(construct_group(group)?);
    let coeff = coefficients(&g, modulus, action)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut single, mut composed, mut stokes) = (0usize, 0usize, 0usize);
    for trial in 0..trials {
        let f = Cochain::random(g.clone(), coeff.clone(), degree, &mut rng)?;
        let df = differential(&f)?;
        for a in g.elements() {
            let lhs = &homotopy_h(a, &df)? + &differential(&homotopy_h(a, &f)?)?;
            if lhs != &conj_action(&f, a) - &f {
                return Err(Error::Consistency(format!("h_a identity fails at trial {trial}, a = {a}")).into());
            }
            single += 1;
        }

        let beta = Cochain::random(g.clone(), coeff.clone(), degree - 1, &mut rng)?;
        let cocycle = differential(&beta)?;
        let a = rng.gen_range(0..g.order());
        let b = rng.gen_range(0..g.order());
        let defect = composition_defect(a, b, &cocycle)?;
        let ok = if cocycle.degree() < 2 {
            defect.is_zero()
        } else {
            defect == differential(&-&homotopy_multi(&[a, b], &cocycle)?)?
        };
        if !ok {
            return Err(Error::Consistency(format!("composition identity fails at trial {trial}, ({a}, {b})")).into());
        }
        composed += 1;

        let a_vec = [rng.gen_range(0..g.order()), rng.gen_range(0..g.order())];
        let report = stokes_check(&a_vec, &f)?;
        if !report.passed {
            return Err(Error::Consistency(format!("two-step identity fails at {a_vec:?}: {:?}", report.witness)).into());
        }
        stokes += 1;
    }
    let value = json!({
        "group": g.label(), "modulus": modulus, "degree": degree, "trials": trials, "seed": seed,
        "single_checks": single, "composition_checks": composed, "two_step_checks": stokes, "passed": true,
    });
    emit(j, value, || {
        format!(
            "{} mod {modulus}, degree {degree}, seed {seed}: {single} single, {composed} composition, {stokes} two-step checks passed",
            g.label()
        )
    });
    Ok(())
}

fn describe_extension(j: bool, ext: &CentralExtension) -> Run {
    let eps = extension_cocycle(ext)?;
    let split = is_split_central(ext)?;
    let gamma = section_defect_gamma(ext, &Lift::default_for(ext))?;
    let contract = differential(&gamma)? == pullback_cocycle(&eps, ext.proj())?;
    if !contract {
        return Err(Error::Consistency(format!("dγ ≠ φ*ε for {}", ext.name())).into());
    }
    let base = ext.base();
    let table: Vec<Vec<u32>> = base
        .elements()
        .map(|x| base.elements().map(|y| eps.get(&[x, y])).collect())
        .collect();
    let value = json!({
        "name": ext.name(),
        "total_order": ext.total().order(),
        "base_order": base.order(),
        "kernel_order": ext.modulus(),
        "split": split,
        "epsilon": table,
        "gamma_contract": contract,
    });
    emit(j, value, || {
        let mut out = format!(
            "{}: |Γ| = {}, |G| = {}, |A| = {}\nsplit: {split}\nε:",
            ext.name(),
            ext.total().order(),
            base.order(),
            ext.modulus()
        );
        for row in &table {
            out.push_str("\n  ");
            out.push_str(&row.iter().map(u32::to_string).collect::<Vec<_>>().join(" "));
        }
        out.push_str(&format!("\ndγ = φ*ε: {contract}"));
        out
    });
    Ok(())
}
