//! The `csub` command line: argument parsing, file input, and reports.
//!
//! Exit codes: 0 success, 1 a checked property failed, 2 invalid input or
//! usage, 3 a cap was exceeded.

use crate::amalgam::{
    self, build_equivalence, canonical_witness, check_action, check_amalgamation_with, check_cstar_characterization,
    grothendieck, permutation_action_on_pn, pullback_action_on_pn, recover_action, ActionJson, AmalgamCaps,
    AmalgamError, AmalgamOptions, AmalgamWitness, Mode, MonoidAction, WitnessJson,
};
use crate::cstar::{
    self, build_cinj, build_csub, comparison_report, ideal_condition_morphisms, weak_terminal_report, CstarError,
    CstarFlags,
};
use crate::fincat::{validate_category, CategoryError, CategoryJson, FinCategory, FinMonoid, MonoidJson};
use crate::invsemi::{self, aut_elements_equivalence, build_t, derived_structures, law_report, InvSemiError};
use crate::partition::{build_partition_lattice, PartitionError, LATTICE_CAP};
use crate::poset::{hasse_dot, FinLattice, FinPoset, LatticeError, PosetError, PosetJson};
use crate::recog::{check_firby_with, check_yoon, FirbyCaps, FirbyError, FirbyOptions, SingleCollectionRule};
use crate::report::AxiomStatus;
use crate::selftest::run_selftest;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Parser, Debug)]
#[command(name = "csub", version, about = "Finite models of commutative subalgebra categories")]
struct Cli {
    /// Emit a JSON run report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest n accepted by builders (defaults to each module's cap).
    #[arg(long, global = true, value_name = "N")]
    cap_n: Option<usize>,
    /// Node budget for backtracking searches.
    #[arg(long, global = true, value_name = "NODES")]
    cap_search: Option<usize>,
    /// Add wall-clock time to the report (makes output run-dependent).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit the partition lattice P(n) as poset JSON.
    Pn {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Print the characteristic polynomial instead.
        #[arg(long)]
        charpoly: bool,
        /// Print the Hasse diagram as DOT instead.
        #[arg(long, conflicts_with = "charpoly")]
        dot: bool,
    },
    /// Möbius values μ(0, x) of a lattice file.
    Mobius { file: PathBuf },
    /// Characteristic polynomial of a graded lattice file.
    Charpoly { file: PathBuf },
    /// Recognize partition lattices.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Monoid actions, P ⋊ M, and the amalgamation axioms.
    #[command(subcommand)]
    Amalgam(AmalgamCmd),
    /// Subalgebra categories of ℂⁿ.
    #[command(subcommand)]
    Cstar(CstarCmd),
    /// The inverse semigroup of partial isomorphisms into ℂⁿ.
    #[command(subcommand)]
    Invsemi(InvsemiCmd),
    /// Run the acceptance corpus.
    Selftest,
}

#[derive(Subcommand, Debug)]
enum CheckCmd {
    /// Yoon's axioms (P1)–(P4).
    Yoon { file: PathBuf },
    /// Firby's 1-point axioms (P1′)–(P7′).
    Firby {
        file: PathBuf,
        /// Use the literal single-collection rule.
        #[arg(long)]
        verbatim: bool,
    },
}

#[derive(Args, Debug)]
struct Source {
    /// Action JSON or category JSON.
    #[arg(required_unless_present_any = ["perm", "pullback"])]
    file: Option<PathBuf>,
    /// Use S(n) acting on P(n) by permutation.
    #[arg(long, value_name = "N", conflicts_with_all = ["file", "pullback"])]
    perm: Option<usize>,
    /// Use T(n) acting on P(n) by pullback.
    #[arg(long, value_name = "N", conflicts_with = "file")]
    pullback: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Group,
    Monoid,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Group => Mode::Group,
            ModeArg::Monoid => Mode::Monoid,
        }
    }
}

#[derive(Subcommand, Debug)]
enum AmalgamCmd {
    /// Build P ⋊ M from an action; emits category JSON and the canonical witness.
    Build {
        #[command(flatten)]
        source: Source,
        /// Print the category as DOT instead.
        #[arg(long)]
        dot: bool,
        /// Print the input action as action JSON instead.
        #[arg(long, conflicts_with = "dot")]
        action: bool,
    },
    /// Evaluate the amalgamation axioms.
    Check {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Witness JSON; otherwise the canonical witness for actions, a search for categories.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Search even when the input is an action.
        #[arg(long, conflicts_with = "witness")]
        search: bool,
        /// Monoid JSON `G` that End(0) must be anti-isomorphic to.
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Recover the action from a category and witness.
    Recover {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Certificate for the subalgebra category of a matrix algebra.
    Charfactor {
        #[command(flatten)]
        source: Source,
        /// Block sizes, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        /// Dimension of the algebra.
        #[arg(long)]
        dim_a: usize,
    },
}

#[derive(Args, Debug)]
struct NArg {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
}

#[derive(Subcommand, Debug)]
enum CstarCmd {
    /// The injective category (or with --poset, the inclusion poset).
    Build {
        #[command(flatten)]
        n: NArg,
        /// Full-support subalgebras only.
        #[arg(long)]
        unital: bool,
        /// Unit-preserving homomorphisms only.
        #[arg(long)]
        unit_preserving: bool,
        /// Emit the inclusion poset instead.
        #[arg(long)]
        poset: bool,
        #[arg(long)]
        dot: bool,
    },
    /// Compare P(n) ⋊ S(n) with the opposite of the unital injective category.
    Compare {
        #[command(flatten)]
        n: NArg,
    },
    /// Morphisms satisfying the ideal condition.
    Ideals {
        #[command(flatten)]
        n: NArg,
    },
    /// Weakly terminal objects and their subcategories.
    Terminal {
        #[command(flatten)]
        n: NArg,
        #[arg(long)]
        unital: bool,
    },
}

#[derive(Subcommand, Debug)]
enum InvsemiCmd {
    /// Emit T with its multiplication and star tables.
    Build {
        #[command(flatten)]
        n: NArg,
    },
    /// Check the inverse semigroup laws.
    Verify {
        #[command(flatten)]
        n: NArg,
    },
    /// E(T), G(T), L(T) against the subalgebra models.
    Derived {
        #[command(flatten)]
        n: NArg,
    },
    /// The category of elements of Aut and its equivalence with the inclusion poset.
    Autelements {
        #[command(flatten)]
        n: NArg,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub tool: String,
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub exit_code: i32,
    pub pass: bool,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

#[derive(Debug)]
struct Fail {
    code: i32,
    msg: String,
}

impl Fail {
    fn input(msg: impl Into<String>) -> Self {
        Fail { code: 2, msg: msg.into() }
    }

    fn cap(msg: impl Into<String>) -> Self {
        Fail { code: 3, msg: msg.into() }
    }
}

macro_rules! classify {
    ($($t:ty => $cap:pat),* $(,)?) => {$(
        impl From<$t> for Fail {
            fn from(e: $t) -> Self {
                match e {
                    $cap => Fail::cap(e.to_string()),
                    _ => Fail::input(e.to_string()),
                }
            }
        }
    )*};
}

classify! {
    PartitionError => PartitionError::CapExceeded { .. },
    CategoryError => CategoryError::SearchCapExceeded { .. },
    FirbyError => FirbyError::SearchCapExceeded { .. },
    CstarError => CstarError::CapExceeded { .. } | CstarError::Category(CategoryError::SearchCapExceeded { .. }),
    AmalgamError => AmalgamError::SearchCapExceeded { .. } | AmalgamError::Category(CategoryError::SearchCapExceeded { .. }),
    InvSemiError => InvSemiError::CapExceeded { .. }
        | InvSemiError::Cstar(CstarError::CapExceeded { .. })
        | InvSemiError::Category(CategoryError::SearchCapExceeded { .. }),
}

macro_rules! invalid_input {
    ($($t:ty),*) => {$(
        impl From<$t> for Fail {
            fn from(e: $t) -> Self {
                Fail::input(e.to_string())
            }
        }
    )*};
}

invalid_input!(PosetError, LatticeError, amalgam::ActionError, crate::fincat::MonoidError, crate::fincat::FunctorError);

struct Outcome {
    pass: bool,
    result: Value,
    text: String,
}

impl Outcome {
    fn new(pass: bool, result: impl Serialize, text: String) -> Self {
        Outcome { pass, result: serde_json::to_value(result).expect("report serializes"), text }
    }
}

struct Env {
    inputs: Vec<InputDigest>,
    cap_n: Option<usize>,
    cap_search: Option<usize>,
}

impl Env {
    fn read(&mut self, path: &Path) -> Result<Value, Fail> {
        let bytes = std::fs::read(path).map_err(|e| Fail::input(format!("{}: {e}", path.display())))?;
        self.inputs.push(InputDigest { path: path.display().to_string(), sha256: hex::encode(Sha256::digest(&bytes)) });
        serde_json::from_slice(&bytes).map_err(|e| Fail::input(format!("{}: {e}", path.display())))
    }

    fn read_as<T: serde::de::DeserializeOwned>(&mut self, path: &Path) -> Result<T, Fail> {
        let v = self.read(path)?;
        serde_json::from_value(v).map_err(|e| Fail::input(format!("{}: {e}", path.display())))
    }

    fn n(&self, n: u64, default_cap: usize) -> Result<usize, Fail> {
        let cap = self.cap_n.unwrap_or(default_cap);
        let n = usize::try_from(n).map_err(|_| Fail::input("n out of range"))?;
        if n > cap {
            return Err(Fail::cap(format!("n = {n} exceeds cap {cap}")));
        }
        Ok(n)
    }

    fn amalgam_caps(&self) -> AmalgamCaps {
        let mut caps = AmalgamCaps::default();
        if let Some(c) = self.cap_search {
            caps.retraction_nodes = c;
            caps.candidates = c;
        }
        caps
    }

    fn lattice(&mut self, path: &Path) -> Result<FinLattice, Fail> {
        let j: PosetJson = self.read_as(path)?;
        Ok(FinLattice::new(FinPoset::from_json(&j)?)?)
    }
}

/// Parses `args` (program name first) and runs the command, writing the
/// report to stdout and diagnostics to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (mut out, mut err) = (std::io::stdout().lock(), std::io::stderr().lock());
    run_with(args, &mut out, &mut err)
}

/// As [`run`], with explicit output streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let command: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let mut env = Env { inputs: Vec::new(), cap_n: cli.cap_n, cap_search: cli.cap_search };
    let start = Instant::now();
    let result = dispatch(&cli.command, &mut env);
    let elapsed_ms = cli.timings.then(|| start.elapsed().as_millis());
    let (code, report) = match result {
        Ok(o) => {
            let code = if o.pass { 0 } else { 1 };
            if !cli.json {
                let _ = out.write_all(o.text.as_bytes());
                if let Some(ms) = elapsed_ms {
                    let _ = writeln!(err, "elapsed: {ms} ms");
                }
                return code;
            }
            (code, RunReport { exit_code: code, pass: o.pass, result: o.result, error: None, ..base(&command, &env, elapsed_ms) })
        }
        Err(f) => {
            let _ = writeln!(err, "csub: {}", f.msg);
            if !cli.json {
                return f.code;
            }
            (f.code, RunReport { exit_code: f.code, error: Some(f.msg), ..base(&command, &env, elapsed_ms) })
        }
    };
    let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    code
}

fn base(command: &[String], env: &Env, elapsed_ms: Option<u128>) -> RunReport {
    RunReport {
        tool: format!("csub {}", env!("CARGO_PKG_VERSION")),
        command: command.to_vec(),
        inputs: env.inputs.clone(),
        exit_code: 0,
        pass: false,
        result: Value::Null,
        error: None,
        elapsed_ms,
    }
}

fn dispatch(cmd: &Command, env: &mut Env) -> Result<Outcome, Fail> {
    match cmd {
        Command::Pn { n, charpoly, dot } => pn(env, *n, *charpoly, *dot),
        Command::Mobius { file } => {
            let l = env.lattice(file)?;
            let mu = l.mobius();
            let mut text = String::new();
            for x in 0..l.len() {
                let _ = writeln!(text, "{}\t{}", l.label(x), mu.values[x]);
            }
            let labels = l.labels().to_vec();
            Ok(Outcome::new(true, json!({"elements": labels, "mobius": mu.values}), text))
        }
        Command::Charpoly { file } => {
            let p = env.lattice(file)?.characteristic_polynomial()?;
            Ok(Outcome::new(true, json!({"charpoly": p.to_string(), "coefficients": p.coeffs()}), format!("{p}\n")))
        }
        Command::Check(CheckCmd::Yoon { file }) => {
            let l = env.lattice(file)?;
            let v = check_yoon(&l)?;
            let head = match (v.pass, v.first_failure()) {
                (true, _) => format!("pass: P({})", v.inferred_n.unwrap() + 1),
                (false, Some(f)) => format!("fail: ({}) {}", f.axiom, f.detail),
                (false, None) => "fail".into(),
            };
            let text = format!("{head}\n{}", axioms_text(&v.axioms));
            Ok(Outcome::new(v.pass, &v, text))
        }
        Command::Check(CheckCmd::Firby { file, verbatim }) => {
            let l = env.lattice(file)?;
            let mut opts = FirbyOptions::default();
            if *verbatim {
                opts.rule = SingleCollectionRule::Verbatim;
            }
            if let Some(c) = env.cap_search {
                opts.caps = FirbyCaps { collections: c, p6_families: c, ..opts.caps };
            }
            let r = check_firby_with(&l, opts)?;
            let head = match (r.pass, r.first_failure()) {
                (true, _) => format!("pass: {} 1-points", r.one_points.len()),
                (false, Some(f)) => format!("fail: ({}) {}", f.axiom, f.detail),
                (false, None) => "fail".into(),
            };
            let text = format!("{head}\n{}", axioms_text(&r.axioms));
            Ok(Outcome::new(r.pass, &r, text))
        }
        Command::Amalgam(a) => amalgam_cmd(a, env),
        Command::Cstar(c) => cstar_cmd(c, env),
        Command::Invsemi(i) => invsemi_cmd(i, env),
        Command::Selftest => {
            let rows = run_selftest();
            let pass = rows.iter().all(|r| r.pass);
            let mut text = String::new();
            for r in &rows {
                let _ = writeln!(text, "[{}] {:>2} {}: {}", if r.pass { "PASS" } else { "FAIL" }, r.id, r.title, r.detail);
            }
            Ok(Outcome::new(pass, &rows, text))
        }
    }
}

fn axioms_text(axioms: &[AxiomStatus]) -> String {
    let mut s = String::new();
    for a in axioms {
        let status = serde_json::to_value(a.status).unwrap();
        let _ = write!(s, "  ({}) {}", a.axiom, status.as_str().unwrap_or("?"));
        if !a.detail.is_empty() {
            let _ = write!(s, ": {}", a.detail);
        }
        if !a.witness.is_empty() {
            let _ = write!(s, " {:?}", a.witness);
        }
        s.push('\n');
    }
    s
}

fn pn(env: &mut Env, n: u64, charpoly: bool, dot: bool) -> Result<Outcome, Fail> {
    let n = env.n(n, LATTICE_CAP)?;
    let l = build_partition_lattice(n)?.lattice;
    if charpoly {
        let p = l.characteristic_polynomial()?;
        return Ok(Outcome::new(true, json!({"n": n, "charpoly": p.to_string(), "coefficients": p.coeffs()}), format!("{p}\n")));
    }
    if dot {
        let d = hasse_dot(l.poset(), &format!("P{n}"));
        return Ok(Outcome::new(true, json!({"n": n, "dot": d}), d));
    }
    let j = l.to_json();
    let text = format!("{}\n", serde_json::to_string_pretty(&j).unwrap());
    Ok(Outcome::new(true, json!({"n": n, "poset": j}), text))
}

enum Loaded {
    Action(MonoidAction),
    Category(FinCategory),
}

fn load_source(s: &Source, env: &mut Env) -> Result<Loaded, Fail> {
    if let Some(n) = s.perm {
        let n = env.n(n as u64, 4)?;
        return Ok(Loaded::Action(permutation_action_on_pn(n)?));
    }
    if let Some(n) = s.pullback {
        let n = env.n(n as u64, 3)?;
        return Ok(Loaded::Action(pullback_action_on_pn(n)?));
    }
    let path = s.file.as_ref().ok_or_else(|| Fail::input("an input file, --perm or --pullback is required"))?;
    let v = env.read(path)?;
    if v.get("monoid").is_some() {
        let j: ActionJson = serde_json::from_value(v).map_err(|e| Fail::input(format!("{}: {e}", path.display())))?;
        let a = MonoidAction::from_json(&j)?;
        let verdict = check_action(&a);
        if !verdict.valid {
            return Err(Fail::input(format!("not a monotone action: {verdict:?}")));
        }
        Ok(Loaded::Action(a))
    } else {
        let j: CategoryJson = serde_json::from_value(v).map_err(|e| Fail::input(format!("{}: {e}", path.display())))?;
        Ok(Loaded::Category(validate_category(&j)?))
    }
}

/// The category, the input action if any, and the canonical witness for it.
fn category_of(l: &Loaded) -> Result<(FinCategory, Option<&MonoidAction>, Option<AmalgamWitness>), Fail> {
    match l {
        Loaded::Category(c) => Ok((c.clone(), None, None)),
        Loaded::Action(a) => {
            let g = grothendieck(a)?;
            let w = canonical_witness(&g, &a.monoid, &a.poset);
            Ok((g.category, Some(a), w))
        }
    }
}

fn witness_file(env: &mut Env, c: &FinCategory, path: &Path) -> Result<AmalgamWitness, Fail> {
    let j: WitnessJson = env.read_as(path)?;
    Ok(AmalgamWitness::from_json(c, &j)?)
}

fn amalgam_cmd(cmd: &AmalgamCmd, env: &mut Env) -> Result<Outcome, Fail> {
    match cmd {
        AmalgamCmd::Build { source, dot, action } => {
            let Loaded::Action(a) = load_source(source, env)? else {
                return Err(Fail::input("amalgam build expects an action"));
            };
            if *action {
                let j = a.to_json();
                return Ok(Outcome::new(true, json!({"action": j}), format!("{}\n", serde_json::to_string_pretty(&j).unwrap())));
            }
            let g = grothendieck(&a)?;
            let c = &g.category;
            if *dot {
                let d = c.to_dot("amalgam");
                return Ok(Outcome::new(true, json!({"dot": d}), d));
            }
            let w = canonical_witness(&g, &a.monoid, &a.poset).map(|w| w.to_json(c));
            let result = json!({
                "convention": format!("{:?}", g.convention),
                "mirrored": g.mirrored,
                "category": c.to_json(),
                "witness": w,
            });
            let text = format!("{}\n", serde_json::to_string_pretty(&result).unwrap());
            Ok(Outcome::new(true, result, text))
        }
        AmalgamCmd::Check { source, mode, witness, search, target } => {
            let loaded = load_source(source, env)?;
            let (c, _, canonical) = category_of(&loaded)?;
            let w = match (witness, search) {
                (Some(p), _) => Some(witness_file(env, &c, p)?),
                (None, true) => None,
                (None, false) => canonical,
            };
            let target = match target {
                Some(p) => Some(FinMonoid::from_json(&env.read_as::<MonoidJson>(p)?)?),
                None => None,
            };
            let opts = AmalgamOptions { target, caps: env.amalgam_caps() };
            let r = check_amalgamation_with(&c, w.as_ref(), (*mode).into(), &opts)?;
            let head = match (r.pass, r.first_failure()) {
                (true, _) => "pass".to_string(),
                (false, Some(f)) => format!("fail: ({}) {}", f.axiom, f.detail),
                (false, None) => "fail".into(),
            };
            let mut text = format!("{head}\n{}", axioms_text(&r.axioms));
            let _ = writeln!(text, "weak initial objects pairwise isomorphic: {}", r.weak_initial_unique);
            let witness_json = r.witness.as_ref().map(|w| w.to_json(&c));
            Ok(Outcome::new(r.pass, json!({"report": r, "witness": witness_json}), text))
        }
        AmalgamCmd::Recover { source, mode, witness } => {
            let loaded = load_source(source, env)?;
            let (c, input, canonical) = category_of(&loaded)?;
            let mode: Mode = (*mode).into();
            let w = match witness {
                Some(p) => witness_file(env, &c, p)?,
                None => match canonical {
                    Some(w) => w,
                    None => {
                        let opts = AmalgamOptions { target: None, caps: env.amalgam_caps() };
                        let r = check_amalgamation_with(&c, None, mode, &opts)?;
                        match (r.pass, r.witness) {
                            (true, Some(w)) => w,
                            _ => {
                                let text = "fail: no witness satisfies the axioms\n".to_string();
                                return Ok(Outcome::new(false, json!({"report": r.axioms}), text));
                            }
                        }
                    }
                },
            };
            let action = recover_action(&c, &w, mode)?;
            let eq = build_equivalence(&c, &w, mode)?;
            let round_trip = input.map(|a| a.table() == action.table());
            let pass = eq.properties.is_equivalence && round_trip != Some(false);
            let result = json!({
                "action": action.to_json(),
                "equivalence": eq.properties,
                "round_trip": round_trip,
            });
            let mut text = format!("{}\n", serde_json::to_string_pretty(&action.to_json()).unwrap());
            let p = &eq.properties;
            let _ = writeln!(
                text,
                "comparison functor: faithful {}, full {}, essentially surjective {}",
                p.faithful, p.full, p.essentially_surjective
            );
            if let Some(rt) = round_trip {
                let _ = writeln!(text, "round trip: {}", if rt { "exact" } else { "differs" });
            }
            Ok(Outcome::new(pass, result, text))
        }
        AmalgamCmd::Charfactor { source, dims, dim_a } => {
            let loaded = load_source(source, env)?;
            let (c, _, _) = category_of(&loaded)?;
            let opts = AmalgamOptions { target: None, caps: env.amalgam_caps() };
            let v = check_cstar_characterization(&c, dims, *dim_a, &opts)?;
            let text = format!("{}\n{}", if v.pass { "pass" } else { "fail" }, axioms_text(&v.clauses));
            Ok(Outcome::new(v.pass, &v, text))
        }
    }
}

fn cstar_cmd(cmd: &CstarCmd, env: &mut Env) -> Result<Outcome, Fail> {
    match cmd {
        CstarCmd::Build { n, unital, unit_preserving, poset, dot } => {
            let n = env.n(n.n, cstar::CSTAR_CAP)?;
            if *poset {
                let m = build_csub(n, *unital)?;
                if *dot {
                    let d = hasse_dot(&m.poset, "csub");
                    return Ok(Outcome::new(true, json!({"dot": d}), d));
                }
                let j = m.poset.to_json();
                return Ok(Outcome::new(true, json!({"poset": j}), format!("{}\n", serde_json::to_string_pretty(&j).unwrap())));
            }
            let m = build_cinj(n, CstarFlags { unital: *unital, unit_preserving: *unit_preserving })?;
            if *dot {
                let d = m.category.to_dot("cinj");
                return Ok(Outcome::new(true, json!({"dot": d}), d));
            }
            let counts = m.category.hom_counts();
            let mut text = String::new();
            let _ = writeln!(text, "{} objects, {} morphisms", m.objects.len(), m.homs.len());
            for (i, o) in m.objects.iter().enumerate() {
                let _ = writeln!(text, "  {}\t{:?}", o.label(), counts[i]);
            }
            let result = json!({
                "objects": m.objects.iter().map(|o| o.to_json()).collect::<Vec<_>>(),
                "homs": m.homs.iter().map(|h| h.to_json()).collect::<Vec<_>>(),
                "hom_counts": counts,
                "category": m.category.to_json(),
            });
            Ok(Outcome::new(true, result, text))
        }
        CstarCmd::Compare { n } => {
            let n = env.n(n.n, cstar::CSTAR_CAP)?;
            let r = comparison_report(n)?;
            let mut text = String::new();
            let _ = writeln!(text, "convention: {}", r.convention);
            let _ = writeln!(text, "functorial: {}", r.functorial);
            let _ = writeln!(text, "object-bijective: {}", r.object_bijective);
            if let Some(p) = &r.properties {
                let _ = writeln!(text, "faithful: {}", p.faithful);
                if let Some(w) = &r.faithful_witness {
                    let l = &r.source_labels;
                    let _ = writeln!(text, "  Hom({}, {}): {} morphisms, {} images", l[w.dom], l[w.cod], w.source_count, w.image_count);
                }
                let _ = writeln!(text, "full: {}", p.full);
                if let Some(w) = &r.full_witness {
                    let l = &r.source_labels;
                    let _ = writeln!(
                        text,
                        "  Hom(C({}), C({})): {} homomorphisms, {} induced",
                        l[w.cod], l[w.dom], w.target_count, w.image_count
                    );
                }
                let _ = writeln!(text, "essentially surjective: {}", p.essentially_surjective);
            }
            let pass = r.functorial && r.object_bijective;
            Ok(Outcome::new(pass, &r, text))
        }
        CstarCmd::Ideals { n } => {
            let n = env.n(n.n, cstar::CSTAR_CAP)?;
            let r = ideal_condition_morphisms(n)?;
            let label = |f: usize| r.model.homs[f].label();
            let mut text = String::new();
            let _ = writeln!(text, "kept {} of {} morphisms", r.kept.len(), r.model.homs.len());
            for &f in &r.kept {
                let _ = writeln!(text, "  + {}", label(f));
            }
            for (f, s) in &r.rejected {
                let _ = writeln!(text, "  - {} (ideal support {s:?})", label(*f));
            }
            let _ = writeln!(text, "closed under composition: {}", r.category.is_some());
            let result = json!({
                "kept": r.kept.iter().map(|&f| label(f)).collect::<Vec<_>>(),
                "rejected": r.rejected.iter().map(|(f, s)| json!({"hom": label(*f), "support": s})).collect::<Vec<_>>(),
                "closed": r.category.is_some(),
            });
            Ok(Outcome::new(r.category.is_some(), result, text))
        }
        CstarCmd::Terminal { n, unital } => {
            let n = env.n(n.n, cstar::CSTAR_CAP)?;
            let flags = if *unital { CstarFlags::UNITAL } else { CstarFlags::GENERAL };
            let m = build_cinj(n, flags)?;
            let r = weak_terminal_report(&m.category)?;
            let mut text = String::new();
            for (w, label) in r.reductions.iter().zip(&r.labels) {
                let _ = writeln!(
                    text,
                    "{label}: {} objects map in; inclusion faithful {}, full {}, essentially surjective {}",
                    w.subcategory_objects.len(),
                    w.faithful,
                    w.full,
                    w.essentially_surjective
                );
            }
            if r.objects.is_empty() {
                text.push_str("no weakly terminal object\n");
            }
            Ok(Outcome::new(!r.objects.is_empty(), &r, text))
        }
    }
}

fn invsemi_cmd(cmd: &InvsemiCmd, env: &mut Env) -> Result<Outcome, Fail> {
    match cmd {
        InvsemiCmd::Build { n } => {
            let t = build_t(env.n(n.n, invsemi::INVSEMI_CAP)?)?;
            let j = t.to_json();
            let result = json!({"semigroup": j, "zero_products": t.zero_products.len()});
            let mut text = format!("{} nonzero elements, zero adjoined\n", t.len() - 1);
            for x in t.nonzero() {
                let _ = writeln!(text, "  {}", t.elements[x].label());
            }
            let _ = writeln!(text, "{} products of nonzero elements are zero", t.zero_products.len());
            Ok(Outcome::new(true, result, text))
        }
        InvsemiCmd::Verify { n } => {
            let t = build_t(env.n(n.n, invsemi::INVSEMI_CAP)?)?;
            let r = law_report(&t);
            let text = format!("{}\n{}", if r.pass { "pass" } else { "fail" }, axioms_text(&r.laws));
            Ok(Outcome::new(r.pass, &r, text))
        }
        InvsemiCmd::Derived { n } => {
            let t = build_t(env.n(n.n, invsemi::INVSEMI_CAP)?)?;
            let d = derived_structures(&t)?;
            let pass = d.domain_image_failures.is_empty() && d.idempotents_are_inclusions;
            let mut text = String::new();
            let _ = writeln!(text, "E(T): {} idempotents, isomorphic to the inclusion poset", d.e_size);
            let _ = writeln!(text, "G(T): {} morphisms, isomorphic to the groupoid of isomorphisms", d.g_morphisms);
            let _ = writeln!(text, "L(T): {} morphisms, isomorphic to the injective category", d.l_morphisms);
            let _ = writeln!(text, "idempotents are the inclusions: {}", d.idempotents_are_inclusions);
            let _ = writeln!(text, "domain/image identities fail on {} elements", d.domain_image_failures.len());
            Ok(Outcome::new(pass, &d, text))
        }
        InvsemiCmd::Autelements { n } => {
            let a = aut_elements_equivalence(env.n(n.n, invsemi::INVSEMI_CAP)?)?;
            let pass = a.f_properties.is_equivalence && a.g_properties.is_equivalence && a.gf_identity && a.fg_iso_to_identity;
            let mut text = String::new();
            let _ = writeln!(text, "category of elements: {} objects; inclusion poset: {}", a.elements_objects, a.csub_objects);
            for (name, p) in [("F", &a.f_properties), ("G", &a.g_properties)] {
                let _ = writeln!(
                    text,
                    "{name}: faithful {}, full {}, essentially surjective {}",
                    p.faithful, p.full, p.essentially_surjective
                );
            }
            let _ = writeln!(text, "GF = id: {}; FG ≅ id: {}", a.gf_identity, a.fg_iso_to_identity);
            Ok(Outcome::new(pass, &a, text))
        }
    }
}
