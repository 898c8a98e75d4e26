//! Command line front end: argument parsing, report assembly and the check suite.
//!
//! The binary only forwards to [`main_entry`]; everything here is callable in-process.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::filtration::{filtration_graded, v_filtration_pieces};
use crate::jacquet::{
    chain_check, independence_check, jacquet, module_dims, parse_sequence, exactness_check, ps_window,
    u_nbar_generation_check, JacquetOptions,
};
use crate::lie::{all_thetas, stabilizer_report, LieAlgebra, SubLabel};
use crate::linalg::Q;
use crate::module::{format_weight, parse_module, ModuleFile, WeightModule};
use crate::pbw::{chain_split, default_degree_cap, heisenberg_split, ulemma_minimal_n};
use crate::rees::{compare_fiber_to_cone, labeling_independence_check, MonomialIdealFamily};
use crate::report::{json_diff, CheckReport, Table, Verdict};
use crate::roots::{RootSystem, Theta};
use crate::symbolic::{a_action_check, equivariance_sweep};

/// Statement label and the one subcommand that checks it.
pub const MANIFEST: &[(&str, &str)] = &[
    ("normal-cone-definition", "rees compare"),
    ("affine-calculation-of-deformation", "rees table"),
    ("labeling-independence", "rees table"),
    ("deformation-to-normal-cone", "rees compare"),
    ("local-calculation-of-deformation", "rees equivariance"),
    ("action-of-a-on-chart", "rees equivariance"),
    ("jacquet-definitions", "jacquet compute"),
    ("hc-a-theta-decomposition", "roots parabolic"),
    ("n-homology-preserves-hc", "jacquet compute"),
    ("finite-length-criterion", "jacquet compute"),
    ("weights-of-jhat", "jacquet compute"),
    ("weight-space-decomposition-of-j", "jacquet compute"),
    ("weight-space-stability", "jacquet compute"),
    ("finite-generation-over-u-nbar", "jacquet compute"),
    ("image-of-jacquet-functor", "jacquet independence"),
    ("independence-of-theta1", "jacquet independence"),
    ("chain-rule", "jacquet chain"),
    ("exactness", "jacquet exact"),
    ("nilpotent-ideal-powers", "lie ulemma"),
    ("filtration-definitions", "filtration graded"),
    ("filtration-graded-comparison", "filtration graded"),
    ("jhat-filtration-properties", "vfilt pieces"),
    ("v-filtration-definition", "vfilt pieces"),
    ("v-filtration-properties", "vfilt pieces"),
    ("chart-conditions", "lie build"),
    ("stabilizer-of-base-point", "lie stab"),
    ("base-of-z", "lie stab"),
    ("transitivity-on-fiber", "lie stab"),
    ("fiber-structure", "lie stab"),
];

/// Every documented subcommand, as `group name`.
pub const SUBCOMMANDS: &[&str] = &[
    "roots info",
    "roots parabolic",
    "lie build",
    "lie stab",
    "lie ulemma",
    "rees table",
    "rees compare",
    "rees equivariance",
    "jacquet compute",
    "jacquet independence",
    "jacquet chain",
    "jacquet exact",
    "filtration graded",
    "vfilt pieces",
    "suite",
];

pub fn checks_for(command: &str) -> Vec<String> {
    MANIFEST.iter().filter(|(_, c)| *c == command).map(|(l, _)| l.to_string()).collect()
}

#[derive(Parser, Debug, Clone)]
#[command(name = "jacquet", version, about = "Exact checks of partial Jacquet functors, parabolic root data and Rees deformations")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads (overrides JACQUET_THREADS). Results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Module description file (JSON), used in place of --module.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Root systems and parabolic root data.
    #[command(subcommand)]
    Roots(RootsCmd),
    /// sl_n, its Θ-subalgebras, chart stabilizers and powers of nilpotent ideals.
    #[command(subcommand)]
    Lie(LieCmd),
    /// Multigraded Rees algebras of monomial ideal families.
    #[command(subcommand)]
    Rees(ReesCmd),
    /// Partial Jacquet functors on truncated weight modules.
    #[command(subcommand)]
    Jacquet(JacquetCmd),
    /// The filtration F_e attached to a cocharacter.
    #[command(subcommand)]
    Filtration(FiltrationCmd),
    /// Pieces of the V-filtration.
    #[command(subcommand)]
    Vfilt(VfiltCmd),
    /// The full check battery.
    Suite(SuiteArgs),
}

#[derive(Args, Debug, Clone)]
pub struct TypeArg {
    /// Cartan type, e.g. A2, B2, G2.
    #[arg(long = "type", default_value = "A1")]
    pub type_name: String,
}

#[derive(Subcommand, Debug, Clone)]
pub enum RootsCmd {
    /// Positive roots, coroots and the Cartan matrix.
    Info(TypeArg),
    /// Σ_Θ, n_Θ, a_Θ and fundamental coweights; optionally the cocharacter of given exponents.
    Parabolic {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long, default_value = "none")]
        theta: String,
        /// ⟨α, ν⟩ for every simple root, e.g. 1,0.
        #[arg(long)]
        exponents: Option<String>,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum LieCmd {
    /// Structure checks and Θ-subalgebra dimensions.
    Build(TypeArg),
    /// Limit stabilizer at x_Θ against k_Θ ⊕ n_Θ; every Θ when --theta is absent.
    Stab {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        theta: Option<String>,
    },
    /// Smallest n with cⁿ ⊂ c₁^{k₁}U(c) + c₂^{k₂}U(c).
    Ulemma {
        /// With --theta1/2/3 the split c(Θ1,Θ3) = c(Θ2,Θ3) ⊕ c(Θ1,Θ2) of sl_n; otherwise the Heisenberg split.
        #[arg(long = "type")]
        type_name: Option<String>,
        #[arg(long)]
        theta1: Option<String>,
        #[arg(long)]
        theta2: Option<String>,
        #[arg(long)]
        theta3: Option<String>,
        /// All of 1..=3 when absent.
        #[arg(long)]
        k1: Option<usize>,
        #[arg(long)]
        k2: Option<usize>,
        #[arg(long)]
        degree_cap: Option<usize>,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum ReesCmd {
    /// Hilbert table of the Rees algebra, with a relabeling check.
    Table {
        /// Ideals separated by `;`, generators by `,`, e.g. "x^2,y;z".
        #[arg(long)]
        ideals: String,
        #[arg(long)]
        nvars: Option<usize>,
        #[arg(long, default_value_t = 4)]
        degree: u32,
        #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
        lo: i64,
    },
    /// Fiber sums against the normal cone, degree by degree.
    Compare {
        #[arg(long, conflicts_with = "all_coordinate")]
        ideals: Option<String>,
        #[arg(long)]
        nvars: Option<usize>,
        /// Every family of distinct coordinate ideals with at most --max-vars variables.
        #[arg(long)]
        all_coordinate: bool,
        #[arg(long, default_value_t = 4)]
        max_vars: usize,
        #[arg(long, default_value_t = 4)]
        degree: u32,
        /// Total-degree window for monomial counts; defaults to --degree.
        #[arg(long)]
        window: Option<u32>,
    },
    /// Chart equivariance for power characters and the torus action formula.
    Equivariance {
        #[arg(long, default_value_t = 3)]
        max_l: usize,
        #[arg(long, default_value_t = 3)]
        max_abs: i64,
    },
}

#[derive(Args, Debug, Clone)]
pub struct ModuleArgs {
    #[command(flatten)]
    pub ty: TypeArg,
    /// verma:λ, gverma:θ:λ, fd:λ or ps:ν:ε.
    #[arg(long)]
    pub module: Option<String>,
    /// Depth below the highest weights, or K-type height for principal series.
    #[arg(long, default_value_t = 10)]
    pub window: usize,
}

#[derive(Subcommand, Debug, Clone)]
pub enum JacquetCmd {
    /// J_{Θ2,Θ1}(V) weight by weight with stabilization certificates.
    Compute {
        #[command(flatten)]
        m: ModuleArgs,
        #[arg(long, default_value = "all")]
        theta1: String,
        #[arg(long, default_value = "none")]
        theta2: String,
        #[arg(long)]
        k_max: Option<usize>,
    },
    /// J_{Θ,Θ1}(V) for two choices of Θ1, and against V itself.
    Independence {
        #[command(flatten)]
        m: ModuleArgs,
        /// Defaults to the module's own Θ.
        #[arg(long)]
        theta2: Option<String>,
        /// Defaults to --theta2.
        #[arg(long)]
        theta1: Option<String>,
        #[arg(long, default_value = "all")]
        theta1_alt: String,
    },
    /// J_{Θ3,Θ2} ∘ J_{Θ2,Θ1} against J_{Θ3,Θ1}.
    Chain {
        #[command(flatten)]
        m: ModuleArgs,
        #[arg(long, default_value = "all")]
        theta1: String,
        #[arg(long)]
        theta2: String,
        #[arg(long, default_value = "none")]
        theta3: String,
    },
    /// Per-weight additivity on a short exact sequence.
    Exact {
        #[command(flatten)]
        ty: TypeArg,
        /// bgg:λ, ps:ν:ε or split:<module>+<module>.
        #[arg(long)]
        sequence: String,
        #[arg(long, default_value = "all")]
        theta1: String,
        #[arg(long, default_value = "none")]
        theta2: String,
        #[arg(long, default_value_t = 12)]
        window: usize,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum FiltrationCmd {
    /// dim F_e/F_{e-1} against Σ_{μ(H)=e} dim J_μ.
    Graded {
        #[command(flatten)]
        m: ModuleArgs,
        /// ⟨α, ν⟩ for every simple root.
        #[arg(long, default_value = "1")]
        exponents: String,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum VfiltCmd {
    /// Dimensions of F_{-a+k} and the generation property.
    Pieces {
        #[command(flatten)]
        m: ModuleArgs,
        #[arg(long, default_value = "1")]
        exponents: String,
        #[arg(long, default_value_t = 3)]
        k_max: i64,
        #[arg(long, default_value_t = 1)]
        l_max: i64,
    },
}

#[derive(Args, Debug, Clone)]
pub struct SuiteArgs {
    /// Run only these entries (comma separated names).
    #[arg(long)]
    pub only: Option<String>,
    /// Compare every report with <dir>/<name>.json.
    #[arg(long)]
    pub golden: Option<PathBuf>,
}

// ---------------------------------------------------------------------------
// Suite

/// Entries of the check battery: a stable name and the arguments it runs.
pub const SUITE: &[(&str, &[&str])] = &[
    ("roots-info-a2", &["roots", "info", "--type", "A2"]),
    ("roots-parabolic-a3", &["roots", "parabolic", "--type", "A3", "--theta", "a,c", "--exponents", "0,1,0"]),
    ("lie-build-a2", &["lie", "build", "--type", "A2"]),
    ("rees-fiber-cone", &["rees", "compare", "--all-coordinate", "--max-vars", "4", "--degree", "6"]),
    ("rees-labeling-2", &["rees", "table", "--ideals", "x^2,y;y^3", "--degree", "5"]),
    ("rees-labeling-3", &["rees", "table", "--ideals", "x;y;z", "--degree", "4"]),
    ("rees-labeling-3-mixed", &["rees", "table", "--ideals", "x,y;y,z;x^2", "--degree", "4"]),
    ("rees-equivariance", &["rees", "equivariance", "--max-l", "3", "--max-abs", "3"]),
    ("stab-a1", &["lie", "stab", "--type", "A1"]),
    ("stab-a2", &["lie", "stab", "--type", "A2"]),
    ("stab-a3", &["lie", "stab", "--type", "A3"]),
    ("jacquet-compute-verma-a1", &["jacquet", "compute", "--type", "A1", "--module", "verma:3", "--window", "12"]),
    ("identity-verma-a1", &["jacquet", "independence", "--type", "A1", "--module", "verma:3", "--window", "10"]),
    ("identity-verma-a2", &["jacquet", "independence", "--type", "A2", "--module", "verma:1,1", "--window", "10"]),
    ("identity-gverma-a2", &["jacquet", "independence", "--type", "A2", "--module", "gverma:a:1,0", "--window", "10"]),
    (
        "chain-a",
        &["jacquet", "chain", "--type", "A2", "--module", "gverma:a:1,0", "--theta3", "none", "--theta2", "a", "--theta1", "all", "--window", "8"],
    ),
    (
        "chain-b",
        &["jacquet", "chain", "--type", "A2", "--module", "gverma:b:0,1", "--theta3", "none", "--theta2", "b", "--theta1", "all", "--window", "8"],
    ),
    ("exact-bgg", &["jacquet", "exact", "--type", "A1", "--sequence", "bgg:3", "--window", "12"]),
    ("exact-principal-series", &["jacquet", "exact", "--type", "A1", "--sequence", "ps:1:0", "--window", "12"]),
    ("filtration-verma", &["filtration", "graded", "--type", "A1", "--module", "verma:3", "--exponents", "1", "--window", "8"]),
    ("filtration-ps-1", &["filtration", "graded", "--type", "A1", "--module", "ps:1:0", "--exponents", "1", "--window", "10"]),
    ("filtration-ps-2", &["filtration", "graded", "--type", "A1", "--module", "ps:2:0", "--exponents", "1", "--window", "10"]),
    (
        "filtration-singular-a2",
        &["filtration", "graded", "--type", "A2", "--module", "gverma:b:1,1", "--exponents", "1,0", "--window", "6"],
    ),
    ("vfilt-verma", &["vfilt", "pieces", "--type", "A1", "--module", "verma:3", "--exponents", "1", "--window", "10"]),
    ("ulemma-heisenberg", &["lie", "ulemma"]),
];

#[derive(Clone, Debug, Serialize)]
pub struct SuiteItem {
    pub name: String,
    pub args: Vec<String>,
    pub exit_code: i32,
    pub report: Option<CheckReport>,
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub golden_diff: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub verdict: Verdict,
    pub items: Vec<SuiteItem>,
}

impl SuiteReport {
    pub fn exit_code(&self) -> i32 {
        self.verdict.exit_code()
    }
}

fn suite_entries(only: Option<&str>) -> Result<Vec<(&'static str, &'static [&'static str])>> {
    let Some(only) = only else { return Ok(SUITE.to_vec()) };
    let mut out = Vec::new();
    for name in only.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match SUITE.iter().find(|(n, _)| *n == name) {
            Some(e) => out.push(*e),
            None => return Err(Error::InvalidInput(format!("no suite entry named {name:?}"))),
        }
    }
    Ok(out)
}

/// Runs suite entries in parallel; the item order is that of [`SUITE`].
pub fn run_suite(args: &SuiteArgs) -> Result<SuiteReport> {
    let entries = suite_entries(args.only.as_deref())?;
    if let Some(dir) = &args.golden {
        for (name, _) in &entries {
            let p = dir.join(format!("{name}.json"));
            if !p.exists() {
                return Err(Error::InvalidInput(format!("missing golden file {}", p.display())));
            }
        }
    }
    let mut items: Vec<SuiteItem> = entries
        .par_iter()
        .map(|(name, argv)| {
            let mut full = vec!["jacquet"];
            full.extend_from_slice(argv);
            let args: Vec<String> = argv.iter().map(|s| s.to_string()).collect();
            let outcome = Cli::try_parse_from(&full)
                .map_err(|e| Error::InvalidInput(e.to_string()))
                .and_then(|cli| match cli.command {
                    Command::Suite(_) => Err(Error::InvalidInput("suites do not nest".into())),
                    c => run_command(&c, None),
                });
            match outcome {
                Ok(r) => SuiteItem { name: name.to_string(), args, exit_code: r.verdict.exit_code(), report: Some(r), error: None, golden_diff: vec![] },
                Err(e) => SuiteItem { name: name.to_string(), args, exit_code: e.exit_code(), report: None, error: Some(e.to_string()), golden_diff: vec![] },
            }
        })
        .collect();
    if let Some(dir) = &args.golden {
        for item in &mut items {
            let p = dir.join(format!("{}.json", item.name));
            let text = std::fs::read_to_string(&p).map_err(|e| Error::InvalidInput(format!("{}: {e}", p.display())))?;
            let expected: Value = serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("{}: {e}", p.display())))?;
            let actual = serde_json::to_value(&item.report).expect("report serializes");
            item.golden_diff = json_diff(&expected, &actual);
        }
    }
    let mut verdict = Verdict::Pass;
    for item in &items {
        let v = match item.exit_code {
            0 if item.golden_diff.is_empty() => Verdict::Pass,
            3 => Verdict::Inconclusive,
            _ => Verdict::Fail,
        };
        verdict = verdict.and(v);
    }
    Ok(SuiteReport { verdict, items })
}

// ---------------------------------------------------------------------------
// Commands

fn inputs(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn sl_of_type(name: &str) -> Result<LieAlgebra> {
    let t = name.trim();
    let r = t
        .strip_prefix('A')
        .and_then(|r| r.parse::<usize>().ok())
        .ok_or_else(|| Error::InvalidInput(format!("only type A Lie algebras are modelled, got {t:?}")))?;
    LieAlgebra::sl(r + 1)
}

fn parse_exponents(s: &str, rank: usize) -> Result<Vec<i64>> {
    let e: Vec<i64> = s
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| Error::InvalidInput(format!("bad exponent {x:?}"))))
        .collect::<Result<_>>()?;
    if e.len() != rank {
        return Err(Error::DimensionMismatch { expected: rank, found: e.len() });
    }
    Ok(e)
}

fn load_module(m: &ModuleArgs, config: Option<&Path>) -> Result<WeightModule> {
    if let Some(path) = config {
        let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        let file: ModuleFile = serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        return WeightModule::from_file(&file);
    }
    let spec = m.module.as_deref().ok_or_else(|| Error::InvalidInput("--module or --config is required".into()))?;
    let g = sl_of_type(&m.ty.type_name)?;
    // principal series take a K-type window with room below the exponents
    let window = match spec.strip_prefix("ps:").and_then(|r| r.split(':').next()) {
        Some(nu) => ps_window(m.window, &crate::linalg::parse_q(nu)?).max(0) as usize,
        None => m.window,
    };
    parse_module(spec, &g, window)
}

fn module_inputs(m: &ModuleArgs, v: &WeightModule) -> Vec<(&'static str, String)> {
    vec![("type", m.ty.type_name.clone()), ("module", v.name.clone()), ("window", m.window.to_string())]
}

fn weight_str(w: &[Q]) -> String {
    format_weight(w)
}

/// Runs one subcommand. Certificates that are not reached become inconclusive reports.
pub fn run_command(command: &Command, config: Option<&Path>) -> Result<CheckReport> {
    match dispatch(command, config) {
        Err(Error::NotCertified(why)) => Ok(inconclusive(command, why)),
        Err(e @ Error::NotFound { .. }) => Ok(inconclusive(command, e.to_string())),
        other => other,
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Roots(RootsCmd::Info(_)) => "roots info",
        Command::Roots(RootsCmd::Parabolic { .. }) => "roots parabolic",
        Command::Lie(LieCmd::Build(_)) => "lie build",
        Command::Lie(LieCmd::Stab { .. }) => "lie stab",
        Command::Lie(LieCmd::Ulemma { .. }) => "lie ulemma",
        Command::Rees(ReesCmd::Table { .. }) => "rees table",
        Command::Rees(ReesCmd::Compare { .. }) => "rees compare",
        Command::Rees(ReesCmd::Equivariance { .. }) => "rees equivariance",
        Command::Jacquet(JacquetCmd::Compute { .. }) => "jacquet compute",
        Command::Jacquet(JacquetCmd::Independence { .. }) => "jacquet independence",
        Command::Jacquet(JacquetCmd::Chain { .. }) => "jacquet chain",
        Command::Jacquet(JacquetCmd::Exact { .. }) => "jacquet exact",
        Command::Filtration(FiltrationCmd::Graded { .. }) => "filtration graded",
        Command::Vfilt(VfiltCmd::Pieces { .. }) => "vfilt pieces",
        Command::Suite(_) => "suite",
    }
}

fn inconclusive(command: &Command, why: String) -> CheckReport {
    let mut r = CheckReport::new(command_name(command), BTreeMap::new());
    r.verdict = Verdict::Inconclusive;
    r.data = json!({ "reason": why });
    r.table = Table::new(&["reason"]);
    r.table.push(vec![why]);
    r
}

fn dispatch(command: &Command, config: Option<&Path>) -> Result<CheckReport> {
    match command {
        Command::Roots(RootsCmd::Info(ty)) => roots_info(&ty.type_name),
        Command::Roots(RootsCmd::Parabolic { ty, theta, exponents }) => roots_parabolic(&ty.type_name, theta, exponents.as_deref()),
        Command::Lie(LieCmd::Build(ty)) => lie_build(&ty.type_name),
        Command::Lie(LieCmd::Stab { ty, theta }) => lie_stab(&ty.type_name, theta.as_deref()),
        Command::Lie(LieCmd::Ulemma { type_name, theta1, theta2, theta3, k1, k2, degree_cap }) => {
            lie_ulemma(type_name.as_deref(), [theta1, theta2, theta3], *k1, *k2, *degree_cap)
        }
        Command::Rees(ReesCmd::Table { ideals, nvars, degree, lo }) => rees_table(ideals, *nvars, *degree, *lo),
        Command::Rees(ReesCmd::Compare { ideals, nvars, all_coordinate, max_vars, degree, window }) => {
            rees_compare(ideals.as_deref(), *nvars, *all_coordinate, *max_vars, *degree, window.unwrap_or(*degree))
        }
        Command::Rees(ReesCmd::Equivariance { max_l, max_abs }) => rees_equivariance(*max_l, *max_abs),
        Command::Jacquet(JacquetCmd::Compute { m, theta1, theta2, k_max }) => jacquet_compute(m, config, theta1, theta2, *k_max),
        Command::Jacquet(JacquetCmd::Independence { m, theta2, theta1, theta1_alt }) => {
            jacquet_independence(m, config, theta2.as_deref(), theta1.as_deref(), theta1_alt)
        }
        Command::Jacquet(JacquetCmd::Chain { m, theta1, theta2, theta3 }) => jacquet_chain(m, config, theta1, theta2, theta3),
        Command::Jacquet(JacquetCmd::Exact { ty, sequence, theta1, theta2, window }) => {
            jacquet_exact(&ty.type_name, sequence, theta1, theta2, *window)
        }
        Command::Filtration(FiltrationCmd::Graded { m, exponents }) => filtration_cmd(m, config, exponents),
        Command::Vfilt(VfiltCmd::Pieces { m, exponents, k_max, l_max }) => vfilt_cmd(m, config, exponents, *k_max, *l_max),
        Command::Suite(_) => Err(Error::InvalidInput("use run_suite for the suite".into())),
    }
}

fn roots_info(type_name: &str) -> Result<CheckReport> {
    let rs = RootSystem::from_type(type_name)?;
    let mut r = CheckReport::new("roots info", inputs(&[("type", type_name.to_string())]));
    let mut t = Table::new(&["root", "height", "coroot"]);
    for (beta, co) in rs.positive_roots.iter().zip(&rs.coroots) {
        // ⟨β, β^∨⟩ = 2
        let pairing: i64 = co.iter().enumerate().map(|(i, c)| c * rs.pairing_with_coroot(beta, i)).sum();
        r.require(pairing == 2, || format!("<{beta:?}, coroot> = {pairing}"));
        t.push(vec![format!("{beta:?}"), RootSystem::height(beta).to_string(), format!("{co:?}")]);
    }
    r.table = t;
    Ok(r.with_data(&rs))
}

fn roots_parabolic(type_name: &str, theta: &str, exponents: Option<&str>) -> Result<CheckReport> {
    let rs = RootSystem::from_type(type_name)?;
    let th = Theta::parse(theta, rs.rank)?;
    let p = rs.parabolic(&th)?;
    let mut pairs = vec![("type", type_name.to_string()), ("theta", th.label(rs.rank))];
    let mut r = CheckReport::new("roots parabolic", BTreeMap::new());
    r.require(p.dim_a_theta() == rs.rank - th.len(), || format!("dim a_Theta = {}", p.dim_a_theta()));
    let total = p.sigma_theta_pos.len() + p.n_theta_roots.len();
    r.require(total == rs.num_positive(), || format!("|Sigma_Theta+| + |n_Theta| = {total}"));
    // every root of n_Θ is nonzero on a_Θ, every root of m_Θ vanishes there
    for beta in &p.n_theta_roots {
        let on_a = p.a_theta_basis.iter().any(|h| !rs.root_on_coweight(beta, h).is_zero());
        r.require(on_a, || format!("{beta:?} vanishes on a_Theta"));
    }
    for beta in &p.sigma_theta_pos {
        let zero = p.a_theta_basis.iter().all(|h| rs.root_on_coweight(beta, h).is_zero());
        r.require(zero, || format!("{beta:?} is nonzero on a_Theta"));
    }
    let mut data = json!({ "parabolic": p });
    if let Some(e) = exponents {
        let exps = parse_exponents(e, rs.rank)?;
        pairs.push(("exponents", e.to_string()));
        let vanishing = Theta::from_indices((0..rs.rank).filter(|&i| exps[i] == 0));
        let given: Vec<(usize, i64)> = (0..rs.rank).filter(|&i| exps[i] != 0).map(|i| (i, exps[i])).collect();
        let nu = rs.cocharacter(&Theta::all(rs.rank), &vanishing, &given)?;
        let got = nu.vanishing_set(&rs);
        r.require(got == vanishing, || format!("H vanishes on {:?}", got));
        data["cocharacter"] = serde_json::to_value(&nu).expect("serializes");
    }
    let mut t = Table::new(&["root", "in"]);
    for b in &p.sigma_theta_pos {
        t.push(vec![format!("{b:?}"), "m".into()]);
    }
    for b in &p.n_theta_roots {
        t.push(vec![format!("{b:?}"), "n".into()]);
    }
    r.inputs = inputs(&pairs);
    r.table = t;
    r.data = data;
    Ok(r)
}

fn lie_build(type_name: &str) -> Result<CheckReport> {
    let g = sl_of_type(type_name)?;
    let mut r = CheckReport::new("lie build", inputs(&[("type", type_name.to_string())]));
    let jac = g.jacobi_violation();
    r.require(jac.is_none(), || format!("Jacobi identity fails on {jac:?}"));
    r.require(g.theta_is_automorphism(), || "theta is not an automorphism".into());
    let labels = [SubLabel::M, SubLabel::A, SubLabel::N, SubLabel::NBar, SubLabel::K];
    let mut t = Table::new(&["theta", "m", "a", "n", "nbar", "k", "closed"]);
    let mut rows = Vec::new();
    for th in all_thetas(g.rank()) {
        let subs = labels.iter().map(|&l| g.subalgebra(l, &th)).collect::<Result<Vec<_>>>()?;
        let closed = subs.iter().all(|s| g.is_closed(s.vectors()));
        let dims: Vec<usize> = subs.iter().map(|s| s.dim()).collect();
        let name = th.label(g.rank());
        // g = n̄_Θ ⊕ m_Θ ⊕ a_Θ ⊕ n_Θ
        let sum = dims[0] + dims[1] + dims[2] + dims[3];
        r.require(sum == g.dim(), || format!("theta {name}: Langlands pieces add up to {sum}"));
        r.require(closed, || format!("theta {name}: a subalgebra is not closed"));
        let mut row = vec![name.clone()];
        row.extend(dims.iter().map(|d| d.to_string()));
        row.push(closed.to_string());
        t.push(row);
        rows.push(json!({ "theta": name, "m": dims[0], "a": dims[1], "n": dims[2], "nbar": dims[3], "k": dims[4], "closed": closed }));
    }
    r.table = t;
    let basis: Vec<String> = (0..g.dim()).map(|k| g.basis_label(k)).collect();
    r.data = json!({ "algebra": format!("sl{}", g.n), "dim": g.dim(), "basis": basis, "subalgebras": rows });
    Ok(r)
}

fn lie_stab(type_name: &str, theta: Option<&str>) -> Result<CheckReport> {
    let g = sl_of_type(type_name)?;
    let thetas = match theta {
        Some(t) => vec![Theta::parse(t, g.rank())?],
        None => all_thetas(g.rank()),
    };
    let mut r = CheckReport::new(
        "lie stab",
        inputs(&[("type", type_name.to_string()), ("theta", theta.unwrap_or("every").to_string())]),
    );
    let mut t = Table::new(&["theta", "stab", "k_theta", "n_theta", "k", "equal"]);
    let mut reports = Vec::new();
    for th in &thetas {
        let s = stabilizer_report(&g, th)?;
        let name = th.label(g.rank());
        r.require(s.equal, || format!("theta {name}: stabilizer differs from k_Theta + n_Theta"));
        r.require(s.dim_k_theta + s.dim_n_theta == s.dim_k, || {
            format!("theta {name}: dim k_Theta + dim n_Theta = {} != dim k = {}", s.dim_k_theta + s.dim_n_theta, s.dim_k)
        });
        t.push(vec![
            name,
            s.dim_stabilizer.to_string(),
            s.dim_k_theta.to_string(),
            s.dim_n_theta.to_string(),
            s.dim_k.to_string(),
            s.equal.to_string(),
        ]);
        reports.push(s);
    }
    r.table = t;
    Ok(r.with_data(&reports))
}

fn lie_ulemma(
    type_name: Option<&str>,
    thetas: [&Option<String>; 3],
    k1: Option<usize>,
    k2: Option<usize>,
    degree_cap: Option<usize>,
) -> Result<CheckReport> {
    let (lie, c1, c2, split) = match (type_name, thetas) {
        (Some(ty), [Some(t1), Some(t2), t3]) => {
            let g = sl_of_type(ty)?;
            let rank = g.rank();
            let (th1, th2) = (Theta::parse(t1, rank)?, Theta::parse(t2, rank)?);
            let th3 = Theta::parse(t3.as_deref().unwrap_or("none"), rank)?;
            let (lie, c1, c2) = chain_split(&g, &th3, &th2, &th1)?;
            let name = format!("{ty}:{}>{}>{}", th1.label(rank), th2.label(rank), th3.label(rank));
            (lie, c1, c2, name)
        }
        (None, [None, None, None]) => {
            let (lie, c1, c2) = heisenberg_split()?;
            (lie, c1, c2, "heisenberg".to_string())
        }
        _ => return Err(Error::InvalidInput("give --type with --theta1 and --theta2, or none of them".into())),
    };
    let k1s: Vec<usize> = k1.map_or((1..=3).collect(), |k| vec![k]);
    let k2s: Vec<usize> = k2.map_or((1..=3).collect(), |k| vec![k]);
    let mut r = CheckReport::new(
        "lie ulemma",
        inputs(&[
            ("split", split),
            ("k1", k1.map_or("1..3".into(), |k| k.to_string())),
            ("k2", k2.map_or("1..3".into(), |k| k.to_string())),
        ]),
    );
    let mut t = Table::new(&["k1", "k2", "n", "witness"]);
    let mut results = Vec::new();
    for &a in &k1s {
        for &b in &k2s {
            let cap = degree_cap.unwrap_or_else(|| default_degree_cap(lie.dim(), a, b));
            let u = ulemma_minimal_n(&lie, &c1, &c2, a, b, cap)?;
            r.require(u.witness.word.len() + 1 == u.n, || format!("k1={a} k2={b}: witness has length {}", u.witness.word.len()));
            t.push(vec![a.to_string(), b.to_string(), u.n.to_string(), u.witness.word.join(" ")]);
            results.push(u);
        }
    }
    r.table = t;
    Ok(r.with_data(&results))
}

fn hilbert_rows(t: &crate::rees::HilbertTable) -> Table {
    let l = t.rows.first().map_or(0, |r| r.multidegree.len());
    let header: Vec<String> = (1..=l).map(|i| format!("n{i}")).chain(["dim".to_string()]).collect();
    let mut out = Table { header, rows: Vec::new() };
    for row in &t.rows {
        out.push(row.multidegree.iter().map(|x| x.to_string()).chain([row.dim.to_string()]).collect());
    }
    out
}

fn rees_table(ideals: &str, nvars: Option<usize>, degree: u32, lo: i64) -> Result<CheckReport> {
    let fam = MonomialIdealFamily::parse(ideals, nvars)?;
    let table = fam.hilbert_table(lo, degree as i64, degree)?;
    let mut r = CheckReport::new(
        "rees table",
        inputs(&[("ideals", fam.render()), ("nvars", fam.nvars().to_string()), ("degree", degree.to_string()), ("lo", lo.to_string())]),
    );
    let labeling = if fam.len() >= 2 {
        let l = labeling_independence_check(&fam, degree)?;
        r.require(l.invariant, || format!("relabeling {:?} changes the entry at {:?}", l.counterexample.as_ref().map(|c| &c.0), l.counterexample.as_ref().map(|c| &c.1)));
        Some(l)
    } else {
        None
    };
    r.table = hilbert_rows(&table);
    r.data = json!({ "table": table, "labeling": labeling });
    Ok(r)
}

/// Distinct coordinate ideals `(x_{v_1}), …, (x_{v_l})` for every injective choice of variables.
fn coordinate_families(max_vars: usize) -> Result<Vec<MonomialIdealFamily>> {
    use itertools::Itertools;
    let mut out = Vec::new();
    for n in 1..=max_vars {
        for l in 1..=n {
            for vars in (0..n).permutations(l) {
                let ideals = vars
                    .iter()
                    .map(|&v| {
                        let mut e = vec![0; n];
                        e[v] = 1;
                        crate::rees::MonomialIdeal::new(n, vec![e])
                    })
                    .collect::<Result<Vec<_>>>()?;
                out.push(MonomialIdealFamily::new(n, ideals)?);
            }
        }
    }
    Ok(out)
}

fn rees_compare(ideals: Option<&str>, nvars: Option<usize>, all: bool, max_vars: usize, degree: u32, window: u32) -> Result<CheckReport> {
    let fams = match (ideals, all) {
        (Some(s), false) => vec![MonomialIdealFamily::parse(s, nvars)?],
        (None, true) => coordinate_families(max_vars)?,
        _ => return Err(Error::InvalidInput("give --ideals or --all-coordinate".into())),
    };
    let mut pairs = vec![("degree", degree.to_string()), ("window", window.to_string())];
    match ideals {
        Some(s) => pairs.push(("ideals", s.to_string())),
        None => pairs.push(("families", format!("all coordinate families, n <= {max_vars}"))),
    }
    let mut r = CheckReport::new("rees compare", inputs(&pairs));
    let reports = fams.par_iter().map(|f| compare_fiber_to_cone(f, degree, window)).collect::<Result<Vec<_>>>()?;
    let mut t = Table::new(&["family", "nvars", "k", "fiber_sum", "cone"]);
    for c in &reports {
        if let Some(m) = c.first_mismatch() {
            r.fail(format!("{} in {} variables, k={}: fiber sum {} != cone {}", c.family, c.nvars, m.k, m.fiber_sum, m.cone));
        }
        for row in &c.rows {
            t.push(vec![c.family.clone(), c.nvars.to_string(), row.k.to_string(), row.fiber_sum.to_string(), row.cone.to_string()]);
        }
    }
    r.table = t;
    r.data = if all { json!({ "families": reports.len(), "reports": reports }) } else { json!(reports[0]) };
    Ok(r)
}

fn rees_equivariance(max_l: usize, max_abs: i64) -> Result<CheckReport> {
    let sweep = equivariance_sweep(max_l, max_abs)?;
    let mut r = CheckReport::new("rees equivariance", inputs(&[("max_l", max_l.to_string()), ("max_abs", max_abs.to_string())]));
    r.require(sweep.all_equal, || format!("characters with exponents {:?}", sweep.counterexample));
    let mut t = Table::new(&["rank", "action_on_generic", "matches"]);
    let mut actions = Vec::new();
    for rank in 1..=max_l {
        let a = a_action_check(rank)?;
        r.require(a.matches, || format!("torus action formula fails in rank {rank}"));
        t.push(vec![rank.to_string(), a.action_on_generic.join(", "), a.matches.to_string()]);
        actions.push(a);
    }
    r.table = t;
    r.data = json!({ "sweep": sweep, "a_action": actions });
    Ok(r)
}

fn jacquet_table(j: &crate::jacquet::JacquetResult) -> Table {
    let mut t = Table::new(&["weight", "restriction", "dim", "k_star", "k_cone"]);
    for w in &j.weights {
        t.push(vec![weight_str(&w.weight), weight_str(&w.restriction), w.dim.to_string(), w.k_star.to_string(), w.k_cone.to_string()]);
    }
    t
}

fn jacquet_compute(m: &ModuleArgs, config: Option<&Path>, theta1: &str, theta2: &str, k_max: Option<usize>) -> Result<CheckReport> {
    let v = load_module(m, config)?;
    let rank = v.rank();
    let (t1, t2) = (Theta::parse(theta1, rank)?, Theta::parse(theta2, rank)?);
    let mut pairs = module_inputs(m, &v);
    pairs.push(("theta1", t1.label(rank)));
    pairs.push(("theta2", t2.label(rank)));
    if let Some(k) = k_max {
        pairs.push(("k_max", k.to_string()));
    }
    let mut r = CheckReport::new("jacquet compute", inputs(&pairs));
    let generated = u_nbar_generation_check(&v)?;
    r.require(generated, || format!("{} is not generated by its top over U(nbar)", v.name));
    let j = jacquet(&v, &t1, &t2, &JacquetOptions { k_max, height: m.window })?;
    r.table = jacquet_table(&j);
    r.data = json!({ "generated_over_u_nbar": generated, "result": j });
    Ok(r)
}

fn jacquet_independence(
    m: &ModuleArgs,
    config: Option<&Path>,
    theta2: Option<&str>,
    theta1: Option<&str>,
    theta1_alt: &str,
) -> Result<CheckReport> {
    let v = load_module(m, config)?;
    let rank = v.rank();
    let t2 = match theta2 {
        Some(s) => Theta::parse(s, rank)?,
        None => v.theta.clone(),
    };
    let t1 = match theta1 {
        Some(s) => Theta::parse(s, rank)?,
        None => t2.clone(),
    };
    let alt = Theta::parse(theta1_alt, rank)?;
    let mut pairs = module_inputs(m, &v);
    pairs.extend([("theta2", t2.label(rank)), ("theta1", t1.label(rank)), ("theta1_alt", alt.label(rank))]);
    let mut r = CheckReport::new("jacquet independence", inputs(&pairs));
    let rep = independence_check(&v, &t1, &alt, &t2, &JacquetOptions { k_max: None, height: m.window })?;
    if let Some(first) = rep.mismatches.first() {
        r.fail(format!("theta1 {} vs {}: {first}", t1.label(rank), alt.label(rank)));
    }
    // J_{Θ,Θ1}(V) ≅ V when V lies in the category attached to Θ
    let identity = (t2 == v.theta && v.is_graded()).then(|| {
        let own = module_dims(&v);
        let got = rep.first.dims();
        let bad = own.iter().find(|(w, d)| got.get(*w) != Some(d)).map(|(w, d)| (w.clone(), *d, got.get(w).copied()));
        if let Some((w, d, g)) = &bad {
            r.fail(format!("weight {}: dim V = {d}, dim J = {g:?}", weight_str(w)));
        }
        bad.is_none()
    });
    let mut t = Table::new(&["weight", "dim_v", "theta1", "theta1_alt"]);
    let own = module_dims(&v);
    let second = rep.second.dims();
    for w in rep.first.weights.iter() {
        t.push(vec![
            weight_str(&w.weight),
            own.get(&w.weight).map_or("-".into(), |d| d.to_string()),
            w.dim.to_string(),
            second.get(&w.weight).map_or("-".into(), |d| d.to_string()),
        ]);
    }
    r.table = t;
    r.data = json!({ "identity": identity, "independence": rep });
    Ok(r)
}

fn jacquet_chain(m: &ModuleArgs, config: Option<&Path>, theta1: &str, theta2: &str, theta3: &str) -> Result<CheckReport> {
    let v = load_module(m, config)?;
    let rank = v.rank();
    let (t1, t2, t3) = (Theta::parse(theta1, rank)?, Theta::parse(theta2, rank)?, Theta::parse(theta3, rank)?);
    let mut pairs = module_inputs(m, &v);
    pairs.extend([("theta1", t1.label(rank)), ("theta2", t2.label(rank)), ("theta3", t3.label(rank))]);
    let mut r = CheckReport::new("jacquet chain", inputs(&pairs));
    let rep = chain_check(&v, &t3, &t2, &t1)?;
    let mut t = Table::new(&["weight", "direct", "composite", "mixed"]);
    for row in &rep.rows {
        if row.direct != row.composite || row.direct != row.mixed {
            r.fail(format!("weight {}: direct {}, composite {}, mixed {}", weight_str(&row.weight), row.direct, row.composite, row.mixed));
        }
        t.push(vec![weight_str(&row.weight), row.direct.to_string(), row.composite.to_string(), row.mixed.to_string()]);
    }
    r.require(rep.equal, || "chain report is not equal".into());
    r.table = t;
    Ok(r.with_data(&rep))
}

fn jacquet_exact(type_name: &str, sequence: &str, theta1: &str, theta2: &str, window: usize) -> Result<CheckReport> {
    let g = sl_of_type(type_name)?;
    let rank = g.rank();
    let seq = parse_sequence(sequence, &g, window)?;
    let (t1, t2) = (Theta::parse(theta1, rank)?, Theta::parse(theta2, rank)?);
    let mut r = CheckReport::new(
        "jacquet exact",
        inputs(&[
            ("type", type_name.to_string()),
            ("sequence", seq.name.clone()),
            ("theta1", t1.label(rank)),
            ("theta2", t2.label(rank)),
            ("window", window.to_string()),
        ]),
    );
    let rep = exactness_check(&seq, &t1, &t2, &JacquetOptions { k_max: None, height: window })?;
    let mut t = Table::new(&["weight", "a", "b", "c"]);
    for row in &rep.rows {
        if row.b != row.a + row.c {
            r.fail(format!("weight {}: {} != {} + {}", weight_str(&row.weight), row.b, row.a, row.c));
        }
        t.push(vec![weight_str(&row.weight), row.a.to_string(), row.b.to_string(), row.c.to_string()]);
    }
    r.require(!rep.rows.is_empty(), || "no weight is determined by the window".into());
    r.table = t;
    Ok(r.with_data(&rep))
}

fn filtration_cmd(m: &ModuleArgs, config: Option<&Path>, exponents: &str) -> Result<CheckReport> {
    let v = load_module(m, config)?;
    let exps = parse_exponents(exponents, v.rank())?;
    let mut pairs = module_inputs(m, &v);
    pairs.push(("exponents", exponents.to_string()));
    let mut r = CheckReport::new("filtration graded", inputs(&pairs));
    let rep = filtration_graded(&v, &exps, m.window)?;
    let mut t = Table::new(&["e", "dim_F", "graded", "jacquet"]);
    for row in &rep.rows {
        if row.graded != row.jacquet {
            r.fail(format!("e = {}: dim F_e/F_(e-1) = {} but the Jacquet sum is {}", row.e, row.graded, row.jacquet));
        }
        t.push(vec![row.e.to_string(), row.dim_f.to_string(), row.graded.to_string(), row.jacquet.to_string()]);
    }
    r.require(rep.monotone, || "F is not increasing".into());
    r.require(rep.exhaustive, || "F does not exhaust the window".into());
    r.table = t;
    Ok(r.with_data(&rep))
}

fn vfilt_cmd(m: &ModuleArgs, config: Option<&Path>, exponents: &str, k_max: i64, l_max: i64) -> Result<CheckReport> {
    let v = load_module(m, config)?;
    let exps = parse_exponents(exponents, v.rank())?;
    let mut pairs = module_inputs(m, &v);
    pairs.extend([("exponents", exponents.to_string()), ("k_max", k_max.to_string()), ("l_max", l_max.to_string())]);
    let mut r = CheckReport::new("vfilt pieces", inputs(&pairs));
    let rep = v_filtration_pieces(&v, &exps, k_max, l_max)?;
    r.require(rep.stable, || format!("some F_(-a+k) is not the whole window at k = {k_max}"));
    if rep.generation_from.is_none() {
        let bad = rep.generation.iter().rev().find(|g| !g.equal);
        r.fail(bad.map_or("generation fails".into(), |g| format!("generation fails at a = {}, k = {}, l = {}", g.a, g.k, g.l)));
    }
    let mut t = Table::new(&["a", "k", "dim"]);
    for row in &rep.rows {
        t.push(vec![row.a.to_string(), row.k.to_string(), row.dim.to_string()]);
    }
    r.table = t;
    Ok(r.with_data(&rep))
}

// ---------------------------------------------------------------------------
// Entry point

pub enum Output {
    Check(CheckReport),
    Suite(SuiteReport),
}

impl Output {
    pub fn exit_code(&self) -> i32 {
        match self {
            Output::Check(r) => r.verdict.exit_code(),
            Output::Suite(s) => s.exit_code(),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match (self, format) {
            (Output::Check(r), Format::Json) => r.to_json(),
            (Output::Check(r), Format::Text) => r.to_text(),
            (Output::Check(r), Format::Csv) => r.table.to_csv(),
            (Output::Suite(s), Format::Json) => {
                let mut out = serde_json::to_string_pretty(s).expect("suite serializes");
                out.push('\n');
                out
            }
            (Output::Suite(s), f) => {
                let mut t = Table::new(&["name", "command", "exit", "detail"]);
                for i in &s.items {
                    let command = i.report.as_ref().map_or("-".to_string(), |r| r.command.clone());
                    let detail = i
                        .error
                        .clone()
                        .or_else(|| i.report.as_ref().and_then(|r| r.counterexample.clone()))
                        .or_else(|| i.golden_diff.first().cloned())
                        .unwrap_or_default();
                    t.push(vec![i.name.clone(), command, i.exit_code.to_string(), detail]);
                }
                if f == Format::Csv {
                    t.to_csv()
                } else {
                    let v = serde_json::to_value(s.verdict).expect("verdict serializes");
                    format!("{}\nverdict: {}\n", t.to_text(), v.as_str().unwrap_or_default())
                }
            }
        }
    }
}

pub fn threads_from(cli: &Cli) -> Result<Option<usize>> {
    if let Some(n) = cli.threads {
        return Ok(Some(n));
    }
    match std::env::var("JACQUET_THREADS") {
        Ok(s) if !s.trim().is_empty() => {
            s.trim().parse().map(Some).map_err(|_| Error::InvalidInput(format!("JACQUET_THREADS={s:?} is not a number")))
        }
        _ => Ok(None),
    }
}

/// Runs the parsed command inside a thread pool of the requested size.
pub fn execute(cli: &Cli) -> Result<Output> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads_from(cli)? {
        if n == 0 {
            return Err(Error::InvalidInput("--threads must be positive".into()));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
    pool.install(|| match &cli.command {
        Command::Suite(args) => run_suite(args).map(Output::Suite),
        c => run_command(c, cli.config.as_deref()).map(Output::Check),
    })
}

fn write_out_dir(cli: &Cli, out: &Output) -> std::io::Result<()> {
    let Some(dir) = std::env::var_os("JACQUET_OUT_DIR") else { return Ok(()) };
    let dir = PathBuf::from(dir);
    std::fs::create_dir_all(&dir)?;
    match out {
        Output::Check(r) => std::fs::write(dir.join(format!("{}.json", r.command.replace(' ', "-"))), r.to_json()),
        Output::Suite(s) => {
            for item in &s.items {
                let text = serde_json::to_string_pretty(&item.report).expect("report serializes") + "\n";
                std::fs::write(dir.join(format!("{}.json", item.name)), text)?;
            }
            std::fs::write(dir.join("suite.json"), out.render(cli.format))
        }
    }
}

/// Parses `args`, runs, prints, and returns the process exit code.
pub fn main_entry(args: impl IntoIterator<Item = OsString>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let start = Instant::now();
    match execute(&cli) {
        Ok(out) => {
            print!("{}", out.render(cli.format));
            if let Err(e) = write_out_dir(&cli, &out) {
                eprintln!("error: JACQUET_OUT_DIR: {e}");
                return 2;
            }
            eprintln!("elapsed: {} ms", start.elapsed().as_millis());
            out.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    fn run(args: &[&str]) -> (i32, Option<CheckReport>) {
        let mut full = vec!["jacquet"];
        full.extend_from_slice(args);
        let cli = Cli::try_parse_from(&full).unwrap();
        match execute(&cli) {
            Ok(Output::Check(r)) => (r.verdict.exit_code(), Some(r)),
            Ok(Output::Suite(s)) => (s.exit_code(), None),
            Err(e) => (e.exit_code(), None),
        }
    }

    #[test]
    fn manifest_is_consistent() {
        let mut seen = std::collections::BTreeSet::new();
        for (label, cmd) in MANIFEST {
            assert!(seen.insert(*label), "{label} listed twice");
            assert!(SUBCOMMANDS.contains(cmd), "{cmd} is not a subcommand");
        }
        for (name, argv) in SUITE {
            let mut full = vec!["jacquet"];
            full.extend_from_slice(argv);
            assert!(Cli::try_parse_from(&full).is_ok(), "{name} does not parse");
        }
    }

    #[test]
    fn clap_tree_matches_subcommand_list() {
        let cmd = Cli::command();
        let mut names = Vec::new();
        for sub in cmd.get_subcommands() {
            let kids: Vec<_> = sub.get_subcommands().filter(|s| s.get_name() != "help").collect();
            if kids.is_empty() {
                names.push(sub.get_name().to_string());
            }
            for k in kids {
                names.push(format!("{} {}", sub.get_name(), k.get_name()));
            }
        }
        names.retain(|n| n != "help");
        let mut want: Vec<String> = SUBCOMMANDS.iter().map(|s| s.to_string()).collect();
        names.sort();
        want.sort();
        assert_eq!(names, want);
    }

    #[test]
    fn stab_a2() {
        let (code, r) = run(&["lie", "stab", "--type", "A2", "--theta", "a"]);
        assert_eq!(code, 0);
        assert_eq!(r.unwrap().data[0]["equal"], json!(true));
    }

    #[test]
    fn rees_compare_xy() {
        assert_eq!(run(&["rees", "compare", "--ideals", "x;y", "--degree", "5"]).0, 0);
    }

    #[test]
    fn verma_dims_are_one() {
        let (code, r) = run(&["jacquet", "compute", "--type", "A1", "--module", "verma:3", "--theta1", "all", "--theta2", "none", "--window", "12"]);
        assert_eq!(code, 0);
        let r = r.unwrap();
        let weights = r.data["result"]["weights"].as_array().unwrap();
        assert_eq!(weights.len(), 13);
        assert!(weights.iter().all(|w| w["dim"] == json!(1)));
    }

    #[test]
    fn bad_input_exits_2() {
        assert_eq!(run(&["jacquet", "compute", "--type", "A2", "--module", "verma:3"]).0, 2);
        assert_eq!(run(&["roots", "info", "--type", "Q7"]).0, 2);
        assert!(Cli::try_parse_from(["jacquet", "roots", "info", "--bogus"]).is_err());
    }

    #[test]
    fn uncertified_tower_is_inconclusive() {
        let (code, r) = run(&["jacquet", "compute", "--module", "verma:3", "--window", "6", "--k-max", "1"]);
        assert_eq!(code, 3);
        assert_eq!(r.unwrap().verdict, Verdict::Inconclusive);
    }
}
