//! Command-line front end: code runs, verification suites and fermion sweeps.
//!
//! Exit codes: 0 success, 1 verification failure (reported on stderr as
//! `VERIFICATION_FAILURE`), 2 usage error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::code::{EmCode, HoneycombCode, LoopKind};
use crate::error::{Error, Result};
use crate::fermion;
use crate::kw::{check_sign_laws, KWRecord, Realization};
use crate::lattice::Cycle;
use crate::oracle::{compare_matrices, dense_kw_channel, formula_matrix, verify_dj_algebra, verify_family};
use crate::tableau::Policy;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const SEED_ENV: &str = "AUTOLAB_SEED";

#[derive(Parser, Debug)]
#[command(name = "emcode", version, about = "e<->m Floquet code, honeycomb code and Kekule-Kitaev workbench")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Simulate the e<->m automorphism code.
    Code {
        #[command(subcommand)]
        cmd: CodeCmd,
    },
    /// Run the oracle suites.
    Verify(VerifyArgs),
    /// Free-fermion sweeps.
    Fermion {
        #[command(subcommand)]
        cmd: FermionCmd,
    },
}

#[derive(Subcommand, Debug)]
pub enum CodeCmd {
    Run(RunArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    ForcePlus,
    Random,
}

impl From<PolicyArg> for Policy {
    fn from(p: PolicyArg) -> Policy {
        match p {
            PolicyArg::ForcePlus => Policy::ForcePlus,
            PolicyArg::Random => Policy::Random,
        }
    }
}

#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// Master seed (falls back to $AUTOLAB_SEED, then 0).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads for sweeps.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Output file (stdout if absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Args, Debug)]
pub struct RunArgs {
    #[arg(long)]
    pub l1: Option<usize>,
    #[arg(long)]
    pub l2: Option<usize>,
    #[arg(long)]
    pub rounds: Option<usize>,
    #[arg(long, value_enum)]
    pub policy: Option<PolicyArg>,
    /// Independent runs, seeded by splitting the master seed.
    #[arg(long)]
    pub runs: Option<usize>,
    /// After the rounds, run the two-period logical interchange protocol.
    #[arg(long)]
    pub logical: bool,
    /// JSON config file; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

/// Fully resolved `code run` configuration.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub l1: Option<usize>,
    pub l2: Option<usize>,
    pub rounds: Option<usize>,
    pub seed: Option<u64>,
    pub policy: Option<Policy>,
    pub runs: Option<usize>,
    pub jobs: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub logical: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    DjAlgebra,
    Family,
    KwMatrix,
    KwSigns,
    Honeycomb,
    Code,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::DjAlgebra => "dj-algebra",
            Suite::Family => "family",
            Suite::KwMatrix => "kw-matrix",
            Suite::KwSigns => "kw-signs",
            Suite::Honeycomb => "honeycomb",
            Suite::Code => "code",
        }
    }
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Run only these suites (comma separated).
    #[arg(long, value_enum, value_delimiter = ',')]
    pub only: Vec<Suite>,
    /// Mutation hook: corrupt one sign of the matrix-element formula.
    #[arg(long, hide = true)]
    pub inject_kw_sign_error: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Subcommand, Debug)]
pub enum FermionCmd {
    /// Kekule-Kitaev Bloch gap against the closed form.
    Gap {
        #[arg(long, default_value_t = 96)]
        grid: usize,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Ring gap along the period-3 path, with and without a vortex.
    Ring {
        #[arg(long, value_delimiter = ',', default_value = "6")]
        sites: Vec<usize>,
        /// Intervals on t in [0, 3].
        #[arg(long, default_value_t = 360)]
        steps: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Dimer-crossing parity of the unrolled path on a cylinder.
    Parity {
        #[arg(long, default_value_t = 9)]
        width: i64,
        #[arg(long, default_value_t = 30)]
        height: i64,
        #[command(flatten)]
        common: Common,
    },
    /// Spectrum of the Kekule vortex disc.
    Defect {
        #[arg(long, value_delimiter = ',', default_value = "6,8,10,12")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0.2)]
        lambda: f64,
        #[command(flatten)]
        common: Common,
    },
}

/// Result of a subcommand: `Ok(true)` if everything verified.
type Outcome = Result<bool>;

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn resolve_seed(flag: Option<u64>, config: Option<u64>) -> Result<u64> {
    if let Some(s) = flag.or(config) {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| usage(format!("{SEED_ENV}={v:?} is not an unsigned integer"))),
        Err(_) => Ok(0),
    }
}

fn split_seeds(master: u64, count: usize) -> Vec<u64> {
    if count == 1 {
        return vec![master];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    (0..count).map(|_| rng.gen()).collect()
}

fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            return Err(usage("--jobs must be at least 1"));
        }
        b = b.num_threads(j);
    }
    b.build().map_err(|e| Error::InvalidArgument(e.to_string()))
}

fn open_out(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Newline-delimited JSON or CSV with a header from the row's fields.
pub fn emit<T: Serialize>(rows: &[T], format: Format, w: &mut dyn Write) -> Result<()> {
    match format {
        Format::Json => {
            for r in rows {
                let line = serde_json::to_string(r).map_err(|e| Error::Parse(e.to_string()))?;
                writeln!(w, "{line}")?;
            }
        }
        Format::Csv => {
            let mut cw = csv::Writer::from_writer(w);
            for r in rows {
                cw.serialize(r).map_err(|e| Error::Parse(e.to_string()))?;
            }
            cw.flush()?;
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundRow {
    pub run: usize,
    pub seed: u64,
    pub round: usize,
    pub color: usize,
    pub rank: usize,
    pub encoded: usize,
    pub isg_match: bool,
    pub vertex_product: Option<i8>,
    pub plaquette_product: Option<i8>,
    pub measured_product: i8,
    pub prepared_product: i8,
    pub violations: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct LogicalRow {
    pub run: usize,
    pub seed: u64,
    pub kind: LoopKind,
    pub cycle: String,
    pub outcome: i8,
    pub dual_after_one_period: Option<i8>,
    pub original_after_two_periods: Option<i8>,
}

impl RunConfig {
    fn from_args(a: &RunArgs) -> Result<Self> {
        let file: RunConfig = match &a.config {
            Some(p) => {
                let text = std::fs::read_to_string(p)?;
                serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?
            }
            None => RunConfig::default(),
        };
        let cfg = RunConfig {
            l1: a.l1.or(file.l1).or(Some(3)),
            l2: a.l2.or(file.l2).or(Some(3)),
            rounds: a.rounds.or(file.rounds).or(Some(9)),
            seed: Some(resolve_seed(a.common.seed, file.seed)?),
            policy: a.policy.map(Policy::from).or(file.policy).or(Some(Policy::Random)),
            runs: a.runs.or(file.runs).or(Some(1)),
            jobs: a.common.jobs.or(file.jobs),
            out: a.common.out.clone().or(file.out),
            format: a.common.format.or(file.format).or(Some(Format::Json)),
            logical: Some(a.logical || file.logical.unwrap_or(false)),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        for (name, v) in [("l1", self.l1), ("l2", self.l2)] {
            if v.unwrap_or(0) < 2 {
                return Err(usage(format!("--{name} must be at least 2")));
            }
        }
        if self.runs.unwrap_or(0) == 0 {
            return Err(usage("--runs must be at least 1"));
        }
        Ok(())
    }
}

fn one_run(cfg: &RunConfig, run: usize, seed: u64) -> Result<(Vec<RoundRow>, Vec<LogicalRow>)> {
    let (l1, l2) = (cfg.l1.unwrap_or(3), cfg.l2.unwrap_or(3));
    let policy = cfg.policy.unwrap_or(Policy::Random);
    let mut code = EmCode::new(l1, l2, policy, seed)?;
    let n = code.num_qubits();
    let mut rows = Vec::new();
    for _ in 0..cfg.rounds.unwrap_or(0) {
        let round = code.round_index;
        let before = code.live_violations().len();
        code.run_round()?;
        let rank = code.isg_rank();
        let report = code.verify_product_constraints();
        let prods = report.rounds.last().cloned().unwrap_or_default();
        rows.push(RoundRow {
            run,
            seed,
            round,
            color: round % 3,
            rank,
            encoded: n - rank,
            isg_match: code.isg_matches(),
            vertex_product: prods.vertex_product,
            plaquette_product: prods.plaquette_product,
            measured_product: prods.measured_product,
            prepared_product: prods.prepared_product,
            violations: code.live_violations().len() - before,
        });
    }
    let mut logical = Vec::new();
    if cfg.logical.unwrap_or(false) {
        // Start from an established code state so the loops are logical.
        if code.round_index < 3 {
            code.run_rounds(3 - code.round_index)?;
        }
        // Each protocol starts from the same post-run state: measuring one
        // loop fixes its partner's anticommuting conjugate.
        for kind in [LoopKind::Electric, LoopKind::Magnetic] {
            for cycle in [Cycle::B1, Cycle::B2] {
                let mut c = code.clone();
                let lp = c.logical(kind, cycle);
                let tr = c.track_logical(&lp)?;
                logical.push(LogicalRow {
                    run,
                    seed,
                    kind,
                    cycle: format!("{cycle:?}").to_lowercase(),
                    outcome: tr.outcome,
                    dual_after_one_period: tr.dual_value,
                    original_after_two_periods: tr.restored_value,
                });
            }
        }
    }
    Ok((rows, logical))
}

fn cmd_code_run(a: &RunArgs) -> Outcome {
    let cfg = RunConfig::from_args(a)?;
    let seeds = split_seeds(cfg.seed.unwrap_or(0), cfg.runs.unwrap_or(1));
    let results = pool(cfg.jobs)?.install(|| {
        seeds.par_iter().enumerate().map(|(i, &s)| one_run(&cfg, i, s)).collect::<Result<Vec<_>>>()
    })?;
    let rows: Vec<RoundRow> = results.iter().flat_map(|(r, _)| r.iter().cloned()).collect();
    let logical: Vec<LogicalRow> = results.iter().flat_map(|(_, l)| l.iter().cloned()).collect();
    let format = cfg.format.unwrap_or(Format::Json);
    let mut w = open_out(cfg.out.as_deref())?;
    emit(&rows, format, &mut *w)?;
    if !logical.is_empty() {
        if format == Format::Csv {
            eprintln!("note: logical protocol results are only written in json format");
        } else {
            emit(&logical, format, &mut *w)?;
        }
    }
    w.flush()?;
    let n = rows.first().map(|r| r.rank + r.encoded).unwrap_or(0);
    let ok = rows.iter().all(|r| r.isg_match && r.violations == 0 && (r.round < 2 || r.rank + 2 == n))
        && logical.iter().all(|l| l.dual_after_one_period.is_some() && l.original_after_two_periods.is_some());
    Ok(ok)
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRow {
    pub suite: &'static str,
    pub check: String,
    pub passed: bool,
    pub detail: serde_json::Value,
}

fn check(suite: Suite, name: impl Into<String>, passed: bool, detail: serde_json::Value) -> CheckRow {
    CheckRow { suite: suite.name(), check: name.into(), passed, detail }
}

fn suite_dj_algebra() -> Result<Vec<CheckRow>> {
    let rep = verify_dj_algebra(5)?;
    Ok(rep
        .identities
        .iter()
        .map(|i| check(Suite::DjAlgebra, i.name.clone(), i.error <= rep.tolerance, json!({ "error": i.error })))
        .collect())
}

fn suite_family() -> Result<Vec<CheckRow>> {
    let rep = verify_family(3)?;
    let detail = serde_json::to_value(&rep).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(vec![check(Suite::Family, "toric-code family on the L=3 triangular torus", rep.ok(), detail)])
}

/// Every outcome pattern at N = 3, dense reference channel vs the formula.
pub fn suite_kw_matrix(inject_sign_error: bool) -> Result<Vec<CheckRow>> {
    let per_pattern = (0..1usize << 12)
        .into_par_iter()
        .map(|pattern| {
            let rec = KWRecord::from_pattern(0, 3, pattern);
            let k = dense_kw_channel(3, &rec)?;
            let mut f = formula_matrix(&rec);
            if inject_sign_error {
                // a_out[0] = a_in[0] = 1 entries pick up a spurious sign
                for o in 0..f.nrows() {
                    for i in 0..f.ncols() {
                        if o & 1 == 1 && i & 1 == 1 {
                            f[(o, i)] = -f[(o, i)];
                        }
                    }
                }
            }
            Ok(compare_matrices(&k, &f))
        })
        .collect::<Result<Vec<_>>>()?;
    let worst = per_pattern.iter().map(|(_, d)| *d).fold(0.0, f64::max);
    let s0 = per_pattern[0].0;
    let uniform = per_pattern.iter().all(|(s, _)| s.im.abs() < 1e-12 && s.re > 0.0 && (s.re - s0.re).abs() < 1e-12);
    Ok(vec![
        check(Suite::KwMatrix, "matrix elements match formula (4096 patterns)", worst <= 1e-10, json!({ "max_deviation": worst })),
        check(Suite::KwMatrix, "one positive normalisation for all patterns", uniform, json!({ "scale": s0.re })),
    ])
}

fn suite_kw_signs() -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    for realization in [Realization::Reference, Realization::MeasurementOnly] {
        let mut failures = Vec::new();
        for seed in 0..200u64 {
            failures.extend(check_sign_laws(3, seed, seed % 2 == 0, realization)?);
        }
        rows.push(check(
            Suite::KwSigns,
            format!("commutation signs, {realization:?} realization, 200 runs"),
            failures.is_empty(),
            json!({ "failures": failures.len(), "first": failures.first() }),
        ));
    }
    Ok(rows)
}

fn policy_tag(p: Policy) -> &'static str {
    match p {
        Policy::ForcePlus => "force-plus",
        Policy::Random => "random",
    }
}

fn suite_honeycomb(seed: u64) -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    for policy in [Policy::ForcePlus, Policy::Random] {
        let mut h = HoneycombCode::new(3, 3, policy, seed, true)?;
        let n = h.num_qubits();
        let mut ranks = Vec::new();
        for _ in 0..9 {
            h.run_round()?;
            ranks.push(h.isg_rank());
        }
        let rep = h.verify_plaquettes(Some(1));
        let persist = (0..h.lattice.num_plaquettes()).all(|p| matches!(h.plaquette_value(p), Ok(Some(1))));
        let rank_ok = ranks.iter().skip(2).all(|&r| r + 2 == n);
        let tag = policy_tag(policy);
        rows.push(check(
            Suite::Honeycomb,
            format!("two-round plaquette products are +1 ({tag})"),
            rep.violations.is_empty() && rep.checked > 0,
            json!({ "checked": rep.checked, "violations": rep.violations.len() }),
        ));
        rows.push(check(Suite::Honeycomb, format!("plaquette stabilizers persist ({tag})"), persist, json!({})));
        rows.push(check(Suite::Honeycomb, format!("rank n-2 after round 2 ({tag})"), rank_ok, json!({ "n": n, "ranks": ranks })));
    }
    Ok(rows)
}

fn suite_code(seed: u64) -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    for policy in [Policy::ForcePlus, Policy::Random] {
        let (mut isg_ok, mut prod_ok, mut rank_ok) = (true, true, true);
        for s in split_seeds(seed, 5) {
            let mut code = EmCode::new(3, 3, policy, s)?;
            let n = code.num_qubits();
            for t in 0..10 {
                code.run_round()?;
                isg_ok &= code.isg_matches();
                if t >= 2 {
                    rank_ok &= code.isg_rank() + 2 == n;
                }
            }
            prod_ok &= code.verify_product_constraints().ok() && code.live_violations().is_empty();
        }
        let tag = policy_tag(policy);
        rows.push(check(Suite::Code, format!("ISG matches construction, rounds 0-9 ({tag})"), isg_ok, json!({})));
        rows.push(check(Suite::Code, format!("product-transfer identities ({tag})"), prod_ok, json!({})));
        rows.push(check(Suite::Code, format!("two encoded qubits from round 2 ({tag})"), rank_ok, json!({})));
    }
    Ok(rows)
}

pub fn run_suite(suite: Suite, seed: u64, inject_kw_sign_error: bool) -> Result<Vec<CheckRow>> {
    match suite {
        Suite::DjAlgebra => suite_dj_algebra(),
        Suite::Family => suite_family(),
        Suite::KwMatrix => suite_kw_matrix(inject_kw_sign_error),
        Suite::KwSigns => suite_kw_signs(),
        Suite::Honeycomb => suite_honeycomb(seed),
        Suite::Code => suite_code(seed),
    }
}

fn cmd_verify(a: &VerifyArgs) -> Outcome {
    let seed = resolve_seed(a.common.seed, None)?;
    let suites = if a.only.is_empty() {
        vec![Suite::DjAlgebra, Suite::Family, Suite::KwMatrix, Suite::KwSigns, Suite::Honeycomb, Suite::Code]
    } else {
        a.only.clone()
    };
    let mut w = open_out(a.common.out.as_deref())?;
    let mut ok = true;
    let p = pool(a.common.jobs)?;
    for s in suites {
        let rows = p.install(|| run_suite(s, seed, a.inject_kw_sign_error))?;
        ok &= rows.iter().all(|r| r.passed);
        emit(&rows, a.common.format.unwrap_or(Format::Json), &mut *w)?;
        w.flush()?;
    }
    Ok(ok)
}

#[derive(Clone, Debug, Serialize)]
pub struct DefectRow {
    pub l: usize,
    pub lambda: f64,
    pub num_modes: usize,
    pub smallest: f64,
    pub bulk_gap: f64,
    pub bound_energy: Option<f64>,
    pub central_weight: Option<f64>,
    pub participation_ratio: Option<f64>,
}

fn cmd_fermion(cmd: &FermionCmd) -> Outcome {
    let common = match cmd {
        FermionCmd::Gap { common, .. }
        | FermionCmd::Ring { common, .. }
        | FermionCmd::Parity { common, .. }
        | FermionCmd::Defect { common, .. } => common,
    };
    let format = common.format.unwrap_or(Format::Csv);
    let p = pool(common.jobs)?;
    let mut w = open_out(common.out.as_deref())?;
    let ok = match cmd {
        FermionCmd::Gap { grid, samples, .. } => {
            if *grid == 0 {
                return Err(usage("--grid must be positive"));
            }
            let seed = resolve_seed(common.seed, None)?;
            let rows = p.install(|| fermion::gap_sweep(*grid, *samples, seed))?;
            emit(&rows, format, &mut *w)?;
            rows.iter().all(|r| r.rel_err <= 1e-3)
        }
        FermionCmd::Ring { sites, steps, .. } => {
            let mut rows = Vec::new();
            let mut sorted = sites.clone();
            sorted.sort_unstable();
            for &m in &sorted {
                for vortex in [false, true] {
                    rows.extend(fermion::ring_scan(m, vortex, *steps)?);
                }
            }
            emit(&rows, format, &mut *w)?;
            for &m in &sorted {
                for vortex in [false, true] {
                    let min = rows.iter().filter(|r| r.m == m && r.vortex == vortex).map(|r| r.gap).fold(f64::INFINITY, f64::min);
                    eprintln!("m={m} vortex={vortex}: min gap over t = {min:.6}");
                }
            }
            true
        }
        FermionCmd::Parity { width, height, .. } => {
            let rows = fermion::parity_scan(*width, *height)?;
            emit(&rows, format, &mut *w)?;
            let odd = rows.iter().all(|r| r.parity_difference == 1);
            eprintln!("parity_difference={}", if odd { 1 } else { 0 });
            odd
        }
        FermionCmd::Defect { sizes, lambda, .. } => {
            let spectra =
                p.install(|| sizes.par_iter().map(|&l| fermion::defect_spectrum(l, *lambda)).collect::<Result<Vec<_>>>())?;
            let rows: Vec<DefectRow> = spectra
                .iter()
                .map(|d| DefectRow {
                    l: d.l,
                    lambda: d.lambda,
                    num_modes: d.num_modes,
                    smallest: d.smallest,
                    bulk_gap: d.bulk_gap,
                    bound_energy: d.bound_mode.as_ref().map(|b| b.energy),
                    central_weight: d.bound_mode.as_ref().map(|b| b.central_weight),
                    participation_ratio: d.bound_mode.as_ref().map(|b| b.participation_ratio),
                })
                .collect();
            emit(&rows, format, &mut *w)?;
            true
        }
    };
    w.flush()?;
    Ok(ok)
}

/// Parse arguments, run, and return the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match &cli.command {
        Command::Code { cmd: CodeCmd::Run(a) } => cmd_code_run(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Fermion { cmd } => cmd_fermion(cmd),
    };
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => {
            eprintln!("VERIFICATION_FAILURE");
            EXIT_VERIFICATION_FAILURE
        }
        Err(e @ (Error::InvalidArgument(_) | Error::InvalidSize(_) | Error::Parse(_))) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_VERIFICATION_FAILURE
        }
    }
}
