//! `qhopf`: list, verify and export idempotent states, corepresentations and dual
//! projections, and run the numeric representation oracle.
//!
//! Exit codes: 0 all checks passed, 1 a check failed, 2 usage error, 3 I/O error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qhopf::algebra::{monomials_up_to, NCPoly, Preset};
use qhopf::corep::{build_corep, Spin};
use qhopf::dual::{check_block_sizes, check_grouplike, compress_blocks, grouplike_projection};
use qhopf::qzero::{self, Bounds, Q0Id, Q0State, Q0StateJson};
use qhopf::repnum::{jackson_tail, numeric_haar, relation_residuals, spectrum_check, TruncatedRep, DEFAULT_THETA_GRID};
use qhopf::states::{self, haar_value, CatalogId, StateJson, StateTable};
use qhopf::{CheckReport, Error};

const RESIDUAL_TOL: f64 = 1e-10;
const HAAR_TOL: f64 = 1e-7;
const TAIL_WARN: f64 = 1e-9;

#[derive(Parser)]
#[command(name = "qhopf", version, about = "Idempotent states on SU_q(2), U_q(2), SO_q(3) and their q = 0 limits", allow_negative_numbers = true)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the catalog of idempotent states of a preset.
    List(Common),
    /// Verify catalog states or JSON state tables.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Comma-separated state ids or paths to JSON tables.
        #[arg(long, value_delimiter = ',')]
        state: Vec<String>,
        /// Verify every catalog state of the preset.
        #[arg(long)]
        all: bool,
    },
    /// Export an object as JSON.
    Export {
        #[command(flatten)]
        common: Common,
        kind: ExportKind,
        /// Spin for `corep`, state id otherwise.
        target: String,
    },
    /// Relation residuals, spectra and the numeric Haar cross-check.
    Numeric {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.5, -0.5, 0.9, -0.9])]
        q0: Vec<f64>,
        /// Truncation dimension for relation residuals and spectra.
        #[arg(long, default_value_t = 64)]
        dim: usize,
        /// Truncation dimension for the numeric Haar state.
        #[arg(long, default_value_t = 200)]
        haar_dim: usize,
        /// Number of monomials in the Haar cross-check.
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, default_value = "suq2")]
    preset: Preset,
    /// Maximal spin, e.g. `3` or `5/2`.
    #[arg(long, default_value = "3")]
    smax: Spin,
    /// Maximal |p| of the v-offset (U presets).
    #[arg(long, default_value_t = 3)]
    pmax: u32,
    /// Monomial box `R,K,S,L` for q = 0 checks.
    #[arg(long, default_value = "4,3,4,4")]
    bounds: Bounds,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportKind {
    Corep,
    State,
    Projection,
    Hypergroup,
    Measure,
}

struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure { code: 2, msg: msg.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Argument(_) | Error::Parse(_) | Error::Precondition(_) | Error::Unsupported(_) => 2,
            _ => 1,
        };
        Failure { code, msg: e.to_string() }
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::List(c) => list(&c),
        Cmd::Verify { common, state, all } => verify(&common, &state, all),
        Cmd::Export { common, kind, target } => export(&common, kind, &target),
        Cmd::Numeric { common, q0, dim, haar_dim, samples } => numeric(&common, &q0, dim, haar_dim, samples),
    };
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("qhopf: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, format!("{text}\n")).map_err(|e| Failure { code: 3, msg: format!("cannot write {}: {e}", p.display()) }),
        None => match writeln!(std::io::stdout(), "{text}") {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure { code: 3, msg: format!("cannot write to stdout: {e}") }),
            _ => Ok(()),
        },
    }
}

fn emit(c: &Common, text: String, value: &Value) -> Result<(), Failure> {
    let body = match c.format {
        Format::Text => text,
        Format::Json => serde_json::to_string_pretty(value).expect("serializable"),
    };
    write_out(c.out.as_deref(), &body)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn read_file(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure { code: 3, msg: format!("cannot read {path}: {e}") })
}

fn classification(p: Preset) -> &'static str {
    match p {
        Preset::U02 => "U_0(2) classification",
        Preset::SU02 => "SU_0(2) classification",
        _ => "SO_0(3) classification",
    }
}

fn list(c: &Common) -> Outcome {
    let p = c.preset;
    let rows: Vec<(String, String, String)> = if p.is_generic() {
        states::catalog(p).into_iter().map(|id| (id.to_string(), id.description(), id.theorem(p).to_string())).collect()
    } else {
        qzero::q0_catalog(p).into_iter().map(|id| (id.to_string(), id.description(), classification(p).to_string())).collect()
    };
    let families = match p {
        Preset::SUq2 => "zn:n (n >= 2)",
        Preset::SOq3 => "zn:n (n >= 2; zn:n and zn:2n agree for odd n)",
        Preset::Uq2 => "torus:<lattice> (full, point, or generators a,b;c,d), suq2-semidirect:n (n >= 1)",
        Preset::U02 => "torus:<lattice>, psi-tensor:n:m (n >= 0, m >= 1 or inf)",
        Preset::SU02 | Preset::SO03 => "phi:n (n >= 1 or inf), psi:n (n >= 0)",
    };
    let mut text = format!("{p}:\n");
    for (id, d, t) in &rows {
        text.push_str(&format!("  {id:<22} {d} [{t}]\n"));
    }
    text.push_str(&format!("families: {families}"));
    let states: Vec<Value> = rows.iter().map(|(id, d, t)| json!({"id": id, "description": d, "classification": t})).collect();
    emit(c, text, &json!({"preset": p.name(), "states": states, "families": families}))?;
    Ok(true)
}

struct StateResult {
    label: String,
    reports: Vec<CheckReport>,
}

fn verify(c: &Common, ids: &[String], all: bool) -> Outcome {
    let p = c.preset;
    let ids: Vec<String> = match (all, ids.is_empty()) {
        (true, true) if p.is_generic() => states::catalog(p).iter().map(ToString::to_string).collect(),
        (true, true) => qzero::q0_catalog(p).iter().map(ToString::to_string).collect(),
        (false, false) => ids.to_vec(),
        (true, false) => return Err(Failure::usage("use either --all or --state, not both")),
        (false, true) => return Err(Failure::usage("nothing to verify: pass --all or --state")),
    };
    let mut results = Vec::new();
    for id in &ids {
        results.push(if p.is_generic() { verify_generic(c, id)? } else { verify_q0(c, id)? });
    }
    let passed = results.iter().all(|r| r.reports.iter().all(|x| x.passed));
    let mut text = String::new();
    for r in &results {
        text.push_str(&format!("== {} ==\n", r.label));
        for rep in &r.reports {
            text.push_str(&format!("{rep}\n"));
        }
    }
    let failed: usize = results.iter().flat_map(|r| &r.reports).filter(|r| !r.passed).count();
    text.push_str(&if passed { "all checks passed".to_string() } else { format!("{failed} check(s) failed") });
    let states: Vec<Value> = results
        .iter()
        .map(|r| json!({"state": r.label, "passed": r.reports.iter().all(|x| x.passed), "checks": r.reports.iter().map(to_value).collect::<Vec<_>>()}))
        .collect();
    let mut value = json!({"preset": p.name(), "passed": passed, "states": states});
    if p.is_generic() {
        value["smax"] = json!(c.smax.to_string());
        value["pmax"] = json!(c.pmax);
    } else {
        value["bounds"] = json!(c.bounds.to_string());
    }
    emit(c, text, &value)?;
    Ok(passed)
}

fn load_generic(c: &Common, id: &str) -> Result<StateTable, Failure> {
    if id.ends_with(".json") {
        let j: StateJson = serde_json::from_str(&read_file(id)?).map_err(|e| Failure::usage(format!("{id}: {e}")))?;
        if j.preset != c.preset {
            return Err(Failure::usage(format!("{id} holds a {} table, expected {}", j.preset, c.preset)));
        }
        return Ok(StateTable::from_json(&j)?);
    }
    let cid: CatalogId = id.parse()?;
    Ok(states::state_from_catalog(cid, c.preset, c.smax, c.pmax)?)
}

fn verify_generic(c: &Common, id: &str) -> Result<StateResult, Failure> {
    let phi = load_generic(c, id)?;
    let idem = states::is_idempotent(&phi);
    let idem_ok = idem.passed;
    let mut reports = vec![idem, states::antipode_invariant(&phi), states::diagonal_predicate(&phi), states::check_hermitian(&phi)];
    if idem_ok {
        reports.push(states::lemma_predicates(&phi));
    } else {
        let mut skip = CheckReport::new("lemma predicates");
        skip.note("skipped: the table is not idempotent");
        reports.push(skip);
    }
    if c.preset == Preset::SUq2 && phi.catalog_id().is_some() {
        let p = grouplike_projection(&phi)?;
        reports.push(check_grouplike(&p, &phi)?);
        reports.push(check_block_sizes(&phi)?);
    }
    Ok(StateResult { label: id.to_string(), reports })
}

fn verify_q0(c: &Common, id: &str) -> Result<StateResult, Failure> {
    let phi = if id.ends_with(".json") {
        let j: Q0StateJson = serde_json::from_str(&read_file(id)?).map_err(|e| Failure::usage(format!("{id}: {e}")))?;
        Q0State::from_json(&j)?
    } else {
        qzero::q0_state_catalog(id.parse::<Q0Id>()?, c.preset)?
    };
    if phi.preset() != c.preset {
        return Err(Failure::usage(format!("{id} is a {} state, expected {}", phi.preset(), c.preset)));
    }
    let mut reports = vec![qzero::q0_is_idempotent(&phi, c.bounds), qzero::q0_check_hermitian(&phi, c.bounds)];
    if let Some(cid) = phi.catalog_id() {
        let mut rep = CheckReport::new("pullback to M");
        match qzero::pullback(&phi) {
            Ok(mu) => {
                let got = qzero::m_is_idempotent(&mu);
                let want = cid.expected_pullback();
                rep.check(got == Some(want), || format!("pullback {mu} is not ρ⊗δ_n with (ρ, n) = ({}, {})", want.0, want.1));
            }
            Err(e) => rep.fail(e.to_string()),
        }
        reports.push(rep);
    }
    Ok(StateResult { label: id.to_string(), reports })
}

fn export(c: &Common, kind: ExportKind, target: &str) -> Outcome {
    let p = c.preset;
    let value = match kind {
        ExportKind::Corep => {
            let spin: Spin = target.parse()?;
            to_value(&build_corep(spin, p)?.to_json())
        }
        ExportKind::State if p.is_generic() => to_value(&load_generic(c, target)?.to_json()),
        ExportKind::State => to_value(&qzero::q0_state_catalog(target.parse()?, p)?.to_json(c.bounds)),
        ExportKind::Projection => {
            let phi = states::state_from_catalog(target.parse()?, p, c.smax, 0)?;
            to_value(&grouplike_projection(&phi)?.to_json())
        }
        ExportKind::Hypergroup => {
            let phi = states::state_from_catalog(target.parse()?, p, c.smax, 0)?;
            let blocks = compress_blocks(&grouplike_projection(&phi)?)?;
            let rep = check_block_sizes(&phi)?;
            let mut v = to_value(&blocks);
            v["formula_check"] = to_value(&rep);
            v
        }
        ExportKind::Measure => {
            if p.is_generic() {
                return Err(Failure::usage("measures on M exist for the q = 0 presets only"));
            }
            to_value(&qzero::pullback(&qzero::q0_state_catalog(target.parse()?, p)?)?.to_json())
        }
    };
    write_out(c.out.as_deref(), &serde_json::to_string_pretty(&value).expect("serializable"))?;
    Ok(true)
}

fn numeric(c: &Common, q0s: &[f64], dim: usize, haar_dim: usize, samples: usize) -> Outcome {
    if q0s.is_empty() {
        return Err(Failure::usage("--q0 needs at least one value"));
    }
    let monos = monomials_up_to(Preset::SUq2, 4);
    let picks: Vec<_> = (0..samples.min(monos.len())).map(|i| monos[i * monos.len() / samples.max(1)]).collect();
    let mut results = Vec::new();
    let mut text = String::new();
    let mut all_ok = true;
    for &q0 in q0s {
        let mut residual: f64 = 0.0;
        let mut edge: f64 = 0.0;
        let mut spectrum_ok = true;
        for theta in [0.0, 1.0, 2.0] {
            let rep = TruncatedRep::new(q0, theta, dim)?;
            let r = relation_residuals(&rep);
            residual = residual.max(r.max_interior());
            edge = edge.max(r.max_full());
            spectrum_ok &= spectrum_check(&rep).passed;
        }
        let mut haar_diff: f64 = 0.0;
        for m in &picks {
            let x = NCPoly::monomial(Preset::SUq2, *m)?;
            let exact = haar_value(&x)?.eval_f64(q0)?;
            let num = numeric_haar(&x, q0, haar_dim, DEFAULT_THETA_GRID)?;
            haar_diff = haar_diff.max((num.re - exact).abs().max(num.im.abs()));
        }
        let mut warnings = Vec::new();
        let tail = jackson_tail(q0, haar_dim);
        if tail > TAIL_WARN {
            warnings.push(format!("slow Jackson tail: q0^(2N) = {tail:.3e} at N = {haar_dim}; a larger --haar-dim is suggested"));
        }
        let ok = residual <= RESIDUAL_TOL && spectrum_ok && haar_diff <= HAAR_TOL;
        all_ok &= ok;
        text.push_str(&format!(
            "[{}] q0 = {q0}: residual {residual:.2e} (edge {edge:.2e}), spectrum {}, haar max diff {haar_diff:.2e} over {} monomials\n",
            if ok { "PASS" } else { "FAIL" },
            if spectrum_ok { "ok" } else { "mismatch" },
            picks.len()
        ));
        for w in &warnings {
            eprintln!("warning: q0 = {q0}: {w}");
            text.push_str(&format!("  warning: {w}\n"));
        }
        results.push(json!({
            "q0": q0, "residual": residual, "edge_residual": edge, "spectrum": spectrum_ok,
            "haar_max_diff": haar_diff, "warnings": warnings, "passed": ok,
        }));
    }
    let value = json!({"dim": dim, "haar_dim": haar_dim, "samples": picks.len(), "results": results, "passed": all_ok});
    emit(c, text.trim_end().to_string(), &value)?;
    Ok(all_ok)
}
