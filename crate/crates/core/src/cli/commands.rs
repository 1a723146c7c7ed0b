use std::fmt::Write as _;

use serde::Serialize;

use crate::braid::BraidWord;
use crate::entropy::{asymptotic_ratio, entropy_report, reference_entropy, EntropyReport, RatioRow, ReferenceEntropy, TorusGrid};
use crate::error::Result;
use crate::expansion::macmahon::{admissible_samples, DEFAULT_TOLERANCE};
use crate::expansion::rational::DEFAULT_GUARD;
use crate::expansion::{
    alexander, loop_expansion, macmahon_check, mmr_check, reconstruct_rational, LoopOptions, MacMahonReport, TraceSupport,
    MmrReport,
};
use crate::lawrence::MatrixCache;
use crate::quantum::colored_jones;

use super::output::{emit, tail_terms, tail_text, Report};
use super::{CommandKind, RunConfig, EXIT_OK, EXIT_PARTIAL};

/// Sample points and cutoff used by `mmr` for the MacMahon identity.
const MACMAHON_SAMPLES: usize = 5;
const MACMAHON_CUTOFF: usize = 80;
const SAMPLE_SEED: u64 = 0x5eed;

pub fn execute(config: &RunConfig) -> Result<i32> {
    match config.command {
        CommandKind::Loop => cmd_loop(config),
        CommandKind::Jones => cmd_jones(config),
        CommandKind::Mmr => cmd_mmr(config),
        CommandKind::Entropy => cmd_entropy(config),
        CommandKind::Selftest => cmd_selftest(config),
    }
}

fn braid(config: &RunConfig) -> Result<BraidWord> {
    BraidWord::parse(&config.braid, config.strands)
}

fn exit_code(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_PARTIAL
    }
}

#[derive(Serialize)]
struct VEntry {
    i: usize,
    tail: Vec<(i32, String)>,
    exact_above: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    numerator: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    denominator: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    unverified: Option<String>,
}

#[derive(Serialize)]
struct LoopChecks {
    partial: bool,
    alexander: String,
    mmr: Option<MmrReport>,
    supports: Vec<TraceSupport>,
    diagnostics: Vec<String>,
}

#[derive(Serialize)]
struct LoopReport {
    knot: BraidWord,
    #[serde(rename = "L")]
    order: usize,
    #[serde(rename = "M")]
    cutoff: usize,
    floor: i32,
    #[serde(rename = "V")]
    v: Vec<VEntry>,
    checks: LoopChecks,
}

impl Report for LoopReport {
    fn text(&self) -> String {
        let mut out = format!("knot: {} ({} strands), M = {}\n", self.knot, self.knot.strands(), self.cutoff);
        for entry in &self.v {
            let _ = writeln!(out, "V^({}) = {}", entry.i, tail_text(&entry.tail, entry.exact_above));
            match (&entry.numerator, &entry.denominator, &entry.unverified) {
                (Some(n), Some(d), _) => {
                    let _ = writeln!(out, "      = ({n}) / {d}");
                }
                (_, _, Some(why)) => {
                    let _ = writeln!(out, "      not reconstructed: {why}");
                }
                _ => {}
            }
        }
        let _ = writeln!(out, "Delta = {}", self.checks.alexander);
        for d in &self.checks.diagnostics {
            let _ = writeln!(out, "note: {d}");
        }
        out
    }

    fn csv(&self) -> String {
        let mut out = String::from("i,degree,coefficient\n");
        for entry in &self.v {
            for (deg, c) in &entry.tail {
                let _ = writeln!(out, "{},{deg},{c}", entry.i);
            }
        }
        out
    }
}

fn cmd_loop(config: &RunConfig) -> Result<i32> {
    let beta = braid(config)?;
    beta.require_knot()?;
    let cache = config.cache_dir.as_ref().map(MatrixCache::new).transpose()?;
    let opts = LoopOptions {
        order: config.order,
        cutoff: config.cutoff,
        max_cutoff: config.max_cutoff,
        floor: config.floor,
        cache,
    };
    let exp = loop_expansion(&beta, &opts)?;
    let delta = alexander(&beta)?;
    let v = (0..=config.order)
        .map(|i| {
            let terms = tail_terms(exp.v(i));
            let (numerator, denominator, unverified) = match reconstruct_rational(&exp, i, &delta, DEFAULT_GUARD) {
                Ok(form) => (Some(form.numerator.to_string()), Some(form.denominator_label()), None),
                Err(e) => (None, None, Some(e.to_string())),
            };
            VEntry { i, tail: terms, exact_above: exp.v(i).stable_above(), numerator, denominator, unverified }
        })
        .collect();
    let report = LoopReport {
        knot: beta.clone(),
        order: config.order,
        cutoff: exp.cutoff,
        floor: exp.floor,
        v,
        checks: LoopChecks {
            partial: exp.partial,
            alexander: delta.to_string(),
            mmr: mmr_check(&exp, &delta).ok(),
            supports: exp.supports.clone(),
            diagnostics: exp.diagnostics.clone(),
        },
    };
    emit(config, &report)?;
    Ok(exit_code(!exp.partial))
}

#[derive(Serialize)]
struct JonesEntry {
    alpha: usize,
    polynomial: String,
    series: Vec<String>,
}

#[derive(Serialize)]
struct JonesReport {
    knot: BraidWord,
    #[serde(rename = "L")]
    order: usize,
    jones: Vec<JonesEntry>,
}

impl Report for JonesReport {
    fn text(&self) -> String {
        let mut out = format!("knot: {}\n", self.knot);
        for j in &self.jones {
            let _ = writeln!(out, "J_{}(q) = {}   (s = q^1/2)", j.alpha, j.polynomial);
            for (k, c) in j.series.iter().enumerate() {
                let _ = writeln!(out, "  hbar^{k}: {c}");
            }
        }
        out
    }

    fn csv(&self) -> String {
        let mut out = String::from("alpha,hbar_power,coefficient\n");
        for j in &self.jones {
            for (k, c) in j.series.iter().enumerate() {
                let _ = writeln!(out, "{},{k},{c}", j.alpha);
            }
        }
        out
    }
}

fn cmd_jones(config: &RunConfig) -> Result<i32> {
    let beta = braid(config)?;
    let jones = config
        .alphas
        .iter()
        .map(|&alpha| {
            let j = colored_jones(&beta, alpha, config.order)?;
            Ok(JonesEntry {
                alpha,
                polynomial: j.polynomial.to_string(),
                series: j.series.coeffs().iter().map(ToString::to_string).collect(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    emit(config, &JonesReport { knot: beta, order: config.order, jones })?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct MmrOutput {
    knot: BraidWord,
    alexander: String,
    mmr: MmrReport,
    macmahon: MacMahonReport,
    partial: bool,
}

impl Report for MmrOutput {
    fn text(&self) -> String {
        let mut out = format!("knot: {}\nDelta = {}\n", self.knot, self.alexander);
        let _ = writeln!(
            out,
            "V^(0) * Delta = 1: {} ({} certified degrees down to u^{})",
            verdict(self.mmr.holds),
            self.mmr.certified_degrees,
            self.mmr.lowest_certified
        );
        for s in &self.macmahon.samples {
            let _ = writeln!(
                out,
                "MacMahon at x = {:.6}{:+.6}i, t = {:.6}: {} (errors {:?})",
                s.point.x.0,
                s.point.x.1,
                s.point.t,
                verdict(s.passed),
                s.errors
            );
        }
        out
    }

    fn csv(&self) -> String {
        let mut out = String::from("x_re,x_im,t,cutoff,error\n");
        for s in &self.macmahon.samples {
            for (cutoff, err) in &s.errors {
                let _ = writeln!(out, "{},{},{},{cutoff},{err:e}", s.point.x.0, s.point.x.1, s.point.t);
            }
        }
        out
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn cmd_mmr(config: &RunConfig) -> Result<i32> {
    let beta = braid(config)?;
    let delta = alexander(&beta)?;
    let opts = LoopOptions {
        order: 0,
        cutoff: config.cutoff,
        max_cutoff: config.max_cutoff,
        floor: config.floor,
        cache: config.cache_dir.as_ref().map(MatrixCache::new).transpose()?,
    };
    let exp = loop_expansion(&beta, &opts)?;
    let mmr = mmr_check(&exp, &delta)?;
    let samples = admissible_samples(&beta, MACMAHON_SAMPLES, SAMPLE_SEED)?;
    let macmahon = macmahon_check(&beta, MACMAHON_CUTOFF, &samples, DEFAULT_TOLERANCE)?;
    let ok = mmr.holds && macmahon.passed && !exp.partial;
    emit(config, &MmrOutput { knot: beta, alexander: delta.to_string(), mmr, macmahon, partial: exp.partial })?;
    Ok(exit_code(ok))
}

#[derive(Serialize)]
struct EntropyOutput {
    #[serde(flatten)]
    report: EntropyReport,
    ratios: Vec<RatioRow>,
}

impl Report for EntropyOutput {
    fn text(&self) -> String {
        let mut out = format!("braid: {} ({} strands)\n", self.report.braid, self.report.braid.strands());
        match &self.report.reference {
            Some(r) => {
                let _ = writeln!(out, "h_ref = {:.6} ({})", r.value, r.provenance);
            }
            None => out.push_str("no reference entropy; suprema are lower bounds only\n"),
        }
        for (m, sup) in &self.report.lawrence {
            let _ = writeln!(out, "m = {m}: grid sup log rho = {:.6}", sup.sup_log);
        }
        for v in &self.report.verdicts {
            let status = match v.holds {
                Some(true) => "pass",
                Some(false) => "FAIL",
                None => "n/a",
            };
            let _ = writeln!(out, "{status}: {} ({:.6} vs {:?})", v.name, v.lhs, v.rhs);
        }
        for r in &self.ratios {
            let _ = writeln!(
                out,
                "alpha = {}: {:.6} {:.6} {:?} {:?}",
                r.alpha, r.q_ratio, r.rho_ratio, r.limit_bound, r.holds
            );
        }
        out
    }

    fn csv(&self) -> String {
        let mut out = String::from("m,j,k,radius\n");
        for (m, sup) in &self.report.lawrence {
            for ((j, k), r) in sup.grid.indices().zip(&sup.radii) {
                let _ = writeln!(out, "{m},{j},{k},{r}");
            }
        }
        out
    }
}

fn cmd_entropy(config: &RunConfig) -> Result<i32> {
    let beta = braid(config)?;
    let reference = config
        .h_ref
        .map(|value| ReferenceEntropy { value, provenance: "supplied with --h-ref".into() })
        .or_else(|| reference_entropy(&beta));
    let grid = TorusGrid::square(config.grid)?;
    let ms: Vec<usize> = (1..=config.cutoff).collect();
    let report = entropy_report(&beta, &ms, &config.alphas, grid, reference.clone())?;
    let ratios = match config.alpha_max {
        Some(max) if beta.closure_is_knot() => asymptotic_ratio(&beta, max, config.grid, reference.map(|r| r.value))?,
        _ => Vec::new(),
    };
    let ok = report.passed() && ratios.iter().all(|r| r.holds != Some(false));
    emit(config, &EntropyOutput { report, ratios })?;
    Ok(exit_code(ok))
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Serialize)]
struct SelftestReport {
    checks: Vec<CheckOutcome>,
    passed: bool,
}

impl Report for SelftestReport {
    fn text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = write!(out, "{} {}", verdict(c.passed), c.name);
            if let Some(d) = &c.detail {
                let _ = write!(out, ": {d}");
            }
            out.push('\n');
        }
        out
    }

    fn csv(&self) -> String {
        let mut out = String::from("check,passed\n");
        for c in &self.checks {
            let _ = writeln!(out, "\"{}\",{}", c.name, c.passed);
        }
        out
    }
}

fn cmd_selftest(config: &RunConfig) -> Result<i32> {
    let checks = selftest();
    let passed = checks.iter().all(|c| c.passed);
    emit(config, &SelftestReport { checks, passed })?;
    Ok(exit_code(passed))
}

fn outcome(name: String, result: Result<bool>) -> CheckOutcome {
    match result {
        Ok(passed) => CheckOutcome { name, passed, detail: None },
        Err(e) => CheckOutcome { name, passed: false, detail: Some(e.to_string()) },
    }
}

/// The internal oracle suites, one outcome per check.
pub fn selftest() -> Vec<CheckOutcome> {
    use crate::lawrence::{at_d_minus_one, braid_relations_hold, lawrence_word, symmetric_burau, LawrenceRep};
    use crate::quantum::checks::{homological_traces, random_unit_point, test_words};
    use crate::quantum::{normalization_check, null_space, splitting_check, symmetry_check, yang_baxter_check, Flavor};

    let mut out = Vec::new();
    for (n, m) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)] {
        out.push(outcome(
            format!("null-space traces equal Lawrence traces, n = {n}, m = {m}"),
            (|| {
                let null = null_space(n, m)?;
                let lawrence = LawrenceRep::new(n, m)?;
                for beta in test_words(n, 3, 6, 7)? {
                    let (q, h) = homological_traces(&null, &lawrence, &beta)?;
                    if q != h {
                        return Ok(false);
                    }
                }
                Ok(true)
            })(),
        ));
    }
    for m in 0..=3 {
        for flavor in [Flavor::Hat, Flavor::Plain] {
            out.push(outcome(format!("Yang-Baxter, weight {m}, {flavor:?}"), yang_baxter_check(m, flavor)));
        }
    }
    for (n, m) in [(3, 1), (3, 2), (3, 3), (4, 1), (4, 2), (4, 3)] {
        out.push(outcome(format!("braid relations in L_{{{n},{m}}}"), braid_relations_hold(n, m)));
    }
    for (n, m) in [(3, 2), (4, 3)] {
        out.push(outcome(
            format!("L_{{{n},{m}}} at d = -1 is Sym^{m} of Burau"),
            (|| {
                let rep = LawrenceRep::new(n, m)?;
                for beta in test_words(n, 2, 5, 11)? {
                    if at_d_minus_one(&lawrence_word(&rep, &beta)?) != symmetric_burau(n, m, &beta)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            })(),
        ));
    }
    for (alpha, n, letters) in [(2, 2, vec![1, 1, -1, 1]), (3, 2, vec![1]), (2, 3, vec![1, -2]), (3, 3, vec![1, 2])] {
        out.push(outcome(
            format!("normalized and unnormalized braidings agree, alpha = {alpha}, n = {n}"),
            BraidWord::new(n, letters).and_then(|beta| normalization_check(alpha, n, &beta, 4)),
        ));
    }
    for (n, alpha) in [(2, 3), (3, 2), (3, 3)] {
        out.push(outcome(
            format!("weight symmetry of traces, n = {n}, alpha = {alpha}"),
            (|| {
                let words = test_words(n, 2, 4, 3)?;
                for m in 0..=n * (alpha - 1) {
                    if !symmetry_check(n, m, alpha, &words)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            })(),
        ));
    }
    out.push(outcome(
        "weight spaces split into null spaces, n, m <= 3".into(),
        (|| {
            let point = random_unit_point(13);
            for n in 2..=3 {
                for beta in test_words(n, 1, 5, 17)? {
                    for m in 0..=3 {
                        if splitting_check(n, m, &beta, &point)?.relative_error > 1e-8 {
                            return Ok(false);
                        }
                    }
                }
            }
            Ok(true)
        })(),
    ));
    out
}
