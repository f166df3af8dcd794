//! `chain3`: sample, certify and compute twisted Alexander polynomials on the
//! character variety of the 3-chain link.
//!
//! Every subcommand writes JSON (complex numbers as `[re, im]`). Exit status is
//! 0 on success, 1 when any check fails and 2 for bad arguments or input.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use chain3::components::{classify, membership, sample_seeded};
use chain3::reconstruct::{character_of, representation_from_point};
use chain3::selftest::{self, hyperbolic_point, hyperbolic_reference, SelftestConfig};
use chain3::tap::{compare, TapComparison};
use chain3::{CharacterPoint, ComponentId, MembershipReport, Representation, Tolerance, C64};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

#[derive(Parser)]
#[command(name = "chain3", version, about = "Character variety of the 3-chain link")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw seeded points on one component or on all nine.
    Sample(SampleArgs),
    /// Check membership and reconstruction residuals of points read from stdin.
    Verify(InputArgs),
    /// Reconstruct representations for points read from stdin.
    Reconstruct(InputArgs),
    /// Compute the twisted Alexander polynomial three ways for points read from stdin.
    Tap(InputArgs),
    /// Sample points and compare the three polynomial routes on each.
    Compare(SampleArgs),
    /// Rebuild the hyperbolic point at t = (2, 2, 2) and compare with the known values.
    Hyperbolic(CommonArgs),
    /// Run the acceptance suite.
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct CommonArgs {
    #[arg(long, default_value_t = 1e-9)]
    eq_tol: f64,
    #[arg(long, default_value_t = 1e-6)]
    margin_tol: f64,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl CommonArgs {
    fn tolerance(&self) -> Result<Tolerance, Failure> {
        Tolerance::new(self.eq_tol, self.margin_tol).map_err(|e| Failure::Usage(e.to_string()))
    }
}

#[derive(Args)]
struct SampleArgs {
    /// A component such as `X1.2+`, `X2-`, `X3`, or `all`.
    #[arg(long, default_value = "all")]
    component: Selection,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    count: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also report agreement up to sign (diagnostic only).
    #[arg(long)]
    sign_tolerant: bool,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct InputArgs {
    /// Restrict membership checks to this component.
    #[arg(long)]
    component: Option<Selection>,
    /// Read points from this file instead of stdin.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Also report agreement up to sign (diagnostic only).
    #[arg(long)]
    sign_tolerant: bool,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Samples per component.
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    count: u64,
    /// One line per criterion instead of JSON.
    #[arg(long)]
    lines: bool,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Clone, Copy)]
enum Selection {
    All,
    One(ComponentId),
}

impl std::str::FromStr for Selection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(Selection::All);
        }
        s.parse::<ComponentId>().map(Selection::One).map_err(|e| e.to_string())
    }
}

impl Selection {
    fn components(self) -> Vec<ComponentId> {
        match self {
            Selection::All => ComponentId::ALL.to_vec(),
            Selection::One(c) => vec![c],
        }
    }
}

enum Failure {
    Usage(String),
    Check(String),
}

/// JSON payload plus whether every check passed.
struct Outcome {
    json: Value,
    passed: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (out, result) = match &cli.command {
        Command::Sample(a) => (&a.common.out, sample(a)),
        Command::Verify(a) => (&a.common.out, verify(a)),
        Command::Reconstruct(a) => (&a.common.out, reconstruct(a)),
        Command::Tap(a) => (&a.common.out, tap(a)),
        Command::Compare(a) => (&a.common.out, compare_sampled(a)),
        Command::Hyperbolic(a) => (&a.out, hyperbolic(a)),
        Command::Selftest(a) => (&a.common.out, run_selftest(a)),
    };
    let (text, passed) = match result {
        Ok((text, passed)) => (text, passed),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let written = match out {
        Some(path) => fs::write(path, &text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn render(o: Outcome) -> Result<(String, bool), Failure> {
    let mut text = serde_json::to_string_pretty(&o.json).map_err(|e| Failure::Check(e.to_string()))?;
    text.push('\n');
    Ok((text, o.passed))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

#[derive(Serialize)]
struct SampleEntry {
    component: ComponentId,
    index: u64,
    point: CharacterPoint,
}

fn draw(a: &SampleArgs, tol: &Tolerance) -> Result<Vec<SampleEntry>, Failure> {
    let mut entries = Vec::new();
    for c in a.component.components() {
        for index in 0..a.count {
            let point = sample_seeded(c, a.seed, index, tol)
                .map_err(|e| Failure::Check(format!("{c} sample {index}: {e}")))?;
            entries.push(SampleEntry { component: c, index, point });
        }
    }
    Ok(entries)
}

fn sample(a: &SampleArgs) -> Result<(String, bool), Failure> {
    let tol = a.common.tolerance()?;
    let entries = draw(a, &tol)?;
    render(Outcome {
        json: to_value(&entries),
        passed: true,
    })
}

/// Reads points from the input: a single point, an array of points, or the
/// output of `sample` (objects carrying a `point` key).
fn read_points(a: &InputArgs) -> Result<Vec<CharacterPoint>, Failure> {
    let text = match &a.input {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?,
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Usage(format!("cannot read stdin: {e}")))?;
            s
        }
    };
    let value: Value = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("bad JSON: {e}")))?;
    let items = match value {
        Value::Array(items) => items,
        other => vec![other],
    };
    items
        .into_iter()
        .enumerate()
        .map(|(i, mut item)| {
            if let Some(p) = item.get_mut("point") {
                item = p.take();
            }
            serde_json::from_value(item).map_err(|e| Failure::Usage(format!("point {i}: {e}")))
        })
        .collect()
}

#[derive(Serialize)]
struct VerifyEntry {
    point: CharacterPoint,
    components: Vec<ComponentId>,
    membership: Vec<MembershipReport>,
    failing: Vec<String>,
    relator_residuals: Option<[f64; 2]>,
    roundtrip_error: Option<f64>,
    reconstruction_error: Option<String>,
    passed: bool,
}

fn verify(a: &InputArgs) -> Result<(String, bool), Failure> {
    let tol = a.common.tolerance()?;
    let points = read_points(a)?;
    let mut all = true;
    let mut entries = Vec::new();
    for p in points {
        let reports: Vec<MembershipReport> = match a.component {
            Some(sel) => sel.components().into_iter().map(|c| membership(&p, c, &tol)).collect(),
            None => ComponentId::ALL.iter().map(|&c| membership(&p, c, &tol)).collect(),
        };
        let components: Vec<ComponentId> = reports.iter().filter(|r| r.verdict).map(|r| r.component).collect();
        // Without a match, name the failures of the nearest component.
        let failing = if components.is_empty() {
            reports
                .iter()
                .min_by(|x, y| worst(x).total_cmp(&worst(y)))
                .map(|r| r.failures(&tol).iter().map(|f| format!("{}: {f}", r.component)).collect())
                .unwrap_or_default()
        } else {
            Vec::new()
        };
        let (relator_residuals, roundtrip_error, reconstruction_error) = match representation_from_point(&p, &tol) {
            Ok((rep, res)) => (Some(res), Some(character_of(&rep).max_distance(&p)), None),
            Err(e) => (None, None, Some(e.to_string())),
        };
        let certified = matches!(relator_residuals, Some([a, b]) if a < tol.eq_tol && b < tol.eq_tol)
            && roundtrip_error.is_some_and(|e| e < tol.eq_tol.max(1e-8));
        let passed = !components.is_empty() && certified;
        all &= passed;
        let membership = if a.component.is_some() {
            reports
        } else {
            reports.into_iter().filter(|r| r.verdict).collect()
        };
        entries.push(VerifyEntry {
            point: p,
            components,
            membership,
            failing,
            relator_residuals,
            roundtrip_error,
            reconstruction_error,
            passed,
        });
    }
    render(Outcome {
        json: to_value(&entries),
        passed: all,
    })
}

/// Largest scaled equation residual of a membership report.
fn worst(r: &MembershipReport) -> f64 {
    r.equation_residuals.iter().map(|l| l.value).fold(0.0, f64::max)
}

#[derive(Serialize)]
struct ReconstructEntry {
    point: CharacterPoint,
    representation: Representation,
    relator_residuals: [f64; 2],
    roundtrip_error: f64,
}

fn reconstruct(a: &InputArgs) -> Result<(String, bool), Failure> {
    let tol = a.common.tolerance()?;
    let mut entries = Vec::new();
    let mut all = true;
    for (i, p) in read_points(a)?.into_iter().enumerate() {
        let (rep, res) = representation_from_point(&p, &tol).map_err(|e| Failure::Check(format!("point {i}: {e}")))?;
        let roundtrip_error = character_of(&rep).max_distance(&p);
        all &= res[0] < tol.eq_tol && res[1] < tol.eq_tol;
        entries.push(ReconstructEntry {
            point: p,
            representation: rep,
            relator_residuals: res,
            roundtrip_error,
        });
    }
    render(Outcome {
        json: to_value(&entries),
        passed: all,
    })
}

#[derive(Serialize)]
struct TapEntry {
    component: Option<ComponentId>,
    point: CharacterPoint,
    relator_residuals: [f64; 2],
    closed_form: chain3::laurent::LaurentPoly3,
    uvw: chain3::laurent::LaurentPoly3,
    fox_numerator: chain3::laurent::LaurentPoly3,
    fox_denominator: chain3::laurent::LaurentPoly3,
    uvw_shift: [i32; 3],
    fox_shift: [i32; 3],
    uvw_agrees: bool,
    fox_agrees: bool,
    divisibility_residual: f64,
    agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    sign_tolerant: Option<SignTolerant>,
}

#[derive(Serialize)]
struct SignTolerant {
    uvw_agrees: bool,
    uvw_negated: bool,
    fox_agrees: bool,
    fox_negated: bool,
}

fn tap_entry(
    component: Option<ComponentId>,
    p: CharacterPoint,
    tol: &Tolerance,
    sign_tolerant: bool,
) -> Result<TapEntry, String> {
    let (rep, res) = representation_from_point(&p, tol).map_err(|e| e.to_string())?;
    let c: TapComparison = compare(&rep, tol.eq_tol).map_err(|e| e.to_string())?;
    Ok(TapEntry {
        component,
        point: p,
        relator_residuals: res,
        uvw_shift: c.uvw_vs_closed.shift,
        fox_shift: c.fox_vs_closed.shift,
        uvw_agrees: c.uvw_vs_closed.equal,
        fox_agrees: c.fox_vs_closed.equal,
        divisibility_residual: c.divisibility_residual,
        agree: c.agree,
        sign_tolerant: sign_tolerant.then_some(SignTolerant {
            uvw_agrees: c.uvw_signed.equal,
            uvw_negated: c.uvw_signed.negated,
            fox_agrees: c.fox_signed.equal,
            fox_negated: c.fox_signed.negated,
        }),
        closed_form: c.closed_form,
        uvw: c.uvw,
        fox_numerator: c.fox_numerator,
        fox_denominator: c.fox_denominator,
    })
}

fn tap(a: &InputArgs) -> Result<(String, bool), Failure> {
    let tol = a.common.tolerance()?;
    let mut entries = Vec::new();
    let mut all = true;
    for (i, p) in read_points(a)?.into_iter().enumerate() {
        let component = match a.component {
            Some(Selection::One(c)) => Some(c),
            _ => classify(&p, &tol).first().copied(),
        };
        let e = tap_entry(component, p, &tol, a.sign_tolerant).map_err(|e| Failure::Check(format!("point {i}: {e}")))?;
        all &= e.agree;
        entries.push(e);
    }
    render(Outcome {
        json: to_value(&entries),
        passed: all,
    })
}

fn compare_sampled(a: &SampleArgs) -> Result<(String, bool), Failure> {
    let tol = a.common.tolerance()?;
    let mut entries = Vec::new();
    let mut all = true;
    for s in draw(a, &tol)? {
        let e = tap_entry(Some(s.component), s.point, &tol, a.sign_tolerant)
            .map_err(|e| Failure::Check(format!("{} sample {}: {e}", s.component, s.index)))?;
        all &= e.agree;
        entries.push(e);
    }
    render(Outcome {
        json: to_value(&entries),
        passed: all,
    })
}

#[derive(Serialize)]
struct Triple {
    beta: C64,
    r12: C64,
    r13: C64,
    r23: C64,
    t123: C64,
}

impl Triple {
    fn of(p: &CharacterPoint) -> Self {
        Self {
            beta: p.beta,
            r12: p.r12,
            r13: p.r13,
            r23: p.r23,
            t123: p.t123(),
        }
    }
}

fn hyperbolic(a: &CommonArgs) -> Result<(String, bool), Failure> {
    let tol = a.tolerance()?;
    let expected = hyperbolic_reference();
    let computed = hyperbolic_point(&tol).map_err(|e| Failure::Check(e.to_string()))?;
    let error = computed
        .max_distance(&expected)
        .max((computed.t123() - expected.t123()).norm());
    let matched = error < 1e-9;
    render(Outcome {
        json: serde_json::json!({
            "t": [2.0, 2.0, 2.0],
            "expected": Triple::of(&expected),
            "computed": Triple::of(&computed),
            "max_error": error,
            "match": matched,
        }),
        passed: matched,
    })
}

fn run_selftest(a: &SelftestArgs) -> Result<(String, bool), Failure> {
    let cfg = SelftestConfig {
        seed: a.seed,
        count: a.count,
        tol: a.common.tolerance()?,
    };
    let report = selftest::run(&cfg);
    if a.lines {
        let mut text: String = report.criteria.iter().map(|c| c.line() + "\n").collect();
        text.push_str(if report.passed { "all criteria passed\n" } else { "some criteria failed\n" });
        return Ok((text, report.passed));
    }
    render(Outcome {
        json: to_value(&report),
        passed: report.passed,
    })
}
