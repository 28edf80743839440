//! The `stackyfan` command line: JSON in, a text or JSON report out.
//!
//! Exit codes: 0 when a report was produced (including "no" verdicts), 1 when
//! the report could not be written, 2 on malformed input or usage errors.
//! Coordinates and cones are numbered from 1 in reports.

pub mod format;
pub mod svg;

use std::ffi::OsString;
use std::fmt::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::constructions::{
    canonical_stack, cox_presentation, fantastack, gerbe_decomposition, gms_check, gms_construct, is_isomorphism,
    moduli_description, unstable_cones, GmsResult,
};
use crate::error::Error;
use crate::fgab::FgAbGroup;
use crate::polyhedral::{Cone, Fan};
use crate::stacky::{gbeta, present_quotient, reduce_nonstrict, split_torus_factor, QuotientPresentation, StackyFan};

pub use format::{FanFile, FormatError, GroupFile, JsonInt, MorphismFile, StackyFanFile};
pub use svg::render_fan_svg;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutput {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "stackyfan", version, about = "Stacky fans, toric stacks and their good moduli spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Io {
    /// Stacky fan (or morphism) JSON file
    #[arg(long)]
    input: PathBuf,
    /// Print a machine-readable JSON report
    #[arg(long)]
    json: bool,
    /// Write the report to this file instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct WithZero {
    #[command(flatten)]
    io: Io,
    /// Coordinates (1-based, comma separated) whose sections vanish
    #[arg(long, value_delimiter = ',')]
    zero: Vec<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a stacky fan or morphism file
    Validate(Io),
    /// The group G_beta and its weights
    Gbeta(Io),
    /// The quotient presentation [X / G_beta]
    Present(Io),
    /// Fantastack of a fan on N (given in the file) and the beta images
    Fantastack(Io),
    /// Canonical stack over the stacky fan
    Canonical(Io),
    /// Cox construction of the file's fan
    Cox(Io),
    /// Unstable cones
    Unstable(Io),
    /// Isomorphism criterion for a morphism file
    Iso(Io),
    /// Good moduli space criterion for a morphism file
    #[command(name = "gms-check")]
    GmsCheck(Io),
    /// Construct the good moduli space, if it is a toric variety
    Gms(Io),
    /// Divisors and relations describing maps into a smooth toric stack
    Moduli(WithZero),
    /// Strict stacky fan presenting a non-strict one as a closed substack
    Reduce(Io),
    /// Split off the B G_m factor of an infinite cokernel
    Split(Io),
    /// Gerbe decomposition of the substack where the --zero sections vanish
    Gerbe(WithZero),
    /// SVG picture of a rank-2 stacky fan
    Render(Io),
}

/// A failure to compute, reported on stderr with exit code 2.
struct Failure {
    file: String,
    field: String,
    message: String,
}

impl Failure {
    fn new(file: &Path, field: &str, message: impl Into<String>) -> Self {
        Failure { file: file.display().to_string(), field: field.to_string(), message: message.into() }
    }

    fn from_format(file: &Path, e: FormatError) -> Self {
        Failure::new(file, &e.field, e.message)
    }

    fn from_error(file: &Path, e: Error) -> Self {
        let field = match &e {
            Error::NotSmooth | Error::NotSubfanOfAffineSpace | Error::NotStronglyConvex => "fan",
            Error::UnsupportedRank => "lattice_rank",
            _ => "beta_images",
        };
        Failure::new(file, field, e.to_string())
    }

    fn render(&self) -> String {
        if self.field.is_empty() {
            format!("error: {}: {}\n", self.file, self.message)
        } else {
            format!("error: {}: {}: {}\n", self.file, self.field, self.message)
        }
    }
}

type Outcome = std::result::Result<String, Failure>;

/// Runs one command line (`argv[0]` is the program name).
pub fn run_command<I, T>(argv: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                CommandOutput { exit_code: 0, stdout: text, stderr: String::new() }
            } else {
                CommandOutput { exit_code: 2, stdout: String::new(), stderr: text }
            };
        }
    };
    let (io, outcome) = dispatch(&cli.command);
    match outcome {
        Err(f) => CommandOutput { exit_code: 2, stdout: String::new(), stderr: f.render() },
        Ok(report) => match &io.output {
            None => CommandOutput { exit_code: 0, stdout: report, stderr: String::new() },
            Some(path) => match std::fs::write(path, report) {
                Ok(()) => CommandOutput { exit_code: 0, stdout: String::new(), stderr: String::new() },
                Err(e) => CommandOutput {
                    exit_code: 1,
                    stdout: String::new(),
                    stderr: format!("error: {}: cannot write report: {e}\n", path.display()),
                },
            },
        },
    }
}

fn dispatch(command: &Command) -> (&Io, Outcome) {
    match command {
        Command::Validate(io) => (io, validate(io)),
        Command::Gbeta(io) => (io, with_stacky_fan(io, gbeta_report)),
        Command::Present(io) => (io, with_stacky_fan(io, present_report)),
        Command::Fantastack(io) => (io, fantastack_report(io)),
        Command::Canonical(io) => (io, with_stacky_fan(io, canonical_report)),
        Command::Cox(io) => (io, with_stacky_fan(io, cox_report)),
        Command::Unstable(io) => (io, with_stacky_fan(io, unstable_report)),
        Command::Iso(io) => (io, iso_report(io)),
        Command::GmsCheck(io) => (io, gms_check_report(io)),
        Command::Gms(io) => (io, with_stacky_fan(io, gms_report)),
        Command::Moduli(z) => (&z.io, moduli_report(z)),
        Command::Reduce(io) => (io, with_stacky_fan(io, reduce_report)),
        Command::Split(io) => (io, with_stacky_fan(io, split_report)),
        Command::Gerbe(z) => (&z.io, gerbe_report(z)),
        Command::Render(io) => (io, render(io)),
    }
}

fn read_json(path: &Path) -> std::result::Result<serde_json::Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::new(path, "", format!("cannot read: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Failure::new(path, "", format!("invalid JSON: {e}")))
}

fn parse<T: serde::de::DeserializeOwned>(path: &Path, value: serde_json::Value) -> std::result::Result<T, Failure> {
    serde_json::from_value(value).map_err(|e| Failure::new(path, "", format!("does not match the schema: {e}")))
}

fn load_stacky_fan(path: &Path) -> std::result::Result<StackyFan, Failure> {
    let file: StackyFanFile = parse(path, read_json(path)?)?;
    file.to_stacky_fan().map_err(|e| Failure::from_format(path, e))
}

fn load_morphism(path: &Path) -> std::result::Result<crate::stacky::StackyMorphism, Failure> {
    let file: MorphismFile = parse(path, read_json(path)?)?;
    file.to_morphism().map_err(|e| Failure::from_format(path, e))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("reports serialize");
    s.push('\n');
    s
}

/// A text report and its JSON counterpart; `json` selects which is printed.
fn emit<T: Serialize>(io: &Io, text: String, value: &T) -> String {
    if io.json {
        to_json(value)
    } else {
        text
    }
}

fn with_stacky_fan(io: &Io, f: fn(&Io, &StackyFan) -> Outcome) -> Outcome {
    let sf = load_stacky_fan(&io.input)?;
    f(io, &sf)
}

// ----- shared report pieces -------------------------------------------------

#[derive(Serialize)]
struct GroupJson {
    free_rank: usize,
    torsion: Vec<JsonInt>,
}

impl GroupJson {
    fn new(g: &FgAbGroup) -> Self {
        GroupJson { free_rank: g.free_rank(), torsion: format::to_json_vec(g.torsion()) }
    }
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn one_based_sets(v: &[Vec<usize>]) -> Vec<Vec<usize>> {
    v.iter().map(|s| one_based(s)).collect()
}

fn vector(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn cone_json(c: &Cone) -> Vec<Vec<JsonInt>> {
    format::to_json_vecs(c.rays())
}

fn describe(sf: &StackyFan) -> String {
    let images: Vec<String> =
        sf.beta_images().iter().enumerate().map(|(i, v)| format!("e{} -> {}", i + 1, vector(v))).collect();
    let lattice = FgAbGroup::free(sf.lattice_rank());
    format!(
        "fan on {lattice}: {}\nbeta: {lattice} -> {}, {}\n",
        sf.fan(),
        sf.target(),
        if images.is_empty() { "zero map".to_string() } else { images.join(", ") }
    )
}

#[derive(Serialize)]
struct PresentJson {
    presentation: String,
    ambient_dim: usize,
    irrelevant_monomials: Vec<Vec<usize>>,
    removed_locus: Vec<Vec<usize>>,
    trivial_torus_rank: usize,
    group: GroupJson,
    weights: Vec<Vec<JsonInt>>,
    fixed_coordinates: Vec<usize>,
}

impl PresentJson {
    fn new(q: &QuotientPresentation) -> Self {
        PresentJson {
            presentation: q.to_string(),
            ambient_dim: q.ambient_dim,
            irrelevant_monomials: one_based_sets(&q.irrelevant_monomials),
            removed_locus: one_based_sets(&q.removed_locus),
            trivial_torus_rank: q.trivial_torus_rank,
            group: GroupJson::new(&q.group.character_group),
            weights: format::to_json_vecs(&q.group.weights.columns()),
            fixed_coordinates: one_based(&q.fixed_coordinates),
        }
    }
}

fn presentation_text(q: &QuotientPresentation) -> String {
    let mut out = format!("{q}\n");
    let monomials: Vec<String> = q
        .irrelevant_monomials
        .iter()
        .map(|s| if s.is_empty() { "1".to_string() } else { s.iter().map(|i| format!("x{}", i + 1)).collect() })
        .collect();
    let _ = writeln!(out, "irrelevant ideal: ({})", monomials.join(", "));
    out
}

// ----- commands -------------------------------------------------------------

#[derive(Serialize)]
struct ValidateJson {
    kind: &'static str,
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    lattice_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    maximal_cones: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    strict: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    finite_cokernel: Option<bool>,
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn validate(io: &Io) -> Outcome {
    let value = read_json(&io.input)?;
    if value.get("source").is_some() {
        let m = load_morphism(&io.input)?;
        let text = format!(
            "valid morphism of stacky fans\nsource lattice: Z^{}\ntarget lattice: Z^{}\n",
            m.source().lattice_rank(),
            m.target().lattice_rank()
        );
        let json = ValidateJson {
            kind: "morphism",
            valid: true,
            lattice_rank: None,
            maximal_cones: None,
            strict: None,
            finite_cokernel: None,
        };
        return Ok(emit(io, text, &json));
    }
    let sf = load_stacky_fan(&io.input)?;
    let d = sf.validate();
    let text = format!(
        "valid stacky fan\n{}maximal cones: {}\nstrict: {}\nfinite cokernel: {}\n",
        describe(&sf),
        sf.fan().maximal_cones().len(),
        yes_no(d.strict),
        yes_no(d.finite_cokernel)
    );
    let json = ValidateJson {
        kind: "stacky_fan",
        valid: d.is_valid(),
        lattice_rank: Some(sf.lattice_rank()),
        maximal_cones: Some(sf.fan().maximal_cones().len()),
        strict: Some(d.strict),
        finite_cokernel: Some(d.finite_cokernel),
    };
    Ok(emit(io, text, &json))
}

#[derive(Serialize)]
struct GbetaJson {
    g0_rank: usize,
    group: GroupJson,
    weights: Vec<Vec<JsonInt>>,
}

fn gbeta_report(io: &Io, sf: &StackyFan) -> Outcome {
    let g = gbeta(sf);
    let weights = g.g1.weights.columns();
    let text = format!(
        "G_beta = {}\ncharacter group of the acting part: {}\nweights: {}\ntrivially acting torus rank: {}\n",
        g.group_name(),
        g.g1.character_group,
        if weights.is_empty() { "none".to_string() } else { weights.iter().map(|w| vector(w)).collect::<Vec<_>>().join(" ") },
        g.g0_rank
    );
    let json =
        GbetaJson { g0_rank: g.g0_rank, group: GroupJson::new(&g.g1.character_group), weights: format::to_json_vecs(&weights) };
    Ok(emit(io, text, &json))
}

fn present_report(io: &Io, sf: &StackyFan) -> Outcome {
    let q = present_quotient(sf).map_err(|e| Failure::from_error(&io.input, e))?;
    Ok(emit(io, presentation_text(&q), &PresentJson::new(&q)))
}

#[derive(Serialize)]
struct ConstructionJson {
    stacky_fan: StackyFanFile,
    #[serde(skip_serializing_if = "Option::is_none")]
    presentation: Option<PresentJson>,
}

fn construction(io: &Io, heading: &str, sf: &StackyFan, extra: String) -> String {
    let q = present_quotient(sf).ok();
    let mut text = format!("{heading}\n{}{extra}", describe(sf));
    if let Some(q) = &q {
        text.push_str(&presentation_text(q));
    }
    let json = ConstructionJson { stacky_fan: StackyFanFile::from_stacky_fan(sf), presentation: q.as_ref().map(PresentJson::new) };
    emit(io, text, &json)
}

fn fantastack_report(io: &Io) -> Outcome {
    let file: StackyFanFile = parse(&io.input, read_json(&io.input)?)?;
    let (sigma, images) = file.to_fantastack_data().map_err(|e| Failure::from_format(&io.input, e))?;
    let f = fantastack(&sigma, &images).map_err(|e| Failure::from_error(&io.input, e))?;
    Ok(construction(io, "fantastack", &f.stacky_fan, String::new()))
}

#[derive(Serialize)]
struct CanonicalJson {
    rays: Vec<Vec<JsonInt>>,
    #[serde(rename = "Phi_images")]
    lattice_images: Vec<Vec<JsonInt>>,
    stacky_fan: StackyFanFile,
    #[serde(skip_serializing_if = "Option::is_none")]
    presentation: Option<PresentJson>,
}

fn canonical_report(io: &Io, sf: &StackyFan) -> Outcome {
    let c = canonical_stack(sf);
    let phi = c.morphism.lattice_map().columns();
    if io.json {
        let q = present_quotient(&c.stacky_fan).ok();
        return Ok(to_json(&CanonicalJson {
            rays: format::to_json_vecs(&c.rays),
            lattice_images: format::to_json_vecs(&phi),
            stacky_fan: StackyFanFile::from_stacky_fan(&c.stacky_fan),
            presentation: q.as_ref().map(PresentJson::new),
        }));
    }
    let extra = format!(
        "Phi: {}\n",
        phi.iter().enumerate().map(|(i, v)| format!("e{} -> {}", i + 1, vector(v))).collect::<Vec<_>>().join(", ")
    );
    Ok(construction(io, "canonical stack", &c.stacky_fan, extra))
}

fn cox_report(io: &Io, sf: &StackyFan) -> Outcome {
    let cox = cox_presentation(sf.fan());
    Ok(construction(io, "Cox construction", &cox, String::new()))
}

#[derive(Serialize)]
struct UnstableJson {
    unstable_cones: Vec<Vec<Vec<JsonInt>>>,
    maximal: Vec<Vec<Vec<JsonInt>>>,
}

fn unstable_report(io: &Io, sf: &StackyFan) -> Outcome {
    let unstable = unstable_cones(sf);
    let maximal: Vec<&Cone> =
        unstable.iter().filter(|c| !unstable.iter().any(|d| d != *c && d.contains_cone(c))).collect();
    let mut text = format!("unstable cones: {}\n", unstable.len());
    for c in &unstable {
        let mark = if maximal.contains(&c) { " (maximal)" } else { "" };
        let _ = writeln!(text, "  {c}{mark}");
    }
    let json = UnstableJson {
        unstable_cones: unstable.iter().map(cone_json).collect(),
        maximal: maximal.iter().map(|c| cone_json(c)).collect(),
    };
    Ok(emit(io, text, &json))
}

#[derive(Serialize)]
struct IsoJson {
    is_isomorphism: bool,
    failing_condition: Option<u8>,
    witness: Option<Vec<Vec<JsonInt>>>,
}

fn iso_report(io: &Io) -> Outcome {
    let m = load_morphism(&io.input)?;
    let v = is_isomorphism(&m).map_err(|e| Failure::from_error(&io.input, e))?;
    let mut text = format!("isomorphism: {}\n", yes_no(v.is_isomorphism));
    if let Some(c) = v.failing_condition {
        let _ = writeln!(text, "failing condition: {c}");
    }
    if let Some(w) = &v.witness {
        let _ = writeln!(text, "witness cone: {w}");
    }
    let json = IsoJson {
        is_isomorphism: v.is_isomorphism,
        failing_condition: v.failing_condition.map(|c| c.number()),
        witness: v.witness.as_ref().map(cone_json),
    };
    Ok(emit(io, text, &json))
}

#[derive(Serialize)]
struct GmsJson {
    verdict: bool,
    failing_condition: Option<&'static str>,
    tau: Option<Vec<Vec<JsonInt>>>,
    witness: Option<Vec<Vec<JsonInt>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    gms_lattice_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    gms_fan: Option<FanFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    morphism: Option<MorphismFile>,
}

fn gms_json(r: &GmsResult) -> GmsJson {
    GmsJson {
        verdict: r.verdict,
        failing_condition: r.failing_condition.map(|c| c.label()),
        tau: r.tau.as_ref().map(cone_json),
        witness: r.witness.as_ref().map(cone_json),
        gms_lattice_rank: r.gms_fan.as_ref().map(Fan::ambient_rank),
        gms_fan: r.gms_fan.as_ref().map(FanFile::from_fan),
        morphism: r.morphism.as_ref().map(MorphismFile::from_morphism),
    }
}

fn gms_text(r: &GmsResult) -> String {
    let mut text = format!("good moduli space: {}\n", yes_no(r.verdict));
    if let Some(c) = r.failing_condition {
        let _ = writeln!(text, "failing condition: {c}");
    }
    if let Some(t) = &r.tau {
        let _ = writeln!(text, "tau: {t}");
    }
    if let Some(w) = &r.witness {
        let _ = writeln!(text, "witness cone: {w}");
    }
    if let Some(f) = &r.gms_fan {
        let _ = writeln!(text, "good moduli space fan on Z^{}: {f}", f.ambient_rank());
    }
    if let Some(m) = &r.morphism {
        let images: Vec<String> = m.lattice_map().columns().iter().map(|v| vector(v)).collect();
        let _ = writeln!(text, "Phi: {}", images.join(" "));
    }
    text
}

fn gms_check_report(io: &Io) -> Outcome {
    let m = load_morphism(&io.input)?;
    let r = gms_check(&m).map_err(|e| Failure::from_error(&io.input, e))?;
    Ok(emit(io, gms_text(&r), &gms_json(&r)))
}

fn gms_report(io: &Io, sf: &StackyFan) -> Outcome {
    let r = gms_construct(sf).map_err(|e| Failure::from_error(&io.input, e))?;
    Ok(emit(io, gms_text(&r), &gms_json(&r)))
}

fn zero_indices(z: &WithZero, n: usize) -> std::result::Result<Vec<usize>, Failure> {
    z.zero
        .iter()
        .map(|&i| {
            if i == 0 || i > n {
                Err(Failure::new(&z.io.input, "--zero", format!("coordinate {i} is not between 1 and {n}")))
            } else {
                Ok(i - 1)
            }
        })
        .collect()
}

fn divisor_sum(r: &[BigInt], name: &str) -> String {
    let mut out = String::new();
    for (i, c) in r.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let sign = if c.is_negative() { "-" } else { "+" };
        let abs = c.abs();
        let coeff = if abs.is_one() { String::new() } else { format!("{abs} ") };
        if out.is_empty() {
            let lead = if c.is_negative() { "-" } else { "" };
            let _ = write!(out, "{lead}{coeff}{name}{}", i + 1);
        } else {
            let _ = write!(out, " {sign} {coeff}{name}{}", i + 1);
        }
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

#[derive(Serialize)]
struct ModuliJson {
    n: usize,
    linear_relations: Vec<Vec<JsonInt>>,
    intersection_relations: Vec<Vec<usize>>,
    forced_zero_sections: Vec<usize>,
}

fn moduli_report(z: &WithZero) -> Outcome {
    let sf = load_stacky_fan(&z.io.input)?;
    let zero = zero_indices(z, sf.lattice_rank())?;
    let d = moduli_description(&sf, &zero).map_err(|e| Failure::from_error(&z.io.input, e))?;
    let mut text = format!("{} divisors D1..D{} with sections s1..s{}\nlinear relations:\n", d.n, d.n, d.n);
    for r in &d.linear_relations {
        let _ = writeln!(text, "  {} ~ 0", divisor_sum(r, "D"));
    }
    text.push_str("intersection relations:\n");
    if d.intersection_relations.is_empty() {
        text.push_str("  none\n");
    }
    for s in &d.intersection_relations {
        let names: Vec<String> = s.iter().map(|i| format!("D{}", i + 1)).collect();
        let _ = writeln!(text, "  {} = empty", names.join(" n "));
    }
    if !d.forced_zero_sections.is_empty() {
        let names: Vec<String> = d.forced_zero_sections.iter().map(|i| format!("s{}", i + 1)).collect();
        let _ = writeln!(text, "forced zero sections: {}", names.join(", "));
    }
    let json = ModuliJson {
        n: d.n,
        linear_relations: format::to_json_vecs(&d.linear_relations),
        intersection_relations: one_based_sets(&d.intersection_relations),
        forced_zero_sections: one_based(&d.forced_zero_sections),
    };
    Ok(emit(&z.io, text, &json))
}

#[derive(Serialize)]
struct ReduceJson {
    substack_coordinates: Vec<usize>,
    stacky_fan: StackyFanFile,
}

fn reduce_report(io: &Io, sf: &StackyFan) -> Outcome {
    let r = reduce_nonstrict(sf);
    let mut text = format!("{}", describe(&r.strict));
    let coords: Vec<String> = r.substack_coordinates.iter().map(|i| format!("x{}", i + 1)).collect();
    let _ = writeln!(
        text,
        "substack: {}",
        if coords.is_empty() { "the whole stack".to_string() } else { format!("V({})", coords.join(",")) }
    );
    if let Ok(q) = present_quotient(&r.strict) {
        let _ = writeln!(text, "{}", q.with_fixed_coordinates(r.substack_coordinates.clone()));
    }
    let json = ReduceJson {
        substack_coordinates: one_based(&r.substack_coordinates),
        stacky_fan: StackyFanFile::from_stacky_fan(&r.strict),
    };
    Ok(emit(io, text, &json))
}

#[derive(Serialize)]
struct SplitJson {
    bg_m_rank: usize,
    inclusion: Vec<Vec<JsonInt>>,
    stacky_fan: StackyFanFile,
}

fn split_report(io: &Io, sf: &StackyFan) -> Outcome {
    let s = split_torus_factor(sf);
    let text = format!("B G_m factor rank: {}\n{}", s.bg_m_rank, describe(&s.reduced));
    let json = SplitJson {
        bg_m_rank: s.bg_m_rank,
        inclusion: format::to_json_vecs(&s.inclusion.columns()),
        stacky_fan: StackyFanFile::from_stacky_fan(&s.reduced),
    };
    Ok(emit(io, text, &json))
}

#[derive(Serialize)]
struct RootJson {
    coordinate: usize,
    b: JsonInt,
    k_exponents: Vec<JsonInt>,
}

#[derive(Serialize)]
struct GerbeJson {
    bg_m_rank: usize,
    roots: Vec<RootJson>,
    base_coordinates: Vec<usize>,
    base: StackyFanFile,
}

fn gerbe_report(z: &WithZero) -> Outcome {
    let sf = load_stacky_fan(&z.io.input)?;
    let zero = zero_indices(z, sf.lattice_rank())?;
    let g = gerbe_decomposition(&sf, &zero).map_err(|e| Failure::from_error(&z.io.input, e))?;
    let mut text = format!("B G_m factor rank: {}\nroots:\n", g.bg_m_rank);
    if g.roots.is_empty() {
        text.push_str("  none\n");
    }
    for r in &g.roots {
        // K over the base, written in the original coordinate names
        let mut k = vec![BigInt::zero(); sf.lattice_rank()];
        for (e, &j) in r.k_exponents.iter().zip(&g.base_coordinates) {
            k[j] = e.clone();
        }
        let _ = writeln!(text, "  L{}^{} = K with K = {}", r.coordinate + 1, r.b, line_bundle(&k));
    }
    let coords: Vec<String> = g.base_coordinates.iter().map(|i| (i + 1).to_string()).collect();
    let _ = writeln!(text, "base coordinates: {}", if coords.is_empty() { "none".to_string() } else { coords.join(", ") });
    text.push_str(&describe(&g.base));
    let json = GerbeJson {
        bg_m_rank: g.bg_m_rank,
        roots: g
            .roots
            .iter()
            .map(|r| RootJson {
                coordinate: r.coordinate + 1,
                b: JsonInt(r.b.clone()),
                k_exponents: format::to_json_vec(&r.k_exponents),
            })
            .collect(),
        base_coordinates: one_based(&g.base_coordinates),
        base: StackyFanFile::from_stacky_fan(&g.base),
    };
    Ok(emit(&z.io, text, &json))
}

fn line_bundle(exponents: &[BigInt]) -> String {
    let parts: Vec<String> = exponents
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.is_zero())
        .map(|(i, e)| if e.is_one() { format!("L{}", i + 1) } else { format!("L{}^{e}", i + 1) })
        .collect();
    if parts.is_empty() {
        "O".to_string()
    } else {
        parts.join(" ")
    }
}

fn render(io: &Io) -> Outcome {
    let sf = load_stacky_fan(&io.input)?;
    render_fan_svg(&sf).map_err(|e| Failure::from_error(&io.input, e))
}
