//! The `ainf` command line: documents in, reports out.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 when the
//! input cannot be read or does not describe a valid object.

pub mod document;
pub mod report;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::ainfinity::{check_relations, check_strict_unital, cohomology, SubalgebraWitness};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::fixtures;
use crate::simplicial::{
    cochain_dga, glue_double, pair_algebra, sandwich_map, ComplexDocument, SimplicialComplex,
    SimplicialPair,
};
use crate::suspension::{
    double_suspension_model, suspend, verify_phi_sigma, verify_split, verify_trivial_extension,
};
use crate::twisted::lemma_alg_check;

pub use document::{AlgebraDocument, Parsed};
pub use report::{digest, Report, Verdict};

#[derive(Debug, Parser)]
#[command(
    name = "ainf",
    version,
    about = "Exact A-infinity algebra computations: suspension, bimodules, twisted complexes"
)]
pub struct Cli {
    /// Ground field: q or fp:<p>. Overrides the field of input documents.
    #[arg(long, global = true)]
    field: Option<Field>,
    /// Seed for the random fixture.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit the report as JSON, to PATH if given.
    #[arg(long, global = true, num_args = 0..=1, value_name = "PATH")]
    json_report: Option<Option<PathBuf>>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// Input document.
    doc: Option<PathBuf>,
    /// Use a named fixture instead of a document (see `fixtures list`).
    #[arg(long, conflicts_with = "doc")]
    fixture: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the A-infinity relations, strict units and subalgebra closure.
    Validate(Input),
    /// Suspend a pair A ⊂ B, possibly several times.
    Suspend {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 1)]
        times: usize,
        /// Write the result here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Emit the adapted basis, which keeps A as a listed subalgebra.
        #[arg(long)]
        adapted: bool,
    },
    /// Graded cohomology dimensions per (degree, source, target).
    Cohomology(Input),
    /// Run one of the verification pipelines.
    Verify {
        lemma: Lemma,
        #[command(flatten)]
        input: Input,
    },
    #[command(subcommand)]
    Fixtures(FixturesCommand),
    #[command(subcommand)]
    Simplicial(SimplicialCommand),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Lemma {
    TrivialExtension,
    PhiSigma,
    Split,
    DoubleSuspension,
    LemmaAlg,
    Sandwich,
}

#[derive(Debug, Subcommand)]
enum FixturesCommand {
    /// Names accepted by --fixture and `fixtures emit`.
    List,
    /// Write a fixture as a document.
    Emit {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum SimplicialCommand {
    /// The cochain algebra of a complex.
    Build {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// C*(U) inside C*(U) ⊕ C*(U,W)[1] for a pair (U, W).
    Pair {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The cochain algebra of the double U₊ ∪_W U₋.
    Double {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

const FIXTURE_HELP: &[(&str, &str)] = &[
    ("K", "the ground field, A = B = K"),
    ("dual-<n>", "K inside K + K eps with deg eps = n"),
    (
        "an-<n>",
        "the A2 path algebra inside its trivial extension by the dual shifted by n",
    ),
    (
        "rand",
        "random strictly unital algebra with its directed subalgebra (uses --seed)",
    ),
    (
        "ball-<n>",
        "the simplicial pair (simplex, boundary) in dimension n",
    ),
];

enum Fixture {
    Pair(SubalgebraWitness),
    Complex(SimplicialPair),
}

fn fixture(name: &str, field: Field, seed: u64) -> Result<Fixture> {
    let number = |prefix: &str| {
        name.strip_prefix(prefix)
            .and_then(|n| n.parse::<i64>().ok())
    };
    if name == "K" {
        return Ok(Fixture::Pair(fixtures::fix_k(field)));
    }
    if name == "rand" {
        return fixtures::fix_rand(field, seed).map(Fixture::Pair);
    }
    if let Some(n) = number("dual-") {
        return Ok(Fixture::Pair(fixtures::fix_dual(field, n)));
    }
    if let Some(n) = number("an-") {
        return Ok(Fixture::Pair(fixtures::fix_an(field, n)));
    }
    if let Some(n) = number("ball-").filter(|n| (0..=6).contains(n)) {
        return Ok(Fixture::Complex(SimplicialPair::ball(n as usize)));
    }
    Err(Error::Input(format!("unknown fixture `{name}`")))
}

/// Where the document came from, and its bytes for the digest.
struct Loaded {
    text: String,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

impl Cli {
    fn field_or_default(&self) -> Field {
        self.field.unwrap_or(Field::Rational)
    }

    fn load_algebra(&self, input: &Input) -> Result<(Loaded, AlgebraDocument)> {
        let doc = match (&input.doc, &input.fixture) {
            (Some(path), _) => AlgebraDocument::from_json(&read(path)?)?,
            (None, Some(name)) => match fixture(name, self.field_or_default(), self.seed)? {
                Fixture::Pair(p) => AlgebraDocument::from_pair(&p),
                Fixture::Complex(_) => {
                    return Err(Error::Input(format!("`{name}` is a simplicial pair")))
                }
            },
            (None, None) => {
                return Err(Error::Input("no input document or --fixture given".into()))
            }
        };
        let text = match &input.doc {
            Some(path) => read(path)?,
            None => doc.to_json(),
        };
        Ok((Loaded { text }, doc))
    }

    fn load_complex(&self, input: &Input) -> Result<(Loaded, ComplexDocument)> {
        match (&input.doc, &input.fixture) {
            (Some(path), _) => {
                let text = read(path)?;
                let doc = serde_json::from_str(&text)
                    .map_err(|e| Error::Input(format!("malformed complex document: {e}")))?;
                Ok((Loaded { text }, doc))
            }
            (None, Some(name)) => match fixture(name, self.field_or_default(), self.seed)? {
                Fixture::Complex(p) => {
                    let doc = p.to_document();
                    Ok((
                        Loaded {
                            text: serde_json::to_string_pretty(&doc).expect("serializes"),
                        },
                        doc,
                    ))
                }
                Fixture::Pair(_) => Err(Error::Input(format!("`{name}` is not a simplicial pair"))),
            },
            (None, None) => Err(Error::Input("no input document or --fixture given".into())),
        }
    }
}

fn need_pair(parsed: &Parsed) -> Result<&SubalgebraWitness> {
    parsed
        .pair
        .as_ref()
        .ok_or_else(|| Error::Input("the document lists no subalgebra".into()))
}

fn table(report: &mut Report, label: &str, alg: &crate::ainfinity::AInfAlgebra) -> Result<()> {
    report
        .cohomology
        .push(report::CohomologyTable::new(label, &cohomology(alg)?));
    Ok(())
}

/// What a command produced besides its report.
enum Output {
    None,
    Document(String, Option<PathBuf>),
    Lines(Vec<String>),
}

fn run_command(cli: &Cli, report: &mut Report) -> Result<Output> {
    match &cli.command {
        Command::Validate(input) => {
            let (loaded, doc) = cli.load_algebra(input)?;
            report.input_digest = digest(loaded.text.as_bytes());
            // closure failures are findings, not input errors
            let subalgebra = doc.subalgebra.clone();
            let mut plain = doc.clone();
            plain.subalgebra = None;
            let alg = plain.parse(cli.field)?.algebra;
            let rel = check_relations(&alg);
            report.check(
                "A-infinity relations",
                rel.passed(),
                rel.describe(alg.space(), alg.space(), 5).join("; "),
            );
            if alg.units().is_some() {
                report.check("strict units", check_strict_unital(&alg)?, "");
            }
            if let Some(ids) = subalgebra {
                match SubalgebraWitness::from_ids(alg.clone(), &ids) {
                    Ok(_) => report.check("subalgebra is closed", true, ""),
                    Err(Error::ClosureViolation(e)) => {
                        report.check("subalgebra is closed", false, e)
                    }
                    Err(e) => return Err(e),
                }
            }
            Ok(Output::None)
        }
        Command::Suspend {
            input,
            times,
            out,
            adapted,
        } => {
            let (loaded, doc) = cli.load_algebra(input)?;
            report.input_digest = digest(loaded.text.as_bytes());
            let parsed = doc.parse(cli.field)?;
            let mut pair = need_pair(&parsed)?.clone();
            let mut result = AlgebraDocument::from_pair(&pair);
            for step in 1..=*times {
                let s = suspend(&pair)?;
                let rel = check_relations(s.tagged());
                report.check(
                    &format!("suspension {step} satisfies the relations"),
                    rel.passed(),
                    rel.to_string(),
                );
                result = if *adapted {
                    AlgebraDocument::from_pair(s.pair())
                } else {
                    AlgebraDocument::from_algebra(s.tagged())
                };
                pair = s.pair().clone();
            }
            table(report, "result", pair.parent())?;
            Ok(Output::Document(result.to_json(), out.clone()))
        }
        Command::Cohomology(input) => {
            let (loaded, doc) = cli.load_algebra(input)?;
            report.input_digest = digest(loaded.text.as_bytes());
            let parsed = doc.parse(cli.field)?;
            table(report, "algebra", &parsed.algebra)?;
            if let Some(pair) = &parsed.pair {
                table(report, "subalgebra", pair.sub())?;
            }
            Ok(Output::None)
        }
        Command::Verify {
            lemma: Lemma::Sandwich,
            input,
        } => {
            let (loaded, doc) = cli.load_complex(input)?;
            report.input_digest = digest(loaded.text.as_bytes());
            let pair = SimplicialPair::from_document(&doc)?;
            let field = cli.field_or_default();
            let b = pair_algebra(&pair, field)?;
            report.check(
                "restriction B -> C*(W) is a quasi-isomorphism",
                crate::ainfinity::is_quasi_iso(&b.restriction)?,
                "",
            );
            let s = sandwich_map(&pair, field)?;
            report.check(
                "sandwich map is a dga homomorphism",
                s.is_homomorphism(),
                "",
            );
            report.check("sandwich map is a quasi-isomorphism", s.is_quasi_iso(), "");
            let (lhs, rhs) = s.cohomology_dims()?;
            report.check(
                "cohomology of the double matches the suspension",
                lhs == rhs,
                format!("{lhs:?} vs {rhs:?}"),
            );
            table(report, "double", s.source.algebra())?;
            table(report, "suspension", s.suspension.tagged())?;
            Ok(Output::None)
        }
        Command::Verify { lemma, input } => {
            let (loaded, doc) = cli.load_algebra(input)?;
            report.input_digest = digest(loaded.text.as_bytes());
            let parsed = doc.parse(cli.field)?;
            let pair = need_pair(&parsed)?;
            match lemma {
                Lemma::TrivialExtension => report.stages(&verify_trivial_extension(pair)?),
                Lemma::Split => report.stages(&verify_split(pair)?.1),
                Lemma::PhiSigma => report.stages(&verify_phi_sigma(pair)?.stages),
                Lemma::DoubleSuspension => {
                    let d = double_suspension_model(pair)?;
                    report.stages(&d.stages);
                    table(report, "double suspension", &d.double)?;
                    table(report, "model", &d.model)?;
                }
                Lemma::LemmaAlg => {
                    let r = lemma_alg_check(pair)?;
                    let rel = check_relations(&r.cone_algebra);
                    report.check(
                        "cone endomorphism algebra satisfies the relations",
                        rel.passed(),
                        rel.to_string(),
                    );
                    report.check(
                        "cone endomorphism algebra equals the suspension",
                        r.mismatch.is_none(),
                        r.mismatch.clone().unwrap_or_default(),
                    );
                    report.check("directed parts agree", r.directed_equal, "");
                    report.check(
                        "A-sigma is quasi-isomorphic to the directed part",
                        r.directed_quasi_iso,
                        "",
                    );
                }
                Lemma::Sandwich => unreachable!("handled above"),
            }
            Ok(Output::None)
        }
        Command::Fixtures(FixturesCommand::List) => Ok(Output::Lines(
            FIXTURE_HELP
                .iter()
                .map(|(n, d)| format!("{n:<10} {d}"))
                .collect(),
        )),
        Command::Fixtures(FixturesCommand::Emit { name, out }) => {
            let text = match fixture(name, cli.field_or_default(), cli.seed)? {
                Fixture::Pair(p) => AlgebraDocument::from_pair(&p).to_json(),
                Fixture::Complex(p) => {
                    serde_json::to_string_pretty(&p.to_document()).expect("serializes")
                }
            };
            report.input_digest = digest(text.as_bytes());
            Ok(Output::Document(text, out.clone()))
        }
        Command::Simplicial(sub) => {
            let (input, out) = match sub {
                SimplicialCommand::Build { input, out }
                | SimplicialCommand::Pair { input, out }
                | SimplicialCommand::Double { input, out } => (input, out),
            };
            let (loaded, doc) = cli.load_complex(input)?;
            report.input_digest = digest(loaded.text.as_bytes());
            let field = cli.field_or_default();
            let result = match sub {
                SimplicialCommand::Build { .. } => {
                    let x = SimplicialComplex::from_document(&doc)?;
                    let c = cochain_dga(&x, field)?;
                    table(report, "cochains", c.algebra())?;
                    AlgebraDocument::from_algebra(c.algebra())
                }
                SimplicialCommand::Pair { .. } => {
                    let pair = SimplicialPair::from_document(&doc)?;
                    let b = pair_algebra(&pair, field)?;
                    let qi = crate::ainfinity::is_quasi_iso(&b.restriction)?;
                    report.check("restriction B -> C*(W) is a quasi-isomorphism", qi, "");
                    table(report, "B", b.algebra())?;
                    AlgebraDocument::from_pair(&b.pair)
                }
                SimplicialCommand::Double { .. } => {
                    let pair = SimplicialPair::from_document(&doc)?;
                    let c = cochain_dga(&glue_double(&pair)?, field)?;
                    table(report, "double", c.algebra())?;
                    AlgebraDocument::from_algebra(c.algebra())
                }
            };
            Ok(Output::Document(result.to_json(), out.clone()))
        }
    }
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Validate(_) => "validate".into(),
        Command::Suspend { .. } => "suspend".into(),
        Command::Cohomology(_) => "cohomology".into(),
        Command::Verify { lemma, .. } => {
            format!(
                "verify {}",
                lemma.to_possible_value().expect("not skipped").get_name()
            )
        }
        Command::Fixtures(FixturesCommand::List) => "fixtures list".into(),
        Command::Fixtures(FixturesCommand::Emit { .. }) => "fixtures emit".into(),
        Command::Simplicial(SimplicialCommand::Build { .. }) => "simplicial build".into(),
        Command::Simplicial(SimplicialCommand::Pair { .. }) => "simplicial pair".into(),
        Command::Simplicial(SimplicialCommand::Double { .. }) => "simplicial double".into(),
    }
}

/// Runs a parsed command, writing to the given streams; returns the exit code.
pub fn execute(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let start = Instant::now();
    let mut report = Report::new(&command_name(&cli.command), String::new());
    let output = match run_command(cli, &mut report) {
        Ok(o) => {
            report.settle();
            o
        }
        Err(e) => {
            report.fail_with(&e);
            Output::None
        }
    };
    report.elapsed_ms = start.elapsed().as_millis();

    let mut doc_on_stdout = false;
    match output {
        Output::None => {}
        Output::Lines(lines) => {
            for l in lines {
                let _ = writeln!(stdout, "{l}");
            }
            return report.verdict.exit_code();
        }
        Output::Document(text, Some(path)) => {
            if let Err(e) = fs::write(&path, text + "\n") {
                report.fail_with(&Error::Input(format!(
                    "cannot write {}: {e}",
                    path.display()
                )));
            }
        }
        Output::Document(text, None) => {
            if report.verdict != Verdict::Error {
                let _ = writeln!(stdout, "{text}");
                doc_on_stdout = true;
            }
        }
    }

    let stream: &mut dyn Write = if doc_on_stdout { stderr } else { stdout };
    match &cli.json_report {
        Some(Some(path)) => {
            let json = serde_json::to_string_pretty(&report).expect("reports serialize");
            if let Err(e) = fs::write(path, json + "\n") {
                let _ = writeln!(stream, "error: cannot write {}: {e}", path.display());
                return Verdict::Error.exit_code();
            }
            let _ = write!(stream, "{}", report.to_text());
        }
        Some(None) => {
            let _ = writeln!(
                stream,
                "{}",
                serde_json::to_string_pretty(&report).expect("reports serialize")
            );
        }
        None => {
            let _ = write!(stream, "{}", report.to_text());
        }
    }
    report.verdict.exit_code()
}

/// Entry point for the binary: parses `args` and runs the command.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                Verdict::Error.exit_code()
            } else {
                0
            };
        }
    };
    execute(
        &cli,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let cli = Cli::try_parse_from(std::iter::once("ainf").chain(args.iter().copied())).unwrap();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = execute(&cli, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn fixture_names() {
        let q = Field::Rational;
        assert!(matches!(fixture("K", q, 0), Ok(Fixture::Pair(_))));
        assert!(matches!(fixture("dual-2", q, 0), Ok(Fixture::Pair(_))));
        assert!(matches!(fixture("ball-1", q, 0), Ok(Fixture::Complex(_))));
        assert!(fixture("ball-9", q, 0).is_err());
        assert!(fixture("dual-x", q, 0).is_err());
    }

    #[test]
    fn validate_a_fixture() {
        let (code, out, _) = run(&["validate", "--fixture", "an-2"]);
        assert_eq!(code, 0);
        assert!(out.contains("validate: pass"));
    }

    #[test]
    fn suspended_document_goes_to_stdout() {
        let (code, out, err) = run(&["suspend", "--fixture", "K"]);
        assert_eq!(code, 0);
        let doc = AlgebraDocument::from_json(&out).unwrap();
        assert_eq!(doc.basis.len(), 3);
        assert!(err.contains("suspend"));
    }

    #[test]
    fn json_report_replaces_text() {
        let (code, out, _) = run(&["verify", "lemma-alg", "--fixture", "K", "--json-report"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["verdict"], "pass");
    }

    #[test]
    fn unknown_fixture_is_an_input_error() {
        let (code, out, _) = run(&["cohomology", "--fixture", "nope"]);
        assert_eq!(code, 2);
        assert!(out.contains("unknown fixture"));
    }
}
