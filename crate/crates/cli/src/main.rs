//! Command-line front end: synthesize, verify, apply, classify and compose.
//!
//! Exit codes: 0 ok, 1 negative verdict, 2 invalid input, 3 internal
//! failure, 4 hypothesis not met.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;

use jetmove::automorphisms::AutWord;
use jetmove::dantesque::{descriptor_invariants, isomorphism_decide, Verdict};
use jetmove::exactalg::ScalarParser;
use jetmove::json::{
    descriptor_from_json, jet_from_json, jet_to_json, job_from_json, word_from_json, word_to_json, Job,
};
use jetmove::surfaces::Jet;
use jetmove::transitivity::{synth, synth_pair, SynthOptions};
use jetmove::{Error, Scalar};

#[derive(Parser)]
#[command(name = "jetmove", version, about = "Exact automorphisms of the real torus and sphere moving curvilinear jets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a word taking the job's source jets to its targets.
    Synth {
        #[arg(long)]
        job: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a word's certificates and that it maps one job's source onto another's target.
    Verify {
        #[arg(long)]
        word: PathBuf,
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
    },
    /// Print the image of a jet, or of a list of jets.
    Apply {
        #[arg(long)]
        word: PathBuf,
        #[arg(long)]
        jet: PathBuf,
    },
    /// Decide whether two Dantesque surface descriptors are isomorphic.
    Classify { first: PathBuf, second: PathBuf },
    /// Write the word applying the first word and then the second.
    Compose {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

enum Failure {
    Invalid(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 2,
            Failure::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Internal(m) => m,
        }
    }
}

type Outcome = Result<u8, Failure>;

fn invalid(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure::Invalid(format!("{}: {e}", path.display()))
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| invalid(path, e))?;
    serde_json::from_str(&text).map_err(|e| invalid(path, e))
}

fn write_json(path: &Path, v: &Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(v).map_err(|e| Failure::Internal(e.to_string()))?;
    fs::write(path, text + "\n").map_err(|e| invalid(path, e))
}

fn read_word(path: &Path, parser: &mut ScalarParser) -> Result<AutWord<Scalar>, Failure> {
    word_from_json(&read_json(path)?, parser).map_err(|e| invalid(path, e))
}

fn read_job(path: &Path, parser: &mut ScalarParser) -> Result<Job<Scalar>, Failure> {
    job_from_json(&read_json(path)?, parser).map_err(|e| invalid(path, e))
}

/// First leaf where two JSON values differ, as `(path, found, expected)`.
fn first_difference(found: &Value, expected: &Value, path: String) -> Option<(String, String, String)> {
    match (found, expected) {
        (Value::Object(a), Value::Object(b)) => {
            let mut keys: Vec<&String> = a.keys().chain(b.keys()).collect();
            keys.sort();
            keys.dedup();
            keys.into_iter().find_map(|k| {
                let (x, y) = (a.get(k).unwrap_or(&Value::Null), b.get(k).unwrap_or(&Value::Null));
                first_difference(x, y, format!("{path}.{k}"))
            })
        }
        (Value::Array(a), Value::Array(b)) if a.len() == b.len() => a
            .iter()
            .zip(b)
            .enumerate()
            .find_map(|(i, (x, y))| first_difference(x, y, format!("{path}[{i}]"))),
        _ if found == expected => None,
        _ => Some((path, found.to_string(), expected.to_string())),
    }
}

fn cmd_synth(job_path: &Path, out: &Path) -> Outcome {
    let mut parser = ScalarParser::new();
    let job = read_job(job_path, &mut parser)?;
    let opts = SynthOptions::from_env();
    let result = if job.pinned.is_empty() && job.from.is_none() {
        synth(job.surface, &job.jets, &opts)
    } else {
        let source = job.source();
        synth_pair(job.surface, &source[job.pinned.len()..], &job.jets, &job.pinned, &opts)
    };
    let word = match result {
        Ok(w) => w,
        Err(e @ (Error::EnumerationExhausted(_) | Error::NeedsExtension(_))) => {
            return Err(Failure::Internal(format!("synthesis failed: {e}")))
        }
        Err(e) => return Err(invalid(job_path, e)),
    };
    for (i, (a, b)) in job.source().iter().zip(&job.target()).enumerate() {
        match word.apply_jet(a) {
            Ok(image) if &image == b => {}
            Ok(_) => return Err(Failure::Internal(format!("synthesized word misses target jet {i}"))),
            Err(e) => return Err(Failure::Internal(format!("synthesized word fails on jet {i}: {e}"))),
        }
    }
    write_json(out, &word_to_json(&word))?;
    println!("{} generators written to {}", word.len(), out.display());
    for f in word.formulas() {
        println!("  {f}");
    }
    Ok(0)
}

fn cmd_verify(word_path: &Path, from: &Path, to: &Path) -> Outcome {
    let mut parser = ScalarParser::new();
    let word = read_word(word_path, &mut parser)?;
    let source = read_job(from, &mut parser)?.source();
    let target = read_job(to, &mut parser)?.target();
    if source.len() != target.len() {
        return Err(Failure::Invalid(format!(
            "{} source jets but {} target jets",
            source.len(),
            target.len()
        )));
    }
    for (i, (a, b)) in source.iter().zip(&target).enumerate() {
        let image = word.apply_jet(a).map_err(|e| Failure::Invalid(format!("jet {i}: {e}")))?;
        if &image != b {
            let (path, found, expected) = first_difference(&jet_to_json(&image), &jet_to_json(b), format!("jet {i}"))
                .unwrap_or_else(|| (format!("jet {i}"), "image".into(), "target".into()));
            println!("mismatch at {path}: got {found}, expected {expected}");
            return Ok(1);
        }
    }
    println!("ok: {} certified generators map all {} jets", word.len(), source.len());
    Ok(0)
}

fn cmd_apply(word_path: &Path, jet_path: &Path) -> Outcome {
    let mut parser = ScalarParser::new();
    let word = read_word(word_path, &mut parser)?;
    let v = read_json(jet_path)?;
    let image = |v: &Value, parser: &mut ScalarParser| -> Result<Value, Failure> {
        let j: Jet<Scalar> = jet_from_json(v, parser).map_err(|e| invalid(jet_path, e))?;
        let out = word.apply_jet(&j).map_err(|e| invalid(jet_path, e))?;
        Ok(jet_to_json(&out))
    };
    let out = match &v {
        Value::Array(js) => Value::Array(js.iter().map(|j| image(j, &mut parser)).collect::<Result<_, _>>()?),
        single => image(single, &mut parser)?,
    };
    println!("{}", serde_json::to_string_pretty(&out).map_err(|e| Failure::Internal(e.to_string()))?);
    Ok(0)
}

fn cmd_classify(first: &Path, second: &Path) -> Outcome {
    let mut parser = ScalarParser::new();
    let a = descriptor_from_json::<Scalar, _>(&read_json(first)?, &mut parser).map_err(|e| invalid(first, e))?;
    let b = descriptor_from_json::<Scalar, _>(&read_json(second)?, &mut parser).map_err(|e| invalid(second, e))?;
    let verdict = isomorphism_decide(&a, &b);
    println!("{verdict}");
    println!("{}: {}", first.display(), descriptor_invariants(&a));
    println!("{}: {}", second.display(), descriptor_invariants(&b));
    Ok(match verdict {
        Verdict::Isomorphic => 0,
        Verdict::NotIsomorphic => 1,
        Verdict::HypothesisNotMet => 4,
    })
}

fn cmd_compose(first: &Path, second: &Path, out: &Path) -> Outcome {
    let mut parser = ScalarParser::new();
    let a = read_word(first, &mut parser)?;
    let b = read_word(second, &mut parser)?;
    let w = a.then(&b).map_err(|e| Failure::Invalid(e.to_string()))?;
    write_json(out, &word_to_json(&w))?;
    println!("{} generators written to {}", w.len(), out.display());
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Synth { job, out } => cmd_synth(job, out),
        Command::Verify { word, from, to } => cmd_verify(word, from, to),
        Command::Apply { word, jet } => cmd_apply(word, jet),
        Command::Classify { first, second } => cmd_classify(first, second),
        Command::Compose { first, second, out } => cmd_compose(first, second, out),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
