//! Batch front end: argument parsing, dispatch, JSON/CSV report rendering,
//! and the fixture emitter.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::alphabet::Alphabet;
use crate::automata::{compile_regex, parse_dfa, parse_regex, serialize_dfa, Dfa};
use crate::density::{density, density_partial, forbidden_word, format_rational};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::measure::{
    check_independence, counterexample_report, decide_sf_measurable, gap_table,
    subvariety_measurable, SandwichReport, SubvarietyClass,
};
use crate::monoid::{
    derived_length, green_structure, nilpotency_class, syntactic_monoid, RecognizingMorphism,
};

/// Where a language comes from: a regex plus an explicit alphabet, or a DFA
/// file.
#[derive(Debug, Clone)]
pub enum LanguageSource {
    Regex { pattern: String, alphabet: String },
    DfaFile(PathBuf),
}

impl LanguageSource {
    pub fn load(&self) -> Result<Dfa> {
        match self {
            LanguageSource::Regex { pattern, alphabet } => {
                let alphabet: Alphabet = alphabet.parse()?;
                let ast = parse_regex(pattern, &alphabet)?;
                Ok(compile_regex(&ast, &alphabet)?.minimize())
            }
            LanguageSource::DfaFile(path) => {
                let text = std::fs::read_to_string(path)?;
                parse_dfa(&text)
            }
        }
    }
}

/// A fully validated request; the CLI surface parses into this.
#[derive(Debug, Clone)]
pub struct AnalysisRequest {
    pub command: AnalysisCommand,
    /// Reserved for randomized analyses; accepted and recorded for
    /// reproducibility of reports.
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub enum AnalysisCommand {
    Density {
        source: LanguageSource,
        partial: Option<u32>,
        dump_monoid: bool,
    },
    Classify {
        source: LanguageSource,
        dump_monoid: bool,
    },
    Measure {
        source: LanguageSource,
        dump_monoid: bool,
    },
    Approximate {
        source: LanguageSource,
        levels: Vec<usize>,
        csv: bool,
    },
    Independence {
        lhs: LanguageSource,
        rhs: LanguageSource,
    },
    Subvariety {
        source: LanguageSource,
        class: SubvarietyClass,
    },
    DemoCounterexample,
    Oracle {
        source: LanguageSource,
        max_len: usize,
    },
    EmitFixtures {
        directory: PathBuf,
    },
}

/// Exact density and measurability analysis for regular languages.
#[derive(Debug, Parser)]
#[command(name = "regmeasure", version, about)]
pub struct CliArgs {
    /// Seed for randomized analyses (reserved; reports are deterministic).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Debug, Args)]
struct SourceArgs {
    /// Regular expression for the language (requires --alphabet).
    #[arg(long, conflicts_with = "dfa")]
    regex: Option<String>,
    /// Path to a DFA file.
    #[arg(long)]
    dfa: Option<PathBuf>,
    /// Alphabet symbols for --regex, e.g. `ab`.
    #[arg(long)]
    alphabet: Option<String>,
}

impl SourceArgs {
    fn resolve(&self) -> Result<LanguageSource> {
        match (&self.regex, &self.dfa) {
            (Some(pattern), None) => {
                let alphabet = self.alphabet.clone().ok_or_else(|| {
                    Error::invalid("--regex requires --alphabet (density depends on it)")
                })?;
                Ok(LanguageSource::Regex {
                    pattern: pattern.clone(),
                    alphabet,
                })
            }
            (None, Some(path)) => Ok(LanguageSource::DfaFile(path.clone())),
            _ => Err(Error::invalid(
                "exactly one language source is required: --regex or --dfa",
            )),
        }
    }
}

/// Positional source: `re:<pattern>` (with --alphabet) or a DFA file path.
fn positional_source(raw: &str, alphabet: &Option<String>) -> Result<LanguageSource> {
    if let Some(pattern) = raw.strip_prefix("re:") {
        let alphabet = alphabet
            .clone()
            .ok_or_else(|| Error::invalid("re: sources require --alphabet"))?;
        Ok(LanguageSource::Regex {
            pattern: pattern.to_string(),
            alphabet,
        })
    } else {
        Ok(LanguageSource::DfaFile(PathBuf::from(raw)))
    }
}

#[derive(Debug, Subcommand)]
enum CliCommand {
    /// Exact density; optionally also a partial Cesàro average.
    Density {
        #[command(flatten)]
        source: SourceArgs,
        /// Horizon for the exact partial average.
        #[arg(long)]
        partial: Option<u32>,
        /// Include the syntactic monoid dump in the report.
        #[arg(long)]
        dump_monoid: bool,
    },
    /// Star-freeness, group structure, densities and measurability summary.
    Classify {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        dump_monoid: bool,
    },
    /// Decide star-free measurability with a certificate.
    Measure {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        dump_monoid: bool,
    },
    /// Synthesize the inner/outer approximant gap table.
    Approximate {
        #[command(flatten)]
        source: SourceArgs,
        /// Approximant levels, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "0,2,4,6,8,10")]
        levels: Vec<usize>,
        /// Emit CSV instead of JSON.
        #[arg(long)]
        csv: bool,
    },
    /// Check δ(L ∩ K) = δ(L)·δ(K) for star-free L and group language K.
    /// Sources are `re:<pattern>` (with --alphabet) or DFA file paths.
    Independence {
        lhs: String,
        rhs: String,
        #[arg(long)]
        alphabet: Option<String>,
    },
    /// Decide measurability of a group language by a group subclass.
    Subvariety {
        language: String,
        /// One of gcom, gnil:n, gsol:n, g.
        #[arg(long)]
        class: String,
        #[arg(long)]
        alphabet: Option<String>,
    },
    /// Rebuild the nine-element counterexample monoid and verify its facts.
    DemoCounterexample,
    /// Dump all accepted words up to a length bound.
    Oracle {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        max_len: usize,
    },
    /// Write the fixture DFA files into a directory.
    EmitFixtures { directory: PathBuf },
}

impl CliArgs {
    pub fn into_request(self) -> Result<AnalysisRequest> {
        let command = match self.command {
            CliCommand::Density {
                source,
                partial,
                dump_monoid,
            } => AnalysisCommand::Density {
                source: source.resolve()?,
                partial,
                dump_monoid,
            },
            CliCommand::Classify {
                source,
                dump_monoid,
            } => AnalysisCommand::Classify {
                source: source.resolve()?,
                dump_monoid,
            },
            CliCommand::Measure {
                source,
                dump_monoid,
            } => AnalysisCommand::Measure {
                source: source.resolve()?,
                dump_monoid,
            },
            CliCommand::Approximate {
                source,
                levels,
                csv,
            } => AnalysisCommand::Approximate {
                source: source.resolve()?,
                levels,
                csv,
            },
            CliCommand::Independence {
                lhs,
                rhs,
                alphabet,
            } => AnalysisCommand::Independence {
                lhs: positional_source(&lhs, &alphabet)?,
                rhs: positional_source(&rhs, &alphabet)?,
            },
            CliCommand::Subvariety {
                language,
                class,
                alphabet,
            } => AnalysisCommand::Subvariety {
                source: positional_source(&language, &alphabet)?,
                class: class.parse()?,
            },
            CliCommand::DemoCounterexample => AnalysisCommand::DemoCounterexample,
            CliCommand::Oracle { source, max_len } => AnalysisCommand::Oracle {
                source: source.resolve()?,
                max_len,
            },
            CliCommand::EmitFixtures { directory } => {
                AnalysisCommand::EmitFixtures { directory }
            }
        };
        Ok(AnalysisRequest {
            command,
            seed: self.seed,
        })
    }
}

/// Execute a request; the returned string is the full report body.
pub fn run(request: &AnalysisRequest) -> Result<String> {
    match &request.command {
        AnalysisCommand::Density {
            source,
            partial,
            dump_monoid,
        } => {
            let d = source.load()?;
            let mut report = json!({ "density": format_rational(&density(&d)) });
            if let Some(horizon) = partial {
                let value = density_partial(&d, *horizon)?;
                report["partial"] = json!({
                    "horizon": horizon,
                    "value": format_rational(&value),
                });
            }
            if *dump_monoid {
                report["monoid"] = monoid_dump(&syntactic_monoid(&d)?)?;
            }
            Ok(report.to_string())
        }
        AnalysisCommand::Classify {
            source,
            dump_monoid,
        } => {
            let d = source.load()?;
            let phi = syntactic_monoid(&d)?;
            let m = phi.monoid();
            let is_group = m.is_group();
            let nilpotency = if is_group { nilpotency_class(m)? } else { None };
            let derived = if is_group { derived_length(m)? } else { None };
            let decision = decide_sf_measurable(&d)?;
            let mut report = json!({
                "star_free": m.is_aperiodic(),
                "group": is_group,
                "commutative": m.is_commutative(),
                "nilpotency_class": nilpotency,
                "derived_length": derived,
                "density": format_rational(&density(&d)),
                "forbidden_word": forbidden_word(&d)?,
                "sf_measurable": decision.measurable,
            });
            if *dump_monoid {
                report["monoid"] = monoid_dump(&phi)?;
            }
            Ok(report.to_string())
        }
        AnalysisCommand::Measure {
            source,
            dump_monoid,
        } => {
            let d = source.load()?;
            let decision = decide_sf_measurable(&d)?;
            let certificate = decision
                .certificate
                .map(|c| json!({ "h_class": c.element_names }))
                .unwrap_or(Value::Null);
            let mut report = json!({
                "measurable": decision.measurable,
                "certificate": certificate,
                "density": format_rational(&density(&d)),
            });
            if *dump_monoid {
                report["monoid"] = monoid_dump(&syntactic_monoid(&d)?)?;
            }
            Ok(report.to_string())
        }
        AnalysisCommand::Approximate {
            source,
            levels,
            csv,
        } => {
            let d = source.load()?;
            let table = gap_table(&d, levels)?;
            if *csv {
                Ok(gap_table_csv(&table))
            } else {
                let rows: Vec<Value> = table
                    .iter()
                    .map(|r| {
                        json!({
                            "ell": r.level,
                            "inner_density": format_rational(&r.inner_density),
                            "outer_density": format_rational(&r.outer_density),
                            "gap": format_rational(&r.gap),
                            "inclusion_verified": r.inclusion_verified,
                        })
                    })
                    .collect();
                Ok(json!({ "levels": rows }).to_string())
            }
        }
        AnalysisCommand::Independence { lhs, rhs } => {
            let report = check_independence(&lhs.load()?, &rhs.load()?)?;
            Ok(json!({
                "lhs": format_rational(&report.lhs),
                "rhs": format_rational(&report.rhs),
                "equal": report.equal,
            })
            .to_string())
        }
        AnalysisCommand::Subvariety { source, class } => {
            let d = source.load()?;
            let measurable = subvariety_measurable(&d, *class)?;
            let phi = syntactic_monoid(&d)?;
            let m = phi.monoid();
            Ok(json!({
                "measurable": measurable,
                "certificate": {
                    "class": class.to_string(),
                    "group_order": m.size(),
                    "commutative": m.is_commutative(),
                    "nilpotency_class": nilpotency_class(m)?,
                    "derived_length": derived_length(m)?,
                },
                "density": format_rational(&density(&d)),
            })
            .to_string())
        }
        AnalysisCommand::DemoCounterexample => {
            let r = counterexample_report()?;
            let fibers: Vec<Value> = r
                .fiber_densities
                .iter()
                .map(|(name, value)| json!({ "element": name, "density": format_rational(value) }))
                .collect();
            Ok(json!({
                "monoid_size": r.monoid_size,
                "elements": r.elements,
                "relations_hold": r.relations_hold,
                "kernel": r.kernel,
                "h_class_e": r.h_class_e,
                "h_class_f": r.h_class_f,
                "kernel_r_class_count": r.kernel_r_class_count,
                "kernel_h_class_sizes": r.kernel_h_class_sizes,
                "sf_measurable": r.sf_measurable,
                "certificate_h_class": r.certificate_h_class,
                "fiber_densities": fibers,
                "identity_fiber_null": r.identity_fiber_null,
                "kernel_fiber_sum_one": r.kernel_fiber_sum_one,
                "kernel_fibers_positive": r.kernel_fibers_positive,
            })
            .to_string())
        }
        AnalysisCommand::Oracle { source, max_len } => {
            let d = source.load()?;
            let words = d.enumerate_words(*max_len)?;
            Ok(json!({
                "max_len": max_len,
                "count": words.len(),
                "words": words,
            })
            .to_string())
        }
        AnalysisCommand::EmitFixtures { directory } => {
            let written = emit_fixtures(directory)?;
            Ok(json!({
                "directory": directory.display().to_string(),
                "written": written,
            })
            .to_string())
        }
    }
}

/// Gap-table CSV with rationals in `p/q` form.
fn gap_table_csv(table: &[SandwichReport]) -> String {
    let mut out = String::from("ell,inner_density,outer_density,gap,inclusion_verified\n");
    for r in table {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.level,
            format_rational(&r.inner_density),
            format_rational(&r.outer_density),
            format_rational(&r.gap),
            r.inclusion_verified,
        ));
    }
    out
}

/// JSON dump of a syntactic monoid: sizes, row-major table, letter map,
/// accepting set, Green classes and kernel, all in canonical element order.
fn monoid_dump(phi: &RecognizingMorphism) -> Result<Value> {
    let m = phi.monoid();
    let table = m.table(1000)?;
    let green = green_structure(m);
    let classes = |p: &crate::monoid::GreenStructure, which: char| -> Vec<Vec<usize>> {
        let partition = match which {
            'r' => p.r(),
            'l' => p.l(),
            'j' => p.j(),
            _ => p.h(),
        };
        partition.classes().to_vec()
    };
    let letter_map: serde_json::Map<String, Value> = phi
        .alphabet()
        .symbols()
        .iter()
        .zip(phi.letter_map())
        .map(|(c, &e)| (c.to_string(), json!(e)))
        .collect();
    Ok(json!({
        "size": m.size(),
        "identity": m.identity(),
        "table": table,
        "letter_map": letter_map,
        "accepting": phi.accepting().iter().collect::<Vec<_>>(),
        "green": {
            "r": classes(&green, 'r'),
            "l": classes(&green, 'l'),
            "j": classes(&green, 'j'),
            "h": classes(&green, 'h'),
        },
        "kernel": green.kernel().iter().collect::<Vec<_>>(),
    }))
}

const FIXTURE_NOTES: &[(&str, &str)] = &[
    ("parity", "words with |w|_a = |w|_b modulo 2"),
    ("mod3", "words with |w|_a = |w|_b modulo 3"),
    ("mod4", "words with |w|_a = |w|_b modulo 4"),
    ("mod5", "words with |w|_a = |w|_b modulo 5"),
    ("contains_ab", "words containing the factor ab"),
    ("starts_ab", "words starting with ab"),
    ("ba_star", "the language (ba)*"),
    (
        "counterexample_e",
        "fiber of e in the two-idempotent transformation monoid on four points",
    ),
    ("wp_z6", "word problem of the cyclic group of order 6"),
    ("wp_s3", "word problem of the symmetric group on three points"),
    ("wp_d8", "word problem of the dihedral group of order 8"),
    ("wp_d16", "word problem of the dihedral group of order 16"),
];

/// Write every fixture DFA under `directory`; returns the file names.
/// Deterministic: re-running writes byte-identical files.
pub fn emit_fixtures(directory: &Path) -> Result<Vec<String>> {
    std::fs::create_dir_all(directory)?;
    let mut written = Vec::new();
    for (stem, dfa) in fixtures::all()? {
        let note = FIXTURE_NOTES
            .iter()
            .find(|(s, _)| *s == stem)
            .map(|(_, n)| *n)
            .unwrap_or("");
        let file = format!("{stem}.dfa");
        let body = format!("# {stem}: {note}\n{}", serialize_dfa(&dfa));
        std::fs::write(directory.join(&file), body)?;
        written.push(file);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn regex_source(pattern: &str) -> LanguageSource {
        LanguageSource::Regex {
            pattern: pattern.to_string(),
            alphabet: "ab".to_string(),
        }
    }

    #[test]
    fn density_report_for_co_null_language() {
        let req = AnalysisRequest {
            command: AnalysisCommand::Density {
                source: regex_source("(a|b)*ab(a|b)*"),
                partial: None,
                dump_monoid: false,
            },
            seed: 0,
        };
        assert_eq!(run(&req).unwrap(), r#"{"density":"1/1"}"#);
    }

    #[test]
    fn density_report_for_empty_language() {
        let req = AnalysisRequest {
            command: AnalysisCommand::Density {
                source: regex_source("#"),
                partial: None,
                dump_monoid: false,
            },
            seed: 0,
        };
        assert_eq!(run(&req).unwrap(), r#"{"density":"0/1"}"#);
    }

    #[test]
    fn regex_sources_require_alphabet() {
        let args = CliArgs::try_parse_from(["regmeasure", "density", "--regex", "a"]).unwrap();
        assert!(args.into_request().is_err());
    }
}
