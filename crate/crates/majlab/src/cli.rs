//! Command-line interface: plain-text formats for choice functions and
//! voter profiles, plus subcommands for classification, membership,
//! enumeration, synthesis, and verification.
//!
//! Choice function files (`.cff`):
//!
//! ```text
//! cff 1
//! candidates 3
//! beats 0 1     # winner first, loser second
//! beats 2 0
//! beats 1 2
//! ```
//!
//! Voter profile files (`.pff`):
//!
//! ```text
//! pff 1
//! candidates 3
//!
//! voter 2       # multiplicity, then the ballot's decided pairs
//! beats 0 1
//! ```
//!
//! `#` starts a comment; blank lines are ignored. Exit codes: 0 success,
//! 1 failed check (assertion, verification, target outside the closure),
//! 2 usage or parse error, 3 internal inconsistency.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use itertools::Itertools;
use num_traits::Signed;

use crate::choice::ChoiceFunction;
use crate::classify::{
    is_balanced, is_chaotic, is_pseudo_balanced, tiers, valence_imbalance_witness, winning_set,
    Category, SymmetricClass,
};
use crate::closure::{decide_fast, decide_lp, enumerate_closure, Certificate};
use crate::error::{Error, Result};
use crate::profile::VoterProfile;
use crate::synth::{synth_any, voter_bound};
use crate::{Int, Profile, MIN_CANDIDATES};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn content(raw: &str) -> &str {
    raw.split('#').next().unwrap_or("").trim()
}

/// Parse the choice function format.
pub fn parse_cff(text: &str) -> Result<ChoiceFunction> {
    let mut stage = 0u8;
    let mut n = 0usize;
    let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut last = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last = line_no;
        let line = content(raw);
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match (stage, tokens[0]) {
            (0, "cff") => {
                if tokens.len() != 2 || tokens[1] != "1" {
                    return Err(parse_err(line_no, "expected header `cff 1`"));
                }
                stage = 1;
            }
            (0, _) => return Err(parse_err(line_no, "expected header `cff 1`")),
            (1, "candidates") => {
                n = parse_candidates(&tokens, line_no)?;
                stage = 2;
            }
            (1, _) => return Err(parse_err(line_no, "expected `candidates <n>`")),
            (2, "beats") => edges.push(parse_beats(&tokens, line_no, n, &mut seen)?),
            (2, word) => {
                return Err(parse_err(line_no, format!("unknown directive `{}`", word)))
            }
            _ => unreachable!(),
        }
    }
    if stage != 2 {
        return Err(parse_err(last, "incomplete file: header and candidate count required"));
    }
    ChoiceFunction::from_edges(n, &edges)
}

fn parse_candidates(tokens: &[&str], line_no: usize) -> Result<usize> {
    if tokens.len() != 2 {
        return Err(parse_err(line_no, "expected `candidates <n>`"));
    }
    let n: usize = tokens[1]
        .parse()
        .map_err(|_| parse_err(line_no, "candidate count is not a number"))?;
    if n < MIN_CANDIDATES {
        return Err(parse_err(line_no, "at least three candidates are required"));
    }
    Ok(n)
}

fn parse_beats(
    tokens: &[&str],
    line_no: usize,
    n: usize,
    seen: &mut BTreeSet<(usize, usize)>,
) -> Result<(usize, usize)> {
    if tokens.len() != 3 {
        return Err(parse_err(line_no, "expected `beats <winner> <loser>`"));
    }
    let w: usize =
        tokens[1].parse().map_err(|_| parse_err(line_no, "winner is not a number"))?;
    let l: usize =
        tokens[2].parse().map_err(|_| parse_err(line_no, "loser is not a number"))?;
    if w >= n || l >= n {
        return Err(parse_err(line_no, format!("candidate out of range 0..{}", n)));
    }
    if w == l {
        return Err(parse_err(line_no, "a candidate cannot beat itself"));
    }
    if !seen.insert((w.min(l), w.max(l))) {
        return Err(parse_err(line_no, format!("duplicate pair {} {}", w.min(l), w.max(l))));
    }
    Ok((w, l))
}

/// Emit the choice function format, decided pairs in ascending pair order.
pub fn emit_cff(c: &ChoiceFunction) -> String {
    let mut out = format!("cff 1\ncandidates {}\n", c.n());
    for (w, l) in c.edges() {
        let _ = writeln!(out, "beats {} {}", w, l);
    }
    out
}

/// Parse the voter profile format.
pub fn parse_pff(text: &str) -> Result<Profile> {
    let mut stage = 0u8;
    let mut n = 0usize;
    let mut profile: Option<Profile> = None;
    let mut block: Option<(Int, Vec<(usize, usize)>, BTreeSet<(usize, usize)>)> = None;
    let mut last = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last = line_no;
        let line = content(raw);
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match (stage, tokens[0]) {
            (0, "pff") => {
                if tokens.len() != 2 || tokens[1] != "1" {
                    return Err(parse_err(line_no, "expected header `pff 1`"));
                }
                stage = 1;
            }
            (0, _) => return Err(parse_err(line_no, "expected header `pff 1`")),
            (1, "candidates") => {
                n = parse_candidates(&tokens, line_no)?;
                profile = Some(VoterProfile::new(n)?);
                stage = 2;
            }
            (1, _) => return Err(parse_err(line_no, "expected `candidates <n>`")),
            (2, "voter") => {
                if tokens.len() != 2 {
                    return Err(parse_err(line_no, "expected `voter <multiplicity>`"));
                }
                let mult = Int::from_str(tokens[1])
                    .map_err(|_| parse_err(line_no, "multiplicity is not a number"))?;
                if !mult.is_positive() {
                    return Err(parse_err(line_no, "multiplicity must be positive"));
                }
                flush_block(profile.as_mut().unwrap(), block.take(), n)?;
                block = Some((mult, Vec::new(), BTreeSet::new()));
            }
            (2, "beats") => match &mut block {
                Some((_, edges, seen)) => edges.push(parse_beats(&tokens, line_no, n, seen)?),
                None => {
                    return Err(parse_err(line_no, "`beats` before the first `voter` block"))
                }
            },
            (2, word) => {
                return Err(parse_err(line_no, format!("unknown directive `{}`", word)))
            }
            _ => unreachable!(),
        }
    }
    if stage != 2 {
        return Err(parse_err(last, "incomplete file: header and candidate count required"));
    }
    let mut profile = profile.unwrap();
    flush_block(&mut profile, block.take(), n)?;
    Ok(profile)
}

fn flush_block(
    profile: &mut Profile,
    block: Option<(Int, Vec<(usize, usize)>, BTreeSet<(usize, usize)>)>,
    n: usize,
) -> Result<()> {
    if let Some((mult, edges, _)) = block {
        profile.add(ChoiceFunction::from_edges(n, &edges)?, mult)?;
    }
    Ok(())
}

/// Emit the voter profile format, ballots in canonical order, duplicates
/// already merged by the profile itself.
pub fn emit_pff(p: &Profile) -> String {
    let mut out = format!("pff 1\ncandidates {}\n", p.n());
    for (c, m) in p.iter() {
        let _ = writeln!(out, "\nvoter {}", m);
        for (w, l) in c.edges() {
            let _ = writeln!(out, "beats {} {}", w, l);
        }
    }
    out
}

#[derive(Parser)]
#[command(
    name = "majlab",
    version,
    about = "Majority voting with abstention: classify ballot families, decide \
             realizable outcomes, synthesize electorates"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Fast,
    Lp,
    Both,
}

#[derive(Subcommand)]
enum Cmd {
    /// Report the structural properties of one choice function
    Classify {
        /// Choice function file (.cff)
        function: PathBuf,
    },
    /// Categorize the symmetric family generated by choice functions
    ClassifyClass {
        /// Generator files (.cff)
        #[arg(required = true)]
        generators: Vec<PathBuf>,
    },
    /// Decide whether a target outcome is realizable by the family
    Decide {
        /// Target outcome file (.cff)
        #[arg(long)]
        target: PathBuf,
        /// Generator files (.cff)
        #[arg(required = true)]
        generators: Vec<PathBuf>,
        /// Decision route; `both` cross-checks and fails on disagreement
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        /// Exit with status 1 unless the target is realizable
        #[arg(long)]
        assert_member: bool,
    },
    /// List every realizable outcome at small candidate counts
    Enumerate {
        /// Generator files (.cff)
        #[arg(required = true)]
        generators: Vec<PathBuf>,
        /// Re-decide each member by linear programming
        #[arg(long)]
        check_lp: bool,
    },
    /// Build an electorate whose majority outcome is the target
    Synthesize {
        /// Target outcome file (.cff)
        #[arg(long)]
        target: PathBuf,
        /// Generator files (.cff)
        #[arg(required = true)]
        generators: Vec<PathBuf>,
        /// Write the electorate to this profile file (.pff)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that a profile's majority outcome equals the target
    Verify {
        /// Voter profile file (.pff)
        #[arg(long)]
        profile: PathBuf,
        /// Target outcome file (.cff)
        #[arg(long)]
        target: PathBuf,
    },
    /// Print the electorate-size bounds for each family category
    Bounds {
        /// Number of candidates
        #[arg(long)]
        candidates: usize,
    },
    /// Built-in demonstrations
    Demo {
        #[command(subcommand)]
        which: DemoCmd,
    },
}

#[derive(Subcommand)]
enum DemoCmd {
    /// Three ranked ballots whose pairwise majority is a cycle
    Condorcet,
}

/// Run the interface; the returned code is the process exit status.
pub fn run() -> u8 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.exit_code() == 0 { 0 } else { 2 };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {}", err);
            match err {
                Error::Internal(_) => 3,
                Error::NotInClosure(_) => 1,
                _ => 2,
            }
        }
    }
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| parse_err(0, format!("{}: {}", path.display(), e)))
}

/// Prefix a parse error's message with the offending file, keeping its line.
fn with_path(e: Error, path: &Path) -> Error {
    match e {
        Error::Parse { line, msg } => {
            Error::Parse { line, msg: format!("{}: {}", path.display(), msg) }
        }
        other => other,
    }
}

fn read_function(path: &Path) -> Result<ChoiceFunction> {
    parse_cff(&read_text(path)?).map_err(|e| with_path(e, path))
}

fn load_class(paths: &[PathBuf]) -> Result<SymmetricClass> {
    let gens: Vec<ChoiceFunction> =
        paths.iter().map(|p| read_function(p)).collect::<Result<_>>()?;
    let n = gens[0].n();
    SymmetricClass::new(n, gens)
}

fn yn(v: bool) -> &'static str {
    if v {
        "yes"
    } else {
        "no"
    }
}

fn dispatch(cli: Cli) -> Result<u8> {
    match cli.command {
        Cmd::Classify { function } => {
            let c = read_function(&function)?;
            println!("candidates: {}", c.n());
            println!("decided pairs: {}", c.decided_pair_count());
            println!("valences: {}", c.valences().iter().join(" "));
            println!("balanced: {}", yn(is_balanced(&c)));
            println!("pseudo-balanced: {}", yn(is_pseudo_balanced(&c)));
            match tiers(&c) {
                Some(ts) => {
                    println!("tiered: yes");
                    println!(
                        "tiers: {}",
                        ts.iter().map(|t| format!("[{}]", t.iter().join(" "))).join(" ")
                    );
                }
                None => println!("tiered: no"),
            }
            match winning_set(&c) {
                Some(w) => {
                    println!("partisan: yes");
                    println!("winners: {}", w.iter().join(" "));
                }
                None => println!("partisan: no"),
            }
            if is_chaotic(&c) {
                println!("chaotic: yes");
                if let Some(wit) = valence_imbalance_witness::<Int>(&c) {
                    println!("imbalance: {}", wit.imbalance);
                }
            } else {
                println!("chaotic: no");
            }
            Ok(0)
        }
        Cmd::ClassifyClass { generators } => {
            let class = load_class(&generators)?;
            let verdict = class.classify();
            println!("candidates: {}", class.n());
            println!("generators: {}", class.generators().len());
            println!("category: {}", verdict.category);
            println!("reason: {}", verdict.reason);
            println!("stripping changed: {}", yn(verdict.stripping_changed));
            Ok(0)
        }
        Cmd::Decide { target, generators, method, assert_member } => {
            let class = load_class(&generators)?;
            let d = read_function(&target)?;
            println!("target: {}", d.canonical_key());
            let fast = if method != Method::Lp {
                let v = decide_fast::<Int>(&class, &d)?;
                println!("fast: {}", if v.member { "member" } else { "non-member" });
                Some(v.member)
            } else {
                None
            };
            let lp = if method != Method::Fast {
                let v = decide_lp::<Int>(&class, &d)?;
                println!("lp: {}", if v.member { "member" } else { "non-member" });
                if let Some(Certificate::Weights { delta, weights }) = &v.certificate {
                    println!("margin: {}", delta);
                    for (c, q) in weights {
                        println!("weight: {} {}", q, c.canonical_key());
                    }
                }
                Some(v.member)
            } else {
                None
            };
            if let (Some(f), Some(l)) = (fast, lp) {
                if f != l {
                    return Err(Error::Internal(
                        "routes disagree on membership".into(),
                    ));
                }
            }
            let member = fast.or(lp).unwrap();
            println!("member: {}", yn(member));
            Ok(if assert_member && !member { 1 } else { 0 })
        }
        Cmd::Enumerate { generators, check_lp } => {
            let class = load_class(&generators)?;
            let members = enumerate_closure::<Int>(&class, check_lp)?;
            for m in &members {
                println!("{}", m.canonical_key());
            }
            println!("members: {}", members.len());
            Ok(0)
        }
        Cmd::Synthesize { target, generators, out } => {
            let class = load_class(&generators)?;
            let d = read_function(&target)?;
            let report = synth_any::<Int>(&class, &d)?;
            println!("case: {}", report.case);
            println!("voters: {}", report.total_voters);
            println!("distinct ballots: {}", report.profile.distinct_count());
            println!("voter bound: {}", report.bound);
            println!("within bound: {}", yn(report.within_bound));
            if let Some(path) = out {
                std::fs::write(&path, emit_pff(&report.profile))
                    .map_err(|e| parse_err(0, format!("{}: {}", path.display(), e)))?;
                println!("wrote profile to {}", path.display());
            }
            Ok(0)
        }
        Cmd::Verify { profile, target } => {
            let p = parse_pff(&read_text(&profile)?).map_err(|e| with_path(e, &profile))?;
            let d = read_function(&target)?;
            if p.n() != d.n() {
                return Err(Error::CandidateCountMismatch { left: p.n(), right: d.n() });
            }
            let outcome = p.majority_outcome();
            println!("voters: {}", p.voter_count());
            println!("outcome: {}", outcome.canonical_key());
            println!("target: {}", d.canonical_key());
            let ok = outcome == d;
            println!("match: {}", yn(ok));
            Ok(if ok { 0 } else { 1 })
        }
        Cmd::Bounds { candidates } => {
            if candidates < MIN_CANDIDATES {
                return Err(parse_err(0, "at least three candidates are required"));
            }
            println!("candidates: {}", candidates);
            for category in [
                Category::Trivial,
                Category::Balanced,
                Category::Partisan,
                Category::Mixed,
                Category::Chaotic,
            ] {
                println!("{}: {}", category, voter_bound::<Int>(category, candidates));
            }
            Ok(0)
        }
        Cmd::Demo { which: DemoCmd::Condorcet } => {
            let rankings = [[0, 1, 2], [1, 2, 0], [2, 0, 1]];
            let mut profile = VoterProfile::<Int>::new(3)?;
            println!("three ballots rank three candidates cyclically:");
            for r in &rankings {
                println!("  {} > {} > {}", r[0], r[1], r[2]);
                profile.add(ChoiceFunction::linear_order(r)?, Int::from(1))?;
            }
            let tally = profile.tally();
            println!("pairwise margins:");
            for (x, y) in crate::choice::pairs(3) {
                println!("  {} over {}: {}", x, y, tally.get(x, y));
            }
            let outcome = profile.majority_outcome();
            let beaten = outcome
                .edges()
                .iter()
                .map(|(w, l)| format!("{} beats {}", w, l))
                .join(", ");
            println!("majority outcome: {}", beaten);
            println!("every candidate loses one pairwise vote; the majority is a cycle");
            Ok(0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cff_roundtrip_is_canonical() {
        let tri = ChoiceFunction::cycle(3, &[0, 1, 2]).unwrap();
        let text = emit_cff(&tri);
        assert_eq!(text, "cff 1\ncandidates 3\nbeats 0 1\nbeats 2 0\nbeats 1 2\n");
        assert_eq!(parse_cff(&text).unwrap(), tri);
    }

    #[test]
    fn cff_accepts_comments_and_blank_lines() {
        let text = "# a triangle\ncff 1\n\ncandidates 3  # three candidates\nbeats 0 1\nbeats 1 2\nbeats 2 0 # closing edge\n";
        let c = parse_cff(text).unwrap();
        assert_eq!(c, ChoiceFunction::cycle(3, &[0, 1, 2]).unwrap());
    }

    #[test]
    fn cff_reports_line_numbers() {
        let text = "cff 1\ncandidates 3\nbeats 0 1\nbeats 1 0\n";
        match parse_cff(text) {
            Err(Error::Parse { line, msg }) => {
                assert_eq!(line, 4);
                assert!(msg.contains("duplicate"));
            }
            other => panic!("expected parse error, got {:?}", other),
        }
        let text = "cff 1\ncandidates 3\nbeats 0 3\n";
        match parse_cff(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {:?}", other),
        }
        assert!(matches!(parse_cff("cff 2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_cff("cff 1\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn pff_roundtrip_merges_duplicates() {
        let text = "pff 1\ncandidates 3\n\nvoter 2\nbeats 0 1\n\nvoter 3\nbeats 0 1\n\nvoter 1\nbeats 1 0\n";
        let p = parse_pff(text).unwrap();
        assert_eq!(p.distinct_count(), 2);
        assert_eq!(p.voter_count(), Int::from(6));
        let emitted = emit_pff(&p);
        let back = parse_pff(&emitted).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn pff_rejects_bad_blocks() {
        assert!(matches!(
            parse_pff("pff 1\ncandidates 3\nbeats 0 1\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_pff("pff 1\ncandidates 3\nvoter 0\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_pff("pff 1\ncandidates 3\nvoter -2\nbeats 0 1\n"),
            Err(Error::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn pff_empty_ballot_block_is_allowed() {
        let text = "pff 1\ncandidates 3\n\nvoter 4\n";
        let p = parse_pff(text).unwrap();
        assert_eq!(p.voter_count(), Int::from(4));
        assert!(p.majority_outcome().is_empty());
    }
}
