//! Command dispatch and exit-code policy.
//!
//! Exit codes: 0 success, 1 parse/validation error, 2 CDO failure (from
//! `cdo-check`, or from `cohomology --method theorem|both` without
//! `--force`), 3 disagreement between the closed form and the oracle on a
//! CDO-passing input, 4 oracle requested for an input outside its supported
//! scale.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use signcoh::{
    build_salvetti, cdo_check, dense_edges, enumerate_faces, lemma_central_cohomology,
    oracle_cohomology, theorem_formula, twisted_coboundaries, Arrangement, IntersectionPoset,
    Sign, SignLocalSystem,
};

use crate::document::{parse_signs_flag, ArrangementDocument};
use crate::output::{
    BettiReport, CdoReport, CohomologyReport, DenseEdgeEntry, DenseEdgesReport, FlatEntry,
    Format, FuzzReport, FuzzTrial, PosetReport, ProfileEntry, Report,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_CDO: u8 = 2;
pub const EXIT_MISMATCH: u8 = 3;
pub const EXIT_ORACLE_UNAVAILABLE: u8 = 4;

/// The oracle builds a cell complex over all faces of the real
/// stratification; past this scale the CLI declines rather than grinding.
const ORACLE_MAX_HYPERPLANES: usize = 12;
const ORACLE_MAX_DIMENSION: usize = 4;

#[derive(Parser)]
#[command(
    name = "signcoh",
    version,
    about = "Cohomology of rank-one sign local systems on hyperplane arrangement complements"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum MethodArg {
    /// Combinatorial closed form, gated on the CDO condition.
    Theorem,
    /// Hopf identification for central arrangements with total monodromy -1.
    Lemma,
    /// Salvetti complex with integral Smith reduction.
    Oracle,
    /// Run theorem and oracle and compare them.
    Both,
}

#[derive(Subcommand)]
pub enum Command {
    /// Print the intersection poset with Möbius values.
    Poset {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print Betti numbers and their alternating partial sums.
    Betti {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List dense edges of the projective closure lying at infinity.
    DenseEdges {
        input: PathBuf,
        /// Also list dense edges not contained in the hyperplane at infinity.
        #[arg(long)]
        all: bool,
        /// Monodromy signs, e.g. "-1,1,1"; fills in the t_X column.
        #[arg(long)]
        signs: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check the CDO condition for a sign local system.
    CdoCheck {
        input: PathBuf,
        /// Monodromy signs, overriding the document's local_system.
        #[arg(long)]
        signs: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compute the twisted cohomology of the complement.
    Cohomology {
        input: PathBuf,
        #[arg(long, value_enum)]
        method: MethodArg,
        /// Monodromy signs, overriding the document's local_system.
        #[arg(long)]
        signs: Option<String>,
        /// Print the closed form even when the CDO condition fails.
        #[arg(long)]
        force: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compare the two pipelines on random sign systems.
    Fuzz {
        input: PathBuf,
        #[arg(long, default_value_t = 16)]
        count: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INPUT,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            EXIT_INPUT
        }
    }
}

fn dispatch(command: Command) -> Result<u8, String> {
    match command {
        Command::Poset { input, format } => poset_command(&input, format),
        Command::Betti { input, format } => betti_command(&input, format),
        Command::DenseEdges { input, all, signs, format } => {
            dense_edges_command(&input, all, signs.as_deref(), format)
        }
        Command::CdoCheck { input, signs, format } => {
            cdo_command(&input, signs.as_deref(), format)
        }
        Command::Cohomology { input, method, signs, force, format } => {
            cohomology_command(&input, method, signs.as_deref(), force, format)
        }
        Command::Fuzz { input, count, seed, format } => {
            fuzz_command(&input, count, seed, format)
        }
    }
}

fn load(path: &Path) -> Result<(ArrangementDocument, Arrangement), String> {
    let doc = ArrangementDocument::from_path(path).map_err(|e| e.to_string())?;
    let arrangement = doc.to_arrangement().map_err(|e| e.to_string())?;
    Ok((doc, arrangement))
}

/// The signs from `--signs` when given, else the document's local_system.
fn resolve_signs(
    doc: &ArrangementDocument,
    arrangement: &Arrangement,
    flag: Option<&str>,
) -> Result<Option<SignLocalSystem>, String> {
    if let Some(text) = flag {
        return parse_signs_flag(text, arrangement.num_hyperplanes())
            .map(Some)
            .map_err(|e| e.to_string());
    }
    doc.local_system().map_err(|e| e.to_string())
}

fn require_signs(
    doc: &ArrangementDocument,
    arrangement: &Arrangement,
    flag: Option<&str>,
) -> Result<SignLocalSystem, String> {
    resolve_signs(doc, arrangement, flag)?.ok_or_else(|| {
        "no local system: pass --signs or add \"local_system\" to the document".to_string()
    })
}

fn signs_as_i8(ls: &SignLocalSystem) -> Vec<i8> {
    ls.signs().iter().map(|s| s.to_i8()).collect()
}

fn poset_command(input: &Path, format: Format) -> Result<u8, String> {
    let (_, arrangement) = load(input)?;
    let poset = IntersectionPoset::build(&arrangement);
    let flats = poset
        .flats()
        .iter()
        .enumerate()
        .map(|(i, f)| FlatEntry {
            hyperplanes: f.hyperplanes.iter().map(|&h| h + 1).collect(),
            codim: f.codim,
            dim: f.subspace.dim(),
            mobius: poset.mobius(i),
        })
        .collect::<Vec<_>>();
    let report = PosetReport {
        command: "poset",
        dimension: arrangement.dimension(),
        flat_count: flats.len(),
        flats,
    };
    print!("{}", report.render(format));
    Ok(EXIT_OK)
}

fn betti_command(input: &Path, format: Format) -> Result<u8, String> {
    let (_, arrangement) = load(input)?;
    let poset = IntersectionPoset::build(&arrangement);
    let betti = poset.betti_numbers();
    let beta = signcoh::beta_sequence(&betti);
    let report = BettiReport {
        command: "betti",
        dimension: arrangement.dimension(),
        hyperplanes: arrangement.num_hyperplanes(),
        betti,
        beta,
    };
    print!("{}", report.render(format));
    Ok(EXIT_OK)
}

fn dense_edges_command(
    input: &Path,
    all: bool,
    signs: Option<&str>,
    format: Format,
) -> Result<u8, String> {
    let (doc, arrangement) = load(input)?;
    let ls = resolve_signs(&doc, &arrangement, signs)?;
    let infinity_index = arrangement.num_hyperplanes();
    let mut edges = dense_edges(&arrangement, all);
    if let Some(ls) = &ls {
        for edge in edges.iter_mut() {
            edge.t_value = Some(signcoh::edge_monodromy(&edge.edge, ls, infinity_index));
        }
    }
    let report = DenseEdgesReport {
        command: "dense-edges",
        include_finite: all,
        edges: edges
            .iter()
            .map(|e| DenseEdgeEntry::from_report(e, infinity_index))
            .collect(),
    };
    print!("{}", report.render(format));
    Ok(EXIT_OK)
}

fn cdo_command(input: &Path, signs: Option<&str>, format: Format) -> Result<u8, String> {
    let (doc, arrangement) = load(input)?;
    let ls = require_signs(&doc, &arrangement, signs)?;
    let infinity_index = arrangement.num_hyperplanes();
    let outcome = cdo_check(&arrangement, &ls);
    let report = CdoReport {
        command: "cdo-check",
        signs: signs_as_i8(&ls),
        t0: ls.t0().to_i8(),
        passes: outcome.passes,
        violations: outcome
            .violations
            .iter()
            .map(|v| DenseEdgeEntry::from_report(v, infinity_index))
            .collect(),
    };
    print!("{}", report.render(format));
    Ok(if outcome.passes { EXIT_OK } else { EXIT_CDO })
}

fn oracle_in_scope(arrangement: &Arrangement) -> Result<(), String> {
    if arrangement.num_hyperplanes() > ORACLE_MAX_HYPERPLANES
        || arrangement.dimension() > ORACLE_MAX_DIMENSION
    {
        return Err(format!(
            "oracle unavailable: supports at most {ORACLE_MAX_HYPERPLANES} hyperplanes in dimension {ORACLE_MAX_DIMENSION}, got {} in dimension {}",
            arrangement.num_hyperplanes(),
            arrangement.dimension()
        ));
    }
    Ok(())
}

fn cohomology_command(
    input: &Path,
    method: MethodArg,
    signs: Option<&str>,
    force: bool,
    format: Format,
) -> Result<u8, String> {
    let (doc, arrangement) = load(input)?;
    let ls = require_signs(&doc, &arrangement, signs)?;
    let infinity_index = arrangement.num_hyperplanes();
    let outcome = cdo_check(&arrangement, &ls);
    let violations: Vec<DenseEdgeEntry> = outcome
        .violations
        .iter()
        .map(|v| DenseEdgeEntry::from_report(v, infinity_index))
        .collect();

    let gated = matches!(method, MethodArg::Theorem | MethodArg::Both);
    if gated && !outcome.passes && !force {
        let report = CohomologyReport {
            command: "cohomology",
            method: method_name(method).to_string(),
            signs: signs_as_i8(&ls),
            cdo_passes: false,
            asserted: false,
            profiles: Vec::new(),
            agreement: None,
            violations,
        };
        print!("{}", report.render(format));
        return Ok(EXIT_CDO);
    }

    let mut profiles = Vec::new();
    let mut agreement = None;
    match method {
        MethodArg::Theorem => {
            let profile = theorem_formula(&arrangement);
            profiles.push(ProfileEntry::new("theorem", &profile.groups));
        }
        MethodArg::Lemma => {
            let profile = lemma_central_cohomology(&arrangement, &ls).map_err(|e| e.to_string())?;
            profiles.push(ProfileEntry::new("lemma", &profile.groups));
        }
        MethodArg::Oracle => {
            if let Err(message) = oracle_in_scope(&arrangement) {
                eprintln!("error: {message}");
                return Ok(EXIT_ORACLE_UNAVAILABLE);
            }
            let profile = oracle_cohomology(&arrangement, &ls).map_err(|e| e.to_string())?;
            profiles.push(ProfileEntry::new("oracle", &profile.groups));
        }
        MethodArg::Both => {
            if let Err(message) = oracle_in_scope(&arrangement) {
                eprintln!("error: {message}");
                return Ok(EXIT_ORACLE_UNAVAILABLE);
            }
            let theorem = theorem_formula(&arrangement);
            let oracle = oracle_cohomology(&arrangement, &ls).map_err(|e| e.to_string())?;
            agreement = Some(theorem.groups == oracle.groups);
            profiles.push(ProfileEntry::new("theorem", &theorem.groups));
            profiles.push(ProfileEntry::new("oracle", &oracle.groups));
        }
    }

    let asserted = match method {
        MethodArg::Theorem | MethodArg::Both => outcome.passes,
        _ => true,
    };
    let report = CohomologyReport {
        command: "cohomology",
        method: method_name(method).to_string(),
        signs: signs_as_i8(&ls),
        cdo_passes: outcome.passes,
        asserted,
        profiles,
        agreement,
        violations,
    };
    print!("{}", report.render(format));

    if outcome.passes && agreement == Some(false) {
        return Ok(EXIT_MISMATCH);
    }
    Ok(EXIT_OK)
}

fn method_name(method: MethodArg) -> &'static str {
    match method {
        MethodArg::Theorem => "theorem",
        MethodArg::Lemma => "lemma",
        MethodArg::Oracle => "oracle",
        MethodArg::Both => "both",
    }
}

fn fuzz_command(input: &Path, count: u32, seed: u64, format: Format) -> Result<u8, String> {
    let (_, arrangement) = load(input)?;
    if let Err(message) = oracle_in_scope(&arrangement) {
        eprintln!("error: {message}");
        return Ok(EXIT_ORACLE_UNAVAILABLE);
    }
    let d = arrangement.num_hyperplanes();
    let poset = IntersectionPoset::build(&arrangement);
    let betti = poset.betti_numbers();
    let expected_euler: i64 = betti
        .iter()
        .enumerate()
        .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
        .sum();
    let faces = enumerate_faces(&arrangement);
    let cells = build_salvetti(&arrangement, &faces);

    let mut rng = SplitMix64::new(seed);
    let mut trials = Vec::with_capacity(count as usize);
    let (mut cdo_passing, mut matches, mut mismatches, mut invariant_failures) = (0, 0, 0, 0);
    for _ in 0..count {
        let signs: Vec<Sign> = (0..d)
            .map(|_| if rng.next() & 1 == 1 { Sign::Minus } else { Sign::Plus })
            .collect();
        let ls = SignLocalSystem::new(signs);
        let cdo = cdo_check(&arrangement, &ls).passes;
        let complex = twisted_coboundaries(&cells, &ls).map_err(|e| e.to_string())?;
        let outcome = if cdo {
            cdo_passing += 1;
            let oracle_groups = complex.all_cohomology().map_err(|e| e.to_string())?;
            if theorem_formula(&arrangement).groups == oracle_groups {
                matches += 1;
                "match"
            } else {
                mismatches += 1;
                "mismatch"
            }
        } else {
            let invariants_hold = complex.mod2_cohomology_dimensions() == betti
                && complex.euler_characteristic() == expected_euler;
            if invariants_hold {
                "oracle-ok"
            } else {
                invariant_failures += 1;
                "invariant-failure"
            }
        };
        trials.push(FuzzTrial { signs: signs_as_i8(&ls), cdo, outcome });
    }

    let report = FuzzReport {
        command: "fuzz",
        seed,
        count,
        trials,
        cdo_passing,
        matches,
        mismatches,
        invariant_failures,
    };
    print!("{}", report.render(format));
    Ok(if mismatches + invariant_failures > 0 { EXIT_MISMATCH } else { EXIT_OK })
}

/// Deterministic 64-bit generator (splitmix64), hand-rolled so fuzz output
/// is reproducible independent of any external crate's stream.
struct SplitMix64(u64);

impl SplitMix64 {
    fn new(seed: u64) -> Self {
        Self(seed)
    }

    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}
