//! Report structures and rendering.
//!
//! Every command produces one report value that serializes to a stable JSON
//! document (field order fixed by declaration) and renders as a plain text
//! table. Hyperplanes are labelled `H1..Hd` in input order; `H0` is the
//! hyperplane at infinity of the projective closure.

use serde::Serialize;
use signcoh::{AbelianGroup, DenseEdgeReport, Flat};

/// Output format selector shared by all commands.
#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

pub trait Report: Serialize {
    fn render_text(&self) -> String;

    fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
        }
    }
}

#[derive(Serialize)]
pub struct FlatEntry {
    /// 1-based input indices of the hyperplanes through the flat.
    pub hyperplanes: Vec<usize>,
    pub codim: usize,
    pub dim: usize,
    pub mobius: i64,
}

#[derive(Serialize)]
pub struct PosetReport {
    pub command: &'static str,
    pub dimension: usize,
    pub flat_count: usize,
    pub flats: Vec<FlatEntry>,
}

impl Report for PosetReport {
    fn render_text(&self) -> String {
        let mut out = format!(
            "intersection poset: {} flats in dimension {}\n",
            self.flat_count, self.dimension
        );
        out.push_str("codim  dim  mobius  hyperplanes\n");
        for f in &self.flats {
            let label = if f.hyperplanes.is_empty() {
                "(ambient)".to_string()
            } else {
                f.hyperplanes
                    .iter()
                    .map(|i| format!("H{i}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            out.push_str(&format!(
                "{:<5}  {:<3}  {:<+6}  {}\n",
                f.codim, f.dim, f.mobius, label
            ));
        }
        out
    }
}

#[derive(Serialize)]
pub struct BettiReport {
    pub command: &'static str,
    pub dimension: usize,
    pub hyperplanes: usize,
    pub betti: Vec<usize>,
    pub beta: Vec<usize>,
}

impl Report for BettiReport {
    fn render_text(&self) -> String {
        format!(
            "betti numbers b_i:           {:?}\nalternating partial sums β_i: {:?}\n",
            self.betti, self.beta
        )
    }
}

/// A dense edge of the projective closure. Indices use the report
/// convention: 0 is the hyperplane at infinity, 1..d are the input
/// hyperplanes.
#[derive(Serialize, Clone)]
pub struct DenseEdgeEntry {
    pub hyperplanes: Vec<usize>,
    /// Dimension of the edge inside projective space.
    pub projective_dim: usize,
    pub at_infinity: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_value: Option<i8>,
}

impl DenseEdgeEntry {
    pub fn from_report(report: &DenseEdgeReport, infinity_index: usize) -> Self {
        Self {
            hyperplanes: projective_labels(&report.edge, infinity_index),
            projective_dim: report.edge.subspace.dim() - 1,
            at_infinity: report.at_infinity,
            t_value: report.t_value.map(|s| s.to_i8()),
        }
    }

    fn label(&self) -> String {
        self.hyperplanes
            .iter()
            .map(|i| format!("H{i}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Maps cone-coordinate hyperplane indices to report labels: the infinity
/// index becomes 0, every input hyperplane shifts to its 1-based position.
pub fn projective_labels(edge: &Flat, infinity_index: usize) -> Vec<usize> {
    let mut labels: Vec<usize> = edge
        .hyperplanes
        .iter()
        .map(|&i| if i == infinity_index { 0 } else { i + 1 })
        .collect();
    labels.sort_unstable();
    labels
}

#[derive(Serialize)]
pub struct DenseEdgesReport {
    pub command: &'static str,
    pub include_finite: bool,
    pub edges: Vec<DenseEdgeEntry>,
}

impl Report for DenseEdgesReport {
    fn render_text(&self) -> String {
        let mut out = format!("dense edges: {}\n", self.edges.len());
        out.push_str("at-infinity  proj-dim  t_X   hyperplanes\n");
        for e in &self.edges {
            let t = e.t_value.map_or("  . ".to_string(), |v| format!("{v:+4}"));
            out.push_str(&format!(
                "{:<11}  {:<8}  {}  {}\n",
                e.at_infinity,
                e.projective_dim,
                t,
                e.label()
            ));
        }
        out
    }
}

#[derive(Serialize)]
pub struct CdoReport {
    pub command: &'static str,
    pub signs: Vec<i8>,
    pub t0: i8,
    pub passes: bool,
    pub violations: Vec<DenseEdgeEntry>,
}

impl Report for CdoReport {
    fn render_text(&self) -> String {
        let mut out = format!(
            "signs: {:?}  (t0 = {:+})\nCDO condition: {}\n",
            self.signs,
            self.t0,
            if self.passes { "satisfied" } else { "VIOLATED" }
        );
        for v in &self.violations {
            out.push_str(&format!("  violating dense edge: {} (t_X = +1)\n", v.label()));
        }
        out
    }
}

#[derive(Serialize, Clone, PartialEq, Eq, Debug)]
pub struct GroupEntry {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl GroupEntry {
    pub fn from_group(g: &AbelianGroup) -> Self {
        Self {
            rank: g.rank,
            torsion: g
                .torsion
                .iter()
                .map(|d| u64::try_from(d).expect("invariant factor fits in u64"))
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct ProfileEntry {
    pub method: &'static str,
    pub groups: Vec<GroupEntry>,
    /// Human-readable forms of the groups, degree by degree.
    pub display: Vec<String>,
}

impl ProfileEntry {
    pub fn new(method: &'static str, groups: &[AbelianGroup]) -> Self {
        Self {
            method,
            groups: groups.iter().map(GroupEntry::from_group).collect(),
            display: groups.iter().map(|g| g.to_string()).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct CohomologyReport {
    pub command: &'static str,
    pub method: String,
    pub signs: Vec<i8>,
    pub cdo_passes: bool,
    /// False when `--force` pushed past a failing CDO gate: the reported
    /// closed-form value is then not asserted.
    pub asserted: bool,
    pub profiles: Vec<ProfileEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreement: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<DenseEdgeEntry>,
}

impl Report for CohomologyReport {
    fn render_text(&self) -> String {
        let mut out = format!("signs: {:?}\n", self.signs);
        out.push_str(&format!(
            "CDO condition: {}\n",
            if self.cdo_passes { "satisfied" } else { "violated" }
        ));
        for v in &self.violations {
            out.push_str(&format!("  violating dense edge: {} (t_X = +1)\n", v.label()));
        }
        for profile in &self.profiles {
            out.push_str(&format!("[{}]\n", profile.method));
            for (i, text) in profile.display.iter().enumerate() {
                out.push_str(&format!("  H^{i} = {text}\n"));
            }
        }
        if !self.asserted {
            out.push_str("NOT ASSERTED BY THEOREM: the CDO condition fails, the closed form is printed for reference only\n");
        }
        if let Some(agree) = self.agreement {
            out.push_str(&format!(
                "pipelines {}\n",
                if agree { "AGREE" } else { "DISAGREE" }
            ));
        }
        out
    }
}

#[derive(Serialize)]
pub struct FuzzTrial {
    pub signs: Vec<i8>,
    pub cdo: bool,
    /// "match", "mismatch", "oracle-ok" or "invariant-failure".
    pub outcome: &'static str,
}

#[derive(Serialize)]
pub struct FuzzReport {
    pub command: &'static str,
    pub seed: u64,
    pub count: u32,
    pub trials: Vec<FuzzTrial>,
    pub cdo_passing: usize,
    pub matches: usize,
    pub mismatches: usize,
    pub invariant_failures: usize,
}

impl Report for FuzzReport {
    fn render_text(&self) -> String {
        let mut out = format!("fuzz: {} trials, seed {}\n", self.count, self.seed);
        for t in &self.trials {
            out.push_str(&format!(
                "  signs {:?}  cdo={}  {}\n",
                t.signs,
                if t.cdo { "yes" } else { "no " },
                t.outcome
            ));
        }
        out.push_str(&format!(
            "summary: {} cdo-passing, {} matches, {} mismatches, {} invariant failures\n",
            self.cdo_passing, self.matches, self.mismatches, self.invariant_failures
        ));
        out
    }
}
