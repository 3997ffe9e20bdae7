//! Text and JSON renderings of engine results.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::alcove::{AlcoveData, CartanPoint, MarkedVerdict};
use crate::catalog::{L0Result, LevelCheck, Provenance};
use crate::hopf::AxiomReport;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BreakdownRow {
    pub prime: u64,
    pub order: u64,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct L0Report {
    pub group: String,
    pub l0: u64,
    pub breakdown: Vec<BreakdownRow>,
    pub citations: Vec<String>,
}

fn short_tag(p: &Provenance) -> &'static str {
    match p {
        Provenance::Computed => "computed",
        Provenance::Pinned(_) => "pinned",
        Provenance::TorFormula => "tor-formula",
    }
}

impl L0Report {
    pub fn new(r: &L0Result) -> Self {
        L0Report {
            group: r.group.to_string(),
            l0: r.value,
            breakdown: r
                .breakdown
                .iter()
                .map(|b| BreakdownRow { prime: b.prime, order: b.order, provenance: b.provenance.to_string() })
                .collect(),
            citations: r.citations(),
        }
    }

    /// `l0 = 6  [p=2: 2 (pinned), p=3: 3 (computed)]` followed by one
    /// provenance line per pinned prime.
    pub fn text(r: &L0Result) -> String {
        let parts: Vec<String> = r
            .breakdown
            .iter()
            .map(|b| format!("p={}: {} ({})", b.prime, b.order, short_tag(&b.provenance)))
            .collect();
        let mut out = format!("l0 = {}  [{}]", r.value, parts.join(", "));
        for b in &r.breakdown {
            if let Provenance::Pinned(_) = b.provenance {
                out.push_str(&format!("\n  p={} provenance: {}", b.prime, b.provenance));
            }
        }
        out
    }
}

pub fn table_text(rows: &[L0Result]) -> String {
    let width = rows.iter().map(|r| r.group.to_string().len()).max().unwrap_or(0);
    rows.iter()
        .map(|r| {
            let text = L0Report::text(r).replace('\n', &format!("\n{:width$}  ", ""));
            format!("{:width$}  {}", r.group.to_string(), text)
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelReport {
    pub group: String,
    pub level: u64,
    pub genus: u64,
    pub l0: u64,
    pub admits: bool,
    pub explanation: String,
}

impl LevelReport {
    pub fn new(group: &str, c: &LevelCheck) -> Self {
        LevelReport {
            group: group.to_string(),
            level: c.level,
            genus: c.genus,
            l0: c.l0,
            admits: c.admits,
            explanation: c.explanation.clone(),
        }
    }

    pub fn text(c: &LevelCheck) -> String {
        let relation = if c.admits { "divides" } else { "does not divide" };
        format!("{} (l0 = {} {relation} {})", if c.admits { "YES" } else { "NO" }, c.l0, c.level)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PhiStarReport {
    pub group: String,
    pub prime: u64,
    pub class: String,
    pub phi_star: String,
    pub provenance: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomFailureRow {
    pub axiom: String,
    pub subject: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct HopfReport {
    pub group: String,
    pub prime: u64,
    pub max_degree: u32,
    pub checks: BTreeMap<String, usize>,
    pub failures: Vec<AxiomFailureRow>,
    pub passed: bool,
}

impl HopfReport {
    pub fn new(group: &str, prime: u64, max_degree: u32, r: &AxiomReport) -> Self {
        HopfReport {
            group: group.to_string(),
            prime,
            max_degree,
            checks: r.checked.iter().map(|(a, n)| (a.name().to_string(), *n)).collect(),
            failures: r
                .failures
                .iter()
                .map(|f| AxiomFailureRow { axiom: f.axiom.name().into(), subject: f.subject.clone() })
                .collect(),
            passed: r.passed(),
        }
    }

    pub fn text(&self) -> String {
        let total: usize = self.checks.values().sum();
        let mut out = format!(
            "{} at p={} through degree {}: {} checks, {} failures",
            self.group,
            self.prime,
            self.max_degree,
            total,
            self.failures.len()
        );
        for (axiom, n) in &self.checks {
            out.push_str(&format!("\n  {axiom}: {n}"));
        }
        for f in &self.failures {
            out.push_str(&format!("\n  FAILED {} on {}", f.axiom, f.subject));
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MarkedReport {
    pub n: usize,
    pub level: u64,
    pub verdict: String,
    pub reasons: Vec<String>,
}

impl MarkedReport {
    pub fn new(n: usize, level: u64, v: &MarkedVerdict) -> Self {
        MarkedReport { n, level, verdict: v.verdict.to_string(), reasons: v.reasons.clone() }
    }

    pub fn text(&self) -> String {
        let head = match self.verdict.as_str() {
            "OPEN" => "OPEN (necessary condition met, sufficiency not established)".to_string(),
            v => v.to_string(),
        };
        let mut out = head;
        for r in &self.reasons {
            out.push_str(&format!("\n  {r}"));
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AlcoveReport {
    pub n: usize,
    pub vertices: Vec<Vec<String>>,
    pub barycenter: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced: Option<Vec<String>>,
}

fn coords(p: &CartanPoint) -> Vec<String> {
    p.coords().iter().map(ToString::to_string).collect()
}

impl AlcoveReport {
    pub fn new(data: &AlcoveData, reduced: Option<&CartanPoint>) -> Self {
        AlcoveReport {
            n: data.n,
            vertices: data.vertices.iter().map(coords).collect(),
            barycenter: coords(&data.barycenter),
            reduced: reduced.map(coords),
        }
    }

    pub fn text(&self) -> String {
        let fmt = |v: &Vec<String>| format!("({})", v.join(", "));
        if let Some(r) = &self.reduced {
            return fmt(r);
        }
        let mut out = Vec::new();
        for (k, v) in self.vertices.iter().enumerate() {
            out.push(format!("v{k} = {}", fmt(v)));
        }
        out.push(format!("barycenter = {}", fmt(&self.barycenter)));
        out.join("\n")
    }
}
