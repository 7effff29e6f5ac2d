//! Shipped fixture files and the embedded table of expected values.

use std::sync::OnceLock;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use quditbell_core::quantum::MultiportPhases;
use quditbell_core::DeterministicStrategy;

use crate::error::{Error, Result};
use crate::formats::{parse_phases, parse_strategy};

const EXPECTED: &str = include_str!("../fixtures/expected.json");

const WITNESSES: [(usize, &str); 3] = [
    (7, include_str!("../fixtures/witness_d7.txt")),
    (11, include_str!("../fixtures/witness_d11.txt")),
    (13, include_str!("../fixtures/witness_d13.txt")),
];

const ZERO_FREE: [(usize, &str); 1] = [(5, include_str!("../fixtures/zero_free_d5.txt"))];

const MULTIPORT: [(usize, &str); 4] = [
    (5, include_str!("../fixtures/multiport_d5.txt")),
    (7, include_str!("../fixtures/multiport_d7.txt")),
    (11, include_str!("../fixtures/multiport_d11.txt")),
    (13, include_str!("../fixtures/multiport_d13.txt")),
];

/// Runtime budget class. Each class includes the cheaper ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Tier {
    Fast,
    Standard,
    LongRun,
}

impl Tier {
    pub fn as_str(&self) -> &'static str {
        match self {
            Tier::Fast => "fast",
            Tier::Standard => "standard",
            Tier::LongRun => "long-run",
        }
    }
}

impl std::str::FromStr for Tier {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        <Tier as ValueEnum>::from_str(s, true).map_err(|_| Error::Config(format!("unknown tier `{s}`")))
    }
}

/// Named groups of strategy fixtures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategySet {
    /// Best known strategies for d = 7, 11, 13.
    Witnesses,
    /// A strategy without winning cells for d = 5.
    ZeroFree,
}

impl StrategySet {
    pub fn entries(&self) -> Result<Vec<(&'static str, DeterministicStrategy)>> {
        let (tag, files): (&str, &[(usize, &str)]) = match self {
            StrategySet::Witnesses => ("witness", &WITNESSES),
            StrategySet::ZeroFree => ("zero_free", &ZERO_FREE),
        };
        files.iter().map(|(_, text)| Ok((tag, parse_strategy(text)?))).collect()
    }
}

pub fn witness(d: usize) -> Result<DeterministicStrategy> {
    let (_, text) = WITNESSES.iter().find(|(k, _)| *k == d).ok_or_else(|| Error::MissingFixture(format!("witness d = {d}")))?;
    parse_strategy(text)
}

pub fn multiport_phases(d: usize) -> Result<MultiportPhases> {
    let (_, text) = MULTIPORT.iter().find(|(k, _)| *k == d).ok_or_else(|| Error::MissingFixture(format!("multiport phases d = {d}")))?;
    parse_phases(text)
}

pub fn multiport_dimensions() -> Vec<usize> {
    MULTIPORT.iter().map(|(d, _)| *d).collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DeltaRow {
    pub d: usize,
    pub delta_lb: Option<usize>,
    pub delta_max: Option<usize>,
    pub exact_tier: Option<Tier>,
    pub source: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TightnessRow {
    pub d: usize,
    pub side: String,
    pub dimension: usize,
    pub rank: Option<usize>,
    pub verdict: Option<String>,
    pub tier: Tier,
    pub source: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuantumRow {
    pub d: usize,
    pub s_lhv: f64,
    pub s_mp: f64,
    pub s_povm: f64,
    pub s_lb: f64,
    pub s_ub: Option<f64>,
    pub seesaw_tier: Tier,
    pub source: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SchmidtRow {
    pub d: usize,
    pub coefficients: Vec<f64>,
    pub source: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Expected {
    pub version: u32,
    pub delta: Vec<DeltaRow>,
    pub tightness: Vec<TightnessRow>,
    pub quantum: Vec<QuantumRow>,
    pub schmidt: Vec<SchmidtRow>,
}

impl Expected {
    pub fn delta(&self, d: usize) -> Option<&DeltaRow> {
        self.delta.iter().find(|r| r.d == d)
    }

    /// Known `Δmax` for `d`.
    pub fn delta_max(&self, d: usize) -> Option<usize> {
        self.delta(d).and_then(|r| r.delta_max)
    }

    pub fn tightness(&self, d: usize, side: &str) -> Option<&TightnessRow> {
        self.tightness.iter().find(|r| r.d == d && r.side == side)
    }

    pub fn quantum(&self, d: usize) -> Option<&QuantumRow> {
        self.quantum.iter().find(|r| r.d == d)
    }

    pub fn schmidt(&self, d: usize) -> Option<&SchmidtRow> {
        self.schmidt.iter().find(|r| r.d == d)
    }
}

pub fn expected() -> &'static Expected {
    static CELL: OnceLock<Expected> = OnceLock::new();
    CELL.get_or_init(|| serde_json::from_str(EXPECTED).expect("embedded expected values parse"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_tables_parse() {
        let e = expected();
        assert_eq!(e.version, 1);
        assert_eq!(e.delta_max(11), Some(37));
        assert_eq!(e.delta(31).unwrap().delta_lb, Some(148));
        assert_eq!(e.tightness(3, "correlation").unwrap().rank, Some(6));
        assert_eq!(e.tightness(13, "probability").unwrap().rank, None);
        assert_eq!(e.quantum(5).unwrap().s_ub, Some(0.5578));
        assert_eq!(e.schmidt(13).unwrap().coefficients.len(), 13);
    }

    #[test]
    fn dimensions_in_tables_match_formulas() {
        use quditbell_core::polytope::polytope_dims;
        use quditbell_core::GameParams;
        for row in &expected().tightness {
            let (dp, dc) = polytope_dims(&GameParams::new(row.d).unwrap());
            let want = if row.side == "probability" { dp } else { dc };
            assert_eq!(row.dimension, want, "d={} {}", row.d, row.side);
        }
    }

    #[test]
    fn strategy_fixtures_load() {
        for d in [7, 11, 13] {
            assert_eq!(witness(d).unwrap().d(), d);
        }
        assert_eq!(StrategySet::ZeroFree.entries().unwrap()[0].1.zero_count(), 0);
        assert!(witness(9).is_err());
    }

    #[test]
    fn phase_fixtures_load() {
        for d in multiport_dimensions() {
            assert_eq!(multiport_phases(d).unwrap().d(), d);
        }
    }

    #[test]
    fn tiers_are_ordered() {
        assert!(Tier::Fast < Tier::Standard && Tier::Standard < Tier::LongRun);
        assert_eq!("long-run".parse::<Tier>().unwrap(), Tier::LongRun);
    }
}
