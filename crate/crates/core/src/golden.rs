//! Bundled reference data for `n = 2`: the Hasse diagram of `R'_4` and the
//! exotic Robinson–Schensted table, with SHA-256 checksums of the transcriptions.

use std::collections::{BTreeMap, BTreeSet};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::orbit::OrbitParam;
use crate::partition::{Bipartition, Partition};

pub const TABLE1_HASSE: &str = include_str!("../data/table1_hasse.txt");
pub const TABLE2_CSV: &str = include_str!("../data/table2.csv");

pub const TABLE1_SHA256: &str = "2e4bd2ec307947213c1d2f7e8c079dba48273fb98671efe44053c8d8bdf405d9";
pub const TABLE2_SHA256: &str = "313f20e0b7b3a062ff853f29ce8ff63996607e1b026f49af6e6984e21cc2efe7";

pub fn sha256_hex(data: &[u8]) -> String {
    hex::encode(Sha256::digest(data))
}

/// Both bundled files still hash to their recorded checksums.
pub fn transcription_ok() -> bool {
    sha256_hex(TABLE1_HASSE.as_bytes()) == TABLE1_SHA256 && sha256_hex(TABLE2_CSV.as_bytes()) == TABLE2_SHA256
}

/// A finite poset given by its covering relations.
#[derive(Debug, Clone)]
pub struct HassePoset {
    nodes: BTreeSet<OrbitParam>,
    /// upper -> lower covers
    covers: BTreeMap<OrbitParam, BTreeSet<OrbitParam>>,
}

impl HassePoset {
    pub fn from_covers(edges: &[(OrbitParam, OrbitParam)]) -> Self {
        let mut nodes = BTreeSet::new();
        let mut covers: BTreeMap<OrbitParam, BTreeSet<OrbitParam>> = BTreeMap::new();
        for (hi, lo) in edges {
            nodes.insert(hi.clone());
            nodes.insert(lo.clone());
            covers.entry(hi.clone()).or_default().insert(lo.clone());
        }
        HassePoset { nodes, covers }
    }

    pub fn nodes(&self) -> &BTreeSet<OrbitParam> {
        &self.nodes
    }

    /// Covering pairs `(upper, lower)` in canonical order.
    pub fn edges(&self) -> Vec<(OrbitParam, OrbitParam)> {
        self.covers
            .iter()
            .flat_map(|(hi, los)| los.iter().map(move |lo| (hi.clone(), lo.clone())))
            .collect()
    }

    pub fn lower_covers(&self, p: &OrbitParam) -> Vec<OrbitParam> {
        self.covers
            .get(p)
            .map(|s| s.iter().cloned().collect())
            .unwrap_or_default()
    }

    /// Everything at or below `p`.
    pub fn down_set(&self, p: &OrbitParam) -> BTreeSet<OrbitParam> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![p.clone()];
        while let Some(q) = stack.pop() {
            if seen.insert(q.clone()) {
                stack.extend(self.lower_covers(&q));
            }
        }
        seen
    }

    pub fn leq(&self, a: &OrbitParam, b: &OrbitParam) -> bool {
        self.down_set(b).contains(a)
    }

    pub fn maximal(&self) -> Vec<OrbitParam> {
        let covered: BTreeSet<_> = self.covers.values().flatten().collect();
        self.nodes.iter().filter(|p| !covered.contains(p)).cloned().collect()
    }

    pub fn minimal(&self) -> Vec<OrbitParam> {
        self.nodes
            .iter()
            .filter(|p| self.covers.get(*p).is_none_or(BTreeSet::is_empty))
            .cloned()
            .collect()
    }
}

/// The bundled Hasse diagram of `R'_4`.
pub fn table1_fixture() -> HassePoset {
    let edges: Vec<_> = TABLE1_HASSE
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (hi, lo) = l.split_once(' ').expect("two fields per line");
            (
                hi.parse().expect("valid parameter"),
                lo.trim().parse().expect("valid parameter"),
            )
        })
        .collect();
    HassePoset::from_covers(&edges)
}

/// One row of the bundled `n = 2` correspondence table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table2Row {
    pub param: OrbitParam,
    pub bp: Bipartition,
    pub descents: BTreeSet<usize>,
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.parse().map_err(|_| Error::Parse {
                input: s.to_string(),
                reason: "expected comma-separated integers".into(),
            })
        })
        .collect()
}

/// Formats a list as the table cells do: `2,1`, or empty.
pub fn format_list<I: IntoIterator<Item = usize>>(items: I) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn table2_rows() -> Result<Vec<Table2Row>> {
    let mut reader = csv::Reader::from_reader(TABLE2_CSV.as_bytes());
    let mut rows = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| Error::Parse {
            input: "table2.csv".into(),
            reason: e.to_string(),
        })?;
        let param: OrbitParam = rec[0].parse()?;
        let mu = Partition::new(parse_list(&rec[1])?)?;
        let nu = Partition::new(parse_list(&rec[2])?)?;
        let descents = parse_list(&rec[3])?.into_iter().collect();
        rows.push(Table2Row {
            param,
            bp: Bipartition::new(mu, nu),
            descents,
        });
    }
    Ok(rows)
}
