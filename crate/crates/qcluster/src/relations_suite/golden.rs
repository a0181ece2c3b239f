//! Bundled worked-example data. `QCLUSTER_GOLDEN_DIR` points at a directory
//! holding replacement `a1.json`, `a3.json`, `b3.json`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::labels::{bar, canonical, prime};
use crate::lie_data::{Rat, ReducedWord, WordSpec};
use crate::mutation_engine::{DilogFactor, Direction};
use crate::qtorus::{LatticeVector, Torus};
use crate::seed_quiver::ArrowStyle;

pub const GOLDEN_ENV: &str = "QCLUSTER_GOLDEN_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Example {
    A1,
    A3,
    B3,
}

impl Example {
    pub fn all() -> [Example; 3] {
        [Example::A1, Example::A3, Example::B3]
    }

    fn file(self) -> &'static str {
        match self {
            Example::A1 => "a1.json",
            Example::A3 => "a3.json",
            Example::B3 => "b3.json",
        }
    }

    fn bundled(self) -> &'static str {
        match self {
            Example::A1 => include_str!("../../golden/a1.json"),
            Example::A3 => include_str!("../../golden/a3.json"),
            Example::B3 => include_str!("../../golden/b3.json"),
        }
    }
}

impl fmt::Display for Example {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Example {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A1" => Ok(Example::A1),
            "A3" => Ok(Example::A3),
            "B3" => Ok(Example::B3),
            other => Err(Error::UnknownStrategy { kind: "example", name: other.to_string() }),
        }
    }
}

/// How a figure decorates the nodes of its second triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mark {
    /// Labels are plain node numbers.
    Plain,
    /// `k'` stands for `k̄`.
    Bar,
    /// `k'` is a primed node.
    Prime,
}

#[derive(Clone, Debug, Deserialize)]
pub struct GoldenFigure {
    pub caption: String,
    pub mark: Mark,
    /// Figure label to computed label, applied before decoding marks.
    #[serde(default)]
    pub relabel: BTreeMap<String, String>,
    pub frozen: Vec<String>,
    /// Drawn paths with their line style.
    pub paths: Vec<(String, String)>,
}

pub type EdgeMultiset = BTreeMap<(String, String, ArrowStyle), u32>;

impl GoldenFigure {
    pub fn decode(&self, raw: &str) -> String {
        let t = raw.trim();
        let t = self.relabel.get(t).map(String::as_str).unwrap_or(t);
        match (self.mark, t.strip_suffix('\'')) {
            (Mark::Bar, Some(k)) if k.chars().all(|c| c.is_ascii_digit()) => bar(k.parse().expect("digits")),
            (Mark::Prime, Some(k)) if k.chars().all(|c| c.is_ascii_digit()) => prime(k.parse().expect("digits")),
            _ => canonical(t),
        }
    }

    /// Arrow multiset spelled out by the drawn paths.
    pub fn arrows(&self) -> Result<EdgeMultiset> {
        let mut out = EdgeMultiset::new();
        for (path, style) in &self.paths {
            let style: ArrowStyle = style.parse()?;
            let nodes: Vec<String> = path.split(',').map(|x| self.decode(x)).collect();
            for pair in nodes.windows(2) {
                *out.entry((pair[0].clone(), pair[1].clone(), style)).or_insert(0) += 1;
            }
        }
        Ok(out)
    }

    pub fn frozen_set(&self) -> BTreeSet<String> {
        self.frozen.iter().map(|x| self.decode(x)).collect()
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct GoldenGenerator {
    pub root: usize,
    /// Path whose polynomial is `f` (last index ignored in the notation).
    pub f_path: String,
    #[serde(default)]
    pub f_terms: Vec<String>,
    pub kprime: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct GoldenPhi {
    pub factors: Vec<String>,
    pub sequence: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct SingleForms {
    pub f_terms: Vec<Vec<String>>,
    pub kprime: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct FlipForms {
    pub f_terms: Vec<String>,
    pub kprime: String,
    #[serde(alias = "phi1", alias = "phi3")]
    pub operators: Vec<String>,
    pub shift: Vec<String>,
    pub f_after: Vec<String>,
    pub kprime_after: String,
}

/// A printed list with known misprints; keys of `errata` are 1-based
/// positions, values the corrected entries.
#[derive(Clone, Debug, Deserialize)]
pub struct PrintedList {
    pub printed: Vec<String>,
    #[serde(default)]
    pub errata: BTreeMap<usize, String>,
}

#[derive(Clone, Debug, Default, Deserialize)]
pub struct GoldenPolarization {
    pub single: Option<SingleForms>,
    pub doubled: Option<FlipForms>,
    pub tensor: Option<FlipForms>,
    pub phi3: Option<PrintedList>,
    pub shift: Option<PrintedList>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct GoldenExample {
    pub example: String,
    pub datum: WordSpec,
    pub figures: BTreeMap<String, GoldenFigure>,
    pub f_paths: Vec<String>,
    pub e_paths: Vec<String>,
    #[serde(default)]
    pub e_factors: Vec<Vec<String>>,
    #[serde(default)]
    pub doubled_generators: Vec<GoldenGenerator>,
    pub phi1: Option<GoldenPhi>,
    pub phi3: Option<GoldenPhi>,
    #[serde(default)]
    pub polarization: GoldenPolarization,
}

impl GoldenExample {
    /// Load from `dir` if given, else from the environment override, else
    /// the bundled copy.
    pub fn load(example: Example, dir: Option<&std::path::Path>) -> Result<GoldenExample> {
        let env_dir = std::env::var_os(GOLDEN_ENV).map(std::path::PathBuf::from);
        let text = match dir.map(std::path::Path::to_path_buf).or(env_dir) {
            Some(d) => {
                let path = d.join(example.file());
                std::fs::read_to_string(&path).map_err(|e| Error::Golden(format!("{}: {e}", path.display())))?
            }
            None => example.bundled().to_string(),
        };
        serde_json::from_str(&text).map_err(|e| Error::Golden(format!("{}: {e}", example.file())))
    }

    pub fn word(&self) -> Result<ReducedWord> {
        self.datum.build()
    }

    pub fn figure(&self, name: &str) -> Result<&GoldenFigure> {
        self.figures.get(name).ok_or_else(|| Error::Golden(format!("{}: no figure '{name}'", self.example)))
    }

    pub fn phi(&self, which: &str) -> Result<&GoldenPhi> {
        match which {
            "phi1" => self.phi1.as_ref(),
            "phi3" => self.phi3.as_ref(),
            _ => None,
        }
        .ok_or_else(|| Error::Golden(format!("{}: no {which} data", self.example)))
    }
}

/// Comma-separated node numbers.
pub fn parse_nodes(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Golden(format!("bad node '{t}'"))))
        .collect()
}

/// Comma-separated labels, canonicalized.
pub fn parse_labels(s: &str) -> Vec<String> {
    s.split(',').map(canonical).collect()
}

/// `3,7^2,9b` as a lattice vector of `torus`.
pub fn parse_monomial(torus: &Torus, s: &str) -> Result<LatticeVector> {
    let mut v = LatticeVector::zero();
    for tok in s.split(',') {
        let (label, exp) = match tok.split_once('^') {
            Some((l, e)) => (l, e.trim().parse::<i64>().map_err(|_| Error::Golden(format!("bad exponent in '{tok}'")))?),
            None => (tok, 1),
        };
        v.add_at(torus.index_of(&canonical(label))?, exp);
    }
    Ok(v)
}

/// `b_s:3,4,7` → `g_{b_s}(X_{3,4,7})`; `b` is the long multiplier 1 and
/// `b_s` the short one.
pub fn parse_factor(torus: &Torus, short: Rat, s: &str) -> Result<DilogFactor> {
    let (flavor, mono) = s.split_once(':').ok_or_else(|| Error::Golden(format!("factor '{s}'")))?;
    let flavor = match flavor.trim() {
        "b" => Rat::from_integer(1),
        "b_s" => short,
        other => return Err(Error::Golden(format!("unknown flavor '{other}'"))),
    };
    Ok(DilogFactor { argument: parse_monomial(torus, mono)?, flavor, direction: Direction::G })
}

/// Rank-one formulas omit the root index: `-u+2p` means `-u1+2p1`.
pub fn index_rank_one(s: &str) -> String {
    let chars: Vec<char> = s.chars().collect();
    let mut out = String::new();
    for (i, &c) in chars.iter().enumerate() {
        out.push(c);
        if matches!(c, 'u' | 'p' | 'λ') && !chars.get(i + 1).is_some_and(|n| n.is_ascii_digit()) {
            out.push('1');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_data_parses() {
        for ex in Example::all() {
            let g = GoldenExample::load(ex, None).unwrap();
            assert_eq!(g.example, ex.to_string());
            g.word().unwrap();
        }
    }

    #[test]
    fn figure_decoding() {
        let g = GoldenExample::load(Example::B3, None).unwrap();
        let fig = g.figure("flip_phi3").unwrap();
        assert_eq!(fig.decode("3'"), prime(1));
        assert_eq!(fig.decode("10'"), prime(10));
        let a3 = GoldenExample::load(Example::A3, None).unwrap();
        assert_eq!(a3.figure("flip_phi1").unwrap().decode("7'"), bar(7));
        assert_eq!(index_rank_one("2u-u'+2p'-2λ"), "2u1-u1'+2p1'-2λ1");
    }
}
