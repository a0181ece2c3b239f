use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;
use serde::{Deserialize, Serialize};

use qcluster::basic_quiver::{build_basic_seed, glue_flip, glue_tensor_square};
use qcluster::lie_data::{parse_letters, LieType, ReducedWord, ShortRootConvention, WordSpec};
use qcluster::relations_suite::{Example, GoldenExample};
use qcluster::seed_quiver::{ClusterSeed, SeedJson};

/// A reduced word given inline or by worked-example name.
#[derive(Args, Debug, Clone)]
pub struct WordArgs {
    /// Lie type (A, B, C, D, ...).
    #[arg(long = "type", requires_all = ["rank", "word"])]
    pub lie_type: Option<String>,
    #[arg(long)]
    pub rank: Option<usize>,
    /// Reduced expression of the longest element, e.g. 1,2,1.
    #[arg(long)]
    pub word: Option<String>,
    /// Root numbering for B and C: bourbaki or paper.
    #[arg(long, default_value = "bourbaki")]
    pub convention: String,
    /// Worked example A1, A3 or B3 in place of --type/--rank/--word.
    #[arg(long, conflicts_with_all = ["lie_type", "rank", "word"])]
    pub example: Option<String>,
}

impl WordArgs {
    pub fn given(&self) -> bool {
        self.example.is_some() || self.lie_type.is_some()
    }

    pub fn resolve(&self) -> Result<ReducedWord> {
        if let Some(name) = &self.example {
            let example: Example = name.parse()?;
            return Ok(GoldenExample::load(example, None)?.word()?);
        }
        let (Some(t), Some(rank), Some(word)) = (&self.lie_type, self.rank, &self.word) else {
            bail!("a word is required: --type, --rank and --word, or --example");
        };
        let spec = WordSpec {
            lie_type: t.parse::<LieType>()?,
            rank,
            short_root_convention: self.convention.parse::<ShortRootConvention>()?,
            word: parse_letters(word)?,
        };
        Ok(spec.build()?)
    }
}

/// Quiver shapes built from one word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum QuiverMode {
    /// The basic quiver of the word.
    Single,
    /// The word glued to its barred reverse.
    Doubled,
    /// The word glued to a primed copy of itself.
    Tensor,
}

pub fn build_quiver(word: &ReducedWord, mode: QuiverMode) -> ClusterSeed {
    match mode {
        QuiverMode::Single => build_basic_seed(word).seed,
        QuiverMode::Doubled => glue_flip(word).seed,
        QuiverMode::Tensor => glue_tensor_square(word).seed,
    }
}

/// Seed file contents: a bare seed, or a seed with the word it was built from.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct SeedDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<WordSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<QuiverMode>,
    pub seed: SeedJson,
}

impl SeedDocument {
    pub fn of(seed: &ClusterSeed, word: Option<&ReducedWord>, mode: Option<QuiverMode>) -> Self {
        SeedDocument { word: word.map(ReducedWord::spec), mode, seed: seed.to_json_value() }
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        if let Ok(doc) = serde_json::from_str::<SeedDocument>(&text) {
            return Ok(doc);
        }
        let seed: SeedJson =
            serde_json::from_str(&text).with_context(|| format!("{} is not a seed document", path.display()))?;
        Ok(SeedDocument { word: None, mode: None, seed })
    }

    pub fn seed(&self) -> Result<ClusterSeed> {
        Ok(ClusterSeed::from_json_value(&self.seed)?)
    }

    /// The word and mode, after checking that they reproduce the stored seed.
    pub fn word_and_mode(&self) -> Result<(ReducedWord, QuiverMode)> {
        let (Some(spec), Some(mode)) = (&self.word, self.mode) else {
            bail!("seed file carries no word; write it with `quiver build --out`");
        };
        let word = spec.build()?;
        if build_quiver(&word, mode) != self.seed()? {
            bail!("seed file does not match the quiver of its word {word} ({mode:?})");
        }
        Ok((word, mode))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("seed document serializes");
        s.push('\n');
        s
    }
}

/// Either an inline word or a seed file carrying one.
pub fn word_from(words: &WordArgs, seed: Option<&PathBuf>, mode: QuiverMode) -> Result<ReducedWord> {
    match (words.given(), seed) {
        (true, Some(_)) => bail!("give either a word or --seed, not both"),
        (true, None) => words.resolve(),
        (false, Some(path)) => {
            let (word, stored) = SeedDocument::read(path)?.word_and_mode()?;
            if stored != mode {
                bail!("seed file holds a {stored:?} quiver, this command needs {mode:?}");
            }
            Ok(word)
        }
        (false, None) => bail!("a word is required: --type, --rank and --word, --example, or --seed"),
    }
}

pub fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(stdout.flush()?)
        }
    }
}
