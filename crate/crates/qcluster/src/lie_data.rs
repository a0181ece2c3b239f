//! Cartan data of simple Lie types and combinatorics of reduced words of the
//! longest Weyl group element.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rat = Rational64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LieType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl FromStr for LieType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "A" => LieType::A,
            "B" => LieType::B,
            "C" => LieType::C,
            "D" => LieType::D,
            "E" => LieType::E,
            "F" => LieType::F,
            "G" => LieType::G,
            other => return Err(Error::InvalidDatum(format!("unknown Lie type '{other}'"))),
        })
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Which end of a doubly-laced diagram carries the short root.
///
/// `Bourbaki` puts the short root last in type B (first in type C); `Paper`
/// reverses the numbering of B and C, so that type B has root 1 short.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShortRootConvention {
    #[default]
    Bourbaki,
    Paper,
}

impl FromStr for ShortRootConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "bourbaki" | "default" => Ok(Self::Bourbaki),
            "paper" | "reversed" => Ok(Self::Paper),
            other => Err(Error::InvalidDatum(format!("unknown convention '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    pub lie_type: LieType,
    pub rank: usize,
    pub convention: ShortRootConvention,
    /// `cartan[i][j] = a_{i+1,j+1} = 2(α_i, α_j)/(α_i, α_i)`.
    pub cartan: Vec<Vec<i64>>,
    /// `d_i = (α_i, α_i)/2` with long roots normalised to 1.
    pub multipliers: Vec<Rat>,
}

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

/// Diagram edges and root lengths in Bourbaki numbering (0-based).
fn dynkin(lie_type: LieType, n: usize) -> Result<(Vec<Rat>, Vec<(usize, usize)>)> {
    let bad = || Error::InvalidDatum(format!("type {lie_type} has no rank {n}"));
    let chain = |m: usize| (0..m.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>();
    let one = Rat::one();
    let half = rat(1, 2);
    Ok(match lie_type {
        LieType::A if n >= 1 => (vec![one; n], chain(n)),
        LieType::B if n >= 2 => {
            let mut d = vec![one; n];
            d[n - 1] = half;
            (d, chain(n))
        }
        LieType::C if n >= 2 => {
            let mut d = vec![half; n];
            d[n - 1] = one;
            (d, chain(n))
        }
        LieType::D if n >= 4 => {
            let mut e = chain(n - 1);
            e.push((n - 3, n - 1));
            (vec![one; n], e)
        }
        LieType::E if (6..=8).contains(&n) => {
            let mut e = vec![(0, 2), (2, 3), (3, 4), (1, 3)];
            for i in 4..n - 1 {
                e.push((i, i + 1));
            }
            (vec![one; n], e)
        }
        LieType::F if n == 4 => (vec![one, one, half, half], chain(4)),
        LieType::G if n == 2 => (vec![rat(1, 3), one], chain(2)),
        _ => return Err(bad()),
    })
}

fn positive_roots(lie_type: LieType, n: usize) -> usize {
    match lie_type {
        LieType::A => n * (n + 1) / 2,
        LieType::B | LieType::C => n * n,
        LieType::D => n * (n - 1),
        LieType::E => match n {
            6 => 36,
            7 => 63,
            _ => 120,
        },
        LieType::F => 24,
        LieType::G => 6,
    }
}

impl RootDatum {
    pub fn new(lie_type: LieType, rank: usize, convention: ShortRootConvention) -> Result<Self> {
        let (mut d, mut edges) = dynkin(lie_type, rank)?;
        if convention == ShortRootConvention::Paper && matches!(lie_type, LieType::B | LieType::C) {
            d.reverse();
            edges = edges.into_iter().map(|(i, j)| (rank - 1 - i, rank - 1 - j)).collect();
        }
        // symmetric form (α_i, α_j), long roots of squared length 2
        let mut form = vec![vec![Rat::zero(); rank]; rank];
        for i in 0..rank {
            form[i][i] = d[i] * 2;
        }
        for &(i, j) in &edges {
            let v = if d[i] == d[j] { -d[i] } else { -d[i].max(d[j]) };
            form[i][j] = v;
            form[j][i] = v;
        }
        let cartan = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| {
                        let a = form[i][j] * 2 / form[i][i];
                        debug_assert!(a.is_integer());
                        a.to_integer()
                    })
                    .collect()
            })
            .collect();
        Ok(RootDatum { lie_type, rank, convention, cartan, multipliers: d })
    }

    /// `a_{ij}` with 1-based root indices.
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.cartan[i - 1][j - 1]
    }

    /// `d_i` with a 1-based root index.
    pub fn d(&self, i: usize) -> Rat {
        self.multipliers[i - 1]
    }

    pub fn is_short(&self, i: usize) -> bool {
        self.d(i) < Rat::one()
    }

    pub fn positive_root_count(&self) -> usize {
        positive_roots(self.lie_type, self.rank)
    }
}

/// Convenience wrapper matching the usual `(type, rank, convention)` call.
pub fn cartan_datum(lie_type: LieType, rank: usize, convention: ShortRootConvention) -> Result<RootDatum> {
    RootDatum::new(lie_type, rank, convention)
}

/// A reduced expression `(i_1, …, i_N)` of the longest element, with the
/// index maps used by the basic quiver. Node indices run over `1..=N+n`,
/// where node `N+j` is the outgoing frozen node of root `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedWord {
    datum: RootDatum,
    letters: Vec<usize>,
    plus: Vec<usize>,
    minus: Vec<usize>,
}

impl ReducedWord {
    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    /// Length `N` of the word.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.datum.rank
    }

    /// Number of nodes `N + n` of the basic quiver.
    pub fn node_count(&self) -> usize {
        self.len() + self.rank()
    }

    /// Root index `i_k` of node `k`, with `i_{N+j} = j`.
    pub fn root_of(&self, k: usize) -> usize {
        let n = self.len();
        if k <= n {
            self.letters[k - 1]
        } else {
            k - n
        }
    }

    pub fn plus(&self, k: usize) -> usize {
        self.plus[k]
    }

    /// `k⁻`, or 0 when `k` is an incoming frozen node.
    pub fn minus(&self, k: usize) -> usize {
        self.minus[k]
    }

    /// Positions `k ≤ N` with `i_k = i`, in increasing order.
    pub fn occurrences(&self, root: usize) -> Vec<usize> {
        (1..=self.len()).filter(|&k| self.letters[k - 1] == root).collect()
    }

    /// The last occurrence `i*` of a root.
    pub fn star(&self, root: usize) -> usize {
        *self.occurrences(root).last().expect("every root occurs")
    }

    /// Horizontal row of a root: its occurrences followed by `N + root`.
    pub fn row(&self, root: usize) -> Vec<usize> {
        let mut r = self.occurrences(root);
        r.push(self.len() + root);
        r
    }

    pub fn f_in(&self) -> Vec<usize> {
        (1..=self.node_count()).filter(|&k| self.minus[k] == 0).collect()
    }

    pub fn f_out(&self) -> Vec<usize> {
        (self.len() + 1..=self.node_count()).collect()
    }

    pub fn is_frozen(&self, k: usize) -> bool {
        self.minus[k] == 0 || k > self.len()
    }

    /// Multiplier `d_k = d_{i_k}` of node `k`.
    pub fn node_d(&self, k: usize) -> Rat {
        self.datum.d(self.root_of(k))
    }

    pub fn reverse_word(&self) -> ReducedWord {
        let rev: Vec<usize> = self.letters.iter().rev().copied().collect();
        ReducedWord::from_parts(self.datum.clone(), rev)
    }

    /// `σ(k̄) = l` for `k̄ = 1..=N`, where `reversed` is this word read backwards:
    /// the occurrence of the same root with the same number of earlier
    /// occurrences. Entry 0 is unused.
    pub fn sigma_from(&self, reversed: &ReducedWord) -> Vec<usize> {
        let mut seen = vec![0usize; self.rank() + 1];
        let mut out = vec![0usize; reversed.len() + 1];
        for kb in 1..=reversed.len() {
            let root = reversed.root_of(kb);
            out[kb] = self.occurrences(root)[seen[root]];
            seen[root] += 1;
        }
        out
    }

    fn from_parts(datum: RootDatum, letters: Vec<usize>) -> ReducedWord {
        let big_n = letters.len();
        let total = big_n + datum.rank;
        let root_of = |k: usize| if k <= big_n { letters[k - 1] } else { k - big_n };
        let mut plus = vec![0usize; total + 1];
        for k in 1..=big_n {
            let i = letters[k - 1];
            plus[k] = (k + 1..=big_n).find(|&l| letters[l - 1] == i).unwrap_or(big_n + i);
        }
        let mut minus = vec![0usize; total + 1];
        for k in 1..=total {
            minus[k] = (1..k).rev().find(|&l| l <= big_n && plus[l] == k).unwrap_or(0);
            debug_assert!(minus[k] == 0 || root_of(minus[k]) == root_of(k));
        }
        ReducedWord { datum, letters, plus, minus }
    }

    pub fn spec(&self) -> WordSpec {
        WordSpec {
            lie_type: self.datum.lie_type,
            rank: self.datum.rank,
            short_root_convention: self.datum.convention,
            word: self.letters.clone(),
        }
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Apply `s_i(β) = β − ⟨β, α_i^∨⟩ α_i` in simple-root coordinates.
fn reflect(datum: &RootDatum, i: usize, beta: &mut [i64]) {
    let pairing: i64 = (0..datum.rank).map(|j| beta[j] * datum.cartan[i - 1][j]).sum();
    beta[i - 1] -= pairing;
}

/// Check that `letters` is a reduced expression of the longest element.
///
/// The `k`-th letter is reduced iff `s_{i_1}…s_{i_{k-1}}(α_{i_k})` is positive.
pub fn validate_reduced_word(datum: &RootDatum, letters: &[usize]) -> Result<ReducedWord> {
    let n = datum.rank;
    for (p, &l) in letters.iter().enumerate() {
        if l == 0 || l > n {
            return Err(Error::LetterOutOfRange { position: p + 1, letter: l, rank: n });
        }
    }
    for k in 0..letters.len() {
        let mut beta = vec![0i64; n];
        beta[letters[k] - 1] = 1;
        for j in (0..k).rev() {
            reflect(datum, letters[j], &mut beta);
        }
        if beta.iter().any(|&c| c < 0) {
            return Err(Error::NotReduced(k + 1));
        }
    }
    let expected = datum.positive_root_count();
    if letters.len() != expected {
        return Err(Error::NotLongest { len: letters.len(), expected });
    }
    for root in 1..=n {
        if !letters.contains(&root) {
            return Err(Error::MissingRoot(root));
        }
    }
    Ok(ReducedWord::from_parts(datum.clone(), letters.to_vec()))
}

/// Serializable description of a word together with its root datum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordSpec {
    #[serde(rename = "type")]
    pub lie_type: LieType,
    pub rank: usize,
    #[serde(default)]
    pub short_root_convention: ShortRootConvention,
    pub word: Vec<usize>,
}

impl WordSpec {
    pub fn build(&self) -> Result<ReducedWord> {
        let datum = RootDatum::new(self.lie_type, self.rank, self.short_root_convention)?;
        validate_reduced_word(&datum, &self.word)
    }
}

/// Parse a comma- or space-separated list of letters.
pub fn parse_letters(s: &str) -> Result<Vec<usize>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad letter '{t}'"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(t: LieType, n: usize, c: ShortRootConvention, w: &[usize]) -> ReducedWord {
        validate_reduced_word(&RootDatum::new(t, n, c).unwrap(), w).unwrap()
    }

    #[test]
    fn simply_laced_data() {
        let a2 = RootDatum::new(LieType::A, 2, ShortRootConvention::Bourbaki).unwrap();
        assert_eq!(a2.cartan, vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(a2.multipliers, vec![Rat::one(), Rat::one()]);
        let a1 = RootDatum::new(LieType::A, 1, ShortRootConvention::Bourbaki).unwrap();
        assert_eq!(a1.cartan, vec![vec![2]]);
    }

    #[test]
    fn b3_root_conventions() {
        let paper = RootDatum::new(LieType::B, 3, ShortRootConvention::Paper).unwrap();
        assert_eq!(paper.multipliers, vec![rat(1, 2), Rat::one(), Rat::one()]);
        assert_eq!(paper.a(1, 2), -2);
        assert_eq!(paper.a(2, 1), -1);
        let bourbaki = RootDatum::new(LieType::B, 3, ShortRootConvention::Bourbaki).unwrap();
        assert_eq!(bourbaki.multipliers, vec![Rat::one(), Rat::one(), rat(1, 2)]);
        assert_eq!(bourbaki.a(3, 2), -2);
    }

    #[test]
    fn every_type_is_symmetrizable() {
        let cases = [
            (LieType::A, 4),
            (LieType::B, 4),
            (LieType::C, 3),
            (LieType::D, 5),
            (LieType::E, 6),
            (LieType::E, 8),
            (LieType::F, 4),
            (LieType::G, 2),
        ];
        for (t, n) in cases {
            for c in [ShortRootConvention::Bourbaki, ShortRootConvention::Paper] {
                let r = RootDatum::new(t, n, c).unwrap();
                for i in 1..=n {
                    assert_eq!(r.a(i, i), 2);
                    for j in 1..=n {
                        assert_eq!(r.d(i) * r.a(i, j), r.d(j) * r.a(j, i), "{t}{n}");
                        if i != j {
                            assert!(r.a(i, j) <= 0);
                        }
                    }
                }
            }
        }
        assert!(RootDatum::new(LieType::D, 3, ShortRootConvention::Bourbaki).is_err());
        assert!(RootDatum::new(LieType::G, 3, ShortRootConvention::Bourbaki).is_err());
    }

    #[test]
    fn word_validation() {
        let a2 = RootDatum::new(LieType::A, 2, ShortRootConvention::Bourbaki).unwrap();
        assert_eq!(validate_reduced_word(&a2, &[1, 2, 1]).unwrap().len(), 3);
        assert_eq!(validate_reduced_word(&a2, &[1, 1, 2]), Err(Error::NotReduced(2)));
        assert_eq!(
            validate_reduced_word(&a2, &[1, 2]),
            Err(Error::NotLongest { len: 2, expected: 3 })
        );
        assert!(matches!(validate_reduced_word(&a2, &[1, 3, 1]), Err(Error::LetterOutOfRange { .. })));
    }

    #[test]
    fn a3_index_maps() {
        let w = word(LieType::A, 3, ShortRootConvention::Bourbaki, &[1, 2, 1, 3, 2, 1]);
        assert_eq!(w.f_in(), vec![1, 2, 4]);
        assert_eq!(w.f_out(), vec![7, 8, 9]);
        assert_eq!((w.plus(1), w.plus(3), w.plus(6)), (3, 6, 7));
        assert_eq!(w.star(1), 6);
        assert_eq!(w.minus(7), 6);
        assert_eq!(w.row(2), vec![2, 5, 8]);
    }

    #[test]
    fn reversal_and_sigma() {
        let w = word(LieType::A, 3, ShortRootConvention::Bourbaki, &[1, 2, 1, 3, 2, 1]);
        let r = w.reverse_word();
        assert_eq!(r.letters(), &[1, 2, 3, 1, 2, 1]);
        let sigma = w.sigma_from(&r);
        assert_eq!(sigma[1], 1);
        // third occurrence of root 1 in the reversed word is position 6 there
        assert_eq!(sigma[6], 6);
        assert_eq!(sigma[4], 3);
        let b3 = word(LieType::B, 3, ShortRootConvention::Paper, &[1, 2, 1, 2, 3, 2, 1, 2, 3]);
        assert_eq!(b3.reverse_word().letters(), &[3, 2, 1, 2, 3, 2, 1, 2, 1]);
        let a1 = word(LieType::A, 1, ShortRootConvention::Bourbaki, &[1]);
        assert_eq!(a1.sigma_from(&a1.reverse_word())[1], 1);
    }
}
