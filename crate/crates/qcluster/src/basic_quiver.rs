//! Basic quivers of reduced words, their gluings, F/E-paths and the Borel
//! generators assembled from path polynomials.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::labels;
use crate::lie_data::{LieType, Rat, ReducedWord};
use crate::qtorus::{commutator_quotient, LatticeVector, Torus, TorusElement};
use crate::seed_quiver::{amalgamate, ClusterSeed, Node};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Decoration {
    Plain,
    Bar,
    Prime,
}

impl Decoration {
    pub fn label(self, k: usize) -> String {
        match self {
            Decoration::Plain => labels::plain(k),
            Decoration::Bar => labels::bar(k),
            Decoration::Prime => labels::prime(k),
        }
    }
}

/// Basic quiver of a word on nodes `1..=N+n` (seed index `k-1`).
#[derive(Clone, Debug)]
pub struct BasicQuiver {
    pub word: ReducedWord,
    pub seed: ClusterSeed,
    pub decoration: Decoration,
}

impl BasicQuiver {
    pub fn index(&self, k: usize) -> usize {
        k - 1
    }

    pub fn label(&self, k: usize) -> String {
        self.decoration.label(k)
    }
}

pub fn build_basic_seed(word: &ReducedWord) -> BasicQuiver {
    build_basic_seed_with(word, Decoration::Plain)
}

/// Arrows: `k → k⁺` of weight `d_{i_k}`; `k → l` of weight `-d_{i_k} a_{i_k i_l}`
/// for adjacent distinct roots with `l⁻ < k⁻ < l < k`; half arrows among
/// incoming frozen nodes (`k ⇢ l` for `k > l`) and among outgoing frozen
/// nodes (`k ⇢ l` for `k⁻ > l⁻`).
pub fn build_basic_seed_with(word: &ReducedWord, decoration: Decoration) -> BasicQuiver {
    let big_n = word.len();
    let total = word.node_count();
    let datum = word.datum();
    let sym = |k: usize, l: usize| datum.d(word.root_of(k)) * datum.a(word.root_of(k), word.root_of(l));
    let adjacent = |k: usize, l: usize| {
        let (a, b) = (word.root_of(k), word.root_of(l));
        a != b && datum.a(a, b) != 0
    };
    let mut entries: Vec<(usize, usize, Rat)> = Vec::new();
    for k in 1..=big_n {
        entries.push((k - 1, word.plus(k) - 1, word.node_d(k)));
    }
    for l in 1..=big_n {
        for k in l + 1..=total {
            if adjacent(k, l) && word.minus(l) < word.minus(k) && word.minus(k) < l {
                entries.push((k - 1, l - 1, -sym(k, l)));
            }
        }
    }
    let f_in: Vec<usize> = (1..=big_n).filter(|&k| word.minus(k) == 0).collect();
    let f_out = word.f_out();
    for &k in &f_in {
        for &l in &f_in {
            if k > l && adjacent(k, l) {
                entries.push((k - 1, l - 1, -sym(k, l) / 2));
            }
        }
    }
    for &k in &f_out {
        for &l in &f_out {
            if word.minus(k) > word.minus(l) && adjacent(k, l) {
                entries.push((k - 1, l - 1, -sym(k, l) / 2));
            }
        }
    }
    let nodes = (1..=total)
        .map(|k| Node::new(decoration.label(k), word.is_frozen(k), word.node_d(k)))
        .collect();
    let seed = ClusterSeed::from_skew_form(nodes, &entries).expect("basic quiver is a valid seed");
    BasicQuiver { word: word.clone(), seed, decoration }
}

/// An ordered node path. When `open_end` is set the path continues into a
/// symbolic node outside the seed, so every listed node enters the polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathPolynomial {
    pub nodes: Vec<usize>,
    pub open_end: bool,
}

impl PathPolynomial {
    pub fn closed(nodes: Vec<usize>) -> Self {
        PathPolynomial { nodes, open_end: false }
    }

    pub fn open(nodes: Vec<usize>) -> Self {
        PathPolynomial { nodes, open_end: true }
    }

    /// Lattice vectors of the prefix monomials entering the polynomial.
    pub fn prefixes(&self) -> Vec<LatticeVector> {
        let count = if self.open_end { self.nodes.len() } else { self.nodes.len().saturating_sub(1) };
        let mut v = LatticeVector::zero();
        let mut out = Vec::with_capacity(count);
        for &i in self.nodes.iter().take(count) {
            v.add_at(i, 1);
            out.push(v.clone());
        }
        out
    }

    pub fn full(&self) -> LatticeVector {
        LatticeVector::from_indices(self.nodes.iter().copied())
    }

    pub fn polynomial(&self, torus: &Arc<Torus>) -> TorusElement {
        let mut out = TorusElement::zero(torus);
        for p in self.prefixes() {
            out.add_term(p, crate::qtorus::QLaurent::one());
        }
        out
    }

    pub fn monomial(&self, torus: &Arc<Torus>) -> TorusElement {
        TorusElement::monomial(torus, self.full())
    }

    pub fn render(&self, seed: &ClusterSeed) -> String {
        let mut s: Vec<String> = self.nodes.iter().map(|&i| seed.label(i).to_string()).collect();
        if self.open_end {
            s.push("E".into());
        }
        format!("({})", s.join(","))
    }
}

/// `𝒫_{F_i}` on a basic quiver.
pub fn f_path(quiver: &BasicQuiver, root: usize) -> PathPolynomial {
    PathPolynomial::closed(quiver.word.row(root).into_iter().map(|k| k - 1).collect())
}

/// `𝒫_{E_i}` on a basic quiver, looked up through the registry.
pub fn e_path(quiver: &BasicQuiver, root: usize, registry: &EPathRegistry) -> Result<PathPolynomial> {
    let (_, paths) = registry.resolve(&quiver.word, &quiver.seed)?;
    let nodes = paths.get(root - 1).ok_or(Error::EPathUnavailable(root))?;
    Ok(PathPolynomial::open(nodes.iter().map(|k| k - 1).collect()))
}

/// A source of E-path data: for each root, the node numbers `k` of the path
/// from `N+i` into the symbolic boundary (terminal node omitted).
pub trait EPathSource: Send + Sync {
    fn name(&self) -> &str;
    fn paths(&self, word: &ReducedWord, seed: &ClusterSeed) -> Option<Vec<Vec<usize>>>;
}

/// Verbatim tables for specific words.
pub struct BundledEPaths {
    tables: Vec<(LieType, usize, crate::lie_data::ShortRootConvention, Vec<usize>, Vec<Vec<usize>>)>,
}

impl Default for BundledEPaths {
    fn default() -> Self {
        use crate::lie_data::ShortRootConvention::Paper;
        BundledEPaths {
            tables: vec![(
                LieType::B,
                3,
                Paper,
                vec![1, 2, 1, 2, 3, 2, 1, 2, 3],
                vec![vec![10, 8, 7, 4, 3], vec![11, 9, 6], vec![12]],
            )],
        }
    }
}

impl EPathSource for BundledEPaths {
    fn name(&self) -> &str {
        "bundled"
    }

    fn paths(&self, word: &ReducedWord, _seed: &ClusterSeed) -> Option<Vec<Vec<usize>>> {
        let d = word.datum();
        self.tables
            .iter()
            .find(|(t, n, c, w, _)| *t == d.lie_type && *n == d.rank && *c == d.convention && w == word.letters())
            .map(|entry| entry.4.clone())
    }
}

/// The standard type-A word `(1, 2,1, 3,2,1, …)`: `E_j` runs from `N+j`
/// through the last occurrence of root `j-1`, the second-to-last of root
/// `j-2`, and so on.
pub struct StandardTypeA;

pub fn standard_a_word(n: usize) -> Vec<usize> {
    (1..=n).flat_map(|m| (1..=m).rev()).collect()
}

impl EPathSource for StandardTypeA {
    fn name(&self) -> &str {
        "a_standard"
    }

    fn paths(&self, word: &ReducedWord, _seed: &ClusterSeed) -> Option<Vec<Vec<usize>>> {
        let n = word.rank();
        if word.datum().lie_type != LieType::A || word.letters() != standard_a_word(n).as_slice() {
            return None;
        }
        let big_n = word.len();
        let paths = (1..=n)
            .map(|j| {
                let mut p = vec![big_n + j];
                for step in 1..j {
                    let occ = word.occurrences(j - step);
                    p.push(occ[occ.len() - step]);
                }
                p
            })
            .collect();
        Some(paths)
    }
}

/// Shortest directed path from `N+i` through unfrozen nodes whose open path
/// polynomial `e` satisfies `[e, f_j] = δ_ij (q_i − q_i⁻¹) K'_j` on the
/// basic quiver.
pub struct SearchEPaths {
    pub max_len: usize,
}

impl Default for SearchEPaths {
    fn default() -> Self {
        SearchEPaths { max_len: 12 }
    }
}

impl EPathSource for SearchEPaths {
    fn name(&self) -> &str {
        "search"
    }

    fn paths(&self, word: &ReducedWord, seed: &ClusterSeed) -> Option<Vec<Vec<usize>>> {
        let torus = Torus::of_seed(seed);
        let n = word.rank();
        let fs: Vec<(TorusElement, TorusElement)> = (1..=n)
            .map(|j| {
                let p = PathPolynomial::closed(word.row(j).into_iter().map(|k| k - 1).collect());
                (p.polynomial(&torus), p.monomial(&torus))
            })
            .collect();
        let admissible = |root: usize, path: &[usize]| {
            let e = PathPolynomial::open(path.to_vec()).polynomial(&torus);
            fs.iter().enumerate().all(|(j, (f, k))| match commutator_quotient(&e, f, word.datum().d(root)) {
                Ok(c) if j + 1 == root => c == *k,
                Ok(c) => c.is_zero(),
                Err(_) => false,
            })
        };
        let mut out = Vec::new();
        for root in 1..=n {
            let start = word.len() + root - 1;
            let mut frontier = vec![vec![start]];
            let mut found = None;
            for _ in 0..self.max_len {
                if let Some(p) = frontier.iter().find(|p| admissible(root, p)) {
                    found = Some(p.clone());
                    break;
                }
                let mut next = Vec::new();
                for p in &frontier {
                    let last = *p.last().expect("nonempty");
                    for j in 0..seed.len() {
                        if seed.w(last, j) > Rat::zero() && !seed.is_frozen(j) && !p.contains(&j) {
                            let mut q = p.clone();
                            q.push(j);
                            next.push(q);
                        }
                    }
                }
                if next.is_empty() {
                    break;
                }
                frontier = next;
            }
            out.push(found?.into_iter().map(|i| i + 1).collect());
        }
        Some(out)
    }
}

/// User-supplied E-paths for one word.
pub struct FixedEPaths {
    pub label: String,
    pub word: Vec<usize>,
    pub paths: Vec<Vec<usize>>,
}

impl EPathSource for FixedEPaths {
    fn name(&self) -> &str {
        &self.label
    }

    fn paths(&self, word: &ReducedWord, _seed: &ClusterSeed) -> Option<Vec<Vec<usize>>> {
        (word.letters() == self.word.as_slice()).then(|| self.paths.clone())
    }
}

/// Named E-path sources, consulted in a fixed order.
pub struct EPathRegistry {
    sources: HashMap<String, Box<dyn EPathSource>>,
    order: Vec<String>,
}

impl Default for EPathRegistry {
    fn default() -> Self {
        let mut r = EPathRegistry::empty();
        r.register(Box::new(BundledEPaths::default()));
        r.register(Box::new(StandardTypeA));
        r.register(Box::new(SearchEPaths::default()));
        r
    }
}

impl EPathRegistry {
    pub fn empty() -> Self {
        EPathRegistry { sources: HashMap::new(), order: Vec::new() }
    }

    /// Without the search fallback: only tabulated or generated data.
    pub fn tabulated() -> Self {
        let mut r = EPathRegistry::empty();
        r.register(Box::new(BundledEPaths::default()));
        r.register(Box::new(StandardTypeA));
        r
    }

    /// Add a source; user sources registered later are consulted first.
    pub fn register(&mut self, source: Box<dyn EPathSource>) {
        let name = source.name().to_string();
        if self.sources.insert(name.clone(), source).is_none() {
            if name == "search" || self.order.is_empty() {
                self.order.push(name);
            } else {
                let at = self.order.iter().position(|n| n == "search").unwrap_or(self.order.len());
                self.order.insert(at, name);
            }
        }
    }

    pub fn names(&self) -> Vec<String> {
        self.order.clone()
    }

    pub fn get(&self, name: &str) -> Result<&dyn EPathSource> {
        self.sources
            .get(name)
            .map(|b| b.as_ref())
            .ok_or_else(|| Error::UnknownStrategy { kind: "E-path source", name: name.to_string() })
    }

    pub fn resolve(&self, word: &ReducedWord, seed: &ClusterSeed) -> Result<(String, Vec<Vec<usize>>)> {
        for name in &self.order {
            if let Some(p) = self.sources[name].paths(word, seed) {
                return Ok((name.clone(), p));
            }
        }
        Err(Error::EPathUnavailable(1))
    }
}

/// Which triangle-pair gluing a quiver realizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GluedKind {
    /// Left triangle of the word, right triangle of the reversed word.
    Flip,
    /// Two copies of the same word.
    TensorSquare,
}

/// Two basic quivers glued along `N+i ~ (first node of root i on the right)`.
#[derive(Clone, Debug)]
pub struct GluedQuiver {
    pub kind: GluedKind,
    pub left: BasicQuiver,
    pub right: BasicQuiver,
    pub seed: ClusterSeed,
    left_index: Vec<usize>,
    right_index: Vec<usize>,
}

pub fn glue_pair(left: BasicQuiver, right: BasicQuiver, kind: GluedKind) -> Result<GluedQuiver> {
    let big_n = left.word.len();
    let n = left.word.rank();
    let gluing: Vec<(String, String)> = (1..=n)
        .map(|i| (left.label(big_n + i), right.label(right.word.occurrences(i)[0])))
        .collect();
    let am = amalgamate(&left.seed, &right.seed, &gluing)?;
    let mut left_index = vec![usize::MAX; left.word.node_count() + 1];
    let mut right_index = vec![usize::MAX; right.word.node_count() + 1];
    for (new, (a, b)) in am.origin.iter().enumerate() {
        if let Some(a) = a {
            left_index[a + 1] = new;
        }
        if let Some(b) = b {
            right_index[b + 1] = new;
        }
    }
    Ok(GluedQuiver { kind, left, right, seed: am.seed, left_index, right_index })
}

/// `Q^{w w̄}`: the word on the left (plain labels), its reverse on the right
/// (barred labels).
pub fn glue_flip(word: &ReducedWord) -> GluedQuiver {
    let left = build_basic_seed_with(word, Decoration::Plain);
    let right = build_basic_seed_with(&word.reverse_word(), Decoration::Bar);
    glue_pair(left, right, GluedKind::Flip).expect("flip gluing is valid")
}

/// `Q^{w w}`: second copy primed.
pub fn glue_tensor_square(word: &ReducedWord) -> GluedQuiver {
    let left = build_basic_seed_with(word, Decoration::Plain);
    let right = build_basic_seed_with(word, Decoration::Prime);
    glue_pair(left, right, GluedKind::TensorSquare).expect("tensor gluing is valid")
}

impl GluedQuiver {
    /// Seed index of left node `k`.
    pub fn left_node(&self, k: usize) -> usize {
        self.left_index[k]
    }

    /// Seed index of right node `k`.
    pub fn right_node(&self, k: usize) -> usize {
        self.right_index[k]
    }

    /// Left F-path of a root, ending at the glued node.
    pub fn left_row(&self, root: usize) -> Vec<usize> {
        self.left.word.row(root).into_iter().map(|k| self.left_node(k)).collect()
    }

    /// Right F-path of a root, starting at the glued node.
    pub fn right_row(&self, root: usize) -> Vec<usize> {
        self.right.word.row(root).into_iter().map(|k| self.right_node(k)).collect()
    }

    /// Concatenated F-path through both triangles.
    pub fn concatenated_row(&self, root: usize) -> Vec<usize> {
        let mut p = self.left_row(root);
        p.pop();
        p.extend(self.right_row(root));
        p
    }

    pub fn glued_node(&self, root: usize) -> usize {
        self.left_node(self.left.word.len() + root)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BorelMode {
    Single,
    Doubled,
    TensorSquare,
}

impl BorelMode {
    pub fn name(self) -> &'static str {
        match self {
            BorelMode::Single => "single",
            BorelMode::Doubled => "doubled",
            BorelMode::TensorSquare => "tensor_square",
        }
    }

    pub fn all() -> [BorelMode; 3] {
        [BorelMode::Single, BorelMode::Doubled, BorelMode::TensorSquare]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

/// One prefix monomial `f^{k,±}` of a generator. `group` distinguishes
/// tensor factors; `position` indexes `words[group]`.
#[derive(Clone, Debug)]
pub struct FMonomial {
    pub vector: LatticeVector,
    pub sign: Sign,
    pub group: usize,
    pub position: usize,
}

#[derive(Clone, Debug)]
pub struct Generators {
    pub f: TorusElement,
    pub k: TorusElement,
    /// `e_i⁻` on the rightmost triangle.
    pub e_minus: TorusElement,
    pub monomials: Vec<FMonomial>,
    /// Left and right halves `f_i⁻`, `f_i⁺` on a doubled quiver.
    pub halves: Option<(TorusElement, TorusElement)>,
}

/// Generators of the Borel part on a single, doubled, or tensor-square quiver.
#[derive(Clone, Debug)]
pub struct BorelRealization {
    pub mode: BorelMode,
    pub word: ReducedWord,
    pub seed: ClusterSeed,
    pub torus: Arc<Torus>,
    /// Words whose positions index `FMonomial::position`, per group.
    pub words: Vec<ReducedWord>,
    pub generators: BTreeMap<usize, Generators>,
}

/// Positions of the reversed word attached, in order, to the prefix
/// monomials of a row of `word` in the minus-form placement.
fn minus_positions(word: &ReducedWord, root: usize) -> Vec<usize> {
    let rev = word.reverse_word();
    rev.occurrences(root).into_iter().rev().collect()
}

/// Assemble `f_i`, `K'_i` and `e_i⁻` for every root.
///
/// * `Single`: on `Q^w`.
/// * `Doubled`: on `Q^{w̄ w}`, whose right triangle is `Q^w`.
/// * `TensorSquare`: on `Q^{w w}`, returning `Δ(f_i)` and `Δ(K'_i)`.
pub fn assemble_borel(word: &ReducedWord, mode: BorelMode, registry: &EPathRegistry) -> Result<BorelRealization> {
    let n = word.rank();
    let basic = build_basic_seed(word);
    let (_, epaths) = registry.resolve(word, &basic.seed)?;
    match mode {
        BorelMode::Single => {
            let torus = Torus::of_seed(&basic.seed);
            let mut generators = BTreeMap::new();
            for root in 1..=n {
                let row = f_path(&basic, root);
                let positions = minus_positions(word, root);
                let monomials = row
                    .prefixes()
                    .into_iter()
                    .zip(positions)
                    .map(|(vector, position)| FMonomial { vector, sign: Sign::Minus, group: 0, position })
                    .collect();
                let e = PathPolynomial::open(epaths[root - 1].iter().map(|k| k - 1).collect());
                generators.insert(
                    root,
                    Generators {
                        f: row.polynomial(&torus),
                        k: row.monomial(&torus),
                        e_minus: e.polynomial(&torus),
                        monomials,
                        halves: None,
                    },
                );
            }
            Ok(BorelRealization {
                mode,
                word: word.clone(),
                seed: basic.seed,
                torus,
                words: vec![word.reverse_word()],
                generators,
            })
        }
        BorelMode::Doubled | BorelMode::TensorSquare => {
            let glued = if mode == BorelMode::Doubled {
                glue_flip(&word.reverse_word())
            } else {
                glue_tensor_square(word)
            };
            let torus = Torus::of_seed(&glued.seed);
            let mut generators = BTreeMap::new();
            for root in 1..=n {
                let left = PathPolynomial::closed(glued.left_row(root));
                let full = PathPolynomial::closed(glued.concatenated_row(root));
                let prefixes = full.prefixes();
                let split = left.nodes.len() - 1;
                let mut monomials = Vec::new();
                if mode == BorelMode::Doubled {
                    // left: minus forms of the reversed left word, i.e. of `word`
                    let lpos = minus_positions(&glued.left.word, root);
                    let rpos = word.occurrences(root);
                    for (a, v) in prefixes.iter().enumerate() {
                        let (sign, position) =
                            if a < split { (Sign::Minus, lpos[a]) } else { (Sign::Plus, rpos[a - split]) };
                        monomials.push(FMonomial { vector: v.clone(), sign, group: 0, position });
                    }
                } else {
                    let pos = minus_positions(word, root);
                    for (a, v) in prefixes.iter().enumerate() {
                        let (group, position) = if a < split { (0, pos[a]) } else { (1, pos[a - split]) };
                        monomials.push(FMonomial { vector: v.clone(), sign: Sign::Minus, group, position });
                    }
                }
                let e_nodes: Vec<usize> = epaths[root - 1].iter().map(|&k| glued.right_node(k)).collect();
                let halves = if mode == BorelMode::Doubled {
                    // f⁺ keeps the monomials past the glued node, prefixed by the left row
                    let minus = left.polynomial(&torus);
                    let plus = full.polynomial(&torus).sub(&minus)?;
                    Some((minus, plus))
                } else {
                    None
                };
                generators.insert(
                    root,
                    Generators {
                        f: full.polynomial(&torus),
                        k: full.monomial(&torus),
                        e_minus: PathPolynomial::open(e_nodes).polynomial(&torus),
                        monomials,
                        halves,
                    },
                );
            }
            let words = if mode == BorelMode::Doubled {
                vec![word.clone()]
            } else {
                vec![word.reverse_word(), word.reverse_word()]
            };
            Ok(BorelRealization { mode, word: word.clone(), seed: glued.seed, torus, words, generators })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_data::{validate_reduced_word, RootDatum, ShortRootConvention};

    fn word(t: LieType, n: usize, c: ShortRootConvention, w: &[usize]) -> ReducedWord {
        validate_reduced_word(&RootDatum::new(t, n, c).unwrap(), w).unwrap()
    }

    #[test]
    fn a1_basic() {
        let w = word(LieType::A, 1, ShortRootConvention::Bourbaki, &[1]);
        let q = build_basic_seed(&w);
        assert_eq!(q.seed.len(), 2);
        assert!(q.seed.is_frozen(0) && q.seed.is_frozen(1));
        assert_eq!(q.seed.w(0, 1), Rat::from_integer(1));
    }

    #[test]
    fn a3_paths() {
        let w = word(LieType::A, 3, ShortRootConvention::Bourbaki, &[1, 2, 1, 3, 2, 1]);
        let q = build_basic_seed(&w);
        assert_eq!(f_path(&q, 1).nodes, vec![0, 2, 5, 6]);
        let reg = EPathRegistry::default();
        let e2 = e_path(&q, 2, &reg).unwrap();
        assert_eq!(e2.nodes, vec![7, 5]);
        let t = Torus::of_seed(&q.seed);
        let expected = TorusElement::x(&t, &["8"]).unwrap().add(&TorusElement::x(&t, &["6", "8"]).unwrap()).unwrap();
        assert_eq!(e2.polynomial(&t), expected);
    }

    #[test]
    fn search_agrees_with_tables() {
        let a3 = word(LieType::A, 3, ShortRootConvention::Bourbaki, &[1, 2, 1, 3, 2, 1]);
        let b3 = word(LieType::B, 3, ShortRootConvention::Paper, &[1, 2, 1, 2, 3, 2, 1, 2, 3]);
        for w in [a3, b3] {
            let q = build_basic_seed(&w);
            let tab = EPathRegistry::tabulated().resolve(&w, &q.seed).unwrap().1;
            let found = SearchEPaths::default().paths(&w, &q.seed).unwrap();
            assert_eq!(tab, found);
        }
    }

    #[test]
    fn registry_lookup() {
        let reg = EPathRegistry::default();
        assert_eq!(reg.names(), vec!["bundled", "a_standard", "search"]);
        assert!(reg.get("nope").is_err());
        let b2 = word(LieType::B, 2, ShortRootConvention::Paper, &[1, 2, 1, 2]);
        let q = build_basic_seed(&b2);
        assert!(EPathRegistry::tabulated().resolve(&b2, &q.seed).is_err());
        let (src, p) = reg.resolve(&b2, &q.seed).unwrap();
        assert_eq!(src, "search");
        assert_eq!(p, vec![vec![5, 4, 3], vec![6]]);
    }

    #[test]
    fn a1_doubled_generators() {
        let w = word(LieType::A, 1, ShortRootConvention::Bourbaki, &[1]);
        let g = glue_flip(&w);
        let t = Torus::of_seed(&g.seed);
        let f = PathPolynomial::closed(g.concatenated_row(1)).polynomial(&t);
        let b1 = labels::bar(1);
        let expected = TorusElement::x(&t, &["1"]).unwrap().add(&TorusElement::x(&t, &["1", &b1]).unwrap()).unwrap();
        assert_eq!(f, expected);
    }
}
