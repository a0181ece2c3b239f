//! Cluster seeds `(I, I₀, B, D)`, their quivers, mutation and amalgamation.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie_data::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub label: String,
    pub frozen: bool,
    pub d: Rat,
}

impl Node {
    pub fn new(label: impl Into<String>, frozen: bool, d: Rat) -> Self {
        Node { label: label.into(), frozen, d }
    }
}

/// A cluster seed. `b[i][j]` is the exchange matrix; the skew form is
/// `w_ij = d_i b_ij`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterSeed {
    nodes: Vec<Node>,
    b: Vec<Vec<Rat>>,
}

fn is_half_integer(x: Rat) -> bool {
    (x * 2).is_integer()
}

impl ClusterSeed {
    pub fn new(nodes: Vec<Node>, b: Vec<Vec<Rat>>) -> Result<Self> {
        let n = nodes.len();
        if b.len() != n || b.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidSeed("exchange matrix has the wrong shape".into()));
        }
        let mut seen = BTreeSet::new();
        for node in &nodes {
            if !seen.insert(node.label.as_str()) {
                return Err(Error::DuplicateLabel(node.label.clone()));
            }
            if !node.d.is_positive() {
                return Err(Error::InvalidSeed(format!("multiplier of {} must be positive", node.label)));
            }
        }
        for i in 0..n {
            if !b[i][i].is_zero() {
                return Err(Error::InvalidSeed(format!("diagonal entry at {}", nodes[i].label)));
            }
            for j in 0..n {
                let (li, lj) = (&nodes[i].label, &nodes[j].label);
                if nodes[i].d * b[i][j] != -(nodes[j].d * b[j][i]) {
                    return Err(Error::InvalidSeed(format!("DB is not skew-symmetric at ({li},{lj})")));
                }
                let both_frozen = nodes[i].frozen && nodes[j].frozen;
                if both_frozen && !is_half_integer(b[i][j]) {
                    return Err(Error::InvalidSeed(format!("b({li},{lj}) is not a half-integer")));
                }
                if !both_frozen && !b[i][j].is_integer() {
                    return Err(Error::InvalidSeed(format!("b({li},{lj}) must be an integer")));
                }
            }
        }
        Ok(ClusterSeed { nodes, b })
    }

    /// Build a seed from a list of skew-form entries `w_ij` (the `w_ji` entry
    /// is implied).
    pub fn from_skew_form(nodes: Vec<Node>, entries: &[(usize, usize, Rat)]) -> Result<Self> {
        let n = nodes.len();
        let mut b = vec![vec![Rat::zero(); n]; n];
        for &(i, j, w) in entries {
            b[i][j] += w / nodes[i].d;
            b[j][i] -= w / nodes[j].d;
        }
        ClusterSeed::new(nodes, b)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &Node {
        &self.nodes[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.nodes[i].label
    }

    pub fn labels(&self) -> Vec<String> {
        self.nodes.iter().map(|n| n.label.clone()).collect()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        let canon = crate::labels::canonical(label);
        self.nodes
            .iter()
            .position(|n| n.label == canon)
            .ok_or_else(|| Error::UnknownNode(label.to_string()))
    }

    pub fn d(&self, i: usize) -> Rat {
        self.nodes[i].d
    }

    pub fn is_frozen(&self, i: usize) -> bool {
        self.nodes[i].frozen
    }

    pub fn b(&self, i: usize, j: usize) -> Rat {
        self.b[i][j]
    }

    pub fn exchange_matrix(&self) -> &[Vec<Rat>] {
        &self.b
    }

    pub fn w(&self, i: usize, j: usize) -> Rat {
        self.nodes[i].d * self.b[i][j]
    }

    pub fn skew_form(&self) -> Vec<Vec<Rat>> {
        (0..self.len()).map(|i| (0..self.len()).map(|j| self.w(i, j)).collect()).collect()
    }

    pub fn mutate(&self, k: usize) -> Result<ClusterSeed> {
        mutate_seed(self, k)
    }

    pub fn mutate_at(&self, label: &str) -> Result<ClusterSeed> {
        mutate_seed(self, self.index_of(label)?)
    }

    /// Rename every node through `f`.
    pub fn relabel(&self, f: impl Fn(&str) -> String) -> Result<ClusterSeed> {
        let nodes = self.nodes.iter().map(|n| Node { label: f(&n.label), ..n.clone() }).collect();
        ClusterSeed::new(nodes, self.b.clone())
    }

    pub fn quiver(&self) -> QuiverView {
        QuiverView::of(self)
    }
}

/// Matrix mutation at an unfrozen node:
/// `b'_ij = -b_ij` if `k ∈ {i,j}`, else `b_ij + (|b_ik| b_kj + b_ik |b_kj|)/2`.
pub fn mutate_seed(seed: &ClusterSeed, k: usize) -> Result<ClusterSeed> {
    if k >= seed.len() {
        return Err(Error::UnknownNode(format!("#{k}")));
    }
    if seed.is_frozen(k) {
        return Err(Error::MutationAtFrozen(seed.label(k).to_string()));
    }
    let n = seed.len();
    let b = &seed.b;
    let mut out = b.clone();
    for i in 0..n {
        for j in 0..n {
            out[i][j] = if i == k || j == k {
                -b[i][j]
            } else {
                b[i][j] + (b[i][k].abs() * b[k][j] + b[i][k] * b[k][j].abs()) / 2
            };
        }
    }
    Ok(ClusterSeed { nodes: seed.nodes.clone(), b: out })
}

/// Mutation carried out on arrows: compose every path `i → k → j` into an
/// arrow `i → j` of weight `w_ik w_kj / d_k`, reverse the arrows at `k`, then
/// cancel 2-cycles. Returns the resulting skew form.
pub fn mutate_by_quiver_rule(seed: &ClusterSeed, k: usize) -> Result<Vec<Vec<Rat>>> {
    if seed.is_frozen(k) {
        return Err(Error::MutationAtFrozen(seed.label(k).to_string()));
    }
    let n = seed.len();
    let mut arrows: Vec<(usize, usize, Rat)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let w = seed.w(i, j);
            if w.is_positive() {
                arrows.push((i, j, w));
            }
        }
    }
    let into_k: Vec<_> = arrows.iter().filter(|a| a.1 == k).cloned().collect();
    let out_of_k: Vec<_> = arrows.iter().filter(|a| a.0 == k).cloned().collect();
    let mut composed = Vec::new();
    for &(i, _, wik) in &into_k {
        for &(_, j, wkj) in &out_of_k {
            composed.push((i, j, wik * wkj / seed.d(k)));
        }
    }
    let mut next: Vec<(usize, usize, Rat)> = arrows
        .into_iter()
        .map(|(s, t, w)| if s == k || t == k { (t, s, w) } else { (s, t, w) })
        .collect();
    next.extend(composed);
    let mut w = vec![vec![Rat::zero(); n]; n];
    for (s, t, x) in next {
        w[s][t] += x;
        w[t][s] -= x;
    }
    Ok(w)
}

/// Result of gluing two seeds.
#[derive(Clone, Debug)]
pub struct Amalgam {
    pub seed: ClusterSeed,
    /// For each node of the glued seed: its index in the first and/or second
    /// constituent.
    pub origin: Vec<(Option<usize>, Option<usize>)>,
}

/// Glue `second` onto `first` along frozen pairs `(label in first, label in
/// second)`. Merged nodes keep the label from `second` and become unfrozen;
/// exchange-matrix entries of merged nodes add up.
pub fn amalgamate(first: &ClusterSeed, second: &ClusterSeed, gluing: &[(String, String)]) -> Result<Amalgam> {
    let mut a_to_b: HashMap<usize, usize> = HashMap::new();
    let mut used_b = BTreeSet::new();
    for (la, lb) in gluing {
        let ia = first.index_of(la)?;
        let ib = second.index_of(lb)?;
        if !first.is_frozen(ia) {
            return Err(Error::GluingUnfrozen(la.clone()));
        }
        if !second.is_frozen(ib) {
            return Err(Error::GluingUnfrozen(lb.clone()));
        }
        if a_to_b.insert(ia, ib).is_some() {
            return Err(Error::GluingNotInjective(la.clone()));
        }
        if !used_b.insert(ib) {
            return Err(Error::GluingNotInjective(lb.clone()));
        }
        if first.d(ia) != second.d(ib) {
            return Err(Error::MultiplierMismatch(la.clone(), lb.clone()));
        }
    }
    let mut nodes = Vec::new();
    let mut origin = Vec::new();
    let mut a_index = vec![0usize; first.len()];
    for ia in 0..first.len() {
        if !a_to_b.contains_key(&ia) {
            a_index[ia] = nodes.len();
            nodes.push(first.node(ia).clone());
            origin.push((Some(ia), None));
        }
    }
    let b_to_a: HashMap<usize, usize> = a_to_b.iter().map(|(&a, &b)| (b, a)).collect();
    let mut b_index = vec![0usize; second.len()];
    for ib in 0..second.len() {
        b_index[ib] = nodes.len();
        let mut node = second.node(ib).clone();
        match b_to_a.get(&ib) {
            Some(&ia) => {
                node.frozen = false;
                a_index[ia] = nodes.len();
                origin.push((Some(ia), Some(ib)));
            }
            None => origin.push((None, Some(ib))),
        }
        nodes.push(node);
    }
    let n = nodes.len();
    let mut b = vec![vec![Rat::zero(); n]; n];
    for i in 0..first.len() {
        for j in 0..first.len() {
            b[a_index[i]][a_index[j]] += first.b(i, j);
        }
    }
    for i in 0..second.len() {
        for j in 0..second.len() {
            b[b_index[i]][b_index[j]] += second.b(i, j);
        }
    }
    let seed = ClusterSeed::new(nodes, b)?;
    Ok(Amalgam { seed, origin })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArrowStyle {
    Thick,
    Thin,
    Dashed,
}

impl std::str::FromStr for ArrowStyle {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "thick" | "vthick" => Ok(ArrowStyle::Thick),
            "thin" => Ok(ArrowStyle::Thin),
            "dashed" => Ok(ArrowStyle::Dashed),
            other => Err(Error::Parse(format!("unknown arrow style '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Arrow {
    pub source: String,
    pub target: String,
    pub weight: Rat,
    pub style: ArrowStyle,
    pub count: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeStyle {
    pub label: String,
    pub frozen: bool,
    pub short: bool,
}

/// Arrow picture of a seed, derived from the skew form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverView {
    pub nodes: Vec<NodeStyle>,
    pub arrows: Vec<Arrow>,
}

/// Weight of a single full arrow between nodes of the given multipliers.
fn full_weight(di: Rat, dj: Rat) -> Rat {
    if di == dj {
        di
    } else {
        di.max(dj)
    }
}

impl QuiverView {
    pub fn of(seed: &ClusterSeed) -> QuiverView {
        let nodes = seed
            .nodes()
            .iter()
            .map(|n| NodeStyle { label: n.label.clone(), frozen: n.frozen, short: n.d < Rat::one() })
            .collect();
        let mut arrows = Vec::new();
        for i in 0..seed.len() {
            for j in 0..seed.len() {
                let w = seed.w(i, j);
                if !w.is_positive() {
                    continue;
                }
                let (di, dj) = (seed.d(i), seed.d(j));
                let full = full_weight(di, dj);
                let solid_style = if di == dj && di < Rat::one() { ArrowStyle::Thin } else { ArrowStyle::Thick };
                let m = w / full;
                let whole = m.floor();
                let rest = m - whole;
                let mk = |weight, style, count| Arrow {
                    source: seed.label(i).to_string(),
                    target: seed.label(j).to_string(),
                    weight,
                    style,
                    count,
                };
                if whole.is_positive() {
                    arrows.push(mk(whole * full, solid_style, whole.to_integer() as u32));
                }
                if rest == Rat::new(1, 2) {
                    arrows.push(mk(rest * full, ArrowStyle::Dashed, 1));
                } else if !rest.is_zero() {
                    arrows.push(mk(rest * full, ArrowStyle::Dashed, 0));
                }
            }
        }
        arrows.sort();
        QuiverView { nodes, arrows }
    }

    /// Multiset of drawn arrows as `(source, target, style)`; an arrow of
    /// multiplicity `m` appears `m` times.
    pub fn edge_multiset(&self) -> BTreeMap<(String, String, ArrowStyle), u32> {
        let mut out = BTreeMap::new();
        for a in &self.arrows {
            *out.entry((a.source.clone(), a.target.clone(), a.style)).or_insert(0) += a.count.max(1);
        }
        out
    }

    pub fn frozen(&self) -> BTreeSet<String> {
        self.nodes.iter().filter(|n| n.frozen).map(|n| n.label.clone()).collect()
    }

    pub fn edge_count(&self) -> u32 {
        self.arrows.iter().map(|a| a.count.max(1)).sum()
    }
}

pub fn export_dot(seed: &ClusterSeed) -> String {
    let view = seed.quiver();
    let mut s = String::from("digraph quiver {\n");
    for n in &view.nodes {
        let shape = if n.frozen { "box" } else { "circle" };
        let extra = if n.short { ", peripheries=1, style=dotted" } else { "" };
        let _ = writeln!(s, "  \"{}\" [shape={shape}{extra}];", n.label);
    }
    for a in &view.arrows {
        let style = match a.style {
            ArrowStyle::Thick => "penwidth=2",
            ArrowStyle::Thin => "penwidth=1",
            ArrowStyle::Dashed => "style=dashed",
        };
        for _ in 0..a.count.max(1) {
            let _ = writeln!(
                s,
                "  \"{}\" -> \"{}\" [{style}, label=\"{}\"];",
                a.source,
                a.target,
                a.weight / a.count.max(1) as i64
            );
        }
    }
    s.push_str("}\n");
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeJson {
    pub id: String,
    pub frozen: bool,
    pub d: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedJson {
    pub nodes: Vec<NodeJson>,
    #[serde(rename = "B")]
    pub b: Vec<(String, String, String)>,
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    s.trim().parse::<Rat>().map_err(|_| Error::Parse(format!("bad rational '{s}'")))
}

impl ClusterSeed {
    pub fn to_json_value(&self) -> SeedJson {
        let nodes = self
            .nodes
            .iter()
            .map(|n| NodeJson { id: n.label.clone(), frozen: n.frozen, d: n.d.to_string() })
            .collect();
        let mut b = Vec::new();
        for i in 0..self.len() {
            for j in 0..self.len() {
                if !self.b[i][j].is_zero() {
                    b.push((self.label(i).to_string(), self.label(j).to_string(), self.b[i][j].to_string()));
                }
            }
        }
        SeedJson { nodes, b }
    }

    pub fn from_json_value(doc: &SeedJson) -> Result<ClusterSeed> {
        let mut nodes = Vec::new();
        let mut index = HashMap::new();
        for (k, n) in doc.nodes.iter().enumerate() {
            let label = crate::labels::canonical(&n.id);
            index.insert(label.clone(), k);
            nodes.push(Node { label, frozen: n.frozen, d: parse_rat(&n.d)? });
        }
        let size = nodes.len();
        let mut b = vec![vec![Rat::zero(); size]; size];
        for (i, j, v) in &doc.b {
            let lookup = |l: &str| {
                index
                    .get(&crate::labels::canonical(l))
                    .copied()
                    .ok_or_else(|| Error::UnknownNode(l.to_string()))
            };
            b[lookup(i)?][lookup(j)?] = parse_rat(v)?;
        }
        ClusterSeed::new(nodes, b)
    }
}

pub fn export_json(seed: &ClusterSeed) -> String {
    serde_json::to_string_pretty(&seed.to_json_value()).expect("seed serializes")
}

pub fn import_seed(json: &str) -> Result<ClusterSeed> {
    let doc: SeedJson = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    ClusterSeed::from_json_value(&doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    fn a1_glued() -> ClusterSeed {
        let one = Rat::one();
        let nodes = vec![
            Node::new("1", true, one),
            Node::new(crate::labels::bar(1), false, one),
            Node::new(crate::labels::bar(2), true, one),
        ];
        ClusterSeed::from_skew_form(nodes, &[(0, 1, one), (1, 2, one)]).unwrap()
    }

    #[test]
    fn a1_flip_quiver() {
        let s = a1_glued().mutate(1).unwrap();
        let e: Vec<_> = s.quiver().edge_multiset().into_keys().map(|(a, b, _)| (a, b)).collect();
        let b1 = crate::labels::bar(1);
        let b2 = crate::labels::bar(2);
        assert_eq!(e.len(), 3);
        assert!(e.contains(&("1".to_string(), b2.clone())));
        assert!(e.contains(&(b2, b1.clone())));
        assert!(e.contains(&(b1, "1".to_string())));
    }

    #[test]
    fn three_cycle_matches_formula() {
        let one = Rat::one();
        let nodes = (0..3).map(|i| Node::new(i.to_string(), false, one)).collect();
        let s = ClusterSeed::from_skew_form(nodes, &[(0, 1, one), (1, 2, one), (2, 0, one)]).unwrap();
        let m = s.mutate(1).unwrap();
        assert_eq!(m.b(0, 2), Rat::zero());
        assert_eq!(m.b(0, 1), -one);
        assert_eq!(m.skew_form(), mutate_by_quiver_rule(&s, 1).unwrap());
        assert_eq!(m.mutate(1).unwrap(), s);
    }

    #[test]
    fn short_node_between_long_nodes() {
        let one = Rat::one();
        let nodes = vec![Node::new("a", false, one), Node::new("k", false, r(1, 2)), Node::new("c", false, one)];
        // a -> k -> c with single (full) arrows
        let s = ClusterSeed::from_skew_form(nodes, &[(0, 1, one), (1, 2, one)]).unwrap();
        let m = s.mutate(1).unwrap();
        // composed weight is 1·1/(1/2) = 2: a double arrow a -> c
        assert_eq!(m.w(0, 2), Rat::from_integer(2));
        assert_eq!(m.skew_form(), mutate_by_quiver_rule(&s, 1).unwrap());
    }

    #[test]
    fn frozen_mutation_rejected() {
        assert_eq!(a1_glued().mutate(0), Err(Error::MutationAtFrozen("1".into())));
    }

    #[test]
    fn gluing_two_a1_triangles() {
        let one = Rat::one();
        let left = ClusterSeed::from_skew_form(
            vec![Node::new("1", true, one), Node::new("2", true, one)],
            &[(0, 1, one)],
        )
        .unwrap();
        let right = left.relabel(|l| crate::labels::bar(l.parse().unwrap())).unwrap();
        let glued = amalgamate(&left, &right, &[("2".into(), crate::labels::bar(1))]).unwrap();
        assert_eq!(glued.seed, a1_glued());
        assert_eq!(glued.origin[1], (Some(1), Some(0)));
        let empty = amalgamate(&left, &right, &[]).unwrap();
        assert_eq!(empty.seed.len(), 4);
    }

    #[test]
    fn gluing_errors() {
        let one = Rat::one();
        let a = ClusterSeed::from_skew_form(
            vec![Node::new("1", true, one), Node::new("2", true, r(1, 2))],
            &[(0, 1, r(1, 2))],
        )
        .unwrap();
        let b = a.relabel(|l| format!("{l}x")).unwrap();
        assert!(matches!(
            amalgamate(&a, &b, &[("1".into(), "2x".into())]),
            Err(Error::MultiplierMismatch(..))
        ));
        assert!(matches!(
            amalgamate(&a, &b, &[("1".into(), "1x".into()), ("1".into(), "1x".into())]),
            Err(Error::GluingNotInjective(..))
        ));
    }

    #[test]
    fn json_and_dot() {
        let s = a1_glued();
        assert_eq!(import_seed(&export_json(&s)).unwrap(), s);
        let dot = export_dot(&s);
        assert_eq!(dot.matches("shape=box").count(), 2);
        assert_eq!(dot.matches("->").count(), 2);
        assert!(import_seed("{").is_err());
    }

    #[test]
    fn invalid_seeds_rejected() {
        let one = Rat::one();
        let nodes = vec![Node::new("1", false, one), Node::new("2", false, one)];
        assert!(ClusterSeed::from_skew_form(nodes.clone(), &[(0, 1, r(1, 2))]).is_err());
        let bad_b = vec![vec![Rat::zero(), one], vec![one, Rat::zero()]];
        assert!(ClusterSeed::new(nodes, bad_b).is_err());
    }
}
