//! Quantum mutation: monomial transforms, conjugation by quantum
//! dilogarithms, factorization of path polynomials, the flip operators
//! `Φ₁`/`Φ₃` and their verification.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Signed;
use serde::Serialize;

use crate::basic_quiver::{glue_flip, glue_tensor_square, EPathRegistry, GluedKind, GluedQuiver, PathPolynomial};
use crate::error::{Error, Result};
use crate::lie_data::{Rat, ReducedWord};
use crate::qtorus::{binomial, right_divide, right_divide_general, LatticeMap, LatticeVector, QLaurent, Torus, TorusElement};
use crate::seed_quiver::ClusterSeed;

/// Which side of the conjugation the dilogarithm sits on:
/// `G` is `x ↦ g(X) x g(X)*`, `GStar` is its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Direction {
    G,
    GStar,
}

impl Direction {
    fn sign(self) -> i64 {
        match self {
            Direction::G => 1,
            Direction::GStar => -1,
        }
    }

    pub fn inverse(self) -> Direction {
        match self {
            Direction::G => Direction::GStar,
            Direction::GStar => Direction::G,
        }
    }
}

/// `g_{b_*}(X_η)` with `b_* = √d · b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DilogFactor {
    pub argument: LatticeVector,
    pub flavor: Rat,
    pub direction: Direction,
}

impl DilogFactor {
    pub fn render(&self, torus: &Torus) -> String {
        format!("g[{}]({})", self.flavor, torus.render_vector(&self.argument))
    }
}

/// `num · den⁻¹`, kept as a pair so conjugation can act on both sides.
#[derive(Clone, Debug, PartialEq)]
pub struct FracElement {
    pub num: TorusElement,
    pub den: TorusElement,
}

impl FracElement {
    pub fn from_poly(p: TorusElement) -> Self {
        let den = TorusElement::one(p.torus());
        FracElement { num: p, den }
    }

    pub fn torus(&self) -> &Arc<Torus> {
        self.num.torus()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Cancel binomials `1 + c X_η` dividing both numerator and denominator
    /// on the right, trying `hints` in order until none applies.
    pub fn simplify(&mut self, hints: &[(LatticeVector, QLaurent)]) {
        let mut changed = true;
        while changed && !self.den.is_one() {
            changed = false;
            for (eta, c) in hints {
                let Ok(d) = right_divide(&self.den, c, eta) else { continue };
                let Ok(n) = right_divide(&self.num, c, eta) else { continue };
                self.num = n;
                self.den = d;
                changed = true;
                break;
            }
        }
    }

    /// The element as a polynomial, dividing out the denominator exactly.
    pub fn into_polynomial(self) -> Result<TorusElement> {
        if self.den.is_one() {
            return Ok(self.num);
        }
        right_divide_general(&self.num, &self.den).ok_or(Error::NotExactlyDivisible)
    }

    /// Apply a lattice map to numerator and denominator (a torus morphism
    /// when the map preserves forms).
    pub fn map_lattice(&self, map: &LatticeMap, target: &Arc<Torus>) -> FracElement {
        FracElement { num: self.num.map_lattice(map, target), den: self.den.map_lattice(map, target) }
    }

    /// Whether `num · den⁻¹ = p`, tested as `p · den = num`.
    pub fn equals_poly(&self, p: &TorusElement) -> Result<bool> {
        Ok(p.mul(&self.den)? == self.num)
    }
}

impl fmt::Display for FracElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) · ({})⁻¹", self.num, self.den)
        }
    }
}

/// `m(λ) = -(λ,η)/d`, required to be an integer.
fn commutation_exponent(torus: &Torus, lambda: &LatticeVector, eta: &LatticeVector, d: Rat) -> Result<i64> {
    let m = -torus.pairing(lambda, eta) / d;
    if !m.is_integer() {
        return Err(Error::NonIntegerCommutation(format!(
            "({}, {}) / {d}",
            torus.render_vector(lambda),
            torus.render_vector(eta)
        )));
    }
    Ok(m.to_integer())
}

/// Conjugate by `g_{b_*}(X_η)`, `q_* = q^d`.
///
/// Direction `G` sends `X_λ` to `X_λ Π_{j=1..m}(1 + q_*^{-(2j-1)} X_η)` for
/// `m > 0` and to `X_λ Π_{j=1..|m|}(1 + q_*^{2j-1} X_η)⁻¹` for `m < 0`;
/// `GStar` is the same rule with `q_* → q_*⁻¹`, `m → -m`. Numerator and
/// denominator are brought over the common denominator
/// `Π_{j=1..M}(1 + q_*^{2j-1} X_η)`, which then cancels.
pub fn ad_dilog_monomial(target: &FracElement, eta: &LatticeVector, d: Rat, direction: Direction) -> Result<FracElement> {
    let torus = target.torus().clone();
    let s = direction.sign();
    let e = d * Rat::from_integer(s);
    let mut big_m = 0i64;
    let mut exps: Vec<Vec<(LatticeVector, QLaurent, i64)>> = Vec::new();
    for part in [&target.num, &target.den] {
        let mut v = Vec::new();
        for (lam, c) in part.terms() {
            let m = s * commutation_exponent(&torus, lam, eta, d)?;
            big_m = big_m.max(-m);
            v.push((lam.clone(), c.clone(), m));
        }
        exps.push(v);
    }
    let odd = |j: i64| Rat::from_integer(2 * j - 1);
    let plus = |j: i64| binomial(&torus, QLaurent::q_pow(-e * odd(j)), eta);
    let minus = |j: i64| binomial(&torus, QLaurent::q_pow(e * odd(j)), eta);
    let mut tails: HashMap<i64, TorusElement> = HashMap::new();
    let mut tail = |from: i64| -> TorusElement {
        tails
            .entry(from)
            .or_insert_with(|| {
                let mut t = TorusElement::one(&torus);
                for j in from..=big_m {
                    t = t.mul(&minus(j)).expect("same torus");
                }
                t
            })
            .clone()
    };
    let mut out = Vec::new();
    for terms in exps {
        let mut acc = TorusElement::zero(&torus);
        for (lam, c, m) in terms {
            let mut poly = TorusElement::term(&torus, lam, c);
            if m > 0 {
                for j in 1..=m {
                    poly = poly.mul(&plus(j))?;
                }
                poly = poly.mul(&tail(1))?;
            } else {
                poly = poly.mul(&tail(-m + 1))?;
            }
            acc = acc.add(&poly)?;
        }
        out.push(acc);
    }
    let den = out.pop().expect("two parts");
    let num = out.pop().expect("two parts");
    let mut frac = FracElement { num, den };
    let hints: Vec<_> = (1..=big_m).map(|j| (eta.clone(), QLaurent::q_pow(e * odd(j)))).collect();
    frac.simplify(&hints);
    Ok(frac)
}

/// `Ad_{F_1 ⋯ F_r}(x)`: the rightmost factor acts first.
pub fn apply_factors(target: &FracElement, factors: &[DilogFactor]) -> Result<FracElement> {
    let mut hints: Vec<(LatticeVector, QLaurent)> = Vec::new();
    let mut cur = target.clone();
    for f in factors.iter().rev() {
        cur = ad_dilog_monomial(&cur, &f.argument, f.flavor, f.direction)?;
        let e = f.flavor * Rat::from_integer(f.direction.sign());
        for j in 1..=4 {
            let h = (f.argument.clone(), QLaurent::q_pow(e * Rat::from_integer(2 * j - 1)));
            if !hints.contains(&h) {
                hints.push(h);
            }
        }
        cur.simplify(&hints);
    }
    Ok(cur)
}

/// Lattice map `L_k` of the monomial part of mutation at `k`, from the
/// lattice of `μ_k(seed)` to that of `seed`: `ê_k ↦ -e_k`,
/// `ê_i ↦ e_i + [b_ki]_+ e_k`. It is an involution.
pub fn monomial_transform(seed: &ClusterSeed, k: usize) -> Result<LatticeMap> {
    if seed.is_frozen(k) {
        return Err(Error::MutationAtFrozen(seed.label(k).to_string()));
    }
    let cols = (0..seed.len())
        .map(|i| {
            if i == k {
                LatticeVector::unit(k).scale(-1)
            } else {
                let b = seed.b(k, i);
                let mut v = LatticeVector::unit(i);
                if b.is_positive() {
                    v.add_at(k, b.to_integer());
                }
                v
            }
        })
        .collect();
    Ok(LatticeMap::from_columns(cols))
}

/// `μ_k^q = Ad_{g*(X_k)} ∘ μ'_k`, from the torus of `μ_k(seed)` to that of
/// `seed`.
#[derive(Clone, Debug)]
pub struct QuantumMutation {
    pub source: ClusterSeed,
    pub target: ClusterSeed,
    pub node: usize,
    pub lattice: LatticeMap,
}

impl QuantumMutation {
    pub fn new(seed: &ClusterSeed, k: usize) -> Result<Self> {
        let lattice = monomial_transform(seed, k)?;
        Ok(QuantumMutation { source: seed.clone(), target: seed.mutate(k)?, node: k, lattice })
    }

    /// Image of an element of the mutated torus in the original torus.
    pub fn apply(&self, x: &FracElement) -> Result<FracElement> {
        let torus = Torus::of_seed(&self.source);
        let pushed = x.map_lattice(&self.lattice, &torus);
        ad_dilog_monomial(&pushed, &LatticeVector::unit(self.node), self.source.d(self.node), Direction::GStar)
    }
}

/// Split `g(m_1 + ⋯ + m_r)` of a q-commuting chain (longest prefix first)
/// into monomial factors. Consecutive monomials with `-(m_a, m_{a+1}) = d`
/// split as `g(m_a) g(m_{a+1})`; when it equals `2d` the doubly-laced rule
/// inserts `g_{2d}(m_a + m_{a+1})` between them.
pub fn dilog_factorize(torus: &Torus, chain: &[LatticeVector], d: Rat) -> Result<Vec<DilogFactor>> {
    let mk = |v: &LatticeVector, flavor| DilogFactor { argument: v.clone(), flavor, direction: Direction::G };
    let mut out = Vec::new();
    let Some(first) = chain.first() else { return Ok(out) };
    out.push(mk(first, d));
    for pair in chain.windows(2) {
        let c = -torus.pairing(&pair[0], &pair[1]);
        if c == d {
            out.push(mk(&pair[1], d));
        } else if c == d * 2 {
            out.push(mk(&pair[0].add(&pair[1]), d * 2));
            out.push(mk(&pair[1], d));
        } else {
            return Err(Error::ChainNotQSquared(torus.render_vector(&pair[0]), torus.render_vector(&pair[1])));
        }
    }
    Ok(out)
}

/// Factorize the polynomial of an open path (prefixes emitted longest first).
pub fn dilog_factorize_path(torus: &Torus, path: &PathPolynomial, d: Rat) -> Result<Vec<DilogFactor>> {
    let mut chain = path.prefixes();
    chain.reverse();
    dilog_factorize(torus, &chain, d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PhiKind {
    Phi1,
    Phi3,
}

impl std::str::FromStr for PhiKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "phi1" => Ok(PhiKind::Phi1),
            "phi3" => Ok(PhiKind::Phi3),
            other => Err(Error::UnknownStrategy { kind: "flip operator", name: other.to_string() }),
        }
    }
}

impl fmt::Display for PhiKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PhiKind::Phi1 => "phi1",
            PhiKind::Phi3 => "phi3",
        })
    }
}

/// Shape of a flip operator: the glued quiver it lives on, the order of the
/// outer factors and how much of the right F-path each one absorbs.
pub trait PhiShape: Send + Sync {
    fn kind(&self) -> PhiKind;
    fn glue(&self, word: &ReducedWord) -> GluedQuiver;
    fn outer_order(&self, n_letters: usize) -> Vec<usize>;
    /// Right F-path prefix length for the `j`-th of `r` occurrences.
    fn right_prefix(&self, j: usize, r: usize) -> usize;
}

struct Phi1Shape;
struct Phi3Shape;

impl PhiShape for Phi1Shape {
    fn kind(&self) -> PhiKind {
        PhiKind::Phi1
    }
    fn glue(&self, word: &ReducedWord) -> GluedQuiver {
        glue_flip(word)
    }
    fn outer_order(&self, n: usize) -> Vec<usize> {
        (1..=n).collect()
    }
    fn right_prefix(&self, j: usize, r: usize) -> usize {
        r - j + 1
    }
}

impl PhiShape for Phi3Shape {
    fn kind(&self) -> PhiKind {
        PhiKind::Phi3
    }
    fn glue(&self, word: &ReducedWord) -> GluedQuiver {
        glue_tensor_square(word)
    }
    fn outer_order(&self, n: usize) -> Vec<usize> {
        (1..=n).rev().collect()
    }
    fn right_prefix(&self, j: usize, _r: usize) -> usize {
        j
    }
}

pub struct PhiRegistry {
    shapes: HashMap<String, Box<dyn PhiShape>>,
}

impl Default for PhiRegistry {
    fn default() -> Self {
        let mut shapes: HashMap<String, Box<dyn PhiShape>> = HashMap::new();
        shapes.insert("phi1".into(), Box::new(Phi1Shape));
        shapes.insert("phi3".into(), Box::new(Phi3Shape));
        PhiRegistry { shapes }
    }
}

impl PhiRegistry {
    pub fn get(&self, name: &str) -> Result<&dyn PhiShape> {
        self.shapes
            .get(name)
            .map(|b| b.as_ref())
            .ok_or_else(|| Error::UnknownStrategy { kind: "flip operator", name: name.to_string() })
    }

    pub fn register(&mut self, name: &str, shape: Box<dyn PhiShape>) {
        self.shapes.insert(name.to_string(), shape);
    }
}

/// One outer factor `g_{b_{i_k}}(e_{i_k}⁻ ⊗ f^{k,±})` before expansion.
#[derive(Clone, Debug)]
pub struct OuterFactor {
    pub position: usize,
    pub root: usize,
    pub flavor: Rat,
    pub chain: Vec<LatticeVector>,
}

#[derive(Clone, Debug)]
pub struct PhiOperator {
    pub kind: PhiKind,
    pub glued: GluedQuiver,
    pub torus: Arc<Torus>,
    pub outer: Vec<OuterFactor>,
    pub factors: Vec<DilogFactor>,
}

impl PhiOperator {
    pub fn render_factors(&self) -> Vec<String> {
        self.factors.iter().map(|f| f.render(&self.torus)).collect()
    }
}

pub fn build_phi(word: &ReducedWord, kind: PhiKind, epaths: &EPathRegistry) -> Result<PhiOperator> {
    let reg = PhiRegistry::default();
    build_phi_with(word, reg.get(&kind.to_string())?, epaths)
}

/// Each outer factor's argument is the chain of E-path prefixes of the left
/// triangle (longest first, glued node under its right label) times the
/// right F-path nodes `2..L`.
pub fn build_phi_with(word: &ReducedWord, shape: &dyn PhiShape, epaths: &EPathRegistry) -> Result<PhiOperator> {
    let glued = shape.glue(word);
    let torus = Torus::of_seed(&glued.seed);
    let (_, paths) = epaths.resolve(&glued.left.word, &glued.left.seed)?;
    let mut outer = Vec::new();
    let mut factors = Vec::new();
    for k in shape.outer_order(word.len()) {
        let root = word.root_of(k);
        let occ = word.occurrences(root);
        let j = occ.iter().position(|&x| x == k).expect("occurrence") + 1;
        let len = shape.right_prefix(j, occ.len());
        let right = glued.right_row(root);
        let tail = LatticeVector::from_indices(right[1..len].iter().copied());
        let e_nodes: Vec<usize> = paths
            .get(root - 1)
            .ok_or(Error::EPathUnavailable(root))?
            .iter()
            .map(|&x| glued.left_node(x))
            .collect();
        let mut chain: Vec<LatticeVector> = PathPolynomial::open(e_nodes).prefixes().into_iter().map(|p| p.add(&tail)).collect();
        chain.reverse();
        let flavor = word.datum().d(root);
        factors.extend(dilog_factorize(&torus, &chain, flavor)?);
        outer.push(OuterFactor { position: k, root, flavor, chain });
    }
    Ok(PhiOperator { kind: shape.kind(), glued, torus, outer, factors })
}

/// Mutation sequence realizing a product of monomial dilogarithms.
#[derive(Clone, Debug)]
pub struct MutationSequence {
    pub labels: Vec<String>,
    pub nodes: Vec<usize>,
    /// Seeds `𝐢_0, …, 𝐢_M`.
    pub seeds: Vec<ClusterSeed>,
    /// Composite monomial transform `M` from the final lattice to the initial one.
    pub map: LatticeMap,
    pub inverse: LatticeMap,
}

impl MutationSequence {
    pub fn final_seed(&self) -> &ClusterSeed {
        self.seeds.last().expect("initial seed present")
    }
}

/// Read factors right to left; each argument must be `M_{j-1}(e_m)` for a
/// unique unfrozen node `m` of the current seed, which is then mutated.
pub fn derive_mutation_sequence(factors: &[DilogFactor], seed: &ClusterSeed) -> Result<MutationSequence> {
    let n = seed.len();
    let mut map = LatticeMap::identity(n);
    let mut inverse = LatticeMap::identity(n);
    let mut seeds = vec![seed.clone()];
    let mut nodes = Vec::new();
    for (step, f) in factors.iter().rev().enumerate() {
        let cur = seeds.last().expect("nonempty");
        let hits: Vec<usize> = (0..n).filter(|&m| !cur.is_frozen(m) && *map.column(m) == f.argument).collect();
        let [m] = hits[..] else { return Err(Error::NoMatchingNode(step + 1)) };
        let l = monomial_transform(cur, m)?;
        map = map.compose(&l);
        inverse = l.compose(&inverse);
        nodes.push(m);
        seeds.push(cur.mutate(m)?);
    }
    let labels = nodes.iter().map(|&m| seed.label(m).to_string()).collect();
    Ok(MutationSequence { labels, nodes, seeds, map, inverse })
}

#[derive(Clone, Debug, Serialize)]
pub struct RootFlipCheck {
    pub root: usize,
    pub polynomial: bool,
    pub kprime: bool,
    pub mutated_path: Option<Vec<String>>,
    pub path: bool,
    pub residual: Option<String>,
}

impl RootFlipCheck {
    pub fn passed(&self) -> bool {
        self.polynomial && self.kprime && self.path
    }
}

#[derive(Clone, Debug)]
pub struct FlipReport {
    pub kind: PhiKind,
    pub roots: Vec<RootFlipCheck>,
    pub sequence: MutationSequence,
}

impl FlipReport {
    pub fn passed(&self) -> bool {
        self.roots.iter().all(RootFlipCheck::passed)
    }
}

/// Prefix vectors `v_1..v_m` of the left F-path (full vector replaced by
/// `K'`) pulled back along `M⁻¹` must differ by unit vectors tracing a
/// directed path in the mutated seed.
fn mutated_path(phi: &PhiOperator, seq: &MutationSequence, root: usize) -> Option<Vec<usize>> {
    let left = PathPolynomial::closed(phi.glued.left_row(root));
    let full = PathPolynomial::closed(phi.glued.concatenated_row(root)).full();
    let mut targets = left.prefixes();
    targets.push(full);
    let mut prev = LatticeVector::zero();
    let mut path = Vec::new();
    for t in targets {
        let hat = seq.inverse.apply(&t);
        let node = hat.sub(&prev).as_unit()?;
        path.push(node);
        prev = hat;
    }
    let fin = seq.final_seed();
    path.windows(2).all(|p| fin.w(p[0], p[1]).is_positive()).then_some(path)
}

/// Check that `Ad_Φ` sends each concatenated F-path polynomial to the left
/// one and fixes `K'`, and that the mutated seed carries the pulled-back path.
pub fn verify_flip(phi: &PhiOperator, seq: &MutationSequence) -> Result<FlipReport> {
    let torus = &phi.torus;
    let mut roots = Vec::new();
    for root in 1..=phi.glued.left.word.rank() {
        let full = PathPolynomial::closed(phi.glued.concatenated_row(root));
        let left = PathPolynomial::closed(phi.glued.left_row(root));
        let image = apply_factors(&FracElement::from_poly(full.polynomial(torus)), &phi.factors)?;
        let expected = left.polynomial(torus);
        let polynomial = image.equals_poly(&expected)?;
        let kimage = apply_factors(&FracElement::from_poly(full.monomial(torus)), &phi.factors)?;
        let kprime = kimage.equals_poly(&full.monomial(torus))?;
        let residual = (!polynomial).then(|| match image.clone().into_polynomial() {
            Ok(p) => p.sub(&expected).map(|r| r.to_string()).unwrap_or_default(),
            Err(_) => image.to_string(),
        });
        let mp = mutated_path(phi, seq, root);
        roots.push(RootFlipCheck {
            root,
            polynomial,
            kprime,
            path: mp.is_some(),
            mutated_path: mp.map(|p| p.iter().map(|&i| phi.glued.seed.label(i).to_string()).collect()),
            residual,
        });
    }
    Ok(FlipReport { kind: phi.kind, roots, sequence: seq.clone() })
}

pub fn glued_kind(kind: PhiKind) -> GluedKind {
    match kind {
        PhiKind::Phi1 => GluedKind::Flip,
        PhiKind::Phi3 => GluedKind::TensorSquare,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labels::bar;
    use num_traits::Zero;
    use crate::lie_data::{validate_reduced_word, LieType, RootDatum, ShortRootConvention};

    fn a_word(n: usize, w: &[usize]) -> ReducedWord {
        validate_reduced_word(&RootDatum::new(LieType::A, n, ShortRootConvention::Bourbaki).unwrap(), w).unwrap()
    }

    #[test]
    fn a1_conjugation() {
        let g = glue_flip(&a_word(1, &[1]));
        let t = Torus::of_seed(&g.seed);
        let b1 = bar(1);
        let b2 = bar(2);
        let f = TorusElement::x(&t, &["1"]).unwrap().add(&TorusElement::x(&t, &["1", &b1]).unwrap()).unwrap();
        let eta = t.vector(&[&b1]).unwrap();
        let r = ad_dilog_monomial(&FracElement::from_poly(f), &eta, Rat::from_integer(1), Direction::G).unwrap();
        assert_eq!(r.into_polynomial().unwrap(), TorusElement::x(&t, &["1"]).unwrap());
        let k = TorusElement::x(&t, &["1", &b1, &b2]).unwrap();
        let r = ad_dilog_monomial(&FracElement::from_poly(k.clone()), &eta, Rat::from_integer(1), Direction::G).unwrap();
        assert_eq!(r.into_polynomial().unwrap(), k);
    }

    #[test]
    fn rank_one_exchange() {
        // uv = q²vu: Ad_{g(v)}(u) = u + q v u
        let one = Rat::from_integer(1);
        let t = Torus::new(vec!["u".into(), "v".into()], vec![vec![Rat::zero(), -one], vec![one, Rat::zero()]], vec![one; 2]);
        let u = TorusElement::x(&t, &["u"]).unwrap();
        let v = TorusElement::x(&t, &["v"]).unwrap();
        let r = ad_dilog_monomial(&FracElement::from_poly(u.clone()), &t.vector(&["v"]).unwrap(), one, Direction::G)
            .unwrap()
            .into_polynomial()
            .unwrap();
        let expected = u.add(&v.mul(&u).unwrap().scale(&QLaurent::q_pow(one))).unwrap();
        assert_eq!(r, expected);
    }

    #[test]
    fn a3_phi1_sequence() {
        let w = a_word(3, &[1, 2, 1, 3, 2, 1]);
        let phi = build_phi(&w, PhiKind::Phi1, &EPathRegistry::default()).unwrap();
        assert_eq!(phi.factors.len(), 10);
        let seq = derive_mutation_sequence(&phi.factors, &phi.glued.seed).unwrap();
        let expected: Vec<String> = ["1b", "2b", "6", "3b", "5", "3", "4b", "5b", "2b", "6b"]
            .iter()
            .map(|s| crate::labels::canonical(s))
            .collect();
        assert_eq!(seq.labels, expected);
        let report = verify_flip(&phi, &seq).unwrap();
        assert!(report.passed(), "{:?}", report.roots);
    }
}
