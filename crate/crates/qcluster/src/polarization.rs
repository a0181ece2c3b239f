//! Cluster variables as exponentials `X_i = e^{2πb L_i}` of linear forms in
//! positions `u_k`, momenta `p_k` and weight parameters `λ_i`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::basic_quiver::{build_basic_seed, glue_flip, glue_tensor_square, GluedQuiver};
use crate::error::{Error, Result};
use crate::lie_data::{Rat, ReducedWord};
use crate::mutation_engine::DilogFactor;
use crate::qtorus::LatticeVector;
use crate::seed_quiver::ClusterSeed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymbolKind {
    U,
    P,
    Lambda,
    One,
}

/// A basis symbol; `copy` 1 is the primed tensor factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    pub kind: SymbolKind,
    pub copy: u8,
    pub index: usize,
}

impl Symbol {
    pub fn u(index: usize, copy: u8) -> Self {
        Symbol { kind: SymbolKind::U, copy, index }
    }

    pub fn p(index: usize, copy: u8) -> Self {
        Symbol { kind: SymbolKind::P, copy, index }
    }

    pub fn lambda(index: usize, copy: u8) -> Self {
        Symbol { kind: SymbolKind::Lambda, copy, index }
    }

    pub fn one() -> Self {
        Symbol { kind: SymbolKind::One, copy: 0, index: 0 }
    }

    pub fn is_central(&self) -> bool {
        matches!(self.kind, SymbolKind::Lambda | SymbolKind::One)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.copy == 1 { "'" } else { "" };
        match self.kind {
            SymbolKind::U => write!(f, "u{}{mark}", self.index),
            SymbolKind::P => write!(f, "p{}{mark}", self.index),
            SymbolKind::Lambda => write!(f, "λ{}{mark}", self.index),
            SymbolKind::One => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct LinearForm {
    coeffs: BTreeMap<Symbol, Rat>,
}

impl LinearForm {
    pub fn zero() -> Self {
        LinearForm::default()
    }

    pub fn term(s: Symbol, c: Rat) -> Self {
        let mut f = LinearForm::zero();
        f.add_at(s, c);
        f
    }

    pub fn add_at(&mut self, s: Symbol, c: Rat) {
        let v = self.coeffs.entry(s).or_insert_with(Rat::zero);
        *v += c;
        if v.is_zero() {
            self.coeffs.remove(&s);
        }
    }

    pub fn get(&self, s: &Symbol) -> Rat {
        self.coeffs.get(s).copied().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Symbol, &Rat)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &LinearForm) -> LinearForm {
        let mut r = self.clone();
        for (s, c) in &o.coeffs {
            r.add_at(*s, *c);
        }
        r
    }

    pub fn sub(&self, o: &LinearForm) -> LinearForm {
        self.add(&o.scale(-Rat::one()))
    }

    pub fn scale(&self, k: Rat) -> LinearForm {
        let mut r = LinearForm::zero();
        for (s, c) in &self.coeffs {
            r.add_at(*s, *c * k);
        }
        r
    }

    pub fn is_central(&self) -> bool {
        self.coeffs.keys().all(Symbol::is_central)
    }

    /// Drop every symbol matching the predicate.
    pub fn without(&self, drop: impl Fn(&Symbol) -> bool) -> LinearForm {
        LinearForm { coeffs: self.coeffs.iter().filter(|(s, _)| !drop(s)).map(|(s, c)| (*s, *c)).collect() }
    }

    pub fn restrict(&self, keep: impl Fn(&Symbol) -> bool) -> LinearForm {
        self.without(|s| !keep(s))
    }

    /// Symbols `u_k`/`p_k` of one copy are renamed through `map`.
    pub fn rename(&self, map: impl Fn(usize) -> usize) -> LinearForm {
        let mut r = LinearForm::zero();
        for (s, c) in &self.coeffs {
            let t = match s.kind {
                SymbolKind::U | SymbolKind::P => Symbol { index: map(s.index), ..*s },
                _ => *s,
            };
            r.add_at(t, *c);
        }
        r
    }

    pub fn with_copy(&self, copy: u8) -> LinearForm {
        let mut r = LinearForm::zero();
        for (s, c) in &self.coeffs {
            let t = if s.kind == SymbolKind::One { *s } else { Symbol { copy, ..*s } };
            r.add_at(t, *c);
        }
        r
    }
}

/// `Ω(L, L') = Σ_k p_k(L) u_k(L') − u_k(L) p_k(L')`, normalized so that
/// `Ω(L_i, L_j) = w_ij`.
pub fn omega(a: &LinearForm, b: &LinearForm) -> Rat {
    let mut t = Rat::zero();
    for (s, c) in &a.coeffs {
        match s.kind {
            SymbolKind::P => t += *c * b.get(&Symbol::u(s.index, s.copy)),
            SymbolKind::U => t -= *c * b.get(&Symbol::p(s.index, s.copy)),
            _ => {}
        }
    }
    t
}

/// Paper-style rendering, e.g. `3u1-u2+2p1'`.
impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (s, c) in &self.coeffs {
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let a = c.abs();
            let mag = if a.is_one() && s.kind != SymbolKind::One { String::new() } else { a.to_string() };
            write!(f, "{sign}{mag}{s}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for LinearForm {
    type Err = Error;

    /// Parse `3u1-u2+2p1'-2λ1+1/2` (also `l1` for `λ1`, `u_1` with underscore).
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse(format!("linear form '{s}'"));
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace() && *c != '_').collect();
        let cleaned = cleaned.replace('−', "-").replace('′', "'");
        if cleaned == "0" {
            return Ok(LinearForm::zero());
        }
        let mut out = LinearForm::zero();
        let chars: Vec<char> = cleaned.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let mut sign = Rat::one();
            if chars[i] == '+' || chars[i] == '-' {
                if chars[i] == '-' {
                    sign = -sign;
                }
                i += 1;
            }
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                i += 1;
            }
            let num: String = chars[start..i].iter().collect();
            let coef = if num.is_empty() { Rat::one() } else { num.parse::<Rat>().map_err(|_| err())? };
            let kind = match chars.get(i) {
                Some('u') => Some(SymbolKind::U),
                Some('p') => Some(SymbolKind::P),
                Some('l') | Some('λ') => Some(SymbolKind::Lambda),
                Some('+') | Some('-') | None => None,
                _ => return Err(err()),
            };
            let sym = match kind {
                None => Symbol::one(),
                Some(kind) => {
                    i += 1;
                    let s0 = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let index: usize = chars[s0..i].iter().collect::<String>().parse().map_err(|_| err())?;
                    let copy = if chars.get(i) == Some(&'\'') {
                        i += 1;
                        1
                    } else {
                        0
                    };
                    Symbol { kind, copy, index }
                }
            };
            if num.is_empty() && kind.is_none() {
                return Err(err());
            }
            out.add_at(sym, sign * coef);
        }
        Ok(out)
    }
}

/// Ordered substitutions `s ↦ s + increment`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AffineShift {
    pub steps: Vec<(Symbol, LinearForm)>,
}

impl AffineShift {
    pub fn identity() -> Self {
        AffineShift::default()
    }

    pub fn is_identity(&self) -> bool {
        self.steps.iter().all(|(_, inc)| inc.is_zero())
    }

    pub fn apply(&self, form: &LinearForm) -> LinearForm {
        let mut cur = form.clone();
        for (s, inc) in &self.steps {
            let c = cur.get(s);
            if !c.is_zero() {
                cur = cur.add(&inc.scale(c));
            }
        }
        cur
    }

    /// Parse rendered substitutions `c·s ↦ c·s + …`, e.g. `2p3 ↦ 2p3-u1'`.
    pub fn from_rendered<S: AsRef<str>>(lines: &[S]) -> Result<AffineShift> {
        let mut steps = Vec::new();
        for line in lines {
            let line = line.as_ref();
            let (lhs, rhs) = line.split_once('↦').ok_or_else(|| Error::Parse(format!("substitution '{line}'")))?;
            let lhs: LinearForm = lhs.parse()?;
            let rhs: LinearForm = rhs.parse()?;
            let [(sym, coef)] = lhs.terms().map(|(s, c)| (*s, *c)).collect::<Vec<_>>()[..] else {
                return Err(Error::Parse(format!("substitution '{line}' must have a single left-hand symbol")));
            };
            steps.push((sym, rhs.sub(&lhs).scale(Rat::one() / coef)));
        }
        Ok(AffineShift { steps })
    }

    /// Render as the paper does, with momenta doubled: `(2p1 ↦ 2p1-u1')`.
    pub fn render(&self) -> Vec<String> {
        self.steps
            .iter()
            .filter(|(_, inc)| !inc.is_zero())
            .map(|(s, inc)| match s.kind {
                SymbolKind::P => {
                    let lhs = LinearForm::term(*s, Rat::from_integer(2));
                    format!("{lhs} ↦ {}", lhs.add(&inc.scale(Rat::from_integer(2))))
                }
                _ => {
                    let lhs = LinearForm::term(*s, Rat::one());
                    format!("{lhs} ↦ {}", lhs.add(inc))
                }
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PolarizationMode {
    /// `Q^w` carrying the minus monomials of the reversed word.
    Single,
    /// `Q^w` carrying the plus monomials of `w` (Feigin form).
    Feigin,
    /// `Q^{w w̄}`.
    Doubled,
    /// `Q^{w w}`, the second copy primed.
    TensorSquare,
}

impl FromStr for PolarizationMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "single" => Ok(PolarizationMode::Single),
            "feigin" => Ok(PolarizationMode::Feigin),
            "doubled" => Ok(PolarizationMode::Doubled),
            "tensor" | "tensor_square" => Ok(PolarizationMode::TensorSquare),
            other => Err(Error::UnknownStrategy { kind: "polarization mode", name: other.to_string() }),
        }
    }
}

/// Monomial forms along one root's path.
#[derive(Clone, Debug)]
pub struct RootForms {
    pub path: Vec<usize>,
    /// Cumulative forms of the prefix monomials, in path order.
    pub monomials: Vec<LinearForm>,
    pub kprime: LinearForm,
}

#[derive(Clone, Debug)]
pub struct Polarization {
    pub mode: PolarizationMode,
    pub word: ReducedWord,
    pub seed: ClusterSeed,
    pub glued: Option<GluedQuiver>,
    pub forms: Vec<LinearForm>,
    pub roots: BTreeMap<usize, RootForms>,
}

/// `f^{k,s}` for sign `s = ±1`: `½(s(Σ_{j<k} a_{i_j i_k} u_j + u_k) − 2sλ_{i_k} + 2d_{i_k} p_k)`.
pub fn f_monomial(word: &ReducedWord, k: usize, s: i64, lambda: bool) -> LinearForm {
    let ik = word.root_of(k);
    let datum = word.datum();
    let half = Rat::new(1, 2);
    let sr = Rat::from_integer(s);
    let mut f = LinearForm::zero();
    for j in 1..k {
        let a = datum.a(word.root_of(j), ik);
        if a != 0 {
            f.add_at(Symbol::u(j, 0), sr * Rat::from_integer(a) * half);
        }
    }
    f.add_at(Symbol::u(k, 0), sr * half);
    if lambda {
        f.add_at(Symbol::lambda(ik, 0), -sr);
    }
    f.add_at(Symbol::p(k, 0), datum.d(ik));
    f
}

/// `K'_i`: `½ Σ_k a_{i_k i} u_k − λ_i`.
pub fn kprime_form(word: &ReducedWord, i: usize, lambda: bool) -> LinearForm {
    let mut f = LinearForm::zero();
    for k in 1..=word.len() {
        let a = word.datum().a(word.root_of(k), i);
        if a != 0 {
            f.add_at(Symbol::u(k, 0), Rat::new(a, 2));
        }
    }
    if lambda {
        f.add_at(Symbol::lambda(i, 0), -Rat::one());
    }
    f
}

fn telescope(path: &[usize], monos: &[LinearForm], forms: &mut [LinearForm]) {
    let mut prev = LinearForm::zero();
    for (&node, m) in path.iter().zip(monos) {
        forms[node] = forms[node].add(&m.sub(&prev));
        prev = m.clone();
    }
}

/// Minus monomials of `w̄` renamed into positions of `w`, plus `K'`.
fn single_minus(word: &ReducedWord, root: usize, lambda: bool) -> (Vec<LinearForm>, LinearForm) {
    let rw = word.reverse_word();
    let sigma = word.sigma_from(&rw);
    let mut monos: Vec<LinearForm> =
        rw.occurrences(root).into_iter().rev().map(|kb| f_monomial(&rw, kb, -1, lambda).rename(|x| sigma[x])).collect();
    let k = kprime_form(&rw, root, lambda).rename(|x| sigma[x]);
    monos.push(k.clone());
    (monos, k)
}

pub fn polarize(word: &ReducedWord, mode: PolarizationMode, lambda: bool) -> Polarization {
    let n = word.rank();
    let mut roots = BTreeMap::new();
    match mode {
        PolarizationMode::Single | PolarizationMode::Feigin => {
            let basic = build_basic_seed(word);
            let mut forms = vec![LinearForm::zero(); basic.seed.len()];
            for root in 1..=n {
                let path: Vec<usize> = word.row(root).into_iter().map(|k| k - 1).collect();
                let (monos, k) = if mode == PolarizationMode::Single {
                    single_minus(word, root, lambda)
                } else {
                    let mut m: Vec<_> = word.occurrences(root).into_iter().map(|k| f_monomial(word, k, 1, lambda)).collect();
                    let k = kprime_form(word, root, lambda);
                    m.push(k.clone());
                    (m, k)
                };
                telescope(&path, &monos, &mut forms);
                roots.insert(root, RootForms { path, monomials: monos, kprime: k });
            }
            Polarization { mode, word: word.clone(), seed: basic.seed, glued: None, forms, roots }
        }
        PolarizationMode::Doubled => {
            let glued = glue_flip(word);
            let rw = glued.right.word.clone();
            let sigma = word.sigma_from(&rw);
            let mut forms = vec![LinearForm::zero(); glued.seed.len()];
            for root in 1..=n {
                let kbs = rw.occurrences(root);
                let mut monos: Vec<LinearForm> =
                    kbs.iter().rev().map(|&kb| f_monomial(&rw, kb, -1, lambda).rename(|x| sigma[x])).collect();
                monos.extend(kbs.iter().map(|&kb| f_monomial(&rw, kb, 1, lambda).rename(|x| sigma[x])));
                let k = kprime_form(&rw, root, lambda).rename(|x| sigma[x]);
                monos.push(k.clone());
                let path = glued.concatenated_row(root);
                telescope(&path, &monos, &mut forms);
                roots.insert(root, RootForms { path, monomials: monos, kprime: k });
            }
            Polarization { mode, word: word.clone(), seed: glued.seed.clone(), glued: Some(glued), forms, roots }
        }
        PolarizationMode::TensorSquare => {
            let glued = glue_tensor_square(word);
            let mut forms = vec![LinearForm::zero(); glued.seed.len()];
            for root in 1..=n {
                let (m1, k1) = single_minus(word, root, lambda);
                let (m2, k2) = single_minus(word, root, lambda);
                let m2: Vec<LinearForm> = m2.iter().map(|f| f.with_copy(1)).collect();
                let k2 = k2.with_copy(1);
                // left copy path ends at the glued node; the right copy starts there
                telescope(&glued.left_row(root), &m1, &mut forms);
                telescope(&glued.right_row(root), &m2, &mut forms);
                let mut monos = m1.clone();
                monos.pop();
                monos.extend(m2.iter().map(|f| f.add(&k1)));
                let k = k1.add(&k2);
                roots.insert(root, RootForms { path: glued.concatenated_row(root), monomials: monos, kprime: k });
            }
            Polarization { mode, word: word.clone(), seed: glued.seed.clone(), glued: Some(glued), forms, roots }
        }
    }
}

impl Polarization {
    /// Form of `X_λ`: `Σ λ_n L_n`.
    pub fn form_of(&self, v: &LatticeVector) -> Result<LinearForm> {
        let mut out = LinearForm::zero();
        for (i, c) in v.entries() {
            let f = self.forms.get(i).ok_or_else(|| Error::UnpolarizedNode(format!("#{i}")))?;
            out = out.add(&f.scale(Rat::from_integer(c)));
        }
        Ok(out)
    }

    /// Rational `v` with `Σ v_n L_n = form`, if any (free coordinates set to 0).
    pub fn preimage(&self, form: &LinearForm) -> Option<Vec<Rat>> {
        let syms: Vec<Symbol> = symbols(self.forms.iter().chain(std::iter::once(form))).into_iter().collect();
        let cols = self.forms.len();
        let mut m: Vec<Vec<Rat>> = syms
            .iter()
            .map(|s| self.forms.iter().map(|f| f.get(s)).chain(std::iter::once(form.get(s))).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
            m.swap(row, p);
            let inv = Rat::one() / m[row][col];
            for x in m[row].iter_mut() {
                *x *= inv;
            }
            for r in 0..m.len() {
                if r != row && !m[r][col].is_zero() {
                    let f = m[r][col];
                    for c in 0..=cols {
                        let y = m[row][c];
                        m[r][c] -= f * y;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        if m[row..].iter().any(|r| !r[cols].is_zero()) {
            return None;
        }
        let mut v = vec![Rat::zero(); cols];
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = m[r][cols];
        }
        Some(v)
    }

    /// Node pairs whose `Ω` differs from the seed's `w_ij`.
    pub fn omega_mismatches(&self) -> Vec<(String, String, Rat, Rat)> {
        let mut bad = Vec::new();
        for i in 0..self.seed.len() {
            for j in 0..self.seed.len() {
                let o = omega(&self.forms[i], &self.forms[j]);
                if o != self.seed.w(i, j) {
                    bad.push((self.seed.label(i).to_string(), self.seed.label(j).to_string(), o, self.seed.w(i, j)));
                }
            }
        }
        bad
    }

    /// Positions of the first occurrence of each root (the `F_in` nodes).
    fn first_positions(&self) -> Vec<usize> {
        (1..=self.word.rank()).map(|j| self.word.occurrences(j)[0]).collect()
    }
}

/// Solve `Aᵀ c = rhs` for linear-form unknowns.
fn solve_cartan_transpose(word: &ReducedWord, rhs: &[LinearForm]) -> Vec<LinearForm> {
    let n = word.rank();
    let mut m: Vec<Vec<Rat>> = (1..=n)
        .map(|i| (1..=n).map(|j| Rat::from_integer(word.datum().a(j, i))).collect())
        .collect();
    let mut r: Vec<LinearForm> = rhs.to_vec();
    for col in 0..n {
        let p = (col..n).find(|&x| !m[x][col].is_zero()).expect("Cartan matrix is invertible");
        m.swap(col, p);
        r.swap(col, p);
        let inv = Rat::one() / m[col][col];
        for c in 0..n {
            m[col][c] *= inv;
        }
        r[col] = r[col].scale(inv);
        for x in 0..n {
            if x != col && !m[x][col].is_zero() {
                let f = m[x][col];
                for c in 0..n {
                    let y = m[col][c];
                    m[x][c] -= f * y;
                }
                r[x] = r[x].sub(&r[col].scale(f));
            }
        }
    }
    r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NormalizationGoal {
    /// Remove every `λ` from `K'_i` and from the left-path monomials.
    KillLambda,
    /// Remove second-copy symbols from `K'_i` and from the first-copy monomials.
    KillSecondFactor,
}

/// Shifts `u_{F_in(j)} ↦ u + c_j` with `Aᵀc` cancelling the unwanted part of
/// every `K'_i`, followed by one momentum shift per left-path monomial
/// cancelling its residue.
pub fn normalization_shift(pol: &Polarization, goal: NormalizationGoal) -> AffineShift {
    let unwanted = |s: &Symbol| match goal {
        NormalizationGoal::KillLambda => s.kind == SymbolKind::Lambda || s.kind == SymbolKind::One,
        NormalizationGoal::KillSecondFactor => s.copy == 1,
    };
    let n = pol.word.rank();
    // K'_i = ½ Σ_k a_{i_k i} u_k + …; on F_in positions only, ½ Σ_j a_{j i} c_j.
    let rhs: Vec<LinearForm> =
        (1..=n).map(|i| pol.roots[&i].kprime.restrict(&unwanted).scale(Rat::from_integer(-2))).collect();
    let c = solve_cartan_transpose(&pol.word, &rhs);
    let mut shift = AffineShift::identity();
    for (j, pos) in pol.first_positions().into_iter().enumerate() {
        shift.steps.push((Symbol::u(pos, 0), c[j].clone()));
    }
    let mut momentum = Vec::new();
    for root in 1..=n {
        let rf = &pol.roots[&root];
        let left_len = match (&pol.glued, pol.mode) {
            (Some(g), _) => g.left_row(root).len() - 1,
            (None, _) => rf.monomials.len() - 1,
        };
        for m in rf.monomials.iter().take(left_len) {
            let shifted = shift.apply(m);
            let residue = shifted.restrict(&unwanted);
            let ps: Vec<(Symbol, Rat)> =
                shifted.terms().filter(|(s, _)| s.kind == SymbolKind::P && s.copy == 0).map(|(s, c)| (*s, *c)).collect();
            if let [(p, coef)] = ps[..] {
                if !residue.is_zero() {
                    momentum.push((p, residue.scale(-Rat::one() / coef)));
                }
            }
        }
    }
    shift.steps.extend(momentum);
    shift
}

/// One rendered factor `g_{b_*}(e^{πb E})`; `exponent` is `2 Σ L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderedFactor {
    pub flavor: Rat,
    pub exponent: LinearForm,
}

impl fmt::Display for RenderedFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = if self.flavor == Rat::one() { "b".to_string() } else { format!("b[{}]", self.flavor) };
        write!(f, "g_{b}(e^{{πb({})}})", self.exponent)
    }
}

pub fn render_phi_operators(factors: &[DilogFactor], pol: &Polarization) -> Result<Vec<RenderedFactor>> {
    factors
        .iter()
        .map(|f| {
            Ok(RenderedFactor { flavor: f.flavor, exponent: pol.form_of(&f.argument)?.scale(Rat::from_integer(2)) })
        })
        .collect()
}

/// Can `ours` be reordered into `printed` by swapping adjacent factors
/// whose exponents commute (`Ω = 0`)?
pub fn equal_up_to_commuting_swaps(ours: &[RenderedFactor], printed: &[RenderedFactor]) -> bool {
    if ours.len() != printed.len() {
        return false;
    }
    let mut rest: Vec<&RenderedFactor> = ours.iter().collect();
    for want in printed {
        let Some(pos) = rest.iter().position(|f| *f == want) else { return false };
        if !rest[..pos].iter().all(|f| omega(&f.exponent, &want.exponent).is_zero()) {
            return false;
        }
        rest.remove(pos);
    }
    true
}

/// Symbols occurring in a set of forms.
pub fn symbols<'a>(forms: impl IntoIterator<Item = &'a LinearForm>) -> BTreeSet<Symbol> {
    forms.into_iter().flat_map(|f| f.terms().map(|(s, _)| *s).collect::<Vec<_>>()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_data::{validate_reduced_word, LieType, RootDatum, ShortRootConvention};

    fn w(t: LieType, n: usize, c: ShortRootConvention, l: &[usize]) -> ReducedWord {
        validate_reduced_word(&RootDatum::new(t, n, c).unwrap(), l).unwrap()
    }

    fn form(s: &str) -> LinearForm {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_render() {
        let f = form("3u1-u2+2p1'-2λ1");
        assert_eq!(f.to_string(), "3u1-u2+2p1'-2λ1");
        assert_eq!(form("-u_1+2p_1"), form("2p1-u1"));
        assert!("3x1".parse::<LinearForm>().is_err());
    }

    #[test]
    fn a1_doubled_forms() {
        let pol = polarize(&w(LieType::A, 1, ShortRootConvention::Bourbaki, &[1]), PolarizationMode::Doubled, true);
        let at = |l: &str| pol.forms[pol.seed.index_of(l).unwrap()].scale(Rat::from_integer(2));
        assert_eq!(at("1"), form("-u1+2λ1+2p1"));
        assert_eq!(at("1b"), form("2u1-4λ1"));
        assert_eq!(pol.roots[&1].kprime.scale(Rat::from_integer(2)), form("2u1-2λ1"));
        assert!(pol.omega_mismatches().is_empty());
    }

    #[test]
    fn omega_matches_all_modes() {
        let words = [
            w(LieType::A, 3, ShortRootConvention::Bourbaki, &[1, 2, 1, 3, 2, 1]),
            w(LieType::B, 3, ShortRootConvention::Paper, &[1, 2, 1, 2, 3, 2, 1, 2, 3]),
            w(LieType::B, 2, ShortRootConvention::Bourbaki, &[1, 2, 1, 2]),
        ];
        for word in &words {
            for mode in [PolarizationMode::Single, PolarizationMode::Feigin, PolarizationMode::Doubled, PolarizationMode::TensorSquare] {
                let pol = polarize(word, mode, true);
                assert!(pol.omega_mismatches().is_empty(), "{word} {mode:?}");
            }
        }
    }

    #[test]
    fn a1_kill_lambda() {
        let pol = polarize(&w(LieType::A, 1, ShortRootConvention::Bourbaki, &[1]), PolarizationMode::Doubled, true);
        let s = normalization_shift(&pol, NormalizationGoal::KillLambda);
        let two = Rat::from_integer(2);
        assert_eq!(s.apply(&pol.roots[&1].monomials[0]).scale(two), form("-u1+2p1"));
        assert_eq!(s.apply(&pol.roots[&1].kprime).scale(two), form("2u1"));
        assert_eq!(s.render(), vec!["u1 ↦ u1+λ1".to_string(), "2p1 ↦ 2p1-λ1".to_string()]);
        let zero = polarize(&w(LieType::A, 1, ShortRootConvention::Bourbaki, &[1]), PolarizationMode::Doubled, false);
        assert!(normalization_shift(&zero, NormalizationGoal::KillLambda).is_identity());
    }
}
