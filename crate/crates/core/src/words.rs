//! Formal iterated-integral symbols and their algebra: the ambient
//! path-tagged space 𝓗, the path-free quotient 𝒜, and the further
//! quotient 𝔏 where products of positive-weight elements vanish.
//!
//! A symbol I(a₀; a₁,…,a_k; a_{k+1}) is data, not a number; equalities
//! hold only through the normalization rules implemented here and the
//! relation instances of the `relations` module.

use crate::formal::FormalSum;
use crate::rat::{q_int, q_one, q_parse, Q};
use crate::Error;
use std::cmp::Ordering;
use std::fmt;

/// Which quotient a symbol lives in. H-symbols carry a path tag;
/// A- and L-symbols are path-free.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Level {
    H,
    A,
    L,
}

/// An opaque path identifier; "std" is reserved for the straight path
/// 0 → 1. Reversal maps a tag to its formal inverse.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct PathTag {
    pub name: String,
    pub inverted: bool,
}

impl PathTag {
    pub fn new(name: &str) -> Self {
        PathTag { name: name.into(), inverted: false }
    }

    pub fn inverse(&self) -> Self {
        PathTag { name: self.name.clone(), inverted: !self.inverted }
    }
}

/// An iterated-integral symbol at one of the three levels.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IISymbol {
    pub level: Level,
    pub start: Q,
    pub interior: Vec<Q>,
    pub end: Q,
    /// Present exactly on H-symbols.
    pub path: Option<PathTag>,
}

impl IISymbol {
    pub fn h(start: Q, interior: Vec<Q>, end: Q, tag: PathTag) -> Self {
        IISymbol { level: Level::H, start, interior, end, path: Some(tag) }
    }

    pub fn a(start: Q, interior: Vec<Q>, end: Q) -> Self {
        IISymbol { level: Level::A, start, interior, end, path: None }
    }

    pub fn l(start: Q, interior: Vec<Q>, end: Q) -> Self {
        IISymbol { level: Level::L, start, interior, end, path: None }
    }

    pub fn weight(&self) -> usize {
        self.interior.len()
    }

    /// The full label sequence a₀, a₁, …, a_{k+1}.
    pub fn full_labels(&self) -> Vec<Q> {
        let mut v = Vec::with_capacity(self.weight() + 2);
        v.push(self.start.clone());
        v.extend(self.interior.iter().cloned());
        v.push(self.end.clone());
        v
    }

    /// The same symbol reinterpreted at another level (dropping the
    /// path when leaving 𝓗).
    pub fn at_level(&self, level: Level) -> IISymbol {
        IISymbol {
            level,
            start: self.start.clone(),
            interior: self.interior.clone(),
            end: self.end.clone(),
            path: if level == Level::H { self.path.clone() } else { None },
        }
    }
}

// Canonical order: by weight, then the full label sequence, then level
// and path — this is the tie-break rule for monomial factor sorting.
impl Ord for IISymbol {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.full_labels().cmp(&other.full_labels()))
            .then_with(|| self.level.cmp(&other.level))
            .then_with(|| self.path.cmp(&other.path))
    }
}

impl PartialOrd for IISymbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A term of a normalized symbol sum: the unit, or a single word.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum NormTerm {
    One,
    Word(IISymbol),
}

fn is01(q: &Q) -> Option<bool> {
    if *q == q_int(0) {
        Some(false)
    } else if *q == q_int(1) {
        Some(true)
    } else {
        None
    }
}

/// Does the weight-1 {0,1} vanishing rule apply? Exactly the four
/// patterns I(0;0;1), I(0;1;1), I(1;1;0), I(1;0;0); no extrapolation.
fn kills_weight_one(start: &Q, mid: &Q, end: &Q) -> bool {
    matches!(
        (is01(start), is01(mid), is01(end)),
        (Some(false), Some(_), Some(true)) | (Some(true), Some(_), Some(false))
    )
}

/// Normalization: unit rule, equal-endpoint vanishing, the {0,1}
/// weight-1 rules, and (in 𝒜/𝔏 only) reversal canonicalization to the
/// lexicographically smaller label sequence with the (−1)^k sign.
/// The result is always 0, ±1·unit, or ±1·(single word).
pub fn normalize(sym: &IISymbol) -> FormalSum<NormTerm> {
    match norm_opt(sym) {
        None => FormalSum::zero(),
        Some((c, None)) => FormalSum::term(NormTerm::One, c),
        Some((c, Some(w))) => FormalSum::term(NormTerm::Word(w), c),
    }
}

/// Core of `normalize`: None = 0; (c, None) = c·1; (c, Some(w)) = c·w.
pub fn norm_opt(sym: &IISymbol) -> Option<(Q, Option<IISymbol>)> {
    if sym.weight() == 0 {
        return Some((q_one(), None));
    }
    if sym.start == sym.end {
        return None;
    }
    if sym.weight() == 1 && kills_weight_one(&sym.start, &sym.interior[0], &sym.end) {
        return None;
    }
    if sym.level == Level::H {
        return Some((q_one(), Some(sym.clone())));
    }
    let seq = sym.full_labels();
    let mut rev = seq.clone();
    rev.reverse();
    if rev < seq {
        let mut interior = sym.interior.clone();
        interior.reverse();
        let flipped = IISymbol {
            level: sym.level,
            start: sym.end.clone(),
            interior,
            end: sym.start.clone(),
            path: None,
        };
        let sign = if sym.weight() % 2 == 0 { q_one() } else { -q_one() };
        Some((sign, Some(flipped)))
    } else {
        Some((q_one(), Some(sym.clone())))
    }
}

/// Raw path reversal: (−1)^k times the symbol read backwards, with the
/// path tag formally inverted. No normalization is applied.
pub fn reverse(sym: &IISymbol) -> FormalSum<NormTerm> {
    let mut interior = sym.interior.clone();
    interior.reverse();
    let flipped = IISymbol {
        level: sym.level,
        start: sym.end.clone(),
        interior,
        end: sym.start.clone(),
        path: sym.path.as_ref().map(|t| t.inverse()),
    };
    let sign = if sym.weight() % 2 == 0 { q_one() } else { -q_one() };
    FormalSum::term(NormTerm::Word(flipped), sign)
}

/// All interleavings of two sequences preserving internal order, as a
/// multiset (duplicates repeated), in a deterministic order.
pub fn shuffle<T: Clone>(a: &[T], b: &[T]) -> Vec<Vec<T>> {
    if a.is_empty() {
        return vec![b.to_vec()];
    }
    if b.is_empty() {
        return vec![a.to_vec()];
    }
    let mut out = vec![];
    for mut w in shuffle(&a[1..], b) {
        w.insert(0, a[0].clone());
        out.push(w);
    }
    for mut w in shuffle(a, &b[1..]) {
        w.insert(0, b[0].clone());
        out.push(w);
    }
    out
}

/// Path composition at the point `c`: the symbol (which must be an
/// H-symbol) expands as Σ over splittings ω = αβ of the pairs
/// I_γ(a;α;c)·I_{γ'}(c;β;b), returned raw.
pub fn path_compose_expand(
    sym: &IISymbol,
    tags: (&PathTag, &PathTag),
    c: &Q,
) -> FormalSum<(IISymbol, IISymbol)> {
    assert!(
        sym.level == Level::H,
        "path composition requires an H-symbol"
    );
    let k = sym.weight();
    let mut out = FormalSum::zero();
    for split in 0..=k {
        let left = IISymbol::h(
            sym.start.clone(),
            sym.interior[..split].to_vec(),
            c.clone(),
            tags.0.clone(),
        );
        let right = IISymbol::h(
            c.clone(),
            sym.interior[split..].to_vec(),
            sym.end.clone(),
            tags.1.clone(),
        );
        out.add_term((left, right), q_one());
    }
    out
}

/// A commutative monomial of path-free symbols (the empty monomial is
/// the unit 1). Invariant in normalized sums: factors are canonical
/// positive-weight words, sorted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Monomial(pub Vec<IISymbol>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(vec![])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn single(sym: IISymbol) -> Self {
        Monomial(vec![sym])
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|s| s.weight()).sum()
    }

    /// Number of positive-weight factors.
    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        v.sort();
        Monomial(v)
    }
}

/// Normalizes a list of factors into a monomial sum at level 𝒜 or 𝔏.
/// Each factor normalizes to 0, ±unit, or ±word; in 𝔏 any product of
/// two or more positive-weight words vanishes.
pub fn normalize_monomial(factors: &[IISymbol], level: Level) -> FormalSum<Monomial> {
    assert!(level != Level::H, "monomials live in the path-free quotients");
    let mut coeff = q_one();
    let mut words: Vec<IISymbol> = vec![];
    for f in factors {
        match norm_opt(&f.at_level(level)) {
            None => return FormalSum::zero(),
            Some((c, None)) => coeff *= c,
            Some((c, Some(w))) => {
                coeff *= c;
                words.push(w);
            }
        }
    }
    if level == Level::L && words.len() >= 2 {
        return FormalSum::zero();
    }
    words.sort();
    FormalSum::term(Monomial(words), coeff)
}

/// Product of two monomial sums (bilinear extension of `Monomial::mul`).
pub fn monomial_product(a: &FormalSum<Monomial>, b: &FormalSum<Monomial>) -> FormalSum<Monomial> {
    let mut out = FormalSum::zero();
    for (ma, ca) in a.iter() {
        for (mb, cb) in b.iter() {
            out.add_term(ma.mul(mb), ca.clone() * cb.clone());
        }
    }
    out
}

/// One term of a coaction value: a path-free monomial tensored with a
/// path-tagged word.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct TensorTerm {
    pub left: Monomial,
    pub right: IISymbol,
}

impl TensorTerm {
    pub fn weight(&self) -> usize {
        self.left.weight() + self.right.weight()
    }
}

/// Shuffle regularization for words with endpoints (0,1) and interior
/// labels in {0,1}: rewrites the symbol as an exact combination of
/// admissible words (interior starting with 1 and ending with 0),
/// using I(0;0;1) = I(0;1;1) = 0 against the shuffle relation.
pub fn regularize(sym: &IISymbol) -> Result<FormalSum<IISymbol>, Error> {
    if is01(&sym.start) != Some(false) || is01(&sym.end) != Some(true) {
        return Err(Error::NotBinaryWord);
    }
    let bits: Vec<bool> = sym
        .interior
        .iter()
        .map(|q| is01(q).ok_or(Error::NotBinaryWord))
        .collect::<Result<_, _>>()?;

    let mut done: FormalSum<Vec<bool>> = FormalSum::zero();
    let mut pending: FormalSum<Vec<bool>> = FormalSum::term(bits, q_one());
    while let Some((w, c)) = pending.pop_first() {
        if w.is_empty() || (w[0] && !*w.last().unwrap()) {
            done.add_term(w, c);
            continue;
        }
        let lead = w.iter().take_while(|&&b| !b).count();
        if lead == w.len() || w.iter().all(|&b| b) {
            // all-zero (or all-one) interiors are outright zero:
            // a·w = 0 with no correction terms
            continue;
        }
        if lead > 0 {
            // remove one leading zero; a·w = −Σ(insertions past the block)
            let rest = w[1..].to_vec();
            let scale = -c / q_int(lead as i64);
            for p in lead..=rest.len() {
                let mut t = rest.clone();
                t.insert(p, false);
                pending.add_term(t, scale.clone());
            }
        } else {
            // mirrored: remove one trailing one
            let trail = w.iter().rev().take_while(|&&b| b).count();
            let rest = w[..w.len() - 1].to_vec();
            let scale = -c / q_int(trail as i64);
            for p in 0..=rest.len() - trail {
                let mut t = rest.clone();
                t.insert(p, true);
                pending.add_term(t, scale.clone());
            }
        }
    }

    let mut out = FormalSum::zero();
    for (w, c) in done.iter() {
        let interior: Vec<Q> = w.iter().map(|&b| q_int(b as i64)).collect();
        let word = IISymbol {
            level: sym.level,
            start: sym.start.clone(),
            interior,
            end: sym.end.clone(),
            path: sym.path.clone(),
        };
        out.add_term(word, c.clone());
    }
    Ok(out)
}

/// MZV index → (sign, interior): ζ(k₁,…,k_d) corresponds to
/// (−1)^d · I(0; 1,0^{k₁−1},…,1,0^{k_d−1}; 1).
pub fn zeta_to_word(index: &[u32]) -> Result<(Q, Vec<Q>), Error> {
    if index.is_empty() || index.iter().any(|&k| k == 0) || *index.last().unwrap() < 2 {
        return Err(Error::NotAdmissibleIndex);
    }
    let mut interior = vec![];
    for &k in index {
        interior.push(q_int(1));
        for _ in 1..k {
            interior.push(q_int(0));
        }
    }
    let sign = if index.len() % 2 == 0 { q_one() } else { -q_one() };
    Ok((sign, interior))
}

/// Admissible interior → (sign, MZV index), inverse of `zeta_to_word`.
pub fn word_to_zeta(interior: &[Q]) -> Result<(Q, Vec<u32>), Error> {
    let bits: Vec<bool> = interior
        .iter()
        .map(|q| is01(q).ok_or(Error::NotAdmissible("labels outside {0,1}".into())))
        .collect::<Result<_, _>>()?;
    if bits.is_empty() || !bits[0] || *bits.last().unwrap() {
        return Err(Error::NotAdmissible(
            "interior must start with 1 and end with 0".into(),
        ));
    }
    let mut index = vec![];
    for &b in &bits {
        if b {
            index.push(1);
        } else {
            *index.last_mut().unwrap() += 1;
        }
    }
    let sign = if index.len() % 2 == 0 { q_one() } else { -q_one() };
    Ok((sign, index))
}

/// Is this symbol, up to sign, a word of an admissible MZV over the
/// standard setup (endpoints 0,1)?
pub fn is_admissible_word(sym: &IISymbol) -> bool {
    is01(&sym.start) == Some(false)
        && is01(&sym.end) == Some(true)
        && word_to_zeta(&sym.interior).is_ok()
}

impl fmt::Display for IISymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = if self.level == Level::L { "Il" } else { "I" };
        let body = self
            .interior
            .iter()
            .map(crate::rat::q_str)
            .collect::<Vec<_>>()
            .join(",");
        write!(
            f,
            "{prefix}({};{};{})",
            crate::rat::q_str(&self.start),
            body,
            crate::rat::q_str(&self.end)
        )?;
        if let Some(tag) = &self.path {
            write!(f, "@{}", tag.name)?;
            if tag.inverted {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Display for TensorTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (x) {}", self.left, self.right)
    }
}

/// Parses a word literal: `I(0;1,0;1)` (A-symbol), `I(0;1,0;1)@std`
/// (H-symbol; `@std^-1` for the inverse path), `Il(0;1,0;1)`
/// (L-symbol). Weight 0 is written `I(0;;1)` or `I(0;1)`.
pub fn parse_word_literal(input: &str) -> Result<IISymbol, Error> {
    let s = input.trim();
    let bad = |msg: &str| Error::Parse(format!("{msg} in word literal {input:?}"));
    let (level_l, rest) = if let Some(r) = s.strip_prefix("Il") {
        (true, r)
    } else if let Some(r) = s.strip_prefix('I') {
        (false, r)
    } else {
        return Err(bad("expected I(...) or Il(...)"));
    };
    let rest = rest.trim_start();
    let inner_end = rest.rfind(')').ok_or_else(|| bad("missing ')'"))?;
    if !rest.starts_with('(') {
        return Err(bad("expected '('"));
    }
    let inner = &rest[1..inner_end];
    let tail = rest[inner_end + 1..].trim();

    let parts: Vec<&str> = inner.split(';').collect();
    let (start, mid, end) = match parts.as_slice() {
        [a, b] => (*a, "", *b),
        [a, m, b] => (*a, *m, *b),
        _ => return Err(bad("expected 2 or 3 ';'-separated parts")),
    };
    let start = q_parse(start)?;
    let end = q_parse(end)?;
    let interior: Vec<Q> = if mid.trim().is_empty() {
        vec![]
    } else {
        mid.split(',').map(|t| q_parse(t)).collect::<Result<_, _>>()?
    };

    let path = if tail.is_empty() {
        None
    } else if let Some(tag) = tail.strip_prefix('@') {
        let (name, inverted) = match tag.strip_suffix("^-1") {
            Some(n) => (n, true),
            None => (tag, false),
        };
        if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(bad("bad path tag"));
        }
        Some(PathTag { name: name.into(), inverted })
    } else {
        return Err(bad("unexpected trailing text"));
    };

    if level_l && path.is_some() {
        return Err(bad("L-symbols cannot carry a path tag"));
    }
    let level = if level_l {
        Level::L
    } else if path.is_some() {
        Level::H
    } else {
        Level::A
    };
    Ok(IISymbol { level, start, interior, end, path })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::binomial;
    use num_bigint::BigInt;

    fn q(n: i64) -> Q {
        q_int(n)
    }

    fn aw(start: i64, interior: &[i64], end: i64) -> IISymbol {
        IISymbol::a(q(start), interior.iter().map(|&x| q(x)).collect(), q(end))
    }

    fn hw(start: i64, interior: &[i64], end: i64) -> IISymbol {
        IISymbol::h(
            q(start),
            interior.iter().map(|&x| q(x)).collect(),
            q(end),
            PathTag::new("std"),
        )
    }

    #[test]
    fn normalize_units_and_kills() {
        assert_eq!(normalize(&aw(5, &[], 7)), FormalSum::term(NormTerm::One, q(1)));
        assert!(normalize(&aw(3, &[1, 0], 3)).is_zero());
        assert!(normalize(&aw(0, &[1], 1)).is_zero());
        assert!(normalize(&aw(0, &[0], 1)).is_zero());
        assert!(normalize(&aw(1, &[1], 0)).is_zero());
        assert!(normalize(&aw(1, &[0], 0)).is_zero());
        assert!(normalize(&hw(0, &[1], 1)).is_zero());
        // no extrapolation beyond the four patterns
        assert!(!normalize(&aw(0, &[2], 1)).is_zero());
        assert!(!normalize(&aw(0, &[1], 2)).is_zero());
    }

    #[test]
    fn normalize_reversal_canonicalization() {
        // even weight: sign +1
        let n = normalize(&aw(1, &[0, 1], 0));
        assert_eq!(n, FormalSum::term(NormTerm::Word(aw(0, &[1, 0], 1)), q(1)));
        // odd weight: sign −1
        let n = normalize(&aw(1, &[2], 0));
        assert_eq!(n, FormalSum::term(NormTerm::Word(aw(0, &[2], 1)), q(-1)));
        // H-symbols are never canonicalized
        let h = hw(1, &[0, 1], 0);
        assert_eq!(normalize(&h), FormalSum::term(NormTerm::Word(h.clone()), q(1)));
        // canonical forms are fixed points (idempotence)
        for sym in [aw(0, &[1, 0], 1), aw(0, &[1, 1, 0], 1), aw(0, &[2], 1)] {
            let once = normalize(&sym);
            for (t, _) in once.iter() {
                if let NormTerm::Word(w) = t {
                    assert_eq!(normalize(w), FormalSum::term(NormTerm::Word(w.clone()), q(1)));
                }
            }
        }
    }

    #[test]
    fn reversal_is_involution_with_sign() {
        let w = hw(0, &[1, 0, 0], 1);
        let r = reverse(&w);
        let (t, c) = r.iter().next().unwrap();
        assert_eq!(*c, q(-1)); // k = 3
        if let NormTerm::Word(rw) = t {
            assert_eq!(rw.start, q(1));
            assert_eq!(rw.interior, vec![q(0), q(0), q(1)]);
            assert!(rw.path.as_ref().unwrap().inverted);
            let rr = reverse(rw);
            let (tt, cc) = rr.iter().next().unwrap();
            assert_eq!(c.clone() * cc.clone(), q(1));
            assert_eq!(tt, &NormTerm::Word(w.clone()));
        } else {
            panic!("expected a word");
        }
    }

    #[test]
    fn shuffle_counts_and_example() {
        let a = [q(1), q(0)];
        let b = [q(1)];
        let sh = shuffle(&a, &b);
        assert_eq!(sh.len(), 3);
        let count_110 = sh.iter().filter(|w| **w == vec![q(1), q(1), q(0)]).count();
        let count_101 = sh.iter().filter(|w| **w == vec![q(1), q(0), q(1)]).count();
        assert_eq!((count_110, count_101), (2, 1));
        for (la, lb) in [(2usize, 3usize), (4, 1), (3, 3)] {
            let a: Vec<Q> = (0..la).map(|i| q(i as i64)).collect();
            let b: Vec<Q> = (0..lb).map(|i| q(100 + i as i64)).collect();
            let expected = binomial(BigInt::from(la + lb), BigInt::from(la));
            assert_eq!(BigInt::from(shuffle(&a, &b).len()), expected);
        }
        assert_eq!(shuffle::<Q>(&a, &[]), vec![a.to_vec()]);
    }

    #[test]
    fn path_composition_weight_one() {
        let sym = hw(2, &[5], 3);
        let (g1, g2) = (PathTag::new("g1"), PathTag::new("g2"));
        let c = q(7);
        let expansion = path_compose_expand(&sym, (&g1, &g2), &c);
        assert_eq!(expansion.len(), 2);
        // after normalizing the weight-0 factors, the two survivors are
        // I(c;x;b) and I(a;x;c)
        let mut survivors = vec![];
        for ((l, r), coeff) in expansion.iter() {
            assert_eq!(*coeff, q(1));
            for part in [l, r] {
                if let Some((c2, Some(w))) = norm_opt(part) {
                    assert_eq!(c2, q(1));
                    survivors.push(w);
                }
            }
        }
        survivors.sort();
        let mut expected = vec![
            IISymbol::h(q(2), vec![q(5)], q(7), g1.clone()),
            IISymbol::h(q(7), vec![q(5)], q(3), g2.clone()),
        ];
        expected.sort();
        assert_eq!(survivors, expected);
        // weight-2: three splittings
        assert_eq!(path_compose_expand(&hw(0, &[1, 0], 1), (&g1, &g2), &c).len(), 3);
    }

    #[test]
    fn monomials_sort_and_l_kills_products() {
        let w2 = aw(0, &[1, 0], 1);
        let w3 = aw(0, &[1, 0, 0], 1);
        let m = normalize_monomial(&[w3.clone(), w2.clone()], Level::A);
        let (mono, c) = m.iter().next().unwrap();
        assert_eq!(*c, q(1));
        assert_eq!(mono.0, vec![w2.clone(), w3.clone()]); // weight order
        assert!(normalize_monomial(&[w3.clone(), w2.clone()], Level::L).is_zero());
        // units fold away; signs multiply
        let m = normalize_monomial(&[aw(4, &[], 9), aw(1, &[2], 0)], Level::L);
        let (mono, c) = m.iter().next().unwrap();
        assert_eq!(*c, q(-1));
        assert_eq!(mono.0.len(), 1);
        assert_eq!(mono.0[0].level, Level::L);
        // a vanishing factor kills the monomial
        assert!(normalize_monomial(&[aw(0, &[1], 1), w2.clone()], Level::A).is_zero());
    }

    #[test]
    fn regularize_examples() {
        // I(0;0,1;1) → −I(0;1,0;1)
        let r = regularize(&aw(0, &[0, 1], 1)).unwrap();
        assert_eq!(r, FormalSum::term(aw(0, &[1, 0], 1), q(-1)));
        // already admissible → fixed point
        let r = regularize(&aw(0, &[1, 0], 1)).unwrap();
        assert_eq!(r, FormalSum::term(aw(0, &[1, 0], 1), q(1)));
        // I(0;0,1,0;1) → −2·I(0;1,0,0;1)
        let r = regularize(&aw(0, &[0, 1, 0], 1)).unwrap();
        assert_eq!(r, FormalSum::term(aw(0, &[1, 0, 0], 1), q(-2)));
        // weight 1 and pure-0/pure-1 words die
        assert!(regularize(&aw(0, &[1], 1)).unwrap().is_zero());
        assert!(regularize(&aw(0, &[0], 1)).unwrap().is_zero());
        assert!(regularize(&aw(0, &[0, 0, 0], 1)).unwrap().is_zero());
        assert!(regularize(&aw(0, &[1, 1], 1)).unwrap().is_zero());
        // weight 0 is the unit, untouched
        let r = regularize(&aw(0, &[], 1)).unwrap();
        assert_eq!(r.len(), 1);
        // non-binary input rejected
        assert!(matches!(regularize(&aw(0, &[2], 1)), Err(Error::NotBinaryWord)));
        assert!(matches!(regularize(&aw(1, &[1], 0)), Err(Error::NotBinaryWord)));
    }

    #[test]
    fn regularize_matches_single_one_closed_form() {
        // I(0;{0}^a,1,{0}^b;1) = (−1)^a·binom(a+b,a)·I(0;1,{0}^{a+b};1)
        for a in 0usize..=8 {
            for b in 0..=8 - a {
                if a + b == 0 {
                    continue;
                }
                let mut interior = vec![q(0); a];
                interior.push(q(1));
                interior.extend(std::iter::repeat(q(0)).take(b));
                let r = regularize(&IISymbol::a(q(0), interior, q(1))).unwrap();
                let mut target = vec![q(1)];
                target.extend(std::iter::repeat(q(0)).take(a + b));
                let coeff = Q::from(binomial(BigInt::from(a + b), BigInt::from(a)));
                let sign = if a % 2 == 0 { q(1) } else { q(-1) };
                assert_eq!(
                    r,
                    FormalSum::term(IISymbol::a(q(0), target, q(1)), sign * coeff),
                    "a={a} b={b}"
                );
            }
        }
    }

    #[test]
    fn regularize_invariants() {
        // all outputs admissible; weight preserved; idempotent
        for bits in 0u32..1 << 5 {
            let interior: Vec<Q> = (0..5).map(|i| q((bits >> i & 1) as i64)).collect();
            let sym = IISymbol::a(q(0), interior, q(1));
            let r = regularize(&sym).unwrap();
            let mut again = FormalSum::zero();
            for (w, c) in r.iter() {
                assert!(w.interior.is_empty() || is_admissible_word(w), "{w}");
                assert_eq!(w.weight(), 5);
                again.add_scaled(&regularize(w).unwrap(), c);
            }
            assert_eq!(again, r);
        }
    }

    #[test]
    fn zeta_word_conversion() {
        // ζ(2) ↔ −I(0;1,0;1)
        let (sign, interior) = zeta_to_word(&[2]).unwrap();
        assert_eq!(sign, q(-1));
        assert_eq!(interior, vec![q(1), q(0)]);
        // ζ(1,2) ↔ +I(0;1,1,0;1)
        let (sign, interior) = zeta_to_word(&[1, 2]).unwrap();
        assert_eq!(sign, q(1));
        assert_eq!(interior, vec![q(1), q(1), q(0)]);
        assert!(zeta_to_word(&[2, 1]).is_err());
        assert!(zeta_to_word(&[]).is_err());
        assert!(zeta_to_word(&[0, 2]).is_err());
        assert!(word_to_zeta(&[q(0), q(1)]).is_err());
        assert!(word_to_zeta(&[]).is_err());
    }

    #[test]
    fn zeta_word_roundtrip_weight_up_to_six() {
        fn indices(weight: u32) -> Vec<Vec<u32>> {
            let mut out = vec![];
            fn rec(rest: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
                if rest == 0 {
                    if cur.last().map_or(false, |&k| k >= 2) {
                        out.push(cur.clone());
                    }
                    return;
                }
                for k in 1..=rest {
                    cur.push(k);
                    rec(rest - k, cur, out);
                    cur.pop();
                }
            }
            rec(weight, &mut vec![], &mut out);
            out
        }
        for w in 2..=6 {
            for idx in indices(w) {
                let (s1, interior) = zeta_to_word(&idx).unwrap();
                let (s2, back) = word_to_zeta(&interior).unwrap();
                assert_eq!(back, idx);
                assert_eq!(s1, s2);
                assert_eq!(interior.len() as u32, w);
            }
        }
    }

    #[test]
    fn literal_roundtrip() {
        for text in [
            "I(0;1,0,0;1)@std",
            "I(0;1,0;1)",
            "Il(0;1;0)",
            "I(1/2;2/3,-1;1)@g^-1",
            "I(0;;1)",
            "I(3;7)",
        ] {
            let sym = parse_word_literal(text).unwrap();
            let shown = sym.to_string();
            let again = parse_word_literal(&shown).unwrap();
            assert_eq!(sym, again, "{text} → {shown}");
        }
        assert_eq!(parse_word_literal("I(3;7)").unwrap(), aw(3, &[], 7));
    }

    #[test]
    fn literal_rejects_garbage() {
        for text in [
            "",
            "J(0;1;1)",
            "I(0;1;1",
            "I(0;1;1)@",
            "I(0;1;1)@st d",
            "I(0;1;1)extra",
            "I(;1;)",
            "I(0;1;1;2;3)",
            "Il(0;1;1)@std",
            "I(0;1/0;1)",
        ] {
            assert!(parse_word_literal(text).is_err(), "{text:?}");
        }
        // whitespace around tokens is tolerated
        assert!(parse_word_literal(" I(0; 1, 0; 1)@std ").is_ok());
    }
}
