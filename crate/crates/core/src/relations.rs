//! Relation instances of the path-free algebras (𝒜 and its quotient
//! 𝔏) and an exact linear-algebra oracle deciding whether a candidate
//! sum lies in their span, with replayable certificates.
//!
//! The normalizer already enforces the unit, equal-endpoint, reversal
//! and 𝔏-product rules, so instances of those kinds have identically
//! zero bodies and serve as an audit trail; the live families are the
//! path-composition splits and the shuffle relations (whose product
//! side dies under the projection to 𝔏, leaving vanishing sums).

use crate::formal::FormalSum;
use crate::rat::{q_one, Q};
use crate::words::{norm_opt, normalize_monomial, shuffle, IISymbol, Level, Monomial, TensorTerm};
use crate::Error;
use num_traits::Zero;
use std::collections::BTreeSet;
use std::fmt;

/// Family tag of a relation instance.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum RelationKind {
    /// Weight-0 words equal the unit.
    Unit,
    /// Positive-weight words with equal endpoints vanish.
    EqualEndpoint,
    /// A word equals (−1)^weight times its reversal.
    Reversal,
    /// Path composition: a word splits through an intermediate point
    /// as a sum of two-factor products; in 𝔏 only the telescoping
    /// end terms survive.
    PathSplit,
    /// The product of two words with common endpoints equals the sum
    /// over their shuffles; in 𝔏 the product side vanishes.
    ShuffleVanish,
    /// Monomials with two or more positive-weight factors vanish in 𝔏.
    LProductZero,
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RelationKind::Unit => "UNIT",
            RelationKind::EqualEndpoint => "EQUAL_ENDPOINT",
            RelationKind::Reversal => "REVERSAL",
            RelationKind::PathSplit => "PATH_SPLIT",
            RelationKind::ShuffleVanish => "SHUFFLE_VANISH",
            RelationKind::LProductZero => "L_PRODUCT_ZERO",
        };
        f.write_str(s)
    }
}

/// One relation: a normalized formal sum of monomials asserted to be
/// zero, with the parameters that generated it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RelationInstance {
    pub body: FormalSum<Monomial>,
    pub kind: RelationKind,
    pub provenance: String,
}

/// Hard caps on relation generation.
#[derive(Clone, Copy, Debug)]
pub struct RelationCaps {
    pub max_weight: usize,
    pub max_labels: usize,
    pub max_degree: usize,
}

impl Default for RelationCaps {
    fn default() -> Self {
        RelationCaps { max_weight: 6, max_labels: 4, max_degree: 3 }
    }
}

fn fmt_labels(w: &[Q]) -> String {
    w.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(",")
}

fn words_over(labels: &[Q], len: usize) -> Vec<Vec<Q>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * labels.len());
        for w in &out {
            for l in labels {
                let mut v = w.clone();
                v.push(l.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}

fn word_at(level: Level, a: &Q, w: &[Q], b: &Q) -> IISymbol {
    match level {
        Level::A => IISymbol::a(a.clone(), w.to_vec(), b.clone()),
        Level::L => IISymbol::l(a.clone(), w.to_vec(), b.clone()),
        Level::H => unreachable!("relations live in the path-free quotients"),
    }
}

/// Body of the path-composition relation for `I(a; w; b)` split at the
/// intermediate point `c`, normalized at `level`.
fn path_split_body(level: Level, a: &Q, w: &[Q], b: &Q, c: &Q) -> FormalSum<Monomial> {
    let mut body = normalize_monomial(&[word_at(level, a, w, b)], level);
    for i in 0..=w.len() {
        let head = word_at(level, a, &w[..i], c);
        let tail = word_at(level, c, &w[i..], b);
        let prod = normalize_monomial(&[head, tail], level);
        body.add_scaled(&prod, &-q_one());
    }
    body
}

/// Body of the shuffle relation for `I(a;α;b)·I(a;β;b)`, normalized at
/// `level`: the sum over interleavings minus the product monomial, so
/// that in 𝔏 (where the product dies) the body is the vanishing sum.
fn shuffle_body(level: Level, a: &Q, alpha: &[Q], beta: &[Q], b: &Q) -> FormalSum<Monomial> {
    let mut body = FormalSum::zero();
    for w in shuffle(alpha, beta) {
        body.add_assign(&normalize_monomial(&[word_at(level, a, &w, b)], level));
    }
    let prod = normalize_monomial(
        &[word_at(level, a, alpha, b), word_at(level, a, beta, b)],
        level,
    );
    body.add_scaled(&prod, &-q_one());
    body
}

/// Generates the deterministic, duplicate-free list of relation
/// instances over the given label set, up to the weight bound, at the
/// given level, within the monomial-degree bound, using default caps.
pub fn generate_relations(
    labels: &[Q],
    weight: usize,
    level: Level,
    monomial_degree: usize,
) -> Result<Vec<RelationInstance>, Error> {
    generate_relations_capped(labels, weight, level, monomial_degree, &RelationCaps::default())
}

/// As `generate_relations` with explicit caps.
pub fn generate_relations_capped(
    labels: &[Q],
    weight: usize,
    level: Level,
    monomial_degree: usize,
    caps: &RelationCaps,
) -> Result<Vec<RelationInstance>, Error> {
    assert!(level != Level::H, "relations live in the path-free quotients");
    let mut labels: Vec<Q> = labels.to_vec();
    labels.sort();
    labels.dedup();
    if weight > caps.max_weight
        || labels.len() > caps.max_labels
        || monomial_degree > caps.max_degree
    {
        return Err(Error::BoundTooLarge(format!(
            "requested weight {weight}, {} labels, degree {monomial_degree} exceed caps {caps:?}",
            labels.len()
        )));
    }
    let mut out = vec![];
    let mut seen = BTreeSet::new();
    let mut push = |out: &mut Vec<RelationInstance>, inst: RelationInstance| {
        if seen.insert(inst.provenance.clone()) {
            out.push(inst);
        }
    };

    // UNIT: weight-0 words equal 1.
    for a in &labels {
        for b in &labels {
            let mut body = normalize_monomial(&[word_at(level, a, &[], b)], level);
            body.add_term(Monomial::one(), -q_one());
            push(&mut out, RelationInstance {
                body,
                kind: RelationKind::Unit,
                provenance: format!("UNIT I({a};{b})"),
            });
        }
    }

    // EQUAL_ENDPOINT: positive-weight words with equal endpoints vanish.
    for a in &labels {
        for k in 1..=weight {
            for w in words_over(&labels, k) {
                let body = normalize_monomial(&[word_at(level, a, &w, a)], level);
                push(&mut out, RelationInstance {
                    body,
                    kind: RelationKind::EqualEndpoint,
                    provenance: format!("EQUAL_ENDPOINT I({a};{};{a})", fmt_labels(&w)),
                });
            }
        }
    }

    // REVERSAL: I(a;w;b) − (−1)^k I(b;w-reversed;a); emitted once per
    // orientation pair, choosing the lexicographically smaller side.
    for a in &labels {
        for b in &labels {
            for k in 1..=weight {
                for w in words_over(&labels, k) {
                    let mut fwd: Vec<Q> = vec![a.clone()];
                    fwd.extend(w.iter().cloned());
                    fwd.push(b.clone());
                    let rev: Vec<Q> = fwd.iter().rev().cloned().collect();
                    if fwd > rev {
                        continue;
                    }
                    let mut body = normalize_monomial(&[word_at(level, a, &w, b)], level);
                    let wr: Vec<Q> = w.iter().rev().cloned().collect();
                    let sign = if k % 2 == 0 { q_one() } else { -q_one() };
                    body.add_scaled(
                        &normalize_monomial(&[word_at(level, b, &wr, a)], level),
                        &-sign,
                    );
                    push(&mut out, RelationInstance {
                        body,
                        kind: RelationKind::Reversal,
                        provenance: format!("REVERSAL I({a};{};{b})", fmt_labels(&w)),
                    });
                }
            }
        }
    }

    // PATH_SPLIT: composition through each occurring label. The 𝒜
    // form has two-factor products, so it needs degree ≥ 2 there; in
    // 𝔏 the middle products die and the telescoped form is degree 1.
    if level == Level::L || monomial_degree >= 2 {
        for a in &labels {
            for b in &labels {
                for c in &labels {
                    for k in 1..=weight {
                        for w in words_over(&labels, k) {
                            let body = path_split_body(level, a, &w, b, c);
                            push(&mut out, RelationInstance {
                                body,
                                kind: RelationKind::PathSplit,
                                provenance: format!(
                                    "PATH_SPLIT I({a};{};{b}) at {c}",
                                    fmt_labels(&w)
                                ),
                            });
                        }
                    }
                }
            }
        }
    }

    // SHUFFLE_VANISH: product of two common-endpoint words minus the
    // shuffle sum; the unordered factor pair is emitted once.
    if level == Level::L || monomial_degree >= 2 {
        for a in &labels {
            for b in &labels {
                for p in 1..weight {
                    for q in p..=(weight - p) {
                        for alpha in words_over(&labels, p) {
                            for beta in words_over(&labels, q) {
                                if p == q && alpha > beta {
                                    continue;
                                }
                                let body = shuffle_body(level, a, &alpha, &beta, b);
                                push(&mut out, RelationInstance {
                                    body,
                                    kind: RelationKind::ShuffleVanish,
                                    provenance: format!(
                                        "SHUFFLE_VANISH I({a};{};{b}) sh I({a};{};{b})",
                                        fmt_labels(&alpha),
                                        fmt_labels(&beta)
                                    ),
                                });
                            }
                        }
                    }
                }
            }
        }
    }

    // L_PRODUCT_ZERO: in 𝔏 a two-factor positive-weight monomial is
    // zero outright (enforced by the normalizer; audit entries).
    if level == Level::L {
        for a in &labels {
            for b in &labels {
                for p in 1..weight {
                    for q in p..=(weight - p) {
                        for alpha in words_over(&labels, p) {
                            for beta in words_over(&labels, q) {
                                if p == q && alpha > beta {
                                    continue;
                                }
                                let body = normalize_monomial(
                                    &[word_at(level, a, &alpha, b), word_at(level, a, &beta, b)],
                                    level,
                                );
                                push(&mut out, RelationInstance {
                                    body,
                                    kind: RelationKind::LProductZero,
                                    provenance: format!(
                                        "L_PRODUCT_ZERO I({a};{};{b})·I({a};{};{b})",
                                        fmt_labels(&alpha),
                                        fmt_labels(&beta)
                                    ),
                                });
                            }
                        }
                    }
                }
            }
        }
    }

    // Spectator lifts (𝒜 only): multiply each live relation by one
    // extra word, staying inside the weight and degree bounds. In 𝔏
    // every lifted monomial would have two positive-weight factors and
    // die, so lifts only matter in 𝒜.
    if level == Level::A {
        let base: Vec<RelationInstance> =
            out.iter().filter(|r| !r.body.is_zero()).cloned().collect();
        for inst in base {
            let body_weight = inst.body.iter().map(|(m, _)| m.weight()).max().unwrap();
            let body_degree = inst.body.iter().map(|(m, _)| m.degree()).max().unwrap();
            if body_degree + 1 > monomial_degree || body_weight >= weight {
                continue;
            }
            for s in &labels {
                for t in &labels {
                    for k in 1..=(weight - body_weight) {
                        for w in words_over(&labels, k) {
                            let raw = word_at(Level::A, s, &w, t);
                            let Some((cs, Some(ws))) = norm_opt(&raw) else {
                                continue;
                            };
                            let spect = Monomial::single(ws);
                            let mut body = FormalSum::zero();
                            for (m, c) in inst.body.iter() {
                                body.add_term(m.mul(&spect), c.clone() * cs.clone());
                            }
                            push(&mut out, RelationInstance {
                                body,
                                kind: inst.kind,
                                provenance: format!(
                                    "{} × spectator I({s};{};{t})",
                                    inst.provenance,
                                    fmt_labels(&w)
                                ),
                            });
                        }
                    }
                }
            }
        }
    }

    Ok(out)
}

/// As `generate_relations_capped`, keeping only instances whose
/// (weight-homogeneous) bodies are nonzero and sit at exactly `weight`.
/// Complete for membership of weight-homogeneous targets — any graded
/// representation restricts to its weight-`weight` part — and much
/// cheaper to eliminate than the full graded list.
pub fn homogeneous_relations(
    labels: &[Q],
    weight: usize,
    level: Level,
    monomial_degree: usize,
    caps: &RelationCaps,
) -> Result<Vec<RelationInstance>, Error> {
    let all = generate_relations_capped(labels, weight, level, monomial_degree, caps)?;
    Ok(all
        .into_iter()
        .filter(|r| !r.body.is_zero() && r.body.iter().all(|(m, _)| m.weight() == weight))
        .collect())
}

/// A verified witness that the target equals Σ coefficient·relation
/// over the listed entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CertEntry {
    /// Index into the relation list the certificate was built against.
    pub index: usize,
    pub kind: RelationKind,
    pub provenance: String,
    pub coefficient: Q,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MembershipCertificate {
    pub entries: Vec<CertEntry>,
}

/// Outcome of a span query: a replayable certificate, or the reduced
/// residual showing what no supplied relation can cancel.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Membership {
    Member(MembershipCertificate),
    NotMember { residual: FormalSum<Monomial> },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }
}

fn monomial_level(m: &Monomial) -> Option<Level> {
    m.0.first().map(|s| s.level)
}

fn sum_level(s: &FormalSum<Monomial>, seen: &mut Option<Level>) -> Result<(), Error> {
    for (m, _) in s.iter() {
        if let Some(l) = monomial_level(m) {
            match seen {
                None => *seen = Some(l),
                Some(prev) if *prev == l => {}
                Some(prev) => {
                    return Err(Error::UniverseMismatch(format!(
                        "mixed levels {prev:?} and {l:?} in one span computation"
                    )));
                }
            }
        }
    }
    Ok(())
}

struct BasisRow {
    pivot: Monomial,
    /// Fully reduced: pivot coefficient 1, no other row's pivot occurs.
    body: FormalSum<Monomial>,
    /// Expression of `body` as a combination of original relations.
    combo: FormalSum<usize>,
}

/// An immutable reduced basis of a relation set, reusable across
/// independent membership queries.
pub struct SpanBasis {
    level: Option<Level>,
    rows: Vec<BasisRow>,
    kinds: Vec<(RelationKind, String)>,
}

impl SpanBasis {
    pub fn new(relations: &[RelationInstance]) -> Result<Self, Error> {
        let mut level = None;
        for r in relations {
            sum_level(&r.body, &mut level)?;
        }
        let mut basis = SpanBasis {
            level,
            rows: vec![],
            kinds: relations.iter().map(|r| (r.kind, r.provenance.clone())).collect(),
        };
        for (idx, r) in relations.iter().enumerate() {
            basis.insert(r.body.clone(), FormalSum::term(idx, q_one()));
        }
        Ok(basis)
    }

    /// Reduces `sum` against the basis; returns the remainder and the
    /// combination used, so that input = remainder + Σ combo·relation.
    fn reduce(&self, mut sum: FormalSum<Monomial>) -> (FormalSum<Monomial>, FormalSum<usize>) {
        let mut combo = FormalSum::zero();
        for row in &self.rows {
            if sum.is_zero() {
                break;
            }
            let c = sum.coeff(&row.pivot);
            if !c.is_zero() {
                sum.add_scaled(&row.body, &-c.clone());
                combo.add_scaled(&row.combo, &c);
            }
        }
        (sum, combo)
    }

    fn insert(&mut self, body: FormalSum<Monomial>, combo: FormalSum<usize>) {
        // reduce the incoming row, tracking its expression in the
        // original relation list
        let mut row = body;
        let mut rc = combo;
        for existing in &self.rows {
            let c = row.coeff(&existing.pivot);
            if !c.is_zero() {
                row.add_scaled(&existing.body, &-c.clone());
                rc.add_scaled(&existing.combo, &-c);
            }
        }
        let Some((pivot, _)) = row.iter().next().map(|(m, c)| (m.clone(), c.clone())) else {
            return; // dependent (or audit-only zero body)
        };
        let inv = q_one() / row.coeff(&pivot);
        row.scale(&inv);
        rc.scale(&inv);
        // eliminate the new pivot from every existing row
        for existing in &mut self.rows {
            let c = existing.body.coeff(&pivot);
            if !c.is_zero() {
                existing.body.add_scaled(&row, &-c.clone());
                existing.combo.add_scaled(&rc, &-c);
            }
        }
        self.rows.push(BasisRow { pivot, body: row, combo: rc });
    }

    /// Decides membership of `target` in the span, returning a
    /// certificate (internally verified) or the residual.
    pub fn membership(&self, target: &FormalSum<Monomial>) -> Result<Membership, Error> {
        let mut level = self.level;
        sum_level(target, &mut level)?;
        let (residual, combo) = self.reduce(target.clone());
        if !residual.is_zero() {
            return Ok(Membership::NotMember { residual });
        }
        let entries: Vec<CertEntry> = combo
            .iter()
            .map(|(idx, c)| CertEntry {
                index: *idx,
                kind: self.kinds[*idx].0,
                provenance: self.kinds[*idx].1.clone(),
                coefficient: c.clone(),
            })
            .collect();
        Ok(Membership::Member(MembershipCertificate { entries }))
    }
}

/// One-shot span query: builds the basis and decides membership.
pub fn span_membership(
    target: &FormalSum<Monomial>,
    relations: &[RelationInstance],
) -> Result<Membership, Error> {
    let basis = SpanBasis::new(relations)?;
    let m = basis.membership(target)?;
    if let Membership::Member(cert) = &m {
        debug_assert!(verify_certificate(target, cert, relations)?);
    }
    Ok(m)
}

/// Replays a certificate: recomputes Σ coefficient·relation body and
/// compares with the target exactly.
pub fn verify_certificate(
    target: &FormalSum<Monomial>,
    cert: &MembershipCertificate,
    relations: &[RelationInstance],
) -> Result<bool, Error> {
    let mut sum = FormalSum::zero();
    for e in &cert.entries {
        let rel = relations.get(e.index).ok_or_else(|| {
            Error::UnknownRelation(format!("certificate references index {}", e.index))
        })?;
        if rel.provenance != e.provenance || rel.kind != e.kind {
            return Err(Error::UnknownRelation(format!(
                "certificate entry {} does not match the relation list ({} vs {})",
                e.index, e.provenance, rel.provenance
            )));
        }
        sum.add_scaled(&rel.body, &e.coefficient);
    }
    Ok(&sum == target)
}

/// Membership result for a tensor sum, decided separately for the left
/// coefficient of each distinct right word.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorMembership {
    pub per_right: Vec<(IISymbol, Membership)>,
}

impl TensorMembership {
    pub fn is_member(&self) -> bool {
        self.per_right.iter().all(|(_, m)| m.is_member())
    }

    pub fn residuals(&self) -> Vec<(IISymbol, FormalSum<Monomial>)> {
        self.per_right
            .iter()
            .filter_map(|(w, m)| match m {
                Membership::NotMember { residual } => Some((w.clone(), residual.clone())),
                Membership::Member(_) => None,
            })
            .collect()
    }
}

/// Decides whether a tensor sum lies in (span ⊗ 𝓗): grouping by the
/// right word, each group's left combination must lie in the span.
pub fn tensor_membership(
    target: &FormalSum<TensorTerm>,
    basis: &SpanBasis,
) -> Result<TensorMembership, Error> {
    let mut groups: std::collections::BTreeMap<IISymbol, FormalSum<Monomial>> =
        std::collections::BTreeMap::new();
    for (t, c) in target.iter() {
        groups.entry(t.right.clone()).or_default().add_term(t.left.clone(), c.clone());
    }
    let mut per_right = vec![];
    for (w, lefts) in groups {
        if lefts.is_zero() {
            continue;
        }
        per_right.push((w, basis.membership(&lefts)?));
    }
    Ok(TensorMembership { per_right })
}
