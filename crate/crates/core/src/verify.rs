//! Exhaustive verification sweeps: enumerate labeled posets up to
//! isomorphism, evaluate both sides of each closed-form identity, and
//! certify every difference in the generated relation span, with
//! certificates replayed exactly.

use std::collections::BTreeMap;


use crate::coaction::{
    closed_form_applies, delta_word, delta_y_closed, delta_y_definition, dr_poset, dr_word,
    drprime_poset, exp_drprime, project_l, CoactionResult, Mode, ZChoice,
};
use crate::formal::FormalSum;
use crate::numeric::eval_formal;
use crate::poset::{LabeledPoset, PathSpec};
use crate::rat::{q_int, q_one, q_str, Q};
use crate::relations::{
    homogeneous_relations, verify_certificate, Membership, RelationCaps, RelationInstance,
    SpanBasis, TensorMembership,
};
use crate::words::{norm_opt, IISymbol, Level, Monomial, PathTag, TensorTerm};
use crate::yamamoto::{expand, product_identity, recursion_identity};
use crate::Error;

// ---------------------------------------------------------------------------
// poset enumeration up to isomorphism

const MAX_ENUM: usize = 6;

fn bit(i: usize, j: usize, n: usize) -> u64 {
    1u64 << (i * n + j)
}

fn lt(m: u64, i: usize, j: usize, n: usize) -> bool {
    m & bit(i, j, n) != 0
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut cur: Vec<usize> = (0..n).collect();
    fn rec(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            rec(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    rec(0, &mut cur, &mut out);
    out.sort();
    out
}

fn apply_perm(m: u64, n: usize, perm: &[usize]) -> u64 {
    let mut out = 0;
    for i in 0..n {
        for j in 0..n {
            if lt(m, i, j, n) {
                out |= bit(perm[i], perm[j], n);
            }
        }
    }
    out
}

/// All strict orders on `n` unlabeled points, one canonical matrix per
/// isomorphism class, built by attaching a new point below a filter
/// and above an ideal of a smaller order.
fn unlabeled_orders(n: usize) -> Vec<u64> {
    assert!(n <= MAX_ENUM, "enumeration is sized for small posets");
    if n == 0 {
        return vec![0];
    }
    let prev = unlabeled_orders(n - 1);
    let perms = permutations(n);
    let z = n - 1;
    let mut seen = std::collections::BTreeSet::new();
    for p in prev {
        // grow the (n−1)-point matrix to n points
        let mut base = 0u64;
        for i in 0..z {
            for j in 0..z {
                if lt(p, i, j, n - 1) {
                    base |= bit(i, j, n);
                }
            }
        }
        let ideals: Vec<u64> = (0..1u64 << z)
            .filter(|&d| {
                (0..z).all(|j| d >> j & 1 == 0 || (0..z).all(|i| !lt(base, i, j, n) || d >> i & 1 == 1))
            })
            .collect();
        for &d in &ideals {
            // up-sets disjoint from d whose elements all lie above d
            for u in 0..1u64 << z {
                if u & d != 0 {
                    continue;
                }
                let up_ok = (0..z).all(|i| {
                    u >> i & 1 == 0
                        || (0..z).all(|j| !lt(base, i, j, n) || u >> j & 1 == 1)
                });
                if !up_ok {
                    continue;
                }
                let cross_ok = (0..z).all(|i| {
                    d >> i & 1 == 0
                        || (0..z).all(|j| u >> j & 1 == 0 || lt(base, i, j, n))
                });
                if !cross_ok {
                    continue;
                }
                let mut m = base;
                for i in 0..z {
                    if d >> i & 1 == 1 {
                        m |= bit(i, z, n);
                    }
                    if u >> i & 1 == 1 {
                        m |= bit(z, i, n);
                    }
                }
                let canon = perms.iter().map(|s| apply_perm(m, n, s)).min().unwrap();
                seen.insert(canon);
            }
        }
    }
    seen.into_iter().collect()
}

fn poset_from_matrix(m: u64, n: usize, labels: &[Q]) -> LabeledPoset {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let mut covers = vec![];
    for i in 0..n {
        for j in 0..n {
            if lt(m, i, j, n) && !(0..n).any(|k| lt(m, i, k, n) && lt(m, k, j, n)) {
                covers.push((i, j));
            }
        }
    }
    LabeledPoset::new(names, labels.to_vec(), &covers).expect("enumerated matrix is an order")
}

/// Every {0,1}-labeled poset with 1 ≤ |X| ≤ `max_size`, exactly one
/// representative per isomorphism class of labeled posets, each named
/// deterministically.
pub fn binary_posets_up_to_iso(max_size: usize) -> Vec<(String, LabeledPoset)> {
    let mut out = vec![];
    for n in 1..=max_size {
        let perms = permutations(n);
        let mut idx = 0;
        for m in unlabeled_orders(n) {
            let auts: Vec<&Vec<usize>> =
                perms.iter().filter(|s| apply_perm(m, n, s) == m).collect();
            let mut seen = std::collections::BTreeSet::new();
            for lab in 0..1u32 << n {
                let canon = auts
                    .iter()
                    .map(|s| {
                        let mut v = 0u32;
                        for i in 0..n {
                            if lab >> i & 1 == 1 {
                                v |= 1 << s[i];
                            }
                        }
                        v
                    })
                    .min()
                    .unwrap();
                if canon != lab || !seen.insert(lab) {
                    continue;
                }
                let labels: Vec<Q> = (0..n).map(|i| q_int((lab >> i & 1) as i64)).collect();
                out.push((format!("poset-n{n}-{idx}"), poset_from_matrix(m, n, &labels)));
                idx += 1;
            }
        }
    }
    out
}

/// The path-endpoint assignments from {0,1} for which every linear
/// extension of `x` gives an admissible word.
pub fn admissible_binary_paths(x: &LabeledPoset) -> Vec<PathSpec> {
    let mut out = vec![];
    for s in 0..2i64 {
        for e in 0..2i64 {
            let p = PathSpec::new(q_int(s), q_int(e), "std");
            if x.is_admissible(&p) {
                out.push(p);
            }
        }
    }
    out
}

fn path_label_set(x: &LabeledPoset, path: &PathSpec) -> Vec<Q> {
    let mut labels: Vec<Q> = x.labels().to_vec();
    labels.push(path.start.clone());
    labels.push(path.end.clone());
    labels.sort();
    labels.dedup();
    labels
}

// ---------------------------------------------------------------------------
// span cache

pub struct CacheEntry {
    pub relations: Vec<RelationInstance>,
    pub basis: SpanBasis,
}

/// Reduced relation bases keyed by (level, homogeneous weight, degree,
/// label set), built lazily and reused across membership queries.
pub struct SpanCache {
    caps: RelationCaps,
    entries: BTreeMap<(u8, usize, usize, String), CacheEntry>,
}

fn level_code(level: Level) -> u8 {
    match level {
        Level::A => 0,
        Level::L => 1,
        Level::H => 2,
    }
}

impl Default for SpanCache {
    fn default() -> Self {
        Self::new()
    }
}

impl SpanCache {
    pub fn new() -> Self {
        SpanCache {
            caps: RelationCaps { max_weight: 12, max_labels: 4, max_degree: 3 },
            entries: BTreeMap::new(),
        }
    }

    pub fn entry(
        &mut self,
        labels: &[Q],
        level: Level,
        weight: usize,
        degree: usize,
    ) -> Result<&CacheEntry, Error> {
        let mut ls = labels.to_vec();
        ls.sort();
        ls.dedup();
        let key = (
            level_code(level),
            weight,
            degree,
            ls.iter().map(q_str).collect::<Vec<_>>().join(","),
        );
        if !self.entries.contains_key(&key) {
            let relations = homogeneous_relations(&ls, weight, level, degree, &self.caps)?;
            let basis = SpanBasis::new(&relations)?;
            self.entries.insert(key.clone(), CacheEntry { relations, basis });
        }
        Ok(&self.entries[&key])
    }

    /// Splits a tensor difference by right word and decides span
    /// membership of each (weight-homogeneous) left sum; every
    /// certificate is verified by exact replay before being returned.
    pub fn certify(
        &mut self,
        labels: &[Q],
        level: Level,
        degree: usize,
        diff: &FormalSum<TensorTerm>,
    ) -> Result<TensorMembership, Error> {
        let mut groups: BTreeMap<IISymbol, FormalSum<Monomial>> = BTreeMap::new();
        for (t, c) in diff.iter() {
            groups
                .entry(t.right.clone())
                .or_insert_with(FormalSum::zero)
                .add_term(t.left.clone(), c.clone());
        }
        let mut per_right = vec![];
        for (right, lefts) in groups {
            let w = lefts.iter().map(|(m, _)| m.weight()).max().unwrap();
            debug_assert!(
                lefts.iter().all(|(m, _)| m.weight() == w),
                "left sums split by right word must be weight-homogeneous"
            );
            let entry = self.entry(labels, level, w, degree)?;
            let m = entry.basis.membership(&lefts)?;
            if let Membership::Member(cert) = &m {
                if !verify_certificate(&lefts, cert, &entry.relations)? {
                    return Err(Error::UnknownRelation(
                        "certificate failed exact replay".into(),
                    ));
                }
            }
            per_right.push((right, m));
        }
        Ok(TensorMembership { per_right })
    }
}

// ---------------------------------------------------------------------------
// sweep reports

#[derive(Clone, Debug)]
pub struct InstanceFailure {
    pub instance: String,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct SweepReport {
    pub family: String,
    pub instances: usize,
    pub verified: usize,
    pub failures: Vec<InstanceFailure>,
}

impl SweepReport {
    fn new(family: &str) -> Self {
        SweepReport { family: family.into(), instances: 0, verified: 0, failures: vec![] }
    }

    fn pass(&mut self) {
        self.instances += 1;
        self.verified += 1;
    }

    fn fail(&mut self, instance: String, detail: String) {
        self.instances += 1;
        self.failures.push(InstanceFailure { instance, detail });
    }

    pub fn all_verified(&self) -> bool {
        self.instances > 0 && self.failures.is_empty()
    }
}

fn fmt_monomial_sum(s: &FormalSum<Monomial>) -> String {
    s.iter()
        .map(|(m, c)| format!("{}·{m}", q_str(c)))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn fmt_residuals(tm: &TensorMembership) -> String {
    tm.per_right
        .iter()
        .filter_map(|(right, m)| match m {
            Membership::Member(_) => None,
            Membership::NotMember { residual } => {
                Some(format!("right {right}: residual {}", fmt_monomial_sum(residual)))
            }
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn path_desc(p: &PathSpec) -> String {
    format!("({}→{})", q_str(&p.start), q_str(&p.end))
}

fn diff_of(a: &CoactionResult, b: &CoactionResult) -> FormalSum<TensorTerm> {
    let mut d = a.terms.clone();
    d.add_scaled(&b.terms, &-q_one());
    d
}

// ---------------------------------------------------------------------------
// sweeps

/// Closed form of the infinitesimal coaction D_r versus its
/// definition: the difference must be certified in the 𝔏-relation
/// span. `only_r` restricts the sweep to one block size (the D_1
/// special case); `None` runs every r ≤ |X|.
pub fn verify_dr_closed_form(
    cases: &[(String, LabeledPoset)],
    only_r: Option<usize>,
    cache: &mut SpanCache,
) -> Result<SweepReport, Error> {
    let family = match only_r {
        Some(r) => format!("d{r}-closed-form"),
        None => "dr-closed-form".into(),
    };
    let mut rep = SweepReport::new(&family);
    for (name, x) in cases {
        for path in admissible_binary_paths(x) {
            let rs: Vec<usize> = match only_r {
                Some(r) if r <= x.n() => vec![r],
                Some(_) => vec![],
                None => (1..=x.n()).collect(),
            };
            let labels = path_label_set(x, &path);
            for r in rs {
                let instance = format!("{name} path={} r={r}", path_desc(&path));
                let def = dr_poset(x, &path, r, Mode::Definition)?;
                let closed = dr_poset(x, &path, r, Mode::Closed)?;
                let diff = diff_of(&def, &closed);
                if diff.is_zero() {
                    rep.pass();
                    continue;
                }
                let tm = cache.certify(&labels, Level::L, 1, &diff)?;
                if tm.is_member() {
                    rep.pass();
                } else {
                    rep.fail(instance, fmt_residuals(&tm));
                }
            }
        }
    }
    Ok(rep)
}

/// Closed form of Δ_Y versus its definition, on every Y satisfying the
/// component-window hypotheses; differences certified in the
/// 𝒜-relation span at monomial degree ≤ 2.
pub fn verify_delta_closed_form(
    cases: &[(String, LabeledPoset)],
    cache: &mut SpanCache,
) -> Result<SweepReport, Error> {
    let mut rep = SweepReport::new("delta-y-closed-form");
    for (name, x) in cases {
        for path in admissible_binary_paths(x) {
            let labels = path_label_set(x, &path);
            for y in 0..=x.all() {
                if !closed_form_applies(x, y)? {
                    continue;
                }
                let instance = format!("{name} path={} y={y:#b}", path_desc(&path));
                let def = delta_y_definition(x, &path, y)?;
                let closed = delta_y_closed(x, &path, y)?
                    .expect("hypotheses were checked before applying the closed form");
                let diff = diff_of(&def, &closed);
                if diff.is_zero() {
                    rep.pass();
                    continue;
                }
                let tm = cache.certify(&labels, Level::A, 2, &diff)?;
                if tm.is_member() {
                    rep.pass();
                } else {
                    rep.fail(instance, fmt_residuals(&tm));
                }
            }
        }
    }
    Ok(rep)
}

/// D_r′ must not depend on the choice of the fixed extension Z: exact
/// equality across the three implemented choices.
pub fn verify_choice_independence(
    cases: &[(String, LabeledPoset, PathSpec)],
) -> Result<SweepReport, Error> {
    let mut rep = SweepReport::new("z-choice-independence");
    for (name, x, path) in cases {
        for r in 1..=x.n() {
            let instance = format!("{name} path={} r={r}", path_desc(path));
            let first = drprime_poset(x, path, r, ZChoice::First)?;
            let middle = drprime_poset(x, path, r, ZChoice::Middle)?;
            let last = drprime_poset(x, path, r, ZChoice::Last)?;
            if first == middle && first == last {
                rep.pass();
            } else {
                rep.fail(instance, "results differ across Z-choices".into());
            }
        }
    }
    Ok(rep)
}

/// (π′⊗id)∘Δ = Σ_r D_r as an exact identity on every {0,1}-word with
/// endpoints (0,1) up to the given weight.
pub fn verify_word_projection(max_weight: usize) -> SweepReport {
    let mut rep = SweepReport::new("projection-identity");
    for w in 1..=max_weight {
        for bits in 0..1u64 << w {
            let interior: Vec<Q> = (0..w).map(|i| q_int((bits >> i & 1) as i64)).collect();
            let word = IISymbol::h(q_int(0), interior, q_int(1), PathTag::new("std"));
            let instance = format!("{word}");
            let lhs = project_l(&delta_word(&word));
            let mut rhs = CoactionResult {
                terms: FormalSum::zero(),
                level: Level::L,
                weight: w,
            };
            if let Some((c, right)) = norm_opt(&word) {
                let right = right.expect("positive-weight words cannot normalize to a scalar");
                rhs.terms.add_term(TensorTerm { left: Monomial::one(), right }, c);
            }
            for r in 1..=w {
                rhs.terms.add_assign(&dr_word(&word, r).expect("r ≥ 1").terms);
            }
            if lhs == rhs {
                rep.pass();
            } else {
                rep.fail(instance, "projection of Δ differs from Σ_r D_r".into());
            }
        }
    }
    rep
}

/// exp of the D′ ladder versus Δ on words: differences certified in
/// the 𝒜-relation span.
pub fn verify_exp_identity(
    max_weight: usize,
    cache: &mut SpanCache,
) -> Result<SweepReport, Error> {
    let mut rep = SweepReport::new("exp-identity");
    let labels = [q_int(0), q_int(1)];
    for w in 1..=max_weight {
        for bits in 0..1u64 << w {
            let interior: Vec<Q> = (0..w).map(|i| q_int((bits >> i & 1) as i64)).collect();
            let word = IISymbol::h(q_int(0), interior, q_int(1), PathTag::new("std"));
            let instance = format!("{word}");
            let lhs = exp_drprime(&word);
            let rhs = delta_word(&word);
            let diff = diff_of(&lhs, &rhs);
            if diff.is_zero() {
                rep.pass();
                continue;
            }
            let tm = cache.certify(&labels, Level::A, 3, &diff)?;
            if tm.is_member() {
                rep.pass();
            } else {
                rep.fail(instance, fmt_residuals(&tm));
            }
        }
    }
    Ok(rep)
}

/// Product identity I(X)·I(Y) = I(X ⊔ Y), exact on word sums for every
/// unordered pair within the size bound, plus a numeric spot check on
/// at least `numeric_pairs` admissible pairs.
pub fn verify_product_identities(
    max_total: usize,
    numeric_pairs: usize,
    trunc: u64,
) -> Result<SweepReport, Error> {
    let mut rep = SweepReport::new("product-identity");
    let posets = binary_posets_up_to_iso(max_total.saturating_sub(1));
    let std_path = PathSpec::std();
    let mut numeric_done = 0;
    for (i, (name_x, x)) in posets.iter().enumerate() {
        for (name_y, y) in posets.iter().skip(i) {
            if x.n() + y.n() > max_total {
                continue;
            }
            for path in admissible_binary_paths(x) {
                if !y.is_admissible(&path) {
                    continue;
                }
                let instance = format!("{name_x} ⊔ {name_y} path={}", path_desc(&path));
                if product_identity(x, y, &path)? {
                    rep.pass();
                } else {
                    rep.fail(instance.clone(), "shuffle product differs from direct sum".into());
                }
                if numeric_done < numeric_pairs && path == std_path {
                    let ex = eval_formal(&expand(x, &path)?.words, trunc)?;
                    let ey = eval_formal(&expand(y, &path)?.words, trunc)?;
                    let (sum, _) = x.direct_sum(y)?;
                    let es = eval_formal(&expand(&sum, &path)?.words, trunc)?;
                    let err = (ex.value * ey.value - es.value).abs();
                    let tol = 1e-6
                        + ex.tail_bound * (ey.value.abs() + ey.tail_bound)
                        + ey.tail_bound * ex.value.abs()
                        + es.tail_bound;
                    numeric_done += 1;
                    if err <= tol {
                        rep.pass();
                    } else {
                        rep.fail(
                            format!("{instance} numeric"),
                            format!("|num·num − num| = {err:.3e} exceeds {tol:.3e}"),
                        );
                    }
                }
            }
        }
    }
    if numeric_done < numeric_pairs {
        rep.fail(
            "numeric coverage".into(),
            format!("only {numeric_done} of {numeric_pairs} numeric pairs were available"),
        );
    }
    Ok(rep)
}

/// Recursion identity I(X) = I(X with a<b) + I(X with b<a) for every
/// incomparable pair of every admissible poset within the size bound.
pub fn verify_recursion_identities(max_size: usize) -> Result<SweepReport, Error> {
    let mut rep = SweepReport::new("recursion-identity");
    for (name, x) in binary_posets_up_to_iso(max_size) {
        let paths = admissible_binary_paths(&x);
        if paths.is_empty() {
            continue;
        }
        let strict: std::collections::BTreeSet<(usize, usize)> =
            x.strict_pairs().into_iter().collect();
        for a in 0..x.n() {
            for b in a + 1..x.n() {
                if strict.contains(&(a, b)) || strict.contains(&(b, a)) {
                    continue;
                }
                for path in &paths {
                    let instance =
                        format!("{name} pair=({},{}) path={}", x.name(a), x.name(b), path_desc(path));
                    if recursion_identity(&x, a, b, path)? {
                        rep.pass();
                    } else {
                        rep.fail(instance, "saturated expansions do not sum back".into());
                    }
                }
            }
        }
    }
    Ok(rep)
}
