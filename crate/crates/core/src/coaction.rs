//! The Goncharov coproduct on iterated-integral words, the
//! infinitesimal coactions D_r and D_r′, and their labeled-poset
//! evaluators in both "definition" (sum over linear extensions) and
//! "closed" form, for verifying the closed formulas against the
//! definitions.

use crate::formal::FormalSum;
use crate::poset::{ArrowElem, LabeledPoset, PathSpec};
use crate::rat::{q_int, q_one, Q};
use crate::words::{
    monomial_product, norm_opt, normalize_monomial, regularize, shuffle, IISymbol, Level,
    Monomial, PathTag, TensorTerm,
};
use crate::yamamoto::{expand, expand_unchecked};
use crate::Error;

/// A coaction value: a formal sum of tensor terms whose left factors
/// live in a path-free quotient (𝒜 or its further quotient 𝔏) and
/// whose right factors are path-tagged words. Every term satisfies
/// left-weight + right-weight = `weight`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoactionResult {
    pub terms: FormalSum<TensorTerm>,
    /// Level of the left tensor factors (`A` or `L`, never `H`).
    pub level: Level,
    /// The common total weight of every term.
    pub weight: usize,
}

impl CoactionResult {
    pub fn zero(level: Level, weight: usize) -> Self {
        CoactionResult { terms: FormalSum::zero(), level, weight }
    }

    /// Every term's left+right weight equals the declared weight.
    pub fn is_graded(&self) -> bool {
        self.terms.iter().all(|(t, _)| t.weight() == self.weight)
    }

    pub fn add_assign(&mut self, other: &CoactionResult) {
        assert!(self.level == other.level && self.weight == other.weight);
        self.terms.add_assign(&other.terms);
    }

    /// Coefficient of left = 1, right = `w`.
    pub fn counit_coeff(&self, w: &IISymbol) -> Q {
        self.terms
            .coeff(&TensorTerm { left: Monomial::one(), right: w.clone() })
    }
}

/// Mode selector for the poset-level evaluators: expand the definition
/// over linear extensions, or use the closed formula.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    Definition,
    Closed,
}

/// Which linear extension of each window to fix when evaluating D_r′
/// in its regrouped form (the result is provably independent of it).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ZChoice {
    First,
    Middle,
    Last,
}

/// The weight-0 word that stands for a trivial right factor; all
/// rights of one result share its endpoints and path tag.
fn unit_right(start: &Q, end: &Q, tag: &PathTag) -> IISymbol {
    IISymbol::h(start.clone(), vec![], end.clone(), tag.clone())
}

/// Normalizes `factors ⊗ right` and adds it into `terms`. The right
/// factor is normalized at the word level; a trivial right becomes
/// `unit`. Zero terms are dropped.
fn push_term(
    terms: &mut FormalSum<TensorTerm>,
    level: Level,
    factors: &[IISymbol],
    right_raw: &IISymbol,
    coeff: &Q,
    unit: &IISymbol,
) {
    let left = normalize_monomial(factors, level);
    if left.is_zero() {
        return;
    }
    let Some((rc, rw)) = norm_opt(right_raw) else {
        return;
    };
    let right = rw.unwrap_or_else(|| unit.clone());
    for (m, c) in left.iter() {
        terms.add_term(
            TensorTerm { left: m.clone(), right: right.clone() },
            coeff.clone() * c.clone() * rc.clone(),
        );
    }
}

/// Tensors a pre-normalized monomial sum with a raw right word.
fn push_monomials(
    terms: &mut FormalSum<TensorTerm>,
    lefts: &FormalSum<Monomial>,
    right_raw: &IISymbol,
    coeff: &Q,
    unit: &IISymbol,
) {
    if lefts.is_zero() {
        return;
    }
    let Some((rc, rw)) = norm_opt(right_raw) else {
        return;
    };
    let right = rw.unwrap_or_else(|| unit.clone());
    for (m, c) in lefts.iter() {
        terms.add_term(
            TensorTerm { left: m.clone(), right: right.clone() },
            coeff.clone() * c.clone() * rc.clone(),
        );
    }
}

/// The full coproduct of a word: Σ over subsequences of the interior,
/// gap products on the left tensored with the kept word on the right,
/// normalized. Exponential in the weight; intended for small words.
pub fn delta_word(w: &IISymbol) -> CoactionResult {
    assert!(w.level == Level::H, "the coproduct acts on path-tagged words");
    let k = w.weight();
    let tag = w.path.clone().expect("H-words carry a path tag");
    let unit = unit_right(&w.start, &w.end, &tag);
    let label = |i: usize| -> &Q {
        // a_0, a_1, …, a_k, a_{k+1}
        if i == 0 {
            &w.start
        } else if i == k + 1 {
            &w.end
        } else {
            &w.interior[i - 1]
        }
    };
    let mut terms = FormalSum::zero();
    for kept_mask in 0u64..(1 << k) {
        let kept: Vec<usize> = (1..=k).filter(|i| kept_mask >> (i - 1) & 1 == 1).collect();
        let mut bounds = vec![0usize];
        bounds.extend(&kept);
        bounds.push(k + 1);
        let mut factors = vec![];
        for pair in bounds.windows(2) {
            let (u, v) = (pair[0], pair[1]);
            let interior: Vec<Q> = (u + 1..v).map(|i| label(i).clone()).collect();
            factors.push(IISymbol::a(label(u).clone(), interior, label(v).clone()));
        }
        let right = IISymbol::h(
            w.start.clone(),
            kept.iter().map(|&i| label(i).clone()).collect(),
            w.end.clone(),
            tag.clone(),
        );
        push_term(&mut terms, Level::A, &factors, &right, &q_one(), &unit);
    }
    CoactionResult { terms, level: Level::A, weight: k }
}

fn d_word(w: &IISymbol, r: usize, level: Level) -> Result<CoactionResult, Error> {
    assert!(w.level == Level::H, "infinitesimal coactions act on path-tagged words");
    if r == 0 {
        return Err(Error::BadR);
    }
    let k = w.weight();
    let tag = w.path.clone().expect("H-words carry a path tag");
    let unit = unit_right(&w.start, &w.end, &tag);
    let mut terms = FormalSum::zero();
    if r > k {
        return Ok(CoactionResult { terms, level, weight: k });
    }
    for s in 0..=k - r {
        let start = if s == 0 { w.start.clone() } else { w.interior[s - 1].clone() };
        let end = if s + r == k { w.end.clone() } else { w.interior[s + r].clone() };
        let factor = IISymbol::a(start, w.interior[s..s + r].to_vec(), end);
        let mut kept = w.interior[..s].to_vec();
        kept.extend_from_slice(&w.interior[s + r..]);
        let right = IISymbol::h(w.start.clone(), kept, w.end.clone(), tag.clone());
        push_term(&mut terms, level, &[factor], &right, &q_one(), &unit);
    }
    Ok(CoactionResult { terms, level, weight: k })
}

/// D_r on a word: the consecutive length-r block cut out on the left
/// (in 𝔏) and the remainder on the right. `r = 0` is rejected; `r`
/// above the weight gives zero.
pub fn dr_word(w: &IISymbol, r: usize) -> Result<CoactionResult, Error> {
    d_word(w, r, Level::L)
}

/// D_r′ on a word: as `dr_word` but with 𝒜-level left factors.
pub fn drprime_word(w: &IISymbol, r: usize) -> Result<CoactionResult, Error> {
    d_word(w, r, Level::A)
}

fn word_of_seq(x: &LabeledPoset, seq: &[usize], path: &PathSpec, tag: &PathTag) -> IISymbol {
    IISymbol::h(
        path.start.clone(),
        seq.iter().map(|&i| x.label(i).clone()).collect(),
        path.end.clone(),
        tag.clone(),
    )
}

/// D_r of the motivic integral of a poset. `Definition` expands the
/// integral over linear extensions and applies the word-level D_r;
/// `Closed` sums, over irreducible size-r windows Y and arrow pairs
/// (p, q) of the extension, the words of Y with endpoints (δ(p); δ(q))
/// tensored with the expansion of the contracted poset. The two modes
/// agree modulo the 𝔏-level relation ideal.
pub fn dr_poset(
    x: &LabeledPoset,
    path: &PathSpec,
    r: usize,
    mode: Mode,
) -> Result<CoactionResult, Error> {
    if r == 0 {
        return Err(Error::BadR);
    }
    if !x.is_admissible(path) {
        return Err(Error::NotAdmissible(
            "poset is not admissible for the path endpoints".into(),
        ));
    }
    let tag = PathTag::new(&path.tag);
    let unit = unit_right(&path.start, &path.end, &tag);
    let mut terms = FormalSum::zero();
    match mode {
        Mode::Definition => {
            for (word, c) in expand(x, path)?.words.iter() {
                terms.add_scaled(&dr_word(word, r)?.terms, c);
            }
        }
        Mode::Closed => {
            for y in x.window_subsets(r) {
                if x.components(y)?.len() != 1 {
                    continue;
                }
                let (sub, map) = x.subposet(y);
                let (tos, froms) = x.arrows_ext(y)?;
                for &p in &tos {
                    for &q in &froms {
                        let contracted = x.contract(y, p, q)?;
                        let rights = expand_unchecked(&contracted, path).words;
                        let (dp, dq) = (x.ext_label(p, path), x.ext_label(q, path));
                        for z in sub.linear_extensions() {
                            let interior: Vec<Q> =
                                z.seq.iter().map(|&i| x.label(map[i]).clone()).collect();
                            let factor = IISymbol::a(dp.clone(), interior, dq.clone());
                            for (w, c) in rights.iter() {
                                push_term(&mut terms, Level::L, &[factor.clone()], w, c, &unit);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(CoactionResult { terms, level: Level::L, weight: x.n() })
}

/// D_r′ of the motivic integral of a poset, evaluated in the regrouped
/// form: for each size-r window Y, fix one linear extension Z of Y,
/// and sum over the extensions of X in which Y sits as a consecutive
/// block ordered by Z. The left factor is the product over the
/// irreducible components of Y of their word sums with the block's
/// neighbouring endpoints; the right factor is the extension with the
/// block removed. The value does not depend on the Z choices.
pub fn drprime_poset(
    x: &LabeledPoset,
    path: &PathSpec,
    r: usize,
    choice: ZChoice,
) -> Result<CoactionResult, Error> {
    if r == 0 {
        return Err(Error::BadR);
    }
    if !x.is_admissible(path) {
        return Err(Error::NotAdmissible(
            "poset is not admissible for the path endpoints".into(),
        ));
    }
    let tag = PathTag::new(&path.tag);
    let unit = unit_right(&path.start, &path.end, &tag);
    let mut terms = FormalSum::zero();
    for y in x.window_subsets(r) {
        let (sub, map) = x.subposet(y);
        let exts = sub.linear_extensions();
        let z = match choice {
            ZChoice::First => &exts[0],
            ZChoice::Middle => &exts[exts.len() / 2],
            ZChoice::Last => exts.last().unwrap(),
        };
        let z_seq: Vec<usize> = z.seq.iter().map(|&i| map[i]).collect();
        let comps = x.components(y)?;
        for xbar in x.tot_under(&z_seq) {
            let first = xbar.position(z_seq[0]).unwrap();
            let last = xbar.position(*z_seq.last().unwrap()).unwrap();
            let p = if first == 0 { ArrowElem::Bottom } else { ArrowElem::El(xbar.seq[first - 1]) };
            let q = if last + 1 == xbar.seq.len() {
                ArrowElem::Top
            } else {
                ArrowElem::El(xbar.seq[last + 1])
            };
            let (dp, dq) = (x.ext_label(p, path), x.ext_label(q, path));
            let mut lefts = FormalSum::term(Monomial::one(), q_one());
            for comp in &comps {
                let (csub, cmap) = x.subposet(*comp);
                let mut comp_sum = FormalSum::zero();
                for w in csub.linear_extensions() {
                    let interior: Vec<Q> =
                        w.seq.iter().map(|&i| x.label(cmap[i]).clone()).collect();
                    comp_sum.add_assign(&normalize_monomial(
                        &[IISymbol::a(dp.clone(), interior, dq.clone())],
                        Level::A,
                    ));
                }
                lefts = monomial_product(&lefts, &comp_sum);
            }
            let kept: Vec<usize> =
                xbar.seq.iter().copied().filter(|i| y >> i & 1 == 0).collect();
            let right = word_of_seq(x, &kept, path, &tag);
            push_monomials(&mut terms, &lefts, &right, &q_one(), &unit);
        }
    }
    Ok(CoactionResult { terms, level: Level::A, weight: x.n() })
}

/// The Y-part of the coproduct of a poset integral, by definition:
/// for each linear extension, the maximal consecutive runs of Y give
/// the left factors (each with its neighbouring endpoints) and the
/// remaining chain gives the right factor.
pub fn delta_y_definition(
    x: &LabeledPoset,
    path: &PathSpec,
    y: u64,
) -> Result<CoactionResult, Error> {
    if y & !x.all() != 0 {
        return Err(Error::UnknownElement(format!("mask {y:#x}")));
    }
    let tag = PathTag::new(&path.tag);
    let unit = unit_right(&path.start, &path.end, &tag);
    let mut terms = FormalSum::zero();
    for xbar in x.linear_extensions() {
        let seq = &xbar.seq;
        let mut factors = vec![];
        let mut i = 0;
        while i < seq.len() {
            if y >> seq[i] & 1 == 0 {
                i += 1;
                continue;
            }
            let start = i;
            while i < seq.len() && y >> seq[i] & 1 == 1 {
                i += 1;
            }
            let dp = if start == 0 {
                path.start.clone()
            } else {
                x.label(seq[start - 1]).clone()
            };
            let dq = if i == seq.len() { path.end.clone() } else { x.label(seq[i]).clone() };
            let interior: Vec<Q> = seq[start..i].iter().map(|&e| x.label(e).clone()).collect();
            factors.push(IISymbol::a(dp, interior, dq));
        }
        let kept: Vec<usize> = seq.iter().copied().filter(|e| y >> e & 1 == 0).collect();
        let right = word_of_seq(x, &kept, path, &tag);
        push_term(&mut terms, Level::A, &factors, &right, &q_one(), &unit);
    }
    Ok(CoactionResult { terms, level: Level::A, weight: x.n() })
}

/// Do the closed-form hypotheses hold for Y ⊆ X: every component of Y
/// is a window whose arrow sets in the extension are singletons?
pub fn closed_form_applies(x: &LabeledPoset, y: u64) -> Result<bool, Error> {
    if y & !x.all() != 0 {
        return Err(Error::UnknownElement(format!("mask {y:#x}")));
    }
    for z in x.components(y)? {
        if !x.is_window(z) {
            return Ok(false);
        }
        let (tos, froms) = x.arrows_ext(z)?;
        if tos.len() != 1 || froms.len() != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The Y-part of the coproduct in closed form — the product over the
/// components Z of Y of the word sums of Z with Z's unique endpoints,
/// tensored with the expansion of the complement subposet augmented,
/// for every component whose two endpoints are both elements, by the
/// pair placing that component's lower endpoint below its upper one
/// (endpoints never lie in Y, so both live in the complement). Returns
/// None when the hypotheses do not hold; no extrapolation.
///
/// The endpoint pairs match the terms the per-extension definition can
/// produce: in any extension in which a component forms a consecutive
/// block, its lower endpoint precedes the block and its upper endpoint
/// follows it, so the restriction to the complement orders them; the
/// unaugmented complement would also admit the reversed orders, which
/// the definition never yields.
pub fn delta_y_closed(
    x: &LabeledPoset,
    path: &PathSpec,
    y: u64,
) -> Result<Option<CoactionResult>, Error> {
    if !closed_form_applies(x, y)? {
        return Ok(None);
    }
    let tag = PathTag::new(&path.tag);
    let unit = unit_right(&path.start, &path.end, &tag);
    let mut lefts = FormalSum::term(Monomial::one(), q_one());
    let mut endpoint_pairs: Vec<(usize, usize)> = vec![];
    for z in x.components(y)? {
        let (tos, froms) = x.arrows_ext(z)?;
        if let (ArrowElem::El(p), ArrowElem::El(q)) = (tos[0], froms[0]) {
            endpoint_pairs.push((p, q));
        }
        let (dp, dq) = (x.ext_label(tos[0], path), x.ext_label(froms[0], path));
        let (zsub, zmap) = x.subposet(z);
        let mut comp_sum = FormalSum::zero();
        for w in zsub.linear_extensions() {
            let interior: Vec<Q> = w.seq.iter().map(|&i| x.label(zmap[i]).clone()).collect();
            comp_sum.add_assign(&normalize_monomial(
                &[IISymbol::a(dp.clone(), interior, dq.clone())],
                Level::A,
            ));
        }
        lefts = monomial_product(&lefts, &comp_sum);
    }
    let (rsub, rmap) = x.subposet(x.all() & !y);
    let mapped: Vec<(usize, usize)> = endpoint_pairs
        .iter()
        .filter_map(|&(p, q)| {
            let np = rmap.iter().position(|&o| o == p)?;
            let nq = rmap.iter().position(|&o| o == q)?;
            Some((np, nq))
        })
        .collect();
    let raug = rsub.with_pairs(&mapped)?;
    let rights = expand_unchecked(&raug, path).words;
    let mut terms = FormalSum::zero();
    for (w, c) in rights.iter() {
        push_monomials(&mut terms, &lefts, w, c, &unit);
    }
    Ok(Some(CoactionResult { terms, level: Level::A, weight: x.n() }))
}

/// Per-subset report from `delta_poset` in closed mode: the subset
/// mask and whether the closed form applied (false = fell back to the
/// definition for that subset).
pub type DeltaYReport = (u64, bool);

#[derive(Clone, Debug)]
pub struct DeltaOutcome {
    pub result: CoactionResult,
    pub reports: Vec<DeltaYReport>,
}

/// The coproduct of a poset integral as the sum of its Y-parts over
/// all subsets Y ⊆ X. In `Closed` mode each Y-part uses the closed
/// form when its hypotheses hold and falls back to the definition
/// otherwise, recording which happened per subset.
pub fn delta_poset(x: &LabeledPoset, path: &PathSpec, mode: Mode) -> Result<DeltaOutcome, Error> {
    if !x.is_admissible(path) {
        return Err(Error::NotAdmissible(
            "poset is not admissible for the path endpoints".into(),
        ));
    }
    let mut result = CoactionResult::zero(Level::A, x.n());
    let mut reports = vec![];
    for y in 0..=x.all() {
        let part = match mode {
            Mode::Definition => {
                reports.push((y, false));
                delta_y_definition(x, path, y)?
            }
            Mode::Closed => match delta_y_closed(x, path, y)? {
                Some(p) => {
                    reports.push((y, true));
                    p
                }
                None => {
                    reports.push((y, false));
                    delta_y_definition(x, path, y)?
                }
            },
        };
        result.add_assign(&part);
    }
    Ok(DeltaOutcome { result, reports })
}

/// exp(Σ_r D_r′) applied to 1 ⊗ w, with D_r′ acting on 𝒜⊗𝓗 by
/// a ⊗ h ↦ (a ⊗ 1)·D_r′(h). Each application strictly lowers the
/// right weight, so the series is finite; coefficients are exact 1/n!.
pub fn exp_drprime(w: &IISymbol) -> CoactionResult {
    assert!(w.level == Level::H, "the exponential acts on path-tagged words");
    let weight = w.weight();
    let apply_s = |sum: &FormalSum<TensorTerm>| -> FormalSum<TensorTerm> {
        let mut out = FormalSum::zero();
        for (t, c) in sum.iter() {
            let k = t.right.weight();
            for r in 1..=k {
                let part = drprime_word(&t.right, r).expect("r >= 1");
                for (u, cu) in part.terms.iter() {
                    out.add_term(
                        TensorTerm { left: t.left.mul(&u.left), right: u.right.clone() },
                        c.clone() * cu.clone(),
                    );
                }
            }
        }
        out
    };
    // seed with the normalized word so the series of a vanishing word
    // is zero rather than a phantom 1 ⊗ w term
    let Some((c0, w0)) = norm_opt(w) else {
        return CoactionResult { terms: FormalSum::zero(), level: Level::A, weight };
    };
    let seed = TensorTerm {
        left: Monomial::one(),
        right: w0.unwrap_or_else(|| w.clone()),
    };
    let mut acc = FormalSum::term(seed, c0);
    let mut terms = acc.clone();
    let mut factorial = q_one();
    for n in 1..=weight {
        acc = apply_s(&acc);
        if acc.is_zero() {
            break;
        }
        factorial = factorial * q_int(n as i64);
        terms.add_scaled(&acc, &(q_one() / factorial.clone()));
    }
    CoactionResult { terms, level: Level::A, weight }
}

/// (π′ ⊗ id): kills every term whose left monomial has two or more
/// positive-weight factors and rewrites surviving single factors at
/// the 𝔏 level.
pub fn project_l(res: &CoactionResult) -> CoactionResult {
    let mut terms = FormalSum::zero();
    for (t, c) in res.terms.iter() {
        match t.left.degree() {
            0 => terms.add_term(t.clone(), c.clone()),
            1 => {
                let lifted = normalize_monomial(&t.left.0, Level::L);
                for (m, cm) in lifted.iter() {
                    terms.add_term(
                        TensorTerm { left: m.clone(), right: t.right.clone() },
                        c.clone() * cm.clone(),
                    );
                }
            }
            _ => {}
        }
    }
    CoactionResult { terms, level: Level::L, weight: res.weight }
}

/// Shuffle product of two path-free words sharing endpoints, as a sum
/// of single words.
fn shuffle_words(a: &IISymbol, b: &IISymbol, level: Level) -> FormalSum<IISymbol> {
    assert!(a.start == b.start && a.end == b.end, "shuffle needs equal endpoints");
    let mut out = FormalSum::zero();
    for w in shuffle(&a.interior, &b.interior) {
        out.add_term(
            IISymbol { level, start: a.start.clone(), interior: w, end: a.end.clone(), path: None },
            q_one(),
        );
    }
    out
}

/// Rewrites every left monomial as a sum of single words by expanding
/// products with the shuffle relation (an 𝒜-relation, so the result
/// equals the input modulo the relation ideal), then normalizes.
pub fn flatten_left_shuffle(res: &CoactionResult) -> CoactionResult {
    let mut terms = FormalSum::zero();
    for (t, c) in res.terms.iter() {
        let mut flat: FormalSum<Option<IISymbol>> = FormalSum::term(None, q_one());
        for f in &t.left.0 {
            let mut next = FormalSum::zero();
            for (acc, ca) in flat.iter() {
                match acc {
                    None => next.add_term(Some(f.clone()), ca.clone()),
                    Some(wacc) => {
                        for (w, cw) in shuffle_words(wacc, f, res.level).iter() {
                            next.add_term(Some(w.clone()), ca.clone() * cw.clone());
                        }
                    }
                }
            }
            flat = next;
        }
        for (acc, ca) in flat.iter() {
            let factors: Vec<IISymbol> = acc.iter().cloned().collect();
            let lefts = normalize_monomial(&factors, res.level);
            for (m, cm) in lefts.iter() {
                terms.add_term(
                    TensorTerm { left: m.clone(), right: t.right.clone() },
                    c.clone() * ca.clone() * cm.clone(),
                );
            }
        }
    }
    CoactionResult { terms, level: res.level, weight: res.weight }
}

/// Complete reduction of the left factors of an 𝒜-level result over
/// the standard {0,1} alphabet: each factor is rewritten as an exact
/// combination of admissible words by shuffle regularization, and
/// products are expanded by the shuffle relation, leaving every left
/// monomial a single admissible word (or the unit). This is a normal
/// form modulo the 𝒜-relations generated over {0,1}.
pub fn reduce_left_01(res: &CoactionResult) -> Result<CoactionResult, Error> {
    assert!(res.level == Level::A, "reduction applies to 𝒜-level results");
    let mut terms = FormalSum::zero();
    for (t, c) in res.terms.iter() {
        let mut flat: FormalSum<Option<IISymbol>> = FormalSum::term(None, q_one());
        for f in &t.left.0 {
            let reg = regularize(f)?;
            let mut next = FormalSum::zero();
            for (acc, ca) in flat.iter() {
                for (w, cw) in reg.iter() {
                    let cc = ca.clone() * cw.clone();
                    match acc {
                        None => next.add_term(Some(w.clone()), cc),
                        Some(wacc) => {
                            for (s, cs) in shuffle_words(wacc, w, Level::A).iter() {
                                next.add_term(Some(s.clone()), cc.clone() * cs.clone());
                            }
                        }
                    }
                }
            }
            flat = next;
        }
        for (acc, ca) in flat.iter() {
            let left = match acc {
                None => Monomial::one(),
                Some(w) => Monomial::single(w.clone()),
            };
            terms.add_term(
                TensorTerm { left, right: t.right.clone() },
                c.clone() * ca.clone(),
            );
        }
    }
    Ok(CoactionResult { terms, level: Level::A, weight: res.weight })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl;
    use crate::rat::q_parse;
    use crate::yamamoto::expand_sum;
    use num_traits::Zero;

    fn q(n: i64) -> Q {
        q_int(n)
    }

    fn std_word(interior: &[i64]) -> IISymbol {
        IISymbol::h(
            q(0),
            interior.iter().map(|&v| q(v)).collect(),
            q(1),
            PathTag::new("std"),
        )
    }

    #[test]
    fn delta_word_small_cases() {
        // weight 0: 1 ⊗ 1
        let w0 = IISymbol::h(q(2), vec![], q(5), PathTag::new("g"));
        let d = delta_word(&w0);
        assert_eq!(d.terms.len(), 1);
        assert_eq!(d.counit_coeff(&w0), q_one());

        // weight 1, generic labels: 1 ⊗ w + I^a(2;3;5) ⊗ 1
        let w1 = IISymbol::h(q(2), vec![q(3)], q(5), PathTag::new("g"));
        let d = delta_word(&w1);
        assert!(d.is_graded());
        assert_eq!(d.terms.len(), 2);
        assert_eq!(d.counit_coeff(&w1), q_one());
        let unit = unit_right(&q(2), &q(5), &PathTag::new("g"));
        assert_eq!(
            d.terms.coeff(&TensorTerm {
                left: Monomial::single(IISymbol::a(q(2), vec![q(3)], q(5))),
                right: unit,
            }),
            q_one()
        );

        // the double zeta word of weight 2: all cross terms die
        let w = std_word(&[1, 0]);
        let d = delta_word(&w);
        assert_eq!(d.terms.len(), 2);
        assert_eq!(d.counit_coeff(&w), q_one());
    }

    #[test]
    fn delta_word_cross_terms_at_weight_four() {
        // the (2,2) zeta word has a genuine middle term
        let w = std_word(&[1, 0, 1, 0]);
        let d = delta_word(&w);
        assert!(d.is_graded());
        let unit = unit_right(&q(0), &q(1), &PathTag::new("std"));
        // left factor I^a(0;1,0;1) from cutting the trailing block
        let cross = TensorTerm {
            left: Monomial::single(IISymbol::a(q(0), vec![q(1), q(0)], q(1))),
            right: std_word(&[1, 0]),
        };
        assert!(!d.terms.coeff(&cross).is_zero());
        assert_eq!(d.counit_coeff(&w), q_one());
        assert_eq!(
            d.terms.coeff(&TensorTerm {
                left: Monomial::single(IISymbol::a(q(0), vec![q(1), q(0), q(1), q(0)], q(1))),
                right: unit,
            }),
            q_one()
        );
    }

    #[test]
    fn dr_word_cases() {
        let w = std_word(&[1, 0]);
        assert!(matches!(dr_word(&w, 0), Err(Error::BadR)));
        // D_1 of the double zeta word vanishes
        assert!(dr_word(&w, 1).unwrap().terms.is_zero());
        // r above the weight: zero, not an error
        assert!(dr_word(&w, 7).unwrap().terms.is_zero());
        // r = weight: the full word on the left
        let d = dr_word(&w, 2).unwrap();
        assert_eq!(d.terms.len(), 1);
        let unit = unit_right(&q(0), &q(1), &PathTag::new("std"));
        assert_eq!(
            d.terms.coeff(&TensorTerm {
                left: Monomial::single(IISymbol::l(q(0), vec![q(1), q(0)], q(1))),
                right: unit,
            }),
            q_one()
        );
        // weight 1 word: single term I^l ⊗ 1
        let w1 = IISymbol::h(q(2), vec![q(3)], q(5), PathTag::new("g"));
        let d = dr_word(&w1, 1).unwrap();
        assert_eq!(d.terms.len(), 1);
        assert!(d.is_graded());
    }

    #[test]
    fn projection_identity_on_words() {
        // (π' ⊗ id)∘Δ = Σ_r D_r + 1 ⊗ w, exactly, term by term
        let words = [
            std_word(&[1, 0]),
            std_word(&[1, 1, 0]),
            std_word(&[1, 0, 1, 0]),
            std_word(&[1, 0, 0, 1, 0]),
            std_word(&[1, 1, 1, 0, 0]),
            IISymbol::h(q(2), vec![q(3), q(5)], q(7), PathTag::new("g")),
            IISymbol::h(
                q(0),
                vec![q_parse("1/2").unwrap(), q(1), q(0)],
                q(1),
                PathTag::new("g"),
            ),
        ];
        for w in &words {
            let lhs = project_l(&delta_word(w));
            let mut rhs = CoactionResult::zero(Level::L, w.weight());
            rhs.terms.add_term(
                TensorTerm { left: Monomial::one(), right: w.clone() },
                q_one(),
            );
            for r in 1..=w.weight() {
                rhs.add_assign(&dr_word(w, r).unwrap());
            }
            assert_eq!(lhs, rhs, "projection identity failed for {w}");
        }
    }

    #[test]
    fn dr_poset_chain_modes_agree_exactly() {
        let chain = dsl::chain(&[q(1), q(0), q(0)]).unwrap();
        let path = PathSpec::std();
        for r in 1..=3 {
            let a = dr_poset(&chain, &path, r, Mode::Definition).unwrap();
            let b = dr_poset(&chain, &path, r, Mode::Closed).unwrap();
            assert_eq!(a, b, "chain D_{r} modes disagree");
            assert!(a.is_graded());
        }
        // r beyond the size: both zero
        assert!(dr_poset(&chain, &path, 9, Mode::Definition).unwrap().terms.is_zero());
        assert!(dr_poset(&chain, &path, 9, Mode::Closed).unwrap().terms.is_zero());
        assert!(matches!(
            dr_poset(&chain, &path, 0, Mode::Definition),
            Err(Error::BadR)
        ));
    }

    #[test]
    fn dr_poset_rejects_inadmissible() {
        let bad = dsl::chain(&[q(0), q(0)]).unwrap(); // minimal labeled 0
        assert!(matches!(
            dr_poset(&bad, &PathSpec::std(), 1, Mode::Definition),
            Err(Error::NotAdmissible(_))
        ));
    }

    #[test]
    fn drprime_poset_r1_matches_wordwise_definition() {
        let path = PathSpec::std();
        for x in [dsl::wedge(), dsl::w5()] {
            let direct = drprime_poset(&x, &path, 1, ZChoice::First).unwrap();
            let mut word_side = CoactionResult::zero(Level::A, x.n());
            for (w, c) in expand_sum(&x, &path).unwrap().iter() {
                let part = drprime_word(w, 1).unwrap();
                word_side.terms.add_scaled(&part.terms, c);
            }
            assert_eq!(direct, word_side);
            assert!(direct.is_graded());
        }
    }

    #[test]
    fn drprime_poset_choice_independent() {
        let path = PathSpec::std();
        let diamond_path = PathSpec::new(q(2), q(3), "g");
        let cases: Vec<(LabeledPoset, PathSpec)> = vec![
            (dsl::wedge(), path.clone()),
            (dsl::w5(), path.clone()),
            (dsl::diamond(), diamond_path),
        ];
        for (x, p) in &cases {
            for r in 1..=x.n() {
                let a = drprime_poset(x, p, r, ZChoice::First).unwrap();
                let b = drprime_poset(x, p, r, ZChoice::Last).unwrap();
                let c = drprime_poset(x, p, r, ZChoice::Middle).unwrap();
                assert_eq!(a, b, "Z-choice changed D_{r}' on {} elements", x.n());
                assert_eq!(a, c, "Z-choice changed D_{r}' on {} elements", x.n());
            }
        }
    }

    #[test]
    fn drprime_poset_flattens_to_definition() {
        // after shuffle-expanding left products, the regrouped form
        // equals the extension-by-extension evaluation for a poset
        // whose windows have no vanishing component factors
        let x = dsl::chain(&[q(1), q(0)]).unwrap();
        let path = PathSpec::std();
        for r in 1..=2 {
            let prop = flatten_left_shuffle(&drprime_poset(&x, &path, r, ZChoice::First).unwrap());
            let mut word_side = CoactionResult::zero(Level::A, x.n());
            for (w, c) in expand_sum(&x, &path).unwrap().iter() {
                word_side.terms.add_scaled(&drprime_word(w, r).unwrap().terms, c);
            }
            assert_eq!(prop, flatten_left_shuffle(&word_side));
        }
    }

    #[test]
    fn delta_poset_equals_sum_of_word_coproducts() {
        let cases: Vec<(LabeledPoset, PathSpec)> = vec![
            (dsl::wedge(), PathSpec::std()),
            (dsl::chain(&[q(1), q(0), q(0)]).unwrap(), PathSpec::std()),
            (dsl::diamond(), PathSpec::new(q(2), q(3), "g")),
        ];
        for (x, path) in &cases {
            let poset_side = delta_poset(x, path, Mode::Definition).unwrap().result;
            let mut word_side = CoactionResult::zero(Level::A, x.n());
            for (w, c) in expand_sum(x, path).unwrap().iter() {
                word_side.terms.add_scaled(&delta_word(w).terms, c);
            }
            assert_eq!(poset_side, word_side);
        }
    }

    #[test]
    fn delta_poset_counit_edges() {
        let x = dsl::wedge();
        let path = PathSpec::std();
        let d = delta_poset(&x, &path, Mode::Definition).unwrap().result;
        // Y = ∅ gives 1 ⊗ I(X): the expansion is 2·I(0;1,1,0;1)
        let w = std_word(&[1, 1, 0]);
        assert_eq!(d.counit_coeff(&w), q(2));
        // Y = X gives I^a(X) ⊗ 1
        let unit = unit_right(&q(0), &q(1), &PathTag::new("std"));
        assert_eq!(
            d.terms.coeff(&TensorTerm {
                left: Monomial::single(IISymbol::a(q(0), vec![q(1), q(1), q(0)], q(1))),
                right: unit,
            }),
            q(2)
        );
    }

    #[test]
    fn delta_closed_mode_reports_and_grading() {
        let x = dsl::wedge();
        let path = PathSpec::std();
        let out = delta_poset(&x, &path, Mode::Closed).unwrap();
        assert!(out.result.is_graded());
        assert_eq!(out.reports.len(), 8);
        // the middle element has two lower arrows: closed form must
        // not apply to its singleton
        let mid = out.reports.iter().find(|(y, _)| *y == 0b010).unwrap();
        assert!(!mid.1);
        // a bottom element has singleton arrows both ways
        let bottom = out.reports.iter().find(|(y, _)| *y == 0b001).unwrap();
        assert!(bottom.1);
        // ∅ and the full set always admit the closed form
        assert!(out.reports.iter().find(|(y, _)| *y == 0).unwrap().1);
        assert!(out.reports.iter().find(|(y, _)| *y == 0b111).unwrap().1);
    }

    #[test]
    fn delta_y_closed_matches_definition_on_wedge_bottom() {
        // singleton Y = {x1} on the wedge: both evaluate to zero
        let x = dsl::wedge();
        let path = PathSpec::std();
        let def = delta_y_definition(&x, &path, 0b001).unwrap();
        let closed = delta_y_closed(&x, &path, 0b001).unwrap().unwrap();
        assert!(def.terms.is_zero());
        assert!(closed.terms.is_zero());
    }

    #[test]
    fn exp_matches_delta_at_low_weight() {
        // weight 0 and 1: exact equality always
        let w0 = IISymbol::h(q(2), vec![], q(5), PathTag::new("g"));
        assert_eq!(exp_drprime(&w0).terms, delta_word(&w0).terms);
        let w1 = IISymbol::h(q(2), vec![q(3)], q(5), PathTag::new("g"));
        assert_eq!(exp_drprime(&w1).terms, delta_word(&w1).terms);
        // the double zeta word: all nested removals die, exact again
        let w = std_word(&[1, 0]);
        assert_eq!(exp_drprime(&w).terms, delta_word(&w).terms);
        // a generic-label weight-2 word: the exponential acquires
        // degree-2 left monomials that the coproduct does not have
        let wg = IISymbol::h(q(0), vec![q(2), q(3)], q(1), PathTag::new("g"));
        let e = exp_drprime(&wg);
        let d = delta_word(&wg);
        assert!(e.is_graded() && d.is_graded());
        assert_ne!(e.terms, d.terms);
        assert!(e.terms.iter().any(|(t, _)| t.left.degree() == 2));
        assert!(d.terms.iter().all(|(t, _)| t.left.degree() <= 1));
    }

    #[test]
    fn reduce_left_regularizes_and_flattens() {
        // Δ of the divergent word I(0;0,1;1): its full-word left
        // factor regularizes to −I(0;1,0;1)
        let w = std_word(&[0, 1]);
        let d = delta_word(&w);
        let red = reduce_left_01(&d).unwrap();
        let unit = unit_right(&q(0), &q(1), &PathTag::new("std"));
        assert_eq!(
            red.terms.coeff(&TensorTerm {
                left: Monomial::single(IISymbol::a(q(0), vec![q(1), q(0)], q(1))),
                right: unit,
            }),
            -q_one()
        );
        // every surviving left factor is a single admissible word
        for (t, _) in red.terms.iter() {
            assert!(t.left.degree() <= 1);
            if let Some(f) = t.left.0.first() {
                assert!(crate::words::is_admissible_word(f));
            }
        }
    }

    #[test]
    fn empty_poset_coproduct_is_counit() {
        let x = LabeledPoset::empty();
        let path = PathSpec::std();
        let out = delta_poset(&x, &path, Mode::Definition).unwrap();
        assert_eq!(out.result.terms.len(), 1);
        let unit = unit_right(&q(0), &q(1), &PathTag::new("std"));
        assert_eq!(out.result.counit_coeff(&unit), q_one());
    }
}
