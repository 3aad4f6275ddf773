//! The motivic Yamamoto integral: expansion of a labeled poset into a
//! formal sum of iterated-integral words over its linear extensions,
//! plus the product and recursion identities it satisfies.

use crate::formal::FormalSum;
use crate::poset::{LabeledPoset, PathSpec};
use crate::rat::q_one;
use crate::words::{shuffle, IISymbol, PathTag};
use crate::Error;

#[derive(Clone, Debug)]
pub struct YamamotoExpansion {
    pub source: LabeledPoset,
    pub path: PathSpec,
    /// One H-word per linear extension, merged with integer
    /// multiplicities; not normalized.
    pub words: FormalSum<IISymbol>,
}

fn word_of_extension(x: &LabeledPoset, seq: &[usize], path: &PathSpec) -> IISymbol {
    let interior = seq.iter().map(|&i| x.label(i).clone()).collect();
    IISymbol::h(
        path.start.clone(),
        interior,
        path.end.clone(),
        PathTag::new(&path.tag),
    )
}

/// Σ over Tot(X) of the word reading X's labels in extension order,
/// with the path's endpoints. The poset must be admissible for the
/// path; the empty poset expands to the unit word.
pub fn expand(x: &LabeledPoset, path: &PathSpec) -> Result<YamamotoExpansion, Error> {
    if !x.is_admissible(path) {
        return Err(Error::NotAdmissible(
            "a minimal element carries the path's start label or a maximal element its end label"
                .into(),
        ));
    }
    Ok(expand_unchecked(x, path))
}

/// Expansion without the admissibility guard — for interior use where
/// the input is known convergent or where divergent symbols are
/// deliberately carried formally.
pub fn expand_unchecked(x: &LabeledPoset, path: &PathSpec) -> YamamotoExpansion {
    let mut words = FormalSum::zero();
    for t in x.linear_extensions() {
        words.add_term(word_of_extension(x, &t.seq, path), q_one());
    }
    YamamotoExpansion { source: x.clone(), path: path.clone(), words }
}

/// Just the word sum of `expand`.
pub fn expand_sum(x: &LabeledPoset, path: &PathSpec) -> Result<FormalSum<IISymbol>, Error> {
    Ok(expand(x, path)?.words)
}

/// Product of two H-word sums with identical endpoints and path, as
/// the shuffle expansion.
pub fn shuffle_product(a: &FormalSum<IISymbol>, b: &FormalSum<IISymbol>) -> FormalSum<IISymbol> {
    let mut out = FormalSum::zero();
    for (wa, ca) in a.iter() {
        for (wb, cb) in b.iter() {
            assert!(
                wa.start == wb.start && wa.end == wb.end && wa.path == wb.path,
                "shuffle product needs equal endpoints and path"
            );
            let c = ca.clone() * cb.clone();
            for interior in shuffle(&wa.interior, &wb.interior) {
                out.add_term(
                    IISymbol {
                        level: wa.level,
                        start: wa.start.clone(),
                        interior,
                        end: wa.end.clone(),
                        path: wa.path.clone(),
                    },
                    c.clone(),
                );
            }
        }
    }
    out
}

/// I(X)·I(Y) = I(X ⊔ Y): does the shuffle product of the expansions
/// equal the expansion of the direct sum, exactly? A pure interleaving
/// identity on raw word sums, so admissibility is not required.
pub fn product_identity(x: &LabeledPoset, y: &LabeledPoset, path: &PathSpec) -> Result<bool, Error> {
    let ex = expand_unchecked(x, path);
    let ey = expand_unchecked(y, path);
    let (sum, _) = x.direct_sum(y)?;
    let es = expand_unchecked(&sum, path);
    Ok(shuffle_product(&ex.words, &ey.words) == es.words)
}

/// I(X) = I(X_a^b) + I(X_b^a) for an incomparable pair, exactly?
/// Holds for raw word sums, so admissibility is not required.
pub fn recursion_identity(
    x: &LabeledPoset,
    a: usize,
    b: usize,
    path: &PathSpec,
) -> Result<bool, Error> {
    let whole = expand_unchecked(x, path);
    let left = expand_unchecked(&x.saturate(a, b)?, path);
    let right = expand_unchecked(&x.saturate(b, a)?, path);
    let mut split = left.words;
    split.add_assign(&right.words);
    Ok(whole.words == split)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{compare, eval_formal};
    use crate::rat::q_int;
    use crate::rat::Q;

    fn q(n: i64) -> Q {
        q_int(n)
    }

    fn wedge() -> LabeledPoset {
        LabeledPoset::new(
            vec!["x1".into(), "x2".into(), "x3".into()],
            vec![q(1), q(0), q(1)],
            &[(0, 1), (2, 1)],
        )
        .unwrap()
    }

    fn w5() -> LabeledPoset {
        LabeledPoset::new(
            (1..=5).map(|i| format!("x{i}")).collect(),
            vec![q(1), q(0), q(1), q(0), q(0)],
            &[(0, 1), (2, 1), (2, 3), (3, 4)],
        )
        .unwrap()
    }

    #[test]
    fn empty_poset_is_unit() {
        let e = expand(&LabeledPoset::empty(), &PathSpec::std()).unwrap();
        assert_eq!(e.words.len(), 1);
        let (w, c) = e.words.iter().next().unwrap();
        assert_eq!(w.weight(), 0);
        assert_eq!(*c, q(1));
    }

    #[test]
    fn wedge_expansion() {
        let e = expand(&wedge(), &PathSpec::std()).unwrap();
        let expected = IISymbol::h(
            q(0),
            vec![q(1), q(1), q(0)],
            q(1),
            PathTag::new("std"),
        );
        assert_eq!(e.words, FormalSum::term(expected, q(2)));
    }

    #[test]
    fn admissibility_enforced() {
        let bad = LabeledPoset::new(vec!["a".into()], vec![q(0)], &[]).unwrap();
        assert!(matches!(
            expand(&bad, &PathSpec::std()),
            Err(Error::NotAdmissible(_))
        ));
        // with endpoints avoiding the element's label it converges
        let generic = PathSpec::new(q(1), q(2), "g");
        assert!(expand(&bad, &generic).is_ok());
    }

    #[test]
    fn multiplicity_counts_extensions() {
        let e = expand(&w5(), &PathSpec::std()).unwrap();
        let total: Q = e.words.iter().map(|(_, c)| c.clone()).sum();
        assert_eq!(total, q(9));
    }

    #[test]
    fn product_identity_examples() {
        let path = PathSpec::std();
        let point = LabeledPoset::new(vec!["y".into()], vec![q(1)], &[]).unwrap();
        assert!(product_identity(&wedge(), &point, &path).unwrap());
        assert!(product_identity(&LabeledPoset::empty(), &wedge(), &path).unwrap());
        let chain2 = LabeledPoset::new(
            vec!["a".into(), "b".into()],
            vec![q(1), q(0)],
            &[(0, 1)],
        )
        .unwrap();
        assert!(product_identity(&chain2, &chain2, &path).unwrap());
    }

    #[test]
    fn recursion_identity_examples() {
        let path = PathSpec::std();
        let anti = LabeledPoset::new(
            vec!["a".into(), "b".into()],
            vec![q(1), q(0)],
            &[],
        )
        .unwrap();
        assert!(recursion_identity(&anti, 0, 1, &path).unwrap());
        assert!(recursion_identity(&w5(), 0, 2, &path).unwrap());
        assert!(matches!(
            recursion_identity(&w5(), 2, 3, &path),
            Err(Error::Comparable(_, _))
        ));
    }

    #[test]
    fn product_identity_numeric() {
        let path = PathSpec::std();
        let chain2 = LabeledPoset::new(
            vec!["a".into(), "b".into()],
            vec![q(1), q(0)],
            &[(0, 1)],
        )
        .unwrap();
        let ex = expand(&wedge(), &path).unwrap().words;
        let ey = expand(&chain2, &path).unwrap().words;
        let (sum, _) = wedge().direct_sum(&chain2).unwrap();
        let es = expand(&sum, &path).unwrap().words;
        let vx = eval_formal(&ex, 2000).unwrap();
        let vy = eval_formal(&ey, 2000).unwrap();
        let vs = eval_formal(&es, 2000).unwrap();
        let prod = crate::numeric::NumericValue {
            value: vx.value * vy.value,
            tail_bound: vx.tail_bound * 3.0 + vy.tail_bound * 3.0,
            truncation: 2000,
        };
        assert!(compare(&prod, &vs, 1e-6));
    }

    #[test]
    fn expansion_word_shape() {
        // every word is a permutation-reading of the label multiset
        let e = expand(&w5(), &PathSpec::std()).unwrap();
        let mut labels: Vec<Q> = w5().labels().to_vec();
        labels.sort();
        for (w, _) in e.words.iter() {
            let mut sorted = w.interior.clone();
            sorted.sort();
            assert_eq!(sorted, labels);
        }
    }
}
