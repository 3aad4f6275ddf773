//! Deterministic LaTeX rendering: `I^{\mathfrak{m}}`-style iterated
//! integrals, optional `\zeta^{\mathfrak{m}}` notation for convertible
//! words, tensor terms, and formal sums.

use num_traits::{One, Signed};

use crate::coaction::CoactionResult;
use crate::formal::FormalSum;
use crate::rat::{q_one, Q};
use crate::words::{is_admissible_word, word_to_zeta, IISymbol, Level, Monomial, TensorTerm};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LatexOptions {
    /// Render standard-path admissible words as `\zeta^{\mathfrak{m}}(...)`.
    pub zeta_notation: bool,
}

fn superscript(level: Level) -> &'static str {
    match level {
        Level::A => r"\mathfrak{a}",
        Level::L => r"\mathfrak{l}",
        Level::H => r"\mathfrak{m}",
    }
}

fn q_latex(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else if q.is_negative() {
        format!(r"-\tfrac{{{}}}{{{}}}", -q.numer(), q.denom())
    } else {
        format!(r"\tfrac{{{}}}{{{}}}", q.numer(), q.denom())
    }
}

/// Is this a word the paper's ζ-notation covers directly: standard
/// (uninverted) path, endpoints 0 and 1, admissible binary interior?
fn zeta_convertible(sym: &IISymbol) -> bool {
    sym.level == Level::H
        && sym
            .path
            .as_ref()
            .is_some_and(|t| t.name == "std" && !t.inverted)
        && is_admissible_word(sym)
}

/// LaTeX for one word, as a (sign, body) pair: the sign is `-1`
/// exactly when ζ-notation is used and the word equals minus the MZV,
/// so sums can fold it into the coefficient.
fn word_latex_signed(sym: &IISymbol, opts: LatexOptions) -> (Q, String) {
    if opts.zeta_notation && zeta_convertible(sym) {
        let (sign, index) = word_to_zeta(&sym.interior).expect("checked convertible");
        let body = index
            .iter()
            .map(|k| k.to_string())
            .collect::<Vec<_>>()
            .join(",");
        return (sign, format!(r"\zeta^{{\mathfrak{{m}}}}({body})"));
    }
    let sup = superscript(sym.level);
    let path_sub = match (&sym.path, sym.level) {
        (Some(tag), Level::H) if tag.name != "std" || tag.inverted => {
            if tag.inverted {
                format!("_{{{}^{{-1}}}}", tag.name)
            } else {
                format!("_{{{}}}", tag.name)
            }
        }
        _ => String::new(),
    };
    let interior = sym
        .interior
        .iter()
        .map(q_latex)
        .collect::<Vec<_>>()
        .join(",");
    (
        q_one(),
        format!(
            "I^{{{sup}}}{path_sub}({};{};{})",
            q_latex(&sym.start),
            interior,
            q_latex(&sym.end)
        ),
    )
}

/// LaTeX for a single word. With ζ-notation a negative conversion sign
/// is printed in front (e.g. `-\zeta^{\mathfrak{m}}(2)`).
pub fn word_latex(sym: &IISymbol, opts: LatexOptions) -> String {
    let (sign, body) = word_latex_signed(sym, opts);
    if sign.is_negative() {
        format!("-{body}")
    } else {
        body
    }
}

/// LaTeX for a product of words; the empty product renders as `1`.
pub fn monomial_latex(m: &Monomial, opts: LatexOptions) -> (Q, String) {
    if m.is_one() {
        return (q_one(), "1".to_string());
    }
    let mut sign = q_one();
    let mut parts = Vec::with_capacity(m.0.len());
    for w in &m.0 {
        let (s, body) = word_latex_signed(w, opts);
        sign *= s;
        parts.push(body);
    }
    (sign, parts.join(r" \cdot "))
}

/// LaTeX for a tensor term, `left \otimes right`.
pub fn tensor_latex(t: &TensorTerm, opts: LatexOptions) -> (Q, String) {
    let (ls, left) = monomial_latex(&t.left, opts);
    let (rs, right) = word_latex_signed(&t.right, opts);
    (ls * rs, format!(r"{left} \otimes {right}"))
}

fn render_sum(terms: Vec<(Q, String)>) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (coeff, body)) in terms.iter().enumerate() {
        let mag = coeff.abs();
        if i == 0 {
            if coeff.is_negative() {
                out.push('-');
            }
        } else if coeff.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if !mag.is_one() || body == "1" {
            out.push_str(&q_latex(&mag));
            if body != "1" {
                out.push_str(r" \, ");
            }
        }
        if body != "1" {
            out.push_str(body);
        }
    }
    out
}

/// LaTeX for a formal sum of words.
pub fn word_sum_latex(sum: &FormalSum<IISymbol>, opts: LatexOptions) -> String {
    render_sum(
        sum.iter()
            .map(|(w, c)| {
                let (sign, body) = word_latex_signed(w, opts);
                (c.clone() * sign, body)
            })
            .collect(),
    )
}

/// LaTeX for a formal sum of word products (relation bodies, span
/// residuals).
pub fn monomial_sum_latex(sum: &FormalSum<Monomial>, opts: LatexOptions) -> String {
    render_sum(
        sum.iter()
            .map(|(m, c)| {
                let (sign, body) = monomial_latex(m, opts);
                (c.clone() * sign, body)
            })
            .collect(),
    )
}

/// LaTeX for a coaction value: a sum of `left \otimes right` terms.
pub fn coaction_latex(res: &CoactionResult, opts: LatexOptions) -> String {
    render_sum(
        res.terms
            .iter()
            .map(|(t, c)| {
                let (sign, body) = tensor_latex(t, opts);
                (c.clone() * sign, body)
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coaction::delta_word;
    use crate::rat::{q_int, q_parse};
    use crate::words::{parse_word_literal, PathTag};

    fn opts(zeta: bool) -> LatexOptions {
        LatexOptions { zeta_notation: zeta }
    }

    #[test]
    fn word_forms() {
        let w = parse_word_literal("I(0;1,0;1)@std").unwrap();
        assert_eq!(word_latex(&w, opts(false)), r"I^{\mathfrak{m}}(0;1,0;1)");
        assert_eq!(word_latex(&w, opts(true)), r"-\zeta^{\mathfrak{m}}(2)");

        let z22 = parse_word_literal("I(0;1,0,1,0;1)@std").unwrap();
        assert_eq!(word_latex(&z22, opts(true)), r"\zeta^{\mathfrak{m}}(2,2)");

        let a = parse_word_literal("I(0;1,0;1)").unwrap();
        assert_eq!(word_latex(&a, opts(true)), r"I^{\mathfrak{a}}(0;1,0;1)");
        let l = parse_word_literal("Il(0;1,0;1)").unwrap();
        assert_eq!(word_latex(&l, opts(false)), r"I^{\mathfrak{l}}(0;1,0;1)");

        let g = parse_word_literal("I(0;1,0;1)@g^-1").unwrap();
        assert_eq!(
            word_latex(&g, opts(true)),
            r"I^{\mathfrak{m}}_{g^{-1}}(0;1,0;1)"
        );

        let rational = IISymbol::h(
            q_int(0),
            vec![q_parse("3/2").unwrap()],
            q_int(1),
            PathTag::new("std"),
        );
        assert_eq!(
            word_latex(&rational, opts(false)),
            r"I^{\mathfrak{m}}(0;\tfrac{3}{2};1)"
        );
    }

    #[test]
    fn tensor_and_unit_rendering() {
        let left = Monomial::single(parse_word_literal("I(0;1;0)").unwrap());
        let right = parse_word_literal("I(0;1,0;1)@std").unwrap();
        let t = TensorTerm { left, right };
        let (sign, body) = tensor_latex(&t, opts(false));
        assert_eq!(sign, q_one());
        assert_eq!(
            body,
            r"I^{\mathfrak{a}}(0;1;0) \otimes I^{\mathfrak{m}}(0;1,0;1)"
        );

        let unit_left = TensorTerm {
            left: Monomial::one(),
            right: parse_word_literal("I(0;1,0;1)@std").unwrap(),
        };
        let (_, body) = tensor_latex(&unit_left, opts(false));
        assert_eq!(body, r"1 \otimes I^{\mathfrak{m}}(0;1,0;1)");
    }

    #[test]
    fn sum_rendering_signs_and_coefficients() {
        let w1 = parse_word_literal("I(0;1,0;1)@std").unwrap();
        let w2 = parse_word_literal("I(0;1,1,0;1)@std").unwrap();
        let mut sum = FormalSum::zero();
        sum.add_term(w1.clone(), q_int(2));
        sum.add_term(w2.clone(), q_int(-1));
        assert_eq!(
            word_sum_latex(&sum, opts(false)),
            r"2 \, I^{\mathfrak{m}}(0;1,0;1) - I^{\mathfrak{m}}(0;1,1,0;1)"
        );

        // ζ-notation folds the conversion sign into the coefficient:
        // 2·I(0;1,0;1) = −2·ζ(2).
        let mut lone = FormalSum::zero();
        lone.add_term(w1, q_int(2));
        assert_eq!(word_sum_latex(&lone, opts(true)), r"-2 \, \zeta^{\mathfrak{m}}(2)");

        let mut frac = FormalSum::zero();
        frac.add_term(w2, q_parse("3/2").unwrap());
        assert_eq!(
            word_sum_latex(&frac, opts(false)),
            r"\tfrac{3}{2} \, I^{\mathfrak{m}}(0;1,1,0;1)"
        );

        assert_eq!(word_sum_latex(&FormalSum::zero(), opts(false)), "0");
    }

    #[test]
    fn coaction_rendering_is_deterministic() {
        let w = parse_word_literal("I(0;1,0;1)@std").unwrap();
        let res = delta_word(&w);
        let a = coaction_latex(&res, opts(false));
        let b = coaction_latex(&res, opts(false));
        assert_eq!(a, b);
        assert!(a.contains(r"\otimes"));
        assert!(a.contains(r"1 \otimes I^{\mathfrak{m}}(0;1,0;1)"));
    }
}
