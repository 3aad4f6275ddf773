//! Independent floating-point oracle: truncated nested-series
//! evaluation of admissible MZV words with explicit, provable tail
//! bounds. Deliberately disjoint from the symbolic machinery — no
//! rationals, no normalization — so agreement is evidence, not
//! circularity.

use crate::formal::FormalSum;
use crate::rat::q_to_f64;
use crate::words::{word_to_zeta, IISymbol, Level};
use crate::Error;

#[derive(Clone, Copy, Debug)]
pub struct NumericValue {
    pub value: f64,
    pub tail_bound: f64,
    pub truncation: u64,
}

impl NumericValue {
    pub fn exact(value: f64, truncation: u64) -> Self {
        NumericValue { value, tail_bound: 0.0, truncation }
    }
}

fn check_index(index: &[u32]) -> Result<(), Error> {
    if index.is_empty() || index.iter().any(|&k| k == 0) || *index.last().unwrap() < 2 {
        return Err(Error::NotAdmissibleIndex);
    }
    Ok(())
}

/// Truncated MZV: Σ over 0 < n₁ < … < n_d ≤ N of ∏ nᵢ^{−kᵢ},
/// computed by a prefix-sum sweep in O(d·N).
///
/// Tail bound: every discarded term has n_d > N, and the inner sum
/// over n₁ < … < n_{d−1} < n_d is at most H_{n_d−1}^{d−1}/(d−1)!
/// (all kᵢ ≥ 1), so with k = k_d,
///
///   tail ≤ (1/(d−1)!) Σ_{n>N} (1+ln n)^{d−1} n^{−k}
///        ≤ (1/(d−1)!) [f(N+1) + ∫_{N+1}^∞ (1+ln x)^{d−1} x^{−k} dx]
///
/// provided f(x) = (1+ln x)^{d−1}x^{−k} is decreasing on [N+1, ∞),
/// i.e. k(1+ln(N+1)) ≥ d−1 — enforced as a precondition. The integral
/// is evaluated exactly via ∫_M^∞ (ln x)^j x^{−k} dx =
/// M^{1−k} Σ_{i=0}^{j} (j!/i!)(ln M)^i/(k−1)^{j−i+1}.
pub fn mzv_eval(index: &[u32], n_max: u64) -> Result<NumericValue, Error> {
    check_index(index)?;
    let d = index.len();
    let k_last = *index.last().unwrap() as f64;
    let m = (n_max + 1) as f64;
    if (n_max as usize) < d || k_last * (1.0 + m.ln()) < (d - 1) as f64 {
        return Err(Error::BoundTooLarge(format!(
            "truncation {n_max} too small for depth {d}"
        )));
    }

    // depth[i] after pass j holds the sum over chains of length j+1
    // whose largest entry is exactly i+1
    let n = n_max as usize;
    let mut depth = vec![1.0f64; n];
    for (j, &k) in index.iter().enumerate() {
        let mut running = 0.0;
        let mut next = vec![0.0f64; n];
        for i in 0..n {
            let below = if j == 0 { 1.0 } else { running };
            next[i] = below / ((i + 1) as f64).powi(k as i32);
            running += depth[i];
        }
        depth = next;
    }
    let value: f64 = depth.iter().sum();

    // tail bound per the formula above
    let dm1 = (d - 1) as u32;
    let fact_dm1: f64 = (1..=dm1 as u64).map(|i| i as f64).product();
    let ln_m = m.ln();
    let f_head = (1.0 + ln_m).powi(dm1 as i32) / m.powf(k_last);
    let mut integral = 0.0;
    for j in 0..=dm1 {
        // ∫_M^∞ (ln x)^j x^{−k} dx, closed form
        let mut fact_ratio: f64 = (1..=j as u64).map(|i| i as f64).product(); // j!/i! at i = 0
        let mut acc = 0.0;
        for i in 0..=j {
            acc += fact_ratio * ln_m.powi(i as i32) / (k_last - 1.0).powi((j - i + 1) as i32);
            fact_ratio /= (i + 1) as f64;
        }
        integral += binom_f64(dm1, j) * m.powf(1.0 - k_last) * acc;
    }
    let tail_bound = (f_head + integral) / fact_dm1;
    Ok(NumericValue { value, tail_bound, truncation: n_max })
}

fn binom_f64(n: u32, k: u32) -> f64 {
    let mut r = 1.0;
    for i in 0..k {
        r = r * (n - i) as f64 / (i + 1) as f64;
    }
    r
}

/// Numeric value of a formal sum of H-words on the standard path:
/// each word must be the unit or an admissible {0,1}-word, and tail
/// bounds combine through the absolute coefficients.
pub fn eval_formal(sum: &FormalSum<IISymbol>, n_max: u64) -> Result<NumericValue, Error> {
    let mut value = 0.0;
    let mut tail = 0.0;
    for (word, coeff) in sum.iter() {
        if word.level != Level::H
            || word.path.as_ref().map(|t| (t.name.as_str(), t.inverted)) != Some(("std", false))
        {
            return Err(Error::NonStdPath);
        }
        let c = q_to_f64(coeff);
        if word.weight() == 0 {
            value += c;
            continue;
        }
        let (sign, index) = word_to_zeta(&word.interior)?;
        let nv = mzv_eval(&index, n_max)?;
        value += c * q_to_f64(&sign) * nv.value;
        tail += c.abs() * nv.tail_bound;
    }
    Ok(NumericValue { value, tail_bound: tail, truncation: n_max })
}

/// |a − b| ≤ tails + tol.
pub fn compare(a: &NumericValue, b: &NumericValue, tol: f64) -> bool {
    (a.value - b.value).abs() <= a.tail_bound + b.tail_bound + tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{q_int, q_one};
    use crate::words::{regularize, shuffle, PathTag};

    const ZETA2: f64 = 1.6449340668482264;
    const ZETA3: f64 = 1.2020569031595943;
    const ZETA4: f64 = 1.0823232337111382;

    fn hword(interior: &[i64]) -> IISymbol {
        IISymbol::h(
            q_int(0),
            interior.iter().map(|&x| q_int(x)).collect(),
            q_int(1),
            PathTag::new("std"),
        )
    }

    #[test]
    fn zeta2_truncation() {
        let v = mzv_eval(&[2], 1000).unwrap();
        assert!((v.value - 1.6439345666815615).abs() < 1e-12);
        assert!((v.value - ZETA2).abs() < 1e-3);
        assert!((v.value - ZETA2).abs() <= v.tail_bound);
    }

    #[test]
    fn euler_zeta3_equals_zeta12() {
        let a = mzv_eval(&[3], 2000).unwrap();
        let b = mzv_eval(&[1, 2], 2000).unwrap();
        assert!(compare(&a, &b, 0.0), "{} vs {}", a.value, b.value);
        assert!((a.value - ZETA3).abs() <= a.tail_bound);
    }

    #[test]
    fn bernoulli_even_values() {
        let v2 = mzv_eval(&[2], 4000).unwrap();
        let v4 = mzv_eval(&[4], 4000).unwrap();
        assert!((v2.value - ZETA2).abs() <= v2.tail_bound + 1e-9);
        assert!((v4.value - ZETA4).abs() <= v4.tail_bound + 1e-12);
    }

    #[test]
    fn tail_bounds_are_honest() {
        for index in [
            vec![2u32],
            vec![3],
            vec![1, 2],
            vec![2, 3],
            vec![1, 1, 3],
            vec![1, 1, 1, 2],
            vec![2, 1, 1, 2],
        ] {
            let small = mzv_eval(&index, 500).unwrap();
            let big = mzv_eval(&index, 4000).unwrap();
            assert!(
                (big.value - small.value).abs() <= small.tail_bound,
                "{index:?}: {} vs {} (tail {})",
                big.value,
                small.value,
                small.tail_bound
            );
            assert!(big.tail_bound < small.tail_bound);
        }
    }

    #[test]
    fn rejections() {
        assert!(matches!(mzv_eval(&[2, 1], 100), Err(Error::NotAdmissibleIndex)));
        assert!(matches!(mzv_eval(&[], 100), Err(Error::NotAdmissibleIndex)));
        assert!(matches!(mzv_eval(&[0, 2], 100), Err(Error::NotAdmissibleIndex)));
        assert!(matches!(mzv_eval(&[1, 1, 2], 2), Err(Error::BoundTooLarge(_))));
        let a_word = IISymbol::a(q_int(0), vec![q_int(1), q_int(0)], q_int(1));
        let sum = FormalSum::term(a_word, q_one());
        assert!(matches!(eval_formal(&sum, 100), Err(Error::NonStdPath)));
        let divergent = FormalSum::term(hword(&[0, 1]), q_one());
        assert!(eval_formal(&divergent, 100).is_err());
    }

    #[test]
    fn wedge_value() {
        // 2·I(0;1,1,0;1) = 2·ζ(1,2) = 2·ζ(3)
        let sum = FormalSum::term(hword(&[1, 1, 0]), q_int(2));
        let v = eval_formal(&sum, 2000).unwrap();
        assert!((v.value - 2.0 * ZETA3).abs() <= v.tail_bound + 1e-6);
    }

    #[test]
    fn regularized_word_evaluates() {
        // I(0;0,1;1) regularizes to −I(0;1,0;1) = +ζ(2)
        let reg = regularize(&hword(&[0, 1])).unwrap();
        let v = eval_formal(&reg, 2000).unwrap();
        assert!((v.value - ZETA2).abs() <= v.tail_bound + 1e-6);
    }

    #[test]
    fn shuffle_product_numeric() {
        // ζ(2)² vs the shuffle expansion of I(0;1,0;1)·I(0;1,0;1)
        let z2 = mzv_eval(&[2], 2000).unwrap();
        let square = NumericValue {
            value: z2.value * z2.value,
            tail_bound: 3.0 * z2.tail_bound, // (v+t)² ≤ v² + 3t for v < 2, t < 1
            truncation: 2000,
        };
        let a = [q_int(1), q_int(0)];
        let mut expansion = FormalSum::zero();
        for w in shuffle(&a, &a) {
            expansion.add_term(
                IISymbol::h(q_int(0), w, q_int(1), PathTag::new("std")),
                q_one(),
            );
        }
        let v = eval_formal(&expansion, 2000).unwrap();
        assert!(compare(&square, &v, 1e-6), "{} vs {}", square.value, v.value);
    }

    #[test]
    fn empty_sum_is_zero() {
        let v = eval_formal(&FormalSum::zero(), 100).unwrap();
        assert_eq!(v.value, 0.0);
        assert_eq!(v.tail_bound, 0.0);
    }
}
