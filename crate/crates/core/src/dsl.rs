//! One-line text descriptions of labeled posets: chains, antichains,
//! and the named fixture families used throughout the tests and CLI.

use crate::poset::LabeledPoset;
use crate::rat::{q_int, q_parse, Q};
use crate::Error;

/// x1 ≺ x2 ≻ x3 with labels 1, 0, 1.
pub fn wedge() -> LabeledPoset {
    LabeledPoset::new(
        vec!["x1".into(), "x2".into(), "x3".into()],
        vec![q_int(1), q_int(0), q_int(1)],
        &[(0, 1), (2, 1)],
    )
    .unwrap()
}

/// The W-shaped five-element poset: x1 ≺ x2 ≻ x3 ≺ x4 ≺ x5 with
/// labels 1, 0, 1, 0, 0.
pub fn w5() -> LabeledPoset {
    LabeledPoset::new(
        (1..=5).map(|i| format!("x{i}")).collect(),
        vec![q_int(1), q_int(0), q_int(1), q_int(0), q_int(0)],
        &[(0, 1), (2, 1), (2, 3), (3, 4)],
    )
    .unwrap()
}

/// Five elements: x1 below the incomparable pair x2, x3, both below
/// x4, then x5 on top; labels 0, 1, 1, 0, 1.
pub fn diamond() -> LabeledPoset {
    LabeledPoset::new(
        (1..=5).map(|i| format!("x{i}")).collect(),
        vec![q_int(0), q_int(1), q_int(1), q_int(0), q_int(1)],
        &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)],
    )
    .unwrap()
}

/// A total order x1 ≺ … ≺ xk with the given labels.
pub fn chain(labels: &[Q]) -> Result<LabeledPoset, Error> {
    let names = (1..=labels.len()).map(|i| format!("x{i}")).collect();
    let pairs: Vec<(usize, usize)> = (1..labels.len()).map(|i| (i - 1, i)).collect();
    LabeledPoset::new(names, labels.to_vec(), &pairs)
}

/// Pairwise incomparable elements with the given labels.
pub fn antichain(labels: &[Q]) -> Result<LabeledPoset, Error> {
    let names = (1..=labels.len()).map(|i| format!("x{i}")).collect();
    LabeledPoset::new(names, labels.to_vec(), &[])
}

/// Two chains x1 ≺ … ≺ xn and x1' ≺ … ≺ xn' with xa ⪯ xb' whenever
/// a ≤ b; labels 1 on x1, xn, x1', x2' and 0 elsewhere. Needs n ≥ 2.
pub fn example1(n: usize) -> Result<LabeledPoset, Error> {
    if n < 2 {
        return Err(Error::Parse("example1(n) needs n >= 2".into()));
    }
    if 2 * n > crate::poset::MAX_ELEMENTS {
        return Err(Error::TooLarge(format!("example1({n}) has {} elements", 2 * n)));
    }
    let mut names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    names.extend((1..=n).map(|i| format!("x{i}'")));
    let mut labels = vec![q_int(0); 2 * n];
    labels[0] = q_int(1); // x1
    labels[n - 1] = q_int(1); // xn
    labels[n] = q_int(1); // x1'
    labels[n + 1] = q_int(1); // x2'
    let mut pairs = Vec::new();
    for i in 1..n {
        pairs.push((i - 1, i)); // x-chain
        pairs.push((n + i - 1, n + i)); // primed chain
    }
    for i in 0..n {
        pairs.push((i, n + i)); // xi below xi'
    }
    LabeledPoset::new(names, labels, &pairs)
}

/// A chain x1 ≺ … ≺ x_{s+t} together with a chain x1' ≺ … ≺ xn'
/// whose top sits below x_{s+t}; labels 1 on every primed element and
/// on x1 and x_{s+1}, 0 elsewhere. Needs s, t ≥ 1.
pub fn example2(s: usize, t: usize, n: usize) -> Result<LabeledPoset, Error> {
    if s < 1 || t < 1 {
        return Err(Error::Parse("example2(s,t,n) needs s >= 1 and t >= 1".into()));
    }
    let total = s + t + n;
    if total > crate::poset::MAX_ELEMENTS {
        return Err(Error::TooLarge(format!("example2({s},{t},{n}) has {total} elements")));
    }
    let mut names: Vec<String> = (1..=s + t).map(|i| format!("x{i}")).collect();
    names.extend((1..=n).map(|i| format!("x{i}'")));
    let mut labels = vec![q_int(0); s + t];
    labels[0] = q_int(1); // x1
    labels[s] = q_int(1); // x_{s+1}
    labels.extend(vec![q_int(1); n]); // every primed element
    let mut pairs = Vec::new();
    for i in 1..s + t {
        pairs.push((i - 1, i));
    }
    for i in 1..n {
        pairs.push((s + t + i - 1, s + t + i));
    }
    if n > 0 {
        pairs.push((s + t + n - 1, s + t - 1)); // xn' below x_{s+t}
    }
    LabeledPoset::new(names, labels, &pairs)
}

/// A chain x1 ≺ … ≺ x_{n+1} together with a chain x1' ≺ … ≺ xm'
/// whose top sits below x_{n+1}; labels 1 on x1 and x1' only. Needs
/// n, m ≥ 1.
pub fn example3(n: usize, m: usize) -> Result<LabeledPoset, Error> {
    if n < 1 || m < 1 {
        return Err(Error::Parse("example3(n,m) needs n >= 1 and m >= 1".into()));
    }
    let total = n + 1 + m;
    if total > crate::poset::MAX_ELEMENTS {
        return Err(Error::TooLarge(format!("example3({n},{m}) has {total} elements")));
    }
    let mut names: Vec<String> = (1..=n + 1).map(|i| format!("x{i}")).collect();
    names.extend((1..=m).map(|i| format!("x{i}'")));
    let mut labels = vec![q_int(0); total];
    labels[0] = q_int(1); // x1
    labels[n + 1] = q_int(1); // x1'
    let mut pairs = Vec::new();
    for i in 1..n + 1 {
        pairs.push((i - 1, i));
    }
    for i in 1..m {
        pairs.push((n + 1 + i - 1, n + 1 + i));
    }
    pairs.push((n + m, n)); // xm' below x_{n+1}
    LabeledPoset::new(names, labels, &pairs)
}

fn parse_usize_arg(s: &str, what: &str) -> Result<usize, Error> {
    let v: usize = s
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("{what}: expected a non-negative integer, got {s:?}")))?;
    if v > crate::poset::MAX_ELEMENTS {
        return Err(Error::TooLarge(format!("{what}: argument {v} exceeds the element cap")));
    }
    Ok(v)
}

/// Parse a one-line poset description: `wedge`, `w5`, `diamond`,
/// `chain(l1,l2,…)`, `antichain(l1,…)`, `example1(n)`,
/// `example2(s,t,n)`, or `example3(n,m)`, with rational labels
/// written as `p/q` or integers.
pub fn parse_dsl(input: &str) -> Result<LabeledPoset, Error> {
    let s = input.trim();
    match s {
        "wedge" => return Ok(wedge()),
        "w5" => return Ok(w5()),
        "diamond" => return Ok(diamond()),
        _ => {}
    }
    let open = s
        .find('(')
        .ok_or_else(|| Error::Parse(format!("unknown poset description {s:?}")))?;
    if !s.ends_with(')') {
        return Err(Error::Parse(format!("missing closing parenthesis in {s:?}")));
    }
    let head = s[..open].trim();
    let body = &s[open + 1..s.len() - 1];
    let args: Vec<&str> = if body.trim().is_empty() {
        Vec::new()
    } else {
        body.split(',').collect()
    };
    match head {
        "chain" | "antichain" => {
            let labels = args
                .iter()
                .map(|a| q_parse(a.trim()))
                .collect::<Result<Vec<Q>, Error>>()?;
            if labels.len() > crate::poset::MAX_ELEMENTS {
                return Err(Error::TooLarge(format!("{head} of {} elements", labels.len())));
            }
            if head == "chain" {
                chain(&labels)
            } else {
                antichain(&labels)
            }
        }
        "example1" => {
            if args.len() != 1 {
                return Err(Error::Parse("example1 takes one argument".into()));
            }
            example1(parse_usize_arg(args[0], "example1")?)
        }
        "example2" => {
            if args.len() != 3 {
                return Err(Error::Parse("example2 takes three arguments".into()));
            }
            example2(
                parse_usize_arg(args[0], "example2")?,
                parse_usize_arg(args[1], "example2")?,
                parse_usize_arg(args[2], "example2")?,
            )
        }
        "example3" => {
            if args.len() != 2 {
                return Err(Error::Parse("example3 takes two arguments".into()));
            }
            example3(
                parse_usize_arg(args[0], "example3")?,
                parse_usize_arg(args[1], "example3")?,
            )
        }
        _ => Err(Error::Parse(format!("unknown poset constructor {head:?}"))),
    }
}
