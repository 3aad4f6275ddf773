//! JSON serialization for posets, tableaux, expansions, coaction
//! results, and span certificates. All rationals travel as exact
//! `"p/q"` (or integer) strings; every emitter here has a matching
//! parser that accepts its output.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::coaction::CoactionResult;
use crate::formal::FormalSum;
use crate::poset::LabeledPoset;
use crate::rat::{q_parse, q_str, Q};
use crate::relations::{CertEntry, Membership, MembershipCertificate, RelationKind};
use crate::schur::{Cell, SkewDiagram, TableauIndex};
use crate::words::{parse_word_literal, IISymbol, Level, Monomial, TensorTerm};
use crate::Error;

fn jerr(e: impl std::fmt::Display) -> Error {
    Error::Json(e.to_string())
}

fn as_obj(v: &Value) -> Result<&Map<String, Value>, Error> {
    v.as_object().ok_or_else(|| jerr("expected a JSON object"))
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value, Error> {
    obj.get(key).ok_or_else(|| jerr(format!("missing key {key:?}")))
}

fn as_str(v: &Value, what: &str) -> Result<String, Error> {
    v.as_str()
        .map(|s| s.to_string())
        .ok_or_else(|| jerr(format!("{what} must be a string")))
}

fn rat_of(v: &Value, what: &str) -> Result<Q, Error> {
    q_parse(&as_str(v, what)?)
}

// ---------------------------------------------------------------------------
// posets

/// `{"elements": [...], "labels": {name: "p/q"}, "covers": [[a,b],...]}`
pub fn poset_to_json(x: &LabeledPoset) -> Value {
    let labels: Map<String, Value> = x
        .names()
        .iter()
        .zip(x.labels())
        .map(|(n, q)| (n.clone(), Value::String(q_str(q))))
        .collect();
    let covers: Vec<Value> = x
        .covers()
        .iter()
        .map(|&(a, b)| json!([x.name(a), x.name(b)]))
        .collect();
    json!({
        "elements": x.names(),
        "labels": labels,
        "covers": covers,
    })
}

pub fn poset_from_json_value(v: &Value) -> Result<LabeledPoset, Error> {
    let obj = as_obj(v)?;
    let elements: Vec<String> = get(obj, "elements")?
        .as_array()
        .ok_or_else(|| jerr("\"elements\" must be an array"))?
        .iter()
        .map(|e| as_str(e, "element name"))
        .collect::<Result<_, _>>()?;
    let labels_obj = as_obj(get(obj, "labels")?)?;
    let mut labels = Vec::with_capacity(elements.len());
    for name in &elements {
        let v = labels_obj
            .get(name)
            .ok_or_else(|| Error::MissingLabel(name.clone()))?;
        labels.push(rat_of(v, "label")?);
    }
    for key in labels_obj.keys() {
        if !elements.contains(key) {
            return Err(Error::UnknownElement(key.clone()));
        }
    }
    let index = |name: &str| -> Result<usize, Error> {
        elements
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    };
    let mut covers = vec![];
    for pair in get(obj, "covers")?
        .as_array()
        .ok_or_else(|| jerr("\"covers\" must be an array"))?
    {
        let pair = pair
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| jerr("each cover must be a two-element array"))?;
        covers.push((
            index(&as_str(&pair[0], "cover endpoint")?)?,
            index(&as_str(&pair[1], "cover endpoint")?)?,
        ));
    }
    LabeledPoset::new(elements, labels, &covers)
}

pub fn poset_from_json(s: &str) -> Result<LabeledPoset, Error> {
    let v: Value = serde_json::from_str(s).map_err(jerr)?;
    poset_from_json_value(&v)
}

// ---------------------------------------------------------------------------
// tableaux

/// `{"cells": [[r,c],...], "entries": {"r,c": "k", ...}}`
pub fn tableau_to_json(k: &TableauIndex) -> Value {
    let cells: Vec<Value> = k.diagram.cells().map(|(r, c)| json!([r, c])).collect();
    let entries: Map<String, Value> = k
        .diagram
        .cells()
        .map(|cell| {
            (
                format!("{},{}", cell.0, cell.1),
                Value::String(k.entry(cell).to_string()),
            )
        })
        .collect();
    json!({ "cells": cells, "entries": entries })
}

fn cell_of(v: &Value) -> Result<Cell, Error> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| jerr("each cell must be a two-element array"))?;
    let r = arr[0].as_u64().ok_or_else(|| jerr("cell row must be an integer"))?;
    let c = arr[1].as_u64().ok_or_else(|| jerr("cell column must be an integer"))?;
    Ok((r as u32, c as u32))
}

pub fn tableau_from_json_value(v: &Value) -> Result<TableauIndex, Error> {
    let obj = as_obj(v)?;
    let cells: Vec<Cell> = get(obj, "cells")?
        .as_array()
        .ok_or_else(|| jerr("\"cells\" must be an array"))?
        .iter()
        .map(cell_of)
        .collect::<Result<_, _>>()?;
    let diagram = SkewDiagram::new(cells)?;
    let mut entries = BTreeMap::new();
    for (key, val) in as_obj(get(obj, "entries")?)? {
        let (r, c) = key
            .split_once(',')
            .ok_or_else(|| jerr(format!("entry key {key:?} must be \"r,c\"")))?;
        let parse_u32 = |s: &str| -> Result<u32, Error> {
            s.trim().parse().map_err(|_| jerr(format!("bad coordinate in {key:?}")))
        };
        let cell = (parse_u32(r)?, parse_u32(c)?);
        let k: u32 = as_str(val, "entry")?
            .trim()
            .parse()
            .map_err(|_| jerr(format!("entry at {key:?} must be a positive integer")))?;
        entries.insert(cell, k);
    }
    TableauIndex::new(diagram, entries)
}

pub fn tableau_from_json(s: &str) -> Result<TableauIndex, Error> {
    let v: Value = serde_json::from_str(s).map_err(jerr)?;
    tableau_from_json_value(&v)
}

// ---------------------------------------------------------------------------
// word sums (Yamamoto expansions and the like)

/// `[{"word": "I(0;1,0;1)@std", "coeff": "2"}, ...]`
pub fn word_sum_to_json(sum: &FormalSum<IISymbol>) -> Value {
    Value::Array(
        sum.iter()
            .map(|(w, c)| json!({ "word": w.to_string(), "coeff": q_str(c) }))
            .collect(),
    )
}

pub fn word_sum_from_json_value(v: &Value) -> Result<FormalSum<IISymbol>, Error> {
    let arr = v.as_array().ok_or_else(|| jerr("expected an array of terms"))?;
    let mut sum = FormalSum::zero();
    for t in arr {
        let obj = as_obj(t)?;
        let word = parse_word_literal(&as_str(get(obj, "word")?, "word")?)?;
        let coeff = rat_of(get(obj, "coeff")?, "coeff")?;
        sum.add_term(word, coeff);
    }
    Ok(sum)
}

pub fn word_sum_from_json(s: &str) -> Result<FormalSum<IISymbol>, Error> {
    let v: Value = serde_json::from_str(s).map_err(jerr)?;
    word_sum_from_json_value(&v)
}

// ---------------------------------------------------------------------------
// coaction results

fn level_str(level: Level) -> &'static str {
    match level {
        Level::A => "A",
        Level::L => "L",
        Level::H => "H",
    }
}

fn level_of(s: &str) -> Result<Level, Error> {
    match s {
        "A" => Ok(Level::A),
        "L" => Ok(Level::L),
        "H" => Ok(Level::H),
        _ => Err(jerr(format!("unknown level {s:?}"))),
    }
}

/// `{"level": "A", "weight": 3, "terms": [{"left": [...], "right":
/// "...", "coeff": "p/q"}, ...]}`
pub fn coaction_to_json(res: &CoactionResult) -> Value {
    let terms: Vec<Value> = res
        .terms
        .iter()
        .map(|(t, c)| {
            let left: Vec<Value> =
                t.left.0.iter().map(|w| Value::String(w.to_string())).collect();
            json!({
                "left": left,
                "right": t.right.to_string(),
                "coeff": q_str(c),
            })
        })
        .collect();
    json!({
        "level": level_str(res.level),
        "weight": res.weight,
        "terms": terms,
    })
}

pub fn coaction_from_json_value(v: &Value) -> Result<CoactionResult, Error> {
    let obj = as_obj(v)?;
    let level = level_of(&as_str(get(obj, "level")?, "level")?)?;
    if level == Level::H {
        return Err(jerr("coaction left factors live in A or L"));
    }
    let weight = get(obj, "weight")?
        .as_u64()
        .ok_or_else(|| jerr("\"weight\" must be an integer"))? as usize;
    let mut terms = FormalSum::zero();
    for t in get(obj, "terms")?
        .as_array()
        .ok_or_else(|| jerr("\"terms\" must be an array"))?
    {
        let tobj = as_obj(t)?;
        let mut left = Monomial::one();
        for w in get(tobj, "left")?
            .as_array()
            .ok_or_else(|| jerr("\"left\" must be an array of word literals"))?
        {
            let sym = parse_word_literal(&as_str(w, "left factor")?)?;
            if sym.level != level {
                return Err(jerr(format!(
                    "left factor {sym} is not at the result level {}",
                    level_str(level)
                )));
            }
            left = left.mul(&Monomial::single(sym));
        }
        let right = parse_word_literal(&as_str(get(tobj, "right")?, "right")?)?;
        if right.level != Level::H {
            return Err(jerr(format!("right factor {right} must carry a path tag")));
        }
        let coeff = rat_of(get(tobj, "coeff")?, "coeff")?;
        terms.add_term(TensorTerm { left, right }, coeff);
    }
    Ok(CoactionResult { terms, level, weight })
}

pub fn coaction_from_json(s: &str) -> Result<CoactionResult, Error> {
    let v: Value = serde_json::from_str(s).map_err(jerr)?;
    coaction_from_json_value(&v)
}

// ---------------------------------------------------------------------------
// certificates and membership outcomes

fn kind_str(kind: RelationKind) -> String {
    kind.to_string()
}

fn kind_of(s: &str) -> Result<RelationKind, Error> {
    Ok(match s {
        "UNIT" => RelationKind::Unit,
        "EQUAL_ENDPOINT" => RelationKind::EqualEndpoint,
        "REVERSAL" => RelationKind::Reversal,
        "PATH_SPLIT" => RelationKind::PathSplit,
        "SHUFFLE_VANISH" => RelationKind::ShuffleVanish,
        "L_PRODUCT_ZERO" => RelationKind::LProductZero,
        _ => return Err(Error::UnknownRelation(s.to_string())),
    })
}

/// `{"entries": [{"index": 3, "kind": "SHUFFLE_VANISH", "provenance":
/// "...", "coefficient": "p/q"}, ...]}`
pub fn certificate_to_json(cert: &MembershipCertificate) -> Value {
    let entries: Vec<Value> = cert
        .entries
        .iter()
        .map(|e| {
            json!({
                "index": e.index,
                "kind": kind_str(e.kind),
                "provenance": e.provenance,
                "coefficient": q_str(&e.coefficient),
            })
        })
        .collect();
    json!({ "entries": entries })
}

pub fn certificate_from_json_value(v: &Value) -> Result<MembershipCertificate, Error> {
    let obj = as_obj(v)?;
    let mut entries = vec![];
    for e in get(obj, "entries")?
        .as_array()
        .ok_or_else(|| jerr("\"entries\" must be an array"))?
    {
        let eobj = as_obj(e)?;
        entries.push(CertEntry {
            index: get(eobj, "index")?
                .as_u64()
                .ok_or_else(|| jerr("\"index\" must be an integer"))? as usize,
            kind: kind_of(&as_str(get(eobj, "kind")?, "kind")?)?,
            provenance: as_str(get(eobj, "provenance")?, "provenance")?,
            coefficient: rat_of(get(eobj, "coefficient")?, "coefficient")?,
        });
    }
    Ok(MembershipCertificate { entries })
}

pub fn certificate_from_json(s: &str) -> Result<MembershipCertificate, Error> {
    let v: Value = serde_json::from_str(s).map_err(jerr)?;
    certificate_from_json_value(&v)
}

fn monomial_sum_to_json(sum: &FormalSum<Monomial>) -> Value {
    Value::Array(
        sum.iter()
            .map(|(m, c)| {
                let factors: Vec<Value> =
                    m.0.iter().map(|w| Value::String(w.to_string())).collect();
                json!({ "monomial": factors, "coeff": q_str(c) })
            })
            .collect(),
    )
}

/// `{"member": true, "certificate": ...}` or `{"member": false,
/// "residual": [...]}`.
pub fn membership_to_json(m: &Membership) -> Value {
    match m {
        Membership::Member(cert) => json!({
            "member": true,
            "certificate": certificate_to_json(cert),
        }),
        Membership::NotMember { residual } => json!({
            "member": false,
            "residual": monomial_sum_to_json(residual),
        }),
    }
}
