//! Skew Young diagrams, semistandard Young tableaux, Schur multiple
//! zeta values (exact truncations and MZV decompositions), and the
//! conversion of supported diagonal-constant tableaux to labeled
//! posets whose Yamamoto expansion represents the same value.

use std::collections::{BTreeMap, BTreeSet};

use crate::dsl;
use crate::numeric::{mzv_eval, NumericValue};
use crate::poset::LabeledPoset;
use crate::rat::{q_int, q_one, q_zero, Q};
use crate::Error;

pub type Cell = (u32, u32);

/// A finite set of (row, column) cells, 1-indexed, forming a skew
/// Young diagram: the difference of two nested Young diagrams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewDiagram {
    cells: BTreeSet<Cell>,
}

impl SkewDiagram {
    /// Validates the skew condition: with λ the smallest Young diagram
    /// containing the cells (the up-left closure), λ minus the cells
    /// must itself be up-left closed — equivalently, no cell may sit
    /// directly above or directly left of a hole of λ.
    pub fn new<I: IntoIterator<Item = Cell>>(cells: I) -> Result<Self, Error> {
        let cells: BTreeSet<Cell> = cells.into_iter().collect();
        if cells.len() > 16 {
            return Err(Error::TooLarge(format!("{} cells (cap 16)", cells.len())));
        }
        if cells.iter().any(|&(r, c)| r == 0 || c == 0) {
            return Err(Error::Parse("cells are 1-indexed".into()));
        }
        let mut closure: BTreeSet<Cell> = BTreeSet::new();
        for &(r, c) in &cells {
            for i in 1..=r {
                for j in 1..=c {
                    closure.insert((i, j));
                }
            }
        }
        for &(i, j) in closure.difference(&cells) {
            if (i > 1 && cells.contains(&(i - 1, j))) || (j > 1 && cells.contains(&(i, j - 1))) {
                return Err(Error::Parse(format!(
                    "cells do not form a skew diagram: hole at ({i},{j}) below or right of a cell"
                )));
            }
        }
        Ok(SkewDiagram { cells })
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.cells.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.cells.contains(&cell)
    }

    /// A corner has no cell to its right and none below.
    pub fn is_corner(&self, (r, c): Cell) -> bool {
        self.contains((r, c)) && !self.contains((r, c + 1)) && !self.contains((r + 1, c))
    }

    pub fn corners(&self) -> Vec<Cell> {
        self.cells().filter(|&x| self.is_corner(x)).collect()
    }
}

/// A skew diagram with a positive integer in every cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableauIndex {
    pub diagram: SkewDiagram,
    entries: BTreeMap<Cell, u32>,
}

impl TableauIndex {
    pub fn new(diagram: SkewDiagram, entries: BTreeMap<Cell, u32>) -> Result<Self, Error> {
        for (&cell, &k) in &entries {
            if !diagram.contains(cell) {
                return Err(Error::Parse(format!("entry at {cell:?} outside the diagram")));
            }
            if k == 0 {
                return Err(Error::Parse(format!("entry at {cell:?} must be positive")));
            }
        }
        if let Some(cell) = diagram.cells().find(|c| !entries.contains_key(c)) {
            return Err(Error::Parse(format!("missing entry at {cell:?}")));
        }
        Ok(TableauIndex { diagram, entries })
    }

    pub fn entry(&self, cell: Cell) -> u32 {
        self.entries[&cell]
    }

    pub fn weight(&self) -> u32 {
        self.entries.values().sum()
    }

    /// Every corner entry is at least 2 (so the defining nested series
    /// converges).
    pub fn is_admissible(&self) -> bool {
        self.diagram.corners().iter().all(|&c| self.entry(c) >= 2)
    }

    /// entry(i,j) = entry(i+1,j+1) whenever both cells exist.
    pub fn is_diagonal_constant(&self) -> bool {
        self.diagram.cells().all(|(r, c)| {
            !self.diagram.contains((r + 1, c + 1)) || self.entry((r, c)) == self.entry((r + 1, c + 1))
        })
    }
}

/// A semistandard filling: rows weakly increase left to right, columns
/// strictly increase top to bottom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ssyt {
    pub diagram: SkewDiagram,
    pub filling: BTreeMap<Cell, u32>,
}

fn fillings_fold<F: FnMut(&BTreeMap<Cell, u32>)>(d: &SkewDiagram, bound: u32, visit: &mut F) {
    // cells in row-major order; BTreeSet iteration already is
    let order: Vec<Cell> = d.cells().collect();
    let mut filling: BTreeMap<Cell, u32> = BTreeMap::new();
    fn rec<F: FnMut(&BTreeMap<Cell, u32>)>(
        order: &[Cell],
        pos: usize,
        bound: u32,
        filling: &mut BTreeMap<Cell, u32>,
        visit: &mut F,
    ) {
        if pos == order.len() {
            visit(filling);
            return;
        }
        let (r, c) = order[pos];
        let mut lo = 1;
        if c > 1 {
            if let Some(&left) = filling.get(&(r, c - 1)) {
                lo = lo.max(left); // weak along the row
            }
        }
        if r > 1 {
            if let Some(&up) = filling.get(&(r - 1, c)) {
                lo = lo.max(up + 1); // strict down the column
            }
        }
        for v in lo..=bound {
            filling.insert((r, c), v);
            rec(order, pos + 1, bound, filling, visit);
        }
        filling.remove(&(r, c));
    }
    rec(&order, 0, bound, &mut filling, visit);
}

/// All semistandard fillings with entries in [1, bound], in
/// lexicographic order of the row-major entry sequence.
pub fn ssyt_enumerate(d: &SkewDiagram, bound: u32) -> Vec<Ssyt> {
    let mut out = Vec::new();
    fillings_fold(d, bound, &mut |f| {
        out.push(Ssyt { diagram: d.clone(), filling: f.clone() })
    });
    out
}

/// Exact partial sum of the Schur multiple zeta series: Σ over
/// semistandard fillings with entries ≤ bound of ∏ m(i,j)^{−k(i,j)}.
pub fn smzv_truncated(k: &TableauIndex, bound: u32) -> Result<Q, Error> {
    if !k.is_admissible() {
        return Err(Error::NotAdmissibleIndex);
    }
    let mut total = q_zero();
    fillings_fold(&k.diagram, bound, &mut |f| {
        let mut term = q_one();
        for (cell, &m) in f {
            let p = q_int(m as i64);
            let mut pw = q_one();
            for _ in 0..k.entry(*cell) {
                pw *= p.clone();
            }
            term /= pw;
        }
        total += term;
    });
    Ok(total)
}

/// Decompose a Schur MZV into ordinary MZVs: one admissible index per
/// ordered set partition of the cells compatible with the weak-row /
/// strict-column constraints (cells in one block share a value; blocks
/// are listed in increasing value order). The result is multiplicity
/// free by construction, listed in a deterministic order.
pub fn smzv_mzv_decomposition(k: &TableauIndex) -> Result<Vec<Vec<u32>>, Error> {
    if !k.is_admissible() {
        return Err(Error::NotAdmissibleIndex);
    }
    let cells: Vec<Cell> = k.diagram.cells().collect();
    let n = cells.len();
    let idx_of = |cell: Cell| cells.iter().position(|&c| c == cell).unwrap();
    // weak: value(a) ≤ value(b); strict: value(a) < value(b)
    let mut weak: Vec<(usize, usize)> = Vec::new();
    let mut strict: Vec<(usize, usize)> = Vec::new();
    for &(r, c) in &cells {
        if k.diagram.contains((r, c + 1)) {
            weak.push((idx_of((r, c)), idx_of((r, c + 1))));
        }
        if k.diagram.contains((r + 1, c)) {
            strict.push((idx_of((r, c)), idx_of((r + 1, c))));
        }
    }
    let full: u32 = if n == 64 { u32::MAX } else { ((1u64 << n) - 1) as u32 };
    let mut out = Vec::new();
    let mut prefix: Vec<u32> = Vec::new();
    fn rec(
        remaining: u32,
        full: u32,
        weak: &[(usize, usize)],
        strict: &[(usize, usize)],
        k: &TableauIndex,
        cells: &[Cell],
        prefix: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        let assigned = full & !remaining;
        // enumerate nonempty submasks of `remaining` in increasing order
        let mut sub = remaining & remaining.wrapping_neg();
        loop {
            let b = sub;
            let ok = weak
                .iter()
                .all(|&(a, c)| b & (1 << c) == 0 || (b | assigned) & (1 << a) != 0)
                && strict
                    .iter()
                    .all(|&(a, c)| b & (1 << c) == 0 || assigned & (1 << a) != 0);
            if ok {
                let kb: u32 = (0..cells.len())
                    .filter(|i| b & (1 << i) != 0)
                    .map(|i| k.entry(cells[i]))
                    .sum();
                prefix.push(kb);
                rec(remaining & !b, full, weak, strict, k, cells, prefix, out);
                prefix.pop();
            }
            // next submask of `remaining`
            sub = (sub.wrapping_sub(remaining)) & remaining;
            if sub == 0 {
                break;
            }
        }
    }
    if n == 0 {
        return Ok(vec![Vec::new()]);
    }
    rec(full, full, &weak, &strict, k, &cells, &mut prefix, &mut out);
    // every index is admissible: the last block always contains a
    // corner (walk right along a row inside the last block until the
    // row ends; a cell below would force a later block), and corner
    // entries are ≥ 2 for an admissible tableau
    debug_assert!(out.iter().all(|idx| idx.last().is_some_and(|&last| last >= 2)));
    Ok(out)
}

/// Floating-point evaluation via the MZV decomposition, tail bounds
/// summed across components.
pub fn smzv_eval(k: &TableauIndex, n_max: u64) -> Result<NumericValue, Error> {
    let parts = smzv_mzv_decomposition(k)?;
    let mut value = 0.0;
    let mut tail = 0.0;
    for idx in parts {
        if idx.is_empty() {
            value += 1.0;
            continue;
        }
        let v = mzv_eval(&idx, n_max)?;
        value += v.value;
        tail += v.tail_bound;
    }
    Ok(NumericValue { value, tail_bound: tail, truncation: n_max })
}

fn rows_of(d: &SkewDiagram) -> BTreeMap<u32, Vec<u32>> {
    let mut rows: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for (r, c) in d.cells() {
        rows.entry(r).or_default().push(c);
    }
    rows
}

/// Convert a supported admissible diagonal-constant tableau to a
/// labeled poset with the same value: single cells become chains, the
/// 2×2 square [[m,1],[1,m]] becomes the double-chain poset, and the
/// hook with a row of ones ending in t and an s above the t becomes
/// the two-chain join (n = 0 gives the vertical domino, i.e. ζ(s,t)).
pub fn smzv_to_poset(k: &TableauIndex) -> Result<LabeledPoset, Error> {
    if !k.is_diagonal_constant() {
        return Err(Error::NotDiagonalConstant);
    }
    if !k.is_admissible() {
        return Err(Error::NotAdmissibleIndex);
    }
    let rows = rows_of(&k.diagram);
    if k.diagram.is_empty() {
        return Ok(LabeledPoset::empty());
    }
    // single cell [w] → chain 1, {0}^{w−1}
    if k.diagram.len() == 1 {
        let cell = k.diagram.cells().next().unwrap();
        let w = k.entry(cell);
        let mut labels = vec![q_int(0); w as usize];
        labels[0] = q_int(1);
        return dsl::chain(&labels);
    }
    if rows.len() == 2 {
        let (&r1, cols1) = rows.iter().next().unwrap();
        let (&r2, cols2) = rows.iter().nth(1).unwrap();
        if r2 == r1 + 1 {
            let c_end1 = *cols1.last().unwrap();
            let c_end2 = *cols2.last().unwrap();
            // 2×2 square [[m,1],[1,m]] → double chain of length m+1
            if cols1.len() == 2 && cols2.len() == 2 && cols1 == cols2 {
                let m = k.entry((r1, c_end1 - 1));
                if k.entry((r1, c_end1)) == 1
                    && k.entry((r2, c_end2 - 1)) == 1
                    && k.entry((r2, c_end2)) == m
                {
                    return dsl::example1(m as usize + 1);
                }
                return Err(Error::UnsupportedShape(
                    "2×2 square with entries other than [[m,1],[1,m]]".into(),
                ));
            }
            // hook: row r1 = single cell above the end of row r2,
            // row r2 = ones then t
            if cols1.len() == 1 && c_end1 == c_end2 {
                let lead = &cols2[..cols2.len() - 1];
                if lead.iter().all(|&c| k.entry((r2, c)) == 1) {
                    let s = k.entry((r1, c_end1));
                    let t = k.entry((r2, c_end2));
                    let n = lead.len();
                    return dsl::example2(s as usize, t as usize, n);
                }
                return Err(Error::UnsupportedShape(
                    "hook row must be all ones before its final entry".into(),
                ));
            }
        }
    }
    Err(Error::UnsupportedShape(format!(
        "no supported family matches a {}-cell diagram over {} rows",
        k.diagram.len(),
        rows.len()
    )))
}
