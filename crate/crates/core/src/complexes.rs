//! Bigraded vector spaces and chain complexes with a weight grading.
//!
//! Slots are indexed by `(weight, degree)`.  Differentials preserve weight
//! and lower degree by exactly one, and every constructed complex is checked
//! to satisfy `d^2 = 0` slot by slot.  Cohomological objects live in
//! nonpositive homological degrees so that a single convention covers the
//! whole crate.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::linalg::SparseMatrix;
use crate::scalar::{sign_pow, Rational};

/// A `(weight, degree)` position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Slot {
    pub weight: i64,
    pub degree: i64,
}

impl Slot {
    pub fn new(weight: i64, degree: i64) -> Self {
        Slot { weight, degree }
    }

    /// The slot one degree below, same weight.
    pub fn below(self) -> Self {
        Slot::new(self.weight, self.degree - 1)
    }

    /// The slot one degree above, same weight.
    pub fn above(self) -> Self {
        Slot::new(self.weight, self.degree + 1)
    }

    pub fn add(self, other: Slot) -> Self {
        Slot::new(self.weight + other.weight, self.degree + other.degree)
    }

    /// Reflection `(w, d) -> (-w, -d)`, the slot map of dualization.
    pub fn reflect(self) -> Self {
        Slot::new(-self.weight, -self.degree)
    }

    pub fn shifted(self, k: i64) -> Self {
        Slot::new(self.weight, self.degree + k)
    }
}

/// A finite-dimensional bigraded vector space with named basis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BigradedSpace {
    slots: BTreeMap<Slot, Vec<String>>,
}

impl BigradedSpace {
    pub fn new() -> Self {
        Self::default()
    }

    /// One-dimensional space at the given slot.
    pub fn point(slot: Slot, label: impl Into<String>) -> Self {
        let mut s = Self::new();
        s.push_label(slot, label.into());
        s
    }

    pub fn push_label(&mut self, slot: Slot, label: String) -> usize {
        let labels = self.slots.entry(slot).or_default();
        debug_assert!(
            !labels.contains(&label),
            "duplicate label {label:?} in slot {slot:?}"
        );
        labels.push(label);
        labels.len() - 1
    }

    pub fn dim(&self, slot: Slot) -> usize {
        self.slots.get(&slot).map_or(0, Vec::len)
    }

    pub fn labels(&self, slot: Slot) -> &[String] {
        self.slots.get(&slot).map_or(&[], Vec::as_slice)
    }

    pub fn slots(&self) -> impl Iterator<Item = (Slot, &[String])> {
        self.slots.iter().map(|(s, l)| (*s, l.as_slice()))
    }

    pub fn slot_keys(&self) -> impl Iterator<Item = Slot> + '_ {
        self.slots.keys().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.slots.values().map(Vec::len).sum()
    }

    pub fn weight_range(&self) -> Option<RangeInclusive<i64>> {
        let min = self.slots.keys().map(|s| s.weight).min()?;
        let max = self.slots.keys().map(|s| s.weight).max()?;
        Some(min..=max)
    }

    pub fn degree_range(&self) -> Option<RangeInclusive<i64>> {
        let min = self.slots.keys().map(|s| s.degree).min()?;
        let max = self.slots.keys().map(|s| s.degree).max()?;
        Some(min..=max)
    }

    /// The dimension table of the space itself.
    pub fn dim_table(&self) -> BettiTable {
        let mut t = BettiTable::new();
        for (slot, labels) in &self.slots {
            t.set(*slot, labels.len());
        }
        t
    }
}

/// A chain complex over a bigraded space: one sparse matrix per slot,
/// mapping the slot to the slot one degree below (same weight).
#[derive(Clone, Debug)]
pub struct ChainComplex {
    space: BigradedSpace,
    /// `diff[s]` has `dim(s)` columns and `dim(s.below())` rows.
    diff: BTreeMap<Slot, SparseMatrix>,
}

impl ChainComplex {
    /// Builds a complex, checking shapes and `d^2 = 0` on every slot.
    pub fn new(space: BigradedSpace, diff: BTreeMap<Slot, SparseMatrix>) -> Result<Self, Error> {
        let mut kept = BTreeMap::new();
        for (slot, m) in diff {
            assert_eq!(
                m.cols(),
                space.dim(slot),
                "differential at {slot:?} has wrong column count"
            );
            assert_eq!(
                m.rows(),
                space.dim(slot.below()),
                "differential at {slot:?} has wrong row count"
            );
            if !m.is_zero() {
                kept.insert(slot, m);
            }
        }
        let complex = ChainComplex { space, diff: kept };
        complex.check_square_zero()?;
        Ok(complex)
    }

    /// A complex with zero differential.
    pub fn with_zero_differential(space: BigradedSpace) -> Self {
        ChainComplex {
            space,
            diff: BTreeMap::new(),
        }
    }

    /// The unit complex: one basis vector at `(0, 0)`.
    pub fn unit() -> Self {
        Self::with_zero_differential(BigradedSpace::point(Slot::new(0, 0), "1"))
    }

    pub fn space(&self) -> &BigradedSpace {
        &self.space
    }

    /// The differential leaving `slot`; a zero matrix when none is stored.
    pub fn differential(&self, slot: Slot) -> SparseMatrix {
        self.diff.get(&slot).cloned().unwrap_or_else(|| {
            SparseMatrix::zero(self.space.dim(slot.below()), self.space.dim(slot))
        })
    }

    pub fn differential_entries(&self) -> impl Iterator<Item = (Slot, &SparseMatrix)> {
        self.diff.iter().map(|(s, m)| (*s, m))
    }

    pub fn has_zero_differential(&self) -> bool {
        self.diff.is_empty()
    }

    fn check_square_zero(&self) -> Result<(), Error> {
        for (&slot, m) in &self.diff {
            if let Some(next) = self.diff.get(&slot.below()) {
                if !next.mul(m).is_zero() {
                    return Err(Error::DifferentialSquareNonzero { slot });
                }
            }
        }
        Ok(())
    }

    /// Homology dimensions on the requested windows.
    ///
    /// Weight truncation is exact (the differential preserves weight), and
    /// every constructed complex carries its full degree range per weight,
    /// so the reported dimensions are exact homology dimensions.
    pub fn homology(
        &self,
        weight_window: RangeInclusive<i64>,
        degree_window: RangeInclusive<i64>,
    ) -> Result<BettiTable, Error> {
        self.homology_jobs(weight_window, degree_window, 1)
    }

    /// Homology over the complex's full support.
    pub fn homology_all(&self) -> Result<BettiTable, Error> {
        let ww = self.space.weight_range().unwrap_or(0..=0);
        let dw = self.space.degree_range().unwrap_or(0..=0);
        self.homology(ww, dw)
    }

    /// As `homology`, with weight slices distributed over `jobs` worker
    /// threads.  Slices are independent, so the result does not depend on
    /// `jobs`.  Each slice is computed by unit-pivot reduction of the whole
    /// slice complex with an exact-elimination residual.
    pub fn homology_jobs(
        &self,
        weight_window: RangeInclusive<i64>,
        degree_window: RangeInclusive<i64>,
        jobs: usize,
    ) -> Result<BettiTable, Error> {
        let weights: Vec<i64> = {
            let mut w: Vec<i64> = self
                .space
                .slot_keys()
                .map(|s| s.weight)
                .filter(|w| weight_window.contains(w))
                .collect();
            w.sort();
            w.dedup();
            w
        };
        let compute = |weight: i64| -> Vec<(Slot, usize)> {
            let mut dims = BTreeMap::new();
            let mut maps = BTreeMap::new();
            for (slot, labels) in self.space.slots() {
                if slot.weight == weight {
                    dims.insert(slot.degree, labels.len());
                }
            }
            for (&slot, m) in &self.diff {
                if slot.weight == weight {
                    maps.insert(slot.degree, m.clone());
                    dims.entry(slot.degree).or_insert(m.cols());
                    dims.entry(slot.degree - 1).or_insert(m.rows());
                }
            }
            let betti = crate::linalg::slice_homology(crate::linalg::SliceComplex { dims, maps });
            betti
                .into_iter()
                .filter(|(degree, dim)| degree_window.contains(degree) && *dim > 0)
                .map(|(degree, dim)| (Slot::new(weight, degree), dim))
                .collect()
        };
        let mut results: Vec<(Slot, usize)> = Vec::new();
        if jobs <= 1 || weights.len() < 2 {
            for w in weights {
                results.extend(compute(w));
            }
        } else {
            let workers = jobs.min(weights.len());
            let chunk = weights.len().div_ceil(workers);
            let outcome: Vec<Vec<(Slot, usize)>> = std::thread::scope(|scope| {
                let handles: Vec<_> = weights
                    .chunks(chunk)
                    .map(|part| {
                        scope.spawn(move || {
                            part.iter().flat_map(|&w| compute(w)).collect::<Vec<_>>()
                        })
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().unwrap()).collect()
            });
            for part in outcome {
                results.extend(part);
            }
        }
        let mut table = BettiTable::new();
        for (slot, dim) in results {
            table.set(slot, dim);
        }
        Ok(table)
    }

    /// Tensor product with the Koszul sign rule
    /// `d(x (x) y) = dx (x) y + (-1)^{deg x} x (x) dy`.
    pub fn tensor(&self, other: &ChainComplex) -> ChainComplex {
        self.tensor_truncated(other, None)
    }

    /// Tensor product keeping only slots with `|weight| <= max_abs_weight`.
    /// The differential preserves weight, so truncation is exact.
    pub fn tensor_truncated(
        &self,
        other: &ChainComplex,
        max_abs_weight: Option<i64>,
    ) -> ChainComplex {
        self.tensor_indexed(other, max_abs_weight).0
    }

    /// Tensor product together with the index of each basis pair in the
    /// result, for constructions that need to act factorwise.
    pub(crate) fn tensor_indexed(
        &self,
        other: &ChainComplex,
        max_abs_weight: Option<i64>,
    ) -> (ChainComplex, BTreeMap<(Slot, usize, Slot, usize), usize>) {
        let keep = |slot: Slot| max_abs_weight.is_none_or(|w| slot.weight.abs() <= w);
        let mut space = BigradedSpace::new();
        // index of each basis pair in its target slot
        let mut index: BTreeMap<(Slot, usize, Slot, usize), usize> = BTreeMap::new();
        for (sa, la) in self.space.slots() {
            for (sb, lb) in other.space.slots() {
                let target = sa.add(sb);
                if !keep(target) {
                    continue;
                }
                for (ia, a) in la.iter().enumerate() {
                    for (ib, b) in lb.iter().enumerate() {
                        let idx = space.push_label(target, format!("({a},{b})"));
                        index.insert((sa, ia, sb, ib), idx);
                    }
                }
            }
        }
        let mut diff: BTreeMap<Slot, SparseMatrix> = BTreeMap::new();
        for (&(sa, ia, sb, ib), &col) in &index {
            let target = sa.add(sb);
            let below = target.below();
            let rows = space.dim(below);
            if rows == 0 {
                continue;
            }
            let matrix = diff
                .entry(target)
                .or_insert_with(|| SparseMatrix::zero(rows, space.dim(target)));
            // d(a) (x) b
            let da = self.differential(sa);
            for (&(r, c), v) in da.entries() {
                if c == ia {
                    if let Some(&row) = index.get(&(sa.below(), r, sb, ib)) {
                        matrix.add_to(row, col, v.clone());
                    }
                }
            }
            // (-1)^{deg a} a (x) d(b)
            let db = other.differential(sb);
            let sign = sign_pow(sa.degree);
            for (&(r, c), v) in db.entries() {
                if c == ib {
                    if let Some(&row) = index.get(&(sa, ia, sb.below(), r)) {
                        matrix.add_to(row, col, &sign * v);
                    }
                }
            }
        }
        diff.retain(|_, m| !m.is_zero());
        let complex = ChainComplex { space, diff }.validated("tensor");
        (complex, index)
    }

    /// Linear dual: slot `(w, d)` becomes `(-w, -d)`; each differential is
    /// transposed and twisted by the Koszul sign `(-1)^{d(d-1)/2}` of its
    /// source degree, which makes the double dual the identity on the nose.
    pub fn dual(&self) -> ChainComplex {
        let mut space = BigradedSpace::new();
        for (slot, labels) in self.space.slots() {
            for label in labels {
                space.push_label(slot.reflect(), label.clone());
            }
        }
        let mut diff = BTreeMap::new();
        for (&slot, m) in &self.diff {
            let d = slot.degree;
            let sign = sign_pow(d * (d - 1) / 2);
            // m : (w, d) -> (w, d-1) dualizes to a map
            // (-w, 1-d) -> (-w, -d), i.e. it leaves slot (-w, 1-d).
            let source = Slot::new(-slot.weight, 1 - d);
            diff.insert(source, m.transpose().scale(&sign));
        }
        ChainComplex { space, diff }.validated("dual")
    }

    /// Degree shift: slot `(w, d)` moves to `(w, d + k)`; the differential
    /// picks up the sign `(-1)^k`.
    pub fn shift(&self, k: i64) -> ChainComplex {
        let mut space = BigradedSpace::new();
        for (slot, labels) in self.space.slots() {
            for label in labels {
                space.push_label(slot.shifted(k), label.clone());
            }
        }
        let sign = sign_pow(k);
        let diff = self
            .diff
            .iter()
            .map(|(slot, m)| (slot.shifted(k), m.scale(&sign)))
            .collect();
        ChainComplex { space, diff }
    }

    /// Keeps only slots with `|weight| <= max_abs_weight`.
    pub fn truncate_abs_weight(&self, max_abs_weight: i64) -> ChainComplex {
        let mut space = BigradedSpace::new();
        for (slot, labels) in self.space.slots() {
            if slot.weight.abs() > max_abs_weight {
                continue;
            }
            for label in labels {
                space.push_label(slot, label.clone());
            }
        }
        let diff = self
            .diff
            .iter()
            .filter(|(slot, _)| slot.weight.abs() <= max_abs_weight)
            .map(|(s, m)| (*s, m.clone()))
            .collect();
        ChainComplex { space, diff }
    }

    fn validated(self, context: &str) -> ChainComplex {
        if let Err(e) = self.check_square_zero() {
            panic!("{context}: {e}");
        }
        self
    }
}

/// Homology (or plain dimension) table: `(weight, degree) -> dim`, zero
/// entries omitted.  This is the universal observable of the crate; every
/// equivalence claim is checked as an equality of these tables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<Slot, usize>,
}

/// Dimension tables for free algebras and configuration spaces share the
/// representation and the serialization of Betti tables.
pub type DimTable = BettiTable;

impl BettiTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (Slot, usize)>) -> Self {
        let mut t = Self::new();
        for (slot, dim) in entries {
            t.set(slot, dim);
        }
        t
    }

    pub fn unit() -> Self {
        Self::from_entries([(Slot::new(0, 0), 1)])
    }

    pub fn set(&mut self, slot: Slot, dim: usize) {
        if dim == 0 {
            self.entries.remove(&slot);
        } else {
            self.entries.insert(slot, dim);
        }
    }

    pub fn add(&mut self, slot: Slot, dim: usize) {
        if dim > 0 {
            *self.entries.entry(slot).or_insert(0) += dim;
        }
    }

    pub fn get(&self, slot: Slot) -> usize {
        self.entries.get(&slot).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Slot, usize)> + '_ {
        self.entries.iter().map(|(s, d)| (*s, *d))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> usize {
        self.entries.values().sum()
    }

    /// Convolution over `(weight, degree)`: the table of a tensor product.
    pub fn convolve(&self, other: &BettiTable) -> BettiTable {
        let mut out = BettiTable::new();
        for (sa, da) in self.iter() {
            for (sb, db) in other.iter() {
                out.add(sa.add(sb), da * db);
            }
        }
        out
    }

    /// The table of the dual: entries reflected through the origin.
    pub fn reflect(&self) -> BettiTable {
        BettiTable::from_entries(self.iter().map(|(s, d)| (s.reflect(), d)))
    }

    /// The table of a degree shift by `k`.
    pub fn shift_degrees(&self, k: i64) -> BettiTable {
        BettiTable::from_entries(self.iter().map(|(s, d)| (s.shifted(k), d)))
    }

    /// Restriction to `|weight| <= max_abs_weight`.
    pub fn truncate_abs_weight(&self, max_abs_weight: i64) -> BettiTable {
        BettiTable::from_entries(
            self.iter()
                .filter(|(s, _)| s.weight.abs() <= max_abs_weight),
        )
    }

    /// Signed dimension count per weight.
    pub fn euler_by_weight(&self) -> BTreeMap<i64, i64> {
        let mut out: BTreeMap<i64, i64> = BTreeMap::new();
        for (slot, dim) in self.iter() {
            let sign = if slot.degree % 2 == 0 { 1 } else { -1 };
            *out.entry(slot.weight).or_insert(0) += sign * dim as i64;
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// First slot where the two tables disagree within the weight window,
    /// with both dimensions.
    pub fn first_divergence(
        &self,
        other: &BettiTable,
        max_abs_weight: i64,
    ) -> Option<(Slot, usize, usize)> {
        let mut slots: Vec<Slot> = self
            .entries
            .keys()
            .chain(other.entries.keys())
            .copied()
            .filter(|s| s.weight.abs() <= max_abs_weight)
            .collect();
        slots.sort();
        slots.dedup();
        for slot in slots {
            let (a, b) = (self.get(slot), other.get(slot));
            if a != b {
                return Some((slot, a, b));
            }
        }
        None
    }

    /// CSV with the stable header `weight,degree,dim`, rows sorted.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("weight,degree,dim\n");
        for (slot, dim) in self.iter() {
            out.push_str(&format!("{},{},{}\n", slot.weight, slot.degree, dim));
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self, Error> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        match lines.next() {
            Some(h) if h.trim() == "weight,degree,dim" => {}
            other => {
                return Err(Error::input(format!(
                    "expected header weight,degree,dim, found {other:?}"
                )))
            }
        }
        let mut table = BettiTable::new();
        for line in lines {
            let parts: Vec<&str> = line.trim().split(',').collect();
            if parts.len() != 3 {
                return Err(Error::input(format!("bad CSV row {line:?}")));
            }
            let parse =
                |s: &str| -> Result<i64, Error> { s.trim().parse().map_err(|_| Error::input(format!("bad CSV field {s:?}"))) };
            let slot = Slot::new(parse(parts[0])?, parse(parts[1])?);
            let dim = parse(parts[2])? as usize;
            table.add(slot, dim);
        }
        Ok(table)
    }

    /// Human-readable grid: one row per weight, one column per degree.
    pub fn to_grid_string(&self) -> String {
        if self.entries.is_empty() {
            return String::from("(empty table)\n");
        }
        let weights: Vec<i64> = {
            let mut w: Vec<i64> = self.entries.keys().map(|s| s.weight).collect();
            w.sort();
            w.dedup();
            w
        };
        let dmin = self.entries.keys().map(|s| s.degree).min().unwrap();
        let dmax = self.entries.keys().map(|s| s.degree).max().unwrap();
        let mut rows: Vec<Vec<String>> = Vec::new();
        let mut header = vec![String::from("w\\d")];
        header.extend((dmin..=dmax).map(|d| d.to_string()));
        rows.push(header);
        for w in weights {
            let mut row = vec![w.to_string()];
            for d in dmin..=dmax {
                let dim = self.get(Slot::new(w, d));
                row.push(if dim == 0 {
                    String::from(".")
                } else {
                    dim.to_string()
                });
            }
            rows.push(row);
        }
        let widths: Vec<usize> = (0..rows[0].len())
            .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap())
            .collect();
        let mut out = String::new();
        for row in rows {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(cell, w)| format!("{cell:>w$}"))
                .collect();
            out.push_str(&line.join("  "));
            out.push('\n');
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct BettiEntry {
    weight: i64,
    degree: i64,
    dim: usize,
}

#[derive(Serialize, Deserialize)]
struct BettiTableWire {
    entries: Vec<BettiEntry>,
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let wire = BettiTableWire {
            entries: self
                .iter()
                .map(|(s, d)| BettiEntry {
                    weight: s.weight,
                    degree: s.degree,
                    dim: d,
                })
                .collect(),
        };
        wire.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BettiTable {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = BettiTableWire::deserialize(deserializer)?;
        let mut table = BettiTable::new();
        for e in wire.entries {
            table.add(Slot::new(e.weight, e.degree), e.dim);
        }
        Ok(table)
    }
}

/// Dense column convenience used when assembling differentials.
pub(crate) fn column_from_terms(
    matrix: &mut SparseMatrix,
    col: usize,
    terms: &[(usize, Rational)],
) {
    for (row, coeff) in terms {
        matrix.add_to(*row, col, coeff.clone());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn two_term(slot: Slot, coeff: i64) -> ChainComplex {
        // label pair x (top, at `slot`) -> y (at slot.below())
        let mut space = BigradedSpace::new();
        space.push_label(slot, format!("x{}b{}", slot.weight, slot.degree));
        space.push_label(slot.below(), format!("y{}b{}", slot.weight, slot.degree));
        let mut diff = BTreeMap::new();
        let mut m = SparseMatrix::zero(1, 1);
        m.set(0, 0, int(coeff));
        diff.insert(slot, m);
        ChainComplex::new(space, diff).unwrap()
    }

    #[test]
    fn homology_of_zero_differential_is_dimension_table() {
        let mut space = BigradedSpace::new();
        space.push_label(Slot::new(0, 0), "a".into());
        space.push_label(Slot::new(1, 2), "b".into());
        space.push_label(Slot::new(1, 2), "c".into());
        let c = ChainComplex::with_zero_differential(space.clone());
        assert_eq!(c.homology_all().unwrap(), space.dim_table());
    }

    #[test]
    fn homology_of_acyclic_two_term_vanishes() {
        let c = two_term(Slot::new(1, 1), 1);
        assert!(c.homology_all().unwrap().is_empty());
    }

    #[test]
    fn koszul_contraction_weight_one_is_acyclic() {
        // Weight-1 part of Sym(x) (x) Lambda(xi) with the contraction
        // differential: x in degree 0, xi in degree 1, d(xi) = x.
        let c = two_term(Slot::new(1, 1), 1);
        let h = c.homology(1..=1, -2..=2).unwrap();
        assert!(h.is_empty(), "weight-1 Koszul part must be acyclic");
    }

    #[test]
    fn square_nonzero_is_rejected() {
        let mut space = BigradedSpace::new();
        space.push_label(Slot::new(0, 2), "a".into());
        space.push_label(Slot::new(0, 1), "b".into());
        space.push_label(Slot::new(0, 0), "c".into());
        let mut diff = BTreeMap::new();
        let mut m1 = SparseMatrix::zero(1, 1);
        m1.set(0, 0, int(1));
        diff.insert(Slot::new(0, 2), m1.clone());
        diff.insert(Slot::new(0, 1), m1);
        match ChainComplex::new(space, diff) {
            Err(Error::DifferentialSquareNonzero { slot }) => {
                assert_eq!(slot, Slot::new(0, 2));
            }
            other => panic!("expected DifferentialSquareNonzero, got {other:?}"),
        }
    }

    #[test]
    fn tensor_unit_law() {
        let a = two_term(Slot::new(2, 3), 5);
        let t = a.tensor(&ChainComplex::unit());
        assert_eq!(t.space().dim_table(), a.space().dim_table());
        assert_eq!(t.homology_all().unwrap(), a.homology_all().unwrap());
    }

    #[test]
    fn tensor_of_points_adds_slots() {
        let a = ChainComplex::with_zero_differential(BigradedSpace::point(Slot::new(1, 0), "x"));
        let b = ChainComplex::with_zero_differential(BigradedSpace::point(Slot::new(1, 1), "y"));
        let t = a.tensor(&b);
        assert_eq!(t.space().dim(Slot::new(2, 1)), 1);
        assert_eq!(t.space().total_dim(), 1);
    }

    #[test]
    fn tensor_kunneth_on_mixed_complexes() {
        // (point at (1,0)) (+) (acyclic at (2,2)) tensored with a copy:
        // Betti must be the convolution of the factors' Betti tables.
        let mut space = BigradedSpace::new();
        space.push_label(Slot::new(1, 0), "p".into());
        space.push_label(Slot::new(2, 2), "u".into());
        space.push_label(Slot::new(2, 1), "v".into());
        let mut diff = BTreeMap::new();
        let mut m = SparseMatrix::zero(1, 1);
        m.set(0, 0, int(3));
        diff.insert(Slot::new(2, 2), m);
        let a = ChainComplex::new(space, diff).unwrap();
        let t = a.tensor(&a);
        let betti_a = a.homology_all().unwrap();
        assert_eq!(t.homology_all().unwrap(), betti_a.convolve(&betti_a));
    }

    #[test]
    fn dual_reflects_and_double_dual_is_identity() {
        let c = two_term(Slot::new(1, 0), 2);
        let d = c.dual();
        assert_eq!(
            d.homology_all().unwrap(),
            c.homology_all().unwrap().reflect()
        );
        let dd = c.dual().dual();
        assert_eq!(dd.space(), c.space());
        for (slot, m) in c.differential_entries() {
            assert_eq!(dd.differential(slot), *m, "double dual changed {slot:?}");
        }
        // dual of the unit complex is the unit complex
        let u = ChainComplex::unit();
        assert_eq!(u.dual().space(), u.space());
    }

    #[test]
    fn dual_of_acyclic_is_acyclic() {
        let c = two_term(Slot::new(1, 0), 1);
        assert!(c.dual().homology_all().unwrap().is_empty());
    }

    #[test]
    fn shift_round_trip() {
        let c = two_term(Slot::new(1, 2), 7);
        let back = c.shift(1).shift(-1);
        assert_eq!(back.space(), c.space());
        for (slot, m) in c.differential_entries() {
            assert_eq!(back.differential(slot), *m);
        }
        let s = c.shift(0);
        assert_eq!(s.space(), c.space());
        let p = ChainComplex::with_zero_differential(BigradedSpace::point(Slot::new(1, 0), "x"));
        assert_eq!(p.shift(2).space().dim(Slot::new(1, 2)), 1);
    }

    #[test]
    fn euler_characteristic_is_conserved() {
        let c = two_term(Slot::new(3, 1), 4);
        let chain_euler = c.space().dim_table().euler_by_weight();
        let homology_euler = c.homology_all().unwrap().euler_by_weight();
        assert_eq!(chain_euler, homology_euler);
    }

    #[test]
    fn betti_csv_round_trip() {
        let t = BettiTable::from_entries([
            (Slot::new(0, 0), 1),
            (Slot::new(2, 1), 3),
            (Slot::new(-1, -2), 2),
        ]);
        assert_eq!(BettiTable::from_csv(&t.to_csv()).unwrap(), t);
    }

    #[test]
    fn betti_json_round_trip() {
        let t = BettiTable::from_entries([(Slot::new(1, 0), 1), (Slot::new(1, 1), 1)]);
        let json = serde_json::to_string(&t).unwrap();
        let back: BettiTable = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn first_divergence_finds_lowest_slot() {
        let a = BettiTable::from_entries([(Slot::new(1, 0), 1), (Slot::new(2, 0), 2)]);
        let b = BettiTable::from_entries([(Slot::new(1, 0), 1), (Slot::new(2, 0), 3)]);
        assert_eq!(a.first_divergence(&b, 4), Some((Slot::new(2, 0), 2, 3)));
        assert_eq!(a.first_divergence(&a, 4), None);
        // negative control from the spec of the independence checker:
        // a table never agrees with its own shift
        let shifted = a.shift_degrees(1);
        assert!(a.first_divergence(&shifted, 4).is_some());
    }
}
