//! Weight-graded differential graded associative (and commutative) algebras.
//!
//! An algebra here is a chain complex with exact structure constants for the
//! product, a unit spanning the whole weight-0 part, and all remaining basis
//! elements in strictly positive (or strictly negative) weights.  Products
//! whose weight leaves the truncation window are silently zero; since all
//! weights share one sign, the truncated algebra is an honest quotient and
//! every identity below is exact inside the window.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::complexes::{BigradedSpace, ChainComplex, Slot};
use crate::error::Error;
use crate::lie::WgLieAlgebra;
use crate::linalg::SparseMatrix;
use crate::scalar::{int, is_odd, koszul_sign, sign_pow, Rational};

/// A basis element of a bigraded space: its slot and index within the slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisRef {
    pub slot: Slot,
    pub index: usize,
}

impl BasisRef {
    pub fn new(slot: Slot, index: usize) -> Self {
        BasisRef { slot, index }
    }
}

/// Coefficients of a vector inside one (implied) slot.
pub type Terms = Vec<(usize, Rational)>;

/// Exact structure constants of a bilinear, weight- and degree-additive map:
/// `(a, b)` maps to a vector in the slot `a.slot + b.slot`.
#[derive(Clone, Debug, Default)]
pub struct PairMap {
    map: BTreeMap<(BasisRef, BasisRef), Terms>,
}

impl PairMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, a: BasisRef, b: BasisRef, terms: Terms) {
        let terms: Terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if terms.is_empty() {
            self.map.remove(&(a, b));
        } else {
            self.map.insert((a, b), terms);
        }
    }

    pub fn get(&self, a: BasisRef, b: BasisRef) -> &[(usize, Rational)] {
        self.map.get(&(a, b)).map_or(&[], Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(BasisRef, BasisRef), &Terms)> {
        self.map.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// Adds `coeff * terms` into an accumulator over slot indices.
pub(crate) fn add_terms(acc: &mut BTreeMap<usize, Rational>, terms: &[(usize, Rational)], coeff: &Rational) {
    for (idx, c) in terms {
        let entry = acc.entry(*idx).or_insert_with(Rational::zero);
        *entry += coeff * c;
    }
}

pub(crate) fn collect_terms(acc: BTreeMap<usize, Rational>) -> Terms {
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// A named generator with its homological degree and weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
    pub weight: i64,
}

/// A relation: a weight- and degree-homogeneous linear combination of words
/// in the generators, each word given by generator indices.
pub type Relation = Vec<(Rational, Vec<u32>)>;

/// Presentation of a graded generating space, optionally with relations
/// spanning a weight-homogeneous two-sided ideal.
#[derive(Clone, Debug, Default)]
pub struct GradedSpacePresentation {
    pub generators: Vec<Generator>,
    pub relations: Vec<Relation>,
}

impl GradedSpacePresentation {
    pub fn from_generators(gens: impl IntoIterator<Item = (&'static str, i64, i64)>) -> Self {
        GradedSpacePresentation {
            generators: gens
                .into_iter()
                .map(|(name, degree, weight)| Generator {
                    name: name.to_string(),
                    degree,
                    weight,
                })
                .collect(),
            relations: Vec::new(),
        }
    }

    /// All generator degrees shifted by `k` (the presentation of `V[k]`).
    pub fn shifted(&self, k: i64) -> Self {
        let mut out = self.clone();
        for g in &mut out.generators {
            g.degree += k;
        }
        out
    }

    /// Checks name uniqueness and that weights are strictly one sign.
    pub fn validate(&self, require_positive: bool) -> Result<(), Error> {
        let mut names = std::collections::BTreeSet::new();
        for g in &self.generators {
            if !names.insert(&g.name) {
                return Err(Error::input(format!("duplicate generator name {:?}", g.name)));
            }
            if g.weight == 0 {
                return Err(Error::MixedWeightSigns {
                    detail: format!("generator {:?} has weight 0", g.name),
                });
            }
        }
        let pos = self.generators.iter().filter(|g| g.weight > 0).count();
        let neg = self.generators.len() - pos;
        if pos > 0 && neg > 0 {
            return Err(Error::MixedWeightSigns {
                detail: "generators carry weights of both signs".into(),
            });
        }
        if require_positive && neg > 0 {
            return Err(Error::MixedWeightSigns {
                detail: "construction requires strictly positive weights".into(),
            });
        }
        for (r, relation) in self.relations.iter().enumerate() {
            let slot_of = |word: &Vec<u32>| -> Result<Slot, Error> {
                let mut slot = Slot::new(0, 0);
                for &g in word {
                    let gen = self
                        .generators
                        .get(g as usize)
                        .ok_or_else(|| Error::input(format!("relation {r} uses unknown generator index {g}")))?;
                    slot = slot.add(Slot::new(gen.weight, gen.degree));
                }
                Ok(slot)
            };
            let mut slots = relation.iter().map(|(_, w)| slot_of(w));
            let first = match slots.next() {
                Some(s) => s?,
                None => continue,
            };
            for s in slots {
                if s? != first {
                    return Err(Error::input(format!(
                        "relation {r} is not weight- and degree-homogeneous"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// How thoroughly structural identities are checked at construction time.
#[derive(Clone, Copy, Debug)]
pub enum Validation {
    /// Check every basis tuple in the window.
    Exhaustive,
    /// Check at most this many deterministically strided triples
    /// (pairwise identities are always checked exhaustively).
    Strided(usize),
}

/// A weight-graded dg algebra with exact structure constants.
#[derive(Debug)]
pub struct WgAlgebra {
    name: String,
    carrier: ChainComplex,
    /// Products of non-unit basis pairs; the unit acts as identity.
    product: PairMap,
    commutative: bool,
    max_weight: i64,
}

impl WgAlgebra {
    /// Builds and validates an algebra.  The weight-0 part must be exactly
    /// the span of the unit, and all other weights must share one sign.
    pub fn new(
        name: impl Into<String>,
        carrier: ChainComplex,
        product: PairMap,
        commutative: bool,
        max_weight: i64,
        policy: Validation,
    ) -> Result<Arc<Self>, Error> {
        let algebra = WgAlgebra {
            name: name.into(),
            carrier,
            product,
            commutative,
            max_weight,
        };
        algebra.validate(policy)?;
        Ok(Arc::new(algebra))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn carrier(&self) -> &ChainComplex {
        &self.carrier
    }

    pub fn commutative(&self) -> bool {
        self.commutative
    }

    pub fn max_weight(&self) -> i64 {
        self.max_weight
    }

    pub fn unit_ref(&self) -> BasisRef {
        BasisRef::new(Slot::new(0, 0), 0)
    }

    pub fn is_unit(&self, r: BasisRef) -> bool {
        r == self.unit_ref()
    }

    /// Basis elements in deterministic order.
    pub fn basis(&self) -> Vec<BasisRef> {
        self.carrier
            .space()
            .slots()
            .flat_map(|(slot, labels)| (0..labels.len()).map(move |i| BasisRef::new(slot, i)))
            .collect()
    }

    /// Non-unit basis elements: the augmentation ideal.
    pub fn augmentation_ideal(&self) -> Vec<BasisRef> {
        self.basis()
            .into_iter()
            .filter(|r| !self.is_unit(*r))
            .collect()
    }

    pub fn label(&self, r: BasisRef) -> &str {
        &self.carrier.space().labels(r.slot)[r.index]
    }

    /// Product of basis elements, as a vector in `a.slot + b.slot`.
    /// Empty when the result leaves the weight window.
    pub fn mul_basis(&self, a: BasisRef, b: BasisRef) -> Terms {
        if self.is_unit(a) {
            return vec![(b.index, int(1))];
        }
        if self.is_unit(b) {
            return vec![(a.index, int(1))];
        }
        self.product.get(a, b).to_vec()
    }

    /// Bilinear extension of the product to vectors at fixed slots.
    pub fn mul_terms(&self, slot_a: Slot, a: &[(usize, Rational)], slot_b: Slot, b: &[(usize, Rational)]) -> Terms {
        let mut acc = BTreeMap::new();
        for (ia, ca) in a {
            for (ib, cb) in b {
                let terms = self.mul_basis(BasisRef::new(slot_a, *ia), BasisRef::new(slot_b, *ib));
                add_terms(&mut acc, &terms, &(ca * cb));
            }
        }
        collect_terms(acc)
    }

    /// Applies the carrier differential to a vector at `slot`.
    pub fn d_terms(&self, slot: Slot, v: &[(usize, Rational)]) -> Terms {
        apply_differential(&self.carrier, slot, v)
    }

    pub(crate) fn product_map(&self) -> &PairMap {
        &self.product
    }

    /// Structural gate: unit span, sign purity, Leibniz, commutativity when
    /// flagged, and (possibly strided) associativity.
    pub fn validate(&self, policy: Validation) -> Result<(), Error> {
        let space = self.carrier.space();
        // weight-0 part is exactly the span of the unit at (0, 0)
        let unit_slot = Slot::new(0, 0);
        if space.dim(unit_slot) != 1 {
            return Err(Error::validation(format!(
                "algebra {:?}: weight-0 degree-0 slot must be exactly the unit",
                self.name
            )));
        }
        let mut sign_seen = 0i64;
        for slot in space.slot_keys() {
            if slot.weight == 0 && slot != unit_slot {
                return Err(Error::validation(format!(
                    "algebra {:?}: weight-0 content outside the unit slot at {slot:?}",
                    self.name
                )));
            }
            if slot.weight != 0 {
                let s = slot.weight.signum();
                if sign_seen == 0 {
                    sign_seen = s;
                } else if sign_seen != s {
                    return Err(Error::MixedWeightSigns {
                        detail: format!("algebra {:?} has weights of both signs", self.name),
                    });
                }
            }
        }
        for ((a, b), _) in self.product.iter() {
            if self.is_unit(*a) || self.is_unit(*b) {
                return Err(Error::validation(format!(
                    "algebra {:?}: unit products must not be stored explicitly",
                    self.name
                )));
            }
        }
        let ideal = self.augmentation_ideal();
        // Leibniz: d(ab) = (da)b + (-1)^{|a|} a (db); trivial when d = 0
        if !self.carrier.has_zero_differential() {
            for &a in &ideal {
                for &b in &ideal {
                    if (a.slot.weight + b.slot.weight).abs() > self.max_weight {
                        continue;
                    }
                    self.check_leibniz(a, b)?;
                }
            }
        }
        if self.commutative {
            for &a in &ideal {
                for &b in &ideal {
                    if (a.slot.weight + b.slot.weight).abs() > self.max_weight {
                        continue;
                    }
                    let ab = self.mul_basis(a, b);
                    let mut ba = self.mul_basis(b, a);
                    let sign = koszul_sign(a.slot.degree, b.slot.degree);
                    for (_, c) in ba.iter_mut() {
                        *c *= &sign;
                    }
                    if ab != ba {
                        return Err(Error::validation(format!(
                            "algebra {:?}: commutativity fails on ({}, {})",
                            self.name,
                            self.label(a),
                            self.label(b)
                        )));
                    }
                }
            }
        }
        self.check_associativity(&ideal, policy)
    }

    fn check_leibniz(&self, a: BasisRef, b: BasisRef) -> Result<(), Error> {
        let product_slot = a.slot.add(b.slot);
        let ab = self.mul_basis(a, b);
        let d_ab = self.d_terms(product_slot, &ab);

        let da = self.d_terms(a.slot, &[(a.index, int(1))]);
        let db = self.d_terms(b.slot, &[(b.index, int(1))]);
        let mut acc = BTreeMap::new();
        let left = self.mul_terms(a.slot.below(), &da, b.slot, &[(b.index, int(1))]);
        add_terms(&mut acc, &left, &int(1));
        let right = self.mul_terms(a.slot, &[(a.index, int(1))], b.slot.below(), &db);
        add_terms(&mut acc, &right, &sign_pow(a.slot.degree));
        let expected = collect_terms(acc);
        if d_ab != expected {
            return Err(Error::validation(format!(
                "algebra {:?}: Leibniz fails on ({}, {})",
                self.name,
                self.label(a),
                self.label(b)
            )));
        }
        Ok(())
    }

    fn check_associativity(&self, ideal: &[BasisRef], policy: Validation) -> Result<(), Error> {
        let candidates = |f: &mut dyn FnMut(BasisRef, BasisRef, BasisRef) -> Result<(), Error>| -> Result<(), Error> {
            for &a in ideal {
                for &b in ideal {
                    let wab = a.slot.weight + b.slot.weight;
                    if wab.abs() > self.max_weight {
                        continue;
                    }
                    for &c in ideal {
                        if (wab + c.slot.weight).abs() > self.max_weight {
                            continue;
                        }
                        f(a, b, c)?;
                    }
                }
            }
            Ok(())
        };
        let mut total = 0usize;
        candidates(&mut |_, _, _| {
            total += 1;
            Ok(())
        })?;
        let stride = match policy {
            Validation::Exhaustive => 1,
            Validation::Strided(budget) => total.div_ceil(budget.max(1)).max(1),
        };
        let mut counter = 0usize;
        candidates(&mut |a, b, c| {
            counter += 1;
            if (counter - 1) % stride != 0 {
                return Ok(());
            }
            let ab = self.mul_basis(a, b);
            let left = self.mul_terms(a.slot.add(b.slot), &ab, c.slot, &[(c.index, int(1))]);
            let bc = self.mul_basis(b, c);
            let right = self.mul_terms(a.slot, &[(a.index, int(1))], b.slot.add(c.slot), &bc);
            if left != right {
                return Err(Error::validation(format!(
                    "algebra {:?}: associativity fails on ({}, {}, {})",
                    self.name,
                    self.label(a),
                    self.label(b),
                    self.label(c)
                )));
            }
            Ok(())
        })
    }

    /// Checks graded commutativity on all pairs and, on success, returns a
    /// copy with the commutative flag set.
    pub fn into_commutative(self: &Arc<Self>) -> Result<Arc<Self>, Error> {
        let flagged = WgAlgebra {
            name: self.name.clone(),
            carrier: self.carrier.clone(),
            product: self.product.clone(),
            commutative: true,
            max_weight: self.max_weight,
        };
        flagged.validate(Validation::Strided(200_000))?;
        Ok(Arc::new(flagged))
    }
}

/// Applies a complex's differential to a coefficient vector at `slot`,
/// producing a vector at `slot.below()`.
pub(crate) fn apply_differential(
    complex: &ChainComplex,
    slot: Slot,
    v: &[(usize, Rational)],
) -> Terms {
    let m = complex.differential(slot);
    if m.is_zero() {
        return Vec::new();
    }
    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
    for (&(r, c), coeff) in m.entries() {
        if let Some((_, vc)) = v.iter().find(|(idx, _)| *idx == c) {
            let entry = acc.entry(r).or_insert_with(Rational::zero);
            *entry += coeff * vc;
        }
    }
    collect_terms(acc)
}

// ---------------------------------------------------------------------------
// monomial machinery shared by Sym-type constructions
// ---------------------------------------------------------------------------

/// Sorts a monomial (generator indices), returning the Koszul sign of the
/// sorting permutation, or `None` when an odd generator repeats.
pub(crate) fn normalize_monomial(seq: &mut Vec<u32>, degree_of: &dyn Fn(u32) -> i64) -> Option<Rational> {
    let mut negative = false;
    for i in 1..seq.len() {
        let mut j = i;
        while j > 0 && seq[j - 1] > seq[j] {
            if is_odd(degree_of(seq[j - 1])) && is_odd(degree_of(seq[j])) {
                negative = !negative;
            }
            seq.swap(j - 1, j);
            j -= 1;
        }
    }
    for w in seq.windows(2) {
        if w[0] == w[1] && is_odd(degree_of(w[0])) {
            return None;
        }
    }
    Some(if negative { int(-1) } else { int(1) })
}

/// All graded-commutative monomials in the given generators with
/// `|total weight| <= max_weight`, in deterministic order.  Odd generators
/// square to zero; even generators have unbounded powers.  Weights must all
/// share one sign.
pub(crate) fn enumerate_sym_monomials(gen_slots: &[Slot], max_weight: i64) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current: Vec<u32> = Vec::new();
    fn recurse(
        gen_slots: &[Slot],
        idx: usize,
        remaining: i64,
        current: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if idx == gen_slots.len() {
            out.push(current.clone());
            return;
        }
        let slot = gen_slots[idx];
        let w = slot.weight.abs();
        let max_mult = if is_odd(slot.degree) { 1 } else { remaining / w };
        for mult in 0..=max_mult {
            if w * mult > remaining {
                break;
            }
            for _ in 0..mult {
                current.push(idx as u32);
            }
            recurse(gen_slots, idx + 1, remaining - w * mult, current, out);
            for _ in 0..mult {
                current.pop();
            }
        }
    }
    recurse(gen_slots, 0, max_weight, &mut current, &mut out);
    out.sort();
    out
}

pub(crate) fn monomial_slot(mono: &[u32], gen_slots: &[Slot]) -> Slot {
    mono.iter()
        .fold(Slot::new(0, 0), |acc, &g| acc.add(gen_slots[g as usize]))
}

pub(crate) fn monomial_label(mono: &[u32], names: &[String]) -> String {
    if mono.is_empty() {
        return "1".into();
    }
    mono.iter()
        .map(|&g| names[g as usize].as_str())
        .collect::<Vec<_>>()
        .join("*")
}

// ---------------------------------------------------------------------------
// free constructions
// ---------------------------------------------------------------------------

fn word_slot(word: &[u32], gen_slots: &[Slot]) -> Slot {
    word.iter()
        .fold(Slot::new(0, 0), |acc, &g| acc.add(gen_slots[g as usize]))
}

/// All words over the generators with `|weight| <= max_weight`, in
/// length-then-lexicographic order.
pub(crate) fn enumerate_words(gen_slots: &[Slot], max_weight: i64) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = vec![Vec::new()];
    let mut frontier: Vec<(Vec<u32>, i64)> = vec![(Vec::new(), 0)];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (word, weight) in frontier {
            for (g, slot) in gen_slots.iter().enumerate() {
                let w = weight + slot.weight.abs();
                if w > max_weight {
                    continue;
                }
                let mut extended = word.clone();
                extended.push(g as u32);
                out.push(extended.clone());
                next.push((extended, w));
            }
        }
        frontier = next;
    }
    out
}

struct WordBasis {
    gen_names: Vec<String>,
    /// per slot: ordered reduced words
    slot_words: BTreeMap<Slot, Vec<Vec<u32>>>,
    /// reduced word -> its basis ref
    index: BTreeMap<Vec<u32>, BasisRef>,
    /// pivot word -> expansion in reduced words (empty map when no relations)
    rewrite: BTreeMap<Vec<u32>, Vec<(Vec<u32>, Rational)>>,
}

impl WordBasis {
    /// Reduces a word modulo the relation ideal.
    fn reduce(&self, word: &[u32]) -> Vec<(BasisRef, Rational)> {
        if let Some(r) = self.index.get(word) {
            return vec![(*r, int(1))];
        }
        if let Some(expansion) = self.rewrite.get(word) {
            return expansion
                .iter()
                .map(|(w, c)| (self.index[w], c.clone()))
                .collect();
        }
        Vec::new() // truncated or annihilated by the ideal
    }
}

fn build_word_basis(
    presentation: &GradedSpacePresentation,
    max_weight: i64,
) -> Result<WordBasis, Error> {
    presentation.validate(true)?;
    let gen_slots: Vec<Slot> = presentation
        .generators
        .iter()
        .map(|g| Slot::new(g.weight, g.degree))
        .collect();
    let gen_names: Vec<String> = presentation.generators.iter().map(|g| g.name.clone()).collect();
    let words = enumerate_words(&gen_slots, max_weight);
    let mut by_slot: BTreeMap<Slot, Vec<Vec<u32>>> = BTreeMap::new();
    for w in words {
        by_slot.entry(word_slot(&w, &gen_slots)).or_default().push(w);
    }
    for list in by_slot.values_mut() {
        list.sort();
    }

    let mut slot_words: BTreeMap<Slot, Vec<Vec<u32>>> = BTreeMap::new();
    let mut rewrite: BTreeMap<Vec<u32>, Vec<(Vec<u32>, Rational)>> = BTreeMap::new();

    if presentation.relations.is_empty() {
        slot_words = by_slot;
    } else {
        // Span of u * r * v per slot, reduced by exact elimination; the
        // non-pivot words survive as the quotient basis.
        let all_words = enumerate_words(&gen_slots, max_weight);
        for (slot, words_here) in &by_slot {
            let col_of: BTreeMap<&Vec<u32>, usize> =
                words_here.iter().enumerate().map(|(i, w)| (w, i)).collect();
            let mut ideal_rows: Vec<Vec<Rational>> = Vec::new();
            for relation in &presentation.relations {
                if relation.is_empty() {
                    continue;
                }
                let r_slot = word_slot(&relation[0].1, &gen_slots);
                for u in &all_words {
                    let u_slot = word_slot(u, &gen_slots);
                    for v in &all_words {
                        let v_slot = word_slot(v, &gen_slots);
                        if u_slot.add(r_slot).add(v_slot) != *slot {
                            continue;
                        }
                        let mut row = vec![Rational::zero(); words_here.len()];
                        for (coeff, rw) in relation {
                            let mut word = u.clone();
                            word.extend_from_slice(rw);
                            word.extend_from_slice(v);
                            row[col_of[&word]] += coeff;
                        }
                        if row.iter().any(|c| !c.is_zero()) {
                            ideal_rows.push(row);
                        }
                    }
                }
            }
            if ideal_rows.is_empty() {
                slot_words.insert(*slot, words_here.clone());
                continue;
            }
            let matrix = SparseMatrix::from_rows(ideal_rows);
            let rref = crate::linalg::reduced_row_echelon(&matrix);
            let mut pivot_cols = Vec::new();
            for row in &rref {
                pivot_cols.push(row[0].0);
            }
            let reduced: Vec<Vec<u32>> = words_here
                .iter()
                .enumerate()
                .filter(|(i, _)| !pivot_cols.contains(i))
                .map(|(_, w)| w.clone())
                .collect();
            for row in &rref {
                // pivot = - sum of non-pivot terms
                let pivot_word = words_here[row[0].0].clone();
                let expansion: Vec<(Vec<u32>, Rational)> = row[1..]
                    .iter()
                    .map(|(c, v)| (words_here[*c].clone(), -v.clone()))
                    .collect();
                rewrite.insert(pivot_word, expansion);
            }
            if !reduced.is_empty() {
                slot_words.insert(*slot, reduced);
            }
        }
    }

    let mut index = BTreeMap::new();
    for (slot, words_here) in &slot_words {
        for (i, w) in words_here.iter().enumerate() {
            index.insert(w.clone(), BasisRef::new(*slot, i));
        }
    }
    Ok(WordBasis {
        gen_names,
        slot_words,
        index,
        rewrite,
    })
}

/// The tensor algebra on the presentation, truncated at `max_weight`;
/// relations, when present, cut out a weight-homogeneous two-sided ideal.
pub fn tensor_algebra(
    presentation: &GradedSpacePresentation,
    max_weight: i64,
) -> Result<Arc<WgAlgebra>, Error> {
    let basis = build_word_basis(presentation, max_weight)?;
    let mut space = BigradedSpace::new();
    for (slot, words) in &basis.slot_words {
        for w in words {
            space.push_label(*slot, monomial_label(w, &basis.gen_names));
        }
    }
    let carrier = ChainComplex::with_zero_differential(space);
    let mut product = PairMap::new();
    for (slot_a, words_a) in &basis.slot_words {
        if *slot_a == Slot::new(0, 0) {
            continue;
        }
        for (slot_b, words_b) in &basis.slot_words {
            if *slot_b == Slot::new(0, 0) {
                continue;
            }
            if (slot_a.weight + slot_b.weight).abs() > max_weight {
                continue;
            }
            for (ia, wa) in words_a.iter().enumerate() {
                for (ib, wb) in words_b.iter().enumerate() {
                    let mut word = wa.clone();
                    word.extend_from_slice(wb);
                    let terms: Terms = basis
                        .reduce(&word)
                        .into_iter()
                        .map(|(r, c)| (r.index, c))
                        .collect();
                    product.set(
                        BasisRef::new(*slot_a, ia),
                        BasisRef::new(*slot_b, ib),
                        terms,
                    );
                }
            }
        }
    }
    let name = format!(
        "T({})",
        presentation
            .generators
            .iter()
            .map(|g| g.name.as_str())
            .collect::<Vec<_>>()
            .join(",")
    );
    WgAlgebra::new(name, carrier, product, false, max_weight, Validation::Exhaustive)
}

/// The free graded-commutative algebra on the presentation: even generators
/// carry unbounded powers, odd generators square to zero.
pub fn sym_algebra(
    presentation: &GradedSpacePresentation,
    max_weight: i64,
) -> Result<Arc<WgAlgebra>, Error> {
    presentation.validate(true)?;
    if !presentation.relations.is_empty() {
        return Err(Error::input("sym_algebra does not accept relations"));
    }
    let gen_slots: Vec<Slot> = presentation
        .generators
        .iter()
        .map(|g| Slot::new(g.weight, g.degree))
        .collect();
    let gen_names: Vec<String> = presentation.generators.iter().map(|g| g.name.clone()).collect();
    let degree_of = |g: u32| gen_slots[g as usize].degree;
    let monomials = enumerate_sym_monomials(&gen_slots, max_weight);
    let mut space = BigradedSpace::new();
    let mut index: BTreeMap<Vec<u32>, BasisRef> = BTreeMap::new();
    let mut by_slot: BTreeMap<Slot, Vec<Vec<u32>>> = BTreeMap::new();
    for m in monomials {
        by_slot.entry(monomial_slot(&m, &gen_slots)).or_default().push(m);
    }
    for (slot, monos) in &by_slot {
        for m in monos {
            let idx = space.push_label(*slot, monomial_label(m, &gen_names));
            index.insert(m.clone(), BasisRef::new(*slot, idx));
        }
    }
    let carrier = ChainComplex::with_zero_differential(space);
    let mut product = PairMap::new();
    for (ma, ra) in &index {
        if ma.is_empty() {
            continue;
        }
        for (mb, rb) in &index {
            if mb.is_empty() {
                continue;
            }
            if (ra.slot.weight + rb.slot.weight).abs() > max_weight {
                continue;
            }
            let mut merged: Vec<u32> = ma.iter().chain(mb.iter()).copied().collect();
            let terms = match normalize_monomial(&mut merged, &degree_of) {
                None => Vec::new(),
                Some(sign) => vec![(index[&merged].index, sign)],
            };
            product.set(*ra, *rb, terms);
        }
    }
    let name = format!("Sym({})", gen_names.join(","));
    WgAlgebra::new(name, carrier, product, true, max_weight, Validation::Exhaustive)
}

/// The universal enveloping algebra of a Lie algebra concentrated in degree
/// zero with strictly positive weights, on its PBW monomial basis.  Products
/// are computed by straightening out-of-order adjacent pairs through the
/// bracket.
pub fn enveloping(g: &WgLieAlgebra, max_weight: i64) -> Result<Arc<WgAlgebra>, Error> {
    let space = g.carrier().space();
    let mut gen_slots = Vec::new();
    let mut gen_names = Vec::new();
    let mut flat_of: BTreeMap<BasisRef, u32> = BTreeMap::new();
    for (slot, labels) in space.slots() {
        if slot.degree != 0 {
            return Err(Error::validation(format!(
                "enveloping requires a Lie algebra in degree 0, found slot {slot:?}"
            )));
        }
        if slot.weight <= 0 {
            return Err(Error::MixedWeightSigns {
                detail: "enveloping requires strictly positive weights".into(),
            });
        }
        for (i, label) in labels.iter().enumerate() {
            flat_of.insert(BasisRef::new(slot, i), gen_slots.len() as u32);
            gen_slots.push(slot);
            gen_names.push(label.clone());
        }
    }
    if !g.carrier().has_zero_differential() {
        return Err(Error::validation(
            "enveloping requires a zero differential",
        ));
    }
    // bracket of flat generators as flat generator combinations
    let bracket_flat = |a: u32, b: u32| -> Vec<(u32, Rational)> {
        let ra = refs_of(&gen_slots, a);
        let rb = refs_of(&gen_slots, b);
        g.bracket_basis(ra, rb)
            .into_iter()
            .map(|(idx, c)| {
                let target = BasisRef::new(ra.slot.add(rb.slot), idx);
                (flat_of[&target], c)
            })
            .collect()
    };

    let monomials = enumerate_sym_monomials(&gen_slots, max_weight);
    let mut space = BigradedSpace::new();
    let mut index: BTreeMap<Vec<u32>, BasisRef> = BTreeMap::new();
    let mut by_slot: BTreeMap<Slot, Vec<Vec<u32>>> = BTreeMap::new();
    for m in monomials {
        by_slot.entry(monomial_slot(&m, &gen_slots)).or_default().push(m);
    }
    for (slot, monos) in &by_slot {
        for m in monos {
            let idx = space.push_label(*slot, monomial_label(m, &gen_names));
            index.insert(m.clone(), BasisRef::new(*slot, idx));
        }
    }
    let carrier = ChainComplex::with_zero_differential(space);
    let mut product = PairMap::new();
    for (ma, ra) in &index {
        if ma.is_empty() {
            continue;
        }
        for (mb, rb) in &index {
            if mb.is_empty() {
                continue;
            }
            if ra.slot.weight + rb.slot.weight > max_weight {
                continue;
            }
            let mut word: Vec<u32> = ma.iter().chain(mb.iter()).copied().collect();
            let mut acc: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
            straighten(std::mem::take(&mut word), int(1), &bracket_flat, &mut acc)?;
            let mut terms = Vec::new();
            for (mono, coeff) in acc {
                if coeff.is_zero() {
                    continue;
                }
                let r = index.get(&mono).ok_or(Error::StraighteningOverflow {
                    weight: monomial_slot(&mono, &gen_slots).weight,
                })?;
                terms.push((r.index, coeff));
            }
            product.set(*ra, *rb, terms);
        }
    }
    let name = format!("U({})", g.name());
    WgAlgebra::new(name, carrier, product, false, max_weight, Validation::Exhaustive)
}

fn refs_of(gen_slots: &[Slot], flat: u32) -> BasisRef {
    // flat indices are assigned in slot order, so recover (slot, index)
    let slot = gen_slots[flat as usize];
    let index = (0..flat as usize).filter(|&i| gen_slots[i] == slot).count();
    BasisRef::new(slot, index)
}

/// Rewrites a word in degree-0 generators into sorted PBW monomials using
/// `yx = xy + [y, x]` on adjacent out-of-order pairs.
fn straighten(
    word: Vec<u32>,
    coeff: Rational,
    bracket: &dyn Fn(u32, u32) -> Vec<(u32, Rational)>,
    out: &mut BTreeMap<Vec<u32>, Rational>,
) -> Result<(), Error> {
    let mut work = vec![(word, coeff)];
    while let Some((w, c)) = work.pop() {
        match (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) {
            None => {
                let entry = out.entry(w).or_insert_with(Rational::zero);
                *entry += c;
            }
            Some(i) => {
                let mut swapped = w.clone();
                swapped.swap(i, i + 1);
                work.push((swapped, c.clone()));
                for (gen, bc) in bracket(w[i], w[i + 1]) {
                    let mut shorter = w.clone();
                    shorter.splice(i..i + 2, [gen]);
                    work.push((shorter, &c * &bc));
                }
            }
        }
    }
    Ok(())
}

/// Dimension table of `Sym(g[1-n])`, the graded object underlying the
/// `n`-disk enveloping algebra; no product is produced for `n >= 2`.
pub fn enveloping_n(g: &WgLieAlgebra, n: u32, max_weight: i64) -> BigradedSpace {
    let shift = 1 - n as i64;
    let mut gen_slots = Vec::new();
    let mut gen_names = Vec::new();
    for (slot, labels) in g.carrier().space().slots() {
        for label in labels {
            gen_slots.push(slot.shifted(shift));
            gen_names.push(format!("s{shift}({label})"));
        }
    }
    let mut space = BigradedSpace::new();
    for m in enumerate_sym_monomials(&gen_slots, max_weight) {
        space.push_label(monomial_slot(&m, &gen_slots), monomial_label(&m, &gen_names));
    }
    space
}

/// The opposite algebra: the product reversed with the Koszul sign.
pub fn opposite(a: &Arc<WgAlgebra>) -> Result<Arc<WgAlgebra>, Error> {
    let mut product = PairMap::new();
    for ((x, y), terms) in a.product_map().iter() {
        let sign = koszul_sign(x.slot.degree, y.slot.degree);
        let flipped: Terms = terms.iter().map(|(i, c)| (*i, &sign * c)).collect();
        product.set(*y, *x, flipped);
    }
    WgAlgebra::new(
        format!("op({})", a.name()),
        a.carrier().clone(),
        product,
        a.commutative(),
        a.max_weight(),
        Validation::Strided(50_000),
    )
}

/// Tensor product of algebras with the Koszul-signed product
/// `(x (x) y)(x' (x) y') = (-1)^{|y||x'|} xx' (x) yy'`.
pub fn algebra_tensor(a: &Arc<WgAlgebra>, b: &Arc<WgAlgebra>) -> Result<Arc<WgAlgebra>, Error> {
    Ok(algebra_tensor_indexed(a, b)?.0)
}

/// As `algebra_tensor`, also returning the factor decomposition of the
/// tensor basis.
pub(crate) fn algebra_tensor_indexed(
    a: &Arc<WgAlgebra>,
    b: &Arc<WgAlgebra>,
) -> Result<(Arc<WgAlgebra>, BTreeMap<(BasisRef, BasisRef), BasisRef>), Error> {
    let max_weight = a.max_weight().min(b.max_weight());
    let (carrier, raw_index) = a
        .carrier()
        .tensor_indexed(b.carrier(), Some(max_weight));
    let mut index: BTreeMap<(BasisRef, BasisRef), BasisRef> = BTreeMap::new();
    for ((sa, ia, sb, ib), idx) in raw_index {
        index.insert(
            (BasisRef::new(sa, ia), BasisRef::new(sb, ib)),
            BasisRef::new(sa.add(sb), idx),
        );
    }
    let pairs: Vec<(&(BasisRef, BasisRef), &BasisRef)> = index.iter().collect();
    let mut product = PairMap::new();
    for (&(x, y), &t1) in &pairs {
        if a.is_unit(x) && b.is_unit(y) {
            continue;
        }
        for (&(x2, y2), &t2) in &pairs {
            if a.is_unit(x2) && b.is_unit(y2) {
                continue;
            }
            if (t1.slot.weight + t2.slot.weight).abs() > max_weight {
                continue;
            }
            let xx = a.mul_basis(x, x2);
            let yy = b.mul_basis(y, y2);
            if xx.is_empty() || yy.is_empty() {
                product.set(t1, t2, Vec::new());
                continue;
            }
            let sign = koszul_sign(y.slot.degree, x2.slot.degree);
            let xslot = x.slot.add(x2.slot);
            let yslot = y.slot.add(y2.slot);
            let mut acc = BTreeMap::new();
            for (ix, cx) in &xx {
                for (iy, cy) in &yy {
                    let target = index[&(BasisRef::new(xslot, *ix), BasisRef::new(yslot, *iy))];
                    let entry = acc.entry(target.index).or_insert_with(Rational::zero);
                    *entry += &sign * cx * cy;
                }
            }
            product.set(t1, t2, collect_terms(acc));
        }
    }
    let algebra = WgAlgebra::new(
        format!("{}(x){}", a.name(), b.name()),
        carrier,
        product,
        a.commutative() && b.commutative(),
        max_weight,
        Validation::Strided(50_000),
    )?;
    Ok((algebra, index))
}

/// Chevalley-Eilenberg cochains of a Lie algebra in degrees >= 0 with
/// strictly positive weights: the algebra `Sym(g~[-1])` whose differential is
/// the derivation dual to the bracket (plus the dual of any internal
/// differential).  Weights are negated relative to `g`.
pub fn ce_cochains(g: &WgLieAlgebra, max_weight: i64) -> Result<Arc<WgAlgebra>, Error> {
    let mut gen_slots: Vec<Slot> = Vec::new();
    let mut gen_names: Vec<String> = Vec::new();
    let mut flat_of: BTreeMap<BasisRef, u32> = BTreeMap::new();
    let mut ref_of_flat: Vec<BasisRef> = Vec::new();
    for (slot, labels) in g.carrier().space().slots() {
        if slot.degree < 0 {
            return Err(Error::validation(format!(
                "ce_cochains requires degrees >= 0, found slot {slot:?}"
            )));
        }
        if slot.weight <= 0 {
            return Err(Error::MixedWeightSigns {
                detail: "ce_cochains requires strictly positive weights".into(),
            });
        }
        for (i, label) in labels.iter().enumerate() {
            flat_of.insert(BasisRef::new(slot, i), gen_slots.len() as u32);
            ref_of_flat.push(BasisRef::new(slot, i));
            // dual generator, suspended down: (w, d) -> (-w, -d - 1)
            gen_slots.push(Slot::new(-slot.weight, -slot.degree - 1));
            gen_names.push(format!("{label}~"));
        }
    }
    let degree_of = {
        let slots = gen_slots.clone();
        move |g: u32| slots[g as usize].degree
    };

    // differential on dual generators
    let mut d_gen: Vec<Vec<(Vec<u32>, Rational)>> = vec![Vec::new(); gen_slots.len()];
    let flat_count = gen_slots.len() as u32;
    for i in 0..flat_count {
        let target = ref_of_flat[i as usize];
        let mut acc: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        // bracket part: -(1/2) sum over ordered pairs (j, k) of
        // (-1)^{|x_j|} c^i_{jk} (xj~ xk~)
        for j in 0..flat_count {
            for k in 0..flat_count {
                let rj = ref_of_flat[j as usize];
                let rk = ref_of_flat[k as usize];
                if rj.slot.add(rk.slot) != target.slot {
                    continue;
                }
                let bracket = g.bracket_basis(rj, rk);
                let Some((_, c)) = bracket.iter().find(|(idx, _)| *idx == target.index) else {
                    continue;
                };
                let mut mono = vec![j, k];
                let Some(sort_sign) = normalize_monomial(&mut mono, &degree_of) else {
                    continue;
                };
                let coeff = Rational::new((-1).into(), 2.into())
                    * sign_pow(rj.slot.degree)
                    * sort_sign
                    * c;
                let entry = acc.entry(mono).or_insert_with(Rational::zero);
                *entry += coeff;
            }
        }
        // dual of an internal differential: x~ picks up y~ whenever dy has
        // an x component
        for j in 0..flat_count {
            let rj = ref_of_flat[j as usize];
            let dy = g.d_basis(rj);
            if let Some((_, c)) = dy
                .iter()
                .find(|(idx, _)| rj.slot.below() == target.slot && *idx == target.index)
            {
                let coeff = -sign_pow(rj.slot.degree) * c;
                let entry = acc.entry(vec![j]).or_insert_with(Rational::zero);
                *entry += coeff;
            }
        }
        d_gen[i as usize] = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    }

    // Sym basis over the dual generators
    let monomials = enumerate_sym_monomials(&gen_slots, max_weight);
    let mut space = BigradedSpace::new();
    let mut index: BTreeMap<Vec<u32>, BasisRef> = BTreeMap::new();
    let mut by_slot: BTreeMap<Slot, Vec<Vec<u32>>> = BTreeMap::new();
    for m in monomials {
        by_slot.entry(monomial_slot(&m, &gen_slots)).or_default().push(m);
    }
    for (slot, monos) in &by_slot {
        for m in monos {
            let idx = space.push_label(*slot, monomial_label(m, &gen_names));
            index.insert(m.clone(), BasisRef::new(*slot, idx));
        }
    }

    // derivation extension of d_gen
    let mut diff: BTreeMap<Slot, SparseMatrix> = BTreeMap::new();
    for (mono, r) in &index {
        let slot = r.slot;
        let below = slot.below();
        let rows = space.dim(below);
        if rows == 0 {
            continue;
        }
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        let mut prefix_degree = 0i64;
        for (t, &gen) in mono.iter().enumerate() {
            // derivation prefix sign, folded with the Koszul cost of moving
            // the degree-(|gen|-1) replacement to the front of the monomial
            let prefix_sign = koszul_sign(prefix_degree, degree_of(gen));
            for (replacement, coeff) in &d_gen[gen as usize] {
                let mut new_mono: Vec<u32> = Vec::with_capacity(mono.len() + 1);
                new_mono.extend_from_slice(replacement);
                new_mono.extend_from_slice(&mono[..t]);
                new_mono.extend_from_slice(&mono[t + 1..]);
                let Some(sort_sign) = normalize_monomial(&mut new_mono, &degree_of) else {
                    continue;
                };
                if let Some(target) = index.get(&new_mono) {
                    debug_assert_eq!(target.slot, below);
                    let entry = acc.entry(target.index).or_insert_with(Rational::zero);
                    *entry += &prefix_sign * coeff * sort_sign;
                }
            }
            prefix_degree += degree_of(gen);
        }
        let terms = collect_terms(acc);
        if !terms.is_empty() {
            let matrix = diff
                .entry(slot)
                .or_insert_with(|| SparseMatrix::zero(rows, space.dim(slot)));
            crate::complexes::column_from_terms(matrix, r.index, &terms);
        }
    }
    let carrier = ChainComplex::new(space, diff)?;

    // graded-commutative product on the monomial basis
    let mut product = PairMap::new();
    for (ma, ra) in &index {
        if ma.is_empty() {
            continue;
        }
        for (mb, rb) in &index {
            if mb.is_empty() {
                continue;
            }
            if (ra.slot.weight + rb.slot.weight).abs() > max_weight {
                continue;
            }
            let mut merged: Vec<u32> = ma.iter().chain(mb.iter()).copied().collect();
            let terms = match normalize_monomial(&mut merged, &degree_of) {
                None => Vec::new(),
                Some(sign) => match index.get(&merged) {
                    Some(r) => vec![(r.index, sign)],
                    None => Vec::new(),
                },
            };
            product.set(*ra, *rb, terms);
        }
    }
    WgAlgebra::new(
        format!("CE*({})", g.name()),
        carrier,
        product,
        true,
        max_weight,
        Validation::Exhaustive,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie;

    fn gens(list: &[(&'static str, i64, i64)]) -> GradedSpacePresentation {
        GradedSpacePresentation::from_generators(list.iter().copied())
    }

    #[test]
    fn tensor_algebra_one_generator_dims() {
        let a = tensor_algebra(&gens(&[("x", 0, 1)]), 3).unwrap();
        for w in 1..=3 {
            assert_eq!(a.carrier().space().dim(Slot::new(w, 0)), 1);
        }
    }

    #[test]
    fn tensor_algebra_two_generators_weight_two() {
        let a = tensor_algebra(&gens(&[("x", 0, 1), ("y", 0, 1)]), 2).unwrap();
        assert_eq!(a.carrier().space().dim(Slot::new(2, 0)), 4);
    }

    #[test]
    fn tensor_algebra_empty_is_unit() {
        let a = tensor_algebra(&gens(&[]), 3).unwrap();
        assert_eq!(a.carrier().space().total_dim(), 1);
    }

    #[test]
    fn mixed_weight_signs_rejected() {
        match tensor_algebra(&gens(&[("x", 0, 1), ("y", 0, -1)]), 3) {
            Err(Error::MixedWeightSigns { .. }) => {}
            other => panic!("expected MixedWeightSigns, got {other:?}"),
        }
    }

    #[test]
    fn truncated_polynomial_ring() {
        // Q[x]/x^3 as a tensor algebra with relation x*x*x
        let mut p = gens(&[("x", 0, 1)]);
        p.relations = vec![vec![(int(1), vec![0, 0, 0])]];
        let a = tensor_algebra(&p, 5).unwrap();
        assert_eq!(a.carrier().space().dim(Slot::new(1, 0)), 1);
        assert_eq!(a.carrier().space().dim(Slot::new(2, 0)), 1);
        assert_eq!(a.carrier().space().dim(Slot::new(3, 0)), 0);
        assert_eq!(a.carrier().space().dim(Slot::new(4, 0)), 0);
        // x * x = x^2, x * x^2 = 0
        let x = BasisRef::new(Slot::new(1, 0), 0);
        let xx = a.mul_basis(x, x);
        assert_eq!(xx.len(), 1);
        let x2 = BasisRef::new(Slot::new(2, 0), 0);
        assert!(a.mul_basis(x, x2).is_empty());
        let c = a.into_commutative().unwrap();
        assert!(c.commutative());
    }

    #[test]
    fn sym_one_even_generator() {
        let a = sym_algebra(&gens(&[("x", 0, 1)]), 4).unwrap();
        for w in 0..=4 {
            assert_eq!(a.carrier().space().dim(Slot::new(w, 0)), 1);
        }
    }

    #[test]
    fn sym_one_odd_generator_squares_to_zero() {
        let a = sym_algebra(&gens(&[("xi", 1, 1)]), 4).unwrap();
        assert_eq!(a.carrier().space().dim(Slot::new(1, 1)), 1);
        assert_eq!(a.carrier().space().dim(Slot::new(2, 2)), 0);
        let xi = BasisRef::new(Slot::new(1, 1), 0);
        assert!(a.mul_basis(xi, xi).is_empty());
    }

    #[test]
    fn sym_mixed_generators_weight_two() {
        // x even (0,1) and xi odd (1,1): weight 2 has x^2 in degree 0,
        // x*xi in degree 1, nothing in degree 2.
        let a = sym_algebra(&gens(&[("x", 0, 1), ("xi", 1, 1)]), 2).unwrap();
        assert_eq!(a.carrier().space().dim(Slot::new(2, 0)), 1);
        assert_eq!(a.carrier().space().dim(Slot::new(2, 1)), 1);
        assert_eq!(a.carrier().space().dim(Slot::new(2, 2)), 0);
    }

    #[test]
    fn sym_koszul_sign_on_odd_product() {
        let a = sym_algebra(&gens(&[("u", 1, 1), ("v", 1, 1)]), 2).unwrap();
        let u = BasisRef::new(Slot::new(1, 1), 0);
        let v = BasisRef::new(Slot::new(1, 1), 1);
        let uv = a.mul_basis(u, v);
        let vu = a.mul_basis(v, u);
        assert_eq!(uv.len(), 1);
        assert_eq!(vu.len(), 1);
        assert_eq!(uv[0].0, vu[0].0);
        assert_eq!(uv[0].1, -vu[0].1.clone());
    }

    #[test]
    fn enveloping_abelian_matches_sym() {
        let g = lie::abelian_lie("ab2", &[("x", 1), ("y", 1)], 4).unwrap();
        let u = enveloping(&g, 4).unwrap();
        let s = sym_algebra(&gens(&[("x", 0, 1), ("y", 0, 1)]), 4).unwrap();
        assert_eq!(
            u.carrier().space().dim_table(),
            s.carrier().space().dim_table()
        );
    }

    #[test]
    fn enveloping_heisenberg_weight_two() {
        let g = lie::heisenberg(4).unwrap();
        let u = enveloping(&g, 4).unwrap();
        // weight 2: x^2, x*y, y^2, z
        assert_eq!(u.carrier().space().dim(Slot::new(2, 0)), 4);
        // weight 1 slot of Ug equals g's weight-1 slot
        assert_eq!(
            u.carrier().space().dim(Slot::new(1, 0)),
            g.carrier().space().dim(Slot::new(1, 0))
        );
        // straightening: y * x = x*y - z
        let x = BasisRef::new(Slot::new(1, 0), 0);
        let y = BasisRef::new(Slot::new(1, 0), 1);
        let yx = u.mul_basis(y, x);
        let xy = u.mul_basis(x, y);
        assert_eq!(xy.len(), 1);
        assert_eq!(yx.len(), 2);
    }

    #[test]
    fn enveloping_n_parities() {
        let g = lie::abelian_lie("ab1", &[("x", 1)], 4).unwrap();
        // n = 2: generator moves to odd degree -1, so weight 2 is empty
        let e2 = enveloping_n(&g, 2, 4);
        assert_eq!(e2.dim(Slot::new(1, -1)), 1);
        assert_eq!(e2.dim(Slot::new(2, -2)), 0);
        // n = 3: generator at even degree -2, weight w is 1-dim at degree -2w
        let e3 = enveloping_n(&g, 3, 4);
        for w in 1..=4 {
            assert_eq!(e3.dim(Slot::new(w, -2 * w)), 1);
        }
        // n = 1 on an abelian algebra: Sym(g)
        let e1 = enveloping_n(&g, 1, 4);
        for w in 0..=4 {
            assert_eq!(e1.dim(Slot::new(w, 0)), 1);
        }
    }

    #[test]
    fn opposite_involutive_and_commutative_fixed() {
        let a = tensor_algebra(&gens(&[("x", 0, 1), ("y", 0, 1)]), 3).unwrap();
        let op = opposite(&a).unwrap();
        let opop = opposite(&op).unwrap();
        for ((p, q), terms) in a.product_map().iter() {
            assert_eq!(opop.product_map().get(*p, *q), terms.as_slice());
        }
        let s = sym_algebra(&gens(&[("x", 0, 1)]), 3).unwrap();
        let sop = opposite(&s).unwrap();
        for ((p, q), terms) in s.product_map().iter() {
            assert_eq!(sop.product_map().get(*p, *q), terms.as_slice());
        }
    }

    #[test]
    fn algebra_tensor_unit_law() {
        let unit = sym_algebra(&gens(&[]), 3).unwrap();
        let a = tensor_algebra(&gens(&[("x", 0, 1)]), 3).unwrap();
        let t = algebra_tensor(&unit, &a).unwrap();
        assert_eq!(
            t.carrier().space().dim_table(),
            a.carrier().space().dim_table()
        );
    }

    #[test]
    fn ce_cochains_abelian_is_exterior() {
        let g = lie::abelian_lie("ab1", &[("x", 1)], 4).unwrap();
        let c = ce_cochains(&g, 4).unwrap();
        assert_eq!(c.carrier().space().dim(Slot::new(-1, -1)), 1);
        assert_eq!(c.carrier().space().dim(Slot::new(-2, -2)), 0);
        assert!(c.carrier().has_zero_differential());
    }

    #[test]
    fn ce_cochains_heisenberg_cohomology() {
        // Betti numbers by exterior degree: (1, 2, 2, 1).
        let g = lie::heisenberg(4).unwrap();
        let c = ce_cochains(&g, 4).unwrap();
        let h = c.carrier().homology_all().unwrap();
        let by_degree: BTreeMap<i64, usize> = {
            let mut m = BTreeMap::new();
            for (slot, dim) in h.iter() {
                *m.entry(-slot.degree).or_insert(0) += dim;
            }
            m
        };
        assert_eq!(by_degree[&0], 1);
        assert_eq!(by_degree[&1], 2);
        assert_eq!(by_degree[&2], 2);
        assert_eq!(by_degree[&3], 1);
    }

    #[test]
    fn ce_cochains_rejects_unsignable_grading() {
        // a weight grading with weight(h) = 0 cannot be strictly signed
        let g = lie::WgLieAlgebra::from_brackets(
            "bad",
            &[("e", 0, 1), ("f", 0, 1), ("h", 0, 0)],
            &[],
            4,
        );
        match g {
            Err(Error::MixedWeightSigns { .. }) => {}
            other => panic!("expected MixedWeightSigns, got {other:?}"),
        }
    }
}
