//! Weight-graded dg Lie algebras: free Lie algebras on a Lyndon-word basis,
//! mapping Lie algebras `model (x) g`, and Chevalley-Eilenberg chains.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{
    add_terms, apply_differential, collect_terms, enumerate_sym_monomials, enumerate_words,
    monomial_slot, normalize_monomial, BasisRef, GradedSpacePresentation, PairMap, Terms,
    Validation,
};
use crate::complexes::{BigradedSpace, ChainComplex, Slot};
use crate::error::Error;
use crate::linalg::SparseMatrix;
use crate::model::CommutativeModel;
use crate::scalar::{int, is_odd, koszul_sign, parse_rational, sign_pow, Rational};

/// A weight-graded dg Lie algebra with exact bracket structure constants.
/// The bracket is weight- and degree-additive and satisfies graded
/// antisymmetry and Jacobi on every basis tuple inside the window.
#[derive(Debug)]
pub struct WgLieAlgebra {
    name: String,
    carrier: ChainComplex,
    bracket: PairMap,
    max_weight: i64,
}

impl WgLieAlgebra {
    pub fn new(
        name: impl Into<String>,
        carrier: ChainComplex,
        bracket: PairMap,
        max_weight: i64,
        policy: Validation,
    ) -> Result<Self, Error> {
        let lie = WgLieAlgebra {
            name: name.into(),
            carrier,
            bracket,
            max_weight,
        };
        lie.validate(policy)?;
        Ok(lie)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn carrier(&self) -> &ChainComplex {
        &self.carrier
    }

    pub fn max_weight(&self) -> i64 {
        self.max_weight
    }

    pub fn basis(&self) -> Vec<BasisRef> {
        self.carrier
            .space()
            .slots()
            .flat_map(|(slot, labels)| (0..labels.len()).map(move |i| BasisRef::new(slot, i)))
            .collect()
    }

    pub fn label(&self, r: BasisRef) -> &str {
        &self.carrier.space().labels(r.slot)[r.index]
    }

    /// `[a, b]` as a vector in `a.slot + b.slot` (empty when truncated).
    pub fn bracket_basis(&self, a: BasisRef, b: BasisRef) -> Terms {
        self.bracket.get(a, b).to_vec()
    }

    pub fn bracket_terms(
        &self,
        slot_a: Slot,
        a: &[(usize, Rational)],
        slot_b: Slot,
        b: &[(usize, Rational)],
    ) -> Terms {
        let mut acc = BTreeMap::new();
        for (ia, ca) in a {
            for (ib, cb) in b {
                let terms =
                    self.bracket_basis(BasisRef::new(slot_a, *ia), BasisRef::new(slot_b, *ib));
                add_terms(&mut acc, &terms, &(ca * cb));
            }
        }
        collect_terms(acc)
    }

    /// Differential of a basis element, in `r.slot.below()`.
    pub fn d_basis(&self, r: BasisRef) -> Terms {
        apply_differential(&self.carrier, r.slot, &[(r.index, int(1))])
    }

    /// Antisymmetry, Jacobi and the derivation rule on basis tuples.
    pub fn validate(&self, policy: Validation) -> Result<(), Error> {
        let basis = self.basis();
        let window = |s: Slot| s.weight.abs() <= self.max_weight;
        for &a in &basis {
            for &b in &basis {
                if !window(a.slot.add(b.slot)) {
                    continue;
                }
                let ab = self.bracket_basis(a, b);
                let mut ba = self.bracket_basis(b, a);
                let sign = -koszul_sign(a.slot.degree, b.slot.degree);
                for (_, c) in ba.iter_mut() {
                    *c *= &sign;
                }
                if ab != ba {
                    return Err(Error::validation(format!(
                        "lie algebra {:?}: antisymmetry fails on ({}, {})",
                        self.name,
                        self.label(a),
                        self.label(b)
                    )));
                }
                if !self.carrier.has_zero_differential() {
                    // d[a,b] = [da, b] + (-1)^{|a|} [a, db]
                    let d_ab = apply_differential(&self.carrier, a.slot.add(b.slot), &ab);
                    let da = self.d_basis(a);
                    let db = self.d_basis(b);
                    let mut acc = BTreeMap::new();
                    let left =
                        self.bracket_terms(a.slot.below(), &da, b.slot, &[(b.index, int(1))]);
                    add_terms(&mut acc, &left, &int(1));
                    let right =
                        self.bracket_terms(a.slot, &[(a.index, int(1))], b.slot.below(), &db);
                    add_terms(&mut acc, &right, &sign_pow(a.slot.degree));
                    if d_ab != collect_terms(acc) {
                        return Err(Error::validation(format!(
                            "lie algebra {:?}: differential is not a bracket derivation on ({}, {})",
                            self.name,
                            self.label(a),
                            self.label(b)
                        )));
                    }
                }
            }
        }
        // Jacobi: [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|} [b,[a,c]]
        let mut total = 0usize;
        for &a in &basis {
            for &b in &basis {
                for &c in &basis {
                    if window(a.slot.add(b.slot).add(c.slot)) {
                        total += 1;
                    }
                    let _ = (a, b, c);
                }
            }
        }
        let stride = match policy {
            Validation::Exhaustive => 1,
            Validation::Strided(budget) => total.div_ceil(budget.max(1)).max(1),
        };
        let mut counter = 0usize;
        for &a in &basis {
            for &b in &basis {
                for &c in &basis {
                    if !window(a.slot.add(b.slot).add(c.slot)) {
                        continue;
                    }
                    counter += 1;
                    if (counter - 1) % stride != 0 {
                        continue;
                    }
                    let bc = self.bracket_basis(b, c);
                    let lhs =
                        self.bracket_terms(a.slot, &[(a.index, int(1))], b.slot.add(c.slot), &bc);
                    let ab = self.bracket_basis(a, b);
                    let part1 =
                        self.bracket_terms(a.slot.add(b.slot), &ab, c.slot, &[(c.index, int(1))]);
                    let ac = self.bracket_basis(a, c);
                    let part2 =
                        self.bracket_terms(b.slot, &[(b.index, int(1))], a.slot.add(c.slot), &ac);
                    let mut acc = BTreeMap::new();
                    add_terms(&mut acc, &part1, &int(1));
                    add_terms(
                        &mut acc,
                        &part2,
                        &koszul_sign(a.slot.degree, b.slot.degree),
                    );
                    if lhs != collect_terms(acc) {
                        return Err(Error::validation(format!(
                            "lie algebra {:?}: Jacobi fails on ({}, {}, {})",
                            self.name,
                            self.label(a),
                            self.label(b),
                            self.label(c)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Builds a degree-0 Lie algebra from generator weights and bracket
    /// rules `[left, right] = sum coeff * gen`; the transposed brackets are
    /// filled in by antisymmetry.
    pub fn from_brackets(
        name: &str,
        generators: &[(&str, i64, i64)],
        brackets: &[(&str, &str, &[(i64, &str)])],
        max_weight: i64,
    ) -> Result<Self, Error> {
        let presentation = GradedSpacePresentation {
            generators: generators
                .iter()
                .map(|(n, d, w)| crate::algebra::Generator {
                    name: (*n).to_string(),
                    degree: *d,
                    weight: *w,
                })
                .collect(),
            relations: Vec::new(),
        };
        presentation.validate(false)?;
        let mut space = BigradedSpace::new();
        let mut ref_of: BTreeMap<&str, BasisRef> = BTreeMap::new();
        for (gen_name, degree, weight) in generators {
            let slot = Slot::new(*weight, *degree);
            let idx = space.push_label(slot, (*gen_name).to_string());
            ref_of.insert(gen_name, BasisRef::new(slot, idx));
        }
        let mut bracket = PairMap::new();
        for (l, r, terms) in brackets {
            let rl = *ref_of
                .get(l)
                .ok_or_else(|| Error::input(format!("unknown generator {l:?}")))?;
            let rr = *ref_of
                .get(r)
                .ok_or_else(|| Error::input(format!("unknown generator {r:?}")))?;
            let target = rl.slot.add(rr.slot);
            let mut out: Terms = Vec::new();
            for (coeff, g) in terms.iter() {
                let rg = *ref_of
                    .get(g)
                    .ok_or_else(|| Error::input(format!("unknown generator {g:?}")))?;
                if rg.slot != target {
                    return Err(Error::input(format!(
                        "bracket [{l},{r}] is not weight/degree additive"
                    )));
                }
                out.push((rg.index, int(*coeff)));
            }
            bracket.set(rl, rr, out.clone());
            if rl != rr {
                let sign = -koszul_sign(rl.slot.degree, rr.slot.degree);
                let flipped: Terms = out.iter().map(|(i, c)| (*i, &sign * c)).collect();
                bracket.set(rr, rl, flipped);
            }
        }
        WgLieAlgebra::new(name, ChainComplex::with_zero_differential(space), bracket, max_weight, Validation::Exhaustive)
    }
}

/// An abelian Lie algebra in degree 0 on the given `(name, weight)` list.
pub fn abelian_lie(
    name: &str,
    generators: &[(&str, i64)],
    max_weight: i64,
) -> Result<WgLieAlgebra, Error> {
    let gens: Vec<(&str, i64, i64)> = generators.iter().map(|(n, w)| (*n, 0, *w)).collect();
    WgLieAlgebra::from_brackets(name, &gens, &[], max_weight)
}

/// The Heisenberg algebra `[x, y] = z` with weights `(1, 1, 2)`.
pub fn heisenberg(max_weight: i64) -> Result<WgLieAlgebra, Error> {
    WgLieAlgebra::from_brackets(
        "heisenberg",
        &[("x", 0, 1), ("y", 0, 1), ("z", 0, 2)],
        &[("x", "y", &[(1, "z")])],
        max_weight,
    )
}

/// The 3-dimensional filiform algebra `[x, y] = z` with weights `(1, 1, 2)`;
/// with these weights it coincides with the Heisenberg presentation but is
/// registered as its own corpus entry.
pub fn filiform(max_weight: i64) -> Result<WgLieAlgebra, Error> {
    WgLieAlgebra::from_brackets(
        "filiform",
        &[("x", 0, 1), ("y", 0, 1), ("z", 0, 2)],
        &[("x", "y", &[(1, "z")])],
        max_weight,
    )
}

// ---------------------------------------------------------------------------
// free Lie algebras on a Lyndon basis
// ---------------------------------------------------------------------------

/// A sparse element of the truncated tensor algebra, used as the ambient
/// space for free Lie computations.
type TensorElt = BTreeMap<Vec<u32>, Rational>;

fn tensor_mul(a: &TensorElt, b: &TensorElt) -> TensorElt {
    let mut out = TensorElt::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            let mut w = wa.clone();
            w.extend_from_slice(wb);
            let entry = out.entry(w).or_insert_with(Rational::zero);
            *entry += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Graded commutator `ab - (-1)^{|a||b|} ba` for homogeneous elements.
fn graded_commutator(a: &TensorElt, deg_a: i64, b: &TensorElt, deg_b: i64) -> TensorElt {
    let mut out = tensor_mul(a, b);
    let sign = -koszul_sign(deg_a, deg_b);
    for (w, c) in tensor_mul(b, a) {
        let entry = out.entry(w).or_insert_with(Rational::zero);
        *entry += &sign * c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn is_lyndon(word: &[u32]) -> bool {
    if word.is_empty() {
        return false;
    }
    let n = word.len();
    for k in 1..n {
        let rotation = || word[k..].iter().chain(word[..k].iter());
        if rotation().lt(word.iter()) || rotation().eq(word.iter()) {
            return false;
        }
    }
    true
}

/// Standard right factorization of a Lyndon word of length >= 2: the split
/// point of its lexicographically least proper suffix.
fn standard_split(word: &[u32]) -> usize {
    let mut best = 1;
    for k in 2..word.len() {
        if word[k..] < word[best..] {
            best = k;
        }
    }
    best
}

/// The free graded Lie algebra on the generators suspended `n - 1` times:
/// generators of degree `d` enter in degree `d + n - 1`.  The basis consists
/// of standard bracketings of Lyndon words, plus `[b, b]` for each odd-degree
/// Lyndon bracketing `b`; structure constants are computed inside the
/// truncated tensor algebra and expressed exactly in this basis.
pub fn free_lie(
    v: &GradedSpacePresentation,
    n: u32,
    max_weight: i64,
) -> Result<WgLieAlgebra, Error> {
    v.validate(true)?;
    if !v.relations.is_empty() {
        return Err(Error::input("free_lie does not accept relations"));
    }
    let shift = n as i64 - 1;
    let gen_slots: Vec<Slot> = v
        .generators
        .iter()
        .map(|g| Slot::new(g.weight, g.degree + shift))
        .collect();
    let gen_names: Vec<String> = v.generators.iter().map(|g| g.name.clone()).collect();

    // word basis of the ambient tensor algebra, indexed per slot
    let words = enumerate_words(&gen_slots, max_weight);
    let mut word_index: BTreeMap<Slot, BTreeMap<Vec<u32>, usize>> = BTreeMap::new();
    for w in &words {
        let slot = monomial_slot(w, &gen_slots);
        let entry = word_index.entry(slot).or_default();
        let next = entry.len();
        entry.entry(w.clone()).or_insert(next);
    }

    // standard bracketings of Lyndon words, memoized
    let mut bracketing: BTreeMap<Vec<u32>, (TensorElt, String)> = BTreeMap::new();
    let mut lyndon_words: Vec<Vec<u32>> = words
        .iter()
        .filter(|w| is_lyndon(w))
        .cloned()
        .collect();
    lyndon_words.sort_by_key(|w| (w.len(), w.clone()));
    for w in &lyndon_words {
        if w.len() == 1 {
            let elt = TensorElt::from([(w.clone(), int(1))]);
            bracketing.insert(w.clone(), (elt, gen_names[w[0] as usize].clone()));
            continue;
        }
        let split = standard_split(w);
        let (u, s) = (&w[..split], &w[split..]);
        let (bu, lu) = bracketing[u].clone();
        let (bs, ls) = bracketing[s].clone();
        let deg_u = monomial_slot(u, &gen_slots).degree;
        let deg_s = monomial_slot(s, &gen_slots).degree;
        let elt = graded_commutator(&bu, deg_u, &bs, deg_s);
        bracketing.insert(w.clone(), (elt, format!("[{lu},{ls}]")));
    }

    // basis candidates per slot: Lyndon bracketings, then odd squares
    struct Candidate {
        label: String,
        elt: TensorElt,
    }
    let mut per_slot: BTreeMap<Slot, Vec<Candidate>> = BTreeMap::new();
    for w in &lyndon_words {
        let slot = monomial_slot(w, &gen_slots);
        let (elt, label) = bracketing[w].clone();
        per_slot.entry(slot).or_default().push(Candidate { label, elt });
    }
    for w in &lyndon_words {
        let slot = monomial_slot(w, &gen_slots);
        if !is_odd(slot.degree) {
            continue;
        }
        let doubled = Slot::new(slot.weight * 2, slot.degree * 2);
        if doubled.weight > max_weight {
            continue;
        }
        let (elt, label) = bracketing[w].clone();
        let square = graded_commutator(&elt, slot.degree, &elt, slot.degree);
        debug_assert!(!square.is_empty());
        per_slot
            .entry(doubled)
            .or_default()
            .push(Candidate {
                label: format!("[{label},{label}]"),
                elt: square,
            });
    }

    // verify independence and set up per-slot coordinate matrices
    let mut space = BigradedSpace::new();
    let mut matrices: BTreeMap<Slot, SparseMatrix> = BTreeMap::new();
    for (slot, candidates) in &per_slot {
        let index = &word_index[slot];
        let mut m = SparseMatrix::zero(index.len(), candidates.len());
        for (col, cand) in candidates.iter().enumerate() {
            for (w, c) in &cand.elt {
                m.set(index[w], col, c.clone());
            }
        }
        assert_eq!(
            m.rank(),
            candidates.len(),
            "Lyndon bracketings are dependent at {slot:?}"
        );
        for cand in candidates {
            space.push_label(*slot, cand.label.clone());
        }
        matrices.insert(*slot, m);
    }

    // structure constants: commutators of basis elements solved in the basis
    let mut bracket = PairMap::new();
    let slots: Vec<Slot> = per_slot.keys().copied().collect();
    for &sa in &slots {
        for &sb in &slots {
            let target = sa.add(sb);
            if target.weight > max_weight {
                continue;
            }
            let ca = &per_slot[&sa];
            let cb = &per_slot[&sb];
            let index = &word_index[&target];
            let mut columns = SparseMatrix::zero(index.len(), ca.len() * cb.len());
            for (ia, a) in ca.iter().enumerate() {
                for (ib, b) in cb.iter().enumerate() {
                    let comm = graded_commutator(&a.elt, sa.degree, &b.elt, sb.degree);
                    for (w, c) in &comm {
                        columns.set(index[w], ia * cb.len() + ib, c.clone());
                    }
                }
            }
            if columns.is_zero() {
                continue;
            }
            let basis_matrix = match matrices.get(&target) {
                Some(m) => m.clone(),
                None => {
                    assert!(columns.is_zero(), "bracket escapes the Lyndon basis at {target:?}");
                    continue;
                }
            };
            let solutions = crate::linalg::solve_full_rank(&basis_matrix, &columns)
                .expect("bracket of Lyndon elements must lie in the Lyndon span");
            for (ia, _) in ca.iter().enumerate() {
                for (ib, _) in cb.iter().enumerate() {
                    let sol = &solutions[ia * cb.len() + ib];
                    let terms: Terms = sol.iter().map(|(i, c)| (*i, c.clone())).collect();
                    bracket.set(
                        BasisRef::new(sa, ia),
                        BasisRef::new(sb, ib),
                        terms,
                    );
                }
            }
        }
    }
    let name = format!(
        "FreeLie({}; n={n})",
        gen_names.join(",")
    );
    WgLieAlgebra::new(
        name,
        ChainComplex::with_zero_differential(space),
        bracket,
        max_weight,
        Validation::Strided(100_000),
    )
}

// ---------------------------------------------------------------------------
// mapping Lie algebras
// ---------------------------------------------------------------------------

/// The Lie algebra `model (x) g` with bracket
/// `[a (x) x, b (x) y] = (-1)^{|x||b|} ab (x) [x, y]`; models of compactly
/// supported cochains make this a model for maps out of the manifold.
pub fn mapping_lie(m: &CommutativeModel, g: &WgLieAlgebra) -> Result<WgLieAlgebra, Error> {
    let max_weight = g.max_weight();
    let (carrier, raw_index) = m
        .carrier()
        .tensor_indexed(g.carrier(), Some(max_weight));
    let mut index: BTreeMap<(BasisRef, BasisRef), BasisRef> = BTreeMap::new();
    for ((sa, ia, sb, ib), idx) in raw_index {
        index.insert(
            (BasisRef::new(sa, ia), BasisRef::new(sb, ib)),
            BasisRef::new(sa.add(sb), idx),
        );
    }
    let mut bracket = PairMap::new();
    for (&(a, x), &t1) in &index {
        for (&(b, y), &t2) in &index {
            if (t1.slot.weight + t2.slot.weight).abs() > max_weight {
                continue;
            }
            let ab = m.mul_basis(a, b);
            if ab.is_empty() {
                continue;
            }
            let xy = g.bracket_basis(x, y);
            if xy.is_empty() {
                continue;
            }
            let sign = koszul_sign(x.slot.degree, b.slot.degree);
            let model_slot = a.slot.add(b.slot);
            let lie_slot = x.slot.add(y.slot);
            let mut acc = BTreeMap::new();
            for (im, cm) in &ab {
                for (il, cl) in &xy {
                    let target =
                        index[&(BasisRef::new(model_slot, *im), BasisRef::new(lie_slot, *il))];
                    let entry = acc.entry(target.index).or_insert_with(Rational::zero);
                    *entry += &sign * cm * cl;
                }
            }
            bracket.set(t1, t2, collect_terms(acc));
        }
    }
    WgLieAlgebra::new(
        format!("Map({},{})", m.name(), g.name()),
        carrier,
        bracket,
        max_weight,
        Validation::Strided(100_000),
    )
}

// ---------------------------------------------------------------------------
// Chevalley-Eilenberg chains
// ---------------------------------------------------------------------------

/// Chevalley-Eilenberg chains `Sym(l[1])` of a weight-graded dg Lie algebra
/// with strictly signed weights.  The differential is the coderivation pair
/// contraction induced by the bracket plus the suspended internal
/// differential; `d^2 = 0` is checked slot by slot at construction.
pub fn ce_chains(l: &WgLieAlgebra, max_weight: i64) -> Result<ChainComplex, Error> {
    // suspended generators
    let mut gen_slots: Vec<Slot> = Vec::new();
    let mut gen_names: Vec<String> = Vec::new();
    let mut ref_of_flat: Vec<BasisRef> = Vec::new();
    let mut flat_of: BTreeMap<BasisRef, u32> = BTreeMap::new();
    let mut sign_seen = 0i64;
    for (slot, labels) in l.carrier().space().slots() {
        if slot.weight == 0 {
            return Err(Error::MixedWeightSigns {
                detail: format!("ce_chains requires strictly signed weights, found {slot:?}"),
            });
        }
        let s = slot.weight.signum();
        if sign_seen == 0 {
            sign_seen = s;
        } else if sign_seen != s {
            return Err(Error::MixedWeightSigns {
                detail: "ce_chains requires strictly signed weights".into(),
            });
        }
        for (i, label) in labels.iter().enumerate() {
            flat_of.insert(BasisRef::new(slot, i), gen_slots.len() as u32);
            ref_of_flat.push(BasisRef::new(slot, i));
            gen_slots.push(slot.shifted(1));
            gen_names.push(format!("s({label})"));
        }
    }
    let degree_of = {
        let slots = gen_slots.clone();
        move |g: u32| slots[g as usize].degree
    };

    let monomials = enumerate_sym_monomials(&gen_slots, max_weight);
    let mut space = BigradedSpace::new();
    let mut index: BTreeMap<Vec<u32>, BasisRef> = BTreeMap::new();
    let mut by_slot: BTreeMap<Slot, Vec<Vec<u32>>> = BTreeMap::new();
    for m in monomials {
        by_slot
            .entry(monomial_slot(&m, &gen_slots))
            .or_default()
            .push(m);
    }
    for (slot, monos) in &by_slot {
        for m in monos {
            let idx = space.push_label(*slot, crate::algebra::monomial_label(m, &gen_names));
            index.insert(m.clone(), BasisRef::new(*slot, idx));
        }
    }

    let mut diff: BTreeMap<Slot, SparseMatrix> = BTreeMap::new();
    for (mono, r) in &index {
        let slot = r.slot;
        let below = slot.below();
        let rows = space.dim(below);
        if rows == 0 {
            continue;
        }
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        // internal part: l_1(s x) = -s(dx), moved to the front
        let mut prefix_degree = 0i64;
        for (t, &gen) in mono.iter().enumerate() {
            let move_sign = koszul_sign(prefix_degree, degree_of(gen));
            let source = ref_of_flat[gen as usize];
            for (i, c) in l.d_basis(source) {
                let target_gen = flat_of[&BasisRef::new(source.slot.below(), i)];
                let mut new_mono: Vec<u32> = Vec::with_capacity(mono.len());
                new_mono.push(target_gen);
                new_mono.extend_from_slice(&mono[..t]);
                new_mono.extend_from_slice(&mono[t + 1..]);
                let Some(sort_sign) = normalize_monomial(&mut new_mono, &degree_of) else {
                    continue;
                };
                if let Some(target) = index.get(&new_mono) {
                    debug_assert_eq!(target.slot, below);
                    let entry = acc.entry(target.index).or_insert_with(Rational::zero);
                    *entry += &move_sign * &sort_sign * -c;
                }
            }
            prefix_degree += degree_of(gen);
        }
        // bracket part: contract positions t < u through
        // l_2(s x, s y) = (-1)^{|x|} s[x, y]
        for t in 0..mono.len() {
            for u in (t + 1)..mono.len() {
                let pre_t: i64 = mono[..t].iter().map(|&g| degree_of(g)).sum();
                let pre_u: i64 = mono[..u].iter().map(|&g| degree_of(g)).sum();
                let move_sign = koszul_sign(pre_t, degree_of(mono[t]))
                    * koszul_sign(pre_u - degree_of(mono[t]), degree_of(mono[u]));
                let rx = ref_of_flat[mono[t] as usize];
                let ry = ref_of_flat[mono[u] as usize];
                let pairing_sign = sign_pow(rx.slot.degree);
                let bracket = l.bracket_basis(rx, ry);
                for (i, c) in &bracket {
                    let target_gen = flat_of[&BasisRef::new(rx.slot.add(ry.slot), *i)];
                    let mut new_mono: Vec<u32> = Vec::with_capacity(mono.len() - 1);
                    new_mono.push(target_gen);
                    for (p, &g) in mono.iter().enumerate() {
                        if p != t && p != u {
                            new_mono.push(g);
                        }
                    }
                    let Some(sort_sign) = normalize_monomial(&mut new_mono, &degree_of) else {
                        continue;
                    };
                    if let Some(target) = index.get(&new_mono) {
                        debug_assert_eq!(target.slot, below);
                        let entry = acc.entry(target.index).or_insert_with(Rational::zero);
                        *entry += &move_sign * &pairing_sign * &sort_sign * c;
                    }
                }
            }
        }
        let terms = collect_terms(acc);
        if !terms.is_empty() {
            let matrix = diff
                .entry(slot)
                .or_insert_with(|| SparseMatrix::zero(rows, space.dim(slot)));
            crate::complexes::column_from_terms(matrix, r.index, &terms);
        }
    }
    ChainComplex::new(space, diff)
}

/// Loads bracket rules given by names and rational coefficient strings;
/// shared by the JSON surface.
pub fn bracket_rules_from_strings(
    rules: &[(String, String, Vec<(String, String)>)],
) -> Result<Vec<(String, String, Vec<(Rational, String)>)>, Error> {
    rules
        .iter()
        .map(|(l, r, terms)| {
            let parsed: Result<Vec<(Rational, String)>, Error> = terms
                .iter()
                .map(|(coeff, gen)| {
                    parse_rational(coeff)
                        .map(|c| (c, gen.clone()))
                        .map_err(Error::input)
                })
                .collect();
            Ok((l.clone(), r.clone(), parsed?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model;

    fn gens(list: &[(&'static str, i64, i64)]) -> GradedSpacePresentation {
        GradedSpacePresentation::from_generators(list.iter().copied())
    }

    fn weight_dims(l: &WgLieAlgebra, max: i64) -> Vec<usize> {
        (1..=max)
            .map(|w| {
                l.carrier()
                    .space()
                    .slots()
                    .filter(|(s, _)| s.weight == w)
                    .map(|(_, labels)| labels.len())
                    .sum()
            })
            .collect()
    }

    #[test]
    fn free_lie_witt_numbers_two_generators() {
        // Witt formula (1/w) sum_{d | w} mu(d) 2^{w/d}: 2, 1, 2, 3
        let l = free_lie(&gens(&[("x", 0, 1), ("y", 0, 1)]), 1, 4).unwrap();
        assert_eq!(weight_dims(&l, 4), vec![2, 1, 2, 3]);
    }

    #[test]
    fn free_lie_one_generator_n2() {
        // shifted generator is odd: only x and [x,x] survive
        let l = free_lie(&gens(&[("x", 0, 1)]), 2, 4).unwrap();
        assert_eq!(weight_dims(&l, 4), vec![1, 1, 0, 0]);
        assert_eq!(l.carrier().space().dim(Slot::new(1, 1)), 1);
        assert_eq!(l.carrier().space().dim(Slot::new(2, 2)), 1);
    }

    #[test]
    fn free_lie_one_generator_n3() {
        // shifted generator is even: [x,x] = 0
        let l = free_lie(&gens(&[("x", 0, 1)]), 3, 4).unwrap();
        assert_eq!(weight_dims(&l, 4), vec![1, 0, 0, 0]);
    }

    #[test]
    fn free_lie_pbw_dimension_check() {
        // dims of T(V) match dims of Sym(FreeLie(V)) slot by slot
        for (generators, n) in [
            (vec![("x", 0i64, 1i64), ("y", 0, 1)], 1u32),
            (vec![("x", 0, 1)], 2),
            (vec![("x", 0, 1), ("y", 1, 1)], 1),
            (vec![("x", 0, 1), ("y", 0, 2)], 2),
        ] {
            let v = gens(&generators);
            let max_weight = 5;
            let l = free_lie(&v, n, max_weight).unwrap();
            let shift = n as i64 - 1;
            let shifted = v.shifted(shift);
            let t = crate::algebra::tensor_algebra(&shifted, max_weight).unwrap();
            let mut lie_gen_slots = Vec::new();
            for (slot, labels) in l.carrier().space().slots() {
                for _ in labels {
                    lie_gen_slots.push(slot);
                }
            }
            let mut sym_dims = crate::complexes::BettiTable::new();
            for m in enumerate_sym_monomials(&lie_gen_slots, max_weight) {
                sym_dims.add(monomial_slot(&m, &lie_gen_slots), 1);
            }
            assert_eq!(
                sym_dims,
                t.carrier().space().dim_table(),
                "PBW mismatch for {generators:?}, n = {n}"
            );
        }
    }

    #[test]
    fn mapping_lie_point_is_identity() {
        let g = heisenberg(4).unwrap();
        let m = mapping_lie(&model::point(), &g).unwrap();
        assert_eq!(
            m.carrier().space().dim_table(),
            g.carrier().space().dim_table()
        );
        // bracket carries over
        let x = BasisRef::new(Slot::new(1, 0), 0);
        let y = BasisRef::new(Slot::new(1, 0), 1);
        assert_eq!(m.bracket_basis(x, y).len(), 1);
    }

    #[test]
    fn mapping_lie_euclidean_is_abelian_shift() {
        let g = heisenberg(4).unwrap();
        let m = mapping_lie(&model::euclidean(2), &g).unwrap();
        assert_eq!(
            m.carrier().space().dim_table(),
            g.carrier().space().dim_table().shift_degrees(-2)
        );
        for &a in &m.basis() {
            for &b in &m.basis() {
                assert!(m.bracket_basis(a, b).is_empty(), "expected abelian bracket");
            }
        }
    }

    #[test]
    fn ce_chains_abelian_zero_differential() {
        let g = abelian_lie("ab2", &[("x", 1), ("y", 2)], 4).unwrap();
        let c = ce_chains(&g, 4).unwrap();
        assert!(c.has_zero_differential());
        // Sym(g[1]): both suspended generators odd
        assert_eq!(c.space().dim(Slot::new(1, 1)), 1);
        assert_eq!(c.space().dim(Slot::new(3, 2)), 1);
        assert_eq!(c.space().dim(Slot::new(2, 2)), 0);
    }

    #[test]
    fn ce_chains_heisenberg_homology() {
        let g = heisenberg(4).unwrap();
        let c = ce_chains(&g, 4).unwrap();
        let h = c.homology_all().unwrap();
        let mut by_degree: BTreeMap<i64, usize> = BTreeMap::new();
        for (slot, dim) in h.iter() {
            *by_degree.entry(slot.degree).or_insert(0) += dim;
        }
        assert_eq!(by_degree[&0], 1);
        assert_eq!(by_degree[&1], 2);
        assert_eq!(by_degree[&2], 2);
        assert_eq!(by_degree[&3], 1);
    }

    #[test]
    fn ce_chains_of_free_lie_one_even_generator() {
        // free_lie on one even generator at n=1 is 1-dimensional abelian;
        // CE homology is Q plus Q[1] in the single weight
        let l = free_lie(&gens(&[("x", 0, 1)]), 1, 3).unwrap();
        let c = ce_chains(&l, 3).unwrap();
        let h = c.homology_all().unwrap();
        assert_eq!(h.get(Slot::new(0, 0)), 1);
        assert_eq!(h.get(Slot::new(1, 1)), 1);
        assert_eq!(h.total(), 2);
    }

    #[test]
    fn ce_chains_acyclic_two_term_lie() {
        // abelian dg Lie algebra x -> y (dx = y): CE chains must be the
        // unit plus an acyclic part in every positive weight
        let mut space = BigradedSpace::new();
        space.push_label(Slot::new(1, 1), "x".into());
        space.push_label(Slot::new(1, 0), "y".into());
        let mut m = SparseMatrix::zero(1, 1);
        m.set(0, 0, int(1));
        let mut diff = BTreeMap::new();
        diff.insert(Slot::new(1, 1), m);
        let carrier = ChainComplex::new(space, diff).unwrap();
        let l = WgLieAlgebra::new("cone", carrier, PairMap::new(), 4, Validation::Exhaustive)
            .unwrap();
        let c = ce_chains(&l, 4).unwrap();
        let h = c.homology_all().unwrap();
        assert_eq!(h.get(Slot::new(0, 0)), 1);
        assert_eq!(h.total(), 1, "CE of an acyclic abelian dg Lie algebra is trivial");
    }

    #[test]
    fn ce_chains_abelian_acyclic_source_is_trivial() {
        // zero-product model with a differential: the mapping Lie algebra is
        // abelian and acyclic, so CE homology is just the unit
        let m = model::from_parts(
            "acyclic",
            &[("t", 0), ("e", -1)],
            &[],
            &[(0, vec![(int(1), 1)])],
        )
        .unwrap();
        let g = heisenberg(3).unwrap();
        let l = mapping_lie(&m, &g).unwrap();
        let c = ce_chains(&l, 3).unwrap();
        let h = c.homology_all().unwrap();
        assert_eq!(h.get(Slot::new(0, 0)), 1);
        assert_eq!(h.total(), 1, "contractible mapping source gives trivial CE homology");
    }

    #[test]
    fn ce_chains_mixed_internal_and_bracket_differential() {
        // unital model with a contractible tail (dt = e): the mapping Lie
        // algebra has both a nonzero bracket and a nonzero differential, and
        // its CE homology must agree with that of the quasi-isomorphic
        // sub-Lie-algebra 1 (x) heisenberg
        let m = model::from_parts(
            "unital-acyclic",
            &[("1", 0), ("t", 0), ("e", -1)],
            &[
                ((0, 0), vec![(int(1), 0)]),
                ((0, 1), vec![(int(1), 1)]),
                ((1, 0), vec![(int(1), 1)]),
                ((0, 2), vec![(int(1), 2)]),
                ((2, 0), vec![(int(1), 2)]),
            ],
            &[(1, vec![(int(1), 2)])],
        )
        .unwrap();
        let g = heisenberg(3).unwrap();
        let l = mapping_lie(&m, &g).unwrap();
        assert!(!l.carrier().has_zero_differential());
        let h_big = ce_chains(&l, 3).unwrap().homology_all().unwrap();
        let h_small = ce_chains(&g, 3).unwrap().homology_all().unwrap();
        assert_eq!(h_big, h_small);
    }

    #[test]
    fn free_lie_rejects_nonpositive_weights() {
        match free_lie(&gens(&[("x", 0, -1)]), 1, 3) {
            Err(Error::MixedWeightSigns { .. }) => {}
            other => panic!("expected MixedWeightSigns, got {other:?}"),
        }
    }
}
