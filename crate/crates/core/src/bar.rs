//! Two-sided bar constructions, bar complexes of augmented algebras, and
//! cyclic bar (Hochschild) complexes, truncated exactly by weight.
//!
//! Levels are plain tensor products of complexes and every face map is a
//! degree-0 chain map, so the total differential is the alternating face sum
//! plus the sign-twisted internal differential; `d^2 = 0` is asserted on
//! every slot at construction.  Because augmentation ideals sit in strictly
//! signed weights, the normalized levels are closed under all faces and the
//! weight-`w` part vanishes above simplicial level `|w|`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{
    add_terms, apply_differential, collect_terms, BasisRef, PairMap, Terms, WgAlgebra,
};
use crate::complexes::{BettiTable, BigradedSpace, ChainComplex, Slot};
use crate::error::Error;
use crate::linalg::SparseMatrix;
use crate::scalar::{int, koszul_sign, sign_pow, Rational};

/// Which side a module action lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A weight-graded module over a `WgAlgebra`: a carrier complex plus a
/// degree-0, weight-additive action by the augmentation ideal (the unit acts
/// as the identity).  Right actions are keyed `(module, algebra)`, left
/// actions `(algebra, module)`.
#[derive(Debug)]
pub struct WgModule {
    name: String,
    algebra: Arc<WgAlgebra>,
    side: Side,
    carrier: ChainComplex,
    action: PairMap,
}

/// How thoroughly module axioms are checked; reuse the algebra policy type.
pub use crate::algebra::Validation;

impl WgModule {
    pub fn new(
        name: impl Into<String>,
        algebra: Arc<WgAlgebra>,
        side: Side,
        carrier: ChainComplex,
        action: PairMap,
        policy: Validation,
    ) -> Result<Self, Error> {
        let module = WgModule {
            name: name.into(),
            algebra,
            side,
            carrier,
            action,
        };
        module.validate(policy)?;
        Ok(module)
    }

    /// The algebra as a module over itself.
    pub fn regular(algebra: &Arc<WgAlgebra>, side: Side) -> Self {
        WgModule {
            name: format!("{}-as-{:?}-module", algebra.name(), side),
            algebra: Arc::clone(algebra),
            side,
            carrier: algebra.carrier().clone(),
            action: regular_action(algebra, side),
        }
    }

    /// The trivial module: the unit object with the augmentation action
    /// (the augmentation ideal acts by zero).
    pub fn trivial(algebra: &Arc<WgAlgebra>, side: Side) -> Self {
        WgModule {
            name: format!("Q-as-{side:?}-module"),
            algebra: Arc::clone(algebra),
            side,
            carrier: ChainComplex::unit(),
            action: PairMap::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn algebra(&self) -> &Arc<WgAlgebra> {
        &self.algebra
    }

    pub fn carrier(&self) -> &ChainComplex {
        &self.carrier
    }

    pub(crate) fn action_map(&self) -> &PairMap {
        &self.action
    }

    /// Module axioms on basis tuples: compatibility with the product
    /// (strided by `policy`) and the Leibniz rule (exhaustive).
    pub fn validate(&self, policy: Validation) -> Result<(), Error> {
        let module_basis = algebra_basis(&self.carrier);
        let ideal = self.algebra.augmentation_ideal();
        let w = self.algebra.max_weight();
        // Leibniz: d(m.a) = (dm).a + (-1)^{|m|} m.(da) for right modules,
        // and the mirror for left modules.
        let differentials_trivial = self.carrier.has_zero_differential()
            && self.algebra.carrier().has_zero_differential();
        if !differentials_trivial {
            for &m in &module_basis {
                for &a in &ideal {
                    if (m.slot.weight + a.slot.weight).abs() > w {
                        continue;
                    }
                    self.check_leibniz(m, a)?;
                }
            }
        }
        let mut total = 0usize;
        for &m in &module_basis {
            for &a in &ideal {
                for &b in &ideal {
                    if (m.slot.weight + a.slot.weight + b.slot.weight).abs() <= w {
                        total += 1;
                    }
                    let _ = (m, a, b);
                }
            }
        }
        let stride = match policy {
            Validation::Exhaustive => 1,
            Validation::Strided(budget) => total.div_ceil(budget.max(1)).max(1),
        };
        let mut counter = 0usize;
        for &m in &module_basis {
            for &a in &ideal {
                for &b in &ideal {
                    if (m.slot.weight + a.slot.weight + b.slot.weight).abs() > w {
                        continue;
                    }
                    counter += 1;
                    if (counter - 1) % stride != 0 {
                        continue;
                    }
                    let (two_step, one_step) = match self.side {
                        Side::Right => {
                            // (m.a).b vs m.(ab)
                            let ma = self.act_right(m, a);
                            let two = self.act_right_terms(m.slot.add(a.slot), &ma, b);
                            let ab = self.algebra.mul_basis(a, b);
                            let one = self.act_right_alg_terms(m, a.slot.add(b.slot), &ab);
                            (two, one)
                        }
                        Side::Left => {
                            // a.(b.m) vs (ab).m
                            let bm = self.act_left(b, m);
                            let two = self.act_left_terms(a, b.slot.add(m.slot), &bm);
                            let ab = self.algebra.mul_basis(a, b);
                            let one = self.act_left_alg_terms(a.slot.add(b.slot), &ab, m);
                            (two, one)
                        }
                    };
                    if two_step != one_step {
                        return Err(Error::validation(format!(
                            "module {:?}: action axiom fails on ({}, {}, {})",
                            self.name,
                            self.algebra.label(a),
                            self.algebra.label(b),
                            m.index
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_leibniz(&self, m: BasisRef, a: BasisRef) -> Result<(), Error> {
        let (result_slot, action) = match self.side {
            Side::Right => (m.slot.add(a.slot), self.act_right(m, a)),
            Side::Left => (a.slot.add(m.slot), self.act_left(a, m)),
        };
        let d_action = apply_differential(&self.carrier, result_slot, &action);
        let dm = apply_differential(&self.carrier, m.slot, &[(m.index, int(1))]);
        let da = self.algebra.d_terms(a.slot, &[(a.index, int(1))]);
        let mut acc = BTreeMap::new();
        match self.side {
            Side::Right => {
                for (im, cm) in &dm {
                    let terms = self.act_right(BasisRef::new(m.slot.below(), *im), a);
                    add_terms(&mut acc, &terms, cm);
                }
                let sign = sign_pow(m.slot.degree);
                for (ia, ca) in &da {
                    let terms = self.act_right(m, BasisRef::new(a.slot.below(), *ia));
                    add_terms(&mut acc, &terms, &(&sign * ca));
                }
            }
            Side::Left => {
                for (ia, ca) in &da {
                    let terms = self.act_left(BasisRef::new(a.slot.below(), *ia), m);
                    add_terms(&mut acc, &terms, ca);
                }
                let sign = sign_pow(a.slot.degree);
                for (im, cm) in &dm {
                    let terms = self.act_left(a, BasisRef::new(m.slot.below(), *im));
                    add_terms(&mut acc, &terms, &(&sign * cm));
                }
            }
        }
        if d_action != collect_terms(acc) {
            return Err(Error::validation(format!(
                "module {:?}: Leibniz fails on action pair",
                self.name
            )));
        }
        Ok(())
    }

    fn act_right(&self, m: BasisRef, a: BasisRef) -> Terms {
        debug_assert_eq!(self.side, Side::Right);
        self.action.get(m, a).to_vec()
    }

    fn act_left(&self, a: BasisRef, m: BasisRef) -> Terms {
        debug_assert_eq!(self.side, Side::Left);
        self.action.get(a, m).to_vec()
    }

    fn act_right_terms(&self, slot: Slot, v: &[(usize, Rational)], a: BasisRef) -> Terms {
        let mut acc = BTreeMap::new();
        for (i, c) in v {
            let terms = self.act_right(BasisRef::new(slot, *i), a);
            add_terms(&mut acc, &terms, c);
        }
        collect_terms(acc)
    }

    fn act_right_alg_terms(&self, m: BasisRef, slot: Slot, v: &[(usize, Rational)]) -> Terms {
        let mut acc = BTreeMap::new();
        for (i, c) in v {
            let terms = self.act_right(m, BasisRef::new(slot, *i));
            add_terms(&mut acc, &terms, c);
        }
        collect_terms(acc)
    }

    fn act_left_terms(&self, a: BasisRef, slot: Slot, v: &[(usize, Rational)]) -> Terms {
        let mut acc = BTreeMap::new();
        for (i, c) in v {
            let terms = self.act_left(a, BasisRef::new(slot, *i));
            add_terms(&mut acc, &terms, c);
        }
        collect_terms(acc)
    }

    fn act_left_alg_terms(&self, slot: Slot, v: &[(usize, Rational)], m: BasisRef) -> Terms {
        let mut acc = BTreeMap::new();
        for (i, c) in v {
            let terms = self.act_left(BasisRef::new(slot, *i), m);
            add_terms(&mut acc, &terms, c);
        }
        collect_terms(acc)
    }
}

/// The multiplication action of an algebra on itself, keyed for the given
/// side: `(m, a)` for right actions, `(a, m)` for left actions.
pub(crate) fn regular_action(algebra: &Arc<WgAlgebra>, side: Side) -> PairMap {
    let mut action = PairMap::new();
    let basis = algebra_basis(algebra.carrier());
    for &m in &basis {
        for &a in &algebra.augmentation_ideal() {
            if (m.slot.weight + a.slot.weight).abs() > algebra.max_weight() {
                continue;
            }
            let (key, terms) = match side {
                Side::Right => ((m, a), algebra.mul_basis(m, a)),
                Side::Left => ((a, m), algebra.mul_basis(a, m)),
            };
            action.set(key.0, key.1, terms);
        }
    }
    action
}

pub(crate) fn algebra_basis(carrier: &ChainComplex) -> Vec<BasisRef> {
    carrier
        .space()
        .slots()
        .flat_map(|(slot, labels)| (0..labels.len()).map(move |i| BasisRef::new(slot, i)))
        .collect()
}

// ---------------------------------------------------------------------------
// generic simplicial totalization
// ---------------------------------------------------------------------------

/// A levelwise description of a simplicial chain complex: per level a basis
/// with internal slots, an internal differential, and alternating faces.
pub(crate) struct Totalizer {
    /// `levels[s]` = basis of level `s`: (internal slot, label).
    pub levels: Vec<Vec<(Slot, String)>>,
    /// `internal[s][j]` = internal differential of element `j` of level `s`.
    pub internal: Vec<Vec<Terms>>,
    /// `faces[s][i][j]` = face `d_i` of element `j`, a vector in level `s-1`.
    pub faces: Vec<Vec<Vec<Terms>>>,
}

impl Totalizer {
    /// Total complex: level-`s` elements of internal degree `d` land in
    /// homological degree `d + s`; the differential is
    /// `sum_i (-1)^i d_i + (-1)^s d_internal`.
    pub fn total_complex(self) -> Result<ChainComplex, Error> {
        let mut space = BigradedSpace::new();
        let mut position: Vec<Vec<(Slot, usize)>> = Vec::with_capacity(self.levels.len());
        for (s, level) in self.levels.iter().enumerate() {
            let mut here = Vec::with_capacity(level.len());
            for (slot, label) in level {
                let total = slot.shifted(s as i64);
                let idx = space.push_label(total, label.clone());
                here.push((total, idx));
            }
            position.push(here);
        }
        let mut diff: BTreeMap<Slot, SparseMatrix> = BTreeMap::new();
        for (s, level) in self.levels.iter().enumerate() {
            let internal_sign = sign_pow(s as i64);
            for (j, _) in level.iter().enumerate() {
                let (total, col) = position[s][j];
                let below = total.below();
                let mut column: BTreeMap<usize, Rational> = BTreeMap::new();
                for (j2, coeff) in &self.internal[s][j] {
                    let (t2, idx2) = position[s][*j2];
                    debug_assert_eq!(t2, below, "internal differential slot mismatch");
                    let entry = column.entry(idx2).or_insert_with(Rational::zero);
                    *entry += &internal_sign * coeff;
                }
                for (i, face) in self.faces[s].iter().enumerate() {
                    let face_sign = sign_pow(i as i64);
                    for (j2, coeff) in &face[j] {
                        let (t2, idx2) = position[s - 1][*j2];
                        debug_assert_eq!(t2, below, "face map slot mismatch");
                        let entry = column.entry(idx2).or_insert_with(Rational::zero);
                        *entry += &face_sign * coeff;
                    }
                }
                let column = collect_terms(column);
                if column.is_empty() {
                    continue;
                }
                let rows = space.dim(below);
                let matrix = diff
                    .entry(total)
                    .or_insert_with(|| SparseMatrix::zero(rows, space.dim(total)));
                crate::complexes::column_from_terms(matrix, col, &column);
            }
        }
        ChainComplex::new(space, diff)
    }
}

// ---------------------------------------------------------------------------
// two-sided bar construction
// ---------------------------------------------------------------------------

/// Internal handle on a module-like value for the bar builder: a carrier and
/// an action map in the orientation the side dictates.
pub(crate) struct BarSide<'a> {
    pub carrier: &'a ChainComplex,
    pub action: &'a PairMap,
}

pub(crate) struct BarIndex {
    /// `(level, factor tuple)` to position in the total complex.
    pub of_tuple: BTreeMap<(usize, Vec<BasisRef>), BasisRef>,
}

fn checked_signed_weights(a: &WgAlgebra) -> Result<i64, Error> {
    let mut sign = 0i64;
    for slot in a.carrier().space().slot_keys() {
        if slot == Slot::new(0, 0) {
            continue;
        }
        if slot.weight == 0 {
            return Err(Error::UnboundedWeight {
                detail: format!(
                    "augmentation ideal of {:?} has a weight-0 component",
                    a.name()
                ),
            });
        }
        let s = slot.weight.signum();
        if sign == 0 {
            sign = s;
        } else if sign != s {
            return Err(Error::UnboundedWeight {
                detail: format!("algebra {:?} has weights of both signs", a.name()),
            });
        }
    }
    Ok(if sign == 0 { 1 } else { sign })
}

fn check_side_weights(name: &str, carrier: &ChainComplex, sign: i64) -> Result<(), Error> {
    for slot in carrier.space().slot_keys() {
        if slot.weight != 0 && slot.weight.signum() != sign {
            return Err(Error::UnboundedWeight {
                detail: format!(
                    "module {name:?} carries weights opposite to the algebra; the bar complex would not truncate"
                ),
            });
        }
    }
    Ok(())
}

/// Builds the normalized two-sided bar total complex together with its
/// tuple index.  Tuples are `[r, a_1, ..., a_s, l]` with all `a_i` in the
/// augmentation ideal.
pub(crate) fn bar_complex_indexed(
    algebra: &WgAlgebra,
    right_module: BarSide<'_>,
    left_module: BarSide<'_>,
    max_weight: i64,
) -> Result<(ChainComplex, BarIndex), Error> {
    let sign = checked_signed_weights(algebra)?;
    check_side_weights("right", right_module.carrier, sign)?;
    check_side_weights("left", left_module.carrier, sign)?;
    let r_basis = algebra_basis(right_module.carrier);
    let l_basis = algebra_basis(left_module.carrier);
    let ideal = algebra.augmentation_ideal();

    // enumerate levels until a level is empty
    let mut levels: Vec<Vec<Vec<BasisRef>>> = Vec::new();
    let budget = |tuple: &[BasisRef]| -> i64 {
        tuple.iter().map(|r| r.slot.weight.abs()).sum()
    };
    let mut s = 0usize;
    loop {
        let mut level: Vec<Vec<BasisRef>> = Vec::new();
        let mut middles: Vec<Vec<BasisRef>> = vec![Vec::new()];
        for _ in 0..s {
            let mut next = Vec::new();
            for word in &middles {
                let used: i64 = budget(word);
                for &a in &ideal {
                    if used + a.slot.weight.abs() <= max_weight {
                        let mut w = word.clone();
                        w.push(a);
                        next.push(w);
                    }
                }
            }
            middles = next;
        }
        for &r in &r_basis {
            for word in &middles {
                let used = r.slot.weight.abs() + budget(word);
                if used > max_weight {
                    continue;
                }
                for &l in &l_basis {
                    if used + l.slot.weight.abs() > max_weight {
                        continue;
                    }
                    let mut tuple = Vec::with_capacity(word.len() + 2);
                    tuple.push(r);
                    tuple.extend_from_slice(word);
                    tuple.push(l);
                    level.push(tuple);
                }
            }
        }
        if level.is_empty() {
            break;
        }
        // simplicial level s only reaches total weight at least s in
        // absolute value; this is the exact-truncation guarantee
        for tuple in &level {
            debug_assert!(budget(tuple) >= s as i64);
        }
        level.sort();
        levels.push(level);
        s += 1;
    }

    let tuple_slot = |tuple: &[BasisRef]| -> Slot {
        tuple
            .iter()
            .fold(Slot::new(0, 0), |acc, r| acc.add(r.slot))
    };
    let label_of = |tuple: &[BasisRef]| -> String {
        let r = &right_module.carrier.space().labels(tuple[0].slot)[tuple[0].index];
        let l_ref = tuple[tuple.len() - 1];
        let l = &left_module.carrier.space().labels(l_ref.slot)[l_ref.index];
        let middle: Vec<&str> = tuple[1..tuple.len() - 1]
            .iter()
            .map(|a| algebra.label(*a))
            .collect();
        format!("{r}[{}]{l}", middle.join("|"))
    };

    let mut index_per_level: Vec<HashMap<Vec<BasisRef>, usize>> = Vec::new();
    for level in &levels {
        index_per_level.push(
            level
                .iter()
                .enumerate()
                .map(|(i, t)| (t.clone(), i))
                .collect(),
        );
    }

    let mut totalizer = Totalizer {
        levels: Vec::new(),
        internal: Vec::new(),
        faces: Vec::new(),
    };
    for (s, level) in levels.iter().enumerate() {
        let basis: Vec<(Slot, String)> = level
            .iter()
            .map(|t| (tuple_slot(t), label_of(t)))
            .collect();
        // internal differential with Koszul prefix signs
        let mut internal: Vec<Terms> = Vec::with_capacity(level.len());
        for tuple in level {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            let mut prefix = 0i64;
            for (t, factor) in tuple.iter().enumerate() {
                let carrier = if t == 0 {
                    right_module.carrier
                } else if t == tuple.len() - 1 {
                    left_module.carrier
                } else {
                    algebra.carrier()
                };
                let d = apply_differential(carrier, factor.slot, &[(factor.index, int(1))]);
                if !d.is_empty() {
                    let sign = sign_pow(prefix);
                    for (i2, c) in &d {
                        let mut target = tuple.clone();
                        target[t] = BasisRef::new(factor.slot.below(), *i2);
                        let idx = index_per_level[s][&target];
                        let entry = acc.entry(idx).or_insert_with(Rational::zero);
                        *entry += &sign * c;
                    }
                }
                prefix += factor.slot.degree;
            }
            internal.push(collect_terms(acc));
        }
        // faces
        let mut faces: Vec<Vec<Terms>> = Vec::new();
        if s > 0 {
            for i in 0..=s {
                let mut face: Vec<Terms> = Vec::with_capacity(level.len());
                for tuple in level {
                    let merged: Vec<(Vec<BasisRef>, Rational)> = merge_face(
                        algebra,
                        &right_module,
                        &left_module,
                        tuple,
                        i,
                    );
                    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                    for (target, coeff) in merged {
                        let idx = index_per_level[s - 1][&target];
                        let entry = acc.entry(idx).or_insert_with(Rational::zero);
                        *entry += coeff;
                    }
                    face.push(collect_terms(acc));
                }
                faces.push(face);
            }
        }
        totalizer.levels.push(basis);
        totalizer.internal.push(internal);
        totalizer.faces.push(faces);
    }

    let mut of_tuple = BTreeMap::new();
    let complex = totalizer.total_complex()?;
    // recover positions: elements were pushed level by level in order
    {
        let mut cursor: BTreeMap<Slot, usize> = BTreeMap::new();
        for (s, level) in levels.iter().enumerate() {
            for tuple in level {
                let total = tuple_slot(tuple).shifted(s as i64);
                let idx = cursor.entry(total).or_insert(0);
                of_tuple.insert((s, tuple.clone()), BasisRef::new(total, *idx));
                *idx += 1;
            }
        }
    }
    Ok((complex, BarIndex { of_tuple }))
}

/// Face `d_i` of a bar tuple: merge at the module ends or multiply two
/// adjacent bar factors.  All faces are degree-0 chain maps, so no Koszul
/// signs appear here.
fn merge_face(
    algebra: &WgAlgebra,
    right_module: &BarSide<'_>,
    left_module: &BarSide<'_>,
    tuple: &[BasisRef],
    i: usize,
) -> Vec<(Vec<BasisRef>, Rational)> {
    let s = tuple.len() - 2;
    let mut out = Vec::new();
    if i == 0 {
        // r . a_1
        let terms = right_module.action.get(tuple[0], tuple[1]);
        let slot = tuple[0].slot.add(tuple[1].slot);
        for (idx, c) in terms {
            let mut target = Vec::with_capacity(tuple.len() - 1);
            target.push(BasisRef::new(slot, *idx));
            target.extend_from_slice(&tuple[2..]);
            out.push((target, c.clone()));
        }
    } else if i == s {
        // a_s . l
        let terms = left_module.action.get(tuple[s], tuple[s + 1]);
        let slot = tuple[s].slot.add(tuple[s + 1].slot);
        for (idx, c) in terms {
            let mut target: Vec<BasisRef> = tuple[..s].to_vec();
            target.push(BasisRef::new(slot, *idx));
            out.push((target, c.clone()));
        }
    } else {
        // a_i a_{i+1}
        let terms = algebra.mul_basis(tuple[i], tuple[i + 1]);
        let slot = tuple[i].slot.add(tuple[i + 1].slot);
        for (idx, c) in &terms {
            let mut target: Vec<BasisRef> = tuple[..i].to_vec();
            target.push(BasisRef::new(slot, *idx));
            target.extend_from_slice(&tuple[i + 2..]);
            out.push((target, c.clone()));
        }
    }
    out
}

/// The two-sided bar construction `B(R, A, L)`: total complex of
/// `R (x) Abar^{(x) s} (x) L` with the alternating multiplication faces.
pub fn two_sided_bar(
    r: &WgModule,
    a: &Arc<WgAlgebra>,
    l: &WgModule,
    max_weight: i64,
) -> Result<ChainComplex, Error> {
    if r.side() != Side::Right {
        return Err(Error::RoleMismatch {
            detail: format!("module {:?} is not a right module", r.name()),
        });
    }
    if l.side() != Side::Left {
        return Err(Error::RoleMismatch {
            detail: format!("module {:?} is not a left module", l.name()),
        });
    }
    if !Arc::ptr_eq(r.algebra(), a) || !Arc::ptr_eq(l.algebra(), a) {
        return Err(Error::RoleMismatch {
            detail: "bar modules must act over the given algebra".into(),
        });
    }
    let (complex, _) = bar_complex_indexed(
        a,
        BarSide {
            carrier: r.carrier(),
            action: r.action_map(),
        },
        BarSide {
            carrier: l.carrier(),
            action: l.action_map(),
        },
        max_weight,
    )?;
    Ok(complex)
}

/// The bar complex `B(A) = B(Q, A, Q)`.
pub fn bar(a: &Arc<WgAlgebra>, max_weight: i64) -> Result<ChainComplex, Error> {
    let r = WgModule::trivial(a, Side::Right);
    let l = WgModule::trivial(a, Side::Left);
    two_sided_bar(&r, a, &l, max_weight)
}

/// Homology of the two-sided bar construction: the derived relative tensor
/// product of the modules over the algebra.
pub fn relative_tensor(
    r: &WgModule,
    a: &Arc<WgAlgebra>,
    l: &WgModule,
    max_weight: i64,
) -> Result<BettiTable, Error> {
    two_sided_bar(r, a, l, max_weight)?.homology_all()
}

// ---------------------------------------------------------------------------
// cyclic bar (Hochschild) complex
// ---------------------------------------------------------------------------

/// The reduced cyclic bar complex `(+)_s A (x) Abar^{(x) s}` with the
/// Hochschild differential; the wrap-around face rotates the last factor to
/// the front with the Koszul braiding sign before multiplying.
pub fn cyclic_bar(a: &Arc<WgAlgebra>, max_weight: i64) -> Result<ChainComplex, Error> {
    checked_signed_weights(a)?;
    let full = algebra_basis(a.carrier());
    let ideal = a.augmentation_ideal();

    let mut levels: Vec<Vec<Vec<BasisRef>>> = Vec::new();
    let budget = |tuple: &[BasisRef]| -> i64 { tuple.iter().map(|r| r.slot.weight.abs()).sum() };
    let mut s = 0usize;
    loop {
        let mut level: Vec<Vec<BasisRef>> = Vec::new();
        let mut words: Vec<Vec<BasisRef>> = vec![Vec::new()];
        for _ in 0..s {
            let mut next = Vec::new();
            for word in &words {
                let used = budget(word);
                for &x in &ideal {
                    if used + x.slot.weight.abs() <= max_weight {
                        let mut w = word.clone();
                        w.push(x);
                        next.push(w);
                    }
                }
            }
            words = next;
        }
        for &a0 in &full {
            for word in &words {
                if a0.slot.weight.abs() + budget(word) > max_weight {
                    continue;
                }
                let mut tuple = Vec::with_capacity(word.len() + 1);
                tuple.push(a0);
                tuple.extend_from_slice(word);
                level.push(tuple);
            }
        }
        if level.is_empty() {
            break;
        }
        level.sort();
        levels.push(level);
        s += 1;
    }

    let tuple_slot =
        |tuple: &[BasisRef]| -> Slot { tuple.iter().fold(Slot::new(0, 0), |acc, r| acc.add(r.slot)) };
    let mut index_per_level: Vec<HashMap<Vec<BasisRef>, usize>> = Vec::new();
    for level in &levels {
        index_per_level.push(level.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect());
    }

    let mut totalizer = Totalizer {
        levels: Vec::new(),
        internal: Vec::new(),
        faces: Vec::new(),
    };
    for (s, level) in levels.iter().enumerate() {
        let basis: Vec<(Slot, String)> = level
            .iter()
            .map(|t| {
                let middle: Vec<&str> = t[1..].iter().map(|x| a.label(*x)).collect();
                (
                    tuple_slot(t),
                    format!("({})[{}]", a.label(t[0]), middle.join("|")),
                )
            })
            .collect();
        let mut internal: Vec<Terms> = Vec::with_capacity(level.len());
        for tuple in level {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            let mut prefix = 0i64;
            for (t, factor) in tuple.iter().enumerate() {
                let d = apply_differential(a.carrier(), factor.slot, &[(factor.index, int(1))]);
                if !d.is_empty() {
                    let sign = sign_pow(prefix);
                    for (i2, c) in &d {
                        let mut target = tuple.clone();
                        target[t] = BasisRef::new(factor.slot.below(), *i2);
                        let idx = index_per_level[s][&target];
                        let entry = acc.entry(idx).or_insert_with(Rational::zero);
                        *entry += &sign * c;
                    }
                }
                prefix += factor.slot.degree;
            }
            internal.push(collect_terms(acc));
        }
        let mut faces: Vec<Vec<Terms>> = Vec::new();
        if s > 0 {
            for i in 0..=s {
                let mut face: Vec<Terms> = Vec::with_capacity(level.len());
                for tuple in level {
                    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                    if i < s {
                        // multiply factors i and i+1 (i = 0 acts on a_0)
                        let terms = a.mul_basis(tuple[i], tuple[i + 1]);
                        let slot = tuple[i].slot.add(tuple[i + 1].slot);
                        for (idx, c) in &terms {
                            let mut target: Vec<BasisRef> = tuple[..i].to_vec();
                            target.push(BasisRef::new(slot, *idx));
                            target.extend_from_slice(&tuple[i + 2..]);
                            let pos = index_per_level[s - 1][&target];
                            let entry = acc.entry(pos).or_insert_with(Rational::zero);
                            *entry += c;
                        }
                    } else {
                        // wrap-around: rotate a_s to the front, then multiply
                        let last = tuple[s];
                        let rest_degree: i64 =
                            tuple[..s].iter().map(|r| r.slot.degree).sum();
                        let braiding = koszul_sign(last.slot.degree, rest_degree);
                        let terms = a.mul_basis(last, tuple[0]);
                        let slot = last.slot.add(tuple[0].slot);
                        for (idx, c) in &terms {
                            let mut target = Vec::with_capacity(s);
                            target.push(BasisRef::new(slot, *idx));
                            target.extend_from_slice(&tuple[1..s]);
                            let pos = index_per_level[s - 1][&target];
                            let entry = acc.entry(pos).or_insert_with(Rational::zero);
                            *entry += &braiding * c;
                        }
                    }
                    face.push(collect_terms(acc));
                }
                faces.push(face);
            }
        }
        totalizer.levels.push(basis);
        totalizer.internal.push(internal);
        totalizer.faces.push(faces);
    }
    totalizer.total_complex()
}

/// The outer bimodule structures exhibiting `A` as a right and a left
/// module over `A (x) A^op`, with the Koszul signs on the right factor.
pub fn hochschild_bimodule(
    a: &Arc<WgAlgebra>,
) -> Result<(Arc<WgAlgebra>, WgModule, WgModule), Error> {
    let op = crate::algebra::opposite(a)?;
    let (enveloping, index) = crate::algebra::algebra_tensor_indexed(a, &op)?;
    let mut decompose: BTreeMap<BasisRef, (BasisRef, BasisRef)> = BTreeMap::new();
    for ((p, q), t) in &index {
        decompose.insert(*t, (*p, *q));
    }
    let basis = algebra_basis(a.carrier());
    let mut right_action = PairMap::new();
    let mut left_action = PairMap::new();
    for &t in &enveloping.augmentation_ideal() {
        let (p, q) = decompose[&t];
        for &m in &basis {
            if (m.slot.weight + t.slot.weight).abs() > enveloping.max_weight() {
                continue;
            }
            // right: m.(p (x) q) = (-1)^{|q| (|m| + |p|)} q m p
            let qm = a.mul_basis(q, m);
            let qmp = a.mul_terms(q.slot.add(m.slot), &qm, p.slot, &[(p.index, int(1))]);
            let right_sign = koszul_sign(q.slot.degree, m.slot.degree + p.slot.degree);
            let right_terms: Terms = qmp.iter().map(|(i, c)| (*i, &right_sign * c)).collect();
            right_action.set(m, t, right_terms);
            // left: (p (x) q).m = (-1)^{|q||m|} p m q
            let pm = a.mul_basis(p, m);
            let pmq = a.mul_terms(p.slot.add(m.slot), &pm, q.slot, &[(q.index, int(1))]);
            let left_sign = koszul_sign(q.slot.degree, m.slot.degree);
            let left_terms: Terms = pmq.iter().map(|(i, c)| (*i, &left_sign * c)).collect();
            left_action.set(t, m, left_terms);
        }
    }
    let right = WgModule::new(
        format!("{}-outer-right", a.name()),
        Arc::clone(&enveloping),
        Side::Right,
        a.carrier().clone(),
        right_action,
        Validation::Strided(20_000),
    )?;
    let left = WgModule::new(
        format!("{}-outer-left", a.name()),
        Arc::clone(&enveloping),
        Side::Left,
        a.carrier().clone(),
        left_action,
        Validation::Strided(20_000),
    )?;
    Ok((enveloping, right, left))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{sym_algebra, tensor_algebra, GradedSpacePresentation};
    use crate::complexes::BettiTable;

    fn gens(list: &[(&'static str, i64, i64)]) -> GradedSpacePresentation {
        GradedSpacePresentation::from_generators(list.iter().copied())
    }

    #[test]
    fn bar_of_unit_algebra() {
        let q = sym_algebra(&gens(&[]), 3).unwrap();
        let b = bar(&q, 3).unwrap();
        assert_eq!(b.homology_all().unwrap(), BettiTable::unit());
    }

    #[test]
    fn bar_of_tensor_algebra_is_unit_plus_suspension() {
        // B T(V) has homology Q (+) V[1]
        let a = tensor_algebra(&gens(&[("x", 0, 1), ("y", 0, 1)]), 4).unwrap();
        let h = bar(&a, 4).unwrap().homology_all().unwrap();
        let expected = BettiTable::from_entries([
            (Slot::new(0, 0), 1),
            (Slot::new(1, 1), 2),
        ]);
        assert_eq!(h, expected);
    }

    #[test]
    fn bar_of_sym_is_exterior() {
        // B Sym(x) for even x has homology the exterior algebra on x[1]:
        // Q plus one class at (1, 1), nothing in weights >= 2
        let a = sym_algebra(&gens(&[("x", 0, 1)]), 4).unwrap();
        let h = bar(&a, 4).unwrap().homology_all().unwrap();
        let expected = BettiTable::from_entries([(Slot::new(0, 0), 1), (Slot::new(1, 1), 1)]);
        assert_eq!(h, expected);
    }

    #[test]
    fn bar_of_sym_odd_is_divided_powers() {
        // B Sym(xi) for odd xi has homology Sym(xi[1]) with xi[1] even:
        // one class in every weight w at degree 2w
        let a = sym_algebra(&gens(&[("xi", 1, 1)]), 4).unwrap();
        let h = bar(&a, 4).unwrap().homology_all().unwrap();
        let mut expected = BettiTable::unit();
        for w in 1..=4 {
            expected.set(Slot::new(w, 2 * w), 1);
        }
        assert_eq!(h, expected);
    }

    #[test]
    fn two_sided_bar_with_free_modules_is_contractible_onto_a() {
        // B(A, A, A) ~ A by the extra degeneracy
        let a = tensor_algebra(&gens(&[("x", 0, 1), ("y", 0, 1)]), 3).unwrap();
        let r = WgModule::regular(&a, Side::Right);
        let l = WgModule::regular(&a, Side::Left);
        let h = relative_tensor(&r, &a, &l, 3).unwrap();
        assert_eq!(h, a.carrier().space().dim_table());
    }

    #[test]
    fn relative_tensor_free_module_collapses() {
        // B(Q, T(V), T(V)) ~ Q
        let a = tensor_algebra(&gens(&[("x", 0, 1)]), 3).unwrap();
        let r = WgModule::trivial(&a, Side::Right);
        let l = WgModule::regular(&a, Side::Left);
        let h = relative_tensor(&r, &a, &l, 3).unwrap();
        assert_eq!(h, BettiTable::unit());
    }

    #[test]
    fn cyclic_bar_of_unit() {
        let q = sym_algebra(&gens(&[]), 3).unwrap();
        let h = cyclic_bar(&q, 3).unwrap().homology_all().unwrap();
        assert_eq!(h, BettiTable::unit());
    }

    #[test]
    fn cyclic_bar_polynomial_hkr() {
        // HH(Q[x]) = Q[x] (+) Q[x] dx: every weight w >= 1 carries one class
        // in degree 0 and one in degree 1
        let a = sym_algebra(&gens(&[("x", 0, 1)]), 4).unwrap();
        let h = cyclic_bar(&a, 4).unwrap().homology_all().unwrap();
        let mut expected = BettiTable::unit();
        for w in 1..=4 {
            expected.set(Slot::new(w, 0), 1);
            expected.set(Slot::new(w, 1), 1);
        }
        assert_eq!(h, expected);
    }

    #[test]
    fn cyclic_bar_exterior_hkr() {
        // HH(Lambda(xi)) = Lambda(xi) (x) divided powers on s xi at (1, 2):
        // weight w carries classes in degrees 2w and 2w - 1
        let a = sym_algebra(&gens(&[("xi", 1, 1)]), 3).unwrap();
        let h = cyclic_bar(&a, 3).unwrap().homology_all().unwrap();
        let mut expected = BettiTable::unit();
        for w in 1..=3 {
            expected.set(Slot::new(w, 2 * w), 1);
            expected.set(Slot::new(w, 2 * w - 1), 1);
        }
        assert_eq!(h, expected);
    }

    #[test]
    fn cyclic_bar_tensor_algebra_cyclic_invariants() {
        // HH of T(V) for dim V = 2 at weight 2: three cyclic coinvariants in
        // degree 0 and three cyclic invariants in degree 1, nothing higher
        let a = tensor_algebra(&gens(&[("x", 0, 1), ("y", 0, 1)]), 2).unwrap();
        let h = cyclic_bar(&a, 2).unwrap().homology_all().unwrap();
        assert_eq!(h.get(Slot::new(2, 0)), 3);
        assert_eq!(h.get(Slot::new(2, 1)), 3);
        assert_eq!(
            h.iter().filter(|(s, _)| s.weight == 2 && s.degree > 1).count(),
            0
        );
    }

    #[test]
    fn circle_as_bimodule_bar_matches_cyclic_bar() {
        let a = sym_algebra(&gens(&[("x", 0, 1)]), 3).unwrap();
        let (env, right, left) = hochschild_bimodule(&a).unwrap();
        let via_bimodule = relative_tensor(&right, &env, &left, 3).unwrap();
        let via_cyclic = cyclic_bar(&a, 3).unwrap().homology_all().unwrap();
        assert_eq!(via_bimodule, via_cyclic);
    }

    #[test]
    fn bar_vanishing_bound_by_weight() {
        // the weight-w part of the bar complex lives in simplicial levels
        // s <= w: the top total degree at weight w is bounded by 2w for a
        // degree-0 algebra
        let a = tensor_algebra(&gens(&[("x", 0, 1)]), 3).unwrap();
        let b = bar(&a, 3).unwrap();
        for (slot, _) in b.space().slots() {
            assert!(slot.degree <= slot.weight, "level beyond the weight bound");
        }
    }

    #[test]
    fn role_mismatch_is_reported() {
        let a = tensor_algebra(&gens(&[("x", 0, 1)]), 2).unwrap();
        let r = WgModule::regular(&a, Side::Right);
        let l = WgModule::regular(&a, Side::Left);
        let other = tensor_algebra(&gens(&[("y", 0, 1)]), 2).unwrap();
        match two_sided_bar(&r, &other, &l, 2) {
            Err(Error::RoleMismatch { .. }) => {}
            other => panic!("expected RoleMismatch, got {other:?}"),
        }
    }
}
