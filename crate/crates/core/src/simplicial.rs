//! Finite simplicial sets and the tensor of a commutative algebra with a
//! space, computed as the normalized total complex of the levelwise tensor
//! powers `k -> A^{(x) X_k}`.
//!
//! Normalization works on the monomial basis: a basis tensor is degenerate
//! exactly when its support lies inside the image of a single degeneracy, so
//! the normalized complex is spanned by monomials whose support meets the
//! complement of every degeneracy image.  With strictly signed weights a
//! weight-`w` monomial has at most `|w|` support points, which bounds the
//! levels that can carry normalized content.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{collect_terms, BasisRef, Terms, WgAlgebra};
use crate::bar::Totalizer;
use crate::complexes::{ChainComplex, Slot};
use crate::error::Error;
use crate::scalar::{int, is_odd, sign_pow, Rational};

/// A simplicial set with finitely many simplices per level, stored up to a
/// level cap, with explicit face and degeneracy maps.
#[derive(Clone, Debug)]
pub struct FiniteSimplicialSet {
    name: String,
    /// `levels[k]` = labels of the `k`-simplices.
    levels: Vec<Vec<String>>,
    /// `faces[k][i][x]` = index of `d_i(x)` in level `k-1` (`k >= 1`, `i <= k`).
    faces: Vec<Vec<Vec<usize>>>,
    /// `degeneracies[k][j][x]` = index of `s_j(x)` in level `k+1` (`j <= k`).
    degeneracies: Vec<Vec<Vec<usize>>>,
}

impl FiniteSimplicialSet {
    pub fn new(
        name: impl Into<String>,
        levels: Vec<Vec<String>>,
        faces: Vec<Vec<Vec<usize>>>,
        degeneracies: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self, Error> {
        let x = FiniteSimplicialSet {
            name: name.into(),
            levels,
            faces,
            degeneracies,
        };
        x.validate()?;
        Ok(x)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of stored levels (the level cap is `level_count() - 1`).
    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    pub fn simplices(&self, level: usize) -> &[String] {
        &self.levels[level]
    }

    pub fn face(&self, level: usize, i: usize, simplex: usize) -> usize {
        self.faces[level][i][simplex]
    }

    pub fn degeneracy(&self, level: usize, j: usize, simplex: usize) -> usize {
        self.degeneracies[level][j][simplex]
    }

    /// Simplicial identities, checked exhaustively on all stored levels.
    fn validate(&self) -> Result<(), Error> {
        let cap = self.levels.len();
        if cap == 0 {
            return Err(Error::input("simplicial set needs at least level 0"));
        }
        let fail = |detail: String| Err(Error::validation(detail));
        // shape checks
        if self.faces.len() != cap || self.degeneracies.len() + 1 < cap {
            return fail(format!(
                "simplicial set {:?}: face/degeneracy tables have wrong length",
                self.name
            ));
        }
        for k in 1..cap {
            if self.faces[k].len() != k + 1 {
                return fail(format!("level {k} must have {} face maps", k + 1));
            }
            for (i, face) in self.faces[k].iter().enumerate() {
                if face.len() != self.levels[k].len() {
                    return fail(format!("face d_{i} at level {k} has wrong domain"));
                }
                if let Some(&bad) = face.iter().find(|&&t| t >= self.levels[k - 1].len()) {
                    return fail(format!("face d_{i} at level {k} hits missing simplex {bad}"));
                }
            }
        }
        for k in 0..cap - 1 {
            if self.degeneracies[k].len() != k + 1 {
                return fail(format!("level {k} must have {} degeneracies", k + 1));
            }
            for (j, s) in self.degeneracies[k].iter().enumerate() {
                if s.len() != self.levels[k].len() {
                    return fail(format!("degeneracy s_{j} at level {k} has wrong domain"));
                }
                if let Some(&bad) = s.iter().find(|&&t| t >= self.levels[k + 1].len()) {
                    return fail(format!(
                        "degeneracy s_{j} at level {k} hits missing simplex {bad}"
                    ));
                }
            }
        }
        // d_i d_j = d_{j-1} d_i for i < j
        for k in 2..cap {
            for j in 0..=k {
                for i in 0..j {
                    for x in 0..self.levels[k].len() {
                        let a = self.face(k - 1, i, self.face(k, j, x));
                        let b = self.face(k - 1, j - 1, self.face(k, i, x));
                        if a != b {
                            return fail(format!(
                                "simplicial identity d_{i} d_{j} fails at level {k}, simplex {x}"
                            ));
                        }
                    }
                }
            }
        }
        // face/degeneracy relations
        for k in 0..cap - 1 {
            for j in 0..=k {
                for i in 0..=k + 1 {
                    for x in 0..self.levels[k].len() {
                        let sx = self.degeneracy(k, j, x);
                        let got = self.face(k + 1, i, sx);
                        if i == j || i == j + 1 {
                            if got != x {
                                return fail(format!(
                                    "d_{i} s_{j} must be the identity at level {k}"
                                ));
                            }
                        } else if i < j {
                            if k == 0 {
                                continue;
                            }
                            let expected = self.degeneracy(k - 1, j - 1, self.face(k, i, x));
                            if got != expected {
                                return fail(format!("d_{i} s_{j} relation fails at level {k}"));
                            }
                        } else {
                            // i > j + 1
                            let expected = self.degeneracy(k - 1, j, self.face(k, i - 1, x));
                            if got != expected {
                                return fail(format!("d_{i} s_{j} relation fails at level {k}"));
                            }
                        }
                    }
                }
            }
        }
        // s_i s_j = s_{j+1} s_i for i <= j
        for k in 0..cap.saturating_sub(2) {
            for j in 0..=k {
                for i in 0..=j {
                    for x in 0..self.levels[k].len() {
                        let a = self.degeneracy(k + 1, i, self.degeneracy(k, j, x));
                        let b = self.degeneracy(k + 1, j + 1, self.degeneracy(k, i, x));
                        if a != b {
                            return fail(format!(
                                "simplicial identity s_{i} s_{j} fails at level {k}"
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Levels that carry at least one nondegenerate simplex; the maximum is
    /// the dimension bound used for level caps.
    pub fn max_nondegenerate_level(&self) -> usize {
        let mut max = 0;
        for k in 1..self.levels.len() {
            let mut degenerate = vec![false; self.levels[k].len()];
            for s in &self.degeneracies[k - 1] {
                for &t in s {
                    degenerate[t] = true;
                }
            }
            if degenerate.iter().any(|d| !d) {
                max = k;
            }
        }
        max
    }

    /// Levelwise product of simplicial sets (diagonal faces/degeneracies).
    pub fn product(name: impl Into<String>, a: &Self, b: &Self) -> Result<Self, Error> {
        let cap = a.levels.len().min(b.levels.len());
        let index = |k: usize, xa: usize, xb: usize| xa * b.levels[k].len() + xb;
        let mut levels = Vec::with_capacity(cap);
        for k in 0..cap {
            let mut level = Vec::new();
            for la in &a.levels[k] {
                for lb in &b.levels[k] {
                    level.push(format!("({la},{lb})"));
                }
            }
            levels.push(level);
        }
        let mut faces = vec![Vec::new()];
        for k in 1..cap {
            let mut per_i = Vec::with_capacity(k + 1);
            for i in 0..=k {
                let mut map = Vec::with_capacity(levels[k].len());
                for xa in 0..a.levels[k].len() {
                    for xb in 0..b.levels[k].len() {
                        map.push(index(k - 1, a.face(k, i, xa), b.face(k, i, xb)));
                    }
                }
                per_i.push(map);
            }
            faces.push(per_i);
        }
        let mut degeneracies = Vec::new();
        for k in 0..cap.saturating_sub(1) {
            let mut per_j = Vec::with_capacity(k + 1);
            for j in 0..=k {
                let mut map = Vec::with_capacity(levels[k].len());
                for xa in 0..a.levels[k].len() {
                    for xb in 0..b.levels[k].len() {
                        map.push(index(k + 1, a.degeneracy(k, j, xa), b.degeneracy(k, j, xb)));
                    }
                }
                per_j.push(map);
            }
            degeneracies.push(per_j);
        }
        FiniteSimplicialSet::new(name, levels, faces, degeneracies)
    }
}

// ---------------------------------------------------------------------------
// built-in models
// ---------------------------------------------------------------------------

/// Builds a named model with enough levels for weight windows up to
/// `max_weight`: point, interval, circle, sphere2, torus.
pub fn builtin_model(name: &str, max_weight: i64) -> Result<FiniteSimplicialSet, Error> {
    let w = max_weight.max(1) as usize;
    match name {
        "point" => Ok(point_model(w + 2)),
        "interval" => Ok(simplex_model("interval", 1, w + 2)),
        "circle" => Ok(quotient_sphere_model("circle", 1, w + 2)),
        "sphere2" => Ok(quotient_sphere_model("sphere2", 2, 2 * w + 2)),
        "torus" => {
            let c = quotient_sphere_model("circle", 1, 2 * w + 2);
            FiniteSimplicialSet::product("torus", &c, &c)
        }
        other => Err(Error::UnknownModel {
            name: other.to_string(),
        }),
    }
}

fn point_model(levels: usize) -> FiniteSimplicialSet {
    let level_labels: Vec<Vec<String>> = (0..levels).map(|_| vec!["*".to_string()]).collect();
    let mut faces = vec![Vec::new()];
    for k in 1..levels {
        faces.push(vec![vec![0]; k + 1]);
    }
    let degeneracies: Vec<Vec<Vec<usize>>> =
        (0..levels - 1).map(|k| vec![vec![0]; k + 1]).collect();
    FiniteSimplicialSet::new("point", level_labels, faces, degeneracies).unwrap()
}

/// The standard simplex of dimension `dim <= 2` as a simplicial set: level
/// `k` is the nondecreasing maps `[k] -> [dim]`, encoded by their value
/// multiplicities.
fn simplex_level(dim: usize, k: usize) -> Vec<Vec<usize>> {
    // compositions of k+1 into dim+1 nonnegative parts
    fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
        if parts == 1 {
            return vec![vec![total]];
        }
        let mut out = Vec::new();
        for first in 0..=total {
            for mut rest in compositions(total - first, parts - 1) {
                let mut c = vec![first];
                c.append(&mut rest);
                out.push(c);
            }
        }
        out
    }
    compositions(k + 1, dim + 1)
}

fn band_of(counts: &[usize], position: usize) -> usize {
    let mut cumulative = 0;
    for (band, &c) in counts.iter().enumerate() {
        cumulative += c;
        if position < cumulative {
            return band;
        }
    }
    unreachable!("position out of range")
}

fn simplex_model(name: &str, dim: usize, levels: usize) -> FiniteSimplicialSet {
    let per_level: Vec<Vec<Vec<usize>>> = (0..levels).map(|k| simplex_level(dim, k)).collect();
    let index_of: Vec<BTreeMap<Vec<usize>, usize>> = per_level
        .iter()
        .map(|lv| lv.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect())
        .collect();
    let labels: Vec<Vec<String>> = per_level
        .iter()
        .map(|lv| {
            lv.iter()
                .map(|c| {
                    c.iter()
                        .map(usize::to_string)
                        .collect::<Vec<_>>()
                        .join(".")
                })
                .collect()
        })
        .collect();
    let mut faces = vec![Vec::new()];
    for k in 1..levels {
        let mut per_i = Vec::with_capacity(k + 1);
        for i in 0..=k {
            let mut map = Vec::with_capacity(per_level[k].len());
            for counts in &per_level[k] {
                let mut c = counts.clone();
                c[band_of(counts, i)] -= 1;
                map.push(index_of[k - 1][&c]);
            }
            per_i.push(map);
        }
        faces.push(per_i);
    }
    let mut degeneracies = Vec::new();
    for k in 0..levels - 1 {
        let mut per_j = Vec::with_capacity(k + 1);
        for j in 0..=k {
            let mut map = Vec::with_capacity(per_level[k].len());
            for counts in &per_level[k] {
                let mut c = counts.clone();
                c[band_of(counts, j)] += 1;
                map.push(index_of[k + 1][&c]);
            }
            per_j.push(map);
        }
        degeneracies.push(per_j);
    }
    FiniteSimplicialSet::new(name, labels, faces, degeneracies).unwrap()
}

/// `Delta^dim / boundary`: all non-surjective simplices of the standard
/// simplex are collapsed to a basepoint.
fn quotient_sphere_model(name: &str, dim: usize, levels: usize) -> FiniteSimplicialSet {
    let raw: Vec<Vec<Vec<usize>>> = (0..levels).map(|k| simplex_level(dim, k)).collect();
    let surjective = |c: &Vec<usize>| c.iter().all(|&z| z > 0);
    // index 0 is the basepoint; surjective simplices follow in order
    let mut kept: Vec<Vec<Vec<usize>>> = Vec::with_capacity(levels);
    let mut index_of: Vec<BTreeMap<Vec<usize>, usize>> = Vec::with_capacity(levels);
    for lv in &raw {
        let here: Vec<Vec<usize>> = lv.iter().filter(|c| surjective(c)).cloned().collect();
        let map: BTreeMap<Vec<usize>, usize> = here
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i + 1))
            .collect();
        kept.push(here);
        index_of.push(map);
    }
    let labels: Vec<Vec<String>> = kept
        .iter()
        .map(|lv| {
            let mut l = vec!["*".to_string()];
            l.extend(lv.iter().map(|c| {
                c.iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(".")
            }));
            l
        })
        .collect();
    let resolve = |k: usize, c: &Vec<usize>| -> usize {
        index_of[k].get(c).copied().unwrap_or(0)
    };
    let mut faces = vec![Vec::new()];
    for k in 1..levels {
        let mut per_i = Vec::with_capacity(k + 1);
        for i in 0..=k {
            let mut map = vec![0]; // basepoint maps to basepoint
            for counts in &kept[k] {
                let mut c = counts.clone();
                c[band_of(counts, i)] -= 1;
                map.push(resolve(k - 1, &c));
            }
            per_i.push(map);
        }
        faces.push(per_i);
    }
    let mut degeneracies = Vec::new();
    for k in 0..levels - 1 {
        let mut per_j = Vec::with_capacity(k + 1);
        for j in 0..=k {
            let mut map = vec![0];
            for counts in &kept[k] {
                let mut c = counts.clone();
                c[band_of(counts, j)] += 1;
                map.push(resolve(k + 1, &c));
            }
            per_j.push(map);
        }
        degeneracies.push(per_j);
    }
    FiniteSimplicialSet::new(name, labels, faces, degeneracies).unwrap()
}

// ---------------------------------------------------------------------------
// the tensor of a space with a commutative algebra
// ---------------------------------------------------------------------------

/// A normalized basis monomial: non-unit algebra factors attached to a
/// sorted support of simplices.
type Monomial = Vec<(usize, BasisRef)>;

/// Tensor of the simplicial set with a commutative algebra: the normalized
/// total complex of `k -> A^{(x) X_k}`, truncated at `|weight| <=
/// max_weight`.  The level just past the cap must contribute nothing in the
/// window; otherwise `LevelCapTooSmall` is returned.
pub fn space_tensor(
    x: &FiniteSimplicialSet,
    a: &Arc<WgAlgebra>,
    max_weight: i64,
) -> Result<ChainComplex, Error> {
    if !a.commutative() {
        return Err(Error::input(format!(
            "space tensor requires a commutative algebra, {:?} is not flagged commutative",
            a.name()
        )));
    }
    let ideal = a.augmentation_ideal();
    if ideal.is_empty() {
        // the unit algebra: only the empty monomial at level 0 survives
    }
    let min_weight = ideal
        .iter()
        .map(|r| r.slot.weight.abs())
        .min()
        .unwrap_or(1)
        .max(1);
    let max_support = (max_weight / min_weight).max(0) as usize;

    // level cap: max nondegenerate simplex dimension times the support bound
    let dim_bound = x.max_nondegenerate_level();
    let cap = (dim_bound * max_support).max(0);
    if x.level_count() < cap + 2 {
        return Err(Error::LevelCapTooSmall {
            cap: x.level_count().saturating_sub(1),
            cap_plus_one: x.level_count(),
        });
    }
    // runtime exclusion check: the first excluded level must be empty in the
    // weight window
    let past = normalized_level_basis(x, a, &ideal, cap + 1, max_weight, max_support);
    if !past.is_empty() {
        return Err(Error::LevelCapTooSmall {
            cap,
            cap_plus_one: cap + 1,
        });
    }

    let phase = std::time::Instant::now();
    let mut levels: Vec<Vec<Monomial>> = Vec::with_capacity(cap + 1);
    for k in 0..=cap {
        levels.push(normalized_level_basis(x, a, &ideal, k, max_weight, max_support));
    }
    eprintln!("[probe] levels enumerated in {:?}", phase.elapsed());
    let phase = std::time::Instant::now();
    let index_per_level: Vec<HashMap<Monomial, usize>> = levels
        .iter()
        .map(|lv| lv.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect())
        .collect();
    // per level: bitmask of degeneracy directions each simplex misses
    let missing_masks: Vec<Vec<u64>> = (0..=cap)
        .map(|k| {
            missing_directions(x, k)
                .iter()
                .map(|dirs| dirs.iter().fold(0u64, |m, &j| m | (1 << j)))
                .collect()
        })
        .collect();
    let full_masks: Vec<u64> = (0..=cap)
        .map(|k| if k == 0 { 0 } else { (1u64 << k) - 1 })
        .collect();

    let monomial_slot = |m: &Monomial| -> Slot {
        m.iter()
            .fold(Slot::new(0, 0), |acc, (_, r)| acc.add(r.slot))
    };
    let label_of = |k: usize, m: &Monomial| -> String {
        if m.is_empty() {
            return format!("k{k}:1");
        }
        let parts: Vec<String> = m
            .iter()
            .map(|(s, r)| format!("{s}:{}", a.label(*r)))
            .collect();
        format!("k{k}:{}", parts.join("|"))
    };

    let mut totalizer = Totalizer {
        levels: Vec::new(),
        internal: Vec::new(),
        faces: Vec::new(),
    };
    for (k, level) in levels.iter().enumerate() {
        let basis: Vec<(Slot, String)> = level
            .iter()
            .map(|m| (monomial_slot(m), label_of(k, m)))
            .collect();
        // internal differential of the tensor factors, ordered by simplex
        let mut internal: Vec<Terms> = Vec::with_capacity(level.len());
        for mono in level {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            if !a.carrier().has_zero_differential() {
                let mut prefix = 0i64;
                for (t, (simplex, factor)) in mono.iter().enumerate() {
                    let d = a.d_terms(factor.slot, &[(factor.index, int(1))]);
                    let sign = sign_pow(prefix);
                    for (i2, c) in &d {
                        let mut target = mono.clone();
                        target[t] = (*simplex, BasisRef::new(factor.slot.below(), *i2));
                        if let Some(&idx) = index_per_level[k].get(&target) {
                            let entry = acc.entry(idx).or_insert_with(Rational::zero);
                            *entry += &sign * c;
                        }
                    }
                    prefix += factor.slot.degree;
                }
            }
            internal.push(collect_terms(acc));
        }
        // faces
        let mut faces: Vec<Vec<Terms>> = Vec::new();
        if k > 0 {
            for i in 0..=k {
                let mut face: Vec<Terms> = Vec::with_capacity(level.len());
                for mono in level {
                    let image = push_monomial(a, mono, |s| x.face(k, i, s));
                    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                    for (target, coeff) in image {
                        // project away degenerate monomials
                        let covered = target
                            .iter()
                            .fold(0u64, |m, (s, _)| m | missing_masks[k - 1][*s]);
                        if covered & full_masks[k - 1] != full_masks[k - 1] {
                            continue;
                        }
                        let idx = index_per_level[k - 1][&target];
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
    eprintln!("[probe] faces built in {:?}", phase.elapsed());
    let phase = std::time::Instant::now();
    let out = totalizer.total_complex();
    eprintln!("[probe] totalized (incl d^2 check) in {:?}", phase.elapsed());
    out
}

/// For each simplex of level `k`, the set of degeneracy directions whose
/// image misses it: `J(x) = { j : x not in s_j(X_{k-1}) }`.
fn missing_directions(x: &FiniteSimplicialSet, k: usize) -> Vec<BTreeSet<usize>> {
    let n = x.simplices(k).len();
    let mut missing: Vec<BTreeSet<usize>> = vec![(0..k).collect(); n];
    if k == 0 {
        return missing;
    }
    for j in 0..k {
        for s in 0..x.simplices(k - 1).len() {
            missing[x.degeneracy(k - 1, j, s)].remove(&j);
        }
    }
    missing
}

/// All normalized monomials of level `k` within the weight window.
fn normalized_level_basis(
    x: &FiniteSimplicialSet,
    a: &Arc<WgAlgebra>,
    ideal: &[BasisRef],
    k: usize,
    max_weight: i64,
    max_support: usize,
) -> Vec<Monomial> {
    assert!(k < 64, "level cap exceeds the direction bitmask width");
    let missing = missing_directions(x, k);
    let n = x.simplices(k).len();
    let full_mask: u64 = if k == 0 { 0 } else { (1u64 << k) - 1 };
    let masks: Vec<u64> = missing
        .iter()
        .map(|dirs| dirs.iter().fold(0u64, |m, &j| m | (1 << j)))
        .collect();
    // coverage still reachable from simplex index `s` onward
    let mut suffix = vec![0u64; n + 1];
    for s in (0..n).rev() {
        suffix[s] = suffix[s + 1] | masks[s];
    }
    // ascending DFS over supports of size <= max_support; a support is
    // normalized exactly when its missing-direction masks cover everything
    let mut supports: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn dfs(
        start: usize,
        covered: u64,
        full_mask: u64,
        n: usize,
        max_support: usize,
        masks: &[u64],
        suffix: &[u64],
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if covered & full_mask == full_mask {
            out.push(current.clone());
        }
        if current.len() >= max_support {
            return;
        }
        for s in start..n {
            if (covered | suffix[s]) & full_mask != full_mask {
                break; // later simplices only cover less
            }
            current.push(s);
            dfs(
                s + 1,
                covered | masks[s],
                full_mask,
                n,
                max_support,
                masks,
                suffix,
                current,
                out,
            );
            current.pop();
        }
    }
    dfs(
        0,
        0,
        full_mask,
        n,
        max_support,
        &masks,
        &suffix,
        &mut current,
        &mut supports,
    );
    // assign non-unit factors to each support within the weight budget
    let mut out: Vec<Monomial> = Vec::new();
    for support in supports {
        let mut partial: Vec<(usize, BasisRef)> = Vec::new();
        assign_factors(a, ideal, &support, 0, max_weight, &mut partial, &mut out);
    }
    out.sort();
    out
}

fn assign_factors(
    a: &Arc<WgAlgebra>,
    ideal: &[BasisRef],
    support: &[usize],
    position: usize,
    budget: i64,
    partial: &mut Vec<(usize, BasisRef)>,
    out: &mut Vec<Monomial>,
) {
    if position == support.len() {
        out.push(partial.clone());
        return;
    }
    for &r in ideal {
        let w = r.slot.weight.abs();
        if w > budget {
            continue;
        }
        partial.push((support[position], r));
        assign_factors(a, ideal, support, position + 1, budget - w, partial, out);
        partial.pop();
    }
}

/// Pushes a monomial forward along a map of simplices, merging collisions
/// with the product of the (commutative) algebra and Koszul reordering
/// signs.  Returns a linear combination of target monomials; degeneracy of
/// the targets is checked by the caller.
fn push_monomial(
    a: &Arc<WgAlgebra>,
    mono: &Monomial,
    map: impl Fn(usize) -> usize,
) -> Vec<(Monomial, Rational)> {
    // relocate factors, counting Koszul transpositions of odd factors while
    // stable-sorting by target simplex
    let mut moved: Vec<(usize, BasisRef)> = mono
        .iter()
        .map(|(s, r)| (map(*s), *r))
        .collect();
    let mut sign = int(1);
    for i in 1..moved.len() {
        let mut j = i;
        while j > 0 && moved[j - 1].0 > moved[j].0 {
            if is_odd(moved[j - 1].1.slot.degree) && is_odd(moved[j].1.slot.degree) {
                sign = -sign;
            }
            moved.swap(j - 1, j);
            j -= 1;
        }
    }
    // fold products within groups of equal target simplex
    let mut results: Vec<(Monomial, Rational)> = vec![(Vec::new(), sign)];
    let mut i = 0;
    while i < moved.len() {
        let target = moved[i].0;
        let mut group_end = i + 1;
        while group_end < moved.len() && moved[group_end].0 == target {
            group_end += 1;
        }
        // multiply the group left to right
        let mut accumulated: Vec<(Slot, Terms)> =
            vec![(moved[i].1.slot, vec![(moved[i].1.index, int(1))])];
        for (_, r) in &moved[i + 1..group_end] {
            let mut next: Vec<(Slot, Terms)> = Vec::new();
            for (slot, terms) in &accumulated {
                let product = a.mul_terms(*slot, terms, r.slot, &[(r.index, int(1))]);
                if !product.is_empty() {
                    next.push((slot.add(r.slot), product));
                }
            }
            accumulated = next;
        }
        let mut next_results = Vec::new();
        for (mono_so_far, coeff) in &results {
            for (slot, terms) in &accumulated {
                for (idx, c) in terms {
                    let mut m = mono_so_far.clone();
                    m.push((target, BasisRef::new(*slot, *idx)));
                    next_results.push((m, coeff * c));
                }
            }
        }
        results = next_results;
        i = group_end;
    }
    results
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{sym_algebra, GradedSpacePresentation};
    use crate::complexes::BettiTable;

    fn gens(list: &[(&'static str, i64, i64)]) -> GradedSpacePresentation {
        GradedSpacePresentation::from_generators(list.iter().copied())
    }

    #[test]
    fn builtin_levels() {
        let c = builtin_model("circle", 3).unwrap();
        assert_eq!(c.simplices(0).len(), 1);
        assert_eq!(c.simplices(1).len(), 2);
        assert_eq!(c.simplices(2).len(), 3);
        let p = builtin_model("point", 3).unwrap();
        for k in 0..p.level_count() {
            assert_eq!(p.simplices(k).len(), 1);
        }
        let t = builtin_model("torus", 2).unwrap();
        assert_eq!(t.simplices(1).len(), 4);
        let s = builtin_model("sphere2", 2).unwrap();
        assert_eq!(s.simplices(0).len(), 1);
        assert_eq!(s.simplices(1).len(), 1);
        assert_eq!(s.simplices(2).len(), 2);
        assert!(matches!(
            builtin_model("klein", 2),
            Err(Error::UnknownModel { .. })
        ));
    }

    #[test]
    fn nondegenerate_dimensions() {
        assert_eq!(builtin_model("point", 2).unwrap().max_nondegenerate_level(), 0);
        assert_eq!(builtin_model("circle", 2).unwrap().max_nondegenerate_level(), 1);
        assert_eq!(builtin_model("sphere2", 2).unwrap().max_nondegenerate_level(), 2);
        assert_eq!(builtin_model("torus", 2).unwrap().max_nondegenerate_level(), 2);
        assert_eq!(builtin_model("interval", 2).unwrap().max_nondegenerate_level(), 1);
    }

    #[test]
    fn point_tensor_is_identity_on_betti() {
        let a = sym_algebra(&gens(&[("x", 0, 1)]), 3).unwrap();
        let h = space_tensor(&builtin_model("point", 3).unwrap(), &a, 3)
            .unwrap()
            .homology_all()
            .unwrap();
        assert_eq!(h, a.carrier().space().dim_table());
    }

    #[test]
    fn circle_tensor_matches_cyclic_bar() {
        let a = sym_algebra(&gens(&[("x", 0, 1)]), 3).unwrap();
        let via_space = space_tensor(&builtin_model("circle", 3).unwrap(), &a, 3)
            .unwrap()
            .homology_all()
            .unwrap();
        let via_hochschild = crate::bar::cyclic_bar(&a, 3).unwrap().homology_all().unwrap();
        assert_eq!(via_space, via_hochschild);
    }

    #[test]
    fn interval_tensor_is_homotopy_trivial() {
        // the interval is contractible: same Betti as the point
        let a = sym_algebra(&gens(&[("x", 0, 1)]), 2).unwrap();
        let h = space_tensor(&builtin_model("interval", 2).unwrap(), &a, 2)
            .unwrap()
            .homology_all()
            .unwrap();
        assert_eq!(h, a.carrier().space().dim_table());
    }

    #[test]
    fn sphere_tensor_of_sym_counts() {
        // Sym(V (+) V[2]) by HKR over the 2-sphere
        let a = sym_algebra(&gens(&[("x", 0, 1)]), 3).unwrap();
        let h = space_tensor(&builtin_model("sphere2", 3).unwrap(), &a, 3)
            .unwrap()
            .homology_all()
            .unwrap();
        let mut expected = BettiTable::new();
        for w in 0..=3i64 {
            // monomials x^a y^b with a + b = w, y the degree-2 suspension
            for b in 0..=w {
                expected.add(Slot::new(w, 2 * b), 1);
            }
        }
        assert_eq!(h, expected);
    }

    #[test]
    fn noncommutative_input_is_rejected() {
        let t = crate::algebra::tensor_algebra(&gens(&[("x", 0, 1), ("y", 0, 1)]), 2).unwrap();
        match space_tensor(&builtin_model("circle", 2).unwrap(), &t, 2) {
            Err(Error::Input { .. }) => {}
            other => panic!("expected Input error, got {other:?}"),
        }
    }

    #[test]
    fn level_cap_too_small_is_reported() {
        // hand-build a circle with too few levels for the requested weight
        let full = builtin_model("circle", 4).unwrap();
        let trimmed = FiniteSimplicialSet::new(
            "short-circle",
            (0..3).map(|k| full.simplices(k).to_vec()).collect(),
            (0..3)
                .map(|k| {
                    if k == 0 {
                        Vec::new()
                    } else {
                        (0..=k).map(|i| full.faces[k][i].clone()).collect()
                    }
                })
                .collect(),
            (0..2)
                .map(|k| (0..=k).map(|j| full.degeneracies[k][j].clone()).collect())
                .collect(),
        )
        .unwrap();
        let a = sym_algebra(&gens(&[("x", 0, 1)]), 4).unwrap();
        match space_tensor(&trimmed, &a, 4) {
            Err(Error::LevelCapTooSmall { .. }) => {}
            other => panic!("expected LevelCapTooSmall, got {other:?}"),
        }
    }
}
