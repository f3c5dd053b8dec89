//! Finite graded-commutative models for (compactly supported) cochains of
//! manifolds, placed in nonpositive homological degrees.
//!
//! All built-ins are formal: zero differential, with products that either
//! vanish for degree reasons or are the cup product on cohomology.  Each
//! model records the justification for its product in its constructor.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{add_terms, collect_terms, BasisRef, PairMap, Terms};
use crate::complexes::{BigradedSpace, ChainComplex, Slot};
use crate::error::Error;
use crate::scalar::{int, koszul_sign, sign_pow, Rational};

/// A finite-dimensional graded-commutative (possibly non-unital) algebra in
/// weight 0, used as the source model in `mapping_lie`.
#[derive(Debug, Clone)]
pub struct CommutativeModel {
    name: String,
    carrier: ChainComplex,
    /// All nonzero products, including unit products when a unit exists.
    product: PairMap,
}

impl CommutativeModel {
    pub fn new(
        name: impl Into<String>,
        carrier: ChainComplex,
        product: PairMap,
    ) -> Result<Self, Error> {
        let model = CommutativeModel {
            name: name.into(),
            carrier,
            product,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn carrier(&self) -> &ChainComplex {
        &self.carrier
    }

    pub fn mul_basis(&self, a: BasisRef, b: BasisRef) -> Terms {
        self.product.get(a, b).to_vec()
    }

    pub fn basis(&self) -> Vec<BasisRef> {
        self.carrier
            .space()
            .slots()
            .flat_map(|(slot, labels)| (0..labels.len()).map(move |i| BasisRef::new(slot, i)))
            .collect()
    }

    fn validate(&self) -> Result<(), Error> {
        for slot in self.carrier.space().slot_keys() {
            if slot.weight != 0 {
                return Err(Error::validation(format!(
                    "model {:?} must live in weight 0, found {slot:?}",
                    self.name
                )));
            }
        }
        let basis = self.basis();
        // Koszul commutativity and associativity on all basis tuples.
        for &a in &basis {
            for &b in &basis {
                let ab = self.mul_basis(a, b);
                let mut ba = self.mul_basis(b, a);
                let sign = koszul_sign(a.slot.degree, b.slot.degree);
                for (_, c) in ba.iter_mut() {
                    *c *= &sign;
                }
                if ab != ba {
                    return Err(Error::validation(format!(
                        "model {:?}: commutativity fails",
                        self.name
                    )));
                }
                for &c in &basis {
                    let left = self.mul_terms(a.slot.add(b.slot), &ab, c);
                    let bc = self.mul_basis(b, c);
                    let right = self.mul_terms_right(a, b.slot.add(c.slot), &bc);
                    if left != right {
                        return Err(Error::validation(format!(
                            "model {:?}: associativity fails",
                            self.name
                        )));
                    }
                }
            }
        }
        // Leibniz against the differential.
        if !self.carrier.has_zero_differential() {
            for &a in &basis {
                for &b in &basis {
                    let ab = self.mul_basis(a, b);
                    let d_ab =
                        crate::algebra::apply_differential(&self.carrier, a.slot.add(b.slot), &ab);
                    let da = crate::algebra::apply_differential(
                        &self.carrier,
                        a.slot,
                        &[(a.index, int(1))],
                    );
                    let db = crate::algebra::apply_differential(
                        &self.carrier,
                        b.slot,
                        &[(b.index, int(1))],
                    );
                    let mut acc = BTreeMap::new();
                    for (ia, ca) in &da {
                        let terms = self.mul_basis(BasisRef::new(a.slot.below(), *ia), b);
                        add_terms(&mut acc, &terms, ca);
                    }
                    let sign = sign_pow(a.slot.degree);
                    for (ib, cb) in &db {
                        let terms = self.mul_basis(a, BasisRef::new(b.slot.below(), *ib));
                        add_terms(&mut acc, &terms, &(&sign * cb));
                    }
                    if d_ab != collect_terms(acc) {
                        return Err(Error::validation(format!(
                            "model {:?}: Leibniz fails",
                            self.name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn mul_terms(&self, slot: Slot, v: &[(usize, Rational)], c: BasisRef) -> Terms {
        let mut acc = BTreeMap::new();
        for (i, coeff) in v {
            let terms = self.mul_basis(BasisRef::new(slot, *i), c);
            add_terms(&mut acc, &terms, coeff);
        }
        collect_terms(acc)
    }

    fn mul_terms_right(&self, a: BasisRef, slot: Slot, v: &[(usize, Rational)]) -> Terms {
        let mut acc = BTreeMap::new();
        for (i, coeff) in v {
            let terms = self.mul_basis(a, BasisRef::new(slot, *i));
            add_terms(&mut acc, &terms, coeff);
        }
        collect_terms(acc)
    }
}

/// The one-point model: a unit in degree 0.
pub fn point() -> CommutativeModel {
    let space = BigradedSpace::point(Slot::new(0, 0), "1");
    let mut product = PairMap::new();
    let one = BasisRef::new(Slot::new(0, 0), 0);
    product.set(one, one, vec![(0, int(1))]);
    CommutativeModel::new("point", ChainComplex::with_zero_differential(space), product).unwrap()
}

/// Compactly supported cochains of Euclidean n-space: one class in degree
/// `-n`, square zero for degree reasons.
pub fn euclidean(n: u32) -> CommutativeModel {
    assert!(n >= 1, "euclidean model needs n >= 1");
    let space = BigradedSpace::point(Slot::new(0, -(n as i64)), format!("e{n}"));
    CommutativeModel::new(
        format!("R^{n}"),
        ChainComplex::with_zero_differential(space),
        PairMap::new(),
    )
    .unwrap()
}

/// Full cochains of the closed circle: the exterior algebra on one class in
/// degree -1, with its unit.  Used for mapping-in (cotensor) constructions.
pub fn circle_closed() -> CommutativeModel {
    let mut space = BigradedSpace::new();
    space.push_label(Slot::new(0, 0), "1".into());
    space.push_label(Slot::new(0, -1), "e".into());
    let one = BasisRef::new(Slot::new(0, 0), 0);
    let e = BasisRef::new(Slot::new(0, -1), 0);
    let mut product = PairMap::new();
    product.set(one, one, vec![(0, int(1))]);
    product.set(one, e, vec![(0, int(1))]);
    product.set(e, one, vec![(0, int(1))]);
    // e*e lands in degree -2, which is empty
    CommutativeModel::new(
        "S^1",
        ChainComplex::with_zero_differential(space),
        product,
    )
    .unwrap()
}

/// Compactly supported cochains of `S^m x R^{n-m}` for `0 <= m < n`.
///
/// For `m >= 1` this is one class in degree `-(n-m)` and one in degree `-n`;
/// all products vanish because each class carries the top compactly
/// supported class of the Euclidean factor, whose square is zero.  For
/// `m = 0` the space is two disjoint copies of `R^n`, i.e. two classes in
/// degree `-n` with componentwise (hence zero) products.
pub fn sphere_collar(m: u32, n: u32) -> Result<CommutativeModel, Error> {
    if m >= n {
        return Err(Error::InvalidCodim { m, n });
    }
    let mut space = BigradedSpace::new();
    if m == 0 {
        space.push_label(Slot::new(0, -(n as i64)), "e+".into());
        space.push_label(Slot::new(0, -(n as i64)), "e-".into());
    } else {
        space.push_label(Slot::new(0, -((n - m) as i64)), "a".into());
        space.push_label(Slot::new(0, -(n as i64)), "b".into());
    }
    CommutativeModel::new(
        format!("S^{m}xR^{}", n - m),
        ChainComplex::with_zero_differential(space),
        PairMap::new(),
    )
}

/// Builds a model from explicit data; used by the JSON loader and tests.
pub fn from_parts(
    name: impl Into<String>,
    basis: &[(&str, i64)],
    products: &[((usize, usize), Vec<(Rational, usize)>)],
    differentials: &[(usize, Vec<(Rational, usize)>)],
) -> Result<CommutativeModel, Error> {
    let mut space = BigradedSpace::new();
    let mut refs = Vec::new();
    for (label, degree) in basis {
        let slot = Slot::new(0, *degree);
        let idx = space.push_label(slot, (*label).to_string());
        refs.push(BasisRef::new(slot, idx));
    }
    let mut product = PairMap::new();
    for ((a, b), terms) in products {
        let (ra, rb) = (refs[*a], refs[*b]);
        let target = ra.slot.add(rb.slot);
        let mut out: Terms = Vec::new();
        for (coeff, t) in terms {
            let rt = refs[*t];
            if rt.slot != target {
                return Err(Error::input(format!(
                    "model product ({a},{b}) lands outside slot {target:?}"
                )));
            }
            out.push((rt.index, coeff.clone()));
        }
        product.set(ra, rb, out);
    }
    let mut diff: BTreeMap<Slot, crate::linalg::SparseMatrix> = BTreeMap::new();
    for (src, terms) in differentials {
        let rs = refs[*src];
        let below = rs.slot.below();
        let rows = space.dim(below);
        let matrix = diff
            .entry(rs.slot)
            .or_insert_with(|| crate::linalg::SparseMatrix::zero(rows, space.dim(rs.slot)));
        for (coeff, t) in terms {
            let rt = refs[*t];
            if rt.slot != below {
                return Err(Error::input(format!(
                    "model differential of {src} lands outside {below:?}"
                )));
            }
            if !coeff.is_zero() {
                matrix.add_to(rt.index, rs.index, coeff.clone());
            }
        }
    }
    let carrier = ChainComplex::new(space, diff)?;
    CommutativeModel::new(name, carrier, product)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_validate() {
        point();
        euclidean(1);
        euclidean(3);
        circle_closed();
        sphere_collar(0, 1).unwrap();
        sphere_collar(1, 2).unwrap();
        sphere_collar(1, 3).unwrap();
        sphere_collar(2, 3).unwrap();
        assert!(matches!(
            sphere_collar(2, 2),
            Err(Error::InvalidCodim { m: 2, n: 2 })
        ));
    }

    #[test]
    fn circle_model_products() {
        let m = circle_closed();
        let one = BasisRef::new(Slot::new(0, 0), 0);
        let e = BasisRef::new(Slot::new(0, -1), 0);
        assert_eq!(m.mul_basis(one, e), vec![(0, int(1))]);
        assert!(m.mul_basis(e, e).is_empty());
    }

    #[test]
    fn cone_model_with_differential_validates() {
        // span{t (deg 0), e (deg -1)} with dt = e and zero products
        let m = from_parts(
            "cone",
            &[("t", 0), ("e", -1)],
            &[],
            &[(0, vec![(int(1), 1)])],
        )
        .unwrap();
        assert!(!m.carrier().has_zero_differential());
    }
}
