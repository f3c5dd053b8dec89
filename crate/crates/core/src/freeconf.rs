//! Free n-disk algebras and labeled configuration spaces at the level of
//! exact dimension tables.
//!
//! Over the rationals the free n-disk algebra on `V` has the dimensions of
//! `Sym(FreeLie(V[n-1])[1-n])`, and the Lie-model route computes the same
//! table as Chevalley-Eilenberg homology of `model (x) FreeLie(V[n-1])`.
//! Running both engines and comparing slotwise is the verification device
//! for the splitting statements.

use crate::algebra::{enumerate_sym_monomials, monomial_slot, GradedSpacePresentation};
use crate::bar::bar;
use crate::complexes::{BettiTable, DimTable, Slot};
use crate::error::Error;
use crate::excision::{check_independence, Report};
use crate::lie::{ce_chains, free_lie, mapping_lie};
use crate::model::{sphere_collar, CommutativeModel};

/// Dimension table of `Sym` applied to a graded space given by a dimension
/// table; even-degree generators carry unbounded powers, odd-degree ones
/// square to zero.  Weights must be strictly signed.
pub fn sym_dims(generators: &DimTable, max_weight: i64) -> Result<DimTable, Error> {
    let mut gen_slots: Vec<Slot> = Vec::new();
    let mut sign = 0i64;
    for (slot, dim) in generators.iter() {
        if slot.weight == 0 {
            return Err(Error::MixedWeightSigns {
                detail: format!("Sym counting needs strictly signed weights, found {slot:?}"),
            });
        }
        let s = slot.weight.signum();
        if sign == 0 {
            sign = s;
        } else if s != sign {
            return Err(Error::MixedWeightSigns {
                detail: "Sym counting needs strictly signed weights".into(),
            });
        }
        for _ in 0..dim {
            gen_slots.push(slot);
        }
    }
    let mut out = DimTable::new();
    for mono in enumerate_sym_monomials(&gen_slots, max_weight) {
        out.add(monomial_slot(&mono, &gen_slots), 1);
    }
    Ok(out)
}

/// Dimension table of the free n-disk algebra on `v`:
/// `Sym(FreeLie(v[n-1])[1-n])`, truncated at the weight window.
pub fn free_en_dims(
    n: u32,
    v: &GradedSpacePresentation,
    max_weight: i64,
) -> Result<DimTable, Error> {
    let lie = free_lie(v, n, max_weight)?;
    let shifted = lie
        .carrier()
        .space()
        .dim_table()
        .shift_degrees(1 - n as i64);
    sym_dims(&shifted, max_weight)
}

/// Homology of the labeled configuration space of the manifold modeled by
/// `m`, with labels `v`: Chevalley-Eilenberg homology of
/// `m (x) FreeLie(v[n-1])`.  For the Euclidean model this agrees with
/// `free_en_dims` on the nose.
pub fn conf_labeled_homology(
    m: &CommutativeModel,
    n: u32,
    v: &GradedSpacePresentation,
    max_weight: i64,
) -> Result<DimTable, Error> {
    let lie = free_lie(v, n, max_weight)?;
    let mapped = mapping_lie(m, &lie)?;
    ce_chains(&mapped, max_weight)?.homology_all()
}

/// The sphere-collar splitting check: the compactly supported Lie-model
/// route over `S^m x R^{n-m}` against the convolution of free-algebra
/// dimension tables, both computed independently.
pub fn check_splits(
    n: u32,
    m: u32,
    v: &GradedSpacePresentation,
    max_weight: i64,
) -> Result<Report, Error> {
    if m >= n {
        return Err(Error::InvalidCodim { m, n });
    }
    let model = sphere_collar(m, n)?;
    let lhs = conf_labeled_homology(&model, n, v, max_weight)?;
    let first = free_en_dims(n, v, max_weight)?;
    let second = free_en_dims(n - m, &v.shifted(m as i64), max_weight)?;
    let rhs = first.convolve(&second).truncate_abs_weight(max_weight);
    check_independence(
        &[
            (format!("lie-model over S^{m}xR^{}", n - m), lhs),
            (format!("Free_{n}(V) (x) Free_{}(V[{m}])", n - m), rhs),
        ],
        max_weight,
    )
}

/// The bar-of-free check.  For `n = 1` the bar construction of the tensor
/// algebra is compared chain-level against `Q (+) V[1]`; for `n >= 2` the
/// two differently-shifted free-Lie routes feeding `Sym` are compared at the
/// dimension level.
pub fn check_bar_free(
    n: u32,
    v: &GradedSpacePresentation,
    max_weight: i64,
) -> Result<Report, Error> {
    if n == 1 {
        let algebra = crate::algebra::tensor_algebra(v, max_weight)?;
        let homology = bar(&algebra, max_weight)?.homology_all()?;
        let mut expected = BettiTable::unit();
        for g in &v.generators {
            expected.add(Slot::new(g.weight, g.degree + 1), 1);
        }
        return check_independence(
            &[
                ("homology of B(T(V))".into(), homology),
                ("Q (+) V[1]".into(), expected.truncate_abs_weight(max_weight)),
            ],
            max_weight,
        );
    }
    // dimension level: Sym(FreeLie(V[n-1])[2-n]) both ways
    let via_bar = {
        let lie = free_lie(v, n, max_weight)?;
        let shifted = lie
            .carrier()
            .space()
            .dim_table()
            .shift_degrees(2 - n as i64);
        sym_dims(&shifted, max_weight)?
    };
    let via_suspension = free_en_dims(n - 1, &v.shifted(1), max_weight)?;
    check_independence(
        &[
            (format!("B Free_{n}(V) dimensions"), via_bar),
            (format!("Free_{}(V[1]) dimensions", n - 1), via_suspension),
        ],
        max_weight,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::euclidean;

    fn gens(list: &[(&'static str, i64, i64)]) -> GradedSpacePresentation {
        GradedSpacePresentation::from_generators(list.iter().copied())
    }

    #[test]
    fn free_dims_n1_is_tensor_algebra() {
        let v = gens(&[("x", 0, 1)]);
        let dims = free_en_dims(1, &v, 4).unwrap();
        for w in 0..=4 {
            assert_eq!(dims.get(Slot::new(w, 0)), 1);
        }
        let v2 = gens(&[("x", 0, 1), ("y", 0, 1)]);
        let dims2 = free_en_dims(1, &v2, 4).unwrap();
        let t = crate::algebra::tensor_algebra(&v2, 4).unwrap();
        assert_eq!(dims2, t.carrier().space().dim_table());
    }

    #[test]
    fn free_dims_n2_matches_braid_homology() {
        // weight w counts the rational homology of the configuration space
        // of w unordered points in the plane: (1, 1) in degrees 0, 1 for
        // w = 2 and w = 3
        let v = gens(&[("x", 0, 1)]);
        let dims = free_en_dims(2, &v, 3).unwrap();
        assert_eq!(dims.get(Slot::new(2, 0)), 1);
        assert_eq!(dims.get(Slot::new(2, 1)), 1);
        assert_eq!(
            dims.iter().filter(|(s, _)| s.weight == 2).map(|(_, d)| d).sum::<usize>(),
            2
        );
        assert_eq!(dims.get(Slot::new(3, 0)), 1);
        assert_eq!(dims.get(Slot::new(3, 1)), 1);
        assert_eq!(
            dims.iter().filter(|(s, _)| s.weight == 3).map(|(_, d)| d).sum::<usize>(),
            2
        );
    }

    #[test]
    fn conf_over_euclidean_matches_free_dims() {
        for n in 1..=3u32 {
            for v in [gens(&[("x", 0, 1)]), gens(&[("x", 0, 1), ("y", 0, 1)])] {
                let via_conf = conf_labeled_homology(&euclidean(n), n, &v, 3).unwrap();
                let via_free = free_en_dims(n, &v, 3).unwrap();
                assert_eq!(via_conf, via_free, "n = {n}");
            }
        }
    }

    #[test]
    fn conf_with_empty_labels_is_unit() {
        let dims = conf_labeled_homology(&euclidean(2), 2, &gens(&[]), 3).unwrap();
        assert_eq!(dims, BettiTable::unit());
    }

    #[test]
    fn splits_disjoint_union_case() {
        // n = 1, m = 0: two lines; both sides are T(V) (x) T(V)
        let v = gens(&[("x", 0, 1)]);
        let report = check_splits(1, 0, &v, 3).unwrap();
        assert!(report.pass, "{}", report.describe());
    }

    #[test]
    fn splits_cylinder_case() {
        let v = gens(&[("x", 0, 1)]);
        let report = check_splits(2, 1, &v, 3).unwrap();
        assert!(report.pass, "{}", report.describe());
    }

    #[test]
    fn splits_rejects_bad_codimension() {
        match check_splits(2, 2, &gens(&[("x", 0, 1)]), 3) {
            Err(Error::InvalidCodim { m: 2, n: 2 }) => {}
            other => panic!("expected InvalidCodim, got {other:?}"),
        }
    }

    #[test]
    fn bar_free_chain_level_n1() {
        let report = check_bar_free(1, &gens(&[("x", 0, 1), ("y", 0, 1)]), 4).unwrap();
        assert!(report.pass, "{}", report.describe());
    }

    #[test]
    fn bar_free_dimension_level_n2_n3() {
        for n in [2u32, 3] {
            let report = check_bar_free(n, &gens(&[("x", 0, 1)]), 4).unwrap();
            assert!(report.pass, "n = {n}: {}", report.describe());
        }
    }

    #[test]
    fn euler_characteristic_cross_check() {
        // the weight-w Euler characteristic of Free_n(V) matches the signed
        // Sym-count from the free-Lie table expanded independently
        let v = gens(&[("x", 0, 1)]);
        for n in 1..=3u32 {
            let dims = free_en_dims(n, &v, 4).unwrap();
            let lie = free_lie(&v, n, 4).unwrap();
            let table = lie
                .carrier()
                .space()
                .dim_table()
                .shift_degrees(1 - n as i64);
            let recount = sym_dims(&table, 4).unwrap();
            assert_eq!(dims.euler_by_weight(), recount.euler_by_weight());
        }
    }
}
