//! The built-in corpus: small algebras, Lie algebras and manifold models
//! addressable by name, so every verification run is reproducible from one
//! command line.

use std::sync::Arc;

use crate::algebra::{sym_algebra, tensor_algebra, GradedSpacePresentation, WgAlgebra};
use crate::error::Error;
use crate::lie::{abelian_lie, filiform, heisenberg, WgLieAlgebra};
use crate::model::{circle_closed, euclidean, point, sphere_collar, CommutativeModel};
use crate::scalar::int;

fn gens(list: &[(&str, i64, i64)]) -> GradedSpacePresentation {
    GradedSpacePresentation {
        generators: list
            .iter()
            .map(|(n, d, w)| crate::algebra::Generator {
                name: (*n).to_string(),
                degree: *d,
                weight: *w,
            })
            .collect(),
        relations: Vec::new(),
    }
}

/// Names of the built-in algebra presets.
pub const ALGEBRA_PRESETS: &[&str] = &[
    "polynomial",
    "exterior",
    "truncated-poly",
    "tensor1",
    "tensor2",
    "sym-mixed",
];

/// Names of the built-in Lie algebra presets.
pub const LIE_PRESETS: &[&str] = &[
    "abelian1",
    "abelian2",
    "abelian3",
    "heisenberg",
    "filiform",
];

/// Builds an algebra preset truncated at `max_weight`.
pub fn algebra_preset(name: &str, max_weight: i64) -> Result<Arc<WgAlgebra>, Error> {
    match name {
        // Q[x], x in degree 0 and weight 1
        "polynomial" => sym_algebra(&gens(&[("x", 0, 1)]), max_weight),
        // Lambda(xi), xi odd in degree 1
        "exterior" => sym_algebra(&gens(&[("xi", 1, 1)]), max_weight),
        // Q[x]/x^3 as a weight-graded quotient of the tensor algebra
        "truncated-poly" => {
            let mut p = gens(&[("x", 0, 1)]);
            p.relations = vec![vec![(int(1), vec![0, 0, 0])]];
            let a = tensor_algebra(&p, max_weight)?;
            a.into_commutative()
        }
        "tensor1" => tensor_algebra(&gens(&[("x", 0, 1)]), max_weight),
        "tensor2" => tensor_algebra(&gens(&[("x", 0, 1), ("y", 0, 1)]), max_weight),
        // Sym(Q (+) Q[1]): one even and one odd generator
        "sym-mixed" => sym_algebra(&gens(&[("x", 0, 1), ("xi", 1, 1)]), max_weight),
        other => Err(Error::UnknownModel {
            name: other.to_string(),
        }),
    }
}

/// Builds a Lie algebra preset truncated at `max_weight`.
pub fn lie_preset(name: &str, max_weight: i64) -> Result<WgLieAlgebra, Error> {
    match name {
        "abelian1" => abelian_lie("abelian1", &[("x", 1)], max_weight),
        "abelian2" => abelian_lie("abelian2", &[("x", 1), ("y", 1)], max_weight),
        "abelian3" => abelian_lie("abelian3", &[("x", 1), ("y", 1), ("z", 1)], max_weight),
        "heisenberg" => heisenberg(max_weight),
        "filiform" => filiform(max_weight),
        other => Err(Error::UnknownModel {
            name: other.to_string(),
        }),
    }
}

/// Builds a commutative cochain-model preset.  `n` is the ambient dimension
/// for the Euclidean and sphere-collar families.
pub fn model_preset(name: &str, n: u32) -> Result<CommutativeModel, Error> {
    match name {
        "point" => Ok(point()),
        "euclidean" => {
            if n == 0 {
                return Err(Error::input("euclidean model needs n >= 1"));
            }
            Ok(euclidean(n))
        }
        "circle" => Ok(circle_closed()),
        other => match other.strip_prefix("sphere-collar:") {
            Some(m) => {
                let m: u32 = m
                    .parse()
                    .map_err(|_| Error::input(format!("bad sphere-collar codimension {m:?}")))?;
                sphere_collar(m, n)
            }
            None => Err(Error::UnknownModel {
                name: other.to_string(),
            }),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_presets_build() {
        for name in ALGEBRA_PRESETS {
            algebra_preset(name, 3).unwrap();
        }
        for name in LIE_PRESETS {
            lie_preset(name, 3).unwrap();
        }
        model_preset("point", 0).unwrap();
        model_preset("euclidean", 2).unwrap();
        model_preset("circle", 1).unwrap();
        model_preset("sphere-collar:1", 2).unwrap();
        assert!(algebra_preset("nonsense", 3).is_err());
    }

    #[test]
    fn truncated_poly_is_commutative_with_three_dims() {
        let a = algebra_preset("truncated-poly", 4).unwrap();
        assert!(a.commutative());
        assert_eq!(a.carrier().space().total_dim(), 3);
    }
}
