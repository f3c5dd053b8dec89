//! JSON presentation formats: algebras, Lie algebras, commutative models and
//! simplicial sets all load from small JSON documents.  Rational
//! coefficients are carried as strings `"p/q"` so nothing is lost or
//! overflowed on any consumer.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{
    sym_algebra, tensor_algebra, Generator, GradedSpacePresentation, PairMap, Relation, WgAlgebra,
};
use crate::complexes::{BigradedSpace, ChainComplex, Slot};
use crate::error::Error;
use crate::lie::WgLieAlgebra;
use crate::model::CommutativeModel;
use crate::scalar::{parse_rational, Rational};
use crate::simplicial::FiniteSimplicialSet;

#[derive(Serialize, Deserialize)]
struct GeneratorWire {
    name: String,
    degree: i64,
    weight: i64,
}

#[derive(Serialize, Deserialize)]
struct RelationTermWire {
    coeff: String,
    word: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct BracketTermWire {
    coeff: String,
    gen: String,
}

#[derive(Serialize, Deserialize)]
struct BracketWire {
    left: String,
    right: String,
    value: Vec<BracketTermWire>,
}

#[derive(Serialize, Deserialize)]
struct ModelBasisWire {
    name: String,
    degree: i64,
}

#[derive(Serialize, Deserialize)]
struct ModelTermWire {
    coeff: String,
    elem: String,
}

#[derive(Serialize, Deserialize)]
struct ModelProductWire {
    left: String,
    right: String,
    value: Vec<ModelTermWire>,
}

#[derive(Serialize, Deserialize)]
struct ModelDifferentialWire {
    from: String,
    value: Vec<ModelTermWire>,
}

/// The one presentation document; `kind` selects the construction.
#[derive(Serialize, Deserialize)]
pub struct PresentationWire {
    pub kind: String,
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    generators: Vec<GeneratorWire>,
    #[serde(default)]
    relations: Vec<Vec<RelationTermWire>>,
    #[serde(default)]
    brackets: Vec<BracketWire>,
    #[serde(default)]
    basis: Vec<ModelBasisWire>,
    #[serde(default)]
    products: Vec<ModelProductWire>,
    #[serde(default)]
    differentials: Vec<ModelDifferentialWire>,
    #[serde(default)]
    levels: Vec<Vec<String>>,
    #[serde(default)]
    faces: Vec<Vec<Vec<usize>>>,
    #[serde(default)]
    degeneracies: Vec<Vec<Vec<usize>>>,
}

fn parse_wire(json: &str) -> Result<PresentationWire, Error> {
    serde_json::from_str(json).map_err(|e| Error::input(format!("malformed JSON: {e}")))
}

fn presentation_of(wire: &PresentationWire) -> Result<GradedSpacePresentation, Error> {
    let generators: Vec<Generator> = wire
        .generators
        .iter()
        .map(|g| Generator {
            name: g.name.clone(),
            degree: g.degree,
            weight: g.weight,
        })
        .collect();
    let index_of = |name: &str| -> Result<u32, Error> {
        generators
            .iter()
            .position(|g| g.name == name)
            .map(|i| i as u32)
            .ok_or_else(|| Error::input(format!("unknown generator {name:?} in relation")))
    };
    let relations: Result<Vec<Relation>, Error> = wire
        .relations
        .iter()
        .map(|terms| {
            terms
                .iter()
                .map(|t| {
                    let coeff = parse_rational(&t.coeff).map_err(Error::input)?;
                    let word: Result<Vec<u32>, Error> =
                        t.word.iter().map(|n| index_of(n)).collect();
                    Ok((coeff, word?))
                })
                .collect()
        })
        .collect();
    Ok(GradedSpacePresentation {
        generators,
        relations: relations?,
    })
}

/// Loads an associative algebra presentation (`kind` = `tensor` or `sym`).
pub fn load_algebra(json: &str, max_weight: i64) -> Result<Arc<WgAlgebra>, Error> {
    let wire = parse_wire(json)?;
    let presentation = presentation_of(&wire)?;
    match wire.kind.as_str() {
        "tensor" => tensor_algebra(&presentation, max_weight),
        "sym" => {
            if !wire.relations.is_empty() {
                return Err(Error::input("sym presentations do not take relations"));
            }
            sym_algebra(&presentation, max_weight)
        }
        other => Err(Error::input(format!(
            "expected an algebra presentation (kind tensor|sym), found kind {other:?}"
        ))),
    }
}

/// Loads a Lie algebra presentation (`kind` = `lie`).
pub fn load_lie(json: &str, max_weight: i64) -> Result<WgLieAlgebra, Error> {
    let wire = parse_wire(json)?;
    if wire.kind != "lie" {
        return Err(Error::input(format!(
            "expected a Lie presentation (kind lie), found kind {:?}",
            wire.kind
        )));
    }
    let presentation = presentation_of(&wire)?;
    presentation.validate(false)?;
    let mut space = BigradedSpace::new();
    let mut refs = std::collections::BTreeMap::new();
    for g in &presentation.generators {
        let slot = Slot::new(g.weight, g.degree);
        let idx = space.push_label(slot, g.name.clone());
        refs.insert(g.name.clone(), crate::algebra::BasisRef::new(slot, idx));
    }
    let mut bracket = PairMap::new();
    for rule in &wire.brackets {
        let rl = *refs
            .get(&rule.left)
            .ok_or_else(|| Error::input(format!("unknown generator {:?}", rule.left)))?;
        let rr = *refs
            .get(&rule.right)
            .ok_or_else(|| Error::input(format!("unknown generator {:?}", rule.right)))?;
        let target = rl.slot.add(rr.slot);
        let mut terms: Vec<(usize, Rational)> = Vec::new();
        for t in &rule.value {
            let rg = *refs
                .get(&t.gen)
                .ok_or_else(|| Error::input(format!("unknown generator {:?}", t.gen)))?;
            if rg.slot != target {
                return Err(Error::input(format!(
                    "bracket [{}, {}] is not weight/degree additive",
                    rule.left, rule.right
                )));
            }
            terms.push((rg.index, parse_rational(&t.coeff).map_err(Error::input)?));
        }
        bracket.set(rl, rr, terms.clone());
        if rl != rr {
            let sign = -crate::scalar::koszul_sign(rl.slot.degree, rr.slot.degree);
            let flipped: Vec<(usize, Rational)> =
                terms.iter().map(|(i, c)| (*i, &sign * c)).collect();
            bracket.set(rr, rl, flipped);
        }
    }
    WgLieAlgebra::new(
        wire.name.clone().unwrap_or_else(|| "lie".into()),
        ChainComplex::with_zero_differential(space),
        bracket,
        max_weight,
        crate::algebra::Validation::Exhaustive,
    )
}

/// Loads a commutative model (`kind` = `model`).
pub fn load_model(json: &str) -> Result<CommutativeModel, Error> {
    let wire = parse_wire(json)?;
    if wire.kind != "model" {
        return Err(Error::input(format!(
            "expected a model presentation (kind model), found kind {:?}",
            wire.kind
        )));
    }
    let basis: Vec<(&str, i64)> = wire
        .basis
        .iter()
        .map(|b| (b.name.as_str(), b.degree))
        .collect();
    let index_of = |name: &str| -> Result<usize, Error> {
        wire.basis
            .iter()
            .position(|b| b.name == name)
            .ok_or_else(|| Error::input(format!("unknown model element {name:?}")))
    };
    let mut products = Vec::new();
    for p in &wire.products {
        let terms: Result<Vec<(Rational, usize)>, Error> = p
            .value
            .iter()
            .map(|t| {
                Ok((
                    parse_rational(&t.coeff).map_err(Error::input)?,
                    index_of(&t.elem)?,
                ))
            })
            .collect();
        products.push(((index_of(&p.left)?, index_of(&p.right)?), terms?));
    }
    let mut differentials = Vec::new();
    for d in &wire.differentials {
        let terms: Result<Vec<(Rational, usize)>, Error> = d
            .value
            .iter()
            .map(|t| {
                Ok((
                    parse_rational(&t.coeff).map_err(Error::input)?,
                    index_of(&t.elem)?,
                ))
            })
            .collect();
        differentials.push((index_of(&d.from)?, terms?));
    }
    crate::model::from_parts(
        wire.name.clone().unwrap_or_else(|| "model".into()),
        &basis,
        &products,
        &differentials,
    )
}

/// Loads a finite simplicial set (`kind` = `simplicial`).
pub fn load_simplicial(json: &str) -> Result<FiniteSimplicialSet, Error> {
    let wire = parse_wire(json)?;
    if wire.kind != "simplicial" {
        return Err(Error::input(format!(
            "expected a simplicial presentation (kind simplicial), found kind {:?}",
            wire.kind
        )));
    }
    FiniteSimplicialSet::new(
        wire.name.clone().unwrap_or_else(|| "space".into()),
        wire.levels.clone(),
        wire.faces.clone(),
        wire.degeneracies.clone(),
    )
}

/// Bindings for gluing expressions: piece name to preset or file.
#[derive(Serialize, Deserialize)]
pub struct BindingWire {
    #[serde(default)]
    pub preset: Option<String>,
    #[serde(default)]
    pub file: Option<String>,
}

pub type BindingsWire = std::collections::BTreeMap<String, BindingWire>;

pub fn parse_bindings(json: &str) -> Result<BindingsWire, Error> {
    serde_json::from_str(json).map_err(|e| Error::input(format!("malformed bindings JSON: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn load_tensor_algebra_with_relation() {
        let json = r#"{
            "kind": "tensor",
            "generators": [{"name": "x", "degree": 0, "weight": 1}],
            "relations": [[{"coeff": "1", "word": ["x", "x", "x"]}]]
        }"#;
        let a = load_algebra(json, 4).unwrap();
        assert_eq!(a.carrier().space().total_dim(), 3);
    }

    #[test]
    fn load_sym_algebra() {
        let json = r#"{
            "kind": "sym",
            "generators": [{"name": "x", "degree": 0, "weight": 1},
                           {"name": "xi", "degree": 1, "weight": 1}]
        }"#;
        let a = load_algebra(json, 3).unwrap();
        assert!(a.commutative());
    }

    #[test]
    fn load_lie_heisenberg() {
        let json = r#"{
            "kind": "lie",
            "name": "heis",
            "generators": [{"name": "x", "degree": 0, "weight": 1},
                           {"name": "y", "degree": 0, "weight": 1},
                           {"name": "z", "degree": 0, "weight": 2}],
            "brackets": [{"left": "x", "right": "y",
                          "value": [{"coeff": "1", "gen": "z"}]}]
        }"#;
        let g = load_lie(json, 4).unwrap();
        assert_eq!(g.carrier().space().total_dim(), 3);
    }

    #[test]
    fn lie_file_rejected_by_algebra_loader() {
        let json = r#"{"kind": "lie", "generators": []}"#;
        match load_algebra(json, 3) {
            Err(Error::Input { .. }) => {}
            other => panic!("expected Input error, got {other:?}"),
        }
    }

    #[test]
    fn malformed_json_is_input_error() {
        match load_algebra("{not json", 3) {
            Err(Error::Input { .. }) => {}
            other => panic!("expected Input error, got {other:?}"),
        }
    }

    #[test]
    fn jacobi_violation_is_validation_error() {
        // [x,[y,z]] = 0 but [[x,y],z] + [y,[x,z]] = [p,z] = r
        let json = r#"{
            "kind": "lie",
            "generators": [{"name": "x", "degree": 0, "weight": 1},
                           {"name": "y", "degree": 0, "weight": 1},
                           {"name": "z", "degree": 0, "weight": 1},
                           {"name": "p", "degree": 0, "weight": 2},
                           {"name": "q", "degree": 0, "weight": 2},
                           {"name": "r", "degree": 0, "weight": 3}],
            "brackets": [{"left": "x", "right": "y", "value": [{"coeff": "1", "gen": "p"}]},
                         {"left": "x", "right": "z", "value": [{"coeff": "1", "gen": "q"}]},
                         {"left": "p", "right": "z", "value": [{"coeff": "1", "gen": "r"}]}]
        }"#;
        match load_lie(json, 4) {
            Err(Error::Validation { .. }) => {}
            other => panic!(
                "expected Validation error, got {:?}",
                other.map(|g| g.name().to_string())
            ),
        }
    }

    #[test]
    fn antisymmetry_violation_is_validation_error() {
        // [x, x] must vanish for an even generator
        let json = r#"{
            "kind": "lie",
            "generators": [{"name": "x", "degree": 0, "weight": 1},
                           {"name": "z", "degree": 0, "weight": 2}],
            "brackets": [{"left": "x", "right": "x", "value": [{"coeff": "1", "gen": "z"}]}]
        }"#;
        match load_lie(json, 4) {
            Err(Error::Validation { .. }) => {}
            other => panic!(
                "expected Validation error, got {:?}",
                other.map(|g| g.name().to_string())
            ),
        }
    }

    #[test]
    fn load_model_with_unit() {
        let json = r#"{
            "kind": "model",
            "name": "s1",
            "basis": [{"name": "1", "degree": 0}, {"name": "e", "degree": -1}],
            "products": [
                {"left": "1", "right": "1", "value": [{"coeff": "1", "elem": "1"}]},
                {"left": "1", "right": "e", "value": [{"coeff": "1", "elem": "e"}]},
                {"left": "e", "right": "1", "value": [{"coeff": "1", "elem": "e"}]}
            ]
        }"#;
        let m = load_model(json).unwrap();
        assert_eq!(m.carrier().space().total_dim(), 2);
    }

    #[test]
    fn load_simplicial_point() {
        let json = r#"{
            "kind": "simplicial",
            "levels": [["*"], ["*"], ["*"]],
            "faces": [[], [[0], [0]], [[0], [0], [0]]],
            "degeneracies": [[[0]], [[0], [0]]]
        }"#;
        let x = load_simplicial(json).unwrap();
        assert_eq!(x.level_count(), 3);
    }
}
