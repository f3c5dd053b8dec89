//! The gluing calculus: a small expression grammar for manifold
//! decompositions, an evaluator lowering gluings to two-sided bar
//! constructions, and decomposition-independence checks.
//!
//! The engine manipulates algebraic values, not manifolds: leaves are named
//! pieces bound to algebras or modules, `glue(L; A; R)` is the relative
//! tensor product over `A`, and `circle(A)` is the Hochschild bimodule bar
//! construction over `A (x) A^op`.  Nested gluings keep their residual outer
//! actions, so reassociated decompositions can be evaluated and compared.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{BasisRef, PairMap, Terms, WgAlgebra};
use crate::bar::{
    bar_complex_indexed, hochschild_bimodule, regular_action, BarSide, Side, WgModule,
};
use crate::complexes::{BettiTable, ChainComplex, Slot};
use crate::error::Error;
use crate::scalar::Rational;

/// Abstract syntax of a gluing expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GluingExpr {
    Leaf(String),
    Glue {
        left: Box<GluingExpr>,
        middle: Box<GluingExpr>,
        right: Box<GluingExpr>,
    },
    Circle {
        algebra: Box<GluingExpr>,
    },
}

impl std::fmt::Display for GluingExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GluingExpr::Leaf(name) => write!(f, "{name}"),
            GluingExpr::Glue {
                left,
                middle,
                right,
            } => write!(f, "glue({left}; {middle}; {right})"),
            GluingExpr::Circle { algebra } => write!(f, "circle({algebra})"),
        }
    }
}

/// Recursive-descent parser; offsets in errors are 1-based.
pub fn parse_gluing(text: &str) -> Result<GluingExpr, Error> {
    let mut parser = Parser {
        chars: text.char_indices().collect(),
        pos: 0,
        len: text.len(),
    };
    let expr = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.chars.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(expr)
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn offset(&self) -> usize {
        // 1-based byte offset of the current position
        self.chars.get(self.pos).map_or(self.len + 1, |(i, _)| i + 1)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::SyntaxError {
            offset: self.offset(),
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, token: char) -> Result<(), Error> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == token => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected {token:?}, found {c:?}"))),
            None => Err(self.error(format!("expected {token:?}, found end of input"))),
        }
    }

    fn identifier(&mut self) -> Result<String, Error> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_alphanumeric() || c == '_' || c == '-') {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a name"));
        }
        Ok(self.chars[start..self.pos].iter().map(|(_, c)| c).collect())
    }

    fn expr(&mut self) -> Result<GluingExpr, Error> {
        let name = self.identifier()?;
        self.skip_ws();
        let is_call = self.peek() == Some('(');
        match (name.as_str(), is_call) {
            ("circle", true) => {
                self.expect('(')?;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(GluingExpr::Circle {
                    algebra: Box::new(inner),
                })
            }
            ("glue", true) => {
                self.expect('(')?;
                let left = self.expr()?;
                self.expect(';')?;
                let middle = self.expr()?;
                self.expect(';')?;
                let right = self.expr()?;
                self.expect(')')?;
                Ok(GluingExpr::Glue {
                    left: Box::new(left),
                    middle: Box::new(middle),
                    right: Box::new(right),
                })
            }
            (_, true) => Err(self.error(format!("unknown combinator {name:?}"))),
            (_, false) => Ok(GluingExpr::Leaf(name)),
        }
    }
}

/// A piece binding: an algebra or a one-sided module.
#[derive(Clone)]
pub enum Bound {
    Algebra(Arc<WgAlgebra>),
    Module(Arc<WgModule>),
}

/// Names of pieces bound to algebraic values.
#[derive(Clone, Default)]
pub struct CoefficientAssignment {
    map: BTreeMap<String, Bound>,
}

impl CoefficientAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind_algebra(&mut self, name: impl Into<String>, algebra: Arc<WgAlgebra>) {
        self.map.insert(name.into(), Bound::Algebra(algebra));
    }

    pub fn bind_module(&mut self, name: impl Into<String>, module: Arc<WgModule>) {
        self.map.insert(name.into(), Bound::Module(module));
    }

    fn get(&self, name: &str) -> Result<&Bound, Error> {
        self.map.get(name).ok_or_else(|| Error::RoleMismatch {
            detail: format!("piece {name:?} is not bound"),
        })
    }
}

/// The value of a sub-expression: a complex with whatever residual module
/// structures survive for an enclosing gluing.
struct EvalValue {
    complex: ChainComplex,
    /// Set when the value is literally an algebra (a leaf).
    algebra: Option<Arc<WgAlgebra>>,
    /// Residual left action of an algebra, keyed `(a, v)`.
    left_action: Option<(Arc<WgAlgebra>, PairMap)>,
    /// Residual right action, keyed `(v, a)`.
    right_action: Option<(Arc<WgAlgebra>, PairMap)>,
}

/// Evaluates a gluing expression to its Betti table.
pub fn evaluate(
    expr: &GluingExpr,
    assignment: &CoefficientAssignment,
    max_weight: i64,
) -> Result<BettiTable, Error> {
    let value = eval_value(expr, assignment, max_weight)?;
    value.complex.homology_all()
}

fn eval_value(
    expr: &GluingExpr,
    assignment: &CoefficientAssignment,
    max_weight: i64,
) -> Result<EvalValue, Error> {
    match expr {
        GluingExpr::Leaf(name) => match assignment.get(name)? {
            Bound::Algebra(a) => Ok(EvalValue {
                complex: a.carrier().truncate_abs_weight(max_weight),
                algebra: Some(Arc::clone(a)),
                left_action: Some((Arc::clone(a), regular_action(a, Side::Left))),
                right_action: Some((Arc::clone(a), regular_action(a, Side::Right))),
            }),
            Bound::Module(m) => {
                let (left, right) = match m.side() {
                    Side::Left => (
                        Some((Arc::clone(m.algebra()), m.action_map().clone())),
                        None,
                    ),
                    Side::Right => (
                        None,
                        Some((Arc::clone(m.algebra()), m.action_map().clone())),
                    ),
                };
                Ok(EvalValue {
                    complex: m.carrier().truncate_abs_weight(max_weight),
                    algebra: None,
                    left_action: left,
                    right_action: right,
                })
            }
        },
        GluingExpr::Circle { algebra } => {
            let inner = eval_value(algebra, assignment, max_weight)?;
            let a = inner.algebra.ok_or_else(|| Error::RoleMismatch {
                detail: format!("circle needs an algebra, got {algebra}"),
            })?;
            let (enveloping, right, left) = hochschild_bimodule(&a)?;
            let (complex, _) = bar_complex_indexed(
                &enveloping,
                BarSide {
                    carrier: right.carrier(),
                    action: right.action_map(),
                },
                BarSide {
                    carrier: left.carrier(),
                    action: left.action_map(),
                },
                max_weight,
            )?;
            Ok(EvalValue {
                complex,
                algebra: None,
                left_action: None,
                right_action: None,
            })
        }
        GluingExpr::Glue {
            left,
            middle,
            right,
        } => {
            let middle_value = eval_value(middle, assignment, max_weight)?;
            let a = middle_value.algebra.ok_or_else(|| Error::RoleMismatch {
                detail: format!("glue middle must be an algebra, got {middle}"),
            })?;
            let left_value = eval_value(left, assignment, max_weight)?;
            let right_value = eval_value(right, assignment, max_weight)?;
            let (_, right_act) =
                left_value
                    .right_action
                    .as_ref()
                    .filter(|(p, _)| Arc::ptr_eq(p, &a))
                    .ok_or_else(|| Error::RoleMismatch {
                        detail: format!("{left} is not a right module over {middle}"),
                    })?;
            let (_, left_act) =
                right_value
                    .left_action
                    .as_ref()
                    .filter(|(p, _)| Arc::ptr_eq(p, &a))
                    .ok_or_else(|| Error::RoleMismatch {
                        detail: format!("{right} is not a left module over {middle}"),
                    })?;
            let (complex, index) = bar_complex_indexed(
                &a,
                BarSide {
                    carrier: &left_value.complex,
                    action: right_act,
                },
                BarSide {
                    carrier: &right_value.complex,
                    action: left_act,
                },
                max_weight,
            )?;
            // lift the outer residual actions through the bar construction
            let lifted_left = left_value.left_action.as_ref().map(|(p, action)| {
                (Arc::clone(p), lift_action_left(p, action, &index))
            });
            let lifted_right = right_value.right_action.as_ref().map(|(q, action)| {
                (Arc::clone(q), lift_action_right(q, action, &index))
            });
            Ok(EvalValue {
                complex,
                algebra: None,
                left_action: lifted_left,
                right_action: lifted_right,
            })
        }
    }
}

/// Lifts a left action on the leftmost bar factor to the total complex.
fn lift_action_left(
    p: &Arc<WgAlgebra>,
    action: &PairMap,
    index: &crate::bar::BarIndex,
) -> PairMap {
    let mut lifted = PairMap::new();
    let w = p.max_weight();
    for ((level, tuple), bar_ref) in &index.of_tuple {
        for &a in &p.augmentation_ideal() {
            if (a.slot.weight + bar_ref.slot.weight).abs() > w {
                continue;
            }
            let source = tuple[0];
            let terms = action.get(a, source);
            if terms.is_empty() {
                continue;
            }
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (i2, c) in terms {
                let mut target = tuple.clone();
                target[0] = BasisRef::new(a.slot.add(source.slot), *i2);
                let target_ref = index.of_tuple[&(*level, target)];
                let entry = acc.entry(target_ref.index).or_insert_with(Rational::zero);
                *entry += c;
            }
            let terms: Terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            lifted.set(a, *bar_ref, terms);
        }
    }
    lifted
}

/// Lifts a right action on the rightmost bar factor to the total complex.
fn lift_action_right(
    q: &Arc<WgAlgebra>,
    action: &PairMap,
    index: &crate::bar::BarIndex,
) -> PairMap {
    let mut lifted = PairMap::new();
    let w = q.max_weight();
    for ((level, tuple), bar_ref) in &index.of_tuple {
        for &a in &q.augmentation_ideal() {
            if (a.slot.weight + bar_ref.slot.weight).abs() > w {
                continue;
            }
            let last = tuple.len() - 1;
            let source = tuple[last];
            let terms = action.get(source, a);
            if terms.is_empty() {
                continue;
            }
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (i2, c) in terms {
                let mut target = tuple.clone();
                target[last] = BasisRef::new(source.slot.add(a.slot), *i2);
                let target_ref = index.of_tuple[&(*level, target)];
                let entry = acc.entry(target_ref.index).or_insert_with(Rational::zero);
                *entry += c;
            }
            let terms: Terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            lifted.set(*bar_ref, a, terms);
        }
    }
    lifted
}

// ---------------------------------------------------------------------------
// independence reports
// ---------------------------------------------------------------------------

/// One pairwise comparison of two named routes.
#[derive(Clone, Debug, serde::Serialize)]
pub struct RouteComparison {
    pub left: String,
    pub right: String,
    /// First disagreeing slot with both dimensions, when any.
    pub divergence: Option<(Slot, usize, usize)>,
}

/// Result of comparing several routes to the same invariant on a window.
#[derive(Clone, Debug, serde::Serialize)]
pub struct Report {
    pub max_weight: i64,
    pub pass: bool,
    pub comparisons: Vec<RouteComparison>,
}

impl Report {
    pub fn describe(&self) -> String {
        if self.pass {
            return format!("PASS (|weight| <= {})", self.max_weight);
        }
        let failing: Vec<String> = self
            .comparisons
            .iter()
            .filter_map(|c| {
                c.divergence.map(|(slot, a, b)| {
                    format!(
                        "{} vs {} first diverge at ({}, {}): {a} != {b}",
                        c.left, c.right, slot.weight, slot.degree
                    )
                })
            })
            .collect();
        format!("FAIL: {}", failing.join("; "))
    }
}

/// Compares all route pairs slotwise on the weight window.  Disagreement is
/// a result, not an error.
pub fn check_independence(
    routes: &[(String, BettiTable)],
    max_weight: i64,
) -> Result<Report, Error> {
    if routes.len() < 2 {
        return Err(Error::input("independence checks need at least 2 routes"));
    }
    let mut comparisons = Vec::new();
    for i in 0..routes.len() {
        for j in (i + 1)..routes.len() {
            let divergence = routes[i].1.first_divergence(&routes[j].1, max_weight);
            comparisons.push(RouteComparison {
                left: routes[i].0.clone(),
                right: routes[j].0.clone(),
                divergence,
            });
        }
    }
    let pass = comparisons.iter().all(|c| c.divergence.is_none());
    Ok(Report {
        max_weight,
        pass,
        comparisons,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{sym_algebra, tensor_algebra, GradedSpacePresentation};
    use crate::bar::cyclic_bar;

    fn gens(list: &[(&'static str, i64, i64)]) -> GradedSpacePresentation {
        GradedSpacePresentation::from_generators(list.iter().copied())
    }

    #[test]
    fn parse_circle_and_glue() {
        assert_eq!(
            parse_gluing("circle(A)").unwrap(),
            GluingExpr::Circle {
                algebra: Box::new(GluingExpr::Leaf("A".into()))
            }
        );
        let glued = parse_gluing("glue(M1; A; M2)").unwrap();
        match glued {
            GluingExpr::Glue {
                left,
                middle,
                right,
            } => {
                assert_eq!(*left, GluingExpr::Leaf("M1".into()));
                assert_eq!(*middle, GluingExpr::Leaf("A".into()));
                assert_eq!(*right, GluingExpr::Leaf("M2".into()));
            }
            other => panic!("unexpected parse {other:?}"),
        }
        // nesting and whitespace
        let nested = parse_gluing("glue( circle(A) ; B ; glue(C; D; E) )");
        assert!(nested.is_ok());
    }

    #[test]
    fn parse_error_offset_is_one_based() {
        match parse_gluing("glue(M1; A") {
            Err(Error::SyntaxError { offset, .. }) => assert_eq!(offset, 11),
            other => panic!("expected SyntaxError, got {other:?}"),
        }
        match parse_gluing("") {
            Err(Error::SyntaxError { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("expected SyntaxError, got {other:?}"),
        }
    }

    #[test]
    fn evaluate_circle_is_hochschild() {
        let a = sym_algebra(&gens(&[("x", 0, 1)]), 3).unwrap();
        let mut binding = CoefficientAssignment::new();
        binding.bind_algebra("A", Arc::clone(&a));
        let expr = parse_gluing("circle(A)").unwrap();
        let via_circle = evaluate(&expr, &binding, 3).unwrap();
        let via_cyclic = cyclic_bar(&a, 3).unwrap().homology_all().unwrap();
        assert_eq!(via_circle, via_cyclic);
    }

    #[test]
    fn evaluate_interval_gluing_collapses() {
        // two half-open intervals glued over the open middle: the result is
        // the algebra itself
        let a = sym_algebra(&gens(&[("x", 0, 1)]), 3).unwrap();
        let mut binding = CoefficientAssignment::new();
        binding.bind_algebra("A", Arc::clone(&a));
        let expr = parse_gluing("glue(A; A; A)").unwrap();
        let result = evaluate(&expr, &binding, 3).unwrap();
        assert_eq!(result, a.carrier().space().dim_table());
    }

    #[test]
    fn evaluate_unbound_piece_is_role_mismatch() {
        let expr = parse_gluing("circle(B)").unwrap();
        match evaluate(&expr, &CoefficientAssignment::new(), 3) {
            Err(Error::RoleMismatch { .. }) => {}
            other => panic!("expected RoleMismatch, got {other:?}"),
        }
    }

    #[test]
    fn circle_of_non_algebra_is_role_mismatch() {
        let a = sym_algebra(&gens(&[("x", 0, 1)]), 2).unwrap();
        let mut binding = CoefficientAssignment::new();
        binding.bind_algebra("A", Arc::clone(&a));
        let expr = parse_gluing("circle(glue(A; A; A))").unwrap();
        match evaluate(&expr, &binding, 2) {
            Err(Error::RoleMismatch { .. }) => {}
            other => panic!("expected RoleMismatch, got {other:?}"),
        }
    }

    #[test]
    fn reassociation_of_fourfold_gluing() {
        // glue(A; A; glue(A; A; A)) and glue(glue(A; A; A); A; A) both
        // resolve A (x)_A A (x)_A A ~ A
        let a = tensor_algebra(&gens(&[("x", 0, 1), ("y", 0, 1)]), 3).unwrap();
        let mut binding = CoefficientAssignment::new();
        binding.bind_algebra("A", Arc::clone(&a));
        let left_first = evaluate(
            &parse_gluing("glue(glue(A; A; A); A; A)").unwrap(),
            &binding,
            3,
        )
        .unwrap();
        let right_first = evaluate(
            &parse_gluing("glue(A; A; glue(A; A; A))").unwrap(),
            &binding,
            3,
        )
        .unwrap();
        assert_eq!(left_first, right_first);
        assert_eq!(left_first, a.carrier().space().dim_table());
    }

    #[test]
    fn independence_report_negative_control() {
        let a = BettiTable::from_entries([(Slot::new(1, 0), 1)]);
        let b = a.shift_degrees(1);
        let report = check_independence(
            &[("a".into(), a.clone()), ("shifted".into(), b)],
            4,
        )
        .unwrap();
        assert!(!report.pass);
        let divergence = report.comparisons[0].divergence.unwrap();
        assert_eq!(divergence.0, Slot::new(1, 0));
        let ok = check_independence(&[("a".into(), a.clone()), ("a2".into(), a)], 4).unwrap();
        assert!(ok.pass);
        assert!(check_independence(&[("solo".into(), BettiTable::new())], 4).is_err());
    }
}
