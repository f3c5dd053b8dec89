//! Orchestrated verification: every calculational claim is run as two or
//! more independent routes producing Betti tables, compared slotwise on an
//! explicit weight window, with machine-readable reports.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{ce_cochains, enveloping, sym_algebra, GradedSpacePresentation};
use crate::bar::{cyclic_bar, relative_tensor};
use crate::complexes::{BettiTable, Slot};
use crate::error::Error;
use crate::excision::check_independence;
use crate::freeconf::{check_bar_free, check_splits, conf_labeled_homology, free_en_dims, sym_dims};
use crate::lie::{ce_chains, mapping_lie};
use crate::model::{circle_closed, euclidean};
use crate::presets::{algebra_preset, lie_preset, LIE_PRESETS};
use crate::simplicial::{builtin_model, space_tensor};

/// One verified claim: named routes, the window, and the outcome, carrying
/// the full tables so a failure is reproducible from the report alone.
#[derive(Clone, Debug, Serialize)]
pub struct TheoremCheck {
    pub id: String,
    pub max_weight: i64,
    pub routes: Vec<String>,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_divergence: Option<Divergence>,
    pub tables: BTreeMap<String, BettiTable>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Divergence {
    pub route_a: String,
    pub route_b: String,
    pub weight: i64,
    pub degree: i64,
    pub dim_a: usize,
    pub dim_b: usize,
}

impl TheoremCheck {
    pub fn pass(&self) -> bool {
        self.status == "PASS"
    }

    fn from_routes(
        id: impl Into<String>,
        routes: Vec<(String, BettiTable)>,
        max_weight: i64,
    ) -> Result<Self, Error> {
        let report = check_independence(&routes, max_weight)?;
        let first = report
            .comparisons
            .iter()
            .find_map(|c| {
                c.divergence.map(|(slot, a, b)| Divergence {
                    route_a: c.left.clone(),
                    route_b: c.right.clone(),
                    weight: slot.weight,
                    degree: slot.degree,
                    dim_a: a,
                    dim_b: b,
                })
            });
        Ok(TheoremCheck {
            id: id.into(),
            max_weight,
            routes: routes.iter().map(|(n, _)| n.clone()).collect(),
            status: if report.pass { "PASS" } else { "FAIL" }.into(),
            first_divergence: first,
            tables: routes.into_iter().collect(),
        })
    }
}

/// A full verification run.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub max_weight: i64,
    pub pass: bool,
    pub checks: Vec<TheoremCheck>,
}

// ---------------------------------------------------------------------------
// individual theorem checks
// ---------------------------------------------------------------------------

fn generators(dim_v: usize) -> GradedSpacePresentation {
    let names = ["x", "y", "z"];
    GradedSpacePresentation {
        generators: (0..dim_v)
            .map(|i| crate::algebra::Generator {
                name: names[i].to_string(),
                degree: 0,
                weight: 1,
            })
            .collect(),
        relations: Vec::new(),
    }
}

/// Circle = Hochschild: the cyclic bar complex, the bimodule bar
/// construction over `A (x) A^op`, and (for commutative coefficients) the
/// simplicial circle tensor all compute the same table.
pub fn run_circle_hochschild(algebra_name: &str, max_weight: i64) -> Result<TheoremCheck, Error> {
    let a = algebra_preset(algebra_name, max_weight)?;
    let mut routes = vec![(
        "cyclic bar".to_string(),
        cyclic_bar(&a, max_weight)?.homology_all()?,
    )];
    {
        let (enveloping_algebra, right, left) = crate::bar::hochschild_bimodule(&a)?;
        routes.push((
            "bimodule bar over A(x)A^op".to_string(),
            relative_tensor(&right, &enveloping_algebra, &left, max_weight)?,
        ));
    }
    if a.commutative() {
        let circle = builtin_model("circle", max_weight)?;
        routes.push((
            "simplicial circle tensor".to_string(),
            space_tensor(&circle, &a, max_weight)?.homology_all()?,
        ));
    }
    TheoremCheck::from_routes(
        format!("circle-hochschild:{algebra_name}"),
        routes,
        max_weight,
    )
}

/// The commutative tensor formula: the simplicial tensor of a space with a
/// free commutative algebra has the dimensions of `Sym(H(X) (x) V)`.
pub fn run_sym_tensor(model_name: &str, dim_v: usize, max_weight: i64) -> Result<TheoremCheck, Error> {
    let v = generators(dim_v);
    let a = sym_algebra(&v, max_weight)?;
    let x = builtin_model(model_name, max_weight)?;
    let computed = space_tensor(&x, &a, max_weight)?.homology_all()?;
    // rational homology tables of the built-in models
    let h_x: Vec<(i64, usize)> = match model_name {
        "point" | "interval" => vec![(0, 1)],
        "circle" => vec![(0, 1), (1, 1)],
        "sphere2" => vec![(0, 1), (2, 1)],
        "torus" => vec![(0, 1), (1, 2), (2, 1)],
        other => {
            return Err(Error::UnknownModel {
                name: other.to_string(),
            })
        }
    };
    let mut generator_table = BettiTable::new();
    for (degree, dim) in h_x {
        generator_table.add(Slot::new(1, degree), dim * dim_v);
    }
    let closed_form = sym_dims(&generator_table, max_weight)?;
    TheoremCheck::from_routes(
        format!("sym-tensor:{model_name}:{dim_v}"),
        vec![
            ("simplicial space tensor".into(), computed),
            ("Sym(H(X) (x) V) monomial count".into(), closed_form),
        ],
        max_weight,
    )
}

/// Bar of a free algebra: chain level for 1-disk algebras, dimension level
/// for `n >= 2`.
pub fn run_bar_free(n: u32, dim_v: usize, max_weight: i64) -> Result<TheoremCheck, Error> {
    let report = check_bar_free(n, &generators(dim_v), max_weight)?;
    Ok(report_to_check(
        format!("bar-of-free:{n}:{dim_v}"),
        report,
        max_weight,
    ))
}

/// The commutative limit of the bar-of-free statement:
/// `B Sym(V) ~ Sym(V[1])` as tables.
pub fn run_bar_sym(dim_v: usize, max_weight: i64) -> Result<TheoremCheck, Error> {
    let v = generators(dim_v);
    let a = sym_algebra(&v, max_weight)?;
    let computed = crate::bar::bar(&a, max_weight)?.homology_all()?;
    let mut shifted = BettiTable::new();
    for g in &v.generators {
        shifted.add(Slot::new(g.weight, g.degree + 1), 1);
    }
    let closed_form = sym_dims(&shifted, max_weight)?;
    TheoremCheck::from_routes(
        format!("bar-of-sym:{dim_v}"),
        vec![
            ("homology of B(Sym V)".into(), computed),
            ("Sym(V[1]) monomial count".into(), closed_form),
        ],
        max_weight,
    )
}

/// The sphere-collar splitting of free coefficients.
pub fn run_splits(n: u32, m: u32, max_weight: i64) -> Result<TheoremCheck, Error> {
    let report = check_splits(n, m, &generators(1), max_weight)?;
    Ok(report_to_check(format!("splits:{n}:{m}"), report, max_weight))
}

/// Free coefficients over Euclidean space: the configuration-space route
/// equals the free-algebra dimension engine.
pub fn run_splitting_vs_free(n: u32, dim_v: usize, max_weight: i64) -> Result<TheoremCheck, Error> {
    let v = generators(dim_v);
    let via_conf = conf_labeled_homology(&euclidean(n), n, &v, max_weight)?;
    let via_free = free_en_dims(n, &v, max_weight)?;
    TheoremCheck::from_routes(
        format!("splitting-vs-free:{n}:{dim_v}"),
        vec![
            ("CE homology over the Euclidean model".into(), via_conf),
            ("Sym of the free Lie dimension table".into(), via_free),
        ],
        max_weight,
    )
}

/// Hochschild duality: the reflected table of `HH(Ug)` equals the table of
/// `HH(CE cochains of g)`.
pub fn run_hoch_duality(lie_name: &str, max_weight: i64) -> Result<TheoremCheck, Error> {
    let g = lie_preset(lie_name, max_weight)?;
    let u = enveloping(&g, max_weight)?;
    let route_a = cyclic_bar(&u, max_weight)?.homology_all()?.reflect();
    let c = ce_cochains(&g, max_weight)?;
    let route_b = cyclic_bar(&c, max_weight)?.homology_all()?;
    TheoremCheck::from_routes(
        format!("hoch-duality:{lie_name}"),
        vec![
            ("dual of HH(U g)".into(), route_a),
            ("HH(CE cochains of g)".into(), route_b),
        ],
        max_weight,
    )
}

/// The loop-algebra model of Hochschild homology of an enveloping algebra:
/// `HH(U g)` equals CE homology of `H(S^1) (x) g`.
pub fn run_env_circle(lie_name: &str, max_weight: i64) -> Result<TheoremCheck, Error> {
    let g = lie_preset(lie_name, max_weight)?;
    let u = enveloping(&g, max_weight)?;
    let route_a = cyclic_bar(&u, max_weight)?.homology_all()?;
    let loops = mapping_lie(&circle_closed(), &g)?;
    let route_b = ce_chains(&loops, max_weight)?.homology_all()?;
    TheoremCheck::from_routes(
        format!("env-circle:{lie_name}"),
        vec![
            ("HH(U g)".into(), route_a),
            ("CE chains of the S^1 loop algebra".into(), route_b),
        ],
        max_weight,
    )
}

/// The cotensor model: `HH(CE cochains of g)` equals the CE cochain complex
/// of the circle mapping algebra, computed here as the dual of its CE
/// chains.
pub fn run_coh_circle(lie_name: &str, max_weight: i64) -> Result<TheoremCheck, Error> {
    let g = lie_preset(lie_name, max_weight)?;
    let c = ce_cochains(&g, max_weight)?;
    let route_a = cyclic_bar(&c, max_weight)?.homology_all()?;
    let loops = mapping_lie(&circle_closed(), &g)?;
    let route_b = ce_chains(&loops, max_weight)?.dual().homology_all()?;
    TheoremCheck::from_routes(
        format!("coh-circle:{lie_name}"),
        vec![
            ("HH(CE cochains of g)".into(), route_a),
            ("dual CE chains of the S^1 loop algebra".into(), route_b),
        ],
        max_weight,
    )
}

fn report_to_check(id: String, report: crate::excision::Report, max_weight: i64) -> TheoremCheck {
    let first = report.comparisons.iter().find_map(|c| {
        c.divergence.map(|(slot, a, b)| Divergence {
            route_a: c.left.clone(),
            route_b: c.right.clone(),
            weight: slot.weight,
            degree: slot.degree,
            dim_a: a,
            dim_b: b,
        })
    });
    TheoremCheck {
        id,
        max_weight,
        routes: report
            .comparisons
            .iter()
            .flat_map(|c| [c.left.clone(), c.right.clone()])
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect(),
        status: if report.pass { "PASS" } else { "FAIL" }.into(),
        first_divergence: first,
        tables: BTreeMap::new(),
    }
}

// ---------------------------------------------------------------------------
// the registry
// ---------------------------------------------------------------------------

/// All check identifiers in the default registry, in run order.
pub fn registry_ids() -> Vec<String> {
    let mut ids = Vec::new();
    for a in ["polynomial", "exterior", "truncated-poly", "tensor2"] {
        ids.push(format!("circle-hochschild:{a}"));
    }
    for x in ["point", "circle", "sphere2", "torus"] {
        for dim_v in 1..=2 {
            ids.push(format!("sym-tensor:{x}:{dim_v}"));
        }
    }
    for (n, dim_v) in [(1, 1), (1, 2), (1, 3), (2, 1), (3, 1)] {
        ids.push(format!("bar-of-free:{n}:{dim_v}"));
    }
    for dim_v in 1..=2 {
        ids.push(format!("bar-of-sym:{dim_v}"));
    }
    ids.push("splits:2:1".into());
    ids.push("splits:3:1".into());
    for n in 1..=3 {
        for dim_v in 1..=2 {
            ids.push(format!("splitting-vs-free:{n}:{dim_v}"));
        }
    }
    for g in LIE_PRESETS {
        ids.push(format!("hoch-duality:{g}"));
    }
    for g in LIE_PRESETS {
        ids.push(format!("env-circle:{g}"));
    }
    for g in LIE_PRESETS {
        ids.push(format!("coh-circle:{g}"));
    }
    ids
}

/// Runs one registry check by id.
pub fn run_check(id: &str, max_weight: i64) -> Result<TheoremCheck, Error> {
    let parts: Vec<&str> = id.split(':').collect();
    let parse_u32 = |s: &str| -> Result<u32, Error> {
        s.parse()
            .map_err(|_| Error::input(format!("bad check parameter {s:?} in {id:?}")))
    };
    match parts.as_slice() {
        ["circle-hochschild", a] => run_circle_hochschild(a, max_weight),
        ["sym-tensor", x, d] => run_sym_tensor(x, parse_u32(d)? as usize, max_weight),
        ["bar-of-free", n, d] => run_bar_free(parse_u32(n)?, parse_u32(d)? as usize, max_weight),
        ["bar-of-sym", d] => run_bar_sym(parse_u32(d)? as usize, max_weight),
        ["splits", n, m] => run_splits(parse_u32(n)?, parse_u32(m)?, max_weight),
        ["splitting-vs-free", n, d] => {
            run_splitting_vs_free(parse_u32(n)?, parse_u32(d)? as usize, max_weight)
        }
        ["hoch-duality", g] => run_hoch_duality(g, max_weight),
        ["env-circle", g] => run_env_circle(g, max_weight),
        ["coh-circle", g] => run_coh_circle(g, max_weight),
        _ => Err(Error::input(format!("unknown check id {id:?}"))),
    }
}

/// Expands selectors against the registry.  A selector matches an id when it
/// equals the id or a colon-separated prefix of it; an empty selector list
/// selects the whole registry.
pub fn select_checks(selectors: &[String]) -> Result<Vec<String>, Error> {
    let registry = registry_ids();
    if selectors.is_empty() {
        return Ok(registry);
    }
    let mut selected = Vec::new();
    for selector in selectors {
        let matched: Vec<&String> = registry
            .iter()
            .filter(|id| {
                *id == selector
                    || id.starts_with(&format!("{selector}:"))
            })
            .collect();
        if matched.is_empty() {
            return Err(Error::input(format!(
                "selector {selector:?} matches no registry check"
            )));
        }
        for id in matched {
            if !selected.contains(id) {
                selected.push(id.clone());
            }
        }
    }
    Ok(selected)
}

/// Runs the given checks (all of them deterministic and pure), optionally on
/// several worker threads; the report order follows the id list.
pub fn run_selected(ids: &[String], max_weight: i64, jobs: usize) -> Result<RunReport, Error> {
    let mut checks: Vec<TheoremCheck> = Vec::with_capacity(ids.len());
    if jobs <= 1 || ids.len() < 2 {
        for id in ids {
            checks.push(run_check(id, max_weight)?);
        }
    } else {
        let workers = jobs.min(ids.len());
        let queue = std::sync::Mutex::new(
            ids.iter().cloned().enumerate().collect::<Vec<_>>(),
        );
        let results = std::sync::Mutex::new(Vec::<(usize, Result<TheoremCheck, Error>)>::new());
        std::thread::scope(|scope| {
            for _ in 0..workers {
                scope.spawn(|| loop {
                    let job = queue.lock().unwrap().pop();
                    match job {
                        Some((i, id)) => {
                            let outcome = run_check(&id, max_weight);
                            results.lock().unwrap().push((i, outcome));
                        }
                        None => break,
                    }
                });
            }
        });
        let mut collected = results.into_inner().unwrap();
        collected.sort_by_key(|(i, _)| *i);
        for (_, outcome) in collected {
            checks.push(outcome?);
        }
    }
    let pass = checks.iter().all(TheoremCheck::pass);
    Ok(RunReport {
        max_weight,
        pass,
        checks,
    })
}
