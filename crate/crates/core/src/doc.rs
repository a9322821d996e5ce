//! JSON documents: parsing input files and emitting canonical output.
//!
//! Objects are `serde_json::Map`s, which keep keys sorted, so printing a
//! [`Value`] is byte-stable. Integers that fit in `i64` are JSON numbers;
//! larger ones are decimal strings.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::cubes::CubeSet;
use crate::error::{Error, Result};
use crate::grid::{GridConstraintSet, Point, ProductComplex, ProductIsometry, SignedAffineMap};
use crate::isometry::{AxisPath, Classification, Hyperplane, MinsetReport};
use crate::median::{verify_median, Graph, MedianGraph, SplitWall};
use crate::wallspace::{validate_wallspace, Cubulation, Wallspace};

fn bad(msg: impl Into<String>) -> Error {
    Error::Document(msg.into())
}

pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| bad(format!("malformed JSON: {e}")))
}

/// Canonical text: pretty-printed, sorted keys, trailing newline.
pub fn to_canonical(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

pub fn int(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub fn ints(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int).collect())
}

pub fn parse_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| bad(format!("expected an integer, got {n}"))),
        Value::String(s) => s.parse().map_err(|_| bad(format!("expected an integer, got {s:?}"))),
        other => Err(bad(format!("expected an integer, got {other}"))),
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field `{key}`")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(format!("`{what}` must be an array")))
}

fn string(v: &Value, what: &str) -> Result<String> {
    v.as_str()
        .map(str::to_string)
        .ok_or_else(|| bad(format!("`{what}` must be a string")))
}

fn strings(v: &Value, what: &str) -> Result<Vec<String>> {
    array(v, what)?.iter().map(|s| string(s, what)).collect()
}

pub fn point_json(p: &Point) -> Value {
    json!({"finite": p.finite, "grid": ints(&p.grid)})
}

/// A point with the finite vertex given by name.
pub fn named_point(g: &MedianGraph, p: &Point) -> Value {
    json!({"vertex": g.name(p.finite), "grid": ints(&p.grid)})
}

pub fn parse_point(g: &MedianGraph, v: &Value) -> Result<Point> {
    let name = string(field(v, "vertex")?, "vertex")?;
    let finite = g.index_of(&name).ok_or_else(|| bad(format!("unknown vertex `{name}`")))?;
    let grid = array(field(v, "grid")?, "grid")?
        .iter()
        .map(parse_int)
        .collect::<Result<_>>()?;
    Ok(Point { finite, grid })
}

// Wallspaces.

pub fn parse_wallspace(v: &Value) -> Result<Wallspace> {
    let elements = strings(field(v, "elements")?, "elements")?;
    let walls = array(field(v, "walls")?, "walls")?
        .iter()
        .map(|w| {
            let pair = array(w, "wall")?;
            if pair.len() != 2 {
                return Err(bad("a wall must be a pair of element lists"));
            }
            Ok((strings(&pair[0], "wall side")?, strings(&pair[1], "wall side")?))
        })
        .collect::<Result<Vec<_>>>()?;
    validate_wallspace(elements, &walls)
}

pub fn wallspace_json(w: &Wallspace) -> Value {
    let names = |ids: &[usize]| -> Vec<&str> { ids.iter().map(|&i| w.elements()[i].as_str()).collect() };
    json!({
        "elements": w.elements(),
        "walls": w.walls().iter().map(|wall| json!([names(&wall.a), names(&wall.b)])).collect::<Vec<_>>(),
    })
}

// Graphs.

pub fn parse_graph(v: &Value) -> Result<Graph> {
    let names = strings(field(v, "vertices")?, "vertices")?;
    let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let edges = array(field(v, "edges")?, "edges")?
        .iter()
        .map(|e| {
            let pair = strings(e, "edge")?;
            if pair.len() != 2 {
                return Err(bad("an edge must be a pair of vertex ids"));
            }
            let look = |n: &str| index.get(n).copied().ok_or_else(|| bad(format!("unknown vertex `{n}` in edge")));
            Ok((look(&pair[0])?, look(&pair[1])?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Graph::new(names, edges))
}

pub fn graph_json(g: &MedianGraph) -> Value {
    json!({
        "vertices": g.names(),
        "edges": g.edges().iter().map(|&(u, v)| json!([g.name(u), g.name(v)])).collect::<Vec<_>>(),
    })
}

/// Graph document with theta classes and the coverage of the median check.
pub fn median_report_json(g: &MedianGraph) -> Value {
    let classes: Vec<Value> = (0..g.num_classes())
        .map(|c| {
            json!(g
                .class_edges(c)
                .iter()
                .map(|&e| {
                    let (u, v) = g.edges()[e];
                    json!([g.name(u), g.name(v)])
                })
                .collect::<Vec<_>>())
        })
        .collect();
    let coverage = match g.coverage() {
        crate::median::Coverage::Exhaustive => json!("exhaustive"),
        crate::median::Coverage::Sampled { triples } => json!({"sampled_triples": triples}),
    };
    json!({
        "median": true,
        "coverage": coverage,
        "graph": graph_json(g),
        "theta_classes": classes,
    })
}

pub fn cubulation_json(w: &Wallspace, c: &Cubulation) -> Value {
    let principal: Map<String, Value> = w
        .elements()
        .iter()
        .zip(&c.principal)
        .map(|(e, &v)| (e.clone(), json!(c.graph.name(v))))
        .collect();
    json!({"graph": graph_json(&c.graph), "principal": principal})
}

pub fn walls_json(g: &MedianGraph, walls: &[SplitWall]) -> Value {
    let names = |ids: &[usize]| -> Vec<&str> { ids.iter().map(|&i| g.name(i)).collect() };
    Value::Array(walls.iter().map(|w| json!([names(&w.side_a), names(&w.side_b)])).collect())
}

/// Member list of a subalgebra document `{"graph": …, "members": […]}`.
pub fn parse_members(g: &MedianGraph, v: &Value) -> Result<Vec<usize>> {
    strings(field(v, "members")?, "members")?
        .iter()
        .map(|n| g.index_of(n).ok_or_else(|| bad(format!("unknown member `{n}`"))))
        .collect()
}

pub fn cubes_json(g: &MedianGraph, cubes: &CubeSet) -> Value {
    Value::Array(
        cubes
            .cubes()
            .iter()
            .map(|c| json!(c.corners.iter().map(|&v| g.name(v)).collect::<Vec<_>>()))
            .collect(),
    )
}

// Product complexes and isometries.

pub fn parse_complex(v: &Value) -> Result<ProductComplex> {
    let graph = verify_median(&parse_graph(field(v, "finite")?)?)?;
    let k = field(v, "grid_rank")?
        .as_u64()
        .ok_or_else(|| bad("`grid_rank` must be a non-negative integer"))?;
    Ok(ProductComplex::new(graph, k as usize))
}

pub fn complex_json(pc: &ProductComplex) -> Value {
    json!({"finite": graph_json(&pc.finite), "grid_rank": pc.grid_rank})
}

/// Isometry document; `perm` is a 1-indexed image list. Omitted parts
/// default to the identity.
pub fn parse_isometry(pc: &ProductComplex, v: &Value) -> Result<ProductIsometry> {
    let g = &pc.finite;
    let mut finite: Vec<usize> = (0..g.len()).collect();
    if let Some(map) = v.get("finite_map") {
        let map = map.as_object().ok_or_else(|| bad("`finite_map` must be an object"))?;
        for (from, to) in map {
            let to = to.as_str().ok_or_else(|| bad("`finite_map` values must be vertex ids"))?;
            let a = g.index_of(from).ok_or_else(|| bad(format!("unknown vertex `{from}`")))?;
            let b = g.index_of(to).ok_or_else(|| bad(format!("unknown vertex `{to}`")))?;
            finite[a] = b;
        }
    }
    let k = pc.grid_rank;
    let perm = match v.get("perm") {
        Some(p) => array(p, "perm")?
            .iter()
            .map(|x| match x.as_u64() {
                Some(i) if i >= 1 => Ok(i as usize - 1),
                _ => Err(bad("`perm` entries must be integers starting at 1")),
            })
            .collect::<Result<Vec<_>>>()?,
        None => (0..k).collect(),
    };
    let signs = match v.get("signs") {
        Some(s) => array(s, "signs")?
            .iter()
            .map(|x| match x.as_i64() {
                Some(1) => Ok(1i8),
                Some(-1) => Ok(-1i8),
                _ => Err(Error::InvalidGridMap("signs must be 1 or -1".into())),
            })
            .collect::<Result<Vec<_>>>()?,
        None => vec![1; k],
    };
    let trans = match v.get("trans") {
        Some(t) => array(t, "trans")?.iter().map(parse_int).collect::<Result<Vec<_>>>()?,
        None => vec![BigInt::from(0); k],
    };
    let iso = ProductIsometry::new(finite, SignedAffineMap::new(perm, signs, trans)?);
    pc.check_isometry(&iso)?;
    Ok(iso)
}

pub fn isometry_json(pc: &ProductComplex, g: &ProductIsometry) -> Value {
    let map: Map<String, Value> = g
        .finite
        .iter()
        .enumerate()
        .map(|(v, &w)| (pc.finite.name(v).to_string(), json!(pc.finite.name(w))))
        .collect();
    json!({
        "finite_map": map,
        "perm": g.grid.perm().iter().map(|&p| p + 1).collect::<Vec<_>>(),
        "signs": g.grid.signs(),
        "trans": ints(g.grid.trans()),
    })
}

/// Action document: complex plus generators keyed by name (sorted).
pub fn parse_action(v: &Value) -> Result<(ProductComplex, Vec<(String, ProductIsometry)>)> {
    let pc = parse_complex(field(v, "complex")?)?;
    let gens = field(v, "generators")?
        .as_object()
        .ok_or_else(|| bad("`generators` must be an object"))?
        .iter()
        .map(|(n, g)| Ok((n.clone(), parse_isometry(&pc, g)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok((pc, gens))
}

pub fn action_json(pc: &ProductComplex, gens: &[(String, ProductIsometry)]) -> Value {
    let g: Map<String, Value> = gens.iter().map(|(n, g)| (n.clone(), isometry_json(pc, g))).collect();
    json!({"complex": complex_json(pc), "generators": g})
}

// Reports.

fn hyperplane_json(pc: &ProductComplex, h: &Hyperplane) -> Value {
    match h {
        Hyperplane::Finite(c) => {
            let (u, v) = pc.finite.edges()[pc.finite.class_edges(*c)[0]];
            json!({"finite_class": c, "dual_to": [pc.finite.name(u), pc.finite.name(v)]})
        }
        Hyperplane::Grid { coord, position } => {
            json!({"grid_coordinate": coord + 1, "doubled_position": int(position)})
        }
    }
}

pub fn axis_json(pc: &ProductComplex, a: &AxisPath) -> Value {
    json!({
        "base": named_point(&pc.finite, &a.base),
        "steps": a.steps.iter().map(|p| named_point(&pc.finite, p)).collect::<Vec<_>>(),
    })
}

pub fn classification_json(pc: &ProductComplex, c: &Classification) -> Value {
    let witness = match c {
        Classification::Elliptic(q) => json!({
            "cube": {
                "finite": q.finite.iter().map(|&v| pc.finite.name(v)).collect::<Vec<_>>(),
                "grid_lo": ints(&q.grid_lo),
                "grid_hi": ints(&q.grid_hi),
                "dim": q.dim(),
            }
        }),
        Classification::Inverting(s) => json!({
            "power": s.power,
            "hyperplane": hyperplane_json(pc, &s.hyperplane),
        }),
        Classification::Loxodromic(a) => json!({"axis": axis_json(pc, a)}),
    };
    json!({"kind": c.kind(), "witness": witness})
}

pub fn constraints_json(set: &GridConstraintSet) -> Value {
    let cycles: Vec<Value> = set
        .cycles
        .iter()
        .map(|c| {
            let steps: Vec<Value> = c
                .steps
                .iter()
                .map(|f| {
                    json!({
                        "coefs": f.coefs.iter().map(|&(i, a)| json!([i + 1, a])).collect::<Vec<_>>(),
                        "constant": int(&f.constant),
                    })
                })
                .collect();
            let mut params = Map::new();
            params.insert("min".into(), int(&c.min));
            match c.kind {
                crate::grid::ConstraintKind::Linear => {
                    params.insert("steps".into(), Value::Array(steps));
                    params.insert("weights".into(), json!(c.weights));
                    params.insert("direction".into(), json!(c.direction));
                }
                _ => {
                    params.insert(
                        "points".into(),
                        Value::Array(c.points.iter().map(|p| ints(p)).collect()),
                    );
                }
            }
            json!({
                "id": c.id,
                "coords": c.coords.iter().map(|&i| i + 1).collect::<Vec<_>>(),
                "kind": c.kind.as_str(),
                "parameters": params,
            })
        })
        .collect();
    json!({"rank": set.rank, "cycles": cycles})
}

pub fn minset_json(pc: &ProductComplex, m: &MinsetReport) -> Value {
    json!({
        "norm": int(&m.norm),
        "finite_min": m.finite_min,
        "finite_part": m.finite_part.iter().map(|&v| pc.finite.name(v)).collect::<Vec<_>>(),
        "grid_part": constraints_json(&m.grid_part),
    })
}
