//! JSON formats for images and maps, and the built-in image literals.
//!
//! Image: `{"format":"dighom-image-v1","dim":n,"adjacency":"c1"|…|"explicit",
//! "points":[[…],…],"edges":[[i,j],…]}` with `edges` present iff explicit.
//! Map: `{"format":"dighom-map-v1","domain":…,"codomain":…,"assignment":[…]}`
//! where domain and codomain are image objects or literal strings.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::image::{
    box_image, complete_graph, cycle_image, embed_cycle, isolated_points, mss6, unit_cube, Adjacency, DigitalImage,
    Point,
};
use crate::maps::DigitalMap;

pub const IMAGE_FORMAT: &str = "dighom-image-v1";
pub const MAP_FORMAT: &str = "dighom-map-v1";

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ImageDoc {
    format: String,
    dim: usize,
    adjacency: String,
    points: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edges: Option<Vec<[usize; 2]>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapDoc {
    format: String,
    domain: Value,
    codomain: Value,
    assignment: Vec<usize>,
}

/// Normal products are written with an explicit edge list.
pub fn image_to_json(x: &DigitalImage) -> Value {
    let (adjacency, edges) = match x.adjacency() {
        Adjacency::Ck(k) => (format!("c{k}"), None),
        _ => ("explicit".to_string(), Some(x.edges().map(|(i, j)| [i, j]).collect())),
    };
    let doc = ImageDoc {
        format: IMAGE_FORMAT.into(),
        dim: x.dim(),
        adjacency,
        points: x.points().iter().map(|p| p.0.clone()).collect(),
        edges,
    };
    serde_json::to_value(doc).expect("serializable")
}

pub fn image_from_json(v: &Value) -> Result<DigitalImage> {
    let doc: ImageDoc = serde_json::from_value(v.clone())?;
    if doc.format != IMAGE_FORMAT {
        return Err(Error::Format(format!("expected format {IMAGE_FORMAT:?}, got {:?}", doc.format)));
    }
    if let Some(p) = doc.points.iter().find(|p| p.len() != doc.dim) {
        return Err(Error::Format(format!(
            "point {p:?} has {} coordinates but dim is {}",
            p.len(),
            doc.dim
        )));
    }
    let points: Vec<Point> = doc.points.into_iter().map(Point).collect();
    if doc.adjacency == "explicit" {
        let edges = doc
            .edges
            .ok_or_else(|| Error::Format("explicit adjacency needs an edges list".into()))?;
        let edges: Vec<(usize, usize)> = edges.into_iter().map(|[i, j]| (i, j)).collect();
        return DigitalImage::explicit(points, &edges);
    }
    if doc.edges.is_some() {
        return Err(Error::Format(format!("edges given with {} adjacency", doc.adjacency)));
    }
    let k: usize = doc
        .adjacency
        .strip_prefix('c')
        .and_then(|k| k.parse().ok())
        .ok_or_else(|| Error::Format(format!("unknown adjacency {:?}", doc.adjacency)))?;
    DigitalImage::lattice(points, k)
}

fn literal_number(name: &str, s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::InvalidArgument(format!("{name}: expected a nonnegative integer, got {s:?}")))
}

/// Names accepted by [`image_literal`], for usage text.
pub const LITERAL_SYNTAX: &str =
    "cycle:N, embed-cycle:M, I<N>, MSS6, MSS6-prime, point, points:K, box:A:N, simplex:Q";

/// Built-in images:
/// `cycle:n` (abstract C_n), `embed-cycle:m` (C_m inside (ℤⁿ,c₁)), `I<n>`
/// (the unit cube), `MSS6`, `MSS6-prime` (= I3), `point`, `points:k`,
/// `box:a:n` ([0,a]ⁿ with c₁) and `simplex:q` (the complete graph on q+1 points).
pub fn image_literal(s: &str) -> Result<DigitalImage> {
    let mut parts = s.split(':');
    let head = parts.next().unwrap_or_default();
    let args: Vec<&str> = parts.collect();
    let arity = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("{head} takes {n} argument(s): {s:?}")))
        }
    };
    match head {
        "cycle" => {
            arity(1)?;
            cycle_image(literal_number(head, args[0])?)
        }
        "embed-cycle" => {
            arity(1)?;
            embed_cycle(literal_number(head, args[0])?)
        }
        "MSS6" => {
            arity(0)?;
            Ok(mss6())
        }
        "MSS6-prime" => {
            arity(0)?;
            unit_cube(3)
        }
        "point" => {
            arity(0)?;
            Ok(isolated_points(1))
        }
        "points" => {
            arity(1)?;
            Ok(isolated_points(literal_number(head, args[0])?))
        }
        "box" => {
            arity(2)?;
            let a = literal_number(head, args[0])?;
            let n = literal_number(head, args[1])?;
            if n == 0 {
                return Err(Error::InvalidArgument("box needs dimension >= 1".into()));
            }
            box_image(a as i64, n, 1)
        }
        "simplex" => {
            arity(1)?;
            Ok(complete_graph(literal_number(head, args[0])? + 1))
        }
        _ if head.len() > 1 && head.starts_with('I') && args.is_empty() => {
            let n = literal_number("I", &head[1..])?;
            if n == 0 {
                return Err(Error::InvalidArgument("I0 is not a lattice image; use point".into()));
            }
            unit_cube(n)
        }
        _ => Err(Error::InvalidArgument(format!(
            "unknown image {s:?}; expected a JSON file or one of {LITERAL_SYNTAX}"
        ))),
    }
}

/// A path to an image JSON file, or else a literal.
pub fn load_image(input: &str) -> Result<DigitalImage> {
    if Path::new(input).is_file() {
        let v: Value = serde_json::from_str(&std::fs::read_to_string(input)?)?;
        return image_from_json(&v);
    }
    image_literal(input)
}

fn image_field(v: &Value) -> Result<DigitalImage> {
    match v {
        Value::String(s) => image_literal(s),
        other => image_from_json(other),
    }
}

pub fn map_to_json(f: &DigitalMap) -> Value {
    let doc = MapDoc {
        format: MAP_FORMAT.into(),
        domain: image_to_json(f.domain()),
        codomain: image_to_json(f.codomain()),
        assignment: f.assignment().to_vec(),
    };
    serde_json::to_value(doc).expect("serializable")
}

pub fn map_from_json(v: &Value) -> Result<DigitalMap> {
    let doc: MapDoc = serde_json::from_value(v.clone())?;
    if doc.format != MAP_FORMAT {
        return Err(Error::Format(format!("expected format {MAP_FORMAT:?}, got {:?}", doc.format)));
    }
    let domain = Arc::new(image_field(&doc.domain)?);
    let codomain = if doc.codomain == doc.domain {
        domain.clone()
    } else {
        Arc::new(image_field(&doc.codomain)?)
    };
    DigitalMap::new(domain, codomain, doc.assignment)
}

pub fn load_map(path: &str) -> Result<DigitalMap> {
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    map_from_json(&v)
}

/// Indented JSON with arrays of scalars kept on one line, plus a trailing
/// newline.
pub fn to_pretty(v: &Value) -> String {
    let mut out = String::new();
    write_pretty(v, 0, &mut out);
    out.push('\n');
    out
}

fn is_flat_scalars(v: &Value) -> bool {
    v.as_array().is_some_and(|a| a.iter().all(|x| !x.is_array() && !x.is_object()))
}

fn write_pretty(v: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize| "  ".repeat(d);
    match v {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if is_flat_scalars(v) => {
            out.push_str(&serde_json::to_string(items).expect("serializable"));
        }
        Value::Array(items) => {
            out.push('[');
            for (i, x) in items.iter().enumerate() {
                out.push_str(if i == 0 { "\n" } else { ",\n" });
                out.push_str(&pad(depth + 1));
                write_pretty(x, depth + 1, out);
            }
            out.push('\n');
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Object(m) if m.is_empty() => out.push_str("{}"),
        Value::Object(m) => {
            out.push('{');
            for (i, (k, x)) in m.iter().enumerate() {
                out.push_str(if i == 0 { "\n" } else { ",\n" });
                out.push_str(&pad(depth + 1));
                out.push_str(&serde_json::to_string(k).expect("serializable"));
                out.push_str(": ");
                write_pretty(x, depth + 1, out);
            }
            out.push('\n');
            out.push_str(&pad(depth));
            out.push('}');
        }
        scalar => out.push_str(&serde_json::to_string(scalar).expect("serializable")),
    }
}
