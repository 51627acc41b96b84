//! JSON documents for polyhedra, split families and certificates.
//! Rationals travel as `"p/q"` strings.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::closures::{FamilyOrigin, RankIhCertificate, SplitDisjunction, SplitFamily};
use crate::error::{Error, Result};
use crate::latfree::{LatFreeClass, PushOutOutcome, PushOutTrace};
use crate::lattice::IntVec;
use crate::poly::{HPoly, Halfspace, VPoly};
use crate::ratmath::{format_rational, parse_rational, QVec, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfspaceDoc {
    pub a: Vec<String>,
    pub b: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyDoc {
    pub dim: usize,
    #[serde(default)]
    pub halfspaces: Vec<HalfspaceDoc>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub empty: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VPolyDoc {
    pub dim: usize,
    pub vertices: Vec<Vec<String>>,
    #[serde(default)]
    pub rays: Vec<Vec<String>>,
    #[serde(default)]
    pub lineality: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntegerDoc {
    Number(i64),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitDoc {
    pub a: Vec<String>,
    #[serde(rename = "K")]
    pub k: IntegerDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SplitFamilyDoc {
    Explicit {
        splits: Vec<SplitDoc>,
    },
    Box {
        #[serde(rename = "box")]
        bound: u32,
    },
}

fn field_err(field: &str, e: Error) -> Error {
    Error::Parse(format!("{field}: {e}"))
}

fn parse_rational_field(s: &str, field: &str) -> Result<Rational> {
    parse_rational(s).map_err(|e| field_err(field, e))
}

fn parse_qvec(entries: &[String], field: &str) -> Result<QVec> {
    entries
        .iter()
        .enumerate()
        .map(|(i, s)| parse_rational_field(s, &format!("{field}[{i}]")))
        .collect::<Result<Vec<_>>>()
        .map(QVec)
}

fn parse_intvec(entries: &[String], field: &str) -> Result<IntVec> {
    let q = parse_qvec(entries, field)?;
    q.to_integers()
        .map(IntVec)
        .ok_or_else(|| Error::Parse(format!("{field}: entries must be integers")))
}

fn parse_integer(k: &IntegerDoc, field: &str) -> Result<BigInt> {
    match k {
        IntegerDoc::Number(n) => Ok(BigInt::from(*n)),
        IntegerDoc::Text(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{field}: malformed integer {s:?}"))),
    }
}

fn check_dim(found: usize, dim: usize, field: &str) -> Result<()> {
    if found != dim {
        return Err(Error::Parse(format!(
            "{field}: expected {dim} entries, found {found}"
        )));
    }
    Ok(())
}

fn strings(v: &QVec) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn int_strings(v: &IntVec) -> Vec<String> {
    v.0.iter().map(ToString::to_string).collect()
}

/// Builds a polyhedron; normals are rescaled to primitive integer vectors.
pub fn poly_from_doc(doc: &PolyDoc) -> Result<HPoly> {
    if doc.empty {
        return Ok(HPoly::empty(doc.dim));
    }
    let mut hs = Vec::with_capacity(doc.halfspaces.len());
    for (i, h) in doc.halfspaces.iter().enumerate() {
        let field = format!("halfspaces[{i}]");
        check_dim(h.a.len(), doc.dim, &format!("{field}.a"))?;
        let a = parse_qvec(&h.a, &format!("{field}.a"))?;
        let b = parse_rational_field(&h.b, &format!("{field}.b"))?;
        if a.is_zero() {
            return Err(Error::Parse(format!("{field}.a: zero normal")));
        }
        hs.push(Halfspace::from_rational(&a, &b).map_err(|e| field_err(&field, e))?);
    }
    HPoly::new(doc.dim, hs)
}

pub fn poly_to_doc(p: &HPoly) -> PolyDoc {
    PolyDoc {
        dim: p.dim(),
        halfspaces: p
            .halfspaces()
            .iter()
            .map(|h| HalfspaceDoc {
                a: int_strings(h.normal()),
                b: format_rational(h.rhs()),
            })
            .collect(),
        empty: p.is_marked_empty(),
    }
}

pub fn parse_poly(text: &str) -> Result<HPoly> {
    let doc: PolyDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    poly_from_doc(&doc)
}

pub fn vpoly_from_doc(doc: &VPolyDoc) -> Result<VPoly> {
    let mut vertices = Vec::new();
    for (i, v) in doc.vertices.iter().enumerate() {
        let field = format!("vertices[{i}]");
        check_dim(v.len(), doc.dim, &field)?;
        vertices.push(parse_qvec(v, &field)?);
    }
    let dirs = |list: &[Vec<String>], name: &str| -> Result<Vec<IntVec>> {
        list.iter()
            .enumerate()
            .map(|(i, r)| {
                let field = format!("{name}[{i}]");
                check_dim(r.len(), doc.dim, &field)?;
                let q = parse_qvec(r, &field)?;
                let scale = crate::ratmath::denominator_lcm(q.iter());
                let d = IntVec(
                    q.iter()
                        .map(|x| (x * Rational::from_integer(scale.clone())).to_integer())
                        .collect(),
                );
                crate::lattice::primitive(&d).map_err(|e| field_err(&field, e))
            })
            .collect()
    };
    let rays = dirs(&doc.rays, "rays")?;
    let lineality = dirs(&doc.lineality, "lineality")?;
    Ok(VPoly {
        dim: doc.dim,
        vertices,
        rays,
        lineality,
    })
}

pub fn vpoly_to_doc(v: &VPoly) -> VPolyDoc {
    VPolyDoc {
        dim: v.dim,
        vertices: v.vertices.iter().map(strings).collect(),
        rays: v.rays.iter().map(int_strings).collect(),
        lineality: v.lineality.iter().map(int_strings).collect(),
    }
}

pub fn parse_vpoly(text: &str) -> Result<VPoly> {
    let doc: VPolyDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    vpoly_from_doc(&doc)
}

/// An explicit family, or a box-generated one built from `p`.
pub fn split_family_from_doc(doc: &SplitFamilyDoc, p: &HPoly) -> Result<SplitFamily> {
    match doc {
        SplitFamilyDoc::Box { bound } => SplitFamily::box_generated(p, *bound),
        SplitFamilyDoc::Explicit { splits } => {
            let mut ds = Vec::with_capacity(splits.len());
            for (i, s) in splits.iter().enumerate() {
                let field = format!("splits[{i}]");
                check_dim(s.a.len(), p.dim(), &format!("{field}.a"))?;
                let a = parse_intvec(&s.a, &format!("{field}.a"))?;
                let k = parse_integer(&s.k, &format!("{field}.K"))?;
                ds.push(SplitDisjunction::new(a, k).map_err(|e| field_err(&field, e))?);
            }
            SplitFamily::explicit(ds)
        }
    }
}

pub fn split_family_to_doc(f: &SplitFamily) -> SplitFamilyDoc {
    match f.origin() {
        FamilyOrigin::BoxGenerated { bound } => SplitFamilyDoc::Box { bound: *bound },
        FamilyOrigin::Explicit => SplitFamilyDoc::Explicit {
            splits: f.disjunctions().iter().map(split_to_doc).collect(),
        },
    }
}

pub fn split_to_doc(d: &SplitDisjunction) -> SplitDoc {
    SplitDoc {
        a: int_strings(d.normal()),
        k: IntegerDoc::Text(d.k().to_string()),
    }
}

pub fn parse_split_family(text: &str, p: &HPoly) -> Result<SplitFamily> {
    let doc: SplitFamilyDoc =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    split_family_from_doc(&doc, p)
}

fn halfspace_value(h: &Halfspace) -> Value {
    json!({ "a": int_strings(h.normal()), "b": format_rational(h.rhs()) })
}

fn point_values(points: &[IntVec]) -> Value {
    Value::from(points.iter().map(int_strings).collect::<Vec<_>>())
}

pub fn latfree_to_json(c: &LatFreeClass) -> Value {
    json!({
        "tag": format!("{:?}", c.tag),
        "facets": c.facets.iter().map(halfspace_value).collect::<Vec<_>>(),
        "witnesses": point_values(&c.witnesses),
        "interior_point": c.interior_point.as_ref().map(int_strings),
        "verified": c.verify(),
    })
}

pub fn push_out_to_json(t: &PushOutTrace) -> Value {
    let steps: Vec<Value> = t
        .steps
        .iter()
        .map(|s| {
            json!({
                "facet": t.order[s.position],
                "position": s.position + 1,
                "from": format_rational(&s.from),
                "to": format_rational(&s.to),
            })
        })
        .collect();
    let outcome = match &t.outcome {
        PushOutOutcome::Early { dropped, pair } => json!({
            "kind": "early",
            "dropped": { "facet": t.order[*dropped], "position": dropped + 1 },
            "pair": [
                { "facet": t.order[pair.0], "position": pair.0 + 1 },
                { "facet": t.order[pair.1], "position": pair.1 + 1 },
            ],
        }),
        PushOutOutcome::Maximal {
            quadrilateral,
            witnesses,
            area,
        } => json!({
            "kind": "maximal",
            "quadrilateral": serde_json::to_value(poly_to_doc(quadrilateral)).expect("serializable"),
            "witnesses": point_values(witnesses),
            "area": format_rational(area),
        }),
    };
    json!({
        "order": t.order,
        "steps": steps,
        "outcome": outcome,
        "conclusion_holds": t.conclusion_holds,
    })
}

pub fn helly_to_json(p: &HPoly, subset: &[usize]) -> Value {
    json!({
        "facets": subset,
        "halfspaces": subset.iter().map(|&i| halfspace_value(&p.halfspaces()[i])).collect::<Vec<_>>(),
    })
}

pub fn rank_ih_to_json(c: &RankIhCertificate) -> Value {
    json!({
        "facets": c.facets.iter().map(|f| json!({
            "facet": halfspace_value(&f.facet),
            "split": f.split.as_ref().map(|d| serde_json::to_value(split_to_doc(d)).expect("serializable")),
        })).collect::<Vec<_>>(),
        "relaxation": serde_json::to_value(poly_to_doc(&c.relaxation)).expect("serializable"),
        "cuts": c.cuts.iter().map(halfspace_value).collect::<Vec<_>>(),
        "cuts_dominate": c.cuts_dominate,
        "hull_recovered": c.hull_recovered,
        "passed": c.passed(),
    })
}
