//! The embedding file format: a JSON document
//! `{"method", "dim", "individuals", "concepts", "roles"}` whose payload
//! schemas depend on the method. Rationals serialize as `p/q` strings with
//! the `inf` / `-inf` sentinels; boxes as `{"lower": [...], "upper": [...]}`;
//! cones as strings over `R + - 0`.

use serde_json::{json, Map, Value};

use crate::geom::{
    AffineDiagMap, AlCone, BandStack, BoxRegion, HPolyhedron, LinearConstraint, OpenBall, RVector,
    Rel,
};
use crate::rat::{fmt_rat, parse_rat, Ext, Rat};

use super::{ConceptPayload, Embedding, IndPayload, Method, RolePayload, SemError};

fn err(msg: impl Into<String>) -> SemError {
    SemError::Invalid(msg.into())
}

// -- encoding ---------------------------------------------------------------

fn rat_json(r: &Rat) -> Value {
    Value::String(fmt_rat(r))
}

fn ext_json(e: &Ext) -> Value {
    Value::String(e.to_string())
}

fn vec_json(v: &RVector) -> Value {
    Value::Array(v.iter().map(rat_json).collect())
}

fn box_json(b: &BoxRegion) -> Value {
    json!({
        "lower": b.lower().iter().map(ext_json).collect::<Vec<_>>(),
        "upper": b.upper().iter().map(ext_json).collect::<Vec<_>>(),
    })
}

fn ball_json(b: &OpenBall) -> Value {
    json!({ "center": vec_json(&b.center), "radius": ext_json(&b.radius) })
}

fn poly_json(p: &HPolyhedron) -> Value {
    let rows: Vec<Value> = p
        .rows()
        .iter()
        .map(|r| {
            json!({
                "coeffs": r.coeffs.iter().map(rat_json).collect::<Vec<_>>(),
                "rel": if r.rel == Rel::Lt { "<" } else { "<=" },
                "bound": rat_json(&r.bound),
            })
        })
        .collect();
    json!({ "dim": p.dim(), "constraints": rows })
}

fn band_json(b: &BandStack) -> Value {
    json!({ "slices": b.slices().iter().map(poly_json).collect::<Vec<_>>() })
}

fn ind_json(p: &IndPayload) -> Value {
    match p {
        IndPayload::Point(v) => vec_json(v),
        IndPayload::Ball(b) => ball_json(b),
        IndPayload::Box(b) => box_json(b),
        IndPayload::PointBump { point, bump } => {
            json!({ "point": vec_json(point), "bump": vec_json(bump) })
        }
        IndPayload::BaseBump { base, bump } => {
            json!({ "base": vec_json(base), "bump": vec_json(bump) })
        }
    }
}

fn concept_json(p: &ConceptPayload) -> Value {
    match p {
        ConceptPayload::Region(r) => poly_json(r),
        ConceptPayload::Cone(c) => Value::String(c.to_string()),
        ConceptPayload::Ball(b) => ball_json(b),
        ConceptPayload::Box(b) => box_json(b),
        ConceptPayload::BoxBump { bx, bump } => {
            json!({ "box": box_json(bx), "bump": vec_json(bump) })
        }
    }
}

fn role_json(p: &RolePayload) -> Value {
    match p {
        RolePayload::Region(r) => poly_json(r),
        RolePayload::Pairs(ps) => Value::Array(
            ps.iter()
                .map(|(a, b)| Value::Array(vec![vec_json(a), vec_json(b)]))
                .collect(),
        ),
        RolePayload::Vector(v) => vec_json(v),
        RolePayload::Affine(t) => json!({
            "diag": t.diag().iter().map(rat_json).collect::<Vec<_>>(),
            "offset": vec_json(t.offset()),
        }),
        RolePayload::HeadTail { head, tail } => {
            json!({ "head": box_json(head), "tail": box_json(tail) })
        }
        RolePayload::BoxPair { first, second } => {
            json!({ "first": box_json(first), "second": box_json(second) })
        }
        RolePayload::Band(b) => band_json(b),
    }
}

pub fn embedding_to_json(e: &Embedding) -> Value {
    let mut top = Map::new();
    top.insert("method".into(), Value::String(e.method.as_str().into()));
    top.insert("dim".into(), json!(e.dim));
    let mut inds = Map::new();
    for (k, v) in &e.individuals {
        inds.insert(k.clone(), ind_json(v));
    }
    top.insert("individuals".into(), Value::Object(inds));
    let mut cs = Map::new();
    for (k, v) in &e.concepts {
        cs.insert(k.clone(), concept_json(v));
    }
    top.insert("concepts".into(), Value::Object(cs));
    let mut rs = Map::new();
    for (k, v) in &e.roles {
        rs.insert(k.clone(), role_json(v));
    }
    top.insert("roles".into(), Value::Object(rs));
    Value::Object(top)
}

pub fn embedding_to_string(e: &Embedding) -> String {
    serde_json::to_string_pretty(&embedding_to_json(e)).expect("embedding JSON")
}

// -- decoding ---------------------------------------------------------------

fn get<'v>(v: &'v Value, key: &str) -> Result<&'v Value, SemError> {
    v.get(key).ok_or_else(|| err(format!("missing key `{key}`")))
}

fn rat_of(v: &Value) -> Result<Rat, SemError> {
    match v {
        Value::String(s) => parse_rat(s).map_err(err),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(crate::rat::rint(i))
            } else {
                Err(err("non-integer numeric literal; use a \"p/q\" string"))
            }
        }
        _ => Err(err("expected a rational")),
    }
}

fn ext_of(v: &Value) -> Result<Ext, SemError> {
    match v {
        Value::String(s) => Ext::parse(s).map_err(err),
        Value::Number(_) => Ok(Ext::Fin(rat_of(v)?)),
        _ => Err(err("expected a rational or inf")),
    }
}

fn vec_of(v: &Value) -> Result<RVector, SemError> {
    let arr = v.as_array().ok_or_else(|| err("expected an array"))?;
    Ok(RVector::new(arr.iter().map(rat_of).collect::<Result<_, _>>()?))
}

fn ext_vec_of(v: &Value) -> Result<Vec<Ext>, SemError> {
    let arr = v.as_array().ok_or_else(|| err("expected an array"))?;
    arr.iter().map(ext_of).collect()
}

fn box_of(v: &Value) -> Result<BoxRegion, SemError> {
    Ok(BoxRegion::new(ext_vec_of(get(v, "lower")?)?, ext_vec_of(get(v, "upper")?)?)?)
}

fn ball_of(v: &Value) -> Result<OpenBall, SemError> {
    Ok(OpenBall::new(vec_of(get(v, "center")?)?, ext_of(get(v, "radius")?)?)?)
}

fn poly_of(v: &Value) -> Result<HPolyhedron, SemError> {
    let dim = get(v, "dim")?
        .as_u64()
        .ok_or_else(|| err("polyhedron dim must be an integer"))? as usize;
    let rows = get(v, "constraints")?
        .as_array()
        .ok_or_else(|| err("constraints must be an array"))?;
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let coeffs = get(row, "coeffs")?
            .as_array()
            .ok_or_else(|| err("coeffs must be an array"))?
            .iter()
            .map(rat_of)
            .collect::<Result<Vec<_>, _>>()?;
        let rel = match get(row, "rel")?.as_str() {
            Some("<") => Rel::Lt,
            Some("<=") => Rel::Le,
            _ => return Err(err("rel must be \"<\" or \"<=\"")),
        };
        let bound = rat_of(get(row, "bound")?)?;
        out.push(LinearConstraint::new(coeffs, rel, bound));
    }
    Ok(HPolyhedron::new(dim, out)?)
}

fn band_of(v: &Value, dim: usize) -> Result<BandStack, SemError> {
    if let Some(slices) = v.get("slices") {
        let arr = slices.as_array().ok_or_else(|| err("slices must be an array"))?;
        let polys = arr.iter().map(poly_of).collect::<Result<Vec<_>, _>>()?;
        Ok(BandStack::from_slices(polys)?)
    } else {
        let s = vec_of(get(v, "slopes")?)?;
        let c = vec_of(get(v, "centers")?)?;
        let w = vec_of(get(v, "widths")?)?;
        if s.dim() != dim {
            return Err(err("band parameter dimension mismatch"));
        }
        Ok(BandStack::from_slope_center_width(&s, &c, &w)?)
    }
}

pub fn embedding_from_json(v: &Value) -> Result<Embedding, SemError> {
    let method_str = get(v, "method")?
        .as_str()
        .ok_or_else(|| err("method must be a string"))?;
    let method = Method::parse(method_str)
        .ok_or_else(|| err(format!("unknown method `{method_str}`")))?;
    let dim = get(v, "dim")?
        .as_u64()
        .ok_or_else(|| err("dim must be a positive integer"))? as usize;
    if dim == 0 {
        return Err(err("dim must be positive"));
    }
    let mut e = Embedding::new(method, dim);

    if let Some(obj) = v.get("individuals").and_then(Value::as_object) {
        for (name, val) in obj {
            let payload = match method {
                Method::Conv | Method::Boxel | Method::Expr | Method::Cone => {
                    IndPayload::Point(vec_of(val)?)
                }
                Method::Elem | Method::Emel => IndPayload::Ball(ball_of(val)?),
                Method::Elbe => IndPayload::Box(box_of(val)?),
                Method::Box2el => IndPayload::PointBump {
                    point: vec_of(get(val, "point")?)?,
                    bump: vec_of(get(val, "bump")?)?,
                },
                Method::Boxe => IndPayload::BaseBump {
                    base: vec_of(get(val, "base")?)?,
                    bump: vec_of(get(val, "bump")?)?,
                },
            };
            e.individuals.insert(name.clone(), payload);
        }
    }
    if let Some(obj) = v.get("concepts").and_then(Value::as_object) {
        for (name, val) in obj {
            let payload = match method {
                Method::Conv => ConceptPayload::Region(poly_of(val)?),
                Method::Cone => {
                    let s = val.as_str().ok_or_else(|| err("cone must be a string"))?;
                    ConceptPayload::Cone(AlCone::parse(s)?)
                }
                Method::Elem | Method::Emel => ConceptPayload::Ball(ball_of(val)?),
                Method::Elbe => {
                    // centre/offset view for the translated-box method
                    if val.get("center").is_some() {
                        let c = vec_of(get(val, "center")?)?;
                        let o = ext_vec_of(get(val, "offset")?)?;
                        ConceptPayload::Box(BoxRegion::from_center_offset(&c, &o)?)
                    } else {
                        ConceptPayload::Box(box_of(val)?)
                    }
                }
                Method::Boxel | Method::Boxe => ConceptPayload::Box(box_of(val)?),
                Method::Box2el => ConceptPayload::BoxBump {
                    bx: box_of(get(val, "box")?)?,
                    bump: vec_of(get(val, "bump")?)?,
                },
                Method::Expr => {
                    return Err(err("the band method carries no concept payloads"))
                }
            };
            e.concepts.insert(name.clone(), payload);
        }
    }
    if let Some(obj) = v.get("roles").and_then(Value::as_object) {
        for (name, val) in obj {
            let payload = match method {
                Method::Conv => RolePayload::Region(poly_of(val)?),
                Method::Cone => {
                    let arr = val.as_array().ok_or_else(|| err("pair list expected"))?;
                    let mut pairs = Vec::with_capacity(arr.len());
                    for pv in arr {
                        let pair = pv.as_array().ok_or_else(|| err("pair expected"))?;
                        if pair.len() != 2 {
                            return Err(err("pair expected"));
                        }
                        pairs.push((vec_of(&pair[0])?, vec_of(&pair[1])?));
                    }
                    RolePayload::Pairs(pairs)
                }
                Method::Elem | Method::Emel | Method::Elbe => RolePayload::Vector(vec_of(val)?),
                Method::Boxel => RolePayload::Affine(AffineDiagMap::new(
                    get(val, "diag")?
                        .as_array()
                        .ok_or_else(|| err("diag must be an array"))?
                        .iter()
                        .map(rat_of)
                        .collect::<Result<Vec<_>, _>>()?,
                    vec_of(get(val, "offset")?)?,
                )?),
                Method::Box2el => RolePayload::HeadTail {
                    head: box_of(get(val, "head")?)?,
                    tail: box_of(get(val, "tail")?)?,
                },
                Method::Boxe => RolePayload::BoxPair {
                    first: box_of(get(val, "first")?)?,
                    second: box_of(get(val, "second")?)?,
                },
                Method::Expr => RolePayload::Band(band_of(val, dim)?),
            };
            e.roles.insert(name.clone(), payload);
        }
    }
    e.validate()?;
    Ok(e)
}

pub fn embedding_from_str(s: &str) -> Result<Embedding, SemError> {
    let v: Value = serde_json::from_str(s).map_err(|e| err(format!("invalid JSON: {e}")))?;
    embedding_from_json(&v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn round_trip_ball_embedding() {
        let mut e = Embedding::new(Method::Elem, 2);
        e.concepts.insert(
            "A".into(),
            ConceptPayload::Ball(OpenBall::new(RVector::from_ints(&[0, 1]), Ext::zero()).unwrap()),
        );
        e.individuals.insert(
            "a".into(),
            IndPayload::Ball(OpenBall::new(RVector::from_ints(&[0, 1]), Ext::PosInf).unwrap()),
        );
        e.roles.insert("r".into(), RolePayload::Vector(RVector::new(vec![rat(1, 2), rat(-3, 4)])));
        let text = embedding_to_string(&e);
        let back = embedding_from_str(&text).unwrap();
        assert_eq!(e, back);
    }

    #[test]
    fn round_trip_band_and_pair_embeddings() {
        let mut e = Embedding::new(Method::Expr, 2);
        e.individuals.insert("a".into(), IndPayload::Point(RVector::from_ints(&[1, 2])));
        e.roles.insert(
            "r".into(),
            RolePayload::Band(
                BandStack::from_slope_center_width(
                    &RVector::from_ints(&[1, 1]),
                    &RVector::from_ints(&[0, 0]),
                    &RVector::from_ints(&[2, 2]),
                )
                .unwrap(),
            ),
        );
        let back = embedding_from_str(&embedding_to_string(&e)).unwrap();
        assert_eq!(e, back);

        let mut c = Embedding::new(Method::Cone, 2);
        c.concepts.insert("A".into(), ConceptPayload::Cone(AlCone::parse("+-").unwrap()));
        c.individuals.insert("a".into(), IndPayload::Point(RVector::from_ints(&[1, -1])));
        c.roles.insert(
            "r".into(),
            RolePayload::Pairs(vec![(RVector::from_ints(&[1, 0]), RVector::from_ints(&[0, 1]))]),
        );
        let back = embedding_from_str(&embedding_to_string(&c)).unwrap();
        assert_eq!(c, back);
    }

    #[test]
    fn elbe_center_offset_view() {
        let text = r#"{
            "method": "elbe", "dim": 2,
            "individuals": {},
            "concepts": { "A": { "center": ["5", "5"], "offset": ["0", "0"] } },
            "roles": {}
        }"#;
        let e = embedding_from_str(text).unwrap();
        assert!(e.concept_box("A").unwrap().offset_is_zero());
        // "inf" offsets give the full box
        let text2 = r#"{
            "method": "elbe", "dim": 1,
            "concepts": { "T": { "center": ["0"], "offset": ["inf"] } }
        }"#;
        let e2 = embedding_from_str(text2).unwrap();
        assert!(!e2.concept_box("T").unwrap().is_empty());
        assert!(crate::semantics::int_box(&[-1000], &[1000])
            .subset(e2.concept_box("T").unwrap())
            .unwrap());
    }

    #[test]
    fn method_mismatch_is_rejected() {
        let text = r#"{ "method": "boxel", "dim": 1, "concepts": { "A": { "center": ["0"], "offset": ["1"] } } }"#;
        assert!(embedding_from_str(text).is_err());
        let text2 = r#"{ "method": "nope", "dim": 1 }"#;
        assert!(embedding_from_str(text2).is_err());
    }
}
