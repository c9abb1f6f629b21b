use logcy_core::io::{fan_dto, parse_expecting};
use logcy_core::{
    build_bott_tower, build_index_example, cbf_pushforward, divisor_sections, extract_line_bundles,
    fiber_type, is_locally_trivial, recognize_bott_tower, split_fan, write_document, Document, Fan,
    FanMorphism, IntVector, Kind, PairReport, PlanePair, Rational, ToricPair, Triangle, Verdict,
};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::error::CliError;
use crate::json;

type Out = Result<String, CliError>;

fn parse(text: &str, kinds: &[Kind]) -> Result<Document, CliError> {
    Ok(parse_expecting(text, kinds)?)
}

fn fan_of(text: &str) -> Result<Fan, CliError> {
    Ok(
        match parse(text, &[Kind::Fan, Kind::Pair, Kind::NumericalPair])? {
            Document::Fan(f) => f,
            Document::Pair(p) => p.fan().clone(),
            Document::NumericalPair(p) => p.fan().clone(),
            _ => unreachable!("kind checked"),
        },
    )
}

fn toric_pair(text: &str) -> Result<ToricPair, CliError> {
    match parse(text, &[Kind::Pair])? {
        Document::Pair(p) => Ok(p),
        _ => unreachable!("kind checked"),
    }
}

fn arrangement(text: &str) -> Result<PlanePair, CliError> {
    match parse(text, &[Kind::Arrangement])? {
        Document::Arrangement(p) => Ok(p),
        _ => unreachable!("kind checked"),
    }
}

fn morphism(text: &str) -> Result<FanMorphism, CliError> {
    match parse(text, &[Kind::Morphism])? {
        Document::Morphism(m) => Ok(m),
        _ => unreachable!("kind checked"),
    }
}

fn document(doc: &Document) -> Out {
    Ok(write_document(doc)?)
}

pub fn fan_check(text: &str) -> Out {
    let fan = fan_of(text)?;
    Ok(json::render(&json!({
        "rank": fan.rank(),
        "rays": fan.num_rays(),
        "max_cones": fan.max_cones().len(),
        "complete": fan.is_complete(),
        "simplicial": fan.is_simplicial(),
        "smooth": fan.is_smooth(),
    })))
}

pub fn fan_subdivide(text: &str, v: &IntVector) -> Out {
    match parse(text, &[Kind::Fan, Kind::Pair])? {
        Document::Fan(f) => document(&Document::Fan(logcy_core::star_subdivision(&f, v)?.0)),
        Document::Pair(p) => document(&Document::Pair(p.pullback_star_subdivision(v)?.0)),
        _ => unreachable!("kind checked"),
    }
}

fn report(r: &PairReport) -> String {
    let mut map = Map::new();
    map.insert("complexity".into(), json::rational(&r.complexity));
    map.insert(
        "index".into(),
        r.index.as_ref().map_or(Value::Null, json::integer),
    );
    if r.lc != Verdict::Unknown {
        map.insert("lc".into(), json::verdict(r.lc));
    }
    json::render(&Value::Object(map))
}

pub fn pair_report(text: &str) -> Out {
    let r = match parse(text, &[Kind::Pair, Kind::NumericalPair, Kind::Arrangement])? {
        Document::Pair(p) => p.report()?,
        Document::NumericalPair(p) => p.report()?,
        Document::Arrangement(p) => p.check_pair(),
        _ => unreachable!("kind checked"),
    };
    Ok(report(&r))
}

pub fn pair_discrepancy(text: &str, v: &IntVector) -> Out {
    let pair = toric_pair(text)?;
    let a = pair.support_function(v)?;
    Ok(json::render(
        &json!({ "vector": json::vector(v), "log_discrepancy": json::rational(&a) }),
    ))
}

pub fn pair_lc_centers(text: &str) -> Out {
    let pair = toric_pair(text)?;
    Ok(json::render(
        &json!({ "lc_centers": json::cones(&pair.lc_centers()?) }),
    ))
}

pub fn pair_sections(text: &str, divisor: &[BigInt]) -> Out {
    let fan = fan_of(text)?;
    let n = divisor_sections(&fan, divisor)?;
    Ok(json::render(&json!({ "sections": json::integer(&n) })))
}

pub fn arr_report(text: &str) -> Out {
    Ok(report(&arrangement(text)?.check_pair()))
}

pub fn arr_lambda(text: &str, t: &Triangle) -> Out {
    let r = arrangement(text)?.lambda_invariants(t)?;
    Ok(json::render(
        &json!({ "lambda1": json::rational(&r.lambda1), "lambda2": json::rational(&r.lambda2) }),
    ))
}

pub fn arr_triangles(text: &str) -> Out {
    let ts: Vec<Value> = arrangement(text)?
        .associated_triangles()
        .iter()
        .map(|t| json!(t.lines()))
        .collect();
    Ok(json::render(&json!({ "triangles": ts })))
}

pub fn arr_decompose(text: &str, required: Option<&Triangle>) -> Out {
    let pair = arrangement(text)?;
    let parts = match required {
        Some(t) => pair.decompose_with(t)?,
        None => pair.decompose()?,
    };
    let weights: Vec<Value> = parts
        .iter()
        .map(|(t, w)| json!({ "triangle": t.lines(), "weight": json::rational(w) }))
        .collect();
    Ok(json::render(&json!({ "weights": weights })))
}

pub fn fib_split(text: &str) -> Out {
    let s = split_fan(&morphism(text)?)?;
    Ok(json::render(&json!({
        "fiber_rays": s.fiber_rays,
        "lift_map": s.lift_map,
        "multiplicities": json::integers(&s.multiplicities),
        "fiber_subfan": json::cones(&s.fiber_subfan),
        "section_subfan": json::cones(&s.section_subfan),
    })))
}

pub fn fib_trivial(text: &str) -> Out {
    let f = morphism(text)?;
    let s = split_fan(&f)?;
    Ok(json::render(
        &json!({ "locally_trivial": json::verdict(is_locally_trivial(&f, &s)) }),
    ))
}

pub fn fib_fiber(text: &str) -> Out {
    let f = morphism(text)?;
    let fiber = fiber_type(&f, &split_fan(&f)?)?;
    let fan = serde_json::to_value(fan_dto(&fiber.fan)?).expect("plain data");
    Ok(json::render(&json!({
        "kernel_basis": fiber.kernel_basis.iter().map(json::vector).collect::<Vec<_>>(),
        "fan": fan,
        "weights": fiber.weights.as_deref().map_or(Value::Null, json::integers),
    })))
}

pub fn fib_bundles(text: &str) -> Out {
    let f = morphism(text)?;
    let b = extract_line_bundles(&f, &split_fan(&f)?)?;
    let rows = |m: &[Vec<BigInt>]| m.iter().map(|r| json::integers(r)).collect::<Vec<_>>();
    Ok(json::render(&json!({
        "section": json::matrix(&b.section),
        "fiber_basis": b.fiber_basis.iter().map(json::vector).collect::<Vec<_>>(),
        "twists": rows(&b.bundle_twists()),
        "line_bundle_classes": rows(&b.line_bundle_classes),
    })))
}

pub fn fib_cbf(text: &str, coeffs: Option<Vec<Rational>>) -> Out {
    let f = morphism(text)?;
    let pair = match coeffs {
        Some(c) => ToricPair::new(f.source().clone(), c)?,
        None => ToricPair::full_boundary(f.source().clone()),
    };
    let out = cbf_pushforward(&pair, &f)?;
    Ok(json::render(&json!({
        "coeffs": json::rationals(out.pair.coeffs()),
        "moduli_trivial": out.moduli_trivial,
    })))
}

pub fn bott_build(text: &str) -> Out {
    let spec = match parse(text, &[Kind::TowerSpec])? {
        Document::TowerSpec(s) => s,
        _ => unreachable!("kind checked"),
    };
    document(&Document::Fan(build_bott_tower(&spec)?.top().clone()))
}

pub fn bott_recognize(text: &str) -> Out {
    let fan = fan_of(text)?;
    let found = recognize_bott_tower(&fan);
    Ok(json::render(&json!({
        "bott_tower": found.is_some(),
        "stage_dims": found.map(|r| r.stage_dims),
    })))
}

pub fn bott_example(d: &BigInt, n: usize, m: &BigInt) -> Out {
    let (_, pair) = build_index_example(d, n, m)?;
    document(&Document::NumericalPair(pair))
}
