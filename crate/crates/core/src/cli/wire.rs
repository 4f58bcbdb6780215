//! JSON file schemas and conversions to library types.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::admissible::{GeneratorSet, SemigroupElement};
use crate::ordfield::{format_rational, parse_rational, FieldDescriptor, FieldElement, ValueGroup};
use crate::polyhedra::{Cone, HalfSpace, SlicePolyhedron};
use crate::projtoric::{HeightValue, HeightedConfig};

use super::CliError;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ElementJson {
    pub p: String,
    pub q: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FieldJson {
    Rational,
    Quadratic { d: u64 },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GammaJson {
    pub field: FieldJson,
    pub generators: Vec<ElementJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct HalfSpaceJson {
    pub u: Vec<i64>,
    pub c: ElementJson,
}

/// A single cone: `{"gamma", "n", "halfspaces"}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ConeFile {
    pub gamma: GammaJson,
    pub n: usize,
    pub halfspaces: Vec<HalfSpaceJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ConeBody {
    pub n: usize,
    pub halfspaces: Vec<HalfSpaceJson>,
}

/// A fan: `{"gamma", "cones": [{"n", "halfspaces"}, ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FanFile {
    pub gamma: GammaJson,
    pub cones: Vec<ConeBody>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct RaysJson {
    pub rays: Vec<Vec<i64>>,
}

/// A rational fan in `R^n` by rays: `{"gamma", "n", "cones": [{"rays"}]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ProductFanFile {
    pub gamma: GammaJson,
    pub n: usize,
    pub cones: Vec<RaysJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum HeightJson {
    Infinite(InfJson),
    Finite(ElementJson),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub enum InfJson {
    #[serde(rename = "inf")]
    Inf,
}

/// `{"gamma"?, "n", "A", "a"}`; without `gamma` heights are rational.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default)]
    pub gamma: Option<GammaJson>,
    pub n: usize,
    #[serde(rename = "A")]
    pub points: Vec<Vec<i64>>,
    #[serde(rename = "a")]
    pub heights: Vec<HeightJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GeneratorJson {
    pub u: Vec<i64>,
    pub g: ElementJson,
}

/// `{"gamma", "gens": [{"u", "g"}]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GeneratorsFile {
    pub gamma: GammaJson,
    pub gens: Vec<GeneratorJson>,
}

pub fn field_of(f: &FieldJson) -> Result<FieldDescriptor, CliError> {
    match f {
        FieldJson::Rational => Ok(FieldDescriptor::RationalOnly),
        FieldJson::Quadratic { d } => Ok(FieldDescriptor::quadratic(*d)?),
    }
}

pub fn element(e: &ElementJson, field: FieldDescriptor) -> Result<FieldElement, CliError> {
    Ok(FieldElement::new(
        parse_rational(&e.p)?,
        parse_rational(&e.q)?,
        field,
    )?)
}

pub fn gamma(g: &GammaJson) -> Result<ValueGroup, CliError> {
    let field = field_of(&g.field)?;
    let gens = g
        .generators
        .iter()
        .map(|e| element(e, field))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ValueGroup::new(field, gens)?)
}

pub fn halfspaces(
    hs: &[HalfSpaceJson],
    field: FieldDescriptor,
) -> Result<Vec<HalfSpace>, CliError> {
    hs.iter()
        .map(|h| Ok(HalfSpace::new(h.u.clone(), element(&h.c, field)?)))
        .collect()
}

pub fn generator_set(f: &GeneratorsFile) -> Result<GeneratorSet, CliError> {
    let g = gamma(&f.gamma)?;
    let field = g.field();
    let gens = f
        .gens
        .iter()
        .map(|e| Ok(SemigroupElement::new(e.u.clone(), element(&e.g, field)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(GeneratorSet::new(g, gens))
}

pub fn config(f: &ConfigFile) -> Result<(HeightedConfig, Option<ValueGroup>), CliError> {
    let g = f.gamma.as_ref().map(gamma).transpose()?;
    let field = g
        .as_ref()
        .map(|g| g.field())
        .unwrap_or(FieldDescriptor::RationalOnly);
    let heights = f
        .heights
        .iter()
        .map(|h| match h {
            HeightJson::Infinite(_) => Ok(HeightValue::Infinite),
            HeightJson::Finite(e) => Ok(HeightValue::Finite(element(e, field)?)),
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok((HeightedConfig::new(f.n, f.points.clone(), heights)?, g))
}

pub fn element_json(x: &FieldElement) -> Value {
    json!({"p": format_rational(x.rational_part()), "q": format_rational(x.radical_part())})
}

pub fn vector_json(v: &[FieldElement]) -> Value {
    Value::Array(v.iter().map(element_json).collect())
}

pub fn vectors_json(vs: &[Vec<FieldElement>]) -> Value {
    Value::Array(vs.iter().map(|v| vector_json(v)).collect())
}

pub fn gamma_json(g: &ValueGroup) -> Value {
    let field = match g.field() {
        FieldDescriptor::RationalOnly => json!({"kind": "rational"}),
        FieldDescriptor::Quadratic(d) => json!({"kind": "quadratic", "d": d}),
    };
    json!({"field": field, "generators": g.generators().iter().map(element_json).collect::<Vec<_>>()})
}

pub fn cone_json(c: &Cone) -> Value {
    json!({
        "rays": vectors_json(c.rays()),
        "lineality": vectors_json(c.lineality()),
        "facets": vectors_json(c.facets()),
        "equations": vectors_json(c.equations()),
    })
}

pub fn slice_json(s: &SlicePolyhedron) -> Value {
    json!({"vertices": vectors_json(&s.vertices), "recession_rays": s.recession_rays})
}

pub fn generators_json(g: &GeneratorSet) -> Value {
    json!({
        "gamma": gamma_json(&g.gamma),
        "gens": g.gens.iter().map(|e| json!({"u": e.u, "g": element_json(&e.g)})).collect::<Vec<_>>(),
    })
}
