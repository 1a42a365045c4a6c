//! JSON input documents: schema types, parsing with pointer-located errors, and compilation.

use crate::algebra::{AlgebraPresentation, Assertions, Generator, NcPolynomial};
use crate::bounds::CentralData;
use crate::error::{Error, Result};
use crate::field::{parse_rational, Field, Scalar};
use crate::hopf::{ActionData, HopfData, Matrix, DEFAULT_GROUP_CAP};
use crate::linalg::SparseVec;
use crate::pipeline::{Fixture, MapData, Parameters};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldDoc>,
    pub algebra: AlgebraDoc,
    pub action: ActionDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second_algebra: Option<AlgebraDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<MapDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub central_subalgebra: Option<CentralDoc>,
    #[serde(default, skip_serializing_if = "ParametersDoc::is_empty")]
    pub parameters: ParametersDoc,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub commands: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Expectations>,
}

/// `ℚ` when absent; otherwise a cyclotomic field or `ℚ[a]/(p)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cyclotomic: Option<usize>,
    /// Integer coefficients, lowest degree first.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minpoly: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub generators: Vec<Generator>,
    #[serde(default)]
    pub relations: Vec<String>,
    #[serde(default, rename = "assert", skip_serializing_if = "is_default")]
    pub assertions: Assertions,
}

fn is_default<T: Default + PartialEq>(t: &T) -> bool {
    *t == T::default()
}

/// A rational number: an integer or a string `"a/b"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalDoc {
    Int(i64),
    Text(String),
}

/// A field element: a rational, or coordinates on `1, a, a², …` over an extension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarDoc {
    Int(i64),
    Text(String),
    Coords(Vec<RationalDoc>),
}

/// Matrices are given by rows: row `i` is the image of generator `i`.
pub type MatrixDoc = Vec<Vec<ScalarDoc>>;

/// Sparse vector keyed by basis label.
pub type VectorDoc = BTreeMap<String, ScalarDoc>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ActionDoc {
    Group {
        generators: Vec<MatrixDoc>,
    },
    Hopf {
        #[serde(flatten)]
        hopf: HopfDoc,
        /// One matrix per Hopf basis element.
        generator_action: Vec<MatrixDoc>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HopfDoc {
    pub basis: Vec<String>,
    /// `mult[i][j]` is the product of basis elements `i` and `j`.
    pub mult: Vec<Vec<VectorDoc>>,
    /// `(left label, right label, coefficient)` terms of each coproduct.
    pub coproduct: Vec<Vec<(String, String, ScalarDoc)>>,
    pub counit: Vec<ScalarDoc>,
    pub antipode: Vec<VectorDoc>,
    pub unit: VectorDoc,
    pub integral: VectorDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    /// Image of each generator of the second algebra, as a polynomial in the first.
    pub images: Vec<String>,
    #[serde(default, rename = "assert", skip_serializing_if = "is_default")]
    pub assertions: MapAssertions,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapAssertions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub finite_both_sides: Option<bool>,
    /// The image is `s`-Cohen–Macaulay as a module over the second algebra.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cohen_macaulay_s: Option<usize>,
    /// `Tor_1(k, R) ⊗_R k ≅ Tor_1(k, R)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tor1_condition: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CentralDoc {
    pub generator_degree: usize,
    pub module_generator_degree: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParametersDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_homological: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_cap: Option<usize>,
    /// Parts `a_i` of a denominator `Π(1 − t^{a_i})` for the algebra's Hilbert series.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub denominator_hint: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariant_denominator_hint: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub guard: Option<usize>,
    /// Also study `A/A_{≥m}` for this `m`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncate_at: Option<usize>,
}

impl ParametersDoc {
    fn is_empty(&self) -> bool {
        *self == ParametersDoc::default()
    }
}

/// Golden values checked by `reproduce`. Absent fields are not checked.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectations {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra_dims: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariant_dims: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator_degrees: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_op: Option<usize>,
    /// β, τ and τ^op are certified rather than observed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certified: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module_generators: Option<Vec<String>>,
    /// `dim (A/A R_{≥1})_d`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotient_dims: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotient_dims_op: Option<Vec<usize>>,
    /// `t_i` of `k` over the algebra; `null` where `Tor_i` vanishes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tor_degrees: Option<Vec<Option<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torreg: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cmreg: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hilbert_ratio: Option<RationalDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncated_beta: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hopf_valid: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action_valid: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub element_actions: Option<Vec<ElementAction>>,
    /// `(N, first differing degree)` for `Φ_N`, `null` when equal throughout.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<(usize, Option<usize>)>>,
    /// Bound rows expected to hold, by id.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rows_hold: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementAction {
    /// Hopf basis label.
    pub by: String,
    pub element: String,
    pub image: String,
}

/// Convert a serde path into a JSON pointer.
fn pointer(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut s = String::new();
    for seg in path.iter() {
        s.push('/');
        match seg {
            Segment::Seq { index } => s.push_str(&index.to_string()),
            Segment::Map { key } => s.push_str(&key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => s.push_str(variant),
            Segment::Unknown => s.push('?'),
        }
    }
    if s.is_empty() {
        s.push('/');
    }
    s
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let p = pointer(e.path());
            Error::schema(p, e.into_inner().to_string())
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn field(&self) -> Result<Field> {
        match &self.field {
            None => Ok(Field::rationals()),
            Some(f) => match (f.cyclotomic, &f.minpoly) {
                (Some(m), None) => Field::cyclotomic(m),
                (None, Some(p)) => Field::from_i64s(p, f.label.as_deref().unwrap_or("a")),
                (None, None) => Ok(Field::rationals()),
                (Some(_), Some(_)) => Err(Error::schema(
                    "/field",
                    "give either cyclotomic or minpoly, not both",
                )),
            },
        }
    }

    /// Validate cross-references and build the semantic objects.
    pub fn compile(&self) -> Result<Fixture> {
        let field = self.field()?;
        let presentation = compile_algebra(&field, &self.algebra, "/algebra")?;
        let n = presentation.generators().len();
        let p = &self.parameters;
        let params = Parameters {
            max_degree: p.max_degree.unwrap_or(8),
            max_homological: p.max_homological.unwrap_or(4),
            word_cap: p
                .word_cap
                .unwrap_or(crate::algebra::basis::DEFAULT_WORD_CAP),
            group_cap: p.group_cap.unwrap_or(DEFAULT_GROUP_CAP),
            denominator_hint: p.denominator_hint.clone(),
            invariant_denominator_hint: p.invariant_denominator_hint.clone(),
            guard: p.guard.unwrap_or(crate::series::DEFAULT_GUARD),
            truncate_at: p.truncate_at,
        };
        let action = match &self.action {
            ActionDoc::Group { generators } => {
                let mats = generators
                    .iter()
                    .enumerate()
                    .map(|(k, m)| matrix(&field, m, n, &format!("/action/group/generators/{k}")))
                    .collect::<Result<Vec<_>>>()?;
                ActionData::from_group(&presentation, &mats, params.group_cap)?
            }
            ActionDoc::Hopf {
                hopf,
                generator_action,
            } => {
                let h = compile_hopf(&field, hopf)?;
                let mats = generator_action
                    .iter()
                    .enumerate()
                    .map(|(k, m)| {
                        matrix(&field, m, n, &format!("/action/hopf/generator_action/{k}"))
                    })
                    .collect::<Result<Vec<_>>>()?;
                ActionData::from_hopf(&presentation, h, &mats)?
            }
        };
        let map = match (&self.second_algebra, &self.map) {
            (None, None) => None,
            (Some(_), None) => return Err(Error::schema("/map", "second_algebra needs a map")),
            (None, Some(_)) => {
                return Err(Error::schema(
                    "/second_algebra",
                    "map needs a second_algebra",
                ))
            }
            (Some(s), Some(m)) => {
                let source = compile_algebra(&field, s, "/second_algebra")?;
                if m.images.len() != source.generators().len() {
                    return Err(Error::schema(
                        "/map/images",
                        format!(
                            "expected {} images, found {}",
                            source.generators().len(),
                            m.images.len()
                        ),
                    ));
                }
                let images = m
                    .images
                    .iter()
                    .enumerate()
                    .map(|(k, s)| {
                        let poly = presentation.parse_polynomial(s).map_err(|e| {
                            Error::schema(format!("/map/images/{k}"), e.to_string())
                        })?;
                        let degs = presentation.degrees();
                        let want = source.generators()[k].degree;
                        if poly.terms.iter().any(|(_, w)| w.degree(&degs) != want) {
                            return Err(Error::schema(
                                format!("/map/images/{k}"),
                                format!("image must be homogeneous of degree {want}"),
                            ));
                        }
                        Ok(poly)
                    })
                    .collect::<Result<Vec<NcPolynomial>>>()?;
                Some(MapData {
                    source,
                    images,
                    assertions: m.assertions.clone(),
                })
            }
        };
        let central = self.central_subalgebra.as_ref().map(|c| CentralData {
            d: c.generator_degree,
            m: c.module_generator_degree,
            asserted: true,
        });
        Ok(Fixture {
            name: self.name.clone(),
            presentation,
            action,
            map,
            central,
            params,
            commands: self.commands.clone(),
            expect: self.expect.clone().unwrap_or_default(),
        })
    }
}

fn compile_algebra(field: &Field, a: &AlgebraDoc, at: &str) -> Result<AlgebraPresentation> {
    let shell = AlgebraPresentation::new(
        field.clone(),
        a.generators.clone(),
        vec![],
        Assertions::default(),
    )
    .map_err(|e| Error::schema(format!("{at}/generators"), e.to_string()))?;
    let rels = a
        .relations
        .iter()
        .enumerate()
        .map(|(i, s)| {
            shell
                .parse_polynomial(s)
                .map_err(|e| Error::schema(format!("{at}/relations/{i}"), e.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    AlgebraPresentation::new(
        field.clone(),
        a.generators.clone(),
        rels,
        a.assertions.clone(),
    )
}

fn rational(r: &RationalDoc, at: &str) -> Result<BigRational> {
    match r {
        RationalDoc::Int(n) => Ok(BigRational::from_integer(BigInt::from(*n))),
        RationalDoc::Text(t) => parse_rational(t)
            .ok_or_else(|| Error::schema(at, format!("'{t}' is not a rational number"))),
    }
}

pub fn scalar(field: &Field, s: &ScalarDoc, at: &str) -> Result<Scalar> {
    match s {
        ScalarDoc::Int(n) => Ok(field.from_int(*n)),
        ScalarDoc::Text(t) => Ok(field.from_rational(rational(&RationalDoc::Text(t.clone()), at)?)),
        ScalarDoc::Coords(cs) => {
            if cs.len() > field.degree().max(1) {
                return Err(Error::schema(
                    at,
                    format!("expected at most {} coordinates", field.degree().max(1)),
                ));
            }
            let v = cs
                .iter()
                .enumerate()
                .map(|(i, c)| rational(c, &format!("{at}/{i}")))
                .collect::<Result<Vec<_>>>()?;
            Ok(field.from_coeffs(v))
        }
    }
}

fn matrix(field: &Field, m: &MatrixDoc, n: usize, at: &str) -> Result<Matrix> {
    if m.len() != n {
        return Err(Error::schema(
            at,
            format!("expected {n} rows, found {}", m.len()),
        ));
    }
    m.iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() != n {
                return Err(Error::schema(
                    format!("{at}/{i}"),
                    format!("expected {n} entries, found {}", row.len()),
                ));
            }
            row.iter()
                .enumerate()
                .map(|(j, x)| scalar(field, x, &format!("{at}/{i}/{j}")))
                .collect()
        })
        .collect()
}

fn compile_hopf(field: &Field, h: &HopfDoc) -> Result<HopfData> {
    let index = |label: &str, at: &str| -> Result<usize> {
        h.basis
            .iter()
            .position(|b| b == label)
            .ok_or_else(|| Error::schema(at, format!("unknown basis label '{label}'")))
    };
    let vector = |v: &VectorDoc, at: &str| -> Result<SparseVec> {
        let mut pairs = Vec::with_capacity(v.len());
        for (label, c) in v {
            let p = format!("{at}/{label}");
            pairs.push((index(label, &p)?, scalar(field, c, &p)?));
        }
        Ok(SparseVec::from_pairs(pairs))
    };
    let at = "/action/hopf";
    let mult = h
        .mult
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, v)| vector(v, &format!("{at}/mult/{i}/{j}")))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let coproduct = h
        .coproduct
        .iter()
        .enumerate()
        .map(|(i, terms)| {
            terms
                .iter()
                .enumerate()
                .map(|(k, (a, b, c))| {
                    let p = format!("{at}/coproduct/{i}/{k}");
                    Ok((index(a, &p)?, index(b, &p)?, scalar(field, c, &p)?))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let counit = h
        .counit
        .iter()
        .enumerate()
        .map(|(i, c)| scalar(field, c, &format!("{at}/counit/{i}")))
        .collect::<Result<Vec<_>>>()?;
    let antipode = h
        .antipode
        .iter()
        .enumerate()
        .map(|(i, v)| vector(v, &format!("{at}/antipode/{i}")))
        .collect::<Result<Vec<_>>>()?;
    let unit = vector(&h.unit, &format!("{at}/unit"))?;
    let integral = vector(&h.integral, &format!("{at}/integral"))?;
    let hopf = HopfData::new(
        field.clone(),
        h.basis.clone(),
        mult,
        coproduct,
        counit,
        antipode,
        unit,
        integral,
    )?;
    hopf.validate()?;
    Ok(hopf)
}

#[cfg(test)]
mod tests {
    use super::*;

    const DOWN_UP: &str = r#"{
        "name": "down-up",
        "algebra": {
            "generators": [{"name": "x", "degree": 1}, {"name": "y", "degree": 1}],
            "relations": ["x^2y - yx^2", "xy^2 - y^2x"]
        },
        "action": {"group": {"generators": [[[-1, 0], [0, 1]]]}}
    }"#;

    #[test]
    fn parses_and_round_trips() {
        let doc = InputDocument::parse(DOWN_UP).unwrap();
        assert_eq!(doc.algebra.relations.len(), 2);
        let again = InputDocument::parse(&doc.to_json()).unwrap();
        assert_eq!(doc, again);
        let fx = doc.compile().unwrap();
        assert_eq!(fx.presentation.generators().len(), 2);
        assert_eq!(fx.action.hopf.dim(), 2);
    }

    #[test]
    fn unknown_key_is_located() {
        let bad = DOWN_UP.replace("\"degree\": 1}, {", "\"degree\": 1, \"weight\": 2}, {");
        match InputDocument::parse(&bad) {
            Err(Error::Schema { pointer, message }) => {
                assert_eq!(pointer, "/algebra/generators/0/weight");
                assert!(message.contains("weight"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_homogeneous_relation() {
        let bad = DOWN_UP.replace("\"x^2y - yx^2\", \"xy^2 - y^2x\"", "\"x^2 + y\"");
        let err = InputDocument::parse(&bad).unwrap().compile().unwrap_err();
        assert_eq!(err.to_string(), "relation 0 not homogeneous");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn matrix_shape_is_checked() {
        let bad = DOWN_UP.replace("[[-1, 0], [0, 1]]", "[[-1, 0, 0], [0, 1]]");
        match InputDocument::parse(&bad).unwrap().compile() {
            Err(Error::Schema { pointer, .. }) => {
                assert_eq!(pointer, "/action/group/generators/0/0")
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn extension_scalars() {
        let f = Field::cyclotomic(3).unwrap();
        let s = scalar(
            &f,
            &ScalarDoc::Coords(vec![RationalDoc::Int(0), RationalDoc::Int(1)]),
            "/",
        )
        .unwrap();
        assert_eq!(s, f.generator());
        assert!(scalar(&f, &ScalarDoc::Text("1/x".into()), "/").is_err());
    }
}
