//! One function per subcommand, each returning the report body.

use serde_json::{json, Map, Value};

use ktweb_core::exact_kernel::{int, parse_rational, MultiPoly, Rational, SignClass};
use ktweb_core::frames_canonical::{
    canonical_alternative, canonical_form, decompose as split_trace, decompose_float, moving_frame, moving_frame_float,
    reconstruct, EquivalenceClass, MovingFrameResult,
};
use ktweb_core::invariant_engine::{
    auxiliary_invariants, covariant_sign_classes, fundamental_covariants, invariants_of, joint_invariants,
    selected_j2,
};
use ktweb_core::isometry_actions::IsometryElement;
use ktweb_core::killing_spaces::{embed_nontrivial, KTParams, KVParams, NontrivialKT, Space};
use ktweb_core::lie_generators::{
    extended_generators, joint_generators, killing_vector_names, orbit_dimension, sigma_generators,
    verify_structure_constants, StructureConstants,
};
use ktweb_core::reference::generator_comparison;
use ktweb_core::web_classifier::{classify_full, classify_full_float, ClassificationReport, WebClass};
use ktweb_core::Error;

use crate::{exact, float, split_list, CliError, CliResult, Context, GeneratorKind, Values};

fn arity(expected: usize, values: &Values) -> CliResult<()> {
    if values.len() == expected {
        Ok(())
    } else {
        Err(Error::Arity { expected, got: values.len() }.into())
    }
}

fn exact_params(space: Space, values: &[Rational]) -> CliResult<KTParams> {
    Ok(KTParams::new(space, values.to_vec())?)
}

fn float_params(values: &[f64]) -> [f64; 6] {
    std::array::from_fn(|i| values[i])
}

fn scalars<T: Scalar>(values: &[T]) -> Value {
    Value::Array(values.iter().map(Scalar::to_json).collect())
}

/// How a scalar of either arithmetic is written.
trait Scalar {
    fn to_json(&self) -> Value;
}

impl Scalar for Rational {
    fn to_json(&self) -> Value {
        exact(self)
    }
}

impl Scalar for f64 {
    fn to_json(&self) -> Value {
        float(*self)
    }
}

fn invariant_map<T: Scalar>(values: &[T; 3]) -> Map<String, Value> {
    let mut map = Map::new();
    for (name, v) in ["I1", "I2", "I3"].iter().zip(values) {
        map.insert((*name).into(), v.to_json());
    }
    map
}

pub(crate) fn invariants(space: Space, values: &Values, _ctx: Context) -> CliResult<Value> {
    arity(6, values)?;
    match values {
        Values::Exact(v) => {
            let p = exact_params(space, v)?;
            let invariants = invariants_of(space, &p.values);
            let mut body = json!({ "input": values.to_json(), "invariants": invariant_map(&invariants) });
            if space == Space::Minkowski {
                let aux = auxiliary_invariants(&p)?;
                let [i1, _, i3] = &invariants;
                // k² = √|I1| / I3 on either branch, so k⁴ is always rational.
                let k4 = (i3 != &int(0)).then(|| {
                    let magnitude = if i1 < &int(0) { -i1.clone() } else { i1.clone() };
                    magnitude / (i3 * i3)
                });
                body["auxiliary"] = json!({
                    "I'1": exact(&aux.i1p),
                    "I'2": aux.i2p.as_ref().map(exact),
                    "k4": k4.as_ref().map(exact),
                    "I*": aux.istar.as_ref().map(exact),
                });
            }
            Ok(body)
        }
        Values::Float(v) => {
            let invariants = invariants_of(space, &float_params(v));
            Ok(json!({ "input": values.to_json(), "invariants": invariant_map(&invariants) }))
        }
    }
}

pub(crate) fn covariants(space: Space, values: &Values, _ctx: Context, point: Option<&[String]>) -> CliResult<Value> {
    arity(6, values)?;
    let Values::Exact(v) = values else {
        return Err(CliError::Usage("covariants are computed in exact mode only".into()));
    };
    let p = exact_params(space, v)?;
    let [c1, c2] = fundamental_covariants(&p);
    let [s1, s2] = covariant_sign_classes(&p)?;
    let mut body = json!({
        "input": values.to_json(),
        "covariants": { "C1": c1.to_string(), "C2": c2.to_string() },
        "sign_classes": { "C1": s1.tag(), "C2": s2.tag() },
    });
    if let Some(point) = point {
        if point.len() != 2 {
            return Err(Error::Arity { expected: 2, got: point.len() }.into());
        }
        let (u, v) = space.point_vars();
        let at = [(u, parse_rational(&point[0])?), (v, parse_rational(&point[1])?)];
        let value = |c: &MultiPoly| c.eval_rational(&at).as_ref().map(exact);
        body["at_point"] = json!({
            "point": [exact(&at[0].1), exact(&at[1].1)],
            "C1": value(&c1),
            "C2": value(&c2),
        });
    }
    Ok(body)
}

fn sign_json(classes: &[SignClass; 2]) -> Value {
    json!({ "C1": classes[0].tag(), "C2": classes[1].tag() })
}

fn report_json<T: Scalar + Clone>(report: &ClassificationReport<T>) -> Value {
    let mut invariants = Map::new();
    let mut sign_classes = Value::Null;
    let (mut class, mut subtag, mut normalized) = (Value::Null, Value::Null, false);
    if let Some(c) = &report.classification {
        invariants = invariant_map(&c.invariants);
        if let Some(v) = &c.i_prime_2 {
            invariants.insert("I'2".into(), v.to_json());
        }
        if let Some(v) = &c.istar {
            invariants.insert("I*".into(), v.to_json());
        }
        sign_classes = sign_json(&c.sign_classes);
        class = json!(c.class.tag());
        subtag = c.subtag.map_or(Value::Null, |s| json!(s.to_string()));
        normalized = c.sign_normalized;
    }
    json!({
        "input": scalars(&report.input),
        "l0": report.l0.to_json(),
        "nontrivial": scalars(&report.nontrivial),
        "invariants": invariants,
        "sign_classes": sign_classes,
        "class": class,
        "subtag": subtag,
        "sign_normalized": normalized,
        "caveats": report.caveats,
        "eigen_precondition": report.eigen_precondition.tag(),
    })
}

pub(crate) fn classify(space: Space, values: &Values, ctx: Context) -> CliResult<Value> {
    if values.len() != 5 && values.len() != 6 {
        return Err(Error::Arity { expected: 6, got: values.len() }.into());
    }
    match values {
        Values::Exact(v) => {
            let p = if v.len() == 5 {
                embed_nontrivial(&NontrivialKT::new(space, v.clone())?)
            } else {
                exact_params(space, v)?
            };
            Ok(report_json(&classify_full(&p)?))
        }
        Values::Float(v) => {
            let p: [f64; 6] = if v.len() == 5 { [v[0], 0.0, v[1], v[2], v[3], v[4]] } else { float_params(v) };
            Ok(report_json(&classify_full_float(space, &p, ctx.tol)?))
        }
    }
}

fn frame_json(frame: &MovingFrameResult) -> Value {
    let element = match &frame.element {
        IsometryElement::Float { angle, a, b, .. } => json!({ "angle": float(*angle), "a": float(*a), "b": float(*b) }),
        IsometryElement::Exact { c, s, a, b, .. } => json!({ "c": exact(c), "s": exact(s), "a": exact(a), "b": exact(b) }),
    };
    json!({
        "element": element,
        "residual": float(frame.residual),
        "image": scalars(&frame.image),
        "flags": frame.flags,
        // The frame itself is always computed in floating point.
        "mode": "float",
    })
}

pub(crate) fn frame(space: Space, values: &Values, _ctx: Context) -> CliResult<Value> {
    arity(6, values)?;
    let frame = match values {
        Values::Exact(v) => moving_frame(&exact_params(space, v)?)?,
        Values::Float(v) => moving_frame_float(space, &float_params(v))?,
    };
    let mut body = frame_json(&frame);
    body["input"] = values.to_json();
    Ok(body)
}

pub(crate) fn decompose(space: Space, values: &Values, _ctx: Context) -> CliResult<Value> {
    arity(6, values)?;
    match values {
        Values::Exact(v) => {
            let p = exact_params(space, v)?;
            let (l0, nt) = split_trace(&p);
            Ok(json!({
                "input": values.to_json(),
                "l0": exact(&l0),
                "nontrivial": scalars(&nt.values),
                "reconstruction_exact": reconstruct(&l0, &nt) == p,
            }))
        }
        Values::Float(v) => {
            let (l0, nt) = decompose_float(space, &float_params(v));
            Ok(json!({ "input": values.to_json(), "l0": float(l0), "nontrivial": scalars(&nt) }))
        }
    }
}

pub(crate) fn orbit_dim(space: Space, values: &Values, _ctx: Context) -> CliResult<Value> {
    arity(6, values)?;
    let Values::Exact(v) = values else {
        return Err(CliError::Usage("orbit dimension is computed in exact mode only".into()));
    };
    let p = exact_params(space, v)?;
    let dimension = orbit_dimension(&sigma_generators(space, 2)?, &p.bindings())?;
    Ok(json!({ "input": values.to_json(), "orbit_dimension": dimension }))
}

pub(crate) fn canonical(space: Space, class: &str, k2: Option<&str>) -> CliResult<Value> {
    let ec: EquivalenceClass = class.parse()?;
    let k2 = k2.map(parse_rational).transpose()?;
    let nt = canonical_form(space, ec, k2.as_ref())?;
    let alternative = canonical_alternative(space, ec).map(|alt| scalars(&alt.values));
    Ok(json!({
        "class": ec.to_string(),
        "k2": k2.as_ref().map(exact),
        "nontrivial": scalars(&nt.values),
        "params": scalars(&embed_nontrivial(&nt).values),
        "web_class": WebClass::expected_for(space, ec).tag(),
        "alternative": alternative,
    }))
}

pub(crate) fn generators(space: Space, kind: GeneratorKind, valence: u8) -> CliResult<Value> {
    let algebra = StructureConstants::killing_algebra(space);
    let (fields, constants, label) = match kind {
        GeneratorKind::Sigma => (sigma_generators(space, valence)?, algebra.negated(), "sigma"),
        GeneratorKind::Extended => (extended_generators(space)?, algebra, "extended"),
        GeneratorKind::Joint => (joint_generators(space, &[1, 2])?, algebra.negated(), "joint"),
    };
    let structure_ok = verify_structure_constants(&fields, &constants)?.passed();
    let tabulated = match kind {
        GeneratorKind::Sigma => generator_comparison(space, valence)?
            .map(|m| Value::Array(m.iter().map(|g| json!(g.tag())).collect())),
        _ => None,
    };
    let names = killing_vector_names(space);
    // Kept in generator order so the comparison tags line up.
    let listed: Vec<Value> = names
        .iter()
        .zip(&fields)
        .map(|(n, f)| json!({ "name": format!("V_{n}"), "field": f.to_string() }))
        .collect();
    Ok(json!({
        "kind": label,
        "valence": (kind == GeneratorKind::Sigma).then_some(valence),
        "generators": listed,
        "structure_constants": if structure_ok { "ok" } else { "FAIL" },
        "tabulated_comparison": tabulated,
    }))
}

pub(crate) fn joint(kv: &str, params: &str, ctx: Context) -> CliResult<Value> {
    if ctx.mode == crate::Mode::Float {
        return Err(CliError::Usage("joint invariants are computed in exact mode only".into()));
    }
    let parse = |text: &str| -> CliResult<Vec<Rational>> {
        Ok(split_list(text).iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?)
    };
    let kv = KVParams::new(Space::Euclidean, parse(kv)?)?;
    let kt = KTParams::new(Space::Euclidean, parse(params)?)?;
    let j = joint_invariants(&kv, &kt)?;
    Ok(json!({
        "kv": scalars(&kv.values),
        "kt": scalars(&kt.values),
        "invariants": {
            "I1": exact(&j.i1), "I2": exact(&j.i2), "I3": exact(&j.i3),
            "I4": exact(&j.i4), "J1": exact(&j.j1), "J2": exact(&j.j2),
        },
        "J2_reading": selected_j2().name,
    }))
}
