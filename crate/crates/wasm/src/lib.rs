//! Browser bindings for the curvedkit demo page.
//!
//! Every export takes and returns plain strings or numbers; structured results
//! are JSON. The [`api`] module holds the same operations for native callers.

use wasm_bindgen::prelude::*;

pub mod api {
    use curvedkit::render::{render_intersection, render_spec, Model, RenderOptions, RenderSpec};
    use curvedkit::scenarios::{draw, Draw, ScenarioName, ScenarioSpec};
    use curvedkit::spec::compose_all;
    use curvedkit::symmetry::{detect, SymmetryReport, DEFAULT_TOL};
    use curvedkit::{intersect, trig, Intersection, IntersectionRegion};
    use serde_json::{json, Value};

    fn model_for(name: &str, spec: &RenderSpec) -> Result<Model, String> {
        if name.is_empty() {
            Ok(Model::default_for(spec.geometry()))
        } else {
            name.parse().map_err(|e: curvedkit::Error| e.to_string())
        }
    }

    fn options(size: u32) -> RenderOptions {
        RenderOptions {
            size,
            ..RenderOptions::default()
        }
    }

    fn summary(report: &SymmetryReport) -> Value {
        json!({
            "central": report.is_centrally_symmetric,
            "axial": report.is_axially_symmetric,
            "continuous_family": report.continuous_family,
            "symmetries": report
                .found
                .iter()
                .map(|f| json!({ "kind": f.kind, "residual": f.residual }))
                .collect::<Vec<_>>(),
        })
    }

    fn picture(region: &IntersectionRegion, model: Model, size: u32, overlay: bool) -> Result<Value, String> {
        let report = detect(region, DEFAULT_TOL);
        let isos: Vec<_> = if overlay {
            report.found.iter().map(|f| f.iso).collect()
        } else {
            Vec::new()
        };
        let svg = render_intersection(region, model, &options(size), &isos).map_err(|e| e.to_string())?;
        let mut out = summary(&report);
        out["svg"] = svg.into();
        out["vertices"] = region.vertices().len().into();
        Ok(out)
    }

    /// Renders a region or intersection given as render-spec JSON. For an
    /// intersection the result also lists the symmetries found.
    /// An empty `model` picks the geometry's natural model.
    pub fn render(spec_json: &str, model: &str, size: u32) -> Result<String, String> {
        let spec: RenderSpec = serde_json::from_str(spec_json).map_err(|e| e.to_string())?;
        let model = model_for(model, &spec)?;
        let out = match &spec {
            RenderSpec::Region { .. } => {
                json!({ "svg": render_spec(&spec, model, &options(size)).map_err(|e| e.to_string())? })
            }
            RenderSpec::Intersection {
                k,
                phi,
                l,
                psi,
                symmetries,
            } => {
                let g = k.geometry();
                let (k, l) = (
                    k.build().map_err(|e| e.to_string())?,
                    l.build().map_err(|e| e.to_string())?,
                );
                let phi = compose_all(g, phi).map_err(|e| e.to_string())?;
                let psi = compose_all(g, psi).map_err(|e| e.to_string())?;
                match intersect(&k, &phi, &l, &psi).map_err(|e| e.to_string())? {
                    Intersection::Region(r) => picture(&r, model, size, *symmetries)?,
                    Intersection::Empty => json!({ "empty": true }),
                    Intersection::NoInterior => json!({ "no_interior": true }),
                }
            }
        };
        Ok(out.to_string())
    }

    /// The chord-angle relation for a circle of radius `r` at signed distance `c`
    /// from a line, cut by the hypercycle at signed distance `l`.
    pub fn chord_angle(r: f64, c: f64, l: f64) -> Result<String, String> {
        let exists = trig::chord_exists(r, c, l).map_err(|e| e.to_string())?;
        let mut out = json!({ "r": r, "c": c, "l": l, "exists": exists });
        if exists {
            let q = trig::solve_signed(r, c, l).map_err(|e| e.to_string())?;
            out["omega"] = q.omega.into();
            out["d"] = q.d.into();
            out["alpha"] = q.alpha.into();
            out["sinh2_bc"] = q.sinh2_bc().into();
        }
        Ok(out.to_string())
    }

    /// The cataloged scenarios with their geometry, defaults and expected outcome.
    pub fn scenarios() -> String {
        let list: Vec<Value> = ScenarioName::ALL
            .iter()
            .map(|&n| {
                json!({
                    "name": n.as_str(),
                    "geometry": n.geometry(),
                    "expected": n.expected(),
                    "params": n.defaults().iter().map(|&(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
                })
            })
            .collect();
        Value::Array(list).to_string()
    }

    /// Draw `index` of a scenario, rendered with its symmetry axes and centres.
    /// An empty `model` picks the geometry's natural model.
    pub fn scenario_draw(name: &str, seed: u64, index: u64, model: &str, size: u32) -> Result<String, String> {
        let name: ScenarioName = name.parse().map_err(|e: curvedkit::Error| e.to_string())?;
        let spec = ScenarioSpec::new(name).with_seed(seed);
        let model = if model.is_empty() {
            Model::default_for(name.geometry())
        } else {
            model.parse().map_err(|e: curvedkit::Error| e.to_string())?
        };
        let mut out = match draw(&spec, index).map_err(|e| e.to_string())? {
            Draw::Region(r) => picture(&r, model, size, true)?,
            Draw::NoInterior => json!({ "status": "no_interior" }),
            Draw::Filtered => json!({ "status": "filtered" }),
            Draw::Unstable => json!({ "status": "unstable" }),
        };
        if out.get("status").is_none() {
            out["status"] = "region".into();
        }
        out["index"] = index.into();
        out["expected"] = json!(name.expected());
        Ok(out.to_string())
    }
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn render(spec_json: &str, model: &str, size: u32) -> Result<String, JsError> {
    js(api::render(spec_json, model, size))
}

#[wasm_bindgen(js_name = chordAngle)]
pub fn chord_angle(r: f64, c: f64, l: f64) -> Result<String, JsError> {
    js(api::chord_angle(r, c, l))
}

#[wasm_bindgen]
pub fn scenarios() -> String {
    api::scenarios()
}

#[wasm_bindgen(js_name = scenarioDraw)]
pub fn scenario_draw(name: &str, seed: u32, index: u32, model: &str, size: u32) -> Result<String, JsError> {
    js(api::scenario_draw(name, seed.into(), index.into(), model, size))
}
