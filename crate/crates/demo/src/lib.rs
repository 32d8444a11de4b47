//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each export is a thin wrapper over a plain function returning
//! `Result<String, String>`, so the logic also runs (and is tested) natively.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use probphrase::experiment::pair_universe;
use probphrase::io::svg::{render_classifier, render_fit};
use probphrase::{
    bayes_update, explain_update, fit_selection_function, generate_tasks, make_model,
    simulate_responses, table1_function, Classifier, HypothesisName, NoiseModel, PhraseClassifier,
    ProbabilityPct, UpdatePair,
};

fn classifier(model: &str, more: Option<[f64; 3]>) -> Result<Classifier, String> {
    if model.eq_ignore_ascii_case("table1") {
        return Ok(table1_function().into());
    }
    let name: HypothesisName = model
        .parse()
        .map_err(|e: probphrase::Error| e.to_string())?;
    let more = more.unwrap_or(name.default_more_thresholds());
    Ok(make_model(name, more, None)
        .map_err(|e| e.to_string())?
        .into())
}

/// SVG of the phrase regions for `model` ("table1", "h1", "h2" or "h3").
/// The constants are the more-side thresholds; the less side mirrors them.
/// They are ignored for "table1".
pub fn partition_svg(model: &str, more: [f64; 3]) -> Result<String, String> {
    let c = classifier(model, Some(more))?;
    let title = match &c {
        Classifier::Lines(_) => "Phrase partition lines".to_string(),
        Classifier::Thresholds(th) => HypothesisName::from_family(th.family())
            .description()
            .to_string(),
    };
    Ok(render_classifier(&c, &title))
}

#[derive(Serialize)]
struct ExplainOut {
    sentence: String,
    phrase: &'static str,
    posterior: f64,
    range: Option<String>,
}

/// Bayes update of `prior` by likelihood ratio `lr`, explained in words.
/// Returns JSON `{sentence, phrase, posterior, range}`.
pub fn explain_json(prior: f64, lr: f64, name: &str, model: &str) -> Result<String, String> {
    let prior = ProbabilityPct::new(prior).map_err(|e| e.to_string())?;
    let posterior = bayes_update(prior, lr).map_err(|e| e.to_string())?;
    let c = classifier(model, None)?;
    let name = if name.trim().is_empty() {
        "the event"
    } else {
        name
    };
    let e = explain_update(name, UpdatePair { prior, posterior }, &c, true)
        .map_err(|e| e.to_string())?;
    let out = ExplainOut {
        sentence: e.sentence,
        phrase: e.phrase.token(),
        posterior: posterior.value(),
        range: e.numeric_range.map(|r| r.to_string()),
    };
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct LineOut {
    boundary: String,
    slope: f64,
    intercept: f64,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct RecoverOut {
    svg: String,
    responses: usize,
    fit_accuracy: f64,
    grid_agreement: f64,
    lines: Vec<LineOut>,
}

/// Simulate `subjects` respondents answering from the empirical function
/// with adjacent-flip noise `epsilon`, refit the lines and compare.
/// Returns JSON `{svg, responses, fitAccuracy, gridAgreement, lines}`.
pub fn plant_and_recover_json(subjects: u32, epsilon: f64, seed: u32) -> Result<String, String> {
    let truth: Classifier = table1_function().into();
    let sheets =
        generate_tasks(subjects as usize, 40, u64::from(seed)).map_err(|e| e.to_string())?;
    let noise = if epsilon > 0.0 {
        NoiseModel::AdjacentFlip { epsilon }
    } else {
        NoiseModel::None
    };
    let data =
        simulate_responses(&sheets, &truth, noise, u64::from(seed)).map_err(|e| e.to_string())?;
    let fit = fit_selection_function(&data, 20).map_err(|e| e.to_string())?;
    let fitted: Classifier = fit.fitted.clone().into();

    let grid = pair_universe();
    let mut same = 0;
    for p in &grid {
        if fitted.classify(*p).map_err(|e| e.to_string())?
            == truth.classify(*p).map_err(|e| e.to_string())?
        {
            same += 1;
        }
    }
    let points: Vec<_> = fit
        .boundaries
        .iter()
        .flat_map(|b| b.points.iter().copied())
        .collect();
    let out = RecoverOut {
        svg: render_fit(&data, &fitted, &points, "Recovered partition lines"),
        responses: data.len(),
        fit_accuracy: fit.overall_accuracy(),
        grid_agreement: same as f64 / grid.len() as f64,
        lines: fit
            .fitted
            .lines()
            .map(|l| LineOut {
                boundary: l.boundary.label(),
                slope: l.slope,
                intercept: l.intercept,
            })
            .collect(),
    };
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

#[wasm_bindgen(js_name = partitionSvg)]
pub fn partition_svg_js(model: &str, t1: f64, t2: f64, t3: f64) -> Result<String, JsValue> {
    partition_svg(model, [t1, t2, t3]).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = explainUpdate)]
pub fn explain_js(prior: f64, lr: f64, name: &str, model: &str) -> Result<String, JsValue> {
    explain_json(prior, lr, name, model).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = plantAndRecover)]
pub fn plant_and_recover_js(subjects: u32, epsilon: f64, seed: u32) -> Result<String, JsValue> {
    plant_and_recover_json(subjects, epsilon, seed).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn svg_for_each_model() {
        for model in ["table1", "h1", "h2", "h3"] {
            let svg = partition_svg(model, [2.0, 4.0, 8.0]).unwrap();
            assert!(svg.starts_with("<svg"));
        }
        assert!(partition_svg("h2", [5.0, 3.0, 8.0]).is_err());
        assert!(partition_svg("h7", [1.0, 2.0, 3.0]).is_err());
    }

    #[test]
    fn explain_returns_json() {
        let v: serde_json::Value =
            serde_json::from_str(&explain_json(25.0, 9.0, "", "table1").unwrap()).unwrap();
        assert_eq!(v["phrase"], "great_deal_more");
        assert!((v["posterior"].as_f64().unwrap() - 75.0).abs() < 1e-9);
        assert!(v["sentence"]
            .as_str()
            .unwrap()
            .starts_with("In light of the evidence, the event is"));
        assert!(v["range"].is_string());
        assert!(explain_json(120.0, 2.0, "A", "table1").is_err());
        assert!(explain_json(20.0, 0.0, "A", "table1").is_err());
    }

    #[test]
    fn recovery_round_trip() {
        let v: serde_json::Value =
            serde_json::from_str(&plant_and_recover_json(20, 0.0, 0).unwrap()).unwrap();
        assert_eq!(v["responses"], 800);
        assert!(v["gridAgreement"].as_f64().unwrap() >= 0.97);
        assert_eq!(v["lines"].as_array().unwrap().len(), 6);
        assert!(plant_and_recover_json(1, 0.0, 0).is_err());
    }
}
