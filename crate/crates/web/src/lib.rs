//! Browser bindings: three parameter explorers over the named fixtures.
//!
//! Each export returns a JSON string. The plain functions behind them are
//! public so they can be tested natively.

use opcat_core::fixtures;
use opcat_core::freemon::adjunction_check;
use opcat_core::grothendieck::grothendieck;
use opcat_core::nerve::duskin_nerve;
use opcat_core::operad::operad_from_moncat;
use opcat_core::operadic::{para, terminal_odot, to_simplicial};
use opcat_core::simplicial::TruncatedSimplicialSet;
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Level sizes of the nerve of a 2-category fixture, or of the assembled
/// set of an operadic fixture.
pub fn nerve_sizes_json(name: &str) -> Result<String, String> {
    let x = if fixtures::TWOCATS.contains(&name) {
        duskin_nerve(&fixtures::twocat(name).map_err(|e| e.to_string())?)
    } else {
        fixtures::operadic(name).and_then(|o| to_simplicial(&o))
    }
    .map_err(|e| e.to_string())?;
    Ok(json!({ "name": name, "levels": x.sizes() }).to_string())
}

/// Sizes of para(M), and whether the Grothendieck construction of M over
/// the terminal operadic category has the same cells.
pub fn para_summary_json(moncat: &str) -> Result<String, String> {
    let run = || -> opcat_core::Result<serde_json::Value> {
        let m = fixtures::moncat(moncat)?;
        let o = para(&m)?;
        let g = grothendieck(&terminal_odot(), &operad_from_moncat(&m)?)?;
        Ok(json!({
            "moncat": moncat,
            "para": o.sizes(),
            "total": g.total.sizes(),
            "same_sizes": o.sizes() == g.total.sizes(),
        }))
    };
    run().map(|v| v.to_string()).map_err(|e| e.to_string())
}

/// Both sides of the adjunction for the standard k-simplex and a monoidal
/// fixture, with the bijection certified.
pub fn adjunction_json(k: usize, moncat: &str) -> Result<String, String> {
    if k > 3 {
        return Err("k must be at most 3".into());
    }
    let run = || -> opcat_core::Result<serde_json::Value> {
        let x = TruncatedSimplicialSet::standard_simplex(k, 3)?;
        let c = adjunction_check(&x, &fixtures::moncat(moncat)?)?;
        Ok(json!({ "k": k, "moncat": moncat, "maps": c.maps, "functors": c.functors, "certified": true }))
    };
    run().map(|v| v.to_string()).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn nerve_sizes(name: &str) -> Result<String, JsError> {
    nerve_sizes_json(name).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn para_summary(moncat: &str) -> Result<String, JsError> {
    para_summary_json(moncat).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn adjunction(k: usize, moncat: &str) -> Result<String, JsError> {
    adjunction_json(k, moncat).map_err(|e| JsError::new(&e))
}

/// Fixture names for the page's selectors.
#[wasm_bindgen]
pub fn fixture_names() -> String {
    json!({
        "twocats": fixtures::TWOCATS,
        "operadic": fixtures::OPERADIC,
        "moncats": fixtures::MONCATS,
    })
    .to_string()
}
