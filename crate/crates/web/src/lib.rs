//! Browser bindings. Every function returns a JSON string or an error
//! message.

use metabelian::families::{predicted_annihilator, predicted_derived_type, IdealFamily};
use metabelian::groups::{psi, verify_annihilator, GroupModel, GroupParams};
use metabelian::parse_poly_list;
use metabelian::quotient::{build_quotient, default_cap};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Structure of `Z[X,Y]/I`; `cap = 0` picks the default degree cap.
#[wasm_bindgen]
pub fn quotient(ideal: &str, cap: u32) -> Result<String, String> {
    let gens = parse_poly_list(ideal).map_err(|e| e.to_string())?;
    let cap = if cap == 0 { default_cap(&gens) } else { cap };
    let q = build_quotient(&gens, cap).map_err(|e| e.to_string())?;
    serde_json::to_string(&q.export()).map_err(|e| e.to_string())
}

/// Generators and quotient of a named family member.
#[wasm_bindgen]
pub fn ideal(spec: &str) -> Result<String, String> {
    let fam = IdealFamily::parse(spec).map_err(|e| e.to_string())?;
    let gens = fam.generators().map_err(|e| e.to_string())?;
    let q = build_quotient(&gens, default_cap(&gens)).map_err(|e| e.to_string())?;
    let v = json!({
        "family": fam.to_string(),
        "generators": gens.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "quotient": q.export(),
    });
    Ok(v.to_string())
}

/// Derived subgroup, predicted annihilator and its verification. With a
/// non-empty `poly`, also the symbolic power of `s2` it gives.
#[wasm_bindgen]
pub fn group(spec: &str, poly: &str) -> Result<String, String> {
    let params = GroupParams::parse(spec).map_err(|e| e.to_string())?;
    let g = GroupModel::build(&params).map_err(|e| e.to_string())?;
    let pred = predicted_annihilator(&params).ok();
    let report = pred.as_ref().map(|p| verify_annihilator(&g, &p.generators()));
    let image = if poly.trim().is_empty() {
        None
    } else {
        let f = poly
            .parse()
            .map_err(|e: metabelian::bipoly::ParseError| e.to_string())?;
        Some(g.describe(&psi(&g, &f)))
    };
    let v = json!({
        "group": params.to_string(),
        "order": format!("{}^{}", params.p(), params.n()),
        "class": params.class(),
        "coclass": params.coclass(),
        "derived_type": g.derived_type().to_string(),
        "predicted_type": predicted_derived_type(&params).ok().map(|t| t.to_string()),
        "predicted_annihilator": pred.map(|p| p.to_string()),
        "verdict": report.as_ref().map(|r| r.verdict.to_string()),
        "detail": report.map(|r| r.computed),
        "symbolic_power": image,
    });
    Ok(v.to_string())
}
