//! Browser bindings for the interactive demo page: each export takes a
//! Cartan type and rank and returns a JSON string for the page to render.
//! Everything is exact rational arithmetic compiled to WebAssembly.
//!
//! The `*_impl` functions carry the logic and are usable (and tested) on
//! native targets; the exported wrappers only translate errors for JS.

use symdirac_core::hecke::{dirac_hecke, omega_h, verify_hecke_commutator, HTensor, HeckeAlg};
use symdirac_core::roots::{CartanType, RootSystem};
use symdirac_core::verify::{root_system_report, Config};
use symdirac_core::weyl::WeylElt;
use wasm_bindgen::prelude::*;

fn parse(cartan: &str, rank: usize) -> Result<(CartanType, RootSystem), String> {
    let t = CartanType::parse(cartan).ok_or_else(|| format!("unknown type {}", cartan))?;
    let rs = RootSystem::build(t, rank).map_err(|e| e.to_string())?;
    Ok((t, rs))
}

/// Root-system report: positive roots, Gram matrix, `rho_k` norm, pair
/// counts and (for small groups) the two central group-algebra elements.
pub fn root_system_impl(cartan: &str, rank: usize) -> Result<String, String> {
    let (t, _) = parse(cartan, rank)?;
    let cfg = Config {
        group_cap: 1200,
        ..Config::default()
    };
    Ok(root_system_report(t, rank, &cfg).to_string())
}

/// Verifies the Dirac commutator theorem for one Hecke algebra and returns
/// the verdicts together with the fully expanded commutator.
pub fn hecke_commutator_impl(cartan: &str, rank: usize) -> Result<String, String> {
    let (_, rs) = parse(cartan, rank)?;
    if rs.weyl_order() > 400 {
        return Err(
            "Weyl group too large for the in-browser commutator check (|W| <= 400)".into(),
        );
    }
    let alg = HeckeAlg::new(rs, 500).map_err(|e| e.to_string())?;
    let report = verify_hecke_commutator(&alg);
    let (dplus, dminus) = dirac_hecke(&alg);
    let comm = dplus.commutator(&dminus, &alg);
    // residue after removing -Omega_H (x) 1: the group-and-constant shape
    let rest: HTensor = comm.add(&HTensor::from_parts(
        &omega_h(&alg),
        &WeylElt::one(alg.n()),
    ));
    let value = serde_json::json!({
        "system": alg.rs.name(),
        "weyl_order": alg.wg.order(),
        "first_form": report.holds_first_form,
        "second_form": report.holds_second_form,
        "commutator_plus_omega_h": rest.to_json(&alg),
    });
    Ok(value.to_string())
}

/// Degree-0 constant of `nu'(Omega'_W)` by all three routes, plus the
/// coefficients of the exact `a + b Omega(sl2)` relation.
pub fn deg0_row_impl(cartan: &str, rank: usize) -> Result<String, String> {
    let (_, rs) = parse(cartan, rank)?;
    let rep = symdirac_core::hecke::deg0_and_casimir_relation(&rs);
    let value = serde_json::json!({
        "system": rs.name(),
        "eta_route": rep.from_eta.to_string(),
        "closed_form": rep.from_closed_form.to_string(),
        "table_formula": rep.from_table.map(|v| v.to_string()),
        "all_equal": rep.all_equal,
        "a": rep.coeff_a.map(|a| a.to_string()),
        "b": rep.coeff_b.map(|b| b.to_string()),
        "casimir_relation": rep.casimir_relation_holds,
    });
    Ok(value.to_string())
}

#[wasm_bindgen]
pub fn root_system(cartan: &str, rank: usize) -> Result<String, JsValue> {
    root_system_impl(cartan, rank).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn hecke_commutator(cartan: &str, rank: usize) -> Result<String, JsValue> {
    hecke_commutator_impl(cartan, rank).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn deg0_row(cartan: &str, rank: usize) -> Result<String, JsValue> {
    deg0_row_impl(cartan, rank).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exports_return_valid_json() {
        let v: serde_json::Value =
            serde_json::from_str(&root_system_impl("B", 2).unwrap()).unwrap();
        assert_eq!(v["positive_count"], 4);
        let v: serde_json::Value =
            serde_json::from_str(&hecke_commutator_impl("A", 2).unwrap()).unwrap();
        assert_eq!(v["first_form"], true);
        assert_eq!(v["second_form"], true);
        let v: serde_json::Value =
            serde_json::from_str(&deg0_row_impl("G", 2).unwrap()).unwrap();
        assert_eq!(v["all_equal"], true);
        assert!(hecke_commutator_impl("E", 8).is_err());
    }
}
