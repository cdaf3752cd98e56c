//! Browser bindings for the packing library: density lookup, DNA listing
//! and SVG drawings of individual configurations.

use wasm_bindgen::prelude::*;

use chp_pack::builder::build_chp;
use chp_pack::chp::{chp_density, count_configurations, enumerate_for, min_dna, solve_border, CountInput, Dna};
use chp_pack::io::{render_svg, SvgOptions};
use chp_pack::{Error, Sides};

/// `0` selects the circle.
fn sides(sigma: u32) -> Result<Sides, Error> {
    if sigma == 0 {
        Ok(Sides::Circle)
    } else {
        Sides::regular(sigma)
    }
}

fn js(e: Error) -> JsValue {
    JsValue::from_str(&e.to_string())
}

pub fn density_impl(sigma: u32, k: usize) -> Result<f64, Error> {
    chp_density(sides(sigma)?, k)
}

/// `{"count": "...", "dnas": [...], "truncated": bool}`; the list is left
/// empty when there are more than `limit` configurations.
pub fn configurations_impl(sigma: u32, k: usize, limit: usize) -> Result<String, Error> {
    let border = solve_border(sides(sigma)?, k)?;
    let count = count_configurations(&CountInput::from_border(&border));
    let (dnas, truncated) = match enumerate_for(&border, limit) {
        Ok(list) => (list, false),
        Err(Error::CapExceeded { .. }) => (Vec::new(), true),
        Err(e) => return Err(e),
    };
    let quoted: Vec<String> = dnas.iter().map(|d| format!("\"{}\"", d.letters)).collect();
    Ok(format!(r#"{{"count":"{count}","dnas":[{}],"truncated":{truncated}}}"#, quoted.join(",")))
}

/// Empty `dna` draws the lowest-order configuration.
pub fn render_impl(sigma: u32, k: usize, dna: &str, contacts: bool) -> Result<String, Error> {
    let sides = sides(sigma)?;
    let border = solve_border(sides, k)?;
    let dna = if dna.is_empty() { min_dna(&border) } else { Dna::from_letters(dna, &border)? };
    let config = build_chp(sides, k, &dna)?;
    Ok(render_svg(&config, SvgOptions { contacts, fundamental: true }))
}

#[wasm_bindgen]
pub fn density(sigma: u32, k: usize) -> Result<f64, JsValue> {
    density_impl(sigma, k).map_err(js)
}

#[wasm_bindgen]
pub fn configurations(sigma: u32, k: usize, limit: usize) -> Result<String, JsValue> {
    configurations_impl(sigma, k, limit).map_err(js)
}

#[wasm_bindgen]
pub fn render(sigma: u32, k: usize, dna: &str, contacts: bool) -> Result<String, JsValue> {
    render_impl(sigma, k, dna, contacts).map_err(js)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists_and_truncates() {
        assert_eq!(configurations_impl(12, 4, 10).unwrap(), r#"{"count":"3","dnas":["aabb","abab","abba"],"truncated":false}"#);
        let big = configurations_impl(12, 10, 5).unwrap();
        assert!(big.contains(r#""dnas":[]"#) && big.contains(r#""truncated":true"#));
    }

    #[test]
    fn circle_and_errors() {
        assert_eq!(density_impl(0, 3).unwrap(), chp_pack::chp::circle_density(3));
        assert!(density_impl(14, 2).is_err());
        let svg = render_impl(0, 2, "", true).unwrap();
        assert_eq!(svg.matches("<circle ").count(), 19);
        assert!(render_impl(12, 4, "zz", false).is_err());
    }
}
