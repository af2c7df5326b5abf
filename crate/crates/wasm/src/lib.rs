//! Three operations for the browser page in `www/`. Each takes the source
//! text of a catlang file and returns the outcome as JSON.

use catlang::Options;
use wasm_bindgen::prelude::*;

/// Elaborates the text and re-runs every law check.
#[wasm_bindgen]
pub fn check_laws(text: &str) -> String {
    catlang::check(text, &Options::default()).render(true)
}

/// Limit of the named diagram, constructive and by exhaustive search.
#[wasm_bindgen]
pub fn compute_limit(text: &str, diagram: &str) -> String {
    catlang::limit(text, diagram, &Options::default()).render(true)
}

/// Yoneda bijection at `object` in whichever category declares it.
#[wasm_bindgen]
pub fn yoneda(text: &str, object: &str) -> String {
    catlang::yoneda(text, object, None, &Options::default()).render(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z2: &str = "category Z2 presented objects: * generators: g : * -> * relations: g.g = id";

    #[test]
    fn operations_return_json() {
        let v = check_laws(Z2);
        assert!(v.contains("\"status\": \"passed\""), "{v}");
        assert!(yoneda(Z2, "*").contains("\"passed\""));
        assert!(compute_limit(Z2, "D").contains("\"input-error\""));
        assert!(check_laws("category").contains("\"input-error\""));
    }
}
