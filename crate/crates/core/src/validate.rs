//! Input checks. Violations are returned as data, never as errors.

use serde::{Deserialize, Serialize};

use crate::graph::WeightedGraph;
use crate::minimality::is_contractible;
use crate::quad::is_negative_definite;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateOptions {
    pub require_connected: bool,
    /// Also require an intersection form that is not negative definite, as
    /// for the boundary of an affine surface.
    pub surface_mode: bool,
}

impl ValidateOptions {
    pub fn surface() -> Self {
        Self {
            require_connected: true,
            surface_mode: true,
        }
    }
}

pub fn validate(g: &WeightedGraph, opts: &ValidateOptions) -> Vec<String> {
    let mut out = Vec::new();
    if g.is_empty() {
        out.push("graph has no vertices".to_string());
        return out;
    }
    let comps = g.components();
    for comp in &comps {
        let sub = g.induced(comp);
        if is_contractible(&sub).unwrap_or(false) {
            let names: Vec<&str> = comp.iter().map(|v| v.as_str()).collect();
            out.push(format!("contractible component {{{}}}", names.join(",")));
        }
    }
    if opts.require_connected && comps.len() > 1 {
        out.push(format!("graph has {} connected components", comps.len()));
    }
    if opts.surface_mode && is_negative_definite(g) {
        out.push("intersection form is negative definite".to_string());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse;

    #[test]
    fn violations() {
        let v = |s: &str, o: ValidateOptions| validate(&parse(s).unwrap(), &o);
        assert_eq!(v("[[-1]]", ValidateOptions::default()).len(), 1);
        assert!(v("[[-2,-2]]", ValidateOptions::default()).is_empty());
        assert_eq!(
            v("[[-2,-2]]", ValidateOptions::surface()),
            vec!["intersection form is negative definite"]
        );
        assert!(v("((9))", ValidateOptions::surface()).is_empty());
        let two = parse(r#"{"vertices":[{"id":"a","w":1},{"id":"b","w":1}],"edges":[]}"#).unwrap();
        assert_eq!(validate(&two, &ValidateOptions::surface()).len(), 1);
    }
}
