//! Ideal text and structured (JSON) input/output.
//!
//! Text grammar, whitespace ignored:
//!
//! ```text
//! ideal := facet ("," facet)*
//! facet := [a-zA-Z]+            (default: every letter is a vertex)
//! facet := name ("*" name)*     (with an explicit variable list)
//! ```
//!
//! Vertices are numbered in order of first appearance, or in variable-list
//! order when one is given.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complex::{Complex, Universe};
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug, Default)]
pub struct ParseOptions {
    /// Multi-character mode: the ordered variable list.
    pub vars: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseWarning {
    /// A generator divisible by another generator was dropped.
    RedundantGenerator { dropped: String, divisor: String },
}

#[derive(Clone, Debug)]
pub struct Parsed {
    pub complex: Complex,
    pub warnings: Vec<ParseWarning>,
}

/// Parses `text` into the facet complex of the ideal it denotes.
pub fn parse_ideal(text: &str, options: &ParseOptions) -> Result<Parsed> {
    if text.trim().is_empty() {
        return Err(Error::EmptyInput);
    }
    match &options.vars {
        None => parse_letters(text),
        Some(vars) => parse_named(text, vars),
    }
}

/// Shorthand for single-letter mode, ignoring warnings.
pub fn parse_ideal_str(text: &str) -> Result<Complex> {
    parse_ideal(text, &ParseOptions::default()).map(|p| p.complex)
}

fn parse_letters(text: &str) -> Result<Parsed> {
    let mut names: Vec<String> = Vec::new();
    let mut sets = Vec::new();
    let mut current = VertexSet::new();
    let mut current_text = String::new();
    let mut facet_start = 0;

    let mut finish = |current: &mut VertexSet, current_text: &mut String, at: usize| -> Result<()> {
        if current.is_empty() {
            return Err(Error::Syntax { position: at, message: "expected a monomial".into() });
        }
        sets.push(std::mem::take(current));
        current_text.clear();
        Ok(())
    };

    for (pos, ch) in text.char_indices() {
        if ch.is_whitespace() {
            continue;
        }
        if ch == ',' {
            finish(&mut current, &mut current_text, facet_start)?;
            facet_start = pos + 1;
            continue;
        }
        if !ch.is_ascii_alphabetic() {
            return Err(Error::Syntax { position: pos, message: format!("unexpected character `{ch}`") });
        }
        let name = ch.to_string();
        let v = match names.iter().position(|n| *n == name) {
            Some(v) => v,
            None => {
                names.push(name);
                names.len() - 1
            }
        };
        current_text.push(ch);
        if !current.insert(v) {
            return Err(Error::NonSquarefree(current_text));
        }
    }
    finish(&mut current, &mut current_text, facet_start)?;

    build(Universe::new(names)?, sets)
}

fn parse_named(text: &str, vars: &[String]) -> Result<Parsed> {
    let universe = Universe::new(vars.iter().map(|v| v.trim().to_owned()).collect())?;
    let mut sets = Vec::new();
    let mut offset = 0;
    for piece in text.split(',') {
        let mut set = VertexSet::new();
        let mut inner = offset;
        for name in piece.split('*') {
            let trimmed: String = name.chars().filter(|c| !c.is_whitespace()).collect();
            if trimmed.is_empty() {
                return Err(Error::Syntax { position: inner, message: "expected a variable name".into() });
            }
            let v = universe
                .index_of(&trimmed)
                .ok_or_else(|| Error::UnknownVariable { name: trimmed.clone(), position: inner })?;
            if !set.insert(v) {
                return Err(Error::NonSquarefree(piece.trim().to_owned()));
            }
            inner += name.len() + 1;
        }
        sets.push(set);
        offset += piece.len() + 1;
    }
    build(universe, sets)
}

fn build(universe: Universe, sets: Vec<VertexSet>) -> Result<Parsed> {
    let universe = Arc::new(universe);
    let (complex, dropped) = Complex::minimalized(universe.clone(), sets.clone())?;
    let warnings = dropped
        .into_iter()
        .map(|(d, w)| ParseWarning::RedundantGenerator {
            dropped: universe.monomial(&sets[d]),
            divisor: universe.monomial(&sets[w]),
        })
        .collect();
    Ok(Parsed { complex, warnings })
}

/// Renders facets in list order as `m1, m2, ...`.
pub fn render_ideal(c: &Complex) -> String {
    (0..c.len()).map(|i| c.monomial(i)).collect::<Vec<_>>().join(", ")
}

/// `{"facets": [[name, ...], ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuredComplex {
    pub facets: Vec<Vec<String>>,
}

impl From<&Complex> for StructuredComplex {
    fn from(c: &Complex) -> Self {
        StructuredComplex { facets: c.named_facets() }
    }
}

impl StructuredComplex {
    pub fn into_complex(self) -> Result<Parsed> {
        if self.facets.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut names: Vec<String> = Vec::new();
        let mut sets = Vec::new();
        for facet in &self.facets {
            let mut set = VertexSet::new();
            for name in facet {
                if name.is_empty() {
                    return Err(Error::Structured("empty vertex name".into()));
                }
                let v = match names.iter().position(|n| n == name) {
                    Some(v) => v,
                    None => {
                        names.push(name.clone());
                        names.len() - 1
                    }
                };
                if !set.insert(v) {
                    return Err(Error::NonSquarefree(facet.join("*")));
                }
            }
            if set.is_empty() {
                return Err(Error::Structured("empty facet".into()));
            }
            sets.push(set);
        }
        build(Universe::new(names)?, sets)
    }
}

pub fn parse_structured(text: &str) -> Result<Parsed> {
    let s: StructuredComplex = serde_json::from_str(text).map_err(|e| Error::Structured(e.to_string()))?;
    s.into_complex()
}

pub fn render_structured(c: &Complex) -> String {
    serde_json::to_string(&StructuredComplex::from(c)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(c: &Complex) -> Vec<String> {
        c.universe().names().to_vec()
    }

    #[test]
    fn five_facet_ideal() {
        let p = parse_ideal("xyz, yzv, yu, vw, wt", &ParseOptions::default()).unwrap();
        assert!(p.warnings.is_empty());
        assert_eq!(names(&p.complex), ["x", "y", "z", "v", "u", "w", "t"]);
        assert_eq!(
            p.complex.named_facets(),
            vec![vec!["x", "y", "z"], vec!["y", "z", "v"], vec!["y", "u"], vec!["v", "w"], vec!["w", "t"]]
        );
    }

    #[test]
    fn facet_complex_of_small_ideal() {
        let c = parse_ideal_str("xy, yzu, xz").unwrap();
        assert_eq!(c.named_facets(), vec![vec!["x", "y"], vec!["y", "z", "u"], vec!["x", "z"]]);
    }

    #[test]
    fn redundant_generators_are_dropped_with_warning() {
        let p = parse_ideal("xy, xyz", &ParseOptions::default()).unwrap();
        assert_eq!(p.complex.named_facets(), vec![vec!["x", "y"]]);
        assert_eq!(p.warnings, vec![ParseWarning::RedundantGenerator { dropped: "xyz".into(), divisor: "xy".into() }]);
        let p = parse_ideal("xyz, xy, xy", &ParseOptions::default()).unwrap();
        assert_eq!(p.complex.named_facets(), vec![vec!["x", "y"]]);
        assert_eq!(p.warnings.len(), 2);
    }

    #[test]
    fn whitespace_is_ignored() {
        let c = parse_ideal_str("  x y z ,\n yz v").unwrap();
        assert_eq!(render_ideal(&c), "xyz, yzv");
    }

    #[test]
    fn errors() {
        assert_eq!(parse_ideal_str("").unwrap_err(), Error::EmptyInput);
        assert_eq!(parse_ideal_str("   ").unwrap_err(), Error::EmptyInput);
        assert!(matches!(parse_ideal_str("xy, 3z"), Err(Error::Syntax { position: 4, .. })));
        assert!(matches!(parse_ideal_str("xy,,z"), Err(Error::Syntax { position: 3, .. })));
        assert!(matches!(parse_ideal_str("xy,"), Err(Error::Syntax { .. })));
        assert_eq!(parse_ideal_str("xxy").unwrap_err(), Error::NonSquarefree("xx".into()));
        let vars = ParseOptions { vars: Some(vec!["a1".into(), "a1".into()]) };
        assert_eq!(parse_ideal("a1", &vars).unwrap_err(), Error::DuplicateVariable("a1".into()));
    }

    #[test]
    fn named_variables() {
        let opts = ParseOptions { vars: Some(vec!["x1".into(), "x2".into(), "x3".into()]) };
        let p = parse_ideal("x1*x2, x2 * x3", &opts).unwrap();
        assert_eq!(p.complex.named_facets(), vec![vec!["x1", "x2"], vec!["x2", "x3"]]);
        assert_eq!(render_ideal(&p.complex), "x1*x2, x2*x3");
        assert!(matches!(parse_ideal("x1*x4", &opts), Err(Error::UnknownVariable { position: 3, .. })));
        assert!(matches!(parse_ideal("x1*, x2", &opts), Err(Error::Syntax { .. })));
        // round trip through the renderer
        let again = parse_ideal(&render_ideal(&p.complex), &opts).unwrap();
        assert_eq!(again.complex, p.complex);
    }

    #[test]
    fn render_examples() {
        assert_eq!(render_ideal(&parse_ideal_str("xy").unwrap()), "xy");
        let c = parse_ideal_str("xyz, yzv, yu, vw, wt").unwrap();
        assert_eq!(render_ideal(&c), "xyz, yzv, yu, vw, wt");
        assert_eq!(render_ideal(&Complex::empty(c.universe().clone())), "");
    }

    #[test]
    fn structured_format() {
        let c = parse_ideal_str("xyz, yzv, yu").unwrap();
        let json = render_structured(&c);
        assert_eq!(json, r#"{"facets":[["x","y","z"],["y","z","v"],["y","u"]]}"#);
        let back = parse_structured(&json).unwrap();
        assert_eq!(back.complex.named_facets(), c.named_facets());
        assert!(matches!(parse_structured(r#"{"facets":[["x"],[]]}"#), Err(Error::Structured(_))));
        assert_eq!(parse_structured(r#"{"facets":[]}"#).unwrap_err(), Error::EmptyInput);
        assert!(matches!(parse_structured("[1,2]"), Err(Error::Structured(_))));
    }
}
