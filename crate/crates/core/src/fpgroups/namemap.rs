use std::path::Path;

use serde::Serialize;

use super::word::{Presentation, Word};
use super::FpError;
use crate::hermitian::{builtin, AnyMatrix, Domain};
use crate::reflections::certify;

/// Binds a name used in relator lists to a word in a presentation's
/// generators, optionally attaching the isometry it stands for.
#[derive(Debug, Clone, PartialEq)]
pub struct Binding {
    pub name: String,
    pub word: String,
    pub matrix: Option<MatrixSource>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum MatrixSource {
    Builtin,
    Literal(String),
}

/// A sidecar mapping lattice generator names to presentation generators.
///
/// Lines are `domain <d|quaternion>` or `<name> <word> [builtin | <matrix>]`;
/// `#` starts a comment.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct NameMap {
    pub domain: Option<Domain>,
    pub bindings: Vec<Binding>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BindingCheck {
    pub name: String,
    pub word: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub is_reflection: Option<bool>,
}

impl NameMap {
    pub fn parse(text: &str) -> Result<Self, FpError> {
        let mut map = NameMap::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |m: String| FpError::NameMap(format!("line {}: {m}", n + 1));
            let (head, rest) = split_token(line);
            if head == "domain" {
                let d = rest.parse::<Domain>().map_err(|e| err(e.to_string()))?;
                map.domain = Some(d);
                continue;
            }
            let (word, tail) = split_token(rest);
            if word.is_empty() {
                return Err(err(format!("binding for `{head}` has no word")));
            }
            let matrix = match tail {
                "" => None,
                "builtin" => Some(MatrixSource::Builtin),
                t if t.starts_with('[') => Some(MatrixSource::Literal(t.to_string())),
                t => return Err(err(format!("expected `builtin` or a matrix literal, found `{t}`"))),
            };
            if map.bindings.iter().any(|b| b.name == head) {
                return Err(err(format!("`{head}` bound twice")));
            }
            map.bindings.push(Binding { name: head.to_string(), word: word.to_string(), matrix });
        }
        Ok(map)
    }

    pub fn load(path: &Path) -> Result<Self, FpError> {
        let text = std::fs::read_to_string(path).map_err(|e| FpError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Each name bound to the generator of the same name, checked against
    /// the built-in matrix.
    pub fn identity(names: &[&str], domain: Domain) -> Self {
        let bindings = names
            .iter()
            .map(|n| Binding { name: n.to_string(), word: n.to_string(), matrix: Some(MatrixSource::Builtin) })
            .collect();
        NameMap { domain: Some(domain), bindings }
    }

    pub fn binding(&self, name: &str) -> Option<&Binding> {
        self.bindings.iter().find(|b| b.name == name)
    }

    /// The word a name stands for: its binding if present, otherwise the name
    /// read as a word in the generators.
    pub fn resolve(&self, name: &str, p: &Presentation) -> Result<Word, FpError> {
        match self.binding(name) {
            Some(b) => p.parse_word(&b.word),
            None => p.parse_word(name),
        }
    }

    /// Checks every binding against `p` and certifies attached matrices.
    pub fn validate(&self, p: &Presentation, domain: Domain) -> Result<Vec<BindingCheck>, FpError> {
        if let Some(d) = self.domain {
            if d != domain {
                return Err(FpError::NameMap(format!("map is for {d}, expected {domain}")));
            }
        }
        let mut out = Vec::new();
        for b in &self.bindings {
            p.parse_word(&b.word).map_err(|e| FpError::NameMap(format!("`{}`: {e}", b.name)))?;
            let matrix: Option<AnyMatrix> = match &b.matrix {
                None => None,
                Some(MatrixSource::Builtin) => Some(
                    builtin(&b.name, domain)
                        .ok_or_else(|| FpError::NameMap(format!("no built-in matrix named `{}` for {domain}", b.name)))?,
                ),
                Some(MatrixSource::Literal(t)) => Some(
                    domain.parse_matrix(t).map_err(|e| FpError::NameMap(format!("`{}`: {e}", b.name)))?,
                ),
            };
            let is_reflection = match &matrix {
                None => None,
                Some(m) => {
                    let cert = certify(m).map_err(|e| FpError::NameMap(format!("`{}`: {e}", b.name)))?;
                    Some(cert.is_reflection())
                }
            };
            out.push(BindingCheck {
                name: b.name.clone(),
                word: b.word.clone(),
                matrix: matrix.map(|m| m.to_string()),
                is_reflection,
            });
        }
        Ok(out)
    }
}

fn split_token(s: &str) -> (&str, &str) {
    let s = s.trim();
    match s.find(char::is_whitespace) {
        Some(i) => (&s[..i], s[i..].trim()),
        None => (s, ""),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroups::parse_presentation;
    use crate::rings::RingSpec;

    #[test]
    fn parse_and_resolve() {
        let text = "# map\ndomain 7\nR g2 builtin\nI0 g1 [0,0,1; 0,-1,0; 1,0,0]\nX g1*g2\n";
        let map = NameMap::parse(text).unwrap();
        let d7 = Domain::Complex(RingSpec::new(7).unwrap());
        assert_eq!(map.domain, Some(d7));
        assert_eq!(map.bindings.len(), 3);
        let p = parse_presentation("gens g1 g2\nrels\ng1^2\ng2^2").unwrap();
        assert_eq!(map.resolve("X", &p).unwrap(), p.parse_word("g1*g2").unwrap());
        assert_eq!(map.resolve("g2^-1", &p).unwrap(), p.parse_word("g2^-1").unwrap());
        let checks = map.validate(&p, d7).unwrap();
        assert_eq!(checks[0].is_reflection, Some(true));
        assert_eq!(checks[1].is_reflection, Some(true));
        assert_eq!(checks[2].is_reflection, None);
        assert!(map.validate(&p, Domain::Quaternionic).is_err());
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(NameMap::parse("R\n").is_err());
        assert!(NameMap::parse("R a nonsense\n").is_err());
        assert!(NameMap::parse("domain 4\n").is_err());
        assert!(NameMap::parse("R a\nR b\n").is_err());
        let p = parse_presentation("gens a\nrels\na^2").unwrap();
        let map = NameMap::parse("R b builtin").unwrap();
        assert!(map.validate(&p, Domain::Quaternionic).is_err());
    }

    #[test]
    fn identity_map() {
        let p = parse_presentation("gens I0 Ri Rsigma\nrels\nI0^2").unwrap();
        let map = NameMap::identity(&["I0", "Ri", "Rsigma"], Domain::Quaternionic);
        let checks = map.validate(&p, Domain::Quaternionic).unwrap();
        assert!(checks.iter().all(|c| c.is_reflection == Some(true)));
    }
}
