//! File formats.
//!
//! Ideals come in two forms. The canonical JSON is
//! `{"variables": n, "generators": [[e1, ..., en], ...]}`. The text grammar
//! puts one ideal per file: a `vars: x,y,z` line naming the variables, then
//! the generators separated by commas, each a `*`-joined product of factors
//! `name` or `name^k` (the token `1` is also accepted for the unit
//! generator). Blank lines and `#` comments are skipped.
//!
//! Complexes: JSON `{"vertices": n, "facets": [[1,2],[2,3]]}` with 1-based
//! vertex labels, or the text grammar `facets: {1,2},{2,3}` with an optional
//! `vertices: n` line (default: the largest label used).
//!
//! Posets: `{"n": N, "leq": [[bool, ...], ...]}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;
use crate::posets::FinitePoset;
use crate::simplicial::SimplicialComplex;

#[derive(Serialize, Deserialize)]
struct IdealJson {
    variables: usize,
    generators: Vec<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    vertices: usize,
    facets: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct PosetJson {
    n: usize,
    leq: Vec<Vec<bool>>,
}

/// A parsed ideal together with the variable names used for display.
#[derive(Clone, Debug)]
pub struct NamedIdeal {
    pub ideal: MonomialIdeal,
    pub names: Vec<String>,
}

pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// Detects JSON by the leading `{`, else parses the text grammar.
pub fn parse_ideal(src: &str) -> Result<NamedIdeal> {
    if src.trim_start().starts_with('{') {
        parse_ideal_json(src)
    } else {
        parse_ideal_text(src)
    }
}

pub fn parse_ideal_json(src: &str) -> Result<NamedIdeal> {
    let raw: IdealJson = serde_json::from_str(src).map_err(|e| Error::Parse(e.to_string()))?;
    let gens = raw
        .generators
        .into_iter()
        .map(|exps| {
            if exps.len() != raw.variables {
                Err(Error::Parse(format!(
                    "generator has {} exponents, expected {}",
                    exps.len(),
                    raw.variables
                )))
            } else {
                Ok(Monomial::new(exps))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(NamedIdeal {
        ideal: MonomialIdeal::from_generators(raw.variables, gens)?,
        names: default_names(raw.variables),
    })
}

pub fn ideal_to_json(ideal: &MonomialIdeal) -> String {
    let raw = IdealJson {
        variables: ideal.n_vars(),
        generators: ideal
            .generators()
            .iter()
            .map(|g| g.exponents().to_vec())
            .collect(),
    };
    serde_json::to_string_pretty(&raw).expect("ideal serializes")
}

pub fn parse_ideal_text(src: &str) -> Result<NamedIdeal> {
    let mut names: Option<Vec<String>> = None;
    let mut gen_src = String::new();
    for line in src.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("vars:") {
            if names.is_some() {
                return Err(Error::Parse("duplicate vars line".into()));
            }
            let list: Vec<String> = rest
                .split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect();
            for name in &list {
                if !is_identifier(name) {
                    return Err(Error::Parse(format!("bad variable name '{name}'")));
                }
            }
            names = Some(list);
        } else {
            if !gen_src.is_empty() {
                gen_src.push(',');
            }
            gen_src.push_str(line);
        }
    }
    let names = names.ok_or_else(|| Error::Parse("missing vars line".into()))?;
    let n = names.len();
    let mut gens = vec![];
    for chunk in gen_src.split(',') {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            continue;
        }
        gens.push(parse_monomial(chunk, &names)?);
    }
    Ok(NamedIdeal {
        ideal: MonomialIdeal::from_generators(n, gens)?,
        names,
    })
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses `name('^' integer)?` factors joined by `*`; repeated factors
/// accumulate. The bare token `1` is the unit monomial.
pub fn parse_monomial(src: &str, names: &[String]) -> Result<Monomial> {
    let n = names.len();
    let mut exps = vec![0u64; n];
    for factor in src.split('*') {
        let factor = factor.trim();
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in '{src}'")));
        }
        if factor == "1" {
            continue;
        }
        let (name, power) = match factor.split_once('^') {
            None => (factor, 1u64),
            Some((name, exp)) => {
                let power = exp
                    .trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad exponent in '{factor}'")))?;
                (name.trim(), power)
            }
        };
        let idx = names
            .iter()
            .position(|x| x == name)
            .ok_or_else(|| Error::Parse(format!("unknown variable '{name}'")))?;
        exps[idx] += power;
    }
    Ok(Monomial::new(exps))
}

pub fn format_monomial(m: &Monomial, names: Option<&[String]>) -> String {
    if m.is_one() {
        return "1".into();
    }
    let fallback = default_names(m.n_vars());
    let names = names.unwrap_or(&fallback);
    let mut parts = vec![];
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    parts.join("*")
}

pub fn ideal_to_text(ideal: &MonomialIdeal, names: Option<&[String]>) -> String {
    let fallback = default_names(ideal.n_vars());
    let names = names.unwrap_or(&fallback);
    let mut out = format!("vars: {}\n", names.join(","));
    let gens: Vec<String> = ideal
        .generators()
        .iter()
        .map(|g| format_monomial(g, Some(names)))
        .collect();
    if !gens.is_empty() {
        out.push_str(&gens.join(", "));
        out.push('\n');
    }
    out
}

pub fn parse_complex(src: &str) -> Result<SimplicialComplex> {
    if src.trim_start().starts_with('{') {
        parse_complex_json(src)
    } else {
        parse_complex_text(src)
    }
}

pub fn parse_complex_json(src: &str) -> Result<SimplicialComplex> {
    let raw: ComplexJson = serde_json::from_str(src).map_err(|e| Error::Parse(e.to_string()))?;
    facets_to_complex(raw.vertices, raw.facets)
}

fn facets_to_complex(vertices: usize, facets: Vec<Vec<usize>>) -> Result<SimplicialComplex> {
    let faces = facets
        .into_iter()
        .map(|f| {
            f.into_iter()
                .map(|v| {
                    if v == 0 || v > vertices {
                        Err(Error::Parse(format!(
                            "vertex {v} out of range 1..={vertices}"
                        )))
                    } else {
                        Ok(v - 1)
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SimplicialComplex::new(vertices, faces)
}

pub fn complex_to_json(c: &SimplicialComplex) -> String {
    let raw = ComplexJson {
        vertices: c.n_vertices(),
        facets: c
            .facets()
            .iter()
            .map(|f| f.iter().map(|&v| v + 1).collect())
            .collect(),
    };
    serde_json::to_string_pretty(&raw).expect("complex serializes")
}

/// Text grammar: `facets: {1,2},{2,3}` plus an optional `vertices: n` line.
pub fn parse_complex_text(src: &str) -> Result<SimplicialComplex> {
    let mut vertices: Option<usize> = None;
    let mut facet_src: Option<String> = None;
    for line in src.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("vertices:") {
            vertices = Some(
                rest.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse("bad vertex count".into()))?,
            );
        } else if let Some(rest) = line.strip_prefix("facets:") {
            facet_src = Some(rest.trim().to_string());
        } else {
            match &mut facet_src {
                Some(s) => s.push_str(line),
                None => return Err(Error::Parse(format!("unexpected line '{line}'"))),
            }
        }
    }
    let facet_src =
        facet_src.ok_or_else(|| Error::Parse("missing facets line".into()))?;
    let mut facets: Vec<Vec<usize>> = vec![];
    let mut rest = facet_src.trim();
    while !rest.is_empty() {
        if rest.starts_with(',') {
            rest = rest[1..].trim_start();
            continue;
        }
        if !rest.starts_with('{') {
            return Err(Error::Parse(format!("expected '{{' at '{rest}'")));
        }
        let close = rest
            .find('}')
            .ok_or_else(|| Error::Parse("unclosed facet brace".into()))?;
        let inner = &rest[1..close];
        let mut facet = vec![];
        for tok in inner.split(',') {
            let tok = tok.trim();
            if tok.is_empty() {
                continue;
            }
            facet.push(
                tok.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad vertex '{tok}'")))?,
            );
        }
        facets.push(facet);
        rest = rest[close + 1..].trim_start();
    }
    let max_label = facets.iter().flatten().copied().max().unwrap_or(0);
    let vertices = vertices.unwrap_or(max_label);
    facets_to_complex(vertices, facets)
}

pub fn complex_to_text(c: &SimplicialComplex) -> String {
    let facets: Vec<String> = c
        .facets()
        .iter()
        .map(|f| {
            let labels: Vec<String> = f.iter().map(|&v| (v + 1).to_string()).collect();
            format!("{{{}}}", labels.join(","))
        })
        .collect();
    format!(
        "vertices: {}\nfacets: {}\n",
        c.n_vertices(),
        facets.join(",")
    )
}

pub fn parse_poset_json(src: &str) -> Result<FinitePoset> {
    let raw: PosetJson = serde_json::from_str(src).map_err(|e| Error::Parse(e.to_string()))?;
    if raw.leq.len() != raw.n || raw.leq.iter().any(|row| row.len() != raw.n) {
        return Err(Error::Parse("leq matrix must be n x n".into()));
    }
    FinitePoset::new(raw.n, raw.leq.into_iter().flatten().collect())
}

pub fn poset_to_json(p: &FinitePoset) -> String {
    let raw = PosetJson {
        n: p.len(),
        leq: (0..p.len())
            .map(|a| (0..p.len()).map(|b| p.leq(a, b)).collect())
            .collect(),
    };
    serde_json::to_string_pretty(&raw).expect("poset serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_ideal_roundtrip() {
        let src = "vars: x,y,z\nx^2, x*y, y^2\n";
        let parsed = parse_ideal(src).unwrap();
        assert_eq!(parsed.names, vec!["x", "y", "z"]);
        assert_eq!(parsed.ideal.num_generators(), 3);
        let printed = ideal_to_text(&parsed.ideal, Some(&parsed.names));
        let reparsed = parse_ideal(&printed).unwrap();
        assert_eq!(parsed.ideal, reparsed.ideal);
    }

    #[test]
    fn text_ideal_grammar_details() {
        // repeated factors accumulate, x^0 and 1 are accepted
        let parsed = parse_ideal("vars: x,y\nx*x*y^0, 1\n").unwrap();
        assert!(parsed.ideal.is_unit());
        let parsed = parse_ideal("vars: x,y\nx*x\n").unwrap();
        assert_eq!(
            parsed.ideal.generators(),
            &[Monomial::new(vec![2, 0])]
        );
        // zero ideal: vars line only
        assert!(parse_ideal("vars: x,y\n").unwrap().ideal.is_zero());
        assert!(parse_ideal("x^2").is_err());
        assert!(parse_ideal("vars: x\ny^2\n").is_err());
    }

    #[test]
    fn json_ideal_roundtrip() {
        let src = r#"{"variables": 2, "generators": [[2,0],[1,1]]}"#;
        let parsed = parse_ideal(src).unwrap();
        assert_eq!(parsed.ideal.num_generators(), 2);
        let printed = ideal_to_json(&parsed.ideal);
        assert_eq!(parse_ideal(&printed).unwrap().ideal, parsed.ideal);
    }

    #[test]
    fn complex_text_and_json() {
        let c = parse_complex("facets: {1,2},{2,3}\n").unwrap();
        assert_eq!(c.n_vertices(), 3);
        assert_eq!(c.facets().len(), 2);
        let printed = complex_to_text(&c);
        assert_eq!(parse_complex(&printed).unwrap(), c);
        let json = complex_to_json(&c);
        assert_eq!(parse_complex(&json).unwrap(), c);

        // explicit empty facet and ambient vertices
        let e = parse_complex("vertices: 2\nfacets: {}\n").unwrap();
        assert_eq!(e, SimplicialComplex::empty_complex(2));
    }

    #[test]
    fn poset_json_roundtrip() {
        let p = FinitePoset::chain(3);
        let json = poset_to_json(&p);
        assert_eq!(parse_poset_json(&json).unwrap(), p);
    }

    #[test]
    fn monomial_formatting() {
        let m = Monomial::new(vec![2, 1, 0]);
        assert_eq!(format_monomial(&m, None), "x1^2*x2");
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        assert_eq!(format_monomial(&m, Some(&names)), "x^2*y");
        assert_eq!(format_monomial(&Monomial::one(2), None), "1");
    }
}
