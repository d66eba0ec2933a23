//! The `.pres` text format for presentations.
//!
//! ```text
//! name ariki-koike n=2
//! field {"kind":"prime","modulus":7,"q":6,"zeta":2,"e":2,"p":3}
//! gen S 0
//! gen psi1 [0,1,1,0]
//! idem e[0_1,1_1]
//! rel quadratic : (1)T1.T1 + (6)T1 + (1)1
//! note clearing = ...
//! ```
//!
//! Coefficients are rendered by the field; words are generator labels joined
//! by `.`, with `1` for the empty word. A relation reading `0` is the zero
//! element.

use std::collections::BTreeMap;

use hecke_core::rewrite::{Degree, FreeElem, Generator, Presentation, Relation};
use hecke_core::scalars::{Field, FieldSpec};
use hecke_core::Error;

pub fn print<F: Field>(f: &F, pres: &Presentation<F::Elem>) -> String {
    let mut out = String::new();
    out.push_str(&format!("name {}\n", pres.name));
    out.push_str(&format!(
        "field {}\n",
        serde_json::to_string(&pres.field).expect("field specs serialize")
    ));
    for g in &pres.generators {
        if g.idempotent {
            out.push_str(&format!("idem {}\n", g.label));
            continue;
        }
        let deg = match &g.degree {
            Degree::Fixed(d) => d.to_string(),
            Degree::PerObject(v) => format!("[{}]", v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")),
        };
        out.push_str(&format!("gen {} {}\n", g.label, deg));
    }
    for r in &pres.relations {
        out.push_str(&format!("rel {} : {}\n", r.tag, render_elem(f, pres, &r.elem)));
    }
    for (k, v) in &pres.notes {
        out.push_str(&format!("note {k} = {v}\n"));
    }
    out
}

fn render_elem<F: Field>(f: &F, pres: &Presentation<F::Elem>, elem: &FreeElem<F::Elem>) -> String {
    if elem.is_zero() {
        return "0".into();
    }
    elem.terms
        .iter()
        .map(|(w, c)| format!("({}){}", f.render(c), pres.word_label(w)))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn parse_err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("line {line}: {msg}"))
}

/// The field line, needed to pick the backend before parsing the rest.
pub fn read_field(text: &str) -> Result<FieldSpec, Error> {
    for (no, line) in text.lines().enumerate() {
        if let Some(rest) = line.trim().strip_prefix("field ") {
            return serde_json::from_str(rest).map_err(|e| parse_err(no + 1, e));
        }
    }
    Err(Error::Parse("no field line".into()))
}

pub fn parse<F: Field>(f: &F, text: &str) -> Result<Presentation<F::Elem>, Error> {
    let field = read_field(text)?;
    let mut name = String::from("unnamed");
    let mut generators: Vec<Generator> = Vec::new();
    let mut rel_lines = Vec::new();
    let mut notes = BTreeMap::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let no = no + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (kw, rest) = line.split_once(' ').unwrap_or((line, ""));
        match kw {
            "name" => name = rest.to_string(),
            "field" => {}
            "idem" => generators.push(Generator {
                label: label(no, rest)?,
                idempotent: true,
                degree: Degree::Fixed(0),
            }),
            "gen" => {
                let (l, deg) = rest.split_once(' ').ok_or_else(|| parse_err(no, "gen needs a label and a degree"))?;
                let deg = deg.trim();
                let degree = if let Some(list) = deg.strip_prefix('[').and_then(|d| d.strip_suffix(']')) {
                    let v = list
                        .split(',')
                        .filter(|x| !x.trim().is_empty())
                        .map(|x| x.trim().parse::<i64>().map_err(|e| parse_err(no, e)))
                        .collect::<Result<_, _>>()?;
                    Degree::PerObject(v)
                } else {
                    Degree::Fixed(deg.parse().map_err(|e| parse_err(no, e))?)
                };
                generators.push(Generator {
                    label: label(no, l)?,
                    idempotent: false,
                    degree,
                });
            }
            "rel" => rel_lines.push((no, rest.to_string())),
            "note" => {
                let (k, v) = rest.split_once(" = ").ok_or_else(|| parse_err(no, "note needs 'key = value'"))?;
                notes.insert(k.trim().to_string(), v.to_string());
            }
            other => return Err(parse_err(no, format!("unknown keyword '{other}'"))),
        }
    }
    let index: BTreeMap<&str, usize> = generators.iter().enumerate().map(|(i, g)| (g.label.as_str(), i)).collect();
    let mut relations = Vec::new();
    for (no, rest) in rel_lines {
        let (tag, sum) = rest.split_once(" : ").ok_or_else(|| parse_err(no, "rel needs 'tag : sum'"))?;
        let mut terms = Vec::new();
        if sum.trim() != "0" {
            for term in sum.split(" + ") {
                let term = term.trim();
                let body = term.strip_prefix('(').ok_or_else(|| parse_err(no, format!("term '{term}' lacks a coefficient")))?;
                let (c, word) = body.split_once(')').ok_or_else(|| parse_err(no, "unclosed coefficient"))?;
                let c = f.parse(c.trim()).ok_or_else(|| parse_err(no, format!("bad coefficient '{c}'")))?;
                let w = if word == "1" {
                    Vec::new()
                } else {
                    word.split('.')
                        .map(|g| index.get(g).copied().ok_or_else(|| parse_err(no, format!("unknown generator '{g}'"))))
                        .collect::<Result<_, _>>()?
                };
                terms.push((w, c));
            }
        }
        relations.push(Relation {
            tag: tag.trim().to_string(),
            elem: FreeElem { terms }.simplify(f),
        });
    }
    Ok(Presentation {
        name,
        field,
        generators,
        relations,
        notes,
    })
}

fn label(no: usize, s: &str) -> Result<String, Error> {
    let s = s.trim();
    if s.is_empty() || s == "1" || s.contains(['.', ' ', '(', ')']) {
        return Err(parse_err(no, format!("bad generator label '{s}'")));
    }
    Ok(s.to_string())
}

#[cfg(test)]
mod tests {
    use hecke_core::rewrite::{complete, Caps};
    use hecke_core::scalars::PrimeField;

    use super::*;

    const EXTERIOR: &str = r#"# x^2 = y^2 = 0, yx = -xy over F_3
name exterior
field {"kind":"prime","modulus":3,"q":2,"zeta":1,"e":2,"p":1}
gen x 1
gen y 1
rel x2 : (1)x.x
rel y2 : (1)y.y
rel anti : (1)y.x + (1)x.y
note source = hand written
"#;

    #[test]
    fn toy_parses_and_completes() {
        let f = PrimeField::new(3).unwrap();
        let p = parse(&f, EXTERIOR).unwrap();
        assert_eq!(p.name, "exterior");
        assert_eq!(p.relations.len(), 3);
        assert_eq!(p.notes.get("source").map(String::as_str), Some("hand written"));
        let b = complete(&f, &p, None, &Caps::default()).unwrap().basis().unwrap();
        assert_eq!(b.dimension(), 4);
    }

    #[test]
    fn print_then_parse_is_stable() {
        let f = PrimeField::new(3).unwrap();
        let once = print(&f, &parse(&f, EXTERIOR).unwrap());
        let twice = print(&f, &parse(&f, &once).unwrap());
        assert_eq!(once, twice);
    }

    #[test]
    fn errors_name_the_line() {
        let f = PrimeField::new(3).unwrap();
        let bad = EXTERIOR.replace("(1)y.y", "(1)y.z");
        let err = parse(&f, &bad).unwrap_err().to_string();
        assert!(err.contains("line 7") && err.contains("'z'"), "{err}");
        assert!(parse(&f, "name x\ngen a 0\n").is_err());
        assert!(parse(&f, &EXTERIOR.replace("gen x 1", "gen x one")).is_err());
    }
}
