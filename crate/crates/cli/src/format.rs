//! The JSON structure-file format and its canonical serialization.
//!
//! ```json
//! {
//!   "name": "sierpinski",
//!   "join": "powerset",
//!   "ground_size": 2,
//!   "specialization": {"preorder": [["q", "p"]]},
//!   "z": [3]
//! }
//! ```
//!
//! `join` is an explicit `n × n` table or `"powerset"` with `ground_size`.
//! `specialization` is `"leq"`, or one of `{"pairs": ..}`, `{"seeds": ..}`,
//! `{"ideal": ..}`, `{"preorder": ..}`. The last two need the powerset
//! shorthand and name points `p, q, r, ..`.

use std::fmt::Write as _;

use serde::Deserialize;
use specsemi::factory::{mod_ideal, powerset_from_preorder, GroundSet, Ideal};
use specsemi::{complete_specialization, ClosureSet, Element, JoinSemilattice, SpecSemilattice};

use crate::error::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    #[serde(default)]
    name: String,
    #[serde(default)]
    elements: Option<Vec<String>>,
    join: RawJoin,
    #[serde(default)]
    ground_size: Option<usize>,
    specialization: RawSpec,
    #[serde(default)]
    z: Option<Vec<Element>>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawJoin {
    Table(Vec<Vec<Element>>),
    Shorthand(String),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawSpec {
    Keyword(String),
    Form(SpecForm),
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
enum SpecForm {
    Pairs(Vec<(Element, Element)>),
    Seeds(Vec<(Element, Element)>),
    Ideal(Vec<Vec<String>>),
    Preorder(Vec<(String, String)>),
}

/// A parsed structure file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Structure {
    pub name: String,
    pub spec: SpecSemilattice,
    pub z: Option<Vec<Element>>,
}

impl Structure {
    /// The file's `z` as a validated closure set.
    pub fn closure_set(&self) -> Result<Option<ClosureSet>, CliError> {
        match &self.z {
            None => Ok(None),
            Some(z) => Ok(Some(ClosureSet::new(&self.spec, z.iter().copied())?)),
        }
    }
}

/// Whether parsing insists on the axioms or leaves them to a later check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Validation {
    Full,
    ShapeOnly,
}

fn field(path: &str, name: &str, e: impl std::fmt::Display) -> CliError {
    CliError::Parse {
        path: path.to_string(),
        msg: format!("field `{name}`: {e}"),
    }
}

fn point_set(path: &str, ground: GroundSet, names: &[String]) -> Result<usize, CliError> {
    names.iter().try_fold(0usize, |mask, n| {
        ground
            .point_index(n)
            .map(|i| mask | 1 << i)
            .ok_or_else(|| field(path, "specialization", format!("unknown point {n:?}")))
    })
}

/// Parses file contents. `path` only labels error messages.
///
/// With [`Validation::Full`] the join laws, the axioms and `z` are all
/// checked; with [`Validation::ShapeOnly`] only shapes and ranges are, so
/// that a checker can report violations itself.
pub fn parse_structure(
    path: &str,
    text: &str,
    structure_cap: usize,
    validation: Validation,
) -> Result<Structure, CliError> {
    let raw: RawFile = serde_json::from_str(text).map_err(|e| CliError::Parse {
        path: path.to_string(),
        msg: e.to_string(),
    })?;
    let mut ground = None;
    let base = match raw.join {
        RawJoin::Table(rows) => {
            if raw.ground_size.is_some() {
                return Err(field(path, "ground_size", "only allowed with \"powerset\""));
            }
            if rows.len() > structure_cap {
                return Err(specsemi::Error::CapExceeded {
                    size: rows.len(),
                    cap: structure_cap,
                    detail: "structure elements".into(),
                }
                .into());
            }
            JoinSemilattice::from_table(rows, raw.elements.clone())
                .map_err(|e| field(path, "join", e))?
        }
        RawJoin::Shorthand(s) if s == "powerset" => {
            let g = raw
                .ground_size
                .ok_or_else(|| field(path, "ground_size", "required with \"powerset\""))?;
            let g = GroundSet::new(g)?;
            if 1usize << g.size() > structure_cap {
                return Err(specsemi::Error::CapExceeded {
                    size: 1 << g.size(),
                    cap: structure_cap,
                    detail: "structure elements".into(),
                }
                .into());
            }
            ground = Some(g);
            let p = g.powerset();
            match raw.elements.clone() {
                Some(l) => p.with_labels(l).map_err(|e| field(path, "elements", e))?,
                None => p,
            }
        }
        RawJoin::Shorthand(s) => {
            return Err(field(path, "join", format!("unknown shorthand {s:?}")));
        }
    };
    if validation == Validation::Full {
        let report = base.validate_join_table();
        if !report.ok() {
            return Err(field(
                path,
                "join",
                specsemi::Error::Axioms {
                    structure: "join table",
                    report,
                },
            ));
        }
    }
    let labels = base.labels().to_vec();
    let need_ground = |form: &str| {
        ground.ok_or_else(|| {
            field(
                path,
                "specialization",
                format!("{form} needs \"join\": \"powerset\""),
            )
        })
    };
    let relabel = |s: SpecSemilattice| -> Result<SpecSemilattice, CliError> {
        let n = s.size();
        let base = JoinSemilattice::from_table(s.base().rows(), Some(labels.clone()))
            .map_err(|e| field(path, "elements", e))?;
        let rel: Vec<bool> = (0..n * n).map(|i| s.spec(i / n, i % n)).collect();
        Ok(SpecSemilattice::unchecked(base, |x, y| rel[x * n + y]))
    };
    let spec = match raw.specialization {
        RawSpec::Keyword(k) if k == "leq" => SpecSemilattice::discrete(base),
        RawSpec::Keyword(k) => {
            return Err(field(
                path,
                "specialization",
                format!("unknown keyword {k:?}"),
            ));
        }
        RawSpec::Form(SpecForm::Pairs(pairs)) => {
            for &(x, y) in &pairs {
                base.check_element(x)
                    .and(base.check_element(y))
                    .map_err(|e| field(path, "specialization", e))?;
            }
            let n = base.size();
            let mut rel = vec![false; n * n];
            for (x, y) in pairs {
                rel[x * n + y] = true;
            }
            SpecSemilattice::unchecked(base, |x, y| rel[x * n + y])
        }
        RawSpec::Form(SpecForm::Seeds(seeds)) => {
            complete_specialization(&base, &seeds).map_err(|e| field(path, "specialization", e))?
        }
        RawSpec::Form(SpecForm::Ideal(members)) => {
            let g = need_ground("ideal")?;
            let gens = members
                .iter()
                .map(|m| point_set(path, g, m))
                .collect::<Result<Vec<_>, _>>()?;
            let ideal = Ideal::new(g, &gens).map_err(|e| field(path, "specialization", e))?;
            relabel(mod_ideal(&ideal).map_err(|e| field(path, "specialization", e))?)?
        }
        RawSpec::Form(SpecForm::Preorder(edges)) => {
            let g = need_ground("preorder")?;
            let idx = |n: &String| {
                point_set(path, g, std::slice::from_ref(n)).map(|m| m.trailing_zeros() as usize)
            };
            let mut pre: Vec<(usize, usize)> = (0..g.size()).map(|i| (i, i)).collect();
            for (x, y) in &edges {
                pre.push((idx(x)?, idx(y)?));
            }
            let (s, _) =
                powerset_from_preorder(g, &pre).map_err(|e| field(path, "specialization", e))?;
            relabel(s)?
        }
    };
    if validation == Validation::Full {
        let report = spec.validate_specialization()?;
        if !report.ok() {
            return Err(field(
                path,
                "specialization",
                specsemi::Error::Axioms {
                    structure: "specialization relation",
                    report,
                },
            ));
        }
    }
    if let Some(z) = &raw.z {
        for &x in z {
            spec.base()
                .check_element(x)
                .map_err(|e| field(path, "z", e))?;
        }
        if validation == Validation::Full {
            ClosureSet::new(&spec, z.iter().copied()).map_err(|e| field(path, "z", e))?;
        }
    }
    Ok(Structure {
        name: raw.name,
        spec,
        z: raw.z,
    })
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

fn index_list(xs: impl IntoIterator<Item = Element>) -> String {
    let v: Vec<String> = xs.into_iter().map(|x| x.to_string()).collect();
    format!("[{}]", v.join(", "))
}

/// Canonical form: elements sorted by label, explicit join table, the full
/// relation as a sorted pair list, sorted `z`.
pub fn serialize_structure(st: &Structure) -> String {
    let sorted = st.spec.sorted_by_label();
    let n = sorted.size();
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"name\": {},", json_str(&st.name));
    let labels: Vec<String> = sorted.base().labels().iter().map(|l| json_str(l)).collect();
    let _ = writeln!(out, "  \"elements\": [{}],", labels.join(", "));
    out.push_str("  \"join\": [\n");
    for x in 0..n {
        let row = index_list((0..n).map(|y| sorted.join(x, y)));
        let sep = if x + 1 < n { "," } else { "" };
        let _ = writeln!(out, "    {row}{sep}");
    }
    out.push_str("  ],\n");
    let pairs: Vec<String> = sorted
        .spec_pairs()
        .into_iter()
        .map(|(x, y)| format!("[{x}, {y}]"))
        .collect();
    let _ = write!(
        out,
        "  \"specialization\": {{\"pairs\": [{}]}}",
        pairs.join(", ")
    );
    if let Some(z) = &st.z {
        let mut zs: Vec<Element> = z
            .iter()
            .map(|&x| {
                sorted
                    .base()
                    .index_of(st.spec.label(x))
                    .expect("label survives sorting")
            })
            .collect();
        zs.sort_unstable();
        zs.dedup();
        let _ = write!(out, ",\n  \"z\": {}", index_list(zs));
    }
    out.push_str("\n}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<Structure, CliError> {
        parse_structure("test", text, 64, Validation::Full)
    }

    #[test]
    fn minimal_singleton() {
        let s = parse(r#"{"name": "one", "join": [[0]], "specialization": "leq"}"#).unwrap();
        assert_eq!(s.spec.size(), 1);
        assert!(s.spec.spec(0, 0));
    }

    #[test]
    fn ideal_shorthand_matches_factory() {
        let s = parse(
            r#"{"join": "powerset", "ground_size": 2, "specialization": {"ideal": [["p"]]}}"#,
        )
        .unwrap();
        let expected =
            mod_ideal(&Ideal::new(GroundSet::new(2).unwrap(), &[0b01]).unwrap()).unwrap();
        assert_eq!(s.spec, expected);
    }

    #[test]
    fn z_must_list_closures() {
        let err =
            parse(r#"{"join": [[0,1],[1,1]], "specialization": {"seeds": [[1,0]]}, "z": [0]}"#)
                .unwrap_err();
        let msg = err.to_string();
        assert!(
            msg.contains("field `z`") && msg.contains("element 0"),
            "{msg}"
        );
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse("{\n  \"join\": [[0]],\n  \"specialization\": leq\n}").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn axiom_failure_rejected_in_full_mode_only() {
        // 1 ⊑ 0 without 0 ⊑ 0: (S1) fails
        let text = r#"{"join": [[0,1],[1,1]], "specialization": {"pairs": [[1,0],[1,1]]}}"#;
        assert!(parse(text).is_err());
        assert!(parse_structure("t", text, 64, Validation::ShapeOnly).is_ok());
    }

    #[test]
    fn canonical_form_is_a_fixpoint() {
        let s = parse(
            r#"{"name": "x", "elements": ["top", "bot"], "join": [[0,0],[0,1]], "specialization": "leq", "z": [0]}"#,
        )
        .unwrap();
        let once = serialize_structure(&s);
        let again = serialize_structure(&parse(&once).unwrap());
        assert_eq!(once, again);
        assert!(once.contains("\"elements\": [\"bot\", \"top\"]"));
        assert!(once.contains("\"z\": [1]"));
    }

    #[test]
    fn cap_is_exit_code_three() {
        let err = parse_structure(
            "t",
            r#"{"join": [[0]], "specialization": "leq"}"#,
            0,
            Validation::Full,
        )
        .unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }
}
