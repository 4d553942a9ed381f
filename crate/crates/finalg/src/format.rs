//! JSON file formats for algebras and homomorphisms.
//!
//! Algebra: `{"name": str, "size": int, "labels": [str]?, "ops": [{"name":
//! str, "arity": int, "table": [int]}]}` with flat tables row-major, first
//! argument most significant. Homomorphism: `{"from": str, "to": str,
//! "map": [int]}` with the endpoints resolved by name against a registry.

use serde::{Deserialize, Serialize};

use crate::algebra::{FiniteAlgebra, Homomorphism, OpSym, Signature};
use crate::Error;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub ops: Vec<OpFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpFile {
    pub name: String,
    pub arity: usize,
    pub table: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomFile {
    pub from: String,
    pub to: String,
    pub map: Vec<usize>,
}

/// Parse and validate an algebra file; format and table errors carry the
/// offending operation and position.
pub fn parse_algebra_file(text: &str) -> Result<FiniteAlgebra, Error> {
    let file: AlgebraFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("algebra file: {e}")))?;
    algebra_from_file(&file)
}

pub fn algebra_from_file(file: &AlgebraFile) -> Result<FiniteAlgebra, Error> {
    let signature = Signature::new(
        file.ops
            .iter()
            .map(|op| OpSym {
                name: op.name.clone(),
                arity: op.arity,
            })
            .collect(),
    )?;
    FiniteAlgebra::new(
        file.name.clone(),
        signature,
        file.size,
        file.labels.clone(),
        file.ops.iter().map(|op| op.table.clone()).collect(),
    )
}

pub fn algebra_to_file(alg: &FiniteAlgebra) -> AlgebraFile {
    AlgebraFile {
        name: alg.name().to_string(),
        size: alg.size(),
        labels: alg.labels().map(|ls| ls.to_vec()),
        ops: alg
            .signature()
            .ops()
            .iter()
            .enumerate()
            .map(|(i, op)| OpFile {
                name: op.name.clone(),
                arity: op.arity,
                table: alg.table(i).to_vec(),
            })
            .collect(),
    }
}

pub fn render_algebra(alg: &FiniteAlgebra) -> String {
    let mut text = serde_json::to_string_pretty(&algebra_to_file(alg)).expect("serializable");
    text.push('\n');
    text
}

pub fn parse_hom_file(text: &str) -> Result<HomFile, Error> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("homomorphism file: {e}")))
}

/// Bind a parsed homomorphism file to concrete endpoint algebras.
pub fn hom_from_file(
    file: &HomFile,
    dom: FiniteAlgebra,
    cod: FiniteAlgebra,
) -> Result<Homomorphism, Error> {
    Homomorphism::new(dom, cod, file.map.clone())
}

pub fn render_homomorphism(h: &Homomorphism) -> String {
    let file = HomFile {
        from: h.dom().name().to_string(),
        to: h.cod().name().to_string(),
        map: h.map().to_vec(),
    };
    let mut text = serde_json::to_string_pretty(&file).expect("serializable");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    #[test]
    fn round_trip_every_builtin() {
        for alg in [
            builtin::mitschke_a(),
            builtin::mitschke_b(),
            builtin::z2(),
            builtin::z3(),
            builtin::semilattice2(),
            builtin::set(3),
        ] {
            let text = render_algebra(&alg);
            let back = parse_algebra_file(&text).unwrap();
            assert!(back.same_structure(&alg));
            assert_eq!(back.name(), alg.name());
            assert_eq!(back.labels(), alg.labels());
        }
    }

    #[test]
    fn parses_the_two_element_implication_algebra() {
        let text = r#"{
            "name": "A",
            "size": 2,
            "labels": ["1", "2"],
            "ops": [{"name": "mul", "arity": 2, "table": [0, 1, 0, 0]}]
        }"#;
        let alg = parse_algebra_file(text).unwrap();
        assert!(alg.same_structure(&builtin::mitschke_a()));
        assert_eq!(alg.element_by_label("1"), Some(0));
    }

    #[test]
    fn short_table_error_names_the_operation() {
        let text = r#"{"name": "X", "size": 2,
            "ops": [{"name": "mul", "arity": 2, "table": [0, 1, 0]}]}"#;
        let err = parse_algebra_file(text).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("mul"), "{msg}");
        assert!(msg.contains("table length 3"), "{msg}");
    }

    #[test]
    fn out_of_range_entry_is_located() {
        let text = r#"{"name": "X", "size": 2,
            "ops": [{"name": "mul", "arity": 2, "table": [0, 1, 0, 7]}]}"#;
        let msg = parse_algebra_file(text).unwrap_err().to_string();
        assert!(msg.contains("entry 3"), "{msg}");
        assert!(msg.contains("value 7"), "{msg}");
    }

    #[test]
    fn malformed_json_reports_position() {
        let msg = parse_algebra_file("{\"name\": ").unwrap_err().to_string();
        assert!(msg.contains("algebra file"), "{msg}");
        assert!(msg.contains("column"), "{msg}");
    }

    #[test]
    fn hom_files_round_trip() {
        let f = builtin::mitschke_f();
        let text = render_homomorphism(&f);
        let file = parse_hom_file(&text).unwrap();
        assert_eq!(file.from, "B");
        assert_eq!(file.to, "A");
        let bound = hom_from_file(&file, builtin::mitschke_b(), builtin::mitschke_a()).unwrap();
        assert!(bound.equal_map(&f));
    }

    #[test]
    fn invalid_hom_map_is_rejected() {
        let file = HomFile {
            from: "B".into(),
            to: "A".into(),
            map: vec![0, 1, 1],
        };
        assert!(hom_from_file(&file, builtin::mitschke_b(), builtin::mitschke_a()).is_err());
    }
}
