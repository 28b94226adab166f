//! JSON file formats for instances, solutions, trees, and drawings.
//!
//! All formats reject unknown fields. Instance values are JSON integers of
//! arbitrary size (never strings or floats); trees store one parent id per
//! vertex with `-1` marking the root; drawings store `[x, y]` pairs indexed
//! by vertex id, and bends keyed by the child vertex of the edge. Writers
//! emit pretty-printed JSON with a trailing newline.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Number;

use crate::drawing::GridDrawing;
use crate::error::Error;
use crate::geom::Point;
use crate::n3dm::{validate_instance, N3dmInstance, N3dmSolution, StrengthenRecord};
use crate::tree::{Role, Tree};
use crate::Result;

fn number_to_biguint(n: &Number) -> std::result::Result<BigUint, String> {
    let s = n.to_string();
    if s.contains(['.', 'e', 'E']) {
        return Err(format!("{s} is not an integer"));
    }
    if let Some(rest) = s.strip_prefix('-') {
        return Err(format!("-{rest} is negative"));
    }
    BigUint::from_str(&s).map_err(|e| format!("{s}: {e}"))
}

fn biguint_to_number(v: &BigUint) -> Number {
    Number::from_str(&v.to_string()).expect("decimal digits form a JSON number")
}

/// Serde bridge: a `BigUint` field as a JSON integer of arbitrary size.
pub mod biguint_num {
    use super::*;
    use serde::de::Error as _;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
        biguint_to_number(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<BigUint, D::Error> {
        let n = Number::deserialize(d)?;
        number_to_biguint(&n).map_err(D::Error::custom)
    }
}

fn numbers_to_biguints(ns: &[Number], what: &str) -> Result<Vec<BigUint>> {
    ns.iter()
        .map(|n| {
            number_to_biguint(n)
                .map_err(|e| Error::InvalidInput(format!("field \"{what}\": {e}")))
        })
        .collect()
}

fn biguints_to_numbers(vs: &[BigUint]) -> Vec<Number> {
    vs.iter().map(biguint_to_number).collect()
}

// ---------------------------------------------------------------- instance

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    k: usize,
    #[serde(rename = "B")]
    target: Number,
    r: Vec<Number>,
    b: Vec<Number>,
    g: Vec<Number>,
}

fn instance_to_file(inst: &N3dmInstance) -> InstanceFile {
    InstanceFile {
        k: inst.k(),
        target: biguint_to_number(&inst.target),
        r: biguints_to_numbers(&inst.r),
        b: biguints_to_numbers(&inst.b),
        g: biguints_to_numbers(&inst.g),
    }
}

fn instance_from_file(f: &InstanceFile) -> Result<N3dmInstance> {
    let inst = N3dmInstance {
        r: numbers_to_biguints(&f.r, "r")?,
        b: numbers_to_biguints(&f.b, "b")?,
        g: numbers_to_biguints(&f.g, "g")?,
        target: number_to_biguint(&f.target)
            .map_err(|e| Error::InvalidInput(format!("field \"B\": {e}")))?,
    };
    validate_instance(&inst)?;
    if f.k != inst.k() {
        return Err(Error::InvalidInput(format!(
            "file declares k = {} but lists {} triples",
            f.k,
            inst.k()
        )));
    }
    Ok(inst)
}

pub fn instance_to_string(inst: &N3dmInstance) -> String {
    pretty(&instance_to_file(inst))
}

pub fn instance_from_str(s: &str) -> Result<N3dmInstance> {
    instance_from_file(&serde_json::from_str(s)?)
}

pub fn read_instance(path: &Path) -> Result<N3dmInstance> {
    instance_from_str(&std::fs::read_to_string(path)?)
}

pub fn write_instance(path: &Path, inst: &N3dmInstance) -> Result<()> {
    Ok(std::fs::write(path, instance_to_string(inst))?)
}

// ---------------------------------------------------------------- solution

pub fn solution_to_string(sol: &N3dmSolution) -> String {
    pretty(sol)
}

pub fn solution_from_str(s: &str) -> Result<N3dmSolution> {
    Ok(serde_json::from_str(s)?)
}

pub fn read_solution(path: &Path) -> Result<N3dmSolution> {
    solution_from_str(&std::fs::read_to_string(path)?)
}

pub fn write_solution(path: &Path, sol: &N3dmSolution) -> Result<()> {
    Ok(std::fs::write(path, solution_to_string(sol))?)
}

// ------------------------------------------------------- strengthen record

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StrengthenFile {
    c: u32,
    mu: u8,
    original: InstanceFile,
    strengthened: InstanceFile,
}

pub fn strengthen_record_to_string(rec: &StrengthenRecord) -> String {
    pretty(&StrengthenFile {
        c: rec.c,
        mu: rec.mu,
        original: instance_to_file(&rec.original),
        strengthened: instance_to_file(&rec.strengthened),
    })
}

pub fn strengthen_record_from_str(s: &str) -> Result<StrengthenRecord> {
    let f: StrengthenFile = serde_json::from_str(s)?;
    Ok(StrengthenRecord {
        c: f.c,
        mu: f.mu,
        original: instance_from_file(&f.original)?,
        strengthened: instance_from_file(&f.strengthened)?,
    })
}

// -------------------------------------------------------------------- tree

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TreeFile {
    n: usize,
    root: usize,
    /// parent id per vertex, `-1` for the root
    parent: Vec<i64>,
    /// role labels; missing means all plain
    #[serde(default, skip_serializing_if = "Option::is_none")]
    roles: Option<Vec<String>>,
}

pub fn tree_to_string(tree: &Tree) -> String {
    let parent: Vec<i64> = tree
        .parents()
        .iter()
        .map(|p| p.map_or(-1, |v| v as i64))
        .collect();
    pretty(&TreeFile {
        n: tree.n(),
        root: tree.root(),
        parent,
        roles: Some(tree.roles().iter().map(Role::to_string).collect()),
    })
}

pub fn tree_from_str(s: &str) -> Result<Tree> {
    let f: TreeFile = serde_json::from_str(s)?;
    let n = f.parent.len();
    if f.n != n {
        return Err(Error::InvalidInput(format!(
            "file declares n = {} but lists {n} parents",
            f.n
        )));
    }
    let mut parents = Vec::with_capacity(n);
    for (v, &p) in f.parent.iter().enumerate() {
        parents.push(match p {
            -1 => None,
            p if p >= 0 && (p as usize) < n => Some(p as usize),
            p => {
                return Err(Error::InvalidInput(format!(
                    "vertex {v} has parent {p}, outside -1..{}",
                    n as i64 - 1
                )))
            }
        });
    }
    match f.roles {
        None => Tree::plain(f.root, parents),
        Some(labels) => {
            if labels.len() != n {
                return Err(Error::InvalidInput(format!(
                    "{} role labels for {n} vertices",
                    labels.len()
                )));
            }
            let roles = labels
                .iter()
                .map(|l| l.parse())
                .collect::<Result<Vec<Role>>>()?;
            Tree::new(f.root, parents, roles)
        }
    }
}

pub fn read_tree(path: &Path) -> Result<Tree> {
    tree_from_str(&std::fs::read_to_string(path)?)
}

pub fn write_tree(path: &Path, tree: &Tree) -> Result<()> {
    Ok(std::fs::write(path, tree_to_string(tree))?)
}

// ----------------------------------------------------------------- drawing

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DrawingFile {
    #[serde(rename = "W")]
    w: i64,
    #[serde(rename = "H")]
    h: i64,
    /// vertex positions as `[x, y]`, indexed by vertex id
    pos: Vec<(i64, i64)>,
    /// bend points per edge, keyed by the edge's child vertex id
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    bends: BTreeMap<String, Vec<(i64, i64)>>,
}

pub fn drawing_to_string(d: &GridDrawing) -> String {
    let pos = d.vertices().iter().map(|p| (p.x, p.y)).collect();
    let bends = d
        .bend_map()
        .iter()
        .filter(|(_, pts)| !pts.is_empty())
        .map(|(child, pts)| {
            (
                child.to_string(),
                pts.iter().map(|p| (p.x, p.y)).collect(),
            )
        })
        .collect();
    pretty(&DrawingFile {
        w: d.w(),
        h: d.h(),
        pos,
        bends,
    })
}

pub fn drawing_from_str(s: &str) -> Result<GridDrawing> {
    let f: DrawingFile = serde_json::from_str(s)?;
    let vertices = f.pos.iter().map(|&(x, y)| Point::new(x, y)).collect();
    let mut bends = BTreeMap::new();
    for (key, pts) in &f.bends {
        let child: usize = key.parse().map_err(|_| {
            Error::InvalidInput(format!("bend key \"{key}\" is not a vertex id"))
        })?;
        bends.insert(
            child,
            pts.iter().map(|&(x, y)| Point::new(x, y)).collect(),
        );
    }
    GridDrawing::with_bends(f.w, f.h, vertices, bends)
}

pub fn read_drawing(path: &Path) -> Result<GridDrawing> {
    drawing_from_str(&std::fs::read_to_string(path)?)
}

pub fn write_drawing(path: &Path, d: &GridDrawing) -> Result<()> {
    Ok(std::fs::write(path, drawing_to_string(d))?)
}

// ----------------------------------------------------------------- helpers

/// Pretty-prints any serializable value with a trailing newline.
pub fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

/// Reads any deserializable value from a JSON file.
pub fn read_value<T: DeserializeOwned>(path: &Path) -> Result<T> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::n3dm::strengthen;
    use crate::reduction::build_tree;
    use crate::synthesis::synthesize_drawing;

    fn toy() -> N3dmInstance {
        N3dmInstance::from_u64(&[3], &[3], &[3], 9).unwrap()
    }

    #[test]
    fn instance_round_trip() {
        let inst = toy();
        let s = instance_to_string(&inst);
        assert!(s.ends_with('\n'));
        assert_eq!(instance_from_str(&s).unwrap(), inst);
    }

    #[test]
    fn instance_with_huge_values_round_trips() {
        let big = BigUint::from(2u8).pow(100);
        let inst = N3dmInstance::new(
            vec![big.clone()],
            vec![big.clone()],
            vec![big.clone()],
            &big * 3u8,
        )
        .unwrap();
        let s = instance_to_string(&inst);
        assert!(s.contains("1267650600228229401496703205376"));
        assert_eq!(instance_from_str(&s).unwrap(), inst);
    }

    #[test]
    fn instance_rejects_floats_negatives_and_unknown_fields() {
        let ok = r#"{"k":1,"B":3,"r":[1],"b":[1],"g":[1]}"#;
        assert!(instance_from_str(ok).is_ok());
        assert!(instance_from_str(r#"{"k":1,"B":3,"r":[1.5],"b":[1],"g":[1]}"#).is_err());
        assert!(instance_from_str(r#"{"k":1,"B":1,"r":[-1],"b":[1],"g":[1]}"#).is_err());
        assert!(instance_from_str(r#"{"k":1,"B":3,"r":[1e3],"b":[1],"g":[1]}"#).is_err());
        assert!(instance_from_str(r#"{"k":1,"B":3,"r":["1"],"b":[1],"g":[1]}"#).is_err());
        assert!(
            instance_from_str(r#"{"k":1,"B":3,"r":[1],"b":[1],"g":[1],"x":0}"#).is_err()
        );
        // declared k must match the lists
        assert!(instance_from_str(r#"{"k":2,"B":3,"r":[1],"b":[1],"g":[1]}"#).is_err());
        // and the sum condition is enforced on load
        assert!(instance_from_str(r#"{"k":1,"B":4,"r":[1],"b":[1],"g":[1]}"#).is_err());
    }

    #[test]
    fn solution_round_trip() {
        let sol = N3dmSolution {
            pi: vec![1, 0],
            pi_prime: vec![0, 1],
        };
        let s = solution_to_string(&sol);
        assert_eq!(solution_from_str(&s).unwrap(), sol);
        assert!(solution_from_str(r#"{"pi":[0],"pi_prime":[0],"x":1}"#).is_err());
    }

    #[test]
    fn strengthen_record_round_trip() {
        let rec = strengthen(&toy()).unwrap();
        let s = strengthen_record_to_string(&rec);
        let back = strengthen_record_from_str(&s).unwrap();
        assert_eq!(back.c, rec.c);
        assert_eq!(back.mu, rec.mu);
        assert_eq!(back.original, rec.original);
        assert_eq!(back.strengthened, rec.strengthened);
    }

    #[test]
    fn plain_tree_round_trip() {
        let tree = Tree::plain(0, vec![None, Some(0), Some(1)]).unwrap();
        let s = tree_to_string(&tree);
        assert!(s.contains("\"Plain\""));
        assert!(s.contains("-1"));
        assert_eq!(tree_from_str(&s).unwrap(), tree);
        // roles may be left out entirely; vertices are then plain
        let bare = r#"{"n":3,"root":0,"parent":[-1,0,1]}"#;
        assert_eq!(tree_from_str(bare).unwrap(), tree);
    }

    #[test]
    fn labeled_tree_round_trip() {
        let art = build_tree(&toy()).unwrap();
        let s = tree_to_string(art.tree());
        assert!(s.contains("\"Spinal:2\""));
        assert_eq!(&tree_from_str(&s).unwrap(), art.tree());
    }

    #[test]
    fn tree_rejects_bad_parents() {
        assert!(tree_from_str(r#"{"n":2,"root":0,"parent":[-1,5]}"#).is_err());
        assert!(tree_from_str(r#"{"n":2,"root":0,"parent":[-1,-2]}"#).is_err());
        assert!(tree_from_str(r#"{"n":3,"root":0,"parent":[-1,0]}"#).is_err());
        assert!(
            tree_from_str(r#"{"n":2,"root":0,"parent":[-1,0],"roles":["Root"]}"#).is_err()
        );
        assert!(tree_from_str(r#"{"n":2,"root":0,"parent":[-1,0],"junk":[]}"#).is_err());
    }

    #[test]
    fn drawing_round_trip_with_bends() {
        let mut bends = BTreeMap::new();
        bends.insert(1usize, vec![Point::new(2, 2)]);
        let d = GridDrawing::with_bends(
            3,
            3,
            vec![Point::new(1, 3), Point::new(1, 1)],
            bends,
        )
        .unwrap();
        let s = drawing_to_string(&d);
        assert!(s.contains("\"W\""));
        assert!(s.contains("\"pos\""));
        assert_eq!(drawing_from_str(&s).unwrap(), d);
    }

    #[test]
    fn drawing_rejects_bad_input() {
        assert!(drawing_from_str(r#"{"W":0,"H":2,"pos":[[1,1]]}"#).is_err());
        assert!(drawing_from_str(r#"{"W":2,"H":2,"pos":[]}"#).is_err());
        assert!(
            drawing_from_str(r#"{"W":2,"H":2,"pos":[[1,1]],"bends":{"x":[[1,1]]}}"#)
                .is_err()
        );
        assert!(drawing_from_str(r#"{"W":2,"H":2,"pos":[[1,1,1]]}"#).is_err());
    }

    #[test]
    fn synthesized_drawing_round_trips_through_files() {
        let rec = strengthen(&toy()).unwrap();
        let art = build_tree(&rec.strengthened).unwrap();
        let sol = N3dmSolution {
            pi: vec![0],
            pi_prime: vec![0],
        };
        let d = synthesize_drawing(&art, &sol).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let tree_path = dir.path().join("tree.json");
        let drawing_path = dir.path().join("drawing.json");
        write_tree(&tree_path, art.tree()).unwrap();
        write_drawing(&drawing_path, &d).unwrap();
        assert_eq!(&read_tree(&tree_path).unwrap(), art.tree());
        assert_eq!(read_drawing(&drawing_path).unwrap(), d);
    }
}
