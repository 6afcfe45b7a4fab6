//! Golden JSON documents per type. Regenerate with `UPDATE_FIXTURES=1`.

use std::path::PathBuf;

use alcove::diagram::alcove_automorphism_group;
use alcove::fundcheck::vertex_permutation;
use alcove::group::cycle_notation;
use alcove::polytope::{enumerate_vertices, fundamental_polytope, komrakov_premet, slicing_roots};
use alcove::rootsys::RootSystem;
use alcove::weyl::fundamental_group;
use serde_json::{json, Value};

const TYPES: [&str; 9] = ["A2", "A3", "A4", "B3", "C3", "D4", "D5", "E6", "G2"];

fn document(name: &str) -> Value {
    let rs = RootSystem::from_name(name).unwrap();
    let omega = fundamental_group(&rs);
    let aut = alcove_automorphism_group(&rs);
    let verts = |v: &[alcove::RatVec]| v.iter().map(|x| x.to_strings()).collect::<Vec<_>>();
    let kp = enumerate_vertices(&komrakov_premet(&rs)).unwrap();
    let lv = if slicing_roots(&rs).is_empty() {
        Value::Null
    } else {
        json!(verts(&enumerate_vertices(&fundamental_polytope(&rs).unwrap()).unwrap().vertices))
    };
    json!({
        "root_system": rs.to_json(),
        "omega": {
            "labels": omega.labels,
            "kind": omega.kind.to_string(),
            "table": omega.table.table,
        },
        "alcove_automorphisms": {
            "kind": aut.kind.to_string(),
            "vertex_permutations": aut
                .elements
                .iter()
                .map(|g| cycle_notation(&vertex_permutation(&rs, g).unwrap()))
                .collect::<Vec<_>>(),
            "generators": aut.generators.iter().map(|g| json!([g.name, g.element])).collect::<Vec<_>>(),
            "table": aut.table.table,
        },
        "kp_vertices": verts(&kp.vertices),
        "fundamental_polytope_vertices": lv,
    })
}

fn path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(format!("{name}.json"))
}

#[test]
fn golden_documents() {
    let update = std::env::var_os("UPDATE_FIXTURES").is_some();
    for name in TYPES {
        let doc = document(name);
        let file = path(name);
        if update {
            std::fs::write(&file, serde_json::to_string_pretty(&doc).unwrap() + "\n").unwrap();
            continue;
        }
        let text = std::fs::read_to_string(&file)
            .unwrap_or_else(|_| panic!("missing {}; run with UPDATE_FIXTURES=1", file.display()));
        let stored: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(stored, doc, "{name} differs from its fixture");
    }
}
