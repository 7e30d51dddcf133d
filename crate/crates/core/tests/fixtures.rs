use csub::amalgam::{grothendieck, ActionJson, AmalgamWitness, MonoidAction, WitnessJson};
use csub::cstar::{CstarHom, CstarHomJson};
use csub::fincat::{validate_category, CategoryJson};
use csub::poset::{FinPoset, PosetJson};
use serde::de::DeserializeOwned;
use serde_json::Value;
use std::path::{Path, PathBuf};

fn dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn load<T: DeserializeOwned>(name: &str) -> (T, Value) {
    let text = std::fs::read_to_string(dir().join(name)).unwrap();
    (serde_json::from_str(&text).unwrap(), serde_json::from_str(&text).unwrap())
}

fn same<T: serde::Serialize>(emitted: &T, raw: &Value, name: &str) {
    assert_eq!(&serde_json::to_value(emitted).unwrap(), raw, "{name} does not round-trip");
}

#[test]
fn every_fixture_round_trips() {
    let mut seen = 0;
    for entry in std::fs::read_dir(dir()).unwrap() {
        let name = entry.unwrap().file_name().into_string().unwrap();
        if name.ends_with(".action.json") {
            let (j, raw) = load::<ActionJson>(&name);
            same(&MonoidAction::from_json(&j).unwrap().to_json(), &raw, &name);
        } else if name.ends_with(".category.json") {
            let (j, raw) = load::<CategoryJson>(&name);
            same(&validate_category(&j).unwrap().to_json(), &raw, &name);
        } else if name.ends_with(".witness.json") {
            let (j, raw) = load::<WitnessJson>(&name);
            let cat_name = name.replace(".witness.json", ".category.json");
            let (cj, _) = load::<CategoryJson>(&cat_name);
            let c = validate_category(&cj).unwrap();
            same(&AmalgamWitness::from_json(&c, &j).unwrap().to_json(&c), &raw, &name);
        } else if name.starts_with("cstar_hom") {
            let (j, raw) = load::<CstarHomJson>(&name);
            same(&CstarHom::from_json(&j).unwrap().to_json(), &raw, &name);
        } else {
            let (j, raw) = load::<PosetJson>(&name);
            same(&FinPoset::from_json(&j).unwrap().to_json(), &raw, &name);
        }
        seen += 1;
    }
    assert!(seen >= 12, "only {seen} fixtures");
}

#[test]
fn action_fixtures_rebuild_the_shipped_category() {
    let (j, _) = load::<ActionJson>("s2_on_p2.action.json");
    let g = grothendieck(&MonoidAction::from_json(&j).unwrap()).unwrap();
    let (cj, _) = load::<CategoryJson>("s2_on_p2.category.json");
    assert_eq!(g.category.to_json(), cj);
}
