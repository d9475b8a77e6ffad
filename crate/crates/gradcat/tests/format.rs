mod common;

use std::sync::Arc;

use common::{base, constructions, funcat_matrix, graded, z2_product};
use gradcat::builtins::{self, monoid_cat};
use gradcat::duoidal::braided_duoidal;
use gradcat::format::{normalize, parse, to_json, Loaded, KINDS};
use gradcat::funcat::build_functor_category;
use gradcat::graded::enumerate_graded_functors;
use gradcat::modules::identity_module;
use gradcat::monoidal::FiniteMonoid;
use gradcat::{check_graded, Error, Limits};
use serde_json::{json, Value};

fn reload(l: &Loaded) -> Loaded {
    let text = to_json(l);
    let back = parse(&text).unwrap_or_else(|e| panic!("{} did not reload: {e}", l.kind()));
    assert_eq!(back.kind(), l.kind());
    assert_eq!(to_json(&back), text, "{} is not canonical", l.kind());
    back
}

fn err_path(text: &str) -> String {
    match parse(text) {
        Err(Error::Parse { path, .. }) => path,
        Err(e) => panic!("expected a parse error, got {e}"),
        Ok(l) => panic!("expected a parse error, loaded {}", l.kind()),
    }
}

#[test]
fn every_kind_round_trips() {
    let mut seen = Vec::new();
    let c = Arc::new(monoid_cat(&FiniteMonoid::cyclic(4)));
    let Loaded::FinCat(back) = reload(&Loaded::FinCat(c.clone())) else { unreachable!() };
    assert_eq!(*back, *c);
    seen.push("fincat");
    for name in builtins::BASES {
        let v = base(name);
        // ids are renumbered in sorted order, after which loading is a fixed point
        let Loaded::Monoidal(once) = reload(&Loaded::Monoidal(v.clone())) else { unreachable!() };
        let Loaded::Monoidal(twice) = reload(&Loaded::Monoidal(once.clone())) else { unreachable!() };
        assert_eq!(*twice, *once, "{name}");
        assert_eq!((once.n_obj(), once.n_mor(), once.is_symmetric()), (v.n_obj(), v.n_mor(), v.is_symmetric()), "{name}");
    }
    seen.push("monoidal");
    for (name, c) in constructions() {
        let Loaded::Graded(once) = reload(&Loaded::Graded(c.clone())) else { unreachable!() };
        let Loaded::Graded(twice) = reload(&Loaded::Graded(once.clone())) else { unreachable!() };
        assert_eq!(twice.to_tables(), once.to_tables(), "{name}");
        assert_eq!((once.n_obj(), once.n_elem()), (c.n_obj(), c.n_elem()), "{name}");
        assert!(check_graded(&once).ok(), "{name}");
    }
    seen.push("graded");
    let ab = z2_product();
    let Loaded::Bigraded(once) = reload(&Loaded::Bigraded((*ab).clone())) else { unreachable!() };
    let Loaded::Bigraded(twice) = reload(&Loaded::Bigraded(once.clone())) else { unreachable!() };
    assert_eq!(twice, once);
    assert_eq!(once.cat.n_elem(), ab.cat.n_elem());
    seen.push("bigraded");
    let (d, t) = (graded("two-object-Z2"), graded("self-Z2"));
    for f in enumerate_graded_functors(&d, &t, None, Limits::default()).unwrap() {
        let Loaded::Functor(back) = reload(&Loaded::Functor(f.clone())) else { unreachable!() };
        assert!(gradcat::graded::check_graded_functor(&back).ok());
        // images are recorded by id, so names survive renumbering
        for e in 0..f.dom.n_elem() {
            let i = back.dom.elem_ix(f.dom.name(e)).unwrap();
            assert_eq!(back.cod.name(back.mor[i]), f.cod.name(f.mor[e]));
        }
    }
    seen.push("functor");
    let m = identity_module(&graded("self-right-B4"));
    let Loaded::Module(once) = reload(&Loaded::Module(m.clone())) else { unreachable!() };
    let Loaded::Module(twice) = reload(&Loaded::Module(once.clone())) else { unreachable!() };
    assert_eq!(twice, once);
    assert!(gradcat::modules::check_module(&once).ok());
    seen.push("module");
    let dd = braided_duoidal(base("bichar-z4")).unwrap();
    let Loaded::Duoidal(once) = reload(&Loaded::Duoidal(dd.clone())) else { unreachable!() };
    let Loaded::Duoidal(twice) = reload(&Loaded::Duoidal(once.clone())) else { unreachable!() };
    assert_eq!((&twice.xi, twice.mu, twice.gamma), (&once.xi, once.mu, once.gamma));
    assert!(gradcat::duoidal::check_duoidal(&once).ok());
    seen.push("duoidal");
    assert_eq!(seen, KINDS);
}

#[test]
fn functor_categories_reload_and_recheck() {
    for (name, spec) in funcat_matrix() {
        let fc = build_functor_category(&spec).unwrap();
        let Loaded::Graded(back) = reload(&Loaded::Graded(fc.cat.clone())) else { unreachable!() };
        assert!(check_graded(&back).ok(), "{name}");
    }
}

#[test]
fn normalization_is_idempotent() {
    let text = to_json(&Loaded::Graded(graded("two-object-poset")));
    // scramble key order and array order
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["category"]["elements"].as_array_mut().unwrap().reverse();
    let scrambled = serde_json::to_string(&v).unwrap();
    let once = normalize(&scrambled).unwrap();
    assert_eq!(once, text);
    assert_eq!(normalize(&once).unwrap(), once);
}

fn graded_value() -> Value {
    serde_json::from_str(&to_json(&Loaded::Graded(graded("self-Z2")))).unwrap()
}

#[test]
fn errors_name_the_offending_path() {
    assert_eq!(err_path("{}"), "kind");
    assert_eq!(err_path(r#"{"kind": 3}"#), "kind");
    assert_eq!(err_path(r#"{"kind": "category"}"#), "kind");
    assert_eq!(err_path("[1, 2]"), "$");
    assert_eq!(err_path("{"), "$");

    let mut v = graded_value();
    v["base"]["category"]["morphisms"][0]["src"] = json!("nowhere");
    assert_eq!(err_path(&v.to_string()), "base.category.morphisms[0].src");

    let mut v = graded_value();
    v["category"]["elements"][1]["grade"] = json!("nowhere");
    assert!(err_path(&v.to_string()).starts_with("category.elements[1]"));

    let mut v = graded_value();
    v["category"]["compose"].as_array_mut().unwrap().pop();
    let r = parse(&v.to_string());
    assert!(r.is_err());
}

#[test]
fn unknown_fields_are_rejected() {
    let mut v = graded_value();
    v["category"]["colour"] = json!("blue");
    assert!(err_path(&v.to_string()).starts_with("category"));
    let mut v = graded_value();
    v["base"]["category"]["morphisms"][0]["weight"] = json!(1);
    assert!(err_path(&v.to_string()).starts_with("base.category.morphisms[0]"));
}

#[test]
fn duplicate_ids_are_rejected() {
    let mut v = graded_value();
    let objs = v["category"]["objects"].as_array_mut().unwrap();
    let first = objs[0].clone();
    objs[1] = first;
    assert!(err_path(&v.to_string()).starts_with("category.objects"));
}
