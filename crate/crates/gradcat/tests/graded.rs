mod common;

use std::sync::Arc;

use common::{base, constructions, graded, mutation_detection};
use gradcat::builtins::{self, from_ordinary, monoid_cat, opposite, two_object, two_object_u};
use gradcat::fincat::check_fincat;
use gradcat::graded::{
    canonical_generators, change_base, check_graded_functor, check_graded_transf, enumerate_graded_functors,
    generated_subcategory, is_generating, underlying_ordinary, GradedTransf,
};
use gradcat::monoidal::{FiniteMonoid, OpmonFunctor};
use gradcat::{check_graded, GradedCat, GradedFunctor, Limits};
use proptest::prelude::*;

#[test]
fn builtin_graded_categories_pass() {
    for name in builtins::GRADED {
        let r = check_graded(&graded(name));
        assert!(r.ok(), "{name}: {r}");
        assert!(r.checked > 0);
    }
}

#[test]
fn constructions_pass_and_mutations_are_caught() {
    for (name, c) in constructions() {
        let r = check_graded(&c);
        assert!(r.ok(), "{name}: {r}");
        let caught = mutation_detection(&c, 200, 0x5eed);
        assert!(caught >= 198, "{name}: {caught}/200");
    }
}

#[test]
fn self_grading_hom_sizes() {
    for name in ["z2", "poset", "bichar-z4", "twisted-z2"] {
        let v = base(name);
        let c = builtins::self_left(v.clone());
        let d = v.cat();
        for z in 0..v.n_obj() {
            for a in 0..v.n_obj() {
                for b in 0..v.n_obj() {
                    assert_eq!(c.hom(z, a, b).len(), d.hom(v.t(z, a), b).len(), "{name}");
                }
            }
        }
    }
}

#[test]
fn walking_graded_morphism_hom_sizes() {
    for (name, x) in [("poset", 0), ("poset", 1), ("z2", 1), ("bichar-z4", 2)] {
        let v = base(name);
        let c = two_object(v.clone(), x);
        let d = v.cat();
        let i = v.unit();
        for z in 0..v.n_obj() {
            assert_eq!(c.hom(z, 0, 0).len(), d.hom(z, i).len());
            assert_eq!(c.hom(z, 1, 1).len(), d.hom(z, i).len());
            assert_eq!(c.hom(z, 0, 1).len(), d.hom(z, x).len());
            assert!(c.hom(z, 1, 0).is_empty());
        }
        let u = two_object_u(&c, x);
        assert_eq!((c.grade(u), c.src(u), c.tgt(u)), (x, 0, 1));
    }
}

#[test]
fn opposite_is_an_involution() {
    for name in builtins::GRADED {
        let c = graded(name);
        let op = opposite(&c);
        assert!(check_graded(&op).ok(), "{name}");
        assert_eq!(opposite(&op), *c, "{name}");
    }
}

#[test]
fn ordinary_categories_round_trip() {
    let d = Arc::new(monoid_cat(&FiniteMonoid::cyclic(4)));
    let c = from_ordinary(d.clone());
    assert!(check_graded(&c).ok());
    let back = underlying_ordinary(&c).unwrap();
    assert!(check_fincat(&back).ok());
    assert_eq!(back.n_mor(), d.n_mor());
    for g in 0..4 {
        for f in 0..4 {
            assert_eq!(back.comp(g, f), d.comp(g, f));
        }
    }
}

#[test]
fn change_base_along_identity_keeps_tables() {
    for name in ["self-poset", "two-object-B4", "monoid-B4"] {
        let c = graded(name);
        let id = OpmonFunctor::identity(c.base().clone());
        let d = change_base(&id, &c).unwrap();
        assert_eq!(d.to_tables(), c.to_tables(), "{name}");
    }
}

#[test]
fn table_round_trip() {
    for (name, c) in constructions() {
        let d = GradedCat::from_tables(c.base().clone(), c.to_tables()).unwrap();
        assert_eq!(d, *c, "{name}");
    }
}

#[test]
fn reports_are_deterministic() {
    let t = graded("two-object-poset").to_tables();
    let mut bad = t.clone();
    bad.comp[0].2 = (bad.comp[0].2 + 1) % bad.elements.len();
    let c = GradedCat::from_tables(graded("two-object-poset").base().clone(), bad).unwrap();
    let (r1, r2) = (check_graded(&c), check_graded(&c));
    assert!(!r1.ok());
    assert_eq!(r1.to_string(), r2.to_string());
}

/// Every object map and every element map, filtered by the functor laws.
fn brute_force_functors(d: &Arc<GradedCat>, c: &Arc<GradedCat>) -> Vec<GradedFunctor> {
    let (n, k, ne, nc) = (d.n_obj(), c.n_obj(), d.n_elem(), c.n_elem());
    let mut out = Vec::new();
    for ocode in 0..k.pow(n as u32) {
        let obj: Vec<usize> = (0..n).map(|i| ocode / k.pow(i as u32) % k).collect();
        for mcode in 0..nc.pow(ne as u32) {
            let mor: Vec<usize> = (0..ne).map(|i| mcode / nc.pow(i as u32) % nc).collect();
            let f = GradedFunctor::new(d.clone(), c.clone(), obj.clone(), mor).unwrap();
            if check_graded_functor(&f).ok() {
                out.push(f);
            }
        }
    }
    out
}

fn key(f: &GradedFunctor) -> (Vec<usize>, Vec<usize>) {
    (f.obj.clone(), f.mor.clone())
}

#[test]
fn functor_enumeration_matches_brute_force() {
    let pairs = [
        ("two-object-Z2", "self-Z2"),
        ("two-object-Z2", "two-object-Z2"),
        ("self-Z2", "self-Z2"),
        ("two-object-poset", "self-poset"),
        ("monoid-Z2", "self-Z2"),
        ("terminal-Z2", "self-Z2"),
    ];
    for (a, b) in pairs {
        let (d, c) = (graded(a), graded(b));
        let mut fast: Vec<_> = enumerate_graded_functors(&d, &c, None, Limits::default()).unwrap().iter().map(key).collect();
        let mut slow: Vec<_> = brute_force_functors(&d, &c).iter().map(key).collect();
        fast.sort();
        slow.sort();
        assert_eq!(fast, slow, "{a} -> {b}");
        let all: Vec<usize> = (0..d.n_elem()).collect();
        let mut full: Vec<_> = enumerate_graded_functors(&d, &c, Some(&all), Limits::default()).unwrap().iter().map(key).collect();
        full.sort();
        assert_eq!(fast, full, "{a} -> {b} with every element as generator");
    }
}

#[test]
fn walking_morphism_functors_are_elements() {
    // functors out of the walking morphism of grade X pick out a morphism of grade X
    for (name, target) in [("poset", "self-poset"), ("z2", "self-Z2")] {
        let v = base(name);
        let c = graded(target);
        for x in 0..v.n_obj() {
            let d = Arc::new(two_object(v.clone(), x));
            let fs = enumerate_graded_functors(&d, &c, None, Limits::default()).unwrap();
            let expected: usize = (0..c.n_obj()).map(|a| (0..c.n_obj()).map(|b| c.hom(x, a, b).len()).sum::<usize>()).sum();
            assert_eq!(fs.len(), expected, "{name} at {x}");
            let u = two_object_u(&d, x);
            let mut images: Vec<usize> = fs.iter().map(|f| f.mor[u]).collect();
            images.sort_unstable();
            images.dedup();
            assert_eq!(images.len(), expected);
        }
    }
}

#[test]
fn monoid_functors_are_modules() {
    // (R, m, e)-modules: a ∈ C(R; A, A) with m*(a) = a∘a and e*(a) = i_A
    let cases = [("monoid-B4", "two-object-B4"), ("monoid-B4", "self-B4"), ("monoid-Z2", "self-Z2"), ("monoid-Z2", "two-object-Z2")];
    for (m, t) in cases {
        let (r, c) = (graded(m), graded(t));
        let (rg, mm, e) = match m {
            "monoid-B4" => (0, 1, 3),
            _ => (0, 0, 0),
        };
        let mut modules = 0;
        for a in 0..c.n_obj() {
            for &x in c.hom(rg, a, a) {
                let sq = c.comp(x, x);
                if sq.is_some() && c.reindex(x, mm) == sq && c.reindex(x, e) == Some(c.ident(a)) {
                    modules += 1;
                }
            }
        }
        let fs = enumerate_graded_functors(&r, &c, None, Limits::default()).unwrap();
        assert_eq!(fs.len(), modules, "{m} -> {t}");
    }
}

#[test]
fn generators() {
    for name in builtins::GRADED {
        let c = graded(name);
        let gens = canonical_generators(&c);
        assert!(is_generating(&c, &gens), "{name}");
        assert!(generated_subcategory(&c, &gens).iter().all(|&m| m));
    }
    let c = graded("two-object-poset");
    let ids: Vec<usize> = (0..c.n_obj()).map(|a| c.ident(a)).collect();
    assert!(!is_generating(&c, &ids));
}

#[test]
fn identity_transformation_is_natural() {
    for name in ["two-object-poset", "self-B4", "self-twisted"] {
        let c = graded(name);
        let id = GradedFunctor::identity(c.clone());
        let t = GradedTransf { from: id.clone(), to: id, comps: (0..c.n_obj()).map(|a| c.ident(a)).collect() };
        assert!(check_graded_transf(&t).ok(), "{name}");
    }
}

#[test]
fn transformation_with_wrong_component_fails() {
    let c = graded("self-B4");
    let id = GradedFunctor::identity(c.clone());
    let mut comps: Vec<usize> = (0..c.n_obj()).map(|a| c.ident(a)).collect();
    // replace one identity component by multiplication with i
    let i = c.base().unit();
    let a = 1;
    comps[a] = *c.hom(i, a, a).iter().find(|&&e| e != c.ident(a)).unwrap();
    let t = GradedTransf { from: id.clone(), to: id, comps };
    assert!(!check_graded_transf(&t).ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn constructors_yield_valid_presentations(bi in 0usize..8, x in 0usize..4) {
        let name = builtins::BASES[bi];
        let v = base(name);
        let x = x % v.n_obj();
        prop_assert!(check_graded(&builtins::self_left(v.clone())).ok());
        prop_assert!(check_graded(&builtins::self_right(&v)).ok());
        prop_assert!(check_graded(&two_object(v.clone(), x)).ok());
        prop_assert!(check_graded(&builtins::terminal_graded(v.clone())).ok());
        prop_assert!(check_graded(&opposite(&two_object(v, x))).ok());
    }
}
