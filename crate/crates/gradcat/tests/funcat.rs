mod common;

use common::{funcat_matrix, graded, naturality_disagreements, z2_product};
use gradcat::bigraded::{self, swap, swap_elem};
use gradcat::builtins::{self, from_ordinary, monoid_cat};
use gradcat::fincat::FinCat;
use gradcat::monoidal::FiniteMonoid;
use gradcat::funcat::{build_functor_category, enumerate_functors, functor_id, hom_at_grade, FunctorCatSpec, Side};
use gradcat::{check_graded, Error, Limits};
use std::sync::Arc;

#[test]
fn functor_categories_are_graded_categories() {
    for (name, spec) in funcat_matrix() {
        let fc = build_functor_category(&spec).unwrap();
        let r = check_graded(&fc.cat);
        assert!(r.ok(), "{name}: {r}");
        assert_eq!(fc.cat.n_obj(), fc.functors.len());
        assert!(fc.functors.len() > 0, "{name}");
    }
}

#[test]
fn identity_families_are_identities() {
    for (name, spec) in funcat_matrix() {
        let fc = build_functor_category(&spec).unwrap();
        let view = spec.comp_view();
        for (k, f) in fc.functors.iter().enumerate() {
            let id: Vec<usize> = f.obj.iter().map(|&a| view.ident(a)).collect();
            assert_eq!(fc.comps[fc.cat.ident(k)], id, "{name}");
        }
    }
}

#[test]
fn generator_naturality_agrees_with_full_check() {
    for (name, spec) in funcat_matrix() {
        let (cases, bad) = naturality_disagreements(&spec);
        assert!(cases > 0, "{name}");
        assert_eq!(bad, 0, "{name}");
    }
}

#[test]
fn generator_hom_sets_agree_with_full_hom_sets() {
    for (name, spec) in funcat_matrix() {
        let fs = enumerate_functors(&spec).unwrap();
        for f in &fs {
            for g in &fs {
                for x in 0..spec.comp_view().base().n_obj() {
                    let a = hom_at_grade(&spec, f, g, x, false).unwrap();
                    let b = hom_at_grade(&spec, f, g, x, true).unwrap();
                    assert_eq!(a, b, "{name}");
                }
            }
        }
    }
}

#[test]
fn functor_ids_are_unique_and_stable() {
    for (name, spec) in funcat_matrix() {
        let a = build_functor_category(&spec).unwrap();
        let b = build_functor_category(&spec).unwrap();
        assert_eq!(a.cat, b.cat, "{name}");
        let mut ids: Vec<&String> = a.cat.objects().iter().collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), a.functors.len());
        let gens = gradcat::graded::canonical_generators(&spec.source);
        assert_eq!(a.cat.obj_name(0), functor_id(&a.functors[0], &gens));
    }
}

/// `[A, C]` from the left equals `[A, C*]` from the right, up to relabeling.
#[test]
fn chirality_duality() {
    for (name, spec) in funcat_matrix() {
        let c = &spec.target;
        let cs = Arc::new(swap(c).unwrap());
        let side = match spec.side {
            Side::LeftSource => Side::RightSource,
            Side::RightSource => Side::LeftSource,
        };
        let dual = FunctorCatSpec::new(side, spec.source.clone(), cs.clone());
        let (fc, dc) = (build_functor_category(&spec).unwrap(), build_functor_category(&dual).unwrap());
        assert_eq!(fc.functors.len(), dc.functors.len(), "{name}");
        // functors correspond through the swap of views
        let (up, down): (Box<dyn Fn(usize) -> usize>, Box<dyn Fn(usize) -> Option<usize>>) = match spec.side {
            Side::LeftSource => (Box::new(|e| c.left_to_parent(e)), Box::new(|e| cs.parent_to_right(e))),
            Side::RightSource => (Box::new(|e| c.right_to_parent(e)), Box::new(|e| cs.parent_to_left(e))),
        };
        let tr = |e: usize| down(swap_elem(c, &cs, up(e))).unwrap();
        let image: Vec<usize> = fc
            .functors
            .iter()
            .map(|f| {
                let mor: Vec<usize> = f.mor.iter().map(|&e| tr(e)).collect();
                dc.functors.iter().position(|h| h.obj == f.obj && h.mor == mor).expect("translated functor")
            })
            .collect();
        let grades = fc.cat.base().n_obj();
        for x in 0..grades {
            for i in 0..fc.functors.len() {
                for j in 0..fc.functors.len() {
                    assert_eq!(fc.cat.hom(x, i, j).len(), dc.cat.hom(x, image[i], image[j]).len(), "{name}");
                }
            }
        }
    }
}

#[test]
fn budget_is_a_hard_failure() {
    let mut spec = FunctorCatSpec::new(Side::LeftSource, graded("two-object-Z2"), z2_product());
    spec.limits = Limits { max_objects: 1, max_hom: 4096 };
    assert!(matches!(build_functor_category(&spec), Err(Error::Budget { .. })));
}

#[test]
fn declared_generators_must_generate() {
    let mut spec = FunctorCatSpec::new(Side::LeftSource, graded("two-object-Z2"), z2_product());
    spec.gens = Some(vec![spec.source.ident(0)]);
    assert!(spec.validate().is_err());
    spec.gens = Some((0..spec.source.n_elem()).collect());
    assert!(spec.validate().is_ok());
}

/// Ordinary functors `a → d` by exhaustive search over object and morphism maps.
fn ordinary_functors(a: &FinCat, d: &FinCat) -> Vec<(Vec<usize>, Vec<usize>)> {
    let (n, m, k, l) = (a.n_obj(), a.n_mor(), d.n_obj(), d.n_mor());
    let mut out = Vec::new();
    for oc in 0..k.pow(n as u32) {
        let obj: Vec<usize> = (0..n).map(|i| oc / k.pow(i as u32) % k).collect();
        for mc in 0..l.pow(m as u32) {
            let mor: Vec<usize> = (0..m).map(|i| mc / l.pow(i as u32) % l).collect();
            let typed = (0..m).all(|f| d.src(mor[f]) == obj[a.src(f)] && d.tgt(mor[f]) == obj[a.tgt(f)]);
            let ids = (0..n).all(|x| mor[a.id(x)] == d.id(obj[x]));
            let comps = (0..m).all(|f| (0..m).all(|g| a.comp(g, f).is_none_or(|gf| d.comp(mor[g], mor[f]) == Some(mor[gf]))));
            if typed && ids && comps {
                out.push((obj.clone(), mor));
            }
        }
    }
    out
}

/// Natural transformations between two ordinary functors, by exhaustive search.
fn ordinary_transformations(a: &FinCat, d: &FinCat, f: &(Vec<usize>, Vec<usize>), g: &(Vec<usize>, Vec<usize>)) -> usize {
    let cands: Vec<&[usize]> = (0..a.n_obj()).map(|x| d.hom(f.0[x], g.0[x])).collect();
    let total: usize = cands.iter().map(|c| c.len()).product();
    (0..total)
        .filter(|&code| {
            let mut r = code;
            let t: Vec<usize> = cands
                .iter()
                .map(|c| {
                    let e = c[r % c.len()];
                    r /= c.len();
                    e
                })
                .collect();
            (0..a.n_mor()).all(|h| d.comp(t[a.tgt(h)], f.1[h]) == d.comp(g.1[h], t[a.src(h)]))
        })
        .count()
}

#[test]
fn trivially_graded_functor_categories_are_ordinary() {
    let one = Arc::new(monoid_cat(&FiniteMonoid::cyclic(1)));
    let arrow = builtins::base("poset").unwrap().cat().clone();
    let z2 = Arc::new(monoid_cat(&FiniteMonoid::cyclic(2)));
    let z3 = Arc::new(monoid_cat(&FiniteMonoid::cyclic(3)));
    let sources = [one, arrow.clone(), z2.clone()];
    let targets = [arrow, z2, z3];
    for a in &sources {
        for d in &targets {
            let target = Arc::new(bigraded::from_left(&from_ordinary(d.clone())).unwrap());
            let source = Arc::new(from_ordinary(a.clone()));
            let spec = FunctorCatSpec::new(Side::LeftSource, source.clone(), target.clone());
            let fc = build_functor_category(&spec).unwrap();
            let slow = ordinary_functors(a, d);
            assert_eq!(fc.functors.len(), slow.len());
            let dv = &target.left_view;
            let as_ordinary = |f: &gradcat::GradedFunctor| {
                let mor = (0..a.n_mor())
                    .map(|h| d.mor_ix(dv.name(f.mor[source.elem_ix(a.mor_name(h)).unwrap()])).unwrap())
                    .collect::<Vec<_>>();
                (f.obj.clone(), mor)
            };
            let translated: Vec<_> = fc.functors.iter().map(as_ordinary).collect();
            for s in &slow {
                assert!(translated.contains(s));
            }
            for (i, f) in translated.iter().enumerate() {
                for (j, g) in translated.iter().enumerate() {
                    assert_eq!(fc.cat.hom(0, i, j).len(), ordinary_transformations(a, d, f, g));
                }
            }
        }
    }
}
