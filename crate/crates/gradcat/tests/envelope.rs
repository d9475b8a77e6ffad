mod common;

use std::sync::Arc;

use common::{base, constructions, graded};
use gradcat::builtins;
use gradcat::envelope::{build_envelope, check_envelope, day_convolution};
use gradcat::fincat::{check_presheaf, nat_transformations, FinPresheaf};
use gradcat::graded::check_graded_functor;
use gradcat::modules::hom_presheaf;
use gradcat::{check_graded, FinMonCat, GradedCat, Limits};
use proptest::prelude::*;

/// Some natural transformation `p → q` is invertible.
fn isomorphic(p: &FinPresheaf, q: &FinPresheaf) -> bool {
    p.sizes() == q.sizes()
        && nat_transformations(p, q).unwrap().iter().any(|t| {
            t.iter().all(|comp| {
                let mut s = comp.clone();
                s.sort_unstable();
                s.dedup();
                s.len() == comp.len()
            })
        })
}

fn rep(v: &FinMonCat, x: usize) -> FinPresheaf {
    FinPresheaf::representable(v.cat().clone(), x)
}

fn sample_presheaves(v: &FinMonCat) -> Vec<FinPresheaf> {
    let d = v.cat().clone();
    let mut out = vec![FinPresheaf::constant(d.clone(), 1), FinPresheaf::constant(d.clone(), 2)];
    out.extend((0..v.n_obj()).map(|x| rep(v, x)));
    let c = builtins::self_left(Arc::new(v.clone()));
    out.push(hom_presheaf(&c, 0, v.n_obj() - 1));
    out
}

#[test]
fn representables_convolve_to_representables() {
    for name in builtins::BASES {
        let v = base(name);
        for x in 0..v.n_obj() {
            for y in 0..v.n_obj() {
                let d = day_convolution(&v, &rep(&v, x), &rep(&v, y));
                assert!(check_presheaf(&d.presheaf).ok(), "{name}");
                assert!(isomorphic(&rep(&v, v.t(x, y)), &d.presheaf), "{name} {x} {y}");
            }
        }
    }
}

#[test]
fn unit_laws() {
    for name in builtins::BASES {
        let v = base(name);
        let i = rep(&v, v.unit());
        for p in sample_presheaves(&v) {
            assert!(isomorphic(&p, &day_convolution(&v, &i, &p).presheaf), "{name}");
            assert!(isomorphic(&p, &day_convolution(&v, &p, &i).presheaf), "{name}");
        }
    }
}

#[test]
fn associativity_on_representables() {
    for name in ["z2", "z3", "poset", "bichar-z4", "twisted-z2"] {
        let v = base(name);
        let n = v.n_obj();
        for k in 0..n * n * n {
            let (p, q, r) = (rep(&v, k / (n * n)), rep(&v, (k / n) % n), rep(&v, k % n));
            let left = day_convolution(&v, &day_convolution(&v, &p, &q).presheaf, &r).presheaf;
            let right = day_convolution(&v, &p, &day_convolution(&v, &q, &r).presheaf).presheaf;
            assert!(isomorphic(&left, &right), "{name} {k}");
        }
    }
}

fn discrete_presheaf(v: &FinMonCat, sizes: &[usize]) -> FinPresheaf {
    let d = v.cat().clone();
    let action = (0..d.n_mor()).map(|a| (0..sizes[d.src(a)]).collect()).collect();
    FinPresheaf::new(d, sizes.to_vec(), action).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Over a discrete base the coend has no identifications:
    /// `(P ⊗ Q)X = Σ_{Y⊗Z = X} PY × QZ`.
    #[test]
    fn discrete_day_sizes(bi in 0usize..3, ps in proptest::collection::vec(0usize..4, 4), qs in proptest::collection::vec(0usize..4, 4)) {
        let v = base(["z2", "z3", "z2xz2"][bi]);
        let n = v.n_obj();
        let (p, q) = (discrete_presheaf(&v, &ps[..n]), discrete_presheaf(&v, &qs[..n]));
        let d = day_convolution(&v, &p, &q);
        for x in 0..n {
            let expected: usize = (0..n * n).filter(|&k| v.t(k / n, k % n) == x).map(|k| ps[k / n] * qs[k % n]).sum();
            prop_assert_eq!(d.presheaf.size(x), expected);
        }
    }
}

#[test]
fn envelopes_of_builtins_pass() {
    for name in builtins::GRADED {
        let c = graded(name);
        let env = build_envelope(&c, Limits::default()).unwrap();
        assert!(check_graded(&env.cat).ok(), "{name}");
        let r = check_envelope(&env).unwrap();
        assert!(r.ok(), "{name}: {r}");
        let e = env.embedding().unwrap();
        assert!(check_graded_functor(&e).ok(), "{name}");
    }
}

#[test]
fn envelopes_of_constructions_pass() {
    for (name, c) in constructions().into_iter().filter(|(n, _)| !n.starts_with("envelope") && !n.starts_with("funcat")) {
        let env = build_envelope(&c, Limits::default()).unwrap();
        let r = check_envelope(&env).unwrap();
        assert!(r.ok(), "{name}: {r}");
    }
}

#[test]
fn copower_hom_sizes() {
    for name in ["two-object-poset", "self-B4", "self-twisted", "monoid-B4"] {
        let c = graded(name);
        let v = c.base();
        let i = v.unit();
        let env = build_envelope(&c, Limits::default()).unwrap();
        for z in 0..v.n_obj() {
            for x in 0..v.n_obj() {
                for a in 0..c.n_obj() {
                    for b in 0..c.n_obj() {
                        let got = env.cat.hom(z, env.obj(x, a), env.obj(i, b)).len();
                        assert_eq!(got, c.hom(v.t(z, x), a, b).len(), "{name}");
                    }
                }
            }
        }
    }
}

/// One object whose graded morphisms are those `Z → I` of the base.
fn unit_cat(v: Arc<FinMonCat>) -> Arc<GradedCat> {
    let cat = v.cat().clone();
    let i = v.unit();
    let c = GradedCat::build(
        v.clone(),
        vec!["*".into()],
        |z, _, _| Ok(cat.hom(z, i).iter().map(|&h| (h, cat.mor_name(h).to_string())).collect()),
        |&h, al| cat.comp(h, al),
        |&g, &f| cat.comp(v.l(i), v.tm(g, f)),
        |_| Some(cat.id(i)),
    )
    .unwrap();
    Arc::new(c)
}

#[test]
fn envelope_of_the_unit_category() {
    // hom(Z, (X,★), (Y,★)) ≅ V(Z⊗X, Y)
    for name in ["z2", "poset", "bichar-z4", "z2xz2"] {
        let v = base(name);
        let c = unit_cat(v.clone());
        assert!(check_graded(&c).ok(), "{name}");
        let env = build_envelope(&c, Limits::default()).unwrap();
        assert!(check_envelope(&env).unwrap().ok());
        let cat = v.cat();
        for z in 0..v.n_obj() {
            for x in 0..v.n_obj() {
                for y in 0..v.n_obj() {
                    let got = env.cat.hom(z, env.obj(x, 0), env.obj(y, 0)).len();
                    assert_eq!(got, cat.hom(v.t(z, x), y).len(), "{name} {z} {x} {y}");
                }
            }
        }
    }
}

#[test]
fn envelope_budget_is_enforced() {
    let c = graded("self-B4");
    let tight = Limits { max_objects: 3, max_hom: 100 };
    assert!(build_envelope(&c, tight).is_err());
}
