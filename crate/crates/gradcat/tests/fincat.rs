use std::sync::Arc;

use gradcat::builtins::{self, monoid_cat};
use gradcat::fincat::{check_fincat, check_functor, check_presheaf, nat_transformations, FinCat, FinFunctor, FinPresheaf};
use gradcat::monoidal::FiniteMonoid;
use proptest::prelude::*;

fn cyclic_cat(n: usize, twist: Option<(usize, usize)>) -> FinCat {
    let morphisms = (0..n).map(|k| (format!("g{k}"), 0, 0)).collect();
    FinCat::from_parts(vec!["*".into()], morphisms, vec![0], |g, f| {
        Some(if twist == Some((g, f)) { (g + f + 1) % n } else { (g + f) % n })
    })
    .unwrap()
}

#[test]
fn cyclic_monoid_is_a_category() {
    let c = cyclic_cat(4, None);
    let r = check_fincat(&c);
    assert!(r.ok(), "{r}");
    // one identity shape, two unit laws per morphism, m² composable pairs, m³ triples
    let m = 4;
    assert_eq!(r.checked, 1 + 2 * m + m * m + m * m * m);
}

#[test]
fn corrupted_composite_is_caught() {
    let c = cyclic_cat(4, Some((2, 3)));
    let r = check_fincat(&c);
    assert!(!r.ok());
    assert!(r.failed_laws().contains(&"assoc"));
}

#[test]
fn corrupted_identity_composite_breaks_unit() {
    let c = cyclic_cat(3, Some((0, 1)));
    let r = check_fincat(&c);
    assert!(r.failed_laws().contains(&"unit"), "{r}");
}

#[test]
fn from_parts_rejects_bad_tables() {
    let dup = FinCat::from_parts(vec!["a".into(), "a".into()], vec![], vec![], |_, _| None);
    assert!(dup.is_err());
    let out = FinCat::from_parts(vec!["a".into()], vec![("f".into(), 0, 3)], vec![0], |_, _| Some(0));
    assert!(out.is_err());
}

#[test]
fn underlying_categories_of_bases_pass() {
    for name in builtins::BASES {
        let v = builtins::base(name).unwrap();
        let r = check_fincat(v.cat());
        assert!(r.ok(), "{name}: {r}");
    }
}

#[test]
fn negation_on_z4_is_a_functor() {
    let c = Arc::new(monoid_cat(&FiniteMonoid::cyclic(4)));
    let neg = FinFunctor::new(c.clone(), c.clone(), vec![0], (0..4).map(|k| (4 - k) % 4).collect()).unwrap();
    assert!(check_functor(&neg).ok());
    let double = FinFunctor::new(c.clone(), c.clone(), vec![0], (0..4).map(|k| (2 * k + 1) % 4).collect()).unwrap();
    let r = check_functor(&double);
    assert!(r.failed_laws().contains(&"identity"));
}

fn bases() -> Vec<Arc<FinCat>> {
    vec![
        Arc::new(monoid_cat(&FiniteMonoid::cyclic(3))),
        builtins::base("poset").unwrap().cat().clone(),
        builtins::base("bichar-z2").unwrap().cat().clone(),
        builtins::base("z2").unwrap().cat().clone(),
    ]
}

#[test]
fn representables_and_constants_are_presheaves() {
    for b in bases() {
        for x in 0..b.n_obj() {
            assert!(check_presheaf(&FinPresheaf::representable(b.clone(), x)).ok());
        }
        assert!(check_presheaf(&FinPresheaf::constant(b.clone(), 3)).ok());
    }
}

#[test]
fn broken_action_is_caught() {
    let b = Arc::new(monoid_cat(&FiniteMonoid::cyclic(2)));
    // the generator acts as the identity but the identity swaps
    let p = FinPresheaf::new(b, vec![2], vec![vec![1, 0], vec![0, 1]]).unwrap();
    let r = check_presheaf(&p);
    assert!(r.failed_laws().contains(&"identity"));
}

fn coproduct(p: &FinPresheaf, q: &FinPresheaf) -> FinPresheaf {
    let b = p.base().clone();
    let sizes = (0..b.n_obj()).map(|x| p.size(x) + q.size(x)).collect();
    let action = (0..b.n_mor())
        .map(|a| {
            let off = p.size(b.src(a));
            p.action(a).iter().copied().chain(q.action(a).iter().map(|&e| e + off)).collect()
        })
        .collect();
    FinPresheaf::new(b, sizes, action).unwrap()
}

/// Direct enumeration of every family of functions, filtered by naturality.
fn naive_nat(p: &FinPresheaf, q: &FinPresheaf) -> Vec<Vec<Vec<usize>>> {
    let b = p.base();
    let n = b.n_obj();
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..p.size(x)).map(move |e| (x, e))).collect();
    let radix: Vec<usize> = slots.iter().map(|&(x, _)| q.size(x)).collect();
    if radix.contains(&0) {
        return if slots.is_empty() { vec![vec![Vec::new(); n]] } else { Vec::new() };
    }
    let total: usize = radix.iter().product();
    let mut out = Vec::new();
    for mut code in 0..total {
        let mut vals = vec![0; slots.len()];
        for i in (0..slots.len()).rev() {
            vals[i] = code % radix[i];
            code /= radix[i];
        }
        let mut t: Vec<Vec<usize>> = (0..n).map(|x| vec![0; p.size(x)]).collect();
        for (&(x, e), &v) in slots.iter().zip(&vals) {
            t[x][e] = v;
        }
        let natural = (0..b.n_mor()).all(|a| {
            let (y, x) = (b.src(a), b.tgt(a));
            (0..p.size(x)).all(|e| t[y][p.at(a, e)] == q.at(a, t[x][e]))
        });
        if natural {
            out.push(t);
        }
    }
    out
}

fn presheaf_from(b: &Arc<FinCat>, pieces: &[usize]) -> FinPresheaf {
    let n = b.n_obj();
    let mut p = FinPresheaf::constant(b.clone(), 0);
    for &k in pieces {
        let piece = if k < n { FinPresheaf::representable(b.clone(), k) } else { FinPresheaf::constant(b.clone(), 1) };
        p = coproduct(&p, &piece);
    }
    p
}

fn search_space(p: &FinPresheaf, q: &FinPresheaf) -> f64 {
    (0..p.base().n_obj()).map(|x| (q.size(x) as f64).powi(p.size(x) as i32)).product()
}

proptest! {
    #[test]
    fn nat_transformations_match_naive_enumeration(
        bi in 0usize..4,
        ps in proptest::collection::vec(0usize..3, 0..3),
        qs in proptest::collection::vec(0usize..3, 0..3),
    ) {
        let b = bases()[bi].clone();
        let p = presheaf_from(&b, &ps);
        let q = presheaf_from(&b, &qs);
        prop_assert!(check_presheaf(&p).ok() && check_presheaf(&q).ok());
        prop_assume!(search_space(&p, &q) <= 200_000.0);
        let fast = nat_transformations(&p, &q).unwrap();
        let mut slow = naive_nat(&p, &q);
        slow.sort();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn yoneda_count_for_representables(bi in 0usize..4, x in 0usize..4, qs in proptest::collection::vec(0usize..3, 0..4)) {
        let b = bases()[bi].clone();
        let x = x % b.n_obj();
        let q = presheaf_from(&b, &qs);
        let nat = nat_transformations(&FinPresheaf::representable(b.clone(), x), &q).unwrap();
        prop_assert_eq!(nat.len(), q.size(x));
    }
}
