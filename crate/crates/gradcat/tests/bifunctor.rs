mod common;

use std::sync::Arc;

use common::{all_squares, base, big, curry_triples, census, graded, square_family, z2_product};
use gradcat::bifunctor::{
    bigraded_product, check_bifunctor, commutes_under, enumerate_bifunctors, enumerate_sesquifunctors, pair_bifunctor,
    swap_bifunctor, to_product,
};
use gradcat::bigraded::{self, map_square};
use gradcat::builtins;
use gradcat::graded::enumerate_graded_functors;
use gradcat::monoidal::FiniteMonoid;
use gradcat::{check_graded, GradedCat, Limits};

#[test]
fn currying_corners_agree() {
    for t in curry_triples() {
        let c = census(&t, big());
        let [bif, prod, left, right] = c.counts;
        assert!(bif > 0, "{}", t.name);
        assert_eq!((bif, bif, bif), (prod, left, right), "{}", t.name);
        assert_eq!(c.failures, [0; 8], "{}", t.name);
    }
}

#[test]
fn bifunctors_are_the_commuting_sesquifunctors() {
    for t in curry_triples().into_iter().take(4) {
        let all = enumerate_sesquifunctors(&t.a, &t.b, &t.c, false, big()).unwrap();
        let mut kept = 0;
        for s in &all {
            let full = check_bifunctor(s, false);
            assert_eq!(check_bifunctor(s, true).ok(), full.ok(), "{}", t.name);
            kept += full.ok() as usize;
        }
        let bifs = enumerate_bifunctors(&t.a, &t.b, &t.c, big()).unwrap();
        assert_eq!(kept, bifs.len(), "{}", t.name);
        assert!(all.len() >= bifs.len());
    }
}

/// `S3` as a one-object ordinary category, permutations listed in
/// lexicographic order.
fn s3() -> Arc<GradedCat> {
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let ix = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
    let mul = (0..36).map(|k| {
        let (a, b) = (perms[k / 6], perms[k % 6]);
        ix([a[b[0]], a[b[1]], a[b[2]]])
    });
    let names = perms.iter().map(|p| format!("{}{}{}", p[0], p[1], p[2])).collect();
    let m = FiniteMonoid::new(names, mul.collect(), 0).unwrap();
    Arc::new(builtins::from_ordinary(Arc::new(builtins::monoid_cat(&m))))
}

#[test]
fn non_commuting_partial_functors_are_named() {
    // Z/2, Z/2 → S3: involutions that do not commute give sesquifunctors that are not bifunctors
    let z2 = Arc::new(builtins::from_ordinary(Arc::new(builtins::monoid_cat(&FiniteMonoid::cyclic(2)))));
    let c = Arc::new(bigraded::from_left(&s3()).unwrap());
    let all = enumerate_sesquifunctors(&z2, &z2, &c, false, big()).unwrap();
    // four involutions on each side
    assert_eq!(all.len(), 16);
    let bifs = enumerate_bifunctors(&z2, &z2, &c, big()).unwrap();
    // identity pairs with anything (7), and each transposition with itself (3)
    assert_eq!(bifs.len(), 10);
    for s in &all {
        let r = check_bifunctor(s, false);
        assert_eq!(r.ok(), check_bifunctor(s, true).ok());
        if !r.ok() {
            assert!(r.failed_laws().contains(&"commute"), "{r}");
            assert!(commutes_under(s, 1, 1).unwrap().is_none());
        }
    }
}

#[test]
fn pairing_is_the_universal_bifunctor() {
    let posr = Arc::new(builtins::self_right(&base("poset")));
    let pairs = [(graded("self-Z2"), graded("self-right-Z2")), (graded("two-object-poset"), posr), (graded("monoid-B4"), graded("self-right-Z2"))];
    for (a, b) in pairs {
        let ab = Arc::new(bigraded_product(&a, &b).unwrap());
        assert!(check_graded(&ab.cat).ok());
        let pair = pair_bifunctor(&a, &b, &ab);
        assert!(check_bifunctor(&pair, false).ok());
        let g = to_product(&pair, &ab).unwrap();
        assert_eq!(g.obj, (0..ab.cat.n_obj()).collect::<Vec<_>>());
        assert_eq!(g.mor, (0..ab.cat.n_elem()).collect::<Vec<_>>());
    }
}

#[test]
fn swapping_twice_is_the_identity() {
    let c = z2_product();
    let cs = Arc::new(bigraded::swap(&c).unwrap());
    let css = Arc::new(bigraded::swap(&cs).unwrap());
    let (a, b) = (graded("self-Z2"), graded("self-right-Z2"));
    for s in enumerate_bifunctors(&a, &b, &c, Limits::default()).unwrap() {
        let once = swap_bifunctor(&s, &cs);
        assert!(check_bifunctor(&once, false).ok());
        let twice = swap_bifunctor(&once, &css);
        assert_eq!((twice.obj, twice.left, twice.right), (s.obj, s.left, s.right));
    }
}

#[test]
fn functors_preserve_the_diagonal_equation() {
    for (name, c) in square_family().into_iter().take(3) {
        let squares = all_squares(&c);
        let fs = enumerate_graded_functors(&c.cat, &c.cat, None, big()).unwrap();
        assert!(!fs.is_empty(), "{name}");
        for f in &fs {
            for s in &squares {
                let m = map_square(&c, &c, f, s).unwrap();
                assert_eq!(m.diag, f.mor[s.diag], "{name}");
            }
        }
    }
}
