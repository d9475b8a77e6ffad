#![allow(dead_code)]

use std::sync::Arc;

use gradcat::bifunctor::{
    self as bif, bigraded_product, check_bifunctor, commutes_under, enumerate_bifunctors, enumerate_sesquifunctors, enumerate_product_functors, from_product, swap_bifunctor, to_left,
    to_product, to_right, Sesquifunctor,
};
use gradcat::bigraded::{self, is_square, BigradedCat, Square};
use gradcat::builtins::{self, actegory, enriched, FinVCat, VAction};
use gradcat::duoidal::{braided_duoidal, c_star};
use gradcat::envelope::build_envelope;
use gradcat::funcat::{build_functor_category, FunctorCatSpec, Side};
use gradcat::monoidal::{self, OpmonFunctor};
use gradcat::graded::enumerate_graded_functors;
use gradcat::modules::{bifunctor_to_module, check_module, hom_family, module_to_bifunctor, Hat};
use gradcat::FinPresheaf;
use gradcat::{check_graded, ElemIx, FinMonCat, GradedCat, GradedFunctor, GradedTables, Limits};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn base(name: &str) -> Arc<FinMonCat> {
    Arc::new(builtins::base(name).unwrap_or_else(|| panic!("base {name}")))
}

pub fn graded(name: &str) -> Arc<GradedCat> {
    Arc::new(builtins::graded(name).unwrap_or_else(|| panic!("graded {name}")))
}

pub fn big() -> Limits {
    Limits { max_objects: 4096, max_hom: 100_000 }
}

/// The chain `a ≤ b ≤ c` enriched in `({0 ≤ 1}, ∧, 1)`.
pub fn chain_vcat() -> FinVCat {
    let v = base("poset");
    let n = 3;
    let h = |a: usize, b: usize| if a <= b { 1 } else { 0 };
    let cat = v.cat().clone();
    let hom = (0..n * n).map(|k| Some(h(k / n, k % n))).collect();
    let comp = (0..n * n * n)
        .map(|k| {
            let (a, b, c) = (k / (n * n), (k / n) % n, k % n);
            cat.hom(v.t(h(b, c), h(a, b)), h(a, c))[0]
        })
        .collect();
    let unit = (0..n).map(|_| cat.id(1)).collect();
    FinVCat { base: v, objects: vec!["a".into(), "b".into(), "c".into()], hom, comp, unit }
}

/// Left and right `Z/2` categories and their product, the target of most
/// functor-category cases.
pub fn z2_product() -> Arc<BigradedCat> {
    Arc::new(bigraded_product(&graded("self-Z2"), &graded("self-right-Z2")).expect("product"))
}

/// Every built-in construction, each as a small representative.
pub fn constructions() -> Vec<(String, Arc<GradedCat>)> {
    let mut out: Vec<(String, Arc<GradedCat>)> = Vec::new();
    let mut push = |n: &str, c: GradedCat| out.push((n.to_string(), Arc::new(c)));
    push("self-Z2", builtins::self_left(base("z2")));
    push("self-right-poset", builtins::self_right(&base("poset")));
    push("two-object-poset", builtins::two_object(base("poset"), 0));
    push("two-object-Z2", builtins::two_object(base("z2"), 1));
    push("enriched-chain", enriched(&chain_vcat()).expect("enriched"));
    push("actegory-poset", actegory(&VAction::regular(base("poset"))).expect("actegory"));
    push("actegory-twisted", actegory(&VAction::regular(base("twisted-z2"))).expect("actegory"));
    push("monoid-Z2", builtins::graded("monoid-Z2").unwrap());
    push("monoid-B4", builtins::graded("monoid-B4").unwrap());
    push("opposite-two-object-poset", builtins::opposite(&builtins::two_object(base("poset"), 0)));
    let ab = z2_product();
    push("product-Z2", (*ab.cat).clone());
    let pp = bigraded_product(&graded("two-object-poset"), &Arc::new(builtins::self_right(&base("poset")))).unwrap();
    push("product-poset", (*pp.cat).clone());
    let left = build_functor_category(&FunctorCatSpec::new(Side::LeftSource, graded("two-object-Z2"), ab.clone())).unwrap();
    push("funcat-left", (*left.cat).clone());
    let right = build_functor_category(&FunctorCatSpec::new(Side::RightSource, graded("self-right-Z2"), ab.clone())).unwrap();
    push("funcat-right", (*right.cat).clone());
    let d = braided_duoidal(base("bichar-z2")).unwrap();
    push("c-star-bichar-Z2", (*c_star(&d, &builtins::self_left(base("bichar-z2"))).unwrap().cat).clone());
    let d = braided_duoidal(base("poset")).unwrap();
    push("c-star-poset", (*c_star(&d, &builtins::two_object(base("poset"), 0)).unwrap().cat).clone());
    let unit = OpmonFunctor::unit_comonoid(base("z2"));
    push("change-base-unit", gradcat::graded::change_base(&unit, &builtins::self_left(base("z2"))).unwrap());
    let prod = Arc::new(monoidal::product(&base("z2"), &base("poset")));
    let incl = OpmonFunctor::left_inclusion(base("z2"), &base("poset"), prod.clone());
    let over = builtins::self_left(prod);
    push("change-base-inclusion", gradcat::graded::change_base(&incl, &over).unwrap());
    push("envelope-two-object-poset", (*build_envelope(&graded("two-object-poset"), Limits::default()).unwrap().cat).clone());
    push("envelope-Z2", (*build_envelope(&graded("self-Z2"), Limits::default()).unwrap().cat).clone());
    push("terminal-Z2", builtins::graded("terminal-Z2").unwrap());
    out
}

/// One random single-entry corruption: a reindexing, composite or identity
/// entry is pointed at a different element. With a single element the
/// element's grade or an endpoint is changed instead.
pub fn mutate(t: &GradedTables, n_grades: usize, rng: &mut StdRng) -> GradedTables {
    let mut m = t.clone();
    let ne = t.elements.len();
    if ne == 1 {
        let el = &mut m.elements[0];
        let no = t.objects.len();
        if n_grades > 1 && (no == 1 || rng.gen_bool(0.5)) {
            el.grade = (el.grade + rng.gen_range(1..n_grades)) % n_grades;
        } else if no > 1 {
            el.tgt = (el.tgt + rng.gen_range(1..no)) % no;
        } else {
            m.comp.clear();
        }
        return m;
    }
    let other = |old: ElemIx, rng: &mut StdRng| (old + rng.gen_range(1..ne)) % ne;
    let k = rng.gen_range(0..t.reindex.len() + t.comp.len() + t.ident.len());
    if k < t.reindex.len() {
        m.reindex[k].2 = other(t.reindex[k].2, rng);
    } else if k < t.reindex.len() + t.comp.len() {
        let k = k - t.reindex.len();
        m.comp[k].2 = other(t.comp[k].2, rng);
    } else {
        let k = k - t.reindex.len() - t.comp.len();
        m.ident[k] = other(t.ident[k], rng);
    }
    m
}

/// Mutations detected out of `n`, by structural rejection or a law violation.
pub fn mutation_detection(c: &GradedCat, n: usize, seed: u64) -> usize {
    let t = c.to_tables();
    let mut rng = StdRng::seed_from_u64(seed);
    (0..n)
        .filter(|_| {
            let m = mutate(&t, c.base().n_obj(), &mut rng);
            match GradedCat::from_tables(c.base().clone(), m) {
                Err(_) => true,
                Ok(mc) => !check_graded(&mc).ok(),
            }
        })
        .count()
}

/// Every bigraded square of `c`.
pub fn all_squares(c: &BigradedCat) -> Vec<Square> {
    let p = &c.cat;
    let (lefts, rights) = (c.left_elems().to_vec(), c.right_elems().to_vec());
    let mut out = Vec::new();
    for &f in &lefts {
        for &phi in rights.iter().filter(|&&r| p.src(r) == p.src(f)) {
            for &g in lefts.iter().filter(|&&g| p.src(g) == p.tgt(phi) && p.grade(g) == p.grade(f)) {
                for &phi2 in rights.iter().filter(|&&r| p.src(r) == p.tgt(f) && p.tgt(r) == p.tgt(g) && p.grade(r) == p.grade(phi)) {
                    if let Ok(Some(s)) = is_square(c, f, g, phi, phi2) {
                        out.push(s);
                    }
                }
            }
        }
    }
    out
}

/// Bigraded categories with a rich supply of squares.
pub fn square_family() -> Vec<(String, Arc<BigradedCat>)> {
    let d = braided_duoidal(base("z2")).unwrap();
    vec![
        ("product-Z2".into(), z2_product()),
        (
            "product-poset".into(),
            Arc::new(bigraded_product(&graded("two-object-poset"), &Arc::new(builtins::self_right(&base("poset")))).unwrap()),
        ),
        ("c-star-Z2".into(), Arc::new(c_star(&d, &builtins::self_left(base("z2"))).unwrap())),
        ("from-left-monoid-B4".into(), Arc::new(bigraded::from_left(&graded("monoid-B4")).unwrap())),
    ]
}

/// Every 2×2 grid `s, t` over `s′, t′` of squares of `c`.
pub fn all_grids(sq: &[Square]) -> Vec<[Square; 4]> {
    let mut out = Vec::new();
    for s in sq {
        for t in sq.iter().filter(|t| t.f == s.g) {
            for s2 in sq.iter().filter(|s2| s2.phi == s.phi2) {
                for t2 in sq.iter().filter(|t2| t2.f == s2.g && t2.phi == t.phi2) {
                    out.push([*s, *t, *s2, *t2]);
                }
            }
        }
    }
    out
}

/// Source and target pairs for functor categories, both sides.
pub fn funcat_matrix() -> Vec<(String, FunctorCatSpec)> {
    let ab = z2_product();
    let pp = Arc::new(bigraded_product(&graded("two-object-poset"), &Arc::new(builtins::self_right(&base("poset")))).unwrap());
    let ml = Arc::new(bigraded::from_left(&graded("monoid-B4")).unwrap());
    let mr = Arc::new(bigraded::from_right(&graded("self-right-Z2")).unwrap());
    let cases = [
        ("two-object-Z2 -> Z2xZ2", Side::LeftSource, graded("two-object-Z2"), ab.clone()),
        ("self-Z2 -> Z2xZ2", Side::LeftSource, graded("self-Z2"), ab.clone()),
        ("self-right-Z2 -> Z2xZ2", Side::RightSource, graded("self-right-Z2"), ab.clone()),
        ("opposite-two-object-Z2 -> Z2xZ2", Side::RightSource, Arc::new(builtins::opposite(&graded("two-object-Z2"))), ab),
        ("two-object-poset -> poset-product", Side::LeftSource, graded("two-object-poset"), pp.clone()),
        ("self-right-poset -> poset-product", Side::RightSource, Arc::new(builtins::self_right(&base("poset"))), pp),
        ("monoid-B4 -> monoid-B4", Side::LeftSource, graded("monoid-B4"), ml),
        ("self-right-Z2 -> self-right-Z2", Side::RightSource, graded("self-right-Z2"), mr),
    ];
    cases.into_iter().map(|(n, side, s, t)| (n.to_string(), FunctorCatSpec::new(side, s, t))).collect()
}

/// Compares generator-only and all-morphism naturality on every family of
/// every grade between every pair of functors; returns (cases, disagreements).
pub fn naturality_disagreements(spec: &FunctorCatSpec) -> (usize, usize) {
    let fs = gradcat::funcat::enumerate_functors(spec).unwrap();
    let view = spec.comp_view().clone();
    let n = spec.source.n_obj();
    let (mut cases, mut bad) = (0, 0);
    for f in &fs {
        for g in &fs {
            for x in 0..view.base().n_obj() {
                let cands: Vec<&[ElemIx]> = (0..n).map(|a| view.hom(x, f.obj[a], g.obj[a])).collect();
                let total: usize = cands.iter().map(|c| c.len()).product();
                for mut code in 0..total {
                    let mut fam = vec![0; n];
                    for a in (0..n).rev() {
                        fam[a] = cands[a][code % cands[a].len()];
                        code /= cands[a].len();
                    }
                    cases += 1;
                    bad += (spec.is_natural(f, g, &fam, false) != spec.is_natural(f, g, &fam, true)) as usize;
                }
            }
        }
    }
    (cases, bad)
}

pub struct Triple {
    pub name: String,
    pub a: Arc<GradedCat>,
    pub b: Arc<GradedCat>,
    pub c: Arc<BigradedCat>,
}

/// `(A, B, C)` with `A` left graded, `B` right graded and `C` bigraded.
pub fn curry_triples() -> Vec<Triple> {
    let z2r = graded("self-right-Z2");
    let posr = Arc::new(builtins::self_right(&base("poset")));
    let d = braided_duoidal(base("z2")).unwrap();
    let one = Arc::new(builtins::from_ordinary(Arc::new(builtins::monoid_cat(&monoidal::FiniteMonoid::cyclic(2)))));
    let t = |name: &str, a: Arc<GradedCat>, b: Arc<GradedCat>, c: BigradedCat| Triple { name: name.into(), a, b, c: Arc::new(c) };
    vec![
        t("self-Z2, self-right-Z2, product", graded("self-Z2"), z2r.clone(), (*z2_product()).clone()),
        t("two-object-Z2, self-right-Z2, product", graded("two-object-Z2"), z2r.clone(), (*z2_product()).clone()),
        t(
            "two-object-poset, opposite, self-poset product",
            graded("two-object-poset"),
            Arc::new(builtins::opposite(&graded("two-object-poset"))),
            bigraded_product(&graded("self-poset"), &posr).unwrap(),
        ),
        t(
            "self-poset, self-right-poset, product",
            graded("self-poset"),
            posr.clone(),
            bigraded_product(&graded("self-poset"), &posr).unwrap(),
        ),
        t(
            "two-object-Z2, opposite, product",
            graded("two-object-Z2"),
            Arc::new(builtins::opposite(&graded("two-object-Z2"))),
            (*z2_product()).clone(),
        ),
        t(
            "two-object-poset, self-right-poset, product",
            graded("two-object-poset"),
            posr.clone(),
            bigraded_product(&graded("two-object-poset"), &posr).unwrap(),
        ),
        t("self-Z2, self-right-Z2, C-star", graded("self-Z2"), z2r, c_star(&d, &builtins::self_left(base("z2"))).unwrap()),
        t("monoid-B4, Z/2 as ordinary, from-left", graded("monoid-B4"), one, bigraded::from_left(&graded("monoid-B4")).unwrap()),
    ]
}

pub struct Census {
    /// |GBif(A,B;C)|, |Funct(A⊠B→C)|, |Funct(A→[B,C])|, |Funct(B→[A,C])|
    pub counts: [usize; 4],
    /// Failures of each of the eight round trips.
    pub failures: [usize; 8],
}

fn same_functor(f: &GradedFunctor, g: &GradedFunctor) -> bool {
    f.obj == g.obj && f.mor == g.mor
}

fn same_bif(s: &Sesquifunctor, t: &Sesquifunctor) -> bool {
    s.obj == t.obj && s.left == t.left && s.right == t.right
}

/// Four independent enumerations and the eight round trips between them.
pub fn census(t: &Triple, limits: Limits) -> Census {
    let (a, b, c) = (&t.a, &t.b, &t.c);
    let ab = Arc::new(bigraded_product(a, b).unwrap());
    let bifs = enumerate_bifunctors(a, b, c, limits).unwrap();
    let prods = enumerate_product_functors(&ab, c, limits).unwrap();
    let mut bc_spec = FunctorCatSpec::new(Side::RightSource, b.clone(), c.clone());
    bc_spec.limits = limits;
    let bc = build_functor_category(&bc_spec).unwrap();
    let mut ac_spec = FunctorCatSpec::new(Side::LeftSource, a.clone(), c.clone());
    ac_spec.limits = limits;
    let ac = build_functor_category(&ac_spec).unwrap();
    let lefts = enumerate_graded_functors(a, &bc.cat, None, limits).unwrap();
    let rights = enumerate_graded_functors(b, &ac.cat, None, limits).unwrap();
    let cs = Arc::new(bigraded::swap(c).unwrap());
    let css = Arc::new(bigraded::swap(&cs).unwrap());
    let mut failures = [0; 8];
    for s in &bifs {
        let g = to_product(s, &ab).unwrap();
        failures[0] += !same_bif(&from_product(&g, a, b, &ab, c).unwrap(), s) as usize;
        let h = to_left(s, &bc).unwrap();
        failures[2] += !same_bif(&bif::from_left(&h, b, c, &bc), s) as usize;
        let k = to_right(s, &ac).unwrap();
        failures[4] += !same_bif(&bif::from_right(&k, a, c, &ac), s) as usize;
        let twice = swap_bifunctor(&swap_bifunctor(s, &cs), &css);
        failures[6] += !same_bif(&twice, s) as usize;
    }
    for g in &prods {
        let back = from_product(g, a, b, &ab, c).and_then(|s| to_product(&s, &ab));
        failures[1] += !back.is_ok_and(|h| same_functor(&h, g)) as usize;
        // through all three corners
        let cycle = from_product(g, a, b, &ab, c)
            .and_then(|s| to_left(&s, &bc))
            .map(|h| bif::from_left(&h, b, c, &bc))
            .and_then(|s| to_right(&s, &ac))
            .map(|k| bif::from_right(&k, a, c, &ac))
            .and_then(|s| to_product(&s, &ab));
        failures[7] += !cycle.is_ok_and(|h| same_functor(&h, g)) as usize;
    }
    for h in &lefts {
        let back = to_left(&bif::from_left(h, b, c, &bc), &bc);
        failures[3] += !back.is_ok_and(|x| same_functor(&x, h)) as usize;
    }
    for k in &rights {
        let back = to_right(&bif::from_right(k, a, c, &ac), &ac);
        failures[5] += !back.is_ok_and(|x| same_functor(&x, k)) as usize;
    }
    Census { counts: [bifs.len(), prods.len(), lefts.len(), rights.len()], failures }
}

/// The unit category over discrete `Z/2`: one object, only its identity.
pub fn unit_z2() -> Arc<GradedCat> {
    let v = base("z2");
    let i = v.unit();
    let c = GradedCat::build(
        v,
        vec!["*".into()],
        |x, _, _| Ok(if x == i { vec![(0u8, "i".to_string())] } else { vec![] }),
        |&k, _| Some(k),
        |_, _| Some(0),
        |_| Some(0),
    )
    .unwrap();
    Arc::new(c)
}

/// Representables at both grades and a two-point constant.
pub fn z2_extras() -> Vec<(String, FinPresheaf)> {
    let d = base("z2").cat().clone();
    vec![
        ("y0".into(), FinPresheaf::representable(d.clone(), 0)),
        ("y1".into(), FinPresheaf::representable(d.clone(), 1)),
        ("two".into(), FinPresheaf::constant(d, 2)),
    ]
}

pub struct ModuleCensus {
    pub sesquifunctors: usize,
    pub modules: usize,
    pub bifunctors: usize,
    /// `(f, μ, g)` instances compared.
    pub instances: usize,
    /// Pairs `(f, g)` where the action-commuting predicate and the square
    /// predicate disagree.
    pub disagreements: usize,
    pub round_trip_failures: usize,
    /// Sesquifunctors where `check_module` and `check_bifunctor` disagree.
    pub check_mismatches: usize,
}

/// Modules `A ⇸ B` through every sesquifunctor `B°, A → V̂`, compared pointwise.
pub fn module_census(a: &Arc<GradedCat>, b: &Arc<GradedCat>, extra: Vec<(String, FinPresheaf)>) -> ModuleCensus {
    let hat = Hat::new(hom_family(b, extra).unwrap(), big()).unwrap();
    let bop = Arc::new(builtins::opposite(b));
    let all = enumerate_sesquifunctors(&bop, a, &hat.cat, false, big()).unwrap();
    let mut out = ModuleCensus {
        sesquifunctors: all.len(),
        modules: 0,
        bifunctors: enumerate_bifunctors(&bop, a, &hat.cat, big()).unwrap().len(),
        instances: 0,
        disagreements: 0,
        round_trip_failures: 0,
        check_mismatches: 0,
    };
    for s in &all {
        let m = bifunctor_to_module(s, b, &hat).unwrap();
        let back = module_to_bifunctor(&m, &bop, &hat).unwrap();
        out.round_trip_failures += !same_bif(&back, s) as usize;
        out.round_trip_failures += (bifunctor_to_module(&back, b, &hat).unwrap() != m) as usize;
        for f in 0..b.n_elem() {
            for g in 0..a.n_elem() {
                let (bb, aa) = (b.tgt(f), a.src(g));
                let mut commute = true;
                for y in 0..m.v.n_obj() {
                    for mu in 0..m.value(bb, aa).size(y) {
                        let (l, r) = m.commute_sides(f, g, y, mu);
                        commute &= l == r;
                        out.instances += 1;
                    }
                }
                let square = commutes_under(s, f, g).unwrap().is_some();
                out.disagreements += (commute != square || commute != m.commutes_at(f, g)) as usize;
            }
        }
        let ok = check_module(&m).ok();
        out.check_mismatches += (ok != check_bifunctor(s, false).ok()) as usize;
        out.modules += ok as usize;
    }
    out
}
