//! Graded modules `M: A ⇸ B` between right graded categories, their
//! correspondence with bifunctors `B°, A → V̂`, and the graded Yoneda lemma.

use std::sync::Arc;

use crate::bifunctor::Sesquifunctor;
use crate::bigraded::{BigradedCat, PresheafHat, PresheafObjects};
use crate::builtins::opposite;
use crate::error::{structural, Error, Result};
use crate::fincat::{FinPresheaf, NatTrans, ObjIx};
use crate::funcat::{build_functor_category, hom_at_grade, FunctorCat, FunctorCatSpec, Side};
use crate::graded::{ElemIx, GradedCat, GradedFunctor, Limits};
use crate::monoidal::{o, reverse, Expr, FinMonCat};
use crate::report::{CheckReport, Tally};

/// `λ[f][A][Y][μ] ∈ M(B′,A)(X⊗Y)` for `f: B′'X → B` and `μ ∈ M(B,A)(Y)`.
pub type LeftAction = Vec<Vec<Vec<Vec<usize>>>>;
/// `ρ[g][B][Y][μ] ∈ M(B,A′)(Y⊗X′)` for `g: A'X′ → A′` and `μ ∈ M(B,A)(Y)`.
pub type RightAction = Vec<Vec<Vec<Vec<usize>>>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedModule {
    pub v: Arc<FinMonCat>,
    pub a: Arc<GradedCat>,
    pub b: Arc<GradedCat>,
    /// `b * |ob A| + a ↦ M(B, A)`
    pub values: Vec<FinPresheaf>,
    pub lambda: LeftAction,
    pub rho: RightAction,
}

impl GradedModule {
    pub fn value(&self, b: usize, a: usize) -> &FinPresheaf {
        &self.values[b * self.a.n_obj() + a]
    }

    pub fn validate(&self) -> Result<()> {
        let vr = reverse(&self.v);
        if **self.a.base() != vr || **self.b.base() != vr {
            return Err(structural("module categories must be right graded over the module base"));
        }
        let (na, nb) = (self.a.n_obj(), self.b.n_obj());
        if self.values.len() != na * nb || self.values.iter().any(|p| **p.base() != **self.v.cat()) {
            return Err(structural("module values do not match the categories"));
        }
        let v = &self.v;
        for (f, per_a) in self.lambda.iter().enumerate() {
            let (bs, bt, x) = (self.b.src(f), self.b.tgt(f), self.b.grade(f));
            for (a, per_y) in per_a.iter().enumerate() {
                for (y, row) in per_y.iter().enumerate() {
                    let (from, to) = (self.value(bt, a), self.value(bs, a));
                    if row.len() != from.size(y) || row.iter().any(|&e| e >= to.size(v.t(x, y))) {
                        return Err(structural(format!("left action out of range at {}", self.b.name(f))));
                    }
                }
            }
        }
        for (g, per_b) in self.rho.iter().enumerate() {
            let (as_, at, x2) = (self.a.src(g), self.a.tgt(g), self.a.grade(g));
            for (b, per_y) in per_b.iter().enumerate() {
                for (y, row) in per_y.iter().enumerate() {
                    let (from, to) = (self.value(b, as_), self.value(b, at));
                    if row.len() != from.size(y) || row.iter().any(|&e| e >= to.size(v.t(y, x2))) {
                        return Err(structural(format!("right action out of range at {}", self.a.name(g))));
                    }
                }
            }
        }
        let shaped = self.lambda.len() == self.b.n_elem()
            && self.lambda.iter().all(|r| r.len() == na && r.iter().all(|s| s.len() == v.n_obj()))
            && self.rho.len() == self.a.n_elem()
            && self.rho.iter().all(|r| r.len() == nb && r.iter().all(|s| s.len() == v.n_obj()));
        if !shaped {
            return Err(structural("module action tables have the wrong shape"));
        }
        Ok(())
    }

    fn lam(&self, f: ElemIx, a: usize, y: ObjIx, mu: usize) -> usize {
        self.lambda[f][a][y][mu]
    }
    fn rh(&self, g: ElemIx, b: usize, y: ObjIx, mu: usize) -> usize {
        self.rho[g][b][y][mu]
    }

    /// `λ(f, ρ(μ, g))` and `ρ(λ(f, μ), g)`, both in `M(B′,A′)((X⊗Y)⊗X′)`.
    pub fn commute_sides(&self, f: ElemIx, g: ElemIx, y: ObjIx, mu: usize) -> (usize, usize) {
        let v = &self.v;
        let (b, b2, x) = (self.b.tgt(f), self.b.src(f), self.b.grade(f));
        let (a, a2, x2) = (self.a.src(g), self.a.tgt(g), self.a.grade(g));
        let lr = self.lam(f, a2, v.t(y, x2), self.rh(g, b, y, mu));
        let rl = self.rh(g, b2, v.t(x, y), self.lam(f, a, y, mu));
        (self.value(b2, a2).at(v.a(x, y, x2), lr), rl)
    }

    /// The actions commute at `(f, g)` for every `Y` and `μ`.
    pub fn commutes_at(&self, f: ElemIx, g: ElemIx) -> bool {
        let b = self.b.tgt(f);
        let a = self.a.src(g);
        (0..self.v.n_obj()).all(|y| {
            (0..self.value(b, a).size(y)).all(|mu| {
                let (l, r) = self.commute_sides(f, g, y, mu);
                l == r
            })
        })
    }
}

/// Associativity, unitality and naturality of both actions, and their
/// commutation, checked exhaustively.
pub fn check_module(m: &GradedModule) -> CheckReport {
    if let Err(e) = m.validate() {
        let mut t = Tally::default();
        t.check(false, "shape", || vec![e.to_string()]);
        return t.finish();
    }
    let (a, b, v) = (&m.a, &m.b, &m.v);
    let cat = v.cat();
    let n = v.n_obj();
    let mut t = Tally::default();
    let w = |items: &[&str]| items.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    // λ
    for f in 0..b.n_elem() {
        let (bs, bt, x) = (b.src(f), b.tgt(f), b.grade(f));
        for aa in 0..a.n_obj() {
            let from = m.value(bt, aa);
            let to = m.value(bs, aa);
            for y in 0..n {
                for mu in 0..from.size(y) {
                    let l = m.lam(f, aa, y, mu);
                    for &f0 in b.ins(bs) {
                        let (b3, x0) = (b.src(f0), b.grade(f0));
                        let ff = b.comp(f, f0).expect("composable");
                        let lhs = m.lam(ff, aa, y, mu);
                        let rhs = m.value(b3, aa).at(v.a(x0, x, y), m.lam(f0, aa, v.t(x, y), l));
                        t.check(lhs == rhs, "lambda-action", || w(&[b.name(f0), b.name(f), &mu.to_string()]));
                    }
                    for al in (0..cat.n_mor()).filter(|&al| cat.tgt(al) == x) {
                        let lhs = m.lam(b.reindex(f, al).expect("reindex"), aa, y, mu);
                        t.check(lhs == to.at(v.tm(al, v.id(y)), l), "lambda-natural", || w(&[b.name(f), cat.mor_name(al)]));
                    }
                }
                for be in (0..cat.n_mor()).filter(|&be| cat.tgt(be) == y) {
                    let y2 = cat.src(be);
                    for mu in 0..from.size(y) {
                        let lhs = m.lam(f, aa, y2, from.at(be, mu));
                        let rhs = to.at(v.tm(v.id(x), be), m.lam(f, aa, y, mu));
                        t.check(lhs == rhs, "lambda-natural", || w(&[b.name(f), cat.mor_name(be), &mu.to_string()]));
                    }
                }
            }
        }
    }
    for bb in 0..b.n_obj() {
        let i = b.ident(bb);
        for aa in 0..a.n_obj() {
            let p = m.value(bb, aa);
            for y in 0..n {
                for mu in 0..p.size(y) {
                    t.check(m.lam(i, aa, y, mu) == p.at(v.l(y), mu), "lambda-action", || w(&[b.name(i), &mu.to_string()]));
                }
            }
        }
    }
    // ρ
    for g in 0..a.n_elem() {
        let (as_, at, x2) = (a.src(g), a.tgt(g), a.grade(g));
        for bb in 0..b.n_obj() {
            let from = m.value(bb, as_);
            let to = m.value(bb, at);
            for y in 0..n {
                for mu in 0..from.size(y) {
                    let r = m.rh(g, bb, y, mu);
                    for &g2 in a.outs(at) {
                        let (a3, x3) = (a.tgt(g2), a.grade(g2));
                        let gg = a.comp(g2, g).expect("composable");
                        let lhs = m.rh(g2, bb, v.t(y, x2), r);
                        let rhs = m.value(bb, a3).at(v.a(y, x2, x3), m.rh(gg, bb, y, mu));
                        t.check(lhs == rhs, "rho-action", || w(&[a.name(g), a.name(g2), &mu.to_string()]));
                    }
                    for al in (0..cat.n_mor()).filter(|&al| cat.tgt(al) == x2) {
                        let lhs = m.rh(a.reindex(g, al).expect("reindex"), bb, y, mu);
                        t.check(lhs == to.at(v.tm(v.id(y), al), r), "rho-natural", || w(&[a.name(g), cat.mor_name(al)]));
                    }
                }
                for be in (0..cat.n_mor()).filter(|&be| cat.tgt(be) == y) {
                    let y2 = cat.src(be);
                    for mu in 0..from.size(y) {
                        let lhs = m.rh(g, bb, y2, from.at(be, mu));
                        let rhs = to.at(v.tm(be, v.id(x2)), m.rh(g, bb, y, mu));
                        t.check(lhs == rhs, "rho-natural", || w(&[a.name(g), cat.mor_name(be), &mu.to_string()]));
                    }
                }
            }
        }
    }
    for aa in 0..a.n_obj() {
        let i = a.ident(aa);
        for bb in 0..b.n_obj() {
            let p = m.value(bb, aa);
            for y in 0..n {
                for mu in 0..p.size(y) {
                    t.check(m.rh(i, bb, y, mu) == p.at(v.r(y), mu), "rho-action", || w(&[a.name(i), &mu.to_string()]));
                }
            }
        }
    }
    for f in 0..b.n_elem() {
        for g in 0..a.n_elem() {
            let (bb, aa) = (b.tgt(f), a.src(g));
            for y in 0..n {
                for mu in 0..m.value(bb, aa).size(y) {
                    let (l, r) = m.commute_sides(f, g, y, mu);
                    t.check(l == r, "commute", || w(&[b.name(f), &mu.to_string(), a.name(g)]));
                }
            }
        }
    }
    t.finish()
}

/// `Y ↦ C(A'Y; B)` with reindexing as the action.
pub fn hom_presheaf(c: &GradedCat, a: usize, b: usize) -> FinPresheaf {
    let d = c.base().cat().clone();
    let sizes = (0..d.n_obj()).map(|y| c.hom(y, a, b).len()).collect();
    let action = (0..d.n_mor())
        .map(|al| c.hom(d.tgt(al), a, b).iter().map(|&e| c.hom_pos(c.reindex(e, al).expect("reindex"))).collect())
        .collect();
    FinPresheaf::new(d, sizes, action).expect("hom presheaf")
}

/// The identity module `B: B ⇸ B` given by the hom presheaves and composition.
pub fn identity_module(b: &Arc<GradedCat>) -> GradedModule {
    let n = b.n_obj();
    let v = Arc::new(reverse(b.base()));
    let values = (0..n * n).map(|k| hom_presheaf(b, k / n, k % n)).collect();
    let nv = v.n_obj();
    let lambda = (0..b.n_elem())
        .map(|f| {
            (0..n)
                .map(|a| {
                    (0..nv).map(|y| b.hom(y, b.tgt(f), a).iter().map(|&mu| b.hom_pos(b.comp(mu, f).expect("composable"))).collect()).collect()
                })
                .collect()
        })
        .collect();
    let rho = (0..b.n_elem())
        .map(|g| {
            (0..n)
                .map(|bb| {
                    (0..nv).map(|y| b.hom(y, bb, b.src(g)).iter().map(|&mu| b.hom_pos(b.comp(g, mu).expect("composable"))).collect()).collect()
                })
                .collect()
        })
        .collect();
    GradedModule { v, a: b.clone(), b: b.clone(), values, lambda, rho }
}

/// `V̂` restricted to a presheaf family, materialized.
pub struct Hat {
    pub lazy: PresheafHat,
    pub cat: Arc<BigradedCat>,
}

impl Hat {
    pub fn new(objs: PresheafObjects, limits: Limits) -> Result<Hat> {
        let lazy = PresheafHat::new(objs, limits)?;
        let cat = Arc::new(lazy.materialize()?);
        Ok(Hat { lazy, cat })
    }

    pub fn base(&self) -> &Arc<FinMonCat> {
        &self.lazy.objs.base
    }

    pub fn index_of(&self, p: &FinPresheaf) -> Result<usize> {
        self.lazy
            .objs
            .presheaves
            .iter()
            .position(|q| q == p)
            .ok_or_else(|| structural("presheaf is not in the family of the presheaf category"))
    }

    /// The parent element with the given transformation.
    pub fn element(&self, (x, y): (ObjIx, ObjIx), p: usize, q: usize, t: &NatTrans) -> Result<ElemIx> {
        let h = self.lazy.hom(x, y, p, q)?;
        let pos = h.iter().position(|u| u == t).ok_or_else(|| structural("not a natural transformation"))?;
        Ok(self.cat.cat.hom(self.cat.grade(x, y), p, q)[pos])
    }

    /// The transformation underlying a parent element.
    pub fn transformation(&self, e: ElemIx) -> NatTrans {
        let c = &self.cat.cat;
        let (x, y) = self.cat.split_grade(c.grade(e));
        let h = self.lazy.hom(x, y, c.src(e), c.tgt(e)).expect("materialized hom");
        h[c.hom_pos(e)].clone()
    }
}

/// `M ↦ (M(−, A), M(B, −))` as a sesquifunctor `B°, A → V̂`.
pub fn module_to_bifunctor(m: &GradedModule, bop: &Arc<GradedCat>, hat: &Hat) -> Result<Sesquifunctor> {
    let (a, b) = (&m.a, &m.b);
    let v = hat.base();
    if **v != *m.v {
        return Err(structural("presheaf category over a different base"));
    }
    let (na, nb) = (a.n_obj(), b.n_obj());
    let obj: Vec<usize> = m.values.iter().map(|p| hat.index_of(p)).collect::<Result<_>>()?;
    let i = v.unit();
    let c = &hat.cat;
    let mut left = Vec::with_capacity(na);
    for aa in 0..na {
        let row = (0..b.n_elem())
            .map(|f| {
                let (bs, bt, x) = (b.src(f), b.tgt(f), b.grade(f));
                let to = m.value(bs, aa);
                let t: NatTrans = (0..v.n_obj())
                    .map(|z| m.lambda[f][aa][z].iter().map(|&e| to.at(v.r(v.t(x, z)), e)).collect())
                    .collect();
                let e = hat.element((x, i), obj[bt * na + aa], obj[bs * na + aa], &t)?;
                c.parent_to_left(e).ok_or_else(|| structural("left grade"))
            })
            .collect::<Result<Vec<_>>>()?;
        left.push(row);
    }
    let mut right = Vec::with_capacity(nb);
    for bb in 0..nb {
        let row = (0..a.n_elem())
            .map(|g| {
                let (as_, at, x2) = (a.src(g), a.tgt(g), a.grade(g));
                let to = m.value(bb, at);
                let t: NatTrans = (0..v.n_obj())
                    .map(|z| m.rho[g][bb][z].iter().map(|&e| to.at(v.tm(v.l(z), v.id(x2)), e)).collect())
                    .collect();
                let e = hat.element((i, x2), obj[bb * na + as_], obj[bb * na + at], &t)?;
                c.parent_to_right(e).ok_or_else(|| structural("right grade"))
            })
            .collect::<Result<Vec<_>>>()?;
        right.push(row);
    }
    Ok(Sesquifunctor { a: bop.clone(), b: a.clone(), c: c.clone(), obj, left, right })
}

/// The inverse of [`module_to_bifunctor`]; `s.a` must be the opposite of `b`.
pub fn bifunctor_to_module(s: &Sesquifunctor, b: &Arc<GradedCat>, hat: &Hat) -> Result<GradedModule> {
    let a = &s.b;
    let v = hat.base().clone();
    let (na, nb) = (a.n_obj(), b.n_obj());
    if s.a.n_elem() != b.n_elem() || s.a.n_obj() != nb {
        return Err(structural("left category is not the opposite of the module's codomain"));
    }
    let ps = &hat.lazy.objs.presheaves;
    let values: Vec<FinPresheaf> = s.obj.iter().map(|&k| ps[k].clone()).collect();
    let c = &s.c;
    let lambda = (0..b.n_elem())
        .map(|f| {
            let (bs, x) = (b.src(f), b.grade(f));
            (0..na)
                .map(|aa| {
                    let t = hat.transformation(c.left_to_parent(s.left[aa][f]));
                    let to = &values[bs * na + aa];
                    (0..v.n_obj()).map(|z| t[z].iter().map(|&e| to.at(v.inv(v.r(v.t(x, z))), e)).collect()).collect()
                })
                .collect()
        })
        .collect();
    let rho = (0..a.n_elem())
        .map(|g| {
            let (at, x2) = (a.tgt(g), a.grade(g));
            (0..nb)
                .map(|bb| {
                    let t = hat.transformation(c.right_to_parent(s.right[bb][g]));
                    let to = &values[bb * na + at];
                    let back = |z| v.inv(v.tm(v.l(z), v.id(x2)));
                    (0..v.n_obj()).map(|z| t[z].iter().map(|&e| to.at(back(z), e)).collect()).collect()
                })
                .collect()
        })
        .collect();
    Ok(GradedModule { v, a: a.clone(), b: b.clone(), values, lambda, rho })
}

/// The hom presheaves of `B` without repetitions, plus `extra`.
pub fn hom_family(b: &GradedCat, extra: Vec<(String, FinPresheaf)>) -> Result<PresheafObjects> {
    let v = Arc::new(reverse(b.base()));
    let n = b.n_obj();
    let mut named: Vec<(String, FinPresheaf)> = Vec::new();
    let all = (0..n * n).map(|k| (format!("{}({},{})", "hom", b.obj_name(k / n), b.obj_name(k % n)), hom_presheaf(b, k / n, k % n)));
    for (name, p) in all.chain(extra) {
        if !named.iter().any(|(_, q)| *q == p) {
            named.push((name, p));
        }
    }
    PresheafObjects::new(v, named)
}

/// Everything the Yoneda embedding of a right graded `B` needs.
pub struct YonedaSetup {
    pub b: Arc<GradedCat>,
    pub bop: Arc<GradedCat>,
    pub hat: Hat,
    /// The representables `B(−, B)` as left graded functors `B° → V̂`.
    pub reps: Vec<GradedFunctor>,
}

impl YonedaSetup {
    pub fn new(b: &Arc<GradedCat>, extra: Vec<(String, FinPresheaf)>, limits: Limits) -> Result<YonedaSetup> {
        let hat = Hat::new(hom_family(b, extra)?, limits)?;
        let bop = Arc::new(opposite(b));
        let bif = module_to_bifunctor(&identity_module(b), &bop, &hat)?;
        let reps = (0..b.n_obj()).map(|bb| bif.left_functor(bb)).collect();
        Ok(YonedaSetup { b: b.clone(), bop, hat, reps })
    }

    pub fn spec(&self, objects: Option<Vec<GradedFunctor>>, limits: Limits) -> FunctorCatSpec {
        let mut spec = FunctorCatSpec::new(Side::LeftSource, self.bop.clone(), self.hat.cat.clone());
        spec.objects = objects;
        spec.limits = limits;
        spec
    }

    /// All left graded functors `B° → V̂` over the family.
    pub fn presheaf_functors(&self, limits: Limits) -> Result<Vec<GradedFunctor>> {
        crate::funcat::enumerate_functors(&self.spec(None, limits))
    }
}

/// `y: B → [B°, V̂]` into the full subcategory on the representables, with
/// `y(g)` the family `B(A, g)`.
pub fn yoneda_embedding(setup: &YonedaSetup, limits: Limits) -> Result<(FunctorCat, GradedFunctor)> {
    let fc = build_functor_category(&setup.spec(Some(setup.reps.clone()), limits))?;
    let b = &setup.b;
    let bif = module_to_bifunctor(&identity_module(b), &setup.bop, &setup.hat)?;
    let mut mor = Vec::with_capacity(b.n_elem());
    for g in 0..b.n_elem() {
        let fam: Vec<ElemIx> = (0..b.n_obj()).map(|a| bif.right[a][g]).collect();
        let e = fc
            .cat
            .hom(b.grade(g), b.src(g), b.tgt(g))
            .iter()
            .copied()
            .find(|&e| fc.comps[e] == fam)
            .ok_or_else(|| structural(format!("y({}) is not a graded transformation", b.name(g))))?;
        mor.push(e);
    }
    let y = GradedFunctor::new(b.clone(), fc.cat.clone(), (0..b.n_obj()).collect(), mor)?;
    Ok((fc, y))
}

/// `y` is bijective on every graded hom-set.
pub fn is_fully_faithful(y: &GradedFunctor) -> bool {
    let (d, c) = (&y.dom, &y.cod);
    (0..d.base().n_obj()).all(|x| {
        (0..d.n_obj()).all(|a| {
            (0..d.n_obj()).all(|b| {
                let src = d.hom(x, a, b);
                let tgt = c.hom(x, y.obj[a], y.obj[b]);
                let mut img: Vec<ElemIx> = src.iter().map(|&e| y.mor[e]).collect();
                img.sort_unstable();
                img.dedup();
                img.len() == src.len() && img.len() == tgt.len()
            })
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YonedaWitness {
    pub transformations: usize,
    pub elements: usize,
    /// `θ ↦ F(B)(κ)(θ_B(i_B))` for each transformation, in order.
    pub image: Vec<usize>,
    pub bijective: bool,
}

/// `[B°, V̂](B(−,B), F)(X′) ≅ F(B)(X′)`, by evaluating at `i_B`.
pub fn yoneda_check(setup: &YonedaSetup, f: &GradedFunctor, b_obj: usize, x2: ObjIx, limits: Limits) -> Result<YonedaWitness> {
    let spec = setup.spec(None, limits);
    let yb = &setup.reps[b_obj];
    let fams = hom_at_grade(&spec, yb, f, x2, true)?;
    let v = setup.hat.base();
    let i = v.unit();
    let c = &setup.hat.cat;
    let fb = &setup.hat.lazy.objs.presheaves[f.obj[b_obj]];
    let kappa = v.canonical(&o(x2), &Expr::t(Expr::t(Expr::Unit, Expr::Unit), o(x2)));
    let b = &setup.b;
    let ib = b.hom_pos(b.ident(b_obj));
    let image: Vec<usize> = fams
        .iter()
        .map(|fam| {
            let t = setup.hat.transformation(c.right_to_parent(fam[b_obj]));
            fb.at(kappa, t[i][ib])
        })
        .collect();
    let mut seen = image.clone();
    seen.sort_unstable();
    seen.dedup();
    let elements = fb.size(x2);
    let bijective = seen.len() == image.len() && image.len() == elements;
    if fams.len() > limits.max_hom {
        return Err(Error::Budget { what: "Yoneda transformations".into(), limit: limits.max_hom });
    }
    Ok(YonedaWitness { transformations: fams.len(), elements, image, bijective })
}
