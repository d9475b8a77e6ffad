//! Bigraded categories: left `V`-grades and right `W`-grades at once,
//! presented as graded over `V × W^rev`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{structural, Error, Result};
use crate::fincat::{nat_transformations_bounded, FinPresheaf, MorIx, NatTrans, ObjIx, NONE};
use crate::graded::{change_base, ElemIx, GradedCat, GradedFunctor, Limits};
use crate::monoidal::{o, product, reverse, terminal, Expr, FinMonCat, OpmonFunctor};
use crate::par;

#[derive(Debug, Clone)]
pub struct BigradedCat {
    pub left: Arc<FinMonCat>,
    pub right: Arc<FinMonCat>,
    pub right_rev: Arc<FinMonCat>,
    pub prod: Arc<FinMonCat>,
    pub cat: Arc<GradedCat>,
    /// Grades `(X, I)`, over `V`.
    pub left_view: Arc<GradedCat>,
    /// Grades `(I, X′)`, over `W^rev`.
    pub right_view: Arc<GradedCat>,
    left_up: Vec<ElemIx>,
    right_up: Vec<ElemIx>,
    left_down: Vec<ElemIx>,
    right_down: Vec<ElemIx>,
}

impl BigradedCat {
    /// `cat` must be graded over `product(left, reverse(right))`.
    pub fn new(left: Arc<FinMonCat>, right: Arc<FinMonCat>, cat: Arc<GradedCat>) -> Result<BigradedCat> {
        let right_rev = Arc::new(reverse(&right));
        let prod = Arc::new(product(&left, &right_rev));
        if **cat.base() != *prod {
            return Err(structural("bigraded category must be graded over V × W^rev"));
        }
        let prod = cat.base().clone();
        let ul = OpmonFunctor::left_inclusion(left.clone(), &right_rev, prod.clone());
        let ur = OpmonFunctor::right_inclusion(&left, right_rev.clone(), prod.clone());
        let left_view = Arc::new(change_base(&ul, &cat)?);
        let right_view = Arc::new(change_base(&ur, &cat)?);
        let up = |view: &GradedCat| -> Vec<ElemIx> {
            (0..view.n_elem()).map(|e| cat.elem_ix(view.name(e)).expect("view element in parent")).collect()
        };
        let (left_up, right_up) = (up(&left_view), up(&right_view));
        let down = |ups: &[ElemIx]| {
            let mut d = vec![NONE; cat.n_elem()];
            for (i, &p) in ups.iter().enumerate() {
                d[p] = i;
            }
            d
        };
        let (left_down, right_down) = (down(&left_up), down(&right_up));
        Ok(BigradedCat { left, right, right_rev, prod, cat, left_view, right_view, left_up, right_up, left_down, right_down })
    }

    /// Grade `(x, x′)` of the product base.
    pub fn grade(&self, x: ObjIx, x2: ObjIx) -> ObjIx {
        x * self.right.n_obj() + x2
    }
    pub fn split_grade(&self, g: ObjIx) -> (ObjIx, ObjIx) {
        (g / self.right.n_obj(), g % self.right.n_obj())
    }
    /// Morphism `(α, β)` of the product base.
    pub fn mor(&self, a: MorIx, b: MorIx) -> MorIx {
        a * self.right.n_mor() + b
    }

    pub fn left_to_parent(&self, e: ElemIx) -> ElemIx {
        self.left_up[e]
    }
    pub fn right_to_parent(&self, e: ElemIx) -> ElemIx {
        self.right_up[e]
    }
    pub fn parent_to_left(&self, e: ElemIx) -> Option<ElemIx> {
        (self.left_down[e] != NONE).then(|| self.left_down[e])
    }
    pub fn parent_to_right(&self, e: ElemIx) -> Option<ElemIx> {
        (self.right_down[e] != NONE).then(|| self.right_down[e])
    }

    /// Left grade `X` of a parent element at grade `(X, I)`.
    fn left_grade(&self, e: ElemIx) -> Option<ObjIx> {
        let (x, x2) = self.split_grade(self.cat.grade(e));
        (x2 == self.right.unit()).then_some(x)
    }
    fn right_grade(&self, e: ElemIx) -> Option<ObjIx> {
        let (x, x2) = self.split_grade(self.cat.grade(e));
        (x == self.left.unit()).then_some(x2)
    }

    /// The left view, i.e. graded over `V` alone.
    pub fn left_elems(&self) -> &[ElemIx] {
        &self.left_up
    }
    pub fn right_elems(&self) -> &[ElemIx] {
        &self.right_up
    }
}

/// A bigraded square `(f, g, φ, φ′)` with its diagonal; all entries are
/// parent elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Square {
    pub f: ElemIx,
    pub g: ElemIx,
    pub phi: ElemIx,
    pub phi2: ElemIx,
    pub diag: ElemIx,
}

impl Square {
    pub fn boundary(&self) -> [ElemIx; 4] {
        [self.f, self.g, self.phi, self.phi2]
    }
}

/// Grades `(X, X′)` of a well-shaped quadruple.
fn square_shape(c: &BigradedCat, q: [ElemIx; 4]) -> Result<(ObjIx, ObjIx)> {
    let [f, g, phi, phi2] = q;
    let p = &c.cat;
    let bad = |what: &str| {
        Err(structural(format!(
            "not a square boundary ({}): ({}, {}, {}, {})",
            what,
            p.name(f),
            p.name(g),
            p.name(phi),
            p.name(phi2)
        )))
    };
    let (Some(x), Some(xg)) = (c.left_grade(f), c.left_grade(g)) else { return bad("vertical grades") };
    let (Some(x2), Some(x2b)) = (c.right_grade(phi), c.right_grade(phi2)) else { return bad("horizontal grades") };
    if x != xg || x2 != x2b {
        return bad("grades differ");
    }
    let ok = p.src(f) == p.src(phi) && p.tgt(f) == p.src(phi2) && p.src(g) == p.tgt(phi) && p.tgt(g) == p.tgt(phi2);
    if !ok {
        return bad("endpoints");
    }
    Ok((x, x2))
}

/// The defining equation `(r⁻¹, r⁻¹)*(g∘φ) = (ℓ⁻¹, ℓ⁻¹)*(φ′∘f)`; returns the
/// square with its diagonal when it holds.
pub fn is_square(c: &BigradedCat, f: ElemIx, g: ElemIx, phi: ElemIx, phi2: ElemIx) -> Result<Option<Square>> {
    let (x, x2) = square_shape(c, [f, g, phi, phi2])?;
    let (v, w, p) = (&c.left, &c.right, &c.cat);
    let lhs = p.reindex_opt(p.comp(g, phi), c.mor(v.inv(v.r(x)), w.inv(w.r(x2))));
    let rhs = p.reindex_opt(p.comp(phi2, f), c.mor(v.inv(v.l(x)), w.inv(w.l(x2))));
    Ok(match (lhs, rhs) {
        (Some(a), Some(b)) if a == b => Some(Square { f, g, phi, phi2, diag: a }),
        _ => None,
    })
}

/// The same predicate for a category graded over a plain product `V × U`:
/// `(r⁻¹, ℓ^U⁻¹)*(g∘φ) = (ℓ⁻¹, r^U⁻¹)*(φ′∘f)`. With `U = W^rev` it agrees
/// with [`is_square`].
pub fn is_square_product(
    p: &GradedCat,
    v: &FinMonCat,
    u: &FinMonCat,
    q: [ElemIx; 4],
) -> Option<ElemIx> {
    let [f, g, phi, phi2] = q;
    let nu = u.n_obj();
    let (x, _) = (p.grade(f) / nu, p.grade(f) % nu);
    let x2 = p.grade(phi) % nu;
    let m = |a: MorIx, b: MorIx| a * u.n_mor() + b;
    let lhs = p.reindex_opt(p.comp(g, phi), m(v.inv(v.r(x)), u.inv(u.l(x2))));
    let rhs = p.reindex_opt(p.comp(phi2, f), m(v.inv(v.l(x)), u.inv(u.r(x2))));
    (lhs.is_some() && lhs == rhs).then(|| lhs.unwrap())
}

/// Reindex a square along `α: Y → X` in `V` and `β: Y′ → X′` in `W`.
pub fn reindex_square(c: &BigradedCat, s: &Square, alpha: MorIx, beta: MorIx) -> Result<Square> {
    let (v, w, p) = (&c.left, &c.right, &c.cat);
    let (x, x2) = square_shape(c, s.boundary())?;
    if v.cat().tgt(alpha) != x || w.cat().tgt(beta) != x2 {
        return Err(Error::Reindex("square grades do not match the reindexing morphisms".into()));
    }
    let al = c.mor(alpha, w.id(w.unit()));
    let be = c.mor(v.id(v.unit()), beta);
    let r = |e: ElemIx, m: MorIx| p.reindex(e, m).expect("applicable");
    is_square(c, r(s.f, al), r(s.g, al), r(s.phi, be), r(s.phi2, be))?
        .ok_or_else(|| structural("reindexed quadruple is not a square"))
}

fn compose_in_view(view: &GradedCat, up: &[ElemIx], down: &[ElemIx], g: ElemIx, f: ElemIx) -> Result<ElemIx> {
    let (vg, vf) = (down[g], down[f]);
    if vg == NONE || vf == NONE {
        return Err(structural("element is not in the expected one-sided view"));
    }
    Ok(up[view.compose_graded(vg, vf)?])
}

/// Composite in the left view (grades `(X, I)`), as a parent element.
pub fn compose_left(c: &BigradedCat, g: ElemIx, f: ElemIx) -> Result<ElemIx> {
    compose_in_view(&c.left_view, &c.left_up, &c.left_down, g, f)
}

/// Composite in the right view (grades `(I, X′)`), as a parent element.
pub fn compose_right(c: &BigradedCat, g: ElemIx, f: ElemIx) -> Result<ElemIx> {
    compose_in_view(&c.right_view, &c.right_up, &c.right_down, g, f)
}

fn check_pasted(c: &BigradedCat, q: [ElemIx; 4]) -> Result<Square> {
    is_square(c, q[0], q[1], q[2], q[3])?.ok_or_else(|| structural("pasted quadruple is not a square"))
}

/// `t ∘ s` for `s = (f, g, φ, φ′)` and `t = (g, h, ψ, ψ′)`.
pub fn paste_horizontal(c: &BigradedCat, s: &Square, t: &Square) -> Result<Square> {
    if s.g != t.f {
        return Err(structural("horizontal pasting needs a shared vertical edge"));
    }
    let top = compose_right(c, t.phi, s.phi)?;
    let bottom = compose_right(c, t.phi2, s.phi2)?;
    check_pasted(c, [s.f, t.g, top, bottom])
}

/// `s′ * s` for `s = (f, g, φ, φ′)` and `s′ = (f′, g′, φ′, φ″)`.
pub fn paste_vertical(c: &BigradedCat, s: &Square, s2: &Square) -> Result<Square> {
    if s.phi2 != s2.phi {
        return Err(structural("vertical pasting needs a shared horizontal edge"));
    }
    let left = compose_left(c, s2.f, s.f)?;
    let right = compose_left(c, s2.g, s.g)?;
    check_pasted(c, [left, right, s.phi, s2.phi2])
}

/// The outer square of a 2×2 grid `s, t` (top row) over `s′, t′` (bottom
/// row). Its diagonal is `Δ(t′) ∘ Δ(s)`.
pub fn paste_both(c: &BigradedCat, s: &Square, t: &Square, s2: &Square, t2: &Square) -> Result<Square> {
    if s.g != t.f || s2.g != t2.f || s.phi2 != s2.phi || t.phi2 != t2.phi {
        return Err(structural("grid boundaries do not match"));
    }
    let left = compose_left(c, s2.f, s.f)?;
    let right = compose_left(c, t2.g, t.g)?;
    let top = compose_right(c, t.phi, s.phi)?;
    let bottom = compose_right(c, t2.phi2, s2.phi2)?;
    check_pasted(c, [left, right, top, bottom])
}

/// Image of a square under a functor between the parent categories.
pub fn map_square(dom: &BigradedCat, cod: &BigradedCat, f: &GradedFunctor, s: &Square) -> Result<Square> {
    let _ = square_shape(dom, s.boundary())?;
    let m = |e: ElemIx| f.mor[e];
    is_square(cod, m(s.f), m(s.g), m(s.phi), m(s.phi2))?.ok_or_else(|| structural("image quadruple is not a square"))
}

/// `C*`: the `W^rev`-`V^rev`-bigraded category with the two grade sides swapped.
pub fn swap(c: &BigradedCat) -> Result<BigradedCat> {
    let (v, wr) = (&c.left, &c.right_rev);
    let wv = Arc::new(product(wr, v));
    let f = OpmonFunctor::swap(wv, c.prod.clone(), v, wr);
    let cat = change_base(&f, &c.cat)?;
    BigradedCat::new(wr.clone(), Arc::new(reverse(v)), Arc::new(cat))
}

/// The element of `C*` corresponding to a parent element of `C`.
pub fn swap_elem(c: &BigradedCat, cs: &BigradedCat, e: ElemIx) -> ElemIx {
    cs.cat.elem_ix(c.cat.name(e)).expect("swap keeps names")
}

/// A left `V`-graded category as a `V`-`1`-bigraded category.
pub fn from_left(c: &GradedCat) -> Result<BigradedCat> {
    let one = Arc::new(terminal());
    let prod = Arc::new(product(c.base(), &reverse(&one)));
    let cat = GradedCat::build(
        prod,
        c.objects().to_vec(),
        |x, a, b| Ok(c.hom(x, a, b).iter().map(|&e| (e, c.name(e).to_string())).collect()),
        |&e, al| c.reindex(e, al),
        |&g, &f| c.comp(g, f),
        |a| Some(c.ident(a)),
    )?;
    BigradedCat::new(c.base().clone(), one, Arc::new(cat))
}

/// A category graded over `W^rev` (right `W`-graded) as a `1`-`W`-bigraded category.
pub fn from_right(c: &GradedCat) -> Result<BigradedCat> {
    let one = Arc::new(terminal());
    let w = Arc::new(reverse(c.base()));
    let prod = Arc::new(product(&one, c.base()));
    let cat = GradedCat::build(
        prod,
        c.objects().to_vec(),
        |x, a, b| Ok(c.hom(x, a, b).iter().map(|&e| (e, c.name(e).to_string())).collect()),
        |&e, al| c.reindex(e, al),
        |&g, &f| c.comp(g, f),
        |a| Some(c.ident(a)),
    )?;
    BigradedCat::new(one, w, Arc::new(cat))
}

/// A finite family of presheaves on `V`, the objects of a fragment of `V̂`.
#[derive(Debug, Clone)]
pub struct PresheafObjects {
    pub base: Arc<FinMonCat>,
    pub names: Vec<String>,
    pub presheaves: Vec<FinPresheaf>,
    /// Grades `(X, Y)` whose reindexed forms `P((X⊗−)⊗Y)` must occur in the list.
    pub closure_grades: Option<Vec<(ObjIx, ObjIx)>>,
}

/// `P((X⊗−)⊗Y)`.
pub fn shifted(v: &FinMonCat, p: &FinPresheaf, x: ObjIx, y: ObjIx) -> FinPresheaf {
    p.precompose(|z| v.t(v.t(x, z), y), |a| v.tm(v.tm(v.id(x), a), v.id(y)))
}

impl PresheafObjects {
    pub fn new(base: Arc<FinMonCat>, named: Vec<(String, FinPresheaf)>) -> Result<Self> {
        let (names, presheaves): (Vec<_>, Vec<_>) = named.into_iter().unzip();
        for p in &presheaves {
            if **p.base() != **base.cat() {
                return Err(structural("presheaf over a different base"));
            }
        }
        Ok(PresheafObjects { base, names, presheaves, closure_grades: None })
    }

    pub fn validate_closure(&self) -> Result<()> {
        let Some(grades) = &self.closure_grades else { return Ok(()) };
        for &(x, y) in grades {
            for (name, p) in self.names.iter().zip(&self.presheaves) {
                let s = shifted(&self.base, p, x, y);
                if !self.presheaves.contains(&s) {
                    let cat = self.base.cat();
                    return Err(structural(format!(
                        "presheaf family not closed: missing {name}(({}⊗−)⊗{})",
                        cat.obj_name(x),
                        cat.obj_name(y)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Lazily evaluated graded hom-sets of `V̂` restricted to a presheaf family.
pub struct PresheafHat {
    pub objs: PresheafObjects,
    limits: Limits,
    memo: Mutex<HashMap<(ObjIx, ObjIx, usize, usize), Arc<Vec<NatTrans>>>>,
}

impl PresheafHat {
    pub fn new(objs: PresheafObjects, limits: Limits) -> Result<Self> {
        objs.validate_closure()?;
        Ok(PresheafHat { objs, limits, memo: Mutex::new(HashMap::new()) })
    }

    /// `hom((X, Y), P, Q) = Nat(P, Q((X⊗−)⊗Y))`, memoized.
    pub fn hom(&self, x: ObjIx, y: ObjIx, p: usize, q: usize) -> Result<Arc<Vec<NatTrans>>> {
        if let Some(h) = self.memo.lock().unwrap().get(&(x, y, p, q)) {
            return Ok(h.clone());
        }
        let v = &self.objs.base;
        let target = shifted(v, &self.objs.presheaves[q], x, y);
        let h = Arc::new(nat_transformations_bounded(&self.objs.presheaves[p], &target, self.limits.max_hom)?);
        self.memo.lock().unwrap().insert((x, y, p, q), h.clone());
        Ok(h)
    }

    /// `κ_Z: ((X′⊗X)⊗Z)⊗(Y⊗Y′) → (X′⊗((X⊗Z)⊗Y))⊗Y′`.
    fn kappa(&self, x2: ObjIx, x: ObjIx, z: ObjIx, y: ObjIx, y2: ObjIx) -> MorIx {
        let from = Expr::t(Expr::t(Expr::t(o(x2), o(x)), o(z)), Expr::t(o(y), o(y2)));
        let to = Expr::t(Expr::t(o(x2), Expr::t(Expr::t(o(x), o(z)), o(y))), o(y2));
        self.objs.base.canonical(&from, &to)
    }

    /// `ψ ∘ φ` for `φ: (X, Y)' P → Q` and `ψ: (X′, Y′)' Q → R`.
    pub fn compose(&self, (x2, y2, r): (ObjIx, ObjIx, usize), psi: &NatTrans, (x, y): (ObjIx, ObjIx), phi: &NatTrans) -> NatTrans {
        let v = &self.objs.base;
        let rr = &self.objs.presheaves[r];
        (0..v.n_obj())
            .map(|z| {
                let w = v.t(v.t(x, z), y);
                let k = self.kappa(x2, x, z, y, y2);
                phi[z].iter().map(|&e| rr.at(k, psi[w][e])).collect()
            })
            .collect()
    }

    /// `(α, β)*(φ)` for `α: X₂ → X`, `β: Y₂ → Y`.
    pub fn reindex(&self, q: usize, (alpha, beta): (MorIx, MorIx), phi: &NatTrans) -> NatTrans {
        let v = &self.objs.base;
        let qq = &self.objs.presheaves[q];
        let cat = v.cat();
        (0..v.n_obj())
            .map(|z| {
                let m = v.tm(v.tm(alpha, v.id(z)), beta);
                debug_assert_eq!(cat.tgt(m), v.t(v.t(cat.tgt(alpha), z), cat.tgt(beta)));
                phi[z].iter().map(|&e| qq.at(m, e)).collect()
            })
            .collect()
    }

    /// `i_P`: `P(ℓ_Z · r_{I⊗Z})` at each `Z`.
    pub fn identity(&self, p: usize) -> NatTrans {
        let v = &self.objs.base;
        let pp = &self.objs.presheaves[p];
        let i = v.unit();
        (0..v.n_obj())
            .map(|z| {
                let m = v.cat().comp(v.l(z), v.r(v.t(i, z))).expect("composable");
                (0..pp.size(z)).map(|e| pp.at(m, e)).collect()
            })
            .collect()
    }

    /// Materialize as a `V`-`V`-bigraded category.
    pub fn materialize(&self) -> Result<BigradedCat> {
        let v = self.objs.base.clone();
        let n = v.n_obj();
        let np = self.objs.presheaves.len();
        let all = par::map_range(n * n * np * np, |k| {
            let (g, pq) = (k / (np * np), k % (np * np));
            self.hom(g / n, g % n, pq / np, pq % np)
        });
        for h in &all {
            if let Err(e) = h {
                return Err(e.clone());
            }
        }
        let vr = Arc::new(reverse(&v));
        let prod = Arc::new(product(&v, &vr));
        let cat = v.cat();
        let names = &self.objs.names;
        let vcat = v.cat().clone();
        let built = GradedCat::build(
            prod.clone(),
            names.clone(),
            |g, p, q| {
                let (x, y) = (g / n, g % n);
                let h = self.hom(x, y, p, q)?;
                Ok(h.iter()
                    .map(|t| {
                        let name = format!("{}=>{}@({},{}){}", names[p], names[q], cat.obj_name(x), cat.obj_name(y), render(t));
                        ((x, y, p, q, t.clone()), name)
                    })
                    .collect())
            },
            |(_, _, p, q, t), m| {
                let (a, b) = (m / vcat.n_mor(), m % vcat.n_mor());
                Some((vcat.src(a), vcat.src(b), *p, *q, self.reindex(*q, (a, b), t)))
            },
            |(x2, y2, _, r, psi), (x, y, p, _, phi)| {
                Some((v.t(*x2, *x), v.t(*y, *y2), *p, *r, self.compose((*x2, *y2, *r), psi, (*x, *y), phi)))
            },
            |p| Some((v.unit(), v.unit(), p, p, self.identity(p))),
        )?;
        BigradedCat::new(v.clone(), v, Arc::new(built))
    }
}

pub(crate) fn render(t: &NatTrans) -> String {
    let parts: Vec<String> = t.iter().map(|c| c.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")).collect();
    format!("[{}]", parts.join(";"))
}

/// The commuting rectangle for a quadruple of transformations in `V̂`,
/// evaluated pointwise: `g(φ(e))` and `φ′(f(e))`, both pulled back to
/// `Q′((X⊗Z)⊗X′)`.
pub fn presheaf_square_direct(
    hat: &PresheafHat,
    (x, x2): (ObjIx, ObjIx),
    q2: usize,
    (f, g, phi, phi2): (&NatTrans, &NatTrans, &NatTrans, &NatTrans),
) -> bool {
    let v = &hat.objs.base;
    let i = v.unit();
    let qq = &hat.objs.presheaves[q2];
    (0..v.n_obj()).all(|z| {
        // φ lands in Q((I⊗Z)⊗X′), then g in Q′((X⊗((I⊗Z)⊗X′))⊗I)
        let w1 = v.t(v.t(i, z), x2);
        let to1 = v.canonical(
            &Expr::t(Expr::t(o(x), o(z)), o(x2)),
            &Expr::t(Expr::t(o(x), Expr::t(Expr::t(Expr::Unit, o(z)), o(x2))), Expr::Unit),
        );
        // f lands in P′((X⊗Z)⊗I), then φ′ in Q′((I⊗((X⊗Z)⊗I))⊗X′)
        let w2 = v.t(v.t(x, z), i);
        let to2 = v.canonical(
            &Expr::t(Expr::t(o(x), o(z)), o(x2)),
            &Expr::t(Expr::t(Expr::Unit, Expr::t(Expr::t(o(x), o(z)), Expr::Unit)), o(x2)),
        );
        (0..phi[z].len()).all(|e| qq.at(to1, g[w1][phi[z][e]]) == qq.at(to2, phi2[w2][f[z][e]]))
    })
}
