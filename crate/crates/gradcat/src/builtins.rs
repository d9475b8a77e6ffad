//! Constructors for the standard families of graded categories, and the
//! named built-in bases used by the CLI and the test matrix.

use std::sync::Arc;

use crate::error::{structural, Result};
use crate::fincat::{FinCat, MorIx, ObjIx, NONE};
use crate::graded::{ElemIx, GradedCat, GradedTables};
use crate::monoidal::{self, reverse, FinMonCat, FiniteMonoid};

/// A left action `X.A` of a monoidal base on a finite category, with
/// `χ_{YXA}: (Y⊗X).A → Y.(X.A)` and `ι_A: I.A → A`.
#[derive(Debug, Clone)]
pub struct VAction {
    pub base: Arc<FinMonCat>,
    pub cat: Arc<FinCat>,
    /// `x * |ob D| + a`
    pub act_obj: Vec<ObjIx>,
    /// `α * |mor D| + f`
    pub act_mor: Vec<MorIx>,
    /// `(y * |ob V| + x) * |ob D| + a`
    pub chi: Vec<MorIx>,
    pub iota: Vec<MorIx>,
}

impl VAction {
    pub fn on(&self, x: ObjIx, a: ObjIx) -> ObjIx {
        self.act_obj[x * self.cat.n_obj() + a]
    }
    pub fn on_mor(&self, alpha: MorIx, f: MorIx) -> MorIx {
        self.act_mor[alpha * self.cat.n_mor() + f]
    }
    pub fn chi(&self, y: ObjIx, x: ObjIx, a: ObjIx) -> MorIx {
        self.chi[(y * self.base.n_obj() + x) * self.cat.n_obj() + a]
    }

    /// The base acting on itself by `⊗`.
    pub fn regular(v: Arc<FinMonCat>) -> VAction {
        let (n, m) = (v.n_obj(), v.n_mor());
        VAction {
            cat: v.cat().clone(),
            act_obj: (0..n * n).map(|k| v.t(k / n, k % n)).collect(),
            act_mor: (0..m * m).map(|k| v.tm(k / m, k % m)).collect(),
            chi: (0..n * n * n).map(|k| v.a(k / (n * n), (k / n) % n, k % n)).collect(),
            iota: (0..n).map(|a| v.l(a)).collect(),
            base: v,
        }
    }

    /// Structural validation: functoriality, naturality, invertibility and
    /// the pentagon and unit axioms of a strong action.
    pub fn validate(&self) -> Result<()> {
        let (v, d) = (&*self.base, &*self.cat);
        let (nv, nd, mv, md) = (v.n_obj(), d.n_obj(), v.n_mor(), d.n_mor());
        let sized = self.act_obj.len() == nv * nd
            && self.act_mor.len() == mv * md
            && self.chi.len() == nv * nv * nd
            && self.iota.len() == nd;
        if !sized || self.act_obj.iter().any(|&o| o >= nd) || self.act_mor.iter().chain(&self.chi).chain(&self.iota).any(|&f| f >= md) {
            return Err(structural("action tables not total or out of range"));
        }
        let fail = |what: &str| Err(structural(format!("action is not strong monoidal: {what}")));
        for al in 0..mv {
            for f in 0..md {
                let h = self.on_mor(al, f);
                if d.src(h) != self.on(v.cat().src(al), d.src(f)) || d.tgt(h) != self.on(v.cat().tgt(al), d.tgt(f)) {
                    return fail("action on morphisms is ill-shaped");
                }
            }
        }
        for x in 0..nv {
            for a in 0..nd {
                if self.on_mor(v.id(x), d.id(a)) != d.id(self.on(x, a)) {
                    return fail("action does not preserve identities");
                }
            }
        }
        for al in 0..mv {
            for al2 in (0..mv).filter(|&b| v.cat().src(b) == v.cat().tgt(al)) {
                let aa = v.cat().comp(al2, al).unwrap();
                for f in 0..md {
                    for f2 in (0..md).filter(|&g| d.src(g) == d.tgt(f)) {
                        let lhs = self.on_mor(aa, d.comp(f2, f).unwrap());
                        if d.comp(self.on_mor(al2, f2), self.on_mor(al, f)) != Some(lhs) {
                            return fail("action does not preserve composition");
                        }
                    }
                }
            }
        }
        for a in 0..nd {
            let i = self.iota[a];
            if d.src(i) != self.on(v.unit(), a) || d.tgt(i) != a || d.inv(i).is_none() {
                return fail("unit component ill-shaped or not invertible");
            }
            for y in 0..nv {
                for x in 0..nv {
                    let c = self.chi(y, x, a);
                    if d.src(c) != self.on(v.t(y, x), a) || d.tgt(c) != self.on(y, self.on(x, a)) || d.inv(c).is_none() {
                        return fail("associativity component ill-shaped or not invertible");
                    }
                }
            }
        }
        for f in 0..md {
            let (a, a2) = (d.src(f), d.tgt(f));
            if d.comp(f, self.iota[a]) != d.comp(self.iota[a2], self.on_mor(v.id(v.unit()), f)) {
                return fail("unit component not natural");
            }
            for b in 0..mv {
                for al in 0..mv {
                    let (y, y2, x, x2) = (v.cat().src(b), v.cat().tgt(b), v.cat().src(al), v.cat().tgt(al));
                    let lhs = d.comp(self.chi(y2, x2, a2), self.on_mor(v.tm(b, al), f));
                    let rhs = d.comp(self.on_mor(b, self.on_mor(al, f)), self.chi(y, x, a));
                    if lhs.is_none() || lhs != rhs {
                        return fail("associativity component not natural");
                    }
                }
            }
        }
        for a in 0..nd {
            for x in 0..nv {
                let xa = self.on(x, a);
                let l = d.comp(self.iota[xa], self.chi(v.unit(), x, a));
                if l != Some(self.on_mor(v.l(x), d.id(a))) {
                    return fail("left unit axiom");
                }
                let r = d.comp(self.on_mor(v.id(x), self.iota[a]), self.chi(x, v.unit(), a));
                if r != Some(self.on_mor(v.r(x), d.id(a))) {
                    return fail("right unit axiom");
                }
                for y in 0..nv {
                    for z in 0..nv {
                        let lhs = d.comp(self.chi(z, y, xa), self.chi(v.t(z, y), x, a));
                        let rhs = d.then(&[
                            self.on_mor(v.a(z, y, x), d.id(a)),
                            self.chi(z, v.t(y, x), a),
                            self.on_mor(v.id(z), self.chi(y, x, a)),
                        ]);
                        if lhs.is_none() || lhs != rhs {
                            return fail("associativity axiom");
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// `hom(X, A, B) = D(X.A, B)`.
pub fn actegory(act: &VAction) -> Result<GradedCat> {
    act.validate()?;
    let (v, d) = (&act.base, &act.cat);
    GradedCat::build(
        v.clone(),
        d.objects().to_vec(),
        |x, a, b| {
            Ok(d.hom(act.on(x, a), b)
                .iter()
                .map(|&h| {
                    let name = format!("{}:{}:{}->{}", d.mor_name(h), v.cat().obj_name(x), d.obj_name(a), d.obj_name(b));
                    ((x, a, h), name)
                })
                .collect())
        },
        |&(_, a, h), al| Some((v.cat().src(al), a, d.comp(h, act.on_mor(al, d.id(a)))?)),
        |&(y, b, g), &(x, a, f)| {
            let _ = b;
            let step = d.then(&[act.chi(y, x, a), act.on_mor(v.id(y), f), g])?;
            Some((v.t(y, x), a, step))
        },
        |a| Some((v.unit(), a, act.iota[a])),
    )
}

/// The base as a left graded category over itself: `hom(X, A, B) = V(X⊗A, B)`.
pub fn self_left(v: Arc<FinMonCat>) -> GradedCat {
    actegory(&VAction::regular(v)).expect("regular action is strong")
}

/// The base as a right graded category, presented as left graded over `V^rev`.
pub fn self_right(v: &FinMonCat) -> GradedCat {
    self_left(Arc::new(reverse(v)))
}

/// A finite category enriched in the base. Missing hom-objects stand for
/// empty hom-sets.
#[derive(Debug, Clone)]
pub struct FinVCat {
    pub base: Arc<FinMonCat>,
    pub objects: Vec<String>,
    /// `a * n + b ↦ C(a, b)`
    pub hom: Vec<Option<ObjIx>>,
    /// `(a * n + b) * n + c ↦ m: C(b,c) ⊗ C(a,b) → C(a,c)`, or `NONE`
    pub comp: Vec<MorIx>,
    pub unit: Vec<MorIx>,
}

impl FinVCat {
    pub fn h(&self, a: usize, b: usize) -> Option<ObjIx> {
        self.hom[a * self.objects.len() + b]
    }
    pub fn m(&self, a: usize, b: usize, c: usize) -> MorIx {
        let n = self.objects.len();
        self.comp[(a * n + b) * n + c]
    }

    pub fn validate(&self) -> Result<()> {
        let v = &*self.base;
        let d = v.cat();
        let n = self.objects.len();
        if self.hom.len() != n * n || self.comp.len() != n * n * n || self.unit.len() != n {
            return Err(structural("enriched category tables have the wrong size"));
        }
        let fail = |what: String| Err(structural(format!("enriched category: {what}")));
        for a in 0..n {
            let ok = self.h(a, a).is_some_and(|caa| {
                let j = self.unit[a];
                j < d.n_mor() && d.src(j) == v.unit() && d.tgt(j) == caa
            });
            if !ok {
                return fail(format!("bad unit at '{}'", self.objects[a]));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let m = self.m(a, b, c);
                    match (self.h(a, b), self.h(b, c)) {
                        (Some(ab), Some(bc)) => {
                            let ok = self.h(a, c).is_some_and(|ac| m < d.n_mor() && d.src(m) == v.t(bc, ab) && d.tgt(m) == ac);
                            if !ok {
                                return fail(format!("bad composition at ({a},{b},{c})"));
                            }
                        }
                        _ if m != NONE => return fail(format!("composition given for empty hom at ({a},{b},{c})")),
                        _ => {}
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let Some(ab) = self.h(a, b) else { continue };
                let l = d.comp(self.m(a, b, b), v.tm(self.unit[b], d.id(ab)));
                let r = d.comp(self.m(a, a, b), v.tm(d.id(ab), self.unit[a]));
                if l != Some(v.l(ab)) || r != Some(v.r(ab)) {
                    return fail(format!("unit law fails at ({a},{b})"));
                }
                for c in 0..n {
                    let Some(bc) = self.h(b, c) else { continue };
                    for e in 0..n {
                        let Some(ce) = self.h(c, e) else { continue };
                        let lhs = d.comp(self.m(a, b, e), v.tm(self.m(b, c, e), d.id(ab)));
                        let rhs = d.then(&[v.a(ce, bc, ab), v.tm(d.id(ce), self.m(a, b, c)), self.m(a, c, e)]);
                        if lhs.is_none() || lhs != rhs {
                            return fail(format!("associativity fails at ({a},{b},{c},{e})"));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// `hom(X, A, B) = V(X, C(A, B))`.
pub fn enriched(vc: &FinVCat) -> Result<GradedCat> {
    vc.validate()?;
    let v = &vc.base;
    let d = v.cat();
    let obj = &vc.objects;
    GradedCat::build(
        v.clone(),
        obj.clone(),
        |x, a, b| {
            Ok(match vc.h(a, b) {
                None => Vec::new(),
                Some(ab) => d
                    .hom(x, ab)
                    .iter()
                    .map(|&h| ((a, b, h), format!("{}:{}:{}->{}", d.mor_name(h), d.obj_name(x), obj[a], obj[b])))
                    .collect(),
            })
        },
        |&(a, b, h), al| Some((a, b, d.comp(h, al)?)),
        |&(b, c, g), &(a, _, f)| Some((a, c, d.comp(vc.m(a, b, c), v.tm(g, f))?)),
        |a| Some((a, a, vc.unit[a])),
    )
}

/// The counits `u_{AB} = 1_{C(A,B)}` of an enriched category, as elements of
/// `enriched(vc)`.
pub fn counits(vc: &FinVCat, c: &GradedCat) -> Vec<ElemIx> {
    let n = vc.objects.len();
    let d = vc.base.cat();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if let Some(ab) = vc.h(a, b) {
                let id = d.id(ab);
                out.extend(c.hom(ab, a, b).iter().copied().find(|&e| c.name(e).starts_with(&format!("{}:", d.mor_name(id)))));
            }
        }
    }
    out
}

/// The walking graded morphism of grade `X`: objects `0, 1`, homs
/// `V(Z, I)` on the diagonal, `V(Z, X)` from 0 to 1, empty from 1 to 0.
pub fn two_object_vcat(v: Arc<FinMonCat>, x: ObjIx) -> FinVCat {
    let i = v.unit();
    let mut comp = vec![NONE; 8];
    comp[0] = v.l(i); // (0,0,0)
    comp[1] = v.r(x); // (0,0,1): X⊗I → X
    comp[3] = v.l(x); // (0,1,1): I⊗X → X
    comp[7] = v.l(i); // (1,1,1)
    FinVCat {
        objects: vec!["0".into(), "1".into()],
        hom: vec![Some(i), Some(x), None, Some(i)],
        comp,
        unit: vec![v.id(i), v.id(i)],
        base: v,
    }
}

pub fn two_object(v: Arc<FinMonCat>, x: ObjIx) -> GradedCat {
    enriched(&two_object_vcat(v, x)).expect("two-object category is enriched")
}

/// The universal graded morphism `u = 1_X ∈ hom(X, 0, 1)` of [`two_object`].
pub fn two_object_u(c: &GradedCat, x: ObjIx) -> ElemIx {
    let d = c.base().cat();
    let name = format!("{}:{}:0->1", d.mor_name(d.id(x)), d.obj_name(x));
    c.elem_ix(&name).expect("u exists")
}

/// A monoid `(R, m, e)` in the base as a one-object graded category.
pub fn monoid(v: Arc<FinMonCat>, r: ObjIx, m: MorIx, e: MorIx) -> Result<GradedCat> {
    enriched(&FinVCat { base: v, objects: vec!["*".into()], hom: vec![Some(r)], comp: vec![m], unit: vec![e] })
}

/// The formal opposite, graded over the reversed base.
pub fn opposite(c: &GradedCat) -> GradedCat {
    let t = c.to_tables();
    let elements = t
        .elements
        .into_iter()
        .map(|mut e| {
            std::mem::swap(&mut e.src, &mut e.tgt);
            e
        })
        .collect();
    let comp = t.comp.into_iter().map(|(g, f, h)| (f, g, h)).collect();
    let op = GradedTables { objects: t.objects, elements, reindex: t.reindex, comp, ident: t.ident };
    GradedCat::from_tables(Arc::new(reverse(c.base())), op).expect("opposite tables are total")
}

/// One object with a single morphism at every grade.
pub fn terminal_graded(v: Arc<FinMonCat>) -> GradedCat {
    let d = v.cat().clone();
    GradedCat::build(
        v.clone(),
        vec!["*".into()],
        |x, _, _| Ok(vec![(x, d.obj_name(x).to_string())]),
        |_, al| Some(d.src(al)),
        |&y, &x| Some(v.t(y, x)),
        |_| Some(v.unit()),
    )
    .expect("terminal graded category")
}

/// An ordinary category as a category graded over the terminal base.
pub fn from_ordinary(c: Arc<FinCat>) -> GradedCat {
    GradedCat::build(
        Arc::new(monoidal::terminal()),
        c.objects().to_vec(),
        |_, a, b| Ok(c.hom(a, b).iter().map(|&f| (f, c.mor_name(f).to_string())).collect()),
        |&f, _| Some(f),
        |&g, &f| c.comp(g, f),
        |a| Some(c.id(a)),
    )
    .expect("ordinary category")
}

/// A finite monoid as a one-object category.
pub fn monoid_cat(g: &FiniteMonoid) -> FinCat {
    FinCat::from_parts(
        vec!["*".into()],
        g.names.iter().map(|s| (s.clone(), 0, 0)).collect(),
        vec![g.unit],
        |a, b| Some(g.op(a, b)),
    )
    .expect("monoid as a category")
}

/// Names of the built-in bases.
pub const BASES: &[&str] = &["terminal", "z2", "z3", "z2xz2", "poset", "bichar-z2", "bichar-z4", "twisted-z2"];

pub fn base(name: &str) -> Option<FinMonCat> {
    Some(match name {
        "terminal" => monoidal::terminal(),
        "z2" => monoidal::discrete(&FiniteMonoid::cyclic(2)),
        "z3" => monoidal::discrete(&FiniteMonoid::cyclic(3)),
        "z2xz2" => monoidal::discrete(&FiniteMonoid::product(&FiniteMonoid::cyclic(2), &FiniteMonoid::cyclic(2))),
        "poset" => monoidal::poset_meet(),
        "bichar-z2" => monoidal::bichar_z2(),
        "bichar-z4" => monoidal::bichar_z4(),
        "twisted-z2" => monoidal::twisted_z2(),
        _ => return None,
    })
}

/// Names of the built-in graded categories.
pub const GRADED: &[&str] = &[
    "self-Z2",
    "self-right-Z2",
    "self-B4",
    "self-right-B4",
    "self-poset",
    "self-twisted",
    "two-object-Z2",
    "two-object-poset",
    "two-object-B4",
    "monoid-Z2",
    "monoid-B4",
    "terminal-Z2",
];

/// A built-in graded category by name.
pub fn graded(name: &str) -> Option<GradedCat> {
    let z2 = || Arc::new(base("z2").unwrap());
    let b4 = || Arc::new(monoidal::bichar_z4());
    Some(match name {
        "self-Z2" => self_left(z2()),
        "self-right-Z2" => self_right(&z2()),
        "self-B4" => self_left(b4()),
        "self-right-B4" => self_right(&b4()),
        "self-poset" => self_left(Arc::new(monoidal::poset_meet())),
        "self-twisted" => self_left(Arc::new(monoidal::twisted_z2())),
        "two-object-Z2" => two_object(z2(), 1),
        "two-object-poset" => two_object(Arc::new(monoidal::poset_meet()), 0),
        "two-object-B4" => two_object(b4(), 1),
        "monoid-Z2" => monoid(z2(), 0, 0, 0).ok()?,
        // R = 0 with multiplication i and unit i⁻¹
        "monoid-B4" => monoid(b4(), 0, 1, 3).ok()?,
        "terminal-Z2" => terminal_graded(z2()),
        _ => return None,
    })
}
