//! Categories graded by a finite monoidal base.
//!
//! A graded category stores, for every grade `X` and objects `A, B`, a finite
//! set of graded morphisms `X'A → B`, together with reindexing along base
//! morphisms, composition (tensoring grades) and identities at grade `I`.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use crate::error::{structural, Error, Result};
use crate::fincat::{opt, FinCat, MorIx, ObjIx, NONE};
use crate::monoidal::{FinMonCat, OpmonFunctor};
use crate::par;
use crate::report::{collect, CheckReport, Tally};

/// Index of a graded morphism inside its category.
pub type ElemIx = usize;

/// A graded morphism `name: grade' src → tgt`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Elem {
    pub name: String,
    pub grade: ObjIx,
    pub src: usize,
    pub tgt: usize,
}

/// Caps on enumerations: number of objects of a constructed category and
/// size of any single graded hom-set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_objects: usize,
    pub max_hom: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_objects: 64, max_hom: 4096 }
    }
}

/// Raw, sparse tables of a graded category.
///
/// Unlike [`GradedCat`] these may be ill-shaped: a composite or reindexing can
/// point at an element of the wrong hom-set. [`check_graded`] reports such
/// entries under the `shape` law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedTables {
    pub objects: Vec<String>,
    pub elements: Vec<Elem>,
    /// `(e, α, α*e)`
    pub reindex: Vec<(ElemIx, MorIx, ElemIx)>,
    /// `(g, f, g∘f)`
    pub comp: Vec<(ElemIx, ElemIx, ElemIx)>,
    pub ident: Vec<ElemIx>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedCat {
    base: Arc<FinMonCat>,
    objects: Vec<String>,
    obj_index: HashMap<String, usize>,
    elems: Vec<Elem>,
    elem_index: HashMap<String, ElemIx>,
    homs: Vec<Vec<ElemIx>>,
    hom_pos: Vec<usize>,
    reindex: Vec<ElemIx>,
    ins: Vec<Vec<ElemIx>>,
    outs: Vec<Vec<ElemIx>>,
    in_pos: Vec<usize>,
    out_pos: Vec<usize>,
    comp: Vec<Vec<ElemIx>>,
    ident: Vec<ElemIx>,
}

impl GradedCat {
    fn skeleton(base: Arc<FinMonCat>, objects: Vec<String>, elems: Vec<Elem>) -> Result<GradedCat> {
        let n = objects.len();
        let nb = base.n_obj();
        let mut obj_index = HashMap::new();
        for (i, o) in objects.iter().enumerate() {
            if obj_index.insert(o.clone(), i).is_some() {
                return Err(structural(format!("duplicate object id '{o}'")));
            }
        }
        let mut elem_index = HashMap::new();
        let mut homs = vec![Vec::new(); nb * n * n];
        let mut hom_pos = Vec::with_capacity(elems.len());
        let mut ins = vec![Vec::new(); n];
        let mut outs = vec![Vec::new(); n];
        let mut in_pos = Vec::with_capacity(elems.len());
        let mut out_pos = Vec::with_capacity(elems.len());
        for (i, e) in elems.iter().enumerate() {
            if e.grade >= nb || e.src >= n || e.tgt >= n {
                return Err(structural(format!("element '{}' has grade or endpoint out of range", e.name)));
            }
            if elem_index.insert(e.name.clone(), i).is_some() {
                return Err(structural(format!("duplicate element id '{}'", e.name)));
            }
            let cell = &mut homs[(e.grade * n + e.src) * n + e.tgt];
            hom_pos.push(cell.len());
            cell.push(i);
            in_pos.push(ins[e.tgt].len());
            ins[e.tgt].push(i);
            out_pos.push(outs[e.src].len());
            outs[e.src].push(i);
        }
        let comp = (0..n).map(|b| vec![NONE; ins[b].len() * outs[b].len()]).collect();
        let m = base.n_mor();
        let reindex = vec![NONE; elems.len() * m];
        Ok(GradedCat {
            base,
            objects,
            obj_index,
            elems,
            elem_index,
            homs,
            hom_pos,
            reindex,
            ins,
            outs,
            in_pos,
            out_pos,
            comp,
            ident: Vec::new(),
        })
    }

    /// Fill every table entry from the given rules. A rule returning `None`
    /// for an applicable argument is a structural error.
    fn fill<R, C>(mut self, reindex: R, comp: C, ident: Vec<Option<ElemIx>>) -> Result<GradedCat>
    where
        R: Fn(ElemIx, MorIx) -> Option<ElemIx> + Sync,
        C: Fn(ElemIx, ElemIx) -> Option<ElemIx> + Sync,
    {
        let cat = self.base.cat().clone();
        let m = cat.n_mor();
        let ne = self.elems.len();
        let grades: Vec<ObjIx> = self.elems.iter().map(|e| e.grade).collect();
        let rows = par::map_range(ne, |e| {
            let mut row = vec![NONE; m];
            for a in cat.into_obj(grades[e]) {
                row[a] = reindex(e, a).ok_or(a)?;
            }
            Ok::<_, MorIx>(row)
        });
        for (e, row) in rows.into_iter().enumerate() {
            match row {
                Ok(row) => self.reindex[e * m..(e + 1) * m].copy_from_slice(&row),
                Err(a) => {
                    return Err(structural(format!(
                        "missing reindexing of '{}' along '{}'",
                        self.elems[e].name,
                        cat.mor_name(a)
                    )))
                }
            }
        }
        let (ins, outs) = (&self.ins, &self.outs);
        let blocks = par::map_range(self.objects.len(), |b| {
            let mut block = Vec::with_capacity(ins[b].len() * outs[b].len());
            for &g in &outs[b] {
                for &f in &ins[b] {
                    block.push(comp(g, f).ok_or((g, f))?);
                }
            }
            Ok::<_, (ElemIx, ElemIx)>(block)
        });
        for (b, block) in blocks.into_iter().enumerate() {
            match block {
                Ok(block) => self.comp[b] = block,
                Err((g, f)) => {
                    return Err(structural(format!(
                        "missing composite of '{}' after '{}'",
                        self.elems[g].name, self.elems[f].name
                    )))
                }
            }
        }
        if ident.len() != self.objects.len() {
            return Err(structural("identity table is not total over objects"));
        }
        self.ident = Vec::with_capacity(ident.len());
        for (a, i) in ident.into_iter().enumerate() {
            match i {
                Some(i) if i < ne => self.ident.push(i),
                _ => return Err(structural(format!("missing identity at '{}'", self.objects[a]))),
            }
        }
        Ok(self)
    }

    pub fn from_tables(base: Arc<FinMonCat>, t: GradedTables) -> Result<GradedCat> {
        let ne = t.elements.len();
        let cat = base.cat().clone();
        let m = cat.n_mor();
        let c = GradedCat::skeleton(base, t.objects, t.elements)?;
        let mut rt = vec![NONE; ne * m];
        for &(e, a, r) in &t.reindex {
            if e >= ne || a >= m || r >= ne {
                return Err(structural(format!("reindex entry ({e},{a},{r}) out of range")));
            }
            if cat.tgt(a) != c.elems[e].grade {
                return Err(structural(format!(
                    "reindex entry for '{}' along '{}' is not applicable",
                    c.elems[e].name,
                    cat.mor_name(a)
                )));
            }
            if std::mem::replace(&mut rt[e * m + a], r) != NONE {
                return Err(structural(format!("duplicate reindex entry for '{}'", c.elems[e].name)));
            }
        }
        let mut ct = HashMap::new();
        for &(g, f, h) in &t.comp {
            if g >= ne || f >= ne || h >= ne {
                return Err(structural(format!("composition entry ({g},{f},{h}) out of range")));
            }
            if c.elems[f].tgt != c.elems[g].src {
                return Err(structural(format!(
                    "composite given for non-composable pair ('{}','{}')",
                    c.elems[g].name, c.elems[f].name
                )));
            }
            if ct.insert((g, f), h).is_some() {
                return Err(structural(format!(
                    "duplicate composition entry ('{}','{}')",
                    c.elems[g].name, c.elems[f].name
                )));
            }
        }
        let ident = t.ident.iter().map(|&i| (i < ne).then_some(i)).collect();
        c.fill(|e, a| opt(rt[e * m + a]), |g, f| ct.get(&(g, f)).copied(), ident)
    }

    /// Canonical sparse tables, sorted by element index then argument.
    pub fn to_tables(&self) -> GradedTables {
        let m = self.base.n_mor();
        let mut reindex = Vec::new();
        for e in 0..self.elems.len() {
            for a in 0..m {
                if let Some(r) = opt(self.reindex[e * m + a]) {
                    reindex.push((e, a, r));
                }
            }
        }
        let mut comp = Vec::new();
        for g in 0..self.elems.len() {
            for &f in &self.ins[self.elems[g].src] {
                comp.push((g, f, self.comp(g, f).expect("composable")));
            }
        }
        GradedTables { objects: self.objects.clone(), elements: self.elems.clone(), reindex, comp, ident: self.ident.clone() }
    }

    /// Assemble a graded category from keyed hom-sets.
    ///
    /// `hom(x, a, b)` lists keys and names of the elements of `hom(x, a, b)`;
    /// the other rules return keys that are looked up in the hom-set where
    /// the result must live.
    pub fn build<K, H, R, C, I>(
        base: Arc<FinMonCat>,
        objects: Vec<String>,
        hom: H,
        reindex: R,
        comp: C,
        ident: I,
    ) -> Result<GradedCat>
    where
        K: Eq + Hash + Send + Sync,
        H: Fn(ObjIx, usize, usize) -> Result<Vec<(K, String)>>,
        R: Fn(&K, MorIx) -> Option<K> + Sync,
        C: Fn(&K, &K) -> Option<K> + Sync,
        I: Fn(usize) -> Option<K>,
    {
        let n = objects.len();
        let nb = base.n_obj();
        let mut elems = Vec::new();
        let mut keys = Vec::new();
        let mut lookup: Vec<HashMap<K, ElemIx>> = Vec::with_capacity(nb * n * n);
        for x in 0..nb {
            for a in 0..n {
                for b in 0..n {
                    let mut map = HashMap::new();
                    for (k, name) in hom(x, a, b)? {
                        map.insert(k, elems.len());
                        elems.push(Elem { name, grade: x, src: a, tgt: b });
                        keys.push(None);
                    }
                    lookup.push(map);
                }
            }
        }
        for map in &lookup {
            for (k, &e) in map {
                keys[e] = Some(k);
            }
        }
        if keys.iter().any(Option::is_none) {
            return Err(structural("duplicate key inside a hom-set"));
        }
        let keys: Vec<&K> = keys.into_iter().map(Option::unwrap).collect();
        let cat = base.cat().clone();
        let find = |x: ObjIx, a: usize, b: usize, k: &K| lookup[(x * n + a) * n + b].get(k).copied();
        let identities = (0..n).map(|a| ident(a).and_then(|k| find(base.unit(), a, a, &k))).collect();
        let c = GradedCat::skeleton(base.clone(), objects, elems)?;
        let el = &c.elems;
        c.clone().fill(
            |e, a| reindex(keys[e], a).and_then(|k| find(cat.src(a), el[e].src, el[e].tgt, &k)),
            |g, f| {
                let x = base.t(el[g].grade, el[f].grade);
                comp(keys[g], keys[f]).and_then(|k| find(x, el[f].src, el[g].tgt, &k))
            },
            identities,
        )
    }

    pub fn base(&self) -> &Arc<FinMonCat> {
        &self.base
    }
    pub fn n_obj(&self) -> usize {
        self.objects.len()
    }
    pub fn n_elem(&self) -> usize {
        self.elems.len()
    }
    pub fn objects(&self) -> &[String] {
        &self.objects
    }
    pub fn obj_name(&self, a: usize) -> &str {
        &self.objects[a]
    }
    pub fn obj_ix(&self, name: &str) -> Option<usize> {
        self.obj_index.get(name).copied()
    }
    pub fn elems(&self) -> &[Elem] {
        &self.elems
    }
    pub fn elem(&self, e: ElemIx) -> &Elem {
        &self.elems[e]
    }
    pub fn name(&self, e: ElemIx) -> &str {
        &self.elems[e].name
    }
    pub fn elem_ix(&self, name: &str) -> Option<ElemIx> {
        self.elem_index.get(name).copied()
    }
    pub fn grade(&self, e: ElemIx) -> ObjIx {
        self.elems[e].grade
    }
    pub fn src(&self, e: ElemIx) -> usize {
        self.elems[e].src
    }
    pub fn tgt(&self, e: ElemIx) -> usize {
        self.elems[e].tgt
    }
    pub fn hom(&self, x: ObjIx, a: usize, b: usize) -> &[ElemIx] {
        let n = self.n_obj();
        &self.homs[(x * n + a) * n + b]
    }
    pub fn hom_pos(&self, e: ElemIx) -> usize {
        self.hom_pos[e]
    }
    /// Largest hom-set size.
    pub fn max_hom(&self) -> usize {
        self.homs.iter().map(Vec::len).max().unwrap_or(0)
    }
    /// Elements with target `b`.
    pub fn ins(&self, b: usize) -> &[ElemIx] {
        &self.ins[b]
    }
    /// Elements with source `a`.
    pub fn outs(&self, a: usize) -> &[ElemIx] {
        &self.outs[a]
    }
    /// `α*(e)`, defined when `tgt α = grade e`.
    pub fn reindex(&self, e: ElemIx, alpha: MorIx) -> Option<ElemIx> {
        opt(self.reindex[e * self.base.n_mor() + alpha])
    }
    /// `g∘f`, defined when `tgt f = src g`.
    pub fn comp(&self, g: ElemIx, f: ElemIx) -> Option<ElemIx> {
        let b = self.elems[f].tgt;
        if self.elems[g].src != b {
            return None;
        }
        opt(self.comp[b][self.out_pos[g] * self.ins[b].len() + self.in_pos[f]])
    }
    pub fn ident(&self, a: usize) -> ElemIx {
        self.ident[a]
    }
    pub fn comp_opt(&self, g: Option<ElemIx>, f: Option<ElemIx>) -> Option<ElemIx> {
        self.comp(g?, f?)
    }
    pub fn reindex_opt(&self, e: Option<ElemIx>, alpha: MorIx) -> Option<ElemIx> {
        self.reindex(e?, alpha)
    }

    pub fn compose_graded(&self, g: ElemIx, f: ElemIx) -> Result<ElemIx> {
        self.comp(g, f).ok_or_else(|| {
            Error::Composition(format!(
                "'{}' cannot follow '{}': target '{}' differs from source '{}'",
                self.name(g),
                self.name(f),
                self.obj_name(self.tgt(f)),
                self.obj_name(self.src(g))
            ))
        })
    }

    pub fn reindex_graded(&self, alpha: MorIx, f: ElemIx) -> Result<ElemIx> {
        self.reindex(f, alpha).ok_or_else(|| {
            let cat = self.base.cat();
            Error::Reindex(format!(
                "'{}' has grade '{}', but '{}' has target '{}'",
                self.name(f),
                cat.obj_name(self.grade(f)),
                cat.mor_name(alpha),
                cat.obj_name(cat.tgt(alpha))
            ))
        })
    }

    /// Same category with every element renamed by `f(index, old name)`.
    pub fn renamed<F: Fn(ElemIx, &str) -> String>(&self, f: F) -> Result<GradedCat> {
        let mut t = self.to_tables();
        for (i, e) in t.elements.iter_mut().enumerate() {
            e.name = f(i, &e.name);
        }
        GradedCat::from_tables(self.base.clone(), t)
    }
}

/// Exhaustive check of the shape constraints and axioms I–IV.
pub fn check_graded(c: &GradedCat) -> CheckReport {
    let v = &**c.base();
    let cat = &**v.cat();
    let ne = c.n_elem();
    let mn = |a: MorIx| cat.mor_name(a).to_string();
    let en = |e: ElemIx| c.name(e).to_string();

    let shape = par::map_range(ne, |e| {
        let mut t = Tally::default();
        let el = c.elem(e);
        for a in cat.into_obj(el.grade) {
            let r = c.elem(c.reindex(e, a).unwrap());
            let ok = r.grade == cat.src(a) && r.src == el.src && r.tgt == el.tgt;
            t.check(ok, "shape", || vec![en(e), mn(a)]);
        }
        for &f in c.ins(el.src) {
            let h = c.elem(c.comp(e, f).unwrap());
            let fe = c.elem(f);
            let ok = h.grade == v.t(el.grade, fe.grade) && h.src == fe.src && h.tgt == el.tgt;
            t.check(ok, "shape", || vec![en(e), en(f)]);
        }
        t
    });
    let mut report = collect(shape);
    let mut idt = Tally::default();
    for a in 0..c.n_obj() {
        let i = c.elem(c.ident(a));
        idt.check(i.grade == v.unit() && i.src == a && i.tgt == a, "shape", || vec![c.obj_name(a).to_string()]);
    }
    report.merge(idt.finish());
    if !report.ok() {
        return report;
    }

    let axioms = par::map_range(ne, |f| {
        let mut t = Tally::default();
        let fe = c.elem(f);
        let x = fe.grade;
        // I
        t.check(c.reindex(f, cat.id(x)) == Some(f), "I", || vec![en(f), mn(cat.id(x))]);
        for b in cat.into_obj(x) {
            let bf = c.reindex(f, b).unwrap();
            for a in cat.into_obj(cat.src(b)) {
                let lhs = c.reindex(bf, a);
                let rhs = c.reindex(f, cat.comp(b, a).unwrap());
                t.check(lhs == rhs, "I", || vec![en(f), mn(b), mn(a)]);
            }
        }
        // IV
        let r = c.reindex(f, v.r(x));
        t.check(c.comp(f, c.ident(fe.src)) == r, "IV", || vec![en(f), "right".into()]);
        let l = c.reindex(f, v.l(x));
        t.check(c.comp(c.ident(fe.tgt), f) == l, "IV", || vec![en(f), "left".into()]);
        for &g in c.outs(fe.tgt) {
            let y = c.grade(g);
            let gf = c.comp(g, f).unwrap();
            // II
            for b in cat.into_obj(y) {
                let bg = c.reindex(g, b).unwrap();
                for a in cat.into_obj(x) {
                    let lhs = c.comp(bg, c.reindex(f, a).unwrap());
                    let rhs = c.reindex(gf, v.tm(b, a));
                    t.check(lhs == rhs, "II", || vec![en(g), en(f), mn(b), mn(a)]);
                }
            }
            // III
            for &h in c.outs(c.tgt(g)) {
                let z = c.grade(h);
                let lhs = c.comp(c.comp(h, g).unwrap(), f);
                let rhs = c.reindex(c.comp(h, gf).unwrap(), v.a(z, y, x));
                t.check(lhs == rhs, "III", || vec![en(h), en(g), en(f)]);
            }
        }
        t
    });
    report.merge(collect(axioms));
    report
}

/// The ordinary category of grade-`I` morphisms.
pub fn underlying_ordinary(c: &GradedCat) -> Result<FinCat> {
    let v = c.base();
    let i = v.unit();
    let mut local = vec![NONE; c.n_elem()];
    let mut morphisms = Vec::new();
    let mut back = Vec::new();
    for (e, el) in c.elems().iter().enumerate().filter(|(_, el)| el.grade == i) {
        local[e] = morphisms.len();
        morphisms.push((el.name.clone(), el.src, el.tgt));
        back.push(e);
    }
    let identity = (0..c.n_obj()).map(|a| local[c.ident(a)]).collect();
    let fix = v.inv(v.l(i));
    FinCat::from_parts(c.objects().to_vec(), morphisms, identity, |g, f| {
        let h = c.reindex(c.comp(back[g], back[f])?, fix)?;
        opt(local[h])
    })
}

/// A graded functor between graded categories over the same base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedFunctor {
    pub dom: Arc<GradedCat>,
    pub cod: Arc<GradedCat>,
    pub obj: Vec<usize>,
    pub mor: Vec<ElemIx>,
}

pub(crate) fn same_base(a: &Arc<FinMonCat>, b: &Arc<FinMonCat>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl GradedFunctor {
    pub fn new(dom: Arc<GradedCat>, cod: Arc<GradedCat>, obj: Vec<usize>, mor: Vec<ElemIx>) -> Result<Self> {
        if !same_base(dom.base(), cod.base()) {
            return Err(structural("graded functor between categories over different bases"));
        }
        if obj.len() != dom.n_obj() || obj.iter().any(|&o| o >= cod.n_obj()) {
            return Err(structural("graded functor object map is not total or out of range"));
        }
        if mor.len() != dom.n_elem() || mor.iter().any(|&e| e >= cod.n_elem()) {
            return Err(structural("graded functor morphism map is not total or out of range"));
        }
        Ok(GradedFunctor { dom, cod, obj, mor })
    }

    pub fn identity(c: Arc<GradedCat>) -> Self {
        let obj = (0..c.n_obj()).collect();
        let mor = (0..c.n_elem()).collect();
        GradedFunctor { dom: c.clone(), cod: c, obj, mor }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GradedFunctor) -> Result<GradedFunctor> {
        if *self.cod != *other.dom {
            return Err(structural("graded functors are not composable"));
        }
        let obj = self.obj.iter().map(|&a| other.obj[a]).collect();
        let mor = self.mor.iter().map(|&e| other.mor[e]).collect();
        Ok(GradedFunctor { dom: self.dom.clone(), cod: other.cod.clone(), obj, mor })
    }
}

pub fn check_graded_functor(f: &GradedFunctor) -> CheckReport {
    let (d, c) = (&*f.dom, &*f.cod);
    let cat = d.base().cat();
    let mut t = Tally::default();
    for e in 0..d.n_elem() {
        let (x, y) = (d.elem(e), c.elem(f.mor[e]));
        let ok = x.grade == y.grade && f.obj[x.src] == y.src && f.obj[x.tgt] == y.tgt;
        t.check(ok, "shape", || vec![x.name.clone()]);
    }
    let shaped = t.violations.is_empty();
    for a in 0..d.n_obj() {
        t.check(f.mor[d.ident(a)] == c.ident(f.obj[a]), "ident", || vec![d.obj_name(a).into()]);
    }
    if shaped {
        for e in 0..d.n_elem() {
            for a in cat.into_obj(d.grade(e)) {
                let lhs = f.mor[d.reindex(e, a).unwrap()];
                t.check(Some(lhs) == c.reindex(f.mor[e], a), "reindex", || {
                    vec![d.name(e).into(), cat.mor_name(a).into()]
                });
            }
            for &g in d.outs(d.tgt(e)) {
                let lhs = f.mor[d.comp(g, e).unwrap()];
                t.check(Some(lhs) == c.comp(f.mor[g], f.mor[e]), "comp", || vec![d.name(g).into(), d.name(e).into()]);
            }
        }
    }
    t.finish()
}

/// A graded natural transformation `F ⇒ G` with components at grade `I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedTransf {
    pub from: GradedFunctor,
    pub to: GradedFunctor,
    pub comps: Vec<ElemIx>,
}

pub fn check_graded_transf(t: &GradedTransf) -> CheckReport {
    let (f, g) = (&t.from, &t.to);
    let (d, c) = (&*f.dom, &*f.cod);
    let v = d.base();
    let mut tally = Tally::default();
    for a in 0..d.n_obj() {
        let el = c.elem(t.comps[a]);
        let ok = el.grade == v.unit() && el.src == f.obj[a] && el.tgt == g.obj[a];
        tally.check(ok, "shape", || vec![d.obj_name(a).into()]);
    }
    if !tally.violations.is_empty() {
        return tally.finish();
    }
    for e in 0..d.n_elem() {
        let x = d.grade(e);
        let lhs = c.reindex_opt(c.comp(t.comps[d.tgt(e)], f.mor[e]), v.inv(v.l(x)));
        let rhs = c.reindex_opt(c.comp(g.mor[e], t.comps[d.src(e)]), v.inv(v.r(x)));
        tally.check(lhs.is_some() && lhs == rhs, "natural", || vec![d.name(e).into()]);
    }
    tally.finish()
}

/// Membership mask of the least graded subcategory containing `gens`.
///
/// Identities are added for objects touched by a generator.
pub fn generated_subcategory(c: &GradedCat, gens: &[ElemIx]) -> Vec<bool> {
    let cat = c.base().cat();
    let mut member = vec![false; c.n_elem()];
    let mut by_src: Vec<Vec<ElemIx>> = vec![Vec::new(); c.n_obj()];
    let mut by_tgt: Vec<Vec<ElemIx>> = vec![Vec::new(); c.n_obj()];
    let mut work = Vec::new();
    let mut touched = vec![false; c.n_obj()];
    for &g in gens {
        work.push(g);
        for a in [c.src(g), c.tgt(g)] {
            if !std::mem::replace(&mut touched[a], true) {
                work.push(c.ident(a));
            }
        }
    }
    while let Some(e) = work.pop() {
        if std::mem::replace(&mut member[e], true) {
            continue;
        }
        by_src[c.src(e)].push(e);
        by_tgt[c.tgt(e)].push(e);
        for a in cat.into_obj(c.grade(e)) {
            work.extend(c.reindex(e, a));
        }
        for &f in &by_tgt[c.src(e)] {
            work.extend(c.comp(e, f));
        }
        for &g in &by_src[c.tgt(e)] {
            work.extend(c.comp(g, e));
        }
    }
    member
}

pub fn is_generating(c: &GradedCat, gens: &[ElemIx]) -> bool {
    let mask = generated_subcategory(c, gens);
    let touched = (0..c.n_obj()).filter(|&a| mask[c.ident(a)]).count();
    touched == c.n_obj() && mask.iter().all(|&m| m) || c.n_elem() == 0
}

/// A generating set chosen greedily in element order.
pub fn canonical_generators(c: &GradedCat) -> Vec<ElemIx> {
    let mut gens = Vec::new();
    let mut mask = vec![false; c.n_elem()];
    for a in 0..c.n_obj() {
        if !mask[c.ident(a)] {
            gens.push(c.ident(a));
            mask = generated_subcategory(c, &gens);
        }
    }
    for e in 0..c.n_elem() {
        if !mask[e] {
            gens.push(e);
            mask = generated_subcategory(c, &gens);
        }
    }
    gens
}

/// Extend a partial morphism map by closure; false on a conflict.
fn propagate(d: &GradedCat, c: &GradedCat, img: &mut [ElemIx], mut work: Vec<ElemIx>) -> bool {
    let cat = d.base().cat();
    let set = |img: &mut [ElemIx], work: &mut Vec<ElemIx>, e: ElemIx, u: Option<ElemIx>| -> bool {
        let Some(u) = u else { return false };
        if img[e] == NONE {
            img[e] = u;
            work.push(e);
            true
        } else {
            img[e] == u
        }
    };
    while let Some(e) = work.pop() {
        let u = img[e];
        for a in cat.into_obj(d.grade(e)) {
            if !set(img, &mut work, d.reindex(e, a).unwrap(), c.reindex(u, a)) {
                return false;
            }
        }
        for &f in d.ins(d.src(e)) {
            if img[f] != NONE && !set(img, &mut work, d.comp(e, f).unwrap(), c.comp(u, img[f])) {
                return false;
            }
        }
        for &g in d.outs(d.tgt(e)) {
            if img[g] != NONE && !set(img, &mut work, d.comp(g, e).unwrap(), c.comp(img[g], u)) {
                return false;
            }
        }
    }
    true
}

/// All graded functors `dom → cod`, ordered by object map then by the images
/// of the generators.
///
/// `gens` must generate `dom`; by default a canonical generating set is used.
/// Every candidate is confirmed by [`check_graded_functor`].
pub fn enumerate_graded_functors(
    dom: &Arc<GradedCat>,
    cod: &Arc<GradedCat>,
    gens: Option<&[ElemIx]>,
    limits: Limits,
) -> Result<Vec<GradedFunctor>> {
    if !same_base(dom.base(), cod.base()) {
        return Err(structural("functor enumeration between categories over different bases"));
    }
    let gens: Vec<ElemIx> = match gens {
        Some(g) => {
            if !is_generating(dom, g) {
                return Err(structural("declared generators do not generate the source"));
            }
            g.to_vec()
        }
        None => canonical_generators(dom),
    };
    let (n, k) = (dom.n_obj(), cod.n_obj());
    let total = (0..n).try_fold(1usize, |acc, _| acc.checked_mul(k));
    let Some(total) = total else {
        return Err(Error::Budget { what: "object maps".into(), limit: limits.max_objects });
    };
    let cap = limits.max_objects;
    let per_map = par::map_range(total, |code| {
        let mut obj = vec![0; n];
        let mut r = code;
        for slot in obj.iter_mut().rev() {
            *slot = r % k;
            r /= k;
        }
        functors_over(dom, cod, &obj, &gens, cap)
    });
    let mut all = Vec::new();
    for batch in per_map {
        all.extend(batch);
        if all.len() > cap {
            return Err(Error::Budget { what: "graded functors".into(), limit: cap });
        }
    }
    Ok(all)
}

/// Graded functors with a fixed object map, at most `cap + 1` of them.
pub(crate) fn functors_over(
    dom: &Arc<GradedCat>,
    cod: &Arc<GradedCat>,
    obj: &[usize],
    gens: &[ElemIx],
    cap: usize,
) -> Vec<GradedFunctor> {
    let n = dom.n_obj();
    let mut img = vec![NONE; dom.n_elem()];
    let ids: Vec<ElemIx> = (0..n).map(|a| dom.ident(a)).collect();
    for a in 0..n {
        img[ids[a]] = cod.ident(obj[a]);
    }
    let mut out = Vec::new();
    if propagate(dom, cod, &mut img, ids) {
        search(dom, cod, obj, gens, 0, img, cap, &mut out);
    }
    out
}

/// All graded functors with the given object map.
pub fn enumerate_with_objects(
    dom: &Arc<GradedCat>,
    cod: &Arc<GradedCat>,
    obj: &[usize],
    limits: Limits,
) -> Result<Vec<GradedFunctor>> {
    if !same_base(dom.base(), cod.base()) {
        return Err(structural("functor enumeration between categories over different bases"));
    }
    if obj.len() != dom.n_obj() || obj.iter().any(|&o| o >= cod.n_obj()) {
        return Err(structural("object map is not total or out of range"));
    }
    let out = functors_over(dom, cod, obj, &canonical_generators(dom), limits.max_objects);
    if out.len() > limits.max_objects {
        return Err(Error::Budget { what: "graded functors".into(), limit: limits.max_objects });
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    d: &Arc<GradedCat>,
    c: &Arc<GradedCat>,
    obj: &[usize],
    gens: &[ElemIx],
    i: usize,
    img: Vec<ElemIx>,
    cap: usize,
    out: &mut Vec<GradedFunctor>,
) {
    if out.len() > cap {
        return;
    }
    if i == gens.len() {
        if img.contains(&NONE) {
            return;
        }
        let f = GradedFunctor { dom: d.clone(), cod: c.clone(), obj: obj.to_vec(), mor: img };
        if check_graded_functor(&f).ok() {
            out.push(f);
        }
        return;
    }
    let g = gens[i];
    if img[g] != NONE {
        return search(d, c, obj, gens, i + 1, img, cap, out);
    }
    let el = d.elem(g);
    for &u in c.hom(el.grade, obj[el.src], obj[el.tgt]) {
        let mut next = img.clone();
        next[g] = u;
        if propagate(d, c, &mut next, vec![g]) {
            search(d, c, obj, gens, i + 1, next, cap, out);
        }
    }
}

/// Contravariant change of base along an opmonoidal functor `F: V → W`.
///
/// Element names are kept when `F` is injective on objects and suffixed with
/// the new grade otherwise.
pub fn change_base(f: &OpmonFunctor, c: &GradedCat) -> Result<GradedCat> {
    if !same_base(&f.cod, c.base()) {
        return Err(structural("change of base: functor codomain is not the base of the category"));
    }
    let v = &f.dom;
    let mut seen = f.functor.obj.clone();
    seen.sort_unstable();
    let injective = seen.windows(2).all(|p| p[0] != p[1]);
    GradedCat::build(
        v.clone(),
        c.objects().to_vec(),
        |x, a, b| {
            Ok(c.hom(f.obj(x), a, b)
                .iter()
                .map(|&e| {
                    let name = if injective {
                        c.name(e).to_string()
                    } else {
                        format!("{}@{}", c.name(e), v.cat().obj_name(x))
                    };
                    ((x, e), name)
                })
                .collect())
        },
        |&(_, e), a| Some((v.cat().src(a), c.reindex(e, f.mor(a))?)),
        |&(y, g), &(x, e)| Some((v.t(y, x), c.reindex(c.comp(g, e)?, f.delta(y, x))?)),
        |a| Some((v.unit(), c.reindex(c.ident(a), f.eps)?)),
    )
}
