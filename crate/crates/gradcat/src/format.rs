//! JSON documents for every structure the CLI reads or writes.
//!
//! One object per file with a top-level `kind`. Ids are strings, tables are
//! arrays of records, and serialization is canonical: object keys in
//! lexicographic order and every array sorted by its id tuple.

use std::collections::HashMap;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::bigraded::BigradedCat;
use crate::duoidal::DuoidalData;
use crate::error::{Error, Result};
use crate::fincat::{FinCat, FinPresheaf, MorIx, ObjIx};
use crate::graded::{Elem, GradedCat, GradedFunctor, GradedTables};
use crate::modules::GradedModule;
use crate::monoidal::{product, reverse, FinMonCat, MonParts};

pub const KINDS: &[&str] = &["fincat", "monoidal", "graded", "bigraded", "functor", "module", "duoidal"];

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorRec {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentRec {
    pub object: String,
    pub morphism: String,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompRec {
    pub g: String,
    pub f: String,
    pub result: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatDoc {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorRec>,
    pub identities: Vec<IdentRec>,
    pub compose: Vec<CompRec>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairRec {
    pub x: String,
    pub y: String,
    pub result: String,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssocRec {
    pub x: String,
    pub y: String,
    pub z: String,
    pub component: String,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BraidRec {
    pub x: String,
    pub y: String,
    pub component: String,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitorRec {
    pub x: String,
    pub component: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonDoc {
    pub category: CatDoc,
    pub unit: String,
    pub strict: bool,
    pub tensor_objects: Vec<PairRec>,
    pub tensor_morphisms: Vec<PairRec>,
    pub associator: Vec<AssocRec>,
    pub left_unitor: Vec<UnitorRec>,
    pub right_unitor: Vec<UnitorRec>,
    pub braiding: Option<Vec<BraidRec>>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElemRec<G> {
    pub id: String,
    pub grade: G,
    pub src: String,
    pub tgt: String,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReindexRec<G> {
    pub element: String,
    pub along: G,
    pub result: String,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjElemRec {
    pub object: String,
    pub element: String,
}

/// The tables of a graded category; `G` is a grade (or base morphism) id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradedBody<G> {
    pub objects: Vec<String>,
    pub elements: Vec<ElemRec<G>>,
    pub reindex: Vec<ReindexRec<G>>,
    pub compose: Vec<CompRec>,
    pub identities: Vec<ObjElemRec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradedDoc {
    pub base: MonDoc,
    pub category: GradedBody<String>,
}

/// Grades are `[left, right]` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BigradedDoc {
    pub left: MonDoc,
    pub right: MonDoc,
    pub category: GradedBody<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImageRec {
    pub id: String,
    pub image: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorDoc {
    pub base: MonDoc,
    pub source: GradedBody<String>,
    pub target: GradedBody<String>,
    pub objects: Vec<ImageRec>,
    pub morphisms: Vec<ImageRec>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SizeRec {
    pub object: String,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionRec {
    pub along: String,
    pub map: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresheafDoc {
    pub sizes: Vec<SizeRec>,
    pub action: Vec<ActionRec>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValueRec {
    pub b: String,
    pub a: String,
    pub presheaf: PresheafDoc,
}

/// One entry of an action: `by` acts on `element` of the value at
/// `(object, grade)` or `(grade, object)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActRec {
    pub by: String,
    pub object: String,
    pub grade: String,
    pub element: usize,
    pub result: usize,
}

/// A module `M: A ⇸ B`; `a` and `b` are right graded over the reversed base.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub base: MonDoc,
    pub a: GradedBody<String>,
    pub b: GradedBody<String>,
    pub values: Vec<ValueRec>,
    pub lambda: Vec<ActRec>,
    pub rho: Vec<ActRec>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct XiRec {
    pub y: String,
    pub y2: String,
    pub x: String,
    pub x2: String,
    pub component: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DuoidalDoc {
    pub base: MonDoc,
    pub star: MonDoc,
    pub xi: Vec<XiRec>,
    pub mu: String,
    pub gamma: String,
}

/// A loaded document.
#[derive(Debug, Clone)]
pub enum Loaded {
    FinCat(Arc<FinCat>),
    Monoidal(Arc<FinMonCat>),
    Graded(Arc<GradedCat>),
    Bigraded(BigradedCat),
    Functor(GradedFunctor),
    Module(GradedModule),
    Duoidal(DuoidalData),
}

impl Loaded {
    pub fn kind(&self) -> &'static str {
        match self {
            Loaded::FinCat(_) => "fincat",
            Loaded::Monoidal(_) => "monoidal",
            Loaded::Graded(_) => "graded",
            Loaded::Bigraded(_) => "bigraded",
            Loaded::Functor(_) => "functor",
            Loaded::Module(_) => "module",
            Loaded::Duoidal(_) => "duoidal",
        }
    }
}

fn perr(path: impl Into<String>, msg: impl Into<String>) -> Error {
    Error::Parse { path: path.into(), msg: msg.into() }
}

fn index_of(names: &[String], path: &str) -> Result<HashMap<String, usize>> {
    let mut m = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        if m.insert(n.clone(), i).is_some() {
            return Err(perr(format!("{path}[{i}]"), format!("duplicate id '{n}'")));
        }
    }
    Ok(m)
}

fn resolve(m: &HashMap<String, usize>, id: &str, what: &str, path: impl FnOnce() -> String) -> Result<usize> {
    m.get(id).copied().ok_or_else(|| perr(path(), format!("unknown {what} '{id}'")))
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v
}

// fincat

pub fn cat_doc(c: &FinCat) -> CatDoc {
    let on = |a: ObjIx| c.obj_name(a).to_string();
    let mn = |f: MorIx| c.mor_name(f).to_string();
    let mut compose = Vec::new();
    for g in 0..c.n_mor() {
        for f in 0..c.n_mor() {
            if let Some(h) = c.comp(g, f) {
                compose.push(CompRec { g: mn(g), f: mn(f), result: mn(h) });
            }
        }
    }
    CatDoc {
        objects: sorted(c.objects().to_vec()),
        morphisms: sorted((0..c.n_mor()).map(|f| MorRec { id: mn(f), src: on(c.src(f)), tgt: on(c.tgt(f)) }).collect()),
        identities: sorted((0..c.n_obj()).map(|a| IdentRec { object: on(a), morphism: mn(c.id(a)) }).collect()),
        compose: sorted(compose),
    }
}

pub fn cat_from_doc(d: &CatDoc, path: &str) -> Result<FinCat> {
    let objs = index_of(&d.objects, &format!("{path}.objects"))?;
    let mut morphisms = Vec::with_capacity(d.morphisms.len());
    for (i, r) in d.morphisms.iter().enumerate() {
        let p = || format!("{path}.morphisms[{i}]");
        let s = resolve(&objs, &r.src, "object", || format!("{}.src", p()))?;
        let t = resolve(&objs, &r.tgt, "object", || format!("{}.tgt", p()))?;
        morphisms.push((r.id.clone(), s, t));
    }
    let mors = index_of(&d.morphisms.iter().map(|r| r.id.clone()).collect::<Vec<_>>(), &format!("{path}.morphisms"))?;
    let mut identity = vec![None; d.objects.len()];
    for (i, r) in d.identities.iter().enumerate() {
        let p = format!("{path}.identities[{i}]");
        let a = resolve(&objs, &r.object, "object", || format!("{p}.object"))?;
        let f = resolve(&mors, &r.morphism, "morphism", || format!("{p}.morphism"))?;
        if identity[a].replace(f).is_some() {
            return Err(perr(p, format!("second identity for '{}'", r.object)));
        }
    }
    let identity = identity
        .into_iter()
        .enumerate()
        .map(|(a, i)| i.ok_or_else(|| perr(format!("{path}.identities"), format!("no identity for '{}'", d.objects[a]))))
        .collect::<Result<Vec<_>>>()?;
    let mut table = HashMap::new();
    for (i, r) in d.compose.iter().enumerate() {
        let p = format!("{path}.compose[{i}]");
        let g = resolve(&mors, &r.g, "morphism", || format!("{p}.g"))?;
        let f = resolve(&mors, &r.f, "morphism", || format!("{p}.f"))?;
        let h = resolve(&mors, &r.result, "morphism", || format!("{p}.result"))?;
        if table.insert((g, f), h).is_some() {
            return Err(perr(p, "duplicate composition entry"));
        }
    }
    FinCat::from_parts(d.objects.clone(), morphisms, identity, |g, f| table.get(&(g, f)).copied())
}

// monoidal

pub fn mon_doc(v: &FinMonCat) -> MonDoc {
    let c = v.cat();
    let (n, m) = (c.n_obj(), c.n_mor());
    let on = |a: ObjIx| c.obj_name(a).to_string();
    let mn = |f: MorIx| c.mor_name(f).to_string();
    let mut tensor_objects = Vec::new();
    let mut associator = Vec::new();
    let mut braiding = v.braiding().map(|_| Vec::new());
    for x in 0..n {
        for y in 0..n {
            tensor_objects.push(PairRec { x: on(x), y: on(y), result: on(v.t(x, y)) });
            if let (Some(b), Some(cxy)) = (braiding.as_mut(), v.c(x, y)) {
                b.push(BraidRec { x: on(x), y: on(y), component: mn(cxy) });
            }
            for z in 0..n {
                associator.push(AssocRec { x: on(x), y: on(y), z: on(z), component: mn(v.a(x, y, z)) });
            }
        }
    }
    let tensor_morphisms = (0..m * m).map(|k| PairRec { x: mn(k / m), y: mn(k % m), result: mn(v.tm(k / m, k % m)) }).collect();
    MonDoc {
        category: cat_doc(c),
        unit: on(v.unit()),
        strict: v.is_strict(),
        tensor_objects: sorted(tensor_objects),
        tensor_morphisms: sorted(tensor_morphisms),
        associator: sorted(associator),
        left_unitor: sorted((0..n).map(|x| UnitorRec { x: on(x), component: mn(v.l(x)) }).collect()),
        right_unitor: sorted((0..n).map(|x| UnitorRec { x: on(x), component: mn(v.r(x)) }).collect()),
        braiding: braiding.map(sorted),
    }
}

pub fn mon_from_doc(d: &MonDoc, path: &str) -> Result<FinMonCat> {
    let cat = Arc::new(cat_from_doc(&d.category, &format!("{path}.category"))?);
    let (n, m) = (cat.n_obj(), cat.n_mor());
    let obj = |id: &str, p: &dyn Fn() -> String| cat.obj_ix(id).ok_or_else(|| perr(p(), format!("unknown object '{id}'")));
    let mor = |id: &str, p: &dyn Fn() -> String| cat.mor_ix(id).ok_or_else(|| perr(p(), format!("unknown morphism '{id}'")));
    let total = |filled: &[usize], field: &str| {
        if filled.iter().any(|&x| x == usize::MAX) {
            Err(perr(format!("{path}.{field}"), "table is not total"))
        } else {
            Ok(())
        }
    };
    let mut tensor_obj = vec![usize::MAX; n * n];
    for (i, r) in d.tensor_objects.iter().enumerate() {
        let p = || format!("{path}.tensor_objects[{i}]");
        let (x, y, t) = (obj(&r.x, &p)?, obj(&r.y, &p)?, obj(&r.result, &p)?);
        tensor_obj[x * n + y] = t;
    }
    total(&tensor_obj, "tensor_objects")?;
    let mut tensor_mor = vec![usize::MAX; m * m];
    for (i, r) in d.tensor_morphisms.iter().enumerate() {
        let p = || format!("{path}.tensor_morphisms[{i}]");
        let (a, b, t) = (mor(&r.x, &p)?, mor(&r.y, &p)?, mor(&r.result, &p)?);
        tensor_mor[a * m + b] = t;
    }
    total(&tensor_mor, "tensor_morphisms")?;
    let mut assoc = vec![usize::MAX; n * n * n];
    for (i, r) in d.associator.iter().enumerate() {
        let p = || format!("{path}.associator[{i}]");
        let (x, y, z) = (obj(&r.x, &p)?, obj(&r.y, &p)?, obj(&r.z, &p)?);
        assoc[(x * n + y) * n + z] = mor(&r.component, &p)?;
    }
    total(&assoc, "associator")?;
    let unitor = |recs: &[UnitorRec], field: &str| -> Result<Vec<MorIx>> {
        let mut out = vec![usize::MAX; n];
        for (i, r) in recs.iter().enumerate() {
            let p = || format!("{path}.{field}[{i}]");
            out[obj(&r.x, &p)?] = mor(&r.component, &p)?;
        }
        total(&out, field)?;
        Ok(out)
    };
    let lunit = unitor(&d.left_unitor, "left_unitor")?;
    let runit = unitor(&d.right_unitor, "right_unitor")?;
    let braiding = match &d.braiding {
        None => None,
        Some(recs) => {
            let mut out = vec![usize::MAX; n * n];
            for (i, r) in recs.iter().enumerate() {
                let p = || format!("{path}.braiding[{i}]");
                out[obj(&r.x, &p)? * n + obj(&r.y, &p)?] = mor(&r.component, &p)?;
            }
            total(&out, "braiding")?;
            Some(out)
        }
    };
    let unit = obj(&d.unit, &|| format!("{path}.unit"))?;
    FinMonCat::from_parts(MonParts { cat, tensor_obj, tensor_mor, unit, assoc, lunit, runit, strict: d.strict, braiding })
}

// graded bodies

/// Names grades and base morphisms for one side of a document.
trait Grades {
    type G: Clone + Ord;
    fn obj(&self, x: ObjIx) -> Self::G;
    fn mor(&self, a: MorIx) -> Self::G;
    fn obj_ix(&self, g: &Self::G, path: &dyn Fn() -> String) -> Result<ObjIx>;
    fn mor_ix(&self, g: &Self::G, path: &dyn Fn() -> String) -> Result<MorIx>;
}

struct Single<'a>(&'a FinCat);

impl Grades for Single<'_> {
    type G = String;
    fn obj(&self, x: ObjIx) -> String {
        self.0.obj_name(x).to_string()
    }
    fn mor(&self, a: MorIx) -> String {
        self.0.mor_name(a).to_string()
    }
    fn obj_ix(&self, g: &String, path: &dyn Fn() -> String) -> Result<ObjIx> {
        self.0.obj_ix(g).ok_or_else(|| perr(path(), format!("unknown grade '{g}'")))
    }
    fn mor_ix(&self, g: &String, path: &dyn Fn() -> String) -> Result<MorIx> {
        self.0.mor_ix(g).ok_or_else(|| perr(path(), format!("unknown base morphism '{g}'")))
    }
}

/// Grades of `V × W^rev` as pairs, using the product index conventions.
struct Pair<'a>(&'a FinCat, &'a FinCat);

impl Grades for Pair<'_> {
    type G = [String; 2];
    fn obj(&self, x: ObjIx) -> [String; 2] {
        let n = self.1.n_obj();
        [self.0.obj_name(x / n).to_string(), self.1.obj_name(x % n).to_string()]
    }
    fn mor(&self, a: MorIx) -> [String; 2] {
        let m = self.1.n_mor();
        [self.0.mor_name(a / m).to_string(), self.1.mor_name(a % m).to_string()]
    }
    fn obj_ix(&self, [l, r]: &[String; 2], path: &dyn Fn() -> String) -> Result<ObjIx> {
        let x = Single(self.0).obj_ix(l, &|| format!("{}[0]", path()))?;
        let y = Single(self.1).obj_ix(r, &|| format!("{}[1]", path()))?;
        Ok(x * self.1.n_obj() + y)
    }
    fn mor_ix(&self, [l, r]: &[String; 2], path: &dyn Fn() -> String) -> Result<MorIx> {
        let a = Single(self.0).mor_ix(l, &|| format!("{}[0]", path()))?;
        let b = Single(self.1).mor_ix(r, &|| format!("{}[1]", path()))?;
        Ok(a * self.1.n_mor() + b)
    }
}

fn body<N: Grades>(c: &GradedCat, names: &N) -> GradedBody<N::G> {
    let t = c.to_tables();
    let en = |e: usize| c.name(e).to_string();
    let on = |a: usize| c.obj_name(a).to_string();
    GradedBody {
        objects: sorted(t.objects.clone()),
        elements: sorted(
            t.elements.iter().map(|e| ElemRec { id: e.name.clone(), grade: names.obj(e.grade), src: on(e.src), tgt: on(e.tgt) }).collect(),
        ),
        reindex: sorted(t.reindex.iter().map(|&(e, a, r)| ReindexRec { element: en(e), along: names.mor(a), result: en(r) }).collect()),
        compose: sorted(t.comp.iter().map(|&(g, f, h)| CompRec { g: en(g), f: en(f), result: en(h) }).collect()),
        identities: sorted(t.ident.iter().enumerate().map(|(a, &i)| ObjElemRec { object: on(a), element: en(i) }).collect()),
    }
}

fn body_tables<N: Grades>(b: &GradedBody<N::G>, names: &N, path: &str) -> Result<GradedTables> {
    let objs = index_of(&b.objects, &format!("{path}.objects"))?;
    let mut elements = Vec::with_capacity(b.elements.len());
    for (i, r) in b.elements.iter().enumerate() {
        let p = format!("{path}.elements[{i}]");
        elements.push(Elem {
            name: r.id.clone(),
            grade: names.obj_ix(&r.grade, &|| format!("{p}.grade"))?,
            src: resolve(&objs, &r.src, "object", || format!("{p}.src"))?,
            tgt: resolve(&objs, &r.tgt, "object", || format!("{p}.tgt"))?,
        });
    }
    let elems = index_of(&b.elements.iter().map(|r| r.id.clone()).collect::<Vec<_>>(), &format!("{path}.elements"))?;
    let el = |id: &str, p: String| resolve(&elems, id, "element", || p);
    let mut reindex = Vec::with_capacity(b.reindex.len());
    for (i, r) in b.reindex.iter().enumerate() {
        let p = format!("{path}.reindex[{i}]");
        let a = names.mor_ix(&r.along, &|| format!("{p}.along"))?;
        reindex.push((el(&r.element, format!("{p}.element"))?, a, el(&r.result, format!("{p}.result"))?));
    }
    let mut comp = Vec::with_capacity(b.compose.len());
    for (i, r) in b.compose.iter().enumerate() {
        let p = format!("{path}.compose[{i}]");
        comp.push((el(&r.g, format!("{p}.g"))?, el(&r.f, format!("{p}.f"))?, el(&r.result, format!("{p}.result"))?));
    }
    let mut ident = vec![usize::MAX; b.objects.len()];
    for (i, r) in b.identities.iter().enumerate() {
        let p = format!("{path}.identities[{i}]");
        let a = resolve(&objs, &r.object, "object", || format!("{p}.object"))?;
        ident[a] = el(&r.element, format!("{p}.element"))?;
    }
    Ok(GradedTables { objects: b.objects.clone(), elements, reindex, comp, ident })
}

fn body_cat(b: &GradedBody<String>, base: &Arc<FinMonCat>, path: &str) -> Result<GradedCat> {
    GradedCat::from_tables(base.clone(), body_tables(b, &Single(base.cat()), path)?)
}

pub fn graded_doc(c: &GradedCat) -> GradedDoc {
    GradedDoc { base: mon_doc(c.base()), category: body(c, &Single(c.base().cat())) }
}

pub fn bigraded_doc(c: &BigradedCat) -> BigradedDoc {
    let names = Pair(c.left.cat(), c.right.cat());
    BigradedDoc { left: mon_doc(&c.left), right: mon_doc(&c.right), category: body(&c.cat, &names) }
}

pub fn functor_doc(f: &GradedFunctor) -> FunctorDoc {
    let names = Single(f.dom.base().cat());
    FunctorDoc {
        base: mon_doc(f.dom.base()),
        source: body(&f.dom, &names),
        target: body(&f.cod, &names),
        objects: sorted(
            (0..f.dom.n_obj()).map(|a| ImageRec { id: f.dom.obj_name(a).into(), image: f.cod.obj_name(f.obj[a]).into() }).collect(),
        ),
        morphisms: sorted(
            (0..f.dom.n_elem()).map(|e| ImageRec { id: f.dom.name(e).into(), image: f.cod.name(f.mor[e]).into() }).collect(),
        ),
    }
}

fn presheaf_doc(p: &FinPresheaf) -> PresheafDoc {
    let c = p.base();
    PresheafDoc {
        sizes: sorted((0..c.n_obj()).map(|x| SizeRec { object: c.obj_name(x).into(), size: p.size(x) }).collect()),
        action: sorted((0..c.n_mor()).map(|a| ActionRec { along: c.mor_name(a).into(), map: p.action(a).to_vec() }).collect()),
    }
}

fn presheaf_from_doc(d: &PresheafDoc, c: &Arc<FinCat>, path: &str) -> Result<FinPresheaf> {
    let names = Single(c);
    let mut sizes = vec![None; c.n_obj()];
    for (i, r) in d.sizes.iter().enumerate() {
        let p = || format!("{path}.sizes[{i}]");
        sizes[names.obj_ix(&r.object, &p)?] = Some(r.size);
    }
    let sizes = sizes.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| perr(format!("{path}.sizes"), "not total"))?;
    let mut action = vec![None; c.n_mor()];
    for (i, r) in d.action.iter().enumerate() {
        let p = || format!("{path}.action[{i}]");
        action[names.mor_ix(&r.along, &p)?] = Some(r.map.clone());
    }
    let action = action.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| perr(format!("{path}.action"), "not total"))?;
    FinPresheaf::new(c.clone(), sizes, action)
}

pub fn module_doc(m: &GradedModule) -> ModuleDoc {
    let cat = m.v.cat();
    let (na, nb) = (m.a.n_obj(), m.b.n_obj());
    let mut values = Vec::new();
    for b in 0..nb {
        for a in 0..na {
            values.push(ValueRec { b: m.b.obj_name(b).into(), a: m.a.obj_name(a).into(), presheaf: presheaf_doc(m.value(b, a)) });
        }
    }
    let mut lambda = Vec::new();
    for f in 0..m.b.n_elem() {
        for a in 0..na {
            for y in 0..cat.n_obj() {
                for (mu, &r) in m.lambda[f][a][y].iter().enumerate() {
                    let (by, object, grade) = (m.b.name(f).into(), m.a.obj_name(a).into(), cat.obj_name(y).into());
                    lambda.push(ActRec { by, object, grade, element: mu, result: r });
                }
            }
        }
    }
    let mut rho = Vec::new();
    for g in 0..m.a.n_elem() {
        for b in 0..nb {
            for y in 0..cat.n_obj() {
                for (mu, &r) in m.rho[g][b][y].iter().enumerate() {
                    let (by, object, grade) = (m.a.name(g).into(), m.b.obj_name(b).into(), cat.obj_name(y).into());
                    rho.push(ActRec { by, object, grade, element: mu, result: r });
                }
            }
        }
    }
    let rn = Single(m.a.base().cat());
    ModuleDoc {
        base: mon_doc(&m.v),
        a: body(&m.a, &rn),
        b: body(&m.b, &rn),
        values: sorted(values),
        lambda: sorted(lambda),
        rho: sorted(rho),
    }
}

fn module_from_doc(d: &ModuleDoc) -> Result<GradedModule> {
    let v = Arc::new(mon_from_doc(&d.base, "base")?);
    let vr = Arc::new(reverse(&v));
    let a = Arc::new(body_cat(&d.a, &vr, "a")?);
    let b = Arc::new(body_cat(&d.b, &vr, "b")?);
    let cat = v.cat();
    let (na, nb, n) = (a.n_obj(), b.n_obj(), cat.n_obj());
    let aobj = |id: &str, p: String| a.obj_ix(id).ok_or_else(|| perr(p, format!("unknown object '{id}'")));
    let bobj = |id: &str, p: String| b.obj_ix(id).ok_or_else(|| perr(p, format!("unknown object '{id}'")));
    let mut values = vec![None; na * nb];
    for (i, r) in d.values.iter().enumerate() {
        let p = format!("values[{i}]");
        let (bi, ai) = (bobj(&r.b, format!("{p}.b"))?, aobj(&r.a, format!("{p}.a"))?);
        values[bi * na + ai] = Some(presheaf_from_doc(&r.presheaf, cat, &format!("{p}.presheaf"))?);
    }
    let values = values.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| perr("values", "not total"))?;
    let size = |bi: usize, ai: usize, y: ObjIx| values[bi * na + ai].size(y);
    let grade = |id: &str, p: String| cat.obj_ix(id).ok_or_else(|| perr(p, format!("unknown grade '{id}'")));
    let mut lambda: Vec<Vec<Vec<Vec<usize>>>> =
        (0..b.n_elem()).map(|f| (0..na).map(|ai| (0..n).map(|y| vec![usize::MAX; size(b.tgt(f), ai, y)]).collect()).collect()).collect();
    for (i, r) in d.lambda.iter().enumerate() {
        let p = format!("lambda[{i}]");
        let f = b.elem_ix(&r.by).ok_or_else(|| perr(format!("{p}.by"), format!("unknown element '{}'", r.by)))?;
        let (ai, y) = (aobj(&r.object, format!("{p}.object"))?, grade(&r.grade, format!("{p}.grade"))?);
        let slot = lambda[f][ai][y].get_mut(r.element).ok_or_else(|| perr(format!("{p}.element"), "out of range"))?;
        *slot = r.result;
    }
    let mut rho: Vec<Vec<Vec<Vec<usize>>>> =
        (0..a.n_elem()).map(|g| (0..nb).map(|bi| (0..n).map(|y| vec![usize::MAX; size(bi, a.src(g), y)]).collect()).collect()).collect();
    for (i, r) in d.rho.iter().enumerate() {
        let p = format!("rho[{i}]");
        let g = a.elem_ix(&r.by).ok_or_else(|| perr(format!("{p}.by"), format!("unknown element '{}'", r.by)))?;
        let (bi, y) = (bobj(&r.object, format!("{p}.object"))?, grade(&r.grade, format!("{p}.grade"))?);
        let slot = rho[g][bi][y].get_mut(r.element).ok_or_else(|| perr(format!("{p}.element"), "out of range"))?;
        *slot = r.result;
    }
    let m = GradedModule { v, a, b, values, lambda, rho };
    m.validate()?;
    Ok(m)
}

pub fn duoidal_doc(d: &DuoidalData) -> DuoidalDoc {
    let c = d.base.cat();
    let n = c.n_obj();
    let on = |x: ObjIx| c.obj_name(x).to_string();
    let mut xi = Vec::with_capacity(n * n * n * n);
    for k in 0..n * n * n * n {
        let (y, y2, x, x2) = (k / (n * n * n), (k / (n * n)) % n, (k / n) % n, k % n);
        xi.push(XiRec { y: on(y), y2: on(y2), x: on(x), x2: on(x2), component: c.mor_name(d.xi[k]).into() });
    }
    DuoidalDoc {
        base: mon_doc(&d.base),
        star: mon_doc(&d.star),
        xi: sorted(xi),
        mu: c.mor_name(d.mu).into(),
        gamma: c.mor_name(d.gamma).into(),
    }
}

fn duoidal_from_doc(d: &DuoidalDoc) -> Result<DuoidalData> {
    let base = Arc::new(mon_from_doc(&d.base, "base")?);
    let star = Arc::new(mon_from_doc(&d.star, "star")?);
    if star.cat() != base.cat() {
        return Err(perr("star.category", "the two structures must share the underlying category"));
    }
    let c = base.cat();
    let names = Single(c);
    let n = c.n_obj();
    let mut xi = vec![usize::MAX; n * n * n * n];
    for (i, r) in d.xi.iter().enumerate() {
        let p = || format!("xi[{i}]");
        let k = [&r.y, &r.y2, &r.x, &r.x2].iter().try_fold(0, |k, id| Ok::<_, Error>(k * n + names.obj_ix(id, &p)?))?;
        xi[k] = names.mor_ix(&r.component, &p)?;
    }
    if xi.contains(&usize::MAX) {
        return Err(perr("xi", "table is not total"));
    }
    let mu = names.mor_ix(&d.mu, &|| "mu".into())?;
    let gamma = names.mor_ix(&d.gamma, &|| "gamma".into())?;
    Ok(DuoidalData { base, star, xi, mu, gamma })
}

// documents

fn typed<T: DeserializeOwned>(v: Value) -> Result<T> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let path = e.path().to_string();
        perr(if path == "." { "$".to_string() } else { path }, e.into_inner().to_string())
    })
}

/// Parse and load a document, resolving every id.
pub fn parse(text: &str) -> Result<Loaded> {
    let mut value: Value = serde_json::from_str(text).map_err(|e| perr("$", e.to_string()))?;
    let obj = value.as_object_mut().ok_or_else(|| perr("$", "expected an object"))?;
    let kind = match obj.remove("kind") {
        Some(Value::String(k)) => k,
        Some(_) => return Err(perr("kind", "expected a string")),
        None => return Err(perr("kind", "missing kind tag")),
    };
    Ok(match kind.as_str() {
        "fincat" => Loaded::FinCat(Arc::new(cat_from_doc(&typed(value)?, "$")?)),
        "monoidal" => Loaded::Monoidal(Arc::new(mon_from_doc(&typed(value)?, "$")?)),
        "graded" => {
            let d: GradedDoc = typed(value)?;
            let base = Arc::new(mon_from_doc(&d.base, "base")?);
            Loaded::Graded(Arc::new(body_cat(&d.category, &base, "category")?))
        }
        "bigraded" => {
            let d: BigradedDoc = typed(value)?;
            let left = Arc::new(mon_from_doc(&d.left, "left")?);
            let right = Arc::new(mon_from_doc(&d.right, "right")?);
            let prod = Arc::new(product(&left, &reverse(&right)));
            let t = body_tables(&d.category, &Pair(left.cat(), right.cat()), "category")?;
            let cat = Arc::new(GradedCat::from_tables(prod, t)?);
            Loaded::Bigraded(BigradedCat::new(left, right, cat)?)
        }
        "functor" => {
            let d: FunctorDoc = typed(value)?;
            let base = Arc::new(mon_from_doc(&d.base, "base")?);
            let dom = Arc::new(body_cat(&d.source, &base, "source")?);
            let cod = Arc::new(body_cat(&d.target, &base, "target")?);
            let mut obj = vec![None; dom.n_obj()];
            for (i, r) in d.objects.iter().enumerate() {
                let p = format!("objects[{i}]");
                let a = dom.obj_ix(&r.id).ok_or_else(|| perr(format!("{p}.id"), format!("unknown object '{}'", r.id)))?;
                let b = cod.obj_ix(&r.image).ok_or_else(|| perr(format!("{p}.image"), format!("unknown object '{}'", r.image)))?;
                obj[a] = Some(b);
            }
            let mut mor = vec![None; dom.n_elem()];
            for (i, r) in d.morphisms.iter().enumerate() {
                let p = format!("morphisms[{i}]");
                let a = dom.elem_ix(&r.id).ok_or_else(|| perr(format!("{p}.id"), format!("unknown element '{}'", r.id)))?;
                let b = cod.elem_ix(&r.image).ok_or_else(|| perr(format!("{p}.image"), format!("unknown element '{}'", r.image)))?;
                mor[a] = Some(b);
            }
            let obj = obj.into_iter().collect::<Option<_>>().ok_or_else(|| perr("objects", "not total"))?;
            let mor = mor.into_iter().collect::<Option<_>>().ok_or_else(|| perr("morphisms", "not total"))?;
            Loaded::Functor(GradedFunctor::new(dom, cod, obj, mor)?)
        }
        "module" => Loaded::Module(module_from_doc(&typed(value)?)?),
        "duoidal" => Loaded::Duoidal(duoidal_from_doc(&typed(value)?)?),
        other => return Err(perr("kind", format!("unknown kind '{other}', expected one of {}", KINDS.join(", ")))),
    })
}

fn tagged<T: Serialize>(kind: &str, doc: &T) -> String {
    let mut v = serde_json::to_value(doc).expect("documents serialize");
    v.as_object_mut().expect("documents are objects").insert("kind".into(), Value::String(kind.into()));
    let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
    s.push('\n');
    s
}

/// Canonical serialization.
pub fn to_json(l: &Loaded) -> String {
    match l {
        Loaded::FinCat(c) => tagged("fincat", &cat_doc(c)),
        Loaded::Monoidal(v) => tagged("monoidal", &mon_doc(v)),
        Loaded::Graded(c) => tagged("graded", &graded_doc(c)),
        Loaded::Bigraded(c) => tagged("bigraded", &bigraded_doc(c)),
        Loaded::Functor(f) => tagged("functor", &functor_doc(f)),
        Loaded::Module(m) => tagged("module", &module_doc(m)),
        Loaded::Duoidal(d) => tagged("duoidal", &duoidal_doc(d)),
    }
}

/// One normalization pass: parse, then serialize canonically.
pub fn normalize(text: &str) -> Result<String> {
    parse(text).map(|l| to_json(&l))
}
