//! Finite categories, functors and finite-set-valued presheaves.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{structural, Error, Result};
use crate::par;
use crate::report::{collect, w, CheckReport, Tally};

pub type ObjIx = usize;
pub type MorIx = usize;

pub(crate) const NONE: usize = usize::MAX;

pub(crate) fn opt(ix: usize) -> Option<usize> {
    (ix != NONE).then_some(ix)
}

/// A finite category given by explicit tables.
///
/// Composition is stored densely; `comp(g, f)` is `g·f` and is defined iff
/// `tgt(f) = src(g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<String>,
    src: Vec<ObjIx>,
    tgt: Vec<ObjIx>,
    identity: Vec<MorIx>,
    compose: Vec<MorIx>,
    hom: Vec<Vec<MorIx>>,
    hom_pos: Vec<usize>,
    inverse: Vec<MorIx>,
    obj_index: HashMap<String, ObjIx>,
    mor_index: HashMap<String, MorIx>,
}

impl FinCat {
    /// Assemble a category from tables.
    ///
    /// Fails with a structural error on duplicate ids, out-of-range indices,
    /// or a composition table that is not defined exactly on composable pairs.
    /// Category laws are not checked here; see [`check_fincat`].
    pub fn from_parts<F>(
        objects: Vec<String>,
        morphisms: Vec<(String, ObjIx, ObjIx)>,
        identity: Vec<MorIx>,
        compose: F,
    ) -> Result<FinCat>
    where
        F: Fn(MorIx, MorIx) -> Option<MorIx>,
    {
        let n = objects.len();
        let m = morphisms.len();
        let mut obj_index = HashMap::new();
        for (i, o) in objects.iter().enumerate() {
            if obj_index.insert(o.clone(), i).is_some() {
                return Err(structural(format!("duplicate object id '{o}'")));
            }
        }
        let mut mor_index = HashMap::new();
        let mut names = Vec::with_capacity(m);
        let mut src = Vec::with_capacity(m);
        let mut tgt = Vec::with_capacity(m);
        for (i, (name, s, t)) in morphisms.into_iter().enumerate() {
            if s >= n || t >= n {
                return Err(structural(format!("morphism '{name}' has endpoint out of range")));
            }
            if mor_index.insert(name.clone(), i).is_some() {
                return Err(structural(format!("duplicate morphism id '{name}'")));
            }
            names.push(name);
            src.push(s);
            tgt.push(t);
        }
        if identity.len() != n || identity.iter().any(|&i| i >= m) {
            return Err(structural("identity table is not total over objects"));
        }
        let mut table = vec![NONE; m * m];
        for g in 0..m {
            for f in 0..m {
                let entry = compose(g, f);
                let composable = tgt[f] == src[g];
                match (entry, composable) {
                    (Some(h), true) if h < m => table[g * m + f] = h,
                    (Some(_), true) => {
                        return Err(structural(format!(
                            "composite of '{}' after '{}' is out of range",
                            names[g], names[f]
                        )))
                    }
                    (None, true) => {
                        return Err(structural(format!(
                            "missing composite of '{}' after '{}'",
                            names[g], names[f]
                        )))
                    }
                    (Some(_), false) => {
                        return Err(structural(format!(
                            "composite given for non-composable pair ('{}','{}')",
                            names[g], names[f]
                        )))
                    }
                    (None, false) => {}
                }
            }
        }
        let mut hom = vec![Vec::new(); n * n];
        let mut hom_pos = vec![0; m];
        for f in 0..m {
            let cell = &mut hom[src[f] * n + tgt[f]];
            hom_pos[f] = cell.len();
            cell.push(f);
        }
        let mut cat = FinCat {
            objects,
            morphisms: names,
            src,
            tgt,
            identity,
            compose: table,
            hom,
            hom_pos,
            inverse: vec![NONE; m],
            obj_index,
            mor_index,
        };
        cat.inverse = (0..m)
            .map(|f| {
                let (a, b) = (cat.src[f], cat.tgt[f]);
                cat.hom(b, a)
                    .iter()
                    .copied()
                    .find(|&g| cat.comp(g, f) == Some(cat.id(a)) && cat.comp(f, g) == Some(cat.id(b)))
                    .unwrap_or(NONE)
            })
            .collect();
        Ok(cat)
    }

    pub fn n_obj(&self) -> usize {
        self.objects.len()
    }
    pub fn n_mor(&self) -> usize {
        self.morphisms.len()
    }
    pub fn objects(&self) -> &[String] {
        &self.objects
    }
    pub fn morphisms(&self) -> &[String] {
        &self.morphisms
    }
    pub fn obj_name(&self, a: ObjIx) -> &str {
        &self.objects[a]
    }
    pub fn mor_name(&self, f: MorIx) -> &str {
        &self.morphisms[f]
    }
    pub fn obj_ix(&self, name: &str) -> Option<ObjIx> {
        self.obj_index.get(name).copied()
    }
    pub fn mor_ix(&self, name: &str) -> Option<MorIx> {
        self.mor_index.get(name).copied()
    }
    pub fn src(&self, f: MorIx) -> ObjIx {
        self.src[f]
    }
    pub fn tgt(&self, f: MorIx) -> ObjIx {
        self.tgt[f]
    }
    pub fn id(&self, a: ObjIx) -> MorIx {
        self.identity[a]
    }
    pub fn is_identity(&self, f: MorIx) -> bool {
        self.identity[self.src[f]] == f
    }
    /// `g·f`, if composable.
    pub fn comp(&self, g: MorIx, f: MorIx) -> Option<MorIx> {
        opt(self.compose[g * self.n_mor() + f])
    }
    /// Compose a path given in the order the arrows are traversed.
    pub fn then(&self, path: &[MorIx]) -> Option<MorIx> {
        let (&first, rest) = path.split_first()?;
        rest.iter().try_fold(first, |acc, &g| self.comp(g, acc))
    }
    /// `g·f` where either side may already be undefined.
    pub fn comp_opt(&self, g: Option<MorIx>, f: Option<MorIx>) -> Option<MorIx> {
        self.comp(g?, f?)
    }
    pub fn hom(&self, a: ObjIx, b: ObjIx) -> &[MorIx] {
        &self.hom[a * self.n_obj() + b]
    }
    /// Position of `f` inside `hom(src f, tgt f)`.
    pub fn hom_pos(&self, f: MorIx) -> usize {
        self.hom_pos[f]
    }
    pub fn inv(&self, f: MorIx) -> Option<MorIx> {
        opt(self.inverse[f])
    }
    /// Morphisms with the given target.
    pub fn into_obj(&self, x: ObjIx) -> impl Iterator<Item = MorIx> + '_ {
        (0..self.n_mor()).filter(move |&f| self.tgt[f] == x)
    }
}

/// Exhaustive check of the category laws.
pub fn check_fincat(c: &FinCat) -> CheckReport {
    let m = c.n_mor();
    let mut head = Tally::default();
    for a in 0..c.n_obj() {
        let i = c.id(a);
        head.check(c.src(i) == a && c.tgt(i) == a, "identity-shape", || w([c.obj_name(a)]));
    }
    let mut tallies = vec![head];
    tallies.extend(par::map_range(m, |f| {
        let mut t = Tally::default();
        let name = |x: MorIx| c.mor_name(x).to_string();
        t.check(c.comp(f, c.id(c.src(f))) == Some(f), "unit", || vec![name(f)]);
        t.check(c.comp(c.id(c.tgt(f)), f) == Some(f), "unit", || vec![name(f)]);
        for g in (0..m).filter(|&g| c.src(g) == c.tgt(f)) {
            let gf = c.comp(g, f);
            let shaped = gf.is_some_and(|h| c.src(h) == c.src(f) && c.tgt(h) == c.tgt(g));
            t.check(shaped, "src/tgt", || vec![name(g), name(f)]);
            for h in (0..m).filter(|&h| c.src(h) == c.tgt(g)) {
                let lhs = c.comp_opt(c.comp(h, g), Some(f));
                let rhs = c.comp_opt(Some(h), gf);
                t.check(lhs.is_some() && lhs == rhs, "assoc", || vec![name(h), name(g), name(f)]);
            }
        }
        t
    }));
    collect(tallies)
}

/// A functor between finite categories, given on objects and morphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinFunctor {
    pub dom: Arc<FinCat>,
    pub cod: Arc<FinCat>,
    pub obj: Vec<ObjIx>,
    pub mor: Vec<MorIx>,
}

impl FinFunctor {
    pub fn new(dom: Arc<FinCat>, cod: Arc<FinCat>, obj: Vec<ObjIx>, mor: Vec<MorIx>) -> Result<Self> {
        if obj.len() != dom.n_obj() || obj.iter().any(|&o| o >= cod.n_obj()) {
            return Err(structural("functor object map is not total or out of range"));
        }
        if mor.len() != dom.n_mor() || mor.iter().any(|&f| f >= cod.n_mor()) {
            return Err(structural("functor morphism map is not total or out of range"));
        }
        Ok(FinFunctor { dom, cod, obj, mor })
    }

    pub fn identity(c: Arc<FinCat>) -> Self {
        let obj = (0..c.n_obj()).collect();
        let mor = (0..c.n_mor()).collect();
        FinFunctor { dom: c.clone(), cod: c, obj, mor }
    }
}

pub fn check_functor(f: &FinFunctor) -> CheckReport {
    let (d, c) = (&*f.dom, &*f.cod);
    let mut t = Tally::default();
    for x in 0..d.n_mor() {
        let y = f.mor[x];
        t.check(c.src(y) == f.obj[d.src(x)] && c.tgt(y) == f.obj[d.tgt(x)], "shape", || {
            w([d.mor_name(x)])
        });
    }
    for a in 0..d.n_obj() {
        t.check(f.mor[d.id(a)] == c.id(f.obj[a]), "identity", || w([d.obj_name(a)]));
    }
    for g in 0..d.n_mor() {
        for x in (0..d.n_mor()).filter(|&x| d.tgt(x) == d.src(g)) {
            let lhs = d.comp(g, x).map(|h| f.mor[h]);
            let rhs = c.comp(f.mor[g], f.mor[x]);
            t.check(lhs.is_some() && lhs == rhs, "composition", || w([d.mor_name(g), d.mor_name(x)]));
        }
    }
    t.finish()
}

/// A contravariant functor from a finite category to finite sets.
///
/// Elements of `value(X)` are `0..sizes[X]`. For `α: Y→X`, `action[α]` has
/// length `sizes[X]` and maps into `0..sizes[Y]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinPresheaf {
    base: Arc<FinCat>,
    sizes: Vec<usize>,
    action: Vec<Vec<usize>>,
}

impl FinPresheaf {
    pub fn new(base: Arc<FinCat>, sizes: Vec<usize>, action: Vec<Vec<usize>>) -> Result<Self> {
        if sizes.len() != base.n_obj() || action.len() != base.n_mor() {
            return Err(structural("presheaf tables do not match the base"));
        }
        for (a, act) in action.iter().enumerate() {
            let (y, x) = (base.src(a), base.tgt(a));
            if act.len() != sizes[x] || act.iter().any(|&e| e >= sizes[y]) {
                return Err(structural(format!(
                    "action of '{}' has wrong domain or codomain",
                    base.mor_name(a)
                )));
            }
        }
        Ok(FinPresheaf { base, sizes, action })
    }

    /// The presheaf with `n` elements everywhere and identity actions.
    pub fn constant(base: Arc<FinCat>, n: usize) -> Self {
        let sizes = vec![n; base.n_obj()];
        let action = vec![(0..n).collect(); base.n_mor()];
        FinPresheaf { base, sizes, action }
    }

    /// `V(−, x)`, elements of `value(Y)` enumerating `hom(Y, x)` in order.
    pub fn representable(base: Arc<FinCat>, x: ObjIx) -> Self {
        let sizes = (0..base.n_obj()).map(|y| base.hom(y, x).len()).collect();
        let action = (0..base.n_mor())
            .map(|a| {
                base.hom(base.tgt(a), x)
                    .iter()
                    .map(|&h| base.hom_pos(base.comp(h, a).expect("composable")))
                    .collect()
            })
            .collect();
        FinPresheaf { base, sizes, action }
    }

    /// Precompose with an endofunctor of the base, `P ∘ F`.
    pub fn precompose<O, M>(&self, obj: O, mor: M) -> FinPresheaf
    where
        O: Fn(ObjIx) -> ObjIx,
        M: Fn(MorIx) -> MorIx,
    {
        let sizes = (0..self.base.n_obj()).map(|y| self.sizes[obj(y)]).collect();
        let action = (0..self.base.n_mor()).map(|a| self.action[mor(a)].clone()).collect();
        FinPresheaf { base: self.base.clone(), sizes, action }
    }

    pub fn base(&self) -> &Arc<FinCat> {
        &self.base
    }
    pub fn size(&self, x: ObjIx) -> usize {
        self.sizes[x]
    }
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }
    /// `α*(e)` for `α: Y→X` and `e ∈ value(X)`.
    pub fn at(&self, alpha: MorIx, e: usize) -> usize {
        self.action[alpha][e]
    }
    pub fn action(&self, alpha: MorIx) -> &[usize] {
        &self.action[alpha]
    }
    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }
}

pub fn check_presheaf(p: &FinPresheaf) -> CheckReport {
    let b = &*p.base;
    let mut t = Tally::default();
    for x in 0..b.n_obj() {
        let i = b.id(x);
        t.check((0..p.size(x)).all(|e| p.at(i, e) == e), "identity", || w([b.obj_name(x)]));
    }
    for beta in 0..b.n_mor() {
        for alpha in b.into_obj(b.src(beta)) {
            let ba = b.comp(beta, alpha).expect("composable");
            for e in 0..p.size(b.tgt(beta)) {
                t.check(p.at(ba, e) == p.at(alpha, p.at(beta, e)), "composition", || {
                    vec![b.mor_name(beta).into(), b.mor_name(alpha).into(), e.to_string()]
                });
            }
        }
    }
    t.finish()
}

/// A natural transformation `P ⇒ Q`: one component per object, each a
/// function from `P(X)` to `Q(X)`.
pub type NatTrans = Vec<Vec<usize>>;

/// All natural transformations `p ⇒ q`, in lexicographic order.
pub fn nat_transformations(p: &FinPresheaf, q: &FinPresheaf) -> Result<Vec<NatTrans>> {
    nat_transformations_bounded(p, q, usize::MAX)
}

/// As [`nat_transformations`], failing once more than `limit` are found.
pub fn nat_transformations_bounded(p: &FinPresheaf, q: &FinPresheaf, limit: usize) -> Result<Vec<NatTrans>> {
    if p.base != q.base {
        return Err(structural("natural transformations between presheaves on different bases"));
    }
    let b = &*p.base;
    let n = b.n_obj();
    let mut offset = vec![0; n + 1];
    for x in 0..n {
        offset[x + 1] = offset[x] + p.size(x);
    }
    let nvars = offset[n];
    let mut owner = vec![0; nvars];
    for x in 0..n {
        owner[offset[x]..offset[x + 1]].fill(x);
    }
    // Each naturality equation ties two variables; it is tested once the later one is set.
    // Entry (alpha, vx, vy): q(alpha)(val[vx]) == val[vy].
    let mut constraints: Vec<Vec<(MorIx, usize, usize)>> = vec![Vec::new(); nvars];
    for alpha in 0..b.n_mor() {
        let (y, x) = (b.src(alpha), b.tgt(alpha));
        for e in 0..p.size(x) {
            let vx = offset[x] + e;
            let vy = offset[y] + p.at(alpha, e);
            constraints[vx.max(vy)].push((alpha, vx, vy));
        }
    }
    let mut out = Vec::new();
    let mut val = vec![0usize; nvars];
    fn rec(
        v: usize,
        val: &mut Vec<usize>,
        ctx: (&FinPresheaf, &[usize], &[Vec<(MorIx, usize, usize)>], usize),
        out: &mut Vec<Vec<usize>>,
    ) -> bool {
        let (q, owner, constraints, limit) = ctx;
        if v == val.len() {
            if out.len() == limit {
                return false;
            }
            out.push(val.clone());
            return true;
        }
        for c in 0..q.size(owner[v]) {
            val[v] = c;
            let ok = constraints[v].iter().all(|&(alpha, vx, vy)| q.at(alpha, val[vx]) == val[vy]);
            if ok && !rec(v + 1, val, ctx, out) {
                return false;
            }
        }
        true
    }
    let mut flat = Vec::new();
    let complete = rec(0, &mut val, (q, &owner, &constraints, limit), &mut flat);
    if !complete {
        return Err(Error::Budget { what: "natural transformations".into(), limit });
    }
    for sol in flat {
        out.push((0..n).map(|x| sol[offset[x]..offset[x + 1]].to_vec()).collect());
    }
    Ok(out)
}
