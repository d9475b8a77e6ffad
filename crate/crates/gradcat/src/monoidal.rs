//! Finite monoidal categories with explicit coherence components.

use std::sync::Arc;

use crate::error::{structural, Result};
use crate::fincat::{check_fincat, check_functor, FinCat, FinFunctor, MorIx, ObjIx};
use crate::par;
use crate::report::{collect, w, CheckReport, Tally};

/// Raw tables of a monoidal structure, indexed as documented on each field.
#[derive(Debug, Clone)]
pub struct MonParts {
    pub cat: Arc<FinCat>,
    /// `x * n + y ↦ x⊗y`
    pub tensor_obj: Vec<ObjIx>,
    /// `α * m + β ↦ α⊗β`
    pub tensor_mor: Vec<MorIx>,
    pub unit: ObjIx,
    /// `(x * n + y) * n + z ↦ a_{xyz}`
    pub assoc: Vec<MorIx>,
    pub lunit: Vec<MorIx>,
    pub runit: Vec<MorIx>,
    pub strict: bool,
    /// `x * n + y ↦ c_{xy}`
    pub braiding: Option<Vec<MorIx>>,
}

/// A finite monoidal category, optionally braided.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinMonCat {
    cat: Arc<FinCat>,
    tensor_obj: Vec<ObjIx>,
    tensor_mor: Vec<MorIx>,
    unit: ObjIx,
    assoc: Vec<MorIx>,
    lunit: Vec<MorIx>,
    runit: Vec<MorIx>,
    strict: bool,
    braiding: Option<Vec<MorIx>>,
}

impl FinMonCat {
    pub fn from_parts(p: MonParts) -> Result<FinMonCat> {
        let (n, m) = (p.cat.n_obj(), p.cat.n_mor());
        let in_obj = |v: &[usize], len: usize| v.len() == len && v.iter().all(|&x| x < n);
        let in_mor = |v: &[usize], len: usize| v.len() == len && v.iter().all(|&x| x < m);
        if !in_obj(&p.tensor_obj, n * n) || p.unit >= n {
            return Err(structural("tensor object table or unit out of range"));
        }
        if !in_mor(&p.tensor_mor, m * m) {
            return Err(structural("tensor morphism table not total or out of range"));
        }
        if !in_mor(&p.assoc, n * n * n) || !in_mor(&p.lunit, n) || !in_mor(&p.runit, n) {
            return Err(structural("coherence components not total or out of range"));
        }
        if let Some(c) = &p.braiding {
            if !in_mor(c, n * n) {
                return Err(structural("braiding not total or out of range"));
            }
        }
        let v = FinMonCat {
            cat: p.cat,
            tensor_obj: p.tensor_obj,
            tensor_mor: p.tensor_mor,
            unit: p.unit,
            assoc: p.assoc,
            lunit: p.lunit,
            runit: p.runit,
            strict: p.strict,
            braiding: p.braiding,
        };
        if v.strict {
            v.validate_strict()?;
        }
        Ok(v)
    }

    fn validate_strict(&self) -> Result<()> {
        let c = &*self.cat;
        let ids = self.assoc.iter().chain(&self.lunit).chain(&self.runit);
        if let Some(&f) = ids.clone().find(|&&f| !c.is_identity(f)) {
            return Err(structural(format!(
                "strict flag set but coherence component '{}' is not an identity",
                c.mor_name(f)
            )));
        }
        let n = c.n_obj();
        for x in 0..n {
            if self.t(self.unit, x) != x || self.t(x, self.unit) != x {
                return Err(structural("strict flag set but the unit is not strict"));
            }
            for y in 0..n {
                for z in 0..n {
                    if self.t(self.t(x, y), z) != self.t(x, self.t(y, z)) {
                        return Err(structural("strict flag set but tensor is not strictly associative"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn parts(&self) -> MonParts {
        MonParts {
            cat: self.cat.clone(),
            tensor_obj: self.tensor_obj.clone(),
            tensor_mor: self.tensor_mor.clone(),
            unit: self.unit,
            assoc: self.assoc.clone(),
            lunit: self.lunit.clone(),
            runit: self.runit.clone(),
            strict: self.strict,
            braiding: self.braiding.clone(),
        }
    }

    pub fn cat(&self) -> &Arc<FinCat> {
        &self.cat
    }
    pub fn n_obj(&self) -> usize {
        self.cat.n_obj()
    }
    pub fn n_mor(&self) -> usize {
        self.cat.n_mor()
    }
    pub fn unit(&self) -> ObjIx {
        self.unit
    }
    pub fn is_strict(&self) -> bool {
        self.strict
    }
    pub fn t(&self, x: ObjIx, y: ObjIx) -> ObjIx {
        self.tensor_obj[x * self.n_obj() + y]
    }
    pub fn tm(&self, a: MorIx, b: MorIx) -> MorIx {
        self.tensor_mor[a * self.n_mor() + b]
    }
    pub fn a(&self, x: ObjIx, y: ObjIx, z: ObjIx) -> MorIx {
        let n = self.n_obj();
        self.assoc[(x * n + y) * n + z]
    }
    pub fn l(&self, x: ObjIx) -> MorIx {
        self.lunit[x]
    }
    pub fn r(&self, x: ObjIx) -> MorIx {
        self.runit[x]
    }
    pub fn id(&self, x: ObjIx) -> MorIx {
        self.cat.id(x)
    }
    /// Inverse of an invertible morphism; panics otherwise.
    pub fn inv(&self, f: MorIx) -> MorIx {
        self.cat.inv(f).unwrap_or_else(|| panic!("'{}' is not invertible", self.cat.mor_name(f)))
    }
    pub fn braiding(&self) -> Option<&[MorIx]> {
        self.braiding.as_deref()
    }
    pub fn c(&self, x: ObjIx, y: ObjIx) -> Option<MorIx> {
        self.braiding.as_ref().map(|c| c[x * self.n_obj() + y])
    }
    pub fn with_braiding(&self, c: Option<Vec<MorIx>>) -> Result<FinMonCat> {
        let mut p = self.parts();
        p.braiding = c;
        FinMonCat::from_parts(p)
    }
    /// `c_{YX}·c_{XY} = 1` everywhere; false when unbraided.
    pub fn is_symmetric(&self) -> bool {
        let n = self.n_obj();
        self.braiding.is_some()
            && (0..n).all(|x| {
                (0..n).all(|y| {
                    let cc = self.cat.comp_opt(self.c(y, x), self.c(x, y));
                    cc == Some(self.id(self.t(x, y)))
                })
            })
    }

    /// Canonical coherence morphism between two bracketings of the same word.
    pub fn canonical(&self, from: &Expr, to: &Expr) -> MorIx {
        let (mf, lf) = self.normalize(from);
        let (mt, lt) = self.normalize(to);
        assert_eq!(lf, lt, "canonical map between different words");
        self.cat.comp(self.inv(mt), mf).expect("normal forms agree")
    }

    fn nf(&self, leaves: &[ObjIx]) -> ObjIx {
        match leaves {
            [] => self.unit,
            [x] => *x,
            [x, rest @ ..] => self.t(*x, self.nf(rest)),
        }
    }

    fn normalize(&self, e: &Expr) -> (MorIx, Vec<ObjIx>) {
        match e {
            Expr::Obj(x) => (self.id(*x), vec![*x]),
            Expr::Unit => (self.id(self.unit), vec![]),
            Expr::T(a, b) => {
                let (ma, la) = self.normalize(a);
                let (mb, lb) = self.normalize(b);
                let merged = self.merge(&la, &lb);
                let mut leaves = la;
                leaves.extend(lb);
                (self.cat.comp(merged, self.tm(ma, mb)).expect("merge composes"), leaves)
            }
        }
    }

    /// `nf(la) ⊗ nf(lb) → nf(la ++ lb)`.
    fn merge(&self, la: &[ObjIx], lb: &[ObjIx]) -> MorIx {
        match (la, lb) {
            ([], _) => self.l(self.nf(lb)),
            (_, []) => self.r(self.nf(la)),
            ([x], _) => self.id(self.t(*x, self.nf(lb))),
            ([x, rest @ ..], _) => {
                let step = self.a(*x, self.nf(rest), self.nf(lb));
                let tail = self.tm(self.id(*x), self.merge(rest, lb));
                self.cat.comp(tail, step).expect("merge composes")
            }
        }
    }
}

/// A bracketed tensor word over base objects, used to name coherence maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Obj(ObjIx),
    Unit,
    T(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn t(a: Expr, b: Expr) -> Expr {
        Expr::T(Box::new(a), Box::new(b))
    }
    pub fn eval(&self, v: &FinMonCat) -> ObjIx {
        match self {
            Expr::Obj(x) => *x,
            Expr::Unit => v.unit(),
            Expr::T(a, b) => v.t(a.eval(v), b.eval(v)),
        }
    }
}

pub fn o(x: ObjIx) -> Expr {
    Expr::Obj(x)
}

/// Exhaustive check of the monoidal (and, if present, braiding) laws.
pub fn check_monoidal(v: &FinMonCat) -> CheckReport {
    let mut report = check_fincat(&v.cat);
    if !report.ok() {
        return report;
    }
    let c = &*v.cat;
    let (n, m) = (c.n_obj(), c.n_mor());
    let mn = |f: MorIx| c.mor_name(f).to_string();
    let on = |x: ObjIx| c.obj_name(x).to_string();

    let mut head = Tally::default();
    for a in 0..m {
        for b in 0..m {
            let ab = v.tm(a, b);
            let shaped = c.src(ab) == v.t(c.src(a), c.src(b)) && c.tgt(ab) == v.t(c.tgt(a), c.tgt(b));
            head.check(shaped, "tensor-shape", || vec![mn(a), mn(b)]);
        }
    }
    for x in 0..n {
        for y in 0..n {
            head.check(v.tm(v.id(x), v.id(y)) == v.id(v.t(x, y)), "tensor-identity", || vec![on(x), on(y)]);
        }
        let l = v.l(x);
        head.check(c.src(l) == v.t(v.unit, x) && c.tgt(l) == x, "lunit-shape", || vec![on(x)]);
        head.check(c.inv(l).is_some(), "lunit-iso", || vec![on(x)]);
        let r = v.r(x);
        head.check(c.src(r) == v.t(x, v.unit) && c.tgt(r) == x, "runit-shape", || vec![on(x)]);
        head.check(c.inv(r).is_some(), "runit-iso", || vec![on(x)]);
        for y in 0..n {
            let tri_l = c.comp(v.tm(v.id(x), v.l(y)), v.a(x, v.unit, y));
            let tri_r = v.tm(v.r(x), v.id(y));
            head.check(tri_l == Some(tri_r), "triangle", || vec![on(x), on(y)]);
            for z in 0..n {
                let a = v.a(x, y, z);
                let shaped = c.src(a) == v.t(v.t(x, y), z) && c.tgt(a) == v.t(x, v.t(y, z));
                head.check(shaped, "assoc-shape", || vec![on(x), on(y), on(z)]);
                head.check(c.inv(a).is_some(), "assoc-iso", || vec![on(x), on(y), on(z)]);
            }
        }
    }
    report.merge(head.finish());
    if !report.ok() {
        return report;
    }
    let body = par::map_range(m, |a| {
        let mut t = Tally::default();
        // functoriality of ⊗ in pairs of composable pairs
        for a2 in (0..m).filter(|&a2| c.src(a2) == c.tgt(a)) {
            let aa = c.comp(a2, a).unwrap();
            for b in 0..m {
                for b2 in (0..m).filter(|&b2| c.src(b2) == c.tgt(b)) {
                    let bb = c.comp(b2, b).unwrap();
                    let lhs = v.tm(aa, bb);
                    let rhs = c.comp(v.tm(a2, b2), v.tm(a, b));
                    t.check(rhs == Some(lhs), "tensor-composition", || vec![mn(a2), mn(a), mn(b2), mn(b)]);
                }
            }
        }
        let (x, x2) = (c.src(a), c.tgt(a));
        let l = c.comp(v.l(x2), v.tm(v.id(v.unit), a));
        t.check(l == c.comp(a, v.l(x)), "lunit-natural", || vec![mn(a)]);
        let r = c.comp(v.r(x2), v.tm(a, v.id(v.unit)));
        t.check(r == c.comp(a, v.r(x)), "runit-natural", || vec![mn(a)]);
        for b in 0..m {
            let (y, y2) = (c.src(b), c.tgt(b));
            for g in 0..m {
                let (z, z2) = (c.src(g), c.tgt(g));
                let lhs = c.comp(v.a(x2, y2, z2), v.tm(v.tm(a, b), g));
                let rhs = c.comp(v.tm(a, v.tm(b, g)), v.a(x, y, z));
                t.check(lhs.is_some() && lhs == rhs, "assoc-natural", || vec![mn(a), mn(b), mn(g)]);
            }
        }
        t
    });
    report.merge(collect(body));
    let pent = par::map_range(n, |x0| {
        let mut t = Tally::default();
        for x1 in 0..n {
            for x2 in 0..n {
                for x3 in 0..n {
                    let lhs = c.comp(v.a(x0, x1, v.t(x2, x3)), v.a(v.t(x0, x1), x2, x3));
                    let rhs = c.then(&[
                        v.tm(v.a(x0, x1, x2), v.id(x3)),
                        v.a(x0, v.t(x1, x2), x3),
                        v.tm(v.id(x0), v.a(x1, x2, x3)),
                    ]);
                    t.check(lhs.is_some() && lhs == rhs, "pentagon", || vec![on(x0), on(x1), on(x2), on(x3)]);
                }
            }
        }
        t
    });
    report.merge(collect(pent));
    if v.braiding.is_some() {
        report.merge(check_braiding(v));
    }
    report
}

/// Invertibility, naturality and both hexagons for the stored braiding.
pub fn check_braiding(v: &FinMonCat) -> CheckReport {
    let c = &*v.cat;
    let (n, m) = (c.n_obj(), c.n_mor());
    let mut t = Tally::default();
    let Some(_) = v.braiding else {
        t.check(false, "braiding-missing", Vec::new);
        return t.finish();
    };
    let on = |x: ObjIx| c.obj_name(x).to_string();
    let br = |x, y| v.c(x, y).unwrap();
    for x in 0..n {
        for y in 0..n {
            let cxy = br(x, y);
            let shaped = c.src(cxy) == v.t(x, y) && c.tgt(cxy) == v.t(y, x);
            t.check(shaped, "braiding-shape", || vec![on(x), on(y)]);
            t.check(c.inv(cxy).is_some(), "braiding-iso", || vec![on(x), on(y)]);
        }
    }
    if !t.violations.is_empty() {
        return t.finish();
    }
    for a in 0..m {
        for b in 0..m {
            let lhs = c.comp(br(c.tgt(a), c.tgt(b)), v.tm(a, b));
            let rhs = c.comp(v.tm(b, a), br(c.src(a), c.src(b)));
            t.check(lhs.is_some() && lhs == rhs, "braiding-natural", || {
                vec![c.mor_name(a).into(), c.mor_name(b).into()]
            });
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = c.then(&[v.a(x, y, z), br(x, v.t(y, z)), v.a(y, z, x)]);
                let rhs = c.then(&[v.tm(br(x, y), v.id(z)), v.a(y, x, z), v.tm(v.id(y), br(x, z))]);
                t.check(lhs.is_some() && lhs == rhs, "hexagon-1", || vec![on(x), on(y), on(z)]);
                let ia = |p, q, r| v.inv(v.a(p, q, r));
                let lhs = c.then(&[ia(x, y, z), br(v.t(x, y), z), ia(z, x, y)]);
                let rhs = c.then(&[v.tm(v.id(x), br(y, z)), ia(x, z, y), v.tm(br(x, z), v.id(y))]);
                t.check(lhs.is_some() && lhs == rhs, "hexagon-2", || vec![on(x), on(y), on(z)]);
            }
        }
    }
    t.finish()
}

/// Pointwise product `V × W`.
///
/// Object `(x, y)` has index `x * |ob W| + y`; morphism `(α, β)` has index
/// `α * |mor W| + β`. Ids are rendered `(x,y)`.
pub fn product(v: &FinMonCat, w: &FinMonCat) -> FinMonCat {
    let (cv, cw) = (&*v.cat, &*w.cat);
    let (nv, nw, mv, mw) = (cv.n_obj(), cw.n_obj(), cv.n_mor(), cw.n_mor());
    let po = |x: ObjIx, y: ObjIx| x * nw + y;
    let pm = |a: MorIx, b: MorIx| a * mw + b;
    let objects = (0..nv * nw).map(|i| format!("({},{})", cv.obj_name(i / nw), cw.obj_name(i % nw))).collect();
    let morphisms = (0..mv * mw)
        .map(|i| {
            let (a, b) = (i / mw, i % mw);
            (
                format!("({},{})", cv.mor_name(a), cw.mor_name(b)),
                po(cv.src(a), cw.src(b)),
                po(cv.tgt(a), cw.tgt(b)),
            )
        })
        .collect();
    let identity = (0..nv * nw).map(|i| pm(cv.id(i / nw), cw.id(i % nw))).collect();
    let cat = FinCat::from_parts(objects, morphisms, identity, |g, f| {
        Some(pm(cv.comp(g / mw, f / mw)?, cw.comp(g % mw, f % mw)?))
    })
    .expect("product of valid categories");
    let n = nv * nw;
    let (sx, sy) = (|i: usize| i / nw, |i: usize| i % nw);
    let tensor_obj = (0..n * n).map(|k| po(v.t(sx(k / n), sx(k % n)), w.t(sy(k / n), sy(k % n)))).collect();
    let m = mv * mw;
    let tensor_mor = (0..m * m)
        .map(|k| {
            let (f, g) = (k / m, k % m);
            pm(v.tm(f / mw, g / mw), w.tm(f % mw, g % mw))
        })
        .collect();
    let assoc = (0..n * n * n)
        .map(|k| {
            let (x, y, z) = (k / (n * n), (k / n) % n, k % n);
            pm(v.a(sx(x), sx(y), sx(z)), w.a(sy(x), sy(y), sy(z)))
        })
        .collect();
    let lunit = (0..n).map(|x| pm(v.l(sx(x)), w.l(sy(x)))).collect();
    let runit = (0..n).map(|x| pm(v.r(sx(x)), w.r(sy(x)))).collect();
    let braiding = match (&v.braiding, &w.braiding) {
        (Some(_), Some(_)) => Some(
            (0..n * n)
                .map(|k| {
                    let (x, y) = (k / n, k % n);
                    pm(v.c(sx(x), sx(y)).unwrap(), w.c(sy(x), sy(y)).unwrap())
                })
                .collect(),
        ),
        _ => None,
    };
    FinMonCat::from_parts(MonParts {
        cat: Arc::new(cat),
        tensor_obj,
        tensor_mor,
        unit: po(v.unit, w.unit),
        assoc,
        lunit,
        runit,
        strict: v.strict && w.strict,
        braiding,
    })
    .expect("product of valid monoidal categories")
}

/// `V^rev`: `X ⊗' Y = Y ⊗ X`, associator `a'_{XYZ} = a_{ZYX}⁻¹`, unitors swapped,
/// braiding `c'_{XY} = c_{YX}`.
pub fn reverse(v: &FinMonCat) -> FinMonCat {
    let (n, m) = (v.n_obj(), v.n_mor());
    let tensor_obj = (0..n * n).map(|k| v.t(k % n, k / n)).collect();
    let tensor_mor = (0..m * m).map(|k| v.tm(k % m, k / m)).collect();
    let assoc = (0..n * n * n)
        .map(|k| {
            let (x, y, z) = (k / (n * n), (k / n) % n, k % n);
            v.inv(v.a(z, y, x))
        })
        .collect();
    let braiding = v.braiding.as_ref().map(|_| (0..n * n).map(|k| v.c(k % n, k / n).unwrap()).collect());
    FinMonCat::from_parts(MonParts {
        cat: v.cat.clone(),
        tensor_obj,
        tensor_mor,
        unit: v.unit,
        assoc,
        lunit: v.runit.clone(),
        runit: v.lunit.clone(),
        strict: v.strict,
        braiding,
    })
    .expect("reverse of a valid monoidal category")
}

/// An opmonoidal functor `F: V → W` with `δ_{YX}: F(Y⊗X) → FY⊗FX` and `ε: FI → I`.
#[derive(Debug, Clone)]
pub struct OpmonFunctor {
    pub dom: Arc<FinMonCat>,
    pub cod: Arc<FinMonCat>,
    pub functor: FinFunctor,
    /// `y * |ob V| + x ↦ δ_{yx}`
    pub delta: Vec<MorIx>,
    pub eps: MorIx,
}

impl OpmonFunctor {
    pub fn new(
        dom: Arc<FinMonCat>,
        cod: Arc<FinMonCat>,
        obj: Vec<ObjIx>,
        mor: Vec<MorIx>,
        delta: Vec<MorIx>,
        eps: MorIx,
    ) -> Result<Self> {
        let functor = FinFunctor::new(dom.cat.clone(), cod.cat.clone(), obj, mor)?;
        let n = dom.n_obj();
        if delta.len() != n * n || delta.iter().chain([&eps]).any(|&d| d >= cod.n_mor()) {
            return Err(structural("opmonoidal structure maps not total or out of range"));
        }
        Ok(OpmonFunctor { dom, cod, functor, delta, eps })
    }

    pub fn obj(&self, x: ObjIx) -> ObjIx {
        self.functor.obj[x]
    }
    pub fn mor(&self, f: MorIx) -> MorIx {
        self.functor.mor[f]
    }
    pub fn delta(&self, y: ObjIx, x: ObjIx) -> MorIx {
        self.delta[y * self.dom.n_obj() + x]
    }
    pub fn is_normal(&self) -> bool {
        self.cod.cat.inv(self.eps).is_some()
    }
    pub fn is_strictly_normal(&self) -> bool {
        self.cod.cat.is_identity(self.eps)
    }

    pub fn identity(v: Arc<FinMonCat>) -> Self {
        let n = v.n_obj();
        let delta = (0..n * n).map(|k| v.id(v.t(k / n, k % n))).collect();
        let eps = v.id(v.unit());
        let functor = FinFunctor::identity(v.cat.clone());
        OpmonFunctor { dom: v.clone(), cod: v, functor, delta, eps }
    }

    /// `U_ℓ = (−, I): V → V × W`, for `prod = product(v, w)`.
    pub fn left_inclusion(v: Arc<FinMonCat>, w: &FinMonCat, prod: Arc<FinMonCat>) -> Self {
        let (nw, mw) = (w.n_obj(), w.n_mor());
        let i = w.unit();
        let obj = (0..v.n_obj()).map(|x| x * nw + i).collect();
        let mor = (0..v.n_mor()).map(|a| a * mw + w.id(i)).collect();
        let fix = w.inv(w.l(i));
        let n = v.n_obj();
        let delta = (0..n * n).map(|k| v.id(v.t(k / n, k % n)) * mw + fix).collect();
        let eps = prod.id(prod.unit());
        OpmonFunctor::new(v, prod, obj, mor, delta, eps).expect("inclusion tables")
    }

    /// `U_r = (I, −): W → V × W`, for `prod = product(v, w)`.
    pub fn right_inclusion(v: &FinMonCat, w: Arc<FinMonCat>, prod: Arc<FinMonCat>) -> Self {
        let (nw, mw) = (w.n_obj(), w.n_mor());
        let i = v.unit();
        let obj = (0..nw).map(|x| i * nw + x).collect();
        let mor = (0..w.n_mor()).map(|b| v.id(i) * mw + b).collect();
        let fix = v.inv(v.l(i));
        let delta = (0..nw * nw).map(|k| fix * mw + w.id(w.t(k / nw, k % nw))).collect();
        let eps = prod.id(prod.unit());
        OpmonFunctor::new(w, prod, obj, mor, delta, eps).expect("inclusion tables")
    }

    /// The symmetry `W × V → V × W`, a strict monoidal isomorphism.
    pub fn swap(wv: Arc<FinMonCat>, vw: Arc<FinMonCat>, v: &FinMonCat, w: &FinMonCat) -> Self {
        let (nv, nw, mv, mw) = (v.n_obj(), w.n_obj(), v.n_mor(), w.n_mor());
        let obj = (0..nw * nv).map(|k| (k % nv) * nw + k / nv).collect();
        let mor = (0..mw * mv).map(|k| (k % mv) * mw + k / mv).collect();
        let n = nw * nv;
        let delta = (0..n * n).map(|k| vw.id(vw.t((k / n % nv) * nw + k / n / nv, (k % n % nv) * nw + k % n / nv))).collect();
        let eps = vw.id(vw.unit());
        OpmonFunctor::new(wv, vw, obj, mor, delta, eps).expect("swap tables")
    }

    /// A comonoid `(R, d, e)` in `V` as an opmonoidal functor `1 → V`.
    pub fn comonoid(v: Arc<FinMonCat>, r: ObjIx, d: MorIx, e: MorIx) -> Result<Self> {
        let one = Arc::new(terminal());
        let id = v.id(r);
        OpmonFunctor::new(one, v, vec![r], vec![id], vec![d], e)
    }

    /// The unit comonoid `I_V`.
    pub fn unit_comonoid(v: Arc<FinMonCat>) -> Self {
        let i = v.unit();
        let d = v.inv(v.l(i));
        let e = v.id(i);
        OpmonFunctor::comonoid(v, i, d, e).expect("unit comonoid tables")
    }
}

/// Functoriality, δ-naturality, coassociativity and both counit laws.
pub fn check_opmonoidal(f: &OpmonFunctor) -> CheckReport {
    let mut report = check_functor(&f.functor);
    for v in &mut report.violations {
        v.law = format!("functor-{}", v.law);
    }
    if !report.ok() {
        return report;
    }
    let (v, wc) = (&*f.dom, &*f.cod);
    let (cv, cw) = (&*v.cat, &*wc.cat);
    let n = v.n_obj();
    let on = |x: ObjIx| cv.obj_name(x).to_string();
    let mut t = Tally::default();
    let e = f.eps;
    t.check(cw.src(e) == f.obj(v.unit()) && cw.tgt(e) == wc.unit(), "eps-shape", Vec::new);
    for y in 0..n {
        for x in 0..n {
            let d = f.delta(y, x);
            let shaped = cw.src(d) == f.obj(v.t(y, x)) && cw.tgt(d) == wc.t(f.obj(y), f.obj(x));
            t.check(shaped, "delta-shape", || vec![on(y), on(x)]);
        }
    }
    if !t.violations.is_empty() {
        return t.finish();
    }
    for b in 0..cv.n_mor() {
        for a in 0..cv.n_mor() {
            let lhs = cw.comp(wc.tm(f.mor(b), f.mor(a)), f.delta(cv.src(b), cv.src(a)));
            let rhs = cw.comp(f.delta(cv.tgt(b), cv.tgt(a)), f.mor(v.tm(b, a)));
            t.check(lhs.is_some() && lhs == rhs, "delta-natural", || {
                w([cv.mor_name(b), cv.mor_name(a)])
            });
        }
    }
    for z in 0..n {
        for y in 0..n {
            for x in 0..n {
                let (fz, fy, fx) = (f.obj(z), f.obj(y), f.obj(x));
                let lhs = cw.then(&[f.delta(v.t(z, y), x), wc.tm(f.delta(z, y), wc.id(fx)), wc.a(fz, fy, fx)]);
                let rhs = cw.then(&[f.mor(v.a(z, y, x)), f.delta(z, v.t(y, x)), wc.tm(wc.id(fz), f.delta(y, x))]);
                t.check(lhs.is_some() && lhs == rhs, "coassoc", || vec![on(z), on(y), on(x)]);
            }
        }
    }
    let i = v.unit();
    for x in 0..n {
        let fx = f.obj(x);
        let lhs = cw.then(&[f.delta(i, x), wc.tm(e, wc.id(fx)), wc.l(fx)]);
        t.check(lhs == Some(f.mor(v.l(x))), "counit-left", || vec![on(x)]);
        let rhs = cw.then(&[f.delta(x, i), wc.tm(wc.id(fx), e), wc.r(fx)]);
        t.check(rhs == Some(f.mor(v.r(x))), "counit-right", || vec![on(x)]);
    }
    report.merge(t.finish());
    report
}

/// A finite monoid given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMonoid {
    pub names: Vec<String>,
    /// `a * n + b ↦ ab`
    pub mul: Vec<usize>,
    pub unit: usize,
}

impl FiniteMonoid {
    pub fn new(names: Vec<String>, mul: Vec<usize>, unit: usize) -> Result<Self> {
        let n = names.len();
        if mul.len() != n * n || mul.iter().any(|&x| x >= n) || unit >= n {
            return Err(structural("monoid table not total or out of range"));
        }
        let mm = FiniteMonoid { names, mul, unit };
        for a in 0..n {
            if mm.op(unit, a) != a || mm.op(a, unit) != a {
                return Err(structural("monoid unit law fails"));
            }
            for b in 0..n {
                for c in 0..n {
                    if mm.op(mm.op(a, b), c) != mm.op(a, mm.op(b, c)) {
                        return Err(structural("monoid multiplication is not associative"));
                    }
                }
            }
        }
        Ok(mm)
    }

    pub fn cyclic(n: usize) -> Self {
        let names = (0..n).map(|i| i.to_string()).collect();
        let mul = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        FiniteMonoid { names, mul, unit: 0 }
    }

    pub fn product(a: &FiniteMonoid, b: &FiniteMonoid) -> Self {
        let (na, nb) = (a.len(), b.len());
        let names = (0..na * nb).map(|k| format!("({},{})", a.names[k / nb], b.names[k % nb])).collect();
        let n = na * nb;
        let mul = (0..n * n)
            .map(|k| {
                let (x, y) = (k / n, k % n);
                a.op(x / nb, y / nb) * nb + b.op(x % nb, y % nb)
            })
            .collect();
        FiniteMonoid { names, mul, unit: a.unit * nb + b.unit }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.len() + b]
    }
}

/// Objects with a cyclic automorphism group of the given order at each object
/// and no other morphisms. Morphism `x:k` is the `k`-th power of the generator at `x`.
fn scalar_cat(objects: Vec<String>, order: usize) -> FinCat {
    let n = objects.len();
    let morphisms = (0..n * order).map(|i| (format!("{}:{}", objects[i / order], i % order), i / order, i / order)).collect();
    let identity = (0..n).map(|x| x * order).collect();
    FinCat::from_parts(objects, morphisms, identity, |g, f| {
        (g / order == f / order).then(|| (g / order) * order + (g % order + f % order) % order)
    })
    .expect("scalar category")
}

/// The monoidal category with one object and one morphism.
pub fn terminal() -> FinMonCat {
    discrete(&FiniteMonoid { names: vec!["*".into()], mul: vec![0], unit: 0 })
}

/// The discrete monoidal category on a finite monoid (strict, identities only).
pub fn discrete(mm: &FiniteMonoid) -> FinMonCat {
    let n = mm.len();
    let cat = scalar_cat(mm.names.clone(), 1);
    let commutative = (0..n).all(|a| (0..n).all(|b| mm.op(a, b) == mm.op(b, a)));
    FinMonCat::from_parts(MonParts {
        cat: Arc::new(cat),
        tensor_obj: mm.mul.clone(),
        tensor_mor: mm.mul.clone(),
        unit: mm.unit,
        assoc: (0..n * n * n).map(|k| mm.op(mm.op(k / (n * n), (k / n) % n), k % n)).collect(),
        lunit: (0..n).collect(),
        runit: (0..n).collect(),
        strict: true,
        braiding: commutative.then(|| mm.mul.clone()),
    })
    .expect("discrete monoidal category")
}

/// The poset `{0 ≤ 1}` with meet as tensor and unit `1`.
pub fn poset_meet() -> FinMonCat {
    let morphisms = vec![("id:0".into(), 0, 0), ("id:1".into(), 1, 1), ("0<=1".into(), 0, 1)];
    let cat = FinCat::from_parts(vec!["0".into(), "1".into()], morphisms, vec![0, 1], |g, f| {
        let (s, t) = ([0, 1, 0][f], [0, 1, 1][g]);
        ([0, 1, 0][g] == [0, 1, 1][f]).then(|| match (s, t) {
            (0, 0) => 0,
            (1, 1) => 1,
            _ => 2,
        })
    })
    .expect("poset");
    let ends = [(0, 0), (1, 1), (0, 1)];
    let hom = |s: usize, t: usize| match (s, t) {
        (0, 0) => 0,
        (1, 1) => 1,
        _ => 2,
    };
    let tensor_mor = (0..9)
        .map(|k| {
            let ((s1, t1), (s2, t2)) = (ends[k / 3], ends[k % 3]);
            hom(s1.min(s2), t1.min(t2))
        })
        .collect();
    FinMonCat::from_parts(MonParts {
        cat: Arc::new(cat),
        tensor_obj: vec![0, 0, 0, 1],
        tensor_mor,
        unit: 1,
        assoc: (0..8).map(|k| if k == 7 { 1 } else { 0 }).collect(),
        lunit: vec![0, 1],
        runit: vec![0, 1],
        strict: true,
        braiding: Some(vec![0, 0, 0, 1]),
    })
    .expect("poset meet")
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A finite abelian group `∏ Z/n_i` with elements in mixed-radix order.
#[derive(Debug, Clone)]
pub struct AbelianGroup {
    pub moduli: Vec<usize>,
}

impl AbelianGroup {
    pub fn len(&self) -> usize {
        self.moduli.iter().product()
    }
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
    fn digits(&self, mut g: usize) -> Vec<usize> {
        let mut d = vec![0; self.moduli.len()];
        for (i, &m) in self.moduli.iter().enumerate().rev() {
            d[i] = g % m;
            g /= m;
        }
        d
    }
    fn undigits(&self, d: &[usize]) -> usize {
        d.iter().zip(&self.moduli).fold(0, |acc, (&x, &m)| acc * m + x % m)
    }
    pub fn add(&self, a: usize, b: usize) -> usize {
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| x + y).collect();
        self.undigits(&s)
    }
    pub fn name(&self, g: usize) -> String {
        let d = self.digits(g);
        if d.len() == 1 {
            d[0].to_string()
        } else {
            format!("({})", d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
        }
    }
}

/// The braided category `B(G, β)`: objects `G`, automorphisms the subgroup of
/// `N`-th roots of unity generated by the values of `β`, tensor adding objects
/// and multiplying scalars, braiding `c_{a,b} = β(a,b)`.
///
/// `beta[a * |G| + b]` is the exponent `k` with `β(a,b) = exp(2πik/N)`.
pub fn bicharacter(g: &AbelianGroup, order: usize, beta: &[usize]) -> Result<FinMonCat> {
    let n = g.len();
    if beta.len() != n * n || order == 0 {
        return Err(structural("bicharacter table has the wrong size"));
    }
    let b = |x: usize, y: usize| beta[x * n + y] % order;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if b(g.add(x, y), z) != (b(x, z) + b(y, z)) % order || b(x, g.add(y, z)) != (b(x, y) + b(x, z)) % order {
                    return Err(structural(format!("beta is not a bicharacter at ({x},{y},{z})")));
                }
            }
        }
    }
    let d = beta.iter().fold(order, |acc, &e| gcd(acc, e % order));
    let k = order / d;
    let cat = scalar_cat((0..n).map(|x| g.name(x)).collect(), k);
    let m = n * k;
    let tensor_obj = (0..n * n).map(|i| g.add(i / n, i % n)).collect();
    let tensor_mor = (0..m * m)
        .map(|i| {
            let (f, h) = (i / m, i % m);
            g.add(f / k, h / k) * k + (f % k + h % k) % k
        })
        .collect();
    let braiding = (0..n * n).map(|i| g.add(i / n, i % n) * k + (b(i / n, i % n) / d) % k).collect();
    FinMonCat::from_parts(MonParts {
        cat: Arc::new(cat),
        tensor_obj,
        tensor_mor,
        unit: 0,
        assoc: (0..n * n * n).map(|i| g.add(g.add(i / (n * n), (i / n) % n), i % n) * k).collect(),
        lunit: (0..n).map(|x| x * k).collect(),
        runit: (0..n).map(|x| x * k).collect(),
        strict: true,
        braiding: Some(braiding),
    })
}

/// `B(Z/4, β(x,y) = i^{xy})`: braided and not symmetric.
pub fn bichar_z4() -> FinMonCat {
    let beta: Vec<usize> = (0..16).map(|k| (k / 4) * (k % 4) % 4).collect();
    bicharacter(&AbelianGroup { moduli: vec![4] }, 4, &beta).expect("i^{xy} is a bicharacter")
}

/// `B(Z/2, β(1,1) = −1)`: symmetric with a nontrivial braiding.
pub fn bichar_z2() -> FinMonCat {
    bicharacter(&AbelianGroup { moduli: vec![2] }, 2, &[0, 0, 0, 1]).expect("sign bicharacter")
}

/// `Z/2` with scalars `±1` and associator `a_{x,y,z} = (−1)^{xyz}`: a non-strict base.
pub fn twisted_z2() -> FinMonCat {
    let cat = scalar_cat(vec!["0".into(), "1".into()], 2);
    let tensor_mor = (0..16)
        .map(|i| {
            let (f, h) = (i / 4, i % 4);
            ((f / 2 + h / 2) % 2) * 2 + (f % 2 + h % 2) % 2
        })
        .collect();
    let assoc = (0..8)
        .map(|i| {
            let (x, y, z) = (i / 4, (i / 2) % 2, i % 2);
            ((x + y + z) % 2) * 2 + x * y * z
        })
        .collect();
    FinMonCat::from_parts(MonParts {
        cat: Arc::new(cat),
        tensor_obj: vec![0, 1, 1, 0],
        tensor_mor,
        unit: 0,
        assoc,
        lunit: vec![0, 2],
        runit: vec![0, 2],
        strict: false,
        braiding: None,
    })
    .expect("twisted Z/2")
}
