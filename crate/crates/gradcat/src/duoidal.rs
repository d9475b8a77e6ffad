//! Normal duoidal bases, `V`-graded squares and bifunctors, the twisted
//! category `C_⋆`, and the two duoidal functor categories.

use std::sync::Arc;

use crate::bifunctor::Sesquifunctor;
use crate::bigraded::{is_square, BigradedCat};
use crate::builtins::{self_left, FinVCat};
use crate::error::{structural, Error, Result};
use crate::fincat::{MorIx, ObjIx};
use crate::funcat::{build_functor_category, FunctorCatSpec, Side};
use crate::graded::{
    change_base, check_graded_functor, enumerate_graded_functors, ElemIx, GradedCat, GradedFunctor, Limits,
};
use crate::monoidal::{
    bicharacter, check_monoidal, check_opmonoidal, o, product, reverse, terminal, AbelianGroup, Expr, FinMonCat,
    OpmonFunctor,
};
use crate::report::{CheckReport, Tally};

/// `(V, ⊗, ⋆)` with `J = I` and `ν = 1`.
#[derive(Debug, Clone)]
pub struct DuoidalData {
    pub base: Arc<FinMonCat>,
    /// `⋆` with its associator and unitors, on the same underlying category.
    pub star: Arc<FinMonCat>,
    /// `((y*n + y′)*n + x)*n + x′ ↦ ξ: (Y⊗X)⋆(Y′⊗X′) → (Y⋆Y′)⊗(X⋆X′)`
    pub xi: Vec<MorIx>,
    /// `μ: I⋆I → I`
    pub mu: MorIx,
    /// `γ: I → I⊗I`
    pub gamma: MorIx,
}

impl DuoidalData {
    pub fn xi(&self, (y, y2): (ObjIx, ObjIx), (x, x2): (ObjIx, ObjIx)) -> MorIx {
        let n = self.base.n_obj();
        self.xi[((y * n + y2) * n + x) * n + x2]
    }

    fn s(&self, x: ObjIx, y: ObjIx) -> ObjIx {
        self.star.t(x, y)
    }

    /// `⋆: V×V → V` with `δ = ξ` and `ε = μ`.
    pub fn star_functor(&self) -> Result<OpmonFunctor> {
        let v = &self.base;
        let (n, m) = (v.n_obj(), v.n_mor());
        let prod = Arc::new(product(v, v));
        let obj = (0..n * n).map(|k| self.s(k / n, k % n)).collect();
        let mor = (0..m * m).map(|k| self.star.tm(k / m, k % m)).collect();
        let nn = n * n;
        let delta = (0..nn * nn)
            .map(|k| {
                let (y, x) = (k / nn, k % nn);
                self.xi((y / n, y % n), (x / n, x % n))
            })
            .collect();
        OpmonFunctor::new(prod, v.clone(), obj, mor, delta, self.mu)
    }

    fn unit_functor(&self) -> Result<OpmonFunctor> {
        let v = &self.base;
        let i = v.unit();
        OpmonFunctor::new(Arc::new(terminal()), v.clone(), vec![i], vec![v.id(i)], vec![self.gamma], v.id(i))
    }
}

fn prefixed(mut r: CheckReport, p: &str) -> CheckReport {
    for v in &mut r.violations {
        v.law = format!("{p}-{}", v.law);
    }
    r
}

/// Both monoidal structures, the opmonoidal structures of `⋆` and `J`, and
/// the opmonoidal-transformation conditions for the `⋆` associator and unitors.
pub fn check_duoidal(d: &DuoidalData) -> CheckReport {
    let v = &*d.base;
    let mut report = check_monoidal(v);
    report.merge(prefixed(check_monoidal(&d.star), "star"));
    let mut t = Tally::default();
    let normal = **d.star.cat() == **v.cat() && d.star.unit() == v.unit();
    t.check(normal, "normal", Vec::new);
    let n = v.n_obj();
    t.check(d.xi.len() == n.pow(4), "xi-shape", Vec::new);
    if !normal || !report.ok() || d.xi.len() != n.pow(4) {
        report.merge(t.finish());
        return report;
    }
    match d.star_functor() {
        Ok(f) => report.merge(prefixed(check_opmonoidal(&f), "xi")),
        Err(e) => t.check(false, "xi-shape", || vec![e.to_string()]),
    }
    match d.unit_functor() {
        Ok(f) => report.merge(prefixed(check_opmonoidal(&f), "unit")),
        Err(e) => t.check(false, "unit-shape", || vec![e.to_string()]),
    }
    if !report.ok() {
        report.merge(t.finish());
        return report;
    }
    let cat = v.cat();
    let (s, st) = (&d.star, &*d.star);
    let name = |x: ObjIx| cat.obj_name(x).to_string();
    let i = v.unit();
    // α
    for y in 0..n * n * n {
        let (y1, y2, y3) = (y / (n * n), (y / n) % n, y % n);
        for x in 0..n * n * n {
            let (x1, x2, x3) = (x / (n * n), (x / n) % n, x % n);
            let (a1, a2, a3) = (v.t(y1, x1), v.t(y2, x2), v.t(y3, x3));
            let df = cat.then(&[
                st.tm(d.xi((y1, y2), (x1, x2)), v.id(a3)),
                d.xi((s.t(y1, y2), y3), (s.t(x1, x2), x3)),
            ]);
            let dg = cat.then(&[
                st.tm(v.id(a1), d.xi((y2, y3), (x2, x3))),
                d.xi((y1, s.t(y2, y3)), (x1, s.t(x2, x3))),
            ]);
            let lhs = dg.and_then(|dg| cat.comp(dg, st.a(a1, a2, a3)));
            let rhs = df.and_then(|df| cat.comp(v.tm(st.a(y1, y2, y3), st.a(x1, x2, x3)), df));
            t.check(lhs.is_some() && lhs == rhs, "star-assoc-opmonoidal", || {
                [y1, y2, y3, x1, x2, x3].map(name).to_vec()
            });
        }
    }
    let eps_f = cat.comp(d.mu, st.tm(d.mu, v.id(i)));
    let eps_g = cat.comp(d.mu, st.tm(v.id(i), d.mu));
    let ok = eps_f.is_some() && eps_g.and_then(|e| cat.comp(e, st.a(i, i, i))) == eps_f;
    t.check(ok, "star-assoc-opmonoidal", || vec!["unit".into()]);
    // λ and ρ
    for y in 0..n {
        for x in 0..n {
            let l = cat.then(&[st.tm(d.gamma, v.id(v.t(y, x))), d.xi((i, y), (i, x)), v.tm(st.l(y), st.l(x))]);
            t.check(l == Some(st.l(v.t(y, x))), "star-lunit-opmonoidal", || vec![name(y), name(x)]);
            let r = cat.then(&[st.tm(v.id(v.t(y, x)), d.gamma), d.xi((y, i), (x, i)), v.tm(st.r(y), st.r(x))]);
            t.check(r == Some(st.r(v.t(y, x))), "star-runit-opmonoidal", || vec![name(y), name(x)]);
        }
    }
    t.check(st.l(i) == d.mu, "star-lunit-opmonoidal", || vec!["unit".into()]);
    t.check(st.r(i) == d.mu, "star-runit-opmonoidal", || vec!["unit".into()]);
    report.merge(t.finish());
    report
}

/// A braided base as a normal duoidal category with `⋆ = ⊗`.
pub fn braided_duoidal(v: Arc<FinMonCat>) -> Result<DuoidalData> {
    if v.braiding().is_none() {
        return Err(structural("base is not braided"));
    }
    let n = v.n_obj();
    let cat = v.cat().clone();
    let mut xi = Vec::with_capacity(n.pow(4));
    for k in 0..n.pow(4) {
        let (y, y2, x, x2) = (k / (n * n * n), (k / (n * n)) % n, (k / n) % n, k % n);
        let into = v.canonical(
            &Expr::t(Expr::t(o(y), o(x)), Expr::t(o(y2), o(x2))),
            &Expr::t(o(y), Expr::t(Expr::t(o(x), o(y2)), o(x2))),
        );
        let mid = v.tm(v.id(y), v.tm(v.c(x, y2).expect("braided"), v.id(x2)));
        let out = v.canonical(
            &Expr::t(o(y), Expr::t(Expr::t(o(y2), o(x)), o(x2))),
            &Expr::t(Expr::t(o(y), o(y2)), Expr::t(o(x), o(x2))),
        );
        xi.push(cat.then(&[into, mid, out]).expect("composable"));
    }
    let i = v.unit();
    Ok(DuoidalData { base: v.clone(), star: v.clone(), xi, mu: v.l(i), gamma: v.inv(v.l(i)) })
}

/// `B(G, β)` packaged as a duoidal category.
pub fn braided_from_bicharacter(g: &AbelianGroup, order: usize, beta: &[usize]) -> Result<DuoidalData> {
    braided_duoidal(Arc::new(bicharacter(g, order, beta)?))
}

/// `σ: X⋆X′ → X⊗X′` and `τ: X⋆X′ → X′⊗X` at `x * n + x′`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaTau {
    pub sigma: Vec<MorIx>,
    pub tau: Vec<MorIx>,
}

impl SigmaTau {
    pub fn sigma(&self, n: usize, x: ObjIx, x2: ObjIx) -> MorIx {
        self.sigma[x * n + x2]
    }
    pub fn tau(&self, n: usize, x: ObjIx, x2: ObjIx) -> MorIx {
        self.tau[x * n + x2]
    }
}

pub fn compute_sigma_tau(d: &DuoidalData) -> SigmaTau {
    let (v, st) = (&*d.base, &*d.star);
    let cat = v.cat();
    let n = v.n_obj();
    let i = v.unit();
    let (mut sigma, mut tau) = (Vec::new(), Vec::new());
    for x in 0..n {
        for x2 in 0..n {
            let s = cat.then(&[st.tm(v.inv(v.r(x)), v.inv(v.l(x2))), d.xi((x, i), (i, x2)), v.tm(st.r(x), st.l(x2))]);
            let t = cat.then(&[st.tm(v.inv(v.l(x)), v.inv(v.r(x2))), d.xi((i, x2), (x, i)), v.tm(st.l(x2), st.r(x))]);
            sigma.push(s.expect("σ composable"));
            tau.push(t.expect("τ composable"));
        }
    }
    SigmaTau { sigma, tau }
}

/// `C_⋆`: `hom((X, X′), A, B) = C.hom(X⋆X′, A, B)`, composed by `ξ`-reindexing,
/// as a `V`-`V^rev`-bigraded category.
pub fn c_star(d: &DuoidalData, c: &GradedCat) -> Result<BigradedCat> {
    let f = d.star_functor()?;
    let cat = change_base(&f, c)?;
    BigradedCat::new(d.base.clone(), Arc::new(reverse(&d.base)), Arc::new(cat))
}

/// Translations between `C` and `C_⋆`.
pub struct Twisted<'a> {
    pub d: &'a DuoidalData,
    pub c: &'a GradedCat,
    pub cs: &'a BigradedCat,
}

impl Twisted<'_> {
    /// The element of `C_⋆` at `(X, X′)` given by `e` at grade `X⋆X′`.
    pub fn lift(&self, x: ObjIx, x2: ObjIx, e: ElemIx) -> ElemIx {
        let c = self.c;
        debug_assert_eq!(c.grade(e), self.d.star.t(x, x2));
        self.cs.cat.hom(self.cs.grade(x, x2), c.src(e), c.tgt(e))[c.hom_pos(e)]
    }

    /// `f_ℓ = ρ*(f)` as a parent element.
    pub fn ell(&self, f: ElemIx) -> ElemIx {
        let x = self.c.grade(f);
        let e = self.c.reindex(f, self.d.star.r(x)).expect("reindex along ρ");
        self.lift(x, self.d.base.unit(), e)
    }

    /// `f_r = λ*(f)` as a parent element.
    pub fn r(&self, f: ElemIx) -> ElemIx {
        let x = self.c.grade(f);
        let e = self.c.reindex(f, self.d.star.l(x)).expect("reindex along λ");
        self.lift(self.d.base.unit(), x, e)
    }

    /// `C ≅ U_ℓ*C_⋆` and `C ≅ U_r*C_⋆`, identity on objects.
    pub fn view_isos(&self, c: &Arc<GradedCat>) -> Result<(GradedFunctor, GradedFunctor)> {
        let cs = self.cs;
        let n = c.n_obj();
        let lm = (0..c.n_elem()).map(|f| cs.parent_to_left(self.ell(f)).expect("left grade")).collect();
        let rm = (0..c.n_elem()).map(|f| cs.parent_to_right(self.r(f)).expect("right grade")).collect();
        Ok((
            GradedFunctor::new(c.clone(), cs.left_view.clone(), (0..n).collect(), lm)?,
            GradedFunctor::new(c.clone(), cs.right_view.clone(), (0..n).collect(), rm)?,
        ))
    }
}

/// A graded functor that is bijective on objects and on every graded hom-set.
pub fn is_graded_iso(f: &GradedFunctor) -> bool {
    let (d, c) = (&f.dom, &f.cod);
    let mut objs = f.obj.clone();
    objs.sort_unstable();
    objs.dedup();
    let mut mors = f.mor.clone();
    mors.sort_unstable();
    mors.dedup();
    check_graded_functor(f).ok()
        && objs.len() == d.n_obj()
        && d.n_obj() == c.n_obj()
        && mors.len() == d.n_elem()
        && d.n_elem() == c.n_elem()
}

fn square_shape(c: &GradedCat, f: ElemIx, g: ElemIx, phi: ElemIx, phi2: ElemIx) -> bool {
    c.grade(f) == c.grade(g)
        && c.grade(phi) == c.grade(phi2)
        && c.src(f) == c.src(phi)
        && c.tgt(f) == c.src(phi2)
        && c.tgt(phi) == c.src(g)
        && c.tgt(g) == c.tgt(phi2)
}

/// `σ*(g ∘ φ) = τ*(φ′ ∘ f)`.
pub fn is_vgraded_square(
    d: &DuoidalData,
    st: &SigmaTau,
    c: &GradedCat,
    f: ElemIx,
    g: ElemIx,
    phi: ElemIx,
    phi2: ElemIx,
) -> Result<bool> {
    if !square_shape(c, f, g, phi, phi2) {
        return Err(structural("quadruple does not have the shape of a square"));
    }
    let n = d.base.n_obj();
    let (x, x2) = (c.grade(f), c.grade(phi));
    let lhs = c.reindex(c.comp(g, phi).expect("composable"), st.sigma(n, x, x2));
    let rhs = c.reindex(c.comp(phi2, f).expect("composable"), st.tau(n, x, x2));
    Ok(lhs.is_some() && lhs == rhs)
}

/// Every square-shaped quadruple `(f, g, φ, φ′)` of `C`, in a fixed order.
pub fn quadruples(c: &GradedCat, budget: usize) -> Result<Vec<[ElemIx; 4]>> {
    let mut out = Vec::new();
    for f in 0..c.n_elem() {
        let (a, a2, x) = (c.src(f), c.tgt(f), c.grade(f));
        for &phi in c.outs(a) {
            let (b, x2) = (c.tgt(phi), c.grade(phi));
            for &g in c.outs(b).iter().filter(|&&g| c.grade(g) == x) {
                for &phi2 in c.hom(x2, a2, c.tgt(g)) {
                    out.push([f, g, phi, phi2]);
                    if out.len() > budget {
                        return Err(Error::Budget { what: "square quadruples".into(), limit: budget });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `(f, g, φ, φ′)` is a `V`-graded square iff `(f_ℓ, g_ℓ, φ_r, φ′_r)` is a
/// bigraded square in `C_⋆`, over every quadruple.
pub fn equivalence_check(d: &DuoidalData, c: &GradedCat, budget: usize) -> Result<(CheckReport, usize)> {
    let cs = c_star(d, c)?;
    let tw = Twisted { d, c, cs: &cs };
    let st = compute_sigma_tau(d);
    let quads = quadruples(c, budget)?;
    let verdicts = crate::par::map_slice(&quads, |&[f, g, phi, phi2]| {
        let vg = is_vgraded_square(d, &st, c, f, g, phi, phi2)?;
        let bg = is_square(&cs, tw.ell(f), tw.ell(g), tw.r(phi), tw.r(phi2))?.is_some();
        Ok::<_, Error>((vg, bg))
    });
    let mut t = Tally::default();
    let mut squares = 0;
    for (q, v) in quads.iter().zip(verdicts) {
        let (vg, bg) = v?;
        squares += vg as usize;
        t.check(vg == bg, "square-correspondence", || q.map(|e| c.name(e).to_string()).to_vec());
    }
    Ok((t.finish(), squares))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipWitness {
    pub category: String,
    /// `(f, g, φ, φ′)`, a `V`-graded square whose flip is not one.
    pub quadruple: [String; 4],
    /// `(X, X′)` when the square is the `(r_X, c_{XX′}, r_{X′}, 1)` quadruple.
    pub proof_grades: Option<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipVerdict {
    pub squares_checked: usize,
    pub counterexample: Option<FlipWitness>,
}

/// `(r_X, c_{XX′}, r_{X′}, 1_{X′⊗X})` in the base regarded as graded over itself.
pub fn proof_quadruple(v: &FinMonCat, c: &GradedCat, x: ObjIx, x2: ObjIx) -> Option<[ElemIx; 4]> {
    let cat = v.cat();
    let i = v.unit();
    let el = |grade: ObjIx, a: ObjIx, b: ObjIx, h: MorIx| c.hom(grade, a, b)[cat.hom_pos(h)];
    let cxx = v.c(x, x2)?;
    let xx = v.t(x2, x);
    Some([el(x, i, x, v.r(x)), el(x, x2, xx, cxx), el(x2, i, x2, v.r(x2)), el(x2, x, xx, cat.id(xx))])
}

/// Looks for a `V`-graded square whose flip `(φ, φ′, f, g)` is not a square:
/// first the proof quadruples in `V` itself, then every quadruple of each
/// category in `extra`.
pub fn flip_test(d: &DuoidalData, extra: &[(String, Arc<GradedCat>)], budget: usize) -> Result<FlipVerdict> {
    let v = &d.base;
    let st = compute_sigma_tau(d);
    let vc = self_left(v.clone());
    let n = v.n_obj();
    let mut checked = 0;
    let cat = v.cat();
    let names = |c: &GradedCat, q: [ElemIx; 4]| q.map(|e| c.name(e).to_string());
    if v.braiding().is_some() {
        for x in 0..n {
            for x2 in 0..n {
                let q = proof_quadruple(v, &vc, x, x2).expect("braided");
                let [f, g, phi, phi2] = q;
                if !is_vgraded_square(d, &st, &vc, f, g, phi, phi2)? {
                    continue;
                }
                checked += 1;
                if !is_vgraded_square(d, &st, &vc, phi, phi2, f, g)? {
                    return Ok(FlipVerdict {
                        squares_checked: checked,
                        counterexample: Some(FlipWitness {
                            category: "base".into(),
                            quadruple: names(&vc, q),
                            proof_grades: Some((cat.obj_name(x).into(), cat.obj_name(x2).into())),
                        }),
                    });
                }
            }
        }
    }
    let base_cat: Arc<GradedCat> = Arc::new(vc);
    let all = std::iter::once(("base".to_string(), base_cat)).chain(extra.iter().cloned());
    for (name, c) in all {
        for q in quadruples(&c, budget)? {
            let [f, g, phi, phi2] = q;
            if !is_vgraded_square(d, &st, &c, f, g, phi, phi2)? {
                continue;
            }
            checked += 1;
            if !is_vgraded_square(d, &st, &c, phi, phi2, f, g)? {
                return Ok(FlipVerdict {
                    squares_checked: checked,
                    counterexample: Some(FlipWitness { category: name, quadruple: names(&c, q), proof_grades: None }),
                });
            }
        }
    }
    Ok(FlipVerdict { squares_checked: checked, counterexample: None })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DuoSide {
    R,
    L,
}

/// `[A, C]_r` or `[A, C]_ℓ` for left `V`-graded `A` and `C`.
pub struct DuoidalFunctorCat {
    pub side: DuoSide,
    pub functors: Vec<GradedFunctor>,
    pub cat: GradedCat,
    /// Components in `C` of each element.
    pub comps: Vec<Vec<ElemIx>>,
}

fn families(
    d: &DuoidalData,
    st: &SigmaTau,
    side: DuoSide,
    (f, g): (&GradedFunctor, &GradedFunctor),
    x2: ObjIx,
    budget: usize,
) -> Result<Vec<Vec<ElemIx>>> {
    let (a, c) = (&f.dom, &f.cod);
    let n = a.n_obj();
    let mut out = Vec::new();
    let mut fam = vec![0; n];
    let ok_at = |fam: &[ElemIx], upto: usize| -> Result<bool> {
        for e in 0..a.n_elem() {
            let (s, t) = (a.src(e), a.tgt(e));
            if s.max(t) != upto {
                continue;
            }
            let sq = match side {
                DuoSide::R => is_vgraded_square(d, st, c, f.mor[e], g.mor[e], fam[s], fam[t])?,
                DuoSide::L => is_vgraded_square(d, st, c, fam[s], fam[t], f.mor[e], g.mor[e])?,
            };
            if !sq {
                return Ok(false);
            }
        }
        Ok(true)
    };
    fn go(
        k: usize,
        fam: &mut Vec<ElemIx>,
        cand: &dyn Fn(usize) -> Vec<ElemIx>,
        ok_at: &dyn Fn(&[ElemIx], usize) -> Result<bool>,
        out: &mut Vec<Vec<ElemIx>>,
        budget: usize,
    ) -> Result<()> {
        if k == fam.len() {
            out.push(fam.clone());
            if out.len() > budget {
                return Err(Error::Budget { what: "transformations".into(), limit: budget });
            }
            return Ok(());
        }
        for e in cand(k) {
            fam[k] = e;
            if ok_at(fam, k)? {
                go(k + 1, fam, cand, ok_at, out, budget)?;
            }
        }
        Ok(())
    }
    let cand = |k: usize| c.hom(x2, f.obj[k], g.obj[k]).to_vec();
    go(0, &mut fam, &cand, &ok_at, &mut out, budget)?;
    Ok(out)
}

pub fn duoidal_functor_category(
    d: &DuoidalData,
    a: &Arc<GradedCat>,
    c: &Arc<GradedCat>,
    side: DuoSide,
    limits: Limits,
) -> Result<DuoidalFunctorCat> {
    let functors = enumerate_graded_functors(a, c, None, limits)?;
    let st = compute_sigma_tau(d);
    let n = d.base.n_obj();
    let nf = functors.len();
    let mut homs = Vec::with_capacity(n * nf * nf);
    for x2 in 0..n {
        for i in 0..nf {
            for j in 0..nf {
                homs.push(families(d, &st, side, (&functors[i], &functors[j]), x2, limits.max_hom)?);
            }
        }
    }
    let cat_v = d.base.cat().clone();
    let names: Vec<String> = (0..nf).map(|i| format!("F{i}")).collect();
    let built = GradedCat::build(
        d.base.clone(),
        names,
        |x2, i, j| {
            Ok(homs[(x2 * nf + i) * nf + j]
                .iter()
                .map(|fam| {
                    let parts: Vec<&str> = fam.iter().map(|&e| c.name(e)).collect();
                    (fam.clone(), format!("{}:{}->{}[{}]", cat_v.obj_name(x2), i, j, parts.join(",")))
                })
                .collect())
        },
        |fam, al| fam.iter().map(|&e| c.reindex(e, al)).collect(),
        |g, f| g.iter().zip(f).map(|(&g, &f)| c.comp(g, f)).collect(),
        |i| Some((0..a.n_obj()).map(|k| c.ident(functors[i].obj[k])).collect()),
    )?;
    let comps = (0..built.n_elem())
        .map(|e| homs[(built.grade(e) * nf + built.src(e)) * nf + built.tgt(e)][built.hom_pos(e)].clone())
        .collect();
    Ok(DuoidalFunctorCat { side, functors, cat: built, comps })
}

/// `[A, C]_side ≅ [A, C_⋆]_side`: functors correspond through `f ↦ f_ℓ`
/// (side r) or `f ↦ f_r` (side ℓ), components through the other view, and
/// every graded hom-set matches exactly.
pub fn compare_with_c_star(
    d: &DuoidalData,
    a: &Arc<GradedCat>,
    c: &Arc<GradedCat>,
    dfc: &DuoidalFunctorCat,
    limits: Limits,
) -> Result<CheckReport> {
    let cs = Arc::new(c_star(d, c)?);
    let tw = Twisted { d, c, cs: &cs };
    let (fside, comp_side) = match dfc.side {
        DuoSide::R => (Side::LeftSource, Side::RightSource),
        DuoSide::L => (Side::RightSource, Side::LeftSource),
    };
    let view_of = |s: Side, e: ElemIx| match s {
        // LeftSource functors land in the left view
        Side::LeftSource => cs.parent_to_left(tw.ell(e)).expect("left"),
        Side::RightSource => cs.parent_to_right(tw.r(e)).expect("right"),
    };
    let mut spec = FunctorCatSpec::new(fside, a.clone(), cs.clone());
    spec.limits = limits;
    let fc = build_functor_category(&spec)?;
    let mut t = Tally::default();
    let image: Vec<Option<usize>> = dfc
        .functors
        .iter()
        .map(|f| {
            let mor: Vec<ElemIx> = f.mor.iter().map(|&e| view_of(fside, e)).collect();
            fc.functors.iter().position(|h| h.obj == f.obj && h.mor == mor)
        })
        .collect();
    t.check(fc.functors.len() == dfc.functors.len(), "functor-count", || {
        vec![fc.functors.len().to_string(), dfc.functors.len().to_string()]
    });
    for (i, im) in image.iter().enumerate() {
        t.check(im.is_some(), "functor-translation", || vec![format!("F{i}")]);
    }
    if fc.functors.len() != dfc.functors.len() || image.iter().any(Option::is_none) {
        return Ok(t.finish());
    }
    let n = d.base.n_obj();
    let nf = dfc.functors.len();
    for x2 in 0..n {
        for i in 0..nf {
            for j in 0..nf {
                let (ii, jj) = (image[i].unwrap(), image[j].unwrap());
                let mut ours: Vec<Vec<ElemIx>> = dfc
                    .cat
                    .hom(x2, i, j)
                    .iter()
                    .map(|&e| dfc.comps[e].iter().map(|&p| view_of(comp_side, p)).collect())
                    .collect();
                let mut theirs: Vec<Vec<ElemIx>> = fc.cat.hom(x2, ii, jj).iter().map(|&e| fc.comps[e].clone()).collect();
                ours.sort();
                theirs.sort();
                t.check(ours == theirs, "hom-translation", || vec![cat_name(d, x2), format!("F{i}"), format!("F{j}")]);
            }
        }
    }
    Ok(t.finish())
}

fn cat_name(d: &DuoidalData, x: ObjIx) -> String {
    d.base.cat().obj_name(x).to_string()
}

/// `V`-graded bifunctor data `A, B → C` with all three categories left `V`-graded.
#[derive(Debug, Clone)]
pub struct VBifunctor {
    pub a: Arc<GradedCat>,
    pub b: Arc<GradedCat>,
    pub c: Arc<GradedCat>,
    pub obj: Vec<usize>,
    pub left: Vec<Vec<ElemIx>>,
    pub right: Vec<Vec<ElemIx>>,
}

/// Partial functors, then `(F(f,B), F(f,B′), F(A,g), F(A′,g))` is a
/// `V`-graded square for every `f` and `g`.
pub fn check_vgraded_bifunctor(d: &DuoidalData, fb: &VBifunctor) -> CheckReport {
    let (a, b, c) = (&fb.a, &fb.b, &fb.c);
    let nb = b.n_obj();
    let at = |x: usize, y: usize| fb.obj[x * nb + y];
    let mut report = CheckReport::default();
    for y in 0..nb {
        let obj = (0..a.n_obj()).map(|x| at(x, y)).collect();
        let f = GradedFunctor { dom: a.clone(), cod: c.clone(), obj, mor: fb.left[y].clone() };
        report.merge(prefixed(check_graded_functor(&f), "partial-left"));
    }
    for x in 0..a.n_obj() {
        let obj = (0..nb).map(|y| at(x, y)).collect();
        let f = GradedFunctor { dom: b.clone(), cod: c.clone(), obj, mor: fb.right[x].clone() };
        report.merge(prefixed(check_graded_functor(&f), "partial-right"));
    }
    if !report.ok() {
        return report;
    }
    let st = compute_sigma_tau(d);
    let mut t = Tally::default();
    for f in 0..a.n_elem() {
        for g in 0..b.n_elem() {
            let (sa, ta, sb, tb) = (a.src(f), a.tgt(f), b.src(g), b.tgt(g));
            let ok = is_vgraded_square(d, &st, c, fb.left[sb][f], fb.left[tb][f], fb.right[sa][g], fb.right[ta][g]);
            t.check(matches!(ok, Ok(true)), "commute", || vec![a.name(f).into(), b.name(g).into()]);
        }
    }
    report.merge(t.finish());
    report
}

/// The corresponding sesquifunctor `A, B → C_⋆`.
pub fn vbifunctor_to_c_star(d: &DuoidalData, fb: &VBifunctor, cs: &Arc<BigradedCat>) -> Sesquifunctor {
    let tw = Twisted { d, c: &fb.c, cs };
    let left = fb.left.iter().map(|m| m.iter().map(|&e| cs.parent_to_left(tw.ell(e)).expect("left")).collect()).collect();
    let right = fb.right.iter().map(|m| m.iter().map(|&e| cs.parent_to_right(tw.r(e)).expect("right")).collect()).collect();
    Sesquifunctor { a: fb.a.clone(), b: fb.b.clone(), c: cs.clone(), obj: fb.obj.clone(), left, right }
}

/// The enriched-square diagram for morphisms `f: X → C(A,A′)`,
/// `g: X → C(B,B′)`, `φ: X′ → C(A,B)`, `φ′: X′ → C(A′,B′)` of the base:
/// `m·(g⊗φ)·σ = m·(φ′⊗f)·τ`.
pub fn is_enriched_square(
    d: &DuoidalData,
    st: &SigmaTau,
    vc: &FinVCat,
    [a, a2, b, b2]: [usize; 4],
    [f, g, phi, phi2]: [MorIx; 4],
) -> bool {
    let v = &*d.base;
    let cat = v.cat();
    let n = v.n_obj();
    let (x, x2) = (cat.src(f), cat.src(phi));
    let lhs = cat.then(&[st.sigma(n, x, x2), v.tm(g, phi), vc.m(a, b, b2)]);
    let rhs = cat.then(&[st.tau(n, x, x2), v.tm(phi2, f), vc.m(a, a2, b2)]);
    lhs.is_some() && lhs == rhs
}
