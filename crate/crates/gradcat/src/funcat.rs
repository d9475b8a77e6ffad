//! Graded functor categories `[A, C]` into a bigraded target.
//!
//! With a left `V`-graded source the functors land in the left view of `C`
//! and the functor category is right `W`-graded; with a right `W`-graded
//! source they land in the right view and the result is left `V`-graded.

use std::sync::Arc;

use crate::bigraded::{is_square, BigradedCat};
use crate::error::{structural, Error, Result};
use crate::fincat::ObjIx;
use crate::graded::{canonical_generators, enumerate_graded_functors, is_generating, same_base, ElemIx, GradedCat, GradedFunctor, Limits};
use crate::par;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    LeftSource,
    RightSource,
}

#[derive(Debug, Clone)]
pub struct FunctorCatSpec {
    pub side: Side,
    pub source: Arc<GradedCat>,
    pub target: Arc<BigradedCat>,
    pub gens: Option<Vec<ElemIx>>,
    /// Restrict to these functors (a full subcategory) instead of enumerating.
    pub objects: Option<Vec<GradedFunctor>>,
    pub limits: Limits,
}

impl FunctorCatSpec {
    pub fn new(side: Side, source: Arc<GradedCat>, target: Arc<BigradedCat>) -> Self {
        FunctorCatSpec { side, source, target, gens: None, objects: None, limits: Limits::default() }
    }

    /// The view functors land in.
    pub fn view(&self) -> &Arc<GradedCat> {
        match self.side {
            Side::LeftSource => &self.target.left_view,
            Side::RightSource => &self.target.right_view,
        }
    }
    /// The view the components of transformations live in.
    pub fn comp_view(&self) -> &Arc<GradedCat> {
        match self.side {
            Side::LeftSource => &self.target.right_view,
            Side::RightSource => &self.target.left_view,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !same_base(self.source.base(), self.view().base()) {
            return Err(structural("source chirality does not match the side of the functor category"));
        }
        if let Some(g) = &self.gens {
            if g.iter().any(|&e| e >= self.source.n_elem()) || !is_generating(&self.source, g) {
                return Err(structural("declared generators do not generate the source"));
            }
        }
        Ok(())
    }

    fn gens(&self) -> Vec<ElemIx> {
        self.gens.clone().unwrap_or_else(|| canonical_generators(&self.source))
    }

    /// The naturality square at a source morphism, if it commutes.
    fn natural_at(&self, f: &GradedFunctor, g: &GradedFunctor, fam: &[ElemIx], e: ElemIx) -> bool {
        let s = &self.source;
        let c = &self.target;
        let (a, b) = (s.src(e), s.tgt(e));
        let q = match self.side {
            Side::LeftSource => [
                c.left_to_parent(f.mor[e]),
                c.left_to_parent(g.mor[e]),
                c.right_to_parent(fam[a]),
                c.right_to_parent(fam[b]),
            ],
            Side::RightSource => [
                c.left_to_parent(fam[a]),
                c.left_to_parent(fam[b]),
                c.right_to_parent(f.mor[e]),
                c.right_to_parent(g.mor[e]),
            ],
        };
        matches!(is_square(c, q[0], q[1], q[2], q[3]), Ok(Some(_)))
    }

    /// Is the family natural, testing the generators only or every morphism.
    pub fn is_natural(&self, f: &GradedFunctor, g: &GradedFunctor, fam: &[ElemIx], full: bool) -> bool {
        let checks: Vec<ElemIx> = if full { (0..self.source.n_elem()).collect() } else { self.gens() };
        checks.into_iter().all(|e| self.natural_at(f, g, fam, e))
    }
}

pub fn enumerate_functors(spec: &FunctorCatSpec) -> Result<Vec<GradedFunctor>> {
    spec.validate()?;
    if let Some(objs) = &spec.objects {
        return Ok(objs.clone());
    }
    enumerate_graded_functors(&spec.source, spec.view(), spec.gens.as_deref(), spec.limits)
}

/// Families `(φ_A)_A` of grade `grade` natural at every generator (or every
/// morphism if `full`), in lexicographic order of component indices.
pub fn hom_at_grade(
    spec: &FunctorCatSpec,
    f: &GradedFunctor,
    g: &GradedFunctor,
    grade: ObjIx,
    full: bool,
) -> Result<Vec<Vec<ElemIx>>> {
    let view = spec.comp_view();
    if grade >= view.base().n_obj() {
        return Err(structural(format!("grade {grade} is not an object of the base")));
    }
    let s = &spec.source;
    let checks: Vec<ElemIx> = if full { (0..s.n_elem()).collect() } else { spec.gens() };
    // a check becomes decidable once both endpoints are assigned
    let n = s.n_obj();
    let mut due: Vec<Vec<ElemIx>> = vec![Vec::new(); n];
    for e in checks {
        due[s.src(e).max(s.tgt(e))].push(e);
    }
    let cands: Vec<&[ElemIx]> = (0..n).map(|a| view.hom(grade, f.obj[a], g.obj[a])).collect();
    let mut out = Vec::new();
    let mut fam = vec![0; n];
    let limit = spec.limits.max_hom;
    fn rec(
        a: usize,
        fam: &mut Vec<ElemIx>,
        ctx: (&FunctorCatSpec, &GradedFunctor, &GradedFunctor, &[&[ElemIx]], &[Vec<ElemIx>], usize),
        out: &mut Vec<Vec<ElemIx>>,
    ) -> bool {
        let (spec, f, g, cands, due, limit) = ctx;
        if a == fam.len() {
            if out.len() == limit {
                return false;
            }
            out.push(fam.clone());
            return true;
        }
        for &c in cands[a] {
            fam[a] = c;
            if due[a].iter().all(|&e| spec.natural_at(f, g, fam, e)) && !rec(a + 1, fam, ctx, out) {
                return false;
            }
        }
        true
    }
    if !rec(0, &mut fam, (spec, f, g, &cands, &due, limit), &mut out) {
        return Err(Error::Budget { what: "graded transformations".into(), limit });
    }
    Ok(out)
}

/// A functor category together with the data behind its presentation.
#[derive(Debug, Clone)]
pub struct FunctorCat {
    pub spec: FunctorCatSpec,
    pub functors: Vec<GradedFunctor>,
    pub cat: Arc<GradedCat>,
    /// Components of each element, as elements of [`FunctorCatSpec::comp_view`].
    pub comps: Vec<Vec<ElemIx>>,
}

/// Canonical id of a functor: object images, then generator images.
pub fn functor_id(f: &GradedFunctor, gens: &[ElemIx]) -> String {
    let (d, c) = (&f.dom, &f.cod);
    let objs: Vec<String> = (0..d.n_obj()).map(|a| format!("{}:{}", d.obj_name(a), c.obj_name(f.obj[a]))).collect();
    let mors: Vec<String> = gens.iter().map(|&e| format!("{}:{}", d.name(e), c.name(f.mor[e]))).collect();
    format!("{{{}|{}}}", objs.join(","), mors.join(","))
}

pub fn build_functor_category(spec: &FunctorCatSpec) -> Result<FunctorCat> {
    let functors = enumerate_functors(spec)?;
    if functors.len() > spec.limits.max_objects {
        return Err(Error::Budget { what: "functor category objects".into(), limit: spec.limits.max_objects });
    }
    let view = spec.comp_view().clone();
    let vb = view.base().clone();
    let (ng, nf) = (vb.n_obj(), functors.len());
    let homs = par::map_range(ng * nf * nf, |k| {
        let (x, p) = (k / (nf * nf), k % (nf * nf));
        hom_at_grade(spec, &functors[p / nf], &functors[p % nf], x, false)
    });
    let homs: Vec<Vec<Vec<ElemIx>>> = homs.into_iter().collect::<Result<_>>()?;
    let gens = spec.gens();
    let ids: Vec<String> = functors.iter().map(|f| functor_id(f, &gens)).collect();
    let gname = |x: ObjIx| vb.cat().obj_name(x).to_string();
    let n = spec.source.n_obj();
    let cat = GradedCat::build(
        vb.clone(),
        ids.clone(),
        |x, a, b| {
            Ok(homs[(x * nf + a) * nf + b]
                .iter()
                .map(|fam| {
                    let parts: Vec<&str> = fam.iter().map(|&e| view.name(e)).collect();
                    ((x, a, b, fam.clone()), format!("{}:{}->{}[{}]", gname(x), a, b, parts.join(",")))
                })
                .collect())
        },
        |(_, a, b, fam), al| {
            let r: Option<Vec<ElemIx>> = fam.iter().map(|&e| view.reindex(e, al)).collect();
            Some((vb.cat().src(al), *a, *b, r?))
        },
        |(y, _, c2, psi), (x, a, _, phi)| {
            let r: Option<Vec<ElemIx>> = (0..n).map(|i| view.comp(psi[i], phi[i])).collect();
            Some((vb.t(*y, *x), *a, *c2, r?))
        },
        |a| Some((vb.unit(), a, a, (0..n).map(|i| view.ident(functors[a].obj[i])).collect())),
    )?;
    let comps = cat
        .elems()
        .iter()
        .enumerate()
        .map(|(e, el)| homs[(el.grade * nf + el.src) * nf + el.tgt][cat.hom_pos(e)].clone())
        .collect();
    Ok(FunctorCat { spec: spec.clone(), functors, cat: Arc::new(cat), comps })
}
