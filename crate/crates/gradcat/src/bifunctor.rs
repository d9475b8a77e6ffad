//! Graded sesquifunctors and bifunctors, the bigraded product `A ⊠ B`, and
//! the currying isomorphisms between the four corners
//! bifunctors / functors on `A ⊠ B` / `A → [B, C]` / `B → [A, C]`.

use std::sync::Arc;

use crate::bigraded::{is_square, swap_elem, BigradedCat, Square};
use crate::error::{structural, Result};
use crate::funcat::{FunctorCat, Side};
use crate::graded::{
    canonical_generators, check_graded_functor, enumerate_graded_functors, enumerate_with_objects, same_base, ElemIx,
    GradedCat, GradedFunctor, Limits,
};
use crate::monoidal::{product, reverse};
use crate::par;
use crate::report::{CheckReport, Tally};

/// `F: A, B → C` with `A` left `V`-graded, `B` right `W`-graded (over
/// `W^rev`) and `C` bigraded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sesquifunctor {
    pub a: Arc<GradedCat>,
    pub b: Arc<GradedCat>,
    pub c: Arc<BigradedCat>,
    /// `a * |ob B| + b ↦ F(a, b)`
    pub obj: Vec<usize>,
    /// Per object `B`: `F(−, B)` on elements of `A`, into the left view.
    pub left: Vec<Vec<ElemIx>>,
    /// Per object `A`: `F(A, −)` on elements of `B`, into the right view.
    pub right: Vec<Vec<ElemIx>>,
}

impl PartialEq for BigradedCat {
    fn eq(&self, other: &Self) -> bool {
        *self.cat == *other.cat && *self.left == *other.left && *self.right == *other.right
    }
}
impl Eq for BigradedCat {}

impl Sesquifunctor {
    pub fn at(&self, a: usize, b: usize) -> usize {
        self.obj[a * self.b.n_obj() + b]
    }

    pub fn validate(&self) -> Result<()> {
        let (na, nb) = (self.a.n_obj(), self.b.n_obj());
        let sized = self.obj.len() == na * nb
            && self.left.len() == nb
            && self.right.len() == na
            && self.left.iter().all(|m| m.len() == self.a.n_elem())
            && self.right.iter().all(|m| m.len() == self.b.n_elem());
        if !sized || !same_base(self.a.base(), &self.c.left) || !same_base(self.b.base(), &self.c.right_rev) {
            return Err(structural("sesquifunctor tables do not match its categories"));
        }
        Ok(())
    }

    /// `F(−, B)`.
    pub fn left_functor(&self, b: usize) -> GradedFunctor {
        let obj = (0..self.a.n_obj()).map(|a| self.at(a, b)).collect();
        GradedFunctor { dom: self.a.clone(), cod: self.c.left_view.clone(), obj, mor: self.left[b].clone() }
    }

    /// `F(A, −)`.
    pub fn right_functor(&self, a: usize) -> GradedFunctor {
        let obj = (0..self.b.n_obj()).map(|b| self.at(a, b)).collect();
        GradedFunctor { dom: self.b.clone(), cod: self.c.right_view.clone(), obj, mor: self.right[a].clone() }
    }
}

/// The square `F_{fg} = (F(f,B), F(f,B′), F(A,g), F(A′,g))` if it commutes.
pub fn commutes_under(s: &Sesquifunctor, f: ElemIx, g: ElemIx) -> Result<Option<Square>> {
    let (a, b, c) = (&s.a, &s.b, &s.c);
    let (sa, ta, sb, tb) = (a.src(f), a.tgt(f), b.src(g), b.tgt(g));
    is_square(
        c,
        c.left_to_parent(s.left[sb][f]),
        c.left_to_parent(s.left[tb][f]),
        c.right_to_parent(s.right[sa][g]),
        c.right_to_parent(s.right[ta][g]),
    )
}

/// Partial functors are graded functors, and every pair commutes; with
/// `use_generators` only canonical generators of `A` and `B` are paired.
pub fn check_bifunctor(s: &Sesquifunctor, use_generators: bool) -> CheckReport {
    let mut report = CheckReport::default();
    for b in 0..s.b.n_obj() {
        let mut r = check_graded_functor(&s.left_functor(b));
        for v in &mut r.violations {
            v.law = format!("partial-left-{}", v.law);
            v.witness.insert(0, s.b.obj_name(b).to_string());
        }
        report.merge(r);
    }
    for a in 0..s.a.n_obj() {
        let mut r = check_graded_functor(&s.right_functor(a));
        for v in &mut r.violations {
            v.law = format!("partial-right-{}", v.law);
            v.witness.insert(0, s.a.obj_name(a).to_string());
        }
        report.merge(r);
    }
    if !report.ok() {
        return report;
    }
    let (fa, gb): (Vec<ElemIx>, Vec<ElemIx>) = if use_generators {
        (canonical_generators(&s.a), canonical_generators(&s.b))
    } else {
        ((0..s.a.n_elem()).collect(), (0..s.b.n_elem()).collect())
    };
    let mut t = Tally::default();
    for &f in &fa {
        for &g in &gb {
            let ok = matches!(commutes_under(s, f, g), Ok(Some(_)));
            t.check(ok, "commute", || vec![s.a.name(f).into(), s.b.name(g).into()]);
        }
    }
    report.merge(t.finish());
    report
}

/// `A ⊠ B`, with object `(a, b)` at index `a * |ob B| + b`.
pub fn bigraded_product(a: &Arc<GradedCat>, b: &Arc<GradedCat>) -> Result<BigradedCat> {
    let prod = Arc::new(product(a.base(), b.base()));
    let nb = b.n_obj();
    let objects = (0..a.n_obj() * nb).map(|k| format!("({},{})", a.obj_name(k / nb), b.obj_name(k % nb))).collect();
    let (nvb, mwb) = (b.base().n_obj(), b.base().n_mor());
    let cat = GradedCat::build(
        prod.clone(),
        objects,
        |x, s, t| {
            let (xa, xb) = (x / nvb, x % nvb);
            let mut out = Vec::new();
            for &f in a.hom(xa, s / nb, t / nb) {
                for &g in b.hom(xb, s % nb, t % nb) {
                    out.push(((f, g), format!("({},{})", a.name(f), b.name(g))));
                }
            }
            Ok(out)
        },
        |&(f, g), m| Some((a.reindex(f, m / mwb)?, b.reindex(g, m % mwb)?)),
        |&(f2, g2), &(f, g)| Some((a.comp(f2, f)?, b.comp(g2, g)?)),
        |k| Some((a.ident(k / nb), b.ident(k % nb))),
    )?;
    BigradedCat::new(a.base().clone(), Arc::new(reverse(b.base())), Arc::new(cat))
}

/// `Pair: A, B → A ⊠ B`.
pub fn pair_bifunctor(a: &Arc<GradedCat>, b: &Arc<GradedCat>, ab: &Arc<BigradedCat>) -> Sesquifunctor {
    let (na, nb) = (a.n_obj(), b.n_obj());
    let p = &ab.cat;
    let parent = |f: ElemIx, g: ElemIx| p.elem_ix(&format!("({},{})", a.name(f), b.name(g))).expect("pair element");
    let left = (0..nb)
        .map(|y| (0..a.n_elem()).map(|f| ab.parent_to_left(parent(f, b.ident(y))).expect("left grade")).collect())
        .collect();
    let right = (0..na)
        .map(|x| (0..b.n_elem()).map(|g| ab.parent_to_right(parent(a.ident(x), g)).expect("right grade")).collect())
        .collect();
    Sesquifunctor { a: a.clone(), b: b.clone(), c: ab.clone(), obj: (0..na * nb).collect(), left, right }
}

/// `{(f, B)} ∪ {(A, g)}` in `A ⊠ B`, as parent elements.
pub fn pair_generators(s: &Sesquifunctor) -> Vec<ElemIx> {
    let c = &s.c;
    let mut out: Vec<ElemIx> = s.left.iter().flatten().map(|&e| c.left_to_parent(e)).collect();
    out.extend(s.right.iter().flatten().map(|&e| c.right_to_parent(e)));
    out.sort_unstable();
    out.dedup();
    out
}

/// All bifunctors `A, B → C`, by object map, then left and right partial
/// functors, then the commuting condition.
pub fn enumerate_bifunctors(a: &Arc<GradedCat>, b: &Arc<GradedCat>, c: &Arc<BigradedCat>, limits: Limits) -> Result<Vec<Sesquifunctor>> {
    enumerate_sesquifunctors(a, b, c, true, limits)
}

/// All sesquifunctors `A, B → C`, optionally only the bifunctors.
pub fn enumerate_sesquifunctors(
    a: &Arc<GradedCat>,
    b: &Arc<GradedCat>,
    c: &Arc<BigradedCat>,
    commuting_only: bool,
    limits: Limits,
) -> Result<Vec<Sesquifunctor>> {
    let (na, nb, nc) = (a.n_obj(), b.n_obj(), c.cat.n_obj());
    let cells = na * nb;
    let total = (0..cells).try_fold(1usize, |acc, _| acc.checked_mul(nc)).ok_or(crate::Error::Budget {
        what: "bifunctor object maps".into(),
        limit: limits.max_objects,
    })?;
    let batches = par::map_range(total, |code| -> Result<Vec<Sesquifunctor>> {
        let mut obj = vec![0; cells];
        let mut r = code;
        for slot in obj.iter_mut().rev() {
            *slot = r % nc;
            r /= nc;
        }
        let lefts: Vec<Vec<GradedFunctor>> = (0..nb)
            .map(|y| enumerate_with_objects(a, &c.left_view, &(0..na).map(|x| obj[x * nb + y]).collect::<Vec<_>>(), limits))
            .collect::<Result<_>>()?;
        let rights: Vec<Vec<GradedFunctor>> = (0..na)
            .map(|x| enumerate_with_objects(b, &c.right_view, &(0..nb).map(|y| obj[x * nb + y]).collect::<Vec<_>>(), limits))
            .collect::<Result<_>>()?;
        let mut out = Vec::new();
        let mut pick = vec![0usize; nb + na];
        let sizes: Vec<usize> = lefts.iter().chain(&rights).map(Vec::len).collect();
        if sizes.contains(&0) {
            return Ok(out);
        }
        loop {
            let s = Sesquifunctor {
                a: a.clone(),
                b: b.clone(),
                c: c.clone(),
                obj: obj.clone(),
                left: (0..nb).map(|y| lefts[y][pick[y]].mor.clone()).collect(),
                right: (0..na).map(|x| rights[x][pick[nb + x]].mor.clone()).collect(),
            };
            let commutes = !commuting_only
                || (0..a.n_elem()).all(|f| (0..b.n_elem()).all(|g| matches!(commutes_under(&s, f, g), Ok(Some(_)))));
            if commutes {
                out.push(s);
                if out.len() > limits.max_objects {
                    return Ok(out);
                }
            }
            // odometer, last position fastest
            let mut i = pick.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                pick[i] += 1;
                if pick[i] < sizes[i] {
                    break;
                }
                pick[i] = 0;
            }
        }
    });
    let mut all = Vec::new();
    for batch in batches {
        all.extend(batch?);
        if all.len() > limits.max_objects {
            return Err(crate::Error::Budget { what: "sesquifunctors".into(), limit: limits.max_objects });
        }
    }
    Ok(all)
}

/// `G(f, g) = Δ(F_{fg})` on `A ⊠ B`.
pub fn to_product(s: &Sesquifunctor, ab: &Arc<BigradedCat>) -> Result<GradedFunctor> {
    let (a, b) = (&s.a, &s.b);
    let p = &ab.cat;
    let mut mor = vec![0; p.n_elem()];
    for (e, slot) in mor.iter_mut().enumerate() {
        let (f, g) = product_parts(a, b, p, e)?;
        *slot = commutes_under(s, f, g)?.ok_or_else(|| structural("not a bifunctor: a pair does not commute"))?.diag;
    }
    GradedFunctor::new(p.clone(), s.c.cat.clone(), s.obj.clone(), mor)
}

/// The components `(f, g)` of an element of `A ⊠ B`.
pub fn product_parts(a: &GradedCat, b: &GradedCat, p: &GradedCat, e: ElemIx) -> Result<(ElemIx, ElemIx)> {
    let name = p.name(e);
    let nb = b.n_obj();
    let (s, t) = (p.src(e), p.tgt(e));
    let grade = p.grade(e);
    let nvb = b.base().n_obj();
    for &f in a.hom(grade / nvb, s / nb, t / nb) {
        for &g in b.hom(grade % nvb, s % nb, t % nb) {
            if name.len() == a.name(f).len() + b.name(g).len() + 3 && name == format!("({},{})", a.name(f), b.name(g)) {
                return Ok((f, g));
            }
        }
    }
    Err(structural(format!("'{name}' is not an element of the product")))
}

/// `F(f, B) = G(f, i_B)` and `F(A, g) = G(i_A, g)`.
pub fn from_product(gf: &GradedFunctor, a: &Arc<GradedCat>, b: &Arc<GradedCat>, ab: &Arc<BigradedCat>, c: &Arc<BigradedCat>) -> Result<Sesquifunctor> {
    let pair = pair_bifunctor(a, b, ab);
    let left = pair
        .left
        .iter()
        .map(|m| m.iter().map(|&e| c.parent_to_left(gf.mor[ab.left_to_parent(e)]).ok_or_else(|| structural("image not at a left grade"))).collect())
        .collect::<Result<_>>()?;
    let right = pair
        .right
        .iter()
        .map(|m| m.iter().map(|&e| c.parent_to_right(gf.mor[ab.right_to_parent(e)]).ok_or_else(|| structural("image not at a right grade"))).collect())
        .collect::<Result<_>>()?;
    Ok(Sesquifunctor { a: a.clone(), b: b.clone(), c: c.clone(), obj: gf.obj.clone(), left, right })
}

fn find_functor(fc: &FunctorCat, f: &GradedFunctor) -> Result<usize> {
    fc.functors
        .iter()
        .position(|h| h.obj == f.obj && h.mor == f.mor)
        .ok_or_else(|| structural("partial functor is not an object of the functor category"))
}

fn find_family(fc: &FunctorCat, grade: usize, src: usize, tgt: usize, fam: &[ElemIx]) -> Result<ElemIx> {
    fc.cat
        .hom(grade, src, tgt)
        .iter()
        .copied()
        .find(|&e| fc.comps[e] == fam)
        .ok_or_else(|| structural("family is not a morphism of the functor category"))
}

/// `F♯: A → [B, C]` with `F♯A = F(A, −)` and `F♯f = (F(f, B))_B`; `bc` is
/// the right-source functor category `[B, C]`.
pub fn to_left(s: &Sesquifunctor, bc: &FunctorCat) -> Result<GradedFunctor> {
    if bc.spec.side != Side::RightSource {
        return Err(structural("to_left needs the right-source functor category [B, C]"));
    }
    let a = &s.a;
    let obj: Vec<usize> = (0..a.n_obj()).map(|x| find_functor(bc, &s.right_functor(x))).collect::<Result<_>>()?;
    let mor = (0..a.n_elem())
        .map(|f| {
            let fam: Vec<ElemIx> = (0..s.b.n_obj()).map(|y| s.left[y][f]).collect();
            find_family(bc, a.grade(f), obj[a.src(f)], obj[a.tgt(f)], &fam)
        })
        .collect::<Result<_>>()?;
    GradedFunctor::new(a.clone(), bc.cat.clone(), obj, mor)
}

pub fn from_left(h: &GradedFunctor, b: &Arc<GradedCat>, c: &Arc<BigradedCat>, bc: &FunctorCat) -> Sesquifunctor {
    let a = &h.dom;
    let nb = b.n_obj();
    let obj = (0..a.n_obj() * nb).map(|k| bc.functors[h.obj[k / nb]].obj[k % nb]).collect();
    let right = (0..a.n_obj()).map(|x| bc.functors[h.obj[x]].mor.clone()).collect();
    let left = (0..nb).map(|y| (0..a.n_elem()).map(|f| bc.comps[h.mor[f]][y]).collect()).collect();
    Sesquifunctor { a: a.clone(), b: b.clone(), c: c.clone(), obj, left, right }
}

/// `F♭: B → [A, C]` with `F♭B = F(−, B)` and `F♭g = (F(A, g))_A`; `ac` is
/// the left-source functor category `[A, C]`.
pub fn to_right(s: &Sesquifunctor, ac: &FunctorCat) -> Result<GradedFunctor> {
    if ac.spec.side != Side::LeftSource {
        return Err(structural("to_right needs the left-source functor category [A, C]"));
    }
    let b = &s.b;
    let obj: Vec<usize> = (0..b.n_obj()).map(|y| find_functor(ac, &s.left_functor(y))).collect::<Result<_>>()?;
    let mor = (0..b.n_elem())
        .map(|g| {
            let fam: Vec<ElemIx> = (0..s.a.n_obj()).map(|x| s.right[x][g]).collect();
            find_family(ac, b.grade(g), obj[b.src(g)], obj[b.tgt(g)], &fam)
        })
        .collect::<Result<_>>()?;
    GradedFunctor::new(b.clone(), ac.cat.clone(), obj, mor)
}

pub fn from_right(h: &GradedFunctor, a: &Arc<GradedCat>, c: &Arc<BigradedCat>, ac: &FunctorCat) -> Sesquifunctor {
    let b = &h.dom;
    let (na, nb) = (a.n_obj(), b.n_obj());
    let obj = (0..na * nb).map(|k| ac.functors[h.obj[k % nb]].obj[k / nb]).collect();
    let left = (0..nb).map(|y| ac.functors[h.obj[y]].mor.clone()).collect();
    let right = (0..na).map(|x| (0..b.n_elem()).map(|g| ac.comps[h.mor[g]][x]).collect()).collect();
    Sesquifunctor { a: a.clone(), b: b.clone(), c: c.clone(), obj, left, right }
}

/// `F^swap: B, A → C*` with `F^swap(B, A) = F(A, B)`.
///
/// `B` is read as a left `W^rev`-graded category and `A` as a right
/// `V^rev`-graded one, i.e. graded over `V` presented as `(V^rev)^rev`.
pub fn swap_bifunctor(s: &Sesquifunctor, cs: &Arc<BigradedCat>) -> Sesquifunctor {
    let (a, b, c) = (&s.a, &s.b, &s.c);
    let (na, nb) = (a.n_obj(), b.n_obj());
    let tr = |e_parent: ElemIx| swap_elem(c, cs, e_parent);
    // F(A, −) becomes F^swap(−, A): right view of C becomes left view of C*
    let left = (0..na)
        .map(|x| s.right[x].iter().map(|&e| cs.parent_to_left(tr(c.right_to_parent(e))).expect("left grade in C*")).collect())
        .collect();
    let right = (0..nb)
        .map(|y| s.left[y].iter().map(|&e| cs.parent_to_right(tr(c.left_to_parent(e))).expect("right grade in C*")).collect())
        .collect();
    let obj = (0..nb * na).map(|k| s.at(k % na, k / na)).collect();
    Sesquifunctor { a: b.clone(), b: a.clone(), c: cs.clone(), obj, left, right }
}

/// All graded functors `A ⊠ B → C` (parent categories).
pub fn enumerate_product_functors(ab: &Arc<BigradedCat>, c: &Arc<BigradedCat>, limits: Limits) -> Result<Vec<GradedFunctor>> {
    enumerate_graded_functors(&ab.cat, &c.cat, None, limits)
}
