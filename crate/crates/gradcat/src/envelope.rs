//! Day convolution of finite presheaves and the enveloping actegory of a
//! graded category.

use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::fincat::{FinPresheaf, MorIx, ObjIx};
use crate::graded::{ElemIx, GradedCat, GradedFunctor, Limits};
use crate::modules::hom_presheaf;
use crate::monoidal::FinMonCat;
use crate::report::{CheckReport, Tally};

/// A generator `(Y, Z, h: X → Y⊗Z, p ∈ PY, q ∈ QZ)` of the coend at `X`.
pub type Gen = (ObjIx, ObjIx, MorIx, usize, usize);

/// `(P ⊗ Q)X = ∫^{Y,Z} V(X, Y⊗Z) × PY × QZ` as a quotient of generators.
#[derive(Debug, Clone)]
pub struct DayProduct {
    pub presheaf: FinPresheaf,
    /// Per object, the least generator of each class, in class order.
    pub reps: Vec<Vec<Gen>>,
    offsets: Vec<Vec<usize>>,
    class_of: Vec<Vec<usize>>,
    psizes: Vec<usize>,
    qsizes: Vec<usize>,
}

impl DayProduct {
    fn index(&self, v: &FinMonCat, x: ObjIx, (y, z, h, p, q): Gen) -> usize {
        let n = v.n_obj();
        let hp = v.cat().hom_pos(h);
        self.offsets[x][y * n + z] + (hp * self.psizes[y] + p) * self.qsizes[z] + q
    }

    /// The class of a generator at `X`.
    pub fn class(&self, v: &FinMonCat, x: ObjIx, g: Gen) -> usize {
        self.class_of[x][self.index(v, x, g)]
    }
}

fn generators(v: &FinMonCat, x: ObjIx, ps: &[usize], qs: &[usize]) -> (Vec<usize>, Vec<Gen>) {
    let n = v.n_obj();
    let cat = v.cat();
    let mut offsets = Vec::with_capacity(n * n);
    let mut gens = Vec::new();
    for y in 0..n {
        for z in 0..n {
            offsets.push(gens.len());
            for &h in cat.hom(x, v.t(y, z)) {
                for p in 0..ps[y] {
                    for q in 0..qs[z] {
                        gens.push((y, z, h, p, q));
                    }
                }
            }
        }
    }
    (offsets, gens)
}

pub fn day_convolution(v: &FinMonCat, p: &FinPresheaf, q: &FinPresheaf) -> DayProduct {
    let n = v.n_obj();
    let cat = v.cat();
    let (psizes, qsizes) = (p.sizes().to_vec(), q.sizes().to_vec());
    let mut out = DayProduct {
        presheaf: FinPresheaf::constant(cat.clone(), 0),
        reps: Vec::with_capacity(n),
        offsets: Vec::with_capacity(n),
        class_of: Vec::with_capacity(n),
        psizes,
        qsizes,
    };
    let mut all_gens = Vec::with_capacity(n);
    for x in 0..n {
        let (offsets, gens) = generators(v, x, &out.psizes, &out.qsizes);
        out.offsets.push(offsets);
        out.class_of.push(Vec::new());
        all_gens.push(gens);
    }
    for x in 0..n {
        let gens = &all_gens[x];
        let mut uf = UnionFind::<usize>::new(gens.len());
        // (h′, P(α)p, q) ~ ((α⊗1)h′, p, q) and (h′, p, Q(β)q) ~ ((1⊗β)h′, p, q)
        for al in 0..cat.n_mor() {
            let (y2, y) = (cat.src(al), cat.tgt(al));
            for z in 0..n {
                for &h in cat.hom(x, v.t(y2, z)) {
                    let moved = cat.comp(v.tm(al, v.id(z)), h).expect("composable");
                    for pp in 0..out.psizes[y] {
                        for qq in 0..out.qsizes[z] {
                            let a = out.index(v, x, (y2, z, h, p.at(al, pp), qq));
                            let b = out.index(v, x, (y, z, moved, pp, qq));
                            uf.union(a, b);
                        }
                    }
                }
            }
            let (z2, z) = (y2, y);
            for yy in 0..n {
                for &h in cat.hom(x, v.t(yy, z2)) {
                    let moved = cat.comp(v.tm(v.id(yy), al), h).expect("composable");
                    for pp in 0..out.psizes[yy] {
                        for qq in 0..out.qsizes[z] {
                            let a = out.index(v, x, (yy, z2, h, pp, q.at(al, qq)));
                            let b = out.index(v, x, (yy, z, moved, pp, qq));
                            uf.union(a, b);
                        }
                    }
                }
            }
        }
        let labels = uf.into_labeling();
        // classes numbered by their least member
        let mut class_of = vec![usize::MAX; gens.len()];
        let mut by_root = std::collections::HashMap::new();
        let mut reps = Vec::new();
        for (i, &root) in labels.iter().enumerate() {
            let k = *by_root.entry(root).or_insert_with(|| {
                reps.push(gens[i]);
                reps.len() - 1
            });
            class_of[i] = k;
        }
        out.class_of[x] = class_of;
        out.reps.push(reps);
    }
    let sizes: Vec<usize> = out.reps.iter().map(Vec::len).collect();
    let action = (0..cat.n_mor())
        .map(|g| {
            let (x2, x) = (cat.src(g), cat.tgt(g));
            out.reps[x]
                .iter()
                .map(|&(y, z, h, pp, qq)| out.class(v, x2, (y, z, cat.comp(h, g).expect("composable"), pp, qq)))
                .collect()
        })
        .collect();
    out.presheaf = FinPresheaf::new(cat.clone(), sizes, action).expect("quotient action");
    out
}

/// The free actegory on `C`: objects `(X, A)`, and
/// `hom(Z, (X,A), (Y,B)) = (Y(Y) ⊗ C(A,B))(Z⊗X)`.
pub struct EnvelopeActegory {
    pub source: Arc<GradedCat>,
    pub cat: Arc<GradedCat>,
    /// `(y * |ob C| + a) * |ob C| + b ↦ Y(Y) ⊗ C(A, B)`
    pub days: Vec<DayProduct>,
}

impl EnvelopeActegory {
    pub fn obj(&self, x: ObjIx, a: usize) -> usize {
        x * self.source.n_obj() + a
    }

    fn day(&self, y: ObjIx, a: usize, b: usize) -> &DayProduct {
        let nc = self.source.n_obj();
        &self.days[(y * nc + a) * nc + b]
    }

    /// The envelope element with grade `z` from `(x, a)` to `(y, b)` given by a generator.
    pub fn element(&self, z: ObjIx, (x, a): (ObjIx, usize), (y, b): (ObjIx, usize), g: Gen) -> ElemIx {
        let v = self.source.base();
        let cls = self.day(y, a, b).class(v, v.t(z, x), g);
        self.cat.hom(z, self.obj(x, a), self.obj(y, b))[cls]
    }

    /// `E: C → Env(C)`, `A ↦ (I, A)`, `f ↦ [ℓ⁻¹·r, 1_I, f]`.
    pub fn embedding(&self) -> Result<GradedFunctor> {
        let c = &self.source;
        let v = c.base();
        let i = v.unit();
        let cat = v.cat();
        let mor = (0..c.n_elem())
            .map(|f| {
                let z = c.grade(f);
                let h = cat.comp(v.inv(v.l(z)), v.r(z)).expect("composable");
                self.element(z, (i, c.src(f)), (i, c.tgt(f)), (i, z, h, cat.hom_pos(cat.id(i)), c.hom_pos(f)))
            })
            .collect();
        GradedFunctor::new(c.clone(), self.cat.clone(), (0..c.n_obj()).map(|a| self.obj(i, a)).collect(), mor)
    }

    /// `C(Z⊗X'A; B) → hom(Z, (X,A), (I,B))`, `f ↦ [ℓ⁻¹, 1_I, f]`.
    pub fn copower_map(&self, z: ObjIx, x: ObjIx, a: usize, b: usize, f: ElemIx) -> ElemIx {
        let v = self.source.base();
        let cat = v.cat();
        let (i, zx) = (v.unit(), v.t(z, x));
        let g = (i, zx, v.inv(v.l(zx)), cat.hom_pos(cat.id(i)), self.source.hom_pos(f));
        self.element(z, (x, a), (i, b), g)
    }

    /// `υ: X'(I, A) → (X, A)`.
    pub fn unit_of_copower(&self, x: ObjIx, a: usize) -> ElemIx {
        let v = self.source.base();
        let cat = v.cat();
        let i = v.unit();
        let c = &self.source;
        let g = (x, i, cat.id(v.t(x, i)), cat.hom_pos(cat.id(x)), c.hom_pos(c.ident(a)));
        self.element(x, (i, a), (x, a), g)
    }
}

pub fn build_envelope(c: &Arc<GradedCat>, limits: Limits) -> Result<EnvelopeActegory> {
    let v = c.base().clone();
    let cat = v.cat().clone();
    let (n, nc) = (v.n_obj(), c.n_obj());
    if n * nc > limits.max_objects {
        return Err(Error::Budget { what: "envelope objects".into(), limit: limits.max_objects });
    }
    let days: Vec<DayProduct> = crate::par::map_range(n * nc * nc, |k| {
        let (y, a, b) = (k / (nc * nc), (k / nc) % nc, k % nc);
        day_convolution(&v, &FinPresheaf::representable(cat.clone(), y), &hom_presheaf(c, a, b))
    });
    for d in &days {
        if d.reps.iter().any(|r| r.len() > limits.max_hom) {
            return Err(Error::Budget { what: "envelope hom".into(), limit: limits.max_hom });
        }
    }
    let day = |y: ObjIx, a: usize, b: usize| &days[(y * nc + a) * nc + b];
    let names = (0..n * nc).map(|k| format!("({},{})", cat.obj_name(k / nc), c.obj_name(k % nc))).collect();
    // key: (z, x, a, y, b, generator)
    type Key = (ObjIx, ObjIx, usize, ObjIx, usize, Gen);
    let built = GradedCat::build(
        v.clone(),
        names,
        |z, s, t| {
            let (x, a, y, b) = (s / nc, s % nc, t / nc, t % nc);
            let d = day(y, a, b);
            Ok(d.reps[v.t(z, x)]
                .iter()
                .map(|&g| {
                    let (u, w, h, kk, f) = g;
                    let name = format!(
                        "[{},{},{}]:{}:{}->{}",
                        cat.mor_name(h),
                        cat.mor_name(cat.hom(u, y)[kk]),
                        c.name(c.hom(w, a, b)[f]),
                        cat.obj_name(z),
                        s,
                        t
                    );
                    let _ = (u, w);
                    ((z, x, a, y, b, g), name)
                })
                .collect())
        },
        |&(_, x, a, y, b, (u, w, h, kk, f)): &Key, al| {
            let z2 = cat.src(al);
            let h2 = cat.comp(h, v.tm(al, v.id(x)))?;
            let d = day(y, a, b);
            Some((z2, x, a, y, b, d.reps[v.t(z2, x)][d.class(&v, v.t(z2, x), (u, w, h2, kk, f))]))
        },
        |&(z2, y, b, y2, cc, (u2, w2, h2, k2, g)): &Key, &(z, x, a, _, _, (u, w, h, k, f)): &Key| {
            let kmor = cat.hom(u, y)[k];
            let path = [
                v.a(z2, z, x),
                v.tm(v.id(z2), h),
                v.tm(v.id(z2), v.tm(kmor, v.id(w))),
                v.inv(v.a(z2, y, w)),
                v.tm(h2, v.id(w)),
                v.a(u2, w2, w),
            ];
            let hh = cat.then(&path)?;
            let gf = c.comp(c.hom(w2, b, cc)[g], c.hom(w, a, b)[f])?;
            let t = v.t(v.t(z2, z), x);
            let d = day(y2, a, cc);
            let gen = (u2, v.t(w2, w), hh, k2, c.hom_pos(gf));
            Some((v.t(z2, z), x, a, y2, cc, d.reps[t][d.class(&v, t, gen)]))
        },
        |s| {
            let (x, a) = (s / nc, s % nc);
            let i = v.unit();
            let h = cat.comp(v.inv(v.r(x)), v.l(x))?;
            let d = day(x, a, a);
            let t = v.t(i, x);
            let gen = (x, i, h, cat.hom_pos(cat.id(x)), c.hom_pos(c.ident(a)));
            Some((i, x, a, x, a, d.reps[t][d.class(&v, t, gen)]))
        },
    )?;
    Ok(EnvelopeActegory { source: c.clone(), cat: Arc::new(built), days })
}

/// `E` is bijective on every graded hom-set, the explicit copower map is a
/// bijection, and precomposition with `υ` is a bijection
/// `hom(Z, (X,A), T) ≅ hom(Z⊗X, (I,A), T)` for every target `T`.
pub fn check_envelope(env: &EnvelopeActegory) -> Result<CheckReport> {
    let c = &env.source;
    let v = c.base();
    let cat = v.cat();
    let e = &env.cat;
    let (n, nc) = (v.n_obj(), c.n_obj());
    let i = v.unit();
    let emb = env.embedding()?;
    let mut t = Tally::default();
    let bij = |xs: Vec<ElemIx>, target: usize| {
        let mut s = xs.clone();
        s.sort_unstable();
        s.dedup();
        s.len() == xs.len() && s.len() == target
    };
    for z in 0..n {
        for a in 0..nc {
            for b in 0..nc {
                let img = c.hom(z, a, b).iter().map(|&f| emb.mor[f]).collect();
                let ok = bij(img, e.hom(z, env.obj(i, a), env.obj(i, b)).len());
                t.check(ok, "embedding-bijective", || vec![cat.obj_name(z).into(), c.obj_name(a).into(), c.obj_name(b).into()]);
                for x in 0..n {
                    let img = c.hom(v.t(z, x), a, b).iter().map(|&f| env.copower_map(z, x, a, b, f)).collect();
                    let ok = bij(img, e.hom(z, env.obj(x, a), env.obj(i, b)).len());
                    t.check(ok, "copower-bijective", || {
                        vec![cat.obj_name(z).into(), cat.obj_name(x).into(), c.obj_name(a).into(), c.obj_name(b).into()]
                    });
                }
            }
        }
    }
    for x in 0..n {
        for a in 0..nc {
            let ups = env.unit_of_copower(x, a);
            for z in 0..n {
                for tgt in 0..e.n_obj() {
                    let img = e.hom(z, env.obj(x, a), tgt).iter().map(|&g| e.comp(g, ups).expect("composable")).collect();
                    let ok = bij(img, e.hom(v.t(z, x), env.obj(i, a), tgt).len());
                    t.check(ok, "copower-universal", || {
                        vec![cat.obj_name(z).into(), cat.obj_name(x).into(), c.obj_name(a).into(), e.obj_name(tgt).into()]
                    });
                }
            }
        }
    }
    Ok(t.finish())
}
